//! Rank, independence, greedy maximum-weight hyperforests and separation
//! from the hypergraphic matroid polytope.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::hypergraph::{induced_edges, EdgeId, EdgeVector, Hypergraph, Partition, Role, VertexId};
use crate::mincut::min_st_cut;
use crate::partition_oracle::min_partition;
use crate::rational::Rational;
use crate::reductions::{
    build_independence_gadget, build_polytope_gadget, interpret_gadget_cut, interpret_independence_cut,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    /// A partition attaining `|V| − |P| + |δ_F(P)|`.
    pub witness: Partition,
}

/// `r(F) = min_P |V| − |P| + |δ_F(P)|`, from one partition-oracle call with
/// unit weights on `F` and `β = 1`.
pub fn rank(h: &Hypergraph, f: &[EdgeId]) -> Result<RankResult> {
    let f = h.check_edge_set(f)?;
    if h.n() == 0 {
        return Ok(RankResult { rank: 0, witness: Partition::whole(0) });
    }
    let ones = EdgeVector::ones(Role::Point, h.m());
    let r = min_partition(h, &f, &ones, &Rational::one())?;
    let rank = r.value + Rational::from(h.n() - 1);
    let rank = rank.to_i64().and_then(|r| usize::try_from(r).ok()).expect("rank is a small nonnegative integer");
    debug_assert_eq!(
        rank,
        h.n() - r.partition.len() + r.partition.crossing(h, &f).len()
    );
    Ok(RankResult { rank, witness: r.partition })
}

/// Whether `f` is a hyperforest.
pub fn is_independent(h: &Hypergraph, f: &[EdgeId]) -> Result<bool> {
    let f = h.check_edge_set(f)?;
    Ok(rank(h, &f)?.rank == f.len())
}

/// Given an independent `current`, decides whether `current ∪ {candidate}`
/// is independent: true iff `|∪F| − |F| ≥ 1` for every `F ∋ candidate`.
pub fn independence_test_incremental(h: &Hypergraph, current: &[EdgeId], candidate: EdgeId) -> Result<bool> {
    let mut members = current.to_vec();
    members.push(candidate);
    let g = build_independence_gadget(h, &members, candidate)?;
    let cut = min_st_cut(&g.network)?;
    let reading = interpret_independence_cut(h, &g, &cut);
    Ok(reading.value >= Rational::one())
}

/// Greedy maximum-weight hyperforest. Edges are scanned by nonincreasing
/// weight (ties by id) and kept when the incremental test accepts them.
pub fn max_weight_hyperforest(h: &Hypergraph, w: &EdgeVector) -> Result<(Vec<EdgeId>, Rational)> {
    if w.len() != h.m() {
        return Err(crate::Error::LengthMismatch { expected: h.m(), found: w.len() });
    }
    let mut order = h.all_edges();
    order.sort_by(|a, b| w.get(*b).cmp(w.get(*a)).then(a.cmp(b)));
    let full = h.n().saturating_sub(1);
    let mut chosen: Vec<EdgeId> = Vec::new();
    for e in order {
        if chosen.len() == full {
            break;
        }
        if independence_test_incremental(h, &chosen, e)? {
            chosen.push(e);
        }
    }
    chosen.sort_unstable();
    let weight = w.sum_over(&chosen);
    Ok((chosen, weight))
}

/// A violated rank inequality `x(E[W]) ≤ |W| − 1`, equivalently the
/// partition form with `P = {W} ∪ singletons`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatedSet {
    pub set: Vec<VertexId>,
    /// `S = E[W]`
    pub edges: Vec<EdgeId>,
    /// `x(E[W])`
    pub lhs: Rational,
    /// `|W| − 1 = r(S)` bound
    pub rhs: usize,
    pub partition: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationOutcome {
    InPolytope,
    /// `x(e) ≥ 0` is violated.
    Negative(EdgeId),
    /// `x(e) ≤ 1` is violated.
    AboveOne(EdgeId),
    Violated(ViolatedSet),
}

impl SeparationOutcome {
    pub fn is_in_polytope(&self) -> bool {
        matches!(self, SeparationOutcome::InPolytope)
    }
}

fn violated_set(h: &Hypergraph, x: &EdgeVector, set: Vec<VertexId>) -> Result<ViolatedSet> {
    let edges = induced_edges(h, &h.all_edges(), &set)?;
    let lhs = x.sum_over(&edges);
    let rhs = set.len() - 1;
    assert!(lhs > Rational::from(rhs), "reported inequality is not violated");
    let mut blocks = vec![set.clone()];
    let mut inside = vec![false; h.n()];
    for v in &set {
        inside[v.0] = true;
    }
    blocks.extend(h.vertices().filter(|v| !inside[v.0]).map(|v| vec![v]));
    let partition = Partition::new(h.n(), blocks)?;
    Ok(ViolatedSet { set, edges, lhs, rhs, partition })
}

/// Decides `x ∈ P(H)` or returns a violated inequality. Bound violations
/// and positive loops are reported without any cut computation; otherwise
/// one min cut per vertex finds `W` minimizing `|W| − x(E[W])`.
pub fn separate_polytope(h: &Hypergraph, x: &EdgeVector) -> Result<SeparationOutcome> {
    if x.len() != h.m() {
        return Err(crate::Error::LengthMismatch { expected: h.m(), found: x.len() });
    }
    for e in h.edges() {
        let v = x.get(e.id);
        if v.is_negative() {
            return Ok(SeparationOutcome::Negative(e.id));
        }
        if *v > Rational::one() {
            return Ok(SeparationOutcome::AboveOne(e.id));
        }
        if e.is_loop() && v.is_positive() {
            return Ok(SeparationOutcome::Violated(violated_set(h, x, e.vertices().to_vec())?));
        }
    }
    let mut best: Option<(Rational, Vec<VertexId>)> = None;
    for v in h.vertices() {
        let g = build_polytope_gadget(h, x, v)?;
        let cut = min_st_cut(&g.network)?;
        let reading = interpret_gadget_cut(h, &g, &cut);
        if best.as_ref().is_none_or(|(b, _)| reading.value < *b) {
            best = Some((reading.value, reading.sink_vertices));
        }
    }
    match best {
        Some((value, set)) if value < Rational::one() => {
            Ok(SeparationOutcome::Violated(violated_set(h, x, set)?))
        }
        _ => Ok(SeparationOutcome::InPolytope),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(ids: &[usize]) -> Vec<EdgeId> {
        ids.iter().copied().map(EdgeId).collect()
    }

    fn h0() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap()
    }

    fn h1() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 3]]).unwrap()
    }

    fn k3() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn rank_examples() {
        let h = h0();
        assert_eq!(rank(&h, &es(&[0, 1])).unwrap().rank, 2);
        let h = h1();
        let r = rank(&h, &h.all_edges()).unwrap();
        assert_eq!(r.rank, 3);
        let looped = Hypergraph::new(3, vec![vec![0]]).unwrap();
        assert_eq!(rank(&looped, &es(&[0])).unwrap().rank, 0);
    }

    #[test]
    fn independence_examples() {
        assert!(is_independent(&h0(), &es(&[0, 1])).unwrap());
        let triple = Hypergraph::new(3, vec![vec![0, 1, 2]; 3]).unwrap();
        assert!(!is_independent(&triple, &es(&[0, 1, 2])).unwrap());
        let looped = Hypergraph::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert!(!is_independent(&looped, &es(&[0, 1])).unwrap());
        assert!(is_independent(&looped, &[]).unwrap());
    }

    #[test]
    fn incremental_examples() {
        let triple = Hypergraph::new(3, vec![vec![0, 1, 2]; 3]).unwrap();
        assert!(independence_test_incremental(&triple, &es(&[0]), EdgeId(1)).unwrap());
        assert!(!independence_test_incremental(&triple, &es(&[0, 1]), EdgeId(2)).unwrap());
        assert!(independence_test_incremental(&triple, &[], EdgeId(2)).unwrap());
        let looped = Hypergraph::new(3, vec![vec![1]]).unwrap();
        assert!(!independence_test_incremental(&looped, &[], EdgeId(0)).unwrap());
    }

    #[test]
    fn greedy_examples() {
        let h = h0();
        let w = EdgeVector::from_integers(Role::Weight, &[5, 3]).unwrap();
        assert_eq!(max_weight_hyperforest(&h, &w).unwrap(), (es(&[0, 1]), Rational::from(8)));

        let h = k3();
        let w = EdgeVector::from_integers(Role::Weight, &[3, 2, 1]).unwrap();
        assert_eq!(max_weight_hyperforest(&h, &w).unwrap(), (es(&[0, 1]), Rational::from(5)));

        let w = EdgeVector::zeros(Role::Weight, 3);
        let (forest, weight) = max_weight_hyperforest(&h, &w).unwrap();
        assert_eq!(forest.len(), 2);
        assert!(weight.is_zero());
    }

    #[test]
    fn separation_examples() {
        let h = h0();
        let x = EdgeVector::from_integers(Role::Point, &[1, 1]).unwrap();
        assert_eq!(separate_polytope(&h, &x).unwrap(), SeparationOutcome::InPolytope);

        let parallel = Hypergraph::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        match separate_polytope(&parallel, &x).unwrap() {
            SeparationOutcome::Violated(v) => {
                assert_eq!(v.set, vec![VertexId(0), VertexId(1)]);
                assert_eq!(v.lhs, Rational::from(2));
                assert_eq!(v.rhs, 1);
                assert_eq!(v.edges, es(&[0, 1]));
                assert_eq!(v.partition, Partition::whole(2));
            }
            other => panic!("expected a violated set, got {other:?}"),
        }

        let x = EdgeVector::new(Role::Point, vec![Rational::one(), Rational::new(6, 5)], 2).unwrap();
        assert_eq!(separate_polytope(&h, &x).unwrap(), SeparationOutcome::AboveOne(EdgeId(1)));

        let x = EdgeVector::new_signed(Role::Point, vec![Rational::new(-1, 3), Rational::zero()], 2).unwrap();
        assert_eq!(separate_polytope(&h, &x).unwrap(), SeparationOutcome::Negative(EdgeId(0)));
    }

    #[test]
    fn positive_loop_is_an_immediate_violation() {
        let h = Hypergraph::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let x = EdgeVector::new(Role::Point, vec![Rational::zero(), Rational::new(1, 3)], 2).unwrap();
        match separate_polytope(&h, &x).unwrap() {
            SeparationOutcome::Violated(v) => {
                assert_eq!(v.set, vec![VertexId(2)]);
                assert_eq!(v.rhs, 0);
                assert_eq!(v.lhs, Rational::new(1, 3));
            }
            other => panic!("expected a violated set, got {other:?}"),
        }
    }
}
