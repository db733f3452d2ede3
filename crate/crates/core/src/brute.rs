//! Exhaustive reference implementations. Slow by design and written
//! without touching the cut machinery: vertex and edge sets are bitmasks,
//! partitions come from restricted-growth strings.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, EdgeVector, Hypergraph, Partition};
use crate::mincut::{Capacity, FlowNetwork};
use crate::rational::Rational;

pub const MAX_ENUM_VERTICES: usize = 12;
pub const MAX_PARTITION_VERTICES: usize = 7;
pub const MAX_FOREST_VERTICES: usize = 20;
pub const MAX_SUBSET_EDGES: usize = 12;
pub const MAX_REINFORCE_CANDIDATES: u64 = 1_000_000;
pub const MAX_CUT_NODES: usize = 16;

fn guard(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::GuardExceeded(alloc::format!("{what} = {value} exceeds {limit}")));
    }
    Ok(())
}

/// Yields every set partition of `{0, …, n−1}` once, as a restricted-growth
/// string `a` with `a[0] = 0` and `a[i] ≤ 1 + max(a[..i])`.
#[derive(Clone, Debug)]
pub struct PartitionEnumerator {
    n: usize,
    labels: Vec<usize>,
    /// `prefix_max[i] = max(labels[..=i])`
    prefix_max: Vec<usize>,
    done: bool,
}

impl PartitionEnumerator {
    fn new(n: usize) -> Self {
        PartitionEnumerator { n, labels: vec![0; n], prefix_max: vec![0; n], done: false }
    }

    /// Steps to the next string in lexicographic order.
    fn advance(&mut self) {
        let n = self.n;
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for PartitionEnumerator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.labels.clone();
        if self.n <= 1 {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}

/// Labels form: block index of each vertex.
pub fn enum_partition_labels(n: usize) -> Result<PartitionEnumerator> {
    guard("n", n, MAX_ENUM_VERTICES)?;
    Ok(PartitionEnumerator::new(n))
}

pub fn enum_partitions(n: usize) -> Result<impl Iterator<Item = Partition>> {
    Ok(enum_partition_labels(n)?.map(|l| Partition::from_labels(&l)))
}

fn edge_mask(h: &Hypergraph, e: EdgeId) -> u32 {
    h.edge(e).vertices().iter().fold(0, |m, v| m | 1 << v.0)
}

fn edge_masks(h: &Hypergraph) -> Vec<u32> {
    h.edge_ids().map(|e| edge_mask(h, e)).collect()
}

fn check_ids(h: &Hypergraph, f: &[EdgeId]) -> Result<Vec<EdgeId>> {
    let mut ids = f.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(e) = ids.iter().find(|e| e.0 >= h.m()) {
        return Err(Error::EdgeOutOfRange { edge: e.0, m: h.m() });
    }
    Ok(ids)
}

/// `|F[X]| ≤ |X| − 1` for every nonempty `X ⊆ V`.
pub fn brute_hyperforest(h: &Hypergraph, f: &[EdgeId]) -> Result<bool> {
    guard("n", h.n(), MAX_FOREST_VERTICES)?;
    let f = check_ids(h, f)?;
    let masks: Vec<u32> = f.iter().map(|&e| edge_mask(h, e)).collect();
    Ok(forest_masks(h.n(), &masks))
}

fn forest_masks(n: usize, masks: &[u32]) -> bool {
    (1u32..1 << n).all(|x| {
        let inside = masks.iter().filter(|&&m| m & !x == 0).count();
        inside < x.count_ones() as usize
    })
}

fn blocks_of(labels: &[usize]) -> usize {
    labels.iter().max().map_or(0, |m| m + 1)
}

fn crossing(labels: &[usize], mask: u32) -> bool {
    let mut first = None;
    for (v, &l) in labels.iter().enumerate() {
        if mask >> v & 1 == 1 {
            match first {
                None => first = Some(l),
                Some(f) if f != l => return true,
                _ => {}
            }
        }
    }
    false
}

/// Minimum of `x(δ_F(P)) − β(|P| − 1)` over all partitions, with the first
/// minimizer in enumeration order.
pub fn brute_min_partition(
    h: &Hypergraph,
    f: &[EdgeId],
    x: &EdgeVector,
    beta: &Rational,
) -> Result<(Rational, Partition)> {
    guard("n", h.n(), MAX_PARTITION_VERTICES)?;
    if h.n() == 0 {
        return Err(Error::TooFewVertices { n: 0, min: 1 });
    }
    let f = check_ids(h, f)?;
    let masks: Vec<(u32, &Rational)> = f.iter().map(|&e| (edge_mask(h, e), x.get(e))).collect();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for labels in enum_partition_labels(h.n())? {
        let cut: Rational = masks.iter().filter(|(m, _)| crossing(&labels, *m)).map(|(_, w)| *w).sum();
        let value = cut - beta * Rational::from(blocks_of(&labels) - 1);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, labels));
        }
    }
    let (value, labels) = best.expect("at least one partition");
    Ok((value, Partition::from_labels(&labels)))
}

/// Independence of every subset of `E`, indexed by edge bitmask.
pub fn brute_independence_table(h: &Hypergraph) -> Result<Vec<bool>> {
    guard("m", h.m(), MAX_SUBSET_EDGES)?;
    guard("n", h.n(), MAX_FOREST_VERTICES)?;
    let masks = edge_masks(h);
    let m = h.m();
    let mut chosen = Vec::with_capacity(m);
    Ok((0usize..1 << m)
        .map(|s| {
            chosen.clear();
            chosen.extend((0..m).filter(|i| s >> i & 1 == 1).map(|i| masks[i]));
            forest_masks(h.n(), &chosen)
        })
        .collect())
}

/// Rank of every subset of `E`: size of its largest independent subset.
pub fn brute_rank_table(h: &Hypergraph) -> Result<Vec<usize>> {
    let indep = brute_independence_table(h)?;
    let mut rank = vec![0usize; indep.len()];
    for s in 1..indep.len() {
        rank[s] = if indep[s] {
            s.count_ones() as usize
        } else {
            (0..h.m()).filter(|i| s >> i & 1 == 1).map(|i| rank[s & !(1 << i)]).max().unwrap_or(0)
        };
    }
    Ok(rank)
}

fn subset_mask(f: &[EdgeId]) -> usize {
    f.iter().fold(0, |m, e| m | 1 << e.0)
}

/// Size of a largest hyperforest inside `F`.
pub fn brute_rank(h: &Hypergraph, f: &[EdgeId]) -> Result<usize> {
    let f = check_ids(h, f)?;
    Ok(brute_rank_table(h)?[subset_mask(&f)])
}

/// Maximum of `w(F)` over hyperforests `F`.
pub fn brute_max_weight_forest(h: &Hypergraph, w: &EdgeVector) -> Result<Rational> {
    let indep = brute_independence_table(h)?;
    Ok((0..indep.len())
        .filter(|&s| indep[s])
        .map(|s| (0..h.m()).filter(|i| s >> i & 1 == 1).map(|i| w.get(EdgeId(i))).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero))
}

/// Minimum of `c(δ(P)) / (|P| − 1)` over partitions with at least two
/// blocks.
pub fn brute_strength(h: &Hypergraph, c: &EdgeVector) -> Result<Rational> {
    guard("n", h.n(), MAX_PARTITION_VERTICES)?;
    if h.n() < 2 {
        return Err(Error::TooFewVertices { n: h.n(), min: 2 });
    }
    let masks = edge_masks(h);
    enum_partition_labels(h.n())?
        .filter(|l| blocks_of(l) >= 2)
        .map(|l| {
            let cut: Rational = (0..h.m()).filter(|&i| crossing(&l, masks[i])).map(|i| c.get(EdgeId(i))).sum();
            cut / Rational::from(blocks_of(&l) - 1)
        })
        .min()
        .ok_or(Error::EmptySet)
}

/// Maximum of `|E[X]| / (|X| − 1)` over `X` with `|X| ≥ 2`; zero when
/// `n < 2`.
pub fn brute_arboricity(h: &Hypergraph) -> Result<Rational> {
    guard("n", h.n(), MAX_ENUM_VERTICES)?;
    if let Some(e) = h.edge_ids().find(|&e| h.edge(e).vertices().len() == 1) {
        return Err(Error::LoopPresent(e));
    }
    let masks = edge_masks(h);
    Ok((1u32..1 << h.n())
        .filter(|x| x.count_ones() >= 2)
        .map(|x| {
            let inside = masks.iter().filter(|&&m| m & !x == 0).count();
            Rational::new(inside as i64, x.count_ones() as i64 - 1)
        })
        .max()
        .unwrap_or_else(Rational::zero))
}

/// Fewest hyperforests partitioning `E`.
pub fn brute_forest_cover(h: &Hypergraph) -> Result<usize> {
    let indep = brute_independence_table(h)?;
    if let Some(e) = (0..h.m()).find(|&i| !indep[1 << i]) {
        return Err(Error::LoopPresent(EdgeId(e)));
    }
    let full = indep.len() - 1;
    let mut cover = vec![usize::MAX; indep.len()];
    cover[0] = 0;
    for s in 1..=full {
        // every cover of s has a part holding its lowest element
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut t = rest;
        loop {
            let part = t | low;
            if indep[part] {
                cover[s] = cover[s].min(cover[s & !part] + 1);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
    }
    Ok(cover[full])
}

/// Most pairwise disjoint hypertrees (independent sets of size `n − 1`).
pub fn brute_hypertree_packing(h: &Hypergraph) -> Result<usize> {
    let indep = brute_independence_table(h)?;
    let target = h.n().saturating_sub(1) as u32;
    if target == 0 {
        return Err(Error::TooFewVertices { n: h.n(), min: 2 });
    }
    let bases: Vec<usize> = (0..indep.len()).filter(|&s| indep[s] && s.count_ones() == target).collect();
    fn pack(bases: &[usize], used: usize, start: usize) -> usize {
        let mut best = 0;
        for (i, &b) in bases.iter().enumerate().skip(start) {
            if b & used == 0 {
                best = best.max(1 + pack(bases, used | b, i + 1));
            }
        }
        best
    }
    Ok(pack(&bases, 0, 0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteSeparation {
    InPolytope,
    /// `x(e) < 0` or `x(e) > 1`.
    OutOfBox(EdgeId),
    /// `x(S) > r(S)` for this `S`.
    Violated(Vec<EdgeId>),
}

/// Checks `0 ≤ x ≤ 1` and `x(S) ≤ r(S)` for every `S ⊆ E`.
pub fn brute_separate(h: &Hypergraph, x: &EdgeVector) -> Result<BruteSeparation> {
    if let Some(e) = h.edge_ids().find(|&e| x.get(e).is_negative() || *x.get(e) > Rational::one()) {
        return Ok(BruteSeparation::OutOfBox(e));
    }
    let rank = brute_rank_table(h)?;
    for (s, &r) in rank.iter().enumerate() {
        let ids: Vec<EdgeId> = (0..h.m()).filter(|i| s >> i & 1 == 1).map(EdgeId).collect();
        let load: Rational = ids.iter().map(|&e| x.get(e)).sum();
        if load > Rational::from(r) {
            return Ok(BruteSeparation::Violated(ids));
        }
    }
    Ok(BruteSeparation::InPolytope)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteReinforcement {
    Infeasible,
    Optimal { cost: Rational, x: Vec<u64> },
}

/// Cheapest integer `x` with `0 ≤ x ≤ u` and `x(δ(P)) ≥ k(|P| − 1)` for
/// every partition `P`; the lexicographically first optimum.
pub fn brute_reinforce(h: &Hypergraph, k: u64, d: &EdgeVector, u: &[u64]) -> Result<BruteReinforcement> {
    let m = h.m();
    if u.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: u.len() });
    }
    if d.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: d.len() });
    }
    guard("n", h.n(), MAX_PARTITION_VERTICES)?;
    let mut candidates: u64 = 1;
    for &b in u {
        candidates = candidates.saturating_mul(b + 1);
    }
    if candidates > MAX_REINFORCE_CANDIDATES {
        return Err(Error::GuardExceeded(alloc::format!(
            "{candidates} candidate vectors exceed {MAX_REINFORCE_CANDIDATES}"
        )));
    }
    let masks = edge_masks(h);
    // (edges crossing P, required amount) per partition
    let constraints: Vec<(Vec<usize>, u64)> = if h.n() == 0 {
        Vec::new()
    } else {
        enum_partition_labels(h.n())?
            .map(|l| {
                let cross = (0..m).filter(|&i| crossing(&l, masks[i])).collect();
                (cross, k * (blocks_of(&l) as u64 - 1))
            })
            .filter(|(_, need)| *need > 0)
            .collect()
    };
    let mut x = vec![0u64; m];
    let mut best: Option<(Rational, Vec<u64>)> = None;
    loop {
        let feasible = constraints.iter().all(|(cross, need)| cross.iter().map(|&i| x[i]).sum::<u64>() >= *need);
        if feasible {
            let cost: Rational = (0..m).map(|i| d.get(EdgeId(i)) * Rational::from(x[i])).sum();
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, x.clone()));
            }
        }
        // odometer, last coordinate fastest
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(match best {
                    Some((cost, x)) => BruteReinforcement::Optimal { cost, x },
                    None => BruteReinforcement::Infeasible,
                });
            }
            i -= 1;
            if x[i] < u[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}

/// Minimum cut by enumerating every source side, with the inclusion-minimal
/// optimal source side (the intersection of all optimal ones).
pub fn brute_min_cut(net: &FlowNetwork) -> Result<(Rational, Vec<bool>)> {
    let nodes = net.nodes();
    guard("nodes", nodes, MAX_CUT_NODES)?;
    let (s, t) = (net.source(), net.sink());
    let free: Vec<usize> = (0..nodes).filter(|&v| v != s && v != t).collect();
    let mut best: Option<Rational> = None;
    let mut meet: Vec<bool> = vec![true; nodes];
    let mut side = vec![false; nodes];
    for mask in 0u32..1 << free.len() {
        side.iter_mut().for_each(|b| *b = false);
        side[s] = true;
        for (i, &v) in free.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let mut total = Rational::zero();
        let mut infinite = false;
        for arc in net.arcs() {
            if side[arc.tail] && !side[arc.head] {
                match &arc.capacity {
                    Capacity::Infinite => infinite = true,
                    Capacity::Finite(c) => total += c,
                }
            }
        }
        if infinite {
            continue;
        }
        match &best {
            Some(b) if total > *b => {}
            Some(b) if total == *b => meet.iter_mut().zip(&side).for_each(|(m, s)| *m &= *s),
            _ => {
                best = Some(total);
                meet.clone_from(&side);
            }
        }
    }
    best.map(|b| (b, meet)).ok_or(Error::NoFiniteCut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Role;
    use alloc::collections::BTreeSet;

    fn es(ids: &[usize]) -> Vec<EdgeId> {
        ids.iter().copied().map(EdgeId).collect()
    }

    fn h0() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap()
    }

    fn h1() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 3]]).unwrap()
    }

    #[test]
    fn bell_numbers() {
        for (n, bell) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203), (7, 877), (8, 4140)] {
            let all: BTreeSet<Vec<usize>> = enum_partition_labels(n).unwrap().collect();
            assert_eq!(all.len(), bell, "n = {n}");
            assert_eq!(enum_partitions(n).unwrap().count(), bell);
        }
        assert!(enum_partitions(13).is_err());
    }

    #[test]
    fn hyperforest_examples() {
        assert!(brute_hyperforest(&h0(), &es(&[0, 1])).unwrap());
        let triple = Hypergraph::new(3, vec![vec![0, 1, 2]; 3]).unwrap();
        assert!(!brute_hyperforest(&triple, &es(&[0, 1, 2])).unwrap());
        assert!(brute_hyperforest(&triple, &[]).unwrap());
    }

    #[test]
    fn rank_and_strength_examples() {
        assert_eq!(brute_rank(&h1(), &es(&[0, 1, 2])).unwrap(), 3);
        let k3 = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(brute_strength(&k3, &EdgeVector::ones(Role::Capacity, 3)).unwrap(), Rational::new(3, 2));
        assert_eq!(brute_arboricity(&k3).unwrap(), Rational::new(3, 2));
        assert_eq!(brute_forest_cover(&k3).unwrap(), 2);
        assert_eq!(brute_hypertree_packing(&k3).unwrap(), 1);
        assert_eq!(brute_hypertree_packing(&h0()).unwrap(), 1);
    }

    #[test]
    fn min_partition_examples() {
        let x = EdgeVector::new(Role::Point, vec![Rational::one(), Rational::new(1, 2)], 2).unwrap();
        let (v, p) = brute_min_partition(&h0(), &es(&[0, 1]), &x, &Rational::one()).unwrap();
        assert_eq!(v, Rational::new(-1, 2));
        assert_eq!(p, Partition::singletons(3));
    }

    #[test]
    fn separation_examples() {
        let x = EdgeVector::from_integers(Role::Point, &[1, 1]).unwrap();
        assert_eq!(brute_separate(&h0(), &x).unwrap(), BruteSeparation::InPolytope);
        let parallel = Hypergraph::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(brute_separate(&parallel, &x).unwrap(), BruteSeparation::Violated(es(&[0, 1])));
    }

    #[test]
    fn reinforce_examples() {
        let d = EdgeVector::from_integers(Role::Cost, &[1, 2]).unwrap();
        assert_eq!(
            brute_reinforce(&h0(), 1, &d, &[2, 2]).unwrap(),
            BruteReinforcement::Optimal { cost: Rational::from(2), x: vec![2, 0] }
        );
        assert_eq!(brute_reinforce(&h0(), 1, &d, &[1, 0]).unwrap(), BruteReinforcement::Infeasible);
        assert_eq!(
            brute_reinforce(&h0(), 0, &d, &[1, 1]).unwrap(),
            BruteReinforcement::Optimal { cost: Rational::zero(), x: vec![0, 0] }
        );
    }

    #[test]
    fn cut_example() {
        let mut net = FlowNetwork::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, Capacity::Finite(Rational::from(2))).unwrap();
        net.add_arc(0, 2, Capacity::Finite(Rational::from(2))).unwrap();
        net.add_arc(1, 3, Capacity::Finite(Rational::from(1))).unwrap();
        net.add_arc(2, 3, Capacity::Infinite).unwrap();
        let (cap, side) = brute_min_cut(&net).unwrap();
        assert_eq!(cap, Rational::from(3));
        assert_eq!(side, vec![true, true, false, false]);
    }
}
