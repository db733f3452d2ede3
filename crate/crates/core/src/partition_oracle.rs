//! Minimizing `x(δ_F(P)) − β(|P| − 1)` over all partitions `P` of `V`.
//!
//! Fix the root `r = 0` and let `f(S) = β·[r ∉ S] + x(F[S])`. This `f` is
//! intersecting supermodular, so `min y(V)` subject to `y(S) ≥ f(S)` for all
//! nonempty `S` is solved greedily: start with `y ≡ β + x(F)`; while some
//! vertex `v̄` is uncovered, find `S̄ ∋ v̄` minimizing `y(S) − f(S)` (one min
//! cut on the supermodular gadget with `η = y + β·1_r`), lower `y(v̄)` by
//! the slack so `S̄` becomes tight, and merge `S̄` with every tight set it
//! meets. The tight sets end up partitioning `V` and
//!
//! `min_P x(δ_F(P)) − β(|P| − 1) = x(F) − y(V)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, EdgeVector, Hypergraph, Partition, VertexId};
use crate::mincut::min_st_cut;
use crate::rational::Rational;
use crate::reductions::{build_supermodular_gadget_on, interpret_gadget_cut};

pub const ROOT: VertexId = VertexId(0);

/// Working state of the greedy: the dual-feasible `y`, the family of tight
/// sets, and the last decrement `α`.
#[derive(Clone, Debug)]
pub struct GreedyState {
    pub y: Vec<Rational>,
    pub family: Vec<Vec<VertexId>>,
    pub root: VertexId,
    pub beta: Rational,
    pub alpha: Rational,
    /// Number of min-cut solves performed.
    pub solves: usize,
}

impl GreedyState {
    /// `η(v) = y(v)` for `v ≠ r`, `η(r) = y(r) + β`.
    pub fn eta(&self) -> Vec<Rational> {
        let mut eta = self.y.clone();
        eta[self.root.0] += &self.beta;
        eta
    }

    pub fn y_of(&self, set: &[VertexId]) -> Rational {
        set.iter().map(|v| &self.y[v.0]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionOracleResult {
    /// The minimum; never positive because `{V}` scores zero.
    pub value: Rational,
    /// A minimizer. `{V}` whenever the minimum is zero.
    pub partition: Partition,
    pub violated: bool,
}

fn induced_weight(h: &Hypergraph, f: &[EdgeId], x: &EdgeVector, inside: &[bool]) -> Rational {
    f.iter()
        .filter(|&&e| h.edge(e).vertices().iter().all(|v| inside[v.0]))
        .map(|&e| x.get(e))
        .sum()
}

fn membership(n: usize, set: &[VertexId]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for v in set {
        inside[v.0] = true;
    }
    inside
}

/// `f(S) = β + x(F[S])` if `r ∉ S`, else `x(F[S])`.
pub fn supermodular_f(
    h: &Hypergraph,
    f: &[EdgeId],
    x: &EdgeVector,
    beta: &Rational,
    root: VertexId,
    set: &[VertexId],
) -> Result<Rational> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for &v in set {
        h.check_vertex(v)?;
    }
    let f = h.check_edge_set(f)?;
    let inside = membership(h.n(), set);
    let base = induced_weight(h, &f, x, &inside);
    Ok(if inside[root.0] { base } else { base + beta })
}

/// Exact minimum of `x(δ_F(P)) − β(|P| − 1)` over all partitions of `V`.
pub fn min_partition(h: &Hypergraph, f: &[EdgeId], x: &EdgeVector, beta: &Rational) -> Result<PartitionOracleResult> {
    min_partition_with_state(h, f, x, beta).map(|(r, _)| r)
}

/// As [`min_partition`], also returning the final greedy state.
pub fn min_partition_with_state(
    h: &Hypergraph,
    f: &[EdgeId],
    x: &EdgeVector,
    beta: &Rational,
) -> Result<(PartitionOracleResult, GreedyState)> {
    let n = h.n();
    if n == 0 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    if !beta.is_positive() {
        return Err(Error::NonPositive("beta"));
    }
    if x.len() != h.m() {
        return Err(Error::LengthMismatch { expected: h.m(), found: x.len() });
    }
    let f = h.check_edge_set(f)?;
    if let Some(&e) = f.iter().find(|&&e| x.get(e).is_negative()) {
        return Err(Error::NegativeEntry(e));
    }
    let x_total = x.sum_over(&f);

    let mut state = GreedyState {
        y: vec![beta + &x_total; n],
        family: Vec::new(),
        root: ROOT,
        beta: beta.clone(),
        alpha: Rational::zero(),
        solves: 0,
    };
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut slots: Vec<Option<Vec<VertexId>>> = Vec::new();
    let f_of = |set: &[VertexId]| {
        let inside = membership(n, set);
        let base = induced_weight(h, &f, x, &inside);
        if inside[ROOT.0] { base } else { base + beta }
    };

    for pick in 0..n {
        if owner[pick].is_some() {
            continue;
        }
        let forced = VertexId(pick);
        let gadget = build_supermodular_gadget_on(h, &f, x, &state.eta(), forced)?;
        let cut = min_st_cut(&gadget.network)?;
        state.solves += 1;
        let reading = interpret_gadget_cut(h, &gadget, &cut);
        // reading.value = min over W ∋ v̄ of η(W) − x(F[W]) = y(W) − f(W) + β
        let alpha = &reading.value - beta;
        assert!(!alpha.is_negative(), "greedy lost dual feasibility");
        let chosen = reading.sink_vertices;
        state.y[pick] -= &alpha;
        state.alpha = alpha;
        debug_assert_eq!(state.y_of(&chosen), f_of(&chosen), "chosen set is not tight");

        // Uncross: the family was disjoint, so one pass merges everything
        // that meets the new set.
        let mut merged = chosen;
        for v in merged.clone() {
            if let Some(slot) = owner[v.0] {
                if let Some(set) = slots[slot].take() {
                    merged.extend(set);
                }
            }
        }
        merged.sort_unstable();
        merged.dedup();
        debug_assert_eq!(state.y_of(&merged), f_of(&merged), "union of tight sets is not tight");
        let slot = slots.len();
        for v in &merged {
            owner[v.0] = Some(slot);
        }
        slots.push(Some(merged));
    }
    assert!(state.solves <= n);

    state.family = slots.into_iter().flatten().collect();
    let family = Partition::new(n, state.family.clone()).expect("tight sets partition V");
    let y_total: Rational = state.y.iter().sum();
    let value = &x_total - &y_total;
    assert!(!value.is_positive(), "greedy optimum below f(V)");
    assert_eq!(value, family.objective(h, &f, x, beta), "greedy value disagrees with its partition");
    if value.is_negative() {
        let dual: Rational = state.family.iter().map(|s| f_of(s)).sum();
        assert!(dual == y_total && dual > x_total, "dual certificate broken");
    }
    let partition = if value.is_zero() { Partition::whole(n) } else { family };
    let violated = value.is_negative();
    Ok((PartitionOracleResult { value, partition, violated }, state))
}
