//! Minimum-cost reinforcement: find `x` with `0 ≤ x ≤ u` minimizing `d·x`
//! subject to `x(δ(P)) ≥ k(|P| − 1)` for every partition `P` of `V`.
//!
//! Dual algorithm. The dual has one variable `γ_P` per partition and one
//! `β(e)` per edge. Starting from all singletons and an empty tight
//! sub-hypergraph `H′`, each round raises `γ` on the current partition `P̄`
//! until another crossing edge becomes tight (its reduced cost hits zero),
//! adds that edge `ē` to `H′`, and re-solves
//!
//! `min_P u(δ_{H′}(P)) − k(|P| − 1)`
//!
//! with the partition oracle. If the optimum keeps `P̄`, `ē` is saturated
//! (`x(ē) = u(ē)`). Otherwise some blocks `{S_i : i ∈ I}` spanned by `ē`
//! merge into `U`, and `x(ē)` takes the value `λ` that makes
//! `x(δ(P_I)) = k(|I| − 1)`. The loop stops when the optimum is zero, with
//! `x(E) = k(|V| − 1)` and complementary slackness in place.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{crosses, EdgeId, EdgeVector, Hypergraph, Partition, Role, VertexId};
use crate::partition_oracle::min_partition;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpperBound {
    Finite(Rational),
    /// Replaced internally by `k(|V| − 1)`, which no optimal `x(e)` exceeds.
    Unbounded,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
}

/// The dual solution maintained by the algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualState {
    /// Every partition whose `γ` was raised, in order, with its value.
    pub gamma: Vec<(Partition, Rational)>,
    /// `β(e)`
    pub beta: Vec<Rational>,
    /// `d̄(e)`: reduced cost, frozen at zero once `e` joins `H′`.
    pub d_reduced: Vec<Rational>,
    /// `H′`, in insertion order.
    pub tight: Vec<EdgeId>,
    /// `P̄`. When the result is infeasible, `u(δ(P̄)) < k(|P̄| − 1)`.
    pub partition: Partition,
}

impl DualState {
    /// `Σ γ_P k(|P| − 1) − Σ u(e) β(e)`
    pub fn objective(&self, k: u64, u: &[Rational]) -> Rational {
        let k = Rational::from(k);
        let gain: Rational = self
            .gamma
            .iter()
            .map(|(p, g)| g * &k * Rational::from(p.len() - 1))
            .sum();
        let penalty: Rational = self.beta.iter().zip(u).map(|(b, u)| b * u).sum();
        gain - penalty
    }
}

/// Case-2 merge: blocks `indices` of the old partition fuse into `merged`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeDescriptor {
    pub indices: Vec<usize>,
    pub merged: Vec<VertexId>,
    /// `k(|I| − 1) − x(δ_H(P_I) ∖ {ē})`
    pub lambda: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeOutcome {
    Identity,
    Merge(MergeDescriptor),
}

/// Snapshot taken after a merge when [`ReinforceOptions::record_merges`]
/// is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeRecord {
    pub block: Vec<VertexId>,
    pub x: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReinforcementResult {
    pub status: Status,
    pub x: EdgeVector,
    pub cost: Rational,
    pub dual: DualState,
    /// The effective bounds (unbounded entries replaced).
    pub bounds: Vec<Rational>,
    pub iterations: usize,
    pub merges: Vec<MergeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReinforceOptions {
    /// Solve each subproblem on the hypergraph with the blocks of `P̄`
    /// contracted. Valid because some optimum only merges blocks of `P̄`.
    pub contract: bool,
    pub record_merges: bool,
}

impl Default for ReinforceOptions {
    fn default() -> Self {
        ReinforceOptions { contract: true, record_merges: false }
    }
}

pub fn reinforce(h: &Hypergraph, k: u64, d: &EdgeVector, u: &EdgeVector) -> Result<ReinforcementResult> {
    let bounds: Vec<UpperBound> = u.values().iter().cloned().map(UpperBound::Finite).collect();
    reinforce_with(h, k, d, &bounds, &ReinforceOptions::default())
}

pub fn reinforce_with(
    h: &Hypergraph,
    k: u64,
    d: &EdgeVector,
    u: &[UpperBound],
    options: &ReinforceOptions,
) -> Result<ReinforcementResult> {
    let (n, m) = (h.n(), h.m());
    for len in [d.len(), u.len()] {
        if len != m {
            return Err(Error::LengthMismatch { expected: m, found: len });
        }
    }
    let cap = Rational::from(k) * Rational::from(n.saturating_sub(1));
    let mut bounds = Vec::with_capacity(m);
    for (i, b) in u.iter().enumerate() {
        match b {
            UpperBound::Finite(v) if v.is_negative() => return Err(Error::NegativeEntry(EdgeId(i))),
            UpperBound::Finite(v) => bounds.push(v.clone()),
            UpperBound::Unbounded => bounds.push(cap.clone()),
        }
    }
    let u_vec = EdgeVector::new(Role::Bound, bounds.clone(), m)?;

    let mut x = vec![Rational::zero(); m];
    let mut dual = DualState {
        gamma: Vec::new(),
        beta: vec![Rational::zero(); m],
        d_reduced: d.values().to_vec(),
        tight: Vec::new(),
        partition: Partition::singletons(n),
    };
    let mut merges = Vec::new();

    let finish = |status, x: Vec<Rational>, dual, iterations, merges| {
        let x = EdgeVector::new(Role::Point, x, m).expect("x stays nonnegative");
        let cost = x.values().iter().zip(d.values()).map(|(a, b)| a * b).sum();
        ReinforcementResult { status, x, cost, dual, bounds: bounds.clone(), iterations, merges }
    };

    if k == 0 || n <= 1 {
        return Ok(finish(Status::Optimal, x, dual, 0, merges));
    }
    let kq = Rational::from(k);
    let mut in_tight = vec![false; m];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let labels = dual.partition.labels();
        let crossing: Vec<EdgeId> = h
            .edge_ids()
            .filter(|&e| crosses(&labels, h.edge(e).vertices()))
            .collect();
        let Some(eps) = crossing
            .iter()
            .filter(|e| !in_tight[e.0])
            .map(|e| &dual.d_reduced[e.0])
            .min()
            .cloned()
        else {
            // every edge crossing P̄ is tight and P̄ scored below zero
            let short = u_vec.sum_over(&crossing) < &kq * Rational::from(dual.partition.len() - 1);
            assert!(short, "infeasible without a short partition");
            return Ok(finish(Status::Infeasible, x, dual, iterations, merges));
        };
        let e_bar = *crossing
            .iter()
            .find(|e| !in_tight[e.0] && dual.d_reduced[e.0] == eps)
            .expect("minimizer exists");
        for &e in &crossing {
            if in_tight[e.0] {
                dual.beta[e.0] += &eps;
            } else {
                dual.d_reduced[e.0] -= &eps;
            }
        }
        if eps.is_positive() {
            match dual.gamma.last_mut() {
                Some((p, g)) if *p == dual.partition => *g += &eps,
                _ => dual.gamma.push((dual.partition.clone(), eps)),
            }
        }
        assert!(dual.d_reduced.iter().all(|r| !r.is_negative()), "reduced cost went negative");
        in_tight[e_bar.0] = true;
        dual.tight.push(e_bar);

        let (value, optimum) = solve_subproblem(h, &dual.tight, &u_vec, &kq, &dual.partition, options.contract)?;
        let optimum = if value.is_zero() { Partition::whole(n) } else { optimum };
        match canonicalize_merge(h, &dual.partition, &optimum, e_bar, &x, &u_vec, k)? {
            MergeOutcome::Identity => {
                x[e_bar.0] = bounds[e_bar.0].clone();
            }
            MergeOutcome::Merge(merge) => {
                x[e_bar.0] = merge.lambda;
                let mut blocks: Vec<Vec<VertexId>> = dual
                    .partition
                    .blocks()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| merge.indices.binary_search(i).is_err())
                    .map(|(_, b)| b.clone())
                    .collect();
                blocks.push(merge.merged.clone());
                dual.partition = Partition::new(n, blocks)?;
                debug_assert_eq!(
                    induced_sum(h, &x, &merge.merged),
                    &kq * Rational::from(merge.merged.len() - 1),
                    "merged block is not saturated"
                );
                if options.record_merges {
                    merges.push(MergeRecord { block: merge.merged, x: x.clone() });
                }
            }
        }
        debug_assert_eq!(
            dual.partition.objective(h, &dual.tight, &u_vec, &kq),
            value,
            "canonical partition lost optimality"
        );
        debug_assert!(partial_edges_inside_blocks(h, &x, &bounds, &dual.partition));
        if value.is_zero() {
            break;
        }
        assert!(iterations <= m, "more rounds than edges");
    }

    let result = finish(Status::Optimal, x, dual, iterations, merges);
    assert_eq!(
        result.x.total(),
        &kq * Rational::from(n - 1),
        "final x does not have weight k(|V| − 1)"
    );
    if let Err(msg) = check_certificate(h, k, d, &result) {
        panic!("reinforcement certificate failed: {msg}");
    }
    Ok(result)
}

fn induced_sum(h: &Hypergraph, x: &[Rational], set: &[VertexId]) -> Rational {
    let mut inside = vec![false; h.n()];
    for v in set {
        inside[v.0] = true;
    }
    h.edges()
        .iter()
        .filter(|e| e.vertices().iter().all(|v| inside[v.0]))
        .map(|e| &x[e.id.0])
        .sum()
}

/// Edges set strictly between 0 and their bound sit inside a block.
fn partial_edges_inside_blocks(h: &Hypergraph, x: &[Rational], u: &[Rational], p: &Partition) -> bool {
    let labels = p.labels();
    h.edges().iter().all(|e| {
        let v = &x[e.id.0];
        !(v.is_positive() && *v < u[e.id.0]) || !crosses(&labels, e.vertices())
    })
}

/// Minimum of `u(δ_{H′}(P)) − k(|P| − 1)` and a minimizer.
fn solve_subproblem(
    h: &Hypergraph,
    tight: &[EdgeId],
    u: &EdgeVector,
    k: &Rational,
    current: &Partition,
    contract: bool,
) -> Result<(Rational, Partition)> {
    if !contract {
        let r = min_partition(h, tight, u, k)?;
        return Ok((r.value, r.partition));
    }
    let labels = current.labels();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for &e in tight {
        let mut blocks: Vec<usize> = h.edge(e).vertices().iter().map(|v| labels[v.0]).collect();
        blocks.sort_unstable();
        blocks.dedup();
        if blocks.len() >= 2 {
            edges.push(blocks);
            weights.push(u.get(e).clone());
        }
    }
    let contracted = Hypergraph::new(current.len(), edges)?;
    let w = EdgeVector::new(Role::Bound, weights, contracted.m())?;
    let r = min_partition(&contracted, &contracted.all_edges(), &w, k)?;
    let coarse = r.partition.labels();
    let expanded: Vec<usize> = labels.iter().map(|&l| coarse[l]).collect();
    Ok((r.value, Partition::from_labels(&expanded)))
}

/// Rewrites an optimal `new` partition (for `H′ + ē`) into the form used by
/// the update step: either `old` itself, or `old` with the blocks `I`
/// spanned by `ē` fused into one block `U`.
///
/// 1. Whenever a block of `old` meets several blocks of `new`, those `new`
///    blocks are fused (optimality of `old` makes this no worse).
/// 2. Every fused group that does not span `ē` is split back into its `old`
///    blocks (also no worse).
pub fn canonicalize_merge(
    h: &Hypergraph,
    old: &Partition,
    new: &Partition,
    e_bar: EdgeId,
    x: &[Rational],
    u: &EdgeVector,
    k: u64,
) -> Result<MergeOutcome> {
    let n = h.n();
    if old.n() != n || new.n() != n {
        return Err(Error::LengthMismatch { expected: n, found: old.n().min(new.n()) });
    }
    h.check_edge_set(&[e_bar])?;
    let new_labels = new.labels();
    let mut groups = UnionFind::new(new.len());
    for block in old.blocks() {
        let first = new_labels[block[0].0];
        for v in &block[1..] {
            groups.union(first, new_labels[v.0]);
        }
    }
    let group_of_old: Vec<usize> = old
        .blocks()
        .iter()
        .map(|b| groups.find(new_labels[b[0].0]))
        .collect();

    let old_labels = old.labels();
    let verts = h.edge(e_bar).vertices();
    let root = group_of_old[old_labels[verts[0].0]];
    let within_one_group = verts.iter().all(|v| group_of_old[old_labels[v.0]] == root);
    let spans_two_blocks = crosses(&old_labels, verts);
    if !(within_one_group && spans_two_blocks) {
        return Ok(MergeOutcome::Identity);
    }

    let indices: Vec<usize> = (0..old.len()).filter(|&i| group_of_old[i] == root).collect();
    let mut merged: Vec<VertexId> = indices.iter().flat_map(|&i| old.blocks()[i].iter().copied()).collect();
    merged.sort_unstable();

    // x(δ_H(P_I) ∖ {ē}): edges inside U meeting two of its old blocks.
    let mut inside = vec![false; n];
    for v in &merged {
        inside[v.0] = true;
    }
    let crossing_inside: Rational = h
        .edges()
        .iter()
        .filter(|e| e.id != e_bar)
        .filter(|e| e.vertices().iter().all(|v| inside[v.0]) && crosses(&old_labels, e.vertices()))
        .map(|e| &x[e.id.0])
        .sum();
    let lambda = Rational::from(k) * Rational::from(indices.len() - 1) - crossing_inside;
    assert!(
        !lambda.is_negative() && lambda <= *u.get(e_bar),
        "merge value {lambda} outside [0, u(ē)]"
    );
    Ok(MergeOutcome::Merge(MergeDescriptor { indices, merged, lambda }))
}

/// Checks dual feasibility, primal-dual equality and complementary
/// slackness of an optimal result.
pub fn check_certificate(
    h: &Hypergraph,
    k: u64,
    d: &EdgeVector,
    result: &ReinforcementResult,
) -> core::result::Result<(), &'static str> {
    if result.status != Status::Optimal {
        return Err("not optimal");
    }
    let dual = &result.dual;
    let x = result.x.values();
    let u = &result.bounds;
    let kq = Rational::from(k);
    let m = h.m();
    let mut load = vec![Rational::zero(); m];
    for (p, g) in &dual.gamma {
        if g.is_negative() {
            return Err("negative gamma");
        }
        for e in p.crossing(h, &h.all_edges()) {
            load[e.0] += g;
        }
        if g.is_positive() {
            let used = result.x.sum_over(&p.crossing(h, &h.all_edges()));
            if used != &kq * Rational::from(p.len() - 1) {
                return Err("gamma > 0 on a partition that is not tight");
            }
        }
    }
    for e in 0..m {
        let (b, dv) = (&dual.beta[e], d.get(EdgeId(e)));
        if b.is_negative() {
            return Err("negative beta");
        }
        if load[e] > dv + b {
            return Err("dual constraint violated");
        }
        if b.is_positive() && x[e] != u[e] {
            return Err("beta > 0 on an unsaturated edge");
        }
        if x[e].is_positive() && load[e] != dv + b {
            return Err("x > 0 on an edge that is not tight");
        }
        if x[e].is_negative() || x[e] > u[e] {
            return Err("x outside its bounds");
        }
    }
    if result.cost != dual.objective(k, u) {
        return Err("primal and dual objectives differ");
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
