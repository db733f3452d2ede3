//! Strength and arboricity by Newton's method on exact ratios.
//!
//! Strength: `σ = min_{|P| ≥ 2} c(δ(P)) / (|P| − 1)`. Each step minimizes
//! `c(δ(P)) − β(|P| − 1)` with the partition oracle and moves `β` to the
//! ratio of the minimizer until the minimum reaches zero.
//!
//! Arboricity: `ρ = max_{|X| ≥ 2} |E[X]| / (|X| − 1)`. Each step maximizes
//! `|E[X]| − β(|X| − 1)` with one arboricity-gadget cut per vertex.
//!
//! Both loops run at most `|V|` times.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeVector, Hypergraph, Partition, VertexId};
use crate::mincut::min_st_cut;
use crate::partition_oracle::min_partition;
use crate::rational::Rational;
use crate::reductions::{build_arboricity_gadget, interpret_gadget_cut};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthResult {
    pub sigma: Rational,
    /// Attains `sigma`; at least two blocks.
    pub critical_partition: Partition,
    /// `⌊sigma⌋`, the number of disjoint hypertrees when `c ≡ 1`.
    pub integer_packing: BigInt,
    /// Partition-oracle calls made.
    pub iterations: usize,
    /// The `β` sequence, strictly decreasing.
    pub betas: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArboricityResult {
    pub rho: Rational,
    /// `⌈rho⌉`: the fewest hyperforests partitioning `E`.
    pub k: BigInt,
    /// Attains `rho`.
    pub witness: Vec<VertexId>,
    /// Newton steps (each one a round of `|V|` cuts).
    pub iterations: usize,
    /// The `β` sequence, strictly increasing.
    pub betas: Vec<Rational>,
}

fn ratio(cut: Rational, parts: usize) -> Rational {
    cut / Rational::from(parts - 1)
}

pub fn strength(h: &Hypergraph, c: &EdgeVector) -> Result<StrengthResult> {
    let n = h.n();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    if c.len() != h.m() {
        return Err(Error::LengthMismatch { expected: h.m(), found: c.len() });
    }
    let all = h.all_edges();
    let mut current = Partition::singletons(n);
    let mut beta = ratio(c.sum_over(&current.crossing(h, &all)), n);
    let mut betas = alloc::vec![beta.clone()];
    let mut iterations = 0;
    // β = 0 is already the floor of every ratio.
    while beta.is_positive() {
        iterations += 1;
        let step = min_partition(h, &all, c, &beta)?;
        if !step.value.is_negative() {
            break;
        }
        let next = ratio(c.sum_over(&step.partition.crossing(h, &all)), step.partition.len());
        assert!(next < beta, "Newton step did not decrease beta");
        beta = next;
        betas.push(beta.clone());
        current = step.partition;
    }
    assert!(iterations <= n, "Newton exceeded |V| iterations");
    Ok(StrengthResult {
        integer_packing: beta.floor(),
        sigma: beta,
        critical_partition: current,
        iterations,
        betas,
    })
}

pub fn arboricity(h: &Hypergraph) -> Result<ArboricityResult> {
    if let Some(e) = h.has_loop() {
        return Err(Error::LoopPresent(e));
    }
    let n = h.n();
    if h.m() == 0 {
        return Ok(ArboricityResult {
            rho: Rational::zero(),
            k: BigInt::from(0),
            witness: h.vertices().collect(),
            iterations: 0,
            betas: Vec::new(),
        });
    }
    let mut witness: Vec<VertexId> = h.vertices().collect();
    let mut beta = ratio(Rational::from(h.m()), n);
    let mut betas = alloc::vec![beta.clone()];
    let mut iterations = 0;
    loop {
        iterations += 1;
        // min over v̄ and W ∋ v̄ of β|W| − |E[W]|
        let mut best: Option<(Rational, Vec<VertexId>, usize)> = None;
        for v in h.vertices() {
            let g = build_arboricity_gadget(h, &beta, v)?;
            let cut = min_st_cut(&g.network)?;
            let reading = interpret_gadget_cut(h, &g, &cut);
            if best.as_ref().is_none_or(|(b, _, _)| reading.value < *b) {
                best = Some((reading.value, reading.sink_vertices, reading.e3.len()));
            }
        }
        let (value, set, inside) = best.expect("at least one vertex");
        let gain = &beta - &value;
        if !gain.is_positive() {
            break;
        }
        assert!(set.len() >= 2, "singletons never improve");
        let next = ratio(Rational::from(inside), set.len());
        assert!(next > beta, "Newton step did not increase beta");
        beta = next;
        betas.push(beta.clone());
        witness = set;
    }
    assert!(iterations <= n, "Newton exceeded |V| iterations");
    Ok(ArboricityResult { k: beta.ceil(), rho: beta, witness, iterations, betas })
}
