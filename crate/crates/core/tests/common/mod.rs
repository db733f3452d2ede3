#![allow(dead_code)]

use hypermat_core::{EdgeVector, Hypergraph, Rational, Role};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` edges on `n` vertices, sizes drawn from `sizes` (capped at `n`).
pub fn hypergraph(rng: &mut impl Rng, n: usize, m: usize, sizes: (usize, usize)) -> Hypergraph {
    let all: Vec<usize> = (0..n).collect();
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(sizes.0..=sizes.1).min(n);
            all.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    Hypergraph::new(n, edges).unwrap()
}

/// Random hypergraph without loops.
pub fn loopless(rng: &mut impl Rng, n: usize, m: usize, max_size: usize) -> Hypergraph {
    hypergraph(rng, n, m, (2, max_size.max(2)))
}

/// Ordinary multigraph.
pub fn graph(rng: &mut impl Rng, n: usize, m: usize) -> Hypergraph {
    hypergraph(rng, n, m, (2, 2))
}

/// Entries `p/q` with `q ≤ max_denom` and `lo ≤ p/q ≤ hi`.
pub fn rationals(rng: &mut impl Rng, m: usize, max_denom: i64, lo: i64, hi: i64, role: Role) -> EdgeVector {
    let values = (0..m)
        .map(|_| {
            let q = rng.gen_range(1..=max_denom);
            Rational::new(rng.gen_range(lo * q..=hi * q), q)
        })
        .collect();
    EdgeVector::new(role, values, m).unwrap()
}

pub fn integers(rng: &mut impl Rng, m: usize, lo: i64, hi: i64, role: Role) -> EdgeVector {
    let values: Vec<i64> = (0..m).map(|_| rng.gen_range(lo..=hi)).collect();
    EdgeVector::from_integers(role, &values).unwrap()
}

pub fn mask_ids(mask: usize, m: usize) -> Vec<hypermat_core::EdgeId> {
    (0..m).filter(|i| mask >> i & 1 == 1).map(hypermat_core::EdgeId).collect()
}

/// Connected components of the graph `(V, F)`; edges of any size.
pub fn components(h: &Hypergraph, f: &[hypermat_core::EdgeId]) -> usize {
    let mut parent: Vec<usize> = (0..h.n()).collect();
    fn find(p: &mut Vec<usize>, a: usize) -> usize {
        if p[a] != a {
            let r = find(p, p[a]);
            p[a] = r;
        }
        p[a]
    }
    for &e in f {
        let vs = h.edge(e).vertices();
        for w in vs.windows(2) {
            let (a, b) = (find(&mut parent, w[0].0), find(&mut parent, w[1].0));
            parent[a] = b;
        }
    }
    (0..h.n()).filter(|&v| find(&mut parent, v) == v).count()
}
