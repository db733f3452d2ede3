//! Hypergraphs, per-edge vectors, vertex partitions, and the two basic set
//! queries every algorithm is phrased in: edges induced by a vertex set and
//! edges crossing a family of disjoint blocks.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    pub id: EdgeId,
    vertices: Vec<VertexId>,
}

impl Hyperedge {
    /// Strictly increasing, nonempty.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// `H = (V, E)` with `V = {0, .., n-1}`. Parallel edges are distinct ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting empty edges, out-of-range vertices and
    /// repeated vertices inside an edge.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (id, mut verts) in edges.into_iter().enumerate() {
            if verts.is_empty() {
                return Err(Error::EmptyEdge { edge: id });
            }
            verts.sort_unstable();
            if let Some(w) = verts.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertexInEdge { edge: id, vertex: w[0] });
            }
            if let Some(&v) = verts.last().filter(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            out.push(Hyperedge {
                id: EdgeId(id),
                vertices: verts.into_iter().map(VertexId).collect(),
            });
        }
        Ok(Hypergraph { n, edges: out })
    }

    /// Like [`Hypergraph::new`] but silently collapses repeated vertices.
    /// Returns the `(edge, vertex)` pairs that were dropped.
    pub fn new_dedup(n: usize, mut edges: Vec<Vec<usize>>) -> Result<(Self, Vec<(usize, usize)>)> {
        let mut dropped = Vec::new();
        for (id, verts) in edges.iter_mut().enumerate() {
            verts.sort_unstable();
            for w in verts.windows(2).filter(|w| w[0] == w[1]) {
                dropped.push((id, w[0]));
            }
            verts.dedup();
        }
        Ok((Hypergraph::new(n, edges)?, dropped))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Hyperedge {
        &self.edges[id.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn all_edges(&self) -> Vec<EdgeId> {
        self.edge_ids().collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn has_loop(&self) -> Option<EdgeId> {
        self.edges.iter().find(|e| e.is_loop()).map(|e| e.id)
    }

    /// Sorted, deduplicated copy of `ids`, or an error for an unknown id.
    pub fn check_edge_set(&self, ids: &[EdgeId]) -> Result<Vec<EdgeId>> {
        let mut out = ids.to_vec();
        out.sort_unstable();
        out.dedup();
        if let Some(e) = out.last().filter(|e| e.0 >= self.m()) {
            return Err(Error::EdgeOutOfRange { edge: e.0, m: self.m() });
        }
        Ok(out)
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 >= self.n {
            Err(Error::VertexOutOfRange { vertex: v.0, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// What an [`EdgeVector`] stands for. Only used for diagnostics and the CLI.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Point,
    Capacity,
    Cost,
    Bound,
    Weight,
}

/// A nonnegative exact rational per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeVector {
    role: Role,
    values: Vec<Rational>,
}

impl EdgeVector {
    pub fn new(role: Role, values: Vec<Rational>, m: usize) -> Result<Self> {
        if values.len() != m {
            return Err(Error::LengthMismatch { expected: m, found: values.len() });
        }
        if let Some(i) = values.iter().position(Rational::is_negative) {
            return Err(Error::NegativeEntry(EdgeId(i)));
        }
        Ok(EdgeVector { role, values })
    }

    /// Same as [`EdgeVector::new`] but without the sign check. Used for
    /// points handed to the polytope separation routine, which must report
    /// negative entries rather than reject them.
    pub fn new_signed(role: Role, values: Vec<Rational>, m: usize) -> Result<Self> {
        if values.len() != m {
            return Err(Error::LengthMismatch { expected: m, found: values.len() });
        }
        Ok(EdgeVector { role, values })
    }

    pub fn from_integers(role: Role, values: &[i64]) -> Result<Self> {
        let m = values.len();
        EdgeVector::new(role, values.iter().map(|&v| Rational::from(v)).collect(), m)
    }

    pub fn constant(role: Role, value: Rational, m: usize) -> Self {
        assert!(!value.is_negative());
        EdgeVector { role, values: vec![value; m] }
    }

    pub fn ones(role: Role, m: usize) -> Self {
        EdgeVector::constant(role, Rational::one(), m)
    }

    pub fn zeros(role: Role, m: usize) -> Self {
        EdgeVector::constant(role, Rational::zero(), m)
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn get(&self, e: EdgeId) -> &Rational {
        &self.values[e.0]
    }

    pub fn sum_over(&self, ids: &[EdgeId]) -> Rational {
        ids.iter().map(|e| &self.values[e.0]).sum()
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn require_integral(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_integer()) {
            Some(i) => Err(Error::NonIntegral(EdgeId(i))),
            None => Ok(()),
        }
    }
}

/// A partition of `{0, .., n-1}` into nonempty blocks.
///
/// Stored canonically: each block sorted, blocks ordered by their smallest
/// vertex. Two partitions are equal iff they group vertices identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<VertexId>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &v in block {
                if v.0 >= n {
                    return Err(Error::VertexOutOfRange { vertex: v.0, n });
                }
                if seen[v.0] {
                    return Err(Error::OverlappingBlocks(v));
                }
                seen[v.0] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Uncovered(VertexId(v)));
        }
        Ok(Self::canonical(blocks))
    }

    fn canonical(mut blocks: Vec<Vec<VertexId>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Builds the partition whose blocks are the classes of `labels`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut index: Vec<Option<usize>> = Vec::new();
        let mut blocks: Vec<Vec<VertexId>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            if l >= index.len() {
                index.resize(l + 1, None);
            }
            let b = *index[l].get_or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(VertexId(v));
        }
        Self::canonical(blocks)
    }

    pub fn singletons(n: usize) -> Self {
        Partition { blocks: (0..n).map(|v| vec![VertexId(v)]).collect() }
    }

    pub fn whole(n: usize) -> Self {
        if n == 0 {
            return Partition { blocks: Vec::new() };
        }
        Partition { blocks: vec![(0..n).map(VertexId).collect()] }
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// `labels[v]` = index of the block holding `v`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n()];
        for (i, b) in self.blocks.iter().enumerate() {
            for v in b {
                labels[v.0] = i;
            }
        }
        labels
    }

    /// Edges of `f` meeting at least two blocks.
    pub fn crossing(&self, h: &Hypergraph, f: &[EdgeId]) -> Vec<EdgeId> {
        let labels = self.labels();
        f.iter()
            .copied()
            .filter(|&e| crosses(&labels, h.edge(e).vertices()))
            .collect()
    }

    /// `x(δ_f(P)) − β(|P| − 1)`.
    pub fn objective(&self, h: &Hypergraph, f: &[EdgeId], x: &EdgeVector, beta: &Rational) -> Rational {
        let cut = x.sum_over(&self.crossing(h, f));
        cut - beta * Rational::from(self.len().saturating_sub(1))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Whether an edge meets at least two classes of a full labelling.
pub(crate) fn crosses(labels: &[usize], verts: &[VertexId]) -> bool {
    let first = labels[verts[0].0];
    verts[1..].iter().any(|v| labels[v.0] != first)
}

/// `F[X]`: the edges of `f` contained in `x`.
pub fn induced_edges(h: &Hypergraph, f: &[EdgeId], x: &[VertexId]) -> Result<Vec<EdgeId>> {
    let f = h.check_edge_set(f)?;
    let mut inside = vec![false; h.n()];
    for &v in x {
        h.check_vertex(v)?;
        inside[v.0] = true;
    }
    Ok(f.into_iter()
        .filter(|&e| h.edge(e).vertices().iter().all(|v| inside[v.0]))
        .collect())
}

/// `δ_F(P)` for a family of pairwise disjoint vertex sets. Only edges lying
/// inside the union of the family are counted.
pub fn cross_edges(h: &Hypergraph, f: &[EdgeId], family: &[Vec<VertexId>]) -> Result<Vec<EdgeId>> {
    let f = h.check_edge_set(f)?;
    let mut label: Vec<Option<usize>> = vec![None; h.n()];
    for (i, block) in family.iter().enumerate() {
        for &v in block {
            h.check_vertex(v)?;
            if label[v.0].is_some() {
                return Err(Error::OverlappingBlocks(v));
            }
            label[v.0] = Some(i);
        }
    }
    Ok(f.into_iter()
        .filter(|&e| {
            let verts = h.edge(e).vertices();
            let mut first = None;
            let mut two = false;
            for v in verts {
                match (label[v.0], first) {
                    (None, _) => return false,
                    (Some(l), None) => first = Some(l),
                    (Some(l), Some(f0)) => two |= l != f0,
                }
            }
            two
        })
        .collect())
}
