//! Auxiliary networks whose minimum cuts solve the vertex-set subproblems.
//!
//! Three of the four constructions share the edge-split gadget: every
//! hyperedge `e` becomes two nodes `e′, e″` with arcs `e′ → e″` and
//! `e′ → t`, `e″ → t` of capacity `c(e)/2`, plus infinite arcs `u → e′` and
//! `e″ → u` for each `u ∈ e`. In a finite cut with source side `{s} ∪ T`, an
//! edge costs nothing iff it lies entirely outside `T`, and costs `c(e)`
//! otherwise. With `W = V ∖ T` the cut capacity is then an affine function
//! of `|W|`-type terms minus `c(E[W])`, and the forced arc `v̄ → t` keeps
//! `v̄ ∈ W`.
//!
//! Node layout: `s = 0`, `t = 1`, vertex `v` is `2 + v`, edge nodes follow.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, EdgeVector, Hypergraph, VertexId};
use crate::mincut::{Capacity, CutResult, FlowNetwork};
use crate::rational::Rational;

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    /// `min_{W ∋ v̄} |W| − x(E[W])`
    Polytope,
    /// `min_{W ∋ v̄} η(W) − x(F[W])`
    Supermodular,
    /// `min_{W ∋ v̄} β|W| − |E[W]|`
    Arboricity,
    /// `min_{F ∋ e_i} |∪F| − |F|`
    Independence,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeNodes {
    Absent,
    Split { first: usize, second: usize },
    Single(usize),
}

#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub network: FlowNetwork,
    kind: GadgetKind,
    vertex_nodes: Vec<Option<usize>>,
    edge_nodes: Vec<EdgeNodes>,
    members: Vec<EdgeId>,
    forced: Option<VertexId>,
    /// `objective = cut capacity − offset`
    offset: Rational,
}

impl GadgetGraph {
    pub fn kind(&self) -> GadgetKind {
        self.kind
    }

    pub fn vertex_node(&self, v: VertexId) -> Option<usize> {
        self.vertex_nodes.get(v.0).copied().flatten()
    }

    pub fn edge_nodes(&self, e: EdgeId) -> EdgeNodes {
        self.edge_nodes.get(e.0).copied().unwrap_or(EdgeNodes::Absent)
    }

    /// The vertex pinned to the sink side (`v̄`), if the gadget has one.
    pub fn forced(&self) -> Option<VertexId> {
        self.forced
    }

    /// Edges represented in the network.
    pub fn members(&self) -> &[EdgeId] {
        &self.members
    }

    /// Optimal value of the underlying set problem for a given cut of this
    /// gadget.
    pub fn objective(&self, cut: &CutResult) -> Rational {
        cut.capacity() - &self.offset
    }
}

/// A cut of an edge-split gadget read back in terms of vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCutInterpretation {
    /// `T′ = V ∩ T`
    pub source_vertices: Vec<VertexId>,
    /// `W = V ∖ T′`; always contains the forced vertex.
    pub sink_vertices: Vec<VertexId>,
    /// `e′ ∈ T`, `e″ ∉ T`
    pub e1: Vec<EdgeId>,
    /// `e′, e″ ∈ T`
    pub e2: Vec<EdgeId>,
    /// `e′, e″ ∉ T`: the edges contained in `W`.
    pub e3: Vec<EdgeId>,
    pub value: Rational,
}

/// A cut of the independence gadget: the chosen edge family `F ∋ e_i`, its
/// span, and `|∪F| − |F|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceCut {
    pub edges: Vec<EdgeId>,
    pub span: Vec<VertexId>,
    pub value: Rational,
}

fn half(r: &Rational) -> Rational {
    r / Rational::from(2)
}

struct SplitBuilder {
    network: FlowNetwork,
    edge_nodes: Vec<EdgeNodes>,
}

/// Nodes and vertex-terminal arcs are left to the caller; this adds the
/// per-edge part.
fn edge_split<F>(h: &Hypergraph, members: &[EdgeId], weight: F) -> Result<SplitBuilder>
where
    F: Fn(EdgeId) -> Rational,
{
    let nodes = 2 + h.n() + 2 * members.len();
    let mut network = FlowNetwork::new(nodes, SOURCE, SINK)?;
    let mut edge_nodes = vec![EdgeNodes::Absent; h.m()];
    for (i, &e) in members.iter().enumerate() {
        let first = 2 + h.n() + 2 * i;
        let second = first + 1;
        let cap = Capacity::Finite(half(&weight(e)));
        network.add_arc(first, second, cap.clone())?;
        for &u in h.edge(e).vertices() {
            network.add_arc(2 + u.0, first, Capacity::Infinite)?;
            network.add_arc(second, 2 + u.0, Capacity::Infinite)?;
        }
        network.add_arc(first, SINK, cap.clone())?;
        network.add_arc(second, SINK, cap)?;
        edge_nodes[e.0] = EdgeNodes::Split { first, second };
    }
    Ok(SplitBuilder { network, edge_nodes })
}

fn finish(
    builder: SplitBuilder,
    h: &Hypergraph,
    kind: GadgetKind,
    members: Vec<EdgeId>,
    forced: VertexId,
    offset: Rational,
) -> GadgetGraph {
    GadgetGraph {
        network: builder.network,
        kind,
        vertex_nodes: (0..h.n()).map(|v| Some(2 + v)).collect(),
        edge_nodes: builder.edge_nodes,
        members,
        forced: Some(forced),
        offset,
    }
}

/// Network whose minimum cut minimizes `|W| − x(E[W])` over `W ∋ v̄`.
pub fn build_polytope_gadget(h: &Hypergraph, x: &EdgeVector, forced: VertexId) -> Result<GadgetGraph> {
    h.check_vertex(forced)?;
    if x.len() != h.m() {
        return Err(Error::LengthMismatch { expected: h.m(), found: x.len() });
    }
    for e in h.edge_ids() {
        let v = x.get(e);
        if v.is_negative() || *v > Rational::one() {
            return Err(Error::OutsideUnitInterval(e));
        }
    }
    let members = h.all_edges();
    let mut b = edge_split(h, &members, |e| x.get(e).clone())?;
    for v in 0..h.n() {
        b.network.add_arc(SOURCE, 2 + v, Capacity::Finite(Rational::one()))?;
    }
    b.network.add_arc(2 + forced.0, SINK, Capacity::Infinite)?;
    Ok(finish(b, h, GadgetKind::Polytope, members, forced, x.total()))
}

/// Network whose minimum cut minimizes `η(W) − x(E[W])` over `W ∋ v̄`.
pub fn build_supermodular_gadget(
    h: &Hypergraph,
    x: &EdgeVector,
    eta: &[Rational],
    forced: VertexId,
) -> Result<GadgetGraph> {
    build_supermodular_gadget_on(h, &h.all_edges(), x, eta, forced)
}

/// As [`build_supermodular_gadget`], with only the edges in `f` present.
pub fn build_supermodular_gadget_on(
    h: &Hypergraph,
    f: &[EdgeId],
    x: &EdgeVector,
    eta: &[Rational],
    forced: VertexId,
) -> Result<GadgetGraph> {
    h.check_vertex(forced)?;
    if eta.len() != h.n() {
        return Err(Error::LengthMismatch { expected: h.n(), found: eta.len() });
    }
    if x.len() != h.m() {
        return Err(Error::LengthMismatch { expected: h.m(), found: x.len() });
    }
    let members = h.check_edge_set(f)?;
    let mut b = edge_split(h, &members, |e| x.get(e).clone())?;
    let mut negative_total = Rational::zero();
    for (v, value) in eta.iter().enumerate() {
        b.network.add_arc(SOURCE, 2 + v, Capacity::Finite(value.positive_part()))?;
        let neg = value.negative_part();
        b.network.add_arc(2 + v, SINK, Capacity::Finite(-&neg))?;
        negative_total += neg;
    }
    b.network.add_arc(2 + forced.0, SINK, Capacity::Infinite)?;
    let offset = x.sum_over(&members) - negative_total;
    Ok(finish(b, h, GadgetKind::Supermodular, members, forced, offset))
}

/// Network whose minimum cut minimizes `β|W| − |E[W]|` over `W ∋ v̄`.
pub fn build_arboricity_gadget(h: &Hypergraph, beta: &Rational, forced: VertexId) -> Result<GadgetGraph> {
    h.check_vertex(forced)?;
    if !beta.is_positive() {
        return Err(Error::NonPositive("beta"));
    }
    if let Some(e) = h.has_loop() {
        return Err(Error::LoopPresent(e));
    }
    let members = h.all_edges();
    let mut b = edge_split(h, &members, |_| Rational::one())?;
    for v in 0..h.n() {
        b.network.add_arc(SOURCE, 2 + v, Capacity::Finite(beta.clone()))?;
    }
    b.network.add_arc(2 + forced.0, SINK, Capacity::Infinite)?;
    let offset = Rational::from(h.m());
    Ok(finish(b, h, GadgetKind::Arboricity, members, forced, offset))
}

/// Network whose minimum cut `C` gives `C − |I′| = min |∪F| − |F|` over
/// `F ⊆ I′` with `e_i ∈ F`. Vertex nodes exist only for the span of `I′`.
pub fn build_independence_gadget(
    h: &Hypergraph,
    members: &[EdgeId],
    distinguished: EdgeId,
) -> Result<GadgetGraph> {
    let members = h.check_edge_set(members)?;
    if members.binary_search(&distinguished).is_err() {
        return Err(Error::NotAMember(distinguished));
    }
    let mut vertex_nodes = vec![None; h.n()];
    let mut next = 2 + members.len();
    for &e in &members {
        for &v in h.edge(e).vertices() {
            if vertex_nodes[v.0].is_none() {
                vertex_nodes[v.0] = Some(next);
                next += 1;
            }
        }
    }
    let mut network = FlowNetwork::new(next, SOURCE, SINK)?;
    let mut edge_nodes = vec![EdgeNodes::Absent; h.m()];
    for (i, &e) in members.iter().enumerate() {
        let node = 2 + i;
        edge_nodes[e.0] = EdgeNodes::Single(node);
        let cap = if e == distinguished { Capacity::Infinite } else { Capacity::Finite(Rational::one()) };
        network.add_arc(SOURCE, node, cap)?;
        for &v in h.edge(e).vertices() {
            network.add_arc(node, vertex_nodes[v.0].expect("span vertex"), Capacity::Infinite)?;
        }
    }
    for node in vertex_nodes.iter().flatten() {
        network.add_arc(*node, SINK, Capacity::Finite(Rational::one()))?;
    }
    let offset = Rational::from(members.len());
    Ok(GadgetGraph {
        network,
        kind: GadgetKind::Independence,
        vertex_nodes,
        edge_nodes,
        members,
        forced: None,
        offset,
    })
}

/// Reads a cut of an edge-split gadget back into `T′`, `W`, `E₁`, `E₂`, `E₃`.
///
/// Panics if `g` is an independence gadget or if the cut violates the
/// implications carried by the infinite arcs.
pub fn interpret_gadget_cut(h: &Hypergraph, g: &GadgetGraph, cut: &CutResult) -> GadgetCutInterpretation {
    assert!(g.kind != GadgetKind::Independence, "use interpret_independence_cut");
    let side = cut.side();
    let in_t: Vec<bool> = (0..h.n()).map(|v| side[2 + v]).collect();
    let mut out = GadgetCutInterpretation {
        source_vertices: Vec::new(),
        sink_vertices: Vec::new(),
        e1: Vec::new(),
        e2: Vec::new(),
        e3: Vec::new(),
        value: g.objective(cut),
    };
    for v in h.vertices() {
        if in_t[v.0] {
            out.source_vertices.push(v);
        } else {
            out.sink_vertices.push(v);
        }
    }
    for &e in &g.members {
        let EdgeNodes::Split { first, second } = g.edge_nodes[e.0] else {
            unreachable!("edge-split gadget")
        };
        let verts = h.edge(e).vertices();
        let (a, b) = (side[first], side[second]);
        if verts.iter().any(|u| in_t[u.0]) {
            assert!(a, "vertex of {e} on source side but e' is not");
        }
        if b {
            assert!(verts.iter().all(|u| in_t[u.0]), "e'' of {e} on source side but not all of e");
        }
        match (a, b) {
            (true, false) => out.e1.push(e),
            (true, true) => out.e2.push(e),
            (false, false) => out.e3.push(e),
            (false, true) => unreachable!("e'' in T forces e' in T"),
        }
    }
    if let Some(v) = g.forced {
        assert!(!in_t[v.0], "forced vertex on the source side");
    }
    out
}

pub fn interpret_independence_cut(h: &Hypergraph, g: &GadgetGraph, cut: &CutResult) -> IndependenceCut {
    assert_eq!(g.kind, GadgetKind::Independence);
    let side = cut.side();
    let edges: Vec<EdgeId> = g
        .members
        .iter()
        .copied()
        .filter(|&e| matches!(g.edge_nodes[e.0], EdgeNodes::Single(node) if side[node]))
        .collect();
    let span: Vec<VertexId> = h
        .vertices()
        .filter(|&v| g.vertex_node(v).is_some_and(|node| side[node]))
        .collect();
    IndependenceCut { edges, span, value: g.objective(cut) }
}
