//! Exact minimum s-t cuts.
//!
//! Capacities are rationals or a symbolic infinity. Before solving, all finite
//! capacities are multiplied by the least common multiple of their
//! denominators, so the max-flow itself runs on integers (`i64` when the
//! totals fit, `BigInt` otherwise). Infinite arcs never receive a numeric
//! stand-in: their residual capacity is a flag.
//!
//! The solver is a highest-label push-relabel with the gap heuristic. Once
//! the maximum preflow is found, stranded excess is returned to the source so
//! the result is a genuine maximum flow, and the reported source side is the
//! set of nodes residual-reachable from `s` (the inclusion-minimal minimum
//! cut).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Capacity {
    Finite(Rational),
    Infinite,
}

impl Capacity {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Capacity::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Capacity::Finite(r) => Some(r),
            Capacity::Infinite => None,
        }
    }
}

impl From<Rational> for Capacity {
    fn from(r: Rational) -> Self {
        Capacity::Finite(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

/// A directed network with a designated source and sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        for node in [source, sink] {
            if node >= nodes {
                return Err(Error::NodeOutOfRange { node, nodes });
            }
        }
        if source == sink {
            return Err(Error::SourceIsSink);
        }
        Ok(FlowNetwork { nodes, arcs: Vec::new(), source, sink })
    }

    /// Adds an arc and returns its index. Capacities must be nonnegative.
    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: Capacity) -> Result<usize> {
        for node in [tail, head] {
            if node >= self.nodes {
                return Err(Error::NodeOutOfRange { node, nodes: self.nodes });
            }
        }
        if capacity.finite().is_some_and(Rational::is_negative) {
            return Err(Error::NonPositive("arc capacity"));
        }
        self.arcs.push(Arc { tail, head, capacity });
        Ok(self.arcs.len() - 1)
    }

    pub fn set_capacity(&mut self, arc: usize, capacity: Capacity) -> Result<()> {
        if capacity.finite().is_some_and(Rational::is_negative) {
            return Err(Error::NonPositive("arc capacity"));
        }
        self.arcs[arc].capacity = capacity;
        Ok(())
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Capacity of `δ⁺(S)` where `S = { v : side[v] }`.
    pub fn cut_capacity(&self, side: &[bool]) -> Capacity {
        let mut total = Rational::zero();
        for arc in &self.arcs {
            if side[arc.tail] && !side[arc.head] {
                match &arc.capacity {
                    Capacity::Finite(c) => total += c,
                    Capacity::Infinite => return Capacity::Infinite,
                }
            }
        }
        Capacity::Finite(total)
    }

    /// True when `t` is reachable from `s` through infinite arcs alone.
    fn has_infinite_path(&self) -> bool {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        for arc in self.arcs.iter().filter(|a| a.capacity.is_infinite()) {
            out[arc.tail].push(arc.head);
        }
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(u) = stack.pop() {
            if u == self.sink {
                return true;
            }
            for &v in &out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    fn is_terminal_arc(&self, arc: usize) -> bool {
        let a = &self.arcs[arc];
        [a.tail, a.head].iter().any(|&x| x == self.source || x == self.sink)
    }
}

/// A minimum s-t cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    side: Vec<bool>,
    capacity: Rational,
}

impl CutResult {
    /// Nodes on the source side, ascending. Always contains `s`, never `t`.
    pub fn source_side(&self) -> Vec<usize> {
        self.side.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.side[node]
    }

    pub fn side(&self) -> &[bool] {
        &self.side
    }

    pub fn capacity(&self) -> &Rational {
        &self.capacity
    }
}

/// Minimum s-t cut with the inclusion-minimal source side.
pub fn min_st_cut(net: &FlowNetwork) -> Result<CutResult> {
    if net.has_infinite_path() {
        return Err(Error::NoFiniteCut);
    }
    let scale = Rational::common_denominator(net.arcs.iter().filter_map(|a| a.capacity.finite()));
    let scaled: Vec<Option<BigInt>> = net
        .arcs
        .iter()
        .map(|a| a.capacity.finite().map(|c| c.numer() * (&scale / c.denom())))
        .collect();
    let total: BigInt = scaled.iter().flatten().sum();
    let infinite_from_source = net
        .arcs
        .iter()
        .filter(|a| a.tail == net.source && a.capacity.is_infinite())
        .count();
    // Every unit of excess ever created is bounded by this.
    let bound = &total * BigInt::from(infinite_from_source + 1);

    let (side, flow) = if bound.to_i64().is_some_and(|b| b <= i64::MAX / 4) {
        let caps: Vec<Option<i64>> = scaled
            .iter()
            .map(|c| c.as_ref().map(|c| c.to_i64().expect("checked bound")))
            .collect();
        let (side, flow) = PushRelabel::new(net, &caps, total.to_i64().expect("checked bound")).run();
        (side, BigInt::from(flow))
    } else {
        PushRelabel::new(net, &scaled, total).run()
    };

    let capacity = match net.cut_capacity(&side) {
        Capacity::Finite(c) => c,
        Capacity::Infinite => panic!("minimum cut crosses an infinite arc"),
    };
    assert_eq!(
        capacity,
        Rational::from_bigints(flow, scale),
        "max-flow value differs from min-cut capacity"
    );
    Ok(CutResult { side, capacity })
}

/// Holds a network whose source- and sink-adjacent arcs are revised between
/// solves, as in a parametric sequence. Every solve currently starts from
/// scratch; the session boundary is where a warm start would live.
#[derive(Clone, Debug)]
pub struct CutSession {
    network: FlowNetwork,
}

impl CutSession {
    pub fn new(template: FlowNetwork) -> Self {
        CutSession { network: template }
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    /// Revises one arc incident to `s` or `t`.
    pub fn update(&mut self, arc: usize, capacity: Capacity) -> Result<()> {
        if arc >= self.network.arcs.len() || !self.network.is_terminal_arc(arc) {
            return Err(Error::NotTerminalArc(arc));
        }
        self.network.set_capacity(arc, capacity)
    }

    pub fn solve(&self) -> Result<CutResult> {
        min_st_cut(&self.network)
    }
}

/// Solves the template, then applies each batch of revisions cumulatively
/// and solves again. The result has `updates.len() + 1` entries.
pub fn min_st_cut_sequence(
    template: &FlowNetwork,
    updates: &[Vec<(usize, Capacity)>],
) -> Vec<Result<CutResult>> {
    let mut session = CutSession::new(template.clone());
    let mut out = Vec::with_capacity(updates.len() + 1);
    out.push(session.solve());
    for batch in updates {
        let applied = batch
            .iter()
            .try_for_each(|(arc, cap)| session.update(*arc, cap.clone()));
        out.push(applied.and_then(|()| session.solve()));
    }
    out
}

trait FlowValue: Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {}
impl<T> FlowValue for T where T: Clone + Ord + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T> {}

struct PushRelabel<T> {
    n: usize,
    s: usize,
    t: usize,
    /// Half-arcs `2i` (forward) and `2i + 1` (reverse) of network arc `i`.
    head: Vec<usize>,
    res: Vec<T>,
    inf: Vec<bool>,
    start: Vec<usize>,
    adj: Vec<usize>,
    excess: Vec<T>,
    height: Vec<usize>,
    cur: Vec<usize>,
    push_bound: T,
}

impl<T: FlowValue> PushRelabel<T> {
    fn new(net: &FlowNetwork, caps: &[Option<T>], total: T) -> Self {
        let n = net.nodes;
        let mut head = Vec::with_capacity(2 * net.arcs.len());
        let mut res = Vec::with_capacity(2 * net.arcs.len());
        let mut inf = Vec::with_capacity(2 * net.arcs.len());
        let mut degree = vec![0usize; n + 1];
        for (arc, cap) in net.arcs.iter().zip(caps) {
            head.push(arc.head);
            head.push(arc.tail);
            res.push(cap.clone().unwrap_or_else(T::zero));
            res.push(T::zero());
            inf.push(cap.is_none());
            inf.push(false);
            if arc.tail != arc.head {
                degree[arc.tail] += 1;
                degree[arc.head] += 1;
            }
        }
        let mut start = vec![0usize; n + 1];
        for v in 0..n {
            start[v + 1] = start[v] + degree[v];
        }
        let mut fill = start.clone();
        let mut adj = vec![0usize; start[n]];
        for (i, arc) in net.arcs.iter().enumerate() {
            if arc.tail == arc.head {
                continue;
            }
            adj[fill[arc.tail]] = 2 * i;
            fill[arc.tail] += 1;
            adj[fill[arc.head]] = 2 * i + 1;
            fill[arc.head] += 1;
        }
        PushRelabel {
            n,
            s: net.source,
            t: net.sink,
            head,
            res,
            inf,
            cur: start[..n].to_vec(),
            start,
            adj,
            excess: vec![T::zero(); n],
            height: vec![0; n],
            push_bound: total,
        }
    }

    fn has_residual(&self, a: usize) -> bool {
        self.inf[a] || !self.res[a].is_zero()
    }

    fn push(&mut self, a: usize, amount: &T) {
        let v = self.head[a];
        let u = self.head[a ^ 1];
        if !self.inf[a] {
            self.res[a] -= amount;
        }
        self.res[a ^ 1] += amount;
        self.excess[u] -= amount;
        self.excess[v] += amount;
    }

    /// Breadth-first distances to `target` in the residual graph; `None`
    /// where `target` is unreachable.
    fn distances_to(&self, target: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[target] = Some(0);
        let mut queue = VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued nodes have a distance");
            for &a in &self.adj[self.start[v]..self.start[v + 1]] {
                // `a` leaves v; its twin enters v from head[a].
                let u = self.head[a];
                if dist[u].is_none() && self.has_residual(a ^ 1) {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    fn run(mut self) -> (Vec<bool>, T) {
        self.maximum_preflow();
        self.return_excess();
        let side = self.reachable_from_source();
        debug_assert!(!side[self.t]);
        (side, self.excess[self.t].clone())
    }

    fn maximum_preflow(&mut self) {
        let n = self.n;
        let dist = self.distances_to(self.t);
        for (h, d) in self.height.iter_mut().zip(&dist) {
            *h = d.map_or(n, |d| d.min(n));
        }
        self.height[self.s] = n;

        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut count = vec![0usize; n + 1];
        for v in 0..n {
            if v != self.s {
                count[self.height[v]] += 1;
            }
        }

        let s = self.s;
        for i in self.start[s]..self.start[s + 1] {
            let a = self.adj[i];
            let amount = if self.inf[a] { self.push_bound.clone() } else { self.res[a].clone() };
            if amount.is_zero() {
                continue;
            }
            let v = self.head[a];
            let was_idle = self.excess[v].is_zero();
            self.push(a, &amount);
            if was_idle && v != self.t && v != s && self.height[v] < n {
                buckets[self.height[v]].push(v);
            }
        }

        let mut highest = n.saturating_sub(1);
        loop {
            while highest > 0 && buckets[highest].is_empty() {
                highest -= 1;
            }
            let Some(u) = buckets[highest].pop() else { break };
            if self.excess[u].is_zero() || self.height[u] != highest {
                continue;
            }
            self.discharge(u, &mut buckets, &mut count, &mut highest);
        }
    }

    fn discharge(&mut self, u: usize, buckets: &mut [Vec<usize>], count: &mut [usize], highest: &mut usize) {
        let n = self.n;
        while !self.excess[u].is_zero() {
            if self.cur[u] == self.start[u + 1] {
                let old = self.height[u];
                let relabeled = self.adj[self.start[u]..self.start[u + 1]]
                    .iter()
                    .filter(|&&a| self.has_residual(a))
                    .map(|&a| self.height[self.head[a]] + 1)
                    .min()
                    .unwrap_or(n)
                    .min(n);
                count[old] -= 1;
                if count[old] == 0 {
                    // Gap: nothing above `old` can reach the sink any more.
                    for v in 0..n {
                        if v != self.s && self.height[v] > old && self.height[v] < n {
                            count[self.height[v]] -= 1;
                            self.height[v] = n;
                            count[n] += 1;
                        }
                    }
                    self.height[u] = n;
                    count[n] += 1;
                    return;
                }
                self.height[u] = relabeled;
                count[relabeled] += 1;
                self.cur[u] = self.start[u];
                if relabeled >= n {
                    return;
                }
                continue;
            }
            let a = self.adj[self.cur[u]];
            let v = self.head[a];
            if self.has_residual(a) && self.height[u] == self.height[v] + 1 {
                let amount = if self.inf[a] || self.excess[u] <= self.res[a] {
                    self.excess[u].clone()
                } else {
                    self.res[a].clone()
                };
                let was_idle = self.excess[v].is_zero();
                self.push(a, &amount);
                if was_idle && v != self.t && v != self.s {
                    buckets[self.height[v]].push(v);
                    *highest = (*highest).max(self.height[v]);
                }
            } else {
                self.cur[u] += 1;
            }
        }
    }

    /// Turns the maximum preflow into a maximum flow by sending every unit of
    /// stranded excess back to the source (plain FIFO push-relabel toward `s`).
    fn return_excess(&mut self) {
        let (s, t) = (self.s, self.t);
        let mut queue: VecDeque<usize> = (0..self.n)
            .filter(|&v| v != s && v != t && !self.excess[v].is_zero())
            .collect();
        if queue.is_empty() {
            return;
        }
        let dist = self.distances_to(s);
        let unreachable = 2 * self.n + 1;
        for (h, d) in self.height.iter_mut().zip(&dist) {
            *h = d.unwrap_or(unreachable);
        }
        self.cur.copy_from_slice(&self.start[..self.n]);
        // The sink must never take part: no stranded node can reach it.
        self.height[t] = usize::MAX / 2;
        while let Some(u) = queue.pop_front() {
            while !self.excess[u].is_zero() {
                if self.cur[u] == self.start[u + 1] {
                    self.height[u] = self.adj[self.start[u]..self.start[u + 1]]
                        .iter()
                        .filter(|&&a| self.has_residual(a) && self.head[a] != t)
                        .map(|&a| self.height[self.head[a]] + 1)
                        .min()
                        .expect("stranded excess can always return to the source");
                    self.cur[u] = self.start[u];
                    continue;
                }
                let a = self.adj[self.cur[u]];
                let v = self.head[a];
                if v != t && self.has_residual(a) && self.height[u] == self.height[v] + 1 {
                    let amount = if self.inf[a] || self.excess[u] <= self.res[a] {
                        self.excess[u].clone()
                    } else {
                        self.res[a].clone()
                    };
                    let was_idle = self.excess[v].is_zero();
                    self.push(a, &amount);
                    if was_idle && v != s {
                        queue.push_back(v);
                    }
                } else {
                    self.cur[u] += 1;
                }
            }
        }
    }

    fn reachable_from_source(&self) -> Vec<bool> {
        let mut side = vec![false; self.n];
        side[self.s] = true;
        let mut stack = vec![self.s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[self.start[u]..self.start[u + 1]] {
                let v = self.head[a];
                if !side[v] && self.has_residual(a) {
                    side[v] = true;
                    stack.push(v);
                }
            }
        }
        side
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(p: i64) -> Capacity {
        Capacity::Finite(Rational::from(p))
    }

    fn path(c1: Capacity, c2: Capacity) -> FlowNetwork {
        // nodes: s = 0, a = 1, t = 2
        let mut net = FlowNetwork::new(3, 0, 2).unwrap();
        net.add_arc(0, 1, c1).unwrap();
        net.add_arc(1, 2, c2).unwrap();
        net
    }

    #[test]
    fn bottleneck_examples() {
        let cut = min_st_cut(&path(fin(1), fin(2))).unwrap();
        assert_eq!(cut.capacity(), &Rational::from(1));
        assert_eq!(cut.source_side(), vec![0]);

        let cut = min_st_cut(&path(fin(3), fin(2))).unwrap();
        assert_eq!(cut.capacity(), &Rational::from(2));
        assert_eq!(cut.source_side(), vec![0, 1]);
    }

    #[test]
    fn infinite_path_has_no_finite_cut() {
        assert_eq!(
            min_st_cut(&path(Capacity::Infinite, Capacity::Infinite)),
            Err(Error::NoFiniteCut)
        );
    }

    #[test]
    fn infinite_source_arc_is_symbolic() {
        let cut = min_st_cut(&path(Capacity::Infinite, Capacity::Finite(Rational::new(5, 3)))).unwrap();
        assert_eq!(cut.capacity(), &Rational::new(5, 3));
        assert_eq!(cut.source_side(), vec![0, 1]);
    }

    #[test]
    fn minimal_source_side_on_ties() {
        // s->a 1, a->t 1: both {s} and {s,a} are minimum; minimal is {s}.
        let cut = min_st_cut(&path(fin(1), fin(1))).unwrap();
        assert_eq!(cut.source_side(), vec![0]);
        // zero capacities everywhere
        let cut = min_st_cut(&path(fin(0), fin(0))).unwrap();
        assert_eq!(cut.source_side(), vec![0]);
        assert!(cut.capacity().is_zero());
    }

    #[test]
    fn network_validation() {
        assert_eq!(FlowNetwork::new(2, 1, 1), Err(Error::SourceIsSink));
        assert_eq!(FlowNetwork::new(2, 0, 2), Err(Error::NodeOutOfRange { node: 2, nodes: 2 }));
        let mut net = FlowNetwork::new(2, 0, 1).unwrap();
        assert!(net.add_arc(0, 1, fin(-1)).is_err());
        assert!(net.add_arc(0, 3, fin(1)).is_err());
    }

    #[test]
    fn big_capacities_use_the_bigint_path() {
        let huge = Rational::from_integer(BigInt::from(10u32).pow(30));
        let cut = min_st_cut(&path(Capacity::Finite(huge.clone()), Capacity::Finite(huge.clone() + Rational::one()))).unwrap();
        assert_eq!(cut.capacity(), &huge);
        assert_eq!(cut.source_side(), vec![0]);
    }

    #[test]
    fn sequence_examples() {
        let template = path(fin(1), fin(2));
        let same = min_st_cut_sequence(&template, &[vec![(0, fin(1))]]);
        assert_eq!(same[0], same[1]);

        let caps: Vec<Rational> = min_st_cut_sequence(&template, &[vec![(0, fin(3))]])
            .into_iter()
            .map(|r| r.unwrap().capacity().clone())
            .collect();
        assert_eq!(caps, vec![Rational::from(1), Rational::from(2)]);
    }

    #[test]
    fn sequence_rejects_interior_arcs() {
        let mut net = FlowNetwork::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, fin(1)).unwrap();
        net.add_arc(1, 2, fin(1)).unwrap();
        net.add_arc(2, 3, fin(1)).unwrap();
        let out = min_st_cut_sequence(&net, &[vec![(1, fin(5))]]);
        assert!(out[0].is_ok());
        assert_eq!(out[1], Err(Error::NotTerminalArc(1)));
    }
}
