//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! All comparisons are exact rational equality; time limits are wall clock.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{components, graph, hypergraph, integers, loopless, mask_ids, rationals, rng};
use hypermat_core::brute::{
    brute_arboricity, brute_forest_cover, brute_hyperforest, brute_independence_table, brute_max_weight_forest,
    brute_min_partition, brute_rank, brute_rank_table, brute_reinforce, brute_strength, BruteReinforcement,
};
use hypermat_core::reinforcement::{check_certificate, reinforce_with, ReinforceOptions};
use hypermat_core::*;
use num_bigint::BigInt;
use rand::Rng;

const BETAS: [(i64, i64); 4] = [(1, 1), (3, 2), (2, 1), (3, 1)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn complete(n: usize) -> Hypergraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push(vec![a, b]);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}

fn h0() -> Hypergraph {
    Hypergraph::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap()
}

fn partition_oracle() -> Outcome {
    let start = Instant::now();
    for i in 0..200u64 {
        let mut r = rng(1000 + i);
        let (n, m) = (r.gen_range(1..=6), r.gen_range(0..=8));
        let h = hypergraph(&mut r, n, m, (1, 4));
        let x = rationals(&mut r, m, 4, 0, 2, Role::Point);
        let (p, q) = BETAS[r.gen_range(0..BETAS.len())];
        let beta = Rational::new(p, q);
        let got = min_partition(&h, &h.all_edges(), &x, &beta).map_err(|e| e.to_string())?;
        let (want, _) = brute_min_partition(&h, &h.all_edges(), &x, &beta).map_err(|e| e.to_string())?;
        check(got.value == want, || format!("instance {i}: oracle {} vs enumeration {want}", got.value))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("200 instances equal, {:.2?}", start.elapsed()))
}

fn rank_independence() -> Outcome {
    let start = Instant::now();
    for i in 0..200u64 {
        let mut r = rng(2000 + i);
        let (n, m) = (r.gen_range(1..=6), r.gen_range(0..=10));
        let h = hypergraph(&mut r, n, m, (1, 4));
        let f: Vec<EdgeId> = h.edge_ids().filter(|_| r.gen_bool(0.7)).collect();
        let got = rank(&h, &f).map_err(|e| e.to_string())?.rank;
        let want = brute_rank(&h, &f).map_err(|e| e.to_string())?;
        check(got == want, || format!("instance {i}: rank {got} vs {want}"))?;
        let ind = is_independent(&h, &f).map_err(|e| e.to_string())?;
        let forest = brute_hyperforest(&h, &f).map_err(|e| e.to_string())?;
        check(ind == forest, || format!("instance {i}: independence {ind} vs {forest}"))?;
    }
    let mut checked = 0usize;
    for i in 0..30u64 {
        let mut r = rng(2500 + i);
        let (n, m) = (r.gen_range(2..=6), r.gen_range(1..=8));
        let h = hypergraph(&mut r, n, m, (1, 4));
        let indep: Vec<bool> = (0usize..1 << m).map(|s| is_independent(&h, &mask_ids(s, m)).unwrap()).collect();
        check(indep == brute_independence_table(&h).unwrap(), || format!("axioms {i}: table differs"))?;
        for s in (0..1usize << m).filter(|&s| indep[s]) {
            for e in (0..m).filter(|e| s >> e & 1 == 1) {
                check(indep[s & !(1 << e)], || format!("axioms {i}: hereditary fails at {s:b}"))?;
            }
            for t in (0..1usize << m).filter(|&t| indep[t] && t.count_ones() > s.count_ones()) {
                let ok = (0..m).any(|e| t >> e & 1 == 1 && s >> e & 1 == 0 && indep[s | 1 << e]);
                check(ok, || format!("axioms {i}: exchange fails for {s:b}, {t:b}"))?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("200 ranks equal, axioms hold on 30 matroids ({checked} exchange pairs), {:.2?}", start.elapsed()))
}

fn greedy() -> Outcome {
    let start = Instant::now();
    for i in 0..100u64 {
        let mut r = rng(3000 + i);
        let (n, m) = (r.gen_range(1..=7), r.gen_range(0..=12));
        let h = hypergraph(&mut r, n, m, (1, 4));
        let w = rationals(&mut r, m, 3, 0, 5, Role::Weight);
        let (forest, weight) = max_weight_hyperforest(&h, &w).map_err(|e| e.to_string())?;
        check(brute_hyperforest(&h, &forest).unwrap(), || format!("instance {i}: greedy output is dependent"))?;
        let best = brute_max_weight_forest(&h, &w).map_err(|e| e.to_string())?;
        check(weight == best, || format!("instance {i}: greedy {weight} vs {best}"))?;
    }
    Ok(format!("100 instances equal, {:.2?}", start.elapsed()))
}

fn separation() -> Outcome {
    let start = Instant::now();
    let (mut inside, mut violated) = (0, 0);
    for i in 0..200u64 {
        let mut r = rng(4000 + i);
        let (n, m) = (r.gen_range(1..=6), r.gen_range(0..=10));
        let h = hypergraph(&mut r, n, m, (1, 4));
        let x = rationals(&mut r, m, 4, 0, 1, Role::Point);
        let ranks = brute_rank_table(&h).map_err(|e| e.to_string())?;
        let holds_all = (0..1usize << m).all(|s| x.sum_over(&mask_ids(s, m)) <= Rational::from(ranks[s]));
        match separate_polytope(&h, &x).map_err(|e| e.to_string())? {
            SeparationOutcome::InPolytope => {
                check(holds_all, || format!("instance {i}: InPolytope but a rank inequality fails"))?;
                inside += 1;
            }
            SeparationOutcome::Violated(v) => {
                let s = v.edges.iter().fold(0usize, |acc, e| acc | 1 << e.0);
                check(x.sum_over(&v.edges) == v.lhs && v.lhs > Rational::from(v.rhs), || {
                    format!("instance {i}: returned inequality is not violated")
                })?;
                check(v.lhs > Rational::from(ranks[s]), || format!("instance {i}: x(S) ≤ r(S)"))?;
                check(!holds_all, || format!("instance {i}: Violated but x is in the polytope"))?;
                violated += 1;
            }
            other => return Err(format!("instance {i}: unexpected {other:?}")),
        }
    }
    Ok(format!("{inside} inside, {violated} violated, all confirmed, {:.2?}", start.elapsed()))
}

fn strength_criterion() -> Outcome {
    let start = Instant::now();
    let fixed = [
        (complete(3), Rational::new(3, 2)),
        (complete(4), Rational::from(2)),
        (h0(), Rational::one()),
    ];
    for (h, want) in &fixed {
        let s = strength(h, &EdgeVector::ones(Role::Capacity, h.m())).map_err(|e| e.to_string())?;
        check(s.sigma == *want, || format!("fixed instance: {} vs {want}", s.sigma))?;
    }
    let mut worst = 0usize;
    for i in 0..100u64 {
        let mut r = rng(5000 + i);
        let (n, m) = (r.gen_range(2..=7), r.gen_range(0..=12));
        let h = hypergraph(&mut r, n, m, (1, 4));
        let c = rationals(&mut r, m, 3, 0, 4, Role::Capacity);
        let s = strength(&h, &c).map_err(|e| e.to_string())?;
        let want = brute_strength(&h, &c).map_err(|e| e.to_string())?;
        check(s.sigma == want, || format!("instance {i}: {} vs {want}", s.sigma))?;
        check(s.iterations <= n, || format!("instance {i}: {} iterations on {n} vertices", s.iterations))?;
        worst = worst.max(s.iterations);
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("K3, K4, H0 fixed; 100 instances equal; max {worst} iterations, {:.2?}", start.elapsed()))
}

fn ceil(r: &Rational) -> BigInt {
    r.ceil()
}

fn arboricity_criterion() -> Outcome {
    let start = Instant::now();
    let single = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
    for (h, want) in [(complete(3), 2), (h0(), 1), (single, 1)] {
        let a = arboricity(&h).map_err(|e| e.to_string())?;
        check(a.k == BigInt::from(want), || format!("fixed instance: {} vs {want}", a.k))?;
    }
    for i in 0..100u64 {
        let mut r = rng(6000 + i);
        let (n, m) = (r.gen_range(2..=10), r.gen_range(0..=14));
        let h = loopless(&mut r, n, m, 4);
        let a = arboricity(&h).map_err(|e| e.to_string())?;
        let want = brute_arboricity(&h).map_err(|e| e.to_string())?;
        check(a.k == ceil(&want), || format!("instance {i}: {} vs ⌈{want}⌉", a.k))?;
        check(a.rho == want, || format!("instance {i}: density {} vs {want}", a.rho))?;
        if m <= 12 && m > 0 {
            let cover = brute_forest_cover(&h).map_err(|e| e.to_string())?;
            check(a.k == BigInt::from(cover), || format!("instance {i}: {} vs forest cover {cover}", a.k))?;
        }
    }
    // Nash-Williams on connected graphs, the formula evaluated over vertex subsets
    let mut graphs = 0;
    for i in 0..200u64 {
        let mut r = rng(6500 + i);
        let (n, m) = (r.gen_range(2..=9), r.gen_range(1..=16));
        let h = graph(&mut r, n, m);
        if components(&h, &h.all_edges()) != 1 {
            continue;
        }
        graphs += 1;
        let mut formula = 0i64;
        for w in 1u32..1 << n {
            let size = w.count_ones() as i64;
            if size < 2 {
                continue;
            }
            let inside = h.edges().iter().filter(|e| e.vertices().iter().all(|v| w >> v.0 & 1 == 1)).count() as i64;
            formula = formula.max((inside + size - 2) / (size - 1));
        }
        let a = arboricity(&h).map_err(|e| e.to_string())?;
        check(a.k == BigInt::from(formula), || format!("graph {i}: {} vs Nash-Williams {formula}", a.k))?;
    }
    Ok(format!("K3, H0, triple fixed; 100 instances equal; {graphs} connected graphs match, {:.2?}", start.elapsed()))
}

fn kruskal(h: &Hypergraph, d: &EdgeVector) -> Option<Rational> {
    let mut order = h.all_edges();
    order.sort_by(|a, b| d.get(*a).cmp(d.get(*b)));
    let mut parent: Vec<usize> = (0..h.n()).collect();
    fn find(p: &mut [usize], a: usize) -> usize {
        let mut a = a;
        while p[a] != a {
            a = p[a];
        }
        a
    }
    let (mut cost, mut used) = (Rational::zero(), 0);
    for e in order {
        let vs = h.edge(e).vertices();
        let (a, b) = (find(&mut parent, vs[0].0), find(&mut parent, vs[1].0));
        if a != b {
            parent[a] = b;
            cost += d.get(e);
            used += 1;
        }
    }
    (used + 1 == h.n()).then_some(cost)
}

fn reinforcement_criterion() -> Outcome {
    let start = Instant::now();
    let got = reinforce(
        &h0(),
        1,
        &EdgeVector::from_integers(Role::Cost, &[1, 2]).unwrap(),
        &EdgeVector::from_integers(Role::Bound, &[2, 2]).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    check(
        got.status == Status::Optimal
            && got.cost == Rational::from(2)
            && got.x.values() == [Rational::from(2), Rational::zero()],
        || format!("H0 instance: {:?} cost {} x {:?}", got.status, got.cost, got.x.values()),
    )?;
    let (mut optimal, mut infeasible) = (0, 0);
    for i in 0..100u64 {
        let mut r = rng(7000 + i);
        let (n, m, k) = (r.gen_range(1..=5), r.gen_range(0..=6), r.gen_range(1..=2));
        let h = hypergraph(&mut r, n, m, (1, 4));
        let d = integers(&mut r, m, 0, 5, Role::Cost);
        let u: Vec<u64> = (0..m).map(|_| r.gen_range(0..=2)).collect();
        let bounds: Vec<UpperBound> = u.iter().map(|&b| UpperBound::Finite(Rational::from(b))).collect();
        let got = reinforce_with(&h, k, &d, &bounds, &ReinforceOptions::default()).map_err(|e| e.to_string())?;
        match brute_reinforce(&h, k, &d, &u).map_err(|e| e.to_string())? {
            BruteReinforcement::Infeasible => {
                check(got.status == Status::Infeasible, || format!("instance {i}: expected infeasible"))?;
                infeasible += 1;
            }
            BruteReinforcement::Optimal { cost, .. } => {
                check(got.status == Status::Optimal, || format!("instance {i}: expected optimal"))?;
                check(got.cost == cost, || format!("instance {i}: cost {} vs {cost}", got.cost))?;
                check(got.x.values().iter().all(Rational::is_integer), || format!("instance {i}: fractional x"))?;
                check_certificate(&h, k, &d, &got).map_err(|e| format!("instance {i}: {e}"))?;
                optimal += 1;
            }
        }
    }
    let mut trees = 0;
    for i in 0..100u64 {
        let mut r = rng(7500 + i);
        let (n, m) = (r.gen_range(2..=9), r.gen_range(1..=20));
        let h = graph(&mut r, n, m);
        let d = integers(&mut r, m, 0, 20, Role::Cost);
        let got = reinforce_with(&h, 1, &d, &vec![UpperBound::Unbounded; m], &ReinforceOptions::default())
            .map_err(|e| e.to_string())?;
        match kruskal(&h, &d) {
            Some(cost) => {
                check(got.cost == cost, || format!("graph {i}: cost {} vs spanning tree {cost}", got.cost))?;
                trees += 1;
            }
            None => check(got.status == Status::Infeasible, || format!("graph {i}: disconnected but feasible"))?,
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "H0 gives x=(2,0) cost 2; {optimal} optimal + {infeasible} infeasible agree; {trees} spanning-tree costs match, {:.2?}",
        start.elapsed()
    ))
}

fn integrality() -> Outcome {
    let start = Instant::now();
    let mut optimal = 0;
    for i in 0..50u64 {
        let mut r = rng(8000 + i);
        let (n, m, k) = (r.gen_range(3..=14), r.gen_range(5..=40), r.gen_range(1..=3));
        let h = hypergraph(&mut r, n, m, (2, 5));
        let d = rationals(&mut r, m, 4, 0, 9, Role::Cost);
        let bounds: Vec<UpperBound> = (0..m).map(|_| UpperBound::Finite(Rational::from(r.gen_range(0..=4)))).collect();
        let got = reinforce_with(&h, k, &d, &bounds, &ReinforceOptions::default()).map_err(|e| e.to_string())?;
        if got.status == Status::Optimal {
            check(got.x.values().iter().all(Rational::is_integer), || format!("instance {i}: fractional optimum"))?;
            check_certificate(&h, k, &d, &got).map_err(|e| format!("instance {i}: {e}"))?;
            optimal += 1;
        }
    }
    check(optimal >= 25, || format!("only {optimal} feasible instances"))?;
    Ok(format!("{optimal}/50 feasible optima integral and certified, {:.2?}", start.elapsed()))
}

fn scale() -> Outcome {
    const LIMIT: Duration = Duration::from_secs(60);
    let mut r = rng(9000);
    let (n, m) = (200, 1000);
    let h = loopless(&mut r, n, m, 6);
    let all = h.all_edges();
    let x = rationals(&mut r, m, 4, 0, 1, Role::Point);
    let w = rationals(&mut r, m, 4, 0, 10, Role::Weight);
    let d = integers(&mut r, m, 0, 10, Role::Cost);
    let u = integers(&mut r, m, 1, 3, Role::Bound);
    let half: Vec<EdgeId> = all.iter().copied().filter(|e| e.0 % 2 == 0).collect();
    let mut report = Vec::new();
    let mut time = |name: &str, f: &mut dyn FnMut() -> Result<String, Error>| -> Result<(), String> {
        let start = Instant::now();
        let note = f().map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        check(took <= LIMIT, || format!("{name} took {took:.2?}"))?;
        report.push(format!("{name} {took:.1?} ({note})"));
        Ok(())
    };
    time("min_partition", &mut || {
        min_partition(&h, &all, &x, &Rational::new(3, 2)).map(|p| format!("{} blocks", p.partition.len()))
    })?;
    time("rank", &mut || rank(&h, &all).map(|r| r.rank.to_string()))?;
    time("is_independent", &mut || is_independent(&h, &half[..150]).map(|b| b.to_string()))?;
    time("incremental", &mut || independence_test_incremental(&h, &half[..150], EdgeId(1)).map(|b| b.to_string()))?;
    time("maxforest", &mut || max_weight_hyperforest(&h, &w).map(|(f, _)| format!("{} edges", f.len())))?;
    time("separate", &mut || separate_polytope(&h, &x).map(|s| if s.is_in_polytope() { "in" } else { "out" }.into()))?;
    time("strength", &mut || strength(&h, &EdgeVector::ones(Role::Capacity, m)).map(|s| s.sigma.to_string()))?;
    time("arboricity", &mut || arboricity(&h).map(|a| a.rho.to_string()))?;
    time("reinforce", &mut || reinforce(&h, 2, &d, &u).map(|r| format!("{:?} cost {}", r.status, r.cost)))?;
    Ok(report.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("partition oracle equals enumeration", partition_oracle),
        ("rank, independence and matroid axioms", rank_independence),
        ("greedy maximum-weight hyperforest", greedy),
        ("polytope separation sound and complete", separation),
        ("strength", strength_criterion),
        ("arboricity", arboricity_criterion),
        ("reinforcement", reinforcement_criterion),
        ("integral reinforcement optima", integrality),
        ("scale n=200 m=1000", scale),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
