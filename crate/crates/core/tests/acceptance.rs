//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use noncomm_core::calculus::{check_green, check_summation_by_parts, laplacian_at};
use noncomm_core::graph::{diameter, is_connected, Distance};
use noncomm_core::group::catalog;
use noncomm_core::inequalities::{
    check_dagger, check_double_dagger, dyadic_decompose, empirical_b, exponent_identities,
    holder_step_check, p_from_n, random_function, sobolev_from_nash_factor, truncation,
};
use noncomm_core::isoperimetry::{
    check_p, constant_c, edge_total_check, nu, verify_isoperimetric, ConstantVariant, PParams,
    ScanMode,
};
use noncomm_core::{noncommuting_graph, Subset, VertexFunction, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rounding slack used by every inequality check.
const SLACK: f64 = 1e-12;

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn holds(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + SLACK * (1.0 + rhs.abs())
}

fn catalog_graphs() -> Vec<(String, WeightedGraph)> {
    catalog(32)
        .into_iter()
        .map(|spec| {
            let g = noncommuting_graph(&spec.build(32).unwrap()).unwrap();
            (spec.to_string(), g)
        })
        .collect()
}

fn random_graphs(count: usize, seed: u64) -> Vec<WeightedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(3..=12);
            common::random_weighted_graph(n, 0.35, &mut rng)
        })
        .collect()
}

fn random_subset(n: usize, rng: &mut impl Rng) -> Subset {
    Subset::from_indices(n, (0..n).filter(|_| rng.random_bool(0.5)))
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let g = noncommuting_graph(&noncomm_core::build_group("Q8").unwrap()).unwrap();
    o.check(g.vertex_count() == 6, || {
        format!("|V| = {}", g.vertex_count())
    });
    o.check(g.edge_count() == 12, || format!("|E| = {}", g.edge_count()));
    o.check((0..6).all(|x| g.degree(x) == 4), || "not 4-regular".into());
    o.check(is_connected(&g), || "disconnected".into());
    o.check(diameter(&g) == Distance::Finite(2), || {
        format!("diameter {:?}", diameter(&g))
    });
    let nu2 = nu(&g, 2.0).unwrap();
    o.check(nu2 == 4.0, || format!("ν₂ = {nu2}"));
    let c = constant_c(
        g.min_vertex_weight(),
        1.0,
        nu2,
        1.0,
        nu2,
        ConstantVariant::GammaG,
    )
    .unwrap();
    let expected = 4f64.powf(0.75) / (4f64.powi(8) * 8f64.exp());
    let rel = ((c - expected) / expected).abs();
    o.check(rel <= 1e-15, || {
        format!("c = {c:e}, expected {expected:e}, rel err {rel:e}")
    });
    let total = edge_total_check(&g, c, nu2);
    o.check(total.holds && total.lhs == 12.0, || {
        format!("12 ≥ c·24^(3/4) check: {total:?}")
    });
    o.detail = format!(
        "|V|=6 |E|=12 diam=2 ν₂=4 c={c:.6e} (rel err {rel:.1e}); 12 ≥ {:.3e}",
        total.rhs
    );
    o
}

fn criterion_2(graphs: &[(String, WeightedGraph)]) -> Outcome {
    let mut o = Outcome::new();
    let mut potentials = std::collections::BTreeSet::new();
    for (name, g) in graphs {
        let cert = check_p(g, PParams::new(1.0, 1.0, 1.0), None).unwrap();
        let oracle = common::nu_oracle(g, 2);
        let min_deg = g.min_degree() as f64;
        o.check(cert.passed, || format!("{name}: P(1,1,1) failed"));
        o.check(cert.n == Some(oracle) && oracle == min_deg, || {
            format!(
                "{name}: n = {:?}, oracle ν₂ = {oracle}, min degree = {min_deg}",
                cert.n
            )
        });
        potentials.insert(cert.potential.clone());
    }
    o.detail = format!(
        "{} groups; n = ν₂ = min degree in each; potential(s) used: {}",
        graphs.len(),
        potentials.into_iter().collect::<Vec<_>>().join(", ")
    );
    o
}

fn criterion_3(graphs: &[(String, WeightedGraph)]) -> Outcome {
    let mut o = Outcome::new();
    let mut subsets = 0u64;
    let mut scanned = 0;
    for (name, g) in graphs.iter().filter(|(_, g)| g.vertex_count() <= 16) {
        let nu2 = nu(g, 2.0).unwrap();
        let c = constant_c(
            g.min_vertex_weight(),
            1.0,
            nu2,
            1.0,
            nu2,
            ConstantVariant::GammaG,
        )
        .unwrap();
        let report = verify_isoperimetric(g, c, nu2, ScanMode::Exhaustive).unwrap();
        let expected = (1u64 << g.vertex_count()) - 2;
        o.check(report.subsets_checked == expected, || {
            format!("{name}: checked {} of {expected}", report.subsets_checked)
        });
        o.check(report.violation_count == 0, || {
            format!("{name}: {} violations", report.violation_count)
        });
        subsets += report.subsets_checked;
        scanned += 1;
    }
    o.detail = format!("{scanned} graphs with |V| ≤ 16, {subsets} subsets, 0 violations expected");
    o
}

fn criterion_4(graphs: &[(String, WeightedGraph)]) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut all: Vec<(String, WeightedGraph)> = graphs.to_vec();
    all.extend(
        random_graphs(10, 44)
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("random#{i}"), g)),
    );
    let mut worst: f64 = 0.0;
    for (name, g) in &all {
        let n = g.vertex_count();
        for trial in 0..100 {
            let f = random_function(n, &mut rng);
            let h = random_function(n, &mut rng);
            let omega = random_subset(n, &mut rng);
            let green = check_green(g, &f, &omega).unwrap();
            let sbp = check_summation_by_parts(g, &f, &h).unwrap();
            worst = worst
                .max(green.residual / (1.0 + green.scale))
                .max(sbp.residual / (1.0 + sbp.scale));
            o.check(green.within(SLACK), || {
                format!("{name} trial {trial}: Green residual {:e}", green.residual)
            });
            o.check(sbp.within(SLACK), || {
                format!("{name} trial {trial}: SBP residual {:e}", sbp.residual)
            });
            let (mut total, mut scale) = (0.0, 0.0);
            for x in 0..n {
                if let Some(d) = laplacian_at(g, &f, x) {
                    total += d * g.mu(x);
                    scale += (d * g.mu(x)).abs();
                }
            }
            o.check(total.abs() <= SLACK * (1.0 + scale), || {
                format!("{name} trial {trial}: Σ Δf μ = {total:e}")
            });
        }
    }
    o.detail = format!(
        "{} graphs × 100 trials; worst scaled residual {worst:.2e}",
        all.len()
    );
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs = random_graphs(20, 55);
    let mut checked = 0;
    for (gi, g) in graphs.iter().enumerate() {
        for _ in 0..50 {
            let n = rng.random_range(2.5..=10.0);
            let p = p_from_n(n).unwrap();
            let f = random_function(g.vertex_count(), &mut rng);
            let h = holder_step_check(g, &f, p).unwrap();
            o.check(h.holds, || {
                format!("graph {gi}, n = {n}: {} > {}", h.lhs, h.rhs)
            });
            checked += 1;
        }
    }
    for n in [2.5, 3.0, 4.0, 10.0, 100.0] {
        let (a, b) = exponent_identities(n).unwrap();
        o.check(
            (a - 1.0).abs() <= 1e-12 && (b - 4.0 / n).abs() <= 1e-12,
            || format!("exponent identities at n = {n}: ({a}, {b})"),
        );
    }
    o.detail =
        format!("{checked} Hölder checks on 20 graphs; identities at n ∈ {{2.5, 3, 4, 10, 100}}");
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let graphs = random_graphs(10, 66);
    let mut pairs = 0u64;
    for trial in 0..200 {
        let g = &graphs[trial % graphs.len()];
        let n = g.vertex_count();
        let f = random_function(n, &mut rng);
        let d = dyadic_decompose(g, &f, 4.0).unwrap();
        let Some((lo, hi)) = d.k_range else { continue };
        for k in lo - 2..=hi + 2 {
            let fk = truncation(&f, k);
            for x in 0..n {
                for y in 0..n {
                    pairs += 1;
                    o.check(
                        (fk.get(y) - fk.get(x)).abs() <= (f.get(y) - f.get(x)).abs(),
                        || format!("trial {trial}, k = {k}: contraction fails at ({x}, {y})"),
                    );
                }
            }
        }
        for l in &d.levels {
            let covered = l.u.len() + l.v.len() + l.w.len() == n
                && l.u.is_disjoint(&l.v)
                && l.u.is_disjoint(&l.w)
                && l.v.is_disjoint(&l.w);
            o.check(covered, || {
                format!("trial {trial}, k = {}: U, V, W do not partition", l.k)
            });
        }
        for w in d.levels.windows(2) {
            o.check(w[1].w.is_subset_of(&w[0].w), || {
                format!("trial {trial}: W not nested at k = {}", w[1].k)
            });
        }
    }
    o.detail = format!("200 functions, {pairs} (pair, level) contractions checked exactly");
    o
}

fn criterion_7(graphs: &[(String, WeightedGraph)]) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut evaluated = 0;
    let mut tightest: f64 = 0.0;
    for (name, g) in graphs.iter().filter(|(_, g)| g.vertex_count() <= 16) {
        let n = nu(g, 2.0).unwrap();
        let p = p_from_n(n).unwrap();
        for trial in 0..50 {
            let f = random_function(g.vertex_count(), &mut rng);
            let d = dyadic_decompose(g, &f, n).unwrap();
            let mut family: Vec<VertexFunction> = vec![f.clone()];
            family.extend(d.levels.iter().map(|l| l.f_k.clone()));
            let b = empirical_b(g, &family, n).unwrap().value;
            let a = sobolev_from_nash_factor(p) * b;
            let dagger = check_dagger(g, &f, n, a).unwrap();
            o.check(dagger.holds, || {
                format!(
                    "{name} trial {trial}: assembled Sobolev form fails, {} > {}",
                    dagger.lhs, dagger.rhs
                )
            });
            if let Some(r) = dagger.ratio {
                tightest = tightest.max(r);
            }
            // Smallest A for which the Sobolev form holds on f, reused as B.
            let probe = check_dagger(g, &f, n, 1.0).unwrap();
            if probe.rhs > 0.0 {
                let a_min = probe.lhs / probe.rhs;
                let nash = check_double_dagger(g, &f, n, a_min).unwrap();
                o.check(holds(nash.lhs, nash.rhs), || {
                    format!(
                        "{name} trial {trial}: Nash form with B = A fails, {} > {}",
                        nash.lhs, nash.rhs
                    )
                });
            }
            evaluated += 1;
        }
    }
    o.detail = format!("{evaluated} functions; largest lhs/rhs of assembled form {tightest:.3e}");
    o
}

fn main() {
    let suite_start = Instant::now();
    let graphs = catalog_graphs();
    type Criterion<'a> = (&'a str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "Q8 reproduction",
            Some(Duration::from_secs(1)),
            Box::new(criterion_1),
        ),
        (
            "P-certificate suite",
            Some(Duration::from_secs(30)),
            Box::new(|| criterion_2(&graphs)),
        ),
        (
            "exhaustive isoperimetric verification",
            Some(Duration::from_secs(60)),
            Box::new(|| criterion_3(&graphs)),
        ),
        (
            "calculus identities",
            None,
            Box::new(|| criterion_4(&graphs)),
        ),
        (
            "Hölder step and exponent identities",
            None,
            Box::new(criterion_5),
        ),
        ("truncation invariants", None, Box::new(criterion_6)),
        (
            "equivalence constants",
            None,
            Box::new(|| criterion_7(&graphs)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            outcome.check(elapsed < *limit, || {
                format!("took {elapsed:?}, limit {limit:?}")
            });
        }
        report(i + 1, name, elapsed, &outcome);
        failed += !outcome.failures.is_empty() as usize;
    }
    let total = suite_start.elapsed();
    let mut desk = Outcome::new();
    desk.check(total < Duration::from_secs(180), || {
        format!("suite took {total:?}")
    });
    desk.detail = "finite-graph checks only; whole suite under 3 minutes".into();
    report(8, "desk-scale run", total, &desk);
    failed += !desk.failures.is_empty() as usize;
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 8 criteria passed");
}

fn report(index: usize, name: &str, elapsed: Duration, o: &Outcome) {
    let status = if o.failures.is_empty() {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "criterion {index} [{name}]: {status} ({:.2}s) {}",
        elapsed.as_secs_f64(),
        o.detail
    );
    for f in o.failures.iter().take(5) {
        println!("    {f}");
    }
    if o.failures.len() > 5 {
        println!("    ... {} more", o.failures.len() - 5);
    }
}
