//! Frozen values checked against reference computations written here from
//! first principles (quaternion arithmetic, permutations, BFS).

mod common;

use approx::assert_relative_eq;
use common::nu_oracle;
use noncomm_core::calculus::{dirichlet_energy, exact, laplacian, lp_norm, Weighting};
use noncomm_core::graph::{ball, diameter, is_connected, Distance};
use noncomm_core::group::{commutes, quaternion, symmetric};
use noncomm_core::inequalities::{
    check_dagger, check_double_dagger, check_sobolev_flat, dyadic_decompose, empirical_a,
    empirical_b, empirical_c, exponent_identities, holder_step_check, k_factor, p_from_n,
    verify_chain, FamilySpec,
};
use noncomm_core::isoperimetry::{
    check_p, constant_c, mu_directed, nu, saturated_pairs, ConstantVariant, PParams,
};
use noncomm_core::{build_group, noncommuting_graph, Subset, VertexFunction, WeightedGraph};

/// Unit quaternions as (sign, axis), axis 0 = 1, 1 = i, 2 = j, 3 = k.
fn quat_mul(a: (i8, u8), b: (i8, u8)) -> (i8, u8) {
    let (sa, x) = a;
    let (sb, y) = b;
    let (s, z) = match (x, y) {
        (0, y) => (1, y),
        (x, 0) => (1, x),
        (x, y) if x == y => (-1, 0),
        (1, 2) => (1, 3),
        (2, 3) => (1, 1),
        (3, 1) => (1, 2),
        (2, 1) => (-1, 3),
        (3, 2) => (-1, 1),
        (1, 3) => (-1, 2),
        _ => unreachable!(),
    };
    (sa * sb * s, z)
}

fn quat_label(q: (i8, u8)) -> String {
    let base = ["1", "i", "j", "k"][q.1 as usize];
    if q.0 < 0 {
        format!("-{base}")
    } else {
        base.to_string()
    }
}

fn all_quats() -> Vec<(i8, u8)> {
    (0..4).flat_map(|a| [(1, a), (-1, a)]).collect()
}

fn gamma(spec: &str) -> WeightedGraph {
    noncommuting_graph(&build_group(spec).unwrap()).unwrap()
}

fn indicator(graph: &WeightedGraph, label: &str) -> VertexFunction {
    let x = graph.vertex_by_label(label).unwrap();
    VertexFunction::indicator(&Subset::from_indices(graph.vertex_count(), [x]))
}

#[test]
fn q8_table_matches_quaternion_arithmetic() {
    let g = quaternion().unwrap();
    let qs = all_quats();
    for &a in &qs {
        for &b in &qs {
            let ia = g.element_by_label(&quat_label(a)).unwrap();
            let ib = g.element_by_label(&quat_label(b)).unwrap();
            assert_eq!(g.label(g.mul(ia, ib)), quat_label(quat_mul(a, b)));
        }
    }
    let center: Vec<&str> = g.center().iter().map(|&z| g.label(z)).collect();
    assert_eq!(center, ["1", "-1"]);
    let (i, mi) = (
        g.element_by_label("i").unwrap(),
        g.element_by_label("-i").unwrap(),
    );
    assert!(commutes(&g, i, mi).unwrap());
}

#[test]
fn gamma_q8_against_quaternion_oracle() {
    let graph = gamma("Q8");
    let noncentral: Vec<(i8, u8)> = all_quats().into_iter().filter(|q| q.1 != 0).collect();
    let mut edges = 0;
    for (a_idx, &a) in noncentral.iter().enumerate() {
        for &b in &noncentral[a_idx + 1..] {
            let noncommuting = quat_mul(a, b) != quat_mul(b, a);
            let (x, y) = (
                graph.vertex_by_label(&quat_label(a)).unwrap(),
                graph.vertex_by_label(&quat_label(b)).unwrap(),
            );
            assert_eq!(graph.adjacent(x, y), noncommuting);
            edges += noncommuting as usize;
        }
    }
    assert_eq!(
        (graph.vertex_count(), graph.edge_count(), edges),
        (6, 12, 12)
    );
    assert!((0..6).all(|x| graph.degree(x) == 4));
    assert_eq!(diameter(&graph), Distance::Finite(2));
    assert!(is_connected(&graph));
}

#[test]
fn s3_against_permutation_oracle() {
    let g = symmetric(3).unwrap();
    let perm = |label: &str| -> [usize; 3] {
        match label {
            "()" => [0, 1, 2],
            "(12)" => [1, 0, 2],
            "(13)" => [2, 1, 0],
            "(23)" => [0, 2, 1],
            "(123)" => [1, 2, 0],
            "(132)" => [2, 0, 1],
            _ => unreachable!(),
        }
    };
    for a in g.elements() {
        for b in g.elements() {
            let (pa, pb) = (perm(g.label(a)), perm(g.label(b)));
            let composed = [pa[pb[0]], pa[pb[1]], pa[pb[2]]];
            assert_eq!(perm(g.label(g.mul(a, b))), composed);
        }
    }
    assert_eq!(g.center(), vec![g.identity()]);
    let (t12, t13) = (
        g.element_by_label("(12)").unwrap(),
        g.element_by_label("(13)").unwrap(),
    );
    assert!(!commutes(&g, t12, t13).unwrap());

    let graph = noncommuting_graph(&g).unwrap();
    assert_eq!((graph.vertex_count(), graph.edge_count()), (5, 9));
    for t in ["(12)", "(13)", "(23)"] {
        assert_eq!(graph.degree(graph.vertex_by_label(t).unwrap()), 4);
    }
    for c in ["(123)", "(132)"] {
        assert_eq!(graph.degree(graph.vertex_by_label(c).unwrap()), 3);
    }
}

#[test]
fn q8_ball_and_directed_measure() {
    let graph = gamma("Q8");
    let v = |l: &str| graph.vertex_by_label(l).unwrap();
    let b = ball(&graph, v("i"), 2.0).unwrap();
    let mut labels: Vec<&str> = b.iter().map(|x| graph.label(x)).collect();
    labels.sort();
    assert_eq!(labels, ["-j", "-k", "i", "j", "k"]);
    assert_eq!(mu_directed(&graph, v("i"), v("j")).unwrap(), 1.0);
    // Every neighbour of -i is strictly closer to i: μ^i_{-i} = μ_{-i} = 4.
    assert_eq!(mu_directed(&graph, v("i"), v("-i")).unwrap(), 4.0);
    let dm = noncomm_core::graph::DistanceMatrix::new(&graph);
    assert!(saturated_pairs(&graph, &dm).contains(&(v("i"), v("-i"))));
}

#[test]
fn nu_two_matches_oracle_and_min_degree() {
    for spec in ["Q8", "S3", "D4", "D5", "A4", "Q8xC2"] {
        let graph = gamma(spec);
        let got = nu(&graph, 2.0).unwrap();
        assert_eq!(got, nu_oracle(&graph, 2));
        assert_eq!(got, graph.min_degree() as f64, "{spec}");
    }
    assert_eq!(nu(&gamma("Q8"), 2.0).unwrap(), 4.0);
}

#[test]
fn nu_on_weighted_graphs_matches_oracle() {
    let graph = WeightedGraph::from_edges(
        5,
        [
            (0, 1, 2.0),
            (1, 2, 0.5),
            (2, 3, 1.5),
            (3, 4, 1.0),
            (4, 0, 3.0),
            (1, 3, 0.25),
        ],
    )
    .unwrap();
    for r in 1..=4u32 {
        let oracle = nu_oracle(&graph, r);
        match nu(&graph, r as f64) {
            Ok(v) => assert_relative_eq!(v, oracle, max_relative = 1e-15),
            Err(_) => assert!(oracle.is_infinite()),
        }
    }
}

#[test]
fn p_certificate_on_small_groups() {
    for (spec, n) in [("Q8", 4.0), ("S3", 3.0)] {
        let cert = check_p(&gamma(spec), PParams::new(1.0, 1.0, 1.0), None).unwrap();
        assert!(cert.passed, "{spec}: {cert:#?}");
        assert_eq!(cert.n, Some(n));
    }
}

#[test]
fn half_squared_distance_falls_short_of_delta_one() {
    // At x = ξ the normalized Laplacian of ρ²/2 is 1/2 on every Γ_G.
    let cert = check_p(
        &gamma("Q8"),
        PParams::new(1.0, 1.0, 1.0),
        Some(&noncomm_core::isoperimetry::Potential::half_squared_distance()),
    )
    .unwrap();
    assert!(!cert.passed);
    assert!(!cert.potential_laplacian.passed);
    assert_eq!(
        cert.potential_laplacian.witness.as_ref().unwrap().value,
        0.5
    );
}

#[test]
fn q8_constant() {
    let c = constant_c(4.0, 1.0, 4.0, 1.0, 4.0, ConstantVariant::GammaG).unwrap();
    assert_relative_eq!(
        c,
        4f64.powf(0.75) / (4f64.powi(8) * 8f64.exp()),
        max_relative = 1e-15
    );
    let general = constant_c(4.0, 1.0, 4.0, 1.0, 4.0, ConstantVariant::General).unwrap();
    assert_relative_eq!(
        general,
        4f64.powf(1.0 / 3.0) / (4f64.powi(7) * 4.0 * 8f64.exp()),
        max_relative = 1e-15
    );
}

#[test]
fn calculus_hand_values_on_q8() {
    let graph = gamma("Q8");
    let f = indicator(&graph, "i");
    let i = graph.vertex_by_label("i").unwrap();
    assert_eq!(laplacian(&graph, &f).unwrap().get(i), -1.0);
    assert_eq!(dirichlet_energy(&graph, &f, 2.0).unwrap(), 8.0);
    let one = VertexFunction::constant(6, 1.0);
    assert_relative_eq!(
        lp_norm(&graph, &one, 2.0, Weighting::Mu).unwrap(),
        24f64.sqrt(),
        max_relative = 1e-15
    );
    assert_eq!(lp_norm(&graph, &f, 1.0, Weighting::Mu).unwrap(), 4.0);
}

#[test]
fn exact_laplacian_agrees_with_float() {
    for spec in ["Q8", "S3", "D6", "A4"] {
        let graph = gamma(spec);
        let ints: Vec<i64> = (0..graph.vertex_count() as i64)
            .map(|x| (x * 7 % 5) - 2)
            .collect();
        let f = VertexFunction::new(ints.iter().map(|&v| v as f64).collect()).unwrap();
        let float = laplacian(&graph, &f).unwrap();
        for (x, q) in exact::laplacian(&graph, &ints)
            .unwrap()
            .into_iter()
            .enumerate()
        {
            let q = q.unwrap();
            let as_f = *q.numer() as f64 / *q.denom() as f64;
            assert_relative_eq!(float.get(x), as_f, max_relative = 1e-15, epsilon = 1e-15);
        }
    }
}

#[test]
fn inequality_hand_values_on_q8() {
    let graph = gamma("Q8");
    let f = indicator(&graph, "i");
    let d = check_dagger(&graph, &f, 4.0, 0.25).unwrap();
    assert_eq!((d.lhs, d.rhs), (2.0, 2.0));
    assert!(d.holds);
    assert!(!check_dagger(&graph, &f, 4.0, 0.24).unwrap().holds);
    let dd = check_double_dagger(&graph, &f, 4.0, 0.25).unwrap();
    assert_eq!((dd.lhs, dd.rhs), (8.0, 8.0));
    assert!(!check_double_dagger(&graph, &f, 4.0, 0.2).unwrap().holds);

    let one = VertexFunction::constant(6, 1.0);
    let h = holder_step_check(&graph, &one, 4.0).unwrap();
    assert_eq!(h.lhs, 24.0);
    assert_relative_eq!(h.rhs, 24.0, max_relative = 1e-14);
    assert!(h.holds);
}

#[test]
fn scalar_helpers() {
    assert_eq!(p_from_n(4.0).unwrap(), 4.0);
    assert_eq!(p_from_n(3.0).unwrap(), 6.0);
    assert!(p_from_n(2.0).is_err());
    assert_eq!(k_factor(32.0, 16.0, 4.0), 32f64.powf(0.75) / 16.0);
    for (n, second) in [(4.0, 1.0), (3.0, 4.0 / 3.0), (10.0, 0.4)] {
        let (a, b) = exponent_identities(n).unwrap();
        assert_relative_eq!(a, 1.0, max_relative = 1e-12);
        assert_relative_eq!(b, second, max_relative = 1e-12);
    }
}

#[test]
fn dyadic_indicator_on_q8() {
    let graph = gamma("Q8");
    let f = indicator(&graph, "i");
    let d = dyadic_decompose(&graph, &f, 4.0).unwrap();
    let l0 = d.level(0).unwrap();
    assert_eq!(l0.v.to_vec(), [graph.vertex_by_label("i").unwrap()]);
    assert!(l0.w.is_empty());
    assert_eq!(l0.u.len(), 5);
    assert!(l0.f_k.is_zero());
}

#[test]
fn chain_indicator_on_q8() {
    let graph = gamma("Q8");
    let f = indicator(&graph, "i");
    let r = verify_chain(&graph, &f, 4.0, 0.25).unwrap();
    assert_relative_eq!(r.a, 15f64.sqrt() * 16.0, max_relative = 1e-15);
    assert!(r.assembled.holds);
    assert!(r.unconditional_hold);
    let direct = check_dagger(&graph, &f, 4.0, r.a).unwrap();
    assert_eq!(direct, r.assembled);
}

#[test]
fn empirical_constants_on_q8() {
    let graph = gamma("Q8");
    let fam = FamilySpec::parse("subsets", 0, 0).unwrap().generate(&graph);
    assert_eq!(fam.functions.len(), 62);
    let a = empirical_a(&graph, &fam.functions, 4.0).unwrap();
    let b = empirical_b(&graph, &fam.functions, 4.0).unwrap();
    assert!(a.value >= 0.25 && b.value >= 0.25);

    let c = constant_c(4.0, 1.0, 4.0, 1.0, 4.0, ConstantVariant::GammaG).unwrap();
    let big_c = empirical_c(&graph, &fam.functions, c, 4.0, 2.0, 25.0).unwrap();
    assert!(big_c.value > 0.0 && big_c.value.is_finite());
    let f = indicator(&graph, "i");
    assert!(
        check_sobolev_flat(&graph, &f, c, 4.0, 2.0, 25.0, big_c.value)
            .unwrap()
            .holds
    );
    let zero = empirical_c(&graph, &[VertexFunction::zeros(6)], c, 4.0, 2.0, 25.0).unwrap();
    assert_eq!(zero.value, 0.0);
}

#[test]
fn sobolev_flat_on_s3_with_its_own_certificate() {
    let graph = gamma("S3");
    let cert = check_p(&graph, PParams::new(1.0, 1.0, 1.0), None).unwrap();
    let n = cert.n.unwrap();
    let c = constant_c(
        graph.min_vertex_weight(),
        1.0,
        cert.nu_r0_plus_1.unwrap(),
        1.0,
        n,
        ConstantVariant::General,
    )
    .unwrap();
    let fam = FamilySpec::parse("random:100", 0, 7)
        .unwrap()
        .generate(&graph)
        .functions;
    let v0 = 1.0 + 18.0;
    let big_c = empirical_c(&graph, &fam, c, n, 2.0, v0).unwrap();
    for f in &fam {
        assert!(
            check_sobolev_flat(&graph, f, c, n, 2.0, v0, big_c.value)
                .unwrap()
                .holds
        );
    }
}
