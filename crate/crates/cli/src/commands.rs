//! Payloads of the `group`, `graph`, `constants` and `chain` subcommands.

use std::path::Path;

use noncomm_core::graph::{diameter, hamiltonian_cycle, is_connected, HAMILTONIAN_VERTEX_LIMIT};
use noncomm_core::group::DEFAULT_ORDER_CAP;
use noncomm_core::inequalities::{
    empirical_a, empirical_b, empirical_c, FamilySpec, InequalityError,
};
use noncomm_core::isoperimetry::{
    constant_c, empirical_iso_constant, ConstantVariant, ScanMode, EXHAUSTIVE_VERTEX_LIMIT,
};
use noncomm_core::{noncommuting_graph, GroupSpec};
use serde_json::{json, Value};

use crate::campaign::{chain_runs, Context, CHAIN_FUNCTIONS};
use crate::config::CampaignConfig;
use crate::CliError;

pub fn group(spec: &str) -> Result<Value, CliError> {
    let spec = GroupSpec::parse(spec)?;
    let g = spec.build(DEFAULT_ORDER_CAP)?;
    let center: Vec<&str> = g.center().iter().map(|&z| g.label(z)).collect();
    Ok(json!({
        "group": spec.to_string(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "elements": g.labels(),
        "center": center,
        "noncentral": g.order() - center.len(),
    }))
}

/// Builds Γ_G, optionally writing DOT and JSON dumps.
pub fn graph(spec: &str, dot: Option<&Path>, json_out: Option<&Path>) -> Result<Value, CliError> {
    let spec = GroupSpec::parse(spec)?;
    let g = spec.build(DEFAULT_ORDER_CAP)?;
    if g.is_abelian() {
        return Err(CliError::Abelian(spec.to_string()));
    }
    let graph = noncommuting_graph(&g)?;
    let name = format!("Gamma_{spec}");
    if let Some(path) = dot {
        std::fs::write(path, graph.to_dot(&name)).map_err(|e| CliError::io(path, e))?;
    }
    if let Some(path) = json_out {
        std::fs::write(path, graph.to_json()).map_err(|e| CliError::io(path, e))?;
    }
    let degrees: Vec<usize> = (0..graph.vertex_count()).map(|x| graph.degree(x)).collect();
    let hamiltonian = if graph.vertex_count() <= HAMILTONIAN_VERTEX_LIMIT {
        let cycle = hamiltonian_cycle(&graph)?;
        json!(cycle.map(|c| c
            .iter()
            .map(|&x| graph.label(x).to_string())
            .collect::<Vec<_>>()))
    } else {
        json!("not searched")
    };
    Ok(json!({
        "graph": name,
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "min_degree": degrees.iter().min(),
        "max_degree": degrees.iter().max(),
        "connected": is_connected(&graph),
        "diameter": diameter(&graph),
        "hamiltonian_cycle": hamiltonian,
        "labels": graph.labels(),
    }))
}

/// Constants for Γ_G: ν₂, `c` in both variants, and the empirical
/// isoperimetric, Sobolev and Nash constants over the configured family.
pub fn constants(config: &CampaignConfig) -> Result<Value, CliError> {
    let ctx = Context::build(config)?;
    let graph = &ctx.graph;
    let omega = graph.min_vertex_weight();
    let general = ctx
        .certificate
        .nu_r0_plus_1
        .map(|nu| {
            constant_c(
                omega,
                graph.min_edge_weight().unwrap_or(1.0),
                nu,
                config.parameters.iota,
                ctx.n,
                ConstantVariant::General,
            )
        })
        .transpose()?;
    let gamma_g = constant_c(omega, 1.0, ctx.nu2, 1.0, ctx.n, ConstantVariant::GammaG)?;
    let mode = if graph.vertex_count() <= EXHAUSTIVE_VERTEX_LIMIT {
        ScanMode::Exhaustive
    } else {
        ScanMode::Sampled {
            count: config.count,
            seed: config.seed(),
        }
    };
    let iso = empirical_iso_constant(graph, ctx.n, mode)?;
    let fam = FamilySpec::parse(&config.family, config.count, config.seed())?.generate(graph);
    let p = config.parameters.p;
    let v0 = config
        .parameters
        .v0
        .unwrap_or_else(|| 1.0 + graph.vertex_weights().iter().sum::<f64>());
    let big_c = if p < ctx.n {
        match empirical_c(graph, &fam.functions, ctx.c, ctx.n, p, v0) {
            Ok(e) => json!(e),
            Err(InequalityError::NoFiniteC { index }) => json!({ "no_finite_c": index }),
            Err(e) => return Err(e.into()),
        }
    } else {
        json!(null)
    };
    Ok(json!({
        "group": ctx.spec.to_string(),
        "nu2": ctx.nu2,
        "nu_r0_plus_1": ctx.certificate.nu_r0_plus_1,
        "n": ctx.n,
        "c_general": general,
        "c_gamma_g": gamma_g,
        "iso_scan_mode": mode,
        "empirical_iso_constant": iso,
        "family_size": fam.functions.len(),
        "excluded_constants": fam.excluded_constants,
        "empirical_A": empirical_a(graph, &fam.functions, ctx.n)?,
        "empirical_B": empirical_b(graph, &fam.functions, ctx.n)?,
        "empirical_C": big_c,
        "sobolev_flat_p": p,
        "v0": v0,
    }))
}

pub fn chain(config: &CampaignConfig) -> Result<(Value, bool), CliError> {
    let ctx = Context::build(config)?;
    let runs = chain_runs(&ctx, config.count.min(CHAIN_FUNCTIONS), config.seed())?;
    let passed = runs
        .iter()
        .all(|r| r["assembled_holds"] == json!(true) && r["unconditional_hold"] == json!(true));
    Ok((
        json!({ "group": ctx.spec.to_string(), "n": ctx.n, "passed": passed, "runs": runs }),
        passed,
    ))
}
