use serde_json::{json, Value};

use lgw_core::arith::{format_rational, DiagonalGroup};
use lgw_core::chow::{free_case_class, ChowError, FreeCaseInput, RingClass};
use lgw_core::graph::{
    automorphism_order, forget_tail, validate, ContractionMap, DecoratedGraph, EdgeImage, GraphError,
};
use lgw_core::lg::{aut_group, check_nondegenerate, infer_weights, GroebnerBudget, Isolation, LgSpace};
use lgw_core::sectors::{enumerate_admissible, euler_characteristics, virtual_dimension, SectorError};
use lgw_core::verify::{run_suite, Suite};

use crate::documents::{graph_json, lg_failure, SpaceDocument};
use crate::report::{Failure, Outcome, EXIT_SEMANTIC, EXIT_VERIFICATION};

fn group_json(g: &DiagonalGroup) -> Value {
    json!({
        "order": g.order().to_string(),
        "invariant_factors": g.invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "generators": g.generators().iter().map(|v| v.to_strings()).collect::<Vec<_>>(),
    })
}

fn isolation_name(i: Isolation) -> &'static str {
    match i {
        Isolation::Isolated => "isolated",
        Isolation::NotIsolated => "not_isolated",
        Isolation::Indeterminate => "indeterminate",
        Isolation::Skipped => "skipped",
    }
}

pub fn analyze(doc: &SpaceDocument) -> Result<Outcome, Failure> {
    let space = doc.build()?;
    let mut warnings = Vec::new();
    let ws = space.weights().as_single().expect("documents describe one factor");
    // A space only builds when its weights are unique, so an override that
    // survives `build` always agrees with the inferred weights.
    let inferred = infer_weights(space.poly()).map_err(lg_failure)?;
    let nd = check_nondegenerate(space.poly(), GroebnerBudget::default());
    if !nd.no_cross_terms {
        warnings.push(format!(
            "W has {} cross term(s) x_i*x_j; nondegenerate = false",
            space.poly().cross_terms().len()
        ));
    } else {
        match nd.isolated_origin {
            Isolation::NotIsolated => warnings.push("critical locus is not isolated; nondegenerate = false".into()),
            Isolation::Indeterminate => {
                warnings.push("Groebner budget exhausted; nondegeneracy is indeterminate".into())
            }
            _ => {}
        }
    }
    let nondegenerate = match nd.isolated_origin {
        Isolation::Indeterminate if nd.no_cross_terms => Value::Null,
        _ => Value::Bool(nd.is_nondegenerate()),
    };
    let aut = aut_group(space.poly()).map_err(lg_failure)?;
    let results = json!({
        "n": space.n(),
        "polynomial": space.poly().to_string(),
        "weights": { "d": ws.d, "delta": ws.delta },
        "inferred_weights": { "d": inferred.d, "delta": inferred.delta },
        "charges": space.charges().iter().map(format_rational).collect::<Vec<_>>(),
        "j": space.j_element().to_strings(),
        "nondegeneracy": {
            "no_cross_terms": nd.no_cross_terms,
            "isolated_origin": isolation_name(nd.isolated_origin),
            "nondegenerate": nondegenerate,
        },
        "aut": group_json(&aut),
        "group": group_json(space.group()),
        "lambda": {
            "basis": space.lambda_basis().iter()
                .map(|m| m.exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "weights": space.lambda_weights(),
        },
    });
    Ok(Outcome {
        results,
        warnings,
        exit_status: 0,
    })
}

fn sector_failure(e: SectorError) -> Failure {
    match e {
        SectorError::CapExceeded { .. } => Failure::Cap(e.to_string()),
        other => Failure::Semantic(other.to_string()),
    }
}

pub fn sectors(space: &LgSpace, genus: u32, marks: usize, narrow: bool, cap: u64) -> Result<Outcome, Failure> {
    let tuples = enumerate_admissible(space, genus, marks, narrow, cap).map_err(sector_failure)?;
    let rows = tuples
        .iter()
        .map(|t| {
            Ok(json!({
                "sectors": t.sectors.iter().map(|s| s.element().to_strings()).collect::<Vec<_>>(),
                "orders": t.sectors.iter().map(|s| s.r().to_string()).collect::<Vec<_>>(),
                "narrow": t.is_narrow(),
                "chi": euler_characteristics(space, t).map_err(sector_failure)?,
                "vdim": virtual_dimension(space, t).map_err(sector_failure)?,
            }))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(Outcome::ok(json!({
        "genus": genus,
        "marks": marks,
        "narrow_only": narrow,
        "count": rows.len(),
        "tuples": rows,
    })))
}

fn class_json(c: &RingClass) -> Value {
    json!({
        "display": c.display(),
        "terms": c.serialize().into_iter().map(|t| json!({
            "coefficient": t.coefficient,
            "monomial": t.monomial.into_iter()
                .map(|(b, i, e)| json!({ "bundle": b, "chern_index": i, "power": e }))
                .collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn free_class(
    space: &LgSpace,
    ranks: &[u32],
    coranks: &[u32],
    dim: Option<u32>,
    numeric: bool,
) -> Result<Outcome, Failure> {
    let n = space.n();
    for (name, v) in [("ranks", ranks), ("coranks", coranks)] {
        if v.len() != n {
            return Err(Failure::Semantic(format!(
                "--{name} needs {n} entries, found {}",
                v.len()
            )));
        }
    }
    let r: u32 = ranks.iter().sum();
    let s: u32 = coranks.iter().sum();
    let weights = space.weights().per_variable();
    let input = if numeric {
        FreeCaseInput::numeric(weights, ranks.to_vec(), coranks.to_vec())
    } else {
        FreeCaseInput::new(
            weights,
            ranks.to_vec(),
            coranks.to_vec(),
            dim.unwrap_or(s.saturating_sub(r)),
        )
    };
    let class = free_case_class(&input).map_err(|e: ChowError| Failure::Semantic(e.to_string()))?;
    let mut results = json!({
        "total_rank": r,
        "total_corank": s,
        "degree": i64::from(s) - i64::from(r),
        "max_degree": input.max_degree,
        "numeric": numeric,
        "class": class_json(&class),
    });
    if let Some(v) = class.as_scalar() {
        results["value"] = json!(format_rational(&v));
    }
    Ok(Outcome::ok(results))
}

fn graph_failure(e: GraphError) -> Failure {
    match e {
        GraphError::SearchCapExceeded { .. } => Failure::Cap(e.to_string()),
        other => Failure::Semantic(other.to_string()),
    }
}

/// Rejects graphs whose indices or decorations do not fit the space.
pub fn check_graph(g: &DecoratedGraph, space: &LgSpace) -> Result<(), Failure> {
    g.check_indices().map_err(graph_failure)?;
    let bad = validate(g, space, None).violations.into_iter().find(|v| {
        matches!(
            v,
            lgw_core::graph::Violation::WrongDimension { .. } | lgw_core::graph::Violation::NotInGroup { .. }
        )
    });
    match bad {
        Some(v) => Err(Failure::Semantic(v.to_string())),
        None => Ok(()),
    }
}

pub fn graph_validate(g: &DecoratedGraph, space: &LgSpace, genus: Option<u32>) -> Result<Outcome, Failure> {
    let report = validate(g, space, genus);
    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    Ok(Outcome {
        results: json!({
            "valid": report.is_valid(),
            "violations": violations,
            "total_genus": g.total_genus().ok(),
        }),
        warnings: Vec::new(),
        exit_status: if report.is_valid() { 0 } else { EXIT_SEMANTIC },
    })
}

fn contraction(g: &DecoratedGraph, edges: &[usize], all: bool) -> Result<ContractionMap, Failure> {
    let res = if all { g.contract_all() } else { g.contract_edges(edges) };
    res.map(|(_, m)| m).map_err(graph_failure)
}

fn map_json(m: &ContractionMap) -> Value {
    json!({
        "vertex_map": m.vertex_map,
        "edge_map": m.edge_map.iter().map(|img| match img {
            EdgeImage::Edge(k) => json!({ "edge": k }),
            EdgeImage::Vertex(v) => json!({ "vertex": v }),
        }).collect::<Vec<_>>(),
        "tail_map": m.tail_map,
    })
}

pub fn graph_contract(g: &DecoratedGraph, edges: &[usize], all: bool) -> Result<Outcome, Failure> {
    let m = contraction(g, edges, all)?;
    Ok(Outcome::ok(json!({
        "graph": graph_json(&m.target),
        "map": map_json(&m),
        "total_genus": m.target.total_genus().ok(),
    })))
}

pub fn graph_split(g: &DecoratedGraph) -> Result<Outcome, Failure> {
    Ok(Outcome::ok(json!({ "graph": graph_json(&g.split()) })))
}

pub fn graph_aut(g: &DecoratedGraph, edges: &[usize], all: bool) -> Result<Outcome, Failure> {
    let m = contraction(g, edges, all)?;
    let order = automorphism_order(&m).map_err(graph_failure)?;
    Ok(Outcome::ok(json!({
        "automorphism_order": order,
        "contracted_edges": m.contracted_edges(),
        "target": graph_json(&m.target),
    })))
}

pub fn graph_forget(g: &DecoratedGraph, space: &LgSpace, tail: usize) -> Result<Outcome, Failure> {
    let report = validate(g, space, None);
    if !report.is_valid() {
        let detail: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Semantic(format!("graph is not valid: {}", detail.join("; "))));
    }
    let out = forget_tail(g, tail, space).map_err(graph_failure)?;
    Ok(Outcome::ok(json!({
        "graph": graph_json(&out),
        "total_genus": out.total_genus().ok(),
    })))
}

pub fn verify(suite: Suite) -> Outcome {
    let report = run_suite(suite);
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    Outcome {
        results: json!({
            "suite": suite.to_string(),
            "passed": report.passed(),
            "checks": checks,
        }),
        warnings: report.warnings(),
        exit_status: if report.passed() { 0 } else { EXIT_VERIFICATION },
    }
}
