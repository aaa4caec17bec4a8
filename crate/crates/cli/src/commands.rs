use std::fmt::Write as _;

use bruhat_core::bruhat::{compare_orders, consistent_sets, enumerate_bruhat_with, to_poset_with};
use bruhat_core::homology::{is_sphere_homology, reduced_homology_with, HomologyReport};
use bruhat_core::lemma::{
    build_proof_maps, carrier_cone_check_with, check_conditions_with, CheckResult,
    DissectionInstance, CERTIFICATION_NOTE, SAMPLING_NOTE,
};
use bruhat_core::poset::{order_complex, proper_part};
use bruhat_core::{
    BruhatOrderKind, ConsistentSet, EnumerationLimits, EnumerationMethod, Exec, GroundParams,
};
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_FAIL, EXIT_PASS};
use crate::instance::{self, InstanceFile, Loaded};

pub const HOMOLOGY_NOTE: &str =
    "reduced integer homology is computed exactly; a sphere's homology does not by itself certify its homotopy type";

#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    pub limits: EnumerationLimits,
    pub max_simplices: u64,
    pub max_chains: usize,
    pub seed: u64,
    pub exec: Exec,
}

/// A finished command: a JSON report, its text rendering and an exit code.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub exit: i32,
}

/// Large integers as JSON numbers when they fit `u64`, strings otherwise.
fn big(v: impl ToString) -> Value {
    let s = v.to_string();
    match s.parse::<u64>() {
        Ok(x) => json!(x),
        Err(_) => json!(s),
    }
}

fn histogram(sets: &[ConsistentSet]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for s in sets {
        match out.last_mut() {
            Some((size, count)) if *size == s.len() => *count += 1,
            _ => out.push((s.len(), 1)),
        }
    }
    out
}

pub fn enumerate(
    params: GroundParams,
    method: &str,
    dump: bool,
    b: Budgets,
) -> Result<Outcome, CliError> {
    let run = |m| consistent_sets(params, m, b.limits, b.exec);
    let (sets, agree) = match method {
        "bfs" => (run(EnumerationMethod::Bfs)?, None),
        "bruteforce" => (run(EnumerationMethod::Bruteforce)?, None),
        "both" => {
            let bfs = run(EnumerationMethod::Bfs)?;
            let brute = run(EnumerationMethod::Bruteforce)?;
            let same = bfs == brute;
            (bfs, Some(same))
        }
        other => return Err(CliError::Usage(format!("unknown method {other:?}"))),
    };
    let hist = histogram(&sets);
    let mut report = json!({
        "command": "enumerate",
        "n": params.n(),
        "k": params.k(),
        "method": method,
        "universe": params.universe_size(),
        "count": sets.len(),
        "histogram": hist.iter().map(|&(size, count)| json!({"size": size, "count": count})).collect::<Vec<_>>(),
    });
    if let Some(same) = agree {
        report["methods_agree"] = json!(same);
    }
    if dump {
        report["elements"] = json!(sets.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }

    let mut text = format!("B{params}: {} elements ({method})\n", sets.len());
    for (size, count) in &hist {
        let _ = writeln!(text, "  |U| = {size}: {count}");
    }
    if let Some(same) = agree {
        let _ = writeln!(
            text,
            "bfs and bruteforce {}",
            if same { "agree" } else { "DISAGREE" }
        );
    }
    if dump {
        for s in &sets {
            let _ = writeln!(text, "{s}");
        }
    }
    let exit = if agree == Some(false) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    };
    Ok(Outcome {
        json: report,
        text,
        exit,
    })
}

fn check_json(c: &CheckResult) -> Value {
    json!({"name": c.name, "passed": c.passed, "witnesses": c.witnesses})
}

fn check_text(out: &mut String, c: &CheckResult) {
    let _ = writeln!(
        out,
        "  [{}] {}",
        if c.passed { "pass" } else { "FAIL" },
        c.name
    );
    for w in &c.witnesses {
        let _ = writeln!(out, "         {w}");
    }
}

pub fn check_lemma(
    source: &str,
    inst: &DissectionInstance,
    b: Budgets,
) -> Result<Outcome, CliError> {
    let report = check_conditions_with(inst, b.exec);
    let mut all_pass = report.all_pass();
    let mut text = format!("check-lemma {source}\nnote: {CERTIFICATION_NOTE}\n");
    let _ = writeln!(text, "|P| = {}, |Q| = {}", inst.p.len(), inst.q.len());
    text.push_str("preconditions\n");
    report
        .preconditions
        .iter()
        .for_each(|c| check_text(&mut text, c));
    text.push_str("conditions\n");
    report
        .conditions
        .iter()
        .for_each(|c| check_text(&mut text, c));

    let mut json = json!({
        "command": "check-lemma",
        "source": source,
        "note": CERTIFICATION_NOTE,
        "p_size": inst.p.len(),
        "q_size": inst.q.len(),
        "preconditions": report.preconditions.iter().map(check_json).collect::<Vec<_>>(),
        "conditions": report.conditions.iter().map(check_json).collect::<Vec<_>>(),
    });

    if report.all_pass() {
        match build_proof_maps(inst) {
            Ok(maps) => {
                all_pass &= maps.all_pass();
                text.push_str("proof maps\n");
                for c in [&maps.g_monotone, &maps.h_monotone, &maps.g_after_h_identity] {
                    check_text(&mut text, c);
                }
                json["proof_maps"] = json!({
                    "built": true,
                    "checks": [check_json(&maps.g_monotone), check_json(&maps.h_monotone), check_json(&maps.g_after_h_identity)],
                });
            }
            Err(e) => {
                all_pass = false;
                let _ = writeln!(text, "proof maps\n  [FAIL] {e}");
                json["proof_maps"] = json!({"built": false, "error": e.to_string()});
            }
        }
        let carriers = carrier_cone_check_with(inst, b.max_chains, b.seed, b.exec)?;
        all_pass &= carriers.passed();
        let total = carriers.total_chains.map(big).unwrap_or(Value::Null);
        let _ = writeln!(
            text,
            "carrier cones\n  [{}] {} of {} chains checked{}",
            if carriers.passed() { "pass" } else { "FAIL" },
            carriers.checked_chains,
            carriers
                .total_chains
                .map_or("too many".to_string(), |t| t.to_string()),
            if carriers.exhaustive { " (all)" } else { "" }
        );
        for w in &carriers.failures {
            let _ = writeln!(text, "         {w}");
        }
        let mut cj = json!({
            "checked_chains": carriers.checked_chains,
            "total_chains": total,
            "exhaustive": carriers.exhaustive,
            "passed": carriers.passed(),
            "failures": carriers.failures,
        });
        if !carriers.exhaustive {
            cj["note"] = json!(SAMPLING_NOTE);
            cj["seed"] = json!(b.seed);
            let _ = writeln!(text, "  note: {SAMPLING_NOTE} (seed {})", b.seed);
        }
        json["carriers"] = cj;
    } else {
        text.push_str("proof maps and carrier cones skipped: hypotheses fail\n");
    }
    json["all_pass"] = json!(all_pass);
    let _ = writeln!(
        text,
        "result: {}",
        if all_pass {
            "all checks pass"
        } else {
            "FAILED"
        }
    );
    Ok(Outcome {
        json,
        text,
        exit: if all_pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

fn homology_json(r: &HomologyReport) -> Value {
    json!(r
        .degrees
        .iter()
        .map(|d| json!({
            "degree": d.degree,
            "betti": d.betti,
            "torsion": d.torsion.iter().map(big).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}

pub fn verify_sphericity(
    params: GroundParams,
    kind: BruhatOrderKind,
    b: Budgets,
) -> Result<Outcome, CliError> {
    let order = enumerate_bruhat_with(params, kind, EnumerationMethod::Bfs, b.limits, b.exec)?;
    let p = to_poset_with(&order, b.exec)?;
    let pp = proper_part(&p);
    let complex = order_complex(&pp.poset, b.max_simplices, b.exec)?;
    let report = reduced_homology_with(&complex, b.max_simplices, b.exec)?;
    let d = params.n() as i64 - params.k() as i64 - 2;
    let sphere = is_sphere_homology(&report, d);

    let json = json!({
        "command": "verify-sphericity",
        "n": params.n(),
        "k": params.k(),
        "order": kind.as_str(),
        "elements": order.len(),
        "proper_part_size": pp.poset.len(),
        "f_vector": complex.f_vector(),
        "homology": homology_json(&report),
        "euler_characteristic": report.euler_from_f_vector(),
        "expected_sphere_dimension": d,
        "is_sphere": sphere,
        "note": HOMOLOGY_NOTE,
    });
    let mut text = format!("verify-sphericity B{params} {kind}\nnote: {HOMOLOGY_NOTE}\n");
    let _ = writeln!(
        text,
        "|B| = {}, proper part {} elements",
        order.len(),
        pp.poset.len()
    );
    let _ = writeln!(
        text,
        "f-vector (from degree -1): {}",
        complex
            .f_vector()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(text, "{report}");
    let _ = writeln!(
        text,
        "result: {} S^{d}",
        if sphere {
            "homology of"
        } else {
            "NOT the homology of"
        }
    );
    Ok(Outcome {
        json,
        text,
        exit: if sphere { EXIT_PASS } else { EXIT_FAIL },
    })
}

pub fn compare(params: GroundParams, b: Budgets) -> Result<Outcome, CliError> {
    let order = enumerate_bruhat_with(
        params,
        BruhatOrderKind::SingleStep,
        EnumerationMethod::Bfs,
        b.limits,
        b.exec,
    )?;
    let cmp = compare_orders(&order, b.exec);
    let pairs = |v: &[(usize, usize)]| {
        v.iter()
            .map(|&(x, y)| json!([order.label(x), order.label(y)]))
            .collect::<Vec<_>>()
    };
    let json = json!({
        "command": "compare-orders",
        "n": params.n(),
        "k": params.k(),
        "elements": cmp.elements,
        "single_step_comparable_pairs": cmp.single_step_pairs,
        "inclusion_comparable_pairs": cmp.inclusion_pairs,
        "differing_pairs": cmp.inclusion_only.len() + cmp.single_step_only.len(),
        "inclusion_only": pairs(&cmp.inclusion_only),
        "single_step_only": pairs(&cmp.single_step_only),
        "inclusion_graded_by_size": cmp.inclusion_graded_by_size,
    });
    let mut text = format!("compare-orders B{params}: {} elements\n", cmp.elements);
    let _ = writeln!(
        text,
        "strictly comparable pairs: single-step {}, inclusion {}",
        cmp.single_step_pairs, cmp.inclusion_pairs
    );
    if cmp.inclusion_only.is_empty() && cmp.single_step_only.is_empty() {
        text.push_str("the two orders coincide on this instance\n");
    } else {
        let _ = writeln!(
            text,
            "{} pairs comparable under inclusion only:",
            cmp.inclusion_only.len()
        );
        for &(x, y) in &cmp.inclusion_only {
            let _ = writeln!(text, "  {} < {}", order.label(x), order.label(y));
        }
    }
    let _ = writeln!(
        text,
        "inclusion covers all add one member: {}",
        cmp.inclusion_graded_by_size
    );
    // single-step pairs are always inclusion pairs; anything else is a bug
    let exit = if cmp.single_step_only.is_empty() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    Ok(Outcome { json, text, exit })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(loaded: &Loaded) -> String {
    let p = &loaded.p;
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for x in 0..p.len() {
        let colour = match &loaded.green {
            Some(g) if g[x] => ", color=green",
            Some(_) => ", color=red",
            None => "",
        };
        let _ = writeln!(
            out,
            "  n{x} [label=\"{}\"{colour}];",
            dot_escape(p.label(x))
        );
    }
    for (a, b) in p.poset().covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

pub fn export_json(loaded: &Loaded) -> Result<String, CliError> {
    let file: InstanceFile = instance::to_file(loaded);
    let value = serde_json::to_value(&file).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(render_json(&value))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialise");
    s.push('\n');
    s
}
