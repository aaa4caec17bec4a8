//! The instance file format, version 1.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "p": {"labels": ["0", "a", "1"], "covers": [["0", "a"], ["a", "1"]], "bottom": "0", "top": "1"},
//!   "q": {"labels": ["x", "y"], "covers": [["x", "y"]], "bottom": "x", "top": "y"},
//!   "green": ["0"],
//!   "f": {"0": "x", "a": "x", "1": "y"},
//!   "i": {"x": "0", "y": "a"},
//!   "j": {"x": "a", "y": "1"}
//! }
//! ```
//!
//! or the shorthand `{"schema": 1, "bruhat": {"n": 4, "k": 1, "order": "single_step"}}`.
//! `q`, `green` and the maps are optional for `export`; `check-lemma` needs them all.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use bruhat_core::lemma::{bruhat_instance, DissectionInstance};
use bruhat_core::{BruhatOrderKind, EnumerationLimits, Exec, FiniteBoundedPoset, GroundParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetBlock {
    pub labels: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub bottom: String,
    pub top: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BruhatSpec {
    pub n: u32,
    pub k: u32,
    pub order: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruhat: Option<BruhatSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PosetBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<PosetBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub green: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<BTreeMap<String, String>>,
}

/// What a command operates on: a bounded poset `P`, optionally with the rest
/// of a dissection instance.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub p: FiniteBoundedPoset,
    pub green: Option<Vec<bool>>,
    pub instance: Option<DissectionInstance>,
}

pub fn read(path: &Path) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<InstanceFile, CliError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("instance file: {e}")))?;
    if file.schema != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "unsupported schema {} (expected {SCHEMA_VERSION})",
            file.schema
        )));
    }
    if file.bruhat.is_some() && (file.p.is_some() || file.q.is_some() || file.green.is_some()) {
        return Err(CliError::Input(
            "the bruhat shorthand cannot be mixed with explicit posets".into(),
        ));
    }
    if file.bruhat.is_none() && file.p.is_none() {
        return Err(CliError::Input(
            "instance file needs either \"bruhat\" or \"p\"".into(),
        ));
    }
    Ok(file)
}

pub fn bruhat_params(spec: &BruhatSpec) -> Result<(GroundParams, BruhatOrderKind), CliError> {
    Ok((
        GroundParams::new(spec.n, spec.k)?,
        BruhatOrderKind::parse(&spec.order)?,
    ))
}

fn poset_from_block(name: &str, block: &PosetBlock) -> Result<FiniteBoundedPoset, CliError> {
    let mut index = HashMap::new();
    for (x, l) in block.labels.iter().enumerate() {
        if index.insert(l.as_str(), x).is_some() {
            return Err(CliError::Input(format!("{name}: duplicate label {l:?}")));
        }
    }
    let find = |l: &str| {
        index
            .get(l)
            .copied()
            .ok_or_else(|| CliError::Input(format!("{name}: unknown label {l:?}")))
    };
    let covers = block
        .covers
        .iter()
        .map(|(a, b)| Ok((find(a)?, find(b)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let bottom = find(&block.bottom)?;
    let top = find(&block.top)?;
    Ok(FiniteBoundedPoset::from_covers(
        block.labels.clone(),
        &covers,
        bottom,
        top,
    )?)
}

fn map_from_table(
    name: &str,
    table: &BTreeMap<String, String>,
    src: &FiniteBoundedPoset,
    dst: &FiniteBoundedPoset,
) -> Result<Vec<usize>, CliError> {
    let src_index = src.label_index();
    let dst_index = dst.label_index();
    if let Some(k) = table.keys().find(|k| !src_index.contains_key(k.as_str())) {
        return Err(CliError::Input(format!(
            "map {name}: unknown source label {k:?}"
        )));
    }
    src.labels()
        .iter()
        .map(|l| {
            let image = table
                .get(l)
                .ok_or_else(|| CliError::Input(format!("map {name} is not defined on {l:?}")))?;
            dst_index.get(image.as_str()).copied().ok_or_else(|| {
                CliError::Input(format!("map {name}: unknown target label {image:?}"))
            })
        })
        .collect()
}

pub fn load(
    file: &InstanceFile,
    limits: EnumerationLimits,
    exec: Exec,
) -> Result<Loaded, CliError> {
    if let Some(spec) = &file.bruhat {
        let (params, kind) = bruhat_params(spec)?;
        if params.n() < params.k() + 2 {
            // no Q = B(n-1, k); only the poset itself is available
            let order = bruhat_core::enumerate_bruhat_with(
                params,
                kind,
                bruhat_core::EnumerationMethod::Bfs,
                limits,
                exec,
            )?;
            let p = bruhat_core::bruhat::to_poset_with(&order, exec)?;
            let green = order.elements().iter().map(bruhat_core::is_green).collect();
            return Ok(Loaded {
                p,
                green: Some(green),
                instance: None,
            });
        }
        let b = bruhat_instance(params, kind, limits, exec)?;
        return Ok(Loaded {
            p: b.instance.p.clone(),
            green: Some(b.instance.green.clone()),
            instance: Some(b.instance),
        });
    }
    let p = poset_from_block("p", file.p.as_ref().expect("checked in parse"))?;
    let green = match &file.green {
        Some(list) => {
            let index = p.label_index();
            let mut g = vec![false; p.len()];
            for l in list {
                let x = index
                    .get(l.as_str())
                    .ok_or_else(|| CliError::Input(format!("green: unknown label {l:?}")))?;
                g[*x] = true;
            }
            Some(g)
        }
        None => None,
    };
    let instance = match (&file.q, &green, &file.f, &file.i, &file.j) {
        (Some(q), Some(g), Some(f), Some(i), Some(j)) => {
            let q = poset_from_block("q", q)?;
            let f = map_from_table("f", f, &p, &q)?;
            let i = map_from_table("i", i, &q, &p)?;
            let j = map_from_table("j", j, &q, &p)?;
            Some(DissectionInstance::new(p.clone(), q, g.clone(), f, i, j)?)
        }
        (None, _, None, None, None) => None,
        _ => {
            return Err(CliError::Input(
                "a dissection instance needs all of q, green, f, i and j".into(),
            ))
        }
    };
    Ok(Loaded { p, green, instance })
}

fn block_of(p: &FiniteBoundedPoset) -> PosetBlock {
    PosetBlock {
        labels: p.labels().to_vec(),
        covers: p
            .poset()
            .covers()
            .into_iter()
            .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect(),
        bottom: p.label(p.bottom()).to_string(),
        top: p.label(p.top()).to_string(),
    }
}

fn table_of(
    images: &[usize],
    src: &FiniteBoundedPoset,
    dst: &FiniteBoundedPoset,
) -> BTreeMap<String, String> {
    images
        .iter()
        .enumerate()
        .map(|(x, &y)| (src.label(x).to_string(), dst.label(y).to_string()))
        .collect()
}

/// Expanded, canonical form: explicit posets with covers in transitive-reduction order.
pub fn to_file(loaded: &Loaded) -> InstanceFile {
    let p = &loaded.p;
    let green = loaded.green.as_ref().map(|g| {
        (0..p.len())
            .filter(|&x| g[x])
            .map(|x| p.label(x).to_string())
            .collect()
    });
    let mut file = InstanceFile {
        schema: SCHEMA_VERSION,
        bruhat: None,
        p: Some(block_of(p)),
        q: None,
        green,
        f: None,
        i: None,
        j: None,
    };
    if let Some(inst) = &loaded.instance {
        file.q = Some(block_of(&inst.q));
        file.f = Some(table_of(&inst.f, &inst.p, &inst.q));
        file.i = Some(table_of(&inst.i, &inst.q, &inst.p));
        file.j = Some(table_of(&inst.j, &inst.q, &inst.p));
    }
    file
}
