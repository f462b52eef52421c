//! `strata validate|dim|monoid|enumerate`.

use std::io::Read;

use serde_json::{json, Value};

use lhur_core::strata::{
    enumerate_components, enumerate_graphs, generic_dimension, monoid_rank, rescaling_relations, stratum_dimension,
    to_dot, validate, HurwitzData, LevelGraph, Regime,
};

use crate::args::{DataArgs, GraphInput, StrataCommand};
use crate::error::CliError;
use crate::Rendered;

/// Reads one graph, a list of graphs, or an object with a `graphs` list.
pub fn read_graphs(input: &GraphInput) -> Result<Vec<LevelGraph>, CliError> {
    let mut src = String::new();
    match &input.file {
        Some(path) if path.as_os_str() != "-" => {
            src = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut src)
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    parse_graphs(&src)
}

pub fn parse_graphs(src: &str) -> Result<Vec<LevelGraph>, CliError> {
    let v: Value = serde_json::from_str(src).map_err(|e| CliError::Parse(format!("malformed JSON: {e}")))?;
    let items = match v {
        Value::Array(items) => items,
        Value::Object(mut obj) if obj.contains_key("graphs") => match obj.remove("graphs") {
            Some(Value::Array(items)) => items,
            _ => return Err(CliError::Schema("`graphs` must be a list".into())),
        },
        other => vec![other],
    };
    items
        .into_iter()
        .map(|item| serde_json::from_value(item).map_err(|e| CliError::Schema(format!("not a level graph: {e}"))))
        .collect()
}

fn regime(s: &str) -> Result<Regime, CliError> {
    match s {
        "mixed" => Ok(Regime::Mixed),
        "equicharacteristic" | "equichar" => Ok(Regime::Equicharacteristic),
        other => Err(CliError::Parse(format!("unknown regime '{other}'"))),
    }
}

pub fn hurwitz_data(d: &DataArgs) -> Result<HurwitzData, CliError> {
    let xi = if d.xi.is_empty() { vec![0; d.lambda.len()] } else { d.xi.clone() };
    if xi.len() != d.lambda.len() {
        return Err(CliError::Parse("--lambda and --xi need the same length".into()));
    }
    Ok(HurwitzData::new(d.p, d.h, d.g, d.lambda.clone(), xi, regime(&d.regime)?))
}

fn one_or_many(mut vals: Vec<Value>) -> Value {
    if vals.len() == 1 {
        vals.pop().expect("one element")
    } else {
        Value::Array(vals)
    }
}

fn dots(graphs: &[LevelGraph]) -> String {
    graphs.iter().map(to_dot).collect::<Vec<_>>().join("\n")
}

pub fn run(cmd: &StrataCommand) -> Result<Rendered, CliError> {
    match cmd {
        StrataCommand::Validate(input) => {
            let graphs = read_graphs(input)?;
            let mut vals = Vec::new();
            let mut text = Vec::new();
            for g in &graphs {
                let report = validate(g, None);
                let relations: Vec<String> = rescaling_relations(g).iter().map(|r| r.to_string()).collect();
                vals.push(json!({
                    "valid": report.valid,
                    "violations": report.violations,
                    "hurwitz": report.hurwitz,
                    "rescaling": relations,
                }));
                if report.valid {
                    text.push("valid".to_string());
                } else {
                    let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                    text.push(format!("invalid\n{}", lines.join("\n")));
                }
            }
            Ok(Rendered::new(one_or_many(vals), text.join("\n\n")).with_dot(dots(&graphs), input.dot))
        }
        StrataCommand::Dim(input) => {
            let graphs = read_graphs(input)?;
            let mut vals = Vec::new();
            let mut text = Vec::new();
            for g in &graphs {
                let l = stratum_dimension(g, None)?;
                text.push(format!(
                    "Mod^AS = {}, Mod^ex = {}, Mod^qu-ex = {}, total = {}",
                    l.mod_as, l.mod_ex, l.mod_qe, l.total
                ));
                vals.push(serde_json::to_value(&l).expect("ledger serializes"));
            }
            Ok(Rendered::new(one_or_many(vals), text.join("\n")).with_dot(dots(&graphs), input.dot))
        }
        StrataCommand::Monoid(input) => {
            let graphs = read_graphs(input)?;
            let mut vals = Vec::new();
            let mut text = Vec::new();
            for g in &graphs {
                let (rank, free) = monoid_rank(g, None)?;
                vals.push(json!({"rank": rank, "free": free}));
                text.push(format!("rank {rank}{}", if free { ", free" } else { "" }));
            }
            Ok(Rendered::new(one_or_many(vals), text.join("\n")).with_dot(dots(&graphs), input.dot))
        }
        StrataCommand::Enumerate {
            data,
            max_vertices,
            all,
            dot,
        } => {
            let a = hurwitz_data(data)?;
            let graphs = if *all {
                enumerate_graphs(&a, *max_vertices)?
            } else {
                enumerate_components(&a, *max_vertices)?
            };
            let generic = generic_dimension(&a).ok();
            let mut text = format!("{} graphs\n", graphs.len());
            for g in &graphs {
                let l = stratum_dimension(g, Some(&a))?;
                text.push_str(&format!(
                    "{} source components, {} levels, dimension {}\n",
                    g.source.vertices.len(),
                    1 - g.source.vertices.iter().map(|v| v.level).min().unwrap_or(0),
                    l.total
                ));
            }
            let out = json!({
                "data": a,
                "generic_dimension": generic,
                "components_only": !*all,
                "count": graphs.len(),
                "graphs": graphs,
            });
            Ok(Rendered::new(out, text.trim_end().to_string()).with_dot(dots(&graphs), *dot))
        }
    }
}
