//! `loci search|tangent|formula`.

use serde_json::{json, Value};

use lhur_core::loci::{
    default_pins, dimension_formula, locus_search, tangent_dimension, Kind, MarkingConfig, ZeroPolePattern,
};
use lhur_core::{GaloisField, Place};

use crate::args::{KindArg, LociCommand, PatternArgs};
use crate::error::CliError;
use crate::forms::{field, place_json};
use crate::Rendered;

fn kind(k: KindArg) -> Kind {
    match k {
        KindArg::Exact => Kind::Exact,
        KindArg::QuasiExact => Kind::QuasiExact,
    }
}

pub fn parse_pattern(p: u32, s: &str) -> Result<ZeroPolePattern, CliError> {
    let m = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Parse(format!("bad pattern entry '{t}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ZeroPolePattern::new(p, m)?)
}

/// `0,1,inf` pins the last markings in order; `i=q,…` pins marking `i` at `q`.
pub fn parse_pins(f: &GaloisField, n: usize, s: Option<&str>) -> Result<Vec<(usize, Place)>, CliError> {
    let Some(s) = s else {
        return Ok(default_pins(n));
    };
    let items: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    if items.iter().all(|t| t.contains('=')) {
        items
            .iter()
            .map(|t| {
                let (i, q) = t.split_once('=').expect("checked");
                let i = i.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("bad pin index in '{t}'")))?;
                Ok((i, Place::parse(f, q.trim())?))
            })
            .collect()
    } else if items.iter().any(|t| t.contains('=')) {
        Err(CliError::Parse("pins mix indexed and positional forms".into()))
    } else {
        if items.len() > n {
            return Err(CliError::Parse(format!("{} pins for {n} markings", items.len())));
        }
        let start = n - items.len();
        items
            .iter()
            .enumerate()
            .map(|(j, q)| Ok((start + j, Place::parse(f, q)?)))
            .collect()
    }
}

fn config_json(c: &MarkingConfig) -> Value {
    Value::Array(c.points.iter().map(|&p| place_json(p)).collect())
}

fn config_text(f: &GaloisField, c: &MarkingConfig) -> String {
    let pts: Vec<String> = c.points.iter().map(|p| p.format(f)).collect();
    format!("({})", pts.join(", "))
}

fn tangent_json(f: &GaloisField, c: &MarkingConfig, m: &ZeroPolePattern, k: Kind) -> Result<(Value, String), CliError> {
    let r = tangent_dimension(f, c, m, k)?;
    let mut v = serde_json::to_value(&r).expect("report serializes");
    v["config"] = config_json(c);
    v["agrees"] = json!(r.dimension == r.formula);
    let text = format!(
        "{}: tangent dimension {}, formula {}, first-order check {}",
        config_text(f, c),
        r.dimension,
        r.formula,
        if r.first_order_ok { "ok" } else { "FAILED" }
    );
    Ok((v, text))
}

pub fn run(cmd: &LociCommand) -> Result<Rendered, CliError> {
    let setup = |a: &PatternArgs| -> Result<(GaloisField, ZeroPolePattern, Kind), CliError> {
        let f = field(&a.field.field)?;
        let m = parse_pattern(f.p(), &a.pattern)?;
        Ok((f, m, kind(a.kind)))
    };
    match cmd {
        LociCommand::Search { pattern, pin } => {
            let (f, m, k) = setup(pattern)?;
            let pins = parse_pins(&f, m.len(), pin.as_deref())?;
            let found = locus_search(&f, &m, k, &pins)?;
            let out = json!({
                "field": f.to_string(),
                "pattern": m.m,
                "kind": k.as_str(),
                "pins": pins.iter().map(|&(i, q)| json!([i, place_json(q)])).collect::<Vec<_>>(),
                "count": found.len(),
                "configs": found.iter().map(config_json).collect::<Vec<_>>(),
            });
            let mut text = format!("{} configurations\n", found.len());
            for c in &found {
                text.push_str(&config_text(&f, c));
                text.push('\n');
            }
            Ok(Rendered::new(out, text.trim_end().to_string()))
        }
        LociCommand::Tangent { pattern, config, pin } => {
            let (f, m, k) = setup(pattern)?;
            let configs = match config {
                Some(s) => {
                    let pts = s
                        .split(',')
                        .map(|q| Place::parse(&f, q.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    vec![MarkingConfig::new(pts)?]
                }
                None => {
                    let pins = parse_pins(&f, m.len(), pin.as_deref())?;
                    locus_search(&f, &m, k, &pins)?
                }
            };
            let mut vals = Vec::new();
            let mut lines = Vec::new();
            for c in &configs {
                let (v, t) = tangent_json(&f, c, &m, k)?;
                vals.push(v);
                lines.push(t);
            }
            let out = json!({
                "field": f.to_string(),
                "pattern": m.m,
                "kind": k.as_str(),
                "formula": dimension_formula(&m, k),
                "points": vals,
            });
            Ok(Rendered::new(out, lines.join("\n")))
        }
        LociCommand::Formula { pattern } => {
            let (f, m, k) = setup(pattern)?;
            let d = dimension_formula(&m, k);
            let out = json!({"field": f.to_string(), "pattern": m.m, "kind": k.as_str(), "dimension": d});
            Ok(Rendered::new(out, format!("dimension {d}")))
        }
    }
}
