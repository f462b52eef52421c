//! `cartier`, `tc`, `exact`, `quasi-exact` and `ascover`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use lhur_core::ascover::ArtinSchreierCover;
use lhur_core::cartier::{cartier, classify, integrate, twisted_cartier, BivariantForm, Classification, Differential};
use lhur_core::expr::{parse_binding, parse_rational};
use lhur_core::{Fq, GaloisField, Place, RationalFunction};

use crate::args::{AscoverArgs, FormArgs};
use crate::error::CliError;
use crate::Rendered;

pub fn field(designator: &str) -> Result<GaloisField, CliError> {
    Ok(GaloisField::from_designator(designator)?)
}

pub fn bindings(f: &GaloisField, bind: &[String]) -> Result<BTreeMap<String, Fq>, CliError> {
    let mut out = BTreeMap::new();
    for b in bind {
        let (k, v) = parse_binding(f, b)?;
        out.insert(k, v);
    }
    Ok(out)
}

pub fn place_json(p: Place) -> Value {
    match p {
        Place::Finite(a) => json!(a.index()),
        Place::Infinity => json!("inf"),
    }
}

pub fn rat_json(r: &RationalFunction) -> Value {
    let idx = |c: &[Fq]| c.iter().map(|x| x.index()).collect::<Vec<_>>();
    json!({"num": idx(r.num().coeffs()), "den": idx(r.den().coeffs())})
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormOp {
    Cartier,
    Tc,
    Exact,
    QuasiExact,
}

pub fn run_form(op: FormOp, args: &FormArgs) -> Result<Rendered, CliError> {
    let f = field(&args.field.field)?;
    let binds = bindings(&f, &args.bind)?;
    let input = parse_rational(&f, &args.expr, &args.var, &binds)?;
    let var = args.var.as_str();
    let psi = BivariantForm::new(input.clone());
    let result = match op {
        FormOp::Cartier => cartier(&Differential::new(input.clone())).f,
        _ => twisted_cartier(&psi),
    };
    let (class, unit) = classify(&psi);
    let witness = match (class, op) {
        (Classification::QuasiExact, _) => unit.map(|u| json!(u.index())),
        (Classification::Exact, _) => {
            let h = integrate(&Differential::new(input.clone()))?;
            Some(json!(h.render(var)))
        }
        _ => None,
    };
    let mut out = json!({
        "input": input.render(var),
        "field": f.to_string(),
        "result": result.render(var),
        "result_coeffs": rat_json(&result),
        "classification": class.as_str(),
        "witness": witness.clone().unwrap_or(Value::Null),
    });
    match op {
        FormOp::Exact => out["exact"] = json!(class == Classification::Exact),
        FormOp::QuasiExact => out["quasi_exact"] = json!(class == Classification::QuasiExact),
        _ => {}
    }
    let label = match op {
        FormOp::Cartier => "cartier",
        _ => "tc",
    };
    let mut text = format!("{label}({}) = {}\nclassification: {}", input.render(var), result.render(var), class.as_str());
    match (class, unit) {
        (Classification::QuasiExact, Some(u)) => text.push_str(&format!("\nwitness: {}", f.format(u))),
        (Classification::Exact, _) => {
            if let Some(w) = witness {
                text.push_str(&format!("\nantiderivative: {}", w.as_str().unwrap_or_default()));
            }
        }
        _ => {}
    }
    Ok(Rendered::new(out, text))
}

pub fn run_ascover(args: &AscoverArgs) -> Result<Rendered, CliError> {
    let f = field(&args.field.field)?;
    let binds = bindings(&f, &args.bind)?;
    let rhs = parse_rational(&f, &args.rhs, "x", &binds)?;
    let marks = args
        .mark
        .iter()
        .map(|m| Place::parse(&f, m))
        .collect::<Result<Vec<_>, _>>()?;
    let cover = ArtinSchreierCover::from_equation(&rhs)?.with_marks(marks)?;
    let trace = cover.trace_form()?;
    let dim = cover.moduli_dimension()?;
    let ram: Vec<Value> = cover
        .ramification_divisor()
        .iter()
        .map(|(p, n)| json!({"place": place_json(*p), "order": n}))
        .collect();
    let orders: Vec<Value> = trace
        .orders
        .iter()
        .map(|o| json!({"branch": place_json(o.branch), "conductor": o.conductor, "plain": o.plain, "log": o.log}))
        .collect();
    let out = json!({
        "field": f.to_string(),
        "rhs": cover.rhs().render("x"),
        "branch_points": cover.branch_points().iter().map(|&p| place_json(p)).collect::<Vec<_>>(),
        "marked": cover.marked_unramified().iter().map(|&p| place_json(p)).collect::<Vec<_>>(),
        "conductors": cover.conductors(),
        "genus": cover.genus(),
        "ramification_divisor": ram,
        "trace_form": {
            "coefficient": trace.coefficient.render("x"),
            "orders": orders,
        },
        "moduli_dimension": dim,
    });
    let mut text = format!(
        "y^{} - y = {}\ngenus: {}\nmoduli dimension: {}\n",
        f.p(),
        cover.rhs().render("x"),
        cover.genus(),
        dim
    );
    for o in &trace.orders {
        text.push_str(&format!(
            "branch {}: conductor {}, trace order {} (log {})\n",
            o.branch.format(&f),
            o.conductor,
            o.plain,
            o.log
        ));
    }
    text.push_str(&format!("trace form: {} (dx)^∨ ⊗ dy", trace.coefficient.render("x")));
    Ok(Rendered::new(out, text))
}
