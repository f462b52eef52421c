//! The genus-one cover of a four-pointed line in characteristic 2, end to end.

use serde::Serialize;

use lhur_core::ascover::ArtinSchreierCover;
use lhur_core::cartier::{classify, is_exact, twisted_cartier, BivariantForm, Classification};
use lhur_core::strata::{enumerate_components, named, stratum_dimension, HurwitzData};
use lhur_core::{Fq, GaloisField, Polynomial, RationalFunction};

use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Example6Report {
    pub field: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Example6Report {
    pub fn text(&self) -> String {
        let mut s = format!("field {}\n", self.field);
        for c in &self.checks {
            s.push_str(&format!(
                "({}) {} {}: {}\n",
                c.id,
                if c.passed { "PASS" } else { "FAIL" },
                c.claim,
                c.detail
            ));
        }
        s.push_str(if self.passed { "all checks passed" } else { "some checks failed" });
        s
    }
}

fn rat(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `(a)` and `(b)`: over every `(λ, μ)`, the twisted Cartier operator of
/// `y(y-1)(y-λ)/(y-μ)^2 dy/dx` is `(y-√λ)/(y-μ)`, quasi-exact exactly when `μ = √λ`.
fn family_checks(f: &GaloisField) -> (Check, Check) {
    let mut bad_tc = Vec::new();
    let mut bad_class = Vec::new();
    let mut total = 0;
    for l in f.elements() {
        let num = Polynomial::from_roots(f, &[Fq::ZERO, Fq::ONE, l]);
        let sqrt_l = f.pth_root(l);
        for mu in f.elements() {
            total += 1;
            let den = Polynomial::linear(f, mu).pow(2);
            let psi = BivariantForm::new(rat(num.clone(), den));
            let tc = twisted_cartier(&psi);
            let expected = rat(Polynomial::linear(f, sqrt_l), Polynomial::linear(f, mu));
            if tc != expected {
                bad_tc.push((l, mu));
            }
            let qe = classify(&psi).0 == Classification::QuasiExact;
            if qe != (mu == sqrt_l) {
                bad_class.push((l, mu));
            }
        }
    }
    let show = |v: &[(Fq, Fq)]| {
        v.iter()
            .take(3)
            .map(|&(l, m)| format!("λ={}, μ={}", f.format(l), f.format(m)))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let a = Check {
        id: "a",
        claim: "tc(y(y-1)(y-λ)/(y-μ)^2 dy/dx) = (y-√λ)/(y-μ)",
        passed: bad_tc.is_empty(),
        detail: if bad_tc.is_empty() {
            format!("holds for all {total} pairs (λ, μ)")
        } else {
            format!("fails for {} pairs, e.g. {}", bad_tc.len(), show(&bad_tc))
        },
    };
    let b = Check {
        id: "b",
        claim: "quasi-exact iff μ = √λ",
        passed: bad_class.is_empty(),
        detail: if bad_class.is_empty() {
            format!("{} quasi-exact pairs out of {total}", f.order())
        } else {
            format!("fails for {} pairs, e.g. {}", bad_class.len(), show(&bad_class))
        },
    };
    (a, b)
}

/// `(c)`: `y^2 + y = x^3`.
fn supersingular_check(f: &GaloisField) -> Result<Check, CliError> {
    let x3 = RationalFunction::from_poly(Polynomial::monomial(f, Fq::ONE, 3));
    let cover = ArtinSchreierCover::from_equation(&x3)?;
    let trace = cover.trace_form()?;
    let o = &trace.orders[0];
    let passed = cover.conductors() == vec![4] && cover.genus() == 1 && trace.orders.len() == 1 && o.plain == 4;
    Ok(Check {
        id: "c",
        claim: "y^2+y = x^3 has e = (4), h = 1 and trace form of order 4",
        passed,
        detail: format!(
            "conductors {:?}, genus {}, trace order {} at infinity (log frame {})",
            cover.conductors(),
            cover.genus(),
            o.plain,
            o.log
        ),
    })
}

/// `(d)`: `y^2 - y = 1/x + 1/(x-a)` for every `a ≠ 0`.
fn j_family_check(f: &GaloisField) -> Result<Check, CliError> {
    let mut bad = Vec::new();
    for a in f.elements().filter(|a| !a.is_zero()) {
        let inv = |b: Fq| rat(Polynomial::one(f), Polynomial::linear(f, b));
        let cover = ArtinSchreierCover::from_equation(&inv(Fq::ZERO).add(&inv(a)))?;
        let dim = cover.moduli_dimension()?;
        if cover.genus() != 1 || dim != 1 || cover.conductors() != vec![2, 2] {
            bad.push(f.format(a));
        }
    }
    Ok(Check {
        id: "d",
        claim: "y^2-y = 1/x + 1/(x-a) has h = 1 and moduli dimension 1",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("conductors (2, 2) for all {} values of a ≠ 0", f.order() - 1)
        } else {
            format!("fails for a in {{{}}}", bad.join(", "))
        },
    })
}

/// `(e)`: `y^2 (y-1)^2 dy/dx`, the pole at infinity being implicit.
fn exact_check(f: &GaloisField) -> Check {
    let num = Polynomial::from_roots(f, &[Fq::ZERO, Fq::ZERO, Fq::ONE, Fq::ONE]);
    let psi = BivariantForm::new(RationalFunction::from_poly(num));
    let exact = is_exact(&psi);
    Check {
        id: "e",
        claim: "y^2(y-1)^2/(y-∞)^2 dy/dx is exact",
        passed: exact,
        detail: format!("twisted Cartier image {}", twisted_cartier(&psi).render("y")),
    }
}

fn data() -> HurwitzData {
    HurwitzData::mixed(2, 1, 0, vec![2, 2, 2, 2])
}

/// `(f)`: dimensions and monoid ranks of the three boundary graphs.
fn strata_check(perturb: bool) -> Check {
    let mut d1 = named::delta_1_0();
    if perturb {
        d1.source.edges[0].slope = 2;
    }
    let graphs = [
        ("Δ_{1;0}", d1, 1, 1),
        ("Δ_{1;0;0,0}", named::delta_1_0_00(), 0, 2),
        ("Δ_{0,0;0;0}", named::delta_00_0_0(), 0, 2),
    ];
    let a = data();
    let mut parts = Vec::new();
    let mut passed = true;
    for (name, g, dim, rank) in graphs {
        match stratum_dimension(&g, Some(&a)) {
            Ok(l) => {
                let ok = l.total == dim && l.monoid_rank == rank && l.free;
                passed &= ok;
                parts.push(format!("{name}: dim {}, rank {}", l.total, l.monoid_rank));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    Check {
        id: "f",
        claim: "stratum dimensions 1, 0, 0 and monoid ranks 1, 2, 2",
        passed,
        detail: parts.join("; "),
    }
}

/// `(g)`: irreducible components of the special fibre.
fn components_check() -> Result<Check, CliError> {
    let comps = enumerate_components(&data(), 4)?;
    let shapes: Vec<String> = comps
        .iter()
        .map(|g| {
            let mut genera: Vec<String> = g.source.vertices.iter().map(|v| v.genus.to_string()).collect();
            genera.sort();
            format!("[{}]", genera.join(","))
        })
        .collect();
    Ok(Check {
        id: "g",
        claim: "four irreducible components for A = (1, 0, 4, (2,2,2,2))",
        passed: comps.len() == 4,
        detail: format!("{} components with component genera {}", comps.len(), shapes.join(" ")),
    })
}

pub fn run_example6(designator: &str, perturb: bool) -> Result<Example6Report, CliError> {
    let f = GaloisField::from_designator(designator)?;
    if f.p() != 2 {
        return Err(CliError::Domain(format!("the example lives in characteristic 2, not over {f}")));
    }
    let (a, b) = family_checks(&f);
    let checks = vec![
        a,
        b,
        supersingular_check(&f)?,
        j_family_check(&f)?,
        exact_check(&f),
        strata_check(perturb),
        components_check()?,
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(Example6Report {
        field: f.to_string(),
        checks,
        passed,
    })
}
