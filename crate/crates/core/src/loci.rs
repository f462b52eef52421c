//! Exact and quasi-exact loci of marked points on P¹: membership, brute-force
//! search over a finite field, and first-order tangent spaces.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cartier::BivariantForm;
use crate::dual::DualPoly;
use crate::ffield::{Fq, GaloisField};
use crate::linalg::Matrix;
use crate::ratfunc::{Mobius, Place, Polynomial, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LociError {
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("markings must be pairwise distinct")]
    Repeated,
    #[error("configuration has {got} points but the pattern has length {want}")]
    Length { got: usize, want: usize },
    #[error("configuration is not in the {0} locus")]
    NotInLocus(&'static str),
    #[error("invalid pin: {0}")]
    BadPin(String),
    #[error("search space of {0} configurations is too large")]
    Infeasible(u128),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Exact,
    QuasiExact,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Exact => "exact",
            Kind::QuasiExact => "quasi-exact",
        }
    }
}

/// Orders `m_1, …, m_n` with `Σ m_i = 2p - 2`; negative entries are poles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZeroPolePattern {
    pub p: u32,
    pub m: Vec<i64>,
}

impl ZeroPolePattern {
    pub fn new(p: u32, m: Vec<i64>) -> Result<Self, LociError> {
        let s: i64 = m.iter().sum();
        if s != 2 * p as i64 - 2 {
            return Err(LociError::Pattern(format!("entries sum to {s}, expected {}", 2 * p - 2)));
        }
        Ok(ZeroPolePattern { p, m })
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn floor_sum(&self) -> i64 {
        let p = self.p as i64;
        self.m.iter().map(|&x| x.div_euclid(p)).sum()
    }

    /// Indices with `p | m_i`.
    pub fn divisible_indices(&self) -> Vec<usize> {
        let p = self.p as i64;
        (0..self.m.len()).filter(|&i| self.m[i] % p == 0).collect()
    }
}

/// `n - 4 + Σ⌊m_i/p⌋` (exact) or `n - 3 + Σ⌊m_i/p⌋` (quasi-exact).
pub fn dimension_formula(m: &ZeroPolePattern, kind: Kind) -> i64 {
    let base = match kind {
        Kind::Exact => 4,
        Kind::QuasiExact => 3,
    };
    m.len() as i64 - base + m.floor_sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkingConfig {
    pub points: Vec<Place>,
}

impl MarkingConfig {
    pub fn new(points: Vec<Place>) -> Result<Self, LociError> {
        for (i, a) in points.iter().enumerate() {
            if points[..i].contains(a) {
                return Err(LociError::Repeated);
            }
        }
        Ok(MarkingConfig { points })
    }

    pub fn apply(&self, m: &Mobius) -> Self {
        MarkingConfig {
            points: self.points.iter().map(|&p| m.apply(p)).collect(),
        }
    }
}

/// Numerator and denominator of `Π_{finite} (y - p_i)^{m_i}`.
fn form_parts(field: &GaloisField, c: &MarkingConfig, m: &ZeroPolePattern) -> (Polynomial, Polynomial) {
    let mut num = Polynomial::one(field);
    let mut den = Polynomial::one(field);
    for (&pt, &mi) in c.points.iter().zip(&m.m) {
        let Place::Finite(a) = pt else { continue };
        let lin = Polynomial::linear(field, a);
        if mi > 0 {
            num = num.mul(&lin.pow(mi as u64));
        } else if mi < 0 {
            den = den.mul(&lin.pow((-mi) as u64));
        }
    }
    (num, den)
}

/// The form `Π (y - p_i)^{m_i} dy/dx`, dropping the factor of a marking at infinity.
pub fn locus_form(field: &GaloisField, c: &MarkingConfig, m: &ZeroPolePattern) -> Result<BivariantForm, LociError> {
    check_shape(c, m)?;
    let (num, den) = form_parts(field, c, m);
    Ok(BivariantForm::new(RationalFunction::new(num, den).expect("nonzero den")))
}

fn check_shape(c: &MarkingConfig, m: &ZeroPolePattern) -> Result<(), LociError> {
    if c.points.len() != m.len() {
        return Err(LociError::Length {
            got: c.points.len(),
            want: m.len(),
        });
    }
    MarkingConfig::new(c.points.clone()).map(|_| ())
}

/// Relative Cartier data of `num/den`: the residue-class-(p-1) coefficients of
/// `num·den^{p-1}` (not rooted) and the Frobenius twist of `den`. The twisted
/// Cartier operator is the coefficientwise p-th root of their quotient.
fn relative_top(field: &GaloisField, num: &Polynomial, den: &Polynomial) -> (Polynomial, Polynomial) {
    let p = field.p() as usize;
    let n = num.mul(&den.pow(p as u64 - 1));
    let r: Vec<Fq> = n.coeffs().iter().skip(p - 1).step_by(p).copied().collect();
    let b: Vec<Fq> = den.coeffs().iter().map(|&c| field.frobenius(c)).collect();
    (Polynomial::new(field, r), Polynomial::new(field, b))
}

/// Whether `r` is a constant multiple of `b`, returning the constant.
fn constant_multiple(r: &Polynomial, b: &Polynomial) -> Option<Fq> {
    if r.is_zero() {
        return Some(Fq::ZERO);
    }
    if r.deg() != b.deg() {
        return None;
    }
    let f = r.field();
    let c = f.div(r.lead(), b.lead()).ok()?;
    if b.scale(c) == *r {
        Some(c)
    } else {
        None
    }
}

fn member_parts(field: &GaloisField, num: &Polynomial, den: &Polynomial, kind: Kind) -> bool {
    let (r, b) = relative_top(field, num, den);
    match kind {
        Kind::Exact => r.is_zero(),
        Kind::QuasiExact => !r.is_zero() && constant_multiple(&r, &b).is_some(),
    }
}

pub fn locus_membership(field: &GaloisField, c: &MarkingConfig, m: &ZeroPolePattern, kind: Kind) -> Result<bool, LociError> {
    check_shape(c, m)?;
    let (num, den) = form_parts(field, c, m);
    Ok(member_parts(field, &num, &den, kind))
}

/// Default pins: the last three markings at `0, 1, ∞`.
pub fn default_pins(n: usize) -> Vec<(usize, Place)> {
    if n < 3 {
        return Vec::new();
    }
    vec![
        (n - 3, Place::Finite(Fq::ZERO)),
        (n - 2, Place::Finite(Fq::ONE)),
        (n - 1, Place::Infinity),
    ]
}

const SEARCH_LIMIT: u128 = 50_000_000;

/// All configurations in the locus over the field with the given markings pinned.
/// Results are sorted lexicographically.
pub fn locus_search(
    field: &GaloisField,
    m: &ZeroPolePattern,
    kind: Kind,
    pins: &[(usize, Place)],
) -> Result<Vec<MarkingConfig>, LociError> {
    let n = m.len();
    if pins.len() > 3 {
        return Err(LociError::BadPin("at most three markings can be pinned".into()));
    }
    for (i, &(idx, pl)) in pins.iter().enumerate() {
        if idx >= n {
            return Err(LociError::BadPin(format!("index {idx} out of range")));
        }
        if pins[..i].iter().any(|&(j, q)| j == idx || q == pl) {
            return Err(LociError::BadPin("pins must use distinct indices and places".into()));
        }
    }
    let places = Place::all(field);
    let free: Vec<usize> = (0..n).filter(|i| !pins.iter().any(|p| p.0 == *i)).collect();
    let size = (places.len() as u128).pow(free.len() as u32);
    if size > SEARCH_LIMIT {
        return Err(LociError::Infeasible(size));
    }
    let mut base = vec![Place::Infinity; n];
    for &(i, pl) in pins {
        base[i] = pl;
    }
    let pinned: Vec<Place> = pins.iter().map(|p| p.1).collect();

    let search_from = |first: Option<Place>| -> Vec<MarkingConfig> {
        let mut out = Vec::new();
        let mut cur = base.clone();
        let start = if first.is_some() { 1 } else { 0 };
        if let Some(pl) = first {
            cur[free[0]] = pl;
        }
        let mut used = pinned.clone();
        used.extend(first);
        rec(field, m, kind, &places, &free[start..], &mut cur, &mut used, &mut out);
        out
    };

    let mut out: Vec<MarkingConfig> = if free.is_empty() {
        search_from(None)
    } else {
        places
            .par_iter()
            .filter(|pl| !pinned.contains(pl))
            .map(|&pl| search_from(Some(pl)))
            .flatten()
            .collect()
    };
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    field: &GaloisField,
    m: &ZeroPolePattern,
    kind: Kind,
    places: &[Place],
    free: &[usize],
    cur: &mut Vec<Place>,
    used: &mut Vec<Place>,
    out: &mut Vec<MarkingConfig>,
) {
    let Some((&idx, rest)) = free.split_first() else {
        let c = MarkingConfig { points: cur.clone() };
        let (num, den) = form_parts(field, &c, m);
        if member_parts(field, &num, &den, kind) {
            out.push(c);
        }
        return;
    };
    for &pl in places {
        if used.contains(&pl) {
            continue;
        }
        cur[idx] = pl;
        used.push(pl);
        rec(field, m, kind, places, rest, cur, used, out);
        used.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    /// Indices of markings held fixed (a marking at infinity is always among them).
    pub pinned: Vec<usize>,
    /// Indices of markings deformed to first order.
    pub moved: Vec<usize>,
    pub dimension: i64,
    pub formula: i64,
    /// Rank of the first-order map from deformations to the twisted Cartier operator.
    pub tc_alpha_rank: usize,
    /// Dimension of the kernel of deformation ↦ first-order form.
    pub alpha_kernel_dim: usize,
    /// Moved markings whose order is divisible by p.
    pub divisible_moved: usize,
    /// Basis of the tangent space in the coordinates of `moved`.
    #[serde(skip)]
    pub kernel: Vec<Vec<Fq>>,
    /// Every kernel vector keeps the locus condition to first order over the dual numbers.
    pub first_order_ok: bool,
}

/// Pins the marking at infinity (if any) and then the last markings until three are fixed.
pub fn tangent_pins(c: &MarkingConfig) -> Vec<usize> {
    let n = c.points.len();
    let mut pinned: Vec<usize> = c.points.iter().position(|p| p.is_infinity()).into_iter().collect();
    for i in (0..n).rev() {
        if pinned.len() >= 3 {
            break;
        }
        if !pinned.contains(&i) {
            pinned.push(i);
        }
    }
    pinned.sort_unstable();
    pinned
}

pub fn tangent_dimension(
    field: &GaloisField,
    c: &MarkingConfig,
    m: &ZeroPolePattern,
    kind: Kind,
) -> Result<TangentReport, LociError> {
    check_shape(c, m)?;
    if c.points.len() < 3 {
        return Err(LociError::Pattern("at least three markings are needed".into()));
    }
    if !locus_membership(field, c, m, kind)? {
        return Err(LociError::NotInLocus(kind.as_str()));
    }
    let pinned = tangent_pins(c);
    let moved: Vec<usize> = (0..c.points.len()).filter(|i| !pinned.contains(i)).collect();
    let (num, den) = form_parts(field, c, m);

    // ψ_ε = ψ Π (1 - a_i ε/(y - p_i))^{m_i}, so the ε-term is Σ a_i (-m_i ψ/(y - p_i)).
    let lins: Vec<Polynomial> = moved
        .iter()
        .map(|&i| Polynomial::linear(field, c.points[i].finite().expect("moved markings are finite")))
        .collect();
    let common_den = lins.iter().fold(den.clone(), |acc, l| acc.mul(l));
    let alpha_nums: Vec<Polynomial> = moved
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let others = lins
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(num.clone(), |acc, (_, l)| acc.mul(l));
            others.scale(field.from_int(-m.m[i]))
        })
        .collect();
    let to_matrix = |polys: &[Polynomial]| -> Matrix {
        let rows = polys.iter().map(|q| q.coeffs().len()).max().unwrap_or(0);
        let cols: Vec<Vec<Fq>> = polys.iter().map(|q| (0..rows).map(|r| q.coeff(r)).collect()).collect();
        Matrix::from_columns(field, rows, &cols)
    };
    let alpha = to_matrix(&alpha_nums);
    let alpha_kernel_dim = moved.len() - alpha.rank();

    let mut tc_cols: Vec<Polynomial> = alpha_nums
        .iter()
        .map(|a| relative_top(field, a, &common_den).0)
        .collect();
    let tc_matrix = to_matrix(&tc_cols);
    let tc_alpha_rank = tc_matrix.rank();
    let (dimension, kernel) = match kind {
        Kind::Exact => {
            let k = tc_matrix.kernel();
            ((moved.len() - tc_alpha_rank) as i64, k)
        }
        Kind::QuasiExact => {
            let (_, twisted_den) = relative_top(field, &Polynomial::one(field), &common_den);
            tc_cols.push(twisted_den);
            let ext = to_matrix(&tc_cols);
            let r = ext.rank();
            let k: Vec<Vec<Fq>> = ext
                .kernel()
                .into_iter()
                .map(|mut v| {
                    v.pop();
                    v
                })
                .collect();
            (moved.len() as i64 - (r as i64 - 1), k)
        }
    };

    let first_order_ok = kernel.iter().all(|v| first_order_check(field, c, m, kind, &moved, v));
    Ok(TangentReport {
        pinned,
        moved: moved.clone(),
        dimension,
        formula: dimension_formula(m, kind),
        tc_alpha_rank,
        alpha_kernel_dim,
        divisible_moved: moved.iter().filter(|&&i| m.m[i] % m.p as i64 == 0).count(),
        kernel,
        first_order_ok,
    })
}

/// Recomputes the deformed form over `GF(q)[ε]` and checks the locus condition to first order.
pub fn first_order_check(
    field: &GaloisField,
    c: &MarkingConfig,
    m: &ZeroPolePattern,
    kind: Kind,
    moved: &[usize],
    a: &[Fq],
) -> bool {
    let p = field.p() as usize;
    let mut num = DualPoly::one(field);
    let mut den = DualPoly::one(field);
    for (i, (&pt, &mi)) in c.points.iter().zip(&m.m).enumerate() {
        let Place::Finite(b) = pt else { continue };
        let shift = moved.iter().position(|&j| j == i).map(|k| a[k]).unwrap_or(Fq::ZERO);
        let lin = DualPoly::linear(field, b, shift);
        if mi > 0 {
            num = num.mul(&lin.pow(mi as u64));
        } else if mi < 0 {
            den = den.mul(&lin.pow((-mi) as u64));
        }
    }
    let prod = num.mul(&den.pow(p as u64 - 1));
    let pick = |poly: Polynomial| -> Polynomial {
        Polynomial::new(field, poly.coeffs().iter().skip(p - 1).step_by(p).copied().collect())
    };
    let r0 = pick(prod.real_part());
    let r1 = pick(prod.eps_part());
    // (den)^p has no ε-term in characteristic p
    let b = Polynomial::new(field, den.real_part().coeffs().iter().map(|&x| field.frobenius(x)).collect());
    match kind {
        Kind::Exact => r0.is_zero() && r1.is_zero(),
        Kind::QuasiExact => {
            !r0.is_zero() && constant_multiple(&r0, &b).is_some() && constant_multiple(&r1, &b).is_some()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(i: u32) -> Place {
        Place::Finite(Fq(i))
    }

    #[test]
    fn formulas() {
        let a = ZeroPolePattern::new(2, vec![2, 2, -2]).unwrap();
        assert_eq!(dimension_formula(&a, Kind::Exact), 0);
        let b = ZeroPolePattern::new(2, vec![1, 1, 1, 1, -2]).unwrap();
        assert_eq!(dimension_formula(&b, Kind::QuasiExact), 1);
        let c = ZeroPolePattern::new(2, vec![1, 1]).unwrap();
        assert_eq!(dimension_formula(&c, Kind::Exact), -2);
        assert!(ZeroPolePattern::new(2, vec![1, 2]).is_err());
    }

    #[test]
    fn exact_point() {
        let f = GaloisField::new(2, 1).unwrap();
        let m = ZeroPolePattern::new(2, vec![2, 2, -2]).unwrap();
        let c = MarkingConfig::new(vec![fin(0), fin(1), Place::Infinity]).unwrap();
        assert!(locus_membership(&f, &c, &m, Kind::Exact).unwrap());
        let found = locus_search(&f, &m, Kind::Exact, &default_pins(3)).unwrap();
        assert_eq!(found, vec![c.clone()]);
        let t = tangent_dimension(&f, &c, &m, Kind::Exact).unwrap();
        assert_eq!(t.dimension, 0);
    }

    #[test]
    fn quasi_exact_family() {
        let f = GaloisField::new(2, 4).unwrap();
        let m = ZeroPolePattern::new(2, vec![1, 1, 1, 1, -2]).unwrap();
        let pins = [(0, fin(0)), (1, fin(1)), (3, Place::Infinity)];
        let found = locus_search(&f, &m, Kind::QuasiExact, &pins).unwrap();
        let mut expected: Vec<MarkingConfig> = f
            .elements()
            .filter(|l| l.index() > 1)
            .map(|l| MarkingConfig {
                points: vec![fin(0), fin(1), Place::Finite(l), Place::Infinity, Place::Finite(f.pth_root(l))],
            })
            .collect();
        expected.sort();
        assert_eq!(found, expected);
        for c in &found {
            let t = tangent_dimension(&f, c, &m, Kind::QuasiExact).unwrap();
            assert_eq!(t.dimension, 1);
            assert!(t.first_order_ok);
        }
    }

    #[test]
    fn empty_locus() {
        let f = GaloisField::new(2, 2).unwrap();
        let m = ZeroPolePattern::new(2, vec![1, 1]).unwrap();
        assert!(locus_search(&f, &m, Kind::Exact, &[]).unwrap().is_empty());
        let c = MarkingConfig::new(vec![fin(0), fin(1)]).unwrap();
        assert!(!locus_membership(&f, &c, &m, Kind::Exact).unwrap());
    }

    #[test]
    fn pins_and_errors() {
        let c = MarkingConfig::new(vec![fin(0), Place::Infinity, fin(2), fin(3), fin(1)]).unwrap();
        assert_eq!(tangent_pins(&c), vec![1, 3, 4]);
        assert_eq!(MarkingConfig::new(vec![fin(1), fin(1)]), Err(LociError::Repeated));
    }
}
