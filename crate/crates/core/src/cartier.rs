//! The Cartier operator on P¹ and its twist for the relative Frobenius `x = y^p`.

use serde::Serialize;
use thiserror::Error;

use crate::ffield::{Fq, GaloisField};
use crate::linalg::Matrix;
use crate::ratfunc::{Divisor, Mobius, Place, Polynomial, RatError, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartierError {
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error("place {0} appears twice in the pattern")]
    DuplicatePlace(String),
    #[error("image of basis vector {column} leaves the expected target space")]
    DegreeBookkeeping { column: usize },
    #[error("integration needs a form in the kernel of the Cartier operator")]
    NotExact,
    #[error("{0}")]
    Degenerate(String),
}

/// `ω = f dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub f: RationalFunction,
}

impl Differential {
    pub fn new(f: RationalFunction) -> Self {
        Differential { f }
    }

    /// The exact differential `dh`.
    pub fn exact(h: &RationalFunction) -> Self {
        Differential { f: h.derivative() }
    }

    pub fn order_at(&self, at: Place) -> Result<i64, RatError> {
        let o = self.f.order_at(at)?;
        Ok(if at.is_infinity() { o - 2 } else { o })
    }

    pub fn divisor(&self) -> Result<Divisor, RatError> {
        let mut d = self.f.divisor()?;
        d.add_at(Place::Infinity, -2);
        Ok(d)
    }
}

/// `ψ = f dy/dx` for the relative Frobenius `x = y^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariantForm {
    pub f: RationalFunction,
}

impl BivariantForm {
    pub fn new(f: RationalFunction) -> Self {
        BivariantForm { f }
    }

    pub fn p(&self) -> u32 {
        self.f.field().p()
    }

    /// Plain order; at infinity the frame `dy/dx` contributes `2p - 2`.
    pub fn order_at(&self, at: Place) -> Result<i64, RatError> {
        let o = self.f.order_at(at)?;
        Ok(if at.is_infinity() { o + 2 * self.p() as i64 - 2 } else { o })
    }

    pub fn divisor(&self) -> Result<Divisor, RatError> {
        let mut d = self.f.divisor()?;
        d.add_at(Place::Infinity, 2 * self.p() as i64 - 2);
        Ok(d)
    }

    /// The form `(d_D x)^∨ ⊗ d_C h`.
    pub fn exact(h: &RationalFunction) -> Self {
        BivariantForm { f: h.derivative() }
    }

    /// The normal form `(d_D w^p)^∨ ⊗ u (d_C h + w^{p-1} d_C w)`.
    pub fn quasi_exact(u: Fq, h: &RationalFunction, w: &RationalFunction) -> Result<Self, RatError> {
        let p = w.field().p() as i64;
        let dw = w.derivative();
        let inner = h.derivative().add(&w.pow(p - 1)?.mul(&dw));
        let f = inner.checked_div(&dw.pow(p)?)?.scale(u);
        Ok(BivariantForm { f })
    }

    /// The same form written in the coordinate `z` with `y = M(z)`.
    pub fn chart_change(&self, m: &Mobius) -> Self {
        let p = self.p() as i64;
        let dm = m.derivative();
        let f = self
            .f
            .compose_mobius(m)
            .mul(&dm.pow(1 - p).expect("Möbius derivative is a unit"));
        BivariantForm { f }
    }
}

/// The unique `(f_0, …, f_{p-1})` with `f = Σ f_i^p y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPowerDecomposition {
    pub parts: Vec<RationalFunction>,
}

impl PPowerDecomposition {
    pub fn recombine(&self) -> RationalFunction {
        let field = self.parts[0].field().clone();
        let p = field.p() as i64;
        let y = RationalFunction::var(&field);
        self.parts
            .iter()
            .enumerate()
            .fold(RationalFunction::zero(&field), |acc, (i, fi)| {
                acc.add(&fi.pow(p).expect("nonnegative").mul(&y.pow(i as i64).expect("nonnegative")))
            })
    }
}

/// Residue-class polynomials of `n`: `n = Σ_i (N_i)^p y^i`.
fn residue_parts(field: &GaloisField, n: &Polynomial) -> Vec<Polynomial> {
    let p = field.p() as usize;
    (0..p)
        .map(|i| {
            let coeffs: Vec<Fq> = n
                .coeffs()
                .iter()
                .skip(i)
                .step_by(p)
                .map(|&c| field.pth_root(c))
                .collect();
            Polynomial::new(field, coeffs)
        })
        .collect()
}

pub fn ppower_decompose(f: &RationalFunction) -> PPowerDecomposition {
    let field = f.field();
    let p = field.p() as u64;
    let b = f.den();
    let n = f.num().mul(&b.pow(p - 1));
    let parts = residue_parts(field, &n)
        .into_iter()
        .map(|ni| RationalFunction::new(ni, b.clone()).expect("nonzero den"))
        .collect();
    PPowerDecomposition { parts }
}

/// Only the top part `f_{p-1}`, without building the others.
fn top_part(f: &RationalFunction) -> RationalFunction {
    let field = f.field();
    let p = field.p() as usize;
    let b = f.den();
    let n = f.num().mul(&b.pow(p as u64 - 1));
    let coeffs: Vec<Fq> = n
        .coeffs()
        .iter()
        .skip(p - 1)
        .step_by(p)
        .map(|&c| field.pth_root(c))
        .collect();
    RationalFunction::new(Polynomial::new(field, coeffs), b.clone()).expect("nonzero den")
}

pub fn cartier(w: &Differential) -> Differential {
    Differential { f: top_part(&w.f) }
}

pub fn twisted_cartier(psi: &BivariantForm) -> RationalFunction {
    top_part(&psi.f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Exact,
    QuasiExact,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Exact => "exact",
            Classification::QuasiExact => "quasi-exact",
            Classification::Neither => "neither",
        }
    }
}

/// Classification together with the quasi-exactness witness.
pub fn classify(psi: &BivariantForm) -> (Classification, Option<Fq>) {
    let tc = twisted_cartier(psi);
    if tc.is_zero() {
        (Classification::Exact, None)
    } else if let Some(c) = tc.as_constant() {
        (Classification::QuasiExact, Some(c))
    } else {
        (Classification::Neither, None)
    }
}

pub fn is_exact(psi: &BivariantForm) -> bool {
    twisted_cartier(psi).is_zero()
}

/// The constant value of the twisted Cartier operator when it is a nonzero constant.
pub fn is_quasi_exact(psi: &BivariantForm) -> Option<Fq> {
    match classify(psi) {
        (Classification::QuasiExact, w) => w,
        _ => None,
    }
}

/// An antiderivative `h` with `dh = ω`, for `ω` in the kernel of the Cartier operator.
pub fn integrate(w: &Differential) -> Result<RationalFunction, CartierError> {
    let dec = ppower_decompose(&w.f);
    let field = w.f.field().clone();
    let p = field.p() as usize;
    if !dec.parts[p - 1].is_zero() {
        return Err(CartierError::NotExact);
    }
    let mut h = RationalFunction::zero(&field);
    for (i, fi) in dec.parts.iter().enumerate().take(p - 1) {
        if fi.is_zero() {
            continue;
        }
        let c = field.inv(field.from_int(i as i64 + 1)).expect("i + 1 < p");
        let mono = RationalFunction::from_poly(Polynomial::monomial(&field, c, i + 1));
        h = h.add(&fi.pow(p as i64)?.mul(&mono));
    }
    Ok(h)
}

/// Matrix of the twisted Cartier operator on global sections
/// `H⁰(ω_F(Σ mᵢpᵢ)) → H⁰(O(Σ ⌈mᵢ/p⌉ pᵢ))`.
///
/// Source basis: `y^j / Q dy/dx` with `Q = Π_{finite}(y - pᵢ)^{mᵢ}`, `0 ≤ j ≤ 2p-2+Σmᵢ`.
/// Target basis: `y^i / Q'` with `Q' = Π_{finite}(y - pᵢ)^{⌈mᵢ/p⌉}`, `0 ≤ i ≤ Σ⌈mᵢ/p⌉`.
/// The operator is `p^{-1}`-semilinear; `semilinearity_exponent` records the `-1`.
#[derive(Clone, Debug)]
pub struct GlobalTcMatrix {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Matrix,
    pub semilinearity_exponent: i32,
    pub rank: usize,
    pub surjective: bool,
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

pub fn global_tc_matrix(field: &GaloisField, pattern: &[(Place, i64)]) -> Result<GlobalTcMatrix, CartierError> {
    let p = field.p() as i64;
    for (i, (a, _)) in pattern.iter().enumerate() {
        if pattern[..i].iter().any(|(b, _)| b == a) {
            return Err(CartierError::DuplicatePlace(a.format(field)));
        }
    }
    let total: i64 = pattern.iter().map(|x| x.1).sum();
    let d = 2 * p - 2 + total;
    let d_target: i64 = pattern.iter().map(|&(_, m)| ceil_div(m, p)).sum();
    let source_dim = (d + 1).max(0) as usize;
    let target_dim = (d_target + 1).max(0) as usize;

    let mut q_pos = Polynomial::one(field);
    let mut q_neg = Polynomial::one(field);
    let mut q_target_pos = Polynomial::one(field);
    let mut q_target_neg = Polynomial::one(field);
    for &(a, m) in pattern {
        let Place::Finite(a) = a else { continue };
        let lin = Polynomial::linear(field, a);
        if m > 0 {
            q_pos = q_pos.mul(&lin.pow(m as u64));
        } else if m < 0 {
            q_neg = q_neg.mul(&lin.pow((-m) as u64));
        }
        let c = ceil_div(m, p);
        if c > 0 {
            q_target_pos = q_target_pos.mul(&lin.pow(c as u64));
        } else if c < 0 {
            q_target_neg = q_target_neg.mul(&lin.pow((-c) as u64));
        }
    }
    // f_j = y^j q_neg / q_pos, so tc(f_j) = top residue part of y^j B over q_pos.
    let b = q_neg.mul(&q_pos.pow(p as u64 - 1));
    let target_over = RationalFunction::new(q_target_pos, q_target_neg)?;
    let mut columns = Vec::with_capacity(source_dim);
    for j in 0..source_dim {
        let shifted = b.shift(j);
        let coeffs: Vec<Fq> = shifted
            .coeffs()
            .iter()
            .skip(p as usize - 1)
            .step_by(p as usize)
            .map(|&c| field.pth_root(c))
            .collect();
        let tc = RationalFunction::new(Polynomial::new(field, coeffs), q_pos.clone())?;
        let image = tc.mul(&target_over);
        if !image.is_polynomial() {
            return Err(CartierError::DegreeBookkeeping { column: j });
        }
        let poly = image.num();
        if poly.deg().is_some_and(|dg| dg as i64 > d_target) {
            return Err(CartierError::DegreeBookkeeping { column: j });
        }
        columns.push((0..target_dim).map(|i| poly.coeff(i)).collect::<Vec<_>>());
    }
    let matrix = Matrix::from_columns(field, target_dim, &columns);
    let linear = matrix.map(|c| field.frobenius(c));
    let rank = linear.rank();
    Ok(GlobalTcMatrix {
        source_dim,
        target_dim,
        matrix,
        semilinearity_exponent: -1,
        rank,
        surjective: rank == target_dim,
    })
}
