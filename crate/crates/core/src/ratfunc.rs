//! Univariate polynomials and rational functions over GF(p^k), with places
//! and divisors on the projective line.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{FieldError, Fq, GaloisField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero function has no order")]
    ZeroFunction,
    #[error("denominator factor {0} does not split over the field")]
    NotSplit(String),
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: GaloisField,
    coeffs: Vec<Fq>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("y"))
    }
}

impl Polynomial {
    pub fn new(field: &GaloisField, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &GaloisField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &GaloisField) -> Self {
        Self::constant(field, Fq::ONE)
    }

    pub fn constant(field: &GaloisField, c: Fq) -> Self {
        Self::new(field, vec![c])
    }

    /// The variable itself.
    pub fn var(field: &GaloisField) -> Self {
        Self::monomial(field, Fq::ONE, 1)
    }

    pub fn monomial(field: &GaloisField, c: Fq, n: usize) -> Self {
        let mut v = vec![Fq::ZERO; n + 1];
        v[n] = c;
        Self::new(field, v)
    }

    /// `y - b`.
    pub fn linear(field: &GaloisField, b: Fq) -> Self {
        Self::new(field, vec![field.neg(b), Fq::ONE])
    }

    pub fn from_roots(field: &GaloisField, roots: &[Fq]) -> Self {
        roots
            .iter()
            .fold(Self::one(field), |acc, &r| acc.mul(&Self::linear(field, r)))
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree with the zero polynomial mapped to `None`.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn as_constant(&self) -> Option<Fq> {
        match self.coeffs.len() {
            0 => Some(Fq::ZERO),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, v)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fq) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplication by `y^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fq::ZERO; n];
        v.extend_from_slice(&self.coeffs);
        Self::new(&self.field, v)
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), RatError> {
        let f = &self.field;
        if d.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        let inv = f.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut q = vec![Fq::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], inv);
            if c.is_zero() {
                continue;
            }
            q[top - dd] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = f.sub(r[idx], f.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Self::new(f, q), Self::new(f, r)))
    }

    /// Exact division; panics in debug builds when a remainder is left.
    pub fn div_exact(&self, d: &Self) -> Result<Self, RatError> {
        let (q, r) = self.divrem(d)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Self::new(f, v)
    }

    pub fn eval(&self, a: Fq) -> Fq {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Coefficients of `p(t + b)` as a polynomial in `t`.
    pub fn taylor_shift(&self, b: Fq) -> Self {
        let f = &self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = f.add(c[j], f.mul(b, c[j + 1]));
            }
        }
        Self::new(f, c)
    }

    /// Applies `a ↦ g(a)` to every coefficient.
    pub fn map_coeffs(&self, g: impl Fn(Fq) -> Fq) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// Roots in the base field with multiplicities, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<(Fq, usize)> {
        let mut out = Vec::new();
        if self.deg().unwrap_or(0) == 0 {
            return out;
        }
        let mut rest = self.clone();
        for a in self.field.elements() {
            if rest.deg().unwrap_or(0) == 0 {
                break;
            }
            if !rest.eval(a).is_zero() {
                continue;
            }
            let lin = Self::linear(&self.field, a);
            let mut m = 0;
            loop {
                let (q, r) = rest.divrem(&lin).expect("linear divisor");
                if !r.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            out.push((a, m));
        }
        out
    }

    /// Order of vanishing at a finite point.
    pub fn order_at(&self, a: Fq) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let shifted = self.taylor_shift(a);
        shifted.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn render(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c);
            let coef = if f.k() > 1 && cs.contains('+') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, c == Fq::ONE) {
                (0, _) => coef,
                (_, true) => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// A point of the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Place {
    Finite(Fq),
    Infinity,
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl Place {
    pub fn finite(self) -> Option<Fq> {
        match self {
            Place::Finite(a) => Some(a),
            Place::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        self == Place::Infinity
    }

    pub fn format(self, field: &GaloisField) -> String {
        match self {
            Place::Finite(a) => field.format(a),
            Place::Infinity => "inf".into(),
        }
    }

    pub fn parse(field: &GaloisField, s: &str) -> Result<Place, FieldError> {
        match s.trim() {
            "inf" | "infinity" | "∞" | "oo" => Ok(Place::Infinity),
            other => Ok(Place::Finite(field.parse_element(other)?)),
        }
    }

    /// Integer index used in JSON (`null` stands for infinity at call sites).
    pub fn index(self) -> Option<u32> {
        self.finite().map(|a| a.index())
    }

    /// All places of P¹ over the field, infinity last.
    pub fn all(field: &GaloisField) -> Vec<Place> {
        field
            .elements()
            .map(Place::Finite)
            .chain(std::iter::once(Place::Infinity))
            .collect()
    }
}

/// A divisor on P¹: a finitely supported map from places to integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor(pub BTreeMap<Place, i64>);

impl Divisor {
    pub fn new() -> Self {
        Divisor(BTreeMap::new())
    }

    pub fn add_at(&mut self, p: Place, n: i64) {
        let e = self.0.entry(p).or_insert(0);
        *e += n;
        if *e == 0 {
            self.0.remove(&p);
        }
    }

    pub fn get(&self, p: Place) -> i64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.0.iter()
    }
}

/// A reduced fraction `num/den` with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("y"))
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, RatError> {
        if den.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let l = d.lead();
        if l != Fq::ONE {
            let inv = field.inv(l)?;
            n = n.scale(inv);
            d = d.scale(inv);
        }
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let field = p.field().clone();
        RationalFunction {
            num: p,
            den: Polynomial::one(&field),
        }
    }

    pub fn zero(field: &GaloisField) -> Self {
        Self::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: &GaloisField) -> Self {
        Self::from_poly(Polynomial::one(field))
    }

    pub fn constant(field: &GaloisField, c: Fq) -> Self {
        Self::from_poly(Polynomial::constant(field, c))
    }

    pub fn var(field: &GaloisField) -> Self {
        Self::from_poly(Polynomial::var(field))
    }

    /// `1/(y-b)^j`, or `y^j` when `b` is infinity.
    pub fn pole_monomial(field: &GaloisField, b: Place, j: u32) -> Self {
        match b {
            Place::Finite(b) => Self::new(Polynomial::one(field), Polynomial::linear(field, b).pow(j as u64))
                .expect("nonzero denominator"),
            Place::Infinity => Self::from_poly(Polynomial::monomial(field, Fq::ONE, j as usize)),
        }
    }

    pub fn field(&self) -> &GaloisField {
        self.num.field()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Fq> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(n, self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: Fq) -> Self {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero den")
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::new(self.num.mul(p), self.den.clone()).expect("nonzero den")
    }

    pub fn inv(&self) -> Result<Self, RatError> {
        if self.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RatError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, RatError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den)).expect("nonzero den")
    }

    /// Applies a coefficient map to numerator and denominator (for field automorphisms).
    pub fn map_coeffs(&self, g: impl Fn(Fq) -> Fq + Copy) -> Self {
        Self::new(self.num.map_coeffs(g), self.den.map_coeffs(g)).expect("automorphism keeps den nonzero")
    }

    /// Value at a place, as a place (a pole evaluates to infinity).
    pub fn eval(&self, at: Place) -> Place {
        let f = self.field();
        match at {
            Place::Finite(a) => {
                let d = self.den.eval(a);
                if d.is_zero() {
                    Place::Infinity
                } else {
                    Place::Finite(f.div(self.num.eval(a), d).expect("nonzero"))
                }
            }
            Place::Infinity => {
                let dn = self.num.deg();
                let dd = self.den.deg().expect("nonzero den");
                match dn {
                    None => Place::Finite(Fq::ZERO),
                    Some(dn) if dn > dd => Place::Infinity,
                    Some(dn) if dn < dd => Place::Finite(Fq::ZERO),
                    Some(_) => Place::Finite(self.num.lead()),
                }
            }
        }
    }

    pub fn order_at(&self, at: Place) -> Result<i64, RatError> {
        if self.is_zero() {
            return Err(RatError::ZeroFunction);
        }
        Ok(match at {
            Place::Finite(a) => {
                self.num.order_at(a).unwrap_or(0) as i64 - self.den.order_at(a).unwrap_or(0) as i64
            }
            Place::Infinity => self.den.deg().unwrap_or(0) as i64 - self.num.deg().unwrap_or(0) as i64,
        })
    }

    /// Divisor of zeros and poles; requires numerator and denominator to split.
    pub fn divisor(&self) -> Result<Divisor, RatError> {
        if self.is_zero() {
            return Err(RatError::ZeroFunction);
        }
        let mut d = Divisor::new();
        for (poly, sign) in [(&self.num, 1i64), (&self.den, -1i64)] {
            let roots = poly.roots();
            let total: usize = roots.iter().map(|r| r.1).sum();
            if total != poly.deg().unwrap_or(0) {
                let rest = roots.iter().fold(poly.clone(), |acc, &(r, m)| {
                    acc.div_exact(&Polynomial::linear(poly.field(), r).pow(m as u64)).expect("root")
                });
                return Err(RatError::NotSplit(rest.monic().render("y")));
            }
            for (r, m) in roots {
                d.add_at(Place::Finite(r), sign * m as i64);
            }
        }
        d.add_at(Place::Infinity, self.order_at(Place::Infinity)?);
        Ok(d)
    }

    pub fn partial_fractions(&self) -> Result<PartialFractions, RatError> {
        let f = self.field().clone();
        let (poly, rem) = self.num.divrem(&self.den)?;
        let roots = self.den.roots();
        let total: usize = roots.iter().map(|r| r.1).sum();
        if total != self.den.deg().unwrap_or(0) {
            let rest = roots.iter().fold(self.den.clone(), |acc, &(r, m)| {
                acc.div_exact(&Polynomial::linear(&f, r).pow(m as u64)).expect("root")
            });
            return Err(RatError::NotSplit(rest.monic().render("y")));
        }
        let mut terms = Vec::new();
        for &(b, m) in &roots {
            let lin_pow = Polynomial::linear(&f, b).pow(m as u64);
            let cofactor = self.den.div_exact(&lin_pow)?;
            let num_t = rem.taylor_shift(b);
            let den_t = cofactor.taylor_shift(b);
            let series = series_div(&f, &num_t, &den_t, m)?;
            // series[i] is the coefficient of t^i; a_j multiplies t^{-j}.
            let coeffs: Vec<Fq> = (1..=m).map(|j| series[m - j]).collect();
            terms.push(PoleTerm { at: b, coeffs });
        }
        Ok(PartialFractions { poly, terms })
    }

    /// `self(M(y))` for a Möbius transformation `M`.
    pub fn compose_mobius(&self, m: &Mobius) -> Self {
        let f = self.field();
        let top = Polynomial::new(f, vec![m.b, m.a]);
        let bot = Polynomial::new(f, vec![m.d, m.c]);
        let n = self.num.deg().unwrap_or(0).max(self.den.deg().unwrap_or(0));
        let homog = |p: &Polynomial| -> Polynomial {
            let mut acc = Polynomial::zero(f);
            for (i, &c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = top.pow(i as u64).mul(&bot.pow((n - i) as u64)).scale(c);
                acc = acc.add(&t);
            }
            acc
        };
        Self::new(homog(&self.num), homog(&self.den)).expect("Möbius maps keep denominators nonzero")
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_polynomial() {
            return self.num.render(var);
        }
        format!("({})/({})", self.num.render(var), self.den.render(var))
    }
}

/// Power series quotient `a/b` modulo `t^n`, requiring `b(0) != 0`.
fn series_div(f: &GaloisField, a: &Polynomial, b: &Polynomial, n: usize) -> Result<Vec<Fq>, RatError> {
    let inv0 = f.inv(b.coeff(0))?;
    let mut out = vec![Fq::ZERO; n];
    for i in 0..n {
        let mut s = a.coeff(i);
        for j in 1..=i {
            s = f.sub(s, f.mul(b.coeff(j), out[i - j]));
        }
        out[i] = f.mul(s, inv0);
    }
    Ok(out)
}

/// Principal part at a finite pole: `Σ_j coeffs[j-1] / (y - at)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub at: Fq,
    pub coeffs: Vec<Fq>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly: Polynomial,
    pub terms: Vec<PoleTerm>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RationalFunction {
        let f = self.poly.field().clone();
        let mut acc = RationalFunction::from_poly(self.poly.clone());
        for t in &self.terms {
            for (j, &c) in t.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = RationalFunction::pole_monomial(&f, Place::Finite(t.at), j as u32 + 1).scale(c);
                acc = acc.add(&term);
            }
        }
        acc
    }
}

/// `y ↦ (a y + b)/(c y + d)` with `ad - bc != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    field: GaloisField,
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
    pub d: Fq,
}

impl Mobius {
    pub fn new(field: &GaloisField, a: Fq, b: Fq, c: Fq, d: Fq) -> Result<Self, RatError> {
        let det = field.sub(field.mul(a, d), field.mul(b, c));
        if det.is_zero() {
            return Err(RatError::DivisionByZero);
        }
        Ok(Mobius {
            field: field.clone(),
            a,
            b,
            c,
            d,
        })
    }

    pub fn identity(field: &GaloisField) -> Self {
        Mobius::new(field, Fq::ONE, Fq::ZERO, Fq::ZERO, Fq::ONE).expect("det 1")
    }

    /// The unique map sending `(z1, z2, z3)` to `(0, 1, ∞)`.
    pub fn to_standard(field: &GaloisField, z: [Place; 3]) -> Result<Self, RatError> {
        let f = field;
        // cross-ratio map (y - z1)(z2 - z3) / ((y - z3)(z2 - z1)) with the usual conventions at ∞
        let (a, b, c, d) = match z {
            [Place::Infinity, Place::Finite(z2), Place::Finite(z3)] => (Fq::ZERO, f.sub(z2, z3), Fq::ONE, f.neg(z3)),
            [Place::Finite(z1), Place::Infinity, Place::Finite(z3)] => (Fq::ONE, f.neg(z1), Fq::ONE, f.neg(z3)),
            [Place::Finite(z1), Place::Finite(z2), Place::Infinity] => (Fq::ONE, f.neg(z1), Fq::ZERO, f.sub(z2, z1)),
            [Place::Finite(z1), Place::Finite(z2), Place::Finite(z3)] => {
                let s = f.sub(z2, z3);
                let t = f.sub(z2, z1);
                (s, f.neg(f.mul(z1, s)), t, f.neg(f.mul(z3, t)))
            }
            _ => return Err(RatError::DivisionByZero),
        };
        Mobius::new(f, a, b, c, d)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn apply(&self, y: Place) -> Place {
        let f = &self.field;
        match y {
            Place::Infinity => {
                if self.c.is_zero() {
                    Place::Infinity
                } else {
                    Place::Finite(f.div(self.a, self.c).expect("nonzero"))
                }
            }
            Place::Finite(y) => {
                let den = f.add(f.mul(self.c, y), self.d);
                let num = f.add(f.mul(self.a, y), self.b);
                if den.is_zero() {
                    Place::Infinity
                } else {
                    Place::Finite(f.div(num, den).expect("nonzero"))
                }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        let f = &self.field;
        Mobius::new(f, self.d, f.neg(self.b), f.neg(self.c), self.a).expect("invertible")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Self {
        let f = &self.field;
        let m = |x: Fq, y: Fq, z: Fq, w: Fq| f.add(f.mul(x, y), f.mul(z, w));
        Mobius::new(
            f,
            m(self.a, other.a, self.b, other.c),
            m(self.a, other.b, self.b, other.d),
            m(self.c, other.a, self.d, other.c),
            m(self.c, other.b, self.d, other.d),
        )
        .expect("product of invertible maps")
    }

    pub fn as_function(&self) -> RationalFunction {
        let f = &self.field;
        RationalFunction::new(
            Polynomial::new(f, vec![self.b, self.a]),
            Polynomial::new(f, vec![self.d, self.c]),
        )
        .expect("nonzero den")
    }

    /// `(ad - bc)/(cy + d)^2`.
    pub fn derivative(&self) -> RationalFunction {
        let f = &self.field;
        let det = f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c));
        let lin = Polynomial::new(f, vec![self.d, self.c]);
        RationalFunction::new(Polynomial::constant(f, det), lin.mul(&lin)).expect("nonzero den")
    }
}
