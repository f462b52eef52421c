//! Exact arithmetic in GF(p^k).
//!
//! Elements are stored by their index `Σ cᵢ pⁱ`, where `c₀ + c₁w + … + c_{k-1}w^{k-1}`
//! is the reduced representative modulo the field's defining polynomial and
//! `w` is the class of the indeterminate. Multiplication goes through
//! discrete log tables, so the supported order is capped at 2^16.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {0} exceeds the supported maximum of 2^16")]
    TooLarge(u64),
    #[error("malformed field designator '{0}' (expected p^k)")]
    BadDesignator(String),
    #[error("malformed field element '{0}'")]
    BadElement(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields ({0} vs {1})")]
    Mismatch(String, String),
}

/// An element of some GF(p^k), identified by its index.
///
/// The index is only meaningful together with the [`GaloisField`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serializable description of a field: characteristic, degree and the
/// defining polynomial (coefficients low to high, monic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    p_pows: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// Handle to a finite field GF(p^k). Cloning is cheap.
#[derive(Clone)]
pub struct GaloisField {
    t: Arc<Tables>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || (self.t.p == other.t.p && self.t.k == other.t.k)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.k)
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.t.p, self.t.k)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over the prime field, used only while building tables.
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Ben-Or irreducibility test for a monic polynomial over GF(p).
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 1..=k / 2 {
            // h <- h^p mod f
            let mut acc = vec![1u32];
            for _ in 0..p {
                acc = rem(&mul(&acc, &h, p), f, p);
            }
            h = acc;
            let g = gcd(&sub(&h, &x, p), f, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl GaloisField {
    /// Builds GF(p^k) with the lexicographically smallest irreducible monic
    /// modulus (coefficients compared from the constant term upwards).
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER {
            return Err(FieldError::TooLarge(order));
        }
        let q = order as u32;
        let modulus = Self::select_modulus(p, k);

        let mut p_pows = vec![1u32; k as usize];
        for i in 1..k as usize {
            p_pows[i] = p_pows[i - 1] * p;
        }
        let to_digits = |a: u32| -> Vec<u32> {
            let mut d = Vec::with_capacity(k as usize);
            let mut a = a;
            for _ in 0..k {
                d.push(a % p);
                a /= p;
            }
            d
        };
        let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = prime_poly::mul(&to_digits(a), &to_digits(b), p);
            let r = prime_poly::rem(&prod, &modulus, p);
            from_digits(&r)
        };

        // Smallest primitive element by index.
        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp[0] = 1;
            exp[1] = 1;
        } else {
            let mut found = false;
            for cand in 2..q {
                let mut acc = 1u32;
                let mut ok = true;
                for i in 0..(q - 1) {
                    exp[i as usize] = acc;
                    acc = slow_mul(acc, cand);
                    if acc == 1 && i + 1 < q - 1 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    found = true;
                    break;
                }
            }
            assert!(found, "multiplicative group of a finite field is cyclic");
            for i in 0..(q - 1) as usize {
                exp[i + q as usize - 1] = exp[i];
            }
        }
        for i in 0..(q - 1) as usize {
            log[exp[i] as usize] = i as u32;
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let d: Vec<u32> = to_digits(a).iter().map(|&c| (p - c) % p).collect();
                from_digits(&d)
            })
            .collect();

        let add = if q <= ADD_TABLE_LIMIT && p != 2 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = to_digits(a);
                for b in 0..q {
                    let db = to_digits(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = from_digits(&s);
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(GaloisField {
            t: Arc::new(Tables {
                p,
                k,
                q,
                modulus,
                p_pows,
                exp,
                log,
                neg,
                add,
            }),
        })
    }

    /// Parses a designator such as `"2^4"`, `"3"` or `"5^2"`.
    pub fn from_designator(s: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::BadDesignator(s.to_string());
        let s = s.trim();
        let (p, k) = match s.split_once('^') {
            Some((a, b)) => (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?),
            None => (s.parse::<u32>().map_err(|_| bad())?, 1),
        };
        Self::new(p, k)
    }

    fn select_modulus(p: u32, k: u32) -> Vec<u32> {
        // Candidates c_0..c_{k-1} in lexicographic order with c_0 most significant.
        let total = (p as u64).pow(k);
        for n in 0..total {
            let mut coeffs = vec![0u32; k as usize + 1];
            let mut rest = n;
            for i in (0..k as usize).rev() {
                coeffs[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            coeffs[k as usize] = 1;
            if prime_poly::is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn k(&self) -> u32 {
        self.t.k
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.t.p,
            k: self.t.k,
            modulus: self.t.modulus.clone(),
        }
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// The class `w` of the indeterminate (zero when k = 1, since the modulus is `x`).
    pub fn generator(&self) -> Fq {
        if self.t.k == 1 {
            Fq::ZERO
        } else {
            Fq(self.t.p)
        }
    }

    pub fn element(&self, index: u32) -> Result<Fq, FieldError> {
        if index < self.t.q {
            Ok(Fq(index))
        } else {
            Err(FieldError::BadElement(index.to_string()))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.t.q).map(Fq)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.t.p as i64) as u32)
    }

    pub fn digits(&self, a: Fq) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.t.k as usize);
        let mut a = a.0;
        for _ in 0..self.t.k {
            d.push(a % self.t.p);
            a /= self.t.p;
        }
        d
    }

    pub fn from_digits(&self, d: &[u32]) -> Fq {
        Fq(d.iter().rev().fold(0u32, |acc, &c| acc * self.t.p + c % self.t.p))
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let t = &*self.t;
        if t.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if let Some(tab) = &t.add {
            return Fq(tab[(a.0 * t.q + b.0) as usize]);
        }
        if t.k == 1 {
            return Fq((a.0 + b.0) % t.p);
        }
        let mut out = 0u32;
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..t.k as usize {
            let d = (x % t.p + y % t.p) % t.p;
            out += d * t.p_pows[i];
            x /= t.p;
            y /= t.p;
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.t.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let t = &*self.t;
        Fq(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize];
        Ok(Fq(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let t = &*self.t;
        let n = (t.q - 1) as u64;
        Fq(t.exp[((t.log[a.0 as usize] as u64 * (e % n)) % n) as usize])
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    pub fn pow_i(&self, a: Fq, e: i64) -> Result<Fq, FieldError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.t.p as u64)
    }

    /// The unique p-th root, computed as a^(p^(k-1)).
    pub fn pth_root(&self, a: Fq) -> Fq {
        self.pow(a, (self.t.p as u64).pow(self.t.k - 1))
    }

    /// Multiplicative order check helper: is `a` in the prime field?
    pub fn in_prime_field(&self, a: Fq) -> bool {
        a.0 < self.t.p
    }

    /// Renders an element as a polynomial in the generator symbol `w`
    /// (plain integers when k = 1).
    pub fn format(&self, a: Fq) -> String {
        if self.t.k == 1 {
            return a.0.to_string();
        }
        let d = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            let term = if i == 0 {
                c.to_string()
            } else if c == 1 {
                mono
            } else {
                format!("{c}{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Parses an element: either a decimal index (`"6"`) or a polynomial in
    /// `w` such as `"w^2+w+1"`, `"2w-1"`.
    pub fn parse_element(&self, s: &str) -> Result<Fq, FieldError> {
        let bad = || FieldError::BadElement(s.to_string());
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad());
        }
        if src.chars().all(|c| c.is_ascii_digit()) {
            let v: u64 = src.parse().map_err(|_| bad())?;
            if v >= self.t.q as u64 {
                return Err(bad());
            }
            return Ok(Fq(v as u32));
        }
        let mut acc = Fq::ZERO;
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef: i64 = if i > start { src[start..i].parse().map_err(|_| bad())? } else { 1 };
            let mut term = self.from_int(coef * sign);
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'w' {
                i += 1;
                let mut e = 1u64;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let s2 = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = src[s2..i].parse().map_err(|_| bad())?;
                }
                term = self.mul(term, self.pow(self.generator(), e));
            } else if i == start {
                return Err(bad());
            }
            acc = self.add(acc, term);
            if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                return Err(bad());
            }
        }
        Ok(acc)
    }
}

/// An element bundled with its field, for callers that want checked
/// arithmetic across possibly different fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: GaloisField,
    value: Fq,
}

impl FieldElement {
    pub fn new(field: &GaloisField, value: Fq) -> Self {
        FieldElement {
            field: field.clone(),
            value,
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn value(&self) -> Fq {
        self.value
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    fn wrap(&self, v: Fq) -> FieldElement {
        FieldElement::new(&self.field, v)
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.wrap(self.field.frobenius(self.value))
    }

    pub fn pth_root(&self) -> FieldElement {
        self.wrap(self.field.pth_root(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}
