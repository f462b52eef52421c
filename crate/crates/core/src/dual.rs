//! Dual numbers `GF(q)[ε]/(ε²)` and polynomials over them.

use crate::ffield::{Fq, GaloisField};
use crate::ratfunc::Polynomial;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Dual {
    pub re: Fq,
    pub eps: Fq,
}

impl Dual {
    pub const ZERO: Dual = Dual { re: Fq::ZERO, eps: Fq::ZERO };
    pub const ONE: Dual = Dual { re: Fq::ONE, eps: Fq::ZERO };

    pub fn new(re: Fq, eps: Fq) -> Self {
        Dual { re, eps }
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

/// Polynomial with dual-number coefficients, low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPoly {
    field: GaloisField,
    coeffs: Vec<Dual>,
}

impl DualPoly {
    pub fn new(field: &GaloisField, mut coeffs: Vec<Dual>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DualPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn one(field: &GaloisField) -> Self {
        Self::new(field, vec![Dual::ONE])
    }

    /// `y - (b + aε)`.
    pub fn linear(field: &GaloisField, b: Fq, a: Fq) -> Self {
        Self::new(field, vec![Dual::new(field.neg(b), field.neg(a)), Dual::ONE])
    }

    pub fn coeffs(&self) -> &[Dual] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Dual {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    fn dmul(&self, x: Dual, y: Dual) -> Dual {
        let f = &self.field;
        Dual {
            re: f.mul(x.re, y.re),
            eps: f.add(f.mul(x.re, y.eps), f.mul(x.eps, y.re)),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(f, Vec::new());
        }
        let mut out = vec![Dual::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = self.dmul(a, b);
                out[i + j] = Dual::new(f.add(out[i + j].re, t.re), f.add(out[i + j].eps, t.eps));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    pub fn real_part(&self) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|c| c.re).collect())
    }

    pub fn eps_part(&self) -> Polynomial {
        Polynomial::new(&self.field, self.coeffs.iter().map(|c| c.eps).collect())
    }
}
