#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use lhur_core::{Fq, GaloisField, Polynomial, RationalFunction};

pub const FIELDS: &[(u32, u32)] = &[(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1)];

pub fn field_for(seed: u64) -> GaloisField {
    let (p, k) = FIELDS[(seed % FIELDS.len() as u64) as usize];
    GaloisField::new(p, k).unwrap()
}

pub fn element(rng: &mut ChaCha8Rng, f: &GaloisField) -> Fq {
    Fq(rng.gen_range(0..f.order()))
}

pub fn nonzero(rng: &mut ChaCha8Rng, f: &GaloisField) -> Fq {
    Fq(rng.gen_range(1..f.order()))
}

pub fn poly(rng: &mut ChaCha8Rng, f: &GaloisField, max_deg: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_deg);
    Polynomial::new(f, (0..=d).map(|_| element(rng, f)).collect())
}

/// A rational function whose denominator splits into linear factors.
pub fn rational(rng: &mut ChaCha8Rng, f: &GaloisField, max_deg: usize, max_poles: usize) -> RationalFunction {
    let num = poly(rng, f, max_deg);
    let poles = rng.gen_range(0..=max_poles);
    let roots: Vec<Fq> = (0..poles).map(|_| element(rng, f)).collect();
    RationalFunction::new(num, Polynomial::from_roots(f, &roots)).unwrap()
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, f: &GaloisField, max_deg: usize, max_poles: usize) -> RationalFunction {
    loop {
        let r = rational(rng, f, max_deg, max_poles);
        if !r.is_zero() {
            return r;
        }
    }
}
