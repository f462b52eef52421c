mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{element, field_for, nonzero, nonzero_rational, poly, rational};
use lhur_core::{Mobius, Place, Polynomial, RationalFunction};

proptest! {
    #[test]
    fn leibniz_and_quotient_rules(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rational(&mut rng, &f, 5, 3);
        let b = nonzero_rational(&mut rng, &f, 5, 3);
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert_eq!(lhs, rhs);
        let q = a.checked_div(&b).unwrap();
        let quotient_rule = a
            .derivative()
            .mul(&b)
            .sub(&a.mul(&b.derivative()))
            .checked_div(&b.mul(&b))
            .unwrap();
        prop_assert_eq!(q.derivative(), quotient_rule);
    }

    #[test]
    fn principal_divisors_have_degree_zero(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // numerator split as well, so every zero is rational
        let zeros: Vec<_> = (0..rng.gen_range_usize(0, 4)).map(|_| element(&mut rng, &f)).collect();
        let poles: Vec<_> = (0..rng.gen_range_usize(0, 4)).map(|_| element(&mut rng, &f)).collect();
        let c = nonzero(&mut rng, &f);
        let r = RationalFunction::new(Polynomial::from_roots(&f, &zeros).scale(c), Polynomial::from_roots(&f, &poles)).unwrap();
        let d = r.divisor().unwrap();
        prop_assert_eq!(d.degree(), 0);
        let at_inf = poles.len() as i64 - zeros.len() as i64;
        // cancellation only moves mass between finite places, never to infinity
        prop_assert_eq!(d.get(Place::Infinity), at_inf);
    }

    #[test]
    fn partial_fractions_recombine(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rational(&mut rng, &f, 6, 4);
        let pf = r.partial_fractions().unwrap();
        prop_assert_eq!(pf.recombine(), r.clone());
        for t in &pf.terms {
            prop_assert!(t.coeffs.last().is_some_and(|c| !c.is_zero()));
            prop_assert_eq!(r.order_at(Place::Finite(t.at)).unwrap(), -(t.coeffs.len() as i64));
        }
    }

    #[test]
    fn mobius_composition_and_pullback(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mobius(&mut rng, &f);
        let n = random_mobius(&mut rng, &f);
        let r = rational(&mut rng, &f, 4, 3);
        // (r∘m)∘n = r∘(m∘n)
        prop_assert_eq!(r.compose_mobius(&m).compose_mobius(&n), r.compose_mobius(&m.compose(&n)));
        for q in Place::all(&f) {
            prop_assert_eq!(m.inverse().apply(m.apply(q)), q);
            prop_assert_eq!(r.compose_mobius(&m).eval(q), r.eval(m.apply(q)));
        }
    }

    #[test]
    fn polynomial_division(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = poly(&mut rng, &f, 8);
        let mut b = poly(&mut rng, &f, 4);
        if b.is_zero() {
            b = Polynomial::one(&f);
        }
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.degree() < b.degree());
    }
}

trait RangeExt {
    fn gen_range_usize(&mut self, lo: usize, hi: usize) -> usize;
}

impl RangeExt for ChaCha8Rng {
    fn gen_range_usize(&mut self, lo: usize, hi: usize) -> usize {
        rand::Rng::gen_range(self, lo..hi)
    }
}

fn random_mobius(rng: &mut ChaCha8Rng, f: &lhur_core::GaloisField) -> Mobius {
    loop {
        let (a, b, c, d) = (element(rng, f), element(rng, f), element(rng, f), element(rng, f));
        if let Ok(m) = Mobius::new(f, a, b, c, d) {
            return m;
        }
    }
}

#[test]
fn standard_position_sends_three_points_to_zero_one_infinity() {
    let f = lhur_core::GaloisField::new(3, 2).unwrap();
    let pts = [Place::Finite(lhur_core::Fq(4)), Place::Infinity, Place::Finite(lhur_core::Fq(7))];
    let m = Mobius::to_standard(&f, pts).unwrap();
    assert_eq!(m.apply(pts[0]), Place::Finite(lhur_core::Fq::ZERO));
    assert_eq!(m.apply(pts[1]), Place::Finite(lhur_core::Fq::ONE));
    assert_eq!(m.apply(pts[2]), Place::Infinity);
}
