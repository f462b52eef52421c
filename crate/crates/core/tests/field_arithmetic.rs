mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{element, field_for, nonzero};
use lhur_core::GaloisField;

proptest! {
    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (element(&mut rng, &f), element(&mut rng, &f), element(&mut rng, &f));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), lhur_core::Fq::ZERO);
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        let u = nonzero(&mut rng, &f);
        prop_assert_eq!(f.mul(u, f.inv(u).unwrap()), lhur_core::Fq::ONE);
        prop_assert_eq!(f.div(f.mul(a, u), u).unwrap(), a);
    }

    #[test]
    fn frobenius_is_additive_and_inverted_by_root(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (element(&mut rng, &f), element(&mut rng, &f));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pth_root(f.frobenius(a)), a);
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
    }

    #[test]
    fn rendering_round_trips(seed in any::<u64>()) {
        let f = field_for(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = element(&mut rng, &f);
        prop_assert_eq!(f.parse_element(&f.format(a)).unwrap(), a);
        prop_assert_eq!(f.parse_element(&a.index().to_string()).unwrap(), a);
    }
}

#[test]
fn generator_is_a_root_of_the_modulus() {
    for (p, k) in [(2, 4), (3, 2), (5, 2), (2, 6), (7, 1)] {
        let f = GaloisField::new(p, k).unwrap();
        let w = f.generator();
        let value = f
            .modulus()
            .iter()
            .enumerate()
            .fold(lhur_core::Fq::ZERO, |acc, (i, &c)| f.add(acc, f.mul(f.from_int(c as i64), f.pow(w, i as u64))));
        assert_eq!(value, lhur_core::Fq::ZERO, "GF({p}^{k})");
    }
}

#[test]
fn nonzero_elements_satisfy_fermat() {
    for (p, k) in [(2, 4), (3, 2), (5, 2)] {
        let f = GaloisField::new(p, k).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, f.order() as u64 - 1), lhur_core::Fq::ONE);
        }
    }
}
