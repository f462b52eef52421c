mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{element, nonzero, rational};
use lhur_core::ascover::{moduli_dimension, ArtinSchreierCover};
use lhur_core::{Fq, GaloisField, Place, Polynomial};

const FIELDS: &[(u32, u32)] = &[(2, 2), (2, 3), (3, 1), (3, 2), (5, 1)];

/// A cover in normal form with random branch points and reduced principal parts.
pub fn random_cover(rng: &mut ChaCha8Rng) -> ArtinSchreierCover {
    let (p, k) = FIELDS[rng.gen_range(0..FIELDS.len())];
    let f = GaloisField::new(p, k).unwrap();
    let places = Place::all(&f);
    loop {
        let r = rng.gen_range(1..=3usize);
        let mut chosen: Vec<Place> = Vec::new();
        while chosen.len() < r {
            let q = places[rng.gen_range(0..places.len())];
            if !chosen.contains(&q) {
                chosen.push(q);
            }
        }
        let parts: Vec<Polynomial> = chosen
            .iter()
            .map(|_| {
                let d = loop {
                    let d = rng.gen_range(1..=5usize);
                    if d % p as usize != 0 {
                        break d;
                    }
                };
                let mut c = vec![Fq::ZERO; d + 1];
                for (j, cj) in c.iter_mut().enumerate().take(d).skip(1) {
                    if j % p as usize != 0 {
                        *cj = element(rng, &f);
                    }
                }
                c[d] = nonzero(rng, &f);
                Polynomial::new(&f, c)
            })
            .collect();
        if let Ok(c) = ArtinSchreierCover::from_parts(&f, chosen, parts, Vec::new()) {
            return c;
        }
    }
}

fn sorted(c: &ArtinSchreierCover) -> Vec<(Place, Polynomial)> {
    let mut v: Vec<(Place, Polynomial)> = c.branch_points().iter().copied().zip(c.parts().iter().cloned()).collect();
    v.sort_by_key(|t| t.0);
    v
}

proptest! {
    #[test]
    fn riemann_hurwitz_from_pole_orders(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(&mut rng);
        let p = c.field().p() as i64;
        let g = c.rhs();
        // conductor = pole order + 1 for a reduced equation
        let mut deg_r = 0;
        for (&b, &e) in c.branch_points().iter().zip(&c.conductors()) {
            prop_assert_eq!(-g.order_at(b).unwrap() + 1, e as i64);
            deg_r += e as i64 * (p - 1);
        }
        prop_assert_eq!(2 * c.genus() as i64 - 2, -2 * p + deg_r);
        prop_assert_eq!(c.ramification_divisor().degree(), deg_r);
    }

    #[test]
    fn normal_form_is_idempotent_and_absorbs_pth_powers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(&mut rng);
        let f = c.field().clone();
        prop_assert_eq!(sorted(&ArtinSchreierCover::from_equation(&c.rhs()).unwrap()), sorted(&c));
        let z = rational(&mut rng, &f, 2, 0);
        let twisted = c.rhs().add(&z.pow(f.p() as i64).unwrap()).sub(&z);
        prop_assert_eq!(sorted(&ArtinSchreierCover::from_equation(&twisted).unwrap()), sorted(&c));
    }

    #[test]
    fn trace_form_orders(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(&mut rng);
        let p = c.field().p() as i64;
        let t = c.trace_form().unwrap();
        prop_assert_eq!(t.orders.len(), c.branch_points().len());
        for o in &t.orders {
            prop_assert_eq!(o.plain, o.conductor as i64 * (p - 1));
            prop_assert_eq!(o.log, o.plain + 1 - p);
        }
    }

    #[test]
    fn moduli_dimension_formulas_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_cover(&mut rng);
        let p = c.field().p() as u64;
        let n = rng.gen_range(0..3u64);
        let (a, b) = moduli_dimension(p, c.genus(), &c.conductors(), n).unwrap();
        prop_assert_eq!(a, b);
        // one parameter per non-p-th-power coefficient, minus the automorphisms of P¹
        let coeffs: i64 = c
            .conductors()
            .iter()
            .map(|&e| (1..e).filter(|j| j % p != 0).count() as i64 + 1)
            .sum();
        prop_assert_eq!(a, coeffs + n as i64 - 3);
    }
}

#[test]
fn isomorphism_under_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 20 {
        let c = random_cover(&mut rng);
        let f = c.field().clone();
        let n_special = c.branch_points().len();
        let free: Vec<Place> = Place::all(&f)
            .into_iter()
            .filter(|q| !c.branch_points().contains(q))
            .take(3usize.saturating_sub(n_special))
            .collect();
        let c = c.with_marks(free).unwrap();
        if c.branch_points().len() + c.marked_unramified().len() < 3 {
            continue;
        }
        assert!(c.isomorphic(&c).unwrap());
        checked += 1;
    }
}
