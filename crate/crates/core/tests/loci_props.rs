use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lhur_core::cartier::{classify, Classification};
use lhur_core::loci::{
    default_pins, dimension_formula, locus_form, locus_membership, locus_search, tangent_dimension, Kind,
    MarkingConfig, ZeroPolePattern,
};
use lhur_core::{GaloisField, Mobius, Place};

fn random_pattern(rng: &mut ChaCha8Rng, p: u32, n: usize) -> ZeroPolePattern {
    let bound = 2 * p as i64;
    loop {
        let mut m: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-bound..=bound)).collect();
        let last = 2 * p as i64 - 2 - m.iter().sum::<i64>();
        if last.abs() <= bound {
            m.push(last);
            return ZeroPolePattern::new(p, m).unwrap();
        }
    }
}

fn random_config(rng: &mut ChaCha8Rng, f: &GaloisField, n: usize) -> MarkingConfig {
    let mut places = Place::all(f);
    let mut pts = Vec::new();
    for _ in 0..n {
        pts.push(places.swap_remove(rng.gen_range(0..places.len())));
    }
    MarkingConfig::new(pts).unwrap()
}

fn kind_of(c: Classification) -> Option<Kind> {
    match c {
        Classification::Exact => Some(Kind::Exact),
        Classification::QuasiExact => Some(Kind::QuasiExact),
        Classification::Neither => None,
    }
}

const FIELDS: &[(u32, u32)] = &[(2, 3), (3, 2), (5, 1)];

proptest! {
    #[test]
    fn membership_agrees_with_classification(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, k) = FIELDS[rng.gen_range(0..FIELDS.len())];
        let f = GaloisField::new(p, k).unwrap();
        let n = rng.gen_range(3..=5);
        let m = random_pattern(&mut rng, p, n);
        let c = random_config(&mut rng, &f, n);
        let class = kind_of(classify(&locus_form(&f, &c, &m).unwrap()).0);
        for kind in [Kind::Exact, Kind::QuasiExact] {
            prop_assert_eq!(locus_membership(&f, &c, &m, kind).unwrap(), class == Some(kind));
        }
    }

    #[test]
    fn loci_are_projectively_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, k) = FIELDS[rng.gen_range(0..FIELDS.len())];
        let f = GaloisField::new(p, k).unwrap();
        let n = rng.gen_range(3..=5);
        let m = random_pattern(&mut rng, p, n);
        let c = random_config(&mut rng, &f, n);
        let mob = loop {
            let e: Vec<_> = (0..4).map(|_| lhur_core::Fq(rng.gen_range(0..f.order()))).collect();
            if let Ok(mob) = Mobius::new(&f, e[0], e[1], e[2], e[3]) {
                break mob;
            }
        };
        for kind in [Kind::Exact, Kind::QuasiExact] {
            prop_assert_eq!(
                locus_membership(&f, &c, &m, kind).unwrap(),
                locus_membership(&f, &c.apply(&mob), &m, kind).unwrap()
            );
        }
    }
}

/// Every configuration with the default pins, filtered one at a time.
fn brute_force(f: &GaloisField, m: &ZeroPolePattern, kind: Kind) -> Vec<MarkingConfig> {
    let n = m.len();
    let pins = default_pins(n);
    let places = Place::all(f);
    let mut out = Vec::new();
    let free = n - 3;
    let total = places.len().pow(free as u32);
    for mut code in 0..total {
        let mut pts = vec![Place::Infinity; n];
        for &(i, q) in &pins {
            pts[i] = q;
        }
        for slot in pts.iter_mut().take(free) {
            *slot = places[code % places.len()];
            code /= places.len();
        }
        let Ok(c) = MarkingConfig::new(pts) else { continue };
        if kind_of(classify(&locus_form(f, &c, m).unwrap()).0) == Some(kind) {
            out.push(c);
        }
    }
    out.sort();
    out
}

#[test]
fn search_matches_brute_force() {
    let cases: &[(u32, u32, &[i64])] = &[
        (2, 3, &[1, 1, 0, 0]),
        (2, 3, &[3, -1, 0, 0]),
        (2, 2, &[2, 1, -1, 0, 0]),
        (3, 2, &[2, 2, 0, 0]),
        (3, 1, &[3, 1, 1, -1, 0]),
        (5, 1, &[4, 4, 0, 0]),
    ];
    for &(p, k, m) in cases {
        let f = GaloisField::new(p, k).unwrap();
        let m = ZeroPolePattern::new(p, m.to_vec()).unwrap();
        for kind in [Kind::Exact, Kind::QuasiExact] {
            let found = locus_search(&f, &m, kind, &default_pins(m.len())).unwrap();
            assert_eq!(found, brute_force(&f, &m, kind), "{m:?} {kind:?}");
        }
    }
}

#[test]
fn tangent_spaces_have_the_expected_dimension() {
    let cases: &[(u32, u32, &[i64])] = &[
        (2, 3, &[1, 1, 0, 0]),
        (2, 3, &[-2, 2, 2, 0]),
        (3, 2, &[1, 1, 2, 0]),
        (3, 2, &[1, 1, 1, 1, 0]),
    ];
    let mut checked = 0;
    for &(p, k, m) in cases {
        let f = GaloisField::new(p, k).unwrap();
        let m = ZeroPolePattern::new(p, m.to_vec()).unwrap();
        for kind in [Kind::Exact, Kind::QuasiExact] {
            for c in locus_search(&f, &m, kind, &default_pins(m.len())).unwrap() {
                let r = tangent_dimension(&f, &c, &m, kind).unwrap();
                assert_eq!(r.dimension, dimension_formula(&m, kind), "{m:?} {kind:?} {c:?}");
                assert!(r.first_order_ok);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 6 + 6 + 7 + 6 + 36);
}
