use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lhur_core::strata::{
    canonical_key, enumerate_components, enumerate_graphs, generic_dimension, stratum_dimension, validate,
    HurwitzData, LevelGraph, Regime,
};

fn data() -> Vec<HurwitzData> {
    vec![
        HurwitzData::mixed(2, 1, 0, vec![2, 2, 2, 2]),
        HurwitzData::mixed(2, 2, 0, vec![2, 2, 2, 2, 2, 2]),
        HurwitzData::new(2, 1, 0, vec![2, 1], vec![3, 0], Regime::Equicharacteristic),
        HurwitzData::new(2, 0, 0, vec![2, 1, 1], vec![1, 0, 0], Regime::Equicharacteristic),
        HurwitzData::new(2, 1, 0, vec![2, 2, 1], vec![1, 1, 0], Regime::Equicharacteristic),
    ]
}

/// Renames every id with a random injective map, keeping all references consistent.
fn relabel(g: &LevelGraph, rng: &mut ChaCha8Rng) -> LevelGraph {
    fn shuffled(ids: Vec<u32>, rng: &mut ChaCha8Rng) -> HashMap<u32, u32> {
        let mut fresh: Vec<u32> = (0..ids.len() as u32).map(|i| 100 + 3 * i).collect();
        fresh.shuffle(rng);
        ids.into_iter().zip(fresh).collect()
    }
    let sv = shuffled(g.source.vertices.iter().map(|v| v.id).collect(), rng);
    let se = shuffled(g.source.edges.iter().map(|e| e.id).collect(), rng);
    let tv = shuffled(g.target.vertices.iter().map(|v| v.id).collect(), rng);
    let te = shuffled(g.target.edges.iter().map(|e| e.id).collect(), rng);
    let mut h = g.clone();
    for v in &mut h.source.vertices {
        v.id = sv[&v.id];
        v.image = tv[&v.image];
    }
    for e in &mut h.source.edges {
        e.id = se[&e.id];
        e.v1 = sv[&e.v1];
        e.v2 = sv[&e.v2];
        e.image = te[&e.image];
    }
    for v in &mut h.target.vertices {
        v.id = tv[&v.id];
    }
    for e in &mut h.target.edges {
        e.id = te[&e.id];
        e.v1 = tv[&e.v1];
        e.v2 = tv[&e.v2];
    }
    for m in &mut h.markings {
        m.vertex = sv[&m.vertex];
    }
    h.source.vertices.shuffle(rng);
    h.source.edges.shuffle(rng);
    h.target.vertices.shuffle(rng);
    h.markings.shuffle(rng);
    h
}

fn levels(g: &LevelGraph) -> usize {
    g.source.vertices.iter().map(|v| v.level).collect::<BTreeSet<_>>().len()
}

fn horizontal(g: &LevelGraph) -> usize {
    let level: HashMap<u32, i64> = g.target.vertices.iter().map(|v| (v.id, v.level)).collect();
    g.target.edges.iter().filter(|e| level[&e.v1] == level[&e.v2]).count()
}

#[test]
fn enumerated_graphs_satisfy_the_ledger_identities() {
    for a in data() {
        let generic = generic_dimension(&a).unwrap();
        let graphs = enumerate_graphs(&a, 6).unwrap();
        assert!(!graphs.is_empty(), "{a:?}");
        for g in &graphs {
            let report = validate(g, Some(&a));
            assert!(report.valid, "{:?}", report.violations);
            let l = stratum_dimension(g, Some(&a)).unwrap();
            assert_eq!(Some(l.total), l.closed_form);
            assert!(l.total <= generic);
            assert_eq!(l.total, l.mod_as + l.mod_ex + l.mod_qe);
            if a.regime == Regime::Mixed && levels(g) == 2 && horizontal(g) == 0 {
                assert_eq!(l.total, a.n as i64 - 3);
            }
        }
        let comps = enumerate_components(&a, 6).unwrap();
        let full = graphs
            .iter()
            .filter(|g| stratum_dimension(g, Some(&a)).unwrap().total == generic)
            .count();
        assert_eq!(comps.len(), full);
    }
}

#[test]
fn canonical_keys_ignore_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in data() {
        let graphs = enumerate_graphs(&a, 5).unwrap();
        let keys: BTreeSet<_> = graphs.iter().map(|g| canonical_key(g).unwrap()).collect();
        assert_eq!(keys.len(), graphs.len());
        for g in &graphs {
            let h = relabel(g, &mut rng);
            assert_eq!(canonical_key(&h), canonical_key(g));
            assert!(validate(&h, Some(&a)).valid);
            assert_eq!(
                stratum_dimension(&h, Some(&a)).unwrap().total,
                stratum_dimension(g, Some(&a)).unwrap().total
            );
        }
    }
}

#[test]
fn graphs_round_trip_through_json() {
    let a = HurwitzData::mixed(2, 1, 0, vec![2, 2, 2, 2]);
    for g in enumerate_graphs(&a, 6).unwrap() {
        let s = serde_json::to_string(&g).unwrap();
        let back: LevelGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
