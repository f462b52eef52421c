//! Canonical labeling of level graphs up to isomorphism fixing the markings.

use std::collections::HashMap;

use super::graph::{
    CoverType, Indexed, LevelGraph, Marking, SourceEdge, SourceGraph, SourceVertex, TargetEdge, TargetGraph,
    TargetVertex,
};

/// Canonical encoding: vertex rows, then edge rows, then marking rows.
pub type CanonicalKey = Vec<Vec<i64>>;

fn cover_code(c: CoverType) -> i64 {
    match c {
        CoverType::ArtinSchreier => 0,
        CoverType::Frobenius => 1,
        CoverType::Etale => 2,
    }
}

/// Encoding of `g` after renumbering source vertex `i` to `perm[i]`.
fn encode(g: &LevelGraph, ix: &Indexed<'_>, perm: &[usize]) -> CanonicalKey {
    let n = perm.len();
    // target vertex label: smallest new label over its fibre
    let mut tlabel: HashMap<u32, i64> = HashMap::new();
    for (i, v) in g.source.vertices.iter().enumerate() {
        let e = tlabel.entry(v.image).or_insert(i64::MAX);
        *e = (*e).min(perm[i] as i64);
    }
    let mut inv = vec![0usize; n];
    for (i, &q) in perm.iter().enumerate() {
        inv[q] = i;
    }
    let mut key: CanonicalKey = Vec::new();
    for &i in &inv {
        let v = &g.source.vertices[i];
        key.push(vec![v.level, v.genus as i64, cover_code(v.cover_type), tlabel[&v.image]]);
    }
    let mut edges: Vec<Vec<i64>> = g
        .source
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (perm[ix.sv[&e.v1]] as i64, perm[ix.sv[&e.v2]] as i64);
            let te = &g.target.edges[ix.te[&e.image]];
            let (ta, tb) = (tlabel[&te.v1], tlabel[&te.v2]);
            vec![-1, a.min(b), a.max(b), e.slope, ta.min(tb), ta.max(tb)]
        })
        .collect();
    edges.sort();
    key.extend(edges);
    let mut marks: Vec<Vec<i64>> = g
        .markings
        .iter()
        .map(|m| vec![-2, m.image as i64, perm[ix.sv[&m.vertex]] as i64, m.lambda as i64, m.xi as i64])
        .collect();
    marks.sort();
    key.extend(marks);
    key
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Smallest encoding over all relabelings that preserve vertex invariants.
/// Returns `None` when ids do not resolve.
pub fn canonical_key(g: &LevelGraph) -> Option<CanonicalKey> {
    Some(canonical_perm(g)?.0)
}

fn canonical_perm(g: &LevelGraph) -> Option<(CanonicalKey, Vec<usize>)> {
    let ix = Indexed::new(g)?;
    for e in &g.source.edges {
        ix.te.get(&e.image)?;
    }
    for e in &g.target.edges {
        ix.tv.get(&e.v1)?;
        ix.tv.get(&e.v2)?;
    }
    let n = g.source.vertices.len();
    // vertex invariant: level, genus, type, sorted incident slopes, marking labels
    let invariant = |i: usize| -> Vec<i64> {
        let v = &g.source.vertices[i];
        let mut slopes: Vec<i64> = ix.incident[i].iter().map(|&(k, _)| g.source.edges[k].slope).collect();
        slopes.sort();
        let mut marks: Vec<i64> = ix.marks[i].iter().map(|&k| g.markings[k].image as i64).collect();
        marks.sort();
        let mut out = vec![-v.level, v.genus as i64, cover_code(v.cover_type), slopes.len() as i64];
        out.extend(slopes);
        out.push(-1);
        out.extend(marks);
        out
    };
    let mut order: Vec<usize> = (0..n).collect();
    let inv: Vec<Vec<i64>> = (0..n).map(invariant).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    // classes of equal invariants occupy consecutive label ranges
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match classes.last_mut() {
            Some(c) if inv[c[0]] == inv[i] => c.push(i),
            _ => classes.push(vec![i]),
        }
    }
    let mut best: Option<(CanonicalKey, Vec<usize>)> = None;
    let mut arrangements: Vec<Vec<usize>> = classes.iter().map(|c| (0..c.len()).collect()).collect();
    loop {
        let mut perm = vec![0usize; n];
        let mut base = 0;
        for (c, arr) in classes.iter().zip(&arrangements) {
            for (slot, &member) in arr.iter().enumerate() {
                perm[c[member]] = base + slot;
            }
            base += c.len();
        }
        let key = encode(g, &ix, &perm);
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, perm));
        }
        // odometer over per-class permutations
        let mut advanced = false;
        for arr in arrangements.iter_mut() {
            if next_permutation(arr) {
                advanced = true;
                break;
            }
            arr.sort();
        }
        if !advanced {
            break;
        }
    }
    best
}

/// Relabels `g` into its canonical form with ids `0, 1, …`.
pub fn canonicalize(g: &LevelGraph) -> Option<LevelGraph> {
    let (_, perm) = canonical_perm(g)?;
    let ix = Indexed::new(g)?;
    let n = perm.len();
    let mut inv = vec![0usize; n];
    for (i, &q) in perm.iter().enumerate() {
        inv[q] = i;
    }
    let mut tmap: HashMap<u32, u32> = HashMap::new();
    let mut tverts = Vec::new();
    for &i in &inv {
        let v = &g.source.vertices[i];
        if !tmap.contains_key(&v.image) {
            let id = tmap.len() as u32;
            tmap.insert(v.image, id);
            let t = &g.target.vertices[ix.tv[&v.image]];
            tverts.push(TargetVertex {
                id,
                genus: t.genus,
                level: t.level,
            });
        }
    }
    for t in &g.target.vertices {
        if !tmap.contains_key(&t.id) {
            let id = tmap.len() as u32;
            tmap.insert(t.id, id);
            tverts.push(TargetVertex {
                id,
                genus: t.genus,
                level: t.level,
            });
        }
    }
    let mut tedges: Vec<(u32, u32, u32)> = g
        .target
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (tmap[&e.v1], tmap[&e.v2]);
            let (la, lb) = (tverts[a as usize].level, tverts[b as usize].level);
            let (a, b) = if la > lb || (la == lb && a <= b) { (a, b) } else { (b, a) };
            (a, b, e.id)
        })
        .collect();
    tedges.sort();
    let temap: HashMap<u32, u32> = tedges.iter().enumerate().map(|(k, &(_, _, id))| (id, k as u32)).collect();
    let target = TargetGraph {
        vertices: tverts,
        edges: tedges
            .iter()
            .enumerate()
            .map(|(k, &(v1, v2, _))| TargetEdge { id: k as u32, v1, v2 })
            .collect(),
    };
    let vertices: Vec<SourceVertex> = inv
        .iter()
        .enumerate()
        .map(|(new, &i)| {
            let v = &g.source.vertices[i];
            SourceVertex {
                id: new as u32,
                genus: v.genus,
                level: v.level,
                cover_type: v.cover_type,
                image: tmap[&v.image],
            }
        })
        .collect();
    let mut sedges: Vec<(u32, u32, i64, u32)> = g
        .source
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (perm[ix.sv[&e.v1]] as u32, perm[ix.sv[&e.v2]] as u32);
            let (la, lb) = (vertices[a as usize].level, vertices[b as usize].level);
            let (a, b) = if la > lb || (la == lb && a <= b) { (a, b) } else { (b, a) };
            (a, b, e.slope, temap[&e.image])
        })
        .collect();
    sedges.sort();
    let edges = sedges
        .iter()
        .enumerate()
        .map(|(k, &(v1, v2, slope, image))| SourceEdge {
            id: k as u32,
            v1,
            v2,
            slope,
            image,
        })
        .collect();
    let mut markings: Vec<Marking> = g
        .markings
        .iter()
        .map(|m| Marking {
            vertex: perm[ix.sv[&m.vertex]] as u32,
            ..m.clone()
        })
        .collect();
    markings.sort_by_key(|m| m.image);
    Some(LevelGraph {
        p: g.p,
        regime: g.regime,
        source: SourceGraph { vertices, edges },
        target,
        markings,
    })
}
