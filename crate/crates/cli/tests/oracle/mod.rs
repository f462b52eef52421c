//! A slow, independent enumeration of level graphs over a genus-0 target tree.
//!
//! Everything is generated labeled and filtered by a direct transcription of
//! the validity rules; isomorphic copies are merged by a brute-force canonical
//! form over all relabelings of the source vertices. Dimensions are recounted
//! from the vertex formulas without going through the library ledger.

use std::collections::{BTreeMap, BTreeSet};

use lhur_core::strata::{
    CoverType, HurwitzData, LevelGraph, Marking, Regime, SourceEdge, SourceGraph, SourceVertex, TargetEdge,
    TargetGraph, TargetVertex,
};

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in perms(n - 1) {
        for pos in 0..n {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// Labeled trees on `t` vertices as edge subsets of the complete graph.
fn labeled_trees(t: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|a| (a + 1..t).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        if mask.count_ones() as usize != t.saturating_sub(1) {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let mut parent: Vec<usize> = (0..t).collect();
        let mut ok = true;
        for &(a, b) in &chosen {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                ok = false;
                break;
            }
            parent[ra] = rb;
        }
        if ok {
            out.push(chosen);
        }
    }
    out
}

/// Level trees up to relabeling of the target vertices.
fn level_trees(t: usize) -> Vec<(Vec<(usize, usize)>, Vec<i64>)> {
    let ps = perms(t);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for tree in labeled_trees(t) {
        let total = t.pow(t as u32);
        for mut code in 0..total {
            let mut lv = vec![0i64; t];
            for x in lv.iter_mut() {
                *x = -((code % t) as i64);
                code /= t;
            }
            let depth = -lv.iter().min().unwrap();
            if !(0..=depth).all(|l| lv.contains(&-l)) {
                continue;
            }
            let key = ps
                .iter()
                .map(|pi| {
                    let mut e: Vec<(usize, usize)> = tree
                        .iter()
                        .map(|&(a, b)| (pi[a].min(pi[b]), pi[a].max(pi[b])))
                        .collect();
                    e.sort();
                    let mut l = vec![0; t];
                    for v in 0..t {
                        l[pi[v]] = lv[v];
                    }
                    (e, l)
                })
                .min()
                .unwrap();
            if seen.insert(key) {
                out.push((tree.clone(), lv));
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Ty {
    As,
    Et,
    Fr,
}

struct Frame {
    p: i64,
    /// (target vertex, type) per source vertex
    verts: Vec<(usize, Ty)>,
    levels: Vec<i64>,
    /// (upper source vertex, lower source vertex, target edge)
    edges: Vec<(usize, usize, usize)>,
    target_edges: Vec<(usize, usize)>,
}

impl Frame {
    fn vertical(&self, te: usize) -> bool {
        let (a, b) = self.target_edges[te];
        self.levels[a] != self.levels[b]
    }
}

/// Validity rules, checked directly on the frame with slopes, genera and marks.
fn valid(fr: &Frame, a: &HurwitzData, slopes: &[i64], genus: &[i64], marks: &[usize]) -> bool {
    let p = fr.p;
    let lvl = |v: usize| fr.levels[fr.verts[v].0];
    let min_level = *fr.levels.iter().min().unwrap();
    // markings
    for (k, &v) in marks.iter().enumerate() {
        let (lambda, xi) = (a.lambda[k] as i64, a.xi[k] as i64);
        let ty = fr.verts[v].1;
        let ok = match a.regime {
            Regime::Mixed => ty == Ty::Fr && lvl(v) == min_level && lambda == p && xi == 0,
            Regime::Equicharacteristic => match ty {
                Ty::Fr => lambda == p && xi == 0,
                Ty::Et => lambda == 1 && xi == 0,
                Ty::As => (lambda == 1 && xi == 0) || (lambda == p && xi > 0 && xi % p != 0 && xi % (p - 1) == 0),
            },
        };
        if !ok {
            return false;
        }
    }
    for v in 0..fr.verts.len() {
        let (tv, ty) = fr.verts[v];
        let mut specials = 0i64;
        let mut plain = 0i64;
        let mut branch: Vec<i64> = Vec::new();
        for (k, &(hi, lo, te)) in fr.edges.iter().enumerate() {
            let s = slopes[k];
            if hi != v && lo != v {
                continue;
            }
            specials += 1;
            if !fr.vertical(te) {
                plain += p - 1;
                continue;
            }
            if ty == Ty::Fr && s % p == 0 {
                return false;
            }
            if hi == v {
                plain += s + p - 1;
                branch.push(s);
            } else {
                plain -= s - (p - 1);
            }
        }
        for (k, &mv) in marks.iter().enumerate() {
            let on_fibre = fr.verts[mv].0 == tv;
            match ty {
                Ty::Et if on_fibre => specials += 1,
                Ty::As if mv == v => {
                    if a.xi[k] > 0 {
                        specials += 1;
                        branch.push(a.xi[k] as i64);
                    } else {
                        specials += p;
                    }
                }
                Ty::Fr if mv == v => {
                    specials += 1;
                    plain += a.xi[k] as i64 + p - 1;
                }
                _ => {}
            }
        }
        if 2 * genus[v] - 2 + specials <= 0 {
            return false;
        }
        match ty {
            Ty::Fr => {
                if plain != 2 * p - 2 {
                    return false;
                }
            }
            Ty::As => {
                if branch.is_empty() || branch.iter().any(|l| l % (p - 1) != 0 || l % p == 0) {
                    return false;
                }
                let sum_e: i64 = branch.iter().map(|l| l / (p - 1) + 1).sum();
                if (2 * genus[v]) % (p - 1) != 0 || sum_e != 2 * genus[v] / (p - 1) + 2 {
                    return false;
                }
            }
            Ty::Et => {}
        }
    }
    // source connectivity
    let n = fr.verts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for &(x, y, _) in &fr.edges {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        parent[rx] = ry;
    }
    let r0 = find(&mut parent, 0);
    if !(0..n).all(|v| find(&mut parent, v) == r0) {
        return false;
    }
    // total genus
    let h = genus.iter().sum::<i64>() + fr.edges.len() as i64 - n as i64 + 1;
    h == a.h as i64
}

/// Dimension of the stratum from the per-vertex counts.
fn dimension(fr: &Frame, a: &HurwitzData, slopes: &[i64], genus: &[i64], marks: &[usize]) -> i64 {
    let p = fr.p;
    let min_level = *fr.levels.iter().min().unwrap();
    let mut dim = 0;
    for v in 0..fr.verts.len() {
        let (tv, ty) = fr.verts[v];
        match ty {
            Ty::As => {
                let mut floors = 0;
                let mut n_unram = 0;
                let mut sum_e = 0;
                for (k, &(hi, _, te)) in fr.edges.iter().enumerate() {
                    if hi == v && fr.vertical(te) {
                        let e = slopes[k] / (p - 1) + 1;
                        floors += (e - 1) / p;
                        sum_e += e;
                    }
                }
                for (k, &mv) in marks.iter().enumerate() {
                    if mv == v {
                        if a.xi[k] > 0 {
                            let e = a.xi[k] as i64 / (p - 1) + 1;
                            floors += (e - 1) / p;
                            sum_e += e;
                        } else {
                            n_unram += 1;
                        }
                    }
                }
                let horizontal = fr
                    .target_edges
                    .iter()
                    .enumerate()
                    .filter(|&(te, &(x, y))| !fr.vertical(te) && (x == tv || y == tv))
                    .count() as i64;
                assert_eq!(sum_e, 2 * genus[v] / (p - 1) + 2);
                dim += 2 * genus[v] / (p - 1) + n_unram + horizontal - 1 - floors;
            }
            Ty::Fr => {
                let mut orders: Vec<i64> = Vec::new();
                for (k, &(hi, lo, te)) in fr.edges.iter().enumerate() {
                    if !fr.vertical(te) && (hi == v || lo == v) {
                        orders.push(p - 1);
                    } else if hi == v {
                        orders.push(slopes[k] + p - 1);
                    } else if lo == v {
                        orders.push(p - 1 - slopes[k]);
                    }
                }
                for (k, &mv) in marks.iter().enumerate() {
                    if mv == v {
                        orders.push(a.xi[k] as i64 + p - 1);
                    }
                }
                let floors: i64 = orders.iter().map(|m| m.div_euclid(p)).sum();
                let quasi = a.regime == Regime::Mixed && fr.levels[tv] == min_level;
                dim += orders.len() as i64 - if quasi { 3 } else { 4 } + floors;
            }
            Ty::Et => {}
        }
    }
    // étale target vertices: special points minus automorphisms, once per fibre
    let mut etale_targets: Vec<usize> = fr.verts.iter().filter(|v| v.1 == Ty::Et).map(|v| v.0).collect();
    etale_targets.dedup();
    for tv in etale_targets {
        let edges = fr.target_edges.iter().filter(|&&(x, y)| x == tv || y == tv).count() as i64;
        let m = marks.iter().filter(|&&mv| fr.verts[mv].0 == tv).count() as i64;
        dim += edges + m - 3;
    }
    dim
}

fn generic(a: &HurwitzData) -> i64 {
    let p = a.p as i64;
    match a.regime {
        Regime::Mixed => a.n as i64 - 3,
        Regime::Equicharacteristic => {
            a.n as i64 - 3 + a.xi.iter().map(|&x| (x as i64 + p - 1) / p).sum::<i64>()
        }
    }
}

fn to_graph(fr: &Frame, a: &HurwitzData, slopes: &[i64], genus: &[i64], marks: &[usize]) -> LevelGraph {
    LevelGraph {
        p: a.p,
        regime: a.regime,
        source: SourceGraph {
            vertices: fr
                .verts
                .iter()
                .enumerate()
                .map(|(i, &(tv, ty))| SourceVertex {
                    id: i as u32,
                    genus: genus[i] as u64,
                    level: fr.levels[tv],
                    cover_type: match ty {
                        Ty::As => CoverType::ArtinSchreier,
                        Ty::Et => CoverType::Etale,
                        Ty::Fr => CoverType::Frobenius,
                    },
                    image: tv as u32,
                })
                .collect(),
            edges: fr
                .edges
                .iter()
                .enumerate()
                .map(|(k, &(hi, lo, te))| SourceEdge {
                    id: k as u32,
                    v1: hi as u32,
                    v2: lo as u32,
                    slope: slopes[k],
                    image: te as u32,
                })
                .collect(),
        },
        target: TargetGraph {
            vertices: fr
                .levels
                .iter()
                .enumerate()
                .map(|(i, &level)| TargetVertex { id: i as u32, genus: 0, level })
                .collect(),
            edges: fr
                .target_edges
                .iter()
                .enumerate()
                .map(|(k, &(x, y))| TargetEdge { id: k as u32, v1: x as u32, v2: y as u32 })
                .collect(),
        },
        markings: marks
            .iter()
            .enumerate()
            .map(|(k, &v)| Marking {
                vertex: v as u32,
                lambda: a.lambda[k],
                xi: a.xi[k],
                image: k as u32,
            })
            .collect(),
    }
}

/// Lexicographically least description over all relabelings of the source vertices.
pub fn canonical(g: &LevelGraph) -> String {
    let sv = &g.source.vertices;
    let index: BTreeMap<u32, usize> = sv.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let code = |t: CoverType| match t {
        CoverType::ArtinSchreier => 0,
        CoverType::Etale => 1,
        CoverType::Frobenius => 2,
    };
    perms(sv.len())
        .into_iter()
        .map(|pi| {
            let target_label = |image: u32| {
                sv.iter().enumerate().filter(|(_, w)| w.image == image).map(|(j, _)| pi[j]).min().unwrap()
            };
            let mut verts = vec![(0i64, 0u64, 0u8, 0usize); sv.len()];
            for (i, v) in sv.iter().enumerate() {
                verts[pi[i]] = (v.level, v.genus, code(v.cover_type), target_label(v.image));
            }
            let mut edges: Vec<(usize, usize, i64)> = g
                .source
                .edges
                .iter()
                .map(|e| {
                    let (x, y) = (pi[index[&e.v1]], pi[index[&e.v2]]);
                    (x.min(y), x.max(y), e.slope)
                })
                .collect();
            edges.sort();
            let mut marks: Vec<(u32, usize, u32, u32)> =
                g.markings.iter().map(|m| (m.image, pi[index[&m.vertex]], m.lambda, m.xi)).collect();
            marks.sort();
            format!("{verts:?}|{edges:?}|{marks:?}")
        })
        .min()
        .unwrap()
}

/// Canonical forms of all valid level graphs realizing `a` with at most
/// `max_source` source components, and of those of generic dimension.
pub fn brute_force(a: &HurwitzData, max_source: usize) -> (BTreeSet<String>, BTreeSet<String>) {
    let p = a.p as i64;
    let mut all = BTreeSet::new();
    let mut comps = BTreeSet::new();
    let gen = generic(a);
    let slope_cap = 1 + a.n as i64 + a.xi.iter().map(|&x| x as i64).sum::<i64>() + 2 * max_source as i64;
    for t in 1..=max_source {
        for (tree, levels) in level_trees(t) {
            let tops: Vec<usize> = (0..t).filter(|&v| levels[v] == 0).collect();
            for mask in 0u32..(1 << tops.len()) {
                let mut ty = vec![Ty::Fr; t];
                for (bit, &v) in tops.iter().enumerate() {
                    ty[v] = if mask >> bit & 1 == 1 { Ty::Et } else { Ty::As };
                }
                let mut verts = Vec::new();
                let mut fibre: Vec<Vec<usize>> = vec![Vec::new(); t];
                for v in 0..t {
                    let count = if ty[v] == Ty::Et { p as usize } else { 1 };
                    for _ in 0..count {
                        fibre[v].push(verts.len());
                        verts.push((v, ty[v]));
                    }
                }
                if verts.len() > max_source {
                    continue;
                }
                let target_edges: Vec<(usize, usize)> = tree
                    .iter()
                    .map(|&(x, y)| if levels[x] >= levels[y] { (x, y) } else { (y, x) })
                    .collect();
                // étale components only meet horizontal edges
                if target_edges
                    .iter()
                    .any(|&(x, y)| levels[x] != levels[y] && (ty[x] == Ty::Et || ty[y] == Ty::Et))
                {
                    continue;
                }
                // every way of lifting the target edges
                let mut liftings: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new()];
                for (te, &(x, y)) in target_edges.iter().enumerate() {
                    let options: Vec<Vec<(usize, usize, usize)>> = if levels[x] == levels[y] && levels[x] == 0 {
                        match (ty[x], ty[y]) {
                            (Ty::Et, Ty::Et) => perms(p as usize)
                                .into_iter()
                                .map(|s| (0..p as usize).map(|i| (fibre[x][i], fibre[y][s[i]], te)).collect())
                                .collect(),
                            (Ty::Et, _) => vec![fibre[x].iter().map(|&s| (s, fibre[y][0], te)).collect()],
                            (_, Ty::Et) => vec![fibre[y].iter().map(|&s| (fibre[x][0], s, te)).collect()],
                            _ => vec![(0..p).map(|_| (fibre[x][0], fibre[y][0], te)).collect()],
                        }
                    } else {
                        vec![vec![(fibre[x][0], fibre[y][0], te)]]
                    };
                    let mut next = Vec::new();
                    for l in &liftings {
                        for o in &options {
                            let mut m = l.clone();
                            m.extend(o.iter().copied());
                            next.push(m);
                        }
                    }
                    liftings = next;
                }
                for edges in liftings {
                    let fr = Frame {
                        p,
                        verts: verts.clone(),
                        levels: levels.clone(),
                        edges,
                        target_edges: target_edges.clone(),
                    };
                    search(&fr, a, slope_cap, gen, &mut all, &mut comps);
                }
            }
        }
    }
    (all, comps)
}

/// Whether marking `k` may sit on source vertex `v` at all.
fn mark_allowed(fr: &Frame, a: &HurwitzData, k: usize, v: usize) -> bool {
    let p = fr.p;
    let min_level = *fr.levels.iter().min().unwrap();
    let (lambda, xi) = (a.lambda[k] as i64, a.xi[k] as i64);
    match (a.regime, fr.verts[v].1) {
        (Regime::Mixed, Ty::Fr) => fr.levels[fr.verts[v].0] == min_level && lambda == p && xi == 0,
        (Regime::Mixed, _) => false,
        (Regime::Equicharacteristic, Ty::Fr) => lambda == p && xi == 0,
        (Regime::Equicharacteristic, Ty::Et) => lambda == 1 && xi == 0,
        (Regime::Equicharacteristic, Ty::As) => {
            (lambda == 1 && xi == 0) || (lambda == p && xi > 0 && xi % p != 0 && xi % (p - 1) == 0)
        }
    }
}

fn product(choices: &[Vec<i64>], mut f: impl FnMut(&[i64])) {
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut cur: Vec<i64> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&cur);
        let mut i = 0;
        loop {
            if i == choices.len() {
                return;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                cur[i] = choices[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = choices[i][0];
            i += 1;
        }
    }
}

fn search(fr: &Frame, a: &HurwitzData, slope_cap: i64, gen: i64, all: &mut BTreeSet<String>, comps: &mut BTreeSet<String>) {
    let nv = fr.verts.len();
    let vertical: Vec<usize> = (0..fr.target_edges.len()).filter(|&te| fr.vertical(te)).collect();
    let as_vertices: Vec<usize> = (0..nv).filter(|&v| fr.verts[v].1 == Ty::As).collect();
    let mark_choices: Vec<Vec<i64>> = (0..a.n)
        .map(|k| (0..nv).filter(|&v| mark_allowed(fr, a, k, v)).map(|v| v as i64).collect())
        .collect();
    // the lower end of a vertical edge is always a Frobenius component
    let slope_choices: Vec<Vec<i64>> = vertical.iter().map(|_| (1..=slope_cap).filter(|s| s % fr.p != 0).collect()).collect();
    let genus_choices: Vec<Vec<i64>> = as_vertices.iter().map(|_| (0..=a.h as i64).collect()).collect();
    // most zero orders of Frobenius components come from markings; bound what they can supply
    let budget: i64 = (0..a.n)
        .filter(|&k| mark_choices[k].iter().any(|&v| fr.verts[v as usize].1 == Ty::Fr))
        .map(|k| a.xi[k] as i64 + fr.p - 1)
        .sum();
    product(&slope_choices, |vs| {
        let mut per_target = vec![0i64; fr.target_edges.len()];
        for (&te, &s) in vertical.iter().zip(vs) {
            per_target[te] = s;
        }
        let slopes: Vec<i64> = fr.edges.iter().map(|&(_, _, te)| per_target[te]).collect();
        let mut deficit = 0;
        for v in (0..nv).filter(|&v| fr.verts[v].1 == Ty::Fr) {
            let mut plain = 0;
            for (k, &(hi, lo, te)) in fr.edges.iter().enumerate() {
                if !fr.vertical(te) && (hi == v || lo == v) {
                    plain += fr.p - 1;
                } else if hi == v {
                    plain += slopes[k] + fr.p - 1;
                } else if lo == v {
                    plain -= slopes[k] - (fr.p - 1);
                }
            }
            let d = 2 * fr.p - 2 - plain;
            if d < 0 {
                return;
            }
            deficit += d;
        }
        if deficit > budget {
            return;
        }
        product(&mark_choices, |marks| {
            let marks: Vec<usize> = marks.iter().map(|&m| m as usize).collect();
            product(&genus_choices, |gs| {
                let mut genus = vec![0i64; nv];
                for (&v, &g) in as_vertices.iter().zip(gs) {
                    genus[v] = g;
                }
                if valid(fr, a, &slopes, &genus, &marks) {
                    let g = to_graph(fr, a, &slopes, &genus, &marks);
                    let key = canonical(&g);
                    if dimension(fr, a, &slopes, &genus, &marks) == gen {
                        comps.insert(key.clone());
                    }
                    all.insert(key);
                }
            });
        });
    });
}
