//! Enumeration of level graphs over a genus-0 target.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::canon::{canonical_key, canonicalize, CanonicalKey};
use super::graph::{
    CoverType, HurwitzData, LevelGraph, Marking, SourceEdge, SourceGraph, SourceVertex, TargetEdge, TargetGraph,
    TargetVertex,
};
use super::ledger::{generic_dimension, stratum_dimension};
use super::validate::validate;
use super::StrataError;

/// Decodes a Prüfer sequence on `n` vertices into its edge list.
fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn tree_key(edges: &[(usize, usize)], perm: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort();
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let mut i = n;
        while i > 1 && cur[i - 2] >= cur[i - 1] {
            i -= 1;
        }
        if i <= 1 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 2] {
            j -= 1;
        }
        cur.swap(i - 2, j);
        cur[i - 1..].reverse();
    }
    out
}

/// One representative per isomorphism class of trees on `n` vertices.
pub fn unlabeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let edges = prufer_edges(&seq, n);
        let key = perms.iter().map(|p| tree_key(&edges, p)).min().expect("non-empty");
        if seen.insert(key) {
            out.push(edges);
        }
    }
    out
}

/// Level assignments `0, -1, …, -L` hitting every level.
fn level_functions(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = cur.len();
        if i == n {
            let depth = -cur.iter().min().copied().unwrap_or(0);
            if (0..=depth).all(|l| cur.contains(&-l)) {
                out.push(cur.clone());
            }
            return;
        }
        for l in 0..n as i64 {
            cur[i] = -l;
            rec(i + 1, cur, out);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Top {
    As,
    Etale,
    Frob,
}

/// Where a marking of type `(λ, ξ)` may sit.
#[derive(Clone, Copy, PartialEq, Eq)]
enum MarkClass {
    /// λ = p, ξ = 0: Frobenius components.
    Frobenius,
    /// λ = p, ξ > 0: Artin-Schreier components.
    Wild,
    /// λ = 1: Artin-Schreier or étale components.
    Unramified,
}

struct Shape<'a> {
    a: &'a HurwitzData,
    edges: &'a [(usize, usize)],
    levels: &'a [i64],
    types: Vec<Top>,
    min_level: i64,
}

/// Compositions of `total` into `parts` values `t ≥ lo` satisfying `ok(t)`.
fn compositions(total: i64, parts: usize, lo: i64, ok: &dyn Fn(i64) -> bool) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let hi = total - lo * (parts as i64 - 1);
    let mut t = lo;
    while t <= hi {
        if ok(t) {
            for mut rest in compositions(total - t, parts - 1, lo, ok) {
                rest.insert(0, t);
                out.push(rest);
            }
        }
        t += 1;
    }
    out
}

impl Shape<'_> {
    fn n(&self) -> usize {
        self.levels.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Assigns every marking to a target vertex and, on étale vertices, a sheet.
    fn mark_choices(&self, classes: &[MarkClass]) -> Vec<Vec<(usize, usize)>> {
        let p = self.a.p as usize;
        let options: Vec<Vec<(usize, usize)>> = classes
            .iter()
            .map(|c| {
                let mut o = Vec::new();
                for v in 0..self.n() {
                    match (c, self.types[v]) {
                        (MarkClass::Frobenius, Top::Frob) => {
                            if self.a.regime == super::Regime::Equicharacteristic || self.levels[v] == self.min_level {
                                o.push((v, 0));
                            }
                        }
                        (MarkClass::Wild | MarkClass::Unramified, Top::As) => o.push((v, 0)),
                        (MarkClass::Unramified, Top::Etale) => o.extend((0..p).map(|s| (v, s))),
                        _ => {}
                    }
                }
                o
            })
            .collect();
        let mut out = vec![Vec::new()];
        for opts in options {
            let mut next = Vec::with_capacity(out.len() * opts.len());
            for prefix in &out {
                for &o in &opts {
                    let mut x: Vec<(usize, usize)> = prefix.clone();
                    x.push(o);
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    /// Every stable genus-0 component needs three special points.
    fn stable_enough(&self, marks_at: &[usize]) -> bool {
        (0..self.n()).all(|v| match self.types[v] {
            Top::Frob | Top::Etale => self.degree(v) + marks_at[v] >= 3,
            Top::As => true,
        })
    }

    /// Slopes of tree edges solving the Frobenius balance, lowest level first.
    fn slope_solutions(&self, marks: &[(usize, usize)]) -> Vec<Vec<i64>> {
        let p = self.a.p as i64;
        let p1 = p - 1;
        let n = self.n();
        let mut order: Vec<usize> = (0..n).filter(|&v| self.types[v] == Top::Frob).collect();
        order.sort_by_key(|&v| self.levels[v]);
        let mut slopes = vec![0i64; self.edges.len()];
        let mut out = Vec::new();
        self.solve(0, &order, marks, &mut slopes, p1, &mut out);
        out
    }

    fn solve(
        &self,
        i: usize,
        order: &[usize],
        marks: &[(usize, usize)],
        slopes: &mut Vec<i64>,
        p1: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == order.len() {
            out.push(slopes.clone());
            return;
        }
        let v = order[i];
        let p = p1 + 1;
        let mut s = 0i64;
        let mut ups = Vec::new();
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if a != v && b != v {
                continue;
            }
            let w = if a == v { b } else { a };
            match self.levels[w].cmp(&self.levels[v]) {
                std::cmp::Ordering::Less => s += slopes[k] + p1,
                std::cmp::Ordering::Equal => s += p1,
                std::cmp::Ordering::Greater => ups.push(k),
            }
        }
        for (k, &(mv, _)) in marks.iter().enumerate() {
            if mv == v {
                s += self.a.xi[k] as i64 + p1;
            }
        }
        // Σ_up (κ - (p-1)) = s - (2p - 2) with κ ≥ 1 and κ prime to p
        let ok = |t: i64| (t + p1) % p != 0;
        for comp in compositions(s - 2 * p1, ups.len(), 2 - p, &ok) {
            for (&k, &t) in ups.iter().zip(&comp) {
                slopes[k] = t + p1;
            }
            self.solve(i + 1, order, marks, slopes, p1, out);
        }
    }

    fn build(&self, marks: &[(usize, usize)], slopes: &[i64]) -> Option<LevelGraph> {
        let a = self.a;
        let p = a.p as i64;
        let p1 = p - 1;
        let n = self.n();
        // source vertex ids per target vertex (sheets for étale)
        let mut ids: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut next = 0u32;
        for v in 0..n {
            let count = if self.types[v] == Top::Etale { a.p } else { 1 };
            ids.push((next..next + count).collect());
            next += count;
        }
        let mut vertices = Vec::new();
        for v in 0..n {
            let cover_type = match self.types[v] {
                Top::As => CoverType::ArtinSchreier,
                Top::Etale => CoverType::Etale,
                Top::Frob => CoverType::Frobenius,
            };
            let genus = if self.types[v] == Top::As {
                let mut branch_sum = 0i64;
                let mut branches = 0i64;
                for (k, &(x, y)) in self.edges.iter().enumerate() {
                    if (x == v || y == v) && self.levels[x] != self.levels[y] {
                        branch_sum += slopes[k] / p1;
                        branches += 1;
                    }
                }
                for (k, &(mv, _)) in marks.iter().enumerate() {
                    if mv == v && a.xi[k] > 0 {
                        branch_sum += a.xi[k] as i64 / p1;
                        branches += 1;
                    }
                }
                let twice = p1 * (branch_sum + branches - 2);
                if twice < 0 || twice % 2 != 0 {
                    return None;
                }
                (twice / 2) as u64
            } else {
                0
            };
            for &id in &ids[v] {
                vertices.push(SourceVertex {
                    id,
                    genus,
                    level: self.levels[v],
                    cover_type,
                    image: v as u32,
                });
            }
        }
        let mut edges = Vec::new();
        let mut tedges = Vec::new();
        for (k, &(x, y)) in self.edges.iter().enumerate() {
            let (hi, lo) = if self.levels[x] >= self.levels[y] { (x, y) } else { (y, x) };
            tedges.push(TargetEdge {
                id: k as u32,
                v1: hi as u32,
                v2: lo as u32,
            });
            let pairs: Vec<(u32, u32)> = match (self.types[hi], self.types[lo]) {
                (Top::Etale, Top::Etale) => ids[hi].iter().copied().zip(ids[lo].iter().copied()).collect(),
                (Top::Etale, _) => ids[hi].iter().map(|&s| (s, ids[lo][0])).collect(),
                (_, Top::Etale) => ids[lo].iter().map(|&s| (ids[hi][0], s)).collect(),
                (Top::As, Top::As) => (0..a.p).map(|_| (ids[hi][0], ids[lo][0])).collect(),
                _ => vec![(ids[hi][0], ids[lo][0])],
            };
            for (v1, v2) in pairs {
                edges.push(SourceEdge {
                    id: edges.len() as u32,
                    v1,
                    v2,
                    slope: slopes[k],
                    image: k as u32,
                });
            }
        }
        let markings = marks
            .iter()
            .enumerate()
            .map(|(k, &(v, sheet))| Marking {
                vertex: ids[v][sheet],
                lambda: a.lambda[k],
                xi: a.xi[k],
                image: k as u32,
            })
            .collect();
        Some(LevelGraph {
            p: a.p,
            regime: a.regime,
            source: SourceGraph { vertices, edges },
            target: TargetGraph {
                vertices: (0..n)
                    .map(|v| TargetVertex {
                        id: v as u32,
                        genus: 0,
                        level: self.levels[v],
                    })
                    .collect(),
                edges: tedges,
            },
            markings,
        })
    }
}

fn check_supported(a: &HurwitzData) -> Result<(), StrataError> {
    if a.p != 2 || a.g != 0 {
        return Err(StrataError::Unsupported(format!(
            "enumeration needs p = 2 and g = 0, got p = {}, g = {}",
            a.p, a.g
        )));
    }
    if a.lambda.len() != a.n || a.xi.len() != a.n {
        return Err(StrataError::Data("Λ and Ξ must have N entries".into()));
    }
    Ok(())
}

/// All valid level graphs realizing `a` with at most `max_vertices` source
/// components, one per isomorphism class, in canonical order.
pub fn enumerate_graphs(a: &HurwitzData, max_vertices: usize) -> Result<Vec<LevelGraph>, StrataError> {
    check_supported(a)?;
    if !a.problems().is_empty() {
        return Ok(Vec::new());
    }
    let p = a.p;
    let classes: Vec<MarkClass> = (0..a.n)
        .map(|k| match (a.lambda[k] == p, a.xi[k] > 0) {
            (true, false) => Some(MarkClass::Frobenius),
            (true, true) => Some(MarkClass::Wild),
            (false, false) if a.lambda[k] == 1 => Some(MarkClass::Unramified),
            _ => None,
        })
        .collect::<Option<_>>()
        .unwrap_or_default();
    if classes.len() != a.n {
        return Ok(Vec::new());
    }

    let mut work: Vec<(Vec<(usize, usize)>, Vec<i64>)> = Vec::new();
    for k in 1..=max_vertices {
        let levels = level_functions(k);
        for tree in unlabeled_trees(k) {
            for lv in &levels {
                work.push((tree.clone(), lv.clone()));
            }
        }
    }

    let found: Vec<(CanonicalKey, LevelGraph)> = work
        .par_iter()
        .flat_map_iter(|(tree, levels)| shapes_for(a, tree, levels, &classes, max_vertices))
        .collect();
    let mut merged: BTreeMap<CanonicalKey, LevelGraph> = BTreeMap::new();
    for (key, g) in found {
        merged.entry(key).or_insert(g);
    }
    Ok(merged.into_values().collect())
}

fn shapes_for(
    a: &HurwitzData,
    tree: &[(usize, usize)],
    levels: &[i64],
    classes: &[MarkClass],
    max_vertices: usize,
) -> Vec<(CanonicalKey, LevelGraph)> {
    let n = levels.len();
    let p = a.p as usize;
    let min_level = *levels.iter().min().expect("non-empty");
    let tops: Vec<usize> = (0..n).filter(|&v| levels[v] == 0).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << tops.len()) {
        let mut types = vec![Top::Frob; n];
        for (bit, &v) in tops.iter().enumerate() {
            types[v] = if mask & (1 << bit) != 0 { Top::Etale } else { Top::As };
        }
        let sources: usize = types.iter().map(|&t| if t == Top::Etale { p } else { 1 }).sum();
        if sources > max_vertices {
            continue;
        }
        // étale components only meet horizontal edges
        if tree
            .iter()
            .any(|&(x, y)| levels[x] != levels[y] && (types[x] == Top::Etale || types[y] == Top::Etale))
        {
            continue;
        }
        let shape = Shape {
            a,
            edges: tree,
            levels,
            types,
            min_level,
        };
        for marks in shape.mark_choices(classes) {
            let mut marks_at = vec![0usize; n];
            for &(v, _) in &marks {
                marks_at[v] += 1;
            }
            if !shape.stable_enough(&marks_at) {
                continue;
            }
            for slopes in shape.slope_solutions(&marks) {
                let Some(g) = shape.build(&marks, &slopes) else { continue };
                if !validate(&g, Some(a)).valid {
                    continue;
                }
                if let (Some(key), Some(c)) = (canonical_key(&g), canonicalize(&g)) {
                    out.push((key, c));
                }
            }
        }
    }
    out
}

/// Irreducible components of the special fibre: the enumerated strata whose
/// dimension equals that of the generic stratum.
pub fn enumerate_components(a: &HurwitzData, max_vertices: usize) -> Result<Vec<LevelGraph>, StrataError> {
    check_supported(a)?;
    let Ok(generic) = generic_dimension(a) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for g in enumerate_graphs(a, max_vertices)? {
        if stratum_dimension(&g, Some(a))?.total == generic {
            out.push(g);
        }
    }
    Ok(out)
}
