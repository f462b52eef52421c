//! Structural and numerical consistency checks for level graphs.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::graph::{CoverType, Direction, HurwitzData, Indexed, LevelGraph, Regime};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.rule, self.location, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub hurwitz: Option<HurwitzData>,
}

/// A rescaling relation `κ·δ_e = s_a + … + s_{b}` written additively: the
/// smoothing parameter of edge `e` to the power `κ` equals the product of the
/// level parameters strictly between its endpoints (upper end excluded).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RescalingRelation {
    pub edge: u32,
    pub slope: i64,
    pub levels: Vec<i64>,
}

impl fmt::Display for RescalingRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs = if self.levels.is_empty() {
            "0".to_string()
        } else {
            self.levels.iter().map(|l| format!("s[{l}]")).collect::<Vec<_>>().join(" + ")
        };
        write!(f, "{}·δ[{}] = {}", self.slope, self.edge, rhs)
    }
}

pub fn rescaling_relations(g: &LevelGraph) -> Vec<RescalingRelation> {
    let lvl: HashMap<u32, i64> = g.source.vertices.iter().map(|v| (v.id, v.level)).collect();
    g.source
        .edges
        .iter()
        .filter_map(|e| {
            let (a, b) = (*lvl.get(&e.v1)?, *lvl.get(&e.v2)?);
            let (hi, lo) = (a.max(b), a.min(b));
            Some(RescalingRelation {
                edge: e.id,
                slope: e.slope,
                levels: (lo..hi).collect(),
            })
        })
        .collect()
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, rule: &'static str, location: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation {
            rule,
            location: location.into(),
            message: message.into(),
        });
    }
}

fn connected(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|i| find(&mut parent, i) == root)
}

/// Validates `g`, and when `a` is given also checks that the graph realizes it.
pub fn validate(g: &LevelGraph, a: Option<&HurwitzData>) -> ValidationReport {
    let mut c = Collector(Vec::new());
    let p = g.p as i64;
    if !crate::ffield::is_prime(g.p as u64) {
        c.push("structure", "graph", format!("p = {} is not prime", g.p));
    }
    check_ids(g, &mut c);
    if !c.0.is_empty() {
        return ValidationReport {
            valid: false,
            violations: c.0,
            hurwitz: None,
        };
    }
    let ix = Indexed::new(g).expect("ids checked");
    let sv = &g.source.vertices;
    let tvs = &g.target.vertices;

    // levels
    let levels: BTreeSet<i64> = sv.iter().map(|v| v.level).collect();
    let depth = levels.len() as i64;
    if levels != (-(depth - 1)..=0).collect::<BTreeSet<i64>>() {
        c.push("levels", "graph", format!("source levels {levels:?} do not form {{0, …, -L}}"));
    }
    let min_level = ix.min_level();
    for v in sv {
        let t = &tvs[ix.tv[&v.image]];
        if t.level != v.level {
            c.push("levels", format!("source vertex {}", v.id), "level differs from its image");
        }
        match (v.level == 0, v.cover_type) {
            (true, CoverType::Frobenius) => {
                c.push("cover-type", format!("source vertex {}", v.id), "Frobenius component at the top level")
            }
            (false, CoverType::ArtinSchreier | CoverType::Etale) => c.push(
                "cover-type",
                format!("source vertex {}", v.id),
                "separable component below the top level",
            ),
            _ => {}
        }
        if v.cover_type != CoverType::ArtinSchreier && v.genus != 0 {
            c.push("cover-type", format!("source vertex {}", v.id), "Frobenius and étale components have genus 0");
        }
    }
    for t in tvs {
        if t.genus != 0 {
            c.push("target", format!("target vertex {}", t.id), "target components must have genus 0");
        }
    }

    // fibres over target vertices
    let mut fibre: Vec<Vec<usize>> = vec![Vec::new(); tvs.len()];
    for (i, v) in sv.iter().enumerate() {
        fibre[ix.tv[&v.image]].push(i);
    }
    for (t, f) in fibre.iter().enumerate() {
        let loc = format!("target vertex {}", tvs[t].id);
        let types: BTreeSet<CoverType> = f.iter().map(|&i| sv[i].cover_type).collect();
        match (types.len(), types.iter().next()) {
            (0, _) => c.push("fibre", loc, "no source component above"),
            (1, Some(CoverType::Etale)) => {
                if f.len() != g.p as usize {
                    c.push("fibre", loc, format!("étale fibre has {} sheets instead of p", f.len()));
                }
            }
            (1, Some(_)) => {
                if f.len() != 1 {
                    c.push("fibre", loc, "an Artin-Schreier or Frobenius fibre has exactly one component");
                }
            }
            _ => c.push("fibre", loc, "mixed component types over one target vertex"),
        }
    }

    // edges
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); g.target.edges.len()];
    for (k, e) in g.source.edges.iter().enumerate() {
        let loc = format!("source edge {}", e.id);
        let (a, b) = (&sv[ix.sv[&e.v1]], &sv[ix.sv[&e.v2]]);
        let te = &g.target.edges[ix.te[&e.image]];
        preimages[ix.te[&e.image]].push(k);
        if e.v1 == e.v2 {
            c.push("edges", &loc, "self-loops are not supported");
        }
        let ends_ok = (a.image == te.v1 && b.image == te.v2) || (a.level == b.level && a.image == te.v2 && b.image == te.v1);
        if !ends_ok {
            c.push("edges", &loc, "endpoints do not map to the endpoints of the image edge");
        }
        if a.level < b.level {
            c.push("edges", &loc, "v1 must be the upper endpoint");
        }
        if a.level == b.level {
            if e.slope != 0 {
                c.push("slopes", &loc, "horizontal edges have slope 0");
            }
        } else if e.slope <= 0 {
            c.push("slopes", &loc, "vertical edges have positive slope");
        }
        if a.cover_type == CoverType::Etale && a.level != b.level {
            c.push("edges", &loc, "étale components only carry horizontal edges");
        }
    }
    for (k, te) in g.target.edges.iter().enumerate() {
        let loc = format!("target edge {}", te.id);
        let (a, b) = (&tvs[ix.tv[&te.v1]], &tvs[ix.tv[&te.v2]]);
        if a.level < b.level {
            c.push("target", &loc, "v1 must be the upper endpoint");
        }
        let want = if a.level == b.level && a.level == 0 { g.p as usize } else { 1 };
        if preimages[k].len() != want {
            c.push(
                "edges",
                &loc,
                format!("has {} preimages, expected {want}", preimages[k].len()),
            );
        }
        let mut slopes: Vec<i64> = preimages[k].iter().map(|&s| g.source.edges[s].slope).collect();
        slopes.dedup();
        if slopes.len() > 1 {
            c.push("rescaling", &loc, "preimages of one target edge carry different slopes");
        }
    }
    for r in rescaling_relations(g) {
        if (r.slope == 0) != r.levels.is_empty() {
            c.push("rescaling", format!("source edge {}", r.edge), format!("relation {r} is not balanced"));
        }
    }

    // markings
    let mut images = HashSet::new();
    for m in &g.markings {
        let loc = format!("marking {}", m.image);
        if !images.insert(m.image) {
            c.push("markings", &loc, "two markings share an image");
        }
        let v = &sv[ix.sv[&m.vertex]];
        match g.regime {
            Regime::Mixed => {
                if m.xi != 0 || m.lambda != g.p {
                    c.push("markings", &loc, "mixed regime requires λ = p and ξ = 0");
                }
                if v.cover_type != CoverType::Frobenius || v.level != min_level {
                    c.push("markings", &loc, "markings lie on the minimal level");
                }
            }
            Regime::Equicharacteristic => match v.cover_type {
                CoverType::ArtinSchreier => {
                    let ramified = m.lambda == g.p
                        && m.xi > 0
                        && m.xi as i64 % p != 0
                        && m.xi as i64 % (p - 1) == 0;
                    let unramified = m.lambda == 1 && m.xi == 0;
                    if !ramified && !unramified {
                        c.push(
                            "markings",
                            &loc,
                            "on an Artin-Schreier component a marking is unramified (λ=1, ξ=0) or wild (λ=p, ξ prime to p, divisible by p-1)",
                        );
                    }
                }
                CoverType::Etale => {
                    if m.lambda != 1 || m.xi != 0 {
                        c.push("markings", &loc, "markings on étale components are unramified");
                    }
                }
                CoverType::Frobenius => {
                    if m.lambda != g.p || m.xi != 0 {
                        c.push("markings", &loc, "markings on Frobenius components have λ = p, ξ = 0");
                    }
                }
            },
        }
    }

    // per-component conditions
    for (i, v) in sv.iter().enumerate() {
        let loc = format!("source vertex {}", v.id);
        if 2 * v.genus as i64 - 2 + ix.special_points(i) as i64 <= 0 {
            c.push("stability", &loc, "component is unstable");
        }
        match v.cover_type {
            CoverType::Frobenius => {
                for &(k, dir) in &ix.incident[i] {
                    let s = g.source.edges[k].slope;
                    if dir != Direction::Horizontal && s % p == 0 {
                        c.push("slopes", &loc, format!("slope {s} at a Frobenius component is divisible by p"));
                    }
                }
                let total: i64 = ix.plain_orders(i).iter().sum();
                if total != 2 * p - 2 {
                    c.push("balance", &loc, format!("plain orders sum to {total}, expected {}", 2 * p - 2));
                }
            }
            CoverType::ArtinSchreier => {
                let mut branch: Vec<i64> = Vec::new();
                for &(k, dir) in &ix.incident[i] {
                    let s = g.source.edges[k].slope;
                    match dir {
                        Direction::Down => branch.push(s),
                        Direction::Up => c.push("edges", &loc, "edge arriving at a top-level component"),
                        Direction::Horizontal => {}
                    }
                }
                for &k in &ix.marks[i] {
                    if g.markings[k].lambda == g.p && g.markings[k].xi > 0 {
                        branch.push(g.markings[k].xi as i64);
                    }
                }
                for &l in &branch {
                    if l % (p - 1) != 0 {
                        c.push("slopes", &loc, format!("outgoing slope {l} is not divisible by p-1"));
                    }
                    if l % p == 0 {
                        c.push("slopes", &loc, format!("outgoing slope {l} is divisible by p"));
                    }
                }
                if branch.is_empty() {
                    c.push("balance", &loc, "an Artin-Schreier component needs a branch point");
                } else {
                    // Σ e_i = 2h/(p-1) + 2 with e_i = ℓ_i/(p-1) + 1
                    let lhs: i64 = branch.iter().map(|l| l / (p - 1)).sum();
                    let twice_h = 2 * v.genus as i64;
                    if twice_h % (p - 1) != 0 || lhs != twice_h / (p - 1) + 2 - branch.len() as i64 {
                        c.push(
                            "balance",
                            &loc,
                            format!("outgoing slopes {branch:?} do not match genus {}", v.genus),
                        );
                    }
                }
            }
            CoverType::Etale => {}
        }
    }

    // global
    let src_conn = connected(
        sv.len(),
        g.source.edges.iter().map(|e| (ix.sv[&e.v1], ix.sv[&e.v2])),
    );
    let tgt_conn = connected(
        tvs.len(),
        g.target.edges.iter().map(|e| (ix.tv[&e.v1], ix.tv[&e.v2])),
    );
    if !src_conn {
        c.push("connectivity", "source", "source graph is disconnected");
    }
    if !tgt_conn {
        c.push("connectivity", "target", "target graph is disconnected");
    }
    let hurwitz = if src_conn && tgt_conn { g.hurwitz_data() } else { None };
    if let Some(h) = &hurwitz {
        for prob in h.problems() {
            c.push("riemann-hurwitz", "graph", prob);
        }
        if let Some(a) = a {
            if a != h {
                c.push(
                    "hurwitz-data",
                    "graph",
                    format!(
                        "graph realizes (h={}, g={}, Λ={:?}, Ξ={:?}) instead of (h={}, g={}, Λ={:?}, Ξ={:?})",
                        h.h, h.g, h.lambda, h.xi, a.h, a.g, a.lambda, a.xi
                    ),
                );
            }
        }
    }
    ValidationReport {
        valid: c.0.is_empty(),
        violations: c.0,
        hurwitz,
    }
}

fn check_ids(g: &LevelGraph, c: &mut Collector) {
    let mut seen = HashSet::new();
    for v in &g.source.vertices {
        if !seen.insert(v.id) {
            c.push("structure", format!("source vertex {}", v.id), "duplicate id");
        }
    }
    let tv: HashSet<u32> = g.target.vertices.iter().map(|v| v.id).collect();
    if tv.len() != g.target.vertices.len() {
        c.push("structure", "target", "duplicate target vertex id");
    }
    let te: HashSet<u32> = g.target.edges.iter().map(|e| e.id).collect();
    if te.len() != g.target.edges.len() {
        c.push("structure", "target", "duplicate target edge id");
    }
    let se: HashSet<u32> = g.source.edges.iter().map(|e| e.id).collect();
    if se.len() != g.source.edges.len() {
        c.push("structure", "source", "duplicate source edge id");
    }
    for v in &g.source.vertices {
        if !tv.contains(&v.image) {
            c.push("structure", format!("source vertex {}", v.id), format!("unknown image {}", v.image));
        }
    }
    for e in &g.source.edges {
        if !seen.contains(&e.v1) || !seen.contains(&e.v2) {
            c.push("structure", format!("source edge {}", e.id), "unknown endpoint");
        }
        if !te.contains(&e.image) {
            c.push("structure", format!("source edge {}", e.id), format!("unknown image {}", e.image));
        }
    }
    for e in &g.target.edges {
        if !tv.contains(&e.v1) || !tv.contains(&e.v2) {
            c.push("structure", format!("target edge {}", e.id), "unknown endpoint");
        }
        if e.v1 == e.v2 {
            c.push("structure", format!("target edge {}", e.id), "self-loops are not supported");
        }
    }
    for m in &g.markings {
        if !seen.contains(&m.vertex) {
            c.push("structure", format!("marking {}", m.image), "unknown vertex");
        }
    }
    if g.source.vertices.is_empty() || g.target.vertices.is_empty() {
        c.push("structure", "graph", "empty graph");
    }
}
