//! Graphviz rendering of level graphs.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::graph::{CoverType, LevelGraph};

fn shape(c: CoverType) -> &'static str {
    match c {
        CoverType::ArtinSchreier => "box",
        CoverType::Frobenius => "ellipse",
        CoverType::Etale => "diamond",
    }
}

/// Source graph with one rank per level; edge labels are slopes.
pub fn to_dot(g: &LevelGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph level_graph {{");
    let _ = writeln!(s, "  rankdir=TB;");
    let mut by_level: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for v in &g.source.vertices {
        by_level.entry(v.level).or_default().push(v.id);
        let _ = writeln!(
            s,
            "  v{} [label=\"{}\\ng={}\", shape={}];",
            v.id,
            v.id,
            v.genus,
            shape(v.cover_type)
        );
    }
    for (level, ids) in by_level.iter().rev() {
        let names: Vec<String> = ids.iter().map(|i| format!("v{i}")).collect();
        let _ = writeln!(s, "  {{ rank=same; level{} [shape=plaintext, label=\"{level}\"]; {}; }}", level.unsigned_abs(), names.join("; "));
    }
    let lv: Vec<i64> = by_level.keys().rev().copied().collect();
    for w in lv.windows(2) {
        let _ = writeln!(s, "  level{} -- level{} [style=invis];", w[0].unsigned_abs(), w[1].unsigned_abs());
    }
    for e in &g.source.edges {
        let _ = writeln!(s, "  v{} -- v{} [label=\"{}\"];", e.v1, e.v2, e.slope);
    }
    for m in &g.markings {
        let _ = writeln!(s, "  m{} [shape=point];", m.image);
        let _ = writeln!(
            s,
            "  v{} -- m{} [label=\"λ={} ξ={}\", style=dashed];",
            m.vertex, m.image, m.lambda, m.xi
        );
    }
    s.push_str("}\n");
    s
}
