//! Enhanced level graphs of degree-p covers and their Hurwitz data.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Mixed,
    #[serde(alias = "equichar")]
    Equicharacteristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverType {
    ArtinSchreier,
    Frobenius,
    Etale,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceVertex {
    pub id: u32,
    pub genus: u64,
    pub level: i64,
    pub cover_type: CoverType,
    /// Target vertex this component maps to.
    pub image: u32,
}

/// An edge of the source graph; `v1` is the upper end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceEdge {
    pub id: u32,
    pub v1: u32,
    pub v2: u32,
    pub slope: i64,
    /// Target edge this node maps to.
    pub image: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetVertex {
    pub id: u32,
    pub genus: u64,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetEdge {
    pub id: u32,
    pub v1: u32,
    pub v2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    pub vertex: u32,
    pub lambda: u32,
    pub xi: u32,
    /// Label of the marked point in the target.
    pub image: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceGraph {
    pub vertices: Vec<SourceVertex>,
    pub edges: Vec<SourceEdge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetGraph {
    pub vertices: Vec<TargetVertex>,
    pub edges: Vec<TargetEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelGraph {
    pub p: u32,
    pub regime: Regime,
    pub source: SourceGraph,
    pub target: TargetGraph,
    #[serde(default)]
    pub markings: Vec<Marking>,
}

/// `A = (h, g, N, Λ)` with the wild data `Ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzData {
    pub p: u32,
    pub h: u64,
    pub g: u64,
    pub n: usize,
    pub lambda: Vec<u32>,
    pub xi: Vec<u32>,
    pub regime: Regime,
}

impl HurwitzData {
    pub fn new(p: u32, h: u64, g: u64, lambda: Vec<u32>, xi: Vec<u32>, regime: Regime) -> Self {
        HurwitzData {
            p,
            h,
            g,
            n: lambda.len(),
            lambda,
            xi,
            regime,
        }
    }

    /// Mixed-characteristic data with `Ξ = 0`.
    pub fn mixed(p: u32, h: u64, g: u64, lambda: Vec<u32>) -> Self {
        let xi = vec![0; lambda.len()];
        Self::new(p, h, g, lambda, xi, Regime::Mixed)
    }

    /// `2h - 2 = p(2g - 2) + Σ(λ_i + ξ_i - 1)`.
    pub fn riemann_hurwitz_holds(&self) -> bool {
        let lhs = 2 * self.h as i64 - 2;
        let rhs = self.p as i64 * (2 * self.g as i64 - 2)
            + self
                .lambda
                .iter()
                .zip(&self.xi)
                .map(|(&l, &x)| l as i64 + x as i64 - 1)
                .sum::<i64>();
        lhs == rhs && self.lambda.len() == self.n && self.xi.len() == self.n
    }

    /// Problems with the data itself, independent of any graph.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.riemann_hurwitz_holds() {
            out.push("Riemann-Hurwitz formula fails".to_string());
        }
        if self.regime == Regime::Mixed && self.xi.iter().any(|&x| x != 0) {
            out.push("mixed regime requires all ξ_i = 0".to_string());
        }
        out
    }
}

/// Position of an edge relative to a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// The edge leaves the vertex towards a lower level.
    Down,
    /// The edge arrives from a higher level.
    Up,
    Horizontal,
}

/// Index tables over a graph whose ids have been checked for consistency.
pub struct Indexed<'a> {
    pub g: &'a LevelGraph,
    pub sv: HashMap<u32, usize>,
    pub tv: HashMap<u32, usize>,
    pub te: HashMap<u32, usize>,
    /// Per source vertex: (edge index, direction).
    pub incident: Vec<Vec<(usize, Direction)>>,
    /// Per source vertex: marking indices.
    pub marks: Vec<Vec<usize>>,
}

impl<'a> Indexed<'a> {
    /// Requires ids to be unique and references to resolve.
    pub fn new(g: &'a LevelGraph) -> Option<Self> {
        let sv: HashMap<u32, usize> = g.source.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let tv: HashMap<u32, usize> = g.target.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let te: HashMap<u32, usize> = g.target.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        let mut incident = vec![Vec::new(); g.source.vertices.len()];
        for (k, e) in g.source.edges.iter().enumerate() {
            let a = *sv.get(&e.v1)?;
            let b = *sv.get(&e.v2)?;
            let (la, lb) = (g.source.vertices[a].level, g.source.vertices[b].level);
            if la == lb {
                incident[a].push((k, Direction::Horizontal));
                incident[b].push((k, Direction::Horizontal));
            } else {
                incident[a].push((k, if la > lb { Direction::Down } else { Direction::Up }));
                incident[b].push((k, if lb > la { Direction::Down } else { Direction::Up }));
            }
        }
        let mut marks = vec![Vec::new(); g.source.vertices.len()];
        for (k, m) in g.markings.iter().enumerate() {
            marks[*sv.get(&m.vertex)?].push(k);
        }
        Some(Indexed {
            g,
            sv,
            tv,
            te,
            incident,
            marks,
        })
    }

    pub fn min_level(&self) -> i64 {
        self.g.source.vertices.iter().map(|v| v.level).min().unwrap_or(0)
    }

    /// Plain orders of the component form at the special points of a Frobenius vertex:
    /// `ℓ + (p-1)` at downward edges, `ξ + (p-1)` at markings, `p - 1` at horizontal
    /// edges and `-(κ - (p-1))` at edges arriving from above.
    pub fn plain_orders(&self, v: usize) -> Vec<i64> {
        let p1 = self.g.p as i64 - 1;
        let mut out = Vec::new();
        for &(k, dir) in &self.incident[v] {
            let s = self.g.source.edges[k].slope;
            out.push(match dir {
                Direction::Down => s + p1,
                Direction::Up => -(s - p1),
                Direction::Horizontal => p1,
            });
        }
        for &k in &self.marks[v] {
            out.push(self.g.markings[k].xi as i64 + p1);
        }
        out
    }

    /// Number of special points on a source component, counting every preimage of
    /// a marked target point.
    pub fn special_points(&self, v: usize) -> usize {
        let g = self.g;
        let vert = &g.source.vertices[v];
        let edges = self.incident[v].len();
        let marks: usize = match vert.cover_type {
            CoverType::Frobenius => self.marks[v].len(),
            CoverType::ArtinSchreier => self.marks[v]
                .iter()
                .map(|&k| if g.markings[k].lambda == 1 { g.p as usize } else { 1 })
                .sum(),
            CoverType::Etale => g
                .markings
                .iter()
                .filter(|m| {
                    self.sv
                        .get(&m.vertex)
                        .is_some_and(|&i| g.source.vertices[i].image == vert.image)
                })
                .count(),
        };
        edges + marks
    }

    /// First Betti number of the source graph (assumes connectedness).
    pub fn source_betti(&self) -> i64 {
        self.g.source.edges.len() as i64 - self.g.source.vertices.len() as i64 + 1
    }

    pub fn target_betti(&self) -> i64 {
        self.g.target.edges.len() as i64 - self.g.target.vertices.len() as i64 + 1
    }

    pub fn is_horizontal_target_edge(&self, k: usize) -> bool {
        let e = &self.g.target.edges[k];
        let (a, b) = (self.tv[&e.v1], self.tv[&e.v2]);
        self.g.target.vertices[a].level == self.g.target.vertices[b].level
    }
}

impl LevelGraph {
    /// Hurwitz data read off the graph: genera from components and loops,
    /// ramification data from the markings ordered by their image labels.
    pub fn hurwitz_data(&self) -> Option<HurwitzData> {
        let ix = Indexed::new(self)?;
        let h = self.source.vertices.iter().map(|v| v.genus as i64).sum::<i64>() + ix.source_betti();
        let g = self.target.vertices.iter().map(|v| v.genus as i64).sum::<i64>() + ix.target_betti();
        if h < 0 || g < 0 {
            return None;
        }
        let mut marks: Vec<&Marking> = self.markings.iter().collect();
        marks.sort_by_key(|m| m.image);
        Some(HurwitzData::new(
            self.p,
            h as u64,
            g as u64,
            marks.iter().map(|m| m.lambda).collect(),
            marks.iter().map(|m| m.xi).collect(),
            self.regime,
        ))
    }
}
