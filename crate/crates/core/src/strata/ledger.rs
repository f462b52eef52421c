//! Stratum dimension ledger and minimal monoid ranks.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::graph::{CoverType, Direction, HurwitzData, Indexed, LevelGraph, Regime};
use super::validate::validate;
use super::StrataError;
use crate::ascover::moduli_dimension;
use crate::loci::{dimension_formula, Kind, ZeroPolePattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContributionKind {
    ArtinSchreier,
    Etale,
    Exact,
    QuasiExact,
}

/// Dimension contributed by one component. Étale contributions are attached to
/// the target vertex, the others to the source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexContribution {
    pub kind: ContributionKind,
    pub source_vertex: Option<u32>,
    pub target_vertex: u32,
    pub level: i64,
    pub dimension: i64,
    /// Plain orders fed to the exact or quasi-exact dimension formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelContribution {
    pub level: i64,
    pub dimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumLedger {
    pub vertices: Vec<VertexContribution>,
    pub levels: Vec<LevelContribution>,
    pub mod_as: i64,
    pub mod_ex: i64,
    pub mod_qe: i64,
    pub total: i64,
    pub n: usize,
    pub horizontal_target_edges: usize,
    pub exact_vertices: usize,
    /// Closed form of the total, available when the target has genus 0.
    pub closed_form: Option<i64>,
    pub monoid_rank: usize,
    pub free: bool,
}

/// `Σ⌈ξ_i/p⌉` over wild markings; the extra equicharacteristic moduli.
fn wild_term(p: u32, xi: impl Iterator<Item = u32>) -> i64 {
    xi.map(|x| (x as i64 + p as i64 - 1) / p as i64).sum()
}

/// Dimension of the generic stratum: `3g - 3 + N` in the mixed regime and
/// `N - 3 + Σ⌈ξ_i/p⌉` in equal characteristic.
pub fn generic_dimension(a: &HurwitzData) -> Result<i64, StrataError> {
    let problems = a.problems();
    if !problems.is_empty() {
        return Err(StrataError::Data(problems.join("; ")));
    }
    Ok(match a.regime {
        Regime::Mixed => 3 * a.g as i64 - 3 + a.n as i64,
        Regime::Equicharacteristic => a.n as i64 - 3 + wild_term(a.p, a.xi.iter().copied()),
    })
}

fn kind_of(g: &LevelGraph, level: i64, min_level: i64) -> Kind {
    match g.regime {
        Regime::Mixed if level == min_level => Kind::QuasiExact,
        _ => Kind::Exact,
    }
}

/// Number of horizontal target edges and exact-kind Frobenius components.
fn counts(ix: &Indexed<'_>) -> (usize, usize) {
    let g = ix.g;
    let e_hor = (0..g.target.edges.len()).filter(|&k| ix.is_horizontal_target_edge(k)).count();
    let min = ix.min_level();
    let v_ex = g
        .source
        .vertices
        .iter()
        .filter(|v| v.cover_type == CoverType::Frobenius && kind_of(g, v.level, min) == Kind::Exact)
        .count();
    (e_hor, v_ex)
}

/// `(rank, free)` of the minimal log monoid of the stratum.
pub fn monoid_rank(g: &LevelGraph, a: Option<&HurwitzData>) -> Result<(usize, bool), StrataError> {
    let report = validate(g, a);
    if !report.valid {
        return Err(StrataError::Invalid(report.violations));
    }
    let ix = Indexed::new(g).expect("validated");
    Ok(rank_of(&ix))
}

fn rank_of(ix: &Indexed<'_>) -> (usize, bool) {
    let (e_hor, v_ex) = counts(ix);
    let extra = usize::from(ix.g.regime == Regime::Mixed);
    (e_hor + v_ex + extra, ix.g.p == 2)
}

pub fn stratum_dimension(g: &LevelGraph, a: Option<&HurwitzData>) -> Result<StratumLedger, StrataError> {
    let report = validate(g, a);
    if !report.valid {
        return Err(StrataError::Invalid(report.violations));
    }
    let ix = Indexed::new(g).expect("validated");
    let p = g.p;
    let p1 = p as i64 - 1;
    let min = ix.min_level();
    let mut vertices = Vec::new();

    for (i, v) in g.source.vertices.iter().enumerate() {
        match v.cover_type {
            CoverType::ArtinSchreier => {
                let mut e = Vec::new();
                for &(k, dir) in &ix.incident[i] {
                    if dir == Direction::Down {
                        e.push((g.source.edges[k].slope / p1 + 1) as u64);
                    }
                }
                let mut unramified = 0u64;
                for &k in &ix.marks[i] {
                    let m = &g.markings[k];
                    if m.xi > 0 {
                        e.push((m.xi as i64 / p1 + 1) as u64);
                    } else {
                        unramified += 1;
                    }
                }
                let tv = ix.tv[&v.image];
                let horizontal = g
                    .target
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|(k, te)| {
                        ix.is_horizontal_target_edge(*k) && (ix.tv[&te.v1] == tv || ix.tv[&te.v2] == tv)
                    })
                    .count() as u64;
                let (dim, _) = moduli_dimension(p as u64, v.genus, &e, horizontal + unramified)
                    .map_err(|err| StrataError::Data(format!("source vertex {}: {err}", v.id)))?;
                vertices.push(VertexContribution {
                    kind: ContributionKind::ArtinSchreier,
                    source_vertex: Some(v.id),
                    target_vertex: v.image,
                    level: v.level,
                    dimension: dim,
                    pattern: None,
                });
            }
            CoverType::Frobenius => {
                let orders = ix.plain_orders(i);
                let kind = kind_of(g, v.level, min);
                let pattern = ZeroPolePattern::new(p, orders.clone())
                    .map_err(|err| StrataError::Data(format!("source vertex {}: {err}", v.id)))?;
                vertices.push(VertexContribution {
                    kind: match kind {
                        Kind::Exact => ContributionKind::Exact,
                        Kind::QuasiExact => ContributionKind::QuasiExact,
                    },
                    source_vertex: Some(v.id),
                    target_vertex: v.image,
                    level: v.level,
                    dimension: dimension_formula(&pattern, kind),
                    pattern: Some(orders),
                });
            }
            CoverType::Etale => {}
        }
    }

    // étale target components: #H(D) - 3, once per target vertex
    let etale_targets: BTreeSet<u32> = g
        .source
        .vertices
        .iter()
        .filter(|v| v.cover_type == CoverType::Etale)
        .map(|v| v.image)
        .collect();
    for t in etale_targets {
        let half_edges = g.target.edges.iter().filter(|e| e.v1 == t || e.v2 == t).count();
        let marks = g
            .markings
            .iter()
            .filter(|m| g.source.vertices[ix.sv[&m.vertex]].image == t)
            .count();
        vertices.push(VertexContribution {
            kind: ContributionKind::Etale,
            source_vertex: None,
            target_vertex: t,
            level: g.target.vertices[ix.tv[&t]].level,
            dimension: (half_edges + marks) as i64 - 3,
            pattern: None,
        });
    }

    let sum = |kinds: &[ContributionKind]| -> i64 {
        vertices.iter().filter(|c| kinds.contains(&c.kind)).map(|c| c.dimension).sum()
    };
    let mod_as = sum(&[ContributionKind::ArtinSchreier, ContributionKind::Etale]);
    let mod_ex = sum(&[ContributionKind::Exact]);
    let mod_qe = sum(&[ContributionKind::QuasiExact]);

    let mut per_level: BTreeMap<i64, i64> = BTreeMap::new();
    for c in &vertices {
        *per_level.entry(c.level).or_default() += c.dimension;
    }
    let levels = per_level
        .into_iter()
        .rev()
        .map(|(level, dimension)| LevelContribution { level, dimension })
        .collect();

    let (e_hor, v_ex) = counts(&ix);
    let n = g.markings.len();
    let closed_form = (ix.target_betti() == 0 && g.target.vertices.iter().all(|t| t.genus == 0)).then(|| {
        let e_d = g.target.edges.len() as i64;
        let v_d = g.target.vertices.len() as i64;
        let mut cf = n as i64 + 3 * (e_d - v_d) - e_hor as i64 - v_ex as i64;
        if g.regime == Regime::Equicharacteristic {
            cf += wild_term(p, g.markings.iter().filter(|m| m.lambda == p).map(|m| m.xi));
        }
        cf
    });
    let (monoid_rank, free) = rank_of(&ix);
    Ok(StratumLedger {
        vertices,
        levels,
        mod_as,
        mod_ex,
        mod_qe,
        total: mod_as + mod_ex + mod_qe,
        n,
        horizontal_target_edges: e_hor,
        exact_vertices: v_ex,
        closed_form,
        monoid_rank,
        free,
    })
}
