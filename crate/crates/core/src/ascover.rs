//! Artin–Schreier covers `y^p - y = g(x)` of the projective line.

use thiserror::Error;

use crate::ffield::{Fq, GaloisField};
use crate::ratfunc::{Divisor, Mobius, Place, Polynomial, RatError, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsError {
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error("the right-hand side has no branch points after reduction")]
    NoBranchPoints,
    #[error("pole order at {0} stays divisible by p after reduction")]
    Unremovable(String),
    #[error("at least three special points are needed to rigidify, found {0}")]
    Unrigidified(usize),
    #[error("invalid cover data: {0}")]
    Invalid(String),
    #[error("inconsistent ramification data: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierCover {
    field: GaloisField,
    branch_points: Vec<Place>,
    parts: Vec<Polynomial>,
    marked_unramified: Vec<Place>,
    genus: u64,
}

/// Plain and logarithmic vanishing orders of the trace form over one branch point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceOrder {
    pub branch: Place,
    pub conductor: u64,
    pub plain: i64,
    pub log: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm {
    /// Coefficient of the trace form in the frame `(dx)^∨ ⊗ dy`.
    pub coefficient: RationalFunction,
    pub orders: Vec<TraceOrder>,
}

/// `x = b + u` at a finite place, `x = 1/u` at infinity.
fn local_chart(field: &GaloisField, b: Place) -> Mobius {
    match b {
        Place::Finite(b) => Mobius::new(field, Fq::ONE, b, Fq::ZERO, Fq::ONE).expect("translation"),
        Place::Infinity => Mobius::new(field, Fq::ZERO, Fq::ONE, Fq::ONE, Fq::ZERO).expect("inversion"),
    }
}

/// Replaces every term `a u^{jp}` by `a^{1/p} u^j` until no exponent is divisible by p,
/// and drops the constant term.
fn reduce_principal(field: &GaloisField, h: &Polynomial) -> Polynomial {
    let p = field.p() as usize;
    let mut c: Vec<Fq> = h.coeffs().to_vec();
    loop {
        let mut changed = false;
        for k in (p..c.len()).step_by(p) {
            if c[k].is_zero() {
                continue;
            }
            let r = field.pth_root(c[k]);
            c[k] = Fq::ZERO;
            c[k / p] = field.add(c[k / p], r);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    if !c.is_empty() {
        c[0] = Fq::ZERO;
    }
    Polynomial::new(field, c)
}

impl ArtinSchreierCover {
    /// Normal form of `y^p - y = rhs(x)`.
    pub fn from_equation(rhs: &RationalFunction) -> Result<Self, AsError> {
        let field = rhs.field().clone();
        let pf = rhs.partial_fractions()?;
        let mut branch_points = Vec::new();
        let mut parts = Vec::new();
        for term in &pf.terms {
            let mut c = vec![Fq::ZERO];
            c.extend_from_slice(&term.coeffs);
            let h = reduce_principal(&field, &Polynomial::new(&field, c));
            if !h.is_zero() {
                branch_points.push(Place::Finite(term.at));
                parts.push(h);
            }
        }
        let h_inf = reduce_principal(&field, &pf.poly);
        if !h_inf.is_zero() {
            branch_points.push(Place::Infinity);
            parts.push(h_inf);
        }
        if branch_points.is_empty() {
            return Err(AsError::NoBranchPoints);
        }
        Self::from_parts(&field, branch_points, parts, Vec::new())
    }

    /// Builds a cover from normal-form data, checking every invariant.
    pub fn from_parts(
        field: &GaloisField,
        branch_points: Vec<Place>,
        parts: Vec<Polynomial>,
        marked_unramified: Vec<Place>,
    ) -> Result<Self, AsError> {
        let p = field.p() as u64;
        if branch_points.len() != parts.len() {
            return Err(AsError::Invalid("one polynomial per branch point".into()));
        }
        if branch_points.is_empty() {
            return Err(AsError::NoBranchPoints);
        }
        let all: Vec<Place> = branch_points.iter().chain(&marked_unramified).copied().collect();
        for (i, a) in all.iter().enumerate() {
            if all[..i].contains(a) {
                return Err(AsError::Invalid(format!("special point {} repeated", a.format(field))));
            }
        }
        let mut total_e = 0u64;
        for (b, h) in branch_points.iter().zip(&parts) {
            let Some(deg) = h.deg() else {
                return Err(AsError::Invalid(format!("zero part at {}", b.format(field))));
            };
            if !h.coeff(0).is_zero() {
                return Err(AsError::Invalid(format!("part at {} has a constant term", b.format(field))));
            }
            if deg as u64 % p == 0 {
                return Err(AsError::Unremovable(b.format(field)));
            }
            if let Some(k) = (1..=deg).find(|&k| k as u64 % p == 0 && !h.coeff(k).is_zero()) {
                return Err(AsError::Invalid(format!(
                    "coefficient of degree {k} at {} is not reduced",
                    b.format(field)
                )));
            }
            total_e += deg as u64 + 1;
        }
        let twice_h = (total_e - 2) * (p - 1);
        if twice_h % 2 != 0 {
            return Err(AsError::Inconsistent(format!("sum of conductors {total_e} gives a half-integral genus")));
        }
        Ok(ArtinSchreierCover {
            field: field.clone(),
            branch_points,
            parts,
            marked_unramified,
            genus: twice_h / 2,
        })
    }

    pub fn with_marks(mut self, marks: Vec<Place>) -> Result<Self, AsError> {
        for (i, m) in marks.iter().enumerate() {
            if self.branch_points.contains(m) || marks[..i].contains(m) {
                return Err(AsError::Invalid(format!(
                    "marked point {} is repeated or ramified",
                    m.format(&self.field)
                )));
            }
        }
        self.marked_unramified = marks;
        Ok(self)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn branch_points(&self) -> &[Place] {
        &self.branch_points
    }

    pub fn parts(&self) -> &[Polynomial] {
        &self.parts
    }

    pub fn marked_unramified(&self) -> &[Place] {
        &self.marked_unramified
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn conductors(&self) -> Vec<u64> {
        self.parts.iter().map(|h| h.deg().expect("nonzero") as u64 + 1).collect()
    }

    /// The right-hand side `Σ h_i(1/(x - b_i))`, with `h_∞(x)` for a branch point at infinity.
    pub fn rhs(&self) -> RationalFunction {
        let f = &self.field;
        let mut acc = RationalFunction::zero(f);
        for (b, h) in self.branch_points.iter().zip(&self.parts) {
            for (j, &c) in h.coeffs().iter().enumerate().skip(1) {
                if !c.is_zero() {
                    acc = acc.add(&RationalFunction::pole_monomial(f, *b, j as u32).scale(c));
                }
            }
        }
        acc
    }

    /// `R(f) = Σ e_i (p-1) [f^{-1}(b_i)]`, keyed by the branch point below.
    pub fn ramification_divisor(&self) -> Divisor {
        let p = self.field.p() as i64;
        let mut d = Divisor::new();
        for (b, e) in self.branch_points.iter().zip(self.conductors()) {
            d.add_at(*b, e as i64 * (p - 1));
        }
        d
    }

    /// Trace form `τ_f = -1/g'(x) (dx)^∨ ⊗ dy` with orders from local expansions.
    ///
    /// Above a branch point with local parameter `u` and `d = e - 1`, the normalized
    /// valuation upstairs has `v(u) = p`, `v(y) = -d`, and `t = y^β u^α` with
    /// `αp - βd = 1` is a uniformizer. From `dy = -G du`, `G = dg/du`, one gets
    /// `dt = t (α/u - β G/y) du`.
    pub fn trace_form(&self) -> Result<TraceForm, AsError> {
        let f = &self.field;
        let p = f.p() as i64;
        let g = self.rhs();
        let dg = g.derivative();
        if dg.is_zero() {
            return Err(AsError::Inconsistent("g' vanishes identically".into()));
        }
        let coefficient = dg.inv()?.neg();
        let mut orders = Vec::new();
        for (b, e) in self.branch_points.iter().zip(self.conductors()) {
            let d = e as i64 - 1;
            let chart = local_chart(f, *b);
            let zero = Place::Finite(Fq::ZERO);
            let g_local = g.compose_mobius(&chart);
            let big_g = g_local.derivative();
            let beta = {
                let dinv = (1..p).find(|&z| (z * d).rem_euclid(p) == 1).expect("d prime to p");
                (-dinv).rem_euclid(p)
            };
            let alpha = (1 + beta * d) / p;
            debug_assert_eq!(alpha * p - beta * d, 1);
            // valuations of the two summands α/u and βG/y
            let v1 = if alpha % p != 0 { Some(-p) } else { None };
            let v2 = if beta % p != 0 {
                Some(p * big_g.order_at(zero)? + d)
            } else {
                None
            };
            let v_sum = match (v1, v2) {
                (Some(a), Some(b)) if a != b => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                _ => return Err(AsError::Inconsistent("could not separate local valuations".into())),
            };
            let v_du_dt = -1 - v_sum;
            // plain order in the frame (du)^∨ ⊗ dt
            let v_coef = p * coefficient.compose_mobius(&chart).order_at(zero)?;
            let v_dx_du = p * chart.derivative().order_at(zero)?;
            let v_dy_dt = p * big_g.order_at(zero)? + v_du_dt;
            let plain = v_coef - v_dx_du + v_dy_dt;
            // log frame (du/u)^∨ ⊗ dt/t differs by v(t) - v(u)
            let log = plain + 1 - p;
            orders.push(TraceOrder {
                branch: *b,
                conductor: e,
                plain,
                log,
            });
        }
        Ok(TraceForm { coefficient, orders })
    }

    /// The dimension of the moduli of covers with these conductors and marks.
    pub fn moduli_dimension(&self) -> Result<i64, AsError> {
        moduli_dimension(
            self.field.p() as u64,
            self.genus,
            &self.conductors(),
            self.marked_unramified.len() as u64,
        )
        .map(|x| x.0)
    }

    fn special_points(&self) -> Vec<Place> {
        self.marked_unramified.iter().chain(&self.branch_points).copied().collect()
    }

    fn conductor_at(&self, b: Place) -> Option<u64> {
        self.branch_points.iter().position(|&x| x == b).map(|i| self.conductors()[i])
    }

    /// Whether a Möbius transformation carries `self` to `other`, respecting the
    /// ordered unramified marks and conductors and matching normal forms.
    pub fn isomorphic(&self, other: &Self) -> Result<bool, AsError> {
        let s1 = self.special_points();
        let s2 = other.special_points();
        for s in [&s1, &s2] {
            if s.len() < 3 {
                return Err(AsError::Unrigidified(s.len()));
            }
        }
        if self.field != other.field {
            return Err(AsError::Invalid("covers live over different fields".into()));
        }
        let mut c1 = self.conductors();
        let mut c2 = other.conductors();
        c1.sort_unstable();
        c2.sort_unstable();
        if s1.len() != s2.len() || c1 != c2 || self.marked_unramified.len() != other.marked_unramified.len() {
            return Ok(false);
        }
        let f = &self.field;
        let n_marks = self.marked_unramified.len();
        let src = [s1[0], s1[1], s1[2]];
        let to_std = Mobius::to_standard(f, src)?;
        let target_rhs: Vec<RationalFunction> = (1..f.p())
            .map(|a| self.rhs().scale(f.from_int(a as i64)))
            .collect();
        for i in 0..s2.len() {
            for j in 0..s2.len() {
                for k in 0..s2.len() {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let dst = [s2[i], s2[j], s2[k]];
                    // marks go to marks with the same index
                    let ok_roles = (0..3).all(|r| {
                        let idx = [i, j, k][r];
                        if r < n_marks {
                            idx == r
                        } else {
                            idx >= n_marks
                        }
                    });
                    if !ok_roles {
                        continue;
                    }
                    let m = Mobius::to_standard(f, dst)?.inverse().compose(&to_std);
                    if !self
                        .marked_unramified
                        .iter()
                        .zip(&other.marked_unramified)
                        .all(|(a, b)| m.apply(*a) == *b)
                    {
                        continue;
                    }
                    if !self
                        .branch_points
                        .iter()
                        .all(|b| other.conductor_at(m.apply(*b)) == self.conductor_at(*b))
                    {
                        continue;
                    }
                    // pull the other equation back along m and compare normal forms
                    let pulled = other.rhs().compose_mobius(&m);
                    let Ok(n_pulled) = Self::from_equation(&pulled) else { continue };
                    for t in &target_rhs {
                        if let Ok(n_t) = Self::from_equation(t) {
                            if same_normal_form(&n_t, &n_pulled) {
                                return Ok(true);
                            }
                        }
                    }
                }
            }
        }
        Ok(false)
    }
}

fn same_normal_form(a: &ArtinSchreierCover, b: &ArtinSchreierCover) -> bool {
    let mut x: Vec<(Place, &Polynomial)> = a.branch_points.iter().copied().zip(&a.parts).collect();
    let mut y: Vec<(Place, &Polynomial)> = b.branch_points.iter().copied().zip(&b.parts).collect();
    x.sort_by_key(|t| t.0);
    y.sort_by_key(|t| t.0);
    x == y
}

/// `2h/(p-1) + n - 1 - Σ⌊(e_i - 1)/p⌋` together with the equivalent
/// `n + m - 3 + Σ(e_i - 1 - ⌊(e_i - 1)/p⌋)`.
pub fn moduli_dimension(p: u64, h: u64, e: &[u64], n: u64) -> Result<(i64, i64), AsError> {
    if e.is_empty() {
        return Err(AsError::Inconsistent("no branch points".into()));
    }
    if let Some(bad) = e.iter().find(|&&x| x == 0 || x % p == 1) {
        return Err(AsError::Inconsistent(format!("conductor {bad} is not admissible")));
    }
    if (2 * h) % (p - 1) != 0 {
        return Err(AsError::Inconsistent(format!("2h = {} not divisible by p - 1", 2 * h)));
    }
    let sum_e: u64 = e.iter().sum();
    if sum_e != 2 * h / (p - 1) + 2 {
        return Err(AsError::Inconsistent(format!(
            "sum of conductors {sum_e} differs from 2h/(p-1) + 2 = {}",
            2 * h / (p - 1) + 2
        )));
    }
    let floors: i64 = e.iter().map(|&x| ((x - 1) / p) as i64).sum();
    let first = (2 * h / (p - 1)) as i64 + n as i64 - 1 - floors;
    let second = n as i64 + e.len() as i64 - 3 + e.iter().map(|&x| (x - 1 - (x - 1) / p) as i64).sum::<i64>();
    debug_assert_eq!(first, second);
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_rational;
    use std::collections::BTreeMap;

    fn cover(p: u32, k: u32, s: &str, binds: &[(&str, Fq)]) -> ArtinSchreierCover {
        let f = GaloisField::new(p, k).unwrap();
        let b: BTreeMap<String, Fq> = binds.iter().map(|(n, v)| (n.to_string(), *v)).collect();
        ArtinSchreierCover::from_equation(&parse_rational(&f, s, "x", &b).unwrap()).unwrap()
    }

    #[test]
    fn supersingular_curve() {
        let c = cover(2, 1, "x^3", &[]);
        assert_eq!(c.conductors(), vec![4]);
        assert_eq!(c.genus(), 1);
        assert_eq!(c.branch_points(), &[Place::Infinity]);
        let t = c.trace_form().unwrap();
        assert_eq!(t.coefficient, parse_rational(c.field(), "1/x^2", "x", &BTreeMap::new()).unwrap());
        assert_eq!((t.orders[0].plain, t.orders[0].log), (4, 3));
        assert_eq!(c.moduli_dimension().unwrap(), 0);
        assert_eq!(c.ramification_divisor().get(Place::Infinity), 4);
    }

    #[test]
    fn j_family() {
        let c = cover(2, 2, "1/x + 1/(x-w)", &[]);
        assert_eq!(c.conductors(), vec![2, 2]);
        assert_eq!(c.genus(), 1);
        assert_eq!(c.moduli_dimension().unwrap(), 1);
        let t = c.trace_form().unwrap();
        assert!(t.orders.iter().all(|o| o.plain == 2 && o.log == 1));
        assert!(c.ramification_divisor().iter().all(|(_, &v)| v == 2));
    }

    #[test]
    fn reduction_absorbs_pth_powers() {
        let c = cover(2, 1, "1/x^2", &[]);
        assert_eq!(c.conductors(), vec![2]);
        assert_eq!(c.genus(), 0);
        let c3 = cover(3, 1, "x^3 + x^2 + 2", &[]);
        assert_eq!(c3.conductors(), vec![3]);
        assert_eq!(c3.rhs(), parse_rational(c3.field(), "x^2 + x", "x", &BTreeMap::new()).unwrap());
        let f = GaloisField::new(2, 1).unwrap();
        let triv = parse_rational(&f, "x^2 + x + 1", "x", &BTreeMap::new()).unwrap();
        assert_eq!(ArtinSchreierCover::from_equation(&triv), Err(AsError::NoBranchPoints));
    }

    #[test]
    fn normal_form_idempotent() {
        let c = cover(3, 2, "x^5 + 1/(x-1)^2 + w/(x-w)^4", &[]);
        assert_eq!(ArtinSchreierCover::from_equation(&c.rhs()).unwrap(), c);
        let t = c.trace_form().unwrap();
        for o in &t.orders {
            assert_eq!(o.log, (o.conductor as i64 - 1) * 2);
            assert_eq!(o.plain, o.conductor as i64 * 2);
        }
    }

    #[test]
    fn moduli_dimension_examples() {
        assert_eq!(moduli_dimension(2, 1, &[2, 2], 0).unwrap().0, 1);
        assert_eq!(moduli_dimension(2, 1, &[4], 0).unwrap().0, 0);
        assert_eq!(moduli_dimension(3, 1, &[3], 1).unwrap().0, 1);
        assert!(moduli_dimension(2, 2, &[4], 0).is_err());
    }

    #[test]
    fn isomorphism_of_marked_covers() {
        let f = GaloisField::new(2, 3).unwrap();
        let a = Fq(5);
        let a2 = Fq(6);
        let mk = |a: Fq| {
            cover(2, 3, "1/x + 1/(x-a)", &[("a", a)])
                .with_marks(vec![Place::Infinity])
                .unwrap()
        };
        let c1 = mk(a);
        assert!(c1.isomorphic(&c1).unwrap());
        assert!(!c1.isomorphic(&mk(a2)).unwrap());
        let lone = cover(2, 3, "x^3", &[]);
        assert_eq!(lone.isomorphic(&lone), Err(AsError::Unrigidified(1)));
        let _ = f;
    }
}
