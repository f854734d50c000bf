//! Halfspace polytopes with per-facet strictness, decided exactly by
//! Fourier–Motzkin elimination.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::intlin::{
    self, determinant, dot_q, integer_kernel, integer_solution, IntVec,
};
use crate::rational::{ceil_i64, floor_i64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("polytope is not compact")]
    NotCompact,
    #[error("halfspace normal has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("halfspace normal is zero")]
    ZeroNormal,
}

/// `<normal, y> >= bound`, or `>` when `closed` is false.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: IntVec,
    pub bound: Rational,
    pub closed: bool,
}

impl Halfspace {
    pub fn new(normal: IntVec, bound: Rational, closed: bool) -> Self {
        Self {
            normal,
            bound,
            closed,
        }
    }

    pub fn closed(normal: IntVec, bound: i64) -> Self {
        Self::new(normal, Rational::from_integer(bound as i128), true)
    }

    pub fn strict(normal: IntVec, bound: i64) -> Self {
        Self::new(normal, Rational::from_integer(bound as i128), false)
    }

    pub fn value(&self, y: &[Rational]) -> Rational {
        dot_q(&self.normal, y) - self.bound
    }

    pub fn admits(&self, y: &[Rational]) -> bool {
        let v = self.value(y);
        if self.closed {
            !v.is_negative()
        } else {
            v.is_positive()
        }
    }

    /// Same halfspace with a primitive normal.
    pub fn normalized(&self) -> Self {
        let g = intlin::content(&self.normal);
        if g <= 1 {
            return self.clone();
        }
        Self::new(
            self.normal.iter().map(|x| x / g).collect(),
            self.bound / Rational::from_integer(g as i128),
            self.closed,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HPolytope {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
}

/// A linear constraint over rationals used during elimination.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    coeffs: Vec<Rational>,
    bound: Rational,
    strict: bool,
}

impl Constraint {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// A constant constraint `0 >= bound` (or `0 > bound`) holds?
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.bound.is_negative()
        } else {
            !self.bound.is_positive()
        }
    }

    fn normalize(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c /= lead;
            }
            self.bound /= lead;
        }
        self
    }
}

/// Keeps the tightest constraint for each coefficient vector.
fn prune(cs: Vec<Constraint>) -> Result<Vec<Constraint>, ()> {
    let mut best: std::collections::BTreeMap<Vec<Rational>, (Rational, bool)> =
        std::collections::BTreeMap::new();
    for c in cs {
        if c.is_constant() {
            if !c.constant_holds() {
                return Err(());
            }
            continue;
        }
        let c = c.normalize();
        best.entry(c.coeffs)
            .and_modify(|(b, s)| {
                if c.bound > *b || (c.bound == *b && c.strict) {
                    *b = c.bound;
                    *s = c.strict;
                }
            })
            .or_insert((c.bound, c.strict));
    }
    Ok(best
        .into_iter()
        .map(|(coeffs, (bound, strict))| Constraint {
            coeffs,
            bound,
            strict,
        })
        .collect())
}

/// Eliminates variable `j`; `Err` signals infeasibility detected on the way.
fn eliminate(cs: &[Constraint], j: usize) -> Result<Vec<Constraint>, ()> {
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for c in cs {
        let a = c.coeffs[j];
        if a.is_zero() {
            out.push(c.clone());
        } else if a.is_positive() {
            pos.push(c);
        } else {
            neg.push(c);
        }
    }
    for p in &pos {
        for n in &neg {
            let (ap, an) = (p.coeffs[j], -n.coeffs[j]);
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| *x / ap + *y / an)
                .collect::<Vec<_>>();
            out.push(Constraint {
                coeffs,
                bound: p.bound / ap + n.bound / an,
                strict: p.strict || n.strict,
            });
        }
    }
    let mut out = prune(out)?;
    for c in out.iter_mut() {
        c.coeffs[j] = Rational::zero();
    }
    Ok(out)
}

fn feasible(cs: &[Constraint], vars: usize) -> bool {
    let Ok(mut cur) = prune(cs.to_vec()) else {
        return false;
    };
    for j in 0..vars {
        match eliminate(&cur, j) {
            Ok(next) => cur = next,
            Err(()) => return false,
        }
    }
    cur.iter().all(Constraint::constant_holds)
}

/// Bounds `[lo, hi]` on variable 0 of the projection, as inclusive integers.
/// `Ok(None)` means the projection is empty.
fn integer_range_first(cs: &[Constraint], vars: usize) -> Result<Option<(i64, i64)>, PolytopeError> {
    let Ok(mut cur) = prune(cs.to_vec()) else {
        return Ok(None);
    };
    for j in 1..vars {
        match eliminate(&cur, j) {
            Ok(next) => cur = next,
            Err(()) => return Ok(None),
        }
    }
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    for c in &cur {
        let a = c.coeffs[0];
        if a.is_zero() {
            if !c.constant_holds() {
                return Ok(None);
            }
            continue;
        }
        let q = c.bound / a;
        if a.is_positive() {
            // y > q or y >= q
            let l = if c.strict { floor_i64(&q) + 1 } else { ceil_i64(&q) };
            lo = Some(lo.map_or(l, |x| x.max(l)));
        } else {
            let h = if c.strict { ceil_i64(&q) - 1 } else { floor_i64(&q) };
            hi = Some(hi.map_or(h, |x| x.min(h)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Ok((l <= h).then_some((l, h))),
        _ => Err(PolytopeError::NotCompact),
    }
}

fn substitute_first(cs: &[Constraint], value: i64) -> Vec<Constraint> {
    let v = Rational::from_integer(value as i128);
    cs.iter()
        .map(|c| Constraint {
            coeffs: c.coeffs[1..].to_vec(),
            bound: c.bound - c.coeffs[0] * v,
            strict: c.strict,
        })
        .collect()
}

fn enumerate_rec(
    cs: &[Constraint],
    vars: usize,
    prefix: &mut IntVec,
    out: &mut BTreeSet<IntVec>,
) -> Result<(), PolytopeError> {
    if vars == 0 {
        if cs.iter().all(Constraint::constant_holds) {
            out.insert(prefix.clone());
        }
        return Ok(());
    }
    let Some((lo, hi)) = integer_range_first(cs, vars)? else {
        return Ok(());
    };
    for v in lo..=hi {
        let sub = substitute_first(cs, v);
        prefix.push(v);
        enumerate_rec(&sub, vars - 1, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, PolytopeError> {
        for h in &halfspaces {
            if h.normal.len() != dim {
                return Err(PolytopeError::Dimension {
                    expected: dim,
                    got: h.normal.len(),
                });
            }
            if h.normal.iter().all(|x| *x == 0) {
                return Err(PolytopeError::ZeroNormal);
            }
        }
        Ok(Self { dim, halfspaces })
    }

    /// Closed axis-aligned box `lo <= y <= hi`.
    pub fn cuboid(lo: &[i64], hi: &[i64]) -> Self {
        let dim = lo.len();
        let mut hs = Vec::new();
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 1;
            hs.push(Halfspace::closed(e.clone(), lo[i]));
            hs.push(Halfspace::closed(intlin::neg(&e), -hi[i]));
        }
        Self { dim, halfspaces: hs }
    }

    /// The single point `p` as a polytope.
    pub fn point(p: &[i64]) -> Self {
        Self::cuboid(p, p)
    }

    pub fn with_halfspace(mut self, h: Halfspace) -> Self {
        self.halfspaces.push(h);
        self
    }

    fn constraints(&self, closed_only: bool) -> Vec<Constraint> {
        self.halfspaces
            .iter()
            .map(|h| Constraint {
                coeffs: intlin::to_rational(&h.normal),
                bound: h.bound,
                strict: !closed_only && !h.closed,
            })
            .collect()
    }

    /// Closure: every facet made non-strict.
    pub fn closure(&self) -> Self {
        Self {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), h.bound, true))
                .collect(),
        }
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.admits(y))
    }

    pub fn contains_lattice(&self, y: &[i64]) -> bool {
        self.contains(&intlin::to_rational(y))
    }

    pub fn is_nonempty(&self) -> bool {
        feasible(&self.constraints(false), self.dim)
    }

    /// The recession cone of the closure is `{0}` (or the set is empty).
    pub fn is_bounded(&self) -> bool {
        if !self.is_nonempty() {
            return true;
        }
        let cone: Vec<Constraint> = self
            .halfspaces
            .iter()
            .map(|h| Constraint {
                coeffs: intlin::to_rational(&h.normal),
                bound: Rational::zero(),
                strict: false,
            })
            .collect();
        for j in 0..self.dim {
            for s in [1i128, -1] {
                let mut cs = cone.clone();
                let mut coeffs = vec![Rational::zero(); self.dim];
                coeffs[j] = Rational::from_integer(s);
                cs.push(Constraint {
                    coeffs,
                    bound: Rational::from_integer(1),
                    strict: false,
                });
                if feasible(&cs, self.dim) {
                    return false;
                }
            }
        }
        true
    }

    /// Every integer point satisfying all constraints, in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<IntVec>, PolytopeError> {
        if !self.is_nonempty() {
            return Ok(Vec::new());
        }
        if !self.is_bounded() {
            return Err(PolytopeError::NotCompact);
        }
        let mut out = BTreeSet::new();
        if self.dim == 0 {
            return Ok(vec![Vec::new()]);
        }
        enumerate_rec(&self.constraints(false), self.dim, &mut Vec::new(), &mut out)?;
        Ok(out.into_iter().collect())
    }

    /// Integer bounding box of the closure, `None` if empty.
    pub fn bounding_box(&self) -> Result<Option<(IntVec, IntVec)>, PolytopeError> {
        if !self.is_nonempty() {
            return Ok(None);
        }
        if !self.is_bounded() {
            return Err(PolytopeError::NotCompact);
        }
        let cs = self.constraints(true);
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            // rotate variable j to the front
            let rotated: Vec<Constraint> = cs
                .iter()
                .map(|c| {
                    let mut coeffs = c.coeffs.clone();
                    coeffs.swap(0, j);
                    Constraint {
                        coeffs,
                        bound: c.bound,
                        strict: false,
                    }
                })
                .collect();
            match integer_range_first(&rotated, self.dim)? {
                Some((l, h)) => {
                    lo.push(l);
                    hi.push(h);
                }
                None => return Ok(None),
            }
        }
        Ok(Some((lo, hi)))
    }

    /// Vertices of the closure (assumed pointed), sorted.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let closed = self.closure();
        let hs: Vec<Halfspace> = closed.halfspaces.iter().map(Halfspace::normalized).collect();
        let d = self.dim;
        let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
        if d == 0 {
            if closed.is_nonempty() {
                found.insert(Vec::new());
            }
            return found.into_iter().collect();
        }
        for subset in combinations(hs.len(), d) {
            let a: Vec<Vec<Rational>> = subset
                .iter()
                .map(|i| intlin::to_rational(&hs[*i].normal))
                .collect();
            let b: Vec<Rational> = subset.iter().map(|i| hs[*i].bound).collect();
            if let Some(y) = intlin::solve_square(&a, &b) {
                if closed.contains(&y) {
                    found.insert(y);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Halfspaces of the closure tight at `y`, normalized and deduplicated.
    pub fn active_at(&self, y: &[Rational]) -> Vec<Halfspace> {
        let set: BTreeSet<Halfspace> = self
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), h.bound, true).normalized())
            .filter(|h| h.value(y).is_zero())
            .collect();
        set.into_iter().collect()
    }

    /// Implicit equalities: halfspaces tight on the whole (nonempty) closure.
    pub fn implicit_equalities(&self) -> Vec<Halfspace> {
        let closed = self.closure();
        let base = closed.constraints(true);
        closed
            .halfspaces
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let mut cs = base.clone();
                cs[*i].strict = true;
                !feasible(&cs, self.dim)
            })
            .map(|(_, h)| h.normalized())
            .collect()
    }

    /// Dimension of the affine hull of the closure; `None` if empty.
    pub fn affine_dimension(&self) -> Option<usize> {
        if !self.closure().is_nonempty() {
            return None;
        }
        let eqs: Vec<Vec<Rational>> = self
            .implicit_equalities()
            .iter()
            .map(|h| intlin::to_rational(&h.normal))
            .collect();
        Some(self.dim - intlin::rank(&eqs))
    }

    /// Membership of a lattice level after an infinitesimal shift along
    /// `(1, e, e^2, ...)` (or its negative when `reverse`).
    pub fn contains_after_shift(&self, level: &[i64], reverse: bool) -> bool {
        let y = intlin::to_rational(level);
        self.halfspaces.iter().all(|h| {
            let v = h.value(&y);
            if !v.is_zero() {
                return v.is_positive();
            }
            let lead = h.normal.iter().find(|x| **x != 0).copied().unwrap_or(0);
            if reverse {
                lead < 0
            } else {
                lead > 0
            }
        })
    }

    /// Re-expresses the polytope in lattice coordinates of its affine hull.
    ///
    /// Returns `None` when the hull has no lattice point. Constraints that
    /// become trivial on the hull are dropped.
    pub fn restrict_to_hull(&self) -> Option<HullChart> {
        let eqs = self.implicit_equalities();
        let rows: Vec<IntVec> = eqs.iter().map(|h| h.normal.clone()).collect();
        let rhs: Vec<Rational> = eqs.iter().map(|h| h.bound).collect();
        let origin = if rows.is_empty() {
            vec![0; self.dim]
        } else {
            integer_solution(&rows, &rhs, self.dim)?
        };
        let basis = if rows.is_empty() {
            (0..self.dim)
                .map(|i| (0..self.dim).map(|j| i64::from(i == j)).collect())
                .collect()
        } else {
            integer_kernel(&rows, self.dim)
        };
        let k = basis.len();
        let origin_q = intlin::to_rational(&origin);
        let mut hs = Vec::new();
        for h in &self.halfspaces {
            let normal: IntVec = basis.iter().map(|b| intlin::dot(&h.normal, b)).collect();
            let bound = h.bound - dot_q(&h.normal, &origin_q);
            if normal.iter().all(|x| *x == 0) {
                continue;
            }
            hs.push(Halfspace::new(normal, bound, h.closed));
        }
        Some(HullChart {
            origin,
            basis,
            polytope: HPolytope { dim: k, halfspaces: hs },
        })
    }

    /// At every vertex the primitive normals of the tight facets form a
    /// lattice basis (of the lattice of the affine hull).
    pub fn is_delzant(&self) -> Result<bool, PolytopeError> {
        if !self.closure().is_nonempty() {
            return Ok(true);
        }
        if !self.is_bounded() {
            return Err(PolytopeError::NotCompact);
        }
        let Some(chart) = self.restrict_to_hull() else {
            return Ok(false);
        };
        let p = chart.polytope;
        if p.dim == 0 {
            return Ok(true);
        }
        for v in p.vertices() {
            let active = p.active_at(&v);
            if active.len() != p.dim {
                return Ok(false);
            }
            let normals: Vec<IntVec> = active.into_iter().map(|h| h.normal).collect();
            if determinant(&normals).abs() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Translate by an integer vector.
    pub fn translated(&self, t: &[i64]) -> Self {
        let tq = intlin::to_rational(t);
        Self {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), h.bound + dot_q(&h.normal, &tq), h.closed))
                .collect(),
        }
    }
}

/// Lattice chart `y = origin + sum_i w_i basis_i` of an affine hull.
#[derive(Debug, Clone)]
pub struct HullChart {
    pub origin: IntVec,
    pub basis: Vec<IntVec>,
    pub polytope: HPolytope,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Public wrappers with the operation names used across the crate.
pub fn enumerate_lattice_points(p: &HPolytope) -> Result<Vec<IntVec>, PolytopeError> {
    p.lattice_points()
}

pub fn polytope_nonempty(p: &HPolytope) -> bool {
    p.is_nonempty()
}

/// Shifted membership of `level`, plus whether the reversed shift agrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftVerdict {
    pub member: bool,
    pub direction_stable: bool,
}

pub fn generic_shift(level: &[i64], p: &HPolytope) -> ShiftVerdict {
    let member = p.contains_after_shift(level, false);
    ShiftVerdict {
        member,
        direction_stable: member == p.contains_after_shift(level, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn square() -> HPolytope {
        HPolytope::cuboid(&[0, 0], &[1, 1])
    }

    #[test]
    fn enumerate_box() {
        let p = HPolytope::cuboid(&[0, 0], &[2, 1]);
        assert_eq!(p.lattice_points().unwrap().len(), 6);
    }

    #[test]
    fn enumerate_with_strict_facet() {
        let p = HPolytope::new(
            2,
            vec![
                Halfspace::strict(vec![1, 0], 0),
                Halfspace::closed(vec![-1, 0], -2),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![0, -1], -1),
            ],
        )
        .unwrap();
        let pts = p.lattice_points().unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|v| v[0] >= 1));
    }

    #[test]
    fn enumerate_empty() {
        let p = HPolytope::new(
            1,
            vec![Halfspace::closed(vec![1], 1), Halfspace::closed(vec![-1], 0)],
        )
        .unwrap();
        assert!(p.lattice_points().unwrap().is_empty());
        assert!(!p.is_nonempty());
    }

    #[test]
    fn unbounded_is_an_error() {
        let p = HPolytope::new(1, vec![Halfspace::closed(vec![1], 0)]).unwrap();
        assert_eq!(p.lattice_points(), Err(PolytopeError::NotCompact));
        assert_eq!(p.is_delzant(), Err(PolytopeError::NotCompact));
    }

    #[test]
    fn nonempty_examples() {
        assert!(square().is_nonempty());
        let open = HPolytope::new(
            1,
            vec![Halfspace::closed(vec![1], 1), Halfspace::strict(vec![-1], -1)],
        )
        .unwrap();
        assert!(!open.is_nonempty());
        let wedge = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 1], 1),
                Halfspace::closed(vec![-1, 0], 0),
                Halfspace::closed(vec![0, -1], 0),
            ],
        )
        .unwrap();
        assert!(!wedge.is_nonempty());
    }

    #[test]
    fn delzant_examples() {
        assert_eq!(square().is_delzant(), Ok(true));
        let tri = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 0], 0),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![-2, -1], -2),
            ],
        )
        .unwrap();
        assert_eq!(tri.is_delzant(), Ok(false));
        assert_eq!(HPolytope::point(&[3]).is_delzant(), Ok(true));
        // the standard simplex is Delzant
        let simplex = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 0], 0),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![-1, -1], -2),
            ],
        )
        .unwrap();
        assert_eq!(simplex.is_delzant(), Ok(true));
    }

    #[test]
    fn delzant_on_a_hyperplane_section() {
        // segment from (0,2) to (2,0) on x + y = 2: primitive edge (1,-1)
        let seg = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 1], 2),
                Halfspace::closed(vec![-1, -1], -2),
                Halfspace::closed(vec![1, 0], 0),
                Halfspace::closed(vec![0, 1], 0),
            ],
        )
        .unwrap();
        assert_eq!(seg.affine_dimension(), Some(1));
        assert_eq!(seg.is_delzant(), Ok(true));
        assert_eq!(seg.lattice_points().unwrap().len(), 3);
        // a hyperplane with no lattice points
        let off = HPolytope::new(
            2,
            vec![
                Halfspace::new(vec![2, 0], rat(1), true),
                Halfspace::new(vec![-2, 0], rat(-1), true),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![0, -1], -1),
            ],
        )
        .unwrap();
        assert_eq!(off.is_delzant(), Ok(false));
    }

    #[test]
    fn vertices_of_triangle() {
        let tri = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 0], 0),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![-2, -1], -2),
            ],
        )
        .unwrap();
        let v = tri.vertices();
        assert_eq!(
            v,
            vec![
                vec![rat(0), rat(0)],
                vec![rat(0), rat(2)],
                vec![rat(1), rat(0)],
            ]
        );
        let third = HPolytope::new(
            1,
            vec![
                Halfspace::new(vec![3], rat(1), true),
                Halfspace::closed(vec![-1], -1),
            ],
        )
        .unwrap();
        assert_eq!(third.vertices(), vec![vec![frac(1, 3)], vec![rat(1)]]);
    }

    #[test]
    fn shift_examples() {
        let sq = square();
        assert!(generic_shift(&[1, 1], &HPolytope::cuboid(&[0, 0], &[2, 2])).member);
        let v = generic_shift(&[0, 0], &sq);
        assert!(v.member);
        assert!(!v.direction_stable);
        assert!(!generic_shift(&[2, 0], &sq).member);
    }

    #[test]
    fn bounding_box_of_simplex() {
        let simplex = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 0], 0),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![-1, -1], -3),
            ],
        )
        .unwrap();
        assert_eq!(
            simplex.bounding_box().unwrap(),
            Some((vec![0, 0], vec![3, 3]))
        );
    }
}
