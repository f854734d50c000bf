//! Virtual torus modules with an exact finite-plus-rays representation.
//!
//! A module is an integer multiplicity function on `Z^d` of the form
//! `finite + sum_r value_r * 1[base_r + N dir_r]`. The canonical form is a
//! function of the multiplicities alone, so structural equality is
//! semantic equality:
//!
//! * every lattice line carries at most one ray per orientation, and the
//!   two rays of a line never overlap;
//! * a ray starts where the multiplicity along its line becomes constant
//!   (ignoring points shared with other ray-carrying lines);
//! * the finite part is whatever remains, with zeros dropped.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::lattice::intlin::{self, dot, IntVec};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ray direction {0:?} is not primitive")]
    BadDirection(IntVec),
    #[error("non-proper restriction: projection kills ray direction {0:?} (the subtorus has zero leading modular weight)")]
    NonProperRestriction(IntVec),
    #[error("non-free restriction: projected ray step {0:?} is not primitive (orbifold weights are not modelled)")]
    NonFreeRestriction(IntVec),
    #[error("projection must have full row rank with rows of length {0}")]
    BadProjection(usize),
    #[error("module has rays; a finite module is required")]
    NotFinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    pub base: IntVec,
    pub dir: IntVec,
    pub value: i64,
}

impl Ray {
    pub fn new(base: IntVec, dir: IntVec, value: i64) -> Self {
        Self { base, dir, value }
    }

    /// Step index `k >= 0` with `point = base + k dir`, if any.
    pub fn step_of(&self, point: &[i64]) -> Option<i64> {
        let diff = intlin::sub(point, &self.base);
        let k = intlin::rational_multiple(&diff, &self.dir)?;
        let k = crate::rational::to_i64(&k)?;
        (k >= 0).then_some(k)
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.step_of(point).is_some()
    }

    pub fn point(&self, k: i64) -> IntVec {
        intlin::axpy(&self.base, k, &self.dir)
    }

    /// Number of ray points inside the box `[-r, r]^d`.
    pub fn count_in_box(&self, r: i64) -> i64 {
        let (mut lo, mut hi) = (0i64, i64::MAX);
        for (b, u) in self.base.iter().zip(&self.dir) {
            if *u == 0 {
                if b.abs() > r {
                    return 0;
                }
                continue;
            }
            // -r <= b + k u <= r
            let (a, c) = ((-r - b), (r - b));
            let (kl, kh) = if *u > 0 {
                (div_ceil(a, *u), a_div_floor(c, *u))
            } else {
                (div_ceil(c, *u), a_div_floor(a, *u))
            };
            lo = lo.max(kl);
            hi = hi.min(kh);
        }
        (hi - lo + 1).max(0)
    }
}

fn a_div_floor(a: i64, b: i64) -> i64 {
    num_integer::Integer::div_floor(&a, &b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -num_integer::Integer::div_floor(&-a, &b)
}

/// Lattice line `{rep + t * dir}` with `dir` sign-normalized and `rep`
/// the point with `g(rep) = 0` for `g = transverse_functional(dir)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Line {
    dir: IntVec,
    rep: IntVec,
}

struct LineFrame {
    line: Line,
    functional: IntVec,
}

impl LineFrame {
    fn through(point: &[i64], dir: &[i64]) -> Self {
        let pos = intlin::positive_direction(dir).expect("nonzero direction");
        let functional = intlin::transverse_functional(&pos).expect("primitive");
        let t = dot(&functional, point);
        let rep = intlin::axpy(point, -t, &pos);
        Self {
            line: Line { dir: pos, rep },
            functional,
        }
    }

    fn param(&self, point: &[i64]) -> i64 {
        dot(&self.functional, point)
    }

    fn at(&self, t: i64) -> IntVec {
        intlin::axpy(&self.line.rep, t, &self.line.dir)
    }

    fn contains(&self, point: &[i64]) -> bool {
        let t = self.param(point);
        self.at(t) == point
    }
}

/// Lattice point where two distinct lines meet, if any.
fn line_intersection(a: &Line, b: &Line) -> Option<IntVec> {
    if a.dir == b.dir {
        return None;
    }
    // s a.dir - t b.dir = b.rep - a.rep
    let rhs = intlin::sub(&b.rep, &a.rep);
    let d = a.dir.len();
    for i in 0..d {
        for j in (i + 1)..d {
            let det = a.dir[i] * (-b.dir[j]) - (-b.dir[i]) * a.dir[j];
            if det == 0 {
                continue;
            }
            let s = Rational::new(
                (rhs[i] * (-b.dir[j]) - (-b.dir[i]) * rhs[j]) as i128,
                det as i128,
            );
            let s = crate::rational::to_i64(&s)?;
            let p = intlin::axpy(&a.rep, s, &a.dir);
            let frame = LineFrame::through(&b.rep, &b.dir);
            return frame.contains(&p).then_some(p);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VirtualTModule {
    d: usize,
    finite: BTreeMap<IntVec, i64>,
    rays: Vec<Ray>,
}

/// Signed total dimension, or the surviving ray directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dimension {
    Finite(i64),
    Infinite(Vec<IntVec>),
}

/// Uncanonicalized data, evaluated pointwise.
struct RawModule<'a> {
    finite: &'a BTreeMap<IntVec, i64>,
    rays: &'a [Ray],
}

impl RawModule<'_> {
    fn eval(&self, p: &[i64]) -> i64 {
        self.finite.get(p).copied().unwrap_or(0)
            + self
                .rays
                .iter()
                .filter(|r| r.contains(p))
                .map(|r| r.value)
                .sum::<i64>()
    }
}

impl VirtualTModule {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            finite: BTreeMap::new(),
            rays: Vec::new(),
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.d
    }

    pub fn finite(&self) -> &BTreeMap<IntVec, i64> {
        &self.finite
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.rays.is_empty()
    }

    pub fn from_finite<I: IntoIterator<Item = (IntVec, i64)>>(d: usize, entries: I) -> Result<Self, ModuleError> {
        canonicalize(d, entries, Vec::new())
    }

    pub fn ray(d: usize, base: IntVec, dir: IntVec, value: i64) -> Result<Self, ModuleError> {
        canonicalize(d, Vec::new(), vec![Ray::new(base, dir, value)])
    }

    pub fn multiplicity(&self, alpha: &[i64]) -> i64 {
        RawModule {
            finite: &self.finite,
            rays: &self.rays,
        }
        .eval(alpha)
    }

    pub fn negate(&self) -> Self {
        Self {
            d: self.d,
            finite: self.finite.iter().map(|(k, v)| (k.clone(), -v)).collect(),
            rays: self
                .rays
                .iter()
                .map(|r| Ray::new(r.base.clone(), r.dir.clone(), -r.value))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ModuleError> {
        if self.d != other.d {
            return Err(ModuleError::DimensionMismatch(self.d, other.d));
        }
        let finite = self
            .finite
            .iter()
            .chain(other.finite.iter())
            .map(|(k, v)| (k.clone(), *v));
        let rays = self.rays.iter().chain(other.rays.iter()).cloned().collect();
        canonicalize(self.d, finite, rays)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Self>>(d: usize, parts: I) -> Result<Self, ModuleError> {
        let mut finite = Vec::new();
        let mut rays = Vec::new();
        for p in parts {
            if p.d != d {
                return Err(ModuleError::DimensionMismatch(d, p.d));
            }
            finite.extend(p.finite.iter().map(|(k, v)| (k.clone(), *v)));
            rays.extend(p.rays.iter().cloned());
        }
        canonicalize(d, finite, rays)
    }

    pub fn dim(&self) -> Dimension {
        if self.rays.is_empty() {
            Dimension::Finite(self.finite.values().sum())
        } else {
            let dirs: BTreeSet<IntVec> = self.rays.iter().map(|r| r.dir.clone()).collect();
            Dimension::Infinite(dirs.into_iter().collect())
        }
    }

    pub fn is_finite(&self) -> bool {
        self.rays.is_empty()
    }

    /// Sum of multiplicities over the box `[-r, r]^d`.
    pub fn window_sum(&self, r: i64) -> i64 {
        let finite: i64 = self
            .finite
            .iter()
            .filter(|(k, _)| intlin::linf(k) <= r)
            .map(|(_, v)| v)
            .sum();
        finite
            + self
                .rays
                .iter()
                .map(|ray| ray.value * ray.count_in_box(r))
                .sum::<i64>()
    }

    /// Pushforward of weights along an integer projection `rows` (d' x d).
    pub fn restrict(&self, rows: &[IntVec]) -> Result<Self, ModuleError> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != self.d) {
            return Err(ModuleError::BadProjection(self.d));
        }
        let q: Vec<Vec<Rational>> = rows.iter().map(|r| intlin::to_rational(r)).collect();
        if intlin::rank(&q) != rows.len() {
            return Err(ModuleError::BadProjection(self.d));
        }
        let apply = |v: &[i64]| -> IntVec { rows.iter().map(|r| dot(r, v)).collect() };
        let mut rays = Vec::with_capacity(self.rays.len());
        for r in &self.rays {
            let step = apply(&r.dir);
            if step.iter().all(|x| *x == 0) {
                return Err(ModuleError::NonProperRestriction(r.dir.clone()));
            }
            if !intlin::is_primitive(&step) {
                return Err(ModuleError::NonFreeRestriction(step));
            }
            rays.push(Ray::new(apply(&r.base), step, r.value));
        }
        let finite = self.finite.iter().map(|(k, v)| (apply(k), *v));
        canonicalize(rows.len(), finite, rays)
    }

    /// `sum_alpha mult(self, alpha) * mult(n, -alpha)` for a finite `n`.
    pub fn pair_with_finite(&self, n: &Self) -> Result<i64, ModuleError> {
        if self.d != n.d {
            return Err(ModuleError::DimensionMismatch(self.d, n.d));
        }
        if !n.is_finite() {
            return Err(ModuleError::NotFinite);
        }
        Ok(n.finite
            .iter()
            .map(|(beta, v)| v * self.multiplicity(&intlin::neg(beta)))
            .sum())
    }

    /// Multiplicities over an integer box, lexicographic order.
    pub fn table(&self, lo: &[i64], hi: &[i64]) -> Vec<(IntVec, i64)> {
        box_points(lo, hi)
            .into_iter()
            .map(|p| {
                let m = self.multiplicity(&p);
                (p, m)
            })
            .collect()
    }
}

impl fmt::Display for VirtualTModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, v) in &self.finite {
            parts.push(format!("{v}*{k:?}"));
        }
        for r in &self.rays {
            parts.push(format!("{}*ray({:?} + N{:?})", r.value, r.base, r.dir));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// All integer points of `[lo, hi]` (inclusive), lexicographic.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<IntVec> {
    let mut out = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for p in &out {
            for v in *l..=*h {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

struct LineData {
    frame: LineFrame,
    plus: i64,
    minus: i64,
    lo: i64,
    hi: i64,
}

/// Canonical form of `finite + rays`.
pub fn canonicalize<I>(d: usize, finite: I, rays: Vec<Ray>) -> Result<VirtualTModule, ModuleError>
where
    I: IntoIterator<Item = (IntVec, i64)>,
{
    let mut raw_finite: BTreeMap<IntVec, i64> = BTreeMap::new();
    for (k, v) in finite {
        if k.len() != d {
            return Err(ModuleError::DimensionMismatch(d, k.len()));
        }
        *raw_finite.entry(k).or_insert(0) += v;
    }
    raw_finite.retain(|_, v| *v != 0);
    let mut raw_rays = Vec::with_capacity(rays.len());
    for r in rays {
        if r.base.len() != d || r.dir.len() != d {
            return Err(ModuleError::DimensionMismatch(d, r.dir.len()));
        }
        if !intlin::is_primitive(&r.dir) {
            return Err(ModuleError::BadDirection(r.dir));
        }
        if r.value != 0 {
            raw_rays.push(r);
        }
    }
    let raw = RawModule {
        finite: &raw_finite,
        rays: &raw_rays,
    };

    // group rays by line
    let mut lines: BTreeMap<Line, LineData> = BTreeMap::new();
    for r in &raw_rays {
        let frame = LineFrame::through(&r.base, &r.dir);
        let t = frame.param(&r.base);
        let positive = r.dir == frame.line.dir;
        let entry = lines.entry(frame.line.clone()).or_insert(LineData {
            frame,
            plus: 0,
            minus: 0,
            lo: t,
            hi: t,
        });
        if positive {
            entry.plus += r.value;
        } else {
            entry.minus += r.value;
        }
        entry.lo = entry.lo.min(t);
        entry.hi = entry.hi.max(t);
    }
    let keys: Vec<Line> = lines.keys().cloned().collect();
    // widen each line's range to cover finite points and crossings
    let mut pinned: BTreeSet<IntVec> = BTreeSet::new();
    for (i, a) in keys.iter().enumerate() {
        for b in keys.iter().skip(i + 1) {
            if let Some(p) = line_intersection(a, b) {
                for key in [a, b] {
                    let data = lines.get_mut(key).expect("line present");
                    let t = data.frame.param(&p);
                    data.lo = data.lo.min(t);
                    data.hi = data.hi.max(t);
                }
                let active = |l: &Line| {
                    let data = &lines[l];
                    data.plus != 0 || data.minus != 0
                };
                if active(a) && active(b) {
                    pinned.insert(p);
                }
            }
        }
    }
    for p in raw_finite.keys() {
        for data in lines.values_mut() {
            if data.frame.contains(p) {
                let t = data.frame.param(p);
                data.lo = data.lo.min(t);
                data.hi = data.hi.max(t);
            }
        }
    }

    let mut out_rays = Vec::new();
    let mut candidates: BTreeSet<IntVec> = raw_finite.keys().cloned().collect();
    candidates.extend(pinned.iter().cloned());
    for data in lines.values() {
        let (lo, hi) = (data.lo, data.hi);
        for t in (lo - 1)..=(hi + 1) {
            candidates.insert(data.frame.at(t));
        }
        if data.plus == 0 && data.minus == 0 {
            continue;
        }
        let f = |t: i64| raw.eval(&data.frame.at(t));
        let free = |t: i64| !pinned.contains(&data.frame.at(t));
        let whole_line_constant = data.plus == data.minus
            && (lo..=hi).filter(|t| free(*t)).all(|t| f(t) == data.plus);
        let (t_plus, t_minus) = if whole_line_constant {
            (0, -1)
        } else {
            let t_plus = if data.plus != 0 {
                (lo..=hi)
                    .rev()
                    .find(|t| free(*t) && f(*t) != data.plus)
                    .map_or(lo, |t| t + 1)
            } else {
                hi + 1
            };
            let t_minus = if data.minus != 0 {
                (lo..=hi)
                    .find(|t| free(*t) && f(*t) != data.minus)
                    .map_or(hi, |t| t - 1)
            } else {
                lo - 1
            };
            (t_plus, t_minus.min(t_plus - 1))
        };
        if data.plus != 0 {
            out_rays.push(Ray::new(data.frame.at(t_plus), data.frame.line.dir.clone(), data.plus));
        }
        if data.minus != 0 {
            out_rays.push(Ray::new(
                data.frame.at(t_minus),
                intlin::neg(&data.frame.line.dir),
                data.minus,
            ));
        }
    }
    out_rays.sort();
    let canonical_rays = RawModule {
        finite: &BTreeMap::new(),
        rays: &out_rays,
    };
    let mut out_finite = BTreeMap::new();
    for p in candidates {
        let v = raw.eval(&p) - canonical_rays.eval(&p);
        if v != 0 {
            out_finite.insert(p, v);
        }
    }
    Ok(VirtualTModule {
        d,
        finite: out_finite,
        rays: out_rays,
    })
}

/// `(xi, c_plus, c_minus, lambda0)` data along one ray direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisProfile {
    pub xi: IntVec,
    pub c_plus: i64,
    pub c_minus: i64,
    pub lambda0: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticProfile {
    pub xi: Option<IntVec>,
    pub c_plus: i64,
    pub c_minus: i64,
    pub lambda0: i64,
    pub off_axis_clean: bool,
    pub multi_direction: bool,
    /// One entry per ray direction (a single entry unless `multi_direction`).
    pub axes: Vec<AxisProfile>,
}

/// Largest content `gcd(p)` over the points of a ray whose line avoids 0.
fn max_content_on_ray(r: &Ray) -> i64 {
    let d = r.dir.len();
    let mut g = 0i64;
    for i in 0..d {
        for j in (i + 1)..d {
            g = num_integer::gcd(g, r.base[i] * r.dir[j] - r.base[j] * r.dir[i]);
        }
    }
    debug_assert!(g != 0, "line through the origin");
    (0..g.max(1)).map(|k| intlin::content(&r.point(k))).max().unwrap_or(0)
}

fn line_through_origin(r: &Ray) -> bool {
    intlin::rational_multiple(&r.base, &r.dir).is_some() || r.base.iter().all(|x| *x == 0)
}

impl VirtualTModule {
    fn axis_profile(&self, xi: &[i64]) -> AxisProfile {
        let g = intlin::transverse_functional(xi).expect("primitive axis");
        let on_axis = |p: &[i64]| {
            let t = dot(&g, p);
            intlin::scale(xi, t) == p
        };
        let neg_xi = intlin::neg(xi);
        let mut c_plus = 0;
        let mut c_minus = 0;
        let mut bound = 0i64;
        for r in &self.rays {
            let base_t = dot(&g, &r.base);
            bound = bound.max(base_t.abs());
            if on_axis(&r.base) {
                if r.dir == xi {
                    c_plus += r.value;
                } else if r.dir == neg_xi {
                    c_minus += r.value;
                }
            }
            // where other rays cross the axis
            if r.dir != xi && r.dir != neg_xi {
                let axis = Line {
                    dir: intlin::positive_direction(xi).expect("axis"),
                    rep: vec![0; self.d],
                };
                let frame = LineFrame::through(&r.base, &r.dir);
                if let Some(p) = line_intersection(&axis, &frame.line) {
                    bound = bound.max(dot(&g, &p).abs());
                }
            }
        }
        for p in self.finite.keys() {
            if on_axis(p) {
                bound = bound.max(dot(&g, p).abs());
            }
        }
        let f = |t: i64| self.multiplicity(&intlin::scale(xi, t));
        let last_plus = (1..=bound).rev().find(|t| f(*t) != c_plus).unwrap_or(0);
        let last_minus = (1..=bound).rev().find(|t| f(-*t) != c_minus).unwrap_or(0);
        // never below the largest ray-base offset along the axis
        let ray_offset = self
            .rays
            .iter()
            .map(|r| dot(&g, &r.base).abs())
            .max()
            .unwrap_or(0);
        AxisProfile {
            xi: xi.to_vec(),
            c_plus,
            c_minus,
            lambda0: 1.max(last_plus).max(last_minus).max(ray_offset),
        }
    }

    pub fn asymptotic_profile(&self) -> AsymptoticProfile {
        let off_axis_finite = |axis: Option<&[i64]>| -> i64 {
            self.finite
                .keys()
                .filter(|p| p.iter().any(|x| *x != 0))
                .filter(|p| match axis {
                    Some(xi) => intlin::rational_multiple(p, xi).is_none(),
                    None => true,
                })
                .filter(|p| self.multiplicity(p) != 0)
                .map(|p| intlin::content(p))
                .max()
                .unwrap_or(0)
        };
        if self.rays.is_empty() {
            return AsymptoticProfile {
                xi: None,
                c_plus: 0,
                c_minus: 0,
                lambda0: 1.max(off_axis_finite(None)),
                off_axis_clean: true,
                multi_direction: false,
                axes: Vec::new(),
            };
        }
        let dirs: BTreeSet<IntVec> = self
            .rays
            .iter()
            .map(|r| intlin::positive_direction(&r.dir).expect("ray direction"))
            .collect();
        let axes: Vec<AxisProfile> = dirs.iter().map(|xi| self.axis_profile(xi)).collect();
        let main = axes[0].clone();
        let xi = main.xi.clone();
        let neg_xi = intlin::neg(&xi);
        let mut clean = true;
        let mut off_bound = off_axis_finite(Some(&xi));
        for r in &self.rays {
            let on_axis_line = (r.dir == xi || r.dir == neg_xi) && line_through_origin(r);
            if on_axis_line {
                continue;
            }
            if line_through_origin(r) {
                clean = false;
                continue;
            }
            off_bound = off_bound.max(max_content_on_ray(r));
        }
        let lambda0 = if clean {
            main.lambda0.max(off_bound)
        } else {
            main.lambda0
        };
        AsymptoticProfile {
            xi: Some(xi),
            c_plus: main.c_plus,
            c_minus: main.c_minus,
            lambda0,
            off_axis_clean: clean,
            multi_direction: dirs.len() > 1,
            axes,
        }
    }
}

pub fn multiplicity(v: &VirtualTModule, alpha: &[i64]) -> i64 {
    v.multiplicity(alpha)
}

pub fn asymptotic_profile(v: &VirtualTModule) -> AsymptoticProfile {
    v.asymptotic_profile()
}

pub fn restrict(v: &VirtualTModule, rows: &[IntVec]) -> Result<VirtualTModule, ModuleError> {
    v.restrict(rows)
}

pub fn pair_with_finite(v: &VirtualTModule, n: &VirtualTModule) -> Result<i64, ModuleError> {
    v.pair_with_finite(n)
}

#[allow(dead_code)]
fn is_zero_q(q: &Rational) -> bool {
    q.is_zero()
}
