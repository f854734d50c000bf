//! Exact Laurent-plus-log calculus in the collar coordinate `x` near `Z`.
//!
//! Functions of the form `g log|x| + sum_k c_k x^k` (finitely many `k`,
//! possibly negative) are closed under the operations needed here: taking
//! the antiderivative of the collar one-form density, differentiating it
//! back, and evaluating on either side of `x = 0`. Every operation is exact
//! except [`LaurentLogFn`] evaluation with a nonzero log part, which is
//! bracketed by certified rational bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::model::ZComponent;
use crate::rational::{format_rational, sign, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("collar form needs at least one coefficient")]
    Empty,
    #[error("leading collar coefficient c_{0} is zero")]
    LeadingZero(usize),
    #[error("collar threshold must be positive, got {0}")]
    NonPositiveThreshold(String),
}

/// Side of the hypersurface, i.e. the sign of the collar coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    pub fn sign(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Side> {
        match s {
            1 => Some(Side::Plus),
            -1 => Some(Side::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

/// A finitely supported Laurent polynomial `sum_k c_k x^k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: i32) -> Rational {
        self.coeffs.get(&exponent).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `p(-x)`: odd exponents change sign.
    pub fn reflect(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| {
            if k.rem_euclid(2) == 1 {
                (k, -*c)
            } else {
                (k, *c)
            }
        }))
    }

    /// Exact value at a nonzero rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        assert!(!x.is_zero(), "Laurent polynomial evaluated at 0");
        self.terms().map(|(k, c)| *c * x.pow(k)).sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .rev()
            .map(|(k, c)| match k {
                0 => format_rational(c),
                _ => format!("{}*x^{}", format_rational(c), k),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `log_coeff * log|x| + laurent(x)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentLogFn {
    pub log_coeff: Rational,
    pub laurent: LaurentPoly,
}

impl LaurentLogFn {
    pub fn new(log_coeff: Rational, laurent: LaurentPoly) -> Self {
        Self { log_coeff, laurent }
    }

    /// `f(-x)`; `log|x|` is even.
    pub fn reflect(&self) -> Self {
        Self::new(self.log_coeff, self.laurent.reflect())
    }

    /// Value on the given side at `|x| = r`, as `log_coeff * log(r) + rational`.
    ///
    /// Returns the rational part; the log part is left symbolic.
    pub fn rational_part_on_side(&self, side: Side, r: &Rational) -> Rational {
        match side {
            Side::Plus => self.laurent.eval(r),
            Side::Minus => self.laurent.reflect().eval(r),
        }
    }

    /// Least integer `>= scale * f(side * r)`, decided exactly.
    ///
    /// With a nonzero log part and `r != 1` the value is irrational, so
    /// refining rational bounds on `log r` terminates.
    pub fn ceil_on_side(&self, side: Side, r: &Rational, scale: i64) -> i64 {
        assert!(r.is_positive(), "evaluation radius must be positive");
        let s = Rational::from_integer(scale as i128);
        let rational = self.rational_part_on_side(side, r) * s;
        let log_scale = self.log_coeff * s;
        if log_scale.is_zero() || r.is_one() {
            return crate::rational::ceil_i64(&rational);
        }
        let to_big = |q: &Rational| {
            BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
        };
        let rational = to_big(&rational);
        let log_scale = to_big(&log_scale);
        let mut terms = 8usize;
        loop {
            let (lo, hi) = log_bounds(&to_big(r), terms);
            let (a, b) = if log_scale.is_positive() {
                (&log_scale * &lo + &rational, &log_scale * &hi + &rational)
            } else {
                (&log_scale * &hi + &rational, &log_scale * &lo + &rational)
            };
            // The value lies strictly inside (a, b).
            let next = a.floor() + BigRational::one();
            if next >= b {
                return next
                    .to_integer()
                    .to_i64()
                    .expect("moment level out of i64 range");
            }
            terms *= 2;
            assert!(terms <= 1 << 16, "log bracketing failed to converge");
        }
    }

    /// Floating-point value at a nonzero point, for diagnostics and plots only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut v = self.log_coeff.to_f64().unwrap_or(0.0) * x.abs().ln();
        for (k, c) in self.laurent.terms() {
            v += c.to_f64().unwrap_or(0.0) * x.powi(k);
        }
        v
    }
}

impl fmt::Display for LaurentLogFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log_coeff.is_zero() {
            write!(f, "{}", self.laurent)
        } else if self.laurent.is_zero() {
            write!(f, "{}*log|x|", format_rational(&self.log_coeff))
        } else {
            write!(f, "{}*log|x| + {}", format_rational(&self.log_coeff), self.laurent)
        }
    }
}

/// Rational bounds `(lo, hi)` with `lo < log(x) < hi` for `x > 0, x != 1`,
/// from `log x = 2 atanh(z)`, `z = (x-1)/(x+1)`, truncated after `terms` terms.
pub fn log_bounds(x: &BigRational, terms: usize) -> (BigRational, BigRational) {
    assert!(x.is_positive());
    let one = BigRational::one();
    let z = (x - &one) / (x + &one);
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    for k in 0..terms {
        sum += &power / BigRational::from_integer(BigInt::from(2 * k + 1));
        power = &power * &z2;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    sum = &sum * &two;
    // |remaining| < 2 |z|^(2n+1) / ((2n+1)(1 - z^2)); `power` is z^(2n+1).
    let tail = &two * power.abs()
        / (BigRational::from_integer(BigInt::from(2 * terms + 1)) * (&one - &z2));
    (&sum - &tail, &sum + &tail)
}

/// The collar one-form density `sum_{j=1}^m c_j x^{-j} dx`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollarFormData {
    c: Vec<Rational>,
}

impl CollarFormData {
    pub fn new(c: Vec<Rational>) -> Result<Self, LaurentError> {
        match c.last() {
            None => Err(LaurentError::Empty),
            Some(last) if last.is_zero() => Err(LaurentError::LeadingZero(c.len())),
            Some(_) => Ok(Self { c }),
        }
    }

    /// Collar data of a Z component: the density coefficients are the
    /// modular ratios themselves (circle period normalized to one).
    pub fn of_component(z: &ZComponent) -> Result<Self, LaurentError> {
        Self::new(z.modular_ratios.clone())
    }

    pub fn m(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn leading(&self) -> Rational {
        *self.c.last().expect("nonempty by construction")
    }

    pub fn density(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.c
                .iter()
                .enumerate()
                .map(|(i, c)| (-(i as i32 + 1), *c)),
        )
    }
}

/// `d(f)/dx` as a density; the log part differentiates to `x^{-1}`.
pub fn derivative(f: &LaurentLogFn) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    out.add_term(-1, f.log_coeff);
    for (k, c) in f.laurent.terms() {
        if k != 0 {
            out.add_term(k - 1, *c * Rational::from_integer(k as i128));
        }
    }
    out
}

/// The scalar moment profile: the antiderivative of the collar density
/// with no constant term.
pub fn moment_from_form(cf: &CollarFormData) -> LaurentLogFn {
    let mut laurent = LaurentPoly::zero();
    for (i, c) in cf.coeffs().iter().enumerate().skip(1) {
        let j = i as i128 + 1;
        laurent.add_term(-(j as i32 - 1), -*c / Rational::from_integer(j - 1));
    }
    LaurentLogFn::new(cf.coeffs()[0], laurent)
}

/// Sign of the limit of the moment profile as `x -> 0` from `side`.
pub fn escape_direction(cf: &CollarFormData, side: Side) -> i64 {
    let lead = sign(&cf.leading()) as i64;
    match cf.m() {
        1 => -lead,
        m => -lead * side.sign().pow((m - 1) as u32),
    }
}

/// A radius `x* in (0, 1]` below which the leading term of the density
/// dominates the rest, so the profile is strictly monotone on each side.
pub fn monotonicity_threshold(cf: &CollarFormData) -> Rational {
    let rest: Rational = cf.coeffs()[..cf.m() - 1].iter().map(|c| c.abs()).sum();
    let bound = cf.leading().abs() / (Rational::one() + rest);
    bound.min(Rational::one())
}

/// Degree-2 data of a Z component split along `H^2(M) + H^1(Z)^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MazzeoMelroseData {
    /// Leaf hyperplane `{g = level}` carrying the smooth summand.
    pub leaf_functional: Option<Vec<i64>>,
    pub leaf_level: Option<i64>,
    /// The `m` classes `a_j = r_j * a_hat`.
    pub classes: Vec<Vec<Rational>>,
    pub integral: bool,
}

pub fn mazzeo_melrose_decompose(z: &ZComponent) -> MazzeoMelroseData {
    let classes: Vec<Vec<Rational>> = z
        .modular_ratios
        .iter()
        .map(|r| {
            z.a_hat
                .iter()
                .map(|a| *r * Rational::from_integer(*a as i128))
                .collect()
        })
        .collect();
    let classes_integral = classes.iter().flatten().all(|q| q.is_integer());
    let leaf = crate::model::leaf_hyperplane(z).ok();
    let leaf_integral = crate::model::polytope_vertices_integral(&z.leaf_polytope);
    MazzeoMelroseData {
        leaf_functional: leaf.as_ref().map(|h| h.functional.clone()),
        leaf_level: leaf.as_ref().map(|h| h.level),
        classes,
        integral: classes_integral && leaf_integral,
    }
}

/// True iff `profile' == density(cf)` as Laurent polynomials.
pub fn profile_is_hamiltonian(profile: &LaurentLogFn, cf: &CollarFormData) -> bool {
    derivative(profile) == cf.density()
}

pub fn hamiltonian_check(z: &ZComponent) -> bool {
    match CollarFormData::of_component(z) {
        Ok(cf) => profile_is_hamiltonian(&moment_from_form(&cf), &cf),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn cf(c: &[i128]) -> CollarFormData {
        CollarFormData::new(c.iter().map(|v| rat(*v)).collect()).unwrap()
    }

    #[test]
    fn derivative_rules() {
        let log = LaurentLogFn::new(rat(1), LaurentPoly::zero());
        assert_eq!(derivative(&log), LaurentPoly::from_terms([(-1, rat(1))]));

        let inv_sq = LaurentLogFn::new(rat(0), LaurentPoly::from_terms([(-2, frac(-1, 2))]));
        assert_eq!(derivative(&inv_sq), LaurentPoly::from_terms([(-3, rat(1))]));

        let both = LaurentLogFn::new(rat(2), LaurentPoly::from_terms([(-2, frac(-1, 2))]));
        assert_eq!(
            derivative(&both),
            LaurentPoly::from_terms([(-1, rat(2)), (-3, rat(1))])
        );
    }

    #[test]
    fn derivative_drops_constants() {
        let f = LaurentLogFn::new(rat(0), LaurentPoly::from_terms([(0, rat(5)), (2, rat(1))]));
        assert_eq!(derivative(&f), LaurentPoly::from_terms([(1, rat(2))]));
    }

    #[test]
    fn moment_profiles() {
        assert_eq!(
            moment_from_form(&cf(&[0, 0, 1])),
            LaurentLogFn::new(rat(0), LaurentPoly::from_terms([(-2, frac(-1, 2))]))
        );
        assert_eq!(
            moment_from_form(&cf(&[0, 1])),
            LaurentLogFn::new(rat(0), LaurentPoly::from_terms([(-1, rat(-1))]))
        );
        let mu = moment_from_form(&cf(&[2, 1]));
        assert_eq!(
            mu,
            LaurentLogFn::new(rat(2), LaurentPoly::from_terms([(-1, rat(-1))]))
        );
        assert_eq!(derivative(&mu), LaurentPoly::from_terms([(-1, rat(2)), (-2, rat(1))]));
    }

    #[test]
    fn escape_directions() {
        assert_eq!(escape_direction(&cf(&[0, 1]), Side::Plus), -1);
        assert_eq!(escape_direction(&cf(&[0, 1]), Side::Minus), 1);
        assert_eq!(escape_direction(&cf(&[0, 0, 1]), Side::Plus), -1);
        assert_eq!(escape_direction(&cf(&[0, 0, 1]), Side::Minus), -1);
        assert_eq!(escape_direction(&cf(&[1]), Side::Plus), -1);
        assert_eq!(escape_direction(&cf(&[1]), Side::Minus), -1);
        assert_eq!(escape_direction(&cf(&[-3]), Side::Minus), 1);
    }

    #[test]
    fn thresholds() {
        assert_eq!(monotonicity_threshold(&cf(&[0, 0, 1])), rat(1));
        assert_eq!(monotonicity_threshold(&cf(&[1, 1])), frac(1, 2));
        assert_eq!(monotonicity_threshold(&cf(&[4, 0, 1])), frac(1, 5));
        // mu' = x^{-2}(x + 1) > 0 on (0, 1/2)
        let d = cf(&[1, 1]).density();
        for k in 1..50 {
            let x = frac(k, 100);
            assert!(d.eval(&x) > rat(0));
        }
        // |c_3| x^-3 vs 4 x^-1 at x = 1/5: 125 > 20
        let x = frac(1, 5);
        assert!(x.pow(-3) > rat(4) * x.pow(-1));
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        assert_eq!(
            CollarFormData::new(vec![rat(1), rat(0)]),
            Err(LaurentError::LeadingZero(2))
        );
        assert_eq!(CollarFormData::new(vec![]), Err(LaurentError::Empty));
    }

    #[test]
    fn reflection_flips_odd_terms() {
        let p = LaurentPoly::from_terms([(-1, rat(3)), (-2, rat(5))]);
        assert_eq!(
            p.reflect(),
            LaurentPoly::from_terms([(-1, rat(-3)), (-2, rat(5))])
        );
        let x = frac(2, 7);
        assert_eq!(p.reflect().eval(&x), p.eval(&-x));
    }

    #[test]
    fn log_bounds_bracket_ln() {
        for (n, d) in [(1i64, 6i64), (1, 2), (3, 4), (5, 2), (1, 100)] {
            let x = BigRational::new(BigInt::from(n), BigInt::from(d));
            let (lo, hi) = log_bounds(&x, 12);
            let exact = (n as f64 / d as f64).ln();
            assert!(lo.to_f64().unwrap() <= exact + 1e-12, "{n}/{d}");
            assert!(hi.to_f64().unwrap() >= exact - 1e-12, "{n}/{d}");
            assert!(lo < hi);
        }
    }

    #[test]
    fn exact_ceiling_with_log_part() {
        // 5 log(1/6) - 6 = -14.958..., 5 log(1/6) + 6 = -2.958...
        let mu = moment_from_form(&cf(&[5, 1]));
        let r = frac(1, 6);
        assert_eq!(mu.ceil_on_side(Side::Plus, &r, -1), 15);
        assert_eq!(mu.ceil_on_side(Side::Minus, &r, 1), -2);
        assert_eq!(mu.ceil_on_side(Side::Plus, &r, 1), -14);
        // log part vanishes at r = 1
        let mu = moment_from_form(&cf(&[1]));
        assert_eq!(mu.ceil_on_side(Side::Plus, &rat(1), -1), 0);
    }
}
