//! Half-infinite lattice prisms: a compact cross-section swept along a
//! primitive direction.

use thiserror::Error;

use super::intlin::{self, dot, IntVec};
use super::polytope::{HPolytope, PolytopeError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrismError {
    #[error("prism direction {0:?} is not primitive")]
    DirectionNotPrimitive(IntVec),
    #[error("transverse functional does not take the value 1 on the direction")]
    NotTransverse,
    #[error("cross-section is empty")]
    EmptyCrossSection,
    #[error("cross-section does not lie in the hyperplane g = {0}")]
    OffHyperplane(i64),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prism {
    cross_section: HPolytope,
    direction: IntVec,
    transverse: IntVec,
    level: i64,
    start: i64,
}

impl Prism {
    /// `cross_section` must lie in `{transverse = level}`; the region is
    /// `cross_section + t * direction` for integers `t >= start`.
    pub fn new(
        cross_section: HPolytope,
        direction: IntVec,
        transverse: IntVec,
        level: i64,
        start: i64,
    ) -> Result<Self, PrismError> {
        if !intlin::is_primitive(&direction) {
            return Err(PrismError::DirectionNotPrimitive(direction));
        }
        if dot(&transverse, &direction) != 1 {
            return Err(PrismError::NotTransverse);
        }
        if !cross_section.closure().is_nonempty() {
            return Err(PrismError::EmptyCrossSection);
        }
        if !cross_section.is_bounded() {
            return Err(PolytopeError::NotCompact.into());
        }
        let lvl = Rational::from_integer(level as i128);
        if cross_section
            .vertices()
            .iter()
            .any(|v| intlin::dot_q(&transverse, v) != lvl)
        {
            return Err(PrismError::OffHyperplane(level));
        }
        Ok(Self {
            cross_section,
            direction,
            transverse,
            level,
            start,
        })
    }

    pub fn direction(&self) -> &[i64] {
        &self.direction
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn transverse(&self) -> &[i64] {
        &self.transverse
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn cross_section(&self) -> &HPolytope {
        &self.cross_section
    }

    /// Lattice points of the first slab `cross_section + start * direction`.
    pub fn first_slab(&self) -> Vec<IntVec> {
        let shift = intlin::scale(&self.direction, self.start);
        self.cross_section
            .translated(&shift)
            .lattice_points()
            .expect("cross-section is compact")
    }

    /// Slab index of a point: `transverse(y) - level`.
    pub fn slab_of(&self, y: &[i64]) -> i64 {
        dot(&self.transverse, y) - self.level
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        let t = self.slab_of(y);
        if t < self.start {
            return false;
        }
        let back = intlin::axpy(y, -t, &self.direction);
        self.cross_section.contains_lattice(&back)
    }
}

pub fn prism_first_slab(p: &Prism) -> Vec<IntVec> {
    p.first_slab()
}

/// Lattice frame adapted to a primitive `u` and a covector `g` with
/// `g(u) = 1`: `basis` spans `ker g`, `coords` are the dual functionals.
#[derive(Debug, Clone)]
pub struct SplitFrame {
    pub direction: IntVec,
    pub transverse: IntVec,
    pub basis: Vec<IntVec>,
    pub coords: Vec<IntVec>,
}

impl SplitFrame {
    pub fn new(direction: &[i64], transverse: &[i64]) -> Result<Self, PrismError> {
        if !intlin::is_primitive(direction) {
            return Err(PrismError::DirectionNotPrimitive(direction.to_vec()));
        }
        if dot(transverse, direction) != 1 {
            return Err(PrismError::NotTransverse);
        }
        let d = direction.len();
        let basis = intlin::integer_kernel(&[transverse.to_vec()], d);
        // columns [u | basis] are unimodular; invert to get dual rows
        let mut cols = vec![direction.to_vec()];
        cols.extend(basis.iter().cloned());
        let mut coords = Vec::with_capacity(d.saturating_sub(1));
        for i in 1..d {
            // row i of the inverse solves row * cols[j] = delta_ij
            let a: Vec<Vec<Rational>> = cols.iter().map(|c| intlin::to_rational(c)).collect();
            let mut rhs = vec![Rational::from_integer(0); d];
            rhs[i] = Rational::from_integer(1);
            let row = intlin::solve_square(&a, &rhs).expect("unimodular frame");
            coords.push(intlin::to_integer(&row).expect("integral inverse"));
        }
        Ok(Self {
            direction: direction.to_vec(),
            transverse: transverse.to_vec(),
            basis,
            coords,
        })
    }

    /// Coordinates `(g(y), h_1(y), ..., h_{d-1}(y))`.
    pub fn split(&self, y: &[i64]) -> (i64, IntVec) {
        (
            dot(&self.transverse, y),
            self.coords.iter().map(|h| dot(h, y)).collect(),
        )
    }

    pub fn join(&self, t: i64, w: &[i64]) -> IntVec {
        let mut y = intlin::scale(&self.direction, t);
        for (b, wi) in self.basis.iter().zip(w) {
            y = intlin::axpy(&y, *wi, b);
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::polytope::Halfspace;

    #[test]
    fn one_dimensional_slab() {
        let pr = Prism::new(HPolytope::point(&[-1]), vec![-1], vec![-1], 1, 0).unwrap();
        assert_eq!(pr.first_slab(), vec![vec![-1]]);
        assert!(pr.contains(&[-5]));
        assert!(!pr.contains(&[0]));
    }

    #[test]
    fn segment_slab() {
        let seg = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 0], 3),
                Halfspace::closed(vec![-1, 0], -3),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![0, -1], -2),
            ],
        )
        .unwrap();
        let pr = Prism::new(seg, vec![1, 0], vec![1, 0], 3, 0).unwrap();
        assert_eq!(pr.first_slab(), vec![vec![3, 0], vec![3, 1], vec![3, 2]]);
        for k in 0..20 {
            for p in pr.first_slab() {
                assert!(pr.contains(&intlin::axpy(&p, k, &[1, 0])));
            }
        }
    }

    #[test]
    fn slab_without_lattice_points() {
        let seg = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 0], 0),
                Halfspace::closed(vec![-1, 0], 0),
                Halfspace::new(vec![0, 3], Rational::from_integer(1), true),
                Halfspace::new(vec![0, -3], Rational::from_integer(-2), true),
            ],
        )
        .unwrap();
        let pr = Prism::new(seg, vec![1, 0], vec![1, 0], 0, 0).unwrap();
        assert!(pr.first_slab().is_empty());
    }

    #[test]
    fn rejects_bad_prisms() {
        assert!(matches!(
            Prism::new(HPolytope::point(&[0, 0]), vec![2, 0], vec![1, 0], 0, 0),
            Err(PrismError::DirectionNotPrimitive(_))
        ));
        assert_eq!(
            Prism::new(HPolytope::point(&[0, 0]), vec![1, 0], vec![0, 1], 0, 0),
            Err(PrismError::NotTransverse)
        );
        assert_eq!(
            Prism::new(HPolytope::point(&[1, 0]), vec![1, 0], vec![1, 0], 0, 0),
            Err(PrismError::OffHyperplane(0))
        );
    }

    #[test]
    fn split_frame_roundtrip() {
        let u = vec![2, -3, 1];
        let g = intlin::transverse_functional(&u).unwrap();
        let f = SplitFrame::new(&u, &g).unwrap();
        assert_eq!(f.basis.len(), 2);
        for y in [vec![1, 2, 3], vec![-4, 0, 7], vec![0, 0, 0]] {
            let (t, w) = f.split(&y);
            assert_eq!(f.join(t, &w), y);
        }
    }
}
