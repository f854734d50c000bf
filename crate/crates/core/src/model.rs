//! Manifold specifications and their consistency checks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::intlin::{self, IntVec};
use crate::lattice::polytope::{HPolytope, PolytopeError};
use crate::rational::{format_rational, Rational};

pub type PieceId = String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub id: PieceId,
    pub regions: Vec<HPolytope>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZComponent {
    pub id: String,
    /// `r_1, ..., r_m` with `a_j = r_j * a_hat`.
    pub modular_ratios: Vec<Rational>,
    pub a_hat: IntVec,
    pub leaf_polytope: HPolytope,
    pub side_plus_piece: PieceId,
    pub side_minus_piece: PieceId,
    pub threshold_override: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldSpec {
    pub m: usize,
    pub d: usize,
    pub pieces: Vec<Piece>,
    pub z_components: Vec<ZComponent>,
    pub base_piece: PieceId,
}

impl ManifoldSpec {
    pub fn piece(&self, id: &str) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.id == id)
    }

    pub fn z_component(&self, id: &str) -> Option<&ZComponent> {
        self.z_components.iter().find(|z| z.id == id)
    }
}

pub type OrientationAssignment = BTreeMap<PieceId, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown piece {0:?}")]
    UnknownPiece(String),
    #[error("adjacency graph is disconnected: {0:?} unreachable from the base piece")]
    Disconnected(Vec<PieceId>),
    #[error("non-orientable configuration: crossing {0:?} closes an odd cycle")]
    NonOrientable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.message.contains(needle))
    }

    fn push(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            location: location.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The affine lattice hyperplane `{functional = level}` holding a leaf,
/// oriented so that `functional(a_hat) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafHyperplane {
    pub functional: IntVec,
    pub level: i64,
}

pub fn leaf_hyperplane(z: &ZComponent) -> Result<LeafHyperplane, String> {
    let leaf = &z.leaf_polytope;
    let d = leaf.dim;
    if !leaf.closure().is_nonempty() {
        return Err("leaf polytope is empty".into());
    }
    if leaf.affine_dimension() != Some(d.saturating_sub(1)) {
        return Err("leaf polytope does not span a hyperplane".into());
    }
    let eqs = leaf.implicit_equalities();
    let normal = eqs
        .first()
        .map(|h| h.normal.clone())
        .ok_or_else(|| "leaf polytope does not span a hyperplane".to_string())?;
    let mut functional = intlin::primitive(&normal).map_err(|e| e.to_string())?;
    let along = intlin::dot(&functional, &z.a_hat);
    if along.abs() != 1 {
        return Err(format!(
            "leaf hyperplane is not transverse to a_hat (g(a_hat) = {along})"
        ));
    }
    if along < 0 {
        functional = intlin::neg(&functional);
    }
    let vertex = leaf.vertices().into_iter().next().expect("nonempty leaf");
    let level = intlin::dot_q(&functional, &vertex);
    let level = crate::rational::to_i64(&level)
        .ok_or_else(|| format!("leaf hyperplane level {} is not an integer", format_rational(&level)))?;
    Ok(LeafHyperplane { functional, level })
}

pub fn polytope_vertices_integral(p: &HPolytope) -> bool {
    p.vertices().iter().all(|v| intlin::to_integer(v).is_some())
}

pub fn delzant_check(p: &HPolytope) -> Result<bool, PolytopeError> {
    p.is_delzant()
}

/// Undirected crossing list `(z index, plus piece, minus piece)`.
fn crossings(spec: &ManifoldSpec) -> Vec<(usize, &str, &str)> {
    spec.z_components
        .iter()
        .enumerate()
        .map(|(i, z)| (i, z.side_plus_piece.as_str(), z.side_minus_piece.as_str()))
        .collect()
}

/// Sign propagation visiting crossings in the given order of preference.
pub fn propagate_signs_ordered(
    spec: &ManifoldSpec,
    edge_order: &[usize],
) -> Result<OrientationAssignment, ModelError> {
    let ids: BTreeSet<&str> = spec.pieces.iter().map(|p| p.id.as_str()).collect();
    if !ids.contains(spec.base_piece.as_str()) {
        return Err(ModelError::UnknownPiece(spec.base_piece.clone()));
    }
    let edges = crossings(spec);
    for (_, a, b) in &edges {
        for p in [a, b] {
            if !ids.contains(p) {
                return Err(ModelError::UnknownPiece(p.to_string()));
            }
        }
    }
    let flip = if spec.m % 2 == 1 { -1 } else { 1 };
    let mut signs: OrientationAssignment = BTreeMap::new();
    signs.insert(spec.base_piece.clone(), 1);
    let mut queue = VecDeque::from([spec.base_piece.as_str()]);
    while let Some(cur) = queue.pop_front() {
        let s = signs[cur];
        for &e in edge_order {
            let (_, a, b) = edges[e];
            let other = if a == cur {
                b
            } else if b == cur {
                a
            } else {
                continue;
            };
            if !signs.contains_key(other) {
                signs.insert(other.to_string(), s * flip);
                queue.push_back(other);
            }
        }
    }
    let missing: Vec<PieceId> = ids
        .iter()
        .filter(|id| !signs.contains_key(**id))
        .map(|id| id.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(ModelError::Disconnected(missing));
    }
    for (i, a, b) in edges {
        if signs[a] != signs[b] * flip {
            return Err(ModelError::NonOrientable(spec.z_components[i].id.clone()));
        }
    }
    Ok(signs)
}

pub fn propagate_signs(spec: &ManifoldSpec) -> Result<OrientationAssignment, ModelError> {
    let order: Vec<usize> = (0..spec.z_components.len()).collect();
    propagate_signs_ordered(spec, &order)
}

fn ratios_integral(z: &ZComponent) -> bool {
    z.modular_ratios.iter().all(|r| {
        z.a_hat
            .iter()
            .all(|a| (*r * Rational::from_integer(*a as i128)).is_integer())
    })
}

pub fn check_integrality(spec: &ManifoldSpec) -> bool {
    spec.z_components
        .iter()
        .all(|z| ratios_integral(z) && polytope_vertices_integral(&z.leaf_polytope))
        && spec
            .pieces
            .iter()
            .flat_map(|p| &p.regions)
            .all(polytope_vertices_integral)
}

fn check_polytope(report: &mut ValidationReport, location: &str, p: &HPolytope, d: usize) -> bool {
    if p.dim != d {
        report.push(location, format!("polytope has dimension {}, expected {d}", p.dim));
        return false;
    }
    if !p.is_bounded() {
        report.push(location, "polytope is not compact");
        return false;
    }
    match p.is_delzant() {
        Ok(true) => {}
        Ok(false) => report.push(location, "polytope is not Delzant"),
        Err(e) => report.push(location, e.to_string()),
    }
    if !polytope_vertices_integral(p) {
        report.push(location, "polytope has a non-lattice vertex");
    }
    true
}

pub fn validate_spec(spec: &ManifoldSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    if spec.m == 0 {
        report.push("m", "m must be at least 1");
    }
    if spec.d == 0 {
        report.push("d", "d must be at least 1");
    }
    if !report.is_empty() {
        return report;
    }
    let mut seen = BTreeSet::new();
    for p in &spec.pieces {
        if !seen.insert(p.id.as_str()) {
            report.push(format!("piece {}", p.id), "duplicate piece identifier");
        }
    }
    let mut zseen = BTreeSet::new();
    for z in &spec.z_components {
        if !zseen.insert(z.id.as_str()) {
            report.push(format!("z {}", z.id), "duplicate z component identifier");
        }
    }
    if !seen.contains(spec.base_piece.as_str()) {
        report.push("base_piece", format!("unknown piece {:?}", spec.base_piece));
    }
    for p in &spec.pieces {
        for (i, r) in p.regions.iter().enumerate() {
            check_polytope(&mut report, &format!("piece {} region {i}", p.id), r, spec.d);
        }
    }
    for z in &spec.z_components {
        let loc = format!("z {}", z.id);
        for side in [&z.side_plus_piece, &z.side_minus_piece] {
            if !seen.contains(side.as_str()) {
                report.push(&loc, format!("unknown piece {side:?}"));
            }
        }
        if z.modular_ratios.len() != spec.m {
            report.push(
                &loc,
                format!("expected {} modular ratios, got {}", spec.m, z.modular_ratios.len()),
            );
        } else if z.modular_ratios.last().is_some_and(|r| r.is_zero()) {
            report.push(&loc, "leading modular weight is zero");
        }
        if z.a_hat.len() != spec.d {
            report.push(&loc, format!("a_hat has length {}, expected {}", z.a_hat.len(), spec.d));
            continue;
        }
        if !intlin::is_primitive(&z.a_hat) {
            report.push(&loc, "a_hat not primitive");
            continue;
        }
        if !ratios_integral(z) {
            report.push(&loc, "modular weights a_j = r_j a_hat are not integral");
        }
        if let Some(t) = &z.threshold_override {
            if !t.is_positive() {
                report.push(&loc, "threshold_override must be positive");
            }
        }
        let leaf_loc = format!("z {} leaf", z.id);
        if check_polytope(&mut report, &leaf_loc, &z.leaf_polytope, spec.d) {
            if !z.leaf_polytope.closure().is_nonempty() {
                report.push(&leaf_loc, "leaf polytope is empty");
            } else if let Err(e) = leaf_hyperplane(z) {
                report.push(&leaf_loc, e);
            }
        }
        if z.modular_ratios.len() == spec.m && !crate::laurent::hamiltonian_check(z) {
            report.push(&loc, "collar profile is not Hamiltonian");
        }
    }
    if !report.is_empty() {
        return report;
    }
    match propagate_signs(spec) {
        Ok(signs) => {
            for o in crate::quantize::find_overlaps(spec, &signs) {
                report.push(format!("piece {}", o.piece), format!("overlapping regions: {} and {}", o.first, o.second));
            }
        }
        Err(ModelError::Disconnected(ids)) => {
            report.push("graph", format!("adjacency graph is disconnected: {ids:?}"))
        }
        Err(e) => report.push("graph", e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::polytope::Halfspace;
    use crate::presets;
    use crate::rational::{frac, rat};

    #[test]
    fn s2_m2_is_valid() {
        let spec = presets::s2(2, None).unwrap();
        assert!(validate_spec(&spec).is_empty(), "{}", validate_spec(&spec));
    }

    #[test]
    fn zero_leading_weight_is_reported() {
        let mut spec = presets::s2(2, None).unwrap();
        spec.z_components[0].modular_ratios = vec![rat(1), rat(0)];
        assert!(validate_spec(&spec).mentions("leading modular weight is zero"));
    }

    #[test]
    fn non_primitive_a_hat_is_reported() {
        let mut spec = presets::s2xs2(2).unwrap();
        spec.z_components[0].a_hat = vec![2, 4];
        assert!(validate_spec(&spec).mentions("a_hat not primitive"));
    }

    #[test]
    fn delzant_examples() {
        assert_eq!(delzant_check(&HPolytope::cuboid(&[0, 0], &[1, 1])), Ok(true));
        let tri = HPolytope::new(
            2,
            vec![
                Halfspace::closed(vec![1, 0], 0),
                Halfspace::closed(vec![0, 1], 0),
                Halfspace::closed(vec![-2, -1], -2),
            ],
        )
        .unwrap();
        assert_eq!(delzant_check(&tri), Ok(false));
        assert_eq!(delzant_check(&HPolytope::point(&[0])), Ok(true));
        let ray = HPolytope::new(1, vec![Halfspace::closed(vec![1], 0)]).unwrap();
        assert_eq!(delzant_check(&ray), Err(PolytopeError::NotCompact));
    }

    #[test]
    fn chain_signs() {
        let odd = presets::chain(3, 3).unwrap();
        let s = propagate_signs(&odd).unwrap();
        let got: Vec<i64> = odd.pieces.iter().map(|p| s[&p.id]).collect();
        assert_eq!(got, vec![1, -1, 1]);
        let even = presets::chain(3, 2).unwrap();
        let s = propagate_signs(&even).unwrap();
        assert!(s.values().all(|v| *v == 1));
    }

    #[test]
    fn odd_self_loop_is_non_orientable() {
        let mut spec = presets::s2(1, None).unwrap();
        spec.pieces.truncate(1);
        let only = spec.pieces[0].id.clone();
        spec.z_components[0].side_minus_piece = only.clone();
        spec.z_components[0].side_plus_piece = only;
        assert!(matches!(propagate_signs(&spec), Err(ModelError::NonOrientable(_))));
        assert!(validate_spec(&spec).mentions("non-orientable configuration"));
    }

    #[test]
    fn disconnected_is_reported() {
        let mut spec = presets::s2(2, None).unwrap();
        spec.pieces.push(Piece {
            id: "island".into(),
            regions: vec![],
        });
        assert!(validate_spec(&spec).mentions("disconnected"));
    }

    #[test]
    fn integrality_examples() {
        let spec = presets::s2(2, None).unwrap();
        assert!(check_integrality(&spec));
        let mut half = spec.clone();
        half.z_components[0].modular_ratios = vec![rat(0), frac(1, 2)];
        assert!(!check_integrality(&half));
        let mut off = spec;
        off.pieces[0].regions.push(
            HPolytope::new(
                2,
                vec![
                    Halfspace::new(vec![3, 0], rat(1), true),
                    Halfspace::closed(vec![-1, 0], -1),
                    Halfspace::closed(vec![0, 1], 0),
                    Halfspace::closed(vec![0, -1], -1),
                ],
            )
            .unwrap(),
        );
        assert!(!check_integrality(&off));
    }

    #[test]
    fn leaf_hyperplane_orientation() {
        let spec = presets::s2xs2(2).unwrap();
        let h = leaf_hyperplane(&spec.z_components[0]).unwrap();
        assert_eq!(h, LeafHyperplane { functional: vec![1, 0], level: 0 });
    }
}
