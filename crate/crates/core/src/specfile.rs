//! JSON forms of specs and modules. Rationals travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::lattice::intlin::IntVec;
use crate::lattice::polytope::{HPolytope, Halfspace, PolytopeError};
use crate::model::{ManifoldSpec, Piece, ZComponent};
use crate::rational::RationalText;
use crate::virtmod::{AsymptoticProfile, ModuleError, Ray, VirtualTModule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceFile {
    pub normal: IntVec,
    pub bound: RationalText,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub halfspaces: Vec<HalfspaceFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub id: String,
    #[serde(default)]
    pub regions: Vec<PolytopeFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZFile {
    pub id: String,
    pub a_hat: IntVec,
    pub ratios: Vec<RationalText>,
    pub leaf_polytope: PolytopeFile,
    pub side_plus: String,
    pub side_minus: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_override: Option<RationalText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub m: usize,
    pub d: usize,
    pub pieces: Vec<PieceFile>,
    pub z_components: Vec<ZFile>,
    pub base_piece: String,
}

#[derive(Debug, thiserror::Error)]
pub enum SpecFileError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {source}")]
    Polytope {
        location: String,
        source: PolytopeError,
    },
    #[error("module: {0}")]
    Module(#[from] ModuleError),
}

impl From<serde_json::Error> for SpecFileError {
    fn from(e: serde_json::Error) -> Self {
        SpecFileError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn polytope_from_file(d: usize, p: &PolytopeFile, location: &str) -> Result<HPolytope, SpecFileError> {
    let hs = p
        .halfspaces
        .iter()
        .map(|h| Halfspace::new(h.normal.clone(), h.bound.0, h.closed))
        .collect();
    HPolytope::new(d, hs).map_err(|source| SpecFileError::Polytope {
        location: location.to_string(),
        source,
    })
}

pub fn polytope_to_file(p: &HPolytope) -> PolytopeFile {
    PolytopeFile {
        halfspaces: p
            .halfspaces
            .iter()
            .map(|h| HalfspaceFile {
                normal: h.normal.clone(),
                bound: RationalText(h.bound),
                closed: h.closed,
            })
            .collect(),
    }
}

impl SpecFile {
    pub fn to_spec(&self) -> Result<ManifoldSpec, SpecFileError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let regions = p
                    .regions
                    .iter()
                    .enumerate()
                    .map(|(i, r)| polytope_from_file(self.d, r, &format!("piece {} region {i}", p.id)))
                    .collect::<Result<_, _>>()?;
                Ok(Piece { id: p.id.clone(), regions })
            })
            .collect::<Result<_, SpecFileError>>()?;
        let z_components = self
            .z_components
            .iter()
            .map(|z| {
                Ok(ZComponent {
                    id: z.id.clone(),
                    modular_ratios: z.ratios.iter().map(|r| r.0).collect(),
                    a_hat: z.a_hat.clone(),
                    leaf_polytope: polytope_from_file(self.d, &z.leaf_polytope, &format!("z {} leaf", z.id))?,
                    side_plus_piece: z.side_plus.clone(),
                    side_minus_piece: z.side_minus.clone(),
                    threshold_override: z.threshold_override.map(|t| t.0),
                })
            })
            .collect::<Result<_, SpecFileError>>()?;
        Ok(ManifoldSpec {
            m: self.m,
            d: self.d,
            pieces,
            z_components,
            base_piece: self.base_piece.clone(),
        })
    }

    pub fn from_spec(spec: &ManifoldSpec) -> Self {
        SpecFile {
            m: spec.m,
            d: spec.d,
            pieces: spec
                .pieces
                .iter()
                .map(|p| PieceFile {
                    id: p.id.clone(),
                    regions: p.regions.iter().map(polytope_to_file).collect(),
                })
                .collect(),
            z_components: spec
                .z_components
                .iter()
                .map(|z| ZFile {
                    id: z.id.clone(),
                    a_hat: z.a_hat.clone(),
                    ratios: z.modular_ratios.iter().copied().map(RationalText).collect(),
                    leaf_polytope: polytope_to_file(&z.leaf_polytope),
                    side_plus: z.side_plus_piece.clone(),
                    side_minus: z.side_minus_piece.clone(),
                    threshold_override: z.threshold_override.map(RationalText),
                })
                .collect(),
            base_piece: spec.base_piece.clone(),
        }
    }
}

pub fn parse_spec(text: &str) -> Result<ManifoldSpec, SpecFileError> {
    let file: SpecFile = serde_json::from_str(text)?;
    file.to_spec()
}

/// Pretty JSON with struct field order fixed and rationals canonical.
pub fn spec_to_json(spec: &ManifoldSpec) -> String {
    let mut s = serde_json::to_string_pretty(&SpecFile::from_spec(spec)).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_polytope(d: usize, text: &str) -> Result<HPolytope, SpecFileError> {
    let file: PolytopeFile = serde_json::from_str(text)?;
    polytope_from_file(d, &file, "polytope")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteEntry {
    pub weight: IntVec,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayEntry {
    pub base: IntVec,
    pub dir: IntVec,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub d: usize,
    pub finite: Vec<FiniteEntry>,
    pub rays: Vec<RayEntry>,
}

impl ModuleFile {
    pub fn from_module(v: &VirtualTModule) -> Self {
        ModuleFile {
            d: v.dim_ambient(),
            finite: v
                .finite()
                .iter()
                .map(|(k, m)| FiniteEntry { weight: k.clone(), mult: *m })
                .collect(),
            rays: v
                .rays()
                .iter()
                .map(|r| RayEntry {
                    base: r.base.clone(),
                    dir: r.dir.clone(),
                    value: r.value,
                })
                .collect(),
        }
    }

    pub fn to_module(&self) -> Result<VirtualTModule, ModuleError> {
        crate::virtmod::canonicalize(
            self.d,
            self.finite.iter().map(|e| (e.weight.clone(), e.mult)),
            self.rays
                .iter()
                .map(|r| Ray::new(r.base.clone(), r.dir.clone(), r.value))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisFile {
    pub xi: IntVec,
    pub c_plus: i64,
    pub c_minus: i64,
    pub lambda0: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub xi: Option<IntVec>,
    pub c_plus: i64,
    pub c_minus: i64,
    pub lambda0: i64,
    pub off_axis_clean: bool,
    pub multi_direction: bool,
    pub axes: Vec<AxisFile>,
}

impl ProfileFile {
    pub fn from_profile(p: &AsymptoticProfile) -> Self {
        ProfileFile {
            xi: p.xi.clone(),
            c_plus: p.c_plus,
            c_minus: p.c_minus,
            lambda0: p.lambda0,
            off_axis_clean: p.off_axis_clean,
            multi_direction: p.multi_direction,
            axes: p
                .axes
                .iter()
                .map(|a| AxisFile {
                    xi: a.xi.clone(),
                    c_plus: a.c_plus,
                    c_minus: a.c_minus,
                    lambda0: a.lambda0,
                })
                .collect(),
        }
    }
}

/// Canonical module output: the module and its asymptotic profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizationFile {
    pub module: ModuleFile,
    pub profile: ProfileFile,
}

pub fn module_to_json(v: &VirtualTModule) -> String {
    let file = QuantizationFile {
        module: ModuleFile::from_module(v),
        profile: ProfileFile::from_profile(&v.asymptotic_profile()),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

pub fn module_from_json(text: &str) -> Result<VirtualTModule, SpecFileError> {
    let file: QuantizationFile = serde_json::from_str(text)?;
    Ok(file.module.to_module()?)
}
