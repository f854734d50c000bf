//! Built-in example families.

use crate::lattice::polytope::HPolytope;
use crate::model::{ManifoldSpec, Piece, ZComponent};
use crate::rational::{rat, Rational};

fn default_coeffs(m: usize) -> Vec<Rational> {
    let mut c = vec![rat(0); m];
    c[m - 1] = rat(1);
    c
}

fn check_m(m: usize) -> Result<(), String> {
    if m == 0 {
        Err("m must be at least 1".into())
    } else {
        Ok(())
    }
}

/// The sphere with `Z` the equator: two caps meeting at the leaf `{0}`.
pub fn s2(m: usize, coeffs: Option<Vec<Rational>>) -> Result<ManifoldSpec, String> {
    check_m(m)?;
    let c = coeffs.unwrap_or_else(|| default_coeffs(m));
    if c.len() != m {
        return Err(format!("expected {m} coefficients, got {}", c.len()));
    }
    Ok(ManifoldSpec {
        m,
        d: 1,
        pieces: vec![
            Piece { id: "N".into(), regions: vec![] },
            Piece { id: "S".into(), regions: vec![] },
        ],
        z_components: vec![ZComponent {
            id: "Z".into(),
            modular_ratios: c,
            a_hat: vec![1],
            leaf_polytope: HPolytope::point(&[0]),
            side_plus_piece: "N".into(),
            side_minus_piece: "S".into(),
            threshold_override: None,
        }],
        base_piece: "N".into(),
    })
}

/// The sphere above times a standard sphere with moment segment `[0, 1]`.
pub fn s2xs2(m: usize) -> Result<ManifoldSpec, String> {
    check_m(m)?;
    Ok(ManifoldSpec {
        m,
        d: 2,
        pieces: vec![
            Piece { id: "N".into(), regions: vec![] },
            Piece { id: "S".into(), regions: vec![] },
        ],
        z_components: vec![ZComponent {
            id: "Z".into(),
            modular_ratios: default_coeffs(m),
            a_hat: vec![1, 0],
            leaf_polytope: HPolytope::cuboid(&[0, 0], &[0, 1]),
            side_plus_piece: "N".into(),
            side_minus_piece: "S".into(),
            threshold_override: None,
        }],
        base_piece: "N".into(),
    })
}

/// `k` pieces joined by `k - 1` hypersurfaces along a line.
///
/// Odd `m`: the ends of consecutive hypersurfaces escape in alternating
/// directions around the middle regions `[0, 2]`. Even `m`: piece `j`
/// holds `[4j, 4j + 2]` and hypersurface `j` sits at `4j + 3`.
pub fn chain(k: usize, m: usize) -> Result<ManifoldSpec, String> {
    check_m(m)?;
    if k == 0 {
        return Err("chain needs at least one piece".into());
    }
    let odd = m % 2 == 1;
    let pieces = (0..k)
        .map(|j| Piece {
            id: format!("P{}", j + 1),
            regions: if odd {
                if j > 0 && j + 1 < k {
                    vec![HPolytope::cuboid(&[0], &[2])]
                } else {
                    vec![]
                }
            } else {
                let lo = 4 * j as i64;
                vec![HPolytope::cuboid(&[lo], &[lo + 2])]
            },
        })
        .collect();
    let z_components = (0..k.saturating_sub(1))
        .map(|j| {
            let (leaf, lead, plus, minus) = if odd {
                // escape direction -sign(c_m): down for even j, up for odd j
                let down = j % 2 == 0;
                (
                    if down { -1 } else { 3 },
                    if down { 1 } else { -1 },
                    j,
                    j + 1,
                )
            } else {
                (4 * j as i64 + 3, 1, j + 1, j)
            };
            let mut c = vec![rat(0); m];
            c[m - 1] = rat(lead);
            ZComponent {
                id: format!("Z{}", j + 1),
                modular_ratios: c,
                a_hat: vec![1],
                leaf_polytope: HPolytope::point(&[leaf]),
                side_plus_piece: format!("P{}", plus + 1),
                side_minus_piece: format!("P{}", minus + 1),
                threshold_override: None,
            }
        })
        .collect();
    Ok(ManifoldSpec {
        m,
        d: 1,
        pieces,
        z_components,
        base_piece: "P1".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_spec;

    #[test]
    fn presets_validate() {
        for m in 1..=5 {
            for spec in [s2(m, None).unwrap(), s2xs2(m).unwrap(), chain(3, m).unwrap(), chain(5, m).unwrap()] {
                let r = validate_spec(&spec);
                assert!(r.is_empty(), "m={m}: {r}");
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(s2(0, None).is_err());
        assert!(s2(2, Some(vec![rat(1)])).is_err());
        assert!(chain(0, 2).is_err());
    }
}
