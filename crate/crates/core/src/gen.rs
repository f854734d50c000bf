//! Seeded random specs and polytopes for property tests.

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::intlin::{self, IntVec};
use crate::lattice::polytope::{HPolytope, Halfspace};
use crate::lattice::prism::SplitFrame;
use crate::model::{validate_spec, ManifoldSpec, Piece, ZComponent};
use crate::rational::{frac, rat, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random primitive vector with entries in `[-r, r]`.
pub fn random_primitive(rng: &mut impl Rng, d: usize, r: i64) -> IntVec {
    loop {
        let v: IntVec = (0..d).map(|_| rng.gen_range(-r..=r)).collect();
        if intlin::is_primitive(&v) {
            return v;
        }
    }
}

/// Rows of a random unimodular matrix (a product of shears and swaps).
fn random_unimodular(rng: &mut impl Rng, d: usize) -> Vec<IntVec> {
    let mut rows: Vec<IntVec> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    if d < 2 {
        return rows;
    }
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.gen_range(-1..=1);
        let add = intlin::scale(&rows[j], k);
        rows[i] = intlin::add(&rows[i], &add);
    }
    rows.shuffle(rng);
    rows
}

/// Box `lo <= f_i(y) <= lo + size_i` in the coordinates `f_i`, or a
/// standard simplex in them.
fn frame_polytope(rng: &mut impl Rng, d: usize, coords: &[IntVec], lo: &[i64]) -> Vec<Halfspace> {
    let mut hs = Vec::new();
    let simplex = coords.len() >= 2 && rng.gen_bool(0.3);
    if simplex {
        let size = rng.gen_range(1..=2);
        let mut sum = vec![0; d];
        for (f, l) in coords.iter().zip(lo) {
            hs.push(Halfspace::closed(f.clone(), *l));
            sum = intlin::add(&sum, f);
        }
        let total: i64 = lo.iter().sum::<i64>() + size;
        hs.push(Halfspace::closed(intlin::neg(&sum), -total));
    } else {
        for (f, l) in coords.iter().zip(lo) {
            let size = rng.gen_range(0..=2);
            hs.push(Halfspace::closed(f.clone(), *l));
            hs.push(Halfspace::closed(intlin::neg(f), -(l + size)));
        }
    }
    hs
}

/// Regions stay inside `[-REACH, REACH]^d` so small windows see all of them.
const REACH: i64 = 12;

fn random_region(rng: &mut impl Rng, d: usize) -> HPolytope {
    let coords = random_unimodular(rng, d);
    let lo: IntVec = (0..d).map(|_| rng.gen_range(-6..=6)).collect();
    let mut hs = frame_polytope(rng, d, &coords, &lo);
    if rng.gen_bool(0.2) {
        // a strict facet just outside a closed one leaves the lattice points alone
        let h = hs[0].clone();
        hs.push(Halfspace::new(h.normal, h.bound - frac(1, 2), false));
    }
    HPolytope::new(d, hs).expect("well-formed region")
}

fn random_leaf(rng: &mut impl Rng, a_hat: &[i64]) -> HPolytope {
    let d = a_hat.len();
    let g = intlin::transverse_functional(a_hat).expect("primitive");
    let frame = SplitFrame::new(a_hat, &g).expect("transverse");
    let c = rng.gen_range(-3..=3);
    let mut hs = vec![Halfspace::closed(g.clone(), c), Halfspace::closed(intlin::neg(&g), -c)];
    let lo: IntVec = (0..d - 1).map(|_| rng.gen_range(-2..=1)).collect();
    hs.extend(frame_polytope(rng, d, &frame.coords, &lo));
    HPolytope::new(d, hs).expect("well-formed leaf")
}

fn random_ratios(rng: &mut impl Rng, m: usize) -> Vec<Rational> {
    let mut r: Vec<Rational> = (0..m - 1).map(|_| rat(rng.gen_range(-2..=2))).collect();
    let lead = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    r.push(rat(lead));
    r
}

fn attempt(rng: &mut impl Rng, m: usize) -> ManifoldSpec {
    let d = rng.gen_range(1..=3usize);
    let min_pieces = if m % 2 == 1 { 2 } else { 1 };
    let k = rng.gen_range(min_pieces..=4usize);
    let pieces: Vec<Piece> = (0..k)
        .map(|i| Piece {
            id: format!("P{i}"),
            regions: (0..rng.gen_range(0..=2))
                .map(|_| random_region(rng, d))
                .filter(|r| {
                    r.vertices()
                        .iter()
                        .all(|v| v.iter().all(|x| x.abs() <= Rational::from_integer(REACH as i128)))
                })
                .collect(),
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    if rng.gen_bool(0.3) {
        let a = rng.gen_range(0..k);
        let b = rng.gen_range(0..k);
        // odd order needs an even cycle, i.e. endpoints at odd distance
        if m % 2 == 0 || a.abs_diff(b) % 2 == 1 {
            edges.push((a, b));
        }
    }
    if edges.is_empty() {
        edges.push((0, 0));
    }
    let common = random_primitive(rng, d, 2);
    let z_components = edges
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let a_hat = if m % 2 == 0 {
                common.clone()
            } else {
                random_primitive(rng, d, 2)
            };
            let (plus, minus) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            ZComponent {
                id: format!("Z{i}"),
                modular_ratios: random_ratios(rng, m),
                leaf_polytope: random_leaf(rng, &a_hat),
                a_hat,
                side_plus_piece: format!("P{plus}"),
                side_minus_piece: format!("P{minus}"),
                threshold_override: rng.gen_bool(0.15).then(|| frac(1, rng.gen_range(1..=3))),
            }
        })
        .collect();
    ManifoldSpec {
        m,
        d,
        pieces,
        z_components,
        base_piece: "P0".into(),
    }
}

/// A valid spec of order `m`, deterministic in `seed`.
pub fn random_spec(seed: u64, m: usize) -> ManifoldSpec {
    assert!(m >= 1);
    let mut rng = rng(seed ^ ((m as u64) << 48));
    for _ in 0..1000 {
        let spec = attempt(&mut rng, m);
        if validate_spec(&spec).is_empty() {
            return spec;
        }
    }
    panic!("no valid spec found for seed {seed}");
}

/// A random compact polytope with at most `max_facets` facets; some
/// facets are strict and some bounds fractional.
pub fn random_polytope(rng: &mut impl Rng, d: usize, max_facets: usize) -> HPolytope {
    let lo: IntVec = (0..d).map(|_| rng.gen_range(-4..=2)).collect();
    let mut hs = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        let size = rng.gen_range(0..=5);
        hs.push(Halfspace::new(e.clone(), rat(lo[i] as i128), rng.gen_bool(0.8)));
        hs.push(Halfspace::new(intlin::neg(&e), rat(-(lo[i] + size) as i128), rng.gen_bool(0.8)));
    }
    let extra = rng.gen_range(0..=max_facets.saturating_sub(2 * d));
    for _ in 0..extra {
        let n: IntVec = loop {
            let v: IntVec = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            if v.iter().any(|x| *x != 0) {
                break v;
            }
        };
        let bound = frac(rng.gen_range(-12..=4), rng.gen_range(1..=3));
        hs.push(Halfspace::new(n, bound, rng.gen_bool(0.7)));
    }
    HPolytope::new(d, hs).expect("nonzero normals")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic() {
        assert_eq!(random_spec(7, 3), random_spec(7, 3));
        assert_eq!(random_spec(7, 2), random_spec(7, 2));
    }

    #[test]
    fn generated_specs_are_valid() {
        for seed in 0..10 {
            for m in 1..=4 {
                assert!(validate_spec(&random_spec(seed, m)).is_empty());
            }
        }
    }
}
