//! Integer and rational linear algebra on small dense vectors.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

pub type IntVec = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntLinError {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(IntVec),
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[i64], y: &[Rational]) -> Rational {
    a.iter()
        .zip(y)
        .map(|(x, v)| Rational::from_integer(*x as i128) * *v)
        .sum()
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| num_integer::gcd(g, *x))
}

pub fn is_primitive(v: &[i64]) -> bool {
    content(v) == 1
}

pub fn primitive(v: &[i64]) -> Result<IntVec, IntLinError> {
    let g = content(v);
    if g == 0 {
        return Err(IntLinError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

/// Sign-normalized primitive direction: first nonzero entry positive.
pub fn positive_direction(v: &[i64]) -> Result<IntVec, IntLinError> {
    let p = primitive(v)?;
    let lead = p.iter().find(|x| **x != 0).copied().unwrap_or(1);
    Ok(if lead < 0 { neg(&p) } else { p })
}

pub fn neg(v: &[i64]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[i64], k: i64) -> IntVec {
    v.iter().map(|x| x * k).collect()
}

pub fn axpy(base: &[i64], k: i64, dir: &[i64]) -> IntVec {
    base.iter().zip(dir).map(|(b, u)| b + k * u).collect()
}

pub fn linf(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(*x as i128)).collect()
}

/// Integer vector from rationals, if every entry is integral.
pub fn to_integer(v: &[Rational]) -> Option<IntVec> {
    v.iter().map(crate::rational::to_i64).collect()
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Column-style Hermite reduction of an integer matrix `rows` (r x d).
///
/// Returns a unimodular `u` (d x d, stored by columns as `u[col][row]`)
/// and the rank `p` such that `rows * u` has zero columns `p..d` and a
/// lower echelon block in columns `0..p`.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub reduced: Vec<IntVec>,
    pub transform: Vec<IntVec>,
    pub rank: usize,
    /// Row index carrying the pivot of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

pub fn column_echelon(rows: &[IntVec], d: usize) -> ColumnEchelon {
    let mut a: Vec<IntVec> = rows.to_vec();
    // transform columns
    let mut u: Vec<IntVec> = (0..d)
        .map(|c| (0..d).map(|r| i64::from(r == c)).collect())
        .collect();
    let mut p = 0usize;
    let mut pivot_rows = Vec::new();
    for i in 0..a.len() {
        if p == d {
            break;
        }
        for q in (p + 1)..d {
            let (x_p, x_q) = (a[i][p], a[i][q]);
            if x_q == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x_p, x_q);
            let (ap, aq) = (x_p / g, x_q / g);
            // col_p <- s col_p + t col_q ; col_q <- -aq col_p + ap col_q
            for row in a.iter_mut() {
                let (cp, cq) = (row[p], row[q]);
                row[p] = s * cp + t * cq;
                row[q] = -aq * cp + ap * cq;
            }
            let (up, uq) = (u[p].clone(), u[q].clone());
            u[p] = up.iter().zip(&uq).map(|(x, y)| s * x + t * y).collect();
            u[q] = up.iter().zip(&uq).map(|(x, y)| -aq * x + ap * y).collect();
        }
        if a[i][p] != 0 {
            if a[i][p] < 0 {
                for row in a.iter_mut() {
                    row[p] = -row[p];
                }
                u[p] = neg(&u[p]);
            }
            pivot_rows.push(i);
            p += 1;
        }
    }
    ColumnEchelon {
        reduced: a,
        transform: u,
        rank: p,
        pivot_rows,
    }
}

/// Basis of the integer kernel `{y in Z^d : rows * y = 0}`.
pub fn integer_kernel(rows: &[IntVec], d: usize) -> Vec<IntVec> {
    let ech = column_echelon(rows, d);
    ech.transform[ech.rank..].to_vec()
}

/// An integer solution of `rows * y = rhs`, if one exists.
pub fn integer_solution(rows: &[IntVec], rhs: &[Rational], d: usize) -> Option<IntVec> {
    let ech = column_echelon(rows, d);
    let mut z = vec![Rational::zero(); d];
    for (col, &row) in ech.pivot_rows.iter().enumerate() {
        let mut acc = rhs[row];
        for (c, zc) in z.iter().enumerate().take(col) {
            acc -= Rational::from_integer(ech.reduced[row][c] as i128) * zc;
        }
        let v = acc / Rational::from_integer(ech.reduced[row][col] as i128);
        if !v.is_integer() {
            return None;
        }
        z[col] = v;
    }
    let zi = to_integer(&z)?;
    let mut y = vec![0i64; d];
    for (col, zc) in zi.iter().enumerate() {
        for (r, yr) in y.iter_mut().enumerate() {
            *yr += ech.transform[col][r] * zc;
        }
    }
    // dependent rows must be consistent too
    let consistent = rows
        .iter()
        .zip(rhs)
        .all(|(row, b)| Rational::from_integer(dot(row, &y) as i128) == *b);
    consistent.then_some(y)
}

/// Deterministic integral covector `g` with `g(u) = 1`, reduced to small
/// L1 norm over the solution coset.
pub fn transverse_functional(u: &[i64]) -> Result<IntVec, IntLinError> {
    if u.iter().all(|x| *x == 0) {
        return Err(IntLinError::ZeroVector);
    }
    if !is_primitive(u) {
        return Err(IntLinError::NotPrimitive(u.to_vec()));
    }
    let d = u.len();
    let ech = column_echelon(&[u.to_vec()], d);
    let mut g = ech.transform[0].clone();
    debug_assert_eq!(dot(&g, u), 1);
    let kernel = &ech.transform[1..];
    loop {
        let mut improved = false;
        for k in kernel {
            for s in [1i64, -1] {
                let cand = axpy(&g, s, k);
                if l1(&cand) < l1(&g) {
                    g = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok(g)
}

/// Unique solution of a square rational system, if nonsingular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

pub fn determinant(a: &[IntVec]) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().map(|r| to_rational(r)).collect();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|r| !m[*r][col].is_zero()) else {
            return 0;
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= m[col][col];
        for r in (col + 1)..n {
            let f = m[r][col] / m[col][col];
            let pivot_row = m[col].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                *x -= f * p;
            }
        }
    }
    crate::rational::to_i64(&det).expect("integer determinant")
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|i| !m[*i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in (r + 1)..m.len() {
            let f = m[i][c] / m[r][c];
            let pivot_row = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                *x -= f * p;
            }
        }
        r += 1;
    }
    r
}

/// Least-squares-free test: is `v` a rational multiple of `u`? Returns the multiple.
pub fn rational_multiple(v: &[i64], u: &[i64]) -> Option<Rational> {
    let k = u.iter().position(|x| *x != 0)?;
    let s = Rational::new(v[k] as i128, u[k] as i128);
    v.iter()
        .zip(u)
        .all(|(a, b)| Rational::from_integer(*a as i128) == s * Rational::from_integer(*b as i128))
        .then_some(s)
}

pub fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[4, -6]).unwrap(), vec![2, -3]);
        assert_eq!(primitive(&[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(primitive(&[0, 0, 5]).unwrap(), vec![0, 0, 1]);
        assert_eq!(primitive(&[0, 0]), Err(IntLinError::ZeroVector));
    }

    #[test]
    fn transverse_examples() {
        assert_eq!(transverse_functional(&[1]).unwrap(), vec![1]);
        assert_eq!(transverse_functional(&[2, -3]).unwrap(), vec![-1, -1]);
        assert_eq!(transverse_functional(&[0, 1]).unwrap(), vec![0, 1]);
        assert!(matches!(
            transverse_functional(&[2, 4]),
            Err(IntLinError::NotPrimitive(_))
        ));
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, num_integer::gcd(a, b));
            }
        }
    }

    #[test]
    fn kernel_and_solution() {
        let rows = vec![vec![1, 1, 1]];
        let k = integer_kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(&rows[0], v), 0);
        }
        // the kernel lattice has index one: together with a transverse vector it spans Z^3
        let mut basis = k.clone();
        basis.push(vec![1, 0, 0]);
        assert_eq!(determinant(&basis).abs(), 1);

        let y = integer_solution(&rows, &[rat(5)], 3).unwrap();
        assert_eq!(dot(&rows[0], &y), 5);
        assert!(integer_solution(&[vec![2, 4]], &[rat(1)], 2).is_none());
        assert!(integer_solution(&[vec![1, 0], vec![2, 0]], &[rat(1), rat(3)], 2).is_none());
    }

    #[test]
    fn solve_and_det() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        let x = solve_square(&a, &[rat(5), rat(6)]).unwrap();
        assert_eq!(x, vec![rat(-4), crate::rational::frac(9, 2)]);
        assert_eq!(determinant(&[vec![0, 1], vec![-2, -1]]), 2);
        assert!(solve_square(&[vec![rat(1), rat(1)], vec![rat(2), rat(2)]], &[rat(0), rat(0)]).is_none());
    }
}
