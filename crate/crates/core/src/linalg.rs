//! Dense exact linear algebra over the rationals.

#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Determinant of a square matrix by rational Gaussian elimination.
///
/// The empty matrix has determinant one.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    debug_assert!(matrix.iter().all(|row| row.len() == n), "square matrix");
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Reduced row echelon form; returns the pivot columns.
pub fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

pub fn difference(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dimension of the affine hull of a point set (-1 for the empty set is
/// reported as `None`).
pub fn affine_dimension(points: &[&[Rational]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest.iter().map(|p| difference(p, first)).collect();
    Some(rank(&diffs))
}

/// Coordinates onto which the projection of the affine hull of `points` is
/// injective. The returned list has length equal to the affine dimension.
pub fn hull_coordinates(points: &[&[Rational]]) -> Vec<usize> {
    let Some((first, rest)) = points.split_first() else {
        return Vec::new();
    };
    let mut diffs: Vec<Vec<Rational>> = rest.iter().map(|p| difference(p, first)).collect();
    row_reduce(&mut diffs)
}

/// Normal vector of the hyperplane through `d` points of `R^d`, by cofactor
/// expansion. `None` when the points are affinely dependent.
pub fn hyperplane_normal(points: &[&[Rational]]) -> Option<Vec<Rational>> {
    let d = points.len();
    debug_assert!(points.iter().all(|p| p.len() == d));
    let base = points[0];
    let edges: Vec<Vec<Rational>> = points[1..].iter().map(|p| difference(p, base)).collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<Rational>> = edges
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cof = determinant(&minor);
        normal.push(if j % 2 == 0 { cof } else { -cof });
    }
    if normal.iter().all(Zero::is_zero) {
        None
    } else {
        Some(normal)
    }
}

/// Unique solution of a square system, if it exists.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}
