//! Test-side reference computations. Nothing here calls into the geometry
//! of the library: determinants, face enumeration, composition sums and
//! symmetric functions are recomputed from scratch.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use newton_mu::{NewtonRegion, Point, Simplex, SupportSet};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let k = m.len();
    let mut sign = Q::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        for row in col + 1..k {
            let f = &m[row][col] / &m[col][col];
            for c in col..k {
                let sub = &f * &m[col][c];
                m[row][c] -= sub;
            }
        }
    }
    (0..k).fold(sign, |acc, i| acc * &m[i][i])
}

fn factorial(k: usize) -> Q {
    (1..=k).fold(Q::one(), |acc, i| acc * q(i as i64))
}

fn coords(p: &Point) -> Vec<Q> {
    p.coords().to_vec()
}

/// `|I|! V_{|I|}(X^I)` for every coordinate subset `I` (as a bitmask), from
/// the distinct `|I|`-dimensional faces of the simplices lying in `R^I`.
pub fn factorial_volumes(n: usize, simplices: &[Simplex]) -> Vec<Q> {
    let mut out = vec![Q::zero(); 1 << n];
    for mask in 0usize..1 << n {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut faces: BTreeSet<Vec<Vec<Q>>> = BTreeSet::new();
        for s in simplices {
            let mut face: Vec<Vec<Q>> = s
                .vertices()
                .iter()
                .map(coords)
                .filter(|c| (0..n).all(|i| mask >> i & 1 == 1 || c[i].is_zero()))
                .map(|c| idx.iter().map(|&i| c[i].clone()).collect())
                .collect();
            if face.len() == idx.len() + 1 {
                face.sort();
                faces.insert(face);
            }
        }
        for face in faces {
            let rows: Vec<Vec<Q>> = face[1..]
                .iter()
                .map(|v| v.iter().zip(&face[0]).map(|(a, b)| a - b).collect())
                .collect();
            out[mask] += det(rows).abs();
        }
    }
    out
}

fn sign(k: usize) -> Q {
    if k.is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

pub fn contains_origin(simplices: &[Simplex]) -> bool {
    simplices.iter().any(|s| s.vertices().iter().any(|v| v.coords().iter().all(Zero::is_zero)))
}

/// `sum_I (-1)^{n-|I|} |I|! V(X^I)`, the empty set contributing 1 when `O`
/// is a vertex.
pub fn nu(n: usize, simplices: &[Simplex]) -> Q {
    let vols = factorial_volumes(n, simplices);
    (0..1usize << n)
        .map(|mask| sign(n - mask.count_ones() as usize) * &vols[mask])
        .sum()
}

pub fn region_nu(region: &NewtonRegion) -> Q {
    nu(region.n(), region.simplices())
}

/// `F^l_k(d)` by explicit enumeration of compositions.
pub fn f_weight(l: usize, d: &[u64]) -> BigInt {
    fn rec(rest: usize, d: &[u64], shift: u32) -> BigInt {
        match d.split_first() {
            None => {
                if rest == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Some((&first, tail)) => (0..=rest)
                .map(|i| BigInt::from(first).pow(i as u32 + shift) * rec(rest - i, tail, shift))
                .sum(),
        }
    }
    if l < d.len() {
        return BigInt::zero();
    }
    rec(l - d.len(), d, 1)
}

/// `nu^r_d` from the definition.
pub fn r_nu(n: usize, simplices: &[Simplex], d: &[u64]) -> Q {
    let r = d.len();
    let vols = factorial_volumes(n, simplices);
    let mut total: Q = (0..1usize << n)
        .filter(|m| m.count_ones() as usize >= r)
        .map(|mask| {
            let s = mask.count_ones() as usize;
            sign(n - s) * Q::from_integer(f_weight(s, d)) * &vols[mask]
        })
        .sum();
    if contains_origin(simplices) {
        total += sign(n - r + 1);
    }
    total
}

/// `sigma_s(a)` read off the expansion of `prod (1 + a_i t)`.
pub fn sigma(s: usize, a: &[Q]) -> Q {
    let mut poly = vec![Q::one()];
    for x in a {
        let mut next = vec![Q::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * x;
        }
        poly = next;
    }
    poly.get(s).cloned().unwrap_or_else(Q::zero)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Coordinate subsets (bitmasks) `J` for which exactly `|J| + 1` vertices of
/// `s` lie in `R^J`.
pub fn full_supporting(n: usize, s: &Simplex) -> Vec<usize> {
    (0..1usize << n)
        .filter(|&mask| {
            let inside = s
                .vertices()
                .iter()
                .filter(|v| (0..n).all(|i| mask >> i & 1 == 1 || v.coords()[i].is_zero()))
                .count();
            inside == mask.count_ones() as usize + 1
        })
        .collect()
}

pub fn minimal_full_supporting(n: usize, s: &Simplex) -> usize {
    full_supporting(n, s).into_iter().fold((1 << n) - 1, |a, b| a & b)
}

/// A support with an axis point on every axis (exponent `1..=max_axis`) and
/// up to `extra` further random points.
pub fn random_convenient_support(rng: &mut ChaCha8Rng, n: usize, max_axis: u32, extra: usize) -> SupportSet {
    let mut points: BTreeSet<Vec<u32>> = BTreeSet::new();
    for i in 0..n {
        let mut p = vec![0; n];
        p[i] = rng.gen_range(2..=max_axis);
        points.insert(p);
    }
    for _ in 0..rng.gen_range(0..=extra) {
        let p: Vec<u32> = (0..n).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(1..max_axis) }).collect();
        if p.iter().any(|&c| c > 0) {
            points.insert(p);
        }
    }
    SupportSet::from_points(n, points.into_iter().collect()).unwrap()
}

/// A random full-dimensional integer simplex, coordinates in `0..=max`,
/// without the origin as a vertex; zero coordinates are frequent so that
/// small full-supporting subspaces occur.
pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize, max: i64) -> Simplex {
    loop {
        let vertices: Vec<Point> = (0..=n)
            .map(|_| {
                let c: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.45) { 0 } else { rng.gen_range(1..=max) }).collect();
                Point::from_ints(&c)
            })
            .collect();
        if vertices.iter().any(|v| v.coords().iter().all(Zero::is_zero)) {
            continue;
        }
        if let Ok(s) = Simplex::new(vertices) {
            if s.vertices().len() == n + 1 {
                return s;
            }
        }
    }
}

pub fn axis_points(a: &[Q]) -> Vec<Point> {
    let n = a.len();
    let mut out = vec![Point::new(vec![Q::zero(); n]).unwrap()];
    for (i, x) in a.iter().enumerate() {
        let mut c = vec![Q::zero(); n];
        c[i] = x.clone();
        out.push(Point::new(c).unwrap());
    }
    out
}
