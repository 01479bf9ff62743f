//! Points in the closed positive orthant and simplices spanned by them.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, determinant, difference};
use crate::rational::{self, Rational};
use crate::subset::CoordinateSubset;

/// A point of `(R_{>=0})^n` with rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(#[serde(with = "rational::vec_as_strings")] pub(crate) Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().any(Signed::is_negative) {
            return Err(Error::NegativeCoordinate);
        }
        Ok(Point(coords))
    }

    /// Panics on negative input; meant for literals.
    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| rational::int(c)).collect())
            .expect("nonnegative coordinates")
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, axis: usize) -> Self {
        let mut p = Point::origin(n);
        p.0[axis] = rational::int(1);
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> CoordinateSubset {
        CoordinateSubset::from_indices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i),
        )
    }

    pub fn lies_in(&self, subset: CoordinateSubset) -> bool {
        self.support().is_subset_of(subset)
    }

    /// Keeps only the coordinates listed in `subset`, in increasing order.
    pub fn restrict_coords(&self, subset: CoordinateSubset) -> Point {
        Point(subset.iter().map(|i| self.0[i].clone()).collect())
    }

    /// Sets the coordinates in `subset` to zero.
    pub fn zero_out(&self, subset: CoordinateSubset) -> Point {
        let mut p = self.clone();
        for i in subset.iter() {
            p.0[i] = Rational::zero();
        }
        p
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(rational::is_integer)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rational::format_rational).collect()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Affinely independent vertices, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::Degenerate);
        };
        let n = first.dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        vertices.sort();
        vertices.dedup();
        let refs: Vec<&[Rational]> = vertices.iter().map(Point::coords).collect();
        if affine_dimension(&refs) != Some(vertices.len() - 1) {
            return Err(Error::Degenerate);
        }
        Ok(Simplex { vertices })
    }

    /// Caller guarantees sortedness and independence.
    pub(crate) fn from_sorted(vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn contains_origin(&self) -> bool {
        self.vertices.iter().any(Point::is_origin)
    }

    /// The face spanned by the vertices lying in `R^I`; this is exactly the
    /// intersection of the simplex with `R^I`.
    pub fn face_in(&self, subset: CoordinateSubset) -> Vec<Point> {
        self.vertices
            .iter()
            .filter(|v| v.lies_in(subset))
            .cloned()
            .collect()
    }

    /// `k! * V_k` for a full-dimensional simplex.
    pub fn normalized_volume(&self) -> Rational {
        normalized_volume(&self.vertices)
    }
}

/// `|det|` of the edge matrix of `d + 1` points of `R^d`.
pub(crate) fn normalized_volume(vertices: &[Point]) -> Rational {
    let base = vertices[0].coords();
    let edges: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|v| difference(v.coords(), base))
        .collect();
    determinant(&edges).abs()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeResult {
    pub volume: Rational,
    pub degenerate: bool,
}

/// `k`-dimensional volume of the simplex spanned by `k + 1` points.
///
/// For `k < n` the simplex must lie in a `k`-dimensional coordinate subspace;
/// its volume is then the full-dimensional volume after dropping the zero
/// coordinates.
pub fn simplex_volume(vertices: &[Point]) -> Result<VolumeResult> {
    let Some(first) = vertices.first() else {
        return Err(Error::Degenerate);
    };
    let n = first.dim();
    let k = vertices.len() - 1;
    if k > n {
        return Ok(VolumeResult {
            volume: Rational::zero(),
            degenerate: true,
        });
    }
    let refs: Vec<&[Rational]> = vertices.iter().map(Point::coords).collect();
    if affine_dimension(&refs) != Some(k) {
        return Ok(VolumeResult {
            volume: Rational::zero(),
            degenerate: true,
        });
    }
    let support = vertices
        .iter()
        .fold(CoordinateSubset::empty(), |acc, v| acc.union(v.support()));
    let reduced: Vec<Point> = if k == n {
        vertices.to_vec()
    } else if support.len() == k {
        vertices.iter().map(|v| v.restrict_coords(support)).collect()
    } else {
        return Err(Error::NotCoordinateAligned);
    };
    let volume = normalized_volume(&reduced) / Rational::from_integer(rational::factorial(k));
    Ok(VolumeResult {
        volume,
        degenerate: false,
    })
}
