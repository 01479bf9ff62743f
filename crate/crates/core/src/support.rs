//! Supports of power series: finite sets of exponent vectors.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::limits;
use crate::rational::Rational;
use crate::subset::CoordinateSubset;

/// Exponent vectors of the monomials of a power series, together with the
/// variable names. Coefficients are not stored; only nonzero-ness matters for
/// Newton polyhedra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SupportJson")]
pub struct SupportSet {
    variables: Vec<String>,
    #[serde(rename = "monomials")]
    points: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct SupportJson {
    variables: Vec<String>,
    monomials: Vec<Vec<u32>>,
}

impl TryFrom<SupportJson> for SupportSet {
    type Error = Error;

    fn try_from(raw: SupportJson) -> Result<Self> {
        SupportSet::new(raw.variables, raw.monomials)
    }
}

/// `x, y, z, w` for up to four variables, `z1, ..., zn` beyond.
pub fn default_variables(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("z{i}")).collect()
    }
}

impl SupportSet {
    pub fn new(variables: Vec<String>, points: Vec<Vec<u32>>) -> Result<Self> {
        let n = variables.len();
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        limits::check_dimension(n)?;
        limits::check_support_size(points.len())?;
        let mut seen = BTreeSet::new();
        for p in &points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Ok(SupportSet {
            variables,
            points: seen.into_iter().collect(),
        })
    }

    pub fn from_exponents(variables: &[&str], points: &[&[u32]]) -> Result<Self> {
        SupportSet::new(
            variables.iter().map(|s| s.to_string()).collect(),
            points.iter().map(|p| p.to_vec()).collect(),
        )
    }

    /// Support with default variable names.
    pub fn from_points(n: usize, points: Vec<Vec<u32>>) -> Result<Self> {
        SupportSet::new(default_variables(n), points)
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Exponent vectors in increasing lexicographic order.
    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, exponent: &[u32]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(exponent)).is_ok()
    }

    pub fn to_points(&self) -> Vec<Point> {
        self.points.iter().map(|p| exponent_point(p)).collect()
    }

    pub fn contains_origin(&self) -> bool {
        self.points.iter().any(|p| p.iter().all(|&c| c == 0))
    }

    pub fn max_coordinate(&self) -> u32 {
        self.points.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn max_coordinate_sum(&self) -> u64 {
        self.points
            .iter()
            .map(|p| p.iter().map(|&c| u64::from(c)).sum())
            .max()
            .unwrap_or(0)
    }

    /// A copy with one point removed.
    pub fn without(&self, exponent: &[u32]) -> Result<SupportSet> {
        let points: Vec<Vec<u32>> = self
            .points
            .iter()
            .filter(|p| p.as_slice() != exponent)
            .cloned()
            .collect();
        SupportSet::new(self.variables.clone(), points)
    }

    /// A copy with extra points (duplicates are ignored).
    pub fn with_points(&self, extra: impl IntoIterator<Item = Vec<u32>>) -> Result<SupportSet> {
        let mut set: BTreeSet<Vec<u32>> = self.points.iter().cloned().collect();
        set.extend(extra);
        SupportSet::new(self.variables.clone(), set.into_iter().collect())
    }
}

pub(crate) fn exponent_point(exponent: &[u32]) -> Point {
    Point(
        exponent
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect(),
    )
}

/// Result of the convenience test; `missing` lists 1-based axes without a
/// support point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convenience {
    pub convenient: bool,
    pub missing: Vec<usize>,
}

/// Whether every coordinate axis carries a support point `c * e_i` with
/// `c > 0`.
pub fn is_convenient(support: &SupportSet) -> Convenience {
    let missing: Vec<usize> = (0..support.n())
        .filter(|&i| {
            !support.exponents().iter().any(|p| {
                p[i] > 0 && p.iter().enumerate().all(|(j, &c)| j == i || c == 0)
            })
        })
        .map(|i| i + 1)
        .collect();
    Convenience {
        convenient: missing.is_empty(),
        missing,
    }
}

/// `supp(f + z_1^m + ... + z_n^m)`.
pub fn standard_modification(support: &SupportSet, m: u64) -> Result<SupportSet> {
    let max = u64::from(support.max_coordinate());
    if m <= max {
        return Err(Error::ModificationTooSmall {
            m,
            max_coordinate: max,
        });
    }
    let m = u32::try_from(m).map_err(|_| Error::ModificationTooSmall {
        m,
        max_coordinate: max,
    })?;
    let n = support.n();
    support.with_points((0..n).map(|i| {
        let mut e = vec![0; n];
        e[i] = m;
        e
    }))
}

/// Whether the hyperplane through `a_1 e_1, ..., a_n e_n` lies on or below
/// every support point, i.e. `sum_i lambda_i / a_i >= 1` for all `lambda`.
pub fn simplex_below_diagram(support: &SupportSet, a: &[Rational]) -> Result<bool> {
    points_above_hyperplane(&support.to_points(), a)
}

pub(crate) fn points_above_hyperplane(points: &[Point], a: &[Rational]) -> Result<bool> {
    check_intercepts(points.first().map_or(a.len(), Point::dim), a)?;
    Ok(points.iter().all(|p| {
        let s: Rational = p.coords().iter().zip(a).map(|(x, ai)| x / ai).sum();
        s >= Rational::one()
    }))
}

pub(crate) fn check_intercepts(n: usize, a: &[Rational]) -> Result<()> {
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.len(),
        });
    }
    if a.iter().any(|x| *x < Rational::one()) {
        return Err(Error::InterceptBelowOne);
    }
    Ok(())
}

/// Points supported in `R^I`, with coordinates re-indexed to `I`. `None` when
/// no point survives.
pub fn restrict_support(support: &SupportSet, subset: CoordinateSubset) -> Option<SupportSet> {
    let points: Vec<Vec<u32>> = support
        .exponents()
        .iter()
        .filter(|p| {
            p.iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || subset.contains(i))
        })
        .map(|p| subset.iter().map(|i| p[i]).collect())
        .collect();
    if points.is_empty() {
        return None;
    }
    let variables = subset
        .iter()
        .map(|i| support.variables()[i].clone())
        .collect();
    SupportSet::new(variables, points).ok()
}

/// Generator points of the axis simplex `|O, a_1 e_1, ..., a_n e_n|`.
pub(crate) fn axis_points(a: &[Rational]) -> Vec<Point> {
    let n = a.len();
    (0..n)
        .map(|i| {
            let mut c = vec![Rational::zero(); n];
            c[i] = a[i].clone();
            Point(c)
        })
        .collect()
}
