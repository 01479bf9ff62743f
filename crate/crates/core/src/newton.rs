//! The Newton number `nu(X)` and its factorisation through the minimal
//! full-supporting coordinate subspace.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{normalized_volume, Point, Simplex};
use crate::hull::interiors_intersect;
use crate::rational::{self, Rational};
use crate::region::{project_region, NewtonRegion};
use crate::subset::CoordinateSubset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetTerm {
    #[serde(rename = "I")]
    pub subset: CoordinateSubset,
    /// `|I|! V_{|I|}(X^I)`.
    #[serde(with = "rational::as_string")]
    pub factorial_volume: Rational,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonReport {
    pub n: usize,
    pub terms: Vec<SubsetTerm>,
    #[serde(with = "rational::as_string")]
    pub total: Rational,
}

/// `nu(X) = sum over I of (-1)^{n-|I|} |I|! V_{|I|}(X^I)`, with the empty
/// set contributing 1 exactly when `O` lies in `X`.
pub fn newton_number(region: &NewtonRegion) -> Result<NewtonReport> {
    let n = region.n();
    let volumes = factorial_volumes(region)?;
    let mut total = Rational::zero();
    let mut terms = Vec::with_capacity(volumes.len());
    for subset in CoordinateSubset::all(n) {
        let sign = alternating_sign(n - subset.len());
        let v = volumes[subset.mask() as usize].clone();
        if sign > 0 {
            total += &v;
        } else {
            total -= &v;
        }
        terms.push(SubsetTerm {
            subset,
            factorial_volume: v,
            sign,
        });
    }
    terms.sort_by_key(|a| a.subset);
    Ok(NewtonReport { n, terms, total })
}

pub(crate) fn alternating_sign(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn nu(region: &NewtonRegion) -> Result<Rational> {
    Ok(newton_number(region)?.total)
}

/// `|I|! V_{|I|}(X^I)` for every `I`, indexed by the subset mask.
///
/// `X^I` is covered by the faces `Delta_t cap R^I`; only faces of full
/// dimension `|I|` carry volume, and in a face-to-face triangulation two
/// simplices sharing such a face list it identically, so deduplication
/// suffices. Explicit regions are checked for purity and overlap first.
pub(crate) fn factorial_volumes(region: &NewtonRegion) -> Result<Vec<Rational>> {
    let n = region.n();
    if !region.is_trusted() && !region.is_empty() && !region.is_pure() {
        return Err(Error::NotFullDimensional(n));
    }
    let mut out = vec![Rational::zero(); 1usize << n];
    for subset in CoordinateSubset::all(n) {
        let faces = full_faces(region.simplices(), subset);
        if !region.is_trusted() {
            check_disjoint(&faces)?;
        }
        out[subset.mask() as usize] = faces
            .iter()
            .map(|f| normalized_volume(f))
            .fold(Rational::zero(), |acc, v| acc + v);
    }
    Ok(out)
}

/// The distinct `|I|`-dimensional faces `Delta_t cap R^I`, in the
/// coordinates of `I`.
fn full_faces(simplices: &[Simplex], subset: CoordinateSubset) -> Vec<Vec<Point>> {
    let k = subset.len();
    let faces: BTreeSet<Vec<Point>> = simplices
        .iter()
        .map(|s| s.face_in(subset))
        .filter(|f| f.len() == k + 1)
        .map(|f| f.iter().map(|v| v.restrict_coords(subset)).collect())
        .collect();
    faces.into_iter().collect()
}

fn check_disjoint(faces: &[Vec<Point>]) -> Result<()> {
    for (i, a) in faces.iter().enumerate() {
        let ra: Vec<&[Rational]> = a.iter().map(Point::coords).collect();
        if ra.first().is_some_and(|p| p.is_empty()) {
            continue;
        }
        for (j, b) in faces.iter().enumerate().skip(i + 1) {
            let rb: Vec<&[Rational]> = b.iter().map(Point::coords).collect();
            if interiors_intersect(&ra, &rb) {
                return Err(Error::OverlappingSimplices(i, j));
            }
        }
    }
    Ok(())
}

fn check_away_from_origin(simplex: &Simplex) -> Result<()> {
    if simplex.contains_origin() {
        return Err(Error::OriginInSimplex);
    }
    if simplex.dim() != simplex.ambient_dim() {
        return Err(Error::NotFullDimensional(simplex.ambient_dim()));
    }
    Ok(())
}

/// All `I` such that `R^I` holds exactly `|I| + 1` vertices of the
/// `n`-simplex, i.e. `dim X^I = |I|`. Sorted by size, then members.
pub fn full_supporting_subsets(simplex: &Simplex) -> Result<Vec<CoordinateSubset>> {
    check_away_from_origin(simplex)?;
    let n = simplex.ambient_dim();
    let mut out: Vec<CoordinateSubset> = CoordinateSubset::all(n)
        .filter(|&s| simplex.face_in(s).len() == s.len() + 1)
        .collect();
    out.sort();
    Ok(out)
}

/// The unique minimal full-supporting subspace: the intersection of all of
/// them.
pub fn minimal_full_supporting(simplex: &Simplex) -> Result<CoordinateSubset> {
    let all = full_supporting_subsets(simplex)?;
    let n = simplex.ambient_dim();
    let minimal = all
        .iter()
        .fold(CoordinateSubset::full(n), |acc, &s| acc.intersection(s));
    debug_assert!(all.contains(&minimal));
    Ok(minimal)
}

/// The common minimal subspace `I` and face `Z^I` of a union of simplices
/// away from the origin.
pub(crate) fn common_minimal_face(simplices: &[Simplex]) -> Result<(CoordinateSubset, Vec<Point>)> {
    let first = simplices.first().ok_or(Error::Degenerate)?;
    let subset = minimal_full_supporting(first)?;
    let face = first.face_in(subset);
    for s in &simplices[1..] {
        let other = minimal_full_supporting(s)?;
        if other != subset {
            return Err(Error::MixedMinimalSubspace {
                expected: subset,
                found: other,
            });
        }
        if s.face_in(subset) != face {
            return Err(Error::MixedMinimalFace);
        }
    }
    Ok((subset, face))
}

/// `nu(Z) = |I|! V_{|I|}(Z^I) * nu(pi_I(Z))` for a union of `n`-simplices
/// avoiding the origin that share their minimal full-supporting subspace `I`
/// and the face `Z^I`.
///
/// When the projection collapses a simplex, or the projected simplices
/// overlap, the value falls back to the direct sum over subsets.
pub fn newton_number_factored(simplices: &[Simplex]) -> Result<Rational> {
    for s in simplices {
        check_away_from_origin(s)?;
    }
    let (subset, face) = common_minimal_face(simplices)?;
    let n = simplices[0].ambient_dim();
    let weight = face_weight(&face, subset);
    let union = NewtonRegion::from_simplices(n, simplices.to_vec())?;
    let (projected, dropped) = project_region(&union, subset);
    if dropped > 0 {
        return nu(&union);
    }
    match nu(&projected) {
        Ok(v) => Ok(weight * v),
        Err(Error::OverlappingSimplices(..)) => nu(&union),
        Err(e) => Err(e),
    }
}

/// `|I|! V_{|I|}` of a full face lying in `R^I`.
pub(crate) fn face_weight(face: &[Point], subset: CoordinateSubset) -> Rational {
    let local: Vec<Point> = face.iter().map(|v| v.restrict_coords(subset)).collect();
    normalized_volume(&local)
}
