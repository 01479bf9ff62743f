//! Triangulating `closure(X \ Y)` and grouping its simplices by their
//! minimal full-supporting face.
//!
//! For regions that remember their generators the difference is built by
//! placing: start from the boundary triangulation of `Gamma(X)` and add the
//! vertices of `Gamma(Y)` one at a time. Each added point `A` is coned over
//! the boundary simplices it sees, and those cones are exactly the pieces cut
//! away from the region below the boundary. Only compact facets can be seen
//! from a point of the positive orthant, so all pieces are bounded.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::diagram_of_points;
use crate::error::{Error, Result};
use crate::geometry::{Point, Simplex};
use crate::linalg::{dot, hyperplane_normal};
use crate::newton::{common_minimal_face, newton_number_factored, nu};
use crate::rational::{self, Rational};
use crate::region::{boundary_triangulation, NewtonRegion, VertexOrder};
use crate::subset::CoordinateSubset;

/// One class `Z_t` of difference simplices sharing the minimal subspace
/// `minimal_i` and the face `face = Delta_t cap R^I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionPiece {
    pub piece_id: usize,
    #[serde(rename = "minimal_I")]
    pub minimal_i: CoordinateSubset,
    pub face: Vec<Point>,
    pub simplices: Vec<Simplex>,
    #[serde(with = "rational::as_string")]
    pub nu: Rational,
    #[serde(with = "rational::as_string")]
    pub nu_factored: Rational,
}

/// Splits `closure(outer \ inner)` into classes; the class Newton numbers
/// sum to `nu(outer) - nu(inner)`.
pub fn decompose_difference(outer: &NewtonRegion, inner: &NewtonRegion) -> Result<Vec<DecompositionPiece>> {
    if outer.n() != inner.n() {
        return Err(Error::DimensionMismatch {
            expected: outer.n(),
            found: inner.n(),
        });
    }
    let simplices = match (outer.source(), inner.source()) {
        (Some(x), Some(y)) => placing_difference(outer.n(), x, y)?,
        _ => listed_difference(outer, inner)?,
    };
    group_pieces(outer.n(), simplices)
}

fn listed_difference(outer: &NewtonRegion, inner: &NewtonRegion) -> Result<Vec<Simplex>> {
    let outer_set = outer.simplices();
    if inner.simplices().iter().any(|s| !outer_set.contains(s)) {
        return Err(Error::NotContained);
    }
    Ok(outer_set
        .iter()
        .filter(|s| !inner.simplices().contains(s))
        .cloned()
        .collect())
}

/// Simplices of `closure(Gamma_-(x) \ Gamma_-(y))` when
/// `Gamma_+(x) subset Gamma_+(y)`.
pub(crate) fn placing_difference(n: usize, x: &[Point], y: &[Point]) -> Result<Vec<Simplex>> {
    let inner = diagram_of_points(n, y);
    if x.iter().any(|p| !inner.polyhedron_contains(p)) {
        return Err(Error::NotContained);
    }
    let outer = diagram_of_points(n, x);
    let mut boundary = boundary_triangulation(&outer, VertexOrder::Lexicographic);
    let mut pieces = Vec::new();
    for a in &inner.vertices {
        pieces.extend(place(&mut boundary, a));
    }
    pieces.sort();
    Ok(pieces)
}

/// Adds `a` to the boundary triangulation and returns the cones over the
/// simplices it sees.
pub(crate) fn place(boundary: &mut Vec<Vec<Point>>, a: &Point) -> Vec<Simplex> {
    let (visible, kept): (Vec<Vec<Point>>, Vec<Vec<Point>>) =
        boundary.drain(..).partition(|s| sees(a, s));
    *boundary = kept;
    if visible.is_empty() {
        return Vec::new();
    }
    let mut ridges: BTreeMap<Vec<Point>, usize> = BTreeMap::new();
    for s in &visible {
        for skip in 0..s.len() {
            let ridge: Vec<Point> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            *ridges.entry(ridge).or_default() += 1;
        }
    }
    for (ridge, count) in ridges {
        if count != 1 || in_coordinate_hyperplane(a, &ridge) {
            continue;
        }
        let mut face = ridge;
        face.push(a.clone());
        face.sort();
        boundary.push(face);
    }
    boundary.sort();
    visible
        .into_iter()
        .map(|mut s| {
            s.push(a.clone());
            Simplex::new(s).expect("a point beyond a facet spans a simplex with it")
        })
        .collect()
}

/// Whether `a` lies strictly on the outer side of the hyperplane through the
/// boundary simplex `s`. Boundary simplices lie in compact facets, so the
/// inner normal can be taken with positive coordinate sum.
fn sees(a: &Point, s: &[Point]) -> bool {
    let coords: Vec<&[Rational]> = s.iter().map(Point::coords).collect();
    let mut normal = hyperplane_normal(&coords).expect("boundary simplices are nondegenerate");
    let sum: Rational = normal.iter().sum();
    if sum < Rational::from_integer(0.into()) {
        normal.iter_mut().for_each(|c| *c = -c.clone());
    }
    dot(&normal, a.coords()) < dot(&normal, coords[0])
}

fn in_coordinate_hyperplane(a: &Point, ridge: &[Point]) -> bool {
    let zero = Rational::from_integer(0.into());
    (0..a.dim()).any(|i| a.coords()[i] == zero && ridge.iter().all(|p| p.coords()[i] == zero))
}

fn group_pieces(n: usize, simplices: Vec<Simplex>) -> Result<Vec<DecompositionPiece>> {
    let mut groups: BTreeMap<(CoordinateSubset, Vec<Point>), Vec<Simplex>> = BTreeMap::new();
    for s in simplices {
        let (subset, face) = common_minimal_face(std::slice::from_ref(&s))?;
        groups.entry((subset, face)).or_default().push(s);
    }
    groups
        .into_iter()
        .enumerate()
        .map(|(piece_id, ((minimal_i, face), simplices))| {
            let region = NewtonRegion::trusted(n, simplices.clone(), None);
            Ok(DecompositionPiece {
                piece_id,
                minimal_i,
                face,
                nu: nu(&region)?,
                nu_factored: newton_number_factored(&simplices)?,
                simplices,
            })
        })
        .collect()
}
