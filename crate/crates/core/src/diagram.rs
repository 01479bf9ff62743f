//! The Newton polyhedron `conv(supp + R_{>=0}^n)` and its compact faces.
//!
//! Facets are found by brute force. A facet with inner normal `N >= 0` whose
//! zero set is `Z` is a facet with strictly positive normal of the projection
//! onto the coordinates outside `Z`, so it is enough to search, for every
//! nonempty coordinate set `T`, the hyperplanes through `|T|` projected
//! points with a strictly positive normal supporting all of them.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::geometry::Point;
use crate::linalg::{dot, hyperplane_normal, rank};
use crate::rational::{self, Rational};
use crate::subset::CoordinateSubset;
use crate::support::SupportSet;

/// A compact facet of the Newton polyhedron: `<inner_normal, x> >= offset`
/// on the whole polyhedron, with equality on `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactFacet {
    pub vertices: Vec<Point>,
    #[serde(serialize_with = "serialize_bigints")]
    pub inner_normal: Vec<BigInt>,
    #[serde(with = "rational::as_string")]
    pub offset: Rational,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// The Newton boundary: compact facets and the vertex set.
#[derive(Clone, Debug, Serialize)]
pub struct NewtonDiagram {
    pub n: usize,
    pub facets: Vec<CompactFacet>,
    pub vertices: Vec<Point>,
    #[serde(skip)]
    inequalities: Vec<(Vec<Rational>, Rational)>,
}

impl NewtonDiagram {
    /// Whether `p` lies in the Newton polyhedron (on or above the boundary).
    pub fn polyhedron_contains(&self, p: &Point) -> bool {
        self.inequalities
            .iter()
            .all(|(normal, offset)| dot(normal, p.coords()) >= *offset)
    }

    /// Whether `p` lies strictly below the hyperplane of some compact facet,
    /// i.e. outside the Newton polyhedron.
    pub fn is_below(&self, p: &Point) -> bool {
        !self.polyhedron_contains(p)
    }
}

pub fn newton_diagram(support: &SupportSet) -> Result<NewtonDiagram> {
    Ok(diagram_of_points(support.n(), &support.to_points()))
}

/// Newton diagram of an arbitrary finite set of rational generators.
pub(crate) fn diagram_of_points(n: usize, points: &[Point]) -> NewtonDiagram {
    let minimal = minimal_points(points);
    let mut facets: BTreeMap<(Vec<Rational>, Rational), ()> = BTreeMap::new();
    for subset in CoordinateSubset::all(n).filter(|s| !s.is_empty()) {
        let projected: BTreeSet<Point> = minimal.iter().map(|p| p.restrict_coords(subset)).collect();
        let projected: Vec<Point> = projected.into_iter().collect();
        for (normal, offset) in positive_facets(&projected) {
            let mut lifted = vec![Rational::zero(); n];
            for (k, i) in subset.iter().enumerate() {
                lifted[i] = normal[k].clone();
            }
            facets.insert((lifted, offset), ());
        }
    }
    let inequalities: Vec<(Vec<Rational>, Rational)> = facets.into_keys().collect();

    let vertices: Vec<Point> = minimal
        .iter()
        .filter(|p| {
            let active: Vec<Vec<Rational>> = inequalities
                .iter()
                .filter(|(nrm, off)| dot(nrm, p.coords()) == *off)
                .map(|(nrm, _)| nrm.clone())
                .collect();
            rank(&active) == n
        })
        .cloned()
        .collect();

    let compact = inequalities
        .iter()
        .filter(|(nrm, _)| nrm.iter().all(Signed::is_positive))
        .map(|(nrm, off)| CompactFacet {
            vertices: vertices
                .iter()
                .filter(|v| dot(nrm, v.coords()) == *off)
                .cloned()
                .collect(),
            inner_normal: nrm.iter().map(|c| c.to_integer()).collect(),
            offset: off.clone(),
        })
        .collect();

    NewtonDiagram {
        n,
        facets: compact,
        vertices,
        inequalities,
    }
}

/// Drops duplicates and points dominating another point coordinatewise;
/// those never lie on a compact face.
fn minimal_points(points: &[Point]) -> Vec<Point> {
    let distinct: BTreeSet<Point> = points.iter().cloned().collect();
    distinct
        .iter()
        .filter(|p| {
            !distinct.iter().any(|q| {
                q != *p && q.coords().iter().zip(p.coords()).all(|(a, b)| a <= b)
            })
        })
        .cloned()
        .collect()
}

/// Supporting hyperplanes with strictly positive, primitive integer normal
/// through `d` affinely independent points of `R^d`.
fn positive_facets(points: &[Point]) -> Vec<(Vec<Rational>, Rational)> {
    let d = points.first().map_or(0, Point::dim);
    let mut out = Vec::new();
    for combo in (0..points.len()).combinations(d) {
        let chosen: Vec<&[Rational]> = combo.iter().map(|&i| points[i].coords()).collect();
        let Some(mut normal) = hyperplane_normal(&chosen) else {
            continue;
        };
        if normal.iter().all(Signed::is_negative) {
            normal.iter_mut().for_each(|c| *c = -c.clone());
        }
        if !normal.iter().all(Signed::is_positive) {
            continue;
        }
        let normal = primitive(&normal);
        let offset = dot(&normal, chosen[0]);
        if points.iter().all(|p| dot(&normal, p.coords()) >= offset) {
            out.push((normal, offset));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub(crate) fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}
