//! Regions under a Newton boundary, stored as unions of simplices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{diagram_of_points, NewtonDiagram};
use crate::error::{Error, Result};
use crate::geometry::{Point, Simplex};
use crate::hull::{point_in_simplex, pulling_triangulation};
use crate::linalg::affine_dimension;
use crate::rational::{self, Rational};
use crate::subset::CoordinateSubset;
use crate::support::{axis_points, check_intercepts, is_convenient, SupportSet};

/// A compact polyhedron in `(R_{>=0})^n` given as a union of simplices.
///
/// Regions built by [`gamma_minus`] keep the generator points of the Newton
/// polyhedron they came from and are triangulated face-to-face; explicit
/// regions are validated when their Newton number is computed.
#[derive(Clone, Debug)]
pub struct NewtonRegion {
    n: usize,
    simplices: Vec<Simplex>,
    source: Option<Vec<Point>>,
    trusted: bool,
}

impl NewtonRegion {
    /// An explicit region. Simplices may have any dimension up to `n`; most
    /// operations require pure `n`-dimensional input and check it.
    pub fn from_simplices(n: usize, mut simplices: Vec<Simplex>) -> Result<Self> {
        if let Some(bad) = simplices.iter().find(|s| s.ambient_dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.ambient_dim(),
            });
        }
        simplices.sort();
        simplices.dedup();
        Ok(NewtonRegion {
            n,
            simplices,
            source: None,
            trusted: false,
        })
    }

    /// The axis simplex `Y = |O, a_1 e_1, ..., a_n e_n|`.
    pub fn axis_simplex(a: &[Rational]) -> Result<Self> {
        check_intercepts(a.len(), a)?;
        Ok(gamma_minus_of_points(a.len(), &axis_points(a), VertexOrder::Lexicographic))
    }

    /// `Y_a = {x >= 0 : x_1 + ... + x_n <= a}`.
    pub fn standard_simplex(n: usize, a: Rational) -> Result<Self> {
        Self::axis_simplex(&vec![a; n])
    }

    pub(crate) fn trusted(n: usize, simplices: Vec<Simplex>, source: Option<Vec<Point>>) -> Self {
        let mut simplices = simplices;
        simplices.sort();
        simplices.dedup();
        NewtonRegion {
            n,
            simplices,
            source,
            trusted: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Generators of the Newton polyhedron this region lies under, if known.
    pub fn source(&self) -> Option<&[Point]> {
        self.source.as_deref()
    }

    pub(crate) fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains_origin(&self) -> bool {
        self.simplices.iter().any(Simplex::contains_origin)
    }

    pub fn is_pure(&self) -> bool {
        !self.simplices.is_empty() && self.simplices.iter().all(|s| s.dim() == self.n)
    }

    /// Union of the simplex vertex sets. For regions built by
    /// [`gamma_minus`] these are exactly the vertices of the polyhedron.
    pub fn vertices(&self) -> Vec<Point> {
        let set: BTreeSet<Point> = self
            .simplices
            .iter()
            .flat_map(|s| s.vertices().iter().cloned())
            .collect();
        set.into_iter().collect()
    }

    /// Maximal faces `Delta_t cap R^I` of the simplices, deduplicated. Each is
    /// returned as its vertex list in ambient coordinates.
    pub fn faces_in(&self, subset: CoordinateSubset) -> Vec<Vec<Point>> {
        let faces: BTreeSet<Vec<Point>> = self
            .simplices
            .iter()
            .map(|s| s.face_in(subset))
            .filter(|f| !f.is_empty())
            .collect();
        let faces: Vec<Vec<Point>> = faces.into_iter().collect();
        faces
            .iter()
            .filter(|f| {
                !faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v)))
            })
            .cloned()
            .collect()
    }
}

/// How vertices are ordered for the pulling triangulation of each facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrder {
    Lexicographic,
    Seeded(u64),
}

/// `Gamma_-(f)`: the cone with apex `O` over the Newton boundary.
pub fn gamma_minus(support: &SupportSet) -> Result<NewtonRegion> {
    gamma_minus_ordered(support, VertexOrder::Lexicographic)
}

pub(crate) fn gamma_minus_ordered(support: &SupportSet, order: VertexOrder) -> Result<NewtonRegion> {
    if support.contains_origin() {
        return Err(Error::OriginInSupport);
    }
    let conv = is_convenient(support);
    if !conv.convenient {
        return Err(Error::NotConvenient {
            missing: conv.missing,
        });
    }
    Ok(gamma_minus_of_points(support.n(), &support.to_points(), order))
}

/// Caller guarantees the generators are convenient and avoid the origin.
pub(crate) fn gamma_minus_of_points(n: usize, points: &[Point], order: VertexOrder) -> NewtonRegion {
    let diagram = diagram_of_points(n, points);
    let origin = Point::origin(n);
    let simplices = boundary_triangulation(&diagram, order)
        .into_iter()
        .map(|face| {
            let mut v = Vec::with_capacity(n + 1);
            v.push(origin.clone());
            v.extend(face);
            Simplex::from_sorted(v)
        })
        .collect();
    NewtonRegion::trusted(n, simplices, Some(points.to_vec()))
}

/// Triangulates every compact facet of the diagram with one global vertex
/// order, so the pieces fit together face-to-face. Returns sorted vertex lists
/// of `(n-1)`-simplices.
pub(crate) fn boundary_triangulation(diagram: &NewtonDiagram, order: VertexOrder) -> Vec<Vec<Point>> {
    let mut ranked: Vec<Point> = diagram.vertices.clone();
    ranked.sort();
    if let VertexOrder::Seeded(seed) = order {
        ranked.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let priority: BTreeMap<&Point, usize> = ranked.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = Vec::new();
    for facet in &diagram.facets {
        let coords: Vec<&[Rational]> = facet.vertices.iter().map(Point::coords).collect();
        let prio: Vec<usize> = facet.vertices.iter().map(|v| priority[v]).collect();
        for simplex in pulling_triangulation(&coords, &prio) {
            let mut verts: Vec<Point> = simplex.iter().map(|&i| facet.vertices[i].clone()).collect();
            verts.sort();
            out.push(verts);
        }
    }
    out.sort();
    out
}

/// `X^I = X cap R^I`, as a region of `R^{|I|}`.
///
/// Regions that remember their generators are rebuilt from the restricted
/// generators; explicit regions keep the faces lying in `R^I`.
pub fn restrict_region(region: &NewtonRegion, subset: CoordinateSubset) -> NewtonRegion {
    let k = subset.len();
    if let Some(source) = &region.source {
        let restricted: Vec<Point> = source
            .iter()
            .filter(|p| p.lies_in(subset))
            .map(|p| p.restrict_coords(subset))
            .collect();
        if k == 0 {
            return origin_region(region.contains_origin());
        }
        if restricted.is_empty() {
            return NewtonRegion::trusted(k, Vec::new(), Some(restricted));
        }
        return gamma_minus_of_points(k, &restricted, VertexOrder::Lexicographic);
    }
    let simplices = region
        .faces_in(subset)
        .into_iter()
        .map(|face| {
            let verts: Vec<Point> = face.iter().map(|v| v.restrict_coords(subset)).collect();
            Simplex::new(verts).expect("faces of a simplex are simplices")
        })
        .collect();
    NewtonRegion {
        n: k,
        simplices,
        source: None,
        trusted: region.trusted,
    }
}

fn origin_region(present: bool) -> NewtonRegion {
    let simplices = if present {
        vec![Simplex::from_sorted(vec![Point::origin(0)])]
    } else {
        Vec::new()
    };
    NewtonRegion::trusted(0, simplices, None)
}

/// `pi_I`: sets the coordinates in `I` to zero and drops repeated vertices.
pub fn project(simplex: &Simplex, subset: CoordinateSubset) -> Result<Simplex> {
    Simplex::new(simplex.vertices().iter().map(|v| v.zero_out(subset)).collect())
}

/// `pi_I(X)` viewed in `R_I`, i.e. with the coordinates of `I` removed.
/// Simplices whose image loses dimension are dropped; their number is
/// returned alongside.
pub fn project_region(region: &NewtonRegion, subset: CoordinateSubset) -> (NewtonRegion, usize) {
    let keep = subset.complement(region.n);
    let m = keep.len();
    let mut dropped = 0;
    let mut simplices = Vec::new();
    for s in &region.simplices {
        let verts: Vec<Point> = s.vertices().iter().map(|v| v.restrict_coords(keep)).collect();
        match Simplex::new(verts) {
            Ok(p) if p.dim() == m => simplices.push(p),
            _ => dropped += 1,
        }
    }
    simplices.sort();
    simplices.dedup();
    (
        NewtonRegion {
            n: m,
            simplices,
            source: None,
            trusted: false,
        },
        dropped,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiConvenience {
    pub quasi_convenient: bool,
    pub reason: Option<String>,
}

impl QuasiConvenience {
    fn fail(reason: String) -> Self {
        QuasiConvenience {
            quasi_convenient: false,
            reason: Some(reason),
        }
    }
}

/// Checks condition (i) exactly: the origin is in `X` and every nonzero
/// vertex coordinate is at least one. Condition (ii), that each `X^I` is an
/// `|I|`-disk, is replaced by the sufficient test that `X^I` is pure
/// `|I|`-dimensional, connected through shared facets and a cone from `O`.
pub fn is_quasi_convenient(region: &NewtonRegion) -> QuasiConvenience {
    if !region.contains_origin() {
        return QuasiConvenience::fail("the origin is not in the region".into());
    }
    let one = rational::int(1);
    for v in region.vertices() {
        if v.coords().iter().any(|c| *c != Rational::from_integer(0.into()) && *c < one) {
            return QuasiConvenience::fail(format!("vertex {v} has a coordinate in (0, 1)"));
        }
    }
    for subset in CoordinateSubset::all(region.n).filter(|s| !s.is_empty()) {
        if let Some(reason) = disk_proxy_failure(region, subset) {
            return QuasiConvenience::fail(reason);
        }
    }
    QuasiConvenience {
        quasi_convenient: true,
        reason: None,
    }
}

fn disk_proxy_failure(region: &NewtonRegion, subset: CoordinateSubset) -> Option<String> {
    let k = subset.len();
    let faces = region.faces_in(subset);
    let local = |face: &[Point]| -> Vec<Point> { face.iter().map(|v| v.restrict_coords(subset)).collect() };
    let full: Vec<Vec<Point>> = faces
        .iter()
        .filter(|f| {
            let loc = local(f);
            let refs: Vec<&[Rational]> = loc.iter().map(Point::coords).collect();
            f.len() == k + 1 && affine_dimension(&refs) == Some(k)
        })
        .cloned()
        .collect();
    if full.is_empty() {
        return Some(format!("X^{subset} is not {k}-dimensional"));
    }
    for face in &faces {
        if full.contains(face) {
            continue;
        }
        let covered = full.iter().any(|g| {
            let g_loc = local(g);
            let g_refs: Vec<&[Rational]> = g_loc.iter().map(Point::coords).collect();
            local(face).iter().all(|v| point_in_simplex(v.coords(), &g_refs))
        });
        if !covered {
            return Some(format!("X^{subset} is not pure {k}-dimensional"));
        }
    }
    if let Some(face) = full.iter().find(|f| !f.iter().any(Point::is_origin)) {
        return Some(format!(
            "X^{subset} is not a cone from the origin (face {:?})",
            face
        ));
    }
    let mut seen = vec![false; full.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..full.len() {
            if !seen[j] && full[i].iter().filter(|v| full[j].contains(v)).count() >= k {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Some(format!("X^{subset} is not connected through shared facets"));
    }
    None
}
