//! Lower-bound certificates and the vanishing criteria for `nu`.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::hull::point_in_simplex;
use crate::linalg::{affine_dimension, determinant, hull_coordinates};
use crate::newton::nu;
use crate::rational::{self, Rational};
use crate::region::{gamma_minus, NewtonRegion};
use crate::support::{
    check_intercepts, is_convenient, points_above_hyperplane, standard_modification, SupportSet,
};

/// How a link of an inequality chain is justified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    /// Both sides were computed here and compared exactly.
    Computed,
    /// The step is a published theorem that this crate does not check.
    Cited(&'static str),
    /// A cited step that was additionally confirmed by an independent
    /// computation (the string names it).
    Verified(String),
}

impl Serialize for StepStatus {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            StepStatus::Computed => ser.serialize_str("computed"),
            StepStatus::Cited(what) => ser.serialize_str(&format!("cited:{what}")),
            StepStatus::Verified(how) => ser.serialize_str(&format!("verified:{how}")),
        }
    }
}

pub const HYPERSURFACE_CITATION: &str = "[K]-Thm.I";
pub const COMPLETE_INTERSECTION_CITATION: &str = "[O2]-Thm.7.2";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub lhs: String,
    pub rel: &'static str,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub lhs_value: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub rhs_value: Option<Rational>,
    /// `None` for cited steps that were not checked.
    pub holds: Option<bool>,
    pub status: StepStatus,
}

mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, ser: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => ser.serialize_str(&rational::format_rational(x)),
            None => ser.serialize_none(),
        }
    }
}

impl ChainStep {
    pub(crate) fn computed(lhs: &str, rhs: &str, lhs_value: &Rational, rhs_value: &Rational) -> Self {
        ChainStep {
            lhs: lhs.into(),
            rel: ">=",
            rhs: rhs.into(),
            lhs_value: Some(lhs_value.clone()),
            rhs_value: Some(rhs_value.clone()),
            holds: Some(lhs_value >= rhs_value),
            status: StepStatus::Computed,
        }
    }

    pub(crate) fn cited(lhs: &str, rhs: &str, rhs_value: &Rational, source: &'static str) -> Self {
        ChainStep {
            lhs: lhs.into(),
            rel: ">=",
            rhs: rhs.into(),
            lhs_value: None,
            rhs_value: Some(rhs_value.clone()),
            holds: None,
            status: StepStatus::Cited(source),
        }
    }
}

/// A certified inequality chain ending in an explicit lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    #[serde(with = "rational::vec_as_strings")]
    pub a: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
    /// `nu` (or `nu^r`) of the region the bound is about.
    #[serde(with = "rational::as_string")]
    pub nu_value: Rational,
    /// `prod (a_i - 1)`, or the closed form of the r-th version.
    #[serde(with = "rational::as_string")]
    pub bound: Rational,
    pub modification_m: Option<u64>,
    /// True when every computed link of the chain holds.
    pub verdict: bool,
    pub chain: Vec<ChainStep>,
}

impl BoundCertificate {
    pub(crate) fn finish(mut self) -> Self {
        self.verdict = self.chain.iter().all(|s| s.holds != Some(false));
        self
    }
}

pub(crate) fn product_bound(a: &[Rational]) -> Rational {
    a.iter().map(|x| x - Rational::one()).product()
}

pub(crate) fn format_intercepts(a: &[Rational]) -> String {
    a.iter().map(rational::format_rational).join(",")
}

/// Checks `|O, a_1 e_1, ..., a_n e_n| subset X`.
///
/// For regions built from generators this is the hyperplane test on the
/// generators. For explicit regions every simplex must be a cone from `O`
/// whose far vertices lie on or above the hyperplane, and the cones must
/// fill every direction of the orthant; the last condition is the exact
/// identity `sum |det(P_1/|P_1|, ..., P_n/|P_n|)| = 1` with 1-norms.
pub(crate) fn check_contains_axis_simplex(region: &NewtonRegion, a: &[Rational]) -> Result<()> {
    check_intercepts(region.n(), a)?;
    let fails = || Error::ContainmentFails(format_intercepts(a));
    if let Some(source) = region.source() {
        return if points_above_hyperplane(source, a)? { Ok(()) } else { Err(fails()) };
    }
    let mut covered = Rational::zero();
    for s in region.simplices() {
        if !s.contains_origin() || s.dim() != region.n() {
            return Err(fails());
        }
        let far: Vec<&Point> = s.vertices().iter().filter(|v| !v.is_origin()).collect();
        let far_owned: Vec<Point> = far.iter().map(|p| (*p).clone()).collect();
        if !points_above_hyperplane(&far_owned, a)? {
            return Err(fails());
        }
        let rows: Vec<Vec<Rational>> = far
            .iter()
            .map(|p| {
                let norm: Rational = p.coords().iter().sum();
                p.coords().iter().map(|c| c / &norm).collect()
            })
            .collect();
        covered += rational::abs(&determinant(&rows));
    }
    if covered == Rational::one() {
        Ok(())
    } else {
        Err(fails())
    }
}

/// `nu(X) >= prod (a_i - 1) >= 0` for `Y = |O, a_1 e_1, ..., a_n e_n|`
/// inside `X`.
pub fn bound_simplex(region: &NewtonRegion, a: &[Rational]) -> Result<BoundCertificate> {
    let value = nu(region)?;
    check_contains_axis_simplex(region, a)?;
    let bound = product_bound(a);
    Ok(BoundCertificate {
        a: a.to_vec(),
        r: None,
        d: None,
        chain: vec![
            ChainStep::computed("nu(X)", "prod(a_i-1)", &value, &bound),
            ChainStep::computed("prod(a_i-1)", "0", &bound, &Rational::zero()),
        ],
        nu_value: value,
        bound,
        modification_m: None,
        verdict: false,
    }
    .finish())
}

/// `mu(f, 0) >= nu(Gamma_-(g)) >= prod (a_i - 1)` where `g` is `f` itself
/// when convenient and a standard modification otherwise.
///
/// The first link, mu >= nu(g) for nondegenerate germs, is only cited.
pub fn milnor_lower_bound(support: &SupportSet, a: &[Rational]) -> Result<BoundCertificate> {
    check_intercepts(support.n(), a)?;
    if !points_above_hyperplane(&support.to_points(), a)? {
        return Err(Error::ContainmentFails(format_intercepts(a)));
    }
    let (m, value) = stabilized_value(support, a, nu)?;
    let bound = product_bound(a);
    Ok(BoundCertificate {
        a: a.to_vec(),
        r: None,
        d: None,
        chain: vec![
            ChainStep::cited("mu", "nu(g)", &value, HYPERSURFACE_CITATION),
            ChainStep::computed("nu(g)", "prod(a_i-1)", &value, &bound),
            ChainStep::computed("prod(a_i-1)", "0", &bound, &Rational::zero()),
        ],
        nu_value: value,
        bound,
        modification_m: m,
        verdict: false,
    }
    .finish())
}

/// Evaluates `value` on `Gamma_-(g)` for the standard modification `g`.
///
/// Starts at `m_0 = max(1 + max coordinate sum, ceil(max a_i))`, so the
/// added axis points never cut below the hyperplane, and doubles `m` until
/// two consecutive values agree, giving up beyond `2^10 m_0`. Returns the
/// first `m` of the agreeing pair, or `None` when no modification was needed.
pub(crate) fn stabilized_value(
    support: &SupportSet,
    a: &[Rational],
    value: impl Fn(&NewtonRegion) -> Result<Rational>,
) -> Result<(Option<u64>, Rational)> {
    if support.contains_origin() {
        return Err(Error::OriginInSupport);
    }
    if is_convenient(support).convenient {
        return Ok((None, value(&gamma_minus(support)?)?));
    }
    let ceil_a = a
        .iter()
        .map(|x| x.ceil().to_integer())
        .max()
        .and_then(|c| u64::try_from(c).ok())
        .unwrap_or(0);
    let m0 = (1 + support.max_coordinate_sum()).max(ceil_a);
    let cap = m0 << 10;
    let eval = |m: u64| -> Result<Rational> { value(&gamma_minus(&standard_modification(support, m)?)?) };
    let mut m = m0;
    let mut current = eval(m)?;
    loop {
        let next_m = 2 * m;
        if next_m > cap {
            return Err(Error::ModificationUnstable(cap));
        }
        let next = eval(next_m)?;
        if next == current {
            return Ok((Some(m), current));
        }
        m = next_m;
        current = next;
    }
}

/// What the vanishing criteria say about a region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingVerdict {
    #[serde(with = "rational::as_string")]
    pub nu: Rational,
    /// 1-based `j` with `E_j` a vertex.
    pub unit_vertices: Vec<usize>,
    /// `nu = 0` implies some `E_j` is a vertex.
    pub condition_i_holds: bool,
    /// A `j` such that `E_j` is a vertex and all other vertices have
    /// `x_j = 0`; then `nu` must vanish.
    pub condition_ii_witness: Option<usize>,
    pub complement_convex: bool,
    /// Under convexity of the complement, `nu = 0` exactly when a unit
    /// vertex exists. `None` when convexity is not known.
    pub condition_iii_predicts_zero: Option<bool>,
    /// Every applicable criterion agrees with the computed `nu`.
    pub consistent: bool,
}

/// Evaluates the three vanishing criteria against the computed `nu`.
///
/// Convexity of the complement of `X` in the orthant is automatic for
/// regions built from generators; for explicit regions it is taken from
/// `complement_convex` (default false).
pub fn vanishing_check(region: &NewtonRegion, complement_convex: Option<bool>) -> Result<VanishingVerdict> {
    let value = nu(region)?;
    let n = region.n();
    let vertices = polyhedron_vertices(region);
    let zero = Rational::zero();
    let unit_vertices: Vec<usize> = (0..n)
        .filter(|&j| vertices.contains(&unit(n, j)))
        .map(|j| j + 1)
        .collect();
    let vanishes = value.is_zero();
    let condition_i_holds = !vanishes || !unit_vertices.is_empty();
    let condition_ii_witness = unit_vertices.iter().copied().find(|&j| {
        vertices
            .iter()
            .filter(|v| **v != unit(n, j - 1))
            .all(|v| v.coords()[j - 1] == zero)
    });
    let complement_convex = region.source().is_some() || complement_convex.unwrap_or(false);
    let condition_iii_predicts_zero = complement_convex.then_some(!unit_vertices.is_empty());
    let consistent = condition_i_holds
        && (condition_ii_witness.is_none() || vanishes)
        && condition_iii_predicts_zero.is_none_or(|p| p == vanishes);
    Ok(VanishingVerdict {
        nu: value,
        unit_vertices,
        condition_i_holds,
        condition_ii_witness,
        complement_convex,
        condition_iii_predicts_zero,
        consistent,
    })
}

fn unit(n: usize, j: usize) -> Point {
    Point::unit(n, j)
}

/// Vertices of the polyhedron `X`: simplex vertices that do not lie in the
/// convex hull of their neighbours in the triangulation.
pub(crate) fn polyhedron_vertices(region: &NewtonRegion) -> Vec<Point> {
    region
        .vertices()
        .into_iter()
        .filter(|p| {
            let mut neighbours: Vec<Point> = region
                .simplices()
                .iter()
                .filter(|s| s.vertices().contains(p))
                .flat_map(|s| s.vertices().iter().cloned())
                .filter(|q| q != p)
                .collect();
            neighbours.sort();
            neighbours.dedup();
            !in_convex_hull(p, &neighbours)
        })
        .collect()
}

fn in_convex_hull(p: &Point, points: &[Point]) -> bool {
    if points.is_empty() {
        return false;
    }
    let mut all: Vec<&[Rational]> = points.iter().map(Point::coords).collect();
    let dim = affine_dimension(&all).unwrap_or(0);
    all.push(p.coords());
    if affine_dimension(&all) != Some(dim) {
        return false;
    }
    let coords = hull_coordinates(&all);
    let local = |x: &[Rational]| -> Vec<Rational> { coords.iter().map(|&c| x[c].clone()).collect() };
    let target = local(p.coords());
    let locals: Vec<Vec<Rational>> = points.iter().map(|q| local(q.coords())).collect();
    (0..locals.len()).combinations(dim + 1).any(|combo| {
        let simplex: Vec<&[Rational]> = combo.iter().map(|&i| locals[i].as_slice()).collect();
        affine_dimension(&simplex) == Some(dim) && point_in_simplex(&target, &simplex)
    })
}
