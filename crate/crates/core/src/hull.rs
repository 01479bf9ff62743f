//! Brute-force convex hulls and pulling triangulations for small point sets.
//!
//! Everything here works on plain coordinate slices so it can be reused in
//! local coordinates of faces and in the oracle code.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, hull_coordinates, hyperplane_normal, solve};
use crate::rational::Rational;

/// A facet of a full-dimensional point configuration: `normal . x >= offset`
/// holds for every point, with equality exactly on `members`.
#[derive(Clone, Debug)]
pub struct HullFacet {
    pub members: Vec<usize>,
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

/// Facets of the convex hull of `points`, which must affinely span `R^d`
/// where `d` is the common length of the points.
pub fn full_dim_facets(points: &[&[Rational]]) -> Vec<HullFacet> {
    let d = points.first().map_or(0, |p| p.len());
    let mut found: BTreeMap<Vec<usize>, HullFacet> = BTreeMap::new();
    if d == 0 {
        return Vec::new();
    }
    for combo in (0..points.len()).combinations(d) {
        let chosen: Vec<&[Rational]> = combo.iter().map(|&i| points[i]).collect();
        let Some(mut normal) = hyperplane_normal(&chosen) else {
            continue;
        };
        let mut offset = dot(&normal, chosen[0]);
        let mut below = false;
        let mut above = false;
        let mut members = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let s = dot(&normal, p) - &offset;
            if s.is_zero() {
                members.push(i);
            } else if s.is_positive() {
                above = true;
            } else {
                below = true;
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        if below {
            normal.iter_mut().for_each(|c| *c = -c.clone());
            offset = -offset;
        }
        found.entry(members.clone()).or_insert(HullFacet {
            members,
            normal,
            offset,
        });
    }
    found.into_values().collect()
}

/// Affine dimension of `points` and the vertex-index sets of the facets of
/// their convex hull inside its own affine hull.
pub fn polytope_facets(points: &[&[Rational]]) -> (usize, Vec<Vec<usize>>) {
    let coords = hull_coordinates(points);
    let dim = coords.len();
    if dim == 0 {
        return (0, Vec::new());
    }
    let local: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| coords.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let refs: Vec<&[Rational]> = local.iter().map(Vec::as_slice).collect();
    let facets = full_dim_facets(&refs)
        .into_iter()
        .map(|f| f.members)
        .collect();
    (dim, facets)
}

/// Pulling triangulation of the polytope whose vertices are `points`.
///
/// `priority[i]` orders the vertices: the lowest-priority vertex is coned
/// over the triangulated facets that avoid it, recursively. The
/// triangulation restricted to any face is the pulling triangulation of that
/// face for the same order, so faces shared between polytopes triangulated
/// with one global order match up. No new vertices are introduced.
///
/// Returns simplices as sorted index lists.
pub fn pulling_triangulation(points: &[&[Rational]], priority: &[usize]) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut out = Vec::new();
    pull(points, &all, priority, &mut out);
    out
}

fn pull(points: &[&[Rational]], idx: &[usize], priority: &[usize], out: &mut Vec<Vec<usize>>) {
    let sub: Vec<&[Rational]> = idx.iter().map(|&i| points[i]).collect();
    let (dim, facets) = polytope_facets(&sub);
    if idx.len() == dim + 1 {
        let mut s = idx.to_vec();
        s.sort_unstable();
        out.push(s);
        return;
    }
    let apex_local = (0..idx.len())
        .min_by_key(|&k| priority[idx[k]])
        .expect("nonempty polytope");
    for facet in facets {
        if facet.contains(&apex_local) {
            continue;
        }
        let global: Vec<usize> = facet.iter().map(|&k| idx[k]).collect();
        let mut inner = Vec::new();
        pull(points, &global, priority, &mut inner);
        for mut s in inner {
            s.push(idx[apex_local]);
            s.sort_unstable();
            out.push(s);
        }
    }
}

/// Barycentric coordinates of `p` relative to a full-dimensional simplex of
/// `R^d` given by `d + 1` vertices.
pub fn barycentric(p: &[Rational], simplex: &[&[Rational]]) -> Option<Vec<Rational>> {
    let d = p.len();
    let mut a = vec![vec![Rational::zero(); d + 1]; d + 1];
    let mut b = vec![Rational::zero(); d + 1];
    for (col, v) in simplex.iter().enumerate() {
        for row in 0..d {
            a[row][col] = v[row].clone();
        }
        a[d][col] = Rational::from_integer(1.into());
    }
    b[..d].clone_from_slice(p);
    b[d] = Rational::from_integer(1.into());
    solve(&a, &b)
}

pub fn point_in_simplex(p: &[Rational], simplex: &[&[Rational]]) -> bool {
    barycentric(p, simplex).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
}

/// Whether two full-dimensional simplices of `R^d` have a common interior
/// point.
pub fn interiors_intersect(a: &[&[Rational]], b: &[&[Rational]]) -> bool {
    if separated_by_facet(a, b) || separated_by_facet(b, a) {
        return false;
    }
    // 0 lies in the interior of the Minkowski difference a - b exactly when
    // the interiors meet.
    let diff: Vec<Vec<Rational>> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| x.iter().zip(y.iter()).map(|(s, t)| s - t).collect()))
        .collect();
    let refs: Vec<&[Rational]> = diff.iter().map(Vec::as_slice).collect();
    full_dim_facets(&refs)
        .iter()
        .all(|f| f.offset.is_negative())
}

fn separated_by_facet(a: &[&[Rational]], b: &[&[Rational]]) -> bool {
    for skip in 0..a.len() {
        let facet: Vec<&[Rational]> = a
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, p)| *p)
            .collect();
        let Some(normal) = hyperplane_normal(&facet) else {
            continue;
        };
        let offset = dot(&normal, facet[0]);
        let inside = dot(&normal, a[skip]) - &offset;
        let sign_in = inside.is_positive();
        let all_out = b.iter().all(|q| {
            let s = dot(&normal, q) - &offset;
            s.is_zero() || s.is_positive() != sign_in
        });
        if all_out {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pts(list: &[&[i64]]) -> Vec<Vec<Rational>> {
        list.iter().map(|p| p.iter().map(|&c| int(c)).collect()).collect()
    }

    fn refs(v: &[Vec<Rational>]) -> Vec<&[Rational]> {
        v.iter().map(Vec::as_slice).collect()
    }

    #[test]
    fn square_has_four_facets_and_two_triangles() {
        let sq = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(full_dim_facets(&refs(&sq)).len(), 4);
        let tri = pulling_triangulation(&refs(&sq), &[0, 1, 2, 3]);
        assert_eq!(tri, vec![vec![0, 1, 3], vec![0, 2, 3]]);
    }

    #[test]
    fn pulling_a_cube_gives_six_tetrahedra() {
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(vec![int(x), int(y), int(z)]);
                }
            }
        }
        let order: Vec<usize> = (0..8).collect();
        let tri = pulling_triangulation(&refs(&cube), &order);
        assert_eq!(tri.len(), 6);
        assert!(tri.iter().all(|s| s.contains(&0)));
    }

    #[test]
    fn lower_dimensional_polytope() {
        // a square sitting in a plane of R^3
        let sq = pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let (dim, facets) = polytope_facets(&refs(&sq));
        assert_eq!(dim, 2);
        assert_eq!(facets.len(), 4);
    }

    #[test]
    fn overlap_detection() {
        let a = pts(&[&[0, 0], &[2, 0], &[0, 2]]);
        let b = pts(&[&[1, 0], &[3, 0], &[1, 3]]);
        let c = pts(&[&[1, 0], &[2, 0], &[1, 1]]);
        let d = pts(&[&[2, 2], &[2, 0], &[0, 2]]);
        assert!(interiors_intersect(&refs(&a), &refs(&b)));
        assert!(interiors_intersect(&refs(&a), &refs(&c)));
        assert!(!interiors_intersect(&refs(&a), &refs(&d)));
        // touching at a vertex only
        let e = pts(&[&[2, 0], &[3, 0], &[3, 1]]);
        assert!(!interiors_intersect(&refs(&a), &refs(&e)));
    }

    #[test]
    fn membership() {
        let t = pts(&[&[0, 0], &[3, 0], &[0, 2]]);
        assert!(point_in_simplex(&[int(1), int(1)], &refs(&t)));
        assert!(point_in_simplex(&[int(3), int(0)], &refs(&t)));
        assert!(!point_in_simplex(&[int(2), int(1)], &refs(&t)));
    }
}
