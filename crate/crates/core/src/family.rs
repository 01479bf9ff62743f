//! Truncating one vertex monomial of a convenient germ in four variables.
//!
//! For `f_t = f - (1 - t) gamma_A z^A` the region below the diagram grows by
//! the cone from `A` over the part of `Gamma(f_0)` that `A` sees. When that
//! cone is a single 4-simplex `Delta`, `nu` stays constant exactly when the
//! zero pattern of `A` and the other vertices of `Delta` match one of three
//! shapes up to a permutation of the coordinates.

use itertools::Itertools;
use serde::Serialize;

use crate::decompose::place;
use crate::diagram::diagram_of_points;
use crate::error::{Error, Result};
use crate::geometry::{Point, Simplex};
use crate::newton::nu;
use crate::rational::{self, Rational};
use crate::region::{boundary_triangulation, gamma_minus, NewtonRegion, VertexOrder};
use crate::support::{exponent_point, SupportSet};

/// `f_1` with support `f1`, and `f_0` with the vertex `A` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyStep {
    f1: SupportSet,
    vertex: Vec<u32>,
    f0: SupportSet,
}

impl FamilyStep {
    /// Checks that `n = 4`, that `vertex` is a vertex of `Gamma(f1)`, and
    /// that both supports are convenient.
    pub fn new(f1: SupportSet, vertex: &[u32]) -> Result<Self> {
        if f1.n() != 4 {
            return Err(Error::FamilyDimension(f1.n()));
        }
        if vertex.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: vertex.len(),
            });
        }
        gamma_minus(&f1)?;
        if !f1.contains(vertex) {
            return Err(Error::NotAVertex(vertex.to_vec()));
        }
        let f0 = f1.without(vertex)?;
        gamma_minus(&f0)?;
        if diagram_of_points(4, &f0.to_points()).polyhedron_contains(&exponent_point(vertex)) {
            return Err(Error::NotAVertex(vertex.to_vec()));
        }
        Ok(FamilyStep {
            f1,
            vertex: vertex.to_vec(),
            f0,
        })
    }

    pub fn f1(&self) -> &SupportSet {
        &self.f1
    }

    pub fn f0(&self) -> &SupportSet {
        &self.f0
    }

    pub fn vertex(&self) -> &[u32] {
        &self.vertex
    }
}

/// The closure of `Gamma_-(f_0) \ Gamma_-(f_1)`, required to be one
/// 4-simplex; otherwise the error carries every piece found.
pub fn family_difference(step: &FamilyStep) -> Result<Simplex> {
    let diagram = diagram_of_points(4, &step.f0.to_points());
    let mut boundary = boundary_triangulation(&diagram, VertexOrder::Lexicographic);
    let mut pieces = place(&mut boundary, &exponent_point(&step.vertex));
    if pieces.len() != 1 {
        return Err(Error::NotSingleSimplex(
            pieces
                .iter()
                .map(|s| s.vertices().iter().map(Point::to_strings).collect())
                .collect(),
        ));
    }
    Ok(pieces.remove(0))
}

/// Which of the three shapes applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    #[serde(rename = "i")]
    One,
    #[serde(rename = "ii")]
    Two,
    #[serde(rename = "iii")]
    Three,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::One => "i",
            Case::Two => "ii",
            Case::Three => "iii",
        }
    }
}

/// Outcome of matching `A` and the other vertices of `Delta` against the
/// three shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Fixed by the number of zero coordinates of `A`; `None` when `A` has
    /// none (then `nu(Delta) > 0`).
    pub case: Option<Case>,
    /// The vertex matching `E`, `D` or `C`, in original coordinates.
    pub witness_vertex: Option<Point>,
    /// 1-based: position `k` of the normalised pattern reads coordinate
    /// `permutation[k]`.
    pub permutation: Option<Vec<usize>>,
}

impl Classification {
    pub fn predicts_equal(&self) -> bool {
        self.witness_vertex.is_some()
    }
}

/// Tries all 24 coordinate permutations in lexicographic order. Under a
/// permutation the first `z` coordinates of `A` must be its zeros, where `z`
/// is 1, 2 or 3 for cases (i), (ii), (iii); a witness is then a vertex with
/// a 1 in some position `k <= z`, zeros in the positions before `k`, and
/// anything after `z`. Patterns are tried in the order `E`, `D`, `C`.
pub fn classify(a: &Point, others: &[Point]) -> Classification {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let zeros = a.coords().iter().filter(|c| **c == zero).count();
    let case = match zeros {
        1 => Some(Case::One),
        2 => Some(Case::Two),
        3 => Some(Case::Three),
        _ => None,
    };
    let none = Classification {
        case,
        witness_vertex: None,
        permutation: None,
    };
    if case.is_none() {
        return none;
    }
    let n = a.dim();
    for sigma in (0..n).permutations(n) {
        let permuted = |p: &Point| -> Vec<Rational> { sigma.iter().map(|&i| p.coords()[i].clone()).collect() };
        let pa = permuted(a);
        if !pa[..zeros].iter().all(|c| *c == zero) {
            continue;
        }
        for k in 0..zeros {
            let hit = others.iter().find(|v| {
                let pv = permuted(v);
                pv[k] == one && pv[..k].iter().all(|c| *c == zero) && pv[k + 1..zeros].iter().all(|c| *c == zero)
            });
            if let Some(w) = hit {
                return Classification {
                    case,
                    witness_vertex: Some(w.clone()),
                    permutation: Some(sigma.iter().map(|i| i + 1).collect()),
                };
            }
        }
    }
    none
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationVerdict {
    pub case: Option<Case>,
    pub witness_vertex: Option<Point>,
    pub permutation: Option<Vec<usize>>,
    pub delta: Simplex,
    #[serde(with = "rational::as_string")]
    pub nu_f0: Rational,
    #[serde(with = "rational::as_string")]
    pub nu_f1: Rational,
    #[serde(with = "rational::as_string")]
    pub nu_delta: Rational,
    pub equal: bool,
}

/// Classifies the step and confirms the prediction against the directly
/// computed `nu(Gamma_-(f_0))` and `nu(Gamma_-(f_1))`; a disagreement is an
/// error, never a verdict.
pub fn negligible_truncation_check(step: &FamilyStep) -> Result<TruncationVerdict> {
    let delta = family_difference(step)?;
    let a = exponent_point(&step.vertex);
    let others: Vec<Point> = delta.vertices().iter().filter(|v| **v != a).cloned().collect();
    let class = classify(&a, &others);
    let nu_f0 = nu(&gamma_minus(&step.f0)?)?;
    let nu_f1 = nu(&gamma_minus(&step.f1)?)?;
    let equal = nu_f0 == nu_f1;
    if class.predicts_equal() != equal {
        return Err(Error::CaseAnalysisMismatch {
            predicted: class.predicts_equal(),
            direct: equal,
        });
    }
    let nu_delta = nu(&NewtonRegion::from_simplices(4, vec![delta.clone()])?)?;
    Ok(TruncationVerdict {
        case: class.case,
        witness_vertex: class.witness_vertex,
        permutation: class.permutation,
        delta,
        nu_f0,
        nu_f1,
        nu_delta,
        equal,
    })
}
