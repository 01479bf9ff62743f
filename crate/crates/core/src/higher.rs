//! r-th Newton numbers `nu^r_{d_1...d_r}` and the bounds built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bounds::{
    check_contains_axis_simplex, format_intercepts, stabilized_value, BoundCertificate, ChainStep, COMPLETE_INTERSECTION_CITATION,
};
use crate::combinatorics::{elementary_symmetric, f_coeff, f_total, g_coeff};
use crate::error::{Error, Result};
use crate::geometry::Simplex;
use crate::newton::{alternating_sign, common_minimal_face, face_weight, factorial_volumes};
use crate::rational::{self, Rational};
use crate::region::{project_region, NewtonRegion};
use crate::subset::CoordinateSubset;
use crate::support::{check_intercepts, points_above_hyperplane, SupportSet};

/// Positive degrees `d_1, ..., d_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeTuple(Vec<u64>);

impl DegreeTuple {
    pub fn new(d: Vec<u64>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidDegrees("at least one degree is required".into()));
        }
        if d.contains(&0) {
            return Err(Error::InvalidDegrees("degrees must be positive".into()));
        }
        Ok(DegreeTuple(d))
    }

    /// `(1, ..., 1)` of length `r`.
    pub fn ones(r: usize) -> Result<Self> {
        DegreeTuple::new(vec![1; r])
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.0
    }

    /// The prefix `d_1, ..., d_k`.
    pub fn prefix(&self, k: usize) -> DegreeTuple {
        DegreeTuple(self.0[..k].to_vec())
    }
}

impl FromStr for DegreeTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidDegrees(format!("{t:?} is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        DegreeTuple::new(d)
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RTerm {
    #[serde(rename = "I")]
    pub subset: CoordinateSubset,
    #[serde(with = "rational::as_string")]
    pub factorial_volume: Rational,
    /// `F^{|I|}_r(d)`.
    #[serde(serialize_with = "bigint_string")]
    pub weight: BigInt,
    pub sign: i8,
}

fn bigint_string<S: serde::Serializer>(v: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RNewtonReport {
    pub n: usize,
    pub r: usize,
    pub d: DegreeTuple,
    pub terms: Vec<RTerm>,
    pub epsilon: u8,
    /// `epsilon * (-1)^{n-r+1}`.
    #[serde(with = "rational::as_string")]
    pub epsilon_term: Rational,
    #[serde(with = "rational::as_string")]
    pub total: Rational,
}

/// `nu^r_d(X) = sum over |I| >= r of (-1)^{n-|I|} F^{|I|}_r(d) |I|! V(X^I)
/// + epsilon (-1)^{n-r+1}`.
pub fn r_newton_number(region: &NewtonRegion, d: &DegreeTuple) -> Result<RNewtonReport> {
    let n = region.n();
    let r = d.r();
    if r > n {
        return Err(Error::InvalidRank { r, n });
    }
    let volumes = factorial_volumes(region)?;
    let mut total = Rational::zero();
    let mut terms = Vec::new();
    for subset in CoordinateSubset::all(n).filter(|s| s.len() >= r) {
        let weight = f_coeff(subset.len(), d.degrees())?;
        let sign = alternating_sign(n - subset.len());
        let v = volumes[subset.mask() as usize].clone();
        let term = &v * Rational::from_integer(weight.clone());
        if sign > 0 {
            total += term;
        } else {
            total -= term;
        }
        terms.push(RTerm {
            subset,
            factorial_volume: v,
            weight,
            sign,
        });
    }
    terms.sort_by_key(|a| a.subset);
    let epsilon = u8::from(region.contains_origin());
    let epsilon_term = if epsilon == 1 {
        Rational::from_integer(alternating_sign(n - r + 1).into())
    } else {
        Rational::zero()
    };
    total += &epsilon_term;
    Ok(RNewtonReport {
        n,
        r,
        d: d.clone(),
        terms,
        epsilon,
        epsilon_term,
        total,
    })
}

pub(crate) fn r_nu(region: &NewtonRegion, d: &DegreeTuple) -> Result<Rational> {
    Ok(r_newton_number(region, d)?.total)
}

/// One of the printed branch formulas of the factorisation, evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchValue {
    pub branch: &'static str,
    #[serde(with = "rational::as_string")]
    pub value: Rational,
}

/// Both sides of the factorisation identity for a union of simplices with a
/// common minimal subspace `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorisationCheck {
    #[serde(rename = "minimal_I")]
    pub minimal_i: CoordinateSubset,
    /// `n - |I|`.
    pub m: usize,
    /// `sum over J containing I, |J| >= r` of the `nu^r` terms.
    #[serde(with = "rational::as_string")]
    pub restricted_sum: Rational,
    pub branches: Vec<BranchValue>,
}

impl FactorisationCheck {
    pub fn consistent(&self) -> bool {
        self.branches.iter().all(|b| b.value == self.restricted_sum)
    }
}

/// Evaluates every applicable branch of the factorisation of `nu^r` through
/// `X' = pi_I(X)`, for `1 < r < n`.
///
/// With `p = |I|` and `m = n - p` the branches are
///
/// * `r <= p`, `r <= m`: `W sum_{k=r..1} c_k nu^k(X')`
/// * `r <= p`, `r > m`: `W (sum_{k=m..1} c_k nu^k(X') + F^p_{r-m}(d_{m+1..r}))`
/// * `r > p`, `r <= m`: `W sum_{k=r..r-p} c_k nu^k(X')`
/// * `r > p`, `r > m`: `W (sum_{k=m..r-p} c_k nu^k(X') + F^p_{r-m}(d_{m+1..r}))`
///
/// where `W = p! V_p(X^I)`, `c_k = d_r ... d_{k+1} G^{p+1}_{r-k+1}(d_k..d_r)`
/// and `nu^k` uses `d_1, ..., d_k`. At `r = m` both the `r <= m` and the
/// `r > m` forms are evaluated.
pub fn r_newton_branches(simplices: &[Simplex], d: &DegreeTuple) -> Result<FactorisationCheck> {
    let n = simplices.first().ok_or(Error::Degenerate)?.ambient_dim();
    let r = d.r();
    if r <= 1 || r >= n {
        return Err(Error::InvalidRank { r, n });
    }
    let (subset, face) = common_minimal_face(simplices)?;
    let p = subset.len();
    let m = n - p;
    let weight = face_weight(&face, subset);
    let union = NewtonRegion::from_simplices(n, simplices.to_vec())?;
    let (projected, dropped) = project_region(&union, subset);
    if dropped > 0 {
        return Err(Error::NotFullDimensional(m));
    }

    let volumes = factorial_volumes(&union)?;
    let mut restricted_sum = Rational::zero();
    for j in CoordinateSubset::all(n).filter(|j| subset.is_subset_of(*j) && j.len() >= r) {
        let term = &volumes[j.mask() as usize] * Rational::from_integer(f_coeff(j.len(), d.degrees())?);
        if alternating_sign(n - j.len()) > 0 {
            restricted_sum += term;
        } else {
            restricted_sum -= term;
        }
    }

    let degrees = d.degrees();
    let coefficient = |k: usize| -> Result<Rational> {
        let head: BigInt = degrees[k..r].iter().map(|&x| BigInt::from(x)).product();
        let g = g_coeff(p + 1, &degrees[k - 1..r])?;
        Ok(Rational::from_integer(head * g))
    };
    let nu_k = |k: usize| r_nu(&projected, &d.prefix(k));
    let sum_over = |from: usize, to: usize| -> Result<Rational> {
        let mut s = Rational::zero();
        for k in from..=to {
            s += coefficient(k)? * nu_k(k)?;
        }
        Ok(s)
    };
    let tail = || Rational::from_integer(f_total(p, &degrees[m.min(r)..r]));

    let mut branches = Vec::new();
    if r <= p {
        if r <= m {
            branches.push(BranchValue {
                branch: "r<=|I|, r<=m",
                value: &weight * sum_over(1, r)?,
            });
        }
        if r >= m {
            branches.push(BranchValue {
                branch: "r<=|I|, r>m",
                value: &weight * (sum_over(1, m)? + tail()),
            });
        }
    } else {
        if r <= m {
            branches.push(BranchValue {
                branch: "r>|I|, r<=m",
                value: &weight * sum_over(r - p, r)?,
            });
        }
        if r >= m {
            branches.push(BranchValue {
                branch: "r>|I|, r>m",
                value: &weight * (sum_over(r - p, m)? + tail()),
            });
        }
    }
    Ok(FactorisationCheck {
        minimal_i: subset,
        m,
        restricted_sum,
        branches,
    })
}

/// `nu^r` of a union of simplices through the factorisation formula. Fails
/// with [`Error::BranchMismatch`] when two applicable branches disagree.
pub fn r_newton_factored(simplices: &[Simplex], d: &DegreeTuple) -> Result<Rational> {
    let check = r_newton_branches(simplices, d)?;
    let first = check.branches[0].clone();
    if let Some(other) = check.branches.iter().find(|b| b.value != first.value) {
        return Err(Error::BranchMismatch {
            first: format!("{} = {}", first.branch, first.value),
            second: format!("{} = {}", other.branch, other.value),
        });
    }
    Ok(first.value)
}

/// `sum_{s=r..n} (-1)^{n-s} F^s_r(d) sigma_s(a) + (-1)^{n-r+1}`.
pub fn r_closed_form(d: &DegreeTuple, a: &[Rational]) -> Result<Rational> {
    let n = a.len();
    let r = d.r();
    if r > n {
        return Err(Error::InvalidRank { r, n });
    }
    let mut total = Rational::from_integer(alternating_sign(n - r + 1).into());
    for s in r..=n {
        let term = Rational::from_integer(f_coeff(s, d.degrees())?) * elementary_symmetric(s, a)?;
        if alternating_sign(n - s) > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `nu^r_d(X) >= closed form >= 0` for `|O, a_1 e_1, ..., a_n e_n| subset X`.
pub fn r_bound(region: &NewtonRegion, d: &DegreeTuple, a: &[Rational]) -> Result<BoundCertificate> {
    let value = r_nu(region, d)?;
    check_contains_axis_simplex(region, a)?;
    let bound = r_closed_form(d, a)?;
    Ok(BoundCertificate {
        a: a.to_vec(),
        r: Some(d.r()),
        d: Some(d.degrees().to_vec()),
        chain: vec![
            ChainStep::computed("nu^r(X)", "closed_form(a)", &value, &bound),
            ChainStep::computed("closed_form(a)", "0", &bound, &Rational::zero()),
        ],
        nu_value: value,
        bound,
        modification_m: None,
        verdict: false,
    }
    .finish())
}

/// `mu(f, 0) >= nu^r_d(Gamma_-(f)) >= closed form` for a similar complete
/// intersection. Its hypotheses (the germ is such an intersection with
/// diagrams `d_j Gamma(f)`) are the caller's responsibility, and the first
/// link is only cited.
pub fn sciv_milnor_bound(support: &SupportSet, d: &DegreeTuple, a: &[Rational]) -> Result<BoundCertificate> {
    let n = support.n();
    check_intercepts(n, a)?;
    if d.r() > n {
        return Err(Error::InvalidRank { r: d.r(), n });
    }
    if !points_above_hyperplane(&support.to_points(), a)? {
        return Err(Error::ContainmentFails(format_intercepts(a)));
    }
    let (m, value) = stabilized_value(support, a, |x| r_nu(x, d))?;
    let bound = r_closed_form(d, a)?;
    Ok(BoundCertificate {
        a: a.to_vec(),
        r: Some(d.r()),
        d: Some(d.degrees().to_vec()),
        chain: vec![
            ChainStep::cited("mu", "nu^r(g)", &value, COMPLETE_INTERSECTION_CITATION),
            ChainStep::computed("nu^r(g)", "closed_form(a)", &value, &bound),
            ChainStep::computed("closed_form(a)", "0", &bound, &Rational::zero()),
        ],
        nu_value: value,
        bound,
        modification_m: m,
        verdict: false,
    }
    .finish())
}
