//! Independent computations used to cross-check the main engine: lattice
//! point counting, triangulations in random vertex order, and the Milnor
//! number of tiny germs as a colength of the Jacobian ideal.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::bounds::{BoundCertificate, StepStatus};
use crate::combinatorics::binomial;
use crate::diagram::primitive;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::linalg::{dot, hyperplane_normal};
use crate::newton::nu;
use crate::rational::{self, Rational};
use crate::region::{gamma_minus_ordered, NewtonRegion, VertexOrder};
use crate::support::SupportSet;

/// A polynomial with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    support: SupportSet,
    coefficients: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    /// Sums repeated monomials and drops zero coefficients.
    pub fn new(variables: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut coefficients: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exponent, c) in terms {
            *coefficients.entry(exponent).or_insert_with(Rational::zero) += c;
        }
        coefficients.retain(|_, c| !c.is_zero());
        let support = SupportSet::new(variables, coefficients.keys().cloned().collect())?;
        Ok(Polynomial {
            support,
            coefficients,
        })
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.coefficients
    }

    pub fn n(&self) -> usize {
        self.support.n()
    }

    pub fn degree(&self) -> u32 {
        self.coefficients.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn derivative(&self, i: usize) -> Vec<(Vec<u32>, Rational)> {
        self.coefficients
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * Rational::from_integer(e[i].into()))
            })
            .collect()
    }
}

/// `V_n(X)` as the leading coefficient of the Ehrhart polynomial, read off
/// from lattice point counts of the dilates `kX`, `k = 1..n+1`.
pub fn ehrhart_volume(region: &NewtonRegion) -> Result<Rational> {
    let n = region.n();
    if n == 0 || !region.is_pure() {
        return Err(Error::NotFullDimensional(n));
    }
    if region.simplices().iter().any(|s| s.vertices().iter().any(|v| !v.is_integral())) {
        return Err(Error::NonIntegral);
    }
    let cells: Vec<Vec<(Vec<i128>, i128)>> = region.simplices().iter().map(|s| inequalities(s.vertices())).collect();
    let max = region
        .vertices()
        .iter()
        .flat_map(|v| v.coords().iter().map(|c| c.to_integer().to_i128().expect("small coordinates")))
        .max()
        .unwrap_or(0);
    let counts: Vec<i128> = (1..=n as i128 + 1)
        .map(|k| count_lattice_points(n, &cells, k, max * k))
        .collect();
    let mut diff = BigInt::zero();
    for (j, c) in counts.iter().enumerate() {
        let term = binomial(n, j) * BigInt::from(*c);
        if (n - j).is_multiple_of(2) {
            diff += term;
        } else {
            diff -= term;
        }
    }
    Ok(Rational::new(diff, rational::factorial(n)))
}

/// Integer facet inequalities `a . x >= b` of a full-dimensional simplex.
fn inequalities(vertices: &[Point]) -> Vec<(Vec<i128>, i128)> {
    (0..vertices.len())
        .map(|skip| {
            let facet: Vec<&[Rational]> = vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v.coords())
                .collect();
            let mut normal = primitive(&hyperplane_normal(&facet).expect("nondegenerate simplex"));
            let mut offset = dot(&normal, facet[0]);
            if dot(&normal, vertices[skip].coords()) < offset {
                normal.iter_mut().for_each(|c| *c = -c.clone());
                offset = -offset;
            }
            let to_int = |x: &Rational| x.to_integer().to_i128().expect("small normals");
            (normal.iter().map(to_int).collect(), to_int(&offset))
        })
        .collect()
}

fn count_lattice_points(n: usize, cells: &[Vec<(Vec<i128>, i128)>], k: i128, bound: i128) -> i128 {
    let mut point = vec![0i128; n];
    let mut count = 0;
    loop {
        let inside = cells.iter().any(|ineqs| {
            ineqs
                .iter()
                .all(|(a, b)| a.iter().zip(&point).map(|(x, y)| x * y).sum::<i128>() >= b * k)
        });
        count += i128::from(inside);
        let mut i = 0;
        while i < n {
            if point[i] < bound {
                point[i] += 1;
                break;
            }
            point[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
    }
}

/// `nu(Gamma_-(s))` with every compact facet triangulated in a random
/// vertex order drawn from `seed`.
pub fn shuffled_newton_number(support: &SupportSet, seed: u64) -> Result<Rational> {
    nu(&gamma_minus_ordered(support, VertexOrder::Seeded(seed))?)
}

pub const COLENGTH_MAX_N: usize = 3;
pub const COLENGTH_MAX_DEGREE: u32 = 8;
pub const COLENGTH_MAX_TRUNCATION: usize = 24;

/// `mu(f, 0) = dim O / (df/dz_1, ..., df/dz_n)` for an isolated critical
/// point, `n <= 3`, degree at most 8.
///
/// `dim O / (J + m^N)` is computed by linear algebra on the monomials of
/// degree below `N`. It grows with `N`, and once two consecutive values
/// agree Nakayama's lemma gives `m^N subset J`, so the value is exact.
pub fn milnor_colength(poly: &Polynomial) -> Result<u64> {
    let n = poly.n();
    if n > COLENGTH_MAX_N {
        return Err(Error::Guardrail {
            what: "dimension for the colength oracle",
            value: n,
            limit: COLENGTH_MAX_N,
        });
    }
    if poly.degree() > COLENGTH_MAX_DEGREE {
        return Err(Error::Guardrail {
            what: "degree for the colength oracle",
            value: poly.degree() as usize,
            limit: COLENGTH_MAX_DEGREE as usize,
        });
    }
    let partials: Vec<Vec<(Vec<u32>, Rational)>> = (0..n).map(|i| poly.derivative(i)).collect();
    let mut previous = truncated_colength(n, &partials, 1);
    for cutoff in 2..=COLENGTH_MAX_TRUNCATION {
        let current = truncated_colength(n, &partials, cutoff);
        if current == previous {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NotStabilised(COLENGTH_MAX_TRUNCATION))
}

fn monomials_below(n: usize, cutoff: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..cutoff as u32 - used).map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    out
}

fn truncated_colength(n: usize, partials: &[Vec<(Vec<u32>, Rational)>], cutoff: usize) -> u64 {
    let monomials = monomials_below(n, cutoff);
    let index: HashMap<&[u32], usize> = monomials.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut echelon: HashMap<usize, BTreeMap<usize, Rational>> = HashMap::new();
    for shift in &monomials {
        for partial in partials {
            let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
            for (e, c) in partial {
                let product: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                if let Some(&col) = index.get(product.as_slice()) {
                    *row.entry(col).or_insert_with(Rational::zero) += c;
                }
            }
            row.retain(|_, c| !c.is_zero());
            reduce_and_insert(&mut echelon, row);
        }
    }
    (monomials.len() - echelon.len()) as u64
}

fn reduce_and_insert(echelon: &mut HashMap<usize, BTreeMap<usize, Rational>>, mut row: BTreeMap<usize, Rational>) {
    while let Some((&lead, coeff)) = row.iter().next() {
        let Some(pivot) = echelon.get(&lead) else {
            let inv = coeff.recip();
            row.values_mut().for_each(|c| *c *= &inv);
            echelon.insert(lead, row);
            return;
        };
        let factor = coeff.clone();
        for (col, value) in pivot {
            let entry = row.entry(*col).or_insert_with(Rational::zero);
            *entry -= &factor * value;
        }
        row.retain(|_, c| !c.is_zero());
    }
}

/// Replaces the cited `mu >= nu` link of a hypersurface certificate by the
/// colength oracle's value when the germ is small enough. Returns `mu`.
pub fn confirm_mu_step(certificate: &mut BoundCertificate, poly: &Polynomial) -> Result<u64> {
    let mu = milnor_colength(poly)?;
    let mu_value = Rational::from_integer(mu.into());
    if let Some(step) = certificate.chain.first_mut() {
        step.holds = Some(step.rhs_value.as_ref().is_none_or(|v| mu_value >= *v));
        step.lhs_value = Some(mu_value);
        step.status = StepStatus::Verified(format!("colength mu={mu}"));
    }
    certificate.verdict = certificate.chain.iter().all(|s| s.holds != Some(false));
    Ok(mu)
}

/// Coefficients for generic-looking test polynomials: the primes from 2.
pub fn small_primes(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while out.len() < count {
        if (2..candidate).take_while(|d| d * d <= candidate).all(|d| !candidate.is_multiple_of(d)) {
            out.push(Rational::from_integer(candidate.into()));
        }
        candidate += 1;
    }
    out
}
