//! Composition sums `F^l_k`, `G^l_k` and elementary symmetric functions.
//!
//! `F^l_k(d) = sum over i_1 + ... + i_k = l - k of d_1^{i_1+1} ... d_k^{i_k+1}`
//! and `G^l_k(d)` is the same sum without the `+1` in the exponents.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    F,
    G,
}

type MemoKey = (Kind, usize, Vec<u64>);

static MEMO: Lazy<Mutex<HashMap<MemoKey, BigInt>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn check(l: usize, d: &[u64]) -> Result<()> {
    let k = d.len();
    if k == 0 || l < k {
        return Err(Error::InvalidCoefficient { l, k });
    }
    if d.contains(&0) {
        return Err(Error::InvalidDegrees("degrees must be positive".into()));
    }
    Ok(())
}

/// `F^l_k(d_1, ..., d_k)` with `k = d.len()`.
pub fn f_coeff(l: usize, d: &[u64]) -> Result<BigInt> {
    check(l, d)?;
    Ok(memoized(Kind::F, l, d))
}

/// `G^l_k(d_1, ..., d_k)` with `k = d.len()`.
pub fn g_coeff(l: usize, d: &[u64]) -> Result<BigInt> {
    check(l, d)?;
    Ok(memoized(Kind::G, l, d))
}

/// `F^l_k` extended to `k = 0` and to `l < k`: the composition sum over an
/// empty index set is zero, except for `F^0_0 = 1`.
pub(crate) fn f_total(l: usize, d: &[u64]) -> BigInt {
    if l < d.len() {
        return BigInt::zero();
    }
    if d.is_empty() {
        return if l == 0 { BigInt::one() } else { BigInt::zero() };
    }
    memoized(Kind::F, l, d)
}

fn memoized(kind: Kind, l: usize, d: &[u64]) -> BigInt {
    let key = (kind, l, d.to_vec());
    if let Some(v) = MEMO.lock().unwrap().get(&key) {
        return v.clone();
    }
    let shift = u32::from(kind == Kind::F);
    let mut total = BigInt::zero();
    for_each_composition(l - d.len(), d.len(), &mut |parts| {
        total += parts
            .iter()
            .zip(d)
            .map(|(&i, &dj)| BigInt::from(dj).pow(i as u32 + shift))
            .product::<BigInt>();
    });
    MEMO.lock().unwrap().insert(key, total.clone());
    total
}

/// Calls `f` on every weak composition of `total` into `parts` parts.
pub(crate) fn for_each_composition(total: usize, parts: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(rest: usize, slot: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if slot + 1 == buf.len() {
            buf[slot] = rest;
            f(buf);
            return;
        }
        for i in 0..=rest {
            buf[slot] = i;
            rec(rest - i, slot + 1, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0; parts];
    rec(total, 0, &mut buf, f);
}

/// `sigma_s(a_1, ..., a_n)`, with `sigma_0 = 1`.
pub fn elementary_symmetric(s: usize, a: &[Rational]) -> Result<Rational> {
    if s > a.len() {
        return Err(Error::IndexOutOfRange {
            index: s,
            max: a.len(),
        });
    }
    // e[j] after processing a prefix holds sigma_j of that prefix
    let mut e = vec![Rational::zero(); s + 1];
    e[0] = Rational::one();
    for x in a {
        for j in (1..=s).rev() {
            let add = &e[j - 1] * x;
            e[j] += add;
        }
    }
    Ok(e.swap_remove(s))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}
