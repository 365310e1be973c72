//! Small checked integer helpers plus the gcd/lcm identity that drives the
//! order bookkeeping of layered covers.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("lcm over an empty sequence is undefined")]
    EmptySequence,
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd_slice(xs: &[u64]) -> u64 {
    xs.iter().copied().fold(0, gcd)
}

pub fn lcm_checked(a: u64, b: u64) -> Result<u64, ArithError> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(ArithError::Overflow("lcm"))
}

/// Outcome of spreading a target multiplier `n` across a family of crossing
/// numbers: `d` is their gcd, `quotients[i] = n*d / gcd(n*d, ls[i])`, and
/// `lcm` is the least common multiple of the quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerQuotients {
    pub d: u64,
    pub quotients: Vec<u64>,
    pub lcm: u64,
}

/// For positive `n` and a non-empty list of positive crossing numbers `ls`,
/// computes the per-cycle length quotients of an `n*d`-layer cover and their
/// least common multiple.
///
/// With `d = gcd(ls)` and `q_i = nd / (nd, l_i)`, each quotient divides `n`
/// (because `d | l_i` forces `(nd, l_i) >= d`) and together they recombine to
/// exactly `n`.  The function computes rather than assumes this; callers
/// assert `lcm == n` where they rely on the recombination.
pub fn layer_quotient_lcm(n: u64, ls: &[u64]) -> Result<LayerQuotients, ArithError> {
    if n == 0 {
        return Err(ArithError::NotPositive("n"));
    }
    if ls.is_empty() {
        return Err(ArithError::EmptySequence);
    }
    if ls.contains(&0) {
        return Err(ArithError::NotPositive("every crossing number"));
    }
    let d = gcd_slice(ls);
    let nd = n.checked_mul(d).ok_or(ArithError::Overflow("n*d"))?;
    let quotients: Vec<u64> = ls.iter().map(|&l| nd / gcd(nd, l)).collect();
    let mut lcm = 1u64;
    for &q in &quotients {
        lcm = lcm_checked(lcm, q)?;
    }
    Ok(LayerQuotients { d, quotients, lcm })
}
