//! Words over a free product of finite factors, optionally amalgamated over
//! a common subgroup.
//!
//! A word is a sequence of letters `(factor, elem)`.  Reduction merges
//! adjacent letters of the same factor through that factor's table and
//! rewrites letters that land in the amalgamated subgroup into a neighbour,
//! so that a reduced word never keeps an interior amalgam letter.  A word
//! that reduces to a single amalgam element is canonicalized into the
//! lowest-index factor, which keeps reduced forms deterministic.

use crate::arith::{lcm_checked, ArithError};
use crate::group::{FiniteGroup, GroupViolation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter references factor {factor}, but the system has {count} factors")]
    BadFactor { factor: usize, count: usize },
    #[error("letter ({factor}, {elem}) is out of range for a factor of order {order}")]
    BadElem { factor: usize, elem: usize, order: usize },
    #[error("operation requires a trivial amalgam")]
    AmalgamPresent,
    #[error("word is empty after reduction")]
    Trivial,
    #[error("word contains an identity letter; reduce it first")]
    IdentityLetter,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word lies in a single factor")]
    InFreeFactor,
    #[error("{0}")]
    Arithmetic(#[from] ArithError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("factor system has no factors")]
    NoFactors,
    #[error("factor {index} is invalid: {violation}")]
    BadFactor { index: usize, violation: GroupViolation },
    #[error("amalgam shape mismatch: {0}")]
    AmalgamShape(String),
    #[error("amalgam subgroup of factor {factor} is not closed: {x} * {y} leaves it")]
    NotClosed { factor: usize, x: usize, y: usize },
    #[error("amalgam identifications disagree between factor 0 and factor {factor}")]
    InconsistentAmalgam { factor: usize },
}

/// One syllable of a word: element `elem` of factor `factor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub factor: usize,
    pub elem: usize,
}

pub fn letter(factor: usize, elem: usize) -> Letter {
    Letter { factor, elem }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<(usize, usize)>) -> Self {
        Word(letters.into_iter().map(|(factor, elem)| Letter { factor, elem }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

/// The amalgamated subgroup, shared by all factors.
///
/// `subgroups[i]` lists the element indices of the copy inside factor `i`;
/// `maps[i][k]` is the index of `subgroups[i][k]` in the common abstract
/// copy.  Abstract index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amalgam {
    pub subgroups: Vec<Vec<usize>>,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSystem {
    pub factors: Vec<FiniteGroup>,
    pub amalgam: Option<Amalgam>,
}

impl FactorSystem {
    pub fn free_product(factors: Vec<FiniteGroup>) -> Self {
        FactorSystem { factors, amalgam: None }
    }

    /// Order of the amalgamated subgroup (1 when the amalgam is trivial).
    pub fn amalgam_order(&self) -> usize {
        self.amalgam.as_ref().map_or(1, |a| a.subgroups[0].len())
    }

    /// Abstract amalgam index of `(factor, elem)`, if the element lies in the
    /// amalgamated subgroup.  With a trivial amalgam only the identity does.
    pub fn amalgam_index(&self, factor: usize, elem: usize) -> Option<usize> {
        if elem == 0 {
            return Some(0);
        }
        let a = self.amalgam.as_ref()?;
        a.subgroups[factor]
            .iter()
            .position(|&e| e == elem)
            .map(|k| a.maps[factor][k])
    }

    /// Element of factor `factor` representing abstract amalgam index `b`.
    pub fn amalgam_element(&self, factor: usize, b: usize) -> usize {
        if b == 0 {
            return 0;
        }
        let a = self.amalgam.as_ref().expect("nonzero amalgam index without amalgam");
        let k = a.maps[factor].iter().position(|&m| m == b).expect("amalgam index in range");
        a.subgroups[factor][k]
    }

    /// Product in the abstract amalgam, computed through factor 0.
    pub fn amalgam_mul(&self, x: usize, y: usize) -> usize {
        let ex = self.amalgam_element(0, x);
        let ey = self.amalgam_element(0, y);
        self.amalgam_index(0, self.factors[0].mul(ex, ey))
            .expect("amalgam is closed")
    }

    pub fn validate(&self) -> Result<(), SystemError> {
        if self.factors.is_empty() {
            return Err(SystemError::NoFactors);
        }
        for (index, g) in self.factors.iter().enumerate() {
            g.validate().map_err(|violation| SystemError::BadFactor { index, violation })?;
        }
        let Some(a) = &self.amalgam else { return Ok(()) };

        let k = self.factors.len();
        if a.subgroups.len() != k || a.maps.len() != k {
            return Err(SystemError::AmalgamShape(format!(
                "need one subgroup and one map per factor, got {} and {}",
                a.subgroups.len(),
                a.maps.len()
            )));
        }
        let b_order = a.subgroups[0].len();
        if b_order == 0 {
            return Err(SystemError::AmalgamShape("amalgam is empty".into()));
        }
        for i in 0..k {
            let sub = &a.subgroups[i];
            let map = &a.maps[i];
            if sub.len() != b_order || map.len() != b_order {
                return Err(SystemError::AmalgamShape(format!(
                    "factor {i}: subgroup/map sizes differ from factor 0"
                )));
            }
            let order = self.factors[i].order;
            let mut seen_elem = vec![false; order];
            let mut seen_abs = vec![false; b_order];
            for (&e, &m) in sub.iter().zip(map) {
                if e >= order {
                    return Err(SystemError::AmalgamShape(format!(
                        "factor {i}: element {e} out of range"
                    )));
                }
                if m >= b_order {
                    return Err(SystemError::AmalgamShape(format!(
                        "factor {i}: abstract index {m} out of range"
                    )));
                }
                if seen_elem[e] || seen_abs[m] {
                    return Err(SystemError::AmalgamShape(format!(
                        "factor {i}: duplicate subgroup entry"
                    )));
                }
                seen_elem[e] = true;
                seen_abs[m] = true;
                if (e == 0) != (m == 0) {
                    return Err(SystemError::AmalgamShape(format!(
                        "factor {i}: identity must map to abstract index 0"
                    )));
                }
            }
            if !sub.contains(&0) {
                return Err(SystemError::AmalgamShape(format!(
                    "factor {i}: subgroup misses the identity"
                )));
            }
            // Closure under the factor's multiplication.
            for &x in sub {
                for &y in sub {
                    let p = self.factors[i].mul(x, y);
                    if !sub.contains(&p) {
                        return Err(SystemError::NotClosed { factor: i, x, y });
                    }
                }
            }
        }
        // All copies must induce the same abstract multiplication table.
        let abstract_table = |i: usize| -> Vec<Vec<usize>> {
            (0..b_order)
                .map(|x| {
                    (0..b_order)
                        .map(|y| {
                            let ex = self.amalgam_element(i, x);
                            let ey = self.amalgam_element(i, y);
                            self.amalgam_index(i, self.factors[i].mul(ex, ey)).unwrap()
                        })
                        .collect()
                })
                .collect()
        };
        let reference = abstract_table(0);
        for i in 1..k {
            if abstract_table(i) != reference {
                return Err(SystemError::InconsistentAmalgam { factor: i });
            }
        }
        Ok(())
    }
}

/// Range-checks every letter of `w` against the system.
pub fn validate_letters(fs: &FactorSystem, w: &Word) -> Result<(), WordError> {
    for l in &w.0 {
        if l.factor >= fs.factors.len() {
            return Err(WordError::BadFactor { factor: l.factor, count: fs.factors.len() });
        }
        let order = fs.factors[l.factor].order;
        if l.elem >= order {
            return Err(WordError::BadElem { factor: l.factor, elem: l.elem, order });
        }
    }
    Ok(())
}

/// Reduces `w` to its canonical form: identity letters dropped, adjacent
/// same-factor letters merged, amalgam letters pushed into their right
/// neighbour (left neighbour at the end of the word), and a surviving lone
/// amalgam letter expressed in factor 0.
pub fn reduce(fs: &FactorSystem, w: &Word) -> Result<Word, WordError> {
    validate_letters(fs, w)?;
    let mut out: Vec<Letter> = Vec::with_capacity(w.0.len());
    for &l in &w.0 {
        push_letter(fs, &mut out, l);
    }
    // Interior amalgam letters cannot survive push_letter, but a trailing one
    // can; fold it into the letter before it.
    while out.len() >= 2 {
        let last = out[out.len() - 1];
        let Some(b) = fs.amalgam_index(last.factor, last.elem) else { break };
        out.pop();
        let prev = out.pop().unwrap();
        let conv = fs.amalgam_element(prev.factor, b);
        let merged = fs.factors[prev.factor].mul(prev.elem, conv);
        if merged != 0 {
            push_letter(fs, &mut out, Letter { factor: prev.factor, elem: merged });
        }
    }
    // Canonical factor for a lone amalgam letter.
    if out.len() == 1 {
        if let Some(b) = fs.amalgam_index(out[0].factor, out[0].elem) {
            out[0] = Letter { factor: 0, elem: fs.amalgam_element(0, b) };
        }
    }
    Ok(Word(out))
}

/// Appends one letter to a reduced prefix, restoring reducedness.  The
/// incoming letter may merge with the top of the stack; an amalgam letter on
/// top is converted into the incoming letter's factor first.
fn push_letter(fs: &FactorSystem, stack: &mut Vec<Letter>, l: Letter) {
    let mut cur = l;
    loop {
        if cur.elem == 0 {
            return;
        }
        match stack.last().copied() {
            Some(top) if top.factor == cur.factor => {
                stack.pop();
                let merged = fs.factors[cur.factor].mul(top.elem, cur.elem);
                if merged == 0 {
                    return;
                }
                cur = Letter { factor: cur.factor, elem: merged };
            }
            Some(top) => match fs.amalgam_index(top.factor, top.elem) {
                Some(b) => {
                    stack.pop();
                    let conv = fs.amalgam_element(cur.factor, b);
                    let merged = fs.factors[cur.factor].mul(conv, cur.elem);
                    if merged == 0 {
                        return;
                    }
                    cur = Letter { factor: cur.factor, elem: merged };
                }
                None => break,
            },
            None => break,
        }
    }
    stack.push(cur);
}

/// Number of syllables of the reduced form of `w`.
pub fn syllable_count(fs: &FactorSystem, w: &Word) -> Result<usize, WordError> {
    Ok(reduce(fs, w)?.len())
}

/// Inverse word: letters reversed and inverted within their factors.
pub fn word_inverse(fs: &FactorSystem, w: &Word) -> Result<Word, WordError> {
    validate_letters(fs, w)?;
    Ok(Word(
        w.0.iter()
            .rev()
            .map(|l| Letter { factor: l.factor, elem: fs.factors[l.factor].inv(l.elem) })
            .collect(),
    ))
}

/// Cyclically reduces `w`: returns `(w', c)` with `w = c * w' * c^{-1}` as
/// group elements and `w'` reduced with first and last letters in different
/// factors (or at most one letter).
pub fn cyclic_reduce(fs: &FactorSystem, w: &Word) -> Result<(Word, Word), WordError> {
    let mut cur = reduce(fs, w)?;
    let mut conjugator: Vec<Letter> = Vec::new();
    while cur.len() >= 2 {
        let first = cur.0[0];
        let last = cur.0[cur.len() - 1];
        if first.factor != last.factor {
            break;
        }
        // Peel the first letter: x (m y) x^{-1} with (y x) merged at the end.
        conjugator.push(first);
        let merged = fs.factors[first.factor].mul(last.elem, first.elem);
        let mut middle: Vec<Letter> = cur.0[1..cur.len() - 1].to_vec();
        if merged != 0 {
            middle.push(Letter { factor: first.factor, elem: merged });
        }
        cur = reduce(fs, &Word(middle))?;
    }
    Ok((cur, Word(conjugator)))
}

/// True when `w` is reduced and no cyclic rotation of it can shorten: at most
/// one letter, or first and last letters lie in different factors.
pub fn is_cyclically_reduced(fs: &FactorSystem, w: &Word) -> Result<bool, WordError> {
    let r = reduce(fs, w)?;
    if r != *w {
        return Ok(false);
    }
    if w.len() <= 1 {
        return Ok(true);
    }
    Ok(w.0[0].factor != w.0[w.len() - 1].factor)
}

/// Image of `w` under the natural quotient onto the direct product of the
/// factors, one coordinate per factor.  Requires a trivial amalgam.
pub fn direct_image(fs: &FactorSystem, w: &Word) -> Result<Vec<usize>, WordError> {
    if fs.amalgam.is_some() {
        return Err(WordError::AmalgamPresent);
    }
    validate_letters(fs, w)?;
    let mut coords = vec![0usize; fs.factors.len()];
    for l in &w.0 {
        coords[l.factor] = fs.factors[l.factor].mul(coords[l.factor], l.elem);
    }
    Ok(coords)
}

/// Least `n >= 1` such that `w^n` maps into the kernel of the direct-product
/// quotient; equals the order of `direct_image(w)`.
///
/// Requires a cyclically reduced word of at least two syllables (such words
/// have infinite order in the free product).
pub fn cartesian_power(fs: &FactorSystem, w: &Word) -> Result<u64, WordError> {
    if fs.amalgam.is_some() {
        return Err(WordError::AmalgamPresent);
    }
    if !is_cyclically_reduced(fs, w)? {
        return Err(WordError::NotCyclicallyReduced);
    }
    if w.len() < 2 {
        return Err(WordError::InFreeFactor);
    }
    let coords = direct_image(fs, w)?;
    let mut n = 1u64;
    for (i, &c) in coords.iter().enumerate() {
        n = lcm_checked(n, fs.factors[i].element_order(c))?;
    }
    Ok(n)
}

/// Z4 *_{Z2} Z4: both factors are Z4, amalgamated over {e, a2}.  Shared
/// in-crate test fixture.
#[cfg(test)]
pub(crate) fn tests_amalgam_fixture() -> FactorSystem {
    use crate::group::cyclic;
    FactorSystem {
        factors: vec![cyclic(4), cyclic(4)],
        amalgam: Some(Amalgam {
            subgroups: vec![vec![0, 2], vec![0, 2]],
            maps: vec![vec![0, 1], vec![0, 1]],
        }),
    }
}
