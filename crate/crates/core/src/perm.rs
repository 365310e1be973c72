//! Permutations in one-line notation, with cycle decomposition and order.
//!
//! This is the certification side of the crate: a witness is ultimately a
//! family of permutations, and the certified order of a word is read off the
//! cycle lengths of its composed image.  Nothing here knows about graphs or
//! traces, so the check stays independent of the construction machinery.

use crate::arith::{lcm_checked, ArithError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("entry {value} at position {position} is out of range for degree {degree}")]
    OutOfRange { position: usize, value: u32, degree: usize },
    #[error("value {value} appears more than once")]
    Duplicate { value: u32 },
    #[error("degrees differ: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error(transparent)]
    Arithmetic(#[from] ArithError),
}

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for (position, &value) in images.iter().enumerate() {
            if value as usize >= degree {
                return Err(PermError::OutOfRange { position, value, degree });
            }
            if seen[value as usize] {
                return Err(PermError::Duplicate { value });
            }
            seen[value as usize] = true;
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.0[v as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `self` first, then `then`.
    pub fn compose(&self, then: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != then.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: then.degree() });
        }
        Ok(Permutation(self.0.iter().map(|&v| then.0[v as usize]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w as usize] = v as u32;
        }
        Permutation(inv)
    }

    /// Cycle decomposition, fixed points included; each cycle starts at its
    /// least element and cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v as usize] {
                seen[v as usize] = true;
                cycle.push(v);
                v = self.0[v as usize];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_lengths(&self) -> Vec<u64> {
        self.cycles().into_iter().map(|c| c.len() as u64).collect()
    }

    /// Order in the symmetric group: least common multiple of the cycle
    /// lengths.  The identity on an empty set has order 1.
    pub fn order(&self) -> Result<u64, ArithError> {
        self.cycle_lengths()
            .into_iter()
            .try_fold(1u64, lcm_checked)
    }
}
