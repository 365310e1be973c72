//! Finite groups as explicit multiplication tables.
//!
//! Elements are the indices `0..order`, with `0` reserved for the identity.
//! The representation is deliberately naive — every group this crate touches
//! has desk-scale order — and every table is checked against the full set of
//! group axioms before anything downstream trusts it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default ceiling on the order of any group produced by a constructor.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Orders at or below this bound get an exhaustive associativity check;
/// larger tables are probed on a deterministic stride of triples.
const EXHAUSTIVE_ASSOC_BOUND: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupViolation {
    #[error("table has {rows} rows for declared order {order}")]
    BadShape { rows: usize, order: usize },
    #[error("row {row} has length {len}, expected {order}")]
    BadRowLength { row: usize, len: usize, order: usize },
    #[error("entry table[{i}][{j}] = {value} is out of range")]
    EntryOutOfRange { i: usize, j: usize, value: usize },
    #[error("row {row} is not a permutation (value {value} repeats)")]
    RowNotPermutation { row: usize, value: usize },
    #[error("column {col} is not a permutation (value {value} repeats)")]
    ColumnNotPermutation { col: usize, value: usize },
    #[error("element 0 is not a left identity: table[0][{j}] = {value}")]
    NotLeftIdentity { j: usize, value: usize },
    #[error("element 0 is not a right identity: table[{i}][0] = {value}")]
    NotRightIdentity { i: usize, value: usize },
    #[error("element {elem} has no two-sided inverse")]
    NoInverse { elem: usize },
    #[error("associativity fails at ({i}, {j}, {k}): ({i}{j}){k} = {left} but {i}({j}{k}) = {right}")]
    NotAssociative { i: usize, j: usize, k: usize, left: usize, right: usize },
    #[error("names has length {len}, expected {order}")]
    BadNameCount { len: usize, order: usize },
    #[error("element name {name:?} appears more than once")]
    DuplicateName { name: String },
    #[error("group has order zero")]
    Empty,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0}")]
    Invalid(#[from] GroupViolation),
    #[error("direct product of orders {orders:?} exceeds cap {cap}")]
    CapExceeded { orders: Vec<usize>, cap: usize },
    #[error("direct product of zero factors is undefined")]
    NoFactors,
    #[error("homomorphism image has length {len}, expected {order}")]
    BadHomLength { len: usize, order: usize },
    #[error("map does not respect multiplication at ({i}, {j})")]
    NotHomomorphism { i: usize, j: usize },
}

/// A finite group given by its full multiplication table.
///
/// `table[i][j]` is the product `i * j`; index 0 is the identity.  `names`
/// holds one distinct display name per element and is carried through to
/// graph exports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub names: Vec<String>,
}

impl FiniteGroup {
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// Two-sided inverse of `i`.  Assumes a validated table.
    pub fn inv(&self, i: usize) -> usize {
        self.table[i].iter().position(|&p| p == 0).expect("validated group has inverses")
    }

    /// Least `k >= 1` with `i^k = 0`, by repeated multiplication.
    pub fn element_order(&self, i: usize) -> u64 {
        let mut acc = i;
        let mut k = 1u64;
        while acc != 0 {
            acc = self.mul(acc, i);
            k += 1;
        }
        k
    }

    /// Checks every group axiom and the naming rules, reporting the first
    /// violation found.  Associativity is exhaustive up to order 64 and
    /// strided above that.
    pub fn validate(&self) -> Result<(), GroupViolation> {
        let n = self.order;
        if n == 0 {
            return Err(GroupViolation::Empty);
        }
        if self.table.len() != n {
            return Err(GroupViolation::BadShape { rows: self.table.len(), order: n });
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupViolation::BadRowLength { row: i, len: row.len(), order: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupViolation::EntryOutOfRange { i, j, value: v });
                }
            }
        }
        // Latin square: rows and columns are permutations.
        let mut seen = vec![false; n];
        for (i, row) in self.table.iter().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            for &v in row {
                if seen[v] {
                    return Err(GroupViolation::RowNotPermutation { row: i, value: v });
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let v = self.table[i][j];
                if seen[v] {
                    return Err(GroupViolation::ColumnNotPermutation { col: j, value: v });
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            if self.table[0][j] != j {
                return Err(GroupViolation::NotLeftIdentity { j, value: self.table[0][j] });
            }
        }
        for i in 0..n {
            if self.table[i][0] != i {
                return Err(GroupViolation::NotRightIdentity { i, value: self.table[i][0] });
            }
        }
        for i in 0..n {
            let right = self.table[i].iter().position(|&p| p == 0);
            match right {
                Some(j) if self.table[j][i] == 0 => {}
                _ => return Err(GroupViolation::NoInverse { elem: i }),
            }
        }
        self.check_associativity()?;
        if self.names.len() != n {
            return Err(GroupViolation::BadNameCount { len: self.names.len(), order: n });
        }
        let mut sorted = self.names.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(GroupViolation::DuplicateName { name: w[0].clone() });
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<(), GroupViolation> {
        let n = self.order;
        let check = |i: usize, j: usize, k: usize| -> Result<(), GroupViolation> {
            let left = self.table[self.table[i][j]][k];
            let right = self.table[i][self.table[j][k]];
            if left != right {
                return Err(GroupViolation::NotAssociative { i, j, k, left, right });
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOC_BOUND {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            // Deterministic stride covering ~64 indices per axis.
            let step = n.div_ceil(EXHAUSTIVE_ASSOC_BOUND);
            for i in (0..n).step_by(step) {
                for j in (0..n).step_by(step) {
                    for k in (0..n).step_by(step) {
                        check(i, j, k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A homomorphism between explicit finite groups, stored as the image of
/// every source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Exhaustively checks `f(x*y) = f(x)*f(y)` (identity preservation is
    /// the `x = y = 0` instance).
    pub fn validate(&self) -> Result<(), GroupError> {
        if self.image.len() != self.source.order {
            return Err(GroupError::BadHomLength {
                len: self.image.len(),
                order: self.source.order,
            });
        }
        for i in 0..self.source.order {
            for j in 0..self.source.order {
                let lhs = self.image[self.source.mul(i, j)];
                let rhs = self.target.mul(self.image[i], self.image[j]);
                if lhs != rhs {
                    return Err(GroupError::NotHomomorphism { i, j });
                }
            }
        }
        Ok(())
    }
}

/// Direct product of the given factors, together with the canonical
/// embedding of each factor.
///
/// Tuples are indexed with factor 0 least significant, so the identity tuple
/// is element 0.  Errors out when the product order would exceed `cap`.
pub fn direct_product(
    factors: &[&FiniteGroup],
    cap: usize,
) -> Result<(FiniteGroup, Vec<GroupHom>), GroupError> {
    if factors.is_empty() {
        return Err(GroupError::NoFactors);
    }
    let mut order = 1usize;
    for g in factors {
        order = order
            .checked_mul(g.order)
            .filter(|&o| o <= cap)
            .ok_or_else(|| GroupError::CapExceeded {
                orders: factors.iter().map(|g| g.order).collect(),
                cap,
            })?;
    }

    let decode = |mut v: usize| -> Vec<usize> {
        factors
            .iter()
            .map(|g| {
                let c = v % g.order;
                v /= g.order;
                c
            })
            .collect()
    };
    let encode = |coords: &[usize]| -> usize {
        factors
            .iter()
            .zip(coords)
            .rev()
            .fold(0, |acc, (g, &c)| acc * g.order + c)
    };

    let mut table = vec![vec![0usize; order]; order];
    let mut names = Vec::with_capacity(order);
    for (v, row) in table.iter_mut().enumerate() {
        let cv = decode(v);
        for (w, slot) in row.iter_mut().enumerate() {
            let cw = decode(w);
            let prod: Vec<usize> = factors
                .iter()
                .zip(cv.iter().zip(&cw))
                .map(|(g, (&a, &b))| g.mul(a, b))
                .collect();
            *slot = encode(&prod);
        }
        names.push(
            cv.iter()
                .zip(factors.iter())
                .map(|(&c, g)| g.names[c].clone())
                .collect::<Vec<_>>()
                .join(","),
        );
    }
    let name = factors.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join("x");
    let product = FiniteGroup { name, order, table, names };

    let embeddings = factors
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let image = (0..g.order)
                .map(|e| {
                    let mut coords = vec![0usize; factors.len()];
                    coords[i] = e;
                    encode(&coords)
                })
                .collect();
            GroupHom { source: (*g).clone(), target: product.clone(), image }
        })
        .collect();

    Ok((product, embeddings))
}

/// Cyclic group of order `n`, elements named `e, a, a2, ...`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs positive order");
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a{i}"),
        })
        .collect();
    FiniteGroup { name: format!("Z{n}"), order: n, table, names }
}

/// The Klein four-group: three commuting involutions.
pub fn klein_four() -> FiniteGroup {
    let table = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    FiniteGroup {
        name: "V4".to_string(),
        order: 4,
        table,
        names: vec!["e".into(), "a".into(), "b".into(), "ab".into()],
    }
}

/// Dihedral group of order `2n` (symmetries of the regular `n`-gon).
/// Elements `0..n` are the rotations `r^i`; `n..2n` are reflections `s r^i`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let order = 2 * n;
    let mut table = vec![vec![0usize; order]; order];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (ri, si) = (i % n, i >= n);
            let (rj, sj) = (j % n, j >= n);
            // r^i s = s r^{-i} gives the four sign cases below.
            *cell = match (si, sj) {
                (false, false) => (ri + rj) % n,
                (false, true) => n + (rj + n - ri) % n,
                (true, false) => n + (ri + rj) % n,
                (true, true) => (rj + n - ri) % n,
            };
        }
    }
    let names = (0..order)
        .map(|i| {
            let (ri, si) = (i % n, i >= n);
            match (si, ri) {
                (false, 0) => "e".to_string(),
                (false, 1) => "r".to_string(),
                (false, k) => format!("r{k}"),
                (true, 0) => "s".to_string(),
                (true, 1) => "sr".to_string(),
                (true, k) => format!("sr{k}"),
            }
        })
        .collect();
    FiniteGroup { name: format!("D{n}"), order, table, names }
}
