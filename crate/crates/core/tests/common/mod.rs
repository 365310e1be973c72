//! Shared fixtures and random-case generators for the integration suites.
#![allow(dead_code)] // each test target uses a different subset

use potency::graph::{ActionGraph, Label};
use potency::group::{cyclic, dihedral, klein_four, FiniteGroup};
use potency::words::{Amalgam, FactorSystem, Letter, Word};
use rand::rngs::StdRng;
use rand::Rng;

/// Z4 *_{Z2} Z4: two cyclic factors of order four sharing their order-two
/// subgroup, with `a^2` of factor 0 identified with `a^2` of factor 1.
pub fn z4_amalg_z4() -> FactorSystem {
    FactorSystem {
        factors: vec![cyclic(4), cyclic(4)],
        amalgam: Some(Amalgam {
            subgroups: vec![vec![0, 2], vec![0, 2]],
            maps: vec![vec![0, 1], vec![0, 1]],
        }),
    }
}

/// Base quotient for [`z4_amalg_z4`]: the order-8 group
/// `(Z4 x Z4) / <(2, 2)>`, acted on by right multiplication.  Vertices are
/// coset representatives `(i, j)` with `i` mod 4 and `j` mod 2, indexed as
/// `i + 4 j`; the shared involution moves `(i, j)` to `(i + 2, j)`.
///
/// On this graph the word `(0,a)(1,a)` has image order 2, all four of its
/// cycles have length 2, and vertex 0 with factor 0 is already a proper
/// site, so the quasipotency pipeline runs without site creation.
pub fn order8_amalgam_base() -> ActionGraph {
    let idx = |i: usize, j: usize| -> u32 {
        let (i, j) = (i % 4, j % 4);
        // Normalize the representative: (i, j) ~ (i + 2, j + 2).
        if j >= 2 { ((i + 2) % 4 + 4 * (j - 2)) as u32 } else { (i + 4 * j) as u32 }
    };
    let mut parts: Vec<(Label, Vec<u32>)> = Vec::new();
    for (elem, shift) in [(1usize, 1usize), (3, 3)] {
        let mut arr = vec![0u32; 8];
        for i in 0..4 {
            for j in 0..2 {
                arr[i + 4 * j] = idx(i + shift, j);
            }
        }
        parts.push((Label::Tagged { factor: 0, elem }, arr));
    }
    for (elem, shift) in [(1usize, 1usize), (3, 3)] {
        let mut arr = vec![0u32; 8];
        for i in 0..4 {
            for j in 0..2 {
                arr[i + 4 * j] = idx(i, j + shift);
            }
        }
        parts.push((Label::Tagged { factor: 1, elem }, arr));
    }
    let mut arr = vec![0u32; 8];
    for i in 0..4 {
        for j in 0..2 {
            arr[i + 4 * j] = idx(i + 2, j);
        }
    }
    parts.push((Label::Amalgam { elem: 1 }, arr));
    let names = (0..8)
        .map(|v| format!("({},{})", v % 4, v / 4))
        .collect();
    ActionGraph::from_parts(8, parts, Some(names)).expect("fixture graph is well formed")
}

/// A 4-vertex quotient of [`z4_amalg_z4`] (both generators act as +1 on Z4)
/// that satisfies the action-graph properties but breaks the overlap
/// condition: the two factor subgraphs share all four vertices, which span
/// two amalgam classes.
pub fn bad_overlap_graph() -> ActionGraph {
    let shift = |s: usize| -> Vec<u32> { (0..4).map(|v| ((v + s) % 4) as u32).collect() };
    ActionGraph::from_parts(
        4,
        vec![
            (Label::Tagged { factor: 0, elem: 1 }, shift(1)),
            (Label::Tagged { factor: 0, elem: 3 }, shift(3)),
            (Label::Tagged { factor: 1, elem: 1 }, shift(1)),
            (Label::Tagged { factor: 1, elem: 3 }, shift(3)),
            (Label::Amalgam { elem: 1 }, shift(2)),
        ],
        None,
    )
    .expect("graph is well formed even though overlap fails")
}

/// The word `(0, a)(1, a)` over [`z4_amalg_z4`].
pub fn amalgam_word() -> Word {
    Word::new(vec![(0, 1), (1, 1)])
}

/// Picks a small group of order at most 8 from a fixed palette.
pub fn random_small_group(rng: &mut StdRng) -> FiniteGroup {
    match rng.gen_range(0..8) {
        0 => cyclic(2),
        1 => cyclic(3),
        2 => cyclic(4),
        3 => cyclic(5),
        4 => cyclic(7),
        5 => cyclic(8),
        6 => klein_four(),
        _ => dihedral(rng.gen_range(2..=4)),
    }
}

/// A free product of 2 or 3 random small factors.
pub fn random_system(rng: &mut StdRng) -> FactorSystem {
    let k = rng.gen_range(2..=3);
    FactorSystem::free_product((0..k).map(|_| random_small_group(rng)).collect())
}

/// A cyclically reduced word over `fs` with at most `max_syllables`
/// syllables: factors alternate and, for words of two or more syllables,
/// the first and last factors differ.
pub fn random_cyclically_reduced_word(
    rng: &mut StdRng,
    fs: &FactorSystem,
    max_syllables: usize,
) -> Word {
    let k = fs.factors.len();
    let len = rng.gen_range(1..=max_syllables.max(1));
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    let mut prev: Option<usize> = None;
    for _ in 0..len {
        let factor = loop {
            let f = rng.gen_range(0..k);
            if Some(f) != prev {
                break f;
            }
        };
        let order = fs.factors[factor].order;
        letters.push(Letter { factor, elem: rng.gen_range(1..order) });
        prev = Some(factor);
    }
    if letters.len() >= 2 && letters[0].factor == letters[letters.len() - 1].factor {
        letters.pop();
    }
    Word(letters)
}

/// An arbitrary (possibly reducible) word over `fs`.
pub fn random_word(rng: &mut StdRng, fs: &FactorSystem, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let k = fs.factors.len();
    Word(
        (0..len)
            .map(|_| {
                let factor = rng.gen_range(0..k);
                Letter { factor, elem: rng.gen_range(0..fs.factors[factor].order) }
            })
            .collect(),
    )
}
