//! Integration tests for amalgamated systems: supplied base quotients,
//! overlap enforcement, and the glued-Cayley construction.

mod common;

use common::*;
use potency::graph::{b_classes, validate_action_graph};
use potency::group::cyclic;
use potency::surgery::{create_proper_site, SurgeryError};
use potency::witness::{
    hpotency_witness, quasipotency_witness, quasipotency_witness_with_base, uab_potency_witness,
    verify_assignment, TranscriptStep, WitnessError,
};
use potency::words::{Word, WordError};

/// The supplied order-8 base certifies order 2n for every small n, with the
/// witness graph growing linearly (d = 1 for this word and site).
#[test]
fn supplied_base_certifies_multiples_of_image_order() {
    let fs = z4_amalg_z4();
    let u = amalgam_word();
    for n in 1..=4u64 {
        let w = quasipotency_witness_with_base(&fs, order8_amalgam_base(), &u, n, 100_000)
            .expect("pipeline succeeds on the supplied base");
        assert_eq!(w.k_u, 2);
        assert_eq!(w.certified_order, 2 * n);
        assert_eq!(w.graph.vertex_count() as u64, 8 * n);
        validate_action_graph(&fs, &w.graph).unwrap();
        verify_assignment(&fs, &u, &w.permutations, w.k_u, w.n, w.certified_order).unwrap();
        assert!(w
            .transcript
            .iter()
            .any(|s| matches!(s, TranscriptStep::Base { kind, .. } if kind == "supplied")));
        // The base already has a proper site, so no site surgery appears.
        assert!(!w.transcript.iter().any(|s| matches!(s, TranscriptStep::SiteCreated { .. })));
    }
}

/// The supplied base's amalgam classes pair each vertex with its image
/// under the shared involution.
#[test]
fn supplied_base_amalgam_classes_have_size_two() {
    let fs = z4_amalg_z4();
    let base = order8_amalgam_base();
    let classes = b_classes(&fs, &base);
    for (v, w) in [(0u32, 2u32), (1, 3), (4, 6), (5, 7)] {
        assert!(classes.same_class(v, w));
    }
    assert!(!classes.same_class(0, 1));
    assert!(!classes.same_class(0, 4));
}

/// A structurally valid quotient that violates the overlap condition is
/// rejected before any surgery happens.
#[test]
fn broken_overlap_base_is_rejected() {
    let fs = z4_amalg_z4();
    let err = quasipotency_witness_with_base(&fs, bad_overlap_graph(), &amalgam_word(), 2, 100_000)
        .unwrap_err();
    assert!(matches!(err, WitnessError::Overlap(_)), "got {err:?}");
}

/// Without a supplied base there is nothing to build on for an amalgamated
/// system.
#[test]
fn amalgamated_systems_require_a_supplied_base() {
    let fs = z4_amalg_z4();
    let err = quasipotency_witness(&fs, &amalgam_word(), 2, 100_000).unwrap_err();
    assert!(matches!(err, WitnessError::BaseRequired), "got {err:?}");
}

/// Kernel-word witnesses are defined only over plain free products.
#[test]
fn kernel_word_witnesses_reject_amalgams() {
    let fs = z4_amalg_z4();
    let w = Word::new(vec![(0, 1), (1, 1), (0, 3), (1, 3)]);
    let err = hpotency_witness(&fs, &w, 2, 100_000).unwrap_err();
    assert!(
        matches!(err, WitnessError::Word(WordError::AmalgamPresent)),
        "got {err:?}"
    );
}

/// Site creation refuses a base that already has a proper site — the
/// two-layer construction is only for the all-zero-crossings case.
#[test]
fn site_creation_refuses_already_proper_base() {
    let fs = z4_amalg_z4();
    let base = order8_amalgam_base();
    let err = create_proper_site(&fs, &base, &amalgam_word()).unwrap_err();
    assert!(matches!(err, SurgeryError::SiteAlreadyProper { .. }), "got {err:?}");
}

/// Words spelled with explicit amalgam letters are normalized through the
/// shared subgroup: `a * a^2(of the other factor) * a` collapses to the
/// identity, and a mixed spelling folds into an honest two-syllable word.
#[test]
fn amalgam_letters_normalize_through_the_shared_subgroup() {
    let fs = z4_amalg_z4();

    // (1, a^2) is the shared involution, equal to (0, a^2): the word is
    // a * a^2 * a = a^4 = e, so the pipeline refuses it as trivial.
    let trivial = Word::new(vec![(0, 1), (1, 2), (0, 1)]);
    assert!(potency::words::reduce(&fs, &trivial).unwrap().is_empty());
    let err = quasipotency_witness_with_base(
        &fs,
        order8_amalgam_base(),
        &trivial,
        2,
        100_000,
    )
    .unwrap_err();
    assert!(matches!(err, WitnessError::Word(WordError::Trivial)), "got {err:?}");

    // a * a^2(shared) * c folds to a * c^3, a genuine two-syllable word.
    let folded = Word::new(vec![(0, 1), (1, 2), (1, 1)]);
    for n in 1..=3u64 {
        let w = quasipotency_witness_with_base(&fs, order8_amalgam_base(), &folded, n, 100_000)
            .expect("folded word certifies");
        assert_eq!(w.certified_order, w.k_u * n);
        verify_assignment(&fs, &folded, &w.permutations, w.k_u, w.n, w.certified_order).unwrap();
    }

    // A lone amalgam letter is torsion: certified at n = 1, refused beyond.
    let lone = Word::new(vec![(1, 2)]);
    let w =
        quasipotency_witness_with_base(&fs, order8_amalgam_base(), &lone, 1, 100_000).unwrap();
    assert_eq!(w.certified_order, w.k_u);
    let err = quasipotency_witness_with_base(&fs, order8_amalgam_base(), &lone, 2, 100_000)
        .unwrap_err();
    assert!(matches!(err, WitnessError::TorsionOnlyUnit { .. }), "got {err:?}");
}

/// Tampering with one permutation of a finished witness is caught by
/// re-verification.
#[test]
fn tampered_witness_fails_verification() {
    let fs = z4_amalg_z4();
    let u = amalgam_word();
    let mut w =
        quasipotency_witness_with_base(&fs, order8_amalgam_base(), &u, 2, 100_000).unwrap();
    verify_assignment(&fs, &u, &w.permutations, w.k_u, w.n, w.certified_order).unwrap();

    let (label, perm) = w.permutations.iter().next().map(|(l, p)| (*l, p.clone())).unwrap();
    let mut images = perm.as_slice().to_vec();
    images.swap(0, 1);
    let tampered = potency::perm::Permutation::from_images(images).unwrap();
    w.permutations.insert(label, tampered);

    let err =
        verify_assignment(&fs, &u, &w.permutations, w.k_u, w.n, w.certified_order).unwrap_err();
    assert!(
        matches!(
            err,
            WitnessError::NotHomomorphic { .. } | WitnessError::OracleMismatch { .. }
        ),
        "got {err:?}"
    );
}

/// Glued Cayley cycles certify u = ab of order exactly n, even when both
/// factors have the same order (no embedding available).
#[test]
fn glued_cycles_certify_exact_orders() {
    for n in 1..=4u64 {
        let w = uab_potency_witness(&cyclic(4), &cyclic(4), 1, 1, n, 100_000).unwrap();
        assert_eq!(w.k_u, 1);
        assert_eq!(w.certified_order, n);
        assert_eq!(w.n, n);
        verify_assignment(&w.system, &w.word, &w.permutations, 1, n, n).unwrap();
    }
}

/// Generators of equal element order but from groups of different sizes are
/// first embedded into the direct product, and the transcript says so.
#[test]
fn glued_cycles_embed_on_unequal_group_orders() {
    // a in Z2 and a^2 in Z4 both have order 2, but |Z2| != |Z4|.
    let w = uab_potency_witness(&cyclic(2), &cyclic(4), 1, 2, 5, 200_000).unwrap();
    assert_eq!(w.certified_order, 5);
    verify_assignment(&w.system, &w.word, &w.permutations, 1, 5, 5).unwrap();
    let embedded = w.transcript.iter().find_map(|s| match s {
        TranscriptStep::Glued { embedded, .. } => Some(*embedded),
        _ => None,
    });
    assert_eq!(embedded, Some(true));
}

/// Generators whose element orders differ are refused outright — the
/// coset-cycle pairing needs equal cycle lengths.
#[test]
fn glued_cycles_require_equal_element_orders() {
    let err = uab_potency_witness(&cyclic(2), &cyclic(3), 1, 1, 3, 100_000).unwrap_err();
    assert!(
        matches!(
            err,
            WitnessError::Surgery(SurgeryError::OrderMismatch { left: 2, right: 3 })
        ),
        "got {err:?}"
    );
}
