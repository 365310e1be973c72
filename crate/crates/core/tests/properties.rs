//! Property-based tests: algebraic laws of word arithmetic, trace
//! invariants, surgery safety, and serialization round-trips.

mod common;

use common::*;
use potency::arith::{gcd_slice, layer_quotient_lcm};
use potency::graph::{
    b_classes, base_graph_direct_product, letter_label, validate_action_graph, Label,
};
use potency::group::cyclic;
use potency::io::{
    doc_to_graph, graph_to_doc, label_key, parse_label_key, to_json_pretty, witness_to_doc,
};
use potency::perm::Permutation;
use potency::surgery::{cyclic_cover, predicted_cover_cycle_length, LayeringSpec, Mark};
use potency::trace::{all_u_cycle_reports, trace_u_cycle, Crossing};
use potency::witness::{
    graph_to_permutations, quasipotency_witness, verify_assignment, verify_homomorphism,
    WitnessError,
};
use potency::words::{
    cartesian_power, cyclic_reduce, direct_image, is_cyclically_reduced, reduce, word_inverse,
    FactorSystem, Word,
};
use potency::FiniteGroup;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

/// Fixed palette of trivial-amalgam systems for word-law tests.
fn palette(index: usize) -> FactorSystem {
    match index % 4 {
        0 => FactorSystem::free_product(vec![cyclic(2), cyclic(3)]),
        1 => FactorSystem::free_product(vec![cyclic(2), cyclic(2)]),
        2 => FactorSystem::free_product(vec![cyclic(4), cyclic(3)]),
        _ => FactorSystem::free_product(vec![cyclic(2), cyclic(3), cyclic(2)]),
    }
}

/// Composes the base-graph permutations along `w` (identity letters skipped).
/// An independent image of the word in the direct-product quotient.
fn word_permutation(
    fs: &FactorSystem,
    perms: &BTreeMap<Label, Permutation>,
    degree: usize,
    w: &Word,
) -> Permutation {
    let mut acc = Permutation::identity(degree);
    for letter in &w.0 {
        if let Some(label) = letter_label(fs, letter.factor, letter.elem) {
            acc = acc.compose(&perms[&label]).expect("degrees agree");
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Reduction is idempotent and does not change the element: the reduced
    /// word acts as the same permutation on the direct-product quotient.
    #[test]
    fn reduce_idempotent_and_image_preserving(sys in 0usize..4, seed in any::<u64>()) {
        let fs = palette(sys);
        let mut rng = StdRng::seed_from_u64(seed);
        let w = random_word(&mut rng, &fs, 10);
        let r = reduce(&fs, &w).unwrap();
        prop_assert_eq!(reduce(&fs, &r).unwrap(), r.clone());
        // No identity letters, no adjacent same-factor letters.
        for letter in &r.0 {
            prop_assert_ne!(letter.elem, 0);
        }
        for pair in r.0.windows(2) {
            prop_assert_ne!(pair[0].factor, pair[1].factor);
        }
        let g = base_graph_direct_product(&fs, 10_000).unwrap();
        let perms = graph_to_permutations(&fs, &g).unwrap();
        let d = g.vertex_count();
        prop_assert_eq!(
            word_permutation(&fs, &perms, d, &w),
            word_permutation(&fs, &perms, d, &r)
        );
    }

    /// Cyclic reduction produces a conjugate: w = c * core * c^{-1}, and the
    /// core really is cyclically reduced.
    #[test]
    fn cyclic_reduce_is_conjugation(sys in 0usize..4, seed in any::<u64>()) {
        let fs = palette(sys);
        let mut rng = StdRng::seed_from_u64(seed);
        let w = random_word(&mut rng, &fs, 10);
        let (core, conj) = cyclic_reduce(&fs, &w).unwrap();
        prop_assert!(is_cyclically_reduced(&fs, &core).unwrap());
        let rebuilt = conj.concat(&core).concat(&word_inverse(&fs, &conj).unwrap());
        prop_assert_eq!(reduce(&fs, &rebuilt).unwrap(), reduce(&fs, &w).unwrap());
    }

    /// The direct-product image is a homomorphism.
    #[test]
    fn direct_image_is_homomorphic(sys in 0usize..4, seed in any::<u64>()) {
        let fs = palette(sys);
        let mut rng = StdRng::seed_from_u64(seed);
        let w1 = random_word(&mut rng, &fs, 6);
        let w2 = random_word(&mut rng, &fs, 6);
        let i1 = direct_image(&fs, &w1).unwrap();
        let i2 = direct_image(&fs, &w2).unwrap();
        let joint = direct_image(&fs, &w1.concat(&w2)).unwrap();
        for (k, &c) in joint.iter().enumerate() {
            prop_assert_eq!(c, fs.factors[k].mul(i1[k], i2[k]));
        }
    }

    /// `cartesian_power` is the least power landing in the kernel of the
    /// direct-product map, checked by brute force.
    #[test]
    fn cartesian_power_matches_brute_force(sys in 0usize..4, seed in any::<u64>()) {
        let fs = palette(sys);
        let mut rng = StdRng::seed_from_u64(seed);
        let w = random_cyclically_reduced_word(&mut rng, &fs, 6);
        prop_assume!(w.len() >= 2);
        let n = cartesian_power(&fs, &w).unwrap();
        let image = direct_image(&fs, &w).unwrap();
        let mut coords = vec![0usize; fs.factors.len()];
        let mut brute = None;
        for m in 1..=512u64 {
            for (k, c) in coords.iter_mut().enumerate() {
                *c = fs.factors[k].mul(*c, image[k]);
            }
            if coords.iter().all(|&c| c == 0) {
                brute = Some(m);
                break;
            }
        }
        prop_assert_eq!(Some(n), brute);
    }

    /// Layer quotient recombination always recovers n.
    #[test]
    fn layer_quotients_recombine_to_n(
        n in 1u64..=40,
        ls in prop::collection::vec(1u64..=30, 1..=5),
    ) {
        let q = layer_quotient_lcm(n, &ls).unwrap();
        prop_assert_eq!(q.lcm, n);
        prop_assert_eq!(q.d, gcd_slice(&ls));
        prop_assert_eq!(q.quotients.len(), ls.len());
    }

    /// Trace length is a property of the group element, not the spelling:
    /// rotating the word shifts the cycle but keeps its length.
    #[test]
    fn trace_length_is_rotation_invariant(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let fs = random_system(&mut rng);
        let u = random_cyclically_reduced_word(&mut rng, &fs, 5);
        let g = base_graph_direct_product(&fs, 4096).unwrap();
        let start = rng.gen_range(0..g.vertex_count()) as u32;
        let report = trace_u_cycle(&fs, &g, &u, start).unwrap();
        for k in 1..u.len() {
            let rotated = Word([&u.0[k..], &u.0[..k]].concat());
            // After k letters the cycle sits at path[k]; the rotated word's
            // cycle from there has the same length.
            let shifted = trace_u_cycle(&fs, &g, &rotated, report.path[k]).unwrap();
            prop_assert_eq!(shifted.length, report.length);
        }
    }

    /// Crossing tallies match an independent recount straight from the
    /// definition: a factor-k edge scores plus at its target's class and
    /// minus at its source's class, and the per-edge contributions add up.
    #[test]
    fn crossing_counts_match_recount(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let fs = random_system(&mut rng);
        let u = random_cyclically_reduced_word(&mut rng, &fs, 5);
        let g = base_graph_direct_product(&fs, 4096).unwrap();
        let classes = b_classes(&fs, &g);
        for report in all_u_cycle_reports(&fs, &g, &u).unwrap() {
            let mut recount: BTreeMap<(u32, usize), Crossing> = BTreeMap::new();
            let total = report.path.len();
            for e in 0..total {
                let Label::Tagged { factor, .. } = report.labels[e % report.labels.len()] else {
                    continue;
                };
                let src = report.path[e];
                let dst = report.path[(e + 1) % total];
                recount.entry((classes.class_of[dst as usize], factor)).or_default().plus += 1;
                recount.entry((classes.class_of[src as usize], factor)).or_default().minus += 1;
            }
            recount.retain(|_, c| c.plus != 0 || c.minus != 0);
            let mut reported = report.crossings.clone();
            reported.retain(|_, c| c.plus != 0 || c.minus != 0);
            prop_assert_eq!(recount, reported);
        }
    }

    /// Serialization round-trips are lossless, and re-serialization is
    /// byte-identical.
    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let group = random_small_group(&mut rng);
        let text = to_json_pretty(&group).unwrap();
        let back: FiniteGroup = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &group);
        prop_assert_eq!(to_json_pretty(&back).unwrap(), text);

        let fs = random_system(&mut rng);
        let sys_text = to_json_pretty(&fs).unwrap();
        let fs_back: FactorSystem = serde_json::from_str(&sys_text).unwrap();
        prop_assert_eq!(&fs_back, &fs);

        let g = base_graph_direct_product(&fs, 4096).unwrap();
        let doc = graph_to_doc(&g);
        let graph_text = to_json_pretty(&doc).unwrap();
        let doc_back = serde_json::from_str(&graph_text).unwrap();
        prop_assert_eq!(&doc, &doc_back);
        let g_back = doc_to_graph(&doc_back).unwrap();
        prop_assert_eq!(graph_to_doc(&g_back), doc);

        let w = random_word(&mut rng, &fs, 8);
        let word_text = to_json_pretty(&w).unwrap();
        let w_back: Word = serde_json::from_str(&word_text).unwrap();
        prop_assert_eq!(w_back, w);

        let spec = LayeringSpec {
            layers: rng.gen_range(1..9),
            marks: vec![Mark { vertex: 0, factor: 0 }],
        };
        let spec_text = to_json_pretty(&spec).unwrap();
        prop_assert!(spec_text.contains("\"t\""));
        let spec_back: LayeringSpec = serde_json::from_str(&spec_text).unwrap();
        prop_assert_eq!(spec_back, spec);

        for label in g.labels() {
            let key = label_key(&fs, label);
            prop_assert_eq!(parse_label_key(&fs, &key).unwrap(), *label);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Single-mark covers validate, and every cycle's length obeys the
    /// layer-stretch formula t/gcd(t, l) * base length.
    #[test]
    fn marked_covers_validate_and_stretch_cycles(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let fs = random_system(&mut rng);
        let u = random_cyclically_reduced_word(&mut rng, &fs, 6);
        let g = base_graph_direct_product(&fs, 512).unwrap();
        let mark = Mark {
            vertex: rng.gen_range(0..g.vertex_count()) as u32,
            factor: rng.gen_range(0..fs.factors.len()),
        };
        let t = rng.gen_range(1..=8usize);
        let cover = cyclic_cover(&fs, &g, &LayeringSpec { layers: t, marks: vec![mark] }).unwrap();
        validate_action_graph(&fs, &cover).unwrap();
        prop_assert_eq!(cover.vertex_count(), g.vertex_count() * t);
        for report in all_u_cycle_reports(&fs, &g, &u).unwrap() {
            let predicted =
                predicted_cover_cycle_length(&report, mark.vertex, mark.factor, t as u64);
            let measured = trace_u_cycle(&fs, &cover, &u, report.base_vertex).unwrap().length;
            prop_assert_eq!(measured, predicted);
        }
    }

    /// Multi-mark covers (one mark per factor, distinct orbits) stay valid
    /// and their label bijections still form a homomorphism.
    #[test]
    fn multi_mark_covers_stay_homomorphic(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let fs = random_system(&mut rng);
        let g = base_graph_direct_product(&fs, 512).unwrap();
        let marks: Vec<Mark> = (0..fs.factors.len())
            .map(|factor| Mark { vertex: rng.gen_range(0..g.vertex_count()) as u32, factor })
            .collect();
        let t = rng.gen_range(1..=6usize);
        let cover = cyclic_cover(&fs, &g, &LayeringSpec { layers: t, marks }).unwrap();
        validate_action_graph(&fs, &cover).unwrap();
        let perms = graph_to_permutations(&fs, &cover).unwrap();
        verify_homomorphism(&fs, &perms, cover.vertex_count()).unwrap();
    }

    /// The full quasipotency pipeline on random systems: whenever it
    /// produces a witness, the certified order is k_u * n and the witness
    /// re-verifies from scratch; the only error tolerated is the explicit
    /// degenerate-site refusal.
    #[test]
    fn random_quasipotency_witnesses_verify(seed in any::<u64>(), n in 1u64..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let fs = FactorSystem::free_product(vec![
            random_small_group(&mut rng),
            random_small_group(&mut rng),
        ]);
        let u = random_cyclically_reduced_word(&mut rng, &fs, 4);
        prop_assume!(u.len() >= 2);
        match quasipotency_witness(&fs, &u, n, 100_000) {
            Ok(w) => {
                prop_assert_eq!(w.certified_order, w.k_u * n);
                verify_assignment(&fs, &u, &w.permutations, w.k_u, w.n, w.certified_order)
                    .unwrap();
                let doc = witness_to_doc(&w);
                prop_assert_eq!(doc.certified_order, w.certified_order);
            }
            Err(WitnessError::Surgery(potency::surgery::SurgeryError::DegenerateSite(_))) => {}
            Err(other) => prop_assert!(false, "unexpected pipeline error: {other}"),
        }
    }
}

/// Deterministic check that the witness graph size follows |base| * n * d.
#[test]
fn witness_size_follows_layering_bound() {
    let fs = FactorSystem::free_product(vec![cyclic(2), cyclic(3)]);
    let u = Word::new(vec![(0, 1), (1, 1), (0, 1), (1, 2)]);
    for n in 1..=5u64 {
        let w = quasipotency_witness(&fs, &u, n, 100_000).unwrap();
        let mut base_vertices = w.graph.vertex_count() as u64;
        let mut d = 1;
        for step in &w.transcript {
            match step {
                potency::witness::TranscriptStep::Base { vertices, .. } => {
                    base_vertices = *vertices as u64;
                }
                potency::witness::TranscriptStep::SiteCreated { vertices, .. } => {
                    base_vertices = *vertices as u64;
                }
                potency::witness::TranscriptStep::Displacements { d: dd, .. } => d = *dd,
                _ => {}
            }
        }
        assert_eq!(w.graph.vertex_count() as u64, base_vertices * n * d);
    }
}

/// The amalgam fixture's supplied base is genuinely valid, and the
/// deliberately bad quotient fails exactly the overlap condition.
#[test]
fn amalgam_fixture_sanity() {
    let fs = z4_amalg_z4();
    fs.validate().unwrap();
    let base = order8_amalgam_base();
    validate_action_graph(&fs, &base).unwrap();
    potency::graph::overlap_condition(&fs, &base).unwrap();

    let bad = bad_overlap_graph();
    validate_action_graph(&fs, &bad).unwrap();
    assert!(potency::graph::overlap_condition(&fs, &bad).is_err());
}

/// Every cycle of the amalgam word on the supplied base has length 2 — the
/// image order — and the graph gives vertex 0, factor 0 a proper site.
#[test]
fn amalgam_base_cycles_and_sites() {
    let fs = z4_amalg_z4();
    let base = order8_amalgam_base();
    let u = amalgam_word();
    let reports = all_u_cycle_reports(&fs, &base, &u).unwrap();
    assert_eq!(reports.len(), 4);
    for r in &reports {
        assert_eq!(r.length, 2);
        assert_eq!(r.crossing_counts(0, 0).2, 1);
    }
    let perms = graph_to_permutations(&fs, &base).unwrap();
    verify_homomorphism(&fs, &perms, base.vertex_count()).unwrap();
}

/// Mixed zero/nonzero displacement arithmetic: gcd of the nonzero values
/// only, quotients multiply back to n.
#[test]
fn layer_quotients_worked_example() {
    let q = layer_quotient_lcm(6, &[2, 4]).unwrap();
    assert_eq!(q.d, 2);
    // t = 12; cycles stretch by 12/gcd(12, 2) = 6 and 12/gcd(12, 4) = 3,
    // whose lcm recombines to n = 6.
    assert_eq!(q.quotients, vec![6, 3]);
    assert_eq!(q.lcm, 6);
}
