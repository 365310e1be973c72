//! Witness drivers and the independent permutation oracle.
//!
//! A potency witness is a homomorphism onto a finite permutation group under
//! which the chosen word's image has a certified order.  The drivers here
//! assemble one from the graph machinery — base graph, site selection or
//! creation, displacement arithmetic, layered cover — and then certify it
//! with the oracle in this module, which composes raw permutations and reads
//! the order off the cycle decomposition.  The oracle never consults traces
//! or crossing counts: an agreement between the two sides is evidence, not
//! circularity.  Any disagreement is a hard error carrying both numbers.

use crate::arith::{layer_quotient_lcm, ArithError};
use crate::graph::{
    b_classes, base_graph_direct_product, letter_label, overlap_condition, validate_action_graph,
    ActionGraph, GraphError, GraphViolation, Label, OverlapViolation,
};
use crate::group::{FiniteGroup, GroupError};
use crate::perm::{PermError, Permutation};
use crate::surgery::{
    create_proper_site, cyclic_cover, glue_cayley_cycles, LayeringSpec, Mark, SurgeryError,
};
use crate::trace::{all_u_cycle_reports, TraceError, UCycleReport};
use crate::words::{
    cartesian_power, cyclic_reduce, direct_image, reduce, validate_letters, FactorSystem,
    SystemError, Word, WordError,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Violation(#[from] GraphViolation),
    #[error(transparent)]
    Overlap(#[from] OverlapViolation),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("n must be at least 1")]
    ZeroN,
    #[error("word cyclically reduces into a single factor with image order {order}; for torsion elements only n = 1 is realizable, got n = {requested}")]
    TorsionOnlyUnit { order: u64, requested: u64 },
    #[error("amalgamated systems need a supplied, validated base graph")]
    BaseRequired,
    #[error("cycle lengths on the base are not all equal: {lengths:?}")]
    UnequalBaseLengths { lengths: Vec<u64> },
    #[error("word is not in the kernel of the direct-product map: image {coords:?}")]
    NotInKernel { coords: Vec<usize> },
    #[error("witness would need {needed} vertices, over the cap {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("layer quotient recombination gave {got}, expected {expected}")]
    QuotientMismatch { expected: u64, got: u64 },
    #[error("oracle disagrees: expected order {expected}, composed permutation has order {got}")]
    OracleMismatch { expected: u64, got: u64 },
    #[error("permutation assignment is not a homomorphism: factor {factor}, elements {x} and {y}")]
    NotHomomorphic { factor: usize, x: usize, y: usize },
    #[error("missing permutation for label {label}")]
    MissingLabel { label: Label },
    #[error("permutation degrees are inconsistent")]
    DegreeMismatch,
    #[error("certified order {certified} does not equal k_u * n = {k_u} * {n}")]
    BadCertifiedProduct { k_u: u64, n: u64, certified: u64 },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

/// One step of a witness construction, recorded for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TranscriptStep {
    Base { kind: String, vertices: usize, cycle_length: u64 },
    TorsionShortcut { order: u64 },
    SiteFound { vertex: u32, factor: usize },
    SiteCreated { marks: Vec<Mark>, vertex: u32, factor: usize, vertices: usize },
    Displacements { vertex: u32, factor: usize, ls: Vec<u64>, d: u64 },
    Quotients { quotients: Vec<u64>, lcm: u64 },
    Cover { layers: u64, vertices: usize },
    Glued { vertices: usize, embedded: bool, pattern: String, cycle_lengths: Vec<u64> },
    Certified { order: u64 },
}

/// A certified finite permutation quotient: the permutations define a
/// homomorphism from the factor system's free product, and the word's image
/// has exactly `certified_order` — equal to `k_u * n`, re-derived by the
/// oracle from the cycle decomposition.
#[derive(Debug, Clone)]
pub struct PotencyWitness {
    pub system: FactorSystem,
    pub word: Word,
    pub n: u64,
    pub k_u: u64,
    pub graph: ActionGraph,
    pub permutations: BTreeMap<Label, Permutation>,
    pub certified_order: u64,
    pub transcript: Vec<TranscriptStep>,
}

/// Reads the per-label bijections of a validated graph off as permutations.
pub fn graph_to_permutations(
    fs: &FactorSystem,
    g: &ActionGraph,
) -> Result<BTreeMap<Label, Permutation>, WitnessError> {
    validate_action_graph(fs, g)?;
    g.iter()
        .map(|(label, arr)| Ok((*label, Permutation::from_images(arr.to_vec())?)))
        .collect()
}

fn label_permutation<'p>(
    perms: &'p BTreeMap<Label, Permutation>,
    label: &Label,
) -> Result<&'p Permutation, WitnessError> {
    perms.get(label).ok_or(WitnessError::MissingLabel { label: *label })
}

/// The independent oracle: composes the letters' permutations along `w` and
/// returns the order of the composite (the least common multiple of its
/// cycle lengths).  Identity letters compose as the identity; nothing here
/// touches traces, crossing counts, or cover predictions.
pub fn order_of_word_image(
    fs: &FactorSystem,
    perms: &BTreeMap<Label, Permutation>,
    w: &Word,
) -> Result<u64, WitnessError> {
    validate_letters(fs, w)?;
    let degree = perms.values().next().map_or(0, Permutation::degree);
    let mut acc = Permutation::identity(degree);
    for letter in &w.0 {
        let Some(label) = letter_label(fs, letter.factor, letter.elem) else { continue };
        acc = acc.compose(label_permutation(perms, &label)?)?;
    }
    Ok(acc.order()?)
}

/// Re-verifies that the permutation assignment is a homomorphism: for every
/// factor and every element pair, composing the images matches the image of
/// the product, with the identity mapped to the identity permutation.
pub fn verify_homomorphism(
    fs: &FactorSystem,
    perms: &BTreeMap<Label, Permutation>,
    degree: usize,
) -> Result<(), WitnessError> {
    if perms.values().any(|p| p.degree() != degree) {
        return Err(WitnessError::DegreeMismatch);
    }
    let identity = Permutation::identity(degree);
    for (i, group) in fs.factors.iter().enumerate() {
        let image = |e: usize| -> Result<&Permutation, WitnessError> {
            match letter_label(fs, i, e) {
                None => Ok(&identity),
                Some(label) => label_permutation(perms, &label),
            }
        };
        for x in 0..group.order {
            for y in 0..group.order {
                let composed = image(x)?.compose(image(y)?)?;
                if &composed != image(group.mul(x, y))? {
                    return Err(WitnessError::NotHomomorphic { factor: i, x, y });
                }
            }
        }
    }
    Ok(())
}

/// Lexicographically least `(vertex, factor)` site at which some cycle has
/// nonzero net displacement, or `None` when every crossing cancels.
fn scan_proper_site(
    fs: &FactorSystem,
    g: &ActionGraph,
    reports: &[UCycleReport],
) -> Option<(u32, usize)> {
    let b = b_classes(fs, g);
    let mut proper: std::collections::BTreeSet<(u32, usize)> = Default::default();
    for r in reports {
        for (&(class, factor), c) in &r.crossings {
            if c.l() != 0 {
                proper.insert((class, factor));
            }
        }
    }
    if proper.is_empty() {
        return None;
    }
    for p in 0..g.vertex_count() as u32 {
        for k in 0..fs.factors.len() {
            if proper.contains(&(b.class_of[p as usize], k)) {
                return Some((p, k));
            }
        }
    }
    None
}

/// Quasipotency witness over a trivial amalgam: the base quotient is the
/// direct product of the factors, on which every cycle of `u` has length
/// equal to the image's order `k_u`; the pipeline then certifies `k_u * n`.
pub fn quasipotency_witness(
    fs: &FactorSystem,
    u: &Word,
    n: u64,
    cap: usize,
) -> Result<PotencyWitness, WitnessError> {
    fs.validate()?;
    if fs.amalgam.is_some() {
        return Err(WitnessError::BaseRequired);
    }
    let base = base_graph_direct_product(fs, cap)?;
    run_pipeline(fs, base, "direct-product", u, n, cap)
}

/// Quasipotency witness over a supplied base graph — the only route for
/// amalgamated systems, whose base quotients this tool does not search for.
/// The base must validate, satisfy the overlap condition, and give all
/// cycles of `u` one common length.
pub fn quasipotency_witness_with_base(
    fs: &FactorSystem,
    base: ActionGraph,
    u: &Word,
    n: u64,
    cap: usize,
) -> Result<PotencyWitness, WitnessError> {
    fs.validate()?;
    validate_action_graph(fs, &base)?;
    overlap_condition(fs, &base)?;
    run_pipeline(fs, base, "supplied", u, n, cap)
}

/// Witness with `certified_order = n` exactly, for words in the kernel of
/// the direct-product map: there `k_u = 1` because the word acts trivially
/// on the base.
pub fn hpotency_witness(
    fs: &FactorSystem,
    u: &Word,
    n: u64,
    cap: usize,
) -> Result<PotencyWitness, WitnessError> {
    fs.validate()?;
    if fs.amalgam.is_some() {
        return Err(WitnessError::Word(WordError::AmalgamPresent));
    }
    if reduce(fs, u)?.is_empty() {
        return Err(WitnessError::Word(WordError::Trivial));
    }
    let coords = direct_image(fs, u)?;
    if coords.iter().any(|&c| c != 0) {
        return Err(WitnessError::NotInKernel { coords });
    }
    let base = base_graph_direct_product(fs, cap)?;
    let witness = run_pipeline(fs, base, "direct-product", u, n, cap)?;
    if witness.k_u != 1 {
        return Err(WitnessError::Internal(format!(
            "kernel word measured k_u = {} on the direct-product base",
            witness.k_u
        )));
    }
    Ok(witness)
}

fn run_pipeline(
    fs: &FactorSystem,
    base: ActionGraph,
    base_kind: &str,
    u: &Word,
    n: u64,
    cap: usize,
) -> Result<PotencyWitness, WitnessError> {
    if n == 0 {
        return Err(WitnessError::ZeroN);
    }
    let reduced = reduce(fs, u)?;
    if reduced.is_empty() {
        return Err(WitnessError::Word(WordError::Trivial));
    }
    let (core, _conjugator) = cyclic_reduce(fs, &reduced)?;

    // Torsion shortcut: a word conjugate into one factor has finite order,
    // so only n = 1 admits a witness; the base graph itself certifies it.
    if core.len() < 2 {
        let perms = graph_to_permutations(fs, &base)?;
        verify_homomorphism(fs, &perms, base.vertex_count())?;
        let order = order_of_word_image(fs, &perms, u)?;
        if n != 1 {
            return Err(WitnessError::TorsionOnlyUnit { order, requested: n });
        }
        let transcript = vec![
            TranscriptStep::Base {
                kind: base_kind.into(),
                vertices: base.vertex_count(),
                cycle_length: order,
            },
            TranscriptStep::TorsionShortcut { order },
            TranscriptStep::Certified { order },
        ];
        return Ok(PotencyWitness {
            system: fs.clone(),
            word: u.clone(),
            n,
            k_u: order,
            graph: base,
            permutations: perms,
            certified_order: order,
            transcript,
        });
    }

    let reports = all_u_cycle_reports(fs, &base, &core)?;
    let m = reports[0].length;
    if reports.iter().any(|r| r.length != m) {
        return Err(WitnessError::UnequalBaseLengths {
            lengths: reports.iter().map(|r| r.length).collect(),
        });
    }
    let mut transcript = vec![TranscriptStep::Base {
        kind: base_kind.into(),
        vertices: base.vertex_count(),
        cycle_length: m,
    }];

    // Site selection: the least (vertex, factor) some cycle crosses
    // unevenly; when every crossing cancels, manufacture one on a double
    // cover without disturbing any cycle length.
    let (work, reports, site_vertex, site_factor) = match scan_proper_site(fs, &base, &reports) {
        Some((p, k)) => {
            transcript.push(TranscriptStep::SiteFound { vertex: p, factor: k });
            (base, reports, p, k)
        }
        None => {
            let site = create_proper_site(fs, &base, &core)?;
            transcript.push(TranscriptStep::SiteCreated {
                marks: site.marks.clone(),
                vertex: site.site_vertex,
                factor: site.site_factor,
                vertices: site.graph.vertex_count(),
            });
            let reports = all_u_cycle_reports(fs, &site.graph, &core)?;
            (site.graph, reports, site.site_vertex, site.site_factor)
        }
    };

    let ls: Vec<u64> = reports
        .iter()
        .map(|r| r.crossing_counts(site_vertex, site_factor).2)
        .filter(|&l| l != 0)
        .collect();
    if ls.is_empty() {
        return Err(WitnessError::Internal("selected site has no displaced cycle".into()));
    }
    let quotients = layer_quotient_lcm(n, &ls)?;
    if quotients.lcm != n {
        return Err(WitnessError::QuotientMismatch { expected: n, got: quotients.lcm });
    }
    let d = quotients.d;
    transcript.push(TranscriptStep::Displacements {
        vertex: site_vertex,
        factor: site_factor,
        ls,
        d,
    });
    transcript.push(TranscriptStep::Quotients {
        quotients: quotients.quotients.clone(),
        lcm: quotients.lcm,
    });

    let t = n.checked_mul(d).ok_or(ArithError::Overflow("n*d"))?;
    let layers = usize::try_from(t).map_err(|_| ArithError::Overflow("layer count"))?;
    let needed = work
        .vertex_count()
        .checked_mul(layers)
        .ok_or(ArithError::Overflow("cover size"))?;
    if needed > cap {
        return Err(WitnessError::CapExceeded { needed, cap });
    }
    let cover = cyclic_cover(
        fs,
        &work,
        &LayeringSpec {
            layers,
            marks: vec![Mark { vertex: site_vertex, factor: site_factor }],
        },
    )?;
    transcript.push(TranscriptStep::Cover { layers: t, vertices: cover.vertex_count() });

    let perms = graph_to_permutations(fs, &cover)?;
    verify_homomorphism(fs, &perms, cover.vertex_count())?;
    let expected = m.checked_mul(n).ok_or(ArithError::Overflow("m*n"))?;
    let certified = order_of_word_image(fs, &perms, u)?;
    if certified != expected {
        return Err(WitnessError::OracleMismatch { expected, got: certified });
    }
    transcript.push(TranscriptStep::Certified { order: certified });
    Ok(PotencyWitness {
        system: fs.clone(),
        word: u.clone(),
        n,
        k_u: m,
        graph: cover,
        permutations: perms,
        certified_order: certified,
        transcript,
    })
}

/// Witness that the product word `a b` of two embedded generators takes
/// order exactly `n`, built by gluing layered Cayley graphs; `k_u = 1`.
pub fn uab_potency_witness(
    a_group: &FiniteGroup,
    b_group: &FiniteGroup,
    a_elem: usize,
    b_elem: usize,
    n: u64,
    cap: usize,
) -> Result<PotencyWitness, WitnessError> {
    if n == 0 {
        return Err(WitnessError::ZeroN);
    }
    a_group.validate().map_err(GroupError::Invalid)?;
    b_group.validate().map_err(GroupError::Invalid)?;
    let layers = usize::try_from(n).map_err(|_| ArithError::Overflow("layer count"))?;
    let outcome = glue_cayley_cycles(a_group, b_group, a_elem, b_elem, layers, cap)?;
    let perms = graph_to_permutations(&outcome.system, &outcome.graph)?;
    verify_homomorphism(&outcome.system, &perms, outcome.graph.vertex_count())?;
    let certified = order_of_word_image(&outcome.system, &perms, &outcome.word)?;
    if certified != n {
        return Err(WitnessError::OracleMismatch { expected: n, got: certified });
    }
    let transcript = vec![
        TranscriptStep::Glued {
            vertices: outcome.graph.vertex_count(),
            embedded: outcome.embedded,
            pattern: outcome.pattern.clone(),
            cycle_lengths: outcome.cycle_lengths.clone(),
        },
        TranscriptStep::Certified { order: certified },
    ];
    Ok(PotencyWitness {
        system: outcome.system,
        word: outcome.word,
        n,
        k_u: 1,
        graph: outcome.graph,
        permutations: perms,
        certified_order: certified,
        transcript,
    })
}

/// The computable content of the cyclic-amalgam reduction: the least powers
/// `n_u`, `n_v` taking `u` and `v` into the kernels of their systems'
/// direct-product maps, together with kernel witnesses for `u^{n_u}` and
/// `v^{n_v}` at the requested order.  The residual-finiteness conclusion the
/// reduction feeds (separating `w` in the amalgamated product) rests on an
/// external theorem and is reported as out of scope, not computed.
#[derive(Debug)]
pub struct ReductionReport {
    pub n_u: u64,
    pub n_v: u64,
    pub witness_u: PotencyWitness,
    pub witness_v: PotencyWitness,
    pub w: Word,
    pub out_of_scope: String,
}

pub fn cyclic_amalgam_reduction(
    f_sys: &FactorSystem,
    g_sys: &FactorSystem,
    u: &Word,
    v: &Word,
    w: &Word,
    n: u64,
    cap: usize,
) -> Result<ReductionReport, WitnessError> {
    f_sys.validate()?;
    g_sys.validate()?;
    let n_u = cartesian_power(f_sys, u)?;
    let n_v = cartesian_power(g_sys, v)?;
    let witness_u = hpotency_witness(f_sys, &u.pow(n_u as usize), n, cap)?;
    let witness_v = hpotency_witness(g_sys, &v.pow(n_v as usize), n, cap)?;
    // `w` lives in the amalgamated product of the two systems; validate its
    // letters against the combined factor list (F factors, then G factors).
    let combined = FactorSystem::free_product(
        f_sys.factors.iter().chain(g_sys.factors.iter()).cloned().collect(),
    );
    validate_letters(&combined, w)?;
    Ok(ReductionReport {
        n_u,
        n_v,
        witness_u,
        witness_v,
        w: w.clone(),
        out_of_scope: "separating the target element in the amalgamated product follows from \
                       the kernel witnesses by an external residual-finiteness theorem; that \
                       conclusion is out of scope for this tool"
            .into(),
    })
}

/// Full re-check of a witness-shaped assignment, used by the CLI `verify`
/// command: degrees agree, the assignment is a homomorphism, the oracle
/// order matches `certified`, and `certified = k_u * n`.
pub fn verify_assignment(
    fs: &FactorSystem,
    u: &Word,
    perms: &BTreeMap<Label, Permutation>,
    k_u: u64,
    n: u64,
    certified: u64,
) -> Result<(), WitnessError> {
    fs.validate()?;
    let degree = perms.values().next().map_or(0, Permutation::degree);
    verify_homomorphism(fs, perms, degree)?;
    let got = order_of_word_image(fs, perms, u)?;
    if got != certified {
        return Err(WitnessError::OracleMismatch { expected: certified, got });
    }
    match k_u.checked_mul(n) {
        Some(p) if p == certified => Ok(()),
        _ => Err(WitnessError::BadCertifiedProduct { k_u, n, certified }),
    }
}
