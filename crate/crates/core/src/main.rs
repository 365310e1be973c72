//! Command-line front end: JSON in, JSON/DOT out.
//!
//! Exit codes: 0 success, 1 I/O or usage, 2 validation failure,
//! 3 precondition failure, 4 verification failure.  Human-readable summaries
//! go to stderr; machine-readable documents go to stdout or `--out`.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use potency::graph::{
    base_graph_direct_product, subgraph_of, validate_action_graph, ActionGraph, SubgraphScope,
};
use potency::group::FiniteGroup;
use potency::io::{
    doc_permutations, doc_to_graph, graph_to_doc, graph_to_dot, read_json, to_json_pretty,
    trace_to_doc, witness_to_doc, write_text, GraphDoc, IoError, WitnessDoc,
};
use potency::surgery::{
    create_proper_site, cut_and_shift, cyclic_cover, glue_cayley_cycles, LayeringSpec, Mark,
    SurgeryError,
};
use potency::trace::{all_u_cycle_reports, trace_u_cycle};
use potency::witness::{
    hpotency_witness, quasipotency_witness, quasipotency_witness_with_base, uab_potency_witness,
    verify_assignment, PotencyWitness, WitnessError,
};
use potency::words::{FactorSystem, Word};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const DEFAULT_CAP: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "potency",
    version,
    about = "Construct and certify finite permutation quotients of free products \
             in which a chosen element's image has a prescribed order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a group table, factor system, or action graph
    Validate {
        /// Group JSON file to validate
        #[arg(long)]
        group: Option<PathBuf>,
        /// Factor-system JSON file to validate
        #[arg(long)]
        system: Option<PathBuf>,
        /// Action-graph JSON file to validate against --system
        #[arg(long, requires = "system")]
        graph: Option<PathBuf>,
    },
    /// Build the direct-product base graph of a trivial-amalgam system
    BaseGraph {
        #[arg(long)]
        system: PathBuf,
        /// Maximum vertex count
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the cycles of a word on a graph
    Trace {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Word JSON file: [{"factor": i, "elem": e}, ...]
        #[arg(long)]
        word: PathBuf,
        /// Trace only the cycle through this vertex (all cycles when omitted)
        #[arg(long)]
        vertex: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph surgeries: layered covers and reconnections
    #[command(subcommand)]
    Surgery(SurgeryCmd),
    /// Witness drivers: build and certify a permutation quotient
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Re-check a witness document from scratch
    Verify {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        word: PathBuf,
        /// Witness JSON file to re-verify
        #[arg(long)]
        witness: PathBuf,
    },
    /// Export an action graph as DOT
    ExportDot {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SurgeryCmd {
    /// Cyclic t-layer cover with marked classes deflecting factor edges
    GammaT {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Layer count (may be omitted when the marks file carries "t")
        #[arg(long)]
        t: Option<usize>,
        /// Marks JSON: [{"vertex": v, "factor": k}, ...] or {"t": n, "marks": [...]}
        #[arg(long)]
        marks: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double cover giving a word with all-zero crossings a proper site
    Lemma2 {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut a finite-factor orbit and shift free edges across n layers
    Thm4 {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Vertex whose finite-factor orbit is the cut locus
        #[arg(long)]
        orbit_of: u32,
        /// Layer count
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue layered Cayley cycles of two groups along generators a, b
    Thm5 {
        #[arg(long)]
        group_a: PathBuf,
        #[arg(long)]
        group_b: PathBuf,
        /// Element index of the generator in group A
        #[arg(long)]
        a: usize,
        /// Element index of the generator in group B
        #[arg(long)]
        b: usize,
        /// Target order of the product word a b
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the glued construction's factor system here
        #[arg(long)]
        system_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct WitnessCommonArgs {
    /// Requested order multiplier n
    #[arg(long)]
    n: u64,
    /// Maximum witness vertex count
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Quasipotency witness: certified order k_u * n
    Quasi {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        word: PathBuf,
        /// Base graph JSON (required for amalgamated systems)
        #[arg(long)]
        base: Option<PathBuf>,
        #[command(flatten)]
        common: WitnessCommonArgs,
    },
    /// Kernel-word witness: certified order exactly n
    Hpotent {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[command(flatten)]
        common: WitnessCommonArgs,
    },
    /// Witness that the product of two embedded generators has order n
    Uab {
        #[arg(long)]
        group_a: PathBuf,
        #[arg(long)]
        group_b: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        common: WitnessCommonArgs,
        /// Also write the glued construction's factor system here
        #[arg(long)]
        system_out: Option<PathBuf>,
        /// Also write the certified word here
        #[arg(long)]
        word_out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::new(1, e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::new(1, message)
}

fn validation(message: impl std::fmt::Display) -> Failure {
    Failure::new(2, message.to_string())
}

fn precondition(message: impl std::fmt::Display) -> Failure {
    Failure::new(3, message.to_string())
}

fn verification(message: impl std::fmt::Display) -> Failure {
    Failure::new(4, message.to_string())
}

fn surgery_failure(e: SurgeryError) -> Failure {
    use SurgeryError::*;
    match &e {
        SearchExhausted { .. } => verification(e),
        Graph(_) | Overlap(_) | Group(_) => validation(e),
        NoLayers => usage(e.to_string()),
        _ => precondition(e),
    }
}

fn witness_failure(e: WitnessError) -> Failure {
    use WitnessError::*;
    match &e {
        OracleMismatch { .. }
        | NotHomomorphic { .. }
        | BadCertifiedProduct { .. }
        | QuotientMismatch { .. }
        | MissingLabel { .. }
        | DegreeMismatch
        | Perm(_)
        | Internal(_) => verification(e),
        Surgery(s) => {
            let code = surgery_failure_code(s);
            Failure::new(code, e.to_string())
        }
        System(_) | Group(_) | Violation(_) | Overlap(_) | Graph(_) => validation(e),
        ZeroN => usage(e.to_string()),
        _ => precondition(e),
    }
}

fn surgery_failure_code(e: &SurgeryError) -> u8 {
    use SurgeryError::*;
    match e {
        SearchExhausted { .. } => 4,
        Graph(_) | Overlap(_) | Group(_) => 2,
        NoLayers => 1,
        _ => 3,
    }
}

fn load_system(path: &Path) -> Result<FactorSystem, Failure> {
    let fs: FactorSystem = read_json(path)?;
    fs.validate().map_err(validation)?;
    Ok(fs)
}

fn load_graph(fs: &FactorSystem, path: &Path) -> Result<ActionGraph, Failure> {
    let doc: GraphDoc = read_json(path)?;
    let g = doc_to_graph(&doc).map_err(validation)?;
    validate_action_graph(fs, &g).map_err(validation)?;
    Ok(g)
}

fn load_word(path: &Path) -> Result<Word, Failure> {
    Ok(read_json(path)?)
}

fn load_group(path: &Path) -> Result<FiniteGroup, Failure> {
    let g: FiniteGroup = read_json(path)?;
    g.validate().map_err(validation)?;
    Ok(g)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => Ok(write_text(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(out: Option<&Path>, value: &T) -> Result<(), Failure> {
    emit(out, &to_json_pretty(value)?)
}

fn emit_witness(witness: &PotencyWitness, out: Option<&Path>) -> Result<(), Failure> {
    let doc = witness_to_doc(witness);
    emit_json(out, &doc)?;
    eprintln!(
        "certified: |image| = {} = {} * {} on {} vertices",
        witness.certified_order,
        witness.k_u,
        witness.n,
        witness.graph.vertex_count()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { group, system, graph } => cmd_validate(group, system, graph),
        Command::BaseGraph { system, cap, out } => {
            let fs = load_system(&system)?;
            let g = base_graph_direct_product(&fs, cap).map_err(precondition)?;
            emit_json(out.as_deref(), &graph_to_doc(&g))?;
            eprintln!("base graph: {} vertices, {} labels", g.vertex_count(), g.labels().len());
            Ok(())
        }
        Command::Trace { system, graph, word, vertex, out } => {
            cmd_trace(&system, &graph, &word, vertex, out.as_deref())
        }
        Command::Surgery(cmd) => run_surgery(cmd),
        Command::Witness(cmd) => run_witness(cmd),
        Command::Verify { system, word, witness } => cmd_verify(&system, &word, &witness),
        Command::ExportDot { system, graph, out } => {
            let fs = load_system(&system)?;
            let g = load_graph(&fs, &graph)?;
            emit(out.as_deref(), &graph_to_dot(&fs, &g))
        }
    }
}

fn cmd_validate(
    group: Option<PathBuf>,
    system: Option<PathBuf>,
    graph: Option<PathBuf>,
) -> Result<(), Failure> {
    if group.is_none() && system.is_none() {
        return Err(usage("validate needs --group or --system"));
    }
    if let Some(path) = group {
        let g = load_group(&path)?;
        eprintln!("group ok: {} (order {})", g.name, g.order);
    }
    if let Some(path) = system {
        let fs = load_system(&path)?;
        eprintln!(
            "system ok: {} factors, amalgam order {}",
            fs.factors.len(),
            fs.amalgam_order()
        );
        if let Some(path) = graph {
            let g = load_graph(&fs, &path)?;
            eprintln!("graph ok: {} vertices, {} labels", g.vertex_count(), g.labels().len());
        }
    }
    Ok(())
}

fn cmd_trace(
    system: &Path,
    graph: &Path,
    word: &Path,
    vertex: Option<u32>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let fs = load_system(system)?;
    let g = load_graph(&fs, graph)?;
    let u = load_word(word)?;
    if u.is_empty() {
        return Err(usage("the word to trace must be nonempty"));
    }
    match vertex {
        Some(v) => {
            let report = trace_u_cycle(&fs, &g, &u, v).map_err(precondition)?;
            emit_json(out, &trace_to_doc(&report))?;
            eprintln!("cycle through {v}: length {}", report.length);
        }
        None => {
            let reports = all_u_cycle_reports(&fs, &g, &u).map_err(precondition)?;
            let docs: Vec<_> = reports.iter().map(trace_to_doc).collect();
            emit_json(out, &docs)?;
            let lengths: Vec<u64> = reports.iter().map(|r| r.length).collect();
            eprintln!("{} cycles, lengths {:?}", reports.len(), lengths);
        }
    }
    Ok(())
}

fn load_layering(t: Option<usize>, marks: &Path) -> Result<LayeringSpec, Failure> {
    let value: serde_json::Value = read_json(marks)?;
    if value.is_array() {
        let marks: Vec<Mark> =
            serde_json::from_value(value).map_err(|e| usage(format!("marks file: {e}")))?;
        let t = t.ok_or_else(|| usage("--t is required when the marks file is a bare array"))?;
        Ok(LayeringSpec { layers: t, marks })
    } else {
        let spec: LayeringSpec =
            serde_json::from_value(value).map_err(|e| usage(format!("marks file: {e}")))?;
        if let Some(t) = t {
            if t != spec.layers {
                return Err(usage(format!(
                    "--t {} disagrees with the marks file's t = {}",
                    t, spec.layers
                )));
            }
        }
        Ok(spec)
    }
}

fn run_surgery(cmd: SurgeryCmd) -> Result<(), Failure> {
    match cmd {
        SurgeryCmd::GammaT { system, graph, t, marks, out } => {
            let fs = load_system(&system)?;
            let g = load_graph(&fs, &graph)?;
            let spec = load_layering(t, &marks)?;
            if spec.layers == 0 {
                return Err(usage("layer count t must be at least 1"));
            }
            let cover = cyclic_cover(&fs, &g, &spec).map_err(surgery_failure)?;
            emit_json(out.as_deref(), &graph_to_doc(&cover))?;
            eprintln!(
                "cover: {} layers, {} marks, {} vertices",
                spec.layers,
                spec.marks.len(),
                cover.vertex_count()
            );
            Ok(())
        }
        SurgeryCmd::Lemma2 { system, graph, word, out } => {
            let fs = load_system(&system)?;
            let g = load_graph(&fs, &graph)?;
            let u = load_word(&word)?;
            let site = create_proper_site(&fs, &g, &u).map_err(surgery_failure)?;
            emit_json(out.as_deref(), &graph_to_doc(&site.graph))?;
            let marks: Vec<String> = site
                .marks
                .iter()
                .map(|m| format!("(vertex {}, factor {})", m.vertex, m.factor))
                .collect();
            eprintln!(
                "proper site at (vertex {}, factor {}){} on {} vertices; marks: {}",
                site.site_vertex,
                site.site_factor,
                if site.designated { "" } else { " [fallback scan]" },
                site.graph.vertex_count(),
                marks.join(", ")
            );
            Ok(())
        }
        SurgeryCmd::Thm4 { system, graph, orbit_of, n, out } => {
            let fs = load_system(&system)?;
            let g = load_graph(&fs, &graph)?;
            if n == 0 {
                return Err(usage("layer count n must be at least 1"));
            }
            let orbit = subgraph_of(&fs, &g, orbit_of, SubgraphScope::Factor(0))
                .map_err(precondition)?;
            let cover = cut_and_shift(&fs, &g, &orbit, n).map_err(surgery_failure)?;
            emit_json(out.as_deref(), &graph_to_doc(&cover))?;
            eprintln!(
                "cut orbit of vertex {} ({} vertices), {} layers -> {} vertices",
                orbit_of,
                orbit.len(),
                n,
                cover.vertex_count()
            );
            Ok(())
        }
        SurgeryCmd::Thm5 { group_a, group_b, a, b, n, cap, out, system_out } => {
            let ga = load_group(&group_a)?;
            let gb = load_group(&group_b)?;
            if n == 0 {
                return Err(usage("target order n must be at least 1"));
            }
            let glued = glue_cayley_cycles(&ga, &gb, a, b, n, cap).map_err(surgery_failure)?;
            emit_json(out.as_deref(), &graph_to_doc(&glued.graph))?;
            if let Some(path) = system_out {
                write_text(&path, &to_json_pretty(&glued.system)?)?;
            }
            eprintln!(
                "glued{}: {} vertices, cycle lengths {:?}, matching {}",
                if glued.embedded { " (embedded in A x B)" } else { "" },
                glued.graph.vertex_count(),
                glued.cycle_lengths,
                glued.pattern
            );
            Ok(())
        }
    }
}

fn run_witness(cmd: WitnessCmd) -> Result<(), Failure> {
    match cmd {
        WitnessCmd::Quasi { system, word, base, common } => {
            if common.n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let fs = load_system(&system)?;
            let u = load_word(&word)?;
            let witness = match base {
                Some(path) => {
                    let g = load_graph(&fs, &path)?;
                    quasipotency_witness_with_base(&fs, g, &u, common.n, common.cap)
                }
                None => quasipotency_witness(&fs, &u, common.n, common.cap),
            }
            .map_err(witness_failure)?;
            emit_witness(&witness, common.out.as_deref())
        }
        WitnessCmd::Hpotent { system, word, common } => {
            if common.n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let fs = load_system(&system)?;
            let u = load_word(&word)?;
            let witness =
                hpotency_witness(&fs, &u, common.n, common.cap).map_err(witness_failure)?;
            emit_witness(&witness, common.out.as_deref())
        }
        WitnessCmd::Uab { group_a, group_b, a, b, common, system_out, word_out } => {
            if common.n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let ga = load_group(&group_a)?;
            let gb = load_group(&group_b)?;
            let witness = uab_potency_witness(&ga, &gb, a, b, common.n, common.cap)
                .map_err(witness_failure)?;
            if let Some(path) = system_out {
                write_text(&path, &to_json_pretty(&witness.system)?)?;
            }
            if let Some(path) = word_out {
                write_text(&path, &to_json_pretty(&witness.word)?)?;
            }
            emit_witness(&witness, common.out.as_deref())
        }
    }
}

fn cmd_verify(system: &Path, word: &Path, witness: &Path) -> Result<(), Failure> {
    let fs = load_system(system)?;
    let u = load_word(word)?;
    let doc: WitnessDoc = read_json(witness)?;
    let perms = doc_permutations(&fs, &doc)?;
    verify_assignment(&fs, &u, &perms, doc.k_u, doc.n, doc.certified_order)
        .map_err(witness_failure)?;
    eprintln!(
        "verified: |image| = {} = {} * {} on {} points",
        doc.certified_order, doc.k_u, doc.n, doc.vertices
    );
    Ok(())
}
