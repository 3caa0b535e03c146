//! Command-line front end: certification, Hist search, constructions,
//! profile realization, fixtures, batch scanning, and the cycle double
//! cover probe.
//!
//! Exit codes: 0 success/positive verdict, 1 negative verdict (not a
//! snark, no Hist, not admissible, no cover), 2 input or parse error,
//! 3 size cap exceeded, 4 construction verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use snarklab::certify::{certify_snark_with, CertifyError, CertifyOptions};
use snarklab::constructions::{
    bullet, dot_anchor_candidates, dot_product, reduce_i, reduce_ii, reduce_iii, reduce_iv,
    triangle, triangle_anchor_candidates, union_disjoint, union_merge, BulletVariant,
    ConstructError, ConstructedHistSnark, DotAnchors, Provenance, TriangleAnchors,
};
use snarklab::formats::{
    emit_adjacency_text, emit_dot, emit_graph6, parse_adjacency_text, parse_graph6_line,
};
use snarklab::graph::CubicGraph;
use snarklab::hist::{
    cdc_with_outer_cycles, cycle_vertex_sequence, enumerate_hists_with, find_hist_with,
    outer_cycles, CdcOptions, HistError, HistOptions, OuterCycleProfile,
};
use snarklab::realizer::{
    fixture, fixture_names, is_admissible, realize, scan_for_hists, Fixture, RealizeError,
    ScanOptions,
};

#[derive(Parser)]
#[command(
    name = "snarklab",
    version,
    about = "Snarks, Hists, and outer-cycle profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Graph6,
    Adjacency,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitFormat {
    Graph6,
    Adjacency,
    Dot,
}

#[derive(Args)]
struct InputArgs {
    /// Input file with one graph (graph6 or adjacency text).
    input: Option<PathBuf>,
    /// Use a bundled fixture instead of a file.
    #[arg(long)]
    fixture: Option<String>,
    /// Input format; auto keys on a leading digit-parenthesis pattern.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
}

#[derive(Args)]
struct CapArgs {
    /// Vertex cap for the exponential searches
    /// (overrides SNARKLAB_MAX_VERTICES).
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a graph: girth, cyclic 4-edge-connectivity,
    /// 3-edge-colorability, snark verdict.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Find a Hist (or all of them) and print profiles.
    Hist {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        caps: CapArgs,
        /// Enumerate Hists instead of stopping at the first.
        #[arg(long)]
        all: bool,
        /// Enumeration limit with --all.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Print the outer cycles of a Hist.
    Oc {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Apply a surgery or reduction and emit the result.
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// Build a certified snark with the given outer-cycle profile,
    /// e.g. `realize 5,6,7`.
    Realize {
        /// Comma-separated multiset of cycle lengths.
        profile: String,
        /// Output format for the constructed graph.
        #[arg(long, value_enum, default_value_t = EmitFormat::Adjacency)]
        emit: EmitFormat,
        /// Print the construction plan as JSON.
        #[arg(long)]
        plan: bool,
        /// Skip the final snark certification.
        #[arg(long)]
        no_certify: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Scan a graph6 file: certify every graph and search for Hists.
    Scan {
        path: PathBuf,
        /// Print only the JSON lines, no summary table.
        #[arg(long)]
        jsonl: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// List bundled fixtures or emit one.
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
    /// Search for a cycle double cover containing all outer cycles.
    Cdc {
        #[command(flatten)]
        input: InputArgs,
        /// Vertex cap for the exhaustive cover search.
        #[arg(long, default_value_t = 20)]
        cap: usize,
        #[command(flatten)]
        caps: CapArgs,
    },
}

#[derive(Subcommand)]
enum ConstructOp {
    /// Dot product of two graphs.
    Dot(SurgeryArgs),
    /// Bullet variant subdividing the e1 side.
    Bullet1(SurgeryArgs),
    /// Bullet variant subdividing the e2 side.
    Bullet2(SurgeryArgs),
    /// Bullet variant subdividing both sides.
    Bullet3(SurgeryArgs),
    /// Triangle variant expanding b1.
    Triangle(SurgeryArgs),
    /// Disjoint union of profiles: oc(G) ++ oc(H).
    Union(PairArgs),
    /// Merge cycles of lengths k and l into one of length k+l-1.
    Merge {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Replace an outer cycle of length k by one of length k+4.
    ReduceI {
        #[command(flatten)]
        input: SingleArgs,
        #[arg(long)]
        k: usize,
    },
    /// Add an outer cycle of length 5.
    ReduceIi(SingleArgs),
    /// Add an outer cycle of length 6.
    ReduceIii(SingleArgs),
    /// Replace k by k+2 and add an outer cycle of length 7.
    ReduceIv {
        #[command(flatten)]
        input: SingleArgs,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct SurgeryArgs {
    /// First operand: fixture name or file path.
    #[arg(long)]
    g: String,
    /// Second operand: fixture name or file path (defaults to g).
    #[arg(long)]
    h: Option<String>,
    /// Anchor edge e1 as "u,v" (default: first canonical candidate).
    #[arg(long)]
    e1: Option<String>,
    /// Anchor edge e2 as "u,v".
    #[arg(long)]
    e2: Option<String>,
    /// Anchor edge e3 as "u,v".
    #[arg(long)]
    e3: Option<String>,
    /// Severed neighbor c of b1 (triangle only).
    #[arg(long)]
    c: Option<usize>,
    #[arg(long, value_enum, default_value_t = EmitFormat::Adjacency)]
    emit: EmitFormat,
}

#[derive(Args)]
struct PairArgs {
    /// First Hist-snark: fixture name or file path.
    #[arg(long)]
    g: String,
    /// Second Hist-snark: fixture name or file path.
    #[arg(long)]
    h: String,
    #[arg(long, value_enum, default_value_t = EmitFormat::Adjacency)]
    emit: EmitFormat,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct SingleArgs {
    /// Hist-snark operand: fixture name or file path.
    #[arg(long)]
    g: String,
    #[arg(long, value_enum, default_value_t = EmitFormat::Adjacency)]
    emit: EmitFormat,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// List all catalog entries.
    List,
    /// Emit one fixture in the chosen format.
    Emit {
        name: String,
        #[arg(long, value_enum, default_value_t = EmitFormat::Adjacency)]
        format: EmitFormat,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Failure {
        let code = match &e {
            RealizeError::UnknownFixture(_) => 2,
            RealizeError::FixtureCorrupt { .. } => 2,
            RealizeError::NotAdmissible { .. } => 1,
            RealizeError::ConstructionFailed(c) => construct_code(c),
            RealizeError::Hist(HistError::SizeCapExceeded { .. }) => 3,
            RealizeError::Hist(_) => 4,
        };
        Failure::new(code, e.to_string())
    }
}

fn construct_code(e: &ConstructError) -> u8 {
    match e {
        ConstructError::Hist(HistError::SizeCapExceeded { .. }) => 3,
        ConstructError::InvalidAnchors(_) => 2,
        ConstructError::ElementAbsent { .. } => 2,
        _ => 4,
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Failure {
        Failure::new(construct_code(&e), e.to_string())
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Failure {
        Failure::new(3, e.to_string())
    }
}

impl From<HistError> for Failure {
    fn from(e: HistError) -> Failure {
        match e {
            HistError::SizeCapExceeded { .. } => Failure::new(3, e.to_string()),
            _ => Failure::new(2, e.to_string()),
        }
    }
}

fn env_cap() -> Option<usize> {
    std::env::var("SNARKLAB_MAX_VERTICES")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn certify_opts(caps: &CapArgs) -> CertifyOptions {
    let mut opts = CertifyOptions::default();
    if let Some(cap) = caps.max_vertices.or_else(env_cap) {
        opts.max_vertices = cap;
    }
    opts
}

fn hist_opts(caps: &CapArgs) -> HistOptions {
    let mut opts = HistOptions::default();
    if let Some(cap) = caps.max_vertices.or_else(env_cap) {
        opts.max_vertices = cap;
    }
    opts
}

/// Loads one graph from a file, auto-detecting the format.
fn load_graph_file(path: &PathBuf, format: InputFormat) -> Result<CubicGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    let trimmed = text.trim();
    let looks_like_adjacency_text = trimmed.starts_with('[')
        || trimmed
            .split_once('(')
            .map(|(head, _)| head.trim().chars().all(|c| c.is_ascii_digit()))
            .unwrap_or(false);
    let format = match format {
        InputFormat::Auto if looks_like_adjacency_text => InputFormat::Adjacency,
        InputFormat::Auto => InputFormat::Graph6,
        f => f,
    };
    match format {
        InputFormat::Adjacency => {
            parse_adjacency_text(trimmed).map_err(|e| Failure::new(2, e.to_string()))
        }
        _ => {
            let line = trimmed
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Failure::new(2, "empty input"))?;
            parse_graph6_line(line).map_err(|e| Failure::new(2, e.to_string()))
        }
    }
}

/// Resolves an operand (fixture name or file path) to a graph plus a
/// validated Hist (declared for fixtures, searched otherwise).
fn load_operand(operand: &str, caps: &CapArgs) -> Result<ConstructedHistSnark, Failure> {
    let snark = if std::path::Path::new(operand).exists() {
        let graph = load_graph_file(&PathBuf::from(operand), InputFormat::Auto)?;
        let hist = find_hist_with(&graph, &hist_opts(caps))?
            .ok_or_else(|| Failure::new(1, format!("{operand}: graph has no Hist")))?;
        let (_, profile) = outer_cycles(&graph, &hist)?;
        let provenance = Provenance::fixture(operand, &profile, &graph);
        ConstructedHistSnark::from_graph_and_hist(graph, hist, provenance)?
    } else {
        match fixture(operand)? {
            Fixture::HistSnark(s) => s,
            Fixture::HistFree { name, .. } => {
                return Err(Failure::new(1, format!("fixture {name} has no Hist")))
            }
        }
    };
    Ok(snark)
}

/// Resolves an operand to a bare graph (fixture name or file path).
fn load_bare_graph(operand: &str) -> Result<CubicGraph, Failure> {
    if std::path::Path::new(operand).exists() {
        load_graph_file(&PathBuf::from(operand), InputFormat::Auto)
    } else {
        match fixture(operand)? {
            Fixture::HistSnark(s) => Ok(s.graph),
            Fixture::HistFree { graph, .. } => Ok(graph),
        }
    }
}

fn input_graph(input: &InputArgs) -> Result<(String, CubicGraph), Failure> {
    match (&input.fixture, &input.input) {
        (Some(name), None) => {
            let g = match fixture(name)? {
                Fixture::HistSnark(s) => s.graph,
                Fixture::HistFree { graph, .. } => graph,
            };
            Ok((name.clone(), g))
        }
        (None, Some(path)) => Ok((
            path.display().to_string(),
            load_graph_file(path, input.format)?,
        )),
        _ => Err(Failure::new(2, "provide exactly one of INPUT or --fixture")),
    }
}

fn parse_edge_flag(s: &str) -> Result<(usize, usize), Failure> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::new(2, format!("edge flag `{s}` must be \"u,v\"")))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| Failure::new(2, "bad vertex id"))?;
    let b = b
        .trim()
        .parse()
        .map_err(|_| Failure::new(2, "bad vertex id"))?;
    Ok((a, b))
}

fn emit_graph(g: &CubicGraph, format: EmitFormat) -> String {
    match format {
        EmitFormat::Graph6 => emit_graph6(g),
        EmitFormat::Adjacency => emit_adjacency_text(g),
        EmitFormat::Dot => emit_dot(g, None, None),
    }
}

fn print_constructed(out: &ConstructedHistSnark, format: EmitFormat) {
    println!(
        "provenance: {}",
        serde_json::to_string(&out.provenance).expect("provenance serializes")
    );
    println!("n: {}", out.graph.n());
    println!("profile: {}", out.profile);
    match format {
        EmitFormat::Dot => {
            let (cycles, _) = outer_cycles(&out.graph, &out.hist).expect("verified Hist");
            print!("{}", emit_dot(&out.graph, Some(&out.hist), Some(&cycles)));
        }
        f => println!("{}", emit_graph(&out.graph, f)),
    }
}

fn cmd_check(input: &InputArgs, caps: &CapArgs) -> Result<u8, Failure> {
    let (name, graph) = input_graph(input)?;
    let cert = certify_snark_with(&graph, &certify_opts(caps))?;
    println!("input: {name}");
    println!("n: {}", cert.n);
    println!("connected: {}", cert.connected);
    println!("girth: {}", cert.girth);
    println!(
        "cyclically 4-edge-connected: {}",
        cert.cyclically_4_edge_connected
    );
    if let Some(cut) = &cert.cyclic_cut_witness {
        let cut: Vec<String> = cut.iter().map(|e| e.to_string()).collect();
        println!("violating cut: [{}]", cut.join(", "));
    }
    println!("3-edge-colorable: {}", cert.three_edge_colorable);
    if let Some(colors) = &cert.coloring_witness {
        let w: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
        println!("coloring: {}", w.join(""));
    }
    println!("snark: {}", cert.is_snark);
    Ok(if cert.is_snark { 0 } else { 1 })
}

fn cmd_hist(input: &InputArgs, caps: &CapArgs, all: bool, limit: usize) -> Result<u8, Failure> {
    let (name, graph) = input_graph(input)?;
    let opts = hist_opts(caps);
    println!("input: {name}");
    let hists = if all {
        enumerate_hists_with(&graph, limit, &opts)?
    } else {
        find_hist_with(&graph, &opts)?.into_iter().collect()
    };
    if hists.is_empty() {
        println!("no Hist (exhaustive)");
        return Ok(1);
    }
    for (i, h) in hists.iter().enumerate() {
        let (_, profile) = outer_cycles(&graph, h)?;
        let edges: Vec<String> = h
            .tree_edges()
            .iter()
            .map(|e| graph.edge(e).to_string())
            .collect();
        println!(
            "hist {}: profile {} edges [{}]",
            i + 1,
            profile,
            edges.join(", ")
        );
    }
    Ok(0)
}

fn cmd_oc(input: &InputArgs, caps: &CapArgs) -> Result<u8, Failure> {
    let (name, snark) = match (&input.fixture, &input.input) {
        (Some(f), None) => (f.clone(), load_operand(f, caps)?),
        (None, Some(path)) => {
            let spec = path.display().to_string();
            (spec.clone(), load_operand(&spec, caps)?)
        }
        _ => return Err(Failure::new(2, "provide exactly one of INPUT or --fixture")),
    };
    println!("input: {name}");
    let (cycles, profile) = outer_cycles(&snark.graph, &snark.hist)?;
    for (i, c) in cycles.iter().enumerate() {
        let seq: Vec<String> = cycle_vertex_sequence(&snark.graph, c)
            .iter()
            .map(|v| v.to_string())
            .collect();
        println!("cycle {}: [{}]", i + 1, seq.join(","));
    }
    println!("profile: {profile}");
    Ok(0)
}

fn cmd_construct(op: &ConstructOp) -> Result<u8, Failure> {
    match op {
        ConstructOp::Dot(args)
        | ConstructOp::Bullet1(args)
        | ConstructOp::Bullet2(args)
        | ConstructOp::Bullet3(args)
        | ConstructOp::Triangle(args) => {
            let g = load_bare_graph(&args.g)?;
            let h = load_bare_graph(args.h.as_ref().unwrap_or(&args.g))?;
            let surgery = match op {
                ConstructOp::Triangle(_) => {
                    let anchors = match (&args.e1, &args.e2, &args.e3) {
                        (Some(e1), Some(e2), Some(e3)) => {
                            let e1 = parse_edge_flag(e1)?;
                            let dot = DotAnchors::new(
                                &g,
                                &h,
                                e1,
                                parse_edge_flag(e2)?,
                                parse_edge_flag(e3)?,
                            )?;
                            let c = args.c.ok_or_else(|| {
                                Failure::new(2, "triangle needs --c with explicit anchors")
                            })?;
                            TriangleAnchors::from_dot(&g, dot, c)?
                        }
                        (None, None, None) => triangle_anchor_candidates(&g, &h, 1)
                            .into_iter()
                            .next()
                            .ok_or_else(|| Failure::new(4, "no valid anchors"))?,
                        _ => return Err(Failure::new(2, "give all of --e1 --e2 --e3 or none")),
                    };
                    triangle(&g, &h, &anchors)?
                }
                _ => {
                    let anchors = match (&args.e1, &args.e2, &args.e3) {
                        (Some(e1), Some(e2), Some(e3)) => DotAnchors::new(
                            &g,
                            &h,
                            parse_edge_flag(e1)?,
                            parse_edge_flag(e2)?,
                            parse_edge_flag(e3)?,
                        )?,
                        (None, None, None) => dot_anchor_candidates(&g, &h, 1)
                            .into_iter()
                            .next()
                            .ok_or_else(|| Failure::new(4, "no valid anchors"))?,
                        _ => return Err(Failure::new(2, "give all of --e1 --e2 --e3 or none")),
                    };
                    match op {
                        ConstructOp::Dot(_) => dot_product(&g, &h, &anchors)?,
                        ConstructOp::Bullet1(_) => bullet(&g, &h, &anchors, BulletVariant::B1)?,
                        ConstructOp::Bullet2(_) => bullet(&g, &h, &anchors, BulletVariant::B2)?,
                        _ => bullet(&g, &h, &anchors, BulletVariant::B3)?,
                    }
                }
            };
            println!("n: {}", surgery.graph.n());
            println!("{}", emit_graph(&surgery.graph, args.emit));
            Ok(0)
        }
        ConstructOp::Union(pair) => {
            let a = load_operand(&pair.g, &pair.caps)?;
            let b = load_operand(&pair.h, &pair.caps)?;
            let out = union_disjoint(&a, &b)?;
            print_constructed(&out, pair.emit);
            Ok(0)
        }
        ConstructOp::Merge { pair, k, l } => {
            let a = load_operand(&pair.g, &pair.caps)?;
            let b = load_operand(&pair.h, &pair.caps)?;
            let out = union_merge(&a, *k, &b, *l)?;
            print_constructed(&out, pair.emit);
            Ok(0)
        }
        ConstructOp::ReduceI { input, k } => {
            let a = load_operand(&input.g, &input.caps)?;
            let out = reduce_i(&a, *k)?;
            print_constructed(&out, input.emit);
            Ok(0)
        }
        ConstructOp::ReduceIi(input) => {
            let a = load_operand(&input.g, &input.caps)?;
            let out = reduce_ii(&a)?;
            print_constructed(&out, input.emit);
            Ok(0)
        }
        ConstructOp::ReduceIii(input) => {
            let a = load_operand(&input.g, &input.caps)?;
            let out = reduce_iii(&a)?;
            print_constructed(&out, input.emit);
            Ok(0)
        }
        ConstructOp::ReduceIv { input, k } => {
            let a = load_operand(&input.g, &input.caps)?;
            let out = reduce_iv(&a, *k)?;
            print_constructed(&out, input.emit);
            Ok(0)
        }
    }
}

fn cmd_realize(
    profile: &str,
    emit: EmitFormat,
    plan: bool,
    no_certify: bool,
    caps: &CapArgs,
) -> Result<u8, Failure> {
    let lengths: Result<Vec<usize>, _> = profile
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect();
    let lengths = lengths.map_err(|_| Failure::new(2, format!("bad profile `{profile}`")))?;
    let spec = OuterCycleProfile::new(lengths);
    let (ok, reason) = is_admissible(&spec);
    if !ok {
        println!("not admissible: {reason}");
        return Ok(1);
    }
    let out = realize(&spec)?;
    if !no_certify {
        let mut opts = certify_opts(caps);
        if opts.max_vertices < out.graph.n() && caps.max_vertices.is_none() && env_cap().is_none() {
            opts.max_vertices = out.graph.n();
        }
        let cert = out.certify_with(&opts)?;
        if !cert.is_snark {
            return Err(Failure::new(4, "realized graph failed snark certification"));
        }
        println!("certified: snark");
    }
    if plan {
        println!(
            "plan: {}",
            serde_json::to_string(&out.provenance).expect("plan serializes")
        );
    }
    println!("n: {}", out.graph.n());
    println!("profile: {}", out.profile);
    println!("{}", emit_graph(&out.graph, emit));
    Ok(0)
}

fn cmd_scan(path: &PathBuf, jsonl: bool, caps: &CapArgs) -> Result<u8, Failure> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    let mut graphs: Vec<Result<CubicGraph, String>> = Vec::new();
    for line in data.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with(">>") {
            continue;
        }
        graphs.push(parse_graph6_line(line).map_err(|e| e.to_string()));
    }
    let opts = ScanOptions {
        certify: certify_opts(caps),
        hist: hist_opts(caps),
    };
    let report = scan_for_hists(graphs, &opts);
    print!("{}", report.to_json_lines());
    if !jsonl {
        print!("{}", report.summary_table());
    }
    Ok(0)
}

fn cmd_fixtures(cmd: &FixturesCmd) -> Result<u8, Failure> {
    match cmd {
        FixturesCmd::List => {
            for name in fixture_names() {
                match fixture(name)? {
                    Fixture::HistSnark(s) => {
                        println!("{name}\tn={}\tprofile {}", s.graph.n(), s.profile)
                    }
                    Fixture::HistFree { graph, .. } => {
                        println!("{name}\tn={}\tno Hist", graph.n())
                    }
                }
            }
            Ok(0)
        }
        FixturesCmd::Emit { name, format } => match fixture(name)? {
            Fixture::HistSnark(s) => {
                match format {
                    EmitFormat::Dot => {
                        let (cycles, _) = outer_cycles(&s.graph, &s.hist)?;
                        print!("{}", emit_dot(&s.graph, Some(&s.hist), Some(&cycles)));
                    }
                    f => println!("{}", emit_graph(&s.graph, *f)),
                }
                Ok(0)
            }
            Fixture::HistFree { graph, .. } => {
                println!("{}", emit_graph(&graph, *format));
                Ok(0)
            }
        },
    }
}

fn cmd_cdc(input: &InputArgs, cap: usize, caps: &CapArgs) -> Result<u8, Failure> {
    let (name, snark) = match (&input.fixture, &input.input) {
        (Some(f), None) => (f.clone(), load_operand(f, caps)?),
        (None, Some(path)) => {
            let spec = path.display().to_string();
            (spec.clone(), load_operand(&spec, caps)?)
        }
        _ => return Err(Failure::new(2, "provide exactly one of INPUT or --fixture")),
    };
    println!("input: {name}");
    let opts = CdcOptions { max_vertices: cap };
    match cdc_with_outer_cycles(&snark.graph, &snark.hist, &opts)? {
        Some(cover) => {
            for (i, c) in cover.iter().enumerate() {
                let seq: Vec<String> = cycle_vertex_sequence(&snark.graph, c)
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                println!("cycle {}: [{}]", i + 1, seq.join(","));
            }
            println!("cover size: {}", cover.len());
            Ok(0)
        }
        None => {
            println!("no cycle double cover contains all outer cycles");
            Ok(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check { input, caps } => cmd_check(input, caps),
        Command::Hist {
            input,
            caps,
            all,
            limit,
        } => cmd_hist(input, caps, *all, *limit),
        Command::Oc { input, caps } => cmd_oc(input, caps),
        Command::Construct { op } => cmd_construct(op),
        Command::Realize {
            profile,
            emit,
            plan,
            no_certify,
            caps,
        } => cmd_realize(profile, *emit, *plan, *no_certify, caps),
        Command::Scan { path, jsonl, caps } => cmd_scan(path, *jsonl, caps),
        Command::Fixtures { cmd } => cmd_fixtures(cmd),
        Command::Cdc { input, cap, caps } => cmd_cdc(input, *cap, caps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
