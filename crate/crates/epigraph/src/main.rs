//! Command-line front end: parses the text format, dispatches to the library
//! operations, renders boards and grid graphs, and runs verification sweeps.
//!
//! Exit codes: 0 when every requested check passes, 1 when a verification or
//! construction fails, 2 for unusable input (bad flags or unparsable files).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use epigraph::amalgam::{
    block_decomposition, build_amalg_graph, cap_witness, jpp_witness, worked_example, TieBreak,
};
use epigraph::board::product_coloring;
use epigraph::family::{cover_by_antidiagonal, is_connected_relation, is_surjective_relation};
use epigraph::morphism::{compose, is_epimorphism, StructureMap};
use epigraph::render::{
    amalg_graph_to_ascii, amalg_graph_to_svg, board_to_ascii, board_to_svg, edge_list,
};
use epigraph::structure::RelStructure;
use epigraph::textfmt::{Document, DocumentBuilder};
use epigraph::tower::{check_tower, extend_tower, new_tower, Tower};
use epigraph::verify::{
    sample_steinhaus, verify_ap_linear, verify_cap, verify_coinitiality, verify_covers,
    verify_family_membership, verify_jpp, verify_steinhaus, verify_structural, verify_tower,
    verify_wap, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "epigraph",
    version,
    about = "Epimorphisms of finite reflexive linear graphs with relations",
    long_about = "Membership and covers for surjective connected relations, chessboard \
                  path duality, amalgamation of epimorphism pairs, towers of antidiagonal \
                  structures, and brute-force verification sweeps.\n\n\
                  The environment variable FF_MAX_ENUM overrides the enumeration budget."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reproduce the built-in worked amalgamation example end to end.
    Example(ExampleArgs),
    /// Classify relations and build antidiagonal covers.
    Membership {
        #[command(subcommand)]
        cmd: MembershipCmd,
    },
    /// Build a joint antidiagonal cover of the first two structures in a file.
    Jpp {
        /// Text-format file with at least two structures.
        file: PathBuf,
    },
    /// Amalgamate signed antidiagonal structures.
    Cap {
        #[command(subcommand)]
        cmd: CapCmd,
    },
    /// Product colorings and the path duality.
    Chessboard {
        #[command(subcommand)]
        cmd: ChessboardCmd,
    },
    /// Run one verification sweep.
    Verify(VerifyArgs),
    /// Build and check towers of signed antidiagonal structures.
    Tower {
        #[command(subcommand)]
        cmd: TowerCmd,
    },
}

#[derive(Args)]
struct ExampleArgs {
    /// Render the board and grid graphs as SVG instead of ASCII.
    #[arg(long)]
    svg: bool,
}

#[derive(Subcommand)]
enum MembershipCmd {
    /// Print surjectivity, connectedness, and family verdicts per structure.
    Check { file: PathBuf },
    /// Emit the antidiagonal cover and covering map of the first structure.
    Cover { file: PathBuf },
}

#[derive(Subcommand)]
enum CapCmd {
    /// Amalgamate the first two maps in the file over their common target.
    Amalgamate { file: PathBuf },
    /// Print the tie-break grid graph of the first two maps as an edge list.
    Graphs {
        file: PathBuf,
        /// Which tie-break variant to build.
        #[arg(long, value_enum)]
        variant: Variant,
    },
    /// Reproduce the built-in worked example end to end.
    Example(ExampleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// Ties emit both edge pairs.
    G0,
    /// Ties emit the vertical pair.
    G1,
    /// Ties emit the horizontal pair.
    G2,
}

#[derive(Subcommand)]
enum ChessboardCmd {
    /// Render the product coloring of the first two maps in the file.
    Render {
        file: PathBuf,
        /// Emit SVG.
        #[arg(long, conflicts_with = "ascii")]
        svg: bool,
        /// Emit ASCII (the default).
        #[arg(long)]
        ascii: bool,
    },
    /// Sweep the path duality over colorings of a board.
    Steinhaus {
        /// Board height in cells.
        #[arg(long)]
        rows: i64,
        /// Board width in cells.
        #[arg(long)]
        cols: i64,
        /// Check every coloring instead of a random sample (needs rows*cols <= 12).
        #[arg(long)]
        exhaustive: bool,
        /// Number of sampled colorings when not exhaustive.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Seed for the sampled sweep.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Which property to sweep.
    #[arg(value_enum)]
    property: Property,
    /// Largest structure size in the sweep (meaning varies per property).
    #[arg(long)]
    max_size: Option<i64>,
    /// Number of random instances, for properties with a sampled part.
    #[arg(long)]
    instances: Option<usize>,
    /// Seed for all randomness in the sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Board height (steinhaus only).
    #[arg(long)]
    rows: Option<i64>,
    /// Board width (steinhaus only).
    #[arg(long)]
    cols: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    /// Classification vs. brute-force cover existence, all relations.
    Membership,
    /// Constructive covers of every family member.
    Covers,
    /// Joint covers of structure pairs.
    Jpp,
    /// Amalgamation of bare linear graph epimorphisms.
    Ap,
    /// Amalgamation of signed antidiagonal epimorphism pairs.
    Cap,
    /// Signed even antidiagonal covers of every family member.
    Coinitiality,
    /// Weak amalgamation through the covers.
    Wap,
    /// Path duality over all colorings and quadruples.
    Steinhaus,
    /// Block, grid-graph, and coloring claims on random instances.
    Structural,
    /// Random tower growth plus the full consistency check.
    Tower,
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Start from the base tower and extend by each structure in a file.
    Build {
        /// Text-format file whose structures are the extension targets, in order.
        #[arg(long)]
        targets: PathBuf,
        /// Where to write the finished tower.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a serialized tower.
    Check { file: PathBuf },
}

/// A failed run: usage and parse problems exit 2, failed checks exit 1.
enum Failure {
    Usage(String),
    Parse(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::Check(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Check(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check(msg: impl std::fmt::Display) -> Failure {
    Failure::Check(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Example(args) => run_example(args),
        Cmd::Membership { cmd } => match cmd {
            MembershipCmd::Check { file } => membership_check(&file),
            MembershipCmd::Cover { file } => membership_cover(&file),
        },
        Cmd::Jpp { file } => run_jpp(&file),
        Cmd::Cap { cmd } => match cmd {
            CapCmd::Amalgamate { file } => cap_amalgamate(&file),
            CapCmd::Graphs { file, variant } => cap_graphs(&file, variant),
            CapCmd::Example(args) => run_example(args),
        },
        Cmd::Chessboard { cmd } => match cmd {
            ChessboardCmd::Render { file, svg, ascii: _ } => chessboard_render(&file, svg),
            ChessboardCmd::Steinhaus {
                rows,
                cols,
                exhaustive,
                instances,
                seed,
            } => chessboard_steinhaus(rows, cols, exhaustive, instances, seed),
        },
        Cmd::Verify(args) => run_verify(args),
        Cmd::Tower { cmd } => match cmd {
            TowerCmd::Build { targets, out } => tower_build(&targets, &out),
            TowerCmd::Check { file } => tower_check(&file),
        },
    }
}

fn load_document(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {}", path.display(), e)))?;
    Document::parse(&text).map_err(|e| Failure::Parse(format!("{}: {}", path.display(), e)))
}

fn first_two_maps(doc: &Document, path: &Path) -> Result<(StructureMap, StructureMap), Failure> {
    if doc.maps.len() < 2 {
        return Err(usage(format!(
            "{}: need two maps, found {}",
            path.display(),
            doc.maps.len()
        )));
    }
    Ok((doc.maps[0].map.clone(), doc.maps[1].map.clone()))
}

fn print_report(report: &VerificationReport, json: bool) -> Result<(), Failure> {
    if json {
        let rendered = serde_json::to_string_pretty(report)
            .expect("reports serialize without custom types");
        println!("{rendered}");
    } else {
        println!("{}", report.summary());
        let shown = report.failures.len().min(10);
        for f in &report.failures[..shown] {
            println!("  counterexample: {f}");
        }
        if report.failures.len() > shown {
            println!("  ... and {} more", report.failures.len() - shown);
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} of {} instances failed",
            report.failures.len(),
            report.instances
        )))
    }
}

fn membership_check(path: &Path) -> Result<(), Failure> {
    let doc = load_document(path)?;
    let structures = doc.structures();
    if structures.is_empty() {
        return Err(usage(format!("{}: no structures", path.display())));
    }
    for (name, a) in structures {
        let Some(s) = a.s.as_ref() else {
            println!("{name}: no relation; not in F");
            continue;
        };
        let surjective = is_surjective_relation(s);
        let connected = is_connected_relation(s);
        let verdict = [
            if surjective { "surjective" } else { "not surjective" },
            if connected { "connected" } else { "not connected" },
            if surjective && connected { "in F" } else { "not in F" },
        ]
        .join("; ");
        println!("{name}: {verdict}");
    }
    Ok(())
}

fn membership_cover(path: &Path) -> Result<(), Failure> {
    let doc = load_document(path)?;
    let (name, a) = doc
        .structures()
        .into_iter()
        .next()
        .ok_or_else(|| usage(format!("{}: no structures", path.display())))?;
    let c = cover_by_antidiagonal(&a).map_err(check)?;
    let mut out = DocumentBuilder::new();
    out.push_structure("cover", &c.cover);
    out.push_structure(&name, &a);
    out.push_map("phi", "cover", &name, &c.map);
    print!("{}", out.to_text());
    println!("# walk: {:?}", c.walk);
    Ok(())
}

fn run_jpp(path: &Path) -> Result<(), Failure> {
    let doc = load_document(path)?;
    let structures = doc.structures();
    if structures.len() < 2 {
        return Err(usage(format!(
            "{}: need two structures, found {}",
            path.display(),
            structures.len()
        )));
    }
    let (first_name, first) = &structures[0];
    let (second_name, second) = &structures[1];
    let w = jpp_witness(first, second).map_err(check)?;
    let mut out = DocumentBuilder::new();
    out.push_structure("joint", &w.domain);
    out.push_structure(first_name, first);
    out.push_structure(second_name, second);
    out.push_map("to_first", "joint", first_name, &w.to_first);
    out.push_map("to_second", "joint", second_name, &w.to_second);
    print!("{}", out.to_text());
    Ok(())
}

/// Re-checks a finished amalgamation the way the verifiers do and prints a
/// one-line report.
fn witness_report(
    phi1: &StructureMap,
    phi2: &StructureMap,
    domain: &RelStructure,
    to_first: &StructureMap,
    to_second: &StructureMap,
) -> Result<(), Failure> {
    let started = std::time::Instant::now();
    let mut failures = Vec::new();
    for (m, target, which) in [(to_first, phi1, "first"), (to_second, phi2, "second")] {
        match is_epimorphism(m, domain, &RelStructure::antidiagonal_on(target.domain())) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{which} map fails the epimorphism oracle")),
            Err(e) => failures.push(format!("{which} map is malformed: {e}")),
        }
    }
    match (compose(phi1, to_first), compose(phi2, to_second)) {
        (Ok(a), Ok(b)) if a.same_map(&b) => {}
        _ => failures.push("the amalgamation square does not commute".to_string()),
    }
    if to_first.apply(1).abs() != 1 {
        failures.push("the first map does not open beside the center".to_string());
    }
    let report = VerificationReport::from_run("cap-witness", 4, failures, started);
    print_report(&report, false)
}

fn cap_amalgamate(path: &Path) -> Result<(), Failure> {
    let doc = load_document(path)?;
    let (phi1, phi2) = first_two_maps(&doc, path)?;
    let w = cap_witness(&phi1, &phi2).map_err(check)?;
    let first_name = doc.maps[0].src.clone();
    let second_name = doc.maps[1].src.clone();
    let mut out = DocumentBuilder::new();
    out.push_structure("dprime", &w.domain);
    out.push_structure(&first_name, &RelStructure::antidiagonal_on(phi1.domain()));
    if second_name != first_name {
        out.push_structure(&second_name, &RelStructure::antidiagonal_on(phi2.domain()));
    }
    out.push_map("psi1", "dprime", &first_name, &w.to_first);
    out.push_map("psi2", "dprime", &second_name, &w.to_second);
    print!("{}", out.to_text());
    witness_report(&phi1, &phi2, &w.domain, &w.to_first, &w.to_second)
}

fn cap_graphs(path: &Path, variant: Variant) -> Result<(), Failure> {
    let doc = load_document(path)?;
    let (phi1, phi2) = first_two_maps(&doc, path)?;
    let first = block_decomposition(&phi1).map_err(check)?;
    let second = block_decomposition(&phi2).map_err(check)?;
    let tie = match variant {
        Variant::G0 => TieBreak::Both,
        Variant::G1 => TieBreak::Vertical,
        Variant::G2 => TieBreak::Horizontal,
    };
    let g = build_amalg_graph(&first, &second, tie).map_err(check)?;
    print!("{}", edge_list(&g));
    Ok(())
}

fn run_example(args: ExampleArgs) -> Result<(), Failure> {
    let (phi1, phi2) = worked_example();
    let first = block_decomposition(&phi1).map_err(check)?;
    let second = block_decomposition(&phi2).map_err(check)?;
    println!("first map blocks:  {}", first.breakpoint_line('s'));
    println!("second map blocks: {}", second.breakpoint_line('t'));
    println!();

    let w = cap_witness(&phi1, &phi2).map_err(check)?;
    let g1 = build_amalg_graph(&first, &second, TieBreak::Vertical).map_err(check)?;
    let g2 = build_amalg_graph(&first, &second, TieBreak::Horizontal).map_err(check)?;
    if args.svg {
        println!("{}", board_to_svg(&w.board));
        println!("{}", amalg_graph_to_svg(&g1));
        println!("{}", amalg_graph_to_svg(&g2));
    } else {
        println!("product board:");
        print!("{}", board_to_ascii(&w.board));
        println!();
        println!("vertical-tie grid graph:");
        print!("{}", amalg_graph_to_ascii(&g1));
        println!();
        println!("horizontal-tie grid graph:");
        print!("{}", amalg_graph_to_ascii(&g2));
        println!();
    }

    let mut out = DocumentBuilder::new();
    out.push_structure("dprime", &w.domain);
    out.push_structure("b", &RelStructure::antidiagonal_on(phi1.domain()));
    out.push_structure("c", &RelStructure::antidiagonal_on(phi2.domain()));
    out.push_map("psi1", "dprime", "b", &w.to_first);
    out.push_map("psi2", "dprime", "c", &w.to_second);
    print!("{}", out.to_text());
    witness_report(&phi1, &phi2, &w.domain, &w.to_first, &w.to_second)
}

fn chessboard_render(path: &Path, svg: bool) -> Result<(), Failure> {
    let doc = load_document(path)?;
    let (f, g) = first_two_maps(&doc, path)?;
    let board = product_coloring(&f, &g).map_err(check)?;
    if svg {
        println!("{}", board_to_svg(&board));
    } else {
        print!("{}", board_to_ascii(&board));
    }
    Ok(())
}

fn chessboard_steinhaus(
    rows: i64,
    cols: i64,
    exhaustive: bool,
    instances: usize,
    seed: u64,
) -> Result<(), Failure> {
    if rows < 1 || cols < 1 {
        return Err(usage("rows and cols must be at least 1"));
    }
    let report = if exhaustive {
        if rows * cols > 12 {
            return Err(usage("exhaustive sweeps need rows*cols <= 12"));
        }
        verify_steinhaus(rows, cols)
    } else {
        if rows * cols > 25 {
            return Err(usage("sampled sweeps need rows*cols <= 25"));
        }
        sample_steinhaus(rows, cols, instances, seed)
    };
    print_report(&report, false)
}

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let max_size = |default: i64, cap: i64| -> Result<i64, Failure> {
        let v = args.max_size.unwrap_or(default);
        if v < 1 || v > cap {
            Err(usage(format!("--max-size must be in 1..={cap}")))
        } else {
            Ok(v)
        }
    };
    let instances = |default: usize| args.instances.unwrap_or(default);
    let report = match args.property {
        Property::Membership => verify_family_membership(max_size(3, 4)?),
        Property::Covers => verify_covers(max_size(4, 4)?),
        Property::Jpp => verify_jpp(max_size(3, 4)?, instances(50), args.seed),
        Property::Ap => verify_ap_linear(max_size(4, 6)?, instances(200), args.seed),
        Property::Cap => verify_cap(instances(100), max_size(8, 16)?, args.seed),
        Property::Coinitiality => verify_coinitiality(max_size(4, 4)?),
        Property::Wap => verify_wap(max_size(3, 4)?, instances(5), args.seed),
        Property::Steinhaus => {
            let rows = args.rows.unwrap_or(3);
            let cols = args.cols.unwrap_or(3);
            if rows < 1 || cols < 1 || rows * cols > 12 {
                return Err(usage("steinhaus needs rows, cols >= 1 and rows*cols <= 12"));
            }
            verify_steinhaus(rows, cols)
        }
        Property::Structural => verify_structural(max_size(6, 16)?, instances(50), args.seed),
        Property::Tower => verify_tower(instances(10), args.seed),
    };
    print_report(&report, args.json)
}

fn tower_build(targets: &Path, out: &Path) -> Result<(), Failure> {
    let doc = load_document(targets)?;
    let structures = doc.structures();
    if structures.is_empty() {
        return Err(usage(format!("{}: no structures", targets.display())));
    }
    let mut tower = new_tower();
    for (name, a) in &structures {
        if a.s.is_none() {
            return Err(usage(format!("target {name} has no relation")));
        }
        tower = extend_tower(&tower, a).map_err(|e| check(format!("target {name}: {e}")))?;
    }
    fs::write(out, tower.to_text())
        .map_err(|e| Failure::Check(format!("{}: {}", out.display(), e)))?;
    println!(
        "tower with {} levels written to {}",
        tower.height(),
        out.display()
    );
    print_report(&check_tower(&tower), false)
}

fn tower_check(path: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {}", path.display(), e)))?;
    let tower = Tower::from_text(&text)
        .map_err(|e| Failure::Parse(format!("{}: {}", path.display(), e)))?;
    println!("tower with {} levels", tower.height());
    print_report(&check_tower(&tower), false)
}
