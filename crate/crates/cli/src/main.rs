use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use suture_core::lift::{search_lift, LiftOutcome, LiftProblem};
use suture_core::verify::{run_suite, Suite};
use suture_core::{
    enumerate_matchings, euler_grading, glue, glue_map, BoundaryArc, DividingFile, DividingSet, GluingDatum, MarkedSurface, ModuleOptions, SurfaceFile,
    TqftModule,
};

mod render;

#[derive(Parser)]
#[command(name = "suture", version, about = "Z/2 contact classes of dividing sets on marked surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// List the crossingless matchings of the disk with 2n marked points.
    Matchings {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Build V(Σ, F) and print its rank by grading.
    Module {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = suture_core::module::DEFAULT_BOUND)]
        bound: usize,
        /// Treat a rank different from 2^(n − χ) as a failure.
        #[arg(long)]
        strict: bool,
        /// Write the full presentation as JSON.
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Class vectors of dividing sets.
    Class {
        #[arg(long)]
        surface: PathBuf,
        /// Dividing-set file; repeat to print several classes and their sum.
        #[arg(long = "k", required = true)]
        k: Vec<PathBuf>,
        #[arg(long, default_value_t = suture_core::module::DEFAULT_BOUND)]
        bound: usize,
    },
    /// Matrix of the gluing map described by a datum file.
    Glue {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, default_value_t = suture_core::module::DEFAULT_BOUND)]
        bound: usize,
    },
    /// Search for an integer lift of the six-point disk classes.
    Lift {
        #[arg(long = "box", default_value_t = 4)]
        search_box: i64,
        /// Accept images up to sign.
        #[arg(long)]
        relaxed: bool,
        /// Use the control pattern with two equal rows.
        #[arg(long)]
        degenerate: bool,
        /// Re-verify a certificate instead of searching.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Run a named check suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SurfaceArgs {
    /// Disk with this many marked points.
    #[arg(long)]
    disk: Option<usize>,
    /// Annulus with the given marked points on each boundary circle.
    #[arg(long, num_args = 2, value_names = ["OUTER", "INNER"])]
    annulus: Option<Vec<usize>>,
    /// Once-punctured torus with this many marked points.
    #[arg(long)]
    punctured_torus: Option<usize>,
    /// Surface file.
    #[arg(long)]
    surface: Option<PathBuf>,
}

/// A failed run: exit code and message.
struct Failure(u8, String);

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(2, e.to_string())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Result<MarkedSurface, Failure> {
    let file: SurfaceFile = read_json(path)?;
    MarkedSurface::from_file(&file).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn surface_from(args: &SurfaceArgs) -> Result<MarkedSurface, Failure> {
    if let Some(p) = args.disk {
        return MarkedSurface::disk(p).map_err(input);
    }
    if let Some(a) = &args.annulus {
        return MarkedSurface::annulus(a[0], a[1]).map_err(input);
    }
    if let Some(f) = args.punctured_torus {
        return MarkedSurface::punctured_torus(f).map_err(input);
    }
    load_surface(args.surface.as_ref().expect("clap requires one surface"))
}

fn build(s: &MarkedSurface, bound: usize) -> Result<TqftModule, Failure> {
    TqftModule::build(s, ModuleOptions::with_bound(bound)).map_err(input)
}

fn graded_line(m: &TqftModule) -> String {
    let parts: Vec<String> = m.graded_ranks().iter().rev().map(|(e, r)| format!("e={e}:{r}")).collect();
    format!("rank {}; {}", m.rank(), parts.join(", "))
}

fn cmd_matchings(n: usize, max: usize, format: Format) -> Result<(), Failure> {
    if n == 0 || n > max {
        return Err(input(format!("n must lie in 1..={max}")));
    }
    let s = MarkedSurface::disk(2 * n).map_err(input)?;
    for (i, k) in enumerate_matchings(n).iter().enumerate() {
        let e = euler_grading(&s, k).map_err(input)?;
        match format {
            Format::Machine => println!("{}\t{e}", k.pairing_string()),
            Format::Human => {
                println!("#{i} {}  e={e}", k.pairing_string());
                println!("{}", render::chord_diagram(&k.chord_pairs(0), 2 * n));
            }
        }
    }
    Ok(())
}

fn cmd_module(s: &MarkedSurface, bound: usize, strict: bool, export: Option<&Path>, format: Format) -> Result<(), Failure> {
    let m = build(s, bound)?;
    if let Some(path) = export {
        let json = serde_json::to_string_pretty(&m.export()).map_err(input)?;
        fs::write(path, json + "\n").map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    let expected = m.expected_rank();
    match format {
        Format::Machine => {
            println!("rank\t{}", m.rank());
            for (e, r) in m.graded_ranks().iter().rev() {
                println!("e\t{e}\t{r}");
            }
        }
        Format::Human => {
            println!("{}", graded_line(&m));
            println!("chi {}, expected rank {expected}, {} generators, {} relations, bound {bound}", s.euler_characteristic(), m.generators().len(), m.relations().len());
            if m.unresolved_triples() > 0 {
                println!("{} bypass triples leave the bound", m.unresolved_triples());
            }
        }
    }
    if m.rank() as u64 != expected {
        let msg = format!("rank {} differs from expected {expected}", m.rank());
        if strict {
            return Err(Failure(1, msg));
        }
        eprintln!("warning: {msg}");
    }
    Ok(())
}

fn cmd_class(surface: &Path, ks: &[PathBuf], bound: usize) -> Result<(), Failure> {
    let s = load_surface(surface)?;
    let m = build(&s, bound)?;
    let mut sum = m.zero_vector();
    for path in ks {
        let file: DividingFile = read_json(path)?;
        let (ks, k) = DividingSet::from_file(&file).map_err(|e| input(format!("{}: {e}", path.display())))?;
        if ks != s {
            return Err(input(format!("{} lives on a different surface", path.display())));
        }
        let c = m.class_of(&k).map_err(input)?;
        sum.xor_assign(&c.coords);
        println!("{}\t{}\te={}{}", path.display(), c.coords, c.grading, if c.zero { "\tzero" } else { "" });
    }
    if ks.len() > 1 {
        println!("sum\t{sum}");
    }
    Ok(())
}

/// Gluing datum on disk: surfaces (paths relative to the datum) whose
/// disjoint union is the source, and the two arcs by piece and marked ordinal.
#[derive(Deserialize)]
struct DatumFile {
    surfaces: Vec<PathBuf>,
    gamma: BoundaryArc,
    gamma_prime: BoundaryArc,
}

fn cmd_glue(path: &Path, bound: usize) -> Result<(), Failure> {
    let datum: DatumFile = read_json(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut source: Option<MarkedSurface> = None;
    for p in &datum.surfaces {
        let s = load_surface(&dir.join(p))?;
        source = Some(match source {
            None => s,
            Some(acc) => acc.disjoint_union(&s),
        });
    }
    let source = source.ok_or_else(|| input("datum lists no surfaces"))?;
    let d = GluingDatum { source, gamma: datum.gamma, gamma_prime: datum.gamma_prime };
    let gluing = glue(&d).map_err(input)?;
    let m_src = build(&d.source, bound)?;
    let m_tgt = build(gluing.surface(), bound)?;
    let map = glue_map(&d, &m_src, &m_tgt).map_err(|e| Failure(1, e.to_string()))?;
    println!("source {}", graded_line(&m_src));
    println!("target {}", graded_line(&m_tgt));
    println!("map rank {}", map.rank());
    for (col, &g) in m_src.basis().iter().enumerate() {
        println!("{}\t{}", map.columns[col], m_src.generators()[g]);
    }
    Ok(())
}

fn cmd_lift(search_box: i64, relaxed: bool, degenerate: bool, replay: Option<&Path>) -> Result<(), Failure> {
    if let Some(path) = replay {
        let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        return match suture_core::lift::replay(&text) {
            Ok((_, LiftOutcome::Infeasible)) => {
                println!("replay ok: INFEASIBLE");
                Ok(())
            }
            Ok((_, LiftOutcome::Feasible(_))) => {
                println!("replay ok: FEASIBLE");
                Ok(())
            }
            Err(e) => Err(Failure(1, format!("replay failed: {e}"))),
        };
    }
    if search_box < 2 {
        return Err(input("box must be at least 2"));
    }
    let mut p = if degenerate { LiftProblem::degenerate(search_box) } else { LiftProblem::attachments(search_box) };
    if relaxed {
        p = p.relaxed();
    }
    let r = search_lift(&p);
    match &r.outcome {
        LiftOutcome::Infeasible => println!("INFEASIBLE"),
        LiftOutcome::Feasible(_) => println!("FEASIBLE"),
    }
    print!("{}", r.certificate);
    if !relaxed && !degenerate && !r.is_infeasible() {
        return Err(Failure(1, "an exact lift exists, contradicting the impossibility argument".into()));
    }
    Ok(())
}

fn cmd_verify(suite: &str) -> Result<(), Failure> {
    let suite: Suite = suite.parse().map_err(input)?;
    let checks = run_suite(suite);
    for c in &checks {
        println!("{c}");
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", checks.len());
    if passed != checks.len() {
        return Err(Failure(1, "some checks failed".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Matchings { n, max, format } => cmd_matchings(*n, *max, *format),
        Command::Module { surface, bound, strict, export, format } => {
            surface_from(surface).and_then(|s| cmd_module(&s, *bound, *strict, export.as_deref(), *format))
        }
        Command::Class { surface, k, bound } => cmd_class(surface, k, *bound),
        Command::Glue { datum, bound } => cmd_glue(datum, *bound),
        Command::Lift { search_box, relaxed, degenerate, replay } => cmd_lift(*search_box, *relaxed, *degenerate, replay.as_deref()),
        Command::Verify { suite } => cmd_verify(suite),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            log::debug!("exit code {code}");
            ExitCode::from(code)
        }
    }
}
