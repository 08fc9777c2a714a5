mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use planeweave::arrangements::{
    exhaustive_grid_search, find_k_grid, generate_no_grid_family, ArrangementError, GridCertificate,
    DEFAULT_GRID_SEARCH_LIMIT,
};
use planeweave::graphs::{
    generate_lower_bound_graph, heights, lower_bound_layer_sizes, random_2degenerate, DegenerateGraph, GraphError,
    DEFAULT_MULTIPLICITY,
};
use planeweave::io::{parse_drawing, parse_graph, parse_segments, write_drawing, write_graph, write_segments, IoError};
use planeweave::layout::{construct_drawing_traced, ColoredDrawing, EdgeColor, LayoutError};
use planeweave::verify::{
    check_feasible, color_class_is_forest, colors_used, drawing_conflict_graph, exact_limit_from_env,
    min_forest_decomposition_of, min_plane_decomposition, monochromatic_crossings, VerifyError,
};

#[derive(Parser)]
#[command(name = "planeweave", version, about = "Exact drawings of 2-degenerate graphs in four plane forests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    LowerBound,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph file from one of the built-in families.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MULTIPLICITY)]
        multiplicity: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a four-color drawing of a 2-degenerate graph.
    Draw {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report slope, epsilon and feasibility for every level.
        #[arg(long)]
        trace: bool,
    },
    /// Check a drawing against its graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        drawing: PathBuf,
    },
    /// Minimum plane and plane-forest decompositions of a fixed drawing.
    Decompose {
        #[arg(long)]
        drawing: PathBuf,
    },
    /// Search a red/blue segment family for a k-grid.
    Gridfind {
        #[arg(long)]
        segments: PathBuf,
        #[arg(long)]
        k: usize,
        /// Try every pair of k-subsets; does not require all red/blue pairs
        /// to cross.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Write the 3k + 3k segment family without a (k+1)-grid.
    #[command(name = "noGk", alias = "nogk")]
    NoGk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a drawing as SVG.
    Svg {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Label vertices with their exact coordinates.
        #[arg(long)]
        exact_labels: bool,
    },
    /// Draw a graph and summarize every check on the result.
    Report {
        #[arg(long)]
        graph: PathBuf,
    },
}

/// Failure with its stable exit code.
struct Failure {
    code: u8,
    msg: String,
}

const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;
const OVERFLOW: u8 = 3;
const NOT_DEGENERATE: u8 = 4;
const NOT_ALL_CROSSING: u8 = 5;

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::NotTwoDegenerate { .. } => NOT_DEGENERATE,
            GraphError::SizeOverflow { .. } => OVERFLOW,
            _ => USAGE,
        };
        fail(code, e.to_string())
    }
}

impl From<ArrangementError> for Failure {
    fn from(e: ArrangementError) -> Self {
        let code = match e {
            ArrangementError::NotAllCrossing { .. } => NOT_ALL_CROSSING,
            ArrangementError::SearchLimitExceeded { .. } => OVERFLOW,
            _ => USAGE,
        };
        fail(code, e.to_string())
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Graph(g) => g.into(),
            IoError::Family(f) => f.into(),
            IoError::Parse { .. } => fail(USAGE, e.to_string()),
        }
    }
}

impl From<LayoutError> for Failure {
    fn from(e: LayoutError) -> Self {
        match e {
            LayoutError::Graph(g) => g.into(),
            other => fail(VERIFY_FAILED, other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        fail(VERIFY_FAILED, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))
}

/// Writes `content` to `out`, or to stdout when absent. Returns whether a
/// file was written, so summaries can go to stdout without mixing.
fn emit(out: Option<&Path>, content: &str) -> Result<bool, Failure> {
    match out {
        Some(p) => {
            fs::write(p, content).map_err(|e| fail(USAGE, format!("{}: {e}", p.display())))?;
            Ok(true)
        }
        None => {
            print!("{content}");
            Ok(false)
        }
    }
}

fn say(to_stdout: bool, text: &str) {
    if to_stdout {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

fn load_graph(path: &Path) -> Result<DegenerateGraph, Failure> {
    Ok(parse_graph(&read(path)?)?.into_graph()?)
}

fn load_drawing(path: &Path) -> Result<ColoredDrawing, Failure> {
    Ok(parse_drawing(&read(path)?)?)
}

fn generate(family: Family, n: usize, multiplicity: usize, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let (g, summary) = match family {
        Family::LowerBound => {
            let g = generate_lower_bound_graph(n, multiplicity)?;
            let sizes = lower_bound_layer_sizes(n, multiplicity).expect("generation succeeded");
            (g, format!("layers {} {} {} {}\n", sizes[0], sizes[1], sizes[2], sizes[3]))
        }
        Family::Random => {
            let g = random_2degenerate(n, seed);
            let sizes: Vec<String> = heights(&g).levels.iter().map(|l| l.len().to_string()).collect();
            (g, format!("levels {}\n", sizes.join(" ")))
        }
    };
    let wrote = emit(out, &write_graph(&g))?;
    say(wrote, &format!("vertices {} edges {}\n{summary}", g.vertex_count(), g.edge_count()));
    Ok(())
}

fn draw(input: &Path, out: Option<&Path>, trace: bool) -> Result<(), Failure> {
    let g = load_graph(input)?;
    let c = construct_drawing_traced(&g)?;
    let mut log = String::new();
    let mut all_pass = true;
    if trace {
        for lv in &c.levels {
            let report = check_feasible(&lv.drawing, &c.normalized, lv.height)?;
            all_pass &= report.overall();
            writeln!(log, "level {} slope {} epsilon {}\n{report}", lv.height, lv.slope, lv.epsilon).unwrap();
        }
    }
    let wrote = emit(out, &write_drawing(&c.drawing))?;
    say(wrote, &log);
    if all_pass {
        Ok(())
    } else {
        Err(fail(VERIFY_FAILED, "a level failed its feasibility check"))
    }
}

/// Feasibility at the top level, crossings and forest checks.
fn verify_text(g: &DegenerateGraph, d: &ColoredDrawing) -> (String, bool) {
    let k = heights(g).max_height();
    let mut s = String::new();
    let mut ok = match check_feasible(d, g, k) {
        Ok(report) => {
            writeln!(s, "{report}").unwrap();
            report.overall()
        }
        Err(e) => {
            writeln!(s, "INVALID {e}").unwrap();
            return (s, false);
        }
    };
    let crossings = monochromatic_crossings(d);
    writeln!(s, "monochromatic crossings {}", crossings.len()).unwrap();
    ok &= crossings.is_empty();
    for c in EdgeColor::ALL {
        let forest = color_class_is_forest(d, c);
        writeln!(s, "forest {c} {}", if forest { "PASS" } else { "FAIL" }).unwrap();
        ok &= forest;
    }
    writeln!(s, "RESULT {}", if ok { "PASS" } else { "FAIL" }).unwrap();
    (s, ok)
}

fn verify(graph: &Path, drawing: &Path) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let d = load_drawing(drawing)?;
    let (text, ok) = verify_text(&g, &d);
    print!("{text}");
    if ok {
        Ok(())
    } else {
        Err(fail(VERIFY_FAILED, "verification failed"))
    }
}

fn decompose_text(d: &ColoredDrawing) -> Result<String, Failure> {
    let cg = drawing_conflict_graph(d)?;
    let limit = exact_limit_from_env();
    let plane = min_plane_decomposition(&cg, limit);
    let forest = min_forest_decomposition_of(&cg, limit);
    let mode = |exact: bool| if exact { "exact" } else { "upper-bound" };
    Ok(format!(
        "edges {}\ncrossing pairs {}\ndrawn colors {}\nplane {} {}\nplane-forest {} {}\n",
        cg.node_count(),
        cg.conflict_count(),
        colors_used(d),
        plane.colors,
        mode(plane.exact),
        forest.colors,
        mode(forest.exact)
    ))
}

fn print_certificate(cert: &GridCertificate) {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    println!("grid k={}", cert.k());
    println!("red {}", join(&cert.red_idx));
    println!("blue {}", join(&cert.blue_idx));
    println!("order-along-red {}", join(&cert.cross_order_red));
    println!("order-along-blue {}", join(&cert.cross_order_blue));
}

fn gridfind(segments: &Path, k: usize, exhaustive: bool) -> Result<(), Failure> {
    if k == 0 {
        return Err(fail(USAGE, "--k must be positive"));
    }
    let f = parse_segments(&read(segments)?)?;
    let found = if exhaustive {
        exhaustive_grid_search(&f, k, DEFAULT_GRID_SEARCH_LIMIT)?
    } else {
        find_k_grid(&f, k)?
    };
    match found {
        Some(cert) => print_certificate(&cert),
        None => println!("none (exhaustive)"),
    }
    Ok(())
}

fn no_gk(k: usize, out: Option<&Path>) -> Result<(), Failure> {
    if k == 0 {
        return Err(fail(USAGE, "--k must be positive"));
    }
    let f = generate_no_grid_family(k)?;
    let wrote = emit(out, &write_segments(&f))?;
    say(wrote, &format!("red {} blue {}\n", f.red().len(), f.blue().len()));
    Ok(())
}

fn report(graph: &Path) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let c = construct_drawing_traced(&g)?;
    let (num_bits, den_bits) = c.drawing.coordinate_bits();
    println!("vertices {} edges {}", g.vertex_count(), g.edge_count());
    println!("height {}", heights(&g).max_height());
    println!("dummy {}", if c.dummy.is_some() { "yes" } else { "no" });
    println!("coordinate bits numerator {num_bits} denominator {den_bits}");
    let mut ok = true;
    for lv in &c.levels {
        let r = check_feasible(&lv.drawing, &c.normalized, lv.height)?;
        println!("level {} {}", lv.height, if r.overall() { "PASS" } else { "FAIL" });
        ok &= r.overall();
    }
    let (text, verified) = verify_text(&g, &c.drawing);
    print!("{text}");
    print!("{}", decompose_text(&c.drawing)?);
    if ok && verified {
        Ok(())
    } else {
        Err(fail(VERIFY_FAILED, "report found failures"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { family, n, multiplicity, seed, out } => generate(family, n, multiplicity, seed, out.as_deref()),
        Command::Draw { input, out, trace } => draw(&input, out.as_deref(), trace),
        Command::Verify { graph, drawing } => verify(&graph, &drawing),
        Command::Decompose { drawing } => {
            print!("{}", decompose_text(&load_drawing(&drawing)?)?);
            Ok(())
        }
        Command::Gridfind { segments, k, exhaustive } => gridfind(&segments, k, exhaustive),
        Command::NoGk { k, out } => no_gk(k, out.as_deref()),
        Command::Svg { drawing, out, scale, exact_labels } => {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(fail(USAGE, "--scale must be a positive number"));
            }
            let d = load_drawing(&drawing)?;
            emit(out.as_deref(), &svg::render(&d, scale, exact_labels)).map(|_| ())
        }
        Command::Report { graph } => report(&graph),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
