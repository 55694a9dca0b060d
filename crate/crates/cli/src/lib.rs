//! Command-line front end: reads a polytope (and partition), runs one stage
//! of the pipeline and reports the result as text or JSON.

pub mod error;
pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_degen::ideal::{toric_ideal, IdealGB, OrderChoice};
use toric_degen::lifting::build_a_plus;
use toric_degen::pipeline::{degenerate, ordered_points, Degeneration};
use toric_degen::exact_linalg::IntMatrix;
use toric_degen::polytope::{cut_hyperplane, is_semistable, validate_partition, CutHyperplane, LatticePolytope, Point};

pub use error::CliError;
use input::{read_input, read_partition, read_point_order, to_points, JsonInt};
use report::{Check, Component, Lifts, Report};

#[derive(Debug, Parser)]
#[command(name = "toric-degen", version, about = "Toric ideals and two-piece semi-stable degenerations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the lattice points of the polytope with their indices.
    Points(Common),
    /// Validate a partition: covering, smoothness, semi-stability and cut.
    Check(Common),
    /// Print the exponent matrices A, B_F, B_G and the transform E.
    Matrices(Common),
    /// Toric ideal of the polytope.
    Ideal(Common),
    /// Degeneration ideals I_F and I_G with certificates.
    Degenerate(Common),
    /// Central fiber equations and per-piece vanishing verdicts.
    CentralFiber(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Polytope file (JSON).
    pub file: PathBuf,
    /// Partition file holding `{"pieces": [...]}`; overrides embedded pieces.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Order::Grevlex)]
    pub order: Order,
    #[arg(long, value_enum, default_value_t = Lift::Both)]
    pub lift: Lift,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// File with an explicit lattice point order.
    #[arg(long)]
    pub point_order: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lift {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl From<Order> for OrderChoice {
    fn from(o: Order) -> Self {
        match o {
            Order::Lex => OrderChoice::Lex,
            Order::Grevlex => OrderChoice::Grevlex,
        }
    }
}

struct Job {
    parent: LatticePolytope,
    pieces: Option<Vec<LatticePolytope>>,
    point_order: Option<Vec<Point>>,
    order: OrderChoice,
}

fn load(c: &Common) -> Result<Job, CliError> {
    let input = read_input(&c.file)?;
    let parent = input.polytope()?;
    let specs = match &c.partition {
        Some(path) => Some(read_partition(path)?),
        None => input.pieces.clone(),
    };
    let pieces = specs.map(|ps| ps.iter().map(|p| p.polytope(parent.dim())).collect::<Result<Vec<_>, _>>()).transpose()?;
    let order_list = match &c.point_order {
        Some(path) => Some(read_point_order(path)?),
        None => input.point_order.clone(),
    };
    let point_order = order_list.map(|l| to_points(&l)).transpose()?;
    Ok(Job { parent, pieces, point_order, order: c.order.into() })
}

fn points_json(points: &[Point]) -> Vec<Vec<JsonInt>> {
    points.iter().map(|p| p.iter().map(JsonInt::from).collect()).collect()
}

fn matrix_json(m: &IntMatrix) -> report::Matrix {
    m.to_rows().iter().map(|r| r.iter().map(JsonInt::from).collect()).collect()
}

fn gens(i: &IdealGB) -> Vec<String> {
    i.basis().iter().map(ToString::to_string).collect()
}

fn order_name(o: OrderChoice) -> String {
    o.to_string()
}

fn points_of(job: &Job) -> Result<Vec<Point>, CliError> {
    ordered_points(&job.parent, job.point_order.as_deref()).map_err(CliError::from_pipeline)
}

fn two_pieces(job: &Job) -> Result<(&LatticePolytope, &LatticePolytope), CliError> {
    match job.pieces.as_deref() {
        None => Err(CliError::validation("this command needs a partition (--partition FILE or a \"pieces\" key)")),
        Some([a, b]) => Ok((a, b)),
        Some(other) => Err(CliError::unsupported(format!("degenerations need exactly 2 pieces, got {}", other.len()))),
    }
}

fn run_pipeline(job: &Job) -> Result<Degeneration, CliError> {
    let (a, b) = two_pieces(job)?;
    degenerate(&job.parent, a, b, job.point_order.as_deref(), job.order).map_err(CliError::from_pipeline)
}

fn base(command: &str, job: &Job) -> Report {
    Report { command: command.into(), order: order_name(job.order), ..Report::default() }
}

fn cut_text(d: &CutHyperplane) -> String {
    format!("{d} >= 0 on piece 2")
}

fn cmd_points(c: &Common) -> Result<Report, CliError> {
    // a single point is the one degenerate input `points` accepts
    let single = read_input(&c.file).ok().and_then(|i| {
        let first = i.vertices.first()?.clone();
        i.vertices.iter().all(|v| *v == first).then_some((i, first))
    });
    if let Some((input, p)) = single {
        if input.polytope().is_err() {
            if p.len() != input.dim {
                return Err(CliError::validation(format!("point has dimension {}, expected {}", p.len(), input.dim)));
            }
            let mut r = Report { command: "points".into(), order: order_name(c.order.into()), ..Report::default() };
            r.points = Some(vec![p]);
            return Ok(r);
        }
    }
    let job = load(c)?;
    let mut r = base("points", &job);
    r.points = Some(points_json(&points_of(&job)?));
    Ok(r)
}

fn cmd_check(c: &Common) -> Result<Report, CliError> {
    let job = load(c)?;
    let pieces = job.pieces.clone().ok_or_else(|| CliError::validation("check needs a partition (--partition FILE or a \"pieces\" key)"))?;
    let mut r = base("check", &job);
    r.points = Some(points_json(&points_of(&job)?));
    let smooth_pieces: Vec<bool> = pieces.iter().map(LatticePolytope::is_smooth).collect();
    let mut partition_error = None;
    let mut cut = None;
    if pieces.len() == 2 {
        match validate_partition(&job.parent, &pieces[0], &pieces[1]) {
            Ok(p) => cut = Some(cut_text(&cut_hyperplane(&p).map_err(CliError::from_polytope)?)),
            Err(e) => partition_error = Some(e.to_string()),
        }
    } else if pieces.len() == 1 && pieces[0] != job.parent {
        partition_error = Some("the single piece differs from the polytope".into());
    }
    let (semistable, violation) = match is_semistable(&job.parent, &pieces) {
        Ok(rep) => (rep.semistable, rep.violation.map(|v| v.to_string())),
        Err(e) => {
            partition_error.get_or_insert(e.to_string());
            (false, None)
        }
    };
    let valid = partition_error.is_none();
    r.check = Some(Check {
        valid_partition: valid,
        partition_error,
        smooth_polytope: job.parent.is_smooth(),
        smooth_pieces,
        semistable: valid && semistable,
        violation,
        cut,
    });
    r.certificates.semistable = Some(valid && semistable);
    Ok(r)
}

fn cmd_matrices(c: &Common) -> Result<Report, CliError> {
    let job = load(c)?;
    let mut r = base("matrices", &job);
    if job.pieces.is_none() {
        let points = points_of(&job)?;
        r.matrices.a = Some(matrix_json(&build_a_plus(&points).matrix));
        r.points = Some(points_json(&points));
        return Ok(r);
    }
    let d = run_pipeline(&job)?;
    fill_matrices(&mut r, &d);
    r.certificates.e_verified = Some(d.certificates.e_verified);
    r.certificates.kernels_equal = Some(d.certificates.kernels_equal);
    Ok(r)
}

fn fill_matrices(r: &mut Report, d: &Degeneration) {
    r.points = Some(points_json(&d.points));
    r.cut = Some(cut_text(&d.cut));
    r.lifts = Some(Lifts { f: d.f.values.iter().map(JsonInt::from).collect(), g: d.g.values.iter().map(JsonInt::from).collect() });
    r.matrices.a = Some(matrix_json(&d.a.matrix));
    r.matrices.bf = Some(matrix_json(&d.bf.matrix));
    r.matrices.bg = Some(matrix_json(&d.bg.matrix));
    r.matrices.e = Some(matrix_json(&d.e));
}

fn cmd_ideal(c: &Common) -> Result<Report, CliError> {
    let job = load(c)?;
    let mut r = base("ideal", &job);
    let points = points_of(&job)?;
    r.ideals.i = Some(gens(&toric_ideal(&points, job.order)));
    r.points = Some(points_json(&points));
    Ok(r)
}

fn cmd_degenerate(c: &Common) -> Result<Report, CliError> {
    let job = load(c)?;
    let d = run_pipeline(&job)?;
    let mut r = base("degenerate", &job);
    fill_matrices(&mut r, &d);
    if c.lift != Lift::G {
        r.ideals.i_f = Some(gens(&d.ideal_f));
    }
    if c.lift != Lift::F {
        r.ideals.i_g = Some(gens(&d.ideal_g));
    }
    let cert = d.certificates;
    r.certificates.gb_equal = Some(cert.gb_equal);
    r.certificates.kernels_equal = Some(cert.kernels_equal);
    r.certificates.e_verified = Some(cert.e_verified);
    r.certificates.semistable = Some(cert.semistable);
    Ok(r)
}

fn cmd_central_fiber(c: &Common) -> Result<Report, CliError> {
    let job = load(c)?;
    let d = run_pipeline(&job)?;
    let mut r = base("central-fiber", &job);
    r.points = Some(points_json(&d.points));
    r.cut = Some(cut_text(&d.cut));
    r.ideals.i0 = Some(gens(&d.central));
    r.components = Some(
        [&d.partition.first, &d.partition.second]
            .iter()
            .enumerate()
            .map(|(k, piece)| Component {
                piece: k + 1,
                points: d.points.iter().enumerate().filter(|(_, m)| piece.contains(m)).map(|(j, _)| j).collect(),
                vanishes: d.components[k],
            })
            .collect(),
    );
    r.certificates.semistable = Some(d.certificates.semistable);
    Ok(r)
}

/// Runs one command and returns the rendered output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let (report, format) = match &cli.command {
        Command::Points(c) => (cmd_points(c)?, c.format),
        Command::Check(c) => (cmd_check(c)?, c.format),
        Command::Matrices(c) => (cmd_matrices(c)?, c.format),
        Command::Ideal(c) => (cmd_ideal(c)?, c.format),
        Command::Degenerate(c) => (cmd_degenerate(c)?, c.format),
        Command::CentralFiber(c) => (cmd_central_fiber(c)?, c.format),
    };
    Ok(match format {
        Format::Text => report::render_text(&report),
        Format::Json => report::render_json(&report),
    })
}
