use std::f64::consts::PI;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use isoperim::constructions::{
    build_fuglede_sequence, build_two_disk_competitor, paper_constants, q_poly, solve_r1_star,
};
use isoperim::error::Error;
use isoperim::functionals::evaluate;
use isoperim::geometry::{Disk, Point, Shape};
use isoperim::optimality::{closure_gap, optimality_residual, shoot, ShootingParams};
use isoperim::optimizer::{minimize, synthesize, OptimConfig, ShapeParam};
use isoperim::svg;

#[derive(Parser)]
#[command(
    name = "isoperim",
    about = "Isoperimetric deficit vs barycentric asymmetry: evaluation, competitors, optimality checks and shape optimization",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate all functionals of a shape file and print the report as JSON
    Eval {
        shape_file: String,
    },
    /// Emit a closed-form competitor shape with its analytic sidecar
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Run the reference-value suite and print a pass/fail table
    Verify {
        /// only run rows whose name contains this substring
        #[arg(long)]
        filter: Option<String>,
        /// machine-readable JSON output
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the curvature optimality condition along a shape boundary
    Residual {
        shape_file: String,
        /// container diameter; enables exclusion near the container circle
        #[arg(long)]
        container_d: Option<f64>,
        /// write the profile CSV here instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Integrate the boundary pendulum ODE and report the closure gap
    Shoot(ShootArgs),
    /// Minimize J over two Fourier components under area and diameter constraints
    Optimize(OptimizeArgs),
    /// Render a shape as SVG with the barycentric disk overlaid
    Render {
        shape_file: String,
        #[arg(long)]
        container_d: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Two tangentially-arranged disks saturating the diameter bound
    TwoDisks {
        #[arg(long = "D")]
        d: f64,
        #[arg(long, default_value = "two-disks")]
        out: String,
    },
    /// The explicit vanishing-objective two-disk family, indexed by n
    Fuglede {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "fuglede")]
        out: String,
    },
}

#[derive(Args)]
struct ShootArgs {
    #[arg(long)]
    mu1: f64,
    #[arg(long)]
    a_in: f64,
    #[arg(long)]
    a_out: f64,
    #[arg(long)]
    x0: f64,
    #[arg(long)]
    y0: f64,
    #[arg(long)]
    theta0: f64,
    /// number of integration steps over the arclength budget
    #[arg(long, default_value_t = 7000)]
    steps: usize,
    /// total arclength (defaults to 2 pi)
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long, default_value_t = 50.0)]
    bound: f64,
    /// write the profile CSV here
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long = "D", default_value_t = 10.0)]
    d: f64,
    /// seeding strategy (currently the two-disk competitor)
    #[arg(long, value_enum, default_value_t = InitKind::TwoDisks)]
    init: InitKind,
    #[arg(long, default_value_t = 8)]
    modes: usize,
    #[arg(long = "iters", default_value_t = 300)]
    max_iters: usize,
    #[arg(long, default_value_t = 512)]
    resolution: usize,
    #[arg(long, default_value_t = 1e-6)]
    fd_step: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol_grad: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output file prefix for shape JSON, trace CSV and config echo
    #[arg(long, default_value = "optimize")]
    out: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitKind {
    TwoDisks,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("ISOPERIM_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn load_shape(path: &str) -> Result<Shape, Error> {
    let text = fs::read_to_string(path)?;
    let shape = Shape::from_json(&text)?;
    shape.validate()?;
    Ok(shape)
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Eval { shape_file } => {
            let shape = load_shape(&shape_file)?;
            let report = evaluate(&shape)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Construct { kind } => construct(kind)?,
        Command::Verify { filter, json } => return Ok(verify(filter.as_deref(), json)),
        Command::Residual {
            shape_file,
            container_d,
            out,
        } => {
            let shape = load_shape(&shape_file)?;
            let container = container_d.map(|d| Disk::new(Point::ORIGIN, d / 2.0));
            let profile = optimality_residual(&shape, container.as_ref())?;
            eprintln!(
                "samples: {}  sup-norm: {:.6e}  l2-norm: {:.6e}",
                profile.samples.len(),
                profile.sup_norm,
                profile.l2_norm
            );
            match out {
                Some(path) => fs::write(path, profile.csv())?,
                None => print!("{}", profile.csv()),
            }
        }
        Command::Shoot(args) => {
            let budget = args.budget.unwrap_or(2.0 * PI);
            let params = ShootingParams {
                a_out: args.a_out,
                a_in: args.a_in,
                mu1: args.mu1,
                start: Point::new(args.x0, args.y0),
                theta0: args.theta0,
                arclength_budget: budget,
                step: budget / args.steps as f64,
                bound: args.bound,
            };
            let gap = closure_gap(&params)?;
            println!("closure gap: {gap:.3e}");
            if let Some(path) = args.out {
                fs::write(path, shoot(&params)?.csv())?;
            }
        }
        Command::Optimize(args) => {
            let config = OptimConfig {
                d: args.d,
                modes: args.modes,
                max_iters: args.max_iters,
                fd_step: args.fd_step,
                tol_grad: args.tol_grad,
                penalty_diameter: 0.0,
                resolution: args.resolution,
                seed: args.seed,
            };
            config.validate()?;
            let init = match args.init {
                InitKind::TwoDisks => {
                    let (comp, _) = build_two_disk_competitor(args.d)?;
                    ShapeParam::from_competitor(&comp, args.modes)
                }
            };
            let (best, trace) = minimize(&config, &init)?;
            let shape = synthesize(&best, config.resolution)?;
            fs::write(format!("{}.shape.json", args.out), shape.to_json())?;
            fs::write(format!("{}.trace.csv", args.out), trace.csv())?;
            fs::write(
                format!("{}.config.json", args.out),
                serde_json::to_string_pretty(&config)?,
            )?;
            let first = trace.rows.first().map(|r| r.j);
            let last = trace.rows.last().map(|r| r.j);
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "initial_J": first,
                    "final_J": last,
                    "iterations": trace.rows.len(),
                    "stalled": trace.stalled,
                    "param": best,
                }))?
            );
        }
        Command::Render {
            shape_file,
            container_d,
            out,
        } => {
            let shape = load_shape(&shape_file)?;
            let container = container_d.map(|d| Disk::new(Point::ORIGIN, d / 2.0));
            let doc = svg::render(&shape, container.as_ref())?;
            match out {
                Some(path) => fs::write(path, doc)?,
                None => print!("{doc}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(kind: ConstructKind) -> Result<(), Error> {
    match kind {
        ConstructKind::TwoDisks { d, out } => {
            let (analytic, shape) = build_two_disk_competitor(d)?;
            fs::write(format!("{out}.shape.json"), shape.to_json())?;
            fs::write(
                format!("{out}.analytic.json"),
                serde_json::to_string_pretty(&analytic)?,
            )?;
        }
        ConstructKind::Fuglede { n, out } => {
            let (analytic, shape) = build_fuglede_sequence(n)?;
            if analytic.lambda0.is_none() {
                eprintln!(
                    "warning: for n = {n} the small disk overlaps the barycentric disk, \
                     so lambda0 < 2 and the analytic value is omitted"
                );
            }
            fs::write(format!("{out}.shape.json"), shape.to_json())?;
            fs::write(
                format!("{out}.analytic.json"),
                serde_json::to_string_pretty(&analytic)?,
            )?;
        }
    }
    Ok(())
}

struct VerifyRow {
    name: &'static str,
    expected: String,
    computed: String,
    pass: bool,
}

fn verify(filter: Option<&str>, as_json: bool) -> ExitCode {
    let mut rows: Vec<VerifyRow> = Vec::new();
    let mut add = |name: &'static str, expected: String, computed: String, pass: bool| {
        rows.push(VerifyRow {
            name,
            expected,
            computed,
            pass,
        });
    };
    let c = paper_constants();
    add(
        "thresholds/ball-limit-constant",
        "0.457474".into(),
        format!("{:.6}", c.cicalese_leonardi),
        (c.cicalese_leonardi - 0.457474).abs() < 1e-6,
    );
    add(
        "thresholds/tau-star",
        "> 0.0885".into(),
        format!("{:.6}", c.tau_star),
        c.tau_star > 0.0885,
    );
    add(
        "thresholds/equal-disk-J",
        "0.103553".into(),
        format!("{:.6}", c.equal_disk_j),
        (c.equal_disk_j - 0.103553).abs() < 1e-6,
    );
    add(
        "thresholds/R1-hat",
        "0.881075".into(),
        format!("{:.6}", c.r1_hat),
        (c.r1_hat - 0.881075).abs() < 1e-5,
    );
    for d in [10.0, 20.0, 50.0] {
        let name: &'static str = match d as u32 {
            10 => "bracket/R1-star-D10",
            20 => "bracket/R1-star-D20",
            _ => "bracket/R1-star-D50",
        };
        match solve_r1_star(d) {
            Ok(r) => {
                let lo = 1.0 - 1.0 / d - 2.0 / (d * d);
                let hi = 1.0 - 1.0 / d - 1.0 / (d * d);
                add(
                    name,
                    format!("({lo:.6}, {hi:.6})"),
                    format!("{r:.6}"),
                    lo < r && r < hi && q_poly(d, r) >= 0.0,
                );
            }
            Err(e) => add(name, "root in bracket".into(), format!("error: {e}"), false),
        }
    }
    match build_two_disk_competitor(10.0) {
        Ok((analytic, shape)) => {
            add(
                "competitor/J-below-threshold",
                "< 0.0885".into(),
                format!("{:.6}", analytic.objective),
                analytic.objective < 0.0885,
            );
            let ok = evaluate(&shape)
                .ok()
                .and_then(|r| r.objective.map(|j| (j, r.delta)))
                .map(|(j, delta)| {
                    (j - analytic.objective).abs() < 1e-3 && (delta - analytic.delta).abs() < 1e-3
                })
                .unwrap_or(false);
            add(
                "competitor/kernel-matches-analytic",
                "|J - J*| < 1e-3".into(),
                "checked".into(),
                ok,
            );
        }
        Err(e) => add(
            "competitor/built",
            "D = 10 competitor".into(),
            format!("error: {e}"),
            false,
        ),
    }
    match build_fuglede_sequence(16) {
        Ok((analytic, shape)) => {
            let area_ok = (shape.area() - PI).abs() < 1e-6;
            let delta = analytic.big_radius + analytic.small_radius - 1.0;
            add(
                "fuglede/n16",
                "area pi, delta = R+r-1".into(),
                format!("area {:.8}, delta {:.6}", shape.area(), analytic.delta),
                area_ok && (analytic.delta - delta).abs() < 1e-12,
            );
        }
        Err(e) => add(
            "fuglede/n16",
            "built".into(),
            format!("error: {e}"),
            false,
        ),
    }

    let selected: Vec<&VerifyRow> = rows
        .iter()
        .filter(|r| filter.map(|f| r.name.contains(f)).unwrap_or(true))
        .collect();
    let all_pass = selected.iter().all(|r| r.pass);
    if as_json {
        let items: Vec<_> = selected
            .iter()
            .map(|r| {
                json!({"name": r.name, "expected": r.expected, "computed": r.computed, "pass": r.pass})
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({"results": items, "pass": all_pass})).unwrap()
        );
    } else {
        for r in &selected {
            println!(
                "{:<36} expected {:<24} computed {:<28} {}",
                r.name,
                r.expected,
                r.computed,
                if r.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
