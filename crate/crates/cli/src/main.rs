use std::path::Path;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use amdeg::amdcheck::{analyze_with, AnalysisOptions, DEFAULT_WINDOW};
use amdeg::fixtures::{self, Fixture, Verification, VerifyOptions};
use amdeg::groebner::{parse_ideal_file, write_ideal_file, GradedIdeal};
use amdeg::polyring::DEFAULT_PRIME;
use amdeg::resolve::{free_resolution_with, ResolutionOptions};
use amdeg::varieties::{
    containing_scroll_for, pfaffian_fixture, project_from_point_with_center, random_point,
    scroll_ideal, veronese_ideal, ProjectionPoint, ScrollMatrix, ScrollSpec,
};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "amdeg",
    version,
    about = "Varieties of minimal and almost minimal degree over F_p"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Field characteristic; overrides the header of ideal files.
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Degree window for deficiency modules, e.g. `-6..4`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<(i32, i32)>,
    /// Fixtures verified in parallel.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Per-level progress on standard error.
    #[arg(long, global = true)]
    progress: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matrix and ideal of a scroll such as `S(2,2,6)` or `S(1,1,2)+vertex:0`.
    Scroll { spec: String },
    /// Project an ideal file, fixture, or scroll from a point.
    Project {
        input: String,
        /// `e9` or comma separated coordinates.
        #[arg(long, conflicts_with = "random_point")]
        point: Option<String>,
        /// Seeded random point off the variety.
        #[arg(long)]
        random_point: bool,
        /// Coordinate to eliminate (default: first nonzero coordinate of the point).
        #[arg(long)]
        center: Option<usize>,
        /// Also construct the scroll containing the image.
        #[arg(long)]
        containing_scroll: bool,
    },
    /// Invariants and theorem checks for an ideal file, fixture, or scroll.
    Analyze {
        input: String,
        /// Skip the deficiency modules.
        #[arg(long)]
        no_ext: bool,
        /// Cross-check the depth with generic linear forms.
        #[arg(long)]
        regular_sequence: bool,
    },
    /// Graded Betti numbers.
    Betti { input: String },
    /// Verify named fixtures against their expected values.
    Verify {
        names: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
        /// Print every check, not only failures.
        #[arg(long)]
        verbose: bool,
    },
}

fn parse_window(s: &str) -> std::result::Result<(i32, i32), String> {
    let (a, b) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo: i32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound `{}`", a))?;
    let hi: i32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound `{}`", b))?;
    if lo > hi {
        return Err("empty window".into());
    }
    Ok((lo, hi))
}

/// Outcome of a command that ran: checks passed or not.
enum Outcome {
    Pass,
    Fail,
}

struct Loaded {
    ideal: GradedIdeal,
    matrix: Option<ScrollMatrix>,
}

fn load(input: &str, prime: Option<u32>) -> Result<Loaded> {
    let p = prime.unwrap_or(DEFAULT_PRIME);
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input))?;
        let ideal = parse_ideal_file(&text, prime).with_context(|| format!("parsing {}", input))?;
        return Ok(Loaded {
            ideal,
            matrix: None,
        });
    }
    if let Ok(f) = fixtures::find(input) {
        let b = f.build(p)?;
        return Ok(Loaded {
            ideal: b.ideal,
            matrix: None,
        });
    }
    match input {
        "veronese" => {
            return Ok(Loaded {
                ideal: veronese_ideal(p)?,
                matrix: None,
            })
        }
        "pfaffian" => {
            return Ok(Loaded {
                ideal: pfaffian_fixture(p)?,
                matrix: None,
            })
        }
        _ => {}
    }
    if let Ok(spec) = input.parse::<ScrollSpec>() {
        let (m, ideal) = scroll_ideal(&spec, p)?;
        return Ok(Loaded {
            ideal,
            matrix: Some(m),
        });
    }
    bail!(
        "`{}` is neither a file, a fixture name, `veronese`, `pfaffian`, nor a scroll like S(2,3)",
        input
    )
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn generators(i: &GradedIdeal) -> Vec<String> {
    i.gens().iter().map(|g| g.to_string()).collect()
}

fn matrix_rows(m: &ScrollMatrix) -> Vec<Vec<String>> {
    m.rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|l| l.to_polynomial(&m.ring).to_string())
                .collect()
        })
        .collect()
}

fn cmd_scroll(g: &Global, spec: &str) -> Result<Outcome> {
    let spec: ScrollSpec = spec.parse()?;
    let (m, i) = scroll_ideal(&spec, g.prime.unwrap_or(DEFAULT_PRIME))?;
    match g.format {
        Format::Text => {
            println!(
                "# {}: dim {}, degree {}, in P^{}",
                spec,
                spec.dim(),
                spec.degree(),
                spec.ambient_dim()
            );
            for line in m.to_text().lines() {
                println!("# {}", line);
            }
            print!("{}", write_ideal_file(&i));
        }
        Format::Json => print_json(&json!({
            "spec": spec.to_string(),
            "dim": spec.dim(),
            "degree": spec.degree(),
            "ambient_dim": spec.ambient_dim(),
            "matrix": matrix_rows(&m),
            "ring": i.ring().header(),
            "generators": generators(&i),
        }))?,
    }
    Ok(Outcome::Pass)
}

fn cmd_project(
    g: &Global,
    input: &str,
    point: Option<&str>,
    random: bool,
    center: Option<usize>,
    want_scroll: bool,
) -> Result<Outcome> {
    let loaded = load(input, g.prime)?;
    let ideal = &loaded.ideal;
    let n = ideal.ring().nvars();
    let p = match (point, random) {
        (Some(s), _) => ProjectionPoint::parse(s, n, ideal.ring().prime())?,
        (None, true) => random_point(ideal, g.seed, None)?,
        (None, false) => bail!("give --point or --random-point"),
    };
    let proj = project_from_point_with_center(ideal, &p, center)?;
    let scroll = if want_scroll {
        let m = loaded
            .matrix
            .as_ref()
            .ok_or_else(|| anyhow!("--containing-scroll needs a scroll as input"))?;
        Some(containing_scroll_for(m, ideal, proj.clone())?)
    } else {
        None
    };
    let out = &proj.ideal;
    match g.format {
        Format::Text => {
            println!(
                "# projection of {} from {} (eliminating {})",
                input,
                p,
                ideal.ring().names()[proj.center]
            );
            let gens: Vec<String> = out
                .generator_degrees()
                .iter()
                .map(|(d, k)| format!("{} of degree {}", k, d))
                .collect();
            println!("# minimal generators: {}", gens.join(", "));
            if let Some(cs) = &scroll {
                println!(
                    "# containing scroll {} (columns {:?}):",
                    cs.normal_form.spec()?,
                    cs.columns
                );
                for line in cs.matrix.to_text().lines() {
                    println!("#   {}", line);
                }
                println!(
                    "# minors contained: {}, dim {} -> {}, vertex gap {}",
                    cs.minors_contained,
                    cs.dim_source,
                    cs.dim_scroll,
                    cs.vertex_gap()
                );
            }
            print!("{}", write_ideal_file(out));
        }
        Format::Json => {
            let cs = scroll.as_ref().map(|cs| {
                json!({
                    "matrix": matrix_rows(&cs.matrix),
                    "spec": cs.normal_form.spec().map(|s| s.to_string()).ok(),
                    "columns": [cs.columns.0, cs.columns.1],
                    "minors_contained": cs.minors_contained,
                    "dim_source": cs.dim_source,
                    "dim_scroll": cs.dim_scroll,
                    "vertex_gap": cs.vertex_gap(),
                    "valid": cs.is_valid(),
                })
            });
            print_json(&json!({
                "point": p.coords,
                "center": proj.center,
                "ring": out.ring().header(),
                "generators": generators(out),
                "generator_degrees": out.generator_degrees(),
                "containing_scroll": cs,
            }))?
        }
    }
    Ok(match &scroll {
        Some(cs) if !cs.is_valid() => Outcome::Fail,
        _ => Outcome::Pass,
    })
}

fn cmd_analyze(g: &Global, input: &str, no_ext: bool, regular_sequence: bool) -> Result<Outcome> {
    let loaded = load(input, g.prime)?;
    let opts = AnalysisOptions {
        window: g.window.unwrap_or(DEFAULT_WINDOW),
        seed: g.seed,
        ext: !no_ext,
        regular_sequence,
        progress: g.progress,
        ..Default::default()
    };
    let report = analyze_with(&loaded.ideal, &opts)?;
    match g.format {
        Format::Text => {
            print!("{}", report.to_text());
            print!("{}", report.betti.to_text());
        }
        Format::Json => print_json(&report)?,
    }
    Ok(if report.all_checks_pass() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn cmd_betti(g: &Global, input: &str) -> Result<Outcome> {
    let loaded = load(input, g.prime)?;
    let ropts = ResolutionOptions {
        progress: g.progress,
        ..Default::default()
    };
    let b = free_resolution_with(&loaded.ideal, &ropts)?.betti();
    match g.format {
        Format::Text => print!("{}", b.to_text()),
        Format::Json => print_json(&b.to_json())?,
    }
    Ok(Outcome::Pass)
}

fn run_fixtures(
    list: &[Fixture],
    opts: &VerifyOptions,
    jobs: usize,
) -> Vec<(Result<Verification>, f64)> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(Result<Verification>, f64)>>> =
        Mutex::new((0..list.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, list.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= list.len() {
                    break;
                }
                let t = Instant::now();
                let r = fixtures::verify(&list[k], opts).map_err(anyhow::Error::from);
                let secs = t.elapsed().as_secs_f64();
                if opts.progress {
                    eprintln!("{} done in {:.2}s", list[k].name, secs);
                }
                results.lock().unwrap()[k] = Some((r, secs));
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.unwrap())
        .collect()
}

fn cmd_verify(
    g: &Global,
    names: &[String],
    all: bool,
    list: bool,
    verbose: bool,
) -> Result<Outcome> {
    if list {
        for f in fixtures::all() {
            println!(
                "{:<10} {} {}",
                f.name,
                if f.in_suite { "*" } else { " " },
                f.description
            );
        }
        return Ok(Outcome::Pass);
    }
    let chosen: Vec<Fixture> = if all {
        fixtures::suite()
    } else if names.is_empty() {
        bail!("name a fixture, or use --all or --list");
    } else {
        names
            .iter()
            .map(|n| fixtures::find(n))
            .collect::<amdeg::Result<_>>()?
    };
    let opts = VerifyOptions {
        prime: g.prime.unwrap_or(DEFAULT_PRIME),
        seed: g.seed,
        window: g.window.unwrap_or(DEFAULT_WINDOW),
        progress: g.progress,
    };
    let results = run_fixtures(&chosen, &opts, g.jobs);
    let mut ok = true;
    let mut verified = Vec::new();
    for (f, (r, secs)) in chosen.iter().zip(results) {
        let v = r.with_context(|| format!("fixture {}", f.name))?;
        ok &= v.passed();
        if g.format == Format::Text {
            let n = v.checks.len();
            let status = if v.passed() { "PASS" } else { "FAIL" };
            println!("{:<10} {} ({} checks)", f.name, status, n);
            if !v.report.betti.is_empty() {
                for line in v.report.betti.to_text().lines() {
                    println!("    {}", line);
                }
            }
            for (k, &b) in &v.checks {
                if verbose || !b {
                    println!("    {} {}", if b { "PASS" } else { "FAIL" }, k);
                }
            }
            eprintln!("{} verified in {:.2}s", f.name, secs);
        }
        verified.push(v);
    }
    match g.format {
        Format::Text => println!(
            "{}",
            if ok {
                "all fixtures pass"
            } else {
                "some checks failed"
            }
        ),
        Format::Json => print_json(&verified)?,
    }
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let res = match &cli.command {
        Command::Scroll { spec } => cmd_scroll(g, spec),
        Command::Project {
            input,
            point,
            random_point,
            center,
            containing_scroll,
        } => cmd_project(
            g,
            input,
            point.as_deref(),
            *random_point,
            *center,
            *containing_scroll,
        ),
        Command::Analyze {
            input,
            no_ext,
            regular_sequence,
        } => cmd_analyze(g, input, *no_ext, *regular_sequence),
        Command::Betti { input } => cmd_betti(g, input),
        Command::Verify {
            names,
            all,
            list,
            verbose,
        } => cmd_verify(g, names, *all, *list, *verbose),
    };
    match res {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
