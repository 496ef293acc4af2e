//! Command line client of the polarmap service.
//!
//! Without `--server`, an in-process service is started on a loopback
//! ephemeral port and torn down after the run, so the tool works standalone
//! while every computation still flows through the HTTP/JSON interface.
//!
//! Exit statuses: 0 success, 1 transport or internal failure, 2 parse
//! error, 3 precondition error, 4 resource limit, 5 degenerate
//! configuration.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polarmap_api as api;
use polarmap_client::{Client, ClientError};
use polarmap_server::ops::BaseLimits;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "polarmap", version, about = "Exact polar maps of projective hypersurfaces")]
struct Cli {
    /// Service URL; when absent an in-process service is used.
    #[arg(long, global = true)]
    server: Option<String>,

    /// Report rendering on stdout; `csv` and `svg` print the plot
    /// artifacts themselves and only apply to the plot command.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text", "csv", "svg"])]
    output: String,

    /// Gröbner step limit override (also POLARMAP_MAX_STEPS).
    #[arg(long, global = true)]
    max_steps: Option<usize>,

    /// Gröbner basis-size limit override (also POLARMAP_MAX_BASIS).
    #[arg(long, global = true)]
    max_basis: Option<usize>,

    /// Batch mode: one JSON job per line; reports come back as JSON lines.
    #[arg(long, value_name = "FILE")]
    jobs: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
struct PolyArgs {
    /// Polynomial in the grammar `x0..x<n>`, `+ - * ^`, `a/b` literals.
    #[arg(long)]
    poly: String,
    /// Number of variables n+1; inferred from the highest index if absent.
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree-k polar cycle of F at a point: form and Chow coordinates.
    Polar {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        k: u32,
        /// Comma-separated rational coordinates, e.g. `0,0,1`.
        #[arg(long)]
        point: String,
    },
    /// Generalized Euler identity check at order s.
    Euler {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        s: u32,
    },
    /// Reciprocity identity check at order s.
    Reciprocity {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        s: u32,
    },
    /// Polar-map regularity at order p, or the full profile.
    Regularity {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Cone detection with vertex space.
    Cone {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Image degree: closed formula from --d/--n, or the exact seeded
    /// intersection count from --poly.
    ImageDegree {
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Dimension of the image of the degree-p polar map.
    ImageDim {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        p: u32,
    },
    /// Polar class integers (d-p and the ratio to the Gauss class).
    Class {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        p: u32,
    },
    /// Flex count of a smooth plane curve.
    Flexes {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Implicit equations of the degree-p polar image by elimination.
    Implicitize {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Contour data for a plane curve and its osculating conics.
    Plot {
        #[command(flatten)]
        poly: PolyArgs,
        /// Semicolon-separated points, e.g. `0,0,1;3,6,1`.
        #[arg(long, default_value = "")]
        points: String,
        #[arg(long)]
        resolution: Option<usize>,
        /// Chart variable set to 1 (default x2).
        #[arg(long)]
        chart: Option<usize>,
        /// Write the CSV artifact here.
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Write the SVG artifact here.
        #[arg(long)]
        svg_out: Option<PathBuf>,
    },
}

fn exit_code_for_class(class: &str) -> u8 {
    match class {
        "parse" => 2,
        "precondition" => 3,
        "resource" => 4,
        "degenerate" => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .expect("tokio runtime");
    runtime.block_on(run(cli))
}

async fn run(cli: Cli) -> ExitCode {
    let client = match &cli.server {
        Some(url) => Client::new(url.clone()),
        None => match spawn_local_service().await {
            Ok(client) => client,
            Err(err) => {
                eprintln!("polarmap: failed to start the in-process service: {err}");
                return ExitCode::from(1);
            }
        },
    };

    if let Some(jobs_file) = &cli.jobs {
        if cli.command.is_some() {
            eprintln!("polarmap: --jobs and a subcommand are mutually exclusive");
            return ExitCode::from(2);
        }
        return run_batch(&client, jobs_file).await;
    }

    let Some(command) = &cli.command else {
        eprintln!("polarmap: a subcommand or --jobs FILE is required (see --help)");
        return ExitCode::from(2);
    };

    let limits = if cli.max_steps.is_some() || cli.max_basis.is_some() {
        Some(api::Limits {
            max_steps: cli.max_steps,
            max_basis: cli.max_basis,
        })
    } else {
        None
    };
    let (job, plot_outputs) = build_job(command, limits);

    match client.run(&job).await {
        Ok(report) => {
            if let Some((csv_out, svg_out)) = plot_outputs {
                if let Err(err) = write_plot_artifacts(&report, csv_out, svg_out) {
                    eprintln!("polarmap: {err}");
                    return ExitCode::from(1);
                }
            }
            if cli.output == "csv" || cli.output == "svg" {
                match report.result[cli.output.as_str()].as_str() {
                    Some(artifact) => {
                        print!("{}", artifact);
                        ExitCode::SUCCESS
                    }
                    None => {
                        eprintln!(
                            "polarmap: --output {} only applies to the plot command",
                            cli.output
                        );
                        ExitCode::from(2)
                    }
                }
            } else {
                print_report(&report, &cli.output);
                ExitCode::SUCCESS
            }
        }
        Err(ClientError::Api {
            class, message, ..
        }) => {
            eprintln!("polarmap: {class} error: {message}");
            ExitCode::from(exit_code_for_class(&class))
        }
        Err(other) => {
            eprintln!("polarmap: {other}");
            ExitCode::from(1)
        }
    }
}

async fn spawn_local_service() -> std::io::Result<Client> {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    tokio::spawn(async move {
        let _ = polarmap_server::serve(listener, BaseLimits::from_env()).await;
    });
    Ok(Client::new(format!("http://{}", addr)))
}

type PlotOutputs = (Option<PathBuf>, Option<PathBuf>);

fn build_job(command: &Command, limits: Option<api::Limits>) -> (api::JobSpec, Option<PlotOutputs>) {
    let job = match command {
        Command::Polar { poly, k, point } => api::JobSpec::Polar {
            poly: poly.poly.clone(),
            vars: poly.vars,
            k: *k,
            point: point.clone(),
        },
        Command::Euler { poly, s } => api::JobSpec::Euler {
            poly: poly.poly.clone(),
            vars: poly.vars,
            s: *s,
        },
        Command::Reciprocity { poly, s } => api::JobSpec::Reciprocity {
            poly: poly.poly.clone(),
            vars: poly.vars,
            s: *s,
        },
        Command::Regularity { poly, p } => api::JobSpec::Regularity {
            poly: poly.poly.clone(),
            vars: poly.vars,
            p: *p,
            limits,
        },
        Command::Cone { poly } => api::JobSpec::Cone {
            poly: poly.poly.clone(),
            vars: poly.vars,
        },
        Command::ImageDegree {
            d,
            p,
            n,
            poly,
            vars,
            seed,
        } => api::JobSpec::ImageDegree {
            d: *d,
            p: *p,
            n: *n,
            poly: poly.clone(),
            vars: *vars,
            seed: *seed,
            limits,
        },
        Command::ImageDim { poly, p } => api::JobSpec::ImageDim {
            poly: poly.poly.clone(),
            vars: poly.vars,
            p: *p,
            limits,
        },
        Command::Class { poly, p } => api::JobSpec::Class {
            poly: poly.poly.clone(),
            vars: poly.vars,
            p: *p,
        },
        Command::Flexes { poly, seed } => api::JobSpec::Flexes {
            poly: poly.poly.clone(),
            vars: poly.vars,
            seed: *seed,
            limits,
        },
        Command::Implicitize { poly, p } => api::JobSpec::Implicitize {
            poly: poly.poly.clone(),
            vars: poly.vars,
            p: *p,
            limits,
        },
        Command::Plot {
            poly,
            points,
            resolution,
            chart,
            csv_out,
            svg_out,
        } => {
            let parsed_points: Vec<String> = points
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect();
            let job = api::JobSpec::Plot {
                poly: poly.poly.clone(),
                vars: poly.vars,
                points: parsed_points,
                resolution: *resolution,
                chart: *chart,
            };
            return (job, Some((csv_out.clone(), svg_out.clone())));
        }
    };
    (job, None)
}

fn write_plot_artifacts(
    report: &api::Report,
    csv_out: Option<PathBuf>,
    svg_out: Option<PathBuf>,
) -> Result<(), String> {
    let result: api::PlotResult = serde_json::from_value(report.result.clone())
        .map_err(|err| format!("unexpected plot payload: {err}"))?;
    if let Some(path) = csv_out {
        write_atomic(&path, result.csv.as_bytes())
            .map_err(|err| format!("writing {}: {err}", path.display()))?;
    }
    if let Some(path) = svg_out {
        write_atomic(&path, result.svg.as_bytes())
            .map_err(|err| format!("writing {}: {err}", path.display()))?;
    }
    Ok(())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

fn print_report(report: &api::Report, output: &str) {
    if output == "text" {
        print_text(report);
    } else {
        println!("{}", serde_json::to_string(report).expect("report"));
    }
}

fn print_text(report: &api::Report) {
    let r = &report.result;
    match report.command.as_str() {
        "polar" => {
            println!("polar cycle k = {}", r["k"]);
            println!("  form: {}", r["form"].as_str().unwrap_or_default());
            println!("  chow: {}", join_values(&r["chow"]));
        }
        "euler" => println!(
            "euler s = {}: {}",
            r["s"],
            if r["holds"] == Value::Bool(true) {
                "holds"
            } else {
                "FAILS"
            }
        ),
        "reciprocity" => println!(
            "reciprocity s = {}: {}",
            r["s"],
            if r["holds"] == Value::Bool(true) {
                "holds"
            } else {
                "FAILS"
            }
        ),
        "regularity" => {
            if let Some(entries) = r["profile"].as_array() {
                for e in entries {
                    println!(
                        "p = {}: {}",
                        e["p"],
                        if e["regular"] == Value::Bool(true) {
                            "regular"
                        } else {
                            "irregular"
                        }
                    );
                }
            }
        }
        "cone" => {
            if r["is_cone"] == Value::Bool(true) {
                println!("cone with vertex space:");
                if let Some(vs) = r["vertex_space"].as_array() {
                    for v in vs {
                        println!("  [{}]", join_values(v));
                    }
                }
            } else {
                println!("not a cone");
            }
        }
        "image-degree" => {
            println!("formula: {}", r["formula"]);
            if let Some(count) = r.get("bezout_count").filter(|v| !v.is_null()) {
                println!("bezout count: {} (agree: {})", count, r["agree"]);
            }
        }
        "image-dim" => println!("image dimension: {}", r["dimension"]),
        "class" => println!(
            "class coefficient: {} (ratio to gauss: {})",
            r["class_coeff"],
            r["ratio_to_gauss"].as_str().unwrap_or_default()
        ),
        "flexes" => {
            println!(
                "flexes with multiplicity: {} (formula {}), distinct: {}",
                r["count_with_multiplicity"], r["formula"], r["squarefree_degree"]
            );
            if let Some(pts) = r["rational_flexes"].as_array() {
                for p in pts {
                    println!("  rational flex [{}]", join_values(p));
                }
            }
        }
        "implicitize" => {
            if let Some(gens) = r["generators"].as_array() {
                println!("image ideal generators ({}):", gens.len());
                for g in gens {
                    println!("  {}", g.as_str().unwrap_or_default());
                }
            }
        }
        "plot" => println!(
            "plot: {} objects, {} segments, resolution {}",
            r["objects"].as_array().map(|a| a.len()).unwrap_or(0),
            r["segments"],
            r["resolution"]
        ),
        _ => println!("{}", serde_json::to_string_pretty(r).expect("result")),
    }
    for w in &report.warnings {
        println!("warning: {}", w);
    }
}

fn join_values(v: &Value) -> String {
    v.as_array()
        .map(|a| {
            a.iter()
                .map(|x| x.as_str().map(String::from).unwrap_or_else(|| x.to_string()))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default()
}

async fn run_batch(client: &Client, jobs_file: &Path) -> ExitCode {
    let text = match std::fs::read_to_string(jobs_file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("polarmap: reading {}: {err}", jobs_file.display());
            return ExitCode::from(1);
        }
    };
    let mut jobs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match serde_json::from_str::<api::JobSpec>(line) {
            Ok(job) => jobs.push(job),
            Err(err) => {
                eprintln!(
                    "polarmap: {}:{}: bad job spec: {err}",
                    jobs_file.display(),
                    lineno + 1
                );
                return ExitCode::from(2);
            }
        }
    }
    match client.run_batch(&jobs).await {
        Ok(reports) => {
            let mut first_error: Option<u8> = None;
            for report in &reports {
                println!("{}", serde_json::to_string(report).expect("report"));
                if first_error.is_none() {
                    if let Some(class) = report["error"]["class"].as_str() {
                        first_error = Some(exit_code_for_class(class));
                    }
                }
            }
            match first_error {
                Some(code) => ExitCode::from(code),
                None => ExitCode::SUCCESS,
            }
        }
        Err(err) => {
            eprintln!("polarmap: {err}");
            ExitCode::from(1)
        }
    }
}
