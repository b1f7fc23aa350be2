//! Batch front end: compute representing matrices, run verification suites,
//! tabulate dimensions, inspect the branching graph, and print the central
//! series.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use partalg::bratteli::{edges, enumerate_paths, vertices, BVertex, Partition};
use partalg::cellular::GenName;
use partalg::central::{q_closed_form, SeriesFlavor};
use partalg::level::LevelIndex;
use partalg::linalg::Matrix;
use partalg::par::Mode;
use partalg::report::Report;
use partalg::seminormal::SeminormalRep;
use partalg::suites;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "partalg", version, about = "Exact partition algebra engine over Q(z)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Level bound override, e.g. "3" or "3+1/2". Defaults to the
    /// PARTALG_MAX_LEVEL environment variable, then 3+1/2.
    #[arg(long, global = true)]
    max_level: Option<String>,
    /// Disable the data-parallel inner loops.
    #[arg(long, global = true, default_value_t = false)]
    sequential: bool,
    /// Worker threads for the data-parallel loops (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Convention for the closed-form Gram edge factors: the oracle-backed
    /// reading, or the printed one (which reproduces the recorded
    /// discrepancies).
    #[arg(long, global = true, value_enum, default_value_t = SignOrder::Oracle)]
    sign_order: SignOrder,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Cmd {
    /// Representing matrices of a cell module in the seminormal basis.
    Repr {
        /// Level, e.g. "2" or "2+1/2".
        #[arg(long)]
        level: String,
        /// Partition as comma-separated parts; empty for the empty partition.
        #[arg(long, default_value = "")]
        lam: String,
        /// Contraction count; defaults to floor(level) - |lam|.
        #[arg(long)]
        ell: Option<u32>,
        /// Single generator to print, e.g. "p2", "sigma2+1/2".
        #[arg(long)]
        gen: Option<String>,
    },
    /// Verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Per-shape path counts and the dimension-square identity.
    Dims {
        #[arg(long)]
        level: String,
    },
    /// Vertices, edges and paths of the branching graph.
    Bratteli {
        #[arg(long)]
        level: String,
        /// Restrict path listing to one shape.
        #[arg(long)]
        lam: Option<String>,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// The central-element series of a vertex.
    Qseries {
        /// Series level, e.g. "1+1/2" for the half series acting at level 1.
        #[arg(long)]
        level: String,
        /// Vertex partition.
        #[arg(long, default_value = "")]
        mu: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SignOrder {
    Oracle,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Presentations,
    Jm,
    Seminormal,
    Central,
    Golden,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_level = cli
        .max_level
        .clone()
        .or_else(|| std::env::var("PARTALG_MAX_LEVEL").ok())
        .map(|s| LevelIndex::parse(&s))
        .unwrap_or(Some(LevelIndex::half(3)));
    let Some(max_level) = max_level else {
        eprintln!("error: bad level bound");
        return ExitCode::from(2);
    };
    if max_level.twice < 2 {
        eprintln!("error: the level bound must be at least 1");
        return ExitCode::from(2);
    }
    let mode = if cli.sequential {
        Mode::Sequential
    } else {
        Mode::Parallel
    };
    if cli.threads > 0 {
        partalg::par::configure_threads(cli.threads);
    }
    match run(&cli, max_level, mode) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, max_level: LevelIndex, mode: Mode) -> Result<ExitCode, String> {
    match &cli.cmd {
        Cmd::Repr { level, lam, ell, gen } => {
            let level = LevelIndex::parse(level).ok_or("bad level")?;
            if level.twice < 2 {
                return Err("representations start at level 1".into());
            }
            if level.twice > max_level.twice {
                return Err(format!("level {level} exceeds the bound {max_level}"));
            }
            let lam = Partition::parse(lam).ok_or("bad partition")?;
            let want_ell = level.floor().checked_sub(lam.size()).ok_or("partition too large for the level")?;
            if let Some(e) = ell {
                if *e != want_ell {
                    return Err(format!(
                        "ell {e} is inconsistent: level {level} with |lam| {} needs ell {want_ell}",
                        lam.size()
                    ));
                }
            }
            let label = BVertex::new(lam, want_ell, level);
            if !vertices(level).contains(&label) {
                return Err(format!("label {label} is not a vertex at level {level}"));
            }
            let reps = suites::build_level(level, mode, max_level)?;
            let rep = reps
                .items
                .iter()
                .map(|(_, r)| r)
                .find(|r| r.label == label)
                .ok_or("label not found")?;
            let names: Vec<GenName> = match gen {
                Some(g) => vec![GenName::parse(g).ok_or("bad generator name")?],
                None => SeminormalRep::gen_names(level),
            };
            emit_repr(cli.format, rep, &names)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite } => {
            let reports: Vec<Report> = match suite {
                Suite::Presentations => vec![suites::suite_presentations(max_level, mode)],
                Suite::Jm => vec![suites::suite_jm()],
                Suite::Seminormal => {
                    let conv = match cli.sign_order {
                        SignOrder::Oracle => partalg::seminormal::Conventions::default(),
                        SignOrder::Paper => partalg::seminormal::Conventions {
                            node_order_literal: true,
                            gamma_sign_corrected: false,
                        },
                    };
                    vec![suites::suite_seminormal_with(max_level, mode, conv)]
                }
                Suite::Central => vec![suites::suite_central(mode)],
                Suite::Golden => vec![suites::suite_golden(mode)],
                Suite::All => suites::suite_all(max_level, mode),
            };
            let ok = reports.iter().all(|r| r.passed());
            match cli.format {
                Format::Json => {
                    let body: Vec<serde_json::Value> = reports
                        .iter()
                        .map(|r| serde_json::to_value(r).unwrap())
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
                _ => {
                    for r in &reports {
                        print!("{r}");
                    }
                }
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Dims { level } => {
            let level = LevelIndex::parse(level).ok_or("bad level")?;
            let (rows, total, bell) = suites::dims_table(level);
            match cli.format {
                Format::Json => {
                    let body = serde_json::json!({
                        "level": level.to_string(),
                        "shapes": rows.iter().map(|(l, d)| serde_json::json!({"label": l, "dim": d})).collect::<Vec<_>>(),
                        "sum_of_squares": total.to_string(),
                        "bell": bell.to_string(),
                        "match": total == bell,
                    });
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
                _ => {
                    for (l, d) in &rows {
                        println!("{l}: {d}");
                    }
                    println!(
                        "sum of squares {total}, Bell {bell}: {}",
                        if total == bell { "match" } else { "MISMATCH" }
                    );
                }
            }
            Ok(if total == bell {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Bratteli { level, lam, ell } => {
            let level = LevelIndex::parse(level).ok_or("bad level")?;
            match cli.format {
                Format::Json => {
                    let verts: Vec<String> = vertices(level).iter().map(|v| v.to_string()).collect();
                    let edgs: Vec<[String; 2]> = edges(level)
                        .iter()
                        .map(|(a, b)| [a.to_string(), b.to_string()])
                        .collect();
                    let mut body = serde_json::json!({
                        "level": level.to_string(),
                        "vertices": verts,
                        "edges": edgs,
                    });
                    if let Some(lam) = lam {
                        let lam = Partition::parse(lam).ok_or("bad partition")?;
                        let e = ell.unwrap_or(level.floor() - lam.size());
                        let shape = BVertex::new(lam, e, level);
                        let paths: Vec<String> = enumerate_paths(level, &shape)
                            .iter()
                            .map(|p| p.to_string())
                            .collect();
                        body["paths"] = serde_json::json!(paths);
                    }
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
                _ => {
                    println!("vertices at level {level}:");
                    for v in vertices(level) {
                        println!("  {v}");
                    }
                    println!("edges out of level {level}:");
                    for (a, b) in edges(level) {
                        println!("  {a} -> {b}");
                    }
                    if let Some(lam) = lam {
                        let lam = Partition::parse(lam).ok_or("bad partition")?;
                        let e = ell.unwrap_or(level.floor() - lam.size());
                        let shape = BVertex::new(lam, e, level);
                        println!("paths to {shape}:");
                        for p in enumerate_paths(level, &shape) {
                            println!("  {p}");
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Qseries { level, mu } => {
            let level = LevelIndex::parse(level).ok_or("bad level")?;
            let mu = Partition::parse(mu).ok_or("bad partition")?;
            let flavor = if level.is_half() {
                SeriesFlavor::Half
            } else {
                SeriesFlavor::Whole
            };
            let q = q_closed_form(&mu, flavor);
            match cli.format {
                Format::Json => {
                    let body = serde_json::json!({
                        "level": level.to_string(),
                        "mu": mu.to_string(),
                        "series": q.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
                _ => println!("{q}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit_repr(format: Format, rep: &SeminormalRep, names: &[GenName]) -> Result<(), String> {
    match format {
        Format::Text => {
            println!("label {} at level {}", rep.label, rep.level);
            println!("basis paths:");
            for p in &rep.paths {
                println!("  {p}");
            }
            for name in names {
                let m = rep.gen(name).ok_or(format!("{name} not available"))?;
                println!("{name} ->");
                print!("{m}");
            }
        }
        Format::Json => {
            let paths: Vec<String> = rep.paths.iter().map(|p| p.to_string()).collect();
            if names.len() == 1 {
                let m = rep.gen(&names[0]).ok_or("generator not available")?;
                let body = serde_json::json!({
                    "label": rep.label.to_string(),
                    "level": rep.level.to_string(),
                    "paths": paths,
                    "generator": names[0].to_string(),
                    "rows": matrix_rows(m),
                });
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            } else {
                let mut mats = serde_json::Map::new();
                for name in names {
                    let m = rep.gen(name).ok_or(format!("{name} not available"))?;
                    mats.insert(name.to_string(), serde_json::json!(matrix_rows(m)));
                }
                let body = serde_json::json!({
                    "label": rep.label.to_string(),
                    "level": rep.level.to_string(),
                    "paths": paths,
                    "matrices": mats,
                });
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            }
        }
        Format::Latex => {
            for name in names {
                let m = rep.gen(name).ok_or(format!("{name} not available"))?;
                println!("% {name}");
                println!("{}", latex_matrix(m));
            }
        }
    }
    Ok(())
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect()
}

fn latex_matrix(m: &Matrix) -> String {
    let mut out = String::from("\\begin{bmatrix}\n");
    for (i, row) in m.rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.latex()).collect();
        out.push_str(&cells.join(" & "));
        if i + 1 < m.rows.len() {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{bmatrix}");
    out
}
