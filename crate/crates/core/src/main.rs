use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use weaksol::cli::{cmd_construct, cmd_probe, cmd_sample, cmd_verify, parse_t_range, RunConfig};
use weaksol::solution::Fault;

/// Singular weak solutions of a planar elliptic system: construction,
/// sampling, probing and numerical verification.
#[derive(Debug, Parser)]
#[command(name = "weaksol", version)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides `out` in the config).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Random seed (overrides `seed` in the config).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(..=i64::MAX as u64))]
    seed: Option<u64>,
    /// Override a configuration key, e.g. -D domain.radius=0.04.
    #[arg(short = 'D', global = true, value_name = "SECTION.KEY=VALUE")]
    define: Vec<String>,
    #[arg(long, global = true, hide = true, value_name = "NAME")]
    fault_inject: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the enumeration, schedule report and gradient-bound constants.
    Construct,
    /// Sample u, |grad u|^2 and F on a grid over the domain.
    Sample {
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Radial probe of u in log-log coordinates around one singular point.
    Probe {
        /// 1-based index of the singular point.
        #[arg(long)]
        point_index: usize,
        /// Window LO:HI in t = log log(1/rho).
        #[arg(long, value_parser = parse_t_range, default_value = "10:16.283185307179586")]
        t_range: (f64, f64),
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Run the verification suite; exits nonzero if any item fails.
    Verify,
    /// Echo the configuration, construct, optionally sample, and verify.
    Report {
        #[arg(long)]
        grid: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<bool> {
    let mut cfg = RunConfig::load(cli.config.as_deref(), &cli.define)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    let fault = cli
        .fault_inject
        .as_deref()
        .map(str::parse::<Fault>)
        .transpose()?;
    let out = cfg.out.clone();
    match cli.command {
        Command::Construct => {
            let t = Instant::now();
            for p in cmd_construct(&cfg, &out)? {
                println!("wrote {}", p.display());
            }
            timed_line("construct", t);
            Ok(true)
        }
        Command::Sample { grid } => {
            let t = Instant::now();
            let p = cmd_sample(&cfg, grid, &out, fault)?;
            println!("wrote {}", p.display());
            timed_line("sample", t);
            Ok(true)
        }
        Command::Probe {
            point_index,
            t_range,
            samples,
        } => {
            let t = Instant::now();
            let s = cmd_probe(&cfg, point_index, t_range.0, t_range.1, samples, &out)?;
            println!(
                "p_{}: u1 in [{}, {}], u2 in [{}, {}]",
                s.index, s.min_u1, s.max_u1, s.min_u2, s.max_u2
            );
            if let Some(w) = &s.warning {
                println!("warning: {w}");
            }
            timed_line("probe", t);
            Ok(true)
        }
        Command::Verify => verify(&cfg, fault, &out),
        Command::Report { grid } => {
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let echo = cfg.echo();
            std::fs::write(out.join("config_echo.toml"), &echo)?;
            print!("{echo}");
            let t = Instant::now();
            cmd_construct(&cfg, &out)?;
            timed_line("construct", t);
            if let Some(g) = grid {
                let t = Instant::now();
                cmd_sample(&cfg, g, &out, fault)?;
                timed_line("sample", t);
            }
            verify(&cfg, fault, &out)
        }
    }
}

fn verify(cfg: &RunConfig, fault: Option<Fault>, out: &std::path::Path) -> Result<bool> {
    let t = Instant::now();
    let report = cmd_verify(cfg, fault, out)?;
    for i in &report.items {
        println!("{} {}", if i.pass { "PASS" } else { "FAIL" }, i.id);
    }
    timed_line("verify", t);
    let ok = report.passed();
    println!("overall: {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn timed_line(name: &str, start: Instant) {
    println!("{name}: {:.3} s", start.elapsed().as_secs_f64());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
