//! Command-line interface: build corpus groups, test isomorphism, compute
//! automorphism groups, and run manifest-driven checks.
//!
//! Exit codes: 0 success, 1 failed checks or internal inconsistency,
//! 2 usage/parse errors, 3 resource limits exceeded.

mod harness;

use agroup_core::aut::{aut_agroup, AutConfig};
use agroup_core::cayley::CayleyGroup;
use agroup_core::fileio::{perm_line, read_group_file_capped, write_group_file};
use agroup_core::oracle::{oracle_automorphisms, oracle_isomorphism, DEFAULT_ORACLE_BUDGET};
use agroup_core::reduce::{grp_acount, grp_apart, grp_icount, grp_imap, grp_iso, AutProvider};
use agroup_core::Error;
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "agroup",
    about = "Isomorphism and automorphism computations for finite groups with abelian Sylow subgroups, from Cayley tables",
    version
)]
struct Cli {
    /// Seed for every randomized code path (same seed, same output)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for the brute-force oracles
    #[arg(long, global = true)]
    oracle_budget: Option<u128>,
    /// Largest group order accepted from files
    #[arg(long, global = true, default_value_t = 100_000)]
    max_order: usize,
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a construction expression and write its table
    Gen {
        expr: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Override the recorded group name
        #[arg(long)]
        name: Option<String>,
    },
    /// Automorphism group of an A-group (structured pipeline)
    Aut { file: PathBuf },
    /// Automorphism group by brute force
    OracleAut { file: PathBuf },
    /// Isomorphism test through the automorphism reduction
    Iso { g1: PathBuf, g2: PathBuf },
    /// Explicit isomorphism, if one exists
    Imap { g1: PathBuf, g2: PathBuf },
    /// Number of isomorphisms
    Icount { g1: PathBuf, g2: PathBuf },
    /// Number of automorphisms
    Acount { file: PathBuf },
    /// Partition into automorphism orbits
    Apart { file: PathBuf },
    /// Isomorphism by brute-force search
    OracleIso { g1: PathBuf, g2: PathBuf },
    /// Run the checks in a corpus manifest
    Accept { manifest: PathBuf },
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_resource() {
        3
    } else {
        match e {
            Error::Parse(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Serialize)]
struct AutOut {
    file: String,
    order: usize,
    aut_order: String,
    method: String,
    randomized: bool,
    trace: Vec<String>,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct IsoOut {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct CountOut {
    count: String,
}

#[derive(Serialize)]
struct ApartOut {
    orbits: Vec<Vec<usize>>,
}

fn print_map_result(json: bool, map: Option<agroup_core::cayley::GroupHom>) {
    if json {
        let out = IsoOut {
            isomorphic: map.is_some(),
            map: map.map(|m| m.images.iter().map(|&x| x as usize).collect()),
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        match map {
            None => println!("isomorphic false"),
            Some(m) => {
                println!("isomorphic true");
                println!(
                    "map {}",
                    m.images.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
                );
            }
        }
    }
}

fn print_count(json: bool, count: u128) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&CountOut { count: count.to_string() }).unwrap()
        );
    } else {
        println!("count {count}");
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let budget = cli.oracle_budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
    let cfg = AutConfig { seed: cli.seed, oracle_budget: budget, verify_generators: true };
    let provider = AutProvider { cfg: cfg.clone() };
    let load =
        |p: &PathBuf| -> Result<CayleyGroup, Error> { read_group_file_capped(p, cli.max_order) };
    match &cli.command {
        Command::Gen { expr, output, name } => {
            let mut built = agroup_core::dsl::build_group(expr)?;
            if let Some(n) = name {
                built.group.name = Some(n.clone());
            }
            write_group_file(&built.group, output)?;
            println!("wrote {} (order {})", output.display(), built.group.order());
        }
        Command::Aut { file } => {
            let g = load(file)?;
            let r = aut_agroup(&g, &cfg)?;
            if cli.json {
                let out = AutOut {
                    file: file.display().to_string(),
                    order: g.order(),
                    aut_order: r.aut.order().to_string(),
                    method: r.method.to_string(),
                    randomized: r.randomized,
                    trace: r.trace.clone(),
                    generators: r.aut.generators().iter().map(perm_line).collect(),
                };
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("order {}", g.order());
                println!("aut-order {}", r.aut.order());
                println!("method {}", r.method);
                println!("randomized {}", r.randomized);
                for line in &r.trace {
                    println!("level {line}");
                }
                for gen in r.aut.generators() {
                    println!("generator {}", perm_line(gen));
                }
            }
        }
        Command::OracleAut { file } => {
            let g = load(file)?;
            let r = oracle_automorphisms(&g, budget)?;
            if cli.json {
                print_count(true, r.count);
            } else {
                println!("aut-order {}", r.count);
                for gen in r.group.generators() {
                    println!("generator {}", perm_line(gen));
                }
            }
        }
        Command::Iso { g1, g2 } => {
            let (a, b) = (load(g1)?, load(g2)?);
            let verdict = grp_iso(&a, &b, &provider)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&IsoOut { isomorphic: verdict, map: None })
                        .unwrap()
                );
            } else {
                println!("isomorphic {verdict}");
            }
        }
        Command::Imap { g1, g2 } => {
            let (a, b) = (load(g1)?, load(g2)?);
            print_map_result(cli.json, grp_imap(&a, &b, &provider)?);
        }
        Command::Icount { g1, g2 } => {
            let (a, b) = (load(g1)?, load(g2)?);
            print_count(cli.json, grp_icount(&a, &b, &provider)?);
        }
        Command::Acount { file } => {
            let g = load(file)?;
            print_count(cli.json, grp_acount(&g, &provider)?);
        }
        Command::Apart { file } => {
            let g = load(file)?;
            let orbits = grp_apart(&g, &provider)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&ApartOut { orbits }).unwrap());
            } else {
                for orbit in orbits {
                    println!(
                        "orbit {}",
                        orbit.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
                    );
                }
            }
        }
        Command::OracleIso { g1, g2 } => {
            let (a, b) = (load(g1)?, load(g2)?);
            print_map_result(cli.json, oracle_isomorphism(&a, &b, budget)?);
        }
        Command::Accept { manifest } => {
            let text = std::fs::read_to_string(manifest)?;
            let entries = harness::parse_manifest(&text)?;
            let report = harness::run_manifest(&entries, &cfg);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for entry in &report.entries {
                    let label = entry.name.as_deref().unwrap_or(&entry.expr);
                    match &entry.error {
                        Some(e) => println!("[FAIL] {label} :: build error: {e}"),
                        None => {
                            for c in &entry.checks {
                                let tag = if c.pass { "PASS" } else { "FAIL" };
                                println!(
                                    "[{tag}] {label} :: {} expected={} actual={}",
                                    c.key, c.expected, c.actual
                                );
                            }
                        }
                    }
                }
                println!("passed {}/{} checks", report.checks_passed, report.checks_total);
            }
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
