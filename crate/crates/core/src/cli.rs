//! `lll` command line: gen, check, solve, verify, cert.
//!
//! Exit codes: 0 success or applicable, 1 honest negative (not
//! applicable, budget exhausted, violations), 2 malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::One;

use crate::checker::{
    check_general, check_symmetric, dependency_degrees, induction_certificate, symmetric_fraction, DependencyMode,
    GeneralOptions, SymmetricVariant,
};
use crate::enumerate::EnumConfig;
use crate::error::{Error, Result};
use crate::format::{parse_instance, to_text};
use crate::instance::Instance;
use crate::instances::{
    cnf_to_instance, gen_circle, gen_digraph_labels, gen_firm, gen_hypergraph, gen_ksat, gen_latin_random,
    gen_rainbow, gen_ramsey, gen_transversal, gen_vdw, parse_dimacs, Digraph, FirmParams, Graph,
};
use crate::measure::{joint_measure, EventSet};
use crate::rational::{self, frac, to_decimal, to_exact, Rational};
use crate::solver::{default_budget, solve_permutation, solve_resample, verify_assignment, RngSpec};
use crate::space::Space;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lll", version, about = "Exact local lemma certificates and resampling solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance file for an application family.
    Gen(GenArgs),
    /// Check the symmetric or general lemma hypotheses.
    Check(CheckArgs),
    /// Run the resampling solver and append the assignment.
    Solve(SolveArgs),
    /// Verify an assignment, or count the intersection exhaustively.
    Verify(FileArg),
    /// Print the induction table I(k+t, t).
    Cert(CertArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Family {
    Firm {
        #[arg(long, default_value_t = 100)]
        jobs: usize,
        #[arg(long, default_value_t = 8)]
        specialists: usize,
        #[arg(long, default_value_t = 30)]
        overlap_cap: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    Circle {
        #[arg(long, default_value_t = 100)]
        groups: usize,
        #[arg(long, default_value_t = 16)]
        size: usize,
    },
    Vdw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Random integer points over a denominator, with random offsets.
    Rainbow {
        #[arg(long, default_value_t = 40)]
        points: usize,
        #[arg(long, default_value_t = 25)]
        offsets: usize,
        #[arg(long, default_value_t = 3)]
        colors: u32,
        #[arg(long, default_value_t = 7)]
        denominator: i64,
    },
    Hypergraph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        size: usize,
    },
    /// Cycle of length `size * classes` split into random classes.
    Transversal {
        #[arg(long)]
        classes: usize,
        #[arg(long, default_value_t = 11)]
        size: usize,
    },
    Ramsey {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    Digraph {
        #[arg(long, default_value_t = 64)]
        vertices: usize,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// From a DIMACS file, or random with the overlap gate built in.
    Ksat {
        #[arg(long)]
        dimacs: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        vars: usize,
        #[arg(long, default_value_t = 80)]
        clauses: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    Latin {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        per_color: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Mode {
    Sym,
    SymE,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum DepMode {
    Structural,
    Exhaustive,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Sym)]
    mode: Mode,
    /// `auto` (largest observed d_k) or an integer.
    #[arg(long, default_value = "auto")]
    d: String,
    /// Skip enumeration; use shortcut and declared measures only.
    #[arg(long)]
    analytic: bool,
    /// Structural on product spaces, exhaustive on permutation spaces by default.
    #[arg(long, value_enum)]
    dependency: Option<DepMode>,
    /// Uniform gamma for general mode; defaults to 1 - 1/d.
    #[arg(long)]
    gamma: Option<String>,
    /// Include gamma_k itself in the general product.
    #[arg(long)]
    include_self: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget: Option<u64>,
    /// Write the result here instead of appending to the input file.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Print the resampling trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct FileArg {
    file: PathBuf,
}

#[derive(Debug, Args)]
struct CertArgs {
    file: PathBuf,
    #[arg(long)]
    d: Option<u64>,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let cfg = EnumConfig::from_env();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Check(a) => cmd_check(a, &cfg, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Verify(a) => cmd_verify(&a.file, &cfg, out),
        Command::Cert(a) => cmd_cert(a, &cfg, out),
    };
    match result {
        Ok(code) => code,
        Err(e @ (Error::EnumerationCap { .. } | Error::FamilyCap { .. })) => {
            let _ = writeln!(out, "undecided: {e}");
            EXIT_NEGATIVE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameters(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn save(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidParameters(format!("cannot write {}: {e}", path.display())))
}

fn approx(r: &Rational) -> String {
    format!("{} (approx {})", to_exact(r), to_decimal(r, 6))
}

fn generate(family: Family, seed: u64) -> Result<Instance> {
    match family {
        Family::Firm { jobs, specialists, overlap_cap, workers } => {
            gen_firm(FirmParams { jobs, specialists, overlap_cap, workers }, seed)
        }
        Family::Circle { groups, size } => gen_circle(groups, size, seed),
        Family::Vdw { n, k } => gen_vdw(n, k),
        Family::Rainbow { points, offsets, colors, denominator } => {
            use rand::Rng;
            if denominator <= 0 {
                return Err(Error::InvalidParameters("denominator must be positive".into()));
            }
            let mut rng = crate::instances::seeded(seed);
            let mut draw = |count: usize| -> Vec<Rational> {
                (0..count).map(|_| frac(rng.gen_range(-1_000_000..1_000_000), denominator)).collect()
            };
            let xs = draw(points);
            let ms = draw(offsets);
            gen_rainbow(&xs, &ms, colors)
        }
        Family::Hypergraph { k, size } => gen_hypergraph(k, size, seed),
        Family::Transversal { classes, size } => {
            use rand::seq::SliceRandom;
            let n = classes * size;
            let mut vertices: Vec<usize> = (0..n).collect();
            vertices.shuffle(&mut crate::instances::seeded(seed));
            let parts: Vec<Vec<usize>> = vertices.chunks(size.max(1)).map(|c| c.to_vec()).collect();
            gen_transversal(&Graph::cycle(n)?, &parts)
        }
        Family::Ramsey { k, n } => gen_ramsey(k, n),
        Family::Digraph { vertices, degree, k } => {
            gen_digraph_labels(&Digraph::random_regular(vertices, degree, seed)?, k)
        }
        Family::Ksat { dimacs, vars, clauses, k } => {
            let f = match dimacs {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .map_err(|e| Error::InvalidParameters(format!("cannot read {}: {e}", p.display())))?;
                    parse_dimacs(&text)?
                }
                None => gen_ksat(vars, clauses, k, seed)?,
            };
            cnf_to_instance(&f)
        }
        Family::Latin { n, per_color } => gen_latin_random(n, per_color, seed),
    }
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = generate(a.family, a.seed)?;
    let text = to_text(&inst);
    match a.out {
        Some(p) => {
            save(&p, &text)?;
            let _ = writeln!(out, "wrote {} events to {}", inst.len(), p.display());
        }
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(EXIT_OK)
}

fn print_gate(inst: &Instance, out: &mut dyn Write) {
    if let Some(g) = &inst.gate {
        let _ = writeln!(out, "gate {} {}: {}", g.family, if g.passed { "pass" } else { "fail" }, g.comparison);
    }
    if let Some(flag) = inst.meta("special-case") {
        let _ = writeln!(out, "special-case {flag}");
    }
}

fn cmd_check(a: CheckArgs, cfg: &EnumConfig, out: &mut dyn Write) -> Result<i32> {
    let inst = load(&a.file)?;
    print_gate(&inst, out);
    if inst.certificate_only {
        let passed = inst.gate.as_ref().is_some_and(|g| g.passed);
        let _ = writeln!(out, "certificate-only instance; decided by the family gate");
        return Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let cfg = if a.analytic { cfg.with_max_points(0) } else { *cfg };
    let mode = match (a.dependency, inst.space()) {
        (Some(DepMode::Structural), _) => DependencyMode::Structural,
        (Some(DepMode::Exhaustive), _) | (None, Space::Permutation(_)) => DependencyMode::Exhaustive,
        (None, Space::Product(_)) => DependencyMode::Structural,
    };
    let deps = dependency_degrees(&inst, mode, &cfg)?;
    let d = match a.d.as_str() {
        "auto" => None,
        s => Some(s.parse::<u64>().map_err(|_| Error::InvalidParameters(format!("--d expects auto or an integer, got `{s}`")))?),
    };
    let cert = match a.mode {
        Mode::Sym => check_symmetric(&inst, &deps, d, SymmetricVariant::FourD, &cfg),
        Mode::SymE => check_symmetric(&inst, &deps, d, SymmetricVariant::E, &cfg),
        Mode::General => {
            let d = d.unwrap_or(deps.max_degree() as u64);
            let gamma = match &a.gamma {
                Some(g) => rational::parse(g).ok_or_else(|| Error::InvalidParameters(format!("bad gamma `{g}`")))?,
                None if d >= 2 => Rational::one() - frac(1, d as i64),
                None => frac(1, 2),
            };
            let j_sets: Vec<Vec<usize>> = (0..inst.len()).map(|k| deps.certified(k)).collect();
            let gammas = vec![gamma; inst.len()];
            check_general(&inst, &j_sets, &gammas, GeneralOptions { include_self: a.include_self }, &cfg)
        }
    };
    let cert = match cert {
        Ok(c) => c,
        Err(e @ (Error::DegreeTooSmall { .. } | Error::EVariantNeedsLargeD(_))) => {
            let _ = writeln!(out, "not applicable: {e}");
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e),
    };
    let _ = write!(out, "{}", cert.to_report());
    Ok(if cert.applicable() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let mut inst = load(&a.file)?;
    if inst.certificate_only {
        let _ = writeln!(out, "certificate-only instance; nothing to solve");
        return Ok(EXIT_NEGATIVE);
    }
    let budget = a.budget.unwrap_or_else(|| default_budget(inst.len(), inst.dependency_bound));
    let rng = RngSpec::new(a.seed);
    let result = match inst.space() {
        Space::Product(_) => solve_resample(&inst, rng, budget)?,
        Space::Permutation(_) => solve_permutation(&inst, rng, budget)?,
    };
    if a.trace {
        let _ = write!(out, "{}", result.trace_dump(&inst));
    }
    let solved = result.solved() && verify_assignment(&inst, &result.assignment)?.is_empty();
    let _ = writeln!(
        out,
        "{} seed {} resamples {} budget {budget}",
        if solved { "solved" } else { "budget-exhausted" },
        a.seed,
        result.resample_count
    );
    if solved {
        inst.assignment = Some(result.assignment);
        save(a.out.as_deref().unwrap_or(&a.file), &to_text(&inst))?;
    }
    Ok(if solved { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_verify(path: &Path, cfg: &EnumConfig, out: &mut dyn Write) -> Result<i32> {
    let inst = load(path)?;
    if let Some(a) = &inst.assignment {
        let bad = verify_assignment(&inst, a)?;
        let _ = writeln!(out, "violations {}", bad.len());
        for id in &bad {
            let _ = writeln!(out, "violated {id}");
        }
        return Ok(if bad.is_empty() { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let goods: Vec<EventSet<'_>> = inst.events().iter().map(|e| e.good()).collect();
    let fraction = joint_measure(inst.space(), &goods, cfg)?;
    let _ = writeln!(out, "fraction {}", approx(&fraction));
    let mode = if inst.space().is_permutation() { DependencyMode::Exhaustive } else { DependencyMode::Structural };
    let deps = dependency_degrees(&inst, mode, cfg)?;
    let cert = check_symmetric(&inst, &deps, None, SymmetricVariant::FourD, cfg)?;
    if !cert.applicable() {
        let _ = writeln!(out, "no applicable symmetric certificate; nothing to compare");
        return Ok(EXIT_OK);
    }
    let bound = symmetric_fraction(cert.d.unwrap_or(1), inst.len());
    let ok = fraction >= bound;
    let _ = writeln!(out, "guaranteed {} {}", approx(&bound), if ok { "confirmed" } else { "CONTRADICTED" });
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_cert(a: CertArgs, cfg: &EnumConfig, out: &mut dyn Write) -> Result<i32> {
    let inst = load(&a.file)?;
    let mode = if inst.space().is_permutation() { DependencyMode::Exhaustive } else { DependencyMode::Structural };
    let deps = dependency_degrees(&inst, mode, cfg)?;
    let cert = match check_symmetric(&inst, &deps, a.d, SymmetricVariant::FourD, cfg) {
        Ok(c) => c,
        Err(e @ Error::DegreeTooSmall { .. }) => {
            let _ = writeln!(out, "refused: {e}");
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e),
    };
    if !cert.applicable() {
        let ids: Vec<&str> = cert.failing().map(|v| v.id.as_str()).collect();
        let _ = writeln!(
            out,
            "refused: symmetric certificate not applicable at d = {} (failing: {})",
            cert.d.unwrap_or(0),
            ids.join(" ")
        );
        return Ok(EXIT_NEGATIVE);
    }
    let report = induction_certificate(&inst, cert.d.unwrap_or(1), cfg)?;
    let _ = write!(out, "{}", report.to_table());
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_NEGATIVE })
}
