//! Command-line front end over problem files.
//!
//! Exit codes: 0 success, 1 a check failed, 2 parse or semantic error in the input,
//! 3 budget exhausted, 4 unsupported request.

mod problem;

pub use problem::{
    FieldSection, IdealSection, MatrixEntry, OperatorSection, Options, ProblemError, ProblemFile, Spanned,
    SystemSection, DEFAULT_DEGREE_BOUND, DEFAULT_DMAX,
};

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::basefield::RationalFunction;
use crate::groebner::{
    eliminate, groebner, groebner_traced, render_trace, saturate, Budget, GroebnerBasis, GroebnerError,
    IdealPresentation,
};
use crate::jetring::{JetError, JetRing};
use crate::polyring::Field;
use crate::prolong::{
    build_chain, check_closure, check_consistency, counterexample_two_derivations, find_constants, ProlongError,
};

#[derive(Parser, Debug)]
#[command(name = "pvring", version, about = "Prolongation ideals and ΣΔ-ideal chains for linear difference-differential systems")]
pub struct Cli {
    /// Emit flat key=value reports instead of text.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Maximum S-pair reductions per Gröbner computation [default: 100000].
    #[arg(long, global = true)]
    pub max_reductions: Option<u64>,
    /// Maximum total degree of a basis element [default: 40].
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Highest jet order available (D_max) [default: 6].
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    /// Problem file.
    pub file: PathBuf,
    /// Name of an [ideal NAME] section.
    #[arg(long)]
    pub ideal: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field commutation and integrability of the system; exit 0 iff all pass.
    Check { file: PathBuf },
    /// Prolongation, closure hypothesis and consistency certificate for the level-d seed.
    Prolong {
        file: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Builds the ideal chain m_0, …, m_D; exit 0 iff every check passes.
    Chain {
        file: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// The two-derivation example whose prolongation contains 1.
    Counterexample,
    /// Reduced Gröbner basis of an ideal.
    Groebner {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Print every processed S-pair.
        #[arg(long)]
        trace: bool,
    },
    /// Ideal membership of a polynomial; exit 0 if it is a member, 1 otherwise.
    Member {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
        /// Print every processed S-pair.
        #[arg(long)]
        trace: bool,
    },
    /// Intersection of an ideal with the subring in the kept variables.
    Eliminate {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Comma-separated variables to keep.
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
    },
    /// Saturation of an ideal by a polynomial.
    Saturate {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        by: String,
    },
    /// ΣΔ-constants of the chain's level-d quotient within a bounded ansatz.
    Constants {
        file: PathBuf,
        #[arg(long)]
        level: usize,
        /// Degree bound of the ansatz coefficients in the base variables [default: 3].
        #[arg(long)]
        degree_bound: Option<u32>,
        /// Comma-separated denominators allowed in the ansatz [default: 1].
        #[arg(long, value_delimiter = ',')]
        denominators: Vec<String>,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        Failure::new(2, e.to_string())
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExhausted(_) => Failure::new(3, e.to_string()),
            GroebnerError::NoVariables => Failure::new(4, e.to_string()),
        }
    }
}

impl From<JetError> for Failure {
    fn from(e: JetError) -> Self {
        match e {
            JetError::Groebner(g) => g.into(),
            JetError::LevelCap { .. } => Failure::new(4, e.to_string()),
            JetError::Parse(_) => Failure::new(2, e.to_string()),
            _ => Failure::new(1, e.to_string()),
        }
    }
}

impl From<ProlongError> for Failure {
    fn from(e: ProlongError) -> Self {
        match e {
            ProlongError::Jet(j) => j.into(),
            ProlongError::Groebner(g) => g.into(),
            ProlongError::ClosureBudget { .. } => Failure::new(3, e.to_string()),
            ProlongError::InfiniteQuotient => Failure::new(4, e.to_string()),
            _ => Failure::new(1, e.to_string()),
        }
    }
}

struct Ctx {
    machine: bool,
    max_reductions: Option<u64>,
    max_degree: Option<u32>,
    dmax: Option<usize>,
}

impl Ctx {
    fn load(&self, path: &PathBuf) -> Result<ProblemFile, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
        let mut p = ProblemFile::parse(&text)
            .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
        if self.max_reductions.is_some() {
            p.options.max_reductions = self.max_reductions;
        }
        if self.max_degree.is_some() {
            p.options.max_degree = self.max_degree;
        }
        if self.dmax.is_some() {
            p.options.dmax = self.dmax;
        }
        Ok(p)
    }

    fn budget(&self, p: &ProblemFile) -> Budget {
        p.options.budget()
    }
}

fn basis_lines(gb: &GroebnerBasis<RationalFunction>, machine: bool) -> Vec<String> {
    let r = gb.render();
    if machine {
        let mut out = vec![format!("basis={}", r.len())];
        out.extend(r.iter().enumerate().map(|(k, g)| format!("basis.{}={g}", k + 1)));
        out
    } else {
        r
    }
}

fn parse_poly(
    ideal: &IdealPresentation<RationalFunction>,
    text: &str,
) -> Result<crate::polyring::Poly<RationalFunction>, Failure> {
    ideal
        .ring()
        .parse(text)
        .map_err(|e| Failure::new(2, format!("argument: {e}")))
}

fn check(ctx: &Ctx, path: &PathBuf) -> Result<(Vec<String>, bool), Failure> {
    let p = ctx.load(path)?;
    let sys = p.linear_system()?;
    let field = sys.field();
    let comm = field.check_commutation().map_err(|e| Failure::new(1, e.to_string()))?;
    let integ = sys.check_integrability().map_err(|e| Failure::new(1, e.to_string()))?;
    let ok = comm.passed() && integ.passed();
    let mut out = Vec::new();
    if ctx.machine {
        out.push(format!("commutation.pairs={}", comm.pairs_checked));
        out.push(format!("commutation.failures={}", comm.failures.len()));
        for (k, f) in comm.failures.iter().enumerate() {
            out.push(format!(
                "commutation.failure.{}={} {} {}: {} vs {}",
                k + 1,
                f.first,
                f.second,
                f.var,
                field.render(&f.first_second),
                field.render(&f.second_first)
            ));
        }
        for c in &integ.checks {
            let key = format!("integrability.{}.{}.{}", c.condition, c.first, c.second);
            out.push(format!("{key}={}", c.passed));
            if !c.passed {
                out.push(format!("{key}.residual={}", sys.render_matrix(&c.residual)));
            }
        }
        for (a, b) in &integ.literal_only {
            out.push(format!("literal_only={a} {b}"));
        }
        out.push(format!("status={}", if ok { "pass" } else { "fail" }));
    } else {
        let names = field.operators().map(|o| o.id().to_string()).collect::<Vec<_>>().join(", ");
        out.push(format!("field: variables {}; operators {names}", field.names().join(", ")));
        out.push(format!(
            "commutation: {} pairs checked, {}",
            comm.pairs_checked,
            if comm.passed() { "ok" } else { "FAILED" }
        ));
        for f in &comm.failures {
            out.push(format!(
                "  {}({}({})) = {} but {}({}({})) = {}",
                f.first,
                f.second,
                f.var,
                field.render(&f.first_second),
                f.second,
                f.first,
                f.var,
                field.render(&f.second_first)
            ));
        }
        out.push(format!("integrability (n = {}):", sys.n()));
        for c in &integ.checks {
            if c.passed {
                out.push(format!("  {} {} {}: ok", c.condition, c.first, c.second));
            } else {
                out.push(format!(
                    "  {} {} {}: FAILED, residual {}",
                    c.condition,
                    c.first,
                    c.second,
                    sys.render_matrix(&c.residual)
                ));
            }
        }
        for (a, b) in &integ.literal_only {
            out.push(format!("  note: ({a}, {b}) satisfies only the form σ_i(A_j) = σ_j(A_i)·A_j"));
        }
        out.push(format!("result: {}", if ok { "pass" } else { "FAILED" }));
    }
    Ok((out, ok))
}

fn ring_and_seeds(
    ctx: &Ctx,
    path: &PathBuf,
) -> Result<(ProblemFile, JetRing, std::collections::BTreeMap<usize, Vec<crate::jetring::JetPoly>>), Failure> {
    let p = ctx.load(path)?;
    let ring = p.jet_ring()?;
    let seeds = p.seeds(&ring)?;
    Ok((p, ring, seeds))
}

fn prolong(ctx: &Ctx, path: &PathBuf, level: usize) -> Result<(Vec<String>, bool), Failure> {
    let (_, ring, seeds) = ring_and_seeds(ctx, path)?;
    if level >= ring.dmax() {
        return Err(Failure::new(4, format!("level {level} leaves no room below D_max = {}", ring.dmax())));
    }
    let a = ring.ideal_from_polys(level, seeds.get(&level).cloned().unwrap_or_default())?;
    let closure = check_closure(&ring, &a)?;
    let cert = check_consistency(&ring, &a)?;
    let ok = closure.passed && !cert.trivial;
    let mut out = Vec::new();
    if ctx.machine {
        out.push(cert.render_machine(&ring));
        out.push(format!("status={}", if ok { "pass" } else { "fail" }));
    } else {
        out.push("a:".into());
        if a.generators().is_empty() {
            out.push("  (0)".into());
        }
        out.extend(a.generators().iter().map(|g| format!("  {}", ring.render_poly(g))));
        for f in &closure.failures {
            out.push(format!("closure failure: {} ∉ a", ring.render_poly(f)));
        }
        out.push(cert.render_text(&ring));
    }
    Ok((out, ok))
}

fn chain(ctx: &Ctx, path: &PathBuf, depth: usize) -> Result<(Vec<String>, bool), Failure> {
    let (_, ring, seeds) = ring_and_seeds(ctx, path)?;
    let report = build_chain(&ring, &seeds, depth)?;
    let text = if ctx.machine { report.render_machine(&ring) } else { report.render_text(&ring) };
    Ok((vec![text], report.passed()))
}

fn constants(
    ctx: &Ctx,
    path: &PathBuf,
    level: usize,
    bound: Option<u32>,
    dens: &[String],
) -> Result<(Vec<String>, bool), Failure> {
    let (p, ring, seeds) = ring_and_seeds(ctx, path)?;
    let bound = bound.or(p.options.degree_bound).unwrap_or(DEFAULT_DEGREE_BOUND);
    let dens = dens
        .iter()
        .map(|d| {
            ring.field()
                .parse(d)
                .map_err(|e| Failure::new(2, format!("denominator '{d}': {e}")))
                .and_then(|f| {
                    if f.is_zero() {
                        Err(Failure::new(2, format!("denominator '{d}' is zero")))
                    } else {
                        Ok(f)
                    }
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let report = build_chain(&ring, &seeds, level)?;
    if !report.passed() {
        let text = if ctx.machine { report.render_machine(&ring) } else { report.render_text(&ring) };
        return Ok((vec![text], false));
    }
    let m = &report.levels[level].ideal;
    let c = find_constants(&ring, m, bound, &dens)?;
    let text = if ctx.machine { c.render_machine(&ring) } else { c.render_text(&ring) };
    Ok((vec![text], true))
}

fn kernel(ctx: &Ctx, cmd: &Command) -> Result<(Vec<String>, bool), Failure> {
    let args = match cmd {
        Command::Groebner { ideal, .. }
        | Command::Member { ideal, .. }
        | Command::Eliminate { ideal, .. }
        | Command::Saturate { ideal, .. } => ideal,
        _ => unreachable!(),
    };
    let p = ctx.load(&args.file)?;
    let ideal = p.ideal(&args.ideal)?;
    let budget = ctx.budget(&p);
    let traced = |out: &mut Vec<String>| -> Result<GroebnerBasis<RationalFunction>, Failure> {
        let (gb, events) = groebner_traced(&ideal, &budget)?;
        out.extend(events.iter().map(|e| render_trace(ideal.ring(), e)));
        Ok(gb)
    };
    let mut out = Vec::new();
    match cmd {
        Command::Groebner { trace, .. } => {
            let gb = if *trace { traced(&mut out)? } else { groebner(&ideal, &budget)? };
            out.extend(basis_lines(&gb, ctx.machine));
            Ok((out, true))
        }
        Command::Member { poly, trace, .. } => {
            let f = parse_poly(&ideal, poly)?;
            let gb = if *trace { traced(&mut out)? } else { groebner(&ideal, &budget)? };
            let yes = gb.contains(&f);
            let nf = ideal.ring().render(&gb.normal_form(&f));
            if ctx.machine {
                out.push(format!("member={yes}"));
                out.push(format!("normal_form={nf}"));
            } else {
                out.push(format!("member: {}", if yes { "yes" } else { "no" }));
                out.push(format!("normal form: {nf}"));
            }
            Ok((out, yes))
        }
        Command::Eliminate { keep, .. } => {
            let mut idx = Vec::new();
            for k in keep {
                let k = k.trim();
                idx.push(
                    ideal
                        .ring()
                        .index_of(k)
                        .ok_or_else(|| Failure::new(2, format!("--keep: unknown variable '{k}'")))?,
                );
            }
            let gb = eliminate(&ideal, &idx, &budget)?;
            out.extend(basis_lines(&gb, ctx.machine));
            Ok((out, true))
        }
        Command::Saturate { by, .. } => {
            let f = parse_poly(&ideal, by)?;
            if f.is_zero() {
                return Err(Failure::new(2, "--by: cannot saturate by zero"));
            }
            let gb = saturate(&ideal, &f, &budget)?;
            out.extend(basis_lines(&gb, ctx.machine));
            Ok((out, true))
        }
        _ => unreachable!(),
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        machine: cli.machine,
        max_reductions: cli.max_reductions,
        max_degree: cli.max_degree,
        dmax: cli.dmax,
    };
    let result = match &cli.command {
        Command::Check { file } => check(&ctx, file),
        Command::Prolong { file, level } => prolong(&ctx, file, *level),
        Command::Chain { file, depth } => chain(&ctx, file, *depth),
        Command::Counterexample => {
            let c = counterexample_two_derivations();
            let ok = c.trivial() && c.witness.proves_unit();
            Ok((vec![if ctx.machine { c.render_machine() } else { c.render_text() }], ok))
        }
        Command::Constants {
            file,
            level,
            degree_bound,
            denominators,
        } => constants(&ctx, file, *level, *degree_bound, denominators),
        cmd => kernel(&ctx, cmd),
    };
    match result {
        Ok((lines, ok)) => {
            let mut stdout = lines.join("\n");
            stdout.push('\n');
            Outcome {
                stdout,
                stderr: String::new(),
                code: if ok { 0 } else { 1 },
            }
        }
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
            code: f.code,
        },
    }
}

/// Parses `args` (including the program name) and runs them. Usage errors exit with 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

/// Entry point for the binary: runs, prints, and returns the exit code.
pub fn main() -> i32 {
    let o = run(std::env::args_os());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.code
}

#[cfg(test)]
mod tests;
