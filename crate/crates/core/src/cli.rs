//! Command-line front end.
//!
//! Every invocation prints one JSON [`VerdictReport`] on standard output and
//! exits with 0 when the checked statement holds, 1 when it is false and 2 on
//! errors. Diagnostics go to standard error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analogue::{g_map, in_domain, kron_sum, GVariant};
use crate::cayley::{cayley, inverse_cayley, phase_coincidence};
use crate::error::{Error, Result};
use crate::io::{parse_matrix, write_matrix, MatrixJson, Real17};
use crate::linalg::{kron, kron_all, require_hermitian, unitary_defect, CMatrix, Tolerances};
use crate::predicates::{
    companion_discriminant, companion_eigenvalues, identity_power_equal, multipartite_direct, multipartite_sufficient,
    theorem3_check,
};
use crate::separability::{kron_factorize, theorem1_classify, theorem2_hermitian_factor};

#[derive(Debug, Parser)]
#[command(name = "cayley-kron", version, about = "Cayley transforms and Kronecker products of Hermitian matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Cayley transform of a Hermitian matrix (--a)
    Cayley,
    /// Inverse Cayley transform of a unitary matrix (--a)
    InvCayley,
    /// Kronecker product of --a and --b, or of all --inputs
    Kron,
    /// Kronecker sum A ⊗ I + I ⊗ B
    KronSum,
    /// Hermitian G with cayley(G) = cayley(A) ⊗ cayley(B)
    Gmap,
    /// Whether cayley(A ⊗ B) is a Kronecker product, by eigenvalue counts
    Classify,
    /// Kronecker factors of cayley(A ⊗ B), or of --a with --m rows in the left factor
    Factorize,
    /// Hermitian C, D with cayley(C) ⊗ cayley(D) = cayley(A ⊗ B)
    Hfactor,
    /// Whether cayley(A ⊗ B) = cayley(A) ⊗ cayley(B)
    T3,
    /// Real b with value·b·(1 − value − b) = 1
    Companion,
    /// Multipartite identity for all --inputs
    Multi,
    /// Whether cayley of the k-th Kronecker power of I_m is the k-th power of cayley(I_m)
    Idpow,
    /// Phase φ with cayley(H) = e^{iφ} H for a 2x2 Hermitian H (--a)
    Phase2x2,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Self::Cayley => "cayley",
            Self::InvCayley => "inv-cayley",
            Self::Kron => "kron",
            Self::KronSum => "kron-sum",
            Self::Gmap => "gmap",
            Self::Classify => "classify",
            Self::Factorize => "factorize",
            Self::Hfactor => "hfactor",
            Self::T3 => "t3",
            Self::Companion => "companion",
            Self::Multi => "multi",
            Self::Idpow => "idpow",
            Self::Phase2x2 => "phase2x2",
        }
    }
}

#[derive(Debug, Clone, Args)]
struct Options {
    /// First matrix file (`-` reads standard input)
    #[arg(long, global = true, value_name = "PATH")]
    a: Option<PathBuf>,
    /// Second matrix file
    #[arg(long, global = true, value_name = "PATH")]
    b: Option<PathBuf>,
    /// Matrix files for multi-factor commands
    #[arg(long, global = true, num_args = 1.., value_name = "PATH")]
    inputs: Vec<PathBuf>,
    /// Equality tolerance; the other tolerances scale with it
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,
    #[arg(long, global = true, value_name = "X")]
    tol_cluster: Option<f64>,
    #[arg(long, global = true, value_name = "X")]
    tol_conv: Option<f64>,
    /// Identity size for idpow, or left factor size for factorize
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Kronecker power for idpow
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Eigenvalue for companion
    #[arg(long, global = true, allow_hyphen_values = true)]
    value: Option<f64>,
    /// Where to write the output matrix (the first factor for factorize and hfactor)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Where to write the second factor for factorize and hfactor
    #[arg(long, global = true, value_name = "PATH")]
    out_d: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Holds => 0,
            Self::Fails => 1,
            Self::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToleranceReport {
    pub eq: Real17,
    pub cluster: Real17,
    pub conv: Real17,
}

impl From<&Tolerances> for ToleranceReport {
    fn from(t: &Tolerances) -> Self {
        Self { eq: Real17(t.eq), cluster: Real17(t.cluster), conv: Real17(t.conv) }
    }
}

/// The JSON document printed by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub residuals: BTreeMap<String, Real17>,
    pub values: BTreeMap<String, Vec<Real17>>,
    pub flags: BTreeMap<String, bool>,
    pub outputs: BTreeMap<String, MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceReport>,
}

/// Result of one command before it is wrapped into a report.
#[derive(Debug, Default)]
struct Outcome {
    holds: bool,
    case: Option<String>,
    message: Option<String>,
    residuals: BTreeMap<String, Real17>,
    values: BTreeMap<String, Vec<Real17>>,
    flags: BTreeMap<String, bool>,
    outputs: Vec<(String, CMatrix)>,
}

impl Outcome {
    fn new(holds: bool) -> Self {
        Self { holds, ..Self::default() }
    }

    fn case(mut self, case: impl ToString) -> Self {
        self.case = Some(case.to_string());
        self
    }

    fn message(mut self, message: impl ToString) -> Self {
        self.message = Some(message.to_string());
        self
    }

    fn residual(mut self, name: &str, value: f64) -> Self {
        if value.is_finite() {
            self.residuals.insert(name.to_string(), Real17(value));
        }
        self
    }

    fn values(mut self, name: &str, values: &[f64]) -> Self {
        self.values.insert(name.to_string(), values.iter().map(|&v| Real17(v)).collect());
        self
    }

    fn flag(mut self, name: &str, value: bool) -> Self {
        self.flags.insert(name.to_string(), value);
        self
    }

    fn output(mut self, name: &str, m: CMatrix) -> Self {
        self.outputs.push((name.to_string(), m));
        self
    }
}

/// Parses `args` (including the program name), runs the command, prints the
/// report to `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let report = execute(cli.command, &cli.options);
    if let Some(message) = &report.message {
        if report.verdict == Verdict::Error {
            let _ = writeln!(err, "cayley-kron {}: {message}", report.command);
        }
    }
    let text = serde_json::to_string_pretty(&report).expect("report serialization cannot fail");
    if writeln!(out, "{text}").is_err() {
        return 2;
    }
    report.verdict.exit_code()
}

fn execute(command: Command, opts: &Options) -> VerdictReport {
    let inputs = opts
        .a
        .iter()
        .chain(&opts.b)
        .chain(&opts.inputs)
        .map(|p| p.display().to_string())
        .collect();
    let mut report = VerdictReport {
        command: command.name().to_string(),
        inputs,
        verdict: Verdict::Error,
        case: None,
        message: None,
        residuals: BTreeMap::new(),
        values: BTreeMap::new(),
        flags: BTreeMap::new(),
        outputs: BTreeMap::new(),
        tolerances: None,
    };
    let result = tolerances(opts).and_then(|tol| {
        report.tolerances = Some(ToleranceReport::from(&tol));
        let outcome = dispatch(command, opts, &tol)?;
        write_outputs(command, opts, &outcome.outputs)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            report.verdict = if outcome.holds { Verdict::Holds } else { Verdict::Fails };
            report.case = outcome.case;
            report.message = outcome.message;
            report.residuals = outcome.residuals;
            report.values = outcome.values;
            report.flags = outcome.flags;
            report.outputs = outcome.outputs.iter().map(|(name, m)| (name.clone(), MatrixJson::from(m))).collect();
        }
        Err(e) => report.message = Some(e.to_string()),
    }
    report
}

fn tolerances(opts: &Options) -> Result<Tolerances> {
    let mut tol = match opts.tol {
        Some(eq) => Tolerances::scaled(eq)?,
        None => Tolerances::default(),
    };
    if let Some(c) = opts.tol_cluster {
        tol.cluster = c;
    }
    if let Some(c) = opts.tol_conv {
        tol.conv = c;
    }
    tol.validated()
}

fn write_outputs(command: Command, opts: &Options, outputs: &[(String, CMatrix)]) -> Result<()> {
    let targets = [&opts.out, &opts.out_d];
    if opts.out_d.is_some() && !matches!(command, Command::Factorize | Command::Hfactor) {
        return Err(usage("--out-d", "only factorize and hfactor produce a second matrix"));
    }
    if opts.out.is_some() && outputs.is_empty() {
        return Err(usage("--out", "this command produces no matrix"));
    }
    for (target, (_, m)) in targets.iter().zip(outputs) {
        if let Some(path) = target {
            write_matrix(path, m)?;
        }
    }
    Ok(())
}

fn usage(flag: &str, message: &str) -> Error {
    Error::Parse { origin: "arguments".into(), location: flag.into(), message: message.into() }
}

fn load(path: &Option<PathBuf>, flag: &str) -> Result<CMatrix> {
    let path: &Path = path.as_deref().ok_or_else(|| usage(flag, "required by this command"))?;
    parse_matrix(path)
}

fn load_pair(opts: &Options) -> Result<(CMatrix, CMatrix)> {
    Ok((load(&opts.a, "--a")?, load(&opts.b, "--b")?))
}

fn load_inputs(opts: &Options) -> Result<Vec<CMatrix>> {
    if opts.inputs.is_empty() {
        return Err(usage("--inputs", "at least one matrix is required"));
    }
    opts.inputs.iter().map(|p| parse_matrix(p)).collect()
}

fn dispatch(command: Command, opts: &Options, tol: &Tolerances) -> Result<Outcome> {
    match command {
        Command::Cayley => {
            let a = load(&opts.a, "--a")?;
            let u = cayley(&a, tol)?;
            Ok(Outcome::new(true).residual("unitary_defect", unitary_defect(&u)).output("cayley", u))
        }
        Command::InvCayley => {
            let u = load(&opts.a, "--a")?;
            let a = inverse_cayley(&u, tol)?;
            let back = cayley(&a, tol)?.max_abs_diff(&u);
            Ok(Outcome::new(true).residual("round_trip", back).output("inverse_cayley", a))
        }
        Command::Kron => {
            let product = if opts.inputs.is_empty() {
                let (a, b) = load_pair(opts)?;
                kron(&a, &b)
            } else {
                kron_all(&load_inputs(opts)?)?
            };
            Ok(Outcome::new(true).output("kron", product))
        }
        Command::KronSum => {
            let (a, b) = load_pair(opts)?;
            Ok(Outcome::new(true).output("kron_sum", kron_sum(&a, &b)?))
        }
        Command::Gmap => gmap(opts, tol),
        Command::Classify => {
            let (a, b) = load_pair(opts)?;
            let class = theorem1_classify(&a, &b, tol)?;
            Ok(Outcome::new(class.is_factorable())
                .case(class.verdict)
                .residual("eigenvalue_relation", class.residual)
                .values("distinct_eigenvalues_a", &class.distinct_eigenvalues_a)
                .values("distinct_eigenvalues_b", &class.distinct_eigenvalues_b))
        }
        Command::Factorize => factorize(opts, tol),
        Command::Hfactor => hfactor(opts, tol),
        Command::T3 => {
            let (a, b) = load_pair(opts)?;
            let v = theorem3_check(&a, &b, tol)?;
            let mut outcome = Outcome::new(v.holds)
                .residual("eigenvalue_relation", v.residual)
                .residual("direct", v.direct_residual);
            if let Some(case) = v.case {
                outcome = outcome.case(case);
            }
            Ok(outcome)
        }
        Command::Companion => {
            let value = opts.value.ok_or_else(|| usage("--value", "required by this command"))?;
            if !value.is_finite() {
                return Err(usage("--value", "must be finite"));
            }
            let outcome = Outcome::new(false).residual("discriminant", companion_discriminant(value));
            match companion_eigenvalues(value, tol) {
                Ok(roots) => Ok(Outcome { holds: true, ..outcome }.values("companions", &roots)),
                Err(e @ (Error::NoRealCompanion { .. } | Error::ZeroEigenvalue { .. })) => {
                    Ok(outcome.case("NoRealCompanion").message(e))
                }
                Err(e) => Err(e),
            }
        }
        Command::Multi => {
            let mats = load_inputs(opts)?;
            let direct = multipartite_direct(&mats, tol)?;
            let chain = multipartite_sufficient(&mats, tol)?;
            Ok(Outcome::new(direct.holds)
                .residual("direct", direct.residual)
                .flag("sufficient", chain.holds())
                .flag("left_nested", chain.left_nested)
                .flag("right_nested", chain.right_nested)
                .flag("eigenvalue_tuples", chain.eigenvalue_tuples))
        }
        Command::Idpow => {
            let m = opts.m.ok_or_else(|| usage("--m", "required by this command"))?;
            let k = opts.k.ok_or_else(|| usage("--k", "required by this command"))?;
            Ok(Outcome::new(identity_power_equal(m, k)?))
        }
        Command::Phase2x2 => {
            let h = load(&opts.a, "--a")?;
            if h.rows() != 2 || h.cols() != 2 {
                return Err(Error::Dimension(format!("phase2x2 needs a 2x2 matrix, got {}x{}", h.rows(), h.cols())));
            }
            require_hermitian(&h, tol)?;
            // H = [[a + d, b − ic], [b + ic, a − d]]
            let (p, q) = (h[(0, 0)].re, h[(1, 1)].re);
            let (a, d, b, c) = ((p + q) / 2.0, (p - q) / 2.0, h[(0, 1)].re, -h[(0, 1)].im);
            let outcome = Outcome::new(false).values("pauli_coefficients", &[a, b, c, d]);
            Ok(match phase_coincidence(a, b, c, d, tol) {
                Some(phi) => Outcome { holds: true, ..outcome }.values("phase", &[phi]),
                None => outcome,
            })
        }
    }
}

fn gmap(opts: &Options, tol: &Tolerances) -> Result<Outcome> {
    let (a, b) = load_pair(opts)?;
    let margin = in_domain(&a, &b, tol)?.margin;
    let g = g_map(&a, &b, tol, GVariant::Primary)?;
    let alternate = g_map(&a, &b, tol, GVariant::Alternate)?;
    let target = kron(&cayley(&a, tol)?, &cayley(&b, tol)?);
    let identity = cayley(&g, tol)?.max_abs_diff(&target);
    let variants = alternate.max_abs_diff(&g);
    let hermitian = g.hermitian_defect();
    let holds = identity <= tol.eq_bound(target.max_norm())
        && variants <= tol.eq_bound(g.max_norm())
        && hermitian <= tol.eq_bound(g.max_norm());
    Ok(Outcome::new(holds)
        .residual("domain_margin", margin)
        .residual("identity", identity)
        .residual("variants", variants)
        .residual("hermitian_defect", hermitian)
        .output("gmap", g))
}

fn factorize(opts: &Options, tol: &Tolerances) -> Result<Outcome> {
    let (mat, m, n) = match (&opts.a, &opts.b) {
        (Some(_), Some(_)) => {
            let (a, b) = load_pair(opts)?;
            (cayley(&kron(&a, &b), tol)?, a.rows(), b.rows())
        }
        _ => {
            let mat = load(&opts.a, "--a")?;
            let m = opts.m.ok_or_else(|| usage("--m", "required when factorizing a single matrix"))?;
            if m == 0 || mat.rows() % m != 0 || mat.cols() % m != 0 || mat.rows() != mat.cols() {
                return Err(Error::Dimension(format!(
                    "{}x{} matrix has no {m}x{m} left factor",
                    mat.rows(),
                    mat.cols()
                )));
            }
            let n = mat.rows() / m;
            (mat, m, n)
        }
    };
    match kron_factorize(&mat, m, n, tol) {
        Ok((c, d)) => {
            let residual = kron(&c, &d).max_abs_diff(&mat);
            Ok(Outcome::new(true).residual("reconstruction", residual).output("c", c).output("d", d))
        }
        Err(e @ Error::NotRankOne { residual }) => {
            Ok(Outcome::new(false).case("NotRankOne").residual("rank_one", residual).message(e))
        }
        Err(e) => Err(e),
    }
}

fn hfactor(opts: &Options, tol: &Tolerances) -> Result<Outcome> {
    let (a, b) = load_pair(opts)?;
    match theorem2_hermitian_factor(&a, &b, tol) {
        Ok(f) => {
            let target = cayley(&kron(&a, &b), tol)?;
            let residual = kron(&cayley(&f.c, tol)?, &cayley(&f.d, tol)?).max_abs_diff(&target);
            Ok(Outcome::new(true)
                .residual("reconstruction", residual)
                .values("theta", &[f.theta])
                .output("c", f.c)
                .output("d", f.d))
        }
        Err(e @ Error::NotFactorable { residual }) => {
            Ok(Outcome::new(false).case("NotFactorable").residual("eigenvalue_relation", residual).message(e))
        }
        Err(e) => Err(e),
    }
}
