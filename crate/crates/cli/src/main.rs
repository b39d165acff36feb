//! `liedual`: compute and verify Witt/Virasoro Lie bialgebras and their duals.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage or parse errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liedual_core::bracket::{build_oracle_table, build_table, cross_check};
use liedual_core::dual::{decompose_components, is_in_restricted_dual, Decomposition};
use liedual_core::json::{latex_finite, table_csv, table_latex};
use liedual_core::scalar::{format_rational, latex_rational, parse_rational};
use liedual_core::tensor::cybe;
use liedual_core::verify::{run_suite, VerifyConfig, SUITES};
use liedual_core::{
    AlgebraKind, BialgebraParams, ClosedForm, DualElementQ, Error, Json, Mutation, RFamily,
    RMatrix, Tensor2Q, Tensor3Q, Window, Q,
};

#[derive(Parser)]
#[command(
    name = "liedual",
    version,
    about = "Exact Witt/Virasoro Lie bialgebras and their restricted duals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical Yang–Baxter residual of an r-matrix.
    Cybe(Opts),
    /// Dual bracket table [εⁱ, εʲ] over a window.
    DualTable(Opts),
    /// Run the verification suites.
    Verify(Opts),
    /// Split a restricted-dual element (JSON file) into components.
    Decompose {
        /// DualElement JSON file.
        input: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    OneSidedWitt,
    Witt,
    Virasoro,
}

impl From<Algebra> for AlgebraKind {
    fn from(a: Algebra) -> Self {
        match a {
            Algebra::OneSidedWitt => AlgebraKind::OneSidedWitt,
            Algebra::Witt => AlgebraKind::Witt,
            Algebra::Virasoro => AlgebraKind::Virasoro,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    WittN,
    Xy,
    Raw,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(long, value_enum)]
    algebra: Option<Algebra>,
    #[arg(long, value_enum, default_value = "witt-n")]
    family: Family,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, default_value = "1", value_parser = rational, allow_hyphen_values = true)]
    ell: Q,
    #[arg(long, default_value = "1", value_parser = rational, allow_hyphen_values = true)]
    k: Q,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also build the table from the pairing oracle and compare.
    #[arg(long)]
    cross_check: bool,
    /// Run a single suite.
    #[arg(long)]
    suite: Option<String>,
    /// Write the main output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tensor JSON file for `--family raw`.
    #[arg(long = "r")]
    r_file: Option<PathBuf>,
    /// Flip the sign of one closed-form case.
    #[arg(long, value_parser = mutation)]
    mutate: Option<Mutation>,
}

fn rational(s: &str) -> Result<Q, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn mutation(s: &str) -> Result<Mutation, String> {
    s.parse::<Mutation>().map_err(|e| e.to_string())
}

/// A failed run: bad input, or a mathematical check that did not hold.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ClosedFormMismatch(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

impl Opts {
    fn kind(&self) -> AlgebraKind {
        self.algebra.map(Into::into).unwrap_or(AlgebraKind::Witt)
    }

    fn window(&self) -> Result<Option<Window>, Failure> {
        match self.window.as_deref() {
            None => Ok(None),
            Some(&[lo, hi]) if lo <= hi => Ok(Some(Window::new(lo, hi))),
            Some(_) => Err(Failure::Usage("--window needs LO <= HI".into())),
        }
    }

    fn closed_family(&self) -> Result<RFamily<Q>, Failure> {
        match self.family {
            Family::WittN => Ok(RFamily::WittN(self.n)),
            Family::Xy => Ok(RFamily::Xy(BialgebraParams::new(
                self.n,
                self.ell.clone(),
                self.k.clone(),
            )?)),
            Family::Raw => Err(Failure::Usage(
                "--family raw has no closed-form dual bracket".into(),
            )),
        }
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn read_json(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn tensor_text(t: &Tensor3Q, format: Format) -> String {
    match format {
        Format::Json => t.to_json_string() + "\n",
        Format::Csv => {
            let mut out = String::from("a,b,c,coeff\n");
            for ([a, b, c], v) in t.terms() {
                let _ = writeln!(out, "{a},{b},{c},{}", format_rational(v));
            }
            out
        }
        Format::Latex => {
            let terms: Vec<String> = t
                .terms()
                .iter()
                .map(|(labels, v)| {
                    let factors: Vec<String> = labels
                        .iter()
                        .map(|l| match l {
                            liedual_core::BasisLabel::Exponent(e) => format!("x^{{{e}}}"),
                            liedual_core::BasisLabel::Central => "c".into(),
                        })
                        .collect();
                    format!("{}\\,{}", latex_rational(v), factors.join("\\otimes "))
                })
                .collect();
            format!(
                "${}$\n",
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            )
        }
    }
}

fn cmd_cybe(opts: &Opts) -> Outcome {
    let (kind, r) = match opts.family {
        Family::Raw => {
            let path = opts
                .r_file
                .as_ref()
                .ok_or_else(|| Failure::Usage("--family raw needs --r FILE".into()))?;
            let t = Tensor2Q::from_json_str(&read_json(path)?)?;
            if opts
                .algebra
                .is_some_and(|a| AlgebraKind::from(a) != t.kind())
            {
                return Err(Failure::Usage(format!(
                    "--algebra disagrees with the tensor kind `{}`",
                    t.kind().name()
                )));
            }
            (t.kind(), t)
        }
        _ => {
            let kind = opts.kind();
            (kind, opts.closed_family()?.r_matrix(kind)?.into_tensor())
        }
    };
    let residual = cybe(kind, &r)?;
    opts.emit(&tensor_text(&residual, opts.format))?;
    let antisymmetric = RMatrix::new(r).is_ok();
    let pass = residual.is_zero();
    eprintln!(
        "{}: CYBE residual has {} terms{}",
        if pass { "PASS" } else { "FAIL" },
        residual.terms().len(),
        if antisymmetric {
            ""
        } else {
            " (r is not antisymmetric)"
        }
    );
    Ok(pass)
}

fn cmd_dual_table(opts: &Opts) -> Outcome {
    let kind = opts.kind();
    let family = opts.closed_family()?;
    let window = opts.window()?.unwrap_or(Window::symmetric(3));
    let source =
        ClosedForm::new(kind, family.clone())?.with_mutation(opts.mutate.unwrap_or_default());
    let table = build_table(&source, window)?;
    let text = match opts.format {
        Format::Json => table.to_json_string() + "\n",
        Format::Csv => table_csv(&table),
        Format::Latex => table_latex(&table),
    };
    opts.emit(&text)?;
    if !opts.cross_check {
        return Ok(true);
    }
    let oracle = build_oracle_table(kind, &family, window)?;
    let report = cross_check(&source, window)?;
    let mut mismatches: Vec<(i64, i64)> = table
        .entries
        .keys()
        .filter(|ij| table.entries.get(ij) != oracle.entries.get(ij))
        .copied()
        .collect();
    mismatches.extend(report.mismatches.iter().map(|m| (m.i, m.j)));
    mismatches.sort_unstable();
    mismatches.dedup();
    for (i, j) in &mismatches {
        let show =
            |t: &liedual_core::BracketTableQ| t.get(*i, *j).map(latex_finite).unwrap_or_default();
        eprintln!(
            "mismatch at ({i},{j}): closed form {} vs oracle {}",
            show(&table),
            show(&oracle)
        );
    }
    eprintln!(
        "{} mismatches over {} entries",
        mismatches.len(),
        table.entries.len()
    );
    Ok(mismatches.is_empty())
}

fn cmd_verify(opts: &Opts) -> Outcome {
    let config = VerifyConfig {
        window: opts.window()?,
        mutation: opts.mutate.unwrap_or_default(),
    };
    let names: Vec<&str> = match &opts.suite {
        Some(s) => {
            if !SUITES.contains(&s.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown suite `{s}`; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            vec![s.as_str()]
        }
        None => SUITES.to_vec(),
    };
    let mut text = String::new();
    let mut all = true;
    for name in names {
        let report = run_suite(name, &config)?;
        all &= report.passed();
        let mut block = format!("{report}\n");
        for f in report.failures.iter().take(10) {
            let _ = writeln!(block, "    {f}");
        }
        if opts.out.is_some() {
            eprint!("{block}");
        } else {
            print!("{block}");
        }
        text.push_str(&block);
    }
    let summary = if all {
        "all suites passed\n"
    } else {
        "some suites failed\n"
    };
    text.push_str(summary);
    match opts.out {
        Some(_) => opts.emit(&text)?,
        None => print!("{summary}"),
    }
    Ok(all)
}

fn cmd_decompose(input: &PathBuf, opts: &Opts) -> Outcome {
    if opts.format != Format::Json {
        return Err(Failure::Usage("decompose writes JSON only".into()));
    }
    let f = DualElementQ::from_json_str(&read_json(input)?)?;
    if !is_in_restricted_dual(&f) {
        return Err(Failure::Check(
            "the element is not in the restricted dual".into(),
        ));
    }
    let d = decompose_components(&f)?;
    opts.emit(&(d.to_json_string() + "\n"))?;
    match &d {
        Decomposition::Components {
            components,
            finite_part,
        } if components.is_empty() && finite_part.is_empty() => {
            eprintln!("empty decomposition")
        }
        Decomposition::Components {
            components,
            finite_part,
        } => {
            let roots: Vec<String> = components
                .iter()
                .map(|c| format_rational(&c.root))
                .collect();
            eprintln!(
                "{} components (roots {}){}",
                components.len(),
                roots.join(", "),
                if finite_part.is_empty() {
                    ""
                } else {
                    " plus a finite part"
                }
            );
        }
        Decomposition::IrreducibleFactors {
            minimal_polynomial,
            factors,
        } => {
            eprintln!(
                "no rational decomposition: minimal polynomial {minimal_polynomial} has {} factors",
                factors.len()
            );
        }
    }
    Ok(true)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("LIEDUAL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            Failure::Usage(format!(
                "LIEDUAL_THREADS must be a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match &cli.command {
        Command::Cybe(opts) => cmd_cybe(opts),
        Command::DualTable(opts) => cmd_dual_table(opts),
        Command::Verify(opts) => cmd_verify(opts),
        Command::Decompose { input, opts } => cmd_decompose(input, opts),
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
