//! The verification suites behind `liedual verify` and the acceptance tests.
//!
//! Every suite is exact: a check passes only on rational equality.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bialgebra::{
    basis_window, build_subalgebra_pair, check_cojacobi, check_compatibility, r_from_pair,
};
use crate::bracket::{
    antisymmetry_sweep, cross_check_with_sweep, jacobi_sweep, master_witt, oracle_sweep,
    oracle_values, xy_half, ClosedForm, Mutation,
};
use crate::dual::{
    cobracket_dual, decompose_components, infer_recurrence, is_in_restricted_dual, Decomposition,
};
use crate::json::format_finite;
use crate::sparse::accumulate;
use crate::tensor::cybe;
use crate::{
    bracket, AlgebraKind, BialgebraParams, Domain, DualElement, Error, LieElement, RFamily, Window,
    Q,
};

use AlgebraKind::{OneSidedWitt, Virasoro, Witt};

/// Suite names in running order.
pub const SUITES: [&str; 9] = [
    "cybe",
    "subalgebra-pair",
    "witt-table",
    "xy-table",
    "jacobi",
    "dual-cobracket",
    "axioms",
    "dual-core",
    "mutation",
];

/// `n` values for the Witt-family tables.
pub const WITT_NS: [i64; 8] = [-3, -2, -1, 0, 2, 3, 4, 5];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Replaces each suite's default index window.
    pub window: Option<Window>,
    pub mutation: Mutation,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<15} {:>9} checks {:>6} failures {:>9.3}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

/// Collects check outcomes, keeping the first few failure descriptions.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// The `(n, ℓ, k)` grid: `n ∈ [−4, 4] \ {1}`, `ℓ, k ∈ {1, −1, 1/2, 3}`.
pub fn params_grid() -> Vec<BialgebraParams<Q>> {
    let values = [
        Q::from_integer(1.into()),
        Q::from_integer((-1).into()),
        Q::new(1.into(), 2.into()),
        Q::from_integer(3.into()),
    ];
    let mut out = Vec::new();
    for n in (-4..=4).filter(|&n| n != 1) {
        for ell in &values {
            for k in &values {
                out.push(BialgebraParams::new(n, ell.clone(), k.clone()).expect("valid grid"));
            }
        }
    }
    out
}

fn witt_ns(kind: AlgebraKind) -> impl Iterator<Item = i64> {
    WITT_NS
        .into_iter()
        .filter(move |n| kind.domain().admits(*n))
}

pub fn run_suite(name: &str, config: &VerifyConfig) -> Result<SuiteReport, Error> {
    let start = Instant::now();
    let (name, tally) = match name {
        "cybe" => ("cybe", suite_cybe(config)?),
        "subalgebra-pair" => ("subalgebra-pair", suite_subalgebra_pair(config)?),
        "witt-table" => (
            "witt-table",
            suite_witt_table(config, config.mutation, false)?,
        ),
        "xy-table" => ("xy-table", suite_xy_table(config, config.mutation, false)?),
        "jacobi" => ("jacobi", suite_jacobi(config)?),
        "dual-cobracket" => ("dual-cobracket", suite_dual_cobracket(config)?),
        "axioms" => ("axioms", suite_axioms(config)?),
        "dual-core" => ("dual-core", suite_dual_core()?),
        "mutation" => ("mutation", suite_mutation(config)?),
        other => {
            return Err(Error::Parse(format!(
                "unknown suite `{other}`; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        name,
        checks: tally.checks,
        failures: tally.failures,
        elapsed: start.elapsed(),
    })
}

pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteReport>, Error> {
    SUITES.iter().map(|s| run_suite(s, config)).collect()
}

/// `C(x ⊗ xⁿ − xⁿ ⊗ x) = 0`.
fn suite_cybe(config: &VerifyConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let ns = config.window.unwrap_or(Window::symmetric(5));
    for kind in AlgebraKind::ALL {
        for n in ns.clip(kind.domain()).iter().filter(|&n| n != 1) {
            let r = RFamily::<Q>::WittN(n).r_matrix(kind)?;
            let residual = cybe(kind, r.as_tensor())?;
            t.check(residual.is_zero(), || {
                format!(
                    "{} n={n}: CYBE residual has {} terms",
                    kind.name(),
                    residual.terms().len()
                )
            });
        }
    }
    Ok(t)
}

/// `[X, Y] = Y` and `C(X ⊗ Y − Y ⊗ X) = 0` on the parameter grid.
fn suite_subalgebra_pair(config: &VerifyConfig) -> Result<Tally, Error> {
    let ns = config.window.unwrap_or(Window::symmetric(4));
    let grid: Vec<_> = params_grid()
        .into_iter()
        .filter(|p| ns.contains(p.n()))
        .collect();
    let tallies = [Witt, Virasoro]
        .into_par_iter()
        .flat_map(|kind| grid.par_iter().map(move |p| (kind, p)))
        .map(|(kind, p)| {
            let mut t = Tally::default();
            let label = || format!("{} (n,l,k)=({},{},{})", kind.name(), p.n(), p.ell(), p.k());
            let (x, y) = build_subalgebra_pair(kind, p)?;
            t.check(bracket(kind, &x, &y)? == y, || {
                format!("{}: [X,Y] != Y", label())
            });
            let r = r_from_pair(kind, &x, &y)?;
            t.check(cybe(kind, r.as_tensor())?.is_zero(), || {
                format!("{}: CYBE residual nonzero", label())
            });
            Ok(t)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(tallies.into_iter().fold(Tally::default(), |mut a, b| {
        a.merge(b);
        a
    }))
}

fn table_window(config: &VerifyConfig) -> Window {
    config.window.unwrap_or(Window::symmetric(8))
}

/// The oracle sweep used by the table suites: the support bound, widened to `[−20, 20]`.
fn table_sweep(kind: AlgebraKind, n: i64, window: Window) -> Window {
    oracle_sweep(kind, n, window.clip(kind.domain()))
        .hull(&Window::symmetric(20))
        .clip(kind.domain())
}

/// Closed forms for `x ⊗ xⁿ − xⁿ ⊗ x` against the oracle, the master
/// expression, and Witt/Virasoro agreement.
fn suite_witt_table(
    config: &VerifyConfig,
    mutation: Mutation,
    stop_early: bool,
) -> Result<Tally, Error> {
    let window = table_window(config);
    let mut t = Tally::default();
    for kind in AlgebraKind::ALL {
        for n in witt_ns(kind) {
            let source = ClosedForm::<Q>::new(kind, RFamily::WittN(n))?.with_mutation(mutation);
            let w = window.clip(kind.domain());
            let report = cross_check_with_sweep(&source, w, table_sweep(kind, n, w))?;
            t.checks += report.pairs;
            t.failures.extend(report.mismatches.iter().map(|m| {
                format!(
                    "{} n={n} ({},{}): closed form {} vs oracle {}",
                    kind.name(),
                    m.i,
                    m.j,
                    format_finite(&m.closed_form),
                    format_finite(&m.oracle)
                )
            }));
            t.check(report.max_support <= 4, || {
                format!("{} n={n}: support {} > 4", kind.name(), report.max_support)
            });
            if stop_early && !t.failures.is_empty() {
                return Ok(t);
            }
            for i in w.iter() {
                for j in w.iter() {
                    let closed = source.bracket(i, j)?;
                    t.check(closed == master_witt(kind, n, i, j), || {
                        format!(
                            "{} n={n} ({i},{j}): case table differs from the master expression",
                            kind.name()
                        )
                    });
                }
            }
        }
    }
    for n in witt_ns(Witt) {
        let sweep = table_sweep(Witt, n, window);
        let witt = oracle_values(Witt, &RFamily::<Q>::WittN(n).r_matrix(Witt)?, window, sweep)?;
        let vir = oracle_values(
            Virasoro,
            &RFamily::<Q>::WittN(n).r_matrix(Virasoro)?,
            window,
            sweep,
        )?;
        t.check(witt == vir, || {
            format!("n={n}: Witt and Virasoro oracles differ")
        });
    }
    Ok(t)
}

/// Closed forms for `X ⊗ Y − Y ⊗ X` against the oracle, and the oracle
/// against `A_ij − A_ji`.
fn suite_xy_table(
    config: &VerifyConfig,
    mutation: Mutation,
    stop_early: bool,
) -> Result<Tally, Error> {
    let window = table_window(config).clip(Domain::Laurent);
    let grid = params_grid();
    let run = |kind: AlgebraKind, p: &BialgebraParams<Q>| -> Result<Tally, Error> {
        let mut t = Tally::default();
        let label = format!("{} (n,l,k)=({},{},{})", kind.name(), p.n(), p.ell(), p.k());
        let family = RFamily::Xy(p.clone());
        let source = ClosedForm::new(kind, family.clone())?.with_mutation(mutation);
        let sweep = table_sweep(kind, p.n(), window);
        let report = cross_check_with_sweep(&source, window, sweep)?;
        t.checks += report.pairs;
        t.failures.extend(
            report
                .mismatches
                .iter()
                .map(|m| format!("{label} ({},{}): closed form differs from oracle", m.i, m.j)),
        );
        t.check(report.max_support <= 4, || {
            format!("{label}: support {} > 4", report.max_support)
        });
        let oracle = oracle_values(kind, &family.r_matrix(kind)?, window, sweep)?;
        for i in window.iter() {
            for j in window.iter() {
                let mut halves = xy_half(p, i, j);
                for (e, c) in xy_half(p, j, i) {
                    accumulate(&mut halves, e, -c);
                }
                halves.retain(|e, _| sweep.contains(*e));
                let expected = oracle.get(&(i, j)).cloned().unwrap_or_default();
                t.check(halves == expected, || {
                    format!("{label} ({i},{j}): A_ij - A_ji differs from oracle")
                });
            }
        }
        Ok(t)
    };
    if stop_early {
        let mut t = Tally::default();
        for kind in [Witt, Virasoro] {
            for p in &grid {
                t.merge(run(kind, p)?);
                if !t.failures.is_empty() {
                    return Ok(t);
                }
            }
        }
        return Ok(t);
    }
    let tallies = [Witt, Virasoro]
        .into_par_iter()
        .flat_map(|kind| grid.par_iter().map(move |p| (kind, p)))
        .map(|(kind, p)| run(kind, p))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(tallies.into_iter().fold(Tally::default(), |mut a, b| {
        a.merge(b);
        a
    }))
}

/// Jacobi on `window³` and antisymmetry on `[−8, 8]²` for the XY bracket,
/// plus Jacobi for the Witt-family brackets.
fn suite_jacobi(config: &VerifyConfig) -> Result<Tally, Error> {
    let window = config.window.unwrap_or(Window::symmetric(5));
    let pairs_window = config.window.unwrap_or(Window::symmetric(8));
    let mut sources: Vec<ClosedForm<Q>> = Vec::new();
    for p in params_grid() {
        sources.push(ClosedForm::new(Witt, RFamily::Xy(p))?.with_mutation(config.mutation));
    }
    for kind in AlgebraKind::ALL {
        for n in witt_ns(kind) {
            sources.push(ClosedForm::new(kind, RFamily::WittN(n))?.with_mutation(config.mutation));
        }
    }
    let tallies = sources
        .par_iter()
        .map(|s| {
            let mut t = Tally::default();
            let w = window.clip(s.kind().domain());
            let pw = pairs_window.clip(s.kind().domain());
            let label = format!("{} {:?}", s.kind().name(), s.family());
            let jac = jacobi_sweep(s, w)?;
            t.checks += w.len().pow(3);
            t.failures.extend(
                jac.iter()
                    .take(5)
                    .map(|(i, j, l)| format!("{label}: Jacobi fails at ({i},{j},{l})")),
            );
            let anti = antisymmetry_sweep(s, pw)?;
            t.checks += pw.len().pow(2);
            t.failures.extend(
                anti.iter()
                    .take(5)
                    .map(|(i, j)| format!("{label}: antisymmetry fails at ({i},{j})")),
            );
            Ok(t)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(tallies.into_iter().fold(Tally::default(), |mut a, b| {
        a.merge(b);
        a
    }))
}

/// `⟨Δ(εⁿ), x^a ⊗ x^b⟩ = ⟨εⁿ, [x^a, x^b]⟩ = (b − a)δ_{a+b, n+1}`.
fn suite_dual_cobracket(config: &VerifyConfig) -> Result<Tally, Error> {
    let window = config.window.unwrap_or(Window::symmetric(8));
    let mut t = Tally::default();
    for (domain, kind) in [(Domain::Laurent, Witt), (Domain::Poly, OneSidedWitt)] {
        let w = window.clip(domain);
        for n in w.iter() {
            let delta = cobracket_dual::<Q>(n, domain, w)?;
            let en = DualElement::<Q>::epsilon(domain, n)?;
            for a in w.iter() {
                for b in w.iter() {
                    let got = delta.pair(a, b)?;
                    let br = bracket(
                        kind,
                        &LieElement::x_pow(kind, a)?,
                        &LieElement::x_pow(kind, b)?,
                    )?;
                    let expected = en.pair(&br.body)?;
                    let closed = if a + b == n + 1 {
                        Q::from_integer((b - a).into())
                    } else {
                        Q::from_integer(0.into())
                    };
                    t.check(got == expected && got == closed, || {
                        format!("{domain:?} n={n} ({a},{b}): {got} vs {expected}")
                    });
                }
            }
        }
    }
    Ok(t)
}

fn axiom_families(kind: AlgebraKind) -> Vec<RFamily<Q>> {
    let mut out: Vec<RFamily<Q>> = [-2, 0, 2, 3]
        .into_iter()
        .filter(|n| kind.domain().admits(*n))
        .map(RFamily::WittN)
        .collect();
    if kind != OneSidedWitt {
        for (n, ell, k) in [
            (2, (1, 1), (1, 1)),
            (3, (1, 2), (-1, 1)),
            (-1, (3, 1), (2, 1)),
            (0, (-1, 1), (1, 2)),
        ] {
            let p = BialgebraParams::new(
                n,
                Q::new(ell.0.into(), ell.1.into()),
                Q::new(k.0.into(), k.1.into()),
            )
            .expect("valid");
            out.push(RFamily::Xy(p));
        }
    }
    out
}

/// The cocycle condition on pairs and co-Jacobi on basis elements.
fn suite_axioms(config: &VerifyConfig) -> Result<Tally, Error> {
    let window = config.window.unwrap_or(Window::symmetric(6));
    let jobs: Vec<(AlgebraKind, RFamily<Q>)> = AlgebraKind::ALL
        .into_iter()
        .flat_map(|kind| axiom_families(kind).into_iter().map(move |f| (kind, f)))
        .collect();
    let tallies = jobs
        .par_iter()
        .map(|(kind, family)| {
            let kind = *kind;
            let mut t = Tally::default();
            let r = family.r_matrix(kind)?;
            let basis = basis_window::<Q>(kind, window.lo, window.hi);
            for a in &basis {
                t.check(check_cojacobi(kind, &r, a)?, || {
                    format!("{} {family:?}: co-Jacobi fails at {a:?}", kind.name())
                });
                for b in &basis {
                    t.check(check_compatibility(kind, &r, a, b)?, || {
                        format!(
                            "{} {family:?}: cocycle condition fails at {a:?}, {b:?}",
                            kind.name()
                        )
                    });
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(tallies.into_iter().fold(Tally::default(), |mut a, b| {
        a.merge(b);
        a
    }))
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Membership, recurrence inference and decomposition on the reference sequences.
fn suite_dual_core() -> Result<Tally, Error> {
    let mut t = Tally::default();
    let fib = DualElement::recursive(Domain::Poly, vec![q(1), q(1)], 0, vec![q(0), q(1)])?;
    t.check(is_in_restricted_dual(&fib), || {
        "Fibonacci is not in F[x]°".into()
    });
    let values = fib.coefficients(Window::new(0, 11))?;
    t.check(infer_recurrence(&values) == Some(vec![q(1), q(1)]), || {
        "Fibonacci recurrence not recovered".into()
    });
    let e3 = DualElement::<Q>::epsilon(Domain::Laurent, 3)?;
    t.check(!is_in_restricted_dual(&e3), || {
        "finite support accepted in the Laurent restricted dual".into()
    });
    let f = DualElement::recursive(Domain::Laurent, vec![q(7), q(-10)], 0, vec![q(4), q(17)])?;
    match decompose_components(&f)? {
        d @ Decomposition::Components { .. } => {
            let Decomposition::Components {
                components,
                finite_part,
            } = &d
            else {
                unreachable!()
            };
            let shape: Vec<(Q, Vec<Q>)> = components
                .iter()
                .map(|c| (c.root.clone(), c.poly.coeffs().to_vec()))
                .collect();
            t.check(
                shape == vec![(q(2), vec![q(1)]), (q(5), vec![q(3)])] && finite_part.is_empty(),
                || format!("2^n + 3*5^n decomposed as {shape:?}"),
            );
            for n in -8..=8 {
                t.check(d.evaluate(n) == Some(f.coefficient(n)?), || {
                    format!("2^n + 3*5^n does not re-sum at n={n}")
                });
            }
        }
        other => t.check(false, || format!("2^n + 3*5^n gave {other:?}")),
    }
    match decompose_components(&fib)? {
        Decomposition::IrreducibleFactors { factors, .. } => t.check(
            factors.len() == 1
                && factors[0].factor.coeffs() == [q(-1), q(-1), q(1)]
                && factors[0].irreducible,
            || format!("Fibonacci factors {factors:?}"),
        ),
        other => t.check(false, || format!("Fibonacci gave {other:?}")),
    }
    Ok(t)
}

/// Every single-case sign flip must make the table suites fail.
fn suite_mutation(config: &VerifyConfig) -> Result<Tally, Error> {
    let mut t = Tally::default();
    for mutation in Mutation::ALL.into_iter().filter(|m| *m != Mutation::None) {
        let detected = !suite_witt_table(config, mutation, true)?
            .failures
            .is_empty()
            || !suite_xy_table(config, mutation, true)?.failures.is_empty();
        t.check(detected, || format!("mutation {mutation} went undetected"));
    }
    Ok(t)
}
