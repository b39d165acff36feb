//! Dual Lie brackets `[εⁱ, εʲ]` on the restricted duals: the closed-form
//! structure constants for both r-matrix families, the pairing oracle
//! `⟨[εⁱ, εʲ], x^m⟩ = ⟨εⁱ ⊗ εʲ, x^m · r⟩`, and table-level checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bialgebra::{BialgebraParams, RFamily, RMatrix};
use crate::dual::DualElement;
use crate::sparse::accumulate;
use crate::tensor::{act2, BasisLabel};
use crate::{AlgebraKind, Domain, Error, LieElement, Scalar, Window};

/// A finite `ε`-combination, exponent to coefficient.
pub type Finite<S> = BTreeMap<i64, S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
}

/// Deliberate sign flips of single cases in the closed forms, used to show
/// that the oracle comparison is sensitive to them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mutation {
    #[default]
    None,
    WittCase1Sign,
    WittCase2Sign,
    XyCase1Sign,
    XyCase2Sign,
    XyCase3Sign,
    /// Flips the first case of every table.
    Case1Sign,
}

impl Mutation {
    pub const ALL: [Mutation; 7] = [
        Mutation::None,
        Mutation::WittCase1Sign,
        Mutation::WittCase2Sign,
        Mutation::XyCase1Sign,
        Mutation::XyCase2Sign,
        Mutation::XyCase3Sign,
        Mutation::Case1Sign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::WittCase1Sign => "witt-case1-sign",
            Mutation::WittCase2Sign => "witt-case2-sign",
            Mutation::XyCase1Sign => "xy-case1-sign",
            Mutation::XyCase2Sign => "xy-case2-sign",
            Mutation::XyCase3Sign => "xy-case3-sign",
            Mutation::Case1Sign => "case1-sign",
        }
    }

    fn witt_sign<S: Scalar>(self, case: u8) -> S {
        match (self, case) {
            (Mutation::WittCase1Sign | Mutation::Case1Sign, 1) | (Mutation::WittCase2Sign, 2) => {
                -S::one()
            }
            _ => S::one(),
        }
    }

    fn xy_sign<S: Scalar>(self, case: u8) -> S {
        match (self, case) {
            (Mutation::XyCase1Sign | Mutation::Case1Sign, 1)
            | (Mutation::XyCase2Sign, 2)
            | (Mutation::XyCase3Sign, 3) => -S::one(),
            _ => S::one(),
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown mutation `{s}`")))
    }
}

fn term<S: Scalar>(out: &mut Finite<S>, domain: Domain, exponent: i64, coeff: S) {
    if domain.admits(exponent) {
        accumulate(out, exponent, coeff);
    }
}

fn negate<S: Scalar>(f: Finite<S>) -> Finite<S> {
    f.into_iter().map(|(e, c)| (e, -c)).collect()
}

fn check_index(domain: Domain, i: i64) -> Result<(), Error> {
    if domain.admits(i) {
        Ok(())
    } else {
        Err(Error::NegativeExponent(i))
    }
}

/// `⟨εⁱ ⊗ εʲ, x^m · r⟩`, the coefficient of `xⁱ ⊗ xʲ` in `δ(x^m)`.
pub fn dual_bracket_oracle<S: Scalar>(
    kind: AlgebraKind,
    r: &RMatrix<S>,
    i: i64,
    j: i64,
    m: i64,
) -> Result<S, Error> {
    for e in [i, j, m] {
        check_index(kind.domain(), e)?;
    }
    let delta = act2(kind, &LieElement::x_pow(kind, m)?, r.as_tensor())?;
    Ok(delta.coeff([BasisLabel::Exponent(i), BasisLabel::Exponent(j)]))
}

/// The case table for `r = x ⊗ xⁿ − xⁿ ⊗ x`, listed by first index; other
/// pairs come from antisymmetry.
fn witt_case<S: Scalar>(
    kind: AlgebraKind,
    n: i64,
    i: i64,
    j: i64,
    mutation: Mutation,
) -> Option<Finite<S>> {
    let domain = kind.domain();
    let mut out = Finite::new();
    if i == 1 && j != 1 {
        if kind != AlgebraKind::OneSidedWitt || j >= n - 1 {
            term(
                &mut out,
                domain,
                j + 1 - n,
                mutation.witt_sign::<S>(1) * S::from_int(2 * n - j - 1),
            );
        }
        Some(out)
    } else if i == n && j != 1 && j != n {
        term(
            &mut out,
            domain,
            j,
            mutation.witt_sign::<S>(2) * S::from_int(j - 1),
        );
        Some(out)
    } else {
        None
    }
}

/// `[εⁱ, εʲ]` for the family `x ⊗ xⁿ − xⁿ ⊗ x`.
pub fn closed_form_witt<S: Scalar>(
    kind: AlgebraKind,
    n: i64,
    i: i64,
    j: i64,
    mutation: Mutation,
) -> Result<Finite<S>, Error> {
    RFamily::<S>::WittN(n).validate(kind)?;
    check_index(kind.domain(), i)?;
    check_index(kind.domain(), j)?;
    Ok(witt_case(kind, n, i, j, mutation)
        .or_else(|| witt_case(kind, n, j, i, mutation).map(negate))
        .unwrap_or_default())
}

/// The uncased expression
/// `(1−i)δ_{j,n}εⁱ − (1−j)δ_{i,n}εʲ + (2n−j−1)δ_{i,1}ε^{j+1−n} − (2n−i−1)δ_{j,1}ε^{i+1−n}`,
/// with exponents outside the domain dropped.
pub fn master_witt<S: Scalar>(kind: AlgebraKind, n: i64, i: i64, j: i64) -> Finite<S> {
    let domain = kind.domain();
    let mut out = Finite::new();
    if j == n {
        term(&mut out, domain, i, S::from_int(1 - i));
    }
    if i == n {
        term(&mut out, domain, j, -S::from_int(1 - j));
    }
    if i == 1 {
        term(&mut out, domain, j + 1 - n, S::from_int(2 * n - j - 1));
    }
    if j == 1 {
        term(&mut out, domain, i + 1 - n, -S::from_int(2 * n - i - 1));
    }
    out
}

fn xy_case<S: Scalar>(
    p: &BialgebraParams<S>,
    i: i64,
    j: i64,
    mutation: Mutation,
) -> Option<Finite<S>> {
    let n = p.n();
    let (k, ell) = (p.k().clone(), p.ell().clone());
    let nm1 = S::from_int(n - 1);
    let two = S::from_int(2);
    let delta = |a: i64, b: i64| if a == b { S::one() } else { S::zero() };
    let d = Domain::Laurent;
    let mut out = Finite::new();
    if i == 1 && j != 1 {
        let s = mutation.xy_sign::<S>(1);
        term(
            &mut out,
            d,
            j,
            s.clone() * -(k.clone() * (delta(j, n) + delta(j, 2 - n))),
        );
        term(
            &mut out,
            d,
            j + n - 1,
            s.clone()
                * -(k.clone() * S::from_int(j + 2 * n - 3)
                    / (two.clone() * nm1.clone() * nm1.clone() * ell.clone())),
        );
        term(
            &mut out,
            d,
            j - n + 1,
            s * -(k * ell * S::from_int(2 * n - j - 1) / two),
        );
        Some(out)
    } else if i == 2 - n && j != 1 && j != 2 - n {
        let s = mutation.xy_sign::<S>(2);
        term(
            &mut out,
            d,
            1,
            s.clone() * -(k.clone() * delta(j, n) / two.clone()),
        );
        term(
            &mut out,
            d,
            2 - n,
            s.clone() * -(k.clone() * ell.clone() * nm1.clone() * delta(j, n) / two.clone()),
        );
        term(
            &mut out,
            d,
            j,
            s.clone() * k.clone() * S::from_int(j - 1)
                / (two.clone() * nm1.clone() * nm1.clone() * ell),
        );
        term(
            &mut out,
            d,
            j - n + 1,
            s * k * S::from_int(2 * n - j - 1) / (two * nm1),
        );
        Some(out)
    } else if i == n && j != 1 && j != 2 - n && j != n {
        let s = mutation.xy_sign::<S>(3);
        term(
            &mut out,
            d,
            j + n - 1,
            s.clone() * k.clone() * S::from_int(j + 2 * n - 3) / (two.clone() * nm1),
        );
        term(&mut out, d, j, s * k * ell * S::from_int(1 - j) / two);
        Some(out)
    } else {
        None
    }
}

/// `[εⁱ, εʲ]` for the family `X ⊗ Y − Y ⊗ X`.
pub fn closed_form_xy<S: Scalar>(
    kind: AlgebraKind,
    p: &BialgebraParams<S>,
    i: i64,
    j: i64,
    mutation: Mutation,
) -> Result<Finite<S>, Error> {
    RFamily::Xy(p.clone()).validate(kind)?;
    Ok(xy_case(p, i, j, mutation)
        .or_else(|| xy_case(p, j, i, mutation).map(negate))
        .unwrap_or_default())
}

/// The half `A_ij` of the pairing expansion, with `⟨[εⁱ, εʲ], x^m⟩ = A_ij(m) − A_ji(m)`.
pub fn xy_half<S: Scalar>(p: &BialgebraParams<S>, i: i64, j: i64) -> Finite<S> {
    let n = p.n();
    let (ell0, ell, k0, k, k1) = (p.ell0(), p.ell().clone(), p.k0(), p.k().clone(), p.k1());
    let delta = |a: i64, b: i64| if a == b { S::one() } else { S::zero() };
    let d = Domain::Laurent;
    let mut out = Finite::new();
    let y_weight =
        k0.clone() * delta(j, 2 - n) + k.clone() * delta(j, 1) + k1.clone() * delta(j, n);
    let x_weight = ell0.clone() * delta(j, 1) + ell.clone() * delta(j, n);
    term(&mut out, d, i, y_weight.clone() * ell0 * S::from_int(1 - i));
    term(
        &mut out,
        d,
        i - n + 1,
        y_weight * ell * S::from_int(2 * n - i - 1),
    );
    term(
        &mut out,
        d,
        i + n - 1,
        -(x_weight.clone() * k0 * S::from_int(3 - i - 2 * n)),
    );
    term(&mut out, d, i, -(x_weight.clone() * k * S::from_int(1 - i)));
    term(
        &mut out,
        d,
        i - n + 1,
        -(x_weight * k1 * S::from_int(2 * n - i - 1)),
    );
    out
}

/// A closed-form bracket source: a kind, an r-matrix family and an optional mutation.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm<S> {
    kind: AlgebraKind,
    family: RFamily<S>,
    mutation: Mutation,
}

impl<S: Scalar> ClosedForm<S> {
    pub fn new(kind: AlgebraKind, family: RFamily<S>) -> Result<Self, Error> {
        family.validate(kind)?;
        Ok(ClosedForm {
            kind,
            family,
            mutation: Mutation::None,
        })
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn family(&self) -> &RFamily<S> {
        &self.family
    }

    pub fn bracket(&self, i: i64, j: i64) -> Result<Finite<S>, Error> {
        match &self.family {
            RFamily::WittN(n) => closed_form_witt(self.kind, *n, i, j, self.mutation),
            RFamily::Xy(p) => closed_form_xy(self.kind, p, i, j, self.mutation),
        }
    }

    /// Bilinear extension to finite combinations.
    pub fn bracket_finite(&self, a: &Finite<S>, b: &Finite<S>) -> Result<Finite<S>, Error> {
        let mut out = Finite::new();
        for (i, ca) in a {
            for (j, cb) in b {
                let w = ca.clone() * cb.clone();
                for (e, c) in self.bracket(*i, *j)? {
                    accumulate(&mut out, e, w.clone() * c);
                }
            }
        }
        Ok(out)
    }
}

/// Brackets with memoized structure constants, for repeated nested expansion.
struct Memo<'a, S> {
    source: &'a ClosedForm<S>,
    cache: HashMap<(i64, i64), Finite<S>>,
}

impl<'a, S: Scalar> Memo<'a, S> {
    fn new(source: &'a ClosedForm<S>) -> Self {
        Memo {
            source,
            cache: HashMap::new(),
        }
    }

    fn bracket(&mut self, i: i64, j: i64) -> Result<Finite<S>, Error> {
        if let Some(v) = self.cache.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = self.source.bracket(i, j)?;
        self.cache.insert((i, j), v.clone());
        Ok(v)
    }

    /// `[a, εˡ]` for a finite combination `a`.
    fn bracket_left(&mut self, a: &Finite<S>, l: i64) -> Result<Finite<S>, Error> {
        let mut out = Finite::new();
        for (i, ca) in a {
            for (e, c) in self.bracket(*i, l)? {
                accumulate(&mut out, e, ca.clone() * c);
            }
        }
        Ok(out)
    }

    fn jacobiator(&mut self, i: i64, j: i64, l: i64) -> Result<Finite<S>, Error> {
        let mut out = Finite::new();
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            let inner = self.bracket(a, b)?;
            for (e, v) in self.bracket_left(&inner, c)? {
                accumulate(&mut out, e, v);
            }
        }
        Ok(out)
    }
}

/// `[[εⁱ,εʲ],εˡ] + [[εʲ,εˡ],εⁱ] + [[εˡ,εⁱ],εʲ] = 0`.
pub fn jacobi_check<S: Scalar>(
    source: &ClosedForm<S>,
    i: i64,
    j: i64,
    l: i64,
) -> Result<bool, Error> {
    Ok(Memo::new(source).jacobiator(i, j, l)?.is_empty())
}

/// `[εⁱ, εʲ] = −[εʲ, εⁱ]`.
pub fn antisymmetry_check<S: Scalar>(
    source: &ClosedForm<S>,
    i: i64,
    j: i64,
) -> Result<bool, Error> {
    Ok(source.bracket(i, j)? == negate(source.bracket(j, i)?))
}

/// Triples in `window³` violating Jacobi.
pub fn jacobi_sweep<S: Scalar>(
    source: &ClosedForm<S>,
    window: Window,
) -> Result<Vec<(i64, i64, i64)>, Error> {
    let w = window.clip(source.kind.domain());
    let mut memo = Memo::new(source);
    let mut failures = Vec::new();
    for i in w.iter() {
        for j in w.iter() {
            for l in w.iter() {
                if !memo.jacobiator(i, j, l)?.is_empty() {
                    failures.push((i, j, l));
                }
            }
        }
    }
    Ok(failures)
}

/// Pairs in `window²` violating antisymmetry.
pub fn antisymmetry_sweep<S: Scalar>(
    source: &ClosedForm<S>,
    window: Window,
) -> Result<Vec<(i64, i64)>, Error> {
    let w = window.clip(source.kind.domain());
    let mut memo = Memo::new(source);
    let mut failures = Vec::new();
    for i in w.iter() {
        for j in w.iter() {
            if memo.bracket(i, j)? != negate(memo.bracket(j, i)?) {
                failures.push((i, j));
            }
        }
    }
    Ok(failures)
}

/// Structure constants over a window.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable<S> {
    pub kind: AlgebraKind,
    pub params: RFamily<S>,
    pub window: Window,
    pub entries: BTreeMap<(i64, i64), DualElement<S>>,
    pub provenance: Provenance,
}

impl<S: Scalar> BracketTable<S> {
    /// The entry at `(i, j)` as a finite combination; `None` outside the window.
    pub fn get(&self, i: i64, j: i64) -> Option<&Finite<S>> {
        self.entries.get(&(i, j)).and_then(|e| e.finite_coeffs())
    }
}

fn pairs(window: Window) -> Vec<(i64, i64)> {
    window
        .iter()
        .flat_map(|i| window.iter().map(move |j| (i, j)))
        .collect()
}

/// The closed-form table on `window²` (clipped to the kind's domain).
pub fn build_table<S: Scalar>(
    source: &ClosedForm<S>,
    window: Window,
) -> Result<BracketTable<S>, Error> {
    let domain = source.kind.domain();
    let window = window.clip(domain);
    let entries = pairs(window)
        .into_par_iter()
        .map(|(i, j)| Ok(((i, j), DualElement::finite(domain, source.bracket(i, j)?)?)))
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    Ok(BracketTable {
        kind: source.kind,
        params: source.family.clone(),
        window,
        entries,
        provenance: Provenance::ClosedForm,
    })
}

/// The exponents `m` the oracle sweeps for a table on `window`: enough to
/// cover every exponent a closed-form entry can reach.
pub fn oracle_sweep(kind: AlgebraKind, n: i64, window: Window) -> Window {
    let shift = n.abs() + 1;
    Window::new(2 * window.lo - 2, 2 * window.hi + 2)
        .hull(&Window::new(window.lo - shift - 2, window.hi + shift + 2))
        .clip(kind.domain())
}

/// All oracle values `⟨[εⁱ, εʲ], x^m⟩` for `(i, j) ∈ window²`, `m ∈ sweep`,
/// read off one cobracket `δ(x^m)` per `m`.
pub fn oracle_values<S: Scalar>(
    kind: AlgebraKind,
    r: &RMatrix<S>,
    window: Window,
    sweep: Window,
) -> Result<BTreeMap<(i64, i64), Finite<S>>, Error> {
    let cobrackets = sweep
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| Ok((m, act2(kind, &LieElement::x_pow(kind, m)?, r.as_tensor())?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut out: BTreeMap<(i64, i64), Finite<S>> = BTreeMap::new();
    for (m, delta) in cobrackets {
        for (labels, c) in delta.terms() {
            if let [BasisLabel::Exponent(i), BasisLabel::Exponent(j)] = *labels {
                if window.contains(i) && window.contains(j) {
                    accumulate(out.entry((i, j)).or_default(), m, c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// The same table computed only from the pairing oracle.
pub fn build_oracle_table<S: Scalar>(
    kind: AlgebraKind,
    family: &RFamily<S>,
    window: Window,
) -> Result<BracketTable<S>, Error> {
    let domain = kind.domain();
    let window = window.clip(domain);
    let r = family.r_matrix(kind)?;
    let mut values = oracle_values(kind, &r, window, oracle_sweep(kind, family.n(), window))?;
    let entries = pairs(window)
        .into_iter()
        .map(|ij| {
            Ok((
                ij,
                DualElement::finite(domain, values.remove(&ij).unwrap_or_default())?,
            ))
        })
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    Ok(BracketTable {
        kind,
        params: family.clone(),
        window,
        entries,
        provenance: Provenance::Oracle,
    })
}

/// A disagreement between the closed form and the oracle at `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<S> {
    pub i: i64,
    pub j: i64,
    pub closed_form: Finite<S>,
    pub oracle: Finite<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck<S> {
    pub pairs: usize,
    pub max_support: usize,
    pub mismatches: Vec<Mismatch<S>>,
}

/// Compares the closed form with the oracle on `window²`. Closed-form
/// support outside the sweep is evaluated by the oracle directly.
pub fn cross_check<S: Scalar>(
    source: &ClosedForm<S>,
    window: Window,
) -> Result<CrossCheck<S>, Error> {
    let sweep = oracle_sweep(
        source.kind,
        source.family.n(),
        window.clip(source.kind.domain()),
    );
    cross_check_with_sweep(source, window, sweep)
}

/// [`cross_check`] with an explicit oracle sweep for `m`.
pub fn cross_check_with_sweep<S: Scalar>(
    source: &ClosedForm<S>,
    window: Window,
    sweep: Window,
) -> Result<CrossCheck<S>, Error> {
    let kind = source.kind;
    let window = window.clip(kind.domain());
    let sweep = sweep.clip(kind.domain());
    let r = source.family.r_matrix(kind)?;
    let oracle = oracle_values(kind, &r, window, sweep)?;
    let results = pairs(window)
        .into_par_iter()
        .map(|(i, j)| {
            let closed = source.bracket(i, j)?;
            let mut expected = oracle.get(&(i, j)).cloned().unwrap_or_default();
            for &m in closed.keys().filter(|m| !sweep.contains(**m)) {
                accumulate(&mut expected, m, dual_bracket_oracle(kind, &r, i, j, m)?);
            }
            let support = closed.len();
            let mismatch = (closed != expected).then(|| Mismatch {
                i,
                j,
                closed_form: closed,
                oracle: expected,
            });
            Ok((support, mismatch))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(CrossCheck {
        pairs: results.len(),
        max_support: results.iter().map(|(s, _)| *s).max().unwrap_or(0),
        mismatches: results.into_iter().filter_map(|(_, m)| m).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use AlgebraKind::{OneSidedWitt, Virasoro, Witt};

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn fin(terms: &[(i64, Q)]) -> Finite<Q> {
        terms.iter().cloned().collect()
    }

    fn params(n: i64, ell: i64, k: i64) -> BialgebraParams<Q> {
        BialgebraParams::new(n, Q::from_int(ell), Q::from_int(k)).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let r = RFamily::<Q>::WittN(2).r_matrix(Witt).unwrap();
        assert_eq!(
            dual_bracket_oracle(Witt, &r, 1, 0, -1).unwrap(),
            Q::from_int(3)
        );
        assert_eq!(
            dual_bracket_oracle(Witt, &r, 0, 1, -1).unwrap(),
            Q::from_int(-3)
        );
        for m in -20..=20 {
            assert_eq!(
                dual_bracket_oracle(Witt, &r, 5, 7, m).unwrap(),
                Q::from_int(0)
            );
        }
        let r = RFamily::<Q>::WittN(2).r_matrix(OneSidedWitt).unwrap();
        assert!(dual_bracket_oracle(OneSidedWitt, &r, 1, -1, 0).is_err());
    }

    #[test]
    fn witt_examples() {
        assert_eq!(
            closed_form_witt::<Q>(Witt, 3, 1, 2, Mutation::None).unwrap(),
            fin(&[(0, q(3, 1))])
        );
        assert_eq!(
            closed_form_witt::<Q>(OneSidedWitt, 2, 1, 0, Mutation::None).unwrap(),
            fin(&[])
        );
        assert_eq!(
            closed_form_witt::<Q>(Witt, 2, 2, 5, Mutation::None).unwrap(),
            fin(&[(5, q(4, 1))])
        );
        assert_eq!(
            closed_form_witt::<Q>(Witt, 2, 1, 2, Mutation::None).unwrap(),
            fin(&[(1, q(1, 1))])
        );
        assert!(closed_form_witt::<Q>(Witt, 1, 1, 2, Mutation::None).is_err());
    }

    #[test]
    fn case_tables_agree_with_master_expression() {
        for kind in [OneSidedWitt, Witt] {
            let w = Window::symmetric(8).clip(kind.domain());
            for n in [-3, -2, -1, 0, 2, 3, 4, 5]
                .into_iter()
                .filter(|n| kind.domain().admits(*n))
            {
                for i in w.iter() {
                    for j in w.iter() {
                        assert_eq!(
                            closed_form_witt::<Q>(kind, n, i, j, Mutation::None).unwrap(),
                            master_witt::<Q>(kind, n, i, j),
                            "{kind:?} n={n} ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn xy_examples() {
        let p = params(2, 1, 1);
        assert_eq!(
            closed_form_xy(Witt, &p, 1, 0, Mutation::None).unwrap(),
            fin(&[(-1, q(-3, 2)), (0, q(-1, 1)), (1, q(-1, 2))])
        );
        assert_eq!(
            closed_form_xy(Witt, &p, 2, 3, Mutation::None).unwrap(),
            fin(&[(3, q(-1, 1)), (4, q(2, 1))])
        );
        assert_eq!(
            closed_form_xy(Witt, &p, 3, 4, Mutation::None).unwrap(),
            fin(&[])
        );
        assert!(closed_form_xy(OneSidedWitt, &p, 1, 0, Mutation::None).is_err());
    }

    #[test]
    fn tables_match_oracle() {
        let families: Vec<(AlgebraKind, RFamily<Q>)> = vec![
            (Witt, RFamily::WittN(2)),
            (Virasoro, RFamily::WittN(-1)),
            (OneSidedWitt, RFamily::WittN(3)),
            (Witt, RFamily::Xy(params(2, 1, 1))),
            (
                Virasoro,
                RFamily::Xy(BialgebraParams::new(3, q(1, 2), q(-1, 1)).unwrap()),
            ),
            (Witt, RFamily::Xy(params(0, 3, 1))),
        ];
        for (kind, family) in families {
            let source = ClosedForm::new(kind, family.clone()).unwrap();
            let report = cross_check(&source, Window::symmetric(5)).unwrap();
            assert!(
                report.mismatches.is_empty(),
                "{kind:?} {family:?}: {:?}",
                report.mismatches
            );
            assert!(report.max_support <= 4);
            let closed = build_table(&source, Window::symmetric(3)).unwrap();
            let oracle = build_oracle_table(kind, &family, Window::symmetric(3)).unwrap();
            assert_eq!(closed.entries, oracle.entries);
        }
    }

    #[test]
    fn xy_half_decomposition() {
        for (n, ell, k) in [(2, 1, 1), (3, 1, 2), (-2, -1, 3), (0, 1, -1)] {
            let p = params(n, ell, k);
            let r = RFamily::Xy(p.clone()).r_matrix(Witt).unwrap();
            let w = Window::symmetric(5);
            let oracle = oracle_values(Witt, &r, w, oracle_sweep(Witt, n, w)).unwrap();
            for i in w.iter() {
                for j in w.iter() {
                    let mut diff = xy_half(&p, i, j);
                    for (e, c) in xy_half(&p, j, i) {
                        accumulate(&mut diff, e, -c);
                    }
                    assert_eq!(
                        diff,
                        oracle.get(&(i, j)).cloned().unwrap_or_default(),
                        "n={n} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn table_shape() {
        let source = ClosedForm::<Q>::new(Witt, RFamily::WittN(2)).unwrap();
        let t = build_table(&source, Window::new(-3, 3)).unwrap();
        assert_eq!(t.entries.len(), 49);
        assert!(build_table(&source, Window::new(1, 0))
            .unwrap()
            .entries
            .is_empty());
        let one_sided = ClosedForm::<Q>::new(OneSidedWitt, RFamily::WittN(2)).unwrap();
        let t = build_table(&one_sided, Window::new(0, 3)).unwrap();
        assert!(t.get(1, 0).unwrap().is_empty());
    }

    #[test]
    fn jacobi_and_antisymmetry() {
        let s = ClosedForm::new(Witt, RFamily::Xy(params(2, 1, 1))).unwrap();
        assert!(jacobi_check(&s, 1, 2, 3).unwrap());
        assert!(jacobi_check(&s, 4, 4, -1).unwrap());
        assert!(antisymmetry_check(&s, 1, 0).unwrap());
        assert!(s.bracket(3, 3).unwrap().is_empty());
        let s = ClosedForm::new(Witt, RFamily::Xy(params(3, 1, 2))).unwrap();
        assert!(jacobi_sweep(&s, Window::symmetric(5)).unwrap().is_empty());
        assert!(antisymmetry_sweep(&s, Window::symmetric(6))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn mutations_are_detected() {
        for (mutation, kind, family) in [
            (Mutation::WittCase1Sign, Witt, RFamily::WittN(2)),
            (Mutation::WittCase2Sign, OneSidedWitt, RFamily::WittN(2)),
            (Mutation::XyCase1Sign, Witt, RFamily::Xy(params(2, 1, 1))),
            (Mutation::XyCase2Sign, Witt, RFamily::Xy(params(2, 1, 1))),
            (Mutation::XyCase3Sign, Witt, RFamily::Xy(params(2, 1, 1))),
            (Mutation::Case1Sign, Virasoro, RFamily::WittN(3)),
        ] {
            let s = ClosedForm::<Q>::new(kind, family)
                .unwrap()
                .with_mutation(mutation);
            assert!(
                !cross_check(&s, Window::symmetric(4))
                    .unwrap()
                    .mismatches
                    .is_empty(),
                "{mutation}"
            );
        }
        assert_eq!(
            "case1-sign".parse::<Mutation>().unwrap(),
            Mutation::Case1Sign
        );
        assert!("nope".parse::<Mutation>().is_err());
    }
}
