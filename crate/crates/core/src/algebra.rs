//! Laurent polynomials, the derivation `d/dx`, and the Witt-type brackets.
//!
//! Basis monomials are keyed by their Laurent exponent for all three
//! algebras. For the Virasoro algebra the monomial `x^e` is the generator
//! usually written `x^{m+1}` with `m = e - 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::sparse::{accumulate, scale_map};
use crate::tensor::BasisLabel;
use crate::{Error, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// `F[x]`: exponents `>= 0`.
    Poly,
    /// `F[x, x^-1]`: any integer exponent.
    Laurent,
}

impl Domain {
    pub fn admits(self, exponent: i64) -> bool {
        match self {
            Domain::Poly => exponent >= 0,
            Domain::Laurent => true,
        }
    }

    pub(crate) fn check(self, exponent: i64) -> Result<(), Error> {
        if self.admits(exponent) {
            Ok(())
        } else {
            Err(Error::NegativeExponent(exponent))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraKind {
    OneSidedWitt,
    Witt,
    Virasoro,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 3] = [
        AlgebraKind::OneSidedWitt,
        AlgebraKind::Witt,
        AlgebraKind::Virasoro,
    ];

    pub fn domain(self) -> Domain {
        match self {
            AlgebraKind::OneSidedWitt => Domain::Poly,
            AlgebraKind::Witt | AlgebraKind::Virasoro => Domain::Laurent,
        }
    }

    pub fn has_center(self) -> bool {
        self == AlgebraKind::Virasoro
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::OneSidedWitt => "one-sided-witt",
            AlgebraKind::Witt => "witt",
            AlgebraKind::Virasoro => "virasoro",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Whether `label` is a basis element of this algebra.
    pub fn admits(self, label: BasisLabel) -> bool {
        match label {
            BasisLabel::Exponent(e) => self.domain().admits(e),
            BasisLabel::Central => self.has_center(),
        }
    }

    pub(crate) fn check_label(self, label: BasisLabel) -> Result<(), Error> {
        if self.admits(label) {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                kind: self,
                reason: format!("basis label {label} not in algebra"),
            })
        }
    }
}

/// Bracket of two basis labels: returns the coefficient of `x^{i+j-1}` and
/// the coefficient of the central element.
pub(crate) fn basis_bracket<S: Scalar>(
    kind: AlgebraKind,
    a: BasisLabel,
    b: BasisLabel,
) -> Option<(i64, S, S)> {
    let (i, j) = match (a, b) {
        (BasisLabel::Exponent(i), BasisLabel::Exponent(j)) => (i, j),
        _ => return None,
    };
    let body = S::from_int(j - i);
    let central = if kind == AlgebraKind::Virasoro {
        virasoro_cocycle(i - 1, j - 1)
    } else {
        S::zero()
    };
    if body.is_zero() && central.is_zero() {
        return None;
    }
    Some((i + j - 1, body, central))
}

/// `(m^3 - m)/12 · δ_{m+n,0}`.
pub(crate) fn virasoro_cocycle<S: Scalar>(m: i64, n: i64) -> S {
    if m + n != 0 {
        return S::zero();
    }
    S::from_int(m * m * m - m) / S::from_int(12)
}

/// A finite sum `Σ g_j x^j` in `F[x]` or `F[x, x^-1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentElement<S> {
    domain: Domain,
    coeffs: BTreeMap<i64, S>,
}

impl<S: Scalar> LaurentElement<S> {
    pub fn zero(domain: Domain) -> Self {
        LaurentElement {
            domain,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(domain: Domain, exponent: i64, coeff: S) -> Result<Self, Error> {
        Self::from_terms(domain, [(exponent, coeff)])
    }

    /// `x^exponent`.
    pub fn x_pow(domain: Domain, exponent: i64) -> Result<Self, Error> {
        Self::monomial(domain, exponent, S::one())
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms(
        domain: Domain,
        terms: impl IntoIterator<Item = (i64, S)>,
    ) -> Result<Self, Error> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            domain.check(e)?;
            accumulate(&mut coeffs, e, c);
        }
        Ok(LaurentElement { domain, coeffs })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, S> {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: i64) -> S {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn same_domain(&self, other: &Self) -> Result<(), Error> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.domain,
                right: other.domain,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.same_domain(other)?;
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            accumulate(&mut coeffs, *e, c.clone());
        }
        Ok(LaurentElement {
            domain: self.domain,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &S) -> Self {
        LaurentElement {
            domain: self.domain,
            coeffs: scale_map(&self.coeffs, factor),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Cauchy product.
    pub fn multiply(&self, other: &Self) -> Result<Self, Error> {
        self.same_domain(other)?;
        let mut coeffs = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                accumulate(&mut coeffs, i + j, a.clone() * b.clone());
            }
        }
        Ok(LaurentElement {
            domain: self.domain,
            coeffs,
        })
    }

    /// `d/dx`. Constants vanish, so the polynomial domain is preserved.
    pub fn derive(&self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            accumulate(&mut coeffs, e - 1, c.clone() * S::from_int(*e));
        }
        LaurentElement {
            domain: self.domain,
            coeffs,
        }
    }

    /// Reinterpret in another domain, failing if an exponent is not admitted.
    pub fn with_domain(&self, domain: Domain) -> Result<Self, Error> {
        Self::from_terms(domain, self.coeffs.clone())
    }
}

/// An element of the one-sided Witt, Witt or Virasoro algebra.
///
/// `central` is the coefficient of the central element `c` and stays zero
/// outside the Virasoro algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement<S> {
    pub body: LaurentElement<S>,
    pub central: S,
}

impl<S: Scalar> LieElement<S> {
    pub fn new(body: LaurentElement<S>, central: S) -> Self {
        LieElement { body, central }
    }

    pub fn zero(kind: AlgebraKind) -> Self {
        Self::new(LaurentElement::zero(kind.domain()), S::zero())
    }

    pub fn from_body(body: LaurentElement<S>) -> Self {
        Self::new(body, S::zero())
    }

    /// The basis monomial `x^exponent` of `kind`.
    pub fn x_pow(kind: AlgebraKind, exponent: i64) -> Result<Self, Error> {
        Ok(Self::from_body(LaurentElement::x_pow(
            kind.domain(),
            exponent,
        )?))
    }

    /// `Σ c_e x^e` in `kind`.
    pub fn from_terms(
        kind: AlgebraKind,
        terms: impl IntoIterator<Item = (i64, S)>,
    ) -> Result<Self, Error> {
        Ok(Self::from_body(LaurentElement::from_terms(
            kind.domain(),
            terms,
        )?))
    }

    /// The central element `c` of the Virasoro algebra.
    pub fn central_unit() -> Self {
        Self::new(LaurentElement::zero(Domain::Laurent), S::one())
    }

    /// The basis element named by `label`, scaled by `coeff`.
    pub fn from_label(kind: AlgebraKind, label: BasisLabel, coeff: S) -> Result<Self, Error> {
        kind.check_label(label)?;
        Ok(match label {
            BasisLabel::Exponent(e) => {
                Self::from_body(LaurentElement::monomial(kind.domain(), e, coeff)?)
            }
            BasisLabel::Central => Self::new(LaurentElement::zero(kind.domain()), coeff),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.central.is_zero()
    }

    /// Nonzero coordinates in the basis `{x^e} ∪ {c}`.
    pub fn terms(&self) -> impl Iterator<Item = (BasisLabel, &S)> + '_ {
        let central = (!self.central.is_zero()).then_some((BasisLabel::Central, &self.central));
        self.body
            .terms()
            .map(|(e, c)| (BasisLabel::Exponent(e), c))
            .chain(central)
    }

    pub fn coeff(&self, label: BasisLabel) -> S {
        match label {
            BasisLabel::Exponent(e) => self.body.coeff(e),
            BasisLabel::Central => self.central.clone(),
        }
    }

    pub fn conforms(&self, kind: AlgebraKind) -> Result<(), Error> {
        if self.body.domain() != kind.domain() {
            return Err(Error::KindMismatch {
                kind,
                reason: format!("element lives in the {:?} domain", self.body.domain()),
            });
        }
        if !kind.has_center() && !self.central.is_zero() {
            return Err(Error::KindMismatch {
                kind,
                reason: "nonzero central coefficient".into(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        Ok(Self::new(
            self.body.add(&other.body)?,
            self.central.clone() + other.central.clone(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(
            self.body.scale(factor),
            self.central.clone() * factor.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }
}

/// The Lie bracket of `kind`.
///
/// One-sided Witt and Witt use `[a, b] = a·∂b − ∂a·b`. Virasoro extends the
/// monomial rule `[x^{m+1}, x^{n+1}] = (n−m)x^{m+n+1} + (m³−m)/12·δ_{m+n,0}·c`
/// bilinearly; `c` brackets to zero with everything.
pub fn bracket<S: Scalar>(
    kind: AlgebraKind,
    a: &LieElement<S>,
    b: &LieElement<S>,
) -> Result<LieElement<S>, Error> {
    a.conforms(kind)?;
    b.conforms(kind)?;
    match kind {
        AlgebraKind::OneSidedWitt | AlgebraKind::Witt => {
            let left = a.body.multiply(&b.body.derive())?;
            let right = a.body.derive().multiply(&b.body)?;
            Ok(LieElement::from_body(left.sub(&right)?))
        }
        AlgebraKind::Virasoro => {
            let mut body = BTreeMap::new();
            let mut central = S::zero();
            for (i, ca) in a.body.terms() {
                for (j, cb) in b.body.terms() {
                    let m = i - 1;
                    let n = j - 1;
                    let weight = ca.clone() * cb.clone();
                    accumulate(&mut body, m + n + 1, S::from_int(n - m) * weight.clone());
                    central = central + virasoro_cocycle::<S>(m, n) * weight;
                }
            }
            let body = LaurentElement {
                domain: Domain::Laurent,
                coeffs: body,
            };
            Ok(LieElement::new(body, central))
        }
    }
}
