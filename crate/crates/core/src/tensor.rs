//! Sparse tensors over the Lie algebra basis, the diagonal action
//! `x · (y ⊗ z) = [x, y] ⊗ z + y ⊗ [x, z]`, and the classical Yang–Baxter
//! residual.
//!
//! The residual is computed inside `L ⊗ L ⊗ L`: for `r ∈ L ⊗ L` each of the
//! three commutators lands there, so no enveloping algebra is needed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{basis_bracket, AlgebraKind, LieElement};
use crate::sparse::{accumulate, scale_map};
use crate::{Error, Scalar};

/// A basis vector: the monomial `x^e` or the central element `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Exponent(i64),
    Central,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Exponent(e) => write!(f, "{e}"),
            BasisLabel::Central => f.write_str("c"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "c" {
            return Ok(BasisLabel::Central);
        }
        s.replace('\u{2212}', "-")
            .parse::<i64>()
            .map(BasisLabel::Exponent)
            .map_err(|_| Error::Parse(format!("bad basis label {s:?}")))
    }
}

/// `[a, b]` for basis labels, as a list of (label, coefficient).
pub(crate) fn label_bracket<S: Scalar>(
    kind: AlgebraKind,
    a: BasisLabel,
    b: BasisLabel,
) -> Vec<(BasisLabel, S)> {
    let mut out = Vec::with_capacity(2);
    if let Some((e, body, central)) = basis_bracket::<S>(kind, a, b) {
        if !body.is_zero() {
            out.push((BasisLabel::Exponent(e), body));
        }
        if !central.is_zero() {
            out.push((BasisLabel::Central, central));
        }
    }
    out
}

/// A sparse element of `L^{⊗N}` in the monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S, const N: usize> {
    kind: AlgebraKind,
    terms: BTreeMap<[BasisLabel; N], S>,
}

impl<S, const N: usize> AsRef<Tensor<S, N>> for Tensor<S, N> {
    fn as_ref(&self) -> &Tensor<S, N> {
        self
    }
}

pub type Tensor2<S> = Tensor<S, 2>;
pub type Tensor3<S> = Tensor<S, 3>;

impl<S: Scalar, const N: usize> Tensor<S, N> {
    pub fn zero(kind: AlgebraKind) -> Self {
        Tensor {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        kind: AlgebraKind,
        terms: impl IntoIterator<Item = ([BasisLabel; N], S)>,
    ) -> Result<Self, Error> {
        let mut out = Self::zero(kind);
        for (labels, c) in terms {
            for l in labels {
                kind.check_label(l)?;
            }
            accumulate(&mut out.terms, labels, c);
        }
        Ok(out)
    }

    /// Shorthand for monomial tensors: `[(coeff, [e1, e2, ..])]`.
    pub fn from_exponents(
        kind: AlgebraKind,
        terms: impl IntoIterator<Item = (S, [i64; N])>,
    ) -> Result<Self, Error> {
        Self::from_terms(
            kind,
            terms
                .into_iter()
                .map(|(c, es)| (es.map(BasisLabel::Exponent), c)),
        )
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<[BasisLabel; N], S> {
        &self.terms
    }

    pub fn coeff(&self, labels: [BasisLabel; N]) -> S {
        self.terms.get(&labels).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_kind(&self, other: &Self) -> Result<(), Error> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                kind: self.kind,
                reason: format!("tensor of kind {:?}", other.kind),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            accumulate(&mut out.terms, *k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Tensor {
            kind: self.kind,
            terms: scale_map(&self.terms, factor),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Cyclic rotation of tensor factors: `t1 ⊗ t2 ⊗ … ⊗ tN ↦ tN ⊗ t1 ⊗ … ⊗ t(N-1)`.
    pub fn rotate(&self) -> Self {
        let mut out = Self::zero(self.kind);
        for (labels, c) in &self.terms {
            let mut rotated = *labels;
            rotated.rotate_right(1);
            out.terms.insert(rotated, c.clone());
        }
        out
    }

    pub(crate) fn push(&mut self, labels: [BasisLabel; N], coeff: S) {
        accumulate(&mut self.terms, labels, coeff);
    }
}

impl<S: Scalar> Tensor2<S> {
    /// `a ⊗ b`.
    pub fn simple(kind: AlgebraKind, a: &LieElement<S>, b: &LieElement<S>) -> Result<Self, Error> {
        a.conforms(kind)?;
        b.conforms(kind)?;
        let mut out = Self::zero(kind);
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                out.push([la, lb], ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }
}

/// Exchange the two tensor factors.
pub fn swap<S: Scalar>(t: &Tensor2<S>) -> Tensor2<S> {
    t.rotate()
}

/// `x · t`, the Leibniz extension of the adjoint action to every factor.
pub fn act<S: Scalar, const N: usize>(
    kind: AlgebraKind,
    x: &LieElement<S>,
    t: &Tensor<S, N>,
) -> Result<Tensor<S, N>, Error> {
    x.conforms(kind)?;
    if t.kind != kind {
        return Err(Error::KindMismatch {
            kind,
            reason: format!("tensor of kind {:?}", t.kind),
        });
    }
    let mut out = Tensor::zero(kind);
    for (lx, cx) in x.terms() {
        for (labels, c) in &t.terms {
            let weight = cx.clone() * c.clone();
            for slot in 0..N {
                for (l, b) in label_bracket::<S>(kind, lx, labels[slot]) {
                    let mut new_labels = *labels;
                    new_labels[slot] = l;
                    out.push(new_labels, weight.clone() * b);
                }
            }
        }
    }
    Ok(out)
}

pub fn act2<S: Scalar>(
    kind: AlgebraKind,
    x: &LieElement<S>,
    t: &Tensor2<S>,
) -> Result<Tensor2<S>, Error> {
    act(kind, x, t)
}

pub fn act3<S: Scalar>(
    kind: AlgebraKind,
    x: &LieElement<S>,
    t: &Tensor3<S>,
) -> Result<Tensor3<S>, Error> {
    act(kind, x, t)
}

/// `C(r) = [r12, r13] + [r12, r23] + [r13, r23]`; zero iff `r` solves the CYBE.
pub fn cybe<S: Scalar>(kind: AlgebraKind, r: &Tensor2<S>) -> Result<Tensor3<S>, Error> {
    if r.kind != kind {
        return Err(Error::KindMismatch {
            kind,
            reason: format!("tensor of kind {:?}", r.kind),
        });
    }
    let mut out = Tensor3::zero(kind);
    for ([a, b], c1) in &r.terms {
        for ([c, d], c2) in &r.terms {
            let w = c1.clone() * c2.clone();
            // [r12, r13]
            for (l, v) in label_bracket::<S>(kind, *a, *c) {
                out.push([l, *b, *d], w.clone() * v);
            }
            // [r12, r23]
            for (l, v) in label_bracket::<S>(kind, *b, *c) {
                out.push([*a, l, *d], w.clone() * v);
            }
            // [r13, r23]
            for (l, v) in label_bracket::<S>(kind, *b, *d) {
                out.push([*a, *c, l], w.clone() * v);
            }
        }
    }
    Ok(out)
}
