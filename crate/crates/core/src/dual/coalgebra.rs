//! The dual comultiplication `μ°`, the dual derivation `∂°`, and the dual
//! cobracket `Δ = (id ⊗ ∂° − ∂° ⊗ id) μ°`.
//!
//! On the Laurent domain `μ°(εⁿ) = Σ_{i+j=n} εⁱ ⊗ εʲ` is an infinite sum, so
//! these maps return exact slices over a window.

use std::collections::BTreeMap;

use super::element::DualElement;
use crate::sparse::accumulate;
use crate::{Domain, Error, Scalar, Window};

/// A window slice of an element of `(A ⊗ A)*`: exact coefficients for every
/// index pair in `window × window`. On the polynomial domain the values are
/// finite sums and the slice holds all of them.
#[derive(Clone, Debug, PartialEq)]
pub struct DualTensor2<S> {
    domain: Domain,
    window: Window,
    terms: BTreeMap<(i64, i64), S>,
}

impl<S: Scalar> DualTensor2<S> {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), S> {
        &self.terms
    }

    /// `⟨T, x^a ⊗ x^b⟩`.
    pub fn pair(&self, a: i64, b: i64) -> Result<S, Error> {
        let known = |e: i64| match self.domain {
            Domain::Poly => e >= 0,
            Domain::Laurent => self.window.contains(e),
        };
        if !known(a) || !known(b) {
            return Err(Error::OutsideWindow(a, b));
        }
        Ok(self.terms.get(&(a, b)).cloned().unwrap_or_else(S::zero))
    }

    fn restrict(&self, window: Window) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|((a, b), _)| window.contains(*a) && window.contains(*b))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        DualTensor2 {
            domain: self.domain,
            window,
            terms,
        }
    }
}

fn check_index(domain: Domain, n: i64) -> Result<(), Error> {
    if domain.admits(n) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "ε^{n} is not in the polynomial-domain dual"
        )))
    }
}

/// `μ°(εⁿ) = Σ_{i+j=n} εⁱ ⊗ εʲ`.
///
/// The polynomial domain sum is finite and the window is ignored (the result
/// carries the window `[0, n]`).
pub fn mu_dual<S: Scalar>(n: i64, domain: Domain, window: Window) -> Result<DualTensor2<S>, Error> {
    check_index(domain, n)?;
    let window = match domain {
        Domain::Poly => Window::new(0, n),
        Domain::Laurent => window,
    };
    let terms = window
        .iter()
        .filter(|&i| window.contains(n - i))
        .map(|i| ((i, n - i), S::one()))
        .collect();
    Ok(DualTensor2 {
        domain,
        window,
        terms,
    })
}

/// `∂°(εⁿ) = (n+1) ε^{n+1}`.
pub fn partial_dual_derivation<S: Scalar>(n: i64, domain: Domain) -> Result<DualElement<S>, Error> {
    check_index(domain, n)?;
    DualElement::finite(domain, [(n + 1, S::from_int(n + 1))])
}

/// `Σ_{i+j=n+1} (j − i) εⁱ ⊗ εʲ` over the window.
pub fn cobracket_closed_form<S: Scalar>(
    n: i64,
    domain: Domain,
    window: Window,
) -> Result<DualTensor2<S>, Error> {
    check_index(domain, n)?;
    let window = match domain {
        Domain::Poly => Window::new(0, n + 1),
        Domain::Laurent => window,
    };
    let mut terms = BTreeMap::new();
    for i in window.iter() {
        let j = n + 1 - i;
        if window.contains(j) {
            accumulate(&mut terms, (i, j), S::from_int(j - i));
        }
    }
    Ok(DualTensor2 {
        domain,
        window,
        terms,
    })
}

/// `Δ(εⁿ) = (id ⊗ ∂° − ∂° ⊗ id) μ°(εⁿ)`, computed from `μ°` and `∂°` and
/// checked against the closed form `Σ_{i+j=n+1} (j − i) εⁱ ⊗ εʲ`.
pub fn cobracket_dual<S: Scalar>(
    n: i64,
    domain: Domain,
    window: Window,
) -> Result<DualTensor2<S>, Error> {
    check_index(domain, n)?;
    let target = match domain {
        Domain::Poly => Window::new(0, n + 1),
        Domain::Laurent => window,
    };
    // ∂° raises an index by one, so sources one step outside the target matter.
    let source = match domain {
        Domain::Poly => target,
        Domain::Laurent => target.widen(1),
    };
    let mu = mu_dual::<S>(n, domain, source)?;
    let mut terms = BTreeMap::new();
    for ((i, j), c) in mu.terms() {
        let d_right = partial_dual_derivation::<S>(*j, domain)?;
        for (jj, cj) in d_right.finite_coeffs().expect("finite") {
            accumulate(&mut terms, (*i, *jj), c.clone() * cj.clone());
        }
        let d_left = partial_dual_derivation::<S>(*i, domain)?;
        for (ii, ci) in d_left.finite_coeffs().expect("finite") {
            accumulate(&mut terms, (*ii, *j), -(c.clone() * ci.clone()));
        }
    }
    let computed = DualTensor2 {
        domain,
        window: source,
        terms,
    }
    .restrict(target);
    let closed = cobracket_closed_form(n, domain, target)?;
    if computed != closed {
        return Err(Error::ClosedFormMismatch(format!(
            "dual cobracket of ε^{n}"
        )));
    }
    Ok(computed)
}
