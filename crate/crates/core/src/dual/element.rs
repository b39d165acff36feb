//! Functionals on `F[x]` and `F[x, x^-1]` in the `ε`-basis, `⟨εⁱ, xʲ⟩ = δᵢⱼ`.
//!
//! An element is either a finite `ε`-combination or a linearly recursive
//! power series `f_n = h₁f_{n−1} + … + h_r f_{n−r}` given by its recursion
//! coefficients and a window of seed values.

use std::collections::{BTreeMap, VecDeque};

use super::upoly::UniPoly;
use crate::sparse::accumulate;
use crate::{Domain, Error, LaurentElement, Scalar, Window};

/// A linear recursion with its seed values.
///
/// Laurent domain: seeds are `f_s, …, f_{s+r−1}` for the anchor `s`, the
/// recursion holds for every `n ∈ ℤ`, and `h_r ≠ 0` so it runs backwards.
///
/// Polynomial domain: the anchor is 0. With `r + 1` seeds `f_0, …, f_r` the
/// recursion constrains only `n > r`; with `r` seeds it holds for `n ≥ r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recursion<S> {
    h: Vec<S>,
    anchor: i64,
    seeds: Vec<S>,
}

impl<S: Scalar> Recursion<S> {
    pub fn order(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[S] {
        &self.h
    }

    pub fn anchor(&self) -> i64 {
        self.anchor
    }

    pub fn seeds(&self) -> &[S] {
        &self.seeds
    }

    /// `h(x) = x^r − h₁x^{r−1} − … − h_r`.
    pub fn characteristic(&self) -> UniPoly<S> {
        let mut coeffs: Vec<S> = self.h.iter().rev().map(|c| -c.clone()).collect();
        coeffs.push(S::one());
        UniPoly::new(coeffs)
    }

    /// First index from which the recursion determines every later value.
    pub(crate) fn recursion_start(&self) -> i64 {
        self.anchor + (self.seeds.len() - self.h.len()) as i64
    }

    /// Values `f_lo, …, f_hi`. `lo` below the anchor needs backward steps.
    fn values(&self, lo: i64, hi: i64) -> Vec<S> {
        let r = self.h.len();
        let mut vals: VecDeque<S> = self.seeds.iter().cloned().collect();
        let mut first = self.anchor;
        while first + (vals.len() as i64) - 1 < hi {
            let len = vals.len();
            let next = (1..=r).fold(S::zero(), |acc, i| {
                acc + self.h[i - 1].clone() * vals[len - i].clone()
            });
            vals.push_back(next);
        }
        if lo < first {
            let last = self.h[r - 1].clone();
            while first > lo {
                // f_{n−r} = (f_n − h₁f_{n−1} − … − h_{r−1}f_{n−r+1}) / h_r with n = first + r − 1
                let mut acc = vals[r - 1].clone();
                for i in 1..r {
                    acc = acc - self.h[i - 1].clone() * vals[r - 1 - i].clone();
                }
                vals.push_front(acc / last.clone());
                first -= 1;
            }
        }
        let skip = (lo - first) as usize;
        vals.into_iter()
            .skip(skip)
            .take((hi - lo + 1) as usize)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DualRep<S> {
    Finite(BTreeMap<i64, S>),
    Recursive(Recursion<S>),
}

/// An element of `F[[ε]]` or `F[[ε, ε^-1]]` with a finite description.
#[derive(Clone, Debug, PartialEq)]
pub struct DualElement<S> {
    domain: Domain,
    rep: DualRep<S>,
}

impl<S: Scalar> DualElement<S> {
    pub fn zero(domain: Domain) -> Self {
        DualElement {
            domain,
            rep: DualRep::Finite(BTreeMap::new()),
        }
    }

    /// A finite `ε`-combination; repeated exponents are summed and zeros dropped.
    pub fn finite(
        domain: Domain,
        terms: impl IntoIterator<Item = (i64, S)>,
    ) -> Result<Self, Error> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            domain.check(e)?;
            accumulate(&mut coeffs, e, c);
        }
        Ok(DualElement {
            domain,
            rep: DualRep::Finite(coeffs),
        })
    }

    /// `εⁿ`.
    pub fn epsilon(domain: Domain, n: i64) -> Result<Self, Error> {
        Self::finite(domain, [(n, S::one())])
    }

    pub fn recursive(domain: Domain, h: Vec<S>, anchor: i64, seeds: Vec<S>) -> Result<Self, Error> {
        let r = h.len();
        if r == 0 {
            return Err(Error::InvalidDual(
                "recursion order must be at least 1".into(),
            ));
        }
        match domain {
            Domain::Laurent => {
                if h[r - 1].is_zero() {
                    return Err(Error::InvalidDual(
                        "h_r must be nonzero on the Laurent domain".into(),
                    ));
                }
                if seeds.len() != r {
                    return Err(Error::InvalidDual(format!(
                        "expected {r} seeds, got {}",
                        seeds.len()
                    )));
                }
            }
            Domain::Poly => {
                if anchor != 0 {
                    return Err(Error::InvalidDual(
                        "polynomial-domain recursions are anchored at 0".into(),
                    ));
                }
                if seeds.len() != r && seeds.len() != r + 1 {
                    return Err(Error::InvalidDual(format!(
                        "expected {r} or {} seeds, got {}",
                        r + 1,
                        seeds.len()
                    )));
                }
            }
        }
        Ok(DualElement {
            domain,
            rep: DualRep::Recursive(Recursion { h, anchor, seeds }),
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rep(&self) -> &DualRep<S> {
        &self.rep
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.rep, DualRep::Finite(_))
    }

    /// The finite `ε`-coefficients, if this is a finite combination.
    pub fn finite_coeffs(&self) -> Option<&BTreeMap<i64, S>> {
        match &self.rep {
            DualRep::Finite(c) => Some(c),
            DualRep::Recursive(_) => None,
        }
    }

    /// `f_n`.
    pub fn coefficient(&self, n: i64) -> Result<S, Error> {
        Ok(self
            .coefficients(Window::new(n, n))?
            .pop()
            .expect("one value"))
    }

    /// `f_lo, …, f_hi` in one pass.
    pub fn coefficients(&self, window: Window) -> Result<Vec<S>, Error> {
        if window.is_empty() {
            return Ok(Vec::new());
        }
        self.domain.check(window.lo)?;
        Ok(match &self.rep {
            DualRep::Finite(c) => window
                .iter()
                .map(|n| c.get(&n).cloned().unwrap_or_else(S::zero))
                .collect(),
            DualRep::Recursive(rec) => rec.values(window.lo, window.hi),
        })
    }

    /// `⟨f, g⟩ = Σ_j f_j g_j`.
    pub fn pair(&self, g: &LaurentElement<S>) -> Result<S, Error> {
        if self.domain != g.domain() {
            return Err(Error::DomainMismatch {
                left: self.domain,
                right: g.domain(),
            });
        }
        let (Some((&lo, _)), Some((&hi, _))) =
            (g.coeffs().first_key_value(), g.coeffs().last_key_value())
        else {
            return Ok(S::zero());
        };
        let values = self.coefficients(Window::new(lo, hi))?;
        Ok(g.terms().fold(S::zero(), |acc, (e, c)| {
            acc + values[(e - lo) as usize].clone() * c.clone()
        }))
    }

    pub fn is_zero(&self) -> bool {
        match &self.rep {
            DualRep::Finite(c) => c.is_empty(),
            DualRep::Recursive(rec) => rec.seeds.iter().all(|s| s.is_zero()),
        }
    }
}

/// Membership in the restricted dual.
///
/// Every finite combination and every recursive series lies in `F[x]°`. In
/// `F[x, x^-1]°` a nonzero element needs a recursion valid on all of `ℤ`, so
/// nonzero finite combinations are excluded.
pub fn is_in_restricted_dual<S: Scalar>(f: &DualElement<S>) -> bool {
    match (f.domain, &f.rep) {
        (Domain::Poly, _) => true,
        (Domain::Laurent, DualRep::Finite(c)) => c.is_empty(),
        (Domain::Laurent, DualRep::Recursive(rec)) => rec.h.last().is_some_and(|h| !h.is_zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_int(x)).collect()
    }

    fn fib(domain: Domain) -> DualElement<Q> {
        DualElement::recursive(domain, ints(&[1, 1]), 0, ints(&[0, 1])).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let p = Domain::Poly;
        let f = DualElement::finite(p, [(2, Q::from_int(1)), (5, Q::from_int(3))]).unwrap();
        let g = LaurentElement::from_terms(p, [(5, Q::from_int(1)), (2, Q::from_int(1))]).unwrap();
        assert_eq!(f.pair(&g).unwrap(), Q::from_int(4));
        assert_eq!(
            fib(p).pair(&LaurentElement::x_pow(p, 6).unwrap()).unwrap(),
            Q::from_int(8)
        );
        assert_eq!(
            fib(p).pair(&LaurentElement::zero(p)).unwrap(),
            Q::from_int(0)
        );
        assert!(fib(p).pair(&LaurentElement::zero(Domain::Laurent)).is_err());
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(fib(Domain::Poly).coefficient(10).unwrap(), Q::from_int(55));
        assert_eq!(
            fib(Domain::Laurent).coefficient(-1).unwrap(),
            Q::from_int(1)
        );
        let geo = DualElement::recursive(Domain::Laurent, ints(&[2]), 0, ints(&[1])).unwrap();
        assert_eq!(geo.coefficient(-3).unwrap(), Q::ratio(1, 8));
        assert_eq!(
            fib(Domain::Poly).coefficient(-1).unwrap_err(),
            Error::NegativeExponent(-1)
        );
    }

    #[test]
    fn fibonacci_backwards_alternates() {
        let values = fib(Domain::Laurent)
            .coefficients(Window::new(-6, 6))
            .unwrap();
        assert_eq!(values, ints(&[-8, 5, -3, 2, -1, 1, 0, 1, 1, 2, 3, 5, 8]));
    }

    #[test]
    fn poly_seed_conventions() {
        // f_0 is free when r + 1 seeds are given.
        let f = DualElement::recursive(Domain::Poly, ints(&[2]), 0, ints(&[7, 1])).unwrap();
        assert_eq!(
            f.coefficients(Window::new(0, 4)).unwrap(),
            ints(&[7, 1, 2, 4, 8])
        );
        assert!(DualElement::recursive(Domain::Poly, ints(&[2]), 1, ints(&[1])).is_err());
        assert!(DualElement::recursive(Domain::Poly, ints(&[2]), 0, ints(&[1, 2, 3])).is_err());
        assert!(DualElement::<Q>::recursive(Domain::Poly, vec![], 0, vec![]).is_err());
    }

    #[test]
    fn laurent_requires_invertible_tail() {
        assert!(DualElement::recursive(Domain::Laurent, ints(&[1, 0]), 0, ints(&[1, 1])).is_err());
        assert!(DualElement::recursive(Domain::Laurent, ints(&[1, 1]), 3, ints(&[1])).is_err());
    }

    #[test]
    fn membership() {
        let e3 = |d| DualElement::<Q>::epsilon(d, 3).unwrap();
        assert!(is_in_restricted_dual(&e3(Domain::Poly)));
        assert!(!is_in_restricted_dual(&e3(Domain::Laurent)));
        assert!(is_in_restricted_dual(&DualElement::<Q>::zero(
            Domain::Laurent
        )));
        let geo = DualElement::recursive(Domain::Laurent, ints(&[2]), 0, ints(&[1])).unwrap();
        assert!(is_in_restricted_dual(&geo));
        assert!(is_in_restricted_dual(&fib(Domain::Poly)));
    }

    #[test]
    fn characteristic_annihilates() {
        // ⟨f, x^{n−r} h(x)⟩ = 0 for every n
        let f =
            DualElement::recursive(Domain::Laurent, ints(&[7, -10]), 0, ints(&[4, 17])).unwrap();
        let DualRep::Recursive(rec) = f.rep() else {
            unreachable!()
        };
        let chi = rec.characteristic();
        assert_eq!(chi.coeffs(), &ints(&[10, -7, 1])[..]);
        for n in -10..=10 {
            let shifted = LaurentElement::from_terms(
                Domain::Laurent,
                chi.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (n - 2 + i as i64, c.clone())),
            )
            .unwrap();
            assert_eq!(f.pair(&shifted).unwrap(), Q::from_int(0), "n={n}");
        }
    }
}
