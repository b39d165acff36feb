//! Generating functions of elements of `F[x]°`: every such element is
//! `num(ε)/den(ε)` with `den(0) ≠ 0`.

use super::element::{DualElement, DualRep};
use super::upoly::UniPoly;
use crate::{Domain, Error, Scalar, Window};

/// `num(ε) / den(ε)` in lowest terms with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionRep<S> {
    num: UniPoly<S>,
    den: UniPoly<S>,
}

impl<S: Scalar> RationalFunctionRep<S> {
    /// Reduces to lowest terms and normalizes `den(0) = 1`.
    pub fn new(num: UniPoly<S>, den: UniPoly<S>) -> Result<Self, Error> {
        if den.coeff(0).is_zero() {
            return Err(Error::Precondition(
                "denominator must not vanish at 0".into(),
            ));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let unit = S::one() / den.coeff(0);
        Ok(RationalFunctionRep {
            num: num.scale(&unit),
            den: den.scale(&unit),
        })
    }

    pub fn num(&self) -> &UniPoly<S> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<S> {
        &self.den
    }

    /// Power-series coefficients `f_0, …, f_{len−1}`.
    pub fn series(&self, len: usize) -> Vec<S> {
        let mut f: Vec<S> = Vec::with_capacity(len);
        for n in 0..len {
            let mut v = self.num.coeff(n);
            for i in 1..=n.min(self.den.degree().unwrap_or(0)) {
                v = v - self.den.coeff(i) * f[n - i].clone();
            }
            f.push(v);
        }
        f
    }

    /// The recursive element with this generating function.
    pub fn to_dual(&self) -> DualElement<S> {
        let dd = self.den.degree().unwrap_or(0);
        let dn = self.num.degree().unwrap_or(0);
        let order = dd.max(dn).max(1);
        let h = (1..=order).map(|i| -self.den.coeff(i)).collect();
        DualElement::recursive(Domain::Poly, h, 0, self.series(order + 1))
            .expect("valid polynomial-domain recursion")
    }
}

/// The generating function `Σ_{n≥0} f_n εⁿ` as a reduced fraction.
pub fn to_rational_function<S: Scalar>(
    f: &DualElement<S>,
) -> Result<RationalFunctionRep<S>, Error> {
    if f.domain() != Domain::Poly {
        return Err(Error::Precondition(
            "no rational-function normal form on the Laurent domain".into(),
        ));
    }
    match f.rep() {
        DualRep::Finite(c) => {
            let deg = c.keys().next_back().map_or(0, |&e| e as usize);
            let num = UniPoly::new(
                (0..=deg as i64)
                    .map(|e| c.get(&e).cloned().unwrap_or_else(S::zero))
                    .collect(),
            );
            RationalFunctionRep::new(num, UniPoly::one())
        }
        DualRep::Recursive(rec) => {
            let mut den = vec![S::one()];
            den.extend(rec.h().iter().map(|h| -h.clone()));
            let den = UniPoly::new(den);
            // (den · F)_n vanishes once the recursion applies, i.e. for n ≥ #seeds.
            let len = rec.seeds().len();
            let values = f.coefficients(Window::new(0, len as i64 - 1))?;
            let num = UniPoly::new(
                (0..len)
                    .map(|n| {
                        (0..=n).fold(S::zero(), |acc, i| {
                            acc + den.coeff(i) * values[n - i].clone()
                        })
                    })
                    .collect(),
            );
            RationalFunctionRep::new(num, den)
        }
    }
}
