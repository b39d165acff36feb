//! Coboundary cobrackets `δ(x) = x · r`, executable bialgebra axioms, and the
//! two families of triangular r-matrices on the Witt-type algebras.

use crate::algebra::{bracket, AlgebraKind, LieElement};
use crate::tensor::{act2, swap, BasisLabel, Tensor2, Tensor3};
use crate::{Error, Scalar};

/// Parameters `(n, ℓ, k)` of the two-dimensional subalgebra `span{X, Y}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BialgebraParams<S> {
    n: i64,
    ell: S,
    k: S,
}

impl<S: Scalar> BialgebraParams<S> {
    pub fn new(n: i64, ell: S, k: S) -> Result<Self, Error> {
        if n == 1 {
            return Err(Error::InvalidParams("n must differ from 1".into()));
        }
        if ell.is_zero() || k.is_zero() {
            return Err(Error::InvalidParams("ell and k must be nonzero".into()));
        }
        // n = 1 is the only way the exponents 2 - n and n could coincide.
        debug_assert_ne!(2 - n, n);
        Ok(BialgebraParams { n, ell, k })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn ell(&self) -> &S {
        &self.ell
    }

    pub fn k(&self) -> &S {
        &self.k
    }

    /// `n - 1` as a scalar; never zero.
    pub(crate) fn nm1(&self) -> S {
        S::from_int(self.n - 1)
    }

    /// Coefficient of `x` in `X`: `−1/(n−1)`.
    pub fn ell0(&self) -> S {
        -S::one() / self.nm1()
    }

    /// Coefficient of `x^{2−n}` in `Y`: `−k/(2(n−1)ℓ)`.
    pub fn k0(&self) -> S {
        -self.k.clone() / (S::from_int(2) * self.nm1() * self.ell.clone())
    }

    /// Coefficient of `x^n` in `Y`: `−(n−1)ℓk/2`.
    pub fn k1(&self) -> S {
        -(self.nm1() * self.ell.clone() * self.k.clone()) / S::from_int(2)
    }
}

/// An antisymmetric element of `L ⊗ L`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix<S>(Tensor2<S>);

impl<S: Scalar> RMatrix<S> {
    pub fn new(t: Tensor2<S>) -> Result<Self, Error> {
        if swap(&t) != t.neg() {
            return Err(Error::Precondition("r-matrix must be antisymmetric".into()));
        }
        Ok(RMatrix(t))
    }

    pub fn as_tensor(&self) -> &Tensor2<S> {
        &self.0
    }

    pub fn into_tensor(self) -> Tensor2<S> {
        self.0
    }

    pub fn kind(&self) -> AlgebraKind {
        self.0.kind()
    }
}

impl<S> AsRef<Tensor2<S>> for RMatrix<S> {
    fn as_ref(&self) -> &Tensor2<S> {
        &self.0
    }
}

/// `a ⊗ b − b ⊗ a`.
pub fn r_from_pair<S: Scalar>(
    kind: AlgebraKind,
    a: &LieElement<S>,
    b: &LieElement<S>,
) -> Result<RMatrix<S>, Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ab = Tensor2::simple(kind, a, b)?;
    Ok(RMatrix(ab.sub(&swap(&ab))?))
}

/// `δ(x) = x · r`.
pub fn coboundary_cobracket<S: Scalar>(
    kind: AlgebraKind,
    r: &impl AsRef<Tensor2<S>>,
    x: &LieElement<S>,
) -> Result<Tensor2<S>, Error> {
    act2(kind, x, r.as_ref())
}

/// The 1-cocycle condition `δ[a, b] = a · δ(b) − b · δ(a)`.
pub fn check_compatibility<S: Scalar>(
    kind: AlgebraKind,
    r: &impl AsRef<Tensor2<S>>,
    a: &LieElement<S>,
    b: &LieElement<S>,
) -> Result<bool, Error> {
    let lhs = coboundary_cobracket(kind, r, &bracket(kind, a, b)?)?;
    let da = coboundary_cobracket(kind, r, a)?;
    let db = coboundary_cobracket(kind, r, b)?;
    let rhs = act2(kind, a, &db)?.sub(&act2(kind, b, &da)?)?;
    Ok(lhs == rhs)
}

/// `Σ_cyclic (δ ⊗ id) δ(a)` in `L ⊗ L ⊗ L`; zero iff co-Jacobi holds at `a`.
pub fn cojacobi_residual<S: Scalar>(
    kind: AlgebraKind,
    r: &impl AsRef<Tensor2<S>>,
    a: &LieElement<S>,
) -> Result<Tensor3<S>, Error> {
    let outer = coboundary_cobracket(kind, r, a)?;
    let mut nested = Tensor3::zero(kind);
    for ([u, v], c) in outer.terms() {
        let du = coboundary_cobracket(kind, r, &LieElement::from_label(kind, *u, S::one())?)?;
        for ([p, q], d) in du.terms() {
            nested.push([*p, *q, *v], c.clone() * d.clone());
        }
    }
    let once = nested.rotate();
    let twice = once.rotate();
    nested.add(&once)?.add(&twice)
}

pub fn check_cojacobi<S: Scalar>(
    kind: AlgebraKind,
    r: &impl AsRef<Tensor2<S>>,
    a: &LieElement<S>,
) -> Result<bool, Error> {
    Ok(cojacobi_residual(kind, r, a)?.is_zero())
}

/// The pair `(X, Y)` with `[X, Y] = Y`:
/// `X = −1/(n−1)·x + ℓxⁿ`, `Y = −k/(2(n−1)ℓ)·x^{2−n} + kx − ((n−1)ℓk/2)·xⁿ`.
///
/// In the Virasoro algebra `[X, Y]` picks up the central term
/// `ℓ·k₀·((n−1)³−(n−1))/12`, which vanishes only for `n ∈ {0, 2}`. `Y` is
/// given that same central coefficient so that `[X, Y] = Y` holds exactly.
pub fn build_subalgebra_pair<S: Scalar>(
    kind: AlgebraKind,
    p: &BialgebraParams<S>,
) -> Result<(LieElement<S>, LieElement<S>), Error> {
    if kind == AlgebraKind::OneSidedWitt {
        return Err(Error::KindMismatch {
            kind,
            reason: "the (X, Y) pair needs x^(2-n), outside F[x]".into(),
        });
    }
    let n = p.n();
    let x = LieElement::from_terms(kind, [(1, p.ell0()), (n, p.ell().clone())])?;
    let y = LieElement::from_terms(kind, [(2 - n, p.k0()), (1, p.k().clone()), (n, p.k1())])?;
    let central = bracket(kind, &x, &y)?.central;
    let y = LieElement::new(y.body, central);
    debug_assert_eq!(bracket(kind, &x, &y).ok().as_ref(), Some(&y));
    Ok((x, y))
}

/// The two r-matrix families with known dual brackets.
#[derive(Clone, Debug, PartialEq)]
pub enum RFamily<S> {
    /// `x ⊗ xⁿ − xⁿ ⊗ x`, `n ≠ 1`.
    WittN(i64),
    /// `X ⊗ Y − Y ⊗ X` for the subalgebra pair.
    Xy(BialgebraParams<S>),
}

impl<S: Scalar> RFamily<S> {
    pub fn n(&self) -> i64 {
        match self {
            RFamily::WittN(n) => *n,
            RFamily::Xy(p) => p.n(),
        }
    }

    pub fn validate(&self, kind: AlgebraKind) -> Result<(), Error> {
        match self {
            RFamily::WittN(1) => Err(Error::InvalidParams("n must differ from 1".into())),
            RFamily::WittN(n) if !kind.domain().admits(*n) => Err(Error::NegativeExponent(*n)),
            RFamily::Xy(_) if kind == AlgebraKind::OneSidedWitt => Err(Error::KindMismatch {
                kind,
                reason: "the (X, Y) family is defined on Witt and Virasoro only".into(),
            }),
            _ => Ok(()),
        }
    }

    pub fn r_matrix(&self, kind: AlgebraKind) -> Result<RMatrix<S>, Error> {
        self.validate(kind)?;
        match self {
            RFamily::WittN(n) => r_from_pair(
                kind,
                &LieElement::x_pow(kind, 1)?,
                &LieElement::x_pow(kind, *n)?,
            ),
            RFamily::Xy(p) => {
                let (x, y) = build_subalgebra_pair(kind, p)?;
                r_from_pair(kind, &x, &y)
            }
        }
    }
}

/// Basis elements of `kind` with exponents in `lo..=hi` (plus `c` for Virasoro).
pub fn basis_window<S: Scalar>(kind: AlgebraKind, lo: i64, hi: i64) -> Vec<LieElement<S>> {
    let mut out: Vec<_> = (lo..=hi)
        .filter(|&e| kind.domain().admits(e))
        .map(|e| LieElement::from_label(kind, BasisLabel::Exponent(e), S::one()).expect("admitted"))
        .collect();
    if kind.has_center() {
        out.push(LieElement::central_unit());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::cybe;
    use crate::Q;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn x(kind: AlgebraKind, e: i64) -> LieElement<Q> {
        LieElement::x_pow(kind, e).unwrap()
    }

    fn lie(kind: AlgebraKind, terms: &[(i64, Q)]) -> LieElement<Q> {
        LieElement::from_terms(kind, terms.iter().cloned()).unwrap()
    }

    fn t2(kind: AlgebraKind, terms: &[(i64, i64, i64)]) -> Tensor2<Q> {
        Tensor2::from_exponents(
            kind,
            terms.iter().map(|&(c, a, b)| (Q::from_int(c), [a, b])),
        )
        .unwrap()
    }

    fn params(n: i64, ell: Q, k: Q) -> BialgebraParams<Q> {
        BialgebraParams::new(n, ell, k).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(BialgebraParams::new(1, q(1, 1), q(1, 1)).is_err());
        assert!(BialgebraParams::new(2, q(0, 1), q(1, 1)).is_err());
        assert!(BialgebraParams::new(2, q(1, 1), q(0, 1)).is_err());
        let p = params(3, q(2, 1), q(5, 1));
        assert_eq!(p.ell0(), q(-1, 2));
        assert_eq!(p.k0(), q(-5, 8));
        assert_eq!(p.k1(), q(-10, 1));
    }

    #[test]
    fn r_from_pair_examples() {
        let w = AlgebraKind::Witt;
        assert_eq!(
            r_from_pair(w, &x(w, 1), &x(w, 2)).unwrap().into_tensor(),
            t2(w, &[(1, 1, 2), (-1, 2, 1)])
        );
        let a = lie(w, &[(3, q(2, 1)), (-1, q(1, 3))]);
        assert!(r_from_pair(w, &a, &a).unwrap().as_tensor().is_zero());
        assert_eq!(
            r_from_pair(w, &LieElement::zero(w), &a).unwrap_err(),
            Error::ZeroElement
        );

        let (xx, yy) = build_subalgebra_pair(w, &params(2, q(1, 1), q(1, 1))).unwrap();
        let r = r_from_pair(w, &xx, &yy).unwrap();
        let xy = Tensor2::simple(w, &xx, &yy).unwrap();
        assert_eq!(r.as_tensor(), &xy.sub(&swap(&xy)).unwrap());
    }

    #[test]
    fn rmatrix_requires_antisymmetry() {
        let w = AlgebraKind::Witt;
        assert!(RMatrix::new(t2(w, &[(1, 1, 3), (1, 3, 1)])).is_err());
        assert!(RMatrix::new(t2(w, &[(1, 1, 3), (-1, 3, 1)])).is_ok());
    }

    #[test]
    fn coboundary_examples() {
        let w = AlgebraKind::Witt;
        let r = RFamily::<Q>::WittN(2).r_matrix(w).unwrap();
        assert_eq!(
            &coboundary_cobracket(w, &r, &x(w, 1)).unwrap(),
            r.as_tensor()
        );
        assert!(coboundary_cobracket(w, &r, &LieElement::zero(w))
            .unwrap()
            .is_zero());
        let expected = t2(w, &[(-2, 3, 2), (2, 2, 3), (-1, 1, 4), (1, 4, 1)]);
        assert_eq!(coboundary_cobracket(w, &r, &x(w, 3)).unwrap(), expected);
    }

    #[test]
    fn coboundary_general_formula() {
        // δ(x^m) = (1−m)(x^m⊗xⁿ−xⁿ⊗x^m) + (n−m)(x⊗x^{m+n−1}−x^{m+n−1}⊗x)
        let w = AlgebraKind::Witt;
        for n in (-4..=4).filter(|&n| n != 1) {
            let r = RFamily::<Q>::WittN(n).r_matrix(w).unwrap();
            for m in -5..=5 {
                let expected = t2(
                    w,
                    &[
                        (1 - m, m, n),
                        (m - 1, n, m),
                        (n - m, 1, m + n - 1),
                        (m - n, m + n - 1, 1),
                    ],
                );
                assert_eq!(
                    coboundary_cobracket(w, &r, &x(w, m)).unwrap(),
                    expected,
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn compatibility_examples() {
        let w = AlgebraKind::Witt;
        let r = RFamily::<Q>::WittN(2).r_matrix(w).unwrap();
        assert!(check_compatibility(w, &r, &x(w, 1), &x(w, 3)).unwrap());
        assert!(check_compatibility(w, &r, &x(w, 1), &x(w, 1)).unwrap());
        let v = AlgebraKind::Virasoro;
        let r = RFamily::<Q>::WittN(2).r_matrix(v).unwrap();
        assert!(check_compatibility(v, &r, &x(v, 3), &x(v, -1)).unwrap());
    }

    #[test]
    fn cojacobi_examples() {
        let w = AlgebraKind::Witt;
        let r = RFamily::<Q>::WittN(2).r_matrix(w).unwrap();
        assert!(check_cojacobi(w, &r, &LieElement::zero(w)).unwrap());
        for m in -5..=5 {
            assert!(check_cojacobi(w, &r, &x(w, m)).unwrap(), "m={m}");
        }
        let sym = t2(w, &[(1, 1, 3), (1, 3, 1)]);
        let witnesses: Vec<i64> = (-5..=5)
            .filter(|&m| !check_cojacobi(w, &sym, &x(w, m)).unwrap())
            .collect();
        assert!(!witnesses.is_empty());
        assert!(witnesses.contains(&2));
    }

    #[test]
    fn subalgebra_pair_examples() {
        let w = AlgebraKind::Witt;
        let (xx, yy) = build_subalgebra_pair(w, &params(2, q(1, 1), q(1, 1))).unwrap();
        assert_eq!(xx, lie(w, &[(1, q(-1, 1)), (2, q(1, 1))]));
        assert_eq!(yy, lie(w, &[(0, q(-1, 2)), (1, q(1, 1)), (2, q(-1, 2))]));
        assert_eq!(bracket(w, &xx, &yy).unwrap(), yy);

        let (xx, yy) = build_subalgebra_pair(w, &params(0, q(1, 1), q(1, 1))).unwrap();
        assert_eq!(xx, lie(w, &[(1, q(1, 1)), (0, q(1, 1))]));
        assert_eq!(yy, lie(w, &[(2, q(1, 2)), (1, q(1, 1)), (0, q(1, 2))]));
        assert_eq!(bracket(w, &xx, &yy).unwrap(), yy);

        let v = AlgebraKind::Virasoro;
        let (xx, yy) = build_subalgebra_pair(v, &params(2, q(1, 1), q(1, 1))).unwrap();
        assert!(xx.central.is_zero() && yy.central.is_zero());
        assert_eq!(bracket(v, &xx, &yy).unwrap(), yy);

        assert!(
            build_subalgebra_pair(AlgebraKind::OneSidedWitt, &params(2, q(1, 1), q(1, 1))).is_err()
        );
    }

    #[test]
    fn virasoro_pair_carries_central_correction() {
        let v = AlgebraKind::Virasoro;
        let p = params(3, q(1, 1), q(1, 1));
        let (xx, yy) = build_subalgebra_pair(v, &p).unwrap();
        // ℓ·k₀·(2³−2)/12 with k₀ = −1/4
        assert_eq!(yy.central, q(-1, 8));
        assert_eq!(bracket(v, &xx, &yy).unwrap(), yy);
        assert!(cybe(v, &r_from_pair(v, &xx, &yy).unwrap().into_tensor())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn subalgebra_pair_grid() {
        let values = [q(1, 1), q(-1, 1), q(1, 2), q(3, 1)];
        for kind in [AlgebraKind::Witt, AlgebraKind::Virasoro] {
            for n in (-4..=4).filter(|&n| n != 1) {
                for ell in &values {
                    for k in &values {
                        let p = params(n, ell.clone(), k.clone());
                        let (xx, yy) = build_subalgebra_pair(kind, &p).unwrap();
                        assert_eq!(bracket(kind, &xx, &yy).unwrap(), yy);
                        let r = r_from_pair(kind, &xx, &yy).unwrap();
                        assert!(
                            cybe(kind, r.as_tensor()).unwrap().is_zero(),
                            "{kind:?} {p:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn family_validation() {
        assert!(RFamily::<Q>::WittN(1).r_matrix(AlgebraKind::Witt).is_err());
        assert!(RFamily::<Q>::WittN(-2)
            .r_matrix(AlgebraKind::OneSidedWitt)
            .is_err());
        let p = params(2, q(1, 1), q(1, 1));
        assert!(RFamily::Xy(p).r_matrix(AlgebraKind::OneSidedWitt).is_err());
    }

    #[test]
    fn cobracket_is_linear() {
        let w = AlgebraKind::Witt;
        let r = RFamily::Xy(params(3, q(1, 2), q(-1, 1)))
            .r_matrix(w)
            .unwrap();
        let a = lie(w, &[(2, q(3, 1)), (-1, q(1, 2))]);
        let b = lie(w, &[(0, q(-2, 1)), (4, q(5, 3))]);
        let s = q(7, 5);
        let combo = a.add(&b.scale(&s)).unwrap();
        let lhs = coboundary_cobracket(w, &r, &combo).unwrap();
        let rhs = coboundary_cobracket(w, &r, &a)
            .unwrap()
            .add(&coboundary_cobracket(w, &r, &b).unwrap().scale(&s))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
