//! Splitting a recursive functional into its irreducible components
//! `S_a`: sequences `n ↦ p(n)·aⁿ` with `p` a polynomial.
//!
//! Only rational characteristic roots are handled. When the minimal
//! polynomial has a factor without rational roots, a factor report is
//! returned instead of a decomposition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::element::{is_in_restricted_dual, DualElement, DualRep};
use super::linalg::solve;
use super::recurrence::berlekamp_massey;
use super::upoly::UniPoly;
use crate::sparse::accumulate;
use crate::{Domain, Error, Scalar, Window, Q};

/// `n ↦ poly(n) · rootⁿ` with `root ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component<S> {
    pub root: S,
    pub poly: UniPoly<S>,
}

impl<S: Scalar> Component<S> {
    pub fn value(&self, n: i64) -> S {
        self.poly.eval(&S::from_int(n)) * int_pow(&self.root, n)
    }
}

fn int_pow<S: Scalar>(base: &S, n: i64) -> S {
    let p = num_traits::pow(base.clone(), n.unsigned_abs() as usize);
    if n < 0 {
        S::one() / p
    } else {
        p
    }
}

/// One factor of the minimal polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorReport<S> {
    pub factor: UniPoly<S>,
    pub multiplicity: usize,
    /// `true` when irreducibility over ℚ is certain: linear factors, and
    /// root-free factors of degree 2 or 3. Higher-degree root-free factors
    /// are square-free but may still split.
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition<S> {
    /// `f_n = Σ components(n) + finite_part_n`. The finite part is the `S_0`
    /// component (finite `ε`-support) and only occurs on the polynomial domain.
    Components {
        components: Vec<Component<S>>,
        finite_part: BTreeMap<i64, S>,
    },
    /// The minimal polynomial has irrational roots; no decomposition over ℚ.
    IrreducibleFactors {
        minimal_polynomial: UniPoly<S>,
        factors: Vec<FactorReport<S>>,
    },
}

impl<S: Scalar> Decomposition<S> {
    /// Re-sums the components at `n`; `None` for a factor report.
    pub fn evaluate(&self, n: i64) -> Option<S> {
        match self {
            Decomposition::Components {
                components,
                finite_part,
            } => Some(components.iter().fold(
                finite_part.get(&n).cloned().unwrap_or_else(S::zero),
                |acc, c| acc + c.value(n),
            )),
            Decomposition::IrreducibleFactors { .. } => None,
        }
    }
}

fn to_integer_coeffs(p: &UniPoly<Q>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots with multiplicities, and the cofactor free of rational roots.
/// `p` must not vanish at 0.
pub fn rational_roots(p: &UniPoly<Q>) -> (Vec<(Q, usize)>, UniPoly<Q>) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let ints = to_integer_coeffs(p);
    let (a0, an) = (ints[0].clone(), ints[ints.len() - 1].clone());
    debug_assert!(!a0.is_zero());
    let mut candidates = Vec::new();
    for num in divisors(&a0) {
        for den in divisors(&an) {
            let q = Q::new(num.clone(), den.clone());
            candidates.push(-q.clone());
            candidates.push(q);
        }
    }
    candidates.sort();
    candidates.dedup();
    for a in candidates {
        let mut mult = 0;
        loop {
            if rest.degree().unwrap_or(0) == 0 || !rest.eval(&a).is_zero() {
                break;
            }
            rest = rest.div_rem(&UniPoly::linear_root(a.clone())).0;
            mult += 1;
        }
        if mult > 0 {
            roots.push((a, mult));
        }
    }
    (roots, rest)
}

/// Splits a restricted-dual element into components `p(n)·aⁿ`.
///
/// The recursion is first reduced to the minimal one, so redundant
/// characteristic roots do not produce empty components.
pub fn decompose_components(f: &DualElement<Q>) -> Result<Decomposition<Q>, Error> {
    if !is_in_restricted_dual(f) {
        return Err(Error::Precondition(
            "element is not in the restricted dual".into(),
        ));
    }
    let rec = match f.rep() {
        DualRep::Finite(c) => {
            return Ok(Decomposition::Components {
                components: Vec::new(),
                finite_part: c.clone(),
            });
        }
        DualRep::Recursive(rec) => rec,
    };
    let r = rec.order() as i64;
    let start = rec.recursion_start();
    let values = f.coefficients(Window::new(start, start + 2 * r - 1))?;
    let (connection, len) = berlekamp_massey(&values);
    // x^L·C(1/x)
    let minimal = UniPoly::new(connection.into_iter().rev().collect());

    let zero_mult = minimal.coeffs().iter().take_while(|c| c.is_zero()).count();
    let nonzero_part = UniPoly::new(minimal.coeffs()[zero_mult..].to_vec());
    let (roots, rest) = rational_roots(&nonzero_part);
    if rest.degree().unwrap_or(0) > 0 {
        let mut factors: Vec<FactorReport<Q>> = Vec::new();
        if zero_mult > 0 {
            factors.push(FactorReport {
                factor: UniPoly::monomial(1, Q::one()),
                multiplicity: zero_mult,
                irreducible: true,
            });
        }
        factors.extend(roots.iter().map(|(a, m)| FactorReport {
            factor: UniPoly::linear_root(a.clone()),
            multiplicity: *m,
            irreducible: true,
        }));
        factors.extend(
            rest.square_free_factors()
                .into_iter()
                .map(|(p, m)| FactorReport {
                    irreducible: p.degree().unwrap_or(0) <= 3,
                    factor: p,
                    multiplicity: m,
                }),
        );
        return Ok(Decomposition::IrreducibleFactors {
            minimal_polynomial: minimal,
            factors,
        });
    }

    // f_n = Σ_a Σ_{t<mult} c_{a,t} n^t aⁿ for n ≥ base.
    let base = start + zero_mult as i64;
    let unknowns: Vec<(Q, usize)> = roots
        .iter()
        .flat_map(|(a, m)| (0..*m).map(move |t| (a.clone(), t)))
        .collect();
    let size = unknowns.len();
    debug_assert_eq!(size + zero_mult, len);
    let mut components = Vec::new();
    if size > 0 {
        let rhs = f.coefficients(Window::new(base, base + size as i64 - 1))?;
        let matrix = (0..size as i64)
            .map(|row| {
                let n = base + row;
                unknowns
                    .iter()
                    .map(|(a, t)| num_traits::pow(Q::from_int(n), *t) * int_pow(a, n))
                    .collect()
            })
            .collect();
        let coeffs = solve(matrix, rhs)
            .ok_or_else(|| Error::Precondition("singular component system".into()))?;
        let mut offset = 0;
        for (a, m) in &roots {
            let poly = UniPoly::new(coeffs[offset..offset + m].to_vec());
            offset += m;
            if !poly.is_zero() {
                components.push(Component {
                    root: a.clone(),
                    poly,
                });
            }
        }
    }

    let mut finite_part = BTreeMap::new();
    if f.domain() == Domain::Poly && base > 0 {
        let head = f.coefficients(Window::new(0, base - 1))?;
        for (n, v) in head.into_iter().enumerate() {
            let n = n as i64;
            let resummed = components.iter().fold(Q::zero(), |acc, c| acc + c.value(n));
            accumulate(&mut finite_part, n, v - resummed);
        }
    }
    Ok(Decomposition::Components {
        components,
        finite_part,
    })
}
