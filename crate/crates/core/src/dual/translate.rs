use super::element::DualElement;
use super::linalg::rank;
use crate::{AlgebraKind, Error, Scalar, Window};

/// Rank of the translates `{f · xⁱ : i ∈ window}` measured on the window,
/// where `(f · xⁱ)(xʲ) = f([xⁱ, xʲ]) = (j − i) f_{i+j−1}`.
///
/// Elements of the restricted dual have finite-dimensional translate spaces,
/// so the rank stabilizes as the window grows.
pub fn translate_rank<S: Scalar>(
    kind: AlgebraKind,
    f: &DualElement<S>,
    window: Window,
) -> Result<usize, Error> {
    if f.domain() != kind.domain() {
        return Err(Error::DomainMismatch {
            left: f.domain(),
            right: kind.domain(),
        });
    }
    let w = window.clip(kind.domain());
    if w.is_empty() {
        return Ok(0);
    }
    let span = Window::new(2 * w.lo - 1, 2 * w.hi - 1).clip(kind.domain());
    let values = f.coefficients(span)?;
    let value = |e: i64| {
        if span.contains(e) {
            values[(e - span.lo) as usize].clone()
        } else {
            S::zero()
        }
    };
    let rows = w
        .iter()
        .map(|i| {
            w.iter()
                .map(|j| S::from_int(j - i) * value(i + j - 1))
                .collect()
        })
        .collect();
    Ok(rank(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Domain, Q};

    #[test]
    fn examples() {
        let e0 = DualElement::<Q>::epsilon(Domain::Poly, 0).unwrap();
        assert_eq!(
            translate_rank(AlgebraKind::OneSidedWitt, &e0, Window::new(0, 6)).unwrap(),
            2
        );
        assert_eq!(
            translate_rank(
                AlgebraKind::Witt,
                &DualElement::<Q>::zero(Domain::Laurent),
                Window::symmetric(4)
            )
            .unwrap(),
            0
        );
        let geo = DualElement::recursive(
            Domain::Laurent,
            vec![Q::from_int(2)],
            0,
            vec![Q::from_int(1)],
        )
        .unwrap();
        let small = translate_rank(AlgebraKind::Witt, &geo, Window::symmetric(6)).unwrap();
        let large = translate_rank(AlgebraKind::Witt, &geo, Window::symmetric(10)).unwrap();
        assert_eq!(small, large);
        assert_eq!(small, 2);
    }

    #[test]
    fn finite_epsilon_grows_on_laurent() {
        // εⁿ is not in the Laurent restricted dual: translates keep growing.
        let e = DualElement::<Q>::epsilon(Domain::Laurent, 0).unwrap();
        let a = translate_rank(AlgebraKind::Witt, &e, Window::symmetric(4)).unwrap();
        let b = translate_rank(AlgebraKind::Witt, &e, Window::symmetric(8)).unwrap();
        assert!(b > a);
    }

    #[test]
    fn recursive_order_two_stabilizes() {
        let f = DualElement::recursive(
            Domain::Laurent,
            vec![Q::from_int(7), Q::from_int(-10)],
            0,
            vec![Q::from_int(4), Q::from_int(17)],
        )
        .unwrap();
        let ranks: Vec<usize> = [6, 8, 10]
            .iter()
            .map(|&r| translate_rank(AlgebraKind::Witt, &f, Window::symmetric(r)).unwrap())
            .collect();
        assert!(ranks.windows(2).all(|p| p[0] == p[1]), "{ranks:?}");
    }
}
