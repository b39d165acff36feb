//! Minimal linear recurrence synthesis (Berlekamp–Massey) over a field.

use crate::Scalar;

/// Shortest LFSR generating `seq`: returns the connection polynomial
/// `1 + c₁z + … + c_L z^L` (padded to length `L + 1`) and the length `L`.
pub(crate) fn berlekamp_massey<S: Scalar>(seq: &[S]) -> (Vec<S>, usize) {
    let mut c = vec![S::one()];
    let mut b = vec![S::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_discrepancy = S::one();

    for i in 0..seq.len() {
        let mut d = seq[i].clone();
        for j in 1..=len.min(c.len() - 1) {
            d = d + c[j].clone() * seq[i - j].clone();
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let scale = d.clone() / last_discrepancy.clone();
        let previous = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, S::zero());
        }
        for (j, bj) in b.iter().enumerate() {
            c[j + shift] = c[j + shift].clone() - scale.clone() * bj.clone();
        }
        if 2 * len <= i {
            len = i + 1 - len;
            b = previous;
            last_discrepancy = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, S::zero());
    (c, len)
}

/// Minimal recursion `f_n = h₁f_{n−1} + … + h_r f_{n−r}` fitting every value.
///
/// Returns `None` when the data cannot pin a recursion down: fewer than two
/// values, or a shortest recursion of order `r` with `2r` exceeding the
/// number of values (any longer sequence fits some such recursion). The zero
/// sequence yields `h = (0)`.
pub fn infer_recurrence<S: Scalar>(values: &[S]) -> Option<Vec<S>> {
    if values.len() < 2 {
        return None;
    }
    let (c, len) = berlekamp_massey(values);
    if len == 0 {
        return Some(vec![S::zero()]);
    }
    if 2 * len > values.len() {
        return None;
    }
    Some(c[1..].iter().map(|cj| -cj.clone()).collect())
}
