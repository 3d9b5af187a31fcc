//! H-brackets, H-binomials and the closed form of `x^a y^b` in rank 1.

use super::{Element, Lie, Mono};
use crate::qcalc::{qfact, qfalling};
use crate::scalars::{Exp, QScalar};

/// `[H_i + c] = (q^c k_i² − q̄^c k̄_i²)/(q − q̄)` in rank `rank`.
pub fn hbracket(rank: usize, i: usize, c: i64) -> Element {
    let lie = Lie::new(rank);
    let inv = (QScalar::q() - QScalar::qbar()).inv().expect("q - 1/q is invertible");
    let mut out = Element::zero(rank, 1);
    for (sign, e) in [(1i64, 2i64), (-1, -2)] {
        let mut m = Mono::one(&lie);
        m.k[i - 1] = Exp::from_integer(e);
        let c = QScalar::q_int_pow(sign * c).scale(&crate::scalars::big(sign)) * &inv;
        out = out.add(&Element::from_mono(rank, m, c)).expect("same shape");
    }
    out
}

/// `⌈H_i + c choose m⌉ = [H_i+c][H_i+c−1]⋯[H_i+c−m+1] / [m]!`.
pub fn hbinom(rank: usize, i: usize, c: i64, m: u32) -> Element {
    let mut p = Element::one(rank, 1);
    for t in 0..m as i64 {
        p = p.mul(&hbracket(rank, i, c - t)).expect("Cartan product");
    }
    let f = qfact(m).inv().expect("[m]! is invertible");
    p.scale(&f)
}

/// `G_{a,b,t} = [a]_t [b]_t ⌈H + b − a choose t⌉` (falling quantum factorials).
pub fn g_element(a: u32, b: u32, t: u32) -> Element {
    if t > a || t > b {
        return Element::zero(1, 1);
    }
    let c = qfalling(a as i64, t) * qfalling(b as i64, t);
    hbinom(1, 1, b as i64 - a as i64, t).scale(&c)
}

/// `x^a y^b = Σ_t G_{a,b,t} y^{b−t} x^{a−t}` in `U_h(sl_2)`.
pub fn straighten_xa_yb(a: u32, b: u32) -> Element {
    let lie = Lie::new(1);
    let mut out = Element::zero(1, 1);
    for t in 0..=a.min(b) {
        let mut m = Mono::one(&lie);
        m.y[0] = b - t;
        m.x[0] = a - t;
        let word = Element::from_mono(1, m, QScalar::one());
        let term = g_element(a, b, t).mul(&word).expect("Cartan times monomial");
        out = out.add(&term).expect("same shape");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::{straighten_word, Gen, Interval};
    use crate::qcalc::qint;

    #[test]
    fn bracket_identity() {
        // [a+1][H+a] = [H] + [a][H+a+1] at a = 2
        let lhs = hbracket(1, 1, 2).scale(&qint(3));
        let rhs = hbracket(1, 1, 0).add(&hbracket(1, 1, 3).scale(&qint(2))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hbinom_small() {
        assert_eq!(hbinom(1, 1, 5, 0), Element::one(1, 1));
        assert_eq!(hbinom(1, 1, 0, 1), hbracket(1, 1, 0));
        let h2 = hbinom(1, 1, 1, 2);
        assert_eq!(h2.len(), 3);
        let direct = hbracket(1, 1, 1).mul(&hbracket(1, 1, 0)).unwrap();
        assert_eq!(h2.scale(&qint(2)), direct);
    }

    #[test]
    fn closed_form_examples() {
        let x = Element::x(1, 1, 1).unwrap();
        let y = Element::y(1, 1, 1).unwrap();
        let yx = y.mul(&x).unwrap();
        assert_eq!(straighten_xa_yb(1, 1), yx.add(&hbracket(1, 1, 0)).unwrap());
        assert_eq!(straighten_xa_yb(0, 3), y.pow(3).unwrap());
        let mut expect = Element::zero(1, 1);
        for t in 0..=2u32 {
            let c = qfalling(2, t).pow_u(2);
            let w = y.pow(2 - t).unwrap().mul(&x.pow(2 - t).unwrap()).unwrap();
            expect = expect.add(&hbinom(1, 1, 0, t).scale(&c).mul(&w).unwrap()).unwrap();
        }
        assert_eq!(straighten_xa_yb(2, 2), expect);
    }

    #[test]
    fn rewriter_matches_closed_form() {
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let w = [(Gen::X(Interval(1, 1)), a as i64), (Gen::Y(Interval(1, 1)), b as i64)];
                assert_eq!(straighten_word(&w, 1).unwrap(), straighten_xa_yb(a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn g_recurrence() {
        // G_{a,b,t} = G_{a-1,b-1,t} + [a+b-t][H+b-a-t+1] G_{a-1,b-1,t-1}
        for a in 1..=5u32 {
            for b in 1..=5u32 {
                for t in 1..=a.min(b) {
                    let rhs = g_element(a - 1, b - 1, t)
                        .add(
                            &hbracket(1, 1, b as i64 - a as i64 - t as i64 + 1)
                                .scale(&qint((a + b - t) as i64))
                                .mul(&g_element(a - 1, b - 1, t - 1))
                                .unwrap(),
                        )
                        .unwrap();
                    assert_eq!(g_element(a, b, t), rhs, "a={a} b={b} t={t}");
                }
            }
        }
        assert!(!g_element(0, 0, 0).is_zero());
    }
}
