//! Ribbon elements `u` and `v` of `U_h(sl_2)` and the ribbon axioms.
//!
//! Identities whose two sides resum infinitely many PBW terms into each degree
//! (`S(u) = k̄⁴u`, `S(v) = v`, `v² = S(u)u`) are compared as power series in `h`:
//! every `k^c` becomes `e^{chH/4}`, the prefactor `e^{(h/4)Q(H)}` is expanded, and
//! the coefficients of each normal-ordered `y^a x^b` must agree through `h^N`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hopf::{antipode, antipode_at, contract, coproduct, counit};
use crate::hseries::{qs_to_laurent, Poly};
use crate::pbw::{Element, Lie, Mono, PbwError, Prefactor, Rules, Term};
use crate::qcalc::qfact;
use crate::repn::{eval, eval_tensor, fundamental_rep, RepMatrix};
use crate::rmatrix::r_matrix;
use crate::scalars::{Exp, QScalar};

/// `e^{−(h/4)H²}`.
pub fn u_prefactor() -> Prefactor {
    let mut p = Prefactor::identity(1, 1);
    p.add_coupling(0, 0, -Exp::one());
    p
}

fn series_element(d: u32, sign: i64, kshift: i64) -> Element {
    let lie = Lie::new(1);
    let qq = QScalar::q() - QScalar::qbar();
    let mut out = Element::zero(1, 1);
    for n in 0..=d {
        let n64 = n as i64;
        let c = qq.pow_u(n).scale(&BigRational::from_integer(BigInt::from(sign.pow(n))))
            * qfact(n).inv().expect("[n]! is invertible")
            * QScalar::q_int_pow(-n64 * (n64 + 3) / 2);
        let mut m = Mono::one(&lie);
        m.k[0] = Exp::from_integer(-2 * n64 - kshift);
        m.y[0] = n;
        m.x[0] = n;
        out.add_term(Term { pre: u_prefactor(), monos: vec![m] }, c);
    }
    out.truncate(d)
}

/// `u = e^{−(h/4)H²} Σ_{n ≤ D} (−1)^n (q−q̄)^n/[n]! q̄^{n(n+3)/2} k̄^{2n} yⁿxⁿ`.
pub fn u_element(d: u32) -> Element {
    series_element(d, -1, 0)
}

/// `u = Σ S(β)α` from `R = Σ α ⊗ β`, cut at `x`-degree `D`.
pub fn u_from_r(d: u32) -> Result<Element, PbwError> {
    let r = r_matrix(1, d)?;
    contract(&antipode_at(&r, 1)?, 1, &Rules::default())
}

/// `v = e^{−(h/4)H²} Σ_{n ≤ D} (q̄−q)^n/[n]! q̄^{n(n+3)/2} k̄^{2(n+1)} yⁿxⁿ`.
pub fn v_element(d: u32) -> Element {
    series_element(d, -1, 2)
}

fn kbar(p: i64) -> Element {
    Element::k(1, 1, Exp::from_integer(-p)).expect("rank 1")
}

/// `k̄²·u`, the construction of `v` from `u`.
pub fn v_from_u(d: u32) -> Result<Element, PbwError> {
    kbar(2).mul(&u_element(d))
}

/// Expansion of a one-slot element: for each `(y, x)` exponent pair, the coefficients of
/// `h^p` (`p ≤ order`) as polynomials in `H_1, …, H_n`.
pub type HExpansion = BTreeMap<(Vec<u32>, Vec<u32>), BTreeMap<i64, Poly>>;

fn rat(e: Exp) -> BigRational {
    BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
}

pub fn h_expand(e: &Element, order: i64) -> HExpansion {
    assert_eq!(e.slots(), 1, "h-expansion takes a one-slot element");
    let n = e.rank();
    let mut out = HExpansion::new();
    for (t, c) in e.terms() {
        let m = &t.monos[0];
        // exponent E with k^c e^{(h/4)Q} = e^{hE}
        let mut ex = Poly::zero();
        for i in 0..n {
            ex = ex.add(&Poly::var(i, n).scale(&(rat(m.k[i]) / BigRational::from_integer(4.into()))));
        }
        for a in 0..n {
            for b in 0..n {
                let qab = t.pre.get(a, b);
                if !qab.is_zero() {
                    let mono = Poly::var(a, n).mul(&Poly::var(b, n));
                    ex = ex.add(&mono.scale(&(rat(qab) / BigRational::from_integer(4.into()))));
                }
            }
        }
        let mut hpow = Poly::constant(BigRational::one(), n);
        for (i, r) in m.h.iter().enumerate() {
            for _ in 0..*r {
                hpow = hpow.mul(&Poly::var(i, n));
            }
        }
        let (v, cs) = qs_to_laurent(c, order);
        let span = (order - v).max(0) as usize;
        let mut powers = vec![hpow];
        for j in 1..=span {
            let next = powers[j - 1].mul(&ex).scale(&BigRational::new(BigInt::one(), BigInt::from(j)));
            powers.push(next);
        }
        let slot = out.entry((m.y.clone(), m.x.clone())).or_default();
        for (i, ci) in cs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let p = v + i as i64;
            for (j, pj) in powers.iter().enumerate() {
                if p + j as i64 > order {
                    break;
                }
                let e = slot.entry(p + j as i64).or_insert_with(Poly::zero);
                *e = e.add(&pj.scale(ci));
            }
        }
    }
    for m in out.values_mut() {
        m.retain(|_, p| !p.is_zero());
    }
    out.retain(|_, m| !m.is_empty());
    out
}

/// `a = b` through `h^order` after expanding both sides.
pub fn h_adic_eq(a: &Element, b: &Element, order: i64) -> Result<bool, PbwError> {
    Ok(h_expand(&a.untruncated().sub(&b.untruncated())?, order).is_empty())
}

fn working_degree(d: u32, order: u32) -> u32 {
    d.max(order)
}

/// `S(u) = k̄⁴u` on terms of `x`-degree `≤ D`, through `h^order`.
pub fn su_check_to(d: u32, order: u32) -> Result<bool, PbwError> {
    let u = u_element(working_degree(d, order));
    let lhs = antipode(&u)?.truncate(d);
    let rhs = kbar(4).mul(&u)?.truncate(d);
    h_adic_eq(&lhs, &rhs, order as i64)
}

/// `S(u) = k̄⁴u` with the `h`-order equal to the degree.
pub fn su_check(d: u32) -> Result<bool, PbwError> {
    su_check_to(d, d)
}

/// The ribbon axioms checked by [`ribbon_axiom_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Central,
    Square,
    AntipodeFix,
    Counit,
    Coproduct,
}

impl Axiom {
    pub fn all() -> [Axiom; 5] {
        [Axiom::Central, Axiom::Square, Axiom::AntipodeFix, Axiom::Counit, Axiom::Coproduct]
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Central => "central",
            Axiom::Square => "square",
            Axiom::AntipodeFix => "antipode-fix",
            Axiom::Counit => "counit",
            Axiom::Coproduct => "coproduct",
        }
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::all().into_iter().find(|a| a.name() == s).ok_or_else(|| format!("unknown axiom '{s}'"))
    }
}

/// `[v, g] = 0` on terms of degree `≤ D` (`v` built one degree higher).
pub fn central_check(g: &Element, d: u32) -> Result<bool, PbwError> {
    let v = v_element(d + 1);
    let c = v.mul(g)?.sub(&g.mul(&v)?)?.truncate(d);
    Ok(c.is_zero())
}

/// `v² = S(u)u` on terms of degree `≤ D`, through `h^order`.
pub fn square_check_to(d: u32, order: u32) -> Result<bool, PbwError> {
    let w = working_degree(d, order);
    let v = v_element(w);
    let u = u_element(w);
    let lhs = v.mul(&v)?.truncate(d);
    let rhs = antipode(&u)?.mul(&u)?.truncate(d);
    h_adic_eq(&lhs, &rhs, order as i64)
}

/// `S(v) = v` on terms of degree `≤ D`, through `h^order`.
pub fn antipode_fix_check_to(d: u32, order: u32) -> Result<bool, PbwError> {
    let v = v_element(working_degree(d, order));
    h_adic_eq(&antipode(&v)?.truncate(d), &v.truncate(d), order as i64)
}

/// `Δ(v) = (τ(R)R)⁻¹(v ⊗ v)` on `V ⊗ V`, checked as `τ(R)·R·Δ(v) = v ⊗ v`.
pub fn coproduct_rep_check() -> Result<bool, PbwError> {
    let vrep = fundamental_rep(1);
    let reps = [&vrep, &vrep];
    // x² ≠ 0 on V ⊗ V, x³ = 0
    let v = v_element(2);
    let r = r_matrix(1, 2)?;
    let tr = eval_tensor(&r.flip(), &reps);
    let rm = eval_tensor(&r, &reps);
    let dv = eval_tensor(&coproduct(&v)?, &reps);
    let vv = eval(&v, &vrep).kron(&eval(&v, &vrep));
    Ok(tr.mul(&rm).mul(&dv) == vv)
}

/// One ribbon axiom at degree `D` (the coproduct axiom is exact in the representation).
pub fn ribbon_axiom_check(axiom: Axiom, d: u32) -> Result<bool, PbwError> {
    match axiom {
        Axiom::Central => {
            for g in [Element::x(1, 1, 1)?, Element::y(1, 1, 1)?, Element::h(1, 1)?] {
                if !central_check(&g, d)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Axiom::Square => square_check_to(d, d),
        Axiom::AntipodeFix => antipode_fix_check_to(d, d),
        Axiom::Counit => Ok(counit(&v_element(d)).is_one()),
        Axiom::Coproduct => coproduct_rep_check(),
    }
}

/// `u k̄ = k̄ u` on terms of degree `≤ D`.
pub fn u_commutes_with_kbar(d: u32) -> Result<bool, PbwError> {
    let u = u_element(d);
    Ok(u.mul(&kbar(1))? == kbar(1).mul(&u)?)
}

/// `S²(g)·u = u·g` for `g ∈ {x, y, H, k}` in the two-dimensional representation.
pub fn s2_conjugation_rep() -> Result<bool, PbwError> {
    let v = fundamental_rep(1);
    let u = eval(&u_element(1), &v);
    for g in [Element::x(1, 1, 1)?, Element::y(1, 1, 1)?, Element::h(1, 1)?, Element::k(1, 1, Exp::one())?] {
        let s2 = antipode(&antipode(&g)?)?;
        if eval(&s2, &v).mul(&u) != u.mul(&eval(&g, &v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v` on the two-dimensional representation (exact: `x² = 0` there).
pub fn v_rep() -> RepMatrix {
    eval(&v_element(1), &fundamental_rep(1))
}

/// `v² = S(u)u` as matrices on the two-dimensional representation.
pub fn square_rep_check() -> Result<bool, PbwError> {
    let vrep = fundamental_rep(1);
    let u = u_element(1);
    let v = v_rep();
    Ok(v.mul(&v) == eval(&antipode(&u)?, &vrep).mul(&eval(&u, &vrep)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yx_coeff(e: &Element, kpow: i64) -> QScalar {
        let lie = Lie::new(1);
        let mut m = Mono::one(&lie);
        m.k[0] = Exp::from_integer(kpow);
        m.y[0] = 1;
        m.x[0] = 1;
        e.coeff(&Term { pre: u_prefactor(), monos: vec![m] })
    }

    #[test]
    fn u_examples() {
        assert_eq!(u_element(0), Element::prefactor(1, u_prefactor()).truncate(0));
        let qq = QScalar::q() - QScalar::qbar();
        assert_eq!(yx_coeff(&u_element(1), -2), -(qq.clone() * QScalar::q_int_pow(-2)));
        assert_eq!(yx_coeff(&v_element(1), -4), (QScalar::qbar() - QScalar::q()) * QScalar::q_int_pow(-2));
    }

    #[test]
    fn u_definition_path() {
        for d in 0..=4 {
            assert_eq!(u_from_r(d).unwrap(), u_element(d), "D={d}");
        }
    }

    #[test]
    fn v_is_kbar2_u() {
        for d in 0..=4 {
            assert_eq!(v_from_u(d).unwrap(), v_element(d));
        }
    }

    #[test]
    fn antipode_of_u() {
        for d in [0, 2, 4] {
            assert!(su_check(d).unwrap(), "D={d}");
        }
        // the truncated identity without h-adic resummation fails already at D = 1
        let u = u_element(1);
        assert_ne!(antipode(&u).unwrap(), kbar(4).mul(&u).unwrap());
    }

    #[test]
    fn h_adic_controls() {
        let u = u_element(4);
        let su = antipode(&u).unwrap().truncate(4);
        assert!(h_adic_eq(&su, &kbar(4).mul(&u).unwrap().truncate(4), 4).unwrap());
        assert!(!h_adic_eq(&su, &kbar(2).mul(&u).unwrap().truncate(4), 4).unwrap());
        // a change of order h^3 is seen at order 3, not at order 2
        let bump = u.scale(&(QScalar::q() - QScalar::qbar()).pow_u(3));
        let moved = su.add(&bump).unwrap();
        assert!(h_adic_eq(&moved, &kbar(4).mul(&u).unwrap().truncate(4), 2).unwrap());
        assert!(!h_adic_eq(&moved, &kbar(4).mul(&u).unwrap().truncate(4), 3).unwrap());
    }

    #[test]
    fn degree_six() {
        assert!(su_check(6).unwrap());
        assert!(square_check_to(6, 6).unwrap());
        assert!(antipode_fix_check_to(6, 6).unwrap());
        assert!(u_commutes_with_kbar(6).unwrap());
        assert!(central_check(&Element::x(1, 1, 1).unwrap(), 4).unwrap());
    }

    #[test]
    fn axioms_low_degree() {
        for a in Axiom::all() {
            assert!(ribbon_axiom_check(a, 3).unwrap(), "{}", a.name());
        }
        assert!(u_commutes_with_kbar(4).unwrap());
    }

    #[test]
    fn representation_checks() {
        assert!(s2_conjugation_rep().unwrap());
        assert!(square_rep_check().unwrap());
        let c = v_rep().scalar_value().expect("v acts by a scalar");
        assert_eq!(c, QScalar::q_pow(Exp::new(-3, 2)));
    }
}
