//! Quantum and classical q-combinatorics, q-commuting normal forms and the
//! finite identity families (separation, bimodal, Cauchy, exponential laws).

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::hseries::cauchy_exp_check;
use crate::scalars::{big, qint_laurent, Exp, LaurentPoly, QScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcalcError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{0}` expects {1} integer parameters")]
    BadParams(String, usize),
}

/// `[n] = (q^n - q̄^n)/(q - q̄)`.
pub fn qint(n: i64) -> QScalar {
    QScalar::from_laurent(qint_laurent(n))
}

/// `[n]! = [1][2]…[n]`.
pub fn qfact(n: u32) -> QScalar {
    (1..=n as i64).fold(QScalar::one(), |acc, i| &acc * &qint(i))
}

/// Falling product `[n]_k = [n][n-1]…[n-k+1]`.
pub fn qfalling(n: i64, k: u32) -> QScalar {
    (0..k as i64).fold(QScalar::one(), |acc, i| &acc * &qint(n - i))
}

/// Symmetric quantum binomial `[n]_k / [k]!`; a Laurent polynomial for every integer `n`.
pub fn qbinom(n: i64, k: u32) -> QScalar {
    let r = qfalling(n, k).div(&qfact(k)).expect("[k]! is a product of cyclotomic factors");
    debug_assert!(r.as_laurent().is_some(), "quantum binomial must be a Laurent polynomial");
    r
}

/// `(n)_Q = (1 - Q^n)/(1 - Q)` with `Q = q^base`.
pub fn cnum_base(n: i64, base: i64) -> QScalar {
    let p = if n >= 0 {
        LaurentPoly::from_terms((0..n).map(|i| (Exp::from_integer(i * base), big(1))))
    } else {
        LaurentPoly::from_terms((n..0).map(|i| (Exp::from_integer(i * base), big(-1))))
    };
    QScalar::from_laurent(p)
}

pub fn cfact_base(n: u32, base: i64) -> QScalar {
    (1..=n as i64).fold(QScalar::one(), |acc, i| &acc * &cnum_base(i, base))
}

/// Gaussian binomial in `Q = q^base`: `Π_{i<k}(n-i)_Q / (k)!_Q`.
pub fn cbinom_base(n: i64, k: u32, base: i64) -> QScalar {
    let num = (0..k as i64).fold(QScalar::one(), |acc, i| &acc * &cnum_base(n - i, base));
    num.div(&cfact_base(k, base)).expect("(k)!_Q is a product of cyclotomic factors")
}

/// Gaussian binomial `binom(n,k)_q`.
pub fn cbinom(n: i64, k: u32) -> QScalar {
    cbinom_base(n, k, 1)
}

pub fn cfact(n: u32) -> QScalar {
    cfact_base(n, 1)
}

/// `Σ_{π ∈ S_n} q^{inv(π)}` by enumeration.
pub fn inversion_polynomial(n: usize) -> QScalar {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    loop {
        let mut inv = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        *counts.entry(inv).or_insert(0) += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    QScalar::from_laurent(LaurentPoly::from_terms(counts.into_iter().map(|(e, c)| (Exp::from_integer(e), big(c)))))
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Generating polynomial of between-set inversions over ordered bipartitions of type `(r, n-r)`.
pub fn bipartition_inversions(n: u32, r: u32) -> QScalar {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() != r {
            continue;
        }
        let mut inv = 0i64;
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            for j in 0..i {
                if mask & (1 << j) == 0 {
                    inv += 1;
                }
            }
        }
        *counts.entry(inv).or_insert(0) += 1;
    }
    QScalar::from_laurent(LaurentPoly::from_terms(counts.into_iter().map(|(e, c)| (Exp::from_integer(e), big(c)))))
}

/// Commutative polynomial in `nvars` symbols with `QScalar` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, QScalar>,
}

impl QPoly {
    pub fn zero(nvars: usize) -> Self {
        QPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: QScalar, nvars: usize) -> Self {
        let mut p = QPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        QPoly::constant(QScalar::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = QPoly::zero(nvars);
        p.add_term(e, QScalar::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &QScalar) -> QPoly {
        let mut r = QPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c * s);
        }
        r
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        let mut r = QPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                r.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `Q_n(x,y) = Π_{i<n} (y + x q^i)` where `x`, `y` are given as polynomials.
pub fn qn_product_of(x: &QPoly, y: &QPoly, n: u32) -> QPoly {
    let mut p = QPoly::one(x.nvars);
    for i in 0..n {
        p = p.mul(&y.add(&x.scale(&QScalar::q_int_pow(i as i64))));
    }
    p
}

/// `Q_n(x,y)` in the two symbols `(x, y)`.
pub fn qn_product(n: u32) -> QPoly {
    qn_product_of(&QPoly::var(0, 2), &QPoly::var(1, 2), n)
}

/// Polynomial in q-commuting `a`, `b` with `a·b = σ·b·a`, stored in normal order `a^i b^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCommPoly {
    sigma: Exp,
    terms: BTreeMap<(u32, u32), QScalar>,
}

impl QCommPoly {
    /// The zero polynomial for the relation `ab = q^{sigma} ba`.
    pub fn zero(sigma: Exp) -> Self {
        QCommPoly { sigma, terms: BTreeMap::new() }
    }

    pub fn monomial(sigma: Exp, i: u32, j: u32, c: QScalar) -> Self {
        let mut p = QCommPoly::zero(sigma);
        p.add_term((i, j), c);
        p
    }

    pub fn one(sigma: Exp) -> Self {
        QCommPoly::monomial(sigma, 0, 0, QScalar::one())
    }

    pub fn a(sigma: Exp) -> Self {
        QCommPoly::monomial(sigma, 1, 0, QScalar::one())
    }

    pub fn b(sigma: Exp) -> Self {
        QCommPoly::monomial(sigma, 0, 1, QScalar::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &QScalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, k: (u32, u32), c: QScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(QScalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &QCommPoly) -> QCommPoly {
        assert_eq!(self.sigma, o.sigma, "mixed commutation relations");
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &QScalar) -> QCommPoly {
        let mut r = QCommPoly::zero(self.sigma);
        for (k, c) in &self.terms {
            r.add_term(*k, c * s);
        }
        r
    }

    /// Product, re-normalized with `b^j a^k = σ^{-jk} a^k b^j`; terms of total degree above `deg` are dropped.
    pub fn mul_trunc(&self, o: &QCommPoly, deg: u32) -> QCommPoly {
        assert_eq!(self.sigma, o.sigma, "mixed commutation relations");
        let mut r = QCommPoly::zero(self.sigma);
        for ((i, j), c1) in &self.terms {
            for ((k, l), c2) in &o.terms {
                if i + j + k + l > deg {
                    continue;
                }
                let f = self.sigma * Exp::from_integer(-((j * k) as i64));
                r.add_term((i + k, j + l), (c1 * c2).shift(f));
            }
        }
        r
    }

    pub fn truncate(&self, deg: u32) -> QCommPoly {
        QCommPoly {
            sigma: self.sigma,
            terms: self.terms.iter().filter(|((i, j), _)| i + j <= deg).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }
}

/// Coefficients `c_m` of a univariate exponential-type series `Σ c_m x^m`.
pub fn exp_series_coeffs(quantum: bool, n: u32) -> Vec<QScalar> {
    (0..=n)
        .map(|m| {
            if quantum {
                QScalar::q_pow(Exp::new((m * m.saturating_sub(1)) as i64, 2))
                    .div(&qfact(m))
                    .expect("cyclotomic divisor")
            } else {
                QScalar::one().div(&cfact(m)).expect("cyclotomic divisor")
            }
        })
        .collect()
}

fn apply_series(x: &QCommPoly, coeffs: &[QScalar], deg: u32) -> QCommPoly {
    let mut out = QCommPoly::zero(x.sigma);
    let mut power = QCommPoly::one(x.sigma);
    for (m, c) in coeffs.iter().enumerate() {
        if m > 0 {
            power = power.mul_trunc(x, deg);
        }
        out = out.add(&power.scale(c));
    }
    out
}

/// `exp_q(x) = Σ x^m/(m)!_q` through total degree `n`.
pub fn qexp_trunc(x: &QCommPoly, n: u32) -> QCommPoly {
    apply_series(x, &exp_series_coeffs(false, n), n)
}

/// `Exp_q(x) = Σ q^{m(m-1)/2} x^m/[m]!` through total degree `n`.
pub fn big_exp_trunc(x: &QCommPoly, n: u32) -> QCommPoly {
    apply_series(x, &exp_series_coeffs(true, n), n)
}

/// `exp_q(a+b) = exp_q(a)·exp_q(b)` to degree `n` for `ab = q^{sigma} ba`.
pub fn exp_product_law(sigma: Exp, n: u32) -> bool {
    let a = QCommPoly::a(sigma);
    let b = QCommPoly::b(sigma);
    qexp_trunc(&a.add(&b), n) == qexp_trunc(&a, n).mul_trunc(&qexp_trunc(&b, n), n)
}

/// `Exp_q(a+b) = Exp_q(a)·Exp_q(b)` to degree `n` for `ab = q^{sigma} ba`.
pub fn big_exp_product_law(sigma: Exp, n: u32) -> bool {
    let a = QCommPoly::a(sigma);
    let b = QCommPoly::b(sigma);
    big_exp_trunc(&a.add(&b), n) == big_exp_trunc(&a, n).mul_trunc(&big_exp_trunc(&b, n), n)
}

/// Bimodal permutation identity in commuting `w, x, y, z`.
pub fn bimodal_check(n: u32) -> bool {
    let v = |i| QPoly::var(i, 4);
    let (w, x, y, z) = (v(0), v(1), v(2), v(3));
    let mut lhs = QPoly::zero(4);
    let mut rhs = QPoly::zero(4);
    for k in 0..=n {
        let c = cbinom(n as i64, k);
        lhs = lhs.add(&qn_product_of(&x, &y, k).mul(&qn_product_of(&w, &z, n - k)).scale(&c));
        rhs = rhs.add(&qn_product_of(&w, &y, k).mul(&qn_product_of(&x, &z, n - k)).scale(&c));
    }
    lhs == rhs
}

/// q-binomial corollary `Q_n(-x,z) = Σ binom(n,k)_q Q_k(-x,y) Q_{n-k}(-y,z)`.
pub fn q_binomial_check(n: u32) -> bool {
    let v = |i| QPoly::var(i, 3);
    let neg = |p: &QPoly| p.scale(&QScalar::from_int(-1));
    let (x, y, z) = (v(0), v(1), v(2));
    let lhs = qn_product_of(&neg(&x), &z, n);
    let mut rhs = QPoly::zero(3);
    for k in 0..=n {
        rhs = rhs.add(&qn_product_of(&neg(&x), &y, k).mul(&qn_product_of(&neg(&y), &z, n - k)).scale(&cbinom(n as i64, k)));
    }
    lhs == rhs
}

fn z_minus_powers(k: u32) -> QPoly {
    let z = QPoly::var(0, 1);
    let mut p = QPoly::one(1);
    for i in 0..k {
        p = p.mul(&z.add(&QPoly::constant(-QScalar::q_int_pow(i as i64), 1)));
    }
    p
}

/// `z^n = Σ binom(n,k)_q Π_{i<k}(z - q^i)`.
pub fn cauchy_i_check(n: u32) -> bool {
    let mut zn = QPoly::one(1);
    for _ in 0..n {
        zn = zn.mul(&QPoly::var(0, 1));
    }
    let mut rhs = QPoly::zero(1);
    for k in 0..=n {
        rhs = rhs.add(&z_minus_powers(k).scale(&cbinom(n as i64, k)));
    }
    zn == rhs
}

/// `Π_{i<n}(z - q^i) = Σ (-1)^k binom(n,k)_q q^{k(k-1)/2} z^{n-k}`.
pub fn cauchy_ii_check(n: u32) -> bool {
    let mut rhs = QPoly::zero(1);
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = cbinom(n as i64, k).scale(&big(sign)).shift(Exp::from_integer((k * k.saturating_sub(1) / 2) as i64));
        let mut e = vec![0u32; 1];
        e[0] = n - k;
        let mut t = QPoly::zero(1);
        t.add_term(e, c);
        rhs = rhs.add(&t);
    }
    z_minus_powers(n) == rhs
}

/// Conversions `[n] = q̄^{n-1}(n)_{q²}`, `[n]! = q̄^{n(n-1)/2}(n)!_{q²}`, `Qbinom = q̄^{k(n-k)} binom_{q²}`.
pub fn conversion_check(n: u32, k: u32) -> bool {
    let ni = n as i64;
    let ki = k as i64;
    let a = qint(ni) == cnum_base(ni, 2).shift(Exp::from_integer(1 - ni));
    let b = qfact(n) == cfact_base(n, 2).shift(Exp::from_integer(-(ni * (ni - 1) / 2)));
    let c = k > n || qbinom(ni, k) == cbinom_base(ni, k, 2).shift(Exp::from_integer(-ki * (ni - ki)));
    a && b && c
}

/// `binom(n+s,s)_{q²} = (-1)^s binom(-(n+1),s)_{q²} q^{s(2n+s+1)}`.
pub fn negative_binomial_check(n: i64, s: u32) -> bool {
    let si = s as i64;
    let lhs = cbinom_base(n + si, s, 2);
    let sign = if s % 2 == 0 { 1 } else { -1 };
    let rhs = cbinom_base(-(n + 1), s, 2).scale(&big(sign)).shift(Exp::from_integer(si * (2 * n + si + 1)));
    lhs == rhs
}

/// Separation lemma at integer arguments.
pub fn separation_check(part: u8, x: i64, y: i64, a: i64) -> bool {
    match part {
        1 => qint(-x) == -qint(x),
        2 => &qint(x) * &qint(y) - &qint(x - a) * &qint(y + a) == &qint(a) * &qint(y - x + a),
        3 => &qint(x) * &qint(y) + &qint(a) * &qint(x + y + a) == &qint(x + a) * &qint(y + a),
        _ => false,
    }
}

/// Names accepted by [`verify_q_identity`] with their parameter counts.
pub const IDENTITIES: &[(&str, usize)] = &[
    ("separation-i", 1),
    ("separation-ii", 3),
    ("separation-iii", 3),
    ("exp-product", 1),
    ("exp-product-printed", 1),
    ("quantum-exp-product", 1),
    ("bimodal", 1),
    ("q-binomial", 1),
    ("cauchy-i", 1),
    ("cauchy-ii", 1),
    ("cauchy-exp", 2),
    ("conversion", 2),
    ("negative-binomial", 2),
    ("inversions", 1),
    ("bipartitions", 2),
];

/// Check a named identity at the given integer parameters.
///
/// `exp-product` uses `ba = q·ab`, the relation under which the between-set
/// inversion count produces the factor `q`; `exp-product-printed` uses
/// `ab = q·ba` and is expected to fail from degree 2 on.
pub fn verify_q_identity(name: &str, params: &[i64]) -> Result<bool, QcalcError> {
    let want = IDENTITIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| *k)
        .ok_or_else(|| QcalcError::UnknownIdentity(name.to_string()))?;
    if params.len() != want {
        return Err(QcalcError::BadParams(name.to_string(), want));
    }
    let p = params;
    let u = |i: usize| p[i].max(0) as u32;
    Ok(match name {
        "separation-i" => separation_check(1, p[0], 0, 0),
        "separation-ii" => separation_check(2, p[0], p[1], p[2]),
        "separation-iii" => separation_check(3, p[0], p[1], p[2]),
        "exp-product" => exp_product_law(-Exp::one(), u(0)),
        "exp-product-printed" => exp_product_law(Exp::one(), u(0)),
        "quantum-exp-product" => big_exp_product_law(Exp::from_integer(2), u(0)),
        "bimodal" => bimodal_check(u(0)),
        "q-binomial" => q_binomial_check(u(0)),
        "cauchy-i" => cauchy_i_check(u(0)),
        "cauchy-ii" => cauchy_ii_check(u(0)),
        "cauchy-exp" => cauchy_exp_check(u(0) as usize, u(1) as usize),
        "conversion" => conversion_check(u(0), u(1)),
        "negative-binomial" => negative_binomial_check(p[0], u(1)),
        "inversions" => inversion_polynomial(u(0) as usize) == cfact(u(0)),
        "bipartitions" => bipartition_inversions(u(0), u(1)) == cbinom(p[0], u(1)),
        _ => unreachable!(),
    })
}

/// Rational number helper.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }
    fn qp(e: i64) -> QScalar {
        QScalar::q_int_pow(e)
    }

    #[test]
    fn quantum_integers() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(3), qp(2) + QScalar::one() + qp(-2));
        assert_eq!(qint(-4), -qint(4));
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(qfact(3), (q() + QScalar::qbar()) * (qp(2) + QScalar::one() + qp(-2)));
        assert_eq!(qbinom(4, 2), qp(4) + qp(2) + QScalar::from_int(2) + qp(-2) + qp(-4));
        assert!(qbinom(-3, 0).is_one());
        assert!(qbinom(2, 3).is_zero());
        assert_eq!(cbinom(2, 1), QScalar::one() + q());
        assert!(cbinom(6, 6).is_one());
        assert_eq!(qbinom(5, 2), cbinom_base(5, 2, 2).shift(Exp::from_integer(-6)));
        assert!(qbinom(-3, 2).as_laurent().is_some());
    }

    #[test]
    fn exp_coefficients() {
        let c = exp_series_coeffs(false, 2);
        assert!(c[0].is_one());
        assert_eq!(c[2], (QScalar::one() + q()).inv().unwrap());
        let e = exp_series_coeffs(true, 2);
        assert_eq!(e[2], q().div(&(q() + QScalar::qbar())).unwrap());
        let x = QCommPoly::a(Exp::one());
        assert_eq!(qexp_trunc(&x, 0), QCommPoly::one(Exp::one()));
    }

    #[test]
    fn qn_products() {
        assert_eq!(qn_product(0), QPoly::one(2));
        assert_eq!(qn_product(1), QPoly::var(0, 2).add(&QPoly::var(1, 2)));
        let x = QPoly::var(0, 2);
        let y = QPoly::var(1, 2);
        let expect = y.mul(&y).add(&x.mul(&y).scale(&(QScalar::one() + q()))).add(&x.mul(&x).scale(&q()));
        assert_eq!(qn_product(2), expect);
    }

    #[test]
    fn combinatorial_oracles() {
        assert!(inversion_polynomial(0).is_one());
        assert_eq!(inversion_polynomial(2), QScalar::one() + q());
        assert_eq!(inversion_polynomial(3), QScalar::one() + q().scale(&big(2)) + qp(2).scale(&big(2)) + qp(3));
        assert_eq!(bipartition_inversions(2, 1), QScalar::one() + q());
        assert!(bipartition_inversions(5, 0).is_one());
        assert_eq!(bipartition_inversions(4, 2), cbinom(4, 2));
    }

    #[test]
    fn named_identities() {
        assert_eq!(verify_q_identity("separation-ii", &[3, 5, 2]), Ok(true));
        assert_eq!(verify_q_identity("cauchy-i", &[4]), Ok(true));
        assert_eq!(verify_q_identity("bimodal", &[0]), Ok(true));
        assert_eq!(verify_q_identity("nope", &[]), Err(QcalcError::UnknownIdentity("nope".into())));
        assert!(matches!(verify_q_identity("bimodal", &[1, 2]), Err(QcalcError::BadParams(_, 1))));
    }

    #[test]
    fn exponential_laws() {
        assert!(exp_product_law(-Exp::one(), 5));
        assert!(!exp_product_law(Exp::one(), 2));
        assert!(big_exp_product_law(Exp::from_integer(2), 5));
    }

    #[test]
    fn identity_families_small() {
        for n in 0..=4 {
            assert!(bimodal_check(n), "bimodal {n}");
            assert!(q_binomial_check(n), "q-binomial {n}");
            assert!(cauchy_i_check(n) && cauchy_ii_check(n), "cauchy {n}");
        }
        for n in 0..=6 {
            for k in 0..=n {
                assert!(conversion_check(n, k));
            }
        }
        for n in -2..=3 {
            for s in 0..=4 {
                assert!(negative_binomial_check(n, s), "negative binomial {n} {s}");
            }
        }
        for x in -4..=4 {
            for y in -4..=4 {
                for a in -4..=4 {
                    assert!(separation_check(2, x, y, a) && separation_check(3, x, y, a));
                }
            }
        }
    }
}
