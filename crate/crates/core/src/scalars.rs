//! Exact ground-ring arithmetic in the formal variable `q = e^{h/2}`.
//!
//! A [`QScalar`] is a finite combination of rational powers of `q` with rational
//! coefficients, divided by a product of cyclotomic polynomials `Φ_d(q)`.  The
//! denominators are what quantum factorials and `1/(q - q̄)` produce; every
//! such denominator is a product of cyclotomic factors, and keeping them in
//! factored form gives a canonical representation without polynomial gcds.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exponent of `q`: an exact rational.
pub type Exp = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor {0} is not a monomial times cyclotomic polynomials in q")]
    NonCyclotomicDivisor(String),
    #[error("scalar {0} has a pole at h = 0")]
    PoleAtZero(String),
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn exp(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

/// Finite sum `Σ c_e q^e` with rational exponents, stored zero-free and ordered by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Exp, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigRational::one(), Exp::zero())
    }

    pub fn monomial(c: BigRational, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, BigRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, e: Exp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, other: &LaurentPoly, s: &BigRational) {
        for (e, c) in &other.terms {
            self.add_term(*e, c * s);
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> LaurentPoly {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: Exp) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect() }
    }

    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-*e, c.clone())).collect() }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn as_monomial(&self) -> Option<(&BigRational, Exp)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    pub fn min_exp(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<Exp> {
        self.terms.keys().next_back().copied()
    }

    /// Split into classes `q^c · P_c(q)` with `c ∈ [0,1)` and `P_c` dense in integer powers.
    /// Each class is returned as (c, lowest integer power, ascending coefficients).
    fn classes(&self) -> Vec<(Exp, i64, Vec<BigRational>)> {
        let mut by_class: BTreeMap<Exp, Vec<(i64, &BigRational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let fl = e.floor();
            by_class.entry(e - fl).or_default().push((fl.to_integer(), c));
        }
        by_class
            .into_iter()
            .map(|(c, list)| {
                let lo = list.iter().map(|t| t.0).min().unwrap();
                let hi = list.iter().map(|t| t.0).max().unwrap();
                let mut dense = vec![BigRational::zero(); (hi - lo + 1) as usize];
                for (p, v) in list {
                    dense[(p - lo) as usize] = v.clone();
                }
                (c, lo, dense)
            })
            .collect()
    }

    /// Exact quotient by `Φ_d(q)`, or `None` when it does not divide.
    pub fn div_cyclotomic(&self, d: u32) -> Option<LaurentPoly> {
        let phi = cyclotomic(d);
        let m = phi.len() - 1;
        let mut out = LaurentPoly::zero();
        for (c, lo, mut v) in self.classes() {
            if v.len() <= m {
                return None;
            }
            let qlen = v.len() - m;
            let mut quot = vec![BigRational::zero(); qlen];
            for i in (m..v.len()).rev() {
                let lead = std::mem::take(&mut v[i]);
                if lead.is_zero() {
                    continue;
                }
                for (j, pj) in phi.iter().enumerate().take(m) {
                    if *pj != 0 {
                        v[i - m + j] -= &lead * big(*pj);
                    }
                }
                quot[i - m] = lead;
            }
            if v[..m].iter().any(|x| !x.is_zero()) {
                return None;
            }
            for (k, val) in quot.into_iter().enumerate() {
                out.add_term(c + Exp::from_integer(lo + k as i64), val);
            }
        }
        Some(out)
    }

    pub fn from_dense_int(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_terms(
            coeffs.iter().enumerate().map(|(i, c)| (Exp::from_integer(i as i64), big(*c))),
        )
    }
}

thread_local! {
    static CYCLO: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients (ascending) of the cyclotomic polynomial `Φ_d`.
pub fn cyclotomic(d: u32) -> Rc<Vec<i64>> {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = CYCLO.with(|c| c.borrow().get(&d).cloned()) {
        return p;
    }
    // Φ_d = (q^d - 1) / Π_{e | d, e < d} Φ_e
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d % e == 0 {
            let phi = cyclotomic(e);
            num = div_monic_int(&num, &phi);
        }
    }
    let rc = Rc::new(num);
    CYCLO.with(|c| c.borrow_mut().insert(d, rc.clone()));
    rc
}

fn div_monic_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let m = den.len() - 1;
    let mut v = num.to_vec();
    let mut quot = vec![0i64; v.len() - m];
    for i in (m..v.len()).rev() {
        let lead = v[i];
        quot[i - m] = lead;
        for j in 0..=m {
            v[i - m + j] -= lead * den[j];
        }
    }
    debug_assert!(v.iter().all(|x| *x == 0));
    quot
}

fn cyclotomic_poly(d: u32) -> LaurentPoly {
    LaurentPoly::from_dense_int(&cyclotomic(d))
}

/// Element of `Q(q^{1/∞})` of the form `N / Π Φ_d(q)^{e_d}` kept in canonical form:
/// no listed `Φ_d` divides the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QScalar {
    num: LaurentPoly,
    den: BTreeMap<u32, u32>,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar::default()
    }

    pub fn one() -> Self {
        QScalar::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_laurent(LaurentPoly::monomial(big(n), Exp::zero()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        QScalar::from_laurent(LaurentPoly::monomial(c, Exp::zero()))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        QScalar { num, den: BTreeMap::new() }
    }

    pub fn monomial(c: BigRational, e: Exp) -> Self {
        QScalar::from_laurent(LaurentPoly::monomial(c, e))
    }

    pub fn q() -> Self {
        QScalar::q_pow(Exp::one())
    }

    pub fn qbar() -> Self {
        QScalar::q_pow(-Exp::one())
    }

    pub fn q_pow(e: Exp) -> Self {
        QScalar::monomial(BigRational::one(), e)
    }

    pub fn q_int_pow(e: i64) -> Self {
        QScalar::q_pow(Exp::from_integer(e))
    }

    /// Build `num / Π Φ_d^{e_d}` and reduce to canonical form.
    pub fn from_parts(num: LaurentPoly, den: BTreeMap<u32, u32>) -> Self {
        let mut s = QScalar { num, den };
        s.reduce();
        s
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<u32> = self.den.keys().copied().collect();
        for d in keys {
            let e = self.den.get_mut(&d).unwrap();
            while *e > 0 {
                match self.num.div_cyclotomic(d) {
                    Some(qt) => {
                        self.num = qt;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num == LaurentPoly::one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Cyclotomic factorization of the denominator: index `d` to multiplicity.
    pub fn denominator_factors(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn denominator_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        for (d, e) in &self.den {
            p = p.mul(&cyclotomic_poly(*d).pow(*e));
        }
        p
    }

    /// The scalar as a Laurent polynomial, when its denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// `(c, e)` when the scalar is exactly `c·q^e`.
    pub fn as_monomial(&self) -> Option<(&BigRational, Exp)> {
        if self.den.is_empty() {
            self.num.as_monomial()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> QScalar {
        if c.is_zero() {
            return QScalar::zero();
        }
        QScalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by `q^e` (cheap: the canonical form is preserved).
    pub fn shift(&self, e: Exp) -> QScalar {
        QScalar { num: self.num.shift(e), den: self.den.clone() }
    }

    pub fn bar(&self) -> QScalar {
        let mut num = self.num.bar();
        for (d, e) in &self.den {
            let deg = (cyclotomic(*d).len() - 1) as i64;
            num = num.shift(Exp::from_integer(deg * *e as i64));
            if *d == 1 && e % 2 == 1 {
                num = num.neg();
            }
        }
        QScalar { num, den: self.den.clone() }
    }

    /// Write `num` as `c·q^e·Π Φ_d^{f_d}` when possible.
    fn factor_numerator(&self) -> Result<(BigRational, Exp, BTreeMap<u32, u32>), ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let classes = self.num.classes();
        if classes.len() != 1 {
            return Err(ScalarError::NonCyclotomicDivisor(self.to_string()));
        }
        let (c, lo, dense) = classes.into_iter().next().unwrap();
        let shift = c + Exp::from_integer(lo);
        let mut p = LaurentPoly::from_terms(
            dense.into_iter().enumerate().map(|(i, v)| (Exp::from_integer(i as i64), v)),
        );
        let mut factors = BTreeMap::new();
        let mut d = 1u32;
        loop {
            let deg = p.max_exp().unwrap().to_integer();
            if deg == 0 {
                break;
            }
            let bound = 2 * (deg as u32) * (deg as u32) + 2;
            if d > bound {
                return Err(ScalarError::NonCyclotomicDivisor(self.to_string()));
            }
            match p.div_cyclotomic(d) {
                Some(qt) => {
                    p = qt;
                    *factors.entry(d).or_insert(0) += 1;
                }
                None => d += 1,
            }
        }
        let lead = p.coeff(&Exp::zero());
        Ok((lead, shift, factors))
    }

    pub fn inv(&self) -> Result<QScalar, ScalarError> {
        let (c, e, factors) = self.factor_numerator()?;
        let num = self.denominator_poly().shift(-e).scale(&c.recip());
        Ok(QScalar::from_parts(num, factors))
    }

    pub fn div(&self, other: &QScalar) -> Result<QScalar, ScalarError> {
        if let Some((c, e)) = other.as_monomial() {
            if c.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(self.shift(-e).scale(&c.recip()));
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<QScalar, ScalarError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut out = QScalar::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn pow_u(&self, n: u32) -> QScalar {
        let mut out = QScalar::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Value at `q = 1` when the denominator does not vanish there.
    pub fn at_one(&self) -> Result<BigRational, ScalarError> {
        if self.den.contains_key(&1) {
            return Err(ScalarError::PoleAtZero(self.to_string()));
        }
        let n: BigRational = self.num.terms().map(|(_, c)| c.clone()).sum();
        let mut d = BigRational::one();
        for (k, e) in &self.den {
            let v: i64 = cyclotomic(*k).iter().sum();
            for _ in 0..*e {
                d *= big(v);
            }
        }
        Ok(n / d)
    }
}

fn add_scalars(a: &QScalar, b: &QScalar, sign: i64) -> QScalar {
    if a.den == b.den {
        let mut num = a.num.clone();
        num.add_scaled(&b.num, &big(sign));
        if a.den.is_empty() {
            return QScalar::from_laurent(num);
        }
        return QScalar::from_parts(num, a.den.clone());
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sign > 0 { b.clone() } else { -b };
    }
    let mut lcm = a.den.clone();
    for (d, e) in &b.den {
        let slot = lcm.entry(*d).or_insert(0);
        *slot = (*slot).max(*e);
    }
    let cofactor = |den: &BTreeMap<u32, u32>| {
        let mut p = LaurentPoly::one();
        for (d, e) in &lcm {
            let have = den.get(d).copied().unwrap_or(0);
            if *e > have {
                p = p.mul(&cyclotomic_poly(*d).pow(e - have));
            }
        }
        p
    };
    let mut num = a.num.mul(&cofactor(&a.den));
    num.add_scaled(&b.num.mul(&cofactor(&b.den)), &big(sign));
    QScalar::from_parts(num, lcm)
}

fn mul_scalars(a: &QScalar, b: &QScalar) -> QScalar {
    if a.is_zero() || b.is_zero() {
        return QScalar::zero();
    }
    let num = a.num.mul(&b.num);
    if a.den.is_empty() && b.den.is_empty() {
        return QScalar::from_laurent(num);
    }
    let mut den = a.den.clone();
    for (d, e) in &b.den {
        *den.entry(*d).or_insert(0) += e;
    }
    QScalar::from_parts(num, den)
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        add_scalars(self, rhs, 1)
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        add_scalars(self, rhs, -1)
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        mul_scalars(self, rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        if self.den.is_empty() && rhs.den.is_empty() {
            self.num.add_scaled(&rhs.num, &BigRational::one());
        } else {
            *self = &*self + rhs;
        }
    }
}

impl AddAssign<QScalar> for QScalar {
    fn add_assign(&mut self, rhs: QScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

fn fmt_q_power(e: &Exp) -> String {
    if e.is_one() {
        "q".to_string()
    } else if e.is_integer() && e.is_positive() {
        format!("q^{}", e.to_integer())
    } else {
        format!("q^({})", fmt_exp(e))
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `3*q^(1/2) - q^(-2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if e.is_zero() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", fmt_q_power(e))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), fmt_q_power(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.denominator_poly())
        }
    }
}

impl QScalar {
    /// True when the rendering is a single signed monomial (no parentheses needed).
    pub fn is_simple(&self) -> bool {
        self.den.is_empty() && self.num.len() <= 1
    }

    /// Leading sign of the rendering, used when joining terms.
    pub fn render_negative(&self) -> bool {
        self.den.is_empty()
            && self.num.len() == 1
            && self.num.terms().next().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    pub fn to_f64_at(&self, qv: f64) -> f64 {
        let n: f64 = self
            .num
            .terms()
            .map(|(e, c)| c.to_f64().unwrap() * qv.powf(e.to_f64().unwrap()))
            .sum();
        let d: f64 = self.denominator_poly().terms().map(|(e, c)| c.to_f64().unwrap() * qv.powf(e.to_f64().unwrap())).sum();
        n / d
    }
}

/// `[n] = (q^n - q̄^n)/(q - q̄)` as a Laurent polynomial.
pub fn qint_laurent(n: i64) -> LaurentPoly {
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    LaurentPoly::from_terms((0..m).map(|i| (Exp::from_integer(m - 1 - 2 * i), big(sign))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }
    fn qb() -> QScalar {
        QScalar::qbar()
    }

    #[test]
    fn additive_inverse_and_cancellation() {
        assert!((q() + (-q())).is_zero());
        assert_eq!((q() - qb()) + qb(), q());
        let two = q() + qb();
        assert_eq!(two.clone() + QScalar::one(), q() + QScalar::one() + qb());
        assert_eq!(two.to_string(), "q + q^(-1)");
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!((q() - qb()) * (q() + qb()), QScalar::q_int_pow(2) - QScalar::q_int_pow(-2));
        let half = QScalar::q_pow(exp(1, 2));
        assert_eq!(&half * &half, q());
        let two = q() + qb();
        assert_eq!(&two * &two, QScalar::q_int_pow(2) + QScalar::from_int(2) + QScalar::q_int_pow(-2));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(QScalar::q_pow(exp(3, 2)).bar(), QScalar::q_pow(exp(-3, 2)));
        let five = QScalar::from_laurent(qint_laurent(5));
        assert_eq!(five.bar(), five);
        assert_eq!((q() - qb()).bar(), qb() - q());
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn fractions_reduce_canonically() {
        let d = q() - qb();
        let inv = d.inv().unwrap();
        assert_eq!(inv.to_string(), "(q)/(q^2 - 1)");
        assert!((&inv * &d).is_one());
        // [4]/[2] = q^2 + q^-2
        let four = QScalar::from_laurent(qint_laurent(4));
        let two = QScalar::from_laurent(qint_laurent(2));
        assert_eq!(four.div(&two).unwrap(), QScalar::q_int_pow(2) + QScalar::q_int_pow(-2));
        // 1/[2] + 1/[2] - 2/[2] = 0 with denominators kept
        let h = two.inv().unwrap();
        assert!((&h + &h - h.scale(&big(2))).is_zero());
    }

    #[test]
    fn bar_of_fraction() {
        let inv = (q() - qb()).inv().unwrap();
        assert_eq!(inv.bar(), -&inv);
        let t = QScalar::from_laurent(qint_laurent(3)).inv().unwrap().shift(exp(1, 2));
        assert_eq!(t.bar().bar(), t);
    }

    #[test]
    fn non_cyclotomic_divisor_is_reported() {
        let p = q() + QScalar::from_int(3);
        assert!(matches!(p.inv(), Err(ScalarError::NonCyclotomicDivisor(_))));
        assert!(matches!(QScalar::zero().inv(), Err(ScalarError::DivisionByZero)));
    }

    #[test]
    fn rendering() {
        let s = QScalar::q_pow(exp(1, 2)).scale(&big(3)) - QScalar::q_int_pow(-2);
        assert_eq!(s.to_string(), "3*q^(1/2) - q^(-2)");
        assert_eq!(QScalar::zero().to_string(), "0");
        assert_eq!(QScalar::monomial(BigRational::new(1.into(), 2.into()), Exp::one()).to_string(), "1/2*q");
    }
}
