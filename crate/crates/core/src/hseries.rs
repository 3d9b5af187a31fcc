//! Truncated power series in `h` whose coefficients are exact polynomials in
//! a declared list of commuting symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalars::{big, cyclotomic, Exp, LaurentPoly, QScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("symbol sets differ: {0:?} vs {1:?}")]
    SymbolMismatch(Vec<String>, Vec<String>),
    #[error("exponential argument has a non-zero constant term")]
    ValuationZero,
    #[error("leading coefficient division is not exact")]
    InexactLeadingDivision,
    #[error("dividend valuation {0} is below divisor valuation {1}")]
    ValuationOrder(usize, usize),
    #[error("division by a series that vanishes to the working order")]
    ZeroDivisor,
    #[error("scalar has a pole at h = 0")]
    Pole,
}

/// Polynomial over the rationals; a monomial is an exponent vector over the symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational, nvars: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero();
        p.add_term(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (ld_e, ld_c) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(ld_e).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(ld_e).map(|(a, b)| a - b).collect();
            let c = rc / ld_c;
            let mut t = Poly::zero();
            t.add_term(e, c);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Substitute rational values for all symbols.
    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, k) in vals.iter().zip(e) {
                for _ in 0..*k {
                    t *= v;
                }
            }
            s += t;
        }
        s
    }

    pub fn fmt_with(&self, symbols: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .zip(symbols)
                .filter(|(k, _)| **k > 0)
                .map(|(k, s)| if *k == 1 { s.clone() } else { format!("{}^{}", s, k) })
                .collect();
            let cs = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            if mono.is_empty() {
                out.push_str(&cs);
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", cs, mono.join("*")));
            }
        }
        out
    }
}

/// `Σ_{k ≤ order} c_k h^k` with polynomial coefficients in `symbols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    symbols: Vec<String>,
    coeffs: Vec<Poly>,
}

impl HSeries {
    pub fn zero(symbols: &[&str], order: usize) -> Self {
        HSeries { symbols: symbols.iter().map(|s| s.to_string()).collect(), coeffs: vec![Poly::zero(); order + 1] }
    }

    pub fn one(symbols: &[&str], order: usize) -> Self {
        let mut s = HSeries::zero(symbols, order);
        s.coeffs[0] = Poly::constant(BigRational::one(), symbols.len());
        s
    }

    pub fn from_coeffs(symbols: Vec<String>, coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the h^0 coefficient");
        HSeries { symbols, coeffs }
    }

    /// The polynomial `p` placed at `h^k`.
    pub fn monomial(symbols: &[&str], order: usize, k: usize, p: Poly) -> Self {
        let mut s = HSeries::zero(symbols, order);
        if k <= order {
            s.coeffs[k] = p;
        }
        s
    }

    /// The series `h·(symbol)`.
    pub fn h_times_symbol(symbols: &[&str], order: usize, name: &str) -> Self {
        let i = symbols.iter().position(|s| *s == name).expect("unknown symbol");
        HSeries::monomial(symbols, order, 1, Poly::var(i, symbols.len()))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn nvars(&self) -> usize {
        self.symbols.len()
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> HSeries {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        HSeries { symbols: self.symbols.clone(), coeffs: c }
    }

    /// Lowest power of `h` with a non-zero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &HSeries) -> Result<usize, SeriesError> {
        if self.symbols != o.symbols {
            return Err(SeriesError::SymbolMismatch(self.symbols.clone(), o.symbols.clone()));
        }
        Ok(self.order().min(o.order()))
    }

    pub fn add(&self, o: &HSeries) -> Result<HSeries, SeriesError> {
        let n = self.check(o)?;
        let coeffs = (0..=n).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect();
        Ok(HSeries { symbols: self.symbols.clone(), coeffs })
    }

    pub fn sub(&self, o: &HSeries) -> Result<HSeries, SeriesError> {
        let n = self.check(o)?;
        let coeffs = (0..=n).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect();
        Ok(HSeries { symbols: self.symbols.clone(), coeffs })
    }

    pub fn mul(&self, o: &HSeries) -> Result<HSeries, SeriesError> {
        let n = self.check(o)?;
        let mut coeffs = vec![Poly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !o.coeffs[j].is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
                }
            }
        }
        Ok(HSeries { symbols: self.symbols.clone(), coeffs })
    }

    pub fn scale(&self, s: &BigRational) -> HSeries {
        HSeries { symbols: self.symbols.clone(), coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn neg(&self) -> HSeries {
        self.scale(&big(-1))
    }

    /// `exp(self)`; the argument must vanish at `h = 0`.
    pub fn exp(&self) -> Result<HSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ValuationZero);
        }
        let n = self.order();
        let syms: Vec<&str> = self.symbols.iter().map(|s| s.as_str()).collect();
        let mut out = HSeries::one(&syms, n);
        let mut power = HSeries::one(&syms, n);
        let mut fact = BigRational::one();
        for k in 1..=n {
            power = power.mul(self)?;
            fact *= big(k as i64);
            out = out.add(&power.scale(&fact.recip()))?;
        }
        Ok(out)
    }

    /// `a / b` where both are divisible by the same power of `h` as far as needed.
    /// Factors `h^{val(b)}` out of both and divides the unit parts; the result
    /// has order `min(order_a, order_b) - val(b)`.
    pub fn div_exact(&self, b: &HSeries) -> Result<HSeries, SeriesError> {
        self.check(b)?;
        let vb = b.valuation().ok_or(SeriesError::ZeroDivisor)?;
        let va = self.valuation().unwrap_or(usize::MAX);
        if va < vb {
            return Err(SeriesError::ValuationOrder(va, vb));
        }
        let n = self.order().min(b.order());
        if vb > n {
            return Err(SeriesError::ZeroDivisor);
        }
        let len = n - vb + 1;
        let a_sh: Vec<&Poly> = (0..len).map(|k| &self.coeffs[k + vb]).collect();
        let b_sh: Vec<&Poly> = (0..len).map(|k| &b.coeffs[k + vb]).collect();
        let mut out: Vec<Poly> = Vec::with_capacity(len);
        for k in 0..len {
            let mut r = a_sh[k].clone();
            for (j, oj) in out.iter().enumerate() {
                r = r.sub(&oj.mul(b_sh[k - j]));
            }
            let c = if r.is_zero() {
                Poly::zero()
            } else {
                r.div_exact(b_sh[0]).ok_or(SeriesError::InexactLeadingDivision)?
            };
            out.push(c);
        }
        Ok(HSeries { symbols: self.symbols.clone(), coeffs: out })
    }

    /// Multiply by `h^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> HSeries {
        let n = self.order();
        let mut coeffs = vec![Poly::zero(); n + 1];
        for i in 0..=n {
            if i + k <= n {
                coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        HSeries { symbols: self.symbols.clone(), coeffs }
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.fmt_with(&self.symbols);
            parts.push(match k {
                0 => body,
                1 => format!("({})*h", body),
                _ => format!("({})*h^{}", body, k),
            });
        }
        if parts.is_empty() {
            write!(f, "0 + O(h^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(h^{})", parts.join(" + "), self.order() + 1)
        }
    }
}

/// Univariate series of `e^{r h}` through `h^order`.
pub fn exp_rational(r: &BigRational, order: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut t = BigRational::one();
    out.push(t.clone());
    for k in 1..=order {
        t = t * r / big(k as i64);
        out.push(t.clone());
    }
    out
}

fn laurent_at_h(p: &LaurentPoly, order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    for (e, c) in p.terms() {
        let r = BigRational::new((*e.numer()).into(), (2 * *e.denom()).into());
        for (k, v) in exp_rational(&r, order).into_iter().enumerate() {
            out[k] += c * v;
        }
    }
    out
}

fn uni_mul(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn uni_inv(a: &[BigRational], order: usize) -> Vec<BigRational> {
    let a0 = a[0].clone();
    assert!(!a0.is_zero(), "series is not invertible");
    let mut out = vec![BigRational::zero(); order + 1];
    out[0] = a0.recip();
    for k in 1..=order {
        let mut s = BigRational::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out[k] = -s / &a0;
    }
    out
}

/// Expansion of a scalar as a Laurent series in `h`: returns `(v, c)` with the
/// scalar equal to `h^v · Σ_{k ≤ order - v} c_k h^k`, i.e. exact through `h^order`.
pub fn qs_to_laurent(a: &QScalar, order: i64) -> (i64, Vec<BigRational>) {
    let den = a.denominator_factors();
    let pole = den.get(&1).copied().unwrap_or(0) as i64;
    let n = (order + pole).max(0) as usize;
    let mut s = laurent_at_h(a.numerator(), n);
    for (d, e) in den {
        let phi = LaurentPoly::from_dense_int(&cyclotomic(*d));
        let mut ser = laurent_at_h(&phi, n + 1);
        if *d == 1 {
            // (e^{h/2} - 1)/h
            ser.remove(0);
        }
        let inv = uni_inv(&ser, n);
        for _ in 0..*e {
            s = uni_mul(&s, &inv, n);
        }
    }
    (-pole, s)
}

/// `q ↦ e^{h/2}` truncated at `h^order`; fails when the scalar has a pole at `h = 0`.
pub fn qs_to_hseries(a: &QScalar, order: usize) -> Result<HSeries, SeriesError> {
    if a.denominator_factors().contains_key(&1) {
        return Err(SeriesError::Pole);
    }
    let (_, c) = qs_to_laurent(a, order as i64);
    Ok(HSeries::from_coeffs(vec![], c.into_iter().map(|v| Poly::constant(v, 0)).collect()))
}

/// `e^{c·h·x}` in the given symbol set, through `h^order`.
pub fn exp_symbol(symbols: &[&str], order: usize, name: &str, c: &BigRational) -> HSeries {
    HSeries::h_times_symbol(symbols, order, name).scale(c).exp().expect("argument has valuation one")
}

/// `e^{r·h}` as a constant-coefficient series in the given symbol set.
pub fn exp_const(symbols: &[&str], order: usize, r: &BigRational) -> HSeries {
    let coeffs = exp_rational(r, order).into_iter().map(|v| Poly::constant(v, symbols.len())).collect();
    HSeries::from_coeffs(symbols.iter().map(|s| s.to_string()).collect(), coeffs)
}

/// Gaussian binomial `binom(x, k)_{q²}` with symbolic `x`, as a series in `h` (`q² = e^h`).
pub fn binom_q2_symbolic(symbols: &[&str], x: &str, k: usize, order: usize) -> Result<HSeries, SeriesError> {
    let work = order + k;
    let one = HSeries::one(symbols, work);
    let mut num = HSeries::one(symbols, work);
    let mut den = HSeries::one(symbols, work);
    for i in 0..k {
        // 1 - e^{h(x - i)}
        let e = exp_symbol(symbols, work, x, &BigRational::one()).mul(&exp_const(symbols, work, &big(-(i as i64))))?;
        num = num.mul(&one.sub(&e)?)?;
        den = den.mul(&one.sub(&exp_const(symbols, work, &big(i as i64 + 1)))?)?;
    }
    Ok(num.div_exact(&den)?.truncate(order))
}

/// `Π_{i<k} (e^{ht} - q^{2i})` through `h^order`.
pub fn cauchy_product(symbols: &[&str], t: &str, k: usize, order: usize) -> Result<HSeries, SeriesError> {
    let et = exp_symbol(symbols, order, t, &BigRational::one());
    let mut p = HSeries::one(symbols, order);
    for i in 0..k {
        p = p.mul(&et.sub(&exp_const(symbols, order, &big(i as i64)))?)?;
    }
    Ok(p)
}

/// Extended Cauchy identity `e^{xht} = Σ_{k ≤ K} binom(x,k)_{q²} Π_{i<k}(e^{ht} - q^{2i})` through `h^N`.
pub fn cauchy_exp_check(n: usize, kmax: usize) -> bool {
    let syms = ["x", "t"];
    let lhs = {
        let xt = HSeries::monomial(&syms, n, 1, Poly::var(0, 2).mul(&Poly::var(1, 2)));
        xt.exp().expect("valuation one")
    };
    let mut rhs = HSeries::zero(&syms, n);
    for k in 0..=kmax {
        let b = match binom_q2_symbolic(&syms, "x", k, n) {
            Ok(b) => b,
            Err(_) => return false,
        };
        let p = cauchy_product(&syms, "t", k, n).expect("same symbols");
        rhs = rhs.add(&b.mul(&p).expect("same symbols")).expect("same symbols");
    }
    lhs == rhs
}

/// Convenience: exponent of `q` as a rational multiple of `h` (`q^e = e^{(e/2)h}`).
pub fn q_exp_to_h(e: &Exp) -> BigRational {
    BigRational::new((*e.numer()).into(), (2 * *e.denom()).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::exp;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn product_examples() {
        let s = ["t"];
        let a = HSeries::one(&s, 2).add(&HSeries::monomial(&s, 2, 1, Poly::constant(big(1), 1))).unwrap();
        let b = HSeries::one(&s, 2).sub(&HSeries::monomial(&s, 2, 1, Poly::constant(big(1), 1))).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p, HSeries::one(&s, 2).sub(&HSeries::monomial(&s, 2, 2, Poly::constant(big(1), 1))).unwrap());

        let e1 = exp_symbol(&s, 4, "t", &big(1));
        let e2 = exp_symbol(&s, 4, "t", &big(-1));
        assert_eq!(e1.mul(&e2).unwrap(), HSeries::one(&s, 4));

        let s2 = ["t", "x"];
        let ht = HSeries::h_times_symbol(&s2, 1, "t");
        let hx = HSeries::h_times_symbol(&s2, 1, "x");
        assert!(ht.mul(&hx).unwrap().is_zero());
    }

    #[test]
    fn exp_examples() {
        let s = ["t"];
        let e = exp_symbol(&s, 2, "t", &big(1));
        assert_eq!(e.coeff(2), &Poly::var(0, 1).mul(&Poly::var(0, 1)).scale(&r(1, 2)));
        assert_eq!(HSeries::zero(&s, 3).exp().unwrap(), HSeries::one(&s, 3));
        assert_eq!(HSeries::one(&s, 3).exp(), Err(SeriesError::ValuationZero));
        let s2 = ["x", "t"];
        let lhs = exp_symbol(&s2, 6, "x", &big(1)).mul(&exp_symbol(&s2, 6, "t", &big(1))).unwrap();
        let sum = HSeries::h_times_symbol(&s2, 6, "x").add(&HSeries::h_times_symbol(&s2, 6, "t")).unwrap();
        assert_eq!(lhs, sum.exp().unwrap());
    }

    #[test]
    fn division_examples() {
        let s = ["t"];
        let a = exp_symbol(&s, 4, "t", &big(1)).sub(&HSeries::one(&s, 4)).unwrap();
        let h = HSeries::monomial(&s, 4, 1, Poly::constant(big(1), 1));
        let q = a.div_exact(&h).unwrap();
        assert_eq!(q.coeff(0), &Poly::var(0, 1));
        assert_eq!(q.coeff(1), &Poly::var(0, 1).mul(&Poly::var(0, 1)).scale(&r(1, 2)));
        assert_eq!(a.div_exact(&a).unwrap(), HSeries::one(&s, 3));

        let num = cauchy_product(&s, "t", 2, 4).unwrap();
        let one = HSeries::one(&s, 4);
        let den = one
            .sub(&exp_const(&s, 4, &big(1)))
            .unwrap()
            .mul(&one.sub(&exp_const(&s, 4, &big(2))).unwrap())
            .unwrap();
        let quo = num.div_exact(&den).unwrap();
        let t = Poly::var(0, 1);
        let expect = t.mul(&t.sub(&Poly::constant(big(1), 1))).scale(&r(1, 2));
        assert_eq!(quo.coeff(0), &expect);
        assert_eq!(h.div_exact(&a.mul(&a).unwrap()), Err(SeriesError::ValuationOrder(1, 2)));
    }

    #[test]
    fn scalar_conversion() {
        let q = qs_to_hseries(&QScalar::q(), 2).unwrap();
        assert_eq!(q.coeffs().iter().map(|p| p.eval(&[])).collect::<Vec<_>>(), vec![big(1), r(1, 2), r(1, 8)]);
        let two = qs_to_hseries(&(QScalar::q() + QScalar::qbar()), 2).unwrap();
        assert_eq!(two.coeffs().iter().map(|p| p.eval(&[])).collect::<Vec<_>>(), vec![big(2), big(0), r(1, 4)]);
        assert!(qs_to_hseries(&QScalar::zero(), 3).unwrap().is_zero());
        let inv = (QScalar::q() - QScalar::qbar()).inv().unwrap();
        assert_eq!(qs_to_hseries(&inv, 2), Err(SeriesError::Pole));
        let (v, c) = qs_to_laurent(&inv, 2);
        assert_eq!(v, -1);
        // 1/(2 sinh(h/2)) = 1/h - h/24 + ...
        assert_eq!(c[0], big(1));
        assert_eq!(c[1], big(0));
        assert_eq!(c[2], r(-1, 24));
        let half = qs_to_hseries(&QScalar::q_pow(exp(1, 2)), 1).unwrap();
        assert_eq!(half.coeff(1).eval(&[]), r(1, 4));
    }

    #[test]
    fn cauchy_identity_small_orders() {
        assert!(cauchy_exp_check(0, 0));
        assert!(cauchy_exp_check(4, 4));
    }

    #[test]
    fn cauchy_product_valuations() {
        let s = ["t"];
        for k in 0..=8 {
            assert_eq!(cauchy_product(&s, "t", k, 9).unwrap().valuation(), Some(k));
        }
    }
}
