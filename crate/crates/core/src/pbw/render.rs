//! Canonical text rendering of elements, parseable by the expression grammar.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::{Element, Kind, Letter, Lie, Mono, Prefactor, Term};
use crate::scalars::{Exp, QScalar};

fn idx_name(base: &str, i: usize, rank: usize) -> String {
    if rank == 1 {
        base.to_string()
    } else {
        format!("{base}{i}")
    }
}

/// `x`, `y1`, `x1_3`, …
pub fn letter_name(l: Letter, rank: usize) -> String {
    let base = match l.kind {
        Kind::X => "x",
        Kind::Y => "y",
    };
    if rank == 1 {
        base.to_string()
    } else if l.iv.is_simple() {
        format!("{base}{}", l.iv.0)
    } else {
        format!("{base}{}_{}", l.iv.0, l.iv.1)
    }
}

fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

fn powered(name: String, e: &Exp) -> String {
    if e.is_one() {
        name
    } else {
        format!("{name}^{}", fmt_exp(e))
    }
}

/// Factors of one slot monomial in PBW order; empty for the unit.
pub fn mono_factors(m: &Mono, lie: &Lie) -> Vec<String> {
    let n = lie.n;
    let mut out = Vec::new();
    for (i, e) in m.k.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_negative() {
            out.push(powered(idx_name("kb", i + 1, n), &-e));
        } else {
            out.push(powered(idx_name("k", i + 1, n), e));
        }
    }
    for (i, e) in m.h.iter().enumerate() {
        if *e > 0 {
            out.push(powered(idx_name("H", i + 1, n), &Exp::from_integer(*e as i64)));
        }
    }
    for (l, e) in m.letters(lie) {
        out.push(powered(letter_name(l, n), &Exp::from_integer(e as i64)));
    }
    out
}

pub fn render_mono(m: &Mono, lie: &Lie) -> String {
    let f = mono_factors(m, lie);
    if f.is_empty() {
        "1".into()
    } else {
        f.join("*")
    }
}

fn fmt_rat_coeff(c: &Ratio<i64>) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

/// `exp[(h/4)*(…)]`, with `@s` slot markers when there is more than one slot.
pub fn render_prefactor(p: &Prefactor, rank: usize) -> String {
    let slots = p.dim() / rank;
    let var = |a: usize| {
        let (s, i) = (a / rank, a % rank);
        let nm = if rank == 1 { "H".to_string() } else { format!("H{}", i + 1) };
        if slots > 1 {
            format!("{nm}@{s}")
        } else {
            nm
        }
    };
    let mut parts: Vec<(bool, String)> = Vec::new();
    for a in 0..p.dim() {
        for b in a..p.dim() {
            let c = if a == b { p.get(a, a) } else { p.get(a, b) + p.get(b, a) };
            if c.is_zero() {
                continue;
            }
            let mon = if a == b { format!("{}^2", var(a)) } else { format!("{}*{}", var(a), var(b)) };
            let ac = c.abs();
            let txt = if ac.is_one() { mon } else { format!("{}*{}", fmt_rat_coeff(&ac), mon) };
            parts.push((c.is_negative(), txt));
        }
    }
    let mut s = String::new();
    for (k, (neg, t)) in parts.iter().enumerate() {
        if k == 0 {
            if *neg {
                s.push('-');
            }
        } else {
            s.push_str(if *neg { " - " } else { " + " });
        }
        s.push_str(t);
    }
    if s.is_empty() {
        s.push('0');
    }
    format!("exp[(h/4)*({s})]")
}

/// Scalar as a product factor: sign split off, parenthesized when compound.
pub fn scalar_factor(c: &QScalar) -> (bool, Option<String>) {
    let neg = c.render_negative();
    let a = if neg { -c.clone() } else { c.clone() };
    if a.is_one() {
        return (neg, None);
    }
    let txt = a.to_string();
    if a.is_simple() || !a.denominator_factors().is_empty() {
        (neg, Some(txt))
    } else {
        (neg, Some(format!("({txt})")))
    }
}

/// Body of a term without its scalar coefficient.
pub fn render_term_body(t: &Term, lie: &Lie) -> Option<String> {
    let mut factors = Vec::new();
    if !t.pre.is_identity() {
        factors.push(render_prefactor(&t.pre, lie.n));
    }
    if t.monos.len() == 1 {
        factors.extend(mono_factors(&t.monos[0], lie));
    } else if t.monos.iter().any(|m| !m.is_one()) {
        let slots: Vec<String> = t.monos.iter().map(|m| render_mono(m, lie)).collect();
        factors.push(format!("({})", slots.join(" (x) ")));
    }
    if factors.is_empty() {
        None
    } else {
        Some(factors.join("*"))
    }
}

/// A term with unit coefficient, e.g. `k^2*x (x) y`.
pub fn render_term(t: &Term, rank: usize) -> String {
    render_term_body(t, &Lie::new(rank)).unwrap_or_else(|| "1".into())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let lie = self.lie();
        for (k, (t, c)) in self.terms().enumerate() {
            let (neg, sc) = scalar_factor(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let body = render_term_body(t, &lie);
            match (sc, body) {
                (Some(s), Some(b)) => write!(f, "{s}*{b}")?,
                (Some(s), None) => write!(f, "{s}")?,
                (None, Some(b)) => write!(f, "{b}")?,
                (None, None) => write!(f, "1")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(letter_name(Letter::x(1, 1), 1), "x");
        assert_eq!(letter_name(Letter::y(1, 3), 3), "y1_3");
        assert_eq!(letter_name(Letter::x(2, 2), 3), "x2");
    }

    #[test]
    fn renders_commutator() {
        let x = Element::x(1, 1, 1).unwrap();
        let y = Element::y(1, 1, 1).unwrap();
        let s = x.mul(&y).unwrap().to_string();
        assert!(s.contains("y*x"), "{s}");
        assert!(s.contains("k^2") && s.contains("kb^2"), "{s}");
    }

    #[test]
    fn renders_prefactor_and_tensor() {
        let mut p = Prefactor::identity(2, 1);
        p.add_coupling(0, 1, Exp::from_integer(1));
        let e = Element::prefactor(1, p)
            .mul(&Element::x(1, 1, 1).unwrap().tensor(&Element::y(1, 1, 1).unwrap()).unwrap())
            .unwrap();
        assert_eq!(e.to_string(), "exp[(h/4)*(H@0*H@1)]*(x (x) y)");
    }
}
