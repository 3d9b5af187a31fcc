//! Pairwise rewriting of root-vector words into PBW order.
//!
//! A word is a list of letters with positive exponents. Each rule rewrites an
//! out-of-order adjacent pair `A^a B^b` (`A > B`); Cartan factors produced by a
//! rule are moved to the front of the word at once.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::interval::interval_expand;
use super::render::letter_name;
use super::{Interval, Kind, Letter, Lie, PbwError};
use crate::qcalc::qint;
use crate::scalars::{Exp, QScalar};

pub type Word = Vec<(Letter, u32)>;
pub type CartanPoly = BTreeMap<Vec<Exp>, QScalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RuleMode {
    /// Pairs without a listed rule raise `NoApplicableRule`.
    #[default]
    Strict,
    /// Pairs without a listed rule use the derived same-family q-commutation rules, and a
    /// stuck `x_J · y_K` is resolved by expanding `x_J` into simple generators.
    Expansion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rules {
    pub mode: RuleMode,
    pub step_budget: usize,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { mode: RuleMode::Strict, step_budget: 5_000_000 }
    }
}

impl Rules {
    pub fn expansion() -> Self {
        Rules { mode: RuleMode::Expansion, ..Rules::default() }
    }
}

#[derive(Clone, Debug)]
enum Piece {
    L(Letter, u32),
    K(Vec<Exp>),
}

type Replacement = Vec<(QScalar, Vec<Piece>)>;

fn kpiece(n: usize, s: usize, c: i64) -> Piece {
    let mut v = vec![Exp::zero(); n];
    v[s - 1] = Exp::from_integer(c);
    Piece::K(v)
}

fn lp(kind: Kind, i: usize, j: usize, e: u32) -> Piece {
    Piece::L(Letter { kind, iv: Interval(i, j) }, e)
}

fn half() -> Exp {
    Exp::new(1, 2)
}

/// Rule for the out-of-order pair `A^a B^b`, or `None` when no rule applies.
fn pair_rule(lie: &Lie, a: Letter, ea: u32, b: Letter, eb: u32, mode: RuleMode) -> Option<Replacement> {
    let r = listed_rule(lie, a, ea, b, eb);
    if r.is_some() || mode == RuleMode::Strict {
        return r;
    }
    if a.kind == b.kind {
        return same_family(a, ea, b, eb);
    }
    // x_J · y_K: replace one copy of x_J by its simple-letter expansion.
    let j = a.iv;
    if j.is_simple() {
        return None;
    }
    let mut out = Vec::new();
    for (c, w) in interval_expand(j.0, j.1) {
        let mut pieces = vec![Piece::L(a, ea - 1)];
        pieces.extend(w.iter().map(|s| lp(Kind::X, *s, *s, 1)));
        pieces.push(Piece::L(b, eb));
        out.push((c, pieces));
    }
    Some(out)
}

/// `A^p B^r` for root vectors of one family, `A = x_{c,d} > B = x_{a,b}` (mirror for `y`):
/// nested with a shared end `q̄^{pr}` swap, strictly nested or far apart commute,
/// adjacent `x_K x_J = q x_J x_K − q^{1/2} x_{a,d}`, overlapping
/// `x_K x_J = x_J x_K − (q − q̄) x_{a,d} x_{c,b}`.
fn same_family(a: Letter, ea: u32, b: Letter, eb: u32) -> Option<Replacement> {
    let kind = a.kind;
    let Interval(c, d) = a.iv;
    let Interval(i, j) = b.iv;
    let swap = |f: QScalar| vec![(f, vec![Piece::L(b, eb), Piece::L(a, ea)])];
    if j + 1 < c || (i < c && d < j) {
        return Some(swap(QScalar::one()));
    }
    if (i == c && j < d) || (i < c && d == j) {
        return Some(swap(QScalar::q_int_pow(-((ea * eb) as i64))));
    }
    let peel = |terms: Vec<(QScalar, Vec<Piece>)>| {
        terms
            .into_iter()
            .map(|(f, mid)| {
                let mut p = vec![Piece::L(a, ea - 1)];
                p.extend(mid);
                p.push(Piece::L(b, eb - 1));
                (f, p)
            })
            .collect()
    };
    if j + 1 == c {
        return Some(peel(vec![
            (QScalar::q(), vec![Piece::L(b, 1), Piece::L(a, 1)]),
            (-QScalar::q_pow(half()), vec![lp(kind, i, d, 1)]),
        ]));
    }
    if i < c && c <= j && j < d {
        return Some(peel(vec![
            (QScalar::one(), vec![Piece::L(b, 1), Piece::L(a, 1)]),
            (-(QScalar::q() - QScalar::qbar()), vec![lp(kind, i, d, 1), lp(kind, c, j, 1)]),
        ]));
    }
    None
}

/// The listed rewrite rules.
fn listed_rule(lie: &Lie, a: Letter, ea: u32, b: Letter, eb: u32) -> Option<Replacement> {
    let (j, k) = (a.iv, b.iv);
    let swap = |c: QScalar| vec![(c, vec![Piece::L(b, eb), Piece::L(a, ea)])];
    let pa = Piece::L(a, ea);
    let pb = Piece::L(b, eb);
    let am = |e: u32| Piece::L(a, e);
    let bm = |e: u32| Piece::L(b, e);
    if a.kind == b.kind {
        // Same family; rules for y are the mirror images of those for x with equal coefficients.
        let kind = a.kind;
        if k.1 + 1 < j.0 {
            return Some(swap(QScalar::one()));
        }
        if k.1 + 1 == j.0 {
            if k.is_simple() {
                // x_{s+1,t}^a x_s = q^a x_s x_{s+1,t}^a - q^{1/2}[a] x_{s,t} x_{s+1,t}^{a-1}
                let s = k.0;
                return Some(vec![
                    (QScalar::q_int_pow(ea as i64), vec![bm(1), pa.clone(), bm(eb - 1)]),
                    (-(QScalar::q_pow(half()) * qint(ea as i64)), vec![lp(kind, s, j.1, 1), am(ea - 1), bm(eb - 1)]),
                ]);
            }
            if j.is_simple() {
                // x_t x_{s,t-1}^b = q^b x_{s,t-1}^b x_t - q^{1/2}[b] x_{s,t-1}^{b-1} x_{s,t}
                let t = j.0;
                return Some(vec![
                    (QScalar::q_int_pow(eb as i64), vec![am(ea - 1), pb.clone(), am(1)]),
                    (-(QScalar::q_pow(half()) * qint(eb as i64)), vec![am(ea - 1), bm(eb - 1), lp(kind, k.0, t, 1)]),
                ]);
            }
            return None;
        }
        if k.0 < j.0 && j.0 <= k.1 {
            if j.is_simple() && j.0 < k.1 {
                return Some(swap(QScalar::one()));
            }
            if j.is_simple() && j.0 == k.1 {
                return Some(swap(QScalar::q_int_pow(-((ea * eb) as i64))));
            }
            return None;
        }
        if k.0 == j.0 && k.is_simple() {
            return Some(swap(QScalar::q_int_pow(-((ea * eb) as i64))));
        }
        return None;
    }
    // a = x_J, b = y_K
    if j.1 < k.0 || k.1 < j.0 {
        return Some(swap(QScalar::one()));
    }
    let n = lie.n;
    if j == k && j.is_simple() {
        // x y^b = y^b x + [b][H+b-1] y^{b-1}
        let s = j.0;
        let qq = QScalar::q() - QScalar::qbar();
        let inv = qq.inv().expect("q - 1/q is invertible");
        let c = qint(eb as i64) * inv;
        let sh = eb as i64 - 1;
        return Some(vec![
            (QScalar::one(), vec![am(ea - 1), pb.clone(), am(1)]),
            (&c * &QScalar::q_int_pow(sh), vec![am(ea - 1), kpiece(n, s, 2), bm(eb - 1)]),
            (-(&c * &QScalar::q_int_pow(-sh)), vec![am(ea - 1), kpiece(n, s, -2), bm(eb - 1)]),
        ]);
    }
    if j.is_simple() && !k.is_simple() {
        let s = j.0;
        if s == k.0 {
            // x_i y_ij^b = y_ij^b x_i + q^{-1/2}[b] k_i^2 y_ij^{b-1} y_{i+1,j}
            return Some(vec![
                (QScalar::one(), vec![am(ea - 1), pb.clone(), am(1)]),
                (
                    QScalar::q_pow(-half()) * qint(eb as i64),
                    vec![am(ea - 1), kpiece(n, s, 2), bm(eb - 1), lp(Kind::Y, s + 1, k.1, 1)],
                ),
            ]);
        }
        if s == k.1 {
            // x_j y_ij^b = y_ij^b x_j - q^{1/2} q^{-(b-1)} [b] k_j^{-2} y_{i,j-1} y_ij^{b-1}
            let c = QScalar::q_pow(half() - Exp::from_integer(eb as i64 - 1)) * qint(eb as i64);
            return Some(vec![
                (QScalar::one(), vec![am(ea - 1), pb.clone(), am(1)]),
                (-c, vec![am(ea - 1), kpiece(n, s, -2), lp(Kind::Y, k.0, s - 1, 1), bm(eb - 1)]),
            ]);
        }
        return Some(swap(QScalar::one()));
    }
    if k.is_simple() && !j.is_simple() {
        let s = k.0;
        if s == j.0 {
            // x_ij^a y_i = y_i x_ij^a - q^{-1/2}[a] k_i^{-2} x_ij^{a-1} x_{i+1,j}
            return Some(vec![
                (QScalar::one(), vec![bm(1), pa.clone(), bm(eb - 1)]),
                (
                    -(QScalar::q_pow(-half()) * qint(ea as i64)),
                    vec![kpiece(n, s, -2), am(ea - 1), lp(Kind::X, s + 1, j.1, 1), bm(eb - 1)],
                ),
            ]);
        }
        if s == j.1 {
            // x_ij^a y_j = y_j x_ij^a + q^{1/2} q^{-(a-1)} [a] k_j^2 x_{i,j-1} x_ij^{a-1}
            let c = QScalar::q_pow(half() - Exp::from_integer(ea as i64 - 1)) * qint(ea as i64);
            return Some(vec![
                (QScalar::one(), vec![bm(1), pa.clone(), bm(eb - 1)]),
                (c, vec![kpiece(n, s, 2), lp(Kind::X, j.0, s - 1, 1), am(ea - 1), bm(eb - 1)]),
            ]);
        }
        return Some(swap(QScalar::one()));
    }
    None
}

fn push_merge(w: &mut Word, l: Letter, e: u32) {
    if e == 0 {
        return;
    }
    if let Some(last) = w.last_mut() {
        if last.0 == l {
            last.1 += e;
            return;
        }
    }
    w.push((l, e));
}

/// Splice a replacement into a word, moving its Cartan factors to the front.
fn assemble(lie: &Lie, prefix: &[(Letter, u32)], rep: &[Piece], suffix: &[(Letter, u32)]) -> (Exp, Vec<Exp>, Word) {
    let mut w: Word = Vec::with_capacity(prefix.len() + rep.len() + suffix.len());
    let mut wt = vec![0i64; lie.n];
    let mut kv = vec![Exp::zero(); lie.n];
    let mut qexp = Exp::zero();
    for (l, e) in prefix {
        push_merge(&mut w, *l, *e);
        lie.letter_weight(*l, *e, &mut wt);
    }
    for p in rep {
        match p {
            Piece::L(l, e) => {
                push_merge(&mut w, *l, *e);
                lie.letter_weight(*l, *e, &mut wt);
            }
            Piece::K(c) => {
                // u k^c = q^{-c·w(u)/2} k^c u
                for l in 0..lie.n {
                    qexp -= c[l] * Exp::from_integer(wt[l]) / Exp::from_integer(2);
                    kv[l] += c[l];
                }
            }
        }
    }
    for (l, e) in suffix {
        push_merge(&mut w, *l, *e);
    }
    (qexp, kv, w)
}

fn pair_text(lie: &Lie, a: (Letter, u32), b: (Letter, u32)) -> String {
    let f = |(l, e): (Letter, u32)| {
        let nm = letter_name(l, lie.n);
        if e == 1 {
            nm
        } else {
            format!("{nm}^{e}")
        }
    };
    format!("{} {}", f(a), f(b))
}

fn offending(w: &Word) -> Option<usize> {
    let mut first = None;
    for p in 0..w.len().saturating_sub(1) {
        if w[p].0 > w[p + 1].0 {
            if w[p].0.kind == Kind::X && w[p + 1].0.kind == Kind::Y {
                return Some(p);
            }
            first.get_or_insert(p);
        }
    }
    first
}

fn add_poly(target: &mut CartanPoly, src: &CartanPoly, c: &QScalar, qexp: Exp, kv: &[Exp]) {
    let f = c * &QScalar::q_pow(qexp);
    for (k, v) in src {
        let key: Vec<Exp> = k.iter().zip(kv).map(|(a, b)| a + b).collect();
        let val = v * &f;
        match target.get_mut(&key) {
            Some(x) => {
                *x += &val;
                if x.is_zero() {
                    target.remove(&key);
                }
            }
            None => {
                if !val.is_zero() {
                    target.insert(key, val);
                }
            }
        }
    }
}

/// Straighten a word of letters; returns normal-form words with a Cartan
/// polynomial in `k` standing to their left.
pub fn straighten_letters(lie: &Lie, word: &[(Letter, u32)], rules: &Rules) -> Result<Vec<(Word, CartanPoly)>, PbwError> {
    let (_, _, w0) = assemble(lie, word, &[], &[]);
    let mut unit = CartanPoly::new();
    unit.insert(vec![Exp::zero(); lie.n], QScalar::one());
    let mut current: BTreeMap<Word, CartanPoly> = BTreeMap::new();
    current.insert(w0, unit);
    let mut done: BTreeMap<Word, CartanPoly> = BTreeMap::new();
    let mut steps = 0usize;
    while !current.is_empty() {
        let mut next: BTreeMap<Word, CartanPoly> = BTreeMap::new();
        for (w, poly) in current {
            if poly.is_empty() {
                continue;
            }
            let Some(p) = offending(&w) else {
                let slot = done.entry(w).or_default();
                add_poly(slot, &poly, &QScalar::one(), Exp::zero(), &vec![Exp::zero(); lie.n]);
                continue;
            };
            steps += 1;
            if steps > rules.step_budget {
                return Err(PbwError::StepBudget(rules.step_budget));
            }
            let (a, ea) = w[p];
            let (b, eb) = w[p + 1];
            let rep = pair_rule(lie, a, ea, b, eb, rules.mode)
                .ok_or_else(|| PbwError::NoApplicableRule(pair_text(lie, w[p], w[p + 1])))?;
            for (c, pieces) in rep {
                if c.is_zero() {
                    continue;
                }
                let (qexp, kv, w2) = assemble(lie, &w[..p], &pieces, &w[p + 2..]);
                let slot = next.entry(w2).or_default();
                add_poly(slot, &poly, &c, qexp, &kv);
            }
        }
        current = next;
    }
    Ok(done.into_iter().filter(|(_, p)| !p.is_empty()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(lie: &Lie, w: &[(Letter, u32)]) -> Vec<(Word, CartanPoly)> {
        straighten_letters(lie, w, &Rules::default()).unwrap()
    }

    #[test]
    fn passing_and_far_commutation() {
        let lie = Lie::new(3);
        let r = single(&lie, &[(Letter::x(3, 3), 1), (Letter::x(1, 1), 2)]);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, vec![(Letter::x(1, 1), 2), (Letter::x(3, 3), 1)]);
        let r = single(&lie, &[(Letter::x(1, 2), 2), (Letter::x(1, 1), 3)]);
        assert_eq!(r[0].0, vec![(Letter::x(1, 1), 3), (Letter::x(1, 2), 2)]);
        assert_eq!(r[0].1.values().next().unwrap(), &QScalar::q_int_pow(-6));
        let r = single(&lie, &[(Letter::y(2, 2), 1), (Letter::y(1, 3), 1)]);
        assert_eq!(r[0].0, vec![(Letter::y(1, 3), 1), (Letter::y(2, 2), 1)]);
        assert!(r[0].1.values().next().unwrap().is_one());
    }

    #[test]
    fn lengthening_defines_root_vector() {
        // x_2 x_1 = q x_1 x_2 - q^{1/2} x_12
        let lie = Lie::new(2);
        let r = single(&lie, &[(Letter::x(2, 2), 1), (Letter::x(1, 1), 1)]);
        assert_eq!(r.len(), 2);
        let m: BTreeMap<Word, QScalar> = r.into_iter().map(|(w, p)| (w, p.into_values().next().unwrap())).collect();
        assert_eq!(m[&vec![(Letter::x(1, 1), 1), (Letter::x(2, 2), 1)]], QScalar::q());
        assert_eq!(m[&vec![(Letter::x(1, 2), 1)]], -QScalar::q_pow(Exp::new(1, 2)));
    }

    #[test]
    fn strict_mode_reports_stuck_pair() {
        let lie = Lie::new(2);
        let e = straighten_letters(&lie, &[(Letter::x(1, 2), 1), (Letter::y(1, 2), 1)], &Rules::default());
        assert_eq!(e, Err(PbwError::NoApplicableRule("x1_2 y1_2".into())));
        let ok = straighten_letters(&lie, &[(Letter::x(1, 2), 1), (Letter::y(1, 2), 1)], &Rules::expansion()).unwrap();
        assert!(ok.iter().any(|(w, _)| w == &vec![(Letter::y(1, 2), 1), (Letter::x(1, 2), 1)]));
    }

    #[test]
    fn budget_is_enforced() {
        let lie = Lie::new(1);
        let rules = Rules { step_budget: 2, ..Rules::default() };
        let e = straighten_letters(&lie, &[(Letter::x(1, 1), 4), (Letter::y(1, 1), 4)], &rules);
        assert_eq!(e, Err(PbwError::StepBudget(2)));
    }
}
