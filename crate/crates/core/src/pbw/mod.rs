//! PBW monomials, algebra elements over one or more tensor slots, and the
//! product that straightens into PBW order.
//!
//! A term is `c · exp((h/4)·Q(H)) · M_1 ⊗ … ⊗ M_s` where each slot monomial
//! is `k^a H^r y^… x^…` in PBW order: Cartan part first, then `y`-intervals,
//! then `x`-intervals, intervals ordered lexicographically
//! `(1,1) < (1,2) < … < (1,n) < (2,2) < …`.

mod closed;
mod interval;
mod product;
mod render;
mod rewrite;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalars::{Exp, QScalar, ScalarError};

pub use closed::{g_element, hbinom, hbracket, straighten_xa_yb};
pub use interval::{
    interval_expand, normalize_far, orientation_expand, splitting_check, Orientation, SimpleWord,
};
pub use render::{letter_name, render_mono, render_prefactor, render_term};
pub use rewrite::{straighten_letters, RuleMode, Rules};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("no applicable rule for the subword {0}")]
    NoApplicableRule(String),
    #[error("rewrite step budget of {0} exhausted")]
    StepBudget(usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("slot mismatch: {0} vs {1}")]
    SlotMismatch(usize, usize),
    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRank(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Closed interval `[i, j]` of simple-root indices, `1 ≤ i ≤ j ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval(pub usize, pub usize);

impl Interval {
    pub fn simple(i: usize) -> Self {
        Interval(i, i)
    }

    pub fn len(&self) -> usize {
        self.1 - self.0 + 1
    }

    pub fn is_simple(&self) -> bool {
        self.0 == self.1
    }

    pub fn contains(&self, s: usize) -> bool {
        self.0 <= s && s <= self.1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Y,
    X,
}

/// A root-vector letter `y_J` or `x_J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub kind: Kind,
    pub iv: Interval,
}

impl Letter {
    pub fn x(i: usize, j: usize) -> Self {
        Letter { kind: Kind::X, iv: Interval(i, j) }
    }
    pub fn y(i: usize, j: usize) -> Self {
        Letter { kind: Kind::Y, iv: Interval(i, j) }
    }
}

/// Generator in a user-supplied word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    K(usize),
    H(usize),
    Y(Interval),
    X(Interval),
}

/// Rank data: Cartan matrix, interval list and root weights.
#[derive(Clone, Debug)]
pub struct Lie {
    pub n: usize,
    pub intervals: Vec<Interval>,
    pub cartan: Vec<Vec<i64>>,
    weights: Vec<Vec<i64>>,
}

impl Lie {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        let mut intervals = Vec::new();
        for i in 1..=n {
            for j in i..=n {
                intervals.push(Interval(i, j));
            }
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| if a == b { 2 } else if a.abs_diff(b) == 1 { -1 } else { 0 })
                    .collect()
            })
            .collect();
        let weights = intervals
            .iter()
            .map(|iv| (0..n).map(|l| (iv.0..=iv.1).map(|s| cartan[l][s - 1]).sum()).collect())
            .collect();
        Lie { n, intervals, cartan, weights }
    }

    pub fn nint(&self) -> usize {
        self.intervals.len()
    }

    pub fn idx(&self, iv: Interval) -> usize {
        let (i, j) = (iv.0, iv.1);
        debug_assert!(1 <= i && i <= j && j <= self.n);
        (1..i).map(|a| self.n - a + 1).sum::<usize>() + (j - i)
    }

    pub fn check(&self, iv: Interval) -> Result<(), PbwError> {
        if iv.0 < 1 || iv.0 > iv.1 || iv.1 > self.n {
            Err(PbwError::IndexOutOfRank(iv.1.max(iv.0), self.n))
        } else {
            Ok(())
        }
    }

    /// Weight of `x_J` on `H_1..H_n`: `[H_l, x_J] = w_l x_J`.
    pub fn weight(&self, iv: Interval) -> &[i64] {
        &self.weights[self.idx(iv)]
    }

    pub fn letter_weight(&self, l: Letter, e: u32, acc: &mut [i64]) {
        let w = self.weight(l.iv);
        let s = if l.kind == Kind::X { e as i64 } else { -(e as i64) };
        for (a, b) in acc.iter_mut().zip(w) {
            *a += s * b;
        }
    }
}

/// PBW monomial in one slot: `k^k · H^h · Π y_J^{y[J]} · Π x_J^{x[J]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub k: Vec<Exp>,
    pub h: Vec<u32>,
    pub y: Vec<u32>,
    pub x: Vec<u32>,
}

impl Mono {
    pub fn one(lie: &Lie) -> Self {
        Mono { k: vec![Exp::zero(); lie.n], h: vec![0; lie.n], y: vec![0; lie.nint()], x: vec![0; lie.nint()] }
    }

    pub fn is_cartan(&self) -> bool {
        self.x.iter().all(|e| *e == 0) && self.y.iter().all(|e| *e == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_cartan() && self.h.iter().all(|e| *e == 0) && self.k.iter().all(|e| e.is_zero())
    }

    /// Root height carried by the `x` letters.
    pub fn x_degree(&self, lie: &Lie) -> u32 {
        self.x.iter().zip(&lie.intervals).map(|(e, iv)| e * iv.len() as u32).sum()
    }

    pub fn y_degree(&self, lie: &Lie) -> u32 {
        self.y.iter().zip(&lie.intervals).map(|(e, iv)| e * iv.len() as u32).sum()
    }

    /// Weight of the root-vector part.
    pub fn weight(&self, lie: &Lie) -> Vec<i64> {
        let mut w = vec![0i64; lie.n];
        for (t, iv) in lie.intervals.iter().enumerate() {
            if self.y[t] > 0 {
                lie.letter_weight(Letter { kind: Kind::Y, iv: *iv }, self.y[t], &mut w);
            }
            if self.x[t] > 0 {
                lie.letter_weight(Letter { kind: Kind::X, iv: *iv }, self.x[t], &mut w);
            }
        }
        w
    }

    /// Root-vector letters in PBW order.
    pub fn letters(&self, lie: &Lie) -> Vec<(Letter, u32)> {
        let mut out = Vec::new();
        for (t, iv) in lie.intervals.iter().enumerate() {
            if self.y[t] > 0 {
                out.push((Letter { kind: Kind::Y, iv: *iv }, self.y[t]));
            }
        }
        for (t, iv) in lie.intervals.iter().enumerate() {
            if self.x[t] > 0 {
                out.push((Letter { kind: Kind::X, iv: *iv }, self.x[t]));
            }
        }
        out
    }
}

/// `exp((h/4)·Σ quad[a][b] H_a H_b)` with `a, b` running over `(slot, index)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prefactor {
    dim: usize,
    quad: Vec<Exp>,
}

impl Prefactor {
    pub fn identity(slots: usize, rank: usize) -> Self {
        let dim = slots * rank;
        Prefactor { dim, quad: vec![Exp::zero(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> Exp {
        self.quad[a * self.dim + b]
    }

    /// Add `c` to the coefficient of `H_a H_b` keeping the matrix symmetric.
    pub fn add_coupling(&mut self, a: usize, b: usize, c: Exp) {
        if a == b {
            self.quad[a * self.dim + a] += c;
        } else {
            let half = c / Exp::from_integer(2);
            self.quad[a * self.dim + b] += half;
            self.quad[b * self.dim + a] += half;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.quad.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, o: &Prefactor) -> Prefactor {
        assert_eq!(self.dim, o.dim);
        Prefactor { dim: self.dim, quad: self.quad.iter().zip(&o.quad).map(|(a, b)| a + b).collect() }
    }

    /// `Qv` for an integer vector `v`.
    pub fn apply(&self, v: &[i64]) -> Vec<Exp> {
        (0..self.dim)
            .map(|a| (0..self.dim).map(|b| self.get(a, b) * Exp::from_integer(v[b])).sum())
            .collect()
    }

    /// `vᵀQv`.
    pub fn form(&self, v: &[i64]) -> Exp {
        self.apply(v).iter().zip(v).map(|(a, b)| a * Exp::from_integer(*b)).sum()
    }

    /// `vᵀQv` for rational `v` (representation eigenvalues).
    pub fn form_rat(&self, v: &[Exp]) -> Exp {
        let mut s = Exp::zero();
        for a in 0..self.dim {
            for b in 0..self.dim {
                s += self.get(a, b) * v[a] * v[b];
            }
        }
        s
    }

    /// Re-index: new coordinate `a` reads old coordinate `src[a]`, or nothing.
    pub fn remap(&self, new_dim: usize, src: &[Option<usize>]) -> Prefactor {
        let mut quad = vec![Exp::zero(); new_dim * new_dim];
        for a in 0..new_dim {
            for b in 0..new_dim {
                if let (Some(sa), Some(sb)) = (src[a], src[b]) {
                    quad[a * new_dim + b] = self.get(sa, sb);
                }
            }
        }
        Prefactor { dim: new_dim, quad }
    }

    /// Substitute `H_a ↦ Σ_b m[a][b] H'_b` (linear change of Cartan variables).
    pub fn substitute(&self, new_dim: usize, m: &[Vec<Exp>]) -> Prefactor {
        let mut quad = vec![Exp::zero(); new_dim * new_dim];
        for a in 0..self.dim {
            for b in 0..self.dim {
                let c = self.get(a, b);
                if c.is_zero() {
                    continue;
                }
                for (x, mx) in m[a].iter().enumerate() {
                    if mx.is_zero() {
                        continue;
                    }
                    for (y, my) in m[b].iter().enumerate() {
                        quad[x * new_dim + y] += c * mx * my;
                    }
                }
            }
        }
        Prefactor { dim: new_dim, quad }
    }

    pub fn quad(&self) -> &[Exp] {
        &self.quad
    }
}

/// Key of a term: prefactor and one monomial per slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub pre: Prefactor,
    pub monos: Vec<Mono>,
}

/// Finite sum of terms over `slots` tensor factors of `U_h(sl_{rank+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    rank: usize,
    slots: usize,
    trunc: Option<u32>,
    terms: BTreeMap<Term, QScalar>,
}

impl Element {
    pub fn zero(rank: usize, slots: usize) -> Self {
        Element { rank, slots, trunc: None, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, slots: usize) -> Self {
        Element::scalar(QScalar::one(), rank, slots)
    }

    pub fn scalar(c: QScalar, rank: usize, slots: usize) -> Self {
        let lie = Lie::new(rank);
        let mut e = Element::zero(rank, slots);
        e.add_term(Term { pre: Prefactor::identity(slots, rank), monos: vec![Mono::one(&lie); slots] }, c);
        e
    }

    /// One-slot element `c · mono`.
    pub fn from_mono(rank: usize, mono: Mono, c: QScalar) -> Self {
        let mut e = Element::zero(rank, 1);
        e.add_term(Term { pre: Prefactor::identity(1, rank), monos: vec![mono] }, c);
        e
    }

    pub fn from_term(rank: usize, term: Term, c: QScalar) -> Self {
        let mut e = Element::zero(rank, term.monos.len());
        e.add_term(term, c);
        e
    }

    pub fn letter_element(rank: usize, l: Letter, e: u32) -> Result<Self, PbwError> {
        let lie = Lie::new(rank);
        lie.check(l.iv)?;
        let mut m = Mono::one(&lie);
        match l.kind {
            Kind::X => m.x[lie.idx(l.iv)] = e,
            Kind::Y => m.y[lie.idx(l.iv)] = e,
        }
        Ok(Element::from_mono(rank, m, QScalar::one()))
    }

    /// `x_{i,j}`.
    pub fn x(rank: usize, i: usize, j: usize) -> Result<Self, PbwError> {
        Element::letter_element(rank, Letter::x(i, j), 1)
    }

    /// `y_{i,j}`.
    pub fn y(rank: usize, i: usize, j: usize) -> Result<Self, PbwError> {
        Element::letter_element(rank, Letter::y(i, j), 1)
    }

    /// `k_i^c`.
    pub fn k(rank: usize, i: usize, c: Exp) -> Result<Self, PbwError> {
        let mut kv = vec![Exp::zero(); rank];
        if i == 0 || i > rank {
            return Err(PbwError::IndexOutOfRank(i, rank));
        }
        kv[i - 1] = c;
        Ok(Element::kvec(rank, kv))
    }

    /// `Π k_i^{c_i}`.
    pub fn kvec(rank: usize, kv: Vec<Exp>) -> Self {
        let lie = Lie::new(rank);
        let mut m = Mono::one(&lie);
        m.k = kv;
        Element::from_mono(rank, m, QScalar::one())
    }

    /// `H_i`.
    pub fn h(rank: usize, i: usize) -> Result<Self, PbwError> {
        if i == 0 || i > rank {
            return Err(PbwError::IndexOutOfRank(i, rank));
        }
        let lie = Lie::new(rank);
        let mut m = Mono::one(&lie);
        m.h[i - 1] = 1;
        Ok(Element::from_mono(rank, m, QScalar::one()))
    }

    /// Pure prefactor `exp((h/4)·Q)`.
    pub fn prefactor(rank: usize, pre: Prefactor) -> Self {
        let slots = pre.dim() / rank;
        let lie = Lie::new(rank);
        Element::from_term(rank, Term { pre, monos: vec![Mono::one(&lie); slots] }, QScalar::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    pub fn lie(&self) -> Lie {
        Lie::new(self.rank)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &QScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> QScalar {
        self.terms.get(t).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn add_term(&mut self, t: Term, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    fn compatible(&self, o: &Element) -> Result<(), PbwError> {
        if self.rank != o.rank {
            return Err(PbwError::RankMismatch(self.rank, o.rank));
        }
        if self.slots != o.slots {
            return Err(PbwError::SlotMismatch(self.slots, o.slots));
        }
        Ok(())
    }

    fn merged_trunc(&self, o: &Element) -> Option<u32> {
        match (self.trunc, o.trunc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, o: &Element) -> Result<Element, PbwError> {
        self.compatible(o)?;
        let mut r = self.clone();
        r.trunc = self.merged_trunc(o);
        for (t, c) in &o.terms {
            r.add_term(t.clone(), c.clone());
        }
        let t = r.trunc;
        Ok(r.truncated_to(t))
    }

    pub fn sub(&self, o: &Element) -> Result<Element, PbwError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&QScalar::from_int(-1))
    }

    pub fn scale(&self, s: &QScalar) -> Element {
        let mut r = Element { rank: self.rank, slots: self.slots, trunc: self.trunc, terms: BTreeMap::new() };
        if s.is_zero() {
            return r;
        }
        for (t, c) in &self.terms {
            r.add_term(t.clone(), c * s);
        }
        r
    }

    /// Total `x` root height of a term.
    pub fn term_x_degree(&self, t: &Term) -> u32 {
        let lie = self.lie();
        t.monos.iter().map(|m| m.x_degree(&lie)).sum()
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|t| self.term_x_degree(t)).max().unwrap_or(0)
    }

    /// Keep only terms of total `x`-degree at most `d` and record the cutoff.
    pub fn truncate(&self, d: u32) -> Element {
        self.clone().truncated_to(Some(d))
    }

    fn truncated_to(mut self, d: Option<u32>) -> Element {
        if let Some(d) = d {
            let lie = self.lie();
            self.terms.retain(|t, _| t.monos.iter().map(|m| m.x_degree(&lie)).sum::<u32>() <= d);
            self.trunc = Some(d);
        }
        self
    }

    /// Forget the truncation marker.
    pub fn untruncated(&self) -> Element {
        let mut r = self.clone();
        r.trunc = None;
        r
    }

    /// Apply `f` to every term, collecting the results.
    pub fn map_terms<F>(&self, slots: usize, mut f: F) -> Element
    where
        F: FnMut(&Term, &QScalar) -> Vec<(Term, QScalar)>,
    {
        let mut r = Element { rank: self.rank, slots, trunc: self.trunc, terms: BTreeMap::new() };
        for (t, c) in &self.terms {
            for (t2, c2) in f(t, c) {
                r.add_term(t2, c2);
            }
        }
        r
    }

    /// `a ⊗ b`: slots concatenated, prefactors placed block-diagonally.
    pub fn tensor(&self, o: &Element) -> Result<Element, PbwError> {
        if self.rank != o.rank {
            return Err(PbwError::RankMismatch(self.rank, o.rank));
        }
        let n = self.rank;
        let slots = self.slots + o.slots;
        let dim = slots * n;
        let da = self.slots * n;
        let src_a: Vec<Option<usize>> = (0..dim).map(|a| if a < da { Some(a) } else { None }).collect();
        let src_b: Vec<Option<usize>> = (0..dim).map(|a| if a >= da { Some(a - da) } else { None }).collect();
        let mut r = Element { rank: n, slots, trunc: self.merged_trunc(o), terms: BTreeMap::new() };
        for (ta, ca) in &self.terms {
            for (tb, cb) in &o.terms {
                let pre = ta.pre.remap(dim, &src_a).add(&tb.pre.remap(dim, &src_b));
                let mut monos = ta.monos.clone();
                monos.extend(tb.monos.iter().cloned());
                r.add_term(Term { pre, monos }, ca * cb);
            }
        }
        Ok(r)
    }

    /// Place slot `s` of `self` at slot `map[s]` of a `new_slots`-slot element; other slots get `1`.
    pub fn embed(&self, new_slots: usize, map: &[usize]) -> Element {
        assert_eq!(map.len(), self.slots);
        let n = self.rank;
        let lie = self.lie();
        let dim = new_slots * n;
        let mut src = vec![None; dim];
        for (s, t) in map.iter().enumerate() {
            for i in 0..n {
                src[t * n + i] = Some(s * n + i);
            }
        }
        self.map_terms(new_slots, |t, c| {
            let mut monos = vec![Mono::one(&lie); new_slots];
            for (s, m) in t.monos.iter().enumerate() {
                monos[map[s]] = m.clone();
            }
            vec![(Term { pre: t.pre.remap(dim, &src), monos }, c.clone())]
        })
    }

    /// Permute slots: slot `s` moves to `perm[s]`.
    pub fn permute(&self, perm: &[usize]) -> Element {
        self.embed(self.slots, perm)
    }

    /// The flip `τ(a ⊗ b) = b ⊗ a` on two slots.
    pub fn flip(&self) -> Element {
        assert_eq!(self.slots, 2, "flip needs two slots");
        self.permute(&[1, 0])
    }

    pub fn mul(&self, o: &Element) -> Result<Element, PbwError> {
        self.mul_with(o, &Rules::default())
    }

    pub fn mul_with(&self, o: &Element, rules: &Rules) -> Result<Element, PbwError> {
        self.compatible(o)?;
        let mut r = product::multiply(self, o, rules)?;
        r.trunc = self.merged_trunc(o);
        let t = r.trunc;
        Ok(r.truncated_to(t))
    }

    pub fn pow(&self, e: u32) -> Result<Element, PbwError> {
        let mut r = Element::one(self.rank, self.slots);
        r.trunc = self.trunc;
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    pub fn with_trunc(mut self, d: Option<u32>) -> Element {
        self.trunc = d;
        self
    }

    /// Coefficient-wise map (e.g. substituting scalars); zero results are dropped.
    pub fn map_coeffs<F: Fn(&QScalar) -> QScalar>(&self, f: F) -> Element {
        self.map_terms(self.slots, |t, c| vec![(t.clone(), f(c))])
    }

    pub fn into_terms(self) -> BTreeMap<Term, QScalar> {
        self.terms
    }
}

/// Straighten a word of generators (with integer exponents; `K` and `H` may appear anywhere).
pub fn straighten_word(word: &[(Gen, i64)], rank: usize) -> Result<Element, PbwError> {
    straighten_word_with(word, rank, &Rules::default())
}

pub fn straighten_word_with(word: &[(Gen, i64)], rank: usize, rules: &Rules) -> Result<Element, PbwError> {
    let mut acc = Element::one(rank, 1);
    for (g, e) in word {
        let f = match g {
            Gen::K(i) => Element::k(rank, *i, Exp::from_integer(*e))?,
            Gen::H(i) => {
                let h = Element::h(rank, *i)?;
                let mut p = Element::one(rank, 1);
                for _ in 0..(*e).max(0) {
                    p = p.mul(&h)?;
                }
                p
            }
            Gen::Y(iv) => Element::letter_element(rank, Letter { kind: Kind::Y, iv: *iv }, (*e).max(0) as u32)?,
            Gen::X(iv) => Element::letter_element(rank, Letter { kind: Kind::X, iv: *iv }, (*e).max(0) as u32)?,
        };
        acc = acc.mul_with(&f, rules)?;
    }
    Ok(acc)
}

/// Move a root vector (or its power `e`) sitting in `slot` to the right of a prefactor:
/// `g · P = P · (k-correction) · g`. Returns the prefactor and the correction
/// `q^{Q(w)/2} k^{-2Qw}` as a tensor element over the prefactor's slots.
pub fn commute_past_tensor_prefactor(rank: usize, slot: usize, letter: Letter, e: u32, pre: &Prefactor) -> (Prefactor, Element) {
    let lie = Lie::new(rank);
    let slots = pre.dim() / rank;
    let mut w = vec![0i64; pre.dim()];
    let mut wl = vec![0i64; rank];
    lie.letter_weight(letter, e, &mut wl);
    w[slot * rank..(slot + 1) * rank].copy_from_slice(&wl);
    let qw = pre.apply(&w);
    let c = QScalar::q_pow(pre.form(&w) / Exp::from_integer(2));
    let mut corr = Element::scalar(c, rank, 1);
    for s in 0..slots {
        let kv: Vec<Exp> = (0..rank).map(|i| -Exp::from_integer(2) * qw[s * rank + i]).collect();
        let f = Element::kvec(rank, kv);
        corr = if s == 0 { corr.mul(&f).expect("Cartan") } else { corr.tensor(&f).expect("same rank") };
    }
    (pre.clone(), corr)
}

/// `[H_l, ·]`-weight of a word of letters.
pub(crate) fn word_weight(lie: &Lie, w: &[(Letter, u32)]) -> Vec<i64> {
    let mut acc = vec![0i64; lie.n];
    for (l, e) in w {
        lie.letter_weight(*l, *e, &mut acc);
    }
    acc
}

/// Expansion of `Π_l (H_l - w_l)^{r_l}` as (coefficient, exponent vector).
pub(crate) fn shifted_h_power(r: &[u32], w: &[i64]) -> Vec<(BigRational, Vec<u32>)> {
    let mut out: Vec<(BigRational, Vec<u32>)> = vec![(BigRational::one(), vec![0; r.len()])];
    for (l, (&rl, &wl)) in r.iter().zip(w).enumerate() {
        if rl == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (c, e) in &out {
            let mut binom = BigRational::one();
            for t in 0..=rl {
                // C(rl, t) H^t (-wl)^{rl - t}
                let mut coeff = binom.clone();
                for _ in 0..(rl - t) {
                    coeff *= BigRational::from_integer((-wl).into());
                }
                if !coeff.is_zero() {
                    let mut e2 = e.clone();
                    e2[l] += t;
                    next.push((c * &coeff, e2));
                }
                binom = binom * BigRational::from_integer(((rl - t) as i64).into())
                    / BigRational::from_integer(((t + 1) as i64).into());
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::qint;

    fn e(n: i64) -> Exp {
        Exp::from_integer(n)
    }

    #[test]
    fn interval_order_and_weights() {
        let lie = Lie::new(2);
        assert_eq!(lie.intervals, vec![Interval(1, 1), Interval(1, 2), Interval(2, 2)]);
        assert_eq!(lie.weight(Interval(1, 1)), &[2, -1]);
        assert_eq!(lie.weight(Interval(1, 2)), &[1, 1]);
        let lie3 = Lie::new(3);
        assert_eq!(lie3.idx(Interval(2, 3)), 4);
        assert_eq!(lie3.weight(Interval(1, 3)), &[1, 0, 1]);
    }

    #[test]
    fn ordered_product_is_unchanged() {
        let y = Element::y(1, 1, 1).unwrap();
        let x = Element::x(1, 1, 1).unwrap();
        let yx = y.mul(&x).unwrap();
        assert_eq!(yx.len(), 1);
        let (t, c) = yx.terms().next().unwrap();
        assert!(c.is_one());
        assert_eq!(t.monos[0].y, vec![1]);
        assert_eq!(t.monos[0].x, vec![1]);
    }

    #[test]
    fn commutator_is_bracket() {
        let y = Element::y(1, 1, 1).unwrap();
        let x = Element::x(1, 1, 1).unwrap();
        let xy = x.mul(&y).unwrap();
        let expect = y.mul(&x).unwrap().add(&hbracket(1, 1, 0)).unwrap();
        assert_eq!(xy, expect);
    }

    #[test]
    fn x_past_prefactor() {
        let mut pre = Prefactor::identity(1, 1);
        pre.add_coupling(0, 0, e(-1));
        let p = Element::prefactor(1, pre);
        let x = Element::x(1, 1, 1).unwrap();
        let lhs = x.mul(&p).unwrap();
        let rhs = p.mul(&Element::k(1, 1, e(4)).unwrap()).unwrap().mul(&x).unwrap().scale(&QScalar::q_int_pow(-2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn x_k_and_h() {
        let x = Element::x(1, 1, 1).unwrap();
        let k = Element::k(1, 1, e(1)).unwrap();
        assert_eq!(x.mul(&k).unwrap(), k.mul(&x).unwrap().scale(&QScalar::qbar()));
        // x H = (H - 2) x
        let h = Element::h(1, 1).unwrap();
        let lhs = x.mul(&h).unwrap();
        let rhs = h.mul(&x).unwrap().sub(&x.scale(&QScalar::from_int(2))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn straightening_lemma_v() {
        let w = [(Gen::X(Interval(1, 1)), 1), (Gen::Y(Interval(1, 1)), 2)];
        let got = straighten_word(&w, 1).unwrap();
        let y = Element::y(1, 1, 1).unwrap();
        let x = Element::x(1, 1, 1).unwrap();
        let expect = y
            .pow(2)
            .unwrap()
            .mul(&x)
            .unwrap()
            .add(&hbracket(1, 1, 1).scale(&qint(2)).mul(&y).unwrap())
            .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn h_power_shift() {
        let v = shifted_h_power(&[2], &[3]);
        // (H-3)^2 = H^2 - 6H + 9
        let m: BTreeMap<Vec<u32>, BigRational> = v.into_iter().map(|(c, e)| (e, c)).collect();
        assert_eq!(m[&vec![2]], BigRational::from_integer(1.into()));
        assert_eq!(m[&vec![1]], BigRational::from_integer((-6).into()));
        assert_eq!(m[&vec![0]], BigRational::from_integer(9.into()));
    }

    #[test]
    fn tensor_prefactor_corrections() {
        let mut p = Prefactor::identity(2, 1);
        p.add_coupling(0, 1, e(1));
        let (_, cx) = commute_past_tensor_prefactor(1, 1, Letter::x(1, 1), 1, &p);
        assert_eq!(cx, Element::k(1, 1, e(-2)).unwrap().tensor(&Element::one(1, 1)).unwrap());
        let (_, cy) = commute_past_tensor_prefactor(1, 1, Letter::y(1, 1), 1, &p);
        assert_eq!(cy, Element::k(1, 1, e(2)).unwrap().tensor(&Element::one(1, 1)).unwrap());
        // consistency with the product
        let pe = Element::prefactor(1, p.clone());
        let g = Element::one(1, 1).tensor(&Element::x(1, 1, 1).unwrap()).unwrap();
        assert_eq!(g.mul(&pe).unwrap(), pe.mul(&cx).unwrap().mul(&g).unwrap());
        // far-apart indices in rank 3 are untouched
        let mut p3 = Prefactor::identity(2, 3);
        p3.add_coupling(0, 3 + 2, e(1));
        let (_, c3) = commute_past_tensor_prefactor(3, 1, Letter::x(1, 1), 1, &p3);
        assert_eq!(c3, Element::one(3, 2));
    }

    #[test]
    fn tensor_and_flip() {
        let x = Element::x(1, 1, 1).unwrap();
        let k = Element::k(1, 1, e(1)).unwrap();
        let xk = x.tensor(&k).unwrap();
        assert_eq!(xk.flip(), k.tensor(&x).unwrap());
        assert_eq!(xk.slots(), 2);
    }
}
