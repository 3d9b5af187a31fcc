//! Coproduct, antipode and counit on PBW elements and prefactors.

use std::collections::HashMap;

use num_traits::Zero;

use crate::pbw::{interval_expand, Element, Interval, Kind, Letter, Lie, Mono, PbwError, Prefactor, Rules, Term};
use crate::scalars::{Exp, QScalar};

fn mono_element(rank: usize, m: &Mono) -> Element {
    Element::from_mono(rank, m.clone(), QScalar::one())
}

/// Tensor of one-slot monomials as a multi-slot element (unit prefactor).
fn monos_element(rank: usize, ms: &[Mono]) -> Element {
    let mut it = ms.iter();
    let first = it.next().map(|m| mono_element(rank, m)).unwrap_or_else(|| Element::one(rank, 0));
    it.fold(first, |acc, m| acc.tensor(&mono_element(rank, m)).expect("same rank"))
}

struct CoproductCache {
    rank: usize,
    rules: Rules,
    letters: HashMap<Letter, Element>,
}

impl CoproductCache {
    fn new(rank: usize, rules: Rules) -> Self {
        CoproductCache { rank, rules, letters: HashMap::new() }
    }

    fn simple(&self, kind: Kind, i: usize) -> Element {
        let n = self.rank;
        let g = match kind {
            Kind::X => Element::x(n, i, i),
            Kind::Y => Element::y(n, i, i),
        }
        .expect("index in range");
        let k = Element::k(n, i, Exp::from_integer(1)).expect("index in range");
        let kb = Element::k(n, i, Exp::from_integer(-1)).expect("index in range");
        g.tensor(&k).unwrap().add(&kb.tensor(&g).unwrap()).unwrap()
    }

    fn letter(&mut self, l: Letter) -> Result<Element, PbwError> {
        if let Some(e) = self.letters.get(&l) {
            return Ok(e.clone());
        }
        let out = if l.iv.is_simple() {
            self.simple(l.kind, l.iv.0)
        } else {
            let i = l.iv.0;
            let a = self.letter(Letter { kind: l.kind, iv: Interval::simple(i) })?;
            let b = self.letter(Letter { kind: l.kind, iv: Interval(i + 1, l.iv.1) })?;
            let half = Exp::new(1, 2);
            let ab = a.mul_with(&b, &self.rules)?.scale(&QScalar::q_pow(half));
            let ba = b.mul_with(&a, &self.rules)?.scale(&QScalar::q_pow(-half));
            ab.sub(&ba)?
        };
        self.letters.insert(l, out.clone());
        Ok(out)
    }

    fn mono(&mut self, m: &Mono) -> Result<Element, PbwError> {
        let n = self.rank;
        let lie = Lie::new(n);
        let mut kpart = Mono::one(&lie);
        kpart.k = m.k.clone();
        let mut acc = mono_element(n, &kpart).tensor(&mono_element(n, &kpart))?;
        for (i, r) in m.h.iter().enumerate() {
            if *r == 0 {
                continue;
            }
            let h = Element::h(n, i + 1)?;
            let dh = h.tensor(&Element::one(n, 1))?.add(&Element::one(n, 1).tensor(&h)?)?;
            for _ in 0..*r {
                acc = acc.mul_with(&dh, &self.rules)?;
            }
        }
        for (l, e) in m.letters(&lie) {
            let d = self.letter(l)?;
            for _ in 0..e {
                acc = acc.mul_with(&d, &self.rules)?;
            }
        }
        Ok(acc)
    }
}

/// `Δ` applied to tensor slot `slot`, which is split into two adjacent slots.
pub fn coproduct_at(e: &Element, slot: usize) -> Result<Element, PbwError> {
    coproduct_at_with(e, slot, &Rules::default())
}

pub fn coproduct_at_with(e: &Element, slot: usize, rules: &Rules) -> Result<Element, PbwError> {
    let n = e.rank();
    let slots = e.slots();
    assert!(slot < slots, "slot out of range");
    let new_slots = slots + 1;
    let mut src = Vec::with_capacity(new_slots * n);
    for t in 0..new_slots {
        let old = if t <= slot { t } else { t - 1 };
        for i in 0..n {
            src.push(Some(old * n + i));
        }
    }
    let mut cache = CoproductCache::new(n, *rules);
    let mut out = Element::zero(n, new_slots).with_trunc(e.trunc());
    for (t, c) in e.terms() {
        let pre = t.pre.remap(new_slots * n, &src);
        let mid = cache.mono(&t.monos[slot])?;
        let mut full = if slot > 0 { monos_element(n, &t.monos[..slot]).tensor(&mid)? } else { mid };
        if slot + 1 < slots {
            full = full.tensor(&monos_element(n, &t.monos[slot + 1..]))?;
        }
        let piece = Element::prefactor(n, pre).mul_with(&full, rules)?.scale(c);
        out = out.add(&piece)?;
    }
    Ok(out)
}

/// `Δ` of a one-slot element.
pub fn coproduct(e: &Element) -> Result<Element, PbwError> {
    assert_eq!(e.slots(), 1, "coproduct takes a one-slot element");
    coproduct_at(e, 0)
}

pub fn coproduct_with(e: &Element, rules: &Rules) -> Result<Element, PbwError> {
    coproduct_at_with(e, 0, rules)
}

struct AntipodeCache {
    rank: usize,
    rules: Rules,
    letters: HashMap<Letter, Element>,
}

impl AntipodeCache {
    fn letter(&mut self, l: Letter) -> Result<Element, PbwError> {
        if let Some(e) = self.letters.get(&l) {
            return Ok(e.clone());
        }
        let n = self.rank;
        let simple = |s: usize| -> Element {
            match l.kind {
                Kind::X => Element::x(n, s, s).unwrap().scale(&-QScalar::q()),
                Kind::Y => Element::y(n, s, s).unwrap().scale(&-QScalar::qbar()),
            }
        };
        // S(x_J) = Σ c_w S(x_{w_m})⋯S(x_{w_1})
        let mut out = Element::zero(n, 1);
        for (c, w) in interval_expand(l.iv.0, l.iv.1) {
            let mut p = Element::one(n, 1);
            for s in w.iter().rev() {
                p = p.mul_with(&simple(*s), &self.rules)?;
            }
            out = out.add(&p.scale(&c))?;
        }
        self.letters.insert(l, out.clone());
        Ok(out)
    }

    /// `S(k^c H^r Y X) = S(X) S(Y) S(H)^r k^{-c}`.
    fn mono(&mut self, m: &Mono) -> Result<Element, PbwError> {
        let n = self.rank;
        let lie = Lie::new(n);
        let mut acc = Element::one(n, 1);
        for (l, e) in m.letters(&lie).into_iter().rev() {
            let s = self.letter(l)?;
            for _ in 0..e {
                acc = acc.mul_with(&s, &self.rules)?;
            }
        }
        for (i, r) in m.h.iter().enumerate() {
            let mh = Element::h(n, i + 1)?.neg();
            for _ in 0..*r {
                acc = acc.mul_with(&mh, &self.rules)?;
            }
        }
        let kinv = Element::kvec(n, m.k.iter().map(|c| -c).collect());
        acc.mul_with(&kinv, &self.rules)
    }
}

/// Antipode on tensor slot `slot`; the prefactor's `H^{(slot)}` changes sign.
pub fn antipode_at(e: &Element, slot: usize) -> Result<Element, PbwError> {
    antipode_at_with(e, slot, &Rules::default())
}

pub fn antipode_at_with(e: &Element, slot: usize, rules: &Rules) -> Result<Element, PbwError> {
    let n = e.rank();
    let slots = e.slots();
    let lie = Lie::new(n);
    let mut cache = AntipodeCache { rank: n, rules: *rules, letters: HashMap::new() };
    let mut flip = vec![vec![Exp::zero(); slots * n]; slots * n];
    for (a, row) in flip.iter_mut().enumerate() {
        row[a] = if a / n == slot { -Exp::from_integer(1) } else { Exp::from_integer(1) };
    }
    let mut out = Element::zero(n, slots).with_trunc(e.trunc());
    for (t, c) in e.terms() {
        // (id ⊗ S)(P·(M ⊗ N)) = (1 ⊗ S(N)) · P̃ · (M ⊗ 1)
        let s_mono = cache.mono(&t.monos[slot])?;
        let left = s_mono.embed(slots, &[slot]);
        let mut rest = t.monos.clone();
        rest[slot] = Mono::one(&lie);
        let right = Element::from_term(n, Term { pre: Prefactor::identity(slots, n), monos: rest }, QScalar::one());
        let pt = Element::prefactor(n, t.pre.substitute(slots * n, &flip));
        let piece = left.mul_with(&pt, rules)?.mul_with(&right, rules)?.scale(c);
        out = out.add(&piece)?;
    }
    Ok(out)
}

pub fn antipode(e: &Element) -> Result<Element, PbwError> {
    antipode_at(e, 0)
}

pub fn antipode_with(e: &Element, rules: &Rules) -> Result<Element, PbwError> {
    antipode_at_with(e, 0, rules)
}

/// `ε` on all slots: terms with `x`, `y` or `H` vanish, `k ↦ 1`, prefactors `↦ 1`.
pub fn counit(e: &Element) -> QScalar {
    let mut s = QScalar::zero();
    for (t, c) in e.terms() {
        if t.monos.iter().all(|m| m.is_cartan() && m.h.iter().all(|r| *r == 0)) {
            s += c;
        }
    }
    s
}

/// `ε` on tensor slot `slot`; the result has one slot fewer.
pub fn counit_at(e: &Element, slot: usize) -> Element {
    let n = e.rank();
    let slots = e.slots();
    assert!(slots >= 2, "partial counit needs two or more slots");
    let mut src = Vec::new();
    for t in 0..slots {
        if t != slot {
            for i in 0..n {
                src.push(t * n + i);
            }
        }
    }
    let src: Vec<Option<usize>> = src.into_iter().map(Some).collect();
    e.map_terms(slots - 1, |t, c| {
        let m = &t.monos[slot];
        if !(m.is_cartan() && m.h.iter().all(|r| *r == 0)) {
            return vec![];
        }
        let mut monos = t.monos.clone();
        monos.remove(slot);
        vec![(Term { pre: t.pre.remap((slots - 1) * n, &src), monos }, c.clone())]
    })
}

/// Multiply the two slots of a two-slot element, slot `left` on the left.
///
/// `m(P·(A ⊗ B)) = A · P(H, H) · k^{2Qw} q^{Q(w)/2} · B` with `w` the weight of `A`
/// placed in slot `left`.
pub fn contract(e: &Element, left: usize, rules: &Rules) -> Result<Element, PbwError> {
    assert_eq!(e.slots(), 2, "contraction takes a two-slot element");
    assert!(left < 2);
    let right = 1 - left;
    let n = e.rank();
    let lie = Lie::new(n);
    let mut sub = vec![vec![Exp::zero(); n]; 2 * n];
    for i in 0..n {
        sub[i][i] = Exp::from_integer(1);
        sub[n + i][i] = Exp::from_integer(1);
    }
    let mut out = Element::zero(n, 1).with_trunc(e.trunc());
    for (t, c) in e.terms() {
        let a = mono_element(n, &t.monos[left]);
        let b = mono_element(n, &t.monos[right]);
        let mut w = vec![0i64; 2 * n];
        w[left * n..(left + 1) * n].copy_from_slice(&t.monos[left].weight(&lie));
        let qw = t.pre.apply(&w);
        let kv: Vec<Exp> = (0..n).map(|i| Exp::from_integer(2) * (qw[i] + qw[n + i])).collect();
        let scal = QScalar::q_pow(t.pre.form(&w) / Exp::from_integer(2));
        let mid = Element::prefactor(n, t.pre.substitute(n, &sub)).mul_with(&Element::kvec(n, kv), rules)?;
        let piece = a.mul_with(&mid, rules)?.mul_with(&b, rules)?.scale(&(c * &scal));
        out = out.add(&piece)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64) -> Exp {
        Exp::from_integer(n)
    }

    #[test]
    fn generators() {
        let k = Element::k(1, 1, e(1)).unwrap();
        assert_eq!(coproduct(&k).unwrap(), k.tensor(&k).unwrap());
        let x = Element::x(1, 1, 1).unwrap();
        let kb = Element::k(1, 1, e(-1)).unwrap();
        assert_eq!(coproduct(&x).unwrap(), x.tensor(&k).unwrap().add(&kb.tensor(&x).unwrap()).unwrap());
        assert_eq!(coproduct(&Element::one(1, 1)).unwrap(), Element::one(1, 2));
        assert_eq!(antipode(&x).unwrap(), x.scale(&-QScalar::q()));
        assert_eq!(antipode(&k).unwrap(), kb);
        let h = Element::h(1, 1).unwrap();
        assert_eq!(antipode(&antipode(&h).unwrap()).unwrap(), h);
        assert!(counit(&k.pow(3).unwrap()).is_one());
        assert!(counit(&x.mul(&Element::y(1, 1, 1).unwrap()).unwrap()).is_zero());
        assert!(counit(&Element::one(1, 1)).is_one());
    }

    fn gens(n: usize) -> Vec<Element> {
        let mut v = vec![];
        for i in 1..=n {
            v.push(Element::x(n, i, i).unwrap());
            v.push(Element::y(n, i, i).unwrap());
            v.push(Element::k(n, i, e(1)).unwrap());
            v.push(Element::h(n, i).unwrap());
        }
        if n >= 2 {
            v.push(Element::x(n, 1, 2).unwrap());
            v.push(Element::y(n, 1, 2).unwrap());
        }
        v
    }

    #[test]
    fn coassociative_on_generators() {
        for n in 1..=2 {
            for g in gens(n) {
                let d = coproduct(&g).unwrap();
                let l = coproduct_at(&d, 0).unwrap();
                let r = coproduct_at(&d, 1).unwrap();
                assert_eq!(l, r, "{g}");
            }
        }
    }

    #[test]
    fn counit_law() {
        for n in 1..=2 {
            for g in gens(n) {
                let d = coproduct(&g).unwrap();
                assert_eq!(counit_at(&d, 0), g);
                assert_eq!(counit_at(&d, 1), g);
            }
        }
    }

    #[test]
    fn antipode_law() {
        let rules = Rules::default();
        for g in gens(1) {
            let d = coproduct(&g).unwrap();
            let eta = Element::scalar(counit(&g), 1, 1);
            let left = contract(&antipode_at(&d, 0).unwrap(), 0, &rules).unwrap();
            assert_eq!(left, eta, "{g}");
            let right = contract(&antipode_at(&d, 1).unwrap(), 0, &rules).unwrap();
            assert_eq!(right, eta, "{g}");
        }
    }

    #[test]
    fn antipode_reverses_products() {
        for n in 1..=2 {
            let g = gens(n);
            for a in &g {
                for b in &g {
                    let r = Rules::expansion();
                    let ab = a.mul_with(b, &r).unwrap();
                    let lhs = antipode_with(&ab, &r).unwrap();
                    let rhs = antipode_with(b, &r).unwrap().mul_with(&antipode_with(a, &r).unwrap(), &r).unwrap();
                    assert_eq!(lhs, rhs, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn prefactor_maps() {
        let mut p = Prefactor::identity(1, 1);
        p.add_coupling(0, 0, e(-1));
        let pe = Element::prefactor(1, p);
        assert_eq!(antipode(&pe).unwrap(), pe);
        assert!(counit(&pe).is_one());
        let d = coproduct(&pe).unwrap();
        // -(H⊗1 + 1⊗H)^2
        let mut q2 = Prefactor::identity(2, 1);
        q2.add_coupling(0, 0, e(-1));
        q2.add_coupling(1, 1, e(-1));
        q2.add_coupling(0, 1, e(-2));
        assert_eq!(d, Element::prefactor(1, q2));
    }
}
