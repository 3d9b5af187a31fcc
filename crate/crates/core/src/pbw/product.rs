//! Product of elements: prefactor, Cartan and root-vector parts are moved
//! into PBW order slot by slot.

use std::collections::HashMap;

use num_traits::Zero;

use super::rewrite::{straighten_letters, CartanPoly, Word};
use super::{shifted_h_power, word_weight, Element, Letter, Lie, Mono, PbwError, Rules, Term};
use crate::scalars::{Exp, QScalar};

type Cache = HashMap<Vec<(Letter, u32)>, Vec<(Word, CartanPoly)>>;

fn mono_from_word(lie: &Lie, w: &Word, k: Vec<Exp>, h: Vec<u32>) -> Mono {
    let mut m = Mono { k, h, y: vec![0; lie.nint()], x: vec![0; lie.nint()] };
    for (l, e) in w {
        let t = lie.idx(l.iv);
        match l.kind {
            super::Kind::X => m.x[t] += e,
            super::Kind::Y => m.y[t] += e,
        }
    }
    m
}

/// `a · b` for one-slot monomials, as a list of PBW monomials.
fn mul_slot(lie: &Lie, a: &Mono, b: &Mono, rules: &Rules, cache: &mut Cache) -> Result<Vec<(QScalar, Mono)>, PbwError> {
    let la = a.letters(lie);
    let lb = b.letters(lie);
    let wa = word_weight(lie, &la);
    // M k^c = q^{-c·w/2} k^c M
    let mut qexp = Exp::zero();
    for l in 0..lie.n {
        qexp -= b.k[l] * Exp::from_integer(wa[l]) / Exp::from_integer(2);
    }
    let base = QScalar::q_pow(qexp);
    // M f(H) = f(H - w) M
    let hpoly = shifted_h_power(&b.h, &wa);
    let k0: Vec<Exp> = a.k.iter().zip(&b.k).map(|(x, y)| x + y).collect();
    let mut word = la;
    word.extend(lb);
    if !cache.contains_key(&word) {
        let nf = straighten_letters(lie, &word, rules)?;
        cache.insert(word.clone(), nf);
    }
    let nf = &cache[&word];
    let mut out = Vec::new();
    for (w, poly) in nf {
        for (kv, c) in poly {
            let k: Vec<Exp> = k0.iter().zip(kv).map(|(x, y)| x + y).collect();
            let cb = c * &base;
            for (hc, hv) in &hpoly {
                let h: Vec<u32> = a.h.iter().zip(hv).map(|(x, y)| x + y).collect();
                out.push((cb.scale(hc), mono_from_word(lie, w, k.clone(), h)));
            }
        }
    }
    Ok(out)
}

pub(super) fn multiply(a: &Element, b: &Element, rules: &Rules) -> Result<Element, PbwError> {
    let lie = a.lie();
    let n = lie.n;
    let slots = a.slots();
    let mut cache = Cache::new();
    let mut out = Element::zero(n, slots);
    let trunc = match (a.trunc(), b.trunc()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    for (ta, ca) in a.terms() {
        let wts: Vec<i64> = ta.monos.iter().flat_map(|m| m.weight(&lie)).collect();
        for (tb, cb) in b.terms() {
            // M P = P k^{-2Qw} q^{Q(w)/2} M
            let qw = tb.pre.apply(&wts);
            let scal = QScalar::q_pow(tb.pre.form(&wts) / Exp::from_integer(2));
            let pre = ta.pre.add(&tb.pre);
            let mut per_slot: Vec<Vec<(QScalar, Mono)>> = Vec::with_capacity(slots);
            for s in 0..slots {
                let mut ma = ta.monos[s].clone();
                for i in 0..n {
                    ma.k[i] -= Exp::from_integer(2) * qw[s * n + i];
                }
                let r = mul_slot(&lie, &ma, &tb.monos[s], rules, &mut cache)?;
                per_slot.push(r);
            }
            let c0 = &(ca * cb) * &scal;
            let mut partial: Vec<(QScalar, Vec<Mono>)> = vec![(c0, Vec::with_capacity(slots))];
            for r in per_slot {
                let mut next = Vec::with_capacity(partial.len() * r.len());
                for (c, ms) in &partial {
                    for (c2, m) in &r {
                        let mut ms2 = ms.clone();
                        ms2.push(m.clone());
                        next.push((c * c2, ms2));
                    }
                }
                partial = next;
            }
            for (c, monos) in partial {
                if let Some(d) = trunc {
                    if monos.iter().map(|m| m.x_degree(&lie)).sum::<u32>() > d {
                        continue;
                    }
                }
                out.add_term(Term { pre: pre.clone(), monos }, c);
            }
        }
    }
    Ok(out)
}
