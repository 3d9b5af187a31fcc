//! Interval generators as words in simple generators.

use std::collections::BTreeMap;

use crate::scalars::{Exp, QScalar};

/// Word in the simple generators `x_s`, by index.
pub type SimpleWord = Vec<usize>;

/// Edge directions of the path `i - i+1 - ... - j`; `true` is `→`.
pub type Orientation = Vec<bool>;

fn add_word(m: &mut BTreeMap<SimpleWord, QScalar>, w: SimpleWord, c: QScalar) {
    let e = m.entry(w.clone()).or_insert_with(QScalar::zero);
    *e += &c;
    if e.is_zero() {
        m.remove(&w);
    }
}

/// `x_{i,j}` via `x_{i,j} = q^{1/2} x_i x_{i+1,j} − q̄^{1/2} x_{i+1,j} x_i`.
pub fn interval_expand(i: usize, j: usize) -> Vec<(QScalar, SimpleWord)> {
    assert!(i <= j);
    if i == j {
        return vec![(QScalar::one(), vec![i])];
    }
    let half = Exp::new(1, 2);
    let mut m = BTreeMap::new();
    for (c, w) in interval_expand(i + 1, j) {
        let mut left = vec![i];
        left.extend(&w);
        add_word(&mut m, left, &c * &QScalar::q_pow(half));
        let mut right = w.clone();
        right.push(i);
        add_word(&mut m, right, -(&c * &QScalar::q_pow(-half)));
    }
    m.into_iter().map(|(w, c)| (c, w)).collect()
}

/// Lexicographically least word equal to `w` under `x_a x_b = x_b x_a` for `|a − b| > 1`.
pub fn normalize_far(w: &[usize]) -> SimpleWord {
    let mut rest: Vec<usize> = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let free = rest[..p].iter().all(|r| r.abs_diff(rest[p]) > 1);
            if free && best.map_or(true, |b| rest[p] < rest[b]) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter is always free");
        out.push(rest.remove(p));
    }
    out
}

/// All `2^{j−i}` orientations with `q^D = (−1)^{D←} q^{(D→ − D←)/2}` and the word `x_D`.
pub fn orientation_expand(i: usize, j: usize) -> Vec<(Orientation, QScalar, SimpleWord)> {
    assert!(i <= j);
    let edges = j - i;
    let mut out = Vec::with_capacity(1 << edges);
    for mask in 0..(1u64 << edges) {
        let orient: Orientation = (0..edges).map(|e| mask & (1 << e) == 0).collect();
        let mut word = std::collections::VecDeque::from(vec![j]);
        for l in (i..j).rev() {
            if orient[l - i] {
                word.push_front(l);
            } else {
                word.push_back(l);
            }
        }
        let right = orient.iter().filter(|d| **d).count() as i64;
        let left = edges as i64 - right;
        let sign = if left % 2 == 0 { 1 } else { -1 };
        let c = QScalar::q_pow(Exp::new(right - left, 2)).scale(&crate::scalars::big(sign));
        out.push((orient, c, normalize_far(&Vec::from(word))));
    }
    out
}

fn normalized(terms: impl IntoIterator<Item = (QScalar, SimpleWord)>) -> BTreeMap<SimpleWord, QScalar> {
    let mut m = BTreeMap::new();
    for (c, w) in terms {
        add_word(&mut m, normalize_far(&w), c);
    }
    m
}

/// `x_{i,j} = q^{1/2} x_{i,s} x_{s+1,j} − q̄^{1/2} x_{s+1,j} x_{i,s}` after expansion.
pub fn splitting_check(i: usize, s: usize, j: usize) -> bool {
    assert!(i <= s && s < j);
    let lhs = normalized(orientation_expand(i, j).into_iter().map(|(_, c, w)| (c, w)));
    let a = orientation_expand(i, s);
    let b = orientation_expand(s + 1, j);
    let half = Exp::new(1, 2);
    let mut rhs = Vec::new();
    for (_, ca, wa) in &a {
        for (_, cb, wb) in &b {
            let c = ca * cb;
            let mut ab = wa.clone();
            ab.extend(wb);
            rhs.push((&c * &QScalar::q_pow(half), ab));
            let mut ba = wb.clone();
            ba.extend(wa);
            rhs.push((-(&c * &QScalar::q_pow(-half)), ba));
        }
    }
    lhs == normalized(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definition_and_triple() {
        let e = interval_expand(1, 2);
        assert_eq!(e.len(), 2);
        assert!(e.contains(&(QScalar::q_pow(Exp::new(1, 2)), vec![1, 2])));
        assert!(e.contains(&(-QScalar::q_pow(Exp::new(-1, 2)), vec![2, 1])));
        assert_eq!(interval_expand(3, 3), vec![(QScalar::one(), vec![3])]);
        let e13 = interval_expand(1, 3);
        assert_eq!(e13.len(), 4);
        let m: BTreeMap<_, _> = e13.into_iter().map(|(c, w)| (w, c)).collect();
        assert_eq!(m[&vec![1, 2, 3]], QScalar::q());
        assert_eq!(m[&vec![3, 2, 1]], QScalar::qbar());
        assert_eq!(m[&vec![1, 3, 2]], -QScalar::one());
        assert_eq!(m[&vec![2, 3, 1]], -QScalar::one());
    }

    #[test]
    fn worked_orientation_example() {
        // edges 2→3, 3←4, 4→5, 5→6
        let all = orientation_expand(2, 6);
        assert_eq!(all.len(), 16);
        let d = all.iter().find(|(o, _, _)| o == &vec![true, false, true, true]).unwrap();
        assert_eq!(d.1, -QScalar::q());
        assert_eq!(d.2, vec![2, 4, 3, 5, 6]);
        let r = all.iter().find(|(o, _, _)| o.iter().all(|x| *x)).unwrap();
        assert_eq!(r.1, QScalar::q_int_pow(2));
        assert_eq!(r.2, vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn orientation_matches_recursion() {
        for i in 1..=4 {
            for j in i..=5 {
                let a = normalized(interval_expand(i, j));
                let b = normalized(orientation_expand(i, j).into_iter().map(|(_, c, w)| (c, w)));
                assert_eq!(a, b, "({i},{j})");
            }
        }
    }

    #[test]
    fn splitting() {
        assert!(splitting_check(1, 1, 2));
        assert!(splitting_check(1, 2, 3));
        assert!(splitting_check(2, 3, 5));
        for i in 1..=4 {
            for j in (i + 1)..=5 {
                for s in i..j {
                    assert!(splitting_check(i, s, j));
                }
            }
        }
    }

    #[test]
    fn far_normalization() {
        assert_eq!(normalize_far(&[4, 2, 3]), vec![2, 4, 3]);
        assert_eq!(normalize_far(&[3, 1]), vec![1, 3]);
        assert_eq!(normalize_far(&[2, 1]), vec![2, 1]);
    }
}
