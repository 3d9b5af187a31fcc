//! Exact evaluation in the fundamental representation of `sl_{n+1}` and its tensor powers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::hopf::{antipode_at_with, coproduct_at_with, coproduct_with};
use crate::pbw::{
    interval_expand, orientation_expand, straighten_word_with, Element, Gen, Interval, Kind, Letter, Lie, Mono,
    PbwError, Prefactor, Rules,
};
use crate::qcalc::qint;
use crate::rmatrix::{r_matrix_with, Generator};
use crate::scalars::{Exp, QScalar};

/// Square matrix over `QScalar`, stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, QScalar>>,
}

impl RepMatrix {
    pub fn zero(dim: usize) -> Self {
        RepMatrix { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag((0..dim).map(|_| QScalar::one()).collect())
    }

    pub fn diag(d: Vec<QScalar>) -> Self {
        let mut m = Self::zero(d.len());
        for (i, c) in d.into_iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    /// Matrix unit `E_{ij}` (0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim);
        m.set(i, j, QScalar::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> QScalar {
        self.rows[i].get(&j).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, c: QScalar) {
        if c.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, c);
        }
    }

    fn add_at(&mut self, i: usize, j: usize, c: QScalar) {
        let e = self.rows[i].entry(j).or_insert_with(QScalar::zero);
        *e += &c;
        if e.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    /// Non-zero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QScalar)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, c)| (i, *j, c)))
    }

    pub fn add(&self, o: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, o.dim);
        let mut r = self.clone();
        for (i, j, c) in o.entries() {
            r.add_at(i, j, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &RepMatrix) -> RepMatrix {
        self.add(&o.scale(&-QScalar::one()))
    }

    pub fn scale(&self, s: &QScalar) -> RepMatrix {
        let mut r = Self::zero(self.dim);
        if s.is_zero() {
            return r;
        }
        for (i, j, c) in self.entries() {
            r.set(i, j, c * s);
        }
        r
    }

    pub fn mul(&self, o: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, o.dim);
        let mut r = Self::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &o.rows[*k] {
                    r.add_at(i, *j, a * b);
                }
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> RepMatrix {
        let mut r = Self::identity(self.dim);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Kronecker product; basis index `i·dim(o) + k`.
    pub fn kron(&self, o: &RepMatrix) -> RepMatrix {
        let d = self.dim * o.dim;
        let mut r = Self::zero(d);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                r.set(i * o.dim + k, j * o.dim + l, a * b);
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// `Some(c)` when the matrix is `c·I`.
    pub fn scalar_value(&self) -> Option<QScalar> {
        let c = self.get(0, 0);
        if *self == Self::identity(self.dim).scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// The flip `e_a ⊗ e_b ↦ e_b ⊗ e_a` on `V_1 ⊗ V_2` with dimensions `d1, d2`.
    pub fn swap(d1: usize, d2: usize) -> RepMatrix {
        let mut r = Self::zero(d1 * d2);
        for a in 0..d1 {
            for b in 0..d2 {
                r.set(b * d1 + a, a * d2 + b, QScalar::one());
            }
        }
        r
    }
}

impl fmt::Display for RepMatrix {
    /// Row-major dump, one row per line, entries separated by `, `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A representation given by weight vectors and images of all root vectors.
#[derive(Clone, Debug)]
pub struct Rep {
    pub n: usize,
    pub dim: usize,
    /// `λ(v)_i`, the `H_i`-eigenvalue of basis vector `v`.
    pub weights: Vec<Vec<i64>>,
    x: Vec<RepMatrix>,
    y: Vec<RepMatrix>,
}

fn half(c: i64) -> Exp {
    Exp::new(c, 2)
}

impl Rep {
    fn from_simple(n: usize, weights: Vec<Vec<i64>>, xs: Vec<RepMatrix>, ys: Vec<RepMatrix>) -> Rep {
        let dim = weights.len();
        let lie = Lie::new(n);
        let mut x = vec![RepMatrix::zero(dim); lie.nint()];
        let mut y = x.clone();
        // intervals by increasing length so that x_{i+1,j} is ready
        let mut ivs = lie.intervals.clone();
        ivs.sort_by_key(|iv| iv.len());
        for iv in ivs {
            let (i, j) = (iv.0, iv.1);
            let k = lie.idx(iv);
            if i == j {
                x[k] = xs[i - 1].clone();
                y[k] = ys[i - 1].clone();
            } else {
                let r = lie.idx(Interval(i + 1, j));
                let (a, b) = (QScalar::q_pow(half(1)), QScalar::q_pow(half(-1)));
                x[k] = xs[i - 1].mul(&x[r]).scale(&a).sub(&x[r].mul(&xs[i - 1]).scale(&b));
                y[k] = ys[i - 1].mul(&y[r]).scale(&a).sub(&y[r].mul(&ys[i - 1]).scale(&b));
            }
        }
        Rep { n, dim, weights, x, y }
    }

    pub fn letter(&self, l: Letter) -> &RepMatrix {
        let k = Lie::new(self.n).idx(l.iv);
        match l.kind {
            Kind::X => &self.x[k],
            Kind::Y => &self.y[k],
        }
    }

    /// `Π_i k_i^{c_i}`, acting by `q^{Σ c_i λ_i / 2}`.
    pub fn k_diag(&self, c: &[Exp]) -> RepMatrix {
        RepMatrix::diag(
            self.weights
                .iter()
                .map(|w| QScalar::q_pow(c.iter().zip(w).map(|(a, b)| a * Exp::from_integer(*b)).sum::<Exp>() / Exp::from_integer(2)))
                .collect(),
        )
    }

    pub fn h_diag(&self, i: usize) -> RepMatrix {
        RepMatrix::diag(self.weights.iter().map(|w| QScalar::from_int(w[i - 1])).collect())
    }

    /// `[H_i] = (k_i² − k̄_i²)/(q − q̄)`.
    pub fn bracket_diag(&self, i: usize) -> RepMatrix {
        RepMatrix::diag(self.weights.iter().map(|w| qint(w[i - 1])).collect())
    }

    pub fn mono(&self, m: &Mono) -> RepMatrix {
        let lie = Lie::new(self.n);
        let mut r = self.k_diag(&m.k);
        for (i, e) in m.h.iter().enumerate() {
            if *e > 0 {
                r = r.mul(&self.h_diag(i + 1).pow(*e));
            }
        }
        for (l, e) in m.letters(&lie) {
            r = r.mul(&self.letter(l).pow(e));
        }
        r
    }

    /// `V ⊗ W` through `Δ(x) = x ⊗ k + k̄ ⊗ x`, `Δ(y) = y ⊗ k + k̄ ⊗ y`.
    pub fn tensor(&self, o: &Rep) -> Rep {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut weights = Vec::with_capacity(self.dim * o.dim);
        for a in &self.weights {
            for b in &o.weights {
                weights.push(a.iter().zip(b).map(|(u, v)| u + v).collect());
            }
        }
        let kk = |r: &Rep, i: usize, c: i64| {
            let mut v = vec![Exp::zero(); n];
            v[i] = Exp::from_integer(c);
            r.k_diag(&v)
        };
        let lie = Lie::new(n);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..n {
            let s = lie.idx(Interval::simple(i + 1));
            let (ka, kb) = (kk(o, i, 1), kk(self, i, -1));
            xs.push(self.x[s].kron(&ka).add(&kb.kron(&o.x[s])));
            ys.push(self.y[s].kron(&ka).add(&kb.kron(&o.y[s])));
        }
        Rep::from_simple(n, weights, xs, ys)
    }

    /// `V^{⊗m}`.
    pub fn power(&self, m: usize) -> Rep {
        assert!(m >= 1);
        let mut r = self.clone();
        for _ in 1..m {
            r = r.tensor(self);
        }
        r
    }

    /// Defining relations: `[x_i, y_j] = δ_ij [H_i]`, the `k`–`x` exchange, far commutation and q-Serre.
    pub fn check_relations(&self) -> bool {
        let n = self.n;
        let lie = Lie::new(n);
        let xs = |i: usize| &self.x[lie.idx(Interval::simple(i))];
        let ys = |i: usize| &self.y[lie.idx(Interval::simple(i))];
        let two = qint(2);
        for i in 1..=n {
            for j in 1..=n {
                let c = xs(i).mul(ys(j)).sub(&ys(j).mul(xs(i)));
                let want = if i == j { self.bracket_diag(i) } else { RepMatrix::zero(self.dim) };
                if c != want {
                    return false;
                }
                let mut kv = vec![Exp::zero(); n];
                kv[i - 1] = Exp::one();
                let k = self.k_diag(&kv);
                let f = QScalar::q_pow(half(lie.cartan[i - 1][j - 1]));
                if k.mul(xs(j)) != xs(j).mul(&k).scale(&f) || ys(j).mul(&k) != k.mul(ys(j)).scale(&f) {
                    return false;
                }
                if i.abs_diff(j) > 1 {
                    if xs(i).mul(xs(j)) != xs(j).mul(xs(i)) || ys(i).mul(ys(j)) != ys(j).mul(ys(i)) {
                        return false;
                    }
                } else if i.abs_diff(j) == 1 {
                    for (a, b) in [(xs(i), xs(j)), (ys(i), ys(j))] {
                        let s = a.mul(a).mul(b).sub(&a.mul(b).mul(a).scale(&two)).add(&b.mul(a).mul(a));
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The `(n+1)`-dimensional representation: `H_i ↦ E_ii − E_{i+1,i+1}`, `x_i ↦ E_{i,i+1}`, `y_i ↦ E_{i+1,i}`.
pub fn fundamental_rep(n: usize) -> Rep {
    assert!(n >= 1);
    let dim = n + 1;
    let weights = (0..dim)
        .map(|a| (0..n).map(|i| (a == i) as i64 - (a == i + 1) as i64).collect())
        .collect();
    let xs = (0..n).map(|i| RepMatrix::unit(dim, i, i + 1)).collect();
    let ys = (0..n).map(|i| RepMatrix::unit(dim, i + 1, i)).collect();
    let r = Rep::from_simple(n, weights, xs, ys);
    assert!(r.check_relations(), "fundamental representation violates the defining relations");
    r
}

/// Diagonal of a prefactor on `reps[0] ⊗ reps[1] ⊗ …`: entry `q^{Q(λ)/2}`.
pub fn prefactor_diag(p: &Prefactor, reps: &[&Rep]) -> RepMatrix {
    let dims: Vec<usize> = reps.iter().map(|r| r.dim).collect();
    let total: usize = dims.iter().product();
    let mut d = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let mut parts = vec![0usize; reps.len()];
        for s in (0..reps.len()).rev() {
            parts[s] = rem % dims[s];
            rem /= dims[s];
        }
        let v: Vec<Exp> = parts
            .iter()
            .enumerate()
            .flat_map(|(s, a)| reps[s].weights[*a].iter().map(|w| Exp::from_integer(*w)))
            .collect();
        d.push(QScalar::q_pow(p.form_rat(&v) / Exp::from_integer(2)));
    }
    RepMatrix::diag(d)
}

/// Image of a multi-slot element on `reps[0] ⊗ reps[1] ⊗ …`.
pub fn eval_tensor(e: &Element, reps: &[&Rep]) -> RepMatrix {
    assert_eq!(e.slots(), reps.len(), "one representation per slot");
    assert!(reps.iter().all(|r| r.n == e.rank()), "rank mismatch");
    let total: usize = reps.iter().map(|r| r.dim).product();
    let mut cache: BTreeMap<(usize, Mono), RepMatrix> = BTreeMap::new();
    let mut pre_cache: BTreeMap<Prefactor, RepMatrix> = BTreeMap::new();
    let mut out = RepMatrix::zero(total);
    for (t, c) in e.terms() {
        let mut m = RepMatrix::identity(1);
        for (s, mono) in t.monos.iter().enumerate() {
            let f = cache.entry((s, mono.clone())).or_insert_with(|| reps[s].mono(mono));
            m = m.kron(f);
        }
        if !t.pre.is_identity() {
            let p = pre_cache.entry(t.pre.clone()).or_insert_with(|| prefactor_diag(&t.pre, reps));
            m = p.mul(&m);
        }
        out = out.add(&m.scale(c));
    }
    out
}

/// Image of a one-slot element.
pub fn eval(e: &Element, rep: &Rep) -> RepMatrix {
    eval_tensor(e, &[rep])
}

fn expansion() -> Rules {
    Rules::expansion()
}

/// `R` on `V ⊗ V`, from the series cut at `x`-degree `n + 1`.
pub fn r_rep(n: usize) -> Result<RepMatrix, PbwError> {
    let v = fundamental_rep(n);
    let r = r_matrix_with(n, n as u32 + 1, &expansion())?;
    Ok(eval_tensor(&r, &[&v, &v]))
}

/// Braid relation for `M` on `V^{⊗3}`, `M` acting on `V ⊗ V` (dimension `d²`).
pub fn braid_relation(m: &RepMatrix, d: usize) -> bool {
    let i = RepMatrix::identity(d);
    let a = m.kron(&i);
    let b = i.kron(m);
    a.mul(&b).mul(&a) == b.mul(&a).mul(&b)
}

/// `(M⊗I)(I⊗M)(M⊗I) = (I⊗M)(M⊗I)(I⊗M)` with `M = τ∘R`.
pub fn ybe_check(n: usize) -> Result<bool, PbwError> {
    let r = r_rep(n)?;
    let d = n + 1;
    Ok(braid_relation(&RepMatrix::swap(d, d).mul(&r), d))
}

/// `(Δ⊗id)(R) = R₁₃R₂₃` and `(id⊗Δ)(R) = R₁₃R₁₂` on `V^{⊗3}`.
pub fn hexagon_check(n: usize) -> Result<(bool, bool), PbwError> {
    let rules = expansion();
    let v = fundamental_rep(n);
    let reps = [&v, &v, &v];
    let r = r_matrix_with(n, n as u32 + 1, &rules)?;
    let r12 = eval_tensor(&r.embed(3, &[0, 1]), &reps);
    let r13 = eval_tensor(&r.embed(3, &[0, 2]), &reps);
    let r23 = eval_tensor(&r.embed(3, &[1, 2]), &reps);
    let left = eval_tensor(&coproduct_at_with(&r, 0, &rules)?, &reps);
    let right = eval_tensor(&coproduct_at_with(&r, 1, &rules)?, &reps);
    Ok((left == r13.mul(&r23), right == r13.mul(&r12)))
}

/// Prefactor-only part of the hexagon laws: `(Δ⊗id)(P) = P₁₃P₂₃`, `(id⊗Δ)(P) = P₁₃P₁₂`.
pub fn hexagon_prefactor_check(n: usize) -> Result<(bool, bool), PbwError> {
    let v = fundamental_rep(n);
    let reps = [&v, &v, &v];
    let p = Element::prefactor(n, crate::rmatrix::r_prefactor(n));
    let p12 = eval_tensor(&p.embed(3, &[0, 1]), &reps);
    let p13 = eval_tensor(&p.embed(3, &[0, 2]), &reps);
    let p23 = eval_tensor(&p.embed(3, &[1, 2]), &reps);
    let left = eval_tensor(&crate::hopf::coproduct_at(&p, 0)?, &reps);
    let right = eval_tensor(&crate::hopf::coproduct_at(&p, 1)?, &reps);
    Ok((left == p13.mul(&p23), right == p13.mul(&p12)))
}

/// `eval(τΔ(g))·R = R·eval(Δ(g))` for every generator, on `V ⊗ V`.
pub fn condition_i_rep(n: usize) -> Result<bool, PbwError> {
    let rules = expansion();
    let v = fundamental_rep(n);
    let r = r_rep(n)?;
    for g in Generator::all(n) {
        let d = coproduct_with(&g.element(n)?, &rules)?;
        let lhs = eval_tensor(&d.flip(), &[&v, &v]).mul(&r);
        let rhs = r.mul(&eval_tensor(&d, &[&v, &v]));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R·R⁻¹ = 1` on `V ⊗ V` with `R⁻¹ = (S⊗id)(R)`.
pub fn r_inverse_rep(n: usize) -> Result<RepMatrix, PbwError> {
    let rules = expansion();
    let v = fundamental_rep(n);
    let r = r_matrix_with(n, n as u32 + 1, &rules)?;
    Ok(eval_tensor(&antipode_at_with(&r, 0, &rules)?, &[&v, &v]))
}

/// All letters of rank `n`.
pub fn all_letters(n: usize) -> Vec<Letter> {
    let lie = Lie::new(n);
    let mut out = Vec::new();
    for iv in &lie.intervals {
        out.push(Letter { kind: Kind::Y, iv: *iv });
        out.push(Letter { kind: Kind::X, iv: *iv });
    }
    out
}

fn gen_of(l: Letter) -> Gen {
    match l.kind {
        Kind::X => Gen::X(l.iv),
        Kind::Y => Gen::Y(l.iv),
    }
}

/// Outcome of [`rule_oracle`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    /// Words straightened with the listed rules only.
    pub strict: usize,
    /// Words that needed expansion mode.
    pub expanded: usize,
    /// Words whose expansion exceeded the fallback step budget.
    pub skipped: Vec<String>,
    /// Words whose normal form has a different image.
    pub failures: Vec<String>,
}

/// Every two-letter word `a^p b^r` (`p, r ≤ max_exp`) straightens to an element with the
/// same image on `rep`. Words stuck in strict mode are retried in expansion mode with
/// `fallback_budget` steps.
pub fn rule_oracle(rep: &Rep, max_exp: u32, fallback_budget: usize) -> Result<OracleReport, PbwError> {
    let n = rep.n;
    let mut out = OracleReport::default();
    let strict = Rules::default();
    let exp = Rules { step_budget: fallback_budget, ..expansion() };
    let name = |l: Letter| crate::pbw::letter_name(l, n);
    for a in all_letters(n) {
        for b in all_letters(n) {
            for p in 1..=max_exp {
                for r in 1..=max_exp {
                    let word = [(gen_of(a), p as i64), (gen_of(b), r as i64)];
                    let label = format!("{}^{p} {}^{r}", name(a), name(b));
                    let e = match straighten_word_with(&word, n, &strict) {
                        Ok(e) => {
                            out.strict += 1;
                            e
                        }
                        Err(PbwError::NoApplicableRule(_)) => match straighten_word_with(&word, n, &exp) {
                            Ok(e) => {
                                out.expanded += 1;
                                e
                            }
                            Err(PbwError::StepBudget(_)) => {
                                out.skipped.push(label);
                                continue;
                            }
                            Err(e) => return Err(e),
                        },
                        Err(e) => return Err(e),
                    };
                    let want = rep.letter(a).pow(p).mul(&rep.letter(b).pow(r));
                    if eval(&e, rep) != want {
                        out.failures.push(label);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The image of `x_ij` equals its expansion into simple letters and the sum over orientations.
pub fn interval_oracle(rep: &Rep) -> bool {
    let n = rep.n;
    let simple = |i: usize| rep.letter(Letter::x(i, i)).clone();
    for i in 1..=n {
        for j in i..=n {
            let want = rep.letter(Letter::x(i, j));
            let word = |w: &[usize]| w.iter().fold(RepMatrix::identity(rep.dim), |m, s| m.mul(&simple(*s)));
            let mut a = RepMatrix::zero(rep.dim);
            for (c, w) in interval_expand(i, j) {
                a = a.add(&word(&w).scale(&c));
            }
            let mut b = RepMatrix::zero(rep.dim);
            for (_, c, w) in orientation_expand(i, j) {
                b = b.add(&word(&w).scale(&c));
            }
            if a != *want || b != *want {
                return false;
            }
        }
    }
    true
}

/// Moving `x_J^e` in one slot across a two-slot prefactor agrees with matrix multiplication.
pub fn prefactor_oracle(n: usize, max_exp: u32) -> Result<bool, PbwError> {
    let v = fundamental_rep(n);
    let w = v.power(2);
    let reps = [&w, &w];
    let pre0 = crate::rmatrix::r_prefactor(n);
    let pm = eval_tensor(&Element::prefactor(n, pre0.clone()), &reps);
    let lie = Lie::new(n);
    for iv in &lie.intervals {
        for kind in [Kind::X, Kind::Y] {
            let l = Letter { kind, iv: *iv };
            for slot in 0..2 {
                for e in 1..=max_exp {
                    let g = Element::letter_element(n, l, e)?;
                    let g2 = if slot == 0 { g.tensor(&Element::one(n, 1))? } else { Element::one(n, 1).tensor(&g)? };
                    let (pre, corr) = crate::pbw::commute_past_tensor_prefactor(n, slot, l, e, &pre0);
                    let lhs = eval_tensor(&g2, &reps).mul(&pm);
                    let rhs = eval_tensor(&Element::prefactor(n, pre), &reps)
                        .mul(&eval_tensor(&corr, &reps))
                        .mul(&eval_tensor(&g2, &reps));
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
