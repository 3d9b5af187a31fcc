//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its elapsed time and limit.

use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use qgroup::pbw::{straighten_word, straighten_xa_yb, Element, Gen, Interval};
use qgroup::qcalc::{
    big_exp_product_law, bimodal_check, bipartition_inversions, cauchy_i_check, cauchy_ii_check, cbinom, cfact,
    exp_product_law, inversion_polynomial, qfact,
};
use qgroup::hseries::cauchy_exp_check;
use qgroup::repn::{fundamental_rep, hexagon_check, interval_oracle, r_rep, rule_oracle, ybe_check};
use qgroup::ribbon::{
    antipode_fix_check_to, central_check, coproduct_rep_check, square_check_to, square_rep_check, su_check, v_element,
    v_rep,
};
use qgroup::hopf::counit;
use qgroup::rmatrix::{
    alpha, cartan_matrix, check_condition_i, check_conditions_ii_iii, kappa, kappa_printed, kappa_symmetric, r_matrix,
    r_prefactor, verify_alpha_recurrences, Generator, MultiIndex,
};
use qgroup::scalars::{Exp, QScalar};

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let dt = t.elapsed();
    let in_time = limit.map_or(true, |l| dt <= l);
    let pass = out.ok && in_time;
    let lim = limit.map_or("no limit".to_string(), |l| format!("limit {}s", l.as_secs()));
    let line = format!(
        "{} criterion {id}: {title} [{:.2}s, {lim}]{}{}",
        if pass { "PASS" } else { "FAIL" },
        dt.as_secs_f64(),
        if out.detail.is_empty() { "" } else { " - " },
        out.detail
    );
    // written to the raw stream so the line is visible without --nocapture
    let _ = writeln!(std::io::stderr(), "{line}");
    pass
}

fn all(checks: &[(&str, bool)]) -> Outcome {
    let bad: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() { format!("{} checks", checks.len()) } else { format!("failed: {}", bad.join(", ")) },
    }
}

fn criterion_1() -> Outcome {
    let mut checks = Vec::new();
    for a in 0..=5u32 {
        for b in 0..=5u32 {
            let mut w = Vec::new();
            if a > 0 {
                w.push((Gen::X(Interval(1, 1)), a as i64));
            }
            if b > 0 {
                w.push((Gen::Y(Interval(1, 1)), b as i64));
            }
            checks.push((a, b, straighten_word(&w, 1).unwrap() == straighten_xa_yb(a, b)));
        }
    }
    let names: Vec<String> = checks.iter().map(|(a, b, _)| format!("x^{a} y^{b}")).collect();
    all(&checks.iter().zip(&names).map(|((_, _, ok), n)| (n.as_str(), *ok)).collect::<Vec<_>>())
}

fn criterion_2() -> Outcome {
    let mut checks = Vec::new();
    for (n, dim) in [(1usize, 8usize), (2, 27), (3, 64)] {
        let d = (n + 1) * (n + 1);
        let sized = r_rep(n).unwrap().dim() == d && (n + 1).pow(3) == dim;
        checks.push((n, sized && ybe_check(n).unwrap()));
    }
    let names = ["n=1 (8x8)", "n=2 (27x27)", "n=3 (64x64)"];
    all(&checks.iter().zip(names).map(|((_, ok), n)| (n, *ok)).collect::<Vec<_>>())
}

fn criterion_3() -> Outcome {
    let mut checks: Vec<(String, bool)> = Vec::new();
    for g in Generator::all(1) {
        checks.push((format!("(i) {g:?} D=6"), check_condition_i(g, 1, 6).unwrap()));
    }
    let (ii, iii) = check_conditions_ii_iii(1, 4).unwrap();
    checks.push(("(ii) D=4".into(), ii));
    checks.push(("(iii) D=4".into(), iii));
    for n in [1, 2] {
        let (a, b) = hexagon_check(n).unwrap();
        checks.push((format!("(ii) rep n={n}"), a));
        checks.push((format!("(iii) rep n={n}"), b));
    }
    all(&checks.iter().map(|(n, ok)| (n.as_str(), *ok)).collect::<Vec<_>>())
}

fn criterion_4() -> Outcome {
    let d = 6;
    let scalar = v_rep().scalar_value();
    let checks = [
        ("S(u) = kb^4 u", su_check(d).unwrap()),
        ("[v,x] = 0", central_check(&Element::x(1, 1, 1).unwrap(), d).unwrap()),
        ("[v,y] = 0", central_check(&Element::y(1, 1, 1).unwrap(), d).unwrap()),
        ("[v,H] = 0", central_check(&Element::h(1, 1).unwrap(), d).unwrap()),
        ("v^2 = S(u)u", square_check_to(d, d).unwrap()),
        ("v^2 = S(u)u in V", square_rep_check().unwrap()),
        ("eps(v) = 1", counit(&v_element(d)).is_one()),
        ("S(v) = v", antipode_fix_check_to(d, d).unwrap()),
        ("Delta(v) tau(R)R = v(x)v in V(x)V", coproduct_rep_check().unwrap()),
        ("eval(v) scalar", scalar.is_some()),
    ];
    let mut out = all(&checks);
    if let Some(c) = scalar {
        out.detail.push_str(&format!("; v acts on V by {c}"));
    }
    out
}

fn criterion_5() -> Outcome {
    let mut checks: Vec<(String, bool)> = Vec::new();
    checks.push(("bimodal n<=8".into(), (0..=8).all(bimodal_check)));
    checks.push(("Cauchy (i) n<=10".into(), (0..=10).all(cauchy_i_check)));
    checks.push(("Cauchy (ii) n<=10".into(), (0..=10).all(cauchy_ii_check)));
    // exp_q law under q-commutation, with ba = q ab
    checks.push(("exp_q product deg 8".into(), exp_product_law(-Exp::one(), 8)));
    checks.push(("Exp_q product deg 8 (ab = q^2 ba)".into(), big_exp_product_law(Exp::from_integer(2), 8)));
    checks.push(("extended Cauchy through h^8".into(), cauchy_exp_check(8, 8)));
    checks.push(("inversions = (n)!_q, n<=7".into(), (0..=7u32).all(|n| inversion_polynomial(n as usize) == cfact(n))));
    checks.push((
        "bipartitions = Gaussian binomials, n<=7".into(),
        (0..=7u32).all(|n| (0..=n).all(|r| bipartition_inversions(n, r) == cbinom(n as i64, r))),
    ));
    let mut out = all(&checks.iter().map(|(n, ok)| (n.as_str(), *ok)).collect::<Vec<_>>());
    out.detail.push_str(&format!(
        "; with ab = q ba instead the exp_q law holds to degree 8: {}",
        exp_product_law(Exp::one(), 8)
    ));
    out
}

fn qint_direct(n: i64) -> QScalar {
    // (q^n - q^-n)/(q - q^-1) as the sum q^{n-1} + q^{n-3} + ... + q^{1-n}
    (0..n).fold(QScalar::zero(), |acc, k| acc + QScalar::q_int_pow(n - 1 - 2 * k))
}

fn criterion_6() -> Outcome {
    let mut checks: Vec<(String, bool)> = Vec::new();
    let kappa_ok = (1..=12).all(|n| {
        let k = kappa(n);
        let c = cartan_matrix(n);
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: Exp = (0..n).map(|l| k[i][l] * Exp::from_integer(c[l][j])).sum();
                s == if i == j { Exp::from_integer(2) } else { Exp::zero() }
            })
        })
    });
    checks.push(("kappa C = 2I, n<=12".into(), kappa_ok));
    checks.push(("alpha recurrences n<=3, |m|<=3".into(), (1..=3).all(|n| verify_alpha_recurrences(n, 3))));
    let lam = QScalar::q() - QScalar::qbar();
    let mut coeff_ok = true;
    let mut fact = QScalar::one();
    for m in 0..=8i64 {
        if m > 0 {
            fact = fact * qint_direct(m);
        }
        let want = lam.pow_u(m as u32) * fact.inv().unwrap() * QScalar::q_pow(Exp::new(m * (m - 3), 2));
        coeff_ok &= fact == qfact(m as u32);
        coeff_ok &= alpha(&MultiIndex::from_pairs(1, &[((1, 1), m as u32)])) == want;
    }
    checks.push(("n=1 alpha(m) = (q-qb)^m/[m]! q^(m(m-3)/2), m<=8".into(), coeff_ok));
    // the same coefficients read off the constructed R against grouped products (k x)^m (x) (kb y)^m
    let r = r_matrix(1, 8).unwrap();
    let kx = Element::k(1, 1, Exp::one()).unwrap().mul(&Element::x(1, 1, 1).unwrap()).unwrap();
    let ky = Element::k(1, 1, -Exp::one()).unwrap().mul(&Element::y(1, 1, 1).unwrap()).unwrap();
    let p = Element::prefactor(1, r_prefactor(1));
    let mut r_ok = true;
    let mut fact = QScalar::one();
    let mut sum = Element::zero(1, 2);
    for m in 0..=8i64 {
        if m > 0 {
            fact = fact * qint_direct(m);
        }
        let c = lam.pow_u(m as u32) * fact.inv().unwrap() * QScalar::q_pow(Exp::new(m * (m - 3), 2));
        let t = kx.pow(m as u32).unwrap().tensor(&ky.pow(m as u32).unwrap()).unwrap();
        sum = sum.add(&p.mul(&t).unwrap().scale(&c)).unwrap();
    }
    r_ok &= sum == r.untruncated();
    checks.push(("R(n=1, D=8) = sum of grouped terms".into(), r_ok));
    all(&checks.iter().map(|(n, ok)| (n.as_str(), *ok)).collect::<Vec<_>>())
}

fn criterion_7() -> Outcome {
    let w = fundamental_rep(4).power(2);
    let report = rule_oracle(&w, 3, 20_000).unwrap();
    let intervals = interval_oracle(&w);
    let ok = report.failures.is_empty() && intervals;
    Outcome {
        ok,
        detail: format!(
            "{} words by listed rules, {} by expansion, {} without a listed rule and over the expansion budget, {} failing; interval/orientation oracle: {}",
            report.strict,
            report.expanded,
            report.skipped.len(),
            report.failures.len(),
            intervals
        ),
    }
}

fn criterion_8() -> Outcome {
    let printed = kappa_printed(2, 1, 2);
    let inverse = kappa(2)[0][1];
    let differs = printed == Exp::new(8, 3) && inverse == Exp::new(2, 3);
    let symmetric = (1..=12).all(|n| {
        let k = kappa(n);
        (1..=n).all(|i| (1..=n).all(|j| kappa_symmetric(n, i, j) == k[i - 1][j - 1]))
    });
    Outcome {
        ok: differs && symmetric,
        detail: format!(
            "printed case conditions give {printed} at (2,1,2), the inverse gives {inverse}; min/max form matches the inverse for n<=12: {symmetric}"
        ),
    }
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "rewriter equals the closed form of x^a y^b, a,b <= 5", Some(secs(60)), criterion_1),
        run(2, "Yang-Baxter equation exact for n = 1, 2, 3", Some(secs(300)), criterion_2),
        run(3, "quasi-triangularity: (i) at D=6, (ii)/(iii) at D=4 and in representations", None, criterion_3),
        run(4, "ribbon suite at D = 6", Some(secs(120)), criterion_4),
        run(5, "q-identity suite", Some(secs(60)), criterion_5),
        run(6, "kappa and alpha", Some(secs(60)), criterion_6),
        run(7, "rank-4 rule oracle", Some(secs(120)), criterion_7),
        run(8, "kappa printed case conditions differ from the inverse", None, criterion_8),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
