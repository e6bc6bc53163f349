//! Acceptance criteria AC1–AC7. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails. `--ignored` (or `--include-ignored`) also runs
//! the slow 200-digit asymptotic verification.
//!
//! Oracle values below are written out by hand and are not read from the
//! model catalog.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rug::{Float, Rational};
use stokesforge::bases::{conifold_basis, g4_coefficients, hat_w_sum, invert_variable, period_jets, phi_exact, recenter, ExactLogSeries};
use stokesforge::bases::deformed::DeformedSeries;
use stokesforge::bases::formal::g4_operator;
use stokesforge::exact::{symplectic_check, Cyclotomic};
use stokesforge::models::{ModelData, ModelId};
use stokesforge::numerics::{fmt_real, ten_pow_neg, working_bits};
use stokesforge::operators::{gkz_from_toric, laplace_nu, laplace_pf, laplace_star, normal_order, pf_operator, ToricData};
use stokesforge::stokes::conifold::conifold_loop;
use stokesforge::stokes::{
    default_cn_samples, euler_pairing, match_cn, matches_printed, monodromy_conifold, monodromy_origin, relation_suite, stokes_matrices, vanishing_check,
    verify_asymptotics, SuiteOptions,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: stokesforge::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, format!("{what} took {t:.2?}, limit {limit:?}"))
}

/// Laplace-transformed Picard-Fuchs operators as displayed with each model.
const LAPLACE_OPERATORS: [(ModelId, &str); 4] = [
    (ModelId::Y5, "z (T+1)^3 + 5 (5T+1)(5T+2)(5T+3)(5T+4)"),
    (ModelId::Y6, "z (T+1)^3 + 9 (6T+1)(6T+2)(6T+4)(6T+5)"),
    (ModelId::Y8, "z (T+1)^3 + 16 (8T+1)(8T+3)(8T+5)(8T+7)"),
    (ModelId::Y10, "z (T+1)^3 + 80 (10T+1)(10T+3)(10T+7)(10T+9)"),
];

fn ac1() -> Outcome {
    for (id, text) in LAPLACE_OPERATORS {
        let t = Instant::now();
        let got = lib(laplace_pf(&pf_operator(&id.data())))?;
        within(t.elapsed(), Duration::from_secs(1), &format!("{id} Laplace transform"))?;
        let want = lib(normal_order(text))?;
        ensure(got == want, format!("{id}: got {}, want {}", got.pretty(), want.pretty()))?;
    }
    let t = Instant::now();
    let sys = lib(gkz_from_toric(&lib(ToricData::weighted_projective(5, &[1, 1, 1, 1, 1]))?))?;
    let star = lib(laplace_star(&sys))?;
    ensure(star.operator == lib(normal_order("T^5 - 3125 z^5"))?, format!("quintic GKZ*: {}", star.operator.pretty()))?;
    let nu = lib(laplace_nu(&sys, 5))?;
    let want = lib(normal_order("T (z (T+1)^3 + 5 (5T+1)(5T+2)(5T+3)(5T+4))"))?;
    ensure(nu.operator == want, format!("quintic GKZ_nu: {}", nu.operator.pretty()))?;
    within(t.elapsed(), Duration::from_secs(1), "quintic GKZ reductions")?;
    Ok("Laplace operators for d = 5, 6, 8, 10; θ^5 − 5^5 z̃^5; θ∘(Laplace operator)".into())
}

fn ac2() -> Outcome {
    let want = [
        (ModelId::Y5, [1i64, -4375, 32031250]),
        (ModelId::Y6, [1, -15876, 428354568]),
        (ModelId::Y8, [1, -88064, 13272875008]),
        (ModelId::Y10, [1, -1040000, 1884800000000]),
    ];
    for (id, w) in want {
        let t = Instant::now();
        let (_, c) = lib(g4_coefficients(&id.data(), 3))?;
        within(t.elapsed(), Duration::from_secs(1), &format!("{id} g_4 recurrence"))?;
        let w: Vec<Rational> = w.iter().map(|&x| Rational::from(x)).collect();
        ensure(c == w, format!("{id}: {c:?}"))?;
    }
    Ok("g_4 coefficients for d = 5, 6, 8, 10".into())
}

fn ac3() -> Outcome {
    let t = Instant::now();
    let m = ModelId::Y5.data();
    let b = lib(conifold_basis(&m, 5))?;
    let v = b.vanishing();
    let got: Vec<Rational> = (1..5).map(|n| Rational::from(&v.coeff(0, n) / &v.coeff(0, 1))).collect();
    let want = vec![q(1, 1), q(-4375, 2), q(16015625, 3), q(-55322265625, 4)];
    ensure(got == want, format!("vanishing solution coefficients {got:?}"))?;
    let rep = lib(vanishing_check(&m, &m.a_preferred, 60))?;
    let pi4 = &rep.values_at_xc[3];
    ensure(*pi4 < ten_pow_neg(25, pi4.prec()), format!("|Π_γ4(x_c)| = {}", fmt_real(pi4, 6)))?;
    within(t.elapsed(), Duration::from_secs(60), "conifold expansion and continuation")?;
    Ok(format!("Y5 conifold coefficients exact; |Π_γ4(1/5^5)| = {} at 60 digits", fmt_real(pi4, 3)))
}

/// Printed c_N values, to the digits shown.
const PRINTED_CN: [(ModelId, &str); 4] =
    [(ModelId::Y5, "-0.00342934921"), (ModelId::Y6, "-0.00201572"), (ModelId::Y8, "-0.001316833"), (ModelId::Y10, "-0.0001304601")];

fn ac4_model(id: ModelId, printed: &str) -> Result<String, String> {
    let m = id.data();
    let p = 120;
    let t = Instant::now();
    let samples = default_cn_samples(&m, working_bits(p) + 32);
    let z0 = Rational::from(120) / m.x_c();
    let z0 = Float::with_val(samples[0].prec(), &z0);
    ensure(samples[0].re == z0 && samples[0].im.is_zero(), "first sample is not |z| = 120/x_c on the real axis")?;
    let r = lib(match_cn(&m, &samples, p))?;
    let elapsed = t.elapsed();
    let value = fmt_real(&r.c_n, 16);
    ensure(r.spread < ten_pow_neg(12, r.spread.prec()), format!("{id}: spread {}", fmt_real(&r.spread, 3)))?;
    ensure(lib(matches_printed(&r.c_n, printed))?, format!("{id}: computed {value}, printed {printed}"))?;
    within(elapsed, Duration::from_secs(600), &format!("{id} matching"))?;
    Ok(format!("{id} {value}"))
}

fn ac4() -> Outcome {
    let results: Vec<Result<String, String>> = std::thread::scope(|s| {
        let hs: Vec<_> = PRINTED_CN.iter().map(|&(id, printed)| s.spawn(move || ac4_model(id, printed))).collect();
        hs.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("worker panicked".into()))).collect()
    });
    let (ok, bad): (Vec<_>, Vec<_>) = results.into_iter().partition(Result::is_ok);
    let ok: Vec<String> = ok.into_iter().map(Result::unwrap).collect();
    let bad: Vec<String> = bad.into_iter().map(|r| r.unwrap_err()).collect();
    if bad.is_empty() {
        Ok(format!("c_N at 120 digits: {}", ok.join("; ")))
    } else {
        Err(format!("{} (passing: {})", bad.join("; "), if ok.is_empty() { "none".into() } else { ok.join("; ") }))
    }
}

fn ac5() -> Outcome {
    let opts = SuiteOptions { precision: 60, match_cn: false };
    let reports: Vec<_> = std::thread::scope(|s| {
        let hs: Vec<_> = ModelId::ALL.iter().map(|&id| { let opts = &opts; s.spawn(move || relation_suite(&id.data(), opts)) }).collect();
        hs.into_iter().map(|h| h.join().expect("relation worker panicked")).collect()
    });
    let mut worst = Float::new(64);
    for (id, r) in ModelId::ALL.iter().zip(reports) {
        let r = lib(r)?;
        ensure(r.all_passed(), format!("{id}: {:?}", r.failed()))?;
        let wanted: &[&str] = if *id == ModelId::Y5 { &["K_R = M_Con", "K_R̄·L = M_0", "M_∞^5 = I"] } else { &["K_R = M_Con", "K_R̄·L = M_0"] };
        for w in wanted {
            ensure(r.checks.iter().any(|c| c.name == *w && c.passed), format!("{id}: check `{w}` missing"))?;
        }
        if *id == ModelId::Y5 {
            ensure(r.checks.iter().any(|c| c.name.contains("L^(−5)") && c.passed), "Y5: turn-product collapse missing")?;
        }
        ensure(r.m_con_residual < ten_pow_neg(20, r.m_con_residual.prec()), format!("{id}: M_Con residual {}", fmt_real(&r.m_con_residual, 3)))?;
        if r.m_con_residual > worst {
            worst = Float::with_val(64, &r.m_con_residual);
        }
    }
    Ok(format!("K_R = M_Con, K_R̄·L = M_0 for all models; (M_Con·M_0)^5 = I and five-turn collapse for Y5; max M_Con residual {}", fmt_real(&worst, 2)))
}

fn ac6() -> Outcome {
    let want = [(ModelId::Y5, 5, q(5, 2)), (ModelId::Y6, 4, q(3, 2)), (ModelId::Y8, 4, q(1, 1)), (ModelId::Y10, 3, q(1, 2))];
    for (id, chi, a) in want {
        let m = id.data();
        let riemann_roch = Rational::from((m.k_d, 6)) + Rational::from((m.c_d, 12));
        ensure(riemann_roch == chi, format!("{id}: K_d/6 + C_d/12 = {riemann_roch}"))?;
        let (kr, kbar) = lib(stokes_matrices(&m))?;
        let one = |r: i64| Cyclotomic::rational(Rational::from(r), 1);
        let mut shape: Vec<Vec<Cyclotomic>> = (0..4).map(|i| (0..4).map(|j| one(i64::from(i == j))).collect()).collect();
        shape[0][3] = one(-chi);
        shape[2][3] = one(-1);
        ensure(kbar.specialize(&a) == shape, format!("{id}: K_R̄ at a = {a} is not the Euler-pairing shape"))?;
        let mut kr_shape: Vec<Vec<Cyclotomic>> = (0..4).map(|i| (0..4).map(|j| one(i64::from(i == j))).collect()).collect();
        kr_shape[3][0] = one(1);
        ensure(kr.specialize(&a) == kr_shape, format!("{id}: K_R is not I + E_41"))?;
        ensure(lib(euler_pairing(&m, &a))?.matches, format!("{id}: library pairing disagrees"))?;
    }
    Ok("χ = 5, 4, 4, 3; K_R̄ at a = 5/2, 3/2, 1, 1/2 has the Euler-pairing shape".into())
}

fn annihilated_to_30(m: &ModelData) -> Result<usize, String> {
    let id = m.id;
    let pf = pf_operator(m);
    let lz = lib(laplace_pf(&pf))?;
    let mut count = 0;
    let mut need = |s: &ExactLogSeries, op: &stokesforge::operators::ThetaOperator, what: &str| {
        count += 1;
        ensure(s.order() >= 30 && s.annihilated_by(op), format!("{id}: {what} not annihilated to order 30"))
    };
    for s in period_jets(m, 30) {
        need(&s, &pf, "period jet")?;
    }
    for &k in &m.offsets {
        need(&lib(phi_exact(m, k, 30))?, &lz, "φ_k")?;
    }
    let lzi = invert_variable(&lz);
    for s in &DeformedSeries::laplace(m).jets(30, 3)[..3] {
        need(s, &lzi, "Laplace jet")?;
    }
    let con = recenter(&pf, &m.x_c());
    for s in &lib(conifold_basis(m, 30))?.solutions {
        need(s, &con, "conifold solution")?;
    }
    let (r, c) = lib(g4_coefficients(m, 31))?;
    need(&ExactLogSeries::new(r, vec![c]), &lib(g4_operator(m))?, "g_4 series")?;
    Ok(count)
}

fn ac7() -> Outcome {
    let mut bases = 0;
    for id in ModelId::ALL {
        let m = id.data();
        ensure(hat_w_sum(&m).iter().all(Cyclotomic::is_zero), format!("{id}: ŵ-sum is nonzero"))?;
        bases += annihilated_to_30(&m)?;
        let m0 = lib(monodromy_origin(&m))?;
        ensure(!m0.is_a_free() && symplectic_check(&m0), format!("{id}: M_0 is not symplectic in a"))?;
        let con = lib(monodromy_conifold(&m, 30))?;
        ensure(symplectic_check(&con.matrix), format!("{id}: M_Con is not symplectic"))?;
    }
    let p = 30;
    let mut worst = Float::new(64);
    for id in ModelId::ALL {
        let m = id.data();
        let lo = lib(conifold_loop(&m, &m.a_preferred, p))?;
        let hi = lib(conifold_loop(&m, &m.a_preferred, 2 * p))?;
        let dev = lo.max_deviation(&hi);
        ensure(dev < ten_pow_neg(p - 5, dev.prec()), format!("{id}: transport at {p} vs {} digits differs by {}", 2 * p, fmt_real(&dev, 3)))?;
        if dev > worst {
            worst = Float::with_val(64, &dev);
        }
    }
    Ok(format!("ŵ-sum = 0; {bases} bases annihilated to order 30; transport doubling deviation {} < 1e-{}; M_0, M_Con symplectic", fmt_real(&worst, 2), p - 5))
}

/// f_k ∼ g_k with relative residual below 10^{−50} on every sample ray, at 200
/// digits and |z| = 140/x_c. At 120/x_c the optimal-truncation floor of g_k
/// is near 10^{−49}.
fn slow_asymptotics() -> Outcome {
    let p = 200;
    let rows: Vec<Result<String, String>> = std::thread::scope(|s| {
        let hs: Vec<_> = ModelId::ALL
            .iter()
            .map(|&id| {
                s.spawn(move || {
                    let m = id.data();
                    let r = lib(match_cn(&m, &default_cn_samples(&m, working_bits(p) + 32), p))?;
                    let zabs = Rational::from(140) / m.x_c();
                    let rows = lib(verify_asymptotics(&m, &r.c_n, &zabs, p))?;
                    let worst = rows.iter().map(|r| r.relative_residual.clone()).max_by(|a, b| a.partial_cmp(b).expect("finite residual")).expect("rows");
                    ensure(worst < ten_pow_neg(50, worst.prec()), format!("{id}: worst residual {}", fmt_real(&worst, 3)))?;
                    Ok(format!("{id} {}", fmt_real(&worst, 2)))
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("worker panicked".into()))).collect()
    });
    let bad: Vec<String> = rows.iter().filter_map(|r| r.clone().err()).collect();
    if bad.is_empty() {
        Ok(format!("worst f_k ∼ g_k residuals: {}", rows.into_iter().map(Result::unwrap).collect::<Vec<_>>().join("; ")))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    // libtest-style probes from tooling.
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let slow = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    let mut criteria: Vec<Criterion> = vec![("AC1", ac1), ("AC2", ac2), ("AC3", ac3), ("AC4", ac4), ("AC5", ac5), ("AC6", ac6), ("AC7", ac7)];
    if slow {
        criteria.push(("AC4-slow", slow_asymptotics));
    }
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("{name} PASS ({:.1?}): {detail}", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("{name} FAIL ({:.1?}): {detail}", t.elapsed());
            }
        }
    }
    if !slow {
        println!("AC4-slow ignored (run with --ignored for the 200-digit residual check)");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
