//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use qaffine::builders::{build_d_plus, build_p, young_stats, DRoute, PRoute};
use qaffine::drinfeld::{check_multiplicativity, extract_polynomial, highest_weight_vectors, p_eigenvalue};
use qaffine::evaluator::{eval_element, run_check, run_registry, symbolic_v1_tensor, Ranges, Status, MUTABLE};
use qaffine::irreducibility::{crosscheck_grid, is_irreducible, pair_grid};
use qaffine::modules::*;
use qaffine::ring::*;
use qaffine::segments::{canonical_params, construction_plan, parse_poly, predict_factors};
use qaffine::words::Sym;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn c(n: i64) -> Cyclo {
    Cyclo::constant(rat(n))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Lambda(P_r) on V(3)_2 at l = 5.
fn eigenvalues() -> Outcome {
    let l = 5;
    let v = SpecModule::new(l, vec![Factor::Ev { m: 3, a: c(2) }]).map_err(err)?;
    let certs = highest_weight_vectors(&v).map_err(err)?;
    ensure(certs.len() == 1, || format!("{} highest-weight vectors", certs.len()))?;
    for r in 0..=5u32 {
        let got = p_eigenvalue(&v, &certs[0].vector, r, true).map_err(err)?;
        let want = if r <= 3 {
            let b = Cyclo::from_laurent(&qbinom(3, r as i64).map_err(err)?, l);
            c(-2).pow(r).mul(&b)
        } else {
            Cyclo::zero()
        };
        ensure(got == want, || format!("r = {}: got {}, want {}", r, got, want))?;
    }
    Ok("r = 0..5".into())
}

fn registry_suite() -> Outcome {
    let rg = Ranges::default();
    let rep = run_registry(&[], &rg);
    let bad: Vec<_> = rep.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.check.clone()).collect();
    ensure(bad.is_empty(), || format!("not passing: {:?}", bad))?;
    for (name, m) in MUTABLE {
        let r = run_check(name, &rg, Some(m)).ok_or_else(|| format!("unknown check {}", name))?;
        ensure(r.status == Status::Fail, || format!("mutated {} gave {:?}", name, r.status))?;
    }
    Ok(format!("{} checks pass, {} mutations fail", rep.checks.len(), MUTABLE.len()))
}

fn young() -> Outcome {
    let rg = Ranges::default();
    for name in ["eq-19", "young-stats"] {
        let r = run_check(name, &rg, None).ok_or_else(|| format!("unknown check {}", name))?;
        ensure(r.status == Status::Pass, || format!("{}: {:?} {:?}", name, r.status, r.counterexample))?;
    }
    ensure(young_stats(&[2, 1, 3, 1]) == (7, 59), || format!("young_stats(2,1,3,1) = {:?}", young_stats(&[2, 1, 3, 1])))?;
    Ok("r <= 4, n <= 6; (2,1,3,1) -> (7,59)".into())
}

fn integrality() -> Outcome {
    let orders = [3u32, 5];
    let rg = Ranges::default();
    let r = run_check("prop-4.6-poles", &rg, None).ok_or("missing prop-4.6-poles")?;
    ensure(r.status == Status::Pass, || format!("B_(r,n): {:?}", r.counterexample))?;
    let mut count = 0;
    for rank in 1..=4 {
        let mut d = Drinfeld::new(&symbolic_v1_tensor(rank).map_err(err)?).map_err(err)?;
        let mut elems = Vec::new();
        for n in 1..=4 {
            elems.push((format!("P_{}", n), build_p(n, PRoute::HRecursion, 0).map_err(err)?));
            elems.push((format!("P_-{}", n), build_p(-n, PRoute::HRecursion, 0).map_err(err)?));
            for r in 0..=3 {
                elems.push((format!("D_{}^+(xi^({}))", n, r), build_d_plus(n as u32, r, DRoute::Series)));
            }
        }
        for (name, e) in elems {
            let m = eval_element(&e, &mut d).map_err(err)?;
            let bad = orders.iter().find(|&&l| m.entries().iter().any(|x| x.has_pole_at(l)));
            ensure(bad.is_none(), || format!("{} on rank {} has a pole at l = {}", name, rank, bad.unwrap()))?;
            count += 1;
        }
    }
    Ok(format!("{} matrices plus B_(r,n)/[r+1]!", count))
}

fn equivalence() -> Outcome {
    let l = 3;
    let ratios = [c(1), c(2), Cyclo::eps(1, l), Cyclo::eps(2, l), Cyclo::eps(1, l).mul(&c(2))];
    let rep = crosscheck_grid(&pair_grid(&[1, 2], &ratios), l).map_err(err)?;
    ensure(rep.disagreements == 0, || {
        let bad: Vec<_> = rep.rows.iter().filter(|r| !r.agree).map(|r| serde_json::to_string(&r.factors).unwrap()).collect();
        format!("disagreements at {:?}", bad)
    })?;
    Ok(format!("{} points agree", rep.rows.len()))
}

fn factorization() -> Outcome {
    let l = 3;
    let p = parse_poly("(1-2u)(1-u^3)", l, &[]).map_err(err)?;
    let plan = construction_plan(&p).map_err(err)?;
    let v = SpecModule::new(l, plan).map_err(err)?;
    ensure(ResModule::dim(&v) == 4, || format!("dim {}", ResModule::dim(&v)))?;
    ensure(is_irreducible(&v).map_err(err)?.is_irreducible(), || "oracle: not irreducible".into())?;
    let certs = highest_weight_vectors(&v).map_err(err)?;
    let got = extract_polynomial(&v, &certs[0]).map_err(err)?;
    let mut want = p.coeffs();
    want.resize(got.plus.len().max(want.len()), Cyclo::zero());
    ensure(got.plus == want, || format!("extracted {}", got.plus_text()))?;
    let params = canonical_params(&p).map_err(err)?;
    ensure(params.segments == vec![(1, c(2))] && params.frobenius == vec![(1, c(1))], || {
        format!("params {}", params.to_json())
    })?;
    Ok("dim 4, irreducible, P recovered".into())
}

fn frobenius() -> Outcome {
    let l = 3;
    for b in [c(1), c(2)] {
        ensure(commuting_square_check(&b, 1, l).map_err(err)?, || format!("square fails at b = {}", b))?;
        let bl = b.pow(l);
        let f = FrobPullback::new(1, bl.clone(), l).map_err(err)?;
        let x0p = f.sym(Sym::DivXPlus(0, l)).map_err(err)?;
        let x0m = f.sym(Sym::DivXMinus(0, l)).map_err(err)?;
        ensure(!x0p.is_zero() && !x0m.is_zero(), || "(x_0)^(l) vanishes".into())?;
        for r in -2..=2i32 {
            for s in [Sym::XPlus(r), Sym::XMinus(r)] {
                ensure(f.sym(s).map_err(err)?.is_zero(), || format!("{:?} nonzero at b = {}", s, b))?;
            }
            let br = if r >= 0 { bl.pow(r as u32) } else { bl.inv().unwrap().pow((-r) as u32) };
            let p = f.sym(Sym::DivXPlus(r, l)).map_err(err)?;
            let m = f.sym(Sym::DivXMinus(r, l)).map_err(err)?;
            ensure(*p == x0p.scale(&br) && *m == x0m.scale(&br), || format!("(x_{})^(l) not classical at b = {}", r, b))?;
        }
        // the head of V(l)_b depends on b only through b^l
        let mut verdicts = Vec::new();
        let mut polys = Vec::new();
        for root in [b.clone(), b.mul(&Cyclo::eps(1, l))] {
            let v = SpecModule::new(l, vec![Factor::WeylHead { n: 1, b: root }]).map_err(err)?;
            verdicts.push(is_irreducible(&v).map_err(err)?.verdict);
            let certs = highest_weight_vectors(&v).map_err(err)?;
            polys.push(extract_polynomial(&v, &certs[0]).map_err(err)?.plus);
        }
        ensure(verdicts[0] == verdicts[1] && verdicts[0] == qaffine::irreducibility::Verdict::Irreducible, || {
            format!("verdicts {:?} at b = {}", verdicts, b)
        })?;
        ensure(polys[0] == polys[1], || format!("polynomials differ at b = {}", b))?;
    }
    Ok("b in {1, 2}".into())
}

fn lusztig() -> Outcome {
    let l = 3;
    for (m, dim) in [(2u32, 3usize), (3, 2), (4, 4)] {
        let v = lusztig_tensor(m, l).map_err(err)?;
        ensure(ResModule::dim(&v) == dim, || format!("m = {}: dim {}", m, ResModule::dim(&v)))?;
        ensure(is_irreducible(&v).map_err(err)?.is_irreducible(), || format!("m = {}: not irreducible", m))?;
        let w = weight_decomposition(&v).map_err(err)?;
        for (lam, vs) in &w {
            ensure(w.get(&-lam).map_or(0, |x| x.len()) == vs.len(), || format!("m = {}: weight {} asymmetric", m, lam))?;
        }
        ensure(w.keys().max() == Some(&(m as i64)), || format!("m = {}: top weight {:?}", m, w.keys().max()))?;
    }
    Ok("m = 2, 3, 4".into())
}

fn multiplicativity() -> Outcome {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    let mut tried = 0;
    while done < 5 {
        tried += 1;
        ensure(tried < 200, || "could not sample irreducible pairs".into())?;
        let l = if rng.gen_bool(0.5) { 3 } else { 5 };
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            let m = rng.gen_range(1..=2u32);
            let mut k = 0;
            while k == 0 {
                k = rng.gen_range(-4..=4i64);
            }
            Factor::Ev { m, a: c(k).mul(&Cyclo::eps(rng.gen_range(0..l as i64), l)) }
        };
        let (f, g) = (pick(&mut rng), pick(&mut rng));
        if !predict_factors(&[f.clone()], l).map_err(err)?
            || !predict_factors(&[g.clone()], l).map_err(err)?
            || !predict_factors(&[f.clone(), g.clone()], l).map_err(err)?
        {
            continue;
        }
        let v = SpecModule::new(l, vec![f.clone()]).map_err(err)?;
        let w = SpecModule::new(l, vec![g.clone()]).map_err(err)?;
        let vw = SpecModule::new(l, vec![f, g]).map_err(err)?;
        ensure(is_irreducible(&vw).map_err(err)?.is_irreducible(), || "sampled tensor not irreducible".into())?;
        let (cv, cw) = (&highest_weight_vectors(&v).map_err(err)?[0], &highest_weight_vectors(&w).map_err(err)?[0]);
        let m = check_multiplicativity(&v, &w, &vw, cv, cw).map_err(err)?;
        ensure(m.holds, || format!("product fails: {} * {} vs {}", m.left.plus_text(), m.right.plus_text(), m.tensor.plus_text()))?;
        done += 1;
    }
    Ok(format!("5 pairs ({} sampled)", tried))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("1 eigenvalues of P_r on V(3)_2, l = 5", eigenvalues, 1),
        ("2 identity registry + mutations", registry_suite, 600),
        ("3 young route = series route", young, 120),
        ("4 integrality (no Phi_l poles)", integrality, 120),
        ("5 irreducibility criterion = oracle", equivalence, 300),
        ("6 factorization (1-2u)(1-u^3), l = 3", factorization, 60),
        ("7 Frobenius pullback", frobenius, 60),
        ("8 Lusztig tensor dims", lusztig, 60),
        ("9 multiplicativity", multiplicativity, 120),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let t0 = Instant::now();
        let res = f();
        let dt = t0.elapsed();
        let res = match res {
            Ok(s) if dt > Duration::from_secs(budget) => Err(format!("{} but over budget ({} s)", s, budget)),
            r => r,
        };
        match res {
            Ok(s) => println!("PASS  {:<42} {:>8.2}s  {}", name, dt.as_secs_f64(), s),
            Err(s) => {
                failed += 1;
                println!("FAIL  {:<42} {:>8.2}s  {}", name, dt.as_secs_f64(), s)
            }
        }
    }
    if failed > 0 {
        println!("{} criteria failed", failed);
        std::process::exit(1);
    }
    println!("all 9 criteria pass");
}
