use qaffine::drinfeld::*;
use qaffine::matrix::Span;
use qaffine::modules::*;
use qaffine::ring::*;

fn c(n: i64) -> Cyclo {
    Cyclo::constant(rat(n))
}

fn spec(l: u32, fs: Vec<Factor>) -> SpecModule {
    SpecModule::new(l, fs).unwrap()
}

fn ev(m: u32, a: Cyclo) -> Factor {
    Factor::Ev { m, a }
}

/// `prod_{s=1}^n (1 - eps^{n+1-2s} a u)` as coefficients.
fn ev_poly(n: u32, a: &Cyclo, l: u32) -> Vec<Cyclo> {
    (1..=n as i64).fold(vec![Cyclo::one()], |acc, s| {
        poly_mul(&acc, &[Cyclo::one(), Cyclo::eps(n as i64 + 1 - 2 * s, l).mul(a).neg()])
    })
}

#[test]
fn v1_has_one_certificate() {
    let v = spec(3, vec![ev(1, c(2))]);
    let certs = highest_weight_vectors(&v).unwrap();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0].vector, vec![Cyclo::one(), Cyclo::zero()]);
    assert_eq!(certs[0].weight, 1);
    verify_certificate(&v, &certs[0]).unwrap();
}

#[test]
fn irreducible_tensor_has_one_certificate() {
    for e in [0, 1, 3] {
        let v = spec(5, vec![ev(1, c(1)), ev(1, Cyclo::eps(e, 5))]);
        assert_eq!(highest_weight_vectors(&v).unwrap().len(), 1, "b/a = eps^{}", e);
    }
    let v = spec(5, vec![ev(1, c(1)), ev(1, Cyclo::eps(-2, 5))]);
    assert_eq!(highest_weight_vectors(&v).unwrap().len(), 1);
    // b/a = eps^2: a second highest-weight vector of weight 0
    let v = spec(5, vec![ev(1, c(1)), ev(1, Cyclo::eps(2, 5))]);
    let certs = highest_weight_vectors(&v).unwrap();
    assert_eq!(certs.iter().map(|c| c.weight).collect::<Vec<_>>(), vec![2, 0]);
}

#[test]
fn singular_vector_in_generic_tensor() {
    for (m, n, p) in [(1u32, 1u32, 1u32), (2, 1, 1), (2, 2, 1), (2, 2, 2), (3, 2, 2)] {
        let k = (m + n) as i32 - 2 * p as i32 + 2;
        let va = ev_module::<RatFunc>(m, &RatFunc::one(), 0).unwrap();
        let vb = ev_module::<RatFunc>(n, &RatFunc::q(k), 0).unwrap();
        let g = GenericModule::new(tensor(&va, &vb).unwrap()).unwrap();
        let certs = highest_weight_vectors(&g).unwrap();
        let mut span = Span::new(g.dim());
        for c in &certs {
            span.insert(&c.vector);
        }
        let d = n as usize + 1;
        let mut w = vec![RatFunc::zero(); g.dim()];
        for r in 0..=p.min(n) {
            if p - r > m {
                continue;
            }
            let sign = if r % 2 == 0 { RatFunc::one() } else { RatFunc::one().neg() };
            let coeff = sign
                .mul(&RatFunc::q((r * (n - r + 1)) as i32))
                .mul(&RatFunc::from(qfact((m - p + r) as i64).unwrap()))
                .mul(&RatFunc::from(qfact((n - r) as i64).unwrap()));
            w[(p - r) as usize * d + r as usize] = coeff;
        }
        assert!(span.contains(&w), "m = {}, n = {}, p = {}", m, n, p);
    }
}

#[test]
fn evaluation_module_eigenvalues() {
    let l = 5;
    for n in 1..=4u32 {
        let a = c(3);
        let v = spec(l, vec![ev(n, a.clone())]);
        let certs = highest_weight_vectors(&v).unwrap();
        assert_eq!(certs.len(), 1);
        let p = extract_polynomial(&v, &certs[0]).unwrap();
        for r in 0..=n as i64 {
            let sign = if r % 2 == 0 { Cyclo::one() } else { Cyclo::one().neg() };
            let want = sign.mul(&a.pow(r as u32)).mul(&Cyclo::from_laurent(&qbinom(n as i64, r).unwrap(), l));
            assert_eq!(p.plus[r as usize], want, "n = {}, r = {}", n, r);
        }
        assert_eq!(p.plus, ev_poly(n, &a, l));
        assert_eq!(p.minus, ev_poly(n, &a.inv().unwrap(), l));
        assert!(p.shape_violations().is_empty(), "{:?}", p.shape_violations());
        assert_eq!(p.degree(), n as usize);
    }
}

#[test]
fn generic_evaluation_modules() {
    for n in 1..=4u32 {
        let a = RatFunc::from_q(&ratio(-2, 3));
        let g = GenericModule::new(ev_module::<RatFunc>(n, &a, 0).unwrap()).unwrap();
        let certs = highest_weight_vectors(&g).unwrap();
        assert_eq!(certs.len(), 1);
        let p = extract_polynomial(&g, &certs[0]).unwrap();
        let want = (1..=n as i32).fold(vec![RatFunc::one()], |acc, m| {
            poly_mul(&acc, &[RatFunc::one(), a.mul(&RatFunc::q(n as i32 - 2 * m + 1)).neg()])
        });
        assert_eq!(p.plus, want, "n = {}", n);
        assert!(p.shape_violations().is_empty());
    }
}

#[test]
fn multiplicativity() {
    let l = 5;
    let (a, b) = (c(2), c(-3));
    let va = spec(l, vec![ev(1, a.clone())]);
    let vb = spec(l, vec![ev(1, b.clone())]);
    let vab = spec(l, vec![ev(1, a.clone()), ev(1, b.clone())]);
    let (ca, cb) = (&highest_weight_vectors(&va).unwrap()[0], &highest_weight_vectors(&vb).unwrap()[0]);
    let m = check_multiplicativity(&va, &vb, &vab, ca, cb).unwrap();
    assert!(m.holds);
    let want = poly_mul(&[Cyclo::one(), a.neg()], &[Cyclo::one(), b.neg()]);
    assert_eq!(m.tensor.plus, want);
}

#[test]
fn tensor_with_trivial_changes_nothing() {
    let l = 3;
    let v = spec(l, vec![ev(2, c(5))]);
    let t = spec(l, vec![ev(0, c(1))]);
    let vt = spec(l, vec![ev(2, c(5)), ev(0, c(1))]);
    let cv = &highest_weight_vectors(&v).unwrap()[0];
    let ct = &highest_weight_vectors(&t).unwrap()[0];
    let m = check_multiplicativity(&v, &t, &vt, cv, ct).unwrap();
    assert!(m.holds);
    assert_eq!(m.tensor.plus, m.left.plus);
    assert_eq!(m.right.plus, vec![Cyclo::one()]);
}

#[test]
fn multiplicativity_with_frobenius_factor() {
    let l = 3;
    let (a, b) = (c(2), c(7));
    let va = spec(l, vec![ev(1, a.clone())]);
    let fb = spec(l, vec![Factor::Frob { n: 1, b: b.clone() }]);
    let both = spec(l, vec![ev(1, a.clone()), Factor::Frob { n: 1, b: b.clone() }]);
    assert_eq!(ResModule::dim(&both), 4);
    let ca = &highest_weight_vectors(&va).unwrap()[0];
    let cb = &highest_weight_vectors(&fb).unwrap()[0];
    let pf = extract_polynomial(&fb, cb).unwrap();
    // Fr^*(V(1)_b) carries the classical polynomial in u^l: 1 - b u^l
    let mut want = vec![Cyclo::zero(); l as usize + 1];
    want[0] = Cyclo::one();
    want[l as usize] = b.neg();
    assert_eq!(pf.plus, want);
    assert_eq!(pf.weight, l as i64);
    let m = check_multiplicativity(&va, &fb, &both, ca, cb).unwrap();
    assert!(m.holds);
    assert_eq!(m.tensor.plus, poly_mul(&[Cyclo::one(), a.neg()], &pf.plus));
}

#[test]
fn frobenius_factor_direct_construction_agrees() {
    let l = 3;
    let b = c(7);
    let direct = FrobPullback::new(1, b.clone(), l).unwrap();
    let head = spec(l, vec![Factor::Frob { n: 1, b: b.clone() }]);
    let p1 = extract_polynomial(&direct, &highest_weight_vectors(&direct).unwrap()[0]).unwrap();
    let p2 = extract_polynomial(&head, &highest_weight_vectors(&head).unwrap()[0]).unwrap();
    assert_eq!(p1, p2);
}

#[test]
fn weyl_module_has_two_highest_weights() {
    // V(3)_a at l = 3 is reducible: the weight 1 vector spans a submodule
    let v = spec(3, vec![ev(3, c(1))]);
    let certs = highest_weight_vectors(&v).unwrap();
    assert!(certs.len() >= 2, "{:?}", certs.iter().map(|c| c.weight).collect::<Vec<_>>());
    let ps = polynomials_by_certificate(&v, &certs).unwrap();
    assert_eq!(ps.len(), certs.len());
    assert!(ps.iter().all(|p| p.reciprocity_holds()));
}

#[test]
fn certificate_serializes() {
    let v = spec(3, vec![ev(1, c(2))]);
    let cert = &highest_weight_vectors(&v).unwrap()[0];
    let j = serde_json::to_value(cert).unwrap();
    assert_eq!(j["weight"], 1);
    assert_eq!(j["vector"][0], "1");
    let p = extract_polynomial(&v, cert).unwrap();
    assert_eq!(qaffine::ring::parse::parse_upoly(&p.plus_text(), 3).unwrap(), p.plus);
}

#[test]
fn polynomial_text() {
    let l = 5;
    assert_eq!(format_upoly(&[c(1), c(-2)]), "1 - 2*u");
    let p = ev_poly(2, &c(1), l);
    let t = format_upoly(&p);
    assert_eq!(t, "1 + (1 + eps^2 + eps^3)*u + u^2");
    assert_eq!(qaffine::ring::parse::parse_upoly(&t, l).unwrap(), p);
    let g = vec![RatFunc::one(), RatFunc::q(1).add(&RatFunc::one()).inv().unwrap().neg()];
    assert_eq!(qaffine::ring::parse::parse_upoly(&format_upoly(&[c(3), Cyclo::eps(1, l).neg()]), l).unwrap(), vec![c(3), Cyclo::eps(1, l).neg()]);
    assert!(format_upoly(&g).starts_with("1 + ("));
}
