use qaffine::matrix::Matrix;
use qaffine::modules::*;
use qaffine::ring::*;
use qaffine::words::Sym;

fn rf(n: i64, d: i64) -> RatFunc {
    RatFunc::from_q(&ratio(n, d))
}

fn ev(m: u32, a: RatFunc) -> Module<RatFunc> {
    ev_module(m, &a, 0).unwrap()
}

fn sym_ev(m: u32, i: usize) -> Module<MultiPoly> {
    evaluation_twist_with_inverse(&make_vn(m, 0).unwrap(), &MultiPoly::var(i, 1), &MultiPoly::var(i, -1), format!("a{}", i + 1))
        .unwrap()
}

fn eps(e: i64, l: u32) -> Cyclo {
    Cyclo::eps(e, l)
}

#[test]
fn vn_shapes() {
    let v0: Module<RatFunc> = make_vn(0, 0).unwrap();
    assert_eq!(v0.dim(), 1);
    assert_eq!(v0.k(), Matrix::identity(1));
    let v1: Module<RatFunc> = make_vn(1, 0).unwrap();
    assert_eq!(v1.k(), Matrix::diag(vec![RatFunc::q(1), RatFunc::q(-1)]));
    assert_eq!(*v1.e().get(0, 1), RatFunc::one());
    assert_eq!(*v1.f().get(1, 0), RatFunc::one());
    let v2: Module<Cyclo> = make_vn(2, 3).unwrap();
    assert_eq!(v2.k(), Matrix::diag(vec![eps(2, 3), Cyclo::one(), eps(-2, 3)]));
    assert_eq!(*v2.e().get(0, 1), Cyclo::from_i64(-1));
    assert!(matches!(make_vn::<Cyclo>(3, 3), Err(ModuleError::TooLarge { .. })));
}

#[test]
fn evaluation_and_relations() {
    let v = ev(1, rf(3, 2));
    v.check_relations().unwrap();
    // e_0^+ v_0 = q^{-1} a v_1
    assert_eq!(*v.e0p().unwrap().get(1, 0), RatFunc::q(-1).mul(&rf(3, 2)));
    assert!(matches!(ev_module(1, &RatFunc::zero(), 0), Err(ModuleError::ZeroParam)));
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        let t = tensor(&ev(m, rf(2, 1)), &ev(n, rf(-5, 3))).unwrap();
        t.check_relations().unwrap();
    }
}

#[test]
fn tensor_unit_and_coassociativity() {
    let v = ev(1, rf(7, 3));
    let triv = ev(0, rf(1, 1));
    let t = tensor(&v, &triv).unwrap();
    assert_eq!(t.e(), v.e());
    assert_eq!(t.f(), v.f());
    assert_eq!(t.e0p().unwrap(), v.e0p().unwrap());
    assert_eq!(t.e0m().unwrap(), v.e0m().unwrap());
    let pool = [ev(1, rf(2, 1)), ev(2, rf(-1, 3)), ev(1, rf(5, 1))];
    let a = tensor(&tensor(&pool[0], &pool[1]).unwrap(), &pool[2]).unwrap();
    let b = tensor(&pool[0], &tensor(&pool[1], &pool[2]).unwrap()).unwrap();
    assert_eq!(a.e(), b.e());
    assert_eq!(a.f(), b.f());
    assert_eq!(a.e0p().unwrap(), b.e0p().unwrap());
    assert_eq!(a.e0m().unwrap(), b.e0m().unwrap());
    assert_eq!(a.weights(), b.weights());
}

#[test]
fn eq5_on_evaluation_modules() {
    for m in 1..=3u32 {
        let a = rf(-3, 2);
        let v = ev(m, a.clone());
        let mut d = Drinfeld::new(&v).unwrap();
        for r in -3..=3i32 {
            let c = RatFunc::q(-r).mul(&if r >= 0 { a.pow(r as u32) } else { a.inv().unwrap().pow((-r) as u32) });
            let want_p = v.k_pow(r as i64).mul(v.e()).scale(&c);
            let want_m = v.f().mul(&v.k_pow(r as i64)).scale(&c);
            assert_eq!(*d.get(Sym::XPlus(r)).unwrap(), want_p, "x+_{} on V({})", r, m);
            assert_eq!(*d.get(Sym::XMinus(r)).unwrap(), want_m, "x-_{} on V({})", r, m);
        }
    }
}

#[test]
fn drinfeld_audit_on_tensors() {
    let mods = [ev(2, rf(3, 1)), tensor(&ev(2, rf(2, 1)), &ev(1, rf(-1, 2))).unwrap(), tensor(&ev(1, rf(1, 1)), &ev(1, rf(4, 1))).unwrap()];
    for m in &mods {
        let mut d = Drinfeld::new(m).unwrap();
        let fails = d.audit(3).unwrap();
        assert!(fails.is_empty(), "{:?}", fails);
    }
}

#[test]
fn drinfeld_audit_symbolic() {
    let t = tensor(&sym_ev(1, 0), &sym_ev(1, 1)).unwrap();
    let mut d = Drinfeld::new(&t).unwrap();
    assert!(d.audit(2).unwrap().is_empty());
}

#[test]
fn seed_reading_from_the_spec_fails_audit() {
    // x_1^- = e_0^+ (without the k) breaks [x_{-1}^+, x_1^-] = (k - k^{-1})/(q - q^{-1}).
    let v = ev(1, rf(2, 1));
    let x = v.e0p().unwrap().clone();
    let y = v.k_pow(-1).mul(v.e0m().unwrap());
    let qq = RatFunc::q(1).sub(&RatFunc::q(-1));
    assert_ne!(y.commutator(&x).scale(&qq), v.k().sub(&v.k_pow(-1)));
}

#[test]
fn psi_eigenvalue_on_v2() {
    // u^1 coefficient of q^2 P(q^{-2}u)/P(u), P = (1-aqu)(1-aq^{-1}u): a (q^3 - q^{-1})
    let a = rf(5, 2);
    let v = ev(2, a.clone());
    let mut d = Drinfeld::new(&v).unwrap();
    let psi = d.get(Sym::PsiPlus(1)).unwrap();
    let want = a.mul(&RatFunc::q(3).sub(&RatFunc::q(-1)));
    assert_eq!(*psi.get(0, 0), want);
    let h1 = d.get(Sym::H(1)).unwrap();
    let hm = d.get(Sym::H(-1)).unwrap();
    assert!(h1.commutator(&hm).is_zero());
}

#[test]
fn p1_eigenvalue() {
    let a = rf(7, 3);
    let v = ev(1, a.clone());
    let mut d = Drinfeld::new(&v).unwrap();
    let p = d.get(Sym::P(1)).unwrap();
    assert_eq!(*p.get(0, 0), a.neg());
    let pm = d.get(Sym::P(-1)).unwrap();
    assert_eq!(*pm.get(0, 0), a.inv().unwrap().neg());
}

#[test]
fn divided_powers_generic() {
    let t = tensor(&ev(1, rf(2, 1)), &ev(1, rf(3, 1))).unwrap();
    let mut d = Drinfeld::new(&t).unwrap();
    let x2 = d.get(Sym::DivXPlus(0, 2)).unwrap();
    // v_1 (x) v_1 is index 3, v_0 (x) v_0 index 0
    assert_eq!(*x2.get(0, 3), RatFunc::one());
    let v = ev(1, rf(2, 1));
    let mut d = Drinfeld::new(&v).unwrap();
    assert!(d.get(Sym::DivXPlus(0, 2)).unwrap().is_zero());
    let s = sym_ev(2, 0);
    let mut d = Drinfeld::new(&s).unwrap();
    let m = d.get(Sym::DivXMinus(1, 2)).unwrap();
    assert!(m.entries().iter().all(|c| c.terms().all(|(_, r)| r.is_laurent())));
    assert!(!m.is_zero());
}

#[test]
fn eq11_coproduct_power_law() {
    let x1 = {
        let v = ev(1, rf(3, 1));
        let mut d = Drinfeld::new(&v).unwrap();
        (v.k(), (*d.get(Sym::XPlus(2)).unwrap()).clone())
    };
    let w = ev(2, rf(-2, 1));
    let mut dw = Drinfeld::new(&w).unwrap();
    let xw = (*dw.get(Sym::XPlus(2)).unwrap()).clone();
    let kw = w.k();
    let (k1, x) = x1;
    let _ = k1;
    let op = x.kron(&kw).add(&Matrix::identity(2).kron(&xw));
    for s in 0..=4u32 {
        let lhs = op.pow(s);
        let mut rhs = Matrix::zeros(6, 6);
        for t in 0..=s {
            let c = RatFunc::q((t * (s - t)) as i32).mul(&RatFunc::from_laurent(qbinom(s as i64, t as i64).unwrap()));
            rhs = rhs.add(&x.pow(t).kron(&xw.pow(s - t).mul(&kw.pow(t))).scale(&c));
        }
        assert_eq!(lhs, rhs, "s = {}", s);
    }
}

#[test]
fn specialization_examples() {
    let v = specialize_module(&ev(1, rf(2, 1)), 3).unwrap();
    assert_eq!(*v.sym(Sym::K(1)).unwrap(), Matrix::diag(vec![eps(1, 3), eps(-1, 3)]));
    let t = tensor(&ev(2, rf(2, 1)), &ev(2, rf(3, 1))).unwrap();
    let s = specialize_module(&t, 5).unwrap();
    for op in [ResOp::Sym(Sym::XPlus(0)), ResOp::Sym(Sym::XMinus(0)), ResOp::E0Plus(1), ResOp::E0Minus(1)] {
        s.op(op).unwrap();
    }
    for r in -1..=1 {
        for m in 1..=4 {
            s.sym(Sym::DivXPlus(r, m)).unwrap();
            s.sym(Sym::DivXMinus(r, m)).unwrap();
        }
    }
    s.presentation().unwrap().check_relations().unwrap();
}

#[test]
fn scalar_p_recursion_at_root_is_singular() {
    let v: Module<Cyclo> = ev_module(1, &Cyclo::from_i64(2), 3).unwrap();
    let mut d = Drinfeld::new(&v).unwrap();
    d.get(Sym::P(1)).unwrap();
    // q^3/[3] has a pole at eps when l = 3
    assert!(d.get(Sym::P(3)).is_err());
    // generic then specialize works
    let s = specialize_module(&ev(1, rf(2, 1)), 3).unwrap();
    s.sym(Sym::P(3)).unwrap();
}

#[test]
fn weights_at_root() {
    let v = specialize_module(&ev(1, rf(2, 1)), 3).unwrap();
    let w = weight_decomposition(&v).unwrap();
    assert_eq!(w.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
    let f = SpecModule::new(3, vec![Factor::Frob { n: 1, b: Cyclo::from_i64(2) }]).unwrap();
    let w = weight_decomposition(&f).unwrap();
    assert_eq!(w.keys().copied().collect::<Vec<_>>(), vec![-3, 3]);
    let t = lusztig_tensor(4, 3).unwrap();
    let w = weight_decomposition(&t).unwrap();
    for (k, v) in &w {
        assert_eq!(v.len(), w[&-k].len());
    }
}

#[test]
fn lusztig_dims() {
    assert_eq!(lusztig_tensor(4, 3).unwrap().dim(), 4);
    assert_eq!(lusztig_tensor(2, 3).unwrap().dim(), 3);
    assert_eq!(lusztig_tensor(3, 3).unwrap().dim(), 2);
    assert_eq!(lusztig_tensor(7, 5).unwrap().dim(), 6);
}

#[test]
fn frobenius_pullback_shape() {
    let f = FrobPullback::new(1, Cyclo::from_i64(2), 3).unwrap();
    assert!(f.sym(Sym::XPlus(0)).unwrap().is_zero());
    let e3 = f.sym(Sym::DivXPlus(0, 3)).unwrap();
    assert_eq!(*e3.get(0, 1), Cyclo::one());
    let x3 = f.sym(Sym::DivXPlus(2, 3)).unwrap();
    assert_eq!(*x3.get(0, 1), Cyclo::from_i64(4));
}

#[test]
fn commuting_square() {
    assert!(commuting_square_check(&Cyclo::one(), 1, 3).unwrap());
    assert!(commuting_square_check(&Cyclo::from_i64(2), 1, 3).unwrap());
    assert!(commuting_square_check(&Cyclo::from_i64(2), 0, 3).unwrap());
    // independent of the l-th root of b^l
    let b = Cyclo::from_i64(2);
    let a = SpecModule::new(3, vec![Factor::WeylHead { n: 1, b: b.clone() }]).unwrap();
    let c = SpecModule::new(3, vec![Factor::WeylHead { n: 1, b: b.mul(&eps(1, 3)) }]).unwrap();
    assert!(modules_match(&a, &c, 1).unwrap());
    // and the symbolic-root realization agrees with the direct one
    let fr = SpecModule::new(3, vec![Factor::Frob { n: 1, b: Cyclo::from_i64(8) }]).unwrap();
    assert!(modules_match(&a, &fr, 1).unwrap());
    let fr5 = SpecModule::new(3, vec![Factor::Frob { n: 1, b: Cyclo::from_i64(5) }]).unwrap();
    let direct = FrobPullback::new(1, Cyclo::from_i64(5), 3).unwrap();
    assert!(modules_match(&fr5, &direct, 1).unwrap());
}
