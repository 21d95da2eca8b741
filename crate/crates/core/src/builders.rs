//! Builders for the derived elements: `P_n`, `D_n^\pm(xi^{(r)})`, the
//! combined operators `DD_n`, and the elements `A_{r,n}`, `B_{r,n}`.

use crate::ring::{qfact, qint, Field, Laurent, RatFunc, Ring, RingError, Series};
use crate::words::{AlgElement, Sym, Word};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PRoute {
    /// Definition via `psi^+`: divides by `1 - q^{-2n}`.
    PsiRecursion,
    /// Recursion in the `h_r`.
    HRecursion,
    /// Closed exponential formula in the `h_r`.
    ExpFormula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DRoute {
    Series,
    Recursion,
    Young,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DMinusRoute {
    Series,
    /// Through `T` and `Phi` applied to the plus side.
    TPhi,
}

fn rf(l: Laurent) -> RatFunc {
    RatFunc::from_laurent(l)
}

fn qpow(e: i64) -> RatFunc {
    RatFunc::q(e as i32)
}

fn inv(x: &RatFunc) -> RatFunc {
    x.inv().expect("nonzero")
}

/// `P_n`. Negative `n` is `Omega(P_{-n})`. The psi route is refused when the
/// caller asks for coefficients specialized at a root of unity (`l != 0`).
pub fn build_p(n: i32, route: PRoute, l: u32) -> Result<AlgElement, RingError> {
    if route == PRoute::PsiRecursion && l != 0 {
        return Err(RingError::Unsupported(
            "P_n via the psi recursion divides by 1 - q^{-2n}; compute generically, then specialize".into(),
        ));
    }
    if n < 0 {
        return Ok(build_p(-n, route, l)?.apply_omega());
    }
    let n = n as usize;
    let mut ps: Vec<AlgElement> = vec![AlgElement::one()];
    match route {
        PRoute::PsiRecursion => {
            for m in 1..=n {
                let c = inv(&rf(Laurent::one().sub(&Laurent::q(-2 * m as i32)))).neg();
                let mut acc = AlgElement::zero();
                for r in 1..=m {
                    acc = acc.add(&AlgElement::sym(Sym::PsiPlus(r as i32)).mul(&ps[m - r]));
                }
                ps.push(AlgElement::sym(Sym::K(-1)).mul(&acc).scale(&c));
            }
        }
        PRoute::HRecursion => {
            for m in 1..=n {
                let mut acc = AlgElement::zero();
                for r in 1..=m {
                    let c = RatFunc::from_q(&crate::ring::rat(r as i64)).mul(&qpow(r as i64)).mul(&inv(&rf(qint(r as i64))));
                    acc = acc.add(&AlgElement::sym(Sym::H(r as i32)).mul(&ps[m - r]).scale(&c));
                }
                let c = RatFunc::from_q(&crate::ring::ratio(-1, m as i64));
                ps.push(acc.scale(&c));
            }
        }
        PRoute::ExpFormula => {
            let mut out = AlgElement::zero();
            for ks in multiplicity_partitions(n) {
                // ks[i] = k_{i+1}
                let mut syms = Vec::new();
                let mut c = qpow(n as i64);
                for (i, &k) in ks.iter().enumerate() {
                    let r = i as i64 + 1;
                    let base = inv(&rf(qint(r))).neg();
                    c = c.mul(&base.pow(k as u32)).mul(&RatFunc::from_q(&crate::ring::ratio(1, factorial(k))));
                    for _ in 0..k {
                        syms.push(Sym::H(r as i32));
                    }
                }
                out = out.add(&AlgElement::word(Word::new(syms), c));
            }
            return Ok(out);
        }
    }
    Ok(ps.pop().unwrap())
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// All multiplicity vectors `(k_1, k_2, ...)` with `sum i k_i = n`.
pub fn multiplicity_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if part == 0 {
            if rem == 0 {
                let mut v = cur.clone();
                v.reverse();
                while v.last() == Some(&0) {
                    v.pop();
                }
                out.push(v);
            }
            return;
        }
        for k in 0..=rem / part {
            cur.push(k);
            go(rem - k * part, part - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Weak compositions of `n` into `r` parts.
pub fn compositions(n: u32, r: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(l, f)` for a multiplicity sequence `pi = (r_1, r_2, ...)`: total rows,
/// and the sum of products of adjacent column lengths.
pub fn young_stats(pi: &[u32]) -> (u32, u32) {
    let l: u32 = pi.iter().sum();
    let cols: Vec<u32> = (0..pi.len()).map(|j| pi[j..].iter().sum()).collect();
    let f = cols.windows(2).map(|w| w[0] * w[1]).sum();
    (l, f)
}

/// `D_n^+(xi^{(r)})`.
pub fn build_d_plus(n: u32, r: u32, route: DRoute) -> AlgElement {
    match route {
        DRoute::Series => d_plus_series(n, r),
        DRoute::Young => d_plus_young(n, r),
        DRoute::Recursion => {
            let mut memo = HashMap::new();
            d_plus_rec(n, r, &mut memo)
        }
    }
}

fn d_plus_series(n: u32, r: u32) -> AlgElement {
    let mut out = AlgElement::zero();
    for c in compositions(n, r) {
        out = out.add(&AlgElement::syms(&c.iter().map(|&m| Sym::XPlus(m as i32)).collect::<Vec<_>>()));
    }
    out.divided_by_qfact(r as i64)
}

fn d_plus_young(n: u32, r: u32) -> AlgElement {
    let mut out = AlgElement::zero();
    for ks in multiplicity_partitions(n as usize) {
        let pi: Vec<u32> = ks.iter().map(|&k| k as u32).collect();
        let (l, f) = young_stats(&pi);
        if l > r {
            continue;
        }
        let mut syms = vec![Sym::DivXPlus(0, r - l)];
        for (i, &ri) in pi.iter().enumerate() {
            syms.push(Sym::DivXPlus(i as i32 + 1, ri));
        }
        let e = f as i64 + (r * l) as i64 - n as i64;
        out = out.add(&AlgElement::word(Word::new(syms), qpow(e)));
    }
    out
}

fn d_plus_rec(n: u32, r: u32, memo: &mut HashMap<(u32, u32), AlgElement>) -> AlgElement {
    if let Some(v) = memo.get(&(n, r)) {
        return v.clone();
    }
    let v = if r == 0 {
        if n == 0 {
            AlgElement::one()
        } else {
            AlgElement::zero()
        }
    } else if r == 1 {
        AlgElement::xp(n as i32)
    } else if n == 0 {
        AlgElement::sym(Sym::DivXPlus(0, r))
    } else {
        let mut acc = AlgElement::zero();
        for s in 1..r {
            let sign = if s % 2 == 1 { RatFunc::one() } else { RatFunc::one().neg() };
            let c = sign.mul(&qpow((s * (r - 1)) as i64));
            let t = AlgElement::sym(Sym::DivXPlus(0, s)).mul(&d_plus_rec(n, r - s, memo));
            acc = acc.add(&t.scale(&c));
        }
        if r <= n {
            let t = d_plus_rec(n - r, r, memo).apply_shift(1);
            acc = acc.add(&t.scale(&qpow((r * (r - 1)) as i64)));
        }
        acc
    };
    memo.insert((n, r), v.clone());
    v
}

/// `D_n^-(xi^{(r)})`.
pub fn build_d_minus(n: u32, r: u32, route: DMinusRoute) -> AlgElement {
    match route {
        DMinusRoute::Series => {
            let mut out = AlgElement::zero();
            for c in compositions(n, r) {
                out = out.add(&AlgElement::syms(&c.iter().map(|&m| Sym::XMinus(m as i32 + 1)).collect::<Vec<_>>()));
            }
            out.divided_by_qfact(r as i64)
        }
        DMinusRoute::TPhi => {
            // -T.Phi is the right map on single letters; on a product of r
            // letters the anti-automorphism leaves a sign (-1)^(r+1) behind.
            let v = build_d_plus(n, r, DRoute::Series).apply_phi().apply_t(1);
            if r % 2 == 0 {
                v
            } else {
                v.neg()
            }
        }
    }
}

/// `DD_n(xi^{(r)}) = sum_m P_m D_{n-m}^+(xi^{(r)})`, with `P_m` as a symbol.
pub fn build_dbb(n: u32, r: i32) -> AlgElement {
    if r < 0 {
        return AlgElement::zero();
    }
    let mut out = AlgElement::zero();
    for m in 0..=n {
        let d = build_d_plus(n - m, r as u32, DRoute::Series);
        out = out.add(&AlgElement::sym(Sym::P(m as i32)).mul(&d));
    }
    out
}

pub fn build_a(r: u32, n: i32) -> AlgElement {
    let mut a = AlgElement::xp(n);
    let x0 = AlgElement::xp(0);
    for s in 1..=r {
        a = a.mul(&x0).sub(&x0.mul(&a).scale(&qpow(2 * s as i64)));
    }
    a
}

pub fn build_b(r: u32, n: i32) -> AlgElement {
    let x0 = AlgElement::xp(0);
    let mut out = AlgElement::zero();
    for s in 0..=r {
        out = out.add(&x0.pow(s).mul(&AlgElement::xp(n)).mul(&x0.pow(r - s)));
    }
    out
}

/// `X^+(q^k u)` truncated at `order`.
pub fn xplus_series(order: usize, k: i32) -> Series<AlgElement> {
    Series::new(order, (0..order).map(|n| AlgElement::xp(n as i32).scale(&RatFunc::q(k * n as i32))).collect())
}

/// `X^-(u) = sum x_{n+1}^- u^n` truncated at `order`.
pub fn xminus_series(order: usize) -> Series<AlgElement> {
    Series::new(order, (0..order).map(|n| AlgElement::xm(n as i32 + 1)).collect())
}

/// `Psi^+(u)` truncated at `order`.
pub fn psi_plus_series(order: usize) -> Series<AlgElement> {
    Series::new(
        order,
        (0..order).map(|n| if n == 0 { AlgElement::sym(Sym::K(1)) } else { AlgElement::sym(Sym::PsiPlus(n as i32)) }).collect(),
    )
}

/// `1 / [m]_q!` as a scalar.
pub fn inv_qfact(m: i64) -> RatFunc {
    inv(&rf(qfact(m).expect("nonnegative")))
}
