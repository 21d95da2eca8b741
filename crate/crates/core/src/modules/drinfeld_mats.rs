//! Matrices of the Drinfeld generators on a module, derived from the
//! Chevalley action and cached by symbol.

use super::{divided_power, qs, Module, ModuleError};
use crate::matrix::Matrix;
use crate::ring::{kbinom_at_weight, qint, rat, RatFunc, Ring, Scalar};
use crate::words::Sym;
use std::collections::HashMap;
use std::sync::Arc;

/// Largest `|r|` for which `x_r^\pm`, `h_r`, `psi_r` and `P_r` are derived.
pub const MAX_INDEX: i32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AuditFailure {
    pub relation: String,
    pub r: i32,
    pub s: i32,
}

/// Derived-matrix cache. Seeds: `x_0^\pm = e_1^\pm`, `x_1^- = e_0^+ k`,
/// `x_{-1}^+ = k^{-1} e_0^-` (type I, `c = 1`).
pub struct Drinfeld<S> {
    l: u32,
    weights: Vec<i64>,
    cache: HashMap<Sym, Arc<Matrix<S>>>,
}

impl<S: Scalar> Drinfeld<S> {
    pub fn new(m: &Module<S>) -> Result<Self, ModuleError> {
        let k = m.k();
        let ki = m.k_pow(-1);
        let mut cache = HashMap::new();
        cache.insert(Sym::XPlus(0), Arc::new(m.e().clone()));
        cache.insert(Sym::XMinus(0), Arc::new(m.f().clone()));
        cache.insert(Sym::XMinus(1), Arc::new(m.e0p()?.mul(&k)));
        cache.insert(Sym::XPlus(-1), Arc::new(ki.mul(m.e0m()?)));
        Ok(Drinfeld { l: m.order(), weights: m.weights().to_vec(), cache })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    fn q(&self, f: &RatFunc) -> Result<S, ModuleError> {
        Ok(qs(f, self.l)?)
    }

    fn div(&self, m: &Matrix<S>, f: &RatFunc) -> Result<Matrix<S>, ModuleError> {
        let l = self.l;
        Ok(m.try_map(|c| c.div_qfunc(f, l))?)
    }

    fn qq() -> RatFunc {
        RatFunc::q(1).sub(&RatFunc::q(-1))
    }

    fn two() -> RatFunc {
        RatFunc::from_laurent(qint(2))
    }

    pub fn k_pow(&self, p: i64) -> Matrix<S> {
        Matrix::diag(self.weights.iter().map(|&w| qs(&RatFunc::q((p * w) as i32), self.l).unwrap()).collect())
    }

    /// Matrix of a single generator symbol.
    pub fn get(&mut self, s: Sym) -> Result<Arc<Matrix<S>>, ModuleError> {
        if let Some(m) = self.cache.get(&s) {
            return Ok(m.clone());
        }
        let idx = match s {
            Sym::XPlus(r) | Sym::XMinus(r) | Sym::H(r) | Sym::PsiPlus(r) | Sym::PsiMinus(r) | Sym::P(r) => r,
            Sym::DivXPlus(r, _) | Sym::DivXMinus(r, _) => r,
            _ => 0,
        };
        if idx.abs() > MAX_INDEX {
            return Err(ModuleError::MissingSymbol(s.to_string()));
        }
        let m = self.compute(s)?;
        let m = Arc::new(m);
        self.cache.insert(s, m.clone());
        Ok(m)
    }

    fn compute(&mut self, s: Sym) -> Result<Matrix<S>, ModuleError> {
        let two = Self::two();
        let qq = Self::qq();
        Ok(match s {
            Sym::K(e) => self.k_pow(e as i64),
            Sym::XPlus(r) if r > 0 => {
                let h = self.get(Sym::H(1))?;
                let x = self.get(Sym::XPlus(r - 1))?;
                self.div(&h.commutator(&x), &two)?
            }
            Sym::XPlus(r) => {
                // r <= -2
                let h = self.get(Sym::H(-1))?;
                let x = self.get(Sym::XPlus(r + 1))?;
                self.div(&h.commutator(&x), &two)?
            }
            Sym::XMinus(r) if r > 1 => {
                let h = self.get(Sym::H(1))?;
                let x = self.get(Sym::XMinus(r - 1))?;
                self.div(&h.commutator(&x), &two)?.neg()
            }
            Sym::XMinus(r) => {
                // r <= -1
                let h = self.get(Sym::H(-1))?;
                let x = self.get(Sym::XMinus(r + 1))?;
                self.div(&h.commutator(&x), &two)?.neg()
            }
            Sym::PsiPlus(0) => self.k_pow(1),
            Sym::PsiMinus(0) => self.k_pow(-1),
            Sym::PsiPlus(r) => {
                let x = self.get(Sym::XPlus(r))?;
                let y = self.get(Sym::XMinus(0))?;
                x.commutator(&y).scale(&self.q(&qq)?)
            }
            Sym::PsiMinus(r) => {
                let x = self.get(Sym::XPlus(r))?;
                let y = self.get(Sym::XMinus(0))?;
                x.commutator(&y).scale(&self.q(&qq)?).neg()
            }
            Sym::H(1) => {
                let x = self.get(Sym::XPlus(0))?;
                let y = self.get(Sym::XMinus(1))?;
                self.k_pow(-1).mul(&x.commutator(&y))
            }
            Sym::H(-1) => {
                let x = self.get(Sym::XPlus(-1))?;
                let y = self.get(Sym::XMinus(0))?;
                self.k_pow(1).mul(&x.commutator(&y))
            }
            Sym::H(n) => {
                // phi(u) = k^{-1} Psi^+(u) = exp((q - q^{-1}) sum h_s u^s), and the
                // mirror image on the minus side; n phi_n = (q-q^-1) sum s h_s phi_{n-s}.
                let sign = n.signum();
                let n = n.abs();
                let phi = |me: &mut Self, j: i32| -> Result<Matrix<S>, ModuleError> {
                    if j == 0 {
                        return Ok(Matrix::identity(me.dim()));
                    }
                    Ok(if sign > 0 {
                        me.k_pow(-1).mul(&*me.get(Sym::PsiPlus(j))?)
                    } else {
                        me.k_pow(1).mul(&*me.get(Sym::PsiMinus(-j))?)
                    })
                };
                let mut acc = phi(self, n)?.scale(&S::from_i64(n as i64));
                let qqs = self.q(&qq)?;
                let mut tail = Matrix::zeros(self.dim(), self.dim());
                for s in 1..n {
                    let h = self.get(Sym::H(sign * s))?;
                    let p = phi(self, n - s)?;
                    tail = tail.add(&h.mul(&p).scale(&S::from_i64(s as i64)));
                }
                tail = tail.scale(&qqs);
                acc = if sign > 0 { acc.sub(&tail) } else { acc.add(&tail).neg() };
                let d = qq.mul(&RatFunc::from_q(&rat(n as i64)));
                self.div(&acc, &d)?
            }
            Sym::P(0) => Matrix::identity(self.dim()),
            Sym::P(n) => {
                // P_n = -(1/n) sum_r r q^r/[r] h_r P_{n-r}; negative n through Omega.
                let sign = n.signum();
                let n = n.abs();
                let mut acc = Matrix::zeros(self.dim(), self.dim());
                for r in 1..=n {
                    let c = RatFunc::from_q(&rat(r as i64))
                        .mul(&RatFunc::q(sign * r))
                        .div_exact_or(&RatFunc::from_laurent(qint(r as i64)))?;
                    let h = self.get(Sym::H(sign * r))?;
                    let p = self.get(Sym::P(sign * (n - r)))?;
                    let t = if sign > 0 { h.mul(&p) } else { p.mul(&h) };
                    acc = acc.add(&t.try_map(|x| x.scale(&c, self.l))?);
                }
                let m = RatFunc::from_q(&rat(-(n as i64)));
                self.div(&acc, &m)?
            }
            Sym::KBinom(n, r) => {
                let l = self.l;
                let d: Result<Vec<S>, _> = self.weights.iter().map(|&w| qs(&kbinom_at_weight(w, n as i64, r as i64), l)).collect();
                Matrix::diag(d?)
            }
            Sym::DivXPlus(r, m) => {
                let x = self.get(Sym::XPlus(r))?;
                divided_power(&x, m, self.l)?
            }
            Sym::DivXMinus(r, m) => {
                let x = self.get(Sym::XMinus(r))?;
                divided_power(&x, m, self.l)?
            }
        })
    }

    /// Audit of the Drinfeld relations (with `c = 1`) for indices in `[-w, w]`.
    pub fn audit(&mut self, w: i32) -> Result<Vec<AuditFailure>, ModuleError> {
        let mut out = Vec::new();
        let l = self.l;
        let q2: S = self.q(&RatFunc::q(2))?;
        let qm2: S = self.q(&RatFunc::q(-2))?;
        let qq: S = self.q(&Self::qq())?;
        let k = self.k_pow(1);
        let ki = self.k_pow(-1);
        let mut fail = |rel: &str, r: i32, s: i32| out.push(AuditFailure { relation: rel.into(), r, s });
        for r in -w..=w {
            let xp = self.get(Sym::XPlus(r))?;
            let xm = self.get(Sym::XMinus(r))?;
            if !k.mul(&xp).sub(&xp.scale(&q2).mul(&k)).is_zero() {
                fail("k x+ k^-1 = q^2 x+", r, 0);
            }
            if !k.mul(&xm).sub(&xm.scale(&qm2).mul(&k)).is_zero() {
                fail("k x- k^-1 = q^-2 x-", r, 0);
            }
        }
        for r in -w..w {
            for s in -w..w {
                for (plus, c) in [(true, &q2), (false, &qm2)] {
                    let g = |me: &mut Self, i: i32| if plus { me.get(Sym::XPlus(i)) } else { me.get(Sym::XMinus(i)) };
                    let (a1, b0, a0, b1) = (g(self, r + 1)?, g(self, s)?, g(self, r)?, g(self, s + 1)?);
                    let lhs = a1.mul(&b0).sub(&b0.mul(&a1).scale(c));
                    let rhs = a0.mul(&b1).scale(c).sub(&b1.mul(&a0));
                    if !lhs.sub(&rhs).is_zero() {
                        fail(if plus { "(3) plus" } else { "(3) minus" }, r, s);
                    }
                }
            }
        }
        for r in -w..=w {
            for s in -w..=w {
                let xp = self.get(Sym::XPlus(r))?;
                let xm = self.get(Sym::XMinus(s))?;
                let lhs = xp.commutator(&xm).scale(&qq);
                let t = r + s;
                let rhs = if t > 0 {
                    (*self.get(Sym::PsiPlus(t))?).clone()
                } else if t < 0 {
                    self.get(Sym::PsiMinus(t))?.neg()
                } else {
                    k.sub(&ki)
                };
                if !lhs.sub(&rhs).is_zero() {
                    fail("[x+_r, x-_s] = (psi+ - psi-)/(q - q^-1)", r, s);
                }
            }
        }
        for r in (-w..=w).filter(|&r| r != 0) {
            let h = self.get(Sym::H(r))?;
            // (1/r)[2r]_q
            let c = RatFunc::from_laurent(qint(2 * r as i64)).mul(&RatFunc::from_q(&crate::ring::ratio(1, r as i64)));
            let cs: S = qs(&c, l)?;
            for s in -w..=w - r.abs() {
                if (r + s).abs() > w {
                    continue;
                }
                let xp = self.get(Sym::XPlus(s))?;
                let xm = self.get(Sym::XMinus(s))?;
                let yp = self.get(Sym::XPlus(r + s))?;
                let ym = self.get(Sym::XMinus(r + s))?;
                if !h.commutator(&xp).sub(&yp.scale(&cs)).is_zero() {
                    fail("[h_r, x+_s] = (1/r)[2r] x+_{r+s}", r, s);
                }
                if !h.commutator(&xm).add(&ym.scale(&cs)).is_zero() {
                    fail("[h_r, x-_s] = -(1/r)[2r] x-_{r+s}", r, s);
                }
            }
            for s in (-w..=w).filter(|&s| s != 0) {
                let g = self.get(Sym::H(s))?;
                if !h.commutator(&g).is_zero() {
                    fail("[h_r, h_s] = 0", r, s);
                }
            }
        }
        Ok(out)
    }
}

trait DivExact: Sized {
    fn div_exact_or(&self, o: &Self) -> Result<Self, ModuleError>;
}

impl DivExact for RatFunc {
    fn div_exact_or(&self, o: &Self) -> Result<Self, ModuleError> {
        use crate::ring::Field;
        self.div(o).ok_or(ModuleError::Ring(crate::ring::RingError::DivisionByZero))
    }
}
