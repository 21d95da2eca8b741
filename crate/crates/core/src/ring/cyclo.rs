use super::poly;
use super::{rat, Field, Laurent, RatFunc, Ring, RingError, Scalar, Q};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// `Phi_l(x)`, low degree first, computed as `(x^l - 1) / prod_{d | l, d < l} Phi_d`.
pub fn cyclotomic_poly(l: u32) -> Arc<Vec<Q>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Q>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&l) {
        return p.clone();
    }
    assert!(l >= 1, "cyclotomic order must be positive");
    let mut p = vec![Q::zero(); l as usize + 1];
    p[0] = rat(-1);
    p[l as usize] = rat(1);
    for d in 1..l {
        if l % d == 0 {
            let (qt, r) = poly::divrem(&p, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            p = qt;
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(l, p.clone());
    p
}

pub fn euler_phi(l: u32) -> usize {
    cyclotomic_poly(l).len() - 1
}

/// Element of `Q(eps) = Q[x]/Phi_l(x)`, `eps` the class of `x`.
///
/// `l == 0` marks a rational constant, which lives in every cyclotomic
/// field; binary operations adopt the order of the other operand.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclo {
    l: u32,
    c: Vec<Q>,
}

impl Cyclo {
    pub fn from_poly(mut c: Vec<Q>, l: u32) -> Self {
        if l == 0 {
            poly::trim(&mut c);
            assert!(c.len() <= 1, "non-constant cyclotomic value without an order");
            return Cyclo { l, c };
        }
        // fold exponents mod l first, then reduce by Phi_l
        let ll = l as usize;
        if c.len() > ll {
            let mut f = vec![Q::zero(); ll];
            for (i, x) in c.into_iter().enumerate() {
                f[i % ll] += x;
            }
            c = f;
        }
        let phi = cyclotomic_poly(l);
        let mut r = if c.len() >= phi.len() { poly::divrem(&c, &phi).1 } else { c };
        poly::trim(&mut r);
        let mut v = Cyclo { l, c: r };
        v.demote();
        v
    }

    fn demote(&mut self) {
        if self.c.len() <= 1 {
            self.l = 0;
        }
    }

    pub fn constant(c: Q) -> Self {
        Cyclo::from_poly(vec![c], 0)
    }

    /// `eps^e`
    pub fn eps(e: i64, l: u32) -> Self {
        let m = e.rem_euclid(l as i64) as usize;
        let mut c = vec![Q::zero(); m + 1];
        c[m] = rat(1);
        Cyclo::from_poly(c, l)
    }

    pub fn from_laurent(p: &Laurent, l: u32) -> Self {
        if p.is_zero() {
            return Cyclo::zero();
        }
        let ll = l as i64;
        let mut c = vec![Q::zero(); l as usize];
        for (e, x) in p.terms() {
            c[(e as i64).rem_euclid(ll) as usize] += x;
        }
        Cyclo::from_poly(c, l)
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.c.len() {
            0 => Some(Q::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    fn join(a: u32, b: u32) -> u32 {
        match (a, b) {
            (0, x) | (x, 0) => x,
            (x, y) => {
                assert_eq!(x, y, "mixing cyclotomic fields of different orders");
                x
            }
        }
    }

    /// Lift to a Laurent polynomial in `q` that specializes back to `self`.
    pub fn lift(&self) -> Laurent {
        Laurent::from_dense(0, self.c.clone())
    }

    /// Returns `j` with `self == eps^j`, if any.
    pub fn as_root_power(&self, l: u32) -> Option<u32> {
        (0..l).find(|&j| *self == Cyclo::eps(j as i64, l))
    }
}

impl Ring for Cyclo {
    fn zero() -> Self {
        Cyclo { l: 0, c: Vec::new() }
    }
    fn one() -> Self {
        Cyclo::constant(rat(1))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let l = Self::join(self.l, o.l);
        let n = self.c.len().max(o.c.len());
        let mut c = vec![Q::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[i] += x;
        }
        poly::trim(&mut c);
        let mut v = Cyclo { l, c };
        v.demote();
        v
    }
    fn mul(&self, o: &Self) -> Self {
        let l = Self::join(self.l, o.l);
        if self.c.len() <= 1 || o.c.len() <= 1 {
            // scalar times element: no reduction needed
            let (s, v) = if self.c.len() <= 1 { (self, o) } else { (o, self) };
            let k = match s.c.first() {
                Some(k) => k,
                None => return Cyclo::zero(),
            };
            let mut r = Cyclo { l, c: v.c.iter().map(|x| x * k).collect() };
            r.demote();
            return r;
        }
        Cyclo::from_poly(poly::mul(&self.c, &o.c), l)
    }
    fn neg(&self) -> Self {
        Cyclo { l: self.l, c: self.c.iter().map(|x| -x).collect() }
    }
    fn from_q(c: &Q) -> Self {
        Cyclo::constant(c.clone())
    }
}

impl Field for Cyclo {
    fn inv(&self) -> Option<Self> {
        if self.c.is_empty() {
            return None;
        }
        if self.c.len() == 1 {
            return Some(Cyclo::constant(self.c[0].inv()?));
        }
        let phi = cyclotomic_poly(self.l);
        poly::inv_mod(&self.c, &phi).map(|c| Cyclo::from_poly(c, self.l))
    }
}

impl Scalar for Cyclo {
    fn from_qfunc(f: &RatFunc, l: u32) -> Result<Self, RingError> {
        f.specialize(l)
    }
    fn div_qfunc(&self, f: &RatFunc, l: u32) -> Result<Self, RingError> {
        let s = f.specialize(l)?;
        s.inv().map(|i| self.mul(&i)).ok_or(RingError::DivisionByZero)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            super::laurent::fmt_rational_term(f, first, x, "eps", e as i32)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialOrd for Cyclo {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Deterministic total order on coordinates, used only for canonical sorting.
impl Ord for Cyclo {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let n = self.c.len().max(o.c.len());
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_else(Q::zero);
            let b = o.c.get(i).cloned().unwrap_or_else(Q::zero);
            match a.cmp(&b) {
                std::cmp::Ordering::Equal => continue,
                x => return x,
            }
        }
        std::cmp::Ordering::Equal
    }
}
