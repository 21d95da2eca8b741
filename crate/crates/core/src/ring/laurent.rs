use super::poly;
use super::{rat, Ring, Q};
use std::fmt;

/// Laurent polynomial in `q` with rational coefficients.
///
/// Stored densely from the lowest exponent; the first and last stored
/// coefficients are nonzero, and zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    c: Vec<Q>,
}

impl Laurent {
    pub fn from_dense(low: i32, c: Vec<Q>) -> Self {
        let mut l = Laurent { low, c };
        l.normalize();
        l
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Q)>>(terms: I) -> Self {
        let terms: Vec<(i32, Q)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Laurent::default();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
        for (e, x) in terms {
            c[(e - lo) as usize] += x;
        }
        Laurent::from_dense(lo, c)
    }

    pub fn monomial(e: i32, coeff: Q) -> Self {
        Laurent::from_dense(e, vec![coeff])
    }

    /// `q^e`
    pub fn q(e: i32) -> Self {
        Laurent::monomial(e, rat(1))
    }

    pub fn constant(c: Q) -> Self {
        Laurent::monomial(0, c)
    }

    fn normalize(&mut self) {
        poly::trim(&mut self.c);
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.low += lead as i32;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.c.len() as i32 - 1
    }

    pub fn coeff(&self, e: i32) -> Q {
        let i = e - self.low;
        if i < 0 {
            return Q::zero();
        }
        self.c.get(i as usize).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (self.low + i as i32, x))
    }

    /// Coefficients from `q^low` upward, with `low` returned alongside.
    pub fn dense(&self) -> (i32, &[Q]) {
        (self.low, &self.c)
    }

    pub fn is_monomial(&self) -> bool {
        self.c.len() == 1
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.c.is_empty() {
            Some(Q::zero())
        } else if self.low == 0 && self.c.len() == 1 {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn shift(&self, e: i32) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        Laurent { low: self.low + e, c: self.c.clone() }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Laurent::default();
        }
        Laurent { low: self.low, c: self.c.iter().map(|x| x * k).collect() }
    }

    /// `q -> q^{-1}`
    pub fn bar(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = self.c.clone();
        c.reverse();
        Laurent { low: -self.high(), c }
    }

    /// `q -> c q`
    pub fn dilate(&self, k: &Q) -> Self {
        let terms = self.terms().map(|(e, x)| {
            let f = if e >= 0 {
                Ring::pow(k, e as u32)
            } else {
                super::Field::inv(&Ring::pow(k, (-e) as u32)).expect("dilation by zero")
            };
            (e, x * f)
        });
        Laurent::from_terms(terms.collect::<Vec<_>>())
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                Ring::pow(x, e as u32)
            } else {
                super::Field::inv(&Ring::pow(x, (-e) as u32)).expect("evaluation at zero")
            };
            acc += c * p;
        }
        acc
    }

    /// Exact quotient when `d` divides `self` in `Q[q, q^{-1}]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::default());
        }
        if d.is_monomial() {
            let inv = super::Field::inv(&d.c[0]).unwrap();
            return Some(Laurent { low: self.low - d.low, c: self.c.iter().map(|x| x * &inv).collect() });
        }
        let (q, r) = poly::divrem(&self.c, &d.c);
        if !r.is_empty() {
            return None;
        }
        Some(Laurent::from_dense(self.low - d.low, q))
    }

    /// Substitute `q -> q^k` for integer `k != 0`.
    pub fn subs_power(&self, k: i32) -> Self {
        Laurent::from_terms(self.terms().map(|(e, x)| (e * k, x.clone())).collect::<Vec<_>>())
    }
}

impl Ring for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn one() -> Self {
        Laurent::constant(rat(1))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        if self.c.is_empty() {
            return o.clone();
        }
        if o.c.is_empty() {
            return self.clone();
        }
        let lo = self.low.min(o.low);
        let hi = self.high().max(o.high());
        let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.low - lo) as usize + i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[(o.low - lo) as usize + i] += x;
        }
        Laurent::from_dense(lo, c)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Laurent::default();
        }
        Laurent::from_dense(self.low + o.low, poly::mul(&self.c, &o.c))
    }
    fn neg(&self) -> Self {
        Laurent { low: self.low, c: self.c.iter().map(|x| -x).collect() }
    }
    fn from_q(c: &Q) -> Self {
        Laurent::constant(c.clone())
    }
}

pub(crate) fn fmt_rational_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Q,
    var: &str,
    e: i32,
) -> fmt::Result {
    let neg = c < &Q::zero();
    let a = if neg { -c } else { c.clone() };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let unit = a == rat(1);
    if e == 0 {
        return write!(f, "{}", a);
    }
    if !unit {
        write!(f, "{}*", a)?;
    }
    if e == 1 {
        write!(f, "{}", var)
    } else {
        write!(f, "{}^{}", var, e)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            fmt_rational_term(f, first, c, "q", e)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
