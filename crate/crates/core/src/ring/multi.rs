use super::{Laurent, RatFunc, Ring, RingError, Scalar, Q};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in evaluation parameters `a_1, a_2, ...` with
/// coefficients in `Q(q)`.
///
/// Exponent vectors are stored with trailing zeros trimmed, so values built
/// with different numbers of parameters compare correctly.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<i32>, RatFunc>,
}

fn trim_key(mut k: Vec<i32>) -> Vec<i32> {
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

fn add_keys(a: &[i32], b: &[i32]) -> Vec<i32> {
    let n = a.len().max(b.len());
    let k = (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect();
    trim_key(k)
}

impl MultiPoly {
    pub fn constant(c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { terms }
    }

    /// The parameter `a_i` (0-based index) raised to `e`.
    pub fn var(i: usize, e: i32) -> Self {
        let mut k = vec![0; i + 1];
        k[i] = e;
        Self::monomial(k, RatFunc::one())
    }

    pub fn monomial(key: Vec<i32>, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim_key(key), c);
        }
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn map_coeffs<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(k.clone(), v);
            }
        }
        MultiPoly { terms }
    }

    pub fn bar(&self) -> Self {
        self.map_coeffs(|c| c.bar())
    }

    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Substitute values for the parameters in any ring that contains `Q(q)`
    /// by way of `embed`.
    pub fn substitute<S: Ring>(
        &self,
        vals: &[S],
        inv_vals: &[S],
        embed: impl Fn(&RatFunc) -> Result<S, RingError>,
    ) -> Result<S, RingError> {
        let mut acc = S::zero();
        for (k, c) in &self.terms {
            let mut t = embed(c)?;
            for (i, &e) in k.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&vals[i].pow(e as u32));
                } else if e < 0 {
                    t = t.mul(&inv_vals[i].pow((-e) as u32));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Evaluate the parameters at rationals, leaving `q` generic.
    pub fn eval_params(&self, vals: &[Q]) -> RatFunc {
        let inv: Vec<Q> = vals.iter().map(|v| super::Field::inv(v).expect("zero parameter")).collect();
        let vals: Vec<RatFunc> = vals.iter().map(RatFunc::from_q).collect();
        let inv: Vec<RatFunc> = inv.iter().map(RatFunc::from_q).collect();
        self.substitute(&vals, &inv, |c| Ok(c.clone())).unwrap()
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn one() -> Self {
        MultiPoly::constant(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut terms = big.terms.clone();
        for (k, c) in &small.terms {
            match terms.get_mut(k) {
                Some(v) => {
                    *v = v.add(c);
                    if v.is_zero() {
                        terms.remove(k);
                    }
                }
                None => {
                    terms.insert(k.clone(), c.clone());
                }
            }
        }
        MultiPoly { terms }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Vec<i32>, RatFunc> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let k = add_keys(ka, kb);
                let c = ca.mul(cb);
                match terms.get_mut(&k) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        terms.insert(k, c);
                    }
                }
            }
        }
        terms.retain(|_, v| !v.is_zero());
        MultiPoly { terms }
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }
    fn from_q(c: &Q) -> Self {
        MultiPoly::constant(RatFunc::from_q(c))
    }
}

impl Scalar for MultiPoly {
    fn from_qfunc(f: &RatFunc, _l: u32) -> Result<Self, RingError> {
        Ok(MultiPoly::constant(f.clone()))
    }
    fn scale(&self, f: &RatFunc, _l: u32) -> Result<Self, RingError> {
        Ok(self.map_coeffs(|c| c.mul(f)))
    }
    fn div_qfunc(&self, f: &RatFunc, _l: u32) -> Result<Self, RingError> {
        let i = super::Field::inv(f).ok_or(RingError::DivisionByZero)?;
        Ok(self.map_coeffs(|c| c.mul(&i)))
    }
    fn has_pole_at(&self, l: u32) -> bool {
        self.terms.values().any(|c| c.has_pole_at(l))
    }
}

impl From<RatFunc> for MultiPoly {
    fn from(c: RatFunc) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Laurent> for MultiPoly {
    fn from(c: Laurent) -> Self {
        MultiPoly::constant(RatFunc::from_laurent(c))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, e) in k.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*a{}", i + 1)?,
                    _ => write!(f, "*a{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
