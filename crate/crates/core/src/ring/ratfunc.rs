use super::cyclo::{cyclotomic_poly, Cyclo};
use super::poly;
use super::{rat, Field, Laurent, Ring, RingError, Scalar, Q};
use std::fmt;

/// Element of `Q(q)`, kept reduced: `num / den` with `den` a monic
/// polynomial with nonzero constant term, coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFunc {
    num: Laurent,
    den: Laurent,
}

impl RatFunc {
    pub fn new(num: Laurent, den: Laurent) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_monomial() {
            let (lo, c) = den.dense();
            let inv = c[0].inv().unwrap();
            return RatFunc { num: num.shift(-lo).scale(&inv), den: Laurent::one() };
        }
        if let Some(qt) = num.div_exact(&den) {
            return RatFunc { num: qt, den: Laurent::one() };
        }
        // strip monomial parts, then cancel the polynomial gcd
        let (nlo, nc) = num.dense();
        let (dlo, dc) = den.dense();
        let g = poly::gcd(nc, dc);
        let (nq, _) = poly::divrem(nc, &g);
        let (dq, _) = poly::divrem(dc, &g);
        let lead = dq.last().unwrap().inv().unwrap();
        let dq: Vec<Q> = dq.into_iter().map(|x| x * &lead).collect();
        let nq: Vec<Q> = nq.into_iter().map(|x| x * &lead).collect();
        RatFunc { num: Laurent::from_dense(nlo - dlo, nq), den: Laurent::from_dense(0, dq) }
    }

    pub fn from_laurent(l: Laurent) -> Self {
        RatFunc { num: l, den: Laurent::one() }
    }

    pub fn q(e: i32) -> Self {
        Self::from_laurent(Laurent::q(e))
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        if self.is_laurent() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn bar(&self) -> Self {
        Self::reduce(self.num.bar(), self.den.bar())
    }

    /// True when the denominator vanishes at a primitive `l`-th root.
    pub fn has_pole_at(&self, l: u32) -> bool {
        if self.is_laurent() {
            return false;
        }
        let phi = cyclotomic_poly(l);
        let (_, d) = self.den.dense();
        poly::divrem(d, &phi).1.is_empty()
    }

    /// Evaluate at `q = eps`, a primitive `l`-th root of unity.
    pub fn specialize(&self, l: u32) -> Result<Cyclo, RingError> {
        let n = Cyclo::from_laurent(&self.num, l);
        if self.is_laurent() {
            return Ok(n);
        }
        let d = Cyclo::from_laurent(&self.den, l);
        match d.inv() {
            Some(di) => Ok(n.mul(&di)),
            None => Err(RingError::PoleAtRoot { l, what: self.to_string() }),
        }
    }

    pub fn eval_q(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval_q(x);
        if Ring::is_zero(&d) {
            None
        } else {
            Some(self.num.eval_q(x) / d)
        }
    }

    /// `q -> q^k`
    pub fn subs_power(&self, k: i32) -> Self {
        Self::reduce(self.num.subs_power(k), self.den.subs_power(k))
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Laurent::zero(), den: Laurent::one() }
    }
    fn one() -> Self {
        RatFunc { num: Laurent::one(), den: Laurent::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.is_laurent() {
                return RatFunc { num: self.num.add(&o.num), den: Laurent::one() };
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::reduce(n, self.den.mul(&o.den))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_laurent() && o.is_laurent() {
            return RatFunc { num: self.num.mul(&o.num), den: Laurent::one() };
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_q(c: &Q) -> Self {
        Self::from_laurent(Laurent::constant(c.clone()))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }
}

impl Scalar for RatFunc {
    fn from_qfunc(f: &RatFunc, _l: u32) -> Result<Self, RingError> {
        Ok(f.clone())
    }
    fn div_qfunc(&self, f: &RatFunc, _l: u32) -> Result<Self, RingError> {
        f.inv().map(|i| self.mul(&i)).ok_or(RingError::DivisionByZero)
    }
    fn has_pole_at(&self, l: u32) -> bool {
        RatFunc::has_pole_at(self, l)
    }
}

impl From<Laurent> for RatFunc {
    fn from(l: Laurent) -> Self {
        RatFunc::from_laurent(l)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_q(&rat(n))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
