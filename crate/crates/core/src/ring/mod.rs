//! Coefficient rings: Laurent polynomials in `q`, rational functions `Q(q)`,
//! multivariate Laurent polynomials in evaluation parameters, and the
//! cyclotomic field `Q(eps)`.

mod cyclo;
mod laurent;
mod multi;
pub mod parse;
pub mod poly;
mod qnum;
mod ratfunc;
mod series;

pub use cyclo::{cyclotomic_poly, euler_phi, Cyclo};
pub use laurent::Laurent;
pub use multi::MultiPoly;
pub use qnum::{kbinom_at_weight, qbinom, qfact, qint};
pub use ratfunc::RatFunc;
pub use series::Series;

use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

pub type Q = BigRational;

pub fn rat(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("pole at the primitive {l}-th root of unity: {what}")]
    PoleAtRoot { l: u32, what: String },
    #[error("order {0} rejected: the root of unity must have odd order l >= 3")]
    BadOrder(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division")]
    Inexact,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Commutative ring with unit. Method names shadow nothing in the prelude.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_q(&rat(n))
    }
    fn from_q(c: &Q) -> Self;
    fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }
}

/// Rings that are algebras over `Q(q)`, possibly via specialization `q -> eps`.
/// `l == 0` means generic `q`.
pub trait Scalar: Ring {
    fn from_qfunc(f: &RatFunc, l: u32) -> Result<Self, RingError>;

    fn scale(&self, f: &RatFunc, l: u32) -> Result<Self, RingError> {
        Ok(self.mul(&Self::from_qfunc(f, l)?))
    }

    fn div_qfunc(&self, f: &RatFunc, l: u32) -> Result<Self, RingError>;

    /// True when some coefficient has a pole at a primitive `l`-th root.
    /// Rings without a notion of poles report `false`.
    fn has_pole_at(&self, _l: u32) -> bool {
        false
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Ring for Q {
    fn zero() -> Self {
        rat(0)
    }
    fn one() -> Self {
        rat(1)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(c: &Q) -> Self {
        c.clone()
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self.clone()))
        }
    }
}

/// Checks the standing hypothesis on the order of the root of unity.
pub fn check_order(l: i64) -> Result<u32, RingError> {
    if l >= 3 && l % 2 == 1 {
        Ok(l as u32)
    } else {
        Err(RingError::BadOrder(l))
    }
}
