use super::Ring;

/// Power series in `u` truncated at an explicit order: coefficients of
/// `u^0 .. u^{order-1}` are exact, everything above is unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R: Ring> {
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.truncate(order);
        coeffs.resize(order, R::zero());
        Series { order, coeffs }
    }

    pub fn constant(order: usize, c: R) -> Self {
        Self::new(order, vec![c])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &R {
        assert!(n < self.order, "coefficient u^{} beyond truncation order {}", n, self.order);
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        Series::new(order, (0..order).map(|i| self.coeffs[i].add(&o.coeffs[i])).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&R::one().neg()))
    }

    pub fn scale(&self, c: &R) -> Self {
        Series::new(self.order, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = vec![R::zero(); order];
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        Series::new(order, out)
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![R::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Series::new(self.order, c)
    }

    /// `1 / (1 - a u)` expanded to the given order.
    pub fn geometric(order: usize, a: &R) -> Self {
        let mut c = Vec::with_capacity(order);
        let mut p = R::one();
        for _ in 0..order {
            c.push(p.clone());
            p = p.mul(a);
        }
        Series::new(order, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}
