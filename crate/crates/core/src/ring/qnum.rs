use super::{rat, Laurent, RatFunc, Ring, RingError};

/// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`, with `[-n]_q = -[n]_q`.
pub fn qint(n: i64) -> Laurent {
    let m = n.unsigned_abs() as i32;
    let terms: Vec<(i32, _)> = (0..m).map(|i| (m - 1 - 2 * i, rat(1))).collect();
    let v = Laurent::from_terms(terms);
    if n < 0 {
        v.neg()
    } else {
        v
    }
}

pub fn qfact(n: i64) -> Result<Laurent, RingError> {
    if n < 0 {
        return Err(RingError::Unsupported(format!("q-factorial of {}", n)));
    }
    Ok((1..=n).fold(Laurent::one(), |acc, k| acc.mul(&qint(k))))
}

/// Gaussian binomial `[n r]_q`, built row by row from
/// `[n r] = q^{-r} [n-1 r] + q^{n-r} [n-1 r-1]`.
pub fn qbinom(n: i64, r: i64) -> Result<Laurent, RingError> {
    if r < 0 || r > n {
        return Err(RingError::Unsupported(format!("q-binomial [{} {}]", n, r)));
    }
    let r = r.min(n - r) as usize;
    let mut row = vec![Laurent::one(); r + 1];
    for m in 1..=n {
        for j in (1..=r.min(m as usize)).rev() {
            if j as i64 == m {
                continue;
            }
            row[j] = row[j].shift(-(j as i32)).add(&row[j - 1].shift((m - j as i64) as i32));
        }
    }
    Ok(row[r].clone())
}

/// Scalar by which `[k; n over r]` acts on a vector of weight `mu`, i.e.
/// `prod_{s=1}^r (q^{mu+n-s+1} - q^{-mu-n+s-1}) / (q^s - q^{-s})`.
/// For `mu >= 0` this is the Gaussian binomial; in general it is Laurent.
pub fn kbinom_at_weight(mu: i64, n: i64, r: i64) -> RatFunc {
    let n = mu + n;
    let mut acc = RatFunc::one();
    for s in 1..=r {
        let e = (n - s + 1) as i32;
        let num = Laurent::q(e).sub(&Laurent::q(-e));
        let den = Laurent::q(s as i32).sub(&Laurent::q(-(s as i32)));
        acc = acc.mul(&RatFunc::new(num, den).expect("nonzero denominator"));
    }
    acc
}
