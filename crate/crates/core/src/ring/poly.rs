//! Dense univariate polynomials over `Q`, stored low degree first.
//! These are the workhorse for gcds and for reduction modulo cyclotomics.

use super::{Field, Ring, Q};

pub fn trim(p: &mut Vec<Q>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Q]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out: Vec<Q> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Q::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].inv().unwrap();
    let mut quot = vec![Q::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[shift + j] -= &c * y;
            }
        }
        quot[shift] = c;
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

pub fn monic(mut p: Vec<Q>) -> Vec<Q> {
    trim(&mut p);
    if let Some(l) = p.last().cloned() {
        if !l.is_one() {
            let li = l.inv().unwrap();
            for c in p.iter_mut() {
                *c = &*c * &li;
            }
        }
    }
    p
}

pub fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = monic(a.to_vec());
    let mut y = monic(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = monic(r);
    }
    monic(x)
}

/// Inverse of `a` modulo `m`, if they are coprime.
pub fn inv_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    // extended Euclid tracking only the coefficient of `a`
    let (mut r0, mut r1) = (m.to_vec(), {
        let (_, r) = divrem(a, m);
        r
    });
    let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (qt, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&qt, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].inv()?;
    let mut out: Vec<Q> = s0.into_iter().map(|x| x * &c).collect();
    trim(&mut out);
    Some(divrem(&out, m).1)
}

pub fn eval<R: Ring>(p: &[Q], x: &R) -> R {
    let mut acc = R::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(&R::from_q(c));
    }
    acc
}
