//! Text grammar for scalars: signed sums of products of rationals and
//! variables with integer exponents, e.g. `1 - 3/2*q^-2 + q^4` or
//! `(1-2u)(1-eps*u^3)`. Juxtaposition means multiplication.

use super::{rat, Cyclo, Laurent, Ring, RingError, Q};
use num_bigint::BigInt;
use std::collections::BTreeMap;

type Terms = BTreeMap<Vec<i32>, Q>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

fn err<T>(msg: impl Into<String>) -> Result<T, RingError> {
    Err(RingError::Parse(msg.into()))
}

fn t_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Vec<i32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            *out.entry(k).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn t_add(a: &mut Terms, b: &Terms, sign: bool) {
    for (k, c) in b {
        let e = a.entry(k.clone()).or_insert_with(Q::zero);
        if sign {
            *e += c;
        } else {
            *e -= c;
        }
    }
    a.retain(|_, v| !v.is_zero());
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn unit(&self) -> Terms {
        let mut t = Terms::new();
        t.insert(vec![0; self.vars.len()], rat(1));
        t
    }

    fn expr(&mut self) -> Result<Terms, RingError> {
        let mut acc = Terms::new();
        let mut sign = true;
        match self.peek() {
            Some(b'-') => {
                sign = false;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            t_add(&mut acc, &t, sign);
            match self.peek() {
                Some(b'+') => {
                    sign = true;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = false;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms, RingError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = t_mul(&acc, &f);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    let f = self.factor()?;
                    acc = t_mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn int(&mut self) -> Result<i64, RingError> {
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(format!("expected integer at {}", start));
        }
        let v: i64 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| RingError::Parse("integer overflow".into()))?;
        Ok(if neg { -v } else { v })
    }

    fn natural(&mut self) -> Result<BigInt, RingError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| RingError::Parse(format!("bad number at {}", start)))
    }

    fn factor(&mut self) -> Result<Terms, RingError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(format!("expected ')' at {}", self.pos));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let mut v = Q::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.peek();
                    let d = self.natural()?;
                    if num_traits::Zero::is_zero(&d) {
                        return err("zero denominator");
                    }
                    v /= Q::from_integer(d);
                }
                let mut t = Terms::new();
                if !v.is_zero() {
                    t.insert(vec![0; self.vars.len()], v);
                }
                return Ok(t);
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let idx = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => return err(format!("unknown symbol '{}'", name)),
                };
                let mut k = vec![0; self.vars.len()];
                k[idx] = 1;
                let mut t = Terms::new();
                t.insert(k, rat(1));
                t
            }
            other => return err(format!("unexpected {:?} at {}", other.map(|c| c as char), self.pos)),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.int()?;
            if base.len() == 1 {
                let (k, c) = base.iter().next().unwrap();
                if c.is_one() {
                    let k2: Vec<i32> = k.iter().map(|x| x * e as i32).collect();
                    let mut t = Terms::new();
                    t.insert(k2, rat(1));
                    return Ok(t);
                }
            }
            if e < 0 {
                return err("negative power of a non-monomial");
            }
            let mut acc = self.unit();
            for _ in 0..e {
                acc = t_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

fn parse_terms(s: &str, vars: &[&str]) -> Result<Terms, RingError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, vars };
    if p.peek().is_none() {
        return err("empty expression");
    }
    let t = p.expr()?;
    if p.peek().is_some() {
        return err(format!("trailing input at {}", p.pos));
    }
    Ok(t)
}

pub fn parse_rational(s: &str) -> Result<Q, RingError> {
    let t = parse_terms(s, &[])?;
    Ok(t.get(&Vec::new()).cloned().unwrap_or_else(Q::zero))
}

pub fn parse_laurent(s: &str) -> Result<Laurent, RingError> {
    let t = parse_terms(s, &["q"])?;
    Ok(Laurent::from_terms(t.into_iter().map(|(k, c)| (k[0], c)).collect::<Vec<_>>()))
}

/// A scalar in `Q(eps)`; with `l == 0` only rationals are accepted.
pub fn parse_cyclo(s: &str, l: u32) -> Result<Cyclo, RingError> {
    let t = parse_terms(s, &["eps"])?;
    let mut acc = Cyclo::zero();
    for (k, c) in t {
        if k[0] != 0 && l == 0 {
            return err("'eps' needs a root-of-unity order");
        }
        let m = if k[0] == 0 { Cyclo::one() } else { Cyclo::eps(k[0] as i64, l) };
        acc = acc.add(&m.mul(&Cyclo::constant(c)));
    }
    Ok(acc)
}

/// A polynomial in `u` over `Q(eps)`, coefficients listed from `u^0`.
pub fn parse_upoly(s: &str, l: u32) -> Result<Vec<Cyclo>, RingError> {
    let t = parse_terms(s, &["u", "eps"])?;
    let mut out: Vec<Cyclo> = Vec::new();
    for (k, c) in t {
        if k[0] < 0 {
            return err("negative power of u");
        }
        if k[1] != 0 && l == 0 {
            return err("'eps' needs a root-of-unity order");
        }
        let d = k[0] as usize;
        if out.len() <= d {
            out.resize(d + 1, Cyclo::zero());
        }
        let m = if k[1] == 0 { Cyclo::one() } else { Cyclo::eps(k[1] as i64, l) };
        out[d] = out[d].add(&m.mul(&Cyclo::constant(c)));
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}
