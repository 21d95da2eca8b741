//! Epsilon-segments and the classification data of irreducibles at `eps`.
//!
//! A polynomial `P` with `P(0) = 1` is kept as a multiset of inverse roots in
//! `Q(eps)` together with a multiset of "orbit" factors `1 - c u^l` (whose
//! roots need not lie in `Q(eps)`). Splitting off full orbits gives
//! `P = P^0 P^1`; `P^0` decomposes into segments in general position and
//! `P^1 = prod (1 - c u^l)^n` gives the Frobenius part.

use crate::drinfeld::{format_upoly, poly_mul};
use crate::modules::Factor;
use crate::ring::{parse::parse_cyclo, parse::parse_upoly, Cyclo, Field, Ring, RingError, Q};
use num_traits::Signed;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SegmentError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("full eps-orbit through {0} in a polynomial assumed orbit-free")]
    OrbitDetected(String),
    #[error("bad segment: {0}")]
    BadSegment(String),
    #[error("cannot factor {0} over Q(eps) with the candidate roots")]
    Unfactored(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `S_m(a) = {a eps^{m-1}, a eps^{m-3}, ..., a eps^{1-m}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub m: u32,
    pub a: Cyclo,
    pub l: u32,
}

impl Segment {
    pub fn new(m: u32, a: Cyclo, l: u32) -> Result<Self, SegmentError> {
        if m == 0 || m >= l {
            return Err(SegmentError::BadSegment(format!("length {} outside 1..{}", m, l)));
        }
        if a.is_zero() {
            return Err(SegmentError::BadSegment("zero center".into()));
        }
        Ok(Segment { m, a, l })
    }

    pub fn roots(&self) -> Vec<Cyclo> {
        (0..self.m as i64).map(|i| self.a.mul(&Cyclo::eps(self.m as i64 - 1 - 2 * i, self.l))).collect()
    }

    /// Exponents of the roots relative to `base`, if every root is `base eps^j`.
    fn exponents(&self, base: &Cyclo) -> Option<BTreeSet<u32>> {
        let k = self.a.div(base)?.as_root_power(self.l)? as i64;
        Some((0..self.m as i64).map(|i| (k + self.m as i64 - 1 - 2 * i).rem_euclid(self.l as i64) as u32).collect())
    }

    fn sort_key(&self) -> (u32, Cyclo) {
        (self.m, self.a.clone())
    }
}

/// The segment with root exponent set `set` relative to `base`, if there is one.
fn segment_from_exponents(set: &BTreeSet<u32>, base: &Cyclo, l: u32) -> Option<Segment> {
    let m = set.len() as i64;
    if m == 0 || m >= l as i64 {
        return None;
    }
    (0..l as i64).find_map(|j| {
        let s: BTreeSet<u32> = (0..m).map(|i| (j + m - 1 - 2 * i).rem_euclid(l as i64) as u32).collect();
        (s == *set).then(|| Segment { m: m as u32, a: base.mul(&Cyclo::eps(j, l)), l })
    })
}

/// Condition (41): `a_s / a_t != eps^{+-(m_s + m_t - 2p)}` for `0 <= p < min(m_s, m_t)`.
pub fn general_position(s: &Segment, t: &Segment) -> bool {
    assert_eq!(s.l, t.l, "segments at different orders");
    let l = s.l;
    let ratio = match s.a.div(&t.a) {
        Some(r) => r,
        None => return true,
    };
    let e = match ratio.as_root_power(l) {
        Some(e) => e as i64,
        None => return true,
    };
    (0..s.m.min(t.m) as i64).all(|p| {
        let d = s.m as i64 + t.m as i64 - 2 * p;
        (e - d).rem_euclid(l as i64) != 0 && (e + d).rem_euclid(l as i64) != 0
    })
}

/// Union and intersection of two segments in special position.
fn merge(s: &Segment, t: &Segment) -> Result<(Segment, Option<Segment>), SegmentError> {
    let l = s.l;
    let (es, et) = match (s.exponents(&s.a), t.exponents(&s.a)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(SegmentError::BadSegment(format!("S_{}({}) and S_{}({}) are not comparable", s.m, s.a, t.m, t.a))),
    };
    let union: BTreeSet<u32> = es.union(&et).copied().collect();
    if union.len() >= l as usize {
        return Err(SegmentError::OrbitDetected(s.a.to_string()));
    }
    let u = segment_from_exponents(&union, &s.a, l)
        .ok_or_else(|| SegmentError::BadSegment(format!("union of S_{}({}) and S_{}({}) is not a segment", s.m, s.a, t.m, t.a)))?;
    let inter: BTreeSet<u32> = es.intersection(&et).copied().collect();
    let i = if inter.is_empty() {
        None
    } else {
        Some(segment_from_exponents(&inter, &s.a, l).ok_or_else(|| SegmentError::BadSegment("intersection is not a segment".into()))?)
    };
    Ok((u, i))
}

/// Polynomial over `Q(eps)` with constant term 1, as
/// `prod (1 - r u)^{m_r} * prod (1 - c u^l)^{n_c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyOverEps {
    l: u32,
    roots: Vec<(Cyclo, u32)>,
    orbits: Vec<(Cyclo, u32)>,
}

fn normalize(mut v: Vec<(Cyclo, u32)>) -> Vec<(Cyclo, u32)> {
    v.retain(|(_, m)| *m > 0);
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Cyclo, u32)> = Vec::new();
    for (c, m) in v {
        match out.last_mut() {
            Some((d, n)) if *d == c => *n += m,
            _ => out.push((c, m)),
        }
    }
    out
}

impl PolyOverEps {
    pub fn new(l: u32, roots: Vec<(Cyclo, u32)>, orbits: Vec<(Cyclo, u32)>) -> Result<Self, SegmentError> {
        crate::ring::check_order(l as i64)?;
        if roots.iter().chain(&orbits).any(|(c, _)| c.is_zero()) {
            return Err(SegmentError::Parse("zero inverse root".into()));
        }
        Ok(PolyOverEps { l, roots: normalize(roots), orbits: normalize(orbits) })
    }

    pub fn one(l: u32) -> Self {
        PolyOverEps { l, roots: Vec::new(), orbits: Vec::new() }
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    /// Inverse roots `r` with multiplicities.
    pub fn roots(&self) -> &[(Cyclo, u32)] {
        &self.roots
    }

    /// Values `c` of the factors `1 - c u^l`, with multiplicities.
    pub fn orbits(&self) -> &[(Cyclo, u32)] {
        &self.orbits
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.l, o.l);
        PolyOverEps {
            l: self.l,
            roots: normalize(self.roots.iter().chain(&o.roots).cloned().collect()),
            orbits: normalize(self.orbits.iter().chain(&o.orbits).cloned().collect()),
        }
    }

    pub fn degree(&self) -> usize {
        let r: u32 = self.roots.iter().map(|(_, m)| m).sum();
        let o: u32 = self.orbits.iter().map(|(_, m)| m).sum();
        (r + o * self.l) as usize
    }

    pub fn coeffs(&self) -> Vec<Cyclo> {
        let mut acc = vec![Cyclo::one()];
        for (r, m) in &self.roots {
            for _ in 0..*m {
                acc = poly_mul(&acc, &[Cyclo::one(), r.neg()]);
            }
        }
        for (c, m) in &self.orbits {
            let mut f = vec![Cyclo::zero(); self.l as usize + 1];
            f[0] = Cyclo::one();
            f[self.l as usize] = c.neg();
            for _ in 0..*m {
                acc = poly_mul(&acc, &f);
            }
        }
        acc
    }

    pub fn text(&self) -> String {
        format_upoly(&self.coeffs())
    }

    /// Factored text such as `(1 - 2*u)^2(1 - 3*u^3)`.
    pub fn factored_text(&self) -> String {
        if self.roots.is_empty() && self.orbits.is_empty() {
            return "1".into();
        }
        let pw = |m: u32| if m == 1 { String::new() } else { format!("^{}", m) };
        let mut s = String::new();
        for (r, m) in &self.roots {
            s += &format!("({}){}", format_upoly(&[Cyclo::one(), r.neg()]), pw(*m));
        }
        for (c, m) in &self.orbits {
            let mut f = vec![Cyclo::zero(); self.l as usize + 1];
            f[0] = Cyclo::one();
            f[self.l as usize] = c.neg();
            s += &format!("({}){}", format_upoly(&f), pw(*m));
        }
        s
    }
}

fn div_linear(p: &[Cyclo], r: &Cyclo) -> Option<Vec<Cyclo>> {
    // p = (1 - r u) q  <=>  q_i = p_i + r q_{i-1}
    if p.len() < 2 {
        return None;
    }
    let mut q = Vec::with_capacity(p.len() - 1);
    let mut prev = Cyclo::zero();
    for c in &p[..p.len() - 1] {
        prev = c.add(&r.mul(&prev));
        q.push(prev.clone());
    }
    let rem = p[p.len() - 1].add(&r.mul(&prev));
    rem.is_zero().then_some(q)
}

fn rational_root(x: &Q, n: u32) -> Option<Q> {
    let (a, b) = (x.numer().abs(), x.denom().clone());
    let (ra, rb) = (a.nth_root(n), b.nth_root(n));
    (num_traits::Pow::pow(&ra, n) == a && num_traits::Pow::pow(&rb, n) == b).then(|| Q::new(ra, rb))
}

/// Candidate inverse roots `+-g eps^j`.
fn candidates(gens: &[Cyclo], l: u32) -> Vec<Cyclo> {
    let mut out = Vec::new();
    for g in gens {
        for s in [Cyclo::one(), Cyclo::one().neg()] {
            for j in 0..l as i64 {
                let c = g.mul(&s).mul(&Cyclo::eps(j, l));
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Roots of a polynomial with constant term 1 by trial division; returns the
/// roots found and the unfactored remainder.
fn peel(mut p: Vec<Cyclo>, gens: &[Cyclo], l: u32) -> (Vec<(Cyclo, u32)>, Vec<Cyclo>) {
    let mut gens = gens.to_vec();
    let d = p.len() - 1;
    if d > 0 {
        if let Some(lead) = p[d].as_rational() {
            if let Some(g) = rational_root(&lead, d as u32) {
                gens.push(Cyclo::constant(g));
            }
        }
    }
    let mut found = Vec::new();
    for c in candidates(&gens, l) {
        while let Some(q) = div_linear(&p, &c) {
            found.push((c.clone(), 1));
            p = q;
        }
        if p.len() <= 2 {
            break;
        }
    }
    if p.len() == 2 {
        found.push((p[1].neg(), 1));
        p.pop();
    }
    (found, p)
}

/// Factor one polynomial with `P(0) != 0` using candidate generators `gens`
/// (the rationals `1` and the `deg`-th root of the leading coefficient are
/// always tried).
pub fn factor_coeffs(p: &[Cyclo], l: u32, gens: &[Cyclo]) -> Result<PolyOverEps, SegmentError> {
    let mut p = p.to_vec();
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    let c0 = p.first().cloned().unwrap_or_else(Cyclo::zero);
    let inv = c0.inv().ok_or_else(|| SegmentError::Parse("P(0) = 0".into()))?;
    let p: Vec<Cyclo> = p.iter().map(|c| c.mul(&inv)).collect();
    let mut gens = gens.to_vec();
    gens.insert(0, Cyclo::one());
    let (roots, rest) = peel(p, &gens, l);
    let mut orbits = Vec::new();
    if rest.len() > 1 {
        // what is left must be R(u^l)
        let ll = l as usize;
        if (rest.len() - 1) % ll != 0 || rest.iter().enumerate().any(|(i, c)| i % ll != 0 && !c.is_zero()) {
            return Err(SegmentError::Unfactored(format_upoly(&rest)));
        }
        let r: Vec<Cyclo> = rest.iter().step_by(ll).cloned().collect();
        let mut rg = gens.clone();
        rg.extend(gens.iter().map(|g| g.pow(l)));
        let (cs, left) = peel(r, &rg, l);
        if left.len() > 1 {
            return Err(SegmentError::Unfactored(format_upoly(&rest)));
        }
        orbits = cs;
    }
    PolyOverEps::new(l, roots, orbits)
}

/// Split text at top level into `(factor, exponent)` pieces; `None` if the
/// text is not a product of parenthesized groups.
fn split_factors(s: &str) -> Option<Vec<(String, u32)>> {
    let b: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i] != '(' {
            return None;
        }
        let mut depth = 0;
        let start = i;
        loop {
            match b.get(i)? {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            i += 1;
            if depth == 0 {
                break;
            }
        }
        let inner: String = b[start + 1..i - 1].iter().collect();
        let mut e = 1;
        if b.get(i) == Some(&'^') {
            let j = i + 1;
            let mut k = j;
            while k < b.len() && b[k].is_ascii_digit() {
                k += 1;
            }
            e = b[j..k].iter().collect::<String>().parse().ok()?;
            i = k;
        }
        if b.get(i) == Some(&'*') {
            i += 1;
        }
        out.push((inner, e));
    }
    (!out.is_empty()).then_some(out)
}

/// Parse `(1-2u)(1-u^3)`, a single polynomial, or `{"roots":[{"val":"2","mult":1}]}`.
pub fn parse_poly(s: &str, l: u32, gens: &[Cyclo]) -> Result<PolyOverEps, SegmentError> {
    crate::ring::check_order(l as i64)?;
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| SegmentError::Parse(e.to_string()))?;
        let list = v.get("roots").and_then(|r| r.as_array()).ok_or_else(|| SegmentError::Parse("missing \"roots\" array".into()))?;
        let mut roots = Vec::new();
        for r in list {
            let val = r.get("val").and_then(|x| x.as_str()).ok_or_else(|| SegmentError::Parse("root without \"val\"".into()))?;
            let mult = r.get("mult").map_or(Some(1), |m| m.as_u64()).ok_or_else(|| SegmentError::Parse("bad \"mult\"".into()))?;
            roots.push((parse_cyclo(val, l)?, mult as u32));
        }
        return PolyOverEps::new(l, roots, Vec::new());
    }
    let pieces = split_factors(t).unwrap_or_else(|| vec![(t.to_string(), 1)]);
    let mut acc = PolyOverEps::one(l);
    for (f, e) in pieces {
        let p = factor_coeffs(&parse_upoly(&f, l)?, l, gens)?;
        for _ in 0..e {
            acc = acc.mul(&p);
        }
    }
    Ok(acc)
}

/// `P = P^0 P^1` with `P^0` free of factors `1 - a u^l` and `P^1 = R(u^l)`.
pub fn factor_p0_p1(p: &PolyOverEps) -> (PolyOverEps, PolyOverEps) {
    let l = p.l;
    let mut roots = p.roots.clone();
    let mut orbits = p.orbits.clone();
    // group roots by l-th power; a group holding all l members is an orbit
    let mut keys: Vec<Cyclo> = Vec::new();
    for (r, _) in &roots {
        let k = r.pow(l);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    for k in keys {
        let members: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].0.pow(l) == k).collect();
        if members.len() < l as usize {
            continue;
        }
        let n = members.iter().map(|&i| roots[i].1).min().unwrap_or(0);
        for &i in &members {
            roots[i].1 -= n;
        }
        orbits.push((k, n));
    }
    (
        PolyOverEps { l, roots: normalize(roots), orbits: Vec::new() },
        PolyOverEps { l, roots: Vec::new(), orbits: normalize(orbits) },
    )
}

/// Write the roots of an orbit-free polynomial as segments pairwise in
/// general position, by repeatedly replacing a special pair with its union
/// and intersection.
pub fn decompose_into_segments(p: &PolyOverEps) -> Result<Vec<Segment>, SegmentError> {
    let l = p.l;
    if !p.orbits.is_empty() {
        return Err(SegmentError::OrbitDetected(p.orbits[0].0.to_string()));
    }
    let (_, p1) = factor_p0_p1(p);
    if let Some((c, _)) = p1.orbits.first() {
        return Err(SegmentError::OrbitDetected(c.to_string()));
    }
    let mut segs = Vec::new();
    for (r, m) in &p.roots {
        for _ in 0..*m {
            segs.push(Segment::new(1, r.clone(), l)?);
        }
    }
    loop {
        segs.sort_by(|a, b| (a.a.clone(), a.m).cmp(&(b.a.clone(), b.m)));
        let pair = (0..segs.len()).flat_map(|i| (i + 1..segs.len()).map(move |j| (i, j))).find(|&(i, j)| !general_position(&segs[i], &segs[j]));
        let (i, j) = match pair {
            Some(x) => x,
            None => break,
        };
        let (u, x) = merge(&segs[i], &segs[j])?;
        segs.remove(j);
        segs.remove(i);
        segs.push(u);
        segs.extend(x);
    }
    segs.sort_by_key(|s| s.sort_key());
    Ok(segs)
}

/// Canonical classification data: segments `(m, a)` and Frobenius entries
/// `(n, b^l)`, both sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReprParams {
    pub l: u32,
    pub segments: Vec<(u32, Cyclo)>,
    pub frobenius: Vec<(u32, Cyclo)>,
}

impl ReprParams {
    pub fn new(l: u32, mut segments: Vec<(u32, Cyclo)>, frobenius: Vec<(u32, Cyclo)>) -> Self {
        segments.sort();
        let mut fr = frobenius;
        fr.sort_by(|a, b| (a.1.clone(), a.0).cmp(&(b.1.clone(), b.0)));
        ReprParams { l, segments, frobenius: fr }
    }

    /// The Drinfeld polynomial with these parameters.
    pub fn polynomial(&self) -> PolyOverEps {
        let mut roots = Vec::new();
        for (m, a) in &self.segments {
            let s = Segment { m: *m, a: a.clone(), l: self.l };
            roots.extend(s.roots().into_iter().map(|r| (r, 1)));
        }
        PolyOverEps { l: self.l, roots: normalize(roots), orbits: normalize(self.frobenius.iter().map(|(n, c)| (c.clone(), *n)).collect()) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "segments": self.segments.iter().map(|(m, a)| json!({"m": m, "a": a.to_string()})).collect::<Vec<_>>(),
            "frobenius": self.frobenius.iter().map(|(n, c)| json!({"n": n, "b_pow_l": c.to_string()})).collect::<Vec<_>>(),
        })
    }
}

pub fn canonical_params(p: &PolyOverEps) -> Result<ReprParams, SegmentError> {
    let (p0, p1) = factor_p0_p1(p);
    let segs = decompose_into_segments(&p0)?;
    Ok(ReprParams::new(p.l, segs.into_iter().map(|s| (s.m, s.a)).collect(), p1.orbits.iter().map(|(c, n)| (*n, c.clone())).collect()))
}

pub fn isomorphic(a: &ReprParams, b: &ReprParams) -> bool {
    assert_eq!(a.l, b.l, "parameters at different orders");
    ReprParams::new(a.l, a.segments.clone(), a.frobenius.clone()) == ReprParams::new(b.l, b.segments.clone(), b.frobenius.clone())
}

/// Criterion for `(x)_t V(m_t)_{a_t} (x) (x)_u Fr^*(V(n_u)_{b_u})` to be
/// irreducible: segments pairwise in general position and the `b_u^l`
/// pairwise distinct. `frobenius` carries `b_u` itself.
pub fn predict_irreducible(segments: &[(u32, Cyclo)], frobenius: &[(u32, Cyclo)], l: u32) -> Result<bool, SegmentError> {
    let pows: Vec<Cyclo> = frobenius.iter().map(|(_, b)| b.pow(l)).collect();
    predict_with_powers(segments, &pows, l)
}

fn predict_with_powers(segments: &[(u32, Cyclo)], pows: &[Cyclo], l: u32) -> Result<bool, SegmentError> {
    let segs = segments.iter().map(|(m, a)| Segment::new(*m, a.clone(), l)).collect::<Result<Vec<_>, _>>()?;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if !general_position(&segs[i], &segs[j]) {
                return Ok(false);
            }
        }
    }
    for i in 0..pows.len() {
        for j in i + 1..pows.len() {
            if pows[i] == pows[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`predict_irreducible`] for a tensor of module factors. `Frob { b }`
/// already carries the `l`-th power; a Weyl head `{ b }` stands for `Fr^*`
/// at `b^l`; trivial factors are ignored.
pub fn predict_factors(factors: &[Factor], l: u32) -> Result<bool, SegmentError> {
    let mut segs = Vec::new();
    let mut pows = Vec::new();
    for f in factors {
        match f {
            Factor::Ev { m: 0, .. } | Factor::Frob { n: 0, .. } | Factor::WeylHead { n: 0, .. } => {}
            Factor::Ev { m, a } => segs.push((*m, a.clone())),
            Factor::Frob { b, .. } => pows.push(b.clone()),
            Factor::WeylHead { b, .. } => pows.push(b.pow(l)),
        }
    }
    predict_with_powers(&segs, &pows, l)
}

/// Tensor factors realizing `V(P)`: `V(m_t)_{a_t}` per segment, then
/// `Fr^*(V(n_u))` at `b_u^l` per Frobenius entry.
pub fn construction_plan(p: &PolyOverEps) -> Result<Vec<Factor>, SegmentError> {
    let params = canonical_params(p)?;
    Ok(plan_from_params(&params))
}

pub fn plan_from_params(params: &ReprParams) -> Vec<Factor> {
    let mut out: Vec<Factor> = params.segments.iter().map(|(m, a)| Factor::Ev { m: *m, a: a.clone() }).collect();
    out.extend(params.frobenius.iter().map(|(n, c)| Factor::Frob { n: *n, b: c.clone() }));
    if out.is_empty() {
        out.push(Factor::Ev { m: 0, a: Cyclo::one() });
    }
    out
}

pub fn factor_json(f: &Factor) -> Value {
    match f {
        Factor::Ev { m, a } => json!({"kind": "ev", "m": m, "a": a.to_string()}),
        Factor::Frob { n, b } => json!({"kind": "frob", "n": n, "b": b.to_string()}),
        Factor::WeylHead { n, b } => json!({"kind": "weyl_head", "n": n, "b": b.to_string()}),
    }
}
