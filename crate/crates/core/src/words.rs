//! Formal elements of `U_q(affine sl_2)`: linear combinations of words in
//! Drinfeld-generator symbols over `Q(q)`. There is no normal form; equality
//! of elements goes through their action on modules.

use crate::ring::{qfact, RatFunc, Ring, Q};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    XPlus(i32),
    XMinus(i32),
    /// `k^e`; the central element is never a symbol since `c = 1` on type I modules.
    K(i32),
    H(i32),
    PsiPlus(i32),
    PsiMinus(i32),
    /// `(x_n^+)^{(m)}`
    DivXPlus(i32, u32),
    DivXMinus(i32, u32),
    P(i32),
    /// `[k; n over r]`
    KBinom(i32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("invalid symbol {0}")]
    Invalid(String),
}

impl Sym {
    fn check(self) -> Result<Sym, WordError> {
        match self {
            Sym::H(0) => Err(WordError::Invalid("h[0]".into())),
            Sym::PsiPlus(n) if n < 0 => Err(WordError::Invalid(format!("psi+[{}]", n))),
            Sym::PsiMinus(n) if n > 0 => Err(WordError::Invalid(format!("psi-[{}]", n))),
            s => Ok(s),
        }
    }

    pub fn is_xplus(self) -> bool {
        matches!(self, Sym::XPlus(_) | Sym::DivXPlus(..))
    }

    pub fn is_xminus(self) -> bool {
        matches!(self, Sym::XMinus(_) | Sym::DivXMinus(..))
    }

    /// Homogeneous degree in the `x^+` generators.
    pub fn plus_degree(self) -> u32 {
        match self {
            Sym::XPlus(_) => 1,
            Sym::DivXPlus(_, m) => m,
            _ => 0,
        }
    }

    /// Image under `T^p`, with its sign.
    fn t_image(self, p: i32) -> (bool, Sym) {
        let odd = p.rem_euclid(2) == 1;
        match self {
            Sym::XPlus(n) => (odd, Sym::XPlus(n - p)),
            Sym::XMinus(n) => (odd, Sym::XMinus(n + p)),
            Sym::DivXPlus(n, m) => (odd && m % 2 == 1, Sym::DivXPlus(n - p, m)),
            Sym::DivXMinus(n, m) => (odd && m % 2 == 1, Sym::DivXMinus(n + p, m)),
            s => (false, s),
        }
    }

    fn shift_image(self, p: i32) -> Sym {
        match self {
            Sym::XPlus(n) => Sym::XPlus(n + p),
            Sym::XMinus(n) => Sym::XMinus(n - p),
            Sym::DivXPlus(n, m) => Sym::DivXPlus(n + p, m),
            Sym::DivXMinus(n, m) => Sym::DivXMinus(n - p, m),
            s => s,
        }
    }

    fn omega_image(self) -> Sym {
        match self {
            Sym::XPlus(n) => Sym::XMinus(-n),
            Sym::XMinus(n) => Sym::XPlus(-n),
            Sym::K(e) => Sym::K(-e),
            Sym::H(n) => Sym::H(-n),
            Sym::PsiPlus(n) => Sym::PsiMinus(-n),
            Sym::PsiMinus(n) => Sym::PsiPlus(-n),
            Sym::DivXPlus(n, m) => Sym::DivXMinus(-n, m),
            Sym::DivXMinus(n, m) => Sym::DivXPlus(-n, m),
            Sym::P(n) => Sym::P(-n),
            // each factor of [k;n over r] is invariant under k -> k^{-1}, q -> q^{-1}
            s @ Sym::KBinom(..) => s,
        }
    }

    fn phi_image(self) -> Sym {
        match self {
            Sym::XPlus(n) => Sym::XMinus(n),
            Sym::XMinus(n) => Sym::XPlus(n),
            Sym::DivXPlus(n, m) => Sym::DivXMinus(n, m),
            Sym::DivXMinus(n, m) => Sym::DivXPlus(n, m),
            s => s,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sym::XPlus(n) => write!(f, "x+[{}]", n),
            Sym::XMinus(n) => write!(f, "x-[{}]", n),
            Sym::K(1) => write!(f, "k"),
            Sym::K(e) => write!(f, "k^{}", e),
            Sym::H(n) => write!(f, "h[{}]", n),
            Sym::PsiPlus(n) => write!(f, "psi+[{}]", n),
            Sym::PsiMinus(n) => write!(f, "psi-[{}]", n),
            Sym::DivXPlus(n, m) => write!(f, "x+[{}]^({})", n, m),
            Sym::DivXMinus(n, m) => write!(f, "x-[{}]^({})", n, m),
            Sym::P(n) => write!(f, "P[{}]", n),
            Sym::KBinom(n, r) => write!(f, "[k;{}|{}]", n, r),
        }
    }
}

/// Ordered product of symbols; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Sym>);

impl Word {
    pub fn new(syms: Vec<Sym>) -> Self {
        let mut out: Vec<Sym> = Vec::with_capacity(syms.len());
        for s in syms {
            let s = match s {
                Sym::DivXPlus(n, 1) => Sym::XPlus(n),
                Sym::DivXMinus(n, 1) => Sym::XMinus(n),
                s => s,
            };
            match s {
                Sym::P(0) | Sym::K(0) | Sym::DivXPlus(_, 0) | Sym::DivXMinus(_, 0) | Sym::KBinom(_, 0) => {}
                Sym::K(e) => {
                    if let Some(Sym::K(prev)) = out.last().copied() {
                        out.pop();
                        if prev + e != 0 {
                            out.push(Sym::K(prev + e));
                        }
                    } else {
                        out.push(Sym::K(e));
                    }
                }
                s => out.push(s),
            }
        }
        Word(out)
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word::new(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// Finite linear combination of words with `Q(q)` coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlgElement {
    terms: BTreeMap<Word, RatFunc>,
}

impl AlgElement {
    pub fn word(w: Word, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        AlgElement { terms }
    }

    pub fn sym(s: Sym) -> Self {
        Self::word(Word::new(vec![s]), RatFunc::one())
    }

    pub fn syms(s: &[Sym]) -> Self {
        Self::word(Word::new(s.to_vec()), RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::word(Word::default(), c)
    }

    pub fn xp(n: i32) -> Self {
        Self::sym(Sym::XPlus(n))
    }

    pub fn xm(n: i32) -> Self {
        Self::sym(Sym::XMinus(n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if c.is_zero() {
            return AlgElement::default();
        }
        for (w, x) in &self.terms {
            terms.insert(w.clone(), x.mul(c));
        }
        AlgElement { terms }
    }

    fn push(&mut self, w: Word, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn map_words<F: Fn(&Word) -> (bool, Word)>(&self, f: F, bar: bool) -> Self {
        let mut out = AlgElement::default();
        for (w, c) in &self.terms {
            let (neg, w2) = f(w);
            let c = if bar { c.bar() } else { c.clone() };
            out.push(w2, if neg { c.neg() } else { c });
        }
        out
    }

    /// Apply the automorphism `T^p` symbol by symbol.
    /// Every symbol has an image: `T` shifts `x^\pm` indices with a sign and
    /// fixes `k`, `h`, `psi`, `P` and `[k;n over r]`.
    pub fn apply_t(&self, p: i32) -> Self {
        self.map_words(
            |w| {
                let mut neg = false;
                let syms = w
                    .syms()
                    .iter()
                    .map(|s| {
                        let (n, t) = s.t_image(p);
                        neg ^= n;
                        t
                    })
                    .collect();
                (neg, Word::new(syms))
            },
            false,
        )
    }

    /// Sign-free index shift `x_n^+ -> x_{n+p}^+`, `x_n^- -> x_{n-p}^-`, fixing
    /// the Cartan part. This is the map written `T` in the U^+ identities
    /// (`T D_{n-r}^+` must raise the total index by `r`).
    pub fn apply_shift(&self, p: i32) -> Self {
        self.map_words(|w| (false, Word::new(w.syms().iter().map(|s| s.shift_image(p)).collect())), false)
    }

    /// Anti-automorphism `Omega`: reverse words, map symbols, `q -> q^{-1}`.
    pub fn apply_omega(&self) -> Self {
        self.map_words(|w| (false, Word::new(w.syms().iter().rev().map(|s| s.omega_image()).collect())), true)
    }

    /// Anti-automorphism `Phi`: reverse words, swap `x^+` and `x^-`.
    pub fn apply_phi(&self) -> Self {
        self.map_words(|w| (false, Word::new(w.syms().iter().rev().map(|s| s.phi_image()).collect())), false)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        self.terms.keys().flat_map(|w| w.syms().iter().copied())
    }

    /// `Some(r)` when every word has `x^+`-degree `r` and contains only
    /// `x^+` symbols (ordinary or divided).
    pub fn uplus_degree(&self) -> Option<u32> {
        let mut deg = None;
        for w in self.terms.keys() {
            if !w.syms().iter().all(|s| s.is_xplus()) {
                return None;
            }
            let d: u32 = w.syms().iter().map(|s| s.plus_degree()).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Merge adjacent `x^+` factors with equal index into one divided power,
    /// `(x_n^+)^{(a)} (x_n^+)^{(b)} = [a+b, a]_q (x_n^+)^{(a+b)}`.
    pub fn merge_divided_plus(&self) -> Self {
        let mut out = AlgElement::default();
        for (w, c) in &self.terms {
            let mut syms: Vec<Sym> = Vec::new();
            let mut c = c.clone();
            for &s in w.syms() {
                let cur = match s {
                    Sym::XPlus(n) => Some((n, 1)),
                    Sym::DivXPlus(n, m) => Some((n, m)),
                    _ => None,
                };
                let prev = match syms.last() {
                    Some(&Sym::XPlus(n)) => Some((n, 1)),
                    Some(&Sym::DivXPlus(n, m)) => Some((n, m)),
                    _ => None,
                };
                match (prev, cur) {
                    (Some((n, a)), Some((n2, b))) if n == n2 => {
                        syms.pop();
                        let k = crate::ring::qbinom((a + b) as i64, a as i64).expect("valid binomial");
                        c = c.mul(&RatFunc::from(k));
                        syms.push(Sym::DivXPlus(n, a + b));
                    }
                    _ => syms.push(s),
                }
            }
            out.push(Word::new(syms), c);
        }
        out
    }

    /// Sort every maximal run of Cartan symbols (`k`, `h`, `psi`, `P`,
    /// `[k;n over r]`). These commute on modules where `c` acts as 1.
    pub fn sort_cartan(&self) -> Self {
        let cartan = |s: &Sym| {
            matches!(s, Sym::K(_) | Sym::H(_) | Sym::PsiPlus(_) | Sym::PsiMinus(_) | Sym::P(_) | Sym::KBinom(..))
        };
        self.map_words(
            |w| {
                let mut v = w.syms().to_vec();
                for run in v.split_mut(|s| !cartan(s)) {
                    run.sort();
                }
                (false, Word::new(v))
            },
            false,
        )
    }

    /// Divide by `[m]_q!`.
    pub fn divided_by_qfact(&self, m: i64) -> Self {
        let f = RatFunc::from(qfact(m).expect("nonnegative"));
        self.scale(&crate::ring::Field::inv(&f).unwrap())
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

impl Ring for AlgElement {
    fn zero() -> Self {
        AlgElement::default()
    }
    fn one() -> Self {
        AlgElement::scalar(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.push(w.clone(), c.clone());
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = AlgElement::default();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                out.push(wa.concat(wb), ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&RatFunc::one().neg())
    }
    fn from_q(c: &Q) -> Self {
        AlgElement::scalar(RatFunc::from_q(c))
    }
}

/// Canonical text: terms sorted by word, `(coeff)*word` joined by ` + `.
impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", c, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub fn checked(s: Sym) -> Result<Sym, WordError> {
    s.check()
}
