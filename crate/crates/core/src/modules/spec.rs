//! Modules over the restricted specialization at a primitive `l`-th root of
//! unity `eps`.
//!
//! Everything is computed on a generic `Z[q, q^{-1}]`-lattice and then
//! specialized entry by entry, with a pole check. Evaluation parameters in
//! `Q(eps)` are lifted to Laurent polynomials in `q` (`eps -> q`). A Frobenius
//! factor `Fr^*(V(n)_b)` is realized as the head of `V(l n)_beta` with `beta`
//! a formal parameter; after specialization its entries only involve
//! `beta^l`, which is then replaced by `b`.

use super::drinfeld_mats::Drinfeld;
use super::{divided_power, evaluation_twist_with_inverse, make_vn, tensor, Module, ModuleError, Provenance};
use crate::matrix::Matrix;
use crate::ring::{kbinom_at_weight, Cyclo, Field, MultiPoly, RatFunc, Ring, RingError};
use crate::words::Sym;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

pub type CMat = Matrix<Cyclo>;

/// Operators available on a module at `eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResOp {
    /// A Drinfeld-side symbol: `x_r^\pm`, `(x_r^\pm)^{(m)}`, `k^e`, `[k;n over r]`, ...
    Sym(Sym),
    /// `(e_0^+)^{(m)}` with `e_0^+ = x_1^- k^{-1}`.
    E0Plus(u32),
    /// `(e_0^-)^{(m)}` with `e_0^- = k x_{-1}^+`.
    E0Minus(u32),
}

impl std::fmt::Display for ResOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResOp::Sym(s) => write!(f, "{}", s),
            ResOp::E0Plus(m) => write!(f, "e0+^({})", m),
            ResOp::E0Minus(m) => write!(f, "e0-^({})", m),
        }
    }
}

/// A finite-dimensional module of the restricted algebra at `eps`.
pub trait ResModule: Send + Sync {
    fn order(&self) -> u32;
    fn dim(&self) -> usize;
    /// Integer weight `n = n^0 + l n^1` of each basis vector.
    fn weights(&self) -> Vec<i64>;
    fn op(&self, op: ResOp) -> Result<Arc<CMat>, ModuleError>;
    fn provenance(&self) -> Provenance;

    fn sym(&self, s: Sym) -> Result<Arc<CMat>, ModuleError> {
        self.op(ResOp::Sym(s))
    }
}

/// One tensor factor of a root-of-unity module.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    /// `V(m)_a`; for `m >= l` this is the specialized Weyl module (reducible).
    Ev { m: u32, a: Cyclo },
    /// `Fr^*` of the classical evaluation module `V(n)_b`.
    Frob { n: u32, b: Cyclo },
    /// The irreducible head of the specialized `V(l n)_b` (with `b` itself lifted).
    WeylHead { n: u32, b: Cyclo },
}

impl Factor {
    fn provenance(&self) -> Provenance {
        match self {
            Factor::Ev { m, a } => Provenance::Ev { m: *m, a: a.to_string() },
            Factor::Frob { n, b } => Provenance::Frob { n: *n, b: b.to_string() },
            Factor::WeylHead { n, b } => Provenance::WeylHead { n: *n, b: b.to_string() },
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Factor::Ev { m, .. } => *m as usize + 1,
            Factor::Frob { n, .. } | Factor::WeylHead { n, .. } => *n as usize + 1,
        }
    }
}

fn lifted(a: &Cyclo) -> Result<(MultiPoly, MultiPoly), ModuleError> {
    if a.is_zero() {
        return Err(ModuleError::ZeroParam);
    }
    let la = RatFunc::from_laurent(a.lift());
    let inv = la.inv().ok_or(ModuleError::ZeroParam)?;
    Ok((MultiPoly::constant(la), MultiPoly::constant(inv)))
}

/// Generic lattice for one factor: the module, the kept indices, and the
/// formal parameter (if any) with its `l`-th power target.
fn generic_factor(
    f: &Factor,
    l: u32,
    next_var: &mut usize,
) -> Result<(Module<MultiPoly>, Vec<usize>, Option<(usize, Cyclo)>), ModuleError> {
    let all = |d: usize| (0..d).collect::<Vec<_>>();
    let heads = |n: u32| (0..=n as usize).map(|j| j * l as usize).collect::<Vec<_>>();
    Ok(match f {
        Factor::Ev { m, a } => {
            let (a, ai) = lifted(a)?;
            let v = evaluation_twist_with_inverse(&make_vn::<MultiPoly>(*m, 0)?, &a, &ai, a.to_string())?;
            (v, all(*m as usize + 1), None)
        }
        Factor::WeylHead { n, b } => {
            let (a, ai) = lifted(b)?;
            let v = evaluation_twist_with_inverse(&make_vn::<MultiPoly>(n * l, 0)?, &a, &ai, a.to_string())?;
            (v, heads(*n), None)
        }
        Factor::Frob { n, b } => {
            if b.is_zero() {
                return Err(ModuleError::ZeroParam);
            }
            let i = *next_var;
            *next_var += 1;
            let beta = MultiPoly::var(i, 1);
            let beta_inv = MultiPoly::var(i, -1);
            let v = evaluation_twist_with_inverse(&make_vn::<MultiPoly>(n * l, 0)?, &beta, &beta_inv, format!("a{}", i + 1))?;
            (v, heads(*n), Some((i, b.clone())))
        }
    })
}

/// Specialize one lattice entry: `q -> eps`, then `beta_i^l -> b_i`.
fn specialize_entry(p: &MultiPoly, l: u32, frob: &[(usize, Cyclo)]) -> Result<Cyclo, RingError> {
    let mut acc = Cyclo::zero();
    for (key, c) in p.terms() {
        let c = c.specialize(l)?;
        if c.is_zero() {
            continue;
        }
        let mut t = c;
        for (i, &e) in key.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let b = frob
                .iter()
                .find(|(v, _)| *v == i)
                .map(|(_, b)| b)
                .ok_or_else(|| RingError::Unsupported(format!("free parameter a{} in a root-of-unity module", i + 1)))?;
            if e % l as i32 != 0 {
                return Err(RingError::Inexact);
            }
            let k = e / l as i32;
            let bb = if k > 0 { b.pow(k as u32) } else { b.inv().ok_or(RingError::DivisionByZero)?.pow((-k) as u32) };
            t = t.mul(&bb);
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// Tensor product of [`Factor`]s at `eps`, computed on the generic lattice.
pub struct SpecModule {
    l: u32,
    factors: Vec<Factor>,
    generic: Module<MultiPoly>,
    keep: Vec<usize>,
    frob: Vec<(usize, Cyclo)>,
    drin: Mutex<Drinfeld<MultiPoly>>,
    cache: Mutex<HashMap<ResOp, Arc<CMat>>>,
}

impl SpecModule {
    pub fn new(l: u32, factors: Vec<Factor>) -> Result<Self, ModuleError> {
        crate::ring::check_order(l as i64)?;
        if factors.is_empty() {
            return Err(ModuleError::Invalid("no factors".into()));
        }
        let mut var = 0;
        let mut acc: Option<(Module<MultiPoly>, Vec<usize>)> = None;
        let mut frob = Vec::new();
        for f in &factors {
            let (m, keep, fv) = generic_factor(f, l, &mut var)?;
            frob.extend(fv);
            acc = Some(match acc {
                None => (m, keep),
                Some((a, ka)) => {
                    let d = m.dim();
                    let t = tensor(&a, &m)?;
                    let mut kk = Vec::with_capacity(ka.len() * keep.len());
                    for &i in &ka {
                        for &j in &keep {
                            kk.push(i * d + j);
                        }
                    }
                    (t, kk)
                }
            });
        }
        let (generic, keep) = acc.unwrap();
        Self::from_lattice(l, factors, generic, keep, frob)
    }

    /// Wrap an arbitrary generic lattice; `keep` must index a subquotient.
    pub fn from_lattice(
        l: u32,
        factors: Vec<Factor>,
        generic: Module<MultiPoly>,
        keep: Vec<usize>,
        frob: Vec<(usize, Cyclo)>,
    ) -> Result<Self, ModuleError> {
        let drin = Drinfeld::new(&generic)?;
        Ok(SpecModule { l, factors, generic, keep, frob, drin: Mutex::new(drin), cache: Mutex::new(HashMap::new()) })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn generic(&self) -> &Module<MultiPoly> {
        &self.generic
    }

    pub fn kept_indices(&self) -> &[usize] {
        &self.keep
    }

    fn specialize(&self, m: &Matrix<MultiPoly>) -> Result<CMat, ModuleError> {
        let sub = m.submatrix(&self.keep, &self.keep);
        Ok(sub.try_map(|p| specialize_entry(p, self.l, &self.frob))?)
    }

    /// The generic-lattice matrix of an operator before specialization.
    pub fn generic_op(&self, op: ResOp) -> Result<Matrix<MultiPoly>, ModuleError> {
        let mut d = self.drin.lock().unwrap();
        Ok(match op {
            ResOp::Sym(s) => (*d.get(s)?).clone(),
            ResOp::E0Plus(m) => {
                let x = d.get(Sym::XMinus(1))?.mul(&d.k_pow(-1));
                divided_power(&x, m, 0)?
            }
            ResOp::E0Minus(m) => {
                let x = d.k_pow(1).mul(&*d.get(Sym::XPlus(-1))?);
                divided_power(&x, m, 0)?
            }
        })
    }

    /// Chevalley presentation at `eps` (`e_1^\pm`, `e_0^\pm`, weights).
    pub fn presentation(&self) -> Result<Module<Cyclo>, ModuleError> {
        let e = self.op(ResOp::Sym(Sym::XPlus(0)))?;
        let f = self.op(ResOp::Sym(Sym::XMinus(0)))?;
        let ep = self.op(ResOp::E0Plus(1))?;
        let em = self.op(ResOp::E0Minus(1))?;
        Ok(Module::from_parts(
            self.l,
            self.weights(),
            (*e).clone(),
            (*f).clone(),
            Some(((*ep).clone(), (*em).clone())),
            self.provenance(),
        ))
    }
}

impl ResModule for SpecModule {
    fn order(&self) -> u32 {
        self.l
    }

    fn dim(&self) -> usize {
        self.keep.len()
    }

    fn weights(&self) -> Vec<i64> {
        self.keep.iter().map(|&i| self.generic.weights()[i]).collect()
    }

    fn op(&self, op: ResOp) -> Result<Arc<CMat>, ModuleError> {
        if let Some(m) = self.cache.lock().unwrap().get(&op) {
            return Ok(m.clone());
        }
        let g = self.generic_op(op)?;
        let m = Arc::new(self.specialize(&g)?);
        self.cache.lock().unwrap().insert(op, m.clone());
        Ok(m)
    }

    fn provenance(&self) -> Provenance {
        let inner = if self.factors.len() == 1 {
            self.factors[0].provenance()
        } else {
            Provenance::Tensor { factors: self.factors.iter().map(|f| f.provenance()).collect() }
        };
        Provenance::Specialized { l: self.l, inner: Box::new(inner) }
    }
}

/// Specialize a generic module with rational (or `q`-rational) parameters.
pub fn specialize_module(v: &Module<RatFunc>, l: u32) -> Result<SpecModule, ModuleError> {
    crate::ring::check_order(l as i64)?;
    let prov = v.provenance().clone();
    let g = v.map(0, |c| Ok::<_, ModuleError>(MultiPoly::constant(c.clone())), prov)?;
    let keep = (0..g.dim()).collect();
    SpecModule::from_lattice(l, Vec::new(), g, keep, Vec::new())
}

/// Direct construction of `Fr^*(V(n)_b)` from the classical evaluation module:
/// `(x_r^\pm)^{(s)}` is zero unless `l | s`, and `(x_r^\pm)^{(l m)}` acts as
/// `b^{r m} (e^\pm)^m / m!` on the classical ladder.
pub struct FrobPullback {
    n: u32,
    b: Cyclo,
    l: u32,
    cache: Mutex<HashMap<ResOp, Arc<CMat>>>,
}

impl FrobPullback {
    pub fn new(n: u32, b: Cyclo, l: u32) -> Result<Self, ModuleError> {
        crate::ring::check_order(l as i64)?;
        if b.is_zero() {
            return Err(ModuleError::ZeroParam);
        }
        Ok(FrobPullback { n, b, l, cache: Mutex::new(HashMap::new()) })
    }

    fn ladder(&self, plus: bool) -> CMat {
        let d = self.n as usize + 1;
        let n = self.n as i64;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            if plus && j > 0 {
                m.set(j - 1, j, Cyclo::from_i64(n - j as i64 + 1));
            }
            if !plus && j + 1 < d {
                m.set(j + 1, j, Cyclo::from_i64(j as i64 + 1));
            }
        }
        m
    }

    /// `c^m (e^\pm)^m / m!` if `l | s` (with `m = s / l`), zero otherwise.
    fn frob_power(&self, plus: bool, c: &Cyclo, s: u32) -> CMat {
        let d = self.n as usize + 1;
        if s % self.l != 0 {
            return Matrix::zeros(d, d);
        }
        let m = s / self.l;
        let fact: i64 = (1..=m as i64).product();
        let inv_fact = Cyclo::from_q(&crate::ring::ratio(1, fact));
        self.ladder(plus).pow(m).scale(&c.pow(m).mul(&inv_fact))
    }

    fn bpow(&self, r: i32) -> Cyclo {
        if r >= 0 {
            self.b.pow(r as u32)
        } else {
            self.b.inv().unwrap().pow((-r) as u32)
        }
    }
}

impl ResModule for FrobPullback {
    fn order(&self) -> u32 {
        self.l
    }

    fn dim(&self) -> usize {
        self.n as usize + 1
    }

    fn weights(&self) -> Vec<i64> {
        (0..=self.n as i64).map(|j| self.l as i64 * (self.n as i64 - 2 * j)).collect()
    }

    fn op(&self, op: ResOp) -> Result<Arc<CMat>, ModuleError> {
        if let Some(m) = self.cache.lock().unwrap().get(&op) {
            return Ok(m.clone());
        }
        let d = self.dim();
        let m = match op {
            ResOp::Sym(Sym::XPlus(_)) | ResOp::Sym(Sym::XMinus(_)) => Matrix::zeros(d, d),
            ResOp::Sym(Sym::DivXPlus(r, s)) => self.frob_power(true, &self.bpow(r), s),
            ResOp::Sym(Sym::DivXMinus(r, s)) => self.frob_power(false, &self.bpow(r), s),
            // classical e_0^+ = b e^-, e_0^- = b^{-1} e^+
            ResOp::E0Plus(s) => self.frob_power(false, &self.bpow(1), s),
            ResOp::E0Minus(s) => self.frob_power(true, &self.bpow(-1), s),
            ResOp::Sym(Sym::K(_)) => Matrix::identity(d),
            ResOp::Sym(Sym::KBinom(n, r)) => {
                let l = self.l;
                let diag: Result<Vec<Cyclo>, RingError> =
                    self.weights().iter().map(|&w| kbinom_at_weight(w, n as i64, r as i64).specialize(l)).collect();
                Matrix::diag(diag?)
            }
            ResOp::Sym(s) => return Err(ModuleError::MissingSymbol(s.to_string())),
        };
        let m = Arc::new(m);
        self.cache.lock().unwrap().insert(op, m.clone());
        Ok(m)
    }

    fn provenance(&self) -> Provenance {
        Provenance::Specialized {
            l: self.l,
            inner: Box::new(Provenance::Frob { n: self.n, b: self.b.to_string() }),
        }
    }
}

/// Weight spaces read off from `k` and `[k;0 over l]`: the weight of a
/// common eigenvector is `n^0 + l n^1` where `k = eps^{n^0}`, `0 <= n^0 < l`,
/// and `[k;0 over l] = n^1`.
pub fn weight_decomposition(v: &dyn ResModule) -> Result<BTreeMap<i64, Vec<Vec<Cyclo>>>, ModuleError> {
    let l = v.order();
    let k = v.sym(Sym::K(1))?;
    let kb = v.sym(Sym::KBinom(0, l))?;
    if !k.is_diagonal() || !kb.is_diagonal() {
        return Err(ModuleError::NonSemisimple);
    }
    let mut out: BTreeMap<i64, Vec<Vec<Cyclo>>> = BTreeMap::new();
    for i in 0..v.dim() {
        let n0 = k.get(i, i).as_root_power(l).ok_or(ModuleError::NonSemisimple)? as i64;
        let n1 = kb.get(i, i).as_rational().ok_or(ModuleError::NonSemisimple)?;
        if !n1.is_integer() {
            return Err(ModuleError::NonSemisimple);
        }
        let n1: i64 = n1.to_integer().try_into().map_err(|_| ModuleError::NonSemisimple)?;
        let mut e = vec![Cyclo::zero(); v.dim()];
        e[i] = Cyclo::one();
        out.entry(n0 + l as i64 * n1).or_default().push(e);
    }
    Ok(out)
}

/// The `sl_2` irreducible of highest weight `m` at `eps`, as
/// `V(m^0) (x) Fr^*(V(m^1))` with `m = m^0 + l m^1` (all parameters 1).
pub fn lusztig_tensor(m: u32, l: u32) -> Result<SpecModule, ModuleError> {
    let (m0, m1) = (m % l, m / l);
    let one = Cyclo::one();
    let mut fs = Vec::new();
    if m0 > 0 || m1 == 0 {
        fs.push(Factor::Ev { m: m0, a: one.clone() });
    }
    if m1 > 0 {
        fs.push(Factor::Frob { n: m1, b: one });
    }
    SpecModule::new(l, fs)
}

/// Operators compared by [`commuting_square_check`].
pub fn square_genset(n: u32, l: u32) -> Vec<ResOp> {
    let mut v = vec![ResOp::Sym(Sym::K(1)), ResOp::Sym(Sym::KBinom(0, l)), ResOp::E0Plus(l), ResOp::E0Minus(l)];
    for r in -2..=2 {
        v.push(ResOp::Sym(Sym::XPlus(r)));
        v.push(ResOp::Sym(Sym::XMinus(r)));
        for m in 1..=n.max(1) {
            v.push(ResOp::Sym(Sym::DivXPlus(r, l * m)));
            v.push(ResOp::Sym(Sym::DivXMinus(r, l * m)));
        }
    }
    v
}

/// Matrices in the basis `(e^-)^{(l j)} v_0`, `v_0` the normalized vector of
/// top weight.
fn ladder_basis(v: &dyn ResModule, n: u32) -> Result<Option<CMat>, ModuleError> {
    let l = v.order();
    let w = v.weights();
    let top = match w.iter().enumerate().max_by_key(|(_, &x)| x) {
        Some((i, _)) => i,
        None => return Ok(None),
    };
    let mut v0 = vec![Cyclo::zero(); v.dim()];
    v0[top] = Cyclo::one();
    let mut cols = Vec::new();
    for j in 0..=n {
        let m = if j == 0 { Matrix::identity(v.dim()) } else { (*v.sym(Sym::DivXMinus(0, l * j))?).clone() };
        cols.push(m.mul_vec(&v0));
    }
    let p = Matrix::from_fn(v.dim(), cols.len(), |i, j| cols[j][i].clone());
    Ok(Some(p))
}

/// Compare `Fr^*(V(n)_{b^l})` with the head of the specialized `V(l n)_b`.
pub fn commuting_square_check(b: &Cyclo, n: u32, l: u32) -> Result<bool, ModuleError> {
    let a = FrobPullback::new(n, b.pow(l), l)?;
    let c = SpecModule::new(l, vec![Factor::WeylHead { n, b: b.clone() }])?;
    modules_match(&a, &c, n)
}

/// Whether two modules built on ladders `(e^-)^{(l j)} v_0` agree on [`square_genset`].
pub fn modules_match(a: &dyn ResModule, c: &dyn ResModule, n: u32) -> Result<bool, ModuleError> {
    if a.dim() != c.dim() || a.order() != c.order() {
        return Ok(false);
    }
    let (pa, pc) = match (ladder_basis(a, n)?, ladder_basis(c, n)?) {
        (Some(x), Some(y)) => (x, y),
        _ => return Ok(false),
    };
    let (ia, ic) = match (pa.inverse(), pc.inverse()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Ok(false),
    };
    for op in square_genset(n, a.order()) {
        let x = ia.mul(&*a.op(op)?).mul(&pa);
        let y = ic.mul(&*c.op(op)?).mul(&pc);
        if x != y {
            return Ok(false);
        }
    }
    Ok(true)
}
