//! Highest-weight vectors and Drinfeld polynomials.
//!
//! `P_r` is read off through the divided-power route
//! `P_r v = (-1)^r q^{r^2} k^{-r} (x_0^+)^{(r)} (x_1^-)^{(r)} v` and
//! `P_{-r} v = (-1)^r q^{-r^2} k^r (x_{-1}^+)^{(r)} (x_0^-)^{(r)} v`,
//! which stays pole-free at roots of unity.

use crate::matrix::Matrix;
use crate::modules::{Drinfeld, Module, ModuleError, ResModule};
use crate::ring::{Cyclo, Field, RatFunc, Ring, Scalar};
use crate::words::Sym;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Debug, thiserror::Error)]
pub enum DrinfeldError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("highest-weight kernel still changing at window {window}")]
    NoStabilization { window: i32 },
    #[error("vector is not an eigenvector of {what}")]
    NotEigen { what: String },
    #[error("certificate does not hold: {0}")]
    BadCertificate(String),
}

/// Scalars that can report the weight of a `k`-eigenvector.
pub trait WeightField: Scalar + Field + fmt::Display {
    /// `q^e` (generic) or `eps^e` (at order `l`).
    fn q_pow(e: i64, l: u32) -> Self;
    /// Weight from the `k` eigenvalue and, at a root of unity, the
    /// `[k;0 over l]` eigenvalue.
    fn weight_from(k: &Self, kb: Option<&Self>, l: u32) -> Option<i64>;
}

impl WeightField for Cyclo {
    fn q_pow(e: i64, l: u32) -> Self {
        Cyclo::eps(e, l)
    }

    fn weight_from(k: &Self, kb: Option<&Self>, l: u32) -> Option<i64> {
        let n0 = k.as_root_power(l)? as i64;
        let n1 = kb?.as_rational()?;
        if !n1.is_integer() {
            return None;
        }
        let n1: i64 = n1.to_integer().try_into().ok()?;
        Some(n0 + l as i64 * n1)
    }
}

impl WeightField for RatFunc {
    fn q_pow(e: i64, _l: u32) -> Self {
        RatFunc::q(e as i32)
    }

    fn weight_from(k: &Self, _kb: Option<&Self>, _l: u32) -> Option<i64> {
        let p = k.as_laurent()?;
        if !p.is_monomial() || !p.coeff(p.low()).is_one() {
            return None;
        }
        Some(p.low() as i64)
    }
}

/// Anything that can produce matrices of Drinfeld-side symbols.
pub trait OpSource: Sync {
    type F: WeightField;
    /// Order of the root of unity; 0 for generic `q`.
    fn order(&self) -> u32;
    fn dim(&self) -> usize;
    fn weights(&self) -> Vec<i64>;
    fn sym(&self, s: Sym) -> Result<Arc<Matrix<Self::F>>, ModuleError>;
}

impl<T: ResModule + ?Sized> OpSource for T {
    type F = Cyclo;
    fn order(&self) -> u32 {
        ResModule::order(self)
    }
    fn dim(&self) -> usize {
        ResModule::dim(self)
    }
    fn weights(&self) -> Vec<i64> {
        ResModule::weights(self)
    }
    fn sym(&self, s: Sym) -> Result<Arc<Matrix<Cyclo>>, ModuleError> {
        ResModule::sym(self, s)
    }
}

/// A module over generic `q` with `Q(q)` coefficients.
pub struct GenericModule {
    module: Module<RatFunc>,
    drin: Mutex<Drinfeld<RatFunc>>,
}

impl GenericModule {
    pub fn new(module: Module<RatFunc>) -> Result<Self, ModuleError> {
        let drin = Mutex::new(Drinfeld::new(&module)?);
        Ok(GenericModule { module, drin })
    }

    pub fn module(&self) -> &Module<RatFunc> {
        &self.module
    }
}

impl OpSource for GenericModule {
    type F = RatFunc;
    fn order(&self) -> u32 {
        0
    }
    fn dim(&self) -> usize {
        self.module.dim()
    }
    fn weights(&self) -> Vec<i64> {
        self.module.weights().to_vec()
    }
    fn sym(&self, s: Sym) -> Result<Arc<Matrix<RatFunc>>, ModuleError> {
        self.drin.lock().unwrap().get(s)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "F: fmt::Display"))]
pub struct HighestWeightCertificate<F> {
    #[serde(serialize_with = "ser_display_vec")]
    pub vector: Vec<F>,
    pub weight: i64,
    /// `x_r^+` was used for `|r| <= window`.
    pub window: i32,
    /// Total dimension of the joint kernel for window sizes `0, 1, ...`.
    pub kernel_dims: Vec<usize>,
}

fn ser_display_vec<F: fmt::Display, S: serde::Serializer>(v: &[F], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ops_in_window<T: OpSource + ?Sized>(v: &T, w: i32) -> Result<Vec<Arc<Matrix<T::F>>>, ModuleError> {
    let l = v.order();
    let mut ops = Vec::new();
    for r in -w..=w {
        ops.push(v.sym(Sym::XPlus(r))?);
        // (x^+)^{(m)} factors through x^+ and (x^+)^{(l)} up to units
        if l > 0 && max_raise(v) >= l as i64 {
            ops.push(v.sym(Sym::DivXPlus(r, l))?);
        }
    }
    Ok(ops)
}

fn max_raise<T: OpSource + ?Sized>(v: &T) -> i64 {
    let ws = v.weights();
    let hi = ws.iter().max().copied().unwrap_or(0);
    let lo = ws.iter().min().copied().unwrap_or(0);
    (hi - lo) / 2
}

fn weight_blocks(ws: &[i64]) -> BTreeMap<i64, Vec<usize>> {
    let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &w) in ws.iter().enumerate() {
        m.entry(w).or_default().push(i);
    }
    m
}

fn joint_kernel<F: Field>(ops: &[Arc<Matrix<F>>], cols: &[usize], dim: usize) -> Vec<Vec<F>> {
    let rows: Vec<Vec<F>> = ops
        .iter()
        .flat_map(|m| (0..dim).map(move |i| cols.iter().map(|&j| m.get(i, j).clone()).collect::<Vec<F>>()))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let stacked = if rows.is_empty() { Matrix::zeros(1, cols.len()) } else { Matrix::from_rows(rows) };
    stacked
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![F::zero(); dim];
            for (x, &j) in k.into_iter().zip(cols) {
                v[j] = x;
            }
            v
        })
        .collect()
}

/// Joint kernel of the raising operators, weight space by weight space.
/// The window of `x_r^+` indices grows until the kernel dimension has been
/// unchanged for two consecutive steps.
pub fn highest_weight_vectors<T: OpSource + ?Sized>(
    v: &T,
) -> Result<Vec<HighestWeightCertificate<T::F>>, DrinfeldError> {
    let dim = v.dim();
    let blocks = weight_blocks(&v.weights());
    let max_window = dim as i32 + 2;
    let mut dims = Vec::new();
    for w in 0..=max_window {
        let ops = ops_in_window(v, w)?;
        let ker: Vec<(i64, Vec<Vec<T::F>>)> =
            blocks.iter().map(|(&wt, cols)| (wt, joint_kernel(&ops, cols, dim))).collect();
        dims.push(ker.iter().map(|(_, k)| k.len()).sum());
        let n = dims.len();
        if n >= 3 && dims[n - 1] == dims[n - 2] && dims[n - 2] == dims[n - 3] {
            let out: Vec<_> = ker
                .into_iter()
                .rev()
                .flat_map(|(wt, vs)| vs.into_iter().map(move |vec| (wt, vec)))
                .map(|(weight, vector)| HighestWeightCertificate { vector, weight, window: w, kernel_dims: dims.clone() })
                .collect();
            for c in &out {
                verify_certificate(v, c)?;
            }
            return Ok(out);
        }
    }
    Err(DrinfeldError::NoStabilization { window: max_window })
}

/// Every `x_r^+` in the window and every `(x_r^+)^{(m)}` up to the possible
/// raise kills the vector.
pub fn verify_certificate<T: OpSource + ?Sized>(
    v: &T,
    c: &HighestWeightCertificate<T::F>,
) -> Result<(), DrinfeldError> {
    let top = max_raise(v).max(1) as u32;
    for r in -c.window..=c.window {
        for m in 1..=top {
            let x = v.sym(Sym::DivXPlus(r, m))?;
            if x.mul_vec(&c.vector).iter().any(|e| !e.is_zero()) {
                return Err(DrinfeldError::BadCertificate(format!("(x_{}^+)^({}) does not kill the vector", r, m)));
            }
        }
    }
    Ok(())
}

/// `Lambda(P^+(u))` and `Lambda(P^-(u))` at a highest-weight vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldPolynomial<F> {
    /// Eigenvalues of `P_0, ..., P_n`.
    pub plus: Vec<F>,
    /// Eigenvalues of `P_0, P_{-1}, ..., P_{-n}`.
    pub minus: Vec<F>,
    pub weight: i64,
    /// Eigenvalue of `P_{n+1}`; zero when the shape is right.
    pub beyond: F,
    pub order: u32,
}

fn eigenvalue<F: Field>(w: &[F], v: &[F]) -> Option<F> {
    let i = v.iter().position(|x| !x.is_zero())?;
    let lam = w[i].div(&v[i])?;
    if w.iter().zip(v).all(|(a, b)| *a == b.mul(&lam)) {
        Some(lam)
    } else {
        None
    }
}

fn apply<F: Field>(ms: &[&Matrix<F>], v: &[F]) -> Vec<F> {
    ms.iter().rev().fold(v.to_vec(), |acc, m| m.mul_vec(&acc))
}

fn k_pow<T: OpSource + ?Sized>(v: &T, e: i32) -> Result<Arc<Matrix<T::F>>, ModuleError> {
    if e == 0 {
        Ok(Arc::new(Matrix::identity(v.dim())))
    } else {
        v.sym(Sym::K(e))
    }
}

/// Weight of an eigenvector, read from `k` and `[k;0 over l]`.
pub fn read_weight<T: OpSource + ?Sized>(v: &T, vec: &[T::F]) -> Result<i64, DrinfeldError> {
    let l = v.order();
    let k = eigenvalue(&v.sym(Sym::K(1))?.mul_vec(vec), vec).ok_or(DrinfeldError::NotEigen { what: "k".into() })?;
    let kb = if l > 0 {
        let m = v.sym(Sym::KBinom(0, l))?;
        Some(eigenvalue(&m.mul_vec(vec), vec).ok_or(DrinfeldError::NotEigen { what: "[k;0 over l]".into() })?)
    } else {
        None
    };
    T::F::weight_from(&k, kb.as_ref(), l).ok_or(DrinfeldError::NotEigen { what: "k (weight not readable)".into() })
}

fn p_eigen<T: OpSource + ?Sized>(v: &T, vec: &[T::F], r: u32, plus: bool) -> Result<T::F, DrinfeldError> {
    if r == 0 {
        return Ok(T::F::one());
    }
    let l = v.order();
    let ri = r as i64;
    let (a, b, ke, qe) = if plus {
        (Sym::DivXPlus(0, r), Sym::DivXMinus(1, r), -(r as i32), ri * ri)
    } else {
        (Sym::DivXPlus(-1, r), Sym::DivXMinus(0, r), r as i32, -ri * ri)
    };
    let (ma, mb, mk) = (v.sym(a)?, v.sym(b)?, k_pow(v, ke)?);
    let w = apply(&[&*mk, &*ma, &*mb], vec);
    let what = || format!("P_{}{}", if plus { "" } else { "-" }, r);
    let lam = if w.iter().all(|x| x.is_zero()) {
        T::F::zero()
    } else {
        eigenvalue(&w, vec).ok_or_else(|| DrinfeldError::NotEigen { what: what() })?
    };
    let sign = if r % 2 == 0 { T::F::one() } else { T::F::one().neg() };
    Ok(lam.mul(&T::F::q_pow(qe, l)).mul(&sign))
}

/// Eigenvalue of `P_r` (or `P_{-r}` when `plus` is false) on a highest-weight
/// vector, for any `r`; zero past the degree.
pub fn p_eigenvalue<T: OpSource + ?Sized>(v: &T, vec: &[T::F], r: u32, plus: bool) -> Result<T::F, DrinfeldError> {
    p_eigen(v, vec, r, plus)
}

/// Read `P_{+-r}`, `0 <= r <= n` (and `P_{n+1}`) at the certified vector.
pub fn extract_polynomial<T: OpSource + ?Sized>(
    v: &T,
    cert: &HighestWeightCertificate<T::F>,
) -> Result<DrinfeldPolynomial<T::F>, DrinfeldError> {
    extract_at(v, &cert.vector)
}

/// As [`extract_polynomial`], for a vector already known to be highest weight.
pub fn extract_at<T: OpSource + ?Sized>(v: &T, vec: &[T::F]) -> Result<DrinfeldPolynomial<T::F>, DrinfeldError> {
    let n = read_weight(v, vec)?;
    if n < 0 {
        return Err(DrinfeldError::BadCertificate(format!("negative highest weight {}", n)));
    }
    let n = n as u32;
    let plus: Result<Vec<_>, _> = (0..=n).map(|r| p_eigen(v, vec, r, true)).collect();
    let minus: Result<Vec<_>, _> = (0..=n).map(|r| p_eigen(v, vec, r, false)).collect();
    let beyond = p_eigen(v, vec, n + 1, true)?;
    Ok(DrinfeldPolynomial { plus: plus?, minus: minus?, weight: n as i64, beyond, order: v.order() })
}

impl<F: WeightField> DrinfeldPolynomial<F> {
    /// Reciprocity: the minus data equals `Q(u)/Q(0)` with `Q(u) = u^n P(u^{-1})`.
    pub fn reciprocity_holds(&self) -> bool {
        let n = self.plus.len() - 1;
        let top = &self.plus[n];
        if top.is_zero() {
            return false;
        }
        (0..=n).all(|r| self.minus[r].mul(top) == self.plus[n - r])
    }

    /// Violations of the expected shape: constant term 1, degree equal to the
    /// weight, `P_{n+1} = 0`, reciprocity.
    pub fn shape_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.plus[0].is_one() {
            out.push("constant term is not 1".into());
        }
        if self.plus.last().map_or(true, |c| c.is_zero()) {
            out.push(format!("P_{} acts as zero; degree below the weight", self.weight));
        }
        if !self.beyond.is_zero() {
            out.push(format!("P_{} does not vanish", self.weight + 1));
        }
        if !self.reciprocity_holds() {
            out.push("minus data is not the reciprocal of the plus data".into());
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.plus.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn plus_text(&self) -> String {
        format_upoly(&self.plus)
    }

    pub fn minus_text(&self) -> String {
        format_upoly(&self.minus)
    }
}

/// Polynomial in `u` in the scalar text grammar, e.g. `1 - 2*u` or
/// `1 - (eps + eps^4)*u + u^2`.
pub fn format_upoly<F: Ring + fmt::Display>(c: &[F]) -> String {
    let mut out = String::new();
    for (i, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let u = match i {
            0 => String::new(),
            1 => "u".into(),
            _ => format!("u^{}", i),
        };
        let t = x.to_string();
        // a single term prints without spaces; its sign can move outside
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) if !t.contains(' ') => (true, b.to_string()),
            _ if !t.contains(' ') => (false, t.clone()),
            _ => (false, format!("({})", t)),
        };
        let term = match (i, body.as_str()) {
            (0, _) => body.clone(),
            (_, "1") => u,
            _ => format!("{}*{}", body, u),
        };
        out += match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out += &term;
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn poly_mul<F: Ring>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn trimmed<F: Ring>(mut p: Vec<F>) -> Vec<F> {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Outcome of comparing the extraction on `V (x) W` with the product of the
/// extractions on the factors.
#[derive(Clone, Debug)]
pub struct Multiplicativity<F> {
    pub holds: bool,
    pub left: DrinfeldPolynomial<F>,
    pub right: DrinfeldPolynomial<F>,
    pub tensor: DrinfeldPolynomial<F>,
}

/// Extract on `V`, `W` and on `V (x) W` at `v' (x) v''` (index
/// `i dim(W) + j`), and compare with the product, for both signs.
pub fn check_multiplicativity<F: WeightField>(
    v: &dyn OpSource<F = F>,
    w: &dyn OpSource<F = F>,
    vw: &dyn OpSource<F = F>,
    cv: &HighestWeightCertificate<F>,
    cw: &HighestWeightCertificate<F>,
) -> Result<Multiplicativity<F>, DrinfeldError> {
    if vw.dim() != v.dim() * w.dim() {
        return Err(DrinfeldError::BadCertificate("tensor dimension mismatch".into()));
    }
    let left = extract_polynomial(v, cv)?;
    let right = extract_polynomial(w, cw)?;
    let mut joint = Vec::with_capacity(vw.dim());
    for a in &cv.vector {
        for b in &cw.vector {
            joint.push(a.mul(b));
        }
    }
    let tensor = extract_at(vw, &joint)?;
    let holds = trimmed(poly_mul(&left.plus, &right.plus)) == trimmed(tensor.plus.clone())
        && trimmed(poly_mul(&left.minus, &right.minus)) == trimmed(tensor.minus.clone());
    Ok(Multiplicativity { holds, left, right, tensor })
}

/// One extraction per certificate, in certificate order.
pub fn polynomials_by_certificate<T: OpSource + ?Sized>(
    v: &T,
    certs: &[HighestWeightCertificate<T::F>],
) -> Result<Vec<DrinfeldPolynomial<T::F>>, DrinfeldError> {
    certs.iter().map(|c| extract_polynomial(v, c)).collect()
}
