//! Matrices of algebra elements on modules, the two equality oracles, and
//! the registry of identity checks.
//!
//! Words act on column vectors with the leftmost symbol applied last, so a
//! word maps to the ordinary matrix product in written order.

mod registry;

pub use registry::{
    registry, run_check, run_registry, CheckReport, Mutation, OracleKind, Ranges, Status, VerificationReport, MUTABLE,
};

use crate::matrix::Matrix;
use crate::modules::{evaluation_twist_with_inverse, make_vn, tensor_all, Drinfeld, Module, ModuleError};
use crate::ring::{MultiPoly, Ring, RingError, Scalar};
use crate::words::{AlgElement, Sym};
use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("not a homogeneous element of U^+ of degree {want}: {why}")]
    NotUPlus { want: u32, why: String },
}

fn word_matrix<S: Scalar>(
    syms: &[Sym],
    d: &mut Drinfeld<S>,
    memo: &mut HashMap<Vec<Sym>, Matrix<S>>,
) -> Result<Matrix<S>, ModuleError> {
    if syms.is_empty() {
        return Ok(Matrix::identity(d.dim()));
    }
    if let Some(m) = memo.get(syms) {
        return Ok(m.clone());
    }
    let rest = word_matrix(&syms[1..], d, memo)?;
    let m = d.get(syms[0])?.mul(&rest);
    memo.insert(syms.to_vec(), m.clone());
    Ok(m)
}

fn word_vector<S: Scalar>(
    syms: &[Sym],
    d: &mut Drinfeld<S>,
    v: &[S],
    memo: &mut HashMap<Vec<Sym>, Vec<S>>,
) -> Result<Vec<S>, ModuleError> {
    if syms.is_empty() {
        return Ok(v.to_vec());
    }
    if let Some(w) = memo.get(syms) {
        return Ok(w.clone());
    }
    let rest = word_vector(&syms[1..], d, v, memo)?;
    let w = if rest.iter().all(|x| x.is_zero()) { rest } else { d.get(syms[0])?.mul_vec(&rest) };
    memo.insert(syms.to_vec(), w.clone());
    Ok(w)
}

/// Matrix of `e` on the module behind `d`.
pub fn eval_element<S: Scalar>(e: &AlgElement, d: &mut Drinfeld<S>) -> Result<Matrix<S>, ModuleError> {
    let l = d.order();
    let n = d.dim();
    let mut memo = HashMap::new();
    let mut acc = Matrix::zeros(n, n);
    for (w, c) in e.terms() {
        let m = word_matrix(w.syms(), d, &mut memo)?;
        acc = acc.add(&m.try_map(|x| x.scale(c, l))?);
    }
    Ok(acc)
}

/// `e . v`, sharing work between words with a common suffix.
pub fn eval_on_vector<S: Scalar>(e: &AlgElement, d: &mut Drinfeld<S>, v: &[S]) -> Result<Vec<S>, ModuleError> {
    let l = d.order();
    let mut memo = HashMap::new();
    let mut acc = vec![S::zero(); d.dim()];
    for (w, c) in e.terms() {
        let u = word_vector(w.syms(), d, v, &mut memo)?;
        for (a, b) in acc.iter_mut().zip(&u) {
            if !b.is_zero() {
                *a = a.add(&b.scale(c, l)?);
            }
        }
    }
    Ok(acc)
}

/// Exact comparison of the actions of `x` and `y`. Agreement on a family of
/// modules is evidence, not proof.
pub fn operators_equal_on<S: Scalar>(x: &AlgElement, y: &AlgElement, d: &mut Drinfeld<S>) -> Result<bool, ModuleError> {
    Ok(eval_element(&x.sub(y), d)?.is_zero())
}

/// `V(1)_{a_1} (x) ... (x) V(1)_{a_r}` with independent symbolic parameters.
pub fn symbolic_v1_tensor(r: usize) -> Result<Module<MultiPoly>, ModuleError> {
    let v1 = make_vn::<MultiPoly>(1, 0)?;
    let fs: Result<Vec<_>, _> = (0..r)
        .map(|i| evaluation_twist_with_inverse(&v1, &MultiPoly::var(i, 1), &MultiPoly::var(i, -1), format!("a{}", i + 1)))
        .collect();
    tensor_all(&fs?)
}

/// Basis vector `e_i` of length `n`.
pub fn unit_vector<S: Ring>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// Faithful oracle for homogeneous elements of `U^+`: an element of degree
/// `r` vanishes iff it kills `v_1^{(x) r}` in the symbolic tensor product of
/// `r` copies of `V(1)`. Elements with negative `x^+` indices are shifted
/// into `U^{++}` first; the shift is an automorphism.
#[derive(Default)]
pub struct UPlusOracle {
    cache: HashMap<u32, Drinfeld<MultiPoly>>,
}

impl UPlusOracle {
    pub fn new() -> Self {
        Self::default()
    }

    fn module(&mut self, r: u32) -> Result<&mut Drinfeld<MultiPoly>, EvalError> {
        if !self.cache.contains_key(&r) {
            let m = symbolic_v1_tensor(r as usize)?;
            self.cache.insert(r, Drinfeld::new(&m)?);
        }
        Ok(self.cache.get_mut(&r).unwrap())
    }

    fn prepare(x: &AlgElement, r: u32) -> Result<AlgElement, EvalError> {
        match x.uplus_degree() {
            Some(d) if d == r || x.is_zero() => {}
            Some(d) => return Err(EvalError::NotUPlus { want: r, why: format!("degree {}", d) }),
            None => return Err(EvalError::NotUPlus { want: r, why: "contains a symbol outside U^+".into() }),
        }
        if r == 0 {
            return Err(EvalError::NotUPlus { want: r, why: "degree must be at least 1".into() });
        }
        let low = x
            .symbols()
            .map(|s| match s {
                Sym::XPlus(n) | Sym::DivXPlus(n, _) => n,
                _ => 0,
            })
            .min()
            .unwrap_or(0);
        Ok(if low < 0 { x.apply_shift(-low) } else { x.clone() })
    }

    /// Coordinates of `x . v_1^{(x) r}`, after validating the degree.
    pub fn act(&mut self, x: &AlgElement, r: u32) -> Result<Vec<MultiPoly>, EvalError> {
        let x = Self::prepare(x, r)?;
        let d = self.module(r)?;
        let dim = d.dim();
        Ok(eval_on_vector(&x, d, &unit_vector(dim, dim - 1))?)
    }

    /// `x . v_1^{(x) r}` is always a multiple of `v_0^{(x) r}`; this returns
    /// the multiplier.
    pub fn top_coefficient(&mut self, x: &AlgElement, r: u32) -> Result<MultiPoly, EvalError> {
        Ok(self.act(x, r)?[0].clone())
    }

    pub fn equal_uplus(&mut self, x: &AlgElement, y: &AlgElement, r: u32) -> Result<bool, EvalError> {
        let diff = x.sub(y);
        if diff.is_zero() {
            return Ok(true);
        }
        Ok(self.act(&diff, r)?.iter().all(|c| c.is_zero()))
    }
}

/// One-shot form of [`UPlusOracle::equal_uplus`].
pub fn equal_uplus(x: &AlgElement, y: &AlgElement, r: u32) -> Result<bool, EvalError> {
    UPlusOracle::new().equal_uplus(x, y, r)
}
