//! Finite-dimensional type I modules given by exact matrices.
//!
//! A [`Module`] stores the Chevalley generators `e_1^+, e_1^-, e_0^+, e_0^-`
//! and the weight of every basis vector; `k` is diagonal with entries `q^w`
//! and `k_0 = k^{-1}`. Drinfeld generators are derived in [`Drinfeld`].
//! Root-of-unity modules live in [`spec`].

mod descriptor;
mod drinfeld_mats;
pub mod spec;

pub use descriptor::{parse_descriptor, Descriptor};

pub use drinfeld_mats::{AuditFailure, Drinfeld};
pub use spec::{
    commuting_square_check, lusztig_tensor, modules_match, specialize_module, weight_decomposition, CMat, Factor,
    FrobPullback, ResModule, ResOp,
    SpecModule,
};

use crate::matrix::Matrix;
use crate::ring::{qbinom, qint, Field, RatFunc, Ring, RingError, Scalar};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("relation violated: {0}")]
    Relation(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("V({n}) at l = {l} is not built directly (n >= l); use the Lusztig factorization")]
    TooLarge { n: u32, l: u32 },
    #[error("evaluation parameter must be nonzero")]
    ZeroParam,
    #[error("module has no e_0 action (sl_2 core only)")]
    NoAffineAction,
    #[error("symbol {0} is outside the derivable window")]
    MissingSymbol(String),
    #[error("k does not act diagonally")]
    NonSemisimple,
    #[error("{0}")]
    Invalid(String),
}

/// How a module was put together; serialized into reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Sl2 { m: u32 },
    Ev { m: u32, a: String },
    Frob { n: u32, b: String },
    WeylHead { n: u32, b: String },
    Tensor { factors: Vec<Provenance> },
    Specialized { l: u32, inner: Box<Provenance> },
}

impl Provenance {
    fn tensor(a: &Provenance, b: &Provenance) -> Provenance {
        let mut v = Vec::new();
        for p in [a, b] {
            match p {
                Provenance::Tensor { factors } => v.extend(factors.iter().cloned()),
                p => v.push(p.clone()),
            }
        }
        Provenance::Tensor { factors: v }
    }
}

#[derive(Clone, Debug)]
pub struct Module<S> {
    l: u32,
    weights: Vec<i64>,
    e: Matrix<S>,
    f: Matrix<S>,
    e0: Option<(Matrix<S>, Matrix<S>)>,
    prov: Provenance,
}

pub(crate) fn qs<S: Scalar>(f: &RatFunc, l: u32) -> Result<S, RingError> {
    S::from_qfunc(f, l)
}

fn qpow<S: Scalar>(e: i64, l: u32) -> S {
    qs(&RatFunc::q(e as i32), l).expect("powers of q have no poles")
}

impl<S: Scalar> Module<S> {
    /// Assemble from raw parts. Relations are not checked here.
    pub fn from_parts(
        l: u32,
        weights: Vec<i64>,
        e: Matrix<S>,
        f: Matrix<S>,
        e0: Option<(Matrix<S>, Matrix<S>)>,
        prov: Provenance,
    ) -> Self {
        Module { l, weights, e, f, e0, prov }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn provenance(&self) -> &Provenance {
        &self.prov
    }

    pub fn e(&self) -> &Matrix<S> {
        &self.e
    }

    pub fn f(&self) -> &Matrix<S> {
        &self.f
    }

    pub fn has_affine(&self) -> bool {
        self.e0.is_some()
    }

    pub fn e0p(&self) -> Result<&Matrix<S>, ModuleError> {
        self.e0.as_ref().map(|p| &p.0).ok_or(ModuleError::NoAffineAction)
    }

    pub fn e0m(&self) -> Result<&Matrix<S>, ModuleError> {
        self.e0.as_ref().map(|p| &p.1).ok_or(ModuleError::NoAffineAction)
    }

    /// `k^p`, diagonal with entries `q^{p w}`.
    pub fn k_pow(&self, p: i64) -> Matrix<S> {
        Matrix::diag(self.weights.iter().map(|&w| qpow(p * w, self.l)).collect())
    }

    pub fn k(&self) -> Matrix<S> {
        self.k_pow(1)
    }

    pub fn identity(&self) -> Matrix<S> {
        Matrix::identity(self.dim())
    }

    /// Apply `f` to every stored matrix.
    pub fn map<T: Scalar, E, F: FnMut(&S) -> Result<T, E>>(
        &self,
        l: u32,
        mut f: F,
        prov: Provenance,
    ) -> Result<Module<T>, E> {
        let e0 = match &self.e0 {
            Some((a, b)) => Some((a.try_map(&mut f)?, b.try_map(&mut f)?)),
            None => None,
        };
        Ok(Module { l, weights: self.weights.clone(), e: self.e.try_map(&mut f)?, f: self.f.try_map(&mut f)?, e0, prov })
    }

    /// Keep only the basis vectors in `keep`; valid when the complement spans
    /// a submodule (or `keep` spans one).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let r = |m: &Matrix<S>| m.submatrix(keep, keep);
        Module {
            l: self.l,
            weights: keep.iter().map(|&i| self.weights[i]).collect(),
            e: r(&self.e),
            f: r(&self.f),
            e0: self.e0.as_ref().map(|(a, b)| (r(a), r(b))),
            prov: self.prov.clone(),
        }
    }

    /// Exact check of the defining relations of `U_q(sl_2^)` with `k_0 = k^{-1}`.
    pub fn check_relations(&self) -> Result<(), ModuleError> {
        let l = self.l;
        let k = self.k();
        let ki = self.k_pow(-1);
        let q2: S = qpow(2, l);
        let qm2: S = qpow(-2, l);
        let qq: S = qs(&RatFunc::q(1).sub(&RatFunc::q(-1)), l)?;
        let fail = |s: &str| Err(ModuleError::Relation(s.to_string()));
        let conj = |x: &Matrix<S>, c: &S, name: &str| -> Result<(), ModuleError> {
            if k.mul(x).sub(&x.scale(c).mul(&k)).is_zero() {
                Ok(())
            } else {
                Err(ModuleError::Relation(name.to_string()))
            }
        };
        conj(&self.e, &q2, "k e k^-1 = q^2 e")?;
        conj(&self.f, &qm2, "k f k^-1 = q^-2 f")?;
        if !self.e.commutator(&self.f).scale(&qq).sub(&k.sub(&ki)).is_zero() {
            return fail("[e_1^+, e_1^-] = (k - k^-1)/(q - q^-1)");
        }
        if let Some((a, b)) = &self.e0 {
            conj(a, &qm2, "k e_0^+ k^-1 = q^-2 e_0^+")?;
            conj(b, &q2, "k e_0^- k^-1 = q^2 e_0^-")?;
            if !a.commutator(b).scale(&qq).sub(&ki.sub(&k)).is_zero() {
                return fail("[e_0^+, e_0^-] = (k^-1 - k)/(q - q^-1)");
            }
            if !self.e.commutator(b).is_zero() {
                return fail("[e_1^+, e_0^-] = 0");
            }
            if !a.commutator(&self.f).is_zero() {
                return fail("[e_0^+, e_1^-] = 0");
            }
            let c: Vec<S> = (0..=3).map(|r| qs(&RatFunc::from_laurent(qbinom(3, r).unwrap()), l).unwrap()).collect();
            let serre = |x: &Matrix<S>, y: &Matrix<S>| -> bool {
                let mut acc = Matrix::zeros(self.dim(), self.dim());
                for r in 0..=3u32 {
                    let t = x.pow(r).mul(y).mul(&x.pow(3 - r)).scale(&c[r as usize]);
                    acc = if r % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                }
                acc.is_zero()
            };
            if !serre(&self.e, a) || !serre(a, &self.e) || !serre(&self.f, b) || !serre(b, &self.f) {
                return fail("quantum Serre relations");
            }
        }
        Ok(())
    }
}

/// `V(n)`: basis `v_0..v_n`, `k v_r = q^{n-2r} v_r`, `e^+ v_r = [n-r+1] v_{r-1}`,
/// `e^- v_r = [r+1] v_{r+1}`. At a root of unity (`l > 0`) only `n < l` is allowed.
pub fn make_vn<S: Scalar>(n: u32, l: u32) -> Result<Module<S>, ModuleError> {
    if l > 0 && n >= l {
        return Err(ModuleError::TooLarge { n, l });
    }
    let d = n as usize + 1;
    let mut e = Matrix::zeros(d, d);
    let mut f = Matrix::zeros(d, d);
    for r in 0..d {
        if r > 0 {
            e.set(r - 1, r, qs(&RatFunc::from_laurent(qint(n as i64 - r as i64 + 1)), l)?);
        }
        if r + 1 < d {
            f.set(r + 1, r, qs(&RatFunc::from_laurent(qint(r as i64 + 1)), l)?);
        }
    }
    let weights = (0..d as i64).map(|r| n as i64 - 2 * r).collect();
    Ok(Module { l, weights, e, f, e0: None, prov: Provenance::Sl2 { m: n } })
}

/// Pull back along the evaluation map at `a`: `e_0^+ = q^{-1} a e^-`,
/// `e_0^- = q a^{-1} e^+`, so that `x_r^+ = q^{-r} a^r k^r e^+`.
pub fn evaluation_twist_with_inverse<S: Scalar>(
    v: &Module<S>,
    a: &S,
    a_inv: &S,
    label: String,
) -> Result<Module<S>, ModuleError> {
    if a.is_zero() || !a.mul(a_inv).is_one() {
        return Err(ModuleError::ZeroParam);
    }
    let l = v.l;
    let c0: S = qpow::<S>(-1, l).mul(a);
    let c1: S = qpow::<S>(1, l).mul(a_inv);
    let m = match v.prov {
        Provenance::Sl2 { m } => m,
        _ => (v.dim() - 1) as u32,
    };
    Ok(Module {
        l,
        weights: v.weights.clone(),
        e: v.e.clone(),
        f: v.f.clone(),
        e0: Some((v.f.scale(&c0), v.e.scale(&c1))),
        prov: Provenance::Ev { m, a: label },
    })
}

pub fn evaluation_twist<S: Scalar + Field + std::fmt::Display>(v: &Module<S>, a: &S) -> Result<Module<S>, ModuleError> {
    let inv = a.inv().ok_or(ModuleError::ZeroParam)?;
    evaluation_twist_with_inverse(v, a, &inv, a.to_string())
}

/// `V(m)_a` over a field of scalars.
pub fn ev_module<S: Scalar + Field + std::fmt::Display>(m: u32, a: &S, l: u32) -> Result<Module<S>, ModuleError> {
    evaluation_twist(&make_vn(m, l)?, a)
}

/// Tensor product through `Delta(e^+) = e^+ (x) k + 1 (x) e^+`,
/// `Delta(e^-) = e^- (x) 1 + k^{-1} (x) e^-`, `Delta(k) = k (x) k`,
/// for both nodes (with `k_0 = k^{-1}`). Index `(i, j)` flattens to `i dim(W) + j`.
pub fn tensor<S: Scalar>(v: &Module<S>, w: &Module<S>) -> Result<Module<S>, ModuleError> {
    if v.l != w.l {
        return Err(ModuleError::ModeMismatch(format!("l = {} vs l = {}", v.l, w.l)));
    }
    let (iv, iw) = (v.identity(), w.identity());
    let (kv, kw) = (v.k(), w.k());
    let (kvi, kwi) = (v.k_pow(-1), w.k_pow(-1));
    let e = v.e.kron(&kw).add(&iv.kron(&w.e));
    let f = v.f.kron(&iw).add(&kvi.kron(&w.f));
    let e0 = match (&v.e0, &w.e0) {
        (Some((a, b)), Some((c, d))) => Some((a.kron(&kwi).add(&iv.kron(c)), b.kron(&iw).add(&kv.kron(d)))),
        _ => None,
    };
    let mut weights = Vec::with_capacity(v.dim() * w.dim());
    for &x in &v.weights {
        for &y in &w.weights {
            weights.push(x + y);
        }
    }
    Ok(Module { l: v.l, weights, e, f, e0, prov: Provenance::tensor(&v.prov, &w.prov) })
}

/// Left-to-right tensor product of a list.
pub fn tensor_all<S: Scalar>(ms: &[Module<S>]) -> Result<Module<S>, ModuleError> {
    let mut it = ms.iter();
    let mut acc = it.next().ok_or_else(|| ModuleError::Invalid("empty tensor product".into()))?.clone();
    for m in it {
        acc = tensor(&acc, m)?;
    }
    Ok(acc)
}

/// `(X)^m / [m]_q!` for a generic-mode operator matrix.
pub fn divided_power<S: Scalar>(x: &Matrix<S>, m: u32, l: u32) -> Result<Matrix<S>, ModuleError> {
    let fact = RatFunc::from_laurent(crate::ring::qfact(m as i64)?);
    let p = x.pow(m);
    Ok(p.try_map(|c| c.div_qfunc(&fact, l))?)
}
