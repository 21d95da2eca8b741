//! Submodule closure ("spinning") over `Q(eps)` and an irreducibility oracle.
//!
//! A verdict of irreducible needs two facts: the joint kernel of the raising
//! operators is a line, and that line generates the whole module. Any
//! nonzero submodule contains a vector of that kernel, so together they
//! leave no room for a proper submodule. Closures from every basis vector
//! and the dual closures are run as well and must agree.

use crate::drinfeld::{highest_weight_vectors, DrinfeldError};
use crate::matrix::{Matrix, Span};
use crate::modules::{CMat, Factor, ModuleError, ResModule, ResOp, SpecModule};
use crate::ring::{Cyclo, Ring};
use crate::segments::{predict_factors, SegmentError};
use crate::words::Sym;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum IrrError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Drinfeld(#[from] DrinfeldError),
    #[error(transparent)]
    Segment(#[from] SegmentError),
}

/// Operators used for spinning.
pub struct Genset {
    pub ops: Vec<ResOp>,
    pub mats: Vec<Arc<CMat>>,
    pub window: i32,
}

impl Genset {
    pub fn describe(&self) -> Vec<String> {
        self.ops.iter().map(|o| o.to_string()).collect()
    }

    fn transposed(&self) -> Vec<CMat> {
        self.mats.iter().map(|m| m.transpose()).collect()
    }
}

/// `x_0^\pm`, `e_0^\pm`, their `l`-th divided powers, `k`, `[k;0 over l]` and
/// `(x_r^\pm)^{(l)}` for `|r| <= window`.
pub fn default_genset(v: &dyn ResModule, window: i32) -> Result<Genset, ModuleError> {
    let l = v.order();
    let mut ops = vec![
        ResOp::Sym(Sym::K(1)),
        ResOp::Sym(Sym::KBinom(0, l)),
        ResOp::Sym(Sym::XPlus(0)),
        ResOp::Sym(Sym::XMinus(0)),
        ResOp::E0Plus(1),
        ResOp::E0Minus(1),
        ResOp::E0Plus(l),
        ResOp::E0Minus(l),
    ];
    for r in -window..=window {
        ops.push(ResOp::Sym(Sym::DivXPlus(r, l)));
        ops.push(ResOp::Sym(Sym::DivXMinus(r, l)));
    }
    let mats = ops.iter().map(|&o| v.op(o)).collect::<Result<Vec<_>, _>>()?;
    Ok(Genset { ops, mats, window })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureResult {
    #[serde(serialize_with = "ser_vec")]
    pub seed: Vec<Cyclo>,
    pub generators: Vec<String>,
    #[serde(serialize_with = "ser_rows")]
    pub basis: Vec<Vec<Cyclo>>,
    pub dim: usize,
}

fn ser_vec<S: serde::Serializer>(v: &[Cyclo], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_rows<S: serde::Serializer>(v: &[Vec<Cyclo>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn spin<M: std::borrow::Borrow<CMat>>(mats: &[M], seed: &[Cyclo]) -> Span<Cyclo> {
    let mut span = Span::new(seed.len());
    let mut todo = Vec::new();
    if span.insert(seed) {
        todo.push(seed.to_vec());
    }
    while let Some(v) = todo.pop() {
        for m in mats {
            let w = m.borrow().mul_vec(&v);
            if span.insert(&w) {
                todo.push(w);
            }
        }
    }
    span
}

fn rref_rows(rows: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(rows.to_vec());
    let piv = m.rref_in_place();
    (0..piv.len()).map(|i| m.row(i).to_vec()).collect()
}

/// Smallest subspace containing `seed` and stable under every generator.
pub fn submodule_closure(g: &Genset, seed: &[Cyclo]) -> ClosureResult {
    let span = spin(&g.mats, seed);
    let basis = rref_rows(span.basis());
    ClosureResult { seed: seed.to_vec(), generators: g.describe(), dim: basis.len(), basis }
}

/// Exact re-check that `basis` spans a subspace stable under `mats`.
pub fn is_invariant(mats: &[Arc<CMat>], basis: &[Vec<Cyclo>]) -> bool {
    let mut span = Span::new(basis.first().map_or(0, |b| b.len()));
    for b in basis {
        span.insert(b);
    }
    basis.iter().all(|b| mats.iter().all(|m| span.contains(&m.mul_vec(b))))
}

/// Vectors annihilated by every row of `w` (the submodule orthogonal to a
/// dual submodule).
fn annihilator(w: &[Vec<Cyclo>], dim: usize) -> Vec<Vec<Cyclo>> {
    let m = Matrix::from_rows(w.to_vec());
    debug_assert_eq!(m.cols(), dim);
    rref_rows(&m.kernel())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    Reducible,
    /// Only possible when the raising kernel has dimension > 1 but no seed
    /// produced a proper closure; never observed on evaluation-type modules.
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityVerdict {
    pub verdict: Verdict,
    pub dim: usize,
    /// Which seed produced the witness: `e[i]` basis vector, `w[i]`
    /// highest-weight certificate, `dual e[i]` a dual closure.
    pub seed: Option<String>,
    pub witness_dim: Option<usize>,
    #[serde(serialize_with = "ser_rows")]
    pub witness: Vec<Vec<Cyclo>>,
    pub highest_weight_kernel: usize,
    pub window: i32,
    /// Closure dimensions from every seed, basis vectors first, then the
    /// certificates, then the dual closures.
    pub closure_dims: Vec<usize>,
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        self.verdict == Verdict::Irreducible
    }

    /// `{"verdict":"reducible","witness_dim":1,"seed":"w[1]"}`.
    pub fn summary_json(&self) -> Value {
        let mut v = json!({"verdict": self.verdict, "dim": self.dim, "window": self.window});
        if let (Some(d), Some(s)) = (self.witness_dim, &self.seed) {
            v["witness_dim"] = json!(d);
            v["seed"] = json!(s);
        }
        v
    }
}

fn unit(dim: usize, i: usize) -> Vec<Cyclo> {
    let mut e = vec![Cyclo::zero(); dim];
    e[i] = Cyclo::one();
    e
}

fn run(v: &dyn ResModule, g: &Genset) -> Result<IrreducibilityVerdict, IrrError> {
    let dim = v.dim();
    let certs = highest_weight_vectors(v)?;
    let mut seeds: Vec<(String, Vec<Cyclo>)> = (0..dim).map(|i| (format!("e[{}]", i), unit(dim, i))).collect();
    seeds.extend(certs.iter().enumerate().map(|(i, c)| (format!("w[{}]", i), c.vector.clone())));
    let mut dims = Vec::new();
    let mut witness: Option<(String, Vec<Vec<Cyclo>>)> = None;
    for (name, s) in &seeds {
        let c = submodule_closure(g, s);
        dims.push(c.dim);
        if c.dim < dim && witness.is_none() {
            witness = Some((name.clone(), c.basis));
        }
    }
    let gt = g.transposed();
    for i in 0..dim {
        let span = spin(&gt, &unit(dim, i));
        dims.push(span.dim());
        if span.dim() < dim && witness.is_none() {
            witness = Some((format!("dual e[{}]", i), annihilator(span.basis(), dim)));
        }
    }
    let base = IrreducibilityVerdict {
        verdict: Verdict::Undetermined,
        dim,
        seed: None,
        witness_dim: None,
        witness: Vec::new(),
        highest_weight_kernel: certs.len(),
        window: g.window,
        closure_dims: dims,
    };
    if let Some((seed, basis)) = witness {
        assert!(is_invariant(&g.mats, &basis), "closure witness is not invariant");
        return Ok(IrreducibilityVerdict {
            verdict: Verdict::Reducible,
            seed: Some(seed),
            witness_dim: Some(basis.len()),
            witness: basis,
            ..base
        });
    }
    if certs.len() == 1 {
        return Ok(IrreducibilityVerdict { verdict: Verdict::Irreducible, ..base });
    }
    Ok(base)
}

/// Spin from every basis vector and every highest-weight certificate, and
/// dually from every basis vector; the `(x_r^\pm)^{(l)}` window is
/// `[-dim, dim]`, re-run at `dim + 2` to check that the verdict is stable.
pub fn is_irreducible(v: &dyn ResModule) -> Result<IrreducibilityVerdict, IrrError> {
    is_irreducible_with_window(v, v.dim() as i32)
}

pub fn is_irreducible_with_window(v: &dyn ResModule, window: i32) -> Result<IrreducibilityVerdict, IrrError> {
    let first = run(v, &default_genset(v, window)?)?;
    let second = run(v, &default_genset(v, window + 2)?)?;
    if first.verdict != second.verdict || first.closure_dims != second.closure_dims {
        return Ok(second);
    }
    Ok(first)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckRow {
    pub factors: Vec<Value>,
    pub predicted: bool,
    pub oracle: Verdict,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub l: u32,
    pub rows: Vec<CrosscheckRow>,
    pub disagreements: usize,
}

/// Compare the segment criterion with the closure oracle on each tensor product.
pub fn crosscheck_grid(grid: &[Vec<Factor>], l: u32) -> Result<CrosscheckReport, IrrError> {
    let mut rows = Vec::new();
    for fs in grid {
        let predicted = predict_factors(fs, l)?;
        let v = SpecModule::new(l, fs.clone())?;
        let verdict = is_irreducible(&v)?;
        let agree = match verdict.verdict {
            Verdict::Irreducible => predicted,
            Verdict::Reducible => !predicted,
            Verdict::Undetermined => false,
        };
        rows.push(CrosscheckRow {
            factors: fs.iter().map(crate::segments::factor_json).collect(),
            predicted,
            oracle: verdict.verdict,
            agree,
        });
    }
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    Ok(CrosscheckReport { l, rows, disagreements })
}

/// The pairs `V(m)_1 (x) V(n)_r` for `m, n` in `ms` and `r` in `ratios`.
pub fn pair_grid(ms: &[u32], ratios: &[Cyclo]) -> Vec<Vec<Factor>> {
    let mut out = Vec::new();
    for &m in ms {
        for &n in ms {
            for r in ratios {
                out.push(vec![Factor::Ev { m, a: Cyclo::one() }, Factor::Ev { m: n, a: r.clone() }]);
            }
        }
    }
    out
}
