//! JSON module descriptors:
//! `{"l":5, "factors":[{"kind":"ev","m":2,"a":"3/2"}, {"kind":"frob","n":1,"b":"2"}]}`.
//! Factors are tensored left to right; `"l":0` means generic `q`, where only
//! `ev` factors make sense and parameters may involve `q`.

use super::{ev_module, tensor_all, Factor, Module, ModuleError, SpecModule};
use crate::ring::parse::{parse_cyclo, parse_laurent};
use crate::ring::{RatFunc, Ring};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDescriptor {
    l: Option<i64>,
    factors: Vec<RawFactor>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawFactor {
    Ev { m: u32, a: String },
    Frob { n: u32, b: String },
    WeylHead { n: u32, b: String },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Descriptor {
    /// Root-of-unity module at a primitive `l`-th root.
    AtRoot { l: u32, factors: Vec<Factor> },
    /// Generic `q`: evaluation modules `V(m)_a` with `a` in `Q(q)`.
    Generic { factors: Vec<(u32, RatFunc)> },
}

/// Parse a descriptor; `default_l` fills in a missing `"l"`.
pub fn parse_descriptor(s: &str, default_l: Option<u32>) -> Result<Descriptor, ModuleError> {
    let raw: RawDescriptor = serde_json::from_str(s).map_err(|e| ModuleError::Invalid(format!("descriptor: {}", e)))?;
    let l = match raw.l.or(default_l.map(|l| l as i64)) {
        Some(l) => l,
        None => return Err(ModuleError::Invalid("descriptor: missing \"l\"".into())),
    };
    if raw.factors.is_empty() {
        return Err(ModuleError::Invalid("descriptor: no factors".into()));
    }
    if l == 0 {
        let mut out = Vec::new();
        for f in raw.factors {
            match f {
                RawFactor::Ev { m, a } => {
                    let a = RatFunc::from_laurent(parse_laurent(&a)?);
                    if a.is_zero() {
                        return Err(ModuleError::ZeroParam);
                    }
                    out.push((m, a));
                }
                _ => return Err(ModuleError::Invalid("descriptor: only ev factors exist at generic q".into())),
            }
        }
        return Ok(Descriptor::Generic { factors: out });
    }
    let l = crate::ring::check_order(l)?;
    let factors = raw
        .factors
        .into_iter()
        .map(|f| {
            Ok(match f {
                RawFactor::Ev { m, a } => Factor::Ev { m, a: parse_cyclo(&a, l)? },
                RawFactor::Frob { n, b } => Factor::Frob { n, b: parse_cyclo(&b, l)? },
                RawFactor::WeylHead { n, b } => Factor::WeylHead { n, b: parse_cyclo(&b, l)? },
            })
        })
        .collect::<Result<Vec<_>, ModuleError>>()?;
    Ok(Descriptor::AtRoot { l, factors })
}

impl Descriptor {
    pub fn order(&self) -> u32 {
        match self {
            Descriptor::AtRoot { l, .. } => *l,
            Descriptor::Generic { .. } => 0,
        }
    }

    pub fn build_at_root(&self) -> Result<SpecModule, ModuleError> {
        match self {
            Descriptor::AtRoot { l, factors } => SpecModule::new(*l, factors.clone()),
            Descriptor::Generic { .. } => Err(ModuleError::ModeMismatch("generic descriptor, root-of-unity module requested".into())),
        }
    }

    pub fn build_generic(&self) -> Result<Module<RatFunc>, ModuleError> {
        match self {
            Descriptor::Generic { factors } => {
                let ms = factors.iter().map(|(m, a)| ev_module(*m, a, 0)).collect::<Result<Vec<_>, _>>()?;
                tensor_all(&ms)
            }
            Descriptor::AtRoot { .. } => Err(ModuleError::ModeMismatch("root-of-unity descriptor, generic module requested".into())),
        }
    }
}
