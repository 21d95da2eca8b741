//! `qra`: construct modules, extract Drinfeld polynomials, factor and
//! classify polynomials, test irreducibility and run the identity registry.
//!
//! Output is JSON (sorted keys). Exit codes: 0 success / true / pass,
//! 1 false / fail, 2 usage, parse or schema error, 3 relation-audit failure,
//! 4 no usable highest-weight certificate.

use clap::{Parser, Subcommand};
use qaffine::drinfeld::{
    extract_polynomial, highest_weight_vectors, DrinfeldPolynomial, GenericModule, HighestWeightCertificate, OpSource,
    WeightField,
};
use qaffine::evaluator::{registry, run_check, run_registry, Ranges, MUTABLE};
use qaffine::irreducibility::{is_irreducible, Verdict};
use qaffine::modules::{parse_descriptor, weight_decomposition, Descriptor, ResModule};
use qaffine::ring::Cyclo;
use qaffine::segments::{
    canonical_params, construction_plan, decompose_into_segments, factor_json, factor_p0_p1, isomorphic, parse_poly,
    predict_factors,
};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qra", version, about = "Restricted quantum affine sl2 at roots of unity")]
struct Cli {
    /// Order of the root of unity (odd, >= 3) for polynomial input and
    /// descriptors without "l".
    #[arg(long, global = true)]
    l: Option<i64>,
    /// Write the JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a module: dimension, weights, relation audit.
    Construct {
        /// Inline JSON descriptor or a path to one.
        descriptor: String,
    },
    /// Drinfeld polynomials at a highest-weight vector.
    Drinfeld {
        descriptor: String,
        /// Which certificate to use when there are several.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Split P = P0 P1, segments, canonical parameters, construction plan.
    Factor {
        /// `(1-2u)(1-u^3)` or `{"roots":[{"val":"2","mult":1}]}`.
        poly: String,
        /// Extra candidate root generators, comma separated.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
    },
    /// Closure oracle verdict.
    Irreducible { descriptor: String },
    /// Whether V(P_a) and V(P_b) are isomorphic.
    Classify {
        poly_a: String,
        poly_b: String,
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
    },
    /// Run registry checks (all when none are named).
    Verify {
        checks: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_r: u32,
        #[arg(long, default_value_t = 3)]
        max_s: u32,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        #[arg(long, default_value_t = 4)]
        rank: u32,
        /// Also run the built-in mutations, which must fail.
        #[arg(long)]
        mutations: bool,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl ToString) -> Failure {
    Failure { code, msg: msg.to_string() }
}

type Outcome = Result<(Value, u8), Failure>;

fn order(l: Option<i64>) -> Result<u32, Failure> {
    let l = l.ok_or_else(|| fail(2, "--l is required"))?;
    qaffine::ring::check_order(l).map_err(|_| {
        fail(2, format!("l = {} rejected: the root of unity must have odd order l >= 3 (standing hypothesis)", l))
    })
}

fn read_descriptor(arg: &str, l: Option<i64>) -> Result<Descriptor, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| fail(2, format!("{}: {}", arg, e)))?
    };
    let default_l = match l {
        Some(l) => Some(order(Some(l)).or_else(|e| if l == 0 { Ok(0) } else { Err(e) })?),
        None => None,
    };
    parse_descriptor(&text, default_l).map_err(|e| fail(2, e))
}

fn weights_json(w: BTreeMap<i64, usize>) -> Value {
    Value::Array(w.into_iter().rev().map(|(k, m)| json!({"weight": k, "mult": m})).collect())
}

fn construct(d: &Descriptor) -> Outcome {
    match d {
        Descriptor::AtRoot { l, .. } => {
            let v = d.build_at_root().map_err(|e| fail(2, e))?;
            let wd = weight_decomposition(&v).map_err(|e| fail(3, e))?;
            let audit = v.presentation().and_then(|p| p.check_relations());
            let out = json!({
                "l": l,
                "dim": ResModule::dim(&v),
                "weights": weights_json(wd.into_iter().map(|(w, vs)| (w, vs.len())).collect()),
                "audit": if audit.is_ok() { "pass" } else { "fail" },
                "provenance": serde_json::to_value(v.provenance()).unwrap(),
            });
            if let Err(e) = audit {
                return Err(fail(3, format!("relation audit failed: {}", e)));
            }
            Ok((out, 0))
        }
        Descriptor::Generic { .. } => {
            let m = d.build_generic().map_err(|e| fail(2, e))?;
            let mut w = BTreeMap::new();
            for &x in m.weights() {
                *w.entry(x).or_insert(0) += 1;
            }
            m.check_relations().map_err(|e| fail(3, format!("relation audit failed: {}", e)))?;
            Ok((
                json!({
                    "l": 0,
                    "dim": m.dim(),
                    "weights": weights_json(w),
                    "audit": "pass",
                    "provenance": serde_json::to_value(m.provenance()).unwrap(),
                }),
                0,
            ))
        }
    }
}

fn poly_json<F: WeightField>(p: &DrinfeldPolynomial<F>, c: &HighestWeightCertificate<F>, index: usize, count: usize) -> Value {
    json!({
        "plus": p.plus_text(),
        "minus": p.minus_text(),
        "plus_coeffs": p.plus.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "minus_coeffs": p.minus.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "weight": p.weight,
        "degree": p.degree(),
        "reciprocity": p.reciprocity_holds(),
        "certificate": serde_json::to_value(c).unwrap(),
        "index": index,
        "certificates": count,
    })
}

fn drinfeld_on<T: OpSource + ?Sized>(v: &T, index: Option<usize>) -> Outcome {
    let certs = highest_weight_vectors(v).map_err(|e| fail(4, e))?;
    let i = match (index, certs.len()) {
        (_, 0) => return Err(fail(4, "no highest-weight certificate")),
        (Some(i), n) if i >= n => return Err(fail(4, format!("certificate index {} out of range ({} found)", i, n))),
        (Some(i), _) => i,
        (None, 1) => 0,
        (None, n) => return Err(fail(4, format!("{} highest-weight certificates (reducible module); pass --index", n))),
    };
    let p = extract_polynomial(v, &certs[i]).map_err(|e| fail(4, e))?;
    if !p.reciprocity_holds() {
        return Err(fail(3, format!("reciprocity fails: plus {} minus {}", p.plus_text(), p.minus_text())));
    }
    let mut out = poly_json(&p, &certs[i], i, certs.len());
    out["l"] = json!(v.order());
    let bad = p.shape_violations();
    if !bad.is_empty() {
        out["shape_violations"] = json!(bad);
    }
    Ok((out, 0))
}

fn drinfeld(d: &Descriptor, index: Option<usize>) -> Outcome {
    match d {
        Descriptor::AtRoot { .. } => drinfeld_on(&d.build_at_root().map_err(|e| fail(2, e))?, index),
        Descriptor::Generic { .. } => {
            let g = GenericModule::new(d.build_generic().map_err(|e| fail(2, e))?).map_err(|e| fail(2, e))?;
            drinfeld_on(&g, index)
        }
    }
}

fn gens(gs: &[String], l: u32) -> Result<Vec<Cyclo>, Failure> {
    gs.iter().map(|g| qaffine::ring::parse::parse_cyclo(g, l).map_err(|e| fail(2, e))).collect()
}

fn factor(text: &str, l: u32, gs: &[String]) -> Outcome {
    let p = parse_poly(text, l, &gens(gs, l)?).map_err(|e| fail(2, e))?;
    let (p0, p1) = factor_p0_p1(&p);
    let segs = decompose_into_segments(&p0).map_err(|e| fail(2, e))?;
    let params = canonical_params(&p).map_err(|e| fail(2, e))?;
    let plan = construction_plan(&p).map_err(|e| fail(2, e))?;
    Ok((
        json!({
            "l": l,
            "input": p.text(),
            "factored": p.factored_text(),
            "P0": p0.text(),
            "P1": p1.text(),
            "R": p1.orbits().iter().map(|(c, n)| json!({"c": c.to_string(), "mult": n})).collect::<Vec<_>>(),
            "segments": segs.iter().map(|s| json!({"m": s.m, "a": s.a.to_string()})).collect::<Vec<_>>(),
            "params": params.to_json(),
            "plan": plan.iter().map(factor_json).collect::<Vec<_>>(),
        }),
        0,
    ))
}

fn irreducible(d: &Descriptor) -> Outcome {
    let (l, factors) = match d {
        Descriptor::AtRoot { l, factors } => (*l, factors),
        Descriptor::Generic { .. } => return Err(fail(2, "the closure oracle works at a root of unity; give l >= 3")),
    };
    let v = d.build_at_root().map_err(|e| fail(2, e))?;
    let r = is_irreducible(&v).map_err(|e| fail(4, e))?;
    let mut out = r.summary_json();
    out["l"] = json!(l);
    out["highest_weight_kernel"] = json!(r.highest_weight_kernel);
    if let Ok(p) = predict_factors(factors, l) {
        out["predicted"] = json!(if p { "irreducible" } else { "reducible" });
    }
    Ok((out, if r.verdict == Verdict::Irreducible { 0 } else { 1 }))
}

fn classify(a: &str, b: &str, l: u32, gs: &[String]) -> Outcome {
    let g = gens(gs, l)?;
    let pa = canonical_params(&parse_poly(a, l, &g).map_err(|e| fail(2, e))?).map_err(|e| fail(2, e))?;
    let pb = canonical_params(&parse_poly(b, l, &g).map_err(|e| fail(2, e))?).map_err(|e| fail(2, e))?;
    let iso = isomorphic(&pa, &pb);
    Ok((json!({"isomorphic": iso, "a": pa.to_json(), "b": pb.to_json()}), if iso { 0 } else { 1 }))
}

fn verify(checks: &[String], rg: Ranges, mutations: bool) -> Outcome {
    let known: Vec<&str> = registry().iter().map(|c| c.name).collect();
    if let Some(bad) = checks.iter().find(|c| !known.contains(&c.as_str())) {
        return Err(fail(2, format!("unknown check {}; known: {}", bad, known.join(", "))));
    }
    let rep = run_registry(checks, &rg);
    let mut ok = rep.all_pass();
    let mut out = serde_json::to_value(&rep).unwrap();
    if mutations {
        let mut ms = Vec::new();
        for (name, m) in MUTABLE {
            let r = run_check(name, &rg, Some(m)).expect("mutable checks are registered");
            ok &= r.status != qaffine::evaluator::Status::Pass;
            ms.push(serde_json::to_value(&r).unwrap());
        }
        out["mutations"] = Value::Array(ms);
    }
    out["all_pass"] = json!(ok);
    Ok((out, if ok { 0 } else { 1 }))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Construct { descriptor } => construct(&read_descriptor(descriptor, cli.l)?),
        Cmd::Drinfeld { descriptor, index } => drinfeld(&read_descriptor(descriptor, cli.l)?, *index),
        Cmd::Factor { poly, gens } => factor(poly, order(cli.l)?, gens),
        Cmd::Irreducible { descriptor } => irreducible(&read_descriptor(descriptor, cli.l)?),
        Cmd::Classify { poly_a, poly_b, gens } => classify(poly_a, poly_b, order(cli.l)?, gens),
        Cmd::Verify { checks, max_r, max_s, max_n, rank, mutations } => {
            let rg = Ranges { r: *max_r, s: *max_s, n: *max_n, rank: *rank, ..Ranges::default() };
            verify(checks, rg, *mutations)
        }
    }
}

fn emit(cli: &Cli, v: &Value) -> Result<(), String> {
    let text = if cli.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.unwrap();
    match &cli.out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| format!("{}: {}", path, e)),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return ExitCode::SUCCESS;
            }
            println!("{}", json!({"error": e.to_string().trim(), "code": 2}));
            return ExitCode::from(2);
        }
    };
    let (v, code) = match run(&cli) {
        Ok(x) => x,
        Err(f) => (json!({"error": f.msg, "code": f.code}), f.code),
    };
    if let Err(e) = emit(&cli, &v) {
        println!("{}", json!({"error": e, "code": 2}));
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
