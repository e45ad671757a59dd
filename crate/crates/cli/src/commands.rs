use std::path::Path;

use codiff_core::bracket::{bracket, BracketVariant};
use codiff_core::cohomology::{CohomologyReport, WindowReport};
use codiff_core::duality::{
    check_bar_identity, check_four_rounds, check_permutation_identity, eta_transport, Convention, Direction,
};
use codiff_core::fixtures;
use codiff_core::io::{self, AlgebraFile, IoError};
use codiff_core::selftest::{self, Sizes};
use codiff_core::structures::{
    check_convention_equivalence, check_structure, cohomology, cyclic_cohomology, cyclic_window, deformation_check,
    window, AlgebraStructure, Coefficients, StructureError,
};
use codiff_core::{Cochain, GradingForm, Kind, Parity, ParityRule};
use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::Verdict;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: IoError },
    #[error("{0}")]
    Input(String),
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Outcome = Result<(Verdict, Value), CliError>;

/// Shared settings from the global flags.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub bound: usize,
    pub window: usize,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

pub fn load_algebra(path: &Path) -> Result<AlgebraStructure, CliError> {
    io::parse_algebra(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn load_cochain(path: &Path, space: Option<&codiff_core::GradedSpace>) -> Result<Cochain, CliError> {
    io::parse_cochain(&read(path)?, space).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn values(c: &Cochain) -> Value {
    json!(io::cochain_values(c))
}

pub fn verify(path: &Path, st: &Settings) -> Outcome {
    let s = load_algebra(path)?;
    let r = check_structure(&s, st.bound);
    let mut verdict = if r.passes() { Verdict::Pass } else { Verdict::Fail };
    if !r.routes_agree() {
        verdict = Verdict::InternalError;
    }
    let v = s.space();
    let residuals: Vec<Value> = r
        .residuals
        .iter()
        .take(10)
        .map(|x| {
            let value: serde_json::Map<String, Value> = x
                .value
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != codiff_core::linalg::rat(0))
                .map(|(j, c)| (v.name(j).to_string(), json!(codiff_core::linalg::format_rational(c))))
                .collect();
            json!({ "arity": x.arity, "word": v.format_word(&x.word), "value": value })
        })
        .collect();
    let mut d = json!({
        "kind": s.kind.to_string(),
        "convention": s.convention.as_str(),
        "dimension": v.dim(),
        "bound": st.bound,
        "relations_hold": r.relations_hold(),
        "residual_count": r.residuals.len(),
        "residuals": residuals,
        "transported_codifferential": r.codifferential,
        "routes_agree": r.routes_agree(),
    });
    if s.kind.flavor() == Kind::Ext {
        let same = check_convention_equivalence(&s, st.bound)?;
        d["conventions_agree"] = json!(same);
        if !same {
            verdict = Verdict::InternalError;
        }
    }
    if s.module.is_some() {
        d["module_action_ok"] = json!(r.module_violation.is_none());
    }
    if let Some(ip) = &s.inner_product {
        let invariant = codiff_core::cochain::is_cyclic(&s.cochain, ip);
        d["inner_product_invariant"] = json!(invariant);
        if !invariant {
            verdict = verdict.and(Verdict::Fail);
        }
    }
    Ok((verdict, d))
}

fn cohomology_json(r: &CohomologyReport) -> Value {
    json!({
        "degree": r.degree,
        "dimension": r.dimension,
        "by_parity": { "even": r.by_parity[0], "odd": r.by_parity[1] },
        "closed": r.closed,
        "representatives": r.representatives.iter().map(values).collect::<Vec<_>>(),
    })
}

fn window_json(r: &WindowReport) -> Value {
    json!({
        "window": r.window,
        "dimension": { "even": r.dims[0], "odd": r.dims[1] },
        "truncated": r.truncated,
        "closed": r.closed,
        "representatives": r.representatives.iter().map(values).collect::<Vec<_>>(),
    })
}

fn degrees(degree: Option<usize>, st: &Settings) -> Vec<usize> {
    match degree {
        Some(n) => vec![n],
        None => (0..=st.window).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CoefficientsArg {
    Adjoint,
    Trivial,
    Module,
}

pub fn cohomology_cmd(path: &Path, degree: Option<usize>, coefficients: CoefficientsArg, st: &Settings) -> Outcome {
    let s = load_algebra(path)?;
    let coeffs = match coefficients {
        CoefficientsArg::Adjoint => Coefficients::Adjoint,
        CoefficientsArg::Trivial => Coefficients::Trivial,
        CoefficientsArg::Module => match &s.module {
            Some(m) => Coefficients::Module(m.clone()),
            None => return Err(CliError::Input("the file declares no module".into())),
        },
    };
    if let Coefficients::Module(m) = &coeffs {
        if let Some((a, b, j)) = m.relation_violation(&s.cochain) {
            return Err(CliError::Input(format!("the module action fails the bracket relation at ({a}, {b}) on module vector {j}")));
        }
    }
    let coeff_name = format!("{coefficients:?}").to_lowercase();
    if s.single_arity().is_none() {
        if coeffs != Coefficients::Adjoint {
            return Err(CliError::Input("structures with several arities take adjoint coefficients only".into()));
        }
        let r = window(&s, st.window)?;
        let verdict = if r.closed { Verdict::Pass } else { Verdict::InternalError };
        return Ok((verdict, json!({ "coefficients": coeff_name, "window": window_json(&r) })));
    }
    let mut verdict = Verdict::Pass;
    let mut out = Vec::new();
    for n in degrees(degree, st) {
        let r = cohomology(&s, &coeffs, n)?;
        if !r.closed {
            verdict = Verdict::InternalError;
        }
        out.push(cohomology_json(&r));
    }
    Ok((verdict, json!({ "coefficients": coeff_name, "degrees": out })))
}

pub fn cyclic_cmd(path: &Path, degree: Option<usize>, st: &Settings) -> Outcome {
    let s = load_algebra(path)?;
    if s.single_arity().is_none() {
        let r = cyclic_window(&s, st.window)?;
        let verdict = if r.closed { Verdict::Pass } else { Verdict::InternalError };
        return Ok((verdict, json!({ "window": window_json(&r) })));
    }
    let mut verdict = Verdict::Pass;
    let mut out = Vec::new();
    for n in degrees(degree, st) {
        let r = cyclic_cohomology(&s, n)?;
        if !r.closed {
            verdict = Verdict::InternalError;
        }
        out.push(cohomology_json(&r));
    }
    Ok((verdict, json!({ "degrees": out })))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    Coder,
    Mod1,
    Mod2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FormArg {
    Z2,
    First,
    Second,
}

pub fn bracket_cmd(a: &Path, b: &Path, variant: VariantArg, form: Option<FormArg>) -> Outcome {
    let x = load_cochain(a, None)?;
    let y = load_cochain(b, Some(x.source()))?;
    let (variant_name, variant) = match variant {
        VariantArg::Coder => ("coder", BracketVariant::Coder),
        VariantArg::Mod1 => ("mod1", BracketVariant::ModifiedFirst),
        VariantArg::Mod2 => ("mod2", BracketVariant::ModifiedSecond),
    };
    let (form_name, form) = match form {
        Some(FormArg::Z2) => ("z2", GradingForm::Z2),
        Some(FormArg::First) => ("first", GradingForm::Z2ZFirst),
        Some(FormArg::Second) => ("second", GradingForm::Z2ZSecond),
        None if x.flavor() == Kind::Sym => ("z2", GradingForm::Z2),
        None => ("first", GradingForm::Z2ZFirst),
    };
    let r = bracket(&x, &y, form, variant).map_err(|e| CliError::Input(e.to_string()))?;
    let doc = serde_json::to_value(io::cochain_to_file(&r)).expect("cochain documents serialize");
    Ok((Verdict::Pass, json!({ "variant": variant_name, "form": form_name, "is_zero": r.is_zero(), "result": doc })))
}

pub fn deform_cmd(path: &Path, cochain: &Path, t_parity: Option<u8>, st: &Settings) -> Outcome {
    let s = load_algebra(path)?;
    let phi = load_cochain(cochain, Some(s.space()))?;
    let t = match t_parity {
        None => None,
        Some(p) => Some(Parity::try_from(p).map_err(CliError::Input)?),
    };
    let r = deformation_check(&s, &phi, t, st.bound)?;
    let verdict = if !r.routes_agree() {
        Verdict::InternalError
    } else if r.cocycle {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut d = json!({
        "t_parity": r.t_parity.value(),
        "cocycle": r.cocycle,
        "relations_mod_t2": r.relations_mod_t2,
        "routes_agree": r.routes_agree(),
        "trivial": r.trivial,
    });
    if let Some(p) = &r.primitive {
        d["primitive"] = values(p);
    }
    if let Some(ip) = &s.inner_product {
        d["preserves_inner_product"] = json!(codiff_core::cochain::is_cyclic(&phi, ip));
    }
    Ok((verdict, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DirectionArg {
    ToW,
    ToV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConventionArg {
    LsLm,
    Ps2Kon,
}

/// Accepts a structure file (transported to `W`) or a cochain file.
pub fn transport_cmd(path: &Path, direction: DirectionArg, convention: Option<ConventionArg>) -> Outcome {
    let text = read(path)?;
    let (m, file_convention) = match serde_json::from_str::<AlgebraFile>(&text) {
        Ok(f) => {
            let s = io::algebra_from_file(&f).map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
            (s.cochain, Some(s.convention))
        }
        Err(_) => (load_cochain(path, None)?, None),
    };
    let convention = match convention {
        Some(ConventionArg::LsLm) => Convention::LsLm,
        Some(ConventionArg::Ps2Kon) => Convention::Ps2Kon,
        None => file_convention.unwrap_or_default(),
    };
    let (dir, back) = match direction {
        DirectionArg::ToW => (Direction::ToW, Direction::ToV),
        DirectionArg::ToV => (Direction::ToV, Direction::ToW),
    };
    let out = eta_transport(&m, convention, dir).map_err(|e| CliError::Input(e.to_string()))?;
    let round_trip = eta_transport(&out, convention, back).map(|x| x == m).unwrap_or(false);
    let verdict = if round_trip { Verdict::Pass } else { Verdict::InternalError };
    let doc = serde_json::to_value(io::cochain_to_file(&out)).expect("cochain documents serialize");
    Ok((
        verdict,
        json!({
            "direction": if dir == Direction::ToW { "to-w" } else { "to-v" },
            "convention": convention.as_str(),
            "source_flavor": m.flavor().to_string(),
            "target_flavor": out.flavor().to_string(),
            "round_trip": round_trip,
            "result": doc,
        }),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum WhichArg {
    Munot,
    Lma5,
    FourRound,
    Restriction,
    All,
}

pub fn signs_cmd(which: WhichArg, trials: usize, st: &Settings) -> Outcome {
    let all = [WhichArg::Munot, WhichArg::Lma5, WhichArg::FourRound, WhichArg::Restriction];
    let chosen: Vec<WhichArg> = if which == WhichArg::All { all.to_vec() } else { vec![which] };
    let mut rng = fixtures::rng(st.seed);
    let mut verdict = Verdict::Pass;
    let mut results = serde_json::Map::new();
    for w in chosen {
        let mut checks = 0;
        let mut failures = Vec::new();
        for _ in 0..trials {
            let v = fixtures::random_space(&mut rng, 2);
            let k = rng.gen_range(1..=3);
            let p = fixtures::random_parity(&mut rng);
            let outcome = match w {
                WhichArg::Munot | WhichArg::Restriction => {
                    let flavor = if w == WhichArg::Munot { Kind::Tensor } else { Kind::Ext };
                    let m = fixtures::random_cochain(&mut rng, &v, flavor, ParityRule::fixed(p), &[k], 0.7);
                    Convention::ALL.iter().try_for_each(|&c| check_bar_identity(&m, c, st.bound))
                }
                WhichArg::Lma5 => {
                    let n = rng.gen_range(1..=st.bound.max(1));
                    check_permutation_identity(&fixtures::random_parities(&mut rng, n))
                }
                _ => {
                    let d = fixtures::random_cochain(&mut rng, &v, Kind::Tensor, ParityRule::fixed(p), &[k], 0.7);
                    check_four_rounds(&d, st.bound)
                }
            };
            checks += 1;
            if let Err(f) = outcome {
                failures.push(f.detail);
            }
        }
        if !failures.is_empty() {
            verdict = Verdict::Fail;
        }
        failures.truncate(5);
        let name = match w {
            WhichArg::Munot => "munot",
            WhichArg::Lma5 => "lma5",
            WhichArg::FourRound => "four-round",
            _ => "restriction",
        };
        results.insert(name.into(), json!({ "trials": checks, "pass": failures.is_empty(), "failures": failures }));
    }
    Ok((verdict, json!({ "seed": st.seed, "bound": st.bound, "identities": results })))
}

pub fn selftest_cmd(full: bool, st: &Settings) -> Outcome {
    let sizes = if full { Sizes::FULL } else { Sizes::REDUCED };
    let results = selftest::run_all(&sizes, st.seed);
    let verdict = if results.iter().all(|r| r.passed) { Verdict::Pass } else { Verdict::Fail };
    Ok((
        verdict,
        json!({
            "seed": st.seed,
            "sizes": if full { "full" } else { "reduced" },
            "checks": results,
        }),
    ))
}
