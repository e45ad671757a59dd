//! JSON documents for structures and cochains. Coefficients are exact
//! rationals written as `"p"` or `"p/q"`; monomials are comma-separated
//! basis names in canonical order.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochain::{Cochain, CochainError, Codomain, InnerProduct, ParityRule};
use crate::cohomology::ModuleAction;
use crate::duality::Convention;
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};
use crate::signs::Parity;
use crate::space::{normalize, GradedSpace, Kind, Word};
use crate::structures::{AlgebraStructure, StructureError, StructureKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("unknown basis name \"{name}\" in {context}; declared names are {declared}")]
    UnknownName { name: String, context: String, declared: String },
    #[error("cannot read \"{value}\" as an exact rational in {context}; write \"p\" or \"p/q\" with q nonzero")]
    Rational { value: String, context: String },
    #[error("monomial key \"{key}\" is not canonical: {fix}")]
    NonCanonical { key: String, fix: String },
    #[error("parity inconsistency: {0}")]
    Parity(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl From<CochainError> for IoError {
    fn from(e: CochainError) -> Self {
        IoError::Invalid(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub parity: u8,
}

/// One arity part: `values[monomial][target] = coefficient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Operation {
    pub arity: usize,
    pub values: BTreeMap<String, BTreeMap<String, String>>,
}

/// `action[x][m][n]` is the coefficient of `n` in `x · m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub basis: Vec<BasisEntry>,
    pub action: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub kind: StructureKind,
    #[serde(default)]
    pub convention: Convention,
    pub basis: Vec<BasisEntry>,
    pub operations: Vec<Operation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_product: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleFile>,
}

/// A space-valued cochain. The basis may be left out when the cochain is
/// read against a known structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisEntry>>,
    pub flavor: Kind,
    pub parity: u8,
    #[serde(default)]
    pub shifted: bool,
    pub operations: Vec<Operation>,
}

fn space_of(basis: &[BasisEntry]) -> Result<GradedSpace, IoError> {
    let mut entries = Vec::with_capacity(basis.len());
    for b in basis {
        let p = Parity::try_from(b.parity)
            .map_err(|_| IoError::Parity(format!("basis element \"{}\" has parity {}; use 0 or 1", b.name, b.parity)))?;
        entries.push((b.name.clone(), p));
    }
    GradedSpace::new(entries).map_err(|e| IoError::Invalid(e.to_string()))
}

fn basis_of(v: &GradedSpace) -> Vec<BasisEntry> {
    (0..v.dim()).map(|i| BasisEntry { name: v.name(i).to_string(), parity: v.parity(i).value() }).collect()
}

fn lookup(v: &GradedSpace, name: &str, context: &str) -> Result<usize, IoError> {
    v.index_of(name).ok_or_else(|| IoError::UnknownName {
        name: name.to_string(),
        context: context.to_string(),
        declared: v.names().join(", "),
    })
}

fn rational(value: &str, context: &str) -> Result<Rational, IoError> {
    parse_rational(value).ok_or_else(|| IoError::Rational { value: value.to_string(), context: context.to_string() })
}

fn key_of(v: &GradedSpace, word: &[usize]) -> String {
    word.iter().map(|&i| v.name(i)).collect::<Vec<_>>().join(",")
}

fn parse_key(v: &GradedSpace, key: &str, arity: usize, flavor: Kind) -> Result<Word, IoError> {
    let word: Word = if key.trim().is_empty() {
        Vec::new()
    } else {
        key.split(',').map(|n| lookup(v, n.trim(), &format!("key \"{key}\""))).collect::<Result<_, _>>()?
    };
    if word.len() != arity {
        return Err(IoError::Invalid(format!("key \"{key}\" has {} arguments in an arity-{arity} operation", word.len())));
    }
    match normalize(v, flavor, &word) {
        None => Err(IoError::NonCanonical {
            key: key.to_string(),
            fix: format!("the monomial vanishes in the {flavor} power; remove it"),
        }),
        Some((sign, canon)) if sign != 1 || canon != word => {
            let negate = if sign == 1 { "" } else { " and negate its coefficients" };
            Err(IoError::NonCanonical { key: key.to_string(), fix: format!("write \"{}\"{negate}", key_of(v, &canon)) })
        }
        Some(_) => Ok(word),
    }
}

fn fill(c: &mut Cochain, operations: &[Operation], describe: &dyn Fn(usize) -> String) -> Result<(), IoError> {
    let v = c.source().clone();
    let flavor = c.flavor();
    for op in operations {
        for (key, targets) in &op.values {
            let word = parse_key(&v, key, op.arity, flavor)?;
            for (target, coeff) in targets {
                let j = lookup(&v, target, &format!("the value at \"{key}\""))?;
                let x = rational(coeff, &format!("the value at \"{key}\" -> \"{target}\""))?;
                if x.is_zero() {
                    continue;
                }
                let found = v.word_parity(&word) + v.parity(j);
                if found != c.parity_at(op.arity) {
                    return Err(IoError::Parity(format!(
                        "\"{key}\" -> \"{target}\" has parity {}, but {}",
                        found.value(),
                        describe(op.arity)
                    )));
                }
                c.add_term(&word, j, x)?;
            }
        }
    }
    Ok(())
}

fn emit_operations(c: &Cochain) -> Vec<Operation> {
    let v = c.source();
    let t = c.target();
    c.components()
        .map(|(arity, comp)| {
            let values = comp
                .iter()
                .map(|(w, value)| {
                    let targets = value
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(j, x)| (t.name(j).to_string(), format_rational(x)))
                        .collect();
                    (key_of(v, w), targets)
                })
                .collect();
            Operation { arity, values }
        })
        .collect()
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn algebra_from_file(file: &AlgebraFile) -> Result<AlgebraStructure, IoError> {
    let v = space_of(&file.basis)?;
    let kind = file.kind;
    let rule = if kind.is_binary() { ParityRule::fixed(Parity::EVEN) } else { ParityRule::shifted(Parity::EVEN) };
    let mut cochain = Cochain::zero(&v, kind.flavor(), rule);
    fill(&mut cochain, &file.operations, &|k| format!("an arity-{k} operation of a {kind} structure must have parity {}", k % 2))?;
    let mut s = AlgebraStructure::new(kind, cochain, file.convention)?;
    if let Some(rows) = &file.inner_product {
        if rows.len() != v.dim() || rows.iter().any(|r| r.len() != v.dim()) {
            return Err(IoError::Invalid(format!("inner_product must be a {0}x{0} matrix", v.dim())));
        }
        let entries = rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, x)| rational(x, &format!("inner_product[{i}][{j}]"))).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let gram = Matrix::from_rows(entries).map_err(|e| IoError::Invalid(e.to_string()))?;
        let ip = InnerProduct::new(&v, gram).map_err(|e| IoError::Invalid(e.to_string()))?;
        s = s.with_inner_product(ip);
    }
    if let Some(m) = &file.module {
        let module = space_of(&m.basis)?;
        let mut matrices = vec![Matrix::zeros(module.dim(), module.dim()); v.dim()];
        for (x, cols) in &m.action {
            let i = lookup(&v, x, "the module action")?;
            for (from, images) in cols {
                let j = lookup(&module, from, &format!("the action of \"{x}\""))?;
                for (to, coeff) in images {
                    let r = lookup(&module, to, &format!("the action of \"{x}\" on \"{from}\""))?;
                    let c = rational(coeff, &format!("the action of \"{x}\" on \"{from}\" -> \"{to}\""))?;
                    if !c.is_zero() && v.parity(i) + module.parity(j) != module.parity(r) {
                        return Err(IoError::Parity(format!("\"{x}\" · \"{from}\" -> \"{to}\" does not preserve parity")));
                    }
                    matrices[i].set(r, j, c);
                }
            }
        }
        let action = ModuleAction::new(&v, module, matrices).map_err(|e| IoError::Invalid(e.to_string()))?;
        s = s.with_module(action);
    }
    Ok(s)
}

pub fn parse_algebra(text: &str) -> Result<AlgebraStructure, IoError> {
    algebra_from_file(&parse_json(text)?)
}

pub fn algebra_to_file(s: &AlgebraStructure) -> AlgebraFile {
    let v = s.space();
    let inner_product = s.inner_product.as_ref().map(|ip| {
        (0..v.dim()).map(|i| ip.gram().row(i).iter().map(format_rational).collect()).collect()
    });
    let module = s.module.as_ref().map(|m| {
        let mut action: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>> = BTreeMap::new();
        for (i, mat) in m.matrices.iter().enumerate() {
            for j in 0..m.module.dim() {
                for r in 0..m.module.dim() {
                    let c = mat.get(r, j);
                    if !c.is_zero() {
                        action
                            .entry(v.name(i).to_string())
                            .or_default()
                            .entry(m.module.name(j).to_string())
                            .or_default()
                            .insert(m.module.name(r).to_string(), format_rational(c));
                    }
                }
            }
        }
        ModuleFile { basis: basis_of(&m.module), action }
    });
    AlgebraFile {
        kind: s.kind,
        convention: s.convention,
        basis: basis_of(v),
        operations: emit_operations(&s.cochain),
        inner_product,
        module,
    }
}

pub fn emit_algebra(s: &AlgebraStructure) -> String {
    to_text(&algebra_to_file(s))
}

/// Reads a cochain; `space` supplies the basis when the file has none, and
/// must agree with it otherwise.
pub fn cochain_from_file(file: &CochainFile, space: Option<&GradedSpace>) -> Result<Cochain, IoError> {
    let v = match (&file.basis, space) {
        (Some(b), None) => space_of(b)?,
        (Some(b), Some(s)) => {
            let own = space_of(b)?;
            if &own != s {
                return Err(IoError::Invalid("the cochain's basis differs from the structure's basis".into()));
            }
            own
        }
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(IoError::Invalid("the cochain file needs a basis".into())),
    };
    let base = Parity::try_from(file.parity)
        .map_err(|_| IoError::Parity(format!("cochain parity {} must be 0 or 1", file.parity)))?;
    let rule = ParityRule { base, shifted: file.shifted };
    let mut c = Cochain::zero(&v, file.flavor, rule);
    fill(&mut c, &file.operations, &|k| format!("the cochain's arity-{k} part is declared with parity {}", rule.at(k).value()))?;
    Ok(c)
}

pub fn parse_cochain(text: &str, space: Option<&GradedSpace>) -> Result<Cochain, IoError> {
    cochain_from_file(&parse_json(text)?, space)
}

pub fn cochain_to_file(c: &Cochain) -> CochainFile {
    assert_eq!(c.codomain(), Codomain::Space, "only space-valued cochains are written as files");
    let rule = c.rule();
    CochainFile {
        basis: Some(basis_of(c.source())),
        flavor: c.flavor(),
        parity: rule.base.value(),
        shifted: rule.shifted,
        operations: emit_operations(c),
    }
}

pub fn emit_cochain(c: &Cochain) -> String {
    to_text(&cochain_to_file(c))
}

/// Values of any cochain as `{arity: {monomial: {target: coefficient}}}`,
/// for reports.
pub fn cochain_values(c: &Cochain) -> BTreeMap<usize, BTreeMap<String, BTreeMap<String, String>>> {
    emit_operations(c).into_iter().map(|op| (op.arity, op.values)).collect()
}
