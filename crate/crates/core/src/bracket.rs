//! Brackets of coderivations written on multilinear maps, the modified
//! brackets, and the bracket of cyclic cochains through an inner product.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coalgebra::{Extension, chain_add, Chain};
use crate::cochain::{
    is_cyclic_scalar, tilde, untilde, Codomain, Cochain, CochainError, InnerProduct, ParityRule,
};
use crate::linalg::Rational;
use crate::par;
use crate::signs::{grading_pairing, sign_pow, unshuffle_blocks, unshuffle_signs, Bidegree, GradingForm, Parity};
use crate::space::{basis_enumerate, Kind, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketVariant {
    /// Graded commutator of the extended coderivations.
    Coder,
    /// `{u, v} = (-1)^{deg u |v|} [u, v]`.
    ModifiedFirst,
    /// `{u, v} = (-1)^{deg u (|v| + deg v)} [u, v]`.
    ModifiedSecond,
}

impl BracketVariant {
    pub const ALL: [BracketVariant; 3] = [BracketVariant::Coder, BracketVariant::ModifiedFirst, BracketVariant::ModifiedSecond];

    /// Extra sign for the pair of components of arities `k`, `l` where the
    /// second has parity `q`.
    pub fn twist(self, k: usize, l: usize, q: Parity) -> i32 {
        let deg_u = k as i64 - 1;
        match self {
            BracketVariant::Coder => 1,
            BracketVariant::ModifiedFirst => sign_pow(deg_u * q.value() as i64),
            BracketVariant::ModifiedSecond => sign_pow(deg_u * (q.value() as i64 + l as i64 - 1)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("bracket arguments must be space-valued cochains of the same flavor on the same space")]
    Incompatible,
    #[error("bracket output has arity {arity} parts of both parities")]
    Inhomogeneous { arity: usize },
    #[error("argument is not cyclic; first violation at ({0})")]
    NotCyclic(String),
}

/// The parity rule that fits the output, given which component pairs
/// contribute.
fn output_rule(phi: &Cochain, psi: &Cochain) -> Result<ParityRule, BracketError> {
    let mut expected: BTreeMap<usize, BTreeSet<Parity>> = BTreeMap::new();
    for k in phi.arities() {
        for l in psi.arities() {
            if k + l == 0 {
                continue;
            }
            expected.entry(k + l - 1).or_default().insert(phi.parity_at(k) + psi.parity_at(l));
        }
    }
    for (&n, set) in &expected {
        if set.len() > 1 {
            return Err(BracketError::Inhomogeneous { arity: n });
        }
    }
    let (a, b) = (phi.rule(), psi.rule());
    let natural = if a.shifted || b.shifted {
        ParityRule::shifted(a.base + b.base + Parity::ODD)
    } else {
        ParityRule::fixed(a.base + b.base)
    };
    let fits = |r: ParityRule| expected.iter().all(|(&n, s)| s.contains(&r.at(n)));
    if fits(natural) {
        return Ok(natural);
    }
    let (&n0, s0) = expected.iter().next().expect("a nonfitting rule implies some contribution");
    let p0 = *s0.iter().next().unwrap();
    for r in [ParityRule::fixed(p0), ParityRule::shifted(p0 + Parity::from_int(n0 as i64))] {
        if fits(r) {
            return Ok(r);
        }
    }
    Err(BracketError::Inhomogeneous { arity: n0 })
}

/// `Σ c φ(x)` over the monomials of `x`.
fn apply_to_chain(phi: &Cochain, x: &Chain) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); phi.target().dim()];
    for (w, c) in x {
        for (acc, v) in out.iter_mut().zip(phi.evaluate(w)) {
            if !v.is_zero() {
                *acc += c * v;
            }
        }
    }
    out
}

/// `[φ, ψ]` for space-valued cochains, summing
/// `φ_k∘ψ_{lk} - (-1)^{<φ_k,ψ_l>} ψ_l∘φ_{kl}` over component pairs, with the
/// variant's twist. The form decides both the extension signs and the
/// commutation sign.
pub fn bracket(phi: &Cochain, psi: &Cochain, form: GradingForm, variant: BracketVariant) -> Result<Cochain, BracketError> {
    if phi.codomain() != Codomain::Space
        || psi.codomain() != Codomain::Space
        || phi.source() != psi.source()
        || phi.flavor() != psi.flavor()
    {
        return Err(BracketError::Incompatible);
    }
    let rule = output_rule(phi, psi)?;
    let kind = phi.flavor();
    let ext = Extension::demonstration(kind, form);
    let space = phi.source();
    let mut out = Cochain::zero(space, kind, rule);
    let mut arities = BTreeSet::new();
    for k in phi.arities() {
        for l in psi.arities() {
            if k + l > 0 {
                arities.insert(k + l - 1);
            }
        }
    }
    for n in arities {
        let words = basis_enumerate(space, kind, n);
        let values = par::map(&words, |w| {
            let mut acc = vec![Rational::zero(); space.dim()];
            for k in phi.arities() {
                if k > n + 1 {
                    continue;
                }
                let l = n + 1 - k;
                if psi.component(l).is_none() {
                    continue;
                }
                let (p, q) = (phi.parity_at(k), psi.parity_at(l));
                let twist = variant.twist(k, l, q);
                let first = apply_to_chain(phi, &ext.apply_component(psi, l, w));
                let commute = grading_pairing(form, Bidegree::of_map(p, k), Bidegree::of_map(q, l)).sign();
                let second = apply_to_chain(psi, &ext.apply_component(phi, k, w));
                for ((a, x), y) in acc.iter_mut().zip(first).zip(second) {
                    let term = x - y * Rational::from_integer(commute.into());
                    if twist == 1 {
                        *a += term;
                    } else {
                        *a -= term;
                    }
                }
            }
            acc
        });
        for (w, v) in words.iter().zip(values) {
            out.add_value(w, &v)?;
        }
    }
    Ok(out)
}

/// The sign-twisted rotation sum shared by the tensor cyclic formulas:
/// `Σ_i (-1)^{(v_1..v_i)(v_{i+1}..v_{n+1}) + in} f̃_k(g_l(v_{i+1}..v_{i+l}), v_{i+l+1}, .., v_i)`
/// with indices mod `n+1`, summed over component pairs with the extra sign
/// `extra(k, l)`.
pub(crate) fn rotation_formula(
    f_tilde: &Cochain,
    g: &Cochain,
    extra: impl Fn(usize, usize) -> i32 + Sync,
    rule: ParityRule,
) -> Result<Cochain, CochainError> {
    let space = f_tilde.source();
    let mut out = Cochain::zero_scalar(space, Kind::Tensor, rule);
    let mut sizes = BTreeSet::new();
    for kt in f_tilde.arities() {
        for l in g.arities() {
            if kt >= 1 {
                sizes.insert(kt + l - 1);
            }
        }
    }
    for size in sizes {
        let n = size - 1;
        let words = basis_enumerate(space, Kind::Tensor, size);
        let values = par::map(&words, |w| {
            let mut acc = Rational::zero();
            for kt in f_tilde.arities() {
                if kt == 0 || kt > size {
                    continue;
                }
                let k = kt - 1;
                let l = n + 1 - k;
                if g.component(l).is_none() {
                    continue;
                }
                let e = extra(k, l);
                for i in 0..=n {
                    let s = (space.word_parity(&w[..i]) * space.word_parity(&w[i..])).value() as i64 + (i * n) as i64;
                    let sign = sign_pow(s) * e;
                    let rotated: Word = w[i..].iter().chain(&w[..i]).copied().collect();
                    let inner = g.evaluate(&rotated[..l]);
                    for (j, c) in inner.into_iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut arg = vec![j];
                        arg.extend_from_slice(&rotated[l..]);
                        let x = f_tilde.evaluate_scalar(&arg) * c;
                        if sign == 1 {
                            acc += x;
                        } else {
                            acc -= x;
                        }
                    }
                }
            }
            acc
        });
        for (w, x) in words.iter().zip(values) {
            if !x.is_zero() {
                out.add_term(w, 0, x)?;
            }
        }
    }
    Ok(out)
}

/// Exterior-flavor direct formula: `Σ_{Sh(l, k)} (-1)^σ ε(σ) φ̃(ψ(v_σ(1..l)), v_σ(l+1..))`
/// for `φ` of arity `k` and `ψ` of arity `l`.
fn unshuffle_formula(phi_tilde: &Cochain, psi: &Cochain, rule: ParityRule) -> Result<Cochain, CochainError> {
    let space = phi_tilde.source();
    let mut out = Cochain::zero_scalar(space, Kind::Tensor, rule);
    let mut sizes = BTreeSet::new();
    for kt in phi_tilde.arities() {
        for l in psi.arities() {
            if kt >= 1 {
                sizes.insert(kt - 1 + l);
            }
        }
    }
    for size in sizes {
        let words = basis_enumerate(space, Kind::Tensor, size);
        let values = par::map(&words, |w| {
            let parities = space.word_parities(w);
            let mut acc = Rational::zero();
            for kt in phi_tilde.arities() {
                if kt == 0 || kt - 1 > size {
                    continue;
                }
                let k = kt - 1;
                let l = size - k;
                if psi.component(l).is_none() {
                    continue;
                }
                for (first, second) in unshuffle_blocks(l, k) {
                    let (koszul, perm) = unshuffle_signs(&first, &parities);
                    let args: Word = first.iter().map(|&i| w[i]).collect();
                    for (j, c) in psi.evaluate(&args).into_iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut arg = vec![j];
                        arg.extend(second.iter().map(|&i| w[i]));
                        let x = phi_tilde.evaluate_scalar(&arg) * c;
                        if koszul * perm == 1 {
                            acc += x;
                        } else {
                            acc -= x;
                        }
                    }
                }
            }
            acc
        });
        for (w, x) in words.iter().zip(values) {
            if !x.is_zero() {
                out.add_term(w, 0, x)?;
            }
        }
    }
    Ok(out)
}

/// Both evaluations of the bracket of two cyclic scalar cochains.
#[derive(Clone, Debug)]
pub struct CyclicBracket {
    /// Through the space-valued cochains and back.
    pub via_bracket: Cochain,
    /// From the closed formula on the scalar cochains.
    pub direct: Cochain,
}

impl CyclicBracket {
    pub fn agree(&self) -> bool {
        self.via_bracket == self.direct
    }
}

/// `[φ̃, ψ̃]` for cyclic scalar cochains. Tensor flavor uses the first
/// Z2×Z form with the variant's twist; exterior flavor uses the coderivation
/// bracket of the exterior coalgebra.
pub fn cyclic_bracket_tilde(
    phi_tilde: &Cochain,
    psi_tilde: &Cochain,
    ip: &InnerProduct,
    flavor: Kind,
    variant: BracketVariant,
) -> Result<CyclicBracket, BracketError> {
    for f in [phi_tilde, psi_tilde] {
        if let Some(w) = crate::cochain::scalar_cyclicity_violation(f) {
            return Err(BracketError::NotCyclic(f.source().format_word(&w)));
        }
        if flavor == Kind::Ext {
            if let Some((w, _)) = crate::cochain::antisymmetry_violation(f) {
                return Err(BracketError::NotCyclic(f.source().format_word(&w)));
            }
        }
    }
    debug_assert!(is_cyclic_scalar(phi_tilde) && is_cyclic_scalar(psi_tilde));
    let phi = untilde(phi_tilde, ip, flavor)?;
    let psi = untilde(psi_tilde, ip, flavor)?;
    let form = match flavor {
        Kind::Sym => GradingForm::Z2,
        _ => GradingForm::Z2ZFirst,
    };
    let b = bracket(&phi, &psi, form, variant)?;
    let via_bracket = tilde(&b, ip)?;
    let rule = via_bracket.rule();
    let direct = match flavor {
        Kind::Ext => unshuffle_formula(phi_tilde, &psi, rule)?,
        _ => rotation_formula(phi_tilde, &psi, |k, l| variant.twist(k, l, psi.parity_at(l)), rule)?,
    };
    Ok(CyclicBracket { via_bracket, direct })
}

/// Graded commutator `[F, G] = F∘G - (-1)^{<F,G>} G∘F` of the coderivations
/// extending `f` and `g`, applied to a monomial.
pub fn commutator_of_extensions(f: &Cochain, g: &Cochain, ext: Extension, word: &[usize]) -> Chain {
    let mut out = Chain::new();
    let space = f.source();
    for k in f.arities() {
        for l in g.arities() {
            let s = grading_pairing(ext.form, Bidegree::of_map(f.parity_at(k), k), Bidegree::of_map(g.parity_at(l), l)).sign();
            let fg = apply_component_chain(&ext, f, k, &ext.apply_component(g, l, word));
            let gf = apply_component_chain(&ext, g, l, &ext.apply_component(f, k, word));
            for (w, c) in fg {
                chain_add(&mut out, space, ext.kind, &w, c);
            }
            for (w, c) in gf {
                chain_add(&mut out, space, ext.kind, &w, if s == 1 { -c } else { c });
            }
        }
    }
    out
}

fn apply_component_chain(ext: &Extension, m: &Cochain, k: usize, x: &Chain) -> Chain {
    let mut out = Chain::new();
    for (w, c) in x {
        crate::coalgebra::chain_axpy(&mut out, c, &ext.apply_component(m, k, w));
    }
    out
}
