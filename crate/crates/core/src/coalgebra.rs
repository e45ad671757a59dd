//! Reduced diagonals of the tensor, symmetric and exterior coalgebras, and
//! the extension of multilinear maps to coderivations.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::cochain::{Codomain, Cochain};
use crate::linalg::Rational;
use crate::par;
use crate::signs::{grading_pairing, unshuffle_blocks, unshuffle_signs, Bidegree, GradingForm};
#[cfg(test)]
use crate::signs::Parity;
use crate::space::{basis_enumerate, normalize, GradedSpace, Kind, Word};

/// Linear combination of canonical monomials.
pub type Chain = BTreeMap<Word, Rational>;

/// Linear combination of pairs of canonical monomials, an element of `C ⊗ C`.
pub type PairChain = BTreeMap<(Word, Word), Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoalgebraError {
    #[error("{kind} maps do not extend to coderivations under the {form:?} form")]
    Inadmissible { kind: Kind, form: GradingForm },
    #[error("cochain flavor {flavor} does not match coalgebra {kind}")]
    FlavorMismatch { flavor: Kind, kind: Kind },
    #[error("only space-valued cochains extend to coderivations")]
    NotSpaceValued,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Adds `coeff * word` after normalizing the word in the given power.
pub fn chain_add(chain: &mut Chain, space: &GradedSpace, kind: Kind, word: &[usize], coeff: Rational) {
    if let Some((sign, canon)) = normalize(space, kind, word) {
        accumulate(chain, canon, if sign == 1 { coeff } else { -coeff });
    }
}

pub fn chain_axpy(acc: &mut Chain, c: &Rational, x: &Chain) {
    for (w, v) in x {
        accumulate(acc, w.clone(), c * v);
    }
}

fn pair_add(chain: &mut PairChain, space: &GradedSpace, kind: Kind, left: &[usize], right: &[usize], coeff: Rational) {
    let Some((s1, l)) = normalize(space, kind, left) else { return };
    let Some((s2, r)) = normalize(space, kind, right) else { return };
    accumulate(chain, (l, r), if s1 * s2 == 1 { coeff } else { -coeff });
}

/// The reduced diagonal of a monomial.
pub fn diagonal(space: &GradedSpace, kind: Kind, word: &[usize]) -> PairChain {
    let n = word.len();
    let mut out = PairChain::new();
    let one = Rational::from_integer(1.into());
    match kind {
        Kind::Tensor => {
            for split in 1..n {
                pair_add(&mut out, space, kind, &word[..split], &word[split..], one.clone());
            }
        }
        Kind::Sym | Kind::Ext => {
            let parities = space.word_parities(word);
            for p in 1..n {
                for (first, second) in unshuffle_blocks(p, n - p) {
                    let (koszul, perm) = unshuffle_signs(&first, &parities);
                    let sign = if kind == Kind::Ext { koszul * perm } else { koszul };
                    let left: Word = first.iter().map(|&i| word[i]).collect();
                    let right: Word = second.iter().map(|&i| word[i]).collect();
                    pair_add(&mut out, space, kind, &left, &right, if sign == 1 { one.clone() } else { -one.clone() });
                }
            }
        }
    }
    out
}

/// Whether maps on the `kind` power extend to coderivations under `form`.
pub fn is_admissible(kind: Kind, form: GradingForm) -> bool {
    match kind {
        Kind::Tensor => true,
        Kind::Sym => form == GradingForm::Z2,
        Kind::Ext => form == GradingForm::Z2ZFirst,
    }
}

/// How multilinear maps are extended to the coalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extension {
    pub kind: Kind,
    pub form: GradingForm,
}

impl Extension {
    pub fn new(kind: Kind, form: GradingForm) -> Result<Self, CoalgebraError> {
        if is_admissible(kind, form) {
            Ok(Extension { kind, form })
        } else {
            Err(CoalgebraError::Inadmissible { kind, form })
        }
    }

    /// Builds the extension even where it fails to be a coderivation, to
    /// exhibit the failure.
    pub fn demonstration(kind: Kind, form: GradingForm) -> Self {
        Extension { kind, form }
    }

    /// The arity-`k` part of `m`, extended and applied to `word`.
    pub fn apply_component(&self, m: &Cochain, k: usize, word: &[usize]) -> Chain {
        let space = m.source();
        let n = word.len();
        let mut out = Chain::new();
        if k > n || m.component(k).is_none() {
            return out;
        }
        let m_bid = Bidegree::of_map(m.parity_at(k), k);
        let mut push = |prefix: &[usize], args: &[usize], suffix: &[usize], sign: i32| {
            let value = m.evaluate(args);
            for (j, c) in value.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut w = Vec::with_capacity(n - k + 1);
                w.extend_from_slice(prefix);
                w.push(j);
                w.extend_from_slice(suffix);
                chain_add(&mut out, space, self.kind, &w, if sign == 1 { c } else { -c });
            }
        };
        match self.kind {
            Kind::Tensor => {
                for i in 0..=n - k {
                    let prefix = &word[..i];
                    let bid = Bidegree::new(space.word_parity(prefix), i as i64);
                    let sign = grading_pairing(self.form, bid, m_bid).sign();
                    push(prefix, &word[i..i + k], &word[i + k..], sign);
                }
            }
            Kind::Sym | Kind::Ext => {
                let parities = space.word_parities(word);
                for (first, second) in unshuffle_blocks(k, n - k) {
                    let (koszul, perm) = unshuffle_signs(&first, &parities);
                    let sign = if self.kind == Kind::Ext { koszul * perm } else { koszul };
                    let args: Word = first.iter().map(|&i| word[i]).collect();
                    let rest: Word = second.iter().map(|&i| word[i]).collect();
                    push(&[], &args, &rest, sign);
                }
            }
        }
        out
    }

    /// The full coderivation `m̂ = Σ_k m̂_k` applied to `word`.
    pub fn apply(&self, m: &Cochain, word: &[usize]) -> Chain {
        let mut out = Chain::new();
        for k in m.arities() {
            let part = self.apply_component(m, k, word);
            chain_axpy(&mut out, &Rational::from_integer(1.into()), &part);
        }
        out
    }

    pub fn apply_chain(&self, m: &Cochain, x: &Chain) -> Chain {
        let mut out = Chain::new();
        for (w, c) in x {
            chain_axpy(&mut out, c, &self.apply(m, w));
        }
        out
    }

    /// Sign of moving a map of bidegree `map` past a monomial.
    fn pass_sign(&self, space: &GradedSpace, monomial: &[usize], map: Bidegree) -> i32 {
        let bid = Bidegree::new(space.word_parity(monomial), monomial.len() as i64);
        grading_pairing(self.form, bid, map).sign()
    }
}

fn check_extendable(m: &Cochain, ext: &Extension) -> Result<(), CoalgebraError> {
    if m.codomain() != Codomain::Space {
        return Err(CoalgebraError::NotSpaceValued);
    }
    if m.flavor() != ext.kind {
        return Err(CoalgebraError::FlavorMismatch { flavor: m.flavor(), kind: ext.kind });
    }
    Ok(())
}

/// A single-arity map extended to a coderivation, materialized on all
/// canonical monomials of length at most `bound`.
#[derive(Clone, Debug)]
pub struct ExtendedMap {
    pub extension: Extension,
    pub map: Cochain,
    pub arity: usize,
    pub bound: usize,
    pub values: BTreeMap<Word, Chain>,
}

impl ExtendedMap {
    pub fn bidegree(&self) -> Bidegree {
        Bidegree::of_map(self.map.parity_at(self.arity), self.arity)
    }

    /// Value on a canonical monomial of length ≤ bound.
    pub fn value(&self, word: &[usize]) -> Chain {
        self.values.get(word).cloned().unwrap_or_default()
    }
}

/// Extends the arity-`k` part of `m`, rejecting inadmissible combinations.
pub fn extend(m: &Cochain, k: usize, kind: Kind, form: GradingForm, bound: usize) -> Result<ExtendedMap, CoalgebraError> {
    let ext = Extension::new(kind, form)?;
    extend_with(m, k, ext, bound)
}

pub fn extend_with(m: &Cochain, k: usize, ext: Extension, bound: usize) -> Result<ExtendedMap, CoalgebraError> {
    check_extendable(m, &ext)?;
    let space = m.source();
    let words: Vec<Word> = (1..=bound).flat_map(|n| basis_enumerate(space, ext.kind, n)).collect();
    let part = m.arity_part(k);
    let values = par::map(&words, |w| ext.apply_component(&part, k, w));
    let values = words.into_iter().zip(values).filter(|(_, c)| !c.is_empty()).collect();
    Ok(ExtendedMap { extension: ext, map: part, arity: k, bound, values })
}

/// The part of `m̂_k` sending monomials of length `k + l - 1` to products of
/// length `l`, keyed by canonical input monomial.
pub fn restrict(m: &Cochain, k: usize, l: usize, ext: Extension) -> BTreeMap<Word, Chain> {
    let space = m.source();
    basis_enumerate(space, ext.kind, k + l - 1)
        .into_iter()
        .filter_map(|w| {
            let c = ext.apply_component(m, k, &w);
            (!c.is_empty()).then_some((w, c))
        })
        .collect()
}

/// A monomial on which `Δ∘F` and `(F⊗1 + 1⊗F)∘Δ` disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoderivationFailure {
    pub word: Word,
    pub lhs: PairChain,
    pub rhs: PairChain,
}

/// `(F⊗1 + 1⊗F)(x)` for `x ∈ C⊗C`.
fn apply_on_pairs(f: &ExtendedMap, space: &GradedSpace, x: &PairChain) -> PairChain {
    let ext = f.extension;
    let bid = f.bidegree();
    let mut out = PairChain::new();
    for ((l, r), c) in x {
        for (fl, d) in ext.apply_component(&f.map, f.arity, l) {
            accumulate(&mut out, (fl, r.clone()), c * d);
        }
        let s = ext.pass_sign(space, l, bid);
        for (fr, d) in ext.apply_component(&f.map, f.arity, r) {
            let v = c * d;
            accumulate(&mut out, (l.clone(), fr), if s == 1 { v } else { -v });
        }
    }
    out
}

/// Checks the coderivation identity on all canonical monomials of length
/// ≤ bound, reporting the shortest (then lexicographically first) failure.
pub fn verify_coderivation(f: &ExtendedMap) -> Result<(), CoderivationFailure> {
    let space = f.map.source();
    let kind = f.extension.kind;
    let words: Vec<Word> = (1..=f.bound).flat_map(|n| basis_enumerate(space, kind, n)).collect();
    let failure = par::find_first(&words, |w| {
        let mut lhs = PairChain::new();
        for (x, c) in f.value(w) {
            for (pair, d) in diagonal(space, kind, &x) {
                accumulate(&mut lhs, pair, &c * d);
            }
        }
        let rhs = apply_on_pairs(f, space, &diagonal(space, kind, w));
        (lhs != rhs).then(|| CoderivationFailure { word: w.clone(), lhs, rhs })
    });
    match failure {
        Some((_, fail)) => Err(fail),
        None => Ok(()),
    }
}

/// Nonzero values of `m̂∘m̂` on monomials of length ≤ bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CodifferentialReport {
    pub residuals: Vec<(Word, Chain)>,
}

impl CodifferentialReport {
    pub fn holds(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Whether the coderivation determined by all parts of `m` squares to zero
/// on monomials of length ≤ bound.
pub fn is_codifferential(m: &Cochain, kind: Kind, form: GradingForm, bound: usize) -> Result<CodifferentialReport, CoalgebraError> {
    let ext = Extension::new(kind, form)?;
    check_extendable(m, &ext)?;
    Ok(codifferential_residuals(m, ext, bound))
}

pub fn codifferential_residuals(m: &Cochain, ext: Extension, bound: usize) -> CodifferentialReport {
    let space = m.source();
    let words: Vec<Word> = (1..=bound).flat_map(|n| basis_enumerate(space, ext.kind, n)).collect();
    let squares = par::map(&words, |w| ext.apply_chain(m, &ext.apply(m, w)));
    CodifferentialReport { residuals: words.into_iter().zip(squares).filter(|(_, c)| !c.is_empty()).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn diagonal_examples() {
        let v = GradedSpace::all_even(2);
        assert!(diagonal(&v, Kind::Tensor, &[0]).is_empty());
        let d = diagonal(&v, Kind::Tensor, &[0, 1]);
        assert_eq!(d.len(), 1);
        assert_eq!(d.get(&(vec![0], vec![1])), Some(&rat(1)));
        let d = diagonal(&v, Kind::Sym, &[0, 1]);
        assert_eq!(d.get(&(vec![0], vec![1])), Some(&rat(1)));
        assert_eq!(d.get(&(vec![1], vec![0])), Some(&rat(1)));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn tensor_extension_of_odd_unary_map() {
        let v = GradedSpace::with_parities(&[1, 0]);
        let mut m = Cochain::zero(&v, Kind::Tensor, Parity::ODD);
        m.add_term(&[0], 1, rat(1)).unwrap();
        m.add_term(&[1], 0, rat(1)).unwrap();
        let ext = Extension::new(Kind::Tensor, GradingForm::Z2).unwrap();
        // v1 = e1 odd: m(e1)⊗e1 - e1⊗m(e1)
        let out = ext.apply(&m, &[0, 0]);
        assert_eq!(out.get(&vec![1, 0]), Some(&rat(1)));
        assert_eq!(out.get(&vec![0, 1]), Some(&rat(-1)));
    }

    #[test]
    fn admissibility_matrix() {
        assert!(Extension::new(Kind::Sym, GradingForm::Z2ZFirst).is_err());
        assert!(Extension::new(Kind::Ext, GradingForm::Z2).is_err());
        for form in GradingForm::ALL {
            assert!(Extension::new(Kind::Tensor, form).is_ok());
        }
    }

    #[test]
    fn ext_binary_map_on_length_three_has_three_terms() {
        let v = GradedSpace::all_even(3);
        let mut l = Cochain::zero(&v, Kind::Ext, Parity::EVEN);
        l.add_term(&[0, 1], 0, rat(1)).unwrap();
        l.add_term(&[0, 2], 1, rat(1)).unwrap();
        l.add_term(&[1, 2], 2, rat(1)).unwrap();
        let ext = Extension::new(Kind::Ext, GradingForm::Z2ZFirst).unwrap();
        // l(e1,e2)∧e3 - l(e1,e3)∧e2 + l(e2,e3)∧e1 = e1∧e3 - e2∧e2 + e3∧e1 = 0 + 0
        let out = ext.apply_component(&l, 2, &[0, 1, 2]);
        assert!(out.is_empty());
        let mut l2 = Cochain::zero(&v, Kind::Ext, Parity::EVEN);
        l2.add_term(&[0, 1], 0, rat(1)).unwrap();
        let out = ext.apply_component(&l2, 2, &[0, 1, 2]);
        assert_eq!(out, Chain::from([(vec![0, 2], rat(1))]));
    }
}
