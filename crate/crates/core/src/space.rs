//! Graded vector spaces and canonical monomials of tensor, graded-symmetric
//! and graded-exterior powers.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signs::Parity;

/// A word in basis indices (0-based). In symmetric and exterior powers a
/// word stands for the product of its letters.
pub type Word = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("a graded space needs at least one basis element")]
    Empty,
    #[error("basis name {0:?} appears twice")]
    DuplicateName(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    names: Vec<String>,
    parities: Vec<Parity>,
}

impl GradedSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = (S, Parity)>) -> Result<Self, SpaceError> {
        let (names, parities): (Vec<String>, Vec<Parity>) = basis.into_iter().map(|(n, p)| (n.into(), p)).unzip();
        if names.is_empty() {
            return Err(SpaceError::Empty);
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(SpaceError::DuplicateName(n.clone()));
            }
        }
        Ok(GradedSpace { names, parities })
    }

    /// Basis `e1, e2, ...` with the given parities.
    pub fn with_parities(parities: &[u8]) -> Self {
        GradedSpace::new(parities.iter().enumerate().map(|(i, &p)| (format!("e{}", i + 1), Parity::new(p))))
            .expect("nonempty generated basis")
    }

    pub fn all_even(dim: usize) -> Self {
        GradedSpace::with_parities(&vec![0; dim])
    }

    /// The ground field as a one-dimensional even space.
    pub fn scalars() -> Self {
        GradedSpace { names: vec!["1".into()], parities: vec![Parity::EVEN] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn check_word(&self, word: &[usize]) -> Result<(), SpaceError> {
        match word.iter().find(|&&i| i >= self.dim()) {
            Some(&index) => Err(SpaceError::BadIndex { index, dim: self.dim() }),
            None => Ok(()),
        }
    }

    pub fn word_parities(&self, word: &[usize]) -> Vec<Parity> {
        word.iter().map(|&i| self.parities[i]).collect()
    }

    pub fn word_parity(&self, word: &[usize]) -> Parity {
        word.iter().map(|&i| self.parities[i]).sum()
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.names[i].as_str()).join(",")
    }
}

/// Same basis names, parities flipped.
pub fn parity_reverse(space: &GradedSpace) -> GradedSpace {
    GradedSpace { names: space.names.clone(), parities: space.parities.iter().map(|p| p.flip()).collect() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Tensor,
    Sym,
    Ext,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Tensor, Kind::Sym, Kind::Ext];
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Tensor => "tensor",
            Kind::Sym => "sym",
            Kind::Ext => "ext",
        })
    }
}

/// Sorts the word by adjacent swaps. Each swap of `u, v` multiplies the sign
/// by `(-1)^{|u||v|}`, negated again for exterior powers.
fn sort_with_sign(space: &GradedSpace, word: &[usize], antisymmetric: bool) -> (i32, Word) {
    let mut w = word.to_vec();
    let mut sign = 1;
    for pass in 0..w.len() {
        for j in (pass + 1..w.len()).rev() {
            if w[j - 1] > w[j] {
                if (space.parity(w[j - 1]) * space.parity(w[j])).is_odd() {
                    sign = -sign;
                }
                if antisymmetric {
                    sign = -sign;
                }
                w.swap(j - 1, j);
            }
        }
    }
    (sign, w)
}

fn has_forbidden_repeat(space: &GradedSpace, sorted: &[usize], forbidden: Parity) -> bool {
    sorted.windows(2).any(|p| p[0] == p[1] && space.parity(p[0]) == forbidden)
}

/// Canonical form in the exterior power, or `None` when the product vanishes.
pub fn normalize_ext(space: &GradedSpace, word: &[usize]) -> Option<(i32, Word)> {
    let (sign, w) = sort_with_sign(space, word, true);
    (!has_forbidden_repeat(space, &w, Parity::EVEN)).then_some((sign, w))
}

/// Canonical form in the symmetric power, or `None` when the product vanishes.
pub fn normalize_sym(space: &GradedSpace, word: &[usize]) -> Option<(i32, Word)> {
    let (sign, w) = sort_with_sign(space, word, false);
    (!has_forbidden_repeat(space, &w, Parity::ODD)).then_some((sign, w))
}

pub fn normalize(space: &GradedSpace, kind: Kind, word: &[usize]) -> Option<(i32, Word)> {
    match kind {
        Kind::Tensor => Some((1, word.to_vec())),
        Kind::Sym => normalize_sym(space, word),
        Kind::Ext => normalize_ext(space, word),
    }
}

pub fn is_canonical(space: &GradedSpace, kind: Kind, word: &[usize]) -> bool {
    matches!(normalize(space, kind, word), Some((1, ref w)) if w == word)
}

/// All canonical monomials of the given power in lexicographic order.
/// Arity 0 yields the single empty word.
pub fn basis_enumerate(space: &GradedSpace, kind: Kind, k: usize) -> Vec<Word> {
    let n = space.dim();
    match kind {
        Kind::Tensor if k == 0 => vec![Vec::new()],
        Kind::Tensor => (0..k).map(|_| 0..n).multi_cartesian_product().collect(),
        Kind::Sym | Kind::Ext => {
            let repeatable = if kind == Kind::Sym { Parity::EVEN } else { Parity::ODD };
            (0..n)
                .combinations_with_replacement(k)
                .filter(|w| !w.windows(2).any(|p| p[0] == p[1] && space.parity(p[0]) != repeatable))
                .collect()
        }
    }
}
