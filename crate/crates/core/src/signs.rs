//! Parity and bidegree arithmetic, grading forms, permutations, unshuffles and
//! Koszul signs.
//!
//! Permutations use one-line image notation with 1-based images. Acting on a
//! word, `σ` sends `(x_1, ..., x_n)` to `(x_σ(1), ..., x_σ(n))`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignError {
    #[error("permutation of size {perm} applied to {parities} parities")]
    LengthMismatch { perm: usize, parities: usize },
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
}

/// An element of Z2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct Parity(u8);

impl Parity {
    pub const EVEN: Parity = Parity(0);
    pub const ODD: Parity = Parity(1);

    pub fn new(value: u8) -> Self {
        Parity(value & 1)
    }

    pub fn from_int(value: i64) -> Self {
        Parity(value.rem_euclid(2) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 == 1
    }

    pub fn is_even(self) -> bool {
        self.0 == 0
    }

    pub fn flip(self) -> Self {
        Parity(self.0 ^ 1)
    }

    /// `(-1)^self`.
    pub fn sign(self) -> i32 {
        if self.0 == 0 {
            1
        } else {
            -1
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.0
    }
}

impl TryFrom<u8> for Parity {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            0 | 1 => Ok(Parity(v)),
            _ => Err(format!("parity must be 0 or 1, got {v}")),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        Parity(self.0 & rhs.0)
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::EVEN, Add::add)
    }
}

/// `(-1)^e` for an integer exponent.
pub fn sign_pow(e: i64) -> i32 {
    Parity::from_int(e).sign()
}

/// Parity together with an external degree. A k-ary cochain has degree k - 1,
/// a word of length n has degree n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bidegree {
    pub parity: Parity,
    pub degree: i64,
}

impl Bidegree {
    pub fn new(parity: Parity, degree: i64) -> Self {
        Bidegree { parity, degree }
    }

    /// Bidegree of an arity-k map of the given parity.
    pub fn of_map(parity: Parity, arity: usize) -> Self {
        Bidegree { parity, degree: arity as i64 - 1 }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree { parity: self.parity + rhs.parity, degree: self.degree + rhs.degree }
    }
}

/// The Z2-valued symmetric pairings used for commutation signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingForm {
    /// Only parities interact.
    Z2,
    /// `<(m,n),(m',n')> = mm' + nn'`.
    Z2ZFirst,
    /// `<(m,n),(m',n')> = (m+n)(m'+n')`.
    Z2ZSecond,
}

impl GradingForm {
    pub const ALL: [GradingForm; 3] = [GradingForm::Z2, GradingForm::Z2ZFirst, GradingForm::Z2ZSecond];
}

pub fn grading_pairing(form: GradingForm, a: Bidegree, b: Bidegree) -> Parity {
    let da = Parity::from_int(a.degree);
    let db = Parity::from_int(b.degree);
    match form {
        GradingForm::Z2 => a.parity * b.parity,
        GradingForm::Z2ZFirst => a.parity * b.parity + da * db,
        GradingForm::Z2ZSecond => (a.parity + da) * (b.parity + db),
    }
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SignError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(SignError::NotAPermutation(n));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Swaps positions k and k+1 (1-based `k`).
    pub fn adjacent(n: usize, k: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(k - 1, k);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `(x_σ(1), ..., x_σ(n))`.
    pub fn apply<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| xs[i - 1].clone()).collect()
    }

    /// The permutation `i ↦ σ(τ(i))`: acting by `self` and then by `then`.
    ///
    /// With this convention `(x·σ)·τ = x·(σ.then(τ))`.
    pub fn then(&self, then: &Permutation) -> Permutation {
        Permutation { images: then.images.iter().map(|&i| self.images[i - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (pos, &img) in self.images.iter().enumerate() {
            inv[img - 1] = pos + 1;
        }
        Permutation { images: inv }
    }

    pub fn inversions(&self) -> usize {
        self.images.iter().tuple_combinations().filter(|(a, b)| a > b).count()
    }

    /// `(-1)^σ`.
    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n).permutations(n).map(|images| Permutation { images }).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.images.iter().join(","))
    }
}

/// Two ways of writing a permutation as a product of adjacent transpositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// Bring `σ(1)`, then `σ(2)`, ... into place from the left.
    LeftInsertion,
    /// Bubble-sort the target arrangement back to the identity, then reverse.
    BubbleSort,
}

/// The sequence of adjacent swaps (0-based left position of each swap)
/// carrying the identity arrangement to `(σ(1), ..., σ(n))`.
pub fn adjacent_swaps(sigma: &Permutation, how: Decomposition) -> Vec<usize> {
    let n = sigma.len();
    match how {
        Decomposition::LeftInsertion => {
            let mut current: Vec<usize> = (1..=n).collect();
            let mut swaps = Vec::new();
            for target_pos in 0..n {
                let want = sigma.images[target_pos];
                let mut j = current.iter().position(|&x| x == want).expect("valid permutation");
                while j > target_pos {
                    current.swap(j - 1, j);
                    swaps.push(j - 1);
                    j -= 1;
                }
            }
            swaps
        }
        Decomposition::BubbleSort => {
            let mut arrangement = sigma.images.clone();
            let mut swaps = Vec::new();
            for pass in 0..n {
                for j in (pass + 1..n).rev() {
                    if arrangement[j - 1] > arrangement[j] {
                        arrangement.swap(j - 1, j);
                        swaps.push(j - 1);
                    }
                }
            }
            // Sorting undoes σ; the same swaps in reverse order build it.
            swaps.reverse();
            swaps
        }
    }
}

/// `ε(σ; v_1..v_n)`, optionally multiplied by `(-1)^σ`.
pub fn koszul_sign(sigma: &Permutation, parities: &[Parity], include_perm_sign: bool) -> Result<i32, SignError> {
    koszul_sign_by(sigma, parities, include_perm_sign, Decomposition::LeftInsertion)
}

pub fn koszul_sign_by(
    sigma: &Permutation,
    parities: &[Parity],
    include_perm_sign: bool,
    how: Decomposition,
) -> Result<i32, SignError> {
    if sigma.len() != parities.len() {
        return Err(SignError::LengthMismatch { perm: sigma.len(), parities: parities.len() });
    }
    let mut arrangement: Vec<Parity> = parities.to_vec();
    let mut sign = 1;
    for j in adjacent_swaps(sigma, how) {
        if (arrangement[j] * arrangement[j + 1]).is_odd() {
            sign = -sign;
        }
        if include_perm_sign {
            sign = -sign;
        }
        arrangement.swap(j, j + 1);
    }
    Ok(sign)
}

/// Koszul sign of moving the elements at `block` positions (increasing,
/// 0-based) to the front, keeping the relative order of both blocks.
pub(crate) fn unshuffle_signs(first_block: &[usize], parities: &[Parity]) -> (i32, i32) {
    let mut koszul = Parity::EVEN;
    let mut perm = 0usize;
    let mut in_first = vec![false; parities.len()];
    for &i in first_block {
        in_first[i] = true;
    }
    for (b, &bf) in in_first.iter().enumerate() {
        if !bf {
            continue;
        }
        for (a, &af) in in_first.iter().enumerate().take(b) {
            if !af {
                koszul += parities[a] * parities[b];
                perm += 1;
            }
        }
    }
    (koszul.sign(), if perm.is_multiple_of(2) { 1 } else { -1 })
}

/// The unshuffles of type (p, q), ordered lexicographically by their first
/// block.
pub fn unshuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    (1..=n)
        .combinations(p)
        .map(|first| {
            let mut images = first.clone();
            images.extend((1..=n).filter(|i| !first.contains(i)));
            Permutation { images }
        })
        .collect()
}

/// Unshuffles as (first block, second block) of 0-based positions.
pub(crate) fn unshuffle_blocks(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = p + q;
    (0..n)
        .combinations(p)
        .map(|first| {
            let second = (0..n).filter(|i| !first.contains(i)).collect();
            (first, second)
        })
        .collect()
}
