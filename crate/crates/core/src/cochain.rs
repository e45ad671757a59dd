//! Multilinear cochains on a graded space, inner products, the tilde
//! correspondence and cyclicity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{Matrix, Rational};
use crate::signs::{sign_pow, Parity};
use crate::space::{basis_enumerate, normalize, GradedSpace, Kind, SpaceError, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("value on ({word}) has parity {found}, cochain is declared {declared}")]
    Inhomogeneous { word: String, found: Parity, declared: Parity },
    #[error("value vector has length {found}, codomain has dimension {expected}")]
    ValueLength { found: usize, expected: usize },
    #[error("cochains live on different spaces or codomains")]
    SpaceMismatch,
    #[error("flavor mismatch: {0} against {1}")]
    FlavorMismatch(Kind, Kind),
    #[error("parity mismatch in a sum of cochains")]
    ParityMismatch,
    #[error("inner product: {0}")]
    InnerProduct(String),
    #[error("operation needs a {0} cochain")]
    WrongCodomain(&'static str),
}

/// Where a cochain takes its values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Codomain {
    /// The source space itself.
    Space,
    /// The ground field.
    Scalar,
    /// Some other graded space, such as a module.
    Module,
}

/// Parity of each arity part of a cochain: `base`, plus the arity when
/// `shifted` is set. Structure maps written on V have `|m_k| = k`, which is
/// the shifted rule with even base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParityRule {
    pub base: Parity,
    pub shifted: bool,
}

impl ParityRule {
    pub fn fixed(base: Parity) -> Self {
        ParityRule { base, shifted: false }
    }

    pub fn shifted(base: Parity) -> Self {
        ParityRule { base, shifted: true }
    }

    pub fn at(self, arity: usize) -> Parity {
        if self.shifted {
            self.base + Parity::from_int(arity as i64)
        } else {
            self.base
        }
    }
}

impl From<Parity> for ParityRule {
    fn from(p: Parity) -> Self {
        ParityRule::fixed(p)
    }
}

/// A finitely supported family of multilinear maps `m_k`, each homogeneous
/// of the parity its [`ParityRule`] assigns. Values are stored on canonical
/// monomials of the flavor.
#[derive(Clone, Debug, Eq)]
pub struct Cochain {
    source: GradedSpace,
    target: GradedSpace,
    codomain: Codomain,
    flavor: Kind,
    rule: ParityRule,
    components: BTreeMap<usize, BTreeMap<Word, Vec<Rational>>>,
}

// Zero cochains compare equal whatever parity they were declared with.
impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.codomain == other.codomain
            && self.flavor == other.flavor
            && self.components == other.components
            && (self.rule == other.rule || self.components.is_empty())
    }
}

impl Cochain {
    pub fn zero(space: &GradedSpace, flavor: Kind, rule: impl Into<ParityRule>) -> Self {
        Cochain {
            source: space.clone(),
            target: space.clone(),
            codomain: Codomain::Space,
            flavor,
            rule: rule.into(),
            components: BTreeMap::new(),
        }
    }

    pub fn zero_scalar(space: &GradedSpace, flavor: Kind, rule: impl Into<ParityRule>) -> Self {
        Cochain { target: GradedSpace::scalars(), codomain: Codomain::Scalar, ..Cochain::zero(space, flavor, rule) }
    }

    pub fn zero_module(space: &GradedSpace, module: &GradedSpace, flavor: Kind, rule: impl Into<ParityRule>) -> Self {
        Cochain { target: module.clone(), codomain: Codomain::Module, ..Cochain::zero(space, flavor, rule) }
    }

    /// An empty cochain with the same space, codomain and flavor.
    pub fn zero_like(&self, rule: impl Into<ParityRule>) -> Self {
        Cochain { rule: rule.into(), components: BTreeMap::new(), ..self.clone() }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }

    pub fn flavor(&self) -> Kind {
        self.flavor
    }

    /// Parity of the arity-0 part; for unshifted cochains, of every part.
    pub fn parity(&self) -> Parity {
        self.rule.base
    }

    pub fn rule(&self) -> ParityRule {
        self.rule
    }

    pub fn parity_at(&self, arity: usize) -> Parity {
        self.rule.at(arity)
    }

    pub fn arities(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    pub fn max_arity(&self) -> Option<usize> {
        self.components.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Stored values of arity `k`, keyed by canonical monomial.
    pub fn component(&self, k: usize) -> Option<&BTreeMap<Word, Vec<Rational>>> {
        self.components.get(&k)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &BTreeMap<Word, Vec<Rational>>)> {
        self.components.iter().map(|(k, c)| (*k, c))
    }

    /// The cochain keeping only arity `k`.
    pub fn arity_part(&self, k: usize) -> Cochain {
        let mut out = self.zero_like(self.rule);
        if let Some(c) = self.components.get(&k) {
            out.components.insert(k, c.clone());
        }
        out
    }

    fn check_value(&self, word: &[usize], value: &[Rational]) -> Result<(), CochainError> {
        if value.len() != self.target.dim() {
            return Err(CochainError::ValueLength { found: value.len(), expected: self.target.dim() });
        }
        let wp = self.source.word_parity(word);
        let declared = self.rule.at(word.len());
        for (j, x) in value.iter().enumerate() {
            if !x.is_zero() && wp + self.target.parity(j) != declared {
                return Err(CochainError::Inhomogeneous {
                    word: self.source.format_word(word),
                    found: wp + self.target.parity(j),
                    declared,
                });
            }
        }
        Ok(())
    }

    /// Adds `value` to the cochain at the argument word, which may be in any
    /// order: it is normalized with the flavor's sign first.
    pub fn add_value(&mut self, word: &[usize], value: &[Rational]) -> Result<(), CochainError> {
        self.source.check_word(word)?;
        self.check_value(word, value)?;
        let Some((sign, canon)) = normalize(&self.source, self.flavor, word) else {
            return Ok(());
        };
        if value.iter().all(Zero::is_zero) {
            return Ok(());
        }
        let comp = self.components.entry(word.len()).or_default();
        let entry = comp.entry(canon.clone()).or_insert_with(|| vec![Rational::zero(); value.len()]);
        for (e, x) in entry.iter_mut().zip(value) {
            if sign == 1 {
                *e += x;
            } else {
                *e -= x;
            }
        }
        if entry.iter().all(Zero::is_zero) {
            comp.remove(&canon);
            if comp.is_empty() {
                self.components.remove(&word.len());
            }
        }
        Ok(())
    }

    /// Adds `coeff` times the `j`-th target basis vector at `word`.
    pub fn add_term(&mut self, word: &[usize], j: usize, coeff: Rational) -> Result<(), CochainError> {
        let mut v = vec![Rational::zero(); self.target.dim()];
        v[j] = coeff;
        self.add_value(word, &v)
    }

    /// Value on an arbitrary argument word.
    pub fn evaluate(&self, word: &[usize]) -> Vec<Rational> {
        let zero = || vec![Rational::zero(); self.target.dim()];
        let Some(comp) = self.components.get(&word.len()) else {
            return zero();
        };
        if self.flavor == Kind::Tensor {
            return comp.get(word).cloned().unwrap_or_else(zero);
        }
        match normalize(&self.source, self.flavor, word) {
            Some((sign, canon)) => match comp.get(&canon) {
                Some(v) if sign == 1 => v.clone(),
                Some(v) => v.iter().map(|x| -x).collect(),
                None => zero(),
            },
            None => zero(),
        }
    }

    /// Scalar value; only meaningful for scalar cochains.
    pub fn evaluate_scalar(&self, word: &[usize]) -> Rational {
        debug_assert_eq!(self.codomain, Codomain::Scalar);
        self.evaluate(word).swap_remove(0)
    }

    pub fn checked_add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.combine(other, &Rational::one())
    }

    pub fn checked_sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.combine(other, &-Rational::one())
    }

    /// `self + c * other`.
    pub fn combine(&self, other: &Cochain, c: &Rational) -> Result<Cochain, CochainError> {
        if self.source != other.source || self.target != other.target || self.codomain != other.codomain {
            return Err(CochainError::SpaceMismatch);
        }
        if self.flavor != other.flavor {
            return Err(CochainError::FlavorMismatch(self.flavor, other.flavor));
        }
        if other.is_zero() || c.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.scale(c));
        }
        if self.rule != other.rule {
            return Err(CochainError::ParityMismatch);
        }
        let mut out = self.clone();
        for (_, comp) in other.components() {
            for (w, v) in comp {
                let scaled: Vec<Rational> = v.iter().map(|x| x * c).collect();
                out.add_value(w, &scaled).expect("same space and parity");
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        if c.is_zero() {
            return self.zero_like(self.rule);
        }
        let mut out = self.clone();
        for comp in out.components.values_mut() {
            for v in comp.values_mut() {
                for x in v.iter_mut() {
                    *x *= c;
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Rational::one())
    }

    /// The same maps stored on all tensor words.
    pub fn to_tensor(&self) -> Cochain {
        self.to_flavor(Kind::Tensor)
    }

    /// Re-stores the maps in another flavor by reading values on canonical
    /// monomials of that flavor. Only faithful when the maps have the
    /// symmetry of the new flavor (or the new flavor is tensor).
    pub fn to_flavor(&self, flavor: Kind) -> Cochain {
        let mut out = Cochain { flavor, ..self.zero_like(self.rule) };
        for k in self.arities() {
            for w in basis_enumerate(&self.source, flavor, k) {
                let v = self.evaluate(&w);
                out.add_value(&w, &v).expect("same space and parity");
            }
        }
        out
    }

    /// Coordinates on the given monomials, flattened as (monomial, target index).
    pub fn coordinates(&self, basis: &[Word]) -> Vec<Rational> {
        basis.iter().flat_map(|w| self.evaluate(w)).collect()
    }
}

/// Even, graded-symmetric, nondegenerate bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    space: GradedSpace,
    gram: Matrix,
    inverse: Matrix,
}

impl InnerProduct {
    pub fn new(space: &GradedSpace, gram: Matrix) -> Result<Self, CochainError> {
        let n = space.dim();
        if gram.rows() != n || gram.cols() != n {
            return Err(CochainError::InnerProduct(format!("matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let a = gram.get(i, j);
                if a.is_zero() {
                    continue;
                }
                if space.parity(i) != space.parity(j) {
                    return Err(CochainError::InnerProduct(format!(
                        "not even: <{},{}> pairs different parities",
                        space.name(i),
                        space.name(j)
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let s = (space.parity(i) * space.parity(j)).sign();
                let expected = if s == 1 { gram.get(j, i).clone() } else { -gram.get(j, i).clone() };
                if *gram.get(i, j) != expected {
                    return Err(CochainError::InnerProduct(format!(
                        "not graded-symmetric at ({},{})",
                        space.name(i),
                        space.name(j)
                    )));
                }
            }
        }
        let inverse = gram.inverse().ok_or_else(|| CochainError::InnerProduct("degenerate".into()))?;
        Ok(InnerProduct { space: space.clone(), gram, inverse })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn basis_pair(&self, i: usize, j: usize) -> &Rational {
        self.gram.get(i, j)
    }

    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    let g = self.gram.get(i, j);
                    if !g.is_zero() {
                        acc += a * b * g;
                    }
                }
            }
        }
        acc
    }
}

fn basis_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

/// `φ̃(v_1..v_{k+1}) = <φ(v_1..v_k), v_{k+1}>`, as a scalar tensor cochain.
pub fn tilde(phi: &Cochain, ip: &InnerProduct) -> Result<Cochain, CochainError> {
    if phi.codomain != Codomain::Space {
        return Err(CochainError::WrongCodomain("space-valued"));
    }
    if phi.source != ip.space {
        return Err(CochainError::SpaceMismatch);
    }
    let n = phi.source.dim();
    let rule = ParityRule { base: phi.rule.base + Parity::from_int(phi.rule.shifted as i64), ..phi.rule };
    let mut out = Cochain::zero_scalar(&phi.source, Kind::Tensor, rule);
    for k in phi.arities() {
        for w in basis_enumerate(&phi.source, Kind::Tensor, k) {
            let v = phi.evaluate(&w);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            for last in 0..n {
                let x = ip.pair(&v, &basis_vector(n, last));
                if !x.is_zero() {
                    let mut word = w.clone();
                    word.push(last);
                    out.add_term(&word, 0, x)?;
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`tilde`]: the space-valued cochain of the given flavor with
/// `<φ(v), e_i> = f(v, e_i)`.
pub fn untilde(f: &Cochain, ip: &InnerProduct, flavor: Kind) -> Result<Cochain, CochainError> {
    if f.codomain != Codomain::Scalar {
        return Err(CochainError::WrongCodomain("scalar"));
    }
    if f.source != ip.space {
        return Err(CochainError::SpaceMismatch);
    }
    let n = f.source.dim();
    let ginv_t = ip.inverse.transpose();
    let rule = ParityRule { base: f.rule.base + Parity::from_int(f.rule.shifted as i64), ..f.rule };
    let mut out = Cochain::zero(&f.source, flavor, rule);
    for k in f.arities() {
        if k < 1 {
            continue;
        }
        for w in basis_enumerate(&f.source, flavor, k - 1) {
            let rhs: Vec<Rational> = (0..n)
                .map(|i| {
                    let mut word = w.clone();
                    word.push(i);
                    f.evaluate_scalar(&word)
                })
                .collect();
            if rhs.iter().all(Zero::is_zero) {
                continue;
            }
            let c = ginv_t.mul_vec(&rhs);
            out.add_value(&w, &c)?;
        }
    }
    Ok(out)
}

/// First tensor word (lexicographic within each arity) violating
/// `<φ(v_1..v_k), v_{k+1}> = (-1)^{k + |v_1||φ|} <v_1, φ(v_2..v_{k+1})>`.
pub fn cyclicity_violation(phi: &Cochain, ip: &InnerProduct) -> Option<Word> {
    let n = phi.source.dim();
    for k in phi.arities() {
        for w in basis_enumerate(&phi.source, Kind::Tensor, k + 1) {
            let lhs = ip.pair(&phi.evaluate(&w[..k]), &basis_vector(n, w[k]));
            let sign = sign_pow(k as i64) * (phi.source.parity(w[0]) * phi.parity_at(k)).sign();
            let rhs = ip.pair(&basis_vector(n, w[0]), &phi.evaluate(&w[1..]));
            let rhs = if sign == 1 { rhs } else { -rhs };
            if lhs != rhs {
                return Some(w);
            }
        }
    }
    None
}

pub fn is_cyclic(phi: &Cochain, ip: &InnerProduct) -> bool {
    cyclicity_violation(phi, ip).is_none()
}

/// Sign relating `f(v_1..v_{n+1})` to `f(v_2..v_{n+1}, v_1)` for a cyclic
/// scalar cochain of arity `n+1`.
fn rotation_sign(space: &GradedSpace, word: &[usize]) -> i32 {
    let n = word.len() as i64 - 1;
    let first = space.parity(word[0]);
    let rest = space.word_parity(&word[1..]);
    sign_pow(n) * (first * rest).sign()
}

/// First tensor word violating `f(v) = (-1)^{n + |v_1|(|v_2|+..)} f(v_2..v_{n+1}, v_1)`.
pub fn scalar_cyclicity_violation(f: &Cochain) -> Option<Word> {
    for k in f.arities() {
        if k == 0 {
            continue;
        }
        for w in basis_enumerate(&f.source, Kind::Tensor, k) {
            let lhs = f.evaluate_scalar(&w);
            let mut rotated = w[1..].to_vec();
            rotated.push(w[0]);
            let rhs = f.evaluate_scalar(&rotated);
            let rhs = if rotation_sign(&f.source, &w) == 1 { rhs } else { -rhs };
            if lhs != rhs {
                return Some(w);
            }
        }
    }
    None
}

pub fn is_cyclic_scalar(f: &Cochain) -> bool {
    scalar_cyclicity_violation(f).is_none()
}

/// Sum over the rotations of `f` with the signs that make the result cyclic.
pub fn cyclicize(f: &Cochain) -> Result<Cochain, CochainError> {
    if f.codomain != Codomain::Scalar {
        return Err(CochainError::WrongCodomain("scalar"));
    }
    let space = &f.source;
    let mut out = Cochain::zero_scalar(space, Kind::Tensor, f.rule);
    for k in f.arities() {
        if k == 0 {
            continue;
        }
        let n = k as i64 - 1;
        for w in basis_enumerate(space, Kind::Tensor, k) {
            let mut acc = Rational::zero();
            for i in 0..k {
                let e = (space.word_parity(&w[..i]) * space.word_parity(&w[i..])).value() as i64 + n * i as i64;
                let mut rotated = w[i..].to_vec();
                rotated.extend_from_slice(&w[..i]);
                let x = f.evaluate_scalar(&rotated);
                if sign_pow(e) == 1 {
                    acc += x;
                } else {
                    acc -= x;
                }
            }
            if !acc.is_zero() {
                out.add_term(&w, 0, acc)?;
            }
        }
    }
    Ok(out)
}

/// First tensor word and transposition position where a scalar cochain
/// fails to be graded-antisymmetric.
pub fn antisymmetry_violation(f: &Cochain) -> Option<(Word, usize)> {
    for k in f.arities() {
        for w in basis_enumerate(&f.source, Kind::Tensor, k) {
            let base = f.evaluate(&w);
            for j in 0..k.saturating_sub(1) {
                let mut swapped = w.clone();
                swapped.swap(j, j + 1);
                let s = -(f.source.parity(w[j]) * f.source.parity(w[j + 1])).sign();
                let other = f.evaluate(&swapped);
                let ok = base.iter().zip(&other).all(|(a, b)| if s == 1 { a == b } else { *a == -b.clone() });
                if !ok {
                    return Some((w, j));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn nonabelian() -> Cochain {
        let v = GradedSpace::all_even(2);
        let mut l = Cochain::zero(&v, Kind::Ext, Parity::EVEN);
        l.add_term(&[0, 1], 1, rat(1)).unwrap();
        l
    }

    #[test]
    fn evaluate_examples() {
        let l = nonabelian();
        assert_eq!(l.evaluate(&[0, 1]), vec![rat(0), rat(1)]);
        assert_eq!(l.evaluate(&[1, 0]), vec![rat(0), rat(-1)]);
        assert_eq!(l.evaluate(&[0, 0]), vec![rat(0), rat(0)]);
        let z = l.zero_like(Parity::EVEN);
        assert_eq!(z.evaluate(&[0, 1]), vec![rat(0), rat(0)]);
    }

    #[test]
    fn inhomogeneous_values_rejected() {
        let v = GradedSpace::with_parities(&[0, 1]);
        let mut c = Cochain::zero(&v, Kind::Tensor, Parity::EVEN);
        assert!(c.add_term(&[0], 1, rat(1)).is_err());
        assert!(c.add_term(&[1], 1, rat(1)).is_ok());
    }

    #[test]
    fn tilde_examples() {
        let l = nonabelian();
        let ip = InnerProduct::new(l.source(), Matrix::identity(2)).unwrap();
        let t = tilde(&l, &ip).unwrap();
        assert_eq!(t.evaluate_scalar(&[0, 1, 1]), rat(1));
        assert_eq!(untilde(&t, &ip, Kind::Ext).unwrap(), l);
        let ip2 = InnerProduct::new(l.source(), Matrix::identity(2).scale(&rat(2))).unwrap();
        let back = untilde(&t, &ip2, Kind::Ext).unwrap();
        assert_eq!(back, l.scale(&crate::linalg::ratio(1, 2)));
    }

    #[test]
    fn nonabelian_not_cyclic_for_identity_form() {
        let l = nonabelian();
        let ip = InnerProduct::new(l.source(), Matrix::identity(2)).unwrap();
        assert_eq!(cyclicity_violation(&l, &ip), Some(vec![0, 1, 1]));
    }

    #[test]
    fn inner_product_validation() {
        let v = GradedSpace::with_parities(&[1]);
        assert!(InnerProduct::new(&v, Matrix::identity(1)).is_err());
        let v = GradedSpace::with_parities(&[0, 1]);
        assert!(InnerProduct::new(&v, Matrix::from_i64(&[&[1, 1], &[1, 0]])).is_err());
        let v = GradedSpace::with_parities(&[1, 1]);
        assert!(InnerProduct::new(&v, Matrix::from_i64(&[&[0, 1], &[-1, 0]])).is_ok());
    }
}
