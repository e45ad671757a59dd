//! Coboundary matrices and cohomology with representative cocycles.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cochain::{Cochain, CochainError, ParityRule};
use crate::linalg::{independent_modulo, kernel_basis, quotient_dim, rank, LinalgError, Matrix, Rational};
use crate::par;
use crate::signs::{unshuffle_blocks, unshuffle_signs, Parity};
use crate::space::{basis_enumerate, GradedSpace, Kind, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("module action: {0}")]
    Module(String),
    #[error("{0}")]
    Invalid(String),
}

/// A left action `V ⊗ M → M`, stored as one matrix per basis vector of `V`:
/// `x_i · m_j = Σ_r act[i][r][j] m_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    pub module: GradedSpace,
    pub matrices: Vec<Matrix>,
}

impl ModuleAction {
    pub fn new(v: &GradedSpace, module: GradedSpace, matrices: Vec<Matrix>) -> Result<Self, CohomologyError> {
        if matrices.len() != v.dim() {
            return Err(CohomologyError::Module(format!("need {} action matrices, got {}", v.dim(), matrices.len())));
        }
        let d = module.dim();
        for (i, a) in matrices.iter().enumerate() {
            if a.rows() != d || a.cols() != d {
                return Err(CohomologyError::Module(format!("action of {} must be {d}x{d}", v.name(i))));
            }
            for r in 0..d {
                for j in 0..d {
                    if !a.get(r, j).is_zero() && v.parity(i) + module.parity(j) != module.parity(r) {
                        return Err(CohomologyError::Module(format!(
                            "action is not even: {}·{} has a {} component",
                            v.name(i),
                            module.name(j),
                            module.name(r)
                        )));
                    }
                }
            }
        }
        Ok(ModuleAction { module, matrices })
    }

    /// The adjoint action of a bracket on its own space.
    pub fn adjoint(l: &Cochain) -> Self {
        let v = l.source();
        let n = v.dim();
        let matrices = (0..n)
            .map(|i| {
                let mut a = Matrix::zeros(n, n);
                for j in 0..n {
                    for (r, c) in l.evaluate(&[i, j]).into_iter().enumerate() {
                        a.set(r, j, c);
                    }
                }
                a
            })
            .collect();
        ModuleAction { module: v.clone(), matrices }
    }

    /// The one-dimensional even module with zero action.
    pub fn trivial(v: &GradedSpace) -> Self {
        ModuleAction { module: GradedSpace::scalars(), matrices: vec![Matrix::zeros(1, 1); v.dim()] }
    }

    /// `x_i · m` for a coordinate vector `m`.
    pub fn act(&self, i: usize, m: &[Rational]) -> Vec<Rational> {
        self.matrices[i].mul_vec(m)
    }

    /// First basis triple `(v, w, m)` where
    /// `[v,w]·m = v·(w·m) - (-1)^{|v||w|} w·(v·m)` fails.
    pub fn relation_violation(&self, l: &Cochain) -> Option<(usize, usize, usize)> {
        let v = l.source();
        let d = self.module.dim();
        for a in 0..v.dim() {
            for b in 0..v.dim() {
                let bracket = l.evaluate(&[a, b]);
                for j in 0..d {
                    let mut e = vec![Rational::zero(); d];
                    e[j] = Rational::one();
                    let mut lhs = vec![Rational::zero(); d];
                    for (i, c) in bracket.iter().enumerate() {
                        if !c.is_zero() {
                            for (x, y) in lhs.iter_mut().zip(self.act(i, &e)) {
                                *x += c * y;
                            }
                        }
                    }
                    let ab = self.act(a, &self.act(b, &e));
                    let ba = self.act(b, &self.act(a, &e));
                    let s = (v.parity(a) * v.parity(b)).sign();
                    let ok = lhs
                        .iter()
                        .zip(ab.iter().zip(&ba))
                        .all(|(x, (p, q))| if s == 1 { *x == p - q } else { *x == p + q });
                    if !ok {
                        return Some((a, b, j));
                    }
                }
            }
        }
        None
    }
}

/// Coefficient module for Lie algebra cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Adjoint,
    Trivial,
    Module(ModuleAction),
}

impl Coefficients {
    fn template(&self, l: &Cochain, action: &ModuleAction) -> Cochain {
        match self {
            Coefficients::Adjoint => Cochain::zero(l.source(), Kind::Ext, Parity::EVEN),
            _ => Cochain::zero_module(l.source(), &action.module, Kind::Ext, Parity::EVEN),
        }
    }

    pub fn action(&self, l: &Cochain) -> ModuleAction {
        match self {
            Coefficients::Adjoint => ModuleAction::adjoint(l),
            Coefficients::Trivial => ModuleAction::trivial(l.source()),
            Coefficients::Module(a) => a.clone(),
        }
    }
}

/// The coboundary of a Lie algebra cochain with values in a module:
///
/// `dφ(v_1..v_{n+1}) = Σ_{Sh(2,n-1)} (-1)^σ ε(σ) φ([v_σ1, v_σ2], v_σ3, ..)
///   - (-1)^{n-1} Σ_{Sh(n,1)} (-1)^σ ε(σ) φ(v_σ1..v_σn) · v_σ(n+1)`
///
/// with the right action `m · a = -(-1)^{|m||a|} a · m`.
pub fn ce_coboundary(l: &Cochain, action: &ModuleAction, phi: &Cochain) -> Result<Cochain, CohomologyError> {
    let v = l.source();
    let m = &action.module;
    let mut out = phi.zero_like(phi.rule());
    for n in phi.arities() {
        let words = basis_enumerate(v, Kind::Ext, n + 1);
        let values = par::map(&words, |w| {
            let parities = v.word_parities(w);
            let mut acc = vec![Rational::zero(); m.dim()];
            if n >= 1 {
                for (first, second) in unshuffle_blocks(2, n - 1) {
                    let (koszul, perm) = unshuffle_signs(&first, &parities);
                    let sign = koszul * perm;
                    let br = l.evaluate(&[w[first[0]], w[first[1]]]);
                    for (j, c) in br.into_iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut arg = vec![j];
                        arg.extend(second.iter().map(|&i| w[i]));
                        for (a, x) in acc.iter_mut().zip(phi.evaluate(&arg)) {
                            let t = &c * x;
                            if sign == 1 {
                                *a += t;
                            } else {
                                *a -= t;
                            }
                        }
                    }
                }
            }
            let outer = if n % 2 == 0 { 1 } else { -1 };
            for (first, second) in unshuffle_blocks(n, 1) {
                let (koszul, perm) = unshuffle_signs(&first, &parities);
                let args: Word = first.iter().map(|&i| w[i]).collect();
                let val = phi.evaluate(&args);
                let x = w[second[0]];
                for (r, c) in val.into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    // m_r · x = -(-1)^{|m_r||x|} x · m_r
                    let swap = -(m.parity(r) * v.parity(x)).sign();
                    let sign = outer * koszul * perm * swap;
                    let mut e = vec![Rational::zero(); m.dim()];
                    e[r] = Rational::one();
                    for (a, y) in acc.iter_mut().zip(action.act(x, &e)) {
                        let t = &c * y;
                        if sign == 1 {
                            *a += t;
                        } else {
                            *a -= t;
                        }
                    }
                }
            }
            acc
        });
        for (w, val) in words.iter().zip(values) {
            out.add_value(w, &val)?;
        }
    }
    Ok(out)
}

/// Basis of the cochains of one arity and parity: pairs (canonical monomial,
/// target basis index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub arity: usize,
    pub parity: Parity,
    pub basis: Vec<(Word, usize)>,
}

impl Piece {
    pub fn new(template: &Cochain, arity: usize, parity: Parity) -> Self {
        let v = template.source();
        let t = template.target();
        let basis = basis_enumerate(v, template.flavor(), arity)
            .into_iter()
            .flat_map(|w| {
                let wp = v.word_parity(&w);
                (0..t.dim()).filter(move |&j| wp + t.parity(j) == parity).map(move |j| (w.clone(), j))
            })
            .collect();
        Piece { arity, parity, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cochain(&self, template: &Cochain, coords: &[Rational]) -> Cochain {
        let mut c = template.zero_like(ParityRule::fixed(self.parity));
        for ((w, j), x) in self.basis.iter().zip(coords) {
            if !x.is_zero() {
                c.add_term(w, *j, x.clone()).expect("piece basis respects parity");
            }
        }
        c
    }

    pub fn coords(&self, c: &Cochain) -> Vec<Rational> {
        self.basis.iter().map(|(w, j)| c.evaluate(w).swap_remove(*j)).collect()
    }
}

/// Matrix of `d` from one piece to several target pieces stacked, plus
/// whether any image has components outside the targets.
pub fn matrix_of<F>(d: &F, template: &Cochain, from: &Piece, to: &[&Piece]) -> (Matrix, bool)
where
    F: Fn(&Cochain) -> Cochain + Sync,
{
    let rows: usize = to.iter().map(|p| p.dim()).sum();
    let columns = par::map_range(from.dim(), |i| {
        let mut e = vec![Rational::zero(); from.dim()];
        e[i] = Rational::one();
        let image = d(&from.cochain(template, &e));
        let col: Vec<Rational> = to.iter().flat_map(|p| p.coords(&image)).collect();
        let nonzero: usize = image.components().flat_map(|(_, c)| c.values()).map(|v| v.iter().filter(|x| !x.is_zero()).count()).sum();
        let escaped = nonzero != col.iter().filter(|x| !x.is_zero()).count();
        (col, escaped)
    });
    let escaped = columns.iter().any(|(_, e)| *e);
    let cols: Vec<Vec<Rational>> = columns.into_iter().map(|(c, _)| c).collect();
    (Matrix::from_columns(rows, &cols), escaped)
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dimension: usize,
    /// Contribution of even and odd cochains.
    pub by_parity: [usize; 2],
    pub representatives: Vec<Cochain>,
    /// `(incoming, outgoing)` coboundary matrices for each parity, restricted
    /// to the chosen subspace.
    pub matrices: Vec<(Matrix, Matrix)>,
    /// Whether incoming coboundaries land in the chosen subspace.
    pub closed: bool,
}

/// Columns spanning a subspace of a piece, in piece coordinates.
pub type Subspace<'a> = &'a (dyn Fn(&Piece) -> Matrix + Sync);

pub fn full_subspace(p: &Piece) -> Matrix {
    Matrix::identity(p.dim())
}

fn hstack(a: &Matrix, b: &Matrix) -> Matrix {
    let cols: Vec<Vec<Rational>> = (0..a.cols()).map(|c| a.column(c)).chain((0..b.cols()).map(|c| b.column(c))).collect();
    Matrix::from_columns(a.rows(), &cols)
}

struct Assembled {
    reps: Vec<Vec<Rational>>,
    closed: bool,
    cur: Matrix,
}

/// `ambient`: the differential out of the current space; `basis`: the
/// subspace; `incoming`: images of the previous subspace, in ambient
/// coordinates of the current space.
fn assemble(ambient: &Matrix, basis: &Matrix, incoming: &Matrix) -> Result<Assembled, CohomologyError> {
    let composite = ambient.mul(incoming)?;
    if !composite.is_zero() {
        return Err(LinalgError::NotAComplex { nonzero: composite.count_nonzero() }.into());
    }
    let cur = ambient.mul(basis)?;
    let closed = rank(&hstack(basis, incoming)) == rank(basis);
    let kernel: Vec<Vec<Rational>> = kernel_basis(&cur).iter().map(|k| basis.mul_vec(k)).collect();
    let image: Vec<Vec<Rational>> = (0..incoming.cols()).map(|c| incoming.column(c)).collect();
    let reps: Vec<Vec<Rational>> = independent_modulo(&image, &kernel).into_iter().map(|i| kernel[i].clone()).collect();
    if closed && basis.cols() == basis.rows() {
        debug_assert_eq!(Ok(reps.len()), quotient_dim(incoming, ambient));
    }
    Ok(Assembled { reps, closed, cur })
}

/// A complex whose differential sends arity `a` to arity `a + step` and
/// shifts parity by `shift`.
pub struct StratifiedComplex<'a, F> {
    pub template: &'a Cochain,
    pub d: F,
    pub step: usize,
    pub shift: Parity,
}

impl<F> StratifiedComplex<'_, F>
where
    F: Fn(&Cochain) -> Cochain + Sync,
{
    pub fn matrix(&self, arity: usize, parity: Parity) -> Matrix {
        let from = Piece::new(self.template, arity, parity);
        let to = Piece::new(self.template, arity + self.step, parity + self.shift);
        matrix_of(&self.d, self.template, &from, &[&to]).0
    }

    pub fn cohomology(&self, degree: usize) -> Result<CohomologyReport, CohomologyError> {
        self.cohomology_in(degree, &full_subspace)
    }

    /// Cohomology of the differential restricted to a subspace of each piece.
    pub fn cohomology_in(&self, degree: usize, sub: Subspace) -> Result<CohomologyReport, CohomologyError> {
        let mut by_parity = [0; 2];
        let mut reps = Vec::new();
        let mut matrices = Vec::new();
        let mut closed = true;
        for p in [Parity::EVEN, Parity::ODD] {
            let here = Piece::new(self.template, degree, p);
            let ambient = self.matrix(degree, p);
            let incoming = if degree >= self.step {
                let q = p + self.shift;
                let before = Piece::new(self.template, degree - self.step, q);
                self.matrix(degree - self.step, q).mul(&sub(&before))?
            } else {
                Matrix::zeros(here.dim(), 0)
            };
            let a = assemble(&ambient, &sub(&here), &incoming)?;
            closed &= a.closed;
            by_parity[p.value() as usize] = a.reps.len();
            reps.extend(a.reps.iter().map(|v| here.cochain(self.template, v)));
            matrices.push((incoming, a.cur));
        }
        Ok(CohomologyReport {
            degree,
            dimension: by_parity[0] + by_parity[1],
            by_parity,
            representatives: reps,
            matrices,
            closed,
        })
    }
}

/// Lie algebra cohomology `H^n(V, M)`.
pub fn lie_cohomology(l: &Cochain, coefficients: &Coefficients, degree: usize) -> Result<CohomologyReport, CohomologyError> {
    let action = coefficients.action(l);
    let template = coefficients.template(l, &action);
    let complex = StratifiedComplex {
        template: &template,
        d: |phi: &Cochain| ce_coboundary(l, &action, phi).expect("coboundary of a basis cochain"),
        step: 1,
        shift: Parity::EVEN,
    };
    complex.cohomology(degree)
}

/// Coboundary matrix of the Lie algebra complex from arity `n`, parity `p`.
pub fn ce_matrix(l: &Cochain, coefficients: &Coefficients, n: usize, p: Parity) -> Matrix {
    let action = coefficients.action(l);
    let template = coefficients.template(l, &action);
    let complex = StratifiedComplex {
        template: &template,
        d: |phi: &Cochain| ce_coboundary(l, &action, phi).expect("coboundary of a basis cochain"),
        step: 1,
        shift: Parity::EVEN,
    };
    complex.matrix(n, p)
}

/// Cohomology of the quotient complex of cochains of arity `1..=window`,
/// graded by parity plus arity minus one (mod 2).
#[derive(Clone, Debug)]
pub struct WindowReport {
    pub window: usize,
    /// Dimensions in total degree even and odd.
    pub dims: [usize; 2],
    /// Whether the differential sends some window cochain past the window.
    /// When false the window is a genuine subcomplex.
    pub truncated: bool,
    pub closed: bool,
    pub representatives: Vec<Cochain>,
}

fn block_diagonal(blocks: &[Matrix]) -> Matrix {
    let rows: usize = blocks.iter().map(Matrix::rows).sum();
    let mut cols = Vec::new();
    let mut offset = 0;
    for b in blocks {
        for c in 0..b.cols() {
            let mut col = vec![Rational::zero(); rows];
            for (r, x) in b.column(c).into_iter().enumerate() {
                col[offset + r] = x;
            }
            cols.push(col);
        }
        offset += b.rows();
    }
    Matrix::from_columns(rows, &cols)
}

pub fn window_cohomology<F>(template: &Cochain, d: F, window: usize) -> Result<WindowReport, CohomologyError>
where
    F: Fn(&Cochain) -> Cochain + Sync,
{
    window_cohomology_in(template, d, window, &full_subspace)
}

pub fn window_cohomology_in<F>(template: &Cochain, d: F, window: usize, sub: Subspace) -> Result<WindowReport, CohomologyError>
where
    F: Fn(&Cochain) -> Cochain + Sync,
{
    let pieces_of = |t: Parity| -> Vec<Piece> {
        (1..=window).map(|a| Piece::new(template, a, t + Parity::from_int(a as i64 - 1))).collect()
    };
    let mut spaces = Vec::new();
    let mut truncated = false;
    for t in [Parity::EVEN, Parity::ODD] {
        let from = pieces_of(t);
        let to = pieces_of(t.flip());
        let to_refs: Vec<&Piece> = to.iter().collect();
        let mut blocks = Vec::new();
        for f in &from {
            let (m, esc) = matrix_of(&d, template, f, &to_refs);
            truncated |= esc;
            blocks.push(m);
        }
        let rows: usize = to.iter().map(Piece::dim).sum();
        let cols: Vec<Vec<Rational>> = blocks.iter().flat_map(|m| (0..m.cols()).map(|c| m.column(c))).collect();
        let basis = block_diagonal(&from.iter().map(sub).collect::<Vec<_>>());
        spaces.push((from, Matrix::from_columns(rows, &cols), basis));
    }
    let mut dims = [0; 2];
    let mut reps = Vec::new();
    let mut closed = true;
    for t in 0..2 {
        let (pieces, ambient, basis) = &spaces[t];
        let (_, other, other_basis) = &spaces[1 - t];
        let incoming = other.mul(other_basis)?;
        let a = assemble(ambient, basis, &incoming)?;
        closed &= a.closed;
        dims[t] = a.reps.len();
        for v in a.reps {
            let mut c: Option<Cochain> = None;
            let mut offset = 0;
            for p in pieces {
                let part = p.cochain(template, &v[offset..offset + p.dim()]);
                offset += p.dim();
                if part.is_zero() {
                    continue;
                }
                c = Some(match c {
                    None => part,
                    Some(acc) => merge_parts(&acc, &part),
                });
            }
            if let Some(c) = c {
                reps.push(c);
            }
        }
    }
    Ok(WindowReport { window, dims, truncated, closed, representatives: reps })
}

/// Union of cochains with disjoint arities whose parities follow the
/// shifted rule.
fn merge_parts(a: &Cochain, b: &Cochain) -> Cochain {
    let ka = a.arities()[0];
    let rule = ParityRule::shifted(a.parity_at(ka) + Parity::from_int(ka as i64));
    let mut out = a.zero_like(rule);
    for c in [a, b] {
        for (_, comp) in c.components() {
            for (w, v) in comp {
                out.add_value(w, v).expect("window parts share the shifted rule");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_coboundary_on_nonabelian() {
        let l = fixtures::nonabelian2();
        let v = l.source().clone();
        let mut id = Cochain::zero(&v, Kind::Ext, Parity::EVEN);
        id.add_term(&[0], 0, Rational::one()).unwrap();
        id.add_term(&[1], 1, Rational::one()).unwrap();
        let d = ce_coboundary(&l, &ModuleAction::adjoint(&l), &id).unwrap();
        assert_eq!(d.evaluate(&[0, 1]), vec![Rational::zero(), -Rational::one()]);
    }

    #[test]
    fn abelian_has_zero_coboundary() {
        let l = fixtures::abelian(2);
        for n in 0..4 {
            assert!(ce_matrix(&l, &Coefficients::Adjoint, n, Parity::EVEN).is_zero());
        }
    }

    #[test]
    fn one_dimensional_abelian_trivial() {
        let l = fixtures::abelian(1);
        assert_eq!(lie_cohomology(&l, &Coefficients::Trivial, 1).unwrap().dimension, 1);
        assert_eq!(lie_cohomology(&l, &Coefficients::Trivial, 2).unwrap().dimension, 0);
    }
}
