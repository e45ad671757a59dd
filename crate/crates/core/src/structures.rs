//! Algebraic structures given by structure constants: relation checks in
//! both sign conventions, cohomology, deformations and cyclic cohomology.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bracket::{bracket, BracketError, BracketVariant};
use crate::coalgebra::is_codifferential;
use crate::cochain::{is_cyclic, tilde, Cochain, CochainError, Codomain, InnerProduct, ParityRule};
use crate::cohomology::{
    ce_coboundary, lie_cohomology, matrix_of, window_cohomology, window_cohomology_in, CohomologyError, CohomologyReport, Piece,
    StratifiedComplex, WindowReport,
};
use crate::linalg::{kernel_basis, solve, Matrix, Rational};
use crate::par;
use crate::signs::{sign_pow, unshuffle_blocks, unshuffle_signs, GradingForm, Parity};
use crate::space::{basis_enumerate, GradedSpace, Kind, Word};

pub use crate::cohomology::{Coefficients, ModuleAction};
pub use crate::duality::Convention;
use crate::duality::{pulled_back_variant, EtaMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Lie,
    GradedLie,
    Assoc,
    AInf,
    LInf,
}

impl StructureKind {
    pub fn flavor(self) -> Kind {
        match self {
            StructureKind::Lie | StructureKind::GradedLie | StructureKind::LInf => Kind::Ext,
            StructureKind::Assoc | StructureKind::AInf => Kind::Tensor,
        }
    }

    /// Whether the structure has a single binary operation.
    pub fn is_binary(self) -> bool {
        !matches!(self, StructureKind::AInf | StructureKind::LInf)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Lie => "lie",
            StructureKind::GradedLie => "graded_lie",
            StructureKind::Assoc => "assoc",
            StructureKind::AInf => "a_inf",
            StructureKind::LInf => "l_inf",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("{kind} structure: {reason}")]
    Shape { kind: StructureKind, reason: String },
    #[error("no inner product given")]
    NoInnerProduct,
    #[error("the inner product is not invariant; first violation at ({0})")]
    NotInvariant(String),
    #[error("deformation parity: {0}")]
    Parity(String),
    #[error("module action: {0}")]
    Module(String),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraStructure {
    pub kind: StructureKind,
    pub convention: Convention,
    pub cochain: Cochain,
    pub inner_product: Option<InnerProduct>,
    pub module: Option<ModuleAction>,
}

impl AlgebraStructure {
    pub fn new(kind: StructureKind, cochain: Cochain, convention: Convention) -> Result<Self, StructureError> {
        let shape = |reason: String| StructureError::Shape { kind, reason };
        if cochain.codomain() != Codomain::Space {
            return Err(shape("the structure map must be space-valued".into()));
        }
        if cochain.flavor() != kind.flavor() {
            return Err(shape(format!("expects {} flavor, got {}", kind.flavor(), cochain.flavor())));
        }
        let v = cochain.source();
        if kind == StructureKind::Lie && v.parities().iter().any(|p| p.is_odd()) {
            return Err(shape("an ungraded Lie algebra needs an all-even basis".into()));
        }
        for k in cochain.arities() {
            if kind.is_binary() && k != 2 {
                return Err(shape(format!("has an arity-{k} operation; only arity 2 is allowed")));
            }
            if k == 0 {
                return Err(shape("arity-0 operations are not allowed".into()));
            }
            if cochain.parity_at(k) != Parity::from_int(k as i64) {
                return Err(shape(format!("the arity-{k} operation must have parity {}", k % 2)));
            }
        }
        Ok(AlgebraStructure { kind, convention, cochain, inner_product: None, module: None })
    }

    pub fn with_inner_product(mut self, ip: InnerProduct) -> Self {
        self.inner_product = Some(ip);
        self
    }

    pub fn with_module(mut self, module: ModuleAction) -> Self {
        self.module = Some(module);
        self
    }

    pub fn space(&self) -> &GradedSpace {
        self.cochain.source()
    }

    /// The bracket variant defining the differential `D(φ) = {φ, m}`.
    pub fn variant(&self) -> BracketVariant {
        match self.kind.flavor() {
            Kind::Ext => BracketVariant::ModifiedFirst,
            _ => pulled_back_variant(self.convention),
        }
    }

    pub fn differential(&self, phi: &Cochain) -> Result<Cochain, BracketError> {
        bracket(phi, &self.cochain, GradingForm::Z2ZFirst, self.variant())
    }

    /// The single arity of the structure map, if there is one.
    pub fn single_arity(&self) -> Option<usize> {
        match self.cochain.arities()[..] {
            [k] => Some(k),
            _ => None,
        }
    }

    /// Lowest cochain arity considered: binary structures include arity 0.
    fn lowest_arity(&self) -> usize {
        if self.kind.is_binary() {
            0
        } else {
            1
        }
    }
}

/// Signed composition `Σ outer(.., inner(..), ..)` appearing in the
/// defining relations, at total arity `n`, on every basis word.
///
/// `inner_rule` gives the parities used in the signs for the inner map.
/// When `t` is given, the inner map is `t·inner` and the value returned is
/// the coefficient of `t`.
fn composition(
    outer: &Cochain,
    inner: &Cochain,
    inner_rule: ParityRule,
    convention: Convention,
    n: usize,
    t: Option<Parity>,
) -> Vec<(Word, Vec<Rational>)> {
    let v = outer.source();
    let flavor = outer.flavor();
    let words = basis_enumerate(v, flavor, n);
    let values = par::map(&words, |w| {
        let mut acc = vec![Rational::zero(); v.dim()];
        let mut add = |sign: i32, val: Vec<Rational>| {
            for (a, x) in acc.iter_mut().zip(val) {
                if sign == 1 {
                    *a += x;
                } else {
                    *a -= x;
                }
            }
        };
        let parities = v.word_parities(w);
        for k in inner.arities() {
            if k == 0 || k > n {
                continue;
            }
            let l = n + 1 - k;
            if outer.component(l).is_none() {
                continue;
            }
            let pk = inner_rule.at(k).value() as i64;
            let pl = outer.parity_at(l).value() as i64;
            let t_sign = |prefix: i64| t.map_or(1, |t| sign_pow(t.value() as i64 * (pl + prefix)));
            match flavor {
                Kind::Tensor => {
                    for i in 0..=n - k {
                        let prefix = v.word_parity(&w[..i]).value() as i64;
                        let mut e = prefix * pk + (i * (k - 1)) as i64 + (n - k) as i64 * pk;
                        if convention == Convention::Ps2Kon {
                            e += n as i64 * (1 - k as i64);
                        }
                        let sign = sign_pow(e) * t_sign(prefix);
                        for (j, c) in inner.evaluate(&w[i..i + k]).into_iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut arg = w[..i].to_vec();
                            arg.push(j);
                            arg.extend_from_slice(&w[i + k..]);
                            add(sign, outer.evaluate(&arg).into_iter().map(|x| x * &c).collect());
                        }
                    }
                }
                _ => {
                    // outer has arity l here playing the role of the outer map
                    let mut e = (l as i64 - 1) * pk;
                    if convention == Convention::Ps2Kon {
                        e += n as i64 + 1;
                    }
                    for (first, second) in unshuffle_blocks(k, n - k) {
                        let (koszul, perm) = unshuffle_signs(&first, &parities);
                        let sign = sign_pow(e) * koszul * perm * t_sign(0);
                        let args: Word = first.iter().map(|&i| w[i]).collect();
                        for (j, c) in inner.evaluate(&args).into_iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut arg = vec![j];
                            arg.extend(second.iter().map(|&i| w[i]));
                            add(sign, outer.evaluate(&arg).into_iter().map(|x| x * &c).collect());
                        }
                    }
                }
            }
        }
        acc
    });
    words.into_iter().zip(values).collect()
}

fn nonzero_terms(terms: Vec<(Word, Vec<Rational>)>) -> impl Iterator<Item = (Word, Vec<Rational>)> {
    terms.into_iter().filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
}

/// A nonzero value of a defining relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub arity: usize,
    pub word: Word,
    pub value: Vec<Rational>,
}

/// Evaluates the defining relations on all basis words of arity `1..=bound`.
pub fn relation_residuals(m: &Cochain, convention: Convention, bound: usize) -> Vec<Residual> {
    let mut out = Vec::new();
    for n in 1..=bound {
        for (word, value) in nonzero_terms(composition(m, m, m.rule(), convention, n, None)) {
            out.push(Residual { arity: n, word, value });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub residuals: Vec<Residual>,
    /// Verdict of the transported codifferential test on the reversed side.
    pub codifferential: bool,
    /// First basis triple where a module action relation fails.
    pub module_violation: Option<(usize, usize, usize)>,
}

impl StructureReport {
    pub fn relations_hold(&self) -> bool {
        self.residuals.is_empty()
    }

    /// Relations hold and both routes agree.
    pub fn passes(&self) -> bool {
        self.relations_hold() && self.codifferential && self.module_violation.is_none()
    }

    pub fn routes_agree(&self) -> bool {
        self.relations_hold() == self.codifferential
    }
}

/// Checks the defining relations up to arity `bound`, and independently
/// whether the transported map is an odd codifferential.
pub fn check_structure(s: &AlgebraStructure, bound: usize) -> StructureReport {
    let residuals = relation_residuals(&s.cochain, s.convention, bound);
    // Exterior structures are compared in the picture whose relation sign is
    // (k-1)l; the other sign has the same zero set.
    let convention = if s.kind.flavor() == Kind::Ext { Convention::LsLm } else { s.convention };
    let eta = EtaMap::new(s.space(), s.kind.flavor(), convention).expect("tensor or exterior flavor");
    let d = eta.to_w(&s.cochain).expect("structure map lives on V");
    let codifferential = is_codifferential(&d, eta.w_kind(), GradingForm::Z2, bound)
        .expect("parity-graded extension is admissible")
        .holds();
    let module_violation = s.module.as_ref().and_then(|m| m.relation_violation(&s.cochain));
    StructureReport { residuals, codifferential, module_violation }
}

/// Compares the relation sets with signs `(k-1)l` and `k(l-1)` for an
/// exterior structure: at each arity `n` they must agree up to the global
/// sign `(-1)^{n+1}`, hence have the same zero set.
pub fn check_convention_equivalence(s: &AlgebraStructure, bound: usize) -> Result<bool, StructureError> {
    if s.kind.flavor() != Kind::Ext {
        return Err(StructureError::Shape { kind: s.kind, reason: "only exterior structures have equivalent conventions".into() });
    }
    for n in 1..=bound {
        let a = composition(&s.cochain, &s.cochain, s.cochain.rule(), Convention::LsLm, n, None);
        let b = composition(&s.cochain, &s.cochain, s.cochain.rule(), Convention::Ps2Kon, n, None);
        let global = sign_pow(n as i64 + 1);
        for ((_, x), (_, y)) in a.iter().zip(&b) {
            let same = x.iter().zip(y).all(|(p, q)| if global == 1 { p == q } else { *p == -q.clone() });
            let zero_a = x.iter().all(Zero::is_zero);
            let zero_b = y.iter().all(Zero::is_zero);
            if !same || zero_a != zero_b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ordinary cohomology. Binary structures stratify by arity and report
/// degree `degree`; for Lie-type structures the coefficients are used.
pub fn cohomology(s: &AlgebraStructure, coefficients: &Coefficients, degree: usize) -> Result<CohomologyReport, StructureError> {
    match s.kind {
        StructureKind::Lie | StructureKind::GradedLie => Ok(lie_cohomology(&s.cochain, coefficients, degree)?),
        _ => {
            if *coefficients != Coefficients::Adjoint {
                return Err(StructureError::Module("only adjoint coefficients are available for this structure".into()));
            }
            let k = s.single_arity().ok_or_else(|| StructureError::Shape {
                kind: s.kind,
                reason: "has several arities; use the window cohomology".into(),
            })?;
            let template = s.cochain.zero_like(Parity::EVEN);
            let complex = StratifiedComplex {
                template: &template,
                d: |phi: &Cochain| s.differential(phi).expect("compatible basis cochain"),
                step: k - 1,
                shift: Parity::from_int(k as i64),
            };
            Ok(complex.cohomology(degree)?)
        }
    }
}

/// Cohomology on cochains of arity `1..=window`; exact only when the
/// report is not truncated.
pub fn window(s: &AlgebraStructure, window: usize) -> Result<WindowReport, StructureError> {
    let template = s.cochain.zero_like(Parity::EVEN);
    Ok(window_cohomology(&template, |phi: &Cochain| s.differential(phi).expect("compatible basis cochain"), window)?)
}

/// Basis of the cyclic cochains in a piece: the kernel of the rotation
/// conditions on the associated scalar cochains.
pub fn cyclic_basis(template: &Cochain, ip: &InnerProduct, piece: &Piece) -> Matrix {
    let v = template.source();
    let n = piece.arity;
    let words = basis_enumerate(v, Kind::Tensor, n + 1);
    let columns = par::map_range(piece.dim(), |i| {
        let mut e = vec![Rational::zero(); piece.dim()];
        e[i] = Rational::one();
        let f = tilde(&piece.cochain(template, &e), ip).expect("space-valued basis cochain");
        words
            .iter()
            .map(|w| {
                let rotated: Word = w[1..].iter().chain(&w[..1]).copied().collect();
                let head = v.parity(w[0]).value() as i64;
                let rest = v.word_parity(&w[1..]).value() as i64;
                let s = sign_pow(n as i64 + head * rest);
                let a = f.evaluate_scalar(w);
                let b = f.evaluate_scalar(&rotated);
                if s == 1 {
                    a - b
                } else {
                    a + b
                }
            })
            .collect::<Vec<_>>()
    });
    let conditions = Matrix::from_columns(words.len(), &columns);
    let kernel = kernel_basis(&conditions);
    Matrix::from_columns(piece.dim(), &kernel)
}

fn invariant_inner_product(s: &AlgebraStructure) -> Result<&InnerProduct, StructureError> {
    let ip = s.inner_product.as_ref().ok_or(StructureError::NoInnerProduct)?;
    if let Some(w) = crate::cochain::cyclicity_violation(&s.cochain, ip) {
        return Err(StructureError::NotInvariant(s.space().format_word(&w)));
    }
    Ok(ip)
}

/// Cohomology of the differential restricted to cyclic cochains.
pub fn cyclic_cohomology(s: &AlgebraStructure, degree: usize) -> Result<CohomologyReport, StructureError> {
    let ip = invariant_inner_product(s)?;
    let k = s.single_arity().ok_or_else(|| StructureError::Shape {
        kind: s.kind,
        reason: "has several arities; use the cyclic window cohomology".into(),
    })?;
    let template = s.cochain.zero_like(Parity::EVEN);
    let complex = StratifiedComplex {
        template: &template,
        d: |phi: &Cochain| s.differential(phi).expect("compatible basis cochain"),
        step: k - 1,
        shift: Parity::from_int(k as i64),
    };
    let sub = |p: &Piece| cyclic_basis(&template, ip, p);
    Ok(complex.cohomology_in(degree, &sub)?)
}

pub fn cyclic_window(s: &AlgebraStructure, window: usize) -> Result<WindowReport, StructureError> {
    let ip = invariant_inner_product(s)?;
    let template = s.cochain.zero_like(Parity::EVEN);
    let sub = |p: &Piece| cyclic_basis(&template, ip, p);
    Ok(window_cohomology_in(&template, |phi: &Cochain| s.differential(phi).expect("compatible basis cochain"), window, &sub)?)
}

/// Checks `tilde(dφ) = d(tilde φ)` on a basis of the cyclic cochains of
/// arity `degree`, the right side computed with trivial coefficients.
/// Returns the first failing basis cochain.
pub fn intertwining_violation(s: &AlgebraStructure, degree: usize) -> Result<Option<Cochain>, StructureError> {
    if s.kind.flavor() != Kind::Ext || !s.kind.is_binary() {
        return Err(StructureError::Shape { kind: s.kind, reason: "needs a Lie bracket".into() });
    }
    let ip = invariant_inner_product(s)?;
    let l = &s.cochain;
    let adjoint = ModuleAction::adjoint(l);
    let trivial = ModuleAction::trivial(l.source());
    let template = l.zero_like(Parity::EVEN);
    for p in [Parity::EVEN, Parity::ODD] {
        let piece = Piece::new(&template, degree, p);
        let basis = cyclic_basis(&template, ip, &piece);
        for c in 0..basis.cols() {
            let phi = piece.cochain(&template, &basis.column(c));
            let lhs = tilde(&ce_coboundary(l, &adjoint, &phi)?, ip)?.to_flavor(Kind::Ext);
            let rhs = ce_coboundary(l, &trivial, &tilde(&phi, ip)?.to_flavor(Kind::Ext))?;
            if lhs != rhs {
                return Ok(Some(phi));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct DeformationReport {
    pub t_parity: Parity,
    /// `{φ, m} = 0`.
    pub cocycle: bool,
    /// `m + tφ` satisfies the relations modulo `t²`.
    pub relations_mod_t2: bool,
    /// `φ = D(λ)` has a solution.
    pub trivial: bool,
    pub primitive: Option<Cochain>,
}

impl DeformationReport {
    pub fn routes_agree(&self) -> bool {
        self.cocycle == self.relations_mod_t2
    }
}

/// The parity of `t` that makes `m + tφ` a structure of the same kind.
pub fn default_t_parity(phi: &Cochain) -> Option<Parity> {
    let k = *phi.arities().first()?;
    Some(phi.parity_at(k) + Parity::from_int(k as i64))
}

pub fn deformation_check(
    s: &AlgebraStructure,
    phi: &Cochain,
    t_parity: Option<Parity>,
    bound: usize,
) -> Result<DeformationReport, StructureError> {
    if phi.flavor() != s.cochain.flavor() || phi.source() != s.space() || phi.codomain() != Codomain::Space {
        return Err(StructureError::Parity("the deformation must be a space-valued cochain of the structure's flavor".into()));
    }
    let t = match t_parity.or_else(|| default_t_parity(phi)) {
        Some(t) => t,
        None => {
            return Ok(DeformationReport {
                t_parity: Parity::EVEN,
                cocycle: true,
                relations_mod_t2: true,
                trivial: true,
                primitive: Some(s.cochain.zero_like(Parity::EVEN)),
            })
        }
    };
    for k in phi.arities() {
        if phi.parity_at(k) != t + Parity::from_int(k as i64) {
            return Err(StructureError::Parity(format!(
                "arity {k} has parity {}, but a parameter of parity {} needs {}",
                phi.parity_at(k).value(),
                t.value(),
                (t + Parity::from_int(k as i64)).value()
            )));
        }
    }
    let cocycle = s.differential(phi)?.is_zero();

    let top = phi.max_arity().unwrap_or(0) + s.cochain.max_arity().unwrap_or(1) - 1;
    let mut relations_mod_t2 = relation_residuals(&s.cochain, s.convention, bound.max(top)).is_empty();
    let combined = ParityRule::shifted(Parity::EVEN);
    for n in 1..=bound.max(top) {
        let outer = composition(phi, &s.cochain, combined, s.convention, n, None);
        let inner = composition(&s.cochain, phi, combined, s.convention, n, Some(t));
        for ((_, a), (_, b)) in outer.iter().zip(&inner) {
            if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                relations_mod_t2 = false;
            }
        }
    }

    let (trivial, primitive) = solve_primitive(s, phi, t)?;
    Ok(DeformationReport { t_parity: t, cocycle, relations_mod_t2, trivial, primitive })
}

/// Looks for `λ` with `D(λ) = φ` among cochains of every arity that can
/// reach the top arity of `φ`.
fn solve_primitive(s: &AlgebraStructure, phi: &Cochain, t: Parity) -> Result<(bool, Option<Cochain>), StructureError> {
    let top = phi.max_arity().unwrap_or(0);
    let lam_rule = ParityRule::shifted(t.flip());
    let out_rule = ParityRule::shifted(t);
    let template = s.cochain.zero_like(Parity::EVEN);
    let reach = top + s.cochain.max_arity().unwrap_or(1);
    // D raises arity by at least (lowest structure arity - 1).
    let rise = s.cochain.arities().first().map_or(1, |k| k - 1);
    let sources: Vec<Piece> = (s.lowest_arity()..=top.saturating_sub(rise)).map(|a| Piece::new(&template, a, lam_rule.at(a))).collect();
    let targets: Vec<Piece> = (s.lowest_arity()..=reach).map(|a| Piece::new(&template, a, out_rule.at(a))).collect();
    let target_refs: Vec<&Piece> = targets.iter().collect();
    let d = |c: &Cochain| s.differential(c).expect("compatible basis cochain");
    let mut cols = Vec::new();
    for p in &sources {
        let (m, _) = matrix_of(&d, &template, p, &target_refs);
        cols.extend((0..m.cols()).map(|c| m.column(c)));
    }
    let rows: usize = targets.iter().map(Piece::dim).sum();
    let system = Matrix::from_columns(rows, &cols);
    let rhs: Vec<Rational> = targets.iter().flat_map(|p| p.coords(phi)).collect();
    match solve(&system, &rhs) {
        None => Ok((false, None)),
        Some(x) => {
            let mut lam = s.cochain.zero_like(lam_rule);
            let mut offset = 0;
            for p in &sources {
                for ((w, j), c) in p.basis.iter().zip(&x[offset..offset + p.dim()]) {
                    if !c.is_zero() {
                        lam.add_term(w, *j, c.clone())?;
                    }
                }
                offset += p.dim();
            }
            Ok((true, Some(lam)))
        }
    }
}

/// `D(D(φ))` for the unmodified first-form bracket, the failure law's
/// subject.
pub fn unmodified_square(phi: &Cochain, m: &Cochain) -> Result<Cochain, BracketError> {
    let once = bracket(phi, m, GradingForm::Z2ZFirst, BracketVariant::Coder)?;
    bracket(&once, m, GradingForm::Z2ZFirst, BracketVariant::Coder)
}

/// The plain first-form self-bracket `[m, m]`.
pub fn self_bracket(m: &Cochain) -> Result<Cochain, BracketError> {
    bracket(m, m, GradingForm::Z2ZFirst, BracketVariant::Coder)
}

/// Whether `φ` is cyclic for the structure's inner product.
pub fn is_invariant_cochain(s: &AlgebraStructure, phi: &Cochain) -> Result<bool, StructureError> {
    let ip = s.inner_product.as_ref().ok_or(StructureError::NoInnerProduct)?;
    Ok(is_cyclic(phi, ip))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn lie(l: Cochain) -> AlgebraStructure {
        AlgebraStructure::new(StructureKind::Lie, l, Convention::LsLm).unwrap()
    }

    #[test]
    fn lie_algebras_pass() {
        for l in [fixtures::sl2(), fixtures::heisenberg(), fixtures::nonabelian2()] {
            let r = check_structure(&lie(l), 4);
            assert!(r.passes(), "{:?}", r.residuals);
        }
    }

    #[test]
    fn perturbed_sl2_fails() {
        let mut l = fixtures::sl2();
        l.add_term(&[0, 1], 1, Rational::one()).unwrap();
        let r = check_structure(&lie(l), 3);
        assert!(!r.relations_hold());
        assert!(!r.codifferential);
        assert_eq!(r.residuals[0].arity, 3);
    }

    #[test]
    fn dgla_is_l_infinity() {
        let s = AlgebraStructure::new(StructureKind::LInf, fixtures::dgla(), Convention::LsLm).unwrap();
        assert!(check_structure(&s, 4).passes());
        assert!(check_convention_equivalence(&s, 4).unwrap());
    }

    #[test]
    fn wrong_parity_rejected() {
        let v = GradedSpace::all_even(1);
        let mut m1 = Cochain::zero(&v, Kind::Tensor, Parity::EVEN);
        m1.add_term(&[0], 0, Rational::one()).unwrap();
        assert!(AlgebraStructure::new(StructureKind::AInf, m1, Convention::LsLm).is_err());
    }
}
