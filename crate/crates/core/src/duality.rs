//! Parity reversion and the sign-twisted isomorphisms between a space and
//! its parity reversion, with checks of the sign identities they induce.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bracket::{bracket, BracketError, BracketVariant};
use crate::coalgebra::{chain_add, Chain, Extension};
use crate::cochain::{Cochain, ParityRule};
use crate::linalg::Rational;
use crate::signs::{koszul_sign, sign_pow, GradingForm, Parity, Permutation};
use crate::space::{basis_enumerate, GradedSpace, Kind};

pub use crate::space::parity_reverse;

/// Which side carries the plain odd codifferential: `LsLm` takes `W = ΠV`,
/// `Ps2Kon` takes `V = ΠW`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    LsLm,
    Ps2Kon,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::LsLm, Convention::Ps2Kon];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::LsLm => "ls_lm",
            Convention::Ps2Kon => "ps2_kon",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    ToW,
    ToV,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("cannot transport a {flavor}-flavor cochain in this direction")]
    Flavor { flavor: Kind },
    #[error("only space-valued cochains can be transported")]
    NotSpaceValued,
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

/// `(-1)^{(n-1)p_1 + (n-2)p_2 + ... + p_{n-1}}`.
pub fn eta_sign(parities: &[Parity]) -> i32 {
    let n = parities.len() as i64;
    let e: i64 = parities.iter().enumerate().map(|(j, p)| (n - 1 - j as i64) * p.value() as i64).sum();
    sign_pow(e)
}

/// The isomorphism between `T(V)` and `T(W)` (or `∧V` and `⊙W`) on
/// basis monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaMap {
    pub v: GradedSpace,
    pub w: GradedSpace,
    /// `Tensor` or `Ext`, on the `V` side.
    pub kind: Kind,
    pub convention: Convention,
}

impl EtaMap {
    pub fn new(v: &GradedSpace, kind: Kind, convention: Convention) -> Result<Self, DualityError> {
        if kind == Kind::Sym {
            return Err(DualityError::Flavor { flavor: kind });
        }
        Ok(EtaMap { v: v.clone(), w: parity_reverse(v), kind, convention })
    }

    pub fn w_kind(&self) -> Kind {
        match self.kind {
            Kind::Ext => Kind::Sym,
            k => k,
        }
    }

    /// Sign of the map on a monomial (the same in both directions).
    pub fn sign(&self, word: &[usize]) -> i32 {
        let space = match self.convention {
            Convention::LsLm => &self.v,
            Convention::Ps2Kon => &self.w,
        };
        eta_sign(&space.word_parities(word))
    }

    fn map_chain(&self, x: &Chain, to: &GradedSpace, kind: Kind) -> Chain {
        let mut out = Chain::new();
        for (w, c) in x {
            let c = if self.sign(w) == 1 { c.clone() } else { -c.clone() };
            chain_add(&mut out, to, kind, w, c);
        }
        out
    }

    pub fn forward(&self, x: &Chain) -> Chain {
        self.map_chain(x, &self.w, self.w_kind())
    }

    pub fn backward(&self, x: &Chain) -> Chain {
        self.map_chain(x, &self.v, self.kind)
    }

    fn conjugate(&self, m: &Cochain, to: &GradedSpace, kind: Kind) -> Result<Cochain, DualityError> {
        if m.codomain() != crate::cochain::Codomain::Space {
            return Err(DualityError::NotSpaceValued);
        }
        let rule = m.rule();
        let rule = ParityRule { base: rule.base.flip(), shifted: !rule.shifted };
        let mut out = Cochain::zero(to, kind, rule);
        for (_, comp) in m.components() {
            for (w, val) in comp {
                let val: Vec<Rational> = if self.sign(w) == 1 { val.clone() } else { val.iter().map(|x| -x).collect() };
                out.add_value(w, &val).expect("transport shifts parity by arity minus one");
            }
        }
        Ok(out)
    }

    /// `δ_k = η_1 ∘ m_k ∘ η_k^{-1}`.
    pub fn to_w(&self, m: &Cochain) -> Result<Cochain, DualityError> {
        if m.flavor() != self.kind || m.source() != &self.v {
            return Err(DualityError::Flavor { flavor: m.flavor() });
        }
        self.conjugate(m, &self.w, self.w_kind())
    }

    /// `m_k = η_1^{-1} ∘ δ_k ∘ η_k`.
    pub fn to_v(&self, d: &Cochain) -> Result<Cochain, DualityError> {
        if d.flavor() != self.w_kind() || d.source() != &self.w {
            return Err(DualityError::Flavor { flavor: d.flavor() });
        }
        self.conjugate(d, &self.v, self.kind)
    }

    /// `η^{-1} ∘ d̂_k ∘ η` on a `V` monomial, with `d̂_k` the plain
    /// parity-graded coderivation on the `W` side.
    pub fn conjugated_extension(&self, d: &Cochain, k: usize, word: &[usize]) -> Chain {
        let ext = Extension::new(self.w_kind(), GradingForm::Z2).expect("parity-graded extension is admissible");
        let mut x = Chain::new();
        chain_add(&mut x, &self.v, self.kind, word, Rational::from_integer(1.into()));
        let mut out = Chain::new();
        for (w, c) in self.forward(&x) {
            for (u, e) in ext.apply_component(d, k, &w) {
                chain_add(&mut out, &self.w, self.w_kind(), &u, c.clone() * e);
            }
        }
        self.backward(&out)
    }
}

/// Transports a structure map between `V` and `W`. For `ToW` the input
/// lives on `V` (tensor or exterior); for `ToV` on `W` (tensor or
/// symmetric), and `V` is its parity reversion.
pub fn eta_transport(m: &Cochain, convention: Convention, direction: Direction) -> Result<Cochain, DualityError> {
    match direction {
        Direction::ToW => EtaMap::new(m.source(), m.flavor(), convention)?.to_w(m),
        Direction::ToV => {
            let kind = match m.flavor() {
                Kind::Tensor => Kind::Tensor,
                Kind::Sym => Kind::Ext,
                Kind::Ext => return Err(DualityError::Flavor { flavor: Kind::Ext }),
            };
            EtaMap::new(&parity_reverse(m.source()), kind, convention)?.to_v(m)
        }
    }
}

/// A failing instance of a sign identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignFailure {
    pub identity: &'static str,
    pub detail: String,
}

/// `η^{-1} ∘ δ̂_k ∘ η = (-1)^{(n-k)|m_k| + c} m̂_k` on monomials of length
/// `n`, where `δ` is the transport of `m`, `m̂` the extension under the
/// first Z2×Z form and `c = n(1-k)` for `Ps2Kon`, zero otherwise.
///
/// For tensor flavor this is the bar-versus-hat relation; for exterior
/// flavor it is the restriction sign `(-1)^{(k-1)|l_l|}` with `k-1 = n-l`.
pub fn check_bar_identity(m: &Cochain, convention: Convention, bound: usize) -> Result<(), SignFailure> {
    let name = if m.flavor() == Kind::Tensor { "munot" } else { "restriction" };
    let eta = EtaMap::new(m.source(), m.flavor(), convention)
        .map_err(|e| SignFailure { identity: name, detail: e.to_string() })?;
    let d = eta.to_w(m).map_err(|e| SignFailure { identity: name, detail: e.to_string() })?;
    let hat = Extension::new(m.flavor(), GradingForm::Z2ZFirst).expect("first form is admissible");
    for k in m.arities() {
        let pk = m.parity_at(k).value() as i64;
        for n in k.max(1)..=bound {
            for word in basis_enumerate(m.source(), m.flavor(), n) {
                let lhs = eta.conjugated_extension(&d, k, &word);
                let extra = match convention {
                    Convention::LsLm => 0,
                    Convention::Ps2Kon => n as i64 * (1 - k as i64),
                };
                let s = sign_pow((n - k) as i64 * pk + extra);
                let rhs: Chain = hat
                    .apply_component(m, k, &word)
                    .into_iter()
                    .map(|(w, c)| (w, if s == 1 { c } else { -c }))
                    .collect();
                if lhs != rhs {
                    return Err(SignFailure {
                        identity: name,
                        detail: format!("arity {k} on ({})", m.source().format_word(&word)),
                    });
                }
            }
        }
    }
    Ok(())
}

/// `(-1)^{r(v)} sgn(σ) ε(σ; v) = (-1)^{r(v_σ)} ε(σ; w)` for every `σ ∈ S_n`,
/// where `w` carries the reversed parities.
pub fn check_permutation_identity(parities: &[Parity]) -> Result<(), SignFailure> {
    let n = parities.len();
    let reversed: Vec<Parity> = parities.iter().map(|p| p.flip()).collect();
    for sigma in Permutation::all(n) {
        let permuted: Vec<Parity> = (1..=n).map(|i| parities[sigma.image(i) - 1]).collect();
        let lhs = eta_sign(parities) * sigma.sign() * koszul_sign(&sigma, parities, false).expect("lengths match");
        let rhs = eta_sign(&permuted) * koszul_sign(&sigma, &reversed, false).expect("lengths match");
        if lhs != rhs {
            return Err(SignFailure {
                identity: "lma5",
                detail: format!("σ = {:?} with parities {:?}", sigma.images(), parities.iter().map(|p| p.value()).collect::<Vec<_>>()),
            });
        }
    }
    Ok(())
}

/// Reverses parity four times starting from a tensor map `d` on `W`, each
/// round transporting the map and conjugating its extension. After four
/// rounds both the map and the conjugated extension must coincide with the
/// originals.
pub fn check_four_rounds(d: &Cochain, bound: usize) -> Result<(), SignFailure> {
    let fail = |detail: String| SignFailure { identity: "four_round", detail };
    if d.flavor() != Kind::Tensor {
        return Err(fail(format!("expects a tensor map, got {}", d.flavor())));
    }
    let hat = Extension::new(Kind::Tensor, GradingForm::Z2).expect("tensor extension");
    let mut etas = Vec::new();
    let mut current = d.clone();
    for _ in 0..4 {
        let eta = EtaMap::new(&parity_reverse(current.source()), Kind::Tensor, Convention::LsLm)
            .map_err(|e| fail(e.to_string()))?;
        current = eta.to_v(&current).map_err(|e| fail(e.to_string()))?;
        etas.push(eta);
    }
    if &current != d {
        return Err(fail("the map differs after four rounds".into()));
    }
    let space = d.source();
    for k in d.arities() {
        for n in k.max(1)..=bound {
            for word in basis_enumerate(space, Kind::Tensor, n) {
                // Push the monomial through four forward maps, extend, come back.
                let mut x = Chain::new();
                chain_add(&mut x, space, Kind::Tensor, &word, Rational::from_integer(1.into()));
                for eta in etas.iter().rev() {
                    x = eta.forward(&x);
                }
                let mut y = Chain::new();
                for (w, c) in &x {
                    for (u, e) in hat.apply_component(d, k, w) {
                        chain_add(&mut y, space, Kind::Tensor, &u, c.clone() * e);
                    }
                }
                for eta in &etas {
                    y = eta.backward(&y);
                }
                if y != hat.apply_component(&current, k, &word) {
                    return Err(fail(format!("extension signs differ on ({})", space.format_word(&word))));
                }
            }
        }
    }
    Ok(())
}

/// The bracket variant that corresponds to the plain bracket on the `W`
/// side under a convention.
pub fn pulled_back_variant(convention: Convention) -> BracketVariant {
    match convention {
        Convention::LsLm => BracketVariant::ModifiedFirst,
        Convention::Ps2Kon => BracketVariant::ModifiedSecond,
    }
}

/// Compares the modified bracket on `V` with the plain parity-graded
/// bracket of the transported maps, transported back.
pub fn check_bracket_pullback(m: &Cochain, mu: &Cochain, convention: Convention) -> Result<(Cochain, Cochain), DualityError> {
    let eta = EtaMap::new(m.source(), m.flavor(), convention)?;
    let on_v = bracket(m, mu, GradingForm::Z2ZFirst, pulled_back_variant(convention))?;
    let on_w = bracket(&eta.to_w(m)?, &eta.to_w(mu)?, GradingForm::Z2, BracketVariant::Coder)?;
    Ok((on_v, eta.to_v(&on_w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn reversion_is_an_involution() {
        let v = GradedSpace::with_parities(&[0, 1]);
        assert_eq!(parity_reverse(&v).parities(), &[Parity::ODD, Parity::EVEN]);
        assert_eq!(parity_reverse(&parity_reverse(&v)), v);
    }

    #[test]
    fn nonabelian_bracket_becomes_odd_symmetric() {
        let l = fixtures::nonabelian2();
        let d = eta_transport(&l, Convention::LsLm, Direction::ToW).unwrap();
        assert_eq!(d.flavor(), Kind::Sym);
        assert!(d.source().parities().iter().all(|p| p.is_odd()));
        assert_eq!(d.parity_at(2), Parity::ODD);
        assert_eq!(d.evaluate(&[0, 1]), l.evaluate(&[0, 1]));
        let back = eta_transport(&d, Convention::LsLm, Direction::ToV).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn arity_one_is_plain_conjugation() {
        let v = GradedSpace::with_parities(&[0, 1]);
        let mut m = Cochain::zero(&v, Kind::Tensor, Parity::ODD);
        m.add_term(&[0], 1, Rational::from_integer(3.into())).unwrap();
        let d = eta_transport(&m, Convention::LsLm, Direction::ToW).unwrap();
        assert_eq!(d.evaluate(&[0]), m.evaluate(&[0]));
        assert_eq!(d.parity_at(1), Parity::ODD);
    }

    #[test]
    fn sym_input_rejected_towards_w() {
        let v = GradedSpace::with_parities(&[0]);
        let m = Cochain::zero(&v, Kind::Sym, Parity::EVEN);
        assert!(eta_transport(&m, Convention::LsLm, Direction::ToW).is_err());
    }
}
