//! Named example structures and seeded random generators.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cochain::{Cochain, InnerProduct, ParityRule};
use crate::linalg::{rat, Matrix, Rational};
use crate::signs::Parity;
use crate::space::{basis_enumerate, GradedSpace, Kind};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn space(names: &[&str], parities: &[u8]) -> GradedSpace {
    GradedSpace::new(names.iter().zip(parities).map(|(n, &p)| (n.to_string(), Parity::new(p)))).expect("valid basis")
}

/// Rows `(i, j, [(k, c)])` meaning `[e_i, e_j] = Σ c e_k`.
pub type Table<'a> = [(usize, usize, &'a [(usize, i64)])];

/// Builds an ext-flavor bracket from a structure-constant table.
pub fn bracket_from_table(v: &GradedSpace, parity: Parity, table: &Table) -> Cochain {
    let mut l = Cochain::zero(v, Kind::Ext, parity);
    for &(i, j, out) in table {
        for &(k, c) in out {
            l.add_term(&[i, j], k, rat(c)).expect("consistent table");
        }
    }
    l
}

/// `sl₂` with basis `h, e, f`.
pub fn sl2() -> Cochain {
    let v = space(&["h", "e", "f"], &[0, 0, 0]);
    bracket_from_table(&v, Parity::EVEN, &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])])
}

/// Killing form of `sl₂` in the basis `h, e, f`.
pub fn sl2_killing() -> InnerProduct {
    let gram = Matrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]]);
    InnerProduct::new(sl2().source(), gram).expect("Killing form is nondegenerate")
}

/// `gl₂` with basis `h, e, f, z`, `z` central.
pub fn gl2() -> Cochain {
    let v = space(&["h", "e", "f", "z"], &[0, 0, 0, 0]);
    bracket_from_table(&v, Parity::EVEN, &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])])
}

/// Trace form of `gl₂` with `z` the identity matrix.
pub fn gl2_trace() -> InnerProduct {
    let gram = Matrix::from_i64(&[&[2, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 2]]);
    InnerProduct::new(gl2().source(), gram).expect("trace form is nondegenerate")
}

/// `osp(1|2)`: `sl₂` on `H, E, F` with the odd doublet `x, y`.
pub fn osp12() -> Cochain {
    let v = space(&["H", "E", "F", "x", "y"], &[0, 0, 0, 1, 1]);
    bracket_from_table(
        &v,
        Parity::EVEN,
        &[
            (0, 1, &[(1, 2)]),
            (0, 2, &[(2, -2)]),
            (1, 2, &[(0, 1)]),
            (0, 3, &[(3, 1)]),
            (0, 4, &[(4, -1)]),
            (1, 4, &[(3, 1)]),
            (2, 3, &[(4, 1)]),
            (3, 3, &[(1, -2)]),
            (4, 4, &[(2, 2)]),
            (3, 4, &[(0, 1)]),
        ],
    )
}

/// Invariant supersymmetric form on `osp(1|2)`.
pub fn osp12_form() -> InnerProduct {
    let gram = Matrix::from_i64(&[&[2, 0, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 0, 0, 2], &[0, 0, 0, -2, 0]]);
    InnerProduct::new(osp12().source(), gram).expect("form is nondegenerate")
}

/// Heisenberg algebra `[x, y] = z`.
pub fn heisenberg() -> Cochain {
    let v = space(&["x", "y", "z"], &[0, 0, 0]);
    bracket_from_table(&v, Parity::EVEN, &[(0, 1, &[(2, 1)])])
}

/// The two-dimensional nonabelian Lie algebra `[e1, e2] = e2`.
pub fn nonabelian2() -> Cochain {
    let v = space(&["e1", "e2"], &[0, 0]);
    bracket_from_table(&v, Parity::EVEN, &[(0, 1, &[(1, 1)])])
}

pub fn abelian(dim: usize) -> Cochain {
    Cochain::zero(&GradedSpace::all_even(dim), Kind::Ext, Parity::EVEN)
}

/// Multiplication of upper-triangular 2×2 matrices in the basis
/// `E11, E12, E22`, as a tensor cochain.
pub fn upper_triangular() -> Cochain {
    let v = space(&["E11", "E12", "E22"], &[0, 0, 0]);
    let mut m = Cochain::zero(&v, Kind::Tensor, Parity::EVEN);
    for (a, b, c) in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)] {
        m.add_term(&[a, b], c, rat(1)).expect("even product");
    }
    m
}

/// Commutative product `e_i e_j = e_max(i,j)` twisted so that it fails to
/// be associative: `e1 e1 = e2`, `e1 e2 = e2 e1 = e1`.
pub fn nonassociative() -> Cochain {
    let v = GradedSpace::all_even(2);
    let mut m = Cochain::zero(&v, Kind::Tensor, Parity::EVEN);
    m.add_term(&[0, 0], 1, rat(1)).unwrap();
    m.add_term(&[0, 1], 0, rat(1)).unwrap();
    m.add_term(&[1, 0], 0, rat(1)).unwrap();
    m
}

/// A differential graded Lie algebra on `a` (even), `b` (odd), `c` (odd)
/// written as an L∞ structure with `|l_k| = k`: `l1(a) = b`, and the only
/// nonzero brackets `[a, c] = c`, `[b, c] = 0`.
///
/// `d` is odd of arity 1 and the bracket is even of arity 2, as required.
pub fn dgla() -> Cochain {
    let v = space(&["a", "b", "c"], &[0, 1, 1]);
    let mut l = Cochain::zero(&v, Kind::Ext, ParityRule::shifted(Parity::EVEN));
    l.add_term(&[0], 1, rat(1)).unwrap();
    l.add_term(&[0, 2], 2, rat(1)).unwrap();
    l
}

/// Random coefficient in `-2..=2`, nonzero with probability `density`.
fn coeff(rng: &mut Rng8, density: f64) -> Rational {
    if rng.gen_bool(density) {
        let c: i64 = rng.gen_range(1..=2);
        if rng.gen_bool(0.5) {
            rat(c)
        } else {
            rat(-c)
        }
    } else {
        rat(0)
    }
}

/// A random space-valued cochain supported on the given arities.
pub fn random_cochain(
    rng: &mut Rng8,
    v: &GradedSpace,
    flavor: Kind,
    rule: ParityRule,
    arities: &[usize],
    density: f64,
) -> Cochain {
    let mut c = Cochain::zero(v, flavor, rule);
    fill_random(rng, &mut c, arities, density);
    c
}

pub fn random_scalar_cochain(
    rng: &mut Rng8,
    v: &GradedSpace,
    rule: ParityRule,
    arities: &[usize],
    density: f64,
) -> Cochain {
    let mut c = Cochain::zero_scalar(v, Kind::Tensor, rule);
    fill_random(rng, &mut c, arities, density);
    c
}

fn fill_random(rng: &mut Rng8, c: &mut Cochain, arities: &[usize], density: f64) {
    let v = c.source().clone();
    let target = c.target().clone();
    for &k in arities {
        let want = c.parity_at(k);
        for w in basis_enumerate(&v, c.flavor(), k) {
            let wp = v.word_parity(&w);
            for j in 0..target.dim() {
                if wp + target.parity(j) != want {
                    continue;
                }
                let x = coeff(rng, density);
                c.add_term(&w, j, x).expect("parity respected");
            }
        }
    }
}

pub fn random_parities(rng: &mut Rng8, dim: usize) -> Vec<Parity> {
    (0..dim).map(|_| Parity::new(rng.gen_range(0..2))).collect()
}

pub fn random_space(rng: &mut Rng8, max_dim: usize) -> GradedSpace {
    let dim = rng.gen_range(1..=max_dim);
    let ps: Vec<u8> = (0..dim).map(|_| rng.gen_range(0..2)).collect();
    GradedSpace::with_parities(&ps)
}

pub fn random_parity(rng: &mut Rng8) -> Parity {
    Parity::new(rng.gen_range(0..2))
}

/// A random even, graded-symmetric, nondegenerate form. Requires an even
/// number of odd basis vectors.
pub fn random_inner_product(rng: &mut Rng8, v: &GradedSpace) -> Option<InnerProduct> {
    let n = v.dim();
    let odd: Vec<usize> = (0..n).filter(|&i| v.parity(i).is_odd()).collect();
    if odd.len() % 2 == 1 {
        return None;
    }
    for _ in 0..100 {
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                if v.parity(i) != v.parity(j) {
                    continue;
                }
                let odd_pair = v.parity(i).is_odd();
                if odd_pair && i == j {
                    continue;
                }
                let x = rat(rng.gen_range(-3..=3));
                g.set(i, j, x.clone());
                g.set(j, i, if odd_pair { -x } else { x });
            }
        }
        if let Ok(ip) = InnerProduct::new(v, g) {
            return Some(ip);
        }
    }
    None
}

/// A random element of `GL(V)` preserving parity.
pub fn random_even_automorphism(rng: &mut Rng8, v: &GradedSpace) -> Matrix {
    let n = v.dim();
    loop {
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if v.parity(i) == v.parity(j) {
                    g.set(i, j, rat(rng.gen_range(-2..=2)));
                }
            }
        }
        if g.inverse().is_some() {
            return g;
        }
    }
}

/// Transports a bracket along a change of basis `g` (columns are the new
/// basis vectors in old coordinates).
pub fn change_basis(l: &Cochain, g: &Matrix) -> Cochain {
    let v = l.source();
    let n = v.dim();
    let ginv = g.inverse().expect("invertible change of basis");
    let mut out = l.zero_like(l.rule());
    for k in l.arities() {
        for w in basis_enumerate(v, l.flavor(), k) {
            // Expand each new basis vector in old coordinates.
            let mut value = vec![rat(0); n];
            let mut stack: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), rat(1))];
            for &letter in &w {
                let mut next = Vec::new();
                for (prefix, c) in &stack {
                    for old in 0..n {
                        let x = g.get(old, letter);
                        if x == &rat(0) {
                            continue;
                        }
                        let mut p = prefix.clone();
                        p.push(old);
                        next.push((p, c * x));
                    }
                }
                stack = next;
            }
            for (word, c) in stack {
                let val = l.evaluate(&word);
                for (acc, x) in value.iter_mut().zip(val) {
                    *acc += &c * x;
                }
            }
            let new_value = ginv.mul_vec(&value);
            out.add_value(&w, &new_value).expect("even change of basis keeps parity");
        }
    }
    out
}

/// A random graded Lie algebra of dimension at most 3 built from one of a
/// few constructions that satisfy the Jacobi identity by design.
pub fn random_graded_lie(rng: &mut Rng8) -> Cochain {
    match rng.gen_range(0..4) {
        0 => derivation_extension(rng),
        1 => central_extension(rng),
        2 => change_basis(&sl2(), &random_even_automorphism(rng, sl2().source())),
        _ => change_basis(&nonabelian2(), &random_even_automorphism(rng, nonabelian2().source())),
    }
}

/// `h ⋉ U`: an even `h` acting on an abelian `U` of dimension ≤ 2 by a random
/// even matrix.
fn derivation_extension(rng: &mut Rng8) -> Cochain {
    let udim = rng.gen_range(1..=2);
    let mut ps = vec![0u8];
    ps.extend((0..udim).map(|_| rng.gen_range(0..2u8)));
    let v = GradedSpace::with_parities(&ps);
    let mut l = Cochain::zero(&v, Kind::Ext, Parity::EVEN);
    for i in 1..=udim {
        for j in 1..=udim {
            if v.parity(i) == v.parity(j) {
                let c = rat(rng.gen_range(-2..=2));
                l.add_term(&[0, i], j, c).unwrap();
            }
        }
    }
    l
}

/// Central extension of an abelian algebra on two generators by a graded
/// antisymmetric form: `[x, y] = ω(x, y) z`.
fn central_extension(rng: &mut Rng8) -> Cochain {
    let px = rng.gen_range(0..2u8);
    let py = rng.gen_range(0..2u8);
    let pz = (px + py) % 2;
    let v = GradedSpace::with_parities(&[px, py, pz]);
    let mut l = Cochain::zero(&v, Kind::Ext, Parity::EVEN);
    let c = rat(rng.gen_range(1..=3));
    l.add_term(&[0, 1], 2, c).unwrap();
    // Odd generators also have graded-symmetric squares.
    if px == 1 && pz == 0 {
        l.add_term(&[0, 0], 2, rat(rng.gen_range(-2..=2))).unwrap();
    }
    if py == 1 && pz == 0 {
        l.add_term(&[1, 1], 2, rat(rng.gen_range(-2..=2))).unwrap();
    }
    l
}
