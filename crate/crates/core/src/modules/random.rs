//! Seeded random modules with known structure, for property tests.
//!
//! Every generated module is a direct sum of shifted tensor products of
//! interval modules, disguised by a random change of basis in each degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Degree, Direction, GradedModule, GradingScheme, ModuleMorphism, SchemeKind};
use crate::arith::{CyclotomicScalar, Matrix};

/// Which part of the module category to sample from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Any,
    /// Restricts to a free module over the `d1` factor.
    KerP0,
    /// Restricts to a free module over the `d0` factor.
    KerP1,
    /// Built as `A ⊗ B` with `A ∈ ker P1` and `B ∈ ker P0`.
    BothKernels,
    /// Sums of `free ⊗ W`.
    Projective,
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random module of total dimension at most `max_dim` (and at least one).
pub fn random_module(scheme: &GradingScheme, max_dim: usize, seed: u64) -> GradedModule {
    let mut rng = rng_from_seed(seed);
    random_module_in(scheme, Family::Any, max_dim, &mut rng)
}

/// A random module of the given family with total dimension at most `max_dim`.
/// Returns the zero module only if no member of the family fits.
pub fn random_module_in<R: Rng>(scheme: &GradingScheme, family: Family, max_dim: usize, rng: &mut R) -> GradedModule {
    let min = min_piece(scheme, family);
    if max_dim < min {
        return GradedModule::zero(scheme);
    }
    let target = rng.gen_range(min..=max_dim);
    let mut out = GradedModule::zero(scheme);
    loop {
        let room = target - out.dim();
        if room < min {
            break;
        }
        let piece = random_piece(scheme, family, room, rng);
        out = out.direct_sum(&piece).expect("same scheme");
        if rng.gen_bool(0.3) {
            break;
        }
    }
    random_isomorphic(&out, rng).0
}

fn min_piece(scheme: &GradingScheme, family: Family) -> usize {
    let (n, m) = (scheme.n() as usize, scheme.m() as usize);
    match family {
        Family::Any => 1,
        Family::KerP0 => m,
        Family::KerP1 => n,
        Family::BothKernels | Family::Projective => n * m,
    }
}

/// A random shift for the scheme.
fn random_degree<R: Rng>(scheme: &GradingScheme, rng: &mut R) -> Degree {
    match scheme.kind() {
        SchemeKind::Z2 => (rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
        SchemeKind::Cyclic => (rng.gen_range(0..scheme.n() as i64), rng.gen_range(0..scheme.m() as i64)),
    }
}

/// A tensor product of one to three intervals, of dimension at most `room`.
fn random_intervals<R: Rng>(scheme: &GradingScheme, room: usize, rng: &mut R) -> GradedModule {
    let mut out = GradedModule::unit(scheme);
    let factors = rng.gen_range(1..=3);
    for _ in 0..factors {
        let dir = if rng.gen_bool(0.5) { Direction::D0 } else { Direction::D1 };
        let max_len = scheme.order(dir).min(room / out.dim());
        if max_len == 0 {
            break;
        }
        let len = rng.gen_range(1..=max_len);
        let start = random_degree(scheme, rng);
        let factor = GradedModule::interval(scheme, start, dir, len).expect("length in range");
        out = out.tensor(&factor).expect("same scheme");
    }
    out
}

fn random_piece<R: Rng>(scheme: &GradingScheme, family: Family, room: usize, rng: &mut R) -> GradedModule {
    let (n, m) = (scheme.order(Direction::D0), scheme.order(Direction::D1));
    let start = random_degree(scheme, rng);
    let piece = match family {
        Family::Any => random_intervals(scheme, room, rng),
        Family::KerP0 => {
            let base = GradedModule::interval(scheme, start, Direction::D1, m).expect("full length");
            base.tensor(&random_intervals(scheme, room / m, rng)).expect("same scheme")
        }
        Family::KerP1 => {
            let base = GradedModule::interval(scheme, start, Direction::D0, n).expect("full length");
            random_intervals(scheme, room / n, rng).tensor(&base).expect("same scheme")
        }
        Family::Projective => {
            let base = GradedModule::free(scheme, start);
            random_intervals(scheme, room / (n * m), rng).tensor(&base).expect("same scheme")
        }
        Family::BothKernels => {
            let a = GradedModule::interval(scheme, start, Direction::D0, n).expect("full length");
            let b = GradedModule::interval(scheme, (0, 0), Direction::D1, m).expect("full length");
            let budget = room / (n * m);
            let w1 = random_intervals(scheme, budget, rng);
            let w2 = random_intervals(scheme, (budget / w1.dim()).max(1), rng);
            let left = w1.tensor(&a).expect("same scheme");
            let right = b.tensor(&w2).expect("same scheme");
            left.tensor(&right).expect("same scheme")
        }
    };
    piece.shift(random_degree(scheme, rng))
}

/// A random invertible `k × k` matrix with its inverse, as a product of
/// elementary operations with small coefficients.
pub fn random_invertible<R: Rng>(scheme: &GradingScheme, k: usize, rng: &mut R) -> (Matrix, Matrix) {
    let f = scheme.field();
    let mut b = Matrix::identity(f, k);
    let mut inv = Matrix::identity(f, k);
    if k == 0 {
        return (b, inv);
    }
    for _ in 0..(2 * k + 1) {
        let i = rng.gen_range(0..k);
        let j = rng.gen_range(0..k);
        let (op, op_inv) = if i == j {
            let c = if rng.gen_bool(0.5) { f.int(-1) } else { f.int(2) };
            let ci = c.inverse().expect("nonzero");
            let mut e = Matrix::identity(f, k);
            e.set(i, i, c);
            let mut ei = Matrix::identity(f, k);
            ei.set(i, i, ci);
            (e, ei)
        } else {
            let c = random_coefficient(scheme, rng);
            let mut e = Matrix::identity(f, k);
            e.set(i, j, c.clone());
            let mut ei = Matrix::identity(f, k);
            ei.set(i, j, -c);
            (e, ei)
        };
        b = op.mul(&b);
        inv = inv.mul(&op_inv);
    }
    (b, inv)
}

fn random_coefficient<R: Rng>(scheme: &GradingScheme, rng: &mut R) -> CyclotomicScalar {
    let f = scheme.field();
    match rng.gen_range(0..5) {
        0 => f.int(-1),
        1 => f.int(2),
        2 => f.root_of_unity(rng.gen_range(0..f.order() as i64)),
        _ => f.one(),
    }
}

/// A module isomorphic to `x` through a random change of basis `B_g` in every
/// degree, together with the isomorphism `x → result` (blocks `B_g`).
pub fn random_isomorphic<R: Rng>(x: &GradedModule, rng: &mut R) -> (GradedModule, ModuleMorphism) {
    let s = x.scheme();
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    for (&g, &k) in x.dims() {
        let (b, inv) = random_invertible(s, k, rng);
        fwd.insert(g, b);
        bwd.insert(g, inv);
    }
    let mut blocks = [BTreeMap::new(), BTreeMap::new()];
    for dir in [Direction::D0, Direction::D1] {
        for (&g, d) in x.blocks(dir) {
            let t = s.advance(g, dir, 1);
            blocks[dir.index()].insert(g, fwd[&t].mul(d).mul(&bwd[&g]));
        }
    }
    let [d0, d1] = blocks;
    let y = GradedModule::from_parts(s, x.dims().clone(), d0, d1);
    let iso = ModuleMorphism::from_parts(x, &y, fwd);
    (y, iso)
}

/// One to three random nonzero homogeneous vectors of `x`.
pub fn random_vectors<R: Rng>(x: &GradedModule, rng: &mut R) -> Vec<(Degree, Vec<CyclotomicScalar>)> {
    let support: Vec<Degree> = x.support().collect();
    if support.is_empty() {
        return Vec::new();
    }
    let count = rng.gen_range(1..=3);
    let mut out = Vec::new();
    for _ in 0..count {
        let g = support[rng.gen_range(0..support.len())];
        let mut v: Vec<CyclotomicScalar> = (0..x.dim_at(g)).map(|_| x.field().int(rng.gen_range(-2..=2))).collect();
        if v.iter().all(CyclotomicScalar::is_zero) {
            v[0] = x.field().one();
        }
        out.push((g, v));
    }
    out
}
