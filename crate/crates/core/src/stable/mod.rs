//! The restriction functors `P0`, `P1`, their partners `R0`, `R1`, and the
//! algorithms of the stable module category: projectivity, kernel membership,
//! stable Hom and the factorization through `η`.

mod hom;
mod projective;
mod r0;
mod triangle;

use alloc::vec::Vec;

use crate::arith::{CyclotomicScalar, Echelon, Matrix};
use crate::modules::{Degree, Direction, GradedModule, ModuleError};

pub use hom::{hom_space, random_morphism, stable_hom, HomSpace, StableHom};
pub use projective::{is_projective, is_stably_zero, projective_cover, top};
pub use r0::{eta, eta1, factor_through_eta, factor_through_eta1, factor_through_eta_global, r0, r1};
pub use triangle::{cone_from_ses, Triangle};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StableError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("expected a module restricted to {expected}")]
    WrongRestriction { expected: Direction },
    #[error("no g with g∘η = f: the equations at degree ({}, {}) are inconsistent", .0.0, .0.1)]
    NoFactorization(Degree),
    #[error("sequence is not short exact at degree ({}, {})", .0.0, .0.1)]
    NotExact(Degree),
}

/// A module with one differential forgotten. `survivor` names the one kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedModule {
    module: GradedModule,
    survivor: Direction,
}

impl RestrictedModule {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn survivor(&self) -> Direction {
        self.survivor
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, StableError> {
        if self.survivor != other.survivor {
            return Err(StableError::WrongRestriction { expected: self.survivor });
        }
        Ok(Self {
            module: self.module.direct_sum(&other.module)?,
            survivor: self.survivor,
        })
    }
}

/// `P0`: restriction to `G_n ⊗ H_m`, which forgets `d0`.
pub fn restrict_p0(x: &GradedModule) -> RestrictedModule {
    RestrictedModule {
        module: x.forget(Direction::D0),
        survivor: Direction::D1,
    }
}

/// `P1`: restriction to `H_n ⊗ G_m`, which forgets `d1`.
pub fn restrict_p1(x: &GradedModule) -> RestrictedModule {
    RestrictedModule {
        module: x.forget(Direction::D1),
        survivor: Direction::D0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: Degree,
    pub len: usize,
}

/// Splitting of a graded nilpotent operator into chains.
#[derive(Clone, Debug)]
pub struct IntervalDecomposition {
    pub direction: Direction,
    /// Intervals in the order they were split off.
    pub intervals: Vec<Interval>,
    /// For each interval, the vector at its start degree generating the chain.
    pub generators: Vec<Vec<CyclotomicScalar>>,
}

impl IntervalDecomposition {
    /// Sorted multiset of intervals.
    pub fn multiset(&self) -> Vec<Interval> {
        let mut v = self.intervals.clone();
        v.sort();
        v
    }

    pub fn total_dim(&self) -> usize {
        self.intervals.iter().map(|i| i.len).sum()
    }

    /// Rank of `d^j` leaving degree `g`, as predicted by the intervals.
    pub fn predicted_rank(&self, module: &GradedModule, g: Degree, j: usize) -> usize {
        let s = module.scheme();
        let g = s.normalize(g);
        self.intervals
            .iter()
            .filter(|iv| (0..iv.len).any(|p| s.advance(iv.start, self.direction, p as i64) == g && iv.len - 1 - p >= j))
            .count()
    }

    /// Whether every rank of every power of the operator matches the matrices.
    pub fn is_sound(&self, r: &RestrictedModule) -> bool {
        let x = &r.module;
        let order = x.scheme().order(self.direction);
        x.support()
            .all(|g| (0..=order).all(|j| x.power(self.direction, g, j).rank() == self.predicted_rank(x, g, j)))
    }

    /// The chains `v, dv, d^2 v, …` grouped by degree; their union is a basis
    /// when the decomposition is correct.
    pub fn chain_vectors(&self, x: &GradedModule) -> alloc::collections::BTreeMap<Degree, Vec<Vec<CyclotomicScalar>>> {
        let s = x.scheme();
        let mut out: alloc::collections::BTreeMap<Degree, Vec<Vec<CyclotomicScalar>>> = Default::default();
        for (iv, v) in self.intervals.iter().zip(&self.generators) {
            let mut g = iv.start;
            let mut cur = v.clone();
            for _ in 0..iv.len {
                out.entry(g).or_default().push(cur.clone());
                cur = x.apply(self.direction, g, &cur);
                g = s.advance(g, self.direction, 1);
            }
        }
        out
    }
}

fn subspace_with(field_dim: usize, x: &GradedModule, vectors: impl IntoIterator<Item = Vec<CyclotomicScalar>>) -> Echelon {
    let mut e = Echelon::new(x.field(), field_dim);
    for v in vectors {
        e.insert_dense(v);
    }
    e
}

/// Chain decomposition of the surviving differential.
///
/// In degree `h` the generators of chains of length exactly `L` are a
/// complement of `ker d^{L-1} + d(ker d^{L+1} at h - e)` inside `ker d^L`.
/// Degrees are visited in descending lexicographic order, lengths from the
/// longest down.
pub fn decompose_intervals(r: &RestrictedModule) -> IntervalDecomposition {
    let x = &r.module;
    let dir = r.survivor;
    let s = x.scheme();
    let order = s.order(dir);
    let mut intervals = Vec::new();
    let mut generators = Vec::new();
    for h in x.support().rev() {
        let dim = x.dim_at(h);
        let prev = s.advance(h, dir, -1);
        let powers: Vec<Matrix> = (0..=order).map(|j| x.power(dir, h, j)).collect();
        let prev_powers: Vec<Matrix> = (0..=order + 1).map(|j| x.power(dir, prev, j)).collect();
        let kernel = |j: usize| -> Vec<Vec<CyclotomicScalar>> {
            if j > order {
                return identity_columns(x, dim);
            }
            powers[j].kernel()
        };
        for len in (1..=order).rev() {
            let below = kernel(len - 1);
            let from_prev: Vec<Vec<CyclotomicScalar>> = if x.dim_at(prev) == 0 {
                Vec::new()
            } else {
                let ker = if len + 1 > order {
                    identity_columns(x, x.dim_at(prev))
                } else {
                    prev_powers[len + 1].kernel()
                };
                ker.iter().map(|v| x.apply(dir, prev, v)).collect()
            };
            let mut w = subspace_with(dim, x, below.into_iter().chain(from_prev));
            for v in kernel(len) {
                if w.insert_dense(v.clone()) {
                    intervals.push(Interval { start: h, len });
                    generators.push(v);
                }
            }
        }
    }
    IntervalDecomposition {
        direction: dir,
        intervals,
        generators,
    }
}

fn identity_columns(x: &GradedModule, dim: usize) -> Vec<Vec<CyclotomicScalar>> {
    (0..dim)
        .map(|k| {
            let mut v = alloc::vec![x.field().zero(); dim];
            v[k] = x.field().one();
            v
        })
        .collect()
}

/// Whether `P0 X` is stably zero: every `d1`-chain has full length `m`.
pub fn in_kernel_p0(x: &GradedModule) -> bool {
    let m = x.scheme().m() as usize;
    decompose_intervals(&restrict_p0(x)).intervals.iter().all(|iv| iv.len == m)
}

/// Whether `P1 X` is stably zero: every `d0`-chain has full length `n`.
pub fn in_kernel_p1(x: &GradedModule) -> bool {
    let n = x.scheme().n() as usize;
    decompose_intervals(&restrict_p1(x)).intervals.iter().all(|iv| iv.len == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::random::{random_isomorphic, rng_from_seed};
    use crate::modules::GradingScheme;

    fn basis_check(d: &IntervalDecomposition, x: &GradedModule) -> bool {
        let chains = d.chain_vectors(x);
        x.dims().iter().all(|(g, &k)| {
            let vs = chains.get(g).cloned().unwrap_or_default();
            vs.len() == k && Matrix::from_columns(x.field(), k, &vs).rank() == k
        })
    }

    #[test]
    fn free_module_chains() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let f = GradedModule::free(&s, (0, 0));
        let d1 = decompose_intervals(&restrict_p0(&f));
        assert_eq!(d1.intervals.len(), 3);
        assert!(d1.intervals.iter().all(|iv| iv.len == 5));
        let d0 = decompose_intervals(&restrict_p1(&f));
        assert_eq!(d0.intervals.len(), 5);
        assert!(d0.intervals.iter().all(|iv| iv.len == 3));
        assert!(in_kernel_p0(&f) && in_kernel_p1(&f));
    }

    #[test]
    fn simple_is_one_interval() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let x = GradedModule::simple(&s, (1, 1));
        let d = decompose_intervals(&restrict_p1(&x));
        assert_eq!(d.multiset(), alloc::vec![Interval { start: (1, 1), len: 1 }]);
    }

    #[test]
    fn hidden_intervals_are_recovered() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let parts = [
            GradedModule::interval(&s, (0, 0), Direction::D0, 3).unwrap(),
            GradedModule::interval(&s, (1, 0), Direction::D0, 2).unwrap(),
            GradedModule::interval(&s, (0, 0), Direction::D0, 1).unwrap(),
            GradedModule::interval(&s, (1, 0), Direction::D0, 1).unwrap(),
        ];
        let x = GradedModule::direct_sum_all(&s, &parts).unwrap();
        let (y, _) = random_isomorphic(&x, &mut rng_from_seed(5));
        let d = decompose_intervals(&restrict_p1(&y));
        let mut expect = alloc::vec![
            Interval { start: (0, 0), len: 3 },
            Interval { start: (1, 0), len: 2 },
            Interval { start: (0, 0), len: 1 },
            Interval { start: (1, 0), len: 1 },
        ];
        expect.sort();
        assert_eq!(d.multiset(), expect);
        assert!(d.is_sound(&restrict_p1(&y)));
        assert!(basis_check(&d, &y));
    }

    #[test]
    fn kernel_membership_of_intervals() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let x = GradedModule::interval(&s, (0, 0), Direction::D1, 5).unwrap();
        assert!(in_kernel_p0(&x));
        assert!(!in_kernel_p1(&x));
    }

    #[test]
    fn counterexample_is_in_both_kernels() {
        let c = GradedModule::counterexample(3, 5).unwrap();
        assert!(in_kernel_p0(&c));
        assert!(in_kernel_p1(&c));
        for r in [restrict_p0(&c), restrict_p1(&c)] {
            let d = decompose_intervals(&r);
            assert!(d.is_sound(&r));
            assert!(basis_check(&d, &c));
        }
    }

    #[test]
    fn restriction_commutes_with_sums() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let a = GradedModule::free(&s, (0, 0));
        let b = GradedModule::interval(&s, (1, 1), Direction::D0, 2).unwrap();
        let lhs = restrict_p0(&a.direct_sum(&b).unwrap());
        let rhs = restrict_p0(&a).direct_sum(&restrict_p0(&b)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.dim(), 17);
    }
}
