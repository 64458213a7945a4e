//! Finite-dimensional bigraded modules over `H_n ⊗ H_m`.
//!
//! A module is a graded vector space with two commuting nilpotent operators
//! `d0` (`d0^n = 0`) and `d1` (`d1^m = 0`). The grouplike generators `k0`, `k1`
//! are not stored: they act diagonally with eigenvalues read off the degree.

mod morphism;
mod ops;
pub mod random;
mod sub;

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{CyclotomicField, CyclotomicScalar, Matrix};

pub use morphism::ModuleMorphism;
pub use ops::tensor_basis_labels;
pub use sub::{quotient, submodule_generated_by};

/// A bidegree. In the cyclic scheme both coordinates are kept reduced.
pub type Degree = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeKind {
    /// Homological `Z × Z` grading.
    Z2,
    /// Implicit `Z/n × Z/m` grading.
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    D0,
    D1,
}

impl Direction {
    pub fn other(self) -> Self {
        match self {
            Direction::D0 => Direction::D1,
            Direction::D1 => Direction::D0,
        }
    }

    fn index(self) -> usize {
        match self {
            Direction::D0 => 0,
            Direction::D1 => 1,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::D0 => "d0",
            Direction::D1 => "d1",
        })
    }
}

/// Grading scheme together with the ground field `Q(ζ_nm)`.
#[derive(Clone)]
pub struct GradingScheme {
    kind: SchemeKind,
    n: u64,
    m: u64,
    field: Arc<CyclotomicField>,
}

impl GradingScheme {
    pub fn new(kind: SchemeKind, n: u64, m: u64) -> Result<Self, ModuleError> {
        Self::with_field(kind, n, m, CyclotomicField::new(n.max(1) * m.max(1)))
    }

    pub fn z2(n: u64, m: u64) -> Result<Self, ModuleError> {
        Self::new(SchemeKind::Z2, n, m)
    }

    pub fn cyclic(n: u64, m: u64) -> Result<Self, ModuleError> {
        Self::new(SchemeKind::Cyclic, n, m)
    }

    fn with_field(kind: SchemeKind, n: u64, m: u64, field: Arc<CyclotomicField>) -> Result<Self, ModuleError> {
        if n == 0 || m == 0 || num_integer::gcd(n, m) != 1 {
            return Err(ModuleError::BadScheme(n, m));
        }
        debug_assert_eq!(field.order(), n * m);
        Ok(Self { kind, n, m, field })
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Nilpotency order of `d0` or `d1`.
    pub fn order(&self, dir: Direction) -> usize {
        match dir {
            Direction::D0 => self.n as usize,
            Direction::D1 => self.m as usize,
        }
    }

    /// Degree of `d0` or `d1`.
    pub fn step(&self, dir: Direction) -> Degree {
        let s = match self.kind {
            SchemeKind::Z2 => 1,
            SchemeKind::Cyclic => -1,
        };
        let d = match dir {
            Direction::D0 => (s, 0),
            Direction::D1 => (0, s),
        };
        self.normalize(d)
    }

    pub fn normalize(&self, g: Degree) -> Degree {
        match self.kind {
            SchemeKind::Z2 => g,
            SchemeKind::Cyclic => (g.0.rem_euclid(self.n as i64), g.1.rem_euclid(self.m as i64)),
        }
    }

    pub fn add(&self, a: Degree, b: Degree) -> Degree {
        self.normalize((a.0 + b.0, a.1 + b.1))
    }

    pub fn sub(&self, a: Degree, b: Degree) -> Degree {
        self.normalize((a.0 - b.0, a.1 - b.1))
    }

    /// `g + k * step(dir)`.
    pub fn advance(&self, g: Degree, dir: Direction, k: i64) -> Degree {
        let s = self.step(dir);
        self.normalize((g.0 + k * s.0, g.1 + k * s.1))
    }

    /// `q0 = t^m` (order `n`) or `q1 = t^n` (order `m`).
    pub fn q(&self, dir: Direction) -> CyclotomicScalar {
        self.q_pow(dir, 1)
    }

    pub fn q_pow(&self, dir: Direction, e: i64) -> CyclotomicScalar {
        let base = match dir {
            Direction::D0 => self.m,
            Direction::D1 => self.n,
        } as i64;
        self.field.root_of_unity(base * e)
    }

    /// Exponent `e` with `k_dir x = q_dir^e x` for `x` of degree `g`: minus the
    /// homological degree in the Z2 scheme, the implicit degree in the cyclic one.
    pub fn k_exponent(&self, g: Degree, dir: Direction) -> i64 {
        let c = match dir {
            Direction::D0 => g.0,
            Direction::D1 => g.1,
        };
        match self.kind {
            SchemeKind::Z2 => -c,
            SchemeKind::Cyclic => c,
        }
    }

    /// The scheme for `H_m ⊗ H_n` obtained by exchanging the factors.
    pub fn swapped(&self) -> Self {
        Self {
            kind: self.kind,
            n: self.m,
            m: self.n,
            field: Arc::clone(&self.field),
        }
    }
}

impl PartialEq for GradingScheme {
    fn eq(&self, other: &Self) -> bool {
        (self.kind, self.n, self.m) == (other.kind, other.n, other.m)
    }
}

impl Eq for GradingScheme {}

impl fmt::Debug for GradingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(n={}, m={})", self.kind, self.n, self.m)
    }
}

/// Which defining relation failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// A block has the wrong shape or leaves the support.
    Shape(Direction),
    /// `d0^n` or `d1^m` is nonzero.
    Nilpotence(Direction),
    /// `d0 d1 ≠ d1 d0`.
    Commutation,
    /// `d k ≠ q k d` for the diagonal `k`-action.
    Twist(Direction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: Relation,
    pub degree: Degree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.degree;
        match self.relation {
            Relation::Shape(d) => write!(f, "{d} block has the wrong shape at ({a}, {b})"),
            Relation::Nilpotence(Direction::D0) => write!(f, "d0^n ≠ 0 at ({a}, {b})"),
            Relation::Nilpotence(Direction::D1) => write!(f, "d1^m ≠ 0 at ({a}, {b})"),
            Relation::Commutation => write!(f, "d0 d1 ≠ d1 d0 at ({a}, {b})"),
            Relation::Twist(d) => write!(f, "{d} k ≠ q k {d} at ({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("n = {0} and m = {1} must be positive and coprime")]
    BadScheme(u64, u64),
    #[error("grading schemes differ")]
    SchemeMismatch,
    #[error("invalid module: {0}")]
    Invalid(Violation),
    #[error("interval length {len} is outside 1..={max}")]
    LengthOutOfRange { len: usize, max: usize },
    #[error("not a module morphism at degree ({}, {})", .0.0, .0.1)]
    NotMorphism(Degree),
    #[error("block at degree ({}, {}) has the wrong shape", .0.0, .0.1)]
    BadBlock(Degree),
    #[error("morphisms do not match up")]
    NotComposable,
    #[error("{0}")]
    Unsupported(&'static str),
}

/// A finite-dimensional module over `H_n ⊗ H_m`, stored degree by degree.
#[derive(Clone)]
pub struct GradedModule {
    scheme: GradingScheme,
    dims: BTreeMap<Degree, usize>,
    /// Nonzero blocks of `d0` and `d1`, keyed by source degree.
    blocks: [BTreeMap<Degree, Matrix>; 2],
}

impl GradedModule {
    /// Builds and validates a module. Zero dimensions and zero blocks are dropped.
    pub fn from_blocks(
        scheme: &GradingScheme,
        dims: BTreeMap<Degree, usize>,
        d0: BTreeMap<Degree, Matrix>,
        d1: BTreeMap<Degree, Matrix>,
    ) -> Result<Self, ModuleError> {
        let norm = |g| scheme.normalize(g);
        let mut nd = BTreeMap::new();
        for (g, k) in dims {
            if k > 0 {
                *nd.entry(norm(g)).or_insert(0) += k;
            }
        }
        let mut module = Self {
            scheme: scheme.clone(),
            dims: nd,
            blocks: [BTreeMap::new(), BTreeMap::new()],
        };
        for (dir, map) in [(Direction::D0, d0), (Direction::D1, d1)] {
            for (g, block) in map {
                let g = norm(g);
                let target = scheme.advance(g, dir, 1);
                if block.shape() != (module.dim_at(target), module.dim_at(g)) {
                    return Err(ModuleError::Invalid(Violation { relation: Relation::Shape(dir), degree: g }));
                }
                if !block.is_zero() {
                    module.blocks[dir.index()].insert(g, block);
                }
            }
        }
        module.validate()?;
        Ok(module)
    }

    /// Assembles a module whose relations hold by construction.
    pub(crate) fn from_parts(
        scheme: &GradingScheme,
        dims: BTreeMap<Degree, usize>,
        d0: BTreeMap<Degree, Matrix>,
        d1: BTreeMap<Degree, Matrix>,
    ) -> Self {
        let mut module = Self {
            scheme: scheme.clone(),
            dims: dims.into_iter().filter(|&(_, k)| k > 0).collect(),
            blocks: [d0, d1],
        };
        for map in &mut module.blocks {
            map.retain(|_, b| !b.is_zero());
        }
        debug_assert!(module.validate().is_ok(), "{:?}", module.validate());
        module
    }

    pub fn zero(scheme: &GradingScheme) -> Self {
        Self::from_parts(scheme, BTreeMap::new(), BTreeMap::new(), BTreeMap::new())
    }

    /// One-dimensional module at `g` with both differentials zero.
    pub fn simple(scheme: &GradingScheme, g: Degree) -> Self {
        let dims = BTreeMap::from([(scheme.normalize(g), 1)]);
        Self::from_parts(scheme, dims, BTreeMap::new(), BTreeMap::new())
    }

    /// The tensor unit: the simple module at `(0, 0)`.
    pub fn unit(scheme: &GradingScheme) -> Self {
        Self::simple(scheme, (0, 0))
    }

    /// A chain of `len` one-dimensional components starting at `start`, with
    /// identity maps in direction `dir` and zero in the other.
    pub fn interval(scheme: &GradingScheme, start: Degree, dir: Direction, len: usize) -> Result<Self, ModuleError> {
        let max = scheme.order(dir);
        if len == 0 || len > max {
            return Err(ModuleError::LengthOutOfRange { len, max });
        }
        let f = scheme.field();
        let mut dims = BTreeMap::new();
        let mut blocks = BTreeMap::new();
        for k in 0..len {
            let g = scheme.advance(start, dir, k as i64);
            dims.insert(g, 1);
            if k + 1 < len {
                blocks.insert(g, Matrix::identity(f, 1));
            }
        }
        let (d0, d1) = match dir {
            Direction::D0 => (blocks, BTreeMap::new()),
            Direction::D1 => (BTreeMap::new(), blocks),
        };
        Ok(Self::from_parts(scheme, dims, d0, d1))
    }

    /// The free module of rank one generated in degree `g`.
    pub fn free(scheme: &GradingScheme, g: Degree) -> Self {
        let f = scheme.field();
        let (n, m) = (scheme.n() as i64, scheme.m() as i64);
        let mut dims = BTreeMap::new();
        let mut d0 = BTreeMap::new();
        let mut d1 = BTreeMap::new();
        for a in 0..n {
            for b in 0..m {
                let h = scheme.advance(scheme.advance(g, Direction::D0, a), Direction::D1, b);
                dims.insert(h, 1);
                if a + 1 < n {
                    d0.insert(h, Matrix::identity(f, 1));
                }
                if b + 1 < m {
                    d1.insert(h, Matrix::identity(f, 1));
                }
            }
        }
        Self::from_parts(scheme, dims, d0, d1)
    }

    pub fn scheme(&self) -> &GradingScheme {
        &self.scheme
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.scheme.field()
    }

    pub fn dim_at(&self, g: Degree) -> usize {
        self.dims.get(&self.scheme.normalize(g)).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Nonzero components, in ascending degree order.
    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        &self.dims
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = Degree> + '_ {
        self.dims.keys().copied()
    }

    /// The nonzero blocks of one differential.
    pub fn blocks(&self, dir: Direction) -> &BTreeMap<Degree, Matrix> {
        &self.blocks[dir.index()]
    }

    /// The block of `dir` leaving degree `g` (a zero matrix if none is stored).
    pub fn block(&self, dir: Direction, g: Degree) -> Matrix {
        let g = self.scheme.normalize(g);
        match self.blocks[dir.index()].get(&g) {
            Some(b) => b.clone(),
            None => {
                let t = self.scheme.advance(g, dir, 1);
                Matrix::zero(self.field(), self.dim_at(t), self.dim_at(g))
            }
        }
    }

    /// `dir^k` as a map from degree `g`.
    pub fn power(&self, dir: Direction, g: Degree, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dim_at(g));
        let mut h = self.scheme.normalize(g);
        for _ in 0..k {
            if acc.rows() == 0 || acc.cols() == 0 {
                let end = self.scheme.advance(g, dir, k as i64);
                return Matrix::zero(self.field(), self.dim_at(end), self.dim_at(g));
            }
            acc = self.block(dir, h).mul(&acc);
            h = self.scheme.advance(h, dir, 1);
        }
        acc
    }

    /// Applies `dir` to a vector sitting in degree `g`.
    pub fn apply(&self, dir: Direction, g: Degree, v: &[CyclotomicScalar]) -> Vec<CyclotomicScalar> {
        let g = self.scheme.normalize(g);
        match self.blocks[dir.index()].get(&g) {
            Some(b) => b.apply(v),
            None => vec![self.field().zero(); self.dim_at(self.scheme.advance(g, dir, 1))],
        }
    }

    /// All violated relations, in a deterministic order.
    pub fn violations(&self) -> Vec<Violation> {
        let s = &self.scheme;
        let mut out = Vec::new();
        for dir in [Direction::D0, Direction::D1] {
            for (&g, b) in &self.blocks[dir.index()] {
                let t = s.advance(g, dir, 1);
                if b.shape() != (self.dim_at(t), self.dim_at(g)) {
                    out.push(Violation { relation: Relation::Shape(dir), degree: g });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for g in self.support() {
            for dir in [Direction::D0, Direction::D1] {
                if !self.power(dir, g, s.order(dir)).is_zero() {
                    out.push(Violation { relation: Relation::Nilpotence(dir), degree: g });
                }
            }
            let (g0, g1) = (s.advance(g, Direction::D0, 1), s.advance(g, Direction::D1, 1));
            let lhs = self.block(Direction::D1, g0).mul(&self.block(Direction::D0, g));
            let rhs = self.block(Direction::D0, g1).mul(&self.block(Direction::D1, g));
            if lhs != rhs {
                out.push(Violation { relation: Relation::Commutation, degree: g });
            }
            for dir in [Direction::D0, Direction::D1] {
                if !self.twist_holds(dir, g) {
                    out.push(Violation { relation: Relation::Twist(dir), degree: g });
                }
            }
        }
        out
    }

    /// First violated relation, if any.
    pub fn validate(&self) -> Result<(), ModuleError> {
        match self.violations().into_iter().next() {
            Some(v) => Err(ModuleError::Invalid(v)),
            None => Ok(()),
        }
    }

    /// `k(g + e)^{-1} · d · k(g) = q · d` for the block leaving `g`, with `k`
    /// the scalar action determined by the degree.
    fn twist_holds(&self, dir: Direction, g: Degree) -> bool {
        let Some(b) = self.blocks[dir.index()].get(&g) else {
            return true;
        };
        let s = &self.scheme;
        let t = s.advance(g, dir, 1);
        let k_src = s.q_pow(dir, s.k_exponent(g, dir));
        let k_tgt_inv = s.q_pow(dir, -s.k_exponent(t, dir));
        b.scale(&(&k_tgt_inv * &k_src)) == b.scale(&s.q(dir))
    }

    /// The 15-dimensional module in `H_3 ⊗ H_5`-mod lying in both kernels
    /// without being projective.
    ///
    /// Cell `(r, c)` of the 3 × 5 picture sits in cyclic degree `(-r, -c)`, so
    /// the rightward and downward arrows have the degrees of `d1` and `d0`.
    pub fn counterexample(n: u64, m: u64) -> Result<Self, ModuleError> {
        if (n, m) != (3, 5) {
            return Err(ModuleError::Unsupported("the counterexample is only available for n = 3, m = 5"));
        }
        let s = GradingScheme::cyclic(3, 5)?;
        let cell = |r: i64, c: i64| s.normalize((-r, -c));
        let id = || Matrix::identity(s.field(), 1);
        let dims = (0..3).flat_map(|r| (0..5).map(move |c| (r, c))).map(|(r, c)| (cell(r, c), 1)).collect();
        let mut d1 = BTreeMap::new();
        for c in 1..5 {
            // row 0: (0,1) -> ... -> (0,4) -> (0,0)
            d1.insert(cell(0, c), id());
        }
        for r in 1..3 {
            for c in 0..4 {
                d1.insert(cell(r, c), id());
            }
        }
        let mut d0 = BTreeMap::new();
        for c in 1..5 {
            d0.insert(cell(0, c), id());
        }
        for c in 0..5 {
            d0.insert(cell(1, c), id());
        }
        d0.insert(cell(2, 0), id());
        Self::from_blocks(&s, dims, d0, d1)
    }
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.scheme == other.scheme && self.dims == other.dims && self.blocks == other.blocks
    }
}

impl Eq for GradedModule {}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("scheme", &self.scheme)
            .field("dims", &self.dims)
            .field("d0", &self.blocks[0])
            .field("d1", &self.blocks[1])
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s35() -> GradingScheme {
        GradingScheme::z2(3, 5).unwrap()
    }

    #[test]
    fn scheme_rejects_common_factor() {
        assert_eq!(GradingScheme::z2(3, 6).unwrap_err(), ModuleError::BadScheme(3, 6));
    }

    #[test]
    fn free_module_shape() {
        let s = s35();
        let f = GradedModule::free(&s, (0, 0));
        assert_eq!(f.dim(), 15);
        assert!(f.support().all(|(a, b)| (0..3).contains(&a) && (0..5).contains(&b)));
        let d0_rank: usize = f.blocks(Direction::D0).values().map(Matrix::rank).sum();
        assert_eq!(d0_rank, 10);
        f.validate().unwrap();

        let c = GradingScheme::cyclic(3, 5).unwrap();
        let fc = GradedModule::free(&c, (0, 0));
        assert_eq!(fc.dims().len(), 15);
        assert!(fc.dims().values().all(|&d| d == 1));
        for g in fc.support() {
            assert!(fc.power(Direction::D0, g, 3).is_zero());
        }
        let chain2 = fc.support().filter(|&g| !fc.power(Direction::D0, g, 2).is_zero()).count();
        assert_eq!(chain2, 5);
    }

    #[test]
    fn intervals() {
        let s = s35();
        let simple = GradedModule::interval(&s, (2, 1), Direction::D0, 1).unwrap();
        assert_eq!(simple, GradedModule::simple(&s, (2, 1)));
        for len in 1..=3 {
            GradedModule::interval(&s, (0, 0), Direction::D0, len).unwrap().validate().unwrap();
        }
        for len in 1..=5 {
            GradedModule::interval(&s, (0, 0), Direction::D1, len).unwrap().validate().unwrap();
        }
        assert_eq!(
            GradedModule::interval(&s, (0, 0), Direction::D0, 4).unwrap_err(),
            ModuleError::LengthOutOfRange { len: 4, max: 3 }
        );
        assert!(GradedModule::interval(&s, (0, 0), Direction::D1, 0).is_err());
    }

    #[test]
    fn long_chain_is_rejected() {
        let s = s35();
        let f = s.field();
        let dims = (0..4).map(|a| ((a, 0), 1)).collect();
        let d0 = (0..3).map(|a| ((a, 0), Matrix::identity(f, 1))).collect();
        let err = GradedModule::from_blocks(&s, dims, d0, BTreeMap::new()).unwrap_err();
        let ModuleError::Invalid(v) = err else { panic!() };
        assert_eq!(v.relation, Relation::Nilpotence(Direction::D0));
        assert_eq!(v.degree, (0, 0));
        assert_eq!(alloc::string::ToString::to_string(&v), "d0^n ≠ 0 at (0, 0)");
    }

    #[test]
    fn noncommuting_square_is_rejected() {
        let s = s35();
        let f = s.field();
        let dims = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)].into_iter().collect();
        let id = || Matrix::identity(f, 1);
        let d0 = [((0, 0), id()), ((0, 1), id())].into_iter().collect();
        let d1 = [((0, 0), id()), ((1, 0), Matrix::from_rows(f, vec![vec![f.int(2)]], 1))].into_iter().collect();
        let err = GradedModule::from_blocks(&s, dims, d0, d1).unwrap_err();
        assert_eq!(err, ModuleError::Invalid(Violation { relation: Relation::Commutation, degree: (0, 0) }));
    }

    #[test]
    fn wrong_block_shape_is_rejected() {
        let s = s35();
        let dims = [((0, 0), 2), ((1, 0), 1)].into_iter().collect();
        let d0 = [((0, 0), Matrix::identity(s.field(), 2))].into_iter().collect();
        let err = GradedModule::from_blocks(&s, dims, d0, BTreeMap::new()).unwrap_err();
        assert!(matches!(err, ModuleError::Invalid(Violation { relation: Relation::Shape(Direction::D0), .. })));
    }

    #[test]
    fn counterexample_validates() {
        let c = GradedModule::counterexample(3, 5).unwrap();
        assert_eq!(c.dim(), 15);
        assert_eq!(c.dims().len(), 15);
        assert_eq!(c.blocks(Direction::D0).len(), 10);
        assert_eq!(c.blocks(Direction::D1).len(), 12);
        assert!(GradedModule::counterexample(3, 7).is_err());
    }

    #[test]
    fn twist_holds_for_every_block() {
        for s in [s35(), GradingScheme::cyclic(3, 5).unwrap()] {
            let f = GradedModule::free(&s, (1, -2));
            for dir in [Direction::D0, Direction::D1] {
                for g in f.blocks(dir).keys() {
                    assert!(f.twist_holds(dir, *g));
                }
            }
        }
    }
}
