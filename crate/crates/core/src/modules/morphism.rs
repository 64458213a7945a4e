use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{Degree, Direction, GradedModule, ModuleError};
use crate::arith::{CyclotomicScalar, Matrix};

/// A degree-preserving linear map commuting with `d0` and `d1`.
#[derive(Clone)]
pub struct ModuleMorphism {
    source: GradedModule,
    target: GradedModule,
    /// Nonzero blocks `target_g × source_g`.
    blocks: BTreeMap<Degree, Matrix>,
}

impl ModuleMorphism {
    /// Builds a morphism and checks that it commutes with both differentials.
    pub fn new(source: &GradedModule, target: &GradedModule, blocks: BTreeMap<Degree, Matrix>) -> Result<Self, ModuleError> {
        if source.scheme() != target.scheme() {
            return Err(ModuleError::SchemeMismatch);
        }
        let s = source.scheme();
        let mut clean = BTreeMap::new();
        for (g, b) in blocks {
            let g = s.normalize(g);
            if b.shape() != (target.dim_at(g), source.dim_at(g)) {
                return Err(ModuleError::BadBlock(g));
            }
            if !b.is_zero() {
                clean.insert(g, b);
            }
        }
        let f = Self {
            source: source.clone(),
            target: target.clone(),
            blocks: clean,
        };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn from_parts(source: &GradedModule, target: &GradedModule, mut blocks: BTreeMap<Degree, Matrix>) -> Self {
        blocks.retain(|_, b| !b.is_zero());
        let f = Self {
            source: source.clone(),
            target: target.clone(),
            blocks,
        };
        debug_assert!(f.check().is_ok());
        f
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> Self {
        Self::from_parts(source, target, BTreeMap::new())
    }

    pub fn identity(x: &GradedModule) -> Self {
        let blocks = x.dims().iter().map(|(&g, &k)| (g, Matrix::identity(x.field(), k))).collect();
        Self::from_parts(x, x, blocks)
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<Degree, Matrix> {
        &self.blocks
    }

    pub fn block(&self, g: Degree) -> Matrix {
        let g = self.source.scheme().normalize(g);
        self.blocks
            .get(&g)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.source.field(), self.target.dim_at(g), self.source.dim_at(g)))
    }

    pub fn apply(&self, g: Degree, v: &[CyclotomicScalar]) -> Vec<CyclotomicScalar> {
        self.block(g).apply(v)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// First degree at which `f d = d f` fails.
    fn check(&self) -> Result<(), ModuleError> {
        let s = self.source.scheme();
        for g in self.source.support() {
            for dir in [Direction::D0, Direction::D1] {
                let t = s.advance(g, dir, 1);
                let lhs = self.block(t).mul(&self.source.block(dir, g));
                let rhs = self.target.block(dir, g).mul(&self.block(g));
                if lhs != rhs {
                    return Err(ModuleError::NotMorphism(g));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMorphism) -> Result<Self, ModuleError> {
        if first.target != self.source {
            return Err(ModuleError::NotComposable);
        }
        let blocks = first
            .blocks
            .iter()
            .filter(|(g, _)| self.blocks.contains_key(g))
            .map(|(&g, b)| (g, self.blocks[&g].mul(b)))
            .collect();
        Ok(Self::from_parts(&first.source, &self.target, blocks))
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<Self, ModuleError> {
        if self.source != other.source || self.target != other.target {
            return Err(ModuleError::NotComposable);
        }
        let mut blocks = self.blocks.clone();
        for (&g, b) in &other.blocks {
            let sum = match blocks.get(&g) {
                Some(a) => a.add(b),
                None => b.clone(),
            };
            blocks.insert(g, sum);
        }
        Ok(Self::from_parts(&self.source, &self.target, blocks))
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        let blocks = self.blocks.iter().map(|(&g, b)| (g, b.scale(c))).collect();
        Self::from_parts(&self.source, &self.target, blocks)
    }

    pub fn is_injective(&self) -> bool {
        self.source.dims().iter().all(|(&g, &k)| self.block(g).rank() == k)
    }

    pub fn is_surjective(&self) -> bool {
        self.target.dims().iter().all(|(&g, &k)| self.block(g).rank() == k)
    }

    /// The same map between the swapped modules.
    pub fn swap(&self) -> Self {
        let blocks = self.blocks.iter().map(|(&(a, b), m)| ((b, a), m.clone())).collect();
        Self::from_parts(&self.source.swap(), &self.target.swap(), blocks)
    }
}

impl PartialEq for ModuleMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.blocks == other.blocks
    }
}

impl Eq for ModuleMorphism {}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMorphism")
            .field("source_dims", self.source.dims())
            .field("target_dims", self.target.dims())
            .field("blocks", &self.blocks)
            .finish()
    }
}
