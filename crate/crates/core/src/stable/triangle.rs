use super::StableError;
use crate::modules::{GradedModule, ModuleError, ModuleMorphism};

/// The triangle `X → Y → Z → ΣX` coming from a short exact sequence
/// `0 → X → Y → Z → 0`. The connecting map is not stored.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub x: GradedModule,
    pub y: GradedModule,
    pub z: GradedModule,
    pub i: ModuleMorphism,
    pub p: ModuleMorphism,
}

/// Checks that `0 → X → Y → Z → 0` is exact degree by degree.
pub fn cone_from_ses(i: &ModuleMorphism, p: &ModuleMorphism) -> Result<Triangle, StableError> {
    if i.target() != p.source() {
        return Err(ModuleError::NotComposable.into());
    }
    let (x, y, z) = (i.source(), i.target(), p.target());
    let pi = p.compose(i)?;
    let mut degrees: alloc::vec::Vec<_> = x.support().chain(y.support()).chain(z.support()).collect();
    degrees.sort();
    degrees.dedup();
    for g in degrees {
        let (a, b) = (i.block(g), p.block(g));
        let ok = a.rank() == x.dim_at(g)
            && b.rank() == z.dim_at(g)
            && x.dim_at(g) + z.dim_at(g) == y.dim_at(g)
            && pi.block(g).is_zero();
        if !ok {
            return Err(StableError::NotExact(g));
        }
    }
    Ok(Triangle {
        x: x.clone(),
        y: y.clone(),
        z: z.clone(),
        i: i.clone(),
        p: p.clone(),
    })
}
