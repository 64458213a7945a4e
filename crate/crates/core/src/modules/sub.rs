use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Degree, Direction, GradedModule, ModuleError, ModuleMorphism};
use crate::arith::{CyclotomicScalar, Echelon, Matrix};

/// The smallest submodule containing the given homogeneous vectors, with its
/// inclusion.
pub fn submodule_generated_by(
    x: &GradedModule,
    generators: &[(Degree, Vec<CyclotomicScalar>)],
) -> Result<(GradedModule, ModuleMorphism), ModuleError> {
    let s = x.scheme();
    let f = x.field();
    let mut spans: BTreeMap<Degree, (Echelon, Vec<Vec<CyclotomicScalar>>)> = BTreeMap::new();
    let mut queue: Vec<(Degree, Vec<CyclotomicScalar>)> = Vec::new();
    for (g, v) in generators {
        let g = s.normalize(*g);
        if v.len() != x.dim_at(g) {
            return Err(ModuleError::BadBlock(g));
        }
        queue.push((g, v.clone()));
    }
    while let Some((g, v)) = queue.pop() {
        if v.iter().all(CyclotomicScalar::is_zero) {
            continue;
        }
        let (ech, basis) = spans.entry(g).or_insert_with(|| (Echelon::new(f, x.dim_at(g)), Vec::new()));
        if !ech.insert_dense(v.clone()) {
            continue;
        }
        basis.push(v.clone());
        for dir in [Direction::D0, Direction::D1] {
            queue.push((s.advance(g, dir, 1), x.apply(dir, g, &v)));
        }
    }
    let embed: BTreeMap<Degree, Matrix> = spans
        .into_iter()
        .map(|(g, (_, cols))| (g, Matrix::from_columns(f, x.dim_at(g), &cols)))
        .collect();
    let dims: BTreeMap<Degree, usize> = embed.iter().map(|(&g, b)| (g, b.cols())).collect();
    let mut blocks = [BTreeMap::new(), BTreeMap::new()];
    for dir in [Direction::D0, Direction::D1] {
        for (&g, b) in &embed {
            let t = s.advance(g, dir, 1);
            let Some(bt) = embed.get(&t) else { continue };
            let image = x.block(dir, g).mul(b);
            let coords = bt.solve(&image).expect("submodule is closed under the differentials");
            blocks[dir.index()].insert(g, coords);
        }
    }
    let [d0, d1] = blocks;
    let sub = GradedModule::from_parts(s, dims, d0, d1);
    let inclusion = ModuleMorphism::from_parts(&sub, x, embed);
    Ok((sub, inclusion))
}

/// The cokernel of an injective morphism `i: S → X`, with the projection
/// `X → X / i(S)`.
pub fn quotient(i: &ModuleMorphism) -> Result<(GradedModule, ModuleMorphism), ModuleError> {
    if !i.is_injective() {
        return Err(ModuleError::Unsupported("quotient needs an injective morphism"));
    }
    let x = i.target();
    let s = x.scheme();
    let f = x.field();
    let mut complements = BTreeMap::new();
    let mut projections = BTreeMap::new();
    for (&g, &d) in x.dims() {
        let image = i.block(g);
        let mut ech = Echelon::new(f, d);
        for c in 0..image.cols() {
            ech.insert_dense(image.column(c));
        }
        let mut extra = Vec::new();
        for k in 0..d {
            let mut e = vec![f.zero(); d];
            e[k] = f.one();
            if ech.insert_dense(e.clone()) {
                extra.push(e);
            }
        }
        if extra.is_empty() {
            continue;
        }
        let comp = Matrix::from_columns(f, d, &extra);
        let full = image.hstack(&comp).inverse().expect("image plus complement is a basis");
        projections.insert(g, full.submatrix(image.cols(), 0, extra.len(), d));
        complements.insert(g, comp);
    }
    let dims: BTreeMap<Degree, usize> = complements.iter().map(|(&g, c)| (g, c.cols())).collect();
    let mut blocks = [BTreeMap::new(), BTreeMap::new()];
    for dir in [Direction::D0, Direction::D1] {
        for (&g, c) in &complements {
            let t = s.advance(g, dir, 1);
            let Some(p) = projections.get(&t) else { continue };
            blocks[dir.index()].insert(g, p.mul(&x.block(dir, g)).mul(c));
        }
    }
    let [d0, d1] = blocks;
    let q = GradedModule::from_parts(s, dims, d0, d1);
    let proj = ModuleMorphism::from_parts(x, &q, projections);
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::super::GradingScheme;
    use super::*;

    #[test]
    fn socle_of_free_module() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let f = s.field();
        let x = GradedModule::free(&s, (0, 0));
        let (sub, inc) = submodule_generated_by(&x, &[((2, 4), vec![f.one()])]).unwrap();
        assert_eq!(sub.dim(), 1);
        assert!(inc.is_injective());
        let (q, p) = quotient(&inc).unwrap();
        assert_eq!(q.dim(), 14);
        q.validate().unwrap();
        assert!(p.is_surjective());
        assert!(p.compose(&inc).unwrap().is_zero());
    }

    #[test]
    fn generator_spans_everything() {
        let s = GradingScheme::cyclic(3, 5).unwrap();
        let f = s.field();
        let x = GradedModule::free(&s, (0, 0));
        let (sub, _) = submodule_generated_by(&x, &[((0, 0), vec![f.root_of_unity(2)])]).unwrap();
        assert_eq!(sub.dim(), 15);
    }
}
