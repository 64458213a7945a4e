use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;

use super::projective::{orbit, top};
use crate::arith::{CyclotomicScalar, Echelon, Matrix, SparseVec};
use crate::modules::{Degree, Direction, GradedModule, ModuleError, ModuleMorphism};

/// `Hom(X, Y)` presented by coordinates: one unknown per entry of each block
/// `f_g`, for `g` in both supports.
pub struct HomSpace {
    source: GradedModule,
    target: GradedModule,
    /// `(offset, rows, cols)` of each block among the unknowns.
    layout: BTreeMap<Degree, (usize, usize, usize)>,
    unknowns: usize,
    /// Basis of the solution space, as coordinate vectors.
    basis: Vec<Vec<CyclotomicScalar>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn basis(&self) -> Vec<ModuleMorphism> {
        self.basis.iter().map(|v| self.morphism(v)).collect()
    }

    /// The morphism with the given coordinates.
    pub fn morphism(&self, coords: &[CyclotomicScalar]) -> ModuleMorphism {
        let f = self.source.field();
        let blocks = self
            .layout
            .iter()
            .map(|(&g, &(off, rows, cols))| {
                let data = (0..rows).map(|r| coords[off + r * cols..off + (r + 1) * cols].to_vec()).collect();
                (g, Matrix::from_rows(f, data, cols))
            })
            .collect();
        ModuleMorphism::from_parts(&self.source, &self.target, blocks)
    }

    /// Coordinates of a morphism between the same modules.
    pub fn coordinates(&self, m: &ModuleMorphism) -> SparseVec {
        let mut out = Vec::new();
        for (&g, &(off, rows, cols)) in &self.layout {
            if let Some(b) = m.blocks().get(&g) {
                for r in 0..rows {
                    for c in 0..cols {
                        let v = b.get(r, c);
                        if !v.is_zero() {
                            out.push((off + r * cols + c, v.clone()));
                        }
                    }
                }
            }
        }
        out
    }

    fn index(&self, g: Degree, r: usize, c: usize) -> Option<usize> {
        self.layout.get(&g).map(|&(off, _, cols)| off + r * cols + c)
    }
}

/// All module maps `X → Y`, by solving `f d = d f` blockwise.
pub fn hom_space(x: &GradedModule, y: &GradedModule) -> Result<HomSpace, ModuleError> {
    if x.scheme() != y.scheme() {
        return Err(ModuleError::SchemeMismatch);
    }
    let s = x.scheme();
    let mut layout = BTreeMap::new();
    let mut unknowns = 0;
    for (&g, &cols) in x.dims() {
        let rows = y.dim_at(g);
        if rows > 0 {
            layout.insert(g, (unknowns, rows, cols));
            unknowns += rows * cols;
        }
    }
    let mut space = HomSpace {
        source: x.clone(),
        target: y.clone(),
        layout,
        unknowns,
        basis: Vec::new(),
    };
    let mut ech = Echelon::new(s.field(), unknowns);
    for g in x.support() {
        for dir in [Direction::D0, Direction::D1] {
            let t = s.advance(g, dir, 1);
            let dx = x.blocks(dir).get(&g);
            let dy = y.blocks(dir).get(&g);
            let (rows, cols) = (y.dim_at(t), x.dim_at(g));
            for r in 0..rows {
                for c in 0..cols {
                    // (f_t dX_g - dY_g f_g)[r, c]
                    let mut eq: BTreeMap<usize, CyclotomicScalar> = BTreeMap::new();
                    if let Some(dx) = dx {
                        for k in 0..dx.rows() {
                            let a = dx.get(k, c);
                            if let (false, Some(i)) = (a.is_zero(), space.index(t, r, k)) {
                                accumulate(&mut eq, i, a.clone());
                            }
                        }
                    }
                    if let Some(dy) = dy {
                        for k in 0..dy.cols() {
                            let a = dy.get(r, k);
                            if let (false, Some(i)) = (a.is_zero(), space.index(g, k, c)) {
                                accumulate(&mut eq, i, -a);
                            }
                        }
                    }
                    let row: SparseVec = eq.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    if !row.is_empty() {
                        ech.insert(&row);
                    }
                }
            }
        }
    }
    space.basis = ech.kernel();
    Ok(space)
}

fn accumulate(eq: &mut BTreeMap<usize, CyclotomicScalar>, i: usize, v: CyclotomicScalar) {
    match eq.get_mut(&i) {
        Some(e) => *e += &v,
        None => {
            eq.insert(i, v);
        }
    }
}

/// Morphisms modulo those factoring through a projective.
pub struct StableHom {
    pub hom: HomSpace,
    /// Dimension of the subspace of maps factoring through a projective.
    pub null_dim: usize,
    /// Hom basis elements whose classes form a basis of the stable Hom space.
    pub representatives: Vec<ModuleMorphism>,
    null: Echelon,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.hom.dim() - self.null_dim
    }

    /// Whether `f: X → Y` factors through a projective module.
    pub fn is_stably_trivial(&self, f: &ModuleMorphism) -> bool {
        self.null.contains(&self.hom.coordinates(f))
    }
}

/// `Hom` in the stable category.
///
/// A map factors through a projective iff it lifts along the projective cover
/// `π: F → Y`. Maps `X → F` are parametrized by functionals on the socle
/// degrees: for a top generator `v` of `Y` in degree `g` with socle degree
/// `s = g + (n-1)e0 + (m-1)e1` and a functional `λ` on `X_s`,
/// `x ↦ λ(d0^{n-1-a} d1^{m-1-b} x) · d0^a d1^b v` for `x` in degree
/// `g + a e0 + b e1` spans `π ∘ Hom(X, F)`.
pub fn stable_hom(x: &GradedModule, y: &GradedModule) -> Result<StableHom, ModuleError> {
    let hom = hom_space(x, y)?;
    let s = x.scheme();
    let (n, m) = (s.n() as usize, s.m() as usize);
    let f = s.field();
    let mut null = Echelon::new(f, hom.unknowns);
    for (g, v) in top(y) {
        let socle = s.advance(s.advance(g, Direction::D0, n as i64 - 1), Direction::D1, m as i64 - 1);
        let socle_dim = x.dim_at(socle);
        if socle_dim == 0 {
            continue;
        }
        // (degree, functional matrix P: X_h → X_socle, image vector in Y_h)
        let pieces: Vec<(Degree, Matrix, Vec<CyclotomicScalar>)> = orbit(y, g, &v)
            .into_iter()
            .filter(|(_, _, h, _)| hom.layout.contains_key(h))
            .map(|(a, b, h, w)| {
                let p0 = x.power(Direction::D0, h, n - 1 - a);
                let mid = s.advance(h, Direction::D0, (n - 1 - a) as i64);
                let p = x.power(Direction::D1, mid, m - 1 - b).mul(&p0);
                (h, p, w)
            })
            .collect();
        for c in 0..socle_dim {
            let mut coords: SparseVec = Vec::new();
            for (h, p, w) in &pieces {
                for (r, wr) in w.iter().enumerate() {
                    if wr.is_zero() {
                        continue;
                    }
                    for col in 0..p.cols() {
                        let a = p.get(c, col);
                        if !a.is_zero() {
                            coords.push((hom.index(*h, r, col).expect("in layout"), wr * a));
                        }
                    }
                }
            }
            coords.sort_by_key(|e| e.0);
            null.insert(&coords);
        }
    }
    let null_dim = null.rank();
    let mut quotient = null.clone();
    let mut representatives = Vec::new();
    for v in &hom.basis {
        if quotient.insert_dense(v.clone()) {
            representatives.push(hom.morphism(v));
        }
    }
    Ok(StableHom {
        hom,
        null_dim,
        representatives,
        null,
    })
}

/// A random integer combination of a basis of `Hom(X, Y)`.
pub fn random_morphism<R: Rng>(x: &GradedModule, y: &GradedModule, rng: &mut R) -> Result<ModuleMorphism, ModuleError> {
    let hom = hom_space(x, y)?;
    let f = x.field();
    let mut coords = alloc::vec![f.zero(); hom.unknowns];
    for b in &hom.basis {
        let c = f.int(rng.gen_range(-2..=2));
        if c.is_zero() {
            continue;
        }
        for (acc, v) in coords.iter_mut().zip(b) {
            if !v.is_zero() {
                *acc += &(&c * v);
            }
        }
    }
    Ok(hom.morphism(&coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::random::{random_module_in, rng_from_seed, Family};
    use crate::modules::GradingScheme;
    use crate::stable::{is_projective, projective_cover};

    #[test]
    fn simple_to_simple() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let x = GradedModule::simple(&s, (0, 0));
        let st = stable_hom(&x, &x).unwrap();
        assert_eq!(st.hom.dim(), 1);
        assert_eq!(st.dim(), 1);
        assert!(!st.is_stably_trivial(&ModuleMorphism::identity(&x)));
    }

    #[test]
    fn free_source_is_stably_zero() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let mut rng = rng_from_seed(4);
        let f = GradedModule::free(&s, (0, 0));
        for _ in 0..5 {
            let y = random_module_in(&s, Family::Any, 25, &mut rng);
            assert_eq!(stable_hom(&f, &y).unwrap().dim(), 0);
        }
    }

    #[test]
    fn hom_basis_commutes() {
        let s = GradingScheme::cyclic(3, 5).unwrap();
        let c = GradedModule::counterexample(3, 5).unwrap();
        let h = hom_space(&c, &c).unwrap();
        for m in h.basis() {
            ModuleMorphism::new(m.source(), m.target(), m.blocks().clone()).unwrap();
        }
        assert!(h.dim() >= 1);
        let _ = s;
    }

    /// Maps factoring through the cover, computed by composing `π` with a basis
    /// of `Hom(X, F)`.
    fn null_dim_by_composition(x: &GradedModule, y: &GradedModule) -> usize {
        let pi = projective_cover(y);
        let hf = hom_space(x, pi.source()).unwrap();
        let hy = hom_space(x, y).unwrap();
        let mut e = Echelon::new(x.field(), hy.unknowns);
        for g in hf.basis() {
            e.insert(&hy.coordinates(&pi.compose(&g).unwrap()));
        }
        e.rank()
    }

    #[test]
    fn null_space_matches_composition_oracle() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let mut rng = rng_from_seed(9);
        for _ in 0..6 {
            let x = random_module_in(&s, Family::Any, 12, &mut rng);
            let y = random_module_in(&s, Family::Any, 12, &mut rng);
            assert_eq!(stable_hom(&x, &y).unwrap().null_dim, null_dim_by_composition(&x, &y));
        }
        let c = GradedModule::counterexample(3, 5).unwrap();
        assert_eq!(stable_hom(&c, &c).unwrap().null_dim, null_dim_by_composition(&c, &c));
    }

    #[test]
    fn identity_is_stably_trivial_iff_projective() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let mut rng = rng_from_seed(12);
        for family in [Family::Any, Family::Projective, Family::KerP0] {
            let x = random_module_in(&s, family, 30, &mut rng);
            let st = stable_hom(&x, &x).unwrap();
            assert_eq!(st.is_stably_trivial(&ModuleMorphism::identity(&x)), is_projective(&x));
        }
    }

    #[test]
    fn random_morphisms_commute() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let mut rng = rng_from_seed(13);
        let x = random_module_in(&s, Family::Any, 15, &mut rng);
        let y = random_module_in(&s, Family::KerP1, 15, &mut rng);
        let f = random_morphism(&x, &y, &mut rng).unwrap();
        ModuleMorphism::new(&x, &y, f.blocks().clone()).unwrap();
    }
}
