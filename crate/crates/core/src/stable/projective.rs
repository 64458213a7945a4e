use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{CyclotomicScalar, Echelon, Matrix};
use crate::modules::{Degree, Direction, GradedModule, ModuleMorphism};

/// Lifts of a basis of the top `X / (im d0 + im d1)`, degree by degree.
pub fn top(x: &GradedModule) -> Vec<(Degree, Vec<CyclotomicScalar>)> {
    let s = x.scheme();
    let f = x.field();
    let mut out = Vec::new();
    for (&g, &dim) in x.dims() {
        let mut ech = Echelon::new(f, dim);
        for dir in [Direction::D0, Direction::D1] {
            let b = x.block(dir, s.advance(g, dir, -1));
            for c in 0..b.cols() {
                ech.insert_dense(b.column(c));
            }
        }
        for k in 0..dim {
            let mut e = vec![f.zero(); dim];
            e[k] = f.one();
            if ech.insert_dense(e.clone()) {
                out.push((g, e));
            }
        }
    }
    out
}

/// `d0^a d1^b v` for every `a < n`, `b < m`, with its degree.
pub(crate) fn orbit(x: &GradedModule, g: Degree, v: &[CyclotomicScalar]) -> Vec<(usize, usize, Degree, Vec<CyclotomicScalar>)> {
    let s = x.scheme();
    let (n, m) = (s.n() as usize, s.m() as usize);
    let mut out = Vec::with_capacity(n * m);
    let mut col_start = v.to_vec();
    let mut col_deg = s.normalize(g);
    for a in 0..n {
        let mut cur = col_start.clone();
        let mut h = col_deg;
        for b in 0..m {
            let next = x.apply(Direction::D1, h, &cur);
            out.push((a, b, h, cur));
            cur = next;
            h = s.advance(h, Direction::D1, 1);
        }
        col_start = x.apply(Direction::D0, col_deg, &col_start);
        col_deg = s.advance(col_deg, Direction::D0, 1);
    }
    out
}

/// The map from the free module on the top generators onto `x`.
pub fn projective_cover(x: &GradedModule) -> ModuleMorphism {
    let s = x.scheme();
    let gens = top(x);
    let frees: Vec<GradedModule> = gens.iter().map(|(g, _)| GradedModule::free(s, *g)).collect();
    let cover = GradedModule::direct_sum_all(s, &frees).expect("same scheme");
    let mut columns: BTreeMap<Degree, Vec<Vec<CyclotomicScalar>>> = BTreeMap::new();
    // summands are stacked in order and each is at most one-dimensional per degree
    for (g, v) in &gens {
        for (_, _, h, w) in orbit(x, *g, v) {
            columns.entry(h).or_default().push(w);
        }
    }
    let blocks = columns
        .into_iter()
        .map(|(h, cols)| (h, Matrix::from_columns(x.field(), x.dim_at(h), &cols)))
        .collect();
    ModuleMorphism::new(&cover, x, blocks).expect("cover map commutes with the differentials")
}

/// Whether `x` is projective, that is free: the free module on its top maps
/// onto it and has the same dimension.
pub fn is_projective(x: &GradedModule) -> bool {
    let s = x.scheme();
    let gens = top(x);
    if gens.len() * (s.n() * s.m()) as usize != x.dim() {
        return false;
    }
    let mut spans: BTreeMap<Degree, Echelon> = BTreeMap::new();
    for (g, v) in &gens {
        for (_, _, h, w) in orbit(x, *g, v) {
            spans.entry(h).or_insert_with(|| Echelon::new(x.field(), x.dim_at(h))).insert_dense(w);
        }
    }
    x.dims().iter().all(|(g, &k)| spans.get(g).map_or(0, Echelon::rank) == k)
}

/// In a Frobenius category an object is stably zero exactly when it is projective.
pub fn is_stably_zero(x: &GradedModule) -> bool {
    is_projective(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::random::{random_module_in, rng_from_seed, Family};
    use crate::modules::GradingScheme;

    #[test]
    fn basic_cases() {
        for s in [GradingScheme::z2(3, 5).unwrap(), GradingScheme::cyclic(3, 5).unwrap()] {
            let f = GradedModule::free(&s, (1, 2));
            assert!(is_projective(&f));
            assert!(!is_projective(&GradedModule::simple(&s, (0, 0))));
            let t = f.tensor(&GradedModule::interval(&s, (0, 0), Direction::D0, 2).unwrap()).unwrap();
            assert!(is_projective(&t));
            assert!(is_stably_zero(&t));
            assert!(is_projective(&GradedModule::zero(&s)));
        }
        assert!(!is_projective(&GradedModule::counterexample(3, 5).unwrap()));
    }

    #[test]
    fn cover_is_surjective() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let mut rng = rng_from_seed(1);
        for _ in 0..5 {
            let x = random_module_in(&s, Family::Any, 20, &mut rng);
            let p = projective_cover(&x);
            assert!(p.is_surjective());
            assert_eq!(p.source().dim(), 15 * top(&x).len());
        }
    }

    #[test]
    fn random_projectives() {
        let s = GradingScheme::z2(3, 5).unwrap();
        let mut rng = rng_from_seed(2);
        for _ in 0..5 {
            assert!(is_projective(&random_module_in(&s, Family::Projective, 45, &mut rng)));
        }
    }
}
