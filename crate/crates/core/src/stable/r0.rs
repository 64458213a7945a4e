use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{restrict_p0, RestrictedModule, StableError};
use crate::arith::{CyclotomicScalar, Echelon, Matrix, SparseVec};
use crate::modules::{Degree, Direction, GradedModule, ModuleMorphism, SchemeKind};

/// `R0 Y = Y ⊕ Y{1,0} ⊕ … ⊕ Y{n-1,0}` with `d0 (y_0, …, y_{n-1}) = (y_1, …, y_{n-1}, 0)`
/// and `d1` acting diagonally.
///
/// In degree `h` the summand (copy) `i` holds `Y` at `h + i e0`; copies are
/// listed by ascending `i`.
pub fn r0(y: &RestrictedModule) -> Result<GradedModule, StableError> {
    if y.survivor() != Direction::D1 {
        return Err(StableError::WrongRestriction { expected: Direction::D1 });
    }
    let w = y.module();
    let s = w.scheme();
    let f = s.field();
    let n = s.n() as i64;
    let layout = CopyLayout::new(w);
    let mut d0 = BTreeMap::new();
    let mut d1 = BTreeMap::new();
    for (&h, &dim) in &layout.dims {
        let h0 = s.advance(h, Direction::D0, 1);
        if let Some(&tdim) = layout.dims.get(&h0) {
            let mut b = Matrix::zero(f, tdim, dim);
            for i in 0..n - 1 {
                // copy i + 1 at h and copy i at h + e0 hold the same component of Y
                let k = w.dim_at(s.advance(h, Direction::D0, i + 1));
                let (src, tgt) = (layout.offset(w, h, i + 1), layout.offset(w, h0, i));
                for j in 0..k {
                    b.set(tgt + j, src + j, f.one());
                }
            }
            d0.insert(h, b);
        }
        let h1 = s.advance(h, Direction::D1, 1);
        if let Some(&tdim) = layout.dims.get(&h1) {
            let mut b = Matrix::zero(f, tdim, dim);
            for i in 0..n {
                let g = s.advance(h, Direction::D0, i);
                b.paste(layout.offset(w, h1, i), layout.offset(w, h, i), &w.block(Direction::D1, g));
            }
            d1.insert(h, b);
        }
    }
    Ok(GradedModule::from_blocks(s, layout.dims, d0, d1)?)
}

struct CopyLayout {
    dims: BTreeMap<Degree, usize>,
}

impl CopyLayout {
    fn new(w: &GradedModule) -> Self {
        let s = w.scheme();
        let mut dims = BTreeMap::new();
        for g in w.support() {
            for i in 0..s.n() as i64 {
                let h = s.advance(g, Direction::D0, -i);
                *dims.entry(h).or_insert(0) += w.dim_at(g);
            }
        }
        Self { dims }
    }

    fn offset(&self, w: &GradedModule, h: Degree, copy: i64) -> usize {
        let s = w.scheme();
        (0..copy).map(|j| w.dim_at(s.advance(h, Direction::D0, j))).sum()
    }
}

/// `η_X: X → R0 P0 X`, `x ↦ (x, d0 x, …, d0^{n-1} x)`.
pub fn eta(x: &GradedModule) -> Result<ModuleMorphism, StableError> {
    let s = x.scheme();
    let n = s.n() as usize;
    let target = r0(&restrict_p0(x))?;
    let blocks = x
        .dims()
        .keys()
        .map(|&h| {
            let parts: Vec<Matrix> = (0..n).map(|i| x.power(Direction::D0, h, i)).collect();
            let stacked = parts[1..].iter().fold(parts[0].clone(), |acc, p| acc.vstack(p));
            (h, stacked)
        })
        .collect();
    Ok(ModuleMorphism::new(x, &target, blocks)?)
}

/// `R1`, obtained from `R0` by exchanging the two tensor factors.
pub fn r1(y: &RestrictedModule) -> Result<GradedModule, StableError> {
    if y.survivor() != Direction::D0 {
        return Err(StableError::WrongRestriction { expected: Direction::D0 });
    }
    let swapped = restrict_p0(&y.module().swap());
    Ok(r0(&swapped)?.swap())
}

/// `η1: X → R1 P1 X`.
pub fn eta1(x: &GradedModule) -> Result<ModuleMorphism, StableError> {
    Ok(eta(&x.swap())?.swap())
}

/// Given `f: X → Y` with `Y` in the kernel of `P1`, finds `g: R0 P0 X → Y`
/// with `g ∘ η_X = f`.
///
/// Such a `g` is determined by a `d1`-linear `ψ: X → Y` of degree
/// `-(n-1) e0` (its restriction to the last copy), and then
/// `g η x = Σ_i d0^{n-1-i} ψ(d0^i x)`. In the Z2 scheme `ψ` is found slice by
/// slice in the first coordinate, from the top down, each slice being one
/// exact linear solve. In the cyclic scheme there is no top slice and all of
/// `ψ` is solved for at once.
pub fn factor_through_eta(f: &ModuleMorphism) -> Result<ModuleMorphism, StableError> {
    match f.source().scheme().kind() {
        SchemeKind::Z2 => {
            let x = f.source();
            let mut slices: Vec<i64> = x.support().map(|g| g.0).collect();
            slices.dedup();
            let mut psi = BTreeMap::new();
            for &a in slices.iter().rev() {
                let degrees: Vec<Degree> = x.support().filter(|g| g.0 == a).collect();
                solve_psi(f, &degrees, &mut psi)?;
            }
            assemble(f, &psi)
        }
        SchemeKind::Cyclic => factor_through_eta_global(f),
    }
}

/// Solves for all of `ψ` in a single linear system.
pub fn factor_through_eta_global(f: &ModuleMorphism) -> Result<ModuleMorphism, StableError> {
    let degrees: Vec<Degree> = f.source().support().collect();
    let mut psi = BTreeMap::new();
    solve_psi(f, &degrees, &mut psi)?;
    assemble(f, &psi)
}

/// The symmetric statement for `Y ∈ ker P0`: `g: R1 P1 X → Y` with `g ∘ η1 = f`.
pub fn factor_through_eta1(f: &ModuleMorphism) -> Result<ModuleMorphism, StableError> {
    Ok(factor_through_eta(&f.swap())?.swap())
}

/// Solves for the blocks `ψ_g`, `g ∈ degrees`, given the already fixed blocks
/// in `psi`. Equations: `Σ_i d0^{n-1-i} ψ_{g + i e0} d0^i = f_g` and
/// `ψ_{g + e1} d1 = d1 ψ_g`, for `g ∈ degrees`.
fn solve_psi(f: &ModuleMorphism, degrees: &[Degree], psi: &mut BTreeMap<Degree, Matrix>) -> Result<(), StableError> {
    let x = f.source();
    let y = f.target();
    let s = x.scheme();
    let field = s.field();
    let n = s.n() as i64;
    let shift = |g: Degree| s.advance(g, Direction::D0, -(n - 1));
    // unknown layout: ψ_g is dim Y_{shift g} × dim X_g
    let mut layout: BTreeMap<Degree, (usize, usize, usize)> = BTreeMap::new();
    let mut count = 0;
    for &g in degrees {
        let (rows, cols) = (y.dim_at(shift(g)), x.dim_at(g));
        if rows * cols > 0 {
            layout.insert(g, (count, rows, cols));
            count += rows * cols;
        }
    }
    let rhs = count;
    let mut ech = Echelon::new(field, count + 1);
    let mut first_bad: Option<Degree> = None;
    let mut push = |ech: &mut Echelon, row: BTreeMap<usize, CyclotomicScalar>, g: Degree| {
        let row: SparseVec = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if row.is_empty() {
            return;
        }
        ech.insert(&row);
        if first_bad.is_none() && ech.has_pivot(rhs) {
            first_bad = Some(g);
        }
    };
    for &g in degrees {
        let xd = x.dim_at(g);
        let yd = y.dim_at(g);
        // Σ_i A_i ψ_{g + i e0} B_i = f_g with A_i = d0^{n-1-i}, B_i = d0^i
        let mut known = f.block(g);
        let mut terms: Vec<(Degree, Matrix, Matrix)> = Vec::new();
        for i in 0..n {
            let src = s.advance(g, Direction::D0, i);
            if x.dim_at(src) == 0 {
                continue;
            }
            let a = y.power(Direction::D0, shift(src), (n - 1 - i) as usize);
            let b = x.power(Direction::D0, g, i as usize);
            if let Some(p) = psi.get(&src) {
                known = known.sub(&a.mul(p).mul(&b));
            } else if layout.contains_key(&src) {
                terms.push((src, a, b));
            }
        }
        for r in 0..yd {
            for c in 0..xd {
                let mut row: BTreeMap<usize, CyclotomicScalar> = BTreeMap::new();
                for (src, a, b) in &terms {
                    let (off, rows, cols) = layout[src];
                    for p in 0..rows {
                        let ap = a.get(r, p);
                        if ap.is_zero() {
                            continue;
                        }
                        for q in 0..cols {
                            let bq = b.get(q, c);
                            if !bq.is_zero() {
                                add_to(&mut row, off + p * cols + q, ap * bq);
                            }
                        }
                    }
                }
                add_to(&mut row, rhs, known.get(r, c).clone());
                push(&mut ech, row, g);
            }
        }
        // ψ_{g+e1} d1X_g - d1Y_{shift g} ψ_g = 0
        let g1 = s.advance(g, Direction::D1, 1);
        let dx = x.block(Direction::D1, g);
        let dy = y.block(Direction::D1, shift(g));
        let rows_t = y.dim_at(shift(g1));
        for r in 0..rows_t {
            for c in 0..xd {
                let mut row: BTreeMap<usize, CyclotomicScalar> = BTreeMap::new();
                for k in 0..dx.rows() {
                    let v = dx.get(k, c);
                    if v.is_zero() {
                        continue;
                    }
                    if let Some(p) = psi.get(&g1) {
                        add_to(&mut row, rhs, -(p.get(r, k) * v));
                    } else if let Some(&(off, _, cols)) = layout.get(&g1) {
                        add_to(&mut row, off + r * cols + k, v.clone());
                    }
                }
                if let Some(&(off, _, cols)) = layout.get(&g) {
                    for k in 0..dy.cols() {
                        let v = dy.get(r, k);
                        if !v.is_zero() {
                            add_to(&mut row, off + k * cols + c, -v);
                        }
                    }
                }
                push(&mut ech, row, g);
            }
        }
    }
    if let Some(g) = first_bad {
        return Err(StableError::NoFactorization(g));
    }
    let sol = ech.particular_solution().ok_or(StableError::NoFactorization(degrees[0]))?;
    for (g, (off, rows, cols)) in layout {
        let data = (0..rows).map(|r| sol[off + r * cols..off + (r + 1) * cols].to_vec()).collect();
        psi.insert(g, Matrix::from_rows(field, data, cols));
    }
    Ok(())
}

fn add_to(row: &mut BTreeMap<usize, CyclotomicScalar>, i: usize, v: CyclotomicScalar) {
    if v.is_zero() {
        return;
    }
    match row.get_mut(&i) {
        Some(e) => *e += &v,
        None => {
            row.insert(i, v);
        }
    }
}

/// `g` on copy `i` in degree `h` is `d0^{n-1-i} ψ_{h + i e0}`.
fn assemble(f: &ModuleMorphism, psi: &BTreeMap<Degree, Matrix>) -> Result<ModuleMorphism, StableError> {
    let x = f.source();
    let y = f.target();
    let s = x.scheme();
    let field = s.field();
    let n = s.n() as i64;
    let source = r0(&restrict_p0(x))?;
    let mut blocks = BTreeMap::new();
    for (&h, &dim) in source.dims() {
        let yd = y.dim_at(h);
        if yd == 0 {
            continue;
        }
        let mut b = Matrix::zero(field, yd, dim);
        let mut col = 0;
        for i in 0..n {
            let g = s.advance(h, Direction::D0, i);
            let k = x.dim_at(g);
            if let Some(p) = psi.get(&g) {
                let from = s.advance(g, Direction::D0, -(n - 1));
                let a = y.power(Direction::D0, from, (n - 1 - i) as usize);
                b.paste(0, col, &a.mul(p));
            }
            col += k;
        }
        blocks.insert(h, b);
    }
    Ok(ModuleMorphism::new(&source, y, blocks)?)
}
