use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Degree, Direction, GradedModule, ModuleError};
use crate::arith::Matrix;

impl GradedModule {
    /// `M{i, j}`: the component of the result at `(a, b)` is `M` at `(a + i, b + j)`.
    pub fn shift(&self, by: Degree) -> Self {
        let s = &self.scheme;
        let mv = |g: Degree| s.sub(g, by);
        let dims = self.dims.iter().map(|(&g, &k)| (mv(g), k)).collect();
        let [d0, d1] = self.blocks.clone().map(|map| map.into_iter().map(|(g, b)| (mv(g), b)).collect());
        Self::from_parts(s, dims, d0, d1)
    }

    /// `X ⊕ Y`, with the basis of `X` first in every degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, ModuleError> {
        if self.scheme != other.scheme {
            return Err(ModuleError::SchemeMismatch);
        }
        let s = &self.scheme;
        let mut dims = self.dims.clone();
        for (&g, &k) in &other.dims {
            *dims.entry(g).or_insert(0) += k;
        }
        let mut blocks = [BTreeMap::new(), BTreeMap::new()];
        for dir in [Direction::D0, Direction::D1] {
            let sources: alloc::collections::BTreeSet<Degree> =
                self.blocks(dir).keys().chain(other.blocks(dir).keys()).copied().collect();
            for g in sources {
                let t = s.advance(g, dir, 1);
                let mut b = Matrix::zero(s.field(), dims[&t], dims[&g]);
                b.paste(0, 0, &self.block(dir, g));
                b.paste(self.dim_at(t), self.dim_at(g), &other.block(dir, g));
                blocks[dir.index()].insert(g, b);
            }
        }
        let [d0, d1] = blocks;
        Ok(Self::from_parts(s, dims, d0, d1))
    }

    /// Direct sum of a list of modules.
    pub fn direct_sum_all<'a>(scheme: &super::GradingScheme, parts: impl IntoIterator<Item = &'a Self>) -> Result<Self, ModuleError> {
        parts.into_iter().try_fold(Self::zero(scheme), |acc, x| acc.direct_sum(x))
    }

    /// `X ⊗ Y` with `d(x ⊗ y) = dx ⊗ y + kx ⊗ dy` in each direction.
    ///
    /// The basis in degree `g` lists the pairs `(g1, g2)` with `g1 + g2 = g` by
    /// ascending `g1`, and inside a pair `x_i ⊗ y_j` in row-major order.
    pub fn tensor(&self, other: &Self) -> Result<Self, ModuleError> {
        if self.scheme != other.scheme {
            return Err(ModuleError::SchemeMismatch);
        }
        let s = &self.scheme;
        let f = s.field();
        let layout = Layout::new(self, other);
        let mut blocks = [BTreeMap::new(), BTreeMap::new()];
        for dir in [Direction::D0, Direction::D1] {
            for (&g, pairs) in &layout.pairs {
                let t = s.advance(g, dir, 1);
                let Some(t_dim) = layout.dims.get(&t).copied() else {
                    continue;
                };
                let mut b = Matrix::zero(f, t_dim, layout.dims[&g]);
                for &(g1, g2, off) in pairs {
                    let (dx, dy) = (self.dim_at(g1), other.dim_at(g2));
                    // dx ⊗ y
                    if let Some(bx) = self.blocks(dir).get(&g1) {
                        let t_off = layout.offset(t, s.advance(g1, dir, 1));
                        for i in 0..dx {
                            for k in 0..bx.rows() {
                                let c = bx.get(k, i);
                                if c.is_zero() {
                                    continue;
                                }
                                for j in 0..dy {
                                    b.set(t_off + k * dy + j, off + i * dy + j, c.clone());
                                }
                            }
                        }
                    }
                    // kx ⊗ dy
                    if let Some(by) = other.blocks(dir).get(&g2) {
                        let twist = s.q_pow(dir, s.k_exponent(g1, dir));
                        let t_off = layout.offset(t, g1);
                        let ty = by.rows();
                        for j in 0..dy {
                            for l in 0..ty {
                                let c = by.get(l, j);
                                if c.is_zero() {
                                    continue;
                                }
                                let c = &twist * c;
                                for i in 0..dx {
                                    let (r, col) = (t_off + i * ty + l, off + i * dy + j);
                                    let v = b.get(r, col) + &c;
                                    b.set(r, col, v);
                                }
                            }
                        }
                    }
                }
                blocks[dir.index()].insert(g, b);
            }
        }
        let [d0, d1] = blocks;
        Ok(Self::from_parts(s, layout.dims, d0, d1))
    }

    /// The module over `H_m ⊗ H_n` with the two factors exchanged: degrees are
    /// transposed and `d0`, `d1` trade places.
    pub fn swap(&self) -> Self {
        let s = self.scheme.swapped();
        let tr = |g: Degree| (g.1, g.0);
        let dims = self.dims.iter().map(|(&g, &k)| (tr(g), k)).collect();
        let [d0, d1] = self.blocks.clone().map(|map| map.into_iter().map(|(g, b)| (tr(g), b)).collect());
        Self::from_parts(&s, dims, d1, d0)
    }

    /// The same graded space with one differential replaced by zero.
    pub fn forget(&self, dir: Direction) -> Self {
        let mut out = self.clone();
        out.blocks[dir.index()].clear();
        out
    }
}

/// Basis bookkeeping for `X ⊗ Y`.
struct Layout {
    dims: BTreeMap<Degree, usize>,
    /// For each degree, the pairs `(g1, g2, offset)` in basis order.
    pairs: BTreeMap<Degree, Vec<(Degree, Degree, usize)>>,
}

impl Layout {
    fn new(x: &GradedModule, y: &GradedModule) -> Self {
        let s = x.scheme();
        let mut pairs: BTreeMap<Degree, Vec<(Degree, Degree, usize)>> = BTreeMap::new();
        for g1 in x.support() {
            for g2 in y.support() {
                pairs.entry(s.add(g1, g2)).or_default().push((g1, g2, 0));
            }
        }
        let mut dims = BTreeMap::new();
        for (g, list) in &mut pairs {
            list.sort();
            let mut off = 0;
            for e in list.iter_mut() {
                e.2 = off;
                off += x.dim_at(e.0) * y.dim_at(e.1);
            }
            dims.insert(*g, off);
        }
        Self { dims, pairs }
    }

    fn offset(&self, g: Degree, g1: Degree) -> usize {
        let list = &self.pairs[&g];
        list.iter().find(|e| e.0 == g1).expect("pair present").2
    }
}

/// Basis labels `(g1, i, g2, j)` of `(X ⊗ Y)` in degree `g`, in basis order:
/// the `k`-th label names the vector `x_i ⊗ y_j` with `x_i ∈ X_{g1}`, `y_j ∈ Y_{g2}`.
pub fn tensor_basis_labels(x: &GradedModule, y: &GradedModule, g: Degree) -> Vec<(Degree, usize, Degree, usize)> {
    let layout = Layout::new(x, y);
    let g = x.scheme().normalize(g);
    let mut out = Vec::new();
    for &(g1, g2, _) in layout.pairs.get(&g).map(Vec::as_slice).unwrap_or(&[]) {
        for i in 0..x.dim_at(g1) {
            for j in 0..y.dim_at(g2) {
                out.push((g1, i, g2, j));
            }
        }
    }
    out
}
