//! Commutative algebras with 0/1 structure constants on a finite basis.
//!
//! Both the Verlinde algebra of a minimal model and the algebra induced by a
//! partition of a finite abelian group live here, so the two can be compared
//! constant-for-constant.

use crate::minimal_model::Rational;

/// Structure constants `c[i][j][k] ∈ {0,1}` of a `dim`-dimensional algebra
/// with product `e_i * e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    data: Vec<bool>,
}

impl StructureConstants {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![false; dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    out.data[(i * dim + j) * dim + k] = f(i, j, k);
                }
            }
        }
        out
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: bool) {
        self.data[(i * self.dim + j) * self.dim + k] = value;
    }

    /// Flat view in `(i, j, k)` row-major order.
    pub fn as_slice(&self) -> &[bool] {
        &self.data
    }

    /// Indices `k` with `c[i][j][k] = 1`, ascending.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<usize> {
        let row = &self.data[(i * self.dim + j) * self.dim..][..self.dim];
        row.iter()
            .enumerate()
            .filter_map(|(k, &set)| set.then_some(k))
            .collect()
    }

    /// Bilinear product of two coefficient vectors.
    ///
    /// Panics if either vector does not have length `dim`.
    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim, "left operand has wrong dimension");
        assert_eq!(y.len(), self.dim, "right operand has wrong dimension");
        let zero = Rational::from_integer(0);
        let mut out = vec![zero; self.dim];
        for (i, xi) in x.iter().enumerate() {
            if *xi == zero {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj == zero {
                    continue;
                }
                let coeff = xi * yj;
                for k in self.basis_product(i, j) {
                    out[k] += coeff;
                }
            }
        }
        out
    }

    /// First `(i, j)` in row-major order with `e_i e_j != e_j e_i`.
    pub fn commutativity_defect(&self) -> Option<(usize, usize)> {
        let n = self.dim;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| (0..n).any(|k| self.get(i, j, k) != self.get(j, i, k)))
    }

    /// First basis triple `(i, j, l)` with `(e_i e_j) e_l != e_i (e_j e_l)`.
    ///
    /// Compares integer coefficient vectors, so multiplicities produced by
    /// the double sum are respected.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let mut left = vec![0u64; n];
        let mut right = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    left.iter_mut().for_each(|v| *v = 0);
                    right.iter_mut().for_each(|v| *v = 0);
                    for k in 0..n {
                        if self.get(i, j, k) {
                            for (t, v) in left.iter_mut().enumerate() {
                                *v += u64::from(self.get(k, l, t));
                            }
                        }
                        if self.get(j, l, k) {
                            for (t, v) in right.iter_mut().enumerate() {
                                *v += u64::from(self.get(i, k, t));
                            }
                        }
                    }
                    if left != right {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    /// Index of a two-sided multiplicative unit among the basis vectors.
    pub fn unit(&self) -> Option<usize> {
        let n = self.dim;
        (0..n).find(|&u| {
            (0..n).all(|j| {
                (0..n).all(|k| self.get(u, j, k) == (j == k) && self.get(j, u, k) == (j == k))
            })
        })
    }
}
