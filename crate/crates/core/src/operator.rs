//! Matrix-free action of the design matrix `F(X, I(U)) = (phi_k(x))_{x, k}`.
//!
//! Each column factorizes over the support of its frequency, so per variable
//! we tabulate `eta_k(x_{m,i})` once for every node and every one-dimensional
//! frequency in use. An application then costs `O(M |I(U)| |u|)` multiplies
//! and never materializes the matrix.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{eval_1d_mapped, BasisKind};
use crate::error::{Error, Result};
use crate::nodes::Nodes;
use crate::scalar::Scalar;
use crate::terms::{FrequencyIndexUnion, TermBlock};

/// A linear map `C^n -> C^m` known only through its action and the action of its adjoint.
pub trait LinearOperator<T: Scalar> {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `y += A x`
    fn apply_add(&self, x: &[T], y: &mut [T]);
    /// `x += A^* y`
    fn apply_adjoint_add(&self, y: &[T], x: &mut [T]);
}

#[derive(Debug, Clone)]
pub struct DesignOperator<'a, T: Scalar> {
    index: &'a FrequencyIndexUnion,
    rows: usize,
    kmin: i64,
    width: usize,
    /// slot of each variable in `tables`, `usize::MAX` for unused variables
    slots: Vec<usize>,
    /// `tables[(slot * rows + m) * width + (k - kmin)] = eta_k(x_{m, var})`
    tables: Vec<T>,
}

impl<'a, T: Scalar> DesignOperator<'a, T> {
    pub fn new(index: &'a FrequencyIndexUnion, nodes: &Nodes) -> Result<Self> {
        let kind = index.kind();
        if kind.is_complex() && !T::IS_COMPLEX {
            return Err(Error::ComplexBasisOnRealField);
        }
        let d = index.dimension();
        if nodes.dimension() != d {
            return Err(Error::DimensionMismatch { expected: d, found: nodes.dimension() });
        }
        let rows = nodes.len();

        let mut slots = vec![usize::MAX; d];
        let mut used = 0;
        for b in index.blocks() {
            for &v in b.term().vars() {
                if slots[v] == usize::MAX {
                    slots[v] = used;
                    used += 1;
                }
            }
        }

        // validate every coordinate, including unused columns
        let mut mapped = Vec::with_capacity(rows * d);
        for row in nodes.rows() {
            for &x in row {
                mapped.push(kind.map_to_domain(x)?);
            }
        }

        let (kmin, kmax) = index.local_range().unwrap_or((0, 0));
        let width = (kmax - kmin + 1) as usize;
        let mut tables = vec![T::zero(); used * rows * width];
        for (v, &slot) in slots.iter().enumerate() {
            if slot == usize::MAX {
                continue;
            }
            for m in 0..rows {
                let x = mapped[m * d + v];
                let row = &mut tables[(slot * rows + m) * width..(slot * rows + m + 1) * width];
                for (j, cell) in row.iter_mut().enumerate() {
                    let k = kmin + j as i64;
                    if k == 0 {
                        *cell = T::one();
                    } else if k < 0 && !kind.is_periodic() {
                        continue;
                    } else {
                        *cell = eval_1d_mapped(kind, k, x)?;
                    }
                }
            }
        }

        Ok(DesignOperator { index, rows, kmin, width, slots, tables })
    }

    pub fn index(&self) -> &FrequencyIndexUnion {
        self.index
    }

    pub fn kind(&self) -> BasisKind {
        self.index.kind()
    }

    /// `M / |I(U)|`; full column rank is plausible only above one.
    pub fn oversampling(&self) -> f64 {
        self.rows as f64 / self.index.len() as f64
    }

    /// `F ghat`.
    pub fn matvec(&self, coefficients: &[T]) -> Result<Vec<T>> {
        check_len(self.index.len(), coefficients.len())?;
        let mut y = vec![T::zero(); self.rows];
        self.apply_add(coefficients, &mut y);
        Ok(y)
    }

    /// `F^* r` (the transpose for real bases).
    pub fn adjoint_matvec(&self, values: &[T]) -> Result<Vec<T>> {
        check_len(self.rows, values.len())?;
        let mut x = vec![T::zero(); self.index.len()];
        self.apply_adjoint_add(values, &mut x);
        Ok(x)
    }

    /// Contribution of a single term block, `sum_{k in P_u I_u} ghat_k phi_k(x_m)`.
    pub fn matvec_block(&self, block: &TermBlock, coefficients: &[T]) -> Result<Vec<T>> {
        check_len(self.index.len(), coefficients.len())?;
        let mut y = vec![T::zero(); self.rows];
        self.block_apply_add(block, coefficients, &mut y);
        Ok(y)
    }

    #[inline]
    fn table_row(&self, var: usize, m: usize) -> &[T] {
        let slot = self.slots[var];
        &self.tables[(slot * self.rows + m) * self.width..(slot * self.rows + m + 1) * self.width]
    }

    #[inline]
    fn column_value(&self, block: &TermBlock, factors: &[&[T]], j: usize) -> T {
        let local = block.local_frequency(j);
        let mut p = factors[0][(local[0] - self.kmin) as usize];
        for t in 1..local.len() {
            p *= factors[t][(local[t] - self.kmin) as usize];
        }
        p
    }

    fn block_apply_add(&self, block: &TermBlock, x: &[T], y: &mut [T]) {
        let coeffs = &x[block.range()];
        let vars = block.term().vars();
        if vars.is_empty() {
            let c = coeffs[0];
            for ym in y.iter_mut() {
                *ym += c;
            }
            return;
        }
        let mut factors: Vec<&[T]> = Vec::with_capacity(vars.len());
        for (m, ym) in y.iter_mut().enumerate() {
            factors.clear();
            factors.extend(vars.iter().map(|&v| self.table_row(v, m)));
            let mut acc = T::zero();
            for (j, &c) in coeffs.iter().enumerate() {
                acc += c * self.column_value(block, &factors, j);
            }
            *ym += acc;
        }
    }

    fn block_adjoint_add(&self, block: &TermBlock, y: &[T], x: &mut [T]) {
        let out = &mut x[block.range()];
        let vars = block.term().vars();
        if vars.is_empty() {
            out[0] += y.iter().copied().sum::<T>();
            return;
        }
        let mut factors: Vec<&[T]> = Vec::with_capacity(vars.len());
        for (m, &ym) in y.iter().enumerate() {
            factors.clear();
            factors.extend(vars.iter().map(|&v| self.table_row(v, m)));
            for (j, o) in out.iter_mut().enumerate() {
                *o += self.column_value(block, &factors, j).conj() * ym;
            }
        }
    }

    /// Dense `M x |I(U)|` matrix, row-major. Only sensible for small instances.
    pub fn to_dense(&self) -> Vec<T> {
        let n = self.index.len();
        let mut dense = vec![T::zero(); self.rows * n];
        let mut e = vec![T::zero(); n];
        for c in 0..n {
            e[c] = T::one();
            let col = self.matvec(&e).expect("length checked");
            e[c] = T::zero();
            for (m, v) in col.into_iter().enumerate() {
                dense[m * n + c] = v;
            }
        }
        dense
    }
}

impl<T: Scalar> LinearOperator<T> for DesignOperator<'_, T> {
    fn nrows(&self) -> usize {
        self.rows
    }

    fn ncols(&self) -> usize {
        self.index.len()
    }

    fn apply_add(&self, x: &[T], y: &mut [T]) {
        for block in self.index.blocks() {
            self.block_apply_add(block, x, y);
        }
    }

    fn apply_adjoint_add(&self, y: &[T], x: &mut [T]) {
        for block in self.index.blocks() {
            self.block_adjoint_add(block, y, x);
        }
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
