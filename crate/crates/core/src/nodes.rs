use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A scattered node set `X` of `M` points in `d` dimensions, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Nodes {
    dimension: usize,
    data: Vec<f64>,
}

impl Nodes {
    pub fn from_flat(dimension: usize, data: Vec<f64>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if !data.len().is_multiple_of(dimension) {
            return Err(Error::LengthMismatch { expected: (data.len() / dimension + 1) * dimension, found: data.len() });
        }
        Ok(Nodes { dimension, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(dimension: usize, rows: impl IntoIterator<Item = R>) -> Result<Self> {
        let mut data = Vec::new();
        for row in rows {
            let row = row.as_ref();
            if row.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Nodes::from_flat(dimension, data)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of nodes `M`.
    pub fn len(&self) -> usize {
        self.data.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.data[m * self.dimension..(m + 1) * self.dimension]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.dimension)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Nodes> {
        if columns.is_empty() {
            return Err(Error::EmptyKeep);
        }
        if let Some(&c) = columns.iter().find(|&&c| c >= self.dimension) {
            return Err(Error::VariableOutOfRange { index: c + 1, dimension: self.dimension });
        }
        let data = self.rows().flat_map(|r| columns.iter().map(move |&c| r[c])).collect();
        Ok(Nodes { dimension: columns.len(), data })
    }
}
