//! Dense matrices over `F_p` and their rank.

use std::fmt;

use crate::field::PrimeField;

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from signed integer rows, reduced mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, field.elem(v).value());
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: u64) {
        let cell = &mut self.data[r * self.cols + c];
        *cell = self.field.add_raw(*cell, v % self.field.p());
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Rank by forward Gaussian elimination.
    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        let mut m = if self.cols > self.rows { self.transpose() } else { self.clone() };
        m.eliminate_in_place()
    }

    fn eliminate_in_place(&mut self) -> usize {
        let p = self.field.p();
        let cols = self.cols;
        let mut rank = 0;
        for col in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for c in col..cols {
                    self.data.swap(pivot * cols + c, rank * cols + c);
                }
            }
            let inv = self.field.inv_raw(self.get(rank, col)).expect("nonzero pivot");
            for c in col..cols {
                let v = &mut self.data[rank * cols + c];
                *v = *v * inv % p;
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let factor = row[col];
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                // p <= 2^32 keeps row[c] + neg * pivot_row[c] below 2^64
                for c in col..cols {
                    row[c] = (row[c] + neg * pivot_row[c]) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<u64> = (0..self.cols.min(16)).map(|c| self.get(r, c)).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
