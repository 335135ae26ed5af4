use std::fmt;

use super::{GfpError, Prime};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    p: Prime,
    data: Vec<u32>,
}

impl MatrixFp {
    pub fn zeros(rows: usize, cols: usize, p: Prime) -> Self {
        MatrixFp { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: Prime) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self, GfpError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(GfpError::Ragged { expected: cols, found: row.len() });
            }
            data.extend(row.iter().map(|&v| p.reduce(v)));
        }
        Ok(MatrixFp { rows: rows.len(), cols, p, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p.get();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % self.p.get() as u64)
                    as u32
            })
            .collect()
    }

    /// Reduced row-echelon form in place. Pivots are chosen left to right, the
    /// first non-zero entry at or below the current row winning, so the result
    /// only depends on the input row order. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..self.cols {
            if lead_row == self.rows {
                break;
            }
            let Some(src) = (lead_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if src != lead_row {
                for c in 0..self.cols {
                    self.data.swap(src * self.cols + c, lead_row * self.cols + c);
                }
            }
            let inv = p.inv(self.get(lead_row, col));
            for c in col..self.cols {
                let v = self.get(lead_row, c);
                self.data[lead_row * self.cols + c] = p.mul(v, inv);
            }
            for r in 0..self.rows {
                if r == lead_row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                let neg = p.neg(factor);
                for c in col..self.cols {
                    let pivot_val = self.data[lead_row * self.cols + c];
                    if pivot_val != 0 {
                        let idx = r * self.cols + c;
                        self.data[idx] = p.add(self.data[idx], p.mul(neg, pivot_val));
                    }
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (MatrixFp, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column in increasing column
    /// order; each vector has a 1 in its free column and zeros in the others.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = p.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// The non-zero rows of the reduced row-echelon form: a canonical basis of
    /// the row space.
    pub fn row_space_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFp {}x{} mod {}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}
