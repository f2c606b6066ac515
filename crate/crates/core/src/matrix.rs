//! Dense matrices of element codes and row reduction over GF(q).

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

/// Output of [`Matrix::rref`]: the nonzero rows of the reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    fn check_codes(&self, field: &FieldSpec) -> Result<()> {
        match self.entries.iter().find(|&&x| x >= field.q()) {
            Some(&code) => Err(Error::ElementOutOfRange { code, q: field.q() }),
            None => Ok(()),
        }
    }

    /// Product `self * other` over the field.
    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::MalformedMatrix(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = field.add(out.entries[idx], field.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form. Zero rows are dropped from the result.
    pub fn rref(&self, field: &FieldSpec) -> Result<Rref> {
        self.check_codes(field)?;
        let mut m = self.entries.clone();
        let (rank, pivots) = rref_in_place(field, &mut m, self.rows, self.cols);
        m.truncate(rank * self.cols);
        Ok(Rref {
            matrix: Matrix {
                rows: rank,
                cols: self.cols,
                entries: m,
            },
            rank,
            pivots,
        })
    }

    pub fn rank(&self, field: &FieldSpec) -> Result<usize> {
        Ok(self.rref(field)?.rank)
    }

    /// Basis of the right null space `{x : M x = 0}`, one vector per row.
    pub fn kernel(&self, field: &FieldSpec) -> Result<Matrix> {
        let r = self.rref(field)?;
        let mut is_pivot = vec![false; self.cols];
        for &c in &r.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.entries[k * self.cols + f] = 1;
            for (i, &pc) in r.pivots.iter().enumerate() {
                out.entries[k * self.cols + pc] = field.neg(r.matrix.get(i, f));
            }
        }
        Ok(out)
    }
}

/// Row reduces a row-major `rows x cols` buffer in place and returns the
/// rank and pivot columns. The first `rank` rows hold the reduced basis.
pub(crate) fn rref_in_place(
    field: &FieldSpec,
    m: &mut [u32],
    rows: usize,
    cols: usize,
) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(m[r * cols + c]);
        if inv != 1 {
            for j in c..cols {
                m[r * cols + j] = field.mul(m[r * cols + j], inv);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * cols + c];
            if factor == 0 {
                continue;
            }
            let f = field.neg(factor);
            for j in c..cols {
                let v = m[r * cols + j];
                if v != 0 {
                    m[i * cols + j] = field.add(m[i * cols + j], field.mul(f, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;
    use proptest::prelude::*;

    #[test]
    fn identity_is_fixed() {
        let f = field_make(3).unwrap();
        let r = Matrix::identity(4).rref(&f).unwrap();
        assert_eq!(r.matrix, Matrix::identity(4));
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
        assert_eq!(Matrix::identity(4).kernel(&f).unwrap().rows(), 0);
    }

    #[test]
    fn hand_reduced_gf2_example() {
        let f = field_make(2).unwrap();
        let m = Matrix::from_rows(4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        let r = m.rref(&f).unwrap();
        assert_eq!(r.matrix.row_vecs(), vec![vec![1, 0, 1, 0], vec![0, 1, 1, 0]]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let f = field_make(5).unwrap();
        let r = Matrix::zeros(3, 4).rref(&f).unwrap();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(Matrix::zeros(1, 6).kernel(&f).unwrap().rows(), 6);
    }

    #[test]
    fn kernel_of_two_equations() {
        let f = field_make(2).unwrap();
        let m = Matrix::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.kernel(&f).unwrap().row_vecs(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn malformed_input() {
        assert!(Matrix::new(2, 2, vec![0; 3]).is_err());
        let f = field_make(3).unwrap();
        let m = Matrix::new(1, 2, vec![0, 3]).unwrap();
        assert!(m.rref(&f).is_err());
    }

    fn random_matrix(q: u32) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..7).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..q, r * c).prop_map(move |e| Matrix::new(r, c, e).unwrap())
        })
    }

    fn field_and_matrix() -> impl Strategy<Value = (u64, Matrix)> {
        prop::sample::select(vec![2u64, 3, 4, 5])
            .prop_flat_map(|q| (Just(q), random_matrix(q as u32)))
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_nullity((q, m) in field_and_matrix()) {
            let f = field_make(q).unwrap();
            let r = m.rref(&f).unwrap();
            let again = r.matrix.rref(&f).unwrap();
            prop_assert_eq!(&again.matrix, &r.matrix);
            let k = m.kernel(&f).unwrap();
            prop_assert_eq!(r.rank + k.rows(), m.cols());
            prop_assert_eq!(k.rank(&f).unwrap(), k.rows());
            // every kernel vector is annihilated by M
            for v in k.row_vecs() {
                for i in 0..m.rows() {
                    let dot = (0..m.cols()).fold(0, |acc, j| f.add(acc, f.mul(m.get(i, j), v[j])));
                    prop_assert_eq!(dot, 0);
                }
            }
        }

        #[test]
        fn row_space_canonical_under_invertible_change((q, m) in field_and_matrix(), mix in proptest::collection::vec(0u32..5, 36)) {
            let f = field_make(q).unwrap();
            let basis = m.rref(&f).unwrap().matrix;
            let d = basis.rows();
            // unit lower times unit upper triangular is invertible
            let mut g = Matrix::identity(d);
            for i in 0..d {
                for j in 0..d {
                    if i > j {
                        g.entries[i * d + j] = mix[i * 6 + j] % q as u32;
                    }
                }
            }
            let mut h = Matrix::identity(d);
            for i in 0..d {
                for j in 0..d {
                    if i < j {
                        h.entries[i * d + j] = mix[i * 6 + j] % q as u32;
                    }
                }
            }
            let mixed = g.mul(&f, &h).unwrap().mul(&f, &basis).unwrap();
            prop_assert_eq!(mixed.rref(&f).unwrap().matrix, basis);
        }
    }
}
