//! Dense matrices of cyclotomics with labeled rows and columns.

use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycMatrix {
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<Cyclotomic>>,
}

impl CycMatrix {
    pub fn new(rows: Vec<String>, cols: Vec<String>, entries: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Dimension(format!(
                "entries do not match {}x{} labels",
                rows.len(),
                cols.len()
            )));
        }
        Ok(CycMatrix { rows, cols, entries })
    }

    /// Unlabeled matrix; labels are the indices.
    pub fn from_rows(entries: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = entries.len();
        let c = entries.first().map_or(0, Vec::len);
        Self::new(index_labels(r), index_labels(c), entries)
    }

    pub fn zeros(rows: Vec<String>, cols: Vec<String>) -> Self {
        let entries = vec![vec![Cyclotomic::zero(); cols.len()]; rows.len()];
        CycMatrix { rows, cols, entries }
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let mut m = Self::zeros(labels.clone(), labels);
        for i in 0..m.nrows() {
            m.entries[i][i] = Cyclotomic::one();
        }
        m
    }

    pub fn from_fn(
        rows: Vec<String>,
        cols: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Cyclotomic,
    ) -> Self {
        let entries = (0..rows.len())
            .map(|i| (0..cols.len()).map(|j| f(i, j)).collect())
            .collect();
        CycMatrix { rows, cols, entries }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i]
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn relabel(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.nrows() || cols.len() != self.ncols() {
            return Err(Error::Dimension("relabel with wrong label count".into()));
        }
        self.rows = rows;
        self.cols = cols;
        Ok(self)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols.clone(), self.rows.clone(), |i, j| {
            self.entries[j][i].clone()
        })
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows.clone(), self.cols.clone(), |i, j| {
            self.entries[i][j].conj()
        })
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        Ok(Self::from_fn(self.rows.clone(), rhs.cols.clone(), |i, j| {
            Cyclotomic::dot((0..self.ncols()).map(|k| (&self.entries[i][k], &rhs.entries[k][j])))
        }))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Self::from_fn(self.rows.clone(), self.cols.clone(), |i, j| {
            &self.entries[i][j] - &rhs.entries[i][j]
        }))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(Self::from_fn(self.rows.clone(), self.cols.clone(), |i, j| {
            &self.entries[i][j] + &rhs.entries[i][j]
        }))
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.nrows() != rhs.nrows() || self.ncols() != rhs.ncols() {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        Ok(())
    }

    /// Equality of entries, ignoring labels.
    pub fn same_entries(&self, rhs: &Self) -> bool {
        self.entries == rhs.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Cyclotomic::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries.iter().enumerate().all(|(i, r)| {
                r.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows())
                .all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(Cyclotomic::is_real)
    }

    /// `M * conj(M)^T == I`.
    pub fn is_unitary(&self) -> bool {
        self.is_square()
            && self
                .checked_mul(&self.conj_transpose())
                .is_ok_and(|p| p.is_identity())
    }

    /// `M * M^T == I` and real.
    pub fn is_orthogonal(&self) -> bool {
        self.is_real()
            && self.is_square()
            && self
                .checked_mul(&self.transpose())
                .is_ok_and(|p| p.is_identity())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_fn(self.rows.clone(), self.cols.clone(), |i, j| {
            &self.entries[i][j] * c
        })
    }

    /// Block-diagonal sum, labels concatenated.
    pub fn block_diag(blocks: &[&CycMatrix]) -> Self {
        let rows: Vec<String> = blocks.iter().flat_map(|b| b.rows.clone()).collect();
        let cols: Vec<String> = blocks.iter().flat_map(|b| b.cols.clone()).collect();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    m.entries[r0 + i][c0 + j] = b.entries[i][j].clone();
                }
            }
            r0 += b.nrows();
            c0 += b.ncols();
        }
        m
    }

    /// Reorder rows and columns: entry `(i, j)` of the result is entry `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let rows = row_perm.iter().map(|&i| self.rows[i].clone()).collect();
        let cols = col_perm.iter().map(|&j| self.cols[j].clone()).collect();
        Self::from_fn(rows, cols, |i, j| self.entries[row_perm[i]][col_perm[j]].clone())
    }

    /// Row-echelon reduction over the field; returns (echelon form, pivot columns).
    fn echelon(&self) -> (Vec<Vec<Cyclotomic>>, Vec<usize>) {
        let mut a = self.entries.clone();
        let (n, m) = (self.nrows(), self.ncols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("pivot is nonzero");
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..m {
                        if !a[r][j].is_zero() {
                            let d = &f * &a[r][j];
                            a[i][j] -= &d;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of `{ v : M v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let (a, pivots) = self.echelon();
        let m = self.ncols();
        (0..m)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Cyclotomic::zero(); m];
                v[free] = Cyclotomic::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&a[r][free];
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Cyclotomic> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.nrows();
        let mut a = self.entries.clone();
        let mut det = Cyclotomic::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(Cyclotomic::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv()?;
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let d = &f * &a[c][j];
                    a[i][j] -= &d;
                }
            }
        }
        Ok(det)
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if v.len() != self.ncols() {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok(self
            .entries
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let m: CycMatrix = serde_json::from_str(text)
            .map_err(|e| crate::cyclotomic::json_error_at(&e, text))?;
        Self::new(m.rows, m.cols, m.entries)
    }
}

pub(crate) fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        &mut self.entries[i][j]
    }
}

/// Panics on a shape mismatch; see [`CycMatrix::checked_mul`].
impl Mul for &CycMatrix {
    type Output = CycMatrix;
    fn mul(self, rhs: &CycMatrix) -> CycMatrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}
