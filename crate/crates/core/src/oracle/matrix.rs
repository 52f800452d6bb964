//! Dense exact linear algebra over cyclotomic fields: Gaussian elimination,
//! rank, nullspace, inverse, and quotient actions modulo an invariant
//! subspace.  Sizes here are desk-scale; clarity over asymptotics.

use crate::error::{Error, Result};

use super::cyclotomic::Cyclo;

#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclo>,
}

impl CMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclo) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Cyclo::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Cyclo::one() } else { Cyclo::zero() })
    }

    pub fn scalar(n: usize, value: &Cyclo) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { value.clone() } else { Cyclo::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Cyclo {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyclo) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).add(other.at(r, c)))
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).sub(other.at(r, c)))
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Cyclo::zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if !a.is_zero() {
                    acc = acc.add(&a.mul(other.at(k, c)));
                }
            }
            acc
        })
    }

    pub fn scale(&self, s: &Cyclo) -> CMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).mul(s))
    }

    pub fn mul_vec(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Cyclo::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = acc.add(&self.at(r, c).mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> CMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = CMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (CMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|r| !m.at(*r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.at(row, col).inverse().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.at(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).sub(&factor.mul(m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Cyclo>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Cyclo::zero(); self.cols];
            v[free] = Cyclo::one();
            for (i, p) in pivots.iter().enumerate() {
                v[*p] = r.at(i, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = CMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.at(r, c).clone()
            } else if c - n == r {
                Cyclo::one()
            } else {
                Cyclo::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::InvalidArgument("matrix is singular".into()));
        }
        Ok(CMatrix::from_fn(n, n, |i, j| r.at(i, n + j).clone()))
    }

    pub fn det(&self) -> Cyclo {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Cyclo::one();
        let n = m.rows;
        for col in 0..n {
            let Some(pr) = (col..n).find(|r| !m.at(*r, col).is_zero()) else {
                return Cyclo::zero();
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inverse().expect("pivot is nonzero");
            for r in col + 1..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).mul(&inv);
                    for c in col..n {
                        let v = m.at(r, c).sub(&factor.mul(m.at(col, c)));
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }

    /// Stacks blocks vertically.
    pub fn vstack(blocks: &[&CMatrix]) -> CMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        CMatrix { rows, cols, data }
    }
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-reduced basis of a subspace of the ambient coordinate space; knows
/// how to reduce vectors to their canonical representative modulo itself.
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Cyclo>>, // rref rows
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(ambient: usize, vectors: &[Vec<Cyclo>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let m = CMatrix::from_fn(vectors.len(), ambient, |r, c| vectors[r][c].clone());
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len())
            .map(|i| (0..ambient).map(|c| r.at(i, c).clone()).collect())
            .collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical representative of `v` modulo the subspace: pivot
    /// coordinates eliminated, the rest untouched.
    pub fn reduce(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        let mut out = v.to_vec();
        for (row, p) in self.pivots.iter().enumerate() {
            if !out[*p].is_zero() {
                let factor = out[*p].clone();
                for c in 0..self.ambient {
                    let t = factor.mul(&self.basis[row][c]);
                    out[c] = out[c].sub(&t);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Cyclo]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Tries to grow the space by `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[Cyclo]) -> bool {
        let red = self.reduce(v);
        let Some(p) = red.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = red[p].inverse().expect("leading coefficient nonzero");
        let new_row: Vec<Cyclo> = red.iter().map(|c| c.mul(&inv)).collect();
        // re-eliminate the new pivot from existing rows to stay in rref
        for row in 0..self.basis.len() {
            if !self.basis[row][p].is_zero() {
                let factor = self.basis[row][p].clone();
                for c in 0..self.ambient {
                    let t = factor.mul(&new_row[c]);
                    self.basis[row][c] = self.basis[row][c].sub(&t);
                }
            }
        }
        let idx = self.pivots.iter().position(|q| *q > p).unwrap_or(self.pivots.len());
        self.pivots.insert(idx, p);
        self.basis.insert(idx, new_row);
        true
    }

    /// Columns not used as pivots: they index a basis of the quotient.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Induced action of `m` on the quotient by this (m-invariant) subspace,
    /// written in the complement-column basis.
    pub fn quotient_action(&self, m: &CMatrix) -> CMatrix {
        let comp = self.complement_columns();
        let k = comp.len();
        let mut out = CMatrix::zero(k, k);
        for (j, cj) in comp.iter().enumerate() {
            let mut e = vec![Cyclo::zero(); self.ambient];
            e[*cj] = Cyclo::one();
            let image = self.reduce(&m.mul_vec(&e));
            for (i, ci) in comp.iter().enumerate() {
                out.set(i, j, image[*ci].clone());
            }
            // a genuinely invariant subspace leaves nothing on pivot columns
            debug_assert!(self
                .pivots
                .iter()
                .all(|p| image[*p].is_zero()));
        }
        out
    }
}
