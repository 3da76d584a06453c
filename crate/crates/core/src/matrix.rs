//! Dense matrices over the exact polynomial ring, with determinants and
//! minors computed by cofactor expansion.
//!
//! Minor indices are ordered sequences: swapping two rows or two columns
//! flips the sign of the minor, and a repeated index makes it vanish.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    /// Row-major entries, `rows * cols` of them.
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, nvars: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        for e in &entries {
            assert_eq!(e.nvars(), nvars, "entry ring mismatch");
        }
        PolyMatrix { rows, cols, nvars, entries }
    }

    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        let entries = (0..rows * cols).map(|_| Polynomial::zero(nvars)).collect();
        PolyMatrix { rows, cols, nvars, entries }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, n, nvars);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::constant(nvars, crate::rat::rat_i64(1));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn at(&self, r: usize, c: usize) -> &Polynomial {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.entries[r * self.cols + c]
    }

    /// Appends the columns of `other` on the right.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch { left: self.rows, right: other.rows });
        }
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries.push(self.at(r, c).clone());
            }
            for c in 0..other.cols {
                entries.push(other.at(r, c).clone());
            }
        }
        Ok(PolyMatrix::new(self.rows, self.cols + other.cols, self.nvars, entries))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        PolyMatrix::new(self.cols, self.rows, self.nvars, entries)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch { left: self.cols, right: other.rows });
        }
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        let mut out = PolyMatrix::zero(self.rows, other.cols, self.nvars);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.cols {
                    acc = &acc + &(self.at(r, k) * other.at(k, c));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.at(r, c) != self.at(c, r) {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant of a square matrix by cofactor expansion along the
    /// first row.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch { left: self.rows, right: self.cols });
        }
        let all: Vec<usize> = (0..self.rows).collect();
        self.minor(&all, &all)
    }

    /// Minor on the ordered index sequences `rows`/`cols` (0-based).
    ///
    /// The sequences select a square submatrix in the order given, so the
    /// result is sign-sensitive; repeated indices give a zero determinant
    /// (two equal rows). Out-of-range indices are input errors.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        if rows.len() != cols.len() {
            return Err(Error::BadIndexSet(alloc::format!(
                "minor needs equally many rows and columns, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        for &r in rows {
            if r >= self.rows {
                return Err(Error::BadIndexSet(alloc::format!(
                    "row index {} out of range for a {}-row matrix",
                    r + 1,
                    self.rows
                )));
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(Error::BadIndexSet(alloc::format!(
                    "column index {} out of range for a {}-column matrix",
                    c + 1,
                    self.cols
                )));
            }
        }
        Ok(self.minor_rec(rows, cols))
    }

    fn minor_rec(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let k = rows.len();
        if k == 0 {
            return Polynomial::constant(self.nvars, crate::rat::rat_i64(1));
        }
        if k == 1 {
            return self.at(rows[0], cols[0]).clone();
        }
        let mut acc = Polynomial::zero(self.nvars);
        let sub_rows = &rows[1..];
        for (j, &c) in cols.iter().enumerate() {
            let entry = self.at(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let mut sub_cols = Vec::with_capacity(k - 1);
            sub_cols.extend_from_slice(&cols[..j]);
            sub_cols.extend_from_slice(&cols[j + 1..]);
            let cof = self.minor_rec(sub_rows, &sub_cols);
            let signed = if j % 2 == 0 { cof } else { -&cof };
            acc = &acc + &(entry * &signed);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(3, rat_i64(n))
    }

    fn v(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn det_of_diagonal() {
        // det [[2, 0], [0, 2z]] = 4z
        let m = PolyMatrix::new(
            2,
            2,
            3,
            alloc::vec![c(2), c(0), c(0), v(2).scale(&rat_i64(2))],
        );
        let d = m.det().unwrap();
        assert_eq!(d, v(2).scale(&rat_i64(4)));
    }

    #[test]
    fn minor_signs_and_degeneracy() {
        // lambda = [[2, 0, 0, y], [0, 2z, y, -x]]
        let lam = PolyMatrix::new(
            2,
            4,
            3,
            alloc::vec![
                c(2),
                c(0),
                c(0),
                v(1),
                c(0),
                v(2).scale(&rat_i64(2)),
                v(1),
                -&v(0)
            ],
        );
        // columns (3, 4): det [[0, y], [y, -x]] = -y^2
        let m34 = lam.minor(&[0, 1], &[2, 3]).unwrap();
        assert_eq!(m34, -&(&v(1) * &v(1)));
        // swapping the columns flips the sign
        let m43 = lam.minor(&[0, 1], &[3, 2]).unwrap();
        assert_eq!(m43, &v(1) * &v(1));
        // a repeated column vanishes
        let rep = lam.minor(&[0, 1], &[1, 1]).unwrap();
        assert!(rep.is_zero());
        // out-of-range index is an input error
        assert!(lam.minor(&[0, 1], &[3, 4]).is_err());
        assert!(lam.minor(&[0, 2], &[0, 1]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = PolyMatrix::new(2, 2, 3, alloc::vec![c(1), v(0), c(0), c(1)]);
        let b = PolyMatrix::new(2, 2, 3, alloc::vec![v(1), c(0), c(1), v(2)]);
        let ab = a.mul(&b).unwrap();
        // [[1, x], [0, 1]] * [[y, 0], [1, z]] = [[y + x, x z], [1, z]]
        assert_eq!(*ab.at(0, 0), &v(1) + &v(0));
        assert_eq!(*ab.at(0, 1), &v(0) * &v(2));
        assert_eq!(*ab.at(1, 0), c(1));
        assert_eq!(*ab.at(1, 1), v(2));
        let t = ab.transpose();
        assert_eq!(*t.at(1, 0), &v(0) * &v(2));
    }

    #[test]
    fn symmetry_check() {
        let s = PolyMatrix::new(2, 2, 3, alloc::vec![c(1), v(0), v(0), v(2)]);
        assert!(s.is_symmetric());
        let ns = PolyMatrix::new(2, 2, 3, alloc::vec![c(1), v(0), v(1), v(2)]);
        assert!(!ns.is_symmetric());
    }
}
