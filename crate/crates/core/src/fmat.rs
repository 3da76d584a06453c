//! Small dense float matrices: determinants and the cyclic Jacobi
//! eigendecomposition used by the spectral perturbation construction.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Absolute entry tolerance for accepting a matrix as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// The rotation sweeps stop when the off-diagonal Frobenius mass drops
/// below this factor times the Frobenius norm of the input.
pub const JACOBI_STOP_FACTOR: f64 = 1e-14;

/// Row-major square matrix of binary-64 numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct FMat {
    n: usize,
    a: Vec<f64>,
}

impl FMat {
    pub fn new(n: usize, entries: Vec<f64>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count mismatch");
        FMat { n, a: entries }
    }

    pub fn zeros(n: usize) -> Self {
        FMat { n, a: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            *m.at_mut(i, i) = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.a[r * self.n + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut f64 {
        &mut self.a[r * self.n + c]
    }

    pub fn transpose(&self) -> FMat {
        let mut out = FMat::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                *out.at_mut(c, r) = self.at(r, c);
            }
        }
        out
    }

    pub fn mul(&self, other: &FMat) -> FMat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = FMat::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                let mut acc = 0.0;
                for k in 0..self.n {
                    acc += self.at(r, k) * other.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn sub(&self, other: &FMat) -> FMat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for i in 0..self.n * self.n {
            out.a[i] -= other.a[i];
        }
        out
    }

    /// Largest absolute entry.
    pub fn inf_norm(&self) -> f64 {
        let mut m = 0.0;
        for &v in &self.a {
            let av = libm::fabs(v);
            if av > m {
                m = av;
            }
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for &v in &self.a {
            s += v * v;
        }
        libm::sqrt(s)
    }

    /// Largest absolute mismatch `|a_ij - a_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut m = 0.0;
        for r in 0..self.n {
            for c in (r + 1)..self.n {
                let d = libm::fabs(self.at(r, c) - self.at(c, r));
                if d > m {
                    m = d;
                }
            }
        }
        m
    }

    /// Determinant by Gaussian elimination with partial pivoting; ties in
    /// pivot magnitude break toward the lowest row index.
    pub fn det(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 1.0;
        }
        let mut a = self.a.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            let mut best = libm::fabs(a[col * n + col]);
            for r in (col + 1)..n {
                let v = libm::fabs(a[r * n + col]);
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot * n + c);
                }
                det = -det;
            }
            let d = a[col * n + col];
            det *= d;
            for r in (col + 1)..n {
                let factor = a[r * n + col] / d;
                for c in col..n {
                    a[r * n + c] -= factor * a[col * n + c];
                }
            }
        }
        det
    }
}

/// Eigendecomposition of a symmetric matrix: `vectors^T M vectors`
/// diagonalizes `M`; `values[i]` pairs with column `i`, sorted by
/// absolute value ascending (ties by original position).
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub values: Vec<f64>,
    pub vectors: FMat,
}

/// Cyclic Jacobi rotations. The input must be symmetric within
/// [`SYMMETRY_TOL`] per entry; sweeps run until the off-diagonal
/// Frobenius mass falls below [`JACOBI_STOP_FACTOR`] times the input
/// Frobenius norm.
pub fn jacobi_eigen(m: &FMat) -> Result<EigenDecomp> {
    let n = m.n();
    for r in 0..n {
        for c in (r + 1)..n {
            if libm::fabs(m.at(r, c) - m.at(c, r)) > SYMMETRY_TOL {
                return Err(Error::NotSymmetric { row: r, col: c });
            }
        }
    }
    // work on the symmetrized copy so tiny input asymmetry cannot drift
    let mut a = FMat::zeros(n);
    for r in 0..n {
        for c in 0..n {
            *a.at_mut(r, c) = 0.5 * (m.at(r, c) + m.at(c, r));
        }
    }
    let mut p = FMat::identity(n);
    let stop = JACOBI_STOP_FACTOR * m.frobenius();
    let max_sweeps = 64;
    for _ in 0..max_sweeps {
        let mut off = 0.0;
        for r in 0..n {
            for c in (r + 1)..n {
                off += a.at(r, c) * a.at(r, c);
            }
        }
        if libm::sqrt(2.0 * off) <= stop {
            break;
        }
        for q in 0..n {
            for r in (q + 1)..n {
                let apq = a.at(q, r);
                if apq == 0.0 {
                    continue;
                }
                let app = a.at(q, q);
                let aqq = a.at(r, r);
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // A <- G^T A G with the rotation in the (q, r) plane
                *a.at_mut(q, q) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                *a.at_mut(r, r) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                *a.at_mut(q, r) = 0.0;
                *a.at_mut(r, q) = 0.0;
                for k in 0..n {
                    if k == q || k == r {
                        continue;
                    }
                    let akp = a.at(k, q);
                    let akq = a.at(k, r);
                    *a.at_mut(k, q) = c * akp - s * akq;
                    *a.at_mut(q, k) = c * akp - s * akq;
                    *a.at_mut(k, r) = s * akp + c * akq;
                    *a.at_mut(r, k) = s * akp + c * akq;
                }
                for k in 0..n {
                    let vkp = p.at(k, q);
                    let vkq = p.at(k, r);
                    *p.at_mut(k, q) = c * vkp - s * vkq;
                    *p.at_mut(k, r) = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let ai = libm::fabs(a.at(i, i));
        let aj = libm::fabs(a.at(j, j));
        ai.partial_cmp(&aj).unwrap_or(core::cmp::Ordering::Equal).then(i.cmp(&j))
    });
    let values: Vec<f64> = order.iter().map(|&i| a.at(i, i)).collect();
    let mut vectors = FMat::zeros(n);
    for (new_c, &old_c) in order.iter().enumerate() {
        for r in 0..n {
            *vectors.at_mut(r, new_c) = p.at(r, old_c);
        }
    }
    Ok(EigenDecomp { values, vectors })
}
