//! Single-point spectral perturbations of the transversal Hessian.
//!
//! At a chosen point `y` on `X`, the eigendecomposition of `H_f(y)` yields
//! two rank-controlled perturbations: `V` kills the eigenvalue of smallest
//! magnitude (so `H_f - V` is degenerate at `y`), while `W` shifts every
//! eigenvalue by a small `epsilon` chosen to keep `H_f - W` regular. Both
//! are verified against determinant bounds, and the degenerate direction is
//! handed back as an exact problem with `H - V` rationalized, so the
//! symbolic pipeline can re-run on the perturbed germ.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmat::{jacobi_eigen, EigenDecomp, FMat};
use crate::hessian::check_hess_identity;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::problem::ProblemSpec;
use crate::rat::rat_from_f64;

/// Relative tolerance for accepting a float point as lying on `X`.
pub const ON_X_TOL: f64 = 1e-9;

/// Tolerance below which a shift would collide with an eigenvalue and its
/// sign is flipped instead.
const EPS_COLLISION_TOL: f64 = 1e-12;

/// Precision used when rationalizing the perturbation for the exact
/// re-run.
const RATIONALIZE_TOL: f64 = 1e-12;

/// Eigendata of `H_f` at one point of `X`. Eigenpairs are sorted by
/// magnitude ascending, so slot 0 is the direction the degenerate
/// perturbation removes.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub point: Vec<f64>,
    pub h_at_point: FMat,
    pub eigen: EigenDecomp,
}

/// Evaluate `H_f` at `point`, which must satisfy `|psi_i| <= tol` for the
/// relative tolerance [`ON_X_TOL`], and diagonalize it.
pub fn analyze_at(spec: &ProblemSpec, point: &[f64]) -> Result<SpectralData> {
    let n = spec.n();
    let p = spec.p();
    if point.len() != n {
        return Err(Error::PointLength { expected: n, got: point.len() });
    }
    let mut norm = 0.0;
    for &c in point {
        norm += c * c;
    }
    let tol = ON_X_TOL * (1.0 + libm::sqrt(norm));
    for (i, psi) in spec.psi.iter().enumerate() {
        if libm::fabs(psi.to_float().eval(point)) > tol {
            return Err(Error::PointNotOnVariety { component: i });
        }
    }
    let mut h = FMat::zeros(p);
    for r in 0..p {
        for c in 0..p {
            *h.at_mut(r, c) = spec.h.at(r, c).to_float().eval(point);
        }
    }
    let eigen = jacobi_eigen(&h)?;
    Ok(SpectralData { point: point.to_vec(), h_at_point: h, eigen })
}

/// The pair of perturbations at one point: `v` degenerates `H_f` there,
/// `w` regularizes it with the recorded eigenvalue shifts.
#[derive(Debug, Clone)]
pub struct PerturbationPair {
    pub v: FMat,
    pub w: FMat,
    /// shift applied to each eigenvalue slot by `w`
    pub epsilons: Vec<f64>,
    /// eigenvalue of smallest magnitude, the one `v` removes
    pub lambda_min: f64,
    /// base magnitude of the shifts
    pub eps_scale: f64,
}

/// Default shift scale relative to the evaluated matrix.
pub fn default_eps_scale(h_at_point: &FMat) -> f64 {
    1e-3 * (1.0 + h_at_point.inf_norm())
}

/// Build the degenerate and regular perturbations from the eigendata.
/// `eps` overrides the shift scale; a shift colliding with an eigenvalue
/// flips its sign so `H_f - W` stays regular.
pub fn build_pair(data: &SpectralData, eps: Option<f64>) -> PerturbationPair {
    let p = data.h_at_point.n();
    let eps_scale = eps.unwrap_or_else(|| default_eps_scale(&data.h_at_point));
    let lambda_min = data.eigen.values[0];
    let vecs = &data.eigen.vectors;
    // v = lambda_min * u u^T for the eigenvector u of smallest magnitude;
    // the symmetric products match bit for bit
    let mut v = FMat::zeros(p);
    for r in 0..p {
        for c in 0..p {
            *v.at_mut(r, c) = lambda_min * vecs.at(r, 0) * vecs.at(c, 0);
        }
    }
    let epsilons: Vec<f64> = data
        .eigen
        .values
        .iter()
        .map(|&lam| {
            if libm::fabs(eps_scale - lam) <= EPS_COLLISION_TOL {
                -eps_scale
            } else {
                eps_scale
            }
        })
        .collect();
    let mut w = FMat::zeros(p);
    for r in 0..p {
        for c in 0..p {
            let mut acc = 0.0;
            for k in 0..p {
                acc += epsilons[k] * vecs.at(r, k) * vecs.at(c, k);
            }
            *w.at_mut(r, c) = acc;
        }
    }
    PerturbationPair { v, w, epsilons, lambda_min, eps_scale }
}

/// Verification of a perturbation pair, together with the exact problem
/// carrying `H - V` for the symbolic re-run.
#[derive(Debug, Clone)]
pub struct PairVerification {
    /// `det(H(y) - V)` vanished within tolerance
    pub degenerate_ok: bool,
    pub det_h_minus_v: f64,
    /// `det(H(y) - W)` matches the product of shifted eigenvalues
    pub regular_ok: bool,
    pub det_h_minus_w: f64,
    pub expected_det_w: f64,
    /// every entry of `V` is bounded by the removed eigenvalue
    pub small_ok: bool,
    /// the perturbed problem satisfies the Hessian identity
    pub identity_ok: bool,
    pub perturbed: ProblemSpec,
}

/// Check the determinant bounds and emit the rationalized perturbed
/// problem. The degeneracy bound scales with `(1 + |H(y)|)^p`; the
/// regularity check compares against the exact product of shifted
/// eigenvalues at relative precision 1e-6.
pub fn verify_pair(
    spec: &ProblemSpec,
    data: &SpectralData,
    pair: &PerturbationPair,
) -> Result<PairVerification> {
    let p = data.h_at_point.n();
    let hnorm = data.h_at_point.inf_norm();

    let hv = data.h_at_point.sub(&pair.v);
    let det_h_minus_v = hv.det();
    let mut bound = 1.0 + hnorm;
    for _ in 1..p {
        bound *= 1.0 + hnorm;
    }
    let degenerate_ok = libm::fabs(det_h_minus_v) <= 1e-8 * bound;

    let hw = data.h_at_point.sub(&pair.w);
    let det_h_minus_w = hw.det();
    let mut expected_det_w = 1.0;
    for (i, &lam) in data.eigen.values.iter().enumerate() {
        expected_det_w *= lam - pair.epsilons[i];
    }
    let regular_ok = libm::fabs(det_h_minus_w - expected_det_w)
        <= 1e-6 * (1.0 + libm::fabs(expected_det_w));

    let small_ok = pair.v.inf_norm() <= libm::fabs(pair.lambda_min) + 1e-12;

    let n = spec.n();
    let mut entries = Vec::with_capacity(p * p);
    for r in 0..p {
        for c in 0..p {
            let vrc = rat_from_f64(pair.v.at(r, c), RATIONALIZE_TOL);
            let shift = Polynomial::constant(n, vrc);
            entries.push(spec.h.at(r, c).try_sub(&shift)?);
        }
    }
    let perturbed = ProblemSpec {
        varnames: spec.varnames.clone(),
        psi: spec.psi.clone(),
        h: PolyMatrix::new(p, p, n, entries),
        ydesc: spec.ydesc.clone(),
        xcharts: spec.xcharts.clone(),
        extra_syzygies: spec.extra_syzygies.clone(),
    };
    let identity_ok = check_hess_identity(&perturbed)?.holds;

    Ok(PairVerification {
        degenerate_ok,
        det_h_minus_v,
        regular_ok,
        det_h_minus_w,
        expected_det_w,
        small_ok,
        identity_ok,
        perturbed,
    })
}
