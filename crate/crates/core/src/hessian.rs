//! The germ `f = sum f_ij psi_i psi_j`, its derivatives, the transversal
//! Hessian `H` with determinant `D_f`, and the degeneracy locus generators.
//!
//! `H` and `D_f` only carry meaning at points of `X = psi^(-1)(0)`; the
//! exact evaluator refuses points off `X`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::groebner;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::problem::ProblemSpec;
use crate::rat::{rat_frac, Rat};
use crate::util::combinations;

/// Expands the germ from its representation: `f = sum_{i,j} f_ij psi_i psi_j`.
pub fn assemble_f(spec: &ProblemSpec) -> Polynomial {
    let n = spec.n();
    let p = spec.p();
    let mut f = Polynomial::zero(n);
    for i in 0..p {
        for j in 0..p {
            let term = &(spec.h.at(i, j) * &spec.psi[i]) * &spec.psi[j];
            f = &f + &term;
        }
    }
    f
}

/// Jacobian of `psi`: the p x n matrix with entry `(i, j) = d psi_i / d x_j`.
pub fn psi_jacobian(spec: &ProblemSpec) -> Result<PolyMatrix> {
    let n = spec.n();
    let p = spec.p();
    let mut entries = Vec::with_capacity(p * n);
    for psi in &spec.psi {
        for j in 0..n {
            entries.push(psi.partial(j)?);
        }
    }
    Ok(PolyMatrix::new(p, n, n, entries))
}

/// Gradient of the assembled germ, `(df/dx_1, ..., df/dx_n)`.
pub fn gradient(spec: &ProblemSpec) -> Result<Vec<Polynomial>> {
    let f = assemble_f(spec);
    (0..spec.n()).map(|j| f.partial(j)).collect()
}

/// Generators whose common zero set is the degeneracy locus: all p x p
/// minors of the Jacobian of `psi`, followed by `psi_1, ..., psi_p`.
pub fn sigma_generators(spec: &ProblemSpec) -> Result<Vec<Polynomial>> {
    let n = spec.n();
    let p = spec.p();
    let jac = psi_jacobian(spec)?;
    let rows: Vec<usize> = (0..p).collect();
    let mut gens = Vec::new();
    for cols in combinations(n, p) {
        gens.push(jac.minor(&rows, &cols)?);
    }
    gens.extend(spec.psi.iter().cloned());
    Ok(gens)
}

/// Outcome of the consistency identity between the representation matrix
/// and the full Hessian of the assembled germ.
#[derive(Debug, Clone)]
pub struct HessIdentity {
    /// True iff every entry of `(1/2) f'' - (psi')^T H psi'` lies in the
    /// polynomial ideal `(psi_1, ..., psi_p)`, hence vanishes on `X`.
    pub holds: bool,
    /// True iff the residual matrix is identically zero, not merely zero
    /// on `X`.
    pub residual_is_zero: bool,
    /// First failing entry `(row, col, residual)` when the identity fails.
    pub witness: Option<(usize, usize, Polynomial)>,
}

/// Verifies that on `X` the transversal Hessian agrees with half the
/// ordinary Hessian of `f`: each entry of `(1/2) f'' - (psi')^T H psi'`
/// must lie in the ideal `(psi)`.
///
/// For a spec whose invariants validate, this is a theorem; a failure
/// indicates an inconsistent problem file.
pub fn check_hess_identity(spec: &ProblemSpec) -> Result<HessIdentity> {
    let n = spec.n();
    let f = assemble_f(spec);
    let half = rat_frac(1, 2);
    let mut residual = PolyMatrix::zero(n, n, n);
    let jac = psi_jacobian(spec)?;
    let jt_h_j = jac.transpose().mul(&spec.h.mul(&jac)?)?;
    for a in 0..n {
        let fa = f.partial(a)?;
        for b in 0..n {
            let fab = fa.partial(b)?;
            *residual.at_mut(a, b) = &fab.scale(&half) - jt_h_j.at(a, b);
        }
    }
    let gb = groebner(n, &spec.psi)?;
    let mut residual_is_zero = true;
    for a in 0..n {
        for b in 0..n {
            let entry = residual.at(a, b);
            if !entry.is_zero() {
                residual_is_zero = false;
            }
            if !gb.contains(entry)? {
                return Ok(HessIdentity {
                    holds: false,
                    residual_is_zero: false,
                    witness: Some((a, b, entry.clone())),
                });
            }
        }
    }
    Ok(HessIdentity { holds: true, residual_is_zero, witness: None })
}

/// Exact determinant of `H` at a rational point of `X`. The point must
/// satisfy `psi = 0` exactly; elsewhere the determinant does not
/// represent anything about the germ.
pub fn eval_df(spec: &ProblemSpec, point: &[Rat]) -> Result<Rat> {
    let n = spec.n();
    if point.len() != n {
        return Err(Error::PointLength { expected: n, got: point.len() });
    }
    for (i, psi) in spec.psi.iter().enumerate() {
        if !psi.eval(point)?.is_zero() {
            return Err(Error::PointNotOnVariety { component: i });
        }
    }
    spec.h.det()?.eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{ChartMap, YDesc};
    use crate::rat::rat_i64;
    use alloc::string::ToString;
    use alloc::vec;

    fn spec_with_h(h_entries: Vec<Polynomial>) -> ProblemSpec {
        let n = 3;
        let t = Polynomial::var(1, 0);
        ProblemSpec {
            varnames: vec!["x".to_string(), "y".to_string(), "z".to_string()],
            psi: vec![Polynomial::var(n, 0), Polynomial::var(n, 1)],
            h: PolyMatrix::new(2, 2, n, h_entries),
            ydesc: YDesc::Origin,
            xcharts: vec![ChartMap {
                label: "chart-1".to_string(),
                arity: 1,
                components: vec![Polynomial::zero(1), Polynomial::zero(1), t],
            }],
            extra_syzygies: vec![],
        }
    }

    fn morse() -> ProblemSpec {
        let one = Polynomial::constant(3, rat_i64(1));
        let zero = Polynomial::zero(3);
        spec_with_h(vec![one.clone(), zero.clone(), zero, one])
    }

    fn d_infinity() -> ProblemSpec {
        let one = Polynomial::constant(3, rat_i64(1));
        let zero = Polynomial::zero(3);
        let z = Polynomial::var(3, 2);
        spec_with_h(vec![one, zero.clone(), zero, z])
    }

    fn x2y2() -> ProblemSpec {
        // one equation psi = x, H = [[y^2]], germ x^2 y^2
        let n = 2;
        let y = Polynomial::var(n, 1);
        let t = Polynomial::var(1, 0);
        ProblemSpec {
            varnames: vec!["x".to_string(), "y".to_string()],
            psi: vec![Polynomial::var(n, 0)],
            h: PolyMatrix::new(1, 1, n, vec![&y * &y]),
            ydesc: YDesc::Origin,
            xcharts: vec![ChartMap {
                label: "chart-1".to_string(),
                arity: 1,
                components: vec![Polynomial::zero(1), t],
            }],
            extra_syzygies: vec![],
        }
    }

    #[test]
    fn assemble_unit_matrix() {
        let f = assemble_f(&morse());
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        assert_eq!(f, &(&x * &x) + &(&y * &y));
    }

    #[test]
    fn assemble_weighted_matrix() {
        let f = assemble_f(&d_infinity());
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        assert_eq!(f, &(&x * &x) + &(&z * &(&y * &y)));
    }

    #[test]
    fn assemble_single_equation() {
        let f = assemble_f(&x2y2());
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert_eq!(f, &(&x * &x) * &(&y * &y));
    }

    #[test]
    fn jacobian_of_linear_psi() {
        let jac = psi_jacobian(&morse()).unwrap();
        assert_eq!(jac.rows(), 2);
        assert_eq!(jac.cols(), 3);
        let one = Polynomial::constant(3, rat_i64(1));
        assert_eq!(*jac.at(0, 0), one);
        assert_eq!(*jac.at(1, 1), one);
        assert!(jac.at(0, 1).is_zero());
        assert!(jac.at(0, 2).is_zero());
        assert!(jac.at(1, 2).is_zero());
    }

    #[test]
    fn gradient_of_weighted_germ() {
        let g = gradient(&d_infinity()).unwrap();
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        assert_eq!(g[0], x.scale(&rat_i64(2)));
        assert_eq!(g[1], (&z * &y).scale(&rat_i64(2)));
        assert_eq!(g[2], &y * &y);
    }

    #[test]
    fn gradient_of_zero_h() {
        let zero = Polynomial::zero(3);
        let spec = spec_with_h(vec![zero.clone(), zero.clone(), zero.clone(), zero]);
        for g in gradient(&spec).unwrap() {
            assert!(g.is_zero());
        }
    }

    #[test]
    fn sigma_of_full_rank_linear_psi() {
        let gens = sigma_generators(&morse()).unwrap();
        // column pairs (1,2), (1,3), (2,3): minors 1, 0, 0; then psi
        assert_eq!(gens.len(), 5);
        assert_eq!(gens[0], Polynomial::constant(3, rat_i64(1)));
        assert!(gens[1].is_zero());
        assert!(gens[2].is_zero());
        assert_eq!(gens[3], Polynomial::var(3, 0));
        assert_eq!(gens[4], Polynomial::var(3, 1));
    }

    #[test]
    fn sigma_of_cusp() {
        // psi = x^2 - y^3, p = 1
        let n = 2;
        let x = Polynomial::var(n, 0);
        let y = Polynomial::var(n, 1);
        let psi = &(&x * &x) - &y.pow(3);
        let t = Polynomial::var(1, 0);
        let spec = ProblemSpec {
            varnames: vec!["x".to_string(), "y".to_string()],
            psi: vec![psi.clone()],
            h: PolyMatrix::new(1, 1, n, vec![Polynomial::constant(n, rat_i64(1))]),
            ydesc: YDesc::Origin,
            xcharts: vec![ChartMap {
                label: "chart-1".to_string(),
                arity: 1,
                components: vec![t.pow(3), t.pow(2)],
            }],
            extra_syzygies: vec![],
        };
        assert_eq!(spec.validate(), Ok(()));
        let gens = sigma_generators(&spec).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0], x.scale(&rat_i64(2)));
        assert_eq!(gens[1], y.pow(2).scale(&rat_i64(-3)));
        assert_eq!(gens[2], psi);
    }

    #[test]
    fn sigma_unit_for_identity_coordinates() {
        // p = n = 2, psi = (x, y): the single minor is the constant 1
        let n = 2;
        let spec = ProblemSpec {
            varnames: vec!["x".to_string(), "y".to_string()],
            psi: vec![Polynomial::var(n, 0), Polynomial::var(n, 1)],
            h: PolyMatrix::identity(2, n),
            ydesc: YDesc::Origin,
            xcharts: vec![ChartMap {
                label: "chart-1".to_string(),
                arity: 1,
                components: vec![Polynomial::zero(1), Polynomial::zero(1)],
            }],
            extra_syzygies: vec![],
        };
        let gens = sigma_generators(&spec).unwrap();
        assert_eq!(gens[0], Polynomial::constant(n, rat_i64(1)));
    }

    #[test]
    fn hess_identity_constant_h() {
        let r = check_hess_identity(&morse()).unwrap();
        assert!(r.holds);
        assert!(r.residual_is_zero);
    }

    #[test]
    fn hess_identity_weighted_h() {
        let r = check_hess_identity(&d_infinity()).unwrap();
        assert!(r.holds);
        // the residual contains psi-multiples but is nonzero as a polynomial
        assert!(!r.residual_is_zero);
        assert!(r.witness.is_none());
    }

    #[test]
    fn hess_identity_single_equation() {
        let r = check_hess_identity(&x2y2()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn df_on_the_axis() {
        let spec = d_infinity();
        let c = rat_i64(7);
        let v = eval_df(&spec, &[rat_i64(0), rat_i64(0), c.clone()]).unwrap();
        assert_eq!(v, c);
        // Morse representation has constant determinant 1
        let m = eval_df(&morse(), &[rat_i64(0), rat_i64(0), rat_i64(5)]).unwrap();
        assert_eq!(m, rat_i64(1));
        // single-equation case: 1x1 determinant y^2
        let s = eval_df(&x2y2(), &[rat_i64(0), rat_i64(3)]).unwrap();
        assert_eq!(s, rat_i64(9));
    }

    #[test]
    fn df_refuses_points_off_x() {
        let spec = d_infinity();
        let err = eval_df(&spec, &[rat_i64(1), rat_i64(0), rat_i64(0)]).unwrap_err();
        assert_eq!(err, Error::PointNotOnVariety { component: 0 });
        let err2 = eval_df(&spec, &[rat_i64(0), rat_i64(0)]).unwrap_err();
        assert!(matches!(err2, Error::PointLength { .. }));
    }
}
