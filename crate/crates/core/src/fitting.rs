//! The gradient-lift matrix `Lambda`, the Fitting ideal `K_f` spanned by
//! its maximal minors, and the exact identities tying them to the Jacobian
//! ideal `J_f` and the representation matrix.
//!
//! Columns of `Lambda` are the lifts `h^j` (one per ambient variable)
//! followed by the trivial syzygies of `psi` and any user-supplied extra
//! syzygies. Applying `sigma` (the dot product with `psi`) to a lift
//! column returns `df/dx_j`; syzygy columns map to zero.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::hessian::{assemble_f, gradient, psi_jacobian};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::problem::ProblemSpec;
use crate::rat::{rat_i64, Rat};
use crate::util::{binomial, combinations};

/// Upper bound on the number of maximal minors enumerated from `Lambda`.
pub const MINOR_ENUMERATION_CAP: usize = 5000;

/// Provenance of a `Lambda` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnTag {
    /// Gradient lift `h^j` for variable `j` (0-based).
    Hcol(usize),
    /// Trivial syzygy `psi_s e_r - psi_r e_s` for the pair `(r, s)`,
    /// 0-based, `r < s`.
    Syz(usize, usize),
    /// User-supplied extra syzygy, by input position.
    Extra(usize),
}

/// `Lambda` together with the generators of the Fitting ideal `K_f`.
#[derive(Debug, Clone)]
pub struct FittingData {
    pub lambda: PolyMatrix,
    pub column_tags: Vec<ColumnTag>,
    /// Deduplicated nonzero maximal minors, leading coefficients
    /// normalized to 1.
    pub kf_gens: Vec<Polynomial>,
}

/// The gradient lifts `h^1, ..., h^n`, each a p-vector with
/// `h_i^j = sum_k (2 f_ik dpsi_k/dx_j + df_ik/dx_j psi_k)`.
pub fn build_columns(spec: &ProblemSpec) -> Result<Vec<Vec<Polynomial>>> {
    let n = spec.n();
    let p = spec.p();
    let jac = psi_jacobian(spec)?;
    let two = rat_i64(2);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = Vec::with_capacity(p);
        for i in 0..p {
            let mut acc = Polynomial::zero(n);
            for k in 0..p {
                let first = spec.h.at(i, k).scale(&two);
                let first = &first * jac.at(k, j);
                let second = &spec.h.at(i, k).partial(j)? * &spec.psi[k];
                acc = &(&acc + &first) + &second;
            }
            col.push(acc);
        }
        cols.push(col);
    }
    Ok(cols)
}

/// The `p(p-1)/2` trivial syzygies `psi_s e_r - psi_r e_s` over pairs
/// `r < s`, in lexicographic pair order; empty for `p = 1`.
pub fn trivial_syzygies(spec: &ProblemSpec) -> Vec<Vec<Polynomial>> {
    let n = spec.n();
    let p = spec.p();
    let mut out = Vec::new();
    for r in 0..p {
        for s in (r + 1)..p {
            let mut v = vec![Polynomial::zero(n); p];
            v[r] = spec.psi[s].clone();
            v[s] = -&spec.psi[r];
            out.push(v);
        }
    }
    out
}

/// Assembles `Lambda = [h^1 ... h^n | trivial syzygies | extra syzygies]`
/// and enumerates its maximal minors into `kf_gens`.
///
/// Enumeration over column subsets is refused above
/// [`MINOR_ENUMERATION_CAP`] subsets.
pub fn build_lambda(spec: &ProblemSpec) -> Result<FittingData> {
    let n = spec.n();
    let p = spec.p();
    let lifts = build_columns(spec)?;
    let syz = trivial_syzygies(spec);
    let total_cols = n + syz.len() + spec.extra_syzygies.len();

    let mut entries = vec![Polynomial::zero(n); p * total_cols];
    let mut tags = Vec::with_capacity(total_cols);
    let mut c = 0;
    for (j, col) in lifts.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            entries[i * total_cols + c] = e.clone();
        }
        tags.push(ColumnTag::Hcol(j));
        c += 1;
    }
    let mut syz_pairs = Vec::new();
    for r in 0..p {
        for s in (r + 1)..p {
            syz_pairs.push((r, s));
        }
    }
    for (col, (r, s)) in syz.iter().zip(syz_pairs) {
        for (i, e) in col.iter().enumerate() {
            entries[i * total_cols + c] = e.clone();
        }
        tags.push(ColumnTag::Syz(r, s));
        c += 1;
    }
    for (k, col) in spec.extra_syzygies.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            entries[i * total_cols + c] = e.clone();
        }
        tags.push(ColumnTag::Extra(k));
        c += 1;
    }
    let lambda = PolyMatrix::new(p, total_cols, n, entries);

    let subset_count = binomial(total_cols, p);
    if subset_count > MINOR_ENUMERATION_CAP {
        return Err(Error::SizeCap {
            requested: subset_count,
            limit: MINOR_ENUMERATION_CAP,
        });
    }
    let rows: Vec<usize> = (0..p).collect();
    let mut kf_gens: Vec<Polynomial> = Vec::new();
    for cols in combinations(total_cols, p) {
        let m = lambda.minor(&rows, &cols)?;
        if m.is_zero() {
            continue;
        }
        let m = m.monic();
        if !kf_gens.contains(&m) {
            kf_gens.push(m);
        }
    }
    Ok(FittingData { lambda, column_tags: tags, kf_gens })
}

/// Outcome of the column contract: `sigma` applied to each column of
/// `Lambda` returns `df/dx_j` on lift columns and `0` on syzygy columns.
#[derive(Debug, Clone)]
pub struct SigmaContract {
    pub holds: bool,
    /// First failing column, if any.
    pub witness: Option<usize>,
}

/// Checks the column contract exactly.
pub fn verify_sigma_contract(spec: &ProblemSpec, fd: &FittingData) -> Result<SigmaContract> {
    let n = spec.n();
    let p = spec.p();
    let grad = gradient(spec)?;
    for (c, tag) in fd.column_tags.iter().enumerate() {
        let mut image = Polynomial::zero(n);
        for i in 0..p {
            image = &image + &(fd.lambda.at(i, c) * &spec.psi[i]);
        }
        let expected = match tag {
            ColumnTag::Hcol(j) => grad[*j].clone(),
            _ => Polynomial::zero(n),
        };
        if image != expected {
            return Ok(SigmaContract { holds: false, witness: Some(c) });
        }
    }
    Ok(SigmaContract { holds: true, witness: None })
}

/// Outcome of the inclusion `K_f I <= J_f`.
#[derive(Debug, Clone)]
pub struct DolOutcome {
    pub holds: bool,
    /// `(kf generator index, psi index, remainder)` of the first failing
    /// product.
    pub witness: Option<(usize, usize, Polynomial)>,
}

/// Verifies `K_f I <= J_f` generator by generator: every product
/// `g * psi_i` must reduce to zero against the Jacobian ideal basis.
/// This is a theorem for valid input, so a failure indicates a defect.
pub fn verify_dol(
    spec: &ProblemSpec,
    fd: &FittingData,
    jf_gb: &GroebnerBasis,
) -> Result<DolOutcome> {
    for (gi, g) in fd.kf_gens.iter().enumerate() {
        for (pi, psi) in spec.psi.iter().enumerate() {
            let prod = g * psi;
            let r = jf_gb.normal_form(&prod)?;
            if !r.is_zero() {
                return Ok(DolOutcome { holds: false, witness: Some((gi, pi, r)) });
            }
        }
    }
    Ok(DolOutcome { holds: true, witness: None })
}

/// Outcome of the determinant identity `2^p mu det(H) = a_mu + b_mu`
/// for one choice of variable columns.
#[derive(Debug, Clone)]
pub struct MudetOutcome {
    pub holds: bool,
    /// The psi-Jacobian minor `mu` on the chosen columns.
    pub mu: Polynomial,
    /// The corresponding minor of `Lambda` over the lift columns.
    pub a_mu: Polynomial,
    /// Residual `2^p mu det(H) - a_mu`; must lie in `(psi)`.
    pub b_mu: Polynomial,
}

/// Verifies the determinant identity on the given strictly increasing
/// variable columns: the residual `b_mu = 2^p mu det(H) - a_mu` must be
/// a member of the ideal `(psi_1, ..., psi_p)`.
pub fn verify_mudet(
    spec: &ProblemSpec,
    fd: &FittingData,
    cols: &[usize],
    psi_gb: &GroebnerBasis,
) -> Result<MudetOutcome> {
    let p = spec.p();
    if cols.len() != p {
        return Err(Error::BadIndexSet(alloc::format!(
            "expected {} columns, got {}",
            p,
            cols.len()
        )));
    }
    if !cols.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::BadIndexSet(alloc::string::String::from(
            "columns must be strictly increasing",
        )));
    }
    let rows: Vec<usize> = (0..p).collect();
    let jac = psi_jacobian(spec)?;
    let mu = jac.minor(&rows, cols)?;
    // lift column j of Lambda corresponds to variable j
    let a_mu = fd.lambda.minor(&rows, cols)?;
    let det_h = spec.h.det()?;
    let two_pow = Rat::from_integer(num_bigint::BigInt::from(1i64 << p));
    let lhs = (&mu * &det_h).scale(&two_pow);
    let b_mu = &lhs - &a_mu;
    let holds = psi_gb.contains(&b_mu)?;
    Ok(MudetOutcome { holds, mu, a_mu, b_mu })
}

/// Status of a check that may not apply to the given problem shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Holds,
    Fails { detail: alloc::string::String },
    NotApplicable,
}

/// Verifies that `psi_i^(p-2) df/dx_j` lies in `K_f` for all `i, j`;
/// requires `p >= 2` (each such product is, up to sign, a maximal minor
/// of `Lambda` built from one lift column and `p - 1` trivial syzygies).
pub fn verify_psi_power_grad(
    spec: &ProblemSpec,
    kf_gb: &GroebnerBasis,
) -> Result<CheckStatus> {
    let p = spec.p();
    if p < 2 {
        return Ok(CheckStatus::NotApplicable);
    }
    let grad = gradient(spec)?;
    for (i, psi) in spec.psi.iter().enumerate() {
        let psi_pow = psi.pow((p - 2) as u32);
        for (j, g) in grad.iter().enumerate() {
            let prod = &psi_pow * g;
            if !kf_gb.contains(&prod)? {
                return Ok(CheckStatus::Fails {
                    detail: alloc::format!(
                        "psi_{}^{} * df/dx_{} escapes K_f",
                        i + 1,
                        p - 2,
                        j + 1
                    ),
                });
            }
        }
    }
    Ok(CheckStatus::Holds)
}

/// The transversality germ `v = |psi|^(2(p-2)) |grad f|^2`; defined for
/// `p >= 2`.
pub fn transversality_germ(spec: &ProblemSpec) -> Result<Option<Polynomial>> {
    let n = spec.n();
    let p = spec.p();
    if p < 2 {
        return Ok(None);
    }
    let mut psi_norm2 = Polynomial::zero(n);
    for psi in &spec.psi {
        psi_norm2 = &psi_norm2 + &(psi * psi);
    }
    let mut grad_norm2 = Polynomial::zero(n);
    for g in gradient(spec)? {
        grad_norm2 = &grad_norm2 + &(&g * &g);
    }
    Ok(Some(&psi_norm2.pow((p - 2) as u32) * &grad_norm2))
}

/// Verifies membership of the transversality germ in `K_f` (`p >= 2`).
pub fn verify_v_in_kf(spec: &ProblemSpec, kf_gb: &GroebnerBasis) -> Result<CheckStatus> {
    match transversality_germ(spec)? {
        None => Ok(CheckStatus::NotApplicable),
        Some(v) => {
            if kf_gb.contains(&v)? {
                Ok(CheckStatus::Holds)
            } else {
                Ok(CheckStatus::Fails {
                    detail: alloc::string::String::from("v escapes K_f"),
                })
            }
        }
    }
}

/// Assembled germ's Jacobian ideal generators (the gradient); named here
/// for symmetry with `kf_gens`.
pub fn jf_generators(spec: &ProblemSpec) -> Result<Vec<Polynomial>> {
    gradient(spec)
}

/// Convenience: the assembled germ itself.
pub fn germ(spec: &ProblemSpec) -> Polynomial {
    assemble_f(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::groebner;
    use crate::problem::{ChartMap, YDesc};
    use alloc::string::ToString;

    fn spec3(h_entries: Vec<Polynomial>) -> ProblemSpec {
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
        spec3(vec![one.clone(), zero.clone(), zero, one])
    }

    fn d_infinity() -> ProblemSpec {
        let one = Polynomial::constant(3, rat_i64(1));
        let zero = Polynomial::zero(3);
        let z = Polynomial::var(3, 2);
        spec3(vec![one, zero.clone(), zero, z])
    }

    fn x2y2() -> ProblemSpec {
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

    fn c3(v: i64) -> Polynomial {
        Polynomial::constant(3, rat_i64(v))
    }

    #[test]
    fn lift_columns_weighted() {
        let cols = build_columns(&d_infinity()).unwrap();
        let z = Polynomial::var(3, 2);
        let y = Polynomial::var(3, 1);
        assert_eq!(cols[0], vec![c3(2), c3(0)]);
        assert_eq!(cols[1], vec![c3(0), z.scale(&rat_i64(2))]);
        assert_eq!(cols[2], vec![c3(0), y]);
    }

    #[test]
    fn lift_columns_identity_h() {
        let cols = build_columns(&morse()).unwrap();
        assert_eq!(cols[0], vec![c3(2), c3(0)]);
        assert_eq!(cols[1], vec![c3(0), c3(2)]);
        assert_eq!(cols[2], vec![c3(0), c3(0)]);
    }

    #[test]
    fn lift_columns_zero_h() {
        let zero = Polynomial::zero(3);
        let spec = spec3(vec![zero.clone(), zero.clone(), zero.clone(), zero]);
        for col in build_columns(&spec).unwrap() {
            for e in col {
                assert!(e.is_zero());
            }
        }
    }

    #[test]
    fn trivial_syzygies_pairs() {
        let s = trivial_syzygies(&d_infinity());
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        assert_eq!(s, vec![vec![y, -&x]]);
        assert!(trivial_syzygies(&x2y2()).is_empty());
    }

    #[test]
    fn trivial_syzygies_three_equations() {
        let n = 3;
        let (x, y, z) = (
            Polynomial::var(n, 0),
            Polynomial::var(n, 1),
            Polynomial::var(n, 2),
        );
        let spec = ProblemSpec {
            varnames: vec!["x".to_string(), "y".to_string(), "z".to_string()],
            psi: vec![x.clone(), y.clone(), z.clone()],
            h: PolyMatrix::identity(3, n),
            ydesc: YDesc::Origin,
            xcharts: vec![],
            extra_syzygies: vec![],
        };
        let s = trivial_syzygies(&spec);
        let o = Polynomial::zero(n);
        assert_eq!(
            s,
            vec![
                vec![y.clone(), -&x, o.clone()],
                vec![z.clone(), o.clone(), -&x],
                vec![o, z, -&y],
            ]
        );
    }

    #[test]
    fn lambda_and_kf_weighted() {
        let fd = build_lambda(&d_infinity()).unwrap();
        assert_eq!(fd.lambda.rows(), 2);
        assert_eq!(fd.lambda.cols(), 4);
        let y = Polynomial::var(3, 1);
        let x = Polynomial::var(3, 0);
        assert_eq!(*fd.lambda.at(0, 3), y);
        assert_eq!(*fd.lambda.at(1, 3), -&x);
        // normalized minors: z, y, x, zy, y^2 (in some enumeration order)
        let z = Polynomial::var(3, 2);
        let expect = [
            z.clone(),
            y.clone(),
            x.clone(),
            &z * &y,
            &y * &y,
        ];
        assert_eq!(fd.kf_gens.len(), 5);
        for e in &expect {
            assert!(fd.kf_gens.contains(e), "missing generator");
        }
    }

    #[test]
    fn lambda_and_kf_single_equation() {
        let fd = build_lambda(&x2y2()).unwrap();
        assert_eq!(fd.lambda.rows(), 1);
        assert_eq!(fd.lambda.cols(), 2);
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert_eq!(fd.kf_gens, vec![&y * &y, &x * &y]);
    }

    #[test]
    fn kf_of_identity_h_contains_unit() {
        let fd = build_lambda(&morse()).unwrap();
        assert!(fd
            .kf_gens
            .iter()
            .any(|g| g.is_constant() && !g.is_zero()));
    }

    #[test]
    fn sigma_contract_holds_on_examples() {
        for spec in [morse(), d_infinity(), x2y2()] {
            let fd = build_lambda(&spec).unwrap();
            let r = verify_sigma_contract(&spec, &fd).unwrap();
            assert!(r.holds);
        }
    }

    #[test]
    fn dol_holds_on_examples() {
        for spec in [morse(), d_infinity(), x2y2()] {
            let fd = build_lambda(&spec).unwrap();
            let jf = groebner(spec.n(), &jf_generators(&spec).unwrap()).unwrap();
            let r = verify_dol(&spec, &fd, &jf).unwrap();
            assert!(r.holds, "dol must hold on valid input");
        }
    }

    #[test]
    fn dol_vacuous_for_zero_h() {
        let zero = Polynomial::zero(3);
        let spec = spec3(vec![zero.clone(), zero.clone(), zero.clone(), zero]);
        let fd = build_lambda(&spec).unwrap();
        assert!(fd.kf_gens.is_empty());
        let jf = groebner(3, &jf_generators(&spec).unwrap()).unwrap();
        assert!(verify_dol(&spec, &fd, &jf).unwrap().holds);
    }

    #[test]
    fn mudet_weighted_first_pair() {
        let spec = d_infinity();
        let fd = build_lambda(&spec).unwrap();
        let psi_gb = groebner(3, &spec.psi).unwrap();
        let r = verify_mudet(&spec, &fd, &[0, 1], &psi_gb).unwrap();
        assert!(r.holds);
        assert_eq!(r.mu, c3(1));
        let z = Polynomial::var(3, 2);
        assert_eq!(r.a_mu, z.scale(&rat_i64(4)));
        assert!(r.b_mu.is_zero());
    }

    #[test]
    fn mudet_weighted_degenerate_pair() {
        let spec = d_infinity();
        let fd = build_lambda(&spec).unwrap();
        let psi_gb = groebner(3, &spec.psi).unwrap();
        let r = verify_mudet(&spec, &fd, &[0, 2], &psi_gb).unwrap();
        assert!(r.holds);
        assert!(r.mu.is_zero());
        let y = Polynomial::var(3, 1);
        assert_eq!(r.a_mu, y.scale(&rat_i64(2)));
        assert_eq!(r.b_mu, y.scale(&rat_i64(-2)));
    }

    #[test]
    fn mudet_single_equation_cubic() {
        // psi = x, H = [[y]] (germ x^2 y): residual vanishes identically
        let n = 2;
        let y = Polynomial::var(n, 1);
        let t = Polynomial::var(1, 0);
        let spec = ProblemSpec {
            varnames: vec!["x".to_string(), "y".to_string()],
            psi: vec![Polynomial::var(n, 0)],
            h: PolyMatrix::new(1, 1, n, vec![y]),
            ydesc: YDesc::Origin,
            xcharts: vec![ChartMap {
                label: "chart-1".to_string(),
                arity: 1,
                components: vec![Polynomial::zero(1), t],
            }],
            extra_syzygies: vec![],
        };
        let fd = build_lambda(&spec).unwrap();
        let psi_gb = groebner(n, &spec.psi).unwrap();
        let r = verify_mudet(&spec, &fd, &[0], &psi_gb).unwrap();
        assert!(r.holds);
        assert!(r.b_mu.is_zero());
    }

    #[test]
    fn mudet_rejects_bad_columns() {
        let spec = d_infinity();
        let fd = build_lambda(&spec).unwrap();
        let psi_gb = groebner(3, &spec.psi).unwrap();
        assert!(verify_mudet(&spec, &fd, &[1, 0], &psi_gb).is_err());
        assert!(verify_mudet(&spec, &fd, &[0], &psi_gb).is_err());
    }

    #[test]
    fn psi_power_grad_statuses() {
        let morse_spec = morse();
        let fd = build_lambda(&morse_spec).unwrap();
        let kf = groebner(3, &fd.kf_gens).unwrap();
        assert_eq!(
            verify_psi_power_grad(&morse_spec, &kf).unwrap(),
            CheckStatus::Holds
        );

        let dinf = d_infinity();
        let fd2 = build_lambda(&dinf).unwrap();
        let kf2 = groebner(3, &fd2.kf_gens).unwrap();
        assert_eq!(verify_psi_power_grad(&dinf, &kf2).unwrap(), CheckStatus::Holds);

        let single = x2y2();
        let fd3 = build_lambda(&single).unwrap();
        let kf3 = groebner(2, &fd3.kf_gens).unwrap();
        assert_eq!(
            verify_psi_power_grad(&single, &kf3).unwrap(),
            CheckStatus::NotApplicable
        );
    }

    #[test]
    fn transversality_germ_membership() {
        let dinf = d_infinity();
        let v = transversality_germ(&dinf).unwrap().unwrap();
        // v = (x^2 + y^2)^0 * (4x^2 + 4z^2y^2 + y^4)
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        let expect = &(&(&x * &x).scale(&rat_i64(4))
            + &(&(&z * &z) * &(&y * &y)).scale(&rat_i64(4)))
            + &y.pow(4);
        assert_eq!(v, expect);
        let fd = build_lambda(&dinf).unwrap();
        let kf = groebner(3, &fd.kf_gens).unwrap();
        assert_eq!(verify_v_in_kf(&dinf, &kf).unwrap(), CheckStatus::Holds);
        assert_eq!(
            verify_v_in_kf(&x2y2(), &kf).unwrap(),
            CheckStatus::NotApplicable
        );
    }
}
