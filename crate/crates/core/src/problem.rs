//! Problem data: the map `psi` cutting out the critical variety `X`, the
//! symmetric representation matrix `H = (f_ij)` of the germ, the reference
//! set `Y`, and parametrized charts used for sampling.
//!
//! Validation enforces the structural invariants exactly (symbolically);
//! geometric hypotheses that have no finite check (density of the regular
//! part, containment of the degeneracy locus in `Y`) are recorded by the
//! report as assumptions instead.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;

/// Polynomial map from a parameter space into the ambient space, used to
/// produce sample points of a semialgebraic set near the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartMap {
    pub label: String,
    /// Number of chart parameters.
    pub arity: usize,
    /// One polynomial per ambient variable, each in `arity` parameters.
    pub components: Vec<Polynomial>,
}

/// The reference set `Y` (degeneracy locus container): either the origin
/// alone or a union of chart images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum YDesc {
    Origin,
    Charts(Vec<ChartMap>),
}

/// A complete problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub varnames: Vec<String>,
    pub psi: Vec<Polynomial>,
    /// The representation matrix `(f_ij)`, p x p, symmetric.
    pub h: PolyMatrix,
    pub ydesc: YDesc,
    /// Charts covering `X` near the origin, used by the sampling paths.
    pub xcharts: Vec<ChartMap>,
    /// User-supplied syzygies besides the trivial ones; each is a p-vector
    /// `s` with `sum s_i psi_i = 0`.
    pub extra_syzygies: Vec<Vec<Polynomial>>,
}

/// Violations of the structural invariants of a [`ProblemSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    /// No components in `psi`.
    NoPsi,
    /// More equations than ambient variables.
    PsiCountExceedsVars { p: usize, n: usize },
    /// A polynomial lives in the wrong ring.
    WrongVarCount { what: String, expected: usize, got: usize },
    /// `H` is not p x p.
    HShape { rows: usize, cols: usize, p: usize },
    /// `H` differs from its transpose at the given entry.
    HNotSymmetric { row: usize, col: usize },
    /// `psi_i(0) != 0`.
    PsiConstantTerm { index: usize },
    /// A chart has no parameters.
    ChartNoParams { label: String },
    /// A chart's component count differs from the ambient dimension.
    ChartComponentCount { label: String, expected: usize, got: usize },
    /// A chart component lives in the wrong parameter ring.
    ChartArityMismatch { label: String, component: usize },
    /// `gamma(0) != 0`.
    ChartNotCentered { label: String, component: usize },
    /// `psi_i(gamma(t))` is not identically zero.
    ChartNotOnX { label: String, psi_index: usize },
    /// An extra syzygy has the wrong length.
    SyzygyLength { index: usize, expected: usize, got: usize },
    /// `sum s_i psi_i != 0` for an extra syzygy.
    SyzygyNotAnnihilating { index: usize },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::NoPsi => write!(f, "psi has no components"),
            SpecError::PsiCountExceedsVars { p, n } => {
                write!(f, "psi has {p} components but only {n} variables")
            }
            SpecError::WrongVarCount { what, expected, got } => {
                write!(f, "{what} uses {got} variables, expected {expected}")
            }
            SpecError::HShape { rows, cols, p } => {
                write!(f, "H is {rows}x{cols} but psi has {p} components")
            }
            SpecError::HNotSymmetric { row, col } => {
                write!(f, "H is not symmetric at entry ({}, {})", row + 1, col + 1)
            }
            SpecError::PsiConstantTerm { index } => {
                write!(f, "psi_{} has a nonzero constant term", index + 1)
            }
            SpecError::ChartNoParams { label } => {
                write!(f, "chart {label} has no parameters")
            }
            SpecError::ChartComponentCount { label, expected, got } => {
                write!(f, "chart {label} has {got} components, expected {expected}")
            }
            SpecError::ChartArityMismatch { label, component } => {
                write!(
                    f,
                    "chart {label} component {} uses a different parameter count",
                    component + 1
                )
            }
            SpecError::ChartNotCentered { label, component } => {
                write!(f, "chart {label} component {} is nonzero at t = 0", component + 1)
            }
            SpecError::ChartNotOnX { label, psi_index } => {
                write!(
                    f,
                    "chart {label} leaves X: psi_{} does not vanish on its image",
                    psi_index + 1
                )
            }
            SpecError::SyzygyLength { index, expected, got } => {
                write!(f, "syzygy {} has {got} entries, expected {expected}", index + 1)
            }
            SpecError::SyzygyNotAnnihilating { index } => {
                write!(f, "syzygy {} does not annihilate psi", index + 1)
            }
        }
    }
}

impl core::error::Error for SpecError {}

impl ProblemSpec {
    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.varnames.len()
    }

    /// Number of defining equations `p`.
    pub fn p(&self) -> usize {
        self.psi.len()
    }

    /// Checks every structural invariant, symbolically and exactly.
    pub fn validate(&self) -> core::result::Result<(), SpecError> {
        let n = self.n();
        let p = self.p();
        if p == 0 {
            return Err(SpecError::NoPsi);
        }
        if p > n {
            return Err(SpecError::PsiCountExceedsVars { p, n });
        }
        for (i, psi) in self.psi.iter().enumerate() {
            if psi.nvars() != n {
                return Err(SpecError::WrongVarCount {
                    what: alloc::format!("psi_{}", i + 1),
                    expected: n,
                    got: psi.nvars(),
                });
            }
            if constant_term_nonzero(psi) {
                return Err(SpecError::PsiConstantTerm { index: i });
            }
        }
        if self.h.rows() != p || self.h.cols() != p {
            return Err(SpecError::HShape { rows: self.h.rows(), cols: self.h.cols(), p });
        }
        if self.h.nvars() != n {
            return Err(SpecError::WrongVarCount {
                what: String::from("H"),
                expected: n,
                got: self.h.nvars(),
            });
        }
        for r in 0..p {
            for c in (r + 1)..p {
                if self.h.at(r, c) != self.h.at(c, r) {
                    return Err(SpecError::HNotSymmetric { row: r, col: c });
                }
            }
        }
        // Y is a subset of X, so its charts satisfy the same composition
        // identity as the X charts
        for chart in &self.xcharts {
            self.validate_chart(chart)?;
        }
        if let YDesc::Charts(charts) = &self.ydesc {
            for chart in charts {
                self.validate_chart(chart)?;
            }
        }
        for (i, s) in self.extra_syzygies.iter().enumerate() {
            if s.len() != p {
                return Err(SpecError::SyzygyLength { index: i, expected: p, got: s.len() });
            }
            let mut acc = Polynomial::zero(n);
            for (si, psi) in s.iter().zip(&self.psi) {
                if si.nvars() != n {
                    return Err(SpecError::WrongVarCount {
                        what: alloc::format!("syzygy {}", i + 1),
                        expected: n,
                        got: si.nvars(),
                    });
                }
                acc = &acc + &(si * psi);
            }
            if !acc.is_zero() {
                return Err(SpecError::SyzygyNotAnnihilating { index: i });
            }
        }
        Ok(())
    }

    fn validate_chart(&self, chart: &ChartMap) -> core::result::Result<(), SpecError> {
        let n = self.n();
        if chart.arity == 0 {
            return Err(SpecError::ChartNoParams { label: chart.label.clone() });
        }
        if chart.components.len() != n {
            return Err(SpecError::ChartComponentCount {
                label: chart.label.clone(),
                expected: n,
                got: chart.components.len(),
            });
        }
        for (ci, comp) in chart.components.iter().enumerate() {
            if comp.nvars() != chart.arity {
                return Err(SpecError::ChartArityMismatch {
                    label: chart.label.clone(),
                    component: ci,
                });
            }
            if constant_term_nonzero(comp) {
                return Err(SpecError::ChartNotCentered {
                    label: chart.label.clone(),
                    component: ci,
                });
            }
        }
        for (pi, psi) in self.psi.iter().enumerate() {
            let composed = psi
                .substitute(&chart.components)
                .expect("component count was checked");
            if !composed.is_zero() {
                return Err(SpecError::ChartNotOnX {
                    label: chart.label.clone(),
                    psi_index: pi,
                });
            }
        }
        Ok(())
    }
}

fn constant_term_nonzero(p: &Polynomial) -> bool {
    p.terms().iter().any(|(m, _)| m.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;
    use alloc::string::ToString;
    use alloc::vec;

    fn d_infinity() -> ProblemSpec {
        let n = 3;
        let x = Polynomial::var(n, 0);
        let y = Polynomial::var(n, 1);
        let z = Polynomial::var(n, 2);
        let one = Polynomial::constant(n, rat_i64(1));
        let zero = Polynomial::zero(n);
        let t = Polynomial::var(1, 0);
        ProblemSpec {
            varnames: vec!["x".to_string(), "y".to_string(), "z".to_string()],
            psi: vec![x, y],
            h: PolyMatrix::new(2, 2, n, vec![one, zero.clone(), zero, z]),
            ydesc: YDesc::Origin,
            xcharts: vec![ChartMap {
                label: "chart-1".to_string(),
                arity: 1,
                components: vec![Polynomial::zero(1), Polynomial::zero(1), t],
            }],
            extra_syzygies: vec![],
        }
    }

    #[test]
    fn valid_spec_passes() {
        assert_eq!(d_infinity().validate(), Ok(()));
    }

    #[test]
    fn asymmetric_h_is_rejected() {
        let mut p = d_infinity();
        *p.h.at_mut(0, 1) = Polynomial::var(3, 0);
        assert_eq!(p.validate(), Err(SpecError::HNotSymmetric { row: 0, col: 1 }));
    }

    #[test]
    fn psi_with_constant_term_is_rejected() {
        let mut p = d_infinity();
        p.psi[0] = &p.psi[0] + &Polynomial::constant(3, rat_i64(1));
        assert_eq!(p.validate(), Err(SpecError::PsiConstantTerm { index: 0 }));
    }

    #[test]
    fn chart_leaving_x_is_rejected() {
        let mut p = d_infinity();
        let t = Polynomial::var(1, 0);
        p.xcharts[0].components[0] = t;
        assert_eq!(
            p.validate(),
            Err(SpecError::ChartNotOnX { label: "chart-1".to_string(), psi_index: 0 })
        );
    }

    #[test]
    fn bad_syzygy_is_rejected() {
        let mut p = d_infinity();
        // (psi_2, -psi_1) annihilates; (psi_2, psi_1) does not
        let s_good = vec![p.psi[1].clone(), -&p.psi[0]];
        let s_bad = vec![p.psi[1].clone(), p.psi[0].clone()];
        p.extra_syzygies = vec![s_good];
        assert_eq!(p.validate(), Ok(()));
        p.extra_syzygies = vec![s_bad];
        assert_eq!(p.validate(), Err(SpecError::SyzygyNotAnnihilating { index: 0 }));
    }

    #[test]
    fn too_many_equations_rejected() {
        let mut p = d_infinity();
        p.varnames = vec!["x".to_string()];
        assert!(matches!(p.validate(), Err(SpecError::PsiCountExceedsVars { .. })));
    }
}
