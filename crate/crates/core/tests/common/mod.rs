//! Shared fixtures: the standard problem gallery used across the
//! integration suites. Each suite links only what it names, so the
//! unused remainder is expected.
#![allow(dead_code)]

use infdet_core::rat::{rat_i64, Rat};
use infdet_core::{ChartMap, PolyMatrix, Polynomial, ProblemSpec, YDesc};

pub fn c(nvars: usize, v: i64) -> Polynomial {
    Polynomial::constant(nvars, rat_i64(v))
}

pub fn x(nvars: usize, i: usize) -> Polynomial {
    Polynomial::var(nvars, i)
}

fn axis_chart(nvars: usize, axis: usize) -> ChartMap {
    let mut components = vec![Polynomial::zero(1); nvars];
    components[axis] = Polynomial::var(1, 0);
    ChartMap { label: String::from("axis"), arity: 1, components }
}

/// `f = x^2 + y^2` along the z-axis; certified at `k = 0`.
pub fn morse() -> ProblemSpec {
    let n = 3;
    ProblemSpec {
        varnames: vec!["x".into(), "y".into(), "z".into()],
        psi: vec![x(n, 0), x(n, 1)],
        h: PolyMatrix::new(2, 2, n, vec![c(n, 1), c(n, 0), c(n, 0), c(n, 1)]),
        ydesc: YDesc::Origin,
        xcharts: vec![axis_chart(n, 2)],
        extra_syzygies: vec![],
    }
}

/// `f = x^2 + z y^2`; determinant degenerates linearly, certified at
/// `k = 1`.
pub fn d_infinity() -> ProblemSpec {
    let n = 3;
    ProblemSpec {
        varnames: vec!["x".into(), "y".into(), "z".into()],
        psi: vec![x(n, 0), x(n, 1)],
        h: PolyMatrix::new(2, 2, n, vec![c(n, 1), c(n, 0), c(n, 0), x(n, 2)]),
        ydesc: YDesc::Origin,
        xcharts: vec![axis_chart(n, 2)],
        extra_syzygies: vec![],
    }
}

/// `f = x^2 + (z^2 - z^3) y^2`; gradient estimate fails on the y-axis,
/// determinant exponent is about 2.
pub fn d_infinity_t2() -> ProblemSpec {
    let n = 3;
    let h22 = &(&x(n, 2) * &x(n, 2)) - &(&(&x(n, 2) * &x(n, 2)) * &x(n, 2));
    ProblemSpec {
        varnames: vec!["x".into(), "y".into(), "z".into()],
        psi: vec![x(n, 0), x(n, 1)],
        h: PolyMatrix::new(2, 2, n, vec![c(n, 1), c(n, 0), c(n, 0), h22]),
        ydesc: YDesc::Origin,
        xcharts: vec![axis_chart(n, 2)],
        extra_syzygies: vec![],
    }
}

/// `f = x^2 y^2`; symbolically inconclusive and numerically refuted.
pub fn x2y2() -> ProblemSpec {
    let n = 2;
    let y2 = &x(n, 1) * &x(n, 1);
    ProblemSpec {
        varnames: vec!["x".into(), "y".into()],
        psi: vec![x(n, 0)],
        h: PolyMatrix::new(1, 1, n, vec![y2]),
        ydesc: YDesc::Origin,
        xcharts: vec![axis_chart(n, 1)],
        extra_syzygies: vec![],
    }
}

/// `f = (x^2 - y^3)^2` over the cusp; certified at `k = 2`.
pub fn cusp() -> ProblemSpec {
    let n = 2;
    let psi = &(&x(n, 0) * &x(n, 0)) - &(&(&x(n, 1) * &x(n, 1)) * &x(n, 1));
    let t3 = Polynomial::var(1, 0).pow(3);
    let t2 = Polynomial::var(1, 0).pow(2);
    ProblemSpec {
        varnames: vec!["x".into(), "y".into()],
        psi: vec![psi],
        h: PolyMatrix::new(1, 1, n, vec![c(n, 1)]),
        ydesc: YDesc::Origin,
        xcharts: vec![ChartMap { label: "cusp".into(), arity: 1, components: vec![t3, t2] }],
        extra_syzygies: vec![],
    }
}

/// `p = n`: the critical variety is the isolated origin.
pub fn full_rank_isolated() -> ProblemSpec {
    let n = 2;
    ProblemSpec {
        varnames: vec!["x".into(), "y".into()],
        psi: vec![x(n, 0), x(n, 1)],
        h: PolyMatrix::new(2, 2, n, vec![c(n, 1), c(n, 0), c(n, 0), c(n, 1)]),
        ydesc: YDesc::Origin,
        xcharts: vec![ChartMap {
            label: "origin".into(),
            arity: 1,
            components: vec![Polynomial::zero(1), Polynomial::zero(1)],
        }],
        extra_syzygies: vec![],
    }
}

/// Codimension-3 complete intersection `f = x^2 + y^2 + w z^2`;
/// certified at `k = 1`.
pub fn ci_p3() -> ProblemSpec {
    let n = 4;
    let entries = vec![
        c(n, 1),
        c(n, 0),
        c(n, 0),
        c(n, 0),
        c(n, 1),
        c(n, 0),
        c(n, 0),
        c(n, 0),
        x(n, 3),
    ];
    ProblemSpec {
        varnames: vec!["x".into(), "y".into(), "z".into(), "w".into()],
        psi: vec![x(n, 0), x(n, 1), x(n, 2)],
        h: PolyMatrix::new(3, 3, n, entries),
        ydesc: YDesc::Origin,
        xcharts: vec![axis_chart(n, 3)],
        extra_syzygies: vec![],
    }
}

/// The whole gallery with stable names.
pub fn gallery() -> Vec<(&'static str, ProblemSpec)> {
    vec![
        ("morse-transversal", morse()),
        ("d-infinity", d_infinity()),
        ("d-infinity-t2", d_infinity_t2()),
        ("x2y2-fail", x2y2()),
        ("cusp-psi", cusp()),
        ("full-rank-isolated", full_rank_isolated()),
        ("ci-p3", ci_p3()),
    ]
}

/// Small rational for property generators.
pub fn small_rat(num: i64, den: u8) -> Rat {
    infdet_core::rat::rat_frac(num, (den as i64).max(1))
}
