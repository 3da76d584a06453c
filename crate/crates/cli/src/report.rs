//! Rendering of pipeline outcomes.
//!
//! The machine block is a flat sequence of `key = value` lines in a
//! fixed order; identical input and plan produce byte-identical output.
//! A human-oriented summary follows as `#` comment lines, so the whole
//! document stays parseable by a key-value reader.

use infdet_core::fitting::CheckStatus;
use infdet_core::groebner::PowerCertificate;
use infdet_core::loja::{fmt_f64, LojaEstimate, LojaVerdict, SamplePlan};
use infdet_core::perturb::PairVerification;
use infdet_core::{ProblemSpec, YDesc};

use crate::parse::serialize_problem;
use crate::pipeline::{CheckOutcome, LojaOutcome, Report, Verdict};

fn push_kv(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str(key);
    out.push_str(" = ");
    out.push_str(value.as_ref());
    out.push('\n');
}

fn verdict_word(v: &LojaVerdict) -> &'static str {
    match v {
        LojaVerdict::Holds => "holds",
        LojaVerdict::Fails => "fails",
        LojaVerdict::Inconclusive => "inconclusive",
    }
}

fn status_word(s: &CheckStatus) -> String {
    match s {
        CheckStatus::Holds => "holds".into(),
        CheckStatus::Fails { detail } => format!("fails: {}", detail),
        CheckStatus::NotApplicable => "not-applicable".into(),
    }
}

fn certificate_k(c: &PowerCertificate) -> String {
    match c.k {
        Some(k) => k.to_string(),
        None => "none".into(),
    }
}

fn point_tuple(coords: &[f64]) -> String {
    let parts: Vec<String> = coords.iter().map(|v| fmt_f64(*v)).collect();
    format!("({})", parts.join(", "))
}

/// Header keys shared by every subcommand.
pub fn render_header(out: &mut String, problem: &str, spec: &ProblemSpec) {
    push_kv(out, "problem", problem);
    push_kv(out, "n", spec.n().to_string());
    push_kv(out, "p", spec.p().to_string());
    push_kv(out, "vars", spec.varnames.join(" "));
    match &spec.ydesc {
        YDesc::Origin => push_kv(out, "y", "origin"),
        YDesc::Charts(cs) => push_kv(out, "y", format!("charts {}", cs.len())),
    }
    push_kv(out, "xcharts", spec.xcharts.len().to_string());
    push_kv(out, "syzygies.extra", spec.extra_syzygies.len().to_string());
    push_kv(out, "assumption.regdense", "asserted");
    push_kv(out, "assumption.on-y", "asserted");
    push_kv(out, "assumption.syzygies", "asserted");
}

/// The symbolic block.
pub fn render_check(out: &mut String, check: &CheckOutcome, certified: bool) {
    push_kv(out, "check.k-max", check.k_max.to_string());
    let hess = if check.hess.holds {
        "holds".to_string()
    } else {
        match &check.hess.witness {
            Some((r, c, _)) => format!("fails ({}, {})", r + 1, c + 1),
            None => "fails".to_string(),
        }
    };
    push_kv(out, "check.hess-identity", hess);
    push_kv(out, "check.hess-residual-zero", check.hess.residual_is_zero.to_string());
    let sigma = if check.sigma.holds {
        "holds".to_string()
    } else {
        format!("fails col {}", check.sigma.witness.map(|c| c + 1).unwrap_or(0))
    };
    push_kv(out, "check.sigma-contract", sigma);
    let dol = if check.dol.holds {
        "holds".to_string()
    } else {
        match &check.dol.witness {
            Some((g, p, _)) => format!("fails (gen {}, psi {})", g + 1, p + 1),
            None => "fails".to_string(),
        }
    };
    push_kv(out, "check.dol", dol);
    push_kv(out, "check.mudet.subsets", check.mudet.len().to_string());
    let mudet = match check.mudet.iter().find(|(_, m)| !m.holds) {
        None => "holds".to_string(),
        Some((cols, _)) => {
            let cs: Vec<String> = cols.iter().map(|c| (c + 1).to_string()).collect();
            format!("fails cols ({})", cs.join(", "))
        }
    };
    push_kv(out, "check.mudet", mudet);
    push_kv(out, "check.psi-power-grad", status_word(&check.psi_power));
    push_kv(out, "check.v-in-kf", status_word(&check.v_in_kf));
    push_kv(out, "kf.generators", check.kf_gen_count.to_string());
    push_kv(out, "kf.gb-size", check.kf_gb_size.to_string());
    push_kv(out, "kf.unit-ideal", check.kf_unit_ideal.to_string());
    push_kv(out, "ifit.k", certificate_k(&check.ifit));
    push_kv(out, "ifit.k-max", check.ifit.k_max.to_string());
    push_kv(out, "ijac.k", certificate_k(&check.ijac));
    push_kv(out, "ijac.k-max", check.ijac.k_max.to_string());
    push_kv(out, "symbolic.verdict", if certified { "certified" } else { "inconclusive" });
}

fn render_estimate(out: &mut String, prefix: &str, e: &LojaEstimate, with_min_off: bool) {
    push_kv(out, &format!("{}.alpha", prefix), fmt_f64(e.alpha_hat));
    push_kv(out, &format!("{}.log-c", prefix), fmt_f64(e.log_c_hat));
    push_kv(out, &format!("{}.support", prefix), e.support_points.to_string());
    push_kv(out, &format!("{}.residual-floor", prefix), fmt_f64(e.residual_floor));
    push_kv(out, &format!("{}.grid-bound", prefix), fmt_f64(e.grid_bound));
    if with_min_off {
        let v = match e.min_g_off {
            Some(v) => fmt_f64(v),
            None => "none".into(),
        };
        push_kv(out, &format!("{}.min-off-y", prefix), v);
    }
    push_kv(out, &format!("{}.verdict", prefix), verdict_word(&e.verdict));
    if let Some(w) = &e.witness {
        let line = format!("g = {}, r = {}, at {}", fmt_f64(w.g), fmt_f64(w.r), point_tuple(&w.point));
        push_kv(out, &format!("{}.witness", prefix), line);
    }
    if let Some(note) = e.note {
        push_kv(out, &format!("{}.note", prefix), note);
    }
}

/// The numeric block.
pub fn render_loja(out: &mut String, loja: &LojaOutcome) {
    let plan: &SamplePlan = &loja.plan;
    push_kv(out, "loja.plan.rmin", fmt_f64(plan.rmin));
    push_kv(out, "loja.plan.rmax", fmt_f64(plan.rmax));
    push_kv(out, "loja.plan.shells", plan.shells.to_string());
    push_kv(out, "loja.plan.per-shell", plan.per_shell.to_string());
    push_kv(out, "loja.plan.seed", plan.seed.to_string());
    push_kv(out, "loja.plan.chart-grid", plan.chart_grid.to_string());
    render_estimate(out, "estims.grad", &loja.grad, false);
    render_estimate(out, "estims.df", &loja.df, true);
    push_kv(out, "estims.verdict", verdict_word(&loja.verdict()));
}

/// Full machine block plus human tail for the `check` subcommand.
pub fn format_check(problem: &str, spec: &ProblemSpec, check: &CheckOutcome) -> String {
    let certified = check.certified(spec);
    let mut out = String::new();
    render_header(&mut out, problem, spec);
    render_check(&mut out, check, certified);
    let verdict =
        if certified { Verdict::CertifiedSufficient } else { Verdict::Inconclusive };
    push_kv(&mut out, "verdict", verdict.as_str());
    out.push_str("#\n");
    human_check_lines(&mut out, problem, spec, check, certified);
    out.push_str(&format!("# verdict: {}\n", verdict.as_str()));
    out
}

/// Full machine block plus human tail for the `loja` subcommand.
pub fn format_loja(problem: &str, spec: &ProblemSpec, loja: &LojaOutcome) -> String {
    let mut out = String::new();
    render_header(&mut out, problem, spec);
    render_loja(&mut out, loja);
    push_kv(&mut out, "verdict", verdict_word(&loja.verdict()));
    out.push_str("#\n");
    human_loja_lines(&mut out, loja);
    out.push_str(&format!("# verdict: {}\n", verdict_word(&loja.verdict())));
    out
}

/// Full machine block plus human tail for the `report` subcommand.
pub fn format_report(spec: &ProblemSpec, report: &Report) -> String {
    let mut out = String::new();
    render_header(&mut out, &report.problem, spec);
    render_check(&mut out, &report.check, report.certified);
    if let Some(loja) = &report.loja {
        render_loja(&mut out, loja);
    }
    match &report.anomaly {
        Some(msg) => push_kv(&mut out, "anomaly", msg),
        None => push_kv(&mut out, "anomaly", "none"),
    }
    push_kv(&mut out, "verdict", report.verdict.as_str());
    out.push_str("#\n");
    if let Some(msg) = &report.anomaly {
        out.push_str(&format!("# ANOMALY: {}\n", msg));
        out.push_str("#\n");
    }
    human_check_lines(&mut out, &report.problem, spec, &report.check, report.certified);
    if let Some(loja) = &report.loja {
        human_loja_lines(&mut out, loja);
    } else {
        out.push_str("# numeric: skipped, no sampling charts\n");
    }
    out.push_str(&format!("# verdict: {}\n", report.verdict.as_str()));
    out
}

/// Machine block for the `perturb` subcommand, ending with the
/// rationalized perturbed representation matrix.
pub fn format_perturb(
    problem: &str,
    spec: &ProblemSpec,
    point: &[f64],
    eps_scale: f64,
    lambda: &[f64],
    epsilons: &[f64],
    ver: &PairVerification,
) -> String {
    let mut out = String::new();
    render_header(&mut out, problem, spec);
    push_kv(&mut out, "point", point_tuple(point));
    push_kv(&mut out, "eps-scale", fmt_f64(eps_scale));
    let lam: Vec<String> = lambda.iter().map(|v| fmt_f64(*v)).collect();
    push_kv(&mut out, "lambda", format!("[{}]", lam.join(", ")));
    let eps: Vec<String> = epsilons.iter().map(|v| fmt_f64(*v)).collect();
    push_kv(&mut out, "epsilons", format!("[{}]", eps.join(", ")));
    push_kv(&mut out, "det.h-minus-v", fmt_f64(ver.det_h_minus_v));
    push_kv(&mut out, "det.h-minus-v.ok", ver.degenerate_ok.to_string());
    push_kv(&mut out, "det.h-minus-w", fmt_f64(ver.det_h_minus_w));
    push_kv(&mut out, "det.h-minus-w.expected", fmt_f64(ver.expected_det_w));
    push_kv(&mut out, "det.h-minus-w.ok", ver.regular_ok.to_string());
    push_kv(&mut out, "v.entry-bound.ok", ver.small_ok.to_string());
    push_kv(
        &mut out,
        "perturbed.identity",
        if ver.identity_ok { "holds" } else { "fails" },
    );
    // the H statement of the serialized perturbed problem, paste-ready
    let serialized = serialize_problem(&ver.perturbed);
    let h_line = serialized
        .lines()
        .find(|l| l.starts_with("H = "))
        .expect("serialized problem has an H statement");
    push_kv(&mut out, "perturbed.h", h_line.trim_start_matches("H = "));
    out
}

fn human_check_lines(
    out: &mut String,
    problem: &str,
    spec: &ProblemSpec,
    check: &CheckOutcome,
    certified: bool,
) {
    let y = match &spec.ydesc {
        YDesc::Origin => "origin".to_string(),
        YDesc::Charts(cs) => format!("{} chart(s)", cs.len()),
    };
    out.push_str(&format!(
        "# {}: n = {}, p = {}, distinguished set = {}\n",
        problem,
        spec.n(),
        spec.p(),
        y
    ));
    let idents = if check.identities_hold() { "clean" } else { "DEFECTIVE" };
    let ifit = match check.ifit.k {
        Some(k) => format!("m^{} inside K_f", k),
        None => format!("no power of m inside K_f up to {}", check.ifit.k_max),
    };
    let ijac = match check.ijac.k {
        Some(k) => format!("m^{} I inside J_f", k),
        None => format!("no power of m I inside J_f up to {}", check.ijac.k_max),
    };
    out.push_str(&format!(
        "# symbolic: identity suite {}; {}; {}; {}\n",
        idents,
        ifit,
        ijac,
        if certified { "certified" } else { "not certified" }
    ));
    if check.ifit.k.is_some() && !matches!(spec.ydesc, YDesc::Origin) {
        out.push_str(
            "# note: distinguished set given by charts, the power surrogate does not \
             exhaust flat functions there, so no symbolic certificate is claimed\n",
        );
    }
}

fn human_loja_lines(out: &mut String, loja: &LojaOutcome) {
    out.push_str(&format!(
        "# numeric: gradient exponent {} ({}, support {}), determinant exponent {} ({}, support {})\n",
        fmt_f64(loja.grad.alpha_hat),
        verdict_word(&loja.grad.verdict),
        loja.grad.support_points,
        fmt_f64(loja.df.alpha_hat),
        verdict_word(&loja.df.verdict),
        loja.df.support_points,
    ));
    for (name, e) in [("gradient", &loja.grad), ("determinant", &loja.df)] {
        if let Some(w) = &e.witness {
            out.push_str(&format!(
                "# {} witness: g = {} at distance {} from the zero set\n",
                name,
                fmt_f64(w.g),
                fmt_f64(w.r)
            ));
        }
        if let Some(note) = e.note {
            out.push_str(&format!("# {} note: {}\n", name, note));
        }
    }
}
