//! Orchestration: the symbolic certification pass, the numeric
//! estimation pass, and the fusion of their verdicts.

use infdet_core::error::{Error, Result};
use infdet_core::fitting::{
    build_lambda, jf_generators, verify_dol, verify_mudet, verify_psi_power_grad,
    verify_sigma_contract, verify_v_in_kf, CheckStatus, DolOutcome, MudetOutcome, SigmaContract,
    MINOR_ENUMERATION_CAP,
};
use infdet_core::groebner::{groebner, power_certificate, PowerCertificate};
use infdet_core::hessian::{check_hess_identity, HessIdentity};
use infdet_core::loja::{
    estimate_df_exponent, estimate_gradient_exponent, LojaEstimate, LojaVerdict, SamplePlan,
};
use infdet_core::{ProblemSpec, YDesc};

/// Default exponent bound for the power-membership searches.
pub const DEFAULT_K_MAX: u32 = 8;

/// Everything the symbolic pass establishes about one problem.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub hess: HessIdentity,
    pub sigma: SigmaContract,
    pub dol: DolOutcome,
    /// One entry per strictly increasing choice of `p` variable columns.
    pub mudet: Vec<(Vec<usize>, MudetOutcome)>,
    pub psi_power: CheckStatus,
    pub v_in_kf: CheckStatus,
    pub kf_gen_count: usize,
    pub kf_gb_size: usize,
    pub kf_unit_ideal: bool,
    pub ifit: PowerCertificate,
    pub ijac: PowerCertificate,
    pub k_max: u32,
}

impl CheckOutcome {
    /// True iff every exact identity that must hold for a consistent
    /// problem did hold. A failure here means the input is defective,
    /// not that the germ fails to be determined.
    pub fn identities_hold(&self) -> bool {
        self.hess.holds
            && self.sigma.holds
            && self.dol.holds
            && self.mudet.iter().all(|(_, m)| m.holds)
            && !matches!(self.psi_power, CheckStatus::Fails { .. })
            && !matches!(self.v_in_kf, CheckStatus::Fails { .. })
    }

    /// True iff the symbolic pass alone certifies infinite determinacy:
    /// the power membership succeeded, the distinguished set is the
    /// origin (so the power surrogate really exhausts flat functions),
    /// and the identity suite is clean. Polynomial membership implies
    /// germ membership, so a positive answer is sound; the converse
    /// direction is not decided here.
    pub fn certified(&self, spec: &ProblemSpec) -> bool {
        self.ifit.k.is_some() && spec.ydesc == YDesc::Origin && self.identities_hold()
    }
}

/// All maximal column choices, in lexicographic order.
fn column_subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that can still move
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - p + i {
                cur[i] += 1;
                for j in i + 1..p {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Runs the full symbolic pass: the representation identity, the column
/// contract, both ideal-theoretic inclusions on every column choice, and
/// the two power-membership searches.
pub fn run_check(spec: &ProblemSpec, k_max: u32) -> Result<CheckOutcome> {
    let n = spec.n();
    let p = spec.p();
    let hess = check_hess_identity(spec)?;
    let fd = build_lambda(spec)?;
    let sigma = verify_sigma_contract(spec, &fd)?;
    let jf = jf_generators(spec)?;
    let jf_gb = groebner(n, &jf)?;
    let dol = verify_dol(spec, &fd, &jf_gb)?;
    let subsets = binomial(n, p);
    if subsets > MINOR_ENUMERATION_CAP {
        return Err(Error::SizeCap { requested: subsets, limit: MINOR_ENUMERATION_CAP });
    }
    let psi_gb = groebner(n, &spec.psi)?;
    let mut mudet = Vec::with_capacity(subsets);
    for cols in column_subsets(n, p) {
        let outcome = verify_mudet(spec, &fd, &cols, &psi_gb)?;
        mudet.push((cols, outcome));
    }
    let kf_gb = groebner(n, &fd.kf_gens)?;
    let psi_power = verify_psi_power_grad(spec, &kf_gb)?;
    let v_in_kf = verify_v_in_kf(spec, &kf_gb)?;
    let ifit = power_certificate(&kf_gb, k_max, &[])?;
    let ijac = power_certificate(&jf_gb, k_max, &spec.psi)?;
    Ok(CheckOutcome {
        hess,
        sigma,
        dol,
        mudet,
        psi_power,
        v_in_kf,
        kf_gen_count: fd.kf_gens.len(),
        kf_gb_size: kf_gb.gens().len(),
        kf_unit_ideal: kf_gb.is_unit_ideal(),
        ifit,
        ijac,
        k_max,
    })
}

/// Both numeric estimates plus their joint verdict.
#[derive(Debug, Clone)]
pub struct LojaOutcome {
    pub plan: SamplePlan,
    pub grad: LojaEstimate,
    pub df: LojaEstimate,
}

impl LojaOutcome {
    /// Joint verdict: the numeric side supports determinacy only when
    /// both estimates hold; a single failure is a failure, and anything
    /// else is inconclusive.
    pub fn verdict(&self) -> LojaVerdict {
        match (&self.grad.verdict, &self.df.verdict) {
            (LojaVerdict::Holds, LojaVerdict::Holds) => LojaVerdict::Holds,
            (LojaVerdict::Fails, _) | (_, LojaVerdict::Fails) => LojaVerdict::Fails,
            _ => LojaVerdict::Inconclusive,
        }
    }
}

/// Runs both regularity estimates under one sampling plan.
pub fn run_loja(spec: &ProblemSpec, plan: &SamplePlan) -> Result<LojaOutcome> {
    plan.validate()?;
    let grad = estimate_gradient_exponent(spec, plan)?;
    let df = estimate_df_exponent(spec, plan)?;
    Ok(LojaOutcome { plan: plan.clone(), grad, df })
}

/// Final verdict of the fused report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CertifiedSufficient,
    NumericalEvidence,
    NotDetermined,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::CertifiedSufficient => "infinitely-determined (certified, sufficient)",
            Verdict::NumericalEvidence => "infinitely-determined (numerical evidence)",
            Verdict::NotDetermined => "not-determined (witness)",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Fused report: symbolic pass, numeric pass (when charts exist), the
/// combined verdict, and the anomaly flag.
#[derive(Debug, Clone)]
pub struct Report {
    pub problem: String,
    pub check: CheckOutcome,
    pub loja: Option<LojaOutcome>,
    pub certified: bool,
    pub verdict: Verdict,
    /// Set when the symbolic pass certifies but the numeric pass finds a
    /// failing sample. An inconclusive numeric pass is not disagreement.
    pub anomaly: Option<String>,
}

/// Combines the two passes. A symbolic certificate wins outright; absent
/// one, a clean numeric pass gives evidence, a failing sample gives a
/// concrete witness, and anything weaker stays inconclusive.
fn fuse(spec: &ProblemSpec, check: &CheckOutcome, loja: Option<&LojaOutcome>) -> (Verdict, Option<String>) {
    let certified = check.certified(spec);
    let numeric = loja.map(|l| l.verdict());
    if certified {
        let anomaly = match numeric {
            Some(LojaVerdict::Fails) => {
                let side = loja
                    .map(|l| {
                        if l.grad.verdict == LojaVerdict::Fails {
                            "gradient estimate"
                        } else {
                            "determinant estimate"
                        }
                    })
                    .unwrap_or("numeric estimate");
                Some(format!(
                    "symbolic pass certified but the {} found a failing sample; \
                     one of the passes is operating outside its validity regime",
                    side
                ))
            }
            _ => None,
        };
        return (Verdict::CertifiedSufficient, anomaly);
    }
    match numeric {
        Some(LojaVerdict::Holds) => (Verdict::NumericalEvidence, None),
        Some(LojaVerdict::Fails) => (Verdict::NotDetermined, None),
        _ => (Verdict::Inconclusive, None),
    }
}

/// Runs the symbolic and numeric passes concurrently and fuses their
/// verdicts. Problems without sampling charts skip the numeric pass.
pub fn run_report(
    spec: &ProblemSpec,
    problem: &str,
    k_max: u32,
    plan: &SamplePlan,
) -> Result<Report> {
    let (check, loja) = std::thread::scope(|scope| {
        let sym = scope.spawn(|| run_check(spec, k_max));
        let num = scope.spawn(|| {
            if spec.xcharts.is_empty() {
                Ok(None)
            } else {
                run_loja(spec, plan).map(Some)
            }
        });
        let check = sym.join().expect("symbolic pass panicked");
        let loja = num.join().expect("numeric pass panicked");
        (check, loja)
    });
    let check = check?;
    let loja = loja?;
    let certified = check.certified(spec);
    let (verdict, anomaly) = fuse(spec, &check, loja.as_ref());
    Ok(Report { problem: problem.to_string(), check, loja, certified, verdict, anomaly })
}
