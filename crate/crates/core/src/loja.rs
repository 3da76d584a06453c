//! Lojasiewicz exponent estimation by deterministic shell sampling.
//!
//! Two inequalities are probed:
//!
//! * `|grad f|` against the distance to `X union Y` in the ambient space,
//! * `|D_f|` against the distance to `Y`, sampled on `X` through its charts.
//!
//! Points are drawn on geometric shells with a seeded generator, the lower
//! envelope of `log g` against `log r` is fit by least squares over decade
//! representatives, and a failure verdict is returned only with a concrete
//! witness: a point where the residual is below [`RESIDUAL_CUTOFF`] while
//! the distance is safely above the oracle resolution.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::hessian::gradient;
use crate::poly::FloatPoly;
use crate::problem::{ChartMap, ProblemSpec, YDesc};

/// A sample counts as a failure witness only below this residual magnitude.
pub const RESIDUAL_CUTOFF: f64 = 1e-12;

/// Residuals below this are excluded from logarithmic fits.
const LOG_FLOOR: f64 = 1e-300;

/// Upper bound on the total number of cached grid images per chart.
const GRID_POINT_BUDGET: f64 = 1_000_000.0;

/// Sampling plan: geometric shells from `rmin` to `rmax`, `per_shell`
/// points each, distances resolved on `chart_grid` points per chart
/// parameter over `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub rmin: f64,
    pub rmax: f64,
    pub shells: usize,
    pub per_shell: usize,
    pub seed: u64,
    pub chart_grid: usize,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            rmin: 1e-4,
            rmax: 0.5,
            shells: 12,
            per_shell: 128,
            seed: 42,
            chart_grid: 512,
        }
    }
}

impl SamplePlan {
    pub fn validate(&self) -> Result<()> {
        if !(self.rmin > 0.0) {
            return Err(Error::BadPlan("rmin must be positive"));
        }
        if !(self.rmax > self.rmin) {
            return Err(Error::BadPlan("rmax must exceed rmin"));
        }
        if self.shells < 2 {
            return Err(Error::BadPlan("at least two shells are required"));
        }
        if self.per_shell == 0 {
            return Err(Error::BadPlan("per_shell must be positive"));
        }
        if self.chart_grid < 2 {
            return Err(Error::BadPlan("chart_grid must be at least 2"));
        }
        Ok(())
    }

    fn shell_radius(&self, s: usize) -> f64 {
        let t = s as f64 / (self.shells - 1) as f64;
        self.rmin * libm::pow(self.rmax / self.rmin, t)
    }
}

/// One chart of the target set with its cached grid images.
struct ChartGrid {
    maps: Vec<FloatPoly>,
    arity: usize,
    /// one image per grid point, flattened, ambient dimension stride
    images: Vec<f64>,
    /// parameter vectors matching `images`, arity stride
    params: Vec<f64>,
    spacing: f64,
}

/// Distance oracle for a union of parametrized charts, optionally with the
/// origin adjoined. Grid lookup plus a short coordinate descent; the true
/// distance is overestimated by at most [`DistOracle::grid_bound`].
pub struct DistOracle {
    ambient: usize,
    charts: Vec<ChartGrid>,
    includes_origin: bool,
    grid_bound: f64,
}

impl DistOracle {
    /// The origin alone; distances are exact and the bound is zero.
    pub fn origin(ambient: usize) -> Self {
        DistOracle { ambient, charts: Vec::new(), includes_origin: true, grid_bound: 0.0 }
    }

    /// Union of chart images, with the origin adjoined when
    /// `include_origin` is set. At least one chart or the origin must be
    /// present.
    pub fn build(
        ambient: usize,
        charts: &[ChartMap],
        include_origin: bool,
        chart_grid: usize,
    ) -> Result<Self> {
        if charts.is_empty() && !include_origin {
            return Err(Error::EmptyCharts);
        }
        let mut built = Vec::with_capacity(charts.len());
        let mut bound = 0.0f64;
        for chart in charts {
            let d = chart.arity;
            // cap the grid so d-dimensional charts stay within budget
            let per_dim = if d >= 2 {
                let cap = libm::pow(GRID_POINT_BUDGET, 1.0 / d as f64) as usize;
                chart_grid.min(cap.max(2))
            } else {
                chart_grid
            };
            let maps: Vec<FloatPoly> = chart.components.iter().map(|p| p.to_float()).collect();
            let h = 2.0 / (per_dim - 1) as f64;
            let total = per_dim.pow(d as u32);
            let mut images = Vec::with_capacity(total * ambient);
            let mut params = Vec::with_capacity(total * d);
            let mut t = vec![0.0f64; d];
            for idx in 0..total {
                let mut rem = idx;
                for k in 0..d {
                    let step = rem % per_dim;
                    rem /= per_dim;
                    t[k] = -1.0 + h * step as f64;
                }
                params.extend_from_slice(&t);
                for m in &maps {
                    images.push(m.eval(&t));
                }
            }
            // largest adjacent finite-difference slope of the chart map
            let mut lhat = 0.0f64;
            for idx in 0..total {
                let mut rem = idx;
                let mut stride = 1;
                for _k in 0..d {
                    let step = rem % per_dim;
                    rem /= per_dim;
                    if step + 1 < per_dim {
                        let jdx = idx + stride;
                        let mut dd = 0.0;
                        for c in 0..ambient {
                            let diff = images[jdx * ambient + c] - images[idx * ambient + c];
                            dd += diff * diff;
                        }
                        let slope = libm::sqrt(dd) / h;
                        if slope > lhat {
                            lhat = slope;
                        }
                    }
                    stride *= per_dim;
                }
            }
            let chart_bound = lhat * h * libm::sqrt(d as f64) / 2.0;
            if chart_bound > bound {
                bound = chart_bound;
            }
            built.push(ChartGrid { maps, arity: d, images, params, spacing: h });
        }
        Ok(DistOracle { ambient, charts: built, includes_origin: include_origin, grid_bound: bound })
    }

    /// Overestimation bound of [`Self::dist`] relative to the true
    /// distance to the chart images over `[-1, 1]^d`.
    pub fn grid_bound(&self) -> f64 {
        self.grid_bound
    }

    /// Distance from `x` to the target set (never underestimating by more
    /// than descent can recover; see [`Self::grid_bound`]).
    pub fn dist(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.ambient);
        let mut best = if self.includes_origin { norm2(x) } else { f64::INFINITY };
        for chart in &self.charts {
            let d = self.chart_dist(chart, x);
            if d < best {
                best = d;
            }
        }
        best
    }

    fn chart_dist(&self, chart: &ChartGrid, x: &[f64]) -> f64 {
        let amb = self.ambient;
        let total = chart.images.len() / amb;
        let mut best = f64::INFINITY;
        let mut best_idx = 0;
        for idx in 0..total {
            let mut dd = 0.0;
            for c in 0..amb {
                let diff = x[c] - chart.images[idx * amb + c];
                dd += diff * diff;
            }
            if dd < best {
                best = dd;
                best_idx = idx;
            }
        }
        let start = &chart.params[best_idx * chart.arity..(best_idx + 1) * chart.arity];
        let obj = |t: &[f64]| {
            let mut dd = 0.0;
            for (c, m) in chart.maps.iter().enumerate() {
                let diff = x[c] - m.eval(t);
                dd += diff * diff;
            }
            libm::sqrt(dd)
        };
        let refined = coordinate_descent(&obj, start, chart.spacing, 20, Some((-1.0, 1.0)));
        obj(&refined)
    }
}

fn norm2(x: &[f64]) -> f64 {
    let mut s = 0.0;
    for &v in x {
        s += v * v;
    }
    libm::sqrt(s)
}

/// Greedy per-coordinate minimization: each pass tries `+-step` in every
/// coordinate and keeps improvements; the step halves after a pass with
/// no improvement.
fn coordinate_descent(
    obj: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    step0: f64,
    passes: usize,
    clamp: Option<(f64, f64)>,
) -> Vec<f64> {
    let mut x = start.to_vec();
    let mut best = obj(&x);
    let mut step = step0;
    for _ in 0..passes {
        let mut improved = false;
        for i in 0..x.len() {
            for sgn in [1.0f64, -1.0] {
                let old = x[i];
                let mut cand = old + sgn * step;
                if let Some((lo, hi)) = clamp {
                    cand = cand.clamp(lo, hi);
                }
                x[i] = cand;
                let v = obj(&x);
                if v < best {
                    best = v;
                    improved = true;
                } else {
                    x[i] = old;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    x
}

/// Coordinate descent constrained to the sphere of the given radius:
/// every trial move is renormalized before evaluation, and the step
/// halves every pass. The geometric schedule matters: renormalization
/// turns coarse moves into slow rotations that would otherwise keep
/// registering improvements and starve the fine steps. A residual that
/// truly vanishes somewhere at this distance scale is driven below the
/// witness cutoff without letting the point collapse toward the origin.
fn sphere_descent(
    obj: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    radius: f64,
    step0: f64,
    passes: usize,
) -> Vec<f64> {
    let mut x = start.to_vec();
    let n = norm2(&x);
    if n > 1e-300 {
        for c in x.iter_mut() {
            *c *= radius / n;
        }
    }
    let mut best = obj(&x);
    let mut step = step0;
    for _ in 0..passes {
        for i in 0..x.len() {
            for sgn in [1.0f64, -1.0] {
                let mut cand = x.clone();
                cand[i] += sgn * step;
                let n = norm2(&cand);
                if n < 1e-300 {
                    continue;
                }
                for c in cand.iter_mut() {
                    *c *= radius / n;
                }
                let v = obj(&cand);
                if v < best {
                    best = v;
                    x = cand;
                }
            }
        }
        step *= 0.5;
    }
    x
}

/// Uniform in `[0, 1)` from the top 53 bits of the generator.
fn next_unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Standard normal vector via the trigonometric Box-Muller transform.
fn gauss_vec(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(d);
    while out.len() < d {
        let u1 = 1.0 - next_unit(rng);
        let u2 = next_unit(rng);
        let rad = libm::sqrt(-2.0 * libm::log(u1));
        let ang = 2.0 * core::f64::consts::PI * u2;
        out.push(rad * libm::cos(ang));
        if out.len() < d {
            out.push(rad * libm::sin(ang));
        }
    }
    out
}

/// Unit direction; falls back to the first axis on a degenerate draw.
fn unit_dir(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    for _ in 0..16 {
        let v = gauss_vec(rng, d);
        let n = norm2(&v);
        if n > 1e-12 {
            return v.iter().map(|c| c / n).collect();
        }
    }
    let mut e = vec![0.0; d];
    e[0] = 1.0;
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LojaVerdict {
    Holds,
    Fails,
    Inconclusive,
}

/// A concrete point contradicting the inequality: residual below
/// [`RESIDUAL_CUTOFF`] at a distance the oracle resolves as positive.
#[derive(Debug, Clone)]
pub struct FailWitness {
    pub point: Vec<f64>,
    pub g: f64,
    pub r: f64,
}

/// Outcome of one exponent estimate.
#[derive(Debug, Clone)]
pub struct LojaEstimate {
    /// Fitted exponent, clamped to be nonnegative; zero unless the fit ran.
    pub alpha_hat: f64,
    /// Largest `log C` consistent with every usable sample (natural log).
    pub log_c_hat: f64,
    /// Number of decade representatives behind the fit.
    pub support_points: usize,
    /// Smallest residual magnitude over all samples.
    pub residual_floor: f64,
    /// Smallest residual among samples resolved off the target set.
    pub min_g_off: Option<f64>,
    /// Distance resolution of the oracle used.
    pub grid_bound: f64,
    pub verdict: LojaVerdict,
    pub witness: Option<FailWitness>,
    pub note: Option<&'static str>,
}

struct Sample {
    shell: usize,
    point: Vec<f64>,
    g: f64,
    r: f64,
}

fn fail_threshold(grid_bound: f64, point: &[f64]) -> f64 {
    let rel = 1e-9 * (1.0 + norm2(point));
    let guard = 100.0 * grid_bound;
    if guard > rel {
        guard
    } else {
        rel
    }
}

fn is_fail(s: &Sample, grid_bound: f64) -> bool {
    s.g < RESIDUAL_CUTOFF && s.r > fail_threshold(grid_bound, &s.point)
}

/// Shared tail: failure scan, envelope extraction, decade binning, fit.
/// `trivial_holds` grants a positive verdict when every sample sits within
/// the distance resolution (the containment is then vacuous).
fn conclude(samples: Vec<Sample>, grid_bound: f64, trivial_holds: bool) -> LojaEstimate {
    let residual_floor = samples.iter().map(|s| s.g).fold(f64::INFINITY, f64::min);
    let min_g_off = samples
        .iter()
        .filter(|s| s.r > grid_bound)
        .map(|s| s.g)
        .fold(f64::INFINITY, f64::min);
    let min_g_off = if min_g_off.is_finite() { Some(min_g_off) } else { None };
    let base = LojaEstimate {
        alpha_hat: 0.0,
        log_c_hat: 0.0,
        support_points: 0,
        residual_floor,
        min_g_off,
        grid_bound,
        verdict: LojaVerdict::Inconclusive,
        witness: None,
        note: None,
    };

    // a witness short-circuits the fit; keep the farthest qualifying point
    let mut witness: Option<&Sample> = None;
    for s in &samples {
        if is_fail(s, grid_bound) && witness.map_or(true, |w| s.r > w.r) {
            witness = Some(s);
        }
    }
    if let Some(w) = witness {
        return LojaEstimate {
            verdict: LojaVerdict::Fails,
            witness: Some(FailWitness { point: w.point.clone(), g: w.g, r: w.r }),
            ..base
        };
    }

    let usable: Vec<&Sample> = samples.iter().filter(|s| s.r > grid_bound).collect();
    if usable.is_empty() {
        if trivial_holds {
            return LojaEstimate {
                verdict: LojaVerdict::Holds,
                note: Some("all samples within distance resolution; containment is vacuous"),
                ..base
            };
        }
        return LojaEstimate {
            note: Some("no sample resolved off the target set"),
            ..base
        };
    }

    // lower envelope: smallest residual per shell, then per distance decade
    let nshells = samples.iter().map(|s| s.shell).max().unwrap_or(0) + 1;
    let mut per_shell: Vec<Option<&Sample>> = vec![None; nshells];
    for s in &usable {
        if s.g < LOG_FLOOR {
            continue;
        }
        let slot = &mut per_shell[s.shell];
        if slot.map_or(true, |cur| s.g < cur.g) {
            *slot = Some(s);
        }
    }
    let mut decades: Vec<(i32, &Sample)> = Vec::new();
    for s in per_shell.into_iter().flatten() {
        let key = libm::floor(libm::log10(s.r)) as i32;
        match decades.iter_mut().find(|(k, _)| *k == key) {
            Some((_, cur)) => {
                if s.g < cur.g {
                    *cur = s;
                }
            }
            None => decades.push((key, s)),
        }
    }
    if decades.len() < 2 {
        return LojaEstimate {
            note: Some("fewer than two distance decades covered"),
            ..base
        };
    }

    let pts: Vec<(f64, f64)> =
        decades.iter().map(|(_, s)| (libm::log(s.r), libm::log(s.g))).collect();
    let m = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in &pts {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx < 1e-12 {
        return LojaEstimate {
            note: Some("degenerate radius spread"),
            ..base
        };
    }
    let alpha_hat = (sxy / sxx).max(0.0);
    let log_c_hat = usable
        .iter()
        .filter(|s| s.g >= LOG_FLOOR)
        .map(|s| libm::log(s.g) - alpha_hat * libm::log(s.r))
        .fold(f64::INFINITY, f64::min);
    LojaEstimate {
        alpha_hat,
        log_c_hat,
        support_points: decades.len(),
        verdict: LojaVerdict::Holds,
        ..base
    }
}

/// Estimate the exponent of `|grad f|` against the distance to
/// `X union Y`, sampling ambient shells around the origin.
///
/// Each shell's smallest residual, and its smallest residual among points
/// already resolved off the target set, are sharpened by a descent along
/// the sampling sphere before the failure scan: random shells alone
/// rarely land close enough to a genuinely degenerate locus to cross the
/// witness cutoff, and an unconstrained descent would slide down the
/// residual all the way into the target set instead.
pub fn estimate_gradient_exponent(
    spec: &ProblemSpec,
    plan: &SamplePlan,
) -> Result<LojaEstimate> {
    plan.validate()?;
    let n = spec.n();
    if spec.xcharts.is_empty() {
        return Err(Error::EmptyCharts);
    }
    let mut charts: Vec<ChartMap> = spec.xcharts.clone();
    let include_origin = match &spec.ydesc {
        YDesc::Origin => true,
        YDesc::Charts(ys) => {
            charts.extend(ys.iter().cloned());
            false
        }
    };
    let oracle = DistOracle::build(n, &charts, include_origin, plan.chart_grid)?;
    let grads: Vec<FloatPoly> = gradient(spec)?.iter().map(|p| p.to_float()).collect();
    let g_at = |x: &[f64]| {
        let mut s = 0.0;
        for gp in &grads {
            let v = gp.eval(x);
            s += v * v;
        }
        libm::sqrt(s)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut samples: Vec<Sample> = Vec::with_capacity(plan.shells * plan.per_shell);
    for s in 0..plan.shells {
        let radius = plan.shell_radius(s);
        for _ in 0..plan.per_shell {
            let dir = unit_dir(&mut rng, n);
            let point: Vec<f64> = dir.iter().map(|c| c * radius).collect();
            let g = g_at(&point);
            let r = oracle.dist(&point);
            samples.push(Sample { shell: s, point, g, r });
        }
    }

    // witness refinement: descend the residual from each shell's best
    // candidates and admit the endpoints as ordinary samples
    let gb = oracle.grid_bound();
    let mut refined: Vec<Sample> = Vec::new();
    for s in 0..plan.shells {
        let radius = plan.shell_radius(s);
        let shell: Vec<&Sample> = samples.iter().filter(|q| q.shell == s).collect();
        let best_overall = shell
            .iter()
            .min_by(|a, b| a.g.partial_cmp(&b.g).unwrap_or(core::cmp::Ordering::Equal));
        let best_far = shell
            .iter()
            .filter(|q| q.r > fail_threshold(gb, &q.point))
            .min_by(|a, b| a.g.partial_cmp(&b.g).unwrap_or(core::cmp::Ordering::Equal));
        let mut seeds: Vec<&Sample> = Vec::new();
        if let Some(b) = best_overall {
            seeds.push(b);
        }
        if let Some(b) = best_far {
            if !core::ptr::eq(*b, seeds[0]) {
                seeds.push(b);
            }
        }
        for seed_sample in seeds {
            let endpoint =
                sphere_descent(&|x: &[f64]| g_at(x), &seed_sample.point, radius, radius / 8.0, 80);
            let g = g_at(&endpoint);
            let r = oracle.dist(&endpoint);
            refined.push(Sample { shell: s, point: endpoint, g, r });
        }
    }
    samples.extend(refined);

    Ok(conclude(samples, gb, false))
}

/// Estimate the exponent of `|D_f|` against the distance to `Y`, sampling
/// on `X` through its charts.
///
/// No descent pass runs here: along `X` the determinant scales like a
/// power of the distance, so minimizing it walks into the oracle's blind
/// spot near `Y` and produces spurious witnesses instead of real ones.
pub fn estimate_df_exponent(spec: &ProblemSpec, plan: &SamplePlan) -> Result<LojaEstimate> {
    plan.validate()?;
    let n = spec.n();
    if spec.xcharts.is_empty() {
        return Err(Error::EmptyCharts);
    }
    let oracle = match &spec.ydesc {
        YDesc::Origin => DistOracle::origin(n),
        YDesc::Charts(ys) => DistOracle::build(n, ys, false, plan.chart_grid)?,
    };
    let det = spec.h.det()?.to_float();
    let xmaps: Vec<Vec<FloatPoly>> = spec
        .xcharts
        .iter()
        .map(|c| c.components.iter().map(|p| p.to_float()).collect())
        .collect();
    let arities: Vec<usize> = spec.xcharts.iter().map(|c| c.arity).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut samples: Vec<Sample> = Vec::with_capacity(plan.shells * plan.per_shell);
    for s in 0..plan.shells {
        let radius = plan.shell_radius(s);
        for i in 0..plan.per_shell {
            let which = i % xmaps.len();
            let d = arities[which];
            let dir = unit_dir(&mut rng, d);
            let t: Vec<f64> = dir.iter().map(|c| (c * radius).clamp(-1.0, 1.0)).collect();
            let point: Vec<f64> = xmaps[which].iter().map(|m| m.eval(&t)).collect();
            let g = libm::fabs(det.eval(&point));
            let r = oracle.dist(&point);
            samples.push(Sample { shell: s, point, g, r });
        }
    }

    Ok(conclude(samples, oracle.grid_bound(), true))
}

/// Render a float for stable reporting (shortest round-trip form).
pub fn fmt_f64(v: f64) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let _ = write!(s, "{}", v);
    s
}
