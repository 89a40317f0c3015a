use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::diagnostics::{check_alexandrov, check_quasi_cmc, CertConfig, Certificate, CertificateBuilder, Witness};
use crate::error::{out_of_range, Error, ProfileClause, Result};
use crate::numerics::{gauss_legendre8, rk4_step, simpson_samples};
use crate::surface::{rotational_curvatures, CurvaturePoint, Profile, ProfileSample, RotationalCurvature, DEFAULT_X_MIN_TOL};

pub const DEFAULT_A: f64 = 1.8;
pub const DEFAULT_B: f64 = 2.4;
pub const DEFAULT_STEP: f64 = 1e-4;
/// Simpson panels used for the neck integral of `κ`.
pub const SIMPSON_PANELS: usize = 10_000;
pub const CLOSURE_TOL: f64 = 1e-6;
pub const MAX_PERTURBATION: f64 = 1e-3;
pub const DEFAULT_PERTURBATION: f64 = 1e-5;
const BISECTION_REL_TOL: f64 = 1e-12;
const MAX_DOUBLINGS: usize = 200;

/// Neck parameters of the sandglass sphere: unit caps on `[0, a]`, a neck on
/// `(a, b)`, and the mirror image above `s = b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandglassSpec {
    pub a: f64,
    pub b: f64,
    pub step: f64,
}

impl Default for SandglassSpec {
    fn default() -> Self {
        Self { a: DEFAULT_A, b: DEFAULT_B, step: DEFAULT_STEP }
    }
}

impl SandglassSpec {
    pub fn new(a: f64, b: f64, step: f64) -> Result<Self> {
        validate_neck(a, b)?;
        if !(step > 0.0) || step > 0.1 * (b - a) {
            return Err(out_of_range("step", format!("expected 0 < step <= (b - a)/10, got {step}")));
        }
        Ok(Self { a, b, step })
    }

    pub fn bump(&self) -> BumpProfile {
        BumpProfile { a: self.a, b: self.b }
    }
}

fn validate_neck(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(out_of_range("neck", "a and b must be finite"));
    }
    if b <= a {
        return Err(out_of_range("neck", format!("empty neck: need a < b, got a = {a}, b = {b}")));
    }
    if !(a > FRAC_PI_2 && b < PI) {
        return Err(out_of_range("neck", format!("need pi/2 < a < b < pi, got a = {a}, b = {b}")));
    }
    if b >= a + a.sin() {
        return Err(out_of_range("neck", format!("need b < a + sin a = {}, got b = {b}", a + a.sin())));
    }
    Ok(())
}

/// `ψ(s) = exp(-1/(s - a) - 1/(b - s))` on `(a, b)`, zero elsewhere, and its
/// primitive `Φ(s) = ∫_a^s ψ`. Both ends are infinitely flat.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BumpProfile {
    pub a: f64,
    pub b: f64,
}

impl BumpProfile {
    pub fn psi(&self, s: f64) -> f64 {
        if s <= self.a || s >= self.b {
            0.0
        } else {
            (-1.0 / (s - self.a) - 1.0 / (self.b - s)).exp()
        }
    }

    /// `∫ ψ` over `[lo, hi] ∩ [a, b]` by one eight-point Gauss rule.
    fn piece(&self, lo: f64, hi: f64) -> f64 {
        let (lo, hi) = (lo.max(self.a), hi.min(self.b));
        if hi > lo {
            gauss_legendre8(|t| self.psi(t), lo, hi)
        } else {
            0.0
        }
    }

    /// `Φ` at increasing nodes, accumulated interval by interval.
    pub fn phi_table(&self, nodes: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(nodes.len());
        let mut acc = 0.0;
        let mut prev = self.a;
        for &s in nodes {
            if s > prev {
                acc += self.piece(prev, s);
                prev = s;
            }
            out.push(if s <= self.a { 0.0 } else { acc });
        }
        out
    }

    /// `Φ(s)` from scratch on panels of width at most `1e-3`.
    pub fn phi(&self, s: f64) -> f64 {
        let hi = s.min(self.b);
        if hi <= self.a {
            return 0.0;
        }
        let panels = ((hi - self.a) / 1e-3).ceil().max(1.0) as usize;
        let w = (hi - self.a) / panels as f64;
        (0..panels).map(|i| self.piece(self.a + i as f64 * w, self.a + (i + 1) as f64 * w)).sum()
    }

    /// `κ(s) = 1 - A Φ(s)`.
    pub fn kappa(&self, amplitude: f64, s: f64) -> f64 {
        1.0 - amplitude * self.phi(s)
    }

    /// `κ'(s) = -A ψ(s)`.
    pub fn kappa_prime(&self, amplitude: f64, s: f64) -> f64 {
        -amplitude * self.psi(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeSolve {
    pub amplitude: f64,
    /// Simpson value of `∫_a^b κ` minus the target `π/2 - a`.
    pub residual: f64,
    pub target: f64,
    pub iterations: usize,
    pub bracket_hi: f64,
    pub panels: usize,
}

/// Bisection for `A` with `∫_a^b (1 - A Φ) = π/2 - a`. The integral is
/// decreasing in `A` and exceeds the target at `A = 0`.
pub fn solve_bump_amplitude(a: f64, b: f64) -> Result<AmplitudeSolve> {
    validate_neck(a, b)?;
    let bump = BumpProfile { a, b };
    let n = 2 * SIMPSON_PANELS;
    let h = (b - a) / n as f64;
    let nodes: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
    let phi = bump.phi_table(&nodes);
    let target = FRAC_PI_2 - a;
    let residual = |amp: f64| {
        let kappa: Vec<f64> = phi.iter().map(|p| 1.0 - amp * p).collect();
        simpson_samples(&kappa, h) - target
    };
    let mut hi = 1.0;
    let mut doublings = 0;
    while residual(hi) > 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_DOUBLINGS {
            return Err(Error::NoBracket);
        }
    }
    let bracket_hi = hi;
    let mut lo = 0.0;
    let mut iterations = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BISECTION_REL_TOL * hi.max(1.0) || mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let amplitude = 0.5 * (lo + hi);
    Ok(AmplitudeSolve {
        amplitude,
        residual: residual(amplitude),
        target,
        iterations,
        bracket_hi,
        panels: SIMPSON_PANELS,
    })
}

/// Postcondition data of an integrated lower half.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileChecks {
    /// `θ(b) - π/2`.
    pub closure_residual: f64,
    pub theta_max: f64,
    pub theta_max_s: f64,
    /// Smallest `x` on `(0, b]`.
    pub x_min: f64,
    pub x_min_s: f64,
}

impl ProfileChecks {
    pub fn violations(&self) -> Vec<(ProfileClause, String)> {
        let mut v = Vec::new();
        if !(self.closure_residual.abs() <= CLOSURE_TOL) {
            v.push((
                ProfileClause::Closure,
                format!("|theta(b) - pi/2| = {:e} > {CLOSURE_TOL:e}", self.closure_residual.abs()),
            ));
        }
        if !(self.theta_max < PI) {
            v.push((
                ProfileClause::ThetaBelowPi,
                format!("theta = {} at s = {}", self.theta_max, self.theta_max_s),
            ));
        }
        if !(self.x_min > 0.0) {
            v.push((ProfileClause::XPositive, format!("x = {} at s = {}", self.x_min, self.x_min_s)));
        }
        v
    }

    pub fn certificates(&self) -> Vec<Certificate> {
        vec![
            Certificate::from_check(
                ProfileClause::Closure.claim_id(),
                self.closure_residual.abs() <= CLOSURE_TOL,
                CLOSURE_TOL - self.closure_residual.abs(),
                "tangent at the end of the neck is vertical",
            )
            .with_value("closure_residual", self.closure_residual),
            Certificate::from_check(
                ProfileClause::ThetaBelowPi.claim_id(),
                self.theta_max < PI,
                PI - self.theta_max,
                format!("max theta at s = {}", self.theta_max_s),
            )
            .with_value("theta_max", self.theta_max),
            Certificate::from_check(
                ProfileClause::XPositive.claim_id(),
                self.x_min > 0.0,
                self.x_min,
                format!("min x on (0, b] at s = {}", self.x_min_s),
            )
            .with_value("x_min", self.x_min),
        ]
    }
}

/// Integrates the lower half on `[0, b]` without enforcing postconditions.
///
/// The grid is `s_i = i h` with `h = b / round(b / step)`. Samples with
/// `s ≤ a` are the exact unit cap; the rest come from classical RK4 on
/// `(x, z, θ)' = (cos θ, sin θ, κ(s))`.
pub fn integrate_profile_unchecked(bump: &BumpProfile, amplitude: f64, step: f64) -> Result<(Profile, ProfileChecks)> {
    let b = bump.b;
    if !(step > 0.0) || !amplitude.is_finite() {
        return Err(Error::InvalidInput(format!("step {step} and amplitude {amplitude} must be finite, step positive")));
    }
    let n = (b / step).round().max(1.0) as usize;
    let h = b / n as f64;
    let half = 0.5 * h;
    let half_nodes: Vec<f64> = (0..=2 * n).map(|j| j as f64 * half).collect();
    let kappa: Vec<f64> = bump
        .phi_table(&half_nodes)
        .into_iter()
        .map(|p| 1.0 - amplitude * p)
        .collect();
    let rhs = |s: f64, y: &[f64; 3]| {
        let j = ((s / half).round() as usize).min(2 * n);
        [y[2].cos(), y[2].sin(), kappa[j]]
    };

    let mut samples = Vec::with_capacity(n + 1);
    let mut state = [0.0; 3];
    for i in 0..=n {
        let s = i as f64 * h;
        if s <= bump.a {
            state = [s.sin(), 1.0 - s.cos(), s];
        } else {
            state = rk4_step(&rhs, (i - 1) as f64 * h, &state, h);
        }
        samples.push(ProfileSample { s, x: state[0], z: state[1], theta: state[2], kappa: kappa[2 * i] });
    }

    let mut checks = ProfileChecks {
        closure_residual: samples[n].theta - FRAC_PI_2,
        theta_max: f64::NEG_INFINITY,
        theta_max_s: 0.0,
        x_min: f64::INFINITY,
        x_min_s: 0.0,
    };
    for p in &samples {
        if p.theta > checks.theta_max || p.theta.is_nan() {
            checks.theta_max = p.theta;
            checks.theta_max_s = p.s;
        }
        if p.s > 0.0 && (p.x < checks.x_min || p.x.is_nan()) {
            checks.x_min = p.x;
            checks.x_min_s = p.s;
        }
    }
    Ok((Profile::new(samples, h)?, checks))
}

/// Integrates the lower half and enforces closure, `θ < π` and `x > 0`.
pub fn integrate_profile(bump: &BumpProfile, amplitude: f64, step: f64) -> Result<Profile> {
    let (profile, checks) = integrate_profile_unchecked(bump, amplitude, step)?;
    if let Some((clause, detail)) = checks.violations().into_iter().next() {
        return Err(Error::PostconditionViolated { clause, detail });
    }
    Ok(profile)
}

/// Extends a lower half on `[0, b]` to the whole meridian on `[0, 2b]` by
/// reflecting in the horizontal line through the end point.
pub fn mirror_profile(lower: &Profile) -> Result<Profile> {
    let n = lower.samples.len() - 1;
    let end = lower.samples[n];
    let mut samples = lower.samples.clone();
    for k in 1..=n {
        let p = lower.samples[n - k];
        samples.push(ProfileSample {
            s: (n + k) as f64 * lower.step,
            x: p.x,
            z: 2.0 * end.z - p.z,
            theta: PI - p.theta,
            kappa: p.kappa,
        });
    }
    Profile::new(samples, lower.step)
}

/// Mirror image of lower-half curvatures, as produced by [`mirror_profile`].
pub fn mirror_curvatures(lower: &[RotationalCurvature], step: f64) -> Vec<RotationalCurvature> {
    let n = lower.len() - 1;
    let mut out = lower.to_vec();
    out.extend((1..=n).map(|k| RotationalCurvature { s: (n + k) as f64 * step, ..lower[n - k] }));
    out
}

/// Normal displacement `η(s) = ε g((s - center)/half_width)` of the neck with
/// `g(u) = e · exp(-1/(1 - u²))`, so `max η = ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeckPerturbation {
    pub amplitude: f64,
    pub center: f64,
    pub half_width: f64,
}

impl NeckPerturbation {
    /// Centred on the neck with half-width `(b - a)/4`.
    pub fn centered(bump: &BumpProfile, amplitude: f64) -> Result<Self> {
        if !(amplitude.abs() <= MAX_PERTURBATION) {
            return Err(out_of_range(
                "perturbation",
                format!("|amplitude| must not exceed {MAX_PERTURBATION}, got {amplitude}"),
            ));
        }
        Ok(Self { amplitude, center: 0.5 * (bump.a + bump.b), half_width: 0.25 * (bump.b - bump.a) })
    }

    /// `(η, η', η'')` at arc length `s`.
    pub fn eta(&self, s: f64) -> (f64, f64, f64) {
        let u = (s - self.center) / self.half_width;
        let v = 1.0 - u * u;
        if v <= 0.0 {
            return (0.0, 0.0, 0.0);
        }
        let g = std::f64::consts::E * (-1.0 / v).exp();
        let g1 = g * (-2.0 * u / (v * v));
        let g2 = g * (4.0 * u * u / v.powi(4) - 2.0 / (v * v) - 8.0 * u * u / v.powi(3));
        let w = self.half_width;
        (self.amplitude * g, self.amplitude * g1 / w, self.amplitude * g2 / (w * w))
    }
}

/// Curvatures of the lower half after moving each point by `η N`, with
/// `N = (-sin θ, cos θ)`. Curvatures are evaluated at the original
/// parameter values.
pub fn perturbed_curvatures(
    lower: &Profile,
    bump: &BumpProfile,
    amplitude: f64,
    pert: &NeckPerturbation,
) -> Result<Vec<RotationalCurvature>> {
    let base = rotational_curvatures(lower, DEFAULT_X_MIN_TOL)?;
    lower
        .samples
        .iter()
        .zip(base)
        .map(|(p, rc)| {
            let (eta, d1, d2) = pert.eta(p.s);
            if eta == 0.0 && d1 == 0.0 && d2 == 0.0 {
                return Ok(rc);
            }
            let k = p.kappa;
            let dk = bump.kappa_prime(amplitude, p.s);
            let (pt, qn) = (1.0 - eta * k, d1);
            let (rt, sn) = (-(d1 * k + eta * dk) - d1 * k, (1.0 - eta * k) * k + d2);
            let speed2 = pt * pt + qn * qn;
            let meridian = (pt * sn - qn * rt) / (speed2 * speed2.sqrt());
            let x_new = p.x - eta * p.theta.sin();
            if !(x_new > 0.0) {
                return Err(Error::AxisSingularity { s: p.s, x: x_new });
            }
            let sin_new = (pt * p.theta.sin() + qn * p.theta.cos()) / speed2.sqrt();
            Ok(RotationalCurvature { s: p.s, meridian, parallel: sin_new / x_new, axis_adjacent: false })
        })
        .collect()
}

/// Step-halving study of the closure residual `θ(b) - π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureConvergence {
    pub step: f64,
    pub residual: f64,
    pub residual_half_step: f64,
    /// `|residual| / |residual_half_step|`.
    pub ratio: f64,
}

pub fn closure_convergence(spec: &SandglassSpec) -> Result<ClosureConvergence> {
    let solve = solve_bump_amplitude(spec.a, spec.b)?;
    let bump = spec.bump();
    let (_, c1) = integrate_profile_unchecked(&bump, solve.amplitude, spec.step)?;
    let (_, c2) = integrate_profile_unchecked(&bump, solve.amplitude, 0.5 * spec.step)?;
    Ok(ClosureConvergence {
        step: spec.step,
        residual: c1.closure_residual,
        residual_half_step: c2.closure_residual,
        ratio: c1.closure_residual.abs() / c2.closure_residual.abs(),
    })
}

/// A built sandglass sphere: solved amplitude, integrated lower half and the
/// mirrored full meridian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sandglass {
    pub spec: SandglassSpec,
    pub bump: BumpProfile,
    pub solve: AmplitudeSolve,
    /// Amplitude actually integrated; differs from the solved one only when
    /// overridden.
    pub amplitude: f64,
    #[serde(skip)]
    pub lower: Profile,
    #[serde(skip)]
    pub full: Profile,
    pub checks: ProfileChecks,
}

impl Sandglass {
    pub fn build(spec: SandglassSpec, amplitude_override: Option<f64>) -> Result<Self> {
        let spec = SandglassSpec::new(spec.a, spec.b, spec.step)?;
        let solve = solve_bump_amplitude(spec.a, spec.b)?;
        let amplitude = amplitude_override.unwrap_or(solve.amplitude);
        let bump = spec.bump();
        let (lower, checks) = integrate_profile_unchecked(&bump, amplitude, spec.step)?;
        let full = mirror_profile(&lower)?;
        Ok(Self { spec, bump, solve, amplitude, lower, full, checks })
    }

    pub fn curvatures(&self) -> Result<Vec<RotationalCurvature>> {
        rotational_curvatures(&self.full, DEFAULT_X_MIN_TOL)
    }

    pub fn points(&self) -> Result<Vec<CurvaturePoint>> {
        Ok(self.curvatures()?.iter().map(RotationalCurvature::to_point).collect())
    }

    pub fn verify(&self, cfg: &CertConfig) -> Result<Vec<Certificate>> {
        sandglass_verify(&self.lower, &self.bump, &self.checks, cfg)
    }
}

/// Certificates for the sandglass claims: the postconditions of the
/// integration, `κ ≤ 1` with `κ < 1` on the neck, `sin θ / x > 1` and
/// `x κ - sin θ < 0` on the neck, unit curvatures on the cap, the Alexandrov
/// inequality with `c = 1` on the whole sphere, and mirror symmetry.
///
/// On the neck the strict inequalities are resolved only where the quantity
/// exceeds `eps_cert`. Because the bump is flat at `a`, a leading run of
/// unresolved samples next to `a` is accepted and reported; unresolved
/// samples anywhere else fail.
pub fn sandglass_verify(
    lower: &Profile,
    bump: &BumpProfile,
    checks: &ProfileChecks,
    cfg: &CertConfig,
) -> Result<Vec<Certificate>> {
    let full = mirror_profile(lower)?;
    let lower_rc = rotational_curvatures(lower, DEFAULT_X_MIN_TOL)?;
    let full_rc = rotational_curvatures(&full, DEFAULT_X_MIN_TOL)?;
    let neck = |s: f64| s > bump.a && s < bump.b;
    let eps = cfg.eps_cert;

    let mut certs = checks.certificates();
    for c in &mut certs {
        if !checks.violations().is_empty() {
            c.notes.push("integration postconditions failed upstream".into());
        }
    }

    let mut kappa = NeckStrict::new("sandglass/kappa-below-one", eps, bump.a);
    let mut parallel = NeckStrict::new("sandglass/parallel-above-one", eps, bump.a);
    let mut mono = NeckStrict::new("sandglass/monotonicity", eps, bump.a);
    let mut cap = CertificateBuilder::new("sandglass/cap-umbilic", eps);
    for (p, rc) in lower.samples.iter().zip(&lower_rc) {
        let kp = Some([rc.parallel, rc.meridian]);
        if neck(p.s) {
            kappa.push(p.s, kp, 1.0 - p.kappa);
            parallel.push(p.s, kp, rc.parallel - 1.0);
            mono.push(p.s, kp, p.theta.sin() - p.x * p.kappa);
        } else {
            kappa.b.observe(Witness::at([p.s, 0.0], kp, 1.0 - p.kappa));
            if p.s <= bump.a {
                let dev = (rc.parallel - 1.0).abs().max((rc.meridian - 1.0).abs());
                cap.observe(Witness::at([p.s, 0.0], kp, -dev));
            }
        }
    }
    certs.push(kappa.finish());
    certs.push(parallel.finish());
    certs.push(mono.finish());
    certs.push(cap.finish());

    let points: Vec<CurvaturePoint> = full_rc.iter().map(RotationalCurvature::to_point).collect();
    let mut alex = check_alexandrov(&points, 1.0, cfg);
    alex.claim = "sandglass/alexandrov".into();
    certs.push(alex);

    // The reflected angle π - θ is rounded to within half an ulp of π, which
    // moves sin θ / x by up to that much over x; allow for it near the pole.
    let n = lower.samples.len() - 1;
    let mut mirror = CertificateBuilder::new("sandglass/mirror-symmetry", eps);
    for k in 1..=n {
        let (lo, hi) = (&full_rc[n - k], &full_rc[n + k]);
        let scale = 1.0 + lo.meridian.abs().max(lo.parallel.abs());
        let x = full.samples[n + k].x;
        let allowance = if x > 0.0 { f64::EPSILON * PI / x } else { 0.0 };
        let diff = (lo.meridian - hi.meridian).abs().max((lo.parallel - hi.parallel).abs());
        let ok = diff <= allowance + eps * scale;
        mirror.observe_with(Witness::at([hi.s, 0.0], Some([hi.parallel, hi.meridian]), -diff / scale), ok);
    }
    certs.push(mirror.finish());
    Ok(certs)
}

/// Strict positivity on the open neck with the flat-end allowance.
struct NeckStrict {
    b: CertificateBuilder,
    eps: f64,
    a: f64,
    resolved: usize,
    unresolved: usize,
    unresolved_end: f64,
    max_value: f64,
}

impl NeckStrict {
    fn new(claim: &str, eps: f64, a: f64) -> Self {
        Self {
            b: CertificateBuilder::new(claim, eps),
            eps,
            a,
            resolved: 0,
            unresolved: 0,
            unresolved_end: a,
            max_value: f64::NEG_INFINITY,
        }
    }

    fn push(&mut self, s: f64, kappa: Option<[f64; 2]>, value: f64) {
        self.max_value = self.max_value.max(value);
        let w = Witness::at([s, 0.0], kappa, value);
        if value >= self.eps {
            self.resolved += 1;
            self.b.observe_with(w, true);
        } else if self.resolved == 0 && value >= -self.eps {
            self.unresolved += 1;
            self.unresolved_end = s;
            self.b.observe_with(w, true);
        } else {
            let margin = if value >= -self.eps { value - self.eps } else { value };
            self.b.observe_with(Witness { margin, ..w }, false);
        }
    }

    fn finish(mut self) -> Certificate {
        if self.resolved == 0 {
            let margin = if self.max_value.is_finite() { self.max_value - self.eps } else { -1.0 };
            self.b.observe_with(Witness::scalar(margin, "no resolved neck samples"), false);
        }
        self.b.value("resolved_samples", self.resolved as f64);
        self.b.value("unresolved_samples", self.unresolved as f64);
        self.b.value("unresolved_length", self.unresolved_end - self.a);
        self.b.finish()
    }
}

/// Holds when the quasi-CMC check with `c` fails, with a witness, for every
/// `μ` in `mus`.
pub fn refute_quasi_cmc(points: &[CurvaturePoint], c: f64, mus: &[f64], cfg: &CertConfig) -> Result<Certificate> {
    let mut b = CertificateBuilder::new("sandglass/not-quasi-cmc", 0.0);
    for &mu in mus {
        let cert = check_quasi_cmc(points, c, mu, cfg)?;
        let min = cert.min_margin.unwrap_or(f64::INFINITY);
        let failed = !cert.holds() && cert.witness.is_some();
        let w = cert.witness.clone().unwrap_or(Witness::scalar(f64::NAN, "no samples"));
        b.value(format!("min_margin_mu_{mu}"), min);
        b.observe_with(
            Witness {
                margin: -min - cfg.eps_cert,
                detail: Some(format!("mu = {mu}")),
                ..w
            },
            failed,
        );
    }
    Ok(b.finish())
}
