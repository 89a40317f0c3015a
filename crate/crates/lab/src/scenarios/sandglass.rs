use umbilic_core::constructions::{
    closure_convergence, mirror_curvatures, perturbed_curvatures, refute_quasi_cmc, NeckPerturbation, Sandglass,
    SandglassSpec,
};
use umbilic_core::diagnostics::{
    check_alexandrov, diagram_wedge_analysis, CertConfig, Certificate, WedgeParams, WedgeVerdict,
};
use umbilic_core::surface::RotationalCurvature;

use super::{diagram_table, wedge_equivalence, Outcome};
use crate::config::SandglassScenario;
use crate::error::{invalid, Result};
use crate::output::CsvTable;

const AMPLITUDE_RESIDUAL_TOL: f64 = 1e-10;

pub(super) fn run(s: &SandglassScenario, cfg: &CertConfig) -> Result<Outcome> {
    if s.mus.iter().any(|m| !(0.0..1.0).contains(m)) {
        return Err(invalid("scenario.mus", "every mu must satisfy 0 <= mu < 1"));
    }
    if let Some(a) = s.amplitude {
        if !(a.is_finite() && a > 0.0) {
            return Err(invalid("scenario.amplitude", "must be positive and finite"));
        }
    }
    let spec = SandglassSpec::new(s.a, s.b, s.step)?;
    let sg = Sandglass::build(spec, s.amplitude)?;
    let mut out = Outcome::default();
    out.conventions.push(
        "profiles are parametrized by arc length from the south pole with outward normal; the unit sphere has kappa = 1"
            .into(),
    );
    out.artifact("sandglass", &sg);

    out.cert(
        Certificate::from_check(
            "sandglass/amplitude",
            sg.solve.residual.abs() <= AMPLITUDE_RESIDUAL_TOL,
            AMPLITUDE_RESIDUAL_TOL - sg.solve.residual.abs(),
            "Simpson value of the neck integral against pi/2 - a",
        )
        .with_value("amplitude", sg.solve.amplitude)
        .with_value("residual", sg.solve.residual),
    );

    let mut profile = CsvTable::new("profile.csv", &["s", "x", "z", "theta", "kappa"]);
    for p in &sg.full.samples {
        profile.push(vec![p.s, p.x, p.z, p.theta, p.kappa]);
    }
    out.tables.push(profile);

    let verified = sg.verify(cfg);
    let points = sg.points();
    let (certs, points) = match (verified, points) {
        (Ok(c), Ok(p)) => (c, p),
        (Err(e), _) | (_, Err(e)) => {
            // The profile reached the axis; only the integration checks remain meaningful.
            let mut certs = sg.checks.certificates();
            certs.push(Certificate::from_check("sandglass/curvatures", false, -1.0, e.to_string()));
            out.certificates.extend(certs);
            return Ok(out);
        }
    };
    out.certificates.extend(certs);

    out.cert(refute_quasi_cmc(&points, 1.0, &s.mus, cfg)?);
    let params = s.mus.iter().map(|&m| WedgeParams::from_mu(m, 1.0)).collect::<std::result::Result<Vec<_>, _>>()?;
    let (eq, _) = wedge_equivalence("sandglass/verdict-equivalence", &points, &params, cfg);
    out.cert(eq);

    let analysis = diagram_wedge_analysis(&points, 1.0, None, cfg)?;
    out.cert(
        Certificate::from_check(
            "sandglass/wedge-property-fails",
            analysis.verdict == WedgeVerdict::Fails,
            if analysis.verdict == WedgeVerdict::Fails { 0.0 } else { -1.0 },
            "observed slopes near (1, 1) leave every wedge of negative slopes",
        )
        .with_value("ratio_min", analysis.ratio_min.unwrap_or(f64::NAN))
        .with_value("ratio_max", analysis.ratio_max.unwrap_or(f64::NAN)),
    );
    out.artifact("diagram_analysis", &analysis);

    if let Some(eps) = s.perturbation {
        let pert = NeckPerturbation::centered(&sg.bump, eps)?;
        let lower = perturbed_curvatures(&sg.lower, &sg.bump, sg.amplitude, &pert)?;
        let full = mirror_curvatures(&lower, sg.lower.step);
        let pts: Vec<_> = full.iter().map(RotationalCurvature::to_point).collect();
        let mut c = check_alexandrov(&pts, 1.0, cfg);
        c.claim = "sandglass/perturbed-alexandrov".into();
        c.values.insert("amplitude".into(), eps);
        out.cert(c);
        out.artifact("perturbation", &pert);
    }

    if s.convergence {
        // Reported, not certified: the residual is already at roundoff.
        out.artifact("closure_convergence", &closure_convergence(&spec)?);
    }

    out.tables.push(diagram_table(&points));
    Ok(out)
}
