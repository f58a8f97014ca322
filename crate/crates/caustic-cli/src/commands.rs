//! The five experiment commands. Each writes its artifacts plus a
//! `resolved_config.json` echo into the output directory; identical inputs
//! produce byte-identical outputs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use caustic_core::benchmarks::{optimal_secure_focusing, PencilSpec};
use caustic_core::channel::LinkBudget;
use caustic_core::evaluation::{field_map, robust_report};
use caustic_core::profiles::{synthesize, Scheme};
use caustic_core::validate::validate_scheme;
use caustic_core::{ArrayGeometry, Beamformer, Scenario};

use crate::config::{ResolvedConfig, ScenarioConfig};
use crate::output::{fmt_f64, unwrap_phases, wrap_phase, write_field_csv, write_field_pgm};
use crate::{classify, CliError};

fn create(out_dir: &Path, name: &str) -> Result<BufWriter<File>, CliError> {
    std::fs::create_dir_all(out_dir)?;
    Ok(BufWriter::new(File::create(out_dir.join(name))?))
}

/// Echo the post-override configuration so a run can be reproduced from its
/// artifacts alone.
pub fn write_config_echo(cfg: &ScenarioConfig, out_dir: &Path) -> Result<(), CliError> {
    let mut w = create(out_dir, "resolved_config.json")?;
    let text = serde_json::to_string_pretty(cfg)
        .map_err(|e| CliError::Config(format!("cannot serialize config echo: {e}")))?;
    w.write_all(text.as_bytes())?;
    w.write_all(b"\n")?;
    Ok(())
}

/// `profile`: per-element phases and labels of the configured scheme.
pub fn cmd_profile(resolved: &ResolvedConfig, out_dir: &Path) -> Result<(), CliError> {
    let scenario = &resolved.scenario;
    let (phases, wrapped, labels): (Vec<f64>, Vec<f64>, Vec<String>) = match resolved.scheme {
        Scheme::Eigen => {
            // No closed-form profile; report the weight phases, unwrapped
            // along the array.
            let f = synthesize(Scheme::Eigen, scenario, resolved.quadratic_a).map_err(classify)?;
            let wrapped: Vec<f64> = f.weights().iter().map(|w| w.arg()).collect();
            let unwrapped = unwrap_phases(&wrapped);
            let labels = vec!["FOCUSING".to_string(); wrapped.len()];
            (unwrapped, wrapped, labels)
        }
        scheme => {
            let profile = profile_for(scheme, resolved).map_err(classify)?;
            let wrapped = profile.phases().iter().map(|&p| wrap_phase(p)).collect();
            let labels = profile.labels().iter().map(|l| l.to_string()).collect();
            (profile.phases().to_vec(), wrapped, labels)
        }
    };
    let mut w = create(out_dir, "profile.csv")?;
    writeln!(
        w,
        "element_index,x_m,phase_rad_unwrapped,phase_rad_wrapped,label"
    )?;
    for (m, ((phi, wphi), label)) in phases.iter().zip(&wrapped).zip(&labels).enumerate() {
        writeln!(
            w,
            "{m},{},{},{},{label}",
            fmt_f64(scenario.array.element_x()[m]),
            fmt_f64(*phi),
            fmt_f64(*wphi),
        )?;
    }
    Ok(())
}

fn profile_for(
    scheme: Scheme,
    resolved: &ResolvedConfig,
) -> caustic_core::Result<caustic_core::PhaseProfile> {
    use caustic_core::profiles::*;
    let s = &resolved.scenario;
    match scheme {
        Scheme::Steering => steering_profile(steering_angle_toward(s.ue), &s.array, &s.wave),
        Scheme::Focusing => focusing_profile(s.ue, &s.array, &s.wave),
        Scheme::Quadratic => quadratic_caustic_profile(resolved.quadratic_a, &s.array, &s.wave),
        Scheme::Caustic => caustic_profile(s),
        Scheme::Proposed => piecewise_secure_profile(s),
        Scheme::Eigen => unreachable!("handled by the caller"),
    }
}

/// `field`: normalized power over the configured grid, as CSV and PGM.
pub fn cmd_field(resolved: &ResolvedConfig, out_dir: &Path) -> Result<(), CliError> {
    let f = synthesize(resolved.scheme, &resolved.scenario, resolved.quadratic_a)
        .map_err(classify)?;
    let map = field_map(&f, &resolved.scenario, &resolved.grid).map_err(classify)?;
    write_field_csv(create(out_dir, "field.csv")?, &map)?;
    write_field_pgm(create(out_dir, "field.pgm")?, &map)?;
    Ok(())
}

/// `sweep`: robustness report rows over a transmit-power range for each
/// requested scheme.
pub fn cmd_sweep(
    resolved: &ResolvedConfig,
    out_dir: &Path,
    p_min_dbm: f64,
    p_max_dbm: f64,
    steps: usize,
    schemes: &[Scheme],
) -> Result<(), CliError> {
    if !(p_min_dbm < p_max_dbm) {
        return Err(CliError::Config(format!(
            "sweep needs p_min < p_max, got {p_min_dbm} >= {p_max_dbm}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Config(format!("sweep needs steps >= 2, got {steps}")));
    }
    let mut w = create(out_dir, "report.csv")?;
    writeln!(w, "p_dbm,scheme,r_ue,r_e_mean,r_e_worst,r_s_mean,r_s_worst")?;
    let noise_dbm = 10.0 * resolved.scenario.budget.noise_power().log10() + 30.0;
    for i in 0..steps {
        let p_dbm = p_min_dbm + (p_max_dbm - p_min_dbm) * i as f64 / (steps - 1) as f64;
        let budget = LinkBudget::from_dbm(p_dbm, noise_dbm).map_err(classify)?;
        let scenario = Scenario::new(
            resolved.scenario.wave,
            resolved.scenario.array.clone(),
            resolved.scenario.ue,
            resolved.scenario.uncertainty,
            resolved.scenario.epsilon_margin,
            budget,
        )
        .map_err(classify)?;
        for &scheme in schemes {
            let f = synthesize(scheme, &scenario, resolved.quadratic_a).map_err(classify)?;
            let report = robust_report(&f, &scenario, &resolved.sampling).map_err(classify)?;
            writeln!(
                w,
                "{},{scheme},{},{},{},{},{}",
                fmt_f64(p_dbm),
                fmt_f64(report.r_ue),
                fmt_f64(report.r_e_mean),
                fmt_f64(report.r_e_worst),
                fmt_f64(report.r_s_mean),
                fmt_f64(report.r_s_worst),
            )?;
        }
    }
    Ok(())
}

/// `validate`: per-element departure-ray checks against the scheme's
/// geometric target, plus a summary row (index -1) with the max residuals.
pub fn cmd_validate(resolved: &ResolvedConfig, out_dir: &Path) -> Result<(), CliError> {
    let report = validate_scheme(resolved.scheme, &resolved.scenario, resolved.quadratic_a)
        .map_err(classify)?;
    let mut w = create(out_dir, "validate.csv")?;
    writeln!(
        w,
        "element_index,x_m,label,cos_analytic,cos_fd,angle_rad,residual_analytic,residual_fd,tol_analytic,tol_fd,pass"
    )?;
    for c in &report.checks {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            c.index,
            fmt_f64(c.x),
            c.label,
            fmt_f64(c.cos_analytic),
            fmt_f64(c.cos_fd),
            fmt_f64(c.angle_rad),
            fmt_f64(c.residual_analytic),
            fmt_f64(c.residual_fd),
            fmt_f64(c.tol_analytic),
            fmt_f64(c.tol_fd),
            u8::from(c.pass),
        )?;
    }
    writeln!(
        w,
        "-1,,SUMMARY,,,,{},{},,,{}",
        fmt_f64(report.max_residual_analytic),
        fmt_f64(report.max_residual_fd),
        u8::from(report.all_pass),
    )?;
    Ok(())
}

/// Synthesis closure used for timing: everything from the scenario to the
/// finished beamformer, matching what a transmitter would recompute.
fn timed_synthesis(scheme: Scheme, scenario: &Scenario, quadratic_a: f64) -> Beamformer {
    match scheme {
        Scheme::Eigen => {
            let spec = PencilSpec::from_scenario(scenario).expect("valid scenario");
            optimal_secure_focusing(&spec).expect("valid pencil").beamformer
        }
        s => synthesize(s, scenario, quadratic_a).expect("valid scenario"),
    }
}

fn time_scheme(
    scheme: Scheme,
    scenario: &Scenario,
    quadratic_a: f64,
    repeats: usize,
) -> (f64, f64) {
    let mut mean = 0.0;
    let mut min = f64::INFINITY;
    for _ in 0..repeats {
        let t0 = Instant::now();
        let f = timed_synthesis(scheme, scenario, quadratic_a);
        let dt = t0.elapsed().as_secs_f64();
        std::hint::black_box(f);
        mean += dt;
        min = min.min(dt);
    }
    (mean / repeats as f64, min)
}

fn with_elements(scenario: &Scenario, m: usize) -> Result<Scenario, CliError> {
    Scenario::new(
        scenario.wave,
        ArrayGeometry::centered(m, scenario.array.spacing()).map_err(classify)?,
        scenario.ue,
        scenario.uncertainty,
        scenario.epsilon_margin,
        scenario.budget,
    )
    .map_err(classify)
}

/// `bench`: wall-clock synthesis times per scheme at the configured array
/// size, plus the growth of the proposed and eigen schemes from M = 64 to
/// M = 256.
pub fn cmd_bench(
    resolved: &ResolvedConfig,
    out_dir: &Path,
    repeats: usize,
    schemes: &[Scheme],
) -> Result<(), CliError> {
    if repeats < 1 {
        return Err(CliError::Config(format!("bench needs repeats >= 1, got {repeats}")));
    }
    let mut w = create(out_dir, "timing.csv")?;
    writeln!(w, "metric,scheme,num_elements,repeats,value")?;
    let a = resolved.quadratic_a;
    for &scheme in schemes {
        let (mean, min) = time_scheme(scheme, &resolved.scenario, a, repeats);
        let m = resolved.scenario.array.num_elements();
        writeln!(w, "mean_seconds,{scheme},{m},{repeats},{}", fmt_f64(mean))?;
        writeln!(w, "min_seconds,{scheme},{m},{repeats},{}", fmt_f64(min))?;
    }
    for scheme in [Scheme::Proposed, Scheme::Eigen] {
        let mut means = [0.0f64; 2];
        for (slot, m) in [(0usize, 64usize), (1, 256)] {
            let scenario = with_elements(&resolved.scenario, m)?;
            let (mean, min) = time_scheme(scheme, &scenario, a, repeats);
            means[slot] = mean;
            writeln!(w, "mean_seconds,{scheme},{m},{repeats},{}", fmt_f64(mean))?;
            writeln!(w, "min_seconds,{scheme},{m},{repeats},{}", fmt_f64(min))?;
        }
        writeln!(
            w,
            "growth_ratio,{scheme},256,{repeats},{}",
            fmt_f64(means[1] / means[0])
        )?;
    }
    Ok(())
}
