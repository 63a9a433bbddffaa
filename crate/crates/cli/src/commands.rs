use chronon_core::chronon::{effective_eigenvalue_paper, evolve, irreversibility_defect, kaon_preset};
use chronon_core::dirac::{
    build_gamma_set, chirality_commutator_norm, compton_average, handedness_expectation, period_grid,
    shift_generator_probe, verify_clifford, verify_coordinate_algebra, zitter_trajectory,
};
use chronon_core::numeric::{format_float, GaussianRational};
use chronon_core::report::RelationReport;
use chronon_core::snyder::{
    build_snyder_ops, compton_commutator_coefficient, compton_special_case, default_grid, parameter_sweep_verify_with,
    symbolic_compton_coefficient, verify_ops, SnyderError, SnyderOps, SnyderParams,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::presets::{self, ParticleConstants, NEUTRINO_NOTE};
use crate::{CliError, Command, ComptonInput, Format, PresetName, RunConfig, ZitterJob};

/// Rendered data plus the verification verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
    /// Names of failed checks, for the diagnostic line.
    pub failures: Vec<String>,
}

impl Output {
    fn data(text: String) -> Self {
        Self {
            text,
            passed: true,
            failures: Vec::new(),
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_csv = |e: csv::Error| CliError::invalid("output", e.to_string());
    w.write_record(header).map_err(to_csv)?;
    for row in rows {
        w.write_record(row).map_err(to_csv)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::invalid("output", e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Flat `key,value` CSV for scalar results; nested values are JSON-encoded.
fn key_value_csv(value: &Value) -> Result<String, CliError> {
    let map = value.as_object().expect("scalar outputs are objects");
    csv_rows(
        &["key", "value"],
        map.iter().map(|(k, v)| {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            [k.clone(), text]
        }),
    )
}

fn render_value(cfg: &RunConfig, value: &Value) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => Ok(pretty(value)),
        Format::Csv => key_value_csv(value),
    }
}

fn report_output(cfg: &RunConfig, report: &RelationReport) -> Result<Output, CliError> {
    let text = match cfg.format {
        Format::Json => pretty(report),
        Format::Csv => csv_rows(
            &["name", "lhs", "rhs", "pass"],
            report
                .relations
                .iter()
                .map(|r| [r.name.clone(), r.lhs.clone(), r.rhs.clone(), r.pass.to_string()]),
        )?,
    };
    Ok(Output {
        text,
        passed: report.all_pass,
        failures: report.failures().map(|r| r.name.clone()).collect(),
    })
}

fn build_ops(params: &SnyderParams, corrupt_t: bool) -> Result<SnyderOps, SnyderError> {
    let ops = build_snyder_ops(params)?;
    Ok(if corrupt_t { ops.with_time_sign_flipped() } else { ops })
}

fn verify_snyder(cfg: &RunConfig, params: &SnyderParams, grid: bool, corrupt_t: bool) -> Result<Output, CliError> {
    if !grid {
        let report = verify_ops(params, &build_ops(params, corrupt_t)?)?;
        return report_output(cfg, &report);
    }
    let sweep = parameter_sweep_verify_with(&default_grid(), |p| build_ops(p, corrupt_t))?;
    let text = match cfg.format {
        Format::Json => pretty(&sweep),
        Format::Csv => csv_rows(
            &["a", "hbar", "c", "name", "pass"],
            sweep.reports.iter().flat_map(|r| {
                r.relations.iter().map(move |e| {
                    [
                        r.params["a"].clone(),
                        r.params["hbar"].clone(),
                        r.params["c"].clone(),
                        e.name.clone(),
                        e.pass.to_string(),
                    ]
                })
            }),
        )?,
    };
    let failures = sweep
        .failing
        .iter()
        .map(|p| format!("a={} hbar={} c={}", p["a"], p["hbar"], p["c"]))
        .collect();
    Ok(Output {
        text,
        passed: sweep.all_pass,
        failures,
    })
}

fn eval_compton(cfg: &RunConfig, input: &ComptonInput) -> Result<Output, CliError> {
    let (value, passed, check) = match input {
        ComptonInput::Direct { a, p, hbar } => {
            let coefficient = compton_commutator_coefficient(a, p, hbar)?;
            let params = SnyderParams::new(a.clone(), hbar.clone(), GaussianRational::from(1))?;
            let symbolic = symbolic_compton_coefficient(&params, p)?;
            let agrees = symbolic == coefficient;
            let value = json!({
                "a": a.to_string(),
                "p": p.to_string(),
                "hbar": hbar.to_string(),
                "coefficient": coefficient.to_string(),
                "ratio_to_i_hbar": coefficient.checked_div(&(&GaussianRational::i() * hbar))?.to_string(),
                "symbolic_agrees": agrees,
            });
            (value, agrees, "symbolic_agrees")
        }
        ComptonInput::Special { m, c, hbar } => {
            let coefficient = compton_special_case(m, c, hbar)?;
            let i_hbar = &GaussianRational::i() * hbar;
            let doubled = coefficient == &GaussianRational::from(2) * &i_hbar;
            let mc = m * c;
            let value = json!({
                "m": m.to_string(),
                "c": c.to_string(),
                "hbar": hbar.to_string(),
                "a": hbar.checked_div(&mc)?.to_string(),
                "p": mc.to_string(),
                "coefficient": coefficient.to_string(),
                "ratio_to_i_hbar": coefficient.checked_div(&i_hbar)?.to_string(),
                "doubled": doubled,
            });
            (value, doubled, "doubled")
        }
    };
    Ok(Output {
        text: render_value(cfg, &value)?,
        passed,
        failures: if passed { Vec::new() } else { vec![check.to_string()] },
    })
}

fn sim_zitter(cfg: &RunConfig, job: &ZitterJob) -> Result<Output, CliError> {
    let points = (job.periods * job.points_per_period as f64).round() as usize + 1;
    let times = period_grid(&job.particle, job.hbar, job.periods, points);
    let mix = [Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2];
    let trajectory = zitter_trajectory(&job.particle, job.hbar, mix, &times)?;
    let series = match job.window_periods {
        Some(w) => compton_average(&trajectory.series, w * trajectory.period)?,
        None => trajectory.series.clone(),
    };
    log::info!("sim-zitter: {} samples, period {:e}", series.len(), trajectory.period);
    let text = match cfg.format {
        Format::Csv => series.to_csv_string(),
        Format::Json => {
            let column = series.kind().column();
            let mut value = json!({
                "kind": column,
                "preset": job.preset,
                "m": job.particle.mass,
                "c": job.particle.c,
                "hbar": job.hbar,
                "p": job.particle.momentum,
                "energy": job.particle.energy(),
                "angular_frequency": 2.0 * job.particle.energy() / job.hbar,
                "period": trajectory.period,
                "drift_velocity": trajectory.drift_velocity,
                "window": job.window_periods.map(|w| w * trajectory.period),
                "t": series.times(),
            });
            value[column] = json!(series.values());
            if job.preset == Some("neutrino") {
                value["note"] = json!(NEUTRINO_NOTE);
            }
            pretty(&value)
        }
    };
    Ok(Output::data(text))
}

fn particle_preset(name: &str, k: ParticleConstants) -> Value {
    let rest_energy = k.mass * k.c * k.c;
    json!({
        "name": name,
        "m": k.mass,
        "c": k.c,
        "hbar": k.hbar,
        "rest_energy": rest_energy,
        "compton_wavelength": k.hbar / (k.mass * k.c),
        "chronon": k.hbar / rest_energy,
        "zitter_angular_frequency": 2.0 * rest_energy / k.hbar,
        "zitter_amplitude": k.hbar / (2.0 * k.mass * k.c),
    })
}

fn preset(cfg: &RunConfig, name: PresetName) -> Result<Output, CliError> {
    let value = match name {
        PresetName::Electron => particle_preset("electron", presets::electron()),
        PresetName::Neutrino => {
            let mut v = particle_preset("neutrino", presets::neutrino());
            v["note"] = json!(NEUTRINO_NOTE);
            v
        }
        PresetName::Kaon => {
            let k = kaon_preset();
            let eps = effective_eigenvalue_paper(k.energy, k.tau, k.hbar);
            json!({
                "name": "kaon",
                "E": k.energy,
                "hbar": k.hbar,
                "E_over_hbar": k.energy / k.hbar,
                "tau": k.tau,
                "theta": k.theta(),
                "n_steps": k.n_steps,
                "eps_paper": { "re": eps.re, "im": eps.im },
                "irreversibility_defect": irreversibility_defect(k.energy, k.tau, k.hbar)?,
            })
        }
    };
    Ok(Output::data(render_value(cfg, &value)?))
}

/// Computes and renders the data for a configuration without writing it.
pub fn execute(cfg: &RunConfig) -> Result<Output, CliError> {
    match &cfg.command {
        Command::VerifySnyder { params, grid, corrupt_t } => verify_snyder(cfg, params, *grid, *corrupt_t),
        Command::VerifyClifford => report_output(cfg, &verify_clifford(&build_gamma_set())),
        Command::VerifyCoordinates => report_output(cfg, &verify_coordinate_algebra(&build_gamma_set())),
        Command::EvalCompton(input) => eval_compton(cfg, input),
        Command::SimZitter(job) => sim_zitter(cfg, job),
        Command::SimChronon {
            config,
            rule,
            renormalize,
        } => {
            let trace = evolve(config, *rule, *renormalize)?;
            let text = match cfg.format {
                Format::Csv => trace.to_csv_string(),
                Format::Json => {
                    let mut s = trace.to_json();
                    s.push('\n');
                    s
                }
            };
            Ok(Output::data(text))
        }
        Command::ProbeShift { momentum, axis, epsilon } => {
            let probe = shift_generator_probe(*momentum, *axis, *epsilon)?;
            let text = match cfg.format {
                Format::Csv => csv_rows(
                    &["label", "re", "im"],
                    probe
                        .decomposition
                        .iter()
                        .map(|c| [c.label.clone(), format_float(c.re), format_float(c.im)]),
                )?,
                Format::Json => pretty(&json!({
                    "p": momentum,
                    "axis": axis,
                    "epsilon": epsilon,
                    "candidate": probe.candidate.to_compact_string(),
                    "decomposition": probe.decomposition,
                    "residual": probe.residual,
                })),
            };
            Ok(Output::data(text))
        }
        Command::Chirality {
            particle,
            helicity,
            branch,
        } => {
            let norms = chirality_commutator_norm(particle)?;
            let mut value = json!({
                "p": particle.momentum,
                "m": particle.mass,
                "c": particle.c,
                "chirality_commutator_norm": norms.chirality,
                "expected_chirality_commutator_norm": 2.0 * particle.rest_energy(),
                "helicity_commutator_norm": norms.helicity,
                "helicity": helicity,
                "branch": branch,
            });
            if particle.momentum_norm() > 0.0 {
                let h = handedness_expectation(particle, *helicity, *branch)?;
                value["gamma5_expectation"] = json!(h.chirality);
                value["gamma5_closed_form"] =
                    json!(f64::from(helicity * branch) * particle.c * particle.momentum_norm() / particle.energy());
                value["component_ratio"] = json!(h.component_ratio);
            }
            Ok(Output::data(render_value(cfg, &value)?))
        }
        Command::Preset(name) => preset(cfg, *name),
    }
}
