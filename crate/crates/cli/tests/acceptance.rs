//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use chronon_core::chronon::{
    effective_eigenvalue_exact, effective_eigenvalue_paper, effective_eigenvalue_paper_exact, evolve,
    irreversibility_defect, kaon_preset, StepRule, TwoStateConfig,
};
use chronon_core::dirac::{
    build_gamma_set, chirality_commutator_norm, compton_average, dirac_hamiltonian, dirac_residual, fit_amplitude,
    handedness_expectation, measure_angular_frequency, period_grid, plane_wave_spinors, verify_clifford,
    verify_coordinate_algebra, zitter_trajectory, Particle,
};
use chronon_core::numeric::{parse_rational, CMatrix, GaussianRational};
use chronon_core::snyder::{compton_special_case, SweepReport};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SNYDER_BUDGET: Duration = Duration::from_secs(10);
const TRAJECTORY_BUDGET: Duration = Duration::from_secs(5);
const TRAJECTORY_POINTS: usize = 1 << 14;

fn chronon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chronon"))
        .args(args)
        .env_remove("CHRONON_LOG")
        .output()
        .expect("chronon binary runs")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn ratio(rng: &mut StdRng) -> GaussianRational {
    GaussianRational::ratio(rng.gen_range(1..100), rng.gen_range(1..100))
}

fn snyder_grid() -> Outcome {
    let start = Instant::now();
    let out = chronon(&["verify-snyder", "--grid"]);
    let elapsed = start.elapsed();
    ensure(out.status.code() == Some(0), || format!("exit code {:?}", out.status.code()))?;
    let sweep: SweepReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(sweep.reports.len() == 125, || format!("{} tuples", sweep.reports.len()))?;
    let checks: usize = sweep.reports.iter().map(|r| r.relations.len()).sum();
    ensure(sweep.reports.iter().all(|r| r.relations.len() == 16), || "relation count is not 16".into())?;
    ensure(sweep.all_pass && sweep.failing.is_empty(), || format!("failing tuples: {:?}", sweep.failing))?;
    ensure(elapsed <= SNYDER_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} exact checks over 125 tuples in {:.2} s", elapsed.as_secs_f64()))
}

fn compton_doubling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..10 {
        let (m, c, hbar) = (ratio(&mut rng), ratio(&mut rng), ratio(&mut rng));
        let expected = &GaussianRational::from(2) * &(&GaussianRational::i() * &hbar);
        let value = compton_special_case(&m, &c, &hbar).map_err(|e| e.to_string())?;
        ensure(value == expected, || format!("m={m} c={c} hbar={hbar}: {value} != {expected}"))?;

        let args = ["eval-compton", "--m", &m.to_string(), "--c", &c.to_string(), "--hbar", &hbar.to_string()];
        let out = chronon(&args);
        ensure(out.status.code() == Some(0), || format!("{args:?} exit {:?}", out.status.code()))?;
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        ensure(json["coefficient"] == expected.to_string(), || format!("{args:?}: {}", json["coefficient"]))?;
        ensure(json["ratio_to_i_hbar"] == "2", || format!("{args:?}: ratio {}", json["ratio_to_i_hbar"]))?;
    }
    Ok("10 random rational (m, c, hbar) give exactly 2i hbar".into())
}

fn clifford() -> Outcome {
    let g = build_gamma_set();
    let clifford = verify_clifford(&g);
    ensure(clifford.relations.len() == 10, || format!("{} anticommutators", clifford.relations.len()))?;
    ensure(clifford.all_pass, || format!("failing: {:?}", clifford.failures().map(|e| &e.name).collect::<Vec<_>>()))?;
    let coords = verify_coordinate_algebra(&g);
    ensure(coords.all_pass, || format!("failing: {:?}", coords.failures().map(|e| &e.name).collect::<Vec<_>>()))?;
    for name in ["[X1,X2] = 2i Sigma3", "[X2,X3] = 2i Sigma1", "[X3,X1] = 2i Sigma2"] {
        ensure(coords.entry(name).is_some_and(|e| e.pass), || format!("missing or failing {name}"))?;
    }
    Ok("10 anticommutators and [X_i, X_j] = 2i eps_ijk Sigma_k hold exactly".into())
}

fn random_particle(rng: &mut StdRng) -> Particle {
    let p = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
    Particle::new(p, rng.gen_range(0.1..5.0), rng.gen_range(0.5..3.0)).unwrap()
}

fn mass_shell() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let (mut worst_shell, mut worst_residual) = (0.0_f64, 0.0_f64);
    for _ in 0..100 {
        let particle = random_particle(&mut rng);
        let h = dirac_hamiltonian(&particle);
        let e2 = particle.energy().powi(2);
        let diff = h.try_mul(&h).unwrap().try_sub(&CMatrix::identity(4).scale_real(e2)).unwrap();
        worst_shell = worst_shell.max(diff.max_abs() / e2);
        for wave in plane_wave_spinors(&particle) {
            worst_residual = worst_residual.max(dirac_residual(&wave.state, wave.energy));
        }
    }
    ensure(worst_shell <= 1e-12, || format!("H^2 relative error {worst_shell:e}"))?;
    ensure(worst_residual <= 1e-10, || format!("plane-wave residual {worst_residual:e}"))?;
    Ok(format!("100 draws: H^2 error {worst_shell:.1e}, residual {worst_residual:.1e}"))
}

fn zitterbewegung() -> Outcome {
    let mix = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0)];
    let cases = [
        (Particle::new([0.0; 3], 1.0, 1.0).unwrap(), 1.0),
        (Particle::new([0.0; 3], 0.8, 1.7).unwrap(), 0.6),
        (Particle::new([0.4, -0.3, 0.9], 1.3, 0.9).unwrap(), 0.7),
    ];
    let mut slowest = Duration::ZERO;
    for (particle, hbar) in cases {
        let times = period_grid(&particle, hbar, 8.0, TRAJECTORY_POINTS);
        let start = Instant::now();
        let traj = zitter_trajectory(&particle, hbar, mix, &times).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());

        let osc = traj.oscillation();
        let omega = measure_angular_frequency(&osc).map_err(|e| e.to_string())?;
        let expected_omega = 2.0 * particle.energy() / hbar;
        ensure(relative(omega, expected_omega) <= 1e-6, || format!("omega {omega} vs {expected_omega}"))?;
        let amplitude = fit_amplitude(&osc, omega);
        if particle.momentum_norm() == 0.0 {
            let expected = hbar / (2.0 * particle.mass * particle.c);
            ensure(relative(amplitude, expected) <= 1e-6, || format!("rest amplitude {amplitude} vs {expected}"))?;
        }

        let full = compton_average(&osc, traj.period).map_err(|e| e.to_string())?;
        let residual = full.values().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        ensure(residual <= 1e-10 * amplitude, || format!("full-window residual {residual:e} of {amplitude:e}"))?;
        let half = compton_average(&osc, traj.period / 2.0).map_err(|e| e.to_string())?;
        let half_ratio = fit_amplitude(&half, omega) / amplitude;
        ensure((half_ratio - 2.0 / PI).abs() <= 1e-6, || format!("half-window ratio {half_ratio}"))?;
    }
    ensure(slowest <= TRAJECTORY_BUDGET, || format!("trajectory took {slowest:?}"))?;
    Ok(format!("frequency, rest amplitude and window averaging hold; slowest trajectory {:.2} s", slowest.as_secs_f64()))
}

fn chronon_model() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..10 {
        let mut draw = || parse_rational(&format!("{}/{}", rng.gen_range(1..1000), rng.gen_range(1..1000))).unwrap();
        let (energy, hbar) = (draw(), draw());
        let tau = &hbar / &energy;
        let value = effective_eigenvalue_paper_exact(&energy, &tau, &hbar).map_err(|e| e.to_string())?;
        let expected = GaussianRational::new(energy.clone(), energy.clone());
        ensure(value == expected, || format!("E={energy}: {value} != E(1+i)"))?;
    }

    let mut worst_norm = 0.0_f64;
    for _ in 0..50 {
        let cfg = TwoStateConfig::new(
            rng.gen_range(0.1..2.0),
            rng.gen_range(0.01..1.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(1..200),
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        )
        .map_err(|e| e.to_string())?;
        let growth = 1.0 + cfg.theta().powi(2);
        let trace = evolve(&cfg, StepRule::Euler, false).map_err(|e| e.to_string())?;
        for s in &trace.steps {
            worst_norm = worst_norm.max(relative(s.norm2, growth.powi(s.step as i32)));
        }
    }
    ensure(worst_norm <= 1e-10, || format!("norm growth error {worst_norm:e}"))?;

    let mut worst_defect = 0.0_f64;
    for _ in 0..50 {
        let (energy, tau, hbar) = (rng.gen_range(0.1..2.0), rng.gen_range(1e-4..1.0), rng.gen_range(0.5..2.0));
        let theta = energy * tau / hbar;
        let defect = irreversibility_defect(energy, tau, hbar).map_err(|e| e.to_string())?;
        worst_defect = worst_defect.max(relative(defect, theta * theta));
    }
    ensure(worst_defect <= 1e-10, || format!("defect error {worst_defect:e}"))?;

    let kaon = kaon_preset();
    ensure(kaon.tau == 1e-10, || format!("kaon tau {}", kaon.tau))?;
    let out = chronon(&["preset", "kaon"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(json["tau"].as_f64() == Some(1e-10), || format!("preset kaon emits tau {}", json["tau"]))?;
    Ok(format!("E(1+i) exact; norm law {worst_norm:.1e}; defect law {worst_defect:.1e}; kaon tau = 1e-10 s"))
}

fn factor_two() -> Outcome {
    let (energy, hbar) = (1.7, 0.9);
    let tau = 1e-3 * hbar / energy;
    let mut ratios = Vec::new();
    for branch in [1, -1] {
        let r = effective_eigenvalue_exact(energy, tau, hbar, branch).im / effective_eigenvalue_paper(energy, tau, hbar).im;
        ratios.push(r);
    }
    for &r in &ratios {
        ensure((r - 0.5).abs() <= 1e-3, || format!("Im ratio is {r:.6}, magnitude 1/2 with opposite sign"))?;
    }
    Ok(format!("Im ratio {:.6} at tau = 1e-3 hbar/E", ratios[0]))
}

fn brute_force_chirality(particle: &Particle, helicity: i8) -> f64 {
    let g5 = build_gamma_set().gamma5;
    let wave = plane_wave_spinors(particle)
        .into_iter()
        .find(|w| w.energy > 0.0 && w.helicity == helicity)
        .expect("positive-energy plane wave");
    let v = wave.state.amplitudes;
    let applied = g5.apply(&v).unwrap();
    let num: Complex64 = v.iter().zip(&applied).map(|(a, b)| a.conj() * b).sum();
    num.re / v.iter().map(Complex64::norm_sqr).sum::<f64>()
}

fn handedness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let particle = random_particle(&mut rng);
        for helicity in [1, -1] {
            let value = handedness_expectation(&particle, helicity, 1).map_err(|e| e.to_string())?.chirality;
            let closed = f64::from(helicity) * particle.c * particle.momentum_norm() / particle.energy();
            worst = worst.max((value - closed).abs()).max((value - brute_force_chirality(&particle, helicity)).abs());
        }
    }
    ensure(worst <= 1e-10, || format!("<gamma5> error {worst:e}"))?;

    let (mass, c) = (1.3, 0.8);
    let expected = 2.0 * mass * c * c;
    let mut worst_norm = 0.0_f64;
    for _ in 0..10 {
        let p = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
        let norms = chirality_commutator_norm(&Particle::new(p, mass, c).unwrap()).map_err(|e| e.to_string())?;
        worst_norm = worst_norm.max(relative(norms.chirality, expected));
    }
    ensure(worst_norm <= 1e-10, || format!("commutator norm error {worst_norm:e}"))?;

    let massless = chirality_commutator_norm(&Particle::new([0.3, -1.2, 0.7], 0.0, 1.0).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(massless.chirality == 0.0, || format!("massless commutator {}", massless.chirality))?;
    Ok(format!("<gamma5> error {worst:.1e}; ||[H, gamma5]|| = 2mc^2 within {worst_norm:.1e}; massless exactly 0"))
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 6] = [
        &["verify-snyder", "--grid"],
        &["sim-zitter", "--preset", "electron", "--format", "csv"],
        &["sim-chronon", "--preset", "kaon"],
        &["sim-chronon", "--preset", "kaon", "--format", "csv"],
        &["probe-shift", "--format", "csv"],
        &["chirality", "--p", "0.3,-1,2"],
    ];
    for args in runs {
        let first = chronon(args);
        let second = chronon(args);
        ensure(first.status.code() == Some(0), || format!("{args:?} exit {:?}", first.status.code()))?;
        ensure(!first.stdout.is_empty() && first.stdout == second.stdout, || format!("{args:?} differs"))?;
    }
    Ok(format!("{} commands byte-identical across repeated runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Snyder relations on the rational grid", snyder_grid),
        ("Compton doubling", compton_doubling),
        ("Clifford representation", clifford),
        ("mass shell and plane waves", mass_shell),
        ("Zitterbewegung", zitterbewegung),
        ("chronon two-state model", chronon_model),
        ("factor-2 eigenvalue discrepancy", factor_two),
        ("handedness", handedness),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}: {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}: {name}: {reason}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
