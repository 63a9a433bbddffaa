//! Zitterbewegung of the free Dirac particle and its removal by averaging
//! over a Compton-scale window.
//!
//! With `H² = E²` every operator splits into a part commuting with `H` and a
//! part anticommuting with it. For the velocity `cα_k` this gives
//!
//! ```text
//! x_k(t) = x̄_k + c² p_k H⁻¹ t + Z_k e^{−2iHt/ħ},
//! Z_k    = (iħc/2)(α_k − c p_k H⁻¹) H⁻¹
//! ```
//!
//! so the oscillating term has angular frequency `2E/ħ`.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numeric::{format_float, mat_exp_energy, CMatrix};

use super::gamma::build_gamma_set;
use super::spinor::{hamiltonian_with, inner, plane_wave_spinors, Particle};
use super::DiracError;

/// Velocity and Zitterbewegung parts of the position operator, per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionSplit {
    /// `c² p_k H⁻¹`, a velocity.
    pub velocity: [CMatrix; 3],
    /// `(iħc/2)(α_k − c p_k H⁻¹) H⁻¹`, a length.
    pub zitter: [CMatrix; 3],
}

pub fn position_operator_split(particle: &Particle, hbar: f64) -> PositionSplit {
    let g = build_gamma_set();
    let h = hamiltonian_with(&g, particle);
    let e2 = particle.energy().powi(2);
    let h_inv = h.scale_real(1.0 / e2);
    let c = particle.c;
    let velocity = std::array::from_fn(|k| h_inv.scale_real(c * c * particle.momentum[k]));
    let zitter = std::array::from_fn(|k| {
        let bracket = g.alpha[k]
            .try_sub(&h_inv.scale_real(c * particle.momentum[k]))
            .expect("4x4");
        bracket
            .try_mul(&h_inv)
            .expect("4x4")
            .scale(Complex64::new(0.0, hbar * c / 2.0))
    });
    PositionSplit { velocity, zitter }
}

/// Which quantity a [`TrajectorySeries`] holds; selects the CSV header.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesKind {
    /// `t,x_mean`
    Mean,
    /// `t,x_mean_avg`
    Averaged,
}

impl SeriesKind {
    pub fn column(self) -> &'static str {
        match self {
            SeriesKind::Mean => "x_mean",
            SeriesKind::Averaged => "x_mean_avg",
        }
    }
}

/// Position expectation sampled on a strictly increasing time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectorySeries {
    times: Vec<f64>,
    values: Vec<f64>,
    kind: SeriesKind,
}

impl TrajectorySeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>, kind: SeriesKind) -> Result<Self, DiracError> {
        if times.len() != values.len() {
            return Err(DiracError::InvalidSeries(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        check_increasing(&times)?;
        Ok(Self { times, values, kind })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn span(&self) -> f64 {
        match (self.times.first(), self.times.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }

    /// Subtracts `velocity·t` from every sample.
    pub fn detrended(&self, velocity: f64) -> Self {
        Self {
            times: self.times.clone(),
            values: self.times.iter().zip(&self.values).map(|(t, x)| x - velocity * t).collect(),
            kind: self.kind,
        }
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), DiracError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", self.kind.column()])?;
        for (t, x) in self.times.iter().zip(&self.values) {
            w.write_record([format_float(*t), format_float(*x)])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is ASCII")
    }

    pub fn read_csv<R: io::Read>(input: R) -> Result<Self, DiracError> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers()?.clone();
        let kind = match headers.iter().collect::<Vec<_>>().as_slice() {
            ["t", "x_mean"] => SeriesKind::Mean,
            ["t", "x_mean_avg"] => SeriesKind::Averaged,
            other => return Err(DiracError::InvalidSeries(format!("unexpected header {other:?}"))),
        };
        let mut times = Vec::new();
        let mut values = Vec::new();
        for record in r.records() {
            let record = record?;
            let parse = |i: usize| -> Result<f64, DiracError> {
                record
                    .get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| DiracError::InvalidSeries(format!("bad row {record:?}")))
            };
            times.push(parse(0)?);
            values.push(parse(1)?);
        }
        Self::new(times, values, kind)
    }
}

fn check_increasing(times: &[f64]) -> Result<(), DiracError> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(DiracError::InvalidSeries("times must be finite".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(DiracError::InvalidSeries("times must be strictly increasing".into()));
    }
    Ok(())
}

/// A simulated trajectory together with the drift needed to isolate its
/// oscillating part.
#[derive(Clone, Debug, PartialEq)]
pub struct ZitterTrajectory {
    pub series: TrajectorySeries,
    /// `⟨c² p_1 H⁻¹⟩`, the uniform-motion velocity along axis 1.
    pub drift_velocity: f64,
    /// Zitterbewegung period `πħ/E`.
    pub period: f64,
}

impl ZitterTrajectory {
    /// Samples minus the uniform drift.
    pub fn oscillation(&self) -> TrajectorySeries {
        self.series.detrended(self.drift_velocity)
    }
}

/// Minimum samples per Zitterbewegung period accepted by [`zitter_trajectory`].
pub const MIN_POINTS_PER_PERIOD: f64 = 8.0;

/// `⟨x_1(t)⟩` for the state `mix[0]·u₊ + mix[1]·u₋`.
///
/// `u₊` is the positive-energy, positive-helicity plane wave. `u₋` is the
/// normalized negative-energy projection of `α_1 u₊`: the negative-energy
/// state the velocity operator couples `u₊` to. If that projection vanishes
/// (massless motion along axis 1) the negative-energy, positive-helicity
/// plane wave is used instead.
pub fn zitter_trajectory(
    particle: &Particle,
    hbar: f64,
    mix: [Complex64; 2],
    times: &[f64],
) -> Result<ZitterTrajectory, DiracError> {
    if !(hbar > 0.0) {
        return Err(DiracError::InvalidParticle(format!("hbar must be positive, got {hbar}")));
    }
    let mix_norm: f64 = mix.iter().map(Complex64::norm_sqr).sum();
    if (mix_norm - 1.0).abs() > 1e-12 {
        return Err(DiracError::MixNotNormalized(mix_norm.sqrt()));
    }
    if times.len() < 2 {
        return Err(DiracError::InvalidSeries("need at least two time points".into()));
    }
    check_increasing(times)?;
    let energy = particle.energy();
    let period = std::f64::consts::PI * hbar / energy;
    let max_step = times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    if max_step > period / MIN_POINTS_PER_PERIOD {
        return Err(DiracError::Aliasing {
            points_per_period: period / max_step,
        });
    }

    let g = build_gamma_set();
    let h = hamiltonian_with(&g, particle);
    let waves = plane_wave_spinors(particle);
    let u_plus = waves[0].state.amplitudes;
    let u_minus = negative_energy_partner(&g.alpha[0], &h, energy, &u_plus)
        .unwrap_or(waves[2].state.amplitudes);
    let psi: Vec<Complex64> = (0..4).map(|i| mix[0] * u_plus[i] + mix[1] * u_minus[i]).collect();

    let split = position_operator_split(particle, hbar);
    let velocity_op = &split.velocity[0];
    let zitter = &split.zitter[0];
    let drift_velocity = expectation(velocity_op, &psi);

    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        // e^{−2iHt/ħ} = exp(−iH(2t)/ħ)
        let phase_op = mat_exp_energy(&h, energy, 2.0 * t, hbar)?;
        let osc = zitter.try_mul(&phase_op)?;
        values.push(drift_velocity * t + expectation(&osc, &psi));
    }

    Ok(ZitterTrajectory {
        series: TrajectorySeries::new(times.to_vec(), values, SeriesKind::Mean)?,
        drift_velocity,
        period,
    })
}

fn expectation(op: &CMatrix, psi: &[Complex64]) -> f64 {
    let applied = op.apply(psi).expect("4-vector");
    (inner(psi, &applied) / inner(psi, psi).re).re
}

fn negative_energy_partner(
    alpha: &CMatrix,
    h: &CMatrix,
    energy: f64,
    u_plus: &[Complex64; 4],
) -> Option<[Complex64; 4]> {
    let v = alpha.apply(u_plus).ok()?;
    let hv = h.apply(&v).ok()?;
    // (1 − H/E)/2
    let proj: Vec<Complex64> = v.iter().zip(&hv).map(|(a, b)| (a - b / energy) * 0.5).collect();
    let n = proj.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if n < 1e-12 {
        return None;
    }
    Some(std::array::from_fn(|i| proj[i] / n))
}

/// Uniform grid of `points` samples over `periods` Zitterbewegung periods,
/// starting at `t = 0`.
pub fn period_grid(particle: &Particle, hbar: f64, periods: f64, points: usize) -> Vec<f64> {
    let span = periods * std::f64::consts::PI * hbar / particle.energy();
    let step = span / (points.max(2) - 1) as f64;
    (0..points.max(2)).map(|k| k as f64 * step).collect()
}

// Three-point Gauss–Legendre rule on [−1, 1]; exact for quintics.
const GAUSS_NODES: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GAUSS_WEIGHTS: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
const STENCIL: usize = 6;

/// Piecewise-quintic antiderivative of a sampled series.
struct Antiderivative<'a> {
    times: &'a [f64],
    values: &'a [f64],
    cumulative: Vec<f64>,
}

impl<'a> Antiderivative<'a> {
    fn new(times: &'a [f64], values: &'a [f64]) -> Self {
        let mut s = Self {
            times,
            values,
            cumulative: Vec::with_capacity(times.len()),
        };
        let mut acc = 0.0;
        s.cumulative.push(0.0);
        for k in 0..times.len() - 1 {
            acc += s.integrate_interval(k, times[k], times[k + 1]);
            s.cumulative.push(acc);
        }
        s
    }

    /// Integral over `[from, to] ⊆ [t_k, t_{k+1}]` of the local interpolant
    /// through the six samples around interval `k`.
    fn integrate_interval(&self, k: usize, from: f64, to: f64) -> f64 {
        let n = self.times.len();
        let width = STENCIL.min(n);
        let lo = k.saturating_sub(STENCIL / 2 - 1).min(n - width);
        let nodes = &self.times[lo..lo + width];
        let vals = &self.values[lo..lo + width];
        let half = 0.5 * (to - from);
        let mid = 0.5 * (to + from);
        GAUSS_NODES
            .iter()
            .zip(GAUSS_WEIGHTS)
            .map(|(&x, w)| w * lagrange(nodes, vals, mid + half * x))
            .sum::<f64>()
            * half
    }

    /// `∫_{t_0}^{s} x dt` for `s` inside the sampled span.
    fn at(&self, s: f64) -> f64 {
        let n = self.times.len();
        let k = self.times.partition_point(|&t| t <= s).saturating_sub(1).min(n - 2);
        self.cumulative[k] + self.integrate_interval(k, self.times[k], s)
    }
}

fn lagrange(nodes: &[f64], values: &[f64], x: f64) -> f64 {
    let mut sum = 0.0;
    for (i, (&xi, &yi)) in nodes.iter().zip(values).enumerate() {
        let mut basis = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if i != j {
                basis *= (x - xj) / (xi - xj);
            }
        }
        sum += yi * basis;
    }
    sum
}

/// Centered moving average over a window of width `window`.
///
/// Only samples whose full window lies inside the series are kept. The
/// integral uses a local quintic interpolant, so a pure sinusoid of angular
/// frequency `ω` is damped by `|sinc(ωW/2)|` up to a discretization error of
/// order `(ωh)⁶`.
pub fn compton_average(series: &TrajectorySeries, window: f64) -> Result<TrajectorySeries, DiracError> {
    if !(window >= 0.0) || !window.is_finite() {
        return Err(DiracError::InvalidWindow(window));
    }
    if window == 0.0 {
        return TrajectorySeries::new(series.times.clone(), series.values.clone(), SeriesKind::Averaged);
    }
    let span = series.span();
    if window > span || series.len() < 2 {
        return Err(DiracError::WindowTooLong { window, span });
    }
    let anti = Antiderivative::new(&series.times, &series.values);
    let (first, last) = (series.times[0], series.times[series.len() - 1]);
    let slack = 1e-12 * span;
    let half = 0.5 * window;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for &t in &series.times {
        let (a, b) = (t - half, t + half);
        if a < first - slack || b > last + slack {
            continue;
        }
        let (a, b) = (a.max(first), b.min(last));
        times.push(t);
        values.push((anti.at(b) - anti.at(a)) / window);
    }
    if times.is_empty() {
        return Err(DiracError::WindowTooLong { window, span });
    }
    TrajectorySeries::new(times, values, SeriesKind::Averaged)
}

/// Angular frequency of a zero-mean oscillation from its zero crossings,
/// located by linear interpolation between samples.
pub fn measure_angular_frequency(series: &TrajectorySeries) -> Result<f64, DiracError> {
    let t = &series.times;
    let x = &series.values;
    let crossings: Vec<f64> = (0..series.len().saturating_sub(1))
        .filter_map(|k| {
            let (a, b) = (x[k], x[k + 1]);
            if a == 0.0 {
                Some(t[k])
            } else if a * b < 0.0 {
                Some(t[k] + (t[k + 1] - t[k]) * a / (a - b))
            } else {
                None
            }
        })
        .collect();
    if crossings.len() < 2 {
        return Err(DiracError::TooFewCrossings(crossings.len()));
    }
    let half_periods = (crossings.len() - 1) as f64;
    Ok(std::f64::consts::PI * half_periods / (crossings[crossings.len() - 1] - crossings[0]))
}

/// Least-squares fit of `c0 + a cos ωt + b sin ωt`; returns `√(a² + b²)`.
pub fn fit_amplitude(series: &TrajectorySeries, omega: f64) -> f64 {
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (&t, &y) in series.times.iter().zip(&series.values) {
        let (s, c) = (omega * t).sin_cos();
        let row = [1.0, c, s];
        for i in 0..3 {
            aty[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let coeffs = solve3(ata, aty);
    coeffs[1].hypot(coeffs[2])
}

/// Gaussian elimination with partial pivoting for a 3×3 system.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}
