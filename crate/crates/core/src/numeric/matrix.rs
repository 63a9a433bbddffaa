//! Small dense complex matrices.
//!
//! Everything here is sized for Dirac spinor work (4×4) and two-level systems
//! (2×2). No decompositions: spectral facts come from closed forms.

use std::fmt;

use num_complex::Complex64;

use super::NumericError;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Operation selector for [`mat_ops`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MatOp {
    Add,
    Mul,
    Commutator,
    Anticommutator,
    /// Conjugate transpose of the first operand; the second is ignored.
    Adjoint,
    /// Multiplies the first operand by a scalar; the second is ignored.
    Scale(Complex64),
}

/// Dispatches one of the basic matrix operations.
pub fn mat_ops(a: &CMatrix, b: &CMatrix, op: MatOp) -> Result<CMatrix, NumericError> {
    match op {
        MatOp::Add => a.try_add(b),
        MatOp::Mul => a.try_mul(b),
        MatOp::Commutator => a.commutator(b),
        MatOp::Anticommutator => a.anticommutator(b),
        MatOp::Adjoint => Ok(a.adjoint()),
        MatOp::Scale(s) => Ok(a.scale(s)),
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, NumericError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(NumericError::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(NumericError::DimensionMismatch {
                op: "from_rows",
                left: (1, c),
                right: (1, bad.len()),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Self::zeros(rows, cols);
        for (dst, &src) in m.data.iter_mut().zip(entries) {
            *dst = Complex64::new(src, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    /// Places `blocks[r][c]` (each `k×k`) into a `(nk)×(nk)` matrix.
    pub fn from_blocks(blocks: &[&[&CMatrix]]) -> Self {
        let k = blocks[0][0].rows;
        let n = blocks.len();
        let mut m = Self::zeros(n * k, n * k);
        for (br, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), n, "block grid must be square");
            for (bc, block) in row.iter().enumerate() {
                assert!(block.rows == k && block.cols == k, "blocks must share one size");
                for i in 0..k {
                    for j in 0..k {
                        m.set(br * k + i, bc * k + j, block.get(i, j));
                    }
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), NumericError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(NumericError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumericError> {
        self.check_same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NumericError> {
        self.check_same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NumericError> {
        if self.cols != other.rows {
            return Err(NumericError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self, NumericError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self, NumericError> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>, NumericError> {
        if v.len() != self.cols {
            return Err(NumericError::DimensionMismatch {
                op: "apply",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        self.zip_with(&self.adjoint(), |a, b| (a + b) * 0.5)
    }

    /// `(A − A†)/2`.
    pub fn anti_hermitian_part(&self) -> Self {
        self.zip_with(&self.adjoint(), |a, b| (a - b) * 0.5)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&z| z == ZERO)
    }

    /// Compact single-line text: `[[1,0],[0,-1]]` with entries as
    /// shortest round-trip decimals, complex entries as `a+bi`.
    pub fn to_compact_string(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.rows {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&format_complex(self.get(i, j)));
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}

/// Shortest decimal that round-trips, in positional form for magnitudes in
/// `[1e-5, 1e16)` and exponent form otherwise: `1`, `0.25`, `6.3e-23`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `3`, `-i`, `0.5i`, `1-2i`. Negative zero prints as `0`.
pub fn format_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let imag = |v: f64| match v {
        1.0 => "i".to_string(),
        -1.0 => "-i".to_string(),
        _ => format!("{v}i"),
    };
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => imag(im),
        (false, false) => {
            let sign = if im < 0.0 { "-" } else { "+" };
            format!("{re}{sign}{}", imag(im.abs()))
        }
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

/// Relative tolerance on `‖H² − E²I‖` accepted by [`mat_exp_energy`].
pub const ENERGY_SQUARE_TOLERANCE: f64 = 1e-10;

/// `exp(−iHt/ħ)` for a matrix with `H² = E²·I`.
///
/// Uses the closed form `cos(Et/ħ)·I − i·sin(Et/ħ)·H/E`. The precondition
/// is checked with the Frobenius norm, which bounds the spectral norm from
/// above.
pub fn mat_exp_energy(h: &CMatrix, energy: f64, t: f64, hbar: f64) -> Result<CMatrix, NumericError> {
    if !h.is_square() {
        return Err(NumericError::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    if !(energy > 0.0) {
        return Err(NumericError::NonPositiveEnergy(energy));
    }
    let n = h.rows;
    let e2 = energy * energy;
    let residual = h
        .try_mul(h)?
        .try_sub(&CMatrix::identity(n).scale_real(e2))?
        .frobenius_norm();
    if residual > ENERGY_SQUARE_TOLERANCE * e2 {
        return Err(NumericError::NotEnergySquare { residual, energy });
    }
    let phase = energy * t / hbar;
    let (s, c) = phase.sin_cos();
    let mut u = h.scale(Complex64::new(0.0, -s / energy));
    for i in 0..n {
        u.data[i * n + i] += c;
    }
    Ok(u)
}

pub const NORM_TOLERANCE: f64 = 1e-12;
pub const NORM_MAX_ITERATIONS: usize = 10_000;

/// Spectral norm by power iteration on `A†A`.
///
/// Starts from the normalized all-ones vector and stops when the Rayleigh
/// quotient changes by less than [`NORM_TOLERANCE`] relative. Structured
/// matrices can make the all-ones vector orthogonal to the dominant singular
/// vector, so the iteration is repeated from each basis vector and the
/// largest converged value is returned.
pub fn operator_norm(a: &CMatrix) -> Result<f64, NumericError> {
    if !a.is_square() {
        return Err(NumericError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let gram = a.adjoint().try_mul(a)?;
    let n = a.cols;
    let mut best = power_iteration(&gram, vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n])?;
    for k in 0..n {
        let mut e = vec![ZERO; n];
        e[k] = ONE;
        best = best.max(power_iteration(&gram, e)?);
    }
    Ok(best.sqrt())
}

/// Largest eigenvalue of the Hermitian PSD `gram` reachable from `v`.
fn power_iteration(gram: &CMatrix, mut v: Vec<Complex64>) -> Result<f64, NumericError> {
    let mut estimate = 0.0_f64;
    for _ in 0..NORM_MAX_ITERATIONS {
        let w = gram.apply(&v)?;
        // v is unit length, so <v, A†A v> is the Rayleigh quotient.
        let rayleigh: f64 = v.iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum();
        let w_norm = w.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if w_norm == 0.0 {
            return Ok(0.0);
        }
        let next = rayleigh.max(0.0);
        if (next - estimate).abs() <= NORM_TOLERANCE * next {
            return Ok(next);
        }
        estimate = next;
        v = w.into_iter().map(|x| x / w_norm).collect();
    }
    Err(NumericError::NormNotConverged {
        estimate: estimate.sqrt(),
    })
}

/// The Pauli matrices `σ_x, σ_y, σ_z`.
pub fn pauli() -> [CMatrix; 3] {
    let i = Complex64::new(0.0, 1.0);
    let sx = CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let mut sy = CMatrix::zeros(2, 2);
    sy.set(0, 1, -i);
    sy.set(1, 0, i);
    let sz = CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    [sx, sy, sz]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_commutator() {
        let [sx, sy, sz] = pauli();
        let comm = mat_ops(&sx, &sy, MatOp::Commutator).unwrap();
        assert_eq!(comm, sz.scale(c(0.0, 2.0)));
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 2.0), c(-0.5, 0.0)], vec![c(3.0, -1.0), c(0.0, 4.0)]])
            .unwrap();
        assert!(a.commutator(&a).unwrap().is_zero());
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn anticommutator_of_pauli() {
        let [sx, sy, _] = pauli();
        assert!(sx.anticommutator(&sy).unwrap().is_zero());
        assert_eq!(sx.anticommutator(&sx).unwrap(), CMatrix::identity(2).scale_real(2.0));
    }

    #[test]
    fn dimension_mismatch() {
        let a = CMatrix::zeros(2, 2);
        let b = CMatrix::zeros(3, 3);
        assert!(matches!(
            a.try_add(&b),
            Err(NumericError::DimensionMismatch { op: "add", .. })
        ));
        assert!(a.try_mul(&b).is_err());
        assert!(a.commutator(&b).is_err());
        assert!(CMatrix::zeros(2, 3).try_mul(&CMatrix::zeros(3, 2)).is_ok());
        assert!(CMatrix::from_rows(&[vec![ONE], vec![ONE, ONE]]).is_err());
    }

    #[test]
    fn exp_at_zero_time_is_identity() {
        let [sx, ..] = pauli();
        let u = mat_exp_energy(&sx.scale_real(3.0), 3.0, 0.0, 1.0).unwrap();
        assert_eq!(u, CMatrix::identity(2));
    }

    #[test]
    fn exp_quarter_turn() {
        let [sx, ..] = pauli();
        let e = 2.0;
        let hbar = 0.5;
        let u = mat_exp_energy(&sx.scale_real(e), e, PI * hbar / (2.0 * e), hbar).unwrap();
        let expected = sx.scale(c(0.0, -1.0));
        assert!(u.try_sub(&expected).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn exp_rejects_non_energy_square() {
        let [sx, _, sz] = pauli();
        let h = sx.try_add(&sz).unwrap();
        let err = mat_exp_energy(&h, 1.0, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, NumericError::NotEnergySquare { .. }));
        assert!(err.to_string().contains("residual"));
        assert!(mat_exp_energy(&h, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(operator_norm(&CMatrix::identity(4)).unwrap(), 1.0);
        let [sx, _, sz] = pauli();
        assert_eq!(operator_norm(&sz.scale_real(2.0)).unwrap(), 2.0);
        let n = operator_norm(&sx.try_add(&sz).unwrap()).unwrap();
        assert!((n - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(operator_norm(&CMatrix::zeros(3, 3)).unwrap(), 0.0);
    }

    #[test]
    fn norm_when_ones_vector_is_in_the_kernel() {
        let a = CMatrix::from_real(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        assert!((operator_norm(&a).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.25), "0.25");
        assert_eq!(format_float(-2e-23), "-2e-23");
        assert_eq!(format_float(1e10), "10000000000");
        assert_eq!(format_float(3.5e20), "3.5e20");
        for x in [6.322890460472234e-23, 1.0 / 3.0, 299792458.0, 1e-5, 9.99e-6] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn compact_string() {
        let [_, sy, _] = pauli();
        assert_eq!(sy.to_compact_string(), "[[0,-i],[i,0]]");
        assert_eq!(format_complex(c(0.5, -2.0)), "0.5-2i");
        assert_eq!(format_complex(c(-0.0, 0.0)), "0");
    }
}
