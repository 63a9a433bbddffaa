use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::numeric::{pauli, CMatrix};
use crate::report::{compare, RelationReport};

/// The matrix coordinates `t = diag(I, −I)`, `x_k = offdiag(σ_k, σ_k)` and
/// the Dirac matrices derived from them.
///
/// All entries are `0, ±1, ±i`, so products are exact in floating point and
/// the identity checks below use plain equality.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    pub t: CMatrix,
    pub x: [CMatrix; 3],
    pub beta: CMatrix,
    pub alpha: [CMatrix; 3],
    /// `γ⁰, γ¹, γ², γ³` with `γ^k = T·X_k`.
    pub gamma: [CMatrix; 4],
    pub gamma5: CMatrix,
    /// `Σ_k = diag(σ_k, σ_k)`.
    pub sigma: [CMatrix; 3],
}

pub fn build_gamma_set() -> GammaSet {
    let id2 = CMatrix::identity(2);
    let zero2 = CMatrix::zeros(2, 2);
    let minus_id2 = id2.scale_real(-1.0);
    let pauli = pauli();

    let t = CMatrix::from_blocks(&[&[&id2, &zero2], &[&zero2, &minus_id2]]);
    let x = pauli
        .clone()
        .map(|s| CMatrix::from_blocks(&[&[&zero2, &s], &[&s, &zero2]]));
    let sigma = pauli.map(|s| CMatrix::from_blocks(&[&[&s, &zero2], &[&zero2, &s]]));

    let mul = |a: &CMatrix, b: &CMatrix| a.try_mul(b).expect("4x4 product");
    let gamma = [
        t.clone(),
        mul(&t, &x[0]),
        mul(&t, &x[1]),
        mul(&t, &x[2]),
    ];
    let gamma5 = mul(&mul(&mul(&gamma[0], &gamma[1]), &gamma[2]), &gamma[3]).scale(Complex64::new(0.0, 1.0));

    GammaSet {
        beta: t.clone(),
        alpha: x.clone(),
        t,
        x,
        gamma,
        gamma5,
        sigma,
    }
}

/// Minkowski metric `diag(1, −1, −1, −1)`.
pub fn metric(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (m, n) if m == n => -1.0,
        _ => 0.0,
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn show(m: &CMatrix) -> String {
    m.to_compact_string()
}

/// Checks the algebra of the matrix coordinates:
/// `[X_i, X_j] = 2i ε_ijk Σ_k`, `{X_i, X_j} = 2δ_ij I`, `{T, X_i} = 0`,
/// `T² = I`.
pub fn verify_coordinate_algebra(g: &GammaSet) -> RelationReport {
    let id = CMatrix::identity(4);
    let zero = CMatrix::zeros(4, 4);
    let mut entries = Vec::new();

    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let comm = g.x[i].commutator(&g.x[j]).expect("4x4");
        let rhs = g.sigma[k].scale(Complex64::new(0.0, 2.0 * levi_civita(i, j, k)));
        entries.push(compare(
            format!("[X{},X{}] = 2i Sigma{}", i + 1, j + 1, k + 1),
            &comm,
            &rhs,
            show,
        ));
    }
    for i in 0..3 {
        for j in i..3 {
            let anti = g.x[i].anticommutator(&g.x[j]).expect("4x4");
            let rhs = if i == j { id.scale_real(2.0) } else { zero.clone() };
            entries.push(compare(
                format!("{{X{},X{}}} = {}", i + 1, j + 1, if i == j { "2I" } else { "0" }),
                &anti,
                &rhs,
                show,
            ));
        }
    }
    for i in 0..3 {
        entries.push(compare(
            format!("{{T,X{}}} = 0", i + 1),
            &g.t.anticommutator(&g.x[i]).expect("4x4"),
            &zero,
            show,
        ));
    }
    entries.push(compare("T^2 = I", &g.t.try_mul(&g.t).expect("4x4"), &id, show));

    RelationReport::new(entries, BTreeMap::new())
}

/// Checks `{γ^μ, γ^ν} = 2η^{μν} I` for all `μ ≤ ν`.
pub fn verify_clifford(g: &GammaSet) -> RelationReport {
    let id = CMatrix::identity(4);
    let mut entries = Vec::with_capacity(10);
    for mu in 0..4 {
        for nu in mu..4 {
            let anti = g.gamma[mu].anticommutator(&g.gamma[nu]).expect("4x4");
            let eta = metric(mu, nu);
            let label = match eta {
                e if e > 0.0 => "2I",
                e if e < 0.0 => "-2I",
                _ => "0",
            };
            entries.push(compare(
                format!("{{g{mu},g{nu}}} = {label}"),
                &anti,
                &id.scale_real(2.0 * eta),
                show,
            ));
        }
    }
    RelationReport::new(entries, BTreeMap::new())
}

/// Label and matrix of each element of the standard 16-element basis
/// `{I, γ^μ, σ^{μν}, γ⁵γ^μ, γ⁵}` with `σ^{μν} = (i/2)[γ^μ, γ^ν]`.
pub fn clifford_basis(g: &GammaSet) -> Vec<(String, CMatrix)> {
    let mut basis = vec![("I".to_string(), CMatrix::identity(4))];
    for mu in 0..4 {
        basis.push((format!("g{mu}"), g.gamma[mu].clone()));
    }
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let s = g.gamma[mu]
                .commutator(&g.gamma[nu])
                .expect("4x4")
                .scale(Complex64::new(0.0, 0.5));
            basis.push((format!("s{mu}{nu}"), s));
        }
    }
    for mu in 0..4 {
        basis.push((format!("g5g{mu}"), g.gamma5.try_mul(&g.gamma[mu]).expect("4x4")));
    }
    basis.push(("g5".to_string(), g.gamma5.clone()));
    basis
}
