//! Momentum-space realization of Snyder's quantized-spacetime operators and
//! exact verification of their commutation relations.
//!
//! With `D = Σ_μ p_μ ∂/∂p_μ`:
//!
//! ```text
//! X_k = iħ ∂/∂p_k + (i a²/ħ) p_k D
//! T   = iħ ∂/∂p_t − (i a²/(ħ c²)) p_t D
//! ```
//!
//! Momenta act by multiplication. Rotation generators come from the
//! realization itself (`L_3 = X_1∘P_2 − X_2∘P_1`, cyclic). Boost generators
//! are stored in the closed form that solves `[T, X_k] = −(i a²/(ħ c)) M_k`:
//!
//! ```text
//! M_k = −iħ (c p_k ∂/∂p_t + (p_t / c) ∂/∂p_k)
//! ```
//!
//! Relations are compared by exact equality of canonical forms at rational
//! parameter values; the parameter dependence of both sides is polynomial of
//! bounded degree, so a grid with five distinct values per parameter pins
//! each identity.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{GaussianRational, NumericError};
use crate::opalg::{DiffOp, Poly4, Var};
use crate::report::{compare, RelationEntry, RelationReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SnyderError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("identity not pinned: parameter {param} takes {distinct} distinct values, need at least {MIN_DISTINCT}")]
    IdentityNotPinned { param: &'static str, distinct: usize },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Minimum number of distinct values per parameter in a sweep.
pub const MIN_DISTINCT: usize = 5;

/// Sign and normalization of the stored boost generators.
pub const BOOST_CONVENTION: &str = "M_k = -i hbar (c p_k d/dp_t + (p_t/c) d/dp_k)";
pub const REALIZATION: &str =
    "X_k = i hbar d/dp_k + (i a^2/hbar) p_k D; T = i hbar d/dp_t - (i a^2/(hbar c^2)) p_t D; D = sum_mu p_mu d/dp_mu";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnyderParams {
    pub a: GaussianRational,
    pub hbar: GaussianRational,
    pub c: GaussianRational,
}

impl SnyderParams {
    pub fn new(
        a: GaussianRational,
        hbar: GaussianRational,
        c: GaussianRational,
    ) -> Result<Self, SnyderError> {
        let params = Self { a, hbar, c };
        params.validate()?;
        Ok(params)
    }

    pub fn from_ints(a: i64, hbar: i64, c: i64) -> Result<Self, SnyderError> {
        Self::new(a.into(), hbar.into(), c.into())
    }

    pub fn validate(&self) -> Result<(), SnyderError> {
        let real = |name: &str, v: &GaussianRational| {
            if v.is_real() {
                Ok(())
            } else {
                Err(SnyderError::InvalidParams(format!("{name} must be real, got {v}")))
            }
        };
        real("a", &self.a)?;
        real("hbar", &self.hbar)?;
        real("c", &self.c)?;
        if !self.hbar.re().is_positive() {
            return Err(SnyderError::InvalidParams(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !self.c.re().is_positive() {
            return Err(SnyderError::InvalidParams(format!("c must be positive, got {}", self.c)));
        }
        if self.a.re().is_negative() {
            return Err(SnyderError::InvalidParams(format!("a must be non-negative, got {}", self.a)));
        }
        Ok(())
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("a".to_string(), self.a.to_string()),
            ("c".to_string(), self.c.to_string()),
            ("hbar".to_string(), self.hbar.to_string()),
        ])
    }

    fn i_hbar(&self) -> GaussianRational {
        &GaussianRational::i() * &self.hbar
    }

    /// `(a/ħ)²`.
    fn deformation(&self) -> GaussianRational {
        let r = self.a.checked_div(&self.hbar).expect("hbar validated positive");
        &r * &r
    }
}

/// The full operator set of the realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnyderOps {
    /// `X_1, X_2, X_3`.
    pub x: [DiffOp; 3],
    pub t: DiffOp,
    pub pt: DiffOp,
    /// `P_1, P_2, P_3`.
    pub p: [DiffOp; 3],
    /// Rotation generators `L_1, L_2, L_3`.
    pub l: [DiffOp; 3],
    /// Boost generators `M_1, M_2, M_3`.
    pub m: [DiffOp; 3],
}

impl SnyderOps {
    /// Fault-injection hook: negates `T`, leaving everything else intact.
    pub fn with_time_sign_flipped(mut self) -> Self {
        self.t = -&self.t;
        self
    }
}

fn cyclic(i: usize) -> (usize, usize) {
    ((i + 1) % 3, (i + 2) % 3)
}

pub fn build_snyder_ops(params: &SnyderParams) -> Result<SnyderOps, SnyderError> {
    params.validate()?;
    let i_hbar = params.i_hbar();
    let i = GaussianRational::i();
    let a2 = &params.a * &params.a;
    // i a²/ħ
    let kappa = (&i * &a2).checked_div(&params.hbar)?;
    // i a²/(ħ c²)
    let lambda = kappa.checked_div(&(&params.c * &params.c))?;
    let euler = DiffOp::euler();

    let coordinate = |v: Var, coupling: &GaussianRational| {
        &DiffOp::partial(v, Poly4::constant(i_hbar.clone()))
            + &euler.premultiply(&Poly4::var(v)).scale(coupling)
    };
    let x = Var::SPATIAL.map(|v| coordinate(v, &kappa));
    let t = coordinate(Var::T, &-&lambda);
    let p = Var::SPATIAL.map(|v| DiffOp::multiply(Poly4::var(v)));
    let pt = DiffOp::multiply(Poly4::var(Var::T));

    let l = std::array::from_fn(|k| {
        let (i, j) = cyclic(k);
        let first = x[i].compose(&p[j]).first_order().expect("X∘P is first order");
        let second = x[j].compose(&p[i]).first_order().expect("X∘P is first order");
        &first - &second
    });

    let minus_i_hbar = -&i_hbar;
    let c_inv = params.c.checked_inv()?;
    let m = std::array::from_fn(|k| {
        let pk = Poly4::var(Var::SPATIAL[k]);
        let boost_t = DiffOp::partial(Var::T, pk.scale(&params.c));
        let boost_k = DiffOp::partial(Var::SPATIAL[k], Poly4::var(Var::T).scale(&c_inv));
        (&boost_t + &boost_k).scale(&minus_i_hbar)
    });

    Ok(SnyderOps { x, t, pt, p, l, m })
}

const AXIS: [&str; 3] = ["x", "y", "z"];

/// Checks every relation of the realization at `params` against the given
/// operator set.
pub fn verify_ops(params: &SnyderParams, ops: &SnyderOps) -> Result<RelationReport, SnyderError> {
    params.validate()?;
    let show = |op: &DiffOp| op.canonical_form();
    let i_hbar = params.i_hbar();
    let kappa = (&GaussianRational::i() * &(&params.a * &params.a)).checked_div(&params.hbar)?;
    let deform = params.deformation();
    let c2 = &params.c * &params.c;
    let mut entries = Vec::with_capacity(16);

    for k in 0..3 {
        let (i, j) = cyclic(k);
        entries.push(compare(
            format!("R1 [X{},X{}] = (i a^2/hbar) L{}", i + 1, j + 1, k + 1),
            &ops.x[i].commutator(&ops.x[j]),
            &ops.l[k].scale(&kappa),
            show,
        ));
    }

    // −(i a²/(ħ c))
    let boost_coupling = -&kappa.checked_div(&params.c)?;
    for k in 0..3 {
        entries.push(compare(
            format!("R2 [T,X{}] = -(i a^2/(hbar c)) M{}", k + 1, k + 1),
            &ops.t.commutator(&ops.x[k]),
            &ops.m[k].scale(&boost_coupling),
            show,
        ));
    }

    let p_var = |k: usize| Poly4::var(Var::SPATIAL[k]);
    let scalar_part = |poly: Poly4| DiffOp::multiply(poly);
    for k in 0..3 {
        // iħ(1 + (a/ħ)² p_k²)
        let rhs = scalar_part(
            (&Poly4::one() + &(&p_var(k) * &p_var(k)).scale(&deform)).scale(&i_hbar),
        );
        entries.push(compare(
            format!("R3 [X{n},P{n}] = i hbar (1 + (a/hbar)^2 p_{a}^2)", n = k + 1, a = AXIS[k]),
            &ops.x[k].commutator(&ops.p[k]),
            &rhs,
            show,
        ));
    }
    for k in 0..3 {
        let (i, j) = (k, (k + 1) % 3);
        let rhs = scalar_part((&p_var(i) * &p_var(j)).scale(&(&i_hbar * &deform)));
        entries.push(paired(
            format!(
                "R3 [X{},P{}] = [X{},P{}] = i hbar (a/hbar)^2 p_{} p_{}",
                i + 1,
                j + 1,
                j + 1,
                i + 1,
                AXIS[i],
                AXIS[j]
            ),
            &ops.x[i].commutator(&ops.p[j]),
            &ops.x[j].commutator(&ops.p[i]),
            &rhs,
        ));
    }

    // iħ(1 − (a/(ħc))² p_t²)
    let pt = Poly4::var(Var::T);
    let temporal = deform.checked_div(&c2)?;
    let rhs = scalar_part((&Poly4::one() - &(&pt * &pt).scale(&temporal)).scale(&i_hbar));
    entries.push(compare(
        "R4 [T,Pt] = i hbar (1 - (a/(hbar c))^2 p_t^2)",
        &ops.t.commutator(&ops.pt),
        &rhs,
        show,
    ));

    for k in 0..3 {
        let rhs = scalar_part((&p_var(k) * &pt).scale(&(&i_hbar * &deform)));
        entries.push(paired(
            format!("R5 [X{n},Pt] = c^2 [P{n},T] = i hbar (a/hbar)^2 p_{a} p_t", n = k + 1, a = AXIS[k]),
            &ops.x[k].commutator(&ops.pt),
            &ops.p[k].commutator(&ops.t).scale(&c2),
            &rhs,
        ));
    }

    Ok(RelationReport::new(entries, params.to_map())
        .with_metadata("boost_convention", BOOST_CONVENTION)
        .with_metadata("realization", REALIZATION))
}

/// An entry asserting two left-hand sides both equal `rhs`.
fn paired(name: String, first: &DiffOp, second: &DiffOp, rhs: &DiffOp) -> RelationEntry {
    let lhs = if first == second {
        first.canonical_form()
    } else {
        format!("{}\n---\n{}", first.canonical_form(), second.canonical_form())
    };
    RelationEntry {
        name,
        lhs,
        rhs: rhs.canonical_form(),
        pass: first == rhs && second == rhs,
    }
}

pub fn verify_snyder_relations(params: &SnyderParams) -> Result<RelationReport, SnyderError> {
    let ops = build_snyder_ops(params)?;
    verify_ops(params, &ops)
}

/// Aggregate result of a parameter sweep.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SweepReport {
    pub reports: Vec<RelationReport>,
    pub all_pass: bool,
    /// Parameters of every failing tuple, in sweep order.
    pub failing: Vec<BTreeMap<String, String>>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

pub fn parameter_sweep_verify(values: &[SnyderParams]) -> Result<SweepReport, SnyderError> {
    parameter_sweep_verify_with(values, build_snyder_ops)
}

/// Sweep with a caller-supplied operator builder (used for fault injection).
pub fn parameter_sweep_verify_with<F>(values: &[SnyderParams], build: F) -> Result<SweepReport, SnyderError>
where
    F: Fn(&SnyderParams) -> Result<SnyderOps, SnyderError> + Sync,
{
    check_pinned("a", values.iter().map(|p| &p.a))?;
    check_pinned("hbar", values.iter().map(|p| &p.hbar))?;
    check_pinned("c", values.iter().map(|p| &p.c))?;

    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(values.len().max(1));
    let chunk = values.len().div_ceil(workers).max(1);
    let results: Vec<Result<RelationReport, SnyderError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = values
            .chunks(chunk)
            .map(|part| {
                let build = &build;
                scope.spawn(move || {
                    part.iter()
                        .map(|params| verify_ops(params, &build(params)?))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let failing: Vec<_> = reports.iter().filter(|r| !r.all_pass).map(|r| r.params.clone()).collect();
    Ok(SweepReport {
        all_pass: failing.is_empty(),
        reports,
        failing,
    })
}

fn check_pinned<'a>(
    param: &'static str,
    values: impl Iterator<Item = &'a GaussianRational>,
) -> Result<(), SnyderError> {
    let distinct = values.map(ToString::to_string).collect::<BTreeSet<_>>().len();
    if distinct < MIN_DISTINCT {
        return Err(SnyderError::IdentityNotPinned { param, distinct });
    }
    Ok(())
}

/// The values `{1, 2, 3, 1/2, 5}` used for each parameter of the default grid.
pub fn grid_values() -> [GaussianRational; 5] {
    [
        GaussianRational::from(1),
        GaussianRational::from(2),
        GaussianRational::from(3),
        GaussianRational::ratio(1, 2),
        GaussianRational::from(5),
    ]
}

/// Full `5×5×5` grid over `a, ħ, c`.
pub fn default_grid() -> Vec<SnyderParams> {
    let vals = grid_values();
    let mut grid = Vec::with_capacity(125);
    for a in &vals {
        for hbar in &vals {
            for c in &vals {
                grid.push(SnyderParams {
                    a: a.clone(),
                    hbar: hbar.clone(),
                    c: c.clone(),
                });
            }
        }
    }
    grid
}

/// `iħ(1 + (a/ħ)² p²)`, the scalar value of `[x, p_x]` at momentum `p`.
pub fn compton_commutator_coefficient(
    a: &GaussianRational,
    p: &GaussianRational,
    hbar: &GaussianRational,
) -> Result<GaussianRational, SnyderError> {
    if hbar.is_zero() {
        return Err(SnyderError::InvalidParams("hbar must be non-zero".into()));
    }
    let ratio = a.checked_div(hbar)?;
    let correction = &(&ratio * &ratio) * &(p * p);
    let i_hbar = &GaussianRational::i() * hbar;
    Ok(&i_hbar * &(&GaussianRational::one() + &correction))
}

/// The Compton special case: `a = ħ/(mc)` evaluated at `p = mc`.
pub fn compton_special_case(
    m: &GaussianRational,
    c: &GaussianRational,
    hbar: &GaussianRational,
) -> Result<GaussianRational, SnyderError> {
    let mc = m * c;
    if mc.is_zero() {
        return Err(SnyderError::InvalidParams("m c must be non-zero".into()));
    }
    let a = hbar.checked_div(&mc)?;
    compton_commutator_coefficient(&a, &mc, hbar)
}

/// The same coefficient read off the symbolic `[X_1, P_1]` at `p_x = p`,
/// all other momenta zero.
pub fn symbolic_compton_coefficient(
    params: &SnyderParams,
    p: &GaussianRational,
) -> Result<GaussianRational, SnyderError> {
    let ops = build_snyder_ops(params)?;
    let comm = ops.x[0].commutator(&ops.p[0]);
    debug_assert!(comm.is_multiplication());
    let zero = GaussianRational::zero();
    let point = [zero.clone(), p.clone(), zero.clone(), zero];
    Ok(comm.mult_part().evaluate(&point))
}
