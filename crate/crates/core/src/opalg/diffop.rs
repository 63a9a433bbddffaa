use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::numeric::GaussianRational;

use super::poly::{Poly4, Var};

/// First-order differential operator
/// `a0 + a_t ∂/∂p_t + a_x ∂/∂p_x + a_y ∂/∂p_y + a_z ∂/∂p_z`
/// with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    mult: Poly4,
    deriv: [Poly4; 4],
}

/// Outcome of composing two first-order operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composition {
    FirstOrder(DiffOp),
    /// The product carries a nonvanishing second-derivative part.
    SecondOrder,
}

impl Composition {
    pub fn first_order(self) -> Option<DiffOp> {
        match self {
            Composition::FirstOrder(op) => Some(op),
            Composition::SecondOrder => None,
        }
    }
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(mult: Poly4, deriv: [Poly4; 4]) -> Self {
        Self { mult, deriv }
    }

    /// Multiplication by `p`.
    pub fn multiply(p: Poly4) -> Self {
        Self {
            mult: p,
            ..Self::default()
        }
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Self::multiply(Poly4::constant(c))
    }

    /// `coeff · ∂/∂p_v`.
    pub fn partial(v: Var, coeff: Poly4) -> Self {
        let mut op = Self::zero();
        op.deriv[v.index()] = coeff;
        op
    }

    /// `D = Σ_μ p_μ ∂/∂p_μ`, which multiplies a monomial by its total degree.
    pub fn euler() -> Self {
        let mut op = Self::zero();
        for v in Var::ALL {
            op.deriv[v.index()] = Poly4::var(v);
        }
        op
    }

    pub fn mult_part(&self) -> &Poly4 {
        &self.mult
    }

    pub fn deriv_part(&self, v: Var) -> &Poly4 {
        &self.deriv[v.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_zero() && self.deriv.iter().all(Poly4::is_zero)
    }

    /// True when the operator has no derivative part.
    pub fn is_multiplication(&self) -> bool {
        self.deriv.iter().all(Poly4::is_zero)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            mult: self.mult.scale(s),
            deriv: self.deriv.clone().map(|p| p.scale(s)),
        }
    }

    /// Left-multiplies every coefficient by `p`.
    pub fn premultiply(&self, p: &Poly4) -> Self {
        Self {
            mult: p * &self.mult,
            deriv: self.deriv.clone().map(|d| p * &d),
        }
    }

    /// `a0·f + Σ_μ a_μ ∂f/∂p_μ`.
    pub fn apply(&self, f: &Poly4) -> Poly4 {
        Var::ALL.iter().fold(&self.mult * f, |acc, &v| {
            let coeff = &self.deriv[v.index()];
            if coeff.is_zero() {
                acc
            } else {
                &acc + &(coeff * &f.derivative(v))
            }
        })
    }

    /// `A(a_μ)`: the first-order action of `self`'s derivative part on a
    /// coefficient polynomial, `Σ_ν a_ν ∂p/∂p_ν`.
    fn derive_coefficient(&self, p: &Poly4) -> Poly4 {
        Var::ALL.iter().fold(Poly4::zero(), |acc, &v| {
            let coeff = &self.deriv[v.index()];
            if coeff.is_zero() {
                acc
            } else {
                &acc + &(coeff * &p.derivative(v))
            }
        })
    }

    /// Symmetric second-derivative coefficients of `self ∘ other`, indexed
    /// by `(ν, μ)` with `ν ≤ μ`.
    fn second_order_part(&self, other: &Self) -> Vec<Poly4> {
        let mut out = Vec::with_capacity(10);
        for nu in 0..4 {
            for mu in nu..4 {
                let mut s = &self.deriv[nu] * &other.deriv[mu];
                if nu != mu {
                    s = &s + &(&self.deriv[mu] * &other.deriv[nu]);
                }
                out.push(s);
            }
        }
        out
    }

    /// The first-order part of `self ∘ other`, dropping any second-order
    /// terms.
    fn first_order_product(&self, other: &Self) -> Self {
        // (a0 + a·∂)(b0 + b·∂) f
        //   = a0 b0 f + a(b0) f + Σ_μ (a0 b_μ + b0 a_μ + a(b_μ)) ∂_μ f + second order
        let mult = &(&self.mult * &other.mult) + &self.derive_coefficient(&other.mult);
        let deriv = std::array::from_fn(|mu| {
            let terms = &(&self.mult * &other.deriv[mu]) + &(&other.mult * &self.deriv[mu]);
            &terms + &self.derive_coefficient(&other.deriv[mu])
        });
        Self { mult, deriv }
    }

    /// Symbolic composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Composition {
        if self.second_order_part(other).iter().any(|p| !p.is_zero()) {
            Composition::SecondOrder
        } else {
            Composition::FirstOrder(self.first_order_product(other))
        }
    }

    /// `[self, other]` in first-order normal form, by the Leibniz rule:
    /// `[A, B] = (A(b0) − B(a0)) + Σ_μ (A(b_μ) − B(a_μ)) ∂_μ`.
    pub fn commutator(&self, other: &Self) -> Self {
        debug_assert!(
            self.second_order_part(other) == other.second_order_part(self),
            "second-order parts failed to cancel in a commutator"
        );
        let mult = &self.derive_coefficient(&other.mult) - &other.derive_coefficient(&self.mult);
        let deriv = std::array::from_fn(|mu| {
            &self.derive_coefficient(&other.deriv[mu]) - &other.derive_coefficient(&self.deriv[mu])
        });
        Self { mult, deriv }
    }

    /// Five labelled lines, one per coefficient polynomial.
    pub fn canonical_form(&self) -> String {
        let mut s = format!("1: {}", self.mult);
        for v in Var::ALL {
            s.push_str(&format!("\nd/d{}: {}", v.symbol(), self.deriv[v.index()]));
        }
        s
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        DiffOp {
            mult: &self.mult + &rhs.mult,
            deriv: std::array::from_fn(|i| &self.deriv[i] + &rhs.deriv[i]),
        }
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        DiffOp {
            mult: &self.mult - &rhs.mult,
            deriv: std::array::from_fn(|i| &self.deriv[i] - &rhs.deriv[i]),
        }
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            mult: -&self.mult,
            deriv: std::array::from_fn(|i| -&self.deriv[i]),
        }
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        &self + &rhs
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        &self - &rhs
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_form())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::poly::Monomial;
    use num_traits::One;

    fn p(v: Var) -> Poly4 {
        Poly4::var(v)
    }

    fn mono(c: i64, e: [u32; 4]) -> Poly4 {
        Poly4::term(GaussianRational::from(c), Monomial(e))
    }

    fn dx() -> DiffOp {
        DiffOp::partial(Var::X, Poly4::one())
    }

    #[test]
    fn apply_examples() {
        assert_eq!(dx().apply(&mono(1, [0, 2, 0, 0])), mono(2, [0, 1, 0, 0]));
        let euler_x = DiffOp::partial(Var::X, p(Var::X));
        assert_eq!(euler_x.apply(&mono(1, [0, 3, 0, 0])), mono(3, [0, 3, 0, 0]));
        assert!(DiffOp::zero().apply(&mono(5, [1, 2, 3, 4])).is_zero());
    }

    #[test]
    fn euler_operator_counts_degree() {
        let f = mono(2, [1, 0, 2, 1]);
        assert_eq!(DiffOp::euler().apply(&f), f.scale(&GaussianRational::from(4)));
    }

    #[test]
    fn compose_examples() {
        let px = DiffOp::multiply(p(Var::X));
        let py = DiffOp::multiply(p(Var::Y));
        assert_eq!(
            px.compose(&py),
            Composition::FirstOrder(DiffOp::multiply(&p(Var::X) * &p(Var::Y)))
        );
        assert_eq!(dx().compose(&dx()), Composition::SecondOrder);

        let expected = &DiffOp::scalar(GaussianRational::one()) + &DiffOp::partial(Var::X, p(Var::X));
        assert_eq!(dx().compose(&px), Composition::FirstOrder(expected));
    }

    #[test]
    fn mixed_second_order_is_detected() {
        let dy = DiffOp::partial(Var::Y, Poly4::one());
        assert_eq!(dx().compose(&dy), Composition::SecondOrder);
        assert!(dx().compose(&dy).first_order().is_none());
    }

    #[test]
    fn commutator_examples() {
        let ihbar = GaussianRational::i();
        let x = DiffOp::partial(Var::X, Poly4::constant(ihbar.clone()));
        let px = DiffOp::multiply(p(Var::X));
        assert_eq!(x.commutator(&px), DiffOp::scalar(ihbar));

        let py = DiffOp::multiply(p(Var::Y));
        assert!(px.commutator(&py).is_zero());

        let euler_x = DiffOp::partial(Var::X, p(Var::X));
        assert_eq!(euler_x.commutator(&px), px);
    }

    #[test]
    fn commutator_matches_composition_when_both_first_order() {
        let a = &DiffOp::multiply(&p(Var::X) * &p(Var::T)) + &DiffOp::partial(Var::Y, mono(3, [0, 0, 0, 1]));
        let b = DiffOp::multiply(&p(Var::Y) + &mono(2, [0, 0, 0, 2]));
        let ab = a.compose(&b).first_order().unwrap();
        let ba = b.compose(&a).first_order().unwrap();
        assert_eq!(a.commutator(&b), &ab - &ba);
    }

    #[test]
    fn canonical_text() {
        let op = &DiffOp::scalar(GaussianRational::i()) + &DiffOp::partial(Var::Z, p(Var::T));
        assert_eq!(
            op.canonical_form(),
            "1: i * p_t^0 p_x^0 p_y^0 p_z^0\n\
             d/dp_t: 0\n\
             d/dp_x: 0\n\
             d/dp_y: 0\n\
             d/dp_z: 1 * p_t^1 p_x^0 p_y^0 p_z^0"
        );
    }
}
