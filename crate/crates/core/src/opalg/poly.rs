use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::numeric::GaussianRational;

/// One of the four momentum variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::T, Var::X, Var::Y, Var::Z];
    /// The spatial variables in order `x, y, z`.
    pub const SPATIAL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Var::T => "p_t",
            Var::X => "p_x",
            Var::Y => "p_y",
            Var::Z => "p_z",
        }
    }
}

/// Exponent vector `(e_t, e_x, e_y, e_z)`, ordered graded-lexicographically:
/// lower total degree first, ties broken lexicographically on `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t, x, y, z] = self.0;
        write!(f, "p_t^{t} p_x^{x} p_y^{y} p_z^{z}")
    }
}

/// Polynomial in `p_t, p_x, p_y, p_z` with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, and the map keeps terms in
/// graded-lex order, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly4 {
    terms: BTreeMap<Monomial, GaussianRational>,
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Debug, PartialEq)]
pub enum PolyOp {
    Add,
    Mul,
    /// Multiplies the first operand by the scalar; the second is ignored.
    Scale(GaussianRational),
}

pub fn poly_arith(p: &Poly4, q: &Poly4, op: PolyOp) -> Poly4 {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Mul => p * q,
        PolyOp::Scale(s) => p.scale(&s),
    }
}

impl Poly4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(v))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut lowered = *m;
            lowered.0[v.index()] -= 1;
            out.add_term(lowered, c * &GaussianRational::from(i64::from(e)));
        }
        out
    }

    pub fn evaluate(&self, point: &[GaussianRational; 4]) -> GaussianRational {
        self.terms
            .iter()
            .fold(GaussianRational::zero(), |acc, (m, c)| {
                let value = Var::ALL
                    .iter()
                    .fold(c.clone(), |v, var| &v * &point[var.index()].pow(m.exponent(*var)));
                &acc + &value
            })
    }
}

impl<'a> Add<&'a Poly4> for &'a Poly4 {
    type Output = Poly4;
    fn add(self, rhs: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly4> for &'a Poly4 {
    type Output = Poly4;
    fn sub(self, rhs: &Poly4) -> Poly4 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly4> for &'a Poly4 {
    type Output = Poly4;
    fn mul(self, rhs: &Poly4) -> Poly4 {
        let mut out = Poly4::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly4 {
    type Output = Poly4;
    fn neg(self) -> Poly4 {
        Poly4 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for Poly4 {
    type Output = Poly4;
    fn add(self, rhs: Poly4) -> Poly4 {
        &self + &rhs
    }
}

impl Sub for Poly4 {
    type Output = Poly4;
    fn sub(self, rhs: Poly4) -> Poly4 {
        &self - &rhs
    }
}

impl Mul for Poly4 {
    type Output = Poly4;
    fn mul(self, rhs: Poly4) -> Poly4 {
        &self * &rhs
    }
}

/// `coeff * p_t^a p_x^b p_y^c p_z^d` terms joined by ` + `, ascending
/// graded-lex order; the zero polynomial prints as `0`.
impl fmt::Display for Poly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * {m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn px() -> Poly4 {
        Poly4::var(Var::X)
    }
    fn py() -> Poly4 {
        Poly4::var(Var::Y)
    }

    #[test]
    fn square() {
        let sq = poly_arith(&px(), &px(), PolyOp::Mul);
        assert_eq!(sq, Poly4::term(GaussianRational::one(), Monomial([0, 2, 0, 0])));
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&px() + &py()) * &(&px() - &py());
        let rhs = &(&px() * &px()) - &(&py() * &py());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.terms().count(), 2);
    }

    #[test]
    fn scale_by_i() {
        let pt = Poly4::var(Var::T);
        let scaled = poly_arith(&pt, &Poly4::zero(), PolyOp::Scale(GaussianRational::i()));
        assert_eq!(scaled.coefficient(&Monomial::var(Var::T)), GaussianRational::i());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &px() - &px();
        assert!(p.is_zero());
        assert_eq!(p, Poly4::zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn graded_lex_order() {
        let mut ms = vec![
            Monomial([0, 0, 0, 2]),
            Monomial([1, 0, 0, 0]),
            Monomial([0, 1, 1, 0]),
            Monomial::ONE,
            Monomial([0, 0, 1, 0]),
        ];
        ms.sort();
        assert_eq!(
            ms,
            vec![
                Monomial::ONE,
                Monomial([0, 0, 1, 0]),
                Monomial([1, 0, 0, 0]),
                Monomial([0, 0, 0, 2]),
                Monomial([0, 1, 1, 0]),
            ]
        );
    }

    #[test]
    fn text_form() {
        let p = &(&px() * &px()).scale(&GaussianRational::ratio(-1, 2)) + &Poly4::constant(GaussianRational::i());
        assert_eq!(
            p.to_string(),
            "i * p_t^0 p_x^0 p_y^0 p_z^0 + -1/2 * p_t^0 p_x^2 p_y^0 p_z^0"
        );
    }

    #[test]
    fn evaluate_and_derivative() {
        let p = &(&px() * &px()) * &py();
        let d = p.derivative(Var::X);
        assert_eq!(d, (&px() * &py()).scale(&GaussianRational::from(2)));
        let point = [
            GaussianRational::from(7),
            GaussianRational::from(3),
            GaussianRational::ratio(1, 2),
            GaussianRational::from(0),
        ];
        assert_eq!(p.evaluate(&point), GaussianRational::ratio(9, 2));
        assert!(p.derivative(Var::T).is_zero());
    }
}
