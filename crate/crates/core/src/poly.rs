//! Sparse exact polynomials: bivariate polynomials in the parameter pair
//! `(λ₁, λ₂)` for the orbit-specialized constraint systems, and six-variable
//! polynomials in the `μ` entries for the determinant-regrouping identity.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in `(λ₁, λ₂)` with exact rational coefficients, stored as a
/// sparse map from exponent pairs to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly2::zero();
        p.insert_add((0, 0), c);
        p
    }

    /// The variable `λ₁`.
    pub fn lambda1() -> Self {
        Poly2::monomial(1, 0, Rational::one())
    }

    /// The variable `λ₂`.
    pub fn lambda2() -> Self {
        Poly2::monomial(0, 1, Rational::one())
    }

    /// `c · λ₁^{d1} · λ₂^{d2}`.
    pub fn monomial(d1: u32, d2: u32, c: Rational) -> Self {
        let mut p = Poly2::zero();
        p.insert_add((d1, d2), c);
        p
    }

    /// Builds a polynomial from `(d1, d2, coefficient)` triples.
    pub fn from_terms(terms: &[(u32, u32, Rational)]) -> Self {
        let mut p = Poly2::zero();
        for (d1, d2, c) in terms {
            p.insert_add((*d1, *d2), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        let mut out = Poly2::zero();
        for (key, v) in &self.terms {
            out.insert_add(*key, c * v);
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, l1: &Rational, l2: &Rational) -> Rational {
        let mut out = Rational::zero();
        for (&(d1, d2), c) in &self.terms {
            out += &(c * &l1.pow(d1)) * &l2.pow(d2);
        }
        out
    }

    /// Substitutes polynomials for both variables.
    pub fn compose(&self, x: &Poly2, y: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(d1, d2), c) in &self.terms {
            let mut term = Poly2::constant(c.clone());
            for _ in 0..d1 {
                term = &term * x;
            }
            for _ in 0..d2 {
                term = &term * y;
            }
            out = &out + &term;
        }
        out
    }

    /// Substitutes a constant for `λ₂`, leaving a polynomial in `λ₁`.
    pub fn subst_lambda2(&self, v: &Rational) -> Poly2 {
        self.compose(&Poly2::lambda1(), &Poly2::constant(v.clone()))
    }

    /// Substitutes a constant for `λ₁`, leaving a polynomial in `λ₂`.
    pub fn subst_lambda1(&self, v: &Rational) -> Poly2 {
        self.compose(&Poly2::constant(v.clone()), &Poly2::lambda2())
    }

    /// Exchanges the two variables.
    pub fn swap_vars(&self) -> Poly2 {
        self.compose(&Poly2::lambda2(), &Poly2::lambda1())
    }

    /// Coefficients `(a, b, c)` of `a·λ₁² + b·λ₁ + c` when the polynomial is
    /// univariate in `λ₁` of degree at most 2; `None` otherwise.
    pub fn quadratic_coeffs(&self) -> Option<(Rational, Rational, Rational)> {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (&(d1, d2), c) in &self.terms {
            if d2 != 0 || d1 > 2 {
                return None;
            }
            out[d1 as usize] = c.clone();
        }
        let [c0, c1, c2] = out;
        Some((c2, c1, c0))
    }

    /// Integer-normalized form: denominators cleared, content divided out,
    /// and the coefficient of the largest exponent pair made positive.
    pub fn primitive(&self) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let scaled: Vec<((u32, u32), BigInt)> = self
            .terms
            .iter()
            .map(|(k, c)| (*k, c.numer() * (&denom_lcm / c.denom())))
            .collect();
        let mut content = BigInt::zero();
        for (_, n) in &scaled {
            content = content.gcd(n);
        }
        let lead_negative = scaled.last().map(|(_, n)| n.is_negative()).unwrap_or(false);
        if lead_negative {
            content = -content;
        }
        let mut out = Poly2::zero();
        for (key, n) in scaled {
            out.insert_add(
                key,
                Rational::from_big(num_rational::BigRational::from_integer(n / &content)),
            );
        }
        out
    }
}

impl Add<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.insert_add(*key, c.clone());
        }
        out
    }
}

impl Sub<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-Rational::one())
    }
}

impl Mul<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, a2), ca) in &self.terms {
            for (&(b1, b2), cb) in &rhs.terms {
                out.insert_add((a1 + b1, a2 + b2), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(d1, d2), c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let vars = match (d1, d2) {
                (0, 0) => String::new(),
                _ => {
                    let mut s = String::new();
                    if d1 == 1 {
                        s.push_str("l1");
                    } else if d1 > 1 {
                        s.push_str(&format!("l1^{d1}"));
                    }
                    if d2 >= 1 {
                        if !s.is_empty() {
                            s.push('*');
                        }
                        if d2 == 1 {
                            s.push_str("l2");
                        } else {
                            s.push_str(&format!("l2^{d2}"));
                        }
                    }
                    s
                }
            };
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Rational::one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag}*{vars}")?;
            }
        }
        Ok(())
    }
}

/// Names of the six `μ` variables in storage order.
pub const MU_VARS: [&str; 6] = ["mu11", "mu22", "mu33", "mu12", "mu13", "mu23"];

/// A polynomial in the six `μ` variables, used to verify the regrouping of
/// the 3×3 Gram determinant symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MuPoly {
    terms: BTreeMap<[u8; 6], Rational>,
}

impl MuPoly {
    pub fn zero() -> Self {
        MuPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MuPoly::zero();
        p.insert_add([0; 6], c);
        p
    }

    /// The variable with index `i` in [`MU_VARS`] order.
    pub fn var(i: usize) -> Self {
        assert!(i < 6, "variable index out of range");
        let mut key = [0u8; 6];
        key[i] = 1;
        let mut p = MuPoly::zero();
        p.insert_add(key, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, key: [u8; 6], c: Rational) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn scale(&self, c: &Rational) -> MuPoly {
        let mut out = MuPoly::zero();
        for (key, v) in &self.terms {
            out.insert_add(*key, c * v);
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational; 6]) -> Rational {
        let mut out = Rational::zero();
        for (key, c) in &self.terms {
            let mut term = c.clone();
            for (i, &d) in key.iter().enumerate() {
                term = &term * &point[i].pow(u32::from(d));
            }
            out += term;
        }
        out
    }
}

impl Add<&MuPoly> for &MuPoly {
    type Output = MuPoly;
    fn add(self, rhs: &MuPoly) -> MuPoly {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.insert_add(*key, c.clone());
        }
        out
    }
}

impl Sub<&MuPoly> for &MuPoly {
    type Output = MuPoly;
    fn sub(self, rhs: &MuPoly) -> MuPoly {
        self + &rhs.scale(&-Rational::one())
    }
}

impl Mul<&MuPoly> for &MuPoly {
    type Output = MuPoly;
    fn mul(self, rhs: &MuPoly) -> MuPoly {
        let mut out = MuPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mut key = [0u8; 6];
                for i in 0..6 {
                    key[i] = ka[i] + kb[i];
                }
                out.insert_add(key, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn eval_and_arithmetic() {
        // p = 2048·λ₁² − 256·λ₁ vanishes at 0 and 1/8.
        let p = Poly2::from_terms(&[(2, 0, rat(2048, 1)), (1, 0, rat(-256, 1))]);
        assert!(p.eval(&rat(1, 8), &Rational::one()).is_zero());
        assert!(p.eval(&Rational::zero(), &Rational::one()).is_zero());
        assert_eq!(p.eval(&rat(1, 4), &Rational::one()), rat(64, 1));

        let q = &(&Poly2::lambda1() - &Poly2::lambda2()) * &Poly2::lambda1();
        assert_eq!(q.eval(&rat(1, 2), &rat(1, 3)), rat(1, 12));
    }

    #[test]
    fn compose_substitutes() {
        // p(λ₁, λ₂) = λ₁² + λ₂ composed with (λ₂, 1) gives λ₂² + 1.
        let p = &(&Poly2::lambda1() * &Poly2::lambda1()) + &Poly2::lambda2();
        let c = p.compose(&Poly2::lambda2(), &Poly2::constant(Rational::one()));
        assert_eq!(c.eval(&rat(7, 1), &rat(3, 1)), rat(10, 1));
        assert_eq!(p.subst_lambda2(&rat(1, 2)).eval(&rat(2, 1), &Rational::zero()), rat(9, 2));
    }

    #[test]
    fn quadratic_coefficient_extraction() {
        let p = Poly2::from_terms(&[
            (2, 0, rat(3, 2)),
            (1, 0, rat(-1, 4)),
            (0, 0, rat(5, 1)),
        ]);
        assert_eq!(
            p.quadratic_coeffs(),
            Some((rat(3, 2), rat(-1, 4), rat(5, 1)))
        );
        assert!(Poly2::lambda2().quadratic_coeffs().is_none());
    }

    #[test]
    fn primitive_normalizes() {
        // (1/7)(2048λ₁² − 256λ₁) → 8λ₁² − λ₁.
        let p = Poly2::from_terms(&[(2, 0, rat(2048, 7)), (1, 0, rat(-256, 7))]);
        let q = p.primitive();
        assert_eq!(
            q,
            Poly2::from_terms(&[(2, 0, rat(8, 1)), (1, 0, rat(-1, 1))])
        );
        // Sign is fixed by the leading term.
        let r = Poly2::from_terms(&[(2, 0, rat(-4, 1)), (0, 0, rat(2, 1))]).primitive();
        assert_eq!(
            r,
            Poly2::from_terms(&[(2, 0, rat(2, 1)), (0, 0, rat(-1, 1))])
        );
    }

    #[test]
    fn display_is_readable() {
        let p = Poly2::from_terms(&[
            (2, 0, rat(8, 1)),
            (0, 1, rat(1, 1)),
            (0, 0, rat(-1, 1)),
        ]);
        assert_eq!(p.to_string(), "8*l1^2 + l2 - 1");
    }

    #[test]
    fn mu_poly_symmetric_determinant() {
        // det of [[x, z], [z, y]] as a MuPoly in (x, y, z) = vars 0, 1, 2.
        let x = MuPoly::var(0);
        let y = MuPoly::var(1);
        let z = MuPoly::var(2);
        let det = &(&x * &y) - &(&z * &z);
        let point = [
            rat(2, 3),
            rat(3, 4),
            rat(1, 5),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        assert_eq!(det.eval(&point), rat(23, 50));
    }
}
