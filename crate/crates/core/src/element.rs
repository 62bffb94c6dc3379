//! Elements of `B_{e,f}` as exact coordinate vectors over the canonical
//! spanning set `{a_0, …, a_{N−1}, α₁ = α(e,f), α₂ = α(e,e^{τ_f})}`.
//!
//! Coordinates are finitely supported maps from basis labels to rationals;
//! zero coefficients are never stored, so equality is exact coordinate-wise
//! comparison.

use crate::rational::Rational;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A label of the canonical spanning set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// The axis `a_j`.
    Axis(usize),
    /// `α₁ = α(e, f)`.
    Alpha1,
    /// `α₂ = α(e, e^{τ_f})`.
    Alpha2,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Axis(j) => write!(f, "a{j}"),
            Label::Alpha1 => write!(f, "alpha1"),
            Label::Alpha2 => write!(f, "alpha2"),
        }
    }
}

/// The canonical spanning basis for orbit size `n`, with the degenerate
/// collapses applied: `n=1 → {a_0}`, `n=2 → {a_0,a_1,α₁}` (α₂ aliases
/// `(15/8)e`), `n=3 → {a_0,a_1,a_2,α₁}` (α₂ aliases α₁), and the full
/// `n + 2` labels for `n ≥ 4`.
pub fn canonical_basis(n: usize) -> Vec<Label> {
    let mut labels: Vec<Label> = (0..n).map(Label::Axis).collect();
    if n >= 2 {
        labels.push(Label::Alpha1);
    }
    if n >= 4 {
        labels.push(Label::Alpha2);
    }
    labels
}

/// An exact coordinate vector over the spanning set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    coords: BTreeMap<Label, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    /// The basis element with coefficient 1 on `label`.
    pub fn from_label(label: Label) -> Self {
        Element::singleton(label, Rational::one())
    }

    /// The axis `a_j`.
    pub fn axis(j: usize) -> Self {
        Element::from_label(Label::Axis(j))
    }

    pub fn singleton(label: Label, coeff: Rational) -> Self {
        let mut e = Element::zero();
        e.set(label, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coefficient of `label` (zero when absent).
    pub fn coeff(&self, label: Label) -> Rational {
        self.coords.get(&label).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, label: Label, coeff: Rational) {
        if coeff.is_zero() {
            self.coords.remove(&label);
        } else {
            self.coords.insert(label, coeff);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (label, coeff) in &other.coords {
            let v = self.coeff(*label) + c * coeff;
            self.set(*label, v);
        }
    }

    /// `c · self`.
    pub fn scaled(&self, c: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_scaled(c, self);
        out
    }

    /// Applies an index permutation to the axis labels; the two α-generators
    /// are fixed by every element of `T`.
    pub fn permute_axes(&self, perm: &[usize]) -> Element {
        let mut out = Element::zero();
        for (label, coeff) in &self.coords {
            let target = match label {
                Label::Axis(j) => Label::Axis(perm[*j]),
                other => *other,
            };
            let v = out.coeff(target) + coeff.clone();
            out.set(target, v);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Rational)> {
        self.coords.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> {
        self.coords.keys()
    }

    /// Dense coordinates relative to an explicit basis order.
    ///
    /// # Panics
    /// Panics when a supported label is missing from `basis`.
    pub fn to_dense(&self, basis: &[Label]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); basis.len()];
        for (label, coeff) in &self.coords {
            let idx = basis
                .iter()
                .position(|b| b == label)
                .unwrap_or_else(|| panic!("label {label} not in basis"));
            out[idx] = coeff.clone();
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (label, coeff) in &self.coords {
            if first {
                write!(f, "{coeff}·{label}")?;
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - {}·{label}", -coeff)?;
            } else {
                write!(f, " + {coeff}·{label}")?;
            }
        }
        Ok(())
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scaled(&-Rational::one())
    }
}
