//! Derivation of the Gram matrix of the canonical spanning set from the
//! parameter pair `(λ₁, λ₂)`.
//!
//! Axis–axis pairings depend only on the index distance: `⟨a_j,a_j⟩ = 1/4`,
//! `⟨a_j,a_{j±1}⟩ = λ₁/4`, `⟨a_j,a_{j±2}⟩ = λ₂/4`, and for the order-6 orbit
//! the distance-3 value is extracted by pairing the eight-term rewrite
//! relation between the two distance-2 α generators with `e`.  Axis–α
//! pairings come from the two closed forms
//!
//! * `⟨a, α(a,x)⟩ = (31/16)⟨a,x⟩ − 1/2⁶` (when `a` is an argument), and
//! * `⟨x, α(y, y^{τ_x})⟩ = (15/8)⟨x,y⟩ − (1/16)(1/4 − ⟨y, y^{τ_x}⟩)`,
//!
//! and the α–α block from expanding `⟨α(e,a), α(e,b)⟩ = ⟨a, e·α(e,b)⟩ −
//! (1/16)⟨e+a, α(e,b)⟩` through the adjoint formula for `e·α(e,b)`.
//!
//! The relations over-determine the table; whenever two routes to the same
//! entry exist they are both evaluated and compared, and disagreement is
//! reported as a contradiction (inadmissible parameters) rather than
//! resolved by fiat.

use crate::element::{canonical_basis, Element, Label};
use crate::linalg::Matrix;
use crate::orbit::{Axis, OrbitModel, ParamRecord};
use crate::rational::{rat, Rational};

/// Errors from Gram derivation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GramError {
    #[error("orbit size {0} exceeds the supported construction range (1..=6)")]
    UnsupportedOrbit(usize),
    #[error("orbit size {n} forces {relation}, but λ₁ = {lambda1}, λ₂ = {lambda2}")]
    IdentificationViolated {
        n: usize,
        relation: &'static str,
        lambda1: Rational,
        lambda2: Rational,
    },
    #[error("contradictory pairings for {entry}: {left} vs {right} (via {via})")]
    Contradiction {
        entry: String,
        left: Rational,
        right: Rational,
        via: &'static str,
    },
    #[error("derived pairing (f|a_3) = {0} violates the [0, 1/3] bound")]
    DerivedValueOutOfBounds(Rational),
}

/// Complete symmetric inner-product table on the canonical spanning set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramTable {
    n: usize,
    period: usize,
    basis: Vec<Label>,
    /// `mu[d] = ⟨a_j, a_{j+d}⟩` for `d = 0 ..= period/2`.
    mu: Vec<Rational>,
    ax_alpha1: Option<Rational>,
    /// `⟨a_j, α₂⟩` when `a_j` occurs as an argument of a presentation of α₂
    /// (odd `j`, or every `j` on a fused orbit).
    ax_alpha2_arg: Option<Rational>,
    /// `⟨a_j, α₂⟩` for the remaining (even-index) axes.
    ax_alpha2_other: Option<Rational>,
    a11: Option<Rational>,
    a12: Option<Rational>,
    a22: Option<Rational>,
}

impl GramTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Label] {
        &self.basis
    }

    /// `⟨a_j, a_{j+d}⟩` for a reduced distance `d`.
    pub fn mu(&self, d: usize) -> &Rational {
        &self.mu[d]
    }

    /// The exact inner product `⟨x, y⟩` of two basis labels.
    pub fn bracket(&self, x: Label, y: Label) -> Rational {
        let expect = |v: &Option<Rational>| {
            v.clone()
                .unwrap_or_else(|| panic!("pairing ({x}, {y}) outside the n={} basis", self.n))
        };
        match (x, y) {
            (Label::Axis(j), Label::Axis(k)) => {
                let d = (j as i64 - k as i64).rem_euclid(self.period as i64) as usize;
                self.mu[d.min(self.period - d)].clone()
            }
            (Label::Axis(_), Label::Alpha1) | (Label::Alpha1, Label::Axis(_)) => {
                expect(&self.ax_alpha1)
            }
            (Label::Axis(j), Label::Alpha2) | (Label::Alpha2, Label::Axis(j)) => {
                if self.period % 2 == 1 || j % 2 == 1 {
                    expect(&self.ax_alpha2_arg)
                } else {
                    expect(&self.ax_alpha2_other)
                }
            }
            (Label::Alpha1, Label::Alpha1) => expect(&self.a11),
            (Label::Alpha1, Label::Alpha2) | (Label::Alpha2, Label::Alpha1) => expect(&self.a12),
            (Label::Alpha2, Label::Alpha2) => expect(&self.a22),
        }
    }

    /// The exact inner product of two coordinate vectors.
    pub fn pair(&self, x: &Element, y: &Element) -> Rational {
        let mut out = Rational::zero();
        for (&lx, cx) in x.iter() {
            for (&ly, cy) in y.iter() {
                out += &(cx * cy) * &self.bracket(lx, ly);
            }
        }
        out
    }

    /// Dense Gram matrix in canonical basis order.
    pub fn to_matrix(&self) -> Matrix {
        let k = self.basis.len();
        let mut g = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = self.bracket(self.basis[i], self.basis[j]);
            }
        }
        g
    }
}

/// The closed form `⟨x, α(y, y^{τ_x})⟩ = (15/8)⟨x,y⟩ − (1/16)(1/4 − ⟨y,y^{τ_x}⟩)`.
pub fn adjacent_alpha_bracket(xy: &Rational, y_ytx: &Rational) -> Rational {
    &(&rat(15, 8) * xy) - &(&rat(1, 16) * &(&rat(1, 4) - y_ytx))
}

/// The closed form `⟨a, α(a,x)⟩ = (31/16)⟨a,x⟩ − 1/2⁶`.
pub fn argument_alpha_bracket(ax: &Rational) -> Rational {
    &(&rat(31, 16) * ax) - &rat(1, 64)
}

/// Derives the full Gram table for the given orbit and parameters.
///
/// Errors when the orbit identifications force a parameter relation the
/// inputs violate, or when two independent pairings of the rewrite
/// relations disagree (inadmissible parameters).
pub fn derive_gram(model: &OrbitModel, params: &ParamRecord) -> Result<GramTable, GramError> {
    let n = model.n();
    if n > 6 {
        return Err(GramError::UnsupportedOrbit(n));
    }
    let period = model.period();
    let l1 = params.lambda1().clone();
    let l2 = params.lambda2().clone();
    let identification = |relation: &'static str| GramError::IdentificationViolated {
        n,
        relation,
        lambda1: l1.clone(),
        lambda2: l2.clone(),
    };
    match n {
        1 => {
            // e = f: both parameters degenerate to (e|e) = 1.
            if l1 != Rational::one() || l2 != Rational::one() {
                return Err(identification("λ₁ = λ₂ = 1"));
            }
        }
        2 => {
            // e^{τ_f} = e: λ₂ = (e|e) = 1.
            if l2 != Rational::one() {
                return Err(identification("λ₂ = 1"));
            }
            if l1 == Rational::one() {
                return Err(identification("λ₁ ≤ 1/3 (distinct axes)"));
            }
        }
        3 => {
            // e^{τ_f} = a_1 is at distance 1, so λ₂ = λ₁.
            if l2 != l1 {
                return Err(identification("λ₂ = λ₁"));
            }
            if l1 == Rational::one() {
                return Err(identification("λ₁ ≤ 1/3 (distinct axes)"));
            }
        }
        5 => {
            // On the fused 5-orbit every axis is an argument of a
            // presentation of α₂ *and* sits adjacent to one, so the two
            // closed forms for ⟨a, α₂⟩ must agree, forcing λ₂ = λ₁:
            // (31λ₂ − 1)/64 = (30λ₁ + λ₂ − 1)/64.
            let arg = argument_alpha_bracket(&(&l2 * &rat(1, 4)));
            let adj = adjacent_alpha_bracket(&(&l1 * &rat(1, 4)), &(&l2 * &rat(1, 4)));
            if arg != adj {
                return Err(GramError::Contradiction {
                    entry: "⟨a_j, α₂⟩".to_owned(),
                    left: arg,
                    right: adj,
                    via: "argument form vs adjacent form on the fused orbit",
                });
            }
            if l1 == Rational::one() || l2 == Rational::one() {
                return Err(identification("λ ≤ 1/3 (distinct axes)"));
            }
        }
        _ => {
            if l1 == Rational::one() || l2 == Rational::one() {
                return Err(identification("λ ≤ 1/3 (distinct axes)"));
            }
        }
    }

    let quarter = rat(1, 4);
    let mut mu = vec![quarter.clone()];
    if period >= 2 {
        mu.push(&l1 * &quarter);
    }
    if period >= 4 {
        mu.push(&l2 * &quarter);
    }
    if period == 6 {
        let nu = distance_three_pairing(&l1, &l2)?;
        mu.push(&nu * &quarter);
    }

    let basis = canonical_basis(n);
    let has_alpha1 = basis.contains(&Label::Alpha1);
    let has_alpha2 = basis.contains(&Label::Alpha2);

    let ax_alpha1 = has_alpha1.then(|| argument_alpha_bracket(&(&l1 * &quarter)));
    let ax_alpha2_arg = has_alpha2.then(|| argument_alpha_bracket(&(&l2 * &quarter)));
    let ax_alpha2_other =
        has_alpha2.then(|| adjacent_alpha_bracket(&(&l1 * &quarter), &(&l2 * &quarter)));

    let mut table = GramTable {
        n,
        period,
        basis,
        mu,
        ax_alpha1,
        ax_alpha2_arg,
        ax_alpha2_other,
        a11: None,
        a12: None,
        a22: None,
    };

    // α–α block via ⟨α(e,a), α(e,b)⟩ = ⟨a, e·α(e,b)⟩ − (1/16)⟨e+a, α(e,b)⟩
    // with e·α(e,b) = (7/16)α(e,b) + (3(e|b) − 25/2⁸)e + (7/2⁹)(b + b^{τ_e}).
    let e = model.axis_e();
    let f = model.axis_f();
    if has_alpha1 {
        table.a11 = Some(alpha_alpha_entry(model, &table, e, f, f, Label::Alpha1));
    }
    if has_alpha2 {
        let etf = model.tau_f_of(e); // e^{τ_f} = a_1
        table.a12 = Some(alpha_alpha_entry(model, &table, e, f, etf, Label::Alpha2));
        table.a22 = Some(alpha_alpha_entry(model, &table, e, etf, etf, Label::Alpha2));
    }
    Ok(table)
}

/// `⟨α(e,a), α(e,b)⟩` where `α(e,b)` carries the basis label `alpha_eb`.
fn alpha_alpha_entry(
    model: &OrbitModel,
    partial: &GramTable,
    e: Axis,
    a: Axis,
    b: Axis,
    alpha_eb: Label,
) -> Rational {
    let w = |x: Axis| partial.bracket(Label::Axis(x), alpha_eb);
    let ax = |x: Axis, y: Axis| partial.bracket(Label::Axis(x), Label::Axis(y));
    let e_b = &Rational::from_int(4) * &ax(e, b); // (e|b) scale
    let b_te = model.tau_e_of(b);
    &(&(&(&rat(7, 16) * &w(a)) + &(&(&(&rat(3, 1) * &e_b) - &rat(25, 256)) * &ax(a, e)))
        + &(&rat(7, 512) * &(&ax(a, b) + &ax(a, b_te))))
        - &(&rat(1, 16) * &(&w(e) + &w(a)))
}

/// The distance-3 pairing `ν = (f | a_3)` on the order-6 orbit.
///
/// Route 1 pairs the distance-2 rewrite relation (the eight-term relation
/// between `α(e,e^{τ_f})` and `α(f,f^{τ_e})`) with `e`.  Route 2 pairs the
/// three-term `φ_f⁻` relation with `e`; it constrains ν whenever its
/// `φ_f⁻(f^{τ_e})` coefficient is nonzero, and the two routes must agree.
fn distance_three_pairing(l1: &Rational, l2: &Rational) -> Result<Rational, GramError> {
    let k = eq8_coefficient_k(l1, l2);
    let c = eq8_coefficient_c(l1);
    let sixteen = Rational::from_int(16);
    // ν = 16K(1−λ₁) + 16c(λ₁−λ₂) + 30λ₁ − 29λ₂.
    let nu = &(&(&(&sixteen * &k) * &(&Rational::one() - l1))
        + &(&(&sixteen * &c) * &(l1 - l2)))
        + &(&(&Rational::from_int(30) * l1) - &(&Rational::from_int(29) * l2));

    // Route 2: C₁·(e|e) − C₁·(e|e^{τ_f}·…) … pairing
    //   C₁ φ_f⁻(e) + C₂ φ_f⁻(f^{τ_e}) + φ_f⁻(e^{τ_fτ_e}) = 0
    // with e gives C₁(1 − λ₂) + C₂(λ₁ − ν) = 0 (the last term is τ_f-fixed).
    let c1 = phi_relation_c1(l1, l2);
    let c2 = phi_relation_c2(l1);
    if !c2.is_zero() {
        let nu2 = l1 + &(&(&c1 * &(&Rational::one() - l2)) / &c2);
        if nu2 != nu {
            return Err(GramError::Contradiction {
                entry: "(f | a_3)".to_owned(),
                left: nu,
                right: nu2,
                via: "rewrite-relation pairing vs φ_f⁻-relation pairing",
            });
        }
    } else if !(&c1 * &(&Rational::one() - l2)).is_zero() {
        return Err(GramError::Contradiction {
            entry: "(f | a_3)".to_owned(),
            left: nu,
            right: Rational::zero(),
            via: "φ_f⁻-relation pairing is unsatisfiable",
        });
    }
    if nu.is_negative() || nu > rat(1, 3) {
        return Err(GramError::DerivedValueOutOfBounds(nu));
    }
    Ok(nu)
}

/// `K = (1/7)(2¹¹λ₁² − 9·2⁴λ₁ + 33/2⁴ + 2³λ₂)` from the distance-2 rewrite
/// relation.
pub fn eq8_coefficient_k(l1: &Rational, l2: &Rational) -> Rational {
    &(&(&(&Rational::from_int(1 << 11) * &(l1 * l1)) - &(&Rational::from_int(144) * l1))
        + &(&rat(33, 16) + &(&Rational::from_int(8) * l2)))
        * &rat(1, 7)
}

/// `c = 2⁴λ₁ − 3/8` from the distance-2 rewrite relation.
pub fn eq8_coefficient_c(l1: &Rational) -> Rational {
    &(&Rational::from_int(16) * l1) - &rat(3, 8)
}

/// `C₁ = (1/7)(2¹⁵λ₁² − 2⁹λ₁ + 2⁷λ₂ − 9)`, the `φ_f⁻(e)` coefficient of the
/// three-term relation.
pub fn phi_relation_c1(l1: &Rational, l2: &Rational) -> Rational {
    &(&(&(&Rational::from_int(1 << 15) * &(l1 * l1)) - &(&Rational::from_int(1 << 9) * l1))
        + &(&(&Rational::from_int(1 << 7) * l2) - &Rational::from_int(9)))
        * &rat(1, 7)
}

/// `C₂ = 2⁸λ₁ − 5`, the `φ_f⁻(f^{τ_e})` coefficient of the three-term
/// relation.
pub fn phi_relation_c2(l1: &Rational) -> Rational {
    &(&Rational::from_int(1 << 8) * l1) - &Rational::from_int(5)
}
