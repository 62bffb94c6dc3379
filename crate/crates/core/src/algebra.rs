//! The constructive core: builds the full multiplication table of the
//! subalgebra generated by two axes over the canonical spanning set.
//!
//! Construction order:
//! 1. the polynomial constraint system and nondegeneracy filters reject
//!    inadmissible parameters up front;
//! 2. axis·axis products at distance ≤ 2 come from the α-resolution
//!    (`a_j·a_k = α(a_j,a_k) + (1/16)(a_j+a_k)`), with even-parity
//!    distance-2 α's rewritten through the eight-term relation between the
//!    two α-generators;
//! 3. axis·α products come from the adjoint closed form
//!    `a·α(a,x) = (7/16)α(a,x) + (3(a|x)−25/2⁸)a + (7/2⁹)(x+x^{τ_a})`
//!    when the axis is an argument, and from the projection expansion
//!    `a·α(b,b^{τ_a}) = 8⟨a,α⟩a + (8/3)φ_a¹((4(a|b)−19/2⁷)b + (7/2⁸)a^{τ_b})`
//!    otherwise;
//! 4. the order-6 orbit's distance-3 axis products are solved from the
//!    eight-term rewrite relation;
//! 5. α·α products are literal evaluations of the quadratic α-product
//!    formula, each derived twice with different axis roles.
//!
//! Every installed product is propagated to its images under the dihedral
//! group, and any collision between two derivations aborts the build: the
//! relations are over-determined, and that redundancy is the primary
//! correctness oracle.

use crate::classify::{constraint_system, nondegeneracy_violation, ClassifyError};
use crate::element::{canonical_basis, Element, Label};
use crate::gram::{
    adjacent_alpha_bracket, derive_gram, eq8_coefficient_c, eq8_coefficient_k, GramError,
    GramTable,
};
use crate::linalg::{psd_certificate, Matrix, PsdCertificate};
use crate::orbit::{build_orbit, Axis, Generator, OrbitError, OrbitModel, ParamRecord};
use crate::rational::{rat, Rational};
use std::collections::BTreeMap;

/// Errors from algebra construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Gram(#[from] GramError),
    #[error("orbit size {0} outside the constructive range (1..=6)")]
    UnsupportedOrbit(usize),
    #[error("inconsistent parameters: '{provenance}' evaluates to {value} at lambda1 = {lambda1}, lambda2 = {lambda2}")]
    ConstraintViolated {
        provenance: String,
        value: Rational,
        lambda1: Rational,
        lambda2: Rational,
    },
    #[error("inconsistent parameters: {condition}")]
    Degenerate { condition: &'static str },
    #[error("inconsistent parameters: two derivations of {x}*{y} disagree: [{left}] vs [{right}]")]
    DerivationConflict {
        x: Label,
        y: Label,
        left: String,
        right: String,
    },
    #[error("product {x}*{y} escaped the spanning set: {detail}")]
    NotClosed { x: Label, y: Label, detail: String },
    #[error("closure worklist exceeded {0} steps")]
    IterationCap(usize),
}

impl AlgebraError {
    /// Coarse machine-readable category used for exit codes:
    /// `"validation"`, `"inconsistent-parameters"`, or `"not-closed"`.
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::UnsupportedOrbit(_) | AlgebraError::Orbit(_) => "validation",
            AlgebraError::Gram(_)
            | AlgebraError::ConstraintViolated { .. }
            | AlgebraError::Degenerate { .. }
            | AlgebraError::DerivationConflict { .. } => "inconsistent-parameters",
            AlgebraError::NotClosed { .. } | AlgebraError::IterationCap(_) => "not-closed",
        }
    }
}

impl From<ClassifyError> for AlgebraError {
    fn from(e: ClassifyError) -> Self {
        let ClassifyError::UnsupportedOrbit(n) = e;
        AlgebraError::UnsupportedOrbit(n)
    }
}

/// Eigen-channel selector for the projection calculus around one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// `φ_a⁺ = (1 + τ_a)/2`.
    Plus,
    /// `φ_a⁻ = (1 − τ_a)/2`, the 1/16-eigenspace projection.
    Minus,
    /// Projection to the 0-eigenspace of the adjoint action.
    Zero,
    /// Projection to the 1/2-eigenspace of the adjoint action.
    One,
}

/// The completed two-generated subalgebra: basis, multiplication table,
/// Gram data, and positivity certificate.
#[derive(Debug, Clone)]
pub struct DihedralAlgebra {
    n: usize,
    model: OrbitModel,
    params: ParamRecord,
    basis: Vec<Label>,
    gram_table: GramTable,
    gram: Matrix,
    table: BTreeMap<(Label, Label), Element>,
    rank: usize,
    radical: Vec<Vec<Rational>>,
    psd: PsdCertificate,
}

fn key(x: Label, y: Label) -> (Label, Label) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

fn label_perm(l: Label, perm: &[usize]) -> Label {
    match l {
        Label::Axis(j) => Label::Axis(perm[j]),
        other => other,
    }
}

struct Builder<'a> {
    model: &'a OrbitModel,
    gram: &'a GramTable,
    table: BTreeMap<(Label, Label), Element>,
    cap: usize,
}

impl Builder<'_> {
    fn lambda1(&self) -> Rational {
        self.bracket4(Label::Axis(self.model.axis_e()), Label::Axis(self.model.axis_f()))
    }

    /// `(x|y) = 4⟨x,y⟩` for basis labels.
    fn bracket4(&self, x: Label, y: Label) -> Rational {
        &Rational::from_int(4) * &self.gram.bracket(x, y)
    }

    fn product_label(&self, x: Label, y: Label) -> Result<Element, AlgebraError> {
        self.table
            .get(&key(x, y))
            .cloned()
            .ok_or_else(|| AlgebraError::NotClosed {
                x,
                y,
                detail: "product not yet derived at this stage of closure".to_owned(),
            })
    }

    fn mul_label_elem(&self, l: Label, v: &Element) -> Result<Element, AlgebraError> {
        let mut out = Element::zero();
        for (&ly, c) in v.iter() {
            out.add_scaled(c, &self.product_label(l, ly)?);
        }
        Ok(out)
    }

    fn mul_elems(&self, u: &Element, v: &Element) -> Result<Element, AlgebraError> {
        let mut out = Element::zero();
        for (&lx, c) in u.iter() {
            out.add_scaled(c, &self.mul_label_elem(lx, v)?);
        }
        Ok(out)
    }

    /// True when `v` pairs to zero with the whole spanning set, i.e. `v` is
    /// zero as an element of the algebra.  At definite parameter points this
    /// coincides with `v.is_zero()`; at degenerate points the spanning set
    /// satisfies linear relations and distinct coordinate vectors can name
    /// the same element.
    fn vanishes(&self, v: &Element) -> bool {
        self.gram
            .basis()
            .iter()
            .all(|&b| self.gram.pair(v, &Element::from_label(b)).is_zero())
    }

    /// Installs a product and closes its orbit under the dihedral group,
    /// comparing against any previously installed derivation.  Derivations
    /// must agree as algebra elements (equal modulo the Gram radical); the
    /// first representative installed is kept.
    fn propagate(&mut self, x: Label, y: Label, value: Element) -> Result<(), AlgebraError> {
        let gens = [self.model.tau_e().to_vec(), self.model.tau_f().to_vec()];
        let mut queue = vec![(x, y, value)];
        let mut steps = 0usize;
        while let Some((x, y, v)) = queue.pop() {
            steps += 1;
            if steps > self.cap {
                return Err(AlgebraError::IterationCap(self.cap));
            }
            let k = key(x, y);
            if let Some(existing) = self.table.get(&k) {
                if !self.vanishes(&(existing - &v)) {
                    return Err(AlgebraError::DerivationConflict {
                        x: k.0,
                        y: k.1,
                        left: existing.to_string(),
                        right: v.to_string(),
                    });
                }
                continue;
            }
            self.table.insert(k, v.clone());
            for perm in &gens {
                queue.push((label_perm(x, perm), label_perm(y, perm), v.permute_axes(perm)));
            }
        }
        Ok(())
    }

    fn phi_plus(&self, a: Axis, x: &Element) -> Element {
        let refl = self.model.reflection_through(a);
        (x + &x.permute_axes(&refl)).scaled(&rat(1, 2))
    }

    fn phi_minus(&self, a: Axis, x: &Element) -> Element {
        let refl = self.model.reflection_through(a);
        (x - &x.permute_axes(&refl)).scaled(&rat(1, 2))
    }

    /// Resolves `α(a_j, a_k)` into the spanning set.
    fn alpha_axes(&self, j: Axis, k: Axis) -> Result<Element, AlgebraError> {
        let d = self.model.distance(j, k);
        match d {
            0 => Ok(Element::axis(j).scaled(&rat(15, 8))),
            1 => Ok(Element::from_label(Label::Alpha1)),
            2 if self.model.period() % 2 == 1 || j % 2 == 1 => {
                Ok(Element::from_label(Label::Alpha2))
            }
            2 => self.rewrite_even_pair(j, k),
            _ => Err(AlgebraError::NotClosed {
                x: Label::Axis(j),
                y: Label::Axis(k),
                detail: format!("no alpha-resolution at distance {d}"),
            }),
        }
    }

    /// The base rewrite of `α(f, f^{τ_e})` through the two α-generators:
    /// `α(f,f^{τ_e}) = α₂ − K(e−f) − c(f^{τ_e}−e^{τ_f}) − (1/16)(e^{τ_fτ_e}−f^{τ_eτ_f})`.
    fn rewrite_base(&self) -> Element {
        let p = self.model.period();
        let l1 = self.lambda1();
        let l2 = self.bracket4(
            Label::Axis(self.model.axis_e()),
            Label::Axis(self.model.tau_f_of(self.model.axis_e())),
        );
        let k = eq8_coefficient_k(&l1, &l2);
        let c = eq8_coefficient_c(&l1);
        let mut out = Element::from_label(Label::Alpha2);
        out.add_scaled(&-k.clone(), &(&Element::axis(p - 1) - &Element::axis(0)));
        out.add_scaled(&-c.clone(), &(&Element::axis(p - 2) - &Element::axis(1)));
        out.add_scaled(
            &rat(-1, 16),
            &(&Element::axis(self.model.reduce(p as i64 - 3)) - &Element::axis(2 % p)),
        );
        out
    }

    /// Resolves an even-parity distance-2 `α` on an even orbit by carrying
    /// the base rewrite along every group element mapping the base pair to
    /// the requested one; all transports must agree.
    fn rewrite_even_pair(&self, j: Axis, k: Axis) -> Result<Element, AlgebraError> {
        let p = self.model.period();
        let base_pair = {
            let mut s = [0, p - 2];
            s.sort_unstable();
            s
        };
        let target = {
            let mut s = [j, k];
            s.sort_unstable();
            s
        };
        let base = self.rewrite_base();
        let mut result: Option<Element> = None;
        for g in self.model.group_elements() {
            let mut image = [g[base_pair[0]], g[base_pair[1]]];
            image.sort_unstable();
            if image != target {
                continue;
            }
            let carried = base.permute_axes(&g);
            match &result {
                None => result = Some(carried),
                Some(prev) => {
                    if !self.vanishes(&(prev - &carried)) {
                        return Err(AlgebraError::DerivationConflict {
                            x: Label::Axis(j),
                            y: Label::Axis(k),
                            left: prev.to_string(),
                            right: carried.to_string(),
                        });
                    }
                }
            }
        }
        result.ok_or_else(|| AlgebraError::NotClosed {
            x: Label::Axis(j),
            y: Label::Axis(k),
            detail: "pair not reachable from the rewrite base pair".to_owned(),
        })
    }

    /// `φ_a¹(a_x)` through the α-resolution:
    /// `2α(a,x) − (4(a|x) − 1/8)a + (1/8)φ_a⁺(x)`.
    fn phi1_axis(&self, a: Axis, x: Axis) -> Result<Element, AlgebraError> {
        let mut out = self.alpha_axes(a, x)?.scaled(&Rational::from_int(2));
        let ax = self.bracket4(Label::Axis(a), Label::Axis(x));
        let coeff = &(&Rational::from_int(4) * &ax) - &rat(1, 8);
        out.add_scaled(&-coeff, &Element::axis(a));
        out.add_scaled(&rat(1, 8), &self.phi_plus(a, &Element::axis(x)));
        Ok(out)
    }

    /// `φ_a¹(v)` for a general element, through installed products:
    /// `2a·v − 4(a|v)a − (1/8)φ_a⁻(v)`.
    fn phi1_elem(&self, a: Axis, v: &Element) -> Result<Element, AlgebraError> {
        let mut out = self.mul_label_elem(Label::Axis(a), v)?.scaled(&Rational::from_int(2));
        let av = &Rational::from_int(16) * &self.gram.pair(&Element::axis(a), v);
        out.add_scaled(&-av, &Element::axis(a));
        out.add_scaled(&rat(-1, 8), &self.phi_minus(a, v));
        Ok(out)
    }

    /// `a·α(a,x) = (7/16)α + (3(a|x) − 25/2⁸)a + (7/2⁹)(x + x^{τ_a})`
    /// for an axis occurring as an argument of the α.
    fn argument_alpha_product(&self, a: Axis, x: Axis, alpha: &Element) -> Element {
        let mut out = alpha.scaled(&rat(7, 16));
        let ax = self.bracket4(Label::Axis(a), Label::Axis(x));
        out.add_scaled(
            &(&(&Rational::from_int(3) * &ax) - &rat(25, 256)),
            &Element::axis(a),
        );
        let mirrored = self.model.reduce(2 * a as i64 - x as i64);
        out.add_scaled(
            &rat(7, 512),
            &(&Element::axis(x) + &Element::axis(mirrored)),
        );
        out
    }

    /// `a·α(b, b^{τ_a})` for an axis that is not an argument:
    /// `8⟨a,α⟩a + (8/3)φ_a¹((4(a|b) − 19/2⁷)b + (7/2⁸)a^{τ_b})`.
    fn outside_alpha_product(&self, a: Axis, b: Axis) -> Result<Element, AlgebraError> {
        let ab = self.gram.bracket(Label::Axis(a), Label::Axis(b));
        let b_ta = self.model.reduce(2 * a as i64 - b as i64);
        let b_bta = self.gram.bracket(Label::Axis(b), Label::Axis(b_ta));
        let pairing = adjacent_alpha_bracket(&ab, &b_bta);
        let mut out = Element::axis(a).scaled(&(&Rational::from_int(8) * &pairing));
        let a_tb = self.model.reduce(2 * b as i64 - a as i64);
        let coeff_b = &(&Rational::from_int(16) * &ab) - &rat(19, 128);
        let mut inner = self.phi1_axis(a, b)?.scaled(&coeff_b);
        inner.add_scaled(&rat(7, 256), &self.phi1_axis(a, a_tb)?);
        out.add_scaled(&rat(8, 3), &inner);
        Ok(out)
    }

    /// `α(a,x)·α(a,y)` by literal evaluation of the quadratic α-product
    /// formula, through already-installed products.
    fn alpha_product(&self, a: Axis, x: Axis, y: Axis) -> Result<Element, AlgebraError> {
        let alpha_ax = self.alpha_axes(a, x)?;
        let alpha_ay = self.alpha_axes(a, y)?;
        let mut big_a = self.mul_label_elem(Label::Axis(y), &alpha_ax)?;
        big_a = &big_a + &self.mul_label_elem(Label::Axis(x), &alpha_ay)?;

        let xp = self.phi_plus(a, &Element::axis(x));
        let yp = self.phi_plus(a, &Element::axis(y));
        let xpyp = self.mul_elems(&xp, &yp)?;

        let ax = self.bracket4(Label::Axis(a), Label::Axis(x));
        let ay = self.bracket4(Label::Axis(a), Label::Axis(y));
        let scalar = &(&(&Rational::from_int(6) * &(&ax * &ay))
            - &(&rat(7, 32) * &(&ax + &ay)))
            + &rat(1, 128);

        let mut inner = big_a.clone();
        inner.add_scaled(
            &-(&rat(7, 4) * &(&ax - &rat(1, 32))),
            &Element::axis(y),
        );
        inner.add_scaled(
            &-(&rat(7, 4) * &(&ay - &rat(1, 32))),
            &Element::axis(x),
        );

        let mut out = self.phi_plus(a, &big_a).scaled(&rat(3, 16));
        out.add_scaled(&rat(7, 256), &xpyp);
        out.add_scaled(&scalar, &Element::axis(a));
        out.add_scaled(&rat(-1, 3), &self.phi1_elem(a, &inner)?);
        Ok(out)
    }

    /// Step 2: axis·axis products at distance ≤ 2.
    fn install_axis_products(&mut self) -> Result<(), AlgebraError> {
        let p = self.model.period();
        for j in 0..p {
            self.propagate(
                Label::Axis(j),
                Label::Axis(j),
                Element::axis(j).scaled(&Rational::from_int(2)),
            )?;
        }
        for j in 0..p {
            for k in (j + 1)..p {
                if self.model.distance(j, k) > 2 {
                    continue;
                }
                let mut prod = self.alpha_axes(j, k)?;
                prod.add_scaled(&rat(1, 16), &(&Element::axis(j) + &Element::axis(k)));
                self.propagate(Label::Axis(j), Label::Axis(k), prod)?;
            }
        }
        Ok(())
    }

    /// Step 3: axis·α products.
    fn install_axis_alpha_products(&mut self) -> Result<(), AlgebraError> {
        let p = self.model.period();
        if !self.gram.basis().contains(&Label::Alpha1) {
            return Ok(());
        }
        let e = self.model.axis_e();
        let f = self.model.axis_f();
        let alpha1 = Element::from_label(Label::Alpha1);
        // α₁ = α(e,f): both generators are arguments.
        let e_a1 = self.argument_alpha_product(e, f, &alpha1);
        self.propagate(Label::Axis(e), Label::Alpha1, e_a1)?;
        let f_a1 = self.argument_alpha_product(f, e, &alpha1);
        self.propagate(Label::Axis(f), Label::Alpha1, f_a1)?;

        if !self.gram.basis().contains(&Label::Alpha2) {
            return Ok(());
        }
        let etf = self.model.tau_f_of(e);
        let alpha2 = Element::from_label(Label::Alpha2);
        // α₂ = α(e, e^{τ_f}): e is an argument, f is not.
        let e_a2 = self.argument_alpha_product(e, etf, &alpha2);
        self.propagate(Label::Axis(e), Label::Alpha2, e_a2)?;
        let f_a2 = self.outside_alpha_product(f, e)?;
        self.propagate(Label::Axis(f), Label::Alpha2, f_a2)?;
        debug_assert!(
            (0..p).all(|j| self.table.contains_key(&key(Label::Axis(j), Label::Alpha2)))
        );
        Ok(())
    }

    /// Step 4 (order-6 orbit only): distance-3 axis products, solved from
    /// the eight-term rewrite of `α(f,f^{τ_e})` paired with `e`.
    fn install_distance_three_products(&mut self) -> Result<(), AlgebraError> {
        if self.model.period() != 6 {
            return Ok(());
        }
        let e = self.model.axis_e(); // a_5; the distance-3 partner is a_2.
        let l1 = self.lambda1();
        let l2 = self.bracket4(Label::Axis(e), Label::Axis(1));
        let k = eq8_coefficient_k(&l1, &l2);
        let c = eq8_coefficient_c(&l1);
        let sixteen = Rational::from_int(16);
        // e·a_2 = e·a_3 + 16K(e·e − e·f) + 16c(e·a_4 − e·a_1) − 16 e·α₂
        //       + 16 e·α(f,f^{τ_e}).
        let mut prod = self.product_label(Label::Axis(e), Label::Axis(3))?;
        let ee = self.product_label(Label::Axis(e), Label::Axis(e))?;
        let ef = self.product_label(Label::Axis(e), Label::Axis(0))?;
        prod.add_scaled(&(&sixteen * &k), &(&ee - &ef));
        let e4 = self.product_label(Label::Axis(e), Label::Axis(4))?;
        let e1 = self.product_label(Label::Axis(e), Label::Axis(1))?;
        prod.add_scaled(&(&sixteen * &c), &(&e4 - &e1));
        prod.add_scaled(&-sixteen.clone(), &self.product_label(Label::Axis(e), Label::Alpha2)?);
        prod.add_scaled(&sixteen, &self.outside_alpha_product(e, 0)?);
        self.propagate(Label::Axis(e), Label::Axis(2), prod)
    }

    /// Step 5: α·α products, each installed through two independent
    /// derivations with different axis roles.
    fn install_alpha_alpha_products(&mut self) -> Result<(), AlgebraError> {
        if !self.gram.basis().contains(&Label::Alpha1) {
            return Ok(());
        }
        let p = self.model.period();
        let e = self.model.axis_e();
        let f = self.model.axis_f();
        let a11 = self.alpha_product(e, f, f)?;
        self.propagate(Label::Alpha1, Label::Alpha1, a11)?;
        let a11_alt = self.alpha_product(f, e, e)?;
        self.propagate(Label::Alpha1, Label::Alpha1, a11_alt)?;

        if !self.gram.basis().contains(&Label::Alpha2) {
            return Ok(());
        }
        let etf = self.model.tau_f_of(e); // a_1
        let a12 = self.alpha_product(e, f, etf)?;
        self.propagate(Label::Alpha1, Label::Alpha2, a12)?;
        let a12_alt = self.alpha_product(1, 2 % p, 3 % p)?;
        self.propagate(Label::Alpha1, Label::Alpha2, a12_alt)?;

        let a22 = self.alpha_product(e, etf, etf)?;
        self.propagate(Label::Alpha2, Label::Alpha2, a22)?;
        let a22_alt = self.alpha_product(etf, e, e)?;
        self.propagate(Label::Alpha2, Label::Alpha2, a22_alt)?;
        Ok(())
    }

    /// Cross-checks tying the finished table back to the closed forms it
    /// was not directly seeded from.
    fn cross_check(&self) -> Result<(), AlgebraError> {
        let e = self.model.axis_e();
        let f = self.model.axis_f();
        if self.model.period() >= 2 {
            // e·α(f,f^{τ_e}) from the table must match the projection
            // expansion used for non-argument axes.
            let fte = self.model.tau_e_of(f);
            let alpha_ffte = self.alpha_axes(f, fte)?;
            let via_table = self.mul_label_elem(Label::Axis(e), &alpha_ffte)?;
            let via_expansion = self.outside_alpha_product(e, f)?;
            if !self.vanishes(&(&via_table - &via_expansion)) {
                return Err(AlgebraError::DerivationConflict {
                    x: Label::Axis(e),
                    y: Label::Axis(fte),
                    left: via_table.to_string(),
                    right: via_expansion.to_string(),
                });
            }
            // f·α(f,f^{τ_e}): argument form against the table.
            let via_table_f = self.mul_label_elem(Label::Axis(f), &alpha_ffte)?;
            let via_argument = self.argument_alpha_product(f, fte, &alpha_ffte);
            if !self.vanishes(&(&via_table_f - &via_argument)) {
                return Err(AlgebraError::DerivationConflict {
                    x: Label::Axis(f),
                    y: Label::Axis(fte),
                    left: via_table_f.to_string(),
                    right: via_argument.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Builds the complete multiplication table for orbit size `n` at the given
/// parameters, or reports exactly why the parameters are inadmissible.
pub fn build_algebra(n: usize, params: ParamRecord) -> Result<DihedralAlgebra, AlgebraError> {
    if n > 6 {
        return Err(AlgebraError::UnsupportedOrbit(n));
    }
    let model = build_orbit(n)?;
    let l1 = params.lambda1().clone();
    let l2 = params.lambda2().clone();

    let system = constraint_system(n)?;
    for constraint in &system.constraints {
        let value = constraint.poly.eval(&l1, &l2);
        if !value.is_zero() {
            return Err(AlgebraError::ConstraintViolated {
                provenance: constraint.provenance.to_owned(),
                value,
                lambda1: l1,
                lambda2: l2,
            });
        }
    }
    if let Some(condition) = nondegeneracy_violation(n, &l1, &l2) {
        return Err(AlgebraError::Degenerate { condition });
    }

    let gram_table = derive_gram(&model, &params)?;
    let basis = canonical_basis(n);
    let mut builder = Builder {
        model: &model,
        gram: &gram_table,
        table: BTreeMap::new(),
        cap: 10 * basis.len() * basis.len(),
    };
    builder.install_axis_products()?;
    builder.install_axis_alpha_products()?;
    builder.install_distance_three_products()?;
    builder.install_alpha_alpha_products()?;
    builder.cross_check()?;

    for (i, &x) in basis.iter().enumerate() {
        for &y in &basis[i..] {
            if !builder.table.contains_key(&key(x, y)) {
                return Err(AlgebraError::NotClosed {
                    x,
                    y,
                    detail: "closure finished without deriving this product".to_owned(),
                });
            }
        }
    }
    let table = builder.table;

    let gram = gram_table.to_matrix();
    let psd = psd_certificate(&gram).expect("derived Gram matrix is square and symmetric");
    let rank = gram.rank();
    let radical = gram.nullspace();
    Ok(DihedralAlgebra {
        n,
        model,
        params,
        basis,
        gram_table,
        gram,
        table,
        rank,
        radical,
        psd,
    })
}

impl DihedralAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> &OrbitModel {
        &self.model
    }

    pub fn params(&self) -> &ParamRecord {
        &self.params
    }

    pub fn basis(&self) -> &[Label] {
        &self.basis
    }

    pub fn gram_table(&self) -> &GramTable {
        &self.gram_table
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Rank of the Gram form on the spanning set.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Kernel basis of the Gram form (empty when the form is definite).
    pub fn radical(&self) -> &[Vec<Rational>] {
        &self.radical
    }

    pub fn psd(&self) -> &PsdCertificate {
        &self.psd
    }

    /// The structure constant row for a pair of basis labels.
    pub fn product_labels(&self, x: Label, y: Label) -> &Element {
        self.table
            .get(&key(x, y))
            .expect("completed table covers all basis pairs")
    }

    /// Bilinear product of two coordinate vectors.
    pub fn product(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero();
        for (&lx, cx) in u.iter() {
            for (&ly, cy) in v.iter() {
                out.add_scaled(&(cx * cy), self.product_labels(lx, ly));
            }
        }
        out
    }

    /// `a_j · v` for an axis index.
    pub fn axis_product(&self, a: Axis, v: &Element) -> Element {
        self.product(&Element::axis(a), v)
    }

    /// `α(a, x) = a·x − (1/16)(a + x)`.
    pub fn alpha_of(&self, a: Axis, x: &Element) -> Element {
        let mut out = self.axis_product(a, x);
        out.add_scaled(&rat(-1, 16), &(&Element::axis(a) + x));
        out
    }

    /// True when `v` is zero as an element of the algebra: it pairs to zero
    /// with the whole spanning set.  At definite parameter points this is
    /// plain coordinate vanishing; at degenerate points (where the spanning
    /// set satisfies linear relations) it identifies coordinate vectors that
    /// name the same element.
    pub fn is_zero_element(&self, v: &Element) -> bool {
        self.basis
            .iter()
            .all(|&b| self.pair(v, &Element::from_label(b)).is_zero())
    }

    /// True when `u` and `v` name the same algebra element.
    pub fn elements_equal(&self, u: &Element, v: &Element) -> bool {
        self.is_zero_element(&(u - v))
    }

    /// `⟨x, y⟩` for basis labels.
    pub fn bracket(&self, x: Label, y: Label) -> Rational {
        self.gram_table.bracket(x, y)
    }

    /// `⟨u, v⟩` for coordinate vectors.
    pub fn pair(&self, u: &Element, v: &Element) -> Rational {
        self.gram_table.pair(u, v)
    }

    /// Applies a generator involution to a coordinate vector.
    pub fn apply_tau(&self, which: Generator, v: &Element) -> Element {
        let perm = match which {
            Generator::E => self.model.tau_e(),
            Generator::F => self.model.tau_f(),
        };
        v.permute_axes(perm)
    }

    /// The matrix of a generator involution in canonical basis order.
    pub fn tau_matrix(&self, which: Generator) -> Matrix {
        let k = self.basis.len();
        let mut m = Matrix::zeros(k, k);
        let perm = match which {
            Generator::E => self.model.tau_e(),
            Generator::F => self.model.tau_f(),
        };
        for (col, &label) in self.basis.iter().enumerate() {
            let image = label_perm(label, perm);
            let row = self
                .basis
                .iter()
                .position(|&b| b == image)
                .expect("basis closed under the involutions");
            m[(row, col)] = Rational::one();
        }
        m
    }

    /// Projection of `v` to an eigen-channel of the axis `a_j`.
    pub fn project_channel(&self, a: Axis, v: &Element, channel: Channel) -> Element {
        let refl = self.model.reflection_through(a);
        let reflected = v.permute_axes(&refl);
        match channel {
            Channel::Plus => (v + &reflected).scaled(&rat(1, 2)),
            Channel::Minus => (v - &reflected).scaled(&rat(1, 2)),
            Channel::One => {
                // φ_a¹(v) = 2a·v − 4(a|v)a − (1/8)φ_a⁻(v).
                let mut out = self.axis_product(a, v).scaled(&Rational::from_int(2));
                let av4 = &Rational::from_int(16) * &self.pair(&Element::axis(a), v);
                out.add_scaled(&-av4, &Element::axis(a));
                out.add_scaled(
                    &rat(-1, 8),
                    &self.project_channel(a, v, Channel::Minus),
                );
                out
            }
            Channel::Zero => {
                // φ_a⁰ = φ_a⁺ − φ_a¹ − (a|v)·a (the projection to the a-line).
                let mut out = self.project_channel(a, v, Channel::Plus);
                out.add_scaled(
                    &-Rational::one(),
                    &self.project_channel(a, v, Channel::One),
                );
                let av4 = &Rational::from_int(4) * &self.pair(&Element::axis(a), v);
                out.add_scaled(&-av4, &Element::axis(a));
                out
            }
        }
    }

    /// Replaces one structure constant, bypassing every consistency check.
    /// Exists only so tests can confirm that verification catches corrupted
    /// tables.
    #[doc(hidden)]
    pub fn corrupt_structure_constant(&mut self, x: Label, y: Label, value: Element) {
        self.table.insert(key(x, y), value);
    }

    /// Full JSON dump: parameters on both scales, basis, structure
    /// constants, Gram matrix, involutions, and positivity data.
    pub fn to_json(&self) -> serde_json::Value {
        let label_str = |l: &Label| l.to_string();
        let elem_json = |e: &Element| {
            let map: serde_json::Map<String, serde_json::Value> = e
                .iter()
                .map(|(l, c)| (label_str(l), serde_json::Value::String(c.to_string())))
                .collect();
            serde_json::Value::Object(map)
        };
        let mut table = serde_json::Map::new();
        for &x in &self.basis {
            let mut row = serde_json::Map::new();
            for &y in &self.basis {
                row.insert(label_str(&y), elem_json(self.product_labels(x, y)));
            }
            table.insert(label_str(&x), serde_json::Value::Object(row));
        }
        let matrix_json = |m: &Matrix| {
            serde_json::Value::Array(
                (0..m.rows())
                    .map(|i| {
                        serde_json::Value::Array(
                            m.row(i)
                                .iter()
                                .map(|c| serde_json::Value::String(c.to_string()))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        serde_json::json!({
            "n": self.n,
            "period": self.model.period(),
            "lambda1": self.params.lambda1().to_string(),
            "lambda2": self.params.lambda2().to_string(),
            "ef": self.params.ef().to_string(),
            "e_etf": self.params.e_etf().to_string(),
            "basis": self.basis.iter().map(label_str).collect::<Vec<_>>(),
            "table": table,
            "gram": matrix_json(&self.gram),
            "tau_e": matrix_json(&self.tau_matrix(Generator::E)),
            "tau_f": matrix_json(&self.tau_matrix(Generator::F)),
            "rank": self.rank,
            "radical": self.radical.iter().map(|v| {
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "psd": {
                "is_psd": self.psd.is_psd,
                "is_pd": self.psd.is_pd,
                "rank": self.psd.rank,
            },
        })
    }

    /// Flattens the table as CSV rows `x,y,basis-label,coefficient`.
    pub fn table_csv(&self) -> String {
        let mut out = String::from("x,y,label,coefficient\n");
        for ((x, y), value) in &self.table {
            for (l, c) in value.iter() {
                out.push_str(&format!("{x},{y},{l},{c}\n"));
            }
        }
        out
    }
}
