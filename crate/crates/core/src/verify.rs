//! Independent verification of the algebraic axioms on a completed
//! multiplication table.
//!
//! Every check here re-derives a property the construction never installs
//! directly, so a corrupted structure constant or a wrong closed form shows
//! up as a failed check.  All element comparisons are made modulo the Gram
//! radical: at degenerate parameter points the spanning set satisfies linear
//! relations, and two coordinate vectors name the same algebra element
//! whenever their difference pairs to zero with the whole spanning set.

use crate::algebra::DihedralAlgebra;
use crate::element::Element;
use crate::linalg::Matrix;
use crate::orbit::Generator;
use crate::rational::{rat, Rational};

/// Outcome of a single named check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    /// Short stable identifier of the property checked.
    pub name: String,
    /// Whether the property held.
    pub passed: bool,
    /// Human-readable summary; names the first counterexample on failure.
    pub detail: String,
}

/// The full verification report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AxiomReport {
    /// Orbit size of the verified algebra.
    pub n: usize,
    /// All individual check outcomes.
    pub checks: Vec<CheckResult>,
}

impl AxiomReport {
    /// True when every check passed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for check in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            )?;
        }
        write!(
            f,
            "{}: {}/{} checks passed",
            if self.all_passed() { "OK" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        )
    }
}

struct Checker<'a> {
    alg: &'a DihedralAlgebra,
    checks: Vec<CheckResult>,
}

impl Checker<'_> {
    fn record(&mut self, name: &str, failure: Option<String>, ok_detail: String) {
        match failure {
            None => self.checks.push(CheckResult {
                name: name.to_owned(),
                passed: true,
                detail: ok_detail,
            }),
            Some(detail) => self.checks.push(CheckResult {
                name: name.to_owned(),
                passed: false,
                detail,
            }),
        }
    }

    fn basis_elements(&self) -> Vec<Element> {
        self.alg
            .basis()
            .iter()
            .map(|&l| Element::from_label(l))
            .collect()
    }

    /// The matrix of left multiplication by `v` in the canonical basis.
    fn adjoint_matrix(&self, v: &Element) -> Matrix {
        let basis = self.alg.basis();
        let k = basis.len();
        let mut m = Matrix::zeros(k, k);
        for (col, &x) in basis.iter().enumerate() {
            let image = self.alg.product(v, &Element::from_label(x));
            for (row, &b) in basis.iter().enumerate() {
                m[(row, col)] = image.coeff(b);
            }
        }
        m
    }

    fn column_element(&self, m: &Matrix, col: usize) -> Element {
        let mut out = Element::zero();
        for (row, &b) in self.alg.basis().iter().enumerate() {
            let c = m[(row, col)].clone();
            if !c.is_zero() {
                out.add_scaled(&c, &Element::from_label(b));
            }
        }
        out
    }

    /// True when every column of `m` is zero as an algebra element.
    fn matrix_vanishes(&self, m: &Matrix) -> Option<usize> {
        (0..m.cols()).find(|&col| !self.alg.is_zero_element(&self.column_element(m, col)))
    }

    fn commutativity(&mut self) {
        let basis = self.basis_elements();
        let mut failure = None;
        'outer: for x in &basis {
            for y in &basis {
                let xy = self.alg.product(x, y);
                let yx = self.alg.product(y, x);
                if !self.alg.elements_equal(&xy, &yx) {
                    failure = Some(format!("{x}·{y} ≠ {y}·{x}"));
                    break 'outer;
                }
            }
        }
        self.record(
            "commutativity",
            failure,
            "x·y = y·x on all basis pairs".to_owned(),
        );
    }

    fn form_invariance(&mut self) {
        let basis = self.basis_elements();
        let mut failure = None;
        'outer: for x in &basis {
            for y in &basis {
                let xy = self.alg.product(x, y);
                for z in &basis {
                    let yz = self.alg.product(y, z);
                    if self.alg.pair(&xy, z) != self.alg.pair(x, &yz) {
                        failure = Some(format!("⟨{x}·{y},{z}⟩ ≠ ⟨{x},{y}·{z}⟩"));
                        break 'outer;
                    }
                }
            }
        }
        self.record(
            "form-invariance",
            failure,
            "⟨xy,z⟩ = ⟨x,yz⟩ on all basis triples".to_owned(),
        );
    }

    fn axis_normalization(&mut self) {
        let mut failure = None;
        for j in 0..self.alg.model().period() {
            let a = Element::axis(j);
            let sq = self.alg.product(&a, &a);
            if !self.alg.elements_equal(&sq, &a.scaled(&Rational::from_int(2))) {
                failure = Some(format!("a{j}·a{j} ≠ 2·a{j}"));
                break;
            }
            if self.alg.pair(&a, &a) != rat(1, 4) {
                failure = Some(format!("⟨a{j},a{j}⟩ ≠ 1/4"));
                break;
            }
        }
        self.record(
            "axis-normalization",
            failure,
            "a·a = 2a and ⟨a,a⟩ = 1/4 for every axis".to_owned(),
        );
    }

    /// `(M−2)·M·(M−1/2)·(M−1/16) = 0` for the adjoint `M` of each axis:
    /// the spectrum is contained in {2, 0, 1/2, 1/16}.
    fn adjoint_annihilator(&mut self) {
        let k = self.alg.basis().len();
        let mut failure = None;
        for j in 0..self.alg.model().period() {
            let m = self.adjoint_matrix(&Element::axis(j));
            let shift = |c: Rational| {
                let mut s = m.clone();
                for i in 0..k {
                    s[(i, i)] = &s[(i, i)] - &c;
                }
                s
            };
            let ann = shift(Rational::from_int(2))
                .mul_mat(&m)
                .mul_mat(&shift(rat(1, 2)))
                .mul_mat(&shift(rat(1, 16)));
            if let Some(col) = self.matrix_vanishes(&ann) {
                failure = Some(format!(
                    "(ad−2)(ad)(ad−1/2)(ad−1/16) ≠ 0 for axis a{j} on basis column {col}"
                ));
                break;
            }
        }
        self.record(
            "adjoint-annihilator",
            failure,
            "every axis adjoint satisfies (t−2)t(t−1/2)(t−1/16)".to_owned(),
        );
    }

    /// The reflection attached to each axis acts by −1 exactly on the
    /// 1/16-part and by +1 on the rest: `ad·P⁻ = (1/16)P⁻` and the even
    /// part is annihilated by `(ad−2)·ad·(ad−1/2)`.
    fn reflection_eigensigns(&mut self) {
        let k = self.alg.basis().len();
        let mut failure = None;
        'outer: for j in 0..self.alg.model().period() {
            let m = self.adjoint_matrix(&Element::axis(j));
            let refl = self.alg.model().reflection_through(j);
            let mut r = Matrix::zeros(k, k);
            for (col, &label) in self.alg.basis().iter().enumerate() {
                let image = Element::from_label(label).permute_axes(&refl);
                for (row, &b) in self.alg.basis().iter().enumerate() {
                    r[(row, col)] = image.coeff(b);
                }
            }
            let half = rat(1, 2);
            let mut p_minus = Matrix::zeros(k, k);
            let mut p_plus = Matrix::zeros(k, k);
            for i in 0..k {
                for l in 0..k {
                    let delta = if i == l { Rational::one() } else { Rational::zero() };
                    p_minus[(i, l)] = &half * &(&delta - &r[(i, l)]);
                    p_plus[(i, l)] = &half * &(&delta + &r[(i, l)]);
                }
            }
            // ad acts as 1/16 on the odd part.
            let mut odd = m.mul_mat(&p_minus);
            for i in 0..k {
                for l in 0..k {
                    odd[(i, l)] = &odd[(i, l)] - &(&rat(1, 16) * &p_minus[(i, l)]);
                }
            }
            if let Some(col) = self.matrix_vanishes(&odd) {
                failure = Some(format!(
                    "axis a{j}: adjoint is not 1/16 on the reflection-odd part (column {col})"
                ));
                break 'outer;
            }
            // The even part carries only the eigenvalues {2, 0, 1/2}.
            let shift = |c: Rational| {
                let mut s = m.clone();
                for i in 0..k {
                    s[(i, i)] = &s[(i, i)] - &c;
                }
                s
            };
            let even = shift(Rational::from_int(2))
                .mul_mat(&m)
                .mul_mat(&shift(half.clone()))
                .mul_mat(&p_plus);
            if let Some(col) = self.matrix_vanishes(&even) {
                failure = Some(format!(
                    "axis a{j}: reflection-even part has spectrum outside {{2,0,1/2}} (column {col})"
                ));
                break 'outer;
            }
        }
        self.record(
            "reflection-eigensigns",
            failure,
            "each reflection is −1 on the 1/16-part and +1 elsewhere".to_owned(),
        );
    }

    fn involutions_are_automorphisms(&mut self) {
        let basis = self.basis_elements();
        let mut failure = None;
        'outer: for which in [Generator::E, Generator::F] {
            let perm_sq: Vec<Element> = basis
                .iter()
                .map(|v| self.alg.apply_tau(which, &self.alg.apply_tau(which, v)))
                .collect();
            for (v, w) in basis.iter().zip(&perm_sq) {
                if v != w {
                    failure = Some(format!("τ_{which:?} is not an involution at {v}"));
                    break 'outer;
                }
            }
            for x in &basis {
                for y in &basis {
                    let lhs = self.alg.apply_tau(which, &self.alg.product(x, y));
                    let rhs = self
                        .alg
                        .product(&self.alg.apply_tau(which, x), &self.alg.apply_tau(which, y));
                    if !self.alg.elements_equal(&lhs, &rhs) {
                        failure = Some(format!("τ_{which:?}({x}·{y}) ≠ τ({x})·τ({y})"));
                        break 'outer;
                    }
                    if self.alg.pair(&self.alg.apply_tau(which, x), &self.alg.apply_tau(which, y))
                        != self.alg.pair(x, y)
                    {
                        failure = Some(format!("τ_{which:?} does not preserve ⟨{x},{y}⟩"));
                        break 'outer;
                    }
                }
            }
        }
        self.record(
            "involutions-are-automorphisms",
            failure,
            "τ_e and τ_f are form-preserving algebra involutions".to_owned(),
        );
    }

    fn rotation_order(&mut self) {
        let model = self.alg.model();
        let p = model.period();
        let rho: Vec<usize> = (0..p).map(|j| model.rho_of(j)).collect();
        let mut power: Vec<usize> = (0..p).collect();
        for _ in 0..self.alg.n() {
            power = power.iter().map(|&j| rho[j]).collect();
        }
        let failure = if power.iter().enumerate().all(|(j, &img)| j == img) {
            None
        } else {
            Some(format!("(τ_eτ_f)^{} is not the identity on the axes", self.alg.n()))
        };
        self.record(
            "rotation-order",
            failure,
            format!("(τ_eτ_f)^{} fixes every axis", self.alg.n()),
        );
    }

    /// Eigenspace of the adjoint modulo the radical: vectors `v` with
    /// `gram·(M − μ)v = 0`.
    fn eigenspace_mod_radical(&self, m: &Matrix, mu: &Rational) -> Vec<Vec<Rational>> {
        let k = self.alg.basis().len();
        let mut shifted = m.clone();
        for i in 0..k {
            shifted[(i, i)] = &shifted[(i, i)] - mu;
        }
        self.alg.gram().mul_mat(&shifted).nullspace()
    }

    fn vec_to_element(&self, v: &[Rational]) -> Element {
        let mut out = Element::zero();
        for (c, &b) in v.iter().zip(self.alg.basis()) {
            if !c.is_zero() {
                out.add_scaled(c, &Element::from_label(b));
            }
        }
        out
    }

    /// Rank-based span membership: `target` columns plus candidate.
    fn in_span(&self, span: &[Vec<Rational>], candidate: &Element) -> bool {
        let dense: Vec<Rational> = self
            .alg
            .basis()
            .iter()
            .map(|&b| candidate.coeff(b))
            .collect();
        let mut rows: Vec<Vec<Rational>> = span.to_vec();
        let base_rank = if rows.is_empty() {
            0
        } else {
            Matrix::from_rows(rows.clone()).rank()
        };
        rows.push(dense);
        Matrix::from_rows(rows).rank() == base_rank
    }

    /// The fusion rules of the eigen-decomposition around each axis:
    /// E(1/2)·E(1/2) ⊆ ⟨a⟩⊕E(0), E(1/2)·E(1/16) ⊆ E(1/16), and
    /// E(1/16)·E(1/16) ⊆ ⟨a⟩⊕E(0)⊕E(1/2), all modulo the radical.
    fn fusion_rules(&mut self) {
        let mut failure = None;
        'outer: for j in 0..self.alg.model().period() {
            let m = self.adjoint_matrix(&Element::axis(j));
            let e_half = self.eigenspace_mod_radical(&m, &rat(1, 2));
            let e_sixteenth = self.eigenspace_mod_radical(&m, &rat(1, 16));
            let e_zero = self.eigenspace_mod_radical(&m, &Rational::zero());
            let axis_dense: Vec<Rational> = self
                .alg
                .basis()
                .iter()
                .map(|&b| Element::axis(j).coeff(b))
                .collect();

            let mut span_axis_zero = e_zero.clone();
            span_axis_zero.push(axis_dense.clone());
            let mut span_axis_zero_half = span_axis_zero.clone();
            span_axis_zero_half.extend(e_half.iter().cloned());

            for u in &e_half {
                let ue = self.vec_to_element(u);
                for v in &e_half {
                    let prod = self.alg.product(&ue, &self.vec_to_element(v));
                    if !self.in_span(&span_axis_zero, &prod) {
                        failure = Some(format!(
                            "axis a{j}: E(1/2)·E(1/2) escapes ⟨a⟩⊕E(0)"
                        ));
                        break 'outer;
                    }
                }
                for v in &e_sixteenth {
                    let prod = self.alg.product(&ue, &self.vec_to_element(v));
                    if !self.in_span(&e_sixteenth, &prod) {
                        failure = Some(format!(
                            "axis a{j}: E(1/2)·E(1/16) escapes E(1/16)"
                        ));
                        break 'outer;
                    }
                }
            }
            for u in &e_sixteenth {
                let ue = self.vec_to_element(u);
                for v in &e_sixteenth {
                    let prod = self.alg.product(&ue, &self.vec_to_element(v));
                    if !self.in_span(&span_axis_zero_half, &prod) {
                        failure = Some(format!(
                            "axis a{j}: E(1/16)·E(1/16) escapes ⟨a⟩⊕E(0)⊕E(1/2)"
                        ));
                        break 'outer;
                    }
                }
            }
        }
        self.record(
            "fusion-rules",
            failure,
            "eigen-channel products land in the allowed channels".to_owned(),
        );
    }

    fn gram_positivity(&mut self) {
        let psd = self.alg.psd();
        let failure = if psd.is_psd {
            None
        } else {
            Some("the Gram matrix has a negative direction".to_owned())
        };
        self.record(
            "gram-positive-semidefinite",
            failure,
            format!(
                "Gram matrix is positive semidefinite with rank {}",
                psd.rank
            ),
        );
    }
}

/// Runs every axiom check against a completed algebra.
pub fn verify_axioms(alg: &DihedralAlgebra) -> AxiomReport {
    let mut checker = Checker {
        alg,
        checks: Vec::new(),
    };
    checker.commutativity();
    checker.form_invariance();
    checker.axis_normalization();
    checker.adjoint_annihilator();
    checker.reflection_eigensigns();
    checker.involutions_are_automorphisms();
    checker.rotation_order();
    checker.fusion_rules();
    checker.gram_positivity();
    AxiomReport {
        n: alg.n(),
        checks: checker.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::classify::classification_table;
    use crate::element::Label;
    use crate::orbit::ParamRecord;

    #[test]
    fn all_classified_points_verify() {
        for row in classification_table() {
            let four = Rational::from_int(4);
            let params =
                ParamRecord::new(&four * &row.ef, &four * &row.e_etf).unwrap();
            let alg = build_algebra(row.n, params).unwrap();
            let report = verify_axioms(&alg);
            assert!(
                report.all_passed(),
                "n={} {}:\n{report}",
                row.n,
                row.label
            );
        }
    }

    #[test]
    fn corrupted_table_fails_verification() {
        let four = Rational::from_int(4);
        let params = ParamRecord::new(rat(1, 8), &four * &rat(1, 4)).unwrap();
        let mut alg = build_algebra(2, params).unwrap();
        let mut bogus = Element::axis(0).scaled(&rat(3, 7));
        bogus.add_scaled(&rat(1, 5), &Element::from_label(Label::Alpha1));
        alg.corrupt_structure_constant(Label::Axis(0), Label::Axis(1), bogus);
        let report = verify_axioms(&alg);
        assert!(!report.all_passed());
    }

    #[test]
    fn report_serialization_and_display() {
        let params = ParamRecord::new(rat(1, 8), Rational::one()).unwrap();
        let alg = build_algebra(2, params).unwrap();
        let report = verify_axioms(&alg);
        assert!(report.all_passed());
        let json = report.to_json();
        assert_eq!(json["n"], 2);
        assert!(json["checks"].as_array().unwrap().len() >= 8);
        let text = report.to_string();
        assert!(text.contains("PASS commutativity"));
        assert!(text.contains("checks passed"));
    }
}
