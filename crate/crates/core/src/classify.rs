//! Per-orbit polynomial constraint systems on `(λ₁, λ₂)` and their exact
//! solution: the classification of admissible inner products between two
//! distinct axes, labelled by the familiar dihedral class names 1A–6A.
//!
//! Each orbit size specializes the three-term relation among the
//! `φ_f⁻`-projections (and, for the two-axis orbit, the collapsed rewrite
//! relation between the two α-generators) into polynomial equations whose
//! rational roots are the admissible parameters.  Sub-orbits contribute
//! their own systems: the distance-2 pair on an even orbit generates a
//! smaller dihedral configuration whose constraints apply to `λ₂`, and the
//! antipodal pair on the order-6 orbit constrains the derived distance-3
//! pairing.

use crate::gram::derive_gram;
use crate::linalg::solve_quadratic;
use crate::orbit::{build_orbit, ParamRecord};
use crate::poly::Poly2;
use crate::rational::{rat, Rational};

/// Errors from classification queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("orbit size {0} outside the classification range (1..=6)")]
    UnsupportedOrbit(usize),
}

/// One polynomial equation `p(λ₁, λ₂) = 0` with a provenance note saying
/// which relation or orbit identification produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub poly: Poly2,
    pub provenance: &'static str,
}

/// The full equation system for one orbit size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub n: usize,
    pub constraints: Vec<Constraint>,
}

fn c(v: i64) -> Rational {
    Rational::from_int(v)
}

/// `K = (1/7)(2¹¹λ₁² − 9·2⁴λ₁ + 33/2⁴ + 2³λ₂)` as a polynomial.
fn k_poly() -> Poly2 {
    Poly2::from_terms(&[
        (2, 0, rat(2048, 7)),
        (1, 0, rat(-144, 7)),
        (0, 0, rat(33, 112)),
        (0, 1, rat(8, 7)),
    ])
}

/// `c = 2⁴λ₁ − 3/8` as a polynomial.
fn c_poly() -> Poly2 {
    Poly2::from_terms(&[(1, 0, c(16)), (0, 0, rat(-3, 8))])
}

/// The derived distance-3 pairing `(f|a₃)` on the order-6 orbit as a
/// polynomial in `(λ₁, λ₂)`:
/// `ν = 16K(1−λ₁) + 16c(λ₁−λ₂) + 30λ₁ − 29λ₂`.
pub fn nu_poly() -> Poly2 {
    let sixteen = Poly2::constant(c(16));
    let one_minus_l1 = &Poly2::constant(Rational::one()) - &Poly2::lambda1();
    let l1_minus_l2 = &Poly2::lambda1() - &Poly2::lambda2();
    let tail = Poly2::from_terms(&[(1, 0, c(30)), (0, 1, c(-29))]);
    &(&(&(&sixteen * &k_poly()) * &one_minus_l1) + &(&(&sixteen * &c_poly()) * &l1_minus_l2))
        + &tail
}

/// Collapsed rewrite relation for a two-axis orbit, in primitive form:
/// `256λ₁² − 32λ₁ + λ₂ − 1`.
fn two_axis_relation() -> Poly2 {
    Poly2::from_terms(&[(2, 0, c(256)), (1, 0, c(-32)), (0, 1, c(1)), (0, 0, c(-1))])
}

/// `φ_f⁻`-coordinate of the three-term relation on a fused three-axis
/// orbit, primitive form: `16384λ₁² − 1152λ₁ + 64λ₂ + 13`.
fn three_axis_relation() -> Poly2 {
    Poly2::from_terms(&[
        (2, 0, c(16384)),
        (1, 0, c(-1152)),
        (0, 1, c(64)),
        (0, 0, c(13)),
    ])
}

/// `φ_f⁻(e)`-coordinate of the three-term relation when the coordinate
/// vectors stay independent: `32768λ₁² − 512λ₁ + 128λ₂ − 9`.
fn phi_e_coordinate() -> Poly2 {
    Poly2::from_terms(&[
        (2, 0, c(32768)),
        (1, 0, c(-512)),
        (0, 1, c(128)),
        (0, 0, c(-9)),
    ])
}

/// Builds the exact constraint system for orbit size `n`.
pub fn constraint_system(n: usize) -> Result<ConstraintSystem, ClassifyError> {
    let lambda1 = Poly2::lambda1();
    let lambda2 = Poly2::lambda2();
    let one = Poly2::constant(Rational::one());
    let constraints = match n {
        1 => vec![
            Constraint {
                poly: &lambda1 - &one,
                provenance: "degenerate orbit e = f forces (e|f) = 1",
            },
            Constraint {
                poly: &lambda2 - &one,
                provenance: "degenerate orbit e = f forces (e|e^{tau_f}) = 1",
            },
        ],
        2 => vec![
            Constraint {
                poly: two_axis_relation(),
                provenance: "collapsed rewrite relation between the two alpha-generators",
            },
            Constraint {
                poly: &lambda2 - &one,
                provenance: "orbit identification e^{tau_f} = e",
            },
        ],
        3 => vec![
            Constraint {
                poly: three_axis_relation(),
                provenance: "phi_f^- coordinate of the three-term relation (fused orbit)",
            },
            Constraint {
                poly: &lambda2 - &lambda1,
                provenance: "orbit identification: e^{tau_f} lies at distance 1",
            },
        ],
        4 => vec![
            Constraint {
                poly: Poly2::from_terms(&[
                    (2, 0, c(2048)),
                    (1, 0, c(-32)),
                    (0, 1, c(8)),
                    (0, 0, c(-1)),
                ]),
                provenance: "phi_f^-(e) coordinate of the three-term relation",
            },
            Constraint {
                poly: two_axis_relation()
                    .compose(&lambda2, &one)
                    .primitive(),
                provenance: "two-axis system for the distance-2 pair (e, e^{tau_f})",
            },
        ],
        5 => vec![
            Constraint {
                poly: Poly2::from_terms(&[(1, 0, c(128)), (0, 0, c(-3))]),
                provenance: "phi_f^-(f^{tau_e}) coordinate of the three-term relation",
            },
            Constraint {
                poly: phi_e_coordinate(),
                provenance: "phi_f^-(e) coordinate of the three-term relation",
            },
        ],
        6 => vec![
            Constraint {
                poly: Poly2::from_terms(&[(1, 0, c(256)), (0, 0, c(-5))]),
                provenance: "phi_f^-(f^{tau_e}) coordinate of the three-term relation",
            },
            Constraint {
                poly: phi_e_coordinate(),
                provenance: "phi_f^-(e) coordinate of the three-term relation",
            },
            Constraint {
                poly: three_axis_relation().compose(&lambda2, &lambda2).primitive(),
                provenance: "three-axis system for the odd sub-orbit {a1, a3, a5}",
            },
            Constraint {
                poly: two_axis_relation()
                    .compose(&nu_poly(), &one)
                    .primitive(),
                provenance: "two-axis system for the antipodal pair (f, a3) at the derived pairing",
            },
        ],
        _ => return Err(ClassifyError::UnsupportedOrbit(n)),
    };
    Ok(ConstraintSystem { n, constraints })
}

/// Checks the nondegeneracy side-conditions for orbit size `n` at a
/// parameter point, returning the provenance of the violated condition.
pub fn nondegeneracy_violation(n: usize, l1: &Rational, l2: &Rational) -> Option<&'static str> {
    let in_axis_bounds = |v: &Rational| !v.is_negative() && v <= &rat(1, 3);
    if n >= 2 && !in_axis_bounds(l1) {
        return Some("(e|f) must lie in [0, 1/3] for distinct axes");
    }
    if n >= 4 && !in_axis_bounds(l2) {
        return Some("(e|e^{tau_f}) must lie in [0, 1/3] for distinct axes");
    }
    if n >= 3 && l1.is_zero() {
        return Some("(e|f) = 0 makes the involutions commute, collapsing the orbit to size <= 2");
    }
    None
}

/// One admissible parameter row of the classification table, on the
/// `⟨·,·⟩` scale.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClassRow {
    pub n: usize,
    pub label: String,
    /// `⟨e, f⟩`.
    pub ef: Rational,
    /// `⟨e, e^{τ_f}⟩`.
    pub e_etf: Rational,
    /// `⟨e^{τ_f}, f^{τ_e}⟩`, present only on the order-6 orbit.
    pub extra: Option<Rational>,
}

impl ClassRow {
    /// One CSV line in `n,class,ef,e_etf,extra` order (no trailing newline).
    pub fn csv_line(&self) -> String {
        let extra = self
            .extra
            .as_ref()
            .map(Rational::to_string)
            .unwrap_or_default();
        format!("{},{},{},{},{}", self.n, self.label, self.ef, self.e_etf, extra)
    }
}

/// Hard-coded class labels keyed on `(n, ⟨e,f⟩)`; solutions outside the
/// known table are labelled `"unknown"`.
fn class_label(n: usize, ef: &Rational) -> String {
    let known: &[(usize, Rational, &str)] = &[
        (1, rat(1, 4), "1A"),
        (2, rat(1, 32), "2A"),
        (2, Rational::zero(), "2B"),
        (3, rat(13, 1024), "3A"),
        (3, rat(1, 256), "3C"),
        (4, rat(1, 128), "4A"),
        (4, rat(1, 256), "4B"),
        (5, rat(3, 512), "5A"),
        (6, rat(5, 1024), "6A"),
    ];
    known
        .iter()
        .find(|(kn, kef, _)| *kn == n && kef == ef)
        .map(|(_, _, name)| (*name).to_owned())
        .unwrap_or_else(|| "unknown".to_owned())
}

/// Rational roots of a polynomial that is univariate in `λ₁` of degree ≤ 2.
fn lambda1_roots(p: &Poly2) -> Vec<Rational> {
    let (a, b, c) = p
        .quadratic_coeffs()
        .expect("constraint did not reduce to a univariate quadratic");
    match solve_quadratic(&a, &b, &c) {
        Ok(roots) => roots.roots,
        Err(_) => Vec::new(),
    }
}

/// Solves the constraint system for orbit size `n` exactly and returns all
/// admissible rows (after the nondegeneracy filters) with class labels.
pub fn solve_parameters(n: usize) -> Result<Vec<ClassRow>, ClassifyError> {
    let system = constraint_system(n)?;
    let one = Rational::one();
    let candidates: Vec<(Rational, Rational)> = match n {
        1 => vec![(one.clone(), one.clone())],
        2 => {
            let main = system.constraints[0].poly.subst_lambda2(&one);
            lambda1_roots(&main)
                .into_iter()
                .map(|r| (r, one.clone()))
                .collect()
        }
        3 => {
            let main = system.constraints[0]
                .poly
                .compose(&Poly2::lambda1(), &Poly2::lambda1());
            lambda1_roots(&main)
                .into_iter()
                .map(|r| (r.clone(), r))
                .collect()
        }
        4 => {
            let sub = system.constraints[1].poly.swap_vars();
            let mut out = Vec::new();
            for l2 in lambda1_roots(&sub) {
                let main = system.constraints[0].poly.subst_lambda2(&l2);
                for l1 in lambda1_roots(&main) {
                    out.push((l1, l2.clone()));
                }
            }
            out
        }
        5 | 6 => {
            let mut out = Vec::new();
            for l1 in lambda1_roots(&system.constraints[0].poly) {
                let tail = system.constraints[1].poly.subst_lambda1(&l1).swap_vars();
                for l2 in lambda1_roots(&tail) {
                    out.push((l1.clone(), l2));
                }
            }
            out
        }
        _ => unreachable!("guarded by constraint_system"),
    };

    let mut rows = Vec::new();
    for (l1, l2) in candidates {
        if nondegeneracy_violation(n, &l1, &l2).is_some() {
            continue;
        }
        // Every equation of the system must vanish at an emitted solution.
        for constraint in &system.constraints {
            let value = constraint.poly.eval(&l1, &l2);
            assert!(
                value.is_zero(),
                "candidate ({l1}, {l2}) violates '{}': {value}",
                constraint.provenance
            );
        }
        let extra = if n == 6 {
            let model = build_orbit(n).expect("orbit size validated");
            let params =
                ParamRecord::new(l1.clone(), l2.clone()).expect("filtered parameters in bounds");
            let gram = derive_gram(&model, &params)
                .expect("classified parameters must yield a consistent Gram table");
            Some(gram.mu(3).clone())
        } else {
            None
        };
        let ef = &l1 * &rat(1, 4);
        let e_etf = &l2 * &rat(1, 4);
        rows.push(ClassRow {
            n,
            label: class_label(n, &ef),
            ef,
            e_etf,
            extra,
        });
    }
    rows.sort_by(|a, b| b.ef.cmp(&a.ef));
    Ok(rows)
}

/// The full classification table for orbit sizes 1 through 6, ordered by
/// `n` and then by `⟨e,f⟩` descending.
pub fn classification_table() -> Vec<ClassRow> {
    (1..=6)
        .flat_map(|n| solve_parameters(n).expect("orbit sizes 1..=6 are supported"))
        .collect()
}

/// Renders rows as CSV with the `n,class,ef,e_etf,extra` header.
pub fn render_csv(rows: &[ClassRow]) -> String {
    let mut out = String::from("n,class,ef,e_etf,extra\n");
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

/// Renders rows as a JSON array.
pub fn render_json(rows: &[ClassRow]) -> serde_json::Value {
    serde_json::to_value(rows).expect("rows serialize")
}
