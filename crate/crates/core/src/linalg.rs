//! Exact rational vectors and matrices: linear solving, rank, determinant,
//! nullspaces, positive-semidefiniteness certificates, and rational roots of
//! quadratics.
//!
//! Every operation is a pure function over exact scalars; there is no
//! pivot-size heuristic or tolerance anywhere.  Pivots are always the first
//! nonzero candidate in column order so that certificates and
//! parameterizations are deterministic across runs.

use crate::rational::Rational;
use num_traits::Signed;
use std::fmt;
use std::ops::{Index, IndexMut};

/// Errors from the linear-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric at entry ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("all quadratic coefficients are zero")]
    AllZeroCoefficients,
}

/// A dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul_mat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum::<Rational>()
            })
            .collect()
    }

    /// Reduced row-echelon form together with the pivot (row, column) list.
    pub fn rref(&self) -> (Matrix, Vec<(usize, usize)>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m[(pivot_row, col)].recip();
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    m.sub_scaled_row(r, pivot_row, &factor);
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical nullspace basis: one vector per free column in ascending
    /// column order, with the free coordinate set to 1.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for &(prow, pcol) in &pivots {
                    v[pcol] = -&r[(prow, free)];
                }
                v
            })
            .collect()
    }

    /// Determinant via exact Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if src != col {
                m.swap_rows(col, src);
                det = -det;
            }
            det *= m[(col, col)].clone();
            let inv = m[(col, col)].recip();
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let factor = &m[(r, col)] * &inv;
                    m.sub_scaled_row(r, col, &factor);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rational) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * factor;
            self[(r, j)] = v;
        }
    }

    /// `row[r] -= factor * row[src]`.
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Rational) {
        for j in 0..self.cols {
            let delta = factor * &self[(src, j)];
            let v = &self[(r, j)] - &delta;
            self[(r, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// Exactly one solution.
    Unique(Vec<Rational>),
    /// Consistent with free parameters.  `particular` sets every free
    /// variable to zero; `nullspace` holds one basis vector per free column,
    /// listed in ascending column order.
    Underdetermined {
        particular: Vec<Rational>,
        free_columns: Vec<usize>,
        nullspace: Vec<Vec<Rational>>,
    },
    /// No solution exists.
    Inconsistent,
}

/// Solves `A x = b` exactly.
///
/// # Examples
/// ```
/// use dihedral_griess::linalg::{solve_linear, LinearSolution, Matrix};
/// use dihedral_griess::rational::rat;
///
/// let a = Matrix::identity(2);
/// let b = vec![rat(1, 2), rat(1, 16)];
/// assert_eq!(solve_linear(&a, &b).unwrap(), LinearSolution::Unique(b));
/// ```
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<LinearSolution, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let mut aug = Matrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols())] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&(_, c)| c == a.cols()) {
        return Ok(LinearSolution::Inconsistent);
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut particular = vec![Rational::zero(); a.cols()];
    for &(prow, pcol) in &pivots {
        particular[pcol] = r[(prow, a.cols())].clone();
    }
    if pivot_cols.len() == a.cols() {
        return Ok(LinearSolution::Unique(particular));
    }
    let free_columns: Vec<usize> = (0..a.cols()).filter(|c| !pivot_cols.contains(c)).collect();
    let nullspace = free_columns
        .iter()
        .map(|&free| {
            let mut v = vec![Rational::zero(); a.cols()];
            v[free] = Rational::one();
            for &(prow, pcol) in &pivots {
                v[pcol] = -&r[(prow, free)];
            }
            v
        })
        .collect();
    Ok(LinearSolution::Underdetermined {
        particular,
        free_columns,
        nullspace,
    })
}

/// Exact positive-semidefiniteness certificate for a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdCertificate {
    pub rank: usize,
    pub is_psd: bool,
    pub is_pd: bool,
    /// Diagonal pivot indices in the order they were used.
    pub permutation: Vec<usize>,
    /// The exact pivot values, in the same order.
    pub pivots: Vec<Rational>,
    /// When `is_psd` is false, a vector `x` with `xᵀ G x < 0`.
    pub witness: Option<Vec<Rational>>,
}

/// Certifies positive (semi)definiteness of a symmetric matrix via an exact
/// pivoted LDLᵀ-style congruence reduction.
///
/// The pivot at each step is the first remaining index (in ascending order)
/// whose diagonal entry is nonzero, so the certificate is deterministic.
/// When the matrix is not PSD the certificate carries an explicit witness
/// vector `x` with `xᵀ G x < 0`.
pub fn psd_certificate(g: &Matrix) -> Result<PsdCertificate, LinalgError> {
    if g.rows() != g.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            g.rows(),
            g.cols()
        )));
    }
    for i in 0..g.rows() {
        for j in 0..i {
            if g[(i, j)] != g[(j, i)] {
                return Err(LinalgError::NotSymmetric(i, j));
            }
        }
    }
    let n = g.rows();
    let mut c = g.clone();
    // Congruence bookkeeping: c = m · g · mᵀ at every step, so a witness y
    // for c pulls back to x = mᵀ y for g.
    let mut m = Matrix::identity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut permutation = Vec::new();
    let mut pivots = Vec::new();

    let pull_back = |m: &Matrix, y: &[Rational]| m.transpose().mul_vec(y);

    loop {
        let Some(pos) = remaining.iter().position(|&i| !c[(i, i)].is_zero()) else {
            // All remaining diagonal entries vanish.  Any nonzero remaining
            // off-diagonal entry then gives an indefinite 2x2 block.
            for (s, &i) in remaining.iter().enumerate() {
                for &j in &remaining[s + 1..] {
                    if !c[(i, j)].is_zero() {
                        let mut y = vec![Rational::zero(); n];
                        y[i] = Rational::one();
                        y[j] = if c[(i, j)].is_positive() {
                            -Rational::one()
                        } else {
                            Rational::one()
                        };
                        let witness = pull_back(&m, &y);
                        return Ok(PsdCertificate {
                            rank: g.rank(),
                            is_psd: false,
                            is_pd: false,
                            permutation,
                            pivots,
                            witness: Some(witness),
                        });
                    }
                }
            }
            let rank = pivots.len();
            let is_psd = pivots.iter().all(Rational::is_positive);
            return Ok(PsdCertificate {
                rank,
                is_psd,
                is_pd: is_psd && rank == n,
                permutation,
                pivots,
                witness: None,
            });
        };
        let p = remaining.remove(pos);
        let pivot = c[(p, p)].clone();
        if pivot.is_negative() {
            let mut y = vec![Rational::zero(); n];
            y[p] = Rational::one();
            let witness = pull_back(&m, &y);
            permutation.push(p);
            pivots.push(pivot);
            return Ok(PsdCertificate {
                rank: g.rank(),
                is_psd: false,
                is_pd: false,
                permutation,
                pivots,
                witness: Some(witness),
            });
        }
        // Symmetric elimination of row/column p against the positive pivot.
        let inv = pivot.recip();
        let factors: Vec<(usize, Rational)> = remaining
            .iter()
            .filter(|&&r| !c[(r, p)].is_zero())
            .map(|&r| (r, &c[(r, p)] * &inv))
            .collect();
        for (r, factor) in &factors {
            for j in 0..n {
                let delta = factor * &c[(p, j)];
                let v = &c[(*r, j)] - &delta;
                c[(*r, j)] = v;
                let delta_m = factor * &m[(p, j)];
                let vm = &m[(*r, j)] - &delta_m;
                m[(*r, j)] = vm;
            }
        }
        for (r, factor) in &factors {
            for i in 0..n {
                let delta = factor * &c[(i, p)];
                let v = &c[(i, *r)] - &delta;
                c[(i, *r)] = v;
            }
        }
        permutation.push(p);
        pivots.push(pivot);
    }
}

/// Rational roots of `a t² + b t + c = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRoots {
    /// All rational roots, ascending, without multiplicity.
    pub roots: Vec<Rational>,
    /// True when real roots exist but are irrational (empty `roots` then
    /// still means "no *rational* roots").
    pub irrational_real_roots: bool,
}

/// Solves `a t² + b t + c = 0` exactly over the rationals.
///
/// Handles the linear case `a = 0`; errors only when all three coefficients
/// vanish.
pub fn solve_quadratic(
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<QuadraticRoots, LinalgError> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(LinalgError::AllZeroCoefficients);
    }
    if a.is_zero() {
        let roots = if b.is_zero() {
            Vec::new() // c ≠ 0: no solutions.
        } else {
            vec![-&(c / b)]
        };
        return Ok(QuadraticRoots {
            roots,
            irrational_real_roots: false,
        });
    }
    let four = Rational::from_int(4);
    let disc = &(b * b) - &(&four * &(a * c));
    if disc.is_negative() {
        return Ok(QuadraticRoots {
            roots: Vec::new(),
            irrational_real_roots: false,
        });
    }
    // disc = p/q in lowest terms is a rational square iff p and q both are
    // perfect integer squares.
    let p = disc.numer().abs();
    let q = disc.denom().clone();
    let sp = p.sqrt();
    let sq = q.sqrt();
    if &sp * &sp != p || &sq * &sq != q {
        return Ok(QuadraticRoots {
            roots: Vec::new(),
            irrational_real_roots: true,
        });
    }
    let sqrt_disc = Rational::from_big(num_rational::BigRational::new(sp, sq));
    let two_a = &Rational::from_int(2) * a;
    let r1 = &(&-b - &sqrt_disc) / &two_a;
    let r2 = &(&-b + &sqrt_disc) / &two_a;
    let mut roots = vec![r1, r2];
    roots.sort();
    roots.dedup();
    Ok(QuadraticRoots {
        roots,
        irrational_real_roots: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn m(rows: &[&[(i64, i64)]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect(),
        )
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(2);
        let b = vec![rat(1, 2), rat(1, 16)];
        assert_eq!(
            solve_linear(&a, &b).unwrap(),
            LinearSolution::Unique(b.clone())
        );
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(&[&[(2, 1), (0, 1)], &[(0, 1), (0, 1)]]);
        let b = vec![rat(1, 1), rat(1, 1)];
        assert_eq!(solve_linear(&a, &b).unwrap(), LinearSolution::Inconsistent);
    }

    #[test]
    fn solve_rank_one_free_parameter() {
        let a = m(&[&[(1, 1), (1, 1)], &[(2, 1), (2, 1)]]);
        let b = vec![rat(3, 1), rat(6, 1)];
        match solve_linear(&a, &b).unwrap() {
            LinearSolution::Underdetermined {
                particular,
                free_columns,
                nullspace,
            } => {
                assert_eq!(particular, vec![rat(3, 1), rat(0, 1)]);
                assert_eq!(free_columns, vec![1]);
                assert_eq!(nullspace, vec![vec![rat(-1, 1), rat(1, 1)]]);
            }
            other => panic!("expected underdetermined solution, got {other:?}"),
        }
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(2);
        assert!(matches!(
            solve_linear(&a, &[rat(1, 1)]),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn psd_scaled_identity() {
        let mut g = Matrix::identity(2);
        g[(0, 0)] = rat(1, 4);
        g[(1, 1)] = rat(1, 4);
        let cert = psd_certificate(&g).unwrap();
        assert_eq!(cert.rank, 2);
        assert!(cert.is_pd);
        assert!(cert.witness.is_none());
    }

    #[test]
    fn psd_repeated_vector_gram() {
        let g = m(&[&[(1, 4), (1, 4)], &[(1, 4), (1, 4)]]);
        let cert = psd_certificate(&g).unwrap();
        assert_eq!(cert.rank, 1);
        assert!(cert.is_psd);
        assert!(!cert.is_pd);
    }

    #[test]
    fn psd_two_axis_gram() {
        // Gram of {e, f} at ⟨e,f⟩ = 13/2^10: determinant
        // 1/16 − (13/1024)² = 4025/65536... computed independently below.
        let g = m(&[&[(1, 4), (13, 1024)], &[(13, 1024), (1, 4)]]);
        let det = &(&rat(1, 4) * &rat(1, 4)) - &(&rat(13, 1024) * &rat(13, 1024));
        assert_eq!(g.det(), det);
        assert!(det.is_positive());
        let cert = psd_certificate(&g).unwrap();
        assert_eq!(cert.rank, 2);
        assert!(cert.is_pd);
    }

    #[test]
    fn psd_witness_is_exact() {
        let g = m(&[&[(1, 1), (2, 1)], &[(2, 1), (1, 1)]]);
        let cert = psd_certificate(&g).unwrap();
        assert!(!cert.is_psd);
        let x = cert.witness.expect("indefinite matrix needs a witness");
        let gx = g.mul_vec(&x);
        let quad: Rational = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
        assert!(quad.is_negative(), "witness quadratic form = {quad}");
    }

    #[test]
    fn psd_zero_diagonal_indefinite() {
        let g = m(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        let cert = psd_certificate(&g).unwrap();
        assert!(!cert.is_psd);
        let x = cert.witness.unwrap();
        let gx = g.mul_vec(&x);
        let quad: Rational = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
        assert!(quad.is_negative());
    }

    #[test]
    fn psd_rejects_non_symmetric() {
        let g = m(&[&[(1, 1), (2, 1)], &[(3, 1), (1, 1)]]);
        assert!(matches!(
            psd_certificate(&g),
            Err(LinalgError::NotSymmetric(1, 0))
        ));
    }

    #[test]
    fn quadratic_orbit_three_constraint() {
        // 2^15 t² − 17·2^7 t + 26 = 0 has roots 13/2^8 and 1/2^6.
        let roots = solve_quadratic(
            &Rational::from_int(1 << 15),
            &Rational::from_int(-17 * (1 << 7)),
            &Rational::from_int(26),
        )
        .unwrap();
        assert_eq!(roots.roots, vec![rat(1, 64), rat(13, 256)]);
        assert!(!roots.irrational_real_roots);
    }

    #[test]
    fn quadratic_orbit_two_constraint() {
        let roots = solve_quadratic(
            &Rational::from_int(1 << 11),
            &Rational::from_int(-(1 << 8)),
            &Rational::zero(),
        )
        .unwrap();
        assert_eq!(roots.roots, vec![rat(0, 1), rat(1, 8)]);
    }

    #[test]
    fn quadratic_irrational_flag() {
        let roots =
            solve_quadratic(&Rational::one(), &Rational::zero(), &Rational::from_int(-2)).unwrap();
        assert!(roots.roots.is_empty());
        assert!(roots.irrational_real_roots);
    }

    #[test]
    fn quadratic_degenerate_cases() {
        assert!(matches!(
            solve_quadratic(&Rational::zero(), &Rational::zero(), &Rational::zero()),
            Err(LinalgError::AllZeroCoefficients)
        ));
        let lin = solve_quadratic(&Rational::zero(), &rat(2, 1), &rat(-1, 1)).unwrap();
        assert_eq!(lin.roots, vec![rat(1, 2)]);
        let none = solve_quadratic(&Rational::zero(), &Rational::zero(), &rat(5, 1)).unwrap();
        assert!(none.roots.is_empty() && !none.irrational_real_roots);
    }

    #[test]
    fn nullspace_matches_free_columns() {
        let a = m(&[&[(1, 1), (2, 1), (3, 1)], &[(2, 1), (4, 1), (6, 1)]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Rational::is_zero));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solve_then_substitute(
            entries in proptest::collection::vec(-6i64..6, 9),
            rhs in proptest::collection::vec(-6i64..6, 3),
        ) {
            let a = Matrix::from_rows(
                entries.chunks(3).map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect(),
            );
            let b: Vec<Rational> = rhs.iter().map(|&x| Rational::from_int(x)).collect();
            match solve_linear(&a, &b).unwrap() {
                LinearSolution::Unique(x) => prop_assert_eq!(a.mul_vec(&x), b),
                LinearSolution::Underdetermined { particular, nullspace, .. } => {
                    prop_assert_eq!(a.mul_vec(&particular), b);
                    for v in &nullspace {
                        prop_assert!(a.mul_vec(v).iter().all(Rational::is_zero));
                    }
                }
                LinearSolution::Inconsistent => {}
            }
        }

        #[test]
        fn quadratic_roots_satisfy_equation(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
            prop_assume!((a, b, c) != (0, 0, 0));
            let (ra, rb, rc) = (Rational::from_int(a), Rational::from_int(b), Rational::from_int(c));
            let out = solve_quadratic(&ra, &rb, &rc).unwrap();
            for r in &out.roots {
                let value = &(&(&ra * &(r * r)) + &(&rb * r)) + &rc;
                prop_assert!(value.is_zero());
            }
            // Two-root outputs factor the quadratic completely.
            if out.roots.len() == 2 {
                let (r1, r2) = (&out.roots[0], &out.roots[1]);
                prop_assert_eq!(&(&ra * &(r1 * r2)), &rc);
                prop_assert_eq!(&(&ra * &(r1 + r2)), &-&rb);
            }
        }

        #[test]
        fn psd_of_gram_is_always_psd(entries in proptest::collection::vec(-4i64..4, 12)) {
            // G = BᵀB is PSD by construction for any B.
            let b = Matrix::from_rows(
                entries.chunks(3).map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect(),
            );
            let g = b.transpose().mul_mat(&b);
            let cert = psd_certificate(&g).unwrap();
            prop_assert!(cert.is_psd);
            prop_assert_eq!(cert.rank, b.rank());
        }
    }
}
