//! Exact rational dense linear algebra.
//!
//! Everything downstream (centralizers, gradings, rank certificates) reduces
//! to row echelon computations over `Q`, so this module keeps the contract
//! strict: matrices are dense row-major, subspaces are canonicalized as the
//! reduced row echelon form of their basis, and all arithmetic is exact
//! arbitrary-precision rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (`BigRational` maintains that invariant on construction).
pub type Rat = BigRational;

/// Shorthand for a small integer as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d` as a `Rat`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RatMatError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("inner subspace is not contained in the outer subspace")]
    NotContained,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense row-major matrix over `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals (tests mostly).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Rat> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    /// Stack `other` below `self`.
    pub fn vcat(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let e = self.at(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc += e * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form, together with pivot columns and rank.
    ///
    /// The RREF of a matrix is unique, so this doubles as a canonical form
    /// for row spaces.
    pub fn rref(&self) -> RrefResult {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // First nonzero entry below pivot_row in this column.
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.at(pivot_row, col).recip();
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    m.row_axpy(r, pivot_row, &factor, col);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_cols.len();
        RrefResult {
            reduced: m,
            pivot_cols,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat) {
        for c in 0..self.cols {
            let e = self.at_mut(r, c);
            if !e.is_zero() {
                *e *= factor;
            }
        }
    }

    /// row\[dst\] -= factor * row\[src\], starting from `from_col` (earlier
    /// columns of src are known zero in echelon passes).
    fn row_axpy(&mut self, dst: usize, src: usize, factor: &Rat, from_col: usize) {
        for c in from_col..self.cols {
            let s = self.at(src, c).clone();
            if s.is_zero() {
                continue;
            }
            let e = self.at_mut(dst, c);
            *e -= factor * s;
        }
    }
}

/// Result of [`QMatrix::rref`].
pub struct RrefResult {
    pub reduced: QMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Basis of the right kernel `{v : m v = 0}`, canonicalized.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let RrefResult {
        reduced,
        pivot_cols,
        rank,
    } = m.rref();
    let n = m.cols();
    let is_pivot = {
        let mut mask = vec![false; n];
        for &c in &pivot_cols {
            mask[c] = true;
        }
        mask
    };
    let mut rows = Vec::with_capacity(n - rank);
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (prow, &pcol) in pivot_cols.iter().enumerate() {
            v[pcol] = -reduced.at(prow, free).clone();
        }
        rows.push(v);
    }
    if rows.is_empty() {
        return Subspace::zero(n);
    }
    Subspace::from_rows(n, QMatrix::from_rows(rows))
}

/// Solve `a x = b` exactly. Returns the particular solution with all free
/// variables set to zero, or `None` when the system is inconsistent.
pub fn solve_linear(a: &QMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(
        b.len(),
        a.rows(),
        "solve_linear: rhs length {} != rows {}",
        b.len(),
        a.rows()
    );
    let mut aug = QMatrix::zeros(a.rows(), a.cols() + 1);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            *aug.at_mut(r, c) = a.at(r, c).clone();
        }
        *aug.at_mut(r, a.cols()) = b[r].clone();
    }
    let RrefResult {
        reduced,
        pivot_cols,
        ..
    } = aug.rref();
    // A pivot in the appended column means the system is inconsistent.
    if pivot_cols.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (prow, &pcol) in pivot_cols.iter().enumerate() {
        x[pcol] = reduced.at(prow, a.cols()).clone();
    }
    Some(x)
}

/// Precomputed elimination for repeated solves against a fixed matrix.
///
/// Builds the RREF transform of `[a | I]` once; each `solve` is then a single
/// matrix-vector product plus a consistency read-off.
pub struct LinearSolver {
    cols: usize,
    rows: usize,
    transform: QMatrix,
    pivot_cols: Vec<usize>,
    rank: usize,
}

impl LinearSolver {
    pub fn new(a: &QMatrix) -> Self {
        let aug = {
            let mut m = QMatrix::zeros(a.rows(), a.cols() + a.rows());
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    *m.at_mut(r, c) = a.at(r, c).clone();
                }
                *m.at_mut(r, a.cols() + r) = Rat::one();
            }
            m
        };
        let RrefResult { reduced, .. } = aug.rref();
        // Pivots are recomputed over the left block only: an identity block
        // pivot past the rank belongs to the transform, not to `a`.
        let mut pivot_cols = Vec::new();
        let mut transform = QMatrix::zeros(a.rows(), a.rows());
        let mut rank = 0;
        for r in 0..a.rows() {
            if let Some(c) = (0..a.cols()).find(|&c| !reduced.at(r, c).is_zero()) {
                pivot_cols.push(c);
                rank += 1;
            }
            for k in 0..a.rows() {
                *transform.at_mut(r, k) = reduced.at(r, a.cols() + k).clone();
            }
        }
        LinearSolver {
            cols: a.cols(),
            rows: a.rows(),
            transform,
            pivot_cols,
            rank,
        }
    }

    /// Same contract as [`solve_linear`].
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "LinearSolver: rhs length mismatch");
        let tb = self.transform.mul_vec(b);
        if tb[self.rank..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (prow, &pcol) in self.pivot_cols.iter().enumerate() {
            x[pcol] = tb[prow].clone();
        }
        Some(x)
    }
}

/// Linear subspace of `Q^n`, stored as the RREF of a basis.
///
/// The representation is canonical: two subspaces are equal iff their stored
/// bases are entry-wise identical, which makes subspace equality and golden
/// tests exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: QMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: QMatrix::identity(ambient_dim),
        }
    }

    /// Span of the rows of `m`, canonicalized (zero rows dropped).
    pub fn from_rows(ambient_dim: usize, m: QMatrix) -> Self {
        assert_eq!(m.cols(), ambient_dim, "row length != ambient dimension");
        let RrefResult { reduced, rank, .. } = m.rref();
        let rows = (0..rank).map(|r| reduced.row_vec(r)).collect();
        Subspace {
            ambient_dim,
            basis: QMatrix::from_rows(rows),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical RREF basis, one vector per row.
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        self.reduce_vec(v).iter().all(Rat::is_zero)
    }

    /// Residue of `v` after eliminating against the basis rows.
    fn reduce_vec(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot = (0..self.ambient_dim)
                .find(|&c| !self.basis.at(r, c).is_zero())
                .expect("no zero rows in a canonical basis");
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for c in pivot..self.ambient_dim {
                let b = self.basis.at(r, c);
                if !b.is_zero() {
                    v[c] -= &factor * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.ambient_dim == self.ambient_dim
            && (0..other.dim()).all(|r| self.contains_vec(other.basis.row(r)))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, RatMatError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(RatMatError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        Ok(Subspace::from_rows(
            self.ambient_dim,
            self.basis.vcat(&other.basis),
        ))
    }

    /// Exact intersection via the Zassenhaus block trick: row reduce
    /// `[A A; B 0]`; rows whose left block vanished carry the intersection
    /// in their right block.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, RatMatError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(RatMatError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        let n = self.ambient_dim;
        let da = self.dim();
        let db = other.dim();
        let mut block = QMatrix::zeros(da + db, 2 * n);
        for r in 0..da {
            for c in 0..n {
                *block.at_mut(r, c) = self.basis.at(r, c).clone();
                *block.at_mut(r, n + c) = self.basis.at(r, c).clone();
            }
        }
        for r in 0..db {
            for c in 0..n {
                *block.at_mut(da + r, c) = other.basis.at(r, c).clone();
            }
        }
        let RrefResult { reduced, .. } = block.rref();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for r in 0..reduced.rows() {
            let left_zero = (0..n).all(|c| reduced.at(r, c).is_zero());
            let right_nonzero = (0..n).any(|c| !reduced.at(r, n + c).is_zero());
            if left_zero && right_nonzero {
                rows.push((0..n).map(|c| reduced.at(r, n + c).clone()).collect());
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(n));
        }
        Ok(Subspace::from_rows(n, QMatrix::from_rows(rows)))
    }

    /// Rows that complete a basis of `inner` to a basis of `outer`.
    ///
    /// Completion rows are chosen deterministically: scan `outer`'s canonical
    /// basis rows in order and keep each row that increases the rank.
    pub fn extend_basis(inner: &Subspace, outer: &Subspace) -> Result<QMatrix, RatMatError> {
        if inner.ambient_dim != outer.ambient_dim {
            return Err(RatMatError::AmbientMismatch(
                inner.ambient_dim,
                outer.ambient_dim,
            ));
        }
        if !outer.contains(inner) {
            return Err(RatMatError::NotContained);
        }
        let mut current = inner.basis.clone();
        let mut rank = inner.dim();
        let mut completion: Vec<Vec<Rat>> = Vec::new();
        for r in 0..outer.dim() {
            let candidate = outer.basis.row_vec(r);
            let trial = current.vcat(&QMatrix::from_rows(vec![candidate.clone()]));
            if trial.rank() > rank {
                rank += 1;
                completion.push(candidate);
                current = trial;
            }
        }
        debug_assert_eq!(rank, outer.dim());
        if completion.is_empty() {
            return Ok(QMatrix::zeros(0, inner.ambient_dim));
        }
        Ok(QMatrix::from_rows(completion))
    }
}

/// Integer-content normalization: scale `v` so entries are coprime integers
/// and the first nonzero entry is positive. Used for readable report output.
pub fn normalize_primitive(v: &[Rat]) -> Vec<Rat> {
    use num_integer::Integer;
    let mut den = BigInt::one();
    for e in v {
        let g = den.gcd(e.denom());
        den = den / g * e.denom();
    }
    let mut num = BigInt::zero();
    for e in v {
        let scaled = e.numer() * (&den / e.denom());
        num = num.gcd(&scaled);
    }
    if num.is_zero() {
        return v.to_vec();
    }
    let mut scale = Rat::new(den, num);
    if let Some(first) = v.iter().find(|e| !e.is_zero()) {
        if (first * &scale).is_negative() {
            scale = -scale;
        }
    }
    v.iter().map(|e| e * &scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_fixed() {
        let m = QMatrix::identity(3);
        let r = m.rref();
        assert_eq!(r.reduced, m);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, QMatrix::from_int_rows(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_single_row_normalizes_pivot() {
        // A 1x2 row scales to leading coefficient 1.
        let m = QMatrix::from_int_rows(&[&[-20, 20]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, QMatrix::from_int_rows(&[&[1, -1]]));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel_basis(&QMatrix::identity(2));
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let k = kernel_basis(&QMatrix::zeros(2, 3));
        assert_eq!(k, Subspace::full(3));
    }

    #[test]
    fn solve_identity() {
        let a = QMatrix::identity(2);
        let b = vec![rat_int(3), rat(-1, 2)];
        assert_eq!(solve_linear(&a, &b), Some(vec![rat_int(3), rat(-1, 2)]));
    }

    #[test]
    fn solve_underdetermined_zeroes_free_vars() {
        let a = QMatrix::from_int_rows(&[&[1, 1]]);
        let b = vec![rat_int(5)];
        assert_eq!(solve_linear(&a, &b), Some(vec![rat_int(5), rat_int(0)]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = QMatrix::from_int_rows(&[&[1], &[0]]);
        let b = vec![rat_int(0), rat_int(1)];
        assert_eq!(solve_linear(&a, &b), None);
    }

    #[test]
    fn linear_solver_matches_one_shot() {
        let a = QMatrix::from_int_rows(&[&[1, 2, 0], &[0, 1, 1], &[1, 3, 1]]);
        let solver = LinearSolver::new(&a);
        let b = vec![rat_int(1), rat_int(2), rat_int(3)];
        assert_eq!(solver.solve(&b), solve_linear(&a, &b));
        let bad = vec![rat_int(1), rat_int(2), rat_int(4)];
        assert_eq!(solver.solve(&bad), None);
        assert_eq!(solve_linear(&a, &bad), None);
    }

    #[test]
    fn extend_basis_completes_line_to_full_space() {
        let inner = Subspace::from_rows(3, QMatrix::from_int_rows(&[&[1, 0, 0]]));
        let outer = Subspace::full(3);
        let completion = Subspace::extend_basis(&inner, &outer).unwrap();
        assert_eq!(completion.rows(), 2);
        let joined = inner.basis().vcat(&completion);
        assert_eq!(joined.rank(), 3);
    }

    #[test]
    fn extend_basis_equal_spaces_is_empty() {
        let s = Subspace::from_rows(3, QMatrix::from_int_rows(&[&[1, 2, 3], &[0, 1, 0]]));
        let completion = Subspace::extend_basis(&s, &s).unwrap();
        assert_eq!(completion.rows(), 0);
    }

    #[test]
    fn extend_basis_rejects_non_contained() {
        let inner = Subspace::from_rows(2, QMatrix::from_int_rows(&[&[1, 0]]));
        let outer = Subspace::from_rows(2, QMatrix::from_int_rows(&[&[0, 1]]));
        assert_eq!(
            Subspace::extend_basis(&inner, &outer),
            Err(RatMatError::NotContained)
        );
    }

    #[test]
    fn intersect_self_is_identity() {
        let s = Subspace::from_rows(3, QMatrix::from_int_rows(&[&[1, 2, 3], &[0, 0, 1]]));
        assert_eq!(s.intersect(&s).unwrap(), s);
    }

    #[test]
    fn intersect_complementary_lines_is_zero() {
        let a = Subspace::from_rows(2, QMatrix::from_int_rows(&[&[1, 0]]));
        let b = Subspace::from_rows(2, QMatrix::from_int_rows(&[&[0, 1]]));
        assert_eq!(a.intersect(&b).unwrap(), Subspace::zero(2));
    }

    #[test]
    fn intersect_rejects_ambient_mismatch() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert_eq!(a.intersect(&b), Err(RatMatError::AmbientMismatch(2, 3)));
    }

    #[test]
    fn intersection_dimension_formula() {
        let a = Subspace::from_rows(4, QMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 1, 0]]));
        let b = Subspace::from_rows(4, QMatrix::from_int_rows(&[&[0, 1, 1, 0], &[0, 0, 0, 1]]));
        let cap = a.intersect(&b).unwrap();
        let sum = a.sum(&b).unwrap();
        assert_eq!(cap.dim() + sum.dim(), a.dim() + b.dim());
    }

    #[test]
    fn normalize_primitive_clears_denominators() {
        let v = vec![rat(-1, 2), rat(3, 4), rat_int(0)];
        let n = normalize_primitive(&v);
        assert_eq!(n, vec![rat_int(2), rat_int(-3), rat_int(0)]);
    }
}
