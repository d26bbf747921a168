//! Exact dense linear algebra over a field: reduced row-echelon form, rank
//! and kernel bases, plus fraction-free Bareiss elimination for matrices
//! whose entries are univariate polynomials over Q.
//!
//! Pivoting is deterministic (first nonzero entry in column order), so every
//! echelon form and every kernel basis is canonical and reproducible.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::poly::SparsePoly;
use crate::scalars::{Field, Scalar};

/// Dense row-major matrix of scalars over a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            for x in r {
                assert_eq!(x.field(), field, "matrix entry field mismatch");
                data.push(x);
            }
        }
        Matrix { field, rows: nrows, cols: ncols, data }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let x = &self[(i, j)];
                    if !x.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(x * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mat_mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.field, self.rows, other.cols, |i, j| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &other[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row-echelon form with unit pivots, and the rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // first nonzero entry in column order
            let Some(src) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m[(pivot_row, col)].inv().expect("pivot is nonzero");
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    m.sub_scaled_row(r, pivot_row, &factor);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Canonical basis of the right kernel {v : Mv = 0}. The standard basis
    /// from the free columns is re-echelonized so the result is the unique
    /// reduced row-echelon basis of the kernel space.
    pub fn kernel(&self) -> KernelBasis {
        let (r, rank) = self.rref();
        let mut pivot_cols = Vec::with_capacity(rank);
        let mut row = 0;
        for col in 0..r.cols {
            if row < rank && !r[(row, col)].is_zero() {
                pivot_cols.push(col);
                row += 1;
            }
        }
        let mut vectors = Vec::with_capacity(r.cols - rank);
        let mut is_pivot = vec![false; r.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let free_cols: Vec<usize> = (0..r.cols).filter(|&c| !is_pivot[c]).collect();
        for &f in &free_cols {
            let mut v = vec![self.field.zero(); r.cols];
            v[f] = self.field.one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&r[(row, f)];
            }
            vectors.push(v);
        }
        if vectors.is_empty() {
            return KernelBasis { field: self.field, cols: self.cols, vectors };
        }
        let (echelon, dim) = Matrix::from_rows(self.field, vectors).rref();
        debug_assert_eq!(dim, r.cols - rank);
        let vectors = (0..dim).map(|i| echelon.row(i).to_vec()).collect();
        KernelBasis { field: self.field, cols: self.cols, vectors }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            if !self[(r, j)].is_zero() {
                self[(r, j)] = &self[(r, j)] * c;
            }
        }
    }

    fn sub_scaled_row(&mut self, dst: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            if !self[(src, j)].is_zero() {
                self[(dst, j)] = &self[(dst, j)] - &(&self[(src, j)] * c);
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Canonical echelon basis of a kernel space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    field: Field,
    cols: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }
}

/// Solves M x = rhs; `None` when inconsistent. Free variables are set to
/// zero, so the solution is the canonical particular one.
pub fn solve_linear(m: &Matrix, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(rhs.len(), m.rows());
    let field = m.field();
    let mut aug = Matrix::zeros(field, m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols())] = rhs[i].clone();
    }
    let (r, rank) = aug.rref();
    let mut x = vec![field.zero(); m.cols()];
    let mut row = 0;
    for col in 0..m.cols() + 1 {
        if row < rank && !r[(row, col)].is_zero() {
            if col == m.cols() {
                return None; // pivot in the rhs column: inconsistent
            }
            x[col] = r[(row, m.cols())].clone();
            row += 1;
        }
    }
    Some(x)
}

/// Matrix of univariate polynomials over Q, for the parametric delta scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparsePoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![SparsePoly::zero(Field::Rational, 1); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<SparsePoly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            for p in r {
                assert_eq!(p.nvars(), 1, "parametric entries are univariate");
                assert_eq!(p.field(), Field::Rational);
                data.push(p);
            }
        }
        PolyMatrix { rows: nrows, cols: ncols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Evaluates every entry at the given rational point.
    pub fn eval(&self, x: &Scalar) -> Matrix {
        Matrix::from_fn(Field::Rational, self.rows, self.cols, |i, j| self[(i, j)].eval_univar(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = SparsePoly;
    fn index(&self, (i, j): (usize, usize)) -> &SparsePoly {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut SparsePoly {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

/// Result of fraction-free elimination on a parametric matrix.
#[derive(Debug, Clone)]
pub struct BareissOutcome {
    /// Rank over the rational function field Q(delta).
    pub generic_rank: usize,
    /// The nonzero leading minors encountered. Any specialization at which
    /// the rank drops below `generic_rank` is a root of one of these.
    pub pivots: Vec<SparsePoly>,
}

/// Fraction-free (Bareiss) elimination over Q[delta]. Every exact division
/// by the previous pivot is guaranteed by the Sylvester identity, and the
/// k-th pivot equals a k x k minor of the input, which is what makes the
/// root analysis sound.
pub fn bareiss_pivots(m: &PolyMatrix) -> BareissOutcome {
    let mut a = m.clone();
    let one = SparsePoly::constant(Field::Rational.one(), 1);
    let mut prev = one;
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let Some(src) = (pivot_row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(pivot_row, src);
        let pivot = a[(pivot_row, col)].clone();
        for r in pivot_row + 1..a.rows {
            for c in col + 1..a.cols {
                let num = pivot.mul(&a[(r, c)]).sub(&a[(r, col)].mul(&a[(pivot_row, c)]));
                a[(r, c)] = num
                    .div_exact_univar(&prev)
                    .expect("Bareiss division is exact");
            }
            a[(r, col)] = SparsePoly::zero(Field::Rational, 1);
        }
        pivots.push(pivot.clone());
        prev = pivot;
        pivot_row += 1;
    }
    BareissOutcome { generic_rank: pivot_row, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational_roots;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn q() -> Field {
        Field::rational()
    }

    fn mat_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    #[test]
    fn rref_identity_and_zero() {
        let (r, rank) = Matrix::identity(f3(), 3).rref();
        assert_eq!(rank, 3);
        assert_eq!(r, Matrix::identity(f3(), 3));
        let (_, rank) = Matrix::zeros(q(), 2, 4).rref();
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_dependent_rows() {
        // row2 = 2*row1, rank 1
        let m = mat_i64(q(), &[&[1, 2], &[2, 4]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, mat_i64(q(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_identity_empty() {
        assert_eq!(Matrix::identity(q(), 4).kernel().dim(), 0);
    }

    #[test]
    fn kernel_zero_full() {
        let k = Matrix::zeros(f3(), 2, 3).kernel();
        assert_eq!(k.dim(), 3);
        // the canonical basis of the full space is the identity
        for (i, v) in k.vectors().iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
    }

    /// Exhaustive GF(3) kernel oracle: enumerate all vectors and filter.
    fn enumerate_kernel_gf3(m: &Matrix) -> Vec<Vec<Scalar>> {
        let n = m.cols();
        let total = 3usize.pow(n as u32);
        let mut sols = Vec::new();
        for code in 0..total {
            let mut c = code;
            let v: Vec<Scalar> = (0..n)
                .map(|_| {
                    let digit = (c % 3) as i64;
                    c /= 3;
                    f3().from_i64(digit)
                })
                .collect();
            if m.mul_vec(&v).iter().all(|x| x.is_zero()) {
                sols.push(v);
            }
        }
        sols
    }

    #[test]
    fn kernel_matches_enumeration_small() {
        let m = mat_i64(f3(), &[&[1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let sols = enumerate_kernel_gf3(&m);
        assert_eq!(sols.len(), 3usize.pow(2));
    }

    #[test]
    fn kernel_matches_enumeration_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=8);
            let m = Matrix::from_fn(f3(), rows, cols, |_, _| f3().from_i64(rng.gen_range(0..3)));
            let k = m.kernel();
            // soundness: every basis vector multiplies back to zero
            for v in k.vectors() {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            // rank-nullity
            assert_eq!(m.rank() + k.dim(), cols);
            // completeness against enumeration
            let sols = enumerate_kernel_gf3(&m);
            assert_eq!(sols.len(), 3usize.pow(k.dim() as u32));
        }
    }

    #[test]
    fn rank_nullity_over_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=6);
            let m = Matrix::from_fn(q(), rows, cols, |_, _| q().from_i64(rng.gen_range(-4..=4)));
            let k = m.kernel();
            assert_eq!(m.rank() + k.dim(), cols);
            for v in k.vectors() {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn solve_linear_cases() {
        let m = mat_i64(q(), &[&[1, 2], &[2, 4]]);
        // consistent: rhs in the column span
        let x = solve_linear(&m, &[q().from_i64(3), q().from_i64(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q().from_i64(3), q().from_i64(6)]);
        // inconsistent
        assert!(solve_linear(&m, &[q().from_i64(1), q().from_i64(0)]).is_none());
    }

    fn delta() -> SparsePoly {
        SparsePoly::var(q(), 1, 0)
    }

    fn pconst(n: i64) -> SparsePoly {
        SparsePoly::constant(q().from_i64(n), 1)
    }

    #[test]
    fn bareiss_single_delta() {
        let m = PolyMatrix::from_rows(vec![vec![delta()]]);
        let out = bareiss_pivots(&m);
        assert_eq!(out.generic_rank, 1);
        assert_eq!(out.pivots, vec![delta()]);
    }

    #[test]
    fn bareiss_two_by_two() {
        // [[1, d],[d, 1]]: determinant 1 - d^2, critical values {1, -1}
        let m = PolyMatrix::from_rows(vec![vec![pconst(1), delta()], vec![delta(), pconst(1)]]);
        let out = bareiss_pivots(&m);
        assert_eq!(out.generic_rank, 2);
        let mut roots = Vec::new();
        for p in &out.pivots {
            if !p.is_constant() {
                let (r, residual) = rational_roots(p);
                assert!(!residual);
                roots.extend(r);
            }
        }
        let strs: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(strs, vec!["-1", "1"]);
    }

    #[test]
    fn bareiss_constant_full_rank() {
        let m = PolyMatrix::from_rows(vec![
            vec![pconst(2), pconst(0)],
            vec![pconst(1), pconst(5)],
        ]);
        let out = bareiss_pivots(&m);
        assert_eq!(out.generic_rank, 2);
        assert!(out.pivots.iter().all(|p| p.is_constant()));
    }

    #[test]
    fn bareiss_random_affine_rank_drop() {
        // for random affine-in-delta matrices, evaluating at a non-root
        // gives the generic rank and at a pivot root the rank cannot exceed it
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let m = PolyMatrix::from_rows(
                (0..6)
                    .map(|_| {
                        (0..6)
                            .map(|_| {
                                let a = pconst(rng.gen_range(-3..=3));
                                let b = pconst(rng.gen_range(-3..=3));
                                a.add(&b.mul(&delta()))
                            })
                            .collect()
                    })
                    .collect(),
            );
            let out = bareiss_pivots(&m);
            let mut roots = Vec::new();
            for p in &out.pivots {
                if !p.is_constant() {
                    roots.extend(rational_roots(p).0);
                }
            }
            // a non-root evaluation point: try successive integers
            let mut probe = 1i64;
            let nonroot = loop {
                let cand = q().from_i64(probe);
                if roots.iter().all(|r| r != cand.as_rational()) {
                    break cand;
                }
                probe += 1;
            };
            assert_eq!(m.eval(&nonroot).rank(), out.generic_rank);
            for r in &roots {
                let at_root = m.eval(&q().from_rational(r.clone()).unwrap());
                assert!(at_root.rank() <= out.generic_rank);
            }
        }
    }
}
