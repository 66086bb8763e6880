//! Small dense complex linear algebra.
//!
//! Everything here works on row-major [`ComplexMatrix`] values of dimension
//! at most 8, which is all the game pipeline needs: 2x2 strategies, 4x4
//! two-qubit operators and the 8x8 intermediate state with the extra Rindler
//! mode. Tensor products put the left factor in the most significant position,
//! so `|a>|b>` sits at index `a * dim_b + b`.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Shorthand for a complex number.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if rows * cols != data.len() {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input, so this is
    /// meant for literals.
    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(N, N, data).expect("literal matrix must be finite")
    }

    /// Real-valued literal.
    pub fn from_real<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| c(x, 0.0))).collect();
        Self::new(N, N, data).expect("literal matrix must be finite")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    /// Column vector from amplitudes.
    pub fn column(entries: &[Complex64]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// Computational basis ket `|index>` in dimension `dim`.
    pub fn basis_ket(dim: usize, index: usize) -> Self {
        let mut m = Self::zeros(dim, 1);
        m.data[index] = ONE;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with `self` as the most significant factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for p in 0..rhs.rows {
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    for q in 0..rhs.cols {
                        data.push(a * rhs.get(p, q));
                    }
                }
            }
        }
        Self { rows, cols, data }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Largest entry modulus, the norm used for every tolerance check here.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |self - other|` entrywise. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U^dag U - I|`, or infinity for non-square input.
    pub fn unitarity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let prod = self.adjoint().matmul(self).expect("square");
        prod.max_abs_diff(&Self::identity(self.rows))
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .expect("nonempty range");
            if a[pivot * n + col] == ZERO {
                return Ok(ZERO);
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for row in col + 1..n {
                let f = a[row * n + col] / p;
                if f == ZERO {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[row * n + k] -= f * v;
                }
            }
        }
        Ok(det)
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        let k = keep.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in keep {
            for &j in keep {
                data.push(self.get(i, j));
            }
        }
        Self {
            rows: k,
            cols: k,
            data,
        }
    }

    /// Smallest principal minor of a Hermitian matrix. A Hermitian matrix is
    /// positive semidefinite iff every principal minor is non-negative, which
    /// avoids needing an eigensolver for these tiny sizes.
    pub fn min_principal_minor(&self) -> Result<f64> {
        if !self.is_square() || self.rows > 8 {
            return Err(Error::Shape("principal minors need a square matrix of size <= 8".into()));
        }
        let n = self.rows;
        let mut min = f64::INFINITY;
        for mask in 1u32..(1 << n) {
            let keep: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let d = self.principal_submatrix(&keep).determinant()?;
            min = min.min(d.re);
        }
        Ok(min)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.data[row * self.cols + col]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Panicking product for shapes known to agree.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pure state amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

/// Tolerance on the squared norm of anything labelled normalized.
pub const NORM_TOLERANCE: f64 = 1e-12;

impl StateVector {
    /// Wraps amplitudes without checking the norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Shape("empty state vector".into()));
        }
        if let Some(k) = amplitudes.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k, col: 0 });
        }
        Ok(Self { amplitudes })
    }

    /// Wraps amplitudes, requiring unit norm within [`NORM_TOLERANCE`].
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let s = Self::new(amplitudes)?;
        s.check_normalized()?;
        Ok(s)
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(())
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut data = Vec::with_capacity(n * n);
        for a in &self.amplitudes {
            for b in &self.amplitudes {
                data.push(a * b.conj());
            }
        }
        ComplexMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Applies a square operator of matching dimension.
    pub fn apply(&self, op: &ComplexMatrix) -> Result<Self> {
        let out = op.matmul(&ComplexMatrix::column(&self.amplitudes))?;
        Ok(Self {
            amplitudes: out.data,
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Traces out subsystem `which` of a square matrix on the tensor product
/// space with factor dimensions `dims` (most significant first). The
/// remaining subsystems keep their order.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], which: usize) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::Shape(format!(
            "partial trace of non-square {}x{} matrix",
            rho.rows, rho.cols
        )));
    }
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || total != rho.rows {
        return Err(Error::Shape(format!(
            "subsystem dimensions {dims:?} do not factor a {}x{} matrix",
            rho.rows, rho.cols
        )));
    }
    if which >= dims.len() {
        return Err(Error::Shape(format!(
            "subsystem index {which} out of range for {} subsystems",
            dims.len()
        )));
    }

    // Split each full index into (outer, traced, inner) digits.
    let d = dims[which];
    let inner: usize = dims[which + 1..].iter().product();
    let outer: usize = dims[..which].iter().product();
    let reduced = outer * inner;
    let full = |o: usize, t: usize, n: usize| (o * d + t) * inner + n;

    let mut out = ComplexMatrix::zeros(reduced, reduced);
    for oi in 0..outer {
        for ni in 0..inner {
            let row = oi * inner + ni;
            for oj in 0..outer {
                for nj in 0..inner {
                    let col = oj * inner + nj;
                    let s: Complex64 = (0..d).map(|t| rho.get(full(oi, t, ni), full(oj, t, nj))).sum();
                    out.data[row * reduced + col] = s;
                }
            }
        }
    }
    Ok(out)
}

/// Truncated power series `sum_{k < terms} A^k / k!`.
///
/// Only used to cross-check closed-form exponentials; for `|A| <= pi/4`
/// 25 terms leave a remainder far below 1e-14.
pub fn matrix_exp(a: &ComplexMatrix, terms: usize) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "exponential of non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    if terms == 0 {
        return Err(Error::Shape("matrix_exp needs at least one term".into()));
    }
    let n = a.rows;
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..terms {
        term = term.matmul(a)?.scale(c(1.0 / k as f64, 0.0));
        sum = &sum + &term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d1() -> ComplexMatrix {
        ComplexMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]])
    }

    fn arb_c() -> impl Strategy<Value = Complex64> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
    }

    fn arb_2x2() -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec(arb_c(), 4).prop_map(|v| ComplexMatrix::new(2, 2, v).unwrap())
    }

    fn arb_density(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec(arb_c(), n * n).prop_map(move |v| {
            let a = ComplexMatrix::new(n, n, v).unwrap();
            let rho = &a * &a.adjoint();
            let tr = rho.trace();
            rho.scale(c(1.0 / tr.re, 0.0))
        })
    }

    #[test]
    fn identity_times_matrix() {
        let m = ComplexMatrix::from_rows([[c(1.0, 2.0), c(-0.5, 0.0)], [c(0.0, 3.0), c(4.0, -1.0)]]);
        assert_eq!(ComplexMatrix::identity(2).matmul(&m).unwrap(), m);
    }

    #[test]
    fn d1_squares_to_minus_identity() {
        let sq = d1().matmul(&d1()).unwrap();
        assert_eq!(sq, ComplexMatrix::identity(2).scale(c(-1.0, 0.0)));
    }

    #[test]
    fn flip_times_d1() {
        let x = ComplexMatrix::from_real([[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(
            x.matmul(&d1()).unwrap(),
            ComplexMatrix::from_real([[-1.0, 0.0], [0.0, 1.0]])
        );
    }

    #[test]
    fn matmul_rejects_bad_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn new_rejects_nan_and_bad_length() {
        assert!(matches!(
            ComplexMatrix::new(1, 2, vec![ONE, c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(ComplexMatrix::new(2, 2, vec![ONE]), Err(Error::Shape(_))));
    }

    #[test]
    fn kron_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_d1_d1_squares_to_identity() {
        let dd = d1().kron(&d1());
        assert_eq!(dd.matmul(&dd).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_basis_ordering() {
        let ket = ComplexMatrix::basis_ket(2, 0).kron(&ComplexMatrix::basis_ket(2, 1));
        assert_eq!(ket, ComplexMatrix::basis_ket(4, 1));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(ComplexMatrix::identity(3).adjoint(), ComplexMatrix::identity(3));
        let m = ComplexMatrix::diagonal(&[I, -I]);
        assert_eq!(m.adjoint(), ComplexMatrix::diagonal(&[-I, I]));
    }

    #[test]
    fn determinant_small_cases() {
        let m = ComplexMatrix::from_real([[2.0, 1.0], [1.0, 3.0]]);
        assert!((m.determinant().unwrap() - c(5.0, 0.0)).norm() < 1e-15);
        assert!((d1().kron(&d1()).determinant().unwrap() - ONE).norm() < 1e-15);
        let singular = ComplexMatrix::from_real([[1.0, 2.0], [2.0, 4.0]]);
        assert_eq!(singular.determinant().unwrap(), ZERO);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let ra = ComplexMatrix::from_rows([[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]]);
        let rb = ComplexMatrix::from_rows([[c(0.4, 0.0), c(0.0, -0.3)], [c(0.0, 0.3), c(0.6, 0.0)]]);
        let joint = ra.kron(&rb);
        assert!(partial_trace(&joint, &[2, 2], 1).unwrap().max_abs_diff(&ra) < 1e-15);
        assert!(partial_trace(&joint, &[2, 2], 0).unwrap().max_abs_diff(&rb) < 1e-15);
    }

    #[test]
    fn partial_trace_shape_errors() {
        let m = ComplexMatrix::identity(4);
        assert!(partial_trace(&m, &[2, 3], 0).is_err());
        assert!(partial_trace(&m, &[2, 2], 2).is_err());
        assert!(partial_trace(&ComplexMatrix::zeros(4, 2), &[2, 2], 0).is_err());
    }

    #[test]
    fn matrix_exp_of_zero() {
        let e = matrix_exp(&ComplexMatrix::zeros(4, 4), 25).unwrap();
        assert_eq!(e, ComplexMatrix::identity(4));
    }

    #[test]
    fn matrix_exp_matches_closed_form_for_involution() {
        // (D1 x D1)^2 = I, so exp(i t G) = cos t I + i sin t G.
        let g = d1().kron(&d1());
        let t = std::f64::consts::FRAC_PI_4;
        let series = matrix_exp(&g.scale(c(0.0, t)), 25).unwrap();
        let closed = &ComplexMatrix::identity(4).scale(c(t.cos(), 0.0)) + &g.scale(c(0.0, t.sin()));
        assert!(series.max_abs_diff(&closed) < 1e-13);
    }

    #[test]
    fn matrix_exp_is_unitary() {
        let g = d1().kron(&d1());
        for gamma in [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2] {
            let e = matrix_exp(&g.scale(c(0.0, gamma / 2.0)), 25).unwrap();
            assert!(e.unitarity_deviation() < 1e-12, "gamma = {gamma}");
        }
    }

    #[test]
    fn psd_check_via_minors() {
        let psd = ComplexMatrix::from_rows([[c(0.5, 0.0), c(0.0, 0.5)], [c(0.0, -0.5), c(0.5, 0.0)]]);
        assert!(psd.min_principal_minor().unwrap() > -1e-15);
        let not_psd = ComplexMatrix::from_real([[1.0, 2.0], [2.0, 1.0]]);
        assert!(not_psd.min_principal_minor().unwrap() < -1.0);
    }

    /// Independent oracle: explicit triple-index sum over the traced factor.
    fn brute_force_trace_out(rho: &ComplexMatrix, which: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(4, 4);
        let idx = |a: usize, b: usize, t: usize| match which {
            0 => t * 4 + a * 2 + b,
            1 => a * 4 + t * 2 + b,
            _ => a * 4 + b * 2 + t,
        };
        let mut data = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        let mut s = ZERO;
                        for t in 0..2 {
                            s += rho.get(idx(a, b, t), idx(a2, b2, t));
                        }
                        data.push(s);
                    }
                }
            }
        }
        out.data = data;
        out
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in arb_2x2(), b in arb_2x2(), m in arb_2x2()) {
            let left = a.kron(&b).kron(&m);
            let right = a.kron(&b.kron(&m));
            prop_assert!(left.max_abs_diff(&right) <= 1e-13);
        }

        #[test]
        fn kron_mixed_product(a in arb_2x2(), b in arb_2x2(), m in arb_2x2(), d in arb_2x2()) {
            let lhs = a.kron(&b).matmul(&m.kron(&d)).unwrap();
            let rhs = a.matmul(&m).unwrap().kron(&b.matmul(&d).unwrap());
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }

        #[test]
        fn adjoint_is_an_involution(v in prop::collection::vec(arb_c(), 6)) {
            let m = ComplexMatrix::new(2, 3, v).unwrap();
            prop_assert_eq!(m.adjoint().adjoint(), m);
        }

        #[test]
        fn partial_trace_matches_brute_force(rho in arb_density(8), which in 0usize..3) {
            let fast = partial_trace(&rho, &[2, 2, 2], which).unwrap();
            let slow = brute_force_trace_out(&rho, which);
            prop_assert!(fast.max_abs_diff(&slow) <= 1e-14);
            prop_assert!((fast.trace() - rho.trace()).norm() <= 1e-12);
        }

        #[test]
        fn partial_trace_preserves_trace_on_mixed_dims(rho in arb_density(6), which in 0usize..2) {
            let reduced = partial_trace(&rho, &[3, 2], which).unwrap();
            prop_assert!((reduced.trace() - rho.trace()).norm() <= 1e-12);
        }
    }
}
