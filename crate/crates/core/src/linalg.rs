//! Dense complex matrices sized for a handful of qubits.
//!
//! Everything the protocol touches (states, projectors, unitaries and Kraus
//! operators) is a [`ComplexMatrix`]. Matrices are stored row-major and never
//! exceed 8x8 in practice, so there is no sparse path and no BLAS.
//!
//! Tensor products follow the usual big-endian convention: in `a.kron(&b)`
//! the left factor indexes the most significant bits of the row and column.

use std::fmt;
use std::ops::{Add, Index, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Per-entry tolerance used when comparing matrices built by this crate.
pub const TOLERANCE: f64 = 1e-12;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting bad lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix with purely real entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix with the given real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * n + i] = c(x, 0.0);
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        let data = u
            .iter()
            .flat_map(|&ui| v.iter().map(move |&vj| ui * vj.conj()))
            .collect();
        Self {
            rows: u.len(),
            cols: v.len(),
            data,
        }
    }

    /// Pure-state projector `|v⟩⟨v|`.
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major view of the entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.cols + col]
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::default() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let r = i * other.rows + k;
                        let s = j * other.cols + l;
                        out.data[r * cols + s] = a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a sequence of factors, leftmost most significant.
    pub fn kron_all<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = &'a ComplexMatrix>,
    {
        factors
            .into_iter()
            .fold(Self::identity(1), |acc, f| acc.kron(f))
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    /// Reduces `self` onto the subsystems listed in `keep`.
    ///
    /// `dims` gives the dimension of every subsystem, most significant first.
    /// Kept subsystems appear in the result in their original relative order,
    /// whatever order `keep` lists them in.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let size: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || size != self.rows {
            return Err(Error::SubsystemMismatch {
                dims: dims.to_vec(),
                size: self.rows,
            });
        }
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let mut kept = vec![false; dims.len()];
        for &k in keep {
            if k >= dims.len() {
                return Err(Error::SubsystemOutOfRange {
                    index: k,
                    count: dims.len(),
                });
            }
            kept[k] = true;
        }

        // Full row/column index for every (kept index, traced index) pair.
        let (mut k_dim, mut t_dim) = (1usize, 1usize);
        let mut kept_part = vec![0usize];
        let mut traced_part = vec![0usize];
        for (s, &d) in dims.iter().enumerate() {
            let stride: usize = dims[s + 1..].iter().product();
            if kept[s] {
                kept_part = kept_part
                    .iter()
                    .flat_map(|&b| (0..d).map(move |x| b + x * stride))
                    .collect();
                k_dim *= d;
            } else {
                traced_part = traced_part
                    .iter()
                    .flat_map(|&b| (0..d).map(move |x| b + x * stride))
                    .collect();
                t_dim *= d;
            }
        }
        let full: Vec<usize> = kept_part
            .iter()
            .flat_map(|&k| traced_part.iter().map(move |&t| k + t))
            .collect();

        let mut out = Self::zeros(k_dim, k_dim);
        for i in 0..k_dim {
            for j in 0..k_dim {
                let acc: C64 = (0..t_dim)
                    .map(|t| self.data[full[i * t_dim + t] * size + full[j * t_dim + t]])
                    .sum();
                out.data[i * k_dim + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(c(factor, 0.0))
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul_adjoint(u)
    }

    /// `E_q ρ E_q†` where `E_q` is the single-qubit `op` acting on qubit
    /// `qubit` of an `n_qubits` register (qubit 0 most significant). Equal to
    /// `conjugate_by` with the identity-padded lift, without building it.
    pub fn conjugate_local(&self, op: &Self, qubit: usize, n_qubits: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if op.shape() != (2, 2) || self.shape() != (dim, dim) || qubit >= n_qubits {
            return Err(Error::ShapeMismatch {
                op: "conjugate_local",
                left: self.shape(),
                right: op.shape(),
            });
        }
        let shift = n_qubits - qubit - 1;
        let bit = 1usize << shift;
        let e = &op.data;
        let mut out = Self::zeros(dim, dim);
        for r in 0..dim {
            let (r0, rq) = (r & !bit, (r >> shift) & 1);
            for s in 0..dim {
                let (s0, sq) = (s & !bit, (s >> shift) & 1);
                let mut acc = C64::default();
                for a in 0..2 {
                    let ea = e[rq * 2 + a];
                    if ea == C64::default() {
                        continue;
                    }
                    let row = (r0 | (a << shift)) * dim;
                    for b in 0..2 {
                        acc += ea * self.data[row + (s0 | (b << shift))] * e[sq * 2 + b].conj();
                    }
                }
                out.data[r * dim + s] = acc;
            }
        }
        Ok(out)
    }

    /// `self · other†` without materializing the adjoint; zero entries are
    /// skipped.
    pub fn matmul_adjoint(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                op: "matmul_adjoint",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let zero = C64::default();
        let mut out = Self::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == zero {
                    continue;
                }
                for j in 0..other.rows {
                    let b = other.data[j * other.cols + k];
                    if b != zero {
                        out.data[i * other.rows + j] += a * b.conj();
                    }
                }
            }
        }
        Ok(out)
    }

    /// `⟨v| self |v⟩`.
    pub fn expectation(&self, v: &[C64]) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch {
                op: "expectation",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let mut acc = C64::default();
        for i in 0..self.rows {
            let row: C64 = (0..self.cols).map(|j| self.get(i, j) * v[j]).sum();
            acc += v[i].conj() * row;
        }
        Ok(acc)
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.adjoint(), tol)
    }

    /// Checks that `self` is Hermitian, has unit trace and is positive
    /// semidefinite, each within `tol`.
    ///
    /// Positivity is probed with `⟨v|ρ|v⟩` over the computational basis and
    /// every `(e_i ± e_j)/√2`, `(e_i ± i·e_j)/√2`. For 2x2 matrices the
    /// determinant is checked as well, which makes the test exact there.
    pub fn validate_density(&self, tol: f64) -> Result<()> {
        let fail = |msg: String| Err(Error::NotDensityMatrix(msg));
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        if !self.is_hermitian(tol) {
            return fail("not Hermitian".into());
        }
        let tr = self.trace()?;
        if (tr - c(1.0, 0.0)).norm() > tol {
            return fail(format!("trace is {tr}"));
        }
        let n = self.rows;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..n {
            if self.get(i, i).re < -tol {
                return fail(format!("negative diagonal entry at {i}"));
            }
            for j in (i + 1)..n {
                for phase in [c(h, 0.), c(-h, 0.), c(0., h), c(0., -h)] {
                    let mut v = vec![C64::default(); n];
                    v[i] = c(h, 0.);
                    v[j] = phase;
                    let e = self.expectation(&v)?.re;
                    if e < -tol {
                        return fail(format!("negative expectation {e} on probe ({i}, {j})"));
                    }
                }
            }
        }
        if n == 2 {
            let det = (self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0)).re;
            if det < -tol {
                return fail(format!("negative determinant {det}"));
            }
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(C64, C64) -> C64,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (row, col): (usize, usize)) -> &C64 {
        &self.data[row * self.cols + col]
    }
}

/// Panics on shape mismatch; use [`ComplexMatrix::try_add`] otherwise.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix shapes must agree")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix shapes must agree")
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

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sx() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }
    fn sy() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
    }
    fn sz() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0])
    }

    fn basis(n: usize, k: usize) -> Vec<C64> {
        (0..n)
            .map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0))
            .collect()
    }

    #[test]
    fn new_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(0., 0.); 3]),
            Err(Error::InvalidLength { .. })
        ));
        assert_eq!(
            ComplexMatrix::from_real(2, 2, &[0.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
        assert!(ComplexMatrix::from_real(1, 2, &[0.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn matmul_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.matmul(&sx()).unwrap(), sx());
        assert_eq!(sx().matmul(&sx()).unwrap(), i2);
        let zx = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert_eq!(sz().matmul(&sx()).unwrap(), zx);
        // i·σ_y has the same entries.
        assert!(sy().scale(c(0., 1.)).approx_eq(&zx, TOLERANCE));
    }

    #[test]
    fn matmul_shape_error() {
        let a = ComplexMatrix::zeros(2, 3);
        let err = a.matmul(&a).unwrap_err();
        assert_eq!(
            err,
            Error::ShapeMismatch {
                op: "matmul",
                left: (2, 3),
                right: (2, 3)
            }
        );
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(sy().adjoint(), sy());
        let a = ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0., 1.), c(0., 0.), c(0., 0.)]).unwrap();
        let expect =
            ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0., 0.), c(0., -1.), c(0., 0.)]).unwrap();
        assert_eq!(a.adjoint(), expect);
        let r = ComplexMatrix::zeros(2, 3);
        assert_eq!(r.adjoint().shape(), (3, 2));
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));

        let ket00 = ComplexMatrix::new(4, 1, basis(4, 0)).unwrap();
        let ket10 = ComplexMatrix::new(4, 1, basis(4, 2)).unwrap();
        assert_eq!(sx().kron(&i2).matmul(&ket00).unwrap(), ket10);

        // |0⟩⟨0| ⊗ σ_z: σ_z in the top-left block, zeros elsewhere.
        let p0 = ComplexMatrix::diag(&[1.0, 0.0]);
        let expect = ComplexMatrix::diag(&[1.0, -1.0, 0.0, 0.0]);
        assert_eq!(p0.kron(&sz()), expect);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(ComplexMatrix::identity(8).trace().unwrap(), c(8.0, 0.0));
        assert_eq!(sx().trace().unwrap(), c(0.0, 0.0));
        assert_eq!(
            ComplexMatrix::zeros(2, 3).trace(),
            Err(Error::NotSquare(2, 3))
        );
    }

    #[test]
    fn partial_trace_bell_pair() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)];
        let rho = ComplexMatrix::projector(&bell);
        let reduced = rho.partial_trace(&[2, 2], &[0]).unwrap();
        assert!(reduced.approx_eq(&ComplexMatrix::identity(2).scale_real(0.5), TOLERANCE));
    }

    #[test]
    fn partial_trace_product_state() {
        let psi = [c(0.6, 0.), c(0., 0.8)];
        let rho = ComplexMatrix::new(
            2,
            2,
            vec![c(0.3, 0.), c(0.1, -0.2), c(0.1, 0.2), c(0.7, 0.)],
        )
        .unwrap();
        let joint = ComplexMatrix::projector(&psi).kron(&rho);
        assert!(joint
            .partial_trace(&[2, 2], &[1])
            .unwrap()
            .approx_eq(&rho, TOLERANCE));
    }

    #[test]
    fn partial_trace_ghz_over_first_qubit() {
        // Oracle: expand (|000⟩+|111⟩)(⟨000|+⟨111|)/2 and drop the A label by hand.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut ghz = vec![c(0., 0.); 8];
        ghz[0] = c(h, 0.);
        ghz[7] = c(h, 0.);
        let rho = ComplexMatrix::projector(&ghz);
        let bc = rho.partial_trace(&[2, 2, 2], &[1, 2]).unwrap();
        assert!(bc.approx_eq(&ComplexMatrix::diag(&[0.5, 0.0, 0.0, 0.5]), TOLERANCE));
    }

    #[test]
    fn partial_trace_keeps_original_order() {
        let a = ComplexMatrix::diag(&[0.25, 0.75]);
        let b = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let d = ComplexMatrix::diag(&[1.0, 0.0]);
        let joint = ComplexMatrix::kron_all([&a, &b, &d]);
        let ad = joint.partial_trace(&[2, 2, 2], &[2, 0]).unwrap();
        assert!(ad.approx_eq(&a.kron(&d), TOLERANCE));
    }

    #[test]
    fn partial_trace_errors() {
        let rho = ComplexMatrix::identity(8);
        assert_eq!(rho.partial_trace(&[2, 2, 2], &[]), Err(Error::EmptyKeep));
        assert!(matches!(
            rho.partial_trace(&[2, 2], &[0]),
            Err(Error::SubsystemMismatch { .. })
        ));
        assert_eq!(
            rho.partial_trace(&[2, 2, 2], &[3]),
            Err(Error::SubsystemOutOfRange { index: 3, count: 3 })
        );
        assert!(matches!(
            ComplexMatrix::zeros(2, 4).partial_trace(&[2], &[0]),
            Err(Error::NotSquare(2, 4))
        ));
    }

    #[test]
    fn expectation_matches_diagonal() {
        let rho = ComplexMatrix::diag(&[0.2, 0.8]);
        assert_eq!(rho.expectation(&basis(2, 1)).unwrap(), c(0.8, 0.0));
        assert!(rho.expectation(&basis(3, 1)).is_err());
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols).prop_map(move |v| {
            ComplexMatrix::new(
                rows,
                cols,
                v.into_iter().map(|(re, im)| c(re, im)).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn local_conjugation_matches_lift(rho in arb_matrix(8, 8), e in arb_matrix(2, 2), q in 0usize..3) {
            let id = |n: usize| ComplexMatrix::identity(1 << n);
            let lift = ComplexMatrix::kron_all([&id(q), &e, &id(2 - q)]);
            let want = lift.matmul(&rho).unwrap().matmul(&lift.adjoint()).unwrap();
            prop_assert!(rho.conjugate_local(&e, q, 3).unwrap().approx_eq(&want, 1e-10));
        }

        #[test]
        fn adjoint_is_involution(a in arb_matrix(3, 2)) {
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn adjoint_reverses_products(a in arb_matrix(2, 3), b in arb_matrix(3, 4)) {
            let lhs = a.matmul(&b).unwrap().adjoint();
            let rhs = b.adjoint().matmul(&a.adjoint()).unwrap();
            prop_assert!(lhs.approx_eq(&rhs, TOLERANCE));
        }

        #[test]
        fn kron_associative_and_trace_multiplicative(
            a in arb_matrix(2, 2), b in arb_matrix(2, 2), d in arb_matrix(2, 2)
        ) {
            let left = a.kron(&b).kron(&d);
            let right = a.kron(&b.kron(&d));
            prop_assert!(left.approx_eq(&right, TOLERANCE));
            let t = a.kron(&b).trace().unwrap();
            prop_assert!((t - a.trace().unwrap() * b.trace().unwrap()).norm() < TOLERANCE);
        }

        #[test]
        fn partial_trace_preserves_trace(a in arb_matrix(8, 8), keep in prop::sample::subsequence(vec![0usize, 1, 2], 1..=3)) {
            let reduced = a.partial_trace(&[2, 2, 2], &keep).unwrap();
            prop_assert!((reduced.trace().unwrap() - a.trace().unwrap()).norm() < TOLERANCE);
        }

        #[test]
        fn partial_trace_in_steps_equals_joint(a in arb_matrix(8, 8)) {
            let joint = a.partial_trace(&[2, 2, 2], &[1]).unwrap();
            let stepwise = a
                .partial_trace(&[2, 2, 2], &[1, 2]).unwrap()
                .partial_trace(&[2, 2], &[0]).unwrap();
            prop_assert!(joint.approx_eq(&stepwise, TOLERANCE));
        }
    }
}
