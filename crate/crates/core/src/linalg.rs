//! Dense matrices over ℂ, ℍ (Cayley–Dickson form) and 𝕆.
//!
//! Quaternion matrices are stored as a pair of complex matrices,
//! `A = A₁ + A₂·j`; every fast-path formula works on those components.
//! Octonion matrices exist for brute-force verification only and always
//! multiply with left association.
//!
//! Norms are Frobenius norms over all real components.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Index, IndexMut};

use crate::algebra::{c64, cd_join, cd_split, Complex, Octonion, Quaternion};
use crate::kernel::gemm_acc_dyn;
use crate::{Error, Result};

/// `e^{-2πi·k/p}` with the exponent reduced mod `p` before evaluation.
pub fn root_of_unity(k: usize, p: usize) -> Complex {
    let k = k % p;
    // quarter turns exactly, so real inputs keep real spectra where they should
    if (4 * k) % p == 0 {
        return [c64(1.0, 0.0), c64(0.0, -1.0), c64(-1.0, 0.0), c64(0.0, 1.0)][4 * k / p];
    }
    let theta = -2.0 * PI * (k as f64) / (p as f64);
    c64(libm::cos(theta), libm::sin(theta))
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadLength {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, vals: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, vals.iter().map(|&v| c64(v, 0.0)).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [Complex] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex> {
        self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(Complex, Complex) -> Complex,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Frobenius norm of everything off the main diagonal.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c {
                    acc += self[(r, c)].norm_sqr();
                }
            }
        }
        libm::sqrt(acc)
    }

    pub fn diagonal(&self) -> Vec<Complex> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| f64::max(m, (a - b).norm()))
    }

    /// `self ⊗ I_m`.
    pub fn kron_identity(&self, m: usize) -> Self {
        let mut out = Self::zeros(self.rows * m, self.cols * m);
        for r in 0..self.rows {
            for c in 0..self.cols {
                for t in 0..m {
                    out[(r * m + t, c * m + t)] = self[(r, c)];
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex {
        &mut self.data[r * self.cols + c]
    }
}

/// Complex matrix product.
pub fn cmatmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "cmatmul",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut out = CMatrix::zeros(a.rows, b.cols);
    gemm_acc_dyn(
        &mut out.data,
        &a.data,
        false,
        &b.data,
        false,
        (a.rows, a.cols, b.cols),
        1.0,
    );
    Ok(out)
}

/// Normalized DFT matrix, entry `(s, m) = ω^{s·m}/√p` with `ω = e^{-2πi/p}`
/// (zero-based indices).
pub fn dft_matrix(p: usize) -> Result<CMatrix> {
    if p == 0 {
        return Err(Error::ZeroSize("DFT size"));
    }
    let scale = 1.0 / libm::sqrt(p as f64);
    Ok(CMatrix::from_fn(p, p, |s, m| {
        root_of_unity(s * m, p) * scale
    }))
}

/// The involution `P_p = F_p·F_p`: `P₁₁ = 1`, and for one-based `i, j ≥ 2`,
/// `P_ij = 1` iff `i + j = p + 2`.
pub fn perm_matrix(p: usize) -> Result<CMatrix> {
    if p == 0 {
        return Err(Error::ZeroSize("permutation size"));
    }
    let mut out = CMatrix::zeros(p, p);
    for i in 0..p {
        out[(i, reflect_index(i, p))] = c64(1.0, 0.0);
    }
    Ok(out)
}

/// Zero-based form of the one-based map `i ↦ p + 2 − i` with `p + 1 ≡ 1`.
#[inline]
pub const fn reflect_index(i: usize, p: usize) -> usize {
    (p - i % p) % p
}

/// Quaternion matrix `A₁ + A₂·j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CdMatrix {
    pub a1: CMatrix,
    pub a2: CMatrix,
}

impl CdMatrix {
    pub fn new(a1: CMatrix, a2: CMatrix) -> Result<Self> {
        if a1.shape() != a2.shape() {
            return Err(Error::DimensionMismatch {
                op: "CdMatrix::new",
                left: a1.shape(),
                right: a2.shape(),
            });
        }
        Ok(Self { a1, a2 })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            a1: CMatrix::zeros(rows, cols),
            a2: CMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a1: CMatrix::identity(n),
            a2: CMatrix::zeros(n, n),
        }
    }

    /// Complex matrix viewed as a quaternion matrix.
    pub fn from_complex(a1: CMatrix) -> Self {
        let (r, c) = a1.shape();
        Self {
            a1,
            a2: CMatrix::zeros(r, c),
        }
    }

    pub fn from_quaternions(rows: usize, cols: usize, entries: &[Quaternion]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadLength {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let mut out = Self::zeros(rows, cols);
        for (idx, &q) in entries.iter().enumerate() {
            let (p1, p2) = cd_split(q);
            out.a1.data[idx] = p1;
            out.a2.data[idx] = p2;
        }
        Ok(out)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, f(r, c));
            }
        }
        out
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.a1.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.a1.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        self.a1.shape()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        cd_join((self.a1[(r, c)], self.a2[(r, c)]))
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        let (p1, p2) = cd_split(q);
        self.a1[(r, c)] = p1;
        self.a2[(r, c)] = p2;
    }

    /// `(A₁ + A₂j)* = A₁* − A₂ᵀ·j`.
    pub fn conj_transpose(&self) -> Self {
        Self {
            a1: self.a1.adjoint(),
            a2: self.a2.transpose().scale(-1.0),
        }
    }

    /// Entrywise quaternion conjugate `Ā₁ − A₂·j`.
    pub fn conj(&self) -> Self {
        Self {
            a1: self.a1.conj(),
            a2: self.a2.scale(-1.0),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            a1: self.a1.scale(s),
            a2: self.a2.scale(s),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            a1: self.a1.add(&other.a1)?,
            a2: self.a2.add(&other.a2)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            a1: self.a1.sub(&other.a1)?,
            a2: self.a2.sub(&other.a2)?,
        })
    }

    pub fn frobenius(&self) -> f64 {
        libm::hypot(self.a1.frobenius(), self.a2.frobenius())
    }

    pub fn off_diagonal_norm(&self) -> f64 {
        libm::hypot(self.a1.off_diagonal_norm(), self.a2.off_diagonal_norm())
    }

    pub fn diagonal(&self) -> Vec<Quaternion> {
        (0..self.rows().min(self.cols()))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// `self ⊗ I_m`.
    pub fn kron_identity(&self, m: usize) -> Self {
        Self {
            a1: self.a1.kron_identity(m),
            a2: self.a2.kron_identity(m),
        }
    }

    /// Entries as quaternions, row-major.
    pub fn to_quaternions(&self) -> Vec<Quaternion> {
        (0..self.rows() * self.cols())
            .map(|idx| cd_join((self.a1.data[idx], self.a2.data[idx])))
            .collect()
    }
}

/// Quaternion matrix product through the CD rule
/// `(A₁ + A₂j)(B₁ + B₂j) = (A₁B₁ − A₂B̄₂) + (A₁B₂ + A₂B̄₁)j`.
pub fn qmatmul(a: &CdMatrix, b: &CdMatrix) -> Result<CdMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "qmatmul",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let dims = (a.rows(), a.cols(), b.cols());
    let mut out = CdMatrix::zeros(a.rows(), b.cols());
    gemm_acc_dyn(
        &mut out.a1.data,
        &a.a1.data,
        false,
        &b.a1.data,
        false,
        dims,
        1.0,
    );
    gemm_acc_dyn(
        &mut out.a1.data,
        &a.a2.data,
        false,
        &b.a2.data,
        true,
        dims,
        -1.0,
    );
    gemm_acc_dyn(
        &mut out.a2.data,
        &a.a1.data,
        false,
        &b.a2.data,
        false,
        dims,
        1.0,
    );
    gemm_acc_dyn(
        &mut out.a2.data,
        &a.a2.data,
        false,
        &b.a1.data,
        true,
        dims,
        1.0,
    );
    Ok(out)
}

/// Generators of a block circulant matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CirculantGen {
    gens: Vec<CdMatrix>,
}

impl CirculantGen {
    pub fn new(gens: Vec<CdMatrix>) -> Result<Self> {
        let first = gens.first().ok_or(Error::ZeroSize("generator count"))?;
        let shape = first.shape();
        if let Some(bad) = gens.iter().find(|g| g.shape() != shape) {
            return Err(Error::DimensionMismatch {
                op: "CirculantGen::new",
                left: shape,
                right: bad.shape(),
            });
        }
        Ok(Self { gens })
    }

    /// Scalar circulant `circ(q₁, …, q_p)`.
    pub fn scalar(q: &[Quaternion]) -> Result<Self> {
        Self::new(
            q.iter()
                .map(|&v| CdMatrix::from_fn(1, 1, |_, _| v))
                .collect(),
        )
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.gens.len()
    }

    #[inline]
    pub fn block_shape(&self) -> (usize, usize) {
        self.gens[0].shape()
    }

    pub fn gens(&self) -> &[CdMatrix] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<CdMatrix> {
        self.gens
    }
}

/// `bcirc(A₁, …, A_p)`: block `(r, c)` is `gens[(r − c) mod p]`.
pub fn bcirc_build(g: &CirculantGen) -> CdMatrix {
    let p = g.p();
    let (m, n) = g.block_shape();
    let mut out = CdMatrix::zeros(m * p, n * p);
    for br in 0..p {
        for bc in 0..p {
            let blk = &g.gens[(br + p - bc) % p];
            for i in 0..m {
                for j in 0..n {
                    out.a1[(br * m + i, bc * n + j)] = blk.a1[(i, j)];
                    out.a2[(br * m + i, bc * n + j)] = blk.a2[(i, j)];
                }
            }
        }
    }
    out
}

/// Complex circulant with first column `a`.
pub fn circ_complex(a: &[Complex]) -> CMatrix {
    let p = a.len();
    CMatrix::from_fn(p, p, |r, c| a[(r + p - c) % p])
}

/// Dense octonion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OctMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Octonion>,
}

impl OctMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Octonion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Octonion::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Octonion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Entries `F_rc · u` for a complex matrix `F` and octonion `u`.
    pub fn complex_times(f: &CMatrix, u: Octonion) -> Self {
        Self::from_fn(f.rows, f.cols, |r, c| Octonion::complex_times(f[(r, c)], u))
    }

    /// Embeds a quaternion matrix.
    pub fn from_cd(a: &CdMatrix) -> Self {
        Self::from_fn(a.rows(), a.cols(), |r, c| {
            Octonion::from_quaternion(a.get(r, c))
        })
    }

    /// Quaternion parts of every entry, plus the Frobenius norm of the
    /// discarded `l` parts.
    pub fn to_cd(&self) -> (CdMatrix, f64) {
        let mut out = CdMatrix::zeros(self.rows, self.cols);
        let mut residual = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let o = self[(r, c)];
                out.set(r, c, o.quaternion_part());
                residual += o.l_part().norm_sqr();
            }
        }
        (out, libm::sqrt(residual))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|o| o.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "OctMatrix::add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|o| o.norm_sqr()).sum())
    }

    pub fn off_diagonal_norm(&self) -> f64 {
        self.off_block_diagonal_norm(1, 1)
    }

    /// Frobenius norm outside the diagonal blocks of size `m×n`.
    pub fn off_block_diagonal_norm(&self, m: usize, n: usize) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r / m != c / n {
                    acc += self[(r, c)].norm_sqr();
                }
            }
        }
        libm::sqrt(acc)
    }

    pub fn diagonal(&self) -> Vec<Octonion> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    /// `self ⊗ I_m`.
    pub fn kron_identity(&self, m: usize) -> Self {
        let mut out = Self::zeros(self.rows * m, self.cols * m);
        for r in 0..self.rows {
            for c in 0..self.cols {
                for t in 0..m {
                    out[(r * m + t, c * m + t)] = self[(r, c)];
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for OctMatrix {
    type Output = Octonion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Octonion {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for OctMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Octonion {
        &mut self.data[r * self.cols + c]
    }
}

/// `(AB)_ik = Σ_j A_ij·B_jk`, each term an octonion product.
pub fn omatmul(a: &OctMatrix, b: &OctMatrix) -> Result<OctMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "omatmul",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut out = OctMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == Octonion::ZERO {
                continue;
            }
            for k in 0..b.cols {
                let bjk = b[(j, k)];
                if bjk != Octonion::ZERO {
                    out[(i, k)] += aij * bjk;
                }
            }
        }
    }
    Ok(out)
}

/// `(L·M)·R`.
pub fn osandwich(l: &OctMatrix, m: &OctMatrix, r: &OctMatrix) -> Result<OctMatrix> {
    omatmul(&omatmul(l, m)?, r)
}

/// `L·(M·R)`, for comparing association orders.
pub fn osandwich_right(l: &OctMatrix, m: &OctMatrix, r: &OctMatrix) -> Result<OctMatrix> {
    omatmul(l, &omatmul(m, r)?)
}

/// `max(‖AA* − I‖, ‖A*A − I‖)`.
pub fn unitarity_defect(a: &OctMatrix) -> Result<f64> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let id = OctMatrix::identity(a.rows);
    let star = a.conj_transpose();
    let left = omatmul(a, &star)?.sub(&id)?.frobenius();
    let right = omatmul(&star, a)?.sub(&id)?.frobenius();
    Ok(f64::max(left, right))
}

pub fn is_unitary(a: &OctMatrix, tol: f64) -> Result<bool> {
    Ok(unitarity_defect(a)? <= tol)
}

/// Same check for a quaternion matrix, associative so no ordering caveat.
pub fn cd_unitarity_defect(a: &CdMatrix) -> Result<f64> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let id = CdMatrix::identity(a.rows());
    let star = a.conj_transpose();
    let left = qmatmul(a, &star)?.sub(&id)?.frobenius();
    let right = qmatmul(&star, a)?.sub(&id)?.frobenius();
    Ok(f64::max(left, right))
}
