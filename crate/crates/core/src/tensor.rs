//! Third-order quaternion tensors in CD form, `𝒬 = 𝒬₁ + 𝒬₂·j`.
//!
//! Storage is frontal-slice major: entry `(i, j, r)` lives at
//! `r·m·n + i·n + j` in both component arrays, so slice `r` is a
//! contiguous row-major `m×n` block.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{cd_join, cd_split, Complex, Quaternion};
use crate::linalg::{CMatrix, CdMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CdTensor3 {
    m: usize,
    n: usize,
    p: usize,
    pub(crate) t1: Vec<Complex>,
    pub(crate) t2: Vec<Complex>,
}

impl CdTensor3 {
    pub fn zeros(m: usize, n: usize, p: usize) -> Self {
        let len = m * n * p;
        let z = Complex::new(0.0, 0.0);
        Self {
            m,
            n,
            p,
            t1: vec![z; len],
            t2: vec![z; len],
        }
    }

    pub fn from_parts(
        m: usize,
        n: usize,
        p: usize,
        t1: Vec<Complex>,
        t2: Vec<Complex>,
    ) -> Result<Self> {
        let len = m
            .checked_mul(n)
            .and_then(|v| v.checked_mul(p))
            .ok_or(Error::InvalidArgument("tensor dimensions overflow"))?;
        for part in [&t1, &t2] {
            if part.len() != len {
                return Err(Error::BadLength {
                    expected: len,
                    found: part.len(),
                });
            }
        }
        Ok(Self { m, n, p, t1, t2 })
    }

    /// Entries in storage order.
    pub fn from_quaternions(m: usize, n: usize, p: usize, entries: &[Quaternion]) -> Result<Self> {
        if entries.len() != m * n * p {
            return Err(Error::BadLength {
                expected: m * n * p,
                found: entries.len(),
            });
        }
        let mut t = Self::zeros(m, n, p);
        for (idx, &q) in entries.iter().enumerate() {
            t.set_flat(idx, q);
        }
        Ok(t)
    }

    pub fn from_slices(slices: &[CdMatrix]) -> Result<Self> {
        let first = slices.first().ok_or(Error::ZeroSize("slice count"))?;
        let (m, n) = first.shape();
        let mut t1 = Vec::with_capacity(m * n * slices.len());
        let mut t2 = Vec::with_capacity(m * n * slices.len());
        for s in slices {
            if s.shape() != (m, n) {
                return Err(Error::DimensionMismatch {
                    op: "from_slices",
                    left: (m, n),
                    right: s.shape(),
                });
            }
            t1.extend_from_slice(s.a1.as_slice());
            t2.extend_from_slice(s.a2.as_slice());
        }
        Ok(Self {
            m,
            n,
            p: slices.len(),
            t1,
            t2,
        })
    }

    /// Identity tensor: first slice `I_n`, the rest zero.
    pub fn identity(n: usize, p: usize) -> Self {
        let mut t = Self::zeros(n, n, p);
        for i in 0..n {
            t.t1[i * n + i] = Complex::new(1.0, 0.0);
        }
        t
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.t1.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.t1.is_empty()
    }

    #[inline]
    pub fn t1(&self) -> &[Complex] {
        &self.t1
    }

    #[inline]
    pub fn t2(&self) -> &[Complex] {
        &self.t2
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, r: usize) -> usize {
        debug_assert!(i < self.m && j < self.n && r < self.p);
        r * self.m * self.n + i * self.n + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, r: usize) -> Quaternion {
        let o = self.offset(i, j, r);
        cd_join((self.t1[o], self.t2[o]))
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, r: usize, q: Quaternion) {
        let o = self.offset(i, j, r);
        self.set_flat(o, q);
    }

    #[inline]
    pub fn get_flat(&self, idx: usize) -> Quaternion {
        cd_join((self.t1[idx], self.t2[idx]))
    }

    #[inline]
    pub fn set_flat(&mut self, idx: usize, q: Quaternion) {
        let (p1, p2) = cd_split(q);
        self.t1[idx] = p1;
        self.t2[idx] = p2;
    }

    /// Frontal slice `r` as a CD matrix.
    pub fn slice(&self, r: usize) -> CdMatrix {
        let mn = self.m * self.n;
        let range = r * mn..(r + 1) * mn;
        let a1 = CMatrix::from_vec(self.m, self.n, self.t1[range.clone()].to_vec());
        let a2 = CMatrix::from_vec(self.m, self.n, self.t2[range].to_vec());
        // lengths are correct by construction
        CdMatrix {
            a1: a1.expect("slice length"),
            a2: a2.expect("slice length"),
        }
    }

    pub fn slices(&self) -> Vec<CdMatrix> {
        (0..self.p).map(|r| self.slice(r)).collect()
    }

    /// Tube `(i, j, :)`.
    pub fn tube(&self, i: usize, j: usize) -> Vec<Quaternion> {
        (0..self.p).map(|r| self.get(i, j, r)).collect()
    }

    pub fn to_quaternions(&self) -> Vec<Quaternion> {
        (0..self.len()).map(|idx| self.get_flat(idx)).collect()
    }

    /// Entrywise quaternion conjugate.
    pub fn conj(&self) -> Self {
        Self {
            m: self.m,
            n: self.n,
            p: self.p,
            t1: self.t1.iter().map(|z| z.conj()).collect(),
            t2: self.t2.iter().map(|z| -z).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            m: self.m,
            n: self.n,
            p: self.p,
            t1: self.t1.iter().map(|z| z * s).collect(),
            t2: self.t2.iter().map(|z| z * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                op: "CdTensor3::sub",
                left: (self.m * self.n, self.p),
                right: (other.m * other.n, other.p),
            });
        }
        Ok(Self {
            m: self.m,
            n: self.n,
            p: self.p,
            t1: self.t1.iter().zip(&other.t1).map(|(a, b)| a - b).collect(),
            t2: self.t2.iter().zip(&other.t2).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn frobenius(&self) -> f64 {
        let s: f64 = self.t1.iter().chain(&self.t2).map(|z| z.norm_sqr()).sum();
        libm::sqrt(s)
    }

    /// `‖self − reference‖_F / ‖reference‖_F`, or the absolute error when
    /// the reference is zero.
    pub fn relative_error(&self, reference: &Self) -> Result<f64> {
        let diff = self.sub(reference)?.frobenius();
        let den = reference.frobenius();
        Ok(if den == 0.0 { diff } else { diff / den })
    }

    /// Same dims and every component has the same bit pattern.
    pub fn bitwise_eq(&self, other: &Self) -> bool {
        let same = |a: &[Complex], b: &[Complex]| {
            a.iter()
                .zip(b)
                .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits())
        };
        self.dims() == other.dims() && same(&self.t1, &other.t1) && same(&self.t2, &other.t2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::gen_random_tensor;

    #[test]
    fn layout_is_slice_major() {
        let mut t = CdTensor3::zeros(2, 3, 4);
        t.set(1, 2, 3, Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(t.get_flat(3 * 6 + 5), Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(t.slice(3).get(1, 2), Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(t.tube(1, 2)[3].w, 1.0);
    }

    #[test]
    fn slices_round_trip() {
        let t = gen_random_tensor(3, 2, 5, 7).unwrap();
        let back = CdTensor3::from_slices(&t.slices()).unwrap();
        assert!(back.bitwise_eq(&t));
    }

    #[test]
    fn from_parts_checks_lengths() {
        let z = vec![Complex::new(0.0, 0.0); 5];
        assert!(matches!(
            CdTensor3::from_parts(2, 3, 1, z.clone(), z),
            Err(Error::BadLength {
                expected: 6,
                found: 5
            })
        ));
    }

    #[test]
    fn conj_is_involution() {
        let t = gen_random_tensor(2, 2, 3, 1).unwrap();
        assert_eq!(t.conj().conj(), t);
        assert_eq!(t.conj().get(1, 0, 2), t.get(1, 0, 2).conj());
    }

    #[test]
    fn relative_error_zero_reference() {
        let z = CdTensor3::zeros(1, 1, 2);
        assert_eq!(z.relative_error(&z).unwrap(), 0.0);
        assert!(z.relative_error(&CdTensor3::zeros(1, 1, 3)).is_err());
    }
}
