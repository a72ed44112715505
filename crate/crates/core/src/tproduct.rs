//! T-product of third-order quaternion tensors,
//! `𝒜 ∗ ℬ = fold(bcirc(𝒜)·unfold(ℬ))`.
//!
//! [`tprod_naive`] evaluates that definition literally and is the oracle.
//! [`tprod_fast`] transforms both operands with the conjugating FFT, pairs
//! slice `i` with slice `σ(i) = (p − i) mod p` where the CD algebra demands
//! it, and transforms back.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Complex;
use crate::kernel::gemm_acc;
use crate::linalg::{qmatmul, CMatrix, CdMatrix};
use crate::tensor::CdTensor3;
use crate::transform::{fft_vec, ifft_vec, AxisTransform};
use crate::{Error, Result};

/// Slices stacked vertically: `mp×n`.
pub fn unfold(a: &CdTensor3) -> CdMatrix {
    let (m, n, p) = a.dims();
    // slice-major storage is already the vertical stack
    CdMatrix {
        a1: CMatrix::from_vec(m * p, n, a.t1.clone()).expect("tensor invariants"),
        a2: CMatrix::from_vec(m * p, n, a.t2.clone()).expect("tensor invariants"),
    }
}

/// Inverse of [`unfold`].
pub fn fold(mat: &CdMatrix, p: usize) -> Result<CdTensor3> {
    let (rows, n) = mat.shape();
    if p == 0 || rows % p != 0 {
        return Err(Error::Indivisible { rows, p });
    }
    CdTensor3::from_parts(
        rows / p,
        n,
        p,
        mat.a1.as_slice().to_vec(),
        mat.a2.as_slice().to_vec(),
    )
}

/// `mp×np` block circulant; block `(r, c)` is slice `(r − c) mod p`.
pub fn bcirc_of_tensor(a: &CdTensor3) -> CdMatrix {
    let (m, n, p) = a.dims();
    let mut out = CdMatrix::zeros(m * p, n * p);
    let cols = n * p;
    let (o1, o2) = (out.a1.as_mut_slice(), out.a2.as_mut_slice());
    for br in 0..p {
        for bc in 0..p {
            let src = ((br + p - bc) % p) * m * n;
            for i in 0..m {
                let dst = (br * m + i) * cols + bc * n;
                o1[dst..dst + n].copy_from_slice(&a.t1[src + i * n..src + (i + 1) * n]);
                o2[dst..dst + n].copy_from_slice(&a.t2[src + i * n..src + (i + 1) * n]);
            }
        }
    }
    out
}

fn check_dims(a: &CdTensor3, b: &CdTensor3) -> Result<()> {
    if a.n() != b.m() || a.p() != b.p() {
        return Err(Error::DimensionMismatch {
            op: "tprod",
            left: (a.m() * a.n(), a.p()),
            right: (b.m() * b.n(), b.p()),
        });
    }
    if a.p() == 0 {
        return Err(Error::ZeroSize("tensor depth"));
    }
    Ok(())
}

/// Definitional T-product.
pub fn tprod_naive(a: &CdTensor3, b: &CdTensor3) -> Result<CdTensor3> {
    check_dims(a, b)?;
    fold(&qmatmul(&bcirc_of_tensor(a), &unfold(b))?, a.p())
}

/// Buffers and transform plan for repeated fast T-products of one shape.
#[derive(Clone, Debug)]
pub struct TProdWorkspace {
    dims: (usize, usize, usize, usize),
    axis: AxisTransform,
    a_hat: CdTensor3,
    b_hat: CdTensor3,
    c_hat: CdTensor3,
}

impl TProdWorkspace {
    /// For `m×n×p ∗ n×s×p`.
    pub fn new(m: usize, n: usize, s: usize, p: usize) -> Result<Self> {
        if m == 0 || n == 0 || s == 0 || p == 0 {
            return Err(Error::ZeroSize("tensor dimension"));
        }
        Ok(Self {
            dims: (m, n, s, p),
            axis: AxisTransform::new(p)?,
            a_hat: CdTensor3::zeros(m, n, p),
            b_hat: CdTensor3::zeros(n, s, p),
            c_hat: CdTensor3::zeros(m, s, p),
        })
    }

    pub fn dims(&self) -> (usize, usize, usize, usize) {
        self.dims
    }

    pub fn a_hat(&self) -> &CdTensor3 {
        &self.a_hat
    }

    pub fn b_hat(&self) -> &CdTensor3 {
        &self.b_hat
    }

    pub fn c_hat(&self) -> &CdTensor3 {
        &self.c_hat
    }

    /// Runs all three steps, writing `𝒜 ∗ ℬ` into `out`.
    pub fn compute(&mut self, a: &CdTensor3, b: &CdTensor3, out: &mut CdTensor3) -> Result<()> {
        let (m, n, s, p) = self.dims;
        if a.dims() != (m, n, p) || b.dims() != (n, s, p) || out.dims() != (m, s, p) {
            return Err(Error::DimensionMismatch {
                op: "TProdWorkspace::compute",
                left: (m * n, p),
                right: (n * s, p),
            });
        }
        self.axis.forward_conj(a, &mut self.a_hat);
        self.axis.forward_conj(b, &mut self.b_hat);
        self.pair_slices();
        self.axis.inverse_conj_reflected(&self.c_hat, out);
        Ok(())
    }

    /// `Ĉ₁[i] = Â₁[σi]·B̂₁[σi] − conj(Â₂[i])·B̂₂[σi]`,
    /// `Ĉ₂[i] = conj(Â₁[σi])·B̂₂[i] + Â₂[i]·B̂₁[i]`.
    fn pair_slices(&mut self) {
        let (m, n, s, p) = self.dims;
        let (amn, bns, cms) = (m * n, n * s, m * s);
        let a1 = &self.a_hat.t1;
        let a2 = &self.a_hat.t2;
        let b1 = &self.b_hat.t1;
        let b2 = &self.b_hat.t2;
        let c1 = &mut self.c_hat.t1;
        let c2 = &mut self.c_hat.t2;
        c1.iter_mut()
            .chain(c2.iter_mut())
            .for_each(|z| *z = Complex::new(0.0, 0.0));
        for i in 0..p {
            let sg = (p - i) % p;
            let a_i = i * amn..(i + 1) * amn;
            let a_s = sg * amn..(sg + 1) * amn;
            let b_i = i * bns..(i + 1) * bns;
            let b_s = sg * bns..(sg + 1) * bns;
            let out1 = &mut c1[i * cms..(i + 1) * cms];
            gemm_acc::<false, false>(out1, &a1[a_s.clone()], &b1[b_s.clone()], m, n, s, 1.0);
            gemm_acc::<true, false>(out1, &a2[a_i.clone()], &b2[b_s], m, n, s, -1.0);
            let out2 = &mut c2[i * cms..(i + 1) * cms];
            gemm_acc::<true, false>(out2, &a1[a_s], &b2[b_i.clone()], m, n, s, 1.0);
            gemm_acc::<false, false>(out2, &a2[a_i], &b1[b_i], m, n, s, 1.0);
        }
    }
}

/// FFT-based T-product.
pub fn tprod_fast(a: &CdTensor3, b: &CdTensor3) -> Result<CdTensor3> {
    check_dims(a, b)?;
    let (m, n, p) = a.dims();
    let s = b.n();
    let mut ws = TProdWorkspace::new(m, n, s, p)?;
    let mut out = CdTensor3::zeros(m, s, p);
    ws.compute(a, b, &mut out)?;
    Ok(out)
}

/// The complex-tensor algorithm: plain FFT along the tubes, independent
/// slice products, inverse FFT. Only valid without `j` parts; kept as a
/// cross-check for the fast path on that subclass.
pub fn tprod_slicewise_fft(a: &CdTensor3, b: &CdTensor3) -> Result<CdTensor3> {
    check_dims(a, b)?;
    let zero = Complex::new(0.0, 0.0);
    if a.t2.iter().chain(&b.t2).any(|&z| z != zero) {
        return Err(Error::InvalidArgument(
            "slice-wise FFT product needs complex tensors",
        ));
    }
    let (m, n, p) = a.dims();
    let s = b.n();
    let along = |src: &[Complex], mn: usize, inverse: bool| -> Result<Vec<Complex>> {
        let mut out = vec![zero; src.len()];
        for e in 0..mn {
            let tube: Vec<_> = (0..p).map(|r| src[r * mn + e]).collect();
            let t = if inverse {
                ifft_vec(&tube)?
            } else {
                fft_vec(&tube)?
            };
            for (r, v) in t.into_iter().enumerate() {
                out[r * mn + e] = v;
            }
        }
        Ok(out)
    };
    let ah = along(&a.t1, m * n, false)?;
    let bh = along(&b.t1, n * s, false)?;
    let mut ch = vec![zero; m * s * p];
    for i in 0..p {
        gemm_acc::<false, false>(
            &mut ch[i * m * s..(i + 1) * m * s],
            &ah[i * m * n..(i + 1) * m * n],
            &bh[i * n * s..(i + 1) * n * s],
            m,
            n,
            s,
            1.0,
        );
    }
    CdTensor3::from_parts(m, s, p, along(&ch, m * s, true)?, vec![zero; m * s * p])
}

/// Real-operation counts for one `m×n×p ∗ n×s×p` product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlopCounts {
    /// Slice products of the fast path: `16mnsp`.
    pub fast_mults: u64,
    /// `8m(n−1)sp + 8mnsp`.
    pub fast_adds: u64,
    /// Transform term `2(mn + ns + ms)·p·log₂p`, rounded.
    pub fast_transform: u64,
    /// `16mnsp²`.
    pub naive_mults: u64,
    /// `4mps(np − 1) + 12mnsp²`.
    pub naive_adds: u64,
}

impl FlopCounts {
    pub fn fast_total(&self) -> u64 {
        self.fast_mults
            .saturating_add(self.fast_adds)
            .saturating_add(self.fast_transform)
    }

    pub fn naive_total(&self) -> u64 {
        self.naive_mults.saturating_add(self.naive_adds)
    }
}

pub fn flops_estimate(m: usize, n: usize, s: usize, p: usize) -> Result<FlopCounts> {
    if m == 0 || n == 0 || s == 0 || p == 0 {
        return Err(Error::ZeroSize("tensor dimension"));
    }
    let (m, n, s, p) = (m as u64, n as u64, s as u64, p as u64);
    let mul = |xs: &[u64]| xs.iter().fold(1u64, |acc, &x| acc.saturating_mul(x));
    let mnsp = mul(&[m, n, s, p]);
    let mnsp2 = mnsp.saturating_mul(p);
    let lg = libm::log2(p as f64);
    let face = (m * n + n * s + m * s) as f64;
    Ok(FlopCounts {
        fast_mults: mnsp.saturating_mul(16),
        fast_adds: mul(&[8, m, n - 1, s, p]).saturating_add(mnsp.saturating_mul(8)),
        fast_transform: libm::round(2.0 * face * p as f64 * lg) as u64,
        naive_mults: mnsp2.saturating_mul(16),
        naive_adds: mul(&[4, m, p, s, n * p - 1]).saturating_add(mnsp2.saturating_mul(12)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{qmul, Quaternion};
    use crate::linalg::{bcirc_build, CirculantGen};
    use crate::random::{gen_random_tensor, SeededRng};

    #[test]
    fn sigma_pinned() {
        let sigma = |p: usize| (0..p).map(|i| (p - i) % p).collect::<Vec<_>>();
        assert_eq!(sigma(1), [0]);
        assert_eq!(sigma(2), [0, 1]);
        assert_eq!(sigma(3), [0, 2, 1]);
        assert_eq!(sigma(4), [0, 3, 2, 1]);
    }

    #[test]
    fn unfold_fold() {
        let a = gen_random_tensor(2, 2, 1, 1).unwrap();
        assert_eq!(unfold(&a), a.slice(0));
        let b = gen_random_tensor(3, 4, 5, 2).unwrap();
        assert!(fold(&unfold(&b), 5).unwrap().bitwise_eq(&b));
        assert!(matches!(
            fold(&unfold(&b), 4),
            Err(Error::Indivisible { rows: 15, p: 4 })
        ));
    }

    #[test]
    fn bcirc_agrees_with_generator_builder() {
        let a = gen_random_tensor(2, 3, 4, 3).unwrap();
        let g = CirculantGen::new(a.slices()).unwrap();
        let bc = bcirc_of_tensor(&a);
        assert_eq!(bc, bcirc_build(&g));
        let u = unfold(&a);
        for r in 0..8 {
            for c in 0..3 {
                assert_eq!(bc.get(r, c), u.get(r, c));
            }
        }
    }

    #[test]
    fn naive_trivial_cases() {
        let a = gen_random_tensor(3, 2, 1, 4).unwrap();
        let b = gen_random_tensor(2, 4, 1, 5).unwrap();
        assert_eq!(
            tprod_naive(&a, &b).unwrap().slice(0),
            qmatmul(&a.slice(0), &b.slice(0)).unwrap()
        );
        let a = gen_random_tensor(3, 4, 5, 6).unwrap();
        let id = CdTensor3::identity(4, 5);
        assert!(tprod_naive(&a, &id).unwrap().relative_error(&a).unwrap() <= 1e-15);
    }

    #[test]
    fn scalar_tubes_convolve() {
        let mut rng = SeededRng::new(7);
        let p = 6;
        let a = rng.quaternions(p);
        let b = rng.quaternions(p);
        let ta = CdTensor3::from_quaternions(1, 1, p, &a).unwrap();
        let tb = CdTensor3::from_quaternions(1, 1, p, &b).unwrap();
        let c = tprod_naive(&ta, &tb).unwrap().tube(0, 0);
        for (k, ck) in c.iter().enumerate() {
            let want = (0..p).fold(Quaternion::ZERO, |acc, t| {
                acc + qmul(a[(k + p - t) % p], b[t])
            });
            assert!((*ck - want).norm() < 1e-14);
        }
    }

    #[test]
    fn fast_matches_naive() {
        for (m, n, s, p, seed) in [
            (5, 4, 3, 6, 1),
            (1, 1, 1, 1, 2),
            (2, 3, 2, 2, 3),
            (3, 3, 3, 7, 4),
            (2, 1, 3, 12, 5),
        ] {
            let a = gen_random_tensor(m, n, p, seed).unwrap();
            let b = gen_random_tensor(n, s, p, seed + 100).unwrap();
            let rel = tprod_fast(&a, &b)
                .unwrap()
                .relative_error(&tprod_naive(&a, &b).unwrap())
                .unwrap();
            assert!(rel <= 1e-13, "{m}x{n}x{s} p={p}: {rel}");
        }
    }

    #[test]
    fn fast_p1_is_matrix_product() {
        let a = gen_random_tensor(3, 2, 1, 8).unwrap();
        let b = gen_random_tensor(2, 3, 1, 9).unwrap();
        let want = qmatmul(&a.slice(0), &b.slice(0)).unwrap();
        assert!(
            tprod_fast(&a, &b)
                .unwrap()
                .slice(0)
                .sub(&want)
                .unwrap()
                .frobenius()
                < 1e-14
        );
    }

    #[test]
    fn complex_inputs_match_slicewise() {
        let mut rng = SeededRng::new(10);
        let mk = |rng: &mut SeededRng, m, n, p| {
            let q: Vec<_> = (0..m * n * p)
                .map(|_| Quaternion::from_complex(rng.complex()))
                .collect();
            CdTensor3::from_quaternions(m, n, p, &q).unwrap()
        };
        let a = mk(&mut rng, 3, 2, 5);
        let b = mk(&mut rng, 2, 4, 5);
        let slice = tprod_slicewise_fft(&a, &b).unwrap();
        assert!(tprod_fast(&a, &b).unwrap().relative_error(&slice).unwrap() <= 1e-13);
        assert!(tprod_naive(&a, &b).unwrap().relative_error(&slice).unwrap() <= 1e-13);
        let q = gen_random_tensor(3, 2, 5, 1).unwrap();
        assert!(tprod_slicewise_fft(&q, &b).is_err());
    }

    #[test]
    fn mismatch_rejected() {
        let a = gen_random_tensor(2, 3, 4, 1).unwrap();
        let b = gen_random_tensor(2, 3, 4, 2).unwrap();
        assert!(tprod_fast(&a, &b).is_err());
        assert!(tprod_naive(&a, &b).is_err());
        let c = gen_random_tensor(3, 3, 5, 2).unwrap();
        assert!(tprod_fast(&a, &c).is_err());
    }

    #[test]
    fn flop_counts() {
        let f = flops_estimate(1, 1, 1, 2).unwrap();
        assert_eq!(f.naive_mults, 64);
        assert_eq!(f.fast_mults, 32);
        assert_eq!(f.naive_adds, 4 * 2 + 12 * 4);
        assert_eq!(f.fast_adds, 16);
        assert_eq!(f.fast_transform, 12);
        let g = flops_estimate(7, 3, 5, 11).unwrap();
        assert_eq!(g.naive_mults / g.fast_mults, 11);
        assert!(flops_estimate(0, 1, 1, 1).is_err());
    }
}
