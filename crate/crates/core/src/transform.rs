//! Discrete Fourier transforms on vectors and along the third axis of CD
//! tensors.
//!
//! Convention used everywhere in the crate: the forward transform is
//! unnormalized with `ω = e^{-2πi/p}`, so `fft(x) = √p·F_p·x` where `F_p` is
//! the normalized DFT matrix of [`crate::linalg::dft_matrix`]. The inverse
//! carries the `1/p`.
//!
//! Lengths factor into radices 4, 2, 3, 5, 7, …; any prime factor above
//! [`MAX_DIRECT_RADIX`] switches the whole length to Bluestein's chirp
//! transform over a power-of-two plan.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::algebra::{c64, Complex};
use crate::linalg::root_of_unity;
use crate::tensor::CdTensor3;
use crate::{Error, Result};

/// Largest prime factor handled by a direct butterfly.
pub const MAX_DIRECT_RADIX: usize = 31;

const ZERO: Complex = c64(0.0, 0.0);

/// `y_s = Σ_m ω^{s·m} x_m`, evaluated term by term. Test oracle.
pub fn dft_vec_naive(x: &[Complex]) -> Result<Vec<Complex>> {
    let p = x.len();
    if p == 0 {
        return Err(Error::ZeroSize("DFT input"));
    }
    Ok((0..p)
        .map(|s| {
            x.iter()
                .enumerate()
                .fold(ZERO, |acc, (m, &v)| acc + v * root_of_unity(s * m, p))
        })
        .collect())
}

#[derive(Clone, Debug)]
enum Strategy {
    /// Mixed-radix factors, outermost first.
    Radix(Vec<usize>),
    Bluestein(Box<Bluestein>),
}

#[derive(Clone, Debug)]
struct Bluestein {
    /// `e^{-iπk²/n}` for `k < n`.
    chirp: Vec<Complex>,
    /// Transformed, zero-padded conjugate chirp.
    kernel: Vec<Complex>,
    inner: FftPlan,
}

/// Precomputed forward transform of one length.
#[derive(Clone, Debug)]
pub struct FftPlan {
    n: usize,
    twiddles: Vec<Complex>,
    strategy: Strategy,
}

impl FftPlan {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize("FFT length"));
        }
        let twiddles = (0..n).map(|t| root_of_unity(t, n)).collect();
        let factors = factorize(n);
        let strategy = if factors.iter().any(|&f| f > MAX_DIRECT_RADIX) {
            Strategy::Bluestein(Box::new(Bluestein::new(n)?))
        } else {
            Strategy::Radix(factors)
        };
        Ok(Self {
            n,
            twiddles,
            strategy,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unnormalized forward DFT of `input` into `out`.
    pub fn forward(&self, input: &[Complex], out: &mut [Complex]) {
        assert_eq!(input.len(), self.n, "FFT input length");
        assert_eq!(out.len(), self.n, "FFT output length");
        match &self.strategy {
            Strategy::Radix(factors) => radix_rec(input, 1, out, factors, &self.twiddles, 1),
            Strategy::Bluestein(b) => b.run(input, out),
        }
    }

    /// Inverse DFT including the `1/n` factor.
    pub fn inverse(&self, input: &[Complex], out: &mut [Complex]) {
        let conj: Vec<Complex> = input.iter().map(|z| z.conj()).collect();
        self.forward(&conj, out);
        let s = 1.0 / self.n as f64;
        out.iter_mut().for_each(|z| *z = z.conj() * s);
    }
}

/// Radix 4 first, then 2, then odd primes ascending.
fn factorize(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while n % 4 == 0 {
        out.push(4);
        n /= 4;
    }
    if n % 2 == 0 {
        out.push(2);
        n /= 2;
    }
    let mut f = 3;
    while f * f <= n {
        while n % f == 0 {
            out.push(f);
            n /= f;
        }
        f += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Decimation in time. `tw[t·tw_stride] = ω_len^t` with `len = Π factors`.
fn radix_rec(
    input: &[Complex],
    stride: usize,
    out: &mut [Complex],
    factors: &[usize],
    tw: &[Complex],
    tw_stride: usize,
) {
    let n = out.len();
    let Some((&r, rest)) = factors.split_first() else {
        out[0] = input[0];
        return;
    };
    let m = n / r;
    if rest.is_empty() {
        // m == 1: a direct length-r DFT of the strided input
        for (q, o) in out.iter_mut().enumerate() {
            *o = (0..r).fold(ZERO, |acc, s| {
                acc + input[s * stride] * tw[((s * q) % r) * tw_stride]
            });
        }
        return;
    }
    for s in 0..r {
        radix_rec(
            &input[s * stride..],
            stride * r,
            &mut out[s * m..(s + 1) * m],
            rest,
            tw,
            tw_stride * r,
        );
    }
    match r {
        2 => {
            for k in 0..m {
                let t0 = out[k];
                let t1 = out[m + k] * tw[k * tw_stride];
                out[k] = t0 + t1;
                out[m + k] = t0 - t1;
            }
        }
        4 => {
            for k in 0..m {
                let t0 = out[k];
                let t1 = out[m + k] * tw[k * tw_stride];
                let t2 = out[2 * m + k] * tw[2 * k * tw_stride];
                let t3 = out[3 * m + k] * tw[3 * k * tw_stride];
                let (a, b) = (t0 + t2, t0 - t2);
                let (c, d) = (t1 + t3, t1 - t3);
                // −i·d
                let d_rot = c64(d.im, -d.re);
                out[k] = a + c;
                out[m + k] = b + d_rot;
                out[2 * m + k] = a - c;
                out[3 * m + k] = b - d_rot;
            }
        }
        _ => {
            let mut t = [ZERO; MAX_DIRECT_RADIX];
            for k in 0..m {
                for (s, ts) in t.iter_mut().enumerate().take(r) {
                    *ts = out[s * m + k] * tw[s * k * tw_stride];
                }
                for q in 0..r {
                    out[q * m + k] = (0..r).fold(ZERO, |acc, s| {
                        acc + t[s] * tw[((s * q) % r) * m * tw_stride]
                    });
                }
            }
        }
    }
}

impl Bluestein {
    fn new(n: usize) -> Result<Self> {
        let size = (2 * n - 1).next_power_of_two();
        let inner = FftPlan::new(size)?;
        let two_n = 2 * n as u128;
        let chirp: Vec<Complex> = (0..n)
            .map(|k| {
                let k2 = ((k as u128 * k as u128) % two_n) as f64;
                let theta = -PI * k2 / n as f64;
                c64(libm::cos(theta), libm::sin(theta))
            })
            .collect();
        let mut b = vec![ZERO; size];
        b[0] = chirp[0].conj();
        for k in 1..n {
            b[k] = chirp[k].conj();
            b[size - k] = chirp[k].conj();
        }
        let mut kernel = vec![ZERO; size];
        inner.forward(&b, &mut kernel);
        Ok(Self {
            chirp,
            kernel,
            inner,
        })
    }

    fn run(&self, input: &[Complex], out: &mut [Complex]) {
        let size = self.kernel.len();
        let mut a = vec![ZERO; size];
        for (ak, (&x, &w)) in a.iter_mut().zip(input.iter().zip(&self.chirp)) {
            *ak = x * w;
        }
        let mut fa = vec![ZERO; size];
        self.inner.forward(&a, &mut fa);
        fa.iter_mut().zip(&self.kernel).for_each(|(x, k)| *x *= k);
        self.inner.inverse(&fa, &mut a);
        for (o, (&v, &w)) in out.iter_mut().zip(a.iter().zip(&self.chirp)) {
            *o = v * w;
        }
    }
}

pub fn fft_vec(x: &[Complex]) -> Result<Vec<Complex>> {
    let plan = FftPlan::new(x.len())?;
    let mut out = vec![ZERO; x.len()];
    plan.forward(x, &mut out);
    Ok(out)
}

pub fn ifft_vec(y: &[Complex]) -> Result<Vec<Complex>> {
    let plan = FftPlan::new(y.len())?;
    let mut out = vec![ZERO; y.len()];
    plan.inverse(y, &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pre {
    Keep,
    Conj,
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Forward,
    Inverse,
}

/// Transforms every tube of one component array, applying `pre` while
/// gathering and `post` after the transform. Tubes are processed in
/// storage order.
fn axis3(
    src: &[Complex],
    dst: &mut [Complex],
    mn: usize,
    plan: &FftPlan,
    dir: Dir,
    pre: Pre,
    post: Pre,
) {
    let p = plan.len();
    let mut tube = vec![ZERO; p];
    let mut res = vec![ZERO; p];
    let apply = |z: Complex, op: Pre| match op {
        Pre::Keep => z,
        Pre::Conj => z.conj(),
        Pre::Neg => -z,
    };
    for e in 0..mn {
        for (r, t) in tube.iter_mut().enumerate() {
            *t = apply(src[r * mn + e], pre);
        }
        match dir {
            Dir::Forward => plan.forward(&tube, &mut res),
            Dir::Inverse => plan.inverse(&tube, &mut res),
        }
        for (r, &v) in res.iter().enumerate() {
            dst[r * mn + e] = apply(v, post);
        }
    }
}

/// Reusable transforms for tensors with a fixed third dimension.
#[derive(Clone, Debug)]
pub struct AxisTransform {
    plan: FftPlan,
}

impl AxisTransform {
    pub fn new(p: usize) -> Result<Self> {
        Ok(Self {
            plan: FftPlan::new(p)?,
        })
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.plan.len()
    }

    fn check(&self, src: &CdTensor3, dst: &CdTensor3) {
        assert_eq!(src.p(), self.p(), "tensor depth vs plan length");
        assert_eq!(src.dims(), dst.dims(), "source and destination dims");
    }

    /// `𝒬̂₁ = fft(conj 𝒬₁)`, `𝒬̂₂ = −fft(𝒬₂)`.
    pub fn forward_conj(&self, src: &CdTensor3, dst: &mut CdTensor3) {
        self.check(src, dst);
        let mn = src.m() * src.n();
        axis3(
            &src.t1,
            &mut dst.t1,
            mn,
            &self.plan,
            Dir::Forward,
            Pre::Conj,
            Pre::Keep,
        );
        axis3(
            &src.t2,
            &mut dst.t2,
            mn,
            &self.plan,
            Dir::Forward,
            Pre::Neg,
            Pre::Keep,
        );
    }

    /// Exact inverse of [`Self::forward_conj`]: `𝒬₁ = conj(ifft 𝒬̂₁)`,
    /// `𝒬₂ = −ifft 𝒬̂₂`.
    pub fn inverse_conj(&self, src: &CdTensor3, dst: &mut CdTensor3) {
        self.check(src, dst);
        let mn = src.m() * src.n();
        axis3(
            &src.t1,
            &mut dst.t1,
            mn,
            &self.plan,
            Dir::Inverse,
            Pre::Keep,
            Pre::Conj,
        );
        axis3(
            &src.t2,
            &mut dst.t2,
            mn,
            &self.plan,
            Dir::Inverse,
            Pre::Keep,
            Pre::Neg,
        );
    }

    /// `ifft(conj 𝒬̂₁) − ifft(𝒬̂₂)·j`, conjugating before the inverse
    /// transform. For `p ≥ 3` this is *not* the inverse of
    /// [`Self::forward_conj`]: it returns the first component with its
    /// slices reflected, `r ↦ (p − r) mod p`. The fast T-product's slice
    /// pairing is built for exactly this operator.
    pub fn inverse_conj_reflected(&self, src: &CdTensor3, dst: &mut CdTensor3) {
        self.check(src, dst);
        let mn = src.m() * src.n();
        axis3(
            &src.t1,
            &mut dst.t1,
            mn,
            &self.plan,
            Dir::Inverse,
            Pre::Conj,
            Pre::Keep,
        );
        axis3(
            &src.t2,
            &mut dst.t2,
            mn,
            &self.plan,
            Dir::Inverse,
            Pre::Keep,
            Pre::Neg,
        );
    }
}

fn with_axis(
    q: &CdTensor3,
    f: impl FnOnce(&AxisTransform, &CdTensor3, &mut CdTensor3),
) -> CdTensor3 {
    let (m, n, p) = q.dims();
    let mut out = CdTensor3::zeros(m, n, p);
    if p == 0 {
        return out;
    }
    let ax = AxisTransform::new(p).expect("p ≥ 1");
    f(&ax, q, &mut out);
    out
}

/// `𝒬̂ = fft(conj 𝒬₁, 3) − fft(𝒬₂, 3)·j`; each tube becomes `√p·F_p·q̄`.
pub fn qfft3_conj(q: &CdTensor3) -> CdTensor3 {
    with_axis(q, |ax, s, d| ax.forward_conj(s, d))
}

/// Exact inverse of [`qfft3_conj`].
pub fn qifft3_conj(qhat: &CdTensor3) -> CdTensor3 {
    with_axis(qhat, |ax, s, d| ax.inverse_conj(s, d))
}

/// See [`AxisTransform::inverse_conj_reflected`].
pub fn qifft3_conj_reflected(qhat: &CdTensor3) -> CdTensor3 {
    with_axis(qhat, |ax, s, d| ax.inverse_conj_reflected(s, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quaternion;
    use crate::linalg::{cmatmul, dft_matrix, CMatrix};
    use crate::random::{gen_random_tensor, SeededRng};

    fn max_rel(a: &[Complex], b: &[Complex]) -> f64 {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
        libm::sqrt(num / den.max(f64::MIN_POSITIVE))
    }

    fn random_vec(rng: &mut SeededRng, n: usize) -> Vec<Complex> {
        (0..n).map(|_| rng.complex()).collect()
    }

    #[test]
    fn naive_small_cases() {
        let delta = [c64(1.0, 0.0), ZERO, ZERO, ZERO];
        for y in dft_vec_naive(&delta).unwrap() {
            assert!((y - c64(1.0, 0.0)).norm() < 1e-15);
        }
        let x: Vec<_> = (1..=4).map(|v| c64(v as f64, 0.0)).collect();
        let want = [
            c64(10.0, 0.0),
            c64(-2.0, 2.0),
            c64(-2.0, 0.0),
            c64(-2.0, -2.0),
        ];
        let got = dft_vec_naive(&x).unwrap();
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() < 1e-13, "{g} vs {w}");
        }
        let cst = dft_vec_naive(&[c64(2.0, 1.0); 5]).unwrap();
        assert!((cst[0] - c64(10.0, 5.0)).norm() < 1e-13);
        assert!(cst[1..].iter().all(|z| z.norm() < 1e-13));
        assert!(dft_vec_naive(&[]).is_err());
    }

    #[test]
    fn factor_order() {
        assert_eq!(factorize(48), [4, 4, 3]);
        assert_eq!(factorize(8), [4, 2]);
        assert_eq!(factorize(1), Vec::<usize>::new());
        assert_eq!(factorize(74), [2, 37]);
    }

    #[test]
    fn fft_matches_oracle_across_lengths() {
        let mut rng = SeededRng::new(3);
        for n in (1..=70).chain([96, 100, 128, 37 * 2, 97, 210, 1024]) {
            let x = random_vec(&mut rng, n);
            let rel = max_rel(&fft_vec(&x).unwrap(), &dft_vec_naive(&x).unwrap());
            assert!(rel <= 1e-12, "n={n} rel={rel}");
        }
    }

    #[test]
    fn round_trip_and_trivial() {
        let mut rng = SeededRng::new(4);
        let x = random_vec(&mut rng, 12);
        let back = ifft_vec(&fft_vec(&x).unwrap()).unwrap();
        assert!(max_rel(&back, &x) <= 1e-13);
        let two = fft_vec(&[c64(1.0, 0.0), c64(1.0, 0.0)]).unwrap();
        assert_eq!(two, [c64(2.0, 0.0), ZERO]);
        assert!(fft_vec(&[]).is_err());
        assert!(ifft_vec(&[]).is_err());
    }

    #[test]
    fn linear_and_parseval() {
        let mut rng = SeededRng::new(5);
        for n in [6, 16, 41] {
            let x = random_vec(&mut rng, n);
            let y = random_vec(&mut rng, n);
            let (al, be) = (c64(0.3, -1.2), c64(-2.0, 0.5));
            let mix: Vec<_> = x.iter().zip(&y).map(|(a, b)| al * a + be * b).collect();
            let (fx, fy) = (fft_vec(&x).unwrap(), fft_vec(&y).unwrap());
            let lin: Vec<_> = fx.iter().zip(&fy).map(|(a, b)| al * a + be * b).collect();
            assert!(max_rel(&fft_vec(&mix).unwrap(), &lin) <= 1e-12);
            let ex: f64 = x.iter().map(|z| z.norm_sqr()).sum();
            let ef: f64 = fx.iter().map(|z| z.norm_sqr()).sum();
            assert!((ef - n as f64 * ex).abs() <= 1e-12 * ef);
        }
    }

    #[test]
    fn qfft_of_j_tube() {
        let tube: Vec<_> = (1..=4)
            .map(|v| Quaternion::new(0.0, 0.0, v as f64, 0.0))
            .collect();
        let q = CdTensor3::from_quaternions(1, 1, 4, &tube).unwrap();
        let got = qfft3_conj(&q).tube(0, 0);
        let want = [
            Quaternion::new(0.0, 0.0, -10.0, 0.0),
            Quaternion::new(0.0, 0.0, 2.0, -2.0),
            Quaternion::new(0.0, 0.0, 2.0, 0.0),
            Quaternion::new(0.0, 0.0, 2.0, 2.0),
        ];
        for (g, w) in got.iter().zip(want) {
            assert!((*g - w).norm() < 1e-13, "{g:?} vs {w:?}");
        }
    }

    #[test]
    fn qfft_tube_equals_scaled_dft_of_conjugate() {
        let t = gen_random_tensor(3, 4, 5, 9).unwrap();
        let hat = qfft3_conj(&t);
        let f = dft_matrix(5).unwrap().scale(5f64.sqrt());
        for i in 0..3 {
            for j in 0..4 {
                let c: Vec<Quaternion> = t.tube(i, j).iter().map(|q| q.conj()).collect();
                let (c1, c2): (Vec<_>, Vec<_>) =
                    c.iter().map(|&q| crate::algebra::cd_split(q)).unzip();
                let o1 = cmatmul(&f, &CMatrix::from_vec(5, 1, c1).unwrap()).unwrap();
                let o2 = cmatmul(&f, &CMatrix::from_vec(5, 1, c2).unwrap()).unwrap();
                for r in 0..5 {
                    let want = crate::algebra::cd_join((o1[(r, 0)], o2[(r, 0)]));
                    assert!((hat.get(i, j, r) - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn qfft_trivial_cases() {
        let t = gen_random_tensor(2, 3, 1, 2).unwrap();
        assert!(qfft3_conj(&t).sub(&t.conj()).unwrap().frobenius() < 1e-15);
        assert!(qifft3_conj(&t).sub(&t.conj()).unwrap().frobenius() < 1e-15);
        let z = CdTensor3::zeros(2, 2, 3);
        assert_eq!(qifft3_conj(&z).frobenius(), 0.0);

        let mut rng = SeededRng::new(8);
        let re: Vec<Quaternion> = (0..12)
            .map(|_| Quaternion::new(rng.uniform(), 0.0, 0.0, 0.0))
            .collect();
        let real = CdTensor3::from_quaternions(2, 2, 3, &re).unwrap();
        let hat = qfft3_conj(&real);
        assert!(hat.t2().iter().all(|z| *z == ZERO));
        let tube: Vec<_> = real.tube(1, 0).iter().map(|q| c64(q.w, 0.0)).collect();
        let plain = fft_vec(&tube).unwrap();
        for (r, z) in plain.iter().enumerate() {
            assert!((hat.t1()[r * 4 + 2] - z).norm() < 1e-14);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let t = gen_random_tensor(3, 4, 5, 10).unwrap();
        let back = qifft3_conj(&qfft3_conj(&t));
        assert!(back.relative_error(&t).unwrap() <= 1e-12);
    }

    #[test]
    fn reflected_inverse_reflects_first_component() {
        for p in [1, 2, 3, 4, 7] {
            let t = gen_random_tensor(2, 2, p, 11).unwrap();
            let lit = qifft3_conj_reflected(&qfft3_conj(&t));
            for r in 0..p {
                let rr = (p - r) % p;
                for e in 0..4 {
                    assert!((lit.t1()[r * 4 + e] - t.t1()[rr * 4 + e]).norm() < 1e-13);
                    assert!((lit.t2()[r * 4 + e] - t.t2()[r * 4 + e]).norm() < 1e-13);
                }
            }
        }
    }
}
