//! Octonion-unitary diagonalization of circulant and block circulant
//! quaternion matrices, plus the checks showing why no complex or
//! quaternion candidate can do the same job.
//!
//! The production path never touches octonions: with `O = F_p·𝐩` the
//! diagonal of `O·circ(q)·O*` is `√p·F_p·q̄`, which is one conjugating FFT
//! ([`crate::transform::qfft3_conj`]). The `*_sandwich` functions evaluate
//! the octonion products literally and exist to check that claim; they are
//! capped at [`VERIFY_CAP`].

use alloc::vec::Vec;

use crate::algebra::{c64, Complex, Octonion, Quaternion};
use crate::linalg::{
    bcirc_build, cd_unitarity_defect, cmatmul, dft_matrix, osandwich, perm_matrix, qmatmul,
    unitarity_defect, CMatrix, CdMatrix, CirculantGen, OctMatrix,
};
use crate::random::SeededRng;
use crate::tensor::CdTensor3;
use crate::transform::{qfft3_conj, qifft3_conj};
use crate::{Error, Result};

/// Upper bound on `p·max(m, n)` for brute-force octonion paths.
pub const VERIFY_CAP: usize = 64;

/// Choice of the octonion unit `𝐩` in `O = F_p·𝐩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    L,
    Jl,
    /// `(l + jl)/√2`
    Mixed,
    /// `il`; probed empirically, no contract attached.
    Il,
    /// `(l + il)/√2`; probed empirically, no contract attached.
    MixedIl,
}

impl Family {
    /// The families covered by the diagonalization guarantees.
    pub const GUARANTEED: [Family; 3] = [Family::L, Family::Jl, Family::Mixed];
    pub const PROBES: [Family; 2] = [Family::Il, Family::MixedIl];

    pub fn unit(self) -> Octonion {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        match self {
            Family::L => Octonion::L,
            Family::Jl => Octonion::JL,
            Family::Mixed => (Octonion::L + Octonion::JL).scale(h),
            Family::Il => Octonion::IL,
            Family::MixedIl => (Octonion::L + Octonion::IL).scale(h),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "l",
            Family::Jl => "jl",
            Family::Mixed => "(l+jl)/sqrt2",
            Family::Il => "il",
            Family::MixedIl => "(l+il)/sqrt2",
        }
    }
}

fn check_cap(p: usize, m: usize, n: usize) -> Result<()> {
    let size = p.saturating_mul(m.max(n));
    if size > VERIFY_CAP {
        return Err(Error::SizeCap {
            size,
            cap: VERIFY_CAP,
        });
    }
    Ok(())
}

/// `O = F_p·𝐩`.
pub fn diagonalizer(p: usize, family: Family) -> Result<OctMatrix> {
    Ok(OctMatrix::complex_times(&dft_matrix(p)?, family.unit()))
}

/// `max(‖OO* − I‖, ‖O*O − I‖)` by octonion arithmetic.
pub fn diagonalizer_unitarity_defect(p: usize, family: Family) -> Result<f64> {
    check_cap(p, 1, 1)?;
    unitarity_defect(&diagonalizer(p, family)?)
}

/// `q̂ = √p·F_p·q̄`, the diagonal of `O·circ(q)·O*`. Every family gives the
/// same result, so `family` only documents intent.
pub fn diagonalize_circ(q: &[Quaternion], _family: Family) -> Result<Vec<Quaternion>> {
    if q.is_empty() {
        return Err(Error::ZeroSize("circulant generator"));
    }
    let t = CdTensor3::from_quaternions(1, 1, q.len(), q)?;
    Ok(qfft3_conj(&t).to_quaternions())
}

/// Literal `(O·circ(q))·O*`.
pub fn circ_sandwich(q: &[Quaternion], family: Family) -> Result<OctMatrix> {
    check_cap(q.len(), 1, 1)?;
    let g = CirculantGen::scalar(q)?;
    let o = diagonalizer(q.len(), family)?;
    osandwich(
        &o,
        &OctMatrix::from_cd(&bcirc_build(&g)),
        &o.conj_transpose(),
    )
}

/// `Diag(Q̂₁, …, Q̂_p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiag {
    blocks: Vec<CdMatrix>,
}

impl BlockDiag {
    pub fn new(blocks: Vec<CdMatrix>) -> Result<Self> {
        // reuse the generator shape validation
        Ok(Self {
            blocks: CirculantGen::new(blocks)?.into_gens(),
        })
    }

    pub fn blocks(&self) -> &[CdMatrix] {
        &self.blocks
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn block_shape(&self) -> (usize, usize) {
        self.blocks[0].shape()
    }

    /// Dense `mp×np` block diagonal matrix.
    pub fn to_matrix(&self) -> CdMatrix {
        let (m, n) = self.block_shape();
        let p = self.p();
        let mut out = CdMatrix::zeros(m * p, n * p);
        for (s, b) in self.blocks.iter().enumerate() {
            for i in 0..m {
                for j in 0..n {
                    out.set(s * m + i, s * n + j, b.get(i, j));
                }
            }
        }
        out
    }
}

/// `Q̂_s = Σ_r ω^{s·r}·conj(Q_r)` via one conjugating FFT over the stack.
pub fn block_diagonalize(g: &CirculantGen, _family: Family) -> BlockDiag {
    let stack = CdTensor3::from_slices(g.gens()).expect("generator invariants");
    BlockDiag {
        blocks: qfft3_conj(&stack).slices(),
    }
}

/// Inverse of [`block_diagonalize`].
pub fn reconstruct_circ(b: &BlockDiag, _family: Family) -> CirculantGen {
    let stack = CdTensor3::from_slices(&b.blocks).expect("block invariants");
    CirculantGen::new(qifft3_conj(&stack).slices()).expect("block invariants")
}

/// Literal `((O⊗I_m)·bcirc(g))·(O*⊗I_n)`.
pub fn block_sandwich(g: &CirculantGen, family: Family) -> Result<OctMatrix> {
    let (m, n) = g.block_shape();
    check_cap(g.p(), m, n)?;
    let o = diagonalizer(g.p(), family)?;
    let left = o.kron_identity(m);
    let right = o.conj_transpose().kron_identity(n);
    osandwich(&left, &OctMatrix::from_cd(&bcirc_build(g)), &right)
}

/// Rebuilds `bcirc(Q)` from its transformed blocks by the explicit octonion
/// product
/// `((−F_p*𝐩 ⊗ I_m)·[(P_p⊗I_m)·Diag(Q̂₁)·(P_p⊗I_n) + Diag(Q̂₂)·j])·(F_p*𝐩 ⊗ I_n)`,
/// where `Q̂ₛ = Q̂ₛ₁ + Q̂ₛ₂·j`. Left association is essential: the middle
/// factor is not a plain block diagonal matrix, and regrouping changes the
/// value.
pub fn octonion_reconstruction(b: &BlockDiag, family: Family) -> Result<OctMatrix> {
    let (m, n) = b.block_shape();
    let p = b.p();
    check_cap(p, m, n)?;
    let d = b.to_matrix();
    let perm = perm_matrix(p)?;
    let pm = perm.kron_identity(m);
    let pn = perm.kron_identity(n);
    let middle = CdMatrix::new(cmatmul(&cmatmul(&pm, &d.a1)?, &pn)?, d.a2.clone())?;
    let fs = dft_matrix(p)?.adjoint();
    let left = OctMatrix::complex_times(&fs.scale(-1.0), family.unit()).kron_identity(m);
    let right = OctMatrix::complex_times(&fs, family.unit()).kron_identity(n);
    osandwich(&left, &OctMatrix::from_cd(&middle), &right)
}

/// One of the eight products the characterization requires to be diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub name: &'static str,
    /// Worst `‖offdiag(X)‖_F / ‖Â‖_F` over the trials.
    pub worst_ratio: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub conditions: Vec<Condition>,
    /// `F = F₁ + F₂·j` unitary within the tolerance.
    pub unitary: bool,
    pub unitarity_defect: f64,
    /// The circulant attaining the largest violation.
    pub witness: CMatrix,
    pub trials: usize,
}

impl ConditionReport {
    pub fn verdict(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.passed)
    }
}

pub const CONDITION_NAMES: [&str; 8] = [
    "F1*A*F1^H",
    "F1*A*F1^T",
    "F1*A*F2^T",
    "F1*A*F2^H",
    "F2*A*F1^H",
    "F2*A*F1^T",
    "F2*A*F2^T",
    "F2*A*F2^H",
];

/// Random real circulant with first column uniform on `[-1, 1)`.
pub fn random_real_circulant(rng: &mut SeededRng, p: usize) -> CMatrix {
    let col: Vec<Complex> = (0..p).map(|_| c64(rng.uniform(), 0.0)).collect();
    crate::linalg::circ_complex(&col)
}

/// Probabilistic check over `trials` random real circulants; trial `t`
/// draws from stream `t` of `seed`.
pub fn condition_check(
    f1: &CMatrix,
    f2: &CMatrix,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<ConditionReport> {
    let p = f1.rows();
    let samples: Vec<CMatrix> = (0..trials)
        .map(|t| random_real_circulant(&mut SeededRng::derive(seed, t as u64), p))
        .collect();
    condition_check_with(f1, f2, &samples, tol)
}

/// Same check on explicitly supplied circulants.
pub fn condition_check_with(
    f1: &CMatrix,
    f2: &CMatrix,
    samples: &[CMatrix],
    tol: f64,
) -> Result<ConditionReport> {
    if !f1.is_square() {
        return Err(Error::NotSquare {
            rows: f1.rows(),
            cols: f1.cols(),
        });
    }
    if f1.shape() != f2.shape() {
        return Err(Error::DimensionMismatch {
            op: "condition_check",
            left: f1.shape(),
            right: f2.shape(),
        });
    }
    if samples.is_empty() {
        return Err(Error::ZeroSize("trial count"));
    }
    if let Some(bad) = samples.iter().find(|a| a.shape() != f1.shape()) {
        return Err(Error::DimensionMismatch {
            op: "condition_check",
            left: f1.shape(),
            right: bad.shape(),
        });
    }
    let defect = cd_unitarity_defect(&CdMatrix::new(f1.clone(), f2.clone())?)?;
    let lefts = [f1, f1, f1, f1, f2, f2, f2, f2];
    let rights = [f1.adjoint(), f1.transpose(), f2.transpose(), f2.adjoint()];
    let mut worst = [0.0f64; 8];
    let mut witness = (f64::NEG_INFINITY, &samples[0]);
    for a in samples {
        let norm = a.frobenius().max(f64::MIN_POSITIVE);
        let mut trial_worst = 0.0f64;
        for (c, w) in worst.iter_mut().enumerate() {
            let x = cmatmul(&cmatmul(lefts[c], a)?, &rights[c % 4])?;
            let ratio = x.off_diagonal_norm() / norm;
            *w = w.max(ratio);
            trial_worst = trial_worst.max(ratio);
        }
        if trial_worst > witness.0 {
            witness = (trial_worst, a);
        }
    }
    let conditions = CONDITION_NAMES
        .iter()
        .zip(worst)
        .map(|(&name, worst_ratio)| Condition {
            name,
            worst_ratio,
            passed: worst_ratio <= tol,
        })
        .collect();
    Ok(ConditionReport {
        conditions,
        unitary: defect <= tol,
        unitarity_defect: defect,
        witness: witness.1.clone(),
        trials: samples.len(),
    })
}

/// Quaternion-domain candidates `U` tried in the two-sided sandwich
/// `U·A·U*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NegFamily {
    /// `F_p`
    One,
    /// `F_p·j`
    J,
    /// `(F_p + F_p·j)/√2`
    MixedJ,
}

impl NegFamily {
    pub const ALL: [NegFamily; 3] = [NegFamily::One, NegFamily::J, NegFamily::MixedJ];

    pub fn candidate(self, p: usize) -> Result<CdMatrix> {
        let f = dft_matrix(p)?;
        let z = CMatrix::zeros(p, p);
        match self {
            NegFamily::One => CdMatrix::new(f, z),
            NegFamily::J => CdMatrix::new(z, f),
            NegFamily::MixedJ => {
                let h = f.scale(core::f64::consts::FRAC_1_SQRT_2);
                CdMatrix::new(h.clone(), h)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NegFamily::One => "F",
            NegFamily::J => "F*j",
            NegFamily::MixedJ => "(F+F*j)/sqrt2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub sandwich: CdMatrix,
    pub off_diagonal: f64,
    pub norm_a: f64,
    /// One-based `(row, col)` of off-diagonal entries above `1e-9·‖A‖`.
    pub support: Vec<(usize, usize)>,
}

impl SandwichReport {
    pub fn ratio(&self) -> f64 {
        self.off_diagonal / self.norm_a.max(f64::MIN_POSITIVE)
    }
}

/// `U·circ(q)·U*` for a quaternion candidate `U`.
pub fn quaternion_sandwich_report(q: &[Quaternion], family: NegFamily) -> Result<SandwichReport> {
    let a = bcirc_build(&CirculantGen::scalar(q)?);
    let u = family.candidate(q.len())?;
    let sandwich = qmatmul(&qmatmul(&u, &a)?, &u.conj_transpose())?;
    let norm_a = a.frobenius();
    let thresh = 1e-9 * norm_a;
    let p = q.len();
    let support = (0..p)
        .flat_map(|r| (0..p).map(move |c| (r, c)))
        .filter(|&(r, c)| r != c && sandwich.get(r, c).norm() > thresh)
        .map(|(r, c)| (r + 1, c + 1))
        .collect();
    Ok(SandwichReport {
        off_diagonal: sandwich.off_diagonal_norm(),
        norm_a,
        support,
        sandwich,
    })
}

/// `circ(j, 2j, …, pj)`.
pub fn j_ramp(p: usize) -> Vec<Quaternion> {
    (1..=p)
        .map(|v| Quaternion::new(0.0, 0.0, v as f64, 0.0))
        .collect()
}

/// The counterexample on `circ(j, 2j, …, pj)`. Only `p ≥ 3` is a
/// counterexample; smaller sizes go through
/// [`quaternion_sandwich_report`], where they come out diagonal.
pub fn negative_example(p: usize, family: NegFamily) -> Result<SandwichReport> {
    if p < 3 {
        return Err(Error::InvalidArgument("counterexample needs p >= 3"));
    }
    quaternion_sandwich_report(&j_ramp(p), family)
}
