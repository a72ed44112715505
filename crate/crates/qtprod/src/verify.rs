//! Named invariants grouped into suites.
//!
//! Each invariant is a measured value against a bound. Upper bounds are
//! error-type quantities and can be overridden with `--tol`; lower bounds
//! (quantities that must stay large, e.g. the off-diagonal mass of a
//! non-diagonalizer) always keep their stated value.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use qtprod_core::algebra::{c64, Quaternion};
use qtprod_core::diag::{
    block_diagonalize, block_sandwich, circ_sandwich, condition_check, condition_check_with,
    diagonalize_circ, diagonalizer_unitarity_defect, negative_example, octonion_reconstruction,
    quaternion_sandwich_report, reconstruct_circ, Family, NegFamily,
};
use qtprod_core::identities::{self, Identity};
use qtprod_core::linalg::{
    bcirc_build, circ_complex, dft_matrix, qmatmul, CMatrix, CdMatrix, CirculantGen, OctMatrix,
};
use qtprod_core::random::{gen_random_tensor, SeededRng};
use qtprod_core::tproduct::{bcirc_of_tensor, tprod_fast, tprod_naive};
use qtprod_core::transform::qfft3_conj;
use qtprod_core::{CdTensor3, Result as CoreResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Algebra,
    Diag,
    Tproduct,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Diag => "diag",
            Suite::Tproduct => "tproduct",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite {0:?} (expected all, algebra, diag or tproduct)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "algebra" => Ok(Suite::Algebra),
            "diag" => Ok(Suite::Diag),
            "tproduct" => Ok(Suite::Tproduct),
            _ => Err(UnknownSuite(s.to_owned())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// `value ≤ tol`
    Upper,
    /// `value > tol`
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Invariant {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub bound: Bound,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub invariants: Vec<Invariant>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Invariant> {
        self.invariants.iter().filter(|i| !i.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Invariant> {
        self.invariants.iter().find(|i| i.name == name)
    }
}

/// The transform whose output the diag suite compares against brute-force
/// octonion sandwiches. Swappable so a deliberately broken transform can be
/// shown to be caught.
pub type DiagFastPath = fn(&[Quaternion]) -> CoreResult<Vec<Quaternion>>;

fn default_fast_path(q: &[Quaternion]) -> CoreResult<Vec<Quaternion>> {
    diagonalize_circ(q, Family::L)
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tol: Option<f64>,
    pub diag_fast_path: DiagFastPath,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            tol: None,
            diag_fast_path: default_fast_path,
        }
    }
}

struct Recorder {
    suite: &'static str,
    tol: Option<f64>,
    out: Vec<Invariant>,
}

impl Recorder {
    fn upper(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        let tol = self.tol.unwrap_or(tol);
        self.push(name.into(), value, Bound::Upper, tol, value <= tol);
    }

    fn lower(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.push(name.into(), value, Bound::Lower, tol, value > tol);
    }

    /// `Err` from the core library counts as a failure with a NaN value.
    fn upper_res(&mut self, name: impl Into<String>, value: CoreResult<f64>, tol: f64) {
        self.upper(name, value.unwrap_or(f64::NAN), tol);
    }

    fn lower_res(&mut self, name: impl Into<String>, value: CoreResult<f64>, tol: f64) {
        self.lower(name, value.unwrap_or(f64::NAN), tol);
    }

    fn push(&mut self, name: String, value: f64, bound: Bound, tol: f64, passed: bool) {
        self.out.push(Invariant {
            suite: self.suite,
            name,
            value,
            bound,
            tol,
            passed,
        });
    }
}

pub fn run_verify(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let mut invariants = Vec::new();
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    if wanted(Suite::Algebra) {
        invariants.extend(algebra_suite(opts));
    }
    if wanted(Suite::Diag) {
        invariants.extend(diag_suite(opts));
    }
    if wanted(Suite::Tproduct) {
        invariants.extend(tproduct_suite(opts));
    }
    VerifyReport {
        suite,
        seed: opts.seed,
        passed: invariants.iter().all(|i| i.passed),
        invariants,
    }
}

pub fn algebra_suite(opts: &VerifyOptions) -> Vec<Invariant> {
    let mut r = Recorder {
        suite: "algebra",
        tol: opts.tol,
        out: Vec::new(),
    };
    let seed = opts.seed;
    r.upper(
        "octonion table product equals closed form (1e4 pairs)",
        identities::table_vs_closed(10_000, seed),
        1e-14,
    );
    r.upper(
        "composition law |ab| = |a||b| (1e4 pairs)",
        identities::composition_law(10_000, seed.wrapping_add(1)),
        1e-12,
    );
    r.upper(
        "quaternion embedding is multiplicative",
        identities::embedding_agreement(10_000, seed.wrapping_add(2)),
        1e-14,
    );
    r.lower(
        "octonions are not associative",
        identities::associator_witness(),
        1.0,
    );

    let holds: Vec<Identity> = [
        identities::unit_products(),
        identities::unit_product_association(),
        identities::l_commutation(),
        identities::regroupings(),
        Family::GUARANTEED.map(identities::sandwich_rule).to_vec(),
    ]
    .concat();
    for o in identities::check(&holds, 1000, seed.wrapping_add(3)) {
        r.upper(o.name, o.worst, 1e-13);
    }
    let breaks = [
        identities::unit_product_association_breaks(),
        identities::invalid_regroupings(),
    ]
    .concat();
    for o in identities::check(&breaks, 100, seed.wrapping_add(4)) {
        r.lower(format!("does not hold: {}", o.name), o.worst, 1e-3);
    }
    r.out
}

fn qnorm(q: &[Quaternion]) -> f64 {
    q.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn sandwich_vs_fast(q: &[Quaternion], fam: Family, fast: &[Quaternion]) -> CoreResult<(f64, f64)> {
    let s = circ_sandwich(q, fam)?;
    let scale = qnorm(q).max(f64::MIN_POSITIVE);
    let gap = fast
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let d = s[(k, k)];
            (d.quaternion_part() - *v).norm_sqr() + d.l_part().norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    let extra = if fast.len() == q.len() {
        0.0
    } else {
        f64::INFINITY
    };
    Ok((s.off_diagonal_norm() / scale, gap / scale + extra))
}

fn block_checks(g: &CirculantGen) -> CoreResult<(f64, f64, f64)> {
    let bd = block_diagonalize(g, Family::L);
    let back = reconstruct_circ(&bd, Family::L);
    let mut round = 0.0f64;
    for (x, y) in back.gens().iter().zip(g.gens()) {
        round = round.max(x.sub(y)?.frobenius());
    }
    let dense = bd.to_matrix();
    let mut brute = 0.0f64;
    for fam in Family::GUARANTEED {
        let (cd, resid) = block_sandwich(g, fam)?.to_cd();
        brute = brute.max(cd.sub(&dense)?.frobenius() + resid);
    }
    let target = OctMatrix::from_cd(&bcirc_build(g));
    let rebuilt = octonion_reconstruction(&bd, Family::Mixed)?;
    Ok((round, brute, rebuilt.sub(&target)?.frobenius()))
}

pub fn diag_suite(opts: &VerifyOptions) -> Vec<Invariant> {
    let mut r = Recorder {
        suite: "diag",
        tol: opts.tol,
        out: Vec::new(),
    };
    let seed = opts.seed;

    for fam in Family::GUARANTEED {
        let worst = (2..=16).try_fold(0.0f64, |acc, p| {
            Ok(acc.max(diagonalizer_unitarity_defect(p, fam)?))
        });
        r.upper_res(
            format!("unitarity of F_p*{} for p=2..16", fam.name()),
            worst,
            1e-12,
        );
    }

    let mut rng = SeededRng::derive(seed, 1);
    let mut off = 0.0f64;
    let mut gap = 0.0f64;
    let mut failed = None;
    for _ in 0..50 {
        let p = rng.int_in(1, 16);
        let q = rng.quaternions(p);
        let fast = match (opts.diag_fast_path)(&q) {
            Ok(f) => f,
            Err(e) => {
                failed = Some(e);
                break;
            }
        };
        for fam in Family::GUARANTEED {
            match sandwich_vs_fast(&q, fam, &fast) {
                Ok((o, g)) => {
                    off = off.max(o);
                    gap = gap.max(g);
                }
                Err(e) => failed = Some(e),
            }
        }
    }
    if failed.is_some() {
        off = f64::NAN;
        gap = f64::NAN;
    }
    r.upper(
        "sandwich off-diagonal mass (50 random circulants)",
        off,
        1e-11,
    );
    r.upper("sandwich diagonal equals transform of conj(q)", gap, 1e-11);

    let mut rng = SeededRng::derive(seed, 2);
    let blocks: CoreResult<_> = (1..=8).try_fold((0.0f64, 0.0f64, 0.0f64), |acc, p| {
        let gens: Vec<_> = (0..p)
            .map(|_| CdMatrix::from_fn(3, 2, |_, _| rng.quaternion()))
            .collect();
        let (a, b, c) = block_checks(&CirculantGen::new(gens)?)?;
        Ok((acc.0.max(a), acc.1.max(b), acc.2.max(c)))
    });
    let (round, brute, rebuilt) = blocks.unwrap_or((f64::NAN, f64::NAN, f64::NAN));
    r.upper(
        "block diagonalize then reconstruct (3x2 blocks, p<=8)",
        round,
        1e-12,
    );
    r.upper("block sandwich matches transform path", brute, 1e-11);
    r.upper("octonion rebuild of bcirc from blocks", rebuilt, 1e-11);

    let support = negative_example(4, NegFamily::One).map(|s| {
        if s.support == [(2, 4), (4, 2)] {
            0.0
        } else {
            1.0
        }
    });
    r.upper_res(
        "F_4 sandwich of circ(j,2j,3j,4j) supported at (2,4),(4,2)",
        support,
        0.0,
    );

    let mut rng = SeededRng::derive(seed, 3);
    for fam in NegFamily::ALL {
        let worst = (3..=8).try_fold(f64::INFINITY, |acc, p| {
            let ramp = negative_example(p, fam)?.ratio();
            let rand = quaternion_sandwich_report(&rng.quaternions(p), fam)?.ratio();
            Ok(acc.min(ramp).min(rand))
        });
        r.lower_res(
            format!(
                "{} leaves off-diagonal mass > 0.1|A| for p=3..8",
                fam.name()
            ),
            worst,
            0.1,
        );
        let two = quaternion_sandwich_report(&rng.quaternions(2), fam).map(|s| s.ratio());
        r.upper_res(format!("{} diagonalizes at p=2", fam.name()), two, 1e-12);
    }

    let ramp_fails = (3..=8).try_fold(usize::MAX, |acc, p| {
        let ramp: Vec<_> = (1..=p).map(|v| c64(v as f64, 0.0)).collect();
        let rep = condition_check_with(
            &dft_matrix(p)?,
            &CMatrix::zeros(p, p),
            &[circ_complex(&ramp)],
            1e-11,
        )?;
        Ok(acc.min(rep.failed().count()))
    });
    r.lower_res(
        "conditions failing for F_p, 0 on circ(1..p), p=3..8 (min count)",
        ramp_fails.map(|c| c as f64),
        0.0,
    );
    let p2 = condition_check(
        &dft_matrix(2).unwrap(),
        &CMatrix::zeros(2, 2),
        32,
        1e-11,
        seed,
    )
    .map(|rep| rep.failed().count() as f64);
    r.upper_res("conditions failing for F_2, 0", p2, 0.0);
    r.out
}

/// Worst fast-vs-naive relative error over the seeded randomized sweep.
pub fn oracle_sweep(cases: u64, seed: u64) -> CoreResult<f64> {
    let mut rng = SeededRng::derive(seed, 100);
    let mut worst = 0.0f64;
    for case in 0..cases {
        let (m, n, s) = (rng.int_in(1, 8), rng.int_in(1, 8), rng.int_in(1, 8));
        let p = rng.int_in(1, 12);
        let a = gen_random_tensor(m, n, p, seed.wrapping_add(2 * case))?;
        let b = gen_random_tensor(n, s, p, seed.wrapping_add(2 * case + 1))?;
        worst = worst.max(tprod_fast(&a, &b)?.relative_error(&tprod_naive(&a, &b)?)?);
    }
    Ok(worst)
}

pub fn tproduct_suite(opts: &VerifyOptions) -> Vec<Invariant> {
    let mut r = Recorder {
        suite: "tproduct",
        tol: opts.tol,
        out: Vec::new(),
    };
    let seed = opts.seed;
    r.upper_res(
        "fast equals naive on 100 random shapes",
        oracle_sweep(100, seed),
        1e-11,
    );

    let t = |m, n, p, k: u64| gen_random_tensor(m, n, p, seed.wrapping_add(1000 + k));
    let mult = (|| {
        let (a, b) = (t(3, 2, 5, 0)?, t(2, 4, 5, 1)?);
        let lhs = bcirc_of_tensor(&tprod_naive(&a, &b)?);
        let rhs = qmatmul(&bcirc_of_tensor(&a), &bcirc_of_tensor(&b))?;
        Ok(lhs.sub(&rhs)?.frobenius() / rhs.frobenius())
    })();
    r.upper_res("bcirc is multiplicative", mult, 1e-12);

    let assoc = (|| {
        let (a, b, c) = (t(2, 3, 4, 2)?, t(3, 2, 4, 3)?, t(2, 3, 4, 4)?);
        let left = tprod_naive(&tprod_naive(&a, &b)?, &c)?;
        let right = tprod_naive(&a, &tprod_naive(&b, &c)?)?;
        left.relative_error(&right)
    })();
    r.upper_res("T-product is associative", assoc, 1e-10);

    let ident = (|| {
        let a = t(4, 3, 6, 5)?;
        let id = CdTensor3::identity(3, 6);
        let naive = tprod_naive(&a, &id)?.sub(&a)?.frobenius();
        let fast = tprod_fast(&a, &id)?.sub(&a)?.frobenius();
        Ok(naive.max(fast))
    })();
    r.upper_res("identity tensor is a right identity", ident, 1e-12);

    let transform_p1 = (|| {
        // p = 1: the transform is the entrywise conjugate
        let a = t(3, 3, 1, 6)?;
        Ok(qfft3_conj(&a).sub(&a.conj())?.frobenius())
    })();
    r.upper_res("p=1 transform is the conjugate", transform_p1, 0.0);
    r.out
}
