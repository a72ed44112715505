//! Dense complex matrix multiply-accumulate shared by every matrix path, so
//! the fast and definitional T-products are timed on the same kernel.

use crate::algebra::Complex;

/// `c += sign · op(a) · op(b)` for row-major `a` (`m×k`), `b` (`k×n`),
/// `c` (`m×n`); `op` is entrywise conjugation when the flag is set.
pub(crate) fn gemm_acc<const CONJ_A: bool, const CONJ_B: bool>(
    c: &mut [Complex],
    a: &[Complex],
    b: &[Complex],
    m: usize,
    k: usize,
    n: usize,
    sign: f64,
) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    debug_assert_eq!(c.len(), m * n);
    if n == 0 {
        return;
    }
    for (a_row, c_row) in a.chunks_exact(k.max(1)).zip(c.chunks_exact_mut(n)).take(m) {
        for (kk, &a_ik) in a_row.iter().enumerate().take(k) {
            let a_ik = if CONJ_A { a_ik.conj() } else { a_ik } * sign;
            let (ar, ai) = (a_ik.re, a_ik.im);
            let b_row = &b[kk * n..(kk + 1) * n];
            for (cv, bv) in c_row.iter_mut().zip(b_row) {
                let (br, bi) = if CONJ_B {
                    (bv.re, -bv.im)
                } else {
                    (bv.re, bv.im)
                };
                cv.re += ar * br - ai * bi;
                cv.im += ar * bi + ai * br;
            }
        }
    }
}

/// Runtime-flag front end for [`gemm_acc`].
pub(crate) fn gemm_acc_dyn(
    c: &mut [Complex],
    a: &[Complex],
    conj_a: bool,
    b: &[Complex],
    conj_b: bool,
    (m, k, n): (usize, usize, usize),
    sign: f64,
) {
    match (conj_a, conj_b) {
        (false, false) => gemm_acc::<false, false>(c, a, b, m, k, n, sign),
        (true, false) => gemm_acc::<true, false>(c, a, b, m, k, n, sign),
        (false, true) => gemm_acc::<false, true>(c, a, b, m, k, n, sign),
        (true, true) => gemm_acc::<true, true>(c, a, b, m, k, n, sign),
    }
}
