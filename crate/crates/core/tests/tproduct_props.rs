use proptest::prelude::*;
use qtprod_core::linalg::qmatmul;
use qtprod_core::random::{gen_random_tensor, SeededRng};
use qtprod_core::tensor::CdTensor3;
use qtprod_core::tproduct::{
    bcirc_of_tensor, fold, tprod_fast, tprod_naive, unfold, TProdWorkspace,
};

#[test]
fn fast_matches_naive_on_hundred_seeded_cases() {
    let mut rng = SeededRng::new(2024);
    let mut worst = 0.0f64;
    for case in 0..100u64 {
        let (m, n, s) = (rng.int_in(1, 8), rng.int_in(1, 8), rng.int_in(1, 8));
        let p = rng.int_in(1, 12);
        let a = gen_random_tensor(m, n, p, 2 * case).unwrap();
        let b = gen_random_tensor(n, s, p, 2 * case + 1).unwrap();
        let rel = tprod_fast(&a, &b)
            .unwrap()
            .relative_error(&tprod_naive(&a, &b).unwrap())
            .unwrap();
        worst = worst.max(rel);
    }
    assert!(worst <= 1e-11, "worst {worst}");
}

#[test]
fn bcirc_is_multiplicative() {
    let a = gen_random_tensor(3, 2, 5, 1).unwrap();
    let b = gen_random_tensor(2, 4, 5, 2).unwrap();
    let lhs = bcirc_of_tensor(&tprod_naive(&a, &b).unwrap());
    let rhs = qmatmul(&bcirc_of_tensor(&a), &bcirc_of_tensor(&b)).unwrap();
    assert!(lhs.sub(&rhs).unwrap().frobenius() <= 1e-12 * rhs.frobenius());
}

#[test]
fn associative_and_right_identity() {
    let a = gen_random_tensor(2, 3, 4, 3).unwrap();
    let b = gen_random_tensor(3, 2, 4, 4).unwrap();
    let c = gen_random_tensor(2, 3, 4, 5).unwrap();
    let left = tprod_naive(&tprod_naive(&a, &b).unwrap(), &c).unwrap();
    let right = tprod_naive(&a, &tprod_naive(&b, &c).unwrap()).unwrap();
    assert!(left.relative_error(&right).unwrap() <= 1e-10);
    let id = CdTensor3::identity(3, 4);
    assert!(tprod_naive(&a, &id).unwrap().sub(&a).unwrap().frobenius() <= 1e-12);
    assert!(tprod_fast(&a, &id).unwrap().sub(&a).unwrap().frobenius() <= 1e-12);
}

#[test]
fn workspace_reuse_is_bitwise_stable() {
    let a = gen_random_tensor(4, 3, 6, 6).unwrap();
    let b = gen_random_tensor(3, 5, 6, 7).unwrap();
    let mut ws = TProdWorkspace::new(4, 3, 5, 6).unwrap();
    let mut first = CdTensor3::zeros(4, 5, 6);
    let mut second = CdTensor3::zeros(4, 5, 6);
    ws.compute(&a, &b, &mut first).unwrap();
    ws.compute(&a, &b, &mut second).unwrap();
    assert!(first.bitwise_eq(&second));
    assert!(first.bitwise_eq(&tprod_fast(&a, &b).unwrap()));
    assert!(ws.compute(&b, &a, &mut first).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fold_inverts_unfold(m in 1usize..6, n in 1usize..6, p in 1usize..8, seed in any::<u64>()) {
        let t = gen_random_tensor(m, n, p, seed).unwrap();
        prop_assert!(fold(&unfold(&t), p).unwrap().bitwise_eq(&t));
    }

    #[test]
    fn fast_equals_naive(m in 1usize..6, n in 1usize..6, s in 1usize..6, p in 1usize..16, seed in any::<u64>()) {
        let a = gen_random_tensor(m, n, p, seed).unwrap();
        let b = gen_random_tensor(n, s, p, seed ^ 0x9e37_79b9).unwrap();
        let rel = tprod_fast(&a, &b).unwrap().relative_error(&tprod_naive(&a, &b).unwrap()).unwrap();
        prop_assert!(rel <= 1e-11);
    }
}
