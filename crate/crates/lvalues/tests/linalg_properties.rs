use lvalues::algebra::{AbelianGroup, FqField, GroupRing, GroupRingElement, PolyRing, Ring};
use lvalues::linalg::{det_division_free, fitting_monic, mat_mul, RMatrix};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn rings() -> Vec<GroupRing> {
    vec![
        GroupRing::new(FqField::prime(2).unwrap(), AbelianGroup::cyclic(2)),
        GroupRing::new(FqField::prime(3).unwrap(), AbelianGroup::cyclic(3)),
    ]
}

fn element(r: &GroupRing, raw: &[u32]) -> GroupRingElement {
    let q = r.field().q();
    GroupRingElement(raw.iter().take(r.order()).map(|x| x % q).collect())
}

fn matrix(r: &GroupRing, n: usize, raw: &[u32]) -> RMatrix {
    let g = r.order();
    (0..n)
        .map(|i| (0..n).map(|j| element(r, &raw[(i * n + j) * g..(i * n + j + 1) * g])).collect())
        .collect()
}

fn runner(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases: 64, ..Config::default() },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

#[test]
fn fitting_is_multiplicative_on_block_triangular_matrices() {
    for (k, r) in rings().into_iter().enumerate() {
        let strat = (1usize..=4, 1usize..=4, proptest::collection::vec(0u32..9, 8 * 8 * 3));
        runner(k as u8 + 1)
            .run(&strat, |(na, nc, raw)| {
                let n = na + nc;
                let full = matrix(&r, n, &raw);
                let mut tri = full.clone();
                for row in tri.iter_mut().skip(na) {
                    for x in row.iter_mut().take(na) {
                        *x = r.zero();
                    }
                }
                let a: RMatrix = tri[..na].iter().map(|row| row[..na].to_vec()).collect();
                let c: RMatrix = tri[na..].iter().map(|row| row[na..].to_vec()).collect();
                let pr = PolyRing::new(r.clone());
                let lhs = fitting_monic(&r, &tri);
                let rhs = pr.mul(&fitting_monic(&r, &a), &fitting_monic(&r, &c));
                prop_assert_eq!(lhs, rhs);
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn fitting_is_conjugation_invariant() {
    for (k, r) in rings().into_iter().enumerate() {
        let strat = (1usize..=3, proptest::collection::vec(0u32..9, 3 * 3 * 3 * 2));
        runner(k as u8 + 11)
            .run(&strat, |(n, raw)| {
                let a = matrix(&r, n, &raw);
                let p = matrix(&r, n, &raw[n * n * r.order()..]);
                let det = det_division_free(&r, &p);
                prop_assume!(r.is_unit(&det));
                let p_inv = invert_matrix(&r, &p, &det);
                prop_assert_eq!(mat_mul(&r, &p, &p_inv), lvalues::linalg::mat_identity(&r, n));
                let conj = mat_mul(&r, &mat_mul(&r, &p, &a), &p_inv);
                prop_assert_eq!(fitting_monic(&r, &conj), fitting_monic(&r, &a));
                Ok(())
            })
            .unwrap();
    }
}

fn invert_matrix(r: &GroupRing, p: &RMatrix, det: &GroupRingElement) -> RMatrix {
    let n = p.len();
    let d_inv = r.invert(det).unwrap();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: RMatrix = (0..n)
                        .filter(|&a| a != j)
                        .map(|a| (0..n).filter(|&b| b != i).map(|b| p[a][b].clone()).collect())
                        .collect();
                    let c = r.mul(&det_division_free(r, &minor), &d_inv);
                    if (i + j) % 2 == 1 {
                        r.neg(&c)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn determinant_is_multiplicative_over_polynomials() {
    let r = GroupRing::new(FqField::prime(2).unwrap(), AbelianGroup::cyclic(2));
    let pr = PolyRing::new(r.clone());
    let strat = (1usize..=3, proptest::collection::vec(0u32..2, 2 * 9 * 7 * 2));
    runner(21)
        .run(&strat, |(n, raw)| {
            let poly = |off: usize| -> Vec<GroupRingElement> {
                pr.normalize((0..7).map(|k| element(&r, &raw[off + 2 * k..off + 2 * k + 2])).collect())
            };
            let build = |base: usize| -> Vec<Vec<Vec<GroupRingElement>>> {
                (0..n).map(|i| (0..n).map(|j| poly(base + (i * n + j) * 14)).collect()).collect()
            };
            let a = build(0);
            let b = build(9 * 14);
            let lhs = det_division_free(&pr, &mat_mul(&pr, &a, &b));
            let rhs = pr.mul(&det_division_free(&pr, &a), &det_division_free(&pr, &b));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();
}
