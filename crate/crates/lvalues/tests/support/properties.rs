//! Seeded randomized identity checks shared by the property tests and the
//! acceptance harness. Every suite runs [`CASES`] cases per ring or chain
//! from a fixed ChaCha seed and returns the first counterexample, if any.

use lvalues::algebra::laurent::{GroupRingLaurent, Laurent};
use lvalues::algebra::monic::{monic_decompose, monic_part, monic_test};
use lvalues::algebra::{AbelianGroup, FqField, GroupRing, GroupRingElement, GroupRingPoly, PolyRing, Ring};
use lvalues::extensions::{carlitz_cyclotomic, trivial_extension};
use lvalues::linalg::{fitting_monic, RMatrix};
use lvalues::nuclear::{
    comm_det_pair, nuclear_det, nuclear_det_at, nuclear_fitting_identity_check, NuclearOperator, QuotientChain, TwistedOp,
    ZSeriesRing,
};
use lvalues::volumes::{lattice_index_free, lattice_index_projective, quotient_size, LatticeData, ProjectiveLattice};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

/// Cases per suite and ring.
pub const CASES: u32 = 500;

const PREC: i64 = 24;

fn runner(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases: CASES, max_global_rejects: 100 * CASES, failure_persistence: None, ..Config::default() },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn rings() -> Vec<GroupRing> {
    vec![
        GroupRing::new(FqField::prime(2).unwrap(), AbelianGroup::cyclic(2)),
        GroupRing::new(FqField::prime(3).unwrap(), AbelianGroup::cyclic(2)),
        GroupRing::new(FqField::prime(2).unwrap(), AbelianGroup::cyclic(3)),
        GroupRing::new(FqField::prime(3).unwrap(), AbelianGroup::cyclic(3)),
    ]
}

fn chains() -> Vec<QuotientChain> {
    let f2 = FqField::prime(2).unwrap();
    let f3 = FqField::prime(3).unwrap();
    [trivial_extension(&f2), carlitz_cyclotomic(&f3, &[0, 1]).unwrap(), carlitz_cyclotomic(&f2, &[0, 0, 1]).unwrap()]
        .iter()
        .map(|e| QuotientChain::from_extension(e).unwrap())
        .collect()
}

fn element(r: &GroupRing, raw: &[u32]) -> GroupRingElement {
    let q = r.field().q() as u32;
    GroupRingElement(raw.iter().take(r.order()).map(|x| x % q).collect())
}

fn poly(r: &GroupRing, raw: &[u32], len: usize) -> GroupRingPoly {
    let g = r.order();
    PolyRing::new(r.clone()).normalize((0..len).map(|k| element(r, &raw[k * g..(k + 1) * g])).collect())
}

fn matrix(r: &GroupRing, n: usize, raw: &[u32]) -> RMatrix {
    let g = r.order();
    (0..n)
        .map(|i| (0..n).map(|j| element(r, &raw[(i * n + j) * g..(i * n + j + 1) * g])).collect())
        .collect()
}

/// A unit of `F_q((1/t))[G]` with unit leading coefficient.
fn laurent_unit(r: &GroupRing, top: i64, raw: &[u32], prec: i64) -> Option<GroupRingLaurent> {
    let g = r.order();
    let len = (top + prec + 1) as usize;
    let coeffs: Vec<GroupRingElement> = (0..len).map(|k| element(r, &raw[k * g..(k + 1) * g])).collect();
    if !r.is_unit(&coeffs[0]) {
        return None;
    }
    Some(Laurent::from_top(r, top, coeffs, prec))
}

/// A unit of `A[G]`: a unit constant, times `1 + (σ − 1)·a(t)` when `G` is a
/// `p`-group (so that `σ − 1` is nilpotent).
fn poly_unit(r: &GroupRing, raw: &[u32]) -> Option<GroupRingPoly> {
    let pr = PolyRing::new(r.clone());
    let c = element(r, raw);
    if !r.is_unit(&c) {
        return None;
    }
    let p = r.field().p() as usize;
    let mut u = vec![c];
    if is_p_power(r.order(), p) {
        let sigma_minus_one = r.sub(&r.basis(1), &r.one());
        let a = poly(r, &raw[r.order()..], 3);
        let nil: GroupRingPoly = a.iter().map(|x| r.mul(x, &sigma_minus_one)).collect();
        u = pr.mul(&u, &pr.add(&pr.one(), &nil));
    }
    Some(pr.normalize(u))
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn report(name: &str, res: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    res.map_err(|e| format!("{name}: {e}"))
}

/// `g = g⁺·u` with `g⁺` monic, and `g⁺` is unchanged when `g` is multiplied
/// by a polynomial unit.
pub fn monic_decompose_round_trip() -> Result<(), String> {
    for (k, r) in rings().into_iter().enumerate() {
        let g = r.order();
        let strat = (-3i64..4, proptest::collection::vec(0u32..9, 40 * g));
        let res = runner(10 + k as u8).run(&strat, |(top, raw)| {
            let Some(x) = laurent_unit(&r, top, &raw, PREC) else {
                return Err(TestCaseError::reject("non-unit leading coefficient"));
            };
            let Some(v) = poly_unit(&r, &raw[raw.len() - 4 * g..]) else {
                return Err(TestCaseError::reject("non-unit constant"));
            };
            let (gp, u) = monic_decompose(&r, &x).map_err(|e| fail(e.to_string()))?;
            prop_assert!(monic_test(&r, &gp).map_err(|e| fail(e.to_string()))?);
            let back = gp.mul(&r, &Laurent::from_poly(&r, &u, 1 << 40));
            let n = back.prec.min(x.prec);
            prop_assert!(back.eq_to(&r, &x, n).unwrap(), "round trip");
            let moved = x.mul(&r, &Laurent::from_poly(&r, &v, 1 << 40));
            let gp2 = monic_part(&r, &moved).map_err(|e| fail(e.to_string()))?;
            let n = gp.prec.min(gp2.prec);
            prop_assert!(gp.eq_to(&r, &gp2, n).unwrap(), "uniqueness");
            Ok(())
        });
        report("monic_decompose", res)?;
    }
    Ok(())
}

/// `|M|_G = |M'|_G·|M''|_G` for block upper-triangular `t`-matrices.
pub fn fitting_block_triangular() -> Result<(), String> {
    for (k, r) in rings().into_iter().enumerate() {
        let strat = (1usize..=3, 1usize..=3, proptest::collection::vec(0u32..9, 6 * 6 * 3));
        let res = runner(20 + k as u8).run(&strat, |(na, nc, raw)| {
            let mut tri = matrix(&r, na + nc, &raw);
            for row in tri.iter_mut().skip(na) {
                for x in row.iter_mut().take(na) {
                    *x = r.zero();
                }
            }
            let a: RMatrix = tri[..na].iter().map(|row| row[..na].to_vec()).collect();
            let c: RMatrix = tri[na..].iter().map(|row| row[na..].to_vec()).collect();
            let pr = PolyRing::new(r.clone());
            prop_assert_eq!(fitting_monic(&r, &tri), pr.mul(&fitting_monic(&r, &a), &fitting_monic(&r, &c)));
            Ok(())
        });
        report("fitting", res)?;
    }
    Ok(())
}

/// A random operator `Σ_{n ≤ order} Σ_{j=1,2} α_{n,j} τ^j Z^n` with
/// coefficients of degree `< 2`.
fn operator(r: &GroupRing, order: usize, raw: &[u32]) -> NuclearOperator {
    let g = r.order();
    let phis = (0..order)
        .map(|n| {
            let base = n * 4 * g;
            TwistedOp { terms: vec![Vec::new(), poly(r, &raw[base..], 2), poly(r, &raw[base + 2 * g..], 2)] }
        })
        .collect();
    NuclearOperator::new(phis)
}

/// The determinant is the same on every common nucleus.
pub fn nucleus_independence() -> Result<(), String> {
    for (k, chain) in chains().into_iter().enumerate() {
        let r = chain.ring().clone();
        let strat = (1usize..=3, proptest::collection::vec(0u32..9, 12 * r.order()));
        let res = runner(30 + k as u8).run(&strat, |(order, raw)| {
            let op = operator(&r, order, &raw);
            let len = order + 1;
            let level = op.nucleus(&chain, len).map_err(|e| fail(e.to_string()))?;
            let base = nuclear_det_at(&chain, &op, level, len).map_err(|e| fail(e.to_string()))?;
            for extra in 1..=2 {
                let other = nuclear_det_at(&chain, &op, level + extra, len).map_err(|e| fail(e.to_string()))?;
                prop_assert_eq!(&base, &other, "level {} vs {}", level, level + extra);
            }
            Ok(())
        });
        report("nucleus", res)?;
    }
    Ok(())
}

/// `det((1+Φ)(1+Ψ)) = det(1+Φ)·det(1+Ψ)`.
pub fn nuclear_multiplicativity() -> Result<(), String> {
    for (k, chain) in chains().into_iter().enumerate() {
        let r = chain.ring().clone();
        let strat = (1usize..=3, proptest::collection::vec(0u32..9, 24 * r.order()));
        let res = runner(40 + k as u8).run(&strat, |(order, raw)| {
            let a = operator(&r, order, &raw);
            let b = operator(&r, order, &raw[12 * r.order()..]);
            let len = order + 1;
            let zr = ZSeriesRing::new(r.clone(), len);
            let det = |op: &NuclearOperator| nuclear_det(&chain, op, len).map_err(|e| fail(e.to_string()));
            prop_assert_eq!(det(&a.product(&r, &b))?, zr.mul(&det(&a)?, &det(&b)?));
            Ok(())
        });
        report("multiplicativity", res)?;
    }
    Ok(())
}

/// `det(1 + αφZ^m) = det(1 + φαZ^m)` for `φ = βτ^k`.
pub fn comm_det() -> Result<(), String> {
    for (k, chain) in chains().into_iter().enumerate() {
        let r = chain.ring().clone();
        let strat = (1usize..=2, 1usize..=2, proptest::collection::vec(0u32..9, 6 * r.order()));
        let res = runner(50 + k as u8).run(&strat, |(tk, m, raw)| {
            let alpha = poly(&r, &raw, 3);
            let beta = poly(&r, &raw[3 * r.order()..], 2);
            let (left, right) = comm_det_pair(&chain, &alpha, &beta, tk, m, m + 2).map_err(|e| fail(e.to_string()))?;
            prop_assert_eq!(left, right);
            Ok(())
        });
        report("comm_det", res)?;
    }
    Ok(())
}

/// `t^n·det(1 − t·T^{-1} | M)` at `T = t` equals `|M|_G`.
pub fn fitting_nuclear_identity() -> Result<(), String> {
    for (k, r) in rings().into_iter().enumerate() {
        let strat = (1usize..=4, proptest::collection::vec(0u32..9, 16 * 3));
        let res = runner(60 + k as u8).run(&strat, |(n, raw)| {
            prop_assert!(nuclear_fitting_identity_check(&r, &matrix(&r, n, &raw)));
            Ok(())
        });
        report("fitting_nuclear", res)?;
    }
    Ok(())
}

/// `[Λ1:Λ3] = [Λ1:Λ2][Λ2:Λ3]`, and the projective index does not depend on
/// the free over-lattice used to present a lattice.
pub fn lattice_index_transitivity() -> Result<(), String> {
    for (k, r) in rings().into_iter().enumerate() {
        let g = r.order();
        let strat = (
            (-2i64..3, -2i64..3, -2i64..3),
            proptest::collection::vec(0u32..9, 3 * 32 * g),
            proptest::collection::vec(0u32..9, 4 * g),
        );
        let res = runner(70 + k as u8).run(&strat, |((a, b, c), raw, sub)| {
            let chunk = 32 * g;
            let mk = |top: i64, i: usize| laurent_unit(&r, top, &raw[i * chunk..], PREC).map(LatticeData::free);
            let (Some(l1), Some(l2), Some(l3)) = (mk(a, 0), mk(b, 1), mk(c, 2)) else {
                return Err(TestCaseError::reject("non-unit leading coefficient"));
            };
            let idx = |x: &LatticeData, y: &LatticeData| lattice_index_free(&r, x, y).map_err(|e| fail(e.to_string()));
            let direct = idx(&l1, &l3)?;
            let via = idx(&l1, &l2)?.mul(&r, &idx(&l2, &l3)?);
            let n = direct.prec.min(via.prec);
            prop_assert!(n >= 8);
            prop_assert!(direct.eq_to(&r, &via, n).unwrap(), "transitivity");
            let s = poly(&r, &sub, 4);
            if !s.last().is_some_and(|lead| r.is_unit(lead)) {
                return Ok(());
            }
            let inner = l1.scaled(&r, &s, false).map_err(|e| fail(e.to_string()))?;
            let over_l1 = ProjectiveLattice { over: l1.clone(), quotient_size: quotient_size(&r, &s).map_err(|e| fail(e.to_string()))? };
            let itself = ProjectiveLattice { over: inner, quotient_size: vec![r.one()] };
            let target = ProjectiveLattice { over: l2.clone(), quotient_size: vec![r.one()] };
            let x = lattice_index_projective(&r, &over_l1, &target).map_err(|e| fail(e.to_string()))?;
            let y = lattice_index_projective(&r, &itself, &target).map_err(|e| fail(e.to_string()))?;
            let n = x.prec.min(y.prec);
            prop_assert!(x.eq_to(&r, &y, n).unwrap(), "over-lattice independence");
            Ok(())
        });
        report("lattice_index", res)?;
    }
    Ok(())
}

/// Every suite with its name.
pub fn all() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("monic_decompose round trip and uniqueness", monic_decompose_round_trip),
        ("Fitting multiplicativity on block-triangular matrices", fitting_block_triangular),
        ("nuclear determinant nucleus independence", nucleus_independence),
        ("nuclear determinant multiplicativity", nuclear_multiplicativity),
        ("commutator determinants", comm_det),
        ("Fitting ideal as a nuclear determinant", fitting_nuclear_identity),
        ("lattice index transitivity and over-lattice independence", lattice_index_transitivity),
    ]
}
