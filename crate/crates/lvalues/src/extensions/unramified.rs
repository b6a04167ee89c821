//! Residue data at an unramified prime from a normal basis of the residue
//! field extension `k_w/k_v`.

use rand::SeedableRng;

use super::{fiber_matrices, LocalPrimeData, Ramification};
use crate::algebra::{ExtField, FqPoly, GroupRing, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::linalg::fqmat;

/// Attempts allowed for the random normal-basis search.
pub const NORMAL_BASIS_ATTEMPTS: usize = 1000;

/// Fiber of `O_K` at an unramified prime `π` with Frobenius `σ_v`.
///
/// The residue field `k_w` has degree `d·ord(σ_v)` over `F_q`; `σ_v` acts as
/// `x ↦ x^{q^d}` and `τ` as `x ↦ x^q`. With a normal-basis element `ρ` of
/// `k_w/k_v` and `ρ^q = Σ_k γ_k·σ_v^k(ρ)`, the fiber is `k_v[G]·ρ` with
/// `τ(c·ρ) = c^q·(Σ_k γ_k [σ_v^k])·ρ`.
pub fn unramified_prime_data(ring: &GroupRing, sigma: usize, pi: &[u32], seed: u64) -> Result<LocalPrimeData> {
    let base = ring.field();
    let pa = PolyRing::new(base.clone());
    let d = pa.degree(pi).ok_or_else(|| Error::InvalidInput("prime must be nonconstant".into()))?;
    if d == 0 || !pa.is_irreducible(pi) {
        return Err(Error::InvalidInput("prime must be monic irreducible".into()));
    }
    let group = ring.group();
    let f = group.element_order(sigma);
    let mut alpha = vec![Vec::new(); ring.order()];
    if f == 1 {
        alpha[group.identity()] = vec![1];
    } else {
        let kw = ExtField::of_degree(base.clone(), d * f);
        let tbar = root_in(&kw, pi)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut gamma = None;
        for _ in 0..NORMAL_BASIS_ATTEMPTS {
            let rho = kw.random(&mut rng);
            let mut cols = Vec::with_capacity(d * f);
            for k in 0..f {
                let conj = kw.frobenius(&rho, d * k);
                let mut tp = kw.one();
                for _ in 0..d {
                    cols.push(kw.coords(&kw.mul(&tp, &conj)));
                    tp = kw.mul(&tp, &tbar);
                }
            }
            let mat = fqmat::from_columns(&cols, d * f);
            if fqmat::rank(base, &mat) < d * f {
                continue;
            }
            let target = kw.coords(&kw.frobenius(&rho, 1));
            let x = fqmat::solve(base, &mat, &target).expect("basis spans");
            gamma = Some((0..f).map(|k| pa.normalize(x[k * d..(k + 1) * d].to_vec())).collect::<Vec<FqPoly>>());
            break;
        }
        let gamma = gamma.ok_or(Error::NormalBasisSearchFailed(NORMAL_BASIS_ATTEMPTS))?;
        for (k, g) in gamma.into_iter().enumerate() {
            alpha[group.pow(sigma, k as u64)] = g;
        }
    }
    let (mat_t, mat_tau) = fiber_matrices(ring, pi, &alpha);
    Ok(LocalPrimeData {
        pi: pi.to_vec(),
        degree: d,
        decomposition: group.subgroup(&[sigma]),
        inertia: vec![group.identity()],
        frobenius: sigma,
        ramification: Ramification::Unramified,
        mat_t,
        mat_tau,
    })
}

/// The first root of `π` in `k_w`, searching the subfield of order `q^d`.
fn root_in(kw: &ExtField, pi: &[u32]) -> Result<FqPoly> {
    let d = pi.len() - 1;
    let sub_order = (kw.base().q() as u128).pow(d as u32);
    let w = kw.root_of_unity(sub_order - 1)?;
    let eval = |x: &FqPoly| -> FqPoly {
        let mut acc = kw.zero();
        for &c in pi.iter().rev() {
            acc = kw.add(&kw.mul(&acc, x), &kw.embed(c));
        }
        acc
    };
    if pi[0] == 0 {
        return Ok(kw.zero());
    }
    let mut x = kw.one();
    for _ in 0..sub_order - 1 {
        if eval(&x).is_empty() {
            return Ok(x);
        }
        x = kw.mul(&x, &w);
    }
    Err(Error::SearchExhausted("no root of the prime in the residue field".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AbelianGroup, FqField};
    use crate::extensions::trivial_extension;
    use crate::linalg::fitting_monic;

    #[test]
    fn trivial_group_matches_trivial_extension() {
        let f = FqField::prime(2).unwrap();
        let ext = trivial_extension(&f);
        let d = unramified_prime_data(&ext.ring, 0, &[1, 1, 1], 0).unwrap();
        assert_eq!(d, ext.prime_data(&[1, 1, 1]).unwrap());
    }

    #[test]
    fn inert_prime_over_f3() {
        let r = GroupRing::new(FqField::prime(3).unwrap(), AbelianGroup::cyclic(2));
        let d = unramified_prime_data(&r, 1, &[0, 1], 0).unwrap();
        assert_eq!(fitting_monic(&r, &d.mat_t), vec![r.zero(), r.one()]);
        assert!(d.checks(&r).iter().all(|(_, ok)| *ok));
        let d2 = unramified_prime_data(&r, 1, &[1, 0, 1], 5).unwrap();
        assert!(d2.checks(&r).iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn split_prime_is_induced() {
        let r = GroupRing::new(FqField::prime(2).unwrap(), AbelianGroup::cyclic(2));
        let d = unramified_prime_data(&r, 0, &[0, 1], 0).unwrap();
        assert_eq!(d.mat_t, vec![vec![r.zero()]]);
        assert_eq!(d.mat_tau, vec![vec![r.one()]]);
    }
}
