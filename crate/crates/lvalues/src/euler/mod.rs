//! Euler factors at a single prime `v` of `A = F_q[t]`.
//!
//! The factor is the ratio `|M/v|_G / |E(M/v)|_G` of two monic sizes. Both are
//! computed from the fiber matrices of a [`LocalPrimeData`]: the numerator from
//! the multiplication-by-`t` matrix, the denominator from the matrix of
//! `φ_E(t) = t + Σ a_i τ^i` acting on the same fiber.

pub mod fast;

use crate::algebra::groupring::GroupRing;
use crate::algebra::laurent::{GroupRingLaurent, Laurent};
use crate::algebra::poly::{FqPoly, PolyRing};
use crate::algebra::ring::Ring;
use crate::algebra::GroupRingPoly;
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::extensions::{LocalPrimeData, Ramification};
use crate::linalg::{fitting_monic, mat_add, mat_mul, mat_pow, size_ratio_series, RMatrix};

/// One Euler factor, expanded to a fixed precision.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerFactor {
    pub pi: FqPoly,
    pub degree: usize,
    /// `|M/v|_G`.
    pub numerator: GroupRingPoly,
    /// `|E(M/v)|_G`.
    pub denominator: GroupRingPoly,
    /// `numerator / denominator` known to `t^{-N}`.
    pub ratio: GroupRingLaurent,
    /// Largest `m` with `ratio ≡ 1 mod t^{-m}`; `N + 1` when the ratio is 1
    /// to the working precision.
    pub agreement: i64,
}

/// Matrix of `φ_E(t)` on the fiber: `M_t + Σ_i M_{ā_i}·M_τ^i`.
pub fn drinfeld_fiber_matrix(e: &DrinfeldModule, r: &GroupRing, data: &LocalPrimeData) -> RMatrix {
    let mut acc = data.mat_t.clone();
    for (i, a) in e.coeffs().iter().enumerate() {
        let tau_i = mat_pow(r, &data.mat_tau, i + 1);
        acc = mat_add(r, &acc, &mat_mul(r, &data.mat_of(r, a), &tau_i));
    }
    acc
}

/// `|M/v|_G`, the monic size of the fiber itself.
pub fn fiber_size(r: &GroupRing, data: &LocalPrimeData) -> GroupRingPoly {
    PolyRing::new(r.clone()).normalize(fitting_monic(r, &data.mat_t))
}

/// `|E(M/v)|_G`, the monic size of the fiber with its `E`-twisted `A`-action.
pub fn drinfeld_residue_size(e: &DrinfeldModule, r: &GroupRing, data: &LocalPrimeData) -> GroupRingPoly {
    PolyRing::new(r.clone()).normalize(fitting_monic(r, &drinfeld_fiber_matrix(e, r, data)))
}

/// The factor at `data.pi`, expanded to `t^{-n}`.
pub fn euler_factor(e: &DrinfeldModule, r: &GroupRing, data: &LocalPrimeData, n: i64) -> Result<EulerFactor> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("precision {n} must be at least 1")));
    }
    let numerator = fiber_size(r, data);
    let denominator = drinfeld_residue_size(e, r, data);
    factor_from_sizes(e, r, data.pi.clone(), numerator, denominator, n)
}

/// Assembles an [`EulerFactor`] from two monic sizes and checks the
/// invariants every factor must satisfy.
pub fn factor_from_sizes(
    e: &DrinfeldModule,
    r: &GroupRing,
    pi: FqPoly,
    numerator: GroupRingPoly,
    denominator: GroupRingPoly,
    n: i64,
) -> Result<EulerFactor> {
    let degree = pi.len() - 1;
    let ratio = size_ratio_series(r, &numerator, &denominator, n)?;
    let agreement = ratio.agreement_with_one(r);
    if agreement < 1 {
        return Err(Error::InvalidInput(format!(
            "Euler factor at {} is not 1 modulo 1/t",
            PolyRing::new(r.field().clone()).format(&pi)
        )));
    }
    if e.rank() == 1 && agreement < (degree as i64).min(n + 1) {
        return Err(Error::InvalidInput(format!(
            "rank-one Euler factor at {} agrees with 1 only to order {agreement}",
            PolyRing::new(r.field().clone()).format(&pi)
        )));
    }
    Ok(EulerFactor {
        pi,
        degree,
        numerator,
        denominator,
        ratio,
        agreement,
    })
}

/// `e_v·σ_v`: the inertia idempotent times the Frobenius element.
fn frobenius_idempotent(r: &GroupRing, data: &LocalPrimeData) -> Result<crate::algebra::groupring::GroupRingElement> {
    if data.ramification == Ramification::Wild {
        return Err(Error::WildInertia(data.inertia.len()));
    }
    let ev = data.inertia_idempotent(r)?;
    Ok(r.mul(&ev, &r.basis(data.frobenius)))
}

/// The Carlitz closed form `Nv − e_v·σ_v` at a non-wild prime.
pub fn carlitz_closed_form(r: &GroupRing, data: &LocalPrimeData) -> Result<GroupRingPoly> {
    let es = frobenius_idempotent(r, data)?;
    let mut nv = data.nv(r);
    nv[0] = r.sub(&nv[0], &es);
    Ok(PolyRing::new(r.clone()).normalize(nv))
}

/// The Carlitz polynomial `P_v(X) = X − Nv`, coefficients listed by powers of `X`.
pub fn carlitz_pv(pi: &[u32], field: &crate::algebra::fq::FqField) -> Vec<FqPoly> {
    let pr = PolyRing::new(field.clone());
    vec![pr.neg(&pi.to_vec()), pr.one()]
}

/// `P_v^{*,G}(1) = P_v(σ_v·e_v)/P_v(0)` expanded to `t^{-n}`, where the
/// zeroth power of `σ_v·e_v` is read as `1`.
pub fn pstar_from_pv(r: &GroupRing, pv: &[FqPoly], data: &LocalPrimeData, n: i64) -> Result<GroupRingLaurent> {
    let es = frobenius_idempotent(r, data)?;
    let pr = PolyRing::new(r.clone());
    let lift = |a: &FqPoly| -> GroupRingPoly { a.iter().map(|&c| r.scalar(c)).collect() };
    let p0 = pv.first().map(lift).unwrap_or_default();
    let mut value = p0.clone();
    let mut power = r.one();
    for coeff in pv.iter().skip(1) {
        power = r.mul(&power, &es);
        value = pr.add(&value, &pr.scale(&power, &lift(coeff)));
    }
    let value = pr.normalize(value);
    let p0 = pr.normalize(p0);
    let deg = pr.degree(&p0).ok_or_else(|| Error::NotAUnit("P_v(0) vanishes".into()))? as i64;
    let num = Laurent::from_poly(r, &value, n + deg);
    let den = Laurent::from_poly(r, &p0, n + deg);
    Ok(num.div(r, &den)?.truncate(r, n))
}
