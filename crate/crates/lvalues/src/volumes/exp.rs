//! The exponential of a Drinfeld module acting on `K_∞ = F_q((1/t))[G]·θ`.
//!
//! With `τ(cθ) = c(t^q)·β·θ` one has `τ^k(cθ) = c(t^{q^k})·B_k·θ`, where
//! `B_k = β(t)β(t^q)⋯β(t^{q^{k−1}})`, so `exp(cθ) = Σ_k e_k·c(t^{q^k})·B_k·θ`.
//! Elements are stored by their coordinate `c ∈ F_q((1/t))[G]`.

use crate::algebra::laurent::{GroupRingLaurent, Laurent};
use crate::algebra::{FqPoly, GroupRing, GroupRingPoly, PolyRing, Ring};
use crate::drinfeld::{exp_coefficients, isometry_radius, DrinfeldModule, Fraction};
use crate::error::{Error, Result};
use crate::extensions::ExtensionData;

/// Coordinates known exactly (polynomials) carry this precision.
pub const EXACT: i64 = 1 << 40;

/// Exponential and `φ_E(t)` on the coordinates of `K_∞`.
#[derive(Clone, Debug)]
pub struct TwistedExp {
    ring: GroupRing,
    q: usize,
    i0: i64,
    beta_degree: i64,
    radius: i64,
    coeffs: Vec<Fraction>,
    beta_products: Vec<GroupRingPoly>,
    phi: Vec<GroupRingPoly>,
}

impl TwistedExp {
    pub fn new(e: &DrinfeldModule, ext: &ExtensionData) -> Result<Self> {
        if e.field() != ext.field() {
            return Err(Error::InvalidInput("module and extension use different fields".into()));
        }
        let ring = ext.ring.clone();
        let q = e.q();
        let i0 = isometry_radius(e, 1)?.i0;
        let beta_degree = ext.beta().len() as i64 - 1;
        let radius = i0 + (beta_degree.max(0) + q as i64 - 2) / (q as i64 - 1);
        let lift = |a: &FqPoly| -> GroupRingPoly { a.iter().map(|&c| ring.scalar(c)).collect() };
        let mut phi = vec![vec![ring.zero(), ring.one()]];
        phi.extend(e.coeffs().iter().map(lift));
        Ok(TwistedExp {
            q,
            i0,
            beta_degree,
            radius,
            coeffs: exp_coefficients(e, 1).coeffs,
            beta_products: vec![vec![ring.one()], ext.beta().clone()],
            phi,
            ring,
        })
    }

    pub fn ring(&self) -> &GroupRing {
        &self.ring
    }

    /// Least `i` such that `exp` maps `U_i = t^{-i}F_q[[1/t]][G]θ` onto
    /// itself isometrically in this frame.
    pub fn radius(&self) -> i64 {
        self.radius
    }

    fn ensure(&mut self, e: &DrinfeldModule, k: usize) {
        if self.coeffs.len() <= k {
            self.coeffs = exp_coefficients(e, k).coeffs;
        }
        let pr = PolyRing::new(self.ring.clone());
        while self.beta_products.len() <= k {
            let j = self.beta_products.len();
            let next = pr.mul(&self.beta_products[j - 1], &pr.inflate(&self.beta_products[1], self.q.pow(j as u32 - 1)));
            self.beta_products.push(next);
        }
    }

    /// `τ^k(x)` in coordinates.
    pub fn tau_pow(&self, x: &GroupRingLaurent, k: usize) -> GroupRingLaurent {
        let r = &self.ring;
        let qk = self.q.pow(k as u32) as i64;
        x.inflate(r, qk).mul(r, &Laurent::from_poly(r, &self.beta_products[k], EXACT))
    }

    /// `φ_E(t)(x) = t·x + Σ_i a_i τ^i(x)`.
    pub fn phi_t(&self, x: &GroupRingLaurent) -> GroupRingLaurent {
        let r = &self.ring;
        let mut acc = x.shift(1);
        for (i, a) in self.phi.iter().enumerate().skip(1) {
            let a = Laurent::from_poly(r, a, EXACT);
            acc = acc.add(r, &a.mul(r, &self.tau_pow(x, i)));
        }
        acc
    }

    /// `Σ_{k≥1} e_k τ^k(x)` to precision `prec` for `x ∈ U_{radius+1}`.
    ///
    /// Terms are summed while the bound `deg e_k ≤ i₀(q^k − 1) − 1` allows
    /// them to reach `t^{-prec}`.
    pub fn exp_tail(&mut self, e: &DrinfeldModule, x: &GroupRingLaurent, prec: i64) -> Result<GroupRingLaurent> {
        let Some(dx) = x.degree() else {
            return Ok(Laurent::zero(prec.min(x.prec)));
        };
        if dx > -(self.radius + 1) {
            return Err(Error::ConvergenceDomainExceeded(format!("degree {dx} above −{}", self.radius + 1)));
        }
        let r = self.ring.clone();
        let q = self.q as i64;
        let b = self.beta_degree.max(0);
        let mut acc = Laurent::zero(prec);
        let mut k = 1usize;
        loop {
            let qk = q.pow(k as u32);
            let bound = self.i0 * (qk - 1) - 1 + dx * qk + b * (qk - 1) / (q - 1);
            if bound < -prec {
                break;
            }
            self.ensure(e, k);
            let twisted = self.tau_pow(x, k);
            let need = prec + twisted.degree().unwrap_or(0).max(0) + 2;
            let ek = lift_scalar(&r, &self.coeffs[k].laurent(r.field(), need));
            acc = acc.add(&r, &ek.mul(&r, &twisted));
            k += 1;
        }
        let out = acc.truncate(&r, prec);
        if out.prec < prec.min(x.prec) {
            return Err(Error::PrecisionLoss(format!("exponential tail known to {} of {prec}", out.prec)));
        }
        Ok(out)
    }

    /// `exp(x)` for `x ∈ U_{radius+1}`.
    pub fn exp_small(&mut self, e: &DrinfeldModule, x: &GroupRingLaurent, prec: i64) -> Result<GroupRingLaurent> {
        let tail = self.exp_tail(e, x, prec)?;
        Ok(x.add(&self.ring, &tail).truncate(&self.ring, prec))
    }

    /// The unique `u ∈ U_{radius+1}` with `exp(u) = w`, by the contraction
    /// `u ↦ w − (exp(u) − u)`.
    pub fn exp_inverse_small(&mut self, e: &DrinfeldModule, w: &GroupRingLaurent, prec: i64) -> Result<GroupRingLaurent> {
        let r = self.ring.clone();
        let mut u = w.truncate(&r, prec);
        for _ in 0..(prec + self.radius + 4).max(4) {
            let next = w.sub(&r, &self.exp_tail(e, &u, prec)?).truncate(&r, prec);
            if next == u {
                return Ok(u);
            }
            u = next;
        }
        Err(Error::PrecisionLoss("inverse exponential did not settle".into()))
    }

    /// `exp(t^j θ)` modulo `M = A[G]θ` (the part with negative exponents)
    /// for `j = start, start+1, …, end`, each to precision at least `prec`.
    /// The first value comes from the series, the others from
    /// `exp(t·x) = φ_E(t)(exp x)`, using that `φ_E(t)` preserves `M`.
    pub fn exp_monomials(&mut self, e: &DrinfeldModule, start: i64, end: i64, prec: i64) -> Result<Vec<GroupRingLaurent>> {
        let r = self.ring.clone();
        let steps = (end - start).max(0);
        let base = Laurent::monomial(&r, r.one(), start, EXACT);
        let mut z = self.exp_small(e, &base, prec + steps + 1)?.neg_part(&r);
        let mut out = Vec::with_capacity(steps as usize + 1);
        for _ in 0..=steps {
            if z.prec < prec {
                return Err(Error::PrecisionLoss(format!("exp(t^j θ) known to {} of {prec}", z.prec)));
            }
            out.push(z.clone());
            z = self.phi_t(&z).neg_part(&r);
        }
        Ok(out)
    }
}

/// A series over `F_q` viewed in `F_q((1/t))[G]`.
pub fn lift_scalar(r: &GroupRing, a: &Laurent<u32>) -> GroupRingLaurent {
    Laurent {
        v_top: a.v_top,
        prec: a.prec,
        coeffs: a.coeffs.iter().map(|&c| r.scalar(c)).collect(),
    }
}

/// `g·x` for a group element `g`.
pub fn act_group(r: &GroupRing, g: usize, x: &GroupRingLaurent) -> GroupRingLaurent {
    x.scale(r, &r.basis(g))
}
