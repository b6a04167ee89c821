//! Twisted operators `Σ α_j τ^j` with `α_j ∈ A[G]` and the finite quotients
//! `V/U_i` of `V = K_∞/M` on which they are represented by matrices.
//!
//! With the frame `K_∞ = F_q((1/t))[G]·θ` and `M = A[G]·θ`, the chain is
//! `U_i = t^{-i}·F_q[[1/t]][G]·θ`, and `V/U_i` has the `F_q[G]`-basis
//! `e_k = t^{-k}·θ` for `1 ≤ k < i`.

use crate::algebra::groupring::GroupRing;
use crate::algebra::poly::PolyRing;
use crate::algebra::ring::Ring;
use crate::algebra::GroupRingPoly;
use crate::error::{Error, Result};
use crate::extensions::ExtensionData;
use crate::linalg::RMatrix;

/// An element `Σ_j α_j τ^j` of `A[G]{τ}`; `terms[j] = α_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedOp {
    pub terms: Vec<GroupRingPoly>,
}

impl TwistedOp {
    pub fn zero() -> Self {
        TwistedOp { terms: Vec::new() }
    }

    /// `α·τ^j`.
    pub fn monomial(alpha: GroupRingPoly, j: usize) -> Self {
        let mut terms = vec![Vec::new(); j];
        terms.push(alpha);
        TwistedOp { terms }
    }

    fn normalized(mut self, r: &GroupRing) -> Self {
        let pr = PolyRing::new(r.clone());
        for t in self.terms.iter_mut() {
            *t = pr.normalize(std::mem::take(t));
        }
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    pub fn add(&self, r: &GroupRing, o: &Self) -> Self {
        let pr = PolyRing::new(r.clone());
        let n = self.terms.len().max(o.terms.len());
        let empty = Vec::new();
        let terms = (0..n)
            .map(|j| pr.add(self.terms.get(j).unwrap_or(&empty), o.terms.get(j).unwrap_or(&empty)))
            .collect();
        TwistedOp { terms }.normalized(r)
    }

    pub fn neg(&self, r: &GroupRing) -> Self {
        let pr = PolyRing::new(r.clone());
        TwistedOp {
            terms: self.terms.iter().map(|t| pr.neg(t)).collect(),
        }
    }

    /// `self ∘ o`, using `τ^j·γ = γ(t^{q^j})·τ^j`.
    pub fn compose(&self, r: &GroupRing, o: &Self) -> Self {
        let pr = PolyRing::new(r.clone());
        let q = r.field().q() as usize;
        let mut terms: Vec<GroupRingPoly> = vec![Vec::new(); (self.terms.len() + o.terms.len()).max(1)];
        for (j, a) in self.terms.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (k, g) in o.terms.iter().enumerate() {
                if g.is_empty() {
                    continue;
                }
                let prod = pr.mul(a, &pr.inflate(g, q.pow(j as u32)));
                terms[j + k] = pr.add(&terms[j + k], &prod);
            }
        }
        TwistedOp { terms }.normalized(r)
    }

    /// `α∘self` for `α ∈ A[G]`.
    pub fn left_mul(&self, r: &GroupRing, alpha: &GroupRingPoly) -> Self {
        TwistedOp::monomial(alpha.clone(), 0).compose(r, self)
    }
}

/// The quotient chain `V/U_i` for a frame with `τ(θ) = β·θ`.
#[derive(Clone, Debug)]
pub struct QuotientChain {
    ring: GroupRing,
    beta: GroupRingPoly,
    ell: i64,
}

impl QuotientChain {
    /// Chain for the frame `β`; `ell` is the level with `U_ℓ ∩ M = 0`.
    pub fn new(ring: GroupRing, beta: GroupRingPoly, ell: i64) -> Result<Self> {
        if ell < 1 {
            return Err(Error::DiscretenessViolated(format!(
                "U_{ell} contains the frame vector θ"
            )));
        }
        let beta = PolyRing::new(ring.clone()).normalize(beta);
        if beta.is_empty() {
            return Err(Error::InvalidInput("frame twist β is zero".into()));
        }
        Ok(QuotientChain { ring, beta, ell })
    }

    /// Chain of the extension's infinity model. Lattice generators are
    /// elements of `A[G]·θ`; a nonzero one has degree `≥ 0` and so lies
    /// outside `U_ℓ` for `ℓ ≥ 1`.
    pub fn from_extension(ext: &ExtensionData) -> Result<Self> {
        let pr = PolyRing::new(ext.ring.clone());
        for g in &ext.infinity.lattice_gens {
            if pr.normalize(g.clone()).is_empty() {
                return Err(Error::DiscretenessViolated("zero lattice generator".into()));
            }
        }
        Self::new(ext.ring.clone(), ext.infinity.theta_tau.clone(), ext.infinity.discreteness_radius)
    }

    pub fn ring(&self) -> &GroupRing {
        &self.ring
    }

    pub fn beta(&self) -> &GroupRingPoly {
        &self.beta
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// `F_q[G]`-rank of `V/U_i`.
    pub fn dim(&self, i: i64) -> usize {
        (i - 1).max(0) as usize
    }

    /// `B_j = β·β(t^q)⋯β(t^{q^{j−1}})`, so that `τ^j(c·θ) = c(t^{q^j})·B_j·θ`.
    pub fn beta_product(&self, j: usize) -> GroupRingPoly {
        let pr = PolyRing::new(self.ring.clone());
        let q = self.ring.field().q() as usize;
        let mut acc = pr.one();
        for k in 0..j {
            acc = pr.mul(&acc, &pr.inflate(&self.beta, q.pow(k as u32)));
        }
        acc
    }

    fn deg(&self, a: &GroupRingPoly) -> Option<i64> {
        PolyRing::new(self.ring.clone()).degree(a).map(|d| d as i64)
    }

    /// Least level `i ≥ ℓ` from which `op(U_i) ⊆ U_{i+shift}` holds for
    /// every later level; `None` if a `τ^0` term prevents it for `shift ≥ 1`.
    fn level(&self, op: &TwistedOp, shift: i64) -> Option<i64> {
        let q = self.ring.field().q() as i64;
        let mut level = self.ell;
        for (j, a) in op.terms.iter().enumerate() {
            let Some(da) = self.deg(a) else { continue };
            let growth = q.pow(j as u32) - 1;
            let need = da + self.deg(&self.beta_product(j)).unwrap_or(0) + shift;
            if growth == 0 {
                if need > 0 {
                    return None;
                }
                continue;
            }
            level = level.max((need + growth - 1).div_euclid(growth));
        }
        Some(level)
    }

    /// Least level from which `op` maps `U_i` into `U_{i+1}`.
    pub fn contraction_level(&self, op: &TwistedOp) -> Option<i64> {
        self.level(op, 1)
    }

    /// Least level from which `op` preserves `U_i`.
    pub fn stable_level(&self, op: &TwistedOp) -> Option<i64> {
        self.level(op, 0)
    }

    /// Matrix of `op` on `V/U_i` in the basis `e_1, …, e_{i−1}` (columns are
    /// images).
    pub fn op_matrix(&self, op: &TwistedOp, i: i64) -> Result<RMatrix> {
        match self.stable_level(op) {
            Some(l) if l <= i => {}
            _ => {
                return Err(Error::InvalidInput(format!("operator does not preserve U_{i}")));
            }
        }
        let r = &self.ring;
        let pr = PolyRing::new(r.clone());
        let q = r.field().q() as i64;
        let n = self.dim(i);
        let mut m = vec![vec![r.zero(); n]; n];
        for (j, a) in op.terms.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            let p = pr.mul(a, &self.beta_product(j));
            let qj = q.pow(j as u32);
            for k in 1..=n as i64 {
                for row in 1..=n as i64 {
                    let idx = k * qj - row;
                    if idx >= 0 && (idx as usize) < p.len() {
                        r.add_assign(&mut m[row as usize - 1][k as usize - 1], &p[idx as usize]);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Multiplication by `a ∈ A[G]` as a map `V/U_{i + deg a} → V/U_i`.
    pub fn mult_matrix(&self, a: &GroupRingPoly, i: i64) -> RMatrix {
        let r = &self.ring;
        let da = self.deg(a).unwrap_or(0);
        let rows = self.dim(i);
        let cols = self.dim(i + da);
        let mut m = vec![vec![r.zero(); cols]; rows];
        for k in 1..=cols as i64 {
            for row in 1..=rows as i64 {
                let idx = k - row;
                if idx >= 0 && (idx as usize) < a.len() {
                    m[row as usize - 1][k as usize - 1] = a[idx as usize].clone();
                }
            }
        }
        m
    }

    /// The projection `V/U_{i+1} → V/U_i`.
    pub fn projection(&self, i: i64) -> RMatrix {
        let r = &self.ring;
        let rows = self.dim(i);
        let cols = self.dim(i + 1);
        (0..rows)
            .map(|a| (0..cols).map(|b| if a == b { r.one() } else { r.zero() }).collect())
            .collect()
    }
}
