//! The finite ring `(A/π)[G]`, with elements stored as one residue
//! polynomial per group element.

use crate::algebra::{FqField, FqPoly, GroupRing, GroupRingElement, PolyRing, Ring};

#[derive(Clone, Debug)]
pub struct ResidueGroupRing {
    ring: GroupRing,
    pi: FqPoly,
    pr: PolyRing<FqField>,
}

impl ResidueGroupRing {
    pub fn new(ring: GroupRing, pi: FqPoly) -> Self {
        let pr = PolyRing::new(ring.field().clone());
        ResidueGroupRing { ring, pi, pr }
    }

    pub fn group_ring(&self) -> &GroupRing {
        &self.ring
    }

    pub fn modulus(&self) -> &[u32] {
        &self.pi
    }

    /// Reduces per-group-element polynomials modulo `π`.
    pub fn reduce(&self, comps: &[FqPoly]) -> Vec<FqPoly> {
        comps.iter().map(|c| self.pr.rem(c, &self.pi)).collect()
    }

    /// `x ↦ x(t^{q^k})`, the `k`-fold Frobenius twist.
    pub fn twist(&self, x: &[FqPoly], k: usize) -> Vec<FqPoly> {
        let q = self.ring.field().q() as u128;
        let e = q.pow(k as u32);
        let tq = self.pr.pow_mod(&[0, 1], e, &self.pi);
        x.iter()
            .map(|c| {
                let mut acc = Vec::new();
                for &a in c.iter().rev() {
                    acc = self.pr.mul_mod(&acc, &tq, &self.pi);
                    acc = self.pr.add(&acc, &vec![a]);
                }
                self.pr.normalize(acc)
            })
            .collect()
    }

    /// `x·x^{(1)}⋯x^{(k−1)}`.
    pub fn twisted_norm(&self, x: &[FqPoly], k: usize) -> Vec<FqPoly> {
        let mut acc = self.one();
        let mut cur = x.to_vec();
        for i in 0..k {
            acc = self.mul(&acc, &cur);
            if i + 1 < k {
                cur = self.twist(&cur, 1);
            }
        }
        acc
    }

    /// The group element `g` if `x = [g]`.
    pub fn as_group_element(&self, x: &[FqPoly]) -> Option<usize> {
        let mut found = None;
        for (g, c) in x.iter().enumerate() {
            match c.as_slice() {
                [] => {}
                [1] if found.is_none() => found = Some(g),
                _ => return None,
            }
        }
        found
    }

    /// Image in `F_q[G]` when every component is a constant.
    pub fn as_constant(&self, x: &[FqPoly]) -> Option<GroupRingElement> {
        let mut out = self.ring.zero();
        for (g, c) in x.iter().enumerate() {
            match c.len() {
                0 => {}
                1 => out.0[g] = c[0],
                _ => return None,
            }
        }
        Some(out)
    }
}

impl Ring for ResidueGroupRing {
    type El = Vec<FqPoly>;

    fn zero(&self) -> Self::El {
        vec![Vec::new(); self.ring.order()]
    }

    fn one(&self) -> Self::El {
        let mut v = self.zero();
        v[0] = vec![1];
        v
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        a.iter().all(|c| c.is_empty())
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.pr.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        a.iter().map(|x| self.pr.neg(x)).collect()
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let g = self.ring.group();
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_empty() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_empty() {
                    continue;
                }
                let k = g.op(i, j);
                let prod = self.pr.mul_mod(x, y, &self.pi);
                out[k] = self.pr.add(&out[k], &prod);
            }
        }
        out
    }
}
