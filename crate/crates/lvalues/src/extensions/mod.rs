//! Arithmetic data of an abelian extension `K/F`: the group `G`, residue
//! fibers at finite primes, taming data at wild primes and the coordinate
//! model at infinity.
//!
//! Every extension is described by a frame `θ` generating the lattice
//! `M = A[G]·θ` and an element `β ∈ A[G]` with `τ(θ) = β·θ`, so that
//! `τ(c·θ) = c(t^q)·β·θ`. The fiber at a prime `π` is `(A/π)[G]·θ`.

pub mod cyclotomic;
pub mod fixture;
pub mod residue;
pub mod unramified;

use crate::algebra::{GroupRing, GroupRingElement, GroupRingPoly, PolyRing, Ring};
use crate::algebra::{FqField, FqPoly};
use crate::error::{Error, Result};
use crate::linalg::finite_module::module_from_matrix;
use crate::linalg::{fitting_monic, mat_add, mat_identity, mat_mul, mat_pow, mat_scale, RMatrix};

pub use cyclotomic::{carlitz_cyclotomic, carlitz_cyclotomic_seeded, taming_module};
pub use fixture::{parse_fixture, validate_fixture, write_fixture, FixtureReport};
pub use residue::ResidueGroupRing;
pub use unramified::unramified_prime_data;

/// Ramification type of a finite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ramification {
    Unramified,
    Tame,
    Wild,
}

impl Ramification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Ramification::Unramified => "unramified",
            Ramification::Tame => "tame",
            Ramification::Wild => "wild",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "unramified" => Some(Ramification::Unramified),
            "tame" => Some(Ramification::Tame),
            "wild" => Some(Ramification::Wild),
            _ => None,
        }
    }
}

/// The fiber `M/v` at a finite prime `v = (π)` as an `F_q[G]`-free module of
/// rank `deg π`, with the matrices of `t̄` and `τ` in a chosen basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalPrimeData {
    pub pi: FqPoly,
    pub degree: usize,
    pub decomposition: Vec<usize>,
    pub inertia: Vec<usize>,
    pub frobenius: usize,
    pub ramification: Ramification,
    pub mat_t: RMatrix,
    pub mat_tau: RMatrix,
}

impl LocalPrimeData {
    /// `Nv = π` as a polynomial over `F_q[G]`.
    pub fn nv(&self, r: &GroupRing) -> GroupRingPoly {
        self.pi.iter().map(|&c| r.scalar(c)).collect()
    }

    /// Matrix of multiplication by `a mod π` on the fiber.
    pub fn mat_of(&self, r: &GroupRing, a: &[u32]) -> RMatrix {
        let d = self.degree;
        let mut acc = vec![vec![r.zero(); d]; d];
        for &c in a.iter().rev() {
            acc = mat_mul(r, &acc, &self.mat_t);
            acc = mat_add(r, &acc, &mat_scale(r, &r.scalar(c), &mat_identity(r, d)));
        }
        acc
    }

    /// `M_τ·M_t = M_t^q·M_τ`.
    pub fn semilinear_ok(&self, r: &GroupRing) -> bool {
        let q = r.field().q() as usize;
        mat_mul(r, &self.mat_tau, &self.mat_t) == mat_mul(r, &mat_pow(r, &self.mat_t, q), &self.mat_tau)
    }

    /// The idempotent `e_v` of the inertia group.
    pub fn inertia_idempotent(&self, r: &GroupRing) -> Result<GroupRingElement> {
        r.inertia_idempotent(&self.inertia)
    }

    /// Runs every structural check and returns `(name, passed)` pairs.
    pub fn checks(&self, r: &GroupRing) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        let d = self.degree;
        let shapes = self.mat_t.len() == d
            && self.mat_tau.len() == d
            && self.mat_t.iter().chain(&self.mat_tau).all(|row| row.len() == d);
        out.push(("shape".to_string(), shapes));
        if !shapes {
            return out;
        }
        let free = module_from_matrix(r, &self.mat_t).map(|m| m.free_rank() == Some(d)).unwrap_or(false);
        out.push(("fiber-free".to_string(), free));
        out.push(("tau-semilinear".to_string(), self.semilinear_ok(r)));
        if self.ramification != Ramification::Wild {
            let pr = PolyRing::new(r.clone());
            out.push(("size-equals-nv".to_string(), pr.normalize(fitting_monic(r, &self.mat_t)) == self.nv(r)));
        }
        let g = r.group();
        let decomp_ok = self.decomposition.contains(&self.frobenius)
            && self.inertia.iter().all(|h| self.decomposition.contains(h))
            && {
                let mut gens = self.inertia.clone();
                gens.push(self.frobenius);
                g.subgroup(&gens) == self.decomposition
            };
        out.push(("decomposition".to_string(), decomp_ok));
        let p = r.field().p() as usize;
        let tag_ok = match self.ramification {
            Ramification::Unramified => self.inertia == vec![g.identity()],
            Ramification::Tame => self.inertia.len() > 1 && self.inertia.len() % p != 0,
            Ramification::Wild => self.inertia.len() % p == 0,
        };
        out.push(("ramification-tag".to_string(), tag_ok));
        out
    }
}

/// Fiber matrices for `(A/π)[G]·θ` with `τ(c·θ) = c(t^q)·α·θ`, in the
/// `F_q[G]`-basis `t̄^i·θ`; `alpha` lists the residues of `α` per group element.
pub fn fiber_matrices(r: &GroupRing, pi: &[u32], alpha: &[FqPoly]) -> (RMatrix, RMatrix) {
    let f = r.field();
    let pr = PolyRing::new(f.clone());
    let d = pi.len() - 1;
    let q = f.q() as usize;
    let mut mat_t = vec![vec![r.zero(); d]; d];
    for i in 0..d {
        let col = pr.rem(&pr.monomial(1, i + 1), pi);
        for (j, &c) in col.iter().enumerate() {
            mat_t[j][i] = r.scalar(c);
        }
    }
    let mut mat_tau = vec![vec![r.zero(); d]; d];
    let tq = pr.rem(&pr.monomial(1, q), pi);
    let mut power = vec![1u32];
    for i in 0..d {
        for (g, a) in alpha.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            let col = pr.mul_mod(&power, a, pi);
            for (j, &c) in col.iter().enumerate() {
                mat_tau[j][i].0[g] = c;
            }
        }
        power = pr.mul_mod(&power, &tq, pi);
    }
    (mat_t, mat_tau)
}

/// A ramified finite prime with its local group data.
#[derive(Clone, Debug, PartialEq)]
pub struct RamifiedPrime {
    pub pi: FqPoly,
    pub decomposition: Vec<usize>,
    pub inertia: Vec<usize>,
    pub frobenius: usize,
    pub wild: bool,
}

/// Taming data at a wild prime: the fiber generator and `α_τ` with
/// `τ(ω̄) = α_τ·ω̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct TamingData {
    pub pi: FqPoly,
    pub omega: String,
    pub alpha_tau: GroupRingPoly,
}

/// Coordinates at infinity: `K_∞ = F_q((1/t))[G]·θ` with `τ(θ) = β·θ`, the
/// lattice generators, and the discreteness radius of the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityModel {
    pub theta_tau: GroupRingPoly,
    pub lattice_gens: Vec<GroupRingPoly>,
    pub precision: i64,
    pub discreteness_radius: i64,
    /// Valuations at infinity of the roots of the defining polynomial, as
    /// reduced fractions `(num, den)`.
    pub root_valuations: Vec<(i64, i64)>,
}

/// Where an extension description came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    BuiltIn(String),
    Fixture(String),
}

/// Global description of `K/F` consumed by the rest of the crate.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub name: String,
    pub ring: GroupRing,
    pub conductor: Option<FqPoly>,
    pub ramified: Vec<RamifiedPrime>,
    pub taming: Vec<TamingData>,
    pub infinity: InfinityModel,
    pub provenance: Provenance,
    /// For cyclotomic extensions, the class in `(A/f)^×` of each group element.
    pub group_classes: Option<Vec<FqPoly>>,
}

impl ExtensionData {
    pub fn field(&self) -> &FqField {
        self.ring.field()
    }

    /// `β` with `τ(θ) = β·θ`.
    pub fn beta(&self) -> &GroupRingPoly {
        &self.infinity.theta_tau
    }

    pub fn residue_ring(&self, pi: &[u32]) -> ResidueGroupRing {
        ResidueGroupRing::new(self.ring.clone(), pi.to_vec())
    }

    /// `β mod π` as residues per group element.
    pub fn residue_beta(&self, pi: &[u32]) -> Vec<FqPoly> {
        self.residue_ring(pi).reduce(&self.ring.poly_components(self.beta()))
    }

    pub fn ramified_prime(&self, pi: &[u32]) -> Option<&RamifiedPrime> {
        self.ramified.iter().find(|p| p.pi == pi)
    }

    pub fn is_wild(&self, pi: &[u32]) -> bool {
        self.ramified_prime(pi).is_some_and(|p| p.wild)
    }

    /// Frobenius at an unramified prime, read off from
    /// `τ^d·θ̄ = B_d·θ̄` where `B_d = β(t)·β(t^q)⋯β(t^{q^{d−1}})`.
    pub fn frobenius(&self, pi: &[u32]) -> Result<usize> {
        let rr = self.residue_ring(pi);
        let bd = rr.twisted_norm(&self.residue_beta(pi), pi.len() - 1);
        rr.as_group_element(&bd).ok_or_else(|| {
            Error::InvalidInput(format!(
                "the frame does not reduce to a Frobenius element at {}",
                PolyRing::new(self.field().clone()).format(pi)
            ))
        })
    }

    /// Local data at the prime `π` (monic irreducible).
    pub fn prime_data(&self, pi: &[u32]) -> Result<LocalPrimeData> {
        let pi = pi.to_vec();
        let alpha = self.residue_beta(&pi);
        let (mat_t, mat_tau) = fiber_matrices(&self.ring, &pi, &alpha);
        let degree = pi.len() - 1;
        if let Some(rp) = self.ramified_prime(&pi) {
            let p = self.field().p() as usize;
            let ramification = if rp.inertia.len() % p == 0 { Ramification::Wild } else { Ramification::Tame };
            return Ok(LocalPrimeData {
                pi,
                degree,
                decomposition: rp.decomposition.clone(),
                inertia: rp.inertia.clone(),
                frobenius: rp.frobenius,
                ramification,
                mat_t,
                mat_tau,
            });
        }
        let frobenius = self.frobenius(&pi)?;
        let g = self.ring.group();
        Ok(LocalPrimeData {
            pi,
            degree,
            decomposition: g.subgroup(&[frobenius]),
            inertia: vec![g.identity()],
            frobenius,
            ramification: Ramification::Unramified,
            mat_t,
            mat_tau,
        })
    }

    /// `B_k = β(t)·β(t^q)⋯β(t^{q^{k−1}})` exactly in `A[G]`.
    pub fn beta_product(&self, k: usize) -> GroupRingPoly {
        let pr = PolyRing::new(self.ring.clone());
        let q = self.field().q() as usize;
        let mut acc = pr.one();
        let mut qi = 1;
        for _ in 0..k {
            acc = pr.mul(&acc, &pr.inflate(self.beta(), qi));
            qi *= q;
        }
        acc
    }
}

/// `K = F`: trivial group, `θ = 1`, `τ(θ) = θ`, lattice `A`.
pub fn trivial_extension(f: &FqField) -> ExtensionData {
    let ring = GroupRing::trivial(f.clone());
    ExtensionData {
        name: format!("trivial-q{}", f.q()),
        infinity: InfinityModel {
            theta_tau: vec![ring.one()],
            lattice_gens: vec![vec![ring.one()]],
            precision: 16,
            discreteness_radius: 1,
            root_valuations: vec![(0, 1)],
        },
        ring,
        conductor: None,
        ramified: Vec::new(),
        taming: Vec::new(),
        provenance: Provenance::BuiltIn("trivial".to_string()),
        group_classes: None,
    }
}

/// Extensions constructed without external input.
pub fn builtin_extensions() -> Vec<ExtensionData> {
    let f2 = FqField::prime(2).unwrap();
    let f3 = FqField::prime(3).unwrap();
    let mut out = vec![trivial_extension(&f2), trivial_extension(&f3)];
    for (f, cond) in [(&f3, vec![0u32, 1]), (&f2, vec![0, 0, 1]), (&f2, vec![1, 1, 1]), (&f3, vec![1, 1])] {
        if let Ok(ext) = carlitz_cyclotomic(f, &cond) {
            out.push(ext);
        }
    }
    out
}

/// Looks up a built-in extension by name.
pub fn builtin_extension(name: &str) -> Option<ExtensionData> {
    builtin_extensions().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_fibers() {
        let f = FqField::prime(2).unwrap();
        let ext = trivial_extension(&f);
        let r = &ext.ring;
        let v = ext.prime_data(&[0, 1]).unwrap();
        assert_eq!(v.mat_t, vec![vec![r.zero()]]);
        assert_eq!(v.mat_tau, vec![vec![r.one()]]);
        let w = ext.prime_data(&[1, 1, 1]).unwrap();
        assert_eq!(w.mat_t, vec![vec![r.zero(), r.one()], vec![r.one(), r.one()]]);
        assert!(w.checks(r).iter().all(|(_, ok)| *ok));
        assert_eq!(ext.infinity.discreteness_radius, 1);
    }

    #[test]
    fn corrupted_tau_fails_semilinearity() {
        let f = FqField::prime(2).unwrap();
        let ext = trivial_extension(&f);
        let mut w = ext.prime_data(&[1, 1, 1]).unwrap();
        w.mat_tau[0][1] = ext.ring.add(&w.mat_tau[0][1], &ext.ring.one());
        assert!(!w.semilinear_ok(&ext.ring));
    }
}

#[cfg(test)]
mod builtin_tests {
    use super::*;

    #[test]
    fn all_builtins_construct() {
        let names: Vec<String> = builtin_extensions().into_iter().map(|e| e.name).collect();
        assert_eq!(
            names,
            vec![
                "trivial-q2",
                "trivial-q3",
                "cyclotomic-q3-f[0,1]",
                "cyclotomic-q2-f[0,0,1]",
                "cyclotomic-q2-f[1,1,1]",
                "cyclotomic-q3-f[1,1]",
            ]
        );
    }
}
