//! Finite `A[G]`-modules presented as `F_q`-vector spaces with commuting
//! actions of `t` and of the generators of `G`.

use rand::{Rng, SeedableRng};

use super::fqmat::{self, FqMatrix};
use super::{fitting_monic, RMatrix};
use crate::algebra::{GroupRing, GroupRingElement, GroupRingPoly, Ring};
use crate::error::{Error, Result};

/// A finite `A[G]`-module: `t` and every element of `G` act by `F_q`-matrices
/// on column vectors of length `dim`.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    ring: GroupRing,
    dim: usize,
    t_mat: FqMatrix,
    g_all: Vec<FqMatrix>,
}

impl FiniteModule {
    /// Builds a module from the matrix of `t` and the matrices of the
    /// generators of `G` (in the order of `AbelianGroup::generators`).
    pub fn new(ring: &GroupRing, t_mat: FqMatrix, gen_mats: &[FqMatrix]) -> Result<Self> {
        let f = ring.field();
        let dim = t_mat.len();
        let group = ring.group();
        if gen_mats.len() != group.orders().len() {
            return Err(Error::InvalidInput("generator count differs from the group".into()));
        }
        let mut g_all = Vec::with_capacity(group.size());
        for i in 0..group.size() {
            let mut m = fqmat::identity(dim);
            for (j, &e) in group.exponents(i).iter().enumerate() {
                for _ in 0..e {
                    m = fqmat::mat_mul(f, &m, &gen_mats[j]);
                }
            }
            g_all.push(m);
        }
        for g in &g_all {
            if fqmat::mat_mul(f, g, &t_mat) != fqmat::mat_mul(f, &t_mat, g) {
                return Err(Error::InvalidInput("group action does not commute with t".into()));
            }
        }
        for (j, g) in gen_mats.iter().enumerate() {
            let order = group.orders()[j];
            let mut m = fqmat::identity(dim);
            for _ in 0..order {
                m = fqmat::mat_mul(f, &m, g);
            }
            if m != fqmat::identity(dim) {
                return Err(Error::InvalidInput("generator order mismatch".into()));
            }
        }
        Ok(FiniteModule { ring: ring.clone(), dim, t_mat, g_all })
    }

    pub fn ring(&self) -> &GroupRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn t_matrix_fq(&self) -> &FqMatrix {
        &self.t_mat
    }

    pub fn group_matrix(&self, g: usize) -> &FqMatrix {
        &self.g_all[g]
    }

    /// `x·v` for `x ∈ F_q[G]`.
    pub fn act(&self, x: &GroupRingElement, v: &[u32]) -> Vec<u32> {
        let f = self.ring.field();
        let mut out = vec![0; self.dim];
        for (g, &c) in x.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let w = fqmat::mat_vec(f, &self.g_all[g], v);
            for (o, y) in out.iter_mut().zip(&w) {
                *o = f.add(o, &f.mul(&c, y));
            }
        }
        out
    }

    pub fn apply_t(&self, v: &[u32]) -> Vec<u32> {
        fqmat::mat_vec(self.ring.field(), &self.t_mat, v)
    }

    /// Row-reduced basis of the span of `vecs`.
    fn span(&self, vecs: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        if vecs.is_empty() {
            return vecs;
        }
        let (m, piv) = fqmat::rref(self.ring.field(), &vecs);
        m.into_iter().take(piv.len()).collect()
    }

    /// `F_q`-basis of the smallest `A[G]`-submodule containing `vecs`.
    pub fn submodule_closure(&self, vecs: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut basis = self.span(vecs.to_vec());
        loop {
            let mut all = basis.clone();
            for v in &basis {
                all.push(self.apply_t(v));
                for g in &self.g_all {
                    all.push(fqmat::mat_vec(self.ring.field(), g, v));
                }
            }
            let next = self.span(all);
            if next.len() == basis.len() {
                return basis;
            }
            basis = next;
        }
    }

    /// The quotient by an `A[G]`-stable subspace with the given basis.
    pub fn quotient(&self, sub: &[Vec<u32>]) -> Result<FiniteModule> {
        let f = self.ring.field();
        let sub = self.span(sub.to_vec());
        let mut cols = sub.clone();
        let mut comp = Vec::new();
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            let mut trial = cols.clone();
            trial.push(e.clone());
            if fqmat::rank(f, &trial) == trial.len() {
                cols = trial;
                comp.push(e);
            }
        }
        let k = sub.len();
        let change = fqmat::from_columns(&cols, self.dim);
        let inv = fqmat::inverse(f, &change).ok_or_else(|| Error::InvalidInput("subspace basis is dependent".into()))?;
        let project = |m: &FqMatrix| -> FqMatrix {
            let images: Vec<Vec<u32>> = comp
                .iter()
                .map(|c| {
                    let w = fqmat::mat_vec(f, &inv, &fqmat::mat_vec(f, m, c));
                    w[k..].to_vec()
                })
                .collect();
            fqmat::from_columns(&images, comp.len())
        };
        let gens: Vec<FqMatrix> = self.ring.group().generators().iter().map(|&g| project(&self.g_all[g])).collect();
        FiniteModule::new(&self.ring, project(&self.t_mat), &gens)
    }

    /// Exact freeness test over `F_q[G]`: the rank `d` if the module is free.
    pub fn free_rank(&self) -> Option<usize> {
        let f = self.ring.field();
        let g = self.ring.order();
        if self.dim % g != 0 {
            return None;
        }
        let d = self.dim / g;
        let split = self.ring.sylow();
        let p_order = split.p_part.size();
        let p_gens: Vec<usize> = split.p_part.generators().iter().map(|&i| split.p_embed[i]).collect();
        for idem in self.ring.idempotents() {
            let comp: Vec<Vec<u32>> = (0..self.dim)
                .map(|i| {
                    let mut e = vec![0; self.dim];
                    e[i] = 1;
                    self.act(&idem.element, &e)
                })
                .collect();
            let comp = self.span(comp);
            if comp.len() != d * idem.degree * p_order {
                return None;
            }
            let mut aug = Vec::new();
            for v in &comp {
                for &h in &p_gens {
                    let w = fqmat::mat_vec(f, &self.g_all[h], v);
                    aug.push(w.iter().zip(v).map(|(a, b)| f.sub(a, b)).collect());
                }
            }
            let aug_dim = self.span(aug).len();
            if comp.len() - aug_dim != d * idem.degree {
                return None;
            }
        }
        Some(d)
    }

    /// A free `F_q[G]`-basis, found by seeded random search.
    pub fn free_basis(&self, seed: u64) -> Result<Vec<Vec<u32>>> {
        let d = self.free_rank().ok_or_else(|| Error::NotAdmissible("module is not free over F_q[G]".into()))?;
        let q = self.ring.field().q();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10_000 {
            let cand: Vec<Vec<u32>> = (0..d).map(|_| (0..self.dim).map(|_| rng.gen_range(0..q)).collect()).collect();
            let images = self.orbit_columns(&cand);
            if fqmat::rank(self.ring.field(), &images) == self.dim {
                return Ok(cand);
            }
        }
        Err(Error::SearchExhausted("free basis".into()))
    }

    fn orbit_columns(&self, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let f = self.ring.field();
        basis
            .iter()
            .flat_map(|b| self.g_all.iter().map(move |g| fqmat::mat_vec(f, g, b)))
            .collect()
    }

    /// Matrix over `F_q[G]` of an `F_q[G]`-linear map in a free basis.
    pub fn matrix_in_basis(&self, op: &FqMatrix, basis: &[Vec<u32>]) -> Result<RMatrix> {
        let f = self.ring.field();
        let g = self.ring.order();
        let d = basis.len();
        let cols = fqmat::from_columns(&self.orbit_columns(basis), self.dim);
        let mut out = vec![vec![self.ring.zero(); d]; d];
        for (j, b) in basis.iter().enumerate() {
            let image = fqmat::mat_vec(f, op, b);
            let x = fqmat::solve(f, &cols, &image).ok_or_else(|| Error::SpanMismatch("image outside the span of the basis".into()))?;
            for (i, row) in out.iter_mut().enumerate() {
                row[j] = GroupRingElement(x[i * g..(i + 1) * g].to_vec());
            }
        }
        Ok(out)
    }

    /// `|M|_G` for a module that is free over `F_q[G]`.
    pub fn fitting(&self, seed: u64) -> Result<GroupRingPoly> {
        if self.dim == 0 {
            return Ok(vec![self.ring.one()]);
        }
        let basis = self.free_basis(seed)?;
        let a = self.matrix_in_basis(&self.t_mat, &basis)?;
        Ok(fitting_monic(&self.ring, &a))
    }

    /// Characteristic polynomial of `t` over `F_q`, i.e. the `A`-size.
    pub fn a_size(&self) -> Vec<u32> {
        fqmat::charpoly_hessenberg(self.ring.field(), &self.t_mat)
    }
}

/// The module `F_q[G]^d` with `t` acting by the given matrix over `F_q[G]`.
pub fn module_from_matrix(r: &GroupRing, a_t: &RMatrix) -> Result<FiniteModule> {
    let g = r.order();
    let d = a_t.len();
    let dim = d * g;
    let left_mult = |x: &GroupRingElement, out: &mut FqMatrix, row0: usize, col0: usize| {
        for h in 0..g {
            let y = r.mul(x, &r.basis(h));
            for (k, &c) in y.0.iter().enumerate() {
                out[row0 + k][col0 + h] = c;
            }
        }
    };
    let mut t_mat = vec![vec![0; dim]; dim];
    for i in 0..d {
        for j in 0..d {
            left_mult(&a_t[i][j], &mut t_mat, i * g, j * g);
        }
    }
    let gens: Vec<FqMatrix> = r
        .group()
        .generators()
        .iter()
        .map(|&s| {
            let mut m = vec![vec![0; dim]; dim];
            for i in 0..d {
                left_mult(&r.basis(s), &mut m, i * g, i * g);
            }
            m
        })
        .collect();
    FiniteModule::new(r, t_mat, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AbelianGroup, FqField};

    fn ring(q: u32, m: usize) -> GroupRing {
        GroupRing::new(FqField::of_order(q).unwrap(), AbelianGroup::cyclic(m))
    }

    #[test]
    fn fitting_of_free_module_is_basis_free() {
        let r = ring(3, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let a: RMatrix = (0..2).map(|_| (0..2).map(|_| r.random(&mut rng)).collect()).collect();
            let m = module_from_matrix(&r, &a).unwrap();
            assert_eq!(m.free_rank(), Some(2));
            assert_eq!(m.fitting(9).unwrap(), fitting_monic(&r, &a));
            assert_eq!(m.fitting(10).unwrap(), fitting_monic(&r, &a));
        }
    }

    #[test]
    fn non_free_detected() {
        let r = ring(2, 2);
        let triv = module_from_matrix(&r, &vec![vec![r.zero()]]).unwrap();
        let sigma_minus_one = r.sub(&r.basis(1), &r.one());
        let sub = triv.submodule_closure(&[triv.act(&sigma_minus_one, &[1, 0])]);
        assert_eq!(sub.len(), 1);
        let quo = triv.quotient(&sub).unwrap();
        assert_eq!(quo.dim(), 1);
        assert_eq!(quo.free_rank(), None);
        assert!(quo.fitting(0).is_err());
    }

    #[test]
    fn tame_components_checked() {
        let r = ring(2, 3);
        let m = module_from_matrix(&r, &vec![vec![r.basis(1)]]).unwrap();
        assert_eq!(m.free_rank(), Some(1));
        let idem = &r.idempotents()[0].element;
        let sub: Vec<Vec<u32>> = (0..3)
            .map(|i| {
                let mut e = vec![0; 3];
                e[i] = 1;
                m.act(idem, &e)
            })
            .collect();
        let quo = m.quotient(&m.submodule_closure(&sub)).unwrap();
        assert_eq!(quo.dim(), 2);
        assert_eq!(quo.free_rank(), None);
    }
}
