//! `A[G]`-lattices in `K_∞ = F_q((1/t))[G]·θ` and their indices.
//!
//! Since the base is `F_q(t)`, a free lattice has a single generator `γθ`
//! and the transition matrix between two free lattices is the `1×1` matrix
//! `γ'/γ`; the index is its monic part.

use crate::algebra::laurent::{GroupRingLaurent, Laurent};
use crate::algebra::monic::{divide, monic_part};
use crate::algebra::{FqPoly, GroupRing, GroupRingPoly, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::linalg::finite_module::module_from_matrix;
use crate::linalg::RMatrix;

use super::exp::EXACT;

/// A free `A[G]`-lattice `A[G]·γθ`, with an optional reduced `A`-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeData {
    /// Coordinate of the `A[G]`-generator.
    pub generator: GroupRingLaurent,
    /// An `A`-basis whose leading coefficient vectors are independent.
    pub a_basis: Vec<GroupRingLaurent>,
    /// The smallest `ℓ ≥ 1` such that no nonzero element has degree `≤ −ℓ`.
    pub discreteness_radius: i64,
}

impl LatticeData {
    /// `A[G]·γθ`.
    pub fn free(generator: GroupRingLaurent) -> Self {
        LatticeData {
            generator,
            a_basis: Vec::new(),
            discreteness_radius: 1,
        }
    }

    /// The frame lattice `A[G]θ`.
    pub fn frame(r: &GroupRing) -> Self {
        LatticeData::free(Laurent::one(r, EXACT))
    }

    /// `c·Λ` for a polynomial `c ∈ A[G]` or, with `invert`, `c^{-1}·Λ`.
    pub fn scaled(&self, r: &GroupRing, c: &GroupRingPoly, invert: bool) -> Result<Self> {
        let c = Laurent::from_poly(r, c, EXACT);
        let generator = if invert {
            divide(r, &cap(r, &self.generator), &c)?
        } else {
            self.generator.mul(r, &c)
        };
        Ok(LatticeData::free(generator))
    }
}

/// Precision used for indices between lattices with exact generators.
pub const EXACT_INDEX_PRECISION: i64 = 64;

/// Expands an exact coordinate to [`EXACT_INDEX_PRECISION`] before division.
fn cap(r: &GroupRing, x: &GroupRingLaurent) -> GroupRingLaurent {
    if x.prec >= EXACT / 2 {
        x.truncate(r, EXACT_INDEX_PRECISION + x.v_top.abs())
    } else {
        x.clone()
    }
}

/// `[Λ1 : Λ2]_G` for free lattices: the monic part of `γ2/γ1`.
pub fn lattice_index_free(r: &GroupRing, l1: &LatticeData, l2: &LatticeData) -> Result<GroupRingLaurent> {
    let x = divide(r, &cap(r, &l2.generator), &cap(r, &l1.generator))?;
    monic_part(r, &x)
}

/// A projective lattice `Λ` presented inside a free over-lattice `F` with
/// the size `|F/Λ|_G`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveLattice {
    pub over: LatticeData,
    pub quotient_size: GroupRingPoly,
}

/// `[Λ : Λ']_G = [F : F']_G · |F'/Λ'|_G / |F/Λ|_G`.
pub fn lattice_index_projective(r: &GroupRing, l: &ProjectiveLattice, l2: &ProjectiveLattice) -> Result<GroupRingLaurent> {
    let free = lattice_index_free(r, &l.over, &l2.over)?;
    let num = Laurent::from_poly(r, &l2.quotient_size, EXACT);
    let den = Laurent::from_poly(r, &l.quotient_size, EXACT);
    divide(r, &free.mul(r, &num), &den)
}

/// `|A[G]/(a)|_G` for `a ∈ A[G]` with unit leading coefficient, from the
/// Fitting ideal of the companion presentation.
pub fn quotient_size(r: &GroupRing, a: &GroupRingPoly) -> Result<GroupRingPoly> {
    let pr = PolyRing::new(r.clone());
    let a = pr.normalize(a.clone());
    let Some(lead) = a.last() else {
        return Err(Error::NotAUnit("zero polynomial".into()));
    };
    let monic = pr.scale(&r.invert(lead)?, &a);
    let d = monic.len() - 1;
    if d == 0 {
        return Ok(vec![r.one()]);
    }
    let mut comp: RMatrix = vec![vec![r.zero(); d]; d];
    for i in 1..d {
        comp[i][i - 1] = r.one();
    }
    for (i, row) in comp.iter_mut().enumerate() {
        row[d - 1] = r.neg(&monic[i]);
    }
    module_from_matrix(r, &comp)?.fitting(0)
}

/// `|Λ/aΛ|_G` for the sublattice `a·Λ` of a free lattice, by Fitting ideals.
pub fn sublattice_size(r: &GroupRing, a: &GroupRingPoly) -> Result<GroupRingLaurent> {
    Ok(Laurent::from_poly(r, &quotient_size(r, a)?, EXACT))
}

/// Leading coefficient vector and degree of a nonzero coordinate.
pub fn leading(x: &GroupRingLaurent) -> Option<(i64, Vec<u32>)> {
    x.degree().map(|d| (d, x.coeffs[0].0.clone()))
}

/// Coordinates of `x` in an `A`-basis with independent leading vectors, by
/// leading-term elimination.
pub fn a_coordinates(r: &GroupRing, basis: &[GroupRingLaurent], x: &GroupRingLaurent) -> Result<Vec<FqPoly>> {
    let f = r.field();
    let g = r.order();
    let leads: Vec<(i64, Vec<u32>)> = basis
        .iter()
        .map(|b| leading(b).ok_or_else(|| Error::InvalidInput("zero basis vector".into())))
        .collect::<Result<_>>()?;
    let min_deg = leads.iter().map(|l| l.0).min().unwrap_or(0);
    let mut coords: Vec<FqPoly> = vec![Vec::new(); basis.len()];
    let mut rest = x.clone();
    while let Some((d, lv)) = leading(&rest) {
        if d < min_deg {
            return Err(Error::SpanMismatch(format!("remainder of degree {d} below the basis")));
        }
        let usable: Vec<usize> = (0..basis.len()).filter(|&j| leads[j].0 <= d).collect();
        let cols: Vec<Vec<u32>> = usable.iter().map(|&j| leads[j].1.clone()).collect();
        let m = crate::linalg::fqmat::from_columns(&cols, g);
        let c = crate::linalg::fqmat::solve(f, &m, &lv).ok_or_else(|| Error::SpanMismatch("leading vector outside the span".into()))?;
        for (&j, &cj) in usable.iter().zip(&c) {
            if cj == 0 {
                continue;
            }
            let shift = (d - leads[j].0) as usize;
            if coords[j].len() <= shift {
                coords[j].resize(shift + 1, 0);
            }
            coords[j][shift] = f.add(&coords[j][shift], &cj);
            let term = basis[j].shift(d - leads[j].0).scale(r, &r.scalar(cj));
            rest = rest.sub(r, &term);
        }
        if rest.prec < min_deg {
            return Err(Error::PrecisionLoss("coordinate reduction ran out of precision".into()));
        }
    }
    let pr = PolyRing::new(f.clone());
    Ok(coords.into_iter().map(|c| pr.normalize(c)).collect())
}

/// Determinant of a small square matrix over `A = F_q[t]` (Leibniz).
pub fn poly_det(pr: &PolyRing<crate::algebra::FqField>, m: &[Vec<FqPoly>]) -> FqPoly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc: FqPoly = Vec::new();
    permute(&mut perm, 0, &mut |p: &[usize]| {
        let mut term = pr.one();
        for (i, &j) in p.iter().enumerate() {
            term = pr.mul(&term, &m[i][j]);
        }
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        acc = if inversions % 2 == 0 { pr.add(&acc, &term) } else { pr.sub(&acc, &term) };
    });
    acc
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AbelianGroup, FqField};

    fn r(q: u32, n: usize) -> GroupRing {
        GroupRing::new(FqField::prime(q).unwrap(), AbelianGroup::cyclic(n))
    }

    #[test]
    fn identical_lattices_have_index_one() {
        let r = r(2, 2);
        let g = Laurent::from_top(&r, 1, vec![r.one(), r.basis(1), r.one()], 30);
        let l = LatticeData::free(g);
        assert!(lattice_index_free(&r, &l, &l).unwrap().eq_to(&r, &Laurent::one(&r, 20), 20).unwrap());
    }

    #[test]
    fn trivial_group_index_is_monic_part() {
        let f = FqField::prime(3).unwrap();
        let r = GroupRing::trivial(f);
        let a = LatticeData::frame(&r);
        let g = vec![r.scalar(1), r.scalar(0), r.scalar(2)];
        let sub = a.scaled(&r, &g, false).unwrap();
        let idx = lattice_index_free(&r, &a, &sub).unwrap();
        let expected = Laurent::from_poly(&r, &[r.scalar(2), r.zero(), r.one()], 30);
        assert!(idx.eq_to(&r, &expected, 30).unwrap());
    }

    #[test]
    fn nested_index_equals_quotient_size() {
        let r = r(3, 2);
        let l = LatticeData::frame(&r);
        let a = vec![r.basis(1), r.one(), r.scalar(2)];
        let sub = l.scaled(&r, &a, false).unwrap();
        let idx = lattice_index_free(&r, &l, &sub).unwrap();
        assert!(idx.eq_to(&r, &sublattice_size(&r, &a).unwrap(), 30).unwrap());
    }

    #[test]
    fn projective_index_ignores_the_over_lattice() {
        let r = r(2, 2);
        let a = vec![r.one(), r.basis(1), r.one()];
        let lam = LatticeData::frame(&r).scaled(&r, &a, false).unwrap();
        let lam2 = LatticeData::frame(&r).scaled(&r, &vec![r.basis(1), r.one()], false).unwrap();
        let direct = lattice_index_free(&r, &lam, &lam2).unwrap();
        let p1 = ProjectiveLattice { over: LatticeData::frame(&r), quotient_size: quotient_size(&r, &a).unwrap() };
        let p2 = ProjectiveLattice { over: lam2.clone(), quotient_size: vec![r.one()] };
        let via = lattice_index_projective(&r, &p1, &p2).unwrap();
        assert!(via.eq_to(&r, &direct, 20).unwrap());
    }

    #[test]
    fn coordinates_in_a_reduced_basis() {
        let r = r(3, 2);
        let b1 = Laurent::from_top(&r, 1, vec![r.one(), r.basis(1)], 30);
        let b2 = Laurent::from_top(&r, 0, vec![r.basis(1), r.scalar(2)], 30);
        let x = b1.shift(2).add(&r, &b2.scale(&r, &r.scalar(2))).add(&r, &b2.shift(1));
        let c = a_coordinates(&r, &[b1, b2], &x).unwrap();
        assert_eq!(c, vec![vec![0, 0, 1], vec![2, 1]]);
    }
}
