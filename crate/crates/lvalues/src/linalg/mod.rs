//! Matrices over commutative rings, division-free determinants, monic
//! Fitting generators `|M|_G` and finite `F_q[G]`-modules.

pub mod finite_module;
pub mod fqmat;

use crate::algebra::laurent::GroupRingLaurent;
use crate::algebra::{monic_test, GroupRing, GroupRingPoly, Laurent, PolyRing, Ring, UnitRing};
use crate::error::{Error, Result};

pub use finite_module::FiniteModule;

/// Square matrix over `F_q[G]`.
pub type RMatrix = Vec<Vec<crate::algebra::GroupRingElement>>;

/// Generic square matrix.
pub type Matrix<E> = Vec<Vec<E>>;

pub fn mat_identity<R: Ring>(r: &R, n: usize) -> Matrix<R::El> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect())
        .collect()
}

pub fn mat_zero<R: Ring>(r: &R, rows: usize, cols: usize) -> Matrix<R::El> {
    vec![vec![r.zero(); cols]; rows]
}

pub fn mat_mul<R: Ring>(r: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    let n = a.len();
    let m = b.first().map_or(0, |row| row.len());
    let mut c = mat_zero(r, n, m);
    for i in 0..n {
        for (k, x) in a[i].iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for j in 0..m {
                r.mul_acc(&mut c[i][j], x, &b[k][j]);
            }
        }
    }
    c
}

pub fn mat_add<R: Ring>(r: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.add(u, v)).collect())
        .collect()
}

pub fn mat_sub<R: Ring>(r: &R, a: &Matrix<R::El>, b: &Matrix<R::El>) -> Matrix<R::El> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.sub(u, v)).collect())
        .collect()
}

pub fn mat_scale<R: Ring>(r: &R, c: &R::El, a: &Matrix<R::El>) -> Matrix<R::El> {
    a.iter().map(|row| row.iter().map(|x| r.mul(c, x)).collect()).collect()
}

pub fn mat_pow<R: Ring>(r: &R, a: &Matrix<R::El>, e: usize) -> Matrix<R::El> {
    let mut acc = mat_identity(r, a.len());
    for _ in 0..e {
        acc = mat_mul(r, &acc, a);
    }
    acc
}

/// Characteristic polynomial `det(x·I − a)` by Berkowitz's division-free
/// algorithm; coefficients low degree first, length `n + 1`.
pub fn charpoly<R: Ring>(r: &R, a: &Matrix<R::El>) -> Vec<R::El> {
    let n = a.len();
    if n == 0 {
        return vec![r.one()];
    }
    let mut c: Vec<R::El> = vec![r.one(), r.neg(&a[0][0])];
    for k in 1..n {
        let mut col = vec![r.one(), r.neg(&a[k][k])];
        let mut v: Vec<R::El> = (0..k).map(|i| a[i][k].clone()).collect();
        for _ in 0..k {
            let mut dot = r.zero();
            for (j, x) in v.iter().enumerate() {
                r.mul_acc(&mut dot, &a[k][j], x);
            }
            col.push(r.neg(&dot));
            let mut w = vec![r.zero(); k];
            for (i, wi) in w.iter_mut().enumerate() {
                for (j, x) in v.iter().enumerate() {
                    r.mul_acc(wi, &a[i][j], x);
                }
            }
            v = w;
        }
        let mut next = vec![r.zero(); k + 2];
        for (i, ni) in next.iter_mut().enumerate() {
            for j in 0..=i.min(k) {
                r.mul_acc(ni, &col[i - j], &c[j]);
            }
        }
        c = next;
    }
    c.reverse();
    c
}

/// Determinant over any commutative ring, without divisions.
pub fn det_division_free<R: Ring>(r: &R, a: &Matrix<R::El>) -> R::El {
    let cp = charpoly(r, a);
    if a.len() % 2 == 0 {
        cp[0].clone()
    } else {
        r.neg(&cp[0])
    }
}

/// Determinant by elimination with unit pivots, falling back to the
/// division-free route on the remaining block when a column has no unit.
pub fn det_unit_pivot<R: UnitRing>(r: &R, a: &Matrix<R::El>) -> R::El {
    let n = a.len();
    let mut m = a.clone();
    let mut det = r.one();
    for col in 0..n {
        let found = (col..n).find_map(|row| r.try_inv(&m[row][col]).map(|inv| (row, inv)));
        let Some((piv, inv)) = found else {
            let rest: Matrix<R::El> = m[col..].iter().map(|row| row[col..].to_vec()).collect();
            return r.mul(&det, &det_division_free(r, &rest));
        };
        if piv != col {
            m.swap(piv, col);
            det = r.neg(&det);
        }
        det = r.mul(&det, &m[col][col]);
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if r.is_zero(&row[col]) {
                continue;
            }
            let factor = r.neg(&r.mul(&row[col], &inv));
            for k in col..n {
                r.mul_acc(&mut row[k], &factor, &pivot_row[k]);
            }
        }
    }
    det
}

/// Leibniz expansion of the determinant; a test oracle for small `n`.
pub fn det_leibniz<R: Ring>(r: &R, a: &Matrix<R::El>) -> R::El {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = r.zero();
    fn heap<R: Ring>(r: &R, a: &Matrix<R::El>, k: usize, perm: &mut Vec<usize>, total: &mut R::El) {
        if k <= 1 {
            let n = perm.len();
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let mut term = r.one();
            for (i, &p) in perm.iter().enumerate() {
                term = r.mul(&term, &a[i][p]);
            }
            if inversions % 2 == 1 {
                term = r.neg(&term);
            }
            r.add_assign(total, &term);
            return;
        }
        for i in 0..k {
            heap(r, a, k - 1, perm, total);
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    if n == 0 {
        return r.one();
    }
    heap(r, a, n, &mut perm, &mut total);
    total
}

/// `|M|_G = det(t·I − A_t)` for the matrix of `t` on an `F_q[G]`-free module.
pub fn fitting_monic(r: &GroupRing, a_t: &RMatrix) -> GroupRingPoly {
    if r.order() == 1 {
        let f = r.field();
        let m: Vec<Vec<u32>> = a_t.iter().map(|row| row.iter().map(|x| x.0[0]).collect()).collect();
        return fqmat::charpoly_hessenberg(f, &m)
            .into_iter()
            .map(|c| r.scalar(c))
            .collect();
    }
    charpoly(r, a_t)
}

/// Expansion of `numer/denom` for monic sizes of equal degree.
pub fn size_ratio_series(r: &GroupRing, numer: &GroupRingPoly, denom: &GroupRingPoly, n: i64) -> Result<GroupRingLaurent> {
    let pr = PolyRing::new(r.clone());
    let dn = pr.degree(numer).unwrap_or(0);
    let dd = pr.degree(denom).unwrap_or(0);
    if dn != dd {
        return Err(Error::DegreeMismatch(dn, dd));
    }
    let d = dd as i64;
    let num = Laurent::from_poly(r, numer, n + d);
    let den = Laurent::from_poly(r, denom, n + d);
    let inv = den.inverse(r)?;
    Ok(num.mul(r, &inv).truncate(r, n))
}

/// Checks `|M|_G = t^n·det(1 − t·T^{-1} | M)|_{T=t}` to precision `n_prec`,
/// computing the right side as a nuclear determinant in `R[Z]/Z^{n+1}`.
pub fn nuclear_fitting_identity_check(r: &GroupRing, a_t: &RMatrix, n_prec: i64) -> Result<bool> {
    use crate::nuclear::series::ZSeriesRing;
    let n = a_t.len();
    let zr = ZSeriesRing::new(r.clone(), n + 1);
    let m: Matrix<Vec<crate::algebra::GroupRingElement>> = a_t
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let mut s = zr.zero();
                    if i == j {
                        s[0] = r.one();
                    }
                    s[1] = r.sub(&s[1], x);
                    s
                })
                .collect()
        })
        .collect();
    let det = det_division_free(&zr, &m);
    let coeffs: Vec<_> = det.iter().take(n + 1).cloned().collect();
    let rhs = Laurent::from_top(r, n as i64, coeffs, n_prec);
    let lhs = Laurent::from_poly(r, &fitting_monic(r, a_t), n_prec);
    if !monic_test(r, &lhs)? {
        return Ok(false);
    }
    lhs.eq_to(r, &rhs, n_prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AbelianGroup, FqField, GroupRingElement};
    use rand::SeedableRng;

    fn r(q: u32, m: usize) -> GroupRing {
        GroupRing::new(FqField::of_order(q).unwrap(), AbelianGroup::cyclic(m))
    }

    fn random_matrix(r: &GroupRing, n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> RMatrix {
        (0..n).map(|_| (0..n).map(|_| r.random(rng)).collect()).collect()
    }

    #[test]
    fn determinant_examples() {
        let rg = r(2, 2);
        let pr = PolyRing::new(rg.clone());
        let id = mat_identity(&pr, 3);
        assert_eq!(det_division_free(&pr, &id), pr.one());
        let t = pr.var();
        let t1 = pr.add(&t, &pr.one());
        let diag = vec![vec![t.clone(), pr.zero()], vec![pr.zero(), t1.clone()]];
        assert_eq!(det_division_free(&pr, &diag), pr.mul(&t, &t1));
    }

    #[test]
    fn berkowitz_matches_leibniz() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (q, m) in [(2, 2), (3, 3), (2, 3), (3, 2)] {
            let rg = r(q, m);
            for n in 0..=4 {
                for _ in 0..4 {
                    let a = random_matrix(&rg, n, &mut rng);
                    assert_eq!(det_division_free(&rg, &a), det_leibniz(&rg, &a));
                    assert_eq!(det_unit_pivot(&rg, &a), det_leibniz(&rg, &a));
                }
            }
        }
    }

    #[test]
    fn fitting_examples() {
        let f = FqField::prime(3).unwrap();
        let rt = GroupRing::trivial(f);
        let a = vec![vec![rt.scalar(2)]];
        assert_eq!(fitting_monic(&rt, &a), vec![rt.scalar(1), rt.scalar(1)]);
        let comp = vec![
            vec![rt.scalar(0), rt.scalar(0), rt.scalar(2)],
            vec![rt.scalar(1), rt.scalar(0), rt.scalar(1)],
            vec![rt.scalar(0), rt.scalar(1), rt.scalar(0)],
        ];
        let expect: Vec<GroupRingElement> = [1, 2, 0, 1].iter().map(|&c| rt.scalar(c)).collect();
        assert_eq!(fitting_monic(&rt, &comp), expect);
        let rg = r(2, 2);
        let a = vec![vec![rg.basis(1)]];
        assert_eq!(fitting_monic(&rg, &a), vec![rg.basis(1), rg.one()]);
    }

    #[test]
    fn ratio_examples() {
        let f = FqField::prime(2).unwrap();
        let rt = GroupRing::trivial(f);
        let s = |v: &[u32]| -> GroupRingPoly { v.iter().map(|&c| rt.scalar(c)).collect() };
        let one = size_ratio_series(&rt, &s(&[1, 1]), &s(&[1, 1]), 10).unwrap();
        assert!(one.eq_to(&rt, &Laurent::one(&rt, 10), 10).unwrap());
        let g = size_ratio_series(&rt, &s(&[0, 1]), &s(&[1, 1]), 10).unwrap();
        for e in 0..=10 {
            assert_eq!(g.coeff(&rt, -e), Some(rt.one()));
        }
        let h = size_ratio_series(&rt, &s(&[0, 1, 1]), &s(&[1, 0, 1]), 16).unwrap();
        let back = h.mul(&rt, &Laurent::from_poly(&rt, &s(&[1, 0, 1]), 30));
        assert!(back.eq_to(&rt, &Laurent::from_poly(&rt, &s(&[0, 1, 1]), 30), 14).unwrap());
        assert!(matches!(
            size_ratio_series(&rt, &s(&[0, 1]), &s(&[1, 0, 1]), 4),
            Err(Error::DegreeMismatch(1, 2))
        ));
    }

    #[test]
    fn nuclear_fitting_identity() {
        let f = FqField::prime(2).unwrap();
        let rt = GroupRing::trivial(f);
        assert!(nuclear_fitting_identity_check(&rt, &vec![vec![rt.zero()]], 8).unwrap());
        let comp = vec![vec![rt.zero(), rt.one()], vec![rt.one(), rt.one()]];
        assert!(nuclear_fitting_identity_check(&rt, &comp, 8).unwrap());
        let rg = r(3, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = random_matrix(&rg, 3, &mut rng);
            assert!(nuclear_fitting_identity_check(&rg, &a, 10).unwrap());
        }
    }
}
