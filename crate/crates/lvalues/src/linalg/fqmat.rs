//! Dense linear algebra over `F_q`: echelon forms, kernels, solving, and a
//! Hessenberg characteristic polynomial.

use crate::algebra::{FqField, Ring};

/// Row-major matrix over `F_q`.
pub type FqMatrix = Vec<Vec<u32>>;

pub fn identity(n: usize) -> FqMatrix {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

pub fn mat_mul(f: &FqField, a: &FqMatrix, b: &FqMatrix) -> FqMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut c = vec![vec![0; m]; n];
    for i in 0..n {
        for (k, &x) in a[i].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..m {
                c[i][j] = f.add(&c[i][j], &f.mul(&x, &b[k][j]));
            }
        }
    }
    c
}

pub fn mat_vec(f: &FqField, a: &FqMatrix, v: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(f: &FqField, a: &FqMatrix) -> (FqMatrix, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(f: &FqField, a: &FqMatrix) -> usize {
    rref(f, a).1.len()
}

/// Basis of the right kernel `{x : a·x = 0}`.
pub fn kernel(f: &FqField, a: &FqMatrix, cols: usize) -> Vec<Vec<u32>> {
    if a.is_empty() {
        return identity(cols);
    }
    let (m, pivots) = rref(f, a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[i][fc]);
            }
            v
        })
        .collect()
}

/// A solution of `a·x = b`, if one exists.
pub fn solve(f: &FqField, a: &FqMatrix, b: &[u32]) -> Option<Vec<u32>> {
    let cols = a.first().map_or(0, |r| r.len());
    let aug: FqMatrix = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let (m, pivots) = rref(f, &aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = m[i][cols];
    }
    Some(x)
}

pub fn transpose(a: &FqMatrix) -> FqMatrix {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(cols: &[Vec<u32>], rows: usize) -> FqMatrix {
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

pub fn inverse(f: &FqField, a: &FqMatrix) -> Option<FqMatrix> {
    let n = a.len();
    let aug: FqMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let (m, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Characteristic polynomial `det(x·I − a)`, low degree first, by reduction
/// to upper Hessenberg form.
pub fn charpoly_hessenberg(f: &FqField, a: &FqMatrix) -> Vec<u32> {
    let n = a.len();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if p != j + 1 {
            h.swap(p, j + 1);
            for row in h.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]).unwrap();
        for k in j + 2..n {
            if h[k][j] == 0 {
                continue;
            }
            let u = f.mul(&h[k][j], &inv);
            for c in 0..n {
                let t = f.mul(&u, &h[j + 1][c]);
                h[k][c] = f.sub(&h[k][c], &t);
            }
            for row in h.iter_mut() {
                let t = f.mul(&u, &row[k]);
                row[j + 1] = f.add(&row[j + 1], &t);
            }
        }
    }
    let mut polys: Vec<Vec<u32>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u32; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], &c);
            next[i] = f.sub(&next[i], &f.mul(&h[m][m], &c));
        }
        let mut prod = 1u32;
        for i in (0..m).rev() {
            prod = f.mul(&prod, &h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let coef = f.mul(&h[i][m], &prod);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = f.sub(&next[k], &f.mul(&coef, &c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::charpoly;
    use rand::{Rng, SeedableRng};

    #[test]
    fn kernel_and_solve() {
        let f = FqField::prime(3).unwrap();
        let a = vec![vec![1, 2, 0], vec![0, 0, 1]];
        let k = kernel(&f, &a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&f, &a, &k[0]).iter().all(|&x| x == 0));
        let x = solve(&f, &a, &[1, 2]).unwrap();
        assert_eq!(mat_vec(&f, &a, &x), vec![1, 2]);
        assert!(solve(&f, &vec![vec![1, 1], vec![1, 1]], &[0, 1]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let f = FqField::new(2, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a: FqMatrix = (0..4).map(|_| (0..4).map(|_| rng.gen_range(0..4)).collect()).collect();
            if let Some(b) = inverse(&f, &a) {
                assert_eq!(mat_mul(&f, &a, &b), identity(4));
            } else {
                assert!(rank(&f, &a) < 4);
            }
        }
    }

    #[test]
    fn hessenberg_matches_berkowitz() {
        for q in [2u32, 3, 4, 5] {
            let f = FqField::of_order(q).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(q as u64);
            for n in 0..7 {
                for _ in 0..5 {
                    let a: FqMatrix = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
                    let mut b = charpoly(&f, &a);
                    while b.len() > n + 1 {
                        b.pop();
                    }
                    assert_eq!(charpoly_hessenberg(&f, &a), b);
                }
            }
        }
    }
}
