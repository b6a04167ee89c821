//! Truncated power series `R[Z]/Z^n` as a ring.

use crate::algebra::{Ring, UnitRing};

/// The ring `R[Z]/Z^len`; elements are coefficient vectors of length `len`,
/// lowest power of `Z` first.
#[derive(Clone, Debug)]
pub struct ZSeriesRing<R: Ring> {
    base: R,
    len: usize,
}

impl<R: Ring> ZSeriesRing<R> {
    pub fn new(base: R, len: usize) -> Self {
        ZSeriesRing { base, len }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `c·Z^k`.
    pub fn monomial(&self, c: R::El, k: usize) -> Vec<R::El> {
        let mut v = self.zero();
        if k < self.len {
            v[k] = c;
        }
        v
    }

    /// Embeds a polynomial in `Z`, dropping powers `≥ len`.
    pub fn from_coeffs(&self, c: &[R::El]) -> Vec<R::El> {
        let mut v = self.zero();
        for (x, y) in v.iter_mut().zip(c) {
            *x = y.clone();
        }
        v
    }
}

impl<R: Ring> Ring for ZSeriesRing<R> {
    type El = Vec<R::El>;

    fn zero(&self) -> Self::El {
        vec![self.base.zero(); self.len]
    }

    fn one(&self) -> Self::El {
        let mut v = self.zero();
        if self.len > 0 {
            v[0] = self.base.one();
        }
        v
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let mut c = self.zero();
        self.mul_acc(&mut c, a, b);
        c
    }

    fn add_assign(&self, a: &mut Self::El, b: &Self::El) {
        for (x, y) in a.iter_mut().zip(b) {
            self.base.add_assign(x, y);
        }
    }

    fn mul_acc(&self, acc: &mut Self::El, a: &Self::El, b: &Self::El) {
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().take(self.len - i).enumerate() {
                self.base.mul_acc(&mut acc[i + j], x, y);
            }
        }
    }
}

impl<R: UnitRing> UnitRing for ZSeriesRing<R> {
    fn try_inv(&self, a: &Self::El) -> Option<Self::El> {
        if self.len == 0 {
            return Some(Vec::new());
        }
        let c0 = self.base.try_inv(&a[0])?;
        let mut inv = self.zero();
        inv[0] = c0.clone();
        for k in 1..self.len {
            let mut s = self.base.zero();
            for j in 1..=k {
                self.base.mul_acc(&mut s, &a[j], &inv[k - j]);
            }
            inv[k] = self.base.neg(&self.base.mul(&c0, &s));
        }
        Some(inv)
    }
}
