//! The commutative ring abstraction used by generic linear algebra.

use std::fmt::Debug;

/// A commutative ring with identity, given as a context object that owns the
/// structure constants; elements are plain values.
pub trait Ring {
    type El: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::El, b: &Self::El) {
        *a = self.add(a, b);
    }

    /// `acc += a * b`.
    fn mul_acc(&self, acc: &mut Self::El, a: &Self::El, b: &Self::El) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Sum of `n` copies of the identity.
    fn from_int(&self, n: i64) -> Self::El {
        let one = self.one();
        let mut acc = self.zero();
        for _ in 0..n.unsigned_abs() {
            self.add_assign(&mut acc, &one);
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

/// A ring in which units can be recognized and inverted.
pub trait UnitRing: Ring {
    fn try_inv(&self, a: &Self::El) -> Option<Self::El>;
}

impl UnitRing for super::fq::FqField {
    fn try_inv(&self, a: &u32) -> Option<u32> {
        self.inv(*a)
    }
}

impl UnitRing for super::extfield::ExtField {
    fn try_inv(&self, a: &Self::El) -> Option<Self::El> {
        self.inv(a)
    }
}

impl UnitRing for super::groupring::GroupRing {
    fn try_inv(&self, a: &Self::El) -> Option<Self::El> {
        self.invert(a).ok()
    }
}
