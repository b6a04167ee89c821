//! Finite extensions `F_q[x]/(μ)` of a base field `F_q`, used for splitting
//! fields of characters and for residue fields of primes.

use super::fq::FqField;
use super::poly::{FqPoly, PolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};

/// The field `F_q[x]/(μ)` with `μ` monic irreducible over `F_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField {
    poly: PolyRing<FqField>,
    modulus: FqPoly,
    degree: usize,
}

/// Prime factors of `n` without multiplicity.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ExtField {
    pub fn new(base: FqField, modulus: FqPoly) -> Result<Self> {
        let poly = PolyRing::new(base);
        let modulus = poly.normalize(modulus);
        if poly.lead(&modulus) != 1 || !poly.is_irreducible(&modulus) {
            return Err(Error::InvalidInput("extension modulus must be monic irreducible".into()));
        }
        let degree = modulus.len() - 1;
        Ok(ExtField { poly, modulus, degree })
    }

    /// The extension of degree `m` defined by the first monic irreducible
    /// polynomial in index order.
    pub fn of_degree(base: FqField, m: usize) -> Self {
        let poly = PolyRing::new(base);
        let mut idx = 0u64;
        loop {
            let cand = poly.monic_from_index(m, idx);
            if poly.is_irreducible(&cand) {
                return ExtField {
                    poly,
                    modulus: cand,
                    degree: m,
                };
            }
            idx += 1;
        }
    }

    pub fn base(&self) -> &FqField {
        self.poly.base()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        (self.base().q() as u128).pow(self.degree as u32)
    }

    pub fn embed(&self, c: u32) -> FqPoly {
        self.poly.constant(c)
    }

    /// The class of `x`.
    pub fn generator(&self) -> FqPoly {
        self.poly.rem(&self.poly.var(), &self.modulus)
    }

    pub fn reduce(&self, a: &[u32]) -> FqPoly {
        self.poly.rem(a, &self.modulus)
    }

    /// Returns the base-field value if `a` lies in `F_q`.
    pub fn to_base(&self, a: &[u32]) -> Option<u32> {
        match a.len() {
            0 => Some(0),
            1 => Some(a[0]),
            _ => None,
        }
    }

    pub fn inv(&self, a: &[u32]) -> Option<FqPoly> {
        if a.is_empty() {
            None
        } else {
            self.poly.inv_mod(a, &self.modulus)
        }
    }

    /// `a^{q^k}`.
    pub fn frobenius(&self, a: &[u32], k: usize) -> FqPoly {
        let mut x = a.to_vec();
        let q = self.base().q() as u64;
        for _ in 0..k {
            x = self.pow(&x, q);
        }
        x
    }

    /// Coordinates in the power basis, padded to the degree.
    pub fn coords(&self, a: &[u32]) -> Vec<u32> {
        let mut v = a.to_vec();
        v.resize(self.degree, 0);
        v
    }

    pub fn from_coords(&self, c: &[u32]) -> FqPoly {
        self.poly.normalize(c.to_vec())
    }

    pub fn random<G: rand::Rng>(&self, rng: &mut G) -> FqPoly {
        let q = self.base().q();
        let v: Vec<u32> = (0..self.degree).map(|_| rng.gen_range(0..q)).collect();
        self.poly.normalize(v)
    }

    /// Element of `index` in the enumeration by base-`q` digits.
    pub fn from_index(&self, mut index: u128) -> FqPoly {
        let q = self.base().q() as u128;
        let mut v = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            v.push((index % q) as u32);
            index /= q;
        }
        self.poly.normalize(v)
    }

    /// An element of multiplicative order exactly `e`, where `e` divides
    /// `|F^×|`; the first such element in index order of `g^{(Q-1)/e}`.
    pub fn root_of_unity(&self, e: u128) -> Result<FqPoly> {
        let group_order = self.order() - 1;
        if e == 0 || group_order % e != 0 {
            return Err(Error::InvalidInput(format!("{e} does not divide {group_order}")));
        }
        let primes = prime_factors(e);
        let cof = group_order / e;
        let one = self.one();
        for idx in 1..self.order() {
            let g = self.from_index(idx);
            let z = self.pow_u128(&g, cof);
            if primes.iter().all(|&l| self.pow_u128(&z, e / l) != one) {
                return Ok(z);
            }
        }
        Err(Error::SearchExhausted("root of unity".into()))
    }

    pub fn pow_u128(&self, a: &[u32], mut e: u128) -> FqPoly {
        let mut base = a.to_vec();
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
}

impl Ring for ExtField {
    type El = FqPoly;

    fn zero(&self) -> FqPoly {
        Vec::new()
    }

    fn one(&self) -> FqPoly {
        vec![1]
    }

    fn is_zero(&self, a: &FqPoly) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.poly.add(a, b)
    }

    fn neg(&self, a: &FqPoly) -> FqPoly {
        self.poly.neg(a)
    }

    fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.poly.rem(&self.poly.mul(a, b), &self.modulus)
    }

    fn from_int(&self, n: i64) -> FqPoly {
        self.poly.constant(self.base().from_i64(n))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_over_f3() {
        let f = ExtField::of_degree(FqField::prime(3).unwrap(), 2);
        assert_eq!(f.order(), 9);
        let z = f.root_of_unity(8).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut x = f.one();
        for _ in 0..8 {
            seen.insert(x.clone());
            x = f.mul(&x, &z);
        }
        assert_eq!(seen.len(), 8);
        for idx in 1..9 {
            let a = f.from_index(idx);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            assert_eq!(f.frobenius(&a, 2), a);
        }
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u128>::new());
    }
}
