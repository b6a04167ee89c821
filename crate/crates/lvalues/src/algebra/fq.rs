//! The finite field `F_q`, `q = p^s`, with elements encoded as integers.
//!
//! An element `c_0 + c_1 x + … + c_{s-1} x^{s-1}` of `F_p[x]/(modulus)` is
//! encoded as `Σ c_i p^i`. Addition and multiplication go through full
//! tables, so `q` is limited to 256.

use std::fmt;
use std::sync::Arc;

use super::ring::Ring;
use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_Q: u32 = 256;

struct FqData {
    p: u32,
    s: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The field `F_q` as a ring context.
#[derive(Clone)]
pub struct FqField {
    data: Arc<FqData>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.data.p == other.data.p && self.data.modulus == other.data.modulus
    }
}

impl Eq for FqField {}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(modulus {:?})", self.data.q, self.data.modulus)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic `m`, coefficients mod `p`, low to high.
fn prime_poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * mi) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn prime_poly_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            let r = prime_poly_rem(p, m, &g);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree `s`
/// over `F_p`, ordering candidates by the integer `Σ_{i<s} c_i p^i`.
pub fn default_modulus(p: u32, s: u32) -> Vec<u32> {
    let count = p.pow(s);
    for low in 0..count {
        let mut m = Vec::with_capacity(s as usize + 1);
        let mut x = low;
        for _ in 0..s {
            m.push(x % p);
            x /= p;
        }
        m.push(1);
        if s == 1 || (m[0] != 0 && prime_poly_irreducible(p, &m)) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FqField {
    /// `F_{p^s}` with the default modulus.
    pub fn new(p: u32, s: u32) -> Result<Self> {
        if !is_prime(p) || s == 0 {
            return Err(Error::InvalidInput(format!("p = {p}, s = {s}")));
        }
        let q = (p as u64).pow(s);
        if q > MAX_Q as u64 {
            return Err(Error::InvalidInput(format!("q = {q} exceeds {MAX_Q}")));
        }
        Self::with_modulus(p, s, default_modulus(p, s))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_q` for a prime power `q`.
    pub fn of_order(q: u32) -> Result<Self> {
        for p in 2..=q {
            if q % p == 0 {
                let mut s = 0;
                let mut x = q;
                while x % p == 0 {
                    x /= p;
                    s += 1;
                }
                if x != 1 {
                    return Err(Error::InvalidInput(format!("{q} is not a prime power")));
                }
                return Self::new(p, s);
            }
        }
        Err(Error::InvalidInput(format!("{q} is not a prime power")))
    }

    /// `F_{p^s}` as `F_p[x]/(modulus)`; the modulus is given low to high and
    /// must be monic irreducible of degree `s`.
    pub fn with_modulus(p: u32, s: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) || s == 0 || modulus.len() != s as usize + 1 {
            return Err(Error::InvalidInput("bad field parameters".into()));
        }
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput("modulus must be monic over F_p".into()));
        }
        if !prime_poly_irreducible(p, &modulus) {
            return Err(Error::InvalidInput("modulus is reducible".into()));
        }
        let q64 = (p as u64).pow(s);
        if q64 > MAX_Q as u64 {
            return Err(Error::InvalidInput(format!("q = {q64} exceeds {MAX_Q}")));
        }
        let q = q64 as u32;
        let su = s as usize;
        let digits = |mut a: u32| -> Vec<u32> {
            let mut d = vec![0; su];
            for c in d.iter_mut() {
                *c = a % p;
                a /= p;
            }
            d
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qu = q as usize;
        let mut add = vec![0; qu * qu];
        let mut mul = vec![0; qu * qu];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum);
                let mut prod = vec![0; 2 * su - 1];
                for i in 0..su {
                    for j in 0..su {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                let r = prime_poly_rem(p, &prod, &modulus);
                let mut r = r;
                r.resize(su, 0);
                mul[(a * q + b) as usize] = undigits(&r);
            }
        }
        let mut neg = vec![0; qu];
        let mut inv = vec![0; qu];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        Ok(FqField {
            data: Arc::new(FqData {
                p,
                s,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn s(&self) -> u32 {
        self.data.s
    }

    pub fn q(&self) -> u32 {
        self.data.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.data.inv[a as usize])
        }
    }

    /// Image of an integer under `Z → F_p ⊆ F_q`.
    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.data.p as i64) as u32
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.data.q
    }

    /// Coefficients in the modulus basis.
    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.data.s as usize];
        for c in d.iter_mut() {
            *c = a % self.data.p;
            a /= self.data.p;
        }
        d
    }

    /// Canonical text: comma-separated coefficients in the modulus basis.
    pub fn format(&self, a: u32) -> String {
        self.digits(a).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Inverse of [`FqField::format`].
    pub fn parse(&self, text: &str) -> Result<u32> {
        let parts: Vec<&str> = text.trim().split(',').collect();
        if parts.len() != self.data.s as usize {
            return Err(Error::InvalidInput(format!("field element '{text}'")));
        }
        let mut acc = 0u32;
        for part in parts.iter().rev() {
            let c: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("field element '{text}'")))?;
            if c >= self.data.p {
                return Err(Error::InvalidInput(format!("field element '{text}'")));
            }
            acc = acc * self.data.p + c;
        }
        Ok(acc)
    }
}

impl Ring for FqField {
    type El = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.data.add[(*a * self.data.q + *b) as usize]
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        self.data.neg[*a as usize]
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.data.mul[(*a * self.data.q + *b) as usize]
    }

    #[inline]
    fn add_assign(&self, a: &mut u32, b: &u32) {
        *a = self.add(a, b);
    }

    #[inline]
    fn mul_acc(&self, acc: &mut u32, a: &u32, b: &u32) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn from_int(&self, n: i64) -> u32 {
        self.from_i64(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn field_axioms_hold() {
        for &(p, s) in &[(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = FqField::new(p, s).unwrap();
            let q = f.q();
            for a in f.elements() {
                assert_eq!(f.pow(&a, q as u64), a);
                if a != 0 {
                    assert_eq!(f.mul(&a, &f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(&a, &b), f.add(&b, &a));
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    for c in f.elements() {
                        let lhs = f.mul(&a, &f.add(&b, &c));
                        let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = FqField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(a)).unwrap(), a);
        }
        assert_eq!(f.format(5), "2,1");
        assert!(f.parse("3,0").is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FqField::new(4, 1).is_err());
        assert!(FqField::with_modulus(2, 2, vec![1, 0, 1]).is_err());
        assert!(FqField::of_order(6).is_err());
        assert_eq!(FqField::of_order(9).unwrap().q(), 9);
    }
}
