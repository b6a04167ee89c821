//! Dense univariate polynomials over a ring, stored low degree first.
//!
//! `PolyRing<FqField>` is the ring `A = F_q[t]`; `PolyRing<GroupRing>` houses
//! `A[G] = F_q[t][G]`. Elements are normalized: no trailing zero coefficient.

use super::fq::FqField;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Ring context for `R[t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
}

/// A polynomial over `F_q`, low degree first.
pub type FqPoly = Vec<u32>;

impl<R: Ring + Clone> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Removes trailing zero coefficients.
    pub fn normalize(&self, mut a: Vec<R::El>) -> Vec<R::El> {
        while let Some(last) = a.last() {
            if self.base.is_zero(last) {
                a.pop();
            } else {
                break;
            }
        }
        a
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self, a: &[R::El]) -> Option<usize> {
        a.iter().rposition(|c| !self.base.is_zero(c))
    }

    pub fn constant(&self, c: R::El) -> Vec<R::El> {
        self.normalize(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(&self, c: R::El, k: usize) -> Vec<R::El> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.normalize(v)
    }

    /// The variable `t`.
    pub fn var(&self) -> Vec<R::El> {
        self.monomial(self.base.one(), 1)
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, a: &[R::El], k: usize) -> R::El {
        a.get(k).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, c: &R::El, a: &[R::El]) -> Vec<R::El> {
        self.normalize(a.iter().map(|x| self.base.mul(c, x)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, a: &[R::El], k: usize) -> Vec<R::El> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend_from_slice(a);
        v
    }

    /// Substitution `t ↦ t^m`.
    pub fn inflate(&self, a: &[R::El], m: usize) -> Vec<R::El> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.base.zero(); (a.len() - 1) * m + 1];
        for (i, c) in a.iter().enumerate() {
            v[i * m] = c.clone();
        }
        v
    }

    /// Evaluation at an element of the base ring.
    pub fn eval(&self, a: &[R::El], x: &R::El) -> R::El {
        let mut acc = self.base.zero();
        for c in a.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    /// Division with remainder by a polynomial whose leading coefficient is 1.
    pub fn divrem_monic(&self, a: &[R::El], m: &[R::El]) -> (Vec<R::El>, Vec<R::El>) {
        let dm = self.degree(m).expect("division by zero polynomial");
        assert!(m[dm] == self.base.one(), "divisor must have leading coefficient 1");
        let mut r = self.normalize(a.to_vec());
        if r.len() <= dm {
            return (Vec::new(), r);
        }
        let mut quo = vec![self.base.zero(); r.len() - dm];
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let lead = r.last().unwrap().clone();
            for i in 0..=dm {
                let t = self.base.mul(&lead, &m[i]);
                r[k + i] = self.base.sub(&r[k + i], &t);
            }
            quo[k] = lead;
            r.pop();
            r = self.normalize(r);
        }
        (self.normalize(quo), r)
    }

    /// Remainder modulo a polynomial with leading coefficient 1.
    pub fn rem_monic(&self, a: &[R::El], m: &[R::El]) -> Vec<R::El> {
        self.divrem_monic(a, m).1
    }
}

impl<R: Ring + Clone> Ring for PolyRing<R> {
    type El = Vec<R::El>;

    fn zero(&self) -> Self::El {
        Vec::new()
    }

    fn one(&self) -> Self::El {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::El) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let n = a.len().max(b.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let x = match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            };
            v.push(x);
        }
        self.normalize(v)
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        a.iter().map(|c| self.base.neg(c)).collect()
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                self.base.mul_acc(&mut v[i + j], x, y);
            }
        }
        self.normalize(v)
    }
}

/// Operations specific to `A = F_q[t]`.
impl PolyRing<FqField> {
    /// Leading coefficient, zero for the zero polynomial.
    pub fn lead(&self, a: &[u32]) -> u32 {
        a.last().copied().unwrap_or(0)
    }

    /// Scales to a monic polynomial.
    pub fn make_monic(&self, a: &[u32]) -> FqPoly {
        let l = self.lead(a);
        match self.base.inv(l) {
            Some(li) => self.scale(&li, a),
            None => Vec::new(),
        }
    }

    pub fn divrem(&self, a: &[u32], b: &[u32]) -> (FqPoly, FqPoly) {
        let f = &self.base;
        let db = self.degree(b).expect("division by zero polynomial");
        let lb_inv = f.inv(b[db]).unwrap();
        let mut r = self.normalize(a.to_vec());
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut quo = vec![0; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = f.mul(r.last().unwrap(), &lb_inv);
            if c != 0 {
                for i in 0..=db {
                    let t = f.mul(&c, &b[i]);
                    r[k + i] = f.sub(&r[k + i], &t);
                }
            }
            quo[k] = c;
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (self.normalize(quo), r)
    }

    pub fn rem(&self, a: &[u32], b: &[u32]) -> FqPoly {
        self.divrem(a, b).1
    }

    /// Exact quotient; errors if `b` does not divide `a`.
    pub fn div_exact(&self, a: &[u32], b: &[u32]) -> Result<FqPoly> {
        let (q, r) = self.divrem(a, b);
        if r.is_empty() {
            Ok(q)
        } else {
            Err(Error::InvalidInput("inexact polynomial division".into()))
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &[u32], b: &[u32]) -> FqPoly {
        let mut x = self.normalize(a.to_vec());
        let mut y = self.normalize(b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.make_monic(&x)
    }

    /// Returns `(g, u, v)` with `g = gcd(a, b) = u·a + v·b`, `g` monic.
    pub fn ext_gcd(&self, a: &[u32], b: &[u32]) -> (FqPoly, FqPoly, FqPoly) {
        let mut r0 = self.normalize(a.to_vec());
        let mut r1 = self.normalize(b.to_vec());
        let (mut s0, mut s1) = (self.one(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), self.one());
        while !r1.is_empty() {
            let (qq, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&qq, &s1));
            let t2 = self.sub(&t0, &self.mul(&qq, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_empty() {
            return (r0, s0, t0);
        }
        let li = self.base.inv(self.lead(&r0)).unwrap();
        (self.scale(&li, &r0), self.scale(&li, &s0), self.scale(&li, &t0))
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inv_mod(&self, a: &[u32], m: &[u32]) -> Option<FqPoly> {
        let (g, u, _) = self.ext_gcd(a, m);
        if g == self.one() {
            Some(self.rem(&u, m))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, a: &[u32], b: &[u32], m: &[u32]) -> FqPoly {
        self.rem(&self.mul(&a.to_vec(), &b.to_vec()), m)
    }

    pub fn pow_mod(&self, a: &[u32], mut e: u128, m: &[u32]) -> FqPoly {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }

    /// Ben-Or irreducibility test.
    pub fn is_irreducible(&self, f: &[u32]) -> bool {
        let d = match self.degree(f) {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        let x = self.var();
        let q = self.base.q() as u128;
        let mut xp = self.rem(&x, f);
        for _ in 1..=d / 2 {
            xp = self.pow_mod(&xp, q, f);
            let diff = self.sub(&xp, &x);
            if self.gcd(f, &diff) != self.one() {
                return false;
            }
        }
        true
    }

    /// Monic polynomial of degree `d` whose lower coefficients are the
    /// base-`q` digits of `index` (coefficient of `t^0` least significant).
    pub fn monic_from_index(&self, d: usize, mut index: u64) -> FqPoly {
        let q = self.base.q() as u64;
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push((index % q) as u32);
            index /= q;
        }
        v.push(1);
        v
    }

    /// Canonical text: field elements separated by spaces, low degree first;
    /// the zero polynomial is `0`.
    pub fn format(&self, a: &[u32]) -> String {
        if a.is_empty() {
            return self.base.format(0);
        }
        a.iter().map(|&c| self.base.format(c)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse(&self, text: &str) -> Result<FqPoly> {
        let mut v = Vec::new();
        for tok in text.split_whitespace() {
            v.push(self.base.parse(tok)?);
        }
        Ok(self.normalize(v))
    }

    /// Human-readable rendering such as `t^2 + t + 1`.
    pub fn pretty(&self, a: &[u32]) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for k in (0..a.len()).rev() {
            let c = a[k];
            if c == 0 {
                continue;
            }
            let cs = if self.base.s() == 1 { c.to_string() } else { format!("({})", self.base.format(c)) };
            let term = match (k, c) {
                (0, _) => cs,
                (1, 1) => "t".into(),
                (1, _) => format!("{cs}t"),
                (_, 1) => format!("t^{k}"),
                _ => format!("{cs}t^{k}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}
