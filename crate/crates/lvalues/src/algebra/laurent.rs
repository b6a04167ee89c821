//! Truncated Laurent series in `1/t` over a ring.
//!
//! A value carries its own precision `N`: coefficients of `t^e` are exact for
//! `e ≥ -N` and unknown below. Binary operations propagate the precision
//! that is actually justified by the inputs, accounting for top exponents.

use super::groupring::{GroupRing, GroupRingElement};
use super::ring::{Ring, UnitRing};
use crate::error::{Error, Result};

/// `Σ_{k} coeffs[k]·t^{v_top-k}` known for exponents `≥ -prec`.
///
/// Normalized: `coeffs[0]` is nonzero, or `coeffs` is empty and then
/// `v_top = -prec - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<E> {
    pub v_top: i64,
    pub prec: i64,
    pub coeffs: Vec<E>,
}

/// Laurent series over `F_q[G]`.
pub type GroupRingLaurent = Laurent<GroupRingElement>;

impl<E: Clone + PartialEq + std::fmt::Debug> Laurent<E> {
    /// The zero series known to precision `prec`.
    pub fn zero(prec: i64) -> Self {
        Laurent {
            v_top: -prec - 1,
            prec,
            coeffs: Vec::new(),
        }
    }

    /// Builds from coefficients of `t^{top}, t^{top-1}, …`, dropping those
    /// below the precision.
    pub fn from_top<R: Ring<El = E>>(r: &R, top: i64, mut coeffs: Vec<E>, prec: i64) -> Self {
        let keep = (top + prec + 1).max(0) as usize;
        coeffs.truncate(keep);
        Laurent { v_top: top, prec, coeffs }.normalized(r)
    }

    /// Exact polynomial `Σ a_k t^k` (low degree first) viewed at precision `prec`.
    pub fn from_poly<R: Ring<El = E>>(r: &R, a: &[E], prec: i64) -> Self {
        if a.is_empty() {
            return Self::zero(prec);
        }
        let top = a.len() as i64 - 1;
        let coeffs: Vec<E> = a.iter().rev().cloned().collect();
        Self::from_top(r, top, coeffs, prec)
    }

    pub fn monomial<R: Ring<El = E>>(r: &R, c: E, k: i64, prec: i64) -> Self {
        Self::from_top(r, k, vec![c], prec)
    }

    pub fn one<R: Ring<El = E>>(r: &R, prec: i64) -> Self {
        Self::monomial(r, r.one(), 0, prec)
    }

    fn normalized<R: Ring<El = E>>(mut self, r: &R) -> Self {
        let lead = self.coeffs.iter().position(|c| !r.is_zero(c));
        match lead {
            None => Self::zero(self.prec),
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.v_top -= k as i64;
                }
                self
            }
        }
    }

    /// Whether no nonzero coefficient is known.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the leading known nonzero term.
    pub fn degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.v_top)
        }
    }

    /// Coefficient of `t^e`; `None` when `e` is below the precision.
    pub fn coeff<R: Ring<El = E>>(&self, r: &R, e: i64) -> Option<E> {
        if e < -self.prec {
            return None;
        }
        if e > self.v_top {
            return Some(r.zero());
        }
        let k = (self.v_top - e) as usize;
        Some(self.coeffs.get(k).cloned().unwrap_or_else(|| r.zero()))
    }

    /// Lowers the precision to `prec` (no-op if already lower).
    pub fn truncate<R: Ring<El = E>>(&self, r: &R, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::from_top(r, self.v_top, self.coeffs.clone(), prec)
    }

    pub fn add<R: Ring<El = E>>(&self, r: &R, b: &Self) -> Self {
        let prec = self.prec.min(b.prec);
        let top = self.v_top.max(b.v_top);
        if top < -prec {
            return Self::zero(prec);
        }
        let stored = |x: &Self| if x.is_zero() { 0 } else { x.coeffs.len() as i64 + top - x.v_top };
        let len = (top + prec + 1).min(stored(self).max(stored(b))) as usize;
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            let e = top - k as i64;
            let x = self.coeff(r, e).unwrap();
            let y = b.coeff(r, e).unwrap();
            coeffs.push(r.add(&x, &y));
        }
        Laurent { v_top: top, prec, coeffs }.normalized(r)
    }

    pub fn neg<R: Ring<El = E>>(&self, r: &R) -> Self {
        Laurent {
            v_top: self.v_top,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| r.neg(c)).collect(),
        }
    }

    pub fn sub<R: Ring<El = E>>(&self, r: &R, b: &Self) -> Self {
        self.add(r, &b.neg(r))
    }

    pub fn mul<R: Ring<El = E>>(&self, r: &R, b: &Self) -> Self {
        let prec = (b.prec - self.v_top).min(self.prec - b.v_top);
        if self.is_zero() || b.is_zero() {
            return Self::zero(prec);
        }
        let top = self.v_top + b.v_top;
        if top < -prec {
            return Self::zero(prec);
        }
        let len = (top + prec + 1).min((self.coeffs.len() + b.coeffs.len()) as i64 - 1) as usize;
        let mut coeffs = vec![r.zero(); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                r.mul_acc(&mut coeffs[i + j], x, y);
            }
        }
        Laurent { v_top: top, prec, coeffs }.normalized(r)
    }

    /// Multiplication by a ring element.
    pub fn scale<R: Ring<El = E>>(&self, r: &R, c: &E) -> Self {
        Laurent {
            v_top: self.v_top,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|x| r.mul(c, x)).collect(),
        }
        .normalized(r)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            v_top: self.v_top + k,
            prec: self.prec - k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitution `t ↦ t^m` for `m ≥ 1`.
    pub fn inflate<R: Ring<El = E>>(&self, r: &R, m: i64) -> Self {
        let prec = (self.prec + 1) * m - 1;
        if self.is_zero() {
            return Self::zero(prec);
        }
        let top = self.v_top * m;
        let len = (top + prec + 1).min((self.coeffs.len() as i64 - 1) * m + 1) as usize;
        let mut coeffs = vec![r.zero(); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = k * m as usize;
            if idx < len {
                coeffs[idx] = c.clone();
            }
        }
        Laurent { v_top: top, prec, coeffs }.normalized(r)
    }

    /// Inverse of a series whose leading coefficient is a unit.
    pub fn inverse<R: UnitRing<El = E>>(&self, r: &R) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit("zero series".into()));
        }
        let c0_inv = r
            .try_inv(&self.coeffs[0])
            .ok_or_else(|| Error::NotAUnit("leading coefficient is not a unit".into()))?;
        let rel = (self.v_top + self.prec) as usize;
        let mut d: Vec<E> = Vec::with_capacity(rel + 1);
        d.push(c0_inv.clone());
        for k in 1..=rel {
            let mut acc = r.zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                r.mul_acc(&mut acc, &self.coeffs[j], &d[k - j]);
            }
            d.push(r.neg(&r.mul(&c0_inv, &acc)));
        }
        let top = -self.v_top;
        let prec = self.prec + 2 * self.v_top;
        Ok(Self::from_top(r, top, d, prec))
    }

    /// `self / b` for `b` with unit leading coefficient.
    pub fn div<R: UnitRing<El = E>>(&self, r: &R, b: &Self) -> Result<Self> {
        Ok(self.mul(r, &b.inverse(r)?))
    }

    /// Coefficients of `t^0, t^1, …` (the polynomial part), low degree first.
    pub fn poly_part<R: Ring<El = E>>(&self, r: &R) -> Vec<E> {
        if self.v_top < 0 {
            return Vec::new();
        }
        let mut v: Vec<E> = (0..=self.v_top).map(|e| self.coeff(r, e).unwrap_or_else(|| r.zero())).collect();
        while v.last().map_or(false, |c| r.is_zero(c)) {
            v.pop();
        }
        v
    }

    /// The part with negative exponents.
    pub fn neg_part<R: Ring<El = E>>(&self, r: &R) -> Self {
        if self.v_top < 0 {
            return self.clone();
        }
        let drop = (self.v_top + 1) as usize;
        let coeffs = self.coeffs.iter().skip(drop).cloned().collect();
        Self::from_top(r, -1, coeffs, self.prec)
    }

    /// Equality of all coefficients down to `t^{-n}`; errors if either side
    /// is not known that far.
    pub fn eq_to<R: Ring<El = E>>(&self, r: &R, b: &Self, n: i64) -> Result<bool> {
        if self.prec < n || b.prec < n {
            return Err(Error::PrecisionInsufficient(format!(
                "comparison at {n} with precisions {} and {}",
                self.prec, b.prec
            )));
        }
        let top = self.v_top.max(b.v_top);
        for e in (-n..=top).rev() {
            if self.coeff(r, e) != b.coeff(r, e) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest `m` with `self ≡ 1 mod t^{-m}`, capped at the precision.
    pub fn agreement_with_one<R: Ring<El = E>>(&self, r: &R) -> i64 {
        let one = r.one();
        if self.coeff(r, 0) != Some(one) || self.v_top > 0 {
            return 0;
        }
        for m in 1..=self.prec {
            if !r.is_zero(&self.coeff(r, -m).unwrap()) {
                return m;
            }
        }
        self.prec + 1
    }
}

impl GroupRingLaurent {
    /// Canonical text `v_top N c_0 c_1 …` with coefficients from the top down.
    pub fn format(&self, r: &GroupRing) -> String {
        let mut parts = vec![self.v_top.to_string(), self.prec.to_string()];
        for c in &self.coeffs {
            parts.push(r.format(c));
        }
        parts.join(" ")
    }

    pub fn parse(r: &GroupRing, text: &str) -> Result<Self> {
        let mut it = text.split_whitespace();
        let bad = || Error::InvalidInput(format!("Laurent element '{text}'"));
        let top: i64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let prec: i64 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut coeffs = Vec::new();
        for tok in it {
            coeffs.push(r.parse(tok)?);
        }
        Ok(Self::from_top(r, top, coeffs, prec))
    }

    /// Series JSON record body: `v_top`, `precision`, `coeffs`.
    pub fn to_json(&self, r: &GroupRing) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self.coeffs.iter().map(|c| r.to_json(c)).collect();
        serde_json::json!({
            "v_top": self.v_top,
            "precision": self.prec,
            "coeffs": coeffs,
        })
    }

    /// Readable rendering `Σ c·t^e` down to the precision.
    pub fn pretty(&self, r: &GroupRing) -> String {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !r.is_zero(c) {
                terms.push(format!("{}*t^{}", r.format(c), self.v_top - k as i64));
            }
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        format!("{} + O(t^{})", terms.join(" + "), -self.prec - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AbelianGroup, FqField};

    fn f2() -> FqField {
        FqField::prime(2).unwrap()
    }

    #[test]
    fn geometric_series() {
        let f = f2();
        let num = Laurent::from_poly(&f, &[0, 1], 12);
        let den = Laurent::from_poly(&f, &[1, 1], 14);
        let ratio = num.div(&f, &den).unwrap();
        assert!(ratio.prec >= 12);
        for e in 1..=12 {
            assert_eq!(ratio.coeff(&f, -e), Some(1));
        }
        let back = ratio.mul(&f, &den);
        assert!(back.eq_to(&f, &num.truncate(&f, 10), 10).unwrap());
    }

    #[test]
    fn precision_bookkeeping() {
        let f = f2();
        let a = Laurent::from_poly(&f, &[1, 0, 1], 5);
        let b = Laurent::from_poly(&f, &[1, 1], 5);
        let c = a.mul(&f, &b);
        assert_eq!(c.prec, 3);
        assert_eq!(c.v_top, 3);
        let z = Laurent::<u32>::zero(4);
        assert_eq!(z.mul(&f, &a).prec, 2);
        assert_eq!(a.shift(-2).prec, 7);
    }

    #[test]
    fn inflate_and_parts() {
        let f = FqField::prime(3).unwrap();
        let x = Laurent::from_top(&f, 1, vec![1, 2, 1, 1], 2);
        let y = x.inflate(&f, 3);
        assert_eq!(y.v_top, 3);
        assert_eq!(y.prec, 8);
        assert_eq!(y.coeff(&f, 0), Some(2));
        assert_eq!(y.coeff(&f, -3), Some(1));
        assert_eq!(y.coeff(&f, -2), Some(0));
        assert_eq!(x.poly_part(&f), vec![2, 1]);
        assert_eq!(x.neg_part(&f).coeff(&f, -1), Some(1));
    }

    #[test]
    fn group_ring_text() {
        let r = GroupRing::new(f2(), AbelianGroup::cyclic(2));
        let x = Laurent::from_top(&r, 1, vec![r.basis(1), r.zero(), r.one()], 4);
        let s = x.format(&r);
        assert_eq!(s, "1 4 [(1):1] [] [(0):1]");
        assert_eq!(GroupRingLaurent::parse(&r, &s).unwrap(), x);
    }
}
