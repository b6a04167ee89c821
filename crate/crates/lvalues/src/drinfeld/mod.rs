//! Drinfeld modules over `A = F_q[t]`: twisted polynomials, the action
//! `a ↦ φ(a)`, the exponential and logarithm, and the isometry radius of the
//! exponential.

use crate::algebra::{FqField, FqPoly, Laurent, PolyRing, Ring};
use crate::error::{Error, Result};

/// A twisted polynomial `Σ c_i τ^i` whose coefficients are polynomials in `t`
/// over a ring `R` fixed by Frobenius, so that `τ·c(t) = c(t^q)·τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPolynomial<E> {
    pub coeffs: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> TauPolynomial<E> {
    pub fn constant<R: Ring<El = E> + Clone>(pr: &PolyRing<R>, c: Vec<E>) -> Self {
        TauPolynomial { coeffs: vec![pr.normalize(c)] }
    }

    pub fn one<R: Ring<El = E> + Clone>(pr: &PolyRing<R>) -> Self {
        Self::constant(pr, pr.one())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim<R: Ring<El = E> + Clone>(mut self, pr: &PolyRing<R>) -> Self {
        while self.coeffs.len() > 1 && pr.is_zero(self.coeffs.last().unwrap()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add<R: Ring<El = E> + Clone>(&self, pr: &PolyRing<R>, b: &Self) -> Self {
        let n = self.coeffs.len().max(b.coeffs.len());
        let z = pr.zero();
        let coeffs = (0..n)
            .map(|i| pr.add(self.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        TauPolynomial { coeffs }.trim(pr)
    }

    /// Composition `self ∘ b` in the twisted ring.
    pub fn compose<R: Ring<El = E> + Clone>(&self, pr: &PolyRing<R>, q: usize, b: &Self) -> Self {
        let mut coeffs = vec![pr.zero(); self.coeffs.len() + b.coeffs.len() - 1];
        let mut qi = 1usize;
        for (i, a) in self.coeffs.iter().enumerate() {
            if !pr.is_zero(a) {
                for (j, c) in b.coeffs.iter().enumerate() {
                    let twisted = pr.inflate(c, qi);
                    let prod = pr.mul(a, &twisted);
                    pr.add_assign(&mut coeffs[i + j], &prod);
                }
            }
            qi *= q;
        }
        TauPolynomial { coeffs }.trim(pr)
    }

    /// `Σ c_i x^{q^i}` for `x` in the coefficient polynomial ring.
    pub fn apply<R: Ring<El = E> + Clone>(&self, pr: &PolyRing<R>, q: usize, x: &[E]) -> Vec<E> {
        let mut out = pr.zero();
        let mut power = x.to_vec();
        for c in &self.coeffs {
            let term = pr.mul(c, &power);
            pr.add_assign(&mut out, &term);
            power = pr.pow(&power, q as u64);
        }
        pr.normalize(out)
    }
}

/// A Drinfeld module `φ(t) = t + a_1 τ + … + a_r τ^r` with `a_i ∈ F_q[t]`.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    field: FqField,
    coeffs: Vec<FqPoly>,
}

impl DrinfeldModule {
    /// `coeffs = [a_1, …, a_r]`, each a polynomial listed low degree first.
    pub fn new(field: FqField, coeffs: Vec<FqPoly>) -> Result<Self> {
        let pr = PolyRing::new(field.clone());
        let coeffs: Vec<FqPoly> = coeffs.into_iter().map(|a| pr.normalize(a)).collect();
        match coeffs.last() {
            Some(a) if !a.is_empty() => Ok(DrinfeldModule { field, coeffs }),
            _ => Err(Error::InvalidInput("the top coefficient a_r must be nonzero with r ≥ 1".into())),
        }
    }

    /// The Carlitz module `φ(t) = t + τ`.
    pub fn carlitz(field: FqField) -> Self {
        DrinfeldModule { field, coeffs: vec![vec![1]] }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.q() as usize
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// `[a_1, …, a_r]`.
    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    pub fn poly_ring(&self) -> PolyRing<FqField> {
        PolyRing::new(self.field.clone())
    }

    pub fn phi_t(&self) -> TauPolynomial<u32> {
        let mut coeffs = vec![vec![0, 1]];
        coeffs.extend(self.coeffs.iter().cloned());
        TauPolynomial { coeffs }
    }

    pub fn format(&self) -> String {
        let pr = self.poly_ring();
        self.coeffs.iter().map(|a| pr.format(a)).collect::<Vec<_>>().join(";")
    }
}

/// `φ(a) = Σ a_j φ(t)^j`, evaluated by Horner's rule in the twisted ring.
pub fn phi_eval(e: &DrinfeldModule, a: &[u32]) -> TauPolynomial<u32> {
    let pr = e.poly_ring();
    let a = pr.normalize(a.to_vec());
    let phi_t = e.phi_t();
    let mut acc = TauPolynomial { coeffs: vec![Vec::new()] };
    for c in a.iter().rev() {
        acc = phi_t.compose(&pr, e.q(), &acc);
        acc = acc.add(&pr, &TauPolynomial::constant(&pr, vec![*c]));
    }
    acc
}

/// A reduced fraction of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: FqPoly,
    pub den: FqPoly,
}

impl Fraction {
    pub fn new(pr: &PolyRing<FqField>, num: FqPoly, den: FqPoly) -> Self {
        let num = pr.normalize(num);
        let den = pr.normalize(den);
        let g = pr.gcd(&num, &den);
        let mut n = pr.div_exact(&num, &g).unwrap();
        let mut d = pr.div_exact(&den, &g).unwrap();
        let lead = pr.lead(&d);
        let inv = pr.base().inv(lead).unwrap();
        n = pr.scale(&inv, &n);
        d = pr.scale(&inv, &d);
        Fraction { num: n, den: d }
    }

    pub fn one() -> Self {
        Fraction { num: vec![1], den: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// The valuation at infinity, `deg den − deg num`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.num.is_empty() {
            None
        } else {
            Some(self.den.len() as i64 - self.num.len() as i64)
        }
    }

    pub fn add(&self, pr: &PolyRing<FqField>, b: &Self) -> Self {
        let n = pr.add(&pr.mul(&self.num, &b.den), &pr.mul(&b.num, &self.den));
        Fraction::new(pr, n, pr.mul(&self.den, &b.den))
    }

    pub fn mul_poly(&self, pr: &PolyRing<FqField>, a: &[u32]) -> Self {
        Fraction::new(pr, pr.mul(&self.num, &a.to_vec()), self.den.clone())
    }

    pub fn div_poly(&self, pr: &PolyRing<FqField>, a: &[u32]) -> Self {
        Fraction::new(pr, self.num.clone(), pr.mul(&self.den, &a.to_vec()))
    }

    pub fn zero() -> Self {
        Fraction { num: Vec::new(), den: vec![1] }
    }

    pub fn from_poly(pr: &PolyRing<FqField>, a: &[u32]) -> Self {
        Fraction::new(pr, a.to_vec(), vec![1])
    }

    pub fn neg(&self, pr: &PolyRing<FqField>) -> Self {
        Fraction { num: pr.neg(&self.num), den: self.den.clone() }
    }

    pub fn sub(&self, pr: &PolyRing<FqField>, b: &Self) -> Self {
        self.add(pr, &b.neg(pr))
    }

    pub fn mul(&self, pr: &PolyRing<FqField>, b: &Self) -> Self {
        Fraction::new(pr, pr.mul(&self.num, &b.num), pr.mul(&self.den, &b.den))
    }

    pub fn inv(&self, pr: &PolyRing<FqField>) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Fraction::new(pr, self.den.clone(), self.num.clone()))
        }
    }

    /// The polynomial this fraction equals, if its denominator is 1.
    pub fn as_poly(&self) -> Option<FqPoly> {
        (self.den == vec![1]).then(|| self.num.clone())
    }

    /// `x ↦ x^{q^k}`, i.e. `t ↦ t^{q^k}` on numerator and denominator.
    pub fn frobenius(&self, pr: &PolyRing<FqField>, qk: usize) -> Self {
        Fraction { num: pr.inflate(&self.num, qk), den: pr.inflate(&self.den, qk) }
    }

    /// Expansion in `F_q((t^{-1}))` with absolute precision `prec`.
    pub fn laurent(&self, f: &FqField, prec: i64) -> Laurent<u32> {
        let deg_den = self.den.len() as i64 - 1;
        let p = prec + deg_den + 2;
        let num = Laurent::from_poly(f, &self.num, p);
        let den = Laurent::from_poly(f, &self.den, p);
        num.div(f, &den).expect("monic denominator").truncate(f, prec)
    }
}

/// Coefficients of `exp(z) = Σ e_k z^{q^k}` or `log(z) = Σ l_k z^{q^k}` as
/// exact fractions, together with their valuations at infinity.
#[derive(Clone, Debug)]
pub struct ExpSeries {
    pub q: usize,
    pub coeffs: Vec<Fraction>,
    pub valuations: Vec<Option<i64>>,
}

impl ExpSeries {
    fn from_coeffs(q: usize, coeffs: Vec<Fraction>) -> Self {
        let valuations = coeffs.iter().map(Fraction::valuation).collect();
        ExpSeries { q, coeffs, valuations }
    }

    pub fn k_max(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `e_k (t^{q^k} − t) = Σ_{i=1}^{min(r,k)} a_i e_{k−i}^{q^i}`.
pub fn exp_coefficients(e: &DrinfeldModule, k_max: usize) -> ExpSeries {
    let pr = e.poly_ring();
    let q = e.q();
    let mut coeffs = vec![Fraction::one()];
    for k in 1..=k_max {
        let mut rhs = Fraction { num: Vec::new(), den: vec![1] };
        for i in 1..=e.rank().min(k) {
            let term = coeffs[k - i].frobenius(&pr, q.pow(i as u32)).mul_poly(&pr, &e.coeffs[i - 1]);
            rhs = rhs.add(&pr, &term);
        }
        coeffs.push(rhs.div_poly(&pr, &t_qk_minus_t(&pr, q.pow(k as u32))));
    }
    ExpSeries::from_coeffs(q, coeffs)
}

/// `l_n (t − t^{q^n}) = Σ_{i=1}^{min(r,n)} l_{n−i} a_i^{q^{n−i}}`.
pub fn log_coefficients(e: &DrinfeldModule, k_max: usize) -> ExpSeries {
    let pr = e.poly_ring();
    let q = e.q();
    let mut coeffs = vec![Fraction::one()];
    for n in 1..=k_max {
        let mut rhs = Fraction { num: Vec::new(), den: vec![1] };
        for i in 1..=e.rank().min(n) {
            let twisted = pr.inflate(&e.coeffs[i - 1], q.pow((n - i) as u32));
            rhs = rhs.add(&pr, &coeffs[n - i].mul_poly(&pr, &twisted));
        }
        let d = pr.neg(&t_qk_minus_t(&pr, q.pow(n as u32)));
        coeffs.push(rhs.div_poly(&pr, &d));
    }
    ExpSeries::from_coeffs(q, coeffs)
}

fn t_qk_minus_t(pr: &PolyRing<FqField>, qk: usize) -> FqPoly {
    let tq = pr.monomial(1, qk);
    pr.sub(&tq, &pr.var())
}

/// Coefficients of the composition `(a ∘ b)(z)` through `z^{q^k_max}`.
pub fn compose_series(e: &DrinfeldModule, a: &ExpSeries, b: &ExpSeries) -> Vec<Fraction> {
    let pr = e.poly_ring();
    let n = a.coeffs.len().min(b.coeffs.len());
    (0..n)
        .map(|m| {
            let mut acc = Fraction { num: Vec::new(), den: vec![1] };
            for k in 0..=m {
                let twisted = b.coeffs[m - k].frobenius(&pr, a.q.pow(k as u32));
                let prod = Fraction::new(
                    &pr,
                    pr.mul(&a.coeffs[k].num, &twisted.num),
                    pr.mul(&a.coeffs[k].den, &twisted.den),
                );
                acc = acc.add(&pr, &prod);
            }
            acc
        })
        .collect()
}

/// Certified isometry radius of the exponential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryRadius {
    /// Smallest `i ≥ 1` such that `exp` is an isometry on `t^{-i}·O_∞`.
    pub i0: i64,
    /// Number of coefficients examined before the tail bound applied.
    pub k_used: usize,
}

/// Largest `k` for which the exponential coefficients are computed while
/// certifying the tail (`q^k` is kept below this bound).
const TAIL_DEGREE_CAP: usize = 1 << 14;

/// Finds `i₀ ≥ 1` with `v(e_k) + i₀(q^k − 1) > 0` for every `k ≥ 1`.
///
/// Coefficients are examined through `k_max`, which is raised until the tail
/// bound `v(e_k) ≥ −c·q^k` (propagated through the recursion once
/// `q^k ≥ max deg a_i`) forces the inequality for all larger `k`.
pub fn isometry_radius(e: &DrinfeldModule, k_max: usize) -> Result<IsometryRadius> {
    let q = e.q();
    let d_max = e.coeffs.iter().map(|a| a.len() as i64 - 1).max().unwrap_or(0);
    let r = e.rank();
    let mut k = k_max.max(r).max(1);
    loop {
        if q.pow(k as u32) > TAIL_DEGREE_CAP {
            return Err(Error::TailNotCertified(format!("coefficients up to k = {k} did not settle")));
        }
        let series = exp_coefficients(e, k);
        let mut i0 = 1i64;
        for (j, v) in series.valuations.iter().enumerate().skip(1) {
            if let Some(v) = v {
                let qj = (q.pow(j as u32) - 1) as i64;
                i0 = i0.max((-v).div_euclid(qj) + 1);
            }
        }
        let mut c = 0f64;
        for j in (k + 1 - r)..=k {
            if let Some(v) = series.valuations[j] {
                c = c.max(-(v as f64) / q.pow(j as u32) as f64);
            }
        }
        let qk1 = q.pow(k as u32 + 1) as f64;
        let propagates = qk1 >= d_max as f64;
        let i_tail = c.floor() as i64 + 1;
        let i_final = i0.max(i_tail);
        if propagates && (i_final as f64 - c) * qk1 > i_final as f64 {
            return Ok(IsometryRadius { i0: i_final, k_used: k });
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> FqField {
        FqField::of_order(q).unwrap()
    }

    #[test]
    fn phi_examples() {
        for q in [2u32, 3] {
            let c = DrinfeldModule::carlitz(f(q));
            assert_eq!(phi_eval(&c, &[1]).coeffs, vec![vec![1]]);
            assert_eq!(phi_eval(&c, &[0, 1]).coeffs, vec![vec![0, 1], vec![1]]);
            let pr = c.poly_ring();
            let mut mid = pr.monomial(1, q as usize);
            mid = pr.add(&mid, &pr.var());
            assert_eq!(phi_eval(&c, &[0, 0, 1]).coeffs, vec![vec![0, 0, 1], mid, vec![1]]);
        }
    }

    #[test]
    fn exp_examples() {
        let c = DrinfeldModule::carlitz(f(2));
        let pr = c.poly_ring();
        let ex = exp_coefficients(&c, 3);
        assert_eq!(ex.coeffs[0], Fraction::one());
        assert_eq!(ex.coeffs[1], Fraction { num: vec![1], den: vec![0, 1, 1] });
        let d2 = pr.mul(&vec![0, 1, 0, 0, 1], &pr.pow(&vec![0, 1, 1], 2));
        assert_eq!(ex.coeffs[2], Fraction { num: vec![1], den: d2 });
        assert_eq!(ex.valuations[1], Some(2));
    }

    #[test]
    fn exp_functional_equation() {
        for (q, a) in [(2u32, vec![vec![1]]), (3, vec![vec![0, 1]]), (2, vec![vec![1, 1], vec![1]])] {
            let e = DrinfeldModule::new(f(q), a).unwrap();
            let pr = e.poly_ring();
            let ex = exp_coefficients(&e, 4);
            let qq = q as usize;
            for k in 1..=4 {
                let lhs = ex.coeffs[k].mul_poly(&pr, &pr.monomial(1, qq.pow(k as u32)));
                let mut rhs = ex.coeffs[k].mul_poly(&pr, &pr.var());
                for i in 1..=e.rank().min(k) {
                    let t = ex.coeffs[k - i].frobenius(&pr, qq.pow(i as u32)).mul_poly(&pr, &e.coeffs()[i - 1]);
                    rhs = rhs.add(&pr, &t);
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn log_inverts_exp() {
        let c = DrinfeldModule::carlitz(f(2));
        let lg = log_coefficients(&c, 3);
        assert_eq!(lg.coeffs[1], Fraction { num: vec![1], den: vec![0, 1, 1] });
        for (q, a) in [(2u32, vec![vec![1]]), (3, vec![vec![1], vec![0, 1]])] {
            let e = DrinfeldModule::new(f(q), a).unwrap();
            let ex = exp_coefficients(&e, 3);
            let lg = log_coefficients(&e, 3);
            for (m, c) in compose_series(&e, &ex, &lg).iter().enumerate() {
                assert_eq!(c.is_zero(), m != 0);
            }
            for (m, c) in compose_series(&e, &lg, &ex).iter().enumerate() {
                assert_eq!(c.is_zero(), m != 0);
            }
        }
    }

    #[test]
    fn radius_examples() {
        let c = DrinfeldModule::carlitz(f(2));
        assert_eq!(isometry_radius(&c, 3).unwrap().i0, 1);
        let e = DrinfeldModule::new(f(2), vec![vec![0, 1]]).unwrap();
        let rad = isometry_radius(&e, 3).unwrap();
        let ex = exp_coefficients(&e, rad.k_used + 3);
        for (k, v) in ex.valuations.iter().enumerate().skip(1) {
            assert!(v.unwrap() + rad.i0 * ((1i64 << k) - 1) > 0);
        }
        let big = DrinfeldModule::new(f(2), vec![vec![0, 0, 0, 0, 0, 1]]).unwrap();
        let rad = isometry_radius(&big, 2).unwrap();
        assert!(rad.i0 >= 2);
        let ex = exp_coefficients(&big, rad.k_used + 3);
        for (k, v) in ex.valuations.iter().enumerate().skip(1) {
            assert!(v.unwrap() + rad.i0 * ((1i64 << k) - 1) > 0);
        }
    }

    #[test]
    fn rank_zero_rejected() {
        assert!(DrinfeldModule::new(f(2), vec![]).is_err());
        assert!(DrinfeldModule::new(f(2), vec![vec![1], vec![0]]).is_err());
    }
}
