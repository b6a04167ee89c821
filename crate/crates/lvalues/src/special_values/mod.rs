//! The special value `Θ(0)` as a truncated Euler product, and the direct
//! sum `Σ_{a monic} 1/a` as an independent oracle for the trivial group.
//!
//! A [`ThetaValue`] records how it was obtained: the largest prime degree
//! included, the smallest measured agreement `m(v)` per included degree, and
//! any assumption on the omitted primes.

pub mod primes;

use rayon::prelude::*;

use crate::algebra::fq::FqField;
use crate::algebra::groupring::GroupRing;
use crate::algebra::laurent::{GroupRingLaurent, Laurent};
use crate::algebra::monic::monic_test;
use crate::algebra::poly::FqPoly;
use crate::algebra::ring::{Ring, UnitRing};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::euler::fast::{residue_charpoly, Packed, F2, F3};
use crate::euler::euler_factor;
use crate::extensions::{ExtensionData, Ramification};
pub use primes::{enumerate_monic_irreducibles, necklace_count, IrreducibleTable};

/// Assumption recorded when primes beyond the cutoff are bounded by the
/// degree rule `m(v) ≥ ⌈deg v / r⌉` for a module of rank `r ≥ 2`.
pub const TAIL_ASSUMPTION: &str = "tail-bound: omitted primes of degree d assumed to satisfy m(v) >= ceil(d/r)";

/// Assumption recorded when the degree cap stopped the adaptive cutoff while
/// frontier factors still contributed inside the precision.
pub const FRONTIER_ASSUMPTION: &str = "frontier: degree cap reached with agreement below the precision";

/// How a value was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Euler,
    Trace,
    Sum,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Euler => "euler",
            Method::Trace => "trace",
            Method::Sum => "sum",
        }
    }
}

/// `Θ(0)` known to `t^{-N}`, with its truncation certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaValue {
    pub result: GroupRingLaurent,
    pub precision: i64,
    /// Largest prime degree included (`0` when no prime was used).
    pub cutoff: usize,
    /// `(d, min m(v))` over included primes of degree `d`.
    pub degree_agreement: Vec<(usize, i64)>,
    pub method: Method,
    /// Whether factors at wild primes were included.
    pub completed: bool,
    pub assumptions: Vec<String>,
}

impl ThetaValue {
    /// Checks `Θ ≡ 1 mod t^{-1}` and the monic test.
    pub fn check_invariants(&self, r: &GroupRing) -> Result<()> {
        if self.result.agreement_with_one(r) < 1 {
            return Err(Error::InvalidInput("value is not 1 modulo 1/t".into()));
        }
        if !monic_test(r, &self.result)? {
            return Err(Error::InvalidInput("value fails the monic test".into()));
        }
        Ok(())
    }

    /// `{"v_top", "precision", "coeffs", "method", "assumptions", …}`.
    pub fn to_json(&self, r: &GroupRing) -> serde_json::Value {
        let mut v = self.result.to_json(r);
        let obj = v.as_object_mut().expect("series record is an object");
        obj.insert("method".into(), self.method.as_str().into());
        obj.insert("assumptions".into(), self.assumptions.clone().into());
        obj.insert("cutoff".into(), self.cutoff.into());
        obj.insert(
            "degree_agreement".into(),
            self.degree_agreement.iter().map(|&(d, m)| serde_json::json!([d, m])).collect::<Vec<_>>().into(),
        );
        obj.insert("variant".into(), if self.completed { "completed" } else { "tame-only" }.into());
        v
    }
}

/// Options of [`theta_euler_with`].
#[derive(Clone, Debug)]
pub struct EulerOptions {
    /// Working precision `N ≥ 1`.
    pub precision: i64,
    /// Include the factors at wild primes (taming fibers).
    pub completed: bool,
    /// How many degrees past `r·N` the adaptive cutoff may add.
    pub extra_degrees: usize,
}

impl EulerOptions {
    pub fn new(precision: i64) -> Self {
        EulerOptions {
            precision,
            completed: true,
            extra_degrees: 2,
        }
    }
}

/// The completed Euler product to `t^{-n}`.
pub fn theta_euler(e: &DrinfeldModule, ext: &ExtensionData, n: i64) -> Result<ThetaValue> {
    theta_euler_with(e, ext, &EulerOptions::new(n))
}

/// Euler product over the primes of degree `≤ D`, with `D` starting at
/// `r·N` and raised while the frontier degree still has a factor with
/// `m(v) < N`.
pub fn theta_euler_with(e: &DrinfeldModule, ext: &ExtensionData, opts: &EulerOptions) -> Result<ThetaValue> {
    let n = opts.precision;
    if n < 1 {
        return Err(Error::InvalidInput(format!("precision {n} must be at least 1")));
    }
    if e.field() != ext.field() {
        return Err(Error::InvalidInput("module and extension use different fields".into()));
    }
    let r = &ext.ring;
    let rank = e.rank();
    let mut cap = rank * n as usize;
    let max_cap = cap + opts.extra_degrees;
    let mut table = IrreducibleTable::new(ext.field(), cap);
    let mut result = Laurent::one(r, n);
    let mut degree_agreement = Vec::new();
    let mut assumptions = Vec::new();
    let mut d = 1;
    loop {
        if d > table.d_max() {
            table = IrreducibleTable::new(ext.field(), cap);
        }
        let (factor, agreement) = degree_product(e, ext, &table, d, opts)?;
        result = result.mul(r, &factor);
        if let Some(m) = agreement {
            degree_agreement.push((d, m));
        }
        if d == cap {
            let frontier_short = agreement.is_some_and(|m| m < n);
            if frontier_short && cap < max_cap {
                cap += 1;
            } else {
                if frontier_short {
                    assumptions.push(FRONTIER_ASSUMPTION.to_string());
                }
                break;
            }
        }
        d += 1;
    }
    if rank >= 2 {
        assumptions.push(TAIL_ASSUMPTION.to_string());
    }
    let value = ThetaValue {
        result,
        precision: n,
        cutoff: cap,
        degree_agreement,
        method: Method::Euler,
        completed: opts.completed,
        assumptions,
    };
    value.check_invariants(r)?;
    Ok(value)
}

/// Product of the factors at the primes of degree `d` and their least
/// agreement, `None` if no prime was included.
fn degree_product(
    e: &DrinfeldModule,
    ext: &ExtensionData,
    table: &IrreducibleTable,
    d: usize,
    opts: &EulerOptions,
) -> Result<(GroupRingLaurent, Option<i64>)> {
    let r = &ext.ring;
    let f = ext.field();
    let n = opts.precision;
    if r.order() == 1 && f.s() == 1 {
        let packed = match f.p() {
            2 if d <= F2::MAX_DEGREE => Some(packed_degree_product::<F2>(e, table, d, n as usize)),
            3 if d <= F3::MAX_DEGREE => Some(packed_degree_product::<F3>(e, table, d, n as usize)),
            _ => None,
        };
        if let Some((series, agreement)) = packed {
            let coeffs = series.into_iter().map(|c| r.scalar(c)).collect();
            return Ok((Laurent::from_top(r, 0, coeffs, n), agreement));
        }
    }
    let pis: Vec<FqPoly> = table.of_degree(d);
    let factors: Vec<Result<Option<(GroupRingLaurent, i64)>>> = pis
        .par_iter()
        .map(|pi| {
            let data = ext.prime_data(pi)?;
            if data.ramification == Ramification::Wild && !opts.completed {
                return Ok(None);
            }
            let fac = euler_factor(e, r, &data, n)?;
            Ok(Some((fac.ratio, fac.agreement)))
        })
        .collect();
    let mut acc = Laurent::one(r, n);
    let mut agreement: Option<i64> = None;
    for fac in factors {
        if let Some((ratio, m)) = fac? {
            acc = acc.mul(r, &ratio);
            agreement = Some(agreement.map_or(m, |a| a.min(m)));
        }
    }
    Ok((acc, agreement))
}

/// Number of indices handled by one parallel work item.
const CHUNK: u64 = 1 << 14;

/// Trivial-group product over the degree-`d` primes with packed arithmetic;
/// the series is listed by powers of `1/t`, `0..=n`.
fn packed_degree_product<W: Packed>(e: &DrinfeldModule, table: &IrreducibleTable, d: usize, n: usize) -> (Vec<u32>, Option<i64>) {
    let p = W::P;
    let total = table.candidates(d);
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<(Vec<u32>, Option<i64>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = series_one(n);
            let mut agreement: Option<i64> = None;
            let mut pi = vec![0u32; d + 1];
            for i in table.indices_in(d, c * CHUNK, ((c + 1) * CHUNK).min(total)) {
                let mut x = i;
                for coeff in pi.iter_mut().take(d) {
                    *coeff = (x % p as u64) as u32;
                    x /= p as u64;
                }
                pi[d] = 1;
                let size = residue_charpoly::<W>(&pi, e.coeffs());
                let ratio = top_ratio(&pi, &size, n, p);
                let m = ratio.iter().skip(1).position(|&v| v != 0).map_or(n as i64 + 1, |k| k as i64 + 1);
                agreement = Some(agreement.map_or(m, |a| a.min(m)));
                if (m as usize) <= n {
                    series_mul_assign(&mut acc, &ratio, m as usize, p);
                }
            }
            (acc, agreement)
        })
        .collect();
    let mut acc = series_one(n);
    let mut agreement: Option<i64> = None;
    for (s, m) in parts {
        series_mul_assign(&mut acc, &s, 1, p);
        if let Some(m) = m {
            agreement = Some(agreement.map_or(m, |a| a.min(m)));
        }
    }
    (acc, agreement)
}

fn series_one(n: usize) -> Vec<u32> {
    let mut s = vec![0; n + 1];
    s[0] = 1;
    s
}

/// `num/den` for monic polynomials of equal degree, in powers of `1/t`.
fn top_ratio(num: &[u32], den: &[u32], n: usize, p: u32) -> Vec<u32> {
    let d = num.len() - 1;
    let top = |a: &[u32], k: usize| if k <= d { a[d - k] } else { 0 };
    let mut out = vec![0u32; n + 1];
    for k in 0..=n {
        let mut v = top(num, k) + p * p * (k as u32 + 1);
        for j in 1..=k.min(d) {
            v -= top(den, j) * out[k - j];
        }
        out[k] = v % p;
    }
    out
}

/// `acc ← acc·b` where `b ≡ 1 mod (1/t)^m`.
fn series_mul_assign(acc: &mut [u32], b: &[u32], m: usize, p: u32) {
    let n = acc.len() - 1;
    for k in (m..=n).rev() {
        let mut v = acc[k];
        for j in m..=k {
            v += b[j] * acc[k - j];
        }
        acc[k] = v % p;
    }
}

/// `Σ 1/a` over monic `a` of degree `≤ n`, to `t^{-n}`, for the trivial group.
///
/// The terms of degree `k` depend only on the top `min(k, n − k)`
/// coefficients below the leading one to this precision; when
/// `2k > n` every value repeats `q^{2k−n}` times and the block vanishes in
/// characteristic `p`, so only degrees `k ≤ n/2` are summed term by term.
pub fn zeta_direct_sum(r: &GroupRing, n: i64) -> Result<ThetaValue> {
    if r.order() != 1 {
        return Err(Error::NontrivialGroup);
    }
    let f = r.field();
    let n_us = n.max(0) as usize;
    let mut total = vec![0u32; n_us + 1];
    total[0] = 1;
    for k in 1..=n_us / 2 {
        let count = (f.q() as u64).pow(k as u32);
        for idx in 0..count {
            let a = crate::algebra::poly::PolyRing::new(f.clone()).monic_from_index(k, idx);
            let inv = inverse_top_series(f, &a, n_us - k)?;
            for (j, c) in inv.into_iter().enumerate() {
                total[k + j] = f.add(&total[k + j], &c);
            }
        }
    }
    let coeffs = total.into_iter().map(|c| r.scalar(c)).collect();
    let value = ThetaValue {
        result: Laurent::from_top(r, 0, coeffs, n),
        precision: n,
        cutoff: n_us / 2,
        degree_agreement: Vec::new(),
        method: Method::Sum,
        completed: true,
        assumptions: Vec::new(),
    };
    if n >= 1 {
        value.check_invariants(r)?;
    }
    Ok(value)
}

/// `t^k/a` for monic `a` of degree `k`, as a series in `1/t` to `(1/t)^m`.
fn inverse_top_series(f: &FqField, a: &[u32], m: usize) -> Result<Vec<u32>> {
    let k = a.len() - 1;
    let top = |j: usize| if j <= k { a[k - j] } else { 0 };
    let lead_inv = f.try_inv(&top(0)).ok_or_else(|| Error::NotAUnit("leading coefficient".into()))?;
    let mut out = vec![0u32; m + 1];
    for i in 0..=m {
        let mut v = if i == 0 { f.one() } else { f.zero() };
        for j in 1..=i.min(k) {
            v = f.sub(&v, &f.mul(&top(j), &out[i - j]));
        }
        out[i] = f.mul(&v, &lead_inv);
    }
    Ok(out)
}
