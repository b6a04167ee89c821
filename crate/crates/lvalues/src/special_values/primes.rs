//! Monic irreducible polynomials of `F_q[t]` by degree.
//!
//! A monic polynomial of degree `d` is indexed by `Σ_{i<d} c_i q^i`, matching
//! [`PolyRing::monic_from_index`]. For prime `q ∈ {2, 3}` a per-degree bitmap
//! is sieved: every product of an irreducible of degree `e ≤ d/2` with a
//! monic cofactor is marked by stepping the cofactor through a base-`q`
//! counter, which changes the product by a precomputed multiple of the
//! irreducible. Other fields test each candidate directly.

use crate::algebra::fq::FqField;
use crate::algebra::poly::{FqPoly, PolyRing};
use crate::euler::fast::{Packed, F2, F3};

/// Irreducibility bitmaps for every degree up to a bound.
#[derive(Clone, Debug)]
pub struct IrreducibleTable {
    field: FqField,
    /// `composite[d]` has bit `i` set iff the monic polynomial of degree `d`
    /// with index `i` is reducible.
    composite: Vec<Vec<u64>>,
}

impl IrreducibleTable {
    pub fn new(field: &FqField, d_max: usize) -> Self {
        let composite = match (field.q(), field.s()) {
            (2, 1) if d_max <= 32 => sieve::<F2>(d_max, |w: F2, d| w.0 & ((1u64 << d) - 1)),
            (3, 1) if d_max <= 20 => {
                let table = f3_index_table();
                sieve::<F3>(d_max, move |w: F3, d| f3_index(&table, w, d))
            }
            _ => direct(field, d_max),
        };
        IrreducibleTable {
            field: field.clone(),
            composite,
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn d_max(&self) -> usize {
        self.composite.len() - 1
    }

    /// Number of monic polynomials of degree `d`.
    pub fn candidates(&self, d: usize) -> u64 {
        (self.field.q() as u64).pow(d as u32)
    }

    pub fn is_irreducible_index(&self, d: usize, i: u64) -> bool {
        d >= 1 && self.composite[d][(i / 64) as usize] >> (i % 64) & 1 == 0
    }

    /// Indices of the irreducibles of degree `d` in `[lo, hi)`, ascending.
    pub fn indices_in(&self, d: usize, lo: u64, hi: u64) -> impl Iterator<Item = u64> + '_ {
        (lo..hi).filter(move |&i| self.is_irreducible_index(d, i))
    }

    pub fn count(&self, d: usize) -> u64 {
        if d == 0 {
            return 0;
        }
        let n = self.candidates(d);
        let words = &self.composite[d];
        let full = (n / 64) as usize;
        let mut set: u64 = words[..full].iter().map(|w| w.count_ones() as u64).sum();
        if n % 64 != 0 {
            set += (words[full] & ((1u64 << (n % 64)) - 1)).count_ones() as u64;
        }
        n - set
    }

    pub fn poly(&self, d: usize, i: u64) -> FqPoly {
        PolyRing::new(self.field.clone()).monic_from_index(d, i)
    }

    /// The irreducibles of degree `d` in index order.
    pub fn of_degree(&self, d: usize) -> Vec<FqPoly> {
        self.indices_in(d, 0, self.candidates(d)).map(|i| self.poly(d, i)).collect()
    }
}

/// All monic irreducibles of degree `1..=d_max`, ordered by degree and then
/// by index (base-`q` digits with the constant term least significant).
pub fn enumerate_monic_irreducibles(field: &FqField, d_max: usize) -> Vec<FqPoly> {
    let table = IrreducibleTable::new(field, d_max);
    (1..=d_max).flat_map(|d| table.of_degree(d)).collect()
}

/// Count of monic irreducibles of degree `d`: `Σ_{e|d} μ(e) q^{d/e} / d`.
pub fn necklace_count(q: u64, d: usize) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=d {
        if d % e == 0 {
            total += mobius(e) as i128 * (q as i128).pow((d / e) as u32);
        }
    }
    (total / d as i128) as u64
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn empty_bitmaps(q: u64, d_max: usize) -> Vec<Vec<u64>> {
    (0..=d_max).map(|d| vec![0u64; (q.pow(d as u32) as usize).div_ceil(64)]).collect()
}

fn direct(field: &FqField, d_max: usize) -> Vec<Vec<u64>> {
    let pr = PolyRing::new(field.clone());
    let q = field.q() as u64;
    let mut maps = empty_bitmaps(q, d_max);
    for (d, map) in maps.iter_mut().enumerate().skip(1) {
        for i in 0..q.pow(d as u32) {
            if !pr.is_irreducible(&pr.monic_from_index(d, i)) {
                map[(i / 64) as usize] |= 1 << (i % 64);
            }
        }
    }
    maps
}

fn sieve<W: Packed>(d_max: usize, index: impl Fn(W, u32) -> u64) -> Vec<Vec<u64>> {
    let q = W::P as u64;
    let mut maps = empty_bitmaps(q, d_max);
    let mut irreducibles: Vec<Vec<W>> = vec![Vec::new(); d_max + 1];
    for d in 1..=d_max {
        for e in 1..=d / 2 {
            for &p in &irreducibles[e] {
                mark_multiples(&mut maps[d], p, e, d, &index);
            }
        }
        if 2 * d <= d_max {
            let n = q.pow(d as u32);
            let pr = PolyRing::new(FqField::prime(W::P).expect("prime field"));
            for i in 0..n {
                if maps[d][(i / 64) as usize] >> (i % 64) & 1 == 0 {
                    irreducibles[d].push(W::from_coeffs(&pr.monic_from_index(d, i)));
                }
            }
        }
    }
    maps
}

/// Marks `p·b` for every monic `b` of degree `d − e`.
fn mark_multiples<W: Packed>(map: &mut [u64], p: W, e: usize, d: usize, index: &impl Fn(W, u32) -> u64) {
    let k = d - e;
    let top = W::P - 1;
    let steps: Vec<W> = (0..k)
        .scan(W::zero(), |s, i| {
            *s = s.add(p.shl(i as u32));
            Some(*s)
        })
        .collect();
    let mut digits = vec![0u32; k];
    let mut prod = p.shl(k as u32);
    loop {
        let i = index(prod, d as u32);
        map[(i / 64) as usize] |= 1 << (i % 64);
        let mut j = 0;
        while j < k && digits[j] == top {
            digits[j] = 0;
            j += 1;
        }
        if j == k {
            break;
        }
        digits[j] += 1;
        prod = prod.add(steps[j]);
    }
}

/// `T[m][s]` = base-3 value of the eight digits `m_i + s_i`.
fn f3_index_table() -> Vec<u16> {
    let mut t = vec![0u16; 1 << 16];
    for m in 0..256usize {
        for s in 0..256usize {
            if s & !m != 0 {
                continue;
            }
            let mut v = 0u16;
            for i in (0..8).rev() {
                v = v * 3 + ((m >> i) & 1) as u16 + ((s >> i) & 1) as u16;
            }
            t[(m << 8) | s] = v;
        }
    }
    t
}

fn f3_index(table: &[u16], w: F3, d: u32) -> u64 {
    let mask = (1u64 << d) - 1;
    let (mut m, mut s) = (w.m & mask, w.s & mask);
    let mut acc = 0u64;
    let mut scale = 1u64;
    while m != 0 {
        acc += scale * table[(((m & 0xFF) << 8) | (s & 0xFF)) as usize] as u64;
        scale *= 6561;
        m >>= 8;
        s >>= 8;
    }
    acc
}
