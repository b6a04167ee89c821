//! Word-packed polynomial arithmetic over `F_2` and `F_3` for the trivial
//! group, used when millions of residue sizes are needed.
//!
//! A polynomial of degree `< 64` is stored coefficientwise in machine words:
//! one bit per coefficient over `F_2`, and over `F_3` a pair of masks
//! `(m, s)` with `m` marking nonzero coefficients and `s` marking those equal
//! to `2`. The residue size of `φ_E(t)` on `A/π` is the characteristic
//! polynomial of that operator, assembled from Krylov blocks.

use crate::algebra::poly::FqPoly;

/// A polynomial over a prime field `F_p`, `p ∈ {2, 3}`, packed in words.
pub trait Packed: Copy + Eq + std::fmt::Debug + Send + Sync {
    const P: u32;
    /// Largest degree `d` of a modulus supported by [`residue_charpoly`].
    const MAX_DEGREE: usize;
    fn zero() -> Self;
    fn is_zero(self) -> bool;
    fn add(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }
    fn scale(self, c: u32) -> Self;
    fn shl(self, k: u32) -> Self;
    fn coeff(self, i: u32) -> u32;
    fn monomial(c: u32, i: u32) -> Self;
    /// Degree, or `None` for zero.
    fn degree(self) -> Option<u32>;
    /// `x(t) ↦ x(t^p) = x^p`.
    fn frob(self) -> Self;
    /// Bit mask of the nonzero coefficients.
    fn support(self) -> u64;
    /// Keeps the coefficients at the positions set in `mask`.
    fn masked(self, mask: u64) -> Self;

    fn from_coeffs(c: &[u32]) -> Self {
        c.iter()
            .enumerate()
            .fold(Self::zero(), |acc, (i, &v)| acc.add(Self::monomial(v % Self::P, i as u32)))
    }

    fn to_coeffs(self, len: usize) -> Vec<u32> {
        (0..len as u32).map(|i| self.coeff(i)).collect()
    }

    /// Remainder modulo the monic `pi` of degree `d`.
    fn rem(mut self, pi: Self, d: u32) -> Self {
        while let Some(k) = self.degree() {
            if k < d {
                break;
            }
            let c = self.coeff(k);
            self = self.sub(pi.shl(k - d).scale(c));
        }
        self
    }

    /// Product, assuming the degrees sum to less than 64.
    fn mul(self, b: Self) -> Self {
        let mut acc = Self::zero();
        let mut i = 0;
        while let Some(k) = b.degree() {
            if i > k {
                break;
            }
            let c = b.coeff(i);
            if c != 0 {
                acc = acc.add(self.shl(i).scale(c));
            }
            i += 1;
        }
        acc
    }
}

/// Packed polynomial over `F_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct F2(pub u64);

impl Packed for F2 {
    const P: u32 = 2;
    const MAX_DEGREE: usize = 31;
    fn zero() -> Self {
        F2(0)
    }
    fn is_zero(self) -> bool {
        self.0 == 0
    }
    fn add(self, o: Self) -> Self {
        F2(self.0 ^ o.0)
    }
    fn neg(self) -> Self {
        self
    }
    fn scale(self, c: u32) -> Self {
        if c & 1 == 1 {
            self
        } else {
            F2(0)
        }
    }
    fn shl(self, k: u32) -> Self {
        F2(self.0 << k)
    }
    fn coeff(self, i: u32) -> u32 {
        ((self.0 >> i) & 1) as u32
    }
    fn monomial(c: u32, i: u32) -> Self {
        F2(((c & 1) as u64) << i)
    }
    fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }
    fn frob(self) -> Self {
        F2(spread2(self.0 as u32))
    }
    fn support(self) -> u64 {
        self.0
    }
    fn masked(self, mask: u64) -> Self {
        F2(self.0 & mask)
    }
    fn rem(mut self, pi: Self, d: u32) -> Self {
        while self.0 >> d != 0 {
            let k = 63 - self.0.leading_zeros();
            self.0 ^= pi.0 << (k - d);
        }
        self
    }
}

/// Interleaves zero bits: bit `i` moves to bit `2i`.
fn spread2(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Bit `i` moves to bit `3i`, for `i < 21`.
fn spread3(x: u64) -> u64 {
    let mut x = x & 0x1F_FFFF;
    x = (x | (x << 32)) & 0x001F_0000_0000_FFFF;
    x = (x | (x << 16)) & 0x001F_0000_FF00_00FF;
    x = (x | (x << 8)) & 0x100F_00F0_0F00_F00F;
    x = (x | (x << 4)) & 0x10C3_0C30_C30C_30C3;
    x = (x | (x << 2)) & 0x1249_2492_4924_9249;
    x
}

/// Packed polynomial over `F_3`: `m` marks nonzero coefficients, `s` marks
/// coefficients equal to `2` (always a subset of `m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct F3 {
    pub m: u64,
    pub s: u64,
}

impl Packed for F3 {
    const P: u32 = 3;
    const MAX_DEGREE: usize = 21;
    fn zero() -> Self {
        F3 { m: 0, s: 0 }
    }
    fn is_zero(self) -> bool {
        self.m == 0
    }
    fn add(self, o: Self) -> Self {
        let both = self.m & o.m;
        let same = !(self.s ^ o.s);
        let only_a = self.m & !o.m;
        let only_b = o.m & !self.m;
        let doubled = both & same;
        F3 {
            m: only_a | only_b | doubled,
            s: (only_a & self.s) | (only_b & o.s) | (doubled & !self.s),
        }
    }
    fn neg(self) -> Self {
        F3 {
            m: self.m,
            s: self.s ^ self.m,
        }
    }
    fn scale(self, c: u32) -> Self {
        match c % 3 {
            0 => Self::zero(),
            1 => self,
            _ => self.neg(),
        }
    }
    fn shl(self, k: u32) -> Self {
        F3 {
            m: self.m << k,
            s: self.s << k,
        }
    }
    fn coeff(self, i: u32) -> u32 {
        (((self.m >> i) & 1) + ((self.s >> i) & 1)) as u32
    }
    fn monomial(c: u32, i: u32) -> Self {
        match c % 3 {
            0 => Self::zero(),
            1 => F3 { m: 1 << i, s: 0 },
            _ => F3 { m: 1 << i, s: 1 << i },
        }
    }
    fn degree(self) -> Option<u32> {
        (self.m != 0).then(|| 63 - self.m.leading_zeros())
    }
    fn frob(self) -> Self {
        F3 {
            m: spread3(self.m),
            s: spread3(self.s),
        }
    }
    fn support(self) -> u64 {
        self.m
    }
    fn masked(self, mask: u64) -> Self {
        F3 {
            m: self.m & mask,
            s: self.s & mask,
        }
    }
}

/// Precomputed data for the operator `x ↦ t·x + Σ ā_i·x^{p^i}` on `F_p[t]/π`.
struct Operator<W: Packed> {
    pi: W,
    d: u32,
    /// `t^{p·i} mod π` for `i < d`, the columns of the Frobenius matrix.
    frob: [W; 32],
    a: Vec<Coefficient<W>>,
}

enum Coefficient<W> {
    Constant(u32),
    Poly(W),
}

impl<W: Packed> Operator<W> {
    fn new(pi: &[u32], a: &[FqPoly]) -> Self {
        let d = (pi.len() - 1) as u32;
        let piw = W::from_coeffs(pi);
        let mut frob = [W::zero(); 32];
        let mut cur = W::monomial(1, 0);
        for slot in frob.iter_mut().take(d as usize) {
            *slot = cur;
            cur = cur.shl(W::P).rem(piw, d);
        }
        let a = a
            .iter()
            .map(|c| {
                let r = W::from_coeffs(c).rem(piw, d);
                match r.degree() {
                    None => Coefficient::Constant(0),
                    Some(0) => Coefficient::Constant(r.coeff(0)),
                    Some(_) => Coefficient::Poly(r),
                }
            })
            .collect();
        Operator { pi: piw, d, frob, a }
    }

    fn frobenius(&self, x: W) -> W {
        let mut acc = W::zero();
        let mut bits = x.support();
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            acc = acc.add(self.frob[i as usize].scale(x.coeff(i)));
        }
        acc
    }

    fn apply(&self, x: W) -> W {
        let mut acc = x.shl(1).rem(self.pi, self.d);
        let mut y = x;
        for a in &self.a {
            y = self.frobenius(y);
            acc = match a {
                Coefficient::Constant(0) => acc,
                Coefficient::Constant(c) => acc.add(y.scale(*c)),
                Coefficient::Poly(a) => acc.add(a.mul(y).rem(self.pi, self.d)),
            };
        }
        acc
    }
}

/// Characteristic polynomial (low degree first, monic, length `d + 1`) of
/// `x ↦ t·x + Σ_i a_i·x^{p^i}` on `F_p[t]/π`, with `a = [a_1, …, a_r]`.
pub fn residue_charpoly<W: Packed>(pi: &[u32], a: &[FqPoly]) -> FqPoly {
    let d = pi.len() - 1;
    assert!(d >= 1 && d <= W::MAX_DEGREE, "modulus degree {d} outside the packed range");
    krylov_charpoly(&Operator::<W>::new(pi, a))
}

fn poly_mul_mod_p(a: &[u32], b: &[u32], p: u32) -> FqPoly {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Bit offset of the combination part in a Krylov row.
const COMB: u32 = 32;
const LOW: u64 = (1 << COMB) - 1;

/// Characteristic polynomial as the product of the minimal polynomials of
/// successive Krylov blocks, each taken modulo the span of the previous ones.
///
/// Rows of the echelon form carry a vector in the low bits and, for the
/// current block, its combination of Krylov vectors from bit [`COMB`] on.
fn krylov_charpoly<W: Packed>(op: &Operator<W>) -> FqPoly {
    let d = op.d as usize;
    let mut rows = [W::zero(); COMB as usize];
    let mut have = 0u64;
    let full = (1u64 << d) - 1;
    let mut charpoly = vec![1u32];
    while have != full {
        let start = (!have & full).trailing_zeros();
        let mut v = W::monomial(1, start);
        let mut k = 0u32;
        loop {
            let mut w = v.add(W::monomial(1, COMB + k));
            let stored = loop {
                let low = w.support() & LOW;
                if low == 0 {
                    break false;
                }
                let piv = 63 - low.leading_zeros();
                let c = w.coeff(piv);
                if have >> piv & 1 == 1 {
                    w = w.sub(rows[piv as usize].scale(c));
                } else {
                    let inv = if c == 1 { 1 } else { W::P - 1 };
                    rows[piv as usize] = w.scale(inv);
                    have |= 1 << piv;
                    break true;
                }
            };
            if !stored {
                let block: FqPoly = (0..=k).map(|i| w.coeff(COMB + i)).collect();
                charpoly = if charpoly.len() == 1 { block } else { poly_mul_mod_p(&charpoly, &block, W::P) };
                for row in rows.iter_mut() {
                    *row = row.masked(LOW);
                }
                break;
            }
            k += 1;
            v = op.apply(v);
        }
    }
    charpoly
}
