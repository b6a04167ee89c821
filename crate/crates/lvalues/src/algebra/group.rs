//! Finite abelian groups presented as products of cyclic groups.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// `Z/m_1 × … × Z/m_k`; elements are indexed in mixed radix with the first
/// factor least significant. Factors of order 1 are dropped.
#[derive(Clone)]
pub struct AbelianGroup {
    orders: Vec<usize>,
    size: usize,
    table: Arc<Vec<u32>>,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for AbelianGroup {}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Decomposition `G = P × Δ` into the `p`-Sylow subgroup and its complement,
/// with the embeddings of both factors into `G` by element index.
#[derive(Clone, Debug)]
pub struct SylowSplit {
    pub p_part: AbelianGroup,
    pub delta: AbelianGroup,
    pub p_embed: Vec<usize>,
    pub delta_embed: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: &[usize]) -> Self {
        let orders: Vec<usize> = orders.iter().copied().filter(|&m| m > 1).collect();
        let size = orders.iter().product::<usize>();
        let mut table = vec![0u32; size * size];
        let mut g = AbelianGroup {
            orders,
            size,
            table: Arc::new(Vec::new()),
        };
        for i in 0..size {
            let ei = g.exponents(i);
            for j in 0..size {
                let ej = g.exponents(j);
                let e: Vec<usize> = ei.iter().zip(&ej).zip(&g.orders).map(|((a, b), m)| (a + b) % m).collect();
                table[i * size + j] = g.index(&e) as u32;
            }
        }
        g.table = Arc::new(table);
        g
    }

    pub fn trivial() -> Self {
        Self::new(&[])
    }

    pub fn cyclic(m: usize) -> Self {
        Self::new(&[m])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index(&self, e: &[usize]) -> usize {
        let mut idx = 0;
        for (k, &m) in self.orders.iter().enumerate().rev() {
            idx = idx * m + e.get(k).copied().unwrap_or(0) % m;
        }
        idx
    }

    pub fn exponents(&self, mut i: usize) -> Vec<usize> {
        let mut e = Vec::with_capacity(self.orders.len());
        for &m in &self.orders {
            e.push(i % m);
            i /= m;
        }
        e
    }

    /// Group law on indices.
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size + j] as usize
    }

    /// The flattened multiplication table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn inverse(&self, i: usize) -> usize {
        let e: Vec<usize> = self.exponents(i).iter().zip(&self.orders).map(|(a, m)| (m - a) % m).collect();
        self.index(&e)
    }

    pub fn pow(&self, i: usize, k: u64) -> usize {
        let e: Vec<usize> = self
            .exponents(i)
            .iter()
            .zip(&self.orders)
            .map(|(&a, &m)| ((a as u64 * (k % m as u64)) % m as u64) as usize)
            .collect();
        self.index(&e)
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, i);
            k += 1;
        }
        k
    }

    /// Index of the `j`-th standard generator.
    pub fn generator(&self, j: usize) -> usize {
        let mut e = vec![0; self.orders.len()];
        e[j] = 1;
        self.index(&e)
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.orders.len()).map(|j| self.generator(j)).collect()
    }

    /// Sorted indices of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut elems = vec![0];
        let mut k = 0;
        while k < elems.len() {
            let x = elems[k];
            for &g in gens {
                let y = self.op(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            k += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Splits off the `p`-Sylow subgroup.
    pub fn split_sylow(&self, p: usize) -> SylowSplit {
        let mut p_orders = Vec::new();
        let mut d_orders = Vec::new();
        for &m in &self.orders {
            let mut pa = 1;
            let mut rest = m;
            while rest % p == 0 {
                rest /= p;
                pa *= p;
            }
            p_orders.push(pa);
            d_orders.push(rest);
        }
        let embed = |sub: &[usize], other: &[usize]| -> Vec<usize> {
            let sg = AbelianGroup::new(sub);
            let mut out = Vec::with_capacity(sg.size());
            for i in 0..sg.size() {
                let mut e = vec![0; self.orders.len()];
                let mut k = 0;
                for (j, &m) in sub.iter().enumerate() {
                    if m > 1 {
                        e[j] = sg.exponents(i)[k] * other[j];
                        k += 1;
                    }
                }
                out.push(self.index(&e));
            }
            out
        };
        SylowSplit {
            p_part: AbelianGroup::new(&p_orders),
            delta: AbelianGroup::new(&d_orders),
            p_embed: embed(&p_orders, &d_orders),
            delta_embed: embed(&d_orders, &p_orders),
        }
    }

    /// Canonical text of an element, e.g. `(1,0)`; `()` in the trivial group.
    pub fn format_element(&self, i: usize) -> String {
        let e: Vec<String> = self.exponents(i).iter().map(|x| x.to_string()).collect();
        format!("({})", e.join(","))
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidInput(format!("group element '{text}'")))?;
        let parts: Vec<&str> = if inner.trim().is_empty() { Vec::new() } else { inner.split(',').collect() };
        if parts.len() != self.orders.len() {
            return Err(Error::InvalidInput(format!("group element '{text}'")));
        }
        let mut e = Vec::new();
        for (part, &m) in parts.iter().zip(&self.orders) {
            let x: usize = part.trim().parse().map_err(|_| Error::InvalidInput(format!("group element '{text}'")))?;
            if x >= m {
                return Err(Error::InvalidInput(format!("group element '{text}'")));
            }
            e.push(x);
        }
        Ok(self.index(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders_by_counting(g: &AbelianGroup) -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.size()).map(|i| g.element_order(i)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn split_examples() {
        let s = AbelianGroup::trivial().split_sylow(2);
        assert!(s.p_part.is_trivial() && s.delta.is_trivial());
        let s = AbelianGroup::new(&[2, 3]).split_sylow(2);
        assert_eq!(s.p_part.orders(), &[2]);
        assert_eq!(s.delta.orders(), &[3]);
        let g = AbelianGroup::new(&[4, 6]);
        let s = g.split_sylow(2);
        assert_eq!(s.p_part.orders(), &[4, 2]);
        assert_eq!(s.delta.orders(), &[3]);
        let p_elems: Vec<usize> = (0..g.size()).filter(|&i| g.element_order(i).is_power_of_two()).collect();
        let mut emb = s.p_embed.clone();
        emb.sort_unstable();
        assert_eq!(emb, p_elems);
        let d_elems: Vec<usize> = (0..g.size()).filter(|&i| g.element_order(i) % 2 == 1).collect();
        let mut emb = s.delta_embed.clone();
        emb.sort_unstable();
        assert_eq!(emb, d_elems);
    }

    #[test]
    fn embeddings_are_homomorphisms_and_reassemble() {
        let g = AbelianGroup::new(&[12, 2]);
        let s = g.split_sylow(2);
        for a in 0..s.p_part.size() {
            for b in 0..s.p_part.size() {
                assert_eq!(s.p_embed[s.p_part.op(a, b)], g.op(s.p_embed[a], s.p_embed[b]));
            }
        }
        let mut all: Vec<usize> = Vec::new();
        for &x in &s.p_embed {
            for &y in &s.delta_embed {
                all.push(g.op(x, y));
            }
        }
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), g.size());
        let _ = orders_by_counting(&g);
    }

    #[test]
    fn element_text() {
        let g = AbelianGroup::new(&[2, 3]);
        for i in 0..g.size() {
            assert_eq!(g.parse_element(&g.format_element(i)).unwrap(), i);
        }
        assert_eq!(AbelianGroup::trivial().format_element(0), "()");
    }
}
