//! The group ring `R = F_q[G]` of a finite abelian group, its character
//! idempotents and its unit group.

use std::fmt;
use std::sync::Arc;

use super::extfield::ExtField;
use super::fq::FqField;
use super::group::{AbelianGroup, SylowSplit};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Element of `F_q[G]`, dense over the group elements in index order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupRingElement(pub Vec<u32>);

/// Idempotent `e_χ̂` attached to a Frobenius orbit of `Δ`-characters.
#[derive(Clone, Debug)]
pub struct CharacterIdempotent {
    /// Lexicographically least character in the orbit, as exponents
    /// `k_j` with `χ(δ) = ζ^{Σ k_j δ_j e/m_j}`.
    pub representative: Vec<usize>,
    /// Orbit length, which is the `F_q`-dimension of `e_χ̂·F_q[Δ]`.
    pub degree: usize,
    pub element: GroupRingElement,
}

struct GroupRingData {
    field: FqField,
    group: AbelianGroup,
    split: SylowSplit,
    delta_of: Vec<usize>,
    idempotents: Vec<CharacterIdempotent>,
    nil_index: usize,
}

/// Ring context for `F_q[G]`.
#[derive(Clone)]
pub struct GroupRing {
    data: Arc<GroupRingData>,
}

impl PartialEq for GroupRing {
    fn eq(&self, other: &Self) -> bool {
        self.data.field == other.data.field && self.data.group == other.data.group
    }
}

impl fmt::Debug for GroupRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{:?}]", self.data.field.q(), self.data.group)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn multiplicative_order(q: usize, e: usize) -> usize {
    if e == 1 {
        return 1;
    }
    let mut x = q % e;
    let mut k = 1;
    while x != 1 {
        x = x * q % e;
        k += 1;
    }
    k
}

/// Primitive idempotents of `F_q[Δ]` for `p ∤ |Δ|`, computed from character
/// orbit sums in a splitting field and descended to `F_q`.
pub fn primitive_idempotents(delta: &AbelianGroup, field: &FqField) -> Result<Vec<CharacterIdempotent>> {
    let p = field.p() as usize;
    let n = delta.size();
    if n % p == 0 {
        return Err(Error::InvalidInput(format!("p = {p} divides |Δ| = {n}")));
    }
    let orders = delta.orders();
    let e = orders.iter().fold(1, |acc, &m| acc / gcd(acc, m) * m);
    let m = multiplicative_order(field.q() as usize, e);
    let ext = ExtField::of_degree(field.clone(), m);
    let zeta = ext.root_of_unity(e as u128)?;
    let zeta_pows: Vec<Vec<u32>> = {
        let mut v = Vec::with_capacity(e);
        let mut x = ext.one();
        for _ in 0..e {
            v.push(x.clone());
            x = ext.mul(&x, &zeta);
        }
        v
    };
    let n_inv = field.inv(field.from_i64(n as i64)).expect("|Δ| invertible");
    let q = field.q() as usize;
    let mut done = vec![false; n];
    let mut out = Vec::new();
    for k_idx in 0..n {
        if done[k_idx] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut cur = k_idx;
        while !done[cur] {
            done[cur] = true;
            orbit.push(cur);
            let k = delta.exponents(cur);
            let next: Vec<usize> = k.iter().zip(orders).map(|(&kj, &mj)| kj * q % mj).collect();
            cur = delta.index(&next);
        }
        let representative = orbit.iter().map(|&c| delta.exponents(c)).min().unwrap();
        let mut coeffs = vec![0u32; n];
        for d_idx in 0..n {
            let d_inv = delta.inverse(d_idx);
            let dexp = delta.exponents(d_inv);
            let mut acc = ext.zero();
            for &c in &orbit {
                let k = delta.exponents(c);
                let mut expo = 0usize;
                for j in 0..orders.len() {
                    expo += k[j] * dexp[j] * (e / orders[j]);
                }
                acc = ext.add(&acc, &zeta_pows[expo % e]);
            }
            let c = ext.to_base(&acc).expect("character idempotent descends to F_q");
            coeffs[d_idx] = field.mul(&c, &n_inv);
        }
        out.push(CharacterIdempotent {
            representative,
            degree: orbit.len(),
            element: GroupRingElement(coeffs),
        });
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

impl GroupRing {
    pub fn new(field: FqField, group: AbelianGroup) -> Self {
        let p = field.p() as usize;
        let split = group.split_sylow(p);
        let mut delta_of = vec![0; group.size()];
        for &x in &split.p_embed {
            for &y in &split.delta_embed {
                delta_of[group.op(x, y)] = y;
            }
        }
        let idem_delta = primitive_idempotents(&split.delta, &field).expect("Δ has order prime to p");
        let idempotents = idem_delta
            .into_iter()
            .map(|ci| {
                let mut v = vec![0u32; group.size()];
                for (i, &c) in ci.element.0.iter().enumerate() {
                    v[split.delta_embed[i]] = c;
                }
                CharacterIdempotent {
                    representative: ci.representative,
                    degree: ci.degree,
                    element: GroupRingElement(v),
                }
            })
            .collect();
        let mut ring = GroupRing {
            data: Arc::new(GroupRingData {
                field,
                group,
                split,
                delta_of,
                idempotents,
                nil_index: 1,
            }),
        };
        let nil = ring.compute_nil_index();
        Arc::get_mut(&mut ring.data).unwrap().nil_index = nil;
        ring
    }

    /// `F_q[1] = F_q`.
    pub fn trivial(field: FqField) -> Self {
        Self::new(field, AbelianGroup::trivial())
    }

    pub fn field(&self) -> &FqField {
        &self.data.field
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.data.group
    }

    pub fn sylow(&self) -> &SylowSplit {
        &self.data.split
    }

    pub fn order(&self) -> usize {
        self.data.group.size()
    }

    pub fn idempotents(&self) -> &[CharacterIdempotent] {
        &self.data.idempotents
    }

    /// Smallest `k` with `I_P^k = 0`.
    pub fn nil_index(&self) -> usize {
        self.data.nil_index
    }

    fn compute_nil_index(&self) -> usize {
        let gens: Vec<GroupRingElement> = self
            .data
            .split
            .p_part
            .generators()
            .iter()
            .map(|&g| self.sub(&self.basis(self.data.split.p_embed[g]), &self.one()))
            .collect();
        if gens.is_empty() {
            return 1;
        }
        let mut span: Vec<GroupRingElement> = Vec::new();
        for g in 0..self.order() {
            for x in &gens {
                span.push(self.mul(&self.basis(g), x));
            }
        }
        let mut span = self.fq_basis(span);
        let mut k = 1;
        while !span.is_empty() {
            let mut next = Vec::new();
            for v in &span {
                for x in &gens {
                    next.push(self.mul(v, x));
                }
            }
            span = self.fq_basis(next);
            k += 1;
        }
        k
    }

    /// An `F_q`-basis of the span of the given elements (row echelon form).
    pub fn fq_basis(&self, vecs: Vec<GroupRingElement>) -> Vec<GroupRingElement> {
        let f = &self.data.field;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for v in vecs {
            let mut r = v.0;
            for (row, &pc) in rows.iter().zip(&pivots) {
                if r[pc] != 0 {
                    let c = r[pc];
                    for (x, y) in r.iter_mut().zip(row) {
                        *x = f.sub(x, &f.mul(&c, y));
                    }
                }
            }
            if let Some(pc) = r.iter().position(|&x| x != 0) {
                let inv = f.inv(r[pc]).unwrap();
                for x in r.iter_mut() {
                    *x = f.mul(x, &inv);
                }
                for row in rows.iter_mut() {
                    if row[pc] != 0 {
                        let c = row[pc];
                        for (x, y) in row.iter_mut().zip(&r) {
                            *x = f.sub(x, &f.mul(&c, y));
                        }
                    }
                }
                rows.push(r);
                pivots.push(pc);
            }
        }
        rows.into_iter().map(GroupRingElement).collect()
    }

    /// The basis element `[g]`.
    pub fn basis(&self, g: usize) -> GroupRingElement {
        let mut v = vec![0; self.order()];
        v[g] = 1;
        GroupRingElement(v)
    }

    /// The scalar `c·1`.
    pub fn scalar(&self, c: u32) -> GroupRingElement {
        let mut v = vec![0; self.order()];
        v[0] = c;
        GroupRingElement(v)
    }

    pub fn scale(&self, c: u32, x: &GroupRingElement) -> GroupRingElement {
        let f = &self.data.field;
        GroupRingElement(x.0.iter().map(|a| f.mul(&c, a)).collect())
    }

    /// Returns the scalar if `x ∈ F_q·1`.
    pub fn as_scalar(&self, x: &GroupRingElement) -> Option<u32> {
        if x.0[1..].iter().all(|&c| c == 0) {
            Some(x.0[0])
        } else {
            None
        }
    }

    /// Augmentation `s_G`.
    pub fn augmentation(&self, x: &GroupRingElement) -> u32 {
        let f = &self.data.field;
        x.0.iter().fold(0, |acc, c| f.add(&acc, c))
    }

    /// Augmentation along `P`: `F_q[P × Δ] → F_q[Δ] ⊆ F_q[G]`.
    pub fn augment_p(&self, x: &GroupRingElement) -> GroupRingElement {
        let f = &self.data.field;
        let mut v = vec![0; self.order()];
        for (g, c) in x.0.iter().enumerate() {
            if *c != 0 {
                let d = self.data.delta_of[g];
                v[d] = f.add(&v[d], c);
            }
        }
        GroupRingElement(v)
    }

    /// Whether `x` is a unit, by the per-component augmentation criterion.
    pub fn is_unit(&self, x: &GroupRingElement) -> bool {
        let a0 = self.augment_p(x);
        self.data.idempotents.iter().all(|ci| !self.is_zero(&self.mul(&a0, &ci.element)))
    }

    /// Inverse in `F_q[G]`, per idempotent component: invert the `Δ`-part in
    /// the component field, then sum the terminating geometric series in the
    /// nilpotent remainder.
    pub fn invert(&self, x: &GroupRingElement) -> Result<GroupRingElement> {
        let q = self.data.field.q() as u64;
        let a0 = self.augment_p(x);
        let mut inv = self.zero();
        for ci in &self.data.idempotents {
            let e = &ci.element;
            let c0 = self.mul(&a0, e);
            if self.is_zero(&c0) {
                return Err(Error::NotAUnit(self.format(x)));
            }
            let k = q.pow(ci.degree as u32) - 2;
            let b0 = self.mul(&self.pow(&c0, k), e);
            let ab = self.mul(&self.mul(x, e), &b0);
            let n = self.sub(e, &ab);
            let mut series = e.clone();
            let mut term = e.clone();
            for _ in 1..self.nil_index() {
                term = self.mul(&term, &n);
                if self.is_zero(&term) {
                    break;
                }
                self.add_assign(&mut series, &term);
            }
            let comp = self.mul(&b0, &series);
            self.add_assign(&mut inv, &comp);
        }
        Ok(inv)
    }

    /// `e_I = |I|^{-1} Σ_{σ∈I} σ` for a subgroup given by element indices.
    pub fn inertia_idempotent(&self, subgroup: &[usize]) -> Result<GroupRingElement> {
        let f = &self.data.field;
        let n = subgroup.len();
        if n % f.p() as usize == 0 {
            return Err(Error::WildInertia(n));
        }
        let c = f.inv(f.from_i64(n as i64)).unwrap();
        let mut v = vec![0; self.order()];
        for &g in subgroup {
            v[g] = c;
        }
        Ok(GroupRingElement(v))
    }

    pub fn random<G: rand::Rng>(&self, rng: &mut G) -> GroupRingElement {
        let q = self.data.field.q();
        GroupRingElement((0..self.order()).map(|_| rng.gen_range(0..q)).collect())
    }

    /// All elements, for exhaustive tests on tiny rings.
    pub fn all_elements(&self) -> Vec<GroupRingElement> {
        let q = self.data.field.q() as usize;
        let n = self.order();
        let total = q.pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0u32; n];
                for c in v.iter_mut() {
                    *c = (idx % q) as u32;
                    idx /= q;
                }
                GroupRingElement(v)
            })
            .collect()
    }

    /// Support pairs `(group element, coefficient)` sorted lexicographically
    /// by exponent tuple.
    pub fn pairs(&self, x: &GroupRingElement) -> Vec<(Vec<usize>, u32)> {
        let g = &self.data.group;
        let mut v: Vec<(Vec<usize>, u32)> =
            x.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (g.exponents(i), c)).collect();
        v.sort();
        v
    }

    /// Canonical text `[(e):c;…]`.
    pub fn format(&self, x: &GroupRingElement) -> String {
        let g = &self.data.group;
        let f = &self.data.field;
        let parts: Vec<String> = self
            .pairs(x)
            .into_iter()
            .map(|(e, c)| format!("{}:{}", g.format_element(g.index(&e)), f.format(c)))
            .collect();
        format!("[{}]", parts.join(";"))
    }

    pub fn parse(&self, text: &str) -> Result<GroupRingElement> {
        let bad = || Error::InvalidInput(format!("group ring element '{text}'"));
        let t = text.trim();
        let inner = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
        let mut v = vec![0u32; self.order()];
        if inner.trim().is_empty() {
            return Ok(GroupRingElement(v));
        }
        for part in inner.split(';') {
            let (ge, fe) = part.rsplit_once(':').ok_or_else(bad)?;
            let gi = self.data.group.parse_element(ge)?;
            let c = self.data.field.parse(fe)?;
            v[gi] = self.data.field.add(&v[gi], &c);
        }
        Ok(GroupRingElement(v))
    }

    /// JSON form: list of `[exponents, field element]` pairs.
    pub fn to_json(&self, x: &GroupRingElement) -> serde_json::Value {
        let f = &self.data.field;
        serde_json::Value::Array(
            self.pairs(x)
                .into_iter()
                .map(|(e, c)| serde_json::json!([e, f.format(c)]))
                .collect(),
        )
    }

    /// Splits `Σ_k x_k t^k` into one `F_q`-polynomial per group element.
    pub fn poly_components(&self, x: &[GroupRingElement]) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.order()];
        for (g, comp) in out.iter_mut().enumerate() {
            *comp = x.iter().map(|c| c.0[g]).collect();
            while comp.last() == Some(&0) {
                comp.pop();
            }
        }
        out
    }

    /// Inverse of [`GroupRing::poly_components`].
    pub fn poly_from_components(&self, comps: &[Vec<u32>]) -> Vec<GroupRingElement> {
        let len = comps.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![self.zero(); len];
        for (g, comp) in comps.iter().enumerate() {
            for (k, &c) in comp.iter().enumerate() {
                out[k].0[g] = c;
            }
        }
        out
    }
}

impl Ring for GroupRing {
    type El = GroupRingElement;

    fn zero(&self) -> GroupRingElement {
        GroupRingElement(vec![0; self.order()])
    }

    fn one(&self) -> GroupRingElement {
        self.scalar(1)
    }

    fn is_zero(&self, a: &GroupRingElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        let f = &self.data.field;
        GroupRingElement(a.0.iter().zip(&b.0).map(|(x, y)| f.add(x, y)).collect())
    }

    fn neg(&self, a: &GroupRingElement) -> GroupRingElement {
        let f = &self.data.field;
        GroupRingElement(a.0.iter().map(|x| f.neg(x)).collect())
    }

    fn sub(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        let f = &self.data.field;
        GroupRingElement(a.0.iter().zip(&b.0).map(|(x, y)| f.sub(x, y)).collect())
    }

    fn add_assign(&self, a: &mut GroupRingElement, b: &GroupRingElement) {
        let f = &self.data.field;
        for (x, y) in a.0.iter_mut().zip(&b.0) {
            *x = f.add(x, y);
        }
    }

    fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        let mut out = self.zero();
        self.mul_acc(&mut out, a, b);
        out
    }

    fn mul_acc(&self, acc: &mut GroupRingElement, a: &GroupRingElement, b: &GroupRingElement) {
        let f = &self.data.field;
        let n = self.order();
        if n == 1 {
            acc.0[0] = f.add(&acc.0[0], &f.mul(&a.0[0], &b.0[0]));
            return;
        }
        let table = self.data.group.table();
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            let row = &table[i * n..(i + 1) * n];
            for (j, y) in b.0.iter().enumerate() {
                if *y != 0 {
                    let k = row[j] as usize;
                    acc.0[k] = f.add(&acc.0[k], &f.mul(x, y));
                }
            }
        }
    }

    fn from_int(&self, n: i64) -> GroupRingElement {
        self.scalar(self.data.field.from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u32, orders: &[usize]) -> GroupRing {
        GroupRing::new(FqField::of_order(q).unwrap(), AbelianGroup::new(orders))
    }

    #[test]
    fn idempotent_examples() {
        let r = ring(3, &[2]);
        let ids: Vec<String> = r.idempotents().iter().map(|c| r.format(&c.element)).collect();
        assert_eq!(ids, vec!["[(0):2;(1):2]", "[(0):2;(1):1]"]);
        let r = ring(2, &[3]);
        let degs: Vec<usize> = r.idempotents().iter().map(|c| c.degree).collect();
        assert_eq!(degs, vec![1, 2]);
        let r = ring(2, &[1]);
        assert_eq!(r.idempotents().len(), 1);
        assert_eq!(r.idempotents()[0].element, r.one());
    }

    #[test]
    fn idempotent_completeness() {
        for &q in &[2u32, 3, 4] {
            for orders in [vec![3], vec![5], vec![7], vec![3, 3], vec![2, 4], vec![2, 3], vec![4, 6], vec![5, 4]] {
                let r = ring(q, &orders);
                let ids = r.idempotents();
                let mut sum = r.zero();
                for (i, a) in ids.iter().enumerate() {
                    assert_eq!(r.mul(&a.element, &a.element), a.element);
                    for b in ids.iter().skip(i + 1) {
                        assert!(r.is_zero(&r.mul(&a.element, &b.element)));
                    }
                    sum = r.add(&sum, &a.element);
                }
                assert_eq!(sum, r.one());
            }
        }
    }

    #[test]
    fn unit_criterion_matches_exhaustive_search() {
        for (q, orders) in [(2u32, vec![2usize]), (2, vec![2, 2]), (3, vec![3]), (3, vec![2]), (2, vec![3])] {
            let r = ring(q, &orders);
            let all = r.all_elements();
            for x in &all {
                let has_inverse = all.iter().any(|y| r.mul(x, y) == r.one());
                assert_eq!(r.is_unit(x), has_inverse, "{}", r.format(x));
                match r.invert(x) {
                    Ok(y) => assert_eq!(r.mul(x, &y), r.one()),
                    Err(_) => assert!(!has_inverse),
                }
            }
        }
    }

    #[test]
    fn nil_index_values() {
        assert_eq!(ring(2, &[2]).nil_index(), 2);
        assert_eq!(ring(2, &[4]).nil_index(), 4);
        assert_eq!(ring(2, &[2, 2]).nil_index(), 3);
        assert_eq!(ring(3, &[2]).nil_index(), 1);
        assert_eq!(ring(3, &[3, 2]).nil_index(), 3);
    }

    #[test]
    fn inertia_idempotents() {
        let r = ring(3, &[2]);
        let e = r.inertia_idempotent(&[0, 1]).unwrap();
        assert_eq!(r.format(&e), "[(0):2;(1):2]");
        assert_eq!(r.mul(&e, &e), e);
        assert_eq!(r.mul(&r.basis(1), &e), e);
        assert_eq!(r.inertia_idempotent(&[0]).unwrap(), r.one());
        let r2 = ring(2, &[2]);
        assert_eq!(r2.inertia_idempotent(&[0, 1]), Err(Error::WildInertia(2)));
    }

    #[test]
    fn text_round_trip() {
        let r = ring(4, &[2, 3]);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        for _ in 0..20 {
            let x = r.random(&mut rng);
            assert_eq!(r.parse(&r.format(&x)).unwrap(), x);
        }
        assert_eq!(r.format(&r.zero()), "[]");
    }
}
