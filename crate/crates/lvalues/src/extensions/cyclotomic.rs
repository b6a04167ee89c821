//! Carlitz cyclotomic extensions `K = F(λ_f)` for prime-power conductors
//! with cyclic `(A/f)^×`.

use super::{
    trivial_extension, ExtensionData, InfinityModel, Provenance, RamifiedPrime, Ramification, TamingData,
};
use crate::algebra::{FqField, FqPoly, GroupRing, PolyRing, Ring};
use crate::algebra::AbelianGroup;
use crate::drinfeld::{phi_eval, DrinfeldModule, Fraction};
use crate::error::{Error, Result};

/// Number of frame candidates examined per coefficient degree.
const FRAME_SEARCH_BUDGET: u64 = 20_000;

/// Largest `t`-degree of the frame coordinates tried by the random phase.
const FRAME_MAX_COEFF_DEGREE: usize = 2;

/// Frame candidates `Σ c_j λ^j`: every nonzero constant choice in index
/// order when there are few enough, then seeded random choices with
/// coordinates of growing degree.
fn frame_candidates(q: u64, n: usize, seed: u64) -> impl Iterator<Item = Vec<FqPoly>> {
    use rand::{Rng, SeedableRng};
    let exhaustive = q.checked_pow(n as u32).filter(|&c| c <= FRAME_SEARCH_BUDGET);
    let constants = (1..exhaustive.unwrap_or(0)).map(move |idx| {
        let mut theta = vec![Vec::new(); n];
        let mut x = idx;
        for c in theta.iter_mut() {
            if x % q != 0 {
                *c = vec![(x % q) as u32];
            }
            x /= q;
        }
        theta
    });
    let first_degree = if exhaustive.is_some() { 1 } else { 0 };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let random = (first_degree..=FRAME_MAX_COEFF_DEGREE).flat_map(move |deg| {
        let batch: Vec<Vec<FqPoly>> = (0..FRAME_SEARCH_BUDGET)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let mut c: Vec<u32> = (0..=deg).map(|_| rng.gen_range(0..q as u32)).collect();
                        while c.last() == Some(&0) {
                            c.pop();
                        }
                        c
                    })
                    .collect()
            })
            .collect();
        batch
    });
    constants.chain(random)
}

/// Arithmetic in `A[λ] = A[x]/(Φ_f)`; elements are coefficient vectors of
/// length `n = deg Φ_f` over `A`.
#[derive(Clone, Debug)]
pub struct CyclotomicOrder {
    pa: PolyRing<FqField>,
    px: PolyRing<PolyRing<FqField>>,
    phi: Vec<FqPoly>,
    n: usize,
}

impl CyclotomicOrder {
    pub fn new(field: &FqField, phi: Vec<FqPoly>) -> Self {
        let pa = PolyRing::new(field.clone());
        let px = PolyRing::new(pa.clone());
        let n = phi.len() - 1;
        CyclotomicOrder { pa, px, phi, n }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn defining_poly(&self) -> &[FqPoly] {
        &self.phi
    }

    fn pad(&self, mut a: Vec<FqPoly>) -> Vec<FqPoly> {
        a.resize(self.n, Vec::new());
        a
    }

    pub fn reduce(&self, a: &[FqPoly]) -> Vec<FqPoly> {
        self.pad(self.px.rem_monic(a, &self.phi))
    }

    pub fn mul(&self, a: &[FqPoly], b: &[FqPoly]) -> Vec<FqPoly> {
        self.reduce(&self.px.mul(&a.to_vec(), &b.to_vec()))
    }

    pub fn add(&self, a: &[FqPoly], b: &[FqPoly]) -> Vec<FqPoly> {
        a.iter().zip(b).map(|(x, y)| self.pa.add(x, y)).collect()
    }

    pub fn scale(&self, c: &[u32], a: &[FqPoly]) -> Vec<FqPoly> {
        a.iter().map(|x| self.pa.mul(&c.to_vec(), x)).collect()
    }

    pub fn one(&self) -> Vec<FqPoly> {
        let mut v = vec![Vec::new(); self.n];
        v[0] = vec![1];
        v
    }

    pub fn lambda(&self) -> Vec<FqPoly> {
        let mut v = vec![Vec::new(); self.n];
        if self.n > 1 {
            v[1] = vec![1];
        } else {
            v[0] = self.pa.neg(&self.phi[0]);
        }
        v
    }

    pub fn pow(&self, a: &[FqPoly], mut e: u64) -> Vec<FqPoly> {
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

    /// `Σ_j y_j·x^j` for the powers `x^j` given in `powers`.
    pub fn substitute(&self, y: &[FqPoly], powers: &[Vec<FqPoly>]) -> Vec<FqPoly> {
        let mut acc = vec![Vec::new(); self.n];
        for (c, p) in y.iter().zip(powers) {
            if !c.is_empty() {
                acc = self.add(&acc, &self.scale(c, p));
            }
        }
        acc
    }
}

/// `C_a(x)` as a polynomial in `x` with coefficients in `A`.
pub fn carlitz_polynomial(field: &FqField, a: &[u32]) -> Vec<FqPoly> {
    let c = DrinfeldModule::carlitz(field.clone());
    let tau = phi_eval(&c, a);
    let q = field.q() as usize;
    let mut out = vec![Vec::new(); q.pow(tau.degree() as u32) + 1];
    for (i, coeff) in tau.coeffs.into_iter().enumerate() {
        out[q.pow(i as u32)] = coeff;
    }
    out
}

/// `(π, k)` with `f = π^k`, `π` monic irreducible.
pub fn prime_power_root(field: &FqField, f: &[u32]) -> Option<(FqPoly, usize)> {
    let pa = PolyRing::new(field.clone());
    let deg = pa.degree(f)?;
    if deg == 0 || pa.lead(f) != 1 {
        return None;
    }
    for d in 1..=deg {
        if deg % d != 0 {
            continue;
        }
        let count = (field.q() as u64).pow(d as u32);
        for idx in 0..count {
            let cand = pa.monic_from_index(d, idx);
            if !pa.rem(f, &cand).is_empty() || !pa.is_irreducible(&cand) {
                continue;
            }
            let k = deg / d;
            return (pa.pow(&cand, k as u64) == f).then_some((cand, k));
        }
    }
    None
}

/// Determinant of a square matrix over `A` together with the solution of
/// `C·x = rhs`, both over `F_q(t)`; `None` if `C` is singular.
pub fn solve_over_fractions(pa: &PolyRing<FqField>, c: &[Vec<FqPoly>], rhs: &[FqPoly]) -> Option<(Fraction, Vec<Fraction>)> {
    let n = c.len();
    let mut m: Vec<Vec<Fraction>> = c
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<Fraction> = row.iter().map(|x| Fraction::from_poly(pa, x)).collect();
            r.push(Fraction::from_poly(pa, b));
            r
        })
        .collect();
    let mut det = Fraction::one();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        if pivot != col {
            m.swap(pivot, col);
            det = det.neg(pa);
        }
        det = det.mul(pa, &m[col][col]);
        let inv = m[col][col].inv(pa).unwrap();
        for x in m[col].iter_mut() {
            *x = x.mul(pa, &inv);
        }
        let prow = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let k = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.sub(pa, &k.mul(pa, y));
                }
            }
        }
    }
    Some((det, m.into_iter().map(|r| r[n].clone()).collect()))
}

/// Lower Newton polygon at infinity of a polynomial over `A`: valuations of
/// its roots as reduced fractions, one entry per root.
pub fn root_valuations_at_infinity(poly: &[FqPoly]) -> Vec<(i64, i64)> {
    let pts: Vec<(i64, i64)> = poly
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(j, c)| (j as i64, -(c.len() as i64 - 1)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.1 - a.1) * (p.0 - a.0) >= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let g = gcd(dy.abs(), dx);
        for _ in 0..dx {
            out.push((-dy / g, dx / g));
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn format_lambda_poly(pa: &PolyRing<FqField>, y: &[FqPoly]) -> String {
    let terms: Vec<String> = y
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(j, c)| {
            let coeff = pa.pretty(c);
            match (j, coeff.as_str()) {
                (0, _) => coeff,
                (1, "1") => "λ".to_string(),
                (_, "1") => format!("λ^{j}"),
                (1, _) => format!("({coeff})λ"),
                _ => format!("({coeff})λ^{j}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// The cyclotomic extension `F(λ_f)` for `f = π^k` with `(A/f)^×` cyclic.
///
/// The frame `θ = Σ c_j λ^j` (constant `c_j`, smallest index first) is the
/// first candidate whose conjugates span `A[λ]` over `A` when `k = 1`, or
/// span a `τ`-stable sublattice of index supported at `π` when `k ≥ 2`.
pub fn carlitz_cyclotomic(field: &FqField, f: &[u32]) -> Result<ExtensionData> {
    carlitz_cyclotomic_seeded(field, f, 0)
}

/// As [`carlitz_cyclotomic`] with the seed of the random phase of the frame
/// search given explicitly.
pub fn carlitz_cyclotomic_seeded(field: &FqField, f: &[u32], seed: u64) -> Result<ExtensionData> {
    let pa = PolyRing::new(field.clone());
    let (pi0, k) = prime_power_root(field, f)
        .ok_or_else(|| Error::UnsupportedConductor(format!("{} is not a prime power", pa.format(f))))?;
    let name = format!("cyclotomic-q{}-f[{}]", field.q(), pa.format(f).replace(' ', ","));
    let c_f = carlitz_polynomial(field, f);
    let f_over_pi = pa.div_exact(f, &pi0)?;
    let c_g = carlitz_polynomial(field, &f_over_pi);
    let px = PolyRing::new(pa.clone());
    let c_g_trim = px.normalize(c_g[1..].to_vec());
    let c_f_trim = px.normalize(c_f[1..].to_vec());
    let (phi, rem) = px.divrem_monic(&c_f_trim, &c_g_trim);
    if !px.is_zero(&rem) {
        return Err(Error::UnsupportedConductor("cyclotomic polynomial division failed".into()));
    }
    let n = phi.len() - 1;
    if n == 1 {
        let mut ext = trivial_extension(field);
        ext.name = name;
        ext.conductor = Some(f.to_vec());
        ext.provenance = Provenance::BuiltIn("cyclotomic".into());
        return Ok(ext);
    }
    let classes = cyclic_unit_classes(&pa, f, n)?;
    let order = CyclotomicOrder::new(field, phi.clone());
    let lam = order.lambda();
    let images: Vec<Vec<FqPoly>> = classes
        .iter()
        .map(|a| {
            let ca = carlitz_polynomial(field, a);
            let mut lam_powers = vec![order.one()];
            for _ in 1..ca.len() {
                lam_powers.push(order.mul(lam_powers.last().unwrap(), &lam));
            }
            order.substitute(&ca, &lam_powers)
        })
        .collect();
    let power_tables: Vec<Vec<Vec<FqPoly>>> = images
        .iter()
        .map(|img| {
            let mut t = vec![order.one()];
            for _ in 1..n {
                t.push(order.mul(t.last().unwrap(), img));
            }
            t
        })
        .collect();
    let q = field.q() as u64;
    let wild = k >= 2;
    let mut found = None;
    for theta in frame_candidates(q, n, seed) {
        let conj: Vec<Vec<FqPoly>> = power_tables.iter().map(|t| order.substitute(&theta, t)).collect();
        let cmat: Vec<Vec<FqPoly>> = (0..n).map(|j| (0..n).map(|g| conj[g][j].clone()).collect()).collect();
        let theta_q = order.pow(&theta, q);
        let Some((det, beta)) = solve_over_fractions(&pa, &cmat, &theta_q) else {
            continue;
        };
        let det_ok = if wild {
            det.den == vec![1] && {
                let mut rest = pa.make_monic(&det.num);
                while pa.rem(&rest, &pi0).is_empty() && rest.len() > 1 {
                    rest = pa.div_exact(&rest, &pi0)?;
                }
                rest == vec![1]
            }
        } else {
            det.num.len() == 1 && det.den == vec![1]
        };
        if !det_ok {
            continue;
        }
        let Some(beta): Option<Vec<FqPoly>> = beta.iter().map(Fraction::as_poly).collect() else {
            continue;
        };
        let check = (0..n).fold(vec![Vec::new(); n], |acc, g| order.add(&acc, &order.scale(&beta[g], &conj[g])));
        if check != theta_q {
            return Err(Error::InvalidInput("frame certificate failed".into()));
        }
        found = Some((theta, beta));
        break;
    }
    let (theta, beta) = found.ok_or_else(|| {
        Error::UnsupportedConductor("no frame found among the searched candidates".to_string())
    })?;
    let group = AbelianGroup::cyclic(n);
    let ring = GroupRing::new(field.clone(), group.clone());
    let beta_poly = ring.poly_from_components(&beta);
    let all: Vec<usize> = (0..n).collect();
    let ramified = vec![RamifiedPrime {
        pi: pi0.clone(),
        decomposition: all.clone(),
        inertia: all,
        frobenius: group.identity(),
        wild,
    }];
    let mut ext = ExtensionData {
        name,
        ring: ring.clone(),
        conductor: Some(f.to_vec()),
        ramified,
        taming: Vec::new(),
        infinity: InfinityModel {
            theta_tau: beta_poly,
            lattice_gens: vec![vec![ring.one()]],
            precision: 16,
            discreteness_radius: 1,
            root_valuations: root_valuations_at_infinity(&phi),
        },
        provenance: Provenance::BuiltIn("cyclotomic".into()),
        group_classes: Some(classes),
    };
    if wild {
        let rr = ext.residue_ring(&pi0);
        let alpha = rr.reduce(&ring.poly_components(ext.beta()));
        ext.taming.push(TamingData {
            pi: pi0,
            omega: format_lambda_poly(&pa, &theta),
            alpha_tau: ring.poly_from_components(&alpha),
        });
    }
    Ok(ext)
}

/// Powers `g^i mod f` of the smallest generator of `(A/f)^×`, which must be
/// cyclic of order `n`.
fn cyclic_unit_classes(pa: &PolyRing<FqField>, f: &[u32], n: usize) -> Result<Vec<FqPoly>> {
    let deg = f.len() - 1;
    let q = pa.base().q() as u64;
    for idx in 1..q.pow(deg as u32) {
        let mut cand = Vec::new();
        let mut x = idx;
        for _ in 0..deg {
            cand.push((x % q) as u32);
            x /= q;
        }
        let cand = pa.normalize(cand);
        if pa.gcd(&cand, f) != vec![1] {
            continue;
        }
        let mut powers = vec![vec![1u32]];
        let mut cur = cand.clone();
        while cur != vec![1] {
            powers.push(cur.clone());
            cur = pa.mul_mod(&cur, &cand, f);
        }
        if powers.len() == n {
            return Ok(powers);
        }
    }
    Err(Error::UnsupportedConductor("(A/f)^× is not cyclic".into()))
}

/// Result of the taming-module construction at a prime.
#[derive(Clone, Debug, PartialEq)]
pub enum TamingModule {
    /// `v` is not wild, so the lattice is the full ring of integers there.
    MaximalOrder,
    Taming(TamingData),
}

/// Taming data at `π`: the stored certificate at a wild prime, after
/// verifying that the fiber is free of rank `deg π` and carries `τ`.
pub fn taming_module(ext: &ExtensionData, pi: &[u32]) -> Result<TamingModule> {
    if !ext.is_wild(pi) {
        return Ok(TamingModule::MaximalOrder);
    }
    let data = ext
        .taming
        .iter()
        .find(|t| t.pi == pi)
        .cloned()
        .ok_or_else(|| Error::SearchExhausted("no taming certificate stored".into()))?;
    let local = ext.prime_data(pi)?;
    let failed: Vec<String> = local
        .checks(&ext.ring)
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect();
    if !failed.is_empty() || local.ramification != Ramification::Wild {
        return Err(Error::NotAdmissible(format!("taming fiber checks failed: {failed:?}")));
    }
    Ok(TamingModule::Taming(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupRingElement;

    #[test]
    fn wild_conductor_t_squared() {
        let f2 = FqField::prime(2).unwrap();
        let ext = carlitz_cyclotomic(&f2, &[0, 0, 1]).unwrap();
        let r = &ext.ring;
        assert_eq!(r.order(), 2);
        let beta = r.poly_components(ext.beta());
        assert_eq!(beta, vec![vec![1, 1], vec![1]]);
        assert_eq!(ext.taming[0].omega, "λ");
        assert_eq!(ext.infinity.root_valuations, vec![(0, 1), (-1, 1)]);
        assert_eq!(ext.group_classes.as_ref().unwrap()[1], vec![1, 1]);
        match taming_module(&ext, &[0, 1]).unwrap() {
            TamingModule::Taming(t) => assert_eq!(t.alpha_tau, vec![GroupRingElement(vec![1, 1])]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(taming_module(&ext, &[1, 1]).unwrap(), TamingModule::MaximalOrder);
    }

    #[test]
    fn tame_conductor_t_over_f3() {
        let f3 = FqField::prime(3).unwrap();
        let ext = carlitz_cyclotomic(&f3, &[0, 1]).unwrap();
        let beta = ext.ring.poly_components(ext.beta());
        assert_eq!(beta, vec![vec![2, 1], vec![2, 2]]);
        assert_eq!(ext.infinity.root_valuations, vec![(-1, 2), (-1, 2)]);
        assert!(ext.taming.is_empty());
        let v = ext.prime_data(&[0, 1]).unwrap();
        assert_eq!(v.ramification, Ramification::Tame);
    }

    #[test]
    fn degree_one_conductor_is_trivial() {
        let f2 = FqField::prime(2).unwrap();
        let ext = carlitz_cyclotomic(&f2, &[0, 1]).unwrap();
        assert_eq!(ext.ring.order(), 1);
        assert!(carlitz_cyclotomic(&f2, &[0, 1, 1]).is_err());
    }

    #[test]
    fn frobenius_matches_class_of_prime() {
        let f2 = FqField::prime(2).unwrap();
        let f3 = FqField::prime(3).unwrap();
        for (f, cond) in [(&f3, vec![0u32, 1]), (&f2, vec![0, 0, 1]), (&f2, vec![1, 1, 1])] {
            let ext = carlitz_cyclotomic(f, &cond).unwrap();
            let pa = PolyRing::new(f.clone());
            let classes = ext.group_classes.clone().unwrap();
            for d in 1..=4 {
                for idx in 0..(f.q() as u64).pow(d as u32) {
                    let pi = pa.monic_from_index(d, idx);
                    if !pa.is_irreducible(&pi) || ext.ramified_prime(&pi).is_some() {
                        continue;
                    }
                    let sigma = ext.frobenius(&pi).unwrap();
                    assert_eq!(classes[sigma], pa.rem(&pi, &cond));
                    let data = ext.prime_data(&pi).unwrap();
                    assert!(data.checks(&ext.ring).iter().all(|(_, ok)| *ok));
                }
            }
        }
    }
}
