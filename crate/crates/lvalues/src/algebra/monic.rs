//! The monic subgroup of `F_q((1/t))[G]^×` and the decomposition
//! `g = g⁺·u` with `g⁺` monic and `u ∈ F_q[t][G]^×`.
//!
//! Everything is done one character component `e_χ̂·F_q[G] ≅ F_χ[P]` at a
//! time; in a component the unit part is found by a Weierstrass-style
//! iteration that gains a power of the nilpotent ideal `I_P` per step.

use super::groupring::{GroupRing, GroupRingElement};
use super::laurent::{GroupRingLaurent, Laurent};
use super::poly::PolyRing;
use super::ring::{Ring, UnitRing};
use super::GroupRingPoly;
use crate::error::{Error, Result};

/// Precision used for exact polynomials entering Laurent products.
const EXACT: i64 = 1 << 40;

/// The ring `e·F_q[G]` with identity `e` for an idempotent `e`.
struct Component<'a> {
    r: &'a GroupRing,
    e: GroupRingElement,
}

impl Ring for Component<'_> {
    type El = GroupRingElement;

    fn zero(&self) -> GroupRingElement {
        self.r.zero()
    }

    fn one(&self) -> GroupRingElement {
        self.e.clone()
    }

    fn is_zero(&self, a: &GroupRingElement) -> bool {
        self.r.is_zero(a)
    }

    fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        self.r.add(a, b)
    }

    fn neg(&self, a: &GroupRingElement) -> GroupRingElement {
        self.r.neg(a)
    }

    fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        self.r.mul(a, b)
    }

    fn mul_acc(&self, acc: &mut GroupRingElement, a: &GroupRingElement, b: &GroupRingElement) {
        self.r.mul_acc(acc, a, b)
    }
}

impl UnitRing for Component<'_> {
    fn try_inv(&self, a: &GroupRingElement) -> Option<GroupRingElement> {
        let lifted = self.r.add(a, &self.r.sub(&self.r.one(), &self.e));
        self.r.invert(&lifted).ok().map(|x| self.r.mul(&x, &self.e))
    }
}

impl Component<'_> {
    fn is_unit(&self, a: &GroupRingElement) -> bool {
        !self.r.is_zero(&self.r.mul(&self.r.augment_p(a), &self.e))
    }
}

/// Whether `g` is monic: every character component has the form
/// `t^{n_χ}(e_χ + t^{-1}·…)`.
pub fn monic_test(r: &GroupRing, g: &GroupRingLaurent) -> Result<bool> {
    if g.prec < 1 {
        return Err(Error::PrecisionInsufficient(format!("monic test at precision {}", g.prec)));
    }
    for ci in r.idempotents() {
        let comp = g.scale(r, &ci.element);
        if comp.is_zero() {
            return Err(Error::NotAUnit("component vanishes to precision".into()));
        }
        if comp.coeffs[0] != ci.element {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inverse of a polynomial unit of `F_q[t][G]`.
pub fn invert_poly_unit(r: &GroupRing, u: &[GroupRingElement]) -> Result<GroupRingPoly> {
    let pr = PolyRing::new(r.clone());
    let u = pr.normalize(u.to_vec());
    if u.is_empty() {
        return Err(Error::NotAUnit("zero polynomial".into()));
    }
    let u0_inv = r.invert(&u[0])?;
    let scaled = pr.scale(&u0_inv, &u);
    let nu = pr.sub(&scaled, &pr.one());
    let mut series = pr.one();
    let mut term = pr.one();
    let neg_nu = pr.neg(&nu);
    let mut steps = 0;
    while !term.is_empty() {
        term = pr.mul(&term, &neg_nu);
        series = pr.add(&series, &term);
        steps += 1;
        if steps > r.nil_index() + 1 {
            return Err(Error::NotAUnit("polynomial is not a unit of A[G]".into()));
        }
    }
    Ok(pr.scale(&u0_inv, &series))
}

/// Decomposes a unit `g` as `g⁺·u` with `g⁺` monic and `u` a unit of
/// `F_q[t][G]`. The precision of `g⁺` drops by the degree of `u`.
pub fn monic_decompose(r: &GroupRing, g: &GroupRingLaurent) -> Result<(GroupRingLaurent, GroupRingPoly)> {
    let pr = PolyRing::new(r.clone());
    let mut g_plus: Option<GroupRingLaurent> = None;
    let mut u_total: GroupRingPoly = Vec::new();
    for ci in r.idempotents() {
        let comp_ring = Component {
            r,
            e: ci.element.clone(),
        };
        let e = &ci.element;
        let comp = g.scale(r, e);
        let mut lead_exp = None;
        for (k, c) in comp.coeffs.iter().enumerate() {
            if comp_ring.is_unit(c) {
                lead_exp = Some((comp.v_top - k as i64, c.clone()));
                break;
            }
        }
        let (n_lead, a) = lead_exp.ok_or_else(|| Error::NotAUnit("no unit coefficient within precision".into()))?;
        let a_inv = comp_ring.try_inv(&a).expect("unit coefficient");
        let mut u: GroupRingPoly = vec![a.clone()];
        let mut h = comp.scale(r, &a_inv);
        let max_steps = 2 * r.nil_index() + 4;
        let mut done = false;
        for _ in 0..max_steps {
            let w = h.shift(-n_lead);
            if w.prec < 0 {
                return Err(Error::PrecisionLoss("distinguished degree exceeds precision".into()));
            }
            let mut pos = w.poly_part(r);
            if pos.is_empty() {
                pos.push(r.zero());
            }
            pos[0] = r.sub(&pos[0], e);
            let pos = pr.normalize(pos);
            if pos.is_empty() {
                done = true;
                break;
            }
            let gamma = w.neg_part(r);
            let one_plus_gamma = gamma.add(r, &Laurent::one(&comp_ring, w.prec));
            let inv = one_plus_gamma.inverse(&comp_ring)?;
            let delta = Laurent::from_poly(r, &pos, EXACT);
            let eps = delta.mul(r, &inv).poly_part(r);
            let mut big_e = eps.clone();
            if big_e.is_empty() {
                big_e.push(r.zero());
            }
            big_e[0] = r.add(&big_e[0], e);
            let big_e = pr.normalize(big_e);
            let e_inv = component_poly_inverse(r, &pr, e, &big_e)?;
            h = h.mul(r, &Laurent::from_poly(r, &e_inv, EXACT));
            u = pr.mul(&u, &big_e);
        }
        if !done {
            return Err(Error::PrecisionLoss("Weierstrass iteration did not terminate".into()));
        }
        g_plus = Some(match g_plus {
            None => h,
            Some(acc) => acc.add(r, &h),
        });
        u_total = pr.add(&u_total, &u);
    }
    Ok((g_plus.expect("at least one component"), u_total))
}

/// Inverse of `e + ε` in `e·F_q[G][t]` for `ε` with nilpotent coefficients.
fn component_poly_inverse(
    r: &GroupRing,
    pr: &PolyRing<GroupRing>,
    e: &GroupRingElement,
    big_e: &GroupRingPoly,
) -> Result<GroupRingPoly> {
    let eps = pr.sub(big_e, &pr.constant(e.clone()));
    let neg_eps = pr.neg(&eps);
    let mut series = pr.constant(e.clone());
    let mut term = series.clone();
    for _ in 0..=r.nil_index() {
        term = pr.mul(&term, &neg_eps);
        if term.is_empty() {
            return Ok(series);
        }
        series = pr.add(&series, &term);
    }
    Err(Error::NotAUnit("correction factor is not a unit".into()))
}

/// Inverse of an arbitrary unit of `F_q((1/t))[G]` via its monic
/// decomposition; the result has the precision carried by the inputs.
pub fn invert_unit(r: &GroupRing, g: &GroupRingLaurent) -> Result<GroupRingLaurent> {
    let (gp, u) = monic_decompose(r, g)?;
    let u_inv = invert_poly_unit(r, &u)?;
    let mut acc: Option<GroupRingLaurent> = None;
    for ci in r.idempotents() {
        let comp_ring = Component {
            r,
            e: ci.element.clone(),
        };
        let c = gp.scale(r, &ci.element).inverse(&comp_ring)?;
        acc = Some(match acc {
            None => c,
            Some(a) => a.add(r, &c),
        });
    }
    Ok(acc.unwrap().mul(r, &Laurent::from_poly(r, &u_inv, EXACT)))
}

/// `a / b` for a unit `b`.
pub fn divide(r: &GroupRing, a: &GroupRingLaurent, b: &GroupRingLaurent) -> Result<GroupRingLaurent> {
    let need = a.prec.saturating_add(a.v_top.max(0)) - b.v_top.min(0) + 1;
    let b = if b.prec > need { b.truncate(r, need) } else { b.clone() };
    Ok(a.mul(r, &invert_unit(r, &b)?))
}

/// Monic part `g⁺` of a unit.
pub fn monic_part(r: &GroupRing, g: &GroupRingLaurent) -> Result<GroupRingLaurent> {
    Ok(monic_decompose(r, g)?.0)
}
