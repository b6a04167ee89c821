//! Acceptance suite: one line per criterion, exit status nonzero if any fails.
//!
//! Every comparison is an exact coefficientwise equality at the stated
//! `t^{-1}`-adic precision. Each criterion also carries a runtime budget.

#[allow(dead_code)]
#[path = "support/properties.rs"]
mod properties;

use std::time::{Duration, Instant};

use lvalues::algebra::laurent::Laurent;
use lvalues::algebra::monic::monic_part;
use lvalues::algebra::{FqField, GroupRing, GroupRingElement, PolyRing, Ring};
use lvalues::drinfeld::{log_coefficients, DrinfeldModule};
use lvalues::extensions::{builtin_extensions, carlitz_cyclotomic, trivial_extension, Ramification};
use lvalues::euler::{carlitz_closed_form, carlitz_pv, euler_factor, pstar_from_pv};
use lvalues::nuclear::theta_via_trace;
use lvalues::special_values::{theta_euler, zeta_direct_sum, ThetaValue, TAIL_ASSUMPTION};
use lvalues::volumes::exp::lift_scalar;
use lvalues::volumes::{brumer_stark_check_with, class_module, etnf_check_with, exp_inverse_lattice, LatticeData};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: lvalues::Error) -> String {
    e.to_string()
}

/// Exponents `e ≥ −n` where two values differ.
fn differences(r: &GroupRing, a: &ThetaValue, b: &ThetaValue, n: i64) -> Vec<i64> {
    let top = a.result.v_top.max(b.result.v_top).max(0);
    (-n..=top).rev().filter(|&e| a.result.coeff(r, e) != b.result.coeff(r, e)).collect()
}

fn agree(r: &GroupRing, a: &ThetaValue, b: &ThetaValue, n: i64, what: &str) -> Result<(), String> {
    let d = differences(r, a, b, n);
    ensure(d.is_empty(), format!("{what} differ at exponents {d:?}"))
}

fn three_way() -> Outcome {
    let mut notes = Vec::new();
    for q in [2u32, 3] {
        let f = FqField::prime(q).unwrap();
        let ext = trivial_extension(&f);
        let c = DrinfeldModule::carlitz(f);
        let start = Instant::now();
        let eu = theta_euler(&c, &ext, 16).map_err(err)?;
        let tr = theta_via_trace(&c, &ext, 16).map_err(err)?;
        let su = zeta_direct_sum(&ext.ring, 16).map_err(err)?;
        agree(&ext.ring, &eu, &tr, 16, "euler and trace")?;
        agree(&ext.ring, &eu, &su, 16, "euler and sum")?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 60.0, format!("q={q} took {secs:.1} s"))?;
        notes.push(format!("q={q} {secs:.1}s"));
    }
    Ok(format!("euler = trace = sum to t^-16 ({})", notes.join(", ")))
}

fn taelman() -> Outcome {
    let f = FqField::prime(2).unwrap();
    let ext = trivial_extension(&f);
    let r = &ext.ring;
    let c = DrinfeldModule::carlitz(f.clone());
    let n = 12;
    let h = class_module(&c, &ext, 16).map_err(err)?;
    ensure(h.dim() == 0, format!("class module has dimension {}", h.dim()))?;
    let mut log_one = Laurent::zero(n + 8);
    for lk in &log_coefficients(&c, 8).coeffs {
        log_one = log_one.add(r, &lift_scalar(r, &lk.laurent(&f, n + 8)));
    }
    let expected_index = monic_part(r, &log_one).map_err(err)?;
    let lat = exp_inverse_lattice(&c, &ext, n + 8).map_err(err)?;
    ensure(lat.lattice.generator.eq_to(r, &log_one, n).map_err(err)?, "lattice generator differs from log_C(1)")?;
    let theta = theta_euler(&c, &ext, n).map_err(err)?;
    let rep = etnf_check_with(&c, &ext, n, theta.clone(), &LatticeData::frame(r), "frame").map_err(err)?;
    ensure(rep.index.eq_to(r, &expected_index, n).map_err(err)?, "index differs from the monic part of log_C(1)")?;
    ensure(rep.class_size == vec![r.one()], "|H| is not 1")?;
    ensure(theta.result.eq_to(r, &expected_index, n).map_err(err)?, "Θ differs from [A : A·log_C(1)]")?;
    ensure(rep.pass, format!("defect at {:?}", rep.defect))?;
    Ok("Θ = [A : A·log_C(1)]·|H| with H = 0, defect 0 to t^-12".into())
}

fn tame() -> Outcome {
    let f = FqField::prime(3).unwrap();
    let ext = carlitz_cyclotomic(&f, &[0, 1]).map_err(err)?;
    let r = &ext.ring;
    let c = DrinfeldModule::carlitz(f);
    let n = 8;
    let eu = theta_euler(&c, &ext, n).map_err(err)?;
    let tr = theta_via_trace(&c, &ext, n).map_err(err)?;
    agree(r, &eu, &tr, n, "euler and trace")?;
    let etnf = etnf_check_with(&c, &ext, n, eu.clone(), &LatticeData::frame(r), "frame").map_err(err)?;
    ensure(etnf.pass, format!("etnf defect at {:?}", etnf.defect))?;
    let bs = brumer_stark_check_with(&c, &ext, n, &eu).map_err(err)?;
    ensure(bs.ideal_equality == Some(true), format!("ideal equality {:?}", bs.ideal_equality))?;
    ensure(bs.pass, "Brumer–Stark membership failed")?;
    Ok(format!("euler = trace over F_3[Z/2], etnf defect 0, Fitting ideal equality (dim H = {})", etnf.class_dim))
}

fn wild() -> Outcome {
    let f = FqField::prime(2).unwrap();
    let ext = carlitz_cyclotomic(&f, &[0, 0, 1]).map_err(err)?;
    let r = &ext.ring;
    let c = DrinfeldModule::carlitz(f);
    let n = 8;
    let sigma = r.basis(1);
    let certificate = vec![r.add(&r.one(), &sigma), r.one()];
    ensure(PolyRing::new(r.clone()).normalize(ext.beta().clone()) == certificate, "frame does not satisfy λ² = ((t+1)+σ)λ")?;
    ensure(ext.taming.first().is_some_and(|t| t.omega == "λ"), "taming generator is not λ")?;
    let eu = theta_euler(&c, &ext, n).map_err(err)?;
    let tr = theta_via_trace(&c, &ext, n).map_err(err)?;
    agree(r, &eu, &tr, n, "euler and trace")?;
    let etnf = etnf_check_with(&c, &ext, n, eu.clone(), &LatticeData::frame(r), "frame").map_err(err)?;
    ensure(etnf.pass, format!("etnf defect at {:?}", etnf.defect))?;
    let bs = brumer_stark_check_with(&c, &ext, n, &eu).map_err(err)?;
    ensure(bs.integral && bs.member, format!("integral {} member {}", bs.integral, bs.member))?;
    Ok("M = A[G]λ, euler = trace over F_2[Z/2], etnf defect 0, Brumer–Stark integral and member".into())
}

fn euler_identities() -> Outcome {
    let mut checked = 0;
    for ext in builtin_extensions() {
        let f = ext.field().clone();
        let r = &ext.ring;
        let c = DrinfeldModule::carlitz(f.clone());
        let pa = PolyRing::new(f.clone());
        for d in 1..=4 {
            for idx in 0..(f.q() as u64).pow(d as u32) {
                let pi = pa.monic_from_index(d, idx);
                if !pa.is_irreducible(&pi) {
                    continue;
                }
                let data = ext.prime_data(&pi).map_err(err)?;
                if data.ramification == Ramification::Wild {
                    continue;
                }
                let at = || format!("{} at [{}]", ext.name, pa.format(&pi));
                let fac = euler_factor(&c, r, &data, 8).map_err(err)?;
                ensure(fac.numerator == data.nv(r), format!("|O_K/v|_G ≠ Nv for {}", at()))?;
                let closed = carlitz_closed_form(r, &data).map_err(err)?;
                ensure(fac.denominator == closed, format!("closed form fails for {}", at()))?;
                let pstar = pstar_from_pv(r, &carlitz_pv(&pi, &f), &data, 8).map_err(err)?;
                let inv = fac.ratio.inverse(r).map_err(err)?;
                ensure(pstar.eq_to(r, &inv, 8).map_err(err)?, format!("P*(1) ratio fails for {}", at()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} non-wild primes of degree ≤ 4 across all built-in extensions"))
}

fn property_suites() -> Outcome {
    let mut names = Vec::new();
    for (name, suite) in properties::all() {
        suite().map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("{} suites, {} seeded cases per ring or chain", names.len(), properties::CASES))
}

fn rank_two() -> Outcome {
    let f = FqField::prime(2).unwrap();
    let ext = trivial_extension(&f);
    let e = DrinfeldModule::new(f, vec![vec![1], vec![1]]).map_err(err)?;
    let eu = theta_euler(&e, &ext, 6).map_err(err)?;
    let tr = theta_via_trace(&e, &ext, 6).map_err(err)?;
    agree(&ext.ring, &eu, &tr, 6, "euler and trace")?;
    let flagged = |v: &ThetaValue| v.assumptions.iter().any(|a| a == TAIL_ASSUMPTION);
    ensure(flagged(&eu) && flagged(&tr), "tail assumption not flagged")?;
    let one: GroupRingElement = ext.ring.one();
    ensure(eu.result.coeff(&ext.ring, 0) == Some(one), "Θ is not 1 modulo 1/t")?;
    Ok("euler = trace to t^-6 with the tail assumption flagged in both".into())
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("three-way agreement, trivial extension, N = 16", Duration::from_secs(120), three_way),
        ("class number formula, q = 2, N = 12", Duration::from_secs(60), taelman),
        ("tame equivariant case, q = 3, G = Z/2, N = 8", Duration::from_secs(300), tame),
        ("wild equivariant case, q = 2, G = Z/2, N = 8", Duration::from_secs(300), wild),
        ("Euler-factor identities at primes of degree ≤ 4", Duration::from_secs(300), euler_identities),
        ("seeded property suites", Duration::from_secs(300), property_suites),
        ("rank-2 smoke test, q = 2, N = 6", Duration::from_secs(300), rank_two),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget ({:.1} s > {} s)", elapsed.as_secs_f64(), budget.as_secs())),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{:.1} s]", i + 1, elapsed.as_secs_f64()),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{:.1} s]", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
