//! Line-oriented fixture files describing an extension.
//!
//! Sections are introduced by `[name]` lines and contain `key = value`
//! lines; `#` starts a comment. Polynomials over `F_q` are written as
//! space-separated coefficients from the constant term up, group-ring
//! elements in their canonical text, matrices row-major with rows separated
//! by `|`, and series in the canonical Laurent text.

use std::collections::BTreeMap;

use super::{
    ExtensionData, InfinityModel, LocalPrimeData, Provenance, RamifiedPrime, Ramification, TamingData,
};
use crate::algebra::laurent::GroupRingLaurent;
use crate::algebra::{AbelianGroup, FqField, FqPoly, GroupRing, Laurent, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::linalg::RMatrix;

/// A parsed fixture: the extension and the explicitly listed primes.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub ext: ExtensionData,
    pub primes: Vec<LocalPrimeData>,
}

struct Section {
    name: String,
    line: usize,
    entries: BTreeMap<String, (usize, String)>,
}

impl Section {
    fn get(&self, key: &str) -> Result<(usize, &str)> {
        self.entries.get(key).map(|(l, v)| (*l, v.as_str())).ok_or_else(|| Error::Parse {
            line: self.line,
            msg: format!("section [{}] lacks '{key}'", self.name),
        })
    }

    fn opt(&self, key: &str) -> Option<(usize, &str)> {
        self.entries.get(key).map(|(l, v)| (*l, v.as_str()))
    }
}

fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line, msg: other.to_string() },
    })
}

fn int<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse { line, msg: format!("expected an integer, found '{s}'") })
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            out.push(Section { name: name.trim().to_string(), line, entries: BTreeMap::new() });
            continue;
        }
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| Error::Parse { line, msg: format!("expected 'key = value', found '{content}'") })?;
        let sec = out.last_mut().ok_or_else(|| Error::Parse { line, msg: "entry outside any section".into() })?;
        sec.entries.insert(k.trim().to_string(), (line, v.trim().to_string()));
    }
    Ok(out)
}

fn format_matrix(r: &GroupRing, m: &RMatrix) -> String {
    m.iter()
        .map(|row| row.iter().map(|x| r.format(x)).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn parse_matrix(r: &GroupRing, line: usize, s: &str, d: usize) -> Result<RMatrix> {
    let rows: Vec<&str> = s.split('|').collect();
    if rows.len() != d {
        return Err(Error::Parse { line, msg: format!("expected {d} matrix rows, found {}", rows.len()) });
    }
    rows.iter()
        .map(|row| {
            let entries = row.split_whitespace().map(|tok| at(line, r.parse(tok))).collect::<Result<Vec<_>>>()?;
            if entries.len() != d {
                return Err(Error::Parse { line, msg: format!("expected {d} entries per row") });
            }
            Ok(entries)
        })
        .collect()
}

fn format_elements(g: &AbelianGroup, xs: &[usize]) -> String {
    xs.iter().map(|&x| g.format_element(x)).collect::<Vec<_>>().join(" ")
}

fn parse_elements(g: &AbelianGroup, line: usize, s: &str) -> Result<Vec<usize>> {
    let mut v = s.split_whitespace().map(|t| at(line, g.parse_element(t))).collect::<Result<Vec<_>>>()?;
    v.sort_unstable();
    Ok(v)
}

fn format_series(r: &GroupRing, p: &[crate::algebra::GroupRingElement], prec: i64) -> String {
    Laurent::from_poly(r, p, prec).format(r)
}

fn parse_poly_series(r: &GroupRing, line: usize, s: &str) -> Result<Vec<crate::algebra::GroupRingElement>> {
    let l = at(line, GroupRingLaurent::parse(r, s))?;
    if !l.neg_part(r).is_zero() {
        return Err(Error::Parse { line, msg: "expected a polynomial series".into() });
    }
    Ok(PolyRing::new(r.clone()).normalize(l.poly_part(r)))
}

/// Renders an extension and its primes of degree at most `max_degree`
/// (plus all ramified primes) as fixture text.
pub fn write_fixture(ext: &ExtensionData, max_degree: usize) -> Result<String> {
    let r = &ext.ring;
    let f = r.field();
    let g = r.group();
    let pa = PolyRing::new(f.clone());
    let mut s = String::new();
    s.push_str(&format!(
        "[field]\np = {}\ns = {}\nmodulus = {}\n\n",
        f.p(),
        f.s(),
        f.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    ));
    let orders: Vec<String> = g.orders().iter().map(|o| o.to_string()).collect();
    s.push_str(&format!("[group]\norders = {}\n\n", orders.join(" ")));
    s.push_str(&format!("[extension]\nname = {}\n", ext.name));
    if let Some(c) = &ext.conductor {
        s.push_str(&format!("conductor = {}\n", pa.format(c)));
    }
    if let Some(classes) = &ext.group_classes {
        let cl: Vec<String> = classes.iter().map(|c| pa.format(c)).collect();
        s.push_str(&format!("classes = {}\n", cl.join(" | ")));
    }
    s.push('\n');
    let mut primes: Vec<FqPoly> = ext.ramified.iter().map(|p| p.pi.clone()).collect();
    for d in 1..=max_degree {
        for idx in 0..(f.q() as u64).pow(d as u32) {
            let pi = pa.monic_from_index(d, idx);
            if pa.is_irreducible(&pi) && !primes.contains(&pi) {
                primes.push(pi);
            }
        }
    }
    for pi in &primes {
        let v = ext.prime_data(pi)?;
        s.push_str(&format!(
            "[prime]\npi = {}\ndecomposition = {}\ninertia = {}\nfrobenius = {}\nramification = {}\nbasis_size = {}\nmat_t = {}\nmat_tau = {}\n\n",
            pa.format(&v.pi),
            format_elements(g, &v.decomposition),
            format_elements(g, &v.inertia),
            g.format_element(v.frobenius),
            v.ramification.as_str(),
            v.degree,
            format_matrix(r, &v.mat_t),
            format_matrix(r, &v.mat_tau),
        ));
    }
    for t in &ext.taming {
        s.push_str(&format!(
            "[taming]\npi = {}\nomega_fiber = {}\nalpha_tau = {}\n\n",
            pa.format(&t.pi),
            t.omega,
            format_series(r, &t.alpha_tau, ext.infinity.precision)
        ));
    }
    let inf = &ext.infinity;
    s.push_str(&format!("[infinity]\ntheta_tau = {}\n", format_series(r, &inf.theta_tau, inf.precision)));
    for (i, l) in inf.lattice_gens.iter().enumerate() {
        s.push_str(&format!("lattice_gen_{i} = {}\n", format_series(r, l, inf.precision)));
    }
    let vals: Vec<String> = inf.root_valuations.iter().map(|(a, b)| format!("{a}/{b}")).collect();
    s.push_str(&format!(
        "precision = {}\ndiscreteness_radius = {}\nroot_valuations = {}\n",
        inf.precision,
        inf.discreteness_radius,
        vals.join(" ")
    ));
    Ok(s)
}

/// Parses fixture text.
pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let secs = sections(text)?;
    let find = |name: &str| -> Result<&Section> {
        secs.iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("missing section [{name}]") })
    };
    let fs = find("field")?;
    let (lp, p) = fs.get("p")?;
    let (ls, s_) = fs.get("s")?;
    let (lm, m) = fs.get("modulus")?;
    let modulus: Vec<u32> = m.split_whitespace().map(|t| int(lm, t)).collect::<Result<_>>()?;
    let field = at(lp, FqField::with_modulus(int(lp, p)?, int(ls, s_)?, modulus))?;
    let pa = PolyRing::new(field.clone());
    let gs = find("group")?;
    let (lo, o) = gs.get("orders")?;
    let orders: Vec<usize> = o.split_whitespace().map(|t| int(lo, t)).collect::<Result<_>>()?;
    let group = AbelianGroup::new(&orders);
    let ring = GroupRing::new(field.clone(), group.clone());
    let es = find("extension")?;
    let name = es.get("name")?.1.to_string();
    let conductor = match es.opt("conductor") {
        Some((l, c)) => Some(at(l, pa.parse(c))?),
        None => None,
    };
    let group_classes = match es.opt("classes") {
        Some((l, c)) => Some(c.split('|').map(|x| at(l, pa.parse(x))).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    let is = find("infinity")?;
    let (lt, tt) = is.get("theta_tau")?;
    let theta_tau = parse_poly_series(&ring, lt, tt)?;
    let mut lattice_gens = Vec::new();
    for i in 0.. {
        match is.opt(&format!("lattice_gen_{i}")) {
            Some((l, v)) => lattice_gens.push(parse_poly_series(&ring, l, v)?),
            None => break,
        }
    }
    let (lpr, pr) = is.get("precision")?;
    let (ldr, dr) = is.get("discreteness_radius")?;
    let root_valuations = match is.opt("root_valuations") {
        Some((l, v)) => v
            .split_whitespace()
            .map(|tok| {
                let (a, b) = tok.split_once('/').ok_or_else(|| Error::Parse { line: l, msg: format!("bad fraction '{tok}'") })?;
                Ok((int(l, a)?, int(l, b)?))
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let infinity = InfinityModel {
        theta_tau,
        lattice_gens,
        precision: int(lpr, pr)?,
        discreteness_radius: int(ldr, dr)?,
        root_valuations,
    };
    let mut primes = Vec::new();
    let mut ramified = Vec::new();
    for sec in secs.iter().filter(|s| s.name == "prime") {
        let (l, pi) = sec.get("pi")?;
        let pi = at(l, pa.parse(pi))?;
        let (l, d) = sec.get("basis_size")?;
        let degree: usize = int(l, d)?;
        if pa.degree(&pi) != Some(degree) {
            return Err(Error::Parse { line: l, msg: "basis_size differs from deg pi".into() });
        }
        let (l, dec) = sec.get("decomposition")?;
        let decomposition = parse_elements(&group, l, dec)?;
        let (l, ine) = sec.get("inertia")?;
        let inertia = parse_elements(&group, l, ine)?;
        let (l, fr) = sec.get("frobenius")?;
        let frobenius = at(l, group.parse_element(fr))?;
        let (l, ram) = sec.get("ramification")?;
        let ramification =
            Ramification::parse(ram).ok_or_else(|| Error::Parse { line: l, msg: format!("unknown ramification '{ram}'") })?;
        let (l, mt) = sec.get("mat_t")?;
        let mat_t = parse_matrix(&ring, l, mt, degree)?;
        let (l, mtau) = sec.get("mat_tau")?;
        let mat_tau = parse_matrix(&ring, l, mtau, degree)?;
        if ramification != Ramification::Unramified {
            ramified.push(RamifiedPrime {
                pi: pi.clone(),
                decomposition: decomposition.clone(),
                inertia: inertia.clone(),
                frobenius,
                wild: ramification == Ramification::Wild,
            });
        }
        primes.push(LocalPrimeData { pi, degree, decomposition, inertia, frobenius, ramification, mat_t, mat_tau });
    }
    let mut taming = Vec::new();
    for sec in secs.iter().filter(|s| s.name == "taming") {
        let (l, pi) = sec.get("pi")?;
        let pi = at(l, pa.parse(pi))?;
        let omega = sec.get("omega_fiber")?.1.to_string();
        let (l, a) = sec.get("alpha_tau")?;
        let alpha_tau = parse_poly_series(&ring, l, a)?;
        taming.push(TamingData { pi, omega, alpha_tau });
    }
    let ext = ExtensionData {
        name: name.clone(),
        ring,
        conductor,
        ramified,
        taming,
        infinity,
        provenance: Provenance::Fixture(name),
        group_classes,
    };
    Ok(Fixture { ext, primes })
}

/// Outcome of validating a fixture: one line per check.
#[derive(Clone, Debug, Default)]
pub struct FixtureReport {
    pub lines: Vec<(String, bool)>,
}

impl FixtureReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|(_, ok)| *ok)
    }

    pub fn render(&self) -> String {
        self.lines
            .iter()
            .map(|(n, ok)| format!("{} {n}", if *ok { "PASS" } else { "FAIL" }))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Window of lattice coefficients (in `t`-degree) enumerated by the
/// discreteness check.
const DISCRETENESS_WINDOW: usize = 2;

/// Parses a fixture and runs every structural check on it.
pub fn validate_fixture(text: &str) -> Result<FixtureReport> {
    let fx = parse_fixture(text)?;
    let ext = &fx.ext;
    let r = &ext.ring;
    let pa = PolyRing::new(r.field().clone());
    let mut report = FixtureReport::default();
    for v in &fx.primes {
        let label = pa.format(&v.pi);
        for (name, ok) in v.checks(r) {
            report.lines.push((format!("prime [{label}] {name}"), ok));
        }
        let frame_ok = ext.prime_data(&v.pi).map(|w| &w == v).unwrap_or(false);
        report.lines.push((format!("prime [{label}] frame-consistent"), frame_ok));
        if let (Some(classes), Some(cond), Ramification::Unramified) = (&ext.group_classes, &ext.conductor, v.ramification) {
            let ok = classes.get(v.frobenius) == Some(&pa.rem(&v.pi, cond));
            report.lines.push((format!("prime [{label}] frobenius-class"), ok));
        }
    }
    for t in &ext.taming {
        let label = pa.format(&t.pi);
        let ok = ext.is_wild(&t.pi)
            && PolyRing::new(r.clone()).normalize(t.alpha_tau.clone())
                == r.poly_from_components(&ext.residue_beta(&t.pi));
        report.lines.push((format!("taming [{label}] alpha-tau"), ok));
    }
    report.lines.push(("infinity discreteness".to_string(), discreteness_ok(ext)));
    Ok(report)
}

/// No nonzero `A[G]`-combination of the lattice generators, with
/// coefficients of degree below the window, lies in `t^{-ℓ}·F_q[[1/t]][G]`.
fn discreteness_ok(ext: &ExtensionData) -> bool {
    let r = &ext.ring;
    let inf = &ext.infinity;
    let pr = PolyRing::new(r.clone());
    let coeff_space = r.all_elements();
    let per_gen = coeff_space.len().pow(DISCRETENESS_WINDOW as u32);
    let total = per_gen.checked_pow(inf.lattice_gens.len() as u32).unwrap_or(usize::MAX);
    if total > 1 << 20 {
        return false;
    }
    for idx in 1..total {
        let mut x = idx;
        let mut acc = pr.zero();
        for gen in &inf.lattice_gens {
            let mut c = Vec::new();
            for _ in 0..DISCRETENESS_WINDOW {
                c.push(coeff_space[x % coeff_space.len()].clone());
                x /= coeff_space.len();
            }
            acc = pr.add(&acc, &pr.mul(&pr.normalize(c), gen));
        }
        let acc = pr.normalize(acc);
        if !acc.is_empty() && (acc.len() as i64 - 1) <= -inf.discreteness_radius {
            return false;
        }
    }
    true
}
