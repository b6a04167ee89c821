//! Lattice indices, volumes of compact `A[G]`-modules, the class module
//! `H(E/M) = K_∞/(M + exp K_∞)` and the verifiers of the equivariant class
//! number formula and of the refined Brumer–Stark statement.
//!
//! Everything is read off a finite window: with `P` above the isometry
//! radius, `exp(U_P) = U_P`, so `H` is the cokernel of the `F_q`-linear map
//! `ε : span{t^j gθ : j > −P} → K_∞/(M + U_P)` induced by `exp`, and the
//! kernel of `ε` on elements of degree `≤ D` is `Λ = exp^{-1}(M)` in degree
//! `≤ D`, truncated modulo `U_P`.

pub mod exp;
pub mod lattice;

use crate::algebra::laurent::{GroupRingLaurent, Laurent};
use crate::algebra::monic::divide;
use crate::algebra::{FqField, FqPoly, GroupRing, GroupRingPoly, PolyRing, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::extensions::ExtensionData;
use crate::linalg::finite_module::FiniteModule;
use crate::linalg::fqmat::{self, FqMatrix};
use crate::special_values::{theta_euler, Method, ThetaValue};
pub use exp::{TwistedExp, EXACT};
pub use lattice::{
    lattice_index_free, lattice_index_projective, quotient_size, sublattice_size, LatticeData, ProjectiveLattice,
};

/// Values of `exp(t^j θ)` modulo `M` for `−(P−1) ≤ j ≤ D`.
#[derive(Clone, Debug)]
pub struct ExpWindow {
    /// `P`: the window is `K_∞/(M + U_P)`.
    pub level: i64,
    /// `D`: the largest exponent of the domain.
    pub depth: i64,
    pub exps: Vec<GroupRingLaurent>,
}

impl ExpWindow {
    pub fn new(te: &mut TwistedExp, e: &DrinfeldModule, level: i64, depth: i64, prec: i64) -> Result<Self> {
        let exps = te.exp_monomials(e, -(level - 1), depth, prec.max(level))?;
        Ok(ExpWindow { level, depth, exps })
    }

    /// The identity in place of `exp`, as a control.
    pub fn identity(r: &GroupRing, level: i64, depth: i64) -> Self {
        let exps = (-(level - 1)..=depth).map(|j| Laurent::monomial(r, r.one(), j, EXACT)).collect();
        ExpWindow { level, depth, exps }
    }

    fn start(&self) -> i64 {
        -(self.level - 1)
    }

    /// Dimension of `K_∞/(M + U_P)` over `F_q`.
    pub fn target_dim(&self, r: &GroupRing) -> usize {
        (self.level as usize - 1) * r.order()
    }

    /// `exp(t^j gθ)` modulo `M`.
    pub fn value(&self, r: &GroupRing, j: i64, g: usize) -> GroupRingLaurent {
        exp::act_group(r, g, &self.exps[(j - self.start()) as usize])
    }

    /// Columns `ε(t^j gθ)` for `j ≤ depth`, ordered by `j` then `g`.
    pub fn columns(&self, r: &GroupRing, depth: i64) -> Vec<Vec<u32>> {
        let mut cols = Vec::new();
        for j in self.start()..=depth.min(self.depth) {
            for g in 0..r.order() {
                cols.push(fractional_vector(r, &self.value(r, j, g), self.level));
            }
        }
        cols
    }
}

/// Coefficients of `t^{-1}, …, t^{-(P−1)}` of `x`, flattened by group element.
pub fn fractional_vector(r: &GroupRing, x: &GroupRingLaurent, level: i64) -> Vec<u32> {
    let g = r.order();
    let mut v = Vec::with_capacity((level as usize - 1) * g);
    for k in 1..level {
        let c = x.coeff(r, -k).expect("window precision");
        v.extend_from_slice(&c.0);
    }
    v
}

/// The finite coordinate `Σ v_{k,h} t^{-k} hθ` of a window vector.
fn window_element(r: &GroupRing, v: &[u32], level: i64) -> GroupRingLaurent {
    let g = r.order();
    let coeffs: Vec<_> = (1..level as usize)
        .map(|k| crate::algebra::GroupRingElement(v[(k - 1) * g..k * g].to_vec()))
        .collect();
    Laurent::from_top(r, -1, coeffs, EXACT)
}

/// Reduction modulo a subspace given in reduced row echelon form.
struct Quotient {
    rows: FqMatrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Quotient {
    fn new(f: &FqField, sub: &[Vec<u32>], dim: usize) -> Self {
        let (m, pivots) = if sub.is_empty() { (Vec::new(), Vec::new()) } else { fqmat::rref(f, &sub.to_vec()) };
        let rows = m.into_iter().take(pivots.len()).collect();
        let free = (0..dim).filter(|c| !pivots.contains(c)).collect();
        Quotient { rows, pivots, free }
    }

    fn reduce(&self, f: &FqField, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let k = w[p];
            if k != 0 {
                for (x, y) in w.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        self.free.iter().map(|&c| w[c]).collect()
    }
}

/// `H(E/M)` with its `A[G]`-structure and the window it was read from.
#[derive(Clone, Debug)]
pub struct ClassModule {
    pub module: FiniteModule,
    pub level: i64,
    /// Least depth at which the image of `ε` stopped growing.
    pub depth: i64,
}

impl ClassModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `|H|_G`; requires `H` to be free over `F_q[G]` (or zero).
    pub fn size(&self) -> Result<GroupRingPoly> {
        if self.module.is_zero() {
            return Ok(vec![self.module.ring().one()]);
        }
        self.module.fitting(0)
    }

    /// Monic generator of `Fitt⁰_{A[G]}(H)`, the determinant of the square
    /// presentation `t − A_t` in a free `F_q[G]`-basis.
    pub fn fitting_generator(&self) -> Result<GroupRingPoly> {
        self.size()
    }

    /// Monic annihilator of least degree: the minimal polynomial of `t`.
    pub fn annihilator(&self) -> FqPoly {
        minimal_polynomial(self.module.ring().field(), self.module.t_matrix_fq())
    }
}

fn minimal_polynomial(f: &FqField, a: &FqMatrix) -> FqPoly {
    let n = a.len();
    if n == 0 {
        return vec![1];
    }
    let flat = |m: &FqMatrix| -> Vec<u32> { m.iter().flatten().copied().collect() };
    let mut powers = vec![fqmat::identity(n)];
    loop {
        let k = powers.len();
        let next = fqmat::mat_mul(f, &powers[k - 1], a);
        let cols: Vec<Vec<u32>> = powers.iter().map(flat).collect();
        let m = fqmat::from_columns(&cols, n * n);
        if let Some(c) = fqmat::solve(f, &m, &flat(&next)) {
            let mut p: FqPoly = c.iter().map(|x| f.neg(x)).collect();
            p.push(1);
            return p;
        }
        powers.push(next);
    }
}

/// Builds `H` from a window: the cokernel of `ε` restricted to `j ≤ depth`,
/// with `t` acting through `φ_E(t)` and `G` by multiplication.
pub fn class_from_window(te: &TwistedExp, window: &ExpWindow, depth: i64, identity_control: bool) -> Result<ClassModule> {
    let r = te.ring();
    let f = r.field();
    let dim = window.target_dim(r);
    let image = window.columns(r, depth);
    let quot = Quotient::new(f, &image, dim);
    let hdim = quot.free.len();
    let unit = |c: usize| -> Vec<u32> {
        let mut v = vec![0; dim];
        v[c] = 1;
        v
    };
    let mut t_cols = Vec::with_capacity(hdim);
    for &c in &quot.free {
        let w = window_element(r, &unit(c), window.level);
        let image = if identity_control { w.shift(1) } else { te.phi_t(&w) };
        t_cols.push(quot.reduce(f, &fractional_vector(r, &image, window.level)));
    }
    let mut gens = Vec::new();
    for &g in &r.group().generators() {
        let cols: Vec<Vec<u32>> = quot
            .free
            .iter()
            .map(|&c| {
                let w = exp::act_group(r, g, &window_element(r, &unit(c), window.level));
                quot.reduce(f, &fractional_vector(r, &w, window.level))
            })
            .collect();
        gens.push(fqmat::from_columns(&cols, hdim));
    }
    let module = FiniteModule::new(r, fqmat::from_columns(&t_cols, hdim), &gens)?;
    Ok(ClassModule { module, level: window.level, depth })
}

/// `H(E/M)` computed on the window `K_∞/(M + U_P)` with `P` two above the
/// isometry radius. The depth `D` grows from `0` until the image of `ε` is
/// unchanged from `D` to `D + 1` (which implies it is `φ_E(t)`-stable and
/// final); the result is then also compared with depth `D + 2`.
pub fn class_module(e: &DrinfeldModule, ext: &ExtensionData, max_depth: i64) -> Result<ClassModule> {
    let mut te = TwistedExp::new(e, ext)?;
    let level = te.radius() + 2;
    let window = ExpWindow::new(&mut te, e, level, max_depth + 2, level + 1)?;
    let r = ext.ring.clone();
    let f = r.field().clone();
    let rank_at = |d: i64| fqmat::rank(&f, &window.columns(&r, d));
    for d in 0..=max_depth {
        let rd = rank_at(d);
        if rd == rank_at(d + 1) {
            if rd != rank_at(d + 2) {
                return Err(Error::NotStabilized(format!("image grew again at depth {}", d + 2)));
            }
            return class_from_window(&te, &window, d, false);
        }
    }
    Err(Error::NotStabilized(format!("image still growing at depth {max_depth}")))
}

/// `Λ = exp_E^{-1}(M)` with an `A`-basis, an `A[G]`-generator when `Λ` is
/// free, and coordinates to precision `prec`.
#[derive(Clone, Debug)]
pub struct ExpLattice {
    pub lattice: LatticeData,
    /// Degrees of the reduced `A`-basis.
    pub degrees: Vec<i64>,
    /// Matrices of the generators of `G` on the `A`-basis.
    pub group_action: Vec<Vec<Vec<FqPoly>>>,
    /// Whether `exp(γ) ∈ M` was confirmed to the working precision.
    pub verified: bool,
}

/// Computes `exp_E^{-1}(M)` for the frame lattice `M = A[G]θ`.
///
/// The reduced basis is collected degree by degree from the kernel of `ε`,
/// each vector is lifted through `exp^{-1}` on `U_P`, and an `A[G]`-generator
/// is searched among combinations with coefficients of degree `< 2`.
pub fn exp_inverse_lattice(e: &DrinfeldModule, ext: &ExtensionData, prec: i64) -> Result<ExpLattice> {
    let r = ext.ring.clone();
    let f = r.field().clone();
    let g = r.order();
    let mut te = TwistedExp::new(e, ext)?;
    let level = te.radius() + 2;
    let max_depth = 4 * g as i64 + 8;
    let coarse = ExpWindow::new(&mut te, e, level, max_depth, level + 1)?;
    let mut basis_vecs: Vec<(i64, Vec<u32>)> = Vec::new();
    let mut leads: Vec<Vec<u32>> = Vec::new();
    let start = -(level - 1);
    for d in start..=max_depth {
        if basis_vecs.len() == g {
            break;
        }
        let cols = coarse.columns(&r, d);
        let n = cols.len();
        let mat = fqmat::from_columns(&cols, coarse.target_dim(&r));
        let kernel = if mat.is_empty() { fqmat::identity(n) } else { fqmat::kernel(&f, &mat, n) };
        let off = ((d - start) as usize) * g;
        for v in kernel {
            let lead = v[off..off + g].to_vec();
            let mut trial = leads.clone();
            trial.push(lead.clone());
            if fqmat::rank(&f, &trial) > leads.len() {
                leads.push(lead);
                basis_vecs.push((d, v));
            }
        }
    }
    if basis_vecs.len() != g {
        return Err(Error::SearchExhausted(format!("reduced basis of exp^-1(M) up to degree {max_depth}")));
    }
    let top = basis_vecs.iter().map(|b| b.0).max().unwrap_or(0);
    let work = prec + 4 * (top + level) + 8;
    let fine = ExpWindow::new(&mut te, e, level, top, work + top + 2)?;
    let mut basis = Vec::with_capacity(g);
    let mut verified = true;
    for (d, v) in &basis_vecs {
        let mut x = Laurent::zero(EXACT);
        let mut ex = Laurent::zero(work);
        for (idx, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = start + (idx / g) as i64;
            let h = idx % g;
            let term = Laurent::monomial(&r, r.scale(c, &r.basis(h)), j, EXACT);
            x = x.add(&r, &term);
            ex = ex.add(&r, &fine.value(&r, j, h).scale(&r, &r.scalar(c)));
        }
        let w = ex.neg_part(&r).truncate(&r, work);
        if w.degree().is_some_and(|dw| dw > -level) {
            return Err(Error::SpanMismatch(format!("kernel vector of degree {d} leaves the window")));
        }
        let u = te.exp_inverse_small(e, &w.neg(&r), work)?;
        let lambda = x.add(&r, &u);
        let check = ex.add(&r, &te.exp_small(e, &u, work)?);
        verified &= check.neg_part(&r).is_zero();
        basis.push(lambda);
    }
    let degrees: Vec<i64> = basis_vecs.iter().map(|b| b.0).collect();
    let pr = PolyRing::new(f.clone());
    let mut group_action = Vec::new();
    for &h in &r.group().generators() {
        let mut cols = Vec::with_capacity(g);
        for b in &basis {
            cols.push(lattice::a_coordinates(&r, &basis, &exp::act_group(&r, h, b))?);
        }
        group_action.push((0..g).map(|i| (0..g).map(|j| cols[j][i].clone()).collect()).collect());
    }
    let all_elements = group_matrices(&r, &pr, &group_action);
    let generator = find_generator(&r, &pr, &basis, &all_elements)?;
    let min_deg = degrees.iter().copied().min().unwrap_or(0);
    Ok(ExpLattice {
        lattice: LatticeData {
            generator,
            a_basis: basis,
            discreteness_radius: (1 - min_deg).max(1),
        },
        degrees,
        group_action,
        verified,
    })
}

type PolyMatrix = Vec<Vec<FqPoly>>;

fn poly_mat_mul(pr: &PolyRing<FqField>, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Vec::new(), |acc, k| pr.add(&acc, &pr.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

/// The matrix of every group element, indexed like the group.
fn group_matrices(r: &GroupRing, pr: &PolyRing<FqField>, gens: &[PolyMatrix]) -> Vec<PolyMatrix> {
    let grp = r.group();
    let n = r.order();
    let id: PolyMatrix = (0..n).map(|i| (0..n).map(|j| if i == j { pr.one() } else { Vec::new() }).collect()).collect();
    (0..grp.size())
        .map(|idx| {
            let mut m = id.clone();
            for (j, &e) in grp.exponents(idx).iter().enumerate() {
                for _ in 0..e {
                    m = poly_mat_mul(pr, &m, &gens[j]);
                }
            }
            m
        })
        .collect()
}

/// Searches `c ∈ A^{|G|}` with `det[ρ(g)c]_g ∈ F_q^×`; then `Σ c_j b_j`
/// generates the lattice over `A[G]`.
fn find_generator(
    r: &GroupRing,
    pr: &PolyRing<FqField>,
    basis: &[GroupRingLaurent],
    mats: &[PolyMatrix],
) -> Result<GroupRingLaurent> {
    let n = basis.len();
    let q = r.field().q() as u64;
    for deg in 1..=2u32 {
        let per = q.pow(deg);
        let total = per.saturating_pow(n as u32);
        if total > 200_000 {
            break;
        }
        for idx in 0..total {
            let mut rest = idx;
            let c: Vec<FqPoly> = (0..n)
                .map(|_| {
                    let mut k = rest % per;
                    rest /= per;
                    let mut p = Vec::new();
                    for _ in 0..deg {
                        p.push((k % q) as u32);
                        k /= q;
                    }
                    pr.normalize(p)
                })
                .collect();
            let columns: Vec<Vec<FqPoly>> = mats
                .iter()
                .map(|m| (0..n).map(|i| (0..n).fold(Vec::new(), |acc, k| pr.add(&acc, &pr.mul(&m[i][k], &c[k])))).collect())
                .collect();
            let mat: PolyMatrix = (0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect();
            let det = lattice::poly_det(pr, &mat);
            if det.len() == 1 {
                let mut gamma = Laurent::zero(basis[0].prec);
                for (cj, b) in c.iter().zip(basis) {
                    let cl = exp::lift_scalar(r, &Laurent::from_poly(r.field(), cj, EXACT));
                    gamma = gamma.add(r, &b.mul(r, &cl));
                }
                return Ok(gamma);
            }
        }
    }
    Err(Error::NotAdmissible("no A[G]-generator of exp^-1(M) found; the lattice may not be projective".into()))
}

/// Outcome of [`etnf_check`].
#[derive(Clone, Debug)]
pub struct EtnfReport {
    pub theta: ThetaValue,
    /// `[M : Λ]_G` with `Λ = exp^{-1}(M)`.
    pub index: GroupRingLaurent,
    pub class_size: GroupRingPoly,
    pub class_dim: usize,
    /// `Vol(E(K_∞)/E(M))`.
    pub volume_e: GroupRingLaurent,
    /// `Vol(K_∞/M)`.
    pub volume_m: GroupRingLaurent,
    pub rhs: GroupRingLaurent,
    /// Exponents `e ≥ −N` where the two sides differ.
    pub defect: Vec<i64>,
    pub precision: i64,
    pub pass: bool,
    /// Description of the normalizing lattice `Λ0`.
    pub lambda0: String,
}

/// `Vol` of a module with lattice `Λ` (free) and finite part `H` that is
/// cohomologically trivial, using the admissible lattice `f'^{-1}Λ`:
/// `|f'^{-1}Λ/Λ × s(H)|_G / [f'^{-1}Λ : Λ0]_G`.
pub fn volume(
    r: &GroupRing,
    lambda: &LatticeData,
    class_size: &GroupRingPoly,
    annihilator: &FqPoly,
    lambda0: &LatticeData,
) -> Result<GroupRingLaurent> {
    let fp: GroupRingPoly = annihilator.iter().map(|&c| r.scalar(c)).collect();
    let admissible = lambda.scaled(r, &fp, true)?;
    let pr = PolyRing::new(r.clone());
    let finite = pr.mul(&quotient_size(r, &fp)?, class_size);
    let idx = lattice_index_free(r, &admissible, lambda0)?;
    divide(r, &Laurent::from_poly(r, &finite, EXACT), &idx)
}

/// Checks `Θ^{E,M}(0) = Vol(E(K_∞)/E(M)) / Vol(K_∞/M)` to `t^{-n}` for the
/// frame lattice `M`, with `Λ0 = M`.
pub fn etnf_check(e: &DrinfeldModule, ext: &ExtensionData, n: i64) -> Result<EtnfReport> {
    let theta = theta_euler(e, ext, n)?;
    etnf_check_with(e, ext, n, theta, &LatticeData::frame(&ext.ring), "frame lattice A[G]θ")
}

/// As [`etnf_check`] with a given value of `Θ` and normalizing lattice.
pub fn etnf_check_with(
    e: &DrinfeldModule,
    ext: &ExtensionData,
    n: i64,
    theta: ThetaValue,
    lambda0: &LatticeData,
    lambda0_name: &str,
) -> Result<EtnfReport> {
    let r = &ext.ring;
    let h = class_module(e, ext, 16)?;
    let class_size = h.size()?;
    let mut work = n + 8;
    let (lat, index) = loop {
        let lat = exp_inverse_lattice(e, ext, work)?;
        let index = lattice_index_free(r, &LatticeData::frame(r), &lat.lattice)?;
        if index.prec >= n {
            break (lat, index);
        }
        work += n + 8;
        if work > 16 * n + 64 {
            return Err(Error::PrecisionInsufficient(format!("index known to {} of {n}", index.prec)));
        }
    };
    let m = LatticeData::frame(r);
    let volume_e = volume(r, &lat.lattice, &class_size, &h.annihilator(), lambda0)?;
    let volume_m = volume(r, &m, &vec![r.one()], &vec![1], lambda0)?;
    let rhs = divide(r, &volume_e, &volume_m)?;
    let mut defect = Vec::new();
    for x in (-n..=theta.result.v_top.max(rhs.v_top)).rev() {
        let a = theta.result.coeff(r, x).ok_or_else(|| Error::PrecisionInsufficient("Θ".into()))?;
        let b = rhs.coeff(r, x).ok_or_else(|| Error::PrecisionInsufficient("volume quotient".into()))?;
        if a != b {
            defect.push(x);
        }
    }
    Ok(EtnfReport {
        pass: defect.is_empty() && lat.verified,
        theta,
        index,
        class_size,
        class_dim: h.dim(),
        volume_e,
        volume_m,
        rhs,
        defect,
        precision: n,
        lambda0: lambda0_name.to_string(),
    })
}

impl EtnfReport {
    pub fn to_json(&self, r: &GroupRing) -> serde_json::Value {
        serde_json::json!({
            "check": "etnf",
            "precision": self.precision,
            "theta": self.theta.to_json(r),
            "index": self.index.to_json(r),
            "class_dim": self.class_dim,
            "class_size": self.class_size.iter().map(|c| r.to_json(c)).collect::<Vec<_>>(),
            "volume_e": self.volume_e.to_json(r),
            "volume_m": self.volume_m.to_json(r),
            "rhs": self.rhs.to_json(r),
            "defect": self.defect,
            "lambda0": self.lambda0,
            "assumptions": self.theta.assumptions,
            "pass": self.pass,
        })
    }
}

/// Outcome of [`brumer_stark_check`].
#[derive(Clone, Debug)]
pub struct BrumerStarkReport {
    /// `Θ / [M : Λ']_G`.
    pub value: GroupRingLaurent,
    /// The value as a polynomial when integral.
    pub polynomial: Option<GroupRingPoly>,
    pub fitting_generator: GroupRingPoly,
    pub integral: bool,
    pub member: bool,
    /// For `p ∤ |G|` with `Λ' = Λ`: whether also `Fitt⁰(H) ⊆ value·A[G]`.
    pub ideal_equality: Option<bool>,
    pub admissible_annihilator: FqPoly,
    pub precision: i64,
    pub pass: bool,
}

/// Checks that `Θ / [M : Λ']_G` lies in `A[G]` and in `Fitt⁰_{A[G]} H(E/M)`
/// for the admissible lattice `Λ' = f'^{-1}Λ` with `f'` the minimal
/// polynomial of `t` on `H`. When `p ∤ |G|` the lattice `Λ` itself is
/// admissible and the two ideals are compared.
pub fn brumer_stark_check(e: &DrinfeldModule, ext: &ExtensionData, n: i64) -> Result<BrumerStarkReport> {
    let theta = theta_euler(e, ext, n)?;
    brumer_stark_check_with(e, ext, n, &theta)
}

pub fn brumer_stark_check_with(e: &DrinfeldModule, ext: &ExtensionData, n: i64, theta: &ThetaValue) -> Result<BrumerStarkReport> {
    let r = &ext.ring;
    let pr = PolyRing::new(r.clone());
    let h = class_module(e, ext, 16)?;
    let fitting_generator = h.fitting_generator()?;
    let lat = exp_inverse_lattice(e, ext, n + 8)?;
    let fp = h.annihilator();
    let fp_lift: GroupRingPoly = fp.iter().map(|&c| r.scalar(c)).collect();
    let admissible = lat.lattice.scaled(r, &fp_lift, true)?;
    let m = LatticeData::frame(r);
    let value = divide(r, &theta.result, &lattice_index_free(r, &m, &admissible)?)?;
    let as_poly = |x: &GroupRingLaurent| -> Option<GroupRingPoly> {
        let known = x.prec.min(n);
        if known < 1 {
            return None;
        }
        (1..=known)
            .all(|k| x.coeff(r, -k).is_some_and(|c| r.is_zero(&c)))
            .then(|| x.poly_part(r))
    };
    let polynomial = as_poly(&value);
    let integral = polynomial.is_some();
    let member = polynomial
        .as_ref()
        .is_some_and(|p| pr.rem_monic(p, &fitting_generator).is_empty());
    let p = r.field().p() as usize;
    let ideal_equality = if r.order() % p != 0 {
        let q0 = divide(r, &theta.result, &lattice_index_free(r, &m, &lat.lattice)?)?;
        as_poly(&q0).map(|q0| {
            let q0 = pr.normalize(q0);
            let monic = q0.last().is_some_and(|c| *c == r.one());
            monic && pr.rem_monic(&q0, &fitting_generator).is_empty() && pr.rem_monic(&fitting_generator, &q0).is_empty()
        })
    } else {
        None
    };
    Ok(BrumerStarkReport {
        pass: integral && member && ideal_equality.unwrap_or(true),
        value,
        polynomial,
        fitting_generator,
        integral,
        member,
        ideal_equality,
        admissible_annihilator: fp,
        precision: n,
    })
}

impl BrumerStarkReport {
    pub fn to_json(&self, r: &GroupRing) -> serde_json::Value {
        let poly = |p: &GroupRingPoly| p.iter().map(|c| r.to_json(c)).collect::<Vec<_>>();
        serde_json::json!({
            "check": "brumer-stark",
            "precision": self.precision,
            "value": self.value.to_json(r),
            "polynomial": self.polynomial.as_ref().map(poly),
            "fitting_generator": poly(&self.fitting_generator),
            "admissible_annihilator": self.admissible_annihilator,
            "integral": self.integral,
            "member": self.member,
            "ideal_equality": self.ideal_equality,
            "pass": self.pass,
        })
    }
}

/// Method tag used in reports.
pub fn theta_method_name(v: &ThetaValue) -> &'static str {
    match v.method {
        Method::Euler => "euler",
        Method::Trace => "trace",
        Method::Sum => "sum",
    }
}
