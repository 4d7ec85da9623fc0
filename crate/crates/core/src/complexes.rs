//! Bounded complexes of finitely generated projectives, cochain maps up to
//! homotopy, cones and cylinders, and the Hattori-Stallings character
//! `χ(P•, f•) = Σ_i (−1)^i tr_{P^i}(f^i)` with its invariance checks.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, TraceClass};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, ScalarMatrix};
use crate::modrep::{
    hom_space, submodule, Bimodule, ModuleMap, Resolution, RightModule, TensorSpace,
};
use crate::trace::{hs_trace, realize, realize_sum, CheckReport, ProjectiveRealization};

/// A bounded cochain complex of realized projectives; `d^i: P^i → P^{i+1}`
/// and `d∘d = 0` exactly.
#[derive(Debug, Clone)]
pub struct ProjComplex {
    algebra: Arc<Algebra>,
    lo: i32,
    components: Vec<ProjectiveRealization>,
    differentials: Vec<ModuleMap>,
}

impl PartialEq for ProjComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            && self.lo == other.lo
            && self.components == other.components
            && self.differentials == other.differentials
    }
}

impl ProjComplex {
    pub fn new(
        algebra: Arc<Algebra>,
        lo: i32,
        components: Vec<ProjectiveRealization>,
        differentials: Vec<ModuleMap>,
    ) -> Result<Arc<ProjComplex>> {
        assert!(!components.is_empty(), "empty support");
        assert_eq!(differentials.len() + 1, components.len(), "one differential per gap");
        for (k, d) in differentials.iter().enumerate() {
            if *d.source != *components[k].module || *d.target != *components[k + 1].module {
                return Err(Error::DimensionMismatch(format!(
                    "differential {k} does not match its components"
                )));
            }
            d.check_intertwines()?;
        }
        for k in 0..differentials.len().saturating_sub(1) {
            if !differentials[k].then(&differentials[k + 1]).is_zero() {
                return Err(Error::DimensionMismatch(format!(
                    "d∘d ≠ 0 at degree {}",
                    lo + k as i32
                )));
            }
        }
        Ok(Arc::new(ProjComplex { algebra, lo, components, differentials }))
    }

    /// A one-term complex concentrated in `degree`.
    pub fn stalk(
        algebra: Arc<Algebra>,
        degree: i32,
        realization: ProjectiveRealization,
    ) -> Arc<ProjComplex> {
        ProjComplex::new(algebra, degree, vec![realization], vec![]).unwrap()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.components.len() as i32 - 1
    }

    pub fn realization_at(&self, d: i32) -> Option<&ProjectiveRealization> {
        if d < self.lo || d > self.hi() {
            None
        } else {
            Some(&self.components[(d - self.lo) as usize])
        }
    }

    pub fn module_at(&self, d: i32) -> Arc<RightModule> {
        self.realization_at(d)
            .map(|r| r.module.clone())
            .unwrap_or_else(|| RightModule::zero(self.algebra.clone()))
    }

    pub fn dim_at(&self, d: i32) -> usize {
        self.realization_at(d).map_or(0, |r| r.module.dim())
    }

    /// Differential matrix `P^d → P^{d+1}` (zero-shaped outside support).
    pub fn differential_matrix(&self, d: i32) -> ScalarMatrix {
        let idx = d - self.lo;
        if idx >= 0 && (idx as usize) < self.differentials.len() {
            self.differentials[idx as usize].matrix.clone()
        } else {
            ScalarMatrix::zeros(self.algebra.field(), self.dim_at(d), self.dim_at(d + 1))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.module.dim() == 0)
    }
}

/// A cochain map between complexes; components stored over the union of
/// the supports.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    pub source: Arc<ProjComplex>,
    pub target: Arc<ProjComplex>,
    lo: i32,
    comps: Vec<ScalarMatrix>,
}

impl ChainMap {
    /// Build and check commutation with the differentials, exactly.
    pub fn new(
        source: Arc<ProjComplex>,
        target: Arc<ProjComplex>,
        lo: i32,
        comps: Vec<ScalarMatrix>,
    ) -> Result<ChainMap> {
        let f = ChainMap::unchecked(source, target, lo, comps);
        f.check()?;
        Ok(f)
    }

    fn unchecked(
        source: Arc<ProjComplex>,
        target: Arc<ProjComplex>,
        lo: i32,
        comps: Vec<ScalarMatrix>,
    ) -> ChainMap {
        let range_lo = source.lo().min(target.lo());
        let range_hi = source.hi().max(target.hi());
        let field = source.algebra().field().clone();
        let mut full = Vec::new();
        for d in range_lo..=range_hi {
            let idx = d - lo;
            let m = if idx >= 0 && (idx as usize) < comps.len() {
                comps[idx as usize].clone()
            } else {
                ScalarMatrix::zeros(&field, source.dim_at(d), target.dim_at(d))
            };
            full.push(m);
        }
        ChainMap { source, target, lo: range_lo, comps: full }
    }

    pub fn check(&self) -> Result<()> {
        for d in (self.lo - 1)..=(self.lo + self.comps.len() as i32) {
            let m = self.component_matrix(d);
            if m.rows() != self.source.dim_at(d) || m.cols() != self.target.dim_at(d) {
                return Err(Error::DimensionMismatch(format!(
                    "chain map component at degree {d} has wrong shape"
                )));
            }
            // Module map check.
            let sm = self.source.module_at(d);
            let tm = self.target.module_at(d);
            ModuleMap::new(sm, tm, m.clone())?;
            // Commutation: f^d then d_T = d_S then f^{d+1}.
            let lhs = m.mul(&self.target.differential_matrix(d));
            let rhs = self.source.differential_matrix(d).mul(&self.component_matrix(d + 1));
            if lhs != rhs {
                return Err(Error::NotCommuting(format!(
                    "chain map does not commute with differentials at degree {d}"
                )));
            }
        }
        Ok(())
    }

    pub fn component_matrix(&self, d: i32) -> ScalarMatrix {
        let idx = d - self.lo;
        if idx >= 0 && (idx as usize) < self.comps.len() {
            self.comps[idx as usize].clone()
        } else {
            ScalarMatrix::zeros(
                self.source.algebra().field(),
                self.source.dim_at(d),
                self.target.dim_at(d),
            )
        }
    }

    pub fn identity(c: &Arc<ProjComplex>) -> ChainMap {
        let field = c.algebra().field().clone();
        let comps = (c.lo()..=c.hi()).map(|d| ScalarMatrix::identity(&field, c.dim_at(d))).collect();
        ChainMap::unchecked(c.clone(), c.clone(), c.lo(), comps)
    }

    pub fn zero(source: &Arc<ProjComplex>, target: &Arc<ProjComplex>) -> ChainMap {
        ChainMap::unchecked(source.clone(), target.clone(), source.lo().min(target.lo()), vec![])
    }

    pub fn add(&self, g: &ChainMap) -> ChainMap {
        let comps = (self.lo..self.lo + self.comps.len() as i32)
            .map(|d| self.component_matrix(d).add(&g.component_matrix(d)))
            .collect();
        ChainMap::unchecked(self.source.clone(), self.target.clone(), self.lo, comps)
    }

    pub fn sub(&self, g: &ChainMap) -> ChainMap {
        let comps = (self.lo..self.lo + self.comps.len() as i32)
            .map(|d| self.component_matrix(d).sub(&g.component_matrix(d)))
            .collect();
        ChainMap::unchecked(self.source.clone(), self.target.clone(), self.lo, comps)
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        let comps = self.comps.iter().map(|m| m.scale(c)).collect();
        ChainMap::unchecked(self.source.clone(), self.target.clone(), self.lo, comps)
    }

    /// `self` then `g`.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        let comps = (self.lo..self.lo + self.comps.len() as i32)
            .map(|d| self.component_matrix(d).mul(&g.component_matrix(d)))
            .collect();
        ChainMap::unchecked(self.source.clone(), g.target.clone(), self.lo, comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    /// Degreewise inverse, when every component is invertible.
    pub fn inverse(&self) -> Option<ChainMap> {
        let mut comps = Vec::new();
        for d in self.lo..self.lo + self.comps.len() as i32 {
            comps.push(self.component_matrix(d).inverse()?);
        }
        Some(ChainMap::unchecked(self.target.clone(), self.source.clone(), self.lo, comps))
    }
}

/// A homotopy witness: maps `s^d : P^d → Q^{d-1}`.
#[derive(Debug, Clone)]
pub struct Homotopy {
    pub lo: i32,
    pub comps: Vec<ScalarMatrix>,
}

impl Homotopy {
    pub fn component(&self, d: i32, f: &ChainMap) -> ScalarMatrix {
        let idx = d - self.lo;
        if idx >= 0 && (idx as usize) < self.comps.len() {
            self.comps[idx as usize].clone()
        } else {
            ScalarMatrix::zeros(
                f.source.algebra().field(),
                f.source.dim_at(d),
                f.target.dim_at(d - 1),
            )
        }
    }

    /// Check `f = s∘d + d∘s` degreewise.
    pub fn witnesses(&self, f: &ChainMap) -> bool {
        let lo = f.source.lo().min(f.target.lo()) - 1;
        let hi = f.source.hi().max(f.target.hi()) + 1;
        for d in lo..=hi {
            let term1 = f.source.differential_matrix(d).mul(&self.component(d + 1, f));
            let term2 = self.component(d, f).mul(&f.target.differential_matrix(d - 1));
            if term1.add(&term2) != f.component_matrix(d) {
                return false;
            }
        }
        true
    }
}

/// Decide null-homotopy exactly: solve `f = s∘d + d∘s` for module maps
/// `s^d: P^d → Q^{d-1}` and return a witness if one exists.
pub fn is_null_homotopic(f: &ChainMap) -> Option<Homotopy> {
    let field = f.source.algebra().field().clone();
    let lo = f.source.lo().min(f.target.lo());
    let hi = f.source.hi().max(f.target.hi());

    // Unknowns: coefficients over hom bases of each s^d, d in lo..=hi+1.
    let mut hom_bases = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for d in lo..=hi + 1 {
        let basis = hom_space(&f.source.module_at(d), &f.target.module_at(d - 1));
        offsets.push(total);
        total += basis.len();
        hom_bases.push(basis);
    }

    // One block of equations per degree d: sum of contributions = f^d.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for d in lo..=hi {
        let fm = f.component_matrix(d);
        let (r, c) = (fm.rows(), fm.cols());
        if r == 0 || c == 0 {
            continue;
        }
        let ds = f.source.differential_matrix(d);
        let dt = f.target.differential_matrix(d - 1);
        let mut block = vec![vec![Scalar::zero(&field); total]; r * c];
        // d_S^d then s^{d+1}.
        let idx1 = (d + 1 - lo) as usize;
        for (j, h) in hom_bases[idx1].iter().enumerate() {
            let m = ds.mul(&h.matrix);
            for i in 0..r {
                for k in 0..c {
                    block[i * c + k][offsets[idx1] + j] = m.get(i, k).clone();
                }
            }
        }
        // s^d then d_T^{d-1}.
        let idx0 = (d - lo) as usize;
        for (j, h) in hom_bases[idx0].iter().enumerate() {
            let m = h.matrix.mul(&dt);
            for i in 0..r {
                for k in 0..c {
                    let cur = &block[i * c + k][offsets[idx0] + j] + m.get(i, k);
                    block[i * c + k][offsets[idx0] + j] = cur;
                }
            }
        }
        for i in 0..r {
            for k in 0..c {
                rows.push(block[i * c + k].clone());
                rhs.push(fm.get(i, k).clone());
            }
        }
    }
    if rows.is_empty() {
        return Some(Homotopy { lo, comps: vec![] });
    }
    let constraint = ScalarMatrix::from_rows(&field, rows);
    let sol = constraint.solve(&ScalarMatrix::column(&field, &rhs)).expect("shapes agree")?;
    let mut comps = Vec::new();
    for (di, basis) in hom_bases.iter().enumerate() {
        let d = lo + di as i32;
        let mut m = ScalarMatrix::zeros(&field, f.source.dim_at(d), f.target.dim_at(d - 1));
        for (j, h) in basis.iter().enumerate() {
            m = m.add(&h.matrix.scale(sol.get(offsets[di] + j, 0)));
        }
        comps.push(m);
    }
    let hty = Homotopy { lo, comps };
    debug_assert!(hty.witnesses(f));
    Some(hty)
}

/// The Hattori-Stallings character `Σ (−1)^i tr_{P^i}(f^i)` of a cochain
/// endomorphism.
pub fn hs_character(f: &ChainMap) -> TraceClass {
    assert!(Arc::ptr_eq(&f.source, &f.target) || *f.source == *f.target, "not an endomorphism");
    let algebra = f.source.algebra().clone();
    let mut acc = algebra.hh0_zero();
    for d in f.source.lo()..=f.source.hi() {
        let r = f.source.realization_at(d).expect("in support");
        if r.module.dim() == 0 {
            continue;
        }
        let comp = ModuleMap::unchecked(r.module.clone(), r.module.clone(), f.component_matrix(d));
        let t = hs_trace(r, &comp);
        acc = if d.rem_euclid(2) == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn direct_sum_realizations(
    algebra: &Arc<Algebra>,
    parts: &[&ProjectiveRealization],
) -> ProjectiveRealization {
    let field = algebra.field().clone();
    let d = algebra.dim();
    let modules: Vec<Arc<RightModule>> = parts.iter().map(|p| p.module.clone()).collect();
    let (sum, _, _) = crate::modrep::direct_sum(algebra, &modules);
    let rank: usize = parts.iter().map(|p| p.rank).sum();
    let free = crate::trace::free_module(algebra, rank);
    let total_dim: usize = parts.iter().map(|p| p.module.dim()).sum();
    let mut include = ScalarMatrix::zeros(&field, total_dim, rank * d);
    let mut retract = ScalarMatrix::zeros(&field, rank * d, total_dim);
    let mut idem = vec![vec![algebra.zero_elem(); rank]; rank];
    let (mut ro, mut co) = (0usize, 0usize);
    for p in parts {
        for r in 0..p.module.dim() {
            for c in 0..p.rank * d {
                let v = p.include.matrix.get(r, c);
                if !v.is_zero() {
                    include.set(ro + r, co * d + c, v.clone());
                }
            }
        }
        for r in 0..p.rank * d {
            for c in 0..p.module.dim() {
                let v = p.retract.matrix.get(r, c);
                if !v.is_zero() {
                    retract.set(co * d + r, ro + c, v.clone());
                }
            }
        }
        for i in 0..p.rank {
            for j in 0..p.rank {
                idem[co + i][co + j] = p.idempotent[i][j].clone();
            }
        }
        ro += p.module.dim();
        co += p.rank;
    }
    ProjectiveRealization {
        module: sum,
        rank,
        idempotent: idem,
        include: ModuleMap::unchecked(modules_sum_clone(parts, algebra), free.clone(), include),
        retract: ModuleMap::unchecked(free, modules_sum_clone(parts, algebra), retract),
    }
}

fn modules_sum_clone(
    parts: &[&ProjectiveRealization],
    algebra: &Arc<Algebra>,
) -> Arc<RightModule> {
    let modules: Vec<Arc<RightModule>> = parts.iter().map(|p| p.module.clone()).collect();
    crate::modrep::direct_sum(algebra, &modules).0
}

/// Mapping cone of `u: P' → P`: `Cone(u)^i = P'^{i+1} ⊕ P^i` with the
/// standard differential `(x', x) ↦ (−d'x', u(x') + dx)`.
pub fn cone(u: &ChainMap) -> Arc<ProjComplex> {
    let algebra = u.source.algebra().clone();
    let field = algebra.field().clone();
    let p_prime = &u.source;
    let p = &u.target;
    let lo = (p_prime.lo() - 1).min(p.lo());
    let hi = (p_prime.hi() - 1).max(p.hi());
    let zero_r = zero_realization(&algebra);
    let mut comps = Vec::new();
    for d in lo..=hi {
        let a = p_prime.realization_at(d + 1).unwrap_or(&zero_r);
        let b = p.realization_at(d).unwrap_or(&zero_r);
        comps.push(direct_sum_realizations(&algebra, &[a, b]));
    }
    let mut diffs = Vec::new();
    for d in lo..hi {
        let (a1, b1) = (p_prime.dim_at(d + 1), p.dim_at(d));
        let (a2, b2) = (p_prime.dim_at(d + 2), p.dim_at(d + 1));
        let mut m = ScalarMatrix::zeros(&field, a1 + b1, a2 + b2);
        let dprime = p_prime.differential_matrix(d + 1);
        let uc = u.component_matrix(d + 1);
        let dp = p.differential_matrix(d);
        for i in 0..a1 {
            for j in 0..a2 {
                m.set(i, j, dprime.get(i, j).neg());
            }
            for j in 0..b2 {
                m.set(i, a2 + j, uc.get(i, j).clone());
            }
        }
        for i in 0..b1 {
            for j in 0..b2 {
                m.set(a1 + i, a2 + j, dp.get(i, j).clone());
            }
        }
        let src = comps[(d - lo) as usize].module.clone();
        let tgt = comps[(d - lo + 1) as usize].module.clone();
        diffs.push(ModuleMap::unchecked(src, tgt, m));
    }
    ProjComplex::new(algebra, lo, comps, diffs).expect("cone is a complex")
}

fn zero_realization(algebra: &Arc<Algebra>) -> ProjectiveRealization {
    realize(&RightModule::zero(algebra.clone())).expect("zero module is projective")
}

/// Mapping cylinder of `u: P' → P` together with the canonical maps: the
/// inclusion `P' → Cyl`, the projection `Cyl → Cone`, and the homotopy
/// equivalences `Cyl → P`, `P → Cyl`.
pub struct CylinderData {
    pub cylinder: Arc<ProjComplex>,
    pub cone: Arc<ProjComplex>,
    pub include_source: ChainMap,
    pub project_cone: ChainMap,
    pub compress: ChainMap,
    pub embed: ChainMap,
}

pub fn cylinder(u: &ChainMap) -> CylinderData {
    let algebra = u.source.algebra().clone();
    let field = algebra.field().clone();
    let pp = &u.source; // P'
    let p = &u.target; // P
    let lo = (pp.lo() - 1).min(p.lo()).min(pp.lo());
    let hi = pp.hi().max(p.hi());
    let zero_r = zero_realization(&algebra);
    let mut comps = Vec::new();
    for d in lo..=hi {
        let a = pp.realization_at(d).unwrap_or(&zero_r);
        let b = pp.realization_at(d + 1).unwrap_or(&zero_r);
        let c = p.realization_at(d).unwrap_or(&zero_r);
        comps.push(direct_sum_realizations(&algebra, &[a, b, c]));
    }
    let dims = |d: i32| (pp.dim_at(d), pp.dim_at(d + 1), p.dim_at(d));
    let mut diffs = Vec::new();
    for d in lo..hi {
        let (a1, b1, c1) = dims(d);
        let (a2, b2, c2) = dims(d + 1);
        let mut m = ScalarMatrix::zeros(&field, a1 + b1 + c1, a2 + b2 + c2);
        // (x, y, z) ↦ (d'x − y, −d'y, u(y) + dz); y lives in P'^{d+1} = block a2.
        let dp1 = pp.differential_matrix(d);
        let dp2 = pp.differential_matrix(d + 1);
        let uc = u.component_matrix(d + 1);
        let dz = p.differential_matrix(d);
        for i in 0..a1 {
            for j in 0..a2 {
                m.set(i, j, dp1.get(i, j).clone());
            }
        }
        for i in 0..b1 {
            // −y into block x'' (P'^{d+1} has dimension b1 = a2 here).
            m.set(a1 + i, i, Scalar::from_integer(-1, &field));
            for j in 0..b2 {
                m.set(a1 + i, a2 + j, dp2.get(i, j).neg());
            }
            for j in 0..c2 {
                m.set(a1 + i, a2 + b2 + j, uc.get(i, j).clone());
            }
        }
        for i in 0..c1 {
            for j in 0..c2 {
                m.set(a1 + b1 + i, a2 + b2 + j, dz.get(i, j).clone());
            }
        }
        let src = comps[(d - lo) as usize].module.clone();
        let tgt = comps[(d - lo + 1) as usize].module.clone();
        diffs.push(ModuleMap::unchecked(src, tgt, m));
    }
    let cyl = ProjComplex::new(algebra.clone(), lo, comps, diffs).expect("cylinder is a complex");
    let cone = cone(u);

    // P' → Cyl: x ↦ (x, 0, 0).
    let mut inc_comps = Vec::new();
    for d in pp.lo()..=pp.hi() {
        let (a, b, c) = dims(d);
        let mut m = ScalarMatrix::zeros(&field, pp.dim_at(d), a + b + c);
        for i in 0..pp.dim_at(d) {
            m.set(i, i, Scalar::one(&field));
        }
        inc_comps.push(m);
    }
    let include_source =
        ChainMap::new(pp.clone(), cyl.clone(), pp.lo(), inc_comps).expect("inclusion chain map");

    // Cyl → Cone: (x, y, z) ↦ (y, z).
    let mut proj_comps = Vec::new();
    for d in lo..=hi {
        let (a, b, c) = dims(d);
        let mut m = ScalarMatrix::zeros(&field, a + b + c, b + c);
        for i in 0..b {
            m.set(a + i, i, Scalar::one(&field));
        }
        for i in 0..c {
            m.set(a + b + i, b + i, Scalar::one(&field));
        }
        proj_comps.push(m);
    }
    let project_cone =
        ChainMap::new(cyl.clone(), cone.clone(), lo, proj_comps).expect("projection chain map");

    // Cyl → P: (x, y, z) ↦ u(x) + z.
    let mut comp_comps = Vec::new();
    for d in lo..=hi {
        let (a, b, c) = dims(d);
        let mut m = ScalarMatrix::zeros(&field, a + b + c, p.dim_at(d));
        let uc = u.component_matrix(d);
        for i in 0..a {
            for j in 0..p.dim_at(d) {
                m.set(i, j, uc.get(i, j).clone());
            }
        }
        for i in 0..c {
            m.set(a + b + i, i, Scalar::one(&field));
        }
        comp_comps.push(m);
    }
    let compress = ChainMap::new(cyl.clone(), p.clone(), lo, comp_comps).expect("compression");

    // P → Cyl: z ↦ (0, 0, z).
    let mut emb_comps = Vec::new();
    for d in p.lo()..=p.hi() {
        let (a, b, _c) = dims(d);
        let mut m = ScalarMatrix::zeros(&field, p.dim_at(d), a + b + p.dim_at(d));
        for i in 0..p.dim_at(d) {
            m.set(i, a + b + i, Scalar::one(&field));
        }
        emb_comps.push(m);
    }
    let embed = ChainMap::new(p.clone(), cyl.clone(), p.lo(), emb_comps).expect("embedding");

    CylinderData { cylinder: cyl, cone, include_source, project_cone, compress, embed }
}

/// Shift `P[k]`: degree `d` holds `P^{d+k}`; differentials pick up `(−1)^k`.
pub fn shift(c: &Arc<ProjComplex>, k: i32) -> Arc<ProjComplex> {
    let comps = c.components.clone();
    let diffs: Vec<ModuleMap> = c
        .differentials
        .iter()
        .map(|d| if k.rem_euclid(2) == 1 { d.scale(&Scalar::from_integer(-1, c.algebra.field())) } else { d.clone() })
        .collect();
    ProjComplex::new(c.algebra.clone(), c.lo - k, comps, diffs).expect("shift is a complex")
}

// ---------------------------------------------------------------------------
// Chain hom spaces and random complexes

/// Basis of the space of (strictly commuting) chain maps `X → Y`.
pub fn chain_hom_basis(x: &Arc<ProjComplex>, y: &Arc<ProjComplex>) -> Vec<ChainMap> {
    let field = x.algebra().field().clone();
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    let mut hom_bases = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for d in lo..=hi {
        let basis = hom_space(&x.module_at(d), &y.module_at(d));
        offsets.push(total);
        total += basis.len();
        hom_bases.push(basis);
    }
    if total == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for d in lo..=hi {
        // f^d then d_Y − d_X then f^{d+1} = 0.
        let (r, c) = (x.dim_at(d), y.dim_at(d + 1));
        if r == 0 || c == 0 {
            continue;
        }
        let dx = x.differential_matrix(d);
        let dy = y.differential_matrix(d);
        let mut block = vec![vec![Scalar::zero(&field); total]; r * c];
        let di = (d - lo) as usize;
        for (j, h) in hom_bases[di].iter().enumerate() {
            let m = h.matrix.mul(&dy);
            for i in 0..r {
                for k in 0..c {
                    block[i * c + k][offsets[di] + j] = m.get(i, k).clone();
                }
            }
        }
        if d + 1 <= hi {
            let di1 = (d + 1 - lo) as usize;
            for (j, h) in hom_bases[di1].iter().enumerate() {
                let m = dx.mul(&h.matrix);
                for i in 0..r {
                    for k in 0..c {
                        let cur = &block[i * c + k][offsets[di1] + j] - m.get(i, k);
                        block[i * c + k][offsets[di1] + j] = cur;
                    }
                }
            }
        }
        rows.extend(block);
    }
    let constraints = if rows.is_empty() {
        ScalarMatrix::zeros(&field, 1, total)
    } else {
        ScalarMatrix::from_rows(&field, rows)
    };
    constraints
        .kernel_basis()
        .into_iter()
        .map(|k| {
            let mut comps = Vec::new();
            for (di, basis) in hom_bases.iter().enumerate() {
                let d = lo + di as i32;
                let mut m = ScalarMatrix::zeros(&field, x.dim_at(d), y.dim_at(d));
                for (j, h) in basis.iter().enumerate() {
                    let c = k.get(offsets[di] + j, 0);
                    if !c.is_zero() {
                        m = m.add(&h.matrix.scale(c));
                    }
                }
                comps.push(m);
            }
            ChainMap::unchecked(x.clone(), y.clone(), lo, comps)
        })
        .collect()
}

fn random_chain_combination(
    basis: &[ChainMap],
    x: &Arc<ProjComplex>,
    y: &Arc<ProjComplex>,
    rng: &mut ChaCha8Rng,
) -> ChainMap {
    let field = x.algebra().field().clone();
    let mut acc = ChainMap::zero(x, y);
    for f in basis {
        let c = Scalar::from_integer(rng.gen_range(-2..=2), &field);
        if !c.is_zero() {
            acc = acc.add(&f.scale(&c));
        }
    }
    acc
}

/// Random bounded complex: components are random sums of `e_iA`, and the
/// differentials are sampled from the space of radical-valued module maps
/// solving `d∘d = 0` degree by degree.
pub fn random_complex(
    algebra: &Arc<Algebra>,
    rng: &mut ChaCha8Rng,
    max_len: usize,
    max_rank: usize,
) -> Arc<ProjComplex> {
    let field = algebra.field().clone();
    let nv = algebra.num_vertices();
    loop {
        let len = rng.gen_range(1..=max_len);
        let mut comps = Vec::new();
        for _ in 0..len {
            let rank = rng.gen_range(0..=max_rank);
            let summands: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..nv)).collect();
            comps.push(realize_sum(algebra, &summands));
        }
        if comps.iter().all(|c| c.module.dim() == 0) {
            continue;
        }
        let mut diffs: Vec<ModuleMap> = Vec::new();
        let mut ok = true;
        for k in 0..len - 1 {
            let src = comps[k].module.clone();
            let tgt = comps[k + 1].module.clone();
            let basis = hom_space(&src, &tgt);
            // Constrain to radical-valued maps with d_prev then h = 0.
            let rad = tgt.radical_subspace();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            let prev = diffs.last().map(|d| d.matrix.clone());
            for (j, h) in basis.iter().enumerate() {
                let _ = j;
                let _ = h;
            }
            let total = basis.len();
            if total == 0 {
                diffs.push(ModuleMap::zero(&src, &tgt));
                continue;
            }
            // Radical-valued: every row of the combined matrix lies in rad.
            // Reduce each hom basis row modulo rad; the residue must cancel.
            for r in 0..src.dim() {
                for c_out in 0..tgt.dim() {
                    let mut row = vec![Scalar::zero(&field); total];
                    let mut nonzero = false;
                    for (j, h) in basis.iter().enumerate() {
                        let mut unit = vec![Scalar::zero(&field); src.dim()];
                        unit[r] = Scalar::one(&field);
                        let img = h.matrix.apply_row(&unit);
                        let red = rad.reduce(&img);
                        if !red[c_out].is_zero() {
                            row[j] = red[c_out].clone();
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
            if let Some(pm) = prev {
                for r in 0..pm.rows() {
                    for c_out in 0..tgt.dim() {
                        let mut row = vec![Scalar::zero(&field); total];
                        let mut nonzero = false;
                        for (j, h) in basis.iter().enumerate() {
                            let m = pm.mul(&h.matrix);
                            if !m.get(r, c_out).is_zero() {
                                row[j] = m.get(r, c_out).clone();
                                nonzero = true;
                            }
                        }
                        if nonzero {
                            rows.push(row);
                        }
                    }
                }
            }
            let constraints = if rows.is_empty() {
                ScalarMatrix::zeros(&field, 1, total)
            } else {
                ScalarMatrix::from_rows(&field, rows)
            };
            let solution_basis = constraints.kernel_basis();
            if solution_basis.is_empty() {
                diffs.push(ModuleMap::zero(&src, &tgt));
                continue;
            }
            let mut m = ScalarMatrix::zeros(&field, src.dim(), tgt.dim());
            for k2 in &solution_basis {
                let c = Scalar::from_integer(rng.gen_range(-1..=1), &field);
                if c.is_zero() {
                    continue;
                }
                for (j, h) in basis.iter().enumerate() {
                    let coeff = &c * k2.get(j, 0);
                    if !coeff.is_zero() {
                        m = m.add(&h.matrix.scale(&coeff));
                    }
                }
            }
            match ModuleMap::new(src.clone(), tgt.clone(), m) {
                Ok(d) => diffs.push(d),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        match ProjComplex::new(algebra.clone(), 0, comps, diffs) {
            Ok(c) => return c,
            Err(_) => continue,
        }
    }
}

// ---------------------------------------------------------------------------
// Character verification suite: homotopy invariance, isomorphism
// transport, additivity, triangle additivity, trace property

pub fn verify_character(algebra: &Arc<Algebra>, trials: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = algebra.field().clone();
    let mut checks = 0usize;
    let mut failures = Vec::new();

    for trial in 0..trials {
        let x = random_complex(algebra, &mut rng, 4, 3);
        let endo_basis = chain_hom_basis(&x, &x);
        let f = random_chain_combination(&endo_basis, &x, &x, &mut rng);

        // Homotopic representatives share the character.
        {
            // Random degreewise maps s^d (no chain condition needed).
            let mut comps = Vec::new();
            let lo = x.lo();
            for d in lo..=x.hi() + 1 {
                let basis = hom_space(&x.module_at(d), &x.module_at(d - 1));
                let mut m =
                    ScalarMatrix::zeros(&field, x.dim_at(d), x.dim_at(d - 1));
                for h in &basis {
                    let c = Scalar::from_integer(rng.gen_range(-2..=2), &field);
                    m = m.add(&h.matrix.scale(&c));
                }
                comps.push(m);
            }
            let s = Homotopy { lo, comps };
            // delta = s∘d + d∘s is null-homotopic by construction.
            let mut delta_comps = Vec::new();
            for d in lo..=x.hi() {
                let m = x
                    .differential_matrix(d)
                    .mul(&s.component(d + 1, &ChainMap::identity(&x)))
                    .add(&s.component(d, &ChainMap::identity(&x)).mul(&x.differential_matrix(d - 1)));
                delta_comps.push(m);
            }
            let delta = match ChainMap::new(x.clone(), x.clone(), lo, delta_comps) {
                Ok(d) => d,
                Err(e) => {
                    failures.push(format!("homotopy: delta not a chain map on trial {trial}: {e}"));
                    continue;
                }
            };
            checks += 1;
            if !hs_character(&delta).is_zero() {
                failures.push(format!("homotopy: null-homotopic endo has nonzero character (trial {trial})"));
            }
            checks += 1;
            match is_null_homotopic(&delta) {
                Some(w) => {
                    if !w.witnesses(&delta) {
                        failures.push(format!("homotopy: invalid witness (trial {trial})"));
                    }
                }
                None => failures.push(format!("homotopy: witness not found (trial {trial})")),
            }
            checks += 1;
            if hs_character(&f.add(&delta)) != hs_character(&f) {
                failures.push(format!("homotopy: character changed by homotopy (trial {trial})"));
            }
        }

        // Transport along an isomorphism of complexes.
        {
            let mut g = ChainMap::identity(&x);
            for _ in 0..4 {
                let n = random_chain_combination(&endo_basis, &x, &x, &mut rng);
                let cand = ChainMap::identity(&x).add(&n);
                if cand.inverse().is_some() {
                    g = cand;
                    break;
                }
            }
            let ginv = g.inverse().expect("identity fallback is invertible");
            // Transported complex Y with d_Y = g^{-1}·d_X·g, so that g: X → Y
            // is a chain isomorphism.
            let mut new_diffs = Vec::new();
            let mut new_comps = Vec::new();
            for d in x.lo()..=x.hi() {
                new_comps.push(x.realization_at(d).unwrap().clone());
            }
            for d in x.lo()..x.hi() {
                let m = ginv
                    .component_matrix(d)
                    .mul(&x.differential_matrix(d))
                    .mul(&g.component_matrix(d + 1));
                let src = x.module_at(d);
                let tgt = x.module_at(d + 1);
                match ModuleMap::new(src, tgt, m) {
                    Ok(map) => new_diffs.push(map),
                    Err(e) => {
                        failures.push(format!("transport: transported differential invalid: {e}"));
                        new_diffs.clear();
                        break;
                    }
                }
            }
            if new_diffs.len() == (x.hi() - x.lo()) as usize {
                match ProjComplex::new(algebra.clone(), x.lo(), new_comps, new_diffs) {
                    Ok(y) => {
                        let gxy = ChainMap::new(
                            x.clone(),
                            y.clone(),
                            g.lo,
                            g.comps.clone(),
                        )
                        .expect("g is a chain map to the transported complex");
                        let gback = gxy.inverse().expect("degreewise invertible");
                        let f_y = gback.then(&f).then(&gxy);
                        checks += 1;
                        if hs_character(&f) != hs_character(&f_y) {
                            failures
                                .push(format!("transport: character not iso-invariant (trial {trial})"));
                        }
                    }
                    Err(e) => failures.push(format!("transport: transported complex invalid: {e}")),
                }
            }
        }

        // Additivity in the endomorphism.
        {
            let f2 = random_chain_combination(&endo_basis, &x, &x, &mut rng);
            checks += 1;
            if hs_character(&f.add(&f2)) != hs_character(&f).add(&hs_character(&f2)) {
                failures.push(format!("additivity: sum of endomorphisms fails (trial {trial})"));
            }
        }

        // Split triangle X → X⊕Z → Z with triangular middle endomorphism.
        {
            let z = random_complex(algebra, &mut rng, 3, 2);
            let (middle, inc_dims) = direct_sum_complex(&x, &z);
            let fx = f.clone();
            let fz = {
                let b = chain_hom_basis(&z, &z);
                random_chain_combination(&b, &z, &z, &mut rng)
            };
            let h = {
                let b = chain_hom_basis(&z, &x);
                random_chain_combination(&b, &z, &x, &mut rng)
            };
            // Blocks: (x, z) ↦ (fx(x) + h(z), fz(z)).
            let mut comps = Vec::new();
            for d in middle.lo()..=middle.hi() {
                let (dx, dz) = inc_dims(d);
                let mut m = ScalarMatrix::zeros(&field, dx + dz, dx + dz);
                let fxm = fx.component_matrix(d);
                let fzm = fz.component_matrix(d);
                let hm = h.component_matrix(d);
                for i in 0..dx {
                    for j in 0..dx {
                        m.set(i, j, fxm.get(i, j).clone());
                    }
                }
                for i in 0..dz {
                    for j in 0..dx {
                        m.set(dx + i, j, hm.get(i, j).clone());
                    }
                    for j in 0..dz {
                        m.set(dx + i, dx + j, fzm.get(i, j).clone());
                    }
                }
                comps.push(m);
            }
            match ChainMap::new(middle.clone(), middle.clone(), middle.lo(), comps) {
                Ok(fm) => {
                    checks += 1;
                    if hs_character(&fm) != hs_character(&fx).add(&hs_character(&fz)) {
                        failures.push(format!("triangle: split additivity fails (trial {trial})"));
                    }
                }
                Err(e) => failures.push(format!("triangle: middle endo not a chain map: {e}")),
            }
        }

        // Cylinder/cone realization of a general map.
        {
            let z = random_complex(algebra, &mut rng, 3, 2);
            let homs = chain_hom_basis(&z, &x);
            let u = random_chain_combination(&homs, &z, &x, &mut rng);
            // Strictly commuting endomorphism pair (fz, fx): u∘?? u then fx = fz then u.
            let bz = chain_hom_basis(&z, &z);
            let bx = chain_hom_basis(&x, &x);
            let total = bz.len() + bx.len();
            let pair = if total == 0 {
                (ChainMap::zero(&z, &z), ChainMap::zero(&x, &x))
            } else {
                let mut rows: Vec<Vec<Scalar>> = Vec::new();
                for d in z.lo().min(x.lo())..=z.hi().max(x.hi()) {
                    let (r, c) = (z.dim_at(d), x.dim_at(d));
                    if r == 0 || c == 0 {
                        continue;
                    }
                    let um = u.component_matrix(d);
                    let mut block = vec![vec![Scalar::zero(&field); total]; r * c];
                    for (j, fz) in bz.iter().enumerate() {
                        let m = fz.component_matrix(d).mul(&um);
                        for i in 0..r {
                            for k in 0..c {
                                block[i * c + k][j] = m.get(i, k).clone();
                            }
                        }
                    }
                    for (j, fx) in bx.iter().enumerate() {
                        let m = um.mul(&fx.component_matrix(d));
                        for i in 0..r {
                            for k in 0..c {
                                let cur = &block[i * c + k][bz.len() + j] - m.get(i, k);
                                block[i * c + k][bz.len() + j] = cur;
                            }
                        }
                    }
                    rows.extend(block);
                }
                let constraints = if rows.is_empty() {
                    ScalarMatrix::zeros(&field, 1, total)
                } else {
                    ScalarMatrix::from_rows(&field, rows)
                };
                let sols = constraints.kernel_basis();
                let mut fz = ChainMap::zero(&z, &z);
                let mut fx = ChainMap::zero(&x, &x);
                for k in &sols {
                    let c = Scalar::from_integer(rng.gen_range(-1..=1), &field);
                    if c.is_zero() {
                        continue;
                    }
                    for (j, b) in bz.iter().enumerate() {
                        let coeff = &c * k.get(j, 0);
                        if !coeff.is_zero() {
                            fz = fz.add(&b.scale(&coeff));
                        }
                    }
                    for (j, b) in bx.iter().enumerate() {
                        let coeff = &c * k.get(bz.len() + j, 0);
                        if !coeff.is_zero() {
                            fx = fx.add(&b.scale(&coeff));
                        }
                    }
                }
                (fz, fx)
            };
            let (fz, fx) = pair;
            let data = cylinder(&u);
            // F_cyl = diag(fz^d, fz^{d+1}, fx^d); F_cone = diag(fz^{d+1}, fx^d).
            let mut cyl_comps = Vec::new();
            let mut cone_comps = Vec::new();
            for d in data.cylinder.lo()..=data.cylinder.hi() {
                let (a, b, c) = (z.dim_at(d), z.dim_at(d + 1), x.dim_at(d));
                let mut m = ScalarMatrix::zeros(&field, a + b + c, a + b + c);
                let f1 = fz.component_matrix(d);
                let f2 = fz.component_matrix(d + 1);
                let f3 = fx.component_matrix(d);
                for i in 0..a {
                    for j in 0..a {
                        m.set(i, j, f1.get(i, j).clone());
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m.set(a + i, a + j, f2.get(i, j).clone());
                    }
                }
                for i in 0..c {
                    for j in 0..c {
                        m.set(a + b + i, a + b + j, f3.get(i, j).clone());
                    }
                }
                cyl_comps.push(m);
                let mut mc = ScalarMatrix::zeros(&field, b + c, b + c);
                for i in 0..b {
                    for j in 0..b {
                        mc.set(i, j, f2.get(i, j).clone());
                    }
                }
                for i in 0..c {
                    for j in 0..c {
                        mc.set(b + i, b + j, f3.get(i, j).clone());
                    }
                }
                cone_comps.push(mc);
            }
            let fcyl = ChainMap::new(
                data.cylinder.clone(),
                data.cylinder.clone(),
                data.cylinder.lo(),
                cyl_comps,
            );
            let fcone =
                ChainMap::new(data.cone.clone(), data.cone.clone(), data.cone.lo(), cone_comps);
            match (fcyl, fcone) {
                (Ok(fcyl), Ok(fcone)) => {
                    checks += 1;
                    if hs_character(&fcyl)
                        != hs_character(&fz).add(&hs_character(&fcone))
                    {
                        failures.push(format!(
                            "triangle: cylinder/cone additivity fails (trial {trial})"
                        ));
                    }
                    checks += 1;
                    if hs_character(&fcyl) != hs_character(&fx) {
                        failures.push(format!(
                            "triangle: cylinder does not reproduce the target character (trial {trial})"
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    failures.push(format!("triangle: induced endo not a chain map: {e}"));
                }
            }
        }

        // Trace property: χ(u then v on X) = χ(v then u on Z).
        {
            let z = random_complex(algebra, &mut rng, 3, 2);
            let uv = chain_hom_basis(&x, &z);
            let vu = chain_hom_basis(&z, &x);
            let u = random_chain_combination(&uv, &x, &z, &mut rng);
            let v = random_chain_combination(&vu, &z, &x, &mut rng);
            checks += 1;
            if hs_character(&u.then(&v)) != hs_character(&v.then(&u)) {
                failures.push(format!("trace-property: fails (trial {trial})"));
            }
        }
    }
    CheckReport { checks, failures }
}

/// Componentwise direct sum of two complexes; returns the sum and a dims
/// helper `degree ↦ (dim X^d, dim Z^d)`.
fn direct_sum_complex(
    x: &Arc<ProjComplex>,
    z: &Arc<ProjComplex>,
) -> (Arc<ProjComplex>, impl Fn(i32) -> (usize, usize)) {
    let algebra = x.algebra().clone();
    let field = algebra.field().clone();
    let lo = x.lo().min(z.lo());
    let hi = x.hi().max(z.hi());
    let zero_r = zero_realization(&algebra);
    let mut comps = Vec::new();
    for d in lo..=hi {
        let a = x.realization_at(d).unwrap_or(&zero_r);
        let b = z.realization_at(d).unwrap_or(&zero_r);
        comps.push(direct_sum_realizations(&algebra, &[a, b]));
    }
    let mut diffs = Vec::new();
    for d in lo..hi {
        let m = ScalarMatrix::block_diag(
            &field,
            &[&x.differential_matrix(d), &z.differential_matrix(d)],
        );
        let src = comps[(d - lo) as usize].module.clone();
        let tgt = comps[(d - lo + 1) as usize].module.clone();
        diffs.push(ModuleMap::unchecked(src, tgt, m));
    }
    let sum = ProjComplex::new(algebra, lo, comps, diffs).expect("direct sum complex");
    let (xl, zl) = (x.clone(), z.clone());
    (sum, move |d: i32| (xl.dim_at(d), zl.dim_at(d)))
}

// ---------------------------------------------------------------------------
// Tensoring bimodule complexes by radical powers

/// A bounded complex of bimodules (right modules over the envelope).
pub struct BimoduleComplex {
    pub lo: i32,
    pub bimodules: Vec<Bimodule>,
    /// `differentials[k]: bimodules[k] → bimodules[k+1]` over the envelope.
    pub differentials: Vec<ModuleMap>,
}

impl BimoduleComplex {
    /// View a minimal envelope resolution `P^0 ← P^{-1} ← …` as a cochain
    /// complex in degrees `-len..=0`.
    pub fn from_resolution(
        res: &Resolution,
        a: &Arc<Algebra>,
        b: &Arc<Algebra>,
        env: &Arc<Algebra>,
    ) -> BimoduleComplex {
        let len = res.modules.len();
        let lo = -(len as i32 - 1);
        let mut bimodules = Vec::new();
        for k in (0..len).rev() {
            bimodules.push(Bimodule::from_envelope_module(
                a.clone(),
                b.clone(),
                env.clone(),
                res.modules[k].clone(),
            ));
        }
        let mut differentials = Vec::new();
        for k in (0..res.differentials.len()).rev() {
            differentials.push(res.differentials[k].clone());
        }
        BimoduleComplex { lo, bimodules, differentials }
    }

    pub fn len(&self) -> usize {
        self.bimodules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bimodules.is_empty()
    }
}

/// The complex `J^j ⊗_A P•` of projective right `B`-modules, with the data
/// needed to build induced endomorphisms.
pub struct TensoredComplex {
    pub complex: Arc<ProjComplex>,
    spaces: Vec<TensorSpace>,
    j_module: Arc<RightModule>,
    j_inclusion: ModuleMap,
}

/// Tensor the bimodule complex with `J^j` (as a right `A`-module).
/// Every term must be projective over `B`; otherwise this errors.
pub fn ideal_tensor_complex(
    a: &Arc<Algebra>,
    j: usize,
    bc: &BimoduleComplex,
) -> Result<TensoredComplex> {
    assert!(!bc.is_empty());
    let b = bc.bimodules[0].right_algebra.clone();
    let regular = RightModule::regular(a.clone());
    let jp = a.radical_power(j);
    let (j_module, j_inclusion) = if jp.dim() == 0 {
        let z = RightModule::zero(a.clone());
        let map = ModuleMap::zero(&z, &regular);
        (z, map)
    } else {
        submodule(&regular, &jp)?
    };

    let mut spaces = Vec::new();
    let mut comps = Vec::new();
    for bm in &bc.bimodules {
        let (ts, module) = crate::modrep::tensor_with_bimodule(&j_module, bm);
        let realization = realize(&module).map_err(|_| {
            Error::NotProjective("tensored component is not projective over B".into())
        })?;
        spaces.push(ts);
        comps.push(realization);
    }
    let mut diffs = Vec::new();
    for (k, d) in bc.differentials.iter().enumerate() {
        let m = spaces[k].induced_right(&spaces[k + 1], &d.matrix);
        let src = comps[k].module.clone();
        let tgt = comps[k + 1].module.clone();
        diffs.push(ModuleMap::new(src, tgt, m)?);
    }
    let complex = ProjComplex::new(b, bc.lo, comps, diffs)?;
    Ok(TensoredComplex { complex, spaces, j_module, j_inclusion })
}

impl TensoredComplex {
    /// The endomorphism `l_a ⊗ id` of the tensored complex, for `a ∈ J`.
    pub fn left_mult_endo(&self, a_elem: &[Scalar]) -> Result<ChainMap> {
        let alg = self.j_module.algebra().clone();
        // l_a on J^j in submodule coordinates.
        let la = if self.j_module.dim() == 0 {
            ScalarMatrix::zeros(alg.field(), 0, 0)
        } else {
            let basis = &self.j_inclusion.matrix;
            let image = basis.mul(&alg.left_mult_matrix(a_elem));
            basis
                .transpose()
                .solve(&image.transpose())
                .expect("shapes agree")
                .ok_or_else(|| {
                    Error::NotCommuting("left multiplication does not preserve J^j".into())
                })?
                .transpose()
        };
        let mut comps = Vec::new();
        for (k, ts) in self.spaces.iter().enumerate() {
            let _ = k;
            comps.push(ts.induced_left(ts, &la));
        }
        ChainMap::new(
            self.complex.clone(),
            self.complex.clone(),
            self.complex.lo(),
            comps,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, loop_x2};
    use crate::modrep::{envelope, minimal_resolution};

    fn arc(a: crate::algebra::Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    fn loop_two_term() -> (Arc<Algebra>, Arc<ProjComplex>) {
        // 0 → A → A → 0 over k[x]/(x^2) with d = l_x, degrees 0 and 1.
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let r0 = realize(&reg).unwrap();
        let r1 = realize(&reg).unwrap();
        let x = alg.basis_elem(1);
        let d = ModuleMap::new(reg.clone(), reg.clone(), alg.left_mult_matrix(&x)).unwrap();
        let c = ProjComplex::new(alg.clone(), 0, vec![r0, r1], vec![d]).unwrap();
        (alg, c)
    }

    #[test]
    fn two_term_complex_builds() {
        let (_, c) = loop_two_term();
        assert_eq!(c.lo(), 0);
        assert_eq!(c.hi(), 1);
        assert_eq!(c.dim_at(0), 2);
    }

    #[test]
    fn rejects_non_complex() {
        // d = identity does not square to zero over a 3-term complex.
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let r = || realize(&reg).unwrap();
        let id = ModuleMap::identity(&reg);
        let res = ProjComplex::new(alg, 0, vec![r(), r(), r()], vec![id.clone(), id]);
        assert!(res.is_err());
    }

    #[test]
    fn null_homotopy_of_zero_map() {
        let (_, c) = loop_two_term();
        let z = ChainMap::zero(&c, &c);
        let w = is_null_homotopic(&z).unwrap();
        assert!(w.witnesses(&z));
    }

    #[test]
    fn identity_on_rigid_complex_is_not_null_homotopic() {
        // Stalk complex with zero differential: identity is not null-homotopic.
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let c = ProjComplex::stalk(alg, 0, realize(&reg).unwrap());
        let id = ChainMap::identity(&c);
        assert!(is_null_homotopic(&id).is_none());
    }

    #[test]
    fn lx_endo_is_null_homotopic_on_two_term() {
        let (alg, c) = loop_two_term();
        let x = alg.basis_elem(1);
        let lx = alg.left_mult_matrix(&x);
        let f = ChainMap::new(c.clone(), c.clone(), 0, vec![lx.clone(), lx]).unwrap();
        let w = is_null_homotopic(&f).expect("l_x = id∘l_x is null-homotopic");
        assert!(w.witnesses(&f));
        assert!(hs_character(&f).is_zero());
    }

    #[test]
    fn character_of_stalk_is_trace() {
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let c = ProjComplex::stalk(alg.clone(), 0, realize(&reg).unwrap());
        let x = alg.basis_elem(1);
        let f = ChainMap::new(c.clone(), c.clone(), 0, vec![alg.left_mult_matrix(&x)]).unwrap();
        assert_eq!(hs_character(&f), alg.hh0_class(&x));
    }

    #[test]
    fn character_alternates_signs() {
        let (alg, c) = loop_two_term();
        let x = alg.basis_elem(1);
        let lx = alg.left_mult_matrix(&x);
        let f = ChainMap::new(c.clone(), c.clone(), 0, vec![lx.clone(), lx]).unwrap();
        // x̄ − x̄ = 0.
        assert!(hs_character(&f).is_zero());
        let id = ChainMap::identity(&c);
        // 1̄ − 1̄ = 0 as well.
        assert!(hs_character(&id).is_zero());
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let c = ProjComplex::stalk(alg.clone(), 0, realize(&reg).unwrap());
        let id = ChainMap::identity(&c);
        let cn = cone(&id);
        assert_eq!(cn.lo(), -1);
        assert_eq!(cn.hi(), 0);
        // The identity of the cone is null-homotopic (contractible).
        let idc = ChainMap::identity(&cn);
        assert!(is_null_homotopic(&idc).is_some());
    }

    #[test]
    fn cone_of_zero_is_shift_plus_target() {
        let alg = arc(a2());
        let reg = RightModule::regular(alg.clone());
        let c = ProjComplex::stalk(alg.clone(), 0, realize(&reg).unwrap());
        let z = ChainMap::zero(&c, &c);
        let cn = cone(&z);
        assert_eq!(cn.dim_at(-1), 3);
        assert_eq!(cn.dim_at(0), 3);
        assert!(cn.differential_matrix(-1).is_zero());
    }

    #[test]
    fn cylinder_triangle_shapes() {
        let (alg, c) = loop_two_term();
        let _ = alg;
        let id = ChainMap::identity(&c);
        let data = cylinder(&id);
        data.include_source.check().unwrap();
        data.project_cone.check().unwrap();
        data.compress.check().unwrap();
        data.embed.check().unwrap();
        // Compress∘embed is the identity of P.
        let ce = data.embed.then(&data.compress);
        assert_eq!(ce, ChainMap::identity(&c));
    }

    #[test]
    fn shift_flips_signs() {
        let (_, c) = loop_two_term();
        let s = shift(&c, 1);
        assert_eq!(s.lo(), -1);
        assert_eq!(s.differential_matrix(-1), c.differential_matrix(0).neg());
    }

    #[test]
    fn character_suite_on_small_fixtures() {
        for alg in [arc(a2()), arc(loop_x2())] {
            let report = verify_character(&alg, 6, 1);
            assert!(report.ok(), "failures: {:?}", report.failures);
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn ideal_tensor_complex_dimensions() {
        // Over k[x]/(x^2): bimodule resolution of A starts A⊗A ← Ω; tensor
        // the regular bimodule complex (one term) by powers of J.
        let a = arc(loop_x2());
        let env = envelope(&a, &a).unwrap();
        let bm = crate::modrep::Bimodule::regular(&a, &a, &env).unwrap();
        let bc = BimoduleComplex { lo: 0, bimodules: vec![bm], differentials: vec![] };
        // j = 0: A ⊗_A (A⊗A) ≅ A⊗A, dimension 4.
        let t0 = ideal_tensor_complex(&a, 0, &bc).unwrap();
        assert_eq!(t0.complex.dim_at(0), 4);
        // j = 1: J ⊗_A (A⊗A) ≅ x·A ⊗ A, dimension 2.
        let t1 = ideal_tensor_complex(&a, 1, &bc).unwrap();
        assert_eq!(t1.complex.dim_at(0), 2);
        // j = t = 2: zero complex.
        let t2 = ideal_tensor_complex(&a, 2, &bc).unwrap();
        assert!(t2.complex.is_zero());
    }

    #[test]
    fn tensored_resolution_of_bar_reproduces_class() {
        // A = A2, e = e1: Ā ≅ k; resolution of Ā over the envelope; the
        // character of l_a on J^0 ⊗ P• equals the class of ā in Ā.
        let a = arc(a2());
        let (bar, proj) = crate::algebra::corner_quotient(&a, 0).unwrap();
        let bar = arc(bar);
        let env = envelope(&a, &bar).unwrap();
        let left: Vec<ScalarMatrix> = (0..a.dim())
            .map(|u| bar.left_mult_matrix(&proj.apply_row(&a.basis_elem(u))))
            .collect();
        let right: Vec<ScalarMatrix> =
            (0..bar.dim()).map(|v| bar.right_mult_matrix(&bar.basis_elem(v))).collect();
        let bm = Bimodule::from_actions(a.clone(), bar.clone(), env.clone(), left, right).unwrap();
        let res = minimal_resolution(&bm.module, 10);
        assert!(res.terminated);
        let bc = BimoduleComplex::from_resolution(&res, &a, &bar, &env);
        let tc = ideal_tensor_complex(&a, 0, &bc).unwrap();
        // l_a for the arrow a: class of ā = 0 in Ā = k.
        let arrow = a.basis_elem(2);
        let endo = tc.left_mult_endo(&arrow).unwrap();
        let chi = hs_character(&endo);
        assert_eq!(chi, bar.hh0_class(&proj.apply_row(&arrow)));
        assert!(chi.is_zero());
    }
}
