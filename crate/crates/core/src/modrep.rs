//! Finite-dimensional right modules given by exact action matrices, with
//! hom spaces, tops and projective covers, syzygies, minimal resolutions,
//! Ext/Tor dimensions, projective dimension up to a bound, and the
//! bimodule-as-module bridge through the enveloping algebra.
//!
//! Conventions, fixed once:
//! * module elements are row vectors and actions multiply on the right,
//!   so `act(xy) = act(x)·act(y)`;
//! * maps compose left to right: `(f then g)` has matrix `F·G`;
//! * left modules are right modules over the opposite algebra;
//! * an `A`-`B`-bimodule is a right module over `tensor(opposite(A), B)`.

use std::sync::Arc;

use crate::algebra::{opposite, tensor, Algebra};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, ScalarMatrix, Subspace};

/// A finite-dimensional right module: one action matrix per algebra basis
/// element, acting on row vectors.
#[derive(Debug, Clone)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<ScalarMatrix>,
}

impl PartialEq for RightModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            && self.dim == other.dim
            && self.action == other.action
    }
}

impl RightModule {
    pub fn new(algebra: Arc<Algebra>, action: Vec<ScalarMatrix>) -> Result<Arc<RightModule>> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(
                "one action matrix per algebra basis element required".into(),
            ));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch("action matrices must be square".into()));
            }
        }
        let module = RightModule { algebra, dim, action };
        let unit_act = module.act_elem(module.algebra.unit());
        if unit_act != ScalarMatrix::identity(module.algebra.field(), dim) {
            return Err(Error::DimensionMismatch("unit must act as the identity".into()));
        }
        Ok(Arc::new(module))
    }

    pub fn zero(algebra: Arc<Algebra>) -> Arc<RightModule> {
        let n = algebra.dim();
        let field = algebra.field().clone();
        RightModule::new(algebra, vec![ScalarMatrix::zeros(&field, 0, 0); n]).unwrap()
    }

    /// The regular module `A_A`.
    pub fn regular(algebra: Arc<Algebra>) -> Arc<RightModule> {
        let action: Vec<ScalarMatrix> = (0..algebra.dim())
            .map(|j| algebra.right_mult_matrix(&algebra.basis_elem(j)))
            .collect();
        RightModule::new(algebra, action).unwrap()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn act(&self, i: usize) -> &ScalarMatrix {
        &self.action[i]
    }

    pub fn action(&self) -> &[ScalarMatrix] {
        &self.action
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act_elem(&self, z: &[Scalar]) -> ScalarMatrix {
        let field = self.algebra.field();
        let mut out = ScalarMatrix::zeros(field, self.dim, self.dim);
        for (i, c) in z.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.act_elem(z).apply_row(v)
    }

    /// Full check that the action respects the multiplication table.
    pub fn validate_action(&self) -> Result<()> {
        let alg = &self.algebra;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let prod = alg.mul_elems(&alg.basis_elem(i), &alg.basis_elem(j));
                if self.action[i].mul(&self.action[j]) != self.act_elem(&prod) {
                    return Err(Error::DimensionMismatch(format!(
                        "action is not multiplicative at basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `M·J` as a subspace of the underlying space.
    pub fn radical_subspace(&self) -> Subspace {
        let field = self.algebra.field();
        let mut s = Subspace::zero(field, self.dim);
        for w in self.algebra.radical().basis_rows() {
            let act = self.act_elem(w);
            for r in 0..self.dim {
                s.insert(act.row(r));
            }
        }
        s
    }

    /// Smallest action-invariant subspace containing the generators.
    pub fn submodule_closure(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let field = self.algebra.field();
        let mut s = Subspace::zero(field, self.dim);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            // The reduced vector spans the same new direction as g.
            let red = s.reduce(g);
            if s.insert(&red) {
                queue.push(red);
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..self.algebra.dim() {
                let img = self.action[i].apply_row(&v);
                let red = s.reduce(&img);
                if s.insert(&red) {
                    queue.push(red);
                }
            }
        }
        s
    }
}

/// A homomorphism of right modules; `matrix` is `source.dim × target.dim`
/// and acts on row vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap {
    pub source: Arc<RightModule>,
    pub target: Arc<RightModule>,
    pub matrix: ScalarMatrix,
}

impl ModuleMap {
    pub fn new(
        source: Arc<RightModule>,
        target: Arc<RightModule>,
        matrix: ScalarMatrix,
    ) -> Result<ModuleMap> {
        let f = ModuleMap { source, target, matrix };
        f.check_intertwines()?;
        Ok(f)
    }

    pub(crate) fn unchecked(
        source: Arc<RightModule>,
        target: Arc<RightModule>,
        matrix: ScalarMatrix,
    ) -> ModuleMap {
        debug_assert!(matrix.rows() == source.dim() && matrix.cols() == target.dim());
        ModuleMap { source, target, matrix }
    }

    pub fn check_intertwines(&self) -> Result<()> {
        if self.matrix.rows() != self.source.dim() || self.matrix.cols() != self.target.dim() {
            return Err(Error::DimensionMismatch("map matrix has wrong shape".into()));
        }
        for i in 0..self.source.algebra.dim() {
            if self.source.act(i).mul(&self.matrix) != self.matrix.mul(self.target.act(i)) {
                return Err(Error::NotCommuting(format!(
                    "map does not intertwine basis element {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Arc<RightModule>) -> ModuleMap {
        ModuleMap::unchecked(
            m.clone(),
            m.clone(),
            ScalarMatrix::identity(m.algebra.field(), m.dim()),
        )
    }

    pub fn zero(source: &Arc<RightModule>, target: &Arc<RightModule>) -> ModuleMap {
        ModuleMap::unchecked(
            source.clone(),
            target.clone(),
            ScalarMatrix::zeros(source.algebra.field(), source.dim(), target.dim()),
        )
    }

    /// `self` then `g`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        assert!(*self.target == *g.source, "composition target/source mismatch");
        ModuleMap::unchecked(self.source.clone(), g.target.clone(), self.matrix.mul(&g.matrix))
    }

    pub fn add(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&g.matrix))
    }

    pub fn sub(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&g.matrix))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Kernel as a subspace of the source.
    pub fn kernel_subspace(&self) -> Subspace {
        let field = self.source.algebra.field();
        let cols = self.matrix.transpose();
        let mut s = Subspace::zero(field, self.source.dim());
        for v in cols.kernel_basis() {
            s.insert(&v.col(0));
        }
        s
    }

    /// Inverse of a bijective module map.
    pub fn inverse(&self) -> Option<ModuleMap> {
        self.matrix
            .inverse()
            .map(|inv| ModuleMap::unchecked(self.target.clone(), self.source.clone(), inv))
    }
}

/// Coordinates `X` with `X·B = V`, where the rows of `B` are independent.
fn coords_in_rowspace(basis: &ScalarMatrix, vectors: &ScalarMatrix) -> Option<ScalarMatrix> {
    basis.transpose().solve(&vectors.transpose()).expect("shapes agree").map(|x| x.transpose())
}

/// Restrict a linear map (acting on row vectors) to an invariant row
/// space: returns the matrix in the coordinates of `basis`, or `None` if
/// the space is not invariant.
pub fn restrict_map_to_rowspace(
    basis: &ScalarMatrix,
    map: &ScalarMatrix,
) -> Option<ScalarMatrix> {
    let image = basis.mul(map);
    let coords = coords_in_rowspace(basis, &image)?;
    if coords.mul(basis) == image {
        Some(coords)
    } else {
        None
    }
}

fn subspace_matrix(s: &Subspace) -> ScalarMatrix {
    ScalarMatrix::from_rows(s.field(), s.basis_rows().to_vec())
}

/// The submodule on an invariant subspace, with its inclusion map.
pub fn submodule(m: &Arc<RightModule>, sub: &Subspace) -> Result<(Arc<RightModule>, ModuleMap)> {
    let basis = subspace_matrix(sub);
    let mut action = Vec::new();
    for i in 0..m.algebra().dim() {
        let image = basis.mul(m.act(i));
        let coords = coords_in_rowspace(&basis, &image).ok_or_else(|| {
            Error::DimensionMismatch(format!("subspace not invariant under basis element {i}"))
        })?;
        if coords.mul(&basis) != image {
            return Err(Error::DimensionMismatch(format!(
                "subspace not invariant under basis element {i}"
            )));
        }
        action.push(coords);
    }
    let module = RightModule::new(m.algebra().clone(), action)?;
    let inclusion = ModuleMap::unchecked(module.clone(), m.clone(), basis);
    Ok((module, inclusion))
}

/// The quotient module by an invariant subspace, with its projection.
pub fn quotient(m: &Arc<RightModule>, sub: &Subspace) -> Result<(Arc<RightModule>, ModuleMap)> {
    let field = m.algebra().field().clone();
    for row in sub.basis_rows() {
        for i in 0..m.algebra().dim() {
            if !sub.contains(&m.act(i).apply_row(row)) {
                return Err(Error::DimensionMismatch(format!(
                    "subspace not invariant under basis element {i}"
                )));
            }
        }
    }
    let comp = sub.complement_positions();
    let qdim = comp.len();
    let mut proj = ScalarMatrix::zeros(&field, m.dim(), qdim);
    for r in 0..m.dim() {
        let mut unit = vec![Scalar::zero(&field); m.dim()];
        unit[r] = Scalar::one(&field);
        for (c, v) in sub.coset_coords(&unit).into_iter().enumerate() {
            proj.set(r, c, v);
        }
    }
    let mut action = Vec::new();
    for i in 0..m.algebra().dim() {
        let mut act = ScalarMatrix::zeros(&field, qdim, qdim);
        for (r, &pos) in comp.iter().enumerate() {
            let mut unit = vec![Scalar::zero(&field); m.dim()];
            unit[pos] = Scalar::one(&field);
            let img = m.act(i).apply_row(&unit);
            for (c, v) in sub.coset_coords(&img).into_iter().enumerate() {
                act.set(r, c, v);
            }
        }
        action.push(act);
    }
    let module = RightModule::new(m.algebra().clone(), action)?;
    let projection = ModuleMap::unchecked(m.clone(), module.clone(), proj);
    Ok((module, projection))
}

/// `e_i A` as a submodule of the regular module, with its inclusion.
pub fn indecomposable_projective(
    algebra: &Arc<Algebra>,
    i: usize,
) -> (Arc<RightModule>, ModuleMap) {
    let regular = RightModule::regular(algebra.clone());
    let left = algebra.left_mult_matrix(algebra.idempotent(i));
    let mut sub = Subspace::zero(algebra.field(), algebra.dim());
    for r in 0..algebra.dim() {
        sub.insert(left.row(r));
    }
    submodule(&regular, &sub).expect("e_i A is invariant")
}

/// The simple module `S_i = e_i A / e_i J`.
pub fn simple(algebra: &Arc<Algebra>, i: usize) -> Arc<RightModule> {
    let (p, _) = indecomposable_projective(algebra, i);
    let rad = p.radical_subspace();
    quotient(&p, &rad).expect("radical subspace is invariant").0
}

/// Direct sum with the canonical inclusions and projections.
pub fn direct_sum(
    algebra: &Arc<Algebra>,
    parts: &[Arc<RightModule>],
) -> (Arc<RightModule>, Vec<ModuleMap>, Vec<ModuleMap>) {
    let field = algebra.field().clone();
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    let mut action = Vec::new();
    for i in 0..algebra.dim() {
        let blocks: Vec<&ScalarMatrix> = parts.iter().map(|p| p.act(i)).collect();
        action.push(ScalarMatrix::block_diag(&field, &blocks));
    }
    let sum = RightModule::new(algebra.clone(), action).unwrap();
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for p in parts {
        let mut inc = ScalarMatrix::zeros(&field, p.dim(), total);
        let mut prj = ScalarMatrix::zeros(&field, total, p.dim());
        for r in 0..p.dim() {
            inc.set(r, offset + r, Scalar::one(&field));
            prj.set(offset + r, r, Scalar::one(&field));
        }
        inclusions.push(ModuleMap::unchecked(p.clone(), sum.clone(), inc));
        projections.push(ModuleMap::unchecked(sum.clone(), p.clone(), prj));
        offset += p.dim();
    }
    (sum, inclusions, projections)
}

/// Canonical basis of `Hom_A(M, N)`: kernel of the stacked intertwining
/// constraints, in RREF order.
pub fn hom_space(m: &Arc<RightModule>, n: &Arc<RightModule>) -> Vec<ModuleMap> {
    assert!(Arc::ptr_eq(m.algebra(), n.algebra()), "modules over different algebras");
    let field = m.algebra().field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let unknowns = dm * dn;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for b in 0..m.algebra().dim() {
        let am = m.act(b);
        let an = n.act(b);
        // Constraint: am·F − F·an = 0, entry (i, j).
        for i in 0..dm {
            for j in 0..dn {
                let mut row = vec![Scalar::zero(&field); unknowns];
                for k in 0..dm {
                    let c = am.get(i, k);
                    if !c.is_zero() {
                        row[k * dn + j] = &row[k * dn + j] + c;
                    }
                }
                for l in 0..dn {
                    let c = an.get(l, j);
                    if !c.is_zero() {
                        row[i * dn + l] = &row[i * dn + l] - c;
                    }
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let constraints = if rows.is_empty() {
        ScalarMatrix::zeros(&field, 1, unknowns)
    } else {
        ScalarMatrix::from_rows(&field, rows)
    };
    constraints
        .kernel_basis()
        .into_iter()
        .map(|k| {
            let mat = ScalarMatrix::from_fn(&field, dm, dn, |i, j| k.get(i * dn + j, 0).clone());
            ModuleMap::unchecked(m.clone(), n.clone(), mat)
        })
        .collect()
}

/// Top `M/MJ` and projective cover `⊕ e_i A^{m_i} → M`. Also returns the
/// vertex index of each cover summand in order.
pub fn top_and_cover(m: &Arc<RightModule>) -> (Arc<RightModule>, ModuleMap, Vec<usize>) {
    let algebra = m.algebra().clone();
    let field = algebra.field().clone();
    if m.dim() == 0 {
        let z = RightModule::zero(algebra.clone());
        let map = ModuleMap::zero(&z, m);
        return (z, map, Vec::new());
    }
    let rad = m.radical_subspace();
    let (top, pi) = quotient(m, &rad).expect("MJ is invariant");

    let mut summand_modules: Vec<Arc<RightModule>> = Vec::new();
    let mut summand_maps: Vec<ScalarMatrix> = Vec::new();
    let mut summands = Vec::new();
    for v in 0..algebra.num_vertices() {
        let e = algebra.idempotent(v);
        // top·e_i: row space of the idempotent action on the top.
        let img = top.act_elem(e);
        let mut space = Subspace::zero(&field, top.dim());
        for r in 0..top.dim() {
            space.insert(img.row(r));
        }
        if space.dim() == 0 {
            continue;
        }
        let (proj, inc) = indecomposable_projective(&algebra, v);
        for w in space.basis_rows() {
            // Lift w through the projection and force the lift into M·e_i.
            let lift = pi
                .matrix
                .transpose()
                .solve(&ScalarMatrix::column(&field, w))
                .expect("shapes agree")
                .expect("projection is surjective");
            let x: Vec<Scalar> = lift.col(0);
            let gen = m.act_elem(e).apply_row(&x);
            // Map e_iA → M: subspace basis row k ↦ gen·act(row k).
            let mut mat = ScalarMatrix::zeros(&field, proj.dim(), m.dim());
            for k in 0..proj.dim() {
                let elem = inc.matrix.row(k); // coordinates inside A
                let img = m.act_elem(elem).apply_row(&gen);
                for (c, val) in img.into_iter().enumerate() {
                    mat.set(k, c, val);
                }
            }
            summand_modules.push(proj.clone());
            summand_maps.push(mat);
            summands.push(v);
        }
    }

    let (cover, _, _) = direct_sum(&algebra, &summand_modules);
    let mut stacked = ScalarMatrix::zeros(&field, 0, m.dim());
    for mat in &summand_maps {
        stacked = stacked.vstack(mat);
    }
    let cover_map = ModuleMap::unchecked(cover, m.clone(), stacked);
    debug_assert!(cover_map.check_intertwines().is_ok());
    // Projective cover properties: surjective with kernel inside (cover)·J.
    assert_eq!(cover_map.rank(), m.dim(), "cover map must be surjective");
    let ker = cover_map.kernel_subspace();
    let radp = cover_map.source.radical_subspace();
    assert!(
        ker.basis_rows().iter().all(|r| radp.contains(r)),
        "cover kernel must lie inside the radical (minimality)"
    );
    (top, cover_map, summands)
}

/// A minimal projective resolution computed to a bound, with augmentation.
#[derive(Debug, Clone)]
pub struct Resolution {
    /// `P^0, P^{-1}, …` in homological order.
    pub modules: Vec<Arc<RightModule>>,
    /// `differentials[i]: P^{-(i+1)} → P^{-i}`.
    pub differentials: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    /// Cover summand vertex indices per stage.
    pub summands: Vec<Vec<usize>>,
    pub terminated: bool,
    pub bound_used: usize,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }
}

/// Stage modules larger than this are not resolved further; resolutions of
/// wild algebras grow exponentially and callers must treat a truncated
/// resolution as unterminated evidence only.
pub const RESOLUTION_DIM_GUARD: usize = 60;

/// Iterate projective covers of successive syzygies. Stops after computing
/// `P^{-bound}`, when a syzygy vanishes, or when a stage module exceeds
/// [`RESOLUTION_DIM_GUARD`].
pub fn minimal_resolution(m: &Arc<RightModule>, bound: usize) -> Resolution {
    minimal_resolution_guarded(m, bound, RESOLUTION_DIM_GUARD)
}

pub fn minimal_resolution_guarded(
    m: &Arc<RightModule>,
    bound: usize,
    dim_guard: usize,
) -> Resolution {
    let (_, cover0, s0) = top_and_cover(m);
    let mut modules = vec![cover0.source.clone()];
    let mut summands = vec![s0];
    let mut differentials: Vec<ModuleMap> = Vec::new();
    let augmentation = cover0.clone();

    let mut current = cover0;
    let mut terminated = false;
    let mut stages = 0usize;
    for _ in 0..bound {
        let ker = current.kernel_subspace();
        if ker.dim() == 0 {
            terminated = true;
            break;
        }
        if ker.dim() > dim_guard {
            break;
        }
        let (kmod, kinc) = submodule(&current.source, &ker).expect("kernel is invariant");
        let (_, cover, s) = top_and_cover(&kmod);
        let d = cover.then(&kinc);
        modules.push(d.source.clone());
        summands.push(s);
        differentials.push(d.clone());
        current = cover;
        stages += 1;
    }
    if !terminated && stages == bound {
        // The last kernel may vanish exactly at the bound.
        terminated = current.kernel_subspace().dim() == 0;
    }
    Resolution { modules, differentials, augmentation, summands, terminated, bound_used: bound }
}

/// Multiplicity matrix of first syzygies of the simples: `C[i][j]` is the
/// multiplicity of `S_j` in `Ω_1(S_i)`, available when every `Ω_1(S_i)` is
/// semisimple (for instance over radical-square-zero algebras). Once a
/// syzygy is semisimple, all deeper Betti data follows this recursion
/// exactly: `Ω_1(⊕ S_j^{v_j}) = ⊕ Ω_1(S_j)^{v_j}`.
pub fn syzygy_multiplicities(algebra: &Arc<Algebra>) -> Option<Vec<Vec<u128>>> {
    let nv = algebra.num_vertices();
    let mut rows = Vec::with_capacity(nv);
    for i in 0..nv {
        let s = simple(algebra, i);
        let (_, cover, _) = top_and_cover(&s);
        let ker = cover.kernel_subspace();
        if ker.dim() == 0 {
            rows.push(vec![0u128; nv]);
            continue;
        }
        let (kmod, _) = submodule(&cover.source, &ker).expect("kernel is invariant");
        if kmod.radical_subspace().dim() != 0 {
            return None;
        }
        rows.push(semisimple_multiplicities(&kmod));
    }
    Some(rows)
}

/// Multiplicities of each simple in a semisimple module.
pub fn semisimple_multiplicities(m: &RightModule) -> Vec<u128> {
    let algebra = m.algebra();
    (0..algebra.num_vertices())
        .map(|j| m.act_elem(algebra.idempotent(j)).rank() as u128)
        .collect()
}

/// Projective dimension with per-stage Betti numbers (summand counts of
/// each `P^{-i}`, zero past termination). Stages are explicit until a
/// syzygy is semisimple and the multiplicity recursion applies, or until
/// the size guard trips (in which case the Betti vector is truncated and
/// the dimension is reported as `AtLeast` of the stages actually seen).
pub fn resolution_betti(m: &Arc<RightModule>, bound: usize) -> (ProjDim, Vec<u128>) {
    let algebra = m.algebra().clone();
    if m.dim() == 0 {
        return (ProjDim::Finite(0), vec![0; bound + 1]);
    }
    let mut betti = Vec::with_capacity(bound + 1);
    let (top0, cover0, _) = top_and_cover(m);
    betti.push(top0.dim() as u128);
    let mut current = cover0;
    let mut stage = 0usize;
    loop {
        let ker = current.kernel_subspace();
        if ker.dim() == 0 {
            betti.resize(bound + 1, 0);
            return (ProjDim::Finite(stage), betti);
        }
        if stage == bound {
            return (ProjDim::AtLeast(bound), betti);
        }
        let (kmod, _) = submodule(&current.source, &ker).expect("kernel is invariant");
        if kmod.radical_subspace().dim() == 0 {
            if let Some(c) = syzygy_multiplicities(&algebra) {
                // Symbolic finish: Ω_{stage+1} ≅ ⊕ S_j^{v_j}.
                let mut v = semisimple_multiplicities(&kmod);
                let mut s = stage;
                loop {
                    s += 1;
                    betti.push(v.iter().sum());
                    if s == bound {
                        // v ≠ 0 here, so the resolution continues past the bound.
                        return (ProjDim::AtLeast(bound), betti);
                    }
                    let next: Vec<u128> = (0..v.len())
                        .map(|j| {
                            (0..v.len())
                                .map(|i| v[i].saturating_mul(c[i][j]))
                                .fold(0u128, u128::saturating_add)
                        })
                        .collect();
                    if next.iter().all(|&x| x == 0) {
                        betti.resize(bound + 1, 0);
                        return (ProjDim::Finite(s), betti);
                    }
                    v = next;
                }
            }
        }
        if kmod.dim() > RESOLUTION_DIM_GUARD {
            // pd is at least stage+1; nothing stronger is certified.
            return (ProjDim::AtLeast(stage + 1), betti);
        }
        let (top, cover, _) = top_and_cover(&kmod);
        betti.push(top.dim() as u128);
        current = cover;
        stage += 1;
    }
}

pub fn proj_dim(m: &Arc<RightModule>, bound: usize) -> ProjDim {
    resolution_betti(m, bound).0
}

/// `Ω_i(M)`: kernel at stage `i` of the minimal resolution, as a module.
pub fn syzygy(m: &Arc<RightModule>, i: usize) -> Arc<RightModule> {
    if i == 0 {
        return m.clone();
    }
    let res = minimal_resolution(m, i - 1);
    if res.modules.len() < i {
        return RightModule::zero(m.algebra().clone());
    }
    let last = if i == 1 { &res.augmentation } else { &res.differentials[i - 2] };
    let ker = last.kernel_subspace();
    if ker.dim() == 0 {
        return RightModule::zero(m.algebra().clone());
    }
    submodule(&last.source, &ker).expect("kernel is invariant").0
}

/// Projective dimension detected up to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjDim {
    Finite(usize),
    AtLeast(usize),
}

impl ProjDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, ProjDim::Finite(_))
    }
}

impl std::fmt::Display for ProjDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjDim::Finite(n) => write!(f, "{n}"),
            ProjDim::AtLeast(b) => write!(f, ">={b}"),
        }
    }
}

/// Dimensions of `Ext^i(M, N)` for `i = 0..=max_i`, via the Hom complex of
/// a minimal resolution. Also reports whether all induced differentials
/// vanish (they must when `N = A/J` and the resolution is minimal).
pub fn ext_data(m: &Arc<RightModule>, n: &Arc<RightModule>, max_i: usize) -> (Vec<usize>, bool) {
    let res = minimal_resolution(m, max_i);
    ext_data_res(&res, n, max_i)
}

/// Ext dimensions against a precomputed resolution; entries past the
/// computed stages are zero only when the resolution terminated.
pub fn ext_data_res(res: &Resolution, n: &Arc<RightModule>, max_i: usize) -> (Vec<usize>, bool) {
    let m = &res.augmentation.target;
    let field = m.algebra().field().clone();
    let stages = res.modules.len();
    let homs: Vec<Vec<ModuleMap>> = res.modules.iter().map(|p| hom_space(p, n)).collect();
    // delta_i: Hom(P^{-i}, N) → Hom(P^{-(i+1)}, N), f ↦ d_{i+1} then f.
    let mut ranks = vec![0usize; stages + 1];
    let mut all_zero = true;
    for i in 0..stages.saturating_sub(1) {
        let src = &homs[i];
        let tgt = &homs[i + 1];
        if src.is_empty() || tgt.is_empty() {
            continue;
        }
        let d = &res.differentials[i];
        let tgt_flat =
            ScalarMatrix::from_rows(&field, tgt.iter().map(|f| flatten(&f.matrix)).collect());
        let mut rows = Vec::new();
        for f in src {
            let composed = d.matrix.mul(&f.matrix);
            if !composed.is_zero() {
                all_zero = false;
            }
            let coords = coords_in_rowspace(
                &tgt_flat,
                &ScalarMatrix::from_rows(&field, vec![flatten(&composed)]),
            )
            .expect("composition lies in the hom space");
            rows.push(coords.row(0).to_vec());
        }
        ranks[i + 1] = ScalarMatrix::from_rows(&field, rows).rank();
    }
    let mut dims = Vec::new();
    for i in 0..=max_i {
        let h = if i < stages { homs[i].len() } else { 0 };
        let d = h - ranks.get(i + 1).copied().unwrap_or(0) - ranks.get(i).copied().unwrap_or(0);
        dims.push(d);
    }
    (dims, all_zero)
}

pub fn ext_dims(m: &Arc<RightModule>, n: &Arc<RightModule>, max_i: usize) -> Vec<usize> {
    ext_data(m, n, max_i).0
}

fn flatten(m: &ScalarMatrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        v.extend(m.row(i).iter().cloned());
    }
    v
}

// ---------------------------------------------------------------------------
// Tensor products over the algebra

/// `P ⊗_A N` for a right module `P` and a left action on `N`, presented as
/// the quotient of `P ⊗_k N` by the balancing relations. Ambient index of
/// the pure tensor `p_i ⊗ n_j` is `i·right_dim + j`.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    pub left_dim: usize,
    pub right_dim: usize,
    pub relations: Subspace,
}

impl TensorSpace {
    /// Build from the right module `P` and left action matrices `L(b)` per
    /// algebra basis element (`vec(b·n) = vec(n)·L(b)`).
    pub fn new(p: &RightModule, left_action: &[ScalarMatrix], n_dim: usize) -> TensorSpace {
        let field = p.algebra().field().clone();
        let (dp, dn) = (p.dim(), n_dim);
        let ambient = dp * dn;
        let mut rel = Subspace::zero(&field, ambient);
        for b in 0..p.algebra().dim() {
            let pa = p.act(b);
            let ln = &left_action[b];
            for i in 0..dp {
                for j in 0..dn {
                    // (p_i·b) ⊗ n_j − p_i ⊗ (b·n_j)
                    let mut row = vec![Scalar::zero(&field); ambient];
                    for k in 0..dp {
                        let c = pa.get(i, k);
                        if !c.is_zero() {
                            row[k * dn + j] = &row[k * dn + j] + c;
                        }
                    }
                    for l in 0..dn {
                        let c = ln.get(j, l);
                        if !c.is_zero() {
                            row[i * dn + l] = &row[i * dn + l] - c;
                        }
                    }
                    rel.insert(&row);
                }
            }
        }
        TensorSpace { left_dim: dp, right_dim: dn, relations: rel }
    }

    pub fn dim(&self) -> usize {
        self.left_dim * self.right_dim - self.relations.dim()
    }

    pub fn project(&self, ambient: &[Scalar]) -> Vec<Scalar> {
        self.relations.coset_coords(ambient)
    }

    /// Matrix of `f ⊗ id` in quotient coordinates, for `f: P → P'` with
    /// matrix `F`.
    pub fn induced_left(&self, target: &TensorSpace, f: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.right_dim, target.right_dim);
        let field = f.field().clone();
        let comp = self.relations.complement_positions();
        let mut out = ScalarMatrix::zeros(&field, self.dim(), target.dim());
        for (r, &pos) in comp.iter().enumerate() {
            let (i, j) = (pos / self.right_dim, pos % self.right_dim);
            let mut img = vec![Scalar::zero(&field); target.left_dim * target.right_dim];
            for k in 0..target.left_dim {
                let c = f.get(i, k);
                if !c.is_zero() {
                    img[k * target.right_dim + j] = c.clone();
                }
            }
            for (c, v) in target.project(&img).into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }

    /// Matrix of `id ⊗ g` in quotient coordinates, for `g` acting on the
    /// `N` side (`N → N'` with matrix `G`).
    pub fn induced_right(&self, target: &TensorSpace, g: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.left_dim, target.left_dim);
        let field = g.field().clone();
        let comp = self.relations.complement_positions();
        let mut out = ScalarMatrix::zeros(&field, self.dim(), target.dim());
        for (r, &pos) in comp.iter().enumerate() {
            let (i, j) = (pos / self.right_dim, pos % self.right_dim);
            let mut img = vec![Scalar::zero(&field); target.left_dim * target.right_dim];
            for l in 0..target.right_dim {
                let c = g.get(j, l);
                if !c.is_zero() {
                    img[i * target.right_dim + l] = c.clone();
                }
            }
            for (c, v) in target.project(&img).into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }
}

/// Dimensions of `Tor_i(M, N)` for `i = 0..=max_i`, where `N` is a left
/// module given as a right module over the opposite algebra. Also reports
/// whether all induced differentials vanish.
pub fn tor_data(m: &Arc<RightModule>, n_op: &Arc<RightModule>, max_i: usize) -> (Vec<usize>, bool) {
    let res = minimal_resolution(m, max_i);
    tor_data_res(&res, n_op, max_i)
}

/// Tor dimensions against a precomputed resolution.
pub fn tor_data_res(res: &Resolution, n_op: &Arc<RightModule>, max_i: usize) -> (Vec<usize>, bool) {
    let m = &res.augmentation.target;
    assert!(
        n_op.algebra().is_opposite_of(m.algebra()),
        "left module must be presented over the opposite algebra"
    );
    let left_action: Vec<ScalarMatrix> = n_op.action().to_vec();
    let spaces: Vec<TensorSpace> =
        res.modules.iter().map(|p| TensorSpace::new(p, &left_action, n_op.dim())).collect();
    let mut ranks = vec![0usize; spaces.len() + 1];
    let mut all_zero = true;
    for i in 0..spaces.len().saturating_sub(1) {
        // d_{i+1} ⊗ id : T(P^{-(i+1)}) → T(P^{-i})
        let d = &res.differentials[i];
        let mat = spaces[i + 1].induced_left(&spaces[i], &d.matrix);
        if !mat.is_zero() {
            all_zero = false;
        }
        ranks[i + 1] = mat.rank();
    }
    let mut dims = Vec::new();
    for i in 0..=max_i {
        let h = if i < spaces.len() { spaces[i].dim() } else { 0 };
        dims.push(h - ranks.get(i + 1).copied().unwrap_or(0) - ranks.get(i).copied().unwrap_or(0));
    }
    (dims, all_zero)
}

pub fn tor_dims(m: &Arc<RightModule>, n_op: &Arc<RightModule>, max_i: usize) -> Vec<usize> {
    tor_data(m, n_op, max_i).0
}

/// `A/J` as a right module (the direct sum of all simples).
pub fn top_of_regular(algebra: &Arc<Algebra>) -> Arc<RightModule> {
    let regular = RightModule::regular(algebra.clone());
    let rad = regular.radical_subspace();
    quotient(&regular, &rad).expect("J is invariant").0
}

// ---------------------------------------------------------------------------
// Bimodules through the enveloping algebra

/// An `A`-`B`-bimodule, stored as a right module over the envelope
/// `E = opposite(A) ⊗ B`; `(a^op ⊗ b)` acts by left-multiplying by `a` and
/// right-multiplying by `b`.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    pub envelope: Arc<Algebra>,
    pub module: Arc<RightModule>,
}

/// Build the envelope `opposite(A) ⊗ B` for bimodule work.
pub fn envelope(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    Ok(Arc::new(tensor(&opposite(a), b)?))
}

impl Bimodule {
    /// Assemble from one-sided actions; checks that they commute.
    /// `left[u]` is the matrix of `m ↦ b_u·m`, `right[v]` of `m ↦ m·b_v`.
    pub fn from_actions(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        env: Arc<Algebra>,
        left: Vec<ScalarMatrix>,
        right: Vec<ScalarMatrix>,
    ) -> Result<Bimodule> {
        if left.len() != left_algebra.dim() || right.len() != right_algebra.dim() {
            return Err(Error::DimensionMismatch("one action matrix per basis element".into()));
        }
        for (u, lu) in left.iter().enumerate() {
            for (v, rv) in right.iter().enumerate() {
                if lu.mul(rv) != rv.mul(lu) {
                    return Err(Error::NotCommuting(format!(
                        "left action of {u} and right action of {v} do not commute"
                    )));
                }
            }
        }
        let db = right_algebra.dim();
        let mut action = Vec::with_capacity(env.dim());
        for u in 0..left_algebra.dim() {
            for v in 0..db {
                action.push(left[u].mul(&right[v]));
            }
        }
        let module = RightModule::new(env.clone(), action)?;
        Ok(Bimodule { left_algebra, right_algebra, envelope: env, module })
    }

    /// Wrap an existing envelope module.
    pub fn from_envelope_module(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        env: Arc<Algebra>,
        module: Arc<RightModule>,
    ) -> Bimodule {
        assert!(Arc::ptr_eq(module.algebra(), &env));
        Bimodule { left_algebra, right_algebra, envelope: env, module }
    }

    /// The regular bimodule `A ⊗_k B` (equals the regular envelope module).
    pub fn regular(a: &Arc<Algebra>, b: &Arc<Algebra>, env: &Arc<Algebra>) -> Result<Bimodule> {
        let field = a.field().clone();
        let (da, db) = (a.dim(), b.dim());
        let mut left = Vec::new();
        for u in 0..da {
            let lu = a.left_mult_matrix(&a.basis_elem(u));
            left.push(kron(&field, &lu, &ScalarMatrix::identity(&field, db)));
        }
        let mut right = Vec::new();
        for v in 0..db {
            let rv = b.right_mult_matrix(&b.basis_elem(v));
            right.push(kron(&field, &ScalarMatrix::identity(&field, da), &rv));
        }
        Bimodule::from_actions(a.clone(), b.clone(), env.clone(), left, right)
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Matrix of left multiplication by `a ∈ A`.
    pub fn left_mult(&self, a: &[Scalar]) -> ScalarMatrix {
        let db = self.right_algebra.dim();
        let unit_b = self.right_algebra.unit();
        let field = self.left_algebra.field();
        let mut out = ScalarMatrix::zeros(field, self.module.dim(), self.module.dim());
        for (u, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (v, d) in unit_b.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                out = out.add(&self.module.act(u * db + v).scale(&(c * d)));
            }
        }
        out
    }

    /// Matrix of right multiplication by `b ∈ B`.
    pub fn right_mult(&self, b: &[Scalar]) -> ScalarMatrix {
        let db = self.right_algebra.dim();
        let unit_a = self.left_algebra.unit();
        let field = self.left_algebra.field();
        let mut out = ScalarMatrix::zeros(field, self.module.dim(), self.module.dim());
        for (v, d) in b.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (u, c) in unit_a.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out = out.add(&self.module.act(u * db + v).scale(&(c * d)));
            }
        }
        out
    }

    /// The underlying right `B`-module (restriction along `b ↦ 1⊗b`).
    pub fn right_restriction(&self) -> Arc<RightModule> {
        let action: Vec<ScalarMatrix> = (0..self.right_algebra.dim())
            .map(|v| self.right_mult(&self.right_algebra.basis_elem(v)))
            .collect();
        RightModule::new(self.right_algebra.clone(), action).expect("restriction is a module")
    }

    /// Left action matrices per `A`-basis element, for tensor products.
    pub fn left_action_matrices(&self) -> Vec<ScalarMatrix> {
        (0..self.left_algebra.dim())
            .map(|u| self.left_mult(&self.left_algebra.basis_elem(u)))
            .collect()
    }
}

fn kron(field: &crate::exactlin::FieldSpec, a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    ScalarMatrix::from_fn(field, ra * rb, ca * cb, |i, j| {
        let (ia, ib) = (i / rb, i % rb);
        let (ja, jb) = (j / cb, j % cb);
        a.get(ia, ja) * b.get(ib, jb)
    })
}

/// Tensor `M ⊗_A N` of a right `A`-module with an `A`-`B`-bimodule,
/// returning the tensor space and the induced right `B`-module.
pub fn tensor_with_bimodule(
    m: &Arc<RightModule>,
    bm: &Bimodule,
) -> (TensorSpace, Arc<RightModule>) {
    assert!(Arc::ptr_eq(m.algebra(), &bm.left_algebra), "tensor over the wrong algebra");
    let left = bm.left_action_matrices();
    let ts = TensorSpace::new(m, &left, bm.dim());
    let b = &bm.right_algebra;
    let mut action = Vec::new();
    for v in 0..b.dim() {
        let rv = bm.right_mult(&b.basis_elem(v));
        action.push(ts.induced_right(&ts, &rv));
    }
    let module = RightModule::new(b.clone(), action).expect("induced action is a module");
    (ts, module)
}

/// Randomized isomorphism test: look for an invertible intertwiner among
/// small random combinations of a hom basis.
pub fn find_module_iso(
    m: &Arc<RightModule>,
    n: &Arc<RightModule>,
    rng: &mut impl rand::Rng,
    attempts: usize,
) -> Option<ModuleMap> {
    if m.dim() != n.dim() {
        return None;
    }
    if m.dim() == 0 {
        return Some(ModuleMap::zero(m, n));
    }
    let basis = hom_space(m, n);
    if basis.is_empty() {
        return None;
    }
    let field = m.algebra().field().clone();
    for _ in 0..attempts {
        let mut mat = ScalarMatrix::zeros(&field, m.dim(), n.dim());
        for f in &basis {
            let c = Scalar::from_integer(rng.gen_range(-2..=2), &field);
            mat = mat.add(&f.matrix.scale(&c));
        }
        if mat.inverse().is_some() {
            return Some(ModuleMap::unchecked(m.clone(), n.clone(), mat));
        }
    }
    None
}
