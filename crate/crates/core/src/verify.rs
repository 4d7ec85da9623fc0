//! Executable forms of the homological statements: the testing-module
//! characterization of projective dimension, the corner-quotient bimodule
//! equality, the two bimodule trace propositions, the telescoping character
//! chain, and the strong-no-loop consistency check.
//!
//! Every "verified" outcome is an exact identity check; "refuted" carries a
//! concrete witness and would falsify a proved statement, so the test suite
//! treats it as a failure of this artifact. "inconclusive" only appears
//! when a projective-dimension bound was hit.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{corner_quotient, ideal_quotient, opposite, Algebra};
use crate::complexes::{hs_character, ideal_tensor_complex, BimoduleComplex};
use crate::error::Result;
use crate::exactlin::{Scalar, ScalarMatrix, Subspace};
use crate::modrep::{
    envelope, minimal_resolution, proj_dim, quotient, simple, submodule, top_of_regular, Bimodule,
    ModuleMap, ProjDim, RightModule,
};
use crate::trace::{hs_trace, realize, realize_sum};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Verified,
    Refuted,
    Inconclusive(usize),
}

/// One checked statement instance, with witnesses for the record.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub instance: String,
    pub outcome: Outcome,
    pub witnesses: Vec<String>,
}

impl TheoremReport {
    fn new(id: &str, instance: String) -> TheoremReport {
        TheoremReport {
            id: id.to_string(),
            instance,
            outcome: Outcome::Verified,
            witnesses: Vec::new(),
        }
    }

    fn refute(&mut self, witness: String) {
        self.outcome = Outcome::Refuted;
        self.witnesses.push(witness);
    }

    fn note(&mut self, witness: String) {
        self.witnesses.push(witness);
    }

    pub fn is_refuted(&self) -> bool {
        self.outcome == Outcome::Refuted
    }
}

fn sup_nonzero(dims: &[usize]) -> Option<usize> {
    dims.iter().enumerate().rev().find(|(_, &d)| d != 0).map(|(i, _)| i)
}

/// pd M = sup{i : Ext^i(M, A/J) ≠ 0} = sup{i : Tor_i(M, A/J) ≠ 0}.
///
/// Ext and Tor are computed through their own machinery (Hom complexes,
/// tensor quotients) on an explicit resolution prefix; on non-terminating
/// resolutions whose syzygies enter the semisimple regime, the deeper
/// Betti data is the exact multiplicity recursion and is cross-checked
/// against the explicit prefix.
pub fn check_pd_detected_by_top(
    algebra: &Arc<Algebra>,
    op_algebra: &Arc<Algebra>,
    m: &Arc<RightModule>,
    bound: usize,
) -> TheoremReport {
    let mut report =
        TheoremReport::new("pd-top-detection", format!("module of dim {} over {}", m.dim(), algebra.field()));
    assert!(m.dim() > 0, "pd detection requires a nonzero module");
    let (pd, betti) = crate::modrep::resolution_betti(m, bound);
    let top_right = top_of_regular(algebra);
    let top_left = top_of_regular(op_algebra);

    // Explicit resolution prefix: full depth when it terminates, otherwise
    // as deep as stays small.
    let explicit_depth = match pd {
        ProjDim::Finite(n) => n.min(bound),
        ProjDim::AtLeast(_) => bound.min(20),
    };
    let res = crate::modrep::minimal_resolution_guarded(m, explicit_depth, 24);
    let depth_reached = res.modules.len() - 1;
    let (ext_dims, ext_zero) = crate::modrep::ext_data_res(&res, &top_right, depth_reached);
    let (tor_dims, tor_zero) = crate::modrep::tor_data_res(&res, &top_left, depth_reached);
    if !ext_zero {
        report.refute("Hom(P•, A/J) has a nonzero differential on a minimal resolution".into());
    }
    if !tor_zero {
        report.refute("A/J ⊗ P• has a nonzero differential on a minimal resolution".into());
    }
    // Cross-check the explicit Ext/Tor dimensions against the Betti counts.
    for i in 0..=depth_reached {
        let b = betti.get(i).copied().unwrap_or(0);
        if ext_dims[i] as u128 != b || tor_dims[i] as u128 != b {
            report.refute(format!(
                "explicit Ext/Tor at degree {i} disagree with the resolution: ext {}, tor {}, betti {b}",
                ext_dims[i], tor_dims[i]
            ));
        }
    }
    match pd {
        ProjDim::Finite(n) => {
            let ext_sup = sup_nonzero(&ext_dims);
            let tor_sup = sup_nonzero(&tor_dims);
            report.note(format!("pd = {n}, ext sup = {ext_sup:?}, tor sup = {tor_sup:?}"));
            if res.terminated && depth_reached == n {
                if ext_sup != Some(n) || tor_sup != Some(n) {
                    report.refute(format!(
                        "three-way equality fails: pd {n}, ext {ext_sup:?}, tor {tor_sup:?} \
                         (ext dims {ext_dims:?}, tor dims {tor_dims:?})"
                    ));
                }
            } else {
                // Finite pd found symbolically past the explicit prefix.
                let betti_sup =
                    betti.iter().enumerate().rev().find(|(_, &b)| b != 0).map(|(i, _)| i);
                if betti_sup != Some(n) {
                    report.refute(format!("betti sup {betti_sup:?} differs from pd {n}"));
                } else {
                    report.note("sup beyond the explicit prefix taken from the Betti recursion".into());
                }
            }
        }
        ProjDim::AtLeast(b) => {
            let ext_full = ext_dims.iter().all(|&d| d != 0);
            let tor_full = tor_dims.iter().all(|&d| d != 0);
            let betti_full = betti.iter().all(|&x| x != 0);
            if ext_full && tor_full && betti_full {
                report.outcome = Outcome::Inconclusive(b);
                report.note(format!(
                    "all of pd, Ext, Tor exceed the bound {b} (explicit to depth {depth_reached}, \
                     Betti recursion beyond)"
                ));
            } else {
                report.refute(format!(
                    "pd hits the bound but Ext/Tor/Betti vanish somewhere: ext {ext_dims:?}, \
                     tor {tor_dims:?}, betti {betti:?}"
                ));
            }
        }
    }
    report
}

/// Build `Ā = A/A(1-e_i)A` as an `(A, Ā)`-bimodule over the envelope.
pub fn corner_bimodule(
    algebra: &Arc<Algebra>,
    e_index: usize,
) -> Result<(Arc<Algebra>, ScalarMatrix, Arc<Algebra>, Bimodule)> {
    let (bar, proj) = corner_quotient(algebra, e_index)?;
    let bar = Arc::new(bar);
    let env = envelope(algebra, &bar)?;
    let left: Vec<ScalarMatrix> = (0..algebra.dim())
        .map(|u| bar.left_mult_matrix(&proj.apply_row(&algebra.basis_elem(u))))
        .collect();
    let right: Vec<ScalarMatrix> =
        (0..bar.dim()).map(|v| bar.right_mult_matrix(&bar.basis_elem(v))).collect();
    let bm = Bimodule::from_actions(algebra.clone(), bar.clone(), env.clone(), left, right)?;
    Ok((bar.clone(), proj, env, bm))
}

/// pd of the left simple `Ae/Je` equals pd of `Ā` over the envelope.
pub fn check_corner_pd_transfer(algebra: &Arc<Algebra>, e_index: usize, bound: usize) -> TheoremReport {
    let vertex = &algebra.vertex_names()[e_index];
    let mut report = TheoremReport::new("corner-pd-transfer", format!("vertex {vertex}"));
    let op = Arc::new(opposite(algebra));
    let left_simple = simple(&op, e_index);
    let pd_simple = proj_dim(&left_simple, bound);
    let (_, _, _, bm) = match corner_bimodule(algebra, e_index) {
        Ok(x) => x,
        Err(e) => {
            report.refute(format!("corner construction failed: {e}"));
            return report;
        }
    };
    let pd_bimodule = proj_dim(&bm.module, bound);
    report.note(format!("pd left simple = {pd_simple}, pd Ā over envelope = {pd_bimodule}"));
    match (pd_simple, pd_bimodule) {
        (ProjDim::Finite(a), ProjDim::Finite(b)) if a == b => {}
        (ProjDim::AtLeast(b1), ProjDim::AtLeast(_)) => {
            report.outcome = Outcome::Inconclusive(b1);
        }
        _ => report.refute(format!(
            "projective dimensions disagree: {pd_simple} vs {pd_bimodule}"
        )),
    }
    report
}

/// `tr_{P_B}(l_a) = 0` for a projective bimodule `P` and every given
/// radical element. The restriction is realized once and reused.
pub fn check_projective_bimodule_trace(
    bm: &Bimodule,
    elems: &[(String, Vec<Scalar>)],
    instance: &str,
) -> Vec<TheoremReport> {
    let restriction = bm.right_restriction();
    let realization = match realize(&restriction) {
        Ok(r) => r,
        Err(e) => {
            let mut report =
                TheoremReport::new("projective-bimodule-trace", instance.to_string());
            report.refute(format!("restriction is not projective over B: {e}"));
            return vec![report];
        }
    };
    let mut out = Vec::new();
    for (label, a_elem) in elems {
        let mut report = TheoremReport::new(
            "projective-bimodule-trace",
            format!("{instance}, a = {label}"),
        );
        if !bm.left_algebra.is_in_radical(a_elem) {
            report.refute("element is not in the radical".into());
            out.push(report);
            continue;
        }
        let la =
            ModuleMap::unchecked(restriction.clone(), restriction.clone(), bm.left_mult(a_elem));
        if la.check_intertwines().is_err() {
            report.refute("left multiplication is not a right-B map".into());
            out.push(report);
            continue;
        }
        let tr = hs_trace(&realization, &la);
        if tr.is_zero() {
            report.note("trace is exactly zero".into());
        } else {
            report.refute(format!("nonzero trace {tr}"));
        }
        out.push(report);
    }
    out
}

/// `tr_{M_B}(l_a) = (−1)^i tr_{Ω_i(M)_B}(l_a)` along the minimal envelope
/// resolution, checking every consecutive sign flip for every given
/// radical element. Each stage is realized once. Stages whose modules
/// exceed the size guard are not computed (noted in the witnesses).
pub fn check_syzygy_trace_signs(
    bm: &Bimodule,
    depth: usize,
    elems: &[(String, Vec<Scalar>)],
    instance: &str,
) -> Vec<TheoremReport> {
    const STAGE_DIM_GUARD: usize = 20;
    let mut reports: Vec<TheoremReport> = elems
        .iter()
        .map(|(label, _)| {
            TheoremReport::new("syzygy-trace-signs", format!("{instance}, a = {label}"))
        })
        .collect();
    for ((label, a_elem), report) in elems.iter().zip(reports.iter_mut()) {
        let _ = label;
        if !bm.left_algebra.is_in_radical(a_elem) {
            report.refute("element is not in the radical".into());
        }
    }
    if reports.iter().any(|r| r.is_refuted()) {
        return reports;
    }

    // Traces of l_a for all elements on the right-B restriction of an
    // envelope module, realized once.
    let traces_of = |module: &Arc<RightModule>| -> Result<Vec<crate::algebra::TraceClass>> {
        let wrapped = Bimodule::from_envelope_module(
            bm.left_algebra.clone(),
            bm.right_algebra.clone(),
            bm.envelope.clone(),
            module.clone(),
        );
        let restriction = wrapped.right_restriction();
        let realization = realize(&restriction)?;
        Ok(elems
            .iter()
            .map(|(_, a_elem)| {
                let la = ModuleMap::unchecked(
                    restriction.clone(),
                    restriction.clone(),
                    wrapped.left_mult(a_elem),
                );
                hs_trace(&realization, &la)
            })
            .collect())
    };

    let mut current = bm.module.clone();
    let mut prev = match traces_of(&current) {
        Ok(t) => t,
        Err(e) => {
            for report in reports.iter_mut() {
                report.refute(format!("M is not projective over B: {e}"));
            }
            return reports;
        }
    };
    for (report, t) in reports.iter_mut().zip(&prev) {
        report.note(format!("tr(M, l_a) = {t}"));
    }
    for i in 1..=depth {
        if current.dim() == 0 {
            for report in reports.iter_mut() {
                report.note(format!("syzygy {i} is zero; chain terminates"));
            }
            break;
        }
        let (_, cover, _) = crate::modrep::top_and_cover(&current);
        if cover.source.dim() > STAGE_DIM_GUARD {
            for report in reports.iter_mut() {
                report.note(format!("stage {i} exceeds the size guard; stopping early"));
            }
            break;
        }
        let ker = cover.kernel_subspace();
        let omega = if ker.dim() == 0 {
            RightModule::zero(bm.envelope.clone())
        } else {
            submodule(&cover.source, &ker).expect("kernel is invariant").0
        };
        let ts = if omega.dim() == 0 {
            vec![bm.right_algebra.hh0_zero(); elems.len()]
        } else {
            match traces_of(&omega) {
                Ok(t) => t,
                Err(e) => {
                    for report in reports.iter_mut() {
                        report.refute(format!("syzygy {i} is not projective over B: {e}"));
                    }
                    return reports;
                }
            }
        };
        for ((report, t), p) in reports.iter_mut().zip(&ts).zip(&prev) {
            report.note(format!("tr(Ω_{i}, l_a) = {t}"));
            if *t != p.neg() {
                report.refute(format!("sign flip fails at syzygy {i}: {t} vs -({p})"));
            }
        }
        if reports.iter().any(|r| r.is_refuted()) {
            return reports;
        }
        prev = ts;
        current = omega;
    }
    reports
}

/// The telescoping character chain: `class(ā) = χ(J^0⊗P•, l_a) = … =
/// χ(J^t⊗P•, l_a) = 0` for a spanning set of `J̄`, plus the exact subspace
/// containment `J̄ ⊆ [Ā,Ā]`.
pub fn check_telescoping_chain(
    algebra: &Arc<Algebra>,
    e_index: usize,
    bound: usize,
) -> TheoremReport {
    let vertex = &algebra.vertex_names()[e_index];
    let mut report = TheoremReport::new("telescoping-chain", format!("vertex {vertex}"));
    let (bar, proj, env, bm) = match corner_bimodule(algebra, e_index) {
        Ok(x) => x,
        Err(e) => {
            report.refute(format!("corner construction failed: {e}"));
            return report;
        }
    };
    let jbar = bar.radical();
    let commutators = &bar.hh0_basis().commutators;
    let contained = commutators.contains_subspace(&jbar);

    let res = minimal_resolution(&bm.module, bound);
    if !res.terminated {
        report.outcome = Outcome::Inconclusive(bound);
        report.note(format!(
            "pd of Ā over the envelope exceeds {bound}; J̄ ⊆ [Ā,Ā] is {}",
            if contained { "still true" } else { "false (expected for the negative control)" }
        ));
        return report;
    }
    let bc = BimoduleComplex::from_resolution(&res, algebra, &bar, &env);
    let t = algebra.loewy_length();

    // Spanning set of J̄: images of the J basis under the corner projection.
    for v in algebra.radical().basis_rows() {
        let abar = proj.apply_row(v);
        let class = bar.hh0_class(&abar);
        let mut previous: Option<crate::algebra::TraceClass> = None;
        for j in 0..=t {
            let tc = match ideal_tensor_complex(algebra, j, &bc) {
                Ok(tc) => tc,
                Err(e) => {
                    report.refute(format!("tensored complex at J^{j} failed: {e}"));
                    return report;
                }
            };
            let endo = match tc.left_mult_endo(v) {
                Ok(f) => f,
                Err(e) => {
                    report.refute(format!("l_a is not a chain endomorphism at J^{j}: {e}"));
                    return report;
                }
            };
            let chi = hs_character(&endo);
            if j == 0 && chi != class {
                report.refute(format!(
                    "χ(J^0⊗P•, l_a) = {chi} differs from the class {class}"
                ));
                return report;
            }
            if let Some(prev) = &previous {
                if *prev != chi {
                    report.refute(format!("telescoping fails at step {j}: {prev} vs {chi}"));
                    return report;
                }
            }
            if j == t && !chi.is_zero() {
                report.refute(format!("final character is nonzero: {chi}"));
                return report;
            }
            previous = Some(chi);

            // The induced map on the layer J^j/J^{j+1} is literally zero.
            if j < t {
                let jp = algebra.radical_power(j);
                if jp.dim() > 0 {
                    let regular = RightModule::regular(algebra.clone());
                    let (jmod, jinc) = submodule(&regular, &jp).expect("J^j invariant");
                    let next = algebra.radical_power(j + 1);
                    // J^{j+1} in J^j coordinates.
                    let mut sub = Subspace::zero(algebra.field(), jmod.dim());
                    for row in next.basis_rows() {
                        let coords = jinc
                            .matrix
                            .transpose()
                            .solve(&ScalarMatrix::column(algebra.field(), row))
                            .expect("shapes agree")
                            .expect("J^{j+1} ⊆ J^j");
                        sub.insert(&coords.col(0));
                    }
                    let (layer, lproj) = quotient(&jmod, &sub).expect("invariant");
                    if layer.dim() > 0 {
                        // l_a on the layer: lift, multiply, project.
                        let la_on_j = jinc.matrix.mul(&algebra.left_mult_matrix(v));
                        let la_coords = jinc
                            .matrix
                            .transpose()
                            .solve(&la_on_j.transpose())
                            .expect("shapes agree")
                            .expect("a·J^j ⊆ J^j")
                            .transpose();
                        // Induced on the quotient: check it kills everything.
                        let induced = la_coords.mul(&lproj.matrix);
                        if !induced.is_zero() {
                            report.refute(format!(
                                "l_a is nonzero on the layer J^{j}/J^{}",
                                j + 1
                            ));
                            return report;
                        }
                    }
                }
            }
        }
        report.note(format!("chain for one radical generator: class {class} telescopes to 0"));
    }

    if contained {
        report.note("J̄ ⊆ [Ā,Ā] holds by exact subspace containment".into());
    } else {
        report.refute("J̄ ⊄ [Ā,Ā] despite a finite resolution".into());
    }
    report
}

/// The strong-no-loop consistency check, with the local radical-square-zero
/// re-derivation at every finite-pd vertex.
pub fn check_strong_no_loop(algebra: &Arc<Algebra>, bound: usize) -> TheoremReport {
    let mut report = TheoremReport::new("strong-no-loop", format!("all {} vertices", algebra.num_vertices()));
    let op = Arc::new(opposite(algebra));
    for i in 0..algebra.num_vertices() {
        let vertex = algebra.vertex_names()[i].clone();
        let left_simple = simple(&op, i);
        let pd = proj_dim(&left_simple, bound);
        let ext1_corner = algebra.corner_ext1_dim(i);
        // Dual route: Ext^1 over the opposite algebra.
        let ext1_hom = crate::modrep::ext_dims(&left_simple, &left_simple, 1)[1];
        if ext1_corner != ext1_hom {
            report.refute(format!(
                "vertex {vertex}: corner formula gives {ext1_corner} but Ext^1 is {ext1_hom}"
            ));
            continue;
        }
        report.note(format!("vertex {vertex}: pd = {pd}, dim Ext^1(S,S) = {ext1_hom}"));
        match pd {
            ProjDim::Finite(_) => {
                if ext1_hom != 0 {
                    report.refute(format!(
                        "vertex {vertex}: finite pd but Ext^1(S,S) = {ext1_hom} ≠ 0"
                    ));
                    continue;
                }
                // Re-derivation: Ā local, A' = Ā/J̄² commutative with J' = 0
                // once J̄ ⊆ [Ā,Ā].
                match corner_quotient(algebra, i) {
                    Ok((bar, _)) => {
                        if !bar.is_local() {
                            report.refute(format!("vertex {vertex}: Ā is not local"));
                            continue;
                        }
                        let jbar = bar.radical();
                        let contained = bar.hh0_basis().commutators.contains_subspace(&jbar);
                        if !contained {
                            report.refute(format!("vertex {vertex}: J̄ ⊄ [Ā,Ā] at finite pd"));
                            continue;
                        }
                        let jbar2 = bar.radical_power(2);
                        let bar_arc = Arc::new(bar);
                        match ideal_quotient(&bar_arc, &jbar2) {
                            Ok((aprime, _)) => {
                                if !aprime.is_commutative() {
                                    report.refute(format!(
                                        "vertex {vertex}: A' = Ā/J̄² is not commutative"
                                    ));
                                    continue;
                                }
                                if aprime.hh0_basis().commutators.dim() != 0 {
                                    report.refute(format!(
                                        "vertex {vertex}: [A',A'] ≠ 0 for commutative A'"
                                    ));
                                    continue;
                                }
                                let jprime = aprime.radical();
                                if jprime.dim() != 0 {
                                    report.refute(format!(
                                        "vertex {vertex}: J' ≠ 0 although J̄ ⊆ [Ā,Ā]"
                                    ));
                                    continue;
                                }
                                report.note(format!(
                                    "vertex {vertex}: A' is local, commutative, J' = 0 = Ext^1"
                                ));
                            }
                            Err(e) => {
                                report.refute(format!("vertex {vertex}: J̄² quotient failed: {e}"))
                            }
                        }
                    }
                    Err(e) => report.refute(format!("vertex {vertex}: corner failed: {e}")),
                }
            }
            ProjDim::AtLeast(b) => {
                if ext1_hom == 0 {
                    // Not a contradiction of the theorem, only of the
                    // converse; record it.
                    report.note(format!(
                        "vertex {vertex}: no loop but pd not settled within {b}"
                    ));
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Random modules for the pd-detection suite

/// Random module of dimension ≤ `max_dim`: a quotient of a random sum of
/// indecomposable projectives by a random submodule.
pub fn random_module(
    algebra: &Arc<Algebra>,
    rng: &mut ChaCha8Rng,
    max_dim: usize,
) -> Option<Arc<RightModule>> {
    let field = algebra.field().clone();
    let nv = algebra.num_vertices();
    let count = rng.gen_range(1..=3);
    let summands: Vec<usize> = (0..count).map(|_| rng.gen_range(0..nv)).collect();
    let p = realize_sum(algebra, &summands).module;
    let gens = rng.gen_range(0..=2);
    let mut vectors = Vec::new();
    for _ in 0..gens {
        let v: Vec<Scalar> =
            (0..p.dim()).map(|_| Scalar::from_integer(rng.gen_range(-2..=2), &field)).collect();
        vectors.push(v);
    }
    let sub = p.submodule_closure(&vectors);
    let (m, _) = quotient(&p, &sub).ok()?;
    if m.dim() == 0 || m.dim() > max_dim {
        None
    } else {
        Some(m)
    }
}

/// Sample random modules until `required` of them have terminated
/// resolutions, checking the three-way pd equality on every sample.
pub fn pd_detection_suite(
    algebra: &Arc<Algebra>,
    required: usize,
    seed: u64,
    bound: usize,
) -> Vec<TheoremReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let op = Arc::new(opposite(algebra));
    let mut reports = Vec::new();
    // Named instances first: the simples and the regular module.
    for i in 0..algebra.num_vertices() {
        let s = simple(algebra, i);
        let mut r = check_pd_detected_by_top(algebra, &op, &s, bound);
        r.instance = format!("simple at vertex {}", algebra.vertex_names()[i]);
        reports.push(r);
    }
    let reg = RightModule::regular(algebra.clone());
    let mut r = check_pd_detected_by_top(algebra, &op, &reg, bound);
    r.instance = "regular module".into();
    reports.push(r);

    let mut terminated = 0usize;
    let mut attempts = 0usize;
    while terminated < required && attempts < 60 * required {
        attempts += 1;
        let Some(m) = random_module(algebra, &mut rng, 6) else { continue };
        // Quick termination probe so the suite counts finite-pd samples.
        let finite = proj_dim(&m, bound).is_finite();
        let mut r = check_pd_detected_by_top(algebra, &op, &m, bound);
        r.instance = format!("random module #{attempts} of dim {}", m.dim());
        if finite {
            terminated += 1;
        }
        reports.push(r);
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, a3_rel, loop_x2, square, two_loop};

    fn arc(a: crate::algebra::Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn pd_detection_on_named_modules() {
        let alg = arc(a2());
        let op = Arc::new(opposite(&alg));
        let s1 = simple(&alg, 0);
        let r = check_pd_detected_by_top(&alg, &op, &s1, 10);
        assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.witnesses);
        let reg = RightModule::regular(alg.clone());
        let r = check_pd_detected_by_top(&alg, &op, &reg, 10);
        assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.witnesses);
    }

    #[test]
    fn pd_detection_inconclusive_on_loop_simple() {
        let alg = arc(loop_x2());
        let op = Arc::new(opposite(&alg));
        let s = simple(&alg, 0);
        let r = check_pd_detected_by_top(&alg, &op, &s, 8);
        assert_eq!(r.outcome, Outcome::Inconclusive(8), "{:?}", r.witnesses);
    }

    #[test]
    fn corner_pd_transfer_values_on_a2() {
        let alg = arc(a2());
        let r0 = check_corner_pd_transfer(&alg, 0, 10);
        assert_eq!(r0.outcome, Outcome::Verified, "{:?}", r0.witnesses);
        assert!(r0.witnesses[0].contains("pd left simple = 0"));
        let r1 = check_corner_pd_transfer(&alg, 1, 10);
        assert_eq!(r1.outcome, Outcome::Verified, "{:?}", r1.witnesses);
        assert!(r1.witnesses[0].contains("pd left simple = 1"));
    }

    #[test]
    fn corner_pd_transfer_values_on_a3() {
        let alg = arc(a3_rel());
        let r = check_corner_pd_transfer(&alg, 2, 10);
        assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.witnesses);
        assert!(r.witnesses[0].contains("pd left simple = 2"), "{:?}", r.witnesses);
    }

    #[test]
    fn corner_pd_transfer_inconclusive_on_loop() {
        let alg = arc(loop_x2());
        let r = check_corner_pd_transfer(&alg, 0, 6);
        assert_eq!(r.outcome, Outcome::Inconclusive(6), "{:?}", r.witnesses);
    }

    fn regular_as_bimodule(a: &Arc<Algebra>) -> Bimodule {
        let env = envelope(a, a).unwrap();
        let left: Vec<ScalarMatrix> =
            (0..a.dim()).map(|u| a.left_mult_matrix(&a.basis_elem(u))).collect();
        let right: Vec<ScalarMatrix> =
            (0..a.dim()).map(|v| a.right_mult_matrix(&a.basis_elem(v))).collect();
        Bimodule::from_actions(a.clone(), a.clone(), env, left, right).unwrap()
    }

    #[test]
    fn projective_bimodule_traces_vanish() {
        let a = arc(loop_x2());
        let env = envelope(&a, &a).unwrap();
        let bm = Bimodule::regular(&a, &a, &env).unwrap();
        let x = a.basis_elem(1);
        let rs = check_projective_bimodule_trace(&bm, &[("x".into(), x)], "A⊗A");
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].outcome, Outcome::Verified, "{:?}", rs[0].witnesses);
    }

    #[test]
    fn projective_bimodule_trace_rejects_non_radical() {
        let a = arc(loop_x2());
        let env = envelope(&a, &a).unwrap();
        let bm = Bimodule::regular(&a, &a, &env).unwrap();
        let rs =
            check_projective_bimodule_trace(&bm, &[("1".into(), a.unit().clone())], "A⊗A");
        assert!(rs[0].is_refuted());
    }

    #[test]
    fn syzygy_trace_on_loop_regular_bimodule() {
        // The hand-derived value: tr(Ω_1, l_x) = −x̄.
        let a = arc(loop_x2());
        let bm = regular_as_bimodule(&a);
        let x = a.basis_elem(1);
        let rs = check_syzygy_trace_signs(&bm, 3, &[("x".into(), x)], "A as bimodule");
        let r = &rs[0];
        assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.witnesses);
        // tr(M) = x̄ has coordinates [0, 1]; the first syzygy trace is −x̄.
        assert!(r.witnesses[0].contains("[0, 1]"), "{:?}", r.witnesses);
        assert!(r.witnesses[1].contains("[0, -1]"), "{:?}", r.witnesses);
    }

    #[test]
    fn syzygy_trace_on_a3_bimodule() {
        let a = arc(a3_rel());
        let bm = regular_as_bimodule(&a);
        let elems: Vec<(String, Vec<Scalar>)> = a
            .radical()
            .basis_rows()
            .iter()
            .enumerate()
            .map(|(r, v)| (format!("J basis {r}"), v.clone()))
            .collect();
        for rep in check_syzygy_trace_signs(&bm, 3, &elems, "A3 bimodule") {
            assert_eq!(rep.outcome, Outcome::Verified, "{:?}", rep.witnesses);
        }
    }

    #[test]
    fn telescoping_chain_on_a2_vertices() {
        let alg = arc(a2());
        for i in 0..2 {
            let r = check_telescoping_chain(&alg, i, 10);
            assert_eq!(r.outcome, Outcome::Verified, "vertex {i}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn telescoping_chain_on_a3_vertex3() {
        let alg = arc(a3_rel());
        let r = check_telescoping_chain(&alg, 2, 10);
        assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.witnesses);
    }

    #[test]
    fn telescoping_chain_inconclusive_on_loop() {
        let alg = arc(loop_x2());
        let r = check_telescoping_chain(&alg, 0, 6);
        assert_eq!(r.outcome, Outcome::Inconclusive(6));
        assert!(r.witnesses[0].contains("false"), "{:?}", r.witnesses);
    }

    #[test]
    fn strong_no_loop_on_fixtures() {
        for alg in [arc(a2()), arc(loop_x2()), arc(a3_rel()), arc(two_loop())] {
            let r = check_strong_no_loop(&alg, 20);
            assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.witnesses);
        }
    }

    #[test]
    fn pd_at_bound_twenty_on_loop_fixtures() {
        // The multiplicity recursion certifies the full bound even where
        // explicit resolutions grow exponentially.
        let tl = arc(two_loop());
        let op = Arc::new(opposite(&tl));
        let s = simple(&op, 0);
        assert_eq!(proj_dim(&s, 20), crate::modrep::ProjDim::AtLeast(20));
        let lx = arc(loop_x2());
        let s = simple(&lx, 0);
        assert_eq!(proj_dim(&s, 20), crate::modrep::ProjDim::AtLeast(20));
    }

    #[test]
    fn strong_no_loop_on_square() {
        let alg = arc(square());
        let r = check_strong_no_loop(&alg, 8);
        assert_eq!(r.outcome, Outcome::Verified, "{:?}", r.witnesses);
    }

    #[test]
    fn pd_detection_random_suite_small() {
        let alg = arc(a2());
        let reports = pd_detection_suite(&alg, 5, 1, 8);
        assert!(reports.iter().all(|r| !r.is_refuted()), "{reports:?}");
        let finite = reports
            .iter()
            .filter(|r| r.outcome == Outcome::Verified && r.instance.starts_with("random"))
            .count();
        assert!(finite >= 5, "only {finite} terminated random modules");
    }
}
