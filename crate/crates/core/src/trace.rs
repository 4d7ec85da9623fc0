//! The Hattori-Stallings trace `tr_P : End_A(P) → A/[A,A]`.
//!
//! A projective `P` is realized as the image of an idempotent matrix `E`
//! over `A` acting on a free module `A^n`, with an exact splitting
//! `include: P → A^n`, `retract: A^n → P`. An endomorphism `f` of `P`
//! lifts to the endomorphism `include∘f∘retract` of `A^n`, which is left
//! multiplication by an `n×n` matrix `F` over `A` with `F = EFE`; the
//! trace is the class of `Σ F_ii` in `A/[A,A]`.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraElement, TraceClass};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, ScalarMatrix};
use crate::modrep::{
    direct_sum, hom_space, indecomposable_projective, top_and_cover, ModuleMap, RightModule,
};

/// A split presentation of a projective as a summand of `A^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveRealization {
    pub module: Arc<RightModule>,
    pub rank: usize,
    /// `n×n` idempotent matrix over `A` with image `P`.
    pub idempotent: Vec<Vec<AlgebraElement>>,
    pub include: ModuleMap,
    pub retract: ModuleMap,
}

/// The free module `A^n` (a direct sum of `n` regular modules).
pub fn free_module(algebra: &Arc<Algebra>, n: usize) -> Arc<RightModule> {
    let parts: Vec<Arc<RightModule>> =
        (0..n).map(|_| RightModule::regular(algebra.clone())).collect();
    direct_sum(algebra, &parts).0
}

/// Matrix (on row vectors) of the right-module endomorphism of `A^n` given
/// by left multiplication with an `n×n` matrix over `A`.
fn left_mult_endo_matrix(algebra: &Arc<Algebra>, e: &[Vec<AlgebraElement>]) -> ScalarMatrix {
    let n = e.len();
    let d = algebra.dim();
    let field = algebra.field();
    let mut out = ScalarMatrix::zeros(field, n * d, n * d);
    // Output block i of g(x) is Σ_j E_ij·x_j, so block (row j, col i) = L(E_ij).
    for i in 0..n {
        for j in 0..n {
            let l = algebra.left_mult_matrix(&e[i][j]);
            for r in 0..d {
                for c in 0..d {
                    let v = l.get(r, c);
                    if !v.is_zero() {
                        out.set(j * d + r, i * d + c, v.clone());
                    }
                }
            }
        }
    }
    out
}

/// Read off the `n×n` matrix over `A` of a right-module endomorphism of
/// `A^n` (every such endomorphism is left multiplication by a matrix).
fn extract_matrix_over_a(
    algebra: &Arc<Algebra>,
    n: usize,
    endo: &ScalarMatrix,
) -> Vec<Vec<AlgebraElement>> {
    let d = algebra.dim();
    let field = algebra.field();
    let mut out = vec![vec![algebra.zero_elem(); n]; n];
    for j in 0..n {
        // Unit of A sitting in copy j.
        let mut x = vec![Scalar::zero(field); n * d];
        for (k, c) in algebra.unit().iter().enumerate() {
            x[j * d + k] = c.clone();
        }
        let img = endo.apply_row(&x);
        for (i, row) in out.iter_mut().enumerate() {
            row[j] = img[i * d..(i + 1) * d].to_vec();
        }
    }
    out
}

/// Realization of the canonical direct sum `⊕ e_{i_k}A`: `n` = number of
/// summands, `E = diag(e_{i_1}, …)`.
pub fn realize_sum(algebra: &Arc<Algebra>, summands: &[usize]) -> ProjectiveRealization {
    let field = algebra.field().clone();
    let d = algebra.dim();
    let n = summands.len();
    let parts: Vec<(Arc<RightModule>, ModuleMap)> =
        summands.iter().map(|&v| indecomposable_projective(algebra, v)).collect();
    let (module, _, _) = direct_sum(algebra, &parts.iter().map(|(m, _)| m.clone()).collect::<Vec<_>>());
    let free = free_module(algebra, n);

    let mut include = ScalarMatrix::zeros(&field, module.dim(), n * d);
    let mut retract = ScalarMatrix::zeros(&field, n * d, module.dim());
    let mut row_off = 0;
    for (k, (part, inc)) in parts.iter().enumerate() {
        // Block: e_iA → copy k of A.
        for r in 0..part.dim() {
            for c in 0..d {
                include.set(row_off + r, k * d + c, inc.matrix.get(r, c).clone());
            }
        }
        // Retraction: x ↦ coordinates of e_i·x inside e_iA.
        let le = algebra.left_mult_matrix(algebra.idempotent(summands[k]));
        let coords = inc
            .matrix
            .transpose()
            .solve(&le.transpose())
            .expect("shapes agree")
            .expect("e_i x lies in e_i A");
        let block = coords.transpose(); // d × part.dim()
        for r in 0..d {
            for c in 0..part.dim() {
                retract.set(k * d + r, row_off + c, block.get(r, c).clone());
            }
        }
        row_off += part.dim();
    }

    let mut idem = vec![vec![algebra.zero_elem(); n]; n];
    for (k, &v) in summands.iter().enumerate() {
        idem[k][k] = algebra.idempotent(v).clone();
    }

    let realization = ProjectiveRealization {
        module: module.clone(),
        rank: n,
        idempotent: idem,
        include: ModuleMap::unchecked(module.clone(), free.clone(), include),
        retract: ModuleMap::unchecked(free, module, retract),
    };
    debug_assert!(check_realization(algebra, &realization).is_ok());
    realization
}

fn check_realization(algebra: &Arc<Algebra>, r: &ProjectiveRealization) -> Result<()> {
    let n = r.rank;
    // E² = E over A.
    for i in 0..n {
        for j in 0..n {
            let mut acc = algebra.zero_elem();
            for k in 0..n {
                let prod = algebra.mul_elems(&r.idempotent[i][k], &r.idempotent[k][j]);
                for (t, c) in prod.iter().enumerate() {
                    acc[t] = &acc[t] + c;
                }
            }
            if acc != r.idempotent[i][j] {
                return Err(Error::NotProjective("matrix not idempotent".into()));
            }
        }
    }
    let id = ScalarMatrix::identity(algebra.field(), r.module.dim());
    if r.include.matrix.mul(&r.retract.matrix) != id {
        return Err(Error::NotProjective("include then retract is not the identity".into()));
    }
    let e_endo = left_mult_endo_matrix(algebra, &r.idempotent);
    if r.retract.matrix.mul(&r.include.matrix) != e_endo {
        return Err(Error::NotProjective("retract then include is not the idempotent".into()));
    }
    Ok(())
}

/// Find an idempotent realization of a projective module. Free modules are
/// recognized directly; otherwise the projective cover is split exactly,
/// and failure to split means the module is not projective.
pub fn realize(p: &Arc<RightModule>) -> Result<ProjectiveRealization> {
    let algebra = p.algebra().clone();
    let field = algebra.field().clone();
    let d = algebra.dim();

    // Free module of rank m, in block coordinates.
    if d > 0 && p.dim() % d == 0 {
        let m = p.dim() / d;
        let free = free_module(&algebra, m);
        if *free == **p {
            let mut idem = vec![vec![algebra.zero_elem(); m]; m];
            for (k, row) in idem.iter_mut().enumerate() {
                row[k] = algebra.unit().clone();
            }
            return Ok(ProjectiveRealization {
                module: p.clone(),
                rank: m,
                idempotent: idem,
                include: ModuleMap::identity(p),
                retract: ModuleMap::identity(p),
            });
        }
    }

    // Pure power of one e_jA in canonical block coordinates.
    for j in 0..algebra.num_vertices() {
        let pj = indecomposable_projective(&algebra, j).0;
        if pj.dim() == 0 || p.dim() % pj.dim() != 0 {
            continue;
        }
        let m = p.dim() / pj.dim();
        let candidate = realize_sum(&algebra, &vec![j; m]);
        if *candidate.module == **p {
            return Ok(candidate);
        }
    }

    let (_, cover, summands) = top_and_cover(p);
    let f = cover.source.clone();
    let rf = realize_sum(&algebra, &summands);
    // Solve for a section σ: P → F with σ then cover = id and σ a module map.
    let (dm, df) = (p.dim(), f.dim());
    let unknowns = dm * df;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for b in 0..algebra.dim() {
        let ap = p.act(b);
        let af = f.act(b);
        for i in 0..dm {
            for j in 0..df {
                let mut row = vec![Scalar::zero(&field); unknowns];
                for k in 0..dm {
                    let c = ap.get(i, k);
                    if !c.is_zero() {
                        row[k * df + j] = &row[k * df + j] + c;
                    }
                }
                for l in 0..df {
                    let c = af.get(l, j);
                    if !c.is_zero() {
                        row[i * df + l] = &row[i * df + l] - c;
                    }
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                    rhs.push(Scalar::zero(&field));
                }
            }
        }
    }
    // σ·Π = I.
    for i in 0..dm {
        for c in 0..dm {
            let mut row = vec![Scalar::zero(&field); unknowns];
            for j in 0..df {
                let v = cover.matrix.get(j, c);
                if !v.is_zero() {
                    row[i * df + j] = v.clone();
                }
            }
            rows.push(row);
            rhs.push(if i == c { Scalar::one(&field) } else { Scalar::zero(&field) });
        }
    }
    let constraint = ScalarMatrix::from_rows(&field, rows);
    let rhs_col = ScalarMatrix::column(&field, &rhs);
    let sol = constraint
        .solve(&rhs_col)
        .expect("shapes agree")
        .ok_or_else(|| Error::NotProjective("no idempotent realization found".into()))?;
    let sigma =
        ScalarMatrix::from_fn(&field, dm, df, |i, j| sol.get(i * df + j, 0).clone());
    let sigma = ModuleMap::unchecked(p.clone(), f.clone(), sigma);

    let include = sigma.then(&rf.include);
    let retract = rf.retract.then(&cover);
    let endo = retract.matrix.mul(&include.matrix);
    let idem = extract_matrix_over_a(&algebra, rf.rank, &endo);
    let realization = ProjectiveRealization {
        module: p.clone(),
        rank: rf.rank,
        idempotent: idem,
        include,
        retract,
    };
    check_realization(&algebra, &realization)?;
    Ok(realization)
}

/// The Hattori-Stallings trace of `f ∈ End_A(P)` through a realization.
pub fn hs_trace(r: &ProjectiveRealization, f: &ModuleMap) -> TraceClass {
    let algebra = r.module.algebra().clone();
    assert!(*f.source == *r.module && *f.target == *r.module, "not an endomorphism of P");
    // Lift: A^n → P → P → A^n.
    let lifted = r.retract.matrix.mul(&f.matrix).mul(&r.include.matrix);
    let mat = extract_matrix_over_a(&algebra, r.rank, &lifted);
    let mut diag = algebra.zero_elem();
    for (i, row) in mat.iter().enumerate() {
        for (t, c) in row[i].iter().enumerate() {
            diag[t] = &diag[t] + c;
        }
    }
    algebra.hh0_class(&diag)
}

/// Convenience: trace of an endomorphism of a projective, realizing it on
/// the fly.
pub fn hs_trace_of(f: &ModuleMap) -> Result<TraceClass> {
    let r = realize(&f.source)?;
    Ok(hs_trace(&r, f))
}

/// Outcome of a randomized verification suite.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_combination(
    maps: &[ModuleMap],
    rng: &mut ChaCha8Rng,
    source: &Arc<RightModule>,
    target: &Arc<RightModule>,
) -> ModuleMap {
    let field = source.algebra().field().clone();
    let mut mat = ScalarMatrix::zeros(&field, source.dim(), target.dim());
    for f in maps {
        let c = Scalar::from_integer(rng.gen_range(-2..=2), &field);
        mat = mat.add(&f.matrix.scale(&c));
    }
    ModuleMap::unchecked(source.clone(), target.clone(), mat)
}

fn random_endo(p: &Arc<RightModule>, rng: &mut ChaCha8Rng) -> ModuleMap {
    let basis = hom_space(p, p);
    random_combination(&basis, rng, p, p)
}

/// Exercise HS1–HS6 on seeded random projectives and maps; every identity
/// must hold exactly.
pub fn verify_hs_axioms(algebra: &Arc<Algebra>, trials: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    let nv = algebra.num_vertices();
    let field = algebra.field().clone();

    let random_summands = |rng: &mut ChaCha8Rng| -> Vec<usize> {
        let k = rng.gen_range(1..=3);
        (0..k).map(|_| rng.gen_range(0..nv)).collect()
    };

    for trial in 0..trials {
        let summands = random_summands(&mut rng);
        let rp = realize_sum(algebra, &summands);
        let p = rp.module.clone();
        let f = random_endo(&p, &mut rng);

        // HS2: additivity.
        {
            let f2 = random_endo(&p, &mut rng);
            let lhs = hs_trace(&rp, &f.add(&f2));
            let rhs = hs_trace(&rp, &f).add(&hs_trace(&rp, &f2));
            checks += 1;
            if lhs != rhs {
                failures.push(format!("HS2 failed on trial {trial} (summands {summands:?})"));
            }
        }

        // k-linearity.
        {
            let c = Scalar::from_integer(rng.gen_range(-3..=3), &field);
            let lhs = hs_trace(&rp, &f.scale(&c));
            let rhs = TraceClass {
                coords: hs_trace(&rp, &f).coords.iter().map(|x| x * &c).collect(),
            };
            checks += 1;
            if lhs != rhs {
                failures.push(format!("linearity failed on trial {trial}"));
            }
        }

        // HS1: conjugation by an isomorphism onto a permuted copy.
        {
            let mut perm = summands.clone();
            let swap = (rng.gen_range(0..perm.len()), rng.gen_range(0..perm.len()));
            perm.swap(swap.0, swap.1);
            let rq = realize_sum(algebra, &perm);
            let q = rq.module.clone();
            // Build a module isomorphism g: P → Q by matching summands,
            // then twisting by (id + nilpotent) when available.
            let mut g = permutation_iso(algebra, &summands, &perm, &p, &q);
            for _ in 0..4 {
                let n = random_endo(&q, &mut rng);
                let cand = g.then(&ModuleMap::unchecked(
                    q.clone(),
                    q.clone(),
                    ScalarMatrix::identity(&field, q.dim()).add(&n.matrix),
                ));
                if cand.matrix.inverse().is_some() {
                    g = cand;
                    break;
                }
            }
            let ginv = g.inverse().expect("constructed isomorphism");
            // g f g^{-1} as an endomorphism of Q: apply g^{-1}, then f, then g.
            let conj = ginv.then(&f).then(&g);
            let lhs = hs_trace(&rp, &f);
            let rhs = hs_trace(&rq, &conj);
            checks += 1;
            if lhs != rhs {
                failures.push(format!("HS1 failed on trial {trial}"));
            }

            // Realization independence: pull Q's realization back along g.
            let pulled = ProjectiveRealization {
                module: p.clone(),
                rank: rq.rank,
                idempotent: rq.idempotent.clone(),
                include: g.then(&rq.include),
                retract: rq.retract.then(&ginv),
            };
            checks += 1;
            if hs_trace(&pulled, &f) != lhs {
                failures.push(format!("realization independence failed on trial {trial}"));
            }
        }

        // HS3 and HS5: block endomorphism of a direct sum.
        {
            let other = random_summands(&mut rng);
            let rq = realize_sum(algebra, &other);
            let q = rq.module.clone();
            let mut both = summands.clone();
            both.extend_from_slice(&other);
            let rs = realize_sum(algebra, &both);
            let s = rs.module.clone();
            let f11 = random_endo(&p, &mut rng);
            let f22 = random_endo(&q, &mut rng);
            let f12 = random_combination(&hom_space(&p, &q), &mut rng, &p, &q);
            let f21 = random_combination(&hom_space(&q, &p), &mut rng, &q, &p);
            // Full block endomorphism for HS3.
            let mut mat = ScalarMatrix::zeros(&field, s.dim(), s.dim());
            let (dp, dq) = (p.dim(), q.dim());
            for i in 0..dp {
                for j in 0..dp {
                    mat.set(i, j, f11.matrix.get(i, j).clone());
                }
                for j in 0..dq {
                    mat.set(i, dp + j, f12.matrix.get(i, j).clone());
                }
            }
            for i in 0..dq {
                for j in 0..dp {
                    mat.set(dp + i, j, f21.matrix.get(i, j).clone());
                }
                for j in 0..dq {
                    mat.set(dp + i, dp + j, f22.matrix.get(i, j).clone());
                }
            }
            let block = ModuleMap::unchecked(s.clone(), s.clone(), mat.clone());
            let lhs = hs_trace(&rs, &block);
            let rhs = hs_trace(&rp, &f11).add(&hs_trace(&rq, &f22));
            checks += 1;
            if lhs != rhs {
                failures.push(format!("HS3 failed on trial {trial}"));
            }

            // HS5 on the split exact row 0 → P → P⊕Q → Q → 0 with an upper
            // triangular middle endomorphism (commutes with the row maps).
            let mut tri = mat;
            for i in 0..dq {
                for j in 0..dp {
                    tri.set(dp + i, j, Scalar::zero(&field));
                }
            }
            let middle = ModuleMap::unchecked(s.clone(), s.clone(), tri);
            let lhs5 = hs_trace(&rs, &middle);
            checks += 1;
            if lhs5 != rhs {
                failures.push(format!("HS5 failed on trial {trial}"));
            }
        }

        // HS4: tr(f then g on P) = tr(g then f on Q).
        {
            let other = random_summands(&mut rng);
            let rq = realize_sum(algebra, &other);
            let q = rq.module.clone();
            let u = random_combination(&hom_space(&p, &q), &mut rng, &p, &q);
            let v = random_combination(&hom_space(&q, &p), &mut rng, &q, &p);
            let lhs = hs_trace(&rp, &u.then(&v));
            let rhs = hs_trace(&rq, &v.then(&u));
            checks += 1;
            if lhs != rhs {
                failures.push(format!("HS4 failed on trial {trial}"));
            }
        }

        // HS6: left multiplication on the regular module.
        {
            let reg = RightModule::regular(algebra.clone());
            let rr = realize(&reg).expect("regular module is free");
            let mut a = algebra.zero_elem();
            for c in a.iter_mut() {
                *c = Scalar::from_integer(rng.gen_range(-2..=2), &field);
            }
            let la = ModuleMap::unchecked(reg.clone(), reg.clone(), algebra.left_mult_matrix(&a));
            let lhs = hs_trace(&rr, &la);
            let rhs = algebra.hh0_class(&a);
            checks += 1;
            if lhs != rhs {
                failures.push(format!("HS6 failed on trial {trial}"));
            }
        }
    }
    CheckReport { checks, failures }
}

fn permutation_iso(
    algebra: &Arc<Algebra>,
    from: &[usize],
    to: &[usize],
    p: &Arc<RightModule>,
    q: &Arc<RightModule>,
) -> ModuleMap {
    // Match each summand of `from` to an unused equal summand of `to`.
    let field = algebra.field().clone();
    let dims: Vec<usize> =
        from.iter().map(|&v| indecomposable_projective(algebra, v).0.dim()).collect();
    let offset = |list: &[usize], k: usize| -> usize {
        list[..k].iter().map(|&v| indecomposable_projective(algebra, v).0.dim()).sum()
    };
    let mut used = vec![false; to.len()];
    let mut mat = ScalarMatrix::zeros(&field, p.dim(), q.dim());
    for (k, &v) in from.iter().enumerate() {
        let slot = to
            .iter()
            .enumerate()
            .position(|(s, &w)| !used[s] && w == v)
            .expect("permutation of the same multiset");
        used[slot] = true;
        let (ro, co) = (offset(from, k), offset(to, slot));
        for r in 0..dims[k] {
            mat.set(ro + r, co + r, Scalar::one(&field));
        }
    }
    ModuleMap::unchecked(p.clone(), q.clone(), mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{a2, a3_rel, loop_x2, square, two_loop};
    use crate::modrep::{simple, submodule, syzygy};

    fn arc(a: crate::algebra::Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn realize_regular_is_rank_one() {
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let r = realize(&reg).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.idempotent[0][0], *alg.unit());
    }

    #[test]
    fn realize_e1a_over_a2() {
        let alg = arc(a2());
        let (p1, _) = indecomposable_projective(&alg, 0);
        let r = realize(&p1).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.idempotent[0][0], *alg.idempotent(0));
    }

    #[test]
    fn realize_sum_is_diagonal() {
        let alg = arc(a2());
        let r = realize_sum(&alg, &[0, 1]);
        assert_eq!(r.rank, 2);
        assert_eq!(r.idempotent[0][0], *alg.idempotent(0));
        assert_eq!(r.idempotent[1][1], *alg.idempotent(1));
        assert!(r.idempotent[0][1].iter().all(Scalar::is_zero));
    }

    #[test]
    fn realize_rejects_non_projective() {
        let alg = arc(loop_x2());
        let s = simple(&alg, 0);
        assert!(matches!(realize(&s), Err(Error::NotProjective(_))));
    }

    #[test]
    fn trace_of_identity_on_regular() {
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let r = realize(&reg).unwrap();
        let tr = hs_trace(&r, &ModuleMap::identity(&reg));
        assert_eq!(tr, alg.hh0_class(alg.unit()));
        // HH0 basis of k[x]/(x^2) is {class of e, class of x}.
        assert_eq!(tr.coords, vec![
            Scalar::from_integer(1, alg.field()),
            Scalar::from_integer(0, alg.field())
        ]);
    }

    #[test]
    fn trace_of_left_multiplication_by_x() {
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let r = realize(&reg).unwrap();
        let x = alg.basis_elem(1);
        let la = ModuleMap::new(reg.clone(), reg.clone(), alg.left_mult_matrix(&x)).unwrap();
        let tr = hs_trace(&r, &la);
        assert_eq!(tr, alg.hh0_class(&x));
        assert!(!tr.is_zero());
    }

    #[test]
    fn trace_of_arrow_multiplication_vanishes_over_a2() {
        let alg = arc(a2());
        let reg = RightModule::regular(alg.clone());
        let r = realize(&reg).unwrap();
        let a = alg.basis_elem(2);
        let la = ModuleMap::new(reg.clone(), reg.clone(), alg.left_mult_matrix(&a)).unwrap();
        assert!(hs_trace(&r, &la).is_zero());
    }

    #[test]
    fn realize_syzygy_submodule() {
        // Ω1(S1) over A2 is projective (≅ e2A) in submodule coordinates.
        let alg = arc(a2());
        let s1 = simple(&alg, 0);
        let o1 = syzygy(&s1, 1);
        let r = realize(&o1).unwrap();
        assert_eq!(r.rank, 1);
        let tr = hs_trace(&r, &ModuleMap::identity(&o1));
        assert_eq!(tr, alg.hh0_class(alg.idempotent(1)));
    }

    #[test]
    fn realize_radical_of_loop_fails() {
        // J = span{x} over k[x]/(x^2) is not projective.
        let alg = arc(loop_x2());
        let reg = RightModule::regular(alg.clone());
        let (j, _) = submodule(&reg, &alg.radical()).unwrap();
        assert!(realize(&j).is_err());
    }

    #[test]
    fn hs_axioms_on_fixtures() {
        for alg in [arc(a2()), arc(loop_x2()), arc(a3_rel())] {
            let report = verify_hs_axioms(&alg, 25, 1);
            assert!(report.ok(), "failures: {:?}", report.failures);
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn hs_axioms_on_larger_fixtures() {
        for alg in [arc(square()), arc(two_loop())] {
            let report = verify_hs_axioms(&alg, 10, 2);
            assert!(report.ok(), "failures: {:?}", report.failures);
        }
    }

    #[test]
    fn hs_axioms_over_prime_field() {
        let p = crate::presentation::parse_presentation(
            "field F 5; vertices 1 2; arrows a: 1 -> 2;",
        )
        .unwrap();
        let alg = arc(crate::algebra::build_algebra(&p).unwrap());
        let report = verify_hs_axioms(&alg, 10, 3);
        assert!(report.ok(), "failures: {:?}", report.failures);
    }
}
