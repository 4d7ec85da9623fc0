//! `hstrace`: exact Hattori-Stallings traces, characters, projective
//! dimensions and theorem verification for quiver algebras.
//!
//! Exit codes: 0 = all checks passed, 1 = a check was refuted,
//! 2 = usage, parse or build error.

mod report;
mod selectors;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};

use hstrace_core::algebra::{build_algebra, opposite, Algebra};
use hstrace_core::complexes::{hs_character, verify_character, ChainMap, ProjComplex};
use hstrace_core::modrep::{
    envelope, ext_dims, hom_space, indecomposable_projective, proj_dim, simple, Bimodule,
    ModuleMap, RightModule,
};
use hstrace_core::presentation::parse_presentation;
use hstrace_core::trace::{hs_trace, realize, realize_sum, verify_hs_axioms};
use hstrace_core::verify::{
    check_corner_pd_transfer, check_projective_bimodule_trace, check_syzygy_trace_signs,
    check_strong_no_loop, check_telescoping_chain, pd_detection_suite,
};

use report::{Entry, Params, Report};

#[derive(Parser)]
#[command(name = "hstrace", version, about = "Hattori-Stallings traces on quiver algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the algebra invariants of a presentation.
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Projective dimension of a module, up to a bound.
    Pd {
        file: PathBuf,
        /// `regular` or `simple:<vertex>`.
        #[arg(long, default_value = "regular")]
        module: String,
        #[arg(long, default_value_t = 20)]
        bound: usize,
        /// Use left modules (computed over the opposite algebra).
        #[arg(long)]
        left: bool,
        #[arg(long)]
        json: bool,
    },
    /// dim Ext^d(S_i, S_j) for right simples.
    Ext {
        file: PathBuf,
        i: String,
        j: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Hattori-Stallings trace of an endomorphism of a projective.
    Trace {
        file: PathBuf,
        /// `l:<element>` or `hom:c1,c2,...`.
        #[arg(long)]
        endo: String,
        /// `regular` or `proj:<v>[,<v>...]`.
        #[arg(long, default_value = "regular")]
        on: String,
        #[arg(long)]
        json: bool,
    },
    /// Hattori-Stallings character of a cochain endomorphism.
    Character {
        file: PathBuf,
        /// `stalk:regular` or `twoterm:l:<element>`.
        #[arg(long)]
        complex: String,
        /// `l:<element>`, applied in every degree.
        #[arg(long)]
        endo: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite; exit 1 on any refutation.
    Verify {
        file: PathBuf,
        /// hs | character | lemma1 | lemma2 | props | noloop | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Defaults to $HSTRACE_SEED, then 1.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 20)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &PathBuf) -> Result<(Arc<Algebra>, String), String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let presentation = parse_presentation(&text).map_err(|e| e.to_string())?;
    let algebra = build_algebra(&presentation).map_err(|e| e.to_string())?;
    Ok((Arc::new(algebra), file.display().to_string()))
}

fn emit(report: &mut Report, json: bool, started: Instant) -> ExitCode {
    report.finish();
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text(started.elapsed()));
    }
    if report.refuted > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let started = Instant::now();
    match cli.cmd {
        Cmd::Info { file, json } => {
            let (algebra, name) = load(&file)?;
            let mut report = Report::new("info", &name, &algebra);
            Ok(emit(&mut report, json, started))
        }
        Cmd::Pd { file, module, bound, left, json } => {
            let (algebra, name) = load(&file)?;
            let mut report = Report::new("pd", &name, &algebra);
            let work_algebra =
                if left { Arc::new(opposite(&algebra)) } else { algebra.clone() };
            let m = match module.as_str() {
                "regular" => RightModule::regular(work_algebra.clone()),
                sel => match sel.strip_prefix("simple:") {
                    Some(v) => {
                        let idx = selectors::find_vertex(&algebra, v)?;
                        simple(&work_algebra, idx)
                    }
                    None => return Err(format!("unknown module selector `{sel}`")),
                },
            };
            let pd = proj_dim(&m, bound);
            let side = if left { "left" } else { "right" };
            report.results.push(Entry::computed(
                "pd",
                format!("{side} {module}, bound {bound}"),
                match pd {
                    hstrace_core::modrep::ProjDim::Finite(n) => format!("Finite({n})"),
                    hstrace_core::modrep::ProjDim::AtLeast(b) => format!("AtLeast({b})"),
                },
                vec![],
            ));
            Ok(emit(&mut report, json, started))
        }
        Cmd::Ext { file, i, j, degree, json } => {
            let (algebra, name) = load(&file)?;
            let mut report = Report::new("ext", &name, &algebra);
            let vi = selectors::find_vertex(&algebra, &i)?;
            let vj = selectors::find_vertex(&algebra, &j)?;
            let si = simple(&algebra, vi);
            let sj = simple(&algebra, vj);
            let dims = ext_dims(&si, &sj, degree);
            report.results.push(Entry::computed(
                "ext",
                format!("Ext^{degree}(S_{i}, S_{j})"),
                dims[degree].to_string(),
                vec![format!("dims up to degree {degree}: {dims:?}")],
            ));
            Ok(emit(&mut report, json, started))
        }
        Cmd::Trace { file, endo, on, json } => {
            let (algebra, name) = load(&file)?;
            let mut report = Report::new("trace", &name, &algebra);
            let (module, realization) = match selectors::parse_projective_selector(&algebra, &on)? {
                None => {
                    let m = RightModule::regular(algebra.clone());
                    let r = realize(&m).map_err(|e| e.to_string())?;
                    (m, r)
                }
                Some(summands) => {
                    let r = realize_sum(&algebra, &summands);
                    (r.module.clone(), r)
                }
            };
            let f = parse_endo(&algebra, &module, &endo)?;
            let tr = hs_trace(&realization, &f);
            report.results.push(Entry::computed(
                "trace",
                format!("endo {endo} on {on}"),
                tr.to_string(),
                vec![format!("coordinates in the canonical HH0 complement")],
            ));
            Ok(emit(&mut report, json, started))
        }
        Cmd::Character { file, complex, endo, json } => {
            let (algebra, name) = load(&file)?;
            let mut report = Report::new("character", &name, &algebra);
            let cx = parse_complex(&algebra, &complex)?;
            let elem = match endo.strip_prefix("l:") {
                Some(e) => selectors::parse_element(&algebra, e)?,
                None => return Err(format!("character endo must be `l:<element>`, got `{endo}`")),
            };
            let lm = algebra.left_mult_matrix(&elem);
            let comps: Vec<_> = (cx.lo()..=cx.hi())
                .map(|d| if cx.dim_at(d) > 0 { lm.clone() } else { lm.clone().mul(&hstrace_core::exactlin::ScalarMatrix::zeros(algebra.field(), algebra.dim(), 0)) })
                .collect();
            let f = ChainMap::new(cx.clone(), cx.clone(), cx.lo(), comps)
                .map_err(|e| format!("`{endo}` is not a chain endomorphism: {e}"))?;
            let chi = hs_character(&f);
            report.results.push(Entry::computed(
                "character",
                format!("{complex} with {endo}"),
                chi.to_string(),
                vec![],
            ));
            Ok(emit(&mut report, json, started))
        }
        Cmd::Verify { file, suite, trials, seed, bound, json } => {
            let (algebra, name) = load(&file)?;
            let seed = seed
                .or_else(|| std::env::var("HSTRACE_SEED").ok().and_then(|v| v.parse().ok()))
                .unwrap_or(1);
            let mut report = Report::new("verify", &name, &algebra);
            report.params = Some(Params { suite: suite.clone(), trials, seed, bound });
            run_suites(&algebra, &suite, trials, seed, bound, &mut report.results)?;
            Ok(emit(&mut report, json, started))
        }
    }
}

fn parse_endo(
    algebra: &Arc<Algebra>,
    module: &Arc<RightModule>,
    endo: &str,
) -> Result<ModuleMap, String> {
    if let Some(expr) = endo.strip_prefix("l:") {
        let elem = selectors::parse_element(algebra, expr)?;
        let m = algebra.left_mult_matrix(&elem);
        if module.dim() != algebra.dim() {
            return Err("`l:` endomorphisms act on the regular module; use --on regular".into());
        }
        return ModuleMap::new(module.clone(), module.clone(), m)
            .map_err(|e| format!("`{endo}` is not an endomorphism: {e}"));
    }
    if let Some(list) = endo.strip_prefix("hom:") {
        let basis = hom_space(module, module);
        let coeffs: Vec<i64> = list
            .split(',')
            .map(|c| c.trim().parse().map_err(|_| format!("bad coefficient `{c}`")))
            .collect::<Result<_, _>>()?;
        if coeffs.len() != basis.len() {
            return Err(format!(
                "endomorphism space has dimension {}, got {} coefficients",
                basis.len(),
                coeffs.len()
            ));
        }
        let mut acc = ModuleMap::zero(module, module);
        for (c, h) in coeffs.into_iter().zip(basis) {
            acc = acc.add(&h.scale(&hstrace_core::exactlin::Scalar::from_integer(
                c,
                algebra.field(),
            )));
        }
        return Ok(acc);
    }
    Err(format!("unknown endo spec `{endo}` (use l:<element> or hom:c1,c2,...)"))
}

fn parse_complex(algebra: &Arc<Algebra>, text: &str) -> Result<Arc<ProjComplex>, String> {
    if text == "stalk:regular" {
        let reg = RightModule::regular(algebra.clone());
        let r = realize(&reg).map_err(|e| e.to_string())?;
        return Ok(ProjComplex::stalk(algebra.clone(), 0, r));
    }
    if let Some(expr) = text.strip_prefix("twoterm:l:") {
        let elem = selectors::parse_element(algebra, expr)?;
        let reg = RightModule::regular(algebra.clone());
        let d = ModuleMap::new(reg.clone(), reg.clone(), algebra.left_mult_matrix(&elem))
            .map_err(|e| format!("differential is not a module map: {e}"))?;
        let r0 = realize(&reg).map_err(|e| e.to_string())?;
        let r1 = realize(&reg).map_err(|e| e.to_string())?;
        return ProjComplex::new(algebra.clone(), 0, vec![r0, r1], vec![d])
            .map_err(|e| format!("not a complex (d^2 must vanish): {e}"));
    }
    Err(format!("unknown complex spec `{text}` (use stalk:regular or twoterm:l:<element>)"))
}

fn run_suites(
    algebra: &Arc<Algebra>,
    suite: &str,
    trials: usize,
    seed: u64,
    bound: usize,
    out: &mut Vec<Entry>,
) -> Result<(), String> {
    let known = ["hs", "character", "pd-top-detection", "corner-pd-transfer", "props", "noloop", "all"];
    if !known.contains(&suite) {
        return Err(format!("unknown suite `{suite}` (expected one of {known:?})"));
    }
    let all = suite == "all";
    if all || suite == "hs" {
        let r = verify_hs_axioms(algebra, trials, seed);
        out.push(Entry::from_check("hs-axioms", format!("trials {trials}, seed {seed}"), r));
    }
    if all || suite == "character" {
        let r = verify_character(algebra, trials, seed);
        out.push(Entry::from_check("character-suite", format!("trials {trials}, seed {seed}"), r));
    }
    if all || suite == "pd-top-detection" {
        for r in pd_detection_suite(algebra, 20, seed, bound) {
            out.push(Entry::from_theorem(r));
        }
    }
    if all || suite == "corner-pd-transfer" {
        for i in 0..algebra.num_vertices() {
            out.push(Entry::from_theorem(check_corner_pd_transfer(algebra, i, bound)));
        }
    }
    if all || suite == "props" {
        run_props_suite(algebra, out)?;
    }
    if all || suite == "noloop" {
        for i in 0..algebra.num_vertices() {
            out.push(Entry::from_theorem(check_telescoping_chain(algebra, i, bound)));
        }
        out.push(Entry::from_theorem(check_strong_no_loop(algebra, bound)));
    }
    Ok(())
}

/// Bimodule trace propositions over `B = A`: the regular bimodule `A⊗A`,
/// every corner projective bimodule `Ae_i ⊗ e_jA`, and the syzygy sign
/// identity on `A` itself as a bimodule.
fn run_props_suite(algebra: &Arc<Algebra>, out: &mut Vec<Entry>) -> Result<(), String> {
    let env = envelope(algebra, algebra).map_err(|e| e.to_string())?;
    let rad = algebra.radical();
    let elems: Vec<(String, Vec<hstrace_core::exactlin::Scalar>)> = rad
        .basis_rows()
        .iter()
        .enumerate()
        .map(|(ri, v)| (format!("radical basis element {ri}"), v.clone()))
        .collect();

    let regular_bm = Bimodule::regular(algebra, algebra, &env).map_err(|e| e.to_string())?;
    for r in check_projective_bimodule_trace(&regular_bm, &elems, "A⊗A") {
        out.push(Entry::from_theorem(r));
    }

    for bm in corner_bimodules(algebra, &env)? {
        let instance = format!("corner bimodule {}", bm.0);
        for r in check_projective_bimodule_trace(&bm.1, &elems, &instance) {
            out.push(Entry::from_theorem(r));
        }
    }

    // A as an (A, A)-bimodule: one-sided projective, syzygy sign identity.
    let left: Vec<_> =
        (0..algebra.dim()).map(|u| algebra.left_mult_matrix(&algebra.basis_elem(u))).collect();
    let right: Vec<_> =
        (0..algebra.dim()).map(|v| algebra.right_mult_matrix(&algebra.basis_elem(v))).collect();
    let a_bm = Bimodule::from_actions(algebra.clone(), algebra.clone(), env, left, right)
        .map_err(|e| e.to_string())?;
    for r in check_syzygy_trace_signs(&a_bm, 3, &elems, "A as bimodule, depth 3") {
        out.push(Entry::from_theorem(r));
    }
    Ok(())
}

/// The corner projective bimodules `Ae_i ⊗_k e_jA`, built directly from
/// the restricted one-sided multiplications.
fn corner_bimodules(
    algebra: &Arc<Algebra>,
    env: &Arc<Algebra>,
) -> Result<Vec<(String, Bimodule)>, String> {
    use hstrace_core::exactlin::ScalarMatrix;
    use hstrace_core::modrep::restrict_map_to_rowspace;
    let field = algebra.field().clone();
    let mut result = Vec::new();
    for i in 0..algebra.num_vertices() {
        // Ae_i: row space of right multiplication by e_i.
        let re = algebra.right_mult_matrix(algebra.idempotent(i));
        let mut left_space = hstrace_core::exactlin::Subspace::zero(&field, algebra.dim());
        for r in 0..algebra.dim() {
            left_space.insert(re.row(r));
        }
        let left_basis = ScalarMatrix::from_rows(&field, left_space.basis_rows().to_vec());
        for j in 0..algebra.num_vertices() {
            let (pj, _) = indecomposable_projective(algebra, j);
            let m = left_basis.rows() * pj.dim();
            if m == 0 {
                continue;
            }
            let mut left = Vec::new();
            for u in 0..algebra.dim() {
                let lm = algebra.left_mult_matrix(&algebra.basis_elem(u));
                let small = restrict_map_to_rowspace(&left_basis, &lm)
                    .ok_or_else(|| "Ae_i is not invariant under left multiplication".to_string())?;
                left.push(kron(&field, &small, &ScalarMatrix::identity(&field, pj.dim())));
            }
            let mut right = Vec::new();
            for v in 0..algebra.dim() {
                right.push(kron(
                    &field,
                    &ScalarMatrix::identity(&field, left_basis.rows()),
                    pj.act(v),
                ));
            }
            let bm = Bimodule::from_actions(
                algebra.clone(),
                algebra.clone(),
                env.clone(),
                left,
                right,
            )
            .map_err(|e| e.to_string())?;
            result.push((
                format!(
                    "Ae_{} ⊗ e_{}A",
                    algebra.vertex_names()[i],
                    algebra.vertex_names()[j]
                ),
                bm,
            ));
        }
    }
    Ok(result)
}

fn kron(
    field: &hstrace_core::exactlin::FieldSpec,
    a: &hstrace_core::exactlin::ScalarMatrix,
    b: &hstrace_core::exactlin::ScalarMatrix,
) -> hstrace_core::exactlin::ScalarMatrix {
    use hstrace_core::exactlin::ScalarMatrix;
    ScalarMatrix::from_fn(field, a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        let (ia, ib) = (i / b.rows(), i % b.rows());
        let (ja, jb) = (j / b.cols(), j % b.cols());
        a.get(ia, ja) * b.get(ib, jb)
    })
}
