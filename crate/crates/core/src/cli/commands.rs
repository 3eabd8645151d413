use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::presentation::{algebra_hash, parse_presentation_file, render_presentation};
use crate::algebra::QuadraticPresentation;
use crate::complexes::{koszul_check_with, EnvelopingDoubleComplex, HomologyWitness, KoszulCertificate, Verdict};
use crate::dual::{double_dual_check, DualAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::lcomplex::{
    betti_formula, betti_oracle, betti_quotient, poincare_coeffs, resolve, BettiTable, ResolutionReport,
    ResolveOptions, SeriesPoly,
};
use crate::pair::KoszulPair;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_NOT_KOSZUL: u8 = 2;
pub const EXIT_DEGREE_CAP: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

/// Exit code for an error that aborted a command.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::NonQuadraticRelation { .. }
        | Error::UnknownGenerator(_)
        | Error::InvalidField(_)
        | Error::InvalidPresentation(_)
        | Error::LetterOutOfRange { .. } => EXIT_INPUT,
        Error::NotKoszul { .. } => EXIT_NOT_KOSZUL,
        Error::DegreeCapExceeded { .. } | Error::SizeCap { .. } => EXIT_DEGREE_CAP,
        _ => EXIT_INVARIANT,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Dual,
    KoszulCheck,
    Betti,
    Resolve,
    Verify,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_degree: usize,
    pub power: usize,
    pub n_max: usize,
    pub format: Format,
    pub field: Option<FieldSpec>,
    pub parallel: usize,
    pub allow_non_koszul: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_degree: 8,
            power: 1,
            n_max: 5,
            format: Format::Json,
            field: None,
            parallel: 1,
            allow_non_koszul: false,
        }
    }
}

/// Rendered output plus the exit code it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Serialize)]
pub struct DualDocument {
    pub algebra_hash: String,
    pub field: String,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub dims: Vec<usize>,
}

#[derive(Serialize)]
pub struct KoszulDocument {
    pub algebra_hash: String,
    #[serde(rename = "D")]
    pub max_degree: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HomologyWitness>,
}

#[derive(Serialize)]
pub struct BettiDocument {
    pub algebra_hash: String,
    pub power: usize,
    pub n_max: usize,
    pub max_degree: usize,
    pub formula: Vec<usize>,
    pub oracle: Vec<usize>,
    pub agree: bool,
    pub table: BettiTable,
    /// `β_{n,n+a-1}(A/𝔪^a)`.
    pub quotient: Vec<usize>,
    pub poincare: SeriesPoly,
}

#[derive(Serialize)]
pub struct ResolveDocument {
    pub algebra_hash: String,
    pub report: ResolutionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct VerifyDocument {
    pub algebra_hash: String,
    pub power: usize,
    pub n_max: usize,
    pub max_degree: usize,
    pub koszul: KoszulCertificate,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ResolutionReport>,
    pub passed: bool,
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses `text` and runs `kind` over the field from the file or the override.
pub fn execute(kind: CommandKind, text: &str, cfg: &RunConfig) -> Result<Output> {
    let file = parse_presentation_file(text)?;
    match cfg.field.unwrap_or(file.field) {
        FieldSpec::Rationals => dispatch(kind, file.to_presentation(Rationals)?, cfg),
        FieldSpec::Prime(p) => dispatch(kind, file.to_presentation(PrimeField::new(p)?)?, cfg),
    }
}

fn dispatch<F: Field>(kind: CommandKind, pres: QuadraticPresentation<F>, cfg: &RunConfig) -> Result<Output> {
    match kind {
        CommandKind::Dual => cmd_dual(&pres, cfg),
        CommandKind::KoszulCheck => cmd_koszul_check(&pres, cfg),
        CommandKind::Betti => cmd_betti(&pres, cfg),
        CommandKind::Resolve => cmd_resolve(&pres, cfg),
        CommandKind::Verify => cmd_verify(&pres, cfg),
    }
}

pub fn cmd_dual<F: Field>(pres: &QuadraticPresentation<F>, cfg: &RunConfig) -> Result<Output> {
    let dual = DualAlgebra::quadratic_dual(pres, cfg.max_degree)?;
    let dims = (0..=cfg.max_degree).map(|i| dual.dual_dims(i)).collect::<Result<Vec<_>>>()?;
    let doc = DualDocument {
        algebra_hash: algebra_hash(pres),
        field: pres.field().spec().to_string(),
        generators: dual.presentation().generator_names().to_vec(),
        relations: dual.render_relations(),
        dims,
    };
    let text = match cfg.format {
        Format::Json => json(&doc),
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "field = {}", doc.field).unwrap();
            writeln!(s, "generators = {}", doc.generators.join(", ")).unwrap();
            writeln!(s, "relations = {}", doc.relations.join(", ")).unwrap();
            writeln!(s, "# dims {:?}", doc.dims).unwrap();
            s
        }
    };
    Ok(Output { text, code: EXIT_OK })
}

pub fn cmd_koszul_check<F: Field>(pres: &QuadraticPresentation<F>, cfg: &RunConfig) -> Result<Output> {
    let pair = KoszulPair::new(pres.clone(), cfg.max_degree)?;
    let cert = koszul_check_with(&pair, cfg.max_degree, cfg.parallel > 1)?;
    let code = if cert.is_koszul() { EXIT_OK } else { EXIT_NOT_KOSZUL };
    let doc = KoszulDocument {
        algebra_hash: algebra_hash(pres),
        max_degree: cert.max_degree,
        verdict: cert.verdict,
        witness: cert.witness,
    };
    let text = match cfg.format {
        Format::Json => json(&doc),
        Format::Table => {
            let mut s = format!("verdict: {}\n", doc.verdict);
            if let Some(w) = &doc.witness {
                writeln!(
                    s,
                    "witness: H_{} in strand {} has dimension {}",
                    w.homological_degree, w.internal_degree, w.homology_dim
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Output { text, code })
}

/// Builds the pair and insists on a certificate unless overridden.
fn certified_pair<F: Field>(
    pres: &QuadraticPresentation<F>,
    cfg: &RunConfig,
) -> Result<(KoszulPair<F>, KoszulCertificate)> {
    if cfg.power == 0 {
        return Err(Error::InvalidPresentation("--power must be at least 1".into()));
    }
    let needed = cfg.power + cfg.n_max + 1;
    if cfg.max_degree < needed {
        return Err(Error::DegreeCapExceeded { requested: needed, cap: cfg.max_degree });
    }
    let pair = KoszulPair::new(pres.clone(), cfg.max_degree)?;
    let cert = koszul_check_with(&pair, cfg.max_degree, cfg.parallel > 1)?;
    if !cert.is_koszul() && !cfg.allow_non_koszul {
        return Err(Error::NotKoszul { cap: cfg.max_degree });
    }
    Ok((pair, cert))
}

fn betti_document<F: Field>(pair: &KoszulPair<F>, hash: String, cfg: &RunConfig) -> Result<BettiDocument> {
    let (a, n_max) = (cfg.power, cfg.n_max);
    let ns: Vec<usize> = (0..=n_max).collect();
    let formula = ns.iter().map(|&n| betti_formula(pair, n, a)).collect::<Result<Vec<_>>>()?;
    let oracle = if cfg.parallel > 1 {
        ns.par_iter().map(|&n| betti_oracle(pair, n, a)).collect::<Result<Vec<_>>>()?
    } else {
        ns.iter().map(|&n| betti_oracle(pair, n, a)).collect::<Result<Vec<_>>>()?
    };
    let quotient = ns.iter().map(|&n| betti_quotient(pair, n, a)).collect::<Result<Vec<_>>>()?;
    Ok(BettiDocument {
        algebra_hash: hash,
        power: a,
        n_max,
        max_degree: cfg.max_degree,
        agree: formula == oracle,
        table: BettiTable::linear(a, &oracle),
        formula,
        oracle,
        quotient,
        poincare: poincare_coeffs(pair, a, n_max)?,
    })
}

pub fn cmd_betti<F: Field>(pres: &QuadraticPresentation<F>, cfg: &RunConfig) -> Result<Output> {
    let (pair, _) = certified_pair(pres, cfg)?;
    let doc = betti_document(&pair, algebra_hash(pres), cfg)?;
    let code = if doc.agree { EXIT_OK } else { EXIT_INVARIANT };
    let text = match cfg.format {
        Format::Json => json(&doc),
        Format::Table => {
            let mut s = format!("{}\n", doc.table);
            writeln!(s, "{:>3} {:>8} {:>8}", "n", "formula", "oracle").unwrap();
            for n in 0..=doc.n_max {
                let flag = if doc.formula[n] == doc.oracle[n] { "" } else { "  DISAGREE" };
                writeln!(s, "{n:>3} {:>8} {:>8}{flag}", doc.formula[n], doc.oracle[n]).unwrap();
            }
            writeln!(s, "agree: {}", doc.agree).unwrap();
            s
        }
    };
    Ok(Output { text, code })
}

fn report_text(r: &ResolutionReport) -> String {
    let mut s = format!("{}\n", r.betti);
    let flags = [
        ("formula_agrees", r.formula_agrees),
        ("image_equals_kernel", r.image_equals_kernel),
        ("a_linear", r.a_linear),
        ("d_squared_zero", r.d_squared_zero),
        ("minimal", r.minimal),
        ("exact", r.exactness_defects.is_empty()),
        ("augmentation", r.augmentation.ok),
    ];
    for (name, ok) in flags {
        writeln!(s, "{name}: {ok}").unwrap();
    }
    for note in &r.notes {
        writeln!(s, "note: {note}").unwrap();
    }
    writeln!(s, "passed: {}", r.passed).unwrap();
    s
}

fn report_code(r: &ResolutionReport) -> u8 {
    if r.passed || r.diagnostics_only {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    }
}

pub fn cmd_resolve<F: Field>(pres: &QuadraticPresentation<F>, cfg: &RunConfig) -> Result<Output> {
    if cfg.power == 0 {
        return Err(Error::InvalidPresentation("--power must be at least 1".into()));
    }
    let pair = KoszulPair::new(pres.clone(), cfg.max_degree)?;
    let opts = ResolveOptions { allow_non_koszul: cfg.allow_non_koszul, parallel: cfg.parallel > 1 };
    let res = resolve(&pair, cfg.power, cfg.n_max, opts)?;
    let code = report_code(&res.report);
    let doc = ResolveDocument { algebra_hash: algebra_hash(pres), report: res.report };
    let text = match cfg.format {
        Format::Json => json(&doc),
        Format::Table => report_text(&doc.report),
    };
    Ok(Output { text, code })
}

fn check(name: &str, ok: bool, detail: Option<String>) -> Check {
    Check { name: name.to_string(), ok, detail }
}

pub fn cmd_verify<F: Field>(pres: &QuadraticPresentation<F>, cfg: &RunConfig) -> Result<Output> {
    let (pair, cert) = certified_pair(pres, cfg)?;
    let mut checks = vec![
        check("double_dual", double_dual_check(pres), None),
        check("koszul", cert.is_koszul(), Some(cert.verdict.to_string())),
    ];

    let x = EnvelopingDoubleComplex::new(&pair, cfg.max_degree)?;
    checks.push(check("double_complex_squares", x.check_squares()?, None));
    checks.push(check("double_complex_commutation", x.check_commutation()?, None));
    checks.push(check("double_complex_minimal", x.dprime_is_minimal()?, None));

    let betti = betti_document(&pair, String::new(), cfg)?;
    let detail = (!betti.agree).then(|| format!("formula {:?}, oracle {:?}", betti.formula, betti.oracle));
    checks.push(check("formula_vs_oracle", betti.agree, detail));
    let poincare_ok = (0..=cfg.n_max)
        .all(|n| betti.poincare.coeff(n as i64, (n + cfg.power) as i64) == Some(betti.formula[n] as i64));
    checks.push(check("poincare_vs_table", poincare_ok, None));

    let opts = ResolveOptions { allow_non_koszul: cfg.allow_non_koszul, parallel: cfg.parallel > 1 };
    let report = resolve(&pair, cfg.power, cfg.n_max, opts)?.report;
    let defects = (!report.exactness_defects.is_empty()).then(|| format!("{:?}", report.exactness_defects));
    checks.extend([
        check("resolution_d_squared_zero", report.d_squared_zero, None),
        check("resolution_minimal", report.minimal, None),
        check("resolution_a_linear", report.a_linear, None),
        check("resolution_image_equals_kernel", report.image_equals_kernel, None),
        check("resolution_exact", report.exactness_defects.is_empty(), defects),
        check("resolution_augmentation", report.augmentation.ok, None),
    ]);

    let passed = checks.iter().all(|c| c.ok);
    let doc = VerifyDocument {
        algebra_hash: algebra_hash(pres),
        power: cfg.power,
        n_max: cfg.n_max,
        max_degree: cfg.max_degree,
        koszul: cert,
        checks,
        report: Some(report),
        passed,
    };
    let code = if passed { EXIT_OK } else { EXIT_INVARIANT };
    let text = match cfg.format {
        Format::Json => json(&doc),
        Format::Table => {
            let mut s = String::new();
            for c in &doc.checks {
                let mark = if c.ok { "ok  " } else { "FAIL" };
                write!(s, "{mark} {}", c.name).unwrap();
                if let Some(d) = &c.detail {
                    write!(s, " ({d})").unwrap();
                }
                s.push('\n');
            }
            writeln!(s, "passed: {passed}").unwrap();
            s
        }
    };
    Ok(Output { text, code })
}

/// The presentation as it would be written back to a file.
pub fn render_file(text: &str) -> Result<String> {
    let file = parse_presentation_file(text)?;
    Ok(match file.field {
        FieldSpec::Rationals => render_presentation(&file.to_presentation(Rationals)?),
        FieldSpec::Prime(p) => render_presentation(&file.to_presentation(PrimeField::new(p)?)?),
    })
}
