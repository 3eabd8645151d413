use rayon::prelude::*;
use serde::Serialize;

use super::betti::{betti_formula, BettiTable};
use super::lmodule::{augmentation, incoming_rank, l_differential, l_module, LModule, LModuleSummary};
use crate::complexes::{koszul_check_with, ChainComplex, FreeMap, KoszulCertificate};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pair::KoszulPair;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResolveOptions {
    /// Run on a non-Koszul (or uncertified) algebra; the report is then diagnostic only.
    pub allow_non_koszul: bool,
    pub parallel: bool,
}

/// A nonzero homology group found where the complex should be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDefect {
    pub n: usize,
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugmentationCheck {
    /// `rank ε_a` on strand `q`, i.e. `dim (𝔪^a)_q` when the resolution is right.
    pub image_dims: Vec<usize>,
    /// `dim A_q` for `q >= a`, else 0.
    pub expected_image_dims: Vec<usize>,
    /// `dim A_q − rank ε_a`: the strands of `A/𝔪^a`.
    pub cokernel_dims: Vec<usize>,
    /// `H_0` of the complex itself, which `ε_a` must identify with `𝔪^a`.
    pub h0_dims: Vec<usize>,
    pub composite_vanishes: bool,
    pub ok: bool,
}

/// Everything `resolve` verified, as data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolutionReport {
    pub power: usize,
    pub n_max: usize,
    pub max_degree: usize,
    pub koszul: Option<KoszulCertificate>,
    pub diagnostics_only: bool,
    pub modules: Vec<LModuleSummary>,
    pub betti: BettiTable,
    pub formula: Vec<usize>,
    pub formula_agrees: bool,
    pub image_equals_kernel: bool,
    pub a_linear: bool,
    pub d_squared_zero: bool,
    pub minimal: bool,
    pub exactness_defects: Vec<HomologyDefect>,
    pub augmentation: AugmentationCheck,
    pub notes: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub complex: ChainComplex<F>,
    pub augmentation: Option<FreeMap<F>>,
    pub report: ResolutionReport,
}

/// The minimal resolution `𝕃_a` of `𝔪^a` through homological degree `n_max`,
/// together with its verification report. Needs the pair computed to `n_max + a + 1`
/// unless `𝔪^a = 0`.
pub fn resolve<F: Field>(
    pair: &KoszulPair<F>,
    a: usize,
    n_max: usize,
    opts: ResolveOptions,
) -> Result<Resolution<F>> {
    if a == 0 {
        return Err(Error::InvalidPresentation("the power a must be at least 1".into()));
    }
    pair.require(a)?;
    let max_degree = pair.cap();
    let alg = pair.algebra();
    // the zero complex needs no strand data, so only a nonzero power is held to the cap
    if alg.dim(a) != 0 {
        pair.require(n_max + a + 1)?;
    }

    let cert = koszul_check_with(pair, max_degree, opts.parallel)?;
    let diagnostics_only = !cert.is_koszul();
    if diagnostics_only && !opts.allow_non_koszul {
        return Err(Error::NotKoszul { cap: max_degree });
    }
    let mut notes = Vec::new();
    if diagnostics_only {
        notes.push("algebra not certified Koszul; report is diagnostic only".to_string());
    }

    if alg.dim(a) == 0 {
        notes.push("m^a = 0".to_string());
        let formula: Vec<usize> =
            (0..=n_max.min(max_degree - a)).map(|n| betti_formula(pair, n, a)).collect::<Result<_>>()?;
        let zeros = vec![0; n_max + 1];
        let formula_agrees = formula.iter().all(|&b| b == 0);
        let q_range = 0..=max_degree;
        let report = ResolutionReport {
            power: a,
            n_max,
            max_degree,
            koszul: Some(cert),
            diagnostics_only,
            modules: (0..=n_max).map(|n| LModuleSummary { n, a, rank: 0, generator_degree: n + a }).collect(),
            betti: BettiTable::linear(a, &zeros),
            formula,
            formula_agrees,
            image_equals_kernel: true,
            a_linear: true,
            d_squared_zero: true,
            minimal: true,
            exactness_defects: Vec::new(),
            augmentation: AugmentationCheck {
                image_dims: q_range.clone().map(|_| 0).collect(),
                expected_image_dims: q_range.clone().map(|_| 0).collect(),
                cokernel_dims: q_range.map(|q| alg.dim(q)).collect(),
                h0_dims: vec![0; max_degree + 1],
                composite_vanishes: true,
                ok: true,
            },
            notes,
            passed: formula_agrees && !diagnostics_only,
        };
        return Ok(Resolution { complex: ChainComplex::zero(pair.shared_algebra()), augmentation: None, report });
    }

    let build = |n: usize| l_module(pair, n, a);
    let modules: Vec<LModule<F>> = if opts.parallel {
        (0..=n_max).into_par_iter().map(build).collect::<Result<_>>()?
    } else {
        (0..=n_max).map(build).collect::<Result<_>>()?
    };
    let diff = |n: usize| l_differential(pair, &modules[n], &modules[n - 1]);
    let diffs: Vec<FreeMap<F>> = if opts.parallel {
        (1..=n_max).into_par_iter().map(diff).collect::<Result<_>>()?
    } else {
        (1..=n_max).map(diff).collect::<Result<_>>()?
    };
    let terms = modules.iter().map(LModule::free_module).collect();
    let complex = ChainComplex::new(pair.shared_algebra(), terms, diffs)?
        .with_tail_vanishing_below(n_max + 1 + a);
    let eps = augmentation(pair, a)?;

    let ranks: Vec<usize> = modules.iter().map(LModule::rank).collect();
    let formula: Vec<usize> = (0..=n_max).map(|n| betti_formula(pair, n, a)).collect::<Result<_>>()?;
    let formula_agrees = formula == ranks;
    let image_equals_kernel = (0..=n_max)
        .map(|n| incoming_rank(pair, n, a).map(|r| r == ranks[n]))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let a_linear = modules.iter().all(|m| {
        let t = m.free_module();
        t.degrees().iter().all(|&g| g == m.n + a)
            && (0..m.n + a).all(|q| t.strand_dim(alg, q) == 0)
    });
    let d_squared_zero = match complex.check_d_squared(max_degree) {
        Ok(()) => true,
        Err(Error::NotAComplex { .. }) => false,
        Err(e) => return Err(e),
    };
    let minimal = complex.is_minimal();

    let table = complex.homology_table(max_degree, opts.parallel)?;
    let mut exactness_defects = Vec::new();
    for n in 1..n_max {
        for q in 0..=max_degree {
            match table[n][q] {
                Some(0) => {}
                Some(dim) => exactness_defects.push(HomologyDefect { n, q, dim }),
                None => return Err(Error::InvariantViolation(format!("homology at ({n}, {q}) not computable"))),
            }
        }
    }

    let mut image_dims = Vec::with_capacity(max_degree + 1);
    let mut h0_dims = Vec::with_capacity(max_degree + 1);
    let mut composite_vanishes = true;
    for q in 0..=max_degree {
        let e = eps.strand(alg, q)?;
        image_dims.push(e.rank());
        let d1 = complex.strand_matrix(1, q);
        let d1_rank = match &d1 {
            Ok(m) => {
                composite_vanishes &= e.mul(m)?.is_zero();
                m.rank()
            }
            Err(Error::OutOfRange { .. }) => 0,
            Err(e) => return Err(e.clone()),
        };
        h0_dims.push(complex.term(0)?.strand_dim(alg, q) - d1_rank);
    }
    let expected_image_dims: Vec<usize> =
        (0..=max_degree).map(|q| if q >= a { alg.dim(q) } else { 0 }).collect();
    let cokernel_dims = (0..=max_degree).map(|q| alg.dim(q) - image_dims[q]).collect();
    let aug_ok = image_dims == expected_image_dims && h0_dims == expected_image_dims && composite_vanishes;

    let passed = !diagnostics_only
        && formula_agrees
        && image_equals_kernel
        && a_linear
        && d_squared_zero
        && minimal
        && exactness_defects.is_empty()
        && aug_ok;
    let report = ResolutionReport {
        power: a,
        n_max,
        max_degree,
        koszul: Some(cert),
        diagnostics_only,
        modules: modules.iter().map(LModule::summary).collect(),
        betti: BettiTable::linear(a, &ranks),
        formula,
        formula_agrees,
        image_equals_kernel,
        a_linear,
        d_squared_zero,
        minimal,
        exactness_defects,
        augmentation: AugmentationCheck {
            image_dims,
            expected_image_dims,
            cokernel_dims,
            h0_dims,
            composite_vanishes,
            ok: aug_ok,
        },
        notes,
        passed,
    };
    Ok(Resolution { complex, augmentation: Some(eps), report })
}
