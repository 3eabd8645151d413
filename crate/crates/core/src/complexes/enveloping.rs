use super::chain::ChainComplex;
use super::module::{FreeMap, GenLabel, GradedFreeModule};
use super::priddy::{trace_images, ActionConvention};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SparseVec};
use crate::field::Field;
use crate::pair::KoszulPair;

/// Sign applied to `∂″` out of `F_{i,j}` when totalizing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// `(-1)^i`, with `i` the homological degree.
    Homological,
    /// `(-1)^j`, with `j` the column.
    Column,
}

impl SignRule {
    fn negate(self, i: usize, j: usize) -> bool {
        match self {
            SignRule::Homological => i % 2 == 1,
            SignRule::Column => j % 2 == 1,
        }
    }
}

/// The family `F_{i,j} = A ⊗ (A^!)^*_i ⊗ A_j` with unsigned maps
/// `∂′: F_{i,j} -> F_{i-1,j}` and `∂″: F_{i,j} -> F_{i-1,j+1}`.
///
/// Generator `(φ, s)` of `F_{i,j}` has index `φ · dim A_j + s` and degree `i + j`.
#[derive(Clone, Debug)]
pub struct EnvelopingDoubleComplex<'a, F: Field> {
    pair: &'a KoszulPair<F>,
    max_degree: usize,
    convention: ActionConvention,
    // columns j < columns are kept
    columns: Option<usize>,
}

impl<'a, F: Field> EnvelopingDoubleComplex<'a, F> {
    pub fn new(pair: &'a KoszulPair<F>, max_degree: usize) -> Result<Self> {
        Self::with_convention(pair, max_degree, ActionConvention::CANONICAL)
    }

    pub fn with_convention(
        pair: &'a KoszulPair<F>,
        max_degree: usize,
        convention: ActionConvention,
    ) -> Result<Self> {
        pair.require(max_degree)?;
        Ok(EnvelopingDoubleComplex { pair, max_degree, convention, columns: None })
    }

    pub fn pair(&self) -> &KoszulPair<F> {
        self.pair
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn convention(&self) -> ActionConvention {
        self.convention
    }

    /// Keeps only the columns `j <= a - 1` (the complex `𝕏_a` once totalized).
    pub fn truncate_columns(&self, a: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidPresentation("column truncation needs a >= 1".into()));
        }
        if a > self.max_degree {
            return Err(Error::DegreeCapExceeded { requested: a, cap: self.max_degree });
        }
        Ok(EnvelopingDoubleComplex { columns: Some(a), ..self.clone() })
    }

    pub fn columns(&self) -> Option<usize> {
        self.columns
    }

    /// Whether `F_{i,j}` is part of the (possibly truncated) family.
    pub fn has(&self, i: usize, j: usize) -> bool {
        i + j <= self.max_degree && self.columns.is_none_or(|a| j < a)
    }

    pub fn module(&self, i: usize, j: usize) -> GradedFreeModule {
        let (rd, ra) = (self.pair.dual().dim(i), self.pair.algebra().dim(j));
        if !self.has(i, j) {
            return GradedFreeModule::zero();
        }
        let mut labels = Vec::with_capacity(rd * ra);
        for p in 0..rd {
            for s in 0..ra {
                labels.push(GenLabel::Tensor { dual_degree: i, dual_index: p, right_degree: j, right_index: s });
            }
        }
        GradedFreeModule::with_labels(vec![i + j; rd * ra], labels)
    }

    fn bounds(&self, i: usize, j: usize) -> Result<()> {
        if i + j > self.max_degree {
            return Err(Error::DegreeCapExceeded { requested: i + j, cap: self.max_degree });
        }
        if i == 0 {
            return Err(Error::OutOfRange { n: 0 });
        }
        Ok(())
    }

    /// `∂′(1 ⊗ φ ⊗ s) = Σ_t x_t ⊗ (x_t^* acting on φ) ⊗ s`.
    pub fn dprime(&self, i: usize, j: usize) -> Result<FreeMap<F>> {
        self.bounds(i, j)?;
        let (src, dst) = (self.module(i, j), self.module(i - 1, j));
        if src.rank() == 0 || dst.rank() == 0 {
            return Ok(FreeMap::zero(src, dst));
        }
        let ra = self.pair.algebra().dim(j);
        let phi = trace_images(self.pair, self.convention.dprime, i)?;
        let mut images = Vec::with_capacity(src.rank());
        for img in &phi {
            for s in 0..ra {
                images.push(img.iter().map(|(r, c)| (r * ra + s, c.clone())).collect());
            }
        }
        FreeMap::new(src, dst, images)
    }

    /// Generator-level matrix of `∂″`:
    /// `(A^!)^*_i ⊗ A_j -> (A^!)^*_{i-1} ⊗ A_{j+1}`, `φ ⊗ s ↦ Σ_t (x_t^* acting on φ) ⊗ x_t s`.
    pub fn dsecond_generator_matrix(&self, i: usize, j: usize) -> Result<Matrix<F>> {
        self.bounds(i, j)?;
        let f = self.pair.field().clone();
        let alg = self.pair.algebra();
        let (ra, rb) = (alg.dim(j), alg.dim(j + 1));
        let (rd, rt) = (self.pair.dual().dim(i), self.pair.dual().dim(i - 1));
        let mut rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); rt * rb];
        for t in 0..self.pair.d() {
            let act = self.pair.dual().dual_action(self.convention.dsecond, t, i)?;
            let left: Vec<SparseVec<F::Elem>> =
                (0..ra).map(|s| alg.multiply_sparse(1, t, j, s)).collect::<Result<_>>()?;
            for (r, arow) in act.sparse_rows().iter().enumerate() {
                for (p, a) in arow {
                    for (s, prod) in left.iter().enumerate() {
                        for (s2, b) in prod {
                            rows[r * rb + s2].push((p * ra + s, f.mul(a, b)));
                        }
                    }
                }
            }
        }
        Matrix::from_sparse_rows(f, rd * ra, rows)
    }

    /// `∂″` as a map of free modules; all coefficients are scalars.
    pub fn dsecond(&self, i: usize, j: usize) -> Result<FreeMap<F>> {
        let src = self.module(i, j);
        let dst = if self.has(i - 1, j + 1) { self.module(i - 1, j + 1) } else { GradedFreeModule::zero() };
        if src.rank() == 0 || dst.rank() == 0 {
            self.bounds(i, j)?;
            return Ok(FreeMap::zero(src, dst));
        }
        let m = self.dsecond_generator_matrix(i, j)?.transpose();
        let images = m
            .sparse_rows()
            .iter()
            .map(|row| row.iter().map(|(h, c)| (*h, vec![(0, c.clone())])).collect())
            .collect();
        FreeMap::new(src, dst, images)
    }

    fn column_range(&self, n: usize) -> Vec<usize> {
        (0..=self.max_degree.saturating_sub(n)).filter(|&j| self.has(n, j)).collect()
    }

    /// Term `n = ⊕_j F_{n,j}`, with `∂_n = ∂′ ± ∂″` by `rule`, for `n <= n_max`.
    pub fn totalize(&self, rule: SignRule, n_max: usize) -> Result<ChainComplex<F>> {
        if n_max > self.max_degree {
            return Err(Error::DegreeCapExceeded { requested: n_max, cap: self.max_degree });
        }
        let cols: Vec<Vec<usize>> = (0..=n_max).map(|n| self.column_range(n)).collect();
        let modules: Vec<Vec<GradedFreeModule>> =
            (0..=n_max).map(|n| cols[n].iter().map(|&j| self.module(n, j)).collect()).collect();
        let offsets: Vec<Vec<usize>> = modules
            .iter()
            .map(|ms| {
                ms.iter()
                    .scan(0, |acc, m| {
                        let o = *acc;
                        *acc += m.rank();
                        Some(o)
                    })
                    .collect()
            })
            .collect();
        let terms: Vec<GradedFreeModule> =
            modules.iter().map(|ms| GradedFreeModule::direct_sum(&ms.iter().collect::<Vec<_>>())).collect();
        let f = self.pair.field();
        let mut diffs = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let mut maps = Vec::new();
            for (k, &j) in cols[n].iter().enumerate() {
                if let Some(t) = cols[n - 1].iter().position(|&c| c == j) {
                    maps.push((offsets[n][k], offsets[n - 1][t], self.dprime(n, j)?, false));
                }
                if let Some(t) = cols[n - 1].iter().position(|&c| c == j + 1) {
                    maps.push((offsets[n][k], offsets[n - 1][t], self.dsecond(n, j)?, rule.negate(n, j)));
                }
            }
            let blocks: Vec<(usize, usize, &FreeMap<F>, bool)> =
                maps.iter().map(|(s, t, m, neg)| (*s, *t, m, *neg)).collect();
            diffs.push(FreeMap::from_blocks(f, terms[n].clone(), terms[n - 1].clone(), &blocks)?);
        }
        let cx = ChainComplex::new(self.pair.shared_algebra(), terms, diffs)?
            .with_tail_vanishing_below(n_max + 1);
        match cx.check_d_squared(self.max_degree) {
            Ok(()) => Ok(cx),
            Err(Error::NotAComplex { n, q }) => Err(Error::SignRuleViolation { n, q }),
            Err(e) => Err(e),
        }
    }

    /// `∂′(i-1, j+1) ∘ ∂″(i, j) = ∂″(i-1, j) ∘ ∂′(i, j)` on every strand up to the cap.
    pub fn check_commutation(&self) -> Result<bool> {
        let alg = self.pair.algebra();
        for i in 2..=self.max_degree {
            for j in 0..=self.max_degree - i {
                if !self.has(i, j) {
                    continue;
                }
                let (dp_lo, ds_hi) = (self.dprime(i - 1, j + 1)?, self.dsecond(i, j)?);
                let (ds_lo, dp_hi) = (self.dsecond(i - 1, j)?, self.dprime(i, j)?);
                for q in i + j..=self.max_degree {
                    let lhs = dp_lo.strand(alg, q)?.mul(&*ds_hi.strand(alg, q)?)?;
                    let rhs = ds_lo.strand(alg, q)?.mul(&*dp_hi.strand(alg, q)?)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `∂′² = 0` and `∂″² = 0` on every stored strand.
    pub fn check_squares(&self) -> Result<bool> {
        let alg = self.pair.algebra();
        for i in 2..=self.max_degree {
            for j in 0..=self.max_degree - i {
                let (a, b) = (self.dprime(i - 1, j)?, self.dprime(i, j)?);
                let (c, e) = (self.dsecond(i - 1, j + 1)?, self.dsecond(i, j)?);
                for q in i + j..=self.max_degree {
                    if !a.strand(alg, q)?.mul(&*b.strand(alg, q)?)?.is_zero()
                        || !c.strand(alg, q)?.mul(&*e.strand(alg, q)?)?.is_zero()
                    {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every `∂′` block has positive-degree coefficients.
    pub fn dprime_is_minimal(&self) -> Result<bool> {
        for i in 1..=self.max_degree {
            for j in 0..=self.max_degree - i {
                if !self.dprime(i, j)?.is_minimal() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Homology of the generator-level row `r`:
    /// `F_{r,0} -> F_{r-1,1} -> … -> F_{0,r}` along `∂″`, indexed by `i`.
    pub fn row_homology(&self, r: usize) -> Result<Vec<usize>> {
        if r > self.max_degree {
            return Err(Error::DegreeCapExceeded { requested: r, cap: self.max_degree });
        }
        let dim = |i: usize| self.pair.dual().dim(i) * self.pair.algebra().dim(r - i);
        let rank = |i: usize| -> Result<usize> {
            if i == 0 || i > r {
                Ok(0)
            } else {
                Ok(self.dsecond_generator_matrix(i, r - i)?.rank())
            }
        };
        (0..=r).map(|i| Ok(dim(i) - rank(i)? - rank(i + 1)?)).collect()
    }
}
