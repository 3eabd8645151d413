use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, Matrix, SparseVec};
use crate::field::Field;

/// What a free generator stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GenLabel {
    Plain,
    /// Basis element `dual_index` of `(A^!)^*_{dual_degree}` tensored with
    /// basis element `right_index` of `A_{right_degree}`.
    Tensor { dual_degree: usize, dual_index: usize, right_degree: usize, right_index: usize },
    /// Basis vector `index` of the module `L_{n,a}`.
    Kernel { n: usize, a: usize, index: usize },
}

/// A graded free left module `⊕ A(-deg g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedFreeModule {
    degrees: Vec<usize>,
    labels: Vec<GenLabel>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<usize>) -> Self {
        let labels = vec![GenLabel::Plain; degrees.len()];
        GradedFreeModule { degrees, labels }
    }

    pub fn with_labels(degrees: Vec<usize>, labels: Vec<GenLabel>) -> Self {
        assert_eq!(degrees.len(), labels.len());
        GradedFreeModule { degrees, labels }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.degrees.iter().copied().min()
    }

    /// Start of each generator's block in the strand basis at internal degree `q`.
    pub fn strand_offsets<F: Field>(&self, alg: &GradedAlgebra<F>, q: usize) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.rank());
        let mut total = 0;
        for &g in &self.degrees {
            offsets.push(total);
            if g <= q {
                total += alg.dim(q - g);
            }
        }
        (offsets, total)
    }

    /// `dim_k` of the degree-`q` component.
    pub fn strand_dim<F: Field>(&self, alg: &GradedAlgebra<F>, q: usize) -> usize {
        self.strand_offsets(alg, q).1
    }

    pub fn direct_sum(parts: &[&GradedFreeModule]) -> Self {
        let mut out = GradedFreeModule::zero();
        for p in parts {
            out.degrees.extend_from_slice(&p.degrees);
            out.labels.extend_from_slice(&p.labels);
        }
        out
    }
}

/// A degree-preserving map of graded free left modules, stored by the images
/// of the source generators: source generator `g` goes to `Σ c_{gh} e_h` with
/// `c_{gh}` in `A_{deg g - deg h}` (sparse normal coordinates).
pub struct FreeMap<F: Field> {
    source: GradedFreeModule,
    target: GradedFreeModule,
    images: Vec<Vec<(usize, SparseVec<F::Elem>)>>,
    cache: Mutex<HashMap<usize, Arc<Matrix<F>>>>,
}

impl<F: Field> Clone for FreeMap<F> {
    fn clone(&self) -> Self {
        FreeMap {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl<F: Field> fmt::Debug for FreeMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeMap")
            .field("source_rank", &self.source.rank())
            .field("target_rank", &self.target.rank())
            .finish()
    }
}

impl<F: Field> FreeMap<F> {
    pub fn new(
        source: GradedFreeModule,
        target: GradedFreeModule,
        images: Vec<Vec<(usize, SparseVec<F::Elem>)>>,
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        let mut cleaned = Vec::with_capacity(images.len());
        for (g, img) in images.into_iter().enumerate() {
            let mut row: Vec<(usize, SparseVec<F::Elem>)> = Vec::with_capacity(img.len());
            for (h, c) in img {
                if c.is_empty() {
                    continue;
                }
                if h >= target.rank() {
                    return Err(Error::ShapeMismatch(format!("target generator {h} out of range")));
                }
                if target.degrees[h] > source.degrees[g] {
                    return Err(Error::ShapeMismatch(format!(
                        "generator {g} of degree {} cannot map to degree {}",
                        source.degrees[g], target.degrees[h]
                    )));
                }
                row.push((h, c));
            }
            row.sort_by_key(|(h, _)| *h);
            cleaned.push(row);
        }
        Ok(FreeMap { source, target, images: cleaned, cache: Mutex::new(HashMap::new()) })
    }

    pub fn zero(source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let images = vec![Vec::new(); source.rank()];
        FreeMap { source, target, images, cache: Mutex::new(HashMap::new()) }
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn images(&self) -> &[Vec<(usize, SparseVec<F::Elem>)>] {
        &self.images
    }

    /// No generator maps with a unit (degree-0) coefficient: the map vanishes
    /// after tensoring with the residue field.
    pub fn is_minimal(&self) -> bool {
        self.images.iter().enumerate().all(|(g, img)| {
            img.iter()
                .all(|(h, c)| self.source.degrees[g] != self.target.degrees[*h] || c.is_empty())
        })
    }

    /// Matrix of the map on the degree-`q` components (memoized).
    pub fn strand(&self, alg: &GradedAlgebra<F>, q: usize) -> Result<Arc<Matrix<F>>> {
        if q > alg.cap() {
            return Err(Error::DegreeCapExceeded { requested: q, cap: alg.cap() });
        }
        if let Some(m) = self.cache.lock().expect("strand cache").get(&q) {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(self.compute_strand(alg, q)?);
        let mut cache = self.cache.lock().expect("strand cache");
        Ok(Arc::clone(cache.entry(q).or_insert(m)))
    }

    fn compute_strand(&self, alg: &GradedAlgebra<F>, q: usize) -> Result<Matrix<F>> {
        let f = alg.field();
        let (src_off, src_dim) = self.source.strand_offsets(alg, q);
        let (tgt_off, tgt_dim) = self.target.strand_offsets(alg, q);
        let mut rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); tgt_dim];
        for (g, img) in self.images.iter().enumerate() {
            let dg = self.source.degrees[g];
            if dg > q || img.is_empty() {
                continue;
            }
            let udeg = q - dg;
            for u in 0..alg.dim(udeg) {
                let col = src_off[g] + u;
                for (h, coeff) in img {
                    let cdeg = dg - self.target.degrees[*h];
                    let prod = if cdeg == 0 {
                        coeff
                            .iter()
                            .map(|(_, c)| (u, c.clone()))
                            .collect::<SparseVec<F::Elem>>()
                    } else {
                        alg.multiply_elements(udeg, &[(u, f.one())], cdeg, coeff)?
                    };
                    for (i, e) in prod {
                        rows[tgt_off[*h] + i].push((col, e));
                    }
                }
            }
        }
        Matrix::from_sparse_rows(f.clone(), src_dim, rows)
    }

    /// Blockwise assembly: each block is `(source generator offset, target
    /// generator offset, map, sign)`.
    pub fn from_blocks(
        field: &F,
        source: GradedFreeModule,
        target: GradedFreeModule,
        blocks: &[(usize, usize, &FreeMap<F>, bool)],
    ) -> Result<Self> {
        let mut images: Vec<Vec<(usize, SparseVec<F::Elem>)>> = vec![Vec::new(); source.rank()];
        let minus = field.from_i64(-1);
        for (s_off, t_off, map, negate) in blocks {
            for (g, img) in map.images.iter().enumerate() {
                for (h, c) in img {
                    let c = if *negate {
                        c.iter().map(|(i, e)| (*i, field.mul(e, &minus))).collect()
                    } else {
                        c.clone()
                    };
                    let slot = &mut images[s_off + g];
                    match slot.iter_mut().find(|(hh, _)| *hh == t_off + h) {
                        Some((_, acc)) => *acc = axpy(field, acc, &field.one(), &c),
                        None => slot.push((t_off + h, c)),
                    }
                }
            }
        }
        Self::new(source, target, images)
    }
}
