use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::module::{FreeMap, GradedFreeModule};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Matrix};
use crate::field::Field;

/// A bounded complex of graded free left `A`-modules. `differential(n)` maps
/// term `n` to term `n - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    algebra: Arc<GradedAlgebra<F>>,
    terms: Vec<GradedFreeModule>,
    differentials: Vec<FreeMap<F>>,
    // every omitted term past the top one is generated in degrees >= this
    tail_vanishes_below: Option<usize>,
}

/// A homology class that should not be there, with a representative cycle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomologyWitness {
    pub homological_degree: usize,
    pub internal_degree: usize,
    pub homology_dim: i64,
    pub cycle: Option<Vec<String>>,
}

impl<F: Field> ChainComplex<F> {
    pub fn new(
        algebra: Arc<GradedAlgebra<F>>,
        terms: Vec<GradedFreeModule>,
        differentials: Vec<FreeMap<F>>,
    ) -> Result<Self> {
        if terms.is_empty() && !differentials.is_empty() || differentials.len() + 1 < terms.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.source() != &terms[k + 1] || d.target() != &terms[k] {
                return Err(Error::ShapeMismatch(format!("differential {} has the wrong ends", k + 1)));
            }
        }
        Ok(ChainComplex { algebra, terms, differentials, tail_vanishes_below: None })
    }

    pub fn zero(algebra: Arc<GradedAlgebra<F>>) -> Self {
        ChainComplex {
            algebra,
            terms: vec![GradedFreeModule::zero()],
            differentials: Vec::new(),
            tail_vanishes_below: Some(usize::MAX),
        }
    }

    /// Declares that the (unstored) terms beyond the top are generated in
    /// degrees `>= degree`, so homology at the top is computable below it.
    pub fn with_tail_vanishing_below(mut self, degree: usize) -> Self {
        self.tail_vanishes_below = Some(degree);
        self
    }

    pub fn algebra(&self) -> &GradedAlgebra<F> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.rank() == 0)
    }

    pub fn top(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn term(&self, n: usize) -> Result<&GradedFreeModule> {
        self.terms.get(n).ok_or(Error::OutOfRange { n })
    }

    pub fn terms(&self) -> &[GradedFreeModule] {
        &self.terms
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(GradedFreeModule::rank).collect()
    }

    /// `∂_n : C_n -> C_{n-1}` for `1 <= n <= top`.
    pub fn differential(&self, n: usize) -> Result<&FreeMap<F>> {
        if n == 0 {
            return Err(Error::OutOfRange { n });
        }
        self.differentials.get(n - 1).ok_or(Error::OutOfRange { n })
    }

    pub fn differentials(&self) -> &[FreeMap<F>] {
        &self.differentials
    }

    pub fn strand_matrix(&self, n: usize, q: usize) -> Result<Arc<Matrix<F>>> {
        self.differential(n)?.strand(&self.algebra, q)
    }

    fn check_degree(&self, q: usize) -> Result<()> {
        if q > self.algebra.cap() {
            return Err(Error::DegreeCapExceeded { requested: q, cap: self.algebra.cap() });
        }
        Ok(())
    }

    fn outgoing_rank(&self, n: usize, q: usize) -> Result<usize> {
        if n == 0 {
            return Ok(0);
        }
        Ok(self.strand_matrix(n, q)?.rank())
    }

    fn incoming(&self, n: usize, q: usize) -> Result<Option<Arc<Matrix<F>>>> {
        if n < self.top() {
            return Ok(Some(self.strand_matrix(n + 1, q)?));
        }
        match self.tail_vanishes_below {
            Some(b) if q < b => Ok(None),
            _ => Err(Error::OutOfRange { n: n + 1 }),
        }
    }

    /// `dim ker ∂_n − rank ∂_{n+1}` on strand `q`.
    pub fn strand_homology(&self, n: usize, q: usize) -> Result<usize> {
        self.check_degree(q)?;
        let dim = self.term(n)?.strand_dim(&self.algebra, q);
        let ker = dim - self.outgoing_rank(n, q)?;
        let img = self.incoming(n, q)?.map_or(0, |m| m.rank());
        if img > ker {
            return Err(Error::NotAComplex { n: n + 1, q });
        }
        Ok(ker - img)
    }

    /// A cycle at `(n, q)` that is not a boundary, if any.
    pub fn homology_witness(&self, n: usize, q: usize) -> Result<Option<Vec<F::Elem>>> {
        self.check_degree(q)?;
        let f = self.algebra.field();
        let dim = self.term(n)?.strand_dim(&self.algebra, q);
        let kernel = if n == 0 {
            Matrix::identity(f.clone(), dim)
        } else {
            self.strand_matrix(n, q)?.kernel_basis()
        };
        let mut boundaries = Echelon::new(f.clone(), dim);
        if let Some(m) = self.incoming(n, q)? {
            for col in m.columns() {
                boundaries.insert(dense_to_sparse(f, col));
            }
        }
        for col in kernel.columns() {
            if !boundaries.contains(dense_to_sparse(f, col.clone())) {
                return Ok(Some(col));
            }
        }
        Ok(None)
    }

    /// `∂_{n-1} ∘ ∂_n = 0` on every strand up to `q_max`.
    pub fn check_d_squared(&self, q_max: usize) -> Result<()> {
        self.check_degree(q_max)?;
        for n in 2..=self.top() {
            for q in 0..=q_max {
                let prod = self.strand_matrix(n - 1, q)?.mul(&*self.strand_matrix(n, q)?)?;
                if !prod.is_zero() {
                    return Err(Error::NotAComplex { n, q });
                }
            }
        }
        Ok(())
    }

    /// Homology dimensions `h[n][q]` for `n <= top`, `q <= q_max`; entries
    /// that cannot be computed (incoming map not stored) are `None`.
    pub fn homology_table(&self, q_max: usize, parallel: bool) -> Result<Vec<Vec<Option<usize>>>> {
        self.check_degree(q_max)?;
        let cells: Vec<(usize, usize)> =
            (0..=self.top()).flat_map(|n| (0..=q_max).map(move |q| (n, q))).collect();
        let eval = |&(n, q): &(usize, usize)| match self.strand_homology(n, q) {
            Ok(h) => Ok(Some(h)),
            Err(Error::OutOfRange { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        let flat: Vec<Option<usize>> = if parallel {
            cells.par_iter().map(eval).collect::<Result<_>>()?
        } else {
            cells.iter().map(eval).collect::<Result<_>>()?
        };
        Ok(flat.chunks(q_max + 1).map(<[_]>::to_vec).collect())
    }

    /// Every differential vanishes modulo the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(FreeMap::is_minimal)
    }
}

pub(crate) fn dense_to_sparse<F: Field>(f: &F, v: Vec<F::Elem>) -> Vec<(usize, F::Elem)> {
    v.into_iter().enumerate().filter(|(_, e)| !f.is_zero(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::ex0;
    use crate::field::Rationals;

    #[test]
    fn zero_complex_has_no_homology() {
        let a = Arc::new(GradedAlgebra::build(ex0(Rationals), 3).unwrap());
        let c = ChainComplex::zero(a);
        for q in 0..=3 {
            assert_eq!(c.strand_homology(0, q).unwrap(), 0);
        }
        assert!(c.homology_witness(0, 2).unwrap().is_none());
    }

    #[test]
    fn koszul_complex_of_one_variable() {
        // A(-1) -> A, 1 |-> z over ex0
        let f = Rationals;
        let a = Arc::new(GradedAlgebra::build(ex0(f), 4).unwrap());
        let d1 = FreeMap::new(
            GradedFreeModule::new(vec![1]),
            GradedFreeModule::new(vec![0]),
            vec![vec![(0, vec![(2, f.one())])]],
        )
        .unwrap();
        let c = ChainComplex::new(
            Arc::clone(&a),
            vec![GradedFreeModule::new(vec![0]), GradedFreeModule::new(vec![1])],
            vec![d1],
        )
        .unwrap()
        .with_tail_vanishing_below(5);
        // A / zA has dims 1, 2, 0, 0
        let h0: Vec<usize> = (0..=3).map(|q| c.strand_homology(0, q).unwrap()).collect();
        assert_eq!(h0, vec![1, 2, 0, 0]);
        // u |-> uz is injective on A_1
        assert_eq!(c.strand_homology(1, 2).unwrap(), 0);
        let w = c.homology_witness(0, 1).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        let t = c.homology_table(3, true).unwrap();
        assert_eq!(t[0], vec![Some(1), Some(2), Some(0), Some(0)]);
    }

    #[test]
    fn mismatched_ends_are_rejected() {
        let a = Arc::new(GradedAlgebra::build(ex0(Rationals), 2).unwrap());
        let d = FreeMap::zero(GradedFreeModule::new(vec![1]), GradedFreeModule::new(vec![0]));
        let r = ChainComplex::new(
            a,
            vec![GradedFreeModule::new(vec![0, 0]), GradedFreeModule::new(vec![1])],
            vec![d],
        );
        assert!(r.is_err());
    }
}
