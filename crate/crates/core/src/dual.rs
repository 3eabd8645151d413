//! The quadratic dual `A^! = T(V*)/Q^perp` and the generator actions on it.
//!
//! Gradings are stored non-negatively: internal degree `i` of `A^!` is the
//! component usually written `(A^!)_{-i}`. Word bases of `V (x) V` and
//! `V* (x) V*` are dual to each other (`<u, w*> = 1` iff `u = w`).

use crate::algebra::{GradedAlgebra, QuadraticPresentation};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::Field;
use crate::freetensor::NCPoly;

/// Which multiplication on `A^!` is transposed to act on `(A^!)^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualSide {
    /// Transpose of `z -> x_t^* z`.
    Left,
    /// Transpose of `z -> z x_t^*`.
    Right,
}

#[derive(Clone, Debug)]
pub struct DualAlgebra<F: Field> {
    carrier: GradedAlgebra<F>,
    /// `left[i][t]`: `z -> x_t^* z` from `A^!_{i-1}` to `A^!_i`; `left[0]` is empty.
    left: Vec<Vec<Matrix<F>>>,
    right: Vec<Vec<Matrix<F>>>,
}

/// Rows of the reduced echelon basis of `Q^perp` inside the `d^2` word space.
pub fn orthogonal_complement<F: Field>(pres: &QuadraticPresentation<F>) -> Matrix<F> {
    let kernel = pres.relation_matrix().kernel_basis();
    let (r, p) = kernel.transpose().rref();
    r.select_rows(&(0..p.len()).collect::<Vec<_>>())
}

/// Starred generator names for the dual.
pub fn starred(names: &[String]) -> Vec<String> {
    names.iter().map(|n| format!("{n}*")).collect()
}

impl<F: Field> DualAlgebra<F> {
    /// The dual presentation (starred names, echelon basis of `Q^perp`) built to `cap`.
    pub fn quadratic_dual(pres: &QuadraticPresentation<F>, cap: usize) -> Result<Self> {
        let f = pres.field().clone();
        let d = pres.d();
        let perp = orthogonal_complement(pres);
        let rels = perp
            .sparse_rows()
            .iter()
            .map(|row| NCPoly::from_sparse(&f, d, 2, row))
            .collect();
        let dual_pres = QuadraticPresentation::new(f, starred(pres.generator_names()), rels, false)?;
        Self::from_presentation(dual_pres, cap)
    }

    /// Wrap an already-dual presentation, computing its carrier and action matrices.
    pub fn from_presentation(dual_pres: QuadraticPresentation<F>, cap: usize) -> Result<Self> {
        let carrier = GradedAlgebra::build(dual_pres, cap)?;
        let f = carrier.field().clone();
        let d = carrier.d();
        let mut left = vec![Vec::new()];
        let mut right = vec![Vec::new()];
        for i in 1..=cap {
            let (src, dst) = (carrier.dim(i - 1), carrier.dim(i));
            let mut li = Vec::with_capacity(d);
            let mut ri = Vec::with_capacity(d);
            for t in 0..d {
                let mut lcols = Vec::with_capacity(src);
                let mut rcols = Vec::with_capacity(src);
                for b in 0..src {
                    lcols.push(carrier.multiply(1, t, i - 1, b)?);
                    let r = carrier.right_mul_generator(i - 1, &[(b, f.one())], t)?;
                    rcols.push(carrier.densify(i, &r));
                }
                li.push(Matrix::from_columns(f.clone(), dst, &lcols)?);
                ri.push(Matrix::from_columns(f.clone(), dst, &rcols)?);
            }
            left.push(li);
            right.push(ri);
        }
        Ok(DualAlgebra { carrier, left, right })
    }

    pub fn carrier(&self) -> &GradedAlgebra<F> {
        &self.carrier
    }

    pub fn presentation(&self) -> &QuadraticPresentation<F> {
        self.carrier.presentation()
    }

    pub fn cap(&self) -> usize {
        self.carrier.cap()
    }

    /// `dim_k A^!_i`.
    pub fn dual_dims(&self, i: usize) -> Result<usize> {
        self.carrier.hilbert(i)
    }

    pub(crate) fn dim(&self, i: usize) -> usize {
        self.carrier.dim(i)
    }

    /// Left and right multiplication by `x_t^*` from degree `i-1` to `i`.
    pub fn multiplication_matrices(&self, t: usize, i: usize) -> Result<(&Matrix<F>, &Matrix<F>)> {
        self.check_action(t, i)?;
        Ok((&self.left[i][t], &self.right[i][t]))
    }

    fn check_action(&self, t: usize, i: usize) -> Result<()> {
        if i == 0 {
            return Err(Error::OutOfRange { n: 0 });
        }
        if i > self.cap() {
            return Err(Error::DegreeCapExceeded { requested: i, cap: self.cap() });
        }
        if t >= self.carrier.d() {
            return Err(Error::LetterOutOfRange { letter: t, generators: self.carrier.d() });
        }
        Ok(())
    }

    /// Transposed actions `(A^!)^*_i -> (A^!)^*_{i-1}`: `(left_on_dual, right_on_dual)`,
    /// each of shape `dim A^!_{i-1} x dim A^!_i`.
    pub fn dual_action_matrices(&self, t: usize, i: usize) -> Result<(Matrix<F>, Matrix<F>)> {
        self.check_action(t, i)?;
        Ok((self.left[i][t].transpose(), self.right[i][t].transpose()))
    }

    /// The transposed action of `x_t^*` on the given side.
    pub fn dual_action(&self, side: DualSide, t: usize, i: usize) -> Result<Matrix<F>> {
        self.check_action(t, i)?;
        Ok(match side {
            DualSide::Left => self.left[i][t].transpose(),
            DualSide::Right => self.right[i][t].transpose(),
        })
    }

    /// Relations of `A^!` rendered with starred names, factors separated by spaces.
    pub fn render_relations(&self) -> Vec<String> {
        let p = self.presentation();
        p.relations()
            .iter()
            .map(|r| r.render(p.field(), p.generator_names(), " "))
            .collect()
    }
}

/// Whether `(Q^perp)^perp = Q` as subspaces of `V (x) V`.
pub fn double_dual_check<F: Field>(pres: &QuadraticPresentation<F>) -> bool {
    let perp = orthogonal_complement(pres);
    let back = perp.kernel_basis();
    let (r, p) = back.transpose().rref();
    let back_space = r.select_rows(&(0..p.len()).collect::<Vec<_>>());
    back_space == pres.relation_space()
}
