use std::sync::Arc;

use crate::algebra::{GradedAlgebra, QuadraticPresentation};
use crate::dual::DualAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;

/// An algebra together with a dual algebra on the same number of generators,
/// both computed to a common degree cap.
#[derive(Clone, Debug)]
pub struct KoszulPair<F: Field> {
    algebra: Arc<GradedAlgebra<F>>,
    dual: Arc<DualAlgebra<F>>,
}

impl<F: Field> KoszulPair<F> {
    /// Builds `A` and its quadratic dual up to `cap`.
    pub fn new(presentation: QuadraticPresentation<F>, cap: usize) -> Result<Self> {
        let dual = DualAlgebra::quadratic_dual(&presentation, cap)?;
        let algebra = GradedAlgebra::build(presentation, cap)?;
        Ok(KoszulPair { algebra: Arc::new(algebra), dual: Arc::new(dual) })
    }

    /// Pairs arbitrary algebras; nothing checks that `dual` is dual to `algebra`.
    pub fn from_parts(algebra: Arc<GradedAlgebra<F>>, dual: Arc<DualAlgebra<F>>) -> Result<Self> {
        if algebra.d() != dual.carrier().d() {
            return Err(Error::InvalidPresentation(format!(
                "algebra has {} generators, dual has {}",
                algebra.d(),
                dual.carrier().d()
            )));
        }
        Ok(KoszulPair { algebra, dual })
    }

    pub fn algebra(&self) -> &GradedAlgebra<F> {
        &self.algebra
    }

    pub fn shared_algebra(&self) -> Arc<GradedAlgebra<F>> {
        Arc::clone(&self.algebra)
    }

    pub fn dual(&self) -> &DualAlgebra<F> {
        &self.dual
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn d(&self) -> usize {
        self.algebra.d()
    }

    pub fn cap(&self) -> usize {
        self.algebra.cap().min(self.dual.cap())
    }

    pub(crate) fn require(&self, degree: usize) -> Result<()> {
        if degree > self.cap() {
            return Err(Error::DegreeCapExceeded { requested: degree, cap: self.cap() });
        }
        Ok(())
    }
}
