use serde::Serialize;

use crate::complexes::{ActionConvention, EnvelopingDoubleComplex, FreeMap, GenLabel, GradedFreeModule};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SpanSolver, SparseVec};
use crate::field::Field;
use crate::pair::KoszulPair;

/// `L_{n,a} = A ⊗ K`, `K ⊆ (A^!)^*_n ⊗ A_a` the kernel of the generator-level `∂″`.
#[derive(Clone, Debug)]
pub struct LModule<F: Field> {
    pub n: usize,
    pub a: usize,
    /// Columns span `K`, in coordinates `φ · dim A_a + s`.
    basis: Matrix<F>,
    solver: SpanSolver<F>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LModuleSummary {
    pub n: usize,
    pub a: usize,
    pub rank: usize,
    pub generator_degree: usize,
}

impl<F: Field> LModule<F> {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn generator_degree(&self) -> usize {
        self.n + self.a
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of an ambient generator-level vector in the basis of `K`.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.solver.solve(v)
    }

    pub fn free_module(&self) -> GradedFreeModule {
        let r = self.rank();
        GradedFreeModule::with_labels(
            vec![self.generator_degree(); r],
            (0..r).map(|index| GenLabel::Kernel { n: self.n, a: self.a, index }).collect(),
        )
    }

    pub fn summary(&self) -> LModuleSummary {
        LModuleSummary { n: self.n, a: self.a, rank: self.rank(), generator_degree: self.generator_degree() }
    }
}

/// Builds `L_{n,a}`; needs the pair computed to degree `n + a + 1`.
pub fn l_module<F: Field>(pair: &KoszulPair<F>, n: usize, a: usize) -> Result<LModule<F>> {
    if a == 0 {
        return Err(Error::InvalidPresentation("the power a must be at least 1".into()));
    }
    pair.require(n + a + 1)?;
    let f = pair.field().clone();
    let basis = if n == 0 {
        Matrix::identity(f, pair.algebra().dim(a))
    } else {
        let x = EnvelopingDoubleComplex::new(pair, n + a + 1)?;
        x.dsecond_generator_matrix(n, a)?.kernel_basis()
    };
    let solver = SpanSolver::new(&basis)?;
    Ok(LModule { n, a, basis, solver })
}

/// Generator-level rank of `∂″ : F_{n+1,a-1} -> F_{n,a}`; the image description of `L_{n,a}`.
pub fn incoming_rank<F: Field>(pair: &KoszulPair<F>, n: usize, a: usize) -> Result<usize> {
    if a == 0 {
        return Err(Error::InvalidPresentation("the power a must be at least 1".into()));
    }
    pair.require(n + a + 1)?;
    let x = EnvelopingDoubleComplex::new(pair, n + a + 1)?;
    x.dsecond_generator_matrix(n + 1, a - 1).map(|m| m.rank())
}

/// `∂′_n : L_{n,a} -> L_{n-1,a}` in the kernel bases.
pub fn l_differential<F: Field>(
    pair: &KoszulPair<F>,
    source: &LModule<F>,
    target: &LModule<F>,
) -> Result<FreeMap<F>> {
    let (n, a) = (source.n, source.a);
    if n == 0 || target.n + 1 != n || target.a != a {
        return Err(Error::ShapeMismatch(format!(
            "no differential from L_{{{n},{a}}} to L_{{{},{}}}",
            target.n, target.a
        )));
    }
    let f = pair.field();
    let ra = pair.algebra().dim(a);
    let side = ActionConvention::CANONICAL.dprime;
    let actions: Vec<Matrix<F>> =
        (0..pair.d()).map(|t| pair.dual().dual_action(side, t, n)).collect::<Result<_>>()?;
    let mut images = Vec::with_capacity(source.rank());
    for w in source.basis.columns() {
        let mut coeffs: Vec<SparseVec<F::Elem>> = vec![Vec::new(); target.rank()];
        for (t, act) in actions.iter().enumerate() {
            // (act ⊗ id) w
            let mut v = vec![f.zero(); target.ambient_dim()];
            for (r, row) in act.sparse_rows().iter().enumerate() {
                for (p, c) in row {
                    for s in 0..ra {
                        let e = &w[p * ra + s];
                        if !f.is_zero(e) {
                            v[r * ra + s] = f.mul_add(&v[r * ra + s], c, e);
                        }
                    }
                }
            }
            if v.iter().all(|e| f.is_zero(e)) {
                continue;
            }
            let c = target.coordinates(&v).map_err(|e| match e {
                Error::NotInSpan => Error::InvariantViolation(format!(
                    "∂′ does not preserve the kernel L_{{{n},{a}}} -> L_{{{},{a}}}",
                    n - 1
                )),
                other => other,
            })?;
            for (h, e) in c.into_iter().enumerate() {
                if !f.is_zero(&e) {
                    coeffs[h].push((t, e));
                }
            }
        }
        images.push(coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_empty()).collect());
    }
    FreeMap::new(source.free_module(), target.free_module(), images)
}

/// `ε_a : L_{0,a} -> A`, `1 ⊗ 1 ⊗ s ↦ s`.
pub fn augmentation<F: Field>(pair: &KoszulPair<F>, a: usize) -> Result<FreeMap<F>> {
    pair.require(a)?;
    let f = pair.field();
    let r = pair.algebra().dim(a);
    let source = GradedFreeModule::with_labels(
        vec![a; r],
        (0..r).map(|index| GenLabel::Kernel { n: 0, a, index }).collect(),
    );
    let images = (0..r).map(|s| vec![(0, vec![(s, f.one())])]).collect();
    FreeMap::new(source, GradedFreeModule::new(vec![0]), images)
}
