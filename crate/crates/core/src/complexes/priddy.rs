use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::chain::{ChainComplex, HomologyWitness};
use super::module::{FreeMap, GenLabel, GradedFreeModule};
use crate::dual::DualSide;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SparseVec};
use crate::field::Field;
use crate::pair::KoszulPair;

/// Which transposed action each differential of the double complex uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ActionConvention {
    pub dprime: DualSide,
    pub dsecond: DualSide,
}

impl ActionConvention {
    /// The only assignment for which ∂′² = 0, ∂″² = 0 and ∂′∂″ = ∂″∂′ all hold.
    pub const CANONICAL: ActionConvention =
        ActionConvention { dprime: DualSide::Left, dsecond: DualSide::Right };

    pub fn all() -> [ActionConvention; 4] {
        use DualSide::*;
        [
            ActionConvention { dprime: Left, dsecond: Left },
            ActionConvention { dprime: Left, dsecond: Right },
            ActionConvention { dprime: Right, dsecond: Left },
            ActionConvention { dprime: Right, dsecond: Right },
        ]
    }
}

/// Terms `A ⊗ (A^!)^*_i` for `i <= top`, generators labeled by dual basis index.
pub(crate) fn priddy_term<F: Field>(pair: &KoszulPair<F>, i: usize) -> GradedFreeModule {
    let r = pair.dual().dim(i);
    GradedFreeModule::with_labels(
        vec![i; r],
        (0..r)
            .map(|p| GenLabel::Tensor { dual_degree: i, dual_index: p, right_degree: 0, right_index: 0 })
            .collect(),
    )
}

/// Images of the dual basis of degree `i` under `φ ↦ Σ_t x_t ⊗ (x_t^* acting on φ)`:
/// for each source `p`, a list of `(target r, coefficient in A_1)`.
pub(crate) fn trace_images<F: Field>(
    pair: &KoszulPair<F>,
    side: DualSide,
    i: usize,
) -> Result<Vec<Vec<(usize, SparseVec<F::Elem>)>>> {
    let d = pair.d();
    let f = pair.field();
    let actions: Vec<Matrix<F>> =
        (0..d).map(|t| pair.dual().dual_action(side, t, i)).collect::<Result<_>>()?;
    let (src, dst) = (pair.dual().dim(i), pair.dual().dim(i - 1));
    let mut images = vec![Vec::new(); src];
    for (p, img) in images.iter_mut().enumerate() {
        for r in 0..dst {
            let coeff: SparseVec<F::Elem> = actions
                .iter()
                .enumerate()
                .map(|(t, m)| (t, m.get(r, p)))
                .filter(|(_, e)| !f.is_zero(e))
                .collect();
            if !coeff.is_empty() {
                img.push((r, coeff));
            }
        }
    }
    Ok(images)
}

/// The Priddy complex `A ⊗ (A^!)^*_i`, `i = 0..=top`, with differential
/// right multiplication by the trace element.
pub fn priddy_complex<F: Field>(pair: &KoszulPair<F>, top: usize) -> Result<ChainComplex<F>> {
    priddy_complex_with(pair, top, ActionConvention::CANONICAL.dprime)
}

pub fn priddy_complex_with<F: Field>(
    pair: &KoszulPair<F>,
    top: usize,
    side: DualSide,
) -> Result<ChainComplex<F>> {
    pair.require(top)?;
    let terms: Vec<GradedFreeModule> = (0..=top).map(|i| priddy_term(pair, i)).collect();
    let mut diffs = Vec::with_capacity(top);
    for i in 1..=top {
        let images = trace_images(pair, side, i)?;
        diffs.push(FreeMap::new(terms[i].clone(), terms[i - 1].clone(), images)?);
    }
    Ok(ChainComplex::new(pair.shared_algebra(), terms, diffs)?.with_tail_vanishing_below(top + 1))
}

/// `koszul_up_to(D)` or `failed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    KoszulUpTo(usize),
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::KoszulUpTo(d) => write!(f, "koszul_up_to({d})"),
            Verdict::Failed => write!(f, "failed"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KoszulCertificate {
    pub max_degree: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HomologyWitness>,
}

impl KoszulCertificate {
    pub fn is_koszul(&self) -> bool {
        matches!(self.verdict, Verdict::KoszulUpTo(_))
    }
}

/// Strand homology of the Priddy complex on every `(i, q)` with `i <= q <= D`;
/// Koszul up to `D` iff the only class is `H_0` in strand 0.
pub fn koszul_check<F: Field>(pair: &KoszulPair<F>, max_degree: usize) -> Result<KoszulCertificate> {
    koszul_check_with(pair, max_degree, false)
}

pub fn koszul_check_with<F: Field>(
    pair: &KoszulPair<F>,
    max_degree: usize,
    parallel: bool,
) -> Result<KoszulCertificate> {
    let cx = priddy_complex(pair, max_degree)?;
    certify(&cx, max_degree, parallel)
}

/// Certificate for an arbitrary Priddy-shaped complex (term `i` generated in degree `i`).
pub fn certify<F: Field>(cx: &ChainComplex<F>, max_degree: usize, parallel: bool) -> Result<KoszulCertificate> {
    let cells: Vec<(usize, usize)> = (0..=max_degree)
        .flat_map(|q| (0..=q.min(cx.top())).map(move |i| (i, q)))
        .collect();
    let eval = |&(i, q): &(usize, usize)| -> Result<i64> {
        match cx.strand_homology(i, q) {
            Ok(h) => Ok(h as i64),
            // more boundaries than cycles: report the defect as a negative dimension
            Err(Error::NotAComplex { .. }) => {
                let dim = cx.term(i)?.strand_dim(cx.algebra(), q) as i64;
                let out = if i == 0 { 0 } else { cx.strand_matrix(i, q)?.rank() as i64 };
                let inc = cx.strand_matrix(i + 1, q)?.rank() as i64;
                Ok(dim - out - inc)
            }
            Err(e) => Err(e),
        }
    };
    let dims: Vec<i64> = if parallel {
        cells.par_iter().map(eval).collect::<Result<_>>()?
    } else {
        cells.iter().map(eval).collect::<Result<_>>()?
    };
    for (&(i, q), &h) in cells.iter().zip(&dims) {
        let expected = i64::from(i == 0 && q == 0);
        if h != expected {
            let cycle = if h > 0 {
                cx.homology_witness(i, q)?
                    .map(|v| v.iter().map(|e| e.to_string()).collect())
            } else {
                None
            };
            return Ok(KoszulCertificate {
                max_degree,
                verdict: Verdict::Failed,
                witness: Some(HomologyWitness {
                    homological_degree: i,
                    internal_degree: q,
                    homology_dim: h,
                    cycle,
                }),
            });
        }
    }
    Ok(KoszulCertificate { max_degree, verdict: Verdict::KoszulUpTo(max_degree), witness: None })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::tests::{binom, ex0, names, polynomial, squarefree};
    use crate::algebra::{GradedAlgebra, QuadraticPresentation};
    use crate::dual::DualAlgebra;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn priddy_ranks() {
        let p = KoszulPair::new(polynomial(Rationals, 3), 5).unwrap();
        assert_eq!(priddy_complex(&p, 5).unwrap().ranks(), vec![1, 3, 3, 1, 0, 0]);
        let p = KoszulPair::new(ex0(Rationals), 5).unwrap();
        assert_eq!(priddy_complex(&p, 5).unwrap().ranks(), vec![1, 3, 6, 12, 24, 48]);
    }

    #[test]
    fn first_differential_pairs_generators() {
        let p = KoszulPair::new(ex0(Rationals), 3).unwrap();
        let cx = priddy_complex(&p, 3).unwrap();
        let m = cx.strand_matrix(1, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(*m, Matrix::identity(Rationals, 3));
        assert!(cx.is_minimal());
        cx.check_d_squared(3).unwrap();
    }

    #[test]
    fn ex0_homology() {
        let p = KoszulPair::new(ex0(Rationals), 6).unwrap();
        let cx = priddy_complex(&p, 6).unwrap();
        assert_eq!(cx.strand_homology(0, 0).unwrap(), 1);
        assert_eq!(cx.strand_homology(2, 4).unwrap(), 0);
    }

    #[test]
    fn froberg_class_is_koszul() {
        for pres in [ex0(Rationals), squarefree(Rationals, 3)] {
            let p = KoszulPair::new(pres, 6).unwrap();
            let c = koszul_check_with(&p, 6, true).unwrap();
            assert_eq!(c.verdict, Verdict::KoszulUpTo(6));
            assert!(c.witness.is_none());
        }
    }

    #[test]
    fn polynomial_ring_is_koszul() {
        let p = KoszulPair::new(polynomial(PrimeField::default(), 3), 5).unwrap();
        assert!(koszul_check(&p, 5).unwrap().is_koszul());
        assert_eq!(p.dual().dual_dims(2).unwrap(), binom(3, 2));
    }

    fn mismatched<F: Field>(f: F) -> KoszulPair<F> {
        // k[x,y] against the dual of the free algebra on two letters
        let alg = GradedAlgebra::build(polynomial(f.clone(), 2), 4).unwrap();
        let free = QuadraticPresentation::free(f, names(&["x", "y"])).unwrap();
        let dual = DualAlgebra::quadratic_dual(&free, 4).unwrap();
        KoszulPair::from_parts(Arc::new(alg), Arc::new(dual)).unwrap()
    }

    #[test]
    fn mismatched_dual_fails_with_witness() {
        let cert = koszul_check(&mismatched(Rationals), 4).unwrap();
        assert_eq!(cert.verdict, Verdict::Failed);
        let w = cert.witness.unwrap();
        assert_eq!((w.homological_degree, w.internal_degree, w.homology_dim), (1, 2, 1));
        let cycle = w.cycle.unwrap();
        assert_eq!(cycle.iter().filter(|c| *c != "0").count(), 2);

        // independent recount over F_p: dim ker ∂_1 − rank ∂_2 at strand 2
        let p = mismatched(PrimeField::new(7).unwrap());
        let cx = priddy_complex(&p, 4).unwrap();
        let d1 = cx.strand_matrix(1, 2).unwrap();
        let ker = d1.cols() - d1.rank();
        let img = cx.strand_matrix(2, 2).unwrap().rank();
        assert_eq!(ker as i64 - img as i64, w.homology_dim);
    }

    #[test]
    fn certificate_json() {
        let p = KoszulPair::new(ex0(Rationals), 3).unwrap();
        let c = koszul_check(&p, 3).unwrap();
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["verdict"], "koszul_up_to(3)");
        assert!(j.get("witness").is_none());
    }
}
