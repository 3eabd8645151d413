//! Quadratic algebras `A = T(V)/Q` computed degree by degree.
//!
//! Degree `n` of the ideal is `Q_{n-1} (x) V + V^{n-2} (x) Q_2`. Modulo the
//! first summand every word is equivalent to a combination of words `b x`
//! with `b` a normal word of degree `n-1`, so `A_n` is the quotient of
//! `A_{n-1} (x) V` by the image of `A_{n-2} (x) Q_2`. Columns `(b, x)` are
//! ordered like the words `b x` themselves, which makes the normal words
//! exactly the non-pivot words of the full degree-`n` relation space under
//! lexicographic order (checked against [`direct_normal_form`] in tests).

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Matrix, SparseVec};
use crate::field::Field;
use crate::freetensor::{embed_relation, enumerate_words, tensor_index, NCPoly, Word, DEFAULT_WORD_CAP};

/// `k<x_1..x_d> / (relations)` with every relation homogeneous of degree 2.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation<F: Field> {
    field: F,
    generator_names: Vec<String>,
    relations: Vec<NCPoly<F>>,
    commutative: bool,
}

impl<F: Field> QuadraticPresentation<F> {
    /// Validates the relations and drops those already in the span of earlier ones.
    /// With `commutative` set, the commutators `x_j x_i - x_i x_j` (`i < j`) are appended.
    pub fn new(
        field: F,
        generator_names: Vec<String>,
        relations: Vec<NCPoly<F>>,
        commutative: bool,
    ) -> Result<Self> {
        let d = generator_names.len();
        if d == 0 {
            return Err(Error::InvalidPresentation("at least one generator is required".into()));
        }
        let mut seen = HashSet::new();
        for name in &generator_names {
            if !seen.insert(name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{name}`")));
            }
        }
        let mut all = relations;
        for r in &all {
            if r.is_zero() {
                continue;
            }
            if r.degree() != 2 {
                let (w, _) = r.terms().iter().next().expect("nonzero");
                return Err(Error::NonQuadraticRelation { term: w.render(&generator_names, "*"), degree: r.degree() });
            }
            for w in r.terms().keys() {
                tensor_index(w, d)?;
            }
        }
        if commutative {
            for i in 0..d {
                for j in i + 1..d {
                    all.push(NCPoly::from_terms(
                        &field,
                        [(Word(vec![j, i]), field.one()), (Word(vec![i, j]), field.from_i64(-1))],
                    )?);
                }
            }
        }
        let mut ech = Echelon::new(field.clone(), d * d);
        let mut kept = Vec::new();
        for r in all {
            if !r.is_zero() && ech.insert(r.to_sparse(d)?) {
                kept.push(r);
            }
        }
        Ok(QuadraticPresentation { field, generator_names, relations: kept, commutative })
    }

    /// The free algebra on the given generators.
    pub fn free(field: F, generator_names: Vec<String>) -> Result<Self> {
        Self::new(field, generator_names, Vec::new(), false)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Number of generators.
    pub fn d(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relations(&self) -> &[NCPoly<F>] {
        &self.relations
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Relations as the rows of a `#relations x d^2` matrix in the word basis.
    pub fn relation_matrix(&self) -> Matrix<F> {
        let d = self.d();
        let rows = self
            .relations
            .iter()
            .map(|r| r.to_sparse(d).expect("validated"))
            .collect();
        Matrix::from_sparse_rows(self.field.clone(), d * d, rows).expect("validated")
    }

    /// Reduced echelon basis of `Q_2` (rows only, no zero rows).
    pub fn relation_space(&self) -> Matrix<F> {
        let m = self.relation_matrix();
        let (r, p) = m.rref();
        r.select_rows(&(0..p.len()).collect::<Vec<_>>())
    }

    /// Equal generators and equal relation spaces.
    pub fn same_algebra(&self, other: &Self) -> bool {
        self.generator_names == other.generator_names && self.relation_space() == other.relation_space()
    }
}

#[derive(Clone, Debug)]
struct Piece<F: Field> {
    normal_words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Product `b * x_t` in normal coordinates, stored at `b * d + t`.
    right_gen: Vec<SparseVec<F::Elem>>,
    /// Echelon basis of the degree-`n` relations in `(b, x)` coordinates.
    relations: Matrix<F>,
}

/// A quadratic algebra computed up to a degree cap.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    presentation: QuadraticPresentation<F>,
    cap: usize,
    pieces: Vec<Piece<F>>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn build(presentation: QuadraticPresentation<F>, cap: usize) -> Result<Self> {
        let f = presentation.field().clone();
        let d = presentation.d();
        let rel_sparse: Vec<SparseVec<F::Elem>> = presentation
            .relations()
            .iter()
            .map(|r| r.to_sparse(d))
            .collect::<Result<_>>()?;

        let mut pieces: Vec<Piece<F>> = Vec::with_capacity(cap + 1);
        pieces.push(Piece {
            normal_words: vec![Word::empty()],
            index: HashMap::from([(Word::empty(), 0)]),
            right_gen: Vec::new(),
            relations: Matrix::zeros(f.clone(), 0, 0),
        });
        for n in 1..=cap {
            let prev = &pieces[n - 1];
            let ncols = prev.normal_words.len() * d;
            if ncols > DEFAULT_WORD_CAP {
                return Err(Error::SizeCap { degree: n, words: ncols as u128, cap: DEFAULT_WORD_CAP });
            }
            let mut ech = Echelon::new(f.clone(), ncols);
            if n >= 2 {
                let before = &pieces[n - 2];
                for b in 0..before.normal_words.len() {
                    for rel in &rel_sparse {
                        let mut row: Vec<(usize, F::Elem)> = Vec::new();
                        for (idx, c) in rel {
                            let (a, last) = (idx / d, idx % d);
                            for (beta, v) in &prev.right_gen[b * d + a] {
                                row.push((beta * d + last, f.mul(c, v)));
                            }
                        }
                        ech.insert(crate::exactlin::normalize(&f, row));
                    }
                }
            }
            let rows = ech.into_rref_rows();
            let mut is_pivot = vec![false; ncols];
            for r in &rows {
                is_pivot[r[0].0] = true;
            }
            let mut pos = vec![usize::MAX; ncols];
            let mut normal_words = Vec::new();
            for col in 0..ncols {
                if !is_pivot[col] {
                    pos[col] = normal_words.len();
                    let mut w = prev.normal_words[col / d].clone();
                    w.0.push(col % d);
                    normal_words.push(w);
                }
            }
            let mut right_gen: Vec<SparseVec<F::Elem>> = (0..ncols)
                .map(|col| if is_pivot[col] { Vec::new() } else { vec![(pos[col], f.one())] })
                .collect();
            for r in &rows {
                right_gen[r[0].0] = r[1..].iter().map(|(j, e)| (pos[*j], f.neg(e))).collect();
            }
            let relations = Matrix::from_sparse_rows(f.clone(), ncols, rows)?;
            let index = normal_words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            pieces.push(Piece { normal_words, index, right_gen, relations });
        }
        Ok(GradedAlgebra { presentation, cap, pieces })
    }

    pub fn presentation(&self) -> &QuadraticPresentation<F> {
        &self.presentation
    }

    pub fn field(&self) -> &F {
        self.presentation.field()
    }

    pub fn d(&self) -> usize {
        self.presentation.d()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::DegreeCapExceeded { requested: n, cap: self.cap });
        }
        Ok(())
    }

    /// `dim_k A_n`.
    pub fn hilbert(&self, n: usize) -> Result<usize> {
        self.check(n)?;
        Ok(self.pieces[n].normal_words.len())
    }

    /// `dim_k A_n`, or zero for degrees that are known to vanish.
    pub(crate) fn dim(&self, n: usize) -> usize {
        self.pieces.get(n).map_or(0, |p| p.normal_words.len())
    }

    /// Hilbert function for degrees `0..=cap`.
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.normal_words.len()).collect()
    }

    pub fn normal_words(&self, n: usize) -> Result<&[Word]> {
        self.check(n)?;
        Ok(&self.pieces[n].normal_words)
    }

    pub fn basis_index(&self, w: &Word) -> Option<usize> {
        self.pieces.get(w.degree())?.index.get(w).copied()
    }

    /// Echelon basis of the degree-`n` relations in the coordinates
    /// `(normal word of degree n-1, letter)`.
    pub fn incremental_relations(&self, n: usize) -> Result<&Matrix<F>> {
        self.check(n)?;
        Ok(&self.pieces[n].relations)
    }

    /// `v * x_t` for `v` given in normal coordinates of degree `n`.
    pub fn right_mul_generator(&self, n: usize, v: &[(usize, F::Elem)], t: usize) -> Result<SparseVec<F::Elem>> {
        self.check(n + 1)?;
        let f = self.field();
        let d = self.d();
        let table = &self.pieces[n + 1].right_gen;
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (b, c) in v {
            acc = crate::exactlin::axpy(f, &acc, c, &table[b * d + t]);
        }
        Ok(acc)
    }

    /// `v * w` for `v` in normal coordinates of degree `n` and a word `w`.
    pub fn mul_word(&self, n: usize, v: &[(usize, F::Elem)], w: &Word) -> Result<SparseVec<F::Elem>> {
        self.check(n + w.degree())?;
        let mut cur: SparseVec<F::Elem> = v.to_vec();
        for (k, &t) in w.letters().iter().enumerate() {
            if cur.is_empty() {
                break;
            }
            cur = self.right_mul_generator(n + k, &cur, t)?;
        }
        Ok(cur)
    }

    /// Product of basis element `u` of `A_m` with basis element `v` of `A_n`, sparse.
    pub fn multiply_sparse(&self, m: usize, u: usize, n: usize, v: usize) -> Result<SparseVec<F::Elem>> {
        self.check(m + n)?;
        let w = &self.pieces[n].normal_words[v];
        self.mul_word(m, &[(u, self.field().one())], w)
    }

    /// Product of basis element `u` of `A_m` with basis element `v` of `A_n`,
    /// as a dense coordinate vector of `A_{m+n}`.
    pub fn multiply(&self, m: usize, u: usize, n: usize, v: usize) -> Result<Vec<F::Elem>> {
        let s = self.multiply_sparse(m, u, n, v)?;
        Ok(self.densify(m + n, &s))
    }

    /// Product of arbitrary elements given as sparse coordinates.
    pub fn multiply_elements(
        &self,
        m: usize,
        u: &[(usize, F::Elem)],
        n: usize,
        v: &[(usize, F::Elem)],
    ) -> Result<SparseVec<F::Elem>> {
        self.check(m + n)?;
        let f = self.field();
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (j, c) in v {
            let w = &self.pieces[n].normal_words[*j];
            let prod = self.mul_word(m, u, w)?;
            acc = crate::exactlin::axpy(f, &acc, c, &prod);
        }
        Ok(acc)
    }

    /// Normal-basis coordinates of a homogeneous polynomial.
    pub fn reduce(&self, p: &NCPoly<F>) -> Result<Vec<F::Elem>> {
        let n = p.degree();
        self.check(n)?;
        let f = self.field();
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (w, c) in p.terms() {
            for &x in w.letters() {
                if x >= self.d() {
                    return Err(Error::LetterOutOfRange { letter: x, generators: self.d() });
                }
            }
            let r = self.mul_word(0, &[(0, f.one())], w)?;
            acc = crate::exactlin::axpy(f, &acc, c, &r);
        }
        Ok(self.densify(n, &acc))
    }

    /// Matrix (`dim A_n x d^n`) sending each word to its normal form.
    pub fn reduction_matrix(&self, n: usize) -> Result<Matrix<F>> {
        self.check(n)?;
        let f = self.field();
        let words = enumerate_words(self.d(), n, DEFAULT_WORD_CAP)?;
        let mut rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); self.dim(n)];
        for (j, w) in words.iter().enumerate() {
            for (i, e) in self.mul_word(0, &[(0, f.one())], w)? {
                rows[i].push((j, e));
            }
        }
        Matrix::from_sparse_rows(f.clone(), words.len(), rows)
    }

    pub(crate) fn densify(&self, n: usize, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
        let mut out = vec![self.field().zero(); self.dim(n)];
        for (i, e) in v {
            out[*i] = e.clone();
        }
        out
    }
}

/// Normal words and reduction matrix of degree `n` computed from the full
/// relation space in `V^{(x)n}` (all `embed_relation` vectors at all positions).
pub fn direct_normal_form<F: Field>(
    presentation: &QuadraticPresentation<F>,
    n: usize,
    cap: usize,
) -> Result<(Vec<Word>, Matrix<F>)> {
    let f = presentation.field();
    let d = presentation.d();
    let words = enumerate_words(d, n, cap)?;
    let mut ech = Echelon::new(f.clone(), words.len());
    if n >= 2 {
        for rel in presentation.relations() {
            for left in 0..=n - 2 {
                for v in embed_relation(rel, left, n, d)? {
                    ech.insert(v);
                }
            }
        }
    }
    let rows = ech.into_rref_rows();
    let mut is_pivot = vec![false; words.len()];
    for r in &rows {
        is_pivot[r[0].0] = true;
    }
    let mut pos = vec![usize::MAX; words.len()];
    let mut normal = Vec::new();
    for (j, w) in words.iter().enumerate() {
        if !is_pivot[j] {
            pos[j] = normal.len();
            normal.push(w.clone());
        }
    }
    let mut red: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); normal.len()];
    for j in 0..words.len() {
        if !is_pivot[j] {
            red[pos[j]].push((j, f.one()));
        }
    }
    for r in &rows {
        let p = r[0].0;
        for (j, e) in &r[1..] {
            red[pos[*j]].push((p, f.neg(e)));
        }
    }
    let m = Matrix::from_sparse_rows(f.clone(), words.len(), red)?;
    Ok((normal, m))
}

/// Rank of the full degree-`n` relation space in `V^{(x)n}`.
pub fn direct_relation_rank<F: Field>(presentation: &QuadraticPresentation<F>, n: usize, cap: usize) -> Result<usize> {
    let (normal, _) = direct_normal_form(presentation, n, cap)?;
    Ok(presentation.d().pow(n as u32) - normal.len())
}

pub type SharedAlgebra<F> = Arc<GradedAlgebra<F>>;

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    pub(crate) fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn mono<F: Field>(f: &F, w: &[usize]) -> NCPoly<F> {
        NCPoly::monomial(f, Word(w.to_vec()))
    }

    pub(crate) fn ex0<F: Field>(f: F) -> QuadraticPresentation<F> {
        let rels = vec![mono(&f, &[0, 0]), mono(&f, &[0, 1]), mono(&f, &[1, 1])];
        QuadraticPresentation::new(f, names(&["x", "y", "z"]), rels, true).unwrap()
    }

    pub(crate) fn squarefree<F: Field>(f: F, d: usize) -> QuadraticPresentation<F> {
        let rels = (0..d).map(|i| mono(&f, &[i, i])).collect();
        let n: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        QuadraticPresentation::new(f, n, rels, true).unwrap()
    }

    pub(crate) fn polynomial<F: Field>(f: F, d: usize) -> QuadraticPresentation<F> {
        let n: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        QuadraticPresentation::new(f, n, Vec::new(), true).unwrap()
    }

    #[test]
    fn presentation_expands_commutators() {
        let p = ex0(Rationals);
        assert_eq!(p.d(), 3);
        assert_eq!(p.relations().len(), 6);
        assert_eq!(p.relation_space().rows(), 6);
    }

    #[test]
    fn presentation_rejects_cubic() {
        let f = Rationals;
        let err = QuadraticPresentation::new(f, names(&["x"]), vec![mono(&f, &[0, 0, 0])], false).unwrap_err();
        assert!(matches!(err, Error::NonQuadraticRelation { degree: 3, .. }));
    }

    #[test]
    fn dependent_relations_are_dropped() {
        let f = Rationals;
        let r = vec![mono(&f, &[0, 1]), mono(&f, &[0, 1]).scale(&f, &f.from_i64(3))];
        let p = QuadraticPresentation::new(f, names(&["x", "y"]), r, false).unwrap();
        assert_eq!(p.relations().len(), 1);
    }

    #[test]
    fn build_examples() {
        let a = GradedAlgebra::build(ex0(Rationals), 4).unwrap();
        assert_eq!(a.dims(), vec![1, 3, 3, 3, 3]);
        // commutators lead with the lex-smaller word, so z-first words stay normal
        let n2: Vec<Word> = a.normal_words(2).unwrap().to_vec();
        assert_eq!(n2, vec![Word(vec![2, 0]), Word(vec![2, 1]), Word(vec![2, 2])]);

        let s = GradedAlgebra::build(squarefree(Rationals, 3), 3).unwrap();
        assert_eq!(s.dims(), vec![1, 3, 3, 1]);

        let free = GradedAlgebra::build(QuadraticPresentation::free(Rationals, names(&["x", "y"])).unwrap(), 3).unwrap();
        assert_eq!(free.dims(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn hilbert_examples() {
        let a = GradedAlgebra::build(ex0(Rationals), 4).unwrap();
        assert_eq!(a.hilbert(2).unwrap(), 3);
        assert_eq!(a.hilbert(5), Err(Error::DegreeCapExceeded { requested: 5, cap: 4 }));

        let p = GradedAlgebra::build(polynomial(Rationals, 3), 2).unwrap();
        assert_eq!(p.hilbert(2).unwrap(), 6);

        let f = Rationals;
        let ext_rel = NCPoly::from_terms(&f, [(Word(vec![0, 1]), f.one()), (Word(vec![1, 0]), f.one())]).unwrap();
        let ext = QuadraticPresentation::new(f, names(&["x", "y"]), vec![mono(&f, &[0, 0]), mono(&f, &[1, 1]), ext_rel], false).unwrap();
        let e = GradedAlgebra::build(ext.clone(), 3).unwrap();
        assert_eq!(e.hilbert(3).unwrap(), 0);
        assert_eq!(direct_relation_rank(&ext, 3, DEFAULT_WORD_CAP).unwrap(), 8);
    }

    #[test]
    fn reduce_examples() {
        let f = Rationals;
        let p = GradedAlgebra::build(polynomial(f, 2), 2).unwrap();
        let yx = p.reduce(&mono(&f, &[1, 0])).unwrap();
        let xy = p.reduce(&mono(&f, &[0, 1])).unwrap();
        assert_eq!(yx, xy);
        assert_eq!(xy.iter().filter(|e| !f.is_zero(e)).count(), 1);

        let a = GradedAlgebra::build(ex0(f), 3).unwrap();
        assert!(a.reduce(&mono(&f, &[0, 1])).unwrap().iter().all(|e| f.is_zero(e)));
        for (i, w) in a.normal_words(2).unwrap().iter().enumerate() {
            let c = a.reduce(&NCPoly::monomial(&f, w.clone())).unwrap();
            let mut unit = vec![f.zero(); 3];
            unit[i] = f.one();
            assert_eq!(c, unit);
        }
    }

    #[test]
    fn multiply_examples() {
        let f = Rationals;
        let a = GradedAlgebra::build(ex0(f), 3).unwrap();
        let xz = a.multiply(1, 0, 1, 2).unwrap();
        assert_eq!(xz, a.reduce(&mono(&f, &[0, 2])).unwrap());
        let idx = a.basis_index(&Word(vec![2, 0])).unwrap();
        let mut unit = vec![f.zero(); 3];
        unit[idx] = f.one();
        assert_eq!(xz, unit);
        assert!(a.multiply(1, 0, 1, 1).unwrap().iter().all(|e| f.is_zero(e)));
        for v in 0..3 {
            let mut unit = vec![f.zero(); 3];
            unit[v] = f.one();
            assert_eq!(a.multiply(0, 0, 2, v).unwrap(), unit);
        }
    }

    fn corpus_small() -> Vec<QuadraticPresentation<Rationals>> {
        let f = Rationals;
        let fib = QuadraticPresentation::new(f, names(&["x", "y", "z"]), vec![mono(&f, &[0, 1]), mono(&f, &[0, 2])], true).unwrap();
        let ext_rel = NCPoly::from_terms(&f, [(Word(vec![0, 1]), f.one()), (Word(vec![1, 0]), f.one())]).unwrap();
        let ext = QuadraticPresentation::new(f, names(&["x", "y"]), vec![mono(&f, &[0, 0]), mono(&f, &[1, 1]), ext_rel], false).unwrap();
        let mixed = NCPoly::from_terms(&f, [(Word(vec![1, 0]), f.from_i64(2)), (Word(vec![0, 2]), f.from_i64(-1)), (Word(vec![2, 2]), f.one())]).unwrap();
        let noncomm = QuadraticPresentation::new(f, names(&["a", "b", "c"]), vec![mixed, mono(&f, &[2, 1])], false).unwrap();
        let all_words = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| mono(&f, &[i, j])).collect();
        let trivial = QuadraticPresentation::new(f, names(&["x", "y"]), all_words, false).unwrap();
        vec![ex0(f), fib, squarefree(f, 3), polynomial(f, 2), ext, noncomm, trivial]
    }

    #[test]
    fn incremental_matches_direct() {
        for p in corpus_small() {
            let a = GradedAlgebra::build(p.clone(), 5).unwrap();
            for n in 0..=5 {
                let (normal, red) = direct_normal_form(&p, n, DEFAULT_WORD_CAP).unwrap();
                assert_eq!(a.normal_words(n).unwrap(), &normal[..], "normal words, degree {n}");
                assert_eq!(a.reduction_matrix(n).unwrap(), red, "reduction, degree {n}");
                assert_eq!(a.hilbert(n).unwrap() + direct_relation_rank(&p, n, DEFAULT_WORD_CAP).unwrap(), p.d().pow(n as u32));
            }
        }
    }

    #[test]
    fn associativity_on_basis_triples() {
        for p in corpus_small() {
            let a = GradedAlgebra::build(p, 6).unwrap();
            let f = *a.field();
            for m in 0..=2 {
                for n in 0..=2 {
                    for k in 0..=2 {
                        for u in 0..a.dim(m) {
                            for v in 0..a.dim(n) {
                                let uv = a.multiply_sparse(m, u, n, v).unwrap();
                                for w in 0..a.dim(k) {
                                    let left = a.multiply_elements(m + n, &uv, k, &[(w, f.one())]).unwrap();
                                    let vw = a.multiply_sparse(n, v, k, w).unwrap();
                                    let right = a.multiply_elements(m, &[(u, f.one())], n + k, &vw).unwrap();
                                    assert_eq!(left, right);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutative_products_commute() {
        let a = GradedAlgebra::build(ex0(Rationals), 4).unwrap();
        for m in 1..=2 {
            for n in 1..=2 {
                for u in 0..a.dim(m) {
                    for v in 0..a.dim(n) {
                        assert_eq!(a.multiply(m, u, n, v).unwrap(), a.multiply(n, v, m, u).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn squarefree_hilbert_is_binomial() {
        for d in 1..=4 {
            let a = GradedAlgebra::build(squarefree(Rationals, d), d + 1).unwrap();
            for j in 0..=d + 1 {
                assert_eq!(a.hilbert(j).unwrap(), binom(d, j));
            }
        }
    }

    #[test]
    fn prime_field_agrees_on_dims() {
        let a = GradedAlgebra::build(ex0(PrimeField::default()), 5).unwrap();
        assert_eq!(a.dims(), vec![1, 3, 3, 3, 3, 3]);
    }

    pub(crate) fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
