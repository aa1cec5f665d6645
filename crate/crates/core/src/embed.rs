//! Generator maps between presentations, checked as algebra homomorphisms
//! by normal forms, and the explicit embeddings of quantum tori and mixed
//! algebras into mixed Weyl fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::mixed::{CanonicalMixedAlgebra, MixedWeylField};
use crate::presentation::{Presentation, Relation};
use crate::rewrite::{NCElement, ReductionSystem};
use crate::scalar::{Scalar, ScalarGroup};
use crate::syntax::{format_expr, print_map, resolve_expr, MapEntry, Term};

/// Images of the source generators as sums of words in the target
/// generators and their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    pub source: Presentation,
    pub target: Presentation,
    pub images: Vec<Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomCheck {
    Verified,
    /// A source relation whose image does not reduce to zero.
    Failing { relation: String, residue: String },
}

impl HomCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, HomCheck::Verified)
    }
}

/// `X_i X_j - (rhs)` for the relation read `i → j`.
fn relation_defect(sys: &ReductionSystem, rel: &Relation, xi: &NCElement, xj: &NCElement) -> Result<NCElement> {
    let ij = sys.mul(xi, xj)?;
    let ji = sys.mul(xj, xi)?;
    let ring = sys.ring();
    Ok(match rel {
        Relation::Additive(p) => sys.sub(&sys.sub(&ij, &ji), &sys.constant(ring.from_int(*p))),
        Relation::Multiplicative(l) => sys.sub(&ij, &sys.scale(&ji, &ring.from_scalar(l))),
        Relation::Eulerian { w_is_first: true } => sys.sub(&sys.sub(&ij, &ji), xj),
        Relation::Eulerian { w_is_first: false } => sys.add(&sys.sub(&ij, &ji), xi),
    })
}

fn relation_text(source: &Presentation, i: usize, j: usize, rel: &Relation) -> String {
    let g = source.generators();
    let (a, b) = (&g[i], &g[j]);
    match rel {
        Relation::Additive(0) => format!("{a} {b} = {b} {a}"),
        Relation::Additive(p) => format!("{a} {b} = {b} {a} + {p}"),
        Relation::Multiplicative(l) => format!("{a} {b} = {} * {b} {a}", source.group().format(l)),
        Relation::Eulerian { w_is_first: true } => format!("[{a}, {b}] = {b}"),
        Relation::Eulerian { w_is_first: false } => format!("[{b}, {a}] = {a}"),
    }
}

/// Checks every pair of source generators, commuting pairs included,
/// against the given images in `target`.
pub fn verify_images(source: &Presentation, target: &ReductionSystem, images: &[NCElement]) -> Result<HomCheck> {
    if images.len() != source.len() {
        return Err(Error::DimensionMismatch(format!("{} images for {} generators", images.len(), source.len())));
    }
    if source.group() != target.ring().group() {
        return Err(Error::GroupMismatch);
    }
    for i in 0..source.len() {
        for j in i + 1..source.len() {
            let rel = source.relation(i, j);
            let d = relation_defect(target, &rel, &images[i], &images[j])?;
            if !target.is_zero(&d)? {
                return Ok(HomCheck::Failing { relation: relation_text(source, i, j, &rel), residue: target.format(&d) });
            }
        }
    }
    Ok(HomCheck::Verified)
}

impl GeneratorMap {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Vec<Term>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::DimensionMismatch(format!("{} images for {} generators", images.len(), source.len())));
        }
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        if images.iter().flatten().flat_map(|t| &t.word).any(|&(g, _)| g >= target.len()) {
            return Err(Error::invalid("image mentions an unknown target generator"));
        }
        Ok(GeneratorMap { source, target, images })
    }

    /// Map from parsed `map` entries, resolved against the target; every
    /// source generator needs exactly one entry.
    pub fn from_entries(source: Presentation, target: Presentation, entries: &[MapEntry]) -> Result<Self> {
        let mut images: Vec<Option<Vec<Term>>> = vec![None; source.len()];
        for e in entries {
            let i = source.index_of(&e.source).ok_or_else(|| Error::UndeclaredSymbol(e.source.clone()))?;
            if images[i].is_some() {
                return Err(Error::invalid(format!("generator `{}` mapped twice", e.source)));
            }
            images[i] = Some(resolve_expr(&e.image, target.group(), target.generators())?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, im)| im.ok_or_else(|| Error::invalid(format!("no image for `{}`", source.generators()[i]))))
            .collect::<Result<Vec<_>>>()?;
        GeneratorMap::new(source, target, images)
    }

    /// Certified rewriting system of the target with every generator that
    /// appears inverted in an image marked invertible.
    pub fn target_system(&self) -> Result<ReductionSystem> {
        let mut sys = ReductionSystem::from_presentation(&self.target)?.certify()?;
        let mut inverted: Vec<usize> =
            self.images.iter().flatten().flat_map(|t| &t.word).filter(|&&(_, e)| e < 0).map(|&(g, _)| g).collect();
        inverted.sort_unstable();
        inverted.dedup();
        for g in inverted {
            sys.mark_invertible(g)?;
        }
        Ok(sys)
    }

    pub fn verify(&self) -> Result<HomCheck> {
        let sys = self.target_system()?;
        let images = self.images.iter().map(|t| sys.from_terms(t)).collect::<Result<Vec<_>>>()?;
        verify_images(&self.source, &sys, &images)
    }

    /// Image of source generator `i` in the input syntax.
    pub fn format_image(&self, i: usize) -> String {
        format_expr(&self.images[i], self.target.group(), self.target.generators())
    }

    /// `map { g -> image ... }`
    pub fn format_map_block(&self) -> String {
        let entries: Vec<(String, Vec<Term>)> = self.source.generators().iter().cloned().zip(self.images.iter().cloned()).collect();
        print_map(&entries, self.target.group(), self.target.generators())
    }
}

/// Checks a map; see [`GeneratorMap::verify`].
pub fn verify_homomorphism(map: &GeneratorMap) -> Result<HomCheck> {
    map.verify()
}

/// `self ∘ inner`: the images of `inner` with every target generator
/// replaced by its image under `outer`. Inverted letters must have
/// monomial images.
pub fn compose(outer: &GeneratorMap, inner: &GeneratorMap) -> Result<GeneratorMap> {
    if inner.target.generators() != outer.source.generators() {
        return Err(Error::invalid("maps do not compose"));
    }
    let sys = outer.target_system()?;
    let ring = sys.ring().clone();
    let outer_images = outer.images.iter().map(|t| sys.from_terms(t)).collect::<Result<Vec<_>>>()?;
    let mut images = Vec::new();
    for terms in &inner.images {
        let mut acc = NCElement::zero();
        for t in terms {
            let c = ring.scale(&ring.from_scalar(&t.scalar), &t.rational);
            let mut cur = sys.constant(c);
            for &(g, e) in &t.word {
                let base = &outer_images[g];
                let factor = if e > 0 { base.clone() } else { monomial_inverse(&sys, base)? };
                cur = sys.mul(&cur, &sys.pow(&factor, e.unsigned_abs() as u32)?)?;
            }
            acc = sys.add(&acc, &cur);
        }
        images.push(sys.to_terms(&acc));
    }
    GeneratorMap::new(inner.source.clone(), outer.target.clone(), images)
}

/// Inverse of `c · g_1^{e_1} ... g_k^{e_k}` with invertible letters.
fn monomial_inverse(sys: &ReductionSystem, e: &NCElement) -> Result<NCElement> {
    let terms: Vec<_> = e.terms().collect();
    let [(m, c)] = terms.as_slice() else {
        return Err(Error::NotInvertible(sys.format(e)));
    };
    let c_inv = sys.ring().monomial_inverse(c).ok_or_else(|| Error::NotInvertible(sys.format(e)))?;
    let mut out = sys.constant(c_inv);
    for (g, &k) in m.iter().enumerate() {
        if k != 0 {
            let letter = if k > 0 { sys.inverse_generator(g)? } else { sys.generator(g) };
            out = sys.mul(&sys.pow(&letter, k.unsigned_abs() as u32)?, &out)?;
        }
    }
    Ok(out)
}

/// One term `s · word` with rational coefficient 1.
pub(crate) fn word_term(scalar: Scalar, word: Vec<(usize, i64)>) -> Term {
    Term { rational: BigRational::one(), scalar, word }
}

pub(crate) fn monomial_image(group: &ScalarGroup, word: Vec<(usize, i64)>) -> Vec<Term> {
    vec![word_term(group.one(), word)]
}

pub(crate) fn linear_image(group: &ScalarGroup, coeffs: &[(usize, BigInt)]) -> Vec<Term> {
    coeffs
        .iter()
        .filter(|(_, c)| *c != BigInt::from(0))
        .map(|(g, c)| Term { rational: BigRational::from_integer(c.clone()), scalar: group.one(), word: vec![(*g, 1)] })
        .collect()
}

/// Quantum torus embedding: `y_i ↦ v^1_i ... v^{i-1}_i u^i_{i+1} ... u^i_n`
/// into generators `u^i_j, v^i_j` (`i < j`) with
/// `u^i_j v^i_j = λ_ij v^i_j u^i_j` and all other pairs commuting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusEmbedding {
    pub map: GeneratorMap,
    /// Number of pairs with `λ_ij ≠ 1`.
    pub r: usize,
    /// Number of commuting target generators.
    pub t: usize,
}

fn pair_names(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Index of `u^i_j` (`v^i_j` is the next one).
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    2 * pair_names(n).iter().position(|&p| p == (i, j)).expect("i < j < n")
}

fn torus_factor_words(n: usize, i: usize, offset: usize) -> Vec<(usize, i64)> {
    let mut word = Vec::new();
    for a in 0..i {
        word.push((offset + pair_index(n, a, i) + 1, 1));
    }
    for b in i + 1..n {
        word.push((offset + pair_index(n, i, b), 1));
    }
    word
}

fn torus_pair_presentation(group: &ScalarGroup, lambda: &[Vec<Scalar>], prefix: Vec<String>) -> Result<Presentation> {
    let n = lambda.len();
    let offset = prefix.len();
    let mut names = prefix;
    for (i, j) in pair_names(n) {
        names.push(format!("u{}_{}", i + 1, j + 1));
        names.push(format!("v{}_{}", i + 1, j + 1));
    }
    let mut p = Presentation::new(group.clone(), names)?;
    for (i, j) in pair_names(n) {
        let k = offset + pair_index(n, i, j);
        p.set(k, k + 1, Relation::Multiplicative(lambda[i][j].clone()))?;
    }
    Ok(p)
}

pub fn embed_torus(group: &ScalarGroup, lambda: &[Vec<Scalar>]) -> Result<TorusEmbedding> {
    let torus = crate::torus::QuantumTorus::new(group.clone(), lambda.to_vec())?;
    let n = torus.dim();
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let source = torus.to_presentation(names)?;
    let target = torus_pair_presentation(group, lambda, Vec::new())?;
    let images = (0..n).map(|i| monomial_image(group, torus_factor_words(n, i, 0))).collect();
    let r = pair_names(n).iter().filter(|&&(i, j)| !lambda[i][j].is_one()).count();
    let t = 2 * (pair_names(n).len() - r);
    Ok(TorusEmbedding { map: GeneratorMap::new(source, target, images)?, r, t })
}

/// Embedding of the Eulerian form of `S_{n,r}^Λ` into a tensor product of
/// `r` enveloping algebras `[W_k, Y_k] = Y_k` with quantum planes and
/// commuting variables; its fraction field is `D^q̄_{r,s,t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedEmbedding {
    pub map: GeneratorMap,
    pub field: MixedWeylField,
}

impl MixedEmbedding {
    /// `2s + t`, the number of non-Weyl target generators.
    pub fn non_weyl_size(&self) -> usize {
        2 * self.field.n() + self.field.t()
    }
}

pub fn embed_mixed(s: &CanonicalMixedAlgebra) -> Result<MixedEmbedding> {
    let group = s.group().clone();
    let (n, r) = (s.n(), s.r());
    let source = s.eulerian_presentation()?;
    if n == 1 {
        // already a mixed Weyl field presentation
        let images = (0..source.len()).map(|g| monomial_image(&group, vec![(g, 1)])).collect();
        let field = MixedWeylField::new(group.clone(), r, Vec::new(), 1 - r)?;
        return Ok(MixedEmbedding { map: GeneratorMap::new(source.clone(), source, images)?, field });
    }
    // Each w_k acts on one factor of the torus image of y_k: u^k_{k+1},
    // or v^{n-1}_n for k = n. That factor f is split as Y f'.
    let tagged: Vec<usize> = (0..r).map(|k| if k + 1 < n { pair_index(n, k, k + 1) } else { pair_index(n, n - 2, n - 1) + 1 }).collect();
    let mut prefix = Vec::new();
    for k in 1..=r {
        prefix.push(format!("W{k}"));
        prefix.push(format!("Y{k}"));
    }
    let offset = prefix.len();
    let mut target = torus_pair_presentation(&group, s.lambda(), prefix)?;
    for k in 0..r {
        target.set(2 * k, 2 * k + 1, Relation::Eulerian { w_is_first: true })?;
    }
    let mut images = Vec::new();
    for k in 0..r {
        images.push(monomial_image(&group, vec![(2 * k, 1)]));
    }
    for i in 0..n {
        let mut word = Vec::new();
        for (g, e) in torus_factor_words(n, i, offset) {
            if let Some(k) = tagged.iter().position(|&f| offset + f == g) {
                word.push((2 * k + 1, 1));
            }
            word.push((g, e));
        }
        images.push(monomial_image(&group, word));
    }
    let q: Vec<Scalar> =
        pair_names(n).iter().filter(|&&(i, j)| !s.lambda()[i][j].is_one()).map(|&(i, j)| s.lambda()[i][j].clone()).collect();
    let t = n * (n - 1) - 2 * q.len();
    let field = MixedWeylField::new(group, r, q, t)?;
    Ok(MixedEmbedding { map: GeneratorMap::new(source, target, images)?, field })
}

/// Images `X_k = p_k^{-1} x_k`, `Y_k = y_k p_k` of the Weyl algebra
/// `A_r(k)` in `S ⊗ O_{Λᵀ}`, the second factor on new generators
/// `p_1..p_r` with the transposed weights.
pub fn weyl_lower_bound_witness(s: &CanonicalMixedAlgebra) -> Result<GeneratorMap> {
    let group = s.group().clone();
    let (n, r) = (s.n(), s.r());
    if r == 0 {
        return Err(Error::invalid("no Weyl pairs"));
    }
    let base = s.presentation();
    let mut names = base.generators().to_vec();
    names.extend((1..=r).map(|k| format!("p{k}")));
    let mut target = Presentation::new(group.clone(), names)?;
    for (i, j, rel) in base.listed() {
        target.set(i, j, rel.clone())?;
    }
    let p0 = n + r;
    for i in 0..r {
        for j in i + 1..r {
            target.set(p0 + i, p0 + j, Relation::Multiplicative(s.lambda()[j][i].clone()))?;
        }
    }
    let weyl = CanonicalMixedAlgebra::new(group.clone(), r, r, vec![vec![group.one(); r]; r])?;
    let source = weyl.presentation();
    let mut images = Vec::new();
    for k in 0..r {
        images.push(monomial_image(&group, vec![(k, 1), (p0 + k, 1)]));
    }
    for k in 0..r {
        images.push(monomial_image(&group, vec![(p0 + k, -1), (n + k, 1)]));
    }
    GeneratorMap::new(source, target, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ScalarGroup {
        ScalarGroup::generic_q()
    }

    #[test]
    fn identity_map_verifies() {
        let s = CanonicalMixedAlgebra::s22(&g()).unwrap();
        let p = s.presentation();
        let images = (0..p.len()).map(|i| monomial_image(&g(), vec![(i, 1)])).collect();
        assert!(GeneratorMap::new(p.clone(), p, images).unwrap().verify().unwrap().is_verified());
    }

    #[test]
    fn three_dimensional_torus() {
        let q = g().symbol("q").unwrap();
        let lam = vec![vec![g().one(), q.clone(), q.inv()], vec![q.inv(), g().one(), q.clone()], vec![q.clone(), q.inv(), g().one()]];
        let e = embed_torus(&g(), &lam).unwrap();
        assert_eq!(e.map.format_image(0), "u1_2 u1_3");
        assert_eq!(e.map.format_image(1), "v1_2 u2_3");
        assert_eq!(e.map.format_image(2), "v1_3 v2_3");
        assert_eq!((e.r, e.t), (3, 0));
        assert!(e.map.verify().unwrap().is_verified());
    }

    #[test]
    fn corrupted_map_fails() {
        let s = CanonicalMixedAlgebra::uniparameter(&g(), "q", 1, &crate::lattice::IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]))
            .unwrap();
        let mut e = embed_mixed(&s).unwrap();
        assert!(e.map.verify().unwrap().is_verified());
        assert_eq!(e.field.m(), 1);
        assert_eq!(e.field.n(), 1);
        // y2 ↦ u instead of v
        let u = e.map.target.index_of("u1_2").unwrap();
        e.map.images[2] = monomial_image(&g(), vec![(u, 1)]);
        assert!(matches!(e.map.verify().unwrap(), HomCheck::Failing { .. }));
    }

    #[test]
    fn lower_bound_for_s22() {
        let s = CanonicalMixedAlgebra::s22(&g()).unwrap();
        let w = weyl_lower_bound_witness(&s).unwrap();
        assert!(w.verify().unwrap().is_verified());
    }
}
