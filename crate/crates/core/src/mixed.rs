//! Canonical mixed algebras `S_{n,r}^Λ`, mixed Weyl fields `D^q̄_{m,n,t}`,
//! their invariants and the rational equivalence tests built on them.

use std::fmt;

use num_bigint::BigInt;

use crate::embed::{linear_image, word_term, GeneratorMap, HomCheck};
use crate::error::{Error, Result};
use crate::lattice::{lattice_intersect, IntMatrix};
use crate::presentation::{Presentation, Relation};
use crate::scalar::{subgroup_canonical_form, Scalar, ScalarGroup, SubgroupDescription};
use crate::torus::{check_morphism, uniparameter_iso_decide, MorphismCheck, QuantumTorus, UniparameterIso};

/// `S_{n,r}^Λ` on `y_1..y_n, x_1..x_r`:
/// `x_i y_i = y_i x_i + 1`, `x_i y_j = λ_ij^{-1} y_j x_i`,
/// `x_i x_j = λ_ij x_j x_i`, `y_i y_j = λ_ij y_j y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMixedAlgebra {
    group: ScalarGroup,
    n: usize,
    r: usize,
    lambda: Vec<Vec<Scalar>>,
}

impl CanonicalMixedAlgebra {
    pub fn new(group: ScalarGroup, n: usize, r: usize, lambda: Vec<Vec<Scalar>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if r > n {
            return Err(Error::invalid(format!("r = {r} exceeds n = {n}")));
        }
        if lambda.len() != n {
            return Err(Error::DimensionMismatch(format!("Lambda has {} rows, expected {n}", lambda.len())));
        }
        let t = QuantumTorus::new(group, lambda)?;
        Ok(CanonicalMixedAlgebra { group: t.group().clone(), n, r, lambda: t.lambda().to_vec() })
    }

    /// `λ_ij = q^{s_ij}` for the free symbol `q`.
    pub fn uniparameter(group: &ScalarGroup, q: &str, r: usize, s: &IntMatrix) -> Result<Self> {
        let q = group.symbol(q).ok_or_else(|| Error::invalid(format!("unknown scalar `{q}`")))?;
        let t = QuantumTorus::from_exponents(group.clone(), &q, s)?;
        CanonicalMixedAlgebra::new(group.clone(), s.rows(), r, t.lambda().to_vec())
    }

    /// `S_{2,2}^q`, with `q` the group's symbol of that name.
    pub fn s22(group: &ScalarGroup) -> Result<Self> {
        CanonicalMixedAlgebra::uniparameter(group, "q", 2, &IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]))
    }

    pub fn group(&self) -> &ScalarGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn lambda(&self) -> &[Vec<Scalar>] {
        &self.lambda
    }

    pub fn is_semiclassical(&self) -> bool {
        self.n == self.r
    }

    pub fn generator_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.n).map(|i| format!("y{i}")).collect();
        v.extend((1..=self.r).map(|i| format!("x{i}")));
        v
    }

    pub fn presentation(&self) -> Presentation {
        let (n, r) = (self.n, self.r);
        let mut p = Presentation::new(self.group.clone(), self.generator_names()).expect("fresh names");
        let mut set = |i: usize, j: usize, rel: Relation| p.set(i, j, rel).expect("group checked");
        for i in 0..n {
            for j in i + 1..n {
                set(i, j, Relation::Multiplicative(self.lambda[i][j].clone()));
            }
        }
        for i in 0..r {
            let x = n + i;
            for j in 0..n {
                if i == j {
                    set(j, x, Relation::Additive(-1));
                } else {
                    set(j, x, Relation::Multiplicative(self.lambda[i][j].clone()));
                }
            }
            for k in i + 1..r {
                set(x, n + k, Relation::Multiplicative(self.lambda[i][k].clone()));
            }
        }
        p
    }

    /// `T_{n,r}^Λ` on `w_1..w_r, y_1..y_n` with `w_i = y_i x_i`:
    /// `[w_i, y_k] = δ_ik y_k`, the `w_i` commute, `y` as in `S`.
    pub fn eulerian_presentation(&self) -> Result<Presentation> {
        let (n, r) = (self.n, self.r);
        let mut names: Vec<String> = (1..=r).map(|i| format!("w{i}")).collect();
        names.extend((1..=n).map(|i| format!("y{i}")));
        let mut p = Presentation::new(self.group.clone(), names)?;
        for k in 0..r {
            p.set(k, r + k, Relation::Eulerian { w_is_first: true })?;
        }
        for i in 0..n {
            for j in i + 1..n {
                p.set(r + i, r + j, Relation::Multiplicative(self.lambda[i][j].clone()))?;
            }
        }
        Ok(p)
    }

    /// The quantum torus on `y_1..y_n`.
    pub fn torus(&self) -> QuantumTorus {
        QuantumTorus::new(self.group.clone(), self.lambda.clone()).expect("validated on construction")
    }

    pub fn weight_group(&self) -> Result<SubgroupDescription> {
        subgroup_canonical_form(&self.group, &self.torus().weight_group_generators())
    }

    pub fn invariants(&self) -> Result<MixedInvariants> {
        let torus = self.torus();
        let n = self.n;
        let free_coords: Vec<Vec<BigInt>> = (self.r..n)
            .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
            .collect();
        let center = lattice_intersect(&torus.central_lattice(), &IntMatrix::from_big_rows(n, free_coords))?;
        Ok(MixedInvariants {
            gk_dim: n + self.r,
            gk_trdeg: n + self.r,
            w_supdeg: 2 * self.r,
            e_is_field: self.r >= 1,
            g: self.weight_group()?,
            center_lattice: center,
            torus_simple: torus.is_simple(),
        })
    }
}

impl fmt::Display for CanonicalMixedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.presentation())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedInvariants {
    pub gk_dim: usize,
    pub gk_trdeg: usize,
    pub w_supdeg: usize,
    /// Whether `E` is all of `k` (otherwise it is `0`).
    pub e_is_field: bool,
    pub g: SubgroupDescription,
    /// Exponents `α` (on `y_1..y_n`) of the central monomials of the
    /// fraction field.
    pub center_lattice: IntMatrix,
    pub torus_simple: bool,
}

impl MixedInvariants {
    pub fn center_rank(&self) -> usize {
        self.center_lattice.rows()
    }
}

/// `D^q̄_{m,n,t}`: `m` Weyl pairs `x_i y_i = y_i x_i + 1`, `n` quantum
/// planes `u_k v_k = q_k v_k u_k` and `t` central `z_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedWeylField {
    group: ScalarGroup,
    m: usize,
    q: Vec<Scalar>,
    t: usize,
}

impl MixedWeylField {
    pub fn new(group: ScalarGroup, m: usize, q: Vec<Scalar>, t: usize) -> Result<Self> {
        for s in &q {
            if !group.contains(s) {
                return Err(Error::GroupMismatch);
            }
            if s.is_one() {
                return Err(Error::invalid("quantum plane parameters must differ from 1"));
            }
        }
        Ok(MixedWeylField { group, m, q, t })
    }

    pub fn group(&self) -> &ScalarGroup {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn q(&self) -> &[Scalar] {
        &self.q
    }

    pub fn presentation(&self) -> Presentation {
        let (m, n) = (self.m, self.n());
        let mut names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
        names.extend((1..=m).map(|i| format!("y{i}")));
        names.extend((1..=n).map(|i| format!("u{i}")));
        names.extend((1..=n).map(|i| format!("v{i}")));
        names.extend((1..=self.t).map(|i| format!("z{i}")));
        let mut p = Presentation::new(self.group.clone(), names).expect("fresh names");
        for i in 0..m {
            p.set(i, m + i, Relation::Additive(1)).expect("valid");
        }
        for (k, q) in self.q.iter().enumerate() {
            p.set(2 * m + k, 2 * m + n + k, Relation::Multiplicative(q.clone())).expect("group checked");
        }
        p
    }

    /// Torus on `u, v, z`; the Weyl pairs contribute nothing to the center.
    fn torus(&self) -> QuantumTorus {
        let n = self.n();
        let d = 2 * n + self.t;
        let mut lambda = vec![vec![self.group.one(); d]; d];
        for (k, q) in self.q.iter().enumerate() {
            lambda[k][n + k] = q.clone();
            lambda[n + k][k] = q.inv();
        }
        QuantumTorus::new(self.group.clone(), lambda).expect("antisymmetric by construction")
    }

    pub fn weight_group(&self) -> Result<SubgroupDescription> {
        subgroup_canonical_form(&self.group, &self.q)
    }

    pub fn invariants(&self) -> WeylFieldInvariants {
        WeylFieldInvariants {
            gk_trdeg: 2 * self.m + 2 * self.n() + self.t,
            w_infdeg: 2 * self.m,
            w_supdeg: 2 * self.m,
            center_rank: self.torus().center_rank(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylFieldInvariants {
    pub gk_trdeg: usize,
    pub w_infdeg: usize,
    pub w_supdeg: usize,
    /// Transcendence degree of the center over `k`.
    pub center_rank: usize,
}

/// First invariant that separates two fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    Gk,
    WSupDeg,
    E,
    G,
    Torus,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::Gk => "NEQ_GK",
            Reason::WSupDeg => "NEQ_WSUPDEG",
            Reason::E => "NEQ_E",
            Reason::G => "NEQ_G",
            Reason::Torus => "NEQ_TORUS",
        }
    }
}

/// Generator maps between Eulerian presentations, both checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    /// Torus isomorphism: `y_i ↦ y'^{H_{·,i}}`.
    pub h: IntMatrix,
    pub forward: GeneratorMap,
    pub backward: GeneratorMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(Box<EquivalenceWitness>),
    NotEquivalent(Reason),
    Inconclusive,
}

impl Equivalence {
    pub fn code(&self) -> &'static str {
        match self {
            Equivalence::Equivalent(_) => "EQ_SEMICLASSICAL",
            Equivalence::NotEquivalent(r) => r.code(),
            Equivalence::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Map `T^Λ_{n,n} → T^{Λ'}_{n,n}` induced by a torus isomorphism `H`:
/// `y_i ↦ α_i y'^{H_{·,i}}`, `w_j ↦ Σ_k (H^{-1})_{jk} w'_k`.
pub fn semiclassical_map(a: &CanonicalMixedAlgebra, b: &CanonicalMixedAlgebra, h: &IntMatrix) -> Result<GeneratorMap> {
    if !a.is_semiclassical() || !b.is_semiclassical() || a.n != b.n {
        return Err(Error::invalid("both algebras must be semiclassical of the same size"));
    }
    let n = a.n;
    let MorphismCheck::Valid(morph) = check_morphism(&a.torus(), &b.torus(), h)? else {
        return Err(Error::Verification("matrix is not a torus morphism".into()));
    };
    let h_inv = h.inverse_unimodular().ok_or_else(|| Error::NotInvertible("H".into()))?;
    let mut images = Vec::new();
    for j in 0..n {
        let coeffs: Vec<(usize, BigInt)> = (0..n).map(|k| (k, h_inv.get(j, k).clone())).collect();
        images.push(linear_image(&a.group, &coeffs));
    }
    for i in 0..n {
        let (alpha, exps) = morph.image(i);
        let word = exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(k, &e)| (n + k, e)).collect();
        images.push(vec![word_term(alpha, word)]);
    }
    GeneratorMap::new(a.eulerian_presentation()?, b.eulerian_presentation()?, images)
}

fn witness(a: &CanonicalMixedAlgebra, b: &CanonicalMixedAlgebra, h: IntMatrix) -> Result<Equivalence> {
    let h_inv = h.inverse_unimodular().ok_or_else(|| Error::NotInvertible("H".into()))?;
    let forward = semiclassical_map(a, b, &h)?;
    let backward = semiclassical_map(b, a, &h_inv)?;
    for (dir, map) in [("forward", &forward), ("backward", &backward)] {
        if let HomCheck::Failing { relation, residue } = map.verify()? {
            return Err(Error::Verification(format!("{dir} map fails on {relation}: {residue}")));
        }
    }
    Ok(Equivalence::Equivalent(Box::new(EquivalenceWitness { h, forward, backward })))
}

/// Necessary conditions in order (w-supdeg, GK dimension, `G`, torus),
/// then a verified witness in the semiclassical case when the tori are
/// isomorphic.
pub fn equivalence_decide(a: &CanonicalMixedAlgebra, b: &CanonicalMixedAlgebra) -> Result<Equivalence> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    if a.r != b.r {
        return Ok(Equivalence::NotEquivalent(Reason::WSupDeg));
    }
    if a.n != b.n {
        return Ok(Equivalence::NotEquivalent(Reason::Gk));
    }
    if a.weight_group()? != b.weight_group()? {
        return Ok(Equivalence::NotEquivalent(Reason::G));
    }
    let semiclassical = a.is_semiclassical();
    if a.lambda == b.lambda {
        return if semiclassical { witness(a, b, IntMatrix::identity(a.n)) } else { Ok(Equivalence::Inconclusive) };
    }
    let (ta, tb) = (a.torus(), b.torus());
    for q in a.group.free_symbols() {
        match uniparameter_iso_decide(&ta, &tb, q)? {
            UniparameterIso::NotApplicable => continue,
            UniparameterIso::Iso(h) if semiclassical => return witness(a, b, h),
            UniparameterIso::Iso(_) => return Ok(Equivalence::Inconclusive),
            UniparameterIso::NotIso if ta.is_simple() && tb.is_simple() => {
                return Ok(Equivalence::NotEquivalent(Reason::Torus));
            }
            UniparameterIso::NotIso => return Ok(Equivalence::Inconclusive),
        }
    }
    Ok(Equivalence::Inconclusive)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossEquivalence {
    NotEquivalent(Reason),
    /// `only_weyl_field`: `A` is semiclassical, so the only candidate left
    /// is `D_{n,0,0}` with trivial `G`.
    Inconclusive { only_weyl_field: bool },
}

impl CrossEquivalence {
    pub fn code(&self) -> &'static str {
        match self {
            CrossEquivalence::NotEquivalent(r) => r.code(),
            CrossEquivalence::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

pub fn cross_equivalence_necessary(a: &CanonicalMixedAlgebra, d: &MixedWeylField) -> Result<CrossEquivalence> {
    if a.group != d.group {
        return Err(Error::GroupMismatch);
    }
    let inv = d.invariants();
    if a.n + a.r != inv.gk_trdeg {
        return Ok(CrossEquivalence::NotEquivalent(Reason::Gk));
    }
    if 2 * a.r != inv.w_supdeg {
        return Ok(CrossEquivalence::NotEquivalent(Reason::WSupDeg));
    }
    if (a.r >= 1) != (d.m >= 1) {
        return Ok(CrossEquivalence::NotEquivalent(Reason::E));
    }
    if a.weight_group()? != d.weight_group()? {
        return Ok(CrossEquivalence::NotEquivalent(Reason::G));
    }
    Ok(CrossEquivalence::Inconclusive { only_weyl_field: a.is_semiclassical() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ScalarGroup {
        ScalarGroup::generic_q()
    }

    fn plane(r: usize, k: i64) -> CanonicalMixedAlgebra {
        CanonicalMixedAlgebra::uniparameter(&g(), "q", r, &IntMatrix::from_rows(&[vec![0, k], vec![-k, 0]])).unwrap()
    }

    #[test]
    fn s22_presentation_text() {
        let s = plane(2, 1);
        let text = s.presentation().to_string();
        assert!(text.contains("y1 x1 = x1 y1 - 1"), "{text}");
        assert!(text.contains("y1 y2 = q * y2 y1"), "{text}");
        assert!(s.presentation().check_admissible().unwrap().is_admissible());
    }

    #[test]
    fn s22_invariants() {
        let inv = plane(2, 1).invariants().unwrap();
        assert_eq!((inv.gk_dim, inv.w_supdeg, inv.center_rank()), (4, 4, 0));
        assert!(inv.e_is_field && inv.torus_simple);
        assert_eq!(inv.g.free_rank(), 1);
    }

    #[test]
    fn weyl_center() {
        let one = vec![vec![g().one(); 3]; 3];
        let s = CanonicalMixedAlgebra::new(g(), 3, 1, one).unwrap();
        let inv = s.invariants().unwrap();
        assert_eq!(inv.center_lattice, IntMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1]]));
        assert!(!inv.e_is_field || s.r() >= 1);
        assert!(inv.g.is_trivial());
    }

    #[test]
    fn eulerian_form() {
        let s = plane(1, 1);
        let text = s.eulerian_presentation().unwrap().to_string();
        assert!(text.contains("[w1, y1] = y1"), "{text}");
        assert!(text.contains("y1 y2 = q * y2 y1"), "{text}");
    }

    #[test]
    fn decisions() {
        assert_eq!(equivalence_decide(&plane(2, 1), &plane(2, 1)).unwrap().code(), "EQ_SEMICLASSICAL");
        assert_eq!(equivalence_decide(&plane(2, 1), &plane(2, 2)).unwrap(), Equivalence::NotEquivalent(Reason::G));
        assert_eq!(equivalence_decide(&plane(1, 1), &plane(2, 1)).unwrap(), Equivalence::NotEquivalent(Reason::WSupDeg));
        let one = |n: usize| vec![vec![g().one(); n]; n];
        let a = CanonicalMixedAlgebra::new(g(), 2, 1, one(2)).unwrap();
        let b = CanonicalMixedAlgebra::new(g(), 3, 1, one(3)).unwrap();
        assert_eq!(equivalence_decide(&a, &b).unwrap(), Equivalence::NotEquivalent(Reason::Gk));
        assert_eq!(equivalence_decide(&plane(2, 1), &plane(2, -1)).unwrap().code(), "EQ_SEMICLASSICAL");
    }

    #[test]
    fn weyl_fields() {
        let q = g().symbol("q").unwrap();
        let f = MixedWeylField::new(g(), 1, vec![q.clone(), q.clone()], 0).unwrap();
        let f2 = MixedWeylField::new(g(), 2, vec![q.clone()], 0).unwrap();
        assert_eq!(f.invariants().gk_trdeg, f2.invariants().gk_trdeg);
        assert_eq!((f.invariants().w_infdeg, f2.invariants().w_infdeg), (2, 4));
        let g2 = ScalarGroup::new(2, Some("z"), &[]).unwrap();
        let minus = MixedWeylField::new(g2.clone(), 0, vec![g2.minus_one().unwrap()], 0).unwrap();
        assert_eq!(minus.invariants().center_rank, 2);
        assert!(MixedWeylField::new(g(), 0, vec![g().one()], 0).is_err());
    }

    #[test]
    fn cross() {
        let q = g().symbol("q").unwrap();
        let d2 = MixedWeylField::new(g(), 2, vec![], 0).unwrap();
        assert_eq!(cross_equivalence_necessary(&plane(2, 1), &d2).unwrap(), CrossEquivalence::NotEquivalent(Reason::G));
        let qp = MixedWeylField::new(g(), 0, vec![q], 0).unwrap();
        assert_eq!(
            cross_equivalence_necessary(&plane(0, 1), &qp).unwrap(),
            CrossEquivalence::Inconclusive { only_weyl_field: false }
        );
    }
}
