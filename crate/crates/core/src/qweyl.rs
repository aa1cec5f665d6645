//! Multiparameter quantum Weyl algebras `A_n^{q̄,Λ}` and their
//! localization onto a canonical mixed algebra.

use crate::coeff::CoeffRing;
use crate::embed::{verify_images, HomCheck};
use crate::error::{Error, Result};
use crate::mixed::{equivalence_decide, CanonicalMixedAlgebra, Equivalence, Reason};
use crate::rewrite::{NCElement, ReductionSystem, Rule};
use crate::scalar::{Scalar, ScalarGroup};
use crate::torus::QuantumTorus;

/// Generators `y_1, x_1, ..., y_n, x_n` with, for `i < j`:
/// `y_i y_j = λ_ij y_j y_i`, `x_i x_j = q_i λ_ij x_j x_i`,
/// `x_i y_j = λ_ij^{-1} y_j x_i`, `x_j y_i = q_i λ_ij y_i x_j` and
/// `x_j y_j = 1 + Σ_{k<j} (q_k - 1) y_k x_k + q_j y_j x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumWeylAlgebra {
    group: ScalarGroup,
    q: Vec<Scalar>,
    lambda: Vec<Vec<Scalar>>,
    system: ReductionSystem,
}

fn y(i: usize) -> usize {
    2 * i
}

fn x(i: usize) -> usize {
    2 * i + 1
}

impl QuantumWeylAlgebra {
    pub fn new(group: ScalarGroup, q: Vec<Scalar>, lambda: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = q.len();
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if lambda.len() != n {
            return Err(Error::DimensionMismatch(format!("Lambda must be {n}x{n}")));
        }
        if q.iter().any(|s| !group.contains(s)) {
            return Err(Error::GroupMismatch);
        }
        let lambda = QuantumTorus::new(group.clone(), lambda)?.lambda().to_vec();
        let ring = CoeffRing::new(&group);
        let c = |s: &Scalar| ring.from_scalar(s);
        let mut rules = Vec::new();
        for j in 0..n {
            for i in 0..j {
                let l = &lambda[i][j];
                let ql = &q[i] * l;
                rules.push(Rule { lead: (y(j), y(i)), rhs: vec![(c(&l.inv()), vec![y(i), y(j)])] });
                rules.push(Rule { lead: (x(j), x(i)), rhs: vec![(c(&ql.inv()), vec![x(i), x(j)])] });
                rules.push(Rule { lead: (y(j), x(i)), rhs: vec![(c(l), vec![x(i), y(j)])] });
                rules.push(Rule { lead: (x(j), y(i)), rhs: vec![(c(&ql), vec![y(i), x(j)])] });
            }
            let mut rhs = vec![(ring.one(), vec![])];
            for (k, qk) in q.iter().enumerate().take(j) {
                rhs.push((ring.sub(&c(qk), &ring.one()), vec![y(k), x(k)]));
            }
            rhs.push((c(&q[j]), vec![y(j), x(j)]));
            rules.push(Rule { lead: (x(j), y(j)), rhs });
        }
        let names = (1..=n).flat_map(|i| [format!("y{i}"), format!("x{i}")]).collect();
        let system = ReductionSystem::build(ring, names, rules)?.certify()?;
        Ok(QuantumWeylAlgebra { group, q, lambda, system })
    }

    pub fn group(&self) -> &ScalarGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[Scalar] {
        &self.q
    }

    pub fn lambda(&self) -> &[Vec<Scalar>] {
        &self.lambda
    }

    /// The certified rewriting system of the defining relations.
    pub fn system(&self) -> &ReductionSystem {
        &self.system
    }

    /// Number of `q_i` equal to 1.
    pub fn weyl_count(&self) -> usize {
        self.q.iter().filter(|s| s.is_one()).count()
    }

    /// `z_i = x_i y_i - y_i x_i`.
    pub fn z(&self, i: usize) -> Result<NCElement> {
        let s = &self.system;
        Ok(s.sub(&s.mul(&s.generator(x(i)), &s.generator(y(i)))?, &s.mul(&s.generator(y(i)), &s.generator(x(i)))?))
    }

    /// `Λ'` on `y_{j_1..j_r}, y_{i_1..i_{n-r}}, z'_{i_1..i_{n-r}}`, where
    /// the `j` have `q = 1` and the `i` do not: `Λ` on the `y`, `z'`
    /// commuting among themselves, and `z'_i y_t = q_i^{δ_it} y_t z'_i`.
    pub fn localized_lambda(&self) -> Vec<Vec<Scalar>> {
        let order = self.y_order();
        let others: Vec<usize> = (0..self.n()).filter(|&i| !self.q[i].is_one()).collect();
        let n = self.n();
        let size = n + others.len();
        let one = self.group.one();
        let mut out = vec![vec![one.clone(); size]; size];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                out[a][b] = self.lambda[i][j].clone();
            }
        }
        for (k, &i) in others.iter().enumerate() {
            let a = n + k;
            let b = order.iter().position(|&t| t == i).expect("every index is listed");
            out[a][b] = self.q[i].clone();
            out[b][a] = self.q[i].inv();
        }
        out
    }

    /// `j_1 < .. < j_r` (`q = 1`) then `i_1 < .. < i_{n-r}`.
    fn y_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut v: Vec<usize> = (0..n).filter(|&i| self.q[i].is_one()).collect();
        v.extend((0..n).filter(|&i| !self.q[i].is_one()));
        v
    }

    /// Inverts every `z_i` and checks that
    /// `y_{j..}, y_{i..}, z'_{i..}, x'_{j..}` satisfy the relations of
    /// `S_{2n-r,r}^{Λ'}`, with `x'_j = z_{j-1}^{-1} x_j`,
    /// `z'_i = z_{i-1}^{-1} z_i` and `z_0 = 1`.
    pub fn localize_to_mixed(&self) -> Result<Localization> {
        let n = self.n();
        let mut sys = self.system.clone();
        let mut twists = Vec::new();
        let mut z_index = Vec::new();
        for i in 0..n {
            let z = self.z(i)?;
            twists.push(self.system.commutation_with_generators(&z)?);
            let (next, idx) = sys.adjoin_inverse(&z, &format!("z{}", i + 1))?;
            sys = next;
            z_index.push(idx);
        }
        let z_inv = |i: usize| -> Result<NCElement> { if i == 0 { Ok(sys.one()) } else { sys.inverse_generator(z_index[i - 1]) } };
        let lambda = self.localized_lambda();
        let r = self.weyl_count();
        let canonical = CanonicalMixedAlgebra::new(self.group.clone(), 2 * n - r, r, lambda.clone())?;
        let order = self.y_order();
        let mut images = Vec::new();
        let mut names = Vec::new();
        for &i in &order {
            images.push(sys.generator(y(i)));
            names.push(format!("y{}", i + 1));
        }
        for &i in &order[r..] {
            images.push(sys.mul(&z_inv(i)?, &sys.generator(z_index[i]))?);
            names.push(format!("z'{}", i + 1));
        }
        for &j in &order[..r] {
            images.push(sys.mul(&z_inv(j)?, &sys.generator(x(j)))?);
            names.push(format!("x'{}", j + 1));
        }
        let relations = verify_images(&canonical.presentation(), &sys, &images)?;
        let antisymmetric = (0..lambda.len()).all(|a| (0..lambda.len()).all(|b| (&lambda[a][b] * &lambda[b][a]).is_one()));
        if let HomCheck::Failing { relation, residue } = &relations {
            return Err(Error::Verification(format!("localized relation {relation} leaves {residue}")));
        }
        Ok(Localization { canonical, system: sys, images, names, z_twists: twists, relations, lambda_antisymmetric: antisymmetric })
    }

    pub fn invariants(&self) -> Result<QWeylInvariants> {
        let applicable = self.q.iter().all(|s| s.is_one() || !s.free_exponents().iter().all(|&e| e == 0));
        let center_trivial = if applicable {
            Some(self.localize_to_mixed()?.canonical.invariants()?.center_rank() == 0)
        } else {
            None
        };
        Ok(QWeylInvariants { gk: 2 * self.n(), w_supdeg: 2 * self.weyl_count(), center_trivial })
    }
}

/// Result of [`QuantumWeylAlgebra::localize_to_mixed`]: the images of the
/// canonical generators, in the localized rewriting system.
#[derive(Clone, Debug)]
pub struct Localization {
    pub canonical: CanonicalMixedAlgebra,
    pub system: ReductionSystem,
    pub images: Vec<NCElement>,
    /// Names of the images, e.g. `z'2` or `x'1`.
    pub names: Vec<String>,
    /// `z_i g = μ g z_i` for each generator `g` of the algebra.
    pub z_twists: Vec<Vec<Scalar>>,
    pub relations: HomCheck,
    pub lambda_antisymmetric: bool,
}

impl Localization {
    /// `name -> image` lines.
    pub fn format_images(&self) -> Vec<String> {
        self.names.iter().zip(&self.images).map(|(n, e)| format!("{n} -> {}", self.system.format(e))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QWeylInvariants {
    pub gk: usize,
    pub w_supdeg: usize,
    /// `None` when some `q_i ≠ 1` is a root of unity.
    pub center_trivial: Option<bool>,
}

pub fn qweyl_equivalence_necessary(a: &QuantumWeylAlgebra, b: &QuantumWeylAlgebra) -> Result<Equivalence> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    if a.n() != b.n() {
        return Ok(Equivalence::NotEquivalent(Reason::Gk));
    }
    if a.weyl_count() != b.weyl_count() {
        return Ok(Equivalence::NotEquivalent(Reason::WSupDeg));
    }
    equivalence_decide(&a.localize_to_mixed()?.canonical, &b.localize_to_mixed()?.canonical)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ScalarGroup {
        ScalarGroup::generic_q()
    }

    fn algebra(q: Vec<Scalar>, l: Scalar) -> QuantumWeylAlgebra {
        let one = g().one();
        let lambda = if q.len() == 1 { vec![vec![one]] } else { vec![vec![one.clone(), l.clone()], vec![l.inv(), one]] };
        QuantumWeylAlgebra::new(g(), q, lambda).unwrap()
    }

    #[test]
    fn first_weyl_algebra() {
        let a = algebra(vec![g().one()], g().one());
        let loc = a.localize_to_mixed().unwrap();
        assert_eq!((loc.canonical.n(), loc.canonical.r()), (1, 1));
        assert!(loc.relations.is_verified());
        assert_eq!(loc.format_images(), vec!["y1 -> y1", "x'1 -> x1"]);
    }

    #[test]
    fn mixed_case() {
        let q = g().symbol("q").unwrap();
        let a = algebra(vec![g().one(), q.clone()], q.clone());
        let loc = a.localize_to_mixed().unwrap();
        assert_eq!((loc.canonical.n(), loc.canonical.r()), (3, 1));
        assert!(loc.lambda_antisymmetric);
        // z'2 y2 = q y2 z'2
        assert_eq!(loc.canonical.lambda()[2][1], q);
        let inv = a.invariants().unwrap();
        assert_eq!((inv.gk, inv.w_supdeg), (4, 2));
    }

    #[test]
    fn quantum_case() {
        let q = g().symbol("q").unwrap();
        let a = algebra(vec![q.clone(), q.clone()], g().one());
        let loc = a.localize_to_mixed().unwrap();
        assert_eq!((loc.canonical.n(), loc.canonical.r()), (4, 0));
        assert_eq!(a.invariants().unwrap().center_trivial, Some(true));
    }

    #[test]
    fn z_is_normal() {
        let q = g().symbol("q").unwrap();
        let a = algebra(vec![q.clone()], g().one());
        // z y = q y z, z x = q^-1 x z
        assert_eq!(a.system().commutation_with_generators(&a.z(0).unwrap()).unwrap(), vec![q.clone(), q.inv()]);
        assert_eq!(a.invariants().unwrap().center_trivial, Some(true));
    }
}
