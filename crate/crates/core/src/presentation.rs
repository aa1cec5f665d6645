//! Algebra presentations with pairwise relations (the algebraic form of a
//! qW graph), admissibility of triangles, and the integer Weyl matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::scalar::{Scalar, ScalarGroup};

/// Relation between generators `X_i`, `X_j`, read in the orientation `i → j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `X_i X_j - X_j X_i = p`
    Additive(i64),
    /// `X_i X_j = λ X_j X_i`, `λ ≠ 1`
    Multiplicative(Scalar),
    /// `[w, y] = y`; `w_is_first` tells whether `X_i` is `w`.
    Eulerian { w_is_first: bool },
}

impl Relation {
    /// The same relation read in the opposite orientation.
    pub fn reversed(&self) -> Relation {
        match self {
            Relation::Additive(p) => Relation::Additive(-p),
            Relation::Multiplicative(l) => Relation::Multiplicative(l.inv()),
            Relation::Eulerian { w_is_first } => Relation::Eulerian { w_is_first: !w_is_first },
        }
    }

    /// Folds a weight-1 quantum relation into plain commutation.
    pub fn normalized(self) -> Relation {
        match self {
            Relation::Multiplicative(l) if l.is_one() => Relation::Additive(0),
            r => r,
        }
    }

    pub fn is_commuting(&self) -> bool {
        matches!(self, Relation::Additive(0))
    }

    /// Multiplicative weight, treating plain commutation as weight 1.
    pub fn quantum_weight(&self, group: &ScalarGroup) -> Option<Scalar> {
        match self {
            Relation::Additive(0) => Some(group.one()),
            Relation::Multiplicative(l) => Some(l.clone()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    group: ScalarGroup,
    generators: Vec<String>,
    /// Non-commuting pairs only, keyed by `(i, j)` with `i < j`.
    relations: BTreeMap<(usize, usize), Relation>,
}

impl Presentation {
    pub fn new(group: ScalarGroup, generators: Vec<String>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if generators[..k].contains(g) {
                return Err(Error::invalid(format!("generator `{g}` declared twice")));
            }
            if group.has_symbol(g) {
                return Err(Error::invalid(format!("`{g}` is both a generator and a scalar symbol")));
            }
        }
        Ok(Presentation { group, generators, relations: BTreeMap::new() })
    }

    pub fn group(&self) -> &ScalarGroup {
        &self.group
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Sets the relation read as `i → j`, overwriting any previous one.
    pub fn set(&mut self, i: usize, j: usize, rel: Relation) -> Result<()> {
        if i == j {
            return Err(Error::SelfRelation(self.generators[i].clone()));
        }
        if let Relation::Multiplicative(l) = &rel {
            if !self.group.contains(l) {
                return Err(Error::GroupMismatch);
            }
        }
        let (key, rel) = if i < j { ((i, j), rel) } else { ((j, i), rel.reversed()) };
        match rel.normalized() {
            Relation::Additive(0) => {
                self.relations.remove(&key);
            }
            r => {
                self.relations.insert(key, r);
            }
        }
        Ok(())
    }

    /// Like [`Presentation::set`] but refuses to overwrite.
    pub fn insert(&mut self, i: usize, j: usize, rel: Relation) -> Result<()> {
        if i == j {
            return Err(Error::SelfRelation(self.generators[i].clone()));
        }
        let key = (i.min(j), i.max(j));
        if self.relations.contains_key(&key) {
            return Err(Error::DuplicateRelation(self.generators[key.0].clone(), self.generators[key.1].clone()));
        }
        self.set(i, j, rel)
    }

    /// Relation read as `i → j` (plain commutation when unlisted).
    pub fn relation(&self, i: usize, j: usize) -> Relation {
        assert_ne!(i, j, "no self-relations");
        if i < j {
            self.relations.get(&(i, j)).cloned().unwrap_or(Relation::Additive(0))
        } else {
            self.relations.get(&(j, i)).map(Relation::reversed).unwrap_or(Relation::Additive(0))
        }
    }

    /// Listed (non-commuting) relations in canonical orientation.
    pub fn listed(&self) -> impl Iterator<Item = (usize, usize, &Relation)> {
        self.relations.iter().map(|(&(i, j), r)| (i, j, r))
    }

    pub fn has_eulerian(&self) -> bool {
        self.relations.values().any(|r| matches!(r, Relation::Eulerian { .. }))
    }

    fn require_qw(&self) -> Result<()> {
        if self.has_eulerian() {
            Err(Error::EulerianNotSupported)
        } else {
            Ok(())
        }
    }

    pub fn check_admissible(&self) -> Result<AdmissibilityReport> {
        self.require_qw()?;
        for (&(i, j), rel) in &self.relations {
            let Relation::Additive(p) = rel else { continue };
            if *p == 0 {
                continue;
            }
            for k in 0..self.len() {
                if k == i || k == j {
                    continue;
                }
                let (ri, rj) = (self.relation(i, k), self.relation(j, k));
                let ok = match (&ri, &rj) {
                    (Relation::Additive(_), Relation::Additive(_)) => true,
                    (Relation::Multiplicative(a), Relation::Multiplicative(b)) => (a * b).is_one(),
                    _ => false,
                };
                if !ok {
                    return Ok(AdmissibilityReport {
                        witness: Some(TriangleWitness { weyl_edge: (i, j), third: k, first: ri, second: rj }),
                    });
                }
            }
        }
        Ok(AdmissibilityReport { witness: None })
    }

    /// Antisymmetric matrix of additive weights (zero on quantum pairs).
    pub fn weyl_matrix(&self) -> Result<IntMatrix> {
        self.require_qw()?;
        let n = self.len();
        let mut m = IntMatrix::zeros(n, n);
        for (&(i, j), rel) in &self.relations {
            if let Relation::Additive(p) = rel {
                m.set(i, j, BigInt::from(*p));
                m.set(j, i, BigInt::from(-*p));
            }
        }
        Ok(m)
    }

    pub fn subpresentation(&self, subset: &[usize]) -> Result<Presentation> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let names = subset.iter().map(|&i| self.generators[i].clone()).collect();
        let mut out = Presentation::new(self.group.clone(), names)?;
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate().skip(a + 1) {
                out.set(a, b, self.relation(i, j))?;
            }
        }
        Ok(out)
    }

    /// Reorders generators: new generator `k` is old generator `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Presentation> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() || order.iter().any(|&i| i >= self.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::invalid("not a permutation of the generators"));
        }
        self.subpresentation(order)
    }

    /// Renames generators, keeping relations.
    pub fn renamed(&self, names: Vec<String>) -> Result<Presentation> {
        if names.len() != self.len() {
            return Err(Error::DimensionMismatch("wrong number of names".into()));
        }
        let mut out = Presentation::new(self.group.clone(), names)?;
        out.relations = self.relations.clone();
        Ok(out)
    }

    /// All quantum weights `λ_{i→j}` for `i < j` when every relation is
    /// multiplicative or commuting.
    pub fn quantum_matrix(&self) -> Option<Vec<Vec<Scalar>>> {
        let n = self.len();
        let mut lam = vec![vec![self.group.one(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    lam[i][j] = self.relation(i, j).quantum_weight(&self.group)?;
                }
            }
        }
        Some(lam)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_presentation(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleWitness {
    /// The pair carrying a nonzero additive relation.
    pub weyl_edge: (usize, usize),
    pub third: usize,
    /// Relation `weyl_edge.0 → third`.
    pub first: Relation,
    /// Relation `weyl_edge.1 → third`.
    pub second: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub witness: Option<TriangleWitness>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.witness.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(l13: Scalar, l23: Scalar) -> Presentation {
        let g = ScalarGroup::generic_q();
        let mut p = Presentation::new(g, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        p.set(0, 1, Relation::Additive(1)).unwrap();
        p.set(0, 2, Relation::Multiplicative(l13)).unwrap();
        p.set(1, 2, Relation::Multiplicative(l23)).unwrap();
        p
    }

    #[test]
    fn admissible_and_inadmissible_triangles() {
        let q = ScalarGroup::generic_q().symbol("q").unwrap();
        assert!(triangle(q.clone(), q.inv()).check_admissible().unwrap().is_admissible());
        let rep = triangle(q.clone(), q.clone()).check_admissible().unwrap();
        let w = rep.witness.unwrap();
        assert_eq!((w.weyl_edge, w.third), ((0, 1), 2));
    }

    #[test]
    fn commuting_next_to_quantum_is_inadmissible() {
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        let mut p = Presentation::new(g, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        p.set(0, 1, Relation::Additive(2)).unwrap();
        p.set(1, 2, Relation::Multiplicative(q)).unwrap();
        assert!(!p.check_admissible().unwrap().is_admissible());
    }

    #[test]
    fn orientation_is_canonical() {
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        let mut p = Presentation::new(g.clone(), vec!["a".into(), "b".into()]).unwrap();
        p.set(1, 0, Relation::Multiplicative(q.clone())).unwrap();
        assert_eq!(p.relation(0, 1), Relation::Multiplicative(q.inv()));
        p.set(1, 0, Relation::Additive(3)).unwrap();
        assert_eq!(p.relation(0, 1), Relation::Additive(-3));
        p.set(0, 1, Relation::Multiplicative(g.one())).unwrap();
        assert_eq!(p.listed().count(), 0);
    }

    #[test]
    fn weyl_matrix_of_triangle() {
        let g = ScalarGroup::trivial();
        let mut p = Presentation::new(g, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            p.set(i, j, Relation::Additive(1)).unwrap();
        }
        let m = p.weyl_matrix().unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn eulerian_rejected_by_qw_operations() {
        let g = ScalarGroup::trivial();
        let mut p = Presentation::new(g, vec!["w".into(), "y".into()]).unwrap();
        p.set(0, 1, Relation::Eulerian { w_is_first: true }).unwrap();
        assert_eq!(p.check_admissible(), Err(Error::EulerianNotSupported));
        assert_eq!(p.weyl_matrix(), Err(Error::EulerianNotSupported));
    }

    #[test]
    fn subpresentations() {
        let p = triangle(ScalarGroup::generic_q().symbol("q").unwrap(), ScalarGroup::generic_q().symbol("q").unwrap());
        assert_eq!(p.subpresentation(&[0, 1]).unwrap().relation(0, 1), Relation::Additive(1));
        assert_eq!(p.subpresentation(&[2]).unwrap().len(), 1);
        assert_eq!(p.subpresentation(&[]), Err(Error::EmptySubset));
    }
}
