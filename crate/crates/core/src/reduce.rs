//! Reduction of an admissible qW presentation to a canonical algebra
//! `S_{n,r}^Λ` by elementary changes of generators, with a replayable
//! certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mixed::CanonicalMixedAlgebra;
use crate::presentation::{Presentation, Relation};
use crate::scalar::{Scalar, ScalarGroup};

/// One change of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// `X_i ← c·X_i`, `c ≠ 0`
    Scale(usize, BigRational),
    /// `X_i ← X_i + c·X_j`
    Add(usize, usize, BigRational),
    /// New generator `k` is old generator `order[k]`.
    Permute(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub steps: Vec<Step>,
    /// `(x_k, y_k)` as indices before the final permutation.
    pub pairs: Vec<(usize, usize)>,
}

impl ReductionCertificate {
    /// Each final generator as a rational combination of the input ones.
    pub fn generator_images(&self, n: usize) -> Vec<Vec<BigRational>> {
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        for step in &self.steps {
            match step {
                Step::Scale(i, c) => rows[*i].iter_mut().for_each(|x| *x *= c),
                Step::Add(i, j, c) => {
                    let src = rows[*j].clone();
                    rows[*i].iter_mut().zip(&src).for_each(|(x, y)| *x += c * y);
                }
                Step::Permute(order) => rows = order.iter().map(|&k| rows[k].clone()).collect(),
            }
        }
        rows
    }
}

/// Relation between two current generators, read `i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Edge {
    /// `X_i X_j − X_j X_i = p`
    Additive(BigRational),
    /// `X_i X_j = λ X_j X_i`, `λ ≠ 1`
    Multiplicative(Scalar),
}

impl Edge {
    fn reversed(&self) -> Edge {
        match self {
            Edge::Additive(p) => Edge::Additive(-p),
            Edge::Multiplicative(l) => Edge::Multiplicative(l.inv()),
        }
    }
}

/// Full table of pairwise relations with rational additive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    group: ScalarGroup,
    edges: Vec<Vec<Edge>>,
}

impl RelationTable {
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        if p.has_eulerian() {
            return Err(Error::EulerianNotSupported);
        }
        let n = p.len();
        let mut edges = vec![vec![Edge::Additive(BigRational::zero()); n]; n];
        for (i, row) in edges.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j {
                    *slot = match p.relation(i, j) {
                        Relation::Additive(v) => Edge::Additive(BigRational::from_integer(BigInt::from(v))),
                        Relation::Multiplicative(l) => Edge::Multiplicative(l),
                        Relation::Eulerian { .. } => unreachable!(),
                    };
                }
            }
        }
        Ok(RelationTable { group: p.group().clone(), edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, i: usize, j: usize) -> &Edge {
        &self.edges[i][j]
    }

    fn weight(&self, i: usize, j: usize) -> Option<&BigRational> {
        match &self.edges[i][j] {
            Edge::Additive(p) if !p.is_zero() => Some(p),
            _ => None,
        }
    }

    fn weyl_neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.weight(i, j).is_some()).collect()
    }

    fn set(&mut self, i: usize, j: usize, e: Edge) {
        self.edges[j][i] = e.reversed();
        self.edges[i][j] = e;
    }

    /// Whether `X_i ← X_i + c X_j` keeps every relation of the qW form.
    pub fn can_add(&self, i: usize, j: usize) -> bool {
        if i == j || !matches!(self.edges[i][j], Edge::Additive(_)) {
            return false;
        }
        (0..self.len()).filter(|&k| k != i && k != j).all(|k| match (&self.edges[i][k], &self.edges[j][k]) {
            (Edge::Additive(_), Edge::Additive(_)) => true,
            (Edge::Multiplicative(a), Edge::Multiplicative(b)) => a == b,
            _ => false,
        })
    }

    pub fn apply(&mut self, step: &Step) -> Result<()> {
        let n = self.len();
        match step {
            Step::Scale(i, c) => {
                if c.is_zero() || *i >= n {
                    return Err(Error::invalid("invalid scaling step"));
                }
                for k in 0..n {
                    if let Edge::Additive(p) = &self.edges[*i][k] {
                        let e = Edge::Additive(p * c);
                        self.set(*i, k, e);
                    }
                }
            }
            Step::Add(i, j, c) => {
                if *i >= n || *j >= n || !self.can_add(*i, *j) {
                    return Err(Error::invalid(format!("adding generator {j} to {i} breaks the relation table")));
                }
                for k in (0..n).filter(|&k| k != *i && k != *j) {
                    if let (Edge::Additive(a), Edge::Additive(b)) = (&self.edges[*i][k], &self.edges[*j][k]) {
                        let e = Edge::Additive(a + c * b);
                        self.set(*i, k, e);
                    }
                }
            }
            Step::Permute(order) => {
                let mut seen = vec![false; n];
                if order.len() != n || order.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
                    return Err(Error::invalid("not a permutation"));
                }
                self.edges = order.iter().map(|&a| order.iter().map(|&b| self.edges[a][b].clone()).collect()).collect();
            }
        }
        Ok(())
    }

    /// The presentation with these relations, if all weights are integers.
    pub fn to_presentation(&self, names: Vec<String>) -> Result<Presentation> {
        let mut p = Presentation::new(self.group.clone(), names)?;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let rel = match &self.edges[i][j] {
                    Edge::Additive(v) => {
                        if !v.is_integer() {
                            return Err(Error::invalid("non-integer additive weight"));
                        }
                        Relation::Additive(v.to_integer().to_i64().ok_or_else(|| Error::invalid("weight out of range"))?)
                    }
                    Edge::Multiplicative(l) => Relation::Multiplicative(l.clone()),
                };
                p.set(i, j, rel)?;
            }
        }
        Ok(p)
    }
}

fn integer(r: &BigRational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::invalid("unexpected non-integer weight during reduction"))
    }
}

/// Applies the certificate to the input presentation's relation table.
pub fn replay(p: &Presentation, cert: &ReductionCertificate) -> Result<RelationTable> {
    let mut t = RelationTable::from_presentation(p)?;
    for s in &cert.steps {
        t.apply(s)?;
    }
    Ok(t)
}

struct Work {
    table: RelationTable,
    steps: Vec<Step>,
}

impl Work {
    fn apply(&mut self, s: Step) -> Result<()> {
        self.table.apply(&s)?;
        self.steps.push(s);
        Ok(())
    }

    fn w(&self, i: usize, j: usize) -> BigRational {
        self.table.weight(i, j).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Brings an admissible presentation to the canonical form by changes of
/// generators; vertices are treated lowest index first.
pub fn reduce_to_canonical(p: &Presentation) -> Result<(CanonicalMixedAlgebra, ReductionCertificate)> {
    if let Some(w) = p.check_admissible()?.witness {
        let g = p.generators();
        return Err(Error::Inadmissible(format!(
            "triangle {}, {}, {}",
            g[w.weyl_edge.0], g[w.weyl_edge.1], g[w.third]
        )));
    }
    let n = p.len();
    let mut work = Work { table: RelationTable::from_presentation(p)?, steps: Vec::new() };
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > n + 1 {
            return Err(Error::invalid("graph reduction did not terminate"));
        }
        let neighbours: Vec<Vec<usize>> = (0..n).map(|i| work.table.weyl_neighbours(i)).collect();
        let paired = |i: usize| neighbours[i].len() == 1 && neighbours[neighbours[i][0]].len() == 1;
        let Some(x) = (0..n).find(|&i| !neighbours[i].is_empty() && !paired(i)) else { break };

        // only one Weyl edge at x: gcd-combine the neighbours, then eliminate
        let mut s = neighbours[x].clone();
        if s.len() > 1 {
            for k in (0..s.len() - 1).rev() {
                let a = integer(&work.w(x, s[k]))?;
                let b = integer(&work.w(x, s[k + 1]))?;
                if b.is_multiple_of(&a) {
                    continue;
                }
                if a.is_multiple_of(&b) {
                    s.swap(k, k + 1);
                    continue;
                }
                let e = a.extended_gcd(&b);
                work.apply(Step::Scale(s[k], BigRational::from_integer(e.x)))?;
                work.apply(Step::Add(s[k], s[k + 1], BigRational::from_integer(e.y)))?;
            }
            let p0 = work.w(x, s[0]);
            for &sk in &s[1..] {
                let c = -work.w(x, sk) / &p0;
                if !c.is_zero() {
                    work.apply(Step::Add(sk, s[0], c))?;
                }
            }
        }

        // free the partner from its other Weyl edges
        let y = s[0];
        let others: Vec<usize> = work.table.weyl_neighbours(y).into_iter().filter(|&t| t != x).collect();
        if !others.is_empty() {
            let p = work.w(x, y);
            if !p.is_one() {
                work.apply(Step::Scale(x, p.recip()))?;
            }
            for t in others {
                let m = work.w(y, t);
                work.apply(Step::Add(t, x, m))?;
            }
        }
    }

    // normalize the pairs to x y - y x = 1 and order y_1..y_n, x_1..x_r
    let mut pairs = Vec::new();
    let mut in_pair = vec![false; n];
    for i in 0..n {
        if in_pair[i] {
            continue;
        }
        if let [j] = work.table.weyl_neighbours(i).as_slice() {
            let j = *j;
            let (x, y) = if work.w(i, j).is_positive() { (i, j) } else { (j, i) };
            let p = work.w(x, y);
            if !p.is_one() {
                work.apply(Step::Scale(x, p.recip()))?;
            }
            in_pair[i] = true;
            in_pair[j] = true;
            pairs.push((x, y));
        }
    }
    let r = pairs.len();
    let mut order: Vec<usize> = pairs.iter().map(|&(_, y)| y).collect();
    order.extend((0..n).filter(|&i| !in_pair[i]));
    order.extend(pairs.iter().map(|&(x, _)| x));
    let identity: Vec<usize> = (0..n).collect();
    if order != identity {
        work.apply(Step::Permute(order))?;
    }
    let dim = n - r;
    let group = p.group().clone();
    let lambda: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| match work.table.edge(i, j) {
                    Edge::Multiplicative(l) => Ok(l.clone()),
                    Edge::Additive(v) if v.is_zero() => Ok(group.one()),
                    Edge::Additive(_) => Err(Error::Verification("Weyl edge left between y generators".into())),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let canon = CanonicalMixedAlgebra::new(group, dim, r, lambda)?;
    let cert = ReductionCertificate { steps: work.steps, pairs };
    if RelationTable::from_presentation(&canon.presentation())? != work.table {
        return Err(Error::Verification("reduced table differs from the canonical relations".into()));
    }
    Ok((canon, cert))
}
