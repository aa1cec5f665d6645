//! Quadratic rewriting systems `X_j X_i → Σ c·w` (`j > i`) over the
//! coefficient ring: deglex reduction, overlap checks, exact arithmetic on
//! PBW normal forms, and localization at normal elements.
//!
//! Generators may be flagged invertible when they normalize every other
//! generator up to an affine twist `g h g⁻¹ = α h + β`; the derived rules
//! for `g⁻¹` are then part of the system.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::coeff::{CoeffRing, Coefficient};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation};
use crate::scalar::Scalar;
use crate::syntax::{format_term, Term};

/// Letters `(generator, exponent)`, read left to right.
pub type Word = Vec<(usize, i64)>;

/// A rule `X_a X_b → Σ c·w` given by generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: (usize, usize),
    pub rhs: Vec<(Coefficient, Vec<usize>)>,
}

/// Linear combination of PBW monomials `X_1^{a_1} ⋯ X_N^{a_N}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCElement {
    terms: BTreeMap<Vec<i64>, Coefficient>,
}

impl NCElement {
    pub fn zero() -> Self {
        NCElement::default()
    }

    pub fn monomial(exponents: Vec<i64>, c: Coefficient) -> Self {
        let mut e = NCElement::default();
        if !c.is_zero() {
            e.terms.insert(exponents, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Coefficient)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, exponents: &[i64]) -> Option<&Coefficient> {
        self.terms.get(exponents)
    }

    fn add_term(&mut self, ring: &CoeffRing, key: Vec<i64>, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                ring.add_assign(cur, c);
                if cur.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    fn add_assign(&mut self, ring: &CoeffRing, other: &NCElement) {
        for (k, c) in &other.terms {
            self.add_term(ring, k.clone(), c);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PairRule {
    /// `X_h X_g = μ X_g X_h`
    Quantum { mu: Coefficient, mu_inv: Coefficient },
    General(Vec<(Coefficient, Word)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Twist {
    alpha: Coefficient,
    alpha_inv: Coefficient,
    beta: Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Confluence {
    Confluent,
    Failing { overlap: Word, left: NCElement, right: NCElement },
}

impl Confluence {
    pub fn is_confluent(&self) -> bool {
        matches!(self, Confluence::Confluent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSystem {
    ring: CoeffRing,
    names: Vec<String>,
    /// `pairs[h][g]` for `h > g`.
    pairs: Vec<Vec<PairRule>>,
    invertible: Vec<bool>,
    /// `(g, h) ↦` twist with `g h g⁻¹ = α h + β`, for non-quantum pairs.
    twists: BTreeMap<(usize, usize), Twist>,
    /// Generators from `base_len` on stand for inverted elements of the base.
    base_len: usize,
    substitutions: Vec<NCElement>,
    certified: bool,
}

fn deglex_less(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() || (a.len() == b.len() && a < b)
}

fn unit(n: usize, g: usize, e: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[g] = e;
    v
}

impl ReductionSystem {
    pub fn build(ring: CoeffRing, names: Vec<String>, rules: Vec<Rule>) -> Result<Self> {
        let n = names.len();
        let commuting = || PairRule::Quantum { mu: ring.one(), mu_inv: ring.one() };
        let mut pairs: Vec<Vec<PairRule>> = (0..n).map(|h| (0..h).map(|_| commuting()).collect()).collect();
        let mut seen = BTreeSet::new();
        for rule in rules {
            let (a, b) = rule.lead;
            if a >= n || b >= n || rule.rhs.iter().any(|(_, w)| w.iter().any(|&x| x >= n)) {
                return Err(Error::invalid("rule mentions an unknown generator"));
            }
            let lead = format!("{} {}", names[a], names[b]);
            if a <= b {
                return Err(Error::NonDecreasingRule(lead));
            }
            if !seen.insert((a, b)) {
                return Err(Error::DuplicateRule(lead));
            }
            let mut rhs: Vec<(Coefficient, Word)> = Vec::new();
            for (c, w) in rule.rhs {
                if !deglex_less(&w, &[a, b]) {
                    let word: Vec<&str> = w.iter().map(|&x| names[x].as_str()).collect();
                    return Err(Error::NonDecreasingRule(format!("{lead} -> {}", word.join(" "))));
                }
                if !c.is_zero() {
                    rhs.push((c, w.into_iter().map(|x| (x, 1)).collect()));
                }
            }
            pairs[a][b] = match rhs.as_slice() {
                [(c, w)] if *w == [(b, 1), (a, 1)] && ring.monomial_inverse(c).is_some() => {
                    PairRule::Quantum { mu: c.clone(), mu_inv: ring.monomial_inverse(c).expect("unit") }
                }
                [] => return Err(Error::invalid(format!("rule {lead} -> 0 makes the algebra degenerate"))),
                _ => PairRule::General(rhs),
            };
        }
        Ok(ReductionSystem {
            ring,
            invertible: vec![false; n],
            names,
            pairs,
            twists: BTreeMap::new(),
            base_len: n,
            substitutions: Vec::new(),
            certified: false,
        })
    }

    /// Rules read off a presentation in declaration order.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let ring = CoeffRing::new(p.group());
        let mut rules = Vec::new();
        for (i, j, rel) in p.listed() {
            let rhs = match rel {
                Relation::Additive(v) => vec![(ring.one(), vec![i, j]), (ring.from_int(-*v), vec![])],
                Relation::Multiplicative(l) => vec![(ring.from_scalar(&l.inv()), vec![i, j])],
                Relation::Eulerian { w_is_first: true } => vec![(ring.one(), vec![i, j]), (ring.from_int(-1), vec![j])],
                Relation::Eulerian { w_is_first: false } => vec![(ring.one(), vec![i, j]), (ring.one(), vec![i])],
            };
            rules.push(Rule { lead: (j, i), rhs });
        }
        ReductionSystem::build(ring, p.generators().to_vec(), rules)
    }

    /// Runs the overlap check and records the result.
    pub fn certify(mut self) -> Result<Self> {
        if let Confluence::Failing { overlap, .. } = self.check_confluence() {
            return Err(Error::NotConfluent(self.format_word(&overlap)));
        }
        self.certified = true;
        Ok(self)
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn generators(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn is_invertible(&self, g: usize) -> bool {
        self.invertible[g]
    }

    /// Number of generators not standing for adjoined inverses.
    pub fn base_len(&self) -> usize {
        self.base_len
    }

    /// Value in the base algebra of an adjoined generator.
    pub fn substitution(&self, g: usize) -> Option<&NCElement> {
        g.checked_sub(self.base_len).and_then(|k| self.substitutions.get(k))
    }

    /// Number of rules, counting only non-commuting pairs.
    pub fn rule_count(&self) -> usize {
        let one = self.ring.one();
        self.pairs.iter().flatten().filter(|r| !matches!(r, PairRule::Quantum { mu, .. } if *mu == one)).count()
    }

    fn lift(&self, e: &NCElement) -> NCElement {
        let n = self.len();
        if e.terms.keys().all(|k| k.len() == n) {
            return e.clone();
        }
        let mut out = NCElement::default();
        for (k, c) in &e.terms {
            assert!(k.len() <= n, "element from a larger system");
            let mut k = k.clone();
            k.resize(n, 0);
            out.terms.insert(k, c.clone());
        }
        out
    }

    pub fn one(&self) -> NCElement {
        self.constant(self.ring.one())
    }

    pub fn constant(&self, c: Coefficient) -> NCElement {
        NCElement::monomial(vec![0; self.len()], c)
    }

    pub fn scalar(&self, s: &Scalar) -> NCElement {
        self.constant(self.ring.from_scalar(s))
    }

    pub fn generator(&self, g: usize) -> NCElement {
        NCElement::monomial(unit(self.len(), g, 1), self.ring.one())
    }

    pub fn inverse_generator(&self, g: usize) -> Result<NCElement> {
        if !self.invertible[g] {
            return Err(Error::NotInvertible(self.names[g].clone()));
        }
        Ok(NCElement::monomial(unit(self.len(), g, -1), self.ring.one()))
    }

    pub fn add(&self, a: &NCElement, b: &NCElement) -> NCElement {
        let mut out = self.lift(a);
        out.add_assign(&self.ring, &self.lift(b));
        out
    }

    pub fn neg(&self, a: &NCElement) -> NCElement {
        self.scale(a, &self.ring.from_int(-1))
    }

    pub fn sub(&self, a: &NCElement, b: &NCElement) -> NCElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &NCElement, c: &Coefficient) -> NCElement {
        let mut out = NCElement::default();
        for (k, v) in &self.lift(a).terms {
            out.add_term(&self.ring, k.clone(), &self.ring.mul(v, c));
        }
        out
    }

    pub fn mul(&self, a: &NCElement, b: &NCElement) -> Result<NCElement> {
        let (a, b) = (self.lift(a), self.lift(b));
        let mut out = NCElement::default();
        for (m, c) in &b.terms {
            let part = self.mul_elem_mono(&a, m)?;
            out.add_assign(&self.ring, &self.scale(&part, c));
        }
        Ok(out)
    }

    pub fn pow(&self, a: &NCElement, k: u32) -> Result<NCElement> {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, a)?;
        }
        Ok(out)
    }

    /// Normal form of `Σ c·w` for arbitrary words (inverse letters allowed
    /// on invertible generators).
    pub fn normal_form(&self, expr: &[(Coefficient, Word)]) -> Result<NCElement> {
        let mut out = NCElement::default();
        for (c, w) in expr {
            let mut cur = self.constant(c.clone());
            for &(g, e) in w {
                if g >= self.len() {
                    return Err(Error::invalid("word mentions an unknown generator"));
                }
                cur = self.mul_elem_letters(&cur, g, e)?;
            }
            out.add_assign(&self.ring, &cur);
        }
        Ok(out)
    }

    /// Normal form of resolved syntax terms whose letters index this system.
    pub fn from_terms(&self, terms: &[Term]) -> Result<NCElement> {
        let expr: Vec<(Coefficient, Word)> = terms
            .iter()
            .map(|t| (self.ring.scale(&self.ring.from_scalar(&t.scalar), &t.rational), t.word.clone()))
            .collect();
        self.normal_form(&expr)
    }

    fn mul_elem_letters(&self, a: &NCElement, g: usize, e: i64) -> Result<NCElement> {
        let mut cur = a.clone();
        for _ in 0..e.unsigned_abs() {
            cur = self.mul_elem_letter(&cur, g, e.signum())?;
        }
        Ok(cur)
    }

    fn mul_elem_letter(&self, a: &NCElement, g: usize, s: i64) -> Result<NCElement> {
        let mut out = NCElement::default();
        for (m, c) in &a.terms {
            let part = self.mul_mono_letter(m, g, s)?;
            for (k, v) in &part.terms {
                out.add_term(&self.ring, k.clone(), &self.ring.mul(v, c));
            }
        }
        Ok(out)
    }

    fn mul_elem_mono(&self, a: &NCElement, mono: &[i64]) -> Result<NCElement> {
        let Some(lo) = mono.iter().position(|&x| x != 0) else { return Ok(a.clone()) };
        let mut out = NCElement::default();
        for (m, c) in &a.terms {
            let top = m.iter().rposition(|&x| x != 0);
            if top.is_none_or(|t| t <= lo) {
                let key: Vec<i64> = m.iter().zip(mono).map(|(x, y)| x + y).collect();
                out.add_term(&self.ring, key, c);
            } else {
                let mut cur = NCElement::monomial(m.clone(), c.clone());
                for (g, &e) in mono.iter().enumerate() {
                    if e != 0 {
                        cur = self.mul_elem_letters(&cur, g, e)?;
                    }
                }
                out.add_assign(&self.ring, &cur);
            }
        }
        Ok(out)
    }

    /// Normal form of `m · g^s` for a normal monomial `m`.
    fn mul_mono_letter(&self, m: &[i64], g: usize, s: i64) -> Result<NCElement> {
        let n = m.len();
        let mut factor = self.ring.one();
        let mut blocking = None;
        for h in (g + 1..n).rev() {
            if m[h] == 0 {
                continue;
            }
            match &self.pairs[h][g] {
                PairRule::Quantum { mu, mu_inv } => {
                    let k = m[h] * s;
                    let p = if k >= 0 { self.ring.pow(mu, k as u32) } else { self.ring.pow(mu_inv, k.unsigned_abs() as u32) };
                    factor = self.ring.mul(&factor, &p);
                }
                PairRule::General(_) => {
                    blocking = Some(h);
                    break;
                }
            }
        }
        let Some(h) = blocking else {
            let mut out = m.to_vec();
            out[g] += s;
            if out[g] < 0 && !self.invertible[g] {
                return Err(Error::NotInvertible(self.names[g].clone()));
            }
            return Ok(NCElement::monomial(out, factor));
        };
        let sigma = m[h].signum();
        let mut left = m.to_vec();
        left[h] -= sigma;
        left[h + 1..].iter_mut().for_each(|x| *x = 0);
        let mut right = vec![0; n];
        right[h + 1..].copy_from_slice(&m[h + 1..]);
        let mut acc = NCElement::default();
        for (c, word) in self.swap(h, sigma, g, s)? {
            let mut cur = NCElement::monomial(left.clone(), self.ring.mul(&c, &factor));
            for &(x, e) in &word {
                cur = self.mul_elem_letters(&cur, x, e)?;
            }
            cur = self.mul_elem_mono(&cur, &right)?;
            acc.add_assign(&self.ring, &cur);
        }
        Ok(acc)
    }

    /// Rewrite `h^σ g^s` (`h > g`, non-quantum pair).
    fn swap(&self, h: usize, sigma: i64, g: usize, s: i64) -> Result<Vec<(Coefficient, Word)>> {
        let PairRule::General(rhs) = &self.pairs[h][g] else { unreachable!("quantum pairs commute directly") };
        let mut out = match (sigma, s) {
            (1, 1) => rhs.clone(),
            (1, _) => {
                let t = self.twists.get(&(g, h)).ok_or_else(|| Error::NotInvertible(self.names[g].clone()))?;
                vec![(t.alpha.clone(), vec![(g, -1), (h, 1)]), (t.beta.clone(), vec![(g, -1)])]
            }
            (_, 1) => {
                let t = self.twists.get(&(h, g)).ok_or_else(|| Error::NotInvertible(self.names[h].clone()))?;
                let b = self.ring.neg(&self.ring.mul(&t.alpha_inv, &t.beta));
                vec![(t.alpha_inv.clone(), vec![(g, 1), (h, -1)]), (b, vec![(h, -1)])]
            }
            _ => return Err(Error::invalid("two inverse letters of a non-quantum pair")),
        };
        out.retain(|(c, _)| !c.is_zero());
        Ok(out)
    }

    /// Flags `g` invertible. Every other generator must satisfy
    /// `g h g⁻¹ = α h + β` with `α` a unit; two invertible generators must
    /// quantum-commute.
    pub fn mark_invertible(&mut self, g: usize) -> Result<()> {
        if self.invertible[g] {
            return Ok(());
        }
        let n = self.len();
        let mut twists = Vec::new();
        let mut quantum = Vec::new();
        for h in (0..n).filter(|&h| h != g) {
            let (hi, lo) = (h.max(g), h.min(g));
            if matches!(self.pairs[hi][lo], PairRule::Quantum { .. }) {
                continue;
            }
            let not_normal = || Error::NotNormal(format!("{} does not normalize {}", self.names[g], self.names[h]));
            let prod = self.mul_mono_letter(&unit(n, hi, 1), lo, 1)?;
            let mut both = unit(n, g, 1);
            both[h] = 1;
            let single = unit(n, g, 1);
            if prod.terms.keys().any(|k| *k != both && *k != single) {
                return Err(not_normal());
            }
            let a = prod.coefficient(&both).ok_or_else(not_normal)?.clone();
            let a_inv = self.ring.monomial_inverse(&a).ok_or_else(not_normal)?;
            let b = prod.coefficient(&single).cloned().unwrap_or_default();
            if b.is_zero() {
                quantum.push((hi, lo, a, a_inv));
                continue;
            }
            if self.invertible[h] {
                return Err(not_normal());
            }
            let t = if h > g {
                Twist { beta: self.ring.neg(&self.ring.mul(&a_inv, &b)), alpha: a_inv, alpha_inv: a }
            } else {
                Twist { alpha: a, alpha_inv: a_inv, beta: b }
            };
            twists.push(((g, h), t));
        }
        for (hi, lo, mu, mu_inv) in quantum {
            self.pairs[hi][lo] = PairRule::Quantum { mu, mu_inv };
        }
        self.twists.extend(twists);
        self.invertible[g] = true;
        if let Confluence::Failing { overlap, .. } = self.check_confluence() {
            return Err(Error::NotConfluent(self.format_word(&overlap)));
        }
        Ok(())
    }

    /// Resolves every overlap `L1 L2 L3` of leading words (including the
    /// cancellation rules of inverse letters) in both ways.
    pub fn check_confluence(&self) -> Confluence {
        let n = self.len();
        let mut letters = Vec::new();
        for g in 0..n {
            letters.push((g, 1));
            if self.invertible[g] {
                letters.push((g, -1));
            }
        }
        let reducible = |a: (usize, i64), b: (usize, i64)| a.0 > b.0 || (a.0 == b.0 && a.1 == -b.1);
        let mut triples = Vec::new();
        for &a in &letters {
            for &b in &letters {
                if !reducible(a, b) {
                    continue;
                }
                for &c in &letters {
                    if reducible(b, c) {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        triples.sort_by_key(|t| !(t[0].0 > t[1].0 && t[1].0 > t[2].0 && t.iter().all(|l| l.1 == 1)));
        let letter = |(g, e): (usize, i64)| NCElement::monomial(unit(n, g, e), self.ring.one());
        for [a, b, c] in triples {
            let left = self.mul(&self.mul(&letter(a), &letter(b)).expect("valid letters"), &letter(c)).expect("valid letters");
            let right = self.mul(&letter(a), &self.mul(&letter(b), &letter(c)).expect("valid letters")).expect("valid letters");
            if left != right {
                return Confluence::Failing { overlap: vec![a, b, c], left, right };
            }
        }
        Confluence::Confluent
    }

    /// For each generator `g`, the scalar `μ` with `elem·g = μ·g·elem`.
    pub fn commutation_with_generators(&self, elem: &NCElement) -> Result<Vec<Scalar>> {
        let elem = self.lift(elem);
        if elem.is_zero() {
            return Err(Error::NotNormal("0".into()));
        }
        (0..self.len())
            .map(|g| {
                let x = self.generator(g);
                let l = self.mul(&elem, &x)?;
                let r = self.mul(&x, &elem)?;
                self.ratio(&l, &r).ok_or_else(|| {
                    Error::NotNormal(format!("{} is not twisted by a scalar against {}", self.format(&elem), self.names[g]))
                })
            })
            .collect()
    }

    /// The scalar `μ` with `l = μ·r`, if there is one.
    fn ratio(&self, l: &NCElement, r: &NCElement) -> Option<Scalar> {
        let (m, cr) = r.terms.iter().next_back()?;
        let cl = l.terms.get(m)?;
        let (kr, yr) = self.ring.leading(cr)?;
        let (kl, yl) = self.ring.leading(cl)?;
        let t = self.ring.root_ratio(&yr, &yl)?;
        let free = kl.iter().zip(&kr).map(|(a, b)| a - b).collect();
        let mu = self.ring.group().element(t as i64, free).ok()?;
        (*l == self.scale(r, &self.ring.from_scalar(&mu))).then_some(mu)
    }

    /// Adjoins an inverse of a normal element of the base algebra. A plain
    /// generator is simply flagged invertible; otherwise a new invertible
    /// generator `name` is appended. Returns the extended system and the
    /// index standing for `elem`.
    pub fn adjoin_inverse(&self, elem: &NCElement, name: &str) -> Result<(ReductionSystem, usize)> {
        let elem = self.lift(elem);
        let n = self.len();
        if let [(m, c)] = elem.terms.iter().collect::<Vec<_>>().as_slice() {
            if **c == self.ring.one() && m.iter().filter(|&&x| x != 0).count() == 1 {
                let g = m.iter().position(|&x| x != 0).expect("one nonzero");
                if m[g] == 1 {
                    let mut out = self.clone();
                    out.mark_invertible(g)?;
                    out.certified = true;
                    return Ok((out, g));
                }
            }
        }
        if elem.terms.keys().any(|k| k[self.base_len..].iter().any(|&x| x != 0)) {
            return Err(Error::invalid("only elements of the base algebra can be inverted"));
        }
        if self.index_of(name).is_some() || self.ring.group().has_symbol(name) {
            return Err(Error::invalid(format!("name `{name}` already in use")));
        }
        let mus = self.commutation_with_generators(&elem)?;
        let mut out = self.clone();
        let row = mus
            .iter()
            .map(|mu| PairRule::Quantum { mu: self.ring.from_scalar(mu), mu_inv: self.ring.from_scalar(&mu.inv()) })
            .collect();
        out.pairs.push(row);
        out.names.push(name.to_string());
        out.invertible.push(true);
        out.substitutions.push(elem);
        if let Confluence::Failing { overlap, .. } = out.check_confluence() {
            return Err(Error::NotConfluent(out.format_word(&overlap)));
        }
        out.certified = true;
        Ok((out, n))
    }

    /// Exact zero test in the localized algebra: clears adjoined inverses on
    /// the right, substitutes their values and compares in the base.
    pub fn is_zero(&self, e: &NCElement) -> Result<bool> {
        if self.substitutions.is_empty() || e.is_zero() {
            return Ok(e.is_zero());
        }
        let e = self.lift(e);
        let n = self.len();
        let mut gamma = vec![0; n];
        for k in &e.terms {
            for z in self.base_len..n {
                gamma[z] = gamma[z].max(-k.0[z]);
            }
        }
        let cleared = self.mul_elem_mono(&e, &gamma)?;
        let mut value = NCElement::default();
        for (m, c) in &cleared.terms {
            let mut base = m.clone();
            base[self.base_len..].iter_mut().for_each(|x| *x = 0);
            let mut cur = NCElement::monomial(base, c.clone());
            for (k, sub) in self.substitutions.iter().enumerate() {
                let p = m[self.base_len + k];
                debug_assert!(p >= 0);
                cur = self.mul(&cur, &self.pow(sub, p as u32)?)?;
            }
            value.add_assign(&self.ring, &cur);
        }
        Ok(value.is_zero())
    }

    pub fn equal(&self, a: &NCElement, b: &NCElement) -> Result<bool> {
        self.is_zero(&self.sub(a, b))
    }

    pub fn format_word(&self, w: &[(usize, i64)]) -> String {
        let parts: Vec<String> =
            w.iter().map(|&(g, e)| if e == 1 { self.names[g].clone() } else { format!("{}^{e}", self.names[g]) }).collect();
        parts.join(" ")
    }

    /// Resolved terms of an element, constant part first.
    pub fn to_terms(&self, e: &NCElement) -> Vec<Term> {
        let mut out = Vec::new();
        for (m, c) in &e.terms {
            let word: Word = m.iter().enumerate().filter(|(_, &x)| x != 0).map(|(g, &x)| (g, x)).collect();
            for (rational, scalar) in self.ring.expand(c) {
                out.push(Term { rational, scalar, word: word.clone() });
            }
        }
        out
    }

    /// Renders an element in the input syntax, e.g. `1 - y x + q * y x`.
    pub fn format(&self, e: &NCElement) -> String {
        let terms = self.to_terms(&self.lift(e));
        if terms.is_empty() {
            return "0".into();
        }
        let group = self.ring.group();
        let mut out = String::new();
        for (k, mut t) in terms.into_iter().enumerate() {
            let negative = t.rational.is_negative();
            if negative {
                t.rational = -t.rational;
            }
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&format_term(&t, group, &self.names));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarGroup;
    use crate::syntax::parse_presentation;

    fn system(text: &str) -> ReductionSystem {
        ReductionSystem::from_presentation(&parse_presentation(text).unwrap()).unwrap()
    }

    fn weyl() -> ReductionSystem {
        // order y < x, rule x y -> y x + 1
        system("generators y, x\nrelations { x y = y x + 1 }\n").certify().unwrap()
    }

    #[test]
    fn weyl_normal_forms() {
        let s = weyl();
        let (y, x) = (s.generator(0), s.generator(1));
        let xy = s.mul(&x, &y).unwrap();
        assert_eq!(s.format(&xy), "1 + y x");
        let y2 = s.mul(&y, &y).unwrap();
        let lhs = s.mul(&x, &y2).unwrap();
        // [x, y^n] = n y^{n-1}
        let expected = s.add(&s.mul(&y2, &x).unwrap(), &s.scale(&y, &s.ring().from_int(2)));
        assert_eq!(lhs, expected);
        let yx_y = s.mul(&s.mul(&y, &x).unwrap(), &y).unwrap();
        assert_eq!(s.format(&yx_y), "y + y^2 x");
        assert_eq!(s.mul(&s.one(), &yx_y).unwrap(), yx_y);
    }

    #[test]
    fn quantum_plane() {
        let s = system("scalars { free q }\ngenerators y, x\nrelations { x y = q * y x }\n").certify().unwrap();
        let (y, x) = (s.generator(0), s.generator(1));
        assert_eq!(s.format(&s.mul(&x, &y).unwrap()), "q * y x");
        assert_eq!(s.format(&s.mul(&y, &x).unwrap()), "y x");
        let (s, g) = s.adjoin_inverse(&y, "unused").unwrap();
        assert_eq!(g, 0);
        let yi = s.inverse_generator(0).unwrap();
        assert_eq!(s.mul(&yi, &y).unwrap(), s.one());
        assert_eq!(s.format(&s.mul(&x, &yi).unwrap()), "q^-1 * y^-1 x");
    }

    #[test]
    fn weyl_generator_is_not_normal() {
        let s = weyl();
        let err = s.adjoin_inverse(&s.generator(1), "z").unwrap_err();
        assert!(matches!(err, Error::NotNormal(_) | Error::NotConfluent(_)), "{err:?}");
        assert!(matches!(s.commutation_with_generators(&s.generator(0)), Err(Error::NotNormal(_))));
    }

    #[test]
    fn eulerian_generator_is_affinely_normal() {
        let mut s = system("generators w, y\nrelations { [w, y] = y }\n").certify().unwrap();
        s.mark_invertible(1).unwrap();
        let (w, y, yi) = (s.generator(0), s.generator(1), s.inverse_generator(1).unwrap());
        // y w y^-1 = w - 1
        let conj = s.mul(&s.mul(&y, &w).unwrap(), &yi).unwrap();
        assert_eq!(conj, s.sub(&w, &s.one()));
        let back = s.mul(&s.mul(&yi, &w).unwrap(), &y).unwrap();
        assert_eq!(back, s.add(&w, &s.one()));
    }

    #[test]
    fn build_rejects_bad_rules() {
        let ring = CoeffRing::new(&ScalarGroup::trivial());
        let names = vec!["a".to_string(), "b".to_string()];
        let up = Rule { lead: (0, 1), rhs: vec![(ring.one(), vec![1, 0])] };
        assert!(matches!(ReductionSystem::build(ring.clone(), names.clone(), vec![up]), Err(Error::NonDecreasingRule(_))));
        let grow = Rule { lead: (1, 0), rhs: vec![(ring.one(), vec![1, 0])] };
        assert!(matches!(ReductionSystem::build(ring.clone(), names.clone(), vec![grow]), Err(Error::NonDecreasingRule(_))));
        let ok = Rule { lead: (1, 0), rhs: vec![(ring.one(), vec![0, 1])] };
        assert!(matches!(ReductionSystem::build(ring, names, vec![ok.clone(), ok]), Err(Error::DuplicateRule(_))));
    }

    #[test]
    fn commutative_is_confluent() {
        let s = system("generators a, b, c\n");
        assert!(s.check_confluence().is_confluent());
        let c = s.commutation_with_generators(&s.generator(1)).unwrap();
        assert!(c.iter().all(Scalar::is_one));
    }
}
