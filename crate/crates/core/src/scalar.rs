//! The parameter group `Z/e × Z^m`: one primitive root of unity of order `e`
//! and `m` multiplicatively independent free parameters.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarGroup {
    torsion_order: u32,
    root_symbol: Option<String>,
    free_symbols: Vec<String>,
}

impl ScalarGroup {
    pub fn new(torsion_order: u32, root_symbol: Option<&str>, free_symbols: &[&str]) -> Result<Self> {
        Self::from_owned(
            torsion_order,
            root_symbol.map(str::to_string),
            free_symbols.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn from_owned(torsion_order: u32, root_symbol: Option<String>, free_symbols: Vec<String>) -> Result<Self> {
        if torsion_order == 0 {
            return Err(Error::InvalidGroup("root order must be at least 1".into()));
        }
        let mut seen: Vec<&str> = Vec::new();
        for name in root_symbol.iter().chain(free_symbols.iter()) {
            if seen.contains(&name.as_str()) {
                return Err(Error::InvalidGroup(format!("symbol `{name}` declared twice")));
            }
            seen.push(name);
        }
        Ok(ScalarGroup { torsion_order, root_symbol, free_symbols })
    }

    /// The trivial group: no root of unity, no parameters.
    pub fn trivial() -> Self {
        ScalarGroup { torsion_order: 1, root_symbol: None, free_symbols: Vec::new() }
    }

    /// One free parameter `q` and no torsion.
    pub fn generic_q() -> Self {
        ScalarGroup { torsion_order: 1, root_symbol: None, free_symbols: vec!["q".into()] }
    }

    pub fn torsion_order(&self) -> u32 {
        self.torsion_order
    }

    pub fn root_symbol(&self) -> Option<&str> {
        self.root_symbol.as_deref()
    }

    pub fn free_symbols(&self) -> &[String] {
        &self.free_symbols
    }

    pub fn rank(&self) -> usize {
        self.free_symbols.len()
    }

    pub fn free_index(&self, name: &str) -> Option<usize> {
        self.free_symbols.iter().position(|s| s == name)
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.root_symbol.as_deref() == Some(name) || self.free_index(name).is_some()
    }

    pub fn one(&self) -> Scalar {
        Scalar { order: self.torsion_order, torsion: 0, free: vec![0; self.rank()] }
    }

    pub fn element(&self, torsion: i64, free: Vec<i64>) -> Result<Scalar> {
        if free.len() != self.rank() {
            return Err(Error::GroupMismatch);
        }
        let e = self.torsion_order as i64;
        Ok(Scalar { order: self.torsion_order, torsion: torsion.rem_euclid(e) as u32, free })
    }

    /// The declared root of unity `ζ`.
    pub fn root(&self) -> Scalar {
        let mut s = self.one();
        s.torsion = 1 % self.torsion_order;
        s
    }

    /// `-1`, available only when the root order is even.
    pub fn minus_one(&self) -> Option<Scalar> {
        if self.torsion_order.is_multiple_of(2) {
            let mut s = self.one();
            s.torsion = self.torsion_order / 2;
            Some(s)
        } else {
            None
        }
    }

    pub fn free_generator(&self, k: usize) -> Scalar {
        let mut s = self.one();
        s.free[k] = 1;
        s
    }

    /// Free parameter by name.
    pub fn symbol(&self, name: &str) -> Option<Scalar> {
        if self.root_symbol.as_deref() == Some(name) {
            return Some(self.root());
        }
        self.free_index(name).map(|k| self.free_generator(k))
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.order == self.torsion_order && s.free.len() == self.rank()
    }

    /// Render a scalar in the input syntax, e.g. `q^-1`, `zeta^2 * q`, `-1 * q`.
    pub fn format(&self, s: &Scalar) -> String {
        let mut factors = Vec::new();
        let mut negative = false;
        if s.torsion != 0 {
            if self.torsion_order.is_multiple_of(2) && s.torsion == self.torsion_order / 2 {
                negative = true;
            } else {
                let root = self.root_symbol.as_deref().unwrap_or("zeta");
                factors.push(power(root, s.torsion as i64));
            }
        }
        for (name, &k) in self.free_symbols.iter().zip(&s.free) {
            if k != 0 {
                factors.push(power(name, k));
            }
        }
        match (negative, factors.is_empty()) {
            (false, true) => "1".into(),
            (true, true) => "-1".into(),
            (false, false) => factors.join(" * "),
            (true, false) => format!("-1 * {}", factors.join(" * ")),
        }
    }

    /// Canonical description of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Scalar]) -> Result<SubgroupDescription> {
        subgroup_canonical_form(self, gens)
    }
}

fn power(name: &str, k: i64) -> String {
    if k == 1 {
        name.to_string()
    } else {
        format!("{name}^{k}")
    }
}

impl fmt::Display for ScalarGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(r) = &self.root_symbol {
            parts.push(format!("root {r} : {}", self.torsion_order));
        } else if self.torsion_order > 1 {
            parts.push(format!("root zeta : {}", self.torsion_order));
        }
        if !self.free_symbols.is_empty() {
            parts.push(format!("free {}", self.free_symbols.join(", ")));
        }
        write!(f, "scalars {{ {} }}", parts.join(" ; "))
    }
}

/// `ζ^t · ∏ q_k^{v_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    order: u32,
    torsion: u32,
    free: Vec<i64>,
}

impl Scalar {
    pub fn torsion_exponent(&self) -> u32 {
        self.torsion
    }

    pub fn free_exponents(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_order(&self) -> u32 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.torsion == 0 && self.free.iter().all(|&v| v == 0)
    }

    /// True when the free part vanishes, i.e. the scalar is a root of unity.
    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(|&v| v == 0)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.order != other.order || self.free.len() != other.free.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(Scalar {
            order: self.order,
            torsion: ((self.torsion as u64 + other.torsion as u64) % self.order as u64) as u32,
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn pow(&self, k: i64) -> Scalar {
        let e = self.order as i64;
        let t = ((self.torsion as i64 % e) * (k % e)).rem_euclid(e);
        Scalar { order: self.order, torsion: t as u32, free: self.free.iter().map(|v| v * k).collect() }
    }

    pub fn inv(&self) -> Scalar {
        self.pow(-1)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    /// Panics when the operands come from different groups; use
    /// [`Scalar::checked_mul`] for untrusted input.
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar group mismatch")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

/// A subgroup of `Z/e × Z^m`, stored as the Hermite basis of its preimage
/// in `Z^{1+m}` (first coordinate: exponent of the root, taken modulo `e`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupDescription {
    /// Order of the torsion part (a divisor of `e`).
    pub torsion_order: u32,
    /// Hermite basis of the projection onto the free exponents.
    pub free_basis: IntMatrix,
    /// Hermite basis of the lifted lattice; two generating sets give the
    /// same subgroup iff these agree.
    pub lifted_basis: IntMatrix,
}

impl SubgroupDescription {
    pub fn is_trivial(&self) -> bool {
        self.torsion_order == 1 && self.free_basis.rows() == 0
    }

    pub fn free_rank(&self) -> usize {
        self.free_basis.rows()
    }
}

impl fmt::Display for SubgroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "torsion={} free={}", self.torsion_order, self.free_basis)
    }
}

pub fn subgroup_canonical_form(group: &ScalarGroup, gens: &[Scalar]) -> Result<SubgroupDescription> {
    let m = group.rank();
    let e = group.torsion_order();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        if !group.contains(g) {
            return Err(Error::GroupMismatch);
        }
        let mut row = vec![BigInt::from(g.torsion)];
        row.extend(g.free.iter().map(|&v| BigInt::from(v)));
        rows.push(row);
    }
    let mut rel = vec![BigInt::zero(); m + 1];
    rel[0] = BigInt::from(e);
    rows.push(rel);
    let lifted = lattice::hermite_basis(&IntMatrix::from_big_rows(m + 1, rows));

    // Elements with zero free part: intersect with Z × 0.
    let mut axis = IntMatrix::zeros(1, m + 1);
    axis.set(0, 0, BigInt::from(1));
    let torsion_part = lattice::lattice_intersect(&lifted, &axis)?;
    let g = torsion_part.get(0, 0).clone();
    let torsion_order = (BigInt::from(e) / g).to_u32().expect("divisor of e");

    let mut proj = IntMatrix::zeros(lifted.rows(), m);
    for i in 0..lifted.rows() {
        for j in 0..m {
            proj.set(i, j, lifted.get(i, j + 1).clone());
        }
    }
    let free_basis = lattice::hermite_basis(&proj);
    Ok(SubgroupDescription { torsion_order, free_basis, lifted_basis: lifted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> ScalarGroup {
        ScalarGroup::new(2, Some("zeta"), &["q"]).unwrap()
    }

    #[test]
    fn minus_one_squares_to_one() {
        let g = g2();
        let m = g.minus_one().unwrap();
        assert!((&m * &m).is_one());
        assert_eq!(m.torsion_exponent(), 1);
    }

    #[test]
    fn inverse_law_and_powers() {
        let g = ScalarGroup::new(4, Some("zeta"), &["q"]).unwrap();
        let q = g.symbol("q").unwrap();
        assert!((&q * &q.inv()).is_one());
        let z = g.root();
        let zq = &z.pow(2) * &q;
        assert_eq!((zq.torsion_exponent(), zq.free_exponents()), (2, &[1][..]));
        assert_eq!(z.pow(5).torsion_exponent(), 1);
        assert_eq!(q.pow(2).inv().free_exponents(), &[-2]);
        assert!(q.pow(0).is_one());
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = g2().root();
        let b = ScalarGroup::new(3, Some("w"), &["q"]).unwrap().root();
        assert_eq!(a.checked_mul(&b), Err(Error::GroupMismatch));
    }

    #[test]
    fn formatting() {
        let g = ScalarGroup::new(4, Some("zeta"), &["q"]).unwrap();
        assert_eq!(g.format(&g.one()), "1");
        assert_eq!(g.format(&g.symbol("q").unwrap().inv()), "q^-1");
        assert_eq!(g.format(&(&g.root() * &g.symbol("q").unwrap())), "zeta * q");
        assert_eq!(g.format(&g.minus_one().unwrap()), "-1");
    }

    #[test]
    fn subgroup_examples() {
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        let a = g.subgroup(&[q.clone(), q.inv()]).unwrap();
        assert_eq!(a.torsion_order, 1);
        assert_eq!(a.free_basis, IntMatrix::from_rows(&[vec![1]]));
        let b = g.subgroup(&[q.pow(2), q.pow(3)]).unwrap();
        assert_eq!(b.free_basis, IntMatrix::from_rows(&[vec![1]]));
        assert_eq!(a, b);

        let g = g2();
        let c = g.subgroup(&[g.minus_one().unwrap(), g.symbol("q").unwrap()]).unwrap();
        assert_eq!(c.torsion_order, 2);
        assert_eq!(c.free_basis, IntMatrix::from_rows(&[vec![1]]));
        // ⟨-q⟩ has no torsion but the same free projection.
        let d = g.subgroup(&[&g.minus_one().unwrap() * &g.symbol("q").unwrap()]).unwrap();
        assert_eq!(d.torsion_order, 1);
        assert_ne!(c, d);
        assert!(g.subgroup(&[]).unwrap().is_trivial());
    }
}
