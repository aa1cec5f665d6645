//! Laurent polynomials in the free parameters over the cyclotomic field
//! `Q(ζ_e)`, stored exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Scalar, ScalarGroup};

/// Element of `Q(ζ_e)`, as a polynomial in `ζ` of degree below `φ(e)`.
type Cyclo = Vec<BigRational>;

/// A Laurent polynomial with cyclotomic coefficients. Only meaningful
/// together with the [`CoeffRing`] that produced it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coefficient {
    terms: BTreeMap<Vec<i64>, Cyclo>,
}

impl Coefficient {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the coefficient has no dependence on the free parameters.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|&v| v == 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRing {
    group: ScalarGroup,
    /// Monic cyclotomic polynomial `Φ_e`, lowest degree first.
    modulus: Vec<BigInt>,
    /// `ζ^t` for `0 ≤ t < e`, reduced.
    root_powers: Vec<Cyclo>,
}

impl CoeffRing {
    pub fn new(group: &ScalarGroup) -> Self {
        let e = group.torsion_order() as usize;
        let modulus = cyclotomic_polynomial(e);
        let deg = modulus.len() - 1;
        let mut root_powers = Vec::with_capacity(e);
        let mut cur = vec![BigRational::zero(); deg];
        cur[0] = BigRational::one();
        for _ in 0..e {
            root_powers.push(cur.clone());
            // multiply by ζ
            let mut next = vec![BigRational::zero(); deg + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            cur = reduce_mod(next, &modulus);
        }
        CoeffRing { group: group.clone(), modulus, root_powers }
    }

    pub fn group(&self) -> &ScalarGroup {
        &self.group
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn origin(&self) -> Vec<i64> {
        vec![0; self.group.rank()]
    }

    pub fn zero(&self) -> Coefficient {
        Coefficient::default()
    }

    pub fn one(&self) -> Coefficient {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Coefficient {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, r: BigRational) -> Coefficient {
        let mut c = Coefficient::default();
        if !r.is_zero() {
            let mut v = vec![BigRational::zero(); self.degree()];
            v[0] = r;
            c.terms.insert(self.origin(), v);
        }
        c
    }

    pub fn from_scalar(&self, s: &Scalar) -> Coefficient {
        assert!(self.group.contains(s), "scalar from a foreign group");
        let mut c = Coefficient::default();
        c.terms.insert(s.free_exponents().to_vec(), self.root_powers[s.torsion_exponent() as usize].clone());
        c
    }

    pub fn add(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    pub fn add_assign(&self, a: &mut Coefficient, b: &Coefficient) {
        for (k, v) in &b.terms {
            add_term(&mut a.terms, k.clone(), v);
        }
    }

    pub fn neg(&self, a: &Coefficient) -> Coefficient {
        Coefficient { terms: a.terms.iter().map(|(k, v)| (k.clone(), v.iter().map(|x| -x).collect())).collect() }
    }

    pub fn sub(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Coefficient, r: &BigRational) -> Coefficient {
        if r.is_zero() {
            return Coefficient::default();
        }
        Coefficient { terms: a.terms.iter().map(|(k, v)| (k.clone(), v.iter().map(|x| x * r).collect())).collect() }
    }

    pub fn mul(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        let mut out = Coefficient::default();
        for (ka, va) in &a.terms {
            for (kb, vb) in &b.terms {
                let key: Vec<i64> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let prod = self.cyclo_mul(va, vb);
                add_term(&mut out.terms, key, &prod);
            }
        }
        out
    }

    pub fn pow(&self, a: &Coefficient, k: u32) -> Coefficient {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    fn cyclo_mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let deg = self.degree();
        if deg == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        reduce_mod(prod, &self.modulus)
    }

    /// Inverse of a unit monomial `c·ζ^t·q^v` (the only units this module
    /// needs to invert).
    pub fn monomial_inverse(&self, a: &Coefficient) -> Option<Coefficient> {
        let (s, r) = self.as_scaled_scalar(a)?;
        let mut inv = self.from_scalar(&s.inv());
        inv = self.scale(&inv, &r.recip());
        Some(inv)
    }

    /// Writes `a = r·s` with `s` a group scalar and `r` rational, if possible.
    pub fn as_scaled_scalar(&self, a: &Coefficient) -> Option<(Scalar, BigRational)> {
        if a.terms.len() != 1 {
            return None;
        }
        let (key, cyc) = a.terms.iter().next()?;
        let lead = cyc.iter().position(|x| !x.is_zero())?;
        // prefer r = 1: with even e, `-ζ^t` is itself a root of unity
        if let Some(t) = self.root_powers.iter().position(|p| p == cyc) {
            return Some((self.group.element(t as i64, key.clone()).ok()?, BigRational::one()));
        }
        for (t, p) in self.root_powers.iter().enumerate() {
            if p[lead].is_zero() {
                continue;
            }
            let r = &cyc[lead] / &p[lead];
            if p.iter().zip(cyc).all(|(x, y)| x * &r == *y) {
                let s = self.group.element(t as i64, key.clone()).ok()?;
                return Some((s, r));
            }
        }
        None
    }

    /// Split into rational multiples of group scalars `ζ^t q^v`, `t < φ(e)`.
    pub fn expand(&self, a: &Coefficient) -> Vec<(BigRational, Scalar)> {
        let mut out = Vec::new();
        for (key, cyc) in a.terms.iter().rev() {
            for (t, r) in cyc.iter().enumerate().rev() {
                if !r.is_zero() {
                    let s = self.group.element(t as i64, key.clone()).expect("key matches group rank");
                    out.push((r.clone(), s));
                }
            }
        }
        out
    }

    /// Integer power of a unit monomial; `None` for non-units and negative `k`.
    pub fn unit_pow(&self, a: &Coefficient, k: i64) -> Option<Coefficient> {
        if k >= 0 {
            return Some(self.pow(a, k as u32));
        }
        Some(self.pow(&self.monomial_inverse(a)?, k.unsigned_abs() as u32))
    }

    /// The group scalar equal to `a`, if any.
    pub fn as_scalar(&self, a: &Coefficient) -> Option<Scalar> {
        let (s, r) = self.as_scaled_scalar(a)?;
        r.is_one().then_some(s)
    }

    /// Leading Laurent term (largest exponent vector) and its cyclotomic part.
    pub(crate) fn leading(&self, a: &Coefficient) -> Option<(Vec<i64>, Cyclo)> {
        a.terms.iter().next_back().map(|(k, v)| (k.clone(), v.clone()))
    }

    /// Find `t` with `ζ^t·x = y` for nonzero cyclotomic numbers.
    pub(crate) fn root_ratio(&self, x: &Cyclo, y: &Cyclo) -> Option<u32> {
        (0..self.root_powers.len()).find(|&t| self.cyclo_mul(&self.root_powers[t], x) == *y).map(|t| t as u32)
    }

    pub fn format(&self, a: &Coefficient) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let root = self.group.root_symbol().unwrap_or("zeta");
        let mut out = String::new();
        for (key, cyc) in a.terms.iter().rev() {
            for (t, r) in cyc.iter().enumerate().rev() {
                if r.is_zero() {
                    continue;
                }
                let mut factors = Vec::new();
                if t > 0 {
                    factors.push(if t == 1 { root.to_string() } else { format!("{root}^{t}") });
                }
                for (name, &k) in self.group.free_symbols().iter().zip(key) {
                    if k == 1 {
                        factors.push(name.clone());
                    } else if k != 0 {
                        factors.push(format!("{name}^{k}"));
                    }
                }
                let mag = r.abs();
                let body = match (mag.is_one(), factors.is_empty()) {
                    (true, true) => "1".to_string(),
                    (true, false) => factors.join("*"),
                    (false, true) => mag.to_string(),
                    (false, false) => format!("{}*{}", mag, factors.join("*")),
                };
                if out.is_empty() {
                    if r.is_negative() {
                        out.push('-');
                    }
                } else {
                    out.push_str(if r.is_negative() { " - " } else { " + " });
                }
                out.push_str(&body);
            }
        }
        out
    }
}

fn add_term(terms: &mut BTreeMap<Vec<i64>, Cyclo>, key: Vec<i64>, v: &Cyclo) {
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(slot) => {
            if v.iter().any(|x| !x.is_zero()) {
                slot.insert(v.clone());
            }
        }
        Entry::Occupied(mut slot) => {
            let cur = slot.get_mut();
            for (x, y) in cur.iter_mut().zip(v) {
                *x += y;
            }
            if cur.iter().all(Zero::is_zero) {
                slot.remove();
            }
        }
    }
}

fn reduce_mod(mut p: Vec<BigRational>, modulus: &[BigInt]) -> Cyclo {
    let deg = modulus.len() - 1;
    while p.len() > deg {
        let top = p.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = p.len() - deg;
        for (i, m) in modulus[..deg].iter().enumerate() {
            p[shift + i] -= &top * BigRational::from_integer(m.clone());
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = exact_div(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let c = |n| cyclotomic_polynomial(n).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(c(1), "-1,1");
        assert_eq!(c(2), "1,1");
        assert_eq!(c(4), "1,0,1");
        assert_eq!(c(6), "1,-1,1");
        assert_eq!(c(12), "1,0,-1,0,1");
    }

    #[test]
    fn roots_of_unity_behave() {
        for e in [1u32, 2, 3, 4, 6, 12] {
            let g = ScalarGroup::new(e, Some("z"), &["q"]).unwrap();
            let ring = CoeffRing::new(&g);
            let z = ring.from_scalar(&g.root());
            assert_eq!(ring.pow(&z, e), ring.one(), "ζ^e = 1 for e = {e}");
            // Φ_e(ζ) = 0
            let phi = cyclotomic_polynomial(e as usize);
            let mut acc = ring.zero();
            for (k, c) in phi.iter().enumerate() {
                let term = ring.scale(&ring.pow(&z, k as u32), &BigRational::from_integer(c.clone()));
                acc = ring.add(&acc, &term);
            }
            assert!(acc.is_zero());
            if e % 2 == 0 {
                assert_eq!(ring.from_scalar(&g.minus_one().unwrap()), ring.from_int(-1));
            }
        }
    }

    #[test]
    fn scalar_embedding_is_multiplicative() {
        let g = ScalarGroup::new(6, Some("z"), &["q", "p"]).unwrap();
        let ring = CoeffRing::new(&g);
        let a = g.element(5, vec![1, -2]).unwrap();
        let b = g.element(4, vec![-3, 1]).unwrap();
        assert_eq!(ring.mul(&ring.from_scalar(&a), &ring.from_scalar(&b)), ring.from_scalar(&(&a * &b)));
        let inv = ring.monomial_inverse(&ring.from_scalar(&a)).unwrap();
        assert_eq!(ring.mul(&inv, &ring.from_scalar(&a)), ring.one());
        assert_eq!(ring.as_scalar(&ring.from_scalar(&a)), Some(a));
    }

    #[test]
    fn formatting() {
        let g = ScalarGroup::generic_q();
        let ring = CoeffRing::new(&g);
        let q = ring.from_scalar(&g.symbol("q").unwrap());
        let c = ring.sub(&q, &ring.one());
        assert_eq!(ring.format(&c), "q - 1");
        assert_eq!(ring.format(&ring.neg(&ring.pow(&q, 2))), "-q^2");
    }
}
