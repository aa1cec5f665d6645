//! Quantum tori `y_i y_j = λ_ij y_j y_i` with all `y_i` invertible:
//! center, simplicity, monomial morphisms and the uniparameter
//! isomorphism test.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::{kernel_with_torsion, skew_normal_form, IntMatrix};
use crate::presentation::{Presentation, Relation};
use crate::scalar::{Scalar, ScalarGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumTorus {
    group: ScalarGroup,
    lambda: Vec<Vec<Scalar>>,
}

impl QuantumTorus {
    pub fn new(group: ScalarGroup, lambda: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = lambda.len();
        if lambda.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("Lambda must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if !group.contains(&lambda[i][j]) {
                    return Err(Error::GroupMismatch);
                }
                if !(&lambda[i][j] * &lambda[j][i]).is_one() {
                    return Err(Error::NotMultiplicativelyAntisymmetric);
                }
            }
        }
        Ok(QuantumTorus { group, lambda })
    }

    /// Torus generated by `y_i` with `y_i y_j = q^{s_ij} y_j y_i`.
    pub fn from_exponents(group: ScalarGroup, q: &Scalar, s: &IntMatrix) -> Result<Self> {
        if !s.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        let lambda = (0..s.rows())
            .map(|i| (0..s.cols()).map(|j| q.pow(s.get(i, j).to_i64().expect("small exponent"))).collect())
            .collect();
        QuantumTorus::new(group, lambda)
    }

    /// Torus of an all-quantum presentation.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let lambda = p
            .quantum_matrix()
            .ok_or_else(|| Error::invalid("a quantum torus needs only multiplicative or commuting relations"))?;
        QuantumTorus::new(p.group().clone(), lambda)
    }

    /// The all-quantum presentation with generators `names`.
    pub fn to_presentation(&self, names: Vec<String>) -> Result<Presentation> {
        let mut p = Presentation::new(self.group.clone(), names)?;
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                p.set(i, j, Relation::Multiplicative(self.lambda[i][j].clone()))?;
            }
        }
        Ok(p)
    }

    pub fn group(&self) -> &ScalarGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Vec<Scalar>] {
        &self.lambda
    }

    /// `y^a y^b = c·y^{a+b}`; returns `c = ∏_{i>j} λ_ij^{a_i b_j}`.
    pub fn monomial_product_scalar(&self, a: &[i64], b: &[i64]) -> Scalar {
        let mut c = self.group.one();
        for i in 0..a.len() {
            for j in 0..i {
                let k = a[i] * b[j];
                if k != 0 {
                    c = &c * &self.lambda[i][j].pow(k);
                }
            }
        }
        c
    }

    fn mono_mul(&self, a: &(Scalar, Vec<i64>), b: &(Scalar, Vec<i64>)) -> (Scalar, Vec<i64>) {
        let c = self.monomial_product_scalar(&a.1, &b.1);
        let exps = a.1.iter().zip(&b.1).map(|(x, y)| x + y).collect();
        (&(&a.0 * &b.0) * &c, exps)
    }

    fn mono_pow(&self, a: &(Scalar, Vec<i64>), k: i64) -> (Scalar, Vec<i64>) {
        let n = a.1.len();
        let base = if k >= 0 {
            a.clone()
        } else {
            // (s y^h)^{-1} = s^{-1} c(h, -h)^{-1} y^{-h}
            let neg: Vec<i64> = a.1.iter().map(|x| -x).collect();
            let c = self.monomial_product_scalar(&a.1, &neg);
            (&a.0.inv() * &c.inv(), neg)
        };
        let mut out = (self.group.one(), vec![0; n]);
        for _ in 0..k.unsigned_abs() {
            out = self.mono_mul(&out, &base);
        }
        out
    }

    /// Basis of `{α : ∏_i λ_ij^{α_i} = 1 for all j}`; the center is spanned
    /// by the monomials `y^α` with `α` in this lattice.
    pub fn central_lattice(&self) -> IntMatrix {
        let n = self.dim();
        let m = self.group.rank();
        let mut a = Vec::new();
        for j in 0..n {
            for k in 0..m {
                a.push((0..n).map(|i| BigInt::from(self.lambda[i][j].free_exponents()[k])).collect());
            }
        }
        let b: Vec<Vec<BigInt>> =
            (0..n).map(|j| (0..n).map(|i| BigInt::from(self.lambda[i][j].torsion_exponent())).collect()).collect();
        let a = IntMatrix::from_big_rows(n, a);
        let b = IntMatrix::from_big_rows(n, b);
        kernel_with_torsion(&a, &b, self.group.torsion_order() as u64).expect("shapes agree")
    }

    pub fn center_rank(&self) -> usize {
        self.central_lattice().rows()
    }

    pub fn is_simple(&self) -> bool {
        self.central_lattice().rows() == 0
    }

    /// Subgroup of `k*` generated by the weights.
    pub fn weight_group_generators(&self) -> Vec<Scalar> {
        let n = self.dim();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.lambda[i][j].clone()).collect()
    }

    /// Exponent matrix `S` with `λ_ij = q^{s_ij}`, if every weight is a pure
    /// power of `q`.
    pub fn uniparameter_exponents(&self, q: &str) -> Option<IntMatrix> {
        let k = self.group.free_index(q)?;
        let n = self.dim();
        let mut s = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let l = &self.lambda[i][j];
                if l.torsion_exponent() != 0 || l.free_exponents().iter().enumerate().any(|(t, &v)| t != k && v != 0) {
                    return None;
                }
                s.set(i, j, BigInt::from(l.free_exponents()[k]));
            }
        }
        Some(s)
    }
}

/// `y_i ↦ α_i · y'^{H_{·,i}}` (column `i` of the `n' × n` matrix `H`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMorphism {
    pub source: QuantumTorus,
    pub target: QuantumTorus,
    pub h: IntMatrix,
    pub prefactors: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismCheck {
    Valid(TorusMorphism),
    /// First pair `i < j` whose relation is not preserved.
    Violation(usize, usize),
}

fn column(h: &IntMatrix, i: usize) -> Vec<i64> {
    (0..h.rows()).map(|k| h.get(k, i).to_i64().expect("small exponent")).collect()
}

/// Checks `λ_ij = ∏_{k,t} λ'_kt^{h_ki h_tj}` for all `i < j`.
pub fn check_morphism(source: &QuantumTorus, target: &QuantumTorus, h: &IntMatrix) -> Result<MorphismCheck> {
    check_morphism_with(source, target, h, vec![source.group.one(); source.dim()])
}

pub fn check_morphism_with(
    source: &QuantumTorus,
    target: &QuantumTorus,
    h: &IntMatrix,
    prefactors: Vec<Scalar>,
) -> Result<MorphismCheck> {
    if source.group != target.group {
        return Err(Error::GroupMismatch);
    }
    if h.rows() != target.dim() || h.cols() != source.dim() || prefactors.len() != source.dim() {
        return Err(Error::DimensionMismatch(format!(
            "H is {}x{}, expected {}x{}",
            h.rows(),
            h.cols(),
            target.dim(),
            source.dim()
        )));
    }
    let n = source.dim();
    let cols: Vec<Vec<i64>> = (0..n).map(|i| column(h, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut prod = target.group.one();
            for (k, hk) in cols[i].iter().enumerate() {
                for (t, ht) in cols[j].iter().enumerate() {
                    let e = hk * ht;
                    if e != 0 {
                        prod = &prod * &target.lambda[k][t].pow(e);
                    }
                }
            }
            if prod != source.lambda[i][j] {
                return Ok(MorphismCheck::Violation(i, j));
            }
        }
    }
    Ok(MorphismCheck::Valid(TorusMorphism { source: source.clone(), target: target.clone(), h: h.clone(), prefactors }))
}

impl TorusMorphism {
    /// Image of `y_i` as `(scalar, exponents in the target)`.
    pub fn image(&self, i: usize) -> (Scalar, Vec<i64>) {
        (self.prefactors[i].clone(), column(&self.h, i))
    }

    /// Image of the ordered monomial `y^a`.
    pub fn image_of_monomial(&self, a: &[i64]) -> (Scalar, Vec<i64>) {
        let t = &self.target;
        let mut out = (t.group.one(), vec![0; t.dim()]);
        for (i, &k) in a.iter().enumerate() {
            if k != 0 {
                out = t.mono_mul(&out, &t.mono_pow(&self.image(i), k));
            }
        }
        out
    }

    pub fn is_isomorphism(&self) -> bool {
        self.h.is_square() && self.h.det().is_ok_and(|d| d.abs().is_one())
    }
}

/// `f ∘ g`: first `g`, then `f`. The matrix is `H_f · H_g` and prefactors
/// are tracked exactly.
pub fn compose(f: &TorusMorphism, g: &TorusMorphism) -> Result<TorusMorphism> {
    if g.target != f.source {
        return Err(Error::DimensionMismatch("morphisms are not composable".into()));
    }
    let h = f.h.checked_mul(&g.h)?;
    let prefactors = (0..g.source.dim())
        .map(|i| {
            let (s, a) = g.image(i);
            let (c, exps) = f.image_of_monomial(&a);
            debug_assert_eq!(exps, column(&h, i));
            &s * &c
        })
        .collect();
    Ok(TorusMorphism { source: g.source.clone(), target: f.target.clone(), h, prefactors })
}

pub fn identity_morphism(t: &QuantumTorus) -> TorusMorphism {
    TorusMorphism {
        source: t.clone(),
        target: t.clone(),
        h: IntMatrix::identity(t.dim()),
        prefactors: vec![t.group.one(); t.dim()],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniparameterIso {
    /// Witness `H ∈ GL_n(Z)` with `S = Hᵀ S' H`, checked in both directions.
    Iso(IntMatrix),
    NotIso,
    NotApplicable,
}

/// Decides `T ≅ T'` for tori whose weights are integer powers of the free
/// symbol `q` by comparing skew normal forms.
pub fn uniparameter_iso_decide(t: &QuantumTorus, t2: &QuantumTorus, q: &str) -> Result<UniparameterIso> {
    if t.group != t2.group {
        return Err(Error::GroupMismatch);
    }
    let (Some(s), Some(s2)) = (t.uniparameter_exponents(q), t2.uniparameter_exponents(q)) else {
        return Ok(UniparameterIso::NotApplicable);
    };
    if s.rows() != s2.rows() {
        return Ok(UniparameterIso::NotIso);
    }
    let (f, f2) = (skew_normal_form(&s)?, skew_normal_form(&s2)?);
    if f.divisors != f2.divisors {
        return Ok(UniparameterIso::NotIso);
    }
    let u_inv = f.transform.inverse_unimodular().expect("transform is unimodular");
    let h = &f2.transform * &u_inv;
    let h_inv = h.inverse_unimodular().expect("product of unimodular matrices");
    let forward = check_morphism(t, t2, &h)?;
    let backward = check_morphism(t2, t, &h_inv)?;
    match (forward, backward) {
        (MorphismCheck::Valid(_), MorphismCheck::Valid(_)) => Ok(UniparameterIso::Iso(h)),
        _ => Err(Error::Verification("isomorphism witness failed its own check".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(g: &ScalarGroup, l: Scalar) -> QuantumTorus {
        QuantumTorus::new(g.clone(), vec![vec![g.one(), l.clone()], vec![l.inv(), g.one()]]).unwrap()
    }

    #[test]
    fn simplicity() {
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        assert!(plane(&g, q.clone()).is_simple());
        let commutative = plane(&g, g.one());
        assert_eq!(commutative.central_lattice(), IntMatrix::identity(2));
        let g2 = ScalarGroup::new(2, Some("z"), &[]).unwrap();
        let t = plane(&g2, g2.minus_one().unwrap());
        assert!(!t.is_simple());
        assert_eq!(t.central_lattice(), IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
    }

    #[test]
    fn morphism_checks() {
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        let t = plane(&g, q.clone());
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(check_morphism(&t, &t, &swap).unwrap(), MorphismCheck::Violation(0, 1));
        let t2 = plane(&g, q.pow(2));
        let h = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let MorphismCheck::Valid(f) = check_morphism(&t2, &t, &h).unwrap() else { panic!() };
        assert!(!f.is_isomorphism());
        let id = identity_morphism(&t);
        assert_eq!(compose(&id, &f).unwrap(), f);
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let MorphismCheck::Valid(s) = check_morphism(&t, &t, &shear).unwrap() else { panic!() };
        assert!(s.is_isomorphism());
    }

    #[test]
    fn composition_prefactors() {
        // shear y1 ↦ y1, y2 ↦ y1 y2 composed with itself: y2 ↦ y1 (y1 y2) = y1^2 y2
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        let t = plane(&g, q.clone());
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let MorphismCheck::Valid(s) = check_morphism(&t, &t, &shear).unwrap() else { panic!() };
        let c = compose(&s, &s).unwrap();
        assert_eq!(c.h, IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]));
        assert!(c.prefactors.iter().all(Scalar::is_one));
        // swap-with-inverse y1 ↦ y2, y2 ↦ y1^-1 is an automorphism; its square
        // sends y2 ↦ (y2)^-1 with no scalar, y1 ↦ y1^-1
        let rot = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        let MorphismCheck::Valid(r) = check_morphism(&t, &t, &rot).unwrap() else { panic!() };
        let r2 = compose(&r, &r).unwrap();
        assert_eq!(r2.h, IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]));
        // y2 y1 ↦ ... check y1 y2 ↦ y2 y1^-1 = q y1^-1 y2
        assert_eq!(r.image_of_monomial(&[1, 1]), (q.clone(), vec![-1, 1]));
    }

    #[test]
    fn uniparameter() {
        let g = ScalarGroup::generic_q();
        let q = g.symbol("q").unwrap();
        let t1 = plane(&g, q.clone());
        let t2 = plane(&g, q.pow(2));
        assert_eq!(t1.uniparameter_exponents("q"), Some(IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]])));
        assert_eq!(uniparameter_iso_decide(&t1, &t1, "q").unwrap(), UniparameterIso::Iso(IntMatrix::identity(2)));
        assert_eq!(uniparameter_iso_decide(&t1, &t2, "q").unwrap(), UniparameterIso::NotIso);
        let g2 = ScalarGroup::new(2, Some("z"), &["q"]).unwrap();
        let t3 = plane(&g2, g2.minus_one().unwrap());
        assert_eq!(t3.uniparameter_exponents("q"), None);
        assert_eq!(uniparameter_iso_decide(&t3, &t3, "q").unwrap(), UniparameterIso::NotApplicable);
    }
}
