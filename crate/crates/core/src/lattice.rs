//! Exact integer matrices: Hermite and Smith forms with transforms, kernels,
//! lattice intersections and the congruence normal form of antisymmetric
//! matrices.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from small-integer rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_big_rows(cols, rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn from_big_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64().expect("entry fits in i64")).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub fn rank(&self) -> usize {
        hermite_nf(self).0.nonzero_rows()
    }

    fn nonzero_rows(&self) -> usize {
        (0..self.rows).filter(|&i| self.row(i).iter().any(|v| !v.is_zero())).count()
    }

    /// Inverse of a unimodular matrix, `None` when `|det| != 1`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let (h, u) = hermite_nf(self);
        if h == IntMatrix::identity(self.rows) {
            Some(u)
        } else {
            None
        }
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row_dst += c * row_src
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let v = self.get(src, k) * c;
            self.data[dst * self.cols + k] += v;
        }
    }

    /// col_dst += c * col_src
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, src) * c;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k);
            self.set(i, k, v);
        }
    }

}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on incompatible shapes.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite form: `U·A = H`, `U` unimodular, `H` in row echelon
/// form with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows come last.
pub fn hermite_nf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            let pivot = (r..a.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&i, &j| h.get(i, c).abs().cmp(&h.get(j, c).abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..a.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_row(i, r, &q);
                u.add_row(i, r, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_row(i, r, &q);
            u.add_row(i, r, &q);
        }
        r += 1;
    }
    debug_assert_eq!(&u * a, h);
    (h, u)
}

/// Nonzero rows of the Hermite form: the canonical basis of the row lattice.
pub fn hermite_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_nf(a);
    let k = h.nonzero_rows();
    IntMatrix::from_big_rows(a.cols, (0..k).map(|i| h.row(i).to_vec()).collect())
}

/// Smith form: `U·A·V = D`, diagonal, nonnegative, `d_i | d_{i+1}`.
pub fn smith_nf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                debug_assert_eq!(&(&u * a) * &v, d);
                return (d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..m {
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let piv = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    debug_assert_eq!(&(&u * a) * &v, d);
    (d, u, v)
}

/// Basis (as rows) of the integer right kernel `{x : A·x = 0}`.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_nf(&a.transpose());
    let rows: Vec<Vec<BigInt>> =
        (0..h.rows).filter(|&i| h.row(i).iter().all(Zero::is_zero)).map(|i| u.row(i).to_vec()).collect();
    hermite_basis(&IntMatrix::from_big_rows(a.cols, rows))
}

/// Basis of `{α ∈ Z^n : A·α = 0, B·α ≡ 0 (mod e)}`; `a` and `b` must both
/// have `n` columns (either may have zero rows).
pub fn kernel_with_torsion(a: &IntMatrix, b: &IntMatrix, e: u64) -> Result<IntMatrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!("{} vs {} columns", a.cols, b.cols)));
    }
    if e == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let n = a.cols;
    let l = b.rows;
    let mut m = IntMatrix::zeros(a.rows + l, n + l);
    for i in 0..a.rows {
        for j in 0..n {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..l {
        for j in 0..n {
            m.set(a.rows + i, j, b.get(i, j).clone());
        }
        m.set(a.rows + i, n + i, BigInt::from(e));
    }
    let k = kernel(&m);
    let proj: Vec<Vec<BigInt>> = (0..k.rows).map(|i| k.row(i)[..n].to_vec()).collect();
    Ok(hermite_basis(&IntMatrix::from_big_rows(n, proj)))
}

/// Basis of the intersection of two row lattices in the same ambient `Z^n`.
pub fn lattice_intersect(b1: &IntMatrix, b2: &IntMatrix) -> Result<IntMatrix> {
    if b1.cols != b2.cols {
        return Err(Error::DimensionMismatch(format!("ambient {} vs {}", b1.cols, b2.cols)));
    }
    let n = b1.cols;
    let (k1, k2) = (b1.rows, b2.rows);
    // Solve a·B1 = b·B2, i.e. [B1ᵀ | -B2ᵀ]·(a, b) = 0.
    let mut m = IntMatrix::zeros(n, k1 + k2);
    for j in 0..n {
        for i in 0..k1 {
            m.set(j, i, b1.get(i, j).clone());
        }
        for i in 0..k2 {
            m.set(j, k1 + i, -b2.get(i, j));
        }
    }
    let k = kernel(&m);
    let mut rows = Vec::with_capacity(k.rows);
    for r in 0..k.rows {
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in k.row(r)[..k1].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in v.iter_mut().enumerate() {
                *slot += c * b1.get(i, j);
            }
        }
        rows.push(v);
    }
    Ok(hermite_basis(&IntMatrix::from_big_rows(n, rows)))
}

/// `Uᵀ·A·U = C^n(d_1..d_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNormalForm {
    pub divisors: Vec<BigInt>,
    pub size: usize,
    pub transform: IntMatrix,
}

impl SkewNormalForm {
    /// The block-diagonal canonical matrix.
    pub fn canonical(&self) -> IntMatrix {
        canonical_skew(self.size, &self.divisors)
    }
}

/// `Diag[C_1..C_s, 0..0]` with `C_i = [[0, d_i], [-d_i, 0]]`.
pub fn canonical_skew(size: usize, divisors: &[BigInt]) -> IntMatrix {
    let mut c = IntMatrix::zeros(size, size);
    for (k, d) in divisors.iter().enumerate() {
        c.set(2 * k, 2 * k + 1, d.clone());
        c.set(2 * k + 1, 2 * k, -d);
    }
    c
}

struct Congruence {
    a: IntMatrix,
    u: IntMatrix,
}

impl Congruence {
    /// col_dst += c·col_src and row_dst += c·row_src.
    fn add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        self.a.add_row(dst, src, c);
        self.u.add_col(dst, src, c);
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.a.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        self.a.get(i, j)
    }

    /// Bring entry (i, j), i != j, to position (p, p+1).
    fn bring(&mut self, mut i: usize, mut j: usize, p: usize) {
        if i == p + 1 && j == p {
            self.swap(p, p + 1);
            return;
        }
        if j == p {
            // Use the antisymmetric twin (j, i).
            std::mem::swap(&mut i, &mut j);
        }
        if i != p {
            self.swap(i, p);
            if j == p {
                j = i;
            }
        }
        if j != p + 1 {
            self.swap(j, p + 1);
        }
    }
}

pub fn skew_normal_form(a: &IntMatrix) -> Result<SkewNormalForm> {
    if !a.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let n = a.rows;
    let mut st = Congruence { a: a.clone(), u: IntMatrix::identity(n) };
    let mut divisors = Vec::new();
    let mut p = 0;
    while p + 1 < n {
        let mut best: Option<(usize, usize)> = None;
        for i in p..n {
            for j in i + 1..n {
                let x = st.at(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.at(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        st.bring(bi, bj, p);
        loop {
            let d = st.at(p, p + 1).clone();
            let mut remainder = false;
            for j in p + 2..n {
                let q = st.at(p, j).div_floor(&d);
                st.add(j, p + 1, &-q);
                let c = st.at(p + 1, j).div_floor(&d);
                st.add(j, p, &c);
                remainder |= !st.at(p, j).is_zero() || !st.at(p + 1, j).is_zero();
            }
            if remainder {
                let mut best: Option<(usize, usize)> = None;
                for i in [p, p + 1] {
                    for j in p + 2..n {
                        let x = st.at(i, j);
                        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.at(bi, bj).abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let (i, j) = best.expect("nonzero remainder");
                st.bring(i, j, p);
                continue;
            }
            let bad = (p + 2..n).find(|&i| (p + 2..n).any(|j| !st.at(i, j).is_multiple_of(&d)));
            match bad {
                Some(i) => st.add(p, i, &BigInt::one()),
                None => break,
            }
        }
        if st.at(p, p + 1).is_negative() {
            st.swap(p, p + 1);
        }
        divisors.push(st.at(p, p + 1).clone());
        p += 2;
    }
    let form = SkewNormalForm { divisors, size: n, transform: st.u };
    debug_assert_eq!(&(&form.transform.transpose() * a) * &form.transform, form.canonical());
    Ok(form)
}

/// Solve `x·B = v` over the rationals, returning `x` when it is integral.
pub fn lattice_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = basis.rows;
    let n = basis.cols;
    if v.len() != n {
        return None;
    }
    // Gauss-Jordan on the augmented system Bᵀ x = vᵀ.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..k).map(|i| BigRational::from(basis.get(i, j).clone())).collect();
            row.push(BigRational::from(v[j].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for col in 0..=k {
                    let t = &m[r][col] * &f;
                    m[i][col] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    let mut x = vec![BigInt::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        let val = &m[row][k];
        if !val.is_integer() {
            return None;
        }
        x[c] = val.to_integer();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn smith_of_identity_and_diag() {
        let (d, u, v) = smith_nf(&IntMatrix::identity(3));
        assert_eq!((d.clone(), u, v), (IntMatrix::identity(3), IntMatrix::identity(3), IntMatrix::identity(3)));
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let (d, u, v) = smith_nf(&a);
        assert_eq!(d, m(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(&(&u * &a) * &v, d);
    }

    #[test]
    fn hermite_of_zero() {
        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hermite_nf(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hermite_is_reduced() {
        let a = m(&[vec![4, 6, 2], vec![2, 3, 7], vec![6, 9, 1]]);
        let (h, u) = hermite_nf(&a);
        assert_eq!(&u * &a, h);
        assert_eq!(u.det().unwrap().abs(), BigInt::one());
        assert_eq!(h, m(&[vec![2, 3, 3], vec![0, 0, 4], vec![0, 0, 0]]));
    }

    #[test]
    fn kernels() {
        let a = m(&[vec![1, -1]]);
        let b = IntMatrix::zeros(0, 2);
        assert_eq!(kernel_with_torsion(&a, &b, 1).unwrap(), m(&[vec![1, 1]]));
        let a = IntMatrix::zeros(0, 1);
        let b = m(&[vec![1]]);
        assert_eq!(kernel_with_torsion(&a, &b, 2).unwrap(), m(&[vec![2]]));
        assert!(kernel_with_torsion(&m(&[vec![1, 2]]), &m(&[vec![1]]), 2).is_err());
    }

    #[test]
    fn intersections() {
        let z2 = IntMatrix::identity(2);
        let axis = m(&[vec![0, 1]]);
        assert_eq!(lattice_intersect(&z2, &axis).unwrap(), m(&[vec![0, 1]]));
        let a = m(&[vec![2, 0], vec![0, 1]]);
        let b = m(&[vec![1, 0], vec![0, 3]]);
        assert_eq!(lattice_intersect(&a, &b).unwrap(), m(&[vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn skew_examples() {
        let a = m(&[vec![0, 2], vec![-2, 0]]);
        let f = skew_normal_form(&a).unwrap();
        assert_eq!(f.divisors, vec![BigInt::from(2)]);
        assert_eq!(f.transform, IntMatrix::identity(2));

        let a = m(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]);
        let f = skew_normal_form(&a).unwrap();
        assert_eq!(f.divisors, vec![BigInt::one()]);
        assert_eq!(&(&f.transform.transpose() * &a) * &f.transform, f.canonical());
        assert_eq!(a.rank(), 2);

        assert_eq!(skew_normal_form(&m(&[vec![0, 1], vec![1, 0]])), Err(Error::NotAntisymmetric));
    }

    #[test]
    fn skew_needs_divisor_fixing() {
        // Diag(C(2), C(3)) must become Diag(C(1), C(6)).
        let a = canonical_skew(4, &[BigInt::from(2), BigInt::from(3)]);
        let f = skew_normal_form(&a).unwrap();
        assert_eq!(f.divisors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(&(&f.transform.transpose() * &a) * &f.transform, f.canonical());
    }

    #[test]
    fn determinants_and_inverse() {
        assert_eq!(m(&[vec![2, 0], vec![0, 1]]).det().unwrap(), BigInt::from(2));
        assert_eq!(m(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).det().unwrap(), BigInt::from(-2));
        let u = m(&[vec![1, 1], vec![0, 1]]);
        let inv = u.inverse_unimodular().unwrap();
        assert_eq!(&u * &inv, IntMatrix::identity(2));
        assert!(m(&[vec![2, 0], vec![0, 1]]).inverse_unimodular().is_none());
    }

    #[test]
    fn coordinates() {
        let b = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(lattice_coordinates(&b, &[BigInt::from(4), BigInt::from(-3)]), Some(vec![BigInt::from(2), BigInt::from(-1)]));
        assert_eq!(lattice_coordinates(&b, &[BigInt::from(1), BigInt::from(0)]), None);
    }
}
