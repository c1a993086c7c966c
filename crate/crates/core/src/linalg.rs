//! Exact rational linear algebra over the Minkowski space `R^{3,1}`.
//!
//! Everything here works over [`Scalar`], an arbitrary-precision rational.
//! The Minkowski form has signature `(+,+,+,-)` in the basis `(e1, e2, e3, e4)`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar. Always kept in reduced form by `num-rational`.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: fall back to a ratio of floats.
        let n = s.numer().to_f64().unwrap_or(f64::NAN);
        let d = s.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Formats a scalar as `n` or `n/d`.
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// A point (or vector) of `R^{3,1}` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinkVector(pub [Scalar; 4]);

impl MinkVector {
    pub fn zero() -> Self {
        MinkVector(std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        MinkVector(c.map(int))
    }

    /// Standard basis vector `e_i`, 1-based as in the literature.
    pub fn basis(i: usize) -> Self {
        assert!((1..=4).contains(&i), "basis index out of range: {i}");
        let mut v = Self::zero();
        v.0[i - 1] = Scalar::one();
        v
    }

    /// The lightlike generator `e3 - e4` of the line `ℓ`.
    pub fn null_direction() -> Self {
        MinkVector::from_ints([0, 0, 1, -1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        MinkVector(std::array::from_fn(|i| &self.0[i] * k))
    }

    pub fn to_f64(&self) -> [f64; 4] {
        std::array::from_fn(|i| to_f64(&self.0[i]))
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }
}

impl fmt::Display for MinkVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_scalar).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for MinkVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(fmt_scalar).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MinkVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts: Vec<String> = Vec::deserialize(d)?;
        if parts.len() != 4 {
            return Err(serde::de::Error::custom("expected four coordinates"));
        }
        let mut out = MinkVector::zero();
        for (slot, p) in out.0.iter_mut().zip(&parts) {
            *slot = crate::parse::parse_rational(p).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

impl Index<usize> for MinkVector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for MinkVector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &MinkVector {
    type Output = MinkVector;
    fn add(self, rhs: &MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &MinkVector {
    type Output = MinkVector;
    fn sub(self, rhs: &MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &MinkVector {
    type Output = MinkVector;
    fn neg(self) -> MinkVector {
        MinkVector(std::array::from_fn(|i| -&self.0[i]))
    }
}

/// The Minkowski product `u1 v1 + u2 v2 + u3 v3 - u4 v4`.
pub fn mink_inner(u: &MinkVector, v: &MinkVector) -> Scalar {
    &u.0[0] * &v.0[0] + &u.0[1] * &v.0[1] + &u.0[2] * &v.0[2] - &u.0[3] * &v.0[3]
}

/// A 4×4 exact matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat4(pub [[Scalar; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4(std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero())))
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = Scalar::one();
        }
        m
    }

    /// `diag(1, 1, 1, -1)`.
    pub fn eta() -> Self {
        let mut m = Self::identity();
        m.0[3][3] = int(-1);
        m
    }

    /// The unit matrix `E_ij` (1-based indices).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i - 1][j - 1] = Scalar::one();
        m
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Mat4(rows.map(|r| r.map(int)))
    }

    pub fn transpose(&self) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] * k)))
    }

    pub fn mul_vec(&self, v: &MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|i| {
            (0..4).fold(Scalar::zero(), |acc, k| acc + &self.0[i][k] * &v.0[k])
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> MinkVector {
        MinkVector(std::array::from_fn(|i| self.0[i][j].clone()))
    }

    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| to_f64(&self.0[i][j])))
    }

    /// `Mᵗ η M == η`.
    pub fn is_lorentz(&self) -> bool {
        let eta = Mat4::eta();
        &(&self.transpose() * &eta) * self == eta
    }

    /// Inverse of a Lorentz matrix, computed as `η Mᵗ η`.
    pub fn lorentz_inverse(&self) -> Self {
        let eta = Mat4::eta();
        &(&eta * &self.transpose()) * &eta
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(fmt_scalar).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Add for &Mat4 {
    type Output = Mat4;
    fn add(self, rhs: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] + &rhs.0[i][j])
        }))
    }
}

impl Sub for &Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] - &rhs.0[i][j])
        }))
    }
}

impl Neg for &Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| -&self.0[i][j])))
    }
}

impl Mul for &Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: &Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..4).fold(Scalar::zero(), |acc, k| acc + &self.0[i][k] * &rhs.0[k][j])
            })
        }))
    }
}

/// Causal character of a subspace of `R^{3,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CausalKind {
    Spacelike,
    Timelike,
    Lightlike,
    Lorentzian,
    Degenerate,
}

impl fmt::Display for CausalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sylvester signature of the Minkowski form restricted to a subspace,
/// together with the derived class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CausalClass {
    pub kind: CausalKind,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl CausalClass {
    /// Derives the class from a signature triple. The zero subspace counts as
    /// (vacuously) spacelike.
    pub fn from_signature(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        let dim = n_plus + n_minus + n_zero;
        let kind = if n_minus >= 1 {
            if dim == 1 {
                CausalKind::Timelike
            } else {
                CausalKind::Lorentzian
            }
        } else if n_zero > 0 {
            if dim == 1 {
                CausalKind::Lightlike
            } else {
                CausalKind::Degenerate
            }
        } else {
            CausalKind::Spacelike
        };
        CausalClass { kind, n_plus, n_minus, n_zero }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({},{},{})", self.kind, self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Signature of a symmetric rational matrix by congruence (symmetric Gaussian)
/// reduction. No square roots, so the computation stays in `Q`.
pub fn sylvester_signature(gram: &[Vec<Scalar>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<Scalar>> = gram.to_vec();
    let (mut plus, mut minus) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Pick a nonzero diagonal pivot, or manufacture one from an off-diagonal entry.
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                match pair {
                    None => break, // remaining block is zero
                    Some((i, j)) => {
                        // Replace row/column i by row/column i + j: new a[i][i] = 2 a[i][j].
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let delta = &f * &a[p][j];
                a[i][j] -= delta;
            }
        }
        for &i in &active {
            a[i][p] = Scalar::zero();
            a[p][i] = Scalar::zero();
        }
    }
    let zero = n - plus - minus;
    (plus, minus, zero)
}

/// Causal class of `span(basis)`. The basis must be linearly independent.
pub fn causal_type(basis: &[MinkVector]) -> Result<CausalClass> {
    let rows: Vec<Vec<Scalar>> = basis.iter().map(|v| v.0.to_vec()).collect();
    if rank(&Matrix::from_rows(4, &rows)) != basis.len() {
        return Err(Error::DependentBasis);
    }
    let gram: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| mink_inner(u, v)).collect())
        .collect();
    let (p, m, z) = sylvester_signature(&gram);
    Ok(CausalClass::from_signature(p, m, z))
}

/// Dense exact matrix of arbitrary shape. Only used for the small systems
/// arising from brackets and orbit tangents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column {j}");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form, leftmost-column pivoting. Returns the pivot
    /// columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let delta = &f * &self[(r, j)];
                    self[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.clone().rref().len()
}

/// Exact description of `{x : A x = b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// A particular solution with all free variables set to zero, or `None`
    /// if the system is inconsistent.
    pub particular: Option<Vec<Scalar>>,
    /// Basis of `ker A`, one vector per free column (leftmost first).
    pub kernel: Vec<Vec<Scalar>>,
    pub rank: usize,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

/// Solves `A x = b` exactly by row reduction.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch { expected: a.rows, found: b.len() });
    }
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref();
    let inconsistent = pivots.last() == Some(&n);
    let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < n).collect();
    let rank = pivots.len();

    let particular = (!inconsistent).then(|| {
        let mut x = vec![Scalar::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, n)].clone();
        }
        x
    });

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut k = vec![Scalar::zero(); n];
            k[f] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                k[c] = -aug[(r, f)].clone();
            }
            k
        })
        .collect();

    Ok(LinearSolution { particular, kernel, rank })
}

/// Whether `v` lies in the row space spanned by `rows`.
pub fn in_span(rows: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let cols = v.len();
    let base = rank(&Matrix::from_rows(cols, rows));
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(&Matrix::from_rows(cols, &ext)) == base
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>], cols: usize) -> bool {
    let ra = rank(&Matrix::from_rows(cols, a));
    let rb = rank(&Matrix::from_rows(cols, b));
    if ra != rb {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&Matrix::from_rows(cols, &both)) == ra
}

/// Canonical (RREF) basis of `span(rows)`, zero rows dropped.
pub fn row_echelon_basis(rows: &[Vec<Scalar>], cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m = Matrix::from_rows(cols, rows);
    let pivots = m.rref();
    let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
    (basis, pivots)
}

/// Largest absolute value among the entries, as `f64`. Handy for reports.
pub fn max_abs(v: &[Scalar]) -> f64 {
    v.iter().map(|x| to_f64(&x.abs())).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> MinkVector {
        MinkVector::basis(i)
    }

    #[test]
    fn inner_products_of_basis_vectors() {
        assert_eq!(mink_inner(&e(4), &e(4)), int(-1));
        assert_eq!(mink_inner(&e(1), &e(1)), int(1));
        let l = MinkVector::null_direction();
        assert_eq!(mink_inner(&l, &l), int(0));
    }

    #[test]
    fn causal_types_of_coordinate_planes() {
        let c = causal_type(&[e(1), e(2)]).unwrap();
        assert_eq!(c, CausalClass::from_signature(2, 0, 0));
        assert_eq!(c.kind, CausalKind::Spacelike);

        let c = causal_type(&[e(3), e(4)]).unwrap();
        assert_eq!((c.kind, c.n_plus, c.n_minus, c.n_zero), (CausalKind::Lorentzian, 1, 1, 0));

        let c = causal_type(&[e(2), MinkVector::null_direction()]).unwrap();
        assert_eq!((c.kind, c.n_plus, c.n_minus, c.n_zero), (CausalKind::Degenerate, 1, 0, 1));
    }

    #[test]
    fn one_dimensional_classes() {
        assert_eq!(causal_type(&[e(4)]).unwrap().kind, CausalKind::Timelike);
        assert_eq!(causal_type(&[e(2)]).unwrap().kind, CausalKind::Spacelike);
        assert_eq!(
            causal_type(&[MinkVector::null_direction()]).unwrap().kind,
            CausalKind::Lightlike
        );
    }

    #[test]
    fn signature_needs_off_diagonal_pivot() {
        // span{e3 - e4, e3 + e4}: Gram [[0, 2], [2, 0]] has zero diagonal.
        let c = causal_type(&[MinkVector::null_direction(), MinkVector::from_ints([0, 0, 1, 1])])
            .unwrap();
        assert_eq!((c.n_plus, c.n_minus, c.n_zero), (1, 1, 0));
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let err = causal_type(&[e(1), e(1).scale(&int(2))]).unwrap_err();
        assert!(matches!(err, Error::DependentBasis));
    }

    #[test]
    fn identity_system_has_unique_solution() {
        let id = Matrix::from_rows(
            4,
            &(0..4)
                .map(|i| (0..4).map(|j| if i == j { int(1) } else { int(0) }).collect())
                .collect::<Vec<_>>(),
        );
        let b = vec![int(3), frac(1, 2), int(-7), int(0)];
        let s = solve_linear(&id, &b).unwrap();
        assert_eq!(s.particular, Some(b));
        assert!(s.kernel.is_empty());
        assert_eq!(s.rank, 4);
    }

    #[test]
    fn zero_map_has_full_kernel() {
        let z = Matrix::zeros(3, 4);
        let s = solve_linear(&z, &[int(0), int(0), int(0)]).unwrap();
        assert_eq!(s.particular, Some(vec![int(0); 4]));
        assert_eq!(s.kernel.len(), 4);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn inconsistent_system() {
        let a = Matrix::from_rows(1, &[vec![int(0)]]);
        let s = solve_linear(&a, &[int(1)]).unwrap();
        assert!(!s.is_consistent());
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::zeros(2, 2);
        assert!(matches!(
            solve_linear(&a, &[int(1)]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn lorentz_inverse_matches_eta_transpose() {
        // Rational boost with rapidity parameter m = 1/2: cosh = 5/3, sinh = 4/3.
        let mut b = Mat4::identity();
        b.0[2][2] = frac(5, 3);
        b.0[3][3] = frac(5, 3);
        b.0[2][3] = frac(4, 3);
        b.0[3][2] = frac(4, 3);
        assert!(b.is_lorentz());
        assert_eq!(&b * &b.lorentz_inverse(), Mat4::identity());
    }
}
