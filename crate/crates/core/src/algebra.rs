//! The isometry algebra `so(3,1) ⊕ R^{3,1}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Isometry;
use crate::linalg::{fmt_scalar, int, solve_linear, LinearSolution, Mat4, Matrix, MinkVector, Scalar};

/// Named basis elements: the six Iwasawa generators and the four translations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorLabel {
    Yk1,
    Yk2,
    Yk3,
    Ya,
    Yn1,
    Yn2,
    E1,
    E2,
    E3,
    E4,
}

impl GeneratorLabel {
    pub const ALL: [GeneratorLabel; 10] = [
        Self::Yk1,
        Self::Yk2,
        Self::Yk3,
        Self::Ya,
        Self::Yn1,
        Self::Yn2,
        Self::E1,
        Self::E2,
        Self::E3,
        Self::E4,
    ];

    /// The six linear generators in coordinate order.
    pub const LINEAR: [GeneratorLabel; 6] =
        [Self::Yk1, Self::Yk2, Self::Yk3, Self::Ya, Self::Yn1, Self::Yn2];

    pub fn name(self) -> &'static str {
        match self {
            Self::Yk1 => "Yk1",
            Self::Yk2 => "Yk2",
            Self::Yk3 => "Yk3",
            Self::Ya => "Ya",
            Self::Yn1 => "Yn1",
            Self::Yn2 => "Yn2",
            Self::E1 => "e1",
            Self::E2 => "e2",
            Self::E3 => "e3",
            Self::E4 => "e4",
        }
    }

    pub fn is_translation(self) -> bool {
        matches!(self, Self::E1 | Self::E2 | Self::E3 | Self::E4)
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown generator `{s}`")))
    }
}

/// Generator subsets of `so(3,1)`.
pub const K: &[GeneratorLabel] = &[GeneratorLabel::Yk1, GeneratorLabel::Yk2, GeneratorLabel::Yk3];
pub const A: &[GeneratorLabel] = &[GeneratorLabel::Ya];
pub const N: &[GeneratorLabel] = &[GeneratorLabel::Yn1, GeneratorLabel::Yn2];
pub const K1: &[GeneratorLabel] = &[GeneratorLabel::Yk1];
pub const N1: &[GeneratorLabel] = &[GeneratorLabel::Yn1];
pub const N2: &[GeneratorLabel] = &[GeneratorLabel::Yn2];

/// The lightlike line `ℓ = R(e3 - e4)`.
pub fn ell() -> Vec<MinkVector> {
    vec![MinkVector::null_direction()]
}

/// The degenerate plane `W² = R e2 ⊕ ℓ`.
pub fn w2() -> Vec<MinkVector> {
    vec![MinkVector::basis(2), MinkVector::null_direction()]
}

/// The degenerate hyperplane `W³ = R e1 ⊕ W²`.
pub fn w3() -> Vec<MinkVector> {
    vec![MinkVector::basis(1), MinkVector::basis(2), MinkVector::null_direction()]
}

/// An element of `so(3,1)`: a 4×4 matrix `m` with `mᵗη + ηm = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LorentzAlgebraElement {
    m: Mat4,
}

impl LorentzAlgebraElement {
    /// Checks the η-skew constraint.
    pub fn new(m: Mat4) -> Result<Self> {
        let eta = Mat4::eta();
        if (&(&m.transpose() * &eta) + &(&eta * &m)).is_zero() {
            Ok(LorentzAlgebraElement { m })
        } else {
            Err(Error::Parse(format!("matrix {m} is not in so(3,1)")))
        }
    }

    pub fn zero() -> Self {
        LorentzAlgebraElement { m: Mat4::zero() }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// Coordinates in the basis `(Yk1, Yk2, Yk3, Ya, Yn1, Yn2)`.
    pub fn coords(&self) -> [Scalar; 6] {
        let x = &self.m.0;
        [
            x[0][1].clone(),
            &x[0][2] - &x[0][3],
            &x[1][2] - &x[1][3],
            x[2][3].clone(),
            x[0][3].clone(),
            x[1][3].clone(),
        ]
    }

    pub fn from_coords(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), 6);
        let mut m = Mat4::zero();
        for (label, k) in GeneratorLabel::LINEAR.iter().zip(c) {
            if !k.is_zero() {
                m = &m + &generator_matrix(*label).scale(k);
            }
        }
        LorentzAlgebraElement { m }
    }

    pub fn apply(&self, v: &MinkVector) -> MinkVector {
        self.m.mul_vec(v)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        LorentzAlgebraElement { m: &(&self.m * &other.m) - &(&other.m * &self.m) }
    }

    /// Cartan involution `X ↦ -Xᵗ`.
    pub fn cartan_involution(&self) -> Self {
        LorentzAlgebraElement { m: -&self.m.transpose() }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        LorentzAlgebraElement { m: self.m.scale(k) }
    }

    /// Conjugation `U X U⁻¹` by a Lorentz matrix.
    pub fn conjugate(&self, u: &Mat4) -> Self {
        LorentzAlgebraElement { m: &(u * &self.m) * &u.lorentz_inverse() }
    }
}

fn generator_matrix(label: GeneratorLabel) -> Mat4 {
    use GeneratorLabel::*;
    let e = Mat4::unit;
    match label {
        Yk1 => &e(1, 2) - &e(2, 1),
        Yk2 => &e(1, 3) - &e(3, 1),
        Yk3 => &e(2, 3) - &e(3, 2),
        Ya => &e(3, 4) + &e(4, 3),
        Yn1 => &(&(&e(1, 3) + &e(1, 4)) - &e(3, 1)) + &e(4, 1),
        Yn2 => &(&(&e(2, 3) + &e(2, 4)) - &e(3, 2)) + &e(4, 2),
        E1 | E2 | E3 | E4 => Mat4::zero(),
    }
}

/// An element `X + x` of the isometry algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoAlgebraElement {
    pub linear: LorentzAlgebraElement,
    pub trans: MinkVector,
}

impl IsoAlgebraElement {
    pub fn new(linear: LorentzAlgebraElement, trans: MinkVector) -> Self {
        IsoAlgebraElement { linear, trans }
    }

    pub fn zero() -> Self {
        IsoAlgebraElement { linear: LorentzAlgebraElement::zero(), trans: MinkVector::zero() }
    }

    pub fn translation(v: MinkVector) -> Self {
        IsoAlgebraElement { linear: LorentzAlgebraElement::zero(), trans: v }
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_zero() && self.trans.is_zero()
    }

    /// Ten coordinates: six linear (`Yk1..Yn2`) followed by `e1..e4`.
    pub fn coords(&self) -> Vec<Scalar> {
        let mut c = self.linear.coords().to_vec();
        c.extend(self.trans.0.iter().cloned());
        c
    }

    pub fn from_coords(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), 10);
        IsoAlgebraElement {
            linear: LorentzAlgebraElement::from_coords(&c[..6]),
            trans: MinkVector(std::array::from_fn(|i| c[6 + i].clone())),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        IsoAlgebraElement { linear: self.linear.scale(k), trans: self.trans.scale(k) }
    }

    pub fn add(&self, other: &Self) -> Self {
        IsoAlgebraElement {
            linear: LorentzAlgebraElement { m: &self.linear.m + &other.linear.m },
            trans: &self.trans + &other.trans,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// Linear combination `Σ cᵢ aᵢ`.
    pub fn combination(coeffs: &[Scalar], elems: &[IsoAlgebraElement]) -> Self {
        coeffs
            .iter()
            .zip(elems)
            .filter(|(c, _)| !c.is_zero())
            .fold(Self::zero(), |acc, (c, e)| acc.add(&e.scale(c)))
    }

    /// `X + x + Xp`: the image under conjugation by the translation `-p`.
    pub fn translate_conjugate(&self, p: &MinkVector) -> Self {
        IsoAlgebraElement {
            linear: self.linear.clone(),
            trans: &self.trans + &self.linear.apply(p),
        }
    }
}

impl fmt::Display for IsoAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (label, c) in GeneratorLabel::ALL.iter().zip(self.coords()) {
            if c.is_zero() {
                continue;
            }
            let neg = c < Scalar::zero();
            let mag = if neg { -c } else { c };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&fmt_scalar(&mag));
                out.push('*');
            }
            out.push_str(label.name());
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

pub fn standard_generator(label: GeneratorLabel) -> IsoAlgebraElement {
    use GeneratorLabel::*;
    match label {
        E1 => IsoAlgebraElement::translation(MinkVector::basis(1)),
        E2 => IsoAlgebraElement::translation(MinkVector::basis(2)),
        E3 => IsoAlgebraElement::translation(MinkVector::basis(3)),
        E4 => IsoAlgebraElement::translation(MinkVector::basis(4)),
        _ => IsoAlgebraElement::new(
            LorentzAlgebraElement { m: generator_matrix(label) },
            MinkVector::zero(),
        ),
    }
}

/// `[X + x, Y + y] = (XY - YX) + (Xy - Yx)`.
pub fn bracket(a: &IsoAlgebraElement, b: &IsoAlgebraElement) -> IsoAlgebraElement {
    IsoAlgebraElement {
        linear: a.linear.commutator(&b.linear),
        trans: &a.linear.apply(&b.trans) - &b.linear.apply(&a.trans),
    }
}

/// `Ad(U,u)(X + x) = UXU⁻¹ + (Ux - UXU⁻¹u)`.
pub fn adjoint(g: &Isometry, a: &IsoAlgebraElement) -> IsoAlgebraElement {
    let lin = a.linear.conjugate(&g.lin);
    let ux = g.lin.mul_vec(&a.trans);
    let trans = &ux - &lin.apply(&g.trans);
    IsoAlgebraElement { linear: lin, trans }
}

/// Value `Xp + x` at `p` of the Killing field generated by `a`.
pub fn fundamental_field(a: &IsoAlgebraElement, p: &MinkVector) -> MinkVector {
    &a.linear.apply(p) + &a.trans
}

/// Solution set of the lifting problem: translation parts `t_i` such that the
/// elements `X_i + t_i` together with a fixed translation subspace span a subalgebra.
#[derive(Clone, Debug)]
pub struct LiftSolution {
    pub proj_basis: Vec<LorentzAlgebraElement>,
    /// Unknowns are `t_1, ..., t_n` stacked (four coordinates each).
    pub solution: LinearSolution,
}

impl LiftSolution {
    pub fn unknowns(&self) -> usize {
        4 * self.proj_basis.len()
    }

    pub fn free_parameters(&self) -> usize {
        self.solution.kernel.len()
    }

    /// Kernel basis, each vector split into one translation per basis element.
    pub fn family(&self) -> Vec<Vec<MinkVector>> {
        self.solution.kernel.iter().map(|k| split_vectors(k)).collect()
    }
}

fn split_vectors(flat: &[Scalar]) -> Vec<MinkVector> {
    flat.chunks(4)
        .map(|c| MinkVector(std::array::from_fn(|i| c[i].clone())))
        .collect()
}

/// Writes the linear-part bracket `[X_i, X_j]` in the basis `proj`.
fn structure_in(proj: &[LorentzAlgebraElement]) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let n = proj.len();
    let cols: Vec<Vec<Scalar>> = proj.iter().map(|x| x.coords().to_vec()).collect();
    let a = Matrix::from_columns(6, &cols);
    if crate::linalg::rank(&a) != n {
        return Err(Error::DependentBasis);
    }
    let mut c = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = proj[i].commutator(&proj[j]);
            let sol = solve_linear(&a, &br.coords())?;
            match sol.particular {
                Some(x) => c[i][j] = x,
                None => {
                    return Err(Error::NotClosed {
                        left: i,
                        right: j,
                        bracket: IsoAlgebraElement::new(br, MinkVector::zero()).to_string(),
                    })
                }
            }
        }
    }
    Ok(c)
}

/// Rows `q` with `q·t = 0` for every `t` in `span(trans)`.
pub fn annihilator(trans: &[MinkVector]) -> Vec<Vec<Scalar>> {
    if trans.is_empty() {
        return (1..=4).map(|i| MinkVector::basis(i).0.to_vec()).collect();
    }
    let rows: Vec<Vec<Scalar>> = trans.iter().map(|v| v.0.to_vec()).collect();
    let m = Matrix::from_rows(4, &rows);
    solve_linear(&m, &vec![Scalar::zero(); rows.len()])
        .expect("shape is consistent")
        .kernel
}

/// Lifting constraints with no translation ideal.
pub fn lift_constraints(proj_basis: &[LorentzAlgebraElement]) -> Result<LiftSolution> {
    lift_constraints_mod(proj_basis, &[])
}

/// Imposes `X_i t_j - X_j t_i - Σ_k c_ijk t_k ∈ span(trans)` for all `i < j`.
pub fn lift_constraints_mod(
    proj_basis: &[LorentzAlgebraElement],
    trans: &[MinkVector],
) -> Result<LiftSolution> {
    let n = proj_basis.len();
    let c = structure_in(proj_basis)?;
    let q = annihilator(trans);
    let unknowns = 4 * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            // Map t ↦ X_i t_j - X_j t_i - Σ c_ijk t_k as a 4 × 4n block.
            let mut block = vec![vec![Scalar::zero(); unknowns]; 4];
            for r in 0..4 {
                for s in 0..4 {
                    block[r][4 * j + s] += &proj_basis[i].m.0[r][s];
                    block[r][4 * i + s] -= &proj_basis[j].m.0[r][s];
                }
                for (k, ck) in c[i][j].iter().enumerate() {
                    block[r][4 * k + r] -= ck;
                }
            }
            for qrow in &q {
                let row: Vec<Scalar> = (0..unknowns)
                    .map(|col| {
                        (0..4).fold(Scalar::zero(), |acc, r| acc + &qrow[r] * &block[r][col])
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    let solution = if rows.is_empty() {
        solve_linear(&Matrix::zeros(0, unknowns), &[])?
    } else {
        let b = vec![Scalar::zero(); rows.len()];
        solve_linear(&Matrix::from_rows(unknowns, &rows), &b)?
    };
    Ok(LiftSolution { proj_basis: proj_basis.to_vec(), solution })
}

/// A bracket relation between two linear generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureRelation {
    pub left: GeneratorLabel,
    pub right: GeneratorLabel,
    /// Coefficients over `(Yk1, Yk2, Yk3, Ya, Yn1, Yn2)`.
    pub coeffs: [i64; 6],
}

impl StructureRelation {
    pub fn as_element(&self) -> IsoAlgebraElement {
        let c: Vec<Scalar> = self.coeffs.iter().map(|&k| int(k)).collect();
        IsoAlgebraElement::new(LorentzAlgebraElement::from_coords(&c), MinkVector::zero())
    }
}

/// The published table of the 15 brackets between distinct linear generators.
pub fn printed_structure_table() -> Vec<StructureRelation> {
    use GeneratorLabel::*;
    let r = |left, right, coeffs| StructureRelation { left, right, coeffs };
    vec![
        r(Yk1, Yk2, [0, 0, -1, 0, 0, 0]),
        r(Yk1, Yk3, [0, 1, 0, 0, 0, 0]),
        r(Yk2, Yk3, [-1, 0, 0, 0, 0, 0]),
        r(Yk1, Yn1, [0, 0, 0, 0, 0, -1]),
        r(Yk1, Yn2, [0, 0, 0, 0, 1, 0]),
        r(Yk2, Yn1, [0, 0, 0, -1, 0, 0]),
        r(Yk2, Yn2, [-1, 0, 0, 0, 0, 0]),
        r(Yk3, Yn1, [1, 0, 0, 0, 0, 0]),
        r(Yk3, Yn2, [0, 0, 0, -1, 0, 0]),
        r(Yk1, Ya, [0, 0, 0, 0, 0, 0]),
        r(Yk2, Ya, [0, -1, 0, 0, 1, 0]),
        r(Yk3, Ya, [0, 0, -1, 0, 0, 1]),
        r(Ya, Yn1, [0, 0, 0, 0, -1, 0]),
        r(Ya, Yn2, [0, 0, 0, 0, 0, -1]),
        r(Yn1, Yn2, [0, 0, 0, 0, 0, 0]),
    ]
}

/// Structure constants recomputed from the generator matrices.
pub fn computed_structure_table() -> Vec<(GeneratorLabel, GeneratorLabel, IsoAlgebraElement)> {
    let labels = GeneratorLabel::LINEAR;
    let mut out = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            let b = bracket(&standard_generator(labels[i]), &standard_generator(labels[j]));
            out.push((labels[i], labels[j], b));
        }
    }
    out
}

/// A disagreement between the printed table and the matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub left: GeneratorLabel,
    pub right: GeneratorLabel,
    pub printed: IsoAlgebraElement,
    pub computed: IsoAlgebraElement,
}

impl fmt::Display for Erratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]: printed {}, matrices give {}",
            self.left, self.right, self.printed, self.computed
        )
    }
}

/// Compares every printed relation with the matrix computation. The matrices win.
pub fn structure_table_errata() -> Vec<Erratum> {
    printed_structure_table()
        .into_iter()
        .filter_map(|rel| {
            let computed =
                bracket(&standard_generator(rel.left), &standard_generator(rel.right));
            let printed = rel.as_element();
            (computed != printed).then(|| Erratum {
                left: rel.left,
                right: rel.right,
                printed,
                computed,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, same_span};
    use GeneratorLabel::*;

    fn g(l: GeneratorLabel) -> IsoAlgebraElement {
        standard_generator(l)
    }

    fn neg(a: &IsoAlgebraElement) -> IsoAlgebraElement {
        a.scale(&int(-1))
    }

    #[test]
    fn generators_are_eta_skew() {
        for l in GeneratorLabel::LINEAR {
            assert!(LorentzAlgebraElement::new(g(l).linear.matrix().clone()).is_ok(), "{l}");
        }
    }

    #[test]
    fn generator_matrices() {
        assert_eq!(g(Yk1).linear.matrix(), &(&Mat4::unit(1, 2) - &Mat4::unit(2, 1)));
        assert!(g(Yk1).trans.is_zero());
        assert_eq!(g(Ya).linear.matrix(), &(&Mat4::unit(3, 4) + &Mat4::unit(4, 3)));
        assert!(g(E4).linear.is_zero());
        assert_eq!(g(E4).trans, MinkVector::basis(4));
    }

    #[test]
    fn coords_round_trip() {
        for l in GeneratorLabel::ALL {
            let c = g(l).coords();
            assert_eq!(IsoAlgebraElement::from_coords(&c), g(l));
            assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&g(Yk1), &g(Yk2)), neg(&g(Yk3)));
        assert!(bracket(&g(Yn1), &g(Yn1)).is_zero());
        assert_eq!(bracket(&g(Ya), &g(Yn1)), neg(&g(Yn1)));
        assert_eq!(bracket(&g(Yk1), &g(E1)), neg(&g(E2)));
    }

    #[test]
    fn printed_table_matches_matrices() {
        let errata = structure_table_errata();
        assert!(errata.is_empty(), "{errata:?}");
        assert_eq!(printed_structure_table().len(), 15);
    }

    #[test]
    fn adjoint_examples() {
        let id = Isometry::identity();
        let a = g(Yn1).add(&g(E2).scale(&frac(3, 2)));
        assert_eq!(adjoint(&id, &a), a);

        let t = Isometry::translation(MinkVector::basis(3));
        assert_eq!(adjoint(&t, &g(Ya)), g(Ya).sub(&g(E4)));
    }

    #[test]
    fn rotation_lift_normalizes_by_translation() {
        // u = (u1,u2,0,0) with p = (u2,-u1,-v1,-x3); Ad((I,-p)) removes it.
        let (u1, u2, v1, x3) = (int(2), int(-3), int(5), frac(1, 2));
        let u = MinkVector([u1.clone(), u2.clone(), int(0), int(0)]);
        let p = MinkVector([u2, -u1, -v1, -x3]);
        let lifted = g(Yk1).add(&IsoAlgebraElement::translation(u));
        assert_eq!(adjoint(&Isometry::translation(-&p), &lifted), g(Yk1));
        assert_eq!(lifted.translate_conjugate(&p), g(Yk1));
    }

    #[test]
    fn fundamental_field_examples() {
        let p = MinkVector::from_ints([1, 2, 3, 5]);
        assert_eq!(fundamental_field(&g(Ya), &p), MinkVector::from_ints([0, 0, 5, 3]));
        assert_eq!(fundamental_field(&g(E2), &p), MinkVector::basis(2));
        assert_eq!(fundamental_field(&g(Yn1), &p), MinkVector::from_ints([8, 0, -1, 1]));
    }

    fn flat(ts: &[MinkVector]) -> Vec<Scalar> {
        ts.iter().flat_map(|t| t.0.iter().cloned()).collect()
    }

    fn v(c: [i64; 4]) -> MinkVector {
        MinkVector::from_ints(c)
    }

    #[test]
    fn lift_of_full_algebra() {
        let proj: Vec<_> = GeneratorLabel::LINEAR.iter().map(|&l| g(l).linear).collect();
        let lift = lift_constraints(&proj).unwrap();
        assert_eq!(lift.free_parameters(), 4);
        let z = [0, 0, 0, 0];
        // (u, v, w, x, y, z) for the parameters u1, u2, v1, x3.
        let expected = vec![
            flat(&[v([1, 0, 0, 0]), v(z), v([0, 0, -1, 0]), v(z), v(z), v([0, 0, -1, 1])]),
            flat(&[v([0, 1, 0, 0]), v([0, 0, 1, 0]), v(z), v(z), v([0, 0, 1, -1]), v(z)]),
            flat(&[v(z), v([1, 0, 0, 0]), v([0, 1, 0, 0]), v([0, 0, 0, 1]), v([1, 0, 0, 0]), v([0, 1, 0, 0])]),
            flat(&[v(z), v(z), v(z), v([0, 0, 1, 0]), v([1, 0, 0, 0]), v([0, 1, 0, 0])]),
        ];
        assert!(same_span(&lift.solution.kernel, &expected, 24));
    }

    #[test]
    fn lift_of_k1_a_n() {
        let proj: Vec<_> = [Yk1, Ya, Yn1, Yn2].iter().map(|&l| g(l).linear).collect();
        let lift = lift_constraints(&proj).unwrap();
        let z = [0, 0, 0, 0];
        // u = (u1,u2,0,0), x = (0,0,x3,x4), y = (x3+x4,0,u2,-u2), z = (0,x3+x4,-u1,u1).
        let expected = vec![
            flat(&[v([1, 0, 0, 0]), v(z), v(z), v([0, 0, -1, 1])]),
            flat(&[v([0, 1, 0, 0]), v(z), v([0, 0, 1, -1]), v(z)]),
            flat(&[v(z), v([0, 0, 1, 0]), v([1, 0, 0, 0]), v([0, 1, 0, 0])]),
            flat(&[v(z), v([0, 0, 0, 1]), v([1, 0, 0, 0]), v([0, 1, 0, 0])]),
        ];
        assert!(same_span(&lift.solution.kernel, &expected, 16));
    }

    #[test]
    fn lift_of_empty_projection() {
        let lift = lift_constraints(&[]).unwrap();
        assert_eq!(lift.unknowns(), 0);
        assert_eq!(lift.free_parameters(), 0);
    }

    #[test]
    fn lift_rejects_non_subalgebra() {
        let proj = vec![g(Yk1).linear, g(Yn1).linear];
        assert!(matches!(lift_constraints(&proj), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn cartan_involution_fixes_k() {
        for l in GeneratorLabel::LINEAR {
            let x = g(l).linear;
            let th = x.cartan_involution();
            if K.contains(&l) {
                assert_eq!(th, x);
            } else {
                assert_ne!(th, x);
                // p-component is negated: θ(X) + X lies in k.
                let sum = LorentzAlgebraElement { m: &th.m + &x.m };
                assert_eq!(sum.cartan_involution(), sum);
            }
        }
        // Ya spans the p-part of a exactly.
        assert_eq!(g(Ya).linear.cartan_involution(), g(Ya).linear.scale(&int(-1)));
    }

    #[test]
    fn display_is_readable() {
        let a = g(Ya).add(&g(E1).scale(&frac(1, 2)));
        assert_eq!(a.to_string(), "Ya + 1/2*e1");
        assert_eq!(neg(&g(Yn2)).to_string(), "-Yn2");
        assert_eq!(IsoAlgebraElement::zero().to_string(), "0");
    }
}
