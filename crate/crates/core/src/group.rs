//! The isometry group `O(3,1) ⋉ R^{3,1}` and exponentials of algebra elements.

use num_traits::{One, Signed, Zero};

use crate::algebra::IsoAlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::{int, to_f64, Mat4, MinkVector, Scalar};

pub type Mat4f = [[f64; 4]; 4];
pub type Vec4f = [f64; 4];

/// Exact isometry `(V, v)` acting by `p ↦ Vp + v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub lin: Mat4,
    pub trans: MinkVector,
}

impl Isometry {
    /// Fails if `lin` does not preserve the Minkowski form.
    pub fn new(lin: Mat4, trans: MinkVector) -> Result<Self> {
        if lin.is_lorentz() {
            Ok(Isometry { lin, trans })
        } else {
            Err(Error::Parse(format!("{lin} is not a Lorentz matrix")))
        }
    }

    pub fn identity() -> Self {
        Isometry { lin: Mat4::identity(), trans: MinkVector::zero() }
    }

    pub fn translation(v: MinkVector) -> Self {
        Isometry { lin: Mat4::identity(), trans: v }
    }

    pub fn linear(lin: Mat4) -> Self {
        Isometry { lin, trans: MinkVector::zero() }
    }

    /// `(V,v)(U,u) = (VU, v + Vu)`.
    pub fn compose(&self, h: &Isometry) -> Isometry {
        Isometry { lin: &self.lin * &h.lin, trans: &self.trans + &self.lin.mul_vec(&h.trans) }
    }

    /// `(V,v)⁻¹ = (V⁻¹, -V⁻¹v)` with `V⁻¹ = ηVᵗη`.
    pub fn invert(&self) -> Isometry {
        let inv = self.lin.lorentz_inverse();
        let trans = -&inv.mul_vec(&self.trans);
        Isometry { lin: inv, trans }
    }

    pub fn act(&self, p: &MinkVector) -> MinkVector {
        &self.lin.mul_vec(p) + &self.trans
    }

    pub fn is_lorentz(&self) -> bool {
        self.lin.is_lorentz()
    }

    pub fn to_numeric(&self) -> NumericIsometry {
        NumericIsometry { lin: self.lin.to_f64(), trans: self.trans.to_f64() }
    }
}

/// Floating-point isometry, used for transcendental exponentials and witness sequences.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericIsometry {
    pub lin: Mat4f,
    pub trans: Vec4f,
}

const ETA: Vec4f = [1.0, 1.0, 1.0, -1.0];

fn matmul(a: &Mat4f, b: &Mat4f) -> Mat4f {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

fn matvec(a: &Mat4f, v: &Vec4f) -> Vec4f {
    std::array::from_fn(|i| (0..4).map(|k| a[i][k] * v[k]).sum())
}

impl NumericIsometry {
    pub fn identity() -> Self {
        NumericIsometry {
            lin: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 })),
            trans: [0.0; 4],
        }
    }

    pub fn translation(v: Vec4f) -> Self {
        NumericIsometry { trans: v, ..Self::identity() }
    }

    pub fn compose(&self, h: &NumericIsometry) -> NumericIsometry {
        let mv = matvec(&self.lin, &h.trans);
        NumericIsometry {
            lin: matmul(&self.lin, &h.lin),
            trans: std::array::from_fn(|i| self.trans[i] + mv[i]),
        }
    }

    pub fn invert(&self) -> NumericIsometry {
        let inv: Mat4f =
            std::array::from_fn(|i| std::array::from_fn(|j| ETA[i] * self.lin[j][i] * ETA[j]));
        let t = matvec(&inv, &self.trans);
        NumericIsometry { lin: inv, trans: t.map(|x| -x) }
    }

    pub fn act(&self, p: &Vec4f) -> Vec4f {
        let v = matvec(&self.lin, p);
        std::array::from_fn(|i| v[i] + self.trans[i])
    }

    /// Largest entry of `|VᵗηV - η|`, relative to the size of `V`.
    pub fn lorentz_defect(&self) -> f64 {
        let v = &self.lin;
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let s: f64 = (0..4).map(|k| v[k][i] * ETA[k] * v[k][j]).sum();
                let target = if i == j { ETA[i] } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst / self.linear_norm().powi(2).max(1.0)
    }

    /// Operator sup-norm (maximum absolute row sum) of the linear part.
    pub fn linear_norm(&self) -> f64 {
        self.lin.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn translation_norm(&self) -> f64 {
        self.trans.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &NumericIsometry, tol: f64) -> bool {
        let scale = 1.0 + self.linear_norm().max(other.linear_norm());
        (0..4).all(|i| {
            (self.trans[i] - other.trans[i]).abs() <= tol * scale
                && (0..4).all(|j| (self.lin[i][j] - other.lin[i][j]).abs() <= tol * scale)
        })
    }
}

/// An isometry in either arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum IsometryElement {
    Exact(Isometry),
    Numeric(NumericIsometry),
}

impl IsometryElement {
    pub fn compose(&self, h: &IsometryElement) -> Result<IsometryElement> {
        match (self, h) {
            (Self::Exact(a), Self::Exact(b)) => Ok(Self::Exact(a.compose(b))),
            (Self::Numeric(a), Self::Numeric(b)) => Ok(Self::Numeric(a.compose(b))),
            _ => Err(Error::VariantMismatch),
        }
    }

    pub fn invert(&self) -> IsometryElement {
        match self {
            Self::Exact(a) => Self::Exact(a.invert()),
            Self::Numeric(a) => Self::Numeric(a.invert()),
        }
    }

    pub fn to_numeric(&self) -> NumericIsometry {
        match self {
            Self::Exact(a) => a.to_numeric(),
            Self::Numeric(a) => a.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Isometry> {
        match self {
            Self::Exact(a) => Some(a),
            Self::Numeric(_) => None,
        }
    }

    pub fn act_f64(&self, p: &Vec4f) -> Vec4f {
        self.to_numeric().act(p)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact(_))
    }
}

fn is_nilpotent(x: &Mat4) -> bool {
    let x2 = x * x;
    (&x2 * &x2).is_zero()
}

/// Returns `κ` with `X³ = κX`, if such a rational exists and `X ≠ 0`.
pub fn cubic_ratio(x: &Mat4) -> Option<Scalar> {
    let x3 = &(x * x) * x;
    let (i, j) = (0..16).map(|k| (k / 4, k % 4)).find(|&(i, j)| !x.0[i][j].is_zero())?;
    let kappa = &x3.0[i][j] / &x.0[i][j];
    (x3 == x.scale(&kappa)).then_some(kappa)
}

/// `exp(t·a)` for nilpotent linear part: both series terminate.
fn exp_nilpotent_exact(a: &IsoAlgebraElement, t: &Scalar) -> Isometry {
    let x = a.linear.matrix().scale(t);
    let v = a.trans.scale(t);
    let mut lin = Mat4::identity();
    let mut trans = MinkVector::zero();
    let mut power = Mat4::identity(); // X^k
    let mut fact = Scalar::one(); // k!
    for k in 0..5 {
        // translation term X^k v / (k+1)!
        let next_fact = &fact * int(k + 1);
        trans = &trans + &power.mul_vec(&v).scale(&next_fact.recip());
        if k > 0 {
            lin = &lin + &power.scale(&fact.recip());
        }
        power = &power * &x;
        fact = next_fact;
        if power.is_zero() && k > 0 {
            // remaining translation term uses the power just computed, which is zero
            break;
        }
    }
    Isometry { lin, trans }
}

/// Exponential of `t·a` via the 5×5 homogeneous embedding.
///
/// The result is exact whenever the series terminates (nilpotent linear part)
/// and numeric otherwise.
pub fn exp_element(a: &IsoAlgebraElement, t: &Scalar) -> IsometryElement {
    if t.is_zero() || is_nilpotent(a.linear.matrix()) {
        IsometryElement::Exact(exp_nilpotent_exact(a, t))
    } else {
        IsometryElement::Numeric(exp_element_f64(a, to_f64(t)))
    }
}

fn mat_f64_scaled(x: &Mat4, c: f64) -> Mat4f {
    let m = x.to_f64();
    m.map(|r| r.map(|e| e * c))
}

fn add_scaled(acc: &mut Mat4f, m: &Mat4f, c: f64) {
    for i in 0..4 {
        for j in 0..4 {
            acc[i][j] += c * m[i][j];
        }
    }
}

/// Floating-point `exp(t·a)`. Closed forms are used for nilpotent, elliptic
/// (`X³ = -c²X`) and hyperbolic (`X³ = c²X`) linear parts; anything else goes
/// through scaling and squaring of the homogeneous 5×5 matrix.
pub fn exp_element_f64(a: &IsoAlgebraElement, t: f64) -> NumericIsometry {
    let x = a.linear.matrix();
    let xf = mat_f64_scaled(x, 1.0);
    let x2f = matmul(&xf, &xf);
    let v = a.trans.to_f64();
    let id = NumericIsometry::identity().lin;

    // exp(tX) = I + f(t) X + g(t) X²; ∫₀ᵗ exp(sX) ds = tI + F(t) X + G(t) X².
    let coeffs = if x.is_zero() {
        Some((0.0, 0.0, 0.0, 0.0))
    } else if is_nilpotent(x) {
        if (&(x * x) * x).is_zero() {
            Some((t, t * t / 2.0, t * t / 2.0, t * t * t / 6.0))
        } else {
            None
        }
    } else if let Some(kappa) = cubic_ratio(x) {
        let c = to_f64(&kappa.abs()).sqrt();
        let ct = c * t;
        if kappa.is_negative() {
            Some((
                ct.sin() / c,
                (1.0 - ct.cos()) / (c * c),
                (1.0 - ct.cos()) / (c * c),
                (t - ct.sin() / c) / (c * c),
            ))
        } else {
            Some((
                ct.sinh() / c,
                (ct.cosh() - 1.0) / (c * c),
                (ct.cosh() - 1.0) / (c * c),
                (ct.sinh() / c - t) / (c * c),
            ))
        }
    } else {
        None
    };

    match coeffs {
        Some((f, g, big_f, big_g)) => {
            let mut lin = id;
            add_scaled(&mut lin, &xf, f);
            add_scaled(&mut lin, &x2f, g);
            let mut integral = id.map(|r| r.map(|e| e * t));
            add_scaled(&mut integral, &xf, big_f);
            add_scaled(&mut integral, &x2f, big_g);
            NumericIsometry { lin, trans: matvec(&integral, &v) }
        }
        None => exp_scaling_squaring(a, t),
    }
}

type Mat5f = [[f64; 5]; 5];

fn mul5(a: &Mat5f, b: &Mat5f) -> Mat5f {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..5).map(|k| a[i][k] * b[k][j]).sum()))
}

/// Reference exponential: Taylor series on a scaled 5×5 matrix, squared back up.
pub fn exp_scaling_squaring(a: &IsoAlgebraElement, t: f64) -> NumericIsometry {
    let x = a.linear.matrix().to_f64();
    let v = a.trans.to_f64();
    let mut m: Mat5f = [[0.0; 5]; 5];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = t * x[i][j];
        }
        m[i][4] = t * v[i];
    }
    let norm = m.iter().map(|r| r.iter().map(|e| e.abs()).sum::<f64>()).fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scale = 0.5f64.powi(squarings);
    let b = m.map(|r| r.map(|e| e * scale));
    let mut result: Mat5f = std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as u8 as f64));
    let mut term = result;
    for k in 1..=24 {
        term = mul5(&term, &b).map(|r| r.map(|e| e / k as f64));
        for i in 0..5 {
            for j in 0..5 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mul5(&result, &result);
    }
    NumericIsometry {
        lin: std::array::from_fn(|i| std::array::from_fn(|j| result[i][j])),
        trans: std::array::from_fn(|i| result[i][4]),
    }
}

/// Numeric adjoint action `Ad(g)(a)` as (linear matrix, translation).
pub fn adjoint_numeric(g: &NumericIsometry, a: &IsoAlgebraElement) -> (Mat4f, Vec4f) {
    let inv = g.invert().lin;
    let x = a.linear.matrix().to_f64();
    let lin = matmul(&matmul(&g.lin, &x), &inv);
    let ux = matvec(&g.lin, &a.trans.to_f64());
    let xu = matvec(&lin, &g.trans);
    (lin, std::array::from_fn(|i| ux[i] - xu[i]))
}

/// Rotation in the spatial coordinate plane `(i, j)` with `tan(θ/2) = m`.
/// Equals `exp(θ(E_ij - E_ji))` exactly, with rational entries.
pub fn rational_rotation(i: usize, j: usize, m: &Scalar) -> Mat4 {
    assert!(i != j && (1..=3).contains(&i) && (1..=3).contains(&j));
    let d = Scalar::one() + m * m;
    let c = (Scalar::one() - m * m) / &d;
    let s = (int(2) * m) / &d;
    let mut r = Mat4::identity();
    r.0[i - 1][i - 1] = c.clone();
    r.0[j - 1][j - 1] = c;
    r.0[i - 1][j - 1] = s.clone();
    r.0[j - 1][i - 1] = -s;
    r
}

/// Boost in the `(e_i, e4)` plane with `tanh(t/2) = m`, `|m| < 1`.
/// For `i = 3` this is `exp(t·Ya)` exactly.
pub fn rational_boost(i: usize, m: &Scalar) -> Mat4 {
    assert!((1..=3).contains(&i));
    assert!(m.abs() < Scalar::one(), "boost parameter must satisfy |m| < 1");
    let d = Scalar::one() - m * m;
    let ch = (Scalar::one() + m * m) / &d;
    let sh = (int(2) * m) / &d;
    let mut r = Mat4::identity();
    r.0[i - 1][i - 1] = ch.clone();
    r.0[3][3] = ch;
    r.0[i - 1][3] = sh.clone();
    r.0[3][i - 1] = sh;
    r
}

/// Rotation of `R³ ⊂ R^{3,1}` from the Cayley transform of the axis vector `w`.
pub fn cayley_rotation(w: &[Scalar; 3]) -> Mat4 {
    let n2 = w.iter().fold(Scalar::zero(), |acc, x| acc + x * x);
    let k = int(2) / (Scalar::one() + n2);
    // W = [w]_× acting on the first three coordinates.
    let mut wm = Mat4::zero();
    wm.0[0][1] = -w[2].clone();
    wm.0[0][2] = w[1].clone();
    wm.0[1][0] = w[2].clone();
    wm.0[1][2] = -w[0].clone();
    wm.0[2][0] = -w[1].clone();
    wm.0[2][1] = w[0].clone();
    let w2 = &wm * &wm;
    &Mat4::identity() + &(&wm + &w2).scale(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{standard_generator, GeneratorLabel::*};
    use crate::linalg::frac;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn compose_examples() {
        let v = MinkVector::from_ints([1, 2, 3, 4]);
        let u = MinkVector::from_ints([0, -1, 5, 1]);
        let tv = Isometry::translation(v.clone());
        let tu = Isometry::translation(u.clone());
        assert_eq!(tv.compose(&tu), Isometry::translation(&v + &u));

        let rot = Isometry::linear(rational_rotation(1, 2, &frac(1, 3)));
        let c = rot.compose(&tu);
        assert_eq!(c, Isometry { lin: rot.lin.clone(), trans: rot.lin.mul_vec(&u) });

        let g = Isometry { lin: rational_boost(3, &frac(1, 2)), trans: v };
        assert_eq!(g.compose(&g.invert()), Isometry::identity());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Isometry::identity().invert(), Isometry::identity());
        let v = MinkVector::from_ints([1, -2, 0, 7]);
        assert_eq!(Isometry::translation(v.clone()).invert(), Isometry::translation(-&v));

        let ya = standard_generator(Ya);
        let g = exp_element(&ya, &int(2)).to_numeric();
        let h = exp_element(&ya, &int(-2)).to_numeric();
        assert!(g.compose(&h).approx_eq(&NumericIsometry::identity(), 1e-12));
        assert!(g.invert().approx_eq(&h, 1e-12));
    }

    #[test]
    fn variant_mismatch() {
        let e = IsometryElement::Exact(Isometry::identity());
        let n = IsometryElement::Numeric(NumericIsometry::identity());
        assert_eq!(e.compose(&n), Err(Error::VariantMismatch));
    }

    #[test]
    fn act_examples() {
        let v = MinkVector::from_ints([1, 1, 0, 2]);
        let p = MinkVector::from_ints([3, 0, 1, 1]);
        assert_eq!(Isometry::translation(v.clone()).act(&p), &p + &v);

        let t = 0.7f64;
        let g = exp_element_f64(&standard_generator(Ya), t);
        let q = g.act(&[0.0, 0.0, 1.0, 0.0]);
        assert!(close(q[2], t.cosh()) && close(q[3], t.sinh()) && q[0] == 0.0 && q[1] == 0.0);
    }

    #[test]
    fn null_rotation_family_at_origin() {
        // (C_{t,s}, c_{t,s,v}) with C_{t,s} = exp(tYn1 + sYn2).
        let (t, s, v, lambda, mu) = (int(2), frac(-1, 3), int(5), int(1), int(3));
        let x = standard_generator(Yn1).scale(&t).add(&standard_generator(Yn2).scale(&s));
        let c = MinkVector([&lambda * &s, &lambda * &t + &mu * &s, v.clone(), -v]);
        let lin = exp_element(&x, &int(1)).as_exact().unwrap().clone();
        let q = (&t * &t + &s * &s) / int(2);
        let one = Scalar::one();
        let printed = Mat4([
            [one.clone(), int(0), t.clone(), t.clone()],
            [int(0), one.clone(), s.clone(), s.clone()],
            [-t.clone(), -s.clone(), &one - &q, -q.clone()],
            [t.clone(), s.clone(), q.clone(), &one + &q],
        ]);
        assert_eq!(lin.lin, printed);
        let g = Isometry::translation(c.clone()).compose(&lin);
        assert_eq!(g.act(&MinkVector::zero()), c);
    }

    #[test]
    fn exp_of_yn1_matches_closed_form() {
        let t = frac(3, 2);
        let g = exp_element(&standard_generator(Yn1), &t);
        let IsometryElement::Exact(g) = g else { panic!("expected exact result") };
        let h = &t * &t / int(2);
        let one = Scalar::one();
        let expected = Mat4([
            [one.clone(), int(0), t.clone(), t.clone()],
            [int(0), one.clone(), int(0), int(0)],
            [-t.clone(), int(0), &one - &h, -h.clone()],
            [t.clone(), int(0), h.clone(), &one + &h],
        ]);
        assert_eq!(g.lin, expected);
        assert!(g.trans.is_zero());
    }

    #[test]
    fn exp_at_zero_is_identity() {
        for l in crate::algebra::GeneratorLabel::ALL {
            let g = exp_element(&standard_generator(l), &int(0));
            assert_eq!(g, IsometryElement::Exact(Isometry::identity()));
        }
    }

    #[test]
    fn exp_translation_part_of_affine_null_rotation() {
        // exp(t(Yn1 + μ e4)) has translation μ(t²/2, 0, -t³/6, t + t³/6).
        let mu = int(2);
        let t = int(3);
        let a = standard_generator(Yn1).add(&standard_generator(E4).scale(&mu));
        let g = exp_element(&a, &t);
        let IsometryElement::Exact(g) = g else { panic!() };
        let t3 = &t * &t * &t / int(6);
        let expected = MinkVector([
            &mu * &t * &t / int(2),
            int(0),
            -&mu * &t3,
            &mu * (&t + &t3),
        ]);
        assert_eq!(g.trans, expected);
    }

    #[test]
    fn closed_forms_match_scaling_and_squaring() {
        let elems = [
            standard_generator(Yk1).add(&standard_generator(E3).scale(&int(2))),
            standard_generator(Ya).add(&standard_generator(E1)),
            standard_generator(Yk2).scale(&int(3)).add(&standard_generator(E4)),
            standard_generator(Yn2).add(&standard_generator(E2).scale(&int(-1))),
            standard_generator(Yk1).add(&standard_generator(Ya)),
        ];
        for a in &elems {
            for t in [-1.3, 0.2, 2.5] {
                let g = exp_element_f64(a, t);
                let r = exp_scaling_squaring(a, t);
                assert!(g.approx_eq(&r, 1e-10), "{a} at {t}: {g:?} vs {r:?}");
                assert!(g.lorentz_defect() < 1e-9);
            }
        }
    }

    #[test]
    fn rational_parameterizations_are_exponentials() {
        let m = frac(1, 2);
        let rot = rational_rotation(1, 2, &m);
        assert!(rot.is_lorentz());
        let theta = 2.0 * 0.5f64.atan();
        let g = exp_element_f64(&standard_generator(Yk1), theta);
        assert!(Isometry::linear(rot).to_numeric().approx_eq(&g, 1e-12));

        let boost = rational_boost(3, &m);
        assert!(boost.is_lorentz());
        let t = 2.0 * 0.5f64.atanh();
        let g = exp_element_f64(&standard_generator(Ya), t);
        assert!(Isometry::linear(boost).to_numeric().approx_eq(&g, 1e-12));

        let c = cayley_rotation(&[int(1), frac(-2, 3), int(3)]);
        assert!(c.is_lorentz());
    }
}
