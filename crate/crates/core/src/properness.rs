//! Properness evidence: fixed-point certificates, divergent witness sequences
//! and exact parameter recovery for proper actions.

use std::fmt;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::IsoAlgebraElement;
use crate::catalog::{CatalogEntry, ExpectedProperness, Param, Params, RecoveryKind, WitnessPlan};
use crate::error::{Error, Result};
use crate::group::{
    cayley_rotation, exp_element, exp_element_f64, rational_rotation, Isometry, IsometryElement,
    NumericIsometry, Vec4f,
};
use crate::linalg::{frac, int, solve_linear, to_f64, Mat4, Matrix, MinkVector, Scalar};
use crate::orbit::random_rational_point;
use crate::subalgebra::{one_param_type, split_parts, OneParamType, Subalgebra};

/// An element of non-compact type with a zero of its Killing field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointCertificate {
    pub coefficients: Vec<i64>,
    #[serde(serialize_with = "display_ser")]
    pub element: IsoAlgebraElement,
    pub kind: OneParamType,
    pub point: MinkVector,
}

fn display_ser<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Coefficient vectors in `{-2..2}^n \ {0}`, smallest support first.
fn small_combinations(n: usize) -> Vec<Vec<i64>> {
    let total = 5usize.pow(n as u32);
    let values = [0i64, 1, -1, 2, -2];
    let mut out: Vec<Vec<i64>> = (1..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let v = values[idx % 5];
                    idx /= 5;
                    v
                })
                .collect()
        })
        .collect();
    out.sort_by_key(|c| {
        (c.iter().filter(|x| **x != 0).count(), c.iter().map(|x| x.abs()).sum::<i64>(), c.clone())
    });
    out
}

/// Searches small integer combinations for a hyperbolic or parabolic element
/// whose field `Xp + x` vanishes somewhere. The closed subgroup it generates is
/// non-compact and fixes that point, so the action is not proper.
pub fn fixed_point_nonproper_certificate(h: &Subalgebra) -> Option<FixedPointCertificate> {
    for c in small_combinations(h.dim()) {
        let scalars: Vec<Scalar> = c.iter().map(|&x| int(x)).collect();
        let a = IsoAlgebraElement::combination(&scalars, h.basis());
        let kind = one_param_type(&a.linear);
        if !matches!(kind, OneParamType::Hyperbolic | OneParamType::Parabolic) {
            continue;
        }
        if let Some(point) = field_zero(&a) {
            return Some(FixedPointCertificate { coefficients: c, element: a, kind, point });
        }
    }
    None
}

/// A solution of `Xp = -x`, if any.
pub fn field_zero(a: &IsoAlgebraElement) -> Option<MinkVector> {
    let m = a.linear.matrix();
    let rows: Vec<Vec<Scalar>> = m.0.iter().map(|r| r.to_vec()).collect();
    let rhs: Vec<Scalar> = a.trans.0.iter().map(|x| -x).collect();
    let sol = solve_linear(&Matrix::from_rows(4, &rows), &rhs).ok()?;
    sol.particular.map(|x| MinkVector(std::array::from_fn(|i| x[i].clone())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Schedule {
    /// `t_n = n`
    Linear,
    /// `t_n = ln(1 + n)`, keeping hyperbolic growth polynomial in `n`.
    Logarithmic,
    /// `t_n = 1 - 1/n`, a convergent control sequence.
    Bounded,
}

impl Schedule {
    fn at(self, n: u64) -> f64 {
        match self {
            Schedule::Linear => n as f64,
            Schedule::Logarithmic => (1.0 + n as f64).ln(),
            Schedule::Bounded => 1.0 - 1.0 / n as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum WitnessKind {
    /// `g_n = exp(t_n a)` acting on a fixed point of `a`.
    OneParameter {
        #[serde(serialize_with = "display_ser")]
        element: IsoAlgebraElement,
        point: Vec4f,
        schedule: Schedule,
    },
    /// `g_n = (C_{t_n,s_n}, (λ s_n, λ t_n + μ s_n, v_n, -v_n))` acting on `(0,0,α,0)`.
    NilpotentPair { lambda: f64, mu: f64, alpha: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessSequence {
    pub description: String,
    pub kind: WitnessKind,
}

impl WitnessSequence {
    /// The pair `(g_n, X_n)`.
    pub fn at(&self, n: u64) -> (NumericIsometry, Vec4f) {
        match &self.kind {
            WitnessKind::OneParameter { element, point, schedule } => {
                (exp_element_f64(element, schedule.at(n)), *point)
            }
            WitnessKind::NilpotentPair { lambda, mu, alpha } => {
                let t = (alpha + mu) * n as f64;
                let s = -lambda * n as f64;
                let q = (t * t + s * s) / 2.0;
                let v = alpha * q;
                let lin = [
                    [1.0, 0.0, t, t],
                    [0.0, 1.0, s, s],
                    [-t, -s, 1.0 - q, -q],
                    [t, s, q, 1.0 + q],
                ];
                let trans = [lambda * s, lambda * t + mu * s, v, -v];
                (NumericIsometry { lin, trans }, [0.0, 0.0, *alpha, 0.0])
            }
        }
    }
}

/// Witness for a non-proper entry, following its declared plan.
pub fn build_witness(entry: &CatalogEntry, params: &Params) -> Result<WitnessSequence> {
    match entry.expected(params).properness {
        ExpectedProperness::Proper(_) => Err(Error::ProperEntry(entry.id.to_string())),
        ExpectedProperness::NotApplicable => {
            Err(Error::WitnessFailed(format!("{} is not a cohomogeneity-one entry", entry.id)))
        }
        ExpectedProperness::NonProper(WitnessPlan::NilpotentPair) => {
            let lambda = to_f64(&params.get(Param::Lambda));
            let mu = to_f64(&params.get(Param::Mu));
            let alpha = (-mu + (mu * mu + 4.0 * lambda * lambda).sqrt()) / 2.0;
            Ok(WitnessSequence {
                description: format!(
                    "g_n = (C_(t_n,s_n), (lambda s_n, lambda t_n + mu s_n, v_n, -v_n)) with t_n = {:.6} n, s_n = {:.6} n, X_n = (0,0,{alpha:.6},0)",
                    alpha + mu,
                    -lambda
                ),
                kind: WitnessKind::NilpotentPair { lambda, mu, alpha },
            })
        }
        ExpectedProperness::NonProper(WitnessPlan::FixedPoint) => {
            let h = entry.subalgebra(params)?;
            let cert = fixed_point_nonproper_certificate(&h).ok_or_else(|| {
                Error::WitnessFailed(format!("no fixed-point certificate found for {}", entry.id))
            })?;
            Ok(fixed_point_witness(&cert))
        }
    }
}

pub fn fixed_point_witness(cert: &FixedPointCertificate) -> WitnessSequence {
    let schedule = match cert.kind {
        OneParamType::Hyperbolic => Schedule::Logarithmic,
        _ => Schedule::Linear,
    };
    let t = match schedule {
        Schedule::Logarithmic => "ln(1+n)",
        _ => "n",
    };
    WitnessSequence {
        description: format!("g_n = exp({t} ({})), X_n = {}", cert.element, cert.point),
        kind: WitnessKind::OneParameter { element: cert.element.clone(), point: cert.point.to_f64(), schedule },
    }
}

/// A convergent sequence in the group, used as a control on proper entries.
pub fn bounded_sequence(a: &IsoAlgebraElement) -> WitnessSequence {
    WitnessSequence {
        description: format!("g_n = exp((1 - 1/n) ({a})), X_n = 0"),
        kind: WitnessKind::OneParameter { element: a.clone(), point: [0.0; 4], schedule: Schedule::Bounded },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessCheck {
    pub indices: Vec<u64>,
    pub linear_norms: Vec<f64>,
    pub translation_norms: Vec<f64>,
    pub limit_x: Vec4f,
    pub limit_gx: Vec4f,
}

fn dist(a: &Vec4f, b: &Vec4f) -> f64 {
    (0..4).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

fn diverges(v: &[f64]) -> bool {
    let (first, last) = (v[0], v[v.len() - 1]);
    let tail = &v[v.len() / 2..];
    last > 10.0 * first.max(1e-12) && tail.windows(2).all(|w| w[1] >= w[0])
}

/// Evaluates the sequence at `n = 1, 2, 4, ... ≤ steps` and checks that `g_n`
/// leaves every compact set while `X_n` and `g_n X_n` both converge.
pub fn check_witness(seq: &WitnessSequence, steps: usize, tol: f64) -> Result<WitnessCheck> {
    if steps < 8 {
        return Err(Error::WitnessFailed(format!("need at least 8 steps, got {steps}")));
    }
    let indices: Vec<u64> = std::iter::successors(Some(1u64), |n| Some(n * 2)).take_while(|n| *n <= steps as u64).collect();
    let mut linear_norms = Vec::new();
    let mut translation_norms = Vec::new();
    let mut xs = Vec::new();
    let mut gxs = Vec::new();
    for &n in &indices {
        let (g, x) = seq.at(n);
        linear_norms.push(g.linear_norm());
        translation_norms.push(g.translation_norm());
        gxs.push(g.act(&x));
        xs.push(x);
    }
    if !diverges(&linear_norms) && !diverges(&translation_norms) {
        return Err(Error::WitnessFailed(format!(
            "divergence: norms stay bounded (linear {:.3e} -> {:.3e}, translation {:.3e} -> {:.3e})",
            linear_norms[0],
            linear_norms[linear_norms.len() - 1],
            translation_norms[0],
            translation_norms[translation_norms.len() - 1]
        )));
    }
    let tail = indices.len() / 2;
    for (name, seq) in [("X_n", &xs), ("g_n X_n", &gxs)] {
        let worst = seq[tail..].windows(2).map(|w| dist(&w[0], &w[1])).fold(0.0, f64::max);
        if worst > tol {
            return Err(Error::WitnessFailed(format!("{name} is not Cauchy: tail step {worst:.3e} > {tol:.1e}")));
        }
    }
    Ok(WitnessCheck {
        indices,
        linear_norms,
        translation_norms,
        limit_x: *xs.last().unwrap(),
        limit_gx: *gxs.last().unwrap(),
    })
}

fn random_rational(rng: &mut impl Rng, max: i64) -> Scalar {
    let d: i64 = rng.gen_range(1..=9);
    frac(rng.gen_range(-max * d..=max * d), d)
}

/// Random point of the translation subspace spanned by `basis`.
fn random_translation(rng: &mut impl Rng, basis: &[MinkVector]) -> MinkVector {
    basis.iter().fold(MinkVector::zero(), |acc, b| &acc + &b.scale(&random_rational(rng, 5)))
}

/// Samples group elements of a proper entry, maps random points, and recovers
/// the group element from `(X, Y)` alone; every trial must match.
pub fn parameter_recovery_check(entry: &CatalogEntry, params: &Params, seed: u64, trials: usize) -> Result<usize> {
    let kind = match entry.expected(params).properness {
        ExpectedProperness::Proper(k) => k,
        _ => return Err(Error::RecoveryMismatch(format!("{} is not declared proper", entry.id))),
    };
    let h = entry.subalgebra(params)?;
    let parts = split_parts(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let x = random_rational_point(&mut rng);
        match kind {
            RecoveryKind::Compact => {
                let lin = match parts.projection.len() {
                    0 => Mat4::identity(),
                    1 => rational_rotation(1, 2, &random_rational(&mut rng, 3)),
                    _ => cayley_rotation(&std::array::from_fn(|_| random_rational(&mut rng, 3))),
                };
                let v = random_translation(&mut rng, &parts.translations);
                let g = Isometry::new(lin.clone(), v.clone())?;
                let y = g.act(&x);
                let recovered = &y - &lin.mul_vec(&x);
                let bounded = lin.0.iter().flatten().all(|c| c.abs() <= int(1));
                if recovered != v || !bounded {
                    return Err(Error::RecoveryMismatch(format!("trial {trial}: translation {recovered} vs {v}")));
                }
            }
            RecoveryKind::Boost => {
                let lambda = params.get(Param::Lambda);
                let lf = to_f64(&lambda);
                let (t, s, w) = (
                    to_f64(&random_rational(&mut rng, 3)),
                    to_f64(&random_rational(&mut rng, 5)),
                    to_f64(&random_rational(&mut rng, 5)),
                );
                let gen = &h.basis()[0];
                let g = NumericIsometry::translation([0.0, s, w, -w]).compose(&exp_element_f64(gen, t));
                let xf = x.to_f64();
                let y = g.act(&xf);
                let t2 = (y[0] - xf[0]) / lf;
                let s2 = y[1] - xf[1];
                let w2 = y[2] - t2.cosh() * xf[2] - t2.sinh() * xf[3];
                let err = [(t2 - t).abs(), (s2 - s).abs(), (w2 - w).abs()];
                let scale = 1.0 + xf.iter().fold(0.0f64, |m, c| m.max(c.abs())) * t.abs().cosh();
                if err.iter().any(|e| *e > 1e-9 * scale) {
                    return Err(Error::RecoveryMismatch(format!(
                        "trial {trial}: (t,s,w) = ({t},{s},{w}) recovered as ({t2},{s2},{w2})"
                    )));
                }
            }
            RecoveryKind::NullRotation => {
                let mu = params.get(Param::Lambda);
                let (t, s, w) = (random_rational(&mut rng, 3), random_rational(&mut rng, 5), random_rational(&mut rng, 5));
                let gen = &h.basis()[0];
                let IsometryElement::Exact(e) = exp_element(gen, &t) else {
                    return Err(Error::RecoveryMismatch("exponential is not exact".into()));
                };
                // exp contributes -mu t^3/6 to the e3 slot; shift the null-plane part to compensate.
                let shift = &w + &(&mu * &t * &t * &t / int(6));
                let c = MinkVector([int(0), s.clone(), shift.clone(), -shift]);
                let g = Isometry::translation(c).compose(&e);
                let y = g.act(&x);
                let t2 = (&y[2] + &y[3] - &x[2] - &x[3]) / &mu;
                let s2 = &y[1] - &x[1];
                let w2 = &y[2] + &(&t2 * &x[0]) - &x[2] + &(&t2 * &t2 / int(2)) * &(&x[2] + &x[3]);
                if t2 != t || s2 != s || w2 != w {
                    return Err(Error::RecoveryMismatch(format!(
                        "trial {trial}: (t,s,w) = ({t},{s},{w}) recovered as ({t2},{s2},{w2})"
                    )));
                }
            }
        }
    }
    Ok(trials)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    ProperCertified,
    NonProperCertified,
    Undecided,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropernessVerdict {
    pub kind: VerdictKind,
    pub evidence: String,
}

/// Properness of a catalog instantiation from its declared evidence route.
pub fn decide_properness(entry: &CatalogEntry, params: &Params, seed: u64, opts: (usize, f64, usize)) -> PropernessVerdict {
    let (steps, tol, trials) = opts;
    let undecided = |e: String| PropernessVerdict { kind: VerdictKind::Undecided, evidence: e };
    match entry.expected(params).properness {
        ExpectedProperness::Proper(_) => {
            let Ok(h) = entry.subalgebra(params) else { return undecided("not closed".into()) };
            if let Some(c) = fixed_point_nonproper_certificate(&h) {
                return PropernessVerdict {
                    kind: VerdictKind::NonProperCertified,
                    evidence: format!("{} vanishes at {}", c.element, c.point),
                };
            }
            match parameter_recovery_check(entry, params, seed, trials) {
                Ok(n) => PropernessVerdict {
                    kind: VerdictKind::ProperCertified,
                    evidence: format!("group element recovered exactly from point pairs in {n} trials"),
                },
                Err(e) => undecided(e.to_string()),
            }
        }
        ExpectedProperness::NonProper(_) => match build_witness(entry, params).and_then(|w| {
            let c = check_witness(&w, steps, tol)?;
            Ok((w, c))
        }) {
            Ok((w, c)) => PropernessVerdict {
                kind: VerdictKind::NonProperCertified,
                evidence: format!(
                    "{}; |g_n| {:.3e} -> {:.3e}, X_n -> {:?}",
                    w.description,
                    c.linear_norms[0],
                    c.linear_norms[c.linear_norms.len() - 1],
                    c.limit_x
                ),
            },
            Err(e) => undecided(e.to_string()),
        },
        ExpectedProperness::NotApplicable => undecided("not a cohomogeneity-one entry".into()),
    }
}

/// Verdict for an arbitrary subalgebra: a fixed-point certificate if one exists.
pub fn quick_verdict(h: &Subalgebra) -> PropernessVerdict {
    match fixed_point_nonproper_certificate(h) {
        Some(c) => PropernessVerdict {
            kind: VerdictKind::NonProperCertified,
            evidence: format!("{} ({}) vanishes at {}", c.element, c.kind, c.point),
        },
        None if h.basis().iter().all(|b| b.linear.is_zero()) => PropernessVerdict {
            kind: VerdictKind::ProperCertified,
            evidence: "translation group acting freely".into(),
        },
        None => PropernessVerdict { kind: VerdictKind::Undecided, evidence: "no fixed-point certificate".into() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{standard_generator as g, GeneratorLabel::*};
    use crate::catalog::{builtin_catalog, find_entry};
    use crate::subalgebra::closure_check;

    #[test]
    fn nilpotent_pair_witness_fixes_point() {
        let seq = WitnessSequence {
            description: String::new(),
            kind: WitnessKind::NilpotentPair { lambda: 1.0, mu: 0.0, alpha: 1.0 },
        };
        for n in [1, 2, 8, 64] {
            let (g, x) = seq.at(n);
            assert!(g.lorentz_defect() < 1e-6 * (n * n * n * n) as f64);
            assert!(dist(&g.act(&x), &x) < 1e-9 * (n * n) as f64);
        }
        let c = check_witness(&seq, 1024, 1e-6).unwrap();
        assert!(c.linear_norms.last().unwrap() > &1e5);
    }

    #[test]
    fn certificates() {
        let h = closure_check(&[g(Yk1), g(Ya), g(E3).sub(&g(E4))]).unwrap();
        let c = fixed_point_nonproper_certificate(&h).unwrap();
        assert_eq!(c.kind, OneParamType::Hyperbolic);
        assert!(field_zero(&c.element).is_some());

        let h = closure_check(&[g(Yk1), g(Yk2), g(Yk3), g(E4)]).unwrap();
        assert!(fixed_point_nonproper_certificate(&h).is_none());
    }

    #[test]
    fn bounded_sequences_fail_divergence() {
        let seq = bounded_sequence(&g(Yk1));
        let err = check_witness(&seq, 1024, 1e-6).unwrap_err();
        assert!(err.to_string().contains("divergence"));
        assert!(check_witness(&seq, 4, 1e-6).is_err());
    }

    #[test]
    fn witness_for_proper_entry_is_refused() {
        let cat = builtin_catalog();
        let e = find_entry(&cat, "T3:SO3xRe4").unwrap();
        assert_eq!(build_witness(e, &Params::default()), Err(Error::ProperEntry("T3:SO3xRe4".into())));
    }

    #[test]
    fn recovery() {
        let cat = builtin_catalog();
        for id in ["R3", "SO2xR11", "SO3xRe4"] {
            let e = find_entry(&cat, id).unwrap();
            assert_eq!(parameter_recovery_check(e, &Params::default(), 3, 20), Ok(20), "{id}");
        }
        let e = find_entry(&cat, "T2:A-lambda-W2").unwrap();
        assert!(parameter_recovery_check(e, &Params::new(&[(Param::Lambda, int(-2))]), 3, 20).is_ok());
        let e = find_entry(&cat, "T2:N-lambda-W2").unwrap();
        assert!(parameter_recovery_check(e, &Params::new(&[(Param::Lambda, int(3))]), 3, 20).is_ok());
    }
}
