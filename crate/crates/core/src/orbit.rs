//! Orbit dimensions, causal types, cohomogeneity and orbit-space evidence.

use std::fmt;
use std::io::Write;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{fundamental_field, IsoAlgebraElement};
use crate::catalog::{CatalogEntry, FlipSpec, Params};
use crate::error::{Error, Result};
use crate::group::exp_element_f64;
use crate::linalg::{causal_type, frac, int, rank, CausalClass, CausalKind, Matrix, MinkVector, Scalar};
use crate::poly::{InvariantFn, Poly};
use crate::subalgebra::Subalgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub point: MinkVector,
    pub dim: usize,
    pub causal: CausalClass,
    /// Indices of generators whose fields span the tangent space.
    pub spanning: Vec<usize>,
}

impl fmt::Display for OrbitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "orbit through {}: dim {}, {}", self.point, self.dim, self.causal)
    }
}

/// Tangent space of the orbit through `p`, spanned by the fundamental fields.
pub fn orbit_dimension(h: &Subalgebra, p: &MinkVector) -> OrbitReport {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut spanning = Vec::new();
    let mut fields = Vec::new();
    for (i, b) in h.basis().iter().enumerate() {
        let v = fundamental_field(b, p);
        let mut trial = rows.clone();
        trial.push(v.0.to_vec());
        if rank(&Matrix::from_rows(4, &trial)) > rows.len() {
            rows = trial;
            spanning.push(i);
            fields.push(v);
        }
        if rows.len() == 4 {
            break;
        }
    }
    let causal = causal_type(&fields).expect("greedy subset is independent");
    OrbitReport { point: p.clone(), dim: fields.len(), causal, spanning }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomReport {
    pub cohomogeneity: usize,
    pub max_orbit_dim: usize,
    pub strata: Vec<OrbitReport>,
}

impl CohomReport {
    /// Distinct orbit dimensions seen, ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.strata.iter().map(|s| s.dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// Random rational point with denominators up to 9 and coordinates in `[-10, 10]`.
pub fn random_rational_point(rng: &mut impl Rng) -> MinkVector {
    MinkVector(std::array::from_fn(|_| {
        let d: i64 = rng.gen_range(1..=9);
        let n: i64 = rng.gen_range(-10 * d..=10 * d);
        frac(n, d)
    }))
}

/// Generic orbit dimension from seeded random rational points.
pub fn cohomogeneity(h: &Subalgebra, seed: u64, samples: usize) -> CohomReport {
    cohomogeneity_with_loci(h, seed, samples, &[])
}

/// Like [`cohomogeneity`], also evaluating the given special points.
pub fn cohomogeneity_with_loci(h: &Subalgebra, seed: u64, samples: usize, loci: &[MinkVector]) -> CohomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strata: Vec<OrbitReport> = (0..samples).map(|_| orbit_dimension(h, &random_rational_point(&mut rng))).collect();
    strata.extend(loci.iter().map(|p| orbit_dimension(h, p)));
    let max_orbit_dim = strata.iter().map(|s| s.dim).max().unwrap_or(0);
    CohomReport { cohomogeneity: 4 - max_orbit_dim, max_orbit_dim, strata }
}

/// The field `Xp + x` as four affine polynomials.
pub fn field_polys(a: &IsoAlgebraElement) -> [Poly; 4] {
    let m = a.linear.matrix();
    std::array::from_fn(|j| {
        (0..4).fold(Poly::constant(a.trans[j].clone()), |acc, k| acc.add(&Poly::var(k + 1).scale(&m.0[j][k])))
    })
}

/// Exact check that `f` is constant along every generator's field.
pub fn invariant_function_check(h: &Subalgebra, f: &InvariantFn) -> Result<()> {
    for b in h.basis() {
        let d = f.derivative_along(&field_polys(b));
        if d.is_zero() {
            continue;
        }
        let point = small_points().find(|pt| !d.eval(pt).is_zero()).unwrap_or_else(MinkVector::zero);
        return Err(Error::NotInvariant { generator: b.to_string(), point: point.to_string() });
    }
    Ok(())
}

/// Integer points with coordinates in `-3..=3`, nearest the origin first.
fn small_points() -> impl Iterator<Item = MinkVector> {
    let mut pts: Vec<[i64; 4]> = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                for d in -3..=3 {
                    pts.push([a, b, c, d]);
                }
            }
        }
    }
    pts.sort_by_key(|p| (p.iter().map(|x| x.abs()).sum::<i64>(), *p));
    pts.into_iter().map(MinkVector::from_ints)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitSpaceKind {
    Line,
    HalfLine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularOrbit {
    pub dim: usize,
    pub causal: CausalKind,
    pub point: MinkVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSpaceType {
    pub kind: OrbitSpaceKind,
    pub singular: Vec<SingularOrbit>,
}

impl fmt::Display for OrbitSpaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrbitSpaceKind::Line => f.write_str("R"),
            OrbitSpaceKind::HalfLine => {
                let s: Vec<String> = self.singular.iter().map(|o| format!("dim {} {}", o.dim, o.causal)).collect();
                write!(f, "[0,inf) with singular orbit {}", s.join(", "))
            }
        }
    }
}

/// Checks the declared orbit space of a proper entry: principal orbits are
/// three-dimensional off the singular locus, singular orbits have the declared
/// dimension and causal type, and the invariant separates orbits along a transversal.
pub fn orbit_space_report(entry: &CatalogEntry, params: &Params, seed: u64, samples: usize) -> Result<OrbitSpaceType> {
    let expected = entry.expected(params);
    let declared = expected
        .orbit_space
        .ok_or_else(|| Error::EvidenceFailed(format!("{} declares no orbit space", entry.id)))?;
    let h = entry.subalgebra(params)?;

    // The singular locus of a half-line orbit space is the zero set of the invariant.
    let on_locus = |p: &MinkVector| match (&declared.kind, &expected.invariant) {
        (OrbitSpaceKind::HalfLine, Some(f)) => f.poly.eval(p).is_zero(),
        _ => false,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<MinkVector> = (0..samples).map(|_| random_rational_point(&mut rng)).collect();
    points.extend(entry.loci.iter().cloned());
    points.extend(declared.singular.iter().map(|s| s.point.clone()));
    for p in &points {
        let r = orbit_dimension(&h, p);
        if !on_locus(p) {
            if r.dim != 3 {
                return Err(Error::EvidenceFailed(format!("orbit through {p} has dim {}", r.dim)));
            }
        } else if !declared.singular.iter().any(|s| s.dim == r.dim && s.causal == r.causal.kind) {
            return Err(Error::EvidenceFailed(format!(
                "singular orbit through {p} is dim {} {}, not among the declared ones",
                r.dim, r.causal.kind
            )));
        }
    }
    if let (Some(f), Some((base, dir))) = (&expected.invariant, &expected.transversal) {
        let values: Vec<f64> = (0..3)
            .map(|t| {
                let p = base + &dir.scale(&int(t));
                f.eval_f64(&p.to_f64())
            })
            .collect();
        let distinct = values.windows(2).all(|w| (w[0] - w[1]).abs() > 1e-9 * (1.0 + w[0].abs()));
        if !distinct {
            return Err(Error::EvidenceFailed(format!("invariant is not injective along the transversal: {values:?}")));
        }
    }
    Ok(declared)
}

/// Result of the causal-flip check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlipReport {
    pub negative: Vec<(MinkVector, CausalKind)>,
    pub nonnegative: Vec<(MinkVector, CausalKind)>,
}

/// Checks that orbits where the discriminant is negative have one causal
/// type and orbits where it is nonnegative have the other.
pub fn causal_flip_check(h: &Subalgebra, spec: &FlipSpec, seed: u64, samples: usize) -> Result<FlipReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<MinkVector> = (0..samples).map(|_| random_rational_point(&mut rng)).collect();
    points.extend(small_points().take(81));
    let mut report = FlipReport { negative: Vec::new(), nonnegative: Vec::new() };
    for p in points {
        let d = spec.discriminant.eval(&p);
        let kind = orbit_dimension(h, &p).causal.kind;
        if d.is_negative() {
            report.negative.push((p, kind));
        } else {
            report.nonnegative.push((p, kind));
        }
    }
    if report.negative.is_empty() || report.nonnegative.is_empty() {
        return Err(Error::EvidenceFailed("samples do not cover both sides of the discriminant".into()));
    }
    let bad_neg = report.negative.iter().find(|(_, k)| *k != spec.negative);
    let bad_pos = report.nonnegative.iter().find(|(_, k)| *k != spec.nonnegative);
    match (bad_neg, bad_pos) {
        (None, None) => Ok(report),
        (Some((p, k)), _) | (None, Some((p, k))) => Err(Error::EvidenceFailed(format!(
            "orbit through {p} is {k}; no causal flip (orbits seen: {})",
            summarize_kinds(&report)
        ))),
    }
}

fn summarize_kinds(r: &FlipReport) -> String {
    let mut kinds: Vec<CausalKind> = r.negative.iter().chain(&r.nonnegative).map(|(_, k)| *k).collect();
    kinds.sort();
    kinds.dedup();
    kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")
}

/// Point cloud `exp(t1 a)exp(t2 b)exp(t3 c)·base` over a grid in `[-2, 2]^3`,
/// with `a, b, c` chosen so their fields at `base` are as independent as possible.
pub fn orbit_point_cloud(h: &Subalgebra, base: &MinkVector, grid: usize) -> Vec<[f64; 7]> {
    let report = orbit_dimension(h, base);
    let mut chosen = report.spanning.clone();
    for i in 0..h.dim() {
        if chosen.len() >= 3 {
            break;
        }
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    chosen.truncate(3);
    let gens: Vec<&IsoAlgebraElement> = chosen.iter().map(|&i| &h.basis()[i]).collect();
    let zero = IsoAlgebraElement::zero();
    let gen = |k: usize| *gens.get(k).unwrap_or(&&zero);
    let ts: Vec<f64> = if grid <= 1 {
        vec![0.0]
    } else {
        (0..grid).map(|i| -2.0 + 4.0 * i as f64 / (grid - 1) as f64).collect()
    };
    let bf = base.to_f64();
    let mut out = Vec::with_capacity(ts.len().pow(3));
    for &t1 in &ts {
        let g1 = exp_element_f64(gen(0), t1);
        for &t2 in &ts {
            let g12 = g1.compose(&exp_element_f64(gen(1), t2));
            for &t3 in &ts {
                let g = g12.compose(&exp_element_f64(gen(2), t3));
                let q = g.act(&bf);
                out.push([t1, t2, t3, q[0], q[1], q[2], q[3]]);
            }
        }
    }
    out
}

pub fn write_cloud_csv(rows: &[[f64; 7]], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "t1,t2,t3,x,y,z,w")?;
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| format!("{v}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{standard_generator as g, GeneratorLabel::*};
    use crate::subalgebra::closure_check;

    #[test]
    fn so3_orbits() {
        let h = closure_check(&[g(Yk1), g(Yk2), g(Yk3), g(E4)]).unwrap();
        let r = orbit_dimension(&h, &MinkVector::from_ints([1, 0, 0, 0]));
        assert_eq!(r.dim, 3);
        assert_eq!(r.causal.kind, CausalKind::Lorentzian);
        let r = orbit_dimension(&h, &MinkVector::zero());
        assert_eq!(r.dim, 1);
        assert_eq!(r.causal.kind, CausalKind::Timelike);
    }

    #[test]
    fn translation_orbits() {
        let h = closure_check(&[g(E1), g(E2), g(E3)]).unwrap();
        let r = orbit_dimension(&h, &MinkVector::from_ints([5, -1, 2, 7]));
        assert_eq!((r.dim, r.causal.kind), (3, CausalKind::Spacelike));
        let c = cohomogeneity(&h, 7, 8);
        assert_eq!(c.cohomogeneity, 1);
    }

    #[test]
    fn k1an_l_strata() {
        let ell = IsoAlgebraElement::translation(MinkVector::from_ints([0, 0, 1, -1]));
        let h = closure_check(&[g(Yk1), g(Ya), g(Yn1), g(Yn2), ell]).unwrap();
        assert_eq!(orbit_dimension(&h, &MinkVector::zero()).dim, 1);
        assert_eq!(orbit_dimension(&h, &MinkVector::from_ints([1, 0, 0, 0])).dim, 2);
        assert_eq!(orbit_dimension(&h, &MinkVector::from_ints([0, 0, 1, 0])).dim, 4);
    }

    #[test]
    fn invariants() {
        let h = closure_check(&[g(Yk1), g(E3), g(E4)]).unwrap();
        let f = InvariantFn::polynomial(Poly::var(1).pow(2).add(&Poly::var(2).pow(2)));
        assert!(invariant_function_check(&h, &f).is_ok());
        let bad = InvariantFn::polynomial(Poly::var(1));
        assert!(matches!(invariant_function_check(&h, &bad), Err(Error::NotInvariant { .. })));
    }

    #[test]
    fn cloud_shape() {
        let h = closure_check(&[g(Yk1), g(Yk2), g(Yk3), g(E4)]).unwrap();
        let rows = orbit_point_cloud(&h, &MinkVector::from_ints([1, 0, 0, 0]), 4);
        assert_eq!(rows.len(), 64);
        for r in &rows {
            let rad = r[3] * r[3] + r[4] * r[4] + r[5] * r[5];
            assert!((rad - 1.0).abs() < 1e-9);
        }
        let mut buf = Vec::new();
        write_cloud_csv(&rows[..2], &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("t1,t2,t3,x,y,z,w\n"));
    }
}
