//! Subalgebra bookkeeping: closure, translation/projection split,
//! translation normalization, one-parameter types and catalog matching.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{annihilator, bracket, IsoAlgebraElement, LorentzAlgebraElement};
use crate::catalog::{CatalogEntry, Params};
use crate::error::{Error, Result};
use crate::group::cubic_ratio;
use crate::linalg::{
    causal_type, rank, row_echelon_basis, same_span, solve_linear, CausalClass, Matrix,
    MinkVector, Scalar,
};

/// A closed, linearly independent family of algebra elements together with
/// its structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct Subalgebra {
    basis: Vec<IsoAlgebraElement>,
    /// `structure[i][j]` holds the coordinates of `[b_i, b_j]` in the basis.
    structure: Vec<Vec<Vec<Scalar>>>,
}

impl Subalgebra {
    pub fn basis(&self) -> &[IsoAlgebraElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &[Scalar] {
        &self.structure[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Same subspace of the isometry algebra.
    pub fn same_span(&self, other: &Subalgebra) -> bool {
        let a: Vec<_> = self.basis.iter().map(|b| b.coords()).collect();
        let b: Vec<_> = other.basis.iter().map(|b| b.coords()).collect();
        same_span(&a, &b, 10)
    }

    /// Image under `X + x ↦ X + x + Xp` (conjugation by the translation `-p`).
    pub fn translate_conjugate(&self, p: &MinkVector) -> Subalgebra {
        Subalgebra {
            basis: self.basis.iter().map(|b| b.translate_conjugate(p)).collect(),
            structure: self.structure.clone(),
        }
    }
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn coord_columns(basis: &[IsoAlgebraElement]) -> Matrix {
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coords()).collect();
    Matrix::from_columns(10, &cols)
}

/// Checks that every pairwise bracket lies in the span of `basis`.
pub fn closure_check(basis: &[IsoAlgebraElement]) -> Result<Subalgebra> {
    let n = basis.len();
    let a = coord_columns(basis);
    if n > 0 && rank(&a) != n {
        return Err(Error::DependentBasis);
    }
    let mut structure = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let br = bracket(&basis[i], &basis[j]);
            let sol = solve_linear(&a, &br.coords())?;
            let Some(c) = sol.particular else {
                return Err(Error::NotClosed { left: i, right: j, bracket: br.to_string() });
            };
            structure[j][i] = c.iter().map(|x| -x).collect();
            structure[i][j] = c;
        }
    }
    Ok(Subalgebra { basis: basis.to_vec(), structure })
}

/// `h ∩ R^{3,1}` and `π₁(h)`, both in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitParts {
    pub translations: Vec<MinkVector>,
    pub projection: Vec<LorentzAlgebraElement>,
}

pub fn split_parts(h: &Subalgebra) -> SplitParts {
    let n = h.dim();
    let lin_rows: Vec<Vec<Scalar>> = h.basis.iter().map(|b| b.linear.coords().to_vec()).collect();

    let translations = if n == 0 {
        Vec::new()
    } else {
        let lin = Matrix::from_columns(6, &lin_rows);
        let kernel = solve_linear(&lin, &[Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()])
            .expect("consistent shape")
            .kernel;
        let vecs: Vec<Vec<Scalar>> = kernel
            .iter()
            .map(|k| IsoAlgebraElement::combination(k, &h.basis).trans.0.to_vec())
            .collect();
        row_echelon_basis(&vecs, 4).0
    };
    let projection = row_echelon_basis(&lin_rows, 6)
        .0
        .iter()
        .map(|r| LorentzAlgebraElement::from_coords(r))
        .collect();
    SplitParts {
        translations: translations
            .into_iter()
            .map(|v| MinkVector(std::array::from_fn(|i| v[i].clone())))
            .collect(),
        projection,
    }
}

/// Result of the translation-conjugation normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    /// The subalgebra is mapped to `subalgebra` by `X + x ↦ X + x + Xp`.
    pub p: MinkVector,
    pub subalgebra: Subalgebra,
    /// Indices of the basis elements used as lifts of `π₁(h)`.
    pub lifted: Vec<usize>,
    /// Translation parts of the conjugated lifts; nonzero entries are the
    /// residual parameters that no translation can remove.
    pub residuals: Vec<MinkVector>,
}

/// Reduction of `R⁴` modulo a subspace: keeps the non-pivot coordinates after
/// clearing the pivots of the subspace's echelon basis.
struct ModReducer {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl ModReducer {
    fn new(sub: &[MinkVector]) -> Self {
        let vecs: Vec<Vec<Scalar>> = sub.iter().map(|v| v.0.to_vec()).collect();
        let (rows, pivots) = if vecs.is_empty() { (Vec::new(), Vec::new()) } else { row_echelon_basis(&vecs, 4) };
        ModReducer { rows, pivots }
    }

    fn out_dim(&self) -> usize {
        4 - self.pivots.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut y = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let f = y[c].clone();
            if !f.is_zero() {
                for k in 0..4 {
                    y[k] -= &f * &r[k];
                }
            }
        }
        (0..4).filter(|c| !self.pivots.contains(c)).map(|c| y[c].clone()).collect()
    }
}

/// Finds `p` such that `X + x + Xp` has translation part in `h ∩ R^{3,1}`
/// for as many lifts as possible; what cannot be removed is reported as residual.
pub fn normalize_translations(h: &Subalgebra) -> Normalization {
    let parts = split_parts(h);
    let red = ModReducer::new(&parts.translations);

    // Greedy lifts: basis elements whose linear parts are independent.
    let mut lifted = Vec::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (i, b) in h.basis.iter().enumerate() {
        let c = b.linear.coords().to_vec();
        let mut trial = rows.clone();
        trial.push(c);
        if rank(&Matrix::from_rows(6, &trial)) > rows.len() {
            rows = trial;
            lifted.push(i);
        }
    }

    let d = red.out_dim();
    let m = lifted.len() * d;
    let p = if m == 0 {
        MinkVector::zero()
    } else {
        let mut a = Matrix::zeros(m, 4);
        let mut b = vec![Scalar::zero(); m];
        for (li, &i) in lifted.iter().enumerate() {
            let x = h.basis[i].linear.matrix();
            for k in 0..4 {
                let col = red.reduce(&x.column(k).0);
                for (r, v) in col.into_iter().enumerate() {
                    a[(li * d + r, k)] = v;
                }
            }
            for (r, v) in red.reduce(&h.basis[i].trans.0).into_iter().enumerate() {
                b[li * d + r] = -v;
            }
        }
        // Complement of col(A), built from standard vectors taken last-first.
        let mut cols: Vec<Vec<Scalar>> = (0..4).map(|k| (0..m).map(|r| a[(r, k)].clone()).collect()).collect();
        let base_rank = rank(&Matrix::from_columns(m, &cols));
        let mut current = base_rank;
        let mut complement = Vec::new();
        for e in (0..m).rev() {
            if current == m {
                break;
            }
            let mut unit = vec![Scalar::zero(); m];
            unit[e] = Scalar::from_integer(1.into());
            cols.push(unit.clone());
            let r = rank(&Matrix::from_columns(m, &cols));
            if r > current {
                current = r;
                complement.push(unit);
            } else {
                cols.pop();
            }
        }
        let mut full = Matrix::zeros(m, 4 + complement.len());
        for r in 0..m {
            for k in 0..4 {
                full[(r, k)] = a[(r, k)].clone();
            }
            for (j, c) in complement.iter().enumerate() {
                full[(r, 4 + j)] = -c[r].clone();
            }
        }
        let sol = solve_linear(&full, &b).expect("consistent shape");
        let x = sol.particular.expect("complement makes the system solvable");
        MinkVector(std::array::from_fn(|i| x[i].clone()))
    };

    let subalgebra = h.translate_conjugate(&p);
    let residuals = lifted.iter().map(|&i| subalgebra.basis[i].trans.clone()).collect();
    Normalization { p, subalgebra, lifted, residuals }
}

/// Dynamical type of a one-parameter subgroup `exp(tX)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OneParamType {
    Zero,
    Elliptic,
    Hyperbolic,
    Parabolic,
    Mixed,
}

impl fmt::Display for OneParamType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn one_param_type(x: &LorentzAlgebraElement) -> OneParamType {
    let m = x.matrix();
    if m.is_zero() {
        return OneParamType::Zero;
    }
    let m2 = m * m;
    if (&m2 * &m2).is_zero() {
        return OneParamType::Parabolic;
    }
    match cubic_ratio(m) {
        Some(k) if k.is_negative() => OneParamType::Elliptic,
        Some(k) if k.is_positive() => OneParamType::Hyperbolic,
        _ => OneParamType::Mixed,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraInvariants {
    pub dim: usize,
    pub translation_dim: usize,
    pub translation_causal: CausalClass,
    pub projection_dim: usize,
    /// Sorted types of the echelon basis of `π₁(h)`.
    pub one_param_profile: Vec<OneParamType>,
}

impl fmt::Display for SubalgebraInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prof: Vec<String> = self.one_param_profile.iter().map(|t| t.to_string()).collect();
        write!(
            f,
            "dim {}, translations {} {}, projection {} [{}]",
            self.dim,
            self.translation_dim,
            self.translation_causal,
            self.projection_dim,
            prof.join(", ")
        )
    }
}

pub fn invariants(h: &Subalgebra) -> SubalgebraInvariants {
    let parts = split_parts(h);
    let translation_causal =
        causal_type(&parts.translations).expect("echelon basis is independent");
    let mut profile: Vec<OneParamType> = parts.projection.iter().map(one_param_type).collect();
    profile.sort();
    SubalgebraInvariants {
        dim: h.dim(),
        translation_dim: parts.translations.len(),
        translation_causal,
        projection_dim: parts.projection.len(),
        one_param_profile: profile,
    }
}

/// A catalog entry whose instantiation is translation-conjugate to the input.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogMatch {
    pub id: String,
    pub params: Params,
    /// The instantiated entry is mapped onto the input by `X + x ↦ X + x + Xq`.
    pub conjugator: MinkVector,
}

/// Closure check followed by [`match_catalog`].
pub fn match_catalog_basis(
    basis: &[IsoAlgebraElement],
    catalog: &[CatalogEntry],
) -> Result<Vec<CatalogMatch>> {
    let h = closure_check(basis)?;
    Ok(match_catalog(&h, catalog))
}

/// Identifies `h` with catalog entries up to translation conjugation and the
/// entries' free parameters.
pub fn match_catalog(h: &Subalgebra, catalog: &[CatalogEntry]) -> Vec<CatalogMatch> {
    let norm = normalize_translations(h);
    let target = &norm.subalgebra;
    let inv = invariants(target);
    catalog
        .iter()
        .filter(|e| {
            e.generators.len() == inv.dim
                && e.translation_dim == inv.translation_dim
                && e.projection_dim == inv.projection_dim
        })
        .filter_map(|e| {
            let (params, q) = fit_entry(e, target)?;
            let inst = e.subalgebra(&params).ok()?;
            let conj = inst.translate_conjugate(&q);
            (conj.same_span(target) && invariants(&inst) == inv).then(|| CatalogMatch {
                id: e.id.to_string(),
                params,
                conjugator: &q - &norm.p,
            })
        })
        .collect()
}

/// Small integer combinations of up to three directions, smallest first.
fn candidate_offsets(dirs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let len = dirs.first().map_or(0, |d| d.len());
    let coeffs: [i64; 5] = [0, 1, -1, 2, -2];
    let k = dirs.len().min(3);
    let mut out = Vec::new();
    let total = 5usize.pow(k as u32);
    let mut combos: Vec<Vec<i64>> = (0..total)
        .map(|mut idx| {
            (0..k)
                .map(|_| {
                    let c = coeffs[idx % 5];
                    idx /= 5;
                    c
                })
                .collect()
        })
        .collect();
    combos.sort_by_key(|c| (c.iter().map(|x| x.abs()).sum::<i64>(), c.clone()));
    for c in combos {
        let mut v = vec![Scalar::zero(); len];
        for (ci, d) in c.iter().zip(dirs) {
            if *ci != 0 {
                for (slot, x) in v.iter_mut().zip(d) {
                    *slot += x * Scalar::from_integer((*ci).into());
                }
            }
        }
        out.push(v);
    }
    out
}

/// Directions of the kernel projected to the first `k` coordinates, reduced.
fn projected_directions(kernel: &[Vec<Scalar>], k: usize) -> Vec<Vec<Scalar>> {
    let proj: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|v| v[..k].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    if proj.is_empty() {
        return Vec::new();
    }
    row_echelon_basis(&proj, k).0
}

/// Fits the entry's parameters and a translation `q` so that the conjugated
/// instantiation lies in `target`.
fn fit_entry(entry: &CatalogEntry, target: &Subalgebra) -> Option<(Params, MinkVector)> {
    let parts = split_parts(target);
    let lin_params = entry.linear_params();
    let tr_params: Vec<_> = entry.params.iter().copied().filter(|p| !lin_params.contains(p)).collect();

    // Phase 1: parameters in linear parts, from membership in π₁(target).
    let proj_rows: Vec<Vec<Scalar>> = parts.projection.iter().map(|x| x.coords().to_vec()).collect();
    let ann: Vec<Vec<Scalar>> = if proj_rows.is_empty() {
        (0..6).map(|i| (0..6).map(|j| Scalar::from_integer(((i == j) as i64).into())).collect()).collect()
    } else {
        solve_linear(&Matrix::from_rows(6, &proj_rows), &vec![Scalar::zero(); proj_rows.len()])
            .ok()?
            .kernel
    };
    let mut lin_candidates: Vec<Vec<Scalar>> = vec![Vec::new()];
    if !lin_params.is_empty() {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for g in &entry.generators {
            let c0 = g.constant.linear.coords();
            for q in &ann {
                let row: Vec<Scalar> = lin_params
                    .iter()
                    .map(|p| {
                        let d = g.term(*p).linear.coords();
                        (0..6).fold(Scalar::zero(), |acc, i| acc + &q[i] * &d[i])
                    })
                    .collect();
                rows.push(row);
                rhs.push(-(0..6).fold(Scalar::zero(), |acc, i| acc + &q[i] * &c0[i]));
            }
        }
        let sol = solve_linear(&Matrix::from_rows(lin_params.len(), &rows), &rhs).ok()?;
        let base = sol.particular?;
        let dirs = projected_directions(&sol.kernel, lin_params.len());
        lin_candidates = candidate_offsets(&dirs)
            .into_iter()
            .map(|off| base.iter().zip(&off).map(|(a, b)| a + b).collect())
            .collect();
    }

    let n = target.dim();
    for lin_vals in lin_candidates {
        let mut params = Params::default();
        for (p, v) in lin_params.iter().zip(&lin_vals) {
            params.set(*p, v.clone());
        }
        // Phase 2: translation parameters, conjugator q and coefficients.
        let m = tr_params.len();
        let k = entry.generators.len();
        let unknowns = m + 4 + k * n;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        for (gi, g) in entry.generators.iter().enumerate() {
            let base = g.partial(&params, &tr_params);
            let x = base.linear.matrix();
            let tcoords = base.coords();
            for r in 0..10 {
                let mut row = vec![Scalar::zero(); unknowns];
                if r >= 6 {
                    let t = r - 6;
                    for (j, p) in tr_params.iter().enumerate() {
                        row[j] = g.term(*p).trans[t].clone();
                    }
                    for c in 0..4 {
                        row[m + c] = x.0[t][c].clone();
                    }
                }
                for (hi, hb) in target.basis.iter().enumerate() {
                    row[m + 4 + gi * n + hi] = -hb.coords()[r].clone();
                }
                rows.push(row);
                rhs.push(-tcoords[r].clone());
            }
        }
        let Ok(sol) = solve_linear(&Matrix::from_rows(unknowns, &rows), &rhs) else { continue };
        let Some(base) = sol.particular else { continue };
        let dirs = projected_directions(&sol.kernel, m);
        for off in candidate_offsets(&dirs) {
            let mut trial = params.clone();
            for (j, p) in tr_params.iter().enumerate() {
                let v = if off.is_empty() { base[j].clone() } else { &base[j] + &off[j] };
                trial.set(*p, v);
            }
            if !(entry.admissible)(&trial) {
                continue;
            }
            if let Some(q) = solve_conjugator(entry, &trial, target) {
                return Some((trial, q));
            }
        }
    }
    None
}

/// With all parameters fixed, finds `q` such that the conjugated generators lie in `target`.
fn solve_conjugator(entry: &CatalogEntry, params: &Params, target: &Subalgebra) -> Option<MinkVector> {
    let gens = entry.instantiate(params).ok()?;
    let n = target.dim();
    let unknowns = 4 + gens.len() * n;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let x = g.linear.matrix();
        let c = g.coords();
        for r in 0..10 {
            let mut row = vec![Scalar::zero(); unknowns];
            if r >= 6 {
                for k in 0..4 {
                    row[k] = x.0[r - 6][k].clone();
                }
            }
            for (hi, hb) in target.basis.iter().enumerate() {
                row[4 + gi * n + hi] = -hb.coords()[r].clone();
            }
            rows.push(row);
            rhs.push(-c[r].clone());
        }
    }
    let sol = solve_linear(&Matrix::from_rows(unknowns, &rows), &rhs).ok()?;
    let x = sol.particular?;
    Some(MinkVector(std::array::from_fn(|i| x[i].clone())))
}

/// Annihilator of a translation subspace, re-exported for callers that reduce modulo it.
pub fn translation_annihilator(trans: &[MinkVector]) -> Vec<Vec<Scalar>> {
    annihilator(trans)
}
