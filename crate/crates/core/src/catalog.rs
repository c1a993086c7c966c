//! The built-in catalog of cohomogeneity-one actions on `R^{3,1}` and the
//! excluded candidates, with everything the verifier expects of them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{standard_generator, GeneratorLabel, IsoAlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{fmt_scalar, frac, int, CausalKind, MinkVector, Scalar};
use crate::orbit::{OrbitSpaceKind, OrbitSpaceType, SingularOrbit};
use crate::parse::parse_rational;
use crate::poly::{InvariantFn, Poly};
use crate::subalgebra::{closure_check, Subalgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Table {
    T1,
    T2,
    T3,
    T4,
    Excluded,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Table::T1 => "T1",
            Table::T2 => "T2",
            Table::T3 => "T3",
            Table::T4 => "T4",
            Table::Excluded => "Excluded",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    Lambda,
    Mu,
    A,
    B,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Lambda => "lambda",
            Param::Mu => "mu",
            Param::A => "a",
            Param::B => "b",
        }
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "lambda" | "l" => Ok(Param::Lambda),
            "mu" | "m" => Ok(Param::Mu),
            "a" => Ok(Param::A),
            "b" => Ok(Param::B),
            other => Err(Error::Parse(format!("unknown parameter `{other}`"))),
        }
    }
}

/// Parameter assignment. Missing parameters read as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<Param, Scalar>);

impl Params {
    pub fn new(values: &[(Param, Scalar)]) -> Self {
        Params(values.iter().cloned().collect())
    }

    pub fn get(&self, p: Param) -> Scalar {
        self.0.get(&p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, p: Param, v: Scalar) {
        self.0.insert(p, v);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Param, &Scalar)> {
        self.0.iter()
    }

    /// Parses `lambda=1,mu=-1/2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Params::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got `{part}`")))?;
            out.set(k.parse()?, parse_rational(v)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{}={}", k.name(), fmt_scalar(v))).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, String> = self.0.iter().map(|(k, v)| (k.name(), fmt_scalar(v))).collect();
        map.serialize(s)
    }
}

/// A generator depending affinely on the entry's parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicGenerator {
    pub constant: IsoAlgebraElement,
    pub terms: Vec<(Param, IsoAlgebraElement)>,
}

impl SymbolicGenerator {
    pub fn fixed(a: IsoAlgebraElement) -> Self {
        SymbolicGenerator { constant: a, terms: Vec::new() }
    }

    pub fn with(mut self, p: Param, a: IsoAlgebraElement) -> Self {
        self.terms.push((p, a));
        self
    }

    /// Coefficient element of `p` (zero if `p` does not occur).
    pub fn term(&self, p: Param) -> IsoAlgebraElement {
        self.terms
            .iter()
            .filter(|(q, _)| *q == p)
            .fold(IsoAlgebraElement::zero(), |acc, (_, a)| acc.add(a))
    }

    pub fn eval(&self, params: &Params) -> IsoAlgebraElement {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (p, a)| acc.add(&a.scale(&params.get(*p))))
    }

    /// Evaluation with the parameters in `skip` left out.
    pub fn partial(&self, params: &Params, skip: &[Param]) -> IsoAlgebraElement {
        self.terms
            .iter()
            .filter(|(p, _)| !skip.contains(p))
            .fold(self.constant.clone(), |acc, (p, a)| acc.add(&a.scale(&params.get(*p))))
    }
}

impl fmt::Display for SymbolicGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = if self.constant.is_zero() { String::new() } else { self.constant.to_string() };
        for (p, a) in &self.terms {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            s.push_str(&format!("{}*({a})", p.name()));
        }
        f.write_str(if s.is_empty() { "0" } else { &s })
    }
}

/// How a proper entry's group elements are recovered from point pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecoveryKind {
    /// Compact linear part (rotations or nothing) and translations.
    Compact,
    /// `exp(t(Ya + λe1))` times null-plane translations.
    Boost,
    /// `exp(t(Yn1 + μe4))` times null-plane translations.
    NullRotation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessPlan {
    FixedPoint,
    NilpotentPair,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpectedProperness {
    Proper(RecoveryKind),
    NonProper(WitnessPlan),
    NotApplicable,
}

/// Sign pattern of orbit causal classes across the zero set of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct FlipSpec {
    pub discriminant: Poly,
    pub negative: CausalKind,
    pub nonnegative: CausalKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub cohomogeneity: usize,
    /// Exact set of orbit dimensions over samples and loci, when declared.
    pub strata: Option<Vec<usize>>,
    pub properness: ExpectedProperness,
    pub orbit_space: Option<OrbitSpaceType>,
    pub principal_causal: Option<CausalKind>,
    pub invariant: Option<InvariantFn>,
    /// Base point and direction of a curve transversal to the orbits.
    pub transversal: Option<(MinkVector, MinkVector)>,
    pub flip: Option<FlipSpec>,
}

impl Expected {
    fn nonproper(plan: WitnessPlan) -> Self {
        Expected {
            cohomogeneity: 1,
            strata: None,
            properness: ExpectedProperness::NonProper(plan),
            orbit_space: None,
            principal_causal: None,
            invariant: None,
            transversal: None,
            flip: None,
        }
    }

    fn excluded(strata: Option<Vec<usize>>) -> Self {
        let max = strata.as_ref().map_or(2, |s| *s.iter().max().unwrap());
        Expected {
            cohomogeneity: 4 - max,
            strata,
            properness: ExpectedProperness::NotApplicable,
            ..Expected::nonproper(WitnessPlan::FixedPoint)
        }
    }

    fn proper(kind: RecoveryKind, space: OrbitSpaceType, f: InvariantFn, dir: MinkVector) -> Self {
        Expected {
            cohomogeneity: 1,
            strata: None,
            properness: ExpectedProperness::Proper(kind),
            orbit_space: Some(space),
            principal_causal: None,
            invariant: Some(f),
            transversal: Some((MinkVector::zero(), dir)),
            flip: None,
        }
    }

    fn principal(mut self, k: CausalKind) -> Self {
        self.principal_causal = Some(k);
        self
    }
}

pub type ExpectFn = Arc<dyn Fn(&Params) -> Expected + Send + Sync>;

#[derive(Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub name: &'static str,
    pub table: Table,
    pub params: Vec<Param>,
    pub generators: Vec<SymbolicGenerator>,
    pub translation_dim: usize,
    pub translation_causal: CausalKind,
    pub projection_dim: usize,
    pub admissible: fn(&Params) -> bool,
    /// Parameter values exercised by the verifier.
    pub instantiations: Vec<Params>,
    pub expected: ExpectFn,
    /// Points where lower-dimensional orbits are expected.
    pub loci: Vec<MinkVector>,
    pub note: Option<&'static str>,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("id", &self.id)
            .field("table", &self.table)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl CatalogEntry {
    pub fn instantiate(&self, params: &Params) -> Result<Vec<IsoAlgebraElement>> {
        if !(self.admissible)(params) {
            return Err(Error::InadmissibleParameters(params.to_string()));
        }
        Ok(self.generators.iter().map(|g| g.eval(params)).collect())
    }

    pub fn subalgebra(&self, params: &Params) -> Result<Subalgebra> {
        closure_check(&self.instantiate(params)?)
    }

    pub fn expected(&self, params: &Params) -> Expected {
        (self.expected)(params)
    }

    /// Parameters that enter some linear part.
    pub fn linear_params(&self) -> Vec<Param> {
        self.params
            .iter()
            .copied()
            .filter(|p| self.generators.iter().any(|g| !g.term(*p).linear.is_zero()))
            .collect()
    }

    /// Instantiation used when no parameters are given.
    pub fn default_params(&self) -> Params {
        self.instantiations.first().cloned().unwrap_or_default()
    }

    pub fn generators_display(&self) -> String {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub fn find_entry<'a>(catalog: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry> {
    catalog
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .or_else(|| catalog.iter().find(|e| e.id.split_once(':').is_some_and(|(_, short)| short.eq_ignore_ascii_case(id))))
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

fn g(l: GeneratorLabel) -> IsoAlgebraElement {
    standard_generator(l)
}

fn tr(c: [i64; 4]) -> IsoAlgebraElement {
    IsoAlgebraElement::translation(MinkVector::from_ints(c))
}

fn fixed(gens: &[IsoAlgebraElement]) -> Vec<SymbolicGenerator> {
    gens.iter().cloned().map(SymbolicGenerator::fixed).collect()
}

fn ell() -> IsoAlgebraElement {
    tr([0, 0, 1, -1])
}

fn p(i: usize) -> Poly {
    Poly::var(i)
}

fn always(_: &Params) -> bool {
    true
}

fn lam(v: i64) -> Params {
    Params::new(&[(Param::Lambda, int(v))])
}

fn lam_mu(l: i64, m: i64) -> Params {
    Params::new(&[(Param::Lambda, int(l)), (Param::Mu, int(m))])
}

fn standard_loci() -> Vec<MinkVector> {
    [
        [0, 0, 0, 0],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, -1],
        [1, 2, 1, -1],
        [1, 2, 3, -3],
        [1, 1, 1, 1],
    ]
    .into_iter()
    .map(MinkVector::from_ints)
    .collect()
}

fn line() -> OrbitSpaceType {
    OrbitSpaceType { kind: OrbitSpaceKind::Line, singular: Vec::new() }
}

fn half_line(dim: usize, causal: CausalKind) -> OrbitSpaceType {
    OrbitSpaceType {
        kind: OrbitSpaceKind::HalfLine,
        singular: vec![SingularOrbit { dim, causal, point: MinkVector::zero() }],
    }
}

#[allow(clippy::too_many_arguments)]
fn entry(
    id: &'static str,
    name: &'static str,
    table: Table,
    params: Vec<Param>,
    generators: Vec<SymbolicGenerator>,
    shape: (usize, CausalKind, usize),
    instantiations: Vec<Params>,
    expected: ExpectFn,
) -> CatalogEntry {
    CatalogEntry {
        id,
        name,
        table,
        params,
        generators,
        translation_dim: shape.0,
        translation_causal: shape.1,
        projection_dim: shape.2,
        admissible: always,
        instantiations,
        expected,
        loci: standard_loci(),
        note: None,
    }
}

fn nonproper_fixed(_: &Params) -> Expected {
    Expected::nonproper(WitnessPlan::FixedPoint)
}

/// The 25 built-in entries: 19 table rows and 6 excluded candidates.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    use CausalKind::*;
    use GeneratorLabel::*;
    use Param::*;
    use Table::*;

    let mut out = Vec::new();

    // Pure translations.
    out.push(entry(
        "T1:R3",
        "R^3",
        T1,
        vec![],
        fixed(&[g(E1), g(E2), g(E3)]),
        (3, Spacelike, 0),
        vec![Params::default()],
        Arc::new(|_| {
            Expected::proper(RecoveryKind::Compact, line(), InvariantFn::polynomial(p(4)), MinkVector::basis(4))
                .principal(Spacelike)
        }),
    ));
    out.push(entry(
        "T1:R21",
        "R^{2,1}",
        T1,
        vec![],
        fixed(&[g(E2), g(E3), g(E4)]),
        (3, Lorentzian, 0),
        vec![Params::default()],
        Arc::new(|_| {
            Expected::proper(RecoveryKind::Compact, line(), InvariantFn::polynomial(p(1)), MinkVector::basis(1))
                .principal(Lorentzian)
        }),
    ));
    out.push(entry(
        "T1:W3",
        "W^3",
        T1,
        vec![],
        fixed(&[g(E1), g(E2), ell()]),
        (3, Degenerate, 0),
        vec![Params::default()],
        Arc::new(|_| {
            Expected::proper(
                RecoveryKind::Compact,
                line(),
                InvariantFn::polynomial(p(3).add(&p(4))),
                MinkVector::basis(3),
            )
            .principal(Degenerate)
        }),
    ));

    // One-dimensional linear part.
    out.push(entry(
        "T2:SO11xR2",
        "SO(1,1) x R^2",
        T2,
        vec![],
        fixed(&[g(Ya), g(E1), g(E2)]),
        (2, Spacelike, 1),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));
    out.push(entry(
        "T2:SO2xR11",
        "SO(2) x R^{1,1}",
        T2,
        vec![],
        fixed(&[g(Yk1), g(E3), g(E4)]),
        (2, Lorentzian, 1),
        vec![Params::default()],
        Arc::new(|_| {
            Expected::proper(
                RecoveryKind::Compact,
                half_line(2, Lorentzian),
                InvariantFn::polynomial(p(1).pow(2).add(&p(2).pow(2))),
                MinkVector::basis(1),
            )
            .principal(Lorentzian)
        }),
    ));
    out.push(entry(
        "T2:A-lambda-W2",
        "exp(t(Ya + lambda e1)) x W^2",
        T2,
        vec![Lambda],
        vec![
            SymbolicGenerator::fixed(g(Ya)).with(Lambda, g(E1)),
            SymbolicGenerator::fixed(g(E2)),
            SymbolicGenerator::fixed(ell()),
        ],
        (2, Degenerate, 1),
        vec![lam(1), lam(-2), lam(0)],
        Arc::new(|ps| {
            let l = ps.get(Param::Lambda);
            if l.is_zero() {
                return Expected::nonproper(WitnessPlan::FixedPoint);
            }
            let w = MinkVector([-(int(1) / &l), int(0), int(0), int(0)]);
            Expected::proper(
                RecoveryKind::Boost,
                line(),
                InvariantFn::with_exp(p(3).add(&p(4)), w),
                MinkVector::basis(3),
            )
            .principal(Lorentzian)
        }),
    ));
    let mut null_rot = entry(
        "T2:N-lambda-W2",
        "exp(t(Yn1 + lambda e4)) x W^2",
        T2,
        vec![Lambda],
        vec![
            SymbolicGenerator::fixed(g(Yn1)).with(Lambda, g(E4)),
            SymbolicGenerator::fixed(g(E2)),
            SymbolicGenerator::fixed(ell()),
        ],
        (2, Degenerate, 1),
        vec![lam(1), lam(-2), lam(0)],
        Arc::new(|ps| {
            let l = ps.get(Param::Lambda);
            if l.is_zero() {
                return Expected::nonproper(WitnessPlan::FixedPoint);
            }
            let s = p(3).add(&p(4));
            let f = p(1).scale(&(int(2) * &l)).sub(&s.pow(2));
            let mut e = Expected::proper(RecoveryKind::NullRotation, line(), InvariantFn::polynomial(f), MinkVector::basis(1));
            // (p3+p4)^2 - 2 lambda p1 - lambda^2
            let disc = s.pow(2).sub(&p(1).scale(&(int(2) * &l))).sub(&Poly::constant(&l * &l));
            e.flip = Some(FlipSpec { discriminant: disc, negative: Lorentzian, nonnegative: Degenerate });
            e
        }),
    );
    null_rot.note = Some("orbits are expected to change causal type across (p3+p4)^2 = 2 lambda p1 + lambda^2");
    out.push(null_rot);

    // Two- and three-dimensional linear parts with nontrivial translations.
    out.push(entry(
        "T3:SO21xRe1",
        "SO(2,1) x R e1",
        T3,
        vec![],
        fixed(&[g(Yk3), g(Ya), g(Yn2), g(E1)]),
        (1, Spacelike, 3),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));
    out.push(entry(
        "T3:SO3xRe4",
        "SO(3) x R e4",
        T3,
        vec![],
        fixed(&[g(Yk1), g(Yk2), g(Yk3), g(E4)]),
        (1, Timelike, 3),
        vec![Params::default()],
        Arc::new(|_| {
            Expected::proper(
                RecoveryKind::Compact,
                half_line(1, Timelike),
                InvariantFn::polynomial(p(1).pow(2).add(&p(2).pow(2)).add(&p(3).pow(2))),
                MinkVector::basis(1),
            )
            .principal(Lorentzian)
        }),
    ));
    out.push(entry(
        "T3:SO2xSO11-l",
        "SO(2) x SO(1,1) x l",
        T3,
        vec![],
        fixed(&[g(Yk1), g(Ya), ell()]),
        (1, Lightlike, 2),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));
    out.push(entry(
        "T3:AN2xRe1",
        "A N2 x R e1",
        T3,
        vec![],
        fixed(&[g(Ya), g(Yn2), g(E1)]),
        (1, Spacelike, 2),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));
    out.push(entry(
        "T3:A-lambda-N1-l",
        "exp(t(Ya + lambda e2)) N1 x l",
        T3,
        vec![Lambda],
        vec![
            SymbolicGenerator::fixed(g(Ya)).with(Lambda, g(E2)),
            SymbolicGenerator::fixed(g(Yn1)),
            SymbolicGenerator::fixed(ell()),
        ],
        (1, Lightlike, 2),
        vec![lam(1), lam(-2), lam(0)],
        Arc::new(nonproper_fixed),
    ));
    out.push(entry(
        "T3:nilpotent-pair",
        "exp(t(Yn1 + lambda e2) + s(Yn2 + lambda e1 + mu e2)) x l",
        T3,
        vec![Lambda, Mu],
        vec![
            SymbolicGenerator::fixed(g(Yn1)).with(Lambda, g(E2)),
            SymbolicGenerator::fixed(g(Yn2)).with(Lambda, g(E1)).with(Mu, g(E2)),
            SymbolicGenerator::fixed(ell()),
        ],
        (1, Lightlike, 2),
        vec![lam_mu(1, 0), lam_mu(-2, 3), lam_mu(0, 0), lam_mu(0, 3)],
        Arc::new(|ps| {
            if ps.get(Param::Lambda).is_zero() {
                Expected::nonproper(WitnessPlan::FixedPoint)
            } else {
                Expected::nonproper(WitnessPlan::NilpotentPair)
            }
        }),
    ));
    out.push(entry(
        "T3:K1N-l",
        "K1 N x l",
        T3,
        vec![],
        fixed(&[g(Yk1), g(Yn1), g(Yn2), ell()]),
        (1, Lightlike, 3),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));
    let mut ab = entry(
        "T3:nilpotent-pair-ab",
        "exp(t(Yn1 + lambda e2) + s(Yn2 + lambda e1)) exp(r(a Yk1 + b Ya)) x l",
        T3,
        vec![Lambda, A, B],
        vec![
            SymbolicGenerator::fixed(g(Yn1)).with(Lambda, g(E2)),
            SymbolicGenerator::fixed(g(Yn2)).with(Lambda, g(E1)),
            SymbolicGenerator::fixed(IsoAlgebraElement::zero()).with(A, g(Yk1)).with(B, g(Ya)),
            SymbolicGenerator::fixed(ell()),
        ],
        (1, Lightlike, 3),
        vec![
            Params::new(&[(Lambda, int(1)), (A, int(1)), (B, int(1))]),
            Params::new(&[(Lambda, int(-2)), (A, int(2)), (B, int(-1))]),
            Params::new(&[(Lambda, int(0)), (A, int(1)), (B, int(1))]),
            Params::new(&[(Lambda, int(0)), (A, int(2)), (B, int(-1))]),
        ],
        Arc::new(nonproper_fixed),
    );
    ab.admissible = |ps| !ps.get(Param::A).is_zero() && !ps.get(Param::B).is_zero();
    ab.note = Some("closed only for lambda = 0, where the action has an open orbit");
    out.push(ab);

    // Trivial translation part.
    out.push(entry(
        "T4:KAN",
        "K A N",
        T4,
        vec![],
        fixed(&[g(Yk1), g(Yk2), g(Yk3), g(Ya), g(Yn1), g(Yn2)]),
        (0, Spacelike, 6),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));
    out.push(entry(
        "T4:K1AN",
        "K1 A N",
        T4,
        vec![],
        fixed(&[g(Yk1), g(Ya), g(Yn1), g(Yn2)]),
        (0, Spacelike, 4),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));
    let mut exp_n = entry(
        "T4:exp-lambda-mu-N",
        "exp(t(lambda Yk1 + mu Ya)) N",
        T4,
        vec![Lambda, Mu],
        vec![
            SymbolicGenerator::fixed(IsoAlgebraElement::zero()).with(Lambda, g(Yk1)).with(Mu, g(Ya)),
            SymbolicGenerator::fixed(g(Yn1)),
            SymbolicGenerator::fixed(g(Yn2)),
        ],
        (0, Spacelike, 3),
        vec![lam_mu(1, 3), lam_mu(-2, 3), Params::new(&[(Lambda, frac(1, 2)), (Mu, int(-1))])],
        Arc::new(nonproper_fixed),
    );
    exp_n.admissible = |ps| !ps.get(Param::Lambda).is_zero() && !ps.get(Param::Mu).is_zero();
    out.push(exp_n);
    out.push(entry(
        "T4:AN",
        "A N",
        T4,
        vec![],
        fixed(&[g(Ya), g(Yn1), g(Yn2)]),
        (0, Spacelike, 3),
        vec![Params::default()],
        Arc::new(nonproper_fixed),
    ));

    // Excluded candidates.
    let excluded = |id, name, gens: Vec<IsoAlgebraElement>, shape, strata: Option<Vec<usize>>| {
        entry(
            id,
            name,
            Excluded,
            vec![],
            fixed(&gens),
            shape,
            vec![Params::default()],
            Arc::new(move |_| Expected::excluded(strata.clone())),
        )
    };
    out.push(excluded("Excluded:SO21", "SO(2,1)", vec![g(Yk3), g(Ya), g(Yn2)], (0, Spacelike, 3), None));
    out.push(excluded("Excluded:SO3", "SO(3)", vec![g(Yk1), g(Yk2), g(Yk3)], (0, Spacelike, 3), None));
    out.push(excluded("Excluded:K1N", "K1 N", vec![g(Yk1), g(Yn1), g(Yn2)], (0, Spacelike, 3), None));
    out.push(excluded(
        "Excluded:K1AN-l",
        "K1 A N x l",
        vec![g(Yk1), g(Ya), g(Yn1), g(Yn2), ell()],
        (1, Lightlike, 4),
        Some(vec![1, 2, 4]),
    ));
    out.push(excluded("Excluded:AN-l", "A N x l", vec![g(Ya), g(Yn1), g(Yn2), ell()], (1, Lightlike, 3), Some(vec![1, 4])));
    out.push(excluded(
        "Excluded:AN1-W2",
        "A N1 x W^2",
        vec![g(Ya), g(Yn1), g(E2), ell()],
        (2, Degenerate, 2),
        Some(vec![2, 4]),
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 25);
        assert_eq!(cat.iter().filter(|e| e.table != Table::Excluded).count(), 19);
        let mut ids: Vec<_> = cat.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 25);
    }

    #[test]
    fn params_roundtrip() {
        let ps = Params::parse("lambda=1/2, mu=-3").unwrap();
        assert_eq!(ps.get(Param::Lambda), frac(1, 2));
        assert_eq!(ps.to_string(), "lambda=1/2,mu=-3");
        assert!(Params::parse("nu=1").is_err());
    }

    #[test]
    fn lookup() {
        let cat = builtin_catalog();
        assert_eq!(find_entry(&cat, "so3xre4").unwrap().id, "T3:SO3xRe4");
        assert_eq!(find_entry(&cat, "nope").unwrap_err(), Error::UnknownEntry("nope".into()));
    }

    #[test]
    fn declared_shapes_match_instantiations() {
        for e in builtin_catalog() {
            for ps in &e.instantiations {
                let Ok(h) = e.subalgebra(ps) else { continue };
                let inv = crate::subalgebra::invariants(&h);
                assert_eq!(inv.translation_dim, e.translation_dim, "{} {ps}", e.id);
                assert_eq!(inv.translation_causal.kind, e.translation_causal, "{} {ps}", e.id);
                assert_eq!(inv.projection_dim, e.projection_dim, "{} {ps}", e.id);
            }
        }
    }
}
