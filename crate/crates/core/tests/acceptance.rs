//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cohom31_core::algebra::{
    adjoint, bracket, computed_structure_table, lift_constraints, printed_structure_table, standard_generator,
    structure_table_errata, GeneratorLabel, LorentzAlgebraElement,
};
use cohom31_core::catalog::{builtin_catalog, find_entry, CatalogEntry, Param, Params, Table};
use cohom31_core::group::{exp_element, exp_element_f64, IsometryElement};
use cohom31_core::linalg::{int, same_span, CausalKind, MinkVector, Scalar};
use cohom31_core::orbit::{
    causal_flip_check, cohomogeneity_with_loci, invariant_function_check, orbit_space_report, OrbitSpaceKind,
};
use cohom31_core::poly::{InvariantFn, Poly};
use cohom31_core::properness::{decide_properness, VerdictKind};
use cohom31_core::subalgebra::match_catalog_basis;
use cohom31_core::verify::{verify_all, VerifyOptions};
use cohom31_core::IsoAlgebraElement;

type Outcome = Result<String, String>;

fn table_instances(cat: &[CatalogEntry]) -> Vec<(&CatalogEntry, Params)> {
    cat.iter()
        .filter(|e| e.table != Table::Excluded)
        .flat_map(|e| e.instantiations.iter().map(move |p| (e, p.clone())))
        .collect()
}

fn tag(e: &CatalogEntry, p: &Params) -> String {
    if p.is_empty() {
        e.id.to_string()
    } else {
        format!("{}[{p}]", e.id)
    }
}

fn collect(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures.join("; "))
    }
}

fn structure_constants() -> Outcome {
    let start = Instant::now();
    let errata = structure_table_errata();
    let printed = printed_structure_table();
    let computed = computed_structure_table();
    let elapsed = start.elapsed();
    if !errata.is_empty() {
        let list: Vec<String> = errata.iter().map(|e| e.to_string()).collect();
        return Err(format!("errata: {}", list.join("; ")));
    }
    if elapsed > Duration::from_millis(100) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} printed relations reproduced ({} computed) in {elapsed:?}", printed.len(), computed.len()))
}

fn constraint_lift() -> Outcome {
    let proj: Vec<LorentzAlgebraElement> = GeneratorLabel::LINEAR.iter().map(|&l| standard_generator(l).linear).collect();
    let lift = lift_constraints(&proj).map_err(|e| e.to_string())?;
    // u=(u1,u2,0,0), v=(v1,0,u2,0), w=(0,v1,-u1,0), x=(0,0,x3,v1), y=(x3+v1,0,u2,-u2), z=(0,x3+v1,-u1,u1)
    let family = |u1: i64, u2: i64, v1: i64, x3: i64| -> Vec<Scalar> {
        [
            [u1, u2, 0, 0],
            [v1, 0, u2, 0],
            [0, v1, -u1, 0],
            [0, 0, x3, v1],
            [x3 + v1, 0, u2, -u2],
            [0, x3 + v1, -u1, u1],
        ]
        .iter()
        .flatten()
        .map(|&c| int(c))
        .collect()
    };
    let printed = vec![family(1, 0, 0, 0), family(0, 1, 0, 0), family(0, 0, 1, 0), family(0, 0, 0, 1)];
    if lift.free_parameters() != 4 {
        return Err(format!("{} free parameters", lift.free_parameters()));
    }
    if !same_span(&lift.solution.kernel, &printed, 24) {
        return Err("solution family differs from the printed one".into());
    }
    Ok("4-parameter family, spans agree both ways".into())
}

fn classification() -> Outcome {
    let cat = builtin_catalog();
    let mut failures = Vec::new();
    let mut count = 0;
    for (e, p) in table_instances(&cat) {
        count += 1;
        match e.subalgebra(&p) {
            Err(err) => failures.push(format!("{}: {err}", tag(e, &p))),
            Ok(h) => {
                let c = cohomogeneity_with_loci(&h, 42, 32, &e.loci);
                if c.cohomogeneity != 1 {
                    failures.push(format!("{}: cohomogeneity {}", tag(e, &p), c.cohomogeneity));
                }
            }
        }
    }
    let strata: [(&str, Option<Vec<usize>>, usize); 6] = [
        ("Excluded:K1AN-l", Some(vec![1, 2, 4]), 4),
        ("Excluded:AN-l", Some(vec![1, 4]), 4),
        ("Excluded:AN1-W2", Some(vec![2, 4]), 4),
        ("Excluded:K1N", None, 2),
        ("Excluded:SO3", None, 2),
        ("Excluded:SO21", None, 2),
    ];
    for (id, dims, max) in strata {
        let e = find_entry(&cat, id).unwrap();
        let h = e.subalgebra(&Params::default()).map_err(|e| e.to_string())?;
        let c = cohomogeneity_with_loci(&h, 42, 32, &e.loci);
        if c.max_orbit_dim != max || dims.as_ref().is_some_and(|d| *d != c.dims()) {
            failures.push(format!("{id}: dims {:?}", c.dims()));
        }
    }
    collect(failures, format!("{count} table instantiations of cohomogeneity one, 6 excluded strata reproduced"))
}

fn declared_proper(id: &str, p: &Params) -> bool {
    match id {
        "T1:R3" | "T1:R21" | "T1:W3" | "T2:SO2xR11" | "T3:SO3xRe4" => true,
        "T2:A-lambda-W2" | "T2:N-lambda-W2" => !p.get(Param::Lambda).is_zero(),
        _ => false,
    }
}

fn properness_partition() -> Outcome {
    let cat = builtin_catalog();
    let mut failures = Vec::new();
    let (mut proper, mut nonproper) = (0, 0);
    for (e, p) in table_instances(&cat) {
        let want = if declared_proper(e.id, &p) { VerdictKind::ProperCertified } else { VerdictKind::NonProperCertified };
        let v = decide_properness(e, &p, 42, (1024, 1e-6, 100));
        if v.kind != want {
            failures.push(format!("{}: {} ({})", tag(e, &p), v.kind, v.evidence));
        } else if want == VerdictKind::ProperCertified {
            proper += 1;
        } else {
            nonproper += 1;
        }
    }
    collect(failures, format!("{proper} proper and {nonproper} non-proper instantiations certified"))
}

fn orbit_structure() -> Outcome {
    let cat = builtin_catalog();
    let mut failures = Vec::new();
    let p = Poly::var;
    let checks = [
        ("T2:SO2xR11", p(1).pow(2).add(&p(2).pow(2))),
        ("T3:SO3xRe4", p(1).pow(2).add(&p(2).pow(2)).add(&p(3).pow(2))),
    ];
    for (id, f) in checks {
        let h = find_entry(&cat, id).unwrap().subalgebra(&Params::default()).unwrap();
        if let Err(e) = invariant_function_check(&h, &InvariantFn::polynomial(f)) {
            failures.push(format!("{id}: {e}"));
        }
    }
    for (e, ps) in table_instances(&cat).into_iter().filter(|(e, p)| declared_proper(e.id, p)) {
        let want = match e.id {
            "T2:SO2xR11" | "T3:SO3xRe4" => OrbitSpaceKind::HalfLine,
            _ => OrbitSpaceKind::Line,
        };
        match orbit_space_report(e, &ps, 42, 32) {
            Ok(t) => {
                if t.kind != want {
                    failures.push(format!("{}: orbit space {t}", tag(e, &ps)));
                }
                for s in &t.singular {
                    if !matches!((s.dim, s.causal), (1, CausalKind::Timelike) | (2, CausalKind::Lorentzian)) {
                        failures.push(format!("{}: singular orbit dim {} {}", tag(e, &ps), s.dim, s.causal));
                    }
                }
            }
            Err(err) => failures.push(format!("{}: {err}", tag(e, &ps))),
        }
        let h = e.subalgebra(&ps).unwrap();
        let c = cohomogeneity_with_loci(&h, 42, 32, &[]);
        let spacelike = c.strata.iter().any(|r| r.dim == 3 && r.causal.kind == CausalKind::Spacelike);
        if spacelike != (e.id == "T1:R3") {
            failures.push(format!("{}: spacelike principal orbits {}", tag(e, &ps), if spacelike { "present" } else { "absent" }));
        }
    }
    let e = find_entry(&cat, "T2:N-lambda-W2").unwrap();
    for ps in e.instantiations.iter().filter(|p| !p.get(Param::Lambda).is_zero()) {
        let h = e.subalgebra(ps).unwrap();
        let spec = e.expected(ps).flip.expect("flip declared");
        if let Err(err) = causal_flip_check(&h, &spec, 42, 32) {
            failures.push(format!("{}: {err}", tag(e, ps)));
        }
    }
    collect(failures, "invariants exact, orbit spaces and singular orbits as declared, causal flip seen".into())
}

fn algebra_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let trials = 200;
    let mut failures = Vec::new();
    for t in 0..trials {
        let (a, b, c) = (common::element(&mut rng), common::element(&mut rng), common::element(&mut rng));
        let jac = bracket(&a, &bracket(&b, &c)).add(&bracket(&b, &bracket(&c, &a))).add(&bracket(&c, &bracket(&a, &b)));
        if !jac.is_zero() {
            failures.push(format!("Jacobi trial {t}"));
        }
        if bracket(&a, &b) != bracket(&b, &a).scale(&int(-1)) {
            failures.push(format!("antisymmetry trial {t}"));
        }
        let (g, h) = (common::isometry(&mut rng), common::isometry(&mut rng));
        if adjoint(&g.compose(&h), &a) != adjoint(&g, &adjoint(&h, &a)) {
            failures.push(format!("Ad homomorphism trial {t}"));
        }
        if adjoint(&g, &bracket(&a, &b)) != bracket(&adjoint(&g, &a), &adjoint(&g, &b)) {
            failures.push(format!("Ad bracket trial {t}"));
        }
        let gh = g.compose(&h);
        let lin_ok = LorentzAlgebraElement::new(bracket(&a, &b).linear.matrix().clone()).is_ok()
            && LorentzAlgebraElement::new(adjoint(&g, &a).linear.matrix().clone()).is_ok();
        if !gh.is_lorentz() || !g.invert().is_lorentz() || !lin_ok {
            failures.push(format!("Lorentz constraint trial {t}"));
        }
        // exp((s+u)a) = exp(sa) exp(ua): exact on nilpotent elements, numeric otherwise.
        let (s, u) = (common::scalar(&mut rng, 2), common::scalar(&mut rng, 2));
        let nil = [GeneratorLabel::Yn1, GeneratorLabel::Yn2, GeneratorLabel::E1, GeneratorLabel::E4]
            .iter()
            .fold(IsoAlgebraElement::zero(), |acc, &l| acc.add(&standard_generator(l).scale(&common::scalar(&mut rng, 2))));
        match (exp_element(&nil, &(&s + &u)), exp_element(&nil, &s), exp_element(&nil, &u)) {
            (IsometryElement::Exact(su), IsometryElement::Exact(e1), IsometryElement::Exact(e2)) => {
                if su != e1.compose(&e2) {
                    failures.push(format!("exact exponential law trial {t}"));
                }
            }
            _ => failures.push(format!("nilpotent exponential not exact, trial {t}")),
        }
        let (sf, uf) = (cohom31_core::linalg::to_f64(&s), cohom31_core::linalg::to_f64(&u));
        let lhs = exp_element_f64(&a, sf + uf);
        let rhs = exp_element_f64(&a, sf).compose(&exp_element_f64(&a, uf));
        let scale = 1.0 + lhs.linear_norm() + lhs.translation_norm();
        if !lhs.approx_eq(&rhs, 1e-9 * scale) {
            failures.push(format!("numeric exponential law trial {t}"));
        }
    }
    collect(failures, format!("{trials} trials each of Jacobi, antisymmetry, Ad, Lorentz constraint, exponential law"))
}

fn round_trip() -> Outcome {
    let cat = builtin_catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut count = 0;
    for e in &cat {
        for ps in &e.instantiations {
            count += 1;
            let q: MinkVector = common::point(&mut rng);
            let gens = match e.instantiate(ps) {
                Ok(g) => g,
                Err(err) => {
                    failures.push(format!("{}: {err}", tag(e, ps)));
                    continue;
                }
            };
            let moved: Vec<IsoAlgebraElement> = gens.iter().map(|g| g.translate_conjugate(&q)).collect();
            match match_catalog_basis(&moved, &cat) {
                Ok(m) if m.len() == 1 && m[0].id == e.id => {}
                Ok(m) => failures.push(format!("{}: matched {:?}", tag(e, ps), m.iter().map(|m| &m.id).collect::<Vec<_>>())),
                Err(err) => failures.push(format!("{}: {err}", tag(e, ps))),
            }
        }
    }
    collect(failures, format!("{count} instantiations re-identified uniquely"))
}

fn full_verify() -> Outcome {
    let start = Instant::now();
    let reports = verify_all(&builtin_catalog(), 42, &VerifyOptions::default());
    let json = serde_json::to_string(&reports).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.entry.as_str()).collect();
    if !failed.is_empty() {
        return Err(format!("failing entries {failed:?} after {elapsed:?}"));
    }
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} rows, {} bytes of JSON in {elapsed:?}", reports.len(), json.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("structure constants", structure_constants),
        ("constraint lift", constraint_lift),
        ("classification", classification),
        ("properness partition", properness_partition),
        ("orbit structure", orbit_structure),
        ("algebra properties", algebra_properties),
        ("round-trip matching", round_trip),
        ("full verify", full_verify),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
