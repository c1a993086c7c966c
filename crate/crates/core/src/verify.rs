//! Runs every declared check of a catalog entry and collects a report.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{builtin_catalog, CatalogEntry, ExpectedProperness, Params, Table};
use crate::linalg::CausalKind;
use crate::orbit::{causal_flip_check, cohomogeneity_with_loci, invariant_function_check, orbit_space_report, random_rational_point};
use crate::properness::{
    bounded_sequence, build_witness, check_witness, fixed_point_nonproper_certificate, parameter_recovery_check,
};
use crate::subalgebra::{invariants, match_catalog};

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub witness_steps: usize,
    pub tol: f64,
    pub recovery_trials: usize,
    /// Record wall-clock time; off gives byte-identical reports for equal seeds.
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 32, witness_steps: 1024, tol: 1e-6, recovery_trials: 100, timings: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub entry: String,
    pub checks: Vec<CheckResult>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// FNV-1a, so each entry gets a stream that does not depend on catalog order.
fn stream_id(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn entry_seed(seed: u64, id: &str, k: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(id));
    rng.set_word_pos(16 * k as u128);
    rand::RngCore::next_u64(&mut rng)
}

pub fn verify_entry(entry: &CatalogEntry, seed: u64, opts: &VerifyOptions) -> EntryReport {
    verify_entry_in(entry, &builtin_catalog(), seed, opts)
}

/// Like [`verify_entry`], matching against `catalog` instead of the built-in one.
pub fn verify_entry_in(entry: &CatalogEntry, catalog: &[CatalogEntry], seed: u64, opts: &VerifyOptions) -> EntryReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (k, params) in entry.instantiations.iter().enumerate() {
        let s = entry_seed(seed, entry.id, k);
        check_instance(entry, catalog, params, s, opts, &mut checks);
    }
    let elapsed_ms = if opts.timings { start.elapsed().as_millis() as u64 } else { 0 };
    EntryReport { entry: entry.id.to_string(), checks, seed, elapsed_ms }
}

fn check_instance(
    entry: &CatalogEntry,
    catalog: &[CatalogEntry],
    params: &Params,
    seed: u64,
    opts: &VerifyOptions,
    out: &mut Vec<CheckResult>,
) {
    let tag = if params.is_empty() { String::new() } else { format!("[{params}]") };
    let mut push = |name: &str, r: Result<String, String>| {
        let (pass, detail) = match r {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        out.push(CheckResult { name: format!("{name}{tag}"), pass, detail });
    };

    let h = match entry.subalgebra(params) {
        Ok(h) => {
            push("closure", Ok(format!("{} is closed", h)));
            h
        }
        Err(e) => {
            push("closure", Err(e.to_string()));
            return;
        }
    };
    let expected = entry.expected(params);

    let inv = invariants(&h);
    push(
        "invariants",
        if (inv.translation_dim, inv.translation_causal.kind, inv.projection_dim)
            == (entry.translation_dim, entry.translation_causal, entry.projection_dim)
        {
            Ok(inv.to_string())
        } else {
            Err(format!(
                "computed {inv}; declared translations {} {}, projection {}",
                entry.translation_dim, entry.translation_causal, entry.projection_dim
            ))
        },
    );

    let coh = cohomogeneity_with_loci(&h, seed, opts.samples, &entry.loci);
    push(
        "cohomogeneity",
        if coh.cohomogeneity == expected.cohomogeneity {
            Ok(format!("cohomogeneity {} (max orbit dim {})", coh.cohomogeneity, coh.max_orbit_dim))
        } else {
            Err(format!("computed {}, expected {}", coh.cohomogeneity, expected.cohomogeneity))
        },
    );
    if let Some(strata) = &expected.strata {
        let dims = coh.dims();
        push(
            "strata",
            if &dims == strata { Ok(format!("orbit dims {dims:?}")) } else { Err(format!("orbit dims {dims:?}, expected {strata:?}")) },
        );
    }

    if let Some(k) = expected.principal_causal {
        let generic: Vec<CausalKind> = coh.strata[..opts.samples.min(coh.strata.len())]
            .iter()
            .filter(|r| r.dim == 3)
            .map(|r| r.causal.kind)
            .collect();
        push(
            "principal-causal",
            if !generic.is_empty() && generic.iter().all(|c| *c == k) {
                Ok(format!("{} sampled principal orbits are {k}", generic.len()))
            } else {
                Err(format!("expected {k}, saw {generic:?}"))
            },
        );
    }

    match &expected.properness {
        ExpectedProperness::Proper(_) => {
            let cert = fixed_point_nonproper_certificate(&h);
            let recovery = parameter_recovery_check(entry, params, seed, opts.recovery_trials);
            let control = check_witness(&bounded_sequence(&h.basis()[0]), opts.witness_steps, opts.tol);
            push(
                "properness",
                match (cert, recovery, control) {
                    (Some(c), _, _) => Err(format!("declared proper but {} vanishes at {}", c.element, c.point)),
                    (None, Err(e), _) => Err(e.to_string()),
                    (None, Ok(_), Ok(_)) => Err("a bounded control sequence passed the divergence test".into()),
                    (None, Ok(n), Err(_)) => Ok(format!("proper: no fixed-point certificate, {n} exact recoveries")),
                },
            );
        }
        ExpectedProperness::NonProper(_) => {
            let r = build_witness(entry, params).and_then(|w| check_witness(&w, opts.witness_steps, opts.tol).map(|c| (w, c)));
            push(
                "properness",
                match r {
                    Ok((w, c)) => Ok(format!(
                        "non-proper: {}; |g_n| up to {:.3e}",
                        w.description,
                        c.linear_norms.last().unwrap().max(*c.translation_norms.last().unwrap())
                    )),
                    Err(e) => Err(e.to_string()),
                },
            );
        }
        ExpectedProperness::NotApplicable => {}
    }

    if expected.orbit_space.is_some() {
        push(
            "orbit-space",
            orbit_space_report(entry, params, seed, opts.samples).map(|t| t.to_string()).map_err(|e| e.to_string()),
        );
    }
    if let Some(f) = &expected.invariant {
        push("invariant", invariant_function_check(&h, f).map(|_| format!("{f} is invariant")).map_err(|e| e.to_string()));
    }
    if let Some(spec) = &expected.flip {
        push(
            "causal-flip",
            causal_flip_check(&h, spec, seed, opts.samples)
                .map(|r| format!("{} + {} orbits classified", r.negative.len(), r.nonnegative.len()))
                .map_err(|e| e.to_string()),
        );
    }

    if entry.table != Table::Excluded || catalog.iter().any(|e| e.id == entry.id) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let q = random_rational_point(&mut rng);
        let moved = h.translate_conjugate(&q);
        let found = match_catalog(&moved, catalog);
        let ids: Vec<&str> = found.iter().map(|m| m.id.as_str()).collect();
        push(
            "matching",
            if ids == [entry.id] {
                Ok(format!("conjugate by {q} matched {} with {}", entry.id, found[0].params))
            } else {
                Err(format!("conjugate by {q} matched {ids:?}"))
            },
        );
    }
}

/// Verifies every entry, in catalog order.
pub fn verify_all(catalog: &[CatalogEntry], seed: u64, opts: &VerifyOptions) -> Vec<EntryReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        catalog.par_iter().map(|e| verify_entry_in(e, catalog, seed, opts)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        catalog.iter().map(|e| verify_entry_in(e, catalog, seed, opts)).collect()
    }
}
