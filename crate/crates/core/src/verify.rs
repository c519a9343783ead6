//! End-to-end verification pipelines. Each claim is checked with exact
//! arithmetic and reported in a machine-readable form with enough witnesses
//! that a script can re-assert the outcome without re-running the engine.

use std::collections::HashMap;
use std::time::Instant;

use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::monomial::compare;
use crate::algebra::{is_prime_u64, Field, Gf, Monomial, Polynomial, VarSet, VariableOrder};
use crate::complexes::{
    delta_complex, f_from_h, f_h_from_counts, facet_count_formula, multiplicity_formula,
    sigma_complex, SimplicialComplex, DEFAULT_ENUM_BUDGET,
};
use crate::groebner::{buchberger, BuchbergerOptions};
use crate::monideal::{inclusion_equality_criterion, stanley_reisner_ideal, MonomialIdeal};
use crate::pfaffian::{self, PfaffianInstance, TieBreak};
use crate::polyomino::StackPolyomino;
use crate::DEFAULT_PRIME;

/// Coefficient domain for one verification run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CoeffField {
    #[default]
    Rational,
    Prime(u64),
}

impl CoeffField {
    /// Parses `rational` or `prime:P` with P prime.
    pub fn parse(s: &str) -> Result<CoeffField, String> {
        if s == "rational" {
            return Ok(CoeffField::Rational);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p
                .parse()
                .map_err(|_| format!("invalid prime modulus {p:?}"))?;
            if !is_prime_u64(p) {
                return Err(format!("{p} is not prime"));
            }
            return Ok(CoeffField::Prime(p));
        }
        Err(format!(
            "unknown field {s:?}; expected `rational` or `prime:P`"
        ))
    }

    pub fn describe(&self) -> String {
        match self {
            CoeffField::Rational => "rational".to_string(),
            CoeffField::Prime(p) => format!("prime:{p}"),
        }
    }
}

/// Tunables shared by the pipelines.
#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub tie_break: TieBreak,
    pub spair_budget: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            tie_break: TieBreak::SpanThenLex,
            spair_budget: 200_000,
        }
    }
}

impl EngineOptions {
    fn buchberger(&self) -> BuchbergerOptions {
        BuchbergerOptions {
            spair_budget: self.spair_budget,
            ..BuchbergerOptions::default()
        }
    }
}

/// Witness fields with stable names. The seven schema fields are always
/// serialized (null when not applicable); extras are omitted when absent.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Witnesses {
    pub min_gens: Option<Vec<String>>,
    pub f_vector: Option<Vec<i64>>,
    pub h_vector: Option<Vec<i64>>,
    pub facets: Option<u64>,
    pub dim: Option<i64>,
    pub e: Option<u64>,
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl Witnesses {
    fn empty() -> Self {
        Witnesses {
            min_gens: None,
            f_vector: None,
            h_vector: None,
            facets: None,
            dim: None,
            e: None,
            a: None,
            theta: None,
            table: None,
            failure: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: Value,
    pub pass: bool,
    pub witnesses: Witnesses,
    pub timing_ms: u64,
}

/// Records the first failed sub-assertion; later checks still run so the
/// report carries full witnesses.
#[derive(Default)]
struct Checks {
    first_failure: Option<String>,
}

impl Checks {
    fn require(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }

    fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn finish(
    claim: &str,
    params: Value,
    checks: Checks,
    mut witnesses: Witnesses,
    started: Instant,
) -> VerificationReport {
    let pass = checks.pass();
    witnesses.failure = checks.first_failure;
    VerificationReport {
        claim: claim.to_string(),
        params,
        pass,
        witnesses,
        timing_ms: started.elapsed().as_millis() as u64,
    }
}

fn rendered_gens_ascending(ideal: &MonomialIdeal, order: &VariableOrder) -> Vec<String> {
    let mut gens = ideal.gens().to_vec();
    gens.sort_by(|a, b| compare(order, a, b));
    gens.iter().map(|m| m.render(ideal.vars())).collect()
}

/// Face bitmasks cap the ground sets at 64 vertices; the full diagonal ring
/// must fit because quotient statistics walk its nonface complex.
fn desk_scale_guard(n: u32) -> Result<(), String> {
    let ring_size = n as u64 * (n as u64).saturating_sub(1) / 2;
    if ring_size > 64 {
        Err(format!(
            "n = {n} puts {ring_size} variables in the ring, beyond the 64-vertex bitmask limit"
        ))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Groebner certification of the sub-Pfaffian ideals (claim `thm-main`)
// ---------------------------------------------------------------------------

/// Certifies that the sub-Pfaffian generators are a Groebner basis, that the
/// initial ideal is the nonface ideal of the crossing complex joined with a
/// simplex on the short diagonals, and that the quotient invariants match the
/// closed formulas.
pub fn verify_main_theorem(
    n: u32,
    r: u32,
    field: CoeffField,
    opts: &EngineOptions,
) -> VerificationReport {
    let started = Instant::now();
    let params = json!({ "n": n, "r": r, "field": field.describe() });
    if let Err(e) = desk_scale_guard(n) {
        let mut checks = Checks::default();
        checks.fail(e);
        return finish("thm-main", params, checks, Witnesses::empty(), started);
    }
    let (checks, witnesses) = match field {
        CoeffField::Rational => main_theorem_core::<BigRational>(n, r, (), opts),
        CoeffField::Prime(p) => main_theorem_core::<Gf>(n, r, p, opts),
    };
    finish("thm-main", params, checks, witnesses, started)
}

fn main_theorem_core<F: Field>(
    n: u32,
    r: u32,
    cfg: F::Config,
    opts: &EngineOptions,
) -> (Checks, Witnesses) {
    let inst = PfaffianInstance::new(n, r);
    let mut checks = Checks::default();
    let mut w = Witnesses::empty();

    let gens = pfaffian::ideal_generators::<F>(inst, opts.tie_break, cfg);
    let report = match buchberger(&gens, &opts.buchberger()) {
        Ok(rep) => rep,
        Err(e) => {
            checks.fail(format!("Buchberger failed: {e}"));
            return (checks, w);
        }
    };
    checks.require(report.is_basis, || {
        format!(
            "generators are not a Groebner basis: {} of {} S-pairs had nonzero normal form",
            report.spairs_considered - report.spairs_reduced_to_zero,
            report.spairs_considered
        )
    });

    let expected = pfaffian::expected_initial_generators(inst);
    checks.require(report.initial_ideal.gens() == expected.as_slice(), || {
        format!(
            "initial ideal has {} minimal generators, expected the {} diagonal-product monomials",
            report.initial_ideal.gens().len(),
            expected.len()
        )
    });
    w.min_gens = Some(rendered_gens_ascending(&report.initial_ideal, &gens.order));

    // The combinatorial side: crossing complex with the shifted parameter.
    let s = r as i64 - 1;
    let complex = delta_complex(n, r - 1);
    match complex.sphere_certificate(DEFAULT_ENUM_BUDGET) {
        Err(e) => checks.fail(format!("sphere certificate: {e}")),
        Ok(cert) => {
            let dim_formula = s * (n as i64 - 2 * s - 1) - 1;
            checks.require(cert.all_ok(), || {
                format!(
                    "sphere certificate failed: pure={} euler_ok={} pseudomanifold_ok={} connected_ok={}",
                    cert.pure, cert.euler_ok, cert.pseudomanifold_ok, cert.connected_ok
                )
            });
            checks.require(cert.dimension == dim_formula, || {
                format!(
                    "complex dimension {} differs from formula value {dim_formula}",
                    cert.dimension
                )
            });
        }
    }
    let mut complex_h: Option<Vec<i64>> = None;
    match complex.face_counts(DEFAULT_ENUM_BUDGET) {
        Err(e) => checks.fail(format!("face census: {e}")),
        Ok(counts) => {
            let fh = f_h_from_counts(&counts);
            complex_h = Some(fh.h_polynomial());
            w.f_vector = Some(fh.f.clone());
        }
    }
    match complex.facets(DEFAULT_ENUM_BUDGET) {
        Err(e) => checks.fail(format!("facet enumeration: {e}")),
        Ok(facets) => w.facets = Some(facets.len() as u64),
    }

    // Short diagonals (distance at most r-1) count to n*(r-1) in range.
    let theta = pfaffian::ground_sets(n, r - 1).theta.len() as u64;
    w.theta = Some(theta);
    checks.require(theta == n as u64 * (r as u64 - 1), || {
        format!(
            "short-diagonal set has {theta} elements, expected {}",
            n as u64 * (r as u64 - 1)
        )
    });

    // Quotient invariants of the initial ideal.
    let stats = report.initial_ideal.quotient_stats();
    w.dim = Some(stats.krull_dim);
    w.e = Some(stats.multiplicity);
    w.a = Some(stats.a_invariant);
    w.h_vector = Some(stats.h.clone());
    let dim_expected = s * (2 * n as i64 - 2 * s - 1);
    checks.require(stats.krull_dim == dim_expected, || {
        format!(
            "Krull dimension {} differs from expected {dim_expected}",
            stats.krull_dim
        )
    });
    let e_expected = multiplicity_formula(n, r);
    checks.require(stats.multiplicity == e_expected, || {
        format!(
            "multiplicity {} differs from product formula value {e_expected}",
            stats.multiplicity
        )
    });
    checks.require(stats.a_invariant == -(n as i64) * s, || {
        format!(
            "a-invariant {} differs from expected {}",
            stats.a_invariant,
            -(n as i64) * s
        )
    });
    if let Some(h) = complex_h {
        checks.require(stats.h == h, || {
            format!(
                "quotient h-polynomial {:?} differs from the complex h-polynomial {:?}",
                stats.h, h
            )
        });
    }

    (checks, w)
}

// ---------------------------------------------------------------------------
// Product formulas against enumeration (claim `prop-2.2ii`)
// ---------------------------------------------------------------------------

/// For every `(n, r)` with `3 <= n <= n_max`: the facet-count product equals
/// the enumerated facet count, and the multiplicity product with ideal
/// parameter r equals the facet-count product at `r - 1`.
pub fn verify_formulas(n_max: u32) -> VerificationReport {
    let started = Instant::now();
    let mut checks = Checks::default();
    if let Err(e) = desk_scale_guard(n_max) {
        checks.fail(e);
        return finish(
            "prop-2.2ii",
            json!({ "n_max": n_max }),
            checks,
            Witnesses::empty(),
            started,
        );
    }
    let mut table = Vec::new();
    for n in 3..=n_max {
        for r in 0..=((n - 1) / 2) {
            let formula = facet_count_formula(n, r);
            match delta_complex(n, r).facets(DEFAULT_ENUM_BUDGET) {
                Err(e) => checks.fail(format!("facets of ({n},{r}): {e}")),
                Ok(facets) => {
                    let enumerated = facets.len() as u64;
                    checks.require(enumerated == formula, || {
                        format!(
                            "({n},{r}): enumerated {enumerated} facets, formula gives {formula}"
                        )
                    });
                    table.push(json!({
                        "kind": "facets",
                        "n": n,
                        "r": r,
                        "formula": formula,
                        "enumerated": enumerated,
                    }));
                }
            }
        }
        for r in 1..=(n / 2) {
            let multiplicity = multiplicity_formula(n, r);
            let facet_formula = facet_count_formula(n, r - 1);
            checks.require(multiplicity == facet_formula, || {
                format!(
                    "({n},{r}): multiplicity product {multiplicity} differs from facet product {facet_formula}"
                )
            });
            table.push(json!({
                "kind": "multiplicity",
                "n": n,
                "r": r,
                "multiplicity": multiplicity,
                "facet_formula": facet_formula,
            }));
        }
    }
    let mut w = Witnesses::empty();
    w.table = Some(table);
    finish("prop-2.2ii", json!({ "n_max": n_max }), checks, w, started)
}

// ---------------------------------------------------------------------------
// Sphere certificates across the acceptance window (claim `prop-2.2i`)
// ---------------------------------------------------------------------------

pub fn verify_sphere_certificates(n_min: u32, n_max: u32) -> VerificationReport {
    let started = Instant::now();
    let mut checks = Checks::default();
    let mut table = Vec::new();
    for n in n_min..=n_max {
        for r in 1..=((n - 1) / 2) {
            let complex = delta_complex(n, r);
            let dim_formula = r as i64 * (n as i64 - 2 * r as i64 - 1) - 1;
            let cert = match complex.sphere_certificate(DEFAULT_ENUM_BUDGET) {
                Err(e) => {
                    checks.fail(format!("({n},{r}): {e}"));
                    continue;
                }
                Ok(c) => c,
            };
            let counts = match complex.face_counts(DEFAULT_ENUM_BUDGET) {
                Err(e) => {
                    checks.fail(format!("({n},{r}): {e}"));
                    continue;
                }
                Ok(c) => c,
            };
            let fh = f_h_from_counts(&counts);
            let mut reversed = fh.h.clone();
            reversed.reverse();
            let symmetric = fh.h == reversed;
            checks.require(cert.all_ok(), || {
                format!(
                    "({n},{r}): certificate flags pure={} euler_ok={} pseudomanifold_ok={} connected_ok={}",
                    cert.pure, cert.euler_ok, cert.pseudomanifold_ok, cert.connected_ok
                )
            });
            checks.require(cert.dimension == dim_formula, || {
                format!(
                    "({n},{r}): dimension {} differs from formula {dim_formula}",
                    cert.dimension
                )
            });
            checks.require(symmetric, || {
                format!("({n},{r}): h-vector {:?} is not symmetric", fh.h)
            });
            table.push(json!({
                "n": n,
                "r": r,
                "dim": cert.dimension,
                "euler": cert.euler,
                "h_vector": fh.h,
                "pure": cert.pure,
                "pseudomanifold": cert.pseudomanifold_ok,
                "connected": cert.connected_ok,
            }));
        }
    }
    let mut w = Witnesses::empty();
    w.table = Some(table);
    finish(
        "prop-2.2i",
        json!({ "n_max": n_max, "n_min": n_min }),
        checks,
        w,
        started,
    )
}

// ---------------------------------------------------------------------------
// h-polynomial equality of crossing and nesting complexes (claim `cor-3.3`)
// ---------------------------------------------------------------------------

/// Compares the h-polynomials of the crossing and nesting complexes with
/// parameter `r - 1`, through the Hilbert-series route (exact, and feasible
/// where full face enumeration is not).
pub fn verify_h_equality(n: u32, r: u32) -> VerificationReport {
    let started = Instant::now();
    assert!(r >= 1 && 2 * r <= n, "need 1 <= 2r <= n");
    let mut checks = Checks::default();
    let mut w = Witnesses::empty();
    if let Err(e) = desk_scale_guard(n) {
        checks.fail(e);
        return finish("cor-3.3", json!({ "n": n, "r": r }), checks, w, started);
    }

    let delta = delta_complex(n, r - 1);
    let sigma = sigma_complex(n, r - 1);
    let (h_delta, d_delta) = stanley_reisner_ideal(&delta).hilbert_h_and_dim();
    let (h_sigma, d_sigma) = stanley_reisner_ideal(&sigma).hilbert_h_and_dim();

    checks.require(h_delta == h_sigma, || {
        format!("h-polynomials differ: crossing {h_delta:?} vs nesting {h_sigma:?}")
    });

    let mut padded = h_delta.clone();
    padded.resize(d_delta as usize + 1, 0);
    w.f_vector = Some(f_from_h(&padded, d_delta as usize));
    w.h_vector = Some(h_delta.clone());
    w.dim = Some(d_delta - 1);
    w.e = Some(h_delta.iter().sum::<i64>() as u64);
    w.table = Some(vec![
        json!({ "family": "crossing", "dim": d_delta - 1, "h": h_delta }),
        json!({ "family": "nesting", "dim": d_sigma - 1, "h": h_sigma }),
    ]);
    finish("cor-3.3", json!({ "n": n, "r": r }), checks, w, started)
}

// ---------------------------------------------------------------------------
// Determinantal ideals of stack polyominoes (claims `thm-6.4`, `cor-6.5`)
// ---------------------------------------------------------------------------

pub fn verify_determinantal(
    heights: &[u16],
    r: usize,
    field: CoeffField,
    opts: &EngineOptions,
) -> VerificationReport {
    let started = Instant::now();
    let params = json!({ "heights": heights, "r": r, "field": field.describe() });
    let stack = match StackPolyomino::from_heights(heights) {
        Ok(s) => s,
        Err(e) => {
            let mut checks = Checks::default();
            checks.fail(format!("invalid stack polyomino: {e}"));
            return finish("thm-6.4", params, checks, Witnesses::empty(), started);
        }
    };
    if stack.cell_count() > 64 {
        let mut checks = Checks::default();
        checks.fail(format!(
            "{} cells exceed the 64-vertex bitmask limit",
            stack.cell_count()
        ));
        return finish("thm-6.4", params, checks, Witnesses::empty(), started);
    }
    let (checks, witnesses) = match field {
        CoeffField::Rational => determinantal_core::<BigRational>(&stack, r, (), opts),
        CoeffField::Prime(p) => determinantal_core::<Gf>(&stack, r, p, opts),
    };
    finish("thm-6.4", params, checks, witnesses, started)
}

fn determinantal_core<F: Field>(
    stack: &StackPolyomino,
    r: usize,
    cfg: F::Config,
    opts: &EngineOptions,
) -> (Checks, Witnesses) {
    let mut checks = Checks::default();
    let mut w = Witnesses::empty();

    let gens = stack.determinantal_generators::<F>(r, cfg);
    let expected = stack.expected_initial_generators(r);
    if gens.gens.is_empty() {
        checks.require(expected.is_empty(), || {
            "no minors exist but diagonal monomials were expected".to_string()
        });
        w.min_gens = Some(Vec::new());
    } else {
        match buchberger(&gens, &opts.buchberger()) {
            Err(e) => checks.fail(format!("Buchberger failed: {e}")),
            Ok(report) => {
                checks.require(report.is_basis, || {
                    format!(
                        "minors are not a Groebner basis: {} of {} S-pairs had nonzero normal form",
                        report.spairs_considered - report.spairs_reduced_to_zero,
                        report.spairs_considered
                    )
                });
                checks.require(report.initial_ideal.gens() == expected.as_slice(), || {
                    format!(
                        "initial ideal has {} minimal generators, expected the {} diagonal monomials",
                        report.initial_ideal.gens().len(),
                        expected.len()
                    )
                });
                w.min_gens = Some(rendered_gens_ascending(&report.initial_ideal, &gens.order));
            }
        }
    }

    // Purity, dimension and facet count agree with the content; the full
    // f-vectors agree as well.
    let complex = stack.complex(r);
    let content_complex = stack.content().complex(r);
    match (
        complex.facets(DEFAULT_ENUM_BUDGET),
        content_complex.facets(DEFAULT_ENUM_BUDGET),
    ) {
        (Ok(ours), Ok(theirs)) => {
            let top = |fs: &[u64]| fs.iter().map(|f| f.count_ones()).max().unwrap_or(0);
            let pure = |fs: &[u64]| {
                let t = top(fs);
                fs.iter().all(|f| f.count_ones() == t)
            };
            checks.require(pure(&ours) && pure(&theirs), || {
                "complex or its content complex is not pure".to_string()
            });
            checks.require(top(&ours) == top(&theirs), || {
                format!(
                    "dimension mismatch with content: {} vs {}",
                    top(&ours) as i64 - 1,
                    top(&theirs) as i64 - 1
                )
            });
            checks.require(ours.len() == theirs.len(), || {
                format!(
                    "facet count mismatch with content: {} vs {}",
                    ours.len(),
                    theirs.len()
                )
            });
            w.facets = Some(ours.len() as u64);
            w.dim = Some(top(&ours) as i64 - 1);
        }
        (Err(e), _) | (_, Err(e)) => checks.fail(format!("facet enumeration: {e}")),
    }
    match (
        complex.face_counts(DEFAULT_ENUM_BUDGET),
        content_complex.face_counts(DEFAULT_ENUM_BUDGET),
    ) {
        (Ok(ours), Ok(theirs)) => {
            let fh = f_h_from_counts(&ours);
            let fh_content = f_h_from_counts(&theirs);
            checks.require(fh.f == fh_content.f, || {
                format!(
                    "f-vector differs from content: {:?} vs {:?}",
                    fh.f, fh_content.f
                )
            });
            w.e = Some(*ours.last().unwrap());
            w.h_vector = Some(fh.h_polynomial());
            w.f_vector = Some(fh.f);
        }
        (Err(e), _) | (_, Err(e)) => checks.fail(format!("face census: {e}")),
    }

    (checks, w)
}

/// Same-content stacks must have identical full f-vectors.
pub fn verify_content_fvector(family: &[Vec<u16>], r: usize) -> VerificationReport {
    let started = Instant::now();
    let params = json!({ "family": family, "r": r });
    let mut checks = Checks::default();
    let mut w = Witnesses::empty();
    let mut rows = Vec::new();
    let mut reference: Option<(Vec<u16>, Vec<i64>)> = None;
    for heights in family {
        let stack = match StackPolyomino::from_heights(heights) {
            Ok(s) => s,
            Err(e) => {
                checks.fail(format!("invalid stack {heights:?}: {e}"));
                continue;
            }
        };
        let counts = match stack.complex(r).face_counts(DEFAULT_ENUM_BUDGET) {
            Ok(c) => c,
            Err(e) => {
                checks.fail(format!("face census for {heights:?}: {e}"));
                continue;
            }
        };
        let f = f_h_from_counts(&counts).f;
        rows.push(json!({ "heights": heights, "f_vector": f }));
        match &reference {
            None => reference = Some((crate::polyomino::sorted_heights(heights), f)),
            Some((content, f_ref)) => {
                checks.require(
                    *content == crate::polyomino::sorted_heights(heights),
                    || format!("stack {heights:?} has a different content"),
                );
                checks.require(*f_ref == f, || {
                    format!("f-vector of {heights:?} differs: {f:?} vs {f_ref:?}")
                });
            }
        }
    }
    w.f_vector = reference.map(|(_, f)| f);
    w.table = Some(rows);
    finish("cor-6.5", params, checks, w, started)
}

// ---------------------------------------------------------------------------
// Squared Pfaffian versus symbolic determinant (claim `pf-squared`)
// ---------------------------------------------------------------------------

/// Symbolic determinant by cofactor expansion along the first row, memoized
/// over column subsets. Independent of the matching expansion it checks.
pub fn cofactor_determinant<F: Field>(
    matrix: &[Vec<Polynomial<F>>],
    one: Polynomial<F>,
) -> Polynomial<F> {
    let m = matrix.len();
    assert!(m < 64, "matrix too large for the bitmask driver");
    assert!(matrix.iter().all(|row| row.len() == m), "square matrix");
    let full: u64 = (1 << m) - 1;
    let mut memo: HashMap<u64, Polynomial<F>> = HashMap::new();
    det_rec(matrix, 0, full, &one, &mut memo)
}

fn det_rec<F: Field>(
    matrix: &[Vec<Polynomial<F>>],
    row: usize,
    cols: u64,
    one: &Polynomial<F>,
    memo: &mut HashMap<u64, Polynomial<F>>,
) -> Polynomial<F> {
    if cols == 0 {
        return one.clone();
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let mut acc = Polynomial::zero();
    let mut positive = true;
    for c in 0..matrix.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &matrix[row][c];
        if !entry.is_zero() {
            let minor = det_rec(matrix, row + 1, cols & !(1 << c), one, memo);
            let signed = entry.mul(&minor);
            acc = if positive {
                acc.add(&signed)
            } else {
                acc.sub(&signed)
            };
        }
        positive = !positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// The generic skew-symmetric matrix of size m over the diagonal variables.
pub fn skew_matrix<F: Field>(m: u32, cfg: &F::Config) -> Vec<Vec<Polynomial<F>>> {
    let num_vars = (m * (m - 1) / 2) as usize;
    let mut rows = Vec::with_capacity(m as usize);
    for i in 1..=m as u16 {
        let mut row = Vec::with_capacity(m as usize);
        for j in 1..=m as u16 {
            row.push(if i < j {
                Polynomial::term(
                    Monomial::var(num_vars, pfaffian::var_index(m, i, j)),
                    F::from_int(1, cfg),
                )
            } else if i > j {
                Polynomial::term(
                    Monomial::var(num_vars, pfaffian::var_index(m, j, i)),
                    F::from_int(-1, cfg),
                )
            } else {
                Polynomial::zero()
            });
        }
        rows.push(row);
    }
    rows
}

/// Checks `pf(A_m)^2 = det(A_m)` for even m and `det(A_m) = 0` for odd m,
/// all sizes up to `m_max`, over the rationals.
pub fn verify_pfaffian_determinant(m_max: u32) -> VerificationReport {
    let started = Instant::now();
    let mut checks = Checks::default();
    let mut table = Vec::new();
    for m in 2..=m_max {
        let num_vars = (m * (m - 1) / 2) as usize;
        let one = Polynomial::term(Monomial::one(num_vars), BigRational::from_int(1, &()));
        let det = cofactor_determinant(&skew_matrix::<BigRational>(m, &()), one);
        if m % 2 == 0 {
            let indices: Vec<u32> = (1..=m).collect();
            let pf = pfaffian::pfaffian::<BigRational>(m, &indices, &());
            let ok = pf.mul(&pf) == det;
            checks.require(ok, || {
                format!("pf(A_{m})^2 does not match the cofactor determinant")
            });
            table.push(json!({ "m": m, "pf_terms": pf.term_count(), "squared_matches": ok }));
        } else {
            let ok = det.is_zero();
            checks.require(ok, || format!("det(A_{m}) is not zero"));
            table.push(json!({ "m": m, "det_zero": ok }));
        }
    }
    let mut w = Witnesses::empty();
    w.table = Some(table);
    finish("pf-squared", json!({ "m_max": m_max }), checks, w, started)
}

// ---------------------------------------------------------------------------
// Polarization laws against a truncated Hilbert function (claim
// `lemma-5.1-laws`)
// ---------------------------------------------------------------------------

/// Degree-by-degree Hilbert function of the quotient by direct monomial
/// counting, turned into (Krull dimension, multiplicity, h-polynomial).
/// Exact when the ideal's per-variable maximal exponents sum to at most
/// `max_degree`. Independent of both the polarization and the
/// variable-splitting routes.
pub fn truncated_hilbert_stats(ideal: &MonomialIdeal, max_degree: usize) -> (i64, u64, Vec<i64>) {
    let ell = ideal.vars().len();
    let mut hf = vec![0i128; max_degree + 1];
    let mut exps = vec![0u16; ell];
    count_standard_monomials(ideal, &mut exps, 0, 0, max_degree, &mut hf);

    // Numerator of the series over (1-t)^ell, truncated; the degree bound
    // guarantees the truncation is exact.
    let mut numerator = vec![0i128; max_degree + 1];
    for (i, coeff) in numerator.iter_mut().enumerate() {
        for k in 0..=i.min(ell) {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            *coeff += sign * crate::complexes::binomial_i128(ell as i64, k as i64) * hf[i - k];
        }
    }
    while numerator.len() > 1 && *numerator.last().unwrap() == 0 {
        numerator.pop();
    }
    let mut shed = 0i64;
    while numerator.len() > 1 && numerator.iter().sum::<i128>() == 0 {
        let mut q = Vec::with_capacity(numerator.len() - 1);
        let mut carry = 0i128;
        for c in &numerator[..numerator.len() - 1] {
            carry += c;
            q.push(carry);
        }
        numerator = q;
        shed += 1;
    }
    let h: Vec<i64> = numerator
        .into_iter()
        .map(|c| i64::try_from(c).expect("h coefficient overflows i64"))
        .collect();
    let e = h.iter().sum::<i64>();
    assert!(e > 0, "multiplicity must be positive");
    (ell as i64 - shed, e as u64, h)
}

fn count_standard_monomials(
    ideal: &MonomialIdeal,
    exps: &mut Vec<u16>,
    var: usize,
    degree: usize,
    max_degree: usize,
    hf: &mut [i128],
) {
    if var == exps.len() {
        let m = Monomial::from_exps(exps.clone());
        if !ideal.contains_monomial(&m) {
            hf[degree] += 1;
        }
        return;
    }
    for e in 0..=(max_degree - degree) as u16 {
        exps[var] = e;
        count_standard_monomials(ideal, exps, var + 1, degree + e as usize, max_degree, hf);
    }
    exps[var] = 0;
}

const ORACLE_DEGREE: usize = 12;

/// Random monomial ideals (at most 6 variables, exponents at most 3, chosen
/// so the truncated oracle stays exact): multiplicity is invariant under
/// polarization, dimension shifts by the number of new variables, and the
/// polarization route agrees with direct Hilbert-function counting. Also
/// exercises the inclusion-equality criterion on a known instance and a
/// known counterexample.
pub fn verify_polarization_laws(instances: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let mut checks = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;

    for idx in 0..instances {
        let ideal = random_oracle_friendly_ideal(&mut rng);
        let stats = ideal.quotient_stats();
        let pol = ideal.polarize();
        let shift = pol.ideal.vars().len() as i64 - ideal.vars().len() as i64;
        let pol_stats = pol.ideal.quotient_stats();

        checks.require(stats.multiplicity == pol_stats.multiplicity, || {
            format!(
                "instance {idx}: multiplicity changed under polarization ({} vs {})",
                stats.multiplicity, pol_stats.multiplicity
            )
        });
        checks.require(pol_stats.krull_dim == stats.krull_dim + shift, || {
            format!(
                "instance {idx}: dimension shift {} != variable count difference {shift}",
                pol_stats.krull_dim - stats.krull_dim
            )
        });

        let (d_oracle, e_oracle, h_oracle) = truncated_hilbert_stats(&ideal, ORACLE_DEGREE);
        checks.require(d_oracle == stats.krull_dim, || {
            format!(
                "instance {idx}: oracle dimension {d_oracle} vs polarization route {}",
                stats.krull_dim
            )
        });
        checks.require(e_oracle == stats.multiplicity, || {
            format!(
                "instance {idx}: oracle multiplicity {e_oracle} vs polarization route {}",
                stats.multiplicity
            )
        });
        checks.require(h_oracle == stats.h, || {
            format!(
                "instance {idx}: oracle h-polynomial {h_oracle:?} vs polarization route {:?}",
                stats.h
            )
        });
        checked += 1;
    }

    // Equal ideals satisfy the criterion; dropping a generator that changes
    // the multiplicity must break it.
    let pentagon = stanley_reisner_ideal(&delta_complex(5, 1));
    match inclusion_equality_criterion(&pentagon, &pentagon) {
        Ok(ok) => checks.require(ok, || "criterion failed on equal ideals".to_string()),
        Err(e) => checks.fail(format!("criterion on equal ideals: {e}")),
    }
    let vars = VarSet::anonymous(3);
    let inner = MonomialIdeal::new(vars.clone(), [Monomial::from_support(3, [0, 1])]);
    let outer = MonomialIdeal::new(
        vars,
        [
            Monomial::from_support(3, [0, 1]),
            Monomial::from_support(3, [0, 2]),
        ],
    );
    match inclusion_equality_criterion(&inner, &outer) {
        Ok(ok) => checks.require(!ok, || {
            "criterion accepted a strict inclusion with different multiplicities".to_string()
        }),
        Err(e) => checks.fail(format!("criterion on strict inclusion: {e}")),
    }

    let mut w = Witnesses::empty();
    w.table = Some(vec![json!({
        "instances": checked,
        "max_vars": 6,
        "max_exponent": 3,
        "oracle_degree": ORACLE_DEGREE,
    })]);
    finish(
        "lemma-5.1-laws",
        json!({ "instances": instances, "seed": seed }),
        checks,
        w,
        started,
    )
}

fn random_oracle_friendly_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    loop {
        let nv = rng.gen_range(3..=6usize);
        let gen_count = rng.gen_range(2..=4usize);
        let mut gens = Vec::with_capacity(gen_count);
        for _ in 0..gen_count {
            let support_size = rng.gen_range(1..=3usize.min(nv));
            let mut order: Vec<usize> = (0..nv).collect();
            for k in 0..support_size {
                let t = rng.gen_range(k..nv);
                order.swap(k, t);
            }
            let mut exps = vec![0u16; nv];
            for &v in &order[..support_size] {
                exps[v] = rng.gen_range(1..=3u16);
            }
            gens.push(Monomial::from_exps(exps));
        }
        let ideal = MonomialIdeal::new(VarSet::anonymous(nv), gens);
        let polarized_width: usize = (0..nv)
            .map(|v| {
                ideal
                    .gens()
                    .iter()
                    .map(|g| g.exp(v) as usize)
                    .max()
                    .unwrap_or(0)
            })
            .sum();
        // Keeps the truncated Hilbert oracle exact at ORACLE_DEGREE.
        if polarized_width <= ORACLE_DEGREE {
            return ideal;
        }
    }
}

// ---------------------------------------------------------------------------
// Complex statistics (CLI `complex stats`)
// ---------------------------------------------------------------------------

/// f/h-vectors, dimension, facet count and the sphere-certificate flags for
/// one crossing or nesting complex, addressed by its own parameters.
pub fn complex_stats(family: &str, n: u32, r: u32) -> VerificationReport {
    let started = Instant::now();
    let params = json!({ "family": family, "n": n, "r": r });
    let mut checks = Checks::default();
    let mut w = Witnesses::empty();
    if let Err(e) = desk_scale_guard(n) {
        checks.fail(e);
        return finish("complex-stats", params, checks, w, started);
    }
    let complex: SimplicialComplex = match family {
        "delta" => delta_complex(n, r),
        "sigma" => sigma_complex(n, r),
        other => {
            checks.fail(format!("unknown family {other:?}; expected delta or sigma"));
            return finish("complex-stats", params, checks, w, started);
        }
    };
    // The Hilbert route is exact and cheap even where face enumeration
    // would be infeasible.
    let (h, d) = stanley_reisner_ideal(&complex).hilbert_h_and_dim();
    let mut padded = h.clone();
    padded.resize(d as usize + 1, 0);
    let f = f_from_h(&padded, d as usize);
    let euler: i64 = {
        let mut acc: i64 = -1;
        for (k, &fk) in f.iter().enumerate().skip(1) {
            acc += if k % 2 == 1 { fk } else { -fk };
        }
        acc
    };
    w.f_vector = Some(f);
    w.h_vector = Some(h);
    w.dim = Some(d - 1);
    match complex.facets(DEFAULT_ENUM_BUDGET) {
        Err(e) => checks.fail(format!("facet enumeration: {e}")),
        Ok(facets) => {
            w.facets = Some(facets.len() as u64);
            let cert = complex
                .sphere_certificate(DEFAULT_ENUM_BUDGET)
                .expect("census within budget once facets are");
            w.e = Some(
                facets
                    .iter()
                    .filter(|fm| fm.count_ones() as i64 == cert.dimension + 1)
                    .count() as u64,
            );
            w.table = Some(vec![json!({
                "pure": cert.pure,
                "euler": euler,
                "euler_ok": cert.euler_ok,
                "pseudomanifold": cert.pseudomanifold_ok,
                "connected": cert.connected_ok,
            })]);
        }
    }
    finish("complex-stats", params, checks, w, started)
}

// ---------------------------------------------------------------------------
// The acceptance matrix (CLI `suite`)
// ---------------------------------------------------------------------------

pub const SUITE_SEED: u64 = 0x5eed_0001;

/// The full verification matrix. `full` adds the large prime-field instance.
pub fn suite(full: bool, opts: &EngineOptions) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    reports.push(verify_pfaffian_determinant(8));
    for &(n, r) in &[(4u32, 2u32), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3)] {
        reports.push(verify_main_theorem(n, r, CoeffField::Rational, opts));
    }
    reports.push(verify_main_theorem(
        5,
        2,
        CoeffField::Prime(DEFAULT_PRIME),
        opts,
    ));
    if full {
        reports.push(verify_main_theorem(
            8,
            3,
            CoeffField::Prime(DEFAULT_PRIME),
            opts,
        ));
    }
    reports.push(verify_sphere_certificates(4, 8));
    reports.push(verify_formulas(10));
    for n in 4..=9u32 {
        for r in 1..=(n / 2) {
            reports.push(verify_h_equality(n, r));
        }
    }
    for heights in [
        vec![2u16, 2],
        vec![2, 2, 2],
        vec![3, 3, 3],
        vec![2, 3, 2],
        vec![1, 3, 2],
        vec![2, 2, 3],
    ] {
        reports.push(verify_determinantal(
            &heights,
            2,
            CoeffField::Rational,
            opts,
        ));
    }
    reports.push(verify_determinantal(
        &[3, 3, 3],
        3,
        CoeffField::Rational,
        opts,
    ));
    reports.push(verify_content_fvector(
        &[vec![2, 3, 2], vec![2, 2, 3], vec![3, 2, 2]],
        2,
    ));
    reports.push(verify_polarization_laws(100, SUITE_SEED));
    reports
}

/// Bundles reports into the stable top-level JSON document.
pub fn suite_document(name: &str, reports: &[VerificationReport]) -> Value {
    json!({
        "suite": name,
        "pass": reports.iter().all(|r| r.pass),
        "reports": reports,
    })
}

/// Zeroes every `timing_ms` field, recursively; reports are byte-identical
/// across runs after this.
pub fn strip_timings(value: &mut Value) {
    match value {
        Value::Object(map) => {
            for (k, v) in map.iter_mut() {
                if k == "timing_ms" {
                    *v = json!(0);
                } else {
                    strip_timings(v);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
