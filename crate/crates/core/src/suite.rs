//! Verification batteries: each suite checks a list of numbered claims about
//! the fields, groups and graphs and reports measured against expected values.
//!
//! Every claim records a basis: `stated` values are the published ones,
//! `derived` values come from an independent computation (brute force, a
//! formula, a reference graph) and `direct` values are immediate.

use std::fmt::{self, Write as _};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::{
    self, action_map, antipodal_check, arc_orbits, diameter, generator_set, girth,
    graphs_equal_iff, iso_classes, local_arc_orbits, quotient_by_second_factor, sigma_map,
    small_iso, structure_checks_c_i, tau_bar_map, vertex_transitive, AnalysisError, GroupKind,
    ReferenceGraph, DEFAULT_GIRTH_SAMPLE,
};
use crate::bigroup::{BiGroup, BigElem};
use crate::closure::CapExceeded;
use crate::cosetgraph::{CosetError, CosetGraph, CosetSpace, DEFAULT_VERTEX_CAP};
use crate::gf2::{divisors, factorize, generator_count_formula, Fel, Field, FieldError};
use crate::psl2::{Psl2, PslError, DEFAULT_CAP};
use crate::zpfamily::{zp_arc_check, ZpError};

pub const SUITES: [&str; 9] = [
    "field",
    "group",
    "construction",
    "f1",
    "f2",
    "f3",
    "f4",
    "f5-classes",
    "zp",
];

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    /// Run the long f = 4 checks on the 5.5 million vertex graph.
    pub deep: bool,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; expected one of {SUITES:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    ResourceCap(#[from] CapExceeded),
    #[error("suite setup failed: {0}")]
    Setup(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Stated,
    Derived,
    Direct,
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub passed: bool,
    pub measured: Value,
    pub expected: Value,
    pub basis: Basis,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    pub claims: Vec<Claim>,
    /// Claims left out because they need `deep`.
    pub skipped: Vec<String>,
    pub setup_ms: u64,
}

impl SuiteResult {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("suite results serialize")
    }

    /// The JSON report with every timing field removed; equal inputs give
    /// byte-identical output.
    pub fn canonical_json(&self) -> String {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("setup_ms");
        for c in v["claims"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
        serde_json::to_string_pretty(&v).unwrap()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
        writeln!(
            f,
            "suite {}: {}",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for c in &self.claims {
            let mut line = String::new();
            write!(
                line,
                "  {} {:width$}  {:>7} ms  measured {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.elapsed_ms,
                c.measured
            )?;
            if !c.expected.is_null() {
                write!(line, ", expected {} ({:?})", c.expected, c.basis)?;
            }
            writeln!(f, "{line}")?;
        }
        for s in &self.skipped {
            writeln!(f, "  SKIP {s}")?;
        }
        Ok(())
    }
}

/// Why a claim could not be evaluated.
#[derive(Debug)]
enum ClaimError {
    Cap(CapExceeded),
    Other(String),
}

impl From<CapExceeded> for ClaimError {
    fn from(e: CapExceeded) -> Self {
        ClaimError::Cap(e)
    }
}

macro_rules! other_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for ClaimError {
            fn from(e: $t) -> Self {
                ClaimError::Other(e.to_string())
            }
        }
    )*};
}
other_errors!(FieldError, AnalysisError, ZpError);

impl From<CosetError> for ClaimError {
    fn from(e: CosetError) -> Self {
        match e {
            CosetError::CapExceeded(c) => ClaimError::Cap(c),
            e => ClaimError::Other(e.to_string()),
        }
    }
}

impl From<PslError> for ClaimError {
    fn from(e: PslError) -> Self {
        match e {
            PslError::CapExceeded(c) => ClaimError::Cap(c),
            e => ClaimError::Other(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, Value, bool), ClaimError>;

fn eq<T: Serialize + PartialEq>(measured: T, expected: T) -> Outcome {
    let passed = measured == expected;
    Ok((json!(measured), json!(expected), passed))
}

fn holds(measured: bool) -> Outcome {
    eq(measured, true)
}

/// A value reported without an expectation.
fn observed<T: Serialize>(measured: T) -> Outcome {
    Ok((json!(measured), Value::Null, true))
}

struct Recorder {
    claims: Vec<Claim>,
    skipped: Vec<String>,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder {
            claims: Vec::new(),
            skipped: Vec::new(),
        }
    }

    fn claim(
        &mut self,
        id: &str,
        statement: &str,
        basis: Basis,
        check: impl FnOnce() -> Outcome,
    ) -> Result<(), SuiteError> {
        assert!(
            self.claims.iter().all(|c| c.id != id),
            "duplicate claim id {id}"
        );
        let start = Instant::now();
        let (measured, expected, passed) = match check() {
            Ok(r) => r,
            Err(ClaimError::Cap(c)) => return Err(c.into()),
            Err(ClaimError::Other(msg)) => (json!({ "error": msg }), Value::Null, false),
        };
        self.claims.push(Claim {
            id: id.to_string(),
            statement: statement.to_string(),
            passed,
            measured,
            expected,
            basis,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
        Ok(())
    }

    fn skip(&mut self, id: &str) {
        self.skipped.push(id.to_string());
    }
}

fn field(f: u32) -> Result<Field, SuiteError> {
    Field::new(f, None).map_err(|e| SuiteError::Setup(e.to_string()))
}

fn build(field: &Field, alpha: Fel) -> Result<CosetGraph, SuiteError> {
    CosetSpace::new(field.clone(), alpha)
        .build_component(DEFAULT_VERTEX_CAP)
        .map_err(|e| match e {
            CosetError::CapExceeded(c) => SuiteError::ResourceCap(c),
            e => SuiteError::Setup(e.to_string()),
        })
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteResult, SuiteError> {
    let start = Instant::now();
    let mut rec = Recorder::new();
    match name {
        "field" => field_suite(&mut rec)?,
        "group" => group_suite(&mut rec)?,
        "construction" => construction_suite(&mut rec)?,
        "f1" => f1_suite(&mut rec)?,
        "f2" => f2_suite(&mut rec, opts)?,
        "f3" => f3_suite(&mut rec, opts)?,
        "f4" => f4_suite(&mut rec, opts)?,
        "f5-classes" => f5_suite(&mut rec)?,
        "zp" => zp_suite(&mut rec)?,
        _ => return Err(SuiteError::UnknownSuite(name.to_string())),
    }
    let total = start.elapsed().as_millis() as u64;
    let claimed: u64 = rec.claims.iter().map(|c| c.elapsed_ms).sum();
    Ok(SuiteResult {
        suite: name.to_string(),
        passed: rec.claims.iter().all(|c| c.passed),
        claims: rec.claims,
        skipped: rec.skipped,
        setup_ms: total.saturating_sub(claimed),
    })
}

/// Subfield degree as the least divisor `e` of `f` with `a^(2^e) = a`; an
/// oracle that never looks at multiplicative orders.
fn subfield_degree_by_frobenius(field: &Field, a: Fel) -> u32 {
    divisors(field.degree())
        .into_iter()
        .find(|&e| field.frob(a, e) == a)
        .unwrap()
}

/// Number of generators of GF(2^f), and of those not satisfying
/// `a^(2^(f/2)) = a + 1`, by exhaustive table-driven Frobenius tests.
fn generator_counts(field: &Field) -> (u64, u64) {
    let f = field.degree();
    let maximal: Vec<_> = factorize(f as u64)
        .into_iter()
        .map(|(p, _)| field.frob_map(f / p as u32))
        .collect();
    let half = f.is_multiple_of(2).then(|| field.frob_map(f / 2));
    (0..field.order() as u32)
        .into_par_iter()
        .map(|bits| {
            let a = Fel(bits);
            let generator = maximal.iter().all(|m| m.apply(a) != a);
            let connected = generator && half.as_ref().is_none_or(|h| h.apply(a) != Fel(bits ^ 1));
            (generator as u64, connected as u64)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
}

fn field_suite(rec: &mut Recorder) -> Result<(), SuiteError> {
    let small: Vec<Field> = (1..=8).map(field).collect::<Result<_, _>>()?;
    rec.claim(
        "field.order-vs-subfield",
        "for f <= 8, a != 0 and e | f: the order of a divides 2^e - 1 exactly when a lies in GF(2^e)",
        Basis::Derived,
        || {
            let mut mismatches = 0u64;
            for fld in &small {
                for a in fld.elements().skip(1) {
                    let order = fld.mult_order(a)?;
                    let sub = subfield_degree_by_frobenius(fld, a);
                    for e in divisors(fld.degree()) {
                        let by_order = ((1u64 << e) - 1).is_multiple_of(order);
                        if by_order != (e % sub == 0) || fld.subfield_degree(a) != sub {
                            mismatches += 1;
                        }
                    }
                }
            }
            eq(mismatches, 0)
        },
    )?;
    rec.claim(
        "field.frobenius-and-translation",
        "for f <= 8 and a generator a: a^(2^i) != a for 0 < i < f, and a^(2^i) = a + 1 only when f is even and i = f/2",
        Basis::Derived,
        || {
            let mut violations = 0u64;
            for fld in &small {
                let f = fld.degree();
                for a in fld.elements().filter(|&a| fld.is_generator(a)) {
                    for i in 1..f {
                        let image = fld.frob(a, i);
                        if image == a || (image == fld.add(a, Fel::ONE) && (f % 2 != 0 || 2 * i != f)) {
                            violations += 1;
                        }
                    }
                }
            }
            eq(violations, 0)
        },
    )?;
    rec.claim(
        "field.gf8-generators",
        "GF(8) has 6 generators",
        Basis::Stated,
        || {
            let fld = &small[2];
            eq(fld.elements().filter(|&a| fld.is_generator(a)).count(), 6)
        },
    )?;
    let mut counts = Vec::new();
    for f in 3..=20 {
        counts.push((f, generator_counts(&field(f)?)));
    }
    rec.claim(
        "field.generator-count-formula",
        "for 3 <= f <= 20 the exhaustive generator count equals the subfield inclusion-exclusion count",
        Basis::Derived,
        || {
            let measured: Vec<u64> = counts.iter().map(|&(_, (g, _))| g).collect();
            let expected: Vec<u64> = counts.iter().map(|&(f, _)| generator_count_formula(f)).collect();
            eq(measured, expected)
        },
    )?;
    rec.claim(
        "field.generator-lower-bound",
        "for 3 <= f <= 20 more than 2^(f-1) elements are generators",
        Basis::Stated,
        || {
            let failing: Vec<u32> = counts
                .iter()
                .filter(|&&(f, (g, _))| g <= 1 << (f - 1))
                .map(|&(f, _)| f)
                .collect();
            eq(failing, vec![])
        },
    )?;
    rec.claim(
        "field.even-connected-lower-bound",
        "for even f = 2l, 4 <= f <= 20, more than 2^l (2^(l-1) - 1) generators satisfy a^(2^l) != a + 1",
        Basis::Stated,
        || {
            let failing: Vec<u32> = counts
                .iter()
                .filter(|&&(f, _)| f % 2 == 0)
                .filter(|&&(f, (_, c))| {
                    let l = f / 2;
                    c <= (1u64 << l) * ((1u64 << (l - 1)) - 1)
                })
                .map(|&(f, _)| f)
                .collect();
            eq(failing, vec![])
        },
    )
}

fn group_suite(rec: &mut Recorder) -> Result<(), SuiteError> {
    let groups: Vec<Psl2> = (1..=6)
        .map(|f| field(f).map(Psl2::new))
        .collect::<Result<_, _>>()?;
    rec.claim(
        "group.small-elements",
        "a has order 3, b has order 2, <a, b> has 6 elements",
        Basis::Stated,
        || {
            let mut measured = Vec::new();
            for t in &groups[..4] {
                let h = t.generate(&[t.elem_a(), t.elem_b()], DEFAULT_CAP)?;
                measured.push((t.order(&t.elem_a()), t.order(&t.elem_b()), h.len()));
            }
            eq(measured, vec![(3, 2, 6); 4])
        },
    )?;
    rec.claim(
        "group.centralizer-of-b",
        "for f <= 3 the centralizer of b is the group of translations x -> x + c, of order 2^f",
        Basis::Stated,
        || {
            let mut measured = Vec::new();
            let mut expected = Vec::new();
            for t in &groups[..3] {
                let whole = t.whole_group(DEFAULT_CAP)?;
                let cent = t.centralizer(&whole, &t.elem_b())?;
                let translations =
                    t.subgroup_from_elements(t.field().elements().map(|c| t.u(c)).collect())?;
                measured.push((cent.len(), cent.same_set(&translations)));
                expected.push((t.field().order() as usize, true));
            }
            eq(measured, expected)
        },
    )?;
    rec.claim(
        "group.self-normalizing",
        "for f <= 3, <a, b> is its own normalizer",
        Basis::Stated,
        || {
            let mut measured = Vec::new();
            for t in &groups[..3] {
                let whole = t.whole_group(DEFAULT_CAP)?;
                let h = t.generate(&[t.elem_a(), t.elem_b()], DEFAULT_CAP)?;
                measured.push(t.normalizer(&whole, &h)?.same_set(&h));
            }
            eq(measured, vec![true; 3])
        },
    )?;
    rec.claim(
        "group.scaling-conjugates",
        "for f <= 4 and alpha != 0: conjugating b by z_alpha gives u_alpha, and z_alpha has the multiplicative order of alpha",
        Basis::Stated,
        || {
            let mut bad = 0u64;
            for t in &groups[..4] {
                let fld = t.field();
                for alpha in fld.elements().skip(1) {
                    let z = t.z(alpha)?;
                    if t.conj(&t.elem_b(), &z) != t.u(alpha) || t.order(&z) != fld.mult_order(alpha)? {
                        bad += 1;
                    }
                }
            }
            eq(bad, 0)
        },
    )?;
    rec.claim(
        "group.frobenius-inverts-c",
        "for f <= 6, all alpha and 0 <= i < f: the i-th Frobenius power inverts c_alpha exactly when alpha^(2^i) = alpha + 1",
        Basis::Stated,
        || {
            let mut bad = 0u64;
            for t in &groups {
                let fld = t.field();
                for alpha in fld.elements() {
                    let c = t.c(alpha);
                    for i in 0..fld.degree() {
                        let inverts = t.frob_aut(&c, i) == t.inv(&c);
                        if inverts != (fld.frob(alpha, i) == fld.add(alpha, Fel::ONE)) {
                            bad += 1;
                        }
                    }
                }
            }
            eq(bad, 0)
        },
    )?;
    rec.claim(
        "group.subfield-subgroups",
        "for f <= 4 and every alpha: <a, b, u_alpha> has order 2^e (2^(2e) - 1), GF(2^e) being generated by alpha",
        Basis::Stated,
        || {
            let mut measured = Vec::new();
            let mut expected = Vec::new();
            for t in &groups[..4] {
                let fld = t.field();
                for alpha in fld.elements() {
                    let e = subfield_degree_by_frobenius(fld, alpha);
                    let gens = [t.elem_a(), t.elem_b(), t.u(alpha)];
                    measured.push(t.generate(&gens, DEFAULT_CAP)?.len() as u64);
                    expected.push((1u64 << e) * ((1u64 << (2 * e)) - 1));
                }
            }
            eq(measured, expected)
        },
    )
}

fn construction_suite(rec: &mut Recorder) -> Result<(), SuiteError> {
    let bigs: Vec<BiGroup> = (1..=4)
        .map(|f| field(f).map(BiGroup::new))
        .collect::<Result<_, _>>()?;
    rec.claim(
        "construction.group-order",
        "|G| = 2^(2f+1) (2^(2f) - 1)^2: by closure for f <= 3 and by the component formula for 4 <= f <= 12",
        Basis::Stated,
        || {
            let mut measured = Vec::new();
            let mut expected = Vec::new();
            for g in &bigs[..3] {
                measured.push((g.whole_group(DEFAULT_CAP)?.len() as u128).to_string());
                expected.push(BiGroup::order_closed_form(g.field().degree()).to_string());
            }
            // orders beyond 2^64 are reported as decimal strings
            for f in 4..=12 {
                measured.push(BiGroup::new(Field::new(f, None)?).order().to_string());
                expected.push(BiGroup::order_closed_form(f).to_string());
            }
            eq(measured, expected)
        },
    )?;
    rec.claim(
        "construction.g-alpha-identities",
        "for f <= 4 and all alpha: g^-1 = g (b,b), (a,a)^g = (c_alpha^-1, c_alpha), (b,b)^g = (b,b) and L g^-1 L = L g L",
        Basis::Stated,
        || {
            let mut bad = 0u64;
            for g in &bigs {
                let t = g.psl();
                let l = g.l_group();
                let (aa, bb) = (l.elements()[1], l.elements()[3]);
                for alpha in g.field().elements() {
                    let ga = g.g_alpha(alpha);
                    let c = t.c(alpha);
                    let ok = g.inv(&ga) == g.mul(&ga, &bb)
                        && g.conj(&aa, &ga) == BigElem::new(t.inv(&c), c, false)
                        && g.conj(&bb, &ga) == bb
                        && g.double_coset_symmetric(alpha);
                    bad += !ok as u64;
                }
            }
            eq(bad, 0)
        },
    )?;
    rec.claim(
        "construction.cubic-bipartite",
        "every component built for f <= 3 is cubic and its coset parts give a proper 2-colouring",
        Basis::Derived,
        || {
            let mut bad = Vec::new();
            for f in 1..=3 {
                let fld = Field::new(f, None)?;
                for alpha in fld.elements() {
                    let cg =
                        CosetSpace::new(fld.clone(), alpha).build_component(DEFAULT_VERTEX_CAP)?;
                    let g = cg.graph();
                    let proper = g.edges().all(|(u, v)| cg.part(u) != cg.part(v));
                    if !(g.is_regular(3) && g.is_symmetric() && proper) {
                        bad.push(format!("f={f} alpha={alpha:#x}"));
                    }
                }
            }
            eq(bad, Vec::<String>::new())
        },
    )?;
    rec.claim(
        "construction.same-edges",
        "for f <= 3, alpha and beta give identical edge sets exactly when beta is alpha or alpha + 1",
        Basis::Stated,
        || {
            let mut bad = Vec::new();
            for f in 1..=2 {
                let fld = Field::new(f, None)?;
                for a in fld.elements() {
                    for b in fld.elements() {
                        let expected = b == a || b == fld.add(a, Fel::ONE);
                        if graphs_equal_iff(&fld, a, b)? != expected {
                            bad.push(format!("f={f} {a:#x} {b:#x}"));
                        }
                    }
                }
            }
            let f3 = Field::new(3, None)?;
            for a in f3.elements() {
                if !graphs_equal_iff(&f3, a, f3.add(a, Fel::ONE))? {
                    bad.push(format!("f=3 {a:#x}"));
                }
            }
            eq(bad, Vec::<String>::new())
        },
    )
}

fn is_reference(cg: &CosetGraph, reference: ReferenceGraph) -> bool {
    small_iso(cg.graph(), &reference.graph())
}

fn f1_suite(rec: &mut Recorder) -> Result<(), SuiteError> {
    let fld = field(1)?;
    let cg = build(&fld, Fel::ZERO)?;
    rec.claim(
        "f1.component-k33",
        "the component of L is K_{3,3}",
        Basis::Stated,
        || holds(is_reference(&cg, ReferenceGraph::K33)),
    )?;
    rec.claim(
        "f1.components",
        "the graph has 2 components",
        Basis::Stated,
        || eq(cg.component_count()?, 2),
    )?;
    rec.claim(
        "f1.one-graph",
        "both parameters give the same edge set",
        Basis::Stated,
        || holds(graphs_equal_iff(&fld, Fel::ZERO, Fel::ONE)?),
    )
}

fn f2_suite(rec: &mut Recorder, opts: &SuiteOptions) -> Result<(), SuiteError> {
    let fld = field(2)?;
    let i = fld.x();
    let zero = build(&fld, Fel::ZERO)?;
    let gi = build(&fld, i)?;
    rec.claim(
        "f2.zero-components",
        "alpha = 0 gives 200 components",
        Basis::Stated,
        || eq(zero.component_count()?, 200),
    )?;
    rec.claim(
        "f2.zero-k33",
        "each component for alpha = 0 is K_{3,3}",
        Basis::Stated,
        || holds(is_reference(&zero, ReferenceGraph::K33)),
    )?;
    rec.claim(
        "f2.i-components",
        "alpha = i gives 60 components of 20 vertices",
        Basis::Stated,
        || eq((gi.component_count()?, gi.len()), (60, 20)),
    )?;
    rec.claim(
        "f2.i-desargues",
        "each component for alpha = i is the Desargues graph",
        Basis::Stated,
        || holds(is_reference(&gi, ReferenceGraph::Desargues)),
    )?;
    rec.claim(
        "f2.i-girth",
        "the component for alpha = i has girth 6",
        Basis::Derived,
        || eq(girth(gi.graph(), DEFAULT_GIRTH_SAMPLE, opts.seed)?, 6),
    )?;
    rec.claim(
        "f2.i-diameter",
        "the component for alpha = i has diameter 5",
        Basis::Derived,
        || eq(diameter(gi.graph(), false)?, 5),
    )?;
    rec.claim(
        "f2.i-antipodal",
        "in the component for alpha = i, L pi is the unique vertex farthest from L",
        Basis::Derived,
        || holds(antipodal_check(gi.graph(), sigma_map(&gi)?.apply(0))),
    )?;
    rec.claim(
        "f2.frobenius-same-graph",
        "the entrywise Frobenius maps the component for i isomorphically onto the one for i^2 = i + 1",
        Basis::Derived,
        || {
            let target = build(&fld, fld.square(i)).map_err(|e| ClaimError::Other(e.to_string()))?;
            tau_bar_map(&gi, &target)?;
            holds(target.graph() == gi.graph())
        },
    )
}

fn f3_suite(rec: &mut Recorder, opts: &SuiteOptions) -> Result<(), SuiteError> {
    let fld = field(3)?;
    let j = fld.x();
    let zero = build(&fld, Fel::ZERO)?;
    let cg = build(&fld, j)?;
    let graph = cg.graph();
    rec.claim(
        "f3.zero-components",
        "alpha = 0 gives 14112 components, each K_{3,3}",
        Basis::Stated,
        || {
            eq(
                (
                    zero.component_count()?,
                    is_reference(&zero, ReferenceGraph::K33),
                ),
                (14112, true),
            )
        },
    )?;
    rec.claim(
        "f3.connected",
        "alpha = j gives a connected graph on 84672 vertices",
        Basis::Stated,
        || eq((cg.is_whole_graph(), cg.len()), (true, 84672)),
    )?;
    let g_gens = generator_set(&cg, GroupKind::G).map_err(|e| SuiteError::Setup(e.to_string()))?;
    rec.claim(
        "f3.vertex-transitive",
        "(a,a), (b,b) and g_j move L to every vertex",
        Basis::Derived,
        || holds(vertex_transitive(graph, &g_gens)),
    )?;
    rec.claim(
        "f3.stabilizer-order",
        "2 |G| / |V| = 12, the order of the vertex stabilizer in A",
        Basis::Stated,
        || eq(2 * cg.space().group().order() / cg.len() as u128, 12),
    )?;
    let mut girth_value = None;
    rec.claim("f3.girth", "the girth is 16", Basis::Stated, || {
        let g = girth(graph, DEFAULT_GIRTH_SAMPLE, opts.seed)?;
        girth_value = Some(g);
        eq(g, 16)
    })?;
    rec.claim(
        "f3.girth-lower-bound",
        "the girth is at least 10",
        Basis::Stated,
        || {
            let g =
                girth_value.ok_or_else(|| ClaimError::Other("girth computation failed".into()))?;
            eq(g >= 10, true)
        },
    )?;
    rec.claim(
        "f3.diameter",
        "the diameter is 21, which is at least 6f - 3 = 15",
        Basis::Stated,
        || {
            let d = diameter(graph, vertex_transitive(graph, &g_gens))?;
            eq((d, d >= 15), (21, true))
        },
    )?;
    rec.claim(
        "f3.frobenius-isomorphisms",
        "the entrywise Frobenius gives isomorphisms j -> j^2 -> j^4 -> j whose composite is the identity",
        Basis::Stated,
        || {
            let mut comps = vec![cg.clone()];
            let mut alpha = j;
            for _ in 0..3 {
                alpha = fld.square(alpha);
                comps.push(CosetSpace::new(fld.clone(), alpha).build_component(DEFAULT_VERTEX_CAP)?);
            }
            let mut total = analysis::VertexMap::identity(cg.len());
            for w in comps.windows(2) {
                total = total.then(&tau_bar_map(&w[0], &w[1])?);
            }
            eq((alpha == j, total.is_identity()), (true, true))
        },
    )?;
    let arc_claims: [(&str, GroupKind, u32, bool); 9] = [
        ("f3.arcs-G-2", GroupKind::G, 2, true),
        ("f3.arcs-G-3", GroupKind::G, 3, false),
        ("f3.arcs-M-2", GroupKind::M, 2, true),
        ("f3.arcs-A-3", GroupKind::A, 3, true),
        ("f3.arcs-A-4", GroupKind::A, 4, false),
        ("f3.local-arcs-Aplus-3", GroupKind::APlus, 3, true),
        ("f3.local-arcs-Aplus-4", GroupKind::APlus, 4, false),
        ("f3.local-arcs-Gplus-2", GroupKind::GPlus, 2, true),
        ("f3.local-arcs-Gplus-3", GroupKind::GPlus, 3, false),
    ];
    let parts = cg.parts();
    for (id, kind, s, expected) in arc_claims {
        let local = id.contains("local");
        let statement = format!(
            "the group {} is {}{} {s}-arc transitive",
            kind.name(),
            if expected { "" } else { "not " },
            if local { "locally" } else { "" }
        );
        rec.claim(id, statement.trim(), Basis::Stated, || {
            let gens = generator_set(&cg, kind)?;
            let transitive = if local {
                local_arc_orbits(graph, &parts, &gens, s)?
                    .iter()
                    .all(|r| r.transitive)
            } else {
                arc_orbits(graph, &gens, s, None)?.transitive
            };
            eq(transitive, expected)
        })?;
    }
    rec.claim(
        "f3.three-arc-regular",
        "A acts regularly on the 3-arcs: both number 1016064",
        Basis::Stated,
        || {
            let gens = generator_set(&cg, GroupKind::A)?;
            let order = GroupKind::A.nominal_order(&cg);
            let r = arc_orbits(graph, &gens, 3, order)?;
            eq(
                (r.total, r.orbit_size, order, r.regular),
                (1016064, 1016064, Some(1016064), true),
            )
        },
    )?;
    rec.claim(
        "f3.arc-monotonicity",
        "for each group, transitivity on s-arcs implies transitivity on (s-1)-arcs, s <= 4",
        Basis::Direct,
        || {
            let mut bad = Vec::new();
            for kind in [GroupKind::G, GroupKind::M, GroupKind::A] {
                let gens = generator_set(&cg, kind)?;
                let flags: Vec<bool> = (0..=4)
                    .map(|s| arc_orbits(graph, &gens, s, None).map(|r| r.transitive))
                    .collect::<Result<_, _>>()?;
                if flags.windows(2).any(|w| w[1] && !w[0]) {
                    bad.push(kind.name());
                }
            }
            eq(bad, Vec::<&str>::new())
        },
    )?;
    rec.claim(
        "f3.swap-automorphism",
        "Lx -> L pi x is an automorphism of order 2, swapping the parts and commuting with (a,a), (b,b), g_j",
        Basis::Stated,
        || {
            let sigma = sigma_map(&cg)?;
            let swaps = (0..cg.len() as u32).all(|v| cg.part(sigma.apply(v)) != cg.part(v));
            let commutes = g_gens.iter().all(|g| g.commutes_with(&sigma));
            holds(!sigma.is_identity() && sigma.then(&sigma).is_identity() && swaps && commutes)
        },
    )?;
    rec.claim(
        "f3.quotient",
        "the quotient by 1 x T has 168 vertices, is cubic and bipartite with equal halves, and is covered",
        Basis::Stated,
        || {
            let q = quotient_by_second_factor(&cg)?;
            eq(
                (q.vertices, q.cubic, q.bipartite, q.equal_halves, q.cover_ok),
                (168, true, true, true, true),
            )
        },
    )?;
    rec.claim(
        "f3.antipodal",
        "L pi is the unique vertex farthest from L",
        Basis::Stated,
        || holds(antipodal_check(graph, sigma_map(&cg)?.apply(0))),
    )?;
    rec.claim(
        "f3.classes",
        "the connected parameters form 1 class of size 6",
        Basis::Stated,
        || {
            let sizes: Vec<usize> = iso_classes(&fld)?.iter().map(Vec::len).collect();
            eq(sizes, vec![6])
        },
    )?;
    rec.claim(
        "f3.factor-structure",
        "each direct factor has more than 2 orbits per part, g_j exchanges their orbits, and together they are transitive on each part",
        Basis::Stated,
        || {
            let r = structure_checks_c_i(&cg)?;
            Ok((json!(r), Value::Null, r.violation().is_none()))
        },
    )?;
    rec.claim(
        "f3.identity-action",
        "the identity fixes every vertex and (a,a) fixes L",
        Basis::Direct,
        || {
            let aa = cg.space().l_group().elements()[1];
            holds(
                action_map(&cg, &BigElem::IDENTITY)?.is_identity()
                    && action_map(&cg, &aa)?.apply(0) == 0,
            )
        },
    )
}

fn f4_suite(rec: &mut Recorder, opts: &SuiteOptions) -> Result<(), SuiteError> {
    let fld = field(4)?;
    let k = fld.x();
    let k3 = fld.pow(k, 3);
    let k5 = fld.pow(k, 5);
    rec.claim(
        "f4.zero-components",
        "alpha = 0 gives 924800 components, each K_{3,3}",
        Basis::Stated,
        || {
            let cg = CosetSpace::new(fld.clone(), Fel::ZERO).build_component(DEFAULT_VERTEX_CAP)?;
            eq(
                (
                    cg.component_count()?,
                    is_reference(&cg, ReferenceGraph::K33),
                ),
                (924800, true),
            )
        },
    )?;
    rec.claim(
        "f4.k5-components",
        "alpha = k^5 gives 277440 components, each the Desargues graph",
        Basis::Stated,
        || {
            let cg = CosetSpace::new(fld.clone(), k5).build_component(DEFAULT_VERTEX_CAP)?;
            eq(
                (
                    cg.component_count()?,
                    is_reference(&cg, ReferenceGraph::Desargues),
                ),
                (277440, true),
            )
        },
    )?;
    rec.claim(
        "f4.k-components",
        "alpha = k gives 4080 components of |T| / 3 = 1360 vertices",
        Basis::Stated,
        || {
            let cg = CosetSpace::new(fld.clone(), k).build_component(DEFAULT_VERTEX_CAP)?;
            eq((cg.component_count()?, cg.len()), (4080, 1360))
        },
    )?;
    rec.claim(
        "f4.classes",
        "the connected parameters form 1 class of size 8 containing k^3",
        Basis::Stated,
        || {
            let classes = iso_classes(&fld)?;
            let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
            eq(
                (sizes, classes.iter().any(|c| c.contains(&k3))),
                (vec![8], true),
            )
        },
    )?;
    let deep_ids = [
        "f4.connected",
        "f4.girth",
        "f4.diameter-bound",
        "f4.antipodal",
    ];
    if !opts.deep {
        for id in deep_ids {
            rec.skip(id);
        }
        return Ok(());
    }
    let cg = build(&fld, k3)?;
    let graph = cg.graph();
    rec.claim(
        "f4.connected",
        "alpha = k^3 gives a connected graph on 5548800 vertices",
        Basis::Stated,
        || eq((cg.is_whole_graph(), cg.len()), (true, 5548800)),
    )?;
    let transitive = vertex_transitive(
        graph,
        &generator_set(&cg, GroupKind::G).map_err(|e| SuiteError::Setup(e.to_string()))?,
    );
    rec.claim("f4.girth", "the girth is 30", Basis::Stated, || {
        eq(girth(graph, DEFAULT_GIRTH_SAMPLE, opts.seed)?, 30)
    })?;
    rec.claim(
        "f4.diameter-bound",
        "the diameter is at least 6f - 3 = 21",
        Basis::Stated,
        || {
            let d = diameter(graph, transitive)?;
            Ok((json!(d), json!(">= 21"), d >= 21))
        },
    )?;
    rec.claim(
        "f4.antipodal",
        "whether L pi is the unique vertex farthest from L",
        Basis::Derived,
        || observed(antipodal_check(graph, sigma_map(&cg)?.apply(0))),
    )
}

fn f5_suite(rec: &mut Recorder) -> Result<(), SuiteError> {
    let fld = field(5)?;
    rec.claim(
        "f5.generators",
        "GF(32) has 30 generators",
        Basis::Stated,
        || eq(fld.elements().filter(|&a| fld.is_generator(a)).count(), 30),
    )?;
    rec.claim(
        "f5.classes",
        "the connected parameters form 3 classes of size 10",
        Basis::Stated,
        || {
            let sizes: Vec<usize> = iso_classes(&fld)?.iter().map(Vec::len).collect();
            eq(sizes, vec![10; 3])
        },
    )
}

fn zp_suite(rec: &mut Recorder) -> Result<(), SuiteError> {
    for p in [7u32, 13] {
        let report = zp_arc_check(p).map_err(|e| SuiteError::Setup(e.to_string()))?;
        let r = &report;
        let n = (p * p) as usize;
        rec.claim(
            &format!("zp{p}.shape"),
            "cubic and bipartite on 2p^2 vertices with halves of p^2",
            Basis::Stated,
            || {
                eq(
                    (r.vertices, r.cubic, r.bipartite_halves),
                    (2 * n, true, [n, n]),
                )
            },
        )?;
        rec.claim(
            &format!("zp{p}.small-group"),
            "translations, scaling and swap-with-negation are transitive on 1-arcs but not on 2-arcs",
            Basis::Stated,
            || eq((r.small_group_1_arc_transitive, r.small_group_2_arc_transitive), (true, false)),
        )?;
        rec.claim(
            &format!("zp{p}.full-group"),
            "adding swap and negation separately gives transitivity on 2-arcs",
            Basis::Stated,
            || holds(r.full_group_2_arc_transitive),
        )?;
        rec.claim(
            &format!("zp{p}.rows"),
            "translations of the first coordinate have p > 2 orbits on each half",
            Basis::Derived,
            || eq(r.row_orbits, [p as usize; 2]),
        )?;
        rec.claim(
            &format!("zp{p}.stabilizer"),
            "scaling fixes (0,0,0) and permutes its three neighbours without fixed points",
            Basis::Stated,
            || holds(r.scale_cycles_base_neighbours),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("f9", &SuiteOptions::default()),
            Err(SuiteError::UnknownSuite(_))
        ));
    }

    #[test]
    fn f1_passes_and_is_stable() {
        let a = run_suite("f1", &SuiteOptions::default()).unwrap();
        assert!(a.passed, "{a}");
        let b = run_suite("f1", &SuiteOptions::default()).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert!(!a.canonical_json().contains("elapsed_ms"));
    }

    #[test]
    fn frobenius_subfield_oracle() {
        let f6 = Field::new(6, None).unwrap();
        for a in f6.elements() {
            assert_eq!(subfield_degree_by_frobenius(&f6, a), f6.subfield_degree(a));
        }
    }
}
