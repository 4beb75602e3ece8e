//! Registry of checkable statements about the semiring and its pieces.
//!
//! Each entry pairs a statement with a parameter sweep and a checker that
//! decides the statement for one parameter tuple by enumeration. Entries marked
//! [`Expectation::Erratum`] pair an incorrect form of a statement with its
//! correction: the check passes when the correction holds, and the note says
//! whether the incorrect form held for those parameters.

use std::collections::HashSet;
use std::fmt::Display;
use std::time::Instant;

use serde::Serialize;

use crate::analysis::{
    identities, is_closed_under, is_subsemiring, iso_check, triviality, Op, Side, Subset, Verdict,
};
use crate::chain::{all_endos, ChainEndo};
use crate::counting::{catalan, nonempty_subsets};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::simplex::{LayerId, SimplexSpec};
use crate::strings::{
    consecutive_union, partition_string, string_iso, string_mul_cases, StringElem, StringSpec,
};
use crate::triangle::{Region, TriVertex, TriangleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    /// The stated form fails for some parameters; the check decides the
    /// corrected statement and notes whether the stated one held.
    Erratum,
}

/// Shape of a claim's parameter tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    /// `[n]`
    N,
    /// `[n, a]`, every `a < n`.
    Point,
    /// `[n, a_0, …]`, every non-empty vertex set.
    Simplex,
    /// Like `Simplex` with at least two vertices.
    Simplex2,
    /// Simplices avoiding `0` and `n-1`.
    InternalSimplex,
    /// `[n, k_1, …]`, every non-empty fixed-point set.
    FixedPoints,
    /// `[n, a, b]`
    String,
    /// `[n, a, b, c]`
    Triangle,
    /// `[n, a, b, a', b']` with `(a, b) < (a', b')`.
    StringPair,
    /// `[n, k, A…, B…]`: distinct vertex sets of equal size `k ≥ 2`.
    SimplexPair,
    /// `[n, a, b, c, a', b', c']` with `(a, b, c) < (a', b', c')`.
    TrianglePair,
    /// A single named instance.
    Fixed(&'static [usize]),
}

impl ParamKind {
    fn generate(self, n: usize) -> Vec<Vec<usize>> {
        let with_n = |rest: Vec<usize>| {
            let mut v = vec![n];
            v.extend(rest);
            v
        };
        let subsets = || nonempty_subsets(n);
        let strings = || {
            let mut out = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    out.push((a, b));
                }
            }
            out
        };
        match self {
            ParamKind::N => vec![vec![n]],
            ParamKind::Point => (0..n).map(|a| vec![n, a]).collect(),
            ParamKind::Simplex | ParamKind::FixedPoints => {
                subsets().into_iter().map(with_n).collect()
            }
            ParamKind::Simplex2 => subsets()
                .into_iter()
                .filter(|s| s.len() >= 2)
                .map(with_n)
                .collect(),
            ParamKind::InternalSimplex => subsets()
                .into_iter()
                .filter(|s| s[0] != 0 && *s.last().unwrap() != n - 1)
                .map(with_n)
                .collect(),
            ParamKind::String => strings().into_iter().map(|(a, b)| vec![n, a, b]).collect(),
            ParamKind::Triangle => TriangleSpec::all(n)
                .into_iter()
                .map(|t| vec![n, t.a(), t.b(), t.c()])
                .collect(),
            ParamKind::StringPair => {
                let ss = strings();
                let mut out = Vec::new();
                for (i, &(a, b)) in ss.iter().enumerate() {
                    for &(x, y) in &ss[i + 1..] {
                        out.push(vec![n, a, b, x, y]);
                    }
                }
                out
            }
            ParamKind::SimplexPair => {
                let all = subsets();
                let mut out = Vec::new();
                for k in 2..=n {
                    let same: Vec<&Vec<usize>> = all.iter().filter(|s| s.len() == k).collect();
                    for (i, s) in same.iter().enumerate() {
                        for t in &same[i + 1..] {
                            let mut v = vec![n, k];
                            v.extend(s.iter());
                            v.extend(t.iter());
                            out.push(v);
                        }
                    }
                }
                out
            }
            ParamKind::TrianglePair => {
                let ts = TriangleSpec::all(n);
                let mut out = Vec::new();
                for (i, s) in ts.iter().enumerate() {
                    for t in &ts[i + 1..] {
                        out.push(vec![n, s.a(), s.b(), s.c(), t.a(), t.b(), t.c()]);
                    }
                }
                out
            }
            ParamKind::Fixed(p) => {
                if p[0] == n {
                    vec![p.to_vec()]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn format(self, p: &[usize]) -> String {
        let list = |xs: &[usize]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            ParamKind::N => format!("n={}", p[0]),
            ParamKind::Point => format!("n={} a={}", p[0], p[1]),
            ParamKind::Simplex | ParamKind::Simplex2 | ParamKind::InternalSimplex => {
                format!("n={} A={}", p[0], list(&p[1..]))
            }
            ParamKind::FixedPoints => format!("n={} K={}", p[0], list(&p[1..])),
            ParamKind::String => format!("n={} a={} b={}", p[0], p[1], p[2]),
            ParamKind::Triangle => format!("n={} a={} b={} c={}", p[0], p[1], p[2], p[3]),
            ParamKind::Fixed(_) => match p.len() {
                4 => format!("n={} a={} b={} c={}", p[0], p[1], p[2], p[3]),
                _ => format!("n={} A={}", p[0], list(&p[1..])),
            },
            ParamKind::StringPair => {
                format!("n={} {{{},{}}} {{{},{}}}", p[0], p[1], p[2], p[3], p[4])
            }
            ParamKind::SimplexPair => {
                let k = p[1];
                format!(
                    "n={} A={} B={}",
                    p[0],
                    list(&p[2..2 + k]),
                    list(&p[2 + k..2 + 2 * k])
                )
            }
            ParamKind::TrianglePair => format!(
                "n={} {{{},{},{}}} {{{},{},{}}}",
                p[0], p[1], p[2], p[3], p[4], p[5], p[6]
            ),
        }
    }
}

/// Result of one checker call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub holds: bool,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
            note: None,
        }
    }

    fn fail(witness: impl Display) -> Self {
        Self {
            holds: false,
            witness: Some(witness.to_string()),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Display) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Outcome::fail(format!($($arg)+));
        }
    };
}

macro_rules! ensure_verdict {
    ($verdict:expr, $($arg:tt)+) => {{
        let v: Verdict = $verdict;
        if !v.holds {
            let w = v.witness.map(|w| w.to_string()).unwrap_or_default();
            return Outcome::fail(format!("{}: {}", format!($($arg)+), w));
        }
    }};
}

macro_rules! ensure_fails {
    ($verdict:expr, $($arg:tt)+) => {{
        let v: Verdict = $verdict;
        if v.holds {
            return Outcome::fail(format!("{} unexpectedly closed", format!($($arg)+)));
        }
    }};
}

pub struct ClaimDef {
    pub id: &'static str,
    pub statement: &'static str,
    pub params: ParamKind,
    pub min_n: usize,
    /// Largest `n` the sweep will visit, whatever `--n-max` asks for.
    pub cap: usize,
    pub expectation: Expectation,
    check: fn(&[usize]) -> Outcome,
}

impl ClaimDef {
    pub fn tuples(&self, n_max: usize) -> Vec<Vec<usize>> {
        (self.min_n..=n_max.min(self.cap))
            .flat_map(|n| self.params.generate(n))
            .collect()
    }

    pub fn run_one(&self, params: &[usize]) -> ClaimResult {
        let start = Instant::now();
        let outcome = (self.check)(params);
        debug_assert!(outcome.holds || outcome.witness.is_some());
        ClaimResult {
            claim: self.id,
            params: self.params.format(params),
            holds: outcome.holds,
            expectation: self.expectation,
            witness: outcome.witness,
            note: outcome.note,
            elapsed_us: start.elapsed().as_micros() as u64,
        }
    }

    pub fn run(&self, n_max: usize, exec: Exec) -> Vec<ClaimResult> {
        let tuples = self.tuples(n_max);
        exec.map(&tuples, |p| self.run_one(p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: &'static str,
    pub params: String,
    pub holds: bool,
    pub expectation: Expectation,
    pub witness: Option<String>,
    pub note: Option<String>,
    /// Wall time of the check; excluded from text output.
    pub elapsed_us: u64,
}

pub fn find(id: &str) -> Result<&'static ClaimDef> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// Runs the named claims, ordered by registry position and then parameters.
pub fn run_claims(ids: &[&str], n_max: usize, exec: Exec) -> Result<Vec<ClaimResult>> {
    let defs: Vec<&ClaimDef> = ids.iter().map(|id| find(id)).collect::<Result<_>>()?;
    let jobs: Vec<(&ClaimDef, Vec<usize>)> = defs
        .iter()
        .flat_map(|d| d.tuples(n_max).into_iter().map(move |p| (*d, p)))
        .collect();
    Ok(exec.map(&jobs, |(d, p)| d.run_one(p)))
}

pub fn run_all(n_max: usize, exec: Exec) -> Vec<ClaimResult> {
    let ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
    run_claims(&ids, n_max, exec).expect("registry ids are known")
}

// ---------------------------------------------------------------- helpers

fn simplex(p: &[usize]) -> SimplexSpec {
    SimplexSpec::new(p[0], &p[1..]).expect("generated simplex is valid")
}

fn string(p: &[usize]) -> StringSpec {
    StringSpec::new(p[0], p[1], p[2]).expect("generated string is valid")
}

fn tri(p: &[usize]) -> TriangleSpec {
    TriangleSpec::new(p[0], p[1], p[2], p[3]).expect("generated triangle is valid")
}

fn subset(v: Vec<ChainEndo>) -> Subset {
    Subset::new(v).expect("non-empty")
}

fn endo(n: usize, runs: &[(usize, usize)]) -> ChainEndo {
    ChainEndo::from_runs(n, runs).expect("valid runs")
}

fn show(v: &[ChainEndo]) -> String {
    let items: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn fixing(v: &[ChainEndo], point: usize) -> Vec<ChainEndo> {
    v.iter()
        .filter(|e| e.get(point) == point)
        .cloned()
        .collect()
}

fn sorted(mut v: Vec<ChainEndo>) -> Vec<ChainEndo> {
    v.sort();
    v
}

// ---------------------------------------------------------------- chain

fn semiring_laws(p: &[usize]) -> Outcome {
    let all = all_endos(p[0]).expect("valid n");
    for x in &all {
        ensure!(x + x == *x, "{x} + {x} ≠ {x}");
        for y in &all {
            ensure!(x + y == y + x, "({x}) + ({y}) ≠ ({y}) + ({x})");
            for z in &all {
                ensure!(
                    &(x + y) + z == x + &(y + z),
                    "+ not associative at {x}, {y}, {z}"
                );
                ensure!(
                    &(x * y) * z == x * &(y * z),
                    "· not associative at {x}, {y}, {z}"
                );
                ensure!(
                    x * &(y + z) == &(x * y) + &(x * z),
                    "left distributivity fails at {x}, {y}, {z}"
                );
                ensure!(
                    &(x + y) * z == &(x * z) + &(y * z),
                    "right distributivity fails at {x}, {y}, {z}"
                );
            }
        }
    }
    let mut noncomm = None;
    'outer: for x in &all {
        for y in &all {
            if x * y != y * x {
                noncomm = Some((x.clone(), y.clone()));
                break 'outer;
            }
        }
    }
    match (p[0], noncomm) {
        (1, None) => Outcome::pass(),
        (1, Some(_)) => Outcome::fail("one-point chain has non-commuting maps"),
        (_, Some((x, y))) => {
            Outcome::pass().with_note(format!("· does not commute: ({x})·({y}) ≠ ({y})·({x})"))
        }
        (_, None) => Outcome::fail("multiplication commutes"),
    }
}

fn catalan_count(p: &[usize]) -> Outcome {
    let (n, a) = (p[0], p[1]);
    let all = all_endos(n).expect("valid n");
    // power iteration up to n steps, independent of eventual_idempotent
    let target = ChainEndo::constant(n, a).expect("valid");
    let count = all
        .iter()
        .filter(|e| {
            let mut q = (*e).clone();
            for _ in 0..n {
                if q == target {
                    return true;
                }
                q = &q * e;
            }
            q == target
        })
        .count() as u128;
    let expected = catalan(a as u128).unwrap() * catalan((n - a - 1) as u128).unwrap();
    ensure!(
        count == expected,
        "{count} {a}-nilpotents, formula gives {expected}"
    );
    Outcome::pass()
}

fn nilpotent_subsemiring(p: &[usize]) -> Outcome {
    let (n, a) = (p[0], p[1]);
    let nil: Vec<ChainEndo> = all_endos(n)
        .expect("valid n")
        .into_iter()
        .filter(|e| e.is_nilpotent_to(a).expect("a < n"))
        .collect();
    ensure_verdict!(is_subsemiring(&subset(nil)), "{a}-nilpotents");
    Outcome::pass()
}

fn idempotent_count(p: &[usize]) -> Outcome {
    let n = p[0];
    let ks = &p[1..];
    let set: Vec<ChainEndo> = all_endos(n)
        .expect("valid n")
        .into_iter()
        .filter(|e| e.is_idempotent() && e.fixed_points() == ks)
        .collect();
    let expected: usize = ks.windows(2).map(|w| w[1] - w[0]).product();
    ensure!(
        set.len() == expected,
        "{} idempotents fix exactly {ks:?}, formula gives {expected}",
        set.len()
    );
    ensure_verdict!(
        is_subsemiring(&subset(set)),
        "idempotents fixing exactly {ks:?}"
    );
    Outcome::pass()
}

// ---------------------------------------------------------------- simplices

fn simplex_subsemiring(p: &[usize]) -> Outcome {
    let s = simplex(p);
    let els = s.enumerate();
    ensure!(
        els.len() as u128 == s.order(),
        "{} elements, expected {}",
        els.len(),
        s.order()
    );
    ensure!(
        els.windows(2).all(|w| w[0] < w[1]),
        "enumeration is not lexicographic"
    );
    ensure_verdict!(is_subsemiring(&subset(els)), "{s}");
    Outcome::pass()
}

fn faces_and_layers(p: &[usize]) -> Outcome {
    let s = simplex(p);
    let els = s.enumerate();
    let interior = s.interior();
    let boundary = s.boundary();
    ensure!(
        interior.len() + boundary.len() == els.len(),
        "interior and boundary do not partition"
    );
    // boundary = union of the faces missing one vertex
    let mut faces: HashSet<ChainEndo> = HashSet::new();
    if s.k() > 1 {
        for skip in 0..s.k() {
            let keep: Vec<usize> = (0..s.k()).filter(|&m| m != skip).collect();
            faces.extend(s.face(&keep).expect("valid").enumerate());
        }
    }
    let b: HashSet<ChainEndo> = boundary.iter().cloned().collect();
    ensure!(
        b == faces,
        "boundary differs from the union of proper faces"
    );
    if s.k() == s.n() {
        ensure!(
            interior == vec![ChainEndo::identity(s.n()).unwrap()],
            "interior of the full simplex is {}",
            show(&interior)
        );
    }
    for m in 0..s.k() {
        let mut total = 0;
        for layer_s in 0..=s.n() {
            let layer = s.layer(LayerId { m, s: layer_s }).expect("valid");
            if layer_s == 0 && s.k() > 1 {
                let keep: Vec<usize> = (0..s.k()).filter(|&j| j != m).collect();
                ensure!(
                    layer == s.face(&keep).unwrap().enumerate(),
                    "layer 0 around vertex {m} is not the opposite face"
                );
            }
            total += layer.len();
        }
        ensure!(
            total == els.len(),
            "layers around vertex {m} hold {total} of {} elements",
            els.len()
        );
    }
    Outcome::pass()
}

fn face_complement(p: &[usize]) -> Outcome {
    let n = p[0];
    let full = SimplexSpec::full(n).expect("valid");
    let all = full.subset();
    let without = |k: usize| {
        let vs: Vec<usize> = (0..n).filter(|&v| v != k).collect();
        SimplexSpec::new(n, &vs).unwrap().subset()
    };
    for k in [0, n - 1] {
        let rest = all.difference(&without(k)).expect("non-empty");
        ensure_verdict!(is_subsemiring(&rest), "removing the face without {k}");
    }
    for k in 1..n - 1 {
        let rest = all.difference(&without(k)).expect("non-empty");
        let alpha = endo(n, &[(0, n - 1), (k, 1)]);
        let sq = &alpha * &alpha;
        ensure!(
            rest.contains(&alpha),
            "{alpha} is not in the complement of the face without {k}"
        );
        ensure!(
            sq == ChainEndo::constant(n, 0).unwrap() && !rest.contains(&sq),
            "({alpha})² = {sq} stays in the complement"
        );
    }
    Outcome::pass()
}

fn dn1_subsemiring(p: &[usize]) -> Outcome {
    let s = simplex(p);
    for m in 0..s.k() {
        let dn = s.discrete_neighborhood(m, 1).expect("valid");
        ensure_verdict!(
            is_subsemiring(&subset(dn)),
            "DN¹ around vertex {}",
            s.vertex(m)
        );
    }
    Outcome::pass()
}

fn dn1_internal(p: &[usize]) -> Outcome {
    let s = simplex(p);
    for m in 0..s.k() {
        let a = s.vertex(m);
        let dn = s.discrete_neighborhood(m, 1).expect("valid");
        for x in &dn {
            ensure!(x.is_nilpotent_to(a).unwrap(), "{x} is not {a}-nilpotent");
            for y in &dn {
                ensure!(x * y == y * x, "({x})·({y}) ≠ ({y})·({x})");
            }
        }
    }
    Outcome::pass()
}

fn dn2_internal(p: &[usize]) -> Outcome {
    let s = simplex(p);
    for m in 0..s.k() {
        let dn = s.discrete_neighborhood(m, 2.min(s.n())).expect("valid");
        ensure_verdict!(
            is_subsemiring(&subset(dn)),
            "DN² around vertex {}",
            s.vertex(m)
        );
    }
    Outcome::pass()
}

fn dn_fixpoints(p: &[usize]) -> Outcome {
    let s = simplex(p);
    let n = s.n();
    let els = s.enumerate();
    let a0 = s.vertex(0);
    let top = s.vertex(s.k() - 1);
    let low = s
        .discrete_neighborhood(0, (n - a0 - 1).max(1))
        .expect("valid");
    ensure!(
        low == fixing(&els, a0),
        "least vertex: DN differs from the maps fixing {a0}"
    );
    let high = s
        .discrete_neighborhood(s.k() - 1, top.max(1))
        .expect("valid");
    ensure!(
        high == fixing(&els, top),
        "biggest vertex: DN differs from the maps fixing {top}"
    );
    Outcome::pass()
}

fn nilpotency_criterion(p: &[usize]) -> Outcome {
    let s = simplex(p);
    let a0 = s.vertex(0);
    let dn = s
        .discrete_neighborhood(0, (s.n() - a0 - 1).max(1))
        .expect("valid");
    let mut converse_misses = 0;
    for x in &dn {
        let predicate = s.nilpotent_in_neighborhood(x);
        let nil = x.is_nilpotent_to(a0).unwrap();
        ensure!(
            !predicate || nil,
            "{x} satisfies the criterion but is not {a0}-nilpotent"
        );
        if nil && !predicate {
            converse_misses += 1;
        }
    }
    let out = Outcome::pass();
    if converse_misses == 0 {
        out.with_note("converse observed: every nilpotent satisfies the criterion")
    } else {
        out.with_note(format!(
            "converse fails for {converse_misses} nilpotent elements"
        ))
    }
}

fn top_layer(p: &[usize]) -> Outcome {
    let s = simplex(p);
    let a0 = s.vertex(0);
    let layer = s.layer(LayerId { m: 0, s: a0 + 1 }).expect("valid");
    ensure!(!layer.is_empty(), "layer {} around {a0} is empty", a0 + 1);
    for x in &layer {
        ensure!(!x.is_nilpotent_to(a0).unwrap(), "{x} is {a0}-nilpotent");
        ensure!(
            x.eventual_idempotent().multiplicity(a0) == a0 + 1,
            "powers of {x} leave the layer"
        );
    }
    ensure_verdict!(
        is_subsemiring(&subset(layer)),
        "layer {} around {a0}",
        a0 + 1
    );
    Outcome::pass()
}

fn dn_radius(p: &[usize]) -> Outcome {
    let s = simplex(p);
    let mut parts = Vec::new();
    for m in 0..s.k() {
        let r = s.min_semiring_radius(m).expect("valid");
        ensure!(
            r.least == 1,
            "DN¹ around vertex {} is not a semiring",
            s.vertex(m)
        );
        let detail = match &r.first_failure {
            Some(f) => format!(
                "{}: closed through {} ({} at {})",
                s.vertex(m),
                r.closed_through,
                f.witness,
                f.radius
            ),
            None => format!("{}: all radii", s.vertex(m)),
        };
        parts.push(detail);
    }
    Outcome::pass().with_note(parts.join("; "))
}

fn simplex_noniso(p: &[usize]) -> Outcome {
    let (n, k) = (p[0], p[1]);
    let s = SimplexSpec::new(n, &p[2..2 + k]).expect("valid");
    let t = SimplexSpec::new(n, &p[2 + k..2 + 2 * k]).expect("valid");
    let v = iso_check(&s.subset(), &t.subset()).expect("simplices are closed");
    ensure!(
        !v.holds,
        "isomorphism found: {:?}",
        v.mapping.map(|m| m.len())
    );
    Outcome::pass()
}

// ---------------------------------------------------------------- strings

fn string_partition(p: &[usize]) -> Outcome {
    let s = string(p);
    let (n, a, b) = (s.n(), s.a(), s.b());
    let part = partition_string(&s);
    let sizes = (part.nil_a.len(), part.idem.len(), part.nil_b.len());
    ensure!(sizes == (n - b, b - a, a + 1), "part sizes {sizes:?}");
    let abar = ChainEndo::constant(n, a).unwrap();
    let bbar = ChainEndo::constant(n, b).unwrap();
    for x in &part.nil_a {
        ensure!(x.is_nilpotent_to(a).unwrap(), "{x} is not {a}-nilpotent");
        ensure!(x * x == abar, "({x})² ≠ {abar}");
    }
    for x in &part.idem {
        ensure!(
            x.is_idempotent() && *x != abar && *x != bbar,
            "{x} is not a non-constant idempotent"
        );
    }
    for x in &part.nil_b {
        ensure!(x.is_nilpotent_to(b).unwrap(), "{x} is not {b}-nilpotent");
        ensure!(x * x == bbar, "({x})² ≠ {bbar}");
    }
    for (name, set) in [
        ("nil_a", &part.nil_a),
        ("id", &part.idem),
        ("nil_b", &part.nil_b),
    ] {
        ensure_verdict!(is_subsemiring(&subset(set.clone())), "{name}");
    }
    Outcome::pass()
}

fn string_fixpoint_unions(p: &[usize]) -> Outcome {
    let s = string(p);
    let els = s.elements();
    let part = partition_string(&s);
    let lower = sorted([part.nil_a.clone(), part.idem.clone()].concat());
    let upper = sorted([part.nil_b.clone(), part.idem.clone()].concat());
    ensure!(
        lower == fixing(&els, s.a()),
        "nil_a ∪ id differs from the maps fixing {}",
        s.a()
    );
    ensure!(
        upper == fixing(&els, s.b()),
        "nil_b ∪ id differs from the maps fixing {}",
        s.b()
    );
    Outcome::pass()
}

fn string_mul_rule(p: &[usize]) -> Outcome {
    let s = string(p);
    let n = s.n();
    for x in 0..n {
        for y in x + 1..n {
            let t = StringSpec::new(n, x, y).unwrap();
            for k in 0..=n {
                for l in 0..=n {
                    let left = StringElem { spec: s, l: k };
                    let right = StringElem { spec: t, l };
                    let fast = string_mul_cases(left, right).unwrap();
                    let slow = &left.to_endo() * &right.to_endo();
                    ensure!(
                        fast == slow,
                        "({}) · ({}): rule gives {fast}, composition {slow}",
                        left.to_endo(),
                        right.to_endo()
                    );
                }
            }
        }
    }
    Outcome::pass()
}

fn string_right_identities(p: &[usize]) -> Outcome {
    let s = string(p);
    let ids = identities(&s.subset());
    let idem = partition_string(&s).idem;
    ensure!(
        ids.right == idem,
        "right identities {} vs idempotents {}",
        show(&ids.right),
        show(&idem)
    );
    Outcome::pass()
}

fn string_trivial_parts(p: &[usize]) -> Outcome {
    let s = string(p);
    let part = partition_string(&s);
    let lower = triviality(&subset(part.nil_a)).expect("closed");
    ensure!(
        lower.is_trivial && lower.lower,
        "nil_a is not lower trivial"
    );
    let upper = triviality(&subset(part.nil_b)).expect("closed");
    ensure!(
        upper.is_trivial && upper.upper,
        "nil_b is not upper trivial"
    );
    Outcome::pass()
}

fn b_nilpotent_union(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (n, a, b, c) = (t.n(), t.a(), t.b(), t.c());
    let ab = partition_string(&StringSpec::new(n, a, b).unwrap()).nil_b;
    let bc = partition_string(&StringSpec::new(n, b, c).unwrap()).nil_a;
    let union = subset([ab, bc].concat());
    let v = match triviality(&union) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(e),
    };
    ensure!(v.is_trivial, "union is not trivial");
    ensure!(
        v.iota == Some(ChainEndo::constant(n, b).unwrap()),
        "product is not {b}̄"
    );
    // b̄ is the top of the first part and the bottom of the second; it is an
    // extreme of the union only when one part is the singleton {b̄}
    let neither = a >= 1 && c + 2 <= n;
    ensure!(
        (!v.upper && !v.lower) == neither,
        "flavor upper={} lower={}",
        v.upper,
        v.lower
    );
    Outcome::pass().with_note(if neither {
        "neither upper nor lower"
    } else if a == 0 {
        "lower: the first part is {b̄}"
    } else {
        "upper: the second part is {b̄}"
    })
}

fn family_a_b(p: &[usize]) -> Outcome {
    let s = string(p);
    let (n, a, b) = (s.n(), s.a(), s.b());
    for r in 1..=n {
        let f = s.family_a(r).unwrap();
        ensure!(
            f.semiring.holds == (r > a),
            "A_{r} closed = {}",
            f.semiring.holds
        );
        if r > b {
            let t = triviality(&subset(f.elements)).expect("closed");
            ensure!(t.is_trivial && t.lower, "A_{r} is not lower trivial");
        }
    }
    for q in 0..n {
        let f = s.family_b(q).unwrap();
        ensure!(
            f.semiring.holds == (q <= b),
            "B_{q} closed = {}",
            f.semiring.holds
        );
    }
    Outcome::pass()
}

fn consecutive(p: &[usize]) -> Outcome {
    let (n, a, b, c) = (p[0], p[1], p[2], p[3]);
    let r = consecutive_union(n, a, b, c).expect("valid");
    ensure!(
        r.elements.len() == 2 * n + 1,
        "union has {} elements",
        r.elements.len()
    );
    ensure_verdict!(r.semiring, "STR{{{a},{b}}} ∪ STR{{{b},{c}}}");
    for k in 0..=n {
        for l in 0..=n {
            let x = endo(n, &[(a, k), (b, n - k)]);
            let y = endo(n, &[(b, l), (c, n - l)]);
            ensure!(&x + &y == y, "({x}) + ({y}) ≠ {y}");
        }
    }
    ensure!(
        !r.three_string_sum.holds,
        "three-string union is additively closed"
    );
    let explicit = &endo(n, &[(a, 1), (b, n - 1)]) + &endo(n, &[(a, 2), (c, n - 2)]);
    ensure!(
        explicit.image() == vec![a, b, c],
        "{explicit} lies on a string"
    );
    Outcome::pass().with_note(format!("escape: {}", r.three_string_sum.witness.unwrap()))
}

fn string_noniso(p: &[usize]) -> Outcome {
    let s = StringSpec::new(p[0], p[1], p[2]).unwrap();
    let t = StringSpec::new(p[0], p[3], p[4]).unwrap();
    let v = string_iso(&s, &t).expect("strings are closed");
    ensure!(!v.holds, "order map {s} → {t} preserves both operations");
    Outcome::pass().with_note(v.witness.unwrap_or_default())
}

// ---------------------------------------------------------------- triangles

fn triangle_order(p: &[usize]) -> Outcome {
    let t = tri(p);
    let count = t.elements().len();
    ensure!(
        count == t.order(),
        "{count} elements, expected {}",
        t.order()
    );
    Outcome::pass()
}

fn tri4(_: &[usize]) -> Outcome {
    let t = TriangleSpec::new(4, 1, 2, 3).unwrap();
    let parse = |s: &str| crate::chain::parse_compact(s, 4).unwrap();
    ensure!(t.elements().len() == 15, "order {}", t.elements().len());
    let int = t.simplex().interior();
    ensure!(
        int == sorted(vec![parse("1_2 2 3"), parse("1 2_2 3"), parse("1 2 3_2")]),
        "interior {}",
        show(&int)
    );
    let x = parse("1 2 3_2");
    ensure!(&x * &x == parse("2 3_3"), "(1 2 3_2)² = {}", &x * &x);
    for (sum, l, r) in [
        ("1_2 2 3", "1_2 2_2", "1_3 3"),
        ("1 2_2 3", "1 2_3", "1_3 3"),
        ("1 2 3_2", "1 2_3", "1_2 3_2"),
    ] {
        ensure!(&parse(l) + &parse(r) == parse(sum), "{l} + {r} ≠ {sum}");
    }
    ensure!(
        t.right_identities() == vec![parse("1_2 2 3")],
        "right identities"
    );
    Outcome::pass()
}

fn interior_sum(p: &[usize]) -> Outcome {
    let t = tri(p);
    let n = t.n();
    let ab = t.string(TriVertex::A, TriVertex::B).unwrap().elements();
    let ac = t.string(TriVertex::A, TriVertex::C).unwrap().elements();
    let abar = ChainEndo::constant(n, t.a()).unwrap();
    let cbar = ChainEndo::constant(n, t.c()).unwrap();
    for alpha in t.elements() {
        let e = t.tri_elem(&alpha).unwrap();
        if e.l == 0 || e.m == 0 {
            ensure!(t.interior_decompose(&alpha).is_err(), "{alpha} decomposed");
            continue;
        }
        let (x, y) = match t.interior_decompose(&alpha) {
            Ok(pair) => pair,
            Err(err) => return Outcome::fail(err),
        };
        ensure!(&x + &y == alpha, "({x}) + ({y}) ≠ {alpha}");
        ensure!(
            ![&x, &y].iter().any(|z| **z == abar || **z == cbar),
            "constant summand for {alpha}"
        );
        let count = ab
            .iter()
            .flat_map(|u| ac.iter().map(move |v| (u, v)))
            .filter(|(u, v)| *u + *v == alpha)
            .count();
        ensure!(count == 1, "{alpha} has {count} decompositions");
    }
    Outcome::pass()
}

fn boundary_semigroup(p: &[usize]) -> Outcome {
    let t = tri(p);
    let b = subset(t.simplex().boundary());
    ensure_verdict!(is_closed_under(&b, &[Op::Mul]), "boundary under ·");
    ensure_fails!(is_closed_under(&b, &[Op::Add]), "boundary under +");
    Outcome::pass()
}

fn interior_additive(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (n, a, b, c) = (t.n(), t.a(), t.b(), t.c());
    let int = subset(t.simplex().interior());
    ensure_verdict!(is_closed_under(&int, &[Op::Add]), "interior under +");
    if n < 4 {
        return Outcome::pass().with_note("n = 3: the interior is {identity}");
    }
    let (x, sq) = t.interior_square_witness().unwrap();
    ensure!(
        int.contains(&x) && !int.contains(&sq),
        "({x})² = {sq} stays inside"
    );
    if a > 0 {
        ensure!(
            sq == endo(n, &[(b, b + 1), (c, n - b - 1)]),
            "({x})² = {sq}"
        );
    } else if b >= 2 {
        ensure!(sq == endo(n, &[(0, 1), (c, n - 1)]), "({x})² = {sq}");
    }
    Outcome::pass().with_note(format!("({x})² = {sq}"))
}

fn triangle_noniso(p: &[usize]) -> Outcome {
    let n = p[0];
    let s = TriangleSpec::new(n, p[1], p[2], p[3]).unwrap();
    let t = TriangleSpec::new(n, p[4], p[5], p[6]).unwrap();
    // Φ: a_k b_l c_m ↦ a'_k b'_l c'_m preserves +
    let phi = |x: &ChainEndo| t.endo(s.tri_elem(x).unwrap()).unwrap();
    let els = s.elements();
    for x in &els {
        for y in &els {
            ensure!(
                phi(&(x + y)) == &phi(x) + &phi(y),
                "Φ(({x}) + ({y})) ≠ Φ({x}) + Φ({y})"
            );
        }
    }
    let v = iso_check(&s.subset(), &t.subset()).expect("triangles are closed");
    ensure!(!v.holds, "{s} ≅ {t}");
    Outcome::pass()
}

fn right_identity_exists(p: &[usize]) -> Outcome {
    let t = tri(p);
    let ids = identities(&t.subset());
    let ri = t.right_identities();
    ensure!(
        ids.right == ri,
        "right identities {} vs fixed-point set {}",
        show(&ids.right),
        show(&ri)
    );
    ensure!(!ri.is_empty(), "no right identity");
    if t.n() > 3 {
        ensure!(ids.left.is_empty(), "left identities {}", show(&ids.left));
    }
    ensure!(
        ri.len() == (t.b() - t.a()) * (t.c() - t.b()),
        "{} right identities",
        ri.len()
    );
    Outcome::pass()
}

fn no_right_similar(p: &[usize]) -> Outcome {
    let t = tri(p);
    let pairs = t.find_similar_pairs(Side::Right);
    ensure!(pairs.is_empty(), "{} ~r {}", pairs[0].0, pairs[0].1);
    Outcome::pass()
}

fn least_triangle_identity(p: &[usize]) -> Outcome {
    let t = tri(p);
    let ids = identities(&t.subset());
    let least = t.n() == 3;
    ensure!(
        ids.two_sided.is_empty() != least,
        "two-sided identities {}",
        show(&ids.two_sided)
    );
    if least {
        ensure!(
            ids.two_sided == vec![ChainEndo::identity(3).unwrap()],
            "identity is {}",
            show(&ids.two_sided)
        );
    }
    Outcome::pass()
}

fn basic_layers(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (n, a, b, c) = (t.n(), t.a(), t.b(), t.c());
    for vertex in [TriVertex::A, TriVertex::C] {
        for layer in t.basic_layers(vertex).expect("basic") {
            let k = layer.k;
            let name = format!("layer {k} around {}", vertex.letter());
            let sizes = (layer.left.len(), layer.idempotents.len(), layer.right.len());
            let expected = match vertex {
                TriVertex::A => (n - c, c - b, b - k + 1),
                _ => (n - k - b, b - a, a + 1),
            };
            ensure!(
                sizes == expected,
                "{name}: split {sizes:?}, expected {expected:?}"
            );
            let whole = t
                .simplex()
                .layer(LayerId {
                    m: vertex as usize,
                    s: k,
                })
                .unwrap();
            ensure!(
                whole == layer.elements,
                "{name} differs from the layer of the simplex"
            );
            ensure!(
                layer.elements.first().unwrap().is_idempotent(),
                "{name}: least element not idempotent"
            );
            ensure!(
                layer.elements.last().unwrap().is_idempotent(),
                "{name}: biggest element not idempotent"
            );
            let idem: Vec<ChainEndo> = layer
                .elements
                .iter()
                .filter(|e| e.is_idempotent())
                .cloned()
                .collect();
            let interior_idem: Vec<ChainEndo> = idem
                .iter()
                .filter(|e| e.image().len() == 3)
                .cloned()
                .collect();
            ensure!(
                interior_idem == layer.idempotents,
                "{name}: idempotent part"
            );
            let set = subset(layer.elements.clone());
            ensure_verdict!(is_subsemiring(&set), "{name}");
            let ids = identities(&set);
            ensure!(
                ids.right == layer.idempotents,
                "{name}: right identities {}",
                show(&ids.right)
            );
            if vertex == TriVertex::A {
                let least = endo(n, &[(a, k), (b, n - k)]);
                for x in &layer.left {
                    for y in &layer.left {
                        ensure!(x * y == least, "{name}: ({x})·({y}) ≠ {least}");
                    }
                }
            }
        }
    }
    Outcome::pass()
}

fn b_layers_not_closed(p: &[usize]) -> Outcome {
    let t = tri(p);
    let m = TriVertex::B as usize;
    let mut open = Vec::new();
    for s in 1..t.n() {
        let layer = t.simplex().layer(LayerId { m, s }).unwrap();
        if layer.is_empty() {
            continue;
        }
        let v = is_closed_under(&subset(layer), &[Op::Mul]);
        if let Some(w) = v.witness {
            open.push(format!("{s}: {w}"));
        }
    }
    ensure!(
        !open.is_empty(),
        "every layer around {} is closed under ·",
        t.b()
    );
    ensure!(
        t.basic_layers(TriVertex::B).is_err(),
        "layers around b reported as basic"
    );
    Outcome::pass().with_note(format!("not closed: {}", open.join("; ")))
}

fn layer_string_iso(p: &[usize]) -> Outcome {
    let t = tri(p);
    for vertex in [TriVertex::A, TriVertex::C] {
        for k in t.basic_range(vertex).unwrap() {
            let iso = t.layer_string_iso(vertex, k).expect("basic");
            ensure!(
                iso.verdict.holds,
                "layer {k} around {} vs {}: {}",
                vertex.letter(),
                iso.target,
                iso.verdict.witness.unwrap_or_default()
            );
            let layer = t.basic_layer(vertex, k).unwrap();
            let part = partition_string(&iso.target);
            ensure!(
                (layer.left.len(), layer.idempotents.len(), layer.right.len())
                    == (part.nil_a.len(), part.idem.len(), part.nil_b.len()),
                "layer {k} around {}: part sizes differ from {}",
                vertex.letter(),
                iso.target
            );
            let generic =
                iso_check(&subset(layer.elements.clone()), &iso.target.subset()).expect("closed");
            ensure!(
                generic.holds,
                "search finds no isomorphism for layer {k} around {}",
                vertex.letter()
            );
        }
    }
    Outcome::pass()
}

fn ri_layer_intersection(p: &[usize]) -> Outcome {
    let t = tri(p);
    for e in t.right_identities() {
        let te = t.tri_elem(&e).unwrap();
        let la = t
            .basic_layer(TriVertex::A, te.k)
            .expect("k is a basic index");
        let lc = t
            .basic_layer(TriVertex::C, te.m)
            .expect("m is a basic index");
        let both: Vec<ChainEndo> = la
            .elements
            .iter()
            .filter(|x| lc.elements.contains(x))
            .cloned()
            .collect();
        ensure!(
            both == vec![e.clone()],
            "layers through {e} meet in {}",
            show(&both)
        );
    }
    Outcome::pass()
}

fn left_similar(p: &[usize]) -> Outcome {
    let t = tri(p);
    let els = t.elements();
    let pairs = t.find_similar_pairs(Side::Left);
    if t.n() == 3 {
        ensure!(
            pairs.is_empty(),
            "{} ~l {} although an identity exists",
            pairs[0].0,
            pairs[0].1
        );
        return Outcome::pass();
    }
    let (x, y) = t.left_similar_witness().unwrap();
    ensure!(
        t.contains(&x) && t.contains(&y) && x != y,
        "witness outside the triangle"
    );
    for g in &els {
        ensure!(g * &x == g * &y, "({g})·({x}) ≠ ({g})·({y})");
    }
    let ri = t.right_identities();
    ensure!(
        !ri.contains(&x) && !ri.contains(&y),
        "witness contains a right identity"
    );
    let key = if x < y {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    };
    ensure!(
        pairs.contains(&key),
        "pair search missed {} ~l {}",
        key.0,
        key.1
    );
    // left similarity is exactly equality of type
    for (u, v) in &pairs {
        ensure!(
            t.elem_type(u) == t.elem_type(v),
            "{u} ~l {v} with different types"
        );
    }
    let mut by_type = std::collections::HashMap::new();
    for e in &els {
        *by_type.entry(t.elem_type(e)).or_insert(0usize) += 1;
    }
    let expected: usize = by_type.values().map(|&c| c * (c - 1) / 2).sum();
    ensure!(
        pairs.len() == expected,
        "{} left-similar pairs, {expected} same-type pairs",
        pairs.len()
    );
    Outcome::pass().with_note(format!("{x} ~l {y}"))
}

fn interior_idempotents(p: &[usize]) -> Outcome {
    let t = tri(p);
    let idem: Vec<ChainEndo> = t
        .simplex()
        .interior()
        .into_iter()
        .filter(|e| e.is_idempotent())
        .collect();
    ensure!(
        idem == t.right_identities(),
        "interior idempotents {}",
        show(&idem)
    );
    for e in &idem {
        ensure!(
            t.region_of(e) == Region::RightIdentities,
            "{e} has type {}",
            t.elem_type(e)
        );
    }
    Outcome::pass()
}

fn idempotent_sum(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (x, y, s) = t.idempotent_sum_counterexample();
    ensure!(
        x.is_idempotent() && y.is_idempotent(),
        "summands are not idempotent"
    );
    let expected = endo(t.n(), &[(t.b(), t.a() + 1), (t.c(), t.n() - t.a() - 1)]);
    ensure!(s == expected, "({x}) + ({y}) = {s}");
    ensure!(
        &s * &s == ChainEndo::constant(t.n(), t.c()).unwrap(),
        "({s})² = {}",
        &s * &s
    );
    Outcome::pass()
}

fn boundary_idempotents(p: &[usize]) -> Outcome {
    let t = tri(p);
    let boundary = subset(t.simplex().boundary());
    let idem: Vec<ChainEndo> = boundary
        .iter()
        .filter(|e| e.is_idempotent())
        .cloned()
        .collect();
    for (x, y) in [
        (TriVertex::A, TriVertex::B),
        (TriVertex::A, TriVertex::C),
        (TriVertex::B, TriVertex::C),
    ] {
        let part = partition_string(&t.string(x, y).unwrap());
        ensure_verdict!(
            is_closed_under(&subset(part.idem), &[Op::Mul]),
            "idempotents of the {}{} string under ·",
            x.letter(),
            y.letter()
        );
    }
    for e in &idem {
        for f in &idem {
            ensure!(
                boundary.contains(&(e * f)),
                "({e})·({f}) leaves the boundary"
            );
        }
    }
    let all = is_closed_under(&subset(idem), &[Op::Mul]);
    ensure!(!all.holds, "all boundary idempotents are closed under ·");
    Outcome::pass().with_note(format!(
        "closure of all boundary idempotents fails: {}",
        all.witness.unwrap()
    ))
}

fn it_ideals(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (a, b, c) = (t.a(), t.b(), t.c());
    let it = match t.idempotent_triangle() {
        Ok(it) => it,
        Err(e) => return Outcome::fail(e),
    };
    ensure!(
        it.elements.len() == (c - a) * (c - a + 1) / 2,
        "|IT| = {}",
        it.elements.len()
    );
    ensure!(it.ri.len() == (b - a) * (c - b), "|RI| = {}", it.ri.len());
    let rest = ((c - b) * (c - b) + (b - a) * (b - a) + c - a) / 2;
    ensure!(
        it.rest.len() == rest,
        "|IT \\ RI| = {}, expected {rest}",
        it.rest.len()
    );
    ensure_verdict!(it.ri_semiring, "RI");
    ensure_verdict!(it.rest_semiring, "IT \\ RI");
    ensure_verdict!(it.id_ac_ideal, "Id(STR{{a,c}}) as an ideal");
    ensure_verdict!(it.rest_ideal, "IT \\ RI as an ideal");
    ensure!(
        it.id_left_zeroes,
        "Id(STR{{a,c}}) elements are not left zeroes"
    );
    ensure!(
        it.l_below_r,
        "some left-triangle element is not below the right triangle"
    );
    for e in &it.id_ac {
        let k = e.multiplicity(a);
        let expected = if k <= b { Region::RTri } else { Region::LTri };
        ensure!(
            t.region_of(e) == expected,
            "{e} lies in {:?}",
            t.region_of(e)
        );
    }
    Outcome::pass()
}

fn ri_order_erratum(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (a, b, c) = (t.a(), t.b(), t.c());
    let ri = t.right_identities().len();
    let stated = (b - a) * (c - a);
    let corrected = (b - a) * (c - b);
    ensure!(
        ri == corrected,
        "|RI| = {ri}, corrected form gives {corrected}"
    );
    ensure!(ri != stated, "|RI| = {ri} matches the stated (b-a)(c-a)");
    Outcome::pass().with_note(format!(
        "|RI| = {ri}; (b-a)(c-b) = {corrected}; stated (b-a)(c-a) = {stated}"
    ))
}

fn it_fixed_points_erratum(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (n, a, b, c) = (t.n(), t.a(), t.b(), t.c());
    let els = t.elements();
    let fix_ab: Vec<ChainEndo> = fixing(&fixing(&els, a), b);
    let fix_ac: Vec<ChainEndo> = fixing(&fixing(&els, a), c);
    let corner = endo(n, &[(a, c), (c, n - c)]);
    let corners = [
        corner.clone(),
        endo(n, &[(a, a + 1), (b, c - a - 1), (c, n - c)]),
        endo(n, &[(a, a + 1), (c, n - a - 1)]),
    ];
    ensure!(!fix_ab.contains(&corner), "{corner} fixes {b}");
    ensure!(
        corners.iter().all(|v| fix_ac.contains(v)),
        "a listed corner does not fix {a} and {c}"
    );
    ensure!(
        fix_ac.len() == (c - a) * (c - a + 1) / 2,
        "|fix(a,c)| = {}",
        fix_ac.len()
    );
    let it = t.idempotent_triangle().expect("valid");
    ensure!(
        it.elements == fix_ac,
        "idempotent triangle differs from fix(a,c)"
    );
    Outcome::pass().with_note(format!(
        "fix(a,b) has {} elements and misses {corner}; fix(a,c) has {}",
        fix_ab.len(),
        fix_ac.len()
    ))
}

fn region_verdict(t: &TriangleSpec, regions: &[Region]) -> Outcome {
    let report = t.decompose();
    for &r in regions {
        let e = report.entry(r);
        ensure!(
            e.count == e.formula,
            "|{}| = {}, formula {}",
            r.key(),
            e.count,
            e.formula
        );
        ensure_verdict!(e.closed.clone(), "{}", r.key());
    }
    Outcome::pass()
}

fn ltri_rtri(p: &[usize]) -> Outcome {
    let t = tri(p);
    let out = region_verdict(&t, &[Region::LTri, Region::RTri]);
    if !out.holds {
        return out;
    }
    let it = t.idempotent_triangle().expect("valid");
    let union = sorted([it.l_tri.clone(), it.r_tri.clone(), it.ri.clone()].concat());
    ensure!(
        union == it.elements,
        "L△ ∪ R△ ∪ RI is not the idempotent triangle"
    );
    Outcome::pass()
}

fn nil_regions(p: &[usize]) -> Outcome {
    let t = tri(p);
    let out = region_verdict(&t, &[Region::NilA, Region::NilB, Region::NilC]);
    if !out.holds {
        return out;
    }
    for (r, v) in [
        (Region::NilA, t.a()),
        (Region::NilB, t.b()),
        (Region::NilC, t.c()),
    ] {
        let els = t.decompose().entry(r).elements.clone();
        let all_nil: Vec<ChainEndo> = t
            .elements()
            .into_iter()
            .filter(|e| e.is_nilpotent_to(v).unwrap())
            .collect();
        ensure!(
            els == all_nil,
            "{} is not the set of {v}-nilpotents",
            r.key()
        );
    }
    Outcome::pass()
}

fn nil_regions_trivial(p: &[usize]) -> Outcome {
    let t = tri(p);
    let (n, a, c) = (t.n(), t.a(), t.c());
    let report = t.decompose();
    let mut all_trivial = true;
    for (r, v, expected) in [
        (Region::NilA, a, c == n - 1),
        (Region::NilB, t.b(), true),
        (Region::NilC, c, a == 0),
    ] {
        let tv = match triviality(&subset(report.entry(r).elements.clone())) {
            Ok(tv) => tv,
            Err(e) => return Outcome::fail(format!("{}: {e}", r.key())),
        };
        ensure!(
            tv.is_trivial == expected,
            "{} trivial = {}, expected {expected}",
            r.key(),
            tv.is_trivial
        );
        if tv.is_trivial {
            ensure!(
                tv.iota == Some(ChainEndo::constant(n, v).unwrap()),
                "{} has product {:?}",
                r.key(),
                tv.iota
            );
        }
        all_trivial &= tv.is_trivial;
    }
    Outcome::pass().with_note(format!(
        "all three trivial: {}",
        if all_trivial { "yes" } else { "no" }
    ))
}

fn par_regions(p: &[usize]) -> Outcome {
    region_verdict(&tri(p), &[Region::LPar, Region::RPar])
}

fn eight_regions(p: &[usize]) -> Outcome {
    let t = tri(p);
    let r = t.decompose();
    ensure!(
        r.types_agree,
        "type classification disagrees with the defining properties"
    );
    ensure!(r.disjoint, "regions overlap");
    ensure!(r.cover, "regions do not cover the triangle");
    for e in &r.regions {
        ensure!(
            e.count == e.formula,
            "|{}| = {}, formula {}",
            e.region.key(),
            e.count,
            e.formula
        );
        ensure_verdict!(e.closed.clone(), "{}", e.region.key());
    }
    let total: usize = r.regions.iter().map(|e| e.formula).sum();
    ensure!(total == t.order(), "formulas sum to {total}");
    Outcome::pass()
}

fn tri6(_: &[usize]) -> Outcome {
    let t = TriangleSpec::new(6, 1, 3, 4).unwrap();
    let r = t.decompose();
    let counts: Vec<usize> = r.regions.iter().map(|e| e.count).collect();
    ensure!(
        counts == vec![5, 4, 7, 4, 2, 1, 3, 2],
        "region counts {counts:?}"
    );
    ensure!(counts.iter().sum::<usize>() == 28, "total");
    ensure!(r.holds(), "decomposition check failed");
    Outcome::pass()
}

fn b_fixed_union(p: &[usize]) -> Outcome {
    let t = tri(p);
    let r = t.decompose();
    let fix_b = fixing(&t.elements(), t.b());
    let collect = |regions: &[Region]| {
        sorted(
            regions
                .iter()
                .flat_map(|&g| r.entry(g).elements.clone())
                .collect(),
        )
    };
    let stated = collect(&[
        Region::NilA,
        Region::LPar,
        Region::RPar,
        Region::RightIdentities,
    ]);
    let corrected = collect(&[
        Region::NilB,
        Region::LPar,
        Region::RPar,
        Region::RightIdentities,
    ]);
    ensure!(
        stated != fix_b,
        "the stated union (with the a-nilpotents) equals fix(b)"
    );
    ensure!(
        corrected == fix_b,
        "fix(b) differs from nil_b ∪ l_par ∪ r_par ∪ ri"
    );
    ensure_verdict!(is_subsemiring(&subset(fix_b)), "fix(b)");
    Outcome::pass().with_note("fix(b) = nil_b ∪ l_par ∪ r_par ∪ ri")
}

// ---------------------------------------------------------------- registry

const TRI4: &[usize] = &[4, 1, 2, 3];
const TRI6: &[usize] = &[6, 1, 3, 4];

macro_rules! claim {
    ($id:expr, $statement:expr, $params:expr, $min:expr, $cap:expr, $check:expr) => {
        claim!(
            $id,
            $statement,
            $params,
            $min,
            $cap,
            $check,
            Expectation::Holds
        )
    };
    ($id:expr, $statement:expr, $params:expr, $min:expr, $cap:expr, $check:expr, $exp:expr) => {
        ClaimDef {
            id: $id,
            statement: $statement,
            params: $params,
            min_n: $min,
            cap: $cap,
            expectation: $exp,
            check: $check,
        }
    };
}

pub static REGISTRY: &[ClaimDef] = &[
    claim!("semiring-laws", "max and left-to-right composition satisfy the semiring laws; composition does not commute once n ≥ 2", ParamKind::N, 1, 5, semiring_laws),
    claim!("catalan-count", "C_a·C_(n-a-1) endomorphisms of C_n are a-nilpotent", ParamKind::Point, 1, 10, catalan_count),
    claim!("nilpotent-subsemiring", "the a-nilpotent endomorphisms of C_n form a subsemiring", ParamKind::Point, 2, 7, nilpotent_subsemiring),
    claim!("idempotent-count", "the idempotents with fixed-point set {k_1 < … < k_s} form a subsemiring of order prod(k_(m+1) - k_m)", ParamKind::FixedPoints, 1, 8, idempotent_count),
    claim!("simplex-subsemiring", "every simplex has binom(n+k-1, k-1) elements and is a subsemiring", ParamKind::Simplex, 1, 7, simplex_subsemiring),
    claim!("faces-and-layers", "boundary is the union of proper faces, interior is the maps onto A, and the layers around each vertex partition the simplex", ParamKind::Simplex, 1, 7, faces_and_layers),
    claim!("face-complement", "removing the face without 0 or without n-1 leaves a subsemiring; removing any other facet does not", ParamKind::N, 3, 7, face_complement),
    claim!("dn1-subsemiring", "DN¹ of every vertex is a subsemiring", ParamKind::Simplex, 1, 7, dn1_subsemiring),
    claim!("dn1-internal-commutative-nilpotent", "in an internal simplex DN¹ of a_m is commutative and a_m-nilpotent", ParamKind::InternalSimplex, 3, 7, dn1_internal),
    claim!("dn2-internal-subsemiring", "in an internal simplex DN² of every vertex is a subsemiring", ParamKind::InternalSimplex, 3, 7, dn2_internal),
    claim!("dn-fixpoints", "DN^(n-a_0-1) of the least vertex and DN^(a_(k-1)) of the biggest are the maps fixing that vertex", ParamKind::Simplex, 1, 8, dn_fixpoints),
    claim!("nilpotency-criterion", "α(0..=a_1) = a_0 and α(i) < i beyond a_1 make α a_0-nilpotent", ParamKind::Simplex2, 2, 7, nilpotency_criterion),
    claim!("top-layer-subsemiring", "layer a_0+1 around a_0 has no a_0-nilpotents, keeps its powers and is a subsemiring", ParamKind::Simplex2, 2, 7, top_layer),
    claim!("dn-radius", "DN¹ is always a semiring; reports how far larger radii stay closed", ParamKind::Simplex, 1, 6, dn_radius),
    claim!("simplex-noniso", "distinct simplices with the same number of vertices (at least two) are not isomorphic", ParamKind::SimplexPair, 2, 4, simplex_noniso),
    claim!("string-partition", "a string splits into n-b a-nilpotents, b-a idempotents and a+1 b-nilpotents, each a subsemiring, nilpotents squaring to their vertex", ParamKind::String, 2, 8, string_partition),
    claim!("string-fixpoint-unions", "nil_a ∪ id fixes a and nil_b ∪ id fixes b, exactly", ParamKind::String, 2, 8, string_fixpoint_unions),
    claim!("string-mul-rule", "the three-case product rule agrees with composition for elements of any two strings", ParamKind::String, 2, 8, string_mul_rule),
    claim!("string-right-identities", "the right identities of a string are exactly its non-constant idempotents", ParamKind::String, 2, 8, string_right_identities),
    claim!("string-trivial-parts", "nil_a is a lower trivial semiring and nil_b an upper trivial one", ParamKind::String, 2, 8, string_trivial_parts),
    claim!("b-nilpotent-union", "the b-nilpotents of STR{a,b} and STR{b,c} together form a trivial semiring with product b̄", ParamKind::Triangle, 3, 8, b_nilpotent_union),
    claim!("family-a-b", "A_r is a semiring iff r > a (lower trivial for r > b); B_s is a semiring iff s ≤ b", ParamKind::String, 2, 8, family_a_b),
    claim!("consecutive-union", "STR{a,b} ∪ STR{b,c} is a semiring, while adding STR{a,c} breaks additive closure", ParamKind::Triangle, 3, 8, consecutive),
    claim!("string-noniso", "distinct strings over the same chain are not isomorphic", ParamKind::StringPair, 3, 8, string_noniso),
    claim!("triangle-order", "a triangle has binom(n+2, 2) elements", ParamKind::Triangle, 3, 10, triangle_order),
    claim!("tri4-example", "worked example on the triangle {1,2,3} of C_4", ParamKind::Fixed(TRI4), 4, 4, tri4),
    claim!("interior-sum", "each a_k b_l c_j with l, j ≥ 1 is uniquely a_k b_(n-k) + a_(n-j) c_j", ParamKind::Triangle, 3, 8, interior_sum),
    claim!("boundary-semigroup", "the boundary of a triangle is closed under · but not under +", ParamKind::Triangle, 3, 8, boundary_semigroup),
    claim!("interior-additive", "the interior is closed under +, and for n ≥ 4 not under ·", ParamKind::Triangle, 3, 8, interior_additive),
    claim!("triangle-noniso", "multiplicity matching preserves +, yet distinct triangles are not isomorphic", ParamKind::TrianglePair, 3, 5, triangle_noniso),
    claim!("right-identity-exists", "the right identities are the (b-a)(c-b) maps fixing a, b, c; no left identity once n > 3", ParamKind::Triangle, 3, 8, right_identity_exists),
    claim!("no-right-similar", "no two elements of a triangle are right-similar", ParamKind::Triangle, 3, 8, no_right_similar),
    claim!("least-triangle-identity", "only the triangle {0,1,2} of C_3 has a two-sided identity", ParamKind::Triangle, 3, 8, least_triangle_identity),
    claim!("basic-layer-semiring", "basic layers around a and c are subsemirings with the stated left/idempotent/right split", ParamKind::Triangle, 3, 8, basic_layers),
    claim!("b-layer-not-closed", "some layer around b is not closed under ·", ParamKind::Triangle, 3, 8, b_layers_not_closed),
    claim!("layer-string-iso", "layer k around a is isomorphic to STR(n-k){b-k,c-k}; layer k around c to STR(n-k){a,b}", ParamKind::Triangle, 3, 8, layer_string_iso),
    claim!("ri-layer-intersection", "each right identity is the meet of one basic layer around a and one around c", ParamKind::Triangle, 3, 8, ri_layer_intersection),
    claim!("left-similar-exists", "for n > 3 there is a left-similar pair of non-right-identities; left similarity is equality of type", ParamKind::Triangle, 3, 8, left_similar),
    claim!("interior-idempotents-right-identities", "the interior idempotents are exactly the right identities", ParamKind::Triangle, 3, 8, interior_idempotents),
    claim!("idempotent-sum-not-closed", "a_(a+1) c_(n-a-1) + b_(b+1) c_(n-b-1) = b_(a+1) c_(n-a-1), whose square is c̄", ParamKind::Triangle, 3, 8, idempotent_sum),
    claim!("boundary-idempotents-closed", "idempotents of each edge string are closed under ·; products of boundary idempotents stay on the boundary but need not be idempotent", ParamKind::Triangle, 3, 8, boundary_idempotents, Expectation::Erratum),
    claim!("it-ideals", "the maps fixing a and c: RI and the rest are subsemirings of the stated orders, Id(STR{a,c}) and the rest are ideals, Id(STR{a,c}) consists of left zeroes", ParamKind::Triangle, 3, 8, it_ideals),
    claim!("ri-order-erratum", "the right-identity count is (b-a)(c-b), not the stated (b-a)(c-a)", ParamKind::Triangle, 3, 8, ri_order_erratum, Expectation::Erratum),
    claim!("it-fixed-points-erratum", "the idempotent triangle is the set fixing a and c, not a and b as stated", ParamKind::Triangle, 3, 8, it_fixed_points_erratum, Expectation::Erratum),
    claim!("ltri-rtri-subsemirings", "the left and right geometric triangles are subsemirings and with RI make up the idempotent triangle", ParamKind::Triangle, 3, 8, ltri_rtri),
    claim!("nil-regions", "the a-, b- and c-nilpotents of a triangle are subsemirings of the stated orders", ParamKind::Triangle, 3, 8, nil_regions),
    claim!("nil-regions-trivial", "the b-nilpotents of a triangle form a trivial semiring; the a-nilpotents do iff c = n-1 and the c-nilpotents iff a = 0", ParamKind::Triangle, 3, 8, nil_regions_trivial, Expectation::Erratum),
    claim!("par-subsemirings", "the two parallelograms are subsemirings of orders (b-a)(n-c) and (a+1)(c-b)", ParamKind::Triangle, 3, 8, par_regions),
    claim!("eight-region-partition", "the eight type-defined regions are disjoint subsemirings covering the triangle, with the stated orders", ParamKind::Triangle, 3, 8, eight_regions),
    claim!("tri6-regions", "region sizes of the triangle {1,3,4} of C_6", ParamKind::Fixed(TRI6), 6, 6, tri6),
    claim!("b-fixed-union", "the maps fixing b are nil_b ∪ l_par ∪ r_par ∪ ri, not nil_a ∪ … as stated", ParamKind::Triangle, 3, 8, b_fixed_union, Expectation::Erratum),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        ids.sort();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
    }

    #[test]
    fn unknown_id_rejected() {
        assert!(matches!(find("no-such-claim"), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn string_noniso_is_empty_below_three() {
        assert!(find("string-noniso").unwrap().tuples(2).is_empty());
    }

    #[test]
    fn fixed_instances_run_once() {
        assert_eq!(find("tri4-example").unwrap().tuples(8).len(), 1);
        assert_eq!(find("tri6-regions").unwrap().tuples(5).len(), 0);
    }

    #[test]
    fn all_claims_hold_up_to_five() {
        let results = run_all(5, Exec::default());
        let failed: Vec<_> = results.iter().filter(|r| !r.holds).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
