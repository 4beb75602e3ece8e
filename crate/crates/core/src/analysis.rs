//! Structure-agnostic checks on finite subsets of a chain's endomorphism
//! semiring: closure, ideals, trivial semirings, identities, similarity and
//! isomorphism.
//!
//! Every checker scans pairs in lexicographic element order and reports the
//! first failing pair, so a witness is the same under every [`Exec`].

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::chain::{add_into, mul_into, ChainEndo};
use crate::error::{Error, Result};
use crate::par::Exec;

/// A non-empty set of endomorphisms of one chain, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    n: usize,
    elements: Vec<ChainEndo>,
}

impl Subset {
    pub fn new(mut elements: Vec<ChainEndo>) -> Result<Self> {
        let n = elements
            .first()
            .map(ChainEndo::n)
            .ok_or_else(|| Error::InvalidSpec("empty subset".into()))?;
        if let Some(bad) = elements.iter().find(|e| e.n() != n) {
            return Err(Error::SizeMismatch {
                left: n,
                right: bad.n(),
            });
        }
        elements.sort();
        elements.dedup();
        Ok(Self { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ChainEndo] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<ChainEndo> {
        self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ChainEndo> {
        self.elements.iter()
    }

    pub(crate) fn position_of(&self, values: &[u8]) -> Option<usize> {
        self.elements
            .binary_search_by(|e| e.values().cmp(values))
            .ok()
    }

    pub fn contains(&self, alpha: &ChainEndo) -> bool {
        alpha.n() == self.n && self.position_of(alpha.values()).is_some()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Elements of `self` not in `other`; `None` when nothing is left.
    pub fn difference(&self, other: &Subset) -> Option<Subset> {
        let rest: Vec<_> = self
            .elements
            .iter()
            .filter(|e| !other.contains(e))
            .cloned()
            .collect();
        (!rest.is_empty()).then_some(Subset {
            n: self.n,
            elements: rest,
        })
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        let mut all = self.elements.clone();
        all.extend(other.elements.iter().cloned());
        Subset::new(all)
    }

    /// Least element in the pointwise order, if the set has one.
    pub fn minimum(&self) -> Option<&ChainEndo> {
        self.elements
            .iter()
            .find(|x| self.elements.iter().all(|y| x.le_pointwise(y)))
    }

    pub fn maximum(&self) -> Option<&ChainEndo> {
        self.elements
            .iter()
            .find(|x| self.elements.iter().all(|y| y.le_pointwise(x)))
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = &'a ChainEndo;
    type IntoIter = std::slice::Iter<'a, ChainEndo>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Mul,
}

impl Op {
    fn apply_into(self, x: &[u8], y: &[u8], out: &mut [u8]) {
        match self {
            Op::Add => add_into(x, y, out),
            Op::Mul => mul_into(x, y, out),
        }
    }

    pub fn apply(self, x: &ChainEndo, y: &ChainEndo) -> ChainEndo {
        match self {
            Op::Add => x + y,
            Op::Mul => x * y,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Add => "+",
            Op::Mul => "·",
        }
    }
}

fn compact<S: Serializer>(alpha: &ChainEndo, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(alpha)
}

/// A pair whose sum or product leaves the set under test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub op: Op,
    #[serde(serialize_with = "compact")]
    pub left: ChainEndo,
    #[serde(serialize_with = "compact")]
    pub right: ChainEndo,
    #[serde(serialize_with = "compact")]
    pub result: ChainEndo,
}

impl Witness {
    /// Recomputes the operation from scratch.
    pub fn recheck(&self) -> bool {
        self.op.apply(&self.left, &self.right) == self.result
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) {} ({}) = {}",
            self.left,
            self.op.symbol(),
            self.right,
            self.result
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_witness(witness: Option<Witness>) -> Self {
        Self {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// First `(x, y)` in `lefts × rights`, scanned lexicographically, for which some
/// op in `ops` leaves `target`.
fn first_escape(
    lefts: &[ChainEndo],
    rights: &[ChainEndo],
    target: &Subset,
    ops: &[Op],
    exec: Exec,
) -> Option<Witness> {
    let n = target.n();
    exec.find_map_first(0..lefts.len(), |i| {
        let x = &lefts[i];
        let mut buf = vec![0u8; n];
        for y in rights {
            for &op in ops {
                op.apply_into(x.values(), y.values(), &mut buf);
                if target.position_of(&buf).is_none() {
                    return Some(Witness {
                        op,
                        left: x.clone(),
                        right: y.clone(),
                        result: ChainEndo::from_raw(buf),
                    });
                }
            }
        }
        None
    })
}

/// Closure under the given operations.
pub fn is_closed_under(s: &Subset, ops: &[Op]) -> Verdict {
    is_closed_under_with(s, ops, Exec::default())
}

pub fn is_closed_under_with(s: &Subset, ops: &[Op], exec: Exec) -> Verdict {
    Verdict::from_witness(first_escape(&s.elements, &s.elements, s, ops, exec))
}

/// A subset inherits the semiring laws, so it is a subsemiring iff it is
/// closed under `+` and `·`.
pub fn is_subsemiring(s: &Subset) -> Verdict {
    is_subsemiring_with(s, Exec::default())
}

pub fn is_subsemiring_with(s: &Subset, exec: Exec) -> Verdict {
    is_closed_under_with(s, &[Op::Add, Op::Mul], exec)
}

/// Checks `I + I ⊆ I`, `R·I ⊆ I` and `I·R ⊆ I`, in that order.
pub fn is_ideal(ideal: &Subset, ring: &Subset) -> Result<Verdict> {
    if !ideal.is_subset_of(ring) {
        return Err(Error::NotSubset);
    }
    let exec = Exec::default();
    let witness = first_escape(&ideal.elements, &ideal.elements, ideal, &[Op::Add], exec)
        .or_else(|| first_escape(&ring.elements, &ideal.elements, ideal, &[Op::Mul], exec))
        .or_else(|| first_escape(&ideal.elements, &ring.elements, ideal, &[Op::Mul], exec));
    Ok(Verdict::from_witness(witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Upper,
    Lower,
    /// A one-element trivial semiring, whose product is both extremes.
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialityVerdict {
    pub is_trivial: bool,
    pub iota: Option<ChainEndo>,
    /// `iota` is the pointwise maximum of the set.
    pub upper: bool,
    /// `iota` is the pointwise minimum of the set.
    pub lower: bool,
}

impl TrivialityVerdict {
    pub fn flavor(&self) -> Option<Flavor> {
        self.is_trivial.then_some(match (self.upper, self.lower) {
            (true, true) => Flavor::Both,
            (true, false) => Flavor::Upper,
            (false, true) => Flavor::Lower,
            (false, false) => Flavor::Neither,
        })
    }
}

/// Decides whether every product in `s` is one fixed element `ι`.
pub fn triviality(s: &Subset) -> Result<TrivialityVerdict> {
    let closed = is_closed_under(s, &[Op::Mul]);
    if let Some(w) = closed.witness {
        return Err(Error::NotClosed(w.to_string()));
    }
    let first = &s.elements[0] * &s.elements[0];
    let is_trivial = s
        .elements
        .iter()
        .all(|x| s.elements.iter().all(|y| x * y == first));
    if !is_trivial {
        return Ok(TrivialityVerdict {
            is_trivial: false,
            iota: None,
            upper: false,
            lower: false,
        });
    }
    let upper = s.elements.iter().all(|y| y.le_pointwise(&first));
    let lower = s.elements.iter().all(|y| first.le_pointwise(y));
    Ok(TrivialityVerdict {
        is_trivial,
        iota: Some(first),
        upper,
        lower,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Identities {
    pub left: Vec<ChainEndo>,
    pub right: Vec<ChainEndo>,
    pub two_sided: Vec<ChainEndo>,
}

pub fn identities(s: &Subset) -> Identities {
    let exec = Exec::default();
    let left_flags = exec.map(&s.elements, |e| s.elements.iter().all(|x| &(e * x) == x));
    let right_flags = exec.map(&s.elements, |e| s.elements.iter().all(|x| &(x * e) == x));
    let pick = |flags: &[bool]| -> Vec<ChainEndo> {
        s.elements
            .iter()
            .zip(flags)
            .filter(|(_, &f)| f)
            .map(|(e, _)| e.clone())
            .collect()
    };
    let left = pick(&left_flags);
    let right = pick(&right_flags);
    let two_sided = left.iter().filter(|e| right.contains(e)).cloned().collect();
    Identities {
        left,
        right,
        two_sided,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `α ~ β` when `γ·α = γ·β` for every `γ`.
    Left,
    /// `α ~ β` when `α·γ = β·γ` for every `γ`.
    Right,
}

/// All pairs `α < β` (lexicographic) that are similar on the given side.
pub fn similar_pairs(s: &Subset, side: Side) -> Vec<(ChainEndo, ChainEndo)> {
    let signatures = Exec::default().map(&s.elements, |alpha| {
        let mut sig = Vec::with_capacity(s.len() * s.n());
        for gamma in &s.elements {
            let p = match side {
                Side::Left => gamma * alpha,
                Side::Right => alpha * gamma,
            };
            sig.extend_from_slice(p.values());
        }
        sig
    });
    let mut groups: HashMap<&[u8], Vec<usize>> = HashMap::new();
    for (i, sig) in signatures.iter().enumerate() {
        groups.entry(sig.as_slice()).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for members in groups.values() {
        for (p, &i) in members.iter().enumerate() {
            for &j in &members[p + 1..] {
                pairs.push((s.elements[i].clone(), s.elements[j].clone()));
            }
        }
    }
    pairs.sort();
    pairs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub holds: bool,
    /// The isomorphism, as `(source, image)` pairs in source order.
    pub mapping: Option<Vec<(ChainEndo, ChainEndo)>>,
    /// Why no isomorphism exists, when one was ruled out cheaply.
    pub witness: Option<String>,
}

struct Tables {
    m: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    invariant: Vec<(usize, usize, bool, usize)>,
}

impl Tables {
    fn build(s: &Subset) -> Result<Self> {
        let verdict = is_subsemiring(s);
        if let Some(w) = verdict.witness {
            return Err(Error::NotClosed(w.to_string()));
        }
        let m = s.len();
        let mut add = vec![0; m * m];
        let mut mul = vec![0; m * m];
        let mut buf = vec![0u8; s.n()];
        for i in 0..m {
            for j in 0..m {
                add_into(s.elements[i].values(), s.elements[j].values(), &mut buf);
                add[i * m + j] = s.position_of(&buf).expect("closed under +");
                mul_into(s.elements[i].values(), s.elements[j].values(), &mut buf);
                mul[i * m + j] = s.position_of(&buf).expect("closed under ·");
            }
        }
        // x ≤ y in the additive order iff x + y = y.
        let down: Vec<usize> = (0..m)
            .map(|i| (0..m).filter(|&j| add[j * m + i] == i).count())
            .collect();
        let up: Vec<usize> = (0..m)
            .map(|i| (0..m).filter(|&j| add[i * m + j] == j).count())
            .collect();
        let invariant = (0..m)
            .map(|i| {
                let sq = mul[i * m + i];
                (down[i], up[i], sq == i, down[sq])
            })
            .collect();
        Ok(Self {
            m,
            add,
            mul,
            invariant,
        })
    }
}

/// Searches for a semiring isomorphism `S → T`.
///
/// Candidates are restricted to bijections that preserve the additive order
/// profile of each element (size of its down-set and up-set, idempotency, and
/// the down-set size of its square); partial maps are pruned as soon as an
/// assigned sum or product disagrees. When the additive order of `S` is a
/// chain the profile already pins down the unique order isomorphism.
pub fn iso_check(s: &Subset, t: &Subset) -> Result<IsoVerdict> {
    let ts = Tables::build(s)?;
    let tt = Tables::build(t)?;
    if ts.m != tt.m {
        return Ok(IsoVerdict {
            holds: false,
            mapping: None,
            witness: Some(format!("orders differ: {} vs {}", ts.m, tt.m)),
        });
    }
    let mut a = ts.invariant.clone();
    let mut b = tt.invariant.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(IsoVerdict {
            holds: false,
            mapping: None,
            witness: Some("additive order profiles differ".into()),
        });
    }
    let mut order: Vec<usize> = (0..ts.m).collect();
    order.sort_by_key(|&i| (ts.invariant[i], i));
    let mut forward = vec![usize::MAX; ts.m];
    let mut backward = vec![usize::MAX; ts.m];
    let found = assign(&ts, &tt, &order, 0, &mut forward, &mut backward);
    Ok(if found {
        IsoVerdict {
            holds: true,
            mapping: Some(
                (0..ts.m)
                    .map(|i| (s.elements[i].clone(), t.elements[forward[i]].clone()))
                    .collect(),
            ),
            witness: None,
        }
    } else {
        IsoVerdict {
            holds: false,
            mapping: None,
            witness: Some("no candidate bijection preserves both operations".into()),
        }
    })
}

fn consistent(ts: &Tables, tt: &Tables, i: usize, fwd: &[usize], bwd: &[usize]) -> bool {
    let m = ts.m;
    for j in 0..m {
        if fwd[j] == usize::MAX {
            continue;
        }
        for (x, y) in [(i, j), (j, i)] {
            let (fx, fy) = (fwd[x], fwd[y]);
            for (src, dst) in [(&ts.add, &tt.add), (&ts.mul, &tt.mul)] {
                let r = src[x * m + y];
                let fr = dst[fx * m + fy];
                if fwd[r] != usize::MAX && fwd[r] != fr {
                    return false;
                }
                if bwd[fr] != usize::MAX && bwd[fr] != r {
                    return false;
                }
            }
        }
    }
    true
}

fn assign(
    ts: &Tables,
    tt: &Tables,
    order: &[usize],
    depth: usize,
    fwd: &mut [usize],
    bwd: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    for c in 0..tt.m {
        if bwd[c] != usize::MAX || tt.invariant[c] != ts.invariant[i] {
            continue;
        }
        fwd[i] = c;
        bwd[c] = i;
        if consistent(ts, tt, i, fwd, bwd) && assign(ts, tt, order, depth + 1, fwd, bwd) {
            return true;
        }
        fwd[i] = usize::MAX;
        bwd[c] = usize::MAX;
    }
    false
}

/// Checks that an explicit bijection preserves `+` and `·`.
///
/// `pairs` lists `(source, image)`; the sources must form a closed set.
pub fn check_mapping(pairs: &[(ChainEndo, ChainEndo)]) -> Result<IsoVerdict> {
    let forward: HashMap<&ChainEndo, &ChainEndo> = pairs.iter().map(|(x, y)| (x, y)).collect();
    let mut images: Vec<&ChainEndo> = pairs.iter().map(|(_, y)| y).collect();
    images.sort();
    images.dedup();
    if forward.len() != pairs.len() || images.len() != pairs.len() {
        return Err(Error::InvalidSpec("mapping is not a bijection".into()));
    }
    for (x, fx) in pairs {
        for (y, fy) in pairs {
            for op in [Op::Add, Op::Mul] {
                let r = op.apply(x, y);
                let fr = forward.get(&r).ok_or_else(|| {
                    Error::NotClosed(format!("({x}) {} ({y}) = {r}", op.symbol()))
                })?;
                let expected = op.apply(fx, fy);
                if **fr != expected {
                    return Ok(IsoVerdict {
                        holds: false,
                        mapping: None,
                        witness: Some(format!(
                            "f(({x}) {s} ({y})) = {fr} but f({x}) {s} f({y}) = {expected}",
                            s = op.symbol()
                        )),
                    });
                }
            }
        }
    }
    Ok(IsoVerdict {
        holds: true,
        mapping: Some(pairs.to_vec()),
        witness: None,
    })
}

/// Position of an element in its power sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ElementClass {
    Idempotent,
    /// Some power equals the constant map at `vertex`; `exponent` is the least such power.
    NilpotentTo {
        vertex: usize,
        exponent: usize,
    },
    /// `α^exponent` is the non-constant idempotent `idempotent`.
    RootOfIdempotent {
        #[serde(serialize_with = "compact")]
        idempotent: ChainEndo,
        exponent: usize,
    },
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementClass::Idempotent => write!(f, "idempotent"),
            ElementClass::NilpotentTo { vertex, exponent } => {
                write!(f, "{vertex}-nilpotent (exponent {exponent})")
            }
            ElementClass::RootOfIdempotent {
                idempotent,
                exponent,
            } => write!(f, "root of {idempotent} (exponent {exponent})"),
        }
    }
}

/// Classifies `α` by its power trajectory. Constants are reported as idempotent.
pub fn classify_element(alpha: &ChainEndo) -> ElementClass {
    if alpha.is_idempotent() {
        return ElementClass::Idempotent;
    }
    let (e, exponent) = alpha.idempotent_power();
    match e.constant_value() {
        Some(vertex) => ElementClass::NilpotentTo { vertex, exponent },
        None => ElementClass::RootOfIdempotent {
            idempotent: e,
            exponent,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::parse_compact;

    fn set(n: usize, items: &[&str]) -> Subset {
        Subset::new(items.iter().map(|t| parse_compact(t, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn interior_of_tri4_is_not_closed() {
        let s = set(4, &["1_2 2 3", "1 2_2 3", "1 2 3_2"]);
        let v = is_subsemiring(&s);
        assert!(!v.holds);
        let w = v.witness.unwrap();
        // the first escaping pair in lexicographic order
        assert!(w.recheck());
        assert!(!s.contains(&w.result));
        let sq = parse_compact("1 2 3_2", 4).unwrap();
        assert_eq!(&sq * &sq, parse_compact("2 3_3", 4).unwrap());
    }

    #[test]
    fn singleton_idempotent_is_a_semiring() {
        assert!(is_subsemiring(&set(4, &["1_2 2 3"])).holds);
    }

    #[test]
    fn sequential_and_parallel_witnesses_agree() {
        let all = Subset::new(crate::chain::all_endos(4).unwrap()).unwrap();
        let s = all.difference(&set(4, &["0_4"])).unwrap();
        let a = is_subsemiring_with(&s, Exec::Sequential);
        let b = is_subsemiring_with(&s, Exec::Parallel);
        assert_eq!(a, b);
        assert!(!a.holds);
    }

    #[test]
    fn ideal_requires_subset() {
        let r = set(4, &["1_4", "2_4"]);
        let i = set(4, &["3_4"]);
        assert_eq!(is_ideal(&i, &r), Err(Error::NotSubset));
    }

    #[test]
    fn triviality_flavors() {
        // nil_a of STR(4){1,2}: 1̄ and 1_3 2
        let v = triviality(&set(4, &["1_4", "1_3 2"])).unwrap();
        assert!(v.is_trivial && v.lower && !v.upper);
        assert_eq!(v.flavor(), Some(Flavor::Lower));
        // the 2-nilpotents of STR(5){1,2} and of STR(5){2,3}
        let v = triviality(&set(5, &["1 2_4", "2_5", "2_4 3"])).unwrap();
        assert!(v.is_trivial);
        assert_eq!(v.iota, Some(parse_compact("2_5", 5).unwrap()));
        assert_eq!(v.flavor(), Some(Flavor::Neither));
        let idem = set(4, &["1_2 2_2"]);
        assert_eq!(triviality(&idem).unwrap().flavor(), Some(Flavor::Both));
        let not_trivial = set(4, &["1_2 2_2", "1_4", "2_4"]);
        assert!(!triviality(&not_trivial).unwrap().is_trivial);
        assert!(matches!(
            triviality(&set(4, &["1 2 3_2"])),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn identities_of_a_string() {
        let s = set(4, &["1_4", "1_3 2", "1_2 2_2", "1 2_3", "2_4"]);
        let ids = identities(&s);
        assert_eq!(ids.right, vec![parse_compact("1_2 2_2", 4).unwrap()]);
        assert!(ids.left.is_empty());
        assert!(ids.two_sided.is_empty());
    }

    #[test]
    fn similar_pairs_of_singleton_is_empty() {
        assert!(similar_pairs(&set(3, &["0 1 2"]), Side::Left).is_empty());
    }

    #[test]
    fn iso_reflexive() {
        let s = set(4, &["1_4", "1_3 2", "1_2 2_2", "1 2_3", "2_4"]);
        let v = iso_check(&s, &s).unwrap();
        assert!(v.holds);
        assert!(v.mapping.unwrap().iter().all(|(x, y)| x == y));
    }

    #[test]
    fn iso_rejects_unclosed() {
        let s = set(4, &["1 2 3_2"]);
        assert!(matches!(iso_check(&s, &s), Err(Error::NotClosed(_))));
    }

    #[test]
    fn classify_examples() {
        let a = parse_compact("1_4", 4).unwrap();
        assert_eq!(classify_element(&a), ElementClass::Idempotent);
        let x = parse_compact("1_3 2", 4).unwrap();
        assert_eq!(
            classify_element(&x),
            ElementClass::NilpotentTo {
                vertex: 1,
                exponent: 2
            }
        );
        let y = parse_compact("1 2_2 3", 4).unwrap();
        assert_eq!(
            classify_element(&y),
            ElementClass::RootOfIdempotent {
                idempotent: parse_compact("2_3 3", 4).unwrap(),
                exponent: 2
            }
        );
    }
}
