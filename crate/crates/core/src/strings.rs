//! Strings: simplices on two vertices `a < b`.
//!
//! Every element is `a_ℓ b_{n-ℓ}` for some `ℓ ∈ 0..=n`, so elements are
//! indexed by `ℓ` and the additive order is `ℓ` reversed.

use std::fmt;

use serde::Serialize;

use crate::analysis::{
    check_mapping, is_closed_under, is_subsemiring, IsoVerdict, Op, Subset, Verdict,
};
use crate::chain::{ChainEndo, MAX_CHAIN};
use crate::error::{Error, Result};
use crate::simplex::SimplexSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StringSpec {
    n: usize,
    a: usize,
    b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StringPart {
    NilA,
    #[serde(rename = "id")]
    Idem,
    NilB,
}

impl StringPart {
    pub fn label(self) -> &'static str {
        match self {
            StringPart::NilA => "nil_a",
            StringPart::Idem => "id",
            StringPart::NilB => "nil_b",
        }
    }
}

/// The element `a_ℓ b_{n-ℓ}` of a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StringElem {
    pub spec: StringSpec,
    pub l: usize,
}

impl StringElem {
    pub fn to_endo(self) -> ChainEndo {
        let StringSpec { n, a, b } = self.spec;
        let mut values = vec![a as u8; n];
        for v in &mut values[self.l..] {
            *v = b as u8;
        }
        ChainEndo::from_raw(values)
    }
}

impl StringSpec {
    pub fn new(n: usize, a: usize, b: usize) -> Result<Self> {
        if !(2..=MAX_CHAIN).contains(&n) {
            return Err(Error::UnsupportedChain(n));
        }
        if !(a < b && b < n) {
            return Err(Error::InvalidSpec(format!(
                "string needs 0 <= a < b < n, got a={a} b={b} n={n}"
            )));
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn simplex(&self) -> SimplexSpec {
        SimplexSpec::new(self.n, &[self.a, self.b]).expect("string is a valid simplex")
    }

    pub fn elem(&self, l: usize) -> Result<StringElem> {
        if l > self.n {
            return Err(Error::Range(format!("ℓ = {l} exceeds n = {}", self.n)));
        }
        Ok(StringElem { spec: *self, l })
    }

    /// The index `ℓ` of `α`, if `α` lies on this string.
    pub fn index_of(&self, alpha: &ChainEndo) -> Option<usize> {
        if alpha.n() != self.n {
            return None;
        }
        let l = alpha.multiplicity(self.a);
        (l + alpha.multiplicity(self.b) == self.n).then_some(l)
    }

    /// Elements in lexicographic (that is, additive) order: `ℓ = n, …, 0`.
    pub fn elements(&self) -> Vec<ChainEndo> {
        (0..=self.n)
            .rev()
            .map(|l| StringElem { spec: *self, l }.to_endo())
            .collect()
    }

    pub fn subset(&self) -> Subset {
        Subset::new(self.elements()).expect("non-empty")
    }

    pub fn part_of(&self, l: usize) -> StringPart {
        if l > self.b {
            StringPart::NilA
        } else if l > self.a {
            StringPart::Idem
        } else {
            StringPart::NilB
        }
    }

    fn select(&self, keep: impl Fn(usize) -> bool) -> Vec<ChainEndo> {
        (0..=self.n)
            .rev()
            .filter(|&l| keep(l))
            .map(|l| StringElem { spec: *self, l }.to_endo())
            .collect()
    }

    /// `A_r = {a_ℓ b_{n-ℓ} : ℓ ≥ r}`, for `1 ≤ r ≤ n`.
    pub fn family_a(&self, r: usize) -> Result<FamilyVerdict> {
        if r == 0 || r > self.n {
            return Err(Error::Range(format!(
                "A_r needs 1 <= r <= {}, got {r}",
                self.n
            )));
        }
        Ok(FamilyVerdict::of(self.select(|l| l >= r)))
    }

    /// `B_s = {a_ℓ b_{n-ℓ} : ℓ ≤ s}`, for `0 ≤ s ≤ n-1`.
    pub fn family_b(&self, s: usize) -> Result<FamilyVerdict> {
        if s >= self.n {
            return Err(Error::Range(format!(
                "B_s needs 0 <= s <= {}, got {s}",
                self.n - 1
            )));
        }
        Ok(FamilyVerdict::of(self.select(|l| l <= s)))
    }
}

impl fmt::Display for StringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "str n={} a={} b={}", self.n, self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringPartition {
    pub nil_a: Vec<ChainEndo>,
    #[serde(rename = "id")]
    pub idem: Vec<ChainEndo>,
    pub nil_b: Vec<ChainEndo>,
}

pub fn partition_string(spec: &StringSpec) -> StringPartition {
    StringPartition {
        nil_a: spec.select(|l| spec.part_of(l) == StringPart::NilA),
        idem: spec.select(|l| spec.part_of(l) == StringPart::Idem),
        nil_b: spec.select(|l| spec.part_of(l) == StringPart::NilB),
    }
}

/// Product of two string elements over the same `n` by index arithmetic:
/// `a_k b_{n-k} · x_ℓ y_{n-ℓ}` is `x̄`, `x_k y_{n-k}` or `ȳ` according as
/// `ℓ > b`, `a < ℓ ≤ b` or `ℓ ≤ a`.
pub fn string_mul_cases(left: StringElem, right: StringElem) -> Result<ChainEndo> {
    if left.spec.n != right.spec.n {
        return Err(Error::SizeMismatch {
            left: left.spec.n,
            right: right.spec.n,
        });
    }
    let StringSpec { n, a, b } = left.spec;
    let target = right.spec;
    let l = right.l;
    let k = if l > b {
        n
    } else if l > a {
        left.l
    } else {
        0
    };
    Ok(StringElem { spec: target, l: k }.to_endo())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyVerdict {
    pub elements: Vec<ChainEndo>,
    pub semiring: Verdict,
}

impl FamilyVerdict {
    fn of(mut elements: Vec<ChainEndo>) -> Self {
        elements.sort();
        let semiring = is_subsemiring(&Subset::new(elements.clone()).expect("non-empty"));
        Self { elements, semiring }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionReport {
    pub elements: Vec<ChainEndo>,
    /// `STR{a,b} ∪ STR{b,c}` is a subsemiring.
    pub semiring: Verdict,
    /// `STR{a,b} ∪ STR{a,c} ∪ STR{b,c}` under addition; expected to fail.
    pub three_string_sum: Verdict,
}

/// The union of the consecutive strings `STR{a,b}` and `STR{b,c}`.
pub fn consecutive_union(n: usize, a: usize, b: usize, c: usize) -> Result<UnionReport> {
    if !(a < b && b < c && c < n) {
        return Err(Error::Range(format!(
            "need a < b < c < n, got a={a} b={b} c={c} n={n}"
        )));
    }
    let ab = StringSpec::new(n, a, b)?;
    let bc = StringSpec::new(n, b, c)?;
    let ac = StringSpec::new(n, a, c)?;
    let union = ab.subset().union(&bc.subset())?;
    let semiring = is_subsemiring(&union);
    let three = union.union(&ac.subset())?;
    let three_string_sum = is_closed_under(&three, &[Op::Add]);
    Ok(UnionReport {
        elements: union.into_elements(),
        semiring,
        three_string_sum,
    })
}

/// Decides whether two strings over the same `n` are isomorphic.
///
/// Both are chains of `n+1` elements under `+`. A semiring isomorphism
/// preserves `+` and hence the additive order, and the only order bijection
/// between two chains of equal length is the one matching positions. So the
/// map `a_ℓ b_{n-ℓ} ↦ x_ℓ y_{n-ℓ}` is the single candidate to test.
pub fn string_iso(s: &StringSpec, t: &StringSpec) -> Result<IsoVerdict> {
    if s.n != t.n {
        return Ok(IsoVerdict {
            holds: false,
            mapping: None,
            witness: Some(format!("orders differ: {} vs {}", s.n + 1, t.n + 1)),
        });
    }
    let pairs: Vec<(ChainEndo, ChainEndo)> = s.elements().into_iter().zip(t.elements()).collect();
    check_mapping(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{identities, triviality};
    use crate::chain::parse_compact;

    fn p(t: &str, n: usize) -> ChainEndo {
        parse_compact(t, n).unwrap()
    }

    #[test]
    fn partition_of_str4_12() {
        let s = StringSpec::new(4, 1, 2).unwrap();
        let part = partition_string(&s);
        assert_eq!(part.nil_a, vec![p("1_4", 4), p("1_3 2", 4)]);
        assert_eq!(part.idem, vec![p("1_2 2_2", 4)]);
        assert_eq!(part.nil_b, vec![p("1 2_3", 4), p("2_4", 4)]);
        let s = StringSpec::new(3, 0, 2).unwrap();
        assert_eq!(
            partition_string(&s).idem,
            vec![p("0_2 2", 3), p("0 2_2", 3)]
        );
    }

    #[test]
    fn mul_rule_examples() {
        let x = StringSpec::new(4, 1, 2).unwrap().elem(2).unwrap();
        let y = StringSpec::new(4, 0, 3).unwrap().elem(2).unwrap();
        assert_eq!(string_mul_cases(x, y).unwrap(), p("0_2 3_2", 4));
        assert_eq!(&x.to_endo() * &y.to_endo(), p("0_2 3_2", 4));
        let z = StringSpec::new(4, 1, 2).unwrap().elem(3).unwrap();
        assert_eq!(string_mul_cases(z, z).unwrap(), p("1_4", 4));
        let w = StringSpec::new(5, 1, 2).unwrap().elem(3).unwrap();
        assert!(string_mul_cases(z, w).is_err());
    }

    #[test]
    fn families() {
        let s = StringSpec::new(5, 1, 3).unwrap();
        let a_top = s.family_a(4).unwrap();
        assert!(a_top.semiring.holds);
        let t = triviality(&Subset::new(a_top.elements.clone()).unwrap()).unwrap();
        assert!(t.is_trivial && t.lower);
        assert!(!s.family_a(1).unwrap().semiring.holds);
        assert!(s.family_b(3).unwrap().semiring.holds);
        assert!(!s.family_b(4).unwrap().semiring.holds);
        assert!(s.family_a(0).is_err());
        assert!(s.family_b(5).is_err());
    }

    #[test]
    fn consecutive_union_small() {
        let r = consecutive_union(4, 1, 2, 3).unwrap();
        assert_eq!(r.elements.len(), 9);
        assert!(r.semiring.holds);
        assert!(!r.three_string_sum.holds);
        let w = r.three_string_sum.witness.unwrap();
        assert!(w.recheck());
        assert_eq!(&p("1 2_3", 4) + &p("1_2 3_2", 4), p("1 2 3_2", 4));
        assert!(consecutive_union(4, 2, 1, 3).is_err());
    }

    #[test]
    fn right_identities_are_the_idempotents() {
        let s = StringSpec::new(4, 1, 2).unwrap();
        let ids = identities(&s.subset());
        assert_eq!(ids.right, partition_string(&s).idem);
        assert!(ids.left.is_empty());
    }

    #[test]
    fn distinct_strings_not_isomorphic() {
        let s = StringSpec::new(4, 1, 2).unwrap();
        let t = StringSpec::new(4, 1, 3).unwrap();
        assert!(!string_iso(&s, &t).unwrap().holds);
        assert!(string_iso(&s, &s).unwrap().holds);
        let u = StringSpec::new(5, 1, 2).unwrap();
        assert!(!string_iso(&s, &u).unwrap().holds);
    }
}
