//! Monotone self-maps of the chain `C_n = {0 < 1 < … < n-1}`.
//!
//! A join-preserving map of a chain is the same thing as a monotone map, so a
//! [`ChainEndo`] is stored as its value tuple `⟨α(0), …, α(n-1)⟩`. Addition is
//! the pointwise maximum and multiplication is composition read left to right:
//! `(α·β)(i) = β(α(i))`.

use std::fmt;
use std::ops::{Add, Mul};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported chain. Values are stored as `u8`.
pub const MAX_CHAIN: usize = 256;

/// A monotone endomorphism of the chain `C_n`.
///
/// Invariants (enforced by every constructor): `1 ≤ n ≤ MAX_CHAIN`, every value
/// lies in `0..n`, and values never decrease.
///
/// `Ord` is lexicographic on the value tuple. The additive (pointwise) order is
/// [`ChainEndo::le_pointwise`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ChainEndo {
    values: Vec<u8>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CHAIN {
        return Err(Error::UnsupportedChain(n));
    }
    Ok(())
}

impl ChainEndo {
    /// Validates `values` as a monotone self-map of `C_n`.
    pub fn new(n: usize, values: &[usize]) -> Result<Self> {
        check_n(n)?;
        if values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: values.len(),
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { value, n });
        }
        if let Some(index) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone { index: index + 1 });
        }
        Ok(Self {
            values: values.iter().map(|&v| v as u8).collect(),
        })
    }

    /// Wraps raw values that are already known to be valid.
    pub(crate) fn from_raw(values: Vec<u8>) -> Self {
        debug_assert!(!values.is_empty() && values.len() <= MAX_CHAIN);
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| (v as usize) < values.len()));
        Self { values }
    }

    /// The constant map `ā`.
    pub fn constant(n: usize, a: usize) -> Result<Self> {
        check_n(n)?;
        if a >= n {
            return Err(Error::OutOfRange { value: a, n });
        }
        Ok(Self::from_raw(vec![a as u8; n]))
    }

    /// The identity map `i`.
    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self::from_raw((0..n).map(|i| i as u8).collect()))
    }

    /// Builds `x_{k_0} y_{k_1} …` from `(symbol, multiplicity)` runs. Runs of
    /// multiplicity zero are skipped.
    pub fn from_runs(n: usize, runs: &[(usize, usize)]) -> Result<Self> {
        let mut values = Vec::with_capacity(n);
        for &(symbol, count) in runs {
            values.extend(std::iter::repeat_n(symbol, count));
        }
        if values.len() != n {
            return Err(Error::SumMismatch {
                expected: n,
                found: values.len(),
            });
        }
        Self::new(n, &values)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize) -> usize {
        self.values[i] as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v as usize).collect()
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Pointwise maximum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self.add_unchecked(other))
    }

    /// Composition "first `self`, then `other`": `result[i] = other[self[i]]`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = vec![0u8; self.n()];
        add_into(&self.values, &other.values, &mut out);
        Self::from_raw(out)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = vec![0u8; self.n()];
        mul_into(&self.values, &other.values, &mut out);
        Self::from_raw(out)
    }

    /// `t`-fold product `α·α·…·α`.
    pub fn power(&self, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.mul_unchecked(self);
        }
        Ok(acc)
    }

    /// The unique idempotent among `α, α², α³, …`.
    ///
    /// A monotone map of a finite chain has no cycles longer than one, so the
    /// sequence is constant from `α^n` on.
    pub fn eventual_idempotent(&self) -> Self {
        let mut p = self.clone();
        for _ in 0..self.n() {
            let sq = p.mul_unchecked(&p);
            if sq == p {
                return p;
            }
            p = p.mul_unchecked(self);
        }
        assert!(p.is_idempotent(), "powers of {p} did not stabilize");
        p
    }

    /// Returns `(idempotent, exponent)` where `exponent` is the least `t` with
    /// `α^t` idempotent.
    pub fn idempotent_power(&self) -> (Self, usize) {
        let mut p = self.clone();
        let mut t = 1;
        while !p.is_idempotent() {
            p = p.mul_unchecked(self);
            t += 1;
            assert!(t <= self.n() + 1, "powers of {self} did not stabilize");
        }
        (p, t)
    }

    /// True when some power of `α` is the constant map `ā`.
    pub fn is_nilpotent_to(&self, a: usize) -> Result<bool> {
        if a >= self.n() {
            return Err(Error::OutOfRange {
                value: a,
                n: self.n(),
            });
        }
        Ok(self.eventual_idempotent().is_constant_at(a))
    }

    pub fn is_constant_at(&self, a: usize) -> bool {
        self.values.iter().all(|&v| v as usize == a)
    }

    /// The value of a constant map.
    pub fn constant_value(&self) -> Option<usize> {
        let first = self.values[0];
        self.values
            .iter()
            .all(|&v| v == first)
            .then_some(first as usize)
    }

    /// `α·α = α`; equivalently every image point is fixed.
    pub fn is_idempotent(&self) -> bool {
        self.values.iter().all(|&v| self.values[v as usize] == v)
    }

    /// Sorted distinct values.
    pub fn image(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &v in &self.values {
            if out.last() != Some(&(v as usize)) {
                out.push(v as usize);
            }
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.get(i) == i).collect()
    }

    /// How many points map to `x`.
    pub fn multiplicity(&self, x: usize) -> usize {
        self.values.iter().filter(|&&v| v as usize == x).count()
    }

    /// Pointwise order, i.e. `α ≤ β` iff `α + β = β`.
    pub fn le_pointwise(&self, other: &Self) -> bool {
        self.n() == other.n() && self.values.iter().zip(&other.values).all(|(x, y)| x <= y)
    }

    pub fn compact(&self) -> CompactForm {
        CompactForm::from(self)
    }
}

#[inline]
pub(crate) fn add_into(x: &[u8], y: &[u8], out: &mut [u8]) {
    for ((o, a), b) in out.iter_mut().zip(x).zip(y) {
        *o = (*a).max(*b);
    }
}

#[inline]
pub(crate) fn mul_into(x: &[u8], y: &[u8], out: &mut [u8]) {
    for (o, a) in out.iter_mut().zip(x) {
        *o = y[*a as usize];
    }
}

/// Panics on mismatched chain sizes; use [`ChainEndo::add`] for a checked sum.
impl Add for &ChainEndo {
    type Output = ChainEndo;

    fn add(self, rhs: &ChainEndo) -> ChainEndo {
        assert_eq!(self.n(), rhs.n(), "chain sizes differ");
        self.add_unchecked(rhs)
    }
}

/// Panics on mismatched chain sizes; use [`ChainEndo::mul`] for a checked product.
impl Mul for &ChainEndo {
    type Output = ChainEndo;

    fn mul(self, rhs: &ChainEndo) -> ChainEndo {
        assert_eq!(self.n(), rhs.n(), "chain sizes differ");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Display for ChainEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.compact(), f)
    }
}

impl fmt::Debug for ChainEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "⟩")
    }
}

/// Run-length form `a_k b_ℓ …` of an endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactForm {
    /// `(symbol, multiplicity)`; symbols strictly increase, multiplicities are ≥ 1.
    pub runs: Vec<(usize, usize)>,
}

impl CompactForm {
    pub fn n(&self) -> usize {
        self.runs.iter().map(|&(_, m)| m).sum()
    }

    pub fn to_endo(&self) -> Result<ChainEndo> {
        ChainEndo::from_runs(self.n(), &self.runs)
    }
}

impl From<&ChainEndo> for CompactForm {
    fn from(alpha: &ChainEndo) -> Self {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &v in alpha.values() {
            match runs.last_mut() {
                Some((s, m)) if *s == v as usize => *m += 1,
                _ => runs.push((v as usize, 1)),
            }
        }
        Self { runs }
    }
}

impl fmt::Display for CompactForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(symbol, count)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if count == 1 {
                write!(f, "{symbol}")?;
            } else {
                write!(f, "{symbol}_{count}")?;
            }
        }
        Ok(())
    }
}

fn parse_int(token: &str, text: &str) -> Result<usize> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad integer `{token}` in `{text}`")));
    }
    token
        .parse()
        .map_err(|_| Error::Parse(format!("integer `{token}` too large in `{text}`")))
}

/// Parses runs separated by single spaces: `run := INT ("_" INT)?`.
pub fn parse_runs(text: &str) -> Result<CompactForm> {
    if text.is_empty() {
        return Err(Error::Parse("empty endomorphism".into()));
    }
    let mut runs = Vec::new();
    for token in text.split(' ') {
        let (symbol, count) = match token.split_once('_') {
            Some((s, m)) => (parse_int(s, text)?, parse_int(m, text)?),
            None => (parse_int(token, text)?, 1),
        };
        if count == 0 {
            return Err(Error::Parse(format!("zero multiplicity in `{text}`")));
        }
        runs.push((symbol, count));
    }
    Ok(CompactForm { runs })
}

/// Parses compact notation against a known chain size.
pub fn parse_compact(text: &str, n: usize) -> Result<ChainEndo> {
    let form = parse_runs(text)?;
    check_n(n)?;
    let found = form.n();
    if found != n {
        return Err(Error::SumMismatch { expected: n, found });
    }
    if let Some(&(value, _)) = form.runs.iter().find(|&&(s, _)| s >= n) {
        return Err(Error::OutOfRange { value, n });
    }
    if form.runs.windows(2).any(|w| w[0].0 >= w[1].0) {
        let index = form
            .runs
            .windows(2)
            .position(|w| w[0].0 >= w[1].0)
            .unwrap_or(0);
        return Err(Error::NotMonotone { index: index + 1 });
    }
    ChainEndo::from_runs(n, &form.runs)
}

/// Parses compact notation, taking `n` to be the sum of the multiplicities.
pub fn parse_compact_any(text: &str) -> Result<ChainEndo> {
    let n = parse_runs(text)?.n();
    parse_compact(text, n)
}

pub fn format_compact(alpha: &ChainEndo) -> String {
    alpha.compact().to_string()
}

/// All endomorphisms of `C_n`, in lexicographic order.
pub fn all_endos(n: usize) -> Result<Vec<ChainEndo>> {
    check_n(n)?;
    let alphabet: Vec<u8> = (0..n).map(|v| v as u8).collect();
    Ok(monotone_tuples(n, &alphabet))
}

/// Monotone `n`-tuples over a sorted alphabet, lexicographically ordered.
pub(crate) fn monotone_tuples(n: usize, alphabet: &[u8]) -> Vec<ChainEndo> {
    fn go(pos: usize, from: usize, alphabet: &[u8], cur: &mut Vec<u8>, out: &mut Vec<ChainEndo>) {
        if pos == cur.len() {
            out.push(ChainEndo::from_raw(cur.clone()));
            return;
        }
        for j in from..alphabet.len() {
            cur[pos] = alphabet[j];
            go(pos + 1, j, alphabet, cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    go(0, 0, alphabet, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[usize]) -> ChainEndo {
        ChainEndo::new(v.len(), v).unwrap()
    }

    #[test]
    fn make_endo_examples() {
        assert_eq!(e(&[1, 2, 3, 3]).to_string(), "1 2 3_2");
        assert_eq!(e(&[0, 1, 2]), ChainEndo::identity(3).unwrap());
        assert_eq!(
            ChainEndo::new(4, &[2, 1, 1, 1]),
            Err(Error::NotMonotone { index: 1 })
        );
        assert_eq!(
            ChainEndo::new(3, &[0, 1, 3]),
            Err(Error::OutOfRange { value: 3, n: 3 })
        );
        assert_eq!(
            ChainEndo::new(3, &[0, 1]),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(ChainEndo::new(0, &[]), Err(Error::UnsupportedChain(0)));
    }

    #[test]
    fn add_examples() {
        let s = e(&[1, 1, 2, 2]).add(&e(&[1, 1, 1, 3])).unwrap();
        assert_eq!(s, e(&[1, 1, 2, 3]));
        let s = e(&[1, 2, 2, 2]).add(&e(&[1, 1, 3, 3])).unwrap();
        assert_eq!(s, e(&[1, 2, 3, 3]));
        let x = e(&[0, 2, 2]);
        assert_eq!(&x + &x, x);
        assert!(matches!(
            x.add(&e(&[0, 1])),
            Err(Error::SizeMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn mul_examples() {
        let x = e(&[1, 2, 3, 3]);
        assert_eq!(&x * &x, e(&[2, 3, 3, 3]));
        let id = ChainEndo::identity(4).unwrap();
        assert_eq!(&x * &id, x);
        assert_eq!(&e(&[1, 1, 2, 2]) * &e(&[0, 0, 3, 3]), e(&[0, 0, 3, 3]));
        assert!(x.mul(&ChainEndo::identity(3).unwrap()).is_err());
    }

    #[test]
    fn power_examples() {
        let id = ChainEndo::identity(4).unwrap();
        assert_eq!(id.power(5).unwrap(), id);
        assert_eq!(
            e(&[1, 1, 1, 2, 2]).power(2).unwrap(),
            ChainEndo::constant(5, 1).unwrap()
        );
        assert_eq!(e(&[1, 2, 3, 3]).power(3).unwrap(), e(&[3, 3, 3, 3]));
        assert_eq!(id.power(0), Err(Error::ZeroExponent));
    }

    #[test]
    fn eventual_idempotent_examples() {
        let id = ChainEndo::identity(4).unwrap();
        assert_eq!(id.eventual_idempotent(), id);
        assert_eq!(e(&[1, 2, 3, 3]).eventual_idempotent(), e(&[3, 3, 3, 3]));
        assert_eq!(e(&[1, 1, 2, 3]).eventual_idempotent(), e(&[1, 1, 2, 3]));
    }

    #[test]
    fn nilpotency_examples() {
        let c = ChainEndo::constant(4, 2).unwrap();
        assert!(c.is_nilpotent_to(2).unwrap());
        assert!(e(&[1, 1, 1, 2, 2]).is_nilpotent_to(1).unwrap());
        assert!(!e(&[1, 1, 2, 3]).is_nilpotent_to(1).unwrap());
        assert_eq!(
            c.is_nilpotent_to(4),
            Err(Error::OutOfRange { value: 4, n: 4 })
        );
    }

    #[test]
    fn compact_examples() {
        assert_eq!(parse_compact("1_2 2 3", 4).unwrap(), e(&[1, 1, 2, 3]));
        assert_eq!(
            parse_compact("3_4", 4).unwrap(),
            ChainEndo::constant(4, 3).unwrap()
        );
        assert_eq!(format_compact(&e(&[0, 0, 3, 3])), "0_2 3_2");
        assert_eq!(parse_compact("1_1 2_3", 4).unwrap().to_string(), "1 2_3");
        assert_eq!(
            parse_compact("1_2 2", 4),
            Err(Error::SumMismatch {
                expected: 4,
                found: 3
            })
        );
        assert!(matches!(
            parse_compact("2 1_3", 4),
            Err(Error::NotMonotone { .. })
        ));
        assert!(matches!(
            parse_compact("1_2 1_2", 4),
            Err(Error::NotMonotone { .. })
        ));
        assert!(matches!(parse_compact("1_2  2_2", 4), Err(Error::Parse(_))));
        assert!(matches!(parse_compact("1_0 2_4", 4), Err(Error::Parse(_))));
        assert!(matches!(parse_compact("a_4", 4), Err(Error::Parse(_))));
        assert!(matches!(
            parse_compact("4_4", 4),
            Err(Error::OutOfRange { .. })
        ));
        assert_eq!(
            parse_compact_any("0 1 2").unwrap(),
            ChainEndo::identity(3).unwrap()
        );
    }

    #[test]
    fn image_and_fixed_points() {
        let x = e(&[1, 1, 2, 3]);
        assert_eq!(x.image(), vec![1, 2, 3]);
        assert_eq!(x.fixed_points(), vec![1, 2, 3]);
        assert!(x.is_idempotent());
        assert!(!e(&[1, 2, 3, 3]).is_idempotent());
        assert_eq!(x.multiplicity(1), 2);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = all_endos(3).unwrap();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], ChainEndo::constant(3, 0).unwrap());
        assert_eq!(all[9], ChainEndo::constant(3, 2).unwrap());
    }
}
