//! Simplices `σ(A)`: all endomorphisms whose image lies in a vertex set `A`.

use std::fmt;

use serde::Serialize;

use crate::analysis::{is_subsemiring, Subset, Witness};
use crate::chain::{monotone_tuples, ChainEndo, MAX_CHAIN};
use crate::counting::binom;
use crate::error::{Error, Result};

/// A chain size together with a sorted vertex set `a_0 < … < a_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimplexSpec {
    n: usize,
    vertices: Vec<usize>,
}

/// The `s`-th layer with respect to vertex `a_m`: elements in which `a_m`
/// occurs exactly `s` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LayerId {
    pub m: usize,
    pub s: usize,
}

impl SimplexSpec {
    pub fn new(n: usize, vertices: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_CHAIN {
            return Err(Error::UnsupportedChain(n));
        }
        if vertices.is_empty() || vertices.len() > n {
            return Err(Error::InvalidSpec(format!(
                "need between 1 and {n} vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { value: v, n });
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(format!(
                "vertices {vertices:?} are not strictly increasing"
            )));
        }
        Ok(Self {
            n,
            vertices: vertices.to_vec(),
        })
    }

    /// The whole semiring of `C_n`, i.e. the simplex on every point.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, &(0..n).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices.
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex(&self, m: usize) -> usize {
        self.vertices[m]
    }

    fn check_vertex_index(&self, m: usize) -> Result<()> {
        if m >= self.k() {
            return Err(Error::Range(format!(
                "vertex index {m} (simplex has {} vertices)",
                self.k()
            )));
        }
        Ok(())
    }

    /// `binom(n+k-1, k-1)`.
    pub fn order(&self) -> u128 {
        binom((self.n + self.k() - 1) as u128, (self.k() - 1) as u128)
            .expect("simplex order fits in u128")
    }

    /// Elements in lexicographic order.
    pub fn enumerate(&self) -> Vec<ChainEndo> {
        let alphabet: Vec<u8> = self.vertices.iter().map(|&v| v as u8).collect();
        monotone_tuples(self.n, &alphabet)
    }

    pub fn subset(&self) -> Subset {
        Subset::new(self.enumerate()).expect("a simplex is never empty")
    }

    pub fn contains(&self, alpha: &ChainEndo) -> bool {
        alpha.n() == self.n
            && alpha
                .values()
                .iter()
                .all(|&v| self.vertices.binary_search(&(v as usize)).is_ok())
    }

    /// Elements whose image is all of `A`.
    pub fn interior(&self) -> Vec<ChainEndo> {
        self.enumerate()
            .into_iter()
            .filter(|e| e.image() == self.vertices)
            .collect()
    }

    /// Elements lying in some proper face.
    pub fn boundary(&self) -> Vec<ChainEndo> {
        self.enumerate()
            .into_iter()
            .filter(|e| e.image() != self.vertices)
            .collect()
    }

    /// The face spanned by the vertices at the given indices.
    pub fn face(&self, indices: &[usize]) -> Result<SimplexSpec> {
        for &m in indices {
            self.check_vertex_index(m)?;
        }
        let vs: Vec<usize> = indices.iter().map(|&m| self.vertices[m]).collect();
        SimplexSpec::new(self.n, &vs)
    }

    pub fn layer(&self, id: LayerId) -> Result<Vec<ChainEndo>> {
        self.check_vertex_index(id.m)?;
        if id.s > self.n {
            return Err(Error::Range(format!(
                "layer {} exceeds n = {}",
                id.s, self.n
            )));
        }
        let a = self.vertices[id.m];
        Ok(self
            .enumerate()
            .into_iter()
            .filter(|e| e.multiplicity(a) == id.s)
            .collect())
    }

    /// `DN^t_m`: the vertex `a_m` with the layers `n-t, …, n-1` around it.
    pub fn discrete_neighborhood(&self, m: usize, t: usize) -> Result<Vec<ChainEndo>> {
        self.check_vertex_index(m)?;
        if t == 0 || t > self.n {
            return Err(Error::Range(format!("radius {t} outside 1..={}", self.n)));
        }
        let a = self.vertices[m];
        let floor = self.n - t;
        Ok(self
            .enumerate()
            .into_iter()
            .filter(|e| e.multiplicity(a) >= floor)
            .collect())
    }

    /// Neither `0` nor `n-1` is a vertex.
    pub fn is_internal(&self) -> bool {
        self.vertices[0] != 0 && *self.vertices.last().unwrap() != self.n - 1
    }

    /// Scans radii `1..=n` for subsemiring closure of `DN^t_m`.
    pub fn min_semiring_radius(&self, m: usize) -> Result<RadiusReport> {
        self.check_vertex_index(m)?;
        let mut least = None;
        let mut first_failure = None;
        for t in 1..=self.n {
            let dn = Subset::new(self.discrete_neighborhood(m, t)?)?;
            let v = is_subsemiring(&dn);
            if v.holds {
                least.get_or_insert(t);
            } else if first_failure.is_none() {
                first_failure = Some(RadiusFailure {
                    radius: t,
                    witness: v.witness.expect("failed verdict has a witness"),
                });
            }
        }
        Ok(RadiusReport {
            least: least.expect("the whole simplex is a semiring"),
            closed_through: first_failure.as_ref().map_or(self.n, |f| f.radius - 1),
            first_failure,
        })
    }

    /// Sufficient condition for `α` to be `a_0`-nilpotent: `α` sends
    /// `0..=a_1` to `a_0` and moves every later point strictly down.
    ///
    /// For a single vertex the simplex is `{ā_0}` and the answer is `true`.
    pub fn nilpotent_in_neighborhood(&self, alpha: &ChainEndo) -> bool {
        let a0 = self.vertices[0];
        let Some(&a1) = self.vertices.get(1) else {
            return alpha.is_constant_at(a0);
        };
        (0..self.n).all(|i| {
            let v = alpha.get(i);
            if i <= a1 {
                v == a0
            } else {
                v < i
            }
        })
    }
}

impl fmt::Display for SimplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} A=", self.n)?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusFailure {
    pub radius: usize,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusReport {
    /// Least radius whose neighborhood is a subsemiring.
    pub least: usize,
    /// Largest `T` such that every radius `1..=T` gives a subsemiring
    /// (`n` when none fails).
    pub closed_through: usize,
    pub first_failure: Option<RadiusFailure>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{all_endos, parse_compact};

    fn endos(n: usize, items: &[&str]) -> Vec<ChainEndo> {
        let mut v: Vec<_> = items.iter().map(|t| parse_compact(t, n).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn spec_validation() {
        assert!(SimplexSpec::new(4, &[1, 2, 3]).is_ok());
        assert!(SimplexSpec::new(4, &[2, 1]).is_err());
        assert!(SimplexSpec::new(4, &[]).is_err());
        assert!(SimplexSpec::new(4, &[4]).is_err());
        assert!(SimplexSpec::new(0, &[0]).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        let t = SimplexSpec::new(4, &[1, 2, 3]).unwrap();
        assert_eq!(t.enumerate().len(), 15);
        assert_eq!(t.order(), 15);
        assert_eq!(
            SimplexSpec::full(3).unwrap().enumerate(),
            all_endos(3).unwrap()
        );
        assert_eq!(
            SimplexSpec::new(5, &[2]).unwrap().enumerate(),
            vec![ChainEndo::constant(5, 2).unwrap()]
        );
    }

    #[test]
    fn interior_and_boundary() {
        let t = SimplexSpec::new(4, &[1, 2, 3]).unwrap();
        assert_eq!(t.interior(), endos(4, &["1_2 2 3", "1 2_2 3", "1 2 3_2"]));
        assert_eq!(t.boundary().len(), 12);
        assert_eq!(
            SimplexSpec::full(5).unwrap().interior(),
            vec![ChainEndo::identity(5).unwrap()]
        );
        assert!(SimplexSpec::new(5, &[2]).unwrap().boundary().is_empty());
    }

    #[test]
    fn layers() {
        let t = SimplexSpec::new(4, &[1, 2, 3]).unwrap();
        assert_eq!(
            t.layer(LayerId { m: 0, s: 2 }).unwrap(),
            endos(4, &["1_2 2_2", "1_2 2 3", "1_2 3_2"])
        );
        assert_eq!(t.layer(LayerId { m: 2, s: 4 }).unwrap(), endos(4, &["3_4"]));
        let s = SimplexSpec::new(5, &[1, 3]).unwrap();
        assert_eq!(s.layer(LayerId { m: 0, s: 0 }).unwrap(), endos(5, &["3_5"]));
        assert!(t.layer(LayerId { m: 3, s: 0 }).is_err());
    }

    #[test]
    fn neighborhoods() {
        let t = SimplexSpec::new(4, &[1, 2, 3]).unwrap();
        assert_eq!(
            t.discrete_neighborhood(2, 1).unwrap(),
            endos(4, &["3_4", "2 3_3", "1 3_3"])
        );
        assert_eq!(t.discrete_neighborhood(1, 4).unwrap(), t.enumerate());
        assert!(t.discrete_neighborhood(0, 0).is_err());
    }

    #[test]
    fn internal() {
        assert!(SimplexSpec::new(6, &[1, 3, 4]).unwrap().is_internal());
        assert!(!SimplexSpec::new(4, &[1, 2, 3]).unwrap().is_internal());
        assert!(!SimplexSpec::new(5, &[0, 2]).unwrap().is_internal());
    }

    #[test]
    fn radius() {
        let t = SimplexSpec::new(4, &[1, 2, 3]).unwrap();
        assert_eq!(t.min_semiring_radius(0).unwrap().least, 1);
        // frozen from an exhaustive closure scan
        let r = SimplexSpec::new(5, &[1, 2, 4])
            .unwrap()
            .min_semiring_radius(1)
            .unwrap();
        assert_eq!((r.least, r.closed_through), (1, 2));
        let f = r.first_failure.unwrap();
        assert_eq!(f.radius, 3);
        assert_eq!(f.witness.left, parse_compact("1_3 2_2", 5).unwrap());
        assert_eq!(f.witness.result, ChainEndo::constant(5, 1).unwrap());
        assert!(f.witness.recheck());
    }

    #[test]
    fn nilpotency_predicate() {
        let s = SimplexSpec::new(5, &[1, 2, 4]).unwrap();
        let a = parse_compact("1_4 2", 5).unwrap();
        assert!(s.nilpotent_in_neighborhood(&a));
        assert!(a.is_nilpotent_to(1).unwrap());
        assert!(s.nilpotent_in_neighborhood(&ChainEndo::constant(5, 1).unwrap()));
        let s2 = SimplexSpec::new(5, &[1, 2]).unwrap();
        let b = parse_compact("1_2 2_3", 5).unwrap();
        assert!(!s2.nilpotent_in_neighborhood(&b));
        assert!(b.is_idempotent());
    }
}
