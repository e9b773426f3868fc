//! Class-two `p`-groups from a pair `(B, F)`: presentations, text and CAS
//! export, and a concrete exponent-`p` model for subgroup audits.

mod audit;
mod baer;
mod export;

pub use audit::{audit_abmax, AuditReport, DEFAULT_ORDER_CAP};
pub use baer::{BaerElement, BaerGroup};
pub use export::{export_cas, export_text, parse_cas, parse_text};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::altmap::{AlternatingMap, PowerMap};
use crate::field::Prime;
use crate::subspace::{unit, Subspace};
use crate::{Error, Result};

/// One defining relation; generator indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// `[x_i, x_j] = Π y_k^{e_k}` with `i < j`.
    Comm { i: usize, j: usize, exps: Vec<u8> },
    /// `x_i^p = Π y_k^{e_k}`.
    Pow { i: usize, exps: Vec<u8> },
    /// `[x_i, y_j] = 1`.
    Central { i: usize, j: usize },
    /// `y_k^p = 1`.
    Exp { k: usize },
}

/// Generators `x_1..x_n`, `y_1..y_m` with the commutator and power data of
/// `(B, F)`. The group has order `p^{n+m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    p: Prime,
    n: usize,
    m: usize,
    /// Exponent rows of `[x_i, x_j]` for `i < j`, lexicographic.
    comm: Vec<Vec<u8>>,
    /// Exponent rows of `x_i^p`.
    pow: Vec<Vec<u8>>,
    /// Free-form reference to the certificate this came from.
    pub provenance: Option<String>,
}

impl Presentation {
    /// Reads the presentation off `B` and `F` (`None` means `F = 0`).
    ///
    /// Fails with [`Error::NotSurjective`] unless `B(V,V) + F(V) = W`.
    pub fn from_maps(b: &AlternatingMap, f: Option<&PowerMap>) -> Result<Presentation> {
        let (p, n, m) = (b.prime(), b.n(), b.m());
        if let Some(f) = f {
            if f.prime() != p {
                return Err(Error::FieldMismatch { expected: p.get(), found: f.prime().get() });
            }
            if f.n() != n || f.m() != m {
                return Err(Error::DimensionMismatch { expected: n * m, found: f.n() * f.m() });
            }
        }
        let full = Subspace::full(p, n);
        let mut image = b.image_span(&full)?;
        if let Some(f) = f {
            image = image.sum(&f.image_span(&full)?)?;
        }
        if image.dim() != m {
            return Err(Error::NotSurjective);
        }
        let mut comm = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                comm.push(b.apply(&unit(n, i), &unit(n, j))?);
            }
        }
        let pow = (0..n)
            .map(|i| match f {
                Some(f) => f.apply(&unit(n, i)),
                None => Ok(vec![0; m]),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation { p, n, m, comm, pow, provenance: None })
    }

    /// Builds a presentation from raw exponent rows, validating shapes and residues.
    pub fn from_parts(p: Prime, n: usize, m: usize, comm: Vec<Vec<u8>>, pow: Vec<Vec<u8>>) -> Result<Presentation> {
        let pairs = n * n.saturating_sub(1) / 2;
        if comm.len() != pairs {
            return Err(Error::DimensionMismatch { expected: pairs, found: comm.len() });
        }
        if pow.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: pow.len() });
        }
        for row in comm.iter().chain(&pow) {
            if row.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: row.len() });
            }
            if row.iter().any(|&e| u32::from(e) >= p.get()) {
                return Err(Error::InvalidParams(format!("exponent out of range mod {}", p.get())));
            }
        }
        Ok(Presentation { p, n, m, comm, pow, provenance: None })
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Presentation {
        self.provenance = Some(provenance.into());
        self
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `log_p |G|`.
    pub fn order_log(&self) -> usize {
        self.n + self.m
    }

    /// Exponents of `[x_i, x_j]`, `i < j`.
    pub fn commutator(&self, i: usize, j: usize) -> &[u8] {
        assert!(i < j && j < self.n);
        &self.comm[i * (2 * self.n - i - 1) / 2 + (j - i - 1)]
    }

    /// Exponents of `x_i^p`.
    pub fn power(&self, i: usize) -> &[u8] {
        &self.pow[i]
    }

    /// `x1..xn, y1..ym`.
    pub fn generator_names(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("x{i}")).chain((1..=self.m).map(|k| format!("y{k}"))).collect()
    }

    /// Relations in canonical order: commutators, powers, centrality, exponents.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::with_capacity(self.expected_relation_count());
        let mut idx = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(Relation::Comm { i, j, exps: self.comm[idx].clone() });
                idx += 1;
            }
        }
        for i in 0..self.n {
            out.push(Relation::Pow { i, exps: self.pow[i].clone() });
        }
        for i in 0..self.n {
            for j in 0..self.m {
                out.push(Relation::Central { i, j });
            }
        }
        for k in 0..self.m {
            out.push(Relation::Exp { k });
        }
        out
    }

    /// `C(n,2) + n + n·m + m`.
    pub fn expected_relation_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 + self.n + self.n * self.m + self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::altmap::LinearPowerMap;
    use crate::matrix::FpMatrix;

    fn heisenberg() -> Presentation {
        let b = AlternatingMap::symplectic(Prime::THREE, 2).unwrap();
        Presentation::from_maps(&b, None).unwrap()
    }

    #[test]
    fn heisenberg_relations() {
        let pres = heisenberg();
        assert_eq!(pres.commutator(0, 1), &[1]);
        assert_eq!(pres.power(0), &[0]);
        assert_eq!(pres.relations().len(), 6);
        assert_eq!(pres.expected_relation_count(), 6);
        assert_eq!(pres.generator_names(), ["x1", "x2", "y1"]);
        assert_eq!(pres.order_log(), 3);
    }

    #[test]
    fn worked_d_maximal_presentation() {
        let p = Prime::THREE;
        let b = AlternatingMap::from_entries(p, 3, 1, &[(0, 0, 1, 1)]).unwrap();
        let f = PowerMap::Linear(LinearPowerMap::new(FpMatrix::from_rows(p, 3, &[[0, 0, 1]]).unwrap()).unwrap());
        let pres = Presentation::from_maps(&b, Some(&f)).unwrap();
        assert_eq!(pres.commutator(0, 1), &[1]);
        assert_eq!(pres.commutator(0, 2), &[0]);
        assert_eq!(pres.commutator(1, 2), &[0]);
        assert_eq!(pres.power(2), &[1]);
        assert_eq!(pres.power(0), &[0]);
    }

    #[test]
    fn elementary_abelian() {
        let b = AlternatingMap::zero(Prime::new(5).unwrap(), 3, 0);
        let pres = Presentation::from_maps(&b, None).unwrap();
        assert_eq!(pres.relations().len(), 3 + 3);
        assert!(pres.relations().iter().all(|r| match r {
            Relation::Comm { exps, .. } | Relation::Pow { exps, .. } => exps.is_empty(),
            _ => false,
        }));
    }

    #[test]
    fn surjectivity_is_checked() {
        let b = AlternatingMap::zero(Prime::THREE, 3, 1);
        assert_eq!(Presentation::from_maps(&b, None), Err(Error::NotSurjective));
        let f = PowerMap::Linear(LinearPowerMap::canonical(Prime::THREE, 3, 1).unwrap());
        assert!(Presentation::from_maps(&b, Some(&f)).is_ok());
    }

    #[test]
    fn counts_follow_schema() {
        let mut rng = <rand::rngs::SmallRng as rand::SeedableRng>::seed_from_u64(5);
        for (p, n, m) in [(2, 4, 2), (3, 5, 3), (5, 3, 2), (3, 6, 0)] {
            let q = Prime::new(p).unwrap();
            let b = loop {
                let b = AlternatingMap::sample(q, n, m, &mut rng);
                if b.is_surjective() {
                    break b;
                }
            };
            let pres = Presentation::from_maps(&b, None).unwrap();
            assert_eq!(pres.relations().len(), n * (n - 1) / 2 + n + n * m + m);
        }
    }

    #[test]
    fn from_parts_validates() {
        let p = Prime::THREE;
        assert!(Presentation::from_parts(p, 2, 1, vec![vec![1]], vec![vec![0], vec![0]]).is_ok());
        assert!(Presentation::from_parts(p, 2, 1, vec![vec![3]], vec![vec![0], vec![0]]).is_err());
        assert!(Presentation::from_parts(p, 2, 1, vec![], vec![vec![0], vec![0]]).is_err());
    }
}
