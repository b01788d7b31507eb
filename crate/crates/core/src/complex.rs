//! Compiles equivariant simplicial-complex descriptions into boundary
//! matrices and Laplacians over the group algebra.
//!
//! The input lists, per degree, the orbit representatives of the skeleton
//! and, for each representative of positive degree, one face record per
//! face index `t`: the pair `(g, tau)` such that `g·tau` is the t-th face
//! of the representative. Degree-`n` boundary matrices have rows indexed by
//! degree-`n` orbits and columns by degree-`(n+1)` orbits; the entry at
//! `(tau, sigma)` is the signed sum of `delta_g` over the face records of
//! `sigma` targeting `tau`.
//!
//! Two face records of one representative may share `(g, tau)`: at equal
//! parity the coefficients add, at opposite parity they cancel. Both are
//! legal. Contractibility, finite stabilizers and inversion-freeness of the
//! action cannot be decided from face records; they are recorded as
//! explicit user assertions and do not affect compilation.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::One;

use crate::algebra::{GaElem, GaMatrix};
use crate::error::{Error, Result};
use crate::group::GroupDescriptor;
use crate::rat::Rat;

/// One face of an orbit representative: `g · target` is the `t`-th face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRecord {
    pub t: usize,
    pub word: Vec<i32>,
    pub target: String,
}

/// User assertions about the underlying action. Recorded verbatim; the
/// compiled matrices are meaningful as a chain complex either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assertions {
    pub contractible: bool,
    pub finite_stabilizers: bool,
    pub inversion_free: bool,
}

/// Parsed description of an equivariant complex, before compilation.
#[derive(Debug, Clone)]
pub struct ComplexSpec {
    pub group: Arc<GroupDescriptor>,
    /// Top degree `N`; orbit lists are given for degrees `0..=N+1`.
    pub top_degree: usize,
    /// Orbit names per degree, `orbits[n]` for degree `n`.
    pub orbits: Vec<Vec<String>>,
    /// Face records keyed by orbit name (orbits of degree >= 1).
    pub faces: BTreeMap<String, Vec<FaceRecord>>,
    pub assertions: Assertions,
}

/// A validated complex with all boundary matrices cached.
#[derive(Debug, Clone)]
pub struct EquivariantComplex {
    group: Arc<GroupDescriptor>,
    top_degree: usize,
    orbits: Vec<Vec<String>>,
    assertions: Assertions,
    /// `boundaries[n]` is `D_n` of shape `k_n x k_{n+1}`, for `n = 0..=N`.
    boundaries: Vec<GaMatrix>,
}

/// Validates a description, builds `D_0..D_N`, and checks the chain
/// condition `D_{n} · D_{n+1} = 0` for every applicable degree.
pub fn compile(spec: &ComplexSpec) -> Result<EquivariantComplex> {
    let n_top = spec.top_degree;
    if spec.orbits.len() != n_top + 2 {
        return Err(Error::ParseError {
            reason: format!(
                "expected orbit lists for degrees 0..={} ({} lists), found {}",
                n_top + 1,
                n_top + 2,
                spec.orbits.len()
            ),
        });
    }
    // Orbit names must be unique within a degree; build index maps.
    let mut index: Vec<BTreeMap<&str, usize>> = Vec::with_capacity(spec.orbits.len());
    for names in &spec.orbits {
        let mut m = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || m.insert(name.as_str(), i).is_some() {
                return Err(Error::ParseError {
                    reason: format!("orbit name `{name}` is empty or duplicated"),
                });
            }
        }
        index.push(m);
    }

    let mut boundaries = Vec::with_capacity(n_top + 1);
    for n in 0..=n_top {
        let degree = n + 1;
        let k_rows = spec.orbits[n].len();
        let k_cols = spec.orbits[degree].len();
        let mut d = GaMatrix::zero(spec.group.clone(), k_rows, k_cols);
        for (col, orbit) in spec.orbits[degree].iter().enumerate() {
            let records = spec.faces.get(orbit).map(Vec::as_slice).unwrap_or(&[]);
            // Exactly one record per face index t = 0..=degree.
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for rec in records {
                if rec.t > degree || !seen.insert(rec.t) {
                    return Err(Error::MissingFace { degree, orbit: orbit.clone(), t: rec.t });
                }
            }
            for t in 0..=degree {
                if !seen.contains(&t) {
                    return Err(Error::MissingFace { degree, orbit: orbit.clone(), t });
                }
            }
            for rec in records {
                let row = *index[n].get(rec.target.as_str()).ok_or_else(|| Error::BadOrbitRef {
                    degree,
                    orbit: orbit.clone(),
                    target: rec.target.clone(),
                })?;
                let g = spec.group.normalize(&rec.word)?;
                let sign = if rec.t % 2 == 0 { Rat::one() } else { -Rat::one() };
                let term = GaElem::delta(spec.group.clone(), g).scale(&sign);
                *d.entry_mut(row, col) = d.entry(row, col).add(&term)?;
            }
        }
        boundaries.push(d);
    }

    // Face records for orbits that exist in no positive degree are a
    // description error.
    for name in spec.faces.keys() {
        let known = (1..=n_top + 1).any(|deg| index[deg].contains_key(name.as_str()));
        if !known {
            return Err(Error::BadOrbitRef { degree: 0, orbit: name.clone(), target: name.clone() });
        }
    }

    let complex = EquivariantComplex {
        group: spec.group.clone(),
        top_degree: n_top,
        orbits: spec.orbits.clone(),
        assertions: spec.assertions,
        boundaries,
    };
    complex.check_chain_condition()?;
    Ok(complex)
}

impl EquivariantComplex {
    pub fn group(&self) -> &Arc<GroupDescriptor> {
        &self.group
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn assertions(&self) -> Assertions {
        self.assertions
    }

    /// Number of orbits in each degree `0..=N+1`.
    pub fn orbit_counts(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn orbit_names(&self, degree: usize) -> Result<&[String]> {
        self.orbits
            .get(degree)
            .map(Vec::as_slice)
            .ok_or(Error::DegreeOutOfRange { degree, top: self.top_degree + 1 })
    }

    pub fn k(&self, degree: usize) -> Result<usize> {
        Ok(self.orbit_names(degree)?.len())
    }

    /// The boundary matrix `D_n` (shape `k_n x k_{n+1}`) for `n <= N`.
    pub fn boundary(&self, n: usize) -> Result<&GaMatrix> {
        self.boundaries.get(n).ok_or(Error::DegreeOutOfRange { degree: n, top: self.top_degree + 1 })
    }

    /// `D_n` where the degree just beyond the data is a zero-column matrix,
    /// so Laplacians and chain checks at the top degree read naturally.
    pub fn boundary_or_empty(&self, n: usize) -> Result<GaMatrix> {
        if n <= self.top_degree {
            Ok(self.boundaries[n].clone())
        } else if n == self.top_degree + 1 {
            Ok(GaMatrix::zero(self.group.clone(), self.k(n)?, 0))
        } else {
            Err(Error::DegreeOutOfRange { degree: n, top: self.top_degree + 1 })
        }
    }

    fn check_chain_condition(&self) -> Result<()> {
        for n in 1..=self.top_degree {
            let prod = self.boundaries[n - 1].mul(&self.boundaries[n])?;
            if !prod.is_zero() {
                let (row, col) = first_nonzero(&prod);
                return Err(Error::ChainConditionViolated {
                    n: n - 1,
                    row: self.orbits[n - 1][row].clone(),
                    col: self.orbits[n + 1][col].clone(),
                    entry: prod.entry(row, col).display(),
                });
            }
        }
        Ok(())
    }

    /// True iff `D_{n-1} · D_n` vanishes; degrees without data make the
    /// product empty and the condition vacuous.
    pub fn verify_chain(&self, n: usize) -> Result<bool> {
        if n == 0 {
            return Ok(true);
        }
        if n > self.top_degree + 1 {
            return Err(Error::DegreeOutOfRange { degree: n, top: self.top_degree + 1 });
        }
        let left = self.boundary_or_empty(n - 1)?;
        let right = self.boundary_or_empty(n)?;
        Ok(left.mul(&right)?.is_zero())
    }

    /// The Laplacian triple `(Delta_n, Delta_n^+, Delta_n^-)` in
    /// `M_{k_n}`: `Delta^+ = D_n D_n^*`, `Delta^- = D_{n-1}^* D_{n-1}`,
    /// with absent summands zero (degree 0 has no `Delta^-`, the degree
    /// above the top no `Delta^+`).
    pub fn laplacian(&self, n: usize) -> Result<(GaMatrix, GaMatrix, GaMatrix)> {
        let k = self.k(n)?;
        let plus = if n <= self.top_degree {
            let d = &self.boundaries[n];
            d.mul(&d.star()?)?
        } else {
            GaMatrix::zero(self.group.clone(), k, k)
        };
        let minus = if n >= 1 {
            let d = &self.boundaries[n - 1];
            d.star()?.mul(d)?
        } else {
            GaMatrix::zero(self.group.clone(), k, k)
        };
        let total = plus.add(&minus)?;
        Ok((total, plus, minus))
    }
}

fn first_nonzero(m: &GaMatrix) -> (usize, usize) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.entry(i, j).is_zero() {
                return (i, j);
            }
        }
    }
    unreachable!("called on a nonzero matrix")
}
