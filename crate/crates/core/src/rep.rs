//! Finite-dimensional orthogonal representations and the analysis of group
//! algebra matrices under them: exact evaluation, cohomology dimensions,
//! the three-way kernel decomposition of the middle space of a chain
//! triple, and exact PSD-based positivity criteria.
//!
//! Cochains are row vectors. The coboundary of degree `n` acts by right
//! multiplication with `ev(D_n)` and its adjoint by right multiplication
//! with the transpose, so the evaluated Laplacians are literally
//! `ev(D_n) ev(D_n)^T + ev(D_{n-1})^T ev(D_{n-1})`, matching the evaluation
//! of the algebra-side Laplacian entry for entry.
//!
//! Only exact rational orthogonal representations feed the decision
//! procedures. Floating representations are accepted for exploratory
//! evaluation but every rank, kernel and PSD question demands exact mode.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::GaMatrix;
use crate::complex::EquivariantComplex;
use crate::error::{Error, Result};
use crate::group::{BackendKind, GroupDescriptor, GroupElement};
use crate::linalg::{psd_check_exact, PsdOutcome, QMatrix};
use crate::rat::{rat, Rat};

pub const DEFAULT_BISECTION_STEPS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Regular,
    Permutation,
    User,
}

#[derive(Debug, Clone)]
enum RepKind {
    /// One exact orthogonal matrix per generator; words evaluate by
    /// folding, with the transpose standing in for inverse letters.
    /// Permutation-backend elements are factored into generator words once
    /// at construction time.
    ExactMatrices { mats: Vec<QMatrix>, perm_words: Option<BTreeMap<GroupElement, Vec<i32>>> },
    /// Left multiplication on the enumerated elements of a finite group.
    Regular { elements: Vec<GroupElement>, index: BTreeMap<GroupElement, usize> },
    /// Floating unitary matrices; exploratory evaluation only.
    FloatMatrices { mats: Vec<Vec<Vec<f64>>> },
}

/// A finite-dimensional representation of a group backend, orthogonal in
/// exact mode.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    backend: Arc<GroupDescriptor>,
    dim: usize,
    name: String,
    provenance: Provenance,
    kind: RepKind,
}

fn perm_matrix(img: &[usize]) -> QMatrix {
    let n = img.len();
    let mut m = QMatrix::zeros(n, n);
    for (j, &i) in img.iter().enumerate() {
        m[(i, j)] = Rat::one();
    }
    m
}

impl UnitaryRep {
    /// The one-dimensional representation sending every generator to `[1]`.
    pub fn trivial(backend: Arc<GroupDescriptor>) -> Result<UnitaryRep> {
        let mats = vec![QMatrix::identity(1); backend.generator_count()];
        Self::from_matrices(backend, mats, "trivial")
    }

    /// Left multiplication of a finite group on itself; exact permutation
    /// matrices of dimension the group order.
    pub fn regular(backend: Arc<GroupDescriptor>) -> Result<UnitaryRep> {
        let elements = backend.enumerate()?;
        let index: BTreeMap<GroupElement, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(UnitaryRep {
            dim: elements.len(),
            backend,
            name: "regular".into(),
            provenance: Provenance::Regular,
            kind: RepKind::Regular { elements, index },
        })
    }

    /// Permutation representation of a declared action on a finite set,
    /// one image array per generator.
    pub fn permutation(backend: Arc<GroupDescriptor>, images: Vec<Vec<usize>>) -> Result<UnitaryRep> {
        if images.len() != backend.generator_count() {
            return Err(Error::InvalidRep {
                reason: format!(
                    "expected {} permutation images, got {}",
                    backend.generator_count(),
                    images.len()
                ),
            });
        }
        let points = images.first().map_or(1, Vec::len);
        let mats: Vec<QMatrix> = images
            .iter()
            .map(|img| {
                if img.len() == points {
                    Ok(perm_matrix(img))
                } else {
                    Err(Error::InvalidRep { reason: "ragged permutation images".into() })
                }
            })
            .collect::<Result<_>>()?;
        let mut rep = Self::from_matrices(backend, mats, "permutation")?;
        rep.provenance = Provenance::Permutation;
        Ok(rep)
    }

    /// User-supplied exact rational matrices, validated orthogonal and
    /// compatible with the backend's relations.
    pub fn from_matrices(
        backend: Arc<GroupDescriptor>,
        mats: Vec<QMatrix>,
        name: &str,
    ) -> Result<UnitaryRep> {
        if mats.len() != backend.generator_count() {
            return Err(Error::InvalidRep {
                reason: format!(
                    "expected {} generator matrices, got {}",
                    backend.generator_count(),
                    mats.len()
                ),
            });
        }
        let dim = mats.first().map_or(1, QMatrix::rows);
        if dim == 0 {
            return Err(Error::InvalidRep { reason: "zero-dimensional representation".into() });
        }
        for m in &mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRep { reason: "generator matrices must share one square shape".into() });
            }
            if m.transpose().mul(m) != QMatrix::identity(dim) {
                return Err(Error::InvalidRep {
                    reason: "generator matrix is not exactly orthogonal".into(),
                });
            }
        }
        let perm_words = if backend.kind() == BackendKind::FinitePermutation {
            Some(backend.factorization_words()?)
        } else {
            None
        };
        let rep = UnitaryRep {
            backend,
            dim,
            name: name.to_string(),
            provenance: Provenance::User,
            kind: RepKind::ExactMatrices { mats, perm_words },
        };
        rep.validate_relations()?;
        Ok(rep)
    }

    /// Floating unitary matrices; allowed for exploratory evaluation only.
    pub fn from_float_matrices(
        backend: Arc<GroupDescriptor>,
        mats: Vec<Vec<Vec<f64>>>,
        name: &str,
    ) -> Result<UnitaryRep> {
        if mats.len() != backend.generator_count() {
            return Err(Error::InvalidRep {
                reason: format!(
                    "expected {} generator matrices, got {}",
                    backend.generator_count(),
                    mats.len()
                ),
            });
        }
        let dim = mats.first().map_or(1, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidRep { reason: "zero-dimensional representation".into() });
        }
        for m in &mats {
            if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                return Err(Error::InvalidRep { reason: "ragged float matrices".into() });
            }
            // M^T M = I within 1e-12.
            for i in 0..dim {
                for j in 0..dim {
                    let mut s = 0.0;
                    for k in 0..dim {
                        s += m[k][i] * m[k][j];
                    }
                    let target = if i == j { 1.0 } else { 0.0 };
                    if (s - target).abs() > 1e-12 {
                        return Err(Error::InvalidRep {
                            reason: "float matrix is not unitary within 1e-12".into(),
                        });
                    }
                }
            }
        }
        Ok(UnitaryRep {
            backend,
            dim,
            name: name.to_string(),
            provenance: Provenance::User,
            kind: RepKind::FloatMatrices { mats },
        })
    }

    /// Checks the declared rewriting rules under the representation and,
    /// for permutation backends, the whole multiplication table against
    /// the factorization words.
    fn validate_relations(&self) -> Result<()> {
        let RepKind::ExactMatrices { mats, perm_words } = &self.kind else {
            return Ok(());
        };
        for rule in self.backend.rules() {
            let lhs = self.fold_word(mats, &rule.left);
            let rhs = self.fold_word(mats, &rule.right);
            if lhs != rhs {
                return Err(Error::InvalidRep {
                    reason: "matrices violate a declared rewriting rule".into(),
                });
            }
        }
        if let Some(words) = perm_words {
            for (elem, word) in words {
                let m_elem = self.fold_word(mats, word);
                for (i, gen_mat) in mats.iter().enumerate() {
                    let gen = self.backend.normalize(&[(i + 1) as i32])?;
                    let prod = self.backend.mul(elem, &gen)?;
                    let Some(word_prod) = words.get(&prod) else {
                        return Err(Error::InvalidRep {
                            reason: "factorization table is incomplete".into(),
                        });
                    };
                    if self.fold_word(mats, word_prod) != m_elem.mul(gen_mat) {
                        return Err(Error::InvalidRep {
                            reason: "matrices are inconsistent with the permutation group's multiplication table".into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn fold_word(&self, mats: &[QMatrix], word: &[i32]) -> QMatrix {
        let mut acc = QMatrix::identity(self.dim);
        for &l in word {
            let m = &mats[(l.unsigned_abs() - 1) as usize];
            // Orthogonal: the inverse is the transpose.
            acc = if l > 0 { acc.mul(m) } else { acc.mul(&m.transpose()) };
        }
        acc
    }

    pub fn backend(&self) -> &Arc<GroupDescriptor> {
        &self.backend
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.kind, RepKind::FloatMatrices { .. })
    }

    fn require_exact(&self) -> Result<()> {
        if self.is_exact() {
            Ok(())
        } else {
            Err(Error::FloatModeUnsupported { name: self.name.clone() })
        }
    }

    /// Exact matrix of a single group element.
    pub fn matrix_of(&self, g: &GroupElement) -> Result<QMatrix> {
        self.require_exact()?;
        match &self.kind {
            RepKind::Regular { elements, index } => {
                let mut m = QMatrix::zeros(self.dim, self.dim);
                for (j, h) in elements.iter().enumerate() {
                    let gh = self.backend.mul(g, h)?;
                    let i = *index.get(&gh).ok_or(Error::BackendMismatch)?;
                    m[(i, j)] = Rat::one();
                }
                Ok(m)
            }
            RepKind::ExactMatrices { mats, perm_words } => match g {
                GroupElement::Word(w) => Ok(self.fold_word(mats, w)),
                GroupElement::Perm(_) => {
                    let words = perm_words.as_ref().ok_or(Error::BackendMismatch)?;
                    let w = words.get(g).ok_or_else(|| Error::InvalidRep {
                        reason: "element has no factorization over the declared generators".into(),
                    })?;
                    Ok(self.fold_word(mats, w))
                }
            },
            RepKind::FloatMatrices { .. } => unreachable!("require_exact"),
        }
    }
}

/// Evaluates a group-algebra matrix under a representation: the block at
/// `(i, j)` is the image of entry `(i, j)`. The result is
/// `(rows·d) x (cols·d)` and the map is a star-homomorphism
/// (`ev(AB) = ev(A) ev(B)`, `ev(A*) = ev(A)^T`).
pub fn ev(a: &GaMatrix, rep: &UnitaryRep) -> Result<QMatrix> {
    rep.require_exact()?;
    if **a.backend() != **rep.backend() {
        return Err(Error::BackendMismatch);
    }
    let d = rep.dim();
    let mut out = QMatrix::zeros(a.rows() * d, a.cols() * d);
    let mut cache: BTreeMap<GroupElement, QMatrix> = BTreeMap::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for (g, c) in a.entry(i, j).terms() {
                if !cache.contains_key(g) {
                    cache.insert(g.clone(), rep.matrix_of(g)?);
                }
                let m = &cache[g];
                for u in 0..d {
                    for v in 0..d {
                        if !m[(u, v)].is_zero() {
                            let add = c * &m[(u, v)];
                            out[(i * d + u, j * d + v)] += add;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Floating evaluation, for exploratory estimates under float-mode
/// representations (also works for exact ones by conversion).
pub fn ev_float(a: &GaMatrix, rep: &UnitaryRep) -> Result<Vec<Vec<f64>>> {
    if **a.backend() != **rep.backend() {
        return Err(Error::BackendMismatch);
    }
    if rep.is_exact() {
        return Ok(ev(a, rep)?.to_f64());
    }
    let RepKind::FloatMatrices { mats } = &rep.kind else { unreachable!() };
    let d = rep.dim();
    let fold = |word: &[i32]| -> Vec<Vec<f64>> {
        let mut acc: Vec<Vec<f64>> =
            (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        for &l in word {
            let m = &mats[(l.unsigned_abs() - 1) as usize];
            let mut next = vec![vec![0.0; d]; d];
            #[allow(clippy::needless_range_loop)]
            for i in 0..d {
                for k in 0..d {
                    let x = acc[i][k];
                    if x != 0.0 {
                        for j in 0..d {
                            // Inverse letters use the transpose.
                            let v = if l > 0 { m[k][j] } else { m[j][k] };
                            next[i][j] += x * v;
                        }
                    }
                }
            }
            acc = next;
        }
        acc
    };
    let mut out = vec![vec![0.0; a.cols() * d]; a.rows() * d];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for (g, c) in a.entry(i, j).terms() {
                let GroupElement::Word(w) = g else {
                    return Err(Error::BackendMismatch);
                };
                let m = fold(w);
                let cf = crate::rat::rat_to_f64(c);
                for u in 0..d {
                    for v in 0..d {
                        out[i * d + u][j * d + v] += cf * m[u][v];
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exact dimension data of the evaluated cochain complex at one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyDims {
    /// dim H^n = dim ker d_n - rank d_{n-1}.
    pub dim_h: usize,
    /// Reduced dimension; equals `dim_h` in finite dimension.
    pub dim_h_reduced: usize,
    pub dim_ker_d: usize,
    pub rank_d_prev: usize,
}

/// Exact cohomology dimensions of `V^{k_{n-1}} -> V^{k_n} -> V^{k_{n+1}}`.
pub fn cohomology_dims(
    complex: &EquivariantComplex,
    n: usize,
    rep: &UnitaryRep,
) -> Result<CohomologyDims> {
    rep.require_exact()?;
    let d = rep.dim();
    let middle = complex.k(n)? * d;
    let b_plus = ev(&complex.boundary_or_empty(n)?, rep)?;
    let b_minus = if n == 0 {
        QMatrix::zeros(0, middle)
    } else {
        ev(&complex.boundary_or_empty(n - 1)?, rep)?
    };
    let rank_plus = b_plus.rank();
    let rank_minus = b_minus.rank();
    let dim_ker = middle - rank_plus;
    let dim_h = dim_ker - rank_minus;
    Ok(CohomologyDims { dim_h, dim_h_reduced: dim_h, dim_ker_d: dim_ker, rank_d_prev: rank_minus })
}

/// A rational bracket around the largest admissible shift: PSD holds at
/// `lo`; `hi`, when present, is a tested shift where PSD fails. `hi = None`
/// means the certified shift met the spectral-norm bound exactly (constant
/// spectrum or the zero operator).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorInterval {
    pub lo: Rat,
    pub hi: Option<Rat>,
}

/// Largest `eps` with `S - eps·I` PSD, bisected to `steps` steps.
/// `None` if `S` itself is not PSD.
pub fn psd_floor(s: &QMatrix, steps: usize) -> Result<Option<FloorInterval>> {
    floor_by(s, steps, |s, eps| {
        let shifted = s.sub(&QMatrix::identity(s.rows()).scale(eps));
        psd_check_exact(&shifted)
    })
}

/// Largest `eps` with `S(S - eps·I)` PSD: a lower bound on the smallest
/// positive eigenvalue of a PSD operator, without computing eigenvalues.
pub fn positive_part_floor(s: &QMatrix, steps: usize) -> Result<Option<FloorInterval>> {
    let s2 = s.mul(s);
    floor_by(s, steps, move |s, eps| {
        let shifted = s2.sub(&s.scale(eps));
        psd_check_exact(&shifted)
    })
}

fn floor_by(
    s: &QMatrix,
    steps: usize,
    pred: impl Fn(&QMatrix, &Rat) -> Result<PsdOutcome>,
) -> Result<Option<FloorInterval>> {
    if !pred(s, &Rat::zero())?.is_pass() {
        return Ok(None);
    }
    let upper = s.row_sum_bound();
    if upper.is_zero() || pred(s, &upper)?.is_pass() {
        return Ok(Some(FloorInterval { lo: upper, hi: None }));
    }
    let mut lo = Rat::zero();
    let mut hi = upper;
    for _ in 0..steps {
        let mid = (&lo + &hi) * rat(1, 2);
        if pred(s, &mid)?.is_pass() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(FloorInterval { lo, hi: Some(hi) }))
}

/// Named outcomes of the kernel/image equations verified by
/// [`hodge_from_operators`]. All of these are theorems for an exact chain
/// triple; a `false` indicates a broken input (or a bug) and fails the
/// report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeChecks {
    pub ker_plus_is_ker_d: bool,
    pub ker_minus_is_ker_adjoint: bool,
    pub im_plus_is_c_plus: bool,
    pub im_minus_is_c_minus: bool,
    pub ker_delta_is_c_zero: bool,
    pub plus_minus_annihilate: bool,
    pub decomposition_orthogonal: bool,
    pub dims_add_up: bool,
    pub reduced_dim_matches_rank: bool,
}

impl HodgeChecks {
    pub fn all(&self) -> bool {
        self.ker_plus_is_ker_d
            && self.ker_minus_is_ker_adjoint
            && self.im_plus_is_c_plus
            && self.im_minus_is_c_minus
            && self.ker_delta_is_c_zero
            && self.plus_minus_annihilate
            && self.decomposition_orthogonal
            && self.dims_add_up
            && self.reduced_dim_matches_rank
    }
}

/// Full decomposition report for the middle space of a chain triple.
#[derive(Debug, Clone)]
pub struct HodgeReport {
    pub middle_dim: usize,
    /// Orthogonal (not normalized) exact spanning sets, as rows.
    pub basis_minus: QMatrix,
    pub basis_zero: QMatrix,
    pub basis_plus: QMatrix,
    /// Operators acting by right multiplication on row cochains.
    pub op_delta: QMatrix,
    pub op_plus: QMatrix,
    pub op_minus: QMatrix,
    pub dim_h_reduced: usize,
    pub rank_up: usize,
    pub rank_down: usize,
    pub checks: HodgeChecks,
    /// Shift bracket for the full Laplacian (nonzero iff the kernel is 0).
    pub floor_delta: Option<FloorInterval>,
    /// Positive-part floors of the three operators.
    pub pos_floor_delta: Option<FloorInterval>,
    pub pos_floor_plus: Option<FloorInterval>,
    pub pos_floor_minus: Option<FloorInterval>,
}

/// The kernel decomposition of the middle space of the chain triple
/// `rows(b_minus) -> middle -> cols(b_plus)` with both maps acting by right
/// multiplication on row vectors. Requires `b_minus · b_plus = 0`.
pub fn hodge_from_operators(b_minus: &QMatrix, b_plus: &QMatrix) -> Result<HodgeReport> {
    let m = b_minus.cols();
    if b_plus.rows() != m {
        return Err(Error::DimMismatch {
            left: format!("{}x{}", b_minus.rows(), b_minus.cols()),
            right: format!("{}x{}", b_plus.rows(), b_plus.cols()),
        });
    }
    let prod = b_minus.mul(b_plus);
    if !prod.is_zero() {
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                if !prod[(i, j)].is_zero() {
                    return Err(Error::OperatorChainBroken { row: i, col: j });
                }
            }
        }
    }

    // ker d = { v : v · b_plus = 0 }, ker ∂ = { v : v · b_minus^T = 0 }.
    let ker_d = b_plus.left_kernel_rows();
    let ker_adj = b_minus.kernel_rows();
    let c_minus = b_minus.row_space_basis();
    let c_zero = b_plus.hstack(&b_minus.transpose()).left_kernel_rows();
    // Orthogonal complement of C^- ⊕ C^0 inside the middle space.
    let c_plus = if c_minus.rows() + c_zero.rows() == 0 {
        QMatrix::identity(m)
    } else {
        c_minus.vstack(&c_zero).kernel_rows()
    };

    let basis_minus = c_minus.orthogonalize_rows();
    let basis_zero = c_zero.orthogonalize_rows();
    let basis_plus = c_plus.orthogonalize_rows();

    let op_plus = b_plus.mul(&b_plus.transpose());
    let op_minus = b_minus.transpose().mul(b_minus);
    let op_delta = op_plus.add(&op_minus);

    let rank_up = b_plus.rank();
    let rank_down = b_minus.rank();
    let dim_h_reduced = basis_zero.rows();

    let mut orthogonal = true;
    let pairs =
        [(&basis_minus, &basis_zero), (&basis_minus, &basis_plus), (&basis_zero, &basis_plus)];
    for (a, b) in pairs {
        for i in 0..a.rows() {
            for j in 0..b.rows() {
                if !crate::linalg::dot(&a.row(i), &b.row(j)).is_zero() {
                    orthogonal = false;
                }
            }
        }
    }

    let checks = HodgeChecks {
        ker_plus_is_ker_d: op_plus.kernel_rows().same_row_space(&ker_d),
        ker_minus_is_ker_adjoint: op_minus.kernel_rows().same_row_space(&ker_adj),
        im_plus_is_c_plus: op_plus.row_space_basis().same_row_space(&c_plus),
        im_minus_is_c_minus: op_minus.row_space_basis().same_row_space(&c_minus),
        ker_delta_is_c_zero: op_delta.kernel_rows().same_row_space(&c_zero),
        plus_minus_annihilate: op_plus.mul(&op_minus).is_zero() && op_minus.mul(&op_plus).is_zero(),
        decomposition_orthogonal: orthogonal,
        dims_add_up: basis_minus.rows() + basis_zero.rows() + basis_plus.rows() == m,
        reduced_dim_matches_rank: dim_h_reduced + rank_up + rank_down == m,
    };

    let steps = DEFAULT_BISECTION_STEPS;
    Ok(HodgeReport {
        middle_dim: m,
        floor_delta: psd_floor(&op_delta, steps)?,
        pos_floor_delta: positive_part_floor(&op_delta, steps)?,
        pos_floor_plus: positive_part_floor(&op_plus, steps)?,
        pos_floor_minus: positive_part_floor(&op_minus, steps)?,
        basis_minus,
        basis_zero,
        basis_plus,
        op_delta,
        op_plus,
        op_minus,
        dim_h_reduced,
        rank_up,
        rank_down,
        checks,
    })
}

/// Hodge decomposition of a compiled complex at degree `n` under an exact
/// representation.
pub fn hodge(complex: &EquivariantComplex, n: usize, rep: &UnitaryRep) -> Result<HodgeReport> {
    rep.require_exact()?;
    let d = rep.dim();
    let middle = complex.k(n)? * d;
    let b_plus = ev(&complex.boundary_or_empty(n)?, rep)?;
    let b_minus = if n == 0 {
        QMatrix::zeros(0, middle)
    } else {
        ev(&complex.boundary_or_empty(n - 1)?, rep)?
    };
    hodge_from_operators(&b_minus, &b_plus)
}

/// Status of one positivity criterion at a given shift.
#[derive(Debug, Clone)]
pub struct CriterionStatus {
    pub pass: bool,
    /// Rational witness with negative quadratic value, on failure.
    pub witness: Option<Vec<Rat>>,
}

fn criterion(outcome: PsdOutcome) -> CriterionStatus {
    match outcome {
        PsdOutcome::Pass { .. } => CriterionStatus { pass: true, witness: None },
        PsdOutcome::Fail { witness } => CriterionStatus { pass: false, witness: Some(witness) },
    }
}

/// The five positivity/vanishing criteria at degree `n`, shift `epsilon`,
/// decided by exact PSD checks and cross-checked against exact ranks.
#[derive(Debug, Clone)]
pub struct CriteriaReport {
    pub epsilon: Rat,
    /// (1) dimension of the kernel of the evaluated Laplacian; this is the
    /// reduced cohomology dimension.
    pub dim_ker_delta: usize,
    /// Rank-computed dim H^n; must equal `dim_ker_delta`.
    pub dim_h: usize,
    /// (2) `Delta^- (Delta^- - eps)` PSD at the given shift.
    pub minus_reduced: CriterionStatus,
    /// (3) `Delta^+ (Delta^+ - eps)` PSD.
    pub plus_reduced: CriterionStatus,
    /// (4) `Delta (Delta - eps)` PSD.
    pub full_reduced: CriterionStatus,
    /// (5) `Delta - eps` PSD.
    pub gap: CriterionStatus,
    /// (5) holds for some positive shift iff the kernel vanishes.
    pub gap_exists: bool,
    /// A certified positive shift when one exists.
    pub gap_found: Option<Rat>,
    /// Degenerate-degree conventions: the plus (resp. minus) part is the
    /// zero operator at the top (resp. bottom) degree.
    pub plus_part_zero: bool,
    pub minus_part_zero: bool,
}

impl CriteriaReport {
    pub fn consistent(&self) -> bool {
        self.dim_ker_delta == self.dim_h
            && self.gap_exists == (self.dim_ker_delta == 0)
            && (!self.gap.pass || self.dim_ker_delta == 0)
            && (self.gap_found.is_some() == self.gap_exists)
    }
}

/// Evaluates criteria (1)-(5) for a compiled complex at degree `n`.
pub fn criteria_report(
    complex: &EquivariantComplex,
    n: usize,
    rep: &UnitaryRep,
    epsilon: &Rat,
) -> Result<CriteriaReport> {
    rep.require_exact()?;
    if !epsilon.is_positive() {
        return Err(Error::ParseError { reason: format!("epsilon must be positive, got {epsilon}") });
    }
    let (delta, plus, minus) = complex.laplacian(n)?;
    let k = delta.rows();
    let ident = GaMatrix::identity(complex.group().clone(), k);

    // Algebra-side products, evaluated afterwards: ev is a homomorphism, so
    // this equals the operator-side computation entry for entry.
    let shifted = |q: &GaMatrix| -> Result<QMatrix> {
        let prod = q.mul(&q.sub(&ident.scale(epsilon))?)?;
        ev(&prod, rep)
    };

    let s_minus = shifted(&minus)?;
    let s_plus = shifted(&plus)?;
    let s_full = shifted(&delta)?;
    let ev_delta = ev(&delta, rep)?;
    let s_gap = ev_delta.sub(&QMatrix::identity(ev_delta.rows()).scale(epsilon));

    let dim_ker_delta = ev_delta.rows() - ev_delta.rank();
    let dims = cohomology_dims(complex, n, rep)?;

    let gap_exists = dim_ker_delta == 0;
    let gap_found = if gap_exists {
        // The bisected floor certifies a concrete positive shift.
        match psd_floor(&ev_delta, DEFAULT_BISECTION_STEPS)? {
            Some(f) if f.lo.is_positive() => Some(f.lo),
            _ => None,
        }
    } else {
        None
    };

    Ok(CriteriaReport {
        epsilon: epsilon.clone(),
        dim_ker_delta,
        dim_h: dims.dim_h,
        minus_reduced: criterion(psd_check_exact(&s_minus)?),
        plus_reduced: criterion(psd_check_exact(&s_plus)?),
        full_reduced: criterion(psd_check_exact(&s_full)?),
        gap: criterion(psd_check_exact(&s_gap)?),
        gap_exists,
        gap_found,
        plus_part_zero: plus.is_zero(),
        minus_part_zero: minus.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaElem;
    use crate::complex::compile;
    use crate::group::cyclic_rewriting;
    use crate::linalg::quadratic_form;
    use crate::rat::rat_int;
    use crate::testutil::{point_spec, s3_triangle_spec, z3_cycle_spec, z_line_spec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z_line() -> crate::complex::EquivariantComplex {
        compile(&z_line_spec()).unwrap()
    }

    fn rho3(backend: &Arc<GroupDescriptor>) -> UnitaryRep {
        UnitaryRep::permutation(backend.clone(), vec![vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn representation_examples() {
        // Z/3 regular: three 3x3 permutation matrices (cyclic shifts).
        let z3 = Arc::new(cyclic_rewriting(3).unwrap());
        let reg = UnitaryRep::regular(z3.clone()).unwrap();
        assert_eq!(reg.dim(), 3);
        let a = z3.normalize(&[1]).unwrap();
        let ma = reg.matrix_of(&a).unwrap();
        assert_eq!(ma.mul(&ma.transpose()), QMatrix::identity(3));
        // Trivial rep is valid on any backend.
        let triv = UnitaryRep::trivial(z3.clone()).unwrap();
        assert_eq!(triv.dim(), 1);
        assert_eq!(triv.matrix_of(&a).unwrap(), QMatrix::identity(1));
        // S3 regular has dimension 6 and consistent relation matrices.
        let s3 = s3_triangle_spec().group;
        let reg6 = UnitaryRep::regular(s3.clone()).unwrap();
        assert_eq!(reg6.dim(), 6);
        let s = s3.normalize(&[1]).unwrap();
        let ms = reg6.matrix_of(&s).unwrap();
        assert_eq!(ms.mul(&ms), QMatrix::identity(6));
    }

    #[test]
    fn rep_validation_rejects_bad_matrices() {
        let z3 = Arc::new(cyclic_rewriting(3).unwrap());
        // Not orthogonal.
        let bad = QMatrix::from_rows(vec![vec![rat_int(2)]]);
        assert!(UnitaryRep::from_matrices(z3.clone(), vec![bad], "bad").is_err());
        // Orthogonal but violating a^3 = e: the 1-dimensional sign rep.
        let sign = QMatrix::from_rows(vec![vec![rat_int(-1)]]);
        assert!(matches!(
            UnitaryRep::from_matrices(z3, vec![sign], "sign"),
            Err(Error::InvalidRep { .. })
        ));
    }

    #[test]
    fn ev_identity_and_z_line_examples() {
        let c = z_line();
        let g = c.group().clone();
        let ident = GaMatrix::identity(g.clone(), 2);
        let triv = UnitaryRep::trivial(g.clone()).unwrap();
        assert_eq!(ev(&ident, &triv).unwrap(), QMatrix::identity(2));
        // Delta_0 under the trivial rep is the 1x1 zero.
        let (delta, _, _) = c.laplacian(0).unwrap();
        let m = ev(&delta, &triv).unwrap();
        assert!(m.is_zero());
        // Under t -> 3-cycle: 2I - P - P^T with P^2 = P^T; S^2 = 3S, so the
        // spectrum is {0, 3, 3}.
        let rho = rho3(&g);
        let s = ev(&delta, &rho).unwrap();
        assert_eq!(s.mul(&s), s.scale(&rat_int(3)));
        assert!(psd_check_exact(&s).unwrap().is_pass());
        // Positive-part floor is exactly 3: S(S-3I) = 0 passes, above fails.
        let shifted = s.mul(&s.sub(&QMatrix::identity(3).scale(&rat_int(3))));
        assert!(psd_check_exact(&shifted).unwrap().is_pass());
        let above = s.mul(&s.sub(&QMatrix::identity(3).scale(&rat(13, 4))));
        assert!(!psd_check_exact(&above).unwrap().is_pass());
    }

    #[test]
    fn ev_is_star_homomorphism() {
        let backends: Vec<(Arc<GroupDescriptor>, UnitaryRep)> = {
            let z3 = Arc::new(cyclic_rewriting(3).unwrap());
            let s3 = s3_triangle_spec().group;
            vec![
                (z3.clone(), UnitaryRep::regular(z3).unwrap()),
                (s3.clone(), UnitaryRep::regular(s3.clone()).unwrap()),
                (s3.clone(), UnitaryRep::permutation(s3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap()),
            ]
        };
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (backend, rep) in &backends {
            for _ in 0..40 {
                let a = random_ga_matrix(backend, &mut rng, 2, 2);
                let b = random_ga_matrix(backend, &mut rng, 2, 2);
                let ev_ab = ev(&a.mul(&b).unwrap(), rep).unwrap();
                assert_eq!(ev_ab, ev(&a, rep).unwrap().mul(&ev(&b, rep).unwrap()));
                let ev_star = ev(&a.star().unwrap(), rep).unwrap();
                assert_eq!(ev_star, ev(&a, rep).unwrap().transpose());
            }
        }
    }

    fn random_ga_matrix(
        b: &Arc<GroupDescriptor>,
        rng: &mut ChaCha8Rng,
        rows: usize,
        cols: usize,
    ) -> GaMatrix {
        let n = b.generator_count().max(1) as i32;
        let entries = (0..rows * cols)
            .map(|_| {
                let terms: Vec<(GroupElement, Rat)> = (0..rng.gen_range(0..3))
                    .map(|_| {
                        let len = rng.gen_range(0..3);
                        let w: Vec<i32> = (0..len)
                            .map(|_| {
                                let l = rng.gen_range(1..=n);
                                if rng.gen_bool(0.5) {
                                    l
                                } else {
                                    -l
                                }
                            })
                            .collect();
                        (b.normalize(&w).unwrap(), rat_int(rng.gen_range(-2..=2)))
                    })
                    .collect();
                GaElem::from_terms(b.clone(), terms)
            })
            .collect();
        GaMatrix::from_entries(b.clone(), rows, cols, entries).unwrap()
    }

    #[test]
    fn block_arrangement_consistency() {
        // Conjugating the orbit-major evaluation by the index-interleaving
        // permutation yields the dimension-major direct-sum arrangement.
        let z3 = Arc::new(cyclic_rewriting(3).unwrap());
        let rep = UnitaryRep::regular(z3.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_ga_matrix(&z3, &mut rng, 2, 2);
        let k = 2;
        let d = rep.dim();
        let orbit_major = ev(&a, &rep).unwrap();
        // Interleaved: index (u, i) -> u*k + i.
        let mut interleaved = QMatrix::zeros(k * d, k * d);
        for i in 0..k {
            for j in 0..k {
                let m = {
                    let mut acc = QMatrix::zeros(d, d);
                    for (g, c) in a.entry(i, j).terms() {
                        acc = acc.add(&rep.matrix_of(g).unwrap().scale(c));
                    }
                    acc
                };
                for u in 0..d {
                    for v in 0..d {
                        interleaved[(u * k + i, v * k + j)] = m[(u, v)].clone();
                    }
                }
            }
        }
        let mut p = QMatrix::zeros(k * d, k * d);
        for i in 0..k {
            for u in 0..d {
                p[(u * k + i, i * d + u)] = Rat::one();
            }
        }
        assert_eq!(p.mul(&orbit_major).mul(&p.transpose()), interleaved);
    }

    #[test]
    fn cohomology_dims_examples() {
        let c = z_line();
        let g = c.group().clone();
        let triv = UnitaryRep::trivial(g.clone()).unwrap();
        // Trivial rep: dim H^0 = 1 (the kernel of t-1 is everything).
        assert_eq!(cohomology_dims(&c, 0, &triv).unwrap().dim_h, 1);
        // t -> 3-cycle: dims (1, 1) at degrees 0 and 1.
        let rho = rho3(&g);
        assert_eq!(cohomology_dims(&c, 0, &rho).unwrap().dim_h, 1);
        assert_eq!(cohomology_dims(&c, 1, &rho).unwrap().dim_h, 1);
        // Point complex: H^1 = 0 under any representation.
        let p = compile(&point_spec()).unwrap();
        let triv_p = UnitaryRep::trivial(p.group().clone()).unwrap();
        assert_eq!(cohomology_dims(&p, 1, &triv_p).unwrap().dim_h, 0);
    }

    #[test]
    fn float_mode_is_rejected_by_decision_procedures() {
        let c = z_line();
        let g = c.group().clone();
        let float_rep =
            UnitaryRep::from_float_matrices(g, vec![vec![vec![1.0]]], "float").unwrap();
        assert!(matches!(
            cohomology_dims(&c, 0, &float_rep),
            Err(Error::FloatModeUnsupported { .. })
        ));
        assert!(matches!(hodge(&c, 0, &float_rep), Err(Error::FloatModeUnsupported { .. })));
        // Exploratory float evaluation still works.
        let (delta, _, _) = c.laplacian(0).unwrap();
        let m = ev_float(&delta, &float_rep).unwrap();
        assert!(m[0][0].abs() < 1e-12);
    }

    #[test]
    fn hodge_z_line_trivial() {
        let c = z_line();
        let triv = UnitaryRep::trivial(c.group().clone()).unwrap();
        let report = hodge(&c, 0, &triv).unwrap();
        assert_eq!(report.middle_dim, 1);
        assert_eq!(report.basis_zero.rows(), 1);
        assert_eq!(report.basis_minus.rows(), 0);
        assert_eq!(report.basis_plus.rows(), 0);
        assert_eq!(report.dim_h_reduced, 1);
        assert!(report.checks.all());
    }

    #[test]
    fn hodge_s3_triangle_regular() {
        let c = compile(&s3_triangle_spec()).unwrap();
        let reg = UnitaryRep::regular(c.group().clone()).unwrap();
        let report = hodge(&c, 1, &reg).unwrap();
        assert_eq!(report.middle_dim, 18);
        // dim ker Delta_1 = 0: H^1 vanishes across the regular rep.
        assert_eq!(report.dim_h_reduced, 0);
        assert!(report.checks.all());
        assert_eq!(cohomology_dims(&c, 1, &reg).unwrap().dim_h, 0);
        // Delta_1 = 3I so the spectral floor is exactly 3.
        let floor = report.floor_delta.clone().unwrap();
        assert_eq!(floor.lo, rat_int(3));
        assert_eq!(floor.hi, None);
    }

    #[test]
    fn hodge_top_degree_convention() {
        // At the degree above the top the plus operator is zero and the
        // report still verifies.
        let c = z_line();
        let rho = rho3(&c.group().clone());
        let report = hodge(&c, 1, &rho).unwrap();
        assert!(report.op_plus.is_zero());
        assert!(report.checks.all());
        assert_eq!(report.dim_h_reduced, 1);
    }

    #[test]
    fn criteria_z_line_trivial_gap_fails_for_every_epsilon() {
        let c = z_line();
        let triv = UnitaryRep::trivial(c.group().clone()).unwrap();
        for eps in [rat(1, 4), rat_int(1), rat_int(3)] {
            let r = criteria_report(&c, 0, &triv, &eps).unwrap();
            assert_eq!(r.dim_ker_delta, 1);
            assert!(!r.gap.pass);
            assert!(!r.gap_exists);
            assert!(r.consistent());
            let w = r.gap.witness.unwrap();
            let ev_delta = ev(&c.laplacian(0).unwrap().0, &triv).unwrap();
            let shifted = ev_delta.sub(&QMatrix::identity(1).scale(&eps));
            assert!(quadratic_form(&shifted, &w) < Rat::zero());
        }
    }

    #[test]
    fn criteria_z3_cycle_reduced_at_one() {
        let c = compile(&z3_cycle_spec()).unwrap();
        let reg = UnitaryRep::regular(c.group().clone()).unwrap();
        let r = criteria_report(&c, 0, &reg, &rat_int(1)).unwrap();
        // Spectrum of Delta is {0, 3, 3}; Delta(Delta - 1) has {0, 6, 6}.
        assert!(r.full_reduced.pass);
        assert!(!r.gap.pass); // kernel is nonzero
        assert_eq!(r.dim_ker_delta, 1);
        assert!(r.consistent());
        // Epsilon above the spectral radius fails criterion (5) everywhere.
        let big = criteria_report(&c, 0, &reg, &rat_int(7)).unwrap();
        assert!(!big.gap.pass);
    }

    #[test]
    fn criteria_s3_gap_exists() {
        let c = compile(&s3_triangle_spec()).unwrap();
        let reg = UnitaryRep::regular(c.group().clone()).unwrap();
        let r = criteria_report(&c, 1, &reg, &rat(1, 4)).unwrap();
        assert!(r.gap.pass);
        assert!(r.gap_exists);
        assert_eq!(r.gap_found, Some(rat_int(3)));
        assert!(r.consistent());
    }

    #[test]
    fn random_chain_triples_satisfy_hodge_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..25 {
            let a = rng.gen_range(0..=6);
            let m = rng.gen_range(1..=7);
            let c = rng.gen_range(0..=6);
            let b_minus = QMatrix::from_fn(a, m, |_, _| rat_int(rng.gen_range(-2..=2)));
            let null = b_minus.kernel_rows();
            let mix = QMatrix::from_fn(null.rows(), c, |_, _| rat_int(rng.gen_range(-2..=2)));
            let b_plus = null.transpose().mul(&mix);
            assert!(b_minus.mul(&b_plus).is_zero());
            let report = hodge_from_operators(&b_minus, &b_plus).unwrap();
            assert!(report.checks.all(), "failed on {a}x{m}x{c}: {:?}", report.checks);
        }
    }
}
