//! Sparse exact arithmetic in the rational group algebra and in rectangular
//! matrices over it.
//!
//! A [`GaElem`] is a finitely supported map from canonical group elements to
//! nonzero rationals; the product is convolution. The star operation sends
//! the coefficient of `g` to `g^-1` and extends to matrices by transposing
//! and starring entries. Matrices are stored dense by position (orbit counts
//! are small) while each entry is sparse (group supports grow).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::rat::{rat_sqrt_exact, Rat};

/// Element of the rational group algebra over a fixed backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaElem {
    backend: Arc<GroupDescriptor>,
    terms: BTreeMap<GroupElement, Rat>,
}

fn same_backend(a: &Arc<GroupDescriptor>, b: &Arc<GroupDescriptor>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::BackendMismatch)
    }
}

impl GaElem {
    pub fn zero(backend: Arc<GroupDescriptor>) -> Self {
        GaElem { backend, terms: BTreeMap::new() }
    }

    /// The algebra unit: the delta function at the identity.
    pub fn one(backend: Arc<GroupDescriptor>) -> Self {
        let e = backend.identity();
        Self::delta(backend, e)
    }

    pub fn delta(backend: Arc<GroupDescriptor>, g: GroupElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, Rat::one());
        GaElem { backend, terms }
    }

    pub fn scalar(backend: Arc<GroupDescriptor>, c: Rat) -> Self {
        let mut out = Self::one(backend);
        out.scale_in_place(&c);
        out
    }

    pub fn from_terms(
        backend: Arc<GroupDescriptor>,
        terms: impl IntoIterator<Item = (GroupElement, Rat)>,
    ) -> Self {
        let mut out = Self::zero(backend);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn backend(&self) -> &Arc<GroupDescriptor> {
        &self.backend
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GroupElement) -> Rat {
        self.terms.get(g).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Rat)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, g: GroupElement, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GaElem) -> Result<GaElem> {
        same_backend(&self.backend, &other.backend)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GaElem) -> Result<GaElem> {
        same_backend(&self.backend, &other.backend)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> GaElem {
        let terms = self.terms.iter().map(|(g, c)| (g.clone(), -c.clone())).collect();
        GaElem { backend: self.backend.clone(), terms }
    }

    pub fn scale(&self, c: &Rat) -> GaElem {
        let mut out = self.clone();
        out.scale_in_place(c);
        out
    }

    fn scale_in_place(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// Convolution product: `(ab)(g) = sum_h a(h) b(h^-1 g)`.
    pub fn mul(&self, other: &GaElem) -> Result<GaElem> {
        same_backend(&self.backend, &other.backend)?;
        let mut out = GaElem::zero(self.backend.clone());
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let gh = self.backend.mul(g, h)?;
                out.add_term(gh, a * b);
            }
        }
        Ok(out)
    }

    /// The star anti-involution: coefficient of `g` becomes coefficient of
    /// `g^-1`.
    pub fn star(&self) -> Result<GaElem> {
        let mut out = GaElem::zero(self.backend.clone());
        for (g, c) in &self.terms {
            out.add_term(self.backend.invert(g)?, c.clone());
        }
        Ok(out)
    }

    /// Largest canonical word length in the support (word backends).
    pub fn support_radius(&self) -> Option<usize> {
        let mut best = 0;
        for g in self.terms.keys() {
            best = best.max(g.word_len()?);
        }
        Some(best)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = c.is_negative();
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            let gname = self.backend.display_element(g);
            if g.is_identity() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&gname);
            } else {
                out.push_str(&format!("{mag}*{gname}"));
            }
        }
        out
    }
}

/// Rectangular matrix over the group algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaMatrix {
    backend: Arc<GroupDescriptor>,
    rows: usize,
    cols: usize,
    entries: Vec<GaElem>,
}

impl GaMatrix {
    pub fn zero(backend: Arc<GroupDescriptor>, rows: usize, cols: usize) -> Self {
        let entries = (0..rows * cols).map(|_| GaElem::zero(backend.clone())).collect();
        GaMatrix { backend, rows, cols, entries }
    }

    /// Identity matrix: delta at the group identity on the diagonal.
    pub fn identity(backend: Arc<GroupDescriptor>, k: usize) -> Self {
        let mut m = Self::zero(backend.clone(), k, k);
        for i in 0..k {
            *m.entry_mut(i, i) = GaElem::one(backend.clone());
        }
        m
    }

    pub fn from_entries(
        backend: Arc<GroupDescriptor>,
        rows: usize,
        cols: usize,
        entries: Vec<GaElem>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimMismatch {
                left: format!("{rows}x{cols}"),
                right: format!("{} entries", entries.len()),
            });
        }
        for e in &entries {
            same_backend(&backend, &e.backend)?;
        }
        Ok(GaMatrix { backend, rows, cols, entries })
    }

    pub fn backend(&self) -> &Arc<GroupDescriptor> {
        &self.backend
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaElem {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut GaElem {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &GaElem> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaElem::is_zero)
    }

    fn check_same_shape(&self, other: &GaMatrix) -> Result<()> {
        same_backend(&self.backend, &other.backend)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GaMatrix) -> Result<GaMatrix> {
        self.check_same_shape(other)?;
        let entries: Result<Vec<GaElem>> =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(GaMatrix { backend: self.backend.clone(), rows: self.rows, cols: self.cols, entries: entries? })
    }

    pub fn sub(&self, other: &GaMatrix) -> Result<GaMatrix> {
        self.check_same_shape(other)?;
        let entries: Result<Vec<GaElem>> =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect();
        Ok(GaMatrix { backend: self.backend.clone(), rows: self.rows, cols: self.cols, entries: entries? })
    }

    pub fn scale(&self, c: &Rat) -> GaMatrix {
        let entries = self.entries.iter().map(|e| e.scale(c)).collect();
        GaMatrix { backend: self.backend.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &GaMatrix) -> Result<GaMatrix> {
        same_backend(&self.backend, &other.backend)?;
        if self.cols != other.rows {
            return Err(Error::DimMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = GaMatrix::zero(self.backend.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if !b.is_zero() {
                        let prod = a.mul(b)?;
                        *out.entry_mut(i, j) = out.entry(i, j).add(&prod)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Star: transpose and star every entry; maps k x l to l x k.
    pub fn star(&self) -> Result<GaMatrix> {
        let mut out = GaMatrix::zero(self.backend.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(j, i) = self.entry(i, j).star()?;
            }
        }
        Ok(out)
    }

    /// True iff the matrix is square and equals its own star.
    pub fn is_hermitian(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Ok(false);
        }
        Ok(self.star()? == *self)
    }

    /// Largest support word length over all entries (word backends).
    pub fn support_radius(&self) -> Option<usize> {
        let mut best = 0;
        for e in &self.entries {
            best = best.max(e.support_radius()?);
        }
        Some(best)
    }
}

/// Writes `x* x` for a rectangular `x` (k x l) explicitly as a sum of `k`
/// squares of square matrices: the i-th term places the i-th row of `x` as
/// the first row of an l x l matrix and is zero elsewhere.
pub fn rect_sos(x: &GaMatrix) -> Result<Vec<GaMatrix>> {
    let l = x.cols();
    let mut out = Vec::with_capacity(x.rows());
    for i in 0..x.rows() {
        let mut y = GaMatrix::zero(x.backend().clone(), l, l);
        for j in 0..l {
            *y.entry_mut(0, j) = x.entry(i, j).clone();
        }
        out.push(y);
    }
    Ok(out)
}

/// Expands a weighted sum `sum d_j y_j* y_j` (all `d_j > 0`) into a plain
/// sum of squares `sum x_i* x_i`, exactly.
///
/// A weight that is a rational square `r^2` contributes the single term
/// `r y`; otherwise `d = p/q` in lowest terms contributes `p q` copies of
/// `(1/q) y`, using the expansion of a positive rational into `p q` squares
/// of `1/q`.
pub fn expand_weighted_sos(terms: &[(Rat, GaMatrix)]) -> Result<Vec<GaMatrix>> {
    let mut out = Vec::new();
    for (d, y) in terms {
        if !d.is_positive() {
            return Err(Error::NonpositiveWeight { weight: d.to_string() });
        }
        if let Some(r) = rat_sqrt_exact(d) {
            out.push(y.scale(&r));
            continue;
        }
        let p = d.numer().clone();
        let q = d.denom().clone();
        let copies = &p * &q;
        let copies: usize = copies.try_into().map_err(|_| Error::NonpositiveWeight {
            weight: format!("{d} (expansion would need more than usize::MAX terms)"),
        })?;
        let scaled = y.scale(&Rat::new(BigInt::one(), q));
        out.extend(std::iter::repeat_with(|| scaled.clone()).take(copies));
    }
    Ok(out)
}

/// `sum_i x_i* x_i`, the positivity-cone combination of a list of matrices.
pub fn sum_of_squares(xs: &[GaMatrix], backend: &Arc<GroupDescriptor>, k: usize) -> Result<GaMatrix> {
    let mut acc = GaMatrix::zero(backend.clone(), k, k);
    for x in xs {
        acc = acc.add(&x.star()?.mul(x)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_rewriting;
    use crate::rat::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z_line() -> Arc<GroupDescriptor> {
        Arc::new(GroupDescriptor::free(vec!["t".into()]).unwrap())
    }

    fn z3() -> Arc<GroupDescriptor> {
        Arc::new(cyclic_rewriting(3).unwrap())
    }

    fn elem(b: &Arc<GroupDescriptor>, terms: &[(&[i32], (i64, i64))]) -> GaElem {
        GaElem::from_terms(
            b.clone(),
            terms.iter().map(|(w, (p, q))| (b.normalize(w).unwrap(), rat(*p, *q))),
        )
    }

    /// Independent convolution oracle: expand all cross terms into a list,
    /// then collect by sorting, with no map-based accumulation.
    fn naive_mul(a: &GaElem, b: &GaElem) -> GaElem {
        let backend = a.backend().clone();
        let mut raw: Vec<(GroupElement, Rat)> = Vec::new();
        for (g, ca) in a.terms() {
            for (h, cb) in b.terms() {
                raw.push((backend.mul(g, h).unwrap(), ca * cb));
            }
        }
        raw.sort_by(|(g, _), (h, _)| g.cmp(h));
        let mut out: Vec<(GroupElement, Rat)> = Vec::new();
        for (g, c) in raw {
            match out.last_mut() {
                Some((h, acc)) if *h == g => *acc += c,
                _ => out.push((g, c)),
            }
        }
        GaElem::from_terms(backend, out)
    }

    fn random_elem(b: &Arc<GroupDescriptor>, rng: &mut ChaCha8Rng, max_terms: usize) -> GaElem {
        let n = b.generator_count().max(1) as i32;
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(0..=max_terms) {
            let len = rng.gen_range(0..4);
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
            let g = b.normalize(&w).unwrap();
            terms.push((g, rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))));
        }
        GaElem::from_terms(b.clone(), terms)
    }

    #[test]
    fn delta_products_follow_group_law() {
        let b = z_line();
        let t = GaElem::delta(b.clone(), b.normalize(&[1]).unwrap());
        let t_inv = GaElem::delta(b.clone(), b.normalize(&[-1]).unwrap());
        assert_eq!(t.mul(&t_inv).unwrap(), GaElem::one(b.clone()));
        // f · delta_e = f
        let f = elem(&b, &[(&[1], (2, 1)), (&[], (-1, 1))]);
        assert_eq!(f.mul(&GaElem::one(b.clone())).unwrap(), f);
    }

    #[test]
    fn hand_expansion_in_z() {
        // (t - 1)(t^-1 - 1) = 2 - t - t^-1
        let b = z_line();
        let x = elem(&b, &[(&[1], (1, 1)), (&[], (-1, 1))]);
        let y = elem(&b, &[(&[-1], (1, 1)), (&[], (-1, 1))]);
        let expected = elem(&b, &[(&[], (2, 1)), (&[1], (-1, 1)), (&[-1], (-1, 1))]);
        assert_eq!(x.mul(&y).unwrap(), expected);
    }

    #[test]
    fn star_examples() {
        let b = z_line();
        // star(2 - t) = 2 - t^-1
        let f = elem(&b, &[(&[], (2, 1)), (&[1], (-1, 1))]);
        let expected = elem(&b, &[(&[], (2, 1)), (&[-1], (-1, 1))]);
        assert_eq!(f.star().unwrap(), expected);
        assert_eq!(GaElem::one(b.clone()).star().unwrap(), GaElem::one(b));
    }

    #[test]
    fn convolution_matches_oracle_and_star_laws() {
        let backends = [z_line(), z3()];
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for b in &backends {
            for _ in 0..100 {
                let x = random_elem(b, &mut rng, 4);
                let y = random_elem(b, &mut rng, 4);
                let via_map = x.mul(&y).unwrap();
                assert_eq!(via_map, naive_mul(&x, &y));
                // star(xy) = star(y) star(x)
                assert_eq!(
                    via_map.star().unwrap(),
                    y.star().unwrap().mul(&x.star().unwrap()).unwrap()
                );
                // star is involutive
                assert_eq!(x.star().unwrap().star().unwrap(), x);
                // bilinearity over addition
                let z = random_elem(b, &mut rng, 4);
                let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
                let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn backend_mismatch_is_rejected() {
        let a = GaElem::one(z_line());
        let b = GaElem::one(z3());
        assert!(matches!(a.mul(&b), Err(Error::BackendMismatch)));
    }

    fn random_matrix(
        b: &Arc<GroupDescriptor>,
        rng: &mut ChaCha8Rng,
        rows: usize,
        cols: usize,
    ) -> GaMatrix {
        let entries = (0..rows * cols).map(|_| random_elem(b, rng, 2)).collect();
        GaMatrix::from_entries(b.clone(), rows, cols, entries).unwrap()
    }

    #[test]
    fn matrix_identity_and_associativity() {
        let b = z_line();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&b, &mut rng, 2, 3);
        let i3 = GaMatrix::identity(b.clone(), 3);
        assert_eq!(a.mul(&i3).unwrap(), a);
        // (AB)C = A(BC) on 2x3 · 3x2 · 2x2, both orders computed separately.
        let m2 = random_matrix(&b, &mut rng, 3, 2);
        let m3 = random_matrix(&b, &mut rng, 2, 2);
        let left = a.mul(&m2).unwrap().mul(&m3).unwrap();
        let right = a.mul(&m2.mul(&m3).unwrap()).unwrap();
        assert_eq!(left, right);
        // star reverses products
        let ab = a.mul(&m2).unwrap();
        assert_eq!(ab.star().unwrap(), m2.star().unwrap().mul(&a.star().unwrap()).unwrap());
        // 1x1 multiplication reduces to the element product
        let x = random_elem(&b, &mut rng, 3);
        let y = random_elem(&b, &mut rng, 3);
        let mx = GaMatrix::from_entries(b.clone(), 1, 1, vec![x.clone()]).unwrap();
        let my = GaMatrix::from_entries(b.clone(), 1, 1, vec![y.clone()]).unwrap();
        assert_eq!(mx.mul(&my).unwrap().entry(0, 0), &x.mul(&y).unwrap());
    }

    #[test]
    fn rect_sos_identity_all_shapes() {
        let backends = [z_line(), z3()];
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for b in &backends {
            for (k, l) in [(1, 1), (1, 2), (2, 3), (3, 2), (2, 2)] {
                let x = random_matrix(b, &mut rng, k, l);
                let ys = rect_sos(&x).unwrap();
                assert_eq!(ys.len(), k);
                let sum = sum_of_squares(&ys, b, l).unwrap();
                assert_eq!(sum, x.star().unwrap().mul(&x).unwrap());
            }
        }
    }

    #[test]
    fn rect_sos_trivial_group_example() {
        // x = [1 1] over the trivial group: x* x = [[1,1],[1,1]],
        // y_1 = [[1,1],[0,0]] and y_1* y_1 reproduces it.
        let b = Arc::new(GroupDescriptor::free(vec![]).unwrap());
        let one = GaElem::one(b.clone());
        let x = GaMatrix::from_entries(b.clone(), 1, 2, vec![one.clone(), one.clone()]).unwrap();
        let ys = rect_sos(&x).unwrap();
        assert_eq!(ys.len(), 1);
        assert_eq!(ys[0].entry(0, 0), &one);
        assert_eq!(ys[0].entry(0, 1), &one);
        assert!(ys[0].entry(1, 0).is_zero());
        let xx = x.star().unwrap().mul(&x).unwrap();
        assert_eq!(ys[0].star().unwrap().mul(&ys[0]).unwrap(), xx);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(xx.entry(i, j), &one);
            }
        }
    }

    #[test]
    fn weighted_sos_expansion() {
        let b = z_line();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let y = random_matrix(&b, &mut rng, 1, 2);
        // d = 4 is a perfect square: single term 2y.
        let out = expand_weighted_sos(&[(rat_int(4), y.clone())]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0], y.scale(&rat_int(2)));
        // d = 1/2: two copies of y/2.
        let out = expand_weighted_sos(&[(rat(1, 2), y.clone())]).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], y.scale(&rat(1, 2)));
        // d = 3: three copies of y.
        let out = expand_weighted_sos(&[(rat_int(3), y.clone())]).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out[0], y);
        // nonpositive weights are rejected
        assert!(matches!(
            expand_weighted_sos(&[(rat_int(0), y.clone())]),
            Err(Error::NonpositiveWeight { .. })
        ));
        // exactness of the expansion on random weighted sums
        for _ in 0..20 {
            let terms: Vec<(Rat, GaMatrix)> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    let d = rat(rng.gen_range(1..=6), rng.gen_range(1..=4));
                    (d, random_matrix(&b, &mut rng, 1, 2))
                })
                .collect();
            let expanded = expand_weighted_sos(&terms).unwrap();
            let direct = {
                let mut acc = GaMatrix::zero(b.clone(), 2, 2);
                for (d, y) in &terms {
                    acc = acc.add(&y.star().unwrap().mul(y).unwrap().scale(d)).unwrap();
                }
                acc
            };
            assert_eq!(sum_of_squares(&expanded, &b, 2).unwrap(), direct);
        }
    }

    #[test]
    fn hermitian_checks() {
        let b = z_line();
        // 2 - t - t^-1 is Hermitian.
        let lap = elem(&b, &[(&[], (2, 1)), (&[1], (-1, 1)), (&[-1], (-1, 1))]);
        let m = GaMatrix::from_entries(b.clone(), 1, 1, vec![lap]).unwrap();
        assert!(m.is_hermitian().unwrap());
        // delta_t alone is not.
        let t = GaElem::delta(b.clone(), b.normalize(&[1]).unwrap());
        let mt = GaMatrix::from_entries(b.clone(), 1, 1, vec![t]).unwrap();
        assert!(!mt.is_hermitian().unwrap());
        // A* A is always Hermitian.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let a = random_matrix(&b, &mut rng, 2, 2);
            assert!(a.star().unwrap().mul(&a).unwrap().is_hermitian().unwrap());
        }
    }

    #[test]
    fn display_reads_naturally() {
        let b = z_line();
        let lap = elem(&b, &[(&[], (2, 1)), (&[1], (-1, 1)), (&[-1], (-1, 1))]);
        assert_eq!(lap.display(), "2 - t - t^-1");
        assert_eq!(GaElem::zero(b).display(), "0");
    }
}
