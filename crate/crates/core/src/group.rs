//! Group element backends with canonical normal forms.
//!
//! Three backends are supported:
//!
//! * `Free` — reduced words in signed generators.
//! * `Rewriting` — words rewritten by a user-supplied string rewriting
//!   system (asserted confluent and terminating) on top of free
//!   cancellation. Every rule must strictly shorten a word or keep its
//!   length while decreasing it lexicographically, which makes rewriting
//!   terminating; a step budget converts any violation of the user's
//!   assertion into an error rather than a hang.
//! * `FinitePermutation` — permutations of `{0..m-1}` given by generator
//!   image arrays.
//!
//! Words are sequences of signed 1-based generator indices: `+i` is the
//! i-th generator, `-i` its inverse. Letters are ordered by generator index
//! with the positive letter first (`a < a^-1 < b < b^-1`), and canonical
//! element order is (word length, lexicographic) for word backends and
//! image-array lexicographic for permutations. Ball and enumeration output
//! is always sorted in this canonical order, so downstream constraint
//! systems and file formats are deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 50_000;
pub const DEFAULT_REWRITE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Free,
    FinitePermutation,
    Rewriting,
}

/// One rewrite rule `left -> right` over signed-generator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub left: Vec<i32>,
    pub right: Vec<i32>,
}

/// Immutable description of a group backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    kind: BackendKind,
    generators: Vec<String>,
    /// Generator image arrays for the finite-permutation backend.
    perm_images: Vec<Vec<usize>>,
    points: usize,
    rules: Vec<RewriteRule>,
    /// Named homomorphisms onto finite permutation groups, by generator
    /// images. Declared on word backends only.
    quotients: BTreeMap<String, Vec<Vec<usize>>>,
    element_cap: usize,
    rewrite_budget: usize,
}

/// Canonical form of a group element. Ordering is the canonical element
/// order described in the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupElement {
    Word(Vec<i32>),
    Perm(Vec<usize>),
}

/// Letter order key: generator index first, positive letter before inverse.
fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

fn word_cmp(a: &[i32], b: &[i32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let c = letter_key(*x).cmp(&letter_key(*y));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElement::Word(a), GroupElement::Word(b)) => word_cmp(a, b),
            (GroupElement::Perm(a), GroupElement::Perm(b)) => a.cmp(b),
            (GroupElement::Word(_), GroupElement::Perm(_)) => Ordering::Less,
            (GroupElement::Perm(_), GroupElement::Word(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Word(w) => w.is_empty(),
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &x)| i == x),
        }
    }

    /// Word length for word backends; used for support-radius heuristics.
    pub fn word_len(&self) -> Option<usize> {
        match self {
            GroupElement::Word(w) => Some(w.len()),
            GroupElement::Perm(_) => None,
        }
    }
}

fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn is_bijection(img: &[usize], points: usize) -> bool {
    if img.len() != points {
        return false;
    }
    let mut seen = vec![false; points];
    for &x in img {
        if x >= points || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a·b)(x) = a(b(x)); the left factor acts last.
    b.iter().map(|&x| a[x]).collect()
}

fn invert_perm(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Evaluates a signed word in given permutation images, left to right.
pub fn eval_word_in_perms(word: &[i32], images: &[Vec<usize>], points: usize) -> Result<Vec<usize>> {
    let mut acc: Vec<usize> = (0..points).collect();
    for &l in word {
        let idx = l.unsigned_abs() as usize;
        if l == 0 || idx > images.len() {
            return Err(Error::UnknownGenerator { index: l as i64, count: images.len() });
        }
        let img = &images[idx - 1];
        let step = if l > 0 { img.clone() } else { invert_perm(img) };
        acc = compose(&acc, &step);
    }
    Ok(acc)
}

impl GroupDescriptor {
    pub fn free(generators: Vec<String>) -> Result<Self> {
        validate_generators(&generators)?;
        Ok(GroupDescriptor {
            kind: BackendKind::Free,
            generators,
            perm_images: Vec::new(),
            points: 0,
            rules: Vec::new(),
            quotients: BTreeMap::new(),
            element_cap: DEFAULT_ELEMENT_CAP,
            rewrite_budget: DEFAULT_REWRITE_BUDGET,
        })
    }

    pub fn finite_permutation(generators: Vec<String>, images: Vec<Vec<usize>>) -> Result<Self> {
        validate_generators(&generators)?;
        if images.len() != generators.len() {
            return Err(Error::InvalidDescriptor {
                reason: format!(
                    "expected {} permutation images, got {}",
                    generators.len(),
                    images.len()
                ),
            });
        }
        let points = images.first().map_or(1, Vec::len);
        if points == 0 {
            return Err(Error::InvalidDescriptor {
                reason: "permutation images must act on at least one point".into(),
            });
        }
        for (g, img) in generators.iter().zip(&images) {
            if !is_bijection(img, points) {
                return Err(Error::InvalidDescriptor {
                    reason: format!("image of generator `{g}` is not a bijection of 0..{points}"),
                });
            }
        }
        Ok(GroupDescriptor {
            kind: BackendKind::FinitePermutation,
            generators,
            perm_images: images,
            points,
            rules: Vec::new(),
            quotients: BTreeMap::new(),
            element_cap: DEFAULT_ELEMENT_CAP,
            rewrite_budget: DEFAULT_REWRITE_BUDGET,
        })
    }

    pub fn rewriting(generators: Vec<String>, rules: Vec<RewriteRule>) -> Result<Self> {
        validate_generators(&generators)?;
        let n = generators.len();
        for (i, rule) in rules.iter().enumerate() {
            for &l in rule.left.iter().chain(&rule.right) {
                if l == 0 || l.unsigned_abs() as usize > n {
                    return Err(Error::UnknownGenerator { index: l as i64, count: n });
                }
            }
            if rule.left.is_empty() {
                return Err(Error::InvalidDescriptor {
                    reason: format!("rule {i} has an empty left-hand side"),
                });
            }
            let ok = match rule.right.len().cmp(&rule.left.len()) {
                Ordering::Less => true,
                Ordering::Equal => word_cmp(&rule.right, &rule.left) == Ordering::Less,
                Ordering::Greater => false,
            };
            if !ok {
                return Err(Error::InvalidDescriptor {
                    reason: format!(
                        "rule {i} must strictly shorten or preserve length with lexicographic decrease"
                    ),
                });
            }
        }
        Ok(GroupDescriptor {
            kind: BackendKind::Rewriting,
            generators,
            perm_images: Vec::new(),
            points: 0,
            rules,
            quotients: BTreeMap::new(),
            element_cap: DEFAULT_ELEMENT_CAP,
            rewrite_budget: DEFAULT_REWRITE_BUDGET,
        })
    }

    /// Declares a named quotient homomorphism by generator images.
    /// Quotients live on word backends; permutation elements carry no word
    /// to push forward.
    pub fn with_quotient(mut self, name: &str, images: Vec<Vec<usize>>) -> Result<Self> {
        if self.kind == BackendKind::FinitePermutation {
            return Err(Error::InvalidDescriptor {
                reason: "quotient homomorphisms are supported on word backends only".into(),
            });
        }
        if images.len() != self.generators.len() {
            return Err(Error::InvalidDescriptor {
                reason: format!(
                    "quotient `{name}`: expected {} images, got {}",
                    self.generators.len(),
                    images.len()
                ),
            });
        }
        let points = images.first().map_or(1, Vec::len);
        for img in &images {
            if !is_bijection(img, points) {
                return Err(Error::InvalidDescriptor {
                    reason: format!("quotient `{name}` image is not a bijection"),
                });
            }
        }
        self.quotients.insert(name.to_string(), images);
        Ok(self)
    }

    pub fn with_element_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap;
        self
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn perm_images(&self) -> &[Vec<usize>] {
        &self.perm_images
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn quotient_names(&self) -> impl Iterator<Item = &str> {
        self.quotients.keys().map(String::as_str)
    }

    pub fn quotient_images(&self, name: &str) -> Result<&Vec<Vec<usize>>> {
        self.quotients.get(name).ok_or_else(|| Error::UnknownHom { name: name.to_string() })
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    pub fn identity(&self) -> GroupElement {
        match self.kind {
            BackendKind::Free | BackendKind::Rewriting => GroupElement::Word(Vec::new()),
            BackendKind::FinitePermutation => GroupElement::Perm((0..self.points).collect()),
        }
    }

    fn check_letters(&self, word: &[i32]) -> Result<()> {
        let n = self.generators.len();
        for &l in word {
            if l == 0 || l.unsigned_abs() as usize > n {
                return Err(Error::UnknownGenerator { index: l as i64, count: n });
            }
        }
        Ok(())
    }

    /// Canonicalizes a signed-generator word. Idempotent.
    pub fn normalize(&self, word: &[i32]) -> Result<GroupElement> {
        self.check_letters(word)?;
        match self.kind {
            BackendKind::Free => Ok(GroupElement::Word(free_reduce(word))),
            BackendKind::Rewriting => Ok(GroupElement::Word(self.rewrite_to_normal_form(word)?)),
            BackendKind::FinitePermutation => {
                Ok(GroupElement::Perm(eval_word_in_perms(word, &self.perm_images, self.points)?))
            }
        }
    }

    /// Leftmost-position, first-rule rewriting on top of free cancellation.
    /// Every validated rule strictly decreases (length, lex), so this
    /// terminates; the budget guards against bad descriptors nonetheless.
    fn rewrite_to_normal_form(&self, word: &[i32]) -> Result<Vec<i32>> {
        let mut w = free_reduce(word);
        let mut steps = 0usize;
        'scan: loop {
            for pos in 0..w.len() {
                for rule in &self.rules {
                    let end = pos + rule.left.len();
                    if end <= w.len() && w[pos..end] == rule.left[..] {
                        steps += 1;
                        if steps > self.rewrite_budget {
                            return Err(Error::RuleLoopGuard { budget: self.rewrite_budget });
                        }
                        let mut next = Vec::with_capacity(w.len());
                        next.extend_from_slice(&w[..pos]);
                        next.extend_from_slice(&rule.right);
                        next.extend_from_slice(&w[end..]);
                        w = free_reduce(&next);
                        continue 'scan;
                    }
                }
            }
            return Ok(w);
        }
    }

    fn check_backend(&self, a: &GroupElement) -> Result<()> {
        let ok = match (self.kind, a) {
            (BackendKind::Free | BackendKind::Rewriting, GroupElement::Word(_)) => true,
            (BackendKind::FinitePermutation, GroupElement::Perm(p)) => p.len() == self.points,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BackendMismatch)
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_backend(a)?;
        self.check_backend(b)?;
        match (a, b) {
            (GroupElement::Word(x), GroupElement::Word(y)) => {
                let mut w = x.clone();
                w.extend_from_slice(y);
                self.normalize(&w)
            }
            (GroupElement::Perm(x), GroupElement::Perm(y)) => Ok(GroupElement::Perm(compose(x, y))),
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_backend(a)?;
        match a {
            GroupElement::Word(w) => {
                let rev: Vec<i32> = w.iter().rev().map(|&l| -l).collect();
                self.normalize(&rev)
            }
            GroupElement::Perm(p) => Ok(GroupElement::Perm(invert_perm(p))),
        }
    }

    /// The generator letters and their inverses, paired with their canonical
    /// elements, in canonical letter order.
    fn letter_elements(&self) -> Result<Vec<GroupElement>> {
        let mut out = Vec::with_capacity(2 * self.generators.len());
        for i in 0..self.generators.len() {
            let l = (i + 1) as i32;
            out.push(self.normalize(&[l])?);
            out.push(self.normalize(&[-l])?);
        }
        Ok(out)
    }

    /// All products of at most `radius` generators and inverses, in
    /// canonical order. Contains the identity.
    pub fn ball(&self, radius: usize) -> Result<Vec<GroupElement>> {
        self.ball_capped(radius, self.element_cap)
    }

    pub fn ball_capped(&self, radius: usize, cap: usize) -> Result<Vec<GroupElement>> {
        let letters = self.letter_elements()?;
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier: Vec<GroupElement> = vec![self.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &frontier {
                for l in &letters {
                    let y = self.mul(x, l)?;
                    if seen.insert(y.clone()) {
                        if seen.len() > cap {
                            return Err(Error::SizeCapExceeded { cap });
                        }
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(seen.into_iter().collect())
    }

    /// Every element of a finite backend exactly once (closure of repeated
    /// ball growth), in canonical order.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        let letters = self.letter_elements()?;
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier: Vec<GroupElement> = vec![self.identity()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for l in &letters {
                    let y = self.mul(x, l)?;
                    if seen.insert(y.clone()) {
                        if seen.len() > self.element_cap {
                            return Err(Error::NotFiniteUnderCap { cap: self.element_cap });
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(seen.into_iter().collect())
    }

    /// Shortest canonical word for each element of a finite backend,
    /// discovered by breadth-first search in canonical letter order.
    pub fn factorization_words(&self) -> Result<BTreeMap<GroupElement, Vec<i32>>> {
        let mut table: BTreeMap<GroupElement, Vec<i32>> = BTreeMap::new();
        table.insert(self.identity(), Vec::new());
        let mut frontier: Vec<GroupElement> = vec![self.identity()];
        let letters: Vec<i32> = (0..self.generators.len() as i32).flat_map(|i| [i + 1, -(i + 1)]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                let wx = table[x].clone();
                for &l in &letters {
                    let y = self.mul(x, &self.normalize(&[l])?)?;
                    if !table.contains_key(&y) {
                        if table.len() >= self.element_cap {
                            return Err(Error::NotFiniteUnderCap { cap: self.element_cap });
                        }
                        let mut wy = wx.clone();
                        wy.push(l);
                        table.insert(y.clone(), wy);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(table)
    }

    /// A word evaluating to `a` in this backend: the canonical word itself
    /// for word backends, a breadth-first factorization for permutations.
    pub fn element_word(&self, a: &GroupElement) -> Result<Vec<i32>> {
        self.check_backend(a)?;
        match a {
            GroupElement::Word(w) => Ok(w.clone()),
            GroupElement::Perm(_) => {
                let table = self.factorization_words()?;
                table.get(a).cloned().ok_or_else(|| Error::InvalidDescriptor {
                    reason: "element lies outside the subgroup generated by the declared generators"
                        .into(),
                })
            }
        }
    }

    /// Applies the named quotient homomorphism to an element.
    pub fn push_forward(&self, a: &GroupElement, hom: &str) -> Result<GroupElement> {
        self.check_backend(a)?;
        let images = self.quotient_images(hom)?;
        let points = images.first().map_or(1, Vec::len);
        match a {
            GroupElement::Word(w) => Ok(GroupElement::Perm(eval_word_in_perms(w, images, points)?)),
            GroupElement::Perm(_) => Err(Error::BackendMismatch),
        }
    }

    /// The finite permutation group that a named quotient maps onto.
    pub fn quotient_group(&self, hom: &str) -> Result<GroupDescriptor> {
        let images = self.quotient_images(hom)?.clone();
        GroupDescriptor::finite_permutation(self.generators.clone(), images)
    }

    /// Display form of an element using generator names.
    pub fn display_element(&self, a: &GroupElement) -> String {
        match a {
            GroupElement::Word(w) => {
                if w.is_empty() {
                    return "e".to_string();
                }
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < w.len() {
                    let l = w[i];
                    let mut run = 1;
                    while i + run < w.len() && w[i + run] == l {
                        run += 1;
                    }
                    let name = &self.generators[(l.unsigned_abs() - 1) as usize];
                    let exp = if l < 0 { -(run as i64) } else { run as i64 };
                    if exp == 1 {
                        parts.push(name.clone());
                    } else {
                        parts.push(format!("{name}^{exp}"));
                    }
                    i += run;
                }
                parts.join("*")
            }
            GroupElement::Perm(p) => display_cycles(p),
        }
    }
}

fn display_cycles(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

fn validate_generators(generators: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for g in generators {
        if g.is_empty() {
            return Err(Error::InvalidDescriptor { reason: "empty generator name".into() });
        }
        if !seen.insert(g) {
            return Err(Error::InvalidDescriptor {
                reason: format!("duplicate generator name `{g}`"),
            });
        }
    }
    Ok(())
}

/// The standard cyclic-group rewriting presentation used across the test
/// suite: generators `a` with `aa -> a^-1` and `a^-1 a^-1 -> a`.
pub fn cyclic_rewriting(order: u32) -> Result<GroupDescriptor> {
    assert!(order >= 2);
    // For order n, canonical forms are a^k for |k| <= n/2; the rules fold
    // long runs into the shorter signed form.
    let half = (order / 2) as usize;
    let up: Vec<i32> = vec![1; half + 1];
    let down: Vec<i32> = vec![-1; (order as usize) - half - 1];
    let rule1 = RewriteRule { left: up, right: down };
    let half_inv = ((order - 1) / 2) as usize;
    let dn: Vec<i32> = vec![-1; half_inv + 1];
    let un: Vec<i32> = vec![1; (order as usize) - half_inv - 1];
    let rule2 = RewriteRule { left: dn, right: un };
    GroupDescriptor::rewriting(vec!["a".into()], vec![rule1, rule2])
}
