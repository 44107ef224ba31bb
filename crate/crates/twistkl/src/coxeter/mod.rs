//! Coxeter groups with a diagram involution.
//!
//! A [`Group`] is built once from a [`CoxeterMatrix`] and a compatible
//! [`StarMap`], enumerating either the whole group (finite type) or all
//! elements up to a length bound plus a safety margin (infinite type).
//! After construction it is immutable and cheap to query: lengths,
//! descents, products by a generator, inverses, the diagram involution,
//! Bruhat order, and the combinatorics of twisted involutions — the
//! elements with `w⁻¹ = w*` — including their case classification and
//! the one-letter moves that generate them from the identity.

mod build;
mod realize;
mod recognize;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use recognize::{named_matrix, recognize, TypeInfo};

/// Off-diagonal Coxeter matrix entry standing for an infinite bond.
pub const INFINITY: u32 = 0;

/// Sentinel id for products that leave the enumerated region.
pub(crate) const OUTSIDE: u32 = u32::MAX;

/// Dense handle for a group element. Ids are assigned in discovery
/// order of a breadth-first search, so they are sorted by length first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Position of a twisted involution `z` relative to a generator `s`:
/// whether `s` lengthens `z`, and whether `sz = z s*` (commuting case,
/// one-letter move) or not (skew case, two-letter move).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseClass {
    AscentCommute,
    AscentSkew,
    DescentCommute,
    DescentSkew,
}

impl CaseClass {
    pub fn is_ascent(self) -> bool {
        matches!(self, CaseClass::AscentCommute | CaseClass::AscentSkew)
    }

    pub fn commutes(self) -> bool {
        matches!(self, CaseClass::AscentCommute | CaseClass::DescentCommute)
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseClass::AscentCommute => "ascent-commute",
            CaseClass::AscentSkew => "ascent-skew",
            CaseClass::DescentCommute => "descent-commute",
            CaseClass::DescentSkew => "descent-skew",
        }
    }
}

/// Symmetric matrix of bond orders: 1 on the diagonal, entries ≥ 2 or
/// [`INFINITY`] off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<CoxeterMatrix> {
        let rank = rows.len();
        if rank == 0 || rank > 32 {
            return Err(Error::InvalidMatrix(format!("rank {rank} out of range 1..=32")));
        }
        let mut entries = vec![0u32; rank * rank];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                entries[i * rank + j] = m;
            }
        }
        let mat = CoxeterMatrix { rank, entries };
        mat.validate()?;
        Ok(mat)
    }

    /// Build from bonds `(i, j, m)`; unlisted off-diagonal pairs get 2.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, u32)]) -> Result<CoxeterMatrix> {
        if rank == 0 || rank > 32 {
            return Err(Error::InvalidMatrix(format!("rank {rank} out of range 1..=32")));
        }
        let mut entries = vec![2u32; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        for &(i, j, m) in edges {
            if i >= rank || j >= rank || i == j {
                return Err(Error::InvalidMatrix(format!("bad bond ({i}, {j})")));
            }
            entries[i * rank + j] = m;
            entries[j * rank + i] = m;
        }
        let mat = CoxeterMatrix { rank, entries };
        mat.validate()?;
        Ok(mat)
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            if self.entries[i * n + i] != 1 {
                return Err(Error::InvalidMatrix(format!("diagonal entry at {} is not 1", i + 1)));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = self.entries[i * n + j];
                if m == 1 {
                    return Err(Error::InvalidMatrix(format!(
                        "off-diagonal entry 1 at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if m != self.entries[j * n + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bond order between generators `i` and `j` ([`INFINITY`] = ∞).
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }
}

/// Involutive permutation of the generators preserving bond orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarMap {
    perm: Vec<usize>,
}

impl StarMap {
    pub fn identity(rank: usize) -> StarMap {
        StarMap { perm: (0..rank).collect() }
    }

    /// From 0-based images; must be an involutive permutation.
    pub fn from_perm(perm: Vec<usize>) -> Result<StarMap> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidStar("not a permutation".into()));
            }
            seen[p] = true;
        }
        for s in 0..n {
            if perm[perm[s]] != s {
                return Err(Error::InvalidStar(format!(
                    "not an involution at generator {}",
                    s + 1
                )));
            }
        }
        Ok(StarMap { perm })
    }

    /// Check compatibility with a matrix: same rank, bonds preserved.
    pub fn validate(&self, m: &CoxeterMatrix) -> Result<()> {
        if self.perm.len() != m.rank() {
            return Err(Error::InvalidStar(format!(
                "permutation of {} generators given for rank {}",
                self.perm.len(),
                m.rank()
            )));
        }
        for i in 0..m.rank() {
            for j in 0..m.rank() {
                if m.entry(self.perm[i], self.perm[j]) != m.entry(i, j) {
                    return Err(Error::InvalidStar(format!(
                        "bond order not preserved at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, s: usize) -> usize {
        self.perm[s]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }
}

/// A frozen Coxeter group (or a ball of one around the identity).
///
/// All queries are read-only; the structure is `Send + Sync` and can be
/// shared freely across threads.
#[derive(Debug)]
pub struct Group {
    matrix: CoxeterMatrix,
    star: StarMap,
    info: TypeInfo,
    rank: usize,
    /// The caller's bound, for infinite groups.
    requested_bound: Option<u32>,
    /// Enumeration cap = requested bound + margin; `None` = whole group.
    cap: Option<u32>,
    length: Vec<u32>,
    rdesc: Vec<u32>,
    ldesc: Vec<u32>,
    inverse: Vec<u32>,
    star_of: Vec<u32>,
    twisted: Vec<bool>,
    rmul: Vec<u32>,
    lmul: Vec<u32>,
    level_start: Vec<u32>,
}

impl Group {
    /// Enumerate the group. Finite types are enumerated whole (the
    /// bound is ignored); infinite ones require `length_bound` and are
    /// enumerated a few levels past it so that short excursions — case
    /// classification, one- and two-letter moves — never fall off the
    /// edge for elements within the bound.
    pub fn build(
        matrix: CoxeterMatrix,
        star: StarMap,
        length_bound: Option<u32>,
    ) -> Result<Group> {
        build::build_group(matrix, star, length_bound)
    }

    /// Build a named type ([`named_matrix`]) with the identity star.
    pub fn of_type(name: &str) -> Result<Group> {
        let m = named_matrix(name)?;
        let star = StarMap::identity(m.rank());
        Group::build(m, star, None)
    }

    /// Build a named type with the star given by 0-based images.
    pub fn of_type_with_star(name: &str, perm: Vec<usize>) -> Result<Group> {
        let m = named_matrix(name)?;
        Group::build(m, StarMap::from_perm(perm)?, None)
    }

    #[cfg(test)]
    pub(crate) fn build_forced(
        matrix: CoxeterMatrix,
        star: StarMap,
        length_bound: Option<u32>,
        realization: realize::Realization,
    ) -> Result<Group> {
        build::build_with_realization(matrix, star, length_bound, realization)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn star_map(&self) -> &StarMap {
        &self.star
    }

    pub fn type_info(&self) -> &TypeInfo {
        &self.info
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn num_elements(&self) -> usize {
        self.length.len()
    }

    /// True when the whole (finite) group is enumerated.
    pub fn is_whole_group(&self) -> bool {
        self.cap.is_none()
    }

    /// The caller-requested bound, when one gates the enumeration.
    pub fn length_bound(&self) -> Option<u32> {
        self.requested_bound
    }

    /// Largest length present in the enumeration.
    pub fn max_enumerated_length(&self) -> u32 {
        (self.level_start.len() - 2) as u32
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    /// Generators carry ids 1..=rank in generator order.
    #[inline]
    pub fn generator(&self, s: usize) -> ElementId {
        debug_assert!(s < self.rank);
        ElementId(s as u32 + 1)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.num_elements() as u32).map(ElementId)
    }

    /// All elements of length ≤ `l`, in (length, id) order — a prefix
    /// of the id range.
    pub fn elements_up_to(&self, l: u32) -> impl Iterator<Item = ElementId> {
        let idx = (l as usize).saturating_add(1).min(self.level_start.len() - 1);
        (0..self.level_start[idx]).map(ElementId)
    }

    /// Elements of length exactly `l`, in id order.
    pub fn elements_of_length(&self, l: u32) -> impl Iterator<Item = ElementId> {
        let (lo, hi) = if (l as usize) + 1 < self.level_start.len() {
            (self.level_start[l as usize], self.level_start[l as usize + 1])
        } else {
            (0, 0)
        };
        (lo..hi).map(ElementId)
    }

    #[inline]
    pub fn length(&self, w: ElementId) -> u32 {
        self.length[w.index()]
    }

    /// (−1)^length.
    #[inline]
    pub fn parity(&self, w: ElementId) -> i32 {
        if self.length[w.index()] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product with a generator, `None` when it leaves the region.
    #[inline]
    pub fn try_mult_gen(&self, s: usize, w: ElementId, side: Side) -> Option<ElementId> {
        let table = match side {
            Side::Left => &self.lmul,
            Side::Right => &self.rmul,
        };
        match table[w.index() * self.rank + s] {
            OUTSIDE => None,
            id => Some(ElementId(id)),
        }
    }

    /// Product with a generator. Panics when the product falls outside
    /// the enumerated region; stay within the build bound to avoid it.
    #[inline]
    pub fn mult_gen(&self, s: usize, w: ElementId, side: Side) -> ElementId {
        self.try_mult_gen(s, w, side)
            .expect("product left the enumerated region; rebuild with a larger length bound")
    }

    #[inline]
    pub fn descent_mask(&self, w: ElementId, side: Side) -> u32 {
        match side {
            Side::Left => self.ldesc[w.index()],
            Side::Right => self.rdesc[w.index()],
        }
    }

    pub fn descents(&self, w: ElementId, side: Side) -> Vec<usize> {
        let mask = self.descent_mask(w, side);
        (0..self.rank).filter(|s| mask & (1 << s) != 0).collect()
    }

    #[inline]
    pub fn has_descent(&self, s: usize, w: ElementId, side: Side) -> bool {
        self.descent_mask(w, side) & (1 << s) != 0
    }

    pub fn smallest_descent(&self, w: ElementId, side: Side) -> Option<usize> {
        let mask = self.descent_mask(w, side);
        if mask == 0 {
            None
        } else {
            Some(mask.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn inverse(&self, w: ElementId) -> ElementId {
        ElementId(self.inverse[w.index()])
    }

    /// Image under the diagram involution.
    #[inline]
    pub fn star_of(&self, w: ElementId) -> ElementId {
        ElementId(self.star_of[w.index()])
    }

    #[inline]
    pub fn star_inverse(&self, w: ElementId) -> ElementId {
        self.star_of(self.inverse(w))
    }

    #[inline]
    pub fn star_gen(&self, s: usize) -> usize {
        self.star.apply(s)
    }

    /// True iff `w⁻¹ = w*`.
    #[inline]
    pub fn is_twisted_involution(&self, w: ElementId) -> bool {
        self.twisted[w.index()]
    }

    /// Bruhat order. Iterative one-letter reduction; O(l(w)) per query.
    pub fn bruhat_leq(&self, y: ElementId, w: ElementId) -> bool {
        let (mut y, mut w) = (y, w);
        loop {
            if y == w {
                return true;
            }
            if self.length(y) >= self.length(w) {
                return false;
            }
            let s = self
                .smallest_descent(w, Side::Left)
                .expect("w is longer than y, hence not the identity");
            if self.has_descent(s, y, Side::Left) {
                y = self.mult_gen(s, y, Side::Left);
            }
            w = self.mult_gen(s, w, Side::Left);
        }
    }

    /// All `y ≤ w` (optionally only twisted involutions), in
    /// (length, id) order.
    pub fn lower_interval(&self, w: ElementId, twisted_only: bool) -> Vec<ElementId> {
        self.elements_up_to(self.length(w))
            .filter(|&y| {
                (!twisted_only || self.twisted[y.index()]) && self.bruhat_leq(y, w)
            })
            .collect()
    }

    /// All twisted involutions of length ≤ `bound`, found by
    /// breadth-first search from the identity under the one- and
    /// two-letter moves, in (length, id) order.
    pub fn twisted_involutions_up_to(&self, bound: u32) -> Vec<ElementId> {
        if let Some(cap) = self.cap {
            assert!(
                bound.saturating_add(2) <= cap,
                "listing bound exceeds the enumerated region; rebuild with a larger length bound"
            );
        }
        let mut seen = vec![false; self.num_elements()];
        seen[0] = true;
        let mut out = vec![self.identity()];
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(z) = queue.pop_front() {
            for s in 0..self.rank {
                let t = self.tilde(s, z).expect("moves stay inside the twisted involutions");
                if self.length(t) <= bound && !seen[t.index()] {
                    seen[t.index()] = true;
                    out.push(t);
                    queue.push_back(t);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Case of `z` relative to `s`; errors unless `z` is a twisted
    /// involution.
    pub fn classify_case(&self, s: usize, z: ElementId) -> Result<CaseClass> {
        if !self.twisted[z.index()] {
            return Err(Error::NotTwistedInvolution(z.0));
        }
        let sz = self.mult_gen(s, z, Side::Left);
        let ascent = self.length(sz) > self.length(z);
        let zs_star = self.mult_gen(self.star_gen(s), z, Side::Right);
        Ok(match (ascent, sz == zs_star) {
            (true, true) => CaseClass::AscentCommute,
            (true, false) => CaseClass::AscentSkew,
            (false, true) => CaseClass::DescentCommute,
            (false, false) => CaseClass::DescentSkew,
        })
    }

    /// The involutive move on twisted involutions: `sz` in the
    /// commuting case, `s z s*` otherwise. Length changes by ±1 or ±2.
    pub fn tilde(&self, s: usize, z: ElementId) -> Result<ElementId> {
        let case = self.classify_case(s, z)?;
        let sz = self.mult_gen(s, z, Side::Left);
        Ok(if case.commutes() {
            sz
        } else {
            self.mult_gen(self.star_gen(s), sz, Side::Right)
        })
    }

    /// Monotone companion of [`tilde`](Group::tilde): fixes `z` when
    /// `s` ascends it, applies the move when `s` descends it.
    pub fn hat(&self, s: usize, z: ElementId) -> Result<ElementId> {
        let case = self.classify_case(s, z)?;
        if case.is_ascent() {
            Ok(z)
        } else {
            self.tilde(s, z)
        }
    }

    /// Canonical reduced word (ShortLex: smallest left descent first),
    /// 0-based generator indices.
    pub fn word(&self, w: ElementId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length(w) as usize);
        let mut cur = w;
        while let Some(s) = self.smallest_descent(cur, Side::Left) {
            out.push(s);
            cur = self.mult_gen(s, cur, Side::Left);
        }
        out
    }

    /// Reduced word as 1-based indices separated by spaces; "e" for the
    /// identity.
    pub fn word_string(&self, w: ElementId) -> String {
        let word = self.word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(" ")
        }
    }

    /// Evaluate a word (0-based indices); `None` when the product
    /// leaves the enumerated region.
    pub fn element_by_word(&self, word: &[usize]) -> Option<ElementId> {
        let mut cur = self.identity();
        for &s in word {
            cur = self.try_mult_gen(s, cur, Side::Right)?;
        }
        Some(cur)
    }

    /// The longest element, when the whole finite group is present.
    pub fn longest_element(&self) -> Option<ElementId> {
        if self.cap.is_some() {
            return None;
        }
        Some(ElementId(self.num_elements() as u32 - 1))
    }
}

#[cfg(test)]
mod tests;
