//! Binary relations between carriers, stored as dense boolean matrices with
//! rows packed into 64-bit words.
//!
//! All operations are value-semantic and check that the carriers at the
//! shared end are structurally identical. Residuals are computed directly
//! from their universally quantified definitions; no complement operation is
//! exposed.

use std::fmt;

use crate::carrier::Carrier;
use crate::error::Error;

/// A boolean matrix relating elements of `src` to elements of `tgt`.
///
/// Unused high bits of the final word in each row are kept zero, so raw word
/// comparison implements relation equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    src: Carrier,
    tgt: Carrier,
    words_per_row: usize,
    bits: Vec<u64>,
}

/// Iterates the set bit positions of a packed row.
pub(crate) fn iter_set_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut m = word;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(w * 64 + b)
            }
        })
    })
}

impl Relation {
    fn blank(src: &Carrier, tgt: &Carrier) -> Self {
        let words_per_row = tgt.len().div_ceil(64);
        Relation {
            src: src.clone(),
            tgt: tgt.clone(),
            words_per_row,
            bits: vec![0; words_per_row * src.len()],
        }
    }

    /// The empty relation of the given type.
    pub fn empty(src: &Carrier, tgt: &Carrier) -> Self {
        Self::blank(src, tgt)
    }

    /// The universal relation of the given type.
    pub fn universal(src: &Carrier, tgt: &Carrier) -> Self {
        let mut r = Self::blank(src, tgt);
        for i in 0..src.len() {
            for w in 0..r.words_per_row {
                r.bits[i * r.words_per_row + w] = r.tail_mask(w);
            }
        }
        r
    }

    /// The identity relation on a carrier.
    pub fn identity(c: &Carrier) -> Self {
        let mut r = Self::blank(c, c);
        for i in 0..c.len() {
            r.set(i, i);
        }
        r
    }

    /// Builds a relation from labelled pairs. Duplicates collapse.
    pub fn from_pairs(src: &Carrier, tgt: &Carrier, pairs: &[(&str, &str)]) -> Result<Self, Error> {
        let mut r = Self::blank(src, tgt);
        for &(a, b) in pairs {
            let i = src.element_index(a).ok_or_else(|| Error::UnknownElement {
                carrier: src.name().into(),
                label: a.into(),
            })?;
            let j = tgt.element_index(b).ok_or_else(|| Error::UnknownElement {
                carrier: tgt.name().into(),
                label: b.into(),
            })?;
            r.set(i, j);
        }
        Ok(r)
    }

    /// Builds a relation from index pairs. Indices must be in range.
    pub fn from_index_pairs(
        src: &Carrier,
        tgt: &Carrier,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut r = Self::blank(src, tgt);
        for (i, j) in pairs {
            r.set(i, j);
        }
        r
    }

    /// Builds a relation whose cells are the bits of `index` in row-major
    /// order: cell (i, j) is bit `i * tgt.len() + j`. Requires the matrix to
    /// have at most 64 cells; used for exhaustive enumeration.
    pub fn from_matrix_index(src: &Carrier, tgt: &Carrier, index: u64) -> Result<Self, Error> {
        let cells = src.len() * tgt.len();
        if cells > 64 {
            return Err(Error::UniverseTooLarge(format!(
                "{cells}-cell matrices cannot be indexed by a 64-bit integer"
            )));
        }
        let mut r = Self::blank(src, tgt);
        for i in 0..src.len() {
            for j in 0..tgt.len() {
                if index >> (i * tgt.len() + j) & 1 == 1 {
                    r.set(i, j);
                }
            }
        }
        Ok(r)
    }

    /// A uniformly random relation: each cell holds with probability 1/2.
    pub fn random(src: &Carrier, tgt: &Carrier, rng: &mut impl rand::RngCore) -> Self {
        let mut r = Self::blank(src, tgt);
        for i in 0..src.len() {
            for w in 0..r.words_per_row {
                r.bits[i * r.words_per_row + w] = rng.next_u64() & r.tail_mask(w);
            }
        }
        r
    }

    pub(crate) fn from_raw(src: &Carrier, tgt: &Carrier, bits: Vec<u64>) -> Self {
        let words_per_row = tgt.len().div_ceil(64);
        debug_assert_eq!(bits.len(), words_per_row * src.len());
        Relation {
            src: src.clone(),
            tgt: tgt.clone(),
            words_per_row,
            bits,
        }
    }

    /// Mask of valid bits for word `w` of a row.
    fn tail_mask(&self, w: usize) -> u64 {
        let remaining = self.tgt.len() - w * 64;
        if remaining >= 64 {
            u64::MAX
        } else {
            (1u64 << remaining) - 1
        }
    }

    pub fn src(&self) -> &Carrier {
        &self.src
    }

    pub fn tgt(&self) -> &Carrier {
        &self.tgt
    }

    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    /// Target indices related to source index `i`, ascending.
    pub fn row_indices(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_set_bits(self.row_words(i))
    }

    /// All pairs in row-major order.
    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.src.len()).flat_map(move |i| self.row_indices(i).map(move |j| (i, j)))
    }

    pub fn row_is_empty(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn count_pairs(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn check_same_type(&self, other: &Relation) -> Result<(), Error> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::CarrierMismatch {
                expected: format!("{} -> {}", self.src.name(), self.tgt.name()),
                found: format!("{} -> {}", other.src.name(), other.tgt.name()),
            });
        }
        Ok(())
    }

    /// Relational composition: (x, z) iff some y has (x, y) here and (y, z)
    /// in `other`.
    pub fn compose(&self, other: &Relation) -> Result<Relation, Error> {
        if self.tgt != other.src {
            return Err(Error::CarrierMismatch {
                expected: self.tgt.name().into(),
                found: other.src.name().into(),
            });
        }
        let mut out = Relation::blank(&self.src, &other.tgt);
        for i in 0..self.src.len() {
            let dst = i * out.words_per_row;
            for y in self.row_indices(i) {
                let src = y * other.words_per_row;
                for w in 0..other.words_per_row {
                    out.bits[dst + w] |= other.bits[src + w];
                }
            }
        }
        Ok(out)
    }

    /// Transpose.
    pub fn converse(&self) -> Relation {
        let mut out = Relation::blank(&self.tgt, &self.src);
        for (i, j) in self.iter_pairs() {
            out.set(j, i);
        }
        out
    }

    pub fn meet(&self, other: &Relation) -> Result<Relation, Error> {
        self.check_same_type(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w &= o;
        }
        Ok(out)
    }

    pub fn join(&self, other: &Relation) -> Result<Relation, Error> {
        self.check_same_type(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        Ok(out)
    }

    /// Inclusion test: does every pair of `self` occur in `other`?
    pub fn is_included_in(&self, other: &Relation) -> Result<bool, Error> {
        self.check_same_type(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    /// Left residual. For `a: X -> Y` and `b: Y -> Z`,
    /// `a.left_residual(&b)` relates (x, z)
    /// exactly when every y with (y, z) in `b` has (x, y) in `a`. It is the
    /// greatest `d: X -> Z` with `d.compose(b.converse()) ⊑ a`.
    pub fn left_residual(&self, other: &Relation) -> Result<Relation, Error> {
        if self.tgt != other.src {
            return Err(Error::CarrierMismatch {
                expected: self.tgt.name().into(),
                found: other.src.name().into(),
            });
        }
        // Column z of `other` as a row: transpose once, then (x, z) holds
        // iff column z is contained in row x.
        let cols = other.converse();
        let mut out = Relation::blank(&self.src, &other.tgt);
        for x in 0..self.src.len() {
            let row = self.row_words(x);
            for z in 0..other.tgt.len() {
                let col = cols.row_words(z);
                if col.iter().zip(row).all(|(c, r)| c & !r == 0) {
                    out.set(x, z);
                }
            }
        }
        Ok(out)
    }

    /// Right residual. For `a: X -> Y` and `b: Y -> Z`,
    /// `a.right_residual(&b)` relates (x, z) exactly when every y with
    /// (x, y) in `a` has (y, z) in `b`. It is the greatest `d: X -> Z` with
    /// `a.converse().compose(d) ⊑ b`.
    pub fn right_residual(&self, other: &Relation) -> Result<Relation, Error> {
        if self.tgt != other.src {
            return Err(Error::CarrierMismatch {
                expected: self.tgt.name().into(),
                found: other.src.name().into(),
            });
        }
        let mut out = Relation::blank(&self.src, &other.tgt);
        for x in 0..self.src.len() {
            // Intersection of the rows of `other` selected by row x,
            // starting from the full row.
            let dst = x * out.words_per_row;
            for w in 0..out.words_per_row {
                out.bits[dst + w] = out.tail_mask(w);
            }
            for y in self.row_indices(x) {
                let src = y * other.words_per_row;
                for w in 0..out.words_per_row {
                    out.bits[dst + w] &= other.bits[src + w];
                }
            }
        }
        Ok(out)
    }

    /// Domain as a subidentity on the source: (x, x) iff row x is nonempty.
    pub fn domain(&self) -> Relation {
        let mut out = Relation::blank(&self.src, &self.src);
        for i in 0..self.src.len() {
            if !self.row_is_empty(i) {
                out.set(i, i);
            }
        }
        out
    }

    /// Every source element relates to at most one target element.
    pub fn is_univalent(&self) -> bool {
        (0..self.src.len()).all(|i| self.row_count(i) <= 1)
    }

    /// Every source element relates to at least one target element.
    pub fn is_total(&self) -> bool {
        (0..self.src.len()).all(|i| !self.row_is_empty(i))
    }

    /// Partial function: univalent.
    pub fn is_pfn(&self) -> bool {
        self.is_univalent()
    }

    /// Total function: univalent and total.
    pub fn is_tfn(&self) -> bool {
        self.is_univalent() && self.is_total()
    }

    /// Square relation contained in the identity.
    pub fn is_subidentity(&self) -> bool {
        self.src == self.tgt && self.iter_pairs().all(|(i, j)| i == j)
    }

    /// Renders the relation as a set of labelled pairs in row-major order,
    /// e.g. `{(a,{}),(a,{a})}`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .iter_pairs()
            .map(|(i, j)| format!("({},{})", self.src.label(i), self.tgt.label(j)))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Relation({} -> {}, {})",
            self.src.name(),
            self.tgt.name(),
            self.render()
        )
    }
}
