//! Multirelations and the three liftings that turn a multirelation
//! `Y -> P(Z)` into a relation `P(Y) -> P(Z)`, together with the derived
//! compositions and the closure notions under which they behave well.
//!
//! The three liftings differ in how a set of inner targets is combined:
//!
//! * angelic: the lifted relation maps B to the union of all images of all
//!   elements of B (a total function);
//! * demonic: B relates to A exactly when every element of B relates to A;
//! * concurrent: B relates to A exactly when B lies inside the domain and A
//!   can be assembled as a union of one chosen image per element of B.

use std::fmt;

use crate::carrier::{mask_bits, Carrier, DEFAULT_POW_CAP};
use crate::error::Error;
use crate::powerset::{order_on, pow_carrier_capped};
use crate::relation::{iter_set_bits, Relation};

/// Default bound on the number of choice functions enumerated by
/// [`enumerate_pfns_c`].
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// Which lifting to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftKind {
    Kleisli,
    Parikh,
    Peleg,
}

impl LiftKind {
    pub const ALL: [LiftKind; 3] = [LiftKind::Kleisli, LiftKind::Parikh, LiftKind::Peleg];

    pub fn name(self) -> &'static str {
        match self {
            LiftKind::Kleisli => "kleisli",
            LiftKind::Parikh => "parikh",
            LiftKind::Peleg => "peleg",
        }
    }

    pub fn parse(s: &str) -> Option<LiftKind> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for LiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A relation whose target is a powerset carrier. The source may be any
/// carrier; the target invariant is enforced at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multirelation {
    rel: Relation,
}

impl Multirelation {
    pub fn new(rel: Relation) -> Result<Self, Error> {
        if rel.tgt().base().is_none() {
            return Err(Error::NotPowersetTarget);
        }
        Ok(Multirelation { rel })
    }

    /// Builds a multirelation from `(element, image-set)` pairs. Each entry
    /// adds one image set; repeated elements accumulate further sets.
    pub fn from_images(
        src: &Carrier,
        target_base: &Carrier,
        images: &[(&str, &[&str])],
    ) -> Result<Self, Error> {
        let pz = pow_carrier_capped(target_base, DEFAULT_POW_CAP)?;
        let mut pairs = Vec::with_capacity(images.len());
        for (elem, set) in images {
            let i = src
                .element_index(elem)
                .ok_or_else(|| Error::UnknownElement {
                    carrier: src.name().into(),
                    label: (*elem).into(),
                })?;
            let mut mask = 0usize;
            for e in *set {
                let j = target_base
                    .element_index(e)
                    .ok_or_else(|| Error::UnknownElement {
                        carrier: target_base.name().into(),
                        label: (*e).into(),
                    })?;
                mask |= 1 << j;
            }
            pairs.push((i, mask));
        }
        Ok(Multirelation {
            rel: Relation::from_index_pairs(src, &pz, pairs),
        })
    }

    pub fn rel(&self) -> &Relation {
        &self.rel
    }

    pub fn into_rel(self) -> Relation {
        self.rel
    }

    pub fn source(&self) -> &Carrier {
        self.rel.src()
    }

    pub fn target_pow(&self) -> &Carrier {
        self.rel.tgt()
    }

    pub fn target_base(&self) -> &Carrier {
        self.rel.tgt().base().expect("target is a powerset carrier")
    }

    pub fn render(&self) -> String {
        self.rel.render()
    }
}

impl fmt::Display for Multirelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rel.render())
    }
}

impl fmt::Debug for Multirelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multirelation({:?})", self.rel)
    }
}

/// Angelic lifting: maps each B to the union of the images of its elements.
/// Always a total function; the empty set maps to the empty set.
pub fn kleisli_lift(beta: &Multirelation) -> Result<Relation, Error> {
    kleisli_lift_capped(beta, DEFAULT_POW_CAP)
}

pub fn kleisli_lift_capped(beta: &Multirelation, cap: usize) -> Result<Relation, Error> {
    let py = pow_carrier_capped(beta.source(), cap)?;
    let n = beta.source().len();
    // Union of all image sets of one source element.
    let img: Vec<usize> = (0..n)
        .map(|i| beta.rel().row_indices(i).fold(0usize, |m, c| m | c))
        .collect();
    let pairs = (0..py.len()).map(|b| (b, mask_bits(b).fold(0usize, |m, e| m | img[e])));
    Ok(Relation::from_index_pairs(&py, beta.target_pow(), pairs))
}

/// Demonic lifting: B relates to A exactly when every element of B relates
/// to A. The empty set relates to every A.
pub fn parikh_lift(beta: &Multirelation) -> Result<Relation, Error> {
    parikh_lift_capped(beta, DEFAULT_POW_CAP)
}

pub fn parikh_lift_capped(beta: &Multirelation, cap: usize) -> Result<Relation, Error> {
    let py = pow_carrier_capped(beta.source(), cap)?;
    let pz = beta.target_pow();
    let wpr = pz.len().div_ceil(64);
    let full: Vec<u64> = (0..wpr)
        .map(|w| {
            let remaining = pz.len() - w * 64;
            if remaining >= 64 {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            }
        })
        .collect();
    let mut bits = Vec::with_capacity(wpr * py.len());
    for b in 0..py.len() {
        let mut row = full.clone();
        for e in mask_bits(b) {
            for (r, w) in row.iter_mut().zip(beta.rel().row_words(e)) {
                *r &= w;
            }
        }
        bits.extend_from_slice(&row);
    }
    Ok(Relation::from_raw(&py, pz, bits))
}

/// Concurrent lifting: B relates to A exactly when B lies inside the domain
/// of `beta` and A is a union of one chosen image per element of B. The
/// pair ({}, {}) is always present.
///
/// Computed by dynamic programming over subsets in ascending mask order:
/// the row of B is derived from the row of B minus its lowest element by
/// extending every reachable union with each image of that element. Rows
/// are sets of reachable unions, so the whole table doubles as the result.
pub fn peleg_lift(beta: &Multirelation) -> Result<Relation, Error> {
    peleg_lift_capped(beta, DEFAULT_POW_CAP)
}

pub fn peleg_lift_capped(beta: &Multirelation, cap: usize) -> Result<Relation, Error> {
    let py = pow_carrier_capped(beta.source(), cap)?;
    let pz = beta.target_pow();
    let wpr = pz.len().div_ceil(64);
    let n = beta.source().len();
    let dom: usize = (0..n)
        .filter(|&i| !beta.rel().row_is_empty(i))
        .fold(0, |m, i| m | 1 << i);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(py.len());
    for b in 0..py.len() {
        if b & !dom != 0 {
            rows.push(vec![0; wpr]);
            continue;
        }
        if b == 0 {
            let mut row = vec![0u64; wpr];
            row[0] = 1; // the empty union
            rows.push(row);
            continue;
        }
        let e = b.trailing_zeros() as usize;
        let prev = rows[b & (b - 1)].clone();
        let mut row = vec![0u64; wpr];
        for u in iter_set_bits(&prev) {
            for c in beta.rel().row_indices(e) {
                let t = u | c;
                row[t / 64] |= 1 << (t % 64);
            }
        }
        rows.push(row);
    }
    Ok(Relation::from_raw(
        &py,
        pz,
        rows.into_iter().flatten().collect(),
    ))
}

/// Dispatches on the lift kind.
pub fn lift(kind: LiftKind, beta: &Multirelation) -> Result<Relation, Error> {
    lift_capped(kind, beta, DEFAULT_POW_CAP)
}

pub fn lift_capped(kind: LiftKind, beta: &Multirelation, cap: usize) -> Result<Relation, Error> {
    match kind {
        LiftKind::Kleisli => kleisli_lift_capped(beta, cap),
        LiftKind::Parikh => parikh_lift_capped(beta, cap),
        LiftKind::Peleg => peleg_lift_capped(beta, cap),
    }
}

/// Composition of multirelations through a lifting: `a` composed with the
/// lift of `b`. The target base of `a` must be the source of `b`.
pub fn compose_mr(
    kind: LiftKind,
    a: &Multirelation,
    b: &Multirelation,
) -> Result<Multirelation, Error> {
    compose_mr_capped(kind, a, b, DEFAULT_POW_CAP)
}

pub fn compose_mr_capped(
    kind: LiftKind,
    a: &Multirelation,
    b: &Multirelation,
    cap: usize,
) -> Result<Multirelation, Error> {
    if a.target_base() != b.source() {
        return Err(Error::CarrierMismatch {
            expected: a.target_base().name().into(),
            found: b.source().name().into(),
        });
    }
    let lifted = lift_capped(kind, b, cap)?;
    Multirelation::new(a.rel().compose(&lifted)?)
}

/// All partial functions below `beta` whose domain equals the domain of
/// `beta`: one image chosen per nonempty row, enumerated in lexicographic
/// row-major choice order.
pub fn enumerate_pfns_c(beta: &Multirelation) -> Result<Vec<Multirelation>, Error> {
    enumerate_pfns_c_capped(beta, DEFAULT_ENUM_CAP)
}

pub fn enumerate_pfns_c_capped(
    beta: &Multirelation,
    cap: u64,
) -> Result<Vec<Multirelation>, Error> {
    let n = beta.source().len();
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let choices: Vec<usize> = beta.rel().row_indices(i).collect();
        if !choices.is_empty() {
            rows.push((i, choices));
        }
    }
    let total: u128 = rows.iter().map(|(_, c)| c.len() as u128).product();
    if total > cap as u128 {
        return Err(Error::EnumerationCapExceeded { needed: total, cap });
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..total {
        // Mixed-radix digits, first row most significant, so the emitted
        // order is lexicographic in the per-row choice indices.
        let mut rem = k;
        let mut pairs = vec![(0usize, 0usize); rows.len()];
        for (slot, (i, choices)) in rows.iter().enumerate().rev() {
            let d = (rem % choices.len() as u128) as usize;
            rem /= choices.len() as u128;
            pairs[slot] = (*i, choices[d]);
        }
        out.push(Multirelation {
            rel: Relation::from_index_pairs(beta.source(), beta.target_pow(), pairs),
        });
    }
    Ok(out)
}

/// Is every row closed upward under the inclusion order on the target base?
pub fn is_up_closed(m: &Multirelation) -> bool {
    let xi = order_on(m.target_pow());
    let closed = m.rel().compose(&xi).expect("same powerset carrier");
    closed == *m.rel()
}

/// Smallest up-closed multirelation containing `m`.
pub fn up_closure(m: &Multirelation) -> Multirelation {
    let xi = order_on(m.target_pow());
    Multirelation {
        rel: m.rel().compose(&xi).expect("same powerset carrier"),
    }
}

/// Is every row closed under unions of nonempty subfamilies? Closure under
/// pairwise unions suffices for finite rows.
pub fn is_union_closed(m: &Multirelation) -> bool {
    for i in 0..m.source().len() {
        let sets: Vec<usize> = m.rel().row_indices(i).collect();
        for &a in &sets {
            for &b in &sets {
                if !m.rel().get(i, a | b) {
                    return false;
                }
            }
        }
    }
    true
}

/// Smallest union-closed multirelation containing `m`: each row is closed
/// under pairwise unions until a fixpoint.
pub fn union_closure(m: &Multirelation) -> Multirelation {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..m.source().len() {
        let mut row: Vec<usize> = m.rel().row_indices(i).collect();
        let mut have: std::collections::BTreeSet<usize> = row.iter().copied().collect();
        let mut k = 0;
        while k < row.len() {
            for j in 0..=k {
                let u = row[k] | row[j];
                if have.insert(u) {
                    row.push(u);
                }
            }
            k += 1;
        }
        pairs.extend(have.into_iter().map(|s| (i, s)));
    }
    Multirelation {
        rel: Relation::from_index_pairs(m.source(), m.target_pow(), pairs),
    }
}
