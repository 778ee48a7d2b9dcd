//! Powerset carriers and the relational structure around them: membership,
//! power transpose, the powerset image map, singleton embedding, the
//! inclusion order, and subset-restricted subidentities.
//!
//! Throughout this module the index of a powerset element is its subset
//! mask over the base carrier, which keeps all constructions loop-free to
//! state: bit arithmetic on indices is set arithmetic on subsets.

use crate::carrier::{mask_bits, Carrier, DEFAULT_POW_CAP};
use crate::error::Error;
use crate::relation::Relation;

/// Hard ceiling on base size for powerset construction regardless of the
/// configured cap; 2^20 element labels is already far past anything useful.
pub const MAX_POW_BASE: usize = 20;

/// Builds the powerset carrier of `base` under the default cap.
pub fn pow_carrier(base: &Carrier) -> Result<Carrier, Error> {
    pow_carrier_capped(base, DEFAULT_POW_CAP)
}

/// Builds the powerset carrier of `base`, rejecting bases larger than the
/// cap. Elements are the 2^n subsets in ascending mask order.
pub fn pow_carrier_capped(base: &Carrier, cap: usize) -> Result<Carrier, Error> {
    let cap = cap.min(MAX_POW_BASE);
    if base.len() > cap {
        return Err(Error::CarrierTooLarge {
            carrier: base.name().into(),
            size: base.len(),
            cap,
        });
    }
    Ok(Carrier::new_powerset(base))
}

/// Membership relation from P(Y) to Y: (B, y) iff y is in B.
pub fn membership(y: &Carrier) -> Result<Relation, Error> {
    membership_capped(y, DEFAULT_POW_CAP)
}

pub fn membership_capped(y: &Carrier, cap: usize) -> Result<Relation, Error> {
    let py = pow_carrier_capped(y, cap)?;
    let pairs = (0..py.len()).flat_map(|m| mask_bits(m).map(move |b| (m, b)));
    Ok(Relation::from_index_pairs(&py, y, pairs))
}

/// Power transpose of `a: X -> Y`: the map sending x to the whole image of
/// x under `a`, as a relation X -> P(Y). Always a total function, and the
/// unique total function whose composite with membership gives back `a`.
pub fn power_transpose(a: &Relation) -> Result<Relation, Error> {
    power_transpose_capped(a, DEFAULT_POW_CAP)
}

pub fn power_transpose_capped(a: &Relation, cap: usize) -> Result<Relation, Error> {
    let pt = pow_carrier_capped(a.tgt(), cap)?;
    let pairs = (0..a.src().len()).map(|i| {
        let mask = a.row_indices(i).fold(0usize, |m, j| m | 1 << j);
        (i, mask)
    });
    Ok(Relation::from_index_pairs(a.src(), &pt, pairs))
}

/// Image map P(a): P(X) -> P(Y) of `a: X -> Y`, sending each subset to its
/// image under `a`.
pub fn pow_functor(a: &Relation) -> Result<Relation, Error> {
    pow_functor_capped(a, DEFAULT_POW_CAP)
}

pub fn pow_functor_capped(a: &Relation, cap: usize) -> Result<Relation, Error> {
    let px = pow_carrier_capped(a.src(), cap)?;
    let py = pow_carrier_capped(a.tgt(), cap)?;
    let row_mask: Vec<usize> = (0..a.src().len())
        .map(|i| a.row_indices(i).fold(0usize, |m, j| m | 1 << j))
        .collect();
    let pairs = (0..px.len()).map(|srcmask| {
        let img = mask_bits(srcmask).fold(0usize, |m, b| m | row_mask[b]);
        (srcmask, img)
    });
    Ok(Relation::from_index_pairs(&px, &py, pairs))
}

/// Singleton embedding X -> P(X): x maps to {x}.
pub fn singleton_map(x: &Carrier) -> Result<Relation, Error> {
    singleton_map_capped(x, DEFAULT_POW_CAP)
}

pub fn singleton_map_capped(x: &Carrier, cap: usize) -> Result<Relation, Error> {
    let px = pow_carrier_capped(x, cap)?;
    Ok(Relation::from_index_pairs(
        x,
        &px,
        (0..x.len()).map(|i| (i, 1usize << i)),
    ))
}

/// Inclusion order on P(Y): (A, B) iff A is a subset of B.
pub fn order_relation(y: &Carrier) -> Result<Relation, Error> {
    order_relation_capped(y, DEFAULT_POW_CAP)
}

pub fn order_relation_capped(y: &Carrier, cap: usize) -> Result<Relation, Error> {
    let py = pow_carrier_capped(y, cap)?;
    Ok(order_on(&py))
}

/// Inclusion order on an already-built powerset carrier.
pub(crate) fn order_on(py: &Carrier) -> Relation {
    let n = py.len();
    let pairs = (0..n).flat_map(|a| (0..n).filter(move |b| a & !b == 0).map(move |b| (a, b)));
    Relation::from_index_pairs(py, py, pairs)
}

/// For a subidentity `v` on Y, the subidentity on P(Y) holding exactly the
/// subsets all of whose elements lie under `v`.
pub fn power_subidentity(v: &Relation) -> Result<Relation, Error> {
    power_subidentity_capped(v, DEFAULT_POW_CAP)
}

pub fn power_subidentity_capped(v: &Relation, cap: usize) -> Result<Relation, Error> {
    if !v.is_subidentity() {
        return Err(Error::NotSubidentity);
    }
    let py = pow_carrier_capped(v.src(), cap)?;
    Ok(power_subidentity_on(&py, subidentity_mask(v)))
}

pub(crate) fn power_subidentity_on(py: &Carrier, vmask: usize) -> Relation {
    let pairs = (0..py.len()).filter(|a| a & !vmask == 0).map(|a| (a, a));
    Relation::from_index_pairs(py, py, pairs)
}

/// Diagonal of a subidentity as a bitmask over its carrier.
pub(crate) fn subidentity_mask(v: &Relation) -> usize {
    (0..v.src().len()).fold(0usize, |m, i| if v.get(i, i) { m | 1 << i } else { m })
}
