//! Finite binary relations, powerset constructions, and multirelations with
//! their three standard liftings: angelic (Kleisli), demonic (Parikh) and
//! concurrent (Peleg).
//!
//! A [`Carrier`] is a named finite set of labelled elements. A [`Relation`]
//! is a dense boolean matrix between two carriers. Powerset carriers
//! enumerate all subsets of a base carrier in ascending bitmask order, so a
//! multirelation from `X` to `P(Y)` can express nondeterministic programs
//! whose steps produce whole sets of outcomes.
//!
//! The [`lifting`] module turns a multirelation into a relation between
//! powersets in each of the three ways and composes multirelations through
//! those liftings. The [`laws`] module checks algebraic identities of the
//! three compositions (associativity, units, the extension property, and
//! agreement with direct set-theoretic oracles) over exhaustive or sampled
//! universes, with reproducible seeded reports.

pub mod carrier;
pub mod error;
pub mod fixtures;
pub mod laws;
pub mod lifting;
pub mod powerset;
pub mod relation;

pub use carrier::{mask_bits, subset_label, Carrier, CarrierKind, DEFAULT_POW_CAP};
pub use error::Error;
pub use fixtures::{
    parikh_assoc_counterexample, peleg_assoc_counterexample, singleton_fixtures, standard_carrier,
    CounterexamplePair, SingletonFixtures,
};
pub use laws::{
    check_associativity, check_extension, check_unit, enumerate_multirelations,
    enumerate_multirelations_capped, fixture_table, identity_mrel, oracle_compose,
    oracle_compose_capped, random_multirelation, sweep, sweep_traced, FixtureTable, LawId,
    LawReport, SweepMode, SweepOptions, TraceRecord, UnitSide, Verdict,
};
pub use lifting::{
    compose_mr, compose_mr_capped, enumerate_pfns_c, enumerate_pfns_c_capped, is_union_closed,
    is_up_closed, kleisli_lift, kleisli_lift_capped, lift, lift_capped, parikh_lift,
    parikh_lift_capped, peleg_lift, peleg_lift_capped, union_closure, up_closure, LiftKind,
    Multirelation, DEFAULT_ENUM_CAP,
};
pub use powerset::{
    membership, membership_capped, order_relation, order_relation_capped, pow_carrier,
    pow_carrier_capped, pow_functor, pow_functor_capped, power_subidentity,
    power_subidentity_capped, power_transpose, power_transpose_capped, singleton_map,
    singleton_map_capped, MAX_POW_BASE,
};
pub use relation::Relation;

/// The seeded RNG used by all sampling entry points, re-exported so callers
/// can construct one without depending on `rand_chacha` themselves.
pub use rand_chacha::ChaCha8Rng;
