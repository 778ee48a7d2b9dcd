//! Seeded input builders shared by the benchmark targets.

use mrel_core::{pow_carrier, random_multirelation, standard_carrier, Multirelation, Relation};
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

/// `count` seeded random multirelations on the standard `n`-element carrier.
pub fn random_inputs(n: usize, count: usize, seed: u64) -> Vec<Multirelation> {
    let x = standard_carrier(n);
    let px = pow_carrier(&x).expect("base within the powerset cap");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_multirelation(&x, &px, &mut rng))
        .collect()
}

/// `count` seeded random endorelations on the powerset of the standard
/// `n`-element carrier, the shape every lifting produces.
pub fn random_powerset_relations(n: usize, count: usize, seed: u64) -> Vec<Relation> {
    let px = pow_carrier(&standard_carrier(n)).expect("base within the powerset cap");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Relation::random(&px, &px, &mut rng))
        .collect()
}
