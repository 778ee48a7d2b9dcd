//! Small pinned universes used by tables, unit searches and sweeps.

use crate::carrier::Carrier;
use crate::lifting::Multirelation;

/// Carrier of size `n` with elements `a`, `b`, `c`, ... (then `e26`, ...).
pub fn standard_carrier(n: usize) -> Carrier {
    assert!(n >= 1, "carriers must be nonempty");
    let labels: Vec<String> = (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect();
    Carrier::new("X", labels).expect("labels are distinct")
}

/// The four multirelations on a one-element carrier. They enumerate the
/// whole universe at that size, so every composition lands back in the
/// quadruple; the composition tables over them separate the three liftings.
pub struct SingletonFixtures {
    pub carrier: Carrier,
    pub zero: Multirelation,
    pub alpha: Multirelation,
    pub beta: Multirelation,
    pub gamma: Multirelation,
}

impl SingletonFixtures {
    pub fn named(&self) -> [(&'static str, &Multirelation); 4] {
        [
            ("0", &self.zero),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
        ]
    }
}

pub fn singleton_fixtures() -> SingletonFixtures {
    let x = standard_carrier(1);
    let zero = Multirelation::from_images(&x, &x, &[]).unwrap();
    let alpha = Multirelation::from_images(&x, &x, &[("a", &[])]).unwrap();
    let beta = Multirelation::from_images(&x, &x, &[("a", &["a"])]).unwrap();
    let gamma = Multirelation::from_images(&x, &x, &[("a", &[]), ("a", &["a"])]).unwrap();
    SingletonFixtures {
        carrier: x,
        zero,
        alpha,
        beta,
        gamma,
    }
}

/// A counterexample pair of multirelations over a shared carrier.
pub struct CounterexamplePair {
    pub carrier: Carrier,
    pub alpha: Multirelation,
    pub beta: Multirelation,
}

/// Three-element pair for which the demonic extension identity fails:
/// composing the lifts of `beta` and `alpha` loses every source set with
/// two or more elements, while lifting the composite keeps them.
pub fn parikh_assoc_counterexample() -> CounterexamplePair {
    let x = standard_carrier(3);
    let alpha = Multirelation::from_images(
        &x,
        &x,
        &[
            ("a", &["a", "b", "c"]),
            ("b", &["a", "b", "c"]),
            ("c", &["a", "b", "c"]),
        ],
    )
    .unwrap();
    let beta = Multirelation::from_images(
        &x,
        &x,
        &[("a", &["b", "c"]), ("b", &["a", "c"]), ("c", &["a", "b"])],
    )
    .unwrap();
    CounterexamplePair {
        carrier: x,
        alpha,
        beta,
    }
}

/// Two-element pair witnessing that concurrent composition is not
/// associative: `(alpha * alpha) * beta` misses the pair `(a, {a,b})` that
/// `alpha * (alpha * beta)` contains.
pub fn peleg_assoc_counterexample() -> CounterexamplePair {
    let x = standard_carrier(2);
    let alpha =
        Multirelation::from_images(&x, &x, &[("a", &["a", "b"]), ("a", &["a"]), ("b", &["a"])])
            .unwrap();
    let beta = Multirelation::from_images(&x, &x, &[("a", &["a"]), ("a", &["b"])]).unwrap();
    CounterexamplePair {
        carrier: x,
        alpha,
        beta,
    }
}
