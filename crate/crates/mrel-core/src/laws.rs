//! Law engine: composition oracles, extension and associativity checks,
//! unit searches, and seeded sweeps over whole universes of multirelations.
//!
//! Sweeps quantify over all (or sampled) multirelations on a standard
//! carrier of a given size. Known counterexample instances are pinned and
//! checked before any random sampling, so failures that are known to exist
//! at a size are reported deterministically. Reports are reproducible:
//! the same law, universe, mode and seed yield the same report, witness
//! included.

use std::fmt;

use rand_chacha::ChaCha8Rng;

use crate::carrier::{mask_bits, Carrier, DEFAULT_POW_CAP};
use crate::error::Error;
use crate::fixtures::{
    parikh_assoc_counterexample, peleg_assoc_counterexample, singleton_fixtures, standard_carrier,
};
use crate::lifting::{
    compose_mr_capped, is_union_closed, is_up_closed, lift_capped, LiftKind, Multirelation,
    DEFAULT_ENUM_CAP,
};
use crate::powerset::{membership_capped, pow_carrier_capped};
use crate::relation::Relation;

/// Identifier of a checkable law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LawId {
    /// Angelic composition is associative.
    KleisliAssoc,
    /// Demonic composition is associative (fails in general).
    ParikhAssoc,
    /// Concurrent composition is associative (fails in general).
    PelegAssoc,
    /// Concurrent composition is associative when the third operand is
    /// union-closed.
    PelegAssocUnionClosed,
    /// Concurrent composition is associative when all three operands are
    /// union-closed.
    PelegAssocUnionClosedAll,
    /// Demonic composition is associative on up-closed operands.
    ParikhAssocUpClosed,
    /// Some multirelation is a right unit for angelic composition.
    KleisliRightUnit,
    /// Some multirelation is a left unit for angelic composition (fails).
    KleisliLeftUnit,
    /// Some multirelation is a left unit for demonic composition.
    ParikhLeftUnit,
    /// Some multirelation is a right unit for demonic composition (fails).
    ParikhRightUnit,
    /// The converse of membership is a two-sided demonic unit on up-closed
    /// operands.
    ParikhUnitsUpClosed,
    /// Some multirelation is a two-sided unit for concurrent composition.
    PelegUnit,
    /// Lifting a composite equals composing the lifts.
    LiftExtension(LiftKind),
    /// Concurrent composition is semi-associative: left nesting is included
    /// in right nesting.
    WeakPelegAssoc,
    /// Lift-based composition agrees with the direct set-theoretic oracle.
    OracleEquivalence(LiftKind),
}

impl LawId {
    pub fn all() -> Vec<LawId> {
        let mut ids = vec![
            LawId::KleisliAssoc,
            LawId::ParikhAssoc,
            LawId::PelegAssoc,
            LawId::PelegAssocUnionClosed,
            LawId::PelegAssocUnionClosedAll,
            LawId::ParikhAssocUpClosed,
            LawId::KleisliRightUnit,
            LawId::KleisliLeftUnit,
            LawId::ParikhLeftUnit,
            LawId::ParikhRightUnit,
            LawId::ParikhUnitsUpClosed,
            LawId::PelegUnit,
            LawId::WeakPelegAssoc,
        ];
        for k in LiftKind::ALL {
            ids.push(LawId::LiftExtension(k));
        }
        for k in LiftKind::ALL {
            ids.push(LawId::OracleEquivalence(k));
        }
        ids
    }

    pub fn name(&self) -> String {
        match self {
            LawId::KleisliAssoc => "kleisli-assoc".into(),
            LawId::ParikhAssoc => "parikh-assoc".into(),
            LawId::PelegAssoc => "peleg-assoc".into(),
            LawId::PelegAssocUnionClosed => "peleg-assoc-union-closed".into(),
            LawId::PelegAssocUnionClosedAll => "peleg-assoc-union-closed-all".into(),
            LawId::ParikhAssocUpClosed => "parikh-assoc-up-closed".into(),
            LawId::KleisliRightUnit => "kleisli-right-unit".into(),
            LawId::KleisliLeftUnit => "kleisli-left-unit".into(),
            LawId::ParikhLeftUnit => "parikh-left-unit".into(),
            LawId::ParikhRightUnit => "parikh-right-unit".into(),
            LawId::ParikhUnitsUpClosed => "parikh-units-up-closed".into(),
            LawId::PelegUnit => "peleg-unit".into(),
            LawId::LiftExtension(k) => format!("lift-extension-{k}"),
            LawId::WeakPelegAssoc => "weak-peleg-assoc".into(),
            LawId::OracleEquivalence(k) => format!("oracle-equivalence-{k}"),
        }
    }

    pub fn parse(s: &str) -> Option<LawId> {
        LawId::all().into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// How a sweep walks its universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepMode::Exhaustive => f.write_str("exhaustive"),
            SweepMode::Sampled { count, seed } => write!(f, "sampled({count},{seed})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        })
    }
}

/// Outcome of a law check. `witness` is present exactly when the verdict is
/// `Fails` and renders the offending relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: LawId,
    pub base_size: usize,
    pub mode: SweepMode,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl LawReport {
    pub fn render(&self) -> String {
        let mut s = format!(
            "law={} universe={} mode={} verdict={}",
            self.law.name(),
            self.base_size,
            self.mode,
            self.verdict
        );
        if let Some(w) = &self.witness {
            s.push_str(" witness=");
            s.push_str(w);
        }
        s
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// One checked instance, reported to the optional sweep observer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub index: u64,
    pub pinned: bool,
    pub operands: Vec<(String, String)>,
    pub pass: bool,
}

/// Caps threaded through sweeps.
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub pow_cap: usize,
    pub enum_cap: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            pow_cap: DEFAULT_POW_CAP,
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

/// Which side a unit candidate is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitSide {
    Left,
    Right,
}

/// Composes two multirelations by evaluating the set-theoretic formula of
/// the chosen composition directly, without building any lifting:
///
/// * angelic: (x, A) iff some (x, B) in `a` has A equal to the union of all
///   images under `b` of all elements of B;
/// * demonic: (x, A) iff some (x, B) in `a` has (e, A) in `b` for every
///   element e of B;
/// * concurrent: (x, A) iff some (x, B) in `a` admits one image choice per
///   element of B whose union is A (choices enumerated, capped).
pub fn oracle_compose(
    kind: LiftKind,
    a: &Multirelation,
    b: &Multirelation,
) -> Result<Multirelation, Error> {
    oracle_compose_capped(kind, a, b, DEFAULT_ENUM_CAP)
}

pub fn oracle_compose_capped(
    kind: LiftKind,
    a: &Multirelation,
    b: &Multirelation,
    enum_cap: u64,
) -> Result<Multirelation, Error> {
    if a.target_base() != b.source() {
        return Err(Error::CarrierMismatch {
            expected: a.target_base().name().into(),
            found: b.source().name().into(),
        });
    }
    let pw = b.target_pow();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..a.source().len() {
        for bmask in a.rel().row_indices(x) {
            match kind {
                LiftKind::Kleisli => {
                    let mut union = 0usize;
                    for e in mask_bits(bmask) {
                        for c in b.rel().row_indices(e) {
                            union |= c;
                        }
                    }
                    pairs.push((x, union));
                }
                LiftKind::Parikh => {
                    for amask in 0..pw.len() {
                        if mask_bits(bmask).all(|e| b.rel().get(e, amask)) {
                            pairs.push((x, amask));
                        }
                    }
                }
                LiftKind::Peleg => {
                    let choices: Vec<Vec<usize>> = mask_bits(bmask)
                        .map(|e| b.rel().row_indices(e).collect())
                        .collect();
                    if choices.iter().any(|c| c.is_empty()) {
                        continue;
                    }
                    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
                    if total > enum_cap as u128 {
                        return Err(Error::EnumerationCapExceeded {
                            needed: total,
                            cap: enum_cap,
                        });
                    }
                    for k in 0..total {
                        let mut rem = k;
                        let mut union = 0usize;
                        for c in &choices {
                            union |= c[(rem % c.len() as u128) as usize];
                            rem /= c.len() as u128;
                        }
                        pairs.push((x, union));
                    }
                }
            }
        }
    }
    Multirelation::new(Relation::from_index_pairs(a.source(), pw, pairs))
}

/// Does lifting the composite of `b` and `g` equal composing their lifts?
pub fn check_extension(
    kind: LiftKind,
    b: &Multirelation,
    g: &Multirelation,
) -> Result<bool, Error> {
    let inner = compose_mr_capped(kind, b, g, DEFAULT_POW_CAP)?;
    let lhs = lift_capped(kind, &inner, DEFAULT_POW_CAP)?;
    let rhs =
        lift_capped(kind, b, DEFAULT_POW_CAP)?.compose(&lift_capped(kind, g, DEFAULT_POW_CAP)?)?;
    Ok(lhs == rhs)
}

/// Does `(a ; b) ; g` equal `a ; (b ; g)` under the chosen composition?
pub fn check_associativity(
    kind: LiftKind,
    a: &Multirelation,
    b: &Multirelation,
    g: &Multirelation,
) -> Result<bool, Error> {
    let cap = DEFAULT_POW_CAP;
    let lhs = compose_mr_capped(kind, &compose_mr_capped(kind, a, b, cap)?, g, cap)?;
    let rhs = compose_mr_capped(kind, a, &compose_mr_capped(kind, b, g, cap)?, cap)?;
    Ok(lhs == rhs)
}

/// The identity relation on the powerset of `base`, viewed as a
/// multirelation from P(base) to P(base).
pub fn identity_mrel(base: &Carrier) -> Result<Multirelation, Error> {
    let px = pow_carrier_capped(base, DEFAULT_POW_CAP)?;
    Multirelation::new(Relation::identity(&px))
}

/// All multirelations on `x`, ordered by their matrix bits in row-major
/// mask order. Rejects universes with more than 2^16 multirelations.
pub fn enumerate_multirelations(x: &Carrier) -> Result<Vec<Multirelation>, Error> {
    enumerate_multirelations_capped(x, DEFAULT_POW_CAP)
}

pub fn enumerate_multirelations_capped(
    x: &Carrier,
    cap: usize,
) -> Result<Vec<Multirelation>, Error> {
    let px = pow_carrier_capped(x, cap)?;
    let bits = x.len() * px.len();
    if bits > 16 {
        return Err(Error::UniverseTooLarge(format!(
            "2^{bits} multirelations on a {}-element carrier cannot be enumerated",
            x.len()
        )));
    }
    Ok((0..1u64 << bits)
        .map(|idx| {
            Multirelation::new(Relation::from_matrix_index(x, &px, idx).expect("small matrix"))
                .expect("powerset target")
        })
        .collect())
}

/// A uniformly random multirelation on `x` with target powerset `px`.
pub fn random_multirelation(x: &Carrier, px: &Carrier, rng: &mut ChaCha8Rng) -> Multirelation {
    Multirelation::new(Relation::random(x, px, rng)).expect("powerset target")
}

/// Checks whether `iota` is a left or right unit for the composition of the
/// given kind, over all multirelations on its carrier. `iota` must relate a
/// carrier to its own powerset. Exhaustive by construction; the operand
/// universe is capped like [`enumerate_multirelations`].
pub fn check_unit(
    kind: LiftKind,
    side: UnitSide,
    iota: &Multirelation,
) -> Result<LawReport, Error> {
    let x = iota.source().clone();
    if &x != iota.target_base() {
        return Err(Error::CarrierMismatch {
            expected: x.name().into(),
            found: iota.target_base().name().into(),
        });
    }
    let law = unit_law_id(kind, side);
    let base_size = x.len();
    let fail = |witness: String| LawReport {
        law,
        base_size,
        mode: SweepMode::Exhaustive,
        verdict: Verdict::Fails,
        witness: Some(witness),
    };
    match side {
        UnitSide::Right => {
            // By the lifting identity, iota is a right unit exactly when its
            // lift is the identity on the powerset.
            let l = lift_capped(kind, iota, DEFAULT_POW_CAP)?;
            let id = Relation::identity(l.src());
            if l == id {
                Ok(holds_report(law, base_size, SweepMode::Exhaustive))
            } else {
                Ok(fail(format!("iota={} lift={}", iota.render(), l.render())))
            }
        }
        UnitSide::Left => {
            for alpha in enumerate_multirelations(&x)? {
                let got = compose_mr_capped(kind, iota, &alpha, DEFAULT_POW_CAP)?;
                if got != alpha {
                    return Ok(fail(format!(
                        "iota={} alpha={} got={}",
                        iota.render(),
                        alpha.render(),
                        got.render()
                    )));
                }
            }
            Ok(holds_report(law, base_size, SweepMode::Exhaustive))
        }
    }
}

fn unit_law_id(kind: LiftKind, side: UnitSide) -> LawId {
    match (kind, side) {
        (LiftKind::Kleisli, UnitSide::Left) => LawId::KleisliLeftUnit,
        (LiftKind::Kleisli, UnitSide::Right) => LawId::KleisliRightUnit,
        (LiftKind::Parikh, UnitSide::Left) => LawId::ParikhLeftUnit,
        (LiftKind::Parikh, UnitSide::Right) => LawId::ParikhRightUnit,
        (LiftKind::Peleg, _) => LawId::PelegUnit,
    }
}

fn holds_report(law: LawId, base_size: usize, mode: SweepMode) -> LawReport {
    LawReport {
        law,
        base_size,
        mode,
        verdict: Verdict::Holds,
        witness: None,
    }
}

/// The 4x4 composition table of the singleton fixtures under the given
/// kind. `cells[i][j]` is the index (into `names`) of the fixture equal to
/// `names[i]` composed with `names[j]`.
pub struct FixtureTable {
    pub kind: LiftKind,
    pub names: [&'static str; 4],
    pub cells: [[usize; 4]; 4],
}

pub fn fixture_table(kind: LiftKind) -> Result<FixtureTable, Error> {
    let fx = singleton_fixtures();
    let ms = [&fx.zero, &fx.alpha, &fx.beta, &fx.gamma];
    let mut cells = [[0usize; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let r = compose_mr_capped(kind, ms[i], ms[j], DEFAULT_POW_CAP)?;
            // The quadruple enumerates every multirelation on the singleton
            // carrier, so the composite always matches one of them.
            cells[i][j] = ms
                .iter()
                .position(|m| **m == r)
                .expect("composite stays in the universe");
        }
    }
    Ok(FixtureTable {
        kind,
        names: ["0", "alpha", "beta", "gamma"],
        cells,
    })
}

type SlotFilter = fn(&Multirelation) -> bool;

fn any_mrel(_: &Multirelation) -> bool {
    true
}

fn union_closed_mrel(m: &Multirelation) -> bool {
    is_union_closed(m)
}

fn up_closed_mrel(m: &Multirelation) -> bool {
    is_up_closed(m)
}

/// A law predicate over its operand slice.
type LawCheck<'a> = Box<dyn Fn(&[Multirelation]) -> Result<bool, Error> + 'a>;

struct LawSpec<'a> {
    arity: usize,
    filters: [SlotFilter; 3],
    roles: &'static [&'static str],
    filter_names: [&'static str; 3],
    check: LawCheck<'a>,
    pinned: Vec<Vec<Multirelation>>,
}

/// Runs a law over a universe of the given base size.
pub fn sweep(law: &LawId, base_size: usize, mode: SweepMode) -> Result<LawReport, Error> {
    sweep_traced(law, base_size, mode, &SweepOptions::default(), None)
}

/// Like [`sweep`], reporting every checked instance to `trace`.
pub fn sweep_traced(
    law: &LawId,
    base_size: usize,
    mode: SweepMode,
    opts: &SweepOptions,
    trace: Option<&mut dyn FnMut(&TraceRecord)>,
) -> Result<LawReport, Error> {
    if base_size == 0 {
        return Err(Error::EmptyCarrier);
    }
    let x = standard_carrier(base_size);
    match law {
        LawId::KleisliRightUnit => sweep_unit(
            *law,
            LiftKind::Kleisli,
            &[UnitSide::Right],
            &x,
            mode,
            opts,
            trace,
        ),
        LawId::KleisliLeftUnit => sweep_unit(
            *law,
            LiftKind::Kleisli,
            &[UnitSide::Left],
            &x,
            mode,
            opts,
            trace,
        ),
        LawId::ParikhLeftUnit => sweep_unit(
            *law,
            LiftKind::Parikh,
            &[UnitSide::Left],
            &x,
            mode,
            opts,
            trace,
        ),
        LawId::ParikhRightUnit => sweep_unit(
            *law,
            LiftKind::Parikh,
            &[UnitSide::Right],
            &x,
            mode,
            opts,
            trace,
        ),
        LawId::PelegUnit => sweep_unit(
            *law,
            LiftKind::Peleg,
            &[UnitSide::Right, UnitSide::Left],
            &x,
            mode,
            opts,
            trace,
        ),
        _ => {
            let spec = law_spec(law, &x, opts)?;
            run_spec(*law, spec, &x, base_size, mode, opts, trace)
        }
    }
}

fn law_spec<'a>(law: &LawId, x: &Carrier, opts: &'a SweepOptions) -> Result<LawSpec<'a>, Error> {
    let triple_roles: &'static [&'static str] = &["alpha", "beta", "gamma"];
    let open = [any_mrel as SlotFilter; 3];
    let open_names = ["any"; 3];
    let assoc = |kind: LiftKind| -> LawCheck<'static> {
        Box::new(move |ops| check_associativity(kind, &ops[0], &ops[1], &ops[2]))
    };
    let spec = match law {
        LawId::KleisliAssoc => LawSpec {
            arity: 3,
            filters: open,
            filter_names: open_names,
            roles: triple_roles,
            check: assoc(LiftKind::Kleisli),
            pinned: vec![],
        },
        LawId::ParikhAssoc => LawSpec {
            arity: 3,
            filters: open,
            filter_names: open_names,
            roles: triple_roles,
            check: assoc(LiftKind::Parikh),
            pinned: pinned_parikh_assoc(x)?,
        },
        LawId::PelegAssoc => LawSpec {
            arity: 3,
            filters: open,
            filter_names: open_names,
            roles: triple_roles,
            check: assoc(LiftKind::Peleg),
            pinned: pinned_peleg_assoc(x),
        },
        LawId::PelegAssocUnionClosed => LawSpec {
            arity: 3,
            filters: [any_mrel, any_mrel, union_closed_mrel],
            filter_names: ["any", "any", "union-closed"],
            roles: triple_roles,
            check: assoc(LiftKind::Peleg),
            pinned: pinned_peleg_assoc(x),
        },
        LawId::PelegAssocUnionClosedAll => LawSpec {
            arity: 3,
            filters: [union_closed_mrel; 3],
            filter_names: ["union-closed"; 3],
            roles: triple_roles,
            check: assoc(LiftKind::Peleg),
            pinned: pinned_peleg_assoc(x),
        },
        LawId::ParikhAssocUpClosed => LawSpec {
            arity: 3,
            filters: [up_closed_mrel; 3],
            filter_names: ["up-closed"; 3],
            roles: triple_roles,
            check: assoc(LiftKind::Parikh),
            pinned: vec![],
        },
        LawId::WeakPelegAssoc => LawSpec {
            arity: 3,
            filters: open,
            filter_names: open_names,
            roles: triple_roles,
            check: Box::new(move |ops| {
                let cap = DEFAULT_POW_CAP;
                let lhs = compose_mr_capped(
                    LiftKind::Peleg,
                    &compose_mr_capped(LiftKind::Peleg, &ops[0], &ops[1], cap)?,
                    &ops[2],
                    cap,
                )?;
                let rhs = compose_mr_capped(
                    LiftKind::Peleg,
                    &ops[0],
                    &compose_mr_capped(LiftKind::Peleg, &ops[1], &ops[2], cap)?,
                    cap,
                )?;
                lhs.rel().is_included_in(rhs.rel())
            }),
            pinned: pinned_peleg_assoc(x),
        },
        LawId::LiftExtension(kind) => {
            let k = *kind;
            LawSpec {
                arity: 2,
                filters: open,
                filter_names: open_names,
                roles: &["beta", "gamma"],
                check: Box::new(move |ops| check_extension(k, &ops[0], &ops[1])),
                pinned: pinned_extension(k, x)?,
            }
        }
        LawId::OracleEquivalence(kind) => {
            let k = *kind;
            let enum_cap = opts.enum_cap;
            let pow_cap = opts.pow_cap;
            LawSpec {
                arity: 2,
                filters: open,
                filter_names: open_names,
                roles: &["alpha", "beta"],
                check: Box::new(move |ops| {
                    let via_lift = compose_mr_capped(k, &ops[0], &ops[1], pow_cap)?;
                    let via_oracle = oracle_compose_capped(k, &ops[0], &ops[1], enum_cap)?;
                    Ok(via_lift == via_oracle)
                }),
                pinned: pinned_pairs_both_orders(x),
            }
        }
        LawId::ParikhUnitsUpClosed => {
            let iota = Multirelation::new(membership_capped(x, opts.pow_cap)?.converse())?;
            LawSpec {
                arity: 1,
                filters: [up_closed_mrel, any_mrel, any_mrel],
                filter_names: ["up-closed", "any", "any"],
                roles: &["alpha"],
                check: Box::new(move |ops| {
                    let left =
                        compose_mr_capped(LiftKind::Parikh, &iota, &ops[0], DEFAULT_POW_CAP)?;
                    let right =
                        compose_mr_capped(LiftKind::Parikh, &ops[0], &iota, DEFAULT_POW_CAP)?;
                    Ok(left == ops[0] && right == ops[0])
                }),
                pinned: vec![],
            }
        }
        _ => unreachable!("unit laws handled by sweep_unit"),
    };
    Ok(spec)
}

/// Pinned two-element triple on which concurrent composition fails to
/// associate. Skipped automatically when a slot filter rejects it.
fn pinned_peleg_assoc(x: &Carrier) -> Vec<Vec<Multirelation>> {
    if x.len() != 2 {
        return vec![];
    }
    let p = peleg_assoc_counterexample();
    vec![vec![p.alpha.clone(), p.alpha.clone(), p.beta]]
}

/// Pinned three-element triple on which demonic composition fails to
/// associate; the left operand is the identity on the powerset, which turns
/// the extension failure of the pinned pair into an associativity failure.
fn pinned_parikh_assoc(x: &Carrier) -> Result<Vec<Vec<Multirelation>>, Error> {
    if x.len() != 3 {
        return Ok(vec![]);
    }
    let p = parikh_assoc_counterexample();
    let id = identity_mrel(&p.carrier)?;
    Ok(vec![vec![id, p.beta, p.alpha]])
}

fn pinned_extension(kind: LiftKind, x: &Carrier) -> Result<Vec<Vec<Multirelation>>, Error> {
    Ok(match (kind, x.len()) {
        (LiftKind::Peleg, 2) => {
            let p = peleg_assoc_counterexample();
            vec![vec![p.alpha, p.beta]]
        }
        (LiftKind::Parikh, 3) => {
            let p = parikh_assoc_counterexample();
            vec![vec![p.beta, p.alpha]]
        }
        _ => vec![],
    })
}

fn pinned_pairs_both_orders(x: &Carrier) -> Vec<Vec<Multirelation>> {
    let p = match x.len() {
        2 => peleg_assoc_counterexample(),
        3 => parikh_assoc_counterexample(),
        _ => return vec![],
    };
    vec![vec![p.alpha.clone(), p.beta.clone()], vec![p.beta, p.alpha]]
}

fn render_instance(roles: &[&str], ops: &[Multirelation]) -> String {
    roles
        .iter()
        .zip(ops)
        .map(|(r, m)| format!("{r}={}", m.render()))
        .collect::<Vec<_>>()
        .join(" ")
}

#[allow(clippy::too_many_arguments)]
fn run_spec(
    law: LawId,
    spec: LawSpec<'_>,
    x: &Carrier,
    base_size: usize,
    mode: SweepMode,
    opts: &SweepOptions,
    mut trace: Option<&mut dyn FnMut(&TraceRecord)>,
) -> Result<LawReport, Error> {
    let mut index: u64 = 0;
    let mut emit = |ops: &[Multirelation], pass: bool, pinned: bool, index: &mut u64| {
        if let Some(t) = trace.as_deref_mut() {
            t(&TraceRecord {
                index: *index,
                pinned,
                operands: spec
                    .roles
                    .iter()
                    .zip(ops)
                    .map(|(r, m)| (r.to_string(), m.render()))
                    .collect(),
                pass,
            });
        }
        *index += 1;
    };

    let fail = |ops: &[Multirelation]| LawReport {
        law,
        base_size,
        mode,
        verdict: Verdict::Fails,
        witness: Some(render_instance(spec.roles, ops)),
    };

    // Known witnesses first, when they live in this universe and pass the
    // slot filters.
    for inst in &spec.pinned {
        if !inst.iter().zip(&spec.filters).all(|(m, keep)| keep(m)) {
            continue;
        }
        let pass = (spec.check)(inst)?;
        emit(inst, pass, true, &mut index);
        if !pass {
            return Ok(fail(inst));
        }
    }

    match mode {
        SweepMode::Exhaustive => {
            let max = if spec.arity >= 3 { 1 } else { 2 };
            if base_size > max {
                return Err(Error::UniverseTooLarge(format!(
                    "law {} is {}-quantified; exhaustive mode requires base size <= {max}",
                    law.name(),
                    spec.arity
                )));
            }
            let all = enumerate_multirelations_capped(x, opts.pow_cap)?;
            let kept: Vec<Vec<&Multirelation>> = (0..spec.arity)
                .map(|slot| all.iter().filter(|m| (spec.filters[slot])(m)).collect())
                .collect();
            let mut ops: Vec<Multirelation> = Vec::with_capacity(spec.arity);
            let counts: Vec<usize> = kept.iter().map(|k| k.len()).collect();
            let total: u64 = counts.iter().map(|&c| c as u64).product();
            for flat in 0..total {
                let mut rem = flat;
                ops.clear();
                for slot in (0..spec.arity).rev() {
                    let c = counts[slot] as u64;
                    ops.push(kept[slot][(rem % c) as usize].clone());
                    rem /= c;
                }
                ops.reverse();
                let pass = (spec.check)(&ops)?;
                emit(&ops, pass, false, &mut index);
                if !pass {
                    return Ok(fail(&ops));
                }
            }
        }
        SweepMode::Sampled { count, seed } => {
            use rand::SeedableRng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let px = pow_carrier_capped(x, opts.pow_cap)?;
            for _ in 0..count {
                let mut ops: Vec<Multirelation> = Vec::with_capacity(spec.arity);
                for slot in 0..spec.arity {
                    ops.push(draw_filtered(
                        x,
                        &px,
                        &mut rng,
                        spec.filters[slot],
                        spec.filter_names[slot],
                    )?);
                }
                let pass = (spec.check)(&ops)?;
                emit(&ops, pass, false, &mut index);
                if !pass {
                    return Ok(fail(&ops));
                }
            }
        }
    }
    Ok(holds_report(law, base_size, mode))
}

fn draw_filtered(
    x: &Carrier,
    px: &Carrier,
    rng: &mut ChaCha8Rng,
    keep: SlotFilter,
    desc: &str,
) -> Result<Multirelation, Error> {
    for _ in 0..1_000_000 {
        let m = random_multirelation(x, px, rng);
        if keep(&m) {
            return Ok(m);
        }
    }
    Err(Error::UniverseTooLarge(format!(
        "could not sample a {desc} multirelation on {} elements",
        x.len()
    )))
}

#[allow(clippy::too_many_arguments)]
fn sweep_unit(
    law: LawId,
    kind: LiftKind,
    sides: &[UnitSide],
    x: &Carrier,
    mode: SweepMode,
    opts: &SweepOptions,
    mut trace: Option<&mut dyn FnMut(&TraceRecord)>,
) -> Result<LawReport, Error> {
    if !matches!(mode, SweepMode::Exhaustive) {
        return Err(Error::UniverseTooLarge(format!(
            "law {} searches for a unit; absence is only meaningful for a completed \
             search, so only exhaustive mode is supported",
            law.name()
        )));
    }
    let candidates = enumerate_multirelations_capped(x, opts.pow_cap)?;
    let mut first_refutation: Option<String> = None;
    for (index, iota) in candidates.iter().enumerate() {
        let mut refutation: Option<String> = None;
        for side in sides {
            match side {
                UnitSide::Right => {
                    let l = lift_capped(kind, iota, opts.pow_cap)?;
                    if l != Relation::identity(l.src()) {
                        refutation = Some(format!("iota={} lift={}", iota.render(), l.render()));
                    }
                }
                UnitSide::Left => {
                    for alpha in &candidates {
                        let got = compose_mr_capped(kind, iota, alpha, opts.pow_cap)?;
                        if got != *alpha {
                            refutation = Some(format!(
                                "iota={} alpha={} got={}",
                                iota.render(),
                                alpha.render(),
                                got.render()
                            ));
                            break;
                        }
                    }
                }
            }
            if refutation.is_some() {
                break;
            }
        }
        let pass = refutation.is_none();
        if let Some(t) = trace.as_deref_mut() {
            t(&TraceRecord {
                index: index as u64,
                pinned: false,
                operands: vec![("iota".to_string(), iota.render())],
                pass,
            });
        }
        if pass {
            return Ok(holds_report(law, x.len(), mode));
        }
        if first_refutation.is_none() {
            first_refutation = refutation;
        }
    }
    Ok(LawReport {
        law,
        base_size: x.len(),
        mode,
        verdict: Verdict::Fails,
        witness: Some(format!(
            "no unit among {} candidates; first refutation: {}",
            candidates.len(),
            first_refutation.unwrap_or_default()
        )),
    })
}
