//! Exact-rational audit ledger: re-derivations of the displayed inequality
//! chains and bound tables that drive the low-genus classification, plus
//! class-size and fixed-point-ratio censuses over the built-in catalog.
//!
//! Every entry is computed with exact rationals. The single non-exact
//! computation (an irrational tail constant) is carried as a certified
//! rational enclosure with explicit margin and flagged accordingly.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{euler_phi, Rat};
use crate::atlas::{build_entry, AtlasError};
use crate::rh::orbit_profile;
use crate::socle::{catalog_type_b, class_reps, SocleError, SocleModel, TypeBGroup};

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("unknown ledger case {0:?}")]
    UnknownCase(String),
    #[error("nonpositive denominator in bound evaluation: {0}")]
    NonpositiveDenominator(String),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Socle(#[from] SocleError),
    #[error(transparent)]
    Rh(#[from] crate::rh::RhError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// computed value equals the recorded value exactly
    Match,
    /// the claimed inequality holds for the computed value
    BoundHolds,
    /// the recorded value could not be reproduced from stated inputs
    Discrepancy,
}

/// One audited computation with its exact result and verdict.
#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub id: String,
    pub description: String,
    pub inputs: Vec<String>,
    pub computed: String,
    pub recorded: Option<String>,
    pub claim: String,
    pub verdict: Verdict,
    pub exact: bool,
    pub note: String,
}

impl LedgerEntry {
    fn new(id: &str, description: &str) -> LedgerEntry {
        LedgerEntry {
            id: id.to_string(),
            description: description.to_string(),
            inputs: Vec::new(),
            computed: String::new(),
            recorded: None,
            claim: String::new(),
            verdict: Verdict::Discrepancy,
            exact: true,
            note: String::new(),
        }
    }
}

// ---------------------------------------------------------------------------
// Imported bound premises (fixed-point ratios on the diagonal catalog)
// ---------------------------------------------------------------------------

/// Generic bound on `mfpr(x)` for nontrivial `x`.
pub fn mfpr_any() -> Rat {
    Rat::frac(1, 10)
}

/// Bound on `mfpr(x)` for `|x| = 3`.
pub fn mfpr_order3() -> Rat {
    Rat::frac(1, 20)
}

/// Bound on `mfpr(x)` for `|x| = 4`.
pub fn mfpr_order4() -> Rat {
    Rat::frac(1, 10)
}

/// Bound on `mfpr(x)` for prime `|x| ≥ 5`.
pub fn mfpr_order5_plus() -> Rat {
    Rat::frac(1, 12)
}

/// Bounds on `OR(x)`: generic, for socles other than A5, and per order.
pub fn or_any() -> Rat {
    Rat::frac(11, 20)
}

pub fn or_not_a5() -> Rat {
    Rat::frac(8, 15)
}

pub fn or_order3() -> Rat {
    Rat::frac(11, 30)
}

pub fn or_order4() -> Rat {
    Rat::frac(13, 40)
}

pub fn or_order5_plus() -> Rat {
    Rat::frac(4, 15)
}

/// `mfpr` premise by slot order for the orbit-ratio table rows.
fn mfpr_row(order: u64) -> Rat {
    match order {
        2 => mfpr_any(),
        3 => mfpr_order3(),
        4 => mfpr_order4(),
        _ => mfpr_order5_plus(),
    }
}

/// Slot bound `OR(x) ≤ (1/o)(1 + (o−1−φ(o))·mfpr + φ(o)·fpr)`.
fn or_slot_bound(order: u64, mfpr: &Rat, fpr: &Rat) -> Rat {
    let phi = euler_phi(order).expect("positive order") as i64;
    let o = Rat::int(order as i64);
    let inner = &(&Rat::one() + &(&Rat::int(order as i64 - 1 - phi) * mfpr))
        + &(&Rat::int(phi) * fpr);
    &inner / &o
}

/// Upper bound on `OR(x₁)+OR(x₂)` for a slot-order pair `(k, ℓ)` under
/// `fpr ≤ 1/60` on both slots.
pub fn or_pair_table_value(k: u64, l: u64) -> Rat {
    let fpr = Rat::frac(1, 60);
    &or_slot_bound(k, &mfpr_row(k), &fpr) + &or_slot_bound(l, &mfpr_row(l), &fpr)
}

// ---------------------------------------------------------------------------
// Fixed chains
// ---------------------------------------------------------------------------

fn chain_entry(
    id: &str,
    description: &str,
    inputs: Vec<String>,
    computed: Rat,
    recorded: Option<&str>,
    claim: &str,
) -> LedgerEntry {
    let mut e = LedgerEntry::new(id, description);
    e.inputs = inputs;
    e.computed = computed.to_string();
    e.recorded = recorded.map(str::to_string);
    e.claim = claim.to_string();
    e.verdict = match recorded {
        Some(r) => {
            let want: Rat = r.parse().expect("recorded value parses");
            if want == computed {
                Verdict::Match
            } else {
                Verdict::Discrepancy
            }
        }
        None => Verdict::BoundHolds,
    };
    e
}

/// Verifies `value < 1 − 2c` (or `< 2 − 2c` for the four-slot cases) for
/// all `c` strictly below the endpoint; at an open endpoint the non-strict
/// comparison at the endpoint suffices.
fn open_endpoint_holds(value: &Rat, rhs_at_zero: &Rat, c_endpoint: &Rat) -> bool {
    let rhs = rhs_at_zero - &(&Rat::int(2) * c_endpoint);
    value <= &rhs
}

pub fn fixed_chain_ids() -> Vec<&'static str> {
    vec![
        "prop31-scap",
        "prop31-nota5",
        "prop31-a5-3inv",
        "prop31-a5-2big",
        "prop33-or3-237",
        "prop33-total-237",
        "prop33-or3-2310",
        "prop33-total-2310",
        "prop33-or3-2312",
        "prop33-total-2312",
        "prop35-generic-237",
        "prop35-u33-237",
        "prop35-u33-238",
        "prop35-sp62",
        "or-table-23",
        "or-table-24",
        "or-table-25",
        "or-table-26",
        "or-table-33",
        "or-table-34",
    ]
}

/// Recomputes one displayed chain from its stated premise bounds.
pub fn eval_fixed_chain(case: &str) -> Result<LedgerEntry, LedgerError> {
    let r = Rat::frac;
    match case {
        "prop31-scap" => {
            // #S − 2(1 + 1/80) < (11/20)·#S forces #S < 9/2
            let bound = &(&Rat::int(2) + &r(1, 40))
                .checked_div(&(&Rat::one() - &or_any()))
                .expect("nonzero");
            let mut e = chain_entry(
                case,
                "branch point count cap from OR(x) ≤ 11/20 at genus < n/80 + 1",
                vec!["OR(x) ≤ 11/20".into(), "c < 1/80".into()],
                bound.clone(),
                Some("9/2"),
                "#S ≤ 4",
            );
            e.note = "floor of the open bound gives #S ≤ 4".into();
            Ok(e)
        }
        "prop31-nota5" => {
            let v = &(&Rat::int(3) * &or_not_a5()) + &or_order3();
            let mut e = chain_entry(
                case,
                "four-slot bound for socles other than A5: 3·(8/15) + 11/30",
                vec!["OR ≤ 8/15 (three slots)".into(), "OR ≤ 11/30 (order-3 slot)".into()],
                v.clone(),
                Some("59/30"),
                "59/30 < 2 − 2c for c < 1/60",
            );
            if !open_endpoint_holds(&v, &Rat::int(2), &r(1, 60)) {
                e.verdict = Verdict::Discrepancy;
                e.note = "endpoint comparison fails".into();
            }
            Ok(e)
        }
        "prop31-a5-3inv" => {
            let v = &(&Rat::int(3) * &or_any()) + &or_order4();
            let mut e = chain_entry(
                case,
                "A5 socle, three involutions and one slot of order ≥ 4: 3·(11/20) + 13/40",
                vec!["OR ≤ 11/20".into(), "OR ≤ 13/40 (order-4 slot)".into()],
                v.clone(),
                Some("79/40"),
                "79/40 < 2 − 2c for c < 1/80",
            );
            if !open_endpoint_holds(&v, &Rat::int(2), &r(1, 80)) {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "prop31-a5-2big" => {
            let v = &(&Rat::int(2) * &or_any()) + &(&Rat::int(2) * &or_order3());
            let mut e = chain_entry(
                case,
                "A5 socle, two slots of order ≥ 3: 2·(11/20) + 2·(11/30)",
                vec!["OR ≤ 11/20".into(), "OR ≤ 11/30".into()],
                v.clone(),
                None,
                "value < 2 − 2c for c < 1/12",
            );
            e.verdict = if open_endpoint_holds(&v, &Rat::int(2), &r(1, 12)) {
                Verdict::BoundHolds
            } else {
                Verdict::Discrepancy
            };
            Ok(e)
        }
        "prop33-or3-237" => {
            // OR(x3) ≤ (1 + 6/60^6)/7 for an order-7 slot with fpr ≤ 1/60^6
            let tiny = r(1, 60).pow(6);
            let v = &(&Rat::one() + &(&Rat::int(6) * &tiny)) / &Rat::int(7);
            Ok(chain_entry(
                case,
                "order-7 slot bound with fpr ≤ 1/60⁶",
                vec!["fpr(x₃) ≤ 1/60⁶".into()],
                v,
                Some("1110857143/7776000000"),
                "exact fraction reproduces",
            ))
        }
        "prop33-total-237" => {
            let tiny = r(1, 60).pow(6);
            let or3 = &(&Rat::one() + &(&Rat::int(6) * &tiny)) / &Rat::int(7);
            let v = &or_pair_table_value(2, 3) + &or3;
            let threshold = &(&Rat::one() - &v) / &Rat::int(2);
            let mut e = chain_entry(
                case,
                "(2,3,7) chain: 307/360 + 1110857143/7776000000",
                vec!["OR(x₁)+OR(x₂) ≤ 307/360".into()],
                v,
                Some("7742057143/7776000000"),
                "contradiction with OR(S) ≥ 1 − 2c at c = 1/460",
            );
            let ok = r(1, 460) < threshold && threshold == r(33942857, 15552000000);
            e.note = format!("slack threshold (1 − value)/2 = {threshold}");
            if !ok {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "prop33-or3-2310" => {
            // order-10 slot: maximize (1/10)(1 + fpr(x⁵) + 4·fpr(x²) + 4·fpr(x))
            // over the quotient-image cases
            let f1 = r(1, 60);
            let cases = [
                (r(1, 12), r(1, 60)),            // image of order 2
                (r(1, 60).pow(4), mfpr_any()),   // image of order 5
                (r(1, 60).pow(4), r(1, 60)),     // image of order 10
            ];
            let v = cases
                .iter()
                .map(|(f2, f5)| {
                    &(&(&Rat::one() + f5) + &(&Rat::int(4) * &(f2 + &f1))) / &Rat::int(10)
                })
                .max()
                .unwrap();
            Ok(chain_entry(
                case,
                "order-10 slot bound, worst case over quotient images",
                vec!["fpr(x₃) ≤ 1/60".into(), "per-power case analysis".into()],
                v,
                Some("17/120"),
                "exact fraction reproduces",
            ))
        }
        "prop33-total-2310" => {
            let v = &or_pair_table_value(2, 3) + &r(17, 120);
            let mut e = chain_entry(
                case,
                "(2,3,10) chain: 307/360 + 17/120",
                vec!["OR(x₁)+OR(x₂) ≤ 307/360".into(), "OR(x₃) ≤ 17/120".into()],
                v.clone(),
                Some("179/180"),
                "contradiction with OR(S) ≥ 1 − 2c for c < 1/360",
            );
            if !open_endpoint_holds(&v, &Rat::one(), &r(1, 360)) {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "prop33-or3-2312" => {
            // order-12 slot: (1/12)(1 + f6 + 2f4 + 2f3 + 2f2 + 4f1)
            let f1 = r(1, 60);
            let f6 = mfpr_any();
            // (f2, f4, f3) by quotient image: order 3 | image vs 2 | image
            let cases = [
                (mfpr_any(), mfpr_order5_plus(), r(1, 60)), // 3 divides image order
                (r(1, 3600), r(1, 3600), mfpr_any()),       // 2 divides image order
            ];
            let v = cases
                .iter()
                .map(|(f2, f4, f3)| {
                    let sum = &(&(&Rat::one() + &f6)
                        + &(&Rat::int(2) * &(&(f4 + f3) + f2)))
                        + &(&Rat::int(4) * &f1);
                    &sum / &Rat::int(12)
                })
                .max()
                .unwrap();
            Ok(chain_entry(
                case,
                "order-12 slot bound, worst case over quotient images",
                vec!["fpr(x₃) ≤ 1/60".into(), "per-power case analysis".into()],
                v,
                Some("47/360"),
                "exact fraction reproduces",
            ))
        }
        "prop33-total-2312" => {
            let v = &or_pair_table_value(2, 3) + &r(47, 360);
            let mut e = chain_entry(
                case,
                "(2,3,12) chain: 307/360 + 47/360",
                vec!["OR(x₁)+OR(x₂) ≤ 307/360".into(), "OR(x₃) ≤ 47/360".into()],
                v.clone(),
                Some("59/60"),
                "contradiction with OR(S) ≥ 1 − 2c for c < 1/120",
            );
            if !open_endpoint_holds(&v, &Rat::one(), &r(1, 120)) {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "prop35-generic-237" => {
            // 1/85 + 1/85 + 1/89 + (1/2)(84/85) + (1/3)(84/85) + (1/7)(88/89)
            let a = r(1, 85);
            let b = r(1, 89);
            let v = [
                a.clone(),
                a.clone(),
                b.clone(),
                &(&Rat::one() - &a) / &Rat::int(2),
                &(&Rat::one() - &a) / &Rat::int(3),
                &(&Rat::one() - &b) / &Rat::int(7),
            ]
            .into_iter()
            .fold(Rat::zero(), |acc, x| &acc + &x);
            let threshold = &(&Rat::one() - &v) / &Rat::int(2);
            let mut e = chain_entry(
                case,
                "(2,3,7) class-size chain with |x^L| ≥ 85 / ≥ 89",
                vec!["mfpr ≤ 1/85 (orders 2,3)".into(), "mfpr ≤ 1/89 (order 7)".into()],
                v,
                Some("52931/52955"),
                "contradiction for c < 12/52955",
            );
            if threshold != r(12, 52955) {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "prop35-u33-237" => {
            let v = unitary_chain(&[(2, r(1, 63)), (3, r(1, 56)), (7, r(1, 864))]);
            let threshold = &(&Rat::one() - &v) / &Rat::int(2);
            let mut e = chain_entry(
                case,
                "(2,3,7) chain with the degree-28 unitary group's ratio table",
                vec!["1/63, 1/56, 1/864".into()],
                v,
                Some("335/336"),
                "contradiction for c < 1/672",
            );
            if threshold != r(1, 672) {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "prop35-u33-238" => {
            let v = unitary_chain(&[(2, r(1, 63)), (3, r(1, 56)), (8, r(1, 63))]);
            let threshold = &(&Rat::one() - &v) / &Rat::int(2);
            let mut e = chain_entry(
                case,
                "(2,3,8) chain with the degree-28 unitary group's ratio table",
                vec!["1/63, 1/56, 1/63".into()],
                v,
                Some("125/126"),
                "contradiction for c < 1/252",
            );
            if threshold != r(1, 252) {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "prop35-sp62" => {
            // worst (smallest slack) over the (2,3,7) and (2,3,8) chains
            let v237 = unitary_chain(&[(2, r(1, 63)), (3, r(1, 85)), (7, r(1, 207360))]);
            let v238 = unitary_chain(&[(2, r(1, 63)), (3, r(1, 85)), (8, r(1, 63))]);
            let v = if v237 > v238 { v237 } else { v238 };
            let threshold = &(&Rat::one() - &v) / &Rat::int(2);
            let mut e = chain_entry(
                case,
                "degree-63 symplectic group: min slack over the (2,3,7) and (2,3,8) chains",
                vec!["1/63, 1/85, 1/207360, 1/63".into()],
                threshold.clone(),
                Some("33007/8225280"),
                "OR(S) < 1 − 2c for c ≤ 1/5000 < 33007/8225280",
            );
            if threshold != r(33007, 8225280) || r(1, 5000) >= threshold {
                e.verdict = Verdict::Discrepancy;
            }
            Ok(e)
        }
        "or-table-23" | "or-table-24" | "or-table-25" | "or-table-26" | "or-table-33"
        | "or-table-34" => {
            let (k, l, want) = match case {
                "or-table-23" => (2, 3, "307/360"),
                "or-table-24" => (2, 4, "19/24"),
                "or-table-25" => (2, 5, "433/600"),
                "or-table-26" => (2, 6, "13/18"),
                "or-table-33" => (3, 3, "31/45"),
                _ => (3, 4, "113/180"),
            };
            Ok(chain_entry(
                case,
                &format!("upper bound on OR(x₁)+OR(x₂) for slot orders ({k},{l})"),
                vec![
                    "fpr ≤ 1/60 on both slots".into(),
                    "per-order mfpr premises".into(),
                ],
                or_pair_table_value(k, l),
                Some(want),
                "table value reproduces",
            ))
        }
        other => Err(LedgerError::UnknownCase(other.to_string())),
    }
}

/// `Σᵢ [mfprᵢ + (1/kᵢ)(1 − mfprᵢ)]` over the slots of a chain.
fn unitary_chain(slots: &[(i64, Rat)]) -> Rat {
    slots.iter().fold(Rat::zero(), |acc, (k, mfpr)| {
        let term = &(mfpr + &(&(&Rat::one() - mfpr) / &Rat::int(*k)));
        &acc + term
    })
}

// ---------------------------------------------------------------------------
// Bound family
// ---------------------------------------------------------------------------

/// Parameters of one bound-family evaluation. The `c` bound is an open
/// upper endpoint; the conclusion applies to every admissible `c` strictly
/// below it.
#[derive(Debug, Clone)]
pub struct BoundParams {
    pub lambda: Rat,
    pub c_endpoint: Rat,
    pub a: Rat,
    pub b: Rat,
    pub k: u64,
    pub l: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    KBound,
    LBound,
    MBound,
}

/// Evaluates one member of the slot-order bound family with exact
/// rationals. At the open endpoint, an integral value yields `value − 1`,
/// otherwise the floor.
pub fn eval_bound_family(
    params: &BoundParams,
    which: BoundKind,
) -> Result<(i64, Rat), LedgerError> {
    let one = Rat::one();
    let two_c = &Rat::int(2) * &params.c_endpoint;
    let (numer, denom) = match which {
        BoundKind::KBound => (
            &Rat::int(3) * &(&one - &params.lambda),
            &(&one - &two_c) - &(&Rat::int(3) * &params.lambda),
        ),
        BoundKind::LBound => {
            let lead = &(&one - &Rat::frac(1, params.k as i64)) * &(&one - &params.a);
            (
                &Rat::int(2) * &(&one - &params.lambda),
                &(&lead - &two_c) - &(&Rat::int(2) * &params.lambda),
            )
        }
        BoundKind::MBound => {
            let lead_k = &(&one - &Rat::frac(1, params.k as i64)) * &(&one - &params.a);
            let lead_l = &(&one - &Rat::frac(1, params.l as i64)) * &(&one - &params.b);
            (
                &one - &params.lambda,
                &(&(&lead_k + &lead_l) - &two_c) - &(&one + &params.lambda),
            )
        }
    };
    if !denom.is_positive() {
        return Err(LedgerError::NonpositiveDenominator(format!(
            "{denom} at the endpoint (the bound precondition requires a positive denominator)"
        )));
    }
    let value = numer.checked_div(&denom).expect("positive denominator");
    let bound = if value.is_integer() {
        // open endpoint: the strict bound at every admissible c is one less
        let f: i64 = value.floor_int().try_into().expect("small bound");
        f - 1
    } else {
        value.floor_int().try_into().expect("small bound")
    };
    Ok((bound, value))
}

pub fn bound_family_ids() -> Vec<&'static str> {
    vec![
        "prop32-kbound",
        "prop32-lbound-k2",
        "prop32-mbound-k2l7",
        "prop32-lbound-k3",
        "prop32-mbound-33",
        "prop32-mbound-34",
        "prop32-mbound-24",
        "prop32-mbound-25",
        "prop32-mbound-26",
        "prop32-mbound-23-not-a5",
    ]
}

pub fn eval_bound_case(case: &str) -> Result<LedgerEntry, LedgerError> {
    let r = Rat::frac;
    let base = BoundParams {
        lambda: r(1, 10),
        c_endpoint: r(1, 80),
        a: r(1, 10),
        b: r(1, 10),
        k: 2,
        l: 3,
    };
    let mut entry = LedgerEntry::new(case, "");
    let (kind, params, recorded, note): (BoundKind, BoundParams, i64, &str) = match case {
        "prop32-kbound" => (BoundKind::KBound, base, 3, ""),
        "prop32-lbound-k2" => (BoundKind::LBound, base, 7, ""),
        "prop32-mbound-k2l7" => (
            BoundKind::MBound,
            BoundParams {
                b: r(1, 24),
                l: 7,
                ..base
            },
            6,
            "evaluated at the c < 1/80 endpoint carried from the second-slot step; \
             the conclusion needs c < 3/140, not arbitrary c",
        ),
        "prop32-lbound-k3" => (
            BoundKind::LBound,
            BoundParams {
                k: 3,
                c_endpoint: r(1, 50),
                ..base
            },
            4,
            "",
        ),
        "prop32-mbound-33" => (
            BoundKind::MBound,
            BoundParams {
                k: 3,
                l: 3,
                c_endpoint: r(1, 200),
                ..base
            },
            9,
            "",
        ),
        "prop32-mbound-34" => (
            BoundKind::MBound,
            BoundParams {
                k: 3,
                l: 4,
                c_endpoint: r(11, 160),
                ..base
            },
            5,
            "the recorded conclusion needs sharper unstated constants",
        ),
        "prop32-mbound-24" => (
            BoundKind::MBound,
            BoundParams {
                l: 4,
                c_endpoint: r(1, 296),
                ..base
            },
            37,
            "the recorded conclusion needs sharper unstated constants",
        ),
        "prop32-mbound-25" => (
            BoundKind::MBound,
            BoundParams {
                l: 5,
                b: r(1, 12),
                c_endpoint: r(1, 200),
                ..base
            },
            9,
            "the recorded conclusion needs sharper unstated constants; the \
             statement-level range even allows m ≤ 13",
        ),
        "prop32-mbound-26" => (
            BoundKind::MBound,
            BoundParams {
                l: 6,
                c_endpoint: r(1, 200),
                ..base
            },
            9,
            "",
        ),
        "prop32-mbound-23-not-a5" => {
            // with the generic premises the denominator is nonpositive;
            // record the failure honestly
            let params = BoundParams {
                l: 3,
                c_endpoint: r(1, 116),
                ..base
            };
            entry.description =
                "(2,3,m) cap for socles other than A5: not derivable from stated constants"
                    .to_string();
            entry.recorded = Some("29".into());
            entry.claim = "m ≤ 29 for c < 1/116".into();
            match eval_bound_family(&params, BoundKind::MBound) {
                Ok((bound, value)) => {
                    entry.computed = format!("m ≤ {bound} (value {value})");
                    entry.verdict = if bound <= 29 {
                        Verdict::BoundHolds
                    } else {
                        Verdict::Discrepancy
                    };
                }
                Err(e) => {
                    entry.computed = format!("no bound: {e}");
                    entry.verdict = Verdict::Discrepancy;
                    entry.note =
                        "the stated premises give a nonpositive denominator; the recorded cap \
                         rests on sharper unstated inputs"
                            .into();
                }
            }
            return Ok(entry);
        }
        other => return Err(LedgerError::UnknownCase(other.to_string())),
    };
    entry.description = format!(
        "slot-order bound, kind {:?}, k = {}, l = {}",
        kind, params.k, params.l
    );
    entry.inputs = vec![
        format!("lambda = {}", params.lambda),
        format!("c < {}", params.c_endpoint),
        format!("a = {}", params.a),
        format!("b = {}", params.b),
    ];
    entry.recorded = Some(recorded.to_string());
    entry.claim = format!("bound ≤ {recorded}");
    entry.note = note.to_string();
    match eval_bound_family(&params, kind) {
        Ok((bound, value)) => {
            entry.computed = format!("{bound} (value {value})");
            entry.verdict = if bound == recorded {
                Verdict::Match
            } else if bound < recorded {
                Verdict::BoundHolds
            } else {
                Verdict::Discrepancy
            };
        }
        Err(e) => {
            entry.computed = format!("no bound: {e}");
            entry.verdict = Verdict::Discrepancy;
        }
    }
    Ok(entry)
}

// ---------------------------------------------------------------------------
// Totient window
// ---------------------------------------------------------------------------

/// Exact survivor test for the third-slot totient inequality: `m` survives
/// when `1 − 2c − (pair table bound) ≤ 1/10 + 9/(10m) − φ(m)/(12m)`.
pub fn phi_window_survives(kl: (u64, u64), c: &Rat, m: u64) -> bool {
    let lhs = &(&Rat::one() - &(&Rat::int(2) * c)) - &or_pair_table_value(kl.0, kl.1);
    let phi = euler_phi(m).expect("positive m") as i64;
    let m_rat = Rat::int(m as i64);
    let rhs = &(&Rat::frac(1, 10) + &Rat::frac(9, 10).checked_div(&m_rat).unwrap())
        - &(&Rat::int(phi) / &(&Rat::int(12) * &m_rat));
    lhs <= rhs
}

/// Surviving `m` values in a range.
pub fn phi_window_survivors(kl: (u64, u64), c: &Rat, m_range: (u64, u64)) -> Vec<u64> {
    (m_range.0..=m_range.1)
        .filter(|&m| phi_window_survives(kl, c, m))
        .collect()
}

pub fn phi_window_entry() -> LedgerEntry {
    let c = Rat::frac(1, 460);
    let survivors = phi_window_survivors((2, 3), &c, (7, 30));
    let mut e = LedgerEntry::new(
        "prop33-phiwindow-23",
        "surviving third-slot orders for slot pair (2,3) in the window 7..30",
    );
    e.inputs = vec!["c = 1/460".into(), "pair bound 307/360".into()];
    e.computed = format!("{survivors:?}");
    e.recorded = Some("[7, 10, 12]".into());
    e.claim = "all but (2,3,7), (2,3,10), (2,3,12) are ruled out".into();
    e.verdict = if survivors == [7, 10, 12] {
        Verdict::Match
    } else {
        Verdict::Discrepancy
    };
    e.note = "8 survives but its type was eliminated by the earlier reduction; 9 also \
              survives under the stated constants although the recorded list omits it \
              (recorded, not resolved)"
        .into();
    e
}

/// Exhaustive tail check: no survivors for 31 ≤ m ≤ 10⁴.
pub fn phi_tail_entry() -> LedgerEntry {
    let c = Rat::frac(1, 460);
    let survivors = phi_window_survivors((2, 3), &c, (31, 10_000));
    let mut e = LedgerEntry::new(
        "prop33-phiwindow-23-tail",
        "no survivors for 31 ≤ m ≤ 10⁴, each tested with exact φ(m)",
    );
    e.inputs = vec!["c = 1/460".into()];
    e.computed = format!("{} survivors", survivors.len());
    e.recorded = Some("0 survivors".into());
    e.claim = "the tail is empty on the finite window".into();
    e.verdict = if survivors.is_empty() {
        Verdict::Match
    } else {
        Verdict::Discrepancy
    };
    e
}

/// Certified rational enclosure of `31^(log 2 / log 3)` via integer power
/// comparisons and big-integer roots: `a/b < log2/log3 < (a+1)/b` is
/// witnessed by `3^a < 2^b` and `2^b < 3^(a+1)`, and the scaled floor roots
/// of `31^a` and `31^(a+1)` sandwich the value.
pub fn enclosure_31_pow() -> (Rat, Rat) {
    let b = 1000u32;
    // largest a with 3^a < 2^b
    let two_b = BigUint::from(2u32).pow(b);
    let mut a = 0u32;
    let mut pow3 = BigUint::one();
    loop {
        let next = &pow3 * 3u32;
        if next >= two_b {
            break;
        }
        pow3 = next;
        a += 1;
    }
    debug_assert!(BigUint::from(3u32).pow(a) < two_b);
    debug_assert!(two_b < BigUint::from(3u32).pow(a + 1));
    // scale by 10^k inside the b-th root for fractional precision
    let k = 40u32;
    let scale = BigUint::from(10u32).pow(k * b);
    let lower_root = (BigUint::from(31u32).pow(a) * &scale).nth_root(b);
    let upper_root = (BigUint::from(31u32).pow(a + 1) * &scale).nth_root(b) + 1u32;
    let denom = num_bigint::BigInt::from(BigUint::from(10u32).pow(k));
    (
        Rat::from_big(lower_root.into(), denom.clone()).unwrap(),
        Rat::from_big(upper_root.into(), denom).unwrap(),
    )
}

/// The one non-exact ledger check: the tail constant comparison
/// `1/49 < (1/2)(9/10 − 307/360 − 9/310 + 31^(log2/log3)/372)`, certified
/// by an exact rational enclosure of the irrational power.
pub fn tail_constant_entry() -> LedgerEntry {
    let (lower, upper) = enclosure_31_pow();
    let r = Rat::frac;
    let rhs_of = |x: &Rat| {
        let inner = &(&(&r(9, 10) - &or_pair_table_value(2, 3)) - &r(9, 310))
            + &x.checked_div(&Rat::int(372)).unwrap();
        &inner / &Rat::int(2)
    };
    let rhs_lower = rhs_of(&lower);
    let rhs_upper = rhs_of(&upper);
    let margin = &rhs_lower - &r(1, 49);
    let mut e = LedgerEntry::new(
        "prop33-tail-constant",
        "tail constant check: 1/49 is below the certified enclosure of the \
         totient-decay slack",
    );
    e.exact = false;
    e.inputs = vec![format!(
        "certified enclosure of 31^(log2/log3): [{lower}, {upper}]"
    )];
    e.computed = format!("slack in [{rhs_lower}, {rhs_upper}]");
    e.recorded = Some("1/49".into());
    e.claim = "1/49 < slack".into();
    e.verdict = if r(1, 49) < rhs_lower {
        Verdict::BoundHolds
    } else {
        Verdict::Discrepancy
    };
    e.note = format!(
        "non-exact value, exact interval bounds; margin above 1/49 is at least {margin}"
    );
    e
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

/// Conjugacy data for one element order in one catalog group.
#[derive(Debug, Clone)]
struct OrderCensus {
    /// class sizes in `L`, ascending
    class_sizes: Vec<u64>,
}

/// Census backend: class data per order, either from a socle model or from
/// a packed element closure for the one catalog group too large to index.
fn group_order_census(
    label: &str,
    orders: &[u64],
) -> Result<(BTreeMap<u64, OrderCensus>, u128, Option<Arc<SocleModel>>), LedgerError> {
    let entry = build_entry(label)?;
    if entry.expected_order_l <= crate::socle::SOCLE_SIZE_GUARD {
        let model = Arc::new(SocleModel::enumerate(&entry)?);
        let mut out: BTreeMap<u64, OrderCensus> = BTreeMap::new();
        for &o in orders {
            let mut sizes: Vec<u64> = model
                .class_ids_of_coset(0)
                .into_iter()
                .filter(|&c| model.class(c).elem_order == o)
                .map(|c| model.class(c).size as u64)
                .collect();
            sizes.sort_unstable();
            out.insert(o, OrderCensus { class_sizes: sizes });
        }
        Ok((out, entry.expected_order_l, Some(model)))
    } else {
        let census = packed_census(&entry, orders)?;
        Ok((census, entry.expected_order_l, None))
    }
}

/// Full element closure with byte-packed permutations, then conjugation
/// orbits restricted to the requested element orders. Deterministic: BFS
/// discovery plus sorted seeds.
fn packed_census(
    entry: &crate::atlas::AtlasEntry,
    orders: &[u64],
) -> Result<BTreeMap<u64, OrderCensus>, LedgerError> {
    let d = entry.degree;
    assert!(d <= 255, "packed census requires degree ≤ 255");
    let gens: Vec<Vec<u8>> = entry
        .gens_l
        .iter()
        .map(|g| g.images().iter().map(|&x| x as u8).collect())
        .collect();
    let compose = |a: &[u8], b: &[u8]| -> Vec<u8> { b.iter().map(|&x| a[x as usize]).collect() };
    let id: Vec<u8> = (0..d as u8).collect();

    let mut seen: FxHashSet<Vec<u8>> = FxHashSet::default();
    seen.reserve(entry.expected_order_l as usize + 1);
    seen.insert(id.clone());
    let mut frontier: VecDeque<Vec<u8>> = VecDeque::from([id]);
    while let Some(cur) = frontier.pop_front() {
        for g in &gens {
            let next = compose(&cur, g);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                frontier.push_back(next);
            }
        }
    }
    if seen.len() as u128 != entry.expected_order_l {
        return Err(LedgerError::Atlas(AtlasError::Construction(format!(
            "closure produced {} elements, expected {}",
            seen.len(),
            entry.expected_order_l
        ))));
    }

    let order_of = |p: &[u8]| -> u64 {
        let mut done = vec![false; p.len()];
        let mut order = 1u64;
        for s in 0..p.len() {
            if done[s] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = s;
            loop {
                done[cur] = true;
                len += 1;
                cur = p[cur] as usize;
                if cur == s {
                    break;
                }
            }
            order = num_integer::lcm(order, len);
        }
        order
    };

    // keep only the orders of interest, then drop the full closure
    let mut buckets: BTreeMap<u64, Vec<Vec<u8>>> = BTreeMap::new();
    for p in seen.iter() {
        let o = order_of(p);
        if orders.contains(&o) {
            buckets.entry(o).or_default().push(p.clone());
        }
    }
    drop(seen);

    let gen_invs: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| {
            let mut inv = vec![0u8; g.len()];
            for (i, &x) in g.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            inv
        })
        .collect();

    let mut out = BTreeMap::new();
    for (o, mut elems) in buckets {
        elems.sort_unstable();
        let index: FxHashMap<Vec<u8>, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let mut class_of = vec![u32::MAX; elems.len()];
        let mut sizes: Vec<u64> = Vec::new();
        for seed in 0..elems.len() as u32 {
            if class_of[seed as usize] != u32::MAX {
                continue;
            }
            let class_id = sizes.len() as u32;
            class_of[seed as usize] = class_id;
            let mut queue = vec![seed];
            let mut qi = 0;
            while qi < queue.len() {
                let x = queue[qi];
                qi += 1;
                for (g, ginv) in gens.iter().zip(&gen_invs) {
                    let conj = compose(&compose(g, &elems[x as usize]), ginv);
                    let j = index[&conj];
                    if class_of[j as usize] == u32::MAX {
                        class_of[j as usize] = class_id;
                        queue.push(j);
                    }
                }
            }
            sizes.push(queue.len() as u64);
        }
        sizes.sort_unstable();
        out.insert(o, OrderCensus { class_sizes: sizes });
    }
    for &o in orders {
        out.entry(o)
            .or_insert(OrderCensus { class_sizes: vec![] });
    }
    Ok(out)
}

/// Minimal order-7 class size of `L` for every catalog group whose
/// overgroup order is divisible by 7, plus the overgroup-fused minimum,
/// compared against the 24/72/89 thresholds.
pub fn census_class_size_7() -> Result<Vec<LedgerEntry>, LedgerError> {
    let mut entries = Vec::new();
    for label in crate::atlas::catalog_labels() {
        let atlas_entry = build_entry(label)?;
        if atlas_entry.expected_order_h0 % 7 != 0 {
            continue;
        }
        let (census, _order, model) = group_order_census(label, &[7])?;
        let sizes = &census[&7].class_sizes;
        let min_l = sizes.first().copied().unwrap_or(0);
        let fused_min = match &model {
            Some(m) => fused_min_class_size(m, 7),
            None => min_l, // trivial overgroup for the packed case
        };
        let mut e = LedgerEntry::new(
            &format!("census-class7-{label}"),
            &format!("minimal conjugacy class size of order-7 elements of L in {label}"),
        );
        e.inputs = vec![format!("L-class sizes {sizes:?}")];
        e.computed = min_l.to_string();
        e.note = format!("overgroup-fused minimum {fused_min}");
        match *label {
            "psl2_7" => {
                e.recorded = Some("24".into());
                e.claim = "equals 24".into();
                e.verdict = if min_l == 24 {
                    Verdict::Match
                } else {
                    Verdict::Discrepancy
                };
            }
            "psl2_8" => {
                e.recorded = Some("72".into());
                e.claim = "equals 72".into();
                e.verdict = if min_l == 72 {
                    Verdict::Match
                } else {
                    Verdict::Discrepancy
                };
            }
            _ => {
                e.claim = "at least 89".into();
                e.verdict = if min_l >= 89 {
                    Verdict::BoundHolds
                } else {
                    Verdict::Discrepancy
                };
            }
        }
        entries.push(e);
    }
    Ok(entries)
}

/// Minimum, over order-`o` classes, of the size of the overgroup-fused
/// class containing them.
fn fused_min_class_size(model: &SocleModel, order: u64) -> u64 {
    let ids = model.class_ids_of_coset(0);
    let mut fused: FxHashMap<u32, u32> = FxHashMap::default(); // class id → block root
    let find = |map: &mut FxHashMap<u32, u32>, mut x: u32| -> u32 {
        while map.get(&x).copied().unwrap_or(x) != x {
            x = map[&x];
        }
        x
    };
    for &id in &ids {
        let rep = model.class_rep(id);
        for c in 0..model.q_size() as u8 {
            let h = model.coset_rep(c);
            let conj = h.compose_unchecked(&rep).compose_unchecked(&h.inverse());
            if let Some(other) = model.class_of_element(0, &conj) {
                let (ra, rb) = (find(&mut fused, id), find(&mut fused, other));
                if ra != rb {
                    fused.insert(ra.max(rb), ra.min(rb));
                }
            }
        }
    }
    let mut block_sizes: FxHashMap<u32, u64> = FxHashMap::default();
    for &id in &ids {
        let root = find(&mut fused, id);
        *block_sizes.entry(root).or_insert(0) += model.class(id).size as u64;
    }
    ids.iter()
        .filter(|&&id| model.class(id).elem_order == order)
        .map(|&id| block_sizes[&find(&mut fused, id)])
        .min()
        .unwrap_or(0)
}

/// Max `|C_L(x)|/|L|` per element order for the degree-28 unitary and
/// degree-63 symplectic groups, against the recorded ratio table.
pub fn census_mfpr_table() -> Result<Vec<LedgerEntry>, LedgerError> {
    let table: [(&str, [(u64, i64, i64); 4]); 2] = [
        (
            "u3_3",
            [(2, 1, 63), (3, 1, 56), (7, 1, 864), (8, 1, 63)],
        ),
        (
            "sp6_2",
            [(2, 1, 63), (3, 1, 85), (7, 1, 207360), (8, 1, 63)],
        ),
    ];
    let mut entries = Vec::new();
    for (label, rows) in table {
        let orders: Vec<u64> = rows.iter().map(|r| r.0).collect();
        let (census, group_order, _) = group_order_census(label, &orders)?;
        for (order, num, den) in rows {
            let recorded = Rat::frac(num, den);
            let min_class = census[&order].class_sizes.first().copied();
            let mut e = LedgerEntry::new(
                &format!("census-mfpr-{label}-o{order}"),
                &format!("max |C_L(x)|/|L| over order-{order} elements of {label}"),
            );
            e.recorded = Some(recorded.to_string());
            match min_class {
                None => {
                    e.computed = "no elements of this order".into();
                    e.verdict = Verdict::BoundHolds;
                }
                Some(size) => {
                    // |C_L(x)|/|L| = (|L|/size)/|L| = 1/size
                    debug_assert_eq!(group_order % size as u128, 0);
                    let ratio = Rat::new(1, size as i64).expect("positive class size");
                    e.computed = ratio.to_string();
                    e.inputs = vec![format!("class sizes {:?}", census[&order].class_sizes)];
                    e.verdict = if order == 7 {
                        e.claim = format!("equals {recorded}");
                        if ratio == recorded {
                            Verdict::Match
                        } else {
                            Verdict::Discrepancy
                        }
                    } else {
                        e.claim = format!("at most {recorded}");
                        if ratio == recorded {
                            Verdict::Match
                        } else if ratio < recorded {
                            Verdict::BoundHolds
                        } else {
                            Verdict::Discrepancy
                        }
                    };
                }
            }
            entries.push(e);
        }
    }
    Ok(entries)
}

/// Max `mfpr` per element order across the class-representative pairs of a
/// diagonal group, computed exactly from the profiles.
pub fn mfpr_by_order(group: &TypeBGroup) -> Result<BTreeMap<u64, Rat>, LedgerError> {
    let model = &group.model;
    let mut out: BTreeMap<u64, Rat> = BTreeMap::new();
    for rep in class_reps(group, None) {
        if rep.pair.is_identity() {
            continue;
        }
        let profile = orbit_profile(model, &rep.pair)?;
        let mfpr = profile.max_fixed_point_ratio();
        let slot = out.entry(rep.order).or_insert_with(Rat::zero);
        if mfpr > *slot {
            *slot = mfpr;
        }
    }
    Ok(out)
}

/// Audit of the remark-level claim for the degree-45 unitary socle: with
/// exact per-order `mfpr` data from the diagonal catalog, the (2,3,8)
/// chain value stays below `1 − 2c` for `c ≤ 1/5000`. The recorded
/// constant is compared but not force-matched, since the inputs behind it
/// are unstated.
pub fn u4_2_chain_entry() -> Result<LedgerEntry, LedgerError> {
    let entry = build_entry("u4_2")?;
    let model = Arc::new(SocleModel::enumerate(&entry)?);
    let groups = catalog_type_b(&model)?;
    let ext = groups
        .iter()
        .find(|g| g.q0.len() == 2)
        .expect("the C2 extension exists");
    let mfpr = mfpr_by_order(ext)?;
    let slots: Vec<(i64, Rat)> = [2u64, 3, 8]
        .iter()
        .map(|o| (*o as i64, mfpr[o].clone()))
        .collect();
    let v = unitary_chain(&slots);
    let threshold = &(&Rat::one() - &v) / &Rat::int(2);
    let mut e = LedgerEntry::new(
        "prop35-u42-238",
        "degree-45 unitary socle, (2,3,8) chain with exact per-order mfpr data",
    );
    e.inputs = slots
        .iter()
        .map(|(o, m)| format!("mfpr(order {o}) = {m}"))
        .collect();
    e.computed = format!("chain {v}, slack threshold {threshold}");
    e.recorded = Some("25/2592".into());
    e.claim = "OR(S) < 1 − 2c for c ≤ 1/5000".into();
    e.verdict = if Rat::frac(1, 5000) < threshold {
        if threshold == Rat::frac(25, 2592) {
            Verdict::Match
        } else {
            Verdict::BoundHolds
        }
    } else {
        Verdict::Discrepancy
    };
    e.note = "the recorded constant is not derivable from the stated ratio tables; the \
              claim itself is certified with our exact class data"
        .into();
    Ok(e)
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

pub fn all_case_ids() -> Vec<String> {
    let mut ids: Vec<String> = fixed_chain_ids().iter().map(|s| s.to_string()).collect();
    ids.extend(bound_family_ids().iter().map(|s| s.to_string()));
    ids.push("prop33-phiwindow-23".into());
    ids.push("prop33-phiwindow-23-tail".into());
    ids.push("prop33-tail-constant".into());
    ids.push("census-class7".into());
    ids.push("census-mfpr".into());
    ids.push("prop35-u42-238".into());
    ids
}

/// Runs one ledger case (some ids expand to several entries).
pub fn run_case(id: &str) -> Result<Vec<LedgerEntry>, LedgerError> {
    if fixed_chain_ids().contains(&id) {
        return Ok(vec![eval_fixed_chain(id)?]);
    }
    if bound_family_ids().contains(&id) {
        return Ok(vec![eval_bound_case(id)?]);
    }
    match id {
        "prop33-phiwindow-23" => Ok(vec![phi_window_entry()]),
        "prop33-phiwindow-23-tail" => Ok(vec![phi_tail_entry()]),
        "prop33-tail-constant" => Ok(vec![tail_constant_entry()]),
        "census-class7" => census_class_size_7(),
        "census-mfpr" => census_mfpr_table(),
        "prop35-u42-238" => Ok(vec![u4_2_chain_entry()?]),
        other => Err(LedgerError::UnknownCase(other.to_string())),
    }
}

/// Runs the whole ledger in canonical order.
pub fn run_all() -> Result<Vec<LedgerEntry>, LedgerError> {
    let mut out = Vec::new();
    for id in all_case_ids() {
        out.extend(run_case(&id)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn or_pair_table_reproduces_all_six_values() {
        let want = [
            ((2, 3), "307/360"),
            ((2, 4), "19/24"),
            ((2, 5), "433/600"),
            ((2, 6), "13/18"),
            ((3, 3), "31/45"),
            ((3, 4), "113/180"),
        ];
        for ((k, l), v) in want {
            assert_eq!(or_pair_table_value(k, l), v.parse::<Rat>().unwrap(), "({k},{l})");
        }
    }

    #[test]
    fn fixed_chains_all_match() {
        for id in fixed_chain_ids() {
            let e = eval_fixed_chain(id).unwrap();
            assert_ne!(
                e.verdict,
                Verdict::Discrepancy,
                "{id}: computed {} vs {:?}",
                e.computed,
                e.recorded
            );
        }
    }

    #[test]
    fn chain_237_values() {
        let e = eval_fixed_chain("prop33-or3-237").unwrap();
        assert_eq!(e.computed, "1110857143/7776000000");
        assert_eq!(e.verdict, Verdict::Match);
        let e = eval_fixed_chain("prop33-total-237").unwrap();
        assert_eq!(e.computed, "7742057143/7776000000");
        assert_eq!(e.verdict, Verdict::Match);
    }

    #[test]
    fn chain_2310_2312_values() {
        assert_eq!(
            eval_fixed_chain("prop33-total-2310").unwrap().computed,
            "179/180"
        );
        assert_eq!(
            eval_fixed_chain("prop33-total-2312").unwrap().computed,
            "59/60"
        );
        assert_eq!(
            eval_fixed_chain("prop33-or3-2310").unwrap().computed,
            "17/120"
        );
        assert_eq!(
            eval_fixed_chain("prop33-or3-2312").unwrap().computed,
            "47/360"
        );
    }

    #[test]
    fn class_size_chain_values() {
        assert_eq!(
            eval_fixed_chain("prop35-generic-237").unwrap().computed,
            "52931/52955"
        );
        assert_eq!(
            eval_fixed_chain("prop35-u33-237").unwrap().computed,
            "335/336"
        );
        assert_eq!(
            eval_fixed_chain("prop35-u33-238").unwrap().computed,
            "125/126"
        );
        let sp = eval_fixed_chain("prop35-sp62").unwrap();
        assert_eq!(sp.computed, "33007/8225280");
        assert_eq!(sp.verdict, Verdict::Match);
    }

    #[test]
    fn bound_family_k_and_l() {
        let e = eval_bound_case("prop32-kbound").unwrap();
        assert_eq!(e.verdict, Verdict::Match, "{}", e.computed);
        let e = eval_bound_case("prop32-lbound-k2").unwrap();
        assert_eq!(e.verdict, Verdict::Match, "{}", e.computed);
        let e = eval_bound_case("prop32-lbound-k3").unwrap();
        assert_eq!(e.verdict, Verdict::Match, "{}", e.computed);
        let e = eval_bound_case("prop32-mbound-k2l7").unwrap();
        assert_eq!(e.verdict, Verdict::Match, "{}", e.computed);
        let e = eval_bound_case("prop32-mbound-33").unwrap();
        assert_eq!(e.verdict, Verdict::Match, "{}", e.computed);
        let e = eval_bound_case("prop32-mbound-26").unwrap();
        assert_eq!(e.verdict, Verdict::Match, "{}", e.computed);
    }

    #[test]
    fn bound_family_discrepancies_are_flagged_not_matched() {
        for id in ["prop32-mbound-34", "prop32-mbound-24", "prop32-mbound-25"] {
            let e = eval_bound_case(id).unwrap();
            assert_eq!(e.verdict, Verdict::Discrepancy, "{id}: {}", e.computed);
        }
    }

    #[test]
    fn bound_family_nonpositive_denominator() {
        let params = BoundParams {
            lambda: Rat::frac(1, 10),
            c_endpoint: Rat::frac(1, 2),
            a: Rat::frac(1, 10),
            b: Rat::frac(1, 10),
            k: 2,
            l: 3,
        };
        assert!(matches!(
            eval_bound_family(&params, BoundKind::MBound),
            Err(LedgerError::NonpositiveDenominator(_))
        ));
    }

    #[test]
    fn phi_window_examples() {
        let c = Rat::frac(1, 460);
        for m in [7u64, 10, 12] {
            assert!(phi_window_survives((2, 3), &c, m), "m = {m} must survive");
        }
        assert!(!phi_window_survives((2, 3), &c, 11));
        assert!(!phi_window_survives((2, 3), &c, 13));
        // m = 9 survives under the stated constants (recorded, not resolved)
        assert!(phi_window_survives((2, 3), &c, 9));
    }

    #[test]
    fn phi_window_monotone_in_c() {
        let small = Rat::frac(1, 1000);
        let large = Rat::frac(1, 100);
        let s_small = phi_window_survivors((2, 3), &small, (7, 40));
        let s_large = phi_window_survivors((2, 3), &large, (7, 40));
        for m in &s_small {
            assert!(s_large.contains(m), "enlarging c lost survivor {m}");
        }
    }

    #[test]
    fn phi_tail_is_empty() {
        let e = phi_tail_entry();
        assert_eq!(e.verdict, Verdict::Match, "{}", e.computed);
    }

    #[test]
    fn tail_constant_certified() {
        let e = tail_constant_entry();
        assert_eq!(e.verdict, Verdict::BoundHolds, "{}", e.computed);
        assert!(!e.exact);
        let (lower, upper) = enclosure_31_pow();
        assert!(lower < upper);
        // sanity: the value is near 8.73
        assert!(lower > Rat::frac(87, 10).checked_div(&Rat::one()).unwrap());
        assert!(upper < Rat::frac(88, 10));
    }
}
