//! The full low-genus sweep over the type-B catalog, with the expected
//! outcome pinned: a single degree-168 genus-1 hit of type (2,3,8) in the
//! order-56448 group, carrying exactly two ramification types, and an
//! obstruction-rejected Riemann–Hurwitz pass for the large-socle screen.

use serde::Serialize;
use thiserror::Error;

use crate::search::{
    self, prop_type_list, screen_class_triples, search_systems, ScreenOutcome, SearchConfig,
    SearchError, SearchOutcome, Strategy,
};
use crate::socle::catalog_type_b;

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Atlas(#[from] crate::atlas::AtlasError),
    #[error(transparent)]
    Socle(#[from] crate::socle::SocleError),
}

/// Per-group hit summary from the element sweep.
#[derive(Debug, Clone, Serialize)]
pub struct HitSummary {
    pub group: String,
    pub group_order: u128,
    pub degree: u64,
    pub tuple_type: Vec<u64>,
    pub genus: i64,
    pub ramification_types: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremOutcome {
    pub element_sweep: Vec<SearchOutcome>,
    pub screen_sweep: Vec<ScreenOutcome>,
    pub hits: Vec<HitSummary>,
    pub genus0_hits: usize,
    pub screen_passes: usize,
    pub unobstructed_screen_passes: usize,
    pub matched: bool,
    pub detail: String,
}

/// Element-sweep plan: socle label and either a fixed type list or the
/// per-group finite type list (plus the quadruple type where admitted).
fn element_plan() -> Vec<(&'static str, SweepTypes)> {
    vec![
        ("a5", SweepTypes::PropList { with_quadruple: true }),
        ("a6", SweepTypes::PropList { with_quadruple: false }),
        ("a7", SweepTypes::PropList { with_quadruple: false }),
        ("psl2_7", SweepTypes::Fixed(vec![vec![2, 3, 7], vec![2, 3, 8]])),
        ("psl2_8", SweepTypes::Fixed(vec![vec![2, 3, 7]])),
        ("psl2_13", SweepTypes::Fixed(vec![vec![2, 3, 7]])),
        ("psl2_9", SweepTypes::Fixed(vec![vec![2, 3, 8]])),
        ("psl2_16", SweepTypes::Fixed(vec![vec![2, 3, 8]])),
        ("psl2_25", SweepTypes::Fixed(vec![vec![2, 3, 8]])),
    ]
}

enum SweepTypes {
    Fixed(Vec<Vec<u64>>),
    PropList { with_quadruple: bool },
}

/// Group-order guard for the sweep: the catalog's largest element-searched
/// group (socle order 7800 with the full Klein extension) sits just above
/// the default guard, so the sweep pins an explicit cap that admits it.
pub const SWEEP_ORDER_CAP: u128 = 250_000_000;

/// Runs the element sweep (genus ≤ 1) and the large-socle screen
/// (genus < 6) and checks the combined outcome.
pub fn reproduce_theorem(threads: usize) -> Result<TheoremOutcome, TheoremError> {
    let mut element_sweep = Vec::new();
    for (socle, types) in element_plan() {
        let model = crate::search::model_for(&SearchConfig::new(socle, vec![], vec![]))?;
        // types can differ per group (element orders differ), so search one
        // group at a time
        let groups = catalog_type_b(&model)?;
        let mut merged: Option<SearchOutcome> = None;
        for (i, group) in groups.iter().enumerate() {
            let group_types: Vec<Vec<u64>> = match &types {
                SweepTypes::Fixed(list) => list.clone(),
                SweepTypes::PropList { with_quadruple } => {
                    let mut list = prop_type_list(group);
                    if *with_quadruple {
                        list.push(vec![2, 2, 2, 3]);
                    }
                    list
                }
            };
            let mut cfg = SearchConfig::new(socle, group_types, vec![0, 1]);
            cfg.groups = search::GroupSelector::Indices(vec![i]);
            cfg.threads = threads;
            cfg.order_cap = SWEEP_ORDER_CAP;
            let outcome = search_systems(&cfg, &model)?;
            match &mut merged {
                None => merged = Some(outcome),
                Some(m) => m.groups.extend(outcome.groups),
            }
        }
        if let Some(m) = merged {
            element_sweep.push(m);
        }
    }

    let mut screen_sweep = Vec::new();
    for socle in ["a8", "u4_2"] {
        let model = crate::search::model_for(&SearchConfig::new(socle, vec![], vec![]))?;
        let groups = catalog_type_b(&model)?;
        let mut merged: Option<ScreenOutcome> = None;
        for (i, group) in groups.iter().enumerate() {
            let group_types = if socle == "a8" {
                prop_type_list(group)
            } else {
                vec![vec![2, 3, 8]]
            };
            let mut cfg = SearchConfig::new(socle, group_types, (0..6).collect());
            cfg.groups = search::GroupSelector::Indices(vec![i]);
            cfg.strategy = Strategy::Screen;
            cfg.threads = threads;
            let outcome = screen_class_triples(&cfg, &model)?;
            match &mut merged {
                None => merged = Some(outcome),
                Some(m) => m.groups.extend(outcome.groups),
            }
        }
        if let Some(m) = merged {
            screen_sweep.push(m);
        }
    }

    Ok(evaluate(element_sweep, screen_sweep))
}

fn evaluate(element_sweep: Vec<SearchOutcome>, screen_sweep: Vec<ScreenOutcome>) -> TheoremOutcome {
    let mut hits = Vec::new();
    let mut genus0_hits = 0usize;
    for outcome in &element_sweep {
        for g in &outcome.groups {
            if g.records.is_empty() {
                continue;
            }
            genus0_hits += g.records.iter().filter(|r| r.genus == 0).count();
            let mut by_type: Vec<(Vec<u64>, i64)> = g
                .records
                .iter()
                .map(|r| (r.tuple_type.clone(), r.genus))
                .collect();
            by_type.sort();
            by_type.dedup();
            for (tuple_type, genus) in by_type {
                hits.push(HitSummary {
                    group: g.group.clone(),
                    group_order: g.group_order,
                    degree: g.degree,
                    tuple_type,
                    genus,
                    ramification_types: g.ramification_types.len(),
                });
            }
        }
    }

    let mut screen_passes = 0usize;
    let mut unobstructed = 0usize;
    let mut screen_ok = true;
    for outcome in &screen_sweep {
        for g in &outcome.groups {
            for r in &g.passing {
                screen_passes += 1;
                if !r.obstructed {
                    unobstructed += 1;
                }
                // the only admissible pass: the order-2·20160² group at
                // (2,3,7), genus 1, rejected by the quotient obstruction
                let expected = g.group_order == 2 * 20160 * 20160
                    && r.tuple_type == [2, 3, 7]
                    && r.passing_genus == [1]
                    && r.obstructed;
                if !expected {
                    screen_ok = false;
                }
            }
        }
    }
    let a8_pass_exists = screen_sweep.iter().any(|o| {
        o.groups.iter().any(|g| {
            g.group_order == 2 * 20160 * 20160
                && g.passing
                    .iter()
                    .any(|r| r.tuple_type == [2, 3, 7] && r.passing_genus == [1] && r.obstructed)
        })
    });

    let element_ok = hits.len() == 1
        && genus0_hits == 0
        && hits[0].group_order == 56448
        && hits[0].degree == 168
        && hits[0].tuple_type == [2, 3, 8]
        && hits[0].genus == 1
        && hits[0].ramification_types == 2;

    let matched = element_ok && screen_ok && a8_pass_exists && unobstructed == 0;
    let detail = if matched {
        "unique hit: order-56448 group on 168 points, type (2,3,8), genus 1, two \
         ramification types; large-socle screen passes only at the obstructed (2,3,7) \
         triple of the doubled degree-8 alternating socle"
            .to_string()
    } else {
        format!(
            "outcome differs from the expected classification: hits {:?}, genus0 {}, \
             screen passes {} ({} unobstructed), a8 pass exists: {}",
            hits.iter()
                .map(|h| (&h.group, &h.tuple_type, h.genus, h.ramification_types))
                .collect::<Vec<_>>(),
            genus0_hits,
            screen_passes,
            unobstructed,
            a8_pass_exists,
        )
    };

    TheoremOutcome {
        element_sweep,
        screen_sweep,
        hits,
        genus0_hits,
        screen_passes,
        unobstructed_screen_passes: unobstructed,
        matched,
        detail,
    }
}
