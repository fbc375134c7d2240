//! Genus-system search over the type-B catalog.
//!
//! Two strategies: `Elements` enumerates actual tuples for small socles
//! (fix one slot at class representatives, enumerate a second over all
//! elements of its order, derive the last from the product-one condition),
//! and `Screen` tests Riemann–Hurwitz for class-representative triples of
//! large socles, with the quotient-parity obstruction attached.

use std::collections::BTreeSet;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::perm::Perm;
use crate::rh::{self, genus_of_perm_tuple, orbit_profile, RhError};
use crate::socle::{
    catalog_type_b, class_reps, PairElement, SocleError, SocleModel, TypeBGroup,
};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Socle(#[from] SocleError),
    #[error(transparent)]
    Rh(#[from] RhError),
    #[error("type {0:?} is excluded at low genus (solvable or A5 closures); pass the override to search it anyway")]
    ExcludedType(Vec<u64>),
    #[error("type {0:?} must have 3 or 4 slots in nondecreasing order")]
    MalformedType(Vec<u64>),
    #[error("group {label} has order {order}, above the element-search guard {cap}; use screen mode or raise the guard")]
    OrderGuard {
        label: String,
        order: u128,
        cap: u128,
    },
    #[error("no catalog group selected")]
    NoGroups,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    Elements,
    Screen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GroupSelector {
    All,
    /// indices into the canonical catalog order for the socle
    Indices(Vec<usize>),
}

/// Configuration of one search run.
#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub socle: String,
    pub groups: GroupSelector,
    pub types: Vec<Vec<u64>>,
    pub genus_set: Vec<i64>,
    pub strategy: Strategy,
    pub threads: usize,
    /// conjugation-orbit cap for exact class labels
    pub dedup_cap: usize,
    /// element-search group-order guard
    pub order_cap: u128,
    pub allow_excluded_types: bool,
}

impl SearchConfig {
    pub fn new(socle: &str, types: Vec<Vec<u64>>, genus_set: Vec<i64>) -> SearchConfig {
        SearchConfig {
            socle: socle.to_string(),
            groups: GroupSelector::All,
            types,
            genus_set,
            strategy: Strategy::Elements,
            threads: 1,
            dedup_cap: 1_000_000,
            order_cap: 200_000_000,
            allow_excluded_types: false,
        }
    }
}

/// The closure-excluded types: for these every system has solvable group or
/// `A₅`, so they cannot carry a type-B system and are skipped unless
/// explicitly overridden.
pub fn is_low_genus_excluded_type(t: &[u64]) -> bool {
    match t {
        [a, b] => a == b,
        [2, 2, _] => true,
        [2, 2, 2, 2] => true,
        [2, 3, 3] | [2, 3, 4] | [2, 3, 5] | [2, 3, 6] | [2, 4, 4] | [3, 3, 3] => true,
        _ => false,
    }
}

fn validate_type(t: &[u64], allow_excluded: bool) -> Result<(), SearchError> {
    if !(t.len() == 3 || t.len() == 4) || t.windows(2).any(|w| w[0] > w[1]) || t[0] < 2 {
        return Err(SearchError::MalformedType(t.to_vec()));
    }
    if !allow_excluded && is_low_genus_excluded_type(t) {
        return Err(SearchError::ExcludedType(t.to_vec()));
    }
    Ok(())
}

/// The finite triple-type list for a group: `(2,3,m)` for `m ≥ 7` (capped
/// at 29 for socles other than `A₅`), `(2,4,m)` for `5 ≤ m ≤ 37`,
/// `(2,5,m)` for `5 ≤ m ≤ 13`, `(2,6,m)` for `6 ≤ m ≤ 9`, `(3,3,m)` for
/// `4 ≤ m ≤ 9`, and `(3,4,m)` for `m ∈ {4,5}`, with `m` ranging over the
/// element orders actually present in the group.
pub fn prop_type_list(group: &TypeBGroup) -> Vec<Vec<u64>> {
    let orders = element_orders(group);
    let is_a5 = group.model.entry.label == "a5";
    let mut types: Vec<Vec<u64>> = Vec::new();
    let ranges: [(u64, u64, u64, u64); 6] = [
        (2, 3, 7, if is_a5 { u64::MAX } else { 29 }),
        (2, 4, 5, 37),
        (2, 5, 5, 13),
        (2, 6, 6, 9),
        (3, 3, 4, 9),
        (3, 4, 4, 5),
    ];
    for (k, l, m_lo, m_hi) in ranges {
        if !orders.contains(&k) || !orders.contains(&l) {
            continue;
        }
        for &m in &orders {
            if m >= m_lo && m <= m_hi && m >= l {
                types.push(vec![k, l, m]);
            }
        }
    }
    types.sort();
    types.dedup();
    types
}

/// Element orders present in the group, from class data.
pub fn element_orders(group: &TypeBGroup) -> BTreeSet<u64> {
    class_reps(group, None).iter().map(|r| r.order).collect()
}

/// Coset labels of `Q₀` realized by elements of the given order.
pub fn available_labels_for_order(group: &TypeBGroup, order: u64) -> Vec<u8> {
    let mut labels: BTreeSet<u8> = BTreeSet::new();
    for rep in class_reps(group, Some(order)) {
        labels.insert(rep.coset);
    }
    labels.into_iter().collect()
}

/// Quotient obstruction for a tuple type: the tuple's images in `Q₀ = G/L²`
/// must multiply to the identity and generate `Q₀`. Returns `true` when no
/// assignment of available labels achieves both, so no generating
/// product-one tuple of this type can exist in the group.
pub fn quotient_obstruction(model: &SocleModel, q0: &[u8], available: &[Vec<u8>]) -> bool {
    if available.iter().any(|slot| slot.is_empty()) {
        return true;
    }
    let mut assignment = vec![0usize; available.len()];
    loop {
        let labels: Vec<u8> = assignment
            .iter()
            .zip(available)
            .map(|(&i, slot)| slot[i])
            .collect();
        let product = labels.iter().fold(0u8, |acc, &c| model.coset_mul(acc, c));
        if product == 0 && labels_generate(model, q0, &labels) {
            return false;
        }
        let mut pos = 0;
        loop {
            if pos == assignment.len() {
                return true;
            }
            assignment[pos] += 1;
            if assignment[pos] < available[pos].len() {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

fn labels_generate(model: &SocleModel, q0: &[u8], labels: &[u8]) -> bool {
    let mut closure: BTreeSet<u8> = [0u8].into();
    closure.extend(labels.iter().copied());
    loop {
        let mut next = closure.clone();
        for &a in &closure {
            for &b in &closure {
                next.insert(model.coset_mul(a, b));
            }
        }
        if next.len() == closure.len() {
            break;
        }
        closure = next;
    }
    closure.len() == q0.len() && q0.iter().all(|c| closure.contains(c))
}

/// Serializable form of a pair element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WitnessPair {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

impl WitnessPair {
    fn from_pair(p: &PairElement) -> WitnessPair {
        WitnessPair {
            u: p.u.images().to_vec(),
            v: p.v.images().to_vec(),
        }
    }
}

/// Class label of one tuple entry: coset, coordinatewise `L`-classes, order
/// and the divisor-power fixed-point vector, plus the display name assigned
/// after exact-class dedup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassLabel {
    pub name: String,
    pub order: u64,
    pub coset: u8,
    pub class_u: u32,
    pub class_v: u32,
    pub fixed_vector: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Granularity {
    Exact,
    Coarse,
}

/// A multiset of class labels identifying one ramification type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationType {
    pub group: String,
    pub labels: Vec<ClassLabel>,
    pub granularity: Granularity,
    pub multiplicity: usize,
}

/// A verified product-one generating tuple with its genus.
#[derive(Debug, Clone, Serialize)]
pub struct GenusSystemRecord {
    pub group: String,
    pub group_order: u128,
    pub degree: u64,
    pub tuple_type: Vec<u64>,
    pub genus: i64,
    pub witness: Vec<WitnessPair>,
    pub class_labels: Vec<ClassLabel>,
    pub product_verified: bool,
    pub generation_verified: bool,
    pub genus_reverified: bool,
}

/// Outcome of one `search` run over a socle.
#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub socle: String,
    pub groups: Vec<GroupSearchSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSearchSummary {
    pub group: String,
    pub group_order: u128,
    pub degree: u64,
    pub types_searched: Vec<Vec<u64>>,
    pub candidates_tested: u64,
    pub records: Vec<GenusSystemRecord>,
    pub ramification_types: Vec<RamificationType>,
}

/// One RH-passing class triple from screen mode.
#[derive(Debug, Clone, Serialize)]
pub struct ScreenRecord {
    pub group: String,
    pub tuple_type: Vec<u64>,
    pub rep_labels: Vec<ClassLabel>,
    pub orbit_counts: Vec<u64>,
    pub passing_genus: Vec<i64>,
    pub obstructed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScreenOutcome {
    pub socle: String,
    pub groups: Vec<GroupScreenSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupScreenSummary {
    pub group: String,
    pub group_order: u128,
    pub degree: u64,
    pub triples_tested: u64,
    pub types_screened: Vec<Vec<u64>>,
    pub passing: Vec<ScreenRecord>,
}

fn selected_groups(
    model: &Arc<SocleModel>,
    selector: &GroupSelector,
) -> Result<Vec<TypeBGroup>, SearchError> {
    let all = catalog_type_b(model)?;
    let groups = match selector {
        GroupSelector::All => all,
        GroupSelector::Indices(idx) => {
            let mut picked: Vec<usize> = idx.clone();
            picked.sort_unstable();
            picked.dedup();
            all.into_iter()
                .enumerate()
                .filter(|(i, _)| picked.contains(i))
                .map(|(_, g)| g)
                .collect()
        }
    };
    if groups.is_empty() {
        return Err(SearchError::NoGroups);
    }
    Ok(groups)
}

// ---------------------------------------------------------------------------
// Elements mode
// ---------------------------------------------------------------------------

/// A block of same-(class,class) candidates for the enumerated slot; the
/// orbit count is constant across the block.
struct CandidateBlock {
    coset: u8,
    members_u: Vec<u32>,
    members_v: Vec<u32>,
    orb: u64,
}

struct CandidateSpace {
    blocks: Vec<CandidateBlock>,
    offsets: Vec<u64>,
    total: u64,
}

impl CandidateSpace {
    fn build(
        model: &SocleModel,
        group: &TypeBGroup,
        order: u64,
    ) -> Result<CandidateSpace, RhError> {
        let mut blocks = Vec::new();
        for rep in class_reps(group, Some(order)) {
            let orb = orbit_profile(model, &rep.pair)?.orbit_count();
            blocks.push(CandidateBlock {
                coset: rep.coset,
                members_u: model.class_member_indices(rep.class_u).to_vec(),
                members_v: model.class_member_indices(rep.class_v).to_vec(),
                orb,
            });
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0u64;
        for b in &blocks {
            offsets.push(total);
            total += b.members_u.len() as u64 * b.members_v.len() as u64;
        }
        Ok(CandidateSpace {
            blocks,
            offsets,
            total,
        })
    }

    fn materialize(&self, model: &SocleModel, id: u64) -> (PairElement, u64) {
        let block_idx = match self.offsets.binary_search(&id) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let block = &self.blocks[block_idx];
        let local = id - self.offsets[block_idx];
        let cols = block.members_v.len() as u64;
        let (i, j) = ((local / cols) as usize, (local % cols) as usize);
        let u = model.coset_element(block.coset, block.members_u[i]);
        let v = model.coset_element(block.coset, block.members_v[j]);
        (PairElement::new_unchecked(u, v, block.coset), block.orb)
    }
}

/// Exhaustive element-level search: complete up to simultaneous
/// `G`-conjugation. The slot with the fewest classes is fixed at class
/// representatives, the cheaper remaining slot is enumerated over all
/// elements of its order, and the last slot is derived from product one.
/// Pruning order: element order, then the Riemann–Hurwitz genus filter via
/// orbit counts, then transitivity, then the full generation test.
pub fn search_systems(
    cfg: &SearchConfig,
    model: &Arc<SocleModel>,
) -> Result<SearchOutcome, SearchError> {
    for t in &cfg.types {
        validate_type(t, cfg.allow_excluded_types)?;
    }
    let groups = selected_groups(model, &cfg.groups)?;
    for g in &groups {
        if g.order > cfg.order_cap {
            return Err(SearchError::OrderGuard {
                label: g.label.clone(),
                order: g.order,
                cap: cfg.order_cap,
            });
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .expect("thread pool");
    let mut summaries = Vec::new();
    for group in &groups {
        let mut records: Vec<GenusSystemRecord> = Vec::new();
        let mut tested = 0u64;
        let mut types_searched = Vec::new();
        for t in &cfg.types {
            types_searched.push(t.clone());
            let (found, count) = if t.len() == 3 {
                search_triples(cfg, model, group, [t[0], t[1], t[2]], &pool)?
            } else {
                search_quadruples(cfg, model, group, [t[0], t[1], t[2], t[3]])?
            };
            tested += count;
            records.extend(found);
        }
        let ram = assign_labels_and_dedup(model, group, &mut records, cfg.dedup_cap);
        records.sort_by(|a, b| {
            (&a.tuple_type, a.genus, &a.witness).cmp(&(&b.tuple_type, b.genus, &b.witness))
        });
        summaries.push(GroupSearchSummary {
            group: group.label.clone(),
            group_order: group.order,
            degree: model.size() as u64,
            types_searched,
            candidates_tested: tested,
            records,
            ramification_types: ram,
        });
    }
    Ok(SearchOutcome {
        socle: cfg.socle.clone(),
        groups: summaries,
    })
}

struct RawHit {
    tuple: Vec<PairElement>,
    genus: i64,
}

fn search_triples(
    cfg: &SearchConfig,
    model: &Arc<SocleModel>,
    group: &TypeBGroup,
    orders: [u64; 3],
    pool: &rayon::ThreadPool,
) -> Result<(Vec<GenusSystemRecord>, u64), SearchError> {
    let rep_sets: Vec<Vec<crate::socle::ClassRep>> = orders
        .iter()
        .map(|&o| class_reps(group, Some(o)))
        .collect();
    if rep_sets.iter().any(|r| r.is_empty()) {
        return Ok((Vec::new(), 0));
    }
    let fixed_slot = (0..3).min_by_key(|&i| rep_sets[i].len()).unwrap();
    let element_counts: Vec<u64> = rep_sets
        .iter()
        .map(|reps| reps.iter().map(|r| r.size).sum())
        .collect();
    let enum_slot = (0..3)
        .filter(|&i| i != fixed_slot)
        .min_by_key(|&i| element_counts[i])
        .unwrap();
    let derived_slot = (0..3).find(|&i| i != fixed_slot && i != enum_slot).unwrap();

    let fixed_reps: Vec<(PairElement, u64)> = rep_sets[fixed_slot]
        .iter()
        .map(|r| orbit_profile(model, &r.pair).map(|p| (r.pair.clone(), p.orbit_count())))
        .collect::<Result<_, _>>()?;
    let space = CandidateSpace::build(model, group, orders[enum_slot])?;
    let n = model.size() as u64;
    let target_sums: Vec<i64> = cfg
        .genus_set
        .iter()
        .map(|&g| n as i64 + 2 - 2 * g)
        .collect();

    const CHUNK: u64 = 1 << 13;
    let chunk_count = space.total.div_ceil(CHUNK).max(1);
    let derived_order = orders[derived_slot];

    let hits: Vec<Vec<RawHit>> = pool.install(|| {
        use rayon::prelude::*;
        (0..chunk_count)
            .into_par_iter()
            .map(|chunk| {
                let lo = chunk * CHUNK;
                let hi = (lo + CHUNK).min(space.total);
                let mut found = Vec::new();
                for id in lo..hi {
                    let (cand, cand_orb) = space.materialize(model, id);
                    for (rep, rep_orb) in &fixed_reps {
                        let derived = solve_third_slot(model, rep, &cand, fixed_slot, enum_slot);
                        if derived.order() != derived_order {
                            continue;
                        }
                        let derived_orb = match orbit_profile(model, &derived) {
                            Ok(p) => p.orbit_count(),
                            Err(_) => continue,
                        };
                        let sum = (rep_orb + cand_orb + derived_orb) as i64;
                        let genus = match target_sums.iter().position(|&t| t == sum) {
                            Some(pos) => cfg.genus_set[pos],
                            None => continue,
                        };
                        let mut tuple = vec![derived.clone(), derived.clone(), derived.clone()];
                        tuple[fixed_slot] = rep.clone();
                        tuple[enum_slot] = cand.clone();
                        tuple[derived_slot] = derived;
                        if !rh::tuple_transitive(model, &tuple) {
                            continue;
                        }
                        if !rh::tuple_generates(model, &tuple, group) {
                            continue;
                        }
                        found.push(RawHit { tuple, genus });
                    }
                }
                found
            })
            .collect()
    });

    let tested = space.total * fixed_reps.len() as u64;
    let mut records = Vec::new();
    for hit in hits.into_iter().flatten() {
        records.push(verify_and_record(model, group, hit, &orders)?);
    }
    Ok((records, tested))
}

/// With two slots of `(x₀, x₁, x₂)` known, solves `x₀·x₁·x₂ = 1` for the
/// remaining one.
fn solve_third_slot(
    model: &SocleModel,
    fixed: &PairElement,
    enumerated: &PairElement,
    fixed_slot: usize,
    enum_slot: usize,
) -> PairElement {
    let derived_slot = 3 - fixed_slot - enum_slot;
    let slot_of = |i: usize| -> &PairElement {
        if i == fixed_slot {
            fixed
        } else {
            enumerated
        }
    };
    match derived_slot {
        2 => slot_of(0).product(model, slot_of(1)).inverse(model),
        1 => slot_of(0)
            .inverse(model)
            .product(model, &slot_of(2).inverse(model)),
        _ => slot_of(1).product(model, slot_of(2)).inverse(model),
    }
}

fn search_quadruples(
    cfg: &SearchConfig,
    model: &Arc<SocleModel>,
    group: &TypeBGroup,
    orders: [u64; 4],
) -> Result<(Vec<GenusSystemRecord>, u64), SearchError> {
    // x1 class-fixed, x2 and x3 enumerated, x4 derived
    let reps = class_reps(group, Some(orders[0]));
    if reps.is_empty() {
        return Ok((Vec::new(), 0));
    }
    let space2 = CandidateSpace::build(model, group, orders[1])?;
    let space3 = CandidateSpace::build(model, group, orders[2])?;
    let n = model.size() as u64;
    let target_sums: Vec<i64> = cfg
        .genus_set
        .iter()
        .map(|&g| 2 * n as i64 + 2 - 2 * g)
        .collect();
    let mut records = Vec::new();
    let mut tested = 0u64;
    for rep in &reps {
        let rep_orb = orbit_profile(model, &rep.pair)?.orbit_count();
        for id2 in 0..space2.total {
            let (x2, orb2) = space2.materialize(model, id2);
            let x1x2 = rep.pair.product(model, &x2);
            for id3 in 0..space3.total {
                tested += 1;
                let (x3, orb3) = space3.materialize(model, id3);
                let x4 = x1x2.product(model, &x3).inverse(model);
                if x4.order() != orders[3] {
                    continue;
                }
                let orb4 = match orbit_profile(model, &x4) {
                    Ok(p) => p.orbit_count(),
                    Err(_) => continue,
                };
                let sum = (rep_orb + orb2 + orb3 + orb4) as i64;
                let genus = match target_sums.iter().position(|&t| t == sum) {
                    Some(pos) => cfg.genus_set[pos],
                    None => continue,
                };
                let tuple = vec![rep.pair.clone(), x2.clone(), x3.clone(), x4];
                if !rh::tuple_transitive(model, &tuple) {
                    continue;
                }
                if !rh::tuple_generates(model, &tuple, group) {
                    continue;
                }
                records.push(verify_and_record(model, group, RawHit { tuple, genus }, &orders)?);
            }
        }
    }
    Ok((records, tested))
}

/// Independent re-verification of a found tuple: product recomputed in pair
/// space, genus recomputed from freshly materialized `Ω`-permutations by
/// direct cycle counts, and generation recomputed by a fresh base-and-
/// strong-generating-set construction (in `Ω` for small point sets).
fn verify_and_record(
    model: &Arc<SocleModel>,
    group: &TypeBGroup,
    hit: RawHit,
    orders: &[u64],
) -> Result<GenusSystemRecord, SearchError> {
    let product = hit
        .tuple
        .iter()
        .fold(PairElement::identity(model), |acc, p| acc.product(model, p));
    let product_verified = product.is_identity();

    let omega: Vec<Perm> = hit
        .tuple
        .iter()
        .map(|p| model.act(p))
        .collect::<Result<_, _>>()?;
    let direct = genus_of_perm_tuple(&omega)?;
    let genus_reverified = direct.genus == Some(hit.genus) && direct.product_is_identity;

    let generation_verified = if model.size() <= 1000 {
        match crate::bsgs::PermGroup::build_bsgs(&omega) {
            Ok(g) => g.order() == group.order,
            Err(_) => false,
        }
    } else {
        rh::tuple_generates(model, &hit.tuple, group)
    };

    let class_labels = hit
        .tuple
        .iter()
        .map(|p| coarse_label(model, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GenusSystemRecord {
        group: group.label.clone(),
        group_order: group.order,
        degree: model.size() as u64,
        tuple_type: orders.to_vec(),
        genus: hit.genus,
        witness: hit.tuple.iter().map(WitnessPair::from_pair).collect(),
        class_labels,
        product_verified,
        generation_verified,
        genus_reverified,
    })
}

fn coarse_label(model: &SocleModel, p: &PairElement) -> Result<ClassLabel, SearchError> {
    let class_u = model
        .class_of_element(p.coset, &p.u)
        .ok_or(SocleError::NotInOvergroup)?;
    let class_v = model
        .class_of_element(p.coset, &p.v)
        .ok_or(SocleError::NotInOvergroup)?;
    let profile = orbit_profile(model, p)?;
    Ok(ClassLabel {
        name: String::new(),
        order: p.order(),
        coset: p.coset,
        class_u,
        class_v,
        fixed_vector: profile.entries.iter().map(|&(d, f, _)| (d, f)).collect(),
    })
}

/// Exact `G`-class canonical form of a pair: the lexicographically least
/// element of its conjugation orbit under the group generators. `None`
/// when the orbit exceeds the cap (the caller downgrades granularity).
fn exact_canonical_form(
    group: &TypeBGroup,
    seed: &PairElement,
    cap: usize,
) -> Option<PairElement> {
    let mut seen: BTreeSet<PairElement> = BTreeSet::new();
    let mut queue = vec![seed.clone()];
    seen.insert(seed.clone());
    let mut qi = 0;
    while qi < queue.len() {
        let cur = queue[qi].clone();
        qi += 1;
        for g in &group.gen_pairs {
            let conj = cur.conjugate_by(g);
            if !seen.contains(&conj) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(conj.clone());
                queue.push(conj);
            }
        }
    }
    seen.into_iter().next()
}

/// Deduplicates records into ramification types and assigns display names
/// (`2a`, `3a`, `8b`, …) to the classes involved. Exact `G`-conjugacy is
/// used when every class orbit fits the cap; otherwise the coordinatewise
/// labels stand, with an explicit coarse-granularity flag.
pub fn assign_labels_and_dedup(
    model: &SocleModel,
    group: &TypeBGroup,
    records: &mut [GenusSystemRecord],
    cap: usize,
) -> Vec<RamificationType> {
    if records.is_empty() {
        return Vec::new();
    }
    let mut canon_cache: FxHashMap<(Vec<u32>, Vec<u32>), Option<PairElement>> =
        FxHashMap::default();
    let mut all_exact = true;
    let mut canon_of_record: Vec<Vec<Option<PairElement>>> = Vec::with_capacity(records.len());
    for rec in records.iter() {
        let mut canons = Vec::with_capacity(rec.witness.len());
        for w in &rec.witness {
            let key = (w.u.clone(), w.v.clone());
            let canon = canon_cache
                .entry(key)
                .or_insert_with(|| {
                    let u = Perm::from_images(w.u.clone()).expect("stored witness is valid");
                    let v = Perm::from_images(w.v.clone()).expect("stored witness is valid");
                    let coset = model.coset_of(&u).expect("witness lies in H0");
                    let pair = PairElement::new_unchecked(u, v, coset);
                    exact_canonical_form(group, &pair, cap)
                })
                .clone();
            if canon.is_none() {
                all_exact = false;
            }
            canons.push(canon);
        }
        canon_of_record.push(canons);
    }

    // name assignment: distinct canonical classes, sorted, lettered per order
    let mut names: FxHashMap<(u64, Vec<u32>, Vec<u32>), String> = FxHashMap::default();
    if all_exact {
        let mut distinct: Vec<(u64, PairElement)> = Vec::new();
        for canons in &canon_of_record {
            for c in canons.iter().flatten() {
                let entry = (c.order(), c.clone());
                if !distinct.contains(&entry) {
                    distinct.push(entry);
                }
            }
        }
        distinct.sort();
        let mut per_order: FxHashMap<u64, u8> = FxHashMap::default();
        for (order, canon) in distinct {
            let counter = per_order.entry(order).or_insert(0);
            let name = format!("{}{}", order, (b'a' + *counter) as char);
            *counter += 1;
            names.insert(
                (order, canon.u.images().to_vec(), canon.v.images().to_vec()),
                name,
            );
        }
    }

    let mut type_map: Vec<(Vec<String>, RamificationType)> = Vec::new();
    for (rec, canons) in records.iter_mut().zip(&canon_of_record) {
        let granularity = if all_exact {
            Granularity::Exact
        } else {
            Granularity::Coarse
        };
        for (label, canon) in rec.class_labels.iter_mut().zip(canons) {
            label.name = match (all_exact, canon) {
                (true, Some(c)) => {
                    names[&(c.order(), c.u.images().to_vec(), c.v.images().to_vec())].clone()
                }
                _ => format!(
                    "o{}c{}[{},{}]",
                    label.order, label.coset, label.class_u, label.class_v
                ),
            };
        }
        let mut sorted_labels = rec.class_labels.clone();
        sorted_labels.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
        let key: Vec<String> = sorted_labels.iter().map(|l| l.name.clone()).collect();
        match type_map.iter_mut().find(|(k, _)| *k == key) {
            Some((_, rt)) => rt.multiplicity += 1,
            None => type_map.push((
                key,
                RamificationType {
                    group: group.label.clone(),
                    labels: sorted_labels,
                    granularity,
                    multiplicity: 1,
                },
            )),
        }
    }
    type_map.sort_by(|a, b| a.0.cmp(&b.0));
    type_map.into_iter().map(|(_, rt)| rt).collect()
}

/// Standalone ramification-type dedup over prebuilt records.
pub fn dedup_ramification(
    model: &SocleModel,
    group: &TypeBGroup,
    records: &mut [GenusSystemRecord],
    cap: usize,
) -> Vec<RamificationType> {
    assign_labels_and_dedup(model, group, records, cap)
}

// ---------------------------------------------------------------------------
// Screen mode
// ---------------------------------------------------------------------------

/// Class-representative Riemann–Hurwitz screening: every ordered triple of
/// class representatives with the requested orders is tested at every genus
/// in the set, with the quotient obstruction verdict attached. Records are
/// emitted for passing triples; the summary carries the tested count. Orbit
/// counts are constant on the finer coordinatewise classes, so a passing
/// screen record exists for every genuine system (no false negatives
/// relative to the element-level search).
pub fn screen_class_triples(
    cfg: &SearchConfig,
    model: &Arc<SocleModel>,
) -> Result<ScreenOutcome, SearchError> {
    for t in &cfg.types {
        validate_type(t, cfg.allow_excluded_types)?;
        if t.len() != 3 {
            return Err(SearchError::MalformedType(t.clone()));
        }
    }
    let groups = selected_groups(model, &cfg.groups)?;
    let mut summaries = Vec::new();
    for group in &groups {
        let mut passing = Vec::new();
        let mut tested = 0u64;
        let mut types_screened = Vec::new();
        for t in &cfg.types {
            types_screened.push(t.clone());
            let rep_sets: Vec<Vec<(crate::socle::ClassRep, u64, ClassLabel)>> = t
                .iter()
                .map(|&o| {
                    class_reps(group, Some(o))
                        .into_iter()
                        .map(|r| {
                            let profile = orbit_profile(model, &r.pair)?;
                            let label = coarse_label(model, &r.pair)?;
                            Ok((r, profile.orbit_count(), label))
                        })
                        .collect::<Result<Vec<_>, SearchError>>()
                })
                .collect::<Result<_, _>>()?;
            if rep_sets.iter().any(|r| r.is_empty()) {
                continue;
            }
            let n = model.size() as u64;
            for (r1, o1, l1) in &rep_sets[0] {
                for (r2, o2, l2) in &rep_sets[1] {
                    for (r3, o3, l3) in &rep_sets[2] {
                        tested += 1;
                        let results = rh::rh_screen(&[*o1, *o2, *o3], n, &cfg.genus_set);
                        let passing_genus: Vec<i64> = results
                            .iter()
                            .filter(|&&(_, pass)| pass)
                            .map(|&(g, _)| g)
                            .collect();
                        if passing_genus.is_empty() {
                            continue;
                        }
                        // a genuine tuple needs its Q0 labels to multiply to
                        // the identity and to generate Q0
                        let labels = [r1.coset, r2.coset, r3.coset];
                        let product =
                            labels.iter().fold(0u8, |acc, &c| model.coset_mul(acc, c));
                        let obstructed =
                            product != 0 || !labels_generate(model, &group.q0, &labels);
                        passing.push(ScreenRecord {
                            group: group.label.clone(),
                            tuple_type: t.clone(),
                            rep_labels: vec![l1.clone(), l2.clone(), l3.clone()],
                            orbit_counts: vec![*o1, *o2, *o3],
                            passing_genus,
                            obstructed,
                        });
                    }
                }
            }
        }
        summaries.push(GroupScreenSummary {
            group: group.label.clone(),
            group_order: group.order,
            degree: model.size() as u64,
            triples_tested: tested,
            types_screened,
            passing,
        });
    }
    Ok(ScreenOutcome {
        socle: cfg.socle.clone(),
        groups: summaries,
    })
}

/// Builds the socle model for a config.
pub fn model_for(cfg: &SearchConfig) -> Result<Arc<SocleModel>, crate::atlas::AtlasError> {
    let entry = crate::atlas::build_entry(&cfg.socle)?;
    SocleModel::enumerate(&entry)
        .map(Arc::new)
        .map_err(|e| crate::atlas::AtlasError::Construction(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::build_entry;
    use crate::rh::genus_of_pair_tuple;

    fn model(label: &str) -> Arc<SocleModel> {
        Arc::new(SocleModel::enumerate(&build_entry(label).unwrap()).unwrap())
    }

    #[test]
    fn excluded_types_list() {
        assert!(is_low_genus_excluded_type(&[2, 3, 5]));
        assert!(is_low_genus_excluded_type(&[2, 2, 9]));
        assert!(is_low_genus_excluded_type(&[2, 2, 2, 2]));
        assert!(is_low_genus_excluded_type(&[3, 3, 3]));
        assert!(is_low_genus_excluded_type(&[7, 7]));
        assert!(!is_low_genus_excluded_type(&[2, 3, 7]));
        assert!(!is_low_genus_excluded_type(&[2, 2, 2, 3]));
        assert!(!is_low_genus_excluded_type(&[2, 4, 5]));
    }

    #[test]
    fn excluded_types_rejected_without_override() {
        let m = model("a5");
        let cfg = SearchConfig::new("a5", vec![vec![2, 3, 5]], vec![0, 1]);
        assert!(matches!(
            search_systems(&cfg, &m),
            Err(SearchError::ExcludedType(_))
        ));
        let mut cfg2 = cfg.clone();
        cfg2.allow_excluded_types = true;
        assert!(search_systems(&cfg2, &m).is_ok());
    }

    #[test]
    fn order_guard_respected() {
        let m = model("a5");
        let mut cfg = SearchConfig::new("a5", vec![vec![2, 3, 10]], vec![1]);
        cfg.order_cap = 1000;
        assert!(matches!(
            search_systems(&cfg, &m),
            Err(SearchError::OrderGuard { .. })
        ));
    }

    #[test]
    fn psl2_7_type_238_finds_two_ramification_types() {
        let m = model("psl2_7");
        let mut cfg = SearchConfig::new("psl2_7", vec![vec![2, 3, 8]], vec![0, 1]);
        cfg.threads = 2;
        let outcome = search_systems(&cfg, &m).unwrap();
        assert_eq!(outcome.groups.len(), 2);
        // the plain square has no order-8 elements
        assert!(outcome.groups[0].records.is_empty());
        let ext = &outcome.groups[1];
        assert_eq!(ext.group_order, 56448);
        assert!(!ext.records.is_empty());
        assert!(ext.records.iter().all(|r| r.genus == 1));
        assert!(ext
            .records
            .iter()
            .all(|r| r.product_verified && r.generation_verified && r.genus_reverified));
        assert_eq!(ext.ramification_types.len(), 2);
        for rt in &ext.ramification_types {
            assert_eq!(rt.granularity, Granularity::Exact);
        }
    }

    #[test]
    fn psl2_13_type_237_is_empty() {
        let m = model("psl2_13");
        let cfg = SearchConfig::new("psl2_13", vec![vec![2, 3, 7]], vec![0, 1]);
        let outcome = search_systems(&cfg, &m).unwrap();
        for g in &outcome.groups {
            assert!(g.records.is_empty(), "{} unexpectedly has systems", g.group);
        }
    }

    #[test]
    fn a5_quadruple_2223_is_empty() {
        let m = model("a5");
        let cfg = SearchConfig::new("a5", vec![vec![2, 2, 2, 3]], vec![0, 1]);
        let outcome = search_systems(&cfg, &m).unwrap();
        for g in &outcome.groups {
            assert!(g.records.is_empty());
            assert!(g.candidates_tested > 0);
        }
    }

    #[test]
    fn a5_search_agrees_with_naive_triple_loop() {
        // completeness spot-check on A5^2: compare witness counts with a
        // naive loop over all order-5 elements for type (2,5,5)
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        let square = &groups[0];
        let mut cfg = SearchConfig::new("a5", vec![vec![2, 5, 5]], vec![0, 1]);
        cfg.groups = GroupSelector::Indices(vec![0]);
        let outcome = search_systems(&cfg, &m).unwrap();
        let fast_total: usize = outcome.groups[0]
            .ramification_types
            .iter()
            .map(|rt| rt.multiplicity)
            .sum();

        let mut naive = 0usize;
        let reps = class_reps(square, Some(2));
        let mut all5: Vec<PairElement> = Vec::new();
        for i in 0..m.size() as u32 {
            for j in 0..m.size() as u32 {
                let u = m.element(i).clone();
                let v = m.element(j).clone();
                if num_integer::lcm(u.order(), v.order()) == 5 {
                    all5.push(PairElement::new_unchecked(u, v, 0));
                }
            }
        }
        for rep in &reps {
            for x2 in &all5 {
                let x3 = rep.pair.product(&m, x2).inverse(&m);
                if x3.order() != 5 {
                    continue;
                }
                let tuple = vec![rep.pair.clone(), x2.clone(), x3];
                let report = genus_of_pair_tuple(&m, &tuple, Some(square)).unwrap();
                if report.product_is_identity
                    && report.transitive
                    && report.generates == Some(true)
                    && matches!(report.genus, Some(g) if (0..=1).contains(&g))
                {
                    naive += 1;
                }
            }
        }
        assert_eq!(fast_total, naive, "witness counts must agree");
    }

    #[test]
    fn conjugated_witness_dedups_to_one_type() {
        let m = model("psl2_7");
        let groups = catalog_type_b(&m).unwrap();
        let ext = &groups[1];
        let mut cfg = SearchConfig::new("psl2_7", vec![vec![2, 3, 8]], vec![1]);
        cfg.groups = GroupSelector::Indices(vec![1]);
        let outcome = search_systems(&cfg, &m).unwrap();
        let rec = outcome.groups[0].records[0].clone();
        let g = ext.gen_pairs[2].clone();
        let conj_tuple: Vec<PairElement> = rec
            .witness
            .iter()
            .map(|w| {
                let p = PairElement::new(
                    &m,
                    Perm::from_images(w.u.clone()).unwrap(),
                    Perm::from_images(w.v.clone()).unwrap(),
                )
                .unwrap();
                p.conjugate_by(&g)
            })
            .collect();
        let mut both = vec![rec.clone(), rec.clone()];
        both[1].witness = conj_tuple.iter().map(WitnessPair::from_pair).collect();
        let types = dedup_ramification(&m, ext, &mut both, 1_000_000);
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].multiplicity, 2);
    }

    #[test]
    fn screen_is_superset_of_search_on_psl2_7() {
        let m = model("psl2_7");
        let mut cfg = SearchConfig::new("psl2_7", vec![vec![2, 3, 8]], vec![1]);
        cfg.strategy = Strategy::Screen;
        let screen = screen_class_triples(&cfg, &m).unwrap();
        let ext_screen = &screen.groups[1];
        assert!(!ext_screen.passing.is_empty());
        let search = search_systems(&cfg, &m).unwrap();
        for rec in &search.groups[1].records {
            let coarse: Vec<(u8, u32, u32)> = rec
                .class_labels
                .iter()
                .map(|l| (l.coset, l.class_u, l.class_v))
                .collect();
            let found = ext_screen.passing.iter().any(|s| {
                let s_coarse: Vec<(u8, u32, u32)> = s
                    .rep_labels
                    .iter()
                    .map(|l| (l.coset, l.class_u, l.class_v))
                    .collect();
                s_coarse == coarse && !s.obstructed
            });
            assert!(found, "search record not covered by screen");
        }
    }

    #[test]
    fn quotient_obstruction_examples() {
        let m = model("psl2_7");
        let groups = catalog_type_b(&m).unwrap();
        let ext = &groups[1];
        // (2,3,7): orders 3 and 7 are inner-only; no assignment multiplies
        // to 0 while generating C2
        let available: Vec<Vec<u8>> = [2u64, 3, 7]
            .iter()
            .map(|&o| available_labels_for_order(ext, o))
            .collect();
        assert!(quotient_obstruction(&m, &ext.q0, &available));
        // (2,3,8): outer order-2 and order-8 labels multiply away
        let available: Vec<Vec<u8>> = [2u64, 3, 8]
            .iter()
            .map(|&o| available_labels_for_order(ext, o))
            .collect();
        assert!(!quotient_obstruction(&m, &ext.q0, &available));
        // any type over the trivial quotient is unobstructed
        let square = &groups[0];
        let available: Vec<Vec<u8>> = [2u64, 3, 7]
            .iter()
            .map(|&o| available_labels_for_order(square, o))
            .collect();
        assert!(!quotient_obstruction(&m, &square.q0, &available));
    }

    #[test]
    fn prop_type_list_for_a5() {
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        let types = prop_type_list(&groups[1]);
        assert!(types.contains(&vec![2, 3, 10]));
        assert!(types.contains(&vec![2, 3, 12]));
        assert!(types.contains(&vec![2, 3, 15]));
        assert!(types.contains(&vec![2, 4, 5]));
        assert!(types.contains(&vec![2, 4, 6]));
        assert!(types.contains(&vec![2, 5, 6]));
        assert!(!types.iter().any(|t| is_low_genus_excluded_type(t)));
    }

    #[test]
    fn search_reports_are_deterministic_across_threads() {
        let m = model("psl2_7");
        let mut cfg1 = SearchConfig::new("psl2_7", vec![vec![2, 3, 8]], vec![0, 1]);
        cfg1.threads = 1;
        let mut cfg4 = cfg1.clone();
        cfg4.threads = 4;
        let out1 = serde_json::to_string(&search_systems(&cfg1, &m).unwrap()).unwrap();
        let out4 = serde_json::to_string(&search_systems(&cfg4, &m).unwrap()).unwrap();
        assert_eq!(out1, out4);
    }
}
