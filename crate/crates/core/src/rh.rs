//! Orbit and fixed-point bookkeeping on `Ω`: divisor-power profiles, the
//! totient orbit identity, and Riemann–Hurwitz genus evaluation for tuples
//! and class triples.
//!
//! For a permutation `x` of an `n`-set, `Orb(x) = (1/|x|)·Σ_{d | |x|}
//! φ(|x|/d)·f(x^d)` — an identity, not a bound — which lets the search
//! evaluate orbit counts of pair elements from fixed-point counts alone,
//! without materializing degree-`n` permutations.

use thiserror::Error;

use crate::algebra::{divisors, euler_phi, Rat};
use crate::bsgs::{self, PermGroup};
use crate::perm::Perm;
use crate::socle::{PairElement, SocleError, SocleModel, TypeBGroup};

#[derive(Debug, Error)]
pub enum RhError {
    #[error("empty tuple")]
    EmptyTuple,
    #[error("tuple contains a trivial element")]
    TrivialElement,
    #[error("orbit profile is internally inconsistent: {0}")]
    InconsistentProfile(String),
    #[error(transparent)]
    Socle(#[from] SocleError),
}

/// Fixed points and orbit counts of every divisor power of an element.
#[derive(Debug, Clone)]
pub struct OrbitProfile {
    /// element order `m`
    pub order: u64,
    /// degree of the action
    pub n: u64,
    /// `(d, f(x^d), Orb(x^d))` for each divisor `d | m`, ascending
    pub entries: Vec<(u64, u64, u64)>,
}

impl OrbitProfile {
    pub fn fixed(&self, d: u64) -> Option<u64> {
        self.entries.iter().find(|e| e.0 == d).map(|e| e.1)
    }

    pub fn orbits(&self, d: u64) -> Option<u64> {
        self.entries.iter().find(|e| e.0 == d).map(|e| e.2)
    }

    /// `Orb(x)` of the element itself.
    pub fn orbit_count(&self) -> u64 {
        self.entries[0].2
    }

    /// `OR(x) = Orb(x)/n`.
    pub fn orbit_ratio(&self) -> Rat {
        Rat::frac(self.orbit_count() as i64, self.n as i64)
    }

    /// `fpr(x) = f(x)/n`.
    pub fn fixed_point_ratio(&self) -> Rat {
        Rat::frac(self.entries[0].1 as i64, self.n as i64)
    }

    /// `mfpr(x) = max{fpr(x^i) : 1 ≤ i < |x|}`. Since the fixed set of
    /// `x^i` equals that of `x^{gcd(i,m)}`, the maximum ranges over proper
    /// divisor powers.
    pub fn max_fixed_point_ratio(&self) -> Rat {
        let best = self
            .entries
            .iter()
            .filter(|e| e.0 < self.order)
            .map(|e| e.1)
            .max()
            .unwrap_or(0);
        Rat::frac(best as i64, self.n as i64)
    }
}

/// Exact orbit profile of a pair element from class data: fixed-point
/// counts for all divisor powers, and orbit counts via the totient
/// identity.
pub fn orbit_profile(model: &SocleModel, pair: &PairElement) -> Result<OrbitProfile, RhError> {
    let m = pair.order();
    let n = model.size() as u64;
    let class_u = model
        .class_of_element(pair.coset, &pair.u)
        .ok_or(SocleError::NotInOvergroup)?;
    let class_v = model
        .class_of_element(pair.coset, &pair.v)
        .ok_or(SocleError::NotInOvergroup)?;
    let divs = divisors(m);
    // f((u,v)^d) = |C_L(v^d)| when u^d and v^d are L-conjugate, else 0
    let fixed: Vec<(u64, u64)> = divs
        .iter()
        .map(|&d| {
            let (cu, cv) = (model.class_power(class_u, d), model.class_power(class_v, d));
            let f = if cu == cv {
                model.class(cv).centralizer_order
            } else {
                0
            };
            (d, f)
        })
        .collect();
    profile_from_fixed(m, n, &fixed)
}

/// Assembles a profile from `(divisor, fixed point count)` data, computing
/// every orbit count through the totient identity.
pub fn profile_from_fixed(
    m: u64,
    n: u64,
    fixed: &[(u64, u64)],
) -> Result<OrbitProfile, RhError> {
    let lookup = |d: u64| -> Result<u64, RhError> {
        fixed
            .iter()
            .find(|&&(dd, _)| dd == d)
            .map(|&(_, f)| f)
            .ok_or_else(|| RhError::InconsistentProfile(format!("missing divisor {d}")))
    };
    let mut entries = Vec::with_capacity(fixed.len());
    for &(d, f) in fixed {
        let sub_order = m / d;
        let mut total = 0u64;
        for e in divisors(sub_order) {
            let phi = euler_phi(sub_order / e).expect("nonzero argument");
            total += phi * lookup(d * e)?;
        }
        if total % sub_order != 0 {
            return Err(RhError::InconsistentProfile(format!(
                "totient sum {total} not divisible by {sub_order} at d = {d}"
            )));
        }
        entries.push((d, f, total / sub_order));
    }
    // f(x^m) must be n, and f is monotone along divisibility
    if entries.last().map(|e| e.1) != Some(n) {
        return Err(RhError::InconsistentProfile(
            "identity power does not fix everything".into(),
        ));
    }
    for &(d1, f1, _) in &entries {
        for &(d2, f2, _) in &entries {
            if d2 % d1 == 0 && f1 > f2 {
                return Err(RhError::InconsistentProfile(format!(
                    "fixed counts not monotone: f(x^{d1}) = {f1} > f(x^{d2}) = {f2}"
                )));
            }
        }
    }
    Ok(OrbitProfile {
        order: m,
        n,
        entries,
    })
}

/// Orbit count from the totient identity, recomputed from the profile's
/// fixed-point data. Equals the direct cycle count exactly.
pub fn orb_via_totient(profile: &OrbitProfile) -> Result<u64, RhError> {
    let mut total = 0u64;
    for &(d, f, _) in &profile.entries {
        let phi = euler_phi(profile.order / d).expect("nonzero argument");
        total += phi * f;
    }
    if total % profile.order != 0 {
        return Err(RhError::InconsistentProfile(format!(
            "totient sum {total} not divisible by order {}",
            profile.order
        )));
    }
    Ok(total / profile.order)
}

/// Genus data of a tuple. The genus is carried as the exact integer
/// `2g − 2`; realizability additionally requires integrality, `g ≥ 0`,
/// product one, transitivity and generation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TupleGenusReport {
    pub n: u64,
    pub orbit_counts: Vec<u64>,
    pub sum_index: u64,
    pub two_g_minus_2: i64,
    /// integral genus, when `Σ index` is even
    pub genus: Option<i64>,
    pub product_is_identity: bool,
    pub transitive: bool,
    /// `None` when no target group was supplied
    pub generates: Option<bool>,
}

impl TupleGenusReport {
    pub fn realizable_at(&self, genus: i64) -> bool {
        self.product_is_identity
            && self.transitive
            && self.generates.unwrap_or(true)
            && self.genus == Some(genus)
            && genus >= 0
    }
}

fn genus_from_orbits(n: u64, orbit_counts: &[u64]) -> (u64, i64, Option<i64>) {
    let r = orbit_counts.len() as i64;
    let sum_orb: u64 = orbit_counts.iter().sum();
    let sum_index = r as u64 * n - sum_orb;
    let two_g_minus_2 = sum_index as i64 - 2 * n as i64;
    let genus = if two_g_minus_2 % 2 == 0 {
        Some(two_g_minus_2 / 2 + 1)
    } else {
        None
    };
    (sum_index, two_g_minus_2, genus)
}

/// Genus report for a tuple of raw permutations of a common point set,
/// using direct cycle counts.
pub fn genus_of_perm_tuple(perms: &[Perm]) -> Result<TupleGenusReport, RhError> {
    if perms.is_empty() {
        return Err(RhError::EmptyTuple);
    }
    if perms.iter().any(Perm::is_identity) {
        return Err(RhError::TrivialElement);
    }
    let n = perms[0].degree() as u64;
    let orbit_counts: Vec<u64> = perms.iter().map(|p| p.orbit_data().0 as u64).collect();
    let product = perms
        .iter()
        .fold(Perm::identity(n as usize), |acc, p| acc.compose_unchecked(p));
    let (sum_index, two_g_minus_2, genus) = genus_from_orbits(n, &orbit_counts);
    Ok(TupleGenusReport {
        n,
        orbit_counts,
        sum_index,
        two_g_minus_2,
        genus,
        product_is_identity: product.is_identity(),
        transitive: bsgs::is_transitive(perms, n as usize),
        generates: None,
    })
}

/// Genus report for a tuple of pair elements, with orbit counts from the
/// totient identity and the product evaluated pair-coordinatewise. When a
/// group is supplied, generation is decided by an exact order comparison in
/// the doubled small-degree action.
pub fn genus_of_pair_tuple(
    model: &SocleModel,
    tuple: &[PairElement],
    group: Option<&TypeBGroup>,
) -> Result<TupleGenusReport, RhError> {
    if tuple.is_empty() {
        return Err(RhError::EmptyTuple);
    }
    if tuple.iter().any(PairElement::is_identity) {
        return Err(RhError::TrivialElement);
    }
    let n = model.size() as u64;
    let mut orbit_counts = Vec::with_capacity(tuple.len());
    for pair in tuple {
        orbit_counts.push(orbit_profile(model, pair)?.orbit_count());
    }
    let product = tuple
        .iter()
        .fold(PairElement::identity(model), |acc, p| acc.product(model, p));
    let transitive = tuple_transitive(model, tuple);
    let generates = match group {
        Some(g) => Some(tuple_generates(model, tuple, g)),
        None => None,
    };
    let (sum_index, two_g_minus_2, genus) = genus_from_orbits(n, &orbit_counts);
    Ok(TupleGenusReport {
        n,
        orbit_counts,
        sum_index,
        two_g_minus_2,
        genus,
        product_is_identity: product.is_identity(),
        transitive,
        generates,
    })
}

/// Orbit transitivity of the subgroup generated by the tuple on `Ω`,
/// by breadth-first search with on-demand point images.
pub fn tuple_transitive(model: &SocleModel, tuple: &[PairElement]) -> bool {
    let n = model.size();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0u32];
    let mut count = 1usize;
    seen[0] = true;
    let inverses: Vec<PairElement> = tuple.iter().map(|p| p.inverse(model)).collect();
    while let Some(i) = stack.pop() {
        for p in tuple.iter().chain(&inverses) {
            let j = model.act_point(p, i);
            if !seen[j as usize] {
                seen[j as usize] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

/// Does the tuple generate the whole group? Decided by an exact order
/// comparison in the doubled small-degree action, where `(u, v)` acts on
/// the disjoint union of two copies of the overgroup's point set.
pub fn tuple_generates(model: &SocleModel, tuple: &[PairElement], group: &TypeBGroup) -> bool {
    let d = model.degree_small();
    let doubled: Vec<Perm> = tuple
        .iter()
        .map(|p| {
            let mut images = Vec::with_capacity(2 * d);
            images.extend(p.u.images().iter().copied());
            images.extend(p.v.images().iter().map(|&x| x + d as u32));
            Perm::from_images(images).expect("doubled action is a bijection")
        })
        .collect();
    match PermGroup::build_bsgs(&doubled) {
        Ok(g) => g.order() == group.order,
        Err(_) => false,
    }
}

/// Riemann–Hurwitz screen for a class triple with known orbit counts:
/// at genus `g` the triple passes iff `Orb₁+Orb₂+Orb₃ = n + 2 − 2g`.
pub fn rh_screen(orbit_counts: &[u64], n: u64, genus_set: &[i64]) -> Vec<(i64, bool)> {
    let r = orbit_counts.len() as i64;
    let sum: i64 = orbit_counts.iter().map(|&o| o as i64).sum();
    genus_set
        .iter()
        .map(|&g| {
            // general r: Σ Orb = (r − 2)·n + 2 − 2g
            (g, sum == (r - 2) * n as i64 + 2 - 2 * g)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::build_entry;
    use crate::socle::{catalog_type_b, class_reps};
    use std::sync::Arc;

    fn model(label: &str) -> Arc<SocleModel> {
        Arc::new(SocleModel::enumerate(&build_entry(label).unwrap()).unwrap())
    }

    #[test]
    fn identity_profile() {
        let m = model("a5");
        let id = PairElement::identity(&m);
        // identity has order 1: profile is a single entry with Orb = n
        let p = orbit_profile(&m, &id).unwrap();
        assert_eq!(p.order, 1);
        assert_eq!(p.orbit_count(), 60);
        assert_eq!(p.orbit_ratio(), Rat::one());
    }

    #[test]
    fn totient_formula_examples() {
        // order 2, n = 168, f = 6 → (1·6 + 1·168)/2 = 87
        let p = profile_from_fixed(2, 168, &[(1, 6), (2, 168)]).unwrap();
        assert_eq!(p.orbit_count(), 87);
        assert_eq!(orb_via_totient(&p).unwrap(), 87);
        // order 3, n = 168, f = 3 → (2·3 + 168)/3 = 58
        let p = profile_from_fixed(3, 168, &[(1, 3), (3, 168)]).unwrap();
        assert_eq!(p.orbit_count(), 58);
        // order 8, f-vector (0, 4, 8) → (4·0 + 2·4 + 1·8 + 168)/8 = 23
        let p = profile_from_fixed(8, 168, &[(1, 0), (2, 4), (4, 8), (8, 168)]).unwrap();
        assert_eq!(p.orbit_count(), 23);
        assert_eq!(p.orbit_ratio(), Rat::frac(23, 168));
    }

    #[test]
    fn corrupt_profile_is_an_error() {
        // f(x) = 5 with order 2, n = 168: (5 + 168) is odd
        assert!(profile_from_fixed(2, 168, &[(1, 5), (2, 168)]).is_err());
        // non-monotone fixed counts
        assert!(profile_from_fixed(4, 60, &[(1, 6), (2, 2), (4, 60)]).is_err());
    }

    #[test]
    fn profile_matches_direct_cycle_count_on_a5_squared() {
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        for rep in class_reps(&groups[1], None) {
            let profile = orbit_profile(&m, &rep.pair).unwrap();
            let omega = m.act(&rep.pair).unwrap();
            let (orb, fixed) = omega.orbit_data();
            assert_eq!(profile.orbit_count(), orb as u64);
            assert_eq!(profile.fixed(1).unwrap(), fixed as u64);
            assert_eq!(orb_via_totient(&profile).unwrap(), orb as u64);
        }
    }

    #[test]
    fn second_lemma_inequality_holds_on_profiles() {
        // OR(x) ≤ (1 + mfpr(x)·(|x|−1)) / |x|
        let m = model("psl2_7");
        let groups = catalog_type_b(&m).unwrap();
        for rep in class_reps(&groups[1], None) {
            if rep.pair.is_identity() {
                continue;
            }
            let p = orbit_profile(&m, &rep.pair).unwrap();
            let mfpr = p.max_fixed_point_ratio();
            let order = Rat::int(p.order as i64);
            let bound = &(&Rat::one() + &(&mfpr * &Rat::int(p.order as i64 - 1))) / &order;
            assert!(p.orbit_ratio() <= bound);
        }
    }

    #[test]
    fn degree_3_cycle_triple_has_genus_one() {
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let report = genus_of_perm_tuple(&[c.clone(), c.clone(), c]).unwrap();
        assert!(report.product_is_identity);
        assert_eq!(report.genus, Some(1));
        assert_eq!(report.sum_index, 6);
        assert!(report.transitive);
    }

    #[test]
    fn inverse_pair_formula_genus_is_negative() {
        // (x, x⁻¹) with Orb(x) = 87 on 168 points: 2g−2 = 2·168 − 2·87 − 2·168
        let m = model("psl2_7");
        let groups = catalog_type_b(&m).unwrap();
        let rep = class_reps(&groups[1], Some(2))
            .into_iter()
            .find(|r| {
                matches!(orbit_profile(&m, &r.pair).map(|p| p.orbit_count()), Ok(87))
            })
            .expect("an involution class with 6 fixed points exists");
        let tuple = vec![rep.pair.clone(), rep.pair.inverse(&m)];
        let report = genus_of_pair_tuple(&m, &tuple, None).unwrap();
        assert!(report.product_is_identity);
        assert_eq!(report.genus, Some(-86));
        assert!(!report.realizable_at(-86));
    }

    #[test]
    fn rh_screen_examples() {
        // Orbs (87, 58, 23), n = 168: passes exactly at genus 1
        let results = rh_screen(&[87, 58, 23], 168, &[0, 1, 2]);
        assert_eq!(results, vec![(0, false), (1, true), (2, false)]);
        // odd Σ index fails at every integer genus
        let odd = rh_screen(&[87, 58, 24], 168, &[0, 1, 2, 3]);
        assert!(odd.iter().all(|&(_, pass)| !pass));
    }

    #[test]
    fn parity_bookkeeping_product_one_forces_even_index_sum() {
        // Σ (n − Orb(xᵢ)) is even for any tuple with product 1
        let m = model("a5");
        let g = &catalog_type_b(&m).unwrap()[1];
        let reps = class_reps(g, Some(2));
        for a in reps.iter().take(4) {
            for b in reps.iter().take(4) {
                let ab = a.pair.product(&m, &b.pair);
                if ab.is_identity() {
                    continue;
                }
                let tuple = vec![a.pair.clone(), b.pair.clone(), ab.inverse(&m)];
                let report = genus_of_pair_tuple(&m, &tuple, None).unwrap();
                assert!(report.product_is_identity);
                assert_eq!(report.sum_index % 2, 0);
            }
        }
    }

    #[test]
    fn generation_test_detects_proper_subgroups() {
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        let square = &groups[0];
        // (l, 1) pairs alone generate L × 1, a proper subgroup
        let partial: Vec<PairElement> = square.gen_pairs[0..2].to_vec();
        assert!(!tuple_generates(&m, &partial, square));
        assert!(tuple_generates(&m, &square.gen_pairs, square));
    }
}
