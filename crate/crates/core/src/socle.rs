//! Diagonal type-B groups with socle `L²` acting on `Ω = L`.
//!
//! The point set is an indexed enumeration of the simple group `L`; a group
//! element is a pair `(u, v)` of overgroup permutations with `uL = vL`,
//! acting by `x ↦ u·x·v⁻¹`. Keeping elements as pairs of small-degree
//! permutations makes products and order checks O(degree); the degree-`|L|`
//! permutation is materialized only when orbits on `Ω` are actually needed.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::algebra::divisors;
use crate::atlas::AtlasEntry;
use crate::bsgs::{self, element_closure, GroupError};
use crate::perm::{Perm, PermError};

/// Memory guard for the point-set enumeration.
pub const SOCLE_SIZE_GUARD: u128 = 200_000;

#[derive(Debug, Error)]
pub enum SocleError {
    #[error("|L| = {0} exceeds the enumeration guard of {SOCLE_SIZE_GUARD}")]
    SizeGuard(u128),
    #[error("element does not lie in any coset of L in H0")]
    NotInOvergroup,
    #[error("pair coordinates lie in different cosets of L")]
    CosetMismatch,
    #[error("coset labels {0:?} do not form a subgroup of Q")]
    NotASubgroup(Vec<u8>),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One `L`-conjugation orbit on a coset `h·L` of the overgroup.
#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub coset: u8,
    /// `L`-index of the representative within its coset
    pub rep_index: u32,
    pub size: u32,
    /// order of the class elements as permutations of the small point set
    pub elem_order: u64,
    /// `|C_L(x)| = |L| / size`
    pub centralizer_order: u64,
    /// class of `x^d` for each divisor `d` of the element order
    pub power_classes: Vec<(u64, u32)>,
}

/// Indexed enumeration of `L` inside `H₀`, with coset and conjugation-class
/// tables for every coset of `L` in `H₀`.
pub struct SocleModel {
    pub entry: AtlasEntry,
    elements: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
    inverse: Vec<u32>,
    coset_reps: Vec<Perm>,
    coset_rep_invs: Vec<Perm>,
    q_mul: Vec<Vec<u8>>,
    q_inv: Vec<u8>,
    class_of: Vec<Vec<u32>>,
    classes: Vec<ClassInfo>,
    class_members: Vec<Vec<u32>>,
}

impl SocleModel {
    /// Complete, duplicate-free enumeration of `L` plus coset and class data.
    pub fn enumerate(entry: &AtlasEntry) -> Result<SocleModel, SocleError> {
        if entry.expected_order_l > SOCLE_SIZE_GUARD {
            return Err(SocleError::SizeGuard(entry.expected_order_l));
        }
        let elements = element_closure(&entry.gens_l, SOCLE_SIZE_GUARD as usize + 1)?;
        if elements.len() as u128 != entry.expected_order_l {
            return Err(SocleError::Construction(format!(
                "closure produced {} elements, expected {}",
                elements.len(),
                entry.expected_order_l
            )));
        }
        let mut index = FxHashMap::default();
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone(), i as u32);
        }
        let inverse: Vec<u32> = elements
            .iter()
            .map(|e| index[e.inverse().images()])
            .collect();

        // Left cosets of L in H0, identity coset first.
        let degree = entry.degree;
        let mut coset_reps: Vec<Perm> = vec![Perm::identity(degree)];
        let mut qi = 0;
        while qi < coset_reps.len() {
            let rep = coset_reps[qi].clone();
            qi += 1;
            for g in &entry.gens_h0 {
                let w = g.compose_unchecked(&rep);
                let known = coset_reps
                    .iter()
                    .any(|h| index.contains_key(h.inverse().compose_unchecked(&w).images()));
                if !known {
                    coset_reps.push(w);
                }
            }
        }
        let q = coset_reps.len();
        let coset_rep_invs: Vec<Perm> = coset_reps.iter().map(Perm::inverse).collect();
        let coset_of = |w: &Perm| -> Option<u8> {
            (0..q)
                .find(|&c| index.contains_key(coset_rep_invs[c].compose_unchecked(w).images()))
                .map(|c| c as u8)
        };
        let mut q_mul = vec![vec![0u8; q]; q];
        for a in 0..q {
            for b in 0..q {
                let w = coset_reps[a].compose_unchecked(&coset_reps[b]);
                q_mul[a][b] = coset_of(&w).ok_or(SocleError::NotInOvergroup)?;
            }
        }
        let mut q_inv = vec![0u8; q];
        for a in 0..q {
            q_inv[a] = (0..q)
                .find(|&b| q_mul[a][b] == 0)
                .ok_or_else(|| SocleError::Construction("coset labels not a group".into()))?
                as u8;
        }

        // L-conjugation orbits on each coset.
        let n = elements.len();
        let mut class_of: Vec<Vec<u32>> = vec![vec![u32::MAX; n]; q];
        let mut classes: Vec<ClassInfo> = Vec::new();
        let mut class_members: Vec<Vec<u32>> = Vec::new();
        let l_gen_invs: Vec<Perm> = entry.gens_l.iter().map(Perm::inverse).collect();
        for c in 0..q {
            // conjugating h·elem(j) by g gives h·(h⁻¹gh)·elem(j)·g⁻¹, so in
            // L-index space each edge is j ↦ index(a_g ∘ elem(j) ∘ g⁻¹)
            let twisted: Vec<Perm> = entry
                .gens_l
                .iter()
                .map(|g| {
                    coset_rep_invs[c]
                        .compose_unchecked(g)
                        .compose_unchecked(&coset_reps[c])
                })
                .collect();
            let mut scratch = vec![0u32; degree];
            for seed in 0..n as u32 {
                if class_of[c][seed as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut members = vec![seed];
                class_of[c][seed as usize] = id;
                let mut mi = 0;
                while mi < members.len() {
                    let j = members[mi];
                    mi += 1;
                    for (a, ginv) in twisted.iter().zip(&l_gen_invs) {
                        let ej = elements[j as usize].images();
                        let (aa, gg) = (a.images(), ginv.images());
                        for p in 0..degree {
                            scratch[p] = aa[ej[gg[p] as usize] as usize];
                        }
                        let k = index[scratch.as_slice()];
                        if class_of[c][k as usize] == u32::MAX {
                            class_of[c][k as usize] = id;
                            members.push(k);
                        }
                    }
                }
                let rep = coset_reps[c].compose_unchecked(&elements[seed as usize]);
                let elem_order = rep.order();
                classes.push(ClassInfo {
                    coset: c as u8,
                    rep_index: seed,
                    size: members.len() as u32,
                    elem_order,
                    centralizer_order: n as u64 / members.len() as u64,
                    power_classes: Vec::new(),
                });
                class_members.push(members);
            }
        }

        let mut model = SocleModel {
            entry: entry.clone(),
            elements,
            index,
            inverse,
            coset_reps,
            coset_rep_invs,
            q_mul,
            q_inv,
            class_of,
            classes,
            class_members,
        };
        // power classes need the full table in place first
        let power_tables: Vec<Vec<(u64, u32)>> = model
            .classes
            .iter()
            .map(|info| {
                let rep = model.coset_reps[info.coset as usize]
                    .compose_unchecked(&model.elements[info.rep_index as usize]);
                divisors(info.elem_order)
                    .into_iter()
                    .map(|d| {
                        let w = rep.pow(d as i64);
                        let c = model.coset_power(info.coset, d);
                        let li = model.index[model.coset_rep_invs[c as usize]
                            .compose_unchecked(&w)
                            .images()];
                        (d, model.class_of[c as usize][li as usize])
                    })
                    .collect()
            })
            .collect();
        for (info, powers) in model.classes.iter_mut().zip(power_tables) {
            info.power_classes = powers;
        }
        Ok(model)
    }

    /// Number of points, `|L|`.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn degree_small(&self) -> usize {
        self.entry.degree
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn element_index(&self, p: &Perm) -> Option<u32> {
        self.index.get(p.images()).copied()
    }

    pub fn inverse_index(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    /// Product of two point indices, via small-permutation composition plus
    /// an index lookup.
    pub fn mul_indices(&self, i: u32, j: u32) -> u32 {
        let w = self.elements[i as usize].compose_unchecked(&self.elements[j as usize]);
        self.index[w.images()]
    }

    /// Size of the coset quotient `Q = H₀/L`.
    pub fn q_size(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_rep(&self, c: u8) -> &Perm {
        &self.coset_reps[c as usize]
    }

    pub fn coset_mul(&self, a: u8, b: u8) -> u8 {
        self.q_mul[a as usize][b as usize]
    }

    pub fn coset_inv(&self, a: u8) -> u8 {
        self.q_inv[a as usize]
    }

    pub fn coset_power(&self, c: u8, d: u64) -> u8 {
        let reduced = d % self.coset_order(c);
        let mut acc = 0u8;
        for _ in 0..reduced {
            acc = self.coset_mul(acc, c);
        }
        acc
    }

    /// Order of a coset label in `Q`.
    pub fn coset_order(&self, c: u8) -> u64 {
        let mut acc = c;
        let mut k = 1u64;
        while acc != 0 {
            acc = self.coset_mul(acc, c);
            k += 1;
        }
        k
    }

    /// Coset label of an overgroup element, if it lies in `H₀`.
    pub fn coset_of(&self, w: &Perm) -> Option<u8> {
        (0..self.q_size())
            .find(|&c| {
                self.index
                    .contains_key(self.coset_rep_invs[c].compose_unchecked(w).images())
            })
            .map(|c| c as u8)
    }

    /// Global class id of an element known to lie in coset `c`.
    pub fn class_of_element(&self, c: u8, w: &Perm) -> Option<u32> {
        let li = self
            .index
            .get(self.coset_rep_invs[c as usize].compose_unchecked(w).images())?;
        Some(self.class_of[c as usize][*li as usize])
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, id: u32) -> &ClassInfo {
        &self.classes[id as usize]
    }

    pub fn class_ids_of_coset(&self, c: u8) -> Vec<u32> {
        (0..self.classes.len() as u32)
            .filter(|&i| self.classes[i as usize].coset == c)
            .collect()
    }

    /// Member `L`-indices of a class, in discovery order.
    pub fn class_member_indices(&self, id: u32) -> &[u32] {
        &self.class_members[id as usize]
    }

    /// The class representative as an overgroup permutation.
    pub fn class_rep(&self, id: u32) -> Perm {
        let info = &self.classes[id as usize];
        self.coset_reps[info.coset as usize]
            .compose_unchecked(&self.elements[info.rep_index as usize])
    }

    /// Class of `x^d` for an `x` in the given class; `d` is reduced modulo
    /// the element order and looked up in the precomputed divisor table.
    pub fn class_power(&self, id: u32, d: u64) -> u32 {
        let info = &self.classes[id as usize];
        let dd = d % info.elem_order;
        if dd == 0 {
            // identity class: class of coset 0, element 0
            return self.class_of[0][0];
        }
        for &(div, cls) in &info.power_classes {
            if div == dd {
                return cls;
            }
        }
        let rep = self.class_rep(id).pow(dd as i64);
        let c = self.coset_power(info.coset, dd);
        self.class_of_element(c, &rep).expect("power stays in H0")
    }

    /// Materializes an element of coset `c` with `L`-index `i`.
    pub fn coset_element(&self, c: u8, i: u32) -> Perm {
        self.coset_reps[c as usize].compose_unchecked(&self.elements[i as usize])
    }

    /// Fixed points of the pair action `x ↦ u·x·v⁻¹`: `u x v⁻¹ = x` means
    /// `u = x v x⁻¹`, so the count is `|C_L(v)|` when the coordinates are
    /// `L`-conjugate as coset elements and 0 otherwise.
    pub fn pair_fixed_points(&self, pair: &PairElement) -> u64 {
        let cu = self.class_of_element(pair.coset, &pair.u);
        let cv = self.class_of_element(pair.coset, &pair.v);
        match (cu, cv) {
            (Some(a), Some(b)) if a == b => self.classes[a as usize].centralizer_order,
            _ => 0,
        }
    }

    /// Materializes the degree-`|L|` permutation of a pair element.
    pub fn act(&self, pair: &PairElement) -> Result<Perm, SocleError> {
        let v_inv = pair.v.inverse();
        let n = self.size();
        let d = self.degree_small();
        let (uu, vv) = (pair.u.images(), v_inv.images());
        let mut scratch = vec![0u32; d];
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let e = self.elements[i].images();
            for p in 0..d {
                scratch[p] = uu[e[vv[p] as usize] as usize];
            }
            let target = self
                .index
                .get(scratch.as_slice())
                .ok_or(SocleError::NotInOvergroup)?;
            images.push(*target);
        }
        Ok(Perm::from_images(images)?)
    }

    /// Image of a single point under the pair action.
    pub fn act_point(&self, pair: &PairElement, i: u32) -> u32 {
        let w = pair
            .u
            .compose_unchecked(&self.elements[i as usize])
            .compose_unchecked(&pair.v.inverse());
        self.index[w.images()]
    }
}

/// A group element as a coset-compatible pair of overgroup permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairElement {
    pub u: Perm,
    pub v: Perm,
    pub coset: u8,
}

impl PairElement {
    pub fn new(model: &SocleModel, u: Perm, v: Perm) -> Result<PairElement, SocleError> {
        let cu = model.coset_of(&u).ok_or(SocleError::NotInOvergroup)?;
        let cv = model.coset_of(&v).ok_or(SocleError::NotInOvergroup)?;
        if cu != cv {
            return Err(SocleError::CosetMismatch);
        }
        Ok(PairElement { u, v, coset: cu })
    }

    /// Skips the coset checks, for construction from verified class data.
    pub fn new_unchecked(u: Perm, v: Perm, coset: u8) -> PairElement {
        PairElement { u, v, coset }
    }

    pub fn identity(model: &SocleModel) -> PairElement {
        let d = model.degree_small();
        PairElement::new_unchecked(Perm::identity(d), Perm::identity(d), 0)
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_identity() && self.v.is_identity()
    }

    /// Order of the action: `lcm(|u|, |v|)`.
    pub fn order(&self) -> u64 {
        num_integer::lcm(self.u.order(), self.v.order())
    }

    pub fn product(&self, model: &SocleModel, rhs: &PairElement) -> PairElement {
        PairElement {
            u: self.u.compose_unchecked(&rhs.u),
            v: self.v.compose_unchecked(&rhs.v),
            coset: model.coset_mul(self.coset, rhs.coset),
        }
    }

    pub fn inverse(&self, model: &SocleModel) -> PairElement {
        PairElement {
            u: self.u.inverse(),
            v: self.v.inverse(),
            coset: model.coset_inv(self.coset),
        }
    }

    pub fn pow(&self, model: &SocleModel, d: u64) -> PairElement {
        PairElement {
            u: self.u.pow(d as i64),
            v: self.v.pow(d as i64),
            coset: model.coset_power(self.coset, d),
        }
    }

    pub fn conjugate_by(&self, g: &PairElement) -> PairElement {
        PairElement {
            u: self.u.conjugate_by(&g.u),
            v: self.v.conjugate_by(&g.v),
            coset: self.coset,
        }
    }
}

/// A type-B diagonal group: the full preimage in `{(u,v) : uL = vL}` of a
/// subgroup `Q₀ ≤ Q = H₀/L`.
pub struct TypeBGroup {
    pub model: Arc<SocleModel>,
    /// sorted coset labels of `Q₀`
    pub q0: Vec<u8>,
    pub label: String,
    pub order: u128,
    pub gen_pairs: Vec<PairElement>,
    /// extra generators given directly as `Ω`-permutations (the
    /// coordinate-swap experimentation hook); nonempty flags a non-type-B
    /// construction
    pub extra_omega_gens: Vec<Perm>,
}

impl TypeBGroup {
    pub fn degree(&self) -> usize {
        self.model.size()
    }

    pub fn is_swap_adjoined(&self) -> bool {
        !self.extra_omega_gens.is_empty()
    }

    /// Adjoins the inversion map `x ↦ x⁻¹` of `Ω` as an extra generator and
    /// flags the result non-type-B: conjugation by the inverter swaps the
    /// two coordinate subgroups, destroying their normality.
    pub fn with_swap_adjoined(&self) -> TypeBGroup {
        let inverter = Perm::from_images(
            (0..self.model.size() as u32)
                .map(|i| self.model.inverse_index(i))
                .collect(),
        )
        .expect("inversion is a bijection");
        TypeBGroup {
            model: Arc::clone(&self.model),
            q0: self.q0.clone(),
            label: format!("{}+swap", self.label),
            order: self.order * 2,
            gen_pairs: self.gen_pairs.clone(),
            extra_omega_gens: vec![inverter],
        }
    }

    /// All generators materialized as `Ω`-permutations.
    pub fn omega_generators(&self) -> Result<Vec<Perm>, SocleError> {
        let mut gens = Vec::with_capacity(self.gen_pairs.len() + self.extra_omega_gens.len());
        for pair in &self.gen_pairs {
            gens.push(self.model.act(pair)?);
        }
        gens.extend(self.extra_omega_gens.iter().cloned());
        Ok(gens)
    }
}

/// Builds the type-B group over a subgroup `Q₀` of the coset quotient,
/// generated by `(l,1)`, `(1,l)` for the `L`-generators and `(h,h)` for the
/// `Q₀` coset representatives.
pub fn build_type_b(model: &Arc<SocleModel>, q0: &[u8]) -> Result<TypeBGroup, SocleError> {
    let mut labels: Vec<u8> = q0.to_vec();
    if !labels.contains(&0) {
        labels.push(0);
    }
    labels.sort_unstable();
    labels.dedup();
    for &a in &labels {
        for &b in &labels {
            if !labels.contains(&model.coset_mul(a, b)) {
                return Err(SocleError::NotASubgroup(labels));
            }
        }
    }
    let d = model.degree_small();
    let id = Perm::identity(d);
    let mut gen_pairs = Vec::new();
    for l in &model.entry.gens_l {
        gen_pairs.push(PairElement::new_unchecked(l.clone(), id.clone(), 0));
        gen_pairs.push(PairElement::new_unchecked(id.clone(), l.clone(), 0));
    }
    for &c in &labels {
        if c != 0 {
            let h = model.coset_rep(c).clone();
            gen_pairs.push(PairElement::new_unchecked(h.clone(), h, c));
        }
    }
    let order = (model.size() as u128) * (model.size() as u128) * labels.len() as u128;
    let label = group_label(model, &labels);
    Ok(TypeBGroup {
        model: Arc::clone(model),
        q0: labels,
        label,
        order,
        gen_pairs,
        extra_omega_gens: Vec::new(),
    })
}

fn group_label(model: &SocleModel, labels: &[u8]) -> String {
    let socle = &model.entry.label;
    if labels.len() == 1 {
        return format!("{socle}^2");
    }
    let orders: Vec<u64> = labels
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| model.coset_order(c))
        .collect();
    let structure = match (labels.len(), orders.iter().max()) {
        (2, _) => "c2".to_string(),
        (3, _) => "c3".to_string(),
        (4, Some(4)) => "c4".to_string(),
        (4, _) => "c2x2".to_string(),
        (n, _) => format!("q{n}"),
    };
    let tags: Vec<String> = labels
        .iter()
        .filter(|&&c| c != 0)
        .map(|c| c.to_string())
        .collect();
    format!("{socle}^2.{structure}[{}]", tags.join(""))
}

/// One type-B group per subgroup `Q₀ ≤ Q`, in canonical order.
pub fn catalog_type_b(model: &Arc<SocleModel>) -> Result<Vec<TypeBGroup>, SocleError> {
    let q = model.q_size();
    let mut subgroups: Vec<Vec<u8>> = Vec::new();
    for mask in 0u32..(1 << (q - 1)) {
        let mut labels = vec![0u8];
        for c in 1..q {
            if mask & (1 << (c - 1)) != 0 {
                labels.push(c as u8);
            }
        }
        let closed = labels
            .iter()
            .all(|&a| labels.iter().all(|&b| labels.contains(&model.coset_mul(a, b))));
        if closed && !subgroups.contains(&labels) {
            subgroups.push(labels);
        }
    }
    subgroups.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut groups: Vec<TypeBGroup> = Vec::new();
    for labels in subgroups {
        let g = build_type_b(model, &labels)?;
        // dedup by group order plus point-stabilizer data; distinct label
        // sets always differ here, so this is a safety net only
        if !groups.iter().any(|other| other.q0 == g.q0) {
            groups.push(g);
        }
    }
    Ok(groups)
}

/// A conjugacy-class representative at coordinatewise-`L` granularity.
#[derive(Debug, Clone)]
pub struct ClassRep {
    pub pair: PairElement,
    pub class_u: u32,
    pub class_v: u32,
    pub coset: u8,
    pub order: u64,
    /// number of pairs in the coordinatewise class
    pub size: u64,
}

/// Class representatives of the group, one per pair of `L`-conjugation
/// orbits on each coset of `Q₀`, optionally filtered by element order.
/// This granularity refines exact `G`-conjugacy, so every `G`-class of the
/// requested order is covered.
pub fn class_reps(group: &TypeBGroup, order_filter: Option<u64>) -> Vec<ClassRep> {
    let model = &group.model;
    let mut reps = Vec::new();
    for &c in &group.q0 {
        let ids = model.class_ids_of_coset(c);
        for &a in &ids {
            for &b in &ids {
                let (ia, ib) = (model.class(a), model.class(b));
                let order = num_integer::lcm(ia.elem_order, ib.elem_order);
                if let Some(want) = order_filter {
                    if order != want {
                        continue;
                    }
                }
                let pair = PairElement::new_unchecked(model.class_rep(a), model.class_rep(b), c);
                reps.push(ClassRep {
                    pair,
                    class_u: a,
                    class_v: b,
                    coset: c,
                    order,
                    size: ia.size as u64 * ib.size as u64,
                });
            }
        }
    }
    reps
}

/// Total number of group elements of the given order, from class data.
pub fn element_count_of_order(group: &TypeBGroup, order: u64) -> u64 {
    class_reps(group, Some(order)).iter().map(|r| r.size).sum()
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TypeBCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TypeBReport {
    pub label: String,
    pub checks: Vec<TypeBCheck>,
}

impl TypeBReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&TypeBCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Certifies the type-B structure: faithfulness, normality and regularity
/// of both coordinate subgroups, and transitivity (plus, optionally, the
/// primitivity sweep) of the full group on `Ω`.
pub fn verify_type_b(
    group: &TypeBGroup,
    check_primitivity: bool,
) -> Result<TypeBReport, SocleError> {
    let model = &group.model;
    let n = model.size();
    let mut checks: Vec<TypeBCheck> = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(TypeBCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    // faithfulness: a pair acting trivially forces u = v via point 0 and
    // then u ∈ C_{H0}(L) = 1; verified here on generators and their
    // pairwise products over a spanning probe set
    let mut faithful = true;
    let mut probes: Vec<PairElement> = group.gen_pairs.clone();
    for a in &group.gen_pairs {
        for b in &group.gen_pairs {
            probes.push(a.product(model, b));
        }
    }
    for p in &probes {
        if p.is_identity() {
            continue;
        }
        if (0..n as u32).all(|i| model.act_point(p, i) == i) {
            faithful = false;
            break;
        }
    }
    push(
        "faithful",
        faithful,
        "no nontrivial generator word acts trivially".into(),
    );

    // regularity of the coordinate subgroups: transitivity plus a trivial
    // stabilizer of point 0, both exhaustive
    let id = Perm::identity(model.degree_small());
    for (name, left) in [
        ("left_coordinate_regular", true),
        ("right_coordinate_regular", false),
    ] {
        let coord_gens: Vec<PairElement> = model
            .entry
            .gens_l
            .iter()
            .map(|l| {
                if left {
                    PairElement::new_unchecked(l.clone(), id.clone(), 0)
                } else {
                    PairElement::new_unchecked(id.clone(), l.clone(), 0)
                }
            })
            .collect();
        let omega: Vec<Perm> = coord_gens
            .iter()
            .map(|p| model.act(p))
            .collect::<Result<_, _>>()?;
        let transitive = bsgs::is_transitive(&omega, n);
        // (l, 1) sends point 0 to index(l); (1, l) sends it to index(l⁻¹):
        // only l = 1 stabilizes point 0
        let stab_trivial = (0..n as u32).all(|i| {
            let image = if left { i } else { model.inverse_index(i) };
            image != 0 || i == 0
        });
        push(
            name,
            transitive && stab_trivial,
            format!("transitive: {transitive}, trivial stabilizer: {stab_trivial}"),
        );
    }

    // normality of the coordinate subgroups under every group generator
    let mut left_normal = true;
    let mut right_normal = true;
    for g in &group.gen_pairs {
        let (gu_inv, gv_inv) = (g.u.inverse(), g.v.inverse());
        for l in &model.entry.gens_l {
            let conj_left = g.u.compose_unchecked(l).compose_unchecked(&gu_inv);
            if model.element_index(&conj_left).is_none() {
                left_normal = false;
            }
            let conj_right = g.v.compose_unchecked(l).compose_unchecked(&gv_inv);
            if model.element_index(&conj_right).is_none() {
                right_normal = false;
            }
        }
    }
    // the swap hook conjugates in Ω-space, where the coordinate subgroups
    // must be matched against reconstructed candidates
    for s in &group.extra_omega_gens {
        let s_inv = s.inverse();
        for l in &model.entry.gens_l {
            let left_pair = PairElement::new_unchecked(l.clone(), id.clone(), 0);
            let omega = model.act(&left_pair)?;
            let conj = s.compose_unchecked(&omega).compose_unchecked(&s_inv);
            if !is_left_coordinate_perm(model, &conj) {
                left_normal = false;
            }
            let right_pair = PairElement::new_unchecked(id.clone(), l.clone(), 0);
            let omega = model.act(&right_pair)?;
            let conj = s.compose_unchecked(&omega).compose_unchecked(&s_inv);
            if !is_right_coordinate_perm(model, &conj) {
                right_normal = false;
            }
        }
    }
    push("left_coordinate_normal", left_normal, String::new());
    push("right_coordinate_normal", right_normal, String::new());

    let omega_gens = group.omega_generators()?;
    let transitive = bsgs::is_transitive(&omega_gens, n);
    push("transitive", transitive, String::new());

    if check_primitivity {
        let (_, primitive) = bsgs::transitivity_and_primitivity(&omega_gens, n);
        push("primitive", primitive, String::new());
    }

    Ok(TypeBReport {
        label: group.label.clone(),
        checks,
    })
}

/// Is the `Ω`-permutation the action of some `(l, 1)` with `l ∈ L`? The
/// candidate is pinned by the image of point 0 and compared pointwise.
fn is_left_coordinate_perm(model: &SocleModel, p: &Perm) -> bool {
    let l_index = p.apply(0);
    let candidate = PairElement::new_unchecked(
        model.element(l_index).clone(),
        Perm::identity(model.degree_small()),
        0,
    );
    (0..model.size() as u32).all(|i| model.act_point(&candidate, i) == p.apply(i))
}

fn is_right_coordinate_perm(model: &SocleModel, p: &Perm) -> bool {
    // (1, l) sends point 0 to index(l⁻¹)
    let l_index = model.inverse_index(p.apply(0));
    let candidate = PairElement::new_unchecked(
        Perm::identity(model.degree_small()),
        model.element(l_index).clone(),
        0,
    );
    (0..model.size() as u32).all(|i| model.act_point(&candidate, i) == p.apply(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::build_entry;

    fn model(label: &str) -> Arc<SocleModel> {
        Arc::new(SocleModel::enumerate(&build_entry(label).unwrap()).unwrap())
    }

    #[test]
    fn enumerates_psl2_7() {
        let m = model("psl2_7");
        assert_eq!(m.size(), 168);
        assert_eq!(m.q_size(), 2);
        assert!(m.element(0).is_identity());
        for i in 0..m.size() as u32 {
            assert_eq!(m.element_index(m.element(i)), Some(i));
        }
    }

    #[test]
    fn enumerates_a5_and_a8() {
        assert_eq!(model("a5").size(), 60);
        assert_eq!(model("a8").size(), 20160);
    }

    #[test]
    fn mul_indices_matches_composition() {
        let m = model("a5");
        for (i, j) in [(3u32, 7u32), (0, 11), (25, 59)] {
            let direct = m.element(i).compose_unchecked(m.element(j));
            assert_eq!(m.mul_indices(i, j), m.element_index(&direct).unwrap());
        }
    }

    #[test]
    fn size_guard_trips_for_sp6_2() {
        let entry = build_entry("sp6_2").unwrap();
        assert!(matches!(
            SocleModel::enumerate(&entry),
            Err(SocleError::SizeGuard(_))
        ));
    }

    #[test]
    fn psl2_7_catalog_has_two_groups() {
        let m = model("psl2_7");
        let groups = catalog_type_b(&m).unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].order, 168 * 168);
        assert_eq!(groups[1].order, 56448);
    }

    #[test]
    fn psl2_9_catalog_has_five_groups() {
        let m = model("psl2_9");
        assert_eq!(m.q_size(), 4);
        assert_eq!(catalog_type_b(&m).unwrap().len(), 5);
    }

    #[test]
    fn psl2_16_catalog_has_three_groups() {
        let m = model("psl2_16");
        assert_eq!(m.q_size(), 4); // Q = C4
        assert_eq!(catalog_type_b(&m).unwrap().len(), 3);
    }

    #[test]
    fn identity_pair_acts_trivially_with_full_fixed_set() {
        let m = model("psl2_7");
        let id_pair = PairElement::identity(&m);
        assert_eq!(m.pair_fixed_points(&id_pair), 168);
        assert!(m.act(&id_pair).unwrap().is_identity());
    }

    #[test]
    fn mixed_order_inner_pair_has_no_fixed_points() {
        let m = model("a5");
        let three = (0..m.size() as u32)
            .map(|i| m.element(i).clone())
            .find(|e| e.order() == 3)
            .unwrap();
        let two = (0..m.size() as u32)
            .map(|i| m.element(i).clone())
            .find(|e| e.order() == 2)
            .unwrap();
        let pair = PairElement::new(&m, two, three).unwrap();
        assert_eq!(m.pair_fixed_points(&pair), 0);
        assert_eq!(m.act(&pair).unwrap().fixed_points(), 0);
    }

    #[test]
    fn conjugate_order7_pair_fixes_seven_points() {
        let m = model("psl2_7");
        let seven = (0..m.size() as u32)
            .map(|i| m.element(i).clone())
            .find(|e| e.order() == 7)
            .unwrap();
        let l = m.element(5).clone();
        let conj = seven.conjugate_by(&l);
        let pair = PairElement::new(&m, seven.clone(), conj).unwrap();
        assert_eq!(m.pair_fixed_points(&pair), 7);
        assert_eq!(m.act(&pair).unwrap().fixed_points(), 7);
    }

    #[test]
    fn order_of_action_is_lcm() {
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        for rep in class_reps(&groups[1], None).iter().take(40) {
            let omega = m.act(&rep.pair).unwrap();
            assert_eq!(omega.order(), rep.pair.order());
        }
    }

    #[test]
    fn class_reps_examples() {
        // A8^2, order 7: pairs over {1, 7a, 7b} with lcm 7 → 8 reps
        let m = model("a8");
        let groups = catalog_type_b(&m).unwrap();
        let reps7 = class_reps(&groups[0], Some(7));
        assert_eq!(reps7.len(), 8);
        let sizes: Vec<u64> = m
            .class_ids_of_coset(0)
            .iter()
            .filter(|&&c| m.class(c).elem_order == 7)
            .map(|&c| m.class(c).size as u64)
            .collect();
        assert_eq!(sizes, vec![2880, 2880]);
    }

    #[test]
    fn class_reps_order_3_in_psl2_7_extension() {
        let m = model("psl2_7");
        let groups = catalog_type_b(&m).unwrap();
        let reps = class_reps(&groups[1], Some(3));
        // (c3,1), (1,c3), (c3,c3): a single order-3 class in PSL2(7)
        assert_eq!(reps.len(), 3);
        assert!(reps.iter().all(|r| r.coset == 0));
    }

    #[test]
    fn class_reps_order_1_is_identity() {
        let m = model("a5");
        for g in &catalog_type_b(&m).unwrap() {
            let reps = class_reps(g, Some(1));
            assert_eq!(reps.len(), 1);
            assert!(reps[0].pair.is_identity());
        }
    }

    #[test]
    fn verify_passes_for_psl2_7_extension_and_a5_square() {
        let m = model("psl2_7");
        let groups = catalog_type_b(&m).unwrap();
        let report = verify_type_b(&groups[1], true).unwrap();
        assert!(report.all_pass(), "{:?}", report.first_failure());

        let m5 = model("a5");
        let g5 = catalog_type_b(&m5).unwrap();
        let report = verify_type_b(&g5[0], true).unwrap();
        assert!(report.all_pass(), "{:?}", report.first_failure());
    }

    #[test]
    fn swap_adjoined_group_fails_coordinate_normality() {
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        let swapped = groups[0].with_swap_adjoined();
        assert!(swapped.is_swap_adjoined());
        let report = verify_type_b(&swapped, false).unwrap();
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert!(failed.contains(&"left_coordinate_normal"), "{failed:?}");
    }

    #[test]
    fn burnside_sanity_on_a_full_inner_class() {
        // Σ over one full inner class of fixed_points = |class| · f(rep)
        let m = model("a5");
        let inv_class = *m
            .class_ids_of_coset(0)
            .iter()
            .find(|&&c| m.class(c).elem_order == 2)
            .unwrap();
        let rep_v = m.class_rep(inv_class);
        let members = m.class_member_indices(inv_class).to_vec();
        let f_of = |i: u32| {
            m.pair_fixed_points(&PairElement::new_unchecked(
                m.element(i).clone(),
                rep_v.clone(),
                0,
            ))
        };
        let total: u64 = members.iter().map(|&i| f_of(i)).sum();
        assert_eq!(total, members.len() as u64 * f_of(members[0]));
        assert_eq!(f_of(members[0]), 4); // |C_{A5}(involution)| = 4
    }

    #[test]
    fn faithfulness_spot_check_distinct_pairs_distinct_perms() {
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        let reps = class_reps(&groups[1], None);
        let mut seen = std::collections::HashSet::new();
        for rep in reps.iter().take(30) {
            let omega = m.act(&rep.pair).unwrap();
            assert!(seen.insert(omega), "distinct pairs must act distinctly");
        }
    }

    #[test]
    fn class_rep_completeness_small_group() {
        // For A5^2.C2 (order 7200 ≤ 10^5): the union of exact conjugation
        // orbits of the emitted order-2 reps is all order-2 elements.
        let m = model("a5");
        let groups = catalog_type_b(&m).unwrap();
        let group = &groups[1];
        let reps = class_reps(group, Some(2));
        let mut covered: std::collections::HashSet<(Perm, Perm)> = Default::default();
        for rep in &reps {
            let mut orbit = vec![rep.pair.clone()];
            let mut seen: std::collections::HashSet<(Perm, Perm)> =
                [(rep.pair.u.clone(), rep.pair.v.clone())].into();
            let mut i = 0;
            while i < orbit.len() {
                let cur = orbit[i].clone();
                i += 1;
                for g in &group.gen_pairs {
                    let conj = cur.conjugate_by(g);
                    if seen.insert((conj.u.clone(), conj.v.clone())) {
                        orbit.push(conj);
                    }
                }
            }
            covered.extend(seen);
        }
        let mut total = 0u64;
        for &c in &group.q0 {
            let hc = m.coset_rep(c);
            for i in 0..m.size() as u32 {
                let u = hc.compose_unchecked(m.element(i));
                if u.order() > 2 {
                    continue;
                }
                for j in 0..m.size() as u32 {
                    let v = hc.compose_unchecked(m.element(j));
                    if num_integer::lcm(u.order(), v.order()) == 2 {
                        total += 1;
                        assert!(covered.contains(&(u.clone(), v)));
                    }
                }
            }
        }
        assert_eq!(total, element_count_of_order(group, 2));
    }
}
