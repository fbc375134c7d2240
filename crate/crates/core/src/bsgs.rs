//! Base-and-strong-generating-set machinery for permutation groups.
//!
//! [`PermGroup`] is built with the deterministic Schreier–Sims algorithm, so
//! order and membership are exact and reproducible for a given generator
//! order. Transversals are stored explicitly per level while they stay small
//! and fall back to Schreier-vector path products for very large orbits.

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::perm::{Perm, PermError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("generator list is empty")]
    NoGenerators,
    #[error("orbit exceeded cap of {0} elements")]
    OrbitOverflow(usize),
}

/// Orbit of `start` under the generators, in BFS discovery order.
pub fn orbit_of_point(gens: &[Perm], start: u32) -> Vec<u32> {
    let degree = gens.first().map_or(start as usize + 1, Perm::degree);
    let mut seen = vec![false; degree.max(start as usize + 1)];
    let mut orbit = vec![start];
    seen[start as usize] = true;
    let mut idx = 0;
    while idx < orbit.len() {
        let p = orbit[idx];
        idx += 1;
        for g in gens {
            let q = g.apply(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                orbit.push(q);
            }
        }
    }
    orbit
}

pub fn is_transitive(gens: &[Perm], degree: usize) -> bool {
    degree <= 1 || orbit_of_point(gens, 0).len() == degree
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`; true if they were distinct.
    fn union(&mut self, x: u32, y: u32) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Size of the minimal block containing `{a, b}` for the group generated by
/// `gens` (assumed transitive).
pub fn minimal_block_size(gens: &[Perm], degree: usize, a: u32, b: u32) -> usize {
    let mut uf = UnionFind::new(degree);
    let mut queue = vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    let root = uf.find(a);
    (0..degree as u32).filter(|&p| uf.find(p) == root).count()
}

/// Transitivity and primitivity of the group generated by `gens`.
///
/// Primitivity is decided by running the minimal-block computation from
/// every point pair `(0, i)`; intransitive groups report `(false, false)`.
pub fn transitivity_and_primitivity(gens: &[Perm], degree: usize) -> (bool, bool) {
    if degree <= 1 {
        return (true, true);
    }
    if !is_transitive(gens, degree) {
        return (false, false);
    }
    if degree == 2 {
        return (true, true);
    }
    use rayon::prelude::*;
    let primitive = (1..degree as u32)
        .into_par_iter()
        .all(|i| minimal_block_size(gens, degree, 0, i) == degree);
    (true, primitive)
}

/// Closure of `{seed}` under conjugation by the given elements, in BFS
/// discovery order. Exceeding `cap` aborts with an overflow signal so the
/// caller can fall back to coarser class labels.
pub fn conjugation_orbit(
    seed: &Perm,
    conjugators: &[Perm],
    cap: usize,
) -> Result<Vec<Perm>, GroupError> {
    let mut seen: FxHashSet<Perm> = FxHashSet::default();
    let mut orbit = vec![seed.clone()];
    seen.insert(seed.clone());
    let mut idx = 0;
    while idx < orbit.len() {
        let cur = orbit[idx].clone();
        idx += 1;
        for c in conjugators {
            let conj = cur.conjugate_by(c);
            if !seen.contains(&conj) {
                if orbit.len() >= cap {
                    return Err(GroupError::OrbitOverflow(cap));
                }
                seen.insert(conj.clone());
                orbit.push(conj);
            }
        }
    }
    Ok(orbit)
}

/// All elements of the group generated by `gens`, by BFS over right
/// multiplication, in discovery order. Aborts past `cap`.
pub fn element_closure(gens: &[Perm], cap: usize) -> Result<Vec<Perm>, GroupError> {
    let degree = gens.first().ok_or(GroupError::NoGenerators)?.degree();
    let id = Perm::identity(degree);
    let mut seen: FxHashSet<Perm> = FxHashSet::default();
    let mut elems = vec![id.clone()];
    seen.insert(id);
    let mut idx = 0;
    while idx < elems.len() {
        let cur = elems[idx].clone();
        idx += 1;
        for g in gens {
            let next = cur.compose_unchecked(g);
            if !seen.contains(&next) {
                if elems.len() >= cap {
                    return Err(GroupError::OrbitOverflow(cap));
                }
                seen.insert(next.clone());
                elems.push(next);
            }
        }
    }
    Ok(elems)
}

// Past this size (orbit length × degree, in words) a level keeps Schreier
// vectors only and rebuilds coset representatives by path products.
const EXPLICIT_TRANSVERSAL_LIMIT: usize = 1 << 24;

struct Level {
    base_point: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// point → orbit position + 1, 0 when absent
    position: Vec<u32>,
    /// per orbit position: (generator index, predecessor point); base has none
    back: Vec<(u32, u32)>,
    /// explicit coset representatives aligned with `orbit`, when small enough
    trans: Option<Vec<Perm>>,
    degree: usize,
}

impl Level {
    fn new(degree: usize, base_point: u32) -> Self {
        let mut level = Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            position: vec![0; degree],
            back: Vec::new(),
            trans: None,
            degree,
        };
        level.rebuild_orbit();
        level
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        self.rebuild_orbit();
    }

    fn rebuild_orbit(&mut self) {
        self.position.iter_mut().for_each(|p| *p = 0);
        self.orbit.clear();
        self.back.clear();
        self.orbit.push(self.base_point);
        self.position[self.base_point as usize] = 1;
        self.back.push((u32::MAX, u32::MAX));
        let mut idx = 0;
        while idx < self.orbit.len() {
            let p = self.orbit[idx];
            idx += 1;
            for (gi, g) in self.gens.iter().enumerate() {
                let q = g.apply(p);
                if self.position[q as usize] == 0 {
                    self.orbit.push(q);
                    self.position[q as usize] = self.orbit.len() as u32;
                    self.back.push((gi as u32, p));
                }
            }
        }
        if self.orbit.len() * self.degree <= EXPLICIT_TRANSVERSAL_LIMIT {
            let mut trans: Vec<Perm> = Vec::with_capacity(self.orbit.len());
            trans.push(Perm::identity(self.degree));
            for pos in 1..self.orbit.len() {
                let (gi, prev) = self.back[pos];
                let prev_rep = &trans[self.position[prev as usize] as usize - 1];
                trans.push(self.gens[gi as usize].compose_unchecked(prev_rep));
            }
            self.trans = Some(trans);
        } else {
            self.trans = None;
        }
    }

    fn contains_point(&self, p: u32) -> bool {
        self.position[p as usize] != 0
    }

    /// Coset representative mapping the base point to `p`.
    fn rep(&self, p: u32) -> Perm {
        let pos = self.position[p as usize] as usize - 1;
        if let Some(trans) = &self.trans {
            return trans[pos].clone();
        }
        let mut path: Vec<u32> = Vec::new();
        let mut cur = p;
        while cur != self.base_point {
            let (gi, prev) = self.back[self.position[cur as usize] as usize - 1];
            path.push(gi);
            cur = prev;
        }
        let mut rep = Perm::identity(self.degree);
        for &gi in path.iter().rev() {
            rep = self.gens[gi as usize].compose_unchecked(&rep);
        }
        rep
    }
}

/// A permutation group with base, strong generating set and exact order.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
    order: u128,
}

impl PermGroup {
    /// Deterministic Schreier–Sims construction from a generator list.
    pub fn build_bsgs(gens: &[Perm]) -> Result<PermGroup, GroupError> {
        let degree = gens.first().ok_or(GroupError::NoGenerators)?.degree();
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()).into());
            }
        }
        let mut group = PermGroup {
            degree,
            generators: gens.to_vec(),
            levels: Vec::new(),
            order: 1,
        };
        for g in gens {
            if !g.is_identity() {
                group.insert_gen(0, g.clone());
            }
        }
        let mut i = group.levels.len();
        while i > 0 {
            i -= 1;
            group.schreier_sims(i);
        }
        group.order = group
            .levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product();
        debug_assert!(gens.iter().all(|g| group.contains(g)));
        Ok(group)
    }

    /// Registers `g` as a strong generator at every level it is valid for,
    /// creating a new base point when it fixes the whole current base.
    fn insert_gen(&mut self, from: usize, g: Perm) {
        let mut j = from;
        while j < self.levels.len() && g.apply(self.levels[j].base_point) == self.levels[j].base_point
        {
            j += 1;
        }
        if j == self.levels.len() {
            let moved = (0..self.degree as u32)
                .find(|&p| g.apply(p) != p)
                .expect("non-identity generator moves a point");
            self.levels.push(Level::new(self.degree, moved));
        }
        for l in from..=j.min(self.levels.len() - 1) {
            self.levels[l].add_gen(g.clone());
        }
    }

    /// Establishes the stabilizer-chain condition at level `i`, assuming it
    /// already holds at every deeper level.
    fn schreier_sims(&mut self, i: usize) {
        self.levels[i].rebuild_orbit();
        let mut oi = 0;
        while oi < self.levels[i].orbit.len() {
            let beta = self.levels[i].orbit[oi];
            oi += 1;
            let u_beta = self.levels[i].rep(beta);
            for gi in 0..self.levels[i].gens.len() {
                let target = self.levels[i].gens[gi].apply(beta);
                let u_target_inv = self.levels[i].rep(target).inverse();
                let s = u_target_inv
                    .compose_unchecked(&self.levels[i].gens[gi])
                    .compose_unchecked(&u_beta);
                if s.is_identity() {
                    continue;
                }
                let (res, j) = self.strip(i + 1, s);
                if res.is_identity() {
                    continue;
                }
                if j == self.levels.len() {
                    let moved = (0..self.degree as u32)
                        .find(|&p| res.apply(p) != p)
                        .expect("nontrivial residue moves a point");
                    self.levels.push(Level::new(self.degree, moved));
                }
                for l in (i + 1)..=j {
                    self.levels[l].add_gen(res.clone());
                }
                for l in ((i + 1)..=j).rev() {
                    self.schreier_sims(l);
                }
            }
        }
    }

    /// Sifts `g` through levels `from..`, returning the residue and the level
    /// at which sifting stopped (`levels.len()` when it passed every level).
    fn strip(&self, from: usize, mut g: Perm) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let p = g.apply(level.base_point);
            if p == level.base_point {
                continue;
            }
            if !level.contains_point(p) {
                return (g, l);
            }
            g = level.rep(p).inverse().compose_unchecked(&g);
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact group order (product of fundamental orbit lengths).
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        for level in &self.levels {
            for g in &level.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Exact membership test by sifting.
    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (res, _) = self.strip(0, p.clone());
        res.is_identity()
    }

    /// Fundamental orbit lengths along the stabilizer chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.generators, self.degree)
    }

    /// `(transitive, primitive)` for the natural action.
    pub fn transitivity_and_primitivity(&self) -> (bool, bool) {
        transitivity_and_primitivity(&self.generators, self.degree)
    }

    /// Points fixed by the stabilizer of the first base point, together with
    /// that base point. For a transitive group the count equals the order of
    /// the centralizer in the full symmetric group.
    pub fn stabilizer_fixed_points(&self) -> (u32, Vec<u32>) {
        if self.levels.is_empty() {
            return (0, (0..self.degree as u32).collect());
        }
        let alpha = self.levels[0].base_point;
        let stab_gens: Vec<&Perm> = self.levels[1..].iter().flat_map(|l| l.gens.iter()).collect();
        let fixed = (0..self.degree as u32)
            .filter(|&p| stab_gens.iter().all(|g| g.apply(p) == p))
            .collect();
        (alpha, fixed)
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("base", &self.base())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        vec![
            Perm::from_cycles(n, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(n, &[&(0..n as u32).collect::<Vec<_>>()]).unwrap(),
        ]
    }

    fn alt(n: usize) -> Vec<Perm> {
        (2..n as u32)
            .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap())
            .collect()
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(PermGroup::build_bsgs(&sym(4)).unwrap().order(), 24);
        assert_eq!(PermGroup::build_bsgs(&sym(7)).unwrap().order(), 5040);
    }

    #[test]
    fn alternating_group_orders() {
        assert_eq!(PermGroup::build_bsgs(&alt(5)).unwrap().order(), 60);
        assert_eq!(PermGroup::build_bsgs(&alt(8)).unwrap().order(), 20160);
    }

    #[test]
    fn single_cycle_order_is_degree() {
        for d in [2usize, 5, 12, 97] {
            let c = Perm::from_cycles(d, &[&(0..d as u32).collect::<Vec<_>>()]).unwrap();
            assert_eq!(PermGroup::build_bsgs(&[c]).unwrap().order(), d as u128);
        }
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::build_bsgs(&[Perm::identity(6)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Perm::identity(6)));
        assert!(!g.contains(&Perm::from_cycles(6, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn membership_on_words() {
        let gens = alt(6);
        let g = PermGroup::build_bsgs(&gens).unwrap();
        // every word of length ≤ 5 in the generators is a member
        let mut words = vec![Perm::identity(6)];
        for _ in 0..5 {
            let mut next = Vec::new();
            for w in &words {
                for gen in &gens {
                    next.push(w.compose_unchecked(gen));
                }
            }
            for w in &next {
                assert!(g.contains(w));
            }
            words = next;
            words.truncate(40); // keep the blow-up in check
        }
    }

    #[test]
    fn rejects_non_members_from_explicit_cosets() {
        // A4 inside S4: every odd permutation is outside.
        let a4 = PermGroup::build_bsgs(&alt(4)).unwrap();
        assert_eq!(a4.order(), 12);
        let transposition = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        assert!(!a4.contains(&transposition));
        let four_cycle = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert!(!a4.contains(&four_cycle));
        // coset representatives: odd = transposition * even
        for even in element_closure(&alt(4), 100).unwrap() {
            assert!(!a4.contains(&transposition.compose_unchecked(&even)));
        }
    }

    #[test]
    fn generators_always_members() {
        let gens = sym(5);
        let g = PermGroup::build_bsgs(&gens).unwrap();
        for gen in &gens {
            assert!(g.contains(gen));
        }
    }

    #[test]
    fn intransitive_group_reported() {
        let g = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let (t, p) = transitivity_and_primitivity(&[g], 4);
        assert!(!t);
        assert!(!p);
    }

    #[test]
    fn cyclic_c4_is_imprimitive() {
        let g = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let (t, p) = transitivity_and_primitivity(std::slice::from_ref(&g), 4);
        assert!(t);
        assert!(!p);
        assert_eq!(minimal_block_size(&[g], 4, 0, 2), 2);
    }

    #[test]
    fn symmetric_group_is_primitive() {
        let (t, p) = transitivity_and_primitivity(&sym(5), 5);
        assert!(t && p);
    }

    #[test]
    fn conjugation_orbit_of_identity() {
        let id = Perm::identity(5);
        let orbit = conjugation_orbit(&id, &sym(5), 10).unwrap();
        assert_eq!(orbit, vec![id]);
    }

    #[test]
    fn conjugation_orbit_transpositions_in_s4() {
        let seed = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let orbit = conjugation_orbit(&seed, &sym(4), 100).unwrap();
        assert_eq!(orbit.len(), 6);
    }

    #[test]
    fn conjugation_orbit_overflow_signal() {
        let seed = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(
            conjugation_orbit(&seed, &sym(4), 3),
            Err(GroupError::OrbitOverflow(3))
        );
    }

    #[test]
    fn element_closure_counts() {
        assert_eq!(element_closure(&sym(4), 100).unwrap().len(), 24);
        assert_eq!(element_closure(&alt(5), 100).unwrap().len(), 60);
    }

    #[test]
    fn stabilizer_fixed_points_of_2transitive_group() {
        let g = PermGroup::build_bsgs(&sym(6)).unwrap();
        let (alpha, fixed) = g.stabilizer_fixed_points();
        assert_eq!(fixed, vec![alpha]);
    }
}
