//! Image-array permutations on 0-based point sets.
//!
//! A [`Perm`] of degree `d` stores the images of the points `0..d` in a flat
//! array. Degrees in this crate stay small (at most a few tens of thousands),
//! so full image arrays are cheap and keep every operation branch-free.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images are not a bijection on 0..{degree}: {detail}")]
    NotBijection { degree: usize, detail: String },
    #[error("cycle entry {0} out of range for degree {1}")]
    PointOutOfRange(u32, usize),
    #[error("point {0} repeated in cycle list")]
    RepeatedPoint(u32),
}

/// A permutation of `{0, …, d−1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from an image array, verifying bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &im in &images {
            if im as usize >= d {
                return Err(PermError::NotBijection {
                    degree: d,
                    detail: format!("image {im} out of range"),
                });
            }
            if seen[im as usize] {
                return Err(PermError::NotBijection {
                    degree: d,
                    detail: format!("image {im} repeated"),
                });
            }
            seen[im as usize] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p as usize >= degree {
                    return Err(PermError::PointOutOfRange(p, degree));
                }
                if touched[p as usize] {
                    return Err(PermError::RepeatedPoint(p));
                }
                touched[p as usize] = true;
                images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// Function composition: the result maps `i ↦ p(q(i))` for `p = self`.
    pub fn compose(&self, q: &Perm) -> Result<Perm, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose_unchecked(q))
    }

    /// Composition without the degree check, for hot paths that already know
    /// the degrees agree.
    #[inline]
    pub fn compose_unchecked(&self, q: &Perm) -> Perm {
        let images = q
            .images
            .iter()
            .map(|&im| self.images[im as usize])
            .collect();
        Perm { images }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// `self` raised to the `n`-th power (negative exponents invert).
    pub fn pow(&self, n: i64) -> Perm {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = base.compose_unchecked(&acc);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[c.images[i] as usize] = c.images[im as usize];
        }
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Order, cycle type, orbit count and fixed points in one cycle sweep.
    pub fn cycle_data(&self) -> CycleData {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut lengths: Vec<u32> = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut p = start as u32;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            lengths.push(len);
        }
        CycleData::from_lengths(lengths, d)
    }

    pub fn order(&self) -> u64 {
        self.cycle_data().order
    }

    /// `(orbit count, fixed points)` of the cyclic group generated by `self`.
    pub fn orbit_data(&self) -> (usize, usize) {
        let cd = self.cycle_data();
        (cd.orbit_count, cd.fixed_points)
    }

    /// Number of fixed points, without materializing the full cycle data.
    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i as u32 == im)
            .count()
    }

    /// `true` for even permutations.
    pub fn is_even(&self) -> bool {
        let cd = self.cycle_data();
        (self.degree() - cd.orbit_count) % 2 == 0
    }
}

/// Lets hash maps keyed by `Perm` be probed with a plain image slice,
/// avoiding an allocation per lookup in the hot index paths.
impl std::borrow::Borrow<[u32]> for Perm {
    fn borrow(&self) -> &[u32] {
        &self.images
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    /// Disjoint cycle notation, fixed points omitted; identity prints `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut wrote = false;
        for start in 0..d {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start as u32;
            let mut first = true;
            loop {
                seen[p as usize] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p as usize];
                if p as usize == start {
                    break;
                }
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Cycle structure of a permutation: multiset of cycle lengths plus the
/// derived order, orbit count and fixed-point count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleData {
    /// `(length, multiplicity)` pairs sorted by length.
    pub cycle_type: Vec<(u32, u32)>,
    pub order: u64,
    pub orbit_count: usize,
    pub fixed_points: usize,
    pub degree: usize,
}

impl CycleData {
    fn from_lengths(mut lengths: Vec<u32>, degree: usize) -> Self {
        lengths.sort_unstable();
        let orbit_count = lengths.len();
        let fixed_points = lengths.iter().take_while(|&&l| l == 1).count();
        let mut cycle_type: Vec<(u32, u32)> = Vec::new();
        let mut order = 1u64;
        for &l in &lengths {
            match cycle_type.last_mut() {
                Some((len, mult)) if *len == l => *mult += 1,
                _ => {
                    cycle_type.push((l, 1));
                    order = num_integer::lcm(order, l as u64);
                }
            }
        }
        CycleData {
            cycle_type,
            order,
            orbit_count,
            fixed_points,
            degree,
        }
    }

    /// Total points covered; always equals the degree.
    pub fn total(&self) -> usize {
        self.cycle_type
            .iter()
            .map(|&(l, m)| l as usize * m as usize)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let p = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let id = Perm::identity(3);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
    }

    #[test]
    fn inverse_law() {
        let p = Perm::from_cycles(7, &[&[0, 3, 5], &[1, 2]]).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn compose_maps_i_to_p_of_q_of_i() {
        // (0 1 2) ∘ (0 1) sends 0 ↦ 2, 1 ↦ 1, 2 ↦ 0.
        let p = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let q = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let r = p.compose(&q).unwrap();
        assert_eq!(r.images(), &[2, 1, 0]);
    }

    #[test]
    fn compose_is_associative() {
        let a = Perm::from_cycles(6, &[&[0, 1, 2, 3]]).unwrap();
        let b = Perm::from_cycles(6, &[&[2, 4], &[1, 5]]).unwrap();
        let c = Perm::from_cycles(6, &[&[0, 5, 3]]).unwrap();
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Perm::identity(3);
        let q = Perm::identity(4);
        assert!(matches!(p.compose(&q), Err(PermError::DegreeMismatch(3, 4))));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn identity_cycle_data() {
        let cd = Perm::identity(5).cycle_data();
        assert_eq!(cd.order, 1);
        assert_eq!(cd.cycle_type, vec![(1, 5)]);
        assert_eq!(cd.orbit_count, 5);
        assert_eq!(cd.fixed_points, 5);
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let p = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        let cd = p.cycle_data();
        assert_eq!(cd.order, 6);
        assert_eq!(cd.cycle_type, vec![(2, 1), (3, 1)]);
        assert_eq!(cd.total(), 5);
    }

    #[test]
    fn full_cycle_orbit_data() {
        let p = Perm::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).unwrap();
        assert_eq!(p.orbit_data(), (1, 0));
    }

    #[test]
    fn pow_and_order_agree() {
        let p = Perm::from_cycles(9, &[&[0, 1, 2, 3], &[4, 5, 6]]).unwrap();
        let n = p.order() as i64;
        assert!(p.pow(n).is_identity());
        assert!(!p.pow(n / 2).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        let p = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4]]).unwrap();
        let c = Perm::from_cycles(6, &[&[0, 5], &[1, 3, 2]]).unwrap();
        let q = p.conjugate_by(&c);
        assert_eq!(q, c.compose(&p).unwrap().compose(&c.inverse()).unwrap());
        assert_eq!(q.cycle_data().cycle_type, p.cycle_data().cycle_type);
    }

    #[test]
    fn display_uses_cycles() {
        let p = Perm::from_cycles(4, &[&[0, 2, 1]]).unwrap();
        assert_eq!(p.to_string(), "(0 2 1)");
        assert_eq!(Perm::identity(3).to_string(), "()");
    }
}
