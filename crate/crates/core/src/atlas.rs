//! Constructors for the built-in group catalog: a simple group `L` together
//! with an overgroup `H₀ ≤ Sym(d)` realizing the relevant automorphisms,
//! plus a plain-text group data file format.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::algebra::{FieldError, FieldTable};
use crate::bsgs::{is_transitive, GroupError, PermGroup};
use crate::perm::{Perm, PermError};

#[derive(Debug, Error)]
pub enum AtlasError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown group label {0:?}")]
    UnknownLabel(String),
    #[error("alternating degree {0} outside supported range 5..=12")]
    BadAlternatingDegree(u32),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invariant failure: {0}")]
    InvariantViolated(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("construction failed: {0}")]
    Construction(String),
}

/// One group of the catalog: generators for the simple group `L`, generators
/// for the overgroup `H₀ ⊇ L`, and the expected orders both must match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasEntry {
    pub label: String,
    pub degree: usize,
    pub gens_l: Vec<Perm>,
    pub gens_h0: Vec<Perm>,
    pub expected_order_l: u128,
    pub expected_order_h0: u128,
    pub expected_index: u128,
}

impl AtlasEntry {
    pub fn bsgs_l(&self) -> Result<PermGroup, AtlasError> {
        Ok(PermGroup::build_bsgs(&self.gens_l)?)
    }

    pub fn bsgs_h0(&self) -> Result<PermGroup, AtlasError> {
        Ok(PermGroup::build_bsgs(&self.gens_h0)?)
    }
}

/// Labels of the full catalog, in canonical order.
pub fn catalog_labels() -> &'static [&'static str] {
    &[
        "a5", "a6", "a7", "a8", "psl2_7", "psl2_8", "psl2_9", "psl2_13", "psl2_16", "psl2_25",
        "u3_3", "u4_2", "sp6_2",
    ]
}

/// Builds a catalog entry by label.
pub fn build_entry(label: &str) -> Result<AtlasEntry, AtlasError> {
    match label {
        "a5" => build_alternating(5, true),
        "a6" => build_alternating(6, true),
        "a6_natural" => build_alternating(6, false),
        "a7" => build_alternating(7, true),
        "a8" => build_alternating(8, true),
        "psl2_7" => build_projective(7),
        "psl2_8" => build_projective(8),
        "psl2_9" => build_projective(9),
        "psl2_13" => build_projective(13),
        "psl2_16" => build_projective(16),
        "psl2_25" => build_projective(25),
        "u3_3" => build_classical(Classical::U3_3),
        "u4_2" => build_classical(Classical::U4_2),
        "sp6_2" => build_classical(Classical::Sp6_2),
        other => Err(AtlasError::UnknownLabel(other.to_string())),
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// `L = A_M` on `M` points generated by 3-cycles; the overgroup adds a
/// transposition, giving `S_M`. For `M = 6` the overgroup variant is served
/// through the degree-10 projective model so all outer automorphisms are
/// reachable; `build_alternating(6, false)` keeps the natural action.
pub fn build_alternating(m: u32, with_overgroup: bool) -> Result<AtlasEntry, AtlasError> {
    if !(5..=12).contains(&m) {
        return Err(AtlasError::BadAlternatingDegree(m));
    }
    if m == 6 && with_overgroup {
        let mut entry = build_projective(9)?;
        entry.label = "a6".to_string();
        return Ok(entry);
    }
    let d = m as usize;
    let gens_l: Vec<Perm> = (2..m)
        .map(|k| Perm::from_cycles(d, &[&[0, 1, k]]))
        .collect::<Result<_, _>>()?;
    let mut gens_h0 = gens_l.clone();
    let (order_h0, label) = if with_overgroup {
        gens_h0.push(Perm::from_cycles(d, &[&[0, 1]])?);
        (factorial(m), format!("a{m}"))
    } else {
        (factorial(m) / 2, format!("a{m}_natural"))
    };
    let order_l = factorial(m) / 2;
    Ok(AtlasEntry {
        label,
        degree: d,
        gens_l,
        gens_h0,
        expected_order_l: order_l,
        expected_order_h0: order_h0,
        expected_index: order_h0 / order_l,
    })
}

/// `L = PSL₂(q)` on the projective line (degree `q+1`), generated by
/// `x ↦ x+1`, `x ↦ λ²x` and `x ↦ −1/x`; `H₀ = PΓL₂(q)` adds `x ↦ λx` and
/// the Frobenius `x ↦ x^p`.
pub fn build_projective(q: u64) -> Result<AtlasEntry, AtlasError> {
    let field = FieldTable::new(q)?;
    let q32 = field.q();
    let d = q32 as usize + 1;
    let infinity = q32; // point index of ∞
    let lambda = field.primitive();

    let on_line = |f: &dyn Fn(u16) -> u16, image_of_infinity: u32| -> Result<Perm, PermError> {
        let mut images: Vec<u32> = (0..q32).map(|x| f(x as u16) as u32).collect();
        images.push(image_of_infinity);
        Perm::from_images(images)
    };

    let translation = on_line(&|x| field.add(x, 1), infinity)?;
    let lambda_sq = field.mul(lambda, lambda);
    let scale_sq = on_line(&|x| field.mul(lambda_sq, x), infinity)?;
    let mut inversion_images: Vec<u32> = vec![0; d];
    inversion_images[0] = infinity;
    inversion_images[infinity as usize] = 0;
    for x in 1..q32 {
        inversion_images[x as usize] = field.neg(field.inv(x as u16).unwrap()) as u32;
    }
    let inversion = Perm::from_images(inversion_images)?;

    let gens_l = vec![translation, scale_sq, inversion];
    let mut gens_h0 = gens_l.clone();
    gens_h0.push(on_line(&|x| field.mul(lambda, x), infinity)?);
    if field.extension_degree() > 1 {
        gens_h0.push(on_line(&|x| field.frobenius(x), infinity)?);
    }

    let qq = q as u128;
    let order_l = qq * (qq * qq - 1) / if q % 2 == 0 { 1 } else { 2 };
    let order_h0 = qq * (qq * qq - 1) * field.extension_degree() as u128;
    Ok(AtlasEntry {
        label: format!("psl2_{q}"),
        degree: d,
        gens_l,
        gens_h0,
        expected_order_l: order_l,
        expected_order_h0: order_h0,
        expected_index: order_h0 / order_l,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classical {
    Sp6_2,
    U3_3,
    U4_2,
}

/// The classical catalog groups, acting on their natural point geometries:
/// `Sp₆(2)` on the 63 nonzero vectors of F₂⁶ via symplectic transvections,
/// `U₃(3)` on the 28 isotropic points over F₉, and `U₄(2)` on the 45
/// isotropic points over F₄ with the field Frobenius as the outer extension.
pub fn build_classical(which: Classical) -> Result<AtlasEntry, AtlasError> {
    match which {
        Classical::Sp6_2 => build_sp6_2(),
        Classical::U3_3 => build_unitary(9, 3, "u3_3", 6048, 12096),
        Classical::U4_2 => build_unitary(4, 4, "u4_2", 25920, 51840),
    }
}

fn build_sp6_2() -> Result<AtlasEntry, AtlasError> {
    const DIM: u32 = 6;
    let n_points = (1u32 << DIM) - 1; // nonzero vectors, index = value − 1
    let form = |u: u32, w: u32| -> u32 {
        let mut acc = 0;
        for i in 0..3 {
            let (a, b) = (2 * i, 2 * i + 1);
            acc ^= ((u >> a) & 1) & ((w >> b) & 1);
            acc ^= ((u >> b) & 1) & ((w >> a) & 1);
        }
        acc
    };
    let mut transvections = Vec::with_capacity(n_points as usize);
    for v in 1..=n_points {
        let images: Vec<u32> = (1..=n_points)
            .map(|x| {
                let image = if form(x, v) == 1 { x ^ v } else { x };
                image - 1
            })
            .collect();
        transvections.push(Perm::from_images(images)?);
    }
    let expected: u128 = 1_451_520;
    let gens_l = reduce_generators(transvections, expected)?;
    Ok(AtlasEntry {
        label: "sp6_2".to_string(),
        degree: n_points as usize,
        gens_h0: gens_l.clone(),
        gens_l,
        expected_order_l: expected,
        expected_order_h0: expected,
        expected_index: 1,
    })
}

/// Hermitian geometry over `F_{q²}` in dimension `n`: the form is
/// `⟨u,v⟩ = Σ uᵢ·σ(vᵢ)` with `σ` the square-root-order Frobenius. Only the
/// induced permutation group matters, so any nondegenerate choice works.
struct Hermitian {
    field: FieldTable,
    n: usize,
    sigma_power: u32,
    points: Vec<Vec<u16>>,
}

impl Hermitian {
    fn new(q_sq: u64, n: usize) -> Result<Hermitian, AtlasError> {
        let field = FieldTable::new(q_sq)?;
        let e = field.extension_degree();
        if e % 2 != 0 {
            return Err(AtlasError::Construction(format!(
                "F_{q_sq} admits no square-root-order Frobenius"
            )));
        }
        let sigma_power = e / 2;
        let mut h = Hermitian {
            field,
            n,
            sigma_power,
            points: Vec::new(),
        };
        h.points = h.enumerate_isotropic();
        Ok(h)
    }

    fn sigma(&self, a: u16) -> u16 {
        self.field.frobenius_iter(a, self.sigma_power)
    }

    fn form(&self, u: &[u16], v: &[u16]) -> u16 {
        let mut acc = 0;
        for i in 0..self.n {
            acc = self.field.add(acc, self.field.mul(u[i], self.sigma(v[i])));
        }
        acc
    }

    /// Normalized projective representatives (leading coordinate 1) of the
    /// isotropic points, in lexicographic order.
    fn enumerate_isotropic(&self) -> Vec<Vec<u16>> {
        let q = self.field.q() as usize;
        let mut out = Vec::new();
        // leading-one representatives: position of the leading 1 varies
        for lead in 0..self.n {
            let tail = self.n - lead - 1;
            let count = q.pow(tail as u32);
            for code in 0..count {
                let mut v = vec![0u16; self.n];
                v[lead] = 1;
                let mut c = code;
                for i in (lead + 1)..self.n {
                    v[i] = (c % q) as u16;
                    c /= q;
                }
                if self.form(&v, &v) == 0 {
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    fn normalize(&self, v: &[u16]) -> Vec<u16> {
        let lead = v.iter().position(|&c| c != 0).expect("nonzero vector");
        let scale = self.field.inv(v[lead]).unwrap();
        v.iter().map(|&c| self.field.mul(scale, c)).collect()
    }

    fn point_index(&self, v: &[u16]) -> Option<usize> {
        let norm = self.normalize(v);
        self.points.binary_search(&norm).ok()
    }

    /// Induced permutation of the isotropic points of a linear map given by
    /// its action on vectors.
    fn induced_perm(&self, map: impl Fn(&[u16]) -> Vec<u16>) -> Result<Perm, AtlasError> {
        let images: Vec<u32> = self
            .points
            .iter()
            .map(|pt| {
                self.point_index(&map(pt))
                    .map(|i| i as u32)
                    .ok_or_else(|| {
                        AtlasError::Construction("map does not preserve the isotropic set".into())
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(Perm::from_images(images)?)
    }

    /// Unitary transvection `x ↦ x + λ⟨x,v⟩v` for isotropic `v` and
    /// trace-zero `λ`.
    fn transvection(&self, v: &[u16], lambda: u16) -> Result<Perm, AtlasError> {
        self.induced_perm(|x| {
            let c = self.field.mul(lambda, self.form(x, v));
            (0..self.n)
                .map(|i| self.field.add(x[i], self.field.mul(c, v[i])))
                .collect()
        })
    }

    fn trace_zero_units(&self) -> Vec<u16> {
        (1..self.field.q() as u16)
            .filter(|&a| self.field.add(a, self.sigma(a)) == 0)
            .collect()
    }

    fn frobenius_perm(&self) -> Result<Perm, AtlasError> {
        self.induced_perm(|x| x.iter().map(|&c| self.field.frobenius(c)).collect())
    }
}

fn build_unitary(
    q_sq: u64,
    n: usize,
    label: &str,
    order_l: u128,
    order_h0: u128,
) -> Result<AtlasEntry, AtlasError> {
    let geo = Hermitian::new(q_sq, n)?;
    let lambdas = geo.trace_zero_units();
    let mut transvections = Vec::new();
    let points = geo.points.clone();
    for v in &points {
        for &lambda in &lambdas {
            let t = geo.transvection(v, lambda)?;
            if !t.is_identity() {
                transvections.push(t);
            }
        }
    }
    let gens_l = reduce_generators(transvections, order_l)?;
    let mut gens_h0 = gens_l.clone();
    gens_h0.push(geo.frobenius_perm()?);
    Ok(AtlasEntry {
        label: label.to_string(),
        degree: points.len(),
        gens_l,
        gens_h0,
        expected_order_l: order_l,
        expected_order_h0: order_h0,
        expected_index: order_h0 / order_l,
    })
}

/// Greedily drops redundant generators while the group order is preserved.
/// The closure sweeps downstream get much cheaper with 2–4 generators than
/// with a full transvection list.
fn reduce_generators(gens: Vec<Perm>, order: u128) -> Result<Vec<Perm>, AtlasError> {
    let full = PermGroup::build_bsgs(&gens)?;
    if full.order() != order {
        return Err(AtlasError::Construction(format!(
            "generator closure has order {}, expected {order}",
            full.order()
        )));
    }
    // seed with prefix products, which usually lets all but a couple of the
    // original generators go
    let mut current = Vec::new();
    let mut acc = Perm::identity(gens[0].degree());
    for (i, g) in gens.iter().enumerate() {
        acc = g.compose_unchecked(&acc);
        if (i + 2).is_power_of_two() && !acc.is_identity() {
            current.push(acc.clone());
        }
    }
    current.extend(gens.clone());
    loop {
        let mut removed = false;
        let mut i = 0;
        while i < current.len() && current.len() > 2 {
            let mut trial = current.clone();
            trial.remove(i);
            if PermGroup::build_bsgs(&trial)?.order() == order {
                current = trial;
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            break;
        }
    }
    Ok(current)
}

/// A verification report: one named pass/fail line per invariant.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AtlasReport {
    pub label: String,
    pub checks: Vec<AtlasCheck>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct AtlasCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl AtlasReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&AtlasCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Checks every `AtlasEntry` invariant: exact orders of `L` and `H₀`,
/// index, transitivity of `L`, normality of `L` in `H₀`, and triviality of
/// the centralizer `C_{H₀}(L)`.
pub fn verify_atlas(entry: &AtlasEntry) -> Result<AtlasReport, AtlasError> {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(AtlasCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    let degrees_ok = entry
        .gens_l
        .iter()
        .chain(&entry.gens_h0)
        .all(|g| g.degree() == entry.degree);
    push("degree", degrees_ok, format!("degree {}", entry.degree));
    if !degrees_ok {
        return Ok(AtlasReport {
            label: entry.label.clone(),
            checks,
        });
    }

    let group_l = PermGroup::build_bsgs(&entry.gens_l)?;
    push(
        "l_order",
        group_l.order() == entry.expected_order_l,
        format!("|L| = {} (expected {})", group_l.order(), entry.expected_order_l),
    );

    let group_h0 = PermGroup::build_bsgs(&entry.gens_h0)?;
    push(
        "h0_order",
        group_h0.order() == entry.expected_order_h0,
        format!(
            "|H0| = {} (expected {})",
            group_h0.order(),
            entry.expected_order_h0
        ),
    );

    let index_ok = entry.expected_order_l * entry.expected_index == entry.expected_order_h0;
    push(
        "index",
        index_ok,
        format!("[H0:L] = {}", entry.expected_index),
    );

    let mut normal = true;
    'outer: for h in &entry.gens_h0 {
        let h_inv = h.inverse();
        for g in &entry.gens_l {
            let conj = h.compose_unchecked(g).compose_unchecked(&h_inv);
            if !group_l.contains(&conj) {
                normal = false;
                break 'outer;
            }
        }
    }
    push("normality", normal, "conjugates of L-generators lie in L".into());

    let transitive = is_transitive(&entry.gens_l, entry.degree);
    push("l_transitive", transitive, String::new());

    let centralizer_trivial = if transitive {
        check_centralizer_trivial(&entry.gens_l, &group_l, &group_h0, entry.degree)
    } else {
        false
    };
    push(
        "centralizer",
        centralizer_trivial,
        "C_{H0}(L) = 1".into(),
    );

    Ok(AtlasReport {
        label: entry.label.clone(),
        checks,
    })
}

/// Exact check that `C_{H₀}(L) = 1` for transitive `L`. The centralizer of a
/// transitive group in the full symmetric group is semiregular, and each of
/// its nontrivial elements is pinned down by where it sends one point: it
/// must map `α ↦ β` for a point `β ≠ α` fixed by the stabilizer `L_α`, and
/// is then forced everywhere by `c(g(x)) = g(c(x))`. We rebuild every such
/// candidate and test it for membership in `H₀`.
fn check_centralizer_trivial(
    gens_l: &[Perm],
    group_l: &PermGroup,
    group_h0: &PermGroup,
    degree: usize,
) -> bool {
    let (alpha, fixed) = group_l.stabilizer_fixed_points();
    for &beta in &fixed {
        if beta == alpha {
            continue;
        }
        if let Some(c) = propagate_centralizing_map(gens_l, degree, alpha, beta) {
            if gens_l.iter().all(|g| {
                c.compose_unchecked(g) == g.compose_unchecked(&c)
            }) && group_h0.contains(&c)
            {
                return false;
            }
        }
    }
    true
}

/// Attempts to build the unique map with `c(α) = β` commuting with all
/// generators, by propagating along the orbit; `None` when inconsistent.
fn propagate_centralizing_map(gens: &[Perm], degree: usize, alpha: u32, beta: u32) -> Option<Perm> {
    let unset = u32::MAX;
    let mut images = vec![unset; degree];
    images[alpha as usize] = beta;
    let mut queue = vec![alpha];
    while let Some(x) = queue.pop() {
        let cx = images[x as usize];
        for g in gens {
            let gx = g.apply(x);
            let want = g.apply(cx);
            let slot = &mut images[gx as usize];
            if *slot == unset {
                *slot = want;
                queue.push(gx);
            } else if *slot != want {
                return None;
            }
        }
    }
    if images.contains(&unset) {
        return None; // intransitive; caller only uses this on transitive L
    }
    Perm::from_images(images).ok()
}

// ---------------------------------------------------------------------------
// Group data files
// ---------------------------------------------------------------------------

/// Serializes an entry in the plain-text group data format: a `label` line,
/// a `degree <d>` header, then one generator per line as an image list under
/// `[L]` and `[H0]` sections. `#` starts a comment.
pub fn save_group_file(entry: &AtlasEntry, path: &Path) -> Result<(), AtlasError> {
    let mut out = String::new();
    writeln!(out, "label {}", entry.label).unwrap();
    writeln!(out, "degree {}", entry.degree).unwrap();
    writeln!(out, "[L]").unwrap();
    for g in &entry.gens_l {
        writeln!(out, "g: {}", join_images(g)).unwrap();
    }
    writeln!(out, "[H0]").unwrap();
    for g in &entry.gens_h0 {
        writeln!(out, "g: {}", join_images(g)).unwrap();
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn join_images(g: &Perm) -> String {
    g.images()
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses and fully verifies a group data file. Expected orders are
/// recomputed from the parsed generators; invariant failures (normality,
/// centralizer, transitivity) are reported by name.
pub fn load_group_file(path: &Path) -> Result<AtlasEntry, AtlasError> {
    let text = std::fs::read_to_string(path)?;
    parse_group_file(&text)
}

pub fn parse_group_file(text: &str) -> Result<AtlasEntry, AtlasError> {
    let mut label: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut section: Option<&str> = None;
    let mut gens_l: Vec<Perm> = Vec::new();
    let mut gens_h0: Vec<Perm> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("label ") {
            label = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("degree ") {
            degree = Some(rest.trim().parse().map_err(|_| AtlasError::Parse {
                line: line_no,
                msg: format!("bad degree {rest:?}"),
            })?);
        } else if line == "[L]" {
            section = Some("L");
        } else if line == "[H0]" {
            section = Some("H0");
        } else if let Some(rest) = line.strip_prefix("g:") {
            let d = degree.ok_or(AtlasError::Parse {
                line: line_no,
                msg: "generator before degree header".into(),
            })?;
            let images: Vec<u32> = rest
                .split_whitespace()
                .map(|tok| {
                    tok.parse().map_err(|_| AtlasError::Parse {
                        line: line_no,
                        msg: format!("bad image {tok:?}"),
                    })
                })
                .collect::<Result<_, _>>()?;
            if images.len() != d {
                return Err(AtlasError::Parse {
                    line: line_no,
                    msg: format!("expected {d} images, found {}", images.len()),
                });
            }
            let perm = Perm::from_images(images).map_err(|e| AtlasError::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            match section {
                Some("L") => gens_l.push(perm),
                Some("H0") => gens_h0.push(perm),
                _ => {
                    return Err(AtlasError::Parse {
                        line: line_no,
                        msg: "generator outside [L]/[H0] section".into(),
                    })
                }
            }
        } else {
            return Err(AtlasError::Parse {
                line: line_no,
                msg: format!("unrecognized line {line:?}"),
            });
        }
    }

    let label = label.ok_or(AtlasError::Parse {
        line: 0,
        msg: "missing label".into(),
    })?;
    let degree = degree.ok_or(AtlasError::Parse {
        line: 0,
        msg: "missing degree".into(),
    })?;
    if gens_l.is_empty() || gens_h0.is_empty() {
        return Err(AtlasError::Parse {
            line: 0,
            msg: "missing [L] or [H0] generators".into(),
        });
    }

    let order_l = PermGroup::build_bsgs(&gens_l)?.order();
    let order_h0 = PermGroup::build_bsgs(&gens_h0)?.order();
    if order_h0 % order_l != 0 {
        return Err(AtlasError::InvariantViolated("index".into()));
    }
    let entry = AtlasEntry {
        label,
        degree,
        gens_l,
        gens_h0,
        expected_order_l: order_l,
        expected_order_h0: order_h0,
        expected_index: order_h0 / order_l,
    };
    let report = verify_atlas(&entry)?;
    if let Some(failure) = report.first_failure() {
        return Err(AtlasError::InvariantViolated(failure.name.clone()));
    }
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsgs::orbit_of_point;

    #[test]
    fn alternating_entries() {
        let a8 = build_alternating(8, true).unwrap();
        assert_eq!(a8.bsgs_l().unwrap().order(), 20160);
        assert_eq!(a8.expected_index, 2);
        let a5 = build_alternating(5, true).unwrap();
        assert_eq!(a5.bsgs_l().unwrap().order(), 60);
        assert_eq!(a5.bsgs_h0().unwrap().order(), 120);
        assert!(build_alternating(4, true).is_err());
    }

    #[test]
    fn a6_is_served_through_the_degree_10_model() {
        let a6 = build_alternating(6, true).unwrap();
        assert_eq!(a6.degree, 10);
        assert_eq!(a6.expected_order_l, 360);
        assert_eq!(a6.expected_index, 4);
        assert_eq!(a6.bsgs_l().unwrap().order(), 360);
        // natural model cross-check
        let nat = build_alternating(6, false).unwrap();
        assert_eq!(nat.degree, 6);
        assert_eq!(nat.bsgs_l().unwrap().order(), 360);
    }

    #[test]
    fn projective_entries() {
        let e7 = build_projective(7).unwrap();
        assert_eq!(e7.degree, 8);
        assert_eq!(e7.bsgs_l().unwrap().order(), 168);
        assert_eq!(e7.bsgs_h0().unwrap().order(), 336);

        let e8 = build_projective(8).unwrap();
        assert_eq!(e8.degree, 9);
        assert_eq!(e8.bsgs_l().unwrap().order(), 504);
        assert_eq!(e8.expected_index, 3);
        assert_eq!(e8.bsgs_h0().unwrap().order(), 1512);

        let e16 = build_projective(16).unwrap();
        assert_eq!(e16.degree, 17);
        assert_eq!(e16.bsgs_l().unwrap().order(), 4080);
        assert_eq!(e16.expected_index, 4);
    }

    #[test]
    fn projective_13_and_25() {
        let e13 = build_projective(13).unwrap();
        assert_eq!(e13.bsgs_l().unwrap().order(), 1092);
        let e25 = build_projective(25).unwrap();
        assert_eq!(e25.bsgs_l().unwrap().order(), 7800);
        assert_eq!(e25.bsgs_h0().unwrap().order(), 31200);
    }

    #[test]
    fn psl2q_is_2transitive_on_the_projective_line() {
        for q in [7u64, 9] {
            let entry = build_projective(q).unwrap();
            let d = entry.degree;
            // orbit of the ordered pair (0, 1) under the pair action
            let pair_index = |a: usize, b: usize| (a * d + b) as u32;
            let pair_gens: Vec<Perm> = entry
                .gens_l
                .iter()
                .map(|g| {
                    let mut images = vec![0u32; d * d];
                    for a in 0..d {
                        for b in 0..d {
                            images[(a * d + b) as usize] =
                                pair_index(g.apply(a as u32) as usize, g.apply(b as u32) as usize);
                        }
                    }
                    Perm::from_images(images).unwrap()
                })
                .collect();
            let orbit = orbit_of_point(&pair_gens, pair_index(0, 1));
            assert_eq!(orbit.len(), d * (d - 1));
        }
    }

    #[test]
    fn classical_sp6_2() {
        let entry = build_classical(Classical::Sp6_2).unwrap();
        assert_eq!(entry.degree, 63);
        assert_eq!(entry.bsgs_l().unwrap().order(), 1_451_520);
        assert!(entry.gens_l.len() <= 8, "kept {}", entry.gens_l.len());
    }

    #[test]
    fn classical_u3_3() {
        let entry = build_classical(Classical::U3_3).unwrap();
        assert_eq!(entry.degree, 28);
        assert_eq!(entry.bsgs_l().unwrap().order(), 6048);
        assert_eq!(entry.bsgs_h0().unwrap().order(), 12096);
    }

    #[test]
    fn classical_u4_2() {
        let entry = build_classical(Classical::U4_2).unwrap();
        assert_eq!(entry.degree, 45);
        assert_eq!(entry.bsgs_l().unwrap().order(), 25920);
        assert_eq!(entry.expected_index, 2);
        assert_eq!(entry.bsgs_h0().unwrap().order(), 51840);
    }

    #[test]
    fn verify_passes_on_catalog_samples() {
        for label in ["psl2_13", "a7", "u3_3"] {
            let entry = build_entry(label).unwrap();
            let report = verify_atlas(&entry).unwrap();
            assert!(report.all_pass(), "{label}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn verify_flags_tampered_entry() {
        let mut entry = build_projective(7).unwrap();
        entry.gens_l[0] = Perm::identity(entry.degree);
        let report = verify_atlas(&entry).unwrap();
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.name, "l_order");
    }

    #[test]
    fn group_file_round_trip() {
        let dir = std::env::temp_dir().join("mforge-atlas-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("psl2_7.grp");
        let entry = build_projective(7).unwrap();
        save_group_file(&entry, &path).unwrap();
        let loaded = load_group_file(&path).unwrap();
        assert_eq!(loaded, entry);
        // save ∘ load is the identity on files
        let again = dir.join("psl2_7_again.grp");
        save_group_file(&loaded, &again).unwrap();
        assert_eq!(
            std::fs::read(&path).unwrap(),
            std::fs::read(&again).unwrap()
        );
    }

    #[test]
    fn malformed_image_list_reports_line() {
        let text = "label x\ndegree 3\n[L]\ng: 0 1 zzz\n[H0]\ng: 0 1 2\n";
        match parse_group_file(text) {
            Err(AtlasError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_normal_l_is_rejected_by_name() {
        // S3 (moving {0,1,2}) is not normal in S4
        let text = "label bad\ndegree 4\n[L]\ng: 1 0 2 3\ng: 1 2 0 3\n[H0]\ng: 1 0 2 3\ng: 1 2 3 0\n";
        match parse_group_file(text) {
            Err(AtlasError::InvariantViolated(name)) => assert_eq!(name, "normality"),
            other => panic!("expected normality failure, got {other:?}"),
        }
    }
}
