//! Alcoved polytopes: bounds on every positive root, alcove and lattice-point
//! counts, translated polytopes `P_(w)` and generalized hypersimplices.

use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use num_integer::Integer;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, CentralPoint};
use crate::rootsys::RootSystem;
use crate::weyl::WeylElement;

/// Default cap on the number of candidate points in an enumeration box.
pub const DEFAULT_POINT_BUDGET: u128 = 100_000_000;

/// One half-space pair `min ≤ (λ, root) ≤ max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub root: Vec<i64>,
    pub min: i64,
    pub max: i64,
}

/// JSON input format for a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSpec {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub constraints: Vec<Constraint>,
}

impl PolytopeSpec {
    pub fn root_system(&self) -> Result<RootSystem> {
        RootSystem::parse(&format!("{}{}", self.type_label, self.rank))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("bad polytope spec: {e}")))
    }
}

/// `{λ : k_α ≤ (λ, α) ≤ K_α for all α ∈ Φ⁺}`, bounds indexed like
/// `rs.positive_roots()`.
#[derive(Clone, Debug)]
pub struct AlcovedPolytope<'a> {
    rs: &'a RootSystem,
    lower: Vec<i64>,
    upper: Vec<i64>,
}

/// Builds a polytope from user constraints; every simple root needs a bound.
pub fn make_polytope<'a>(rs: &'a RootSystem, spec: &PolytopeSpec) -> Result<AlcovedPolytope<'a>> {
    if spec.rank != rs.rank() || !spec.type_label.eq_ignore_ascii_case(&rs.label().to_string()) {
        return Err(Error::input(format!(
            "spec is for {}{}, root system is {}",
            spec.type_label,
            spec.rank,
            rs.name()
        )));
    }
    let mut user: Vec<Option<(i64, i64)>> = vec![None; rs.num_positive_roots()];
    for c in &spec.constraints {
        rs.check_len(c.root.len())?;
        let idx = rs
            .root_index(&c.root)
            .ok_or_else(|| Error::input(format!("{:?} is not a positive root of {}", c.root, rs.name())))?;
        if c.min > c.max {
            return Err(Error::input(format!("constraint on {:?} has min > max", c.root)));
        }
        user[idx] = Some(match user[idx] {
            Some((lo, hi)) => (lo.max(c.min), hi.min(c.max)),
            None => (c.min, c.max),
        });
    }
    let n = rs.rank();
    if let Some(i) = (0..n).find(|&i| user[i].is_none()) {
        return Err(Error::input(format!(
            "unbounded: no constraint on simple root α_{}",
            i + 1
        )));
    }
    let lo: Vec<i64> = (0..n).map(|i| user[i].unwrap().0).collect();
    let hi: Vec<i64> = (0..n).map(|i| user[i].unwrap().1).collect();
    let extra: Vec<(usize, i64, i64)> = user
        .iter()
        .enumerate()
        .skip(n)
        .filter_map(|(idx, b)| b.map(|(l, h)| (idx, l, h)))
        .collect();
    AlcovedPolytope::from_simple_bounds(rs, &lo, &hi, &extra)
}

impl<'a> AlcovedPolytope<'a> {
    /// Box on the simple roots, bounds on the other roots derived from it
    /// and intersected with `extra` (root index, min, max).
    pub fn from_simple_bounds(
        rs: &'a RootSystem,
        lower: &[i64],
        upper: &[i64],
        extra: &[(usize, i64, i64)],
    ) -> Result<Self> {
        rs.check_len(lower.len())?;
        rs.check_len(upper.len())?;
        let (mut lo, mut hi): (Vec<i64>, Vec<i64>) = rs
            .positive_roots()
            .iter()
            .map(|root| {
                (
                    root.iter().zip(lower).map(|(c, k)| c * k).sum::<i64>(),
                    root.iter().zip(upper).map(|(c, k)| c * k).sum::<i64>(),
                )
            })
            .unzip();
        for &(idx, l, h) in extra {
            if idx >= lo.len() {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    max: lo.len() - 1,
                });
            }
            lo[idx] = lo[idx].max(l);
            hi[idx] = hi[idx].min(h);
        }
        Ok(AlcovedPolytope {
            rs,
            lower: lo,
            upper: hi,
        })
    }

    /// Bounds given for every positive root, taken as is.
    pub fn from_root_bounds(rs: &'a RootSystem, lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        let m = rs.num_positive_roots();
        for v in [&lower, &upper] {
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: v.len(),
                });
            }
        }
        Ok(AlcovedPolytope { rs, lower, upper })
    }

    /// The parallelepiped `Π`: `0 ≤ (λ, α_i) ≤ 1`.
    pub fn parallelepiped(rs: &'a RootSystem) -> Self {
        let n = rs.rank();
        Self::from_simple_bounds(rs, &vec![0; n], &vec![1; n], &[]).expect("lengths match")
    }

    /// `H`: `-1 ≤ (λ, α) ≤ 1` for every positive root.
    pub fn around_origin(rs: &'a RootSystem) -> Self {
        let m = rs.num_positive_roots();
        AlcovedPolytope {
            rs,
            lower: vec![-1; m],
            upper: vec![1; m],
        }
    }

    /// The closed fundamental alcove.
    pub fn fundamental_alcove(rs: &'a RootSystem) -> Self {
        hypersimplex(rs, 1).expect("h ≥ 2")
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    /// `(k_α, K_α)` for the positive root with index `idx`.
    pub fn bounds(&self, idx: usize) -> (i64, i64) {
        (self.lower[idx], self.upper[idx])
    }

    /// Some bound pair is inverted, so the polytope is empty.
    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(l, h)| l > h)
    }

    /// `P + λ` for an integral coweight `λ`.
    pub fn translate(&self, lambda: &[i64]) -> Result<Self> {
        self.rs.check_len(lambda.len())?;
        let shift: Vec<i64> = self
            .rs
            .positive_roots()
            .iter()
            .map(|a| self.rs.pairing_int(lambda, a))
            .collect();
        Ok(AlcovedPolytope {
            rs: self.rs,
            lower: self.lower.iter().zip(&shift).map(|(a, b)| a + b).collect(),
            upper: self.upper.iter().zip(&shift).map(|(a, b)| a + b).collect(),
        })
    }

    /// Whether the closed alcove with central point `z` lies in `P`.
    pub fn contains_alcove(&self, z: &CentralPoint) -> bool {
        let h = self.rs.h_star();
        self.rs.positive_roots().iter().enumerate().all(|(idx, a)| {
            let m = Integer::div_floor(&self.rs.pairing_int(z.scaled(), a), &h);
            self.lower[idx] <= m && m < self.upper[idx]
        })
    }

    /// Whether an integral coweight lies in `P`.
    pub fn contains_lattice_point(&self, lambda: &[i64]) -> bool {
        self.rs.positive_roots().iter().enumerate().all(|(idx, a)| {
            let t = self.rs.pairing_int(lambda, a);
            self.lower[idx] <= t && t <= self.upper[idx]
        })
    }

    pub fn to_spec(&self) -> PolytopeSpec {
        PolytopeSpec {
            type_label: self.rs.label().to_string(),
            rank: self.rs.rank(),
            constraints: self
                .rs
                .positive_roots()
                .iter()
                .enumerate()
                .map(|(idx, root)| Constraint {
                    root: root.clone(),
                    min: self.lower[idx],
                    max: self.upper[idx],
                })
                .collect(),
        }
    }
}

/// Integer vectors `y` with `s·k_α ≤ (y, α) ≤ s·K_α` for all `α`, where
/// `y_i` runs over multiples of `step_i`. With `avoid_walls`, pairings
/// divisible by `s` are excluded.
pub(crate) struct Enumerator<'p> {
    roots: &'p [Vec<i64>],
    rank: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
    step: Vec<i64>,
    scale: i64,
    avoid_walls: bool,
    bound_lo: Vec<i64>,
    bound_hi: Vec<i64>,
    // rest_min[α][j] = Σ_{i>j} c_i·lo_i, likewise rest_max
    rest_min: Vec<Vec<i64>>,
    rest_max: Vec<Vec<i64>>,
    // roots whose support ends at coordinate j
    closing: Vec<Vec<usize>>,
    empty: bool,
}

enum Sink<'s> {
    Count(u64),
    Visit(&'s mut dyn FnMut(&[i64]) -> ControlFlow<()>),
}

impl<'p> Enumerator<'p> {
    pub(crate) fn new(
        p: &'p AlcovedPolytope<'_>,
        scale: i64,
        step: Vec<i64>,
        avoid_walls: bool,
        budget: u128,
    ) -> Result<Self> {
        let rs = p.rs;
        let n = rs.rank();
        let roots = rs.positive_roots();
        let bound_lo: Vec<i64> = p.lower.iter().map(|k| k * scale).collect();
        let bound_hi: Vec<i64> = p.upper.iter().map(|k| k * scale).collect();
        let mut lo = vec![0; n];
        let mut hi = vec![0; n];
        let mut empty = p.is_empty();
        let mut product: u128 = 1;
        for i in 0..n {
            lo[i] = Integer::div_ceil(&bound_lo[i], &step[i]) * step[i];
            hi[i] = Integer::div_floor(&bound_hi[i], &step[i]) * step[i];
            if lo[i] > hi[i] {
                empty = true;
            } else {
                product = product.saturating_mul(((hi[i] - lo[i]) / step[i] + 1) as u128);
            }
        }
        if !empty && product > budget {
            return Err(Error::Budget {
                what: "lattice enumeration box",
                needed: product,
                budget,
            });
        }
        let mut rest_min = vec![vec![0; n]; roots.len()];
        let mut rest_max = vec![vec![0; n]; roots.len()];
        let mut closing = vec![vec![]; n];
        for (a, root) in roots.iter().enumerate() {
            for j in (0..n.saturating_sub(1)).rev() {
                rest_min[a][j] = rest_min[a][j + 1] + root[j + 1] * lo[j + 1];
                rest_max[a][j] = rest_max[a][j + 1] + root[j + 1] * hi[j + 1];
            }
            let last = (0..n).rev().find(|&i| root[i] != 0).expect("roots are nonzero");
            closing[last].push(a);
        }
        Ok(Enumerator {
            roots,
            rank: n,
            lo,
            hi,
            step,
            scale,
            avoid_walls,
            bound_lo,
            bound_hi,
            rest_min,
            rest_max,
            closing,
            empty,
        })
    }

    /// Feasible range of `y_j` given the partial pairings.
    fn range(&self, j: usize, partial: &[i64]) -> Option<(i64, i64)> {
        let (mut l, mut u) = (self.lo[j], self.hi[j]);
        for (a, root) in self.roots.iter().enumerate() {
            let c = root[j];
            if c == 0 {
                continue;
            }
            let min = self.bound_lo[a] - partial[a] - self.rest_max[a][j];
            let max = self.bound_hi[a] - partial[a] - self.rest_min[a][j];
            l = l.max(Integer::div_ceil(&min, &c));
            u = u.min(Integer::div_floor(&max, &c));
        }
        let st = self.step[j];
        let l = Integer::div_ceil(&l, &st) * st;
        let u = Integer::div_floor(&u, &st) * st;
        (l <= u).then_some((l, u))
    }

    fn on_wall(&self, j: usize, v: i64, partial: &[i64]) -> bool {
        self.avoid_walls
            && self.closing[j]
                .iter()
                .any(|&a| (partial[a] + self.roots[a][j] * v) % self.scale == 0)
    }

    fn shift(&self, j: usize, v: i64, partial: &mut [i64], sign: i64) {
        for (a, root) in self.roots.iter().enumerate() {
            partial[a] += sign * root[j] * v;
        }
    }

    fn walk(&self, j: usize, y: &mut [i64], partial: &mut [i64], sink: &mut Sink<'_>) -> ControlFlow<()> {
        let Some((l, u)) = self.range(j, partial) else {
            return ControlFlow::Continue(());
        };
        let st = self.step[j];
        let last = j + 1 == self.rank;
        if last && !self.avoid_walls {
            if let Sink::Count(c) = sink {
                *c += ((u - l) / st + 1) as u64;
                return ControlFlow::Continue(());
            }
        }
        let mut v = l;
        while v <= u {
            if !self.on_wall(j, v, partial) {
                y[j] = v;
                if last {
                    match sink {
                        Sink::Count(c) => *c += 1,
                        Sink::Visit(f) => f(y)?,
                    }
                } else {
                    self.shift(j, v, partial, 1);
                    let flow = self.walk(j + 1, y, partial, sink);
                    self.shift(j, v, partial, -1);
                    flow?;
                }
            }
            v += st;
        }
        ControlFlow::Continue(())
    }

    fn outer_values(&self) -> Vec<i64> {
        if self.empty || self.rank == 0 {
            return vec![];
        }
        let partial = vec![0; self.roots.len()];
        match self.range(0, &partial) {
            None => vec![],
            Some((l, u)) => {
                let st = self.step[0];
                (0..=(u - l) / st)
                    .map(|k| l + k * st)
                    .filter(|&v| !self.on_wall(0, v, &partial))
                    .collect()
            }
        }
    }

    fn start(&self, v: i64) -> (Vec<i64>, Vec<i64>) {
        let mut y = vec![0; self.rank];
        y[0] = v;
        let mut partial = vec![0; self.roots.len()];
        self.shift(0, v, &mut partial, 1);
        (y, partial)
    }

    pub(crate) fn count(&self) -> u64 {
        self.outer_values()
            .into_par_iter()
            .map(|v| {
                if self.rank == 1 {
                    return 1;
                }
                let (mut y, mut partial) = self.start(v);
                let mut sink = Sink::Count(0);
                let _ = self.walk(1, &mut y, &mut partial, &mut sink);
                match sink {
                    Sink::Count(c) => c,
                    Sink::Visit(_) => unreachable!(),
                }
            })
            .sum()
    }

    pub(crate) fn collect(&self) -> Vec<Vec<i64>> {
        self.outer_values()
            .into_par_iter()
            .map(|v| {
                let (mut y, mut partial) = self.start(v);
                if self.rank == 1 {
                    return vec![y];
                }
                let mut out = vec![];
                let mut push = |p: &[i64]| {
                    out.push(p.to_vec());
                    ControlFlow::Continue(())
                };
                let _ = self.walk(1, &mut y, &mut partial, &mut Sink::Visit(&mut push));
                out
            })
            .flatten()
            .collect()
    }

    pub(crate) fn first(&self) -> Option<Vec<i64>> {
        for v in self.outer_values() {
            let (mut y, mut partial) = self.start(v);
            if self.rank == 1 {
                return Some(y);
            }
            let mut found = None;
            let mut stop = |p: &[i64]| {
                found = Some(p.to_vec());
                ControlFlow::Break(())
            };
            let _ = self.walk(1, &mut y, &mut partial, &mut Sink::Visit(&mut stop));
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn alcove_enumerator<'p>(p: &'p AlcovedPolytope<'_>, budget: u128) -> Result<Enumerator<'p>> {
    let n = p.rs.rank();
    Enumerator::new(p, p.rs.h_star(), vec![1; n], true, budget)
}

/// Number of alcoves in `P`, counted as central points `y/h` inside `P`.
pub fn volume(p: &AlcovedPolytope<'_>) -> Result<u64> {
    volume_with_budget(p, DEFAULT_POINT_BUDGET)
}

pub fn volume_with_budget(p: &AlcovedPolytope<'_>, budget: u128) -> Result<u64> {
    Ok(alcove_enumerator(p, budget)?.count())
}

/// Central points of all alcoves in `P`, in lexicographic order.
pub fn alcoves(p: &AlcovedPolytope<'_>, budget: u128) -> Result<Vec<CentralPoint>> {
    Ok(alcove_enumerator(p, budget)?
        .collect()
        .into_iter()
        .map(CentralPoint::new_unchecked)
        .collect())
}

/// Alcove count by breadth-first search over facet-adjacent alcoves,
/// seeded at one alcove of `P`.
pub fn volume_bfs(p: &AlcovedPolytope<'_>, budget: u128) -> Result<u64> {
    let Some(seed) = alcove_enumerator(p, budget)?.first() else {
        return Ok(0);
    };
    let seed = CentralPoint::new_unchecked(seed);
    let mut seen = HashSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed]);
    while let Some(z) = queue.pop_front() {
        for nb in geometry::neighbors(p.rs, &z) {
            if p.contains_alcove(&nb) && !seen.contains(&nb) {
                if seen.len() as u128 >= budget {
                    return Err(Error::Budget {
                        what: "alcove graph search",
                        needed: seen.len() as u128 + 1,
                        budget,
                    });
                }
                seen.insert(nb.clone());
                queue.push_back(nb);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// `I(P)`, the number of integral coweights in `P`.
pub fn lattice_point_count(p: &AlcovedPolytope<'_>) -> Result<u64> {
    lattice_point_count_with_budget(p, DEFAULT_POINT_BUDGET)
}

pub fn lattice_point_count_with_budget(p: &AlcovedPolytope<'_>, budget: u128) -> Result<u64> {
    let n = p.rs.rank();
    Ok(Enumerator::new(p, 1, vec![1; n], false, budget)?.count())
}

/// Integral coweights in `P`.
pub fn lattice_points(p: &AlcovedPolytope<'_>, budget: u128) -> Result<Vec<Vec<i64>>> {
    let n = p.rs.rank();
    Ok(Enumerator::new(p, 1, vec![1; n], false, budget)?.collect())
}

/// `P_(w)`: bounds `k_α + inv(w⁻¹, α)` and `K_α + inv(w⁻¹, α) - 1`.
pub fn translated_polytope<'a>(p: &AlcovedPolytope<'a>, w: &WeylElement) -> AlcovedPolytope<'a> {
    let winv = w.inverse();
    let d: Vec<i64> = p
        .rs
        .positive_roots()
        .iter()
        .map(|a| i64::from(winv.inv_unchecked(a)))
        .collect();
    AlcovedPolytope {
        rs: p.rs,
        lower: p.lower.iter().zip(&d).map(|(k, d)| k + d).collect(),
        upper: p.upper.iter().zip(&d).map(|(k, d)| k + d - 1).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeIdentityReport {
    pub volume: u64,
    pub alcove_count_bfs: u64,
    pub per_coset: Vec<u64>,
    pub lattice_sum: u64,
    pub identity_holds: bool,
}

/// Compares `Vol(P)` with `Σ I(P_(w))` over the given representatives
/// of `W/C`; the BFS alcove count is reported alongside.
pub fn volume_identity_check(
    p: &AlcovedPolytope<'_>,
    representatives: &[WeylElement],
    budget: u128,
) -> Result<VolumeIdentityReport> {
    let volume = volume_with_budget(p, budget)?;
    let alcove_count_bfs = volume_bfs(p, budget)?;
    let per_coset = representatives
        .iter()
        .map(|w| lattice_point_count_with_budget(&translated_polytope(p, w), budget))
        .collect::<Result<Vec<u64>>>()?;
    let lattice_sum = per_coset.iter().sum();
    Ok(VolumeIdentityReport {
        volume,
        alcove_count_bfs,
        per_coset,
        lattice_sum,
        identity_holds: volume == lattice_sum && volume == alcove_count_bfs,
    })
}

/// `Δ_k`: `0 ≤ (λ, α_i) ≤ 1` and `k - 1 ≤ (λ, θ) ≤ k`, for `1 ≤ k ≤ h - 1`.
pub fn hypersimplex(rs: &RootSystem, k: i64) -> Result<AlcovedPolytope<'_>> {
    if k < 1 || k > rs.h_star() - 1 {
        return Err(Error::input(format!(
            "hypersimplex index {k} outside 1..={}",
            rs.h_star() - 1
        )));
    }
    let n = rs.rank();
    AlcovedPolytope::from_simple_bounds(rs, &vec![0; n], &vec![1; n], &[(rs.theta_index(), k - 1, k)])
}

/// `ℋ(b; k, K)`: `0 ≤ (λ, α_i) ≤ b_i` and `k ≤ (λ, θ) ≤ K`.
pub fn thick_hypersimplex<'a>(rs: &'a RootSystem, b: &[i64], k: i64, big_k: i64) -> Result<AlcovedPolytope<'a>> {
    rs.check_len(b.len())?;
    if b.iter().any(|&x| x < 0) {
        return Err(Error::input("thick hypersimplex widths must be nonnegative"));
    }
    AlcovedPolytope::from_simple_bounds(rs, &vec![0; rs.rank()], b, &[(rs.theta_index(), k, big_k)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThickTerm {
    pub l: i64,
    pub hypersimplex_volume: u64,
    pub inner_lattice_points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThickIdentityReport {
    pub volume: u64,
    pub rhs: u64,
    pub terms: Vec<ThickTerm>,
    pub identity_holds: bool,
}

/// `Vol ℋ(b; k, K) = Σ_l Vol(Δ_l) · I(ℋ(b - 1; k - l + 1, K - l))`.
pub fn thick_identity_check(
    rs: &RootSystem,
    b: &[i64],
    k: i64,
    big_k: i64,
    budget: u128,
) -> Result<ThickIdentityReport> {
    if b.iter().any(|&x| x < 1) {
        return Err(Error::input("thick hypersimplex widths must be at least 1"));
    }
    let volume = volume_with_budget(&thick_hypersimplex(rs, b, k, big_k)?, budget)?;
    let inner_b: Vec<i64> = b.iter().map(|x| x - 1).collect();
    let mut terms = vec![];
    for l in 1..rs.h_star() {
        let hypersimplex_volume = volume_with_budget(&hypersimplex(rs, l)?, budget)?;
        let inner = thick_hypersimplex(rs, &inner_b, k - l + 1, big_k - l)?;
        let inner_lattice_points = lattice_point_count_with_budget(&inner, budget)?;
        terms.push(ThickTerm {
            l,
            hypersimplex_volume,
            inner_lattice_points,
        });
    }
    let rhs = terms
        .iter()
        .map(|t| t.hypersimplex_volume * t.inner_lattice_points)
        .sum();
    Ok(ThickIdentityReport {
        volume,
        rhs,
        terms,
        identity_holds: volume == rhs,
    })
}

/// A random polytope: simple-root bounds drawn from `[-spread, spread]`
/// and a random `θ` window inside the derived `θ` range.
pub fn random_polytope<'a, R: Rng + ?Sized>(rs: &'a RootSystem, spread: i64, rng: &mut R) -> AlcovedPolytope<'a> {
    let n = rs.rank();
    let mut lo = vec![0; n];
    let mut hi = vec![0; n];
    for i in 0..n {
        let a = rng.gen_range(-spread..=spread);
        let b = rng.gen_range(-spread..=spread);
        lo[i] = a.min(b);
        hi[i] = a.max(b);
    }
    let t_lo: i64 = rs.theta().iter().zip(&lo).map(|(c, k)| c * k).sum();
    let t_hi: i64 = rs.theta().iter().zip(&hi).map(|(c, k)| c * k).sum();
    let a = rng.gen_range(t_lo..=t_hi);
    let b = rng.gen_range(t_lo..=t_hi);
    AlcovedPolytope::from_simple_bounds(rs, &lo, &hi, &[(rs.theta_index(), a.min(b), a.max(b))])
        .expect("lengths match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;
    use crate::weyl::WeylGroup;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rs(l: TypeLabel, n: usize) -> RootSystem {
        RootSystem::build(l, n).unwrap()
    }

    /// Scans the full simple-root box without pruning.
    fn naive_count(p: &AlcovedPolytope<'_>, scale: i64, walls: bool) -> u64 {
        let r = p.root_system();
        let n = r.rank();
        let lo: Vec<i64> = (0..n).map(|i| p.lower()[i] * scale).collect();
        let hi: Vec<i64> = (0..n).map(|i| p.upper()[i] * scale).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return 0;
        }
        let mut y = lo.clone();
        let mut count = 0;
        loop {
            let ok = r.positive_roots().iter().enumerate().all(|(idx, a)| {
                let t = r.pairing_int(&y, a);
                t >= p.lower()[idx] * scale
                    && t <= p.upper()[idx] * scale
                    && !(walls && t % scale == 0)
            });
            count += u64::from(ok);
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                if y[i] < hi[i] {
                    y[i] += 1;
                    break;
                }
                y[i] = lo[i];
                i += 1;
            }
        }
    }

    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    #[test]
    fn parallelepiped_and_h_volumes() {
        for (l, n) in [
            (TypeLabel::A, 1),
            (TypeLabel::A, 2),
            (TypeLabel::A, 3),
            (TypeLabel::B, 2),
            (TypeLabel::C, 2),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::G, 2),
        ] {
            let r = rs(l, n);
            let pi = AlcovedPolytope::parallelepiped(&r);
            let marks: u64 = r.marks().iter().map(|&a| a as u64).product();
            assert_eq!(volume(&pi).unwrap(), factorial(n) * marks, "{}", r.name());
            assert_eq!(volume_bfs(&pi, DEFAULT_POINT_BUDGET).unwrap(), factorial(n) * marks);
            assert_eq!(lattice_point_count(&pi).unwrap(), 1 << n);
            let h = AlcovedPolytope::around_origin(&r);
            let order = WeylGroup::enumerate(&r).unwrap().len() as u64;
            assert_eq!(volume(&h).unwrap(), order, "{}", r.name());
            assert_eq!(volume_bfs(&h, DEFAULT_POINT_BUDGET).unwrap(), order);
        }
        let a2 = rs(TypeLabel::A, 2);
        assert_eq!(volume(&AlcovedPolytope::parallelepiped(&a2)).unwrap(), 2);
        let c2 = rs(TypeLabel::C, 2);
        assert_eq!(volume(&AlcovedPolytope::parallelepiped(&c2)).unwrap(), 4);
        assert_eq!(volume(&AlcovedPolytope::around_origin(&c2)).unwrap(), 8);
    }

    #[test]
    fn derived_bounds() {
        let c3 = rs(TypeLabel::C, 3);
        let pi = AlcovedPolytope::parallelepiped(&c3);
        for (idx, root) in c3.positive_roots().iter().enumerate() {
            assert_eq!(pi.bounds(idx), (0, root.iter().sum()));
        }
    }

    #[test]
    fn hypersimplices() {
        let a3 = rs(TypeLabel::A, 3);
        let v: Vec<u64> = (1..=3).map(|k| volume(&hypersimplex(&a3, k).unwrap()).unwrap()).collect();
        assert_eq!(v, vec![1, 4, 1]);
        let c2 = rs(TypeLabel::C, 2);
        let v: Vec<u64> = (1..=3).map(|k| volume(&hypersimplex(&c2, k).unwrap()).unwrap()).collect();
        assert_eq!(v, vec![1, 2, 1]);
        for r in [rs(TypeLabel::B, 3), rs(TypeLabel::G, 2), rs(TypeLabel::D, 4)] {
            let h = r.h_star();
            assert_eq!(volume(&hypersimplex(&r, 1).unwrap()).unwrap(), 1);
            assert_eq!(volume(&hypersimplex(&r, h - 1).unwrap()).unwrap(), 1);
            let total: u64 = (1..h).map(|k| volume(&hypersimplex(&r, k).unwrap()).unwrap()).sum();
            assert_eq!(total, volume(&AlcovedPolytope::parallelepiped(&r)).unwrap());
            assert!(hypersimplex(&r, 0).is_err());
            assert!(hypersimplex(&r, h).is_err());
        }
    }

    #[test]
    fn fundamental_alcove_points() {
        let c2 = rs(TypeLabel::C, 2);
        let a = AlcovedPolytope::fundamental_alcove(&c2);
        assert_eq!(volume(&a).unwrap(), 1);
        // vertices 0 and the minuscule ω_2
        assert_eq!(lattice_points(&a, DEFAULT_POINT_BUDGET).unwrap(), vec![vec![0, 0], vec![0, 1]]);
        let point = AlcovedPolytope::from_simple_bounds(&c2, &[0, 0], &[0, 0], &[]).unwrap();
        assert_eq!(lattice_point_count(&point).unwrap(), 1);
        assert_eq!(volume(&point).unwrap(), 0);
    }

    #[test]
    fn empty_polytopes() {
        let a2 = rs(TypeLabel::A, 2);
        let spec = PolytopeSpec {
            type_label: "A".into(),
            rank: 2,
            constraints: vec![
                Constraint { root: vec![1, 0], min: 2, max: 2 },
                Constraint { root: vec![0, 1], min: 0, max: 0 },
                Constraint { root: vec![1, 1], min: 0, max: 1 },
            ],
        };
        let p = make_polytope(&a2, &spec).unwrap();
        assert!(p.is_empty());
        assert_eq!(volume(&p).unwrap(), 0);
        assert_eq!(volume_bfs(&p, DEFAULT_POINT_BUDGET).unwrap(), 0);
        assert_eq!(lattice_point_count(&p).unwrap(), 0);
    }

    #[test]
    fn spec_errors() {
        let a2 = rs(TypeLabel::A, 2);
        let mk = |constraints| PolytopeSpec { type_label: "A".into(), rank: 2, constraints };
        let unbounded = mk(vec![Constraint { root: vec![1, 0], min: 0, max: 1 }]);
        assert!(make_polytope(&a2, &unbounded).is_err());
        let unknown = mk(vec![Constraint { root: vec![2, 1], min: 0, max: 1 }]);
        assert!(make_polytope(&a2, &unknown).is_err());
        let inverted = mk(vec![Constraint { root: vec![1, 0], min: 1, max: 0 }]);
        assert!(make_polytope(&a2, &inverted).is_err());
        let wrong = PolytopeSpec { type_label: "C".into(), rank: 2, constraints: vec![] };
        assert!(make_polytope(&a2, &wrong).is_err());
        let json = r#"{"type":"A","rank":2,"constraints":[
            {"root":[1,0],"min":0,"max":1},{"root":[0,1],"min":0,"max":1},
            {"root":[1,1],"min":1,"max":5}]}"#;
        let spec = PolytopeSpec::from_json(json).unwrap();
        let r = spec.root_system().unwrap();
        let p = make_polytope(&r, &spec).unwrap();
        assert_eq!(p.bounds(2), (1, 2));
        assert_eq!(volume(&p).unwrap(), 1);
        assert!(PolytopeSpec::from_json("{").is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let a2 = rs(TypeLabel::A, 2);
        let big = AlcovedPolytope::from_simple_bounds(&a2, &[-100, -100], &[100, 100], &[]).unwrap();
        assert!(volume_with_budget(&big, 1000).unwrap_err().is_budget());
    }

    #[test]
    fn translated_hypersimplex_is_delta_or_empty() {
        for r in [rs(TypeLabel::A, 3), rs(TypeLabel::C, 3)] {
            let w = WeylGroup::enumerate(&r).unwrap();
            let a = r.marks_with_zero();
            for k in 1..r.h_star() {
                let dk = hypersimplex(&r, k).unwrap();
                for x in w.elements() {
                    let d = x.inverse().descents(&r);
                    let cdes: i64 = d.iter().zip(&a).map(|(&d, a)| i64::from(d) * a).sum();
                    let pts = lattice_points(&translated_polytope(&dk, x), DEFAULT_POINT_BUDGET).unwrap();
                    if cdes == k {
                        let delta: Vec<i64> = d[1..].iter().map(|&v| i64::from(v)).collect();
                        assert_eq!(pts, vec![delta]);
                    } else {
                        assert!(pts.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn thick_identity() {
        for r in [rs(TypeLabel::A, 2), rs(TypeLabel::C, 2), rs(TypeLabel::A, 1)] {
            let n = r.rank();
            let ones = vec![1; n];
            let top = r.h_star() - 1;
            let rep = thick_identity_check(&r, &ones, 0, top, DEFAULT_POINT_BUDGET).unwrap();
            assert!(rep.identity_holds);
            assert_eq!(rep.volume, volume(&AlcovedPolytope::parallelepiped(&r)).unwrap());
            assert!(rep.terms.iter().all(|t| t.inner_lattice_points == 1));
            let empty = thick_identity_check(&r, &ones, 2, 1, DEFAULT_POINT_BUDGET).unwrap();
            assert_eq!((empty.volume, empty.rhs), (0, 0));
        }
        // the index range l-K+1..l-k fails here: it gives 1 instead of 2
        let a1 = rs(TypeLabel::A, 1);
        let rep = thick_identity_check(&a1, &[3], 1, 3, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(rep.volume, 2);
        assert!(rep.identity_holds);
        let printed: u64 = (1..a1.h_star())
            .map(|l| {
                let inner = thick_hypersimplex(&a1, &[2], l - 3 + 1, l - 1).unwrap();
                volume(&hypersimplex(&a1, l).unwrap()).unwrap() * lattice_point_count(&inner).unwrap()
            })
            .sum();
        assert_eq!(printed, 1);
        assert!(thick_identity_check(&a1, &[0], 0, 1, DEFAULT_POINT_BUDGET).is_err());
    }

    #[test]
    fn random_polytopes_match_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in [rs(TypeLabel::A, 2), rs(TypeLabel::C, 2), rs(TypeLabel::G, 2), rs(TypeLabel::A, 3)] {
            let h = r.h_star();
            for _ in 0..10 {
                let p = random_polytope(&r, 2, &mut rng);
                let v = volume(&p).unwrap();
                assert_eq!(v, naive_count(&p, h, true));
                assert_eq!(v, volume_bfs(&p, DEFAULT_POINT_BUDGET).unwrap());
                assert_eq!(lattice_point_count(&p).unwrap(), naive_count(&p, 1, false));
                assert_eq!(alcoves(&p, DEFAULT_POINT_BUDGET).unwrap().len() as u64, v);
                let lam: Vec<i64> = (0..r.rank()).map(|_| rng.gen_range(-3..=3)).collect();
                let moved = p.translate(&lam).unwrap();
                assert_eq!(volume(&moved).unwrap(), v);
                assert_eq!(lattice_point_count(&moved).unwrap(), lattice_point_count(&p).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn every_enumerated_alcove_is_contained(
            lo in proptest::collection::vec(-2i64..=0, 3),
            width in proptest::collection::vec(0i64..=2, 3),
        ) {
            let r = rs(TypeLabel::B, 3);
            let hi: Vec<i64> = lo.iter().zip(&width).map(|(a, b)| a + b).collect();
            let p = AlcovedPolytope::from_simple_bounds(&r, &lo, &hi, &[]).unwrap();
            let all = alcoves(&p, DEFAULT_POINT_BUDGET).unwrap();
            prop_assert!(all.iter().all(|z| p.contains_alcove(z)));
            prop_assert_eq!(all.len() as u64, naive_count(&p, r.h_star(), true));
        }
    }
}
