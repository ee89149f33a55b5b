//! Vertex lattice `N`, the midpoint rule `u(a,b)`, `v(a,b)`, the quadratic
//! binomial rewriting system of an alcoved polytope and the triangulation
//! it induces. Types `A_n`, `C_n` and `D_4` only.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry;
use crate::matrix::{self, Matrix};
use crate::polytope::{self, AlcovedPolytope, Enumerator};
use crate::rootsys::{RootSystem, TypeLabel};
use crate::Rational;

/// Guard on rewriting steps in [`GroebnerBasis::normal_form`].
pub const REWRITE_STEP_LIMIT: usize = 1_000_000;

/// Leading pair and its replacement, as indices into the vertex list.
type Rule = ((usize, usize), (usize, usize));

/// Point of `N` in the basis `c_i = ω_i / a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticeVertex {
    n: Vec<i64>,
}

impl LatticeVertex {
    pub fn new(n: Vec<i64>) -> Self {
        LatticeVertex { n }
    }

    pub fn coords(&self) -> &[i64] {
        &self.n
    }

    pub fn origin(rank: usize) -> Self {
        LatticeVertex { n: vec![0; rank] }
    }

    /// `c_i` for `i` in `1..=rank`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut n = vec![0; rank];
        n[i - 1] = 1;
        LatticeVertex { n }
    }

    /// ω-coordinates `n_i / a_i`.
    pub fn coweight(&self, rs: &RootSystem) -> Vec<Rational> {
        self.n.iter().zip(rs.marks()).map(|(&x, &a)| Rational::new(x, a)).collect()
    }

    /// Inverse of [`coweight`](Self::coweight); `None` off the lattice.
    pub fn from_coweight(rs: &RootSystem, lambda: &[Rational]) -> Option<Self> {
        let n: Option<Vec<i64>> = lambda
            .iter()
            .zip(rs.marks())
            .map(|(x, &a)| {
                let t = x * a;
                t.is_integer().then(|| t.to_integer())
            })
            .collect();
        n.map(|n| LatticeVertex { n })
    }
}

/// `x_a x_b - x_u x_v` with `x_a x_b` marked as leading.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Binomial {
    pub lead: (LatticeVertex, LatticeVertex),
    pub trail: (LatticeVertex, LatticeVertex),
}

/// Fails unless the type is `A_n`, `C_n` or `D_4`.
pub fn check_supported(rs: &RootSystem) -> Result<()> {
    match (rs.label(), rs.rank()) {
        (TypeLabel::A, _) | (TypeLabel::C, _) | (TypeLabel::D, 4) => Ok(()),
        _ => Err(Error::UnsupportedType(format!(
            "{} (the vertex set is a lattice only for A_n, C_n and D_4)",
            rs.name()
        ))),
    }
}

fn ordered(a: LatticeVertex, b: LatticeVertex) -> (LatticeVertex, LatticeVertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The two closest vertices on the edge through `(a+b)/2`, or the
/// midpoint twice when it is itself a vertex. The pair is sorted.
pub fn midpoint_pair(
    rs: &RootSystem,
    a: &LatticeVertex,
    b: &LatticeVertex,
) -> Result<(LatticeVertex, LatticeVertex)> {
    check_supported(rs)?;
    rs.check_len(a.n.len())?;
    rs.check_len(b.n.len())?;
    if a == b {
        return Err(Error::input("midpoint_pair needs two distinct vertices"));
    }
    let sum: Vec<i64> = a.n.iter().zip(&b.n).map(|(x, y)| x + y).collect();
    if sum.iter().all(|x| x.is_even()) {
        let m = LatticeVertex::new(sum.iter().map(|x| x / 2).collect());
        return Ok((m.clone(), m));
    }
    let mid: Vec<Rational> = sum
        .iter()
        .zip(rs.marks())
        .map(|(&x, &m)| Rational::new(x, 2 * m))
        .collect();
    let (sigma, img) = geometry::reduce_to_fundamental(rs, &mid)?;
    let t: Vec<Rational> = img.iter().zip(rs.marks()).map(|(x, &m)| x * m).collect();
    let half = Rational::new(1, 2);
    let zero = Rational::from_integer(0);
    let halves: Vec<usize> = (0..t.len()).filter(|&i| t[i] == half).collect();
    if t.iter().any(|x| *x != half && *x != zero) || halves.is_empty() || halves.len() > 2 {
        return Err(Error::defect(format!(
            "reduced midpoint has c-coordinates {t:?}, expected (c_i + c_j)/2 or c_i/2"
        )));
    }
    let r = rs.rank();
    let ends: Vec<LatticeVertex> = match halves.as_slice() {
        [i, j] => vec![LatticeVertex::basis(r, i + 1), LatticeVertex::basis(r, j + 1)],
        [i] => vec![LatticeVertex::basis(r, i + 1), LatticeVertex::origin(r)],
        _ => unreachable!(),
    };
    let inv = sigma.inverse();
    let back: Vec<LatticeVertex> = ends
        .iter()
        .map(|v| {
            LatticeVertex::from_coweight(rs, &inv.apply(&v.coweight(rs)))
                .ok_or_else(|| Error::defect("pulled-back edge end is not in N"))
        })
        .collect::<Result<_>>()?;
    let (u, v) = (back[0].clone(), back[1].clone());
    if u.n.iter().zip(&v.n).zip(&sum).any(|((x, y), s)| x + y != *s) {
        return Err(Error::defect("u + v differs from a + b"));
    }
    Ok(ordered(u, v))
}

/// All points of `N` in `P`.
pub fn polytope_vertices(p: &AlcovedPolytope<'_>, budget: u128) -> Result<Vec<LatticeVertex>> {
    let rs = p.root_system();
    check_supported(rs)?;
    let l = rs.marks().iter().fold(1i64, |acc, &a| acc.lcm(&a));
    let step: Vec<i64> = rs.marks().iter().map(|&a| l / a).collect();
    let pts = Enumerator::new(p, l, step.clone(), false, budget)?.collect();
    Ok(pts
        .into_iter()
        .map(|y| LatticeVertex::new(y.iter().zip(&step).map(|(v, s)| v / s).collect()))
        .collect())
}

/// The marked binomials of `P` with their rewriting data.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vertices: Vec<LatticeVertex>,
    index: HashMap<LatticeVertex, usize>,
    rules: HashMap<(usize, usize), (usize, usize)>,
    weights: Vec<i64>,
    rank: usize,
}

/// `h(v) = Σ |(v, α) - k|` over hyperplanes `H_{α,k}` meeting `P`, scaled
/// by `lcm(a_i)` to stay integral.
fn coherent_weight(p: &AlcovedPolytope<'_>, v: &LatticeVertex) -> i64 {
    let rs = p.root_system();
    let l = rs.marks().iter().fold(1i64, |acc, &a| acc.lcm(&a));
    let y: Vec<i64> = v.n.iter().zip(rs.marks()).map(|(x, a)| x * (l / a)).collect();
    rs.positive_roots()
        .iter()
        .enumerate()
        .map(|(idx, root)| {
            let t = rs.pairing_int(&y, root);
            let (lo, hi) = p.bounds(idx);
            (lo..=hi).map(|k| (t - k * l).abs()).sum::<i64>()
        })
        .sum()
}

pub fn groebner_basis(p: &AlcovedPolytope<'_>) -> Result<GroebnerBasis> {
    groebner_basis_with_budget(p, polytope::DEFAULT_POINT_BUDGET)
}

pub fn groebner_basis_with_budget(p: &AlcovedPolytope<'_>, budget: u128) -> Result<GroebnerBasis> {
    let rs = p.root_system();
    check_supported(rs)?;
    vertex_lattice_closed(rs)?;
    let vertices = polytope_vertices(p, budget)?;
    let index: HashMap<LatticeVertex, usize> =
        vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let pairs: Vec<(usize, usize)> = (0..vertices.len())
        .flat_map(|i| (i + 1..vertices.len()).map(move |j| (i, j)))
        .collect();
    let found: Vec<Rule> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<Rule>> {
            let (u, v) = midpoint_pair(rs, &vertices[i], &vertices[j])?;
            let lookup = |x: &LatticeVertex| {
                index.get(x).copied().ok_or_else(|| {
                    Error::defect(format!("midpoint partner {:?} of an alcoved polytope lies outside it", x.n))
                })
            };
            let (ui, vi) = (lookup(&u)?, lookup(&v)?);
            let trail = (ui.min(vi), ui.max(vi));
            Ok((trail != (i, j)).then_some(((i, j), trail)))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<_>>()?;
    let weights = vertices.iter().map(|v| coherent_weight(p, v)).collect();
    Ok(GroebnerBasis {
        vertices,
        index,
        rules: found.into_iter().collect(),
        weights,
        rank: rs.rank(),
    })
}

impl GroebnerBasis {
    pub fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &LatticeVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Binomials sorted by their leading pair.
    pub fn binomials(&self) -> Vec<Binomial> {
        let mut keys: Vec<_> = self.rules.iter().collect();
        keys.sort();
        keys.into_iter()
            .map(|(&(a, b), &(u, v))| Binomial {
                lead: (self.vertices[a].clone(), self.vertices[b].clone()),
                trail: (self.vertices[u].clone(), self.vertices[v].clone()),
            })
            .collect()
    }

    /// Scaled coherent weight of a monomial given by vertex indices.
    pub fn weight(&self, monomial: &[usize]) -> i64 {
        monomial.iter().map(|&i| self.weights[i]).sum()
    }

    fn rule(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        self.rules.get(&(a.min(b), a.max(b))).copied()
    }

    fn applicable(&self, m: &[usize]) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if m[i] != m[j] && self.rule(m[i], m[j]).is_some() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// No rewrite applies to the monomial.
    pub fn is_standard(&self, monomial: &[usize]) -> bool {
        self.applicable(monomial).is_empty()
    }

    /// Rewrites until no rule applies. With `rng`, the rule applied at each
    /// step is chosen at random; otherwise the first one is taken. Every
    /// step must strictly lower the coherent weight.
    pub fn normal_form<R: Rng + ?Sized>(&self, monomial: &[usize], mut rng: Option<&mut R>) -> Result<Vec<usize>> {
        if let Some(&bad) = monomial.iter().find(|&&i| i >= self.vertices.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                max: self.vertices.len().saturating_sub(1),
            });
        }
        let mut m = monomial.to_vec();
        let mut weight = self.weight(&m);
        for _ in 0..REWRITE_STEP_LIMIT {
            let options = self.applicable(&m);
            let pick = match (&mut rng, options.is_empty()) {
                (_, true) => {
                    m.sort_unstable();
                    return Ok(m);
                }
                (Some(r), false) => *options.choose(r).expect("nonempty"),
                (None, false) => options[0],
            };
            let (u, v) = self.rule(m[pick.0], m[pick.1]).expect("applicable");
            m[pick.0] = u;
            m[pick.1] = v;
            let next = self.weight(&m);
            if next >= weight {
                return Err(Error::defect(format!(
                    "rewrite did not lower the coherent weight ({weight} -> {next})"
                )));
            }
            weight = next;
        }
        Err(Error::defect("rewriting did not terminate"))
    }

    /// Normal form of a monomial given as vertices.
    pub fn normal_form_vertices(&self, monomial: &[LatticeVertex]) -> Result<Vec<LatticeVertex>> {
        let idx: Vec<usize> = monomial
            .iter()
            .map(|v| {
                self.vertex_index(v)
                    .ok_or_else(|| Error::input(format!("{:?} is not a vertex of the polytope", v.n)))
            })
            .collect::<Result<_>>()?;
        Ok(self
            .normal_form::<rand::rngs::ThreadRng>(&idx, None)?
            .into_iter()
            .map(|i| self.vertices[i].clone())
            .collect())
    }

    /// All pairwise-standard `(r+1)`-sets of vertices, as sorted index lists.
    pub fn standard_simplices(&self) -> Vec<Vec<usize>> {
        let nv = self.vertices.len();
        let adj: Vec<Vec<usize>> = (0..nv)
            .map(|i| (i + 1..nv).filter(|&j| self.rule(i, j).is_none()).collect())
            .collect();
        let adj_set: Vec<HashSet<usize>> = adj.iter().map(|v| v.iter().copied().collect()).collect();
        let size = self.rank + 1;
        (0..nv)
            .into_par_iter()
            .flat_map_iter(|start| {
                let mut out = vec![];
                let mut stack = vec![start];
                extend_cliques(&adj_set, &mut stack, adj[start].clone(), size, &mut out);
                out
            })
            .collect()
    }
}

fn extend_cliques(
    adj_set: &[HashSet<usize>],
    stack: &mut Vec<usize>,
    candidates: Vec<usize>,
    size: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == size {
        out.push(stack.clone());
        return;
    }
    for (k, &c) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[k + 1..]
            .iter()
            .copied()
            .filter(|x| adj_set[c].contains(x))
            .collect();
        if next.len() + stack.len() + 1 < size {
            continue;
        }
        stack.push(c);
        extend_cliques(adj_set, stack, next, size, out);
        stack.pop();
    }
}

/// The alcoved triangulation of `P` read off from the standard monomials.
/// Checks that the simplices are unimodular, sit in distinct alcoves of
/// `P`, and that there are `Vol(P)` of them.
pub fn triangulate(p: &AlcovedPolytope<'_>) -> Result<Vec<Vec<LatticeVertex>>> {
    let basis = groebner_basis(p)?;
    triangulate_with(p, &basis, polytope::DEFAULT_POINT_BUDGET)
}

pub fn triangulate_with(
    p: &AlcovedPolytope<'_>,
    basis: &GroebnerBasis,
    budget: u128,
) -> Result<Vec<Vec<LatticeVertex>>> {
    let rs = p.root_system();
    let r = rs.rank();
    let simplices = basis.standard_simplices();
    let mut seen_alcoves = HashSet::new();
    for s in &simplices {
        let v: Vec<&LatticeVertex> = s.iter().map(|&i| &basis.vertices[i]).collect();
        let edges = Matrix::from_fn(r, r, |i, j| Rational::from_integer(v[j + 1].n[i] - v[0].n[i]));
        let det = matrix::determinant(&edges);
        if num_traits::Signed::abs(&det) != Rational::from_integer(1) {
            return Err(Error::defect(format!("simplex {s:?} has determinant {det}")));
        }
        // the barycentre lies in the interior of exactly one alcove
        let bary: Vec<Rational> = (0..r)
            .map(|i| {
                v.iter().map(|x| Rational::new(x.n[i], rs.marks()[i])).sum::<Rational>()
                    / Rational::from_integer(r as i64 + 1)
            })
            .collect();
        let mut m = Vec::with_capacity(rs.num_positive_roots());
        for (idx, root) in rs.positive_roots().iter().enumerate() {
            let t = rs.pairing(&bary, root)?;
            let (lo, hi) = p.bounds(idx);
            if t.is_integer() || t < Rational::from_integer(lo) || t > Rational::from_integer(hi) {
                return Err(Error::defect(format!("simplex {s:?} is not an alcove of P")));
            }
            m.push(t.floor().to_integer());
        }
        if !seen_alcoves.insert(m) {
            return Err(Error::defect("two simplices share an alcove"));
        }
    }
    let volume = polytope::volume_with_budget(p, budget)?;
    if simplices.len() as u64 != volume {
        return Err(Error::defect(format!(
            "{} standard simplices but volume {volume}",
            simplices.len()
        )));
    }
    Ok(simplices
        .into_iter()
        .map(|s| s.into_iter().map(|i| basis.vertices[i].clone()).collect())
        .collect())
}

/// Whether every pair of the set has both midpoint partners in the set.
pub fn midpoint_closure_check(rs: &RootSystem, vertices: &[LatticeVertex]) -> Result<bool> {
    check_supported(rs)?;
    let set: HashSet<&LatticeVertex> = vertices.iter().collect();
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            if a == b {
                continue;
            }
            let (u, v) = midpoint_pair(rs, a, b)?;
            if !set.contains(&u) || !set.contains(&v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that the span of the `c_i` is carried into itself by the affine
/// reflections `s_{α,k}`, `k ∈ {-1, 0, 1}`, which generate the affine Weyl
/// group. Without this the span is not the vertex set and the midpoint
/// rule breaks. Holds in `A_n` and `C_n`; fails in `D_4`, where
/// `s_{α_2}(c_2)` has half-integral `n`-coordinates.
pub fn vertex_lattice_closed(rs: &RootSystem) -> Result<()> {
    check_supported(rs)?;
    let r = rs.rank();
    for i in 1..=r {
        let c = LatticeVertex::basis(r, i).coweight(rs);
        for idx in 0..rs.num_positive_roots() {
            for k in -1..=1 {
                let img = geometry::affine_reflection(rs, idx, k).apply(&c);
                if LatticeVertex::from_coweight(rs, &img).is_none() {
                    let n: Vec<Rational> = img.iter().zip(rs.marks()).map(|(x, &a)| x * a).collect();
                    return Err(Error::defect(format!(
                        "{}: reflecting c_{i} in H_({:?},{k}) gives n-coordinates [{}], outside the span of the c_i",
                        rs.name(),
                        rs.positive_roots()[idx],
                        n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                    )));
                }
            }
        }
    }
    Ok(())
}

/// [`vertex_lattice_closed`], then reduces random points of the span into
/// the closed fundamental alcove and checks they land on `0` or some `c_i`.
pub fn vertex_lattice_self_check<R: Rng + ?Sized>(rs: &RootSystem, samples: usize, rng: &mut R) -> Result<()> {
    vertex_lattice_closed(rs)?;
    let r = rs.rank();
    let allowed: HashSet<LatticeVertex> = std::iter::once(LatticeVertex::origin(r))
        .chain((1..=r).map(|i| LatticeVertex::basis(r, i)))
        .collect();
    for _ in 0..samples {
        let v = LatticeVertex::new((0..r).map(|_| rng.gen_range(-12..=12)).collect());
        let (_, img) = geometry::reduce_to_fundamental(rs, &v.coweight(rs))?;
        let back = LatticeVertex::from_coweight(rs, &img)
            .ok_or_else(|| Error::defect("reduction left the vertex lattice"))?;
        if !allowed.contains(&back) {
            return Err(Error::defect(format!(
                "{:?} reduces to {:?}, which is not a vertex of the fundamental alcove",
                v.n, back.n
            )));
        }
    }
    Ok(())
}
