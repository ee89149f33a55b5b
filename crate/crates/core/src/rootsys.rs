//! Static data of an irreducible crystallographic root system.
//!
//! Roots are integer vectors in the basis of simple roots; coweights are
//! rational vectors in the basis of fundamental coweights `ω_i`, so the
//! pairing `(λ, α)` is the plain dot product of the two coordinate vectors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{self, dot, Matrix};
use crate::{IntMatrix, RatMatrix, Rational};

/// Cartan-Killing type of an irreducible root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E" => Ok(TypeLabel::E),
            "F" => Ok(TypeLabel::F),
            "G" => Ok(TypeLabel::G),
            other => Err(Error::input(format!("unknown root system type '{other}'"))),
        }
    }
}

/// Immutable tables for one irreducible root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    /// `cartan[(i, j)] = (α_i, α_j^∨)`.
    cartan: IntMatrix,
    /// Gram matrix of the simple roots, scaled to be integral.
    gram: IntMatrix,
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    /// ω-coordinates of `α^∨` for each positive root, same indexing.
    coroots: Vec<Vec<i64>>,
    theta_index: usize,
    marks: Vec<i64>,
    h_star: i64,
    index_of_connection: i64,
    cartan_inverse: RatMatrix,
}

fn invalid(label: TypeLabel, rank: usize, reason: &str) -> Error {
    Error::InvalidType {
        label: label.to_string(),
        rank,
        reason: reason.to_string(),
    }
}

/// Integral Gram matrix `(α_i, α_j)` for the Bourbaki numbering.
fn gram_matrix(label: TypeLabel, n: usize) -> Result<IntMatrix> {
    let valid = match label {
        TypeLabel::A => n >= 1,
        TypeLabel::B | TypeLabel::C => n >= 2,
        TypeLabel::D => n >= 4,
        TypeLabel::E => (6..=8).contains(&n),
        TypeLabel::F => n == 4,
        TypeLabel::G => n == 2,
    };
    if !valid {
        return Err(invalid(label, n, "no irreducible root system of this type and rank"));
    }
    let mut g = Matrix::<i64>::zeros(n, n);
    let link = |g: &mut IntMatrix, i: usize, j: usize, v: i64| {
        g[(i - 1, j - 1)] = v;
        g[(j - 1, i - 1)] = v;
    };
    match label {
        TypeLabel::A | TypeLabel::D | TypeLabel::E => {
            for i in 0..n {
                g[(i, i)] = 2;
            }
            match label {
                TypeLabel::A => (1..n).for_each(|i| link(&mut g, i, i + 1, -1)),
                TypeLabel::D => {
                    (1..n - 1).for_each(|i| link(&mut g, i, i + 1, -1));
                    link(&mut g, n - 2, n, -1);
                }
                _ => {
                    link(&mut g, 1, 3, -1);
                    link(&mut g, 2, 4, -1);
                    (3..n).for_each(|i| link(&mut g, i, i + 1, -1));
                }
            }
        }
        TypeLabel::B => {
            // α_n = e_n short
            for i in 0..n - 1 {
                g[(i, i)] = 4;
            }
            g[(n - 1, n - 1)] = 2;
            (1..n).for_each(|i| link(&mut g, i, i + 1, -2));
        }
        TypeLabel::C => {
            // α_n = 2e_n long
            for i in 0..n - 1 {
                g[(i, i)] = 2;
            }
            g[(n - 1, n - 1)] = 4;
            (1..n - 1).for_each(|i| link(&mut g, i, i + 1, -1));
            link(&mut g, n - 1, n, -2);
        }
        TypeLabel::F => {
            g[(0, 0)] = 4;
            g[(1, 1)] = 4;
            g[(2, 2)] = 2;
            g[(3, 3)] = 2;
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -2);
            link(&mut g, 3, 4, -1);
        }
        TypeLabel::G => {
            g[(0, 0)] = 2;
            g[(1, 1)] = 6;
            link(&mut g, 1, 2, -3);
        }
    }
    Ok(g)
}

impl RootSystem {
    /// Builds the root system of the given type and rank.
    pub fn build(label: TypeLabel, rank: usize) -> Result<Self> {
        let gram = gram_matrix(label, rank)?;
        let n = rank;
        let cartan = Matrix::from_fn(n, n, |i, j| 2 * gram[(i, j)] / gram[(j, j)]);

        let lcm = (0..n).fold(1i64, |acc, i| acc.lcm(&gram[(i, i)]));
        let raw: Vec<i64> = (0..n).map(|i| lcm / gram[(i, i)]).collect();
        let g = raw.iter().fold(0i64, |acc, &d| acc.gcd(&d));
        let symmetrizer: Vec<i64> = raw.iter().map(|d| d / g).collect();

        let positive_roots = generate_positive_roots(&cartan);
        let root_index: HashMap<Vec<i64>, usize> = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        let coroots = positive_roots
            .iter()
            .map(|root| {
                let norm = form(&gram, root, root);
                (0..n)
                    .map(|i| {
                        let simple = unit(n, i);
                        let num = 2 * form(&gram, root, &simple);
                        debug_assert_eq!(num % norm, 0);
                        num / norm
                    })
                    .collect()
            })
            .collect();

        let theta_index = positive_roots.len() - 1;
        let marks = positive_roots[theta_index].clone();
        let h_star = 1 + marks.iter().sum::<i64>();

        let cartan_q = matrix::to_ratio(&cartan);
        let det = matrix::determinant(&cartan_q);
        if !det.is_integer() {
            return Err(Error::defect("Cartan determinant is not an integer"));
        }
        let index_of_connection = det.to_integer().abs();
        let cartan_inverse = matrix::inverse(&cartan_q)
            .ok_or_else(|| Error::defect("Cartan matrix is singular"))?;

        let rs = RootSystem {
            label,
            rank,
            cartan,
            gram,
            symmetrizer,
            positive_roots,
            root_index,
            coroots,
            theta_index,
            marks,
            h_star,
            index_of_connection,
            cartan_inverse,
        };
        rs.validate()?;
        Ok(rs)
    }

    /// Parses labels such as `"C3"` or `"e8"`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let (head, tail) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
        let label: TypeLabel = head.parse()?;
        let rank: usize = tail
            .parse()
            .map_err(|_| Error::input(format!("cannot parse rank in '{name}'")))?;
        RootSystem::build(label, rank)
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            for j in 0..n {
                let a = self.cartan[(i, j)];
                if (i == j && a != 2) || (i != j && a > 0) {
                    return Err(Error::defect(format!("bad Cartan entry ({i},{j}) = {a}")));
                }
                if self.symmetrizer[i] * a != self.symmetrizer[j] * self.cartan[(j, i)] {
                    return Err(Error::defect("symmetrizer does not symmetrize"));
                }
            }
        }
        if self.positive_roots.len() != expected_root_count(self.label, n) {
            return Err(Error::defect(format!(
                "generated {} positive roots for {}{}",
                self.positive_roots.len(),
                self.label,
                n
            )));
        }
        if self.positive_roots.iter().any(|r| r.iter().any(|&c| c < 0)) {
            return Err(Error::defect("positive root with a negative coordinate"));
        }
        let ones = 1 + self.marks.iter().filter(|&&a| a == 1).count() as i64;
        if ones != self.index_of_connection {
            return Err(Error::defect("index of connection differs from count of unit marks"));
        }
        let theta = self.theta();
        if self.pairing_int(self.theta_coroot(), theta) != 2 {
            return Err(Error::defect("(θ^∨, θ) != 2"));
        }
        Ok(())
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short name like `C3`.
    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Positive roots sorted by height, ties broken so that `α_1` comes first.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of a positive root, if `root` is one.
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if self.root_index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.root_index.contains_key(&neg)
    }

    /// Simple root `α_i` for `i` in `1..=rank`.
    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.positive_roots[i - 1]
    }

    pub fn theta(&self) -> &[i64] {
        &self.positive_roots[self.theta_index]
    }

    pub fn theta_index(&self) -> usize {
        self.theta_index
    }

    /// `a_1..a_r`, the coefficients of `θ` in the simple roots.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// `a_0..a_r` with `a_0 = 1`.
    pub fn marks_with_zero(&self) -> Vec<i64> {
        std::iter::once(1).chain(self.marks.iter().copied()).collect()
    }

    /// `1 + Σ a_i`.
    pub fn h_star(&self) -> i64 {
        self.h_star
    }

    /// `f = |det cartan|`.
    pub fn index_of_connection(&self) -> i64 {
        self.index_of_connection
    }

    /// ω-coordinates of the coroot of the positive root with index `idx`.
    pub fn coroot(&self, idx: usize) -> &[i64] {
        &self.coroots[idx]
    }

    pub fn theta_coroot(&self) -> &[i64] {
        &self.coroots[self.theta_index]
    }

    /// ω-coordinates of `θ^∨ = 2θ/(θ,θ)`.
    pub fn theta_covector(&self) -> Vec<Rational> {
        self.theta_coroot().iter().map(|&x| Rational::from_integer(x)).collect()
    }

    /// `ρ = ω_1 + ... + ω_r`.
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// `(α, β)` under the (scaled) invariant form, roots in α-coordinates.
    pub fn root_form(&self, a: &[i64], b: &[i64]) -> i64 {
        form(&self.gram, a, b)
    }

    /// `(λ, α)` for a rational coweight and an integer root.
    pub fn pairing(&self, coweight: &[Rational], root: &[i64]) -> Result<Rational> {
        self.check_len(coweight.len())?;
        self.check_len(root.len())?;
        Ok(coweight
            .iter()
            .zip(root)
            .fold(Rational::from_integer(0), |acc, (y, &c)| acc + y * c))
    }

    /// Integer pairing; the caller guarantees matching lengths.
    #[inline]
    pub fn pairing_int(&self, coweight: &[i64], root: &[i64]) -> i64 {
        dot(coweight, root)
    }

    /// Coordinates of a coweight in the coroot basis: solves `cartan · x = y`.
    pub fn coroot_coordinates(&self, coweight: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(coweight.len())?;
        Ok(self.cartan_inverse.mul_vec(coweight))
    }

    pub(crate) fn check_len(&self, got: usize) -> Result<()> {
        if got == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank,
                got,
            })
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn form(gram: &IntMatrix, a: &[i64], b: &[i64]) -> i64 {
    dot(&gram.mul_vec(b), a)
}

/// Known positive-root counts, used as a construction self-check.
pub fn expected_root_count(label: TypeLabel, n: usize) -> usize {
    match label {
        TypeLabel::A => n * (n + 1) / 2,
        TypeLabel::B | TypeLabel::C => n * n,
        TypeLabel::D => n * (n - 1),
        TypeLabel::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        TypeLabel::F => 24,
        TypeLabel::G => 6,
    }
}

/// Upward closure from the simple roots via root strings: `β + α_i` is a
/// root iff `p - <β, α_i^∨> > 0`, where `p` is the largest `k` with
/// `β - k α_i` a root.
fn generate_positive_roots(cartan: &IntMatrix) -> Vec<Vec<i64>> {
    let n = cartan.rows();
    let mut known: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut all = Vec::new();
    for r in &layer {
        known.insert(r.clone(), ());
    }
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| beta[j] * cartan[(j, i)]).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}
