//! Weyl group elements as integer matrices on root coordinates.

use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::rootsys::{RootSystem, TypeLabel};
use crate::{IntMatrix, Rational};

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_GROUP_BUDGET: usize = 1_000_000;

/// An element `w` of the Weyl group.
///
/// Column `j` of the root action holds the simple-root coordinates of
/// `w(α_j)`. The coweight action `(M^{-1})^T` is integral because `W`
/// preserves the coweight lattice, so it is stored as an integer matrix.
#[derive(Clone, Debug)]
pub struct WeylElement {
    root_action: IntMatrix,
    inverse_root_action: IntMatrix,
    coweight_action: IntMatrix,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.root_action == other.root_action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.root_action.hash(state);
    }
}

fn is_negative(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        let id = Matrix::identity(rs.rank());
        WeylElement {
            root_action: id.clone(),
            inverse_root_action: id.clone(),
            coweight_action: id,
            length: 0,
        }
    }

    /// `s_i(α_j) = α_j - A[j][i] α_i`, for `i` in `1..=rank`.
    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<Self> {
        let n = rs.rank();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let k = i - 1;
        let m = Matrix::from_fn(n, n, |row, col| {
            let base = i64::from(row == col);
            if row == k {
                base - rs.cartan()[(col, k)]
            } else {
                base
            }
        });
        Ok(WeylElement {
            coweight_action: m.transpose(),
            inverse_root_action: m.clone(),
            root_action: m,
            length: 1,
        })
    }

    /// Wraps an arbitrary integer matrix, checking that it is a Weyl group
    /// element: it must be unimodular and permute the roots.
    pub fn from_root_action(rs: &RootSystem, m: IntMatrix) -> Result<Self> {
        let n = rs.rank();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.rows(),
            });
        }
        let inv = matrix::inverse(&matrix::to_ratio(&m))
            .and_then(|x| matrix::to_integer(&x))
            .ok_or_else(|| Error::input("matrix is not invertible over the integers"))?;
        // strip right descents; a non-identity remainder is a diagram automorphism
        let mut rest = m.clone();
        let mut steps = 0;
        while let Some(i) = (0..n).find(|&i| is_negative(&rest.column(i))) {
            rest = &rest * WeylElement::simple_reflection(rs, i + 1)?.root_action();
            steps += 1;
            if steps > rs.num_positive_roots() {
                return Err(Error::input("matrix is not a Weyl group element"));
            }
        }
        if !rest.is_identity() {
            return Err(Error::input("matrix is not a Weyl group element"));
        }
        let mut length = 0;
        for root in rs.positive_roots() {
            let image = m.mul_vec(root);
            if !rs.is_root(&image) {
                return Err(Error::input("matrix does not permute the root system"));
            }
            if is_negative(&image) {
                length += 1;
            }
        }
        Ok(WeylElement {
            coweight_action: inv.transpose(),
            inverse_root_action: inv,
            root_action: m,
            length,
        })
    }

    pub fn root_action(&self) -> &IntMatrix {
        &self.root_action
    }

    pub fn coweight_action(&self) -> &IntMatrix {
        &self.coweight_action
    }

    /// `ℓ(w)`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.root_action.is_identity()
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            root_action: self.inverse_root_action.clone(),
            inverse_root_action: self.root_action.clone(),
            coweight_action: self.root_action.transpose(),
            length: self.length,
        }
    }

    /// Product `self · other`; the length is recomputed by counting inversions.
    pub fn mul(&self, other: &Self, rs: &RootSystem) -> Self {
        let mut w = self.mul_unchecked_length(other);
        w.length = w.inversion_count(rs);
        w
    }

    fn mul_unchecked_length(&self, other: &Self) -> Self {
        WeylElement {
            root_action: &self.root_action * &other.root_action,
            inverse_root_action: &other.inverse_root_action * &self.inverse_root_action,
            coweight_action: &self.coweight_action * &other.coweight_action,
            length: 0,
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|r| is_negative(&self.root_action.mul_vec(r)))
            .count()
    }

    pub fn act_on_root(&self, root: &[i64]) -> Result<Vec<i64>> {
        self.check_len(root.len())?;
        Ok(self.root_action.mul_vec(root))
    }

    pub fn act_on_coweight(&self, coweight: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(coweight.len())?;
        Ok((0..coweight.len())
            .map(|i| {
                self.coweight_action
                    .row(i)
                    .iter()
                    .zip(coweight)
                    .fold(Rational::from_integer(0), |acc, (&a, y)| acc + y * a)
            })
            .collect())
    }

    /// Action on an integral coweight (or on `h·λ` for a central point).
    pub fn act_on_coweight_int(&self, coweight: &[i64]) -> Vec<i64> {
        self.coweight_action.mul_vec(coweight)
    }

    /// `inv_α(w)`: 1 iff `w(α) < 0`. `α` must be a positive root.
    pub fn inv(&self, rs: &RootSystem, root: &[i64]) -> Result<u8> {
        if rs.root_index(root).is_none() {
            return Err(Error::input(format!("{root:?} is not a positive root of {}", rs.name())));
        }
        Ok(u8::from(is_negative(&self.root_action.mul_vec(root))))
    }

    /// Same as [`inv`](Self::inv) for a root already known to be positive.
    pub fn inv_unchecked(&self, root: &[i64]) -> u8 {
        u8::from(is_negative(&self.root_action.mul_vec(root)))
    }

    /// `(d_0(w), d_1(w), ..., d_r(w))`; `d_0` is the descent at `α_0 = -θ`.
    pub fn descents(&self, rs: &RootSystem) -> Vec<u8> {
        let n = rs.rank();
        let mut d = Vec::with_capacity(n + 1);
        // w(-θ) < 0  iff  w(θ) > 0
        d.push(1 - self.inv_unchecked(rs.theta()));
        for i in 0..n {
            // column i is w(α_{i+1})
            let col = self.root_action.column(i);
            d.push(u8::from(is_negative(&col)));
        }
        d
    }

    fn check_len(&self, got: usize) -> Result<()> {
        let n = self.root_action.rows();
        if got == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, got })
        }
    }
}

/// The full Weyl group, enumerated breadth-first.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    inverses: Vec<usize>,
}

/// `f · r! · a_1 ⋯ a_r`.
pub fn weyl_order_formula(rs: &RootSystem) -> u128 {
    let fact: u128 = (1..=rs.rank() as u128).product();
    let marks: u128 = rs.marks().iter().map(|&a| a as u128).product();
    rs.index_of_connection() as u128 * fact * marks
}

impl WeylGroup {
    /// Enumerates `W` with the default budget.
    pub fn enumerate(rs: &RootSystem) -> Result<Self> {
        enumerate_weyl(rs, DEFAULT_GROUP_BUDGET)
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.root_action).copied()
    }

    pub fn inverse_index(&self, idx: usize) -> usize {
        self.inverses[idx]
    }

    /// Index of the product of the elements at `a` and `b`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let m = &self.elements[a].root_action * &self.elements[b].root_action;
        self.index[&m]
    }

    /// The unique element of maximal length.
    pub fn longest_element(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|w| w.length)
            .expect("group is never empty")
    }
}

/// Breadth-first closure of `{id}` under right multiplication by the simple
/// reflections, generators taken in index order. Word length is BFS depth.
pub fn enumerate_weyl(rs: &RootSystem, budget: usize) -> Result<WeylGroup> {
    let predicted = weyl_order_formula(rs);
    if predicted > budget as u128 {
        return Err(Error::Budget {
            what: "Weyl group enumeration",
            needed: predicted,
            budget: budget as u128,
        });
    }
    let gens: Vec<WeylElement> = (1..=rs.rank())
        .map(|i| WeylElement::simple_reflection(rs, i))
        .collect::<Result<_>>()?;
    let id = WeylElement::identity(rs);
    let mut index = HashMap::new();
    let mut elements = vec![];
    index.insert(id.root_action.clone(), 0);
    elements.push(id);
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let mut next = elements[cur].mul_unchecked_length(g);
            if index.contains_key(&next.root_action) {
                continue;
            }
            if elements.len() >= budget {
                return Err(Error::Budget {
                    what: "Weyl group enumeration",
                    needed: elements.len() as u128 + 1,
                    budget: budget as u128,
                });
            }
            next.length = elements[cur].length + 1;
            index.insert(next.root_action.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }
    let inverses = elements
        .iter()
        .map(|w| index[&w.inverse_root_action])
        .collect();
    Ok(WeylGroup {
        elements,
        index,
        inverses,
    })
}

/// Longest element `w∘`.
pub fn longest_element(rs: &RootSystem) -> Result<WeylElement> {
    Ok(WeylGroup::enumerate(rs)?.longest_element().clone())
}

/// Concrete permutation models of `W(A_{n-1}) = S_n` and `W(C_n)`.
pub mod models {
    use super::*;

    fn require(rs: &RootSystem, label: TypeLabel) -> Result<()> {
        if rs.label() == label {
            Ok(())
        } else {
            Err(Error::UnsupportedType(format!(
                "{} (expected type {label})",
                rs.name()
            )))
        }
    }

    /// Ambient vector -> simple-root coordinates, type `A_{n-1}`.
    fn a_to_roots(x: &[i64]) -> Vec<i64> {
        x[..x.len() - 1]
            .iter()
            .scan(0, |acc, &v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }

    fn a_to_ambient(c: &[i64]) -> Vec<i64> {
        let n = c.len() + 1;
        (0..n)
            .map(|k| {
                let cur = if k < n - 1 { c[k] } else { 0 };
                let prev = if k > 0 { c[k - 1] } else { 0 };
                cur - prev
            })
            .collect()
    }

    /// Ambient vector -> simple-root coordinates, type `C_n`.
    fn c_to_roots(x: &[i64]) -> Vec<i64> {
        let n = x.len();
        let mut out = Vec::with_capacity(n);
        let mut acc = 0;
        for &v in &x[..n - 1] {
            acc += v;
            out.push(acc);
        }
        acc += x[n - 1];
        debug_assert_eq!(acc % 2, 0);
        out.push(acc / 2);
        out
    }

    fn c_to_ambient(c: &[i64]) -> Vec<i64> {
        let n = c.len();
        (0..n)
            .map(|k| {
                let prev = if k > 0 { c[k - 1] } else { 0 };
                if k < n - 1 {
                    c[k] - prev
                } else {
                    2 * c[k] - prev
                }
            })
            .collect()
    }

    fn check_permutation(p: &[usize]) -> Result<()> {
        let n = p.len();
        let mut seen = vec![false; n + 1];
        for &v in p {
            if v == 0 || v > n || seen[v] {
                return Err(Error::input(format!("{p:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        Ok(())
    }

    /// `w(e_k) = e_{w_k}` for a one-line permutation of `1..=n`; `rs = A_{n-1}`.
    pub fn from_permutation(rs: &RootSystem, perm: &[usize]) -> Result<WeylElement> {
        require(rs, TypeLabel::A)?;
        let n = rs.rank() + 1;
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        check_permutation(perm)?;
        let cols: Vec<Vec<i64>> = (0..n - 1)
            .map(|j| {
                let mut x = vec![0i64; n];
                x[perm[j] - 1] += 1;
                x[perm[j + 1] - 1] -= 1;
                a_to_roots(&x)
            })
            .collect();
        let m = Matrix::from_fn(n - 1, n - 1, |i, j| cols[j][i]);
        WeylElement::from_root_action(rs, m)
    }

    pub fn to_permutation(rs: &RootSystem, w: &WeylElement) -> Result<Vec<usize>> {
        require(rs, TypeLabel::A)?;
        let n = rs.rank() + 1;
        let mut perm = vec![0usize; n];
        for j in 0..n - 1 {
            let x = a_to_ambient(&w.root_action().column(j));
            let plus = x.iter().position(|&v| v == 1);
            let minus = x.iter().position(|&v| v == -1);
            match (plus, minus) {
                (Some(p), Some(m)) => {
                    perm[j] = p + 1;
                    perm[j + 1] = m + 1;
                }
                _ => return Err(Error::defect("root image is not of the form e_a - e_b")),
            }
        }
        Ok(perm)
    }

    /// `w(e_k) = sign(w_k) e_{|w_k|}` for a signed permutation; `rs = C_n`.
    pub fn from_signed_permutation(rs: &RootSystem, perm: &[i64]) -> Result<WeylElement> {
        require(rs, TypeLabel::C)?;
        let n = rs.rank();
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let abs: Vec<usize> = perm.iter().map(|v| v.unsigned_abs() as usize).collect();
        check_permutation(&abs)
            .map_err(|_| Error::input(format!("{perm:?} is not a signed permutation")))?;
        let image = |k: usize| -> Vec<i64> {
            let mut x = vec![0i64; n];
            x[abs[k] - 1] = perm[k].signum();
            x
        };
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let x: Vec<i64> = if j < n - 1 {
                    image(j).iter().zip(image(j + 1)).map(|(a, b)| a - b).collect()
                } else {
                    image(j).iter().map(|a| 2 * a).collect()
                };
                c_to_roots(&x)
            })
            .collect();
        let m = Matrix::from_fn(n, n, |i, j| cols[j][i]);
        WeylElement::from_root_action(rs, m)
    }

    pub fn to_signed_permutation(rs: &RootSystem, w: &WeylElement) -> Result<Vec<i64>> {
        require(rs, TypeLabel::C)?;
        let n = rs.rank();
        let mut out = vec![0i64; n];
        let mut next = c_to_ambient(&w.root_action().column(n - 1));
        if next.iter().any(|v| v % 2 != 0) {
            return Err(Error::defect("image of the long simple root is not 2e_k"));
        }
        next.iter_mut().for_each(|v| *v /= 2);
        for k in (0..n).rev() {
            if k < n - 1 {
                let col = c_to_ambient(&w.root_action().column(k));
                next = col.iter().zip(&next).map(|(a, b)| a + b).collect();
            }
            let nz: Vec<usize> = (0..n).filter(|&i| next[i] != 0).collect();
            match nz.as_slice() {
                [i] if next[*i].abs() == 1 => out[k] = next[*i] * (*i as i64 + 1),
                _ => return Err(Error::defect("image of e_k is not ±e_m")),
            }
        }
        Ok(out)
    }

    /// Descent vector `(d_0, d_1, ..., d_{n-1})` of a permutation: the usual
    /// descents plus a circular descent at `0` when `w_n > w_1`.
    pub fn permutation_descents(perm: &[usize]) -> Vec<u8> {
        let n = perm.len();
        let mut d = vec![u8::from(perm[n - 1] > perm[0])];
        d.extend((0..n - 1).map(|i| u8::from(perm[i] > perm[i + 1])));
        d
    }

    /// Usual major index: the sum of descent positions.
    pub fn major_index(perm: &[usize]) -> usize {
        (0..perm.len() - 1)
            .filter(|&i| perm[i] > perm[i + 1])
            .map(|i| i + 1)
            .sum()
    }

    /// Rank of a signed value in the order `1 < 2 < ... < n < -n < ... < -1`.
    fn signed_rank(v: i64, n: i64) -> i64 {
        if v > 0 {
            v
        } else {
            2 * n + 1 + v
        }
    }

    /// Descent vector `(d_0, ..., d_n)` of a signed permutation: `d_0` iff
    /// `w_1 > 0`, `d_n` iff `w_n < 0`, and `d_i` iff `w_i > w_{i+1}` in the
    /// order `1 < 2 < ... < n < -n < ... < -1`.
    pub fn signed_descents(perm: &[i64]) -> Vec<u8> {
        let n = perm.len();
        let m = n as i64;
        let mut d = vec![u8::from(perm[0] > 0)];
        d.extend(
            (0..n - 1).map(|i| u8::from(signed_rank(perm[i], m) > signed_rank(perm[i + 1], m))),
        );
        d.push(u8::from(perm[n - 1] < 0));
        d
    }

    /// The long cycle `(1 2 ⋯ n)`, one-line `2 3 ⋯ n 1`.
    pub fn long_cycle(n: usize) -> Vec<usize> {
        (0..n).map(|i| (i + 1) % n + 1).collect()
    }

    /// `(-n, -(n-1), ..., -1)`.
    pub fn signed_reversal(n: usize) -> Vec<i64> {
        (0..n as i64).map(|i| -(n as i64 - i)).collect()
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![];
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(cur.clone());
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// All signed permutations of `1..=n`.
    pub fn all_signed_permutations(n: usize) -> Vec<Vec<i64>> {
        let mut out = vec![];
        for p in all_permutations(n) {
            for signs in 0..(1u32 << n) {
                out.push(
                    p.iter()
                        .enumerate()
                        .map(|(i, &v)| if signs >> i & 1 == 1 { -(v as i64) } else { v as i64 })
                        .collect(),
                );
            }
        }
        out
    }
}
