//! The group `C`, the statistics `cdes` and `cmaj`, and the q-analogue of
//! the order formula.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polytope::{self, AlcovedPolytope};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, WeylGroup};
use crate::{IntPoly, Rational};

/// `Σ_{i=0}^r a_i d_i(w)`.
pub fn cdes(rs: &RootSystem, w: &WeylElement) -> i64 {
    w.descents(rs)
        .iter()
        .zip(rs.marks_with_zero())
        .map(|(&d, a)| i64::from(d) * a)
        .sum()
}

/// `δ_w = Σ_{i≥1} d_i(w) ω_i`.
pub fn delta(rs: &RootSystem, w: &WeylElement) -> Vec<i64> {
    w.descents(rs)[1..].iter().map(|&d| i64::from(d)).collect()
}

/// Class of a coweight in `Λ∨/L∨`: fractional parts of its coroot
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetClass {
    frac: Vec<Rational>,
}

impl CosetClass {
    pub fn zero(rank: usize) -> Self {
        CosetClass {
            frac: vec![Rational::from_integer(0); rank],
        }
    }

    pub fn frac(&self) -> &[Rational] {
        &self.frac
    }

    pub fn is_zero(&self) -> bool {
        self.frac.iter().all(|x| *x == Rational::from_integer(0))
    }

    pub fn add(&self, other: &CosetClass) -> CosetClass {
        CosetClass {
            frac: self.frac.iter().zip(&other.frac).map(|(a, b)| (a + b).fract()).collect(),
        }
    }
}

impl fmt::Display for CosetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.frac.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for CosetClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.frac.iter().map(|x| x.to_string()))
    }
}

/// Class of an integral coweight given in ω-coordinates.
pub fn coweight_class(rs: &RootSystem, lambda: &[Rational]) -> Result<CosetClass> {
    if lambda.iter().any(|x| !x.is_integer()) {
        return Err(Error::input("coweight class needs an integral coweight"));
    }
    let cc = rs.coroot_coordinates(lambda)?;
    Ok(CosetClass {
        frac: cc.into_iter().map(|x| x - x.floor()).collect(),
    })
}

pub fn coweight_class_int(rs: &RootSystem, lambda: &[i64]) -> CosetClass {
    let q: Vec<Rational> = lambda.iter().map(|&x| Rational::from_integer(x)).collect();
    coweight_class(rs, &q).expect("integral input of the right length")
}

/// `C = {w : cdes(w) = 1}` together with `b̄` restricted to it.
#[derive(Clone, Debug)]
pub struct CGroup {
    members: Vec<usize>,
    classes: Vec<CosetClass>,
    class_of: HashMap<CosetClass, usize>,
    identity: usize,
}

impl CGroup {
    /// Indices into the enumerated Weyl group.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `class(δ_c)` for the member at position `pos`.
    pub fn class(&self, pos: usize) -> &CosetClass {
        &self.classes[pos]
    }

    /// Position of the member with `class(δ_c) = class`.
    pub fn position_of_class(&self, class: &CosetClass) -> Option<usize> {
        self.class_of.get(class).copied()
    }

    pub fn position_of(&self, w_index: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == w_index)
    }

    /// Position of the identity.
    pub fn identity(&self) -> usize {
        self.identity
    }
}

/// Finds `C` through `cdes = 1` and cross-checks it against the other
/// descriptions: `w(ρ) - ρ ∈ h Λ∨`, `w` permuting `{α_0, ..., α_r}`, and
/// `w` preserving each set of simple roots with equal mark.
pub fn group_c(rs: &RootSystem, group: &WeylGroup) -> Result<CGroup> {
    let n = rs.rank();
    let h = rs.h_star();
    let marks = rs.marks_with_zero();
    let mut affine_simple: Vec<Vec<i64>> = vec![rs.theta().iter().map(|x| -x).collect()];
    affine_simple.extend((1..=n).map(|i| rs.simple_root(i).to_vec()));

    let mut members = vec![];
    for (idx, w) in group.elements().iter().enumerate() {
        let by_cdes = cdes(rs, w) == 1;
        let by_rho = w
            .act_on_coweight_int(&rs.rho())
            .iter()
            .all(|&x| (x - 1).rem_euclid(h) == 0);
        let images: Vec<Vec<i64>> = affine_simple.iter().map(|a| w.root_action().mul_vec(a)).collect();
        let permutes = images.iter().all(|x| affine_simple.contains(x));
        let graded = images
            .iter()
            .enumerate()
            .all(|(i, x)| affine_simple.iter().position(|a| a == x).is_some_and(|j| marks[j] == marks[i]));
        if by_cdes != by_rho || by_cdes != permutes || by_cdes != graded {
            return Err(Error::defect(format!(
                "descriptions of C disagree at element {idx}: cdes {by_cdes}, rho {by_rho}, \
                 permutation {permutes}, graded {graded}"
            )));
        }
        if by_cdes {
            members.push(idx);
        }
    }
    if members.len() as i64 != rs.index_of_connection() {
        return Err(Error::defect(format!(
            "|C| = {} but f = {}",
            members.len(),
            rs.index_of_connection()
        )));
    }
    let set: HashSet<usize> = members.iter().copied().collect();
    for &a in &members {
        for &b in &members {
            if !set.contains(&group.product(a, b)) {
                return Err(Error::defect("C is not closed under multiplication"));
            }
        }
    }
    let classes: Vec<CosetClass> = members
        .iter()
        .map(|&m| coweight_class_int(rs, &delta(rs, group.get(m))))
        .collect();
    let class_of: HashMap<CosetClass, usize> =
        classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    if class_of.len() != members.len() {
        return Err(Error::defect("δ does not separate the elements of C"));
    }
    let identity = members
        .iter()
        .position(|&m| group.get(m).is_identity())
        .ok_or_else(|| Error::defect("identity is missing from C"))?;
    Ok(CGroup {
        members,
        classes,
        class_of,
        identity,
    })
}

/// `cmaj(w) = b̄(δ_w)`, as a position in `C`.
pub fn cmaj(rs: &RootSystem, c: &CGroup, w: &WeylElement) -> Result<usize> {
    let class = coweight_class_int(rs, &delta(rs, w));
    c.position_of_class(&class)
        .ok_or_else(|| Error::defect(format!("class {class} of δ_w is not the class of any δ_c")))
}

/// Per-element statistics for the whole group.
#[derive(Clone, Debug)]
pub struct StatTable {
    pub cdes: Vec<i64>,
    /// Position in `C`.
    pub cmaj: Vec<usize>,
}

impl StatTable {
    pub fn new(rs: &RootSystem, group: &WeylGroup, c: &CGroup) -> Result<Self> {
        let rows: Vec<(i64, usize)> = group
            .elements()
            .par_iter()
            .map(|w| Ok((cdes(rs, w), cmaj(rs, c, w)?)))
            .collect::<Result<_>>()?;
        let (cdes, cmaj) = rows.into_iter().unzip();
        Ok(StatTable { cdes, cmaj })
    }
}

/// `W' = {w : cmaj(w) = id}`, one element from each coset `Cw`.
pub fn coset_representatives(rs: &RootSystem, group: &WeylGroup, c: &CGroup) -> Result<Vec<usize>> {
    let table = StatTable::new(rs, group, c)?;
    let reps: Vec<usize> = (0..group.len())
        .filter(|&i| table.cmaj[i] == c.identity())
        .collect();
    if reps.len() * c.len() != group.len() {
        return Err(Error::defect(format!(
            "{} elements with cmaj = id, expected {}",
            reps.len(),
            group.len() / c.len()
        )));
    }
    let mut hit = vec![false; group.len()];
    for &w in &reps {
        for &m in c.members() {
            let x = group.product(m, w);
            if std::mem::replace(&mut hit[x], true) {
                return Err(Error::defect("cmaj = id meets some coset Cw twice"));
            }
        }
    }
    Ok(reps)
}

/// `(W')⁻¹`, one element from each coset `wC`, i.e. from each class of
/// alcoves modulo coweight translations.
pub fn right_coset_representatives(rs: &RootSystem, group: &WeylGroup, c: &CGroup) -> Result<Vec<usize>> {
    let reps: Vec<usize> = coset_representatives(rs, group, c)?
        .into_iter()
        .map(|i| group.inverse_index(i))
        .collect();
    // u ~ w iff u(ρ) ≡ w(ρ) mod h Λ∨
    let h = rs.h_star();
    let mut seen = HashSet::new();
    for &i in &reps {
        let key: Vec<i64> = group
            .get(i)
            .act_on_coweight_int(&rs.rho())
            .iter()
            .map(|x| x.rem_euclid(h))
            .collect();
        if !seen.insert(key) {
            return Err(Error::defect("inverse representatives repeat a class of W/C"));
        }
    }
    Ok(reps)
}

/// `Vol(P)` against `Σ I(P_(w))` over representatives of `W/C`.
pub fn volume_identity(
    p: &AlcovedPolytope<'_>,
    group: &WeylGroup,
    c: &CGroup,
    budget: u128,
) -> Result<polytope::VolumeIdentityReport> {
    let rs = p.root_system();
    let reps: Vec<WeylElement> = right_coset_representatives(rs, group, c)?
        .into_iter()
        .map(|i| group.get(i).clone())
        .collect();
    polytope::volume_identity_check(p, &reps, budget)
}

/// `A_n(q) = Σ_{w ∈ S_n} q^{des(w)+1}`, `A_0 = 1`.
pub fn eulerian_polynomial(n: usize) -> IntPoly {
    let mut row = vec![1i64];
    for m in 1..=n {
        let mut next = vec![0i64; m + 1];
        for (k, slot) in next.iter_mut().enumerate().skip(1) {
            let stay = row.get(k).copied().unwrap_or(0);
            let grow = row.get(k - 1).copied().unwrap_or(0);
            *slot = k as i64 * stay + (m - k + 1) as i64 * grow;
        }
        row = next;
    }
    IntPoly::from_coeffs(row)
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: usize) -> IntPoly {
    IntPoly::q_integer(n)
}

/// `A_r(q) · Π [a_i]_q`.
pub fn eulerian_mark_product(rs: &RootSystem) -> IntPoly {
    rs.marks()
        .iter()
        .fold(eulerian_polynomial(rs.rank()), |acc, &a| &acc * &q_integer(a as usize))
}

/// Element of `Z[q][Λ∨/L∨]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    coeffs: BTreeMap<CosetClass, IntPoly>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Adds `p · e^x`.
    pub fn add_term(&mut self, x: CosetClass, p: &IntPoly) {
        let slot = self.coeffs.entry(x).or_insert_with(IntPoly::zero);
        *slot += p;
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    pub fn add(&mut self, other: &GroupAlgebraElement) {
        for (x, p) in &other.coeffs {
            self.add_term(x.clone(), p);
        }
    }

    pub fn coeff(&self, x: &CosetClass) -> IntPoly {
        self.coeffs.get(x).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CosetClass, &IntPoly)> {
        self.coeffs.iter()
    }

    /// Image under `e^x ↦ 1`.
    pub fn augmentation(&self) -> IntPoly {
        self.coeffs.values().fold(IntPoly::zero(), |acc, p| &acc + p)
    }
}

impl Serialize for GroupAlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            class: &'a CosetClass,
            poly: String,
            coeffs: &'a IntPoly,
        }
        s.collect_seq(self.coeffs.iter().map(|(class, p)| Term {
            class,
            poly: p.to_string(),
            coeffs: p,
        }))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QWeylReport {
    pub lhs: GroupAlgebraElement,
    pub rhs: GroupAlgebraElement,
    pub scalar_lhs: IntPoly,
    pub scalar_rhs: IntPoly,
    pub identity_holds: bool,
}

/// `Σ_w q^{cdes(w)} e^{cmaj(w)}` against `(Σ_x e^x) · A_r(q) · Π[a_i]_q`.
pub fn qweyl_check(rs: &RootSystem, group: &WeylGroup, c: &CGroup) -> Result<QWeylReport> {
    let table = StatTable::new(rs, group, c)?;
    let lhs = (0..group.len())
        .into_par_iter()
        .fold(GroupAlgebraElement::zero, |mut acc, i| {
            let x = c.class(table.cmaj[i]).clone();
            acc.add_term(x, &IntPoly::monomial(1, table.cdes[i] as usize));
            acc
        })
        .reduce(GroupAlgebraElement::zero, |mut a, b| {
            a.add(&b);
            a
        });
    let base = eulerian_mark_product(rs);
    let mut rhs = GroupAlgebraElement::zero();
    for pos in 0..c.len() {
        rhs.add_term(c.class(pos).clone(), &base);
    }
    let scalar_lhs = table
        .cdes
        .iter()
        .fold(IntPoly::zero(), |acc, &k| &acc + &IntPoly::monomial(1, k as usize));
    let scalar_rhs = base.scale(rs.index_of_connection());
    let identity_holds = lhs == rhs && scalar_lhs == scalar_rhs && lhs.augmentation() == scalar_lhs;
    Ok(QWeylReport {
        lhs,
        rhs,
        scalar_lhs,
        scalar_rhs,
        identity_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HypersimplexStatReport {
    /// `Vol(Δ_k)` for `k = 1..h-1`.
    pub volumes: Vec<u64>,
    /// `#{w̄ ∈ W/C : cdes(w̄⁻¹) = k}`.
    pub coset_counts: Vec<u64>,
    /// `#{w ∈ W : cdes(w⁻¹) = k}`.
    pub element_counts: Vec<u64>,
    pub constant_on_cosets: bool,
    pub generating_function_holds: bool,
    pub identity_holds: bool,
}

pub fn hypersimplex_statistic_check(
    rs: &RootSystem,
    group: &WeylGroup,
    c: &CGroup,
    budget: u128,
) -> Result<HypersimplexStatReport> {
    let table = StatTable::new(rs, group, c)?;
    let top = (rs.h_star() - 1) as usize;
    let volumes = (1..=top as i64)
        .map(|k| polytope::volume_with_budget(&polytope::hypersimplex(rs, k)?, budget))
        .collect::<Result<Vec<u64>>>()?;
    let inv_cdes = |i: usize| table.cdes[group.inverse_index(i)];
    let mut coset_counts = vec![0u64; top];
    for i in right_coset_representatives(rs, group, c)? {
        coset_counts[inv_cdes(i) as usize - 1] += 1;
    }
    let mut element_counts = vec![0u64; top];
    for i in 0..group.len() {
        element_counts[inv_cdes(i) as usize - 1] += 1;
    }
    let constant_on_cosets = (0..group.len())
        .all(|i| c.members().iter().all(|&m| inv_cdes(group.product(i, m)) == inv_cdes(i)));
    let mut vol_coeffs = vec![0i64];
    vol_coeffs.extend(volumes.iter().map(|&v| v as i64));
    let generating_function_holds = IntPoly::from_coeffs(vol_coeffs) == eulerian_mark_product(rs);
    let f = rs.index_of_connection() as u64;
    let identity_holds = constant_on_cosets
        && generating_function_holds
        && volumes == coset_counts
        && volumes.iter().map(|v| v * f).eq(element_counts.iter().copied());
    Ok(HypersimplexStatReport {
        volumes,
        coset_counts,
        element_counts,
        constant_on_cosets,
        generating_function_holds,
        identity_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetTheoremReport {
    pub cdes_double_coset_invariant: bool,
    pub cmaj_twist_holds: bool,
    pub inverse_symmetry_holds: bool,
    pub cmaj_fixes_c: bool,
    pub checked_triples: u64,
}

impl CosetTheoremReport {
    pub fn all_hold(&self) -> bool {
        self.cdes_double_coset_invariant
            && self.cmaj_twist_holds
            && self.inverse_symmetry_holds
            && self.cmaj_fixes_c
    }
}

/// Exhaustive check over `W × C × C` of `cdes(c₁wc₂) = cdes(w)` and
/// `cmaj(c₁wc₂) = c₁ · cmaj(w) · c₂^{cdes(w)}`, plus
/// `Σ q^{cdes(w)} e^{cmaj(w)} = Σ q^{cdes(w)} e^{cmaj(w⁻¹)}` and `cmaj(c) = c`.
pub fn coset_theorem_check(rs: &RootSystem, group: &WeylGroup, c: &CGroup) -> Result<CosetTheoremReport> {
    let table = StatTable::new(rs, group, c)?;
    let cm = c.members();
    // C is abelian, so powers and products can be looked up directly
    let pow = |x: usize, k: i64| -> usize {
        (0..k).fold(cm[c.identity()], |acc, _| group.product(acc, cm[x]))
    };
    let (double, twist) = (0..group.len())
        .into_par_iter()
        .map(|w| {
            let mut double = true;
            let mut twist = true;
            for (p1, &c1) in cm.iter().enumerate() {
                for (p2, &c2) in cm.iter().enumerate() {
                    let x = group.product(group.product(c1, w), c2);
                    double &= table.cdes[x] == table.cdes[w];
                    let expected = group.product(group.product(cm[p1], cm[table.cmaj[w]]), pow(p2, table.cdes[w]));
                    twist &= cm[table.cmaj[x]] == expected;
                }
            }
            (double, twist)
        })
        .reduce(|| (true, true), |a, b| (a.0 && b.0, a.1 && b.1));
    let mut direct = GroupAlgebraElement::zero();
    let mut inverse = GroupAlgebraElement::zero();
    for w in 0..group.len() {
        let q = IntPoly::monomial(1, table.cdes[w] as usize);
        direct.add_term(c.class(table.cmaj[w]).clone(), &q);
        inverse.add_term(c.class(table.cmaj[group.inverse_index(w)]).clone(), &q);
    }
    let cmaj_fixes_c = cm.iter().enumerate().all(|(p, &m)| table.cmaj[m] == p);
    Ok(CosetTheoremReport {
        cdes_double_coset_invariant: double,
        cmaj_twist_holds: twist,
        inverse_symmetry_holds: direct == inverse,
        cmaj_fixes_c,
        checked_triples: (group.len() * cm.len() * cm.len()) as u64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossTable {
    /// Row and column labels: `class(δ_c)` for each `c ∈ C`.
    pub classes: Vec<CosetClass>,
    /// `entries[x][y] = Σ q^{cdes(w)}` over `w` with `cmaj(w) = x`, `cmaj(w⁻¹) = y`.
    pub entries: Vec<Vec<IntPoly>>,
    pub total: u64,
    /// Whether the table equals its transpose; observed, never asserted.
    pub symmetric: bool,
}

pub fn cmaj_cross_table(rs: &RootSystem, group: &WeylGroup, c: &CGroup) -> Result<CrossTable> {
    let table = StatTable::new(rs, group, c)?;
    let f = c.len();
    let mut entries = vec![vec![IntPoly::zero(); f]; f];
    for w in 0..group.len() {
        let x = table.cmaj[w];
        let y = table.cmaj[group.inverse_index(w)];
        entries[x][y] += &IntPoly::monomial(1, table.cdes[w] as usize);
    }
    let total = entries
        .iter()
        .flatten()
        .map(|p| p.eval(1) as u64)
        .sum();
    let symmetric = (0..f).all(|x| (0..f).all(|y| entries[x][y] == entries[y][x]));
    Ok(CrossTable {
        classes: (0..f).map(|p| c.class(p).clone()).collect(),
        entries,
        total,
        symmetric,
    })
}
