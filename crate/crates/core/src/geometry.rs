//! Alcoves, central points and affine reduction into the fundamental alcove.
//!
//! A central point is stored as an integer vector `y` with `λ = y / h`
//! in ω-coordinates. Alcoves are never built from anything else.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::rootsys::RootSystem;
use crate::weyl::WeylElement;
use crate::{IntMatrix, Rational};

/// Step guard for [`reduce_to_fundamental`].
pub const REDUCTION_STEP_LIMIT: usize = 1_000_000;

/// Central point `y / h` of an alcove.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralPoint {
    y: Vec<i64>,
}

impl CentralPoint {
    /// Fails unless every pairing `(y, α)` is nonzero mod `h`.
    pub fn new(rs: &RootSystem, y: Vec<i64>) -> Result<Self> {
        rs.check_len(y.len())?;
        let h = rs.h_star();
        if let Some(root) = rs
            .positive_roots()
            .iter()
            .find(|a| rs.pairing_int(&y, a).rem_euclid(h) == 0)
        {
            return Err(Error::input(format!(
                "{y:?}/{h} lies on a hyperplane orthogonal to {root:?}"
            )));
        }
        Ok(CentralPoint { y })
    }

    pub(crate) fn new_unchecked(y: Vec<i64>) -> Self {
        CentralPoint { y }
    }

    /// `h·λ`.
    pub fn scaled(&self) -> &[i64] {
        &self.y
    }

    pub fn into_scaled(self) -> Vec<i64> {
        self.y
    }

    /// `λ` in ω-coordinates.
    pub fn coweight(&self, rs: &RootSystem) -> Vec<Rational> {
        let h = rs.h_star();
        self.y.iter().map(|&v| Rational::new(v, h)).collect()
    }
}

/// Alcove given by its integers `m_α`, `m_α < (λ, α) < m_α + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alcove {
    m: Vec<i64>,
    center: CentralPoint,
}

impl Alcove {
    /// `m_α`, indexed like `rs.positive_roots()`.
    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn center(&self) -> &CentralPoint {
        &self.center
    }
}

/// `ρ / h`.
pub fn fundamental_central_point(rs: &RootSystem) -> CentralPoint {
    CentralPoint::new_unchecked(rs.rho())
}

fn m_vector(rs: &RootSystem, y: &[i64]) -> Vec<i64> {
    let h = rs.h_star();
    rs.positive_roots()
        .iter()
        .map(|a| Integer::div_floor(&rs.pairing_int(y, a), &h))
        .collect()
}

pub fn alcove_of(rs: &RootSystem, point: &CentralPoint) -> Result<Alcove> {
    let center = CentralPoint::new(rs, point.y.clone())?;
    Ok(Alcove {
        m: m_vector(rs, &center.y),
        center,
    })
}

/// Central point of `w(A∘)`.
pub fn weyl_alcove(rs: &RootSystem, w: &WeylElement) -> CentralPoint {
    CentralPoint::new_unchecked(w.act_on_coweight_int(&rs.rho()))
}

/// `z + λ` for an integral coweight `λ`.
pub fn translate(rs: &RootSystem, z: &CentralPoint, lambda: &[i64]) -> Result<CentralPoint> {
    rs.check_len(lambda.len())?;
    let h = rs.h_star();
    Ok(CentralPoint::new_unchecked(
        z.y.iter().zip(lambda).map(|(a, b)| a + h * b).collect(),
    ))
}

/// Central points of the `r + 1` alcoves sharing a facet with `z`'s alcove.
pub fn neighbors(rs: &RootSystem, z: &CentralPoint) -> Vec<CentralPoint> {
    let h = rs.h_star();
    let m = m_vector(rs, &z.y);
    let mut out = Vec::with_capacity(rs.rank() + 1);
    for (idx, root) in rs.positive_roots().iter().enumerate() {
        let t = rs.pairing_int(&z.y, root);
        let cor = rs.coroot(idx);
        for k in [m[idx], m[idx] + 1] {
            let shift = t - k * h;
            let y: Vec<i64> = z.y.iter().zip(cor).map(|(v, c)| v - shift * c).collect();
            let m2 = m_vector(rs, &y);
            if m.iter().zip(&m2).filter(|(a, b)| a != b).count() == 1 {
                out.push(CentralPoint::new_unchecked(y));
            }
        }
    }
    out
}

/// `λ ↦ linear·λ + translation` on ω-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    linear: IntMatrix,
    linear_inverse: IntMatrix,
    translation: Vec<Rational>,
}

impl AffineMap {
    pub fn identity(rank: usize) -> Self {
        AffineMap {
            linear: Matrix::identity(rank),
            linear_inverse: Matrix::identity(rank),
            translation: vec![Rational::from_integer(0); rank],
        }
    }

    /// Fails if `linear` is not unimodular.
    pub fn new(linear: IntMatrix, translation: Vec<Rational>) -> Result<Self> {
        if linear.rows() != linear.cols() || linear.rows() != translation.len() {
            return Err(Error::DimensionMismatch {
                expected: linear.rows(),
                got: translation.len(),
            });
        }
        let linear_inverse = matrix::inverse(&matrix::to_ratio(&linear))
            .and_then(|m| matrix::to_integer(&m))
            .ok_or_else(|| Error::input("linear part is not unimodular"))?;
        Ok(AffineMap {
            linear,
            linear_inverse,
            translation,
        })
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|t| *t == Rational::from_integer(0))
    }

    pub fn apply(&self, p: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.linear, p)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let t = self.apply(&other.translation);
        AffineMap {
            linear: &self.linear * &other.linear,
            linear_inverse: &other.linear_inverse * &self.linear_inverse,
            translation: t,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let t = mat_vec(&self.linear_inverse, &self.translation)
            .into_iter()
            .map(|x| -x)
            .collect();
        AffineMap {
            linear: self.linear_inverse.clone(),
            linear_inverse: self.linear.clone(),
            translation: t,
        }
    }
}

fn mat_vec(m: &IntMatrix, p: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(p)
                .fold(Rational::from_integer(0), |acc, (&a, x)| acc + x * a)
        })
        .collect()
}

/// Reflection in `H_{α,k}` for the positive root with index `idx`.
pub fn affine_reflection(rs: &RootSystem, idx: usize, k: i64) -> AffineMap {
    let n = rs.rank();
    let root = &rs.positive_roots()[idx];
    let cor = rs.coroot(idx);
    let linear = Matrix::from_fn(n, n, |i, j| i64::from(i == j) - cor[i] * root[j]);
    AffineMap {
        linear_inverse: linear.clone(),
        linear,
        translation: cor.iter().map(|&c| Rational::from_integer(k * c)).collect(),
    }
}

/// Whether `p` lies in the closed fundamental alcove.
pub fn in_closed_fundamental(rs: &RootSystem, p: &[Rational]) -> bool {
    let zero = Rational::from_integer(0);
    (1..=rs.rank()).all(|i| pair(p, rs.simple_root(i)) >= zero)
        && pair(p, rs.theta()) <= Rational::from_integer(1)
}

fn pair(p: &[Rational], root: &[i64]) -> Rational {
    p.iter()
        .zip(root)
        .fold(Rational::from_integer(0), |acc, (x, &c)| acc + x * c)
}

/// Returns `σ` and `σ(p)` with `σ(p)` in the closed fundamental alcove.
///
/// Each step applies the lowest-index violated reflection among
/// `s_1, ..., s_r, s_{θ,1}`.
pub fn reduce_to_fundamental(rs: &RootSystem, p: &[Rational]) -> Result<(AffineMap, Vec<Rational>)> {
    rs.check_len(p.len())?;
    let n = rs.rank();
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    let reflections: Vec<AffineMap> = (1..=n)
        .map(|i| affine_reflection(rs, i - 1, 0))
        .chain(std::iter::once(affine_reflection(rs, rs.theta_index(), 1)))
        .collect();
    debug_assert!((1..=n).all(|i| rs.root_index(rs.simple_root(i)) == Some(i - 1)));
    let mut sigma = AffineMap::identity(n);
    let mut cur = p.to_vec();
    for _ in 0..REDUCTION_STEP_LIMIT {
        let violated = (1..=n)
            .position(|i| pair(&cur, rs.simple_root(i)) < zero)
            .or_else(|| (pair(&cur, rs.theta()) > one).then_some(n));
        match violated {
            None => return Ok((sigma, cur)),
            Some(j) => {
                cur = reflections[j].apply(&cur);
                sigma = reflections[j].compose(&sigma);
            }
        }
    }
    Err(Error::defect("reduction to the fundamental alcove did not terminate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;
    use crate::weyl::{longest_element, WeylGroup};
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn rs(l: TypeLabel, n: usize) -> RootSystem {
        RootSystem::build(l, n).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn fundamental_point_is_inside_the_fundamental_alcove() {
        let a2 = rs(TypeLabel::A, 2);
        let z = fundamental_central_point(&a2);
        let lam = z.coweight(&a2);
        for root in a2.positive_roots() {
            let t = a2.pairing(&lam, root).unwrap();
            assert!(t > q(0, 1) && t < q(1, 1));
        }
        for l in [TypeLabel::B, TypeLabel::C, TypeLabel::D, TypeLabel::E, TypeLabel::F, TypeLabel::G] {
            let n = match l {
                TypeLabel::E => 6,
                TypeLabel::F | TypeLabel::D => 4,
                TypeLabel::G => 2,
                _ => 3,
            };
            let r = rs(l, n);
            assert_eq!(r.pairing_int(&r.rho(), r.theta()), r.h_star() - 1);
            assert!(alcove_of(&r, &fundamental_central_point(&r))
                .unwrap()
                .m()
                .iter()
                .all(|&m| m == 0));
        }
    }

    #[test]
    fn rejects_points_on_hyperplanes() {
        let a2 = rs(TypeLabel::A, 2);
        assert!(CentralPoint::new(&a2, vec![3, 1]).is_err());
        assert!(CentralPoint::new(&a2, vec![1, 2]).is_err());
        assert!(CentralPoint::new(&a2, vec![1]).is_err());
        assert!(CentralPoint::new(&a2, vec![4, 1]).is_ok());
    }

    #[test]
    fn longest_element_alcove() {
        for r in [rs(TypeLabel::A, 3), rs(TypeLabel::C, 3), rs(TypeLabel::G, 2)] {
            let w0 = longest_element(&r).unwrap();
            let a = alcove_of(&r, &weyl_alcove(&r, &w0)).unwrap();
            assert!(a.m().iter().all(|&m| m == -1));
        }
    }

    #[test]
    fn translation_shifts_m() {
        let c2 = rs(TypeLabel::C, 2);
        let z = fundamental_central_point(&c2);
        let lam = [2, -1];
        let t = translate(&c2, &z, &lam).unwrap();
        let a = alcove_of(&c2, &t).unwrap();
        for (root, m) in c2.positive_roots().iter().zip(a.m()) {
            assert_eq!(*m, c2.pairing_int(&lam, root));
        }
    }

    #[test]
    fn inversion_lemma_and_simple_transitivity() {
        for r in [rs(TypeLabel::A, 3), rs(TypeLabel::B, 3), rs(TypeLabel::C, 3), rs(TypeLabel::G, 2)] {
            let w = WeylGroup::enumerate(&r).unwrap();
            let mut seen = HashSet::new();
            for x in w.elements() {
                let z = weyl_alcove(&r, x);
                assert!(seen.insert(z.clone()));
                let a = alcove_of(&r, &weyl_alcove(&r, &x.inverse())).unwrap();
                for (root, m) in r.positive_roots().iter().zip(a.m()) {
                    assert_eq!(i64::from(x.inv(&r, root).unwrap()), -m);
                }
            }
            assert_eq!(weyl_alcove(&r, &WeylElement::identity(&r)), fundamental_central_point(&r));
        }
    }

    #[test]
    fn neighbor_graph_is_regular_and_involutive() {
        for r in [rs(TypeLabel::A, 2), rs(TypeLabel::C, 2), rs(TypeLabel::G, 2), rs(TypeLabel::D, 4)] {
            let z = fundamental_central_point(&r);
            // walk a few layers out and check every visited alcove
            let mut seen = HashSet::from([z.clone()]);
            let mut queue = VecDeque::from([(z, 0)]);
            while let Some((p, depth)) = queue.pop_front() {
                let nb = neighbors(&r, &p);
                assert_eq!(nb.len(), r.rank() + 1, "{p:?}");
                for x in nb {
                    assert!(CentralPoint::new(&r, x.y.clone()).is_ok());
                    assert!(neighbors(&r, &x).contains(&p));
                    if depth < 3 && seen.insert(x.clone()) {
                        queue.push_back((x, depth + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_fixes_points_already_inside() {
        let c2 = rs(TypeLabel::C, 2);
        for p in [vec![q(0, 1), q(0, 1)], vec![q(1, 2), q(0, 1)], vec![q(1, 6), q(1, 6)]] {
            let (sigma, img) = reduce_to_fundamental(&c2, &p).unwrap();
            assert!(sigma.is_identity());
            assert_eq!(img, p);
        }
    }

    #[test]
    fn reduction_of_central_points() {
        let a2 = rs(TypeLabel::A, 2);
        let rho_h = fundamental_central_point(&a2).coweight(&a2);
        for lam in [[1, 0], [0, 1], [-2, 3], [5, -7]] {
            let p: Vec<Rational> = rho_h.iter().zip(lam).map(|(a, b)| a + b).collect();
            let (sigma, img) = reduce_to_fundamental(&a2, &p).unwrap();
            assert_eq!(img, rho_h);
            assert_eq!(sigma.apply(&p), img);
            assert_eq!(sigma.inverse().apply(&img), p);
        }
        let neg: Vec<Rational> = rho_h.iter().map(|x| -x).collect();
        assert_eq!(reduce_to_fundamental(&a2, &neg).unwrap().1, rho_h);
    }

    #[test]
    fn reduction_map_preserves_lattices() {
        let r = rs(TypeLabel::B, 3);
        let p = vec![q(-7, 5), q(11, 5), q(3, 5)];
        let (sigma, img) = reduce_to_fundamental(&r, &p).unwrap();
        assert!(in_closed_fundamental(&r, &img));
        // translation lies in the coroot lattice
        let cc = r.coroot_coordinates(sigma.translation()).unwrap();
        assert!(cc.iter().all(|x| x.is_integer()));
        // linear part is a Weyl coweight action
        let w = WeylGroup::enumerate(&r).unwrap();
        assert!(w.elements().iter().any(|x| x.coweight_action() == sigma.linear()));
    }

    proptest! {
        #[test]
        fn every_central_point_reduces_to_rho_over_h(
            lam in proptest::collection::vec(-5i64..5, 3),
            idx in 0usize..48,
        ) {
            let r = rs(TypeLabel::C, 3);
            let w = WeylGroup::enumerate(&r).unwrap();
            let z = translate(&r, &weyl_alcove(&r, w.get(idx)), &lam).unwrap();
            prop_assert!(CentralPoint::new(&r, z.scaled().to_vec()).is_ok());
            let (sigma, img) = reduce_to_fundamental(&r, &z.coweight(&r)).unwrap();
            prop_assert_eq!(img, fundamental_central_point(&r).coweight(&r));
            prop_assert_eq!(sigma.apply(&z.coweight(&r)), fundamental_central_point(&r).coweight(&r));
        }

        #[test]
        fn reduction_lands_in_closed_alcove(
            num in proptest::collection::vec(-60i64..60, 4),
            den in 1i64..9,
        ) {
            let r = rs(TypeLabel::F, 4);
            let p: Vec<Rational> = num.iter().map(|&x| Rational::new(x, den)).collect();
            let (sigma, img) = reduce_to_fundamental(&r, &p).unwrap();
            prop_assert!(in_closed_fundamental(&r, &img));
            prop_assert_eq!(sigma.apply(&p), img);
        }
    }
}
