//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL` line; run with `--nocapture` to see them.

use alcoved::groebner;
use alcoved::polytope::{self, AlcovedPolytope};
use alcoved::statistics::{self, cdes, cmaj, CGroup};
use alcoved::weyl::{self, models, WeylGroup};
use alcoved::{IntPoly, RootSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n}: PASS  {what}");
    } else {
        println!("criterion {n}: FAIL  {what}: {}", failures.join("; "));
        panic!("criterion {n} failed: {}", failures.join("; "));
    }
}

fn setup(name: &str) -> (RootSystem, WeylGroup, CGroup) {
    let rs = RootSystem::parse(name).unwrap();
    let w = WeylGroup::enumerate(&rs).unwrap();
    let c = statistics::group_c(&rs, &w).unwrap();
    (rs, w, c)
}

/// Eulerian numbers `A(n, k)`, `k = 0..n-1`, by the usual recurrence.
fn eulerian_row(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for m in 2..=n {
        let mut next = vec![0i64; m];
        for (k, slot) in next.iter_mut().enumerate() {
            let keep = if k < row.len() { (k as i64 + 1) * row[k] } else { 0 };
            let bump = if k >= 1 && k - 1 < row.len() { (m - k) as i64 * row[k - 1] } else { 0 };
            *slot = keep + bump;
        }
        row = next;
    }
    row
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[test]
fn criterion_1_weyl_order_formula() {
    let known = [
        ("A1", 2u128),
        ("A2", 6),
        ("A3", 24),
        ("A4", 120),
        ("A5", 720),
        ("B2", 8),
        ("C2", 8),
        ("B3", 48),
        ("C3", 48),
        ("C4", 384),
        ("D4", 192),
        ("G2", 12),
        ("F4", 1152),
    ];
    let mut fails = vec![];
    for (name, order) in known {
        let rs = RootSystem::parse(name).unwrap();
        let bfs = weyl::enumerate_weyl(&rs, weyl::DEFAULT_GROUP_BUDGET).unwrap().len() as u128;
        let formula = weyl::weyl_order_formula(&rs);
        if bfs != formula || bfs != order {
            fails.push(format!("{name}: bfs {bfs}, formula {formula}, expected {order}"));
        }
    }
    verdict(1, "BFS order = f·r!·Π a_i for 13 types", &fails);
}

#[test]
fn criterion_2_volumes_of_pi_and_h() {
    let types = [
        "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4",
    ];
    let mut fails = vec![];
    for name in types {
        let rs = RootSystem::parse(name).unwrap();
        let expect_pi = factorial(rs.rank()) * rs.marks().iter().map(|&a| a as u64).product::<u64>();
        let pi = polytope::volume(&AlcovedPolytope::parallelepiped(&rs)).unwrap();
        let h = polytope::volume(&AlcovedPolytope::around_origin(&rs)).unwrap();
        let order = weyl::weyl_order_formula(&rs) as u64;
        if pi != expect_pi {
            fails.push(format!("{name}: Vol(Π) {pi}, expected {expect_pi}"));
        }
        if h != order {
            fails.push(format!("{name}: Vol(H) {h}, expected {order}"));
        }
    }
    verdict(2, "Vol(Π) = r!·Π a_i and Vol(H) = |W| for rank ≤ 4", &fails);
}

#[test]
fn criterion_3_type_a_hypersimplices() {
    let mut fails = vec![];
    for n in 2..=6usize {
        let rs = RootSystem::parse(&format!("A{}", n - 1)).unwrap();
        let vols: Vec<i64> = (1..n as i64)
            .map(|k| polytope::volume(&polytope::hypersimplex(&rs, k).unwrap()).unwrap() as i64)
            .collect();
        let expect = eulerian_row(n - 1);
        if vols != expect {
            fails.push(format!("A{}: {vols:?} vs {expect:?}", n - 1));
        }
        let poly = statistics::eulerian_polynomial(n - 1);
        if poly.coeffs()[1..] != expect[..] {
            fails.push(format!("A{}: Eulerian polynomial {poly}", n - 1));
        }
    }
    verdict(3, "Vol(Δ_k) are Eulerian numbers in A_1..A_5", &fails);
}

#[test]
fn criterion_4_q_weyl_identity() {
    let mut fails = vec![];
    for name in ["A1", "A2", "A3", "A4", "C2", "C3", "B3", "D4", "G2"] {
        let (rs, w, c) = setup(name);
        let r = statistics::qweyl_check(&rs, &w, &c).unwrap();
        if !r.identity_holds || r.lhs != r.rhs {
            fails.push(format!("{name}: sides differ"));
        }
        if name.starts_with('C') {
            let n = rs.rank();
            // (e^id + e^c) · A_n(q) · (1+q)^(n-1), with A_n(q) = Σ A(n,k) q^(k+1)
            let mut an = vec![0i64];
            an.extend(eulerian_row(n));
            let one_plus_q = IntPoly::from_coeffs(vec![1, 1]);
            let expect = IntPoly::from_coeffs(an) * one_plus_q.pow(n as u32 - 1);
            let classes: Vec<_> = r.lhs.terms().collect();
            if classes.len() != 2 || classes.iter().any(|(_, p)| **p != expect) {
                fails.push(format!("{name}: lhs is not (e^id + e^c)·{expect}"));
            }
        }
    }
    verdict(4, "q-Weyl identity in 9 types, C_n closed form", &fails);
}

#[test]
fn criterion_5_volume_equals_lattice_sum() {
    let mut fails = vec![];
    let mut nonempty = 0;
    for (seed, name) in [(501u64, "A2"), (502, "C2"), (503, "A3")] {
        let (rs, w, c) = setup(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..20 {
            let p = polytope::random_polytope(&rs, 2, &mut rng);
            let r = statistics::volume_identity(&p, &w, &c, polytope::DEFAULT_POINT_BUDGET).unwrap();
            if r.volume > 10_000 {
                fails.push(format!("{name} #{i}: volume {} above 10^4", r.volume));
            }
            if !r.identity_holds {
                fails.push(format!(
                    "{name} #{i}: volume {}, bfs {}, sum {}",
                    r.volume, r.alcove_count_bfs, r.lattice_sum
                ));
            }
            nonempty += usize::from(r.volume > 0);
        }
    }
    if nonempty < 20 {
        fails.push(format!("only {nonempty} of 60 random polytopes are nonempty"));
    }
    verdict(5, "Vol(P) = Σ I(P_(w)) on 60 seeded random polytopes", &fails);
}

#[test]
fn criterion_6_thick_hypersimplex() {
    let mut fails = vec![];
    let mut checked = 0;
    for name in ["A2", "C2"] {
        let rs = RootSystem::parse(name).unwrap();
        for b in [[1, 1], [1, 2], [2, 1], [2, 2]] {
            let top: i64 = rs.theta().iter().zip(&b).map(|(a, x)| a * x).sum();
            for k in 0..=top {
                for big_k in k + 1..=top {
                    let r = polytope::thick_identity_check(&rs, &b, k, big_k, polytope::DEFAULT_POINT_BUDGET).unwrap();
                    checked += 1;
                    if !r.identity_holds {
                        fails.push(format!("{name} b={b:?} k={k} K={big_k}: {} vs {}", r.volume, r.rhs));
                    }
                }
            }
        }
    }
    verdict(
        6,
        &format!("thick hypersimplex decomposition, {checked} windows in A2 and C2 (inner slices ℋ(b-1; k-l+1, K-l))"),
        &fails,
    );
}

#[test]
fn criterion_7_statistics_theorems() {
    let mut fails = vec![];
    for name in ["C2", "A3", "C3", "D4"] {
        let (rs, w, c) = setup(name);
        let r = statistics::coset_theorem_check(&rs, &w, &c).unwrap();
        if !r.all_hold() {
            fails.push(format!("{name}: {r:?}"));
        }
        if r.checked_triples != (w.len() * c.len() * c.len()) as u64 {
            fails.push(format!("{name}: only {} triples checked", r.checked_triples));
        }
    }
    verdict(7, "cdes on C\\W/C, cmaj twist, inverse symmetry", &fails);
}

/// Triangulation count, randomized confluence and weight decrease for one polytope.
fn groebner_case(label: &str, p: &AlcovedPolytope<'_>, rng: &mut ChaCha8Rng, fails: &mut Vec<String>) {
    let g = match groebner::groebner_basis(p) {
        Ok(g) => g,
        Err(e) => return fails.push(format!("{label}: {e}")),
    };
    let vol = polytope::volume(p).unwrap();
    match groebner::triangulate_with(p, &g, polytope::DEFAULT_POINT_BUDGET) {
        Ok(t) if t.len() as u64 == vol => {}
        Ok(t) => fails.push(format!("{label}: {} simplices, volume {vol}", t.len())),
        Err(e) => fails.push(format!("{label}: {e}")),
    }
    let nv = g.vertices().len();
    for _ in 0..1000 {
        let deg = rng.gen_range(1..=4);
        let m: Vec<usize> = (0..deg).map(|_| rng.gen_range(0..nv)).collect();
        // normal_form fails on any step that does not lower the weight
        let a = g.normal_form(&m, Some(&mut *rng));
        let b = g.normal_form(&m, Some(&mut *rng));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b && g.is_standard(&a) => {}
            (Ok(a), Ok(b)) => return fails.push(format!("{label}: {m:?} reduces to {a:?} and {b:?}")),
            (Err(e), _) | (_, Err(e)) => return fails.push(format!("{label}: {e}")),
        }
    }
}

#[test]
fn criterion_8_groebner_triangulation() {
    let mut fails = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(808);

    let a2 = RootSystem::parse("A2").unwrap();
    let mut found = 0;
    while found < 5 {
        let p = polytope::random_polytope(&a2, 2, &mut rng);
        let v = polytope::volume(&p).unwrap();
        if (1..=50).contains(&v) {
            groebner_case(&format!("A2 random #{found} (Vol {v})"), &p, &mut rng, &mut fails);
            found += 1;
        }
    }
    let a3 = RootSystem::parse("A3").unwrap();
    for k in 1..=3 {
        groebner_case(&format!("A3 Δ_{k}"), &polytope::hypersimplex(&a3, k).unwrap(), &mut rng, &mut fails);
    }
    let c2 = RootSystem::parse("C2").unwrap();
    groebner_case("C2 H", &AlcovedPolytope::around_origin(&c2), &mut rng, &mut fails);

    // The c_i do not span the vertex set in D4; see groebner::vertex_lattice_closed.
    let d4 = RootSystem::parse("D4").unwrap();
    let p = AlcovedPolytope::from_simple_bounds(&d4, &[0; 4], &[1; 4], &[(d4.theta_index(), 0, 2)]).unwrap();
    groebner_case("D4 Π ∩ {0 ≤ (λ,θ) ≤ 2}", &p, &mut rng, &mut fails);

    verdict(8, "|triangulate(P)| = Vol(P), confluence, weight decrease", &fails);
}

#[test]
fn criterion_9_model_cross_checks() {
    let mut fails = vec![];
    for n in 2..=5usize {
        let (rs, w, c) = setup(&format!("A{}", n - 1));
        let cyc = w.index_of(&models::from_permutation(&rs, &models::long_cycle(n)).unwrap()).unwrap();
        let power = |k: usize| (0..k).fold(c.members()[c.identity()], |acc, _| w.product(acc, cyc));
        for p in models::all_permutations(n) {
            let x = models::from_permutation(&rs, &p).unwrap();
            let mut d = vec![u8::from(p[n - 1] > p[0])];
            d.extend((0..n - 1).map(|i| u8::from(p[i] > p[i + 1])));
            let maj: usize = (0..n - 1).filter(|&i| p[i] > p[i + 1]).map(|i| i + 1).sum();
            if x.descents(&rs) != d || cdes(&rs, &x) != d.iter().map(|&v| v as i64).sum::<i64>() {
                fails.push(format!("A{}: descents of {p:?}", n - 1));
            }
            let got = c.members()[cmaj(&rs, &c, &x).unwrap()];
            if got != power((n - maj % n) % n) {
                fails.push(format!("A{}: cmaj of {p:?} is not c^(-maj)", n - 1));
            }
        }
    }
    for n in 2..=3usize {
        let (rs, _, c) = setup(&format!("C{n}"));
        let rank = |v: i64| if v > 0 { v } else { 2 * n as i64 + 1 + v };
        for p in models::all_signed_permutations(n) {
            let x = models::from_signed_permutation(&rs, &p).unwrap();
            let mut d = vec![u8::from(p[0] > 0)];
            d.extend((0..n - 1).map(|i| u8::from(rank(p[i]) > rank(p[i + 1]))));
            d.push(u8::from(p[n - 1] < 0));
            let weighted: i64 = d.iter().zip(rs.marks_with_zero()).map(|(&v, a)| v as i64 * a).sum();
            if x.descents(&rs) != d || cdes(&rs, &x) != weighted {
                fails.push(format!("C{n}: descents of {p:?}"));
            }
            if (cmaj(&rs, &c, &x).unwrap() == c.identity()) != (p[n - 1] > 0) {
                fails.push(format!("C{n}: cmaj of {p:?}"));
            }
        }
    }
    verdict(9, "permutation and signed-permutation models, cmaj = c^(-maj)", &fails);
}
