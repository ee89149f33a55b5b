use std::fmt::Write as _;

use alcoved::geometry::{self, CentralPoint};
use alcoved::polytope::{self, AlcovedPolytope, PolytopeSpec};
use alcoved::statistics::{self, CGroup};
use alcoved::weyl::{self, WeylGroup};
use alcoved::{groebner, Error, RootSystem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Common, Failure, Report};

type Outcome = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn root_system(c: &Common) -> Result<RootSystem, Failure> {
    let label = c
        .type_label
        .as_deref()
        .ok_or_else(|| usage("--type is required (or pass --spec)"))?;
    if label.chars().any(|ch| ch.is_ascii_digit()) {
        if c.rank.is_some() {
            return Err(usage("give the rank either in --type or in --rank, not both"));
        }
        return Ok(RootSystem::parse(label)?);
    }
    let rank = c.rank.ok_or_else(|| usage("--rank is required"))?;
    Ok(RootSystem::parse(&format!("{label}{rank}"))?)
}

fn load_spec(c: &Common) -> Result<Option<PolytopeSpec>, Failure> {
    let Some(path) = &c.spec else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Some(PolytopeSpec::from_json(&text)?))
}

/// Root system for polytope commands: from the spec file if present.
fn polytope_root_system(c: &Common) -> Result<(RootSystem, Option<PolytopeSpec>), Failure> {
    match load_spec(c)? {
        Some(spec) => Ok((spec.root_system()?, Some(spec))),
        None => Ok((root_system(c)?, None)),
    }
}

/// The spec polytope, else the simple-root box `--lo`/`--hi` (default Π).
fn polytope<'a>(c: &Common, rs: &'a RootSystem, spec: Option<&PolytopeSpec>) -> Result<AlcovedPolytope<'a>, Failure> {
    if let Some(spec) = spec {
        if c.lo.is_some() || c.hi.is_some() {
            return Err(usage("--lo/--hi cannot be combined with --spec"));
        }
        return Ok(polytope::make_polytope(rs, spec)?);
    }
    let n = rs.rank();
    let lo = c.lo.clone().unwrap_or_else(|| vec![0; n]);
    let hi = c.hi.clone().unwrap_or_else(|| vec![1; n]);
    Ok(AlcovedPolytope::from_simple_bounds(rs, &lo, &hi, &[])?)
}

fn group(c: &Common, rs: &RootSystem) -> Result<WeylGroup, Failure> {
    let budget = usize::try_from(c.budget).unwrap_or(usize::MAX);
    Ok(weyl::enumerate_weyl(rs, budget)?)
}

fn group_and_c(c: &Common, rs: &RootSystem) -> Result<(WeylGroup, CGroup), Failure> {
    let w = group(c, rs)?;
    let cg = statistics::group_c(rs, &w)?;
    Ok((w, cg))
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "NO"
    }
}

pub fn info(c: &Common) -> Outcome {
    let rs = root_system(c)?;
    let order = weyl::weyl_order_formula(&rs);
    let mut text = String::new();
    writeln!(text, "type        {}", rs.name()).unwrap();
    writeln!(text, "marks       {}", list(rs.marks())).unwrap();
    writeln!(text, "h           {}", rs.h_star()).unwrap();
    writeln!(text, "f           {}", rs.index_of_connection()).unwrap();
    writeln!(text, "|Φ+|        {}", rs.num_positive_roots()).unwrap();
    writeln!(text, "|W|         {order}").unwrap();
    writeln!(text, "θ           {}", list(rs.theta())).unwrap();
    writeln!(text, "cartan").unwrap();
    for row in rs.cartan().to_rows() {
        writeln!(text, "  {}", list(&row)).unwrap();
    }
    let json = json!({
        "type": rs.name(),
        "rank": rs.rank(),
        "marks": rs.marks(),
        "h": rs.h_star(),
        "index_of_connection": rs.index_of_connection(),
        "positive_roots": rs.positive_roots(),
        "weyl_order": order.to_string(),
        "theta": rs.theta(),
        "cartan": rs.cartan().to_rows(),
    });
    Ok(Report { text, json, holds: true })
}

pub fn enumerate(c: &Common, limit: usize) -> Outcome {
    let rs = root_system(c)?;
    let w = group(c, &rs)?;
    let mut text = format!("|W| = {} (showing {})\n", w.len(), limit.min(w.len()));
    writeln!(text, "{:>6} {:>4} {:>5}  descents d0..dr", "index", "len", "cdes").unwrap();
    let mut rows = vec![];
    for (i, e) in w.elements().iter().enumerate().take(limit) {
        let d = e.descents(&rs);
        let cd = statistics::cdes(&rs, e);
        writeln!(text, "{i:>6} {:>4} {cd:>5}  {}", e.length(), list(&d)).unwrap();
        rows.push(json!({"index": i, "length": e.length(), "cdes": cd, "descents": d, "root_action": e.root_action().to_rows()}));
    }
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "order": w.len(), "elements": rows}),
        holds: true,
    })
}

pub fn stats(c: &Common, limit: usize) -> Outcome {
    let rs = root_system(c)?;
    let (w, cg) = group_and_c(c, &rs)?;
    let table = statistics::StatTable::new(&rs, &w, &cg)?;
    let max = table.cdes.iter().copied().max().unwrap_or(0) as usize;
    let mut dist = vec![0u64; max + 1];
    for &d in &table.cdes {
        dist[d as usize] += 1;
    }
    let classes: Vec<String> = (0..cg.len()).map(|i| cg.class(i).to_string()).collect();
    let mut text = format!("|W| = {}, |C| = {}\n", w.len(), cg.len());
    writeln!(text, "cdes distribution (0..={max}): {}", list(&dist)).unwrap();
    writeln!(text, "C").unwrap();
    for (pos, &m) in cg.members().iter().enumerate() {
        writeln!(text, "  element {m:>6}  class {}", classes[pos]).unwrap();
    }
    writeln!(text, "{:>6} {:>5}  cmaj", "index", "cdes").unwrap();
    let mut rows = vec![];
    for i in 0..w.len().min(limit) {
        writeln!(text, "{i:>6} {:>5}  {}", table.cdes[i], classes[table.cmaj[i]]).unwrap();
        rows.push(json!({"index": i, "cdes": table.cdes[i], "cmaj": classes[table.cmaj[i]]}));
    }
    Ok(Report {
        text,
        json: json!({
            "type": rs.name(),
            "order": w.len(),
            "cdes_distribution": dist,
            "c_members": cg.members(),
            "c_classes": classes,
            "elements": rows,
        }),
        holds: true,
    })
}

pub fn qweyl(c: &Common) -> Outcome {
    let rs = root_system(c)?;
    let (w, cg) = group_and_c(c, &rs)?;
    let r = statistics::qweyl_check(&rs, &w, &cg)?;
    let mut text = format!("{}: q-Weyl identity\n", rs.name());
    for (class, p) in r.lhs.terms() {
        writeln!(text, "  lhs [{class}] {p}").unwrap();
    }
    for (class, p) in r.rhs.terms() {
        writeln!(text, "  rhs [{class}] {p}").unwrap();
    }
    writeln!(text, "  scalar lhs {}", r.scalar_lhs).unwrap();
    writeln!(text, "  scalar rhs {}", r.scalar_rhs).unwrap();
    writeln!(text, "identity_holds: {}", r.identity_holds).unwrap();
    let json = json!({"type": rs.name(), "report": r});
    Ok(Report { text, json, holds: r.identity_holds })
}

pub fn volume(c: &Common) -> Outcome {
    let (rs, spec) = polytope_root_system(c)?;
    let p = polytope(c, &rs, spec.as_ref())?;
    let budget = c.budget as u128;
    let vol = polytope::volume_with_budget(&p, budget)?;
    let bfs = polytope::volume_bfs(&p, budget)?;
    let pts = polytope::lattice_point_count_with_budget(&p, budget)?;
    let text = format!("{}: volume {vol}, alcoves reached by BFS {bfs}, lattice points {pts}\n", rs.name());
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "polytope": p.to_spec(), "volume": vol, "alcove_count_bfs": bfs, "lattice_points": pts}),
        holds: vol == bfs,
    })
}

pub fn vol_identity(c: &Common, random: Option<usize>, spread: i64) -> Outcome {
    let (rs, spec) = polytope_root_system(c)?;
    let (w, cg) = group_and_c(c, &rs)?;
    let budget = c.budget as u128;
    let polys: Vec<AlcovedPolytope<'_>> = match random {
        Some(count) => {
            if spec.is_some() || spread < 0 {
                return Err(usage("--random needs a type, no --spec, and --spread >= 0"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            (0..count).map(|_| polytope::random_polytope(&rs, spread, &mut rng)).collect()
        }
        None => vec![polytope(c, &rs, spec.as_ref())?],
    };
    let mut text = format!("{}: Vol(P) against the lattice-point sum over W/C (seed {})\n", rs.name(), c.seed);
    let mut rows = vec![];
    let mut holds = true;
    for p in &polys {
        let r = statistics::volume_identity(p, &w, &cg, budget)?;
        holds &= r.identity_holds;
        writeln!(
            text,
            "  volume {:>6}  bfs {:>6}  sum {:>6}  [{}]  {}",
            r.volume,
            r.alcove_count_bfs,
            r.lattice_sum,
            list(&r.per_coset),
            if r.identity_holds { "ok" } else { "FAIL" }
        )
        .unwrap();
        rows.push(json!({"polytope": p.to_spec(), "report": r}));
    }
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "seed": c.seed, "checks": rows, "identity_holds": holds}),
        holds,
    })
}

pub fn hypersimplex(c: &Common, k: Option<i64>) -> Outcome {
    let rs = root_system(c)?;
    let budget = c.budget as u128;
    if let Some(k) = k {
        let v = polytope::volume_with_budget(&polytope::hypersimplex(&rs, k)?, budget)?;
        return Ok(Report {
            text: format!("{}: Vol(Δ_{k}) = {v}\n", rs.name()),
            json: json!({"type": rs.name(), "k": k, "volume": v}),
            holds: true,
        });
    }
    let (w, cg) = group_and_c(c, &rs)?;
    let r = statistics::hypersimplex_statistic_check(&rs, &w, &cg, budget)?;
    let mut text = format!("{}: hypersimplex volumes {}\n", rs.name(), list(&r.volumes));
    writeln!(text, "  cosets by cdes of inverse  {}", list(&r.coset_counts)).unwrap();
    writeln!(text, "  elements by cdes of inverse {}", list(&r.element_counts)).unwrap();
    writeln!(text, "  constant on cosets {}", mark(r.constant_on_cosets)).unwrap();
    writeln!(text, "  generating function {}", mark(r.generating_function_holds)).unwrap();
    writeln!(text, "identity_holds: {}", r.identity_holds).unwrap();
    let holds = r.identity_holds;
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "report": r}),
        holds,
    })
}

pub fn thick_check(c: &Common, b: &[i64], k: Option<i64>, kmax: Option<i64>) -> Outcome {
    let rs = root_system(c)?;
    let budget = c.budget as u128;
    let top: i64 = rs.theta().iter().zip(b).map(|(a, x)| a * x).sum();
    let windows: Vec<(i64, i64)> = match (k, kmax) {
        (Some(k), Some(kk)) => vec![(k, kk)],
        (None, None) => (0..=top).flat_map(|k| (k + 1..=top).map(move |kk| (k, kk))).collect(),
        _ => return Err(usage("give both --k and --kmax, or neither")),
    };
    let mut text = format!("{}: thick hypersimplex, b = {}\n", rs.name(), list(b));
    let mut rows = vec![];
    let mut holds = true;
    for (k, kk) in windows {
        let r = polytope::thick_identity_check(&rs, b, k, kk, budget)?;
        holds &= r.identity_holds;
        writeln!(
            text,
            "  k {k:>3} K {kk:>3}  volume {:>6}  sum {:>6}  {}",
            r.volume,
            r.rhs,
            if r.identity_holds { "ok" } else { "FAIL" }
        )
        .unwrap();
        rows.push(json!({"k": k, "K": kk, "report": r}));
    }
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "b": b, "checks": rows, "identity_holds": holds}),
        holds,
    })
}

pub fn groebner(c: &Common) -> Outcome {
    let (rs, spec) = polytope_root_system(c)?;
    let p = polytope(c, &rs, spec.as_ref())?;
    let g = groebner::groebner_basis_with_budget(&p, c.budget as u128)?;
    let bins = g.binomials();
    let mut text = format!("{}: {} vertices, {} binomials\n", rs.name(), g.vertices().len(), bins.len());
    for bn in &bins {
        writeln!(
            text,
            "  x[{}] x[{}] -> x[{}] x[{}]",
            list(bn.lead.0.coords()),
            list(bn.lead.1.coords()),
            list(bn.trail.0.coords()),
            list(bn.trail.1.coords())
        )
        .unwrap();
    }
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "vertices": g.vertices(), "binomials": bins}),
        holds: true,
    })
}

pub fn triangulate(c: &Common) -> Outcome {
    let (rs, spec) = polytope_root_system(c)?;
    let p = polytope(c, &rs, spec.as_ref())?;
    let budget = c.budget as u128;
    let g = groebner::groebner_basis_with_budget(&p, budget)?;
    let simplices = groebner::triangulate_with(&p, &g, budget)?;
    let mut text = format!("{}: {} simplices\n", rs.name(), simplices.len());
    for s in &simplices {
        let parts: Vec<String> = s.iter().map(|v| format!("[{}]", list(v.coords()))).collect();
        writeln!(text, "  {}", parts.join(" ")).unwrap();
    }
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "count": simplices.len(), "simplices": simplices}),
        holds: true,
    })
}

pub fn cross_table(c: &Common) -> Outcome {
    let rs = root_system(c)?;
    let (w, cg) = group_and_c(c, &rs)?;
    let t = statistics::cmaj_cross_table(&rs, &w, &cg)?;
    let mut text = format!("{}: cmaj(w) by cmaj(w⁻¹), total {}\n", rs.name(), t.total);
    for (i, row) in t.entries.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if !p.is_zero() {
                writeln!(text, "  [{}] [{}]  {p}", t.classes[i], t.classes[j]).unwrap();
            }
        }
    }
    writeln!(text, "symmetric: {}", t.symmetric).unwrap();
    Ok(Report {
        text,
        json: json!({"type": rs.name(), "table": t}),
        holds: true,
    })
}

pub fn alcove_of(c: &Common, point: &[i64]) -> Outcome {
    let rs = root_system(c)?;
    let z = CentralPoint::new(&rs, point.to_vec())?;
    let a = geometry::alcove_of(&rs, &z)?;
    Ok(Report {
        text: format!("m = {}\n", list(a.m())),
        json: json!({"type": rs.name(), "point": point, "m": a.m()}),
        holds: true,
    })
}

enum Status {
    Pass,
    Fail(String),
    Skipped(String),
    Budget(String),
}

fn status_of(r: Result<bool, Error>, what: &str) -> Status {
    match r {
        Ok(true) => Status::Pass,
        Ok(false) => Status::Fail(format!("{what} does not hold")),
        Err(e) if e.is_budget() => Status::Budget(e.to_string()),
        Err(Error::UnsupportedType(_)) => Status::Skipped("unsupported type".into()),
        Err(e) => Status::Fail(e.to_string()),
    }
}

pub fn selfcheck(c: &Common, samples: usize) -> Outcome {
    let rs = root_system(c)?;
    let budget = c.budget as u128;
    let mut rows: Vec<(&str, Status)> = vec![];
    let w = group(c, &rs)?;
    rows.push((
        "weyl order formula",
        status_of(Ok(w.len() as u128 == weyl::weyl_order_formula(&rs)), "|W| = f r! Π a_i"),
    ));
    let cg = statistics::group_c(&rs, &w);
    rows.push((
        "group C descriptions",
        status_of(
            cg.as_ref()
                .map(|g| g.len() as i64 == rs.index_of_connection())
                .map_err(Clone::clone),
            "|C| = f",
        ),
    ));
    if let Ok(cg) = &cg {
        rows.push((
            "double cosets and cmaj twist",
            status_of(statistics::coset_theorem_check(&rs, &w, cg).map(|r| r.all_hold()), "coset theorems"),
        ));
        rows.push((
            "q-Weyl identity",
            status_of(statistics::qweyl_check(&rs, &w, cg).map(|r| r.identity_holds), "q-Weyl identity"),
        ));
        rows.push((
            "hypersimplex statistics",
            status_of(
                statistics::hypersimplex_statistic_check(&rs, &w, cg, budget).map(|r| r.identity_holds),
                "hypersimplex volumes",
            ),
        ));
        let spread = if rs.rank() <= 3 { 2 } else { 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let vol = (0..samples).try_fold(true, |acc, _| {
            let p = polytope::random_polytope(&rs, spread, &mut rng);
            statistics::volume_identity(&p, &w, cg, budget).map(|r| acc && r.identity_holds)
        });
        rows.push(("volume = lattice-point sum", status_of(vol, "volume identity")));
    }
    let grob = (|| -> Result<bool, Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        groebner::vertex_lattice_self_check(&rs, 100, &mut rng)?;
        let mut polys = vec![AlcovedPolytope::parallelepiped(&rs)];
        if rs.rank() <= 3 {
            polys.push(AlcovedPolytope::around_origin(&rs));
        }
        for p in &polys {
            let g = groebner::groebner_basis_with_budget(p, budget)?;
            groebner::triangulate_with(p, &g, budget)?;
        }
        Ok(true)
    })();
    rows.push(("groebner triangulation", status_of(grob, "triangulation")));

    let mut text = format!("{} selfcheck (seed {})\n", rs.name(), c.seed);
    let mut json_rows = vec![];
    let (mut failed, mut budget_hit) = (false, false);
    for (name, st) in &rows {
        let (tag, detail) = match st {
            Status::Pass => ("pass", String::new()),
            Status::Fail(d) => {
                failed = true;
                ("FAIL", d.clone())
            }
            Status::Skipped(d) => ("skipped", d.clone()),
            Status::Budget(d) => {
                budget_hit = true;
                ("budget", d.clone())
            }
        };
        let shown = if detail.is_empty() { tag.to_string() } else { format!("{tag} ({detail})") };
        writeln!(text, "  {name:<30} {shown}").unwrap();
        json_rows.push(json!({"check": name, "status": tag, "detail": detail}));
    }
    let json: Value = json!({"type": rs.name(), "seed": c.seed, "checks": json_rows});
    if budget_hit && !failed {
        print!("{}", if c.json { serde_json::to_string_pretty(&json).unwrap() + "\n" } else { text });
        return Err(Failure::Lib(Error::Budget {
            what: "selfcheck",
            needed: budget + 1,
            budget,
        }));
    }
    Ok(Report { text, json, holds: !failed })
}
