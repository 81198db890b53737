//! The individual commands. Each returns a [`Report`] carrying all three renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use dpquot::exactgeo::{
    example_ids, verify_cremona_order5, verify_example as run_example, CremonaReport, ExampleReport,
};
use dpquot::lattice::PicardLattice;
use dpquot::mmp::{self, EquivariantSurface, Verdict, VerdictEngine};
use dpquot::perm::S5;
use dpquot::quotient::{
    self, fmt_q, hj_resolve, LemmaReport, ResolutionData, SingularityType, CATALOGUE, TABLE1,
};
use dpquot::weyl::{
    generate_weyl, invariant_rank, orbits_on_curves, subgroup_from_words, ActionGroup,
};
use dpquot::Q;

use crate::{classify, run_parallel, Report, RunConfig, RunError, UsageError};

/// Id of the order-5 Cremona check among the example ids.
pub const CREMONA_ID: &str = "dp5el5";

type CmdResult = Result<Report, RunError>;

fn q_json(x: Q) -> Value {
    if x.is_integer() {
        json!(x.to_integer())
    } else {
        json!(fmt_q(x))
    }
}

fn lattice(cfg: &RunConfig) -> Result<PicardLattice, RunError> {
    PicardLattice::del_pezzo(cfg.degree()?).map_err(classify)
}

/// `(G, H)`: the subgroup named by the group words and the one also containing the Galois words.
fn groups(ambient: &ActionGroup, cfg: &RunConfig) -> Result<(ActionGroup, ActionGroup), RunError> {
    let g_words: Vec<&str> = cfg.group_spec.iter().map(String::as_str).collect();
    let h_words: Vec<&str> = cfg
        .group_spec
        .iter()
        .chain(&cfg.galois_spec)
        .map(String::as_str)
        .collect();
    let g = subgroup_from_words(ambient, &g_words).map_err(classify)?;
    let h = subgroup_from_words(ambient, &h_words).map_err(classify)?;
    Ok((g, h))
}

pub fn lines(cfg: &RunConfig) -> CmdResult {
    let lat = lattice(cfg)?;
    let curves = lat.enumerate_minus_one_curves();
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut valences = Vec::new();
    for c in &curves {
        let meets: Vec<String> = curves
            .iter()
            .filter(|d| lat.dot(c, d) == 1)
            .map(|d| lat.name(d))
            .collect();
        valences.push(meets.len());
        writeln!(text, "{:<6} meets {}", lat.name(c), meets.join(" ")).unwrap();
        rows.push(vec![lat.name(c), meets.len().to_string(), meets.join(" ")]);
        entries.push(json!({ "name": lat.name(c), "meets": meets }));
    }
    let regular = valences
        .first()
        .copied()
        .filter(|v| valences.iter().all(|w| w == v));
    writeln!(
        text,
        "{} curves, incidence graph {}",
        curves.len(),
        match regular {
            Some(v) => format!("{v}-regular"),
            None => "not regular".into(),
        }
    )
    .unwrap();
    let json = json!({ "degree": lat.degree(), "count": curves.len(), "regular": regular, "curves": entries });
    Ok(Report::new(
        json,
        &["curve", "valence", "meets"],
        rows,
        text,
    ))
}

pub fn weyl_order(cfg: &RunConfig) -> CmdResult {
    let lat = lattice(cfg)?;
    let w = generate_weyl(&lat).map_err(classify)?;
    let json = json!({ "degree": lat.degree(), "order": w.order() });
    let rows = vec![vec![lat.degree().to_string(), w.order().to_string()]];
    Ok(Report::new(
        json,
        &["degree", "order"],
        rows,
        format!("{}\n", w.order()),
    ))
}

pub fn orbits(cfg: &RunConfig) -> CmdResult {
    let lat = lattice(cfg)?;
    let ambient = generate_weyl(&lat).map_err(classify)?;
    let (_, h) = groups(&ambient, cfg)?;
    let orbits = orbits_on_curves(&h, &lat.enumerate_minus_one_curves());
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for (i, o) in orbits.iter().enumerate() {
        let names: Vec<String> = o.curves.iter().map(|c| lat.name(c)).collect();
        writeln!(
            text,
            "{}{}",
            names.join(" "),
            if o.disjoint && names.len() > 1 {
                "  (disjoint)"
            } else {
                ""
            }
        )
        .unwrap();
        rows.push(vec![
            i.to_string(),
            names.len().to_string(),
            o.disjoint.to_string(),
            names.join(" "),
        ]);
        entries.push(json!({ "curves": names, "disjoint": o.disjoint }));
    }
    let json = json!({ "degree": lat.degree(), "group_order": h.order(), "orbits": entries });
    Ok(Report::new(
        json,
        &["orbit", "size", "disjoint", "curves"],
        rows,
        text,
    ))
}

fn verdict_parts(v: &Verdict) -> (&'static str, String) {
    match v {
        Verdict::Rational { route } => ("Rational", route.clone()),
        Verdict::ExceptionalCase(tag) => ("ExceptionalCase", tag.clone()),
        Verdict::OutOfScope(why) => ("OutOfScope", why.clone()),
    }
}

pub fn verdict(cfg: &RunConfig) -> CmdResult {
    let degree = cfg.degree()?;
    let (s, v) = if degree == 4 {
        let engine = VerdictEngine::new().map_err(classify)?;
        let (g, h) = groups(&engine.rep.ambient, cfg)?;
        let s = EquivariantSurface::new(h, g, cfg.has_point).map_err(classify)?;
        let v = engine.main_verdict(&s).map_err(classify)?;
        (s, v)
    } else {
        let lat = lattice(cfg)?;
        let ambient = generate_weyl(&lat).map_err(classify)?;
        let (g, h) = groups(&ambient, cfg)?;
        let s = EquivariantSurface::new(h, g, cfg.has_point).map_err(classify)?;
        let v = mmp::main_verdict(&s).map_err(classify)?;
        (s, v)
    };
    let (kind, detail) = verdict_parts(&v);
    let json = json!({
        "degree": degree,
        "group": cfg.group_spec,
        "galois": cfg.galois_spec,
        "has_point": cfg.has_point,
        "order_g": s.g_subgroup.order(),
        "order_h": s.group.order(),
        "rho_g": invariant_rank(&s.g_subgroup),
        "rho_h": invariant_rank(&s.group),
        "verdict": kind,
        "detail": detail,
    });
    let rows = vec![vec![
        degree.to_string(),
        cfg.group_spec.join(" "),
        cfg.galois_spec.join(" "),
        cfg.has_point.to_string(),
        kind.to_string(),
        detail.clone(),
    ]];
    Ok(Report::new(
        json,
        &[
            "degree",
            "group",
            "galois",
            "has_point",
            "verdict",
            "detail",
        ],
        rows,
        format!("{kind} {detail}\n"),
    ))
}

fn unknown(kind: &str, id: &str, available: &[String]) -> RunError {
    RunError::Usage(UsageError(format!(
        "unknown {kind} id `{id}`; available: {}",
        available.join(", ")
    )))
}

fn selected(cfg: &RunConfig, available: &[String], kind: &str) -> Result<Vec<String>, RunError> {
    match &cfg.id {
        Some(id) if available.contains(id) => Ok(vec![id.clone()]),
        Some(id) => Err(unknown(kind, id, available)),
        None => Ok(available.to_vec()),
    }
}

fn failed_task(id: &str, e: &dyn std::fmt::Display) -> Report {
    let json = json!({ "id": id, "passed": false, "error": e.to_string() });
    Report::new(
        json,
        &[],
        vec![vec![id.into(), "error".into(), e.to_string()]],
        format!("{id}: ERROR {e}\n"),
    )
    .with_ok(false)
}

pub fn replay_report(r: &LemmaReport) -> Report {
    let mut m = Map::new();
    m.insert("lemma_id".into(), json!(r.lemma_id));
    m.insert("passed".into(), json!(r.passed()));
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| json!({ "op": s.op, "inputs": s.inputs, "expected": s.expected, "computed": s.computed, "passed": s.passed() }))
        .collect();
    m.insert("steps".into(), Value::Array(steps));
    m.insert("annotations".into(), json!(r.annotations));
    m.insert("K2_quotient".into(), q_json(r.k2_quotient));
    m.insert("K2_final".into(), q_json(r.k2_final));
    m.insert("K2_resolved".into(), q_json(r.k2_resolved));
    m.insert("descriptor".into(), json!(r.descriptor));

    let mut text = format!(
        "{}: {} ({} checks)  K^2 {} -> resolved {} -> final {}  {}\n",
        r.lemma_id,
        if r.passed() { "PASS" } else { "FAIL" },
        r.steps.len(),
        fmt_q(r.k2_quotient),
        fmt_q(r.k2_resolved),
        fmt_q(r.k2_final),
        r.descriptor
    );
    for s in &r.steps {
        let mark = if s.passed() { "ok  " } else { "FAIL" };
        writeln!(
            text,
            "  {mark} {} [{}] expected {} computed {}",
            s.op, s.inputs, s.expected, s.computed
        )
        .unwrap();
    }
    for a in &r.annotations {
        writeln!(text, "  note {a}").unwrap();
    }
    let rows = r
        .steps
        .iter()
        .map(|s| {
            vec![
                r.lemma_id.clone(),
                s.op.clone(),
                s.inputs.clone(),
                s.expected.clone(),
                s.computed.clone(),
                s.passed().to_string(),
            ]
        })
        .collect();
    Report::new(
        Value::Object(m),
        &["lemma_id", "op", "inputs", "expected", "computed", "passed"],
        rows,
        text,
    )
    .with_ok(r.passed())
}

pub fn replay(cfg: &RunConfig) -> CmdResult {
    let available: Vec<String> = CATALOGUE.iter().map(|s| s.to_string()).collect();
    let ids = selected(cfg, &available, "lemma")?;
    let parts = run_parallel(&ids, cfg.jobs.unwrap_or(1), |id| {
        match quotient::replay(id) {
            Ok(r) => replay_report(&r),
            Err(e) => failed_task(id, &e),
        }
    });
    Ok(if cfg.all {
        Report::merge(parts)
    } else {
        parts.into_iter().next().expect("one id")
    })
}

fn q_cell(x: Q) -> String {
    fmt_q(x)
}

fn chain_cell(r: &ResolutionData) -> String {
    r.chain
        .iter()
        .map(|a| (-a).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn resolution_json(r: &ResolutionData) -> Value {
    json!({
        "m": r.sing.m,
        "q": r.sing.q,
        "type": r.sing.to_string(),
        "chain": r.chain.iter().map(|a| -a).collect::<Vec<_>>(),
        "delta_K2": q_json(r.delta_k2),
        "delta_C2": q_json(r.delta_c2),
        "delta_D2": q_json(r.delta_d2),
    })
}

fn resolution_row(r: &ResolutionData) -> Vec<String> {
    vec![
        r.sing.m.to_string(),
        r.sing.q.to_string(),
        r.sing.to_string(),
        chain_cell(r),
        q_cell(r.delta_k2),
        q_cell(r.delta_c2),
        q_cell(r.delta_d2),
    ]
}

fn resolution_text(r: &ResolutionData) -> String {
    format!(
        "{:<10} chain {:<12} dK^2 {:<5} dC^2 {:<5} dD^2 {}\n",
        r.sing.to_string(),
        chain_cell(r),
        q_cell(r.delta_k2),
        q_cell(r.delta_c2),
        q_cell(r.delta_d2)
    )
}

const RESOLUTION_HEADER: [&str; 7] = [
    "m", "q", "type", "chain", "delta_K2", "delta_C2", "delta_D2",
];

pub fn table1() -> CmdResult {
    let mut json = Vec::new();
    let mut rows = Vec::new();
    let mut text = String::new();
    for (m, q) in TABLE1 {
        let s = SingularityType::new(m, q).map_err(classify)?;
        let r = hj_resolve(s);
        json.push(resolution_json(&r));
        rows.push(resolution_row(&r));
        text.push_str(&resolution_text(&r));
    }
    Ok(Report::new(
        Value::Array(json),
        &RESOLUTION_HEADER,
        rows,
        text,
    ))
}

pub fn hj(cfg: &RunConfig) -> CmdResult {
    let (m, q) = cfg
        .hj
        .ok_or_else(|| UsageError("`hj` needs m and q".into()))?;
    match SingularityType::normalized(m, q) {
        None => {
            let json = json!({ "m": m, "q": q, "smooth": true });
            Ok(Report::new(
                json,
                &RESOLUTION_HEADER,
                Vec::new(),
                format!("1/{m}(1,{q}) is smooth\n"),
            ))
        }
        Some(s) => {
            let r = hj_resolve(s);
            let mut text = String::new();
            if (s.m, s.q) != (m, q.rem_euclid(m)) {
                writeln!(text, "1/{m}(1,{q}) normalizes to {s}").unwrap();
            }
            text.push_str(&resolution_text(&r));
            Ok(Report::new(
                resolution_json(&r),
                &RESOLUTION_HEADER,
                vec![resolution_row(&r)],
                text,
            ))
        }
    }
}

pub fn example_report(r: &ExampleReport) -> Report {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "what": c.what, "expected": c.expected, "computed": c.computed, "passed": c.passed() }))
        .collect();
    let fixed: Vec<Value> = r
        .fixed_points
        .iter()
        .map(|(g, pts)| json!({ "element": g, "points": pts }))
        .collect();
    let json = json!({
        "id": r.example_id,
        "surface": r.surface,
        "passed": r.passed(),
        "lines": r.lines,
        "galois_image": r.galois_image,
        "rho_x": r.rho_x,
        "rho_g": r.rho_g,
        "rho_y": r.rho_y,
        "fixed_points": fixed,
        "verdict": r.verdict,
        "checks": checks,
        "annotations": r.annotations,
    });
    let mut text = format!(
        "{} ({}): {}  rho {} rho^G {} rho(Y) {}  image <{}>\n  {}\n",
        r.example_id,
        r.surface,
        if r.passed() { "PASS" } else { "FAIL" },
        r.rho_x,
        r.rho_g,
        r.rho_y.map_or("-".into(), |v| v.to_string()),
        r.galois_image.join(", "),
        r.verdict
    );
    for c in &r.checks {
        let mark = if c.passed() { "ok  " } else { "FAIL" };
        writeln!(
            text,
            "  {mark} {}: expected {} computed {}",
            c.what, c.expected, c.computed
        )
        .unwrap();
    }
    for a in &r.annotations {
        writeln!(text, "  note {a}").unwrap();
    }
    let rows = r
        .checks
        .iter()
        .map(|c| {
            vec![
                r.example_id.clone(),
                c.what.clone(),
                c.expected.clone(),
                c.computed.clone(),
                c.passed().to_string(),
            ]
        })
        .collect();
    Report::new(
        json,
        &["id", "check", "expected", "computed", "passed"],
        rows,
        text,
    )
    .with_ok(r.passed())
}

pub fn cremona_report(r: &CremonaReport) -> Report {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "what": c.what, "expected": c.expected, "computed": c.computed, "passed": c.passed() }))
        .collect();
    let polys: Vec<Value> = r
        .char_polys
        .iter()
        .map(|(p, c)| json!({ "point": p, "char_poly": c }))
        .collect();
    let json = json!({
        "id": CREMONA_ID,
        "passed": r.passed(),
        "common_factor_degree": r.common_factor_degree,
        "fixed_points": r.fixed_points,
        "char_polys": polys,
        "checks": checks,
    });
    let mut text = format!(
        "{CREMONA_ID}: {}\n",
        if r.passed() { "PASS" } else { "FAIL" }
    );
    for c in &r.checks {
        let mark = if c.passed() { "ok  " } else { "FAIL" };
        writeln!(
            text,
            "  {mark} {}: expected {} computed {}",
            c.what, c.expected, c.computed
        )
        .unwrap();
    }
    let rows = r
        .checks
        .iter()
        .map(|c| {
            vec![
                CREMONA_ID.into(),
                c.what.clone(),
                c.expected.clone(),
                c.computed.clone(),
                c.passed().to_string(),
            ]
        })
        .collect();
    Report::new(
        json,
        &["id", "check", "expected", "computed", "passed"],
        rows,
        text,
    )
    .with_ok(r.passed())
}

/// Example ids in manifest order: the Cremona check, then the quartic examples.
pub fn all_example_ids() -> Result<Vec<String>, RunError> {
    let mut ids = vec![CREMONA_ID.to_string()];
    ids.extend(example_ids().map_err(|e| RunError::Failed(e.into()))?);
    Ok(ids)
}

pub fn verify_example(cfg: &RunConfig) -> CmdResult {
    let available = all_example_ids()?;
    let ids = selected(cfg, &available, "example")?;
    let parts = run_parallel(&ids, cfg.jobs.unwrap_or(1), |id| {
        let out = if id == CREMONA_ID {
            verify_cremona_order5().map(|r| cremona_report(&r))
        } else {
            run_example(id).map(|r| example_report(&r))
        };
        out.unwrap_or_else(|e| failed_task(id, &e))
    });
    Ok(if cfg.all {
        Report::merge(parts)
    } else {
        parts.into_iter().next().expect("one id")
    })
}

pub fn s5_lemma() -> CmdResult {
    let r = S5::new().verify_normal_subgroup_lemma();
    let ok = r.counterexamples.is_empty();
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|w| {
            vec![
                w.order.to_string(),
                w.group.join(" "),
                w.witness_class.to_string(),
                w.witness.join(" "),
            ]
        })
        .collect();
    let entries: Vec<Value> = r
        .rows
        .iter()
        .map(|w| json!({ "order": w.order, "group": w.group, "witness_class": w.witness_class, "witness": w.witness }))
        .collect();
    let json = json!({
        "subgroup_count": r.subgroup_count,
        "class_count": r.class_count,
        "classes": entries,
        "counterexamples": r.counterexamples,
    });
    let mut text = format!(
        "{} subgroups in {} conjugacy classes\n",
        r.subgroup_count, r.class_count
    );
    for w in &r.rows {
        writeln!(text, "  order {:<3} witness {}", w.order, w.witness_class).unwrap();
    }
    writeln!(
        text,
        "{}",
        if ok {
            "every nontrivial subgroup has a witness"
        } else {
            "counterexamples found"
        }
    )
    .unwrap();
    Ok(Report::new(
        json,
        &["order", "group", "witness_class", "witness"],
        rows,
        text,
    )
    .with_ok(ok))
}
