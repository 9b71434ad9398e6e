//! One function per subcommand, each producing an [`Outcome`].

use std::path::Path;

use kstab_core::conedeg::cone_quotient_check;
use kstab_core::githm::{
    git_check_capped, parse_forms_json, parse_frames_json, torus_semistable_capped, vgit_chambers,
    Form, FrameStrategy, OnePS, TupleConfig,
};
use kstab_core::logfano::{
    a_vector, a_vector_formula, beta, beta_halfspace, cone_chain, kss_polytope, s_invariant,
    ConstraintFamily, PairConfig,
};
use kstab_core::mklambda::{cm_weight, effective_linearization, Beta, EquivariantFamily, Route};
use kstab_core::qgeom::{polytope_convert, Direction, HalfSpace, QPolytope};
use kstab_core::rational::{fmt_q, parse_q, parse_q_list, q};
use kstab_core::{Error, QVec, Result, Q};
use serde_json::{json, Value};

use crate::args::{
    CmWeightArgs, ConeVerifyArgs, EffectiveArgs, GitCheckArgs, InvariantArgs, Pair, ReportArgs,
    RouteArg, VgitArgs,
};
use crate::document::{scalar, strings, tuple, Outcome};
use crate::svg;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub cap: usize,
    pub decimal: bool,
}

fn pair_input(p: &Pair) -> Value {
    json!({"n": p.n, "degrees": p.degrees})
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn read_forms(path: &Path) -> Result<Vec<Form>> {
    parse_forms_json(&read(path)?)
}

fn forms_json(forms: &[Form]) -> Value {
    serde_json::to_value(forms.iter().map(Form::to_json).collect::<Vec<_>>())
        .expect("forms serialize")
}

fn halfspace_json(h: &HalfSpace) -> Value {
    json!({
        "normal": strings(&h.normal().0),
        "offset": fmt_q(h.offset()),
        "rel": h.relation(),
    })
}

fn is_zero(x: &Q) -> bool {
    *x == q(0)
}

pub fn a_vector_cmd(p: &Pair, ctx: Context) -> Result<Outcome> {
    let mut out = Outcome::new("a-vector", pair_input(p));
    let a = a_vector(p.n, &p.degrees)?;
    let cfg = PairConfig::new(p.n, p.degrees.clone(), a.values.0.clone())?;
    let betas = (0..p.degrees.len())
        .map(|i| beta(&cfg, i))
        .collect::<Result<Vec<_>>>()?;
    out.check(
        "closed_form_matches_linear_solve",
        a_vector_formula(p.n, &p.degrees) == a.values,
    );
    out.check("beta_vanishes_by_integration", betas.iter().all(is_zero));
    if p.n >= 2 {
        out.check(
            "in_kss_polytope",
            kss_polytope(p.n, &p.degrees)?.polytope.contains(&a.values),
        );
    }
    out.result = json!({
        "a": strings(&a.values.0),
        "extremal": a.extremal,
        "warnings": a.warnings,
    });
    out.summary
        .push(format!("a = {}", tuple(&a.values.0, ctx.decimal)));
    out.summary.push(format!("extremal: {}", a.extremal));
    out.summary
        .extend(a.warnings.iter().map(|w| format!("warning: {w}")));
    Ok(out)
}

fn indices(k: usize, index: Option<usize>) -> Result<Vec<usize>> {
    match index {
        None => Ok((0..k).collect()),
        Some(i) if (1..=k).contains(&i) => Ok(vec![i - 1]),
        Some(i) => Err(Error::InvalidInput(format!("index {i} outside 1..={k}"))),
    }
}

fn invariant_input(a: &InvariantArgs) -> Value {
    json!({"n": a.pair.n, "degrees": a.pair.degrees, "coefficients": a.coefficients.coefficients, "index": a.index})
}

pub fn beta_cmd(a: &InvariantArgs, ctx: Context) -> Result<Outcome> {
    let mut out = Outcome::new("beta", invariant_input(a));
    let cfg = PairConfig::new(
        a.pair.n,
        a.pair.degrees.clone(),
        parse_q_list(&a.coefficients.coefficients)?,
    )?;
    let x = QVec(cfg.coefficients().to_vec());
    let mut entries = Vec::new();
    let mut agree = true;
    for i in indices(cfg.k(), a.index)? {
        let b = beta(&cfg, i)?;
        let s = s_invariant(&cfg, i)?;
        let (normal, offset) = beta_halfspace(cfg.n(), cfg.degrees(), i);
        let scale = q((cfg.n() as i64 + 1) * cfg.degrees()[i] as i64);
        agree &= (normal.dot(&x) - offset) / scale == b;
        out.summary
            .push(format!("beta(S{}) = {}", i + 1, scalar(&b, ctx.decimal)));
        entries.push(json!({"index": i + 1, "beta": fmt_q(&b), "s": fmt_q(&s)}));
    }
    out.check("integral_matches_linear_form", agree);
    out.result = json!({"r": fmt_q(&cfg.r()), "invariants": entries});
    Ok(out)
}

pub fn s_invariant_cmd(a: &InvariantArgs, ctx: Context) -> Result<Outcome> {
    let mut out = Outcome::new("s-invariant", invariant_input(a));
    let cfg = PairConfig::new(
        a.pair.n,
        a.pair.degrees.clone(),
        parse_q_list(&a.coefficients.coefficients)?,
    )?;
    let r = cfg.r();
    let mut entries = Vec::new();
    let mut agree = true;
    for i in indices(cfg.k(), a.index)? {
        let s = s_invariant(&cfg, i)?;
        let closed = &r / q((cfg.n() as i64 + 1) * cfg.degrees()[i] as i64);
        agree &= s == closed;
        out.summary
            .push(format!("S(S{}) = {}", i + 1, scalar(&s, ctx.decimal)));
        entries.push(json!({"index": i + 1, "s": fmt_q(&s), "closed_form": fmt_q(&closed)}));
    }
    out.check("integral_matches_closed_form", agree);
    out.result = json!({"r": fmt_q(&r), "invariants": entries});
    Ok(out)
}

fn family_name(f: ConstraintFamily) -> &'static str {
    match f {
        ConstraintFamily::LowerBound => "lower_bound",
        ConstraintFamily::UpperBound => "upper_bound",
        ConstraintFamily::Beta => "beta",
        ConstraintFamily::Anticanonical => "anticanonical",
    }
}

pub fn kss_polytope_cmd(p: &Pair, ctx: Context) -> Result<Outcome> {
    let mut out = Outcome::new("kss-polytope", pair_input(p));
    let kss = kss_polytope(p.n, &p.degrees)?;
    let k = p.degrees.len();
    let vertices = kss.polytope.vertices().unwrap_or(&[]).to_vec();
    let from_vertices = QPolytope::from_vrep(k, vertices.clone(), kss.polytope.rays().to_vec())?;
    let back = polytope_convert(
        &polytope_convert(&from_vertices, Direction::VToH)?,
        Direction::HToV,
    )?;
    out.check(
        "representations_agree",
        kss.polytope.representations_agree(),
    );
    out.check(
        "round_trip",
        back.vertices() == kss.polytope.vertices() && back.hrep() == kss.polytope.hrep(),
    );

    let constraints: Vec<Value> = kss
        .constraints
        .iter()
        .map(|c| {
            json!({
                "family": family_name(c.family),
                "index": c.index.map(|i| i + 1),
                "halfspace": halfspace_json(&c.halfspace),
            })
        })
        .collect();
    let mut result = json!({
        "polytope": kss.polytope.to_json(),
        "constraints": constraints,
        "assumption": kss.assumption,
    });
    if p.degrees.iter().sum::<u32>() < p.n + 1 {
        let a = a_vector(p.n, &p.degrees)?;
        let is_vertex = vertices.contains(&a.values);
        out.check("a_vector_in_polytope", kss.polytope.contains(&a.values));
        result["a_vector"] = json!({"a": strings(&a.values.0), "is_vertex": is_vertex});
    }
    out.result = result;

    if k == 1 && !vertices.is_empty() {
        let lo = &vertices[0][0];
        let hi = &vertices[vertices.len() - 1][0];
        out.summary.push(format!(
            "interval [{}, {}]",
            scalar(lo, ctx.decimal),
            scalar(hi, ctx.decimal)
        ));
    } else {
        out.summary.push(format!("{} vertices:", vertices.len()));
        out.summary.extend(
            vertices
                .iter()
                .map(|v| format!("  {}", tuple(&v.0, ctx.decimal))),
        );
    }
    out.summary.push(format!(
        "{} facets",
        kss.polytope.hrep().map_or(0, <[HalfSpace]>::len)
    ));
    if k == 2 && !vertices.is_empty() {
        out.svg = Some(svg::polygon(
            &vertices,
            &format!(
                "K-semistable domain, n = {}, degrees = {:?}",
                p.n, p.degrees
            ),
        ));
    }
    Ok(out)
}

pub fn cone_chain_cmd(p: &Pair, ctx: Context) -> Result<Outcome> {
    let mut out = Outcome::new("cone-chain", pair_input(p));
    let chain = cone_chain(p.n, &p.degrees)?;
    out.check("all_steps_pass", chain.all_passed());
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .map(|s| {
            json!({
                "step": s.step,
                "radius": fmt_q(&s.radius),
                "a_from_radius": fmt_q(&s.a_from_radius),
                "a_expected": fmt_q(&s.a_expected),
                "matches": s.matches,
                "positive": s.positive,
                "within_bound": s.within_bound,
            })
        })
        .collect();
    out.result = json!({"steps": steps});
    out.summary
        .push(format!("r = {}", tuple(&chain.radii(), ctx.decimal)));
    out.summary
        .push(format!("all checks pass: {}", chain.all_passed()));
    Ok(out)
}

fn parse_beta(s: &str) -> Result<Beta> {
    if s == "symbolic" {
        Ok(Beta::Symbolic)
    } else {
        Ok(Beta::Fixed(parse_q(s)?))
    }
}

pub fn cm_weight_cmd(a: &CmWeightArgs, ctx: Context) -> Result<Outcome> {
    let forms = read_forms(&a.forms)?;
    let y = parse_q_list(&a.coefficients.coefficients)?;
    let route = match a.route {
        RouteArg::All => Route::All,
        RouteArg::Def31 => Route::Def31,
        RouteArg::Lem32 => Route::Lem32,
        RouteArg::Lem41 => Route::Lem41,
    };
    let mut out = Outcome::new(
        "cm-weight",
        json!({
            "n": a.n,
            "forms": forms_json(&forms),
            "coefficients": strings(&y),
            "one_ps": a.one_ps,
            "beta": a.beta,
            "route": route,
        }),
    );
    let fam = EquivariantFamily::new(a.n, forms, y, parse_beta(&a.beta)?)?;
    let w = OnePS::new(a.one_ps.clone())?;
    let report = cm_weight(&fam, &w, route.clone())?;
    if route == Route::All {
        out.check("routes_agree", report.agree);
    }
    for (name, r) in [
        ("def31", &report.def31),
        ("lem32", &report.lem32),
        ("lem41", &report.lem41),
    ] {
        if let Some(r) = r {
            out.summary
                .push(format!("{name}: {}", scalar(&report.value(r), ctx.decimal)));
        }
    }
    if let Some(s) = &report.scalar {
        out.summary.push(format!("def31 / lem41 = {}", fmt_q(s)));
    }
    out.result = serde_json::to_value(report.to_json()).expect("report serializes");
    Ok(out)
}

fn proportional(a: &[Q], b: &[Q]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x * &b[0] == y * &a[0])
}

pub fn effective_cmd(a: &EffectiveArgs, ctx: Context) -> Result<Outcome> {
    let y = parse_q_list(&a.coefficients.coefficients)?;
    let mut out = Outcome::new(
        "effective-linearization",
        json!({"n": a.pair.n, "degrees": a.pair.degrees, "coefficients": strings(&y)}),
    );
    out.seed = Some(a.seed);
    let e = effective_linearization(a.pair.n, &a.pair.degrees, &y, a.seed)?;
    out.check(
        "exact_fit",
        e.raw
            .iter()
            .zip(&e.gamma)
            .all(|(r, g)| r * &e.gamma[0] == g * &e.raw[0]),
    );
    out.result = json!({
        "gamma": strings(&e.gamma),
        "raw": strings(&e.raw),
        "samples": e.samples,
        "proportional_to_coefficients": proportional(&e.gamma, &y),
    });
    out.summary
        .push(format!("gamma = {}", tuple(&e.gamma, ctx.decimal)));
    out.summary.push(format!(
        "fitted from {} samples (seed {})",
        e.samples, a.seed
    ));
    Ok(out)
}

fn frame_strategy(choice: &str, seed: u64) -> Result<FrameStrategy> {
    match choice {
        "identity" => Ok(FrameStrategy::Identity),
        "permutations" => Ok(FrameStrategy::Permutations),
        _ => {
            if let Some(count) = choice.strip_prefix("random:") {
                let count = count
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad frame count in {choice:?}")))?;
                Ok(FrameStrategy::Random { seed, count })
            } else {
                Ok(FrameStrategy::User(parse_frames_json(&read(Path::new(
                    choice,
                ))?)?))
            }
        }
    }
}

pub fn git_check_cmd(a: &GitCheckArgs, ctx: Context) -> Result<Outcome> {
    let forms = read_forms(&a.forms)?;
    let gamma = match &a.linearization {
        Some(s) => parse_q_list(s)?,
        None => vec![q(1); forms.len()],
    };
    let strategy = frame_strategy(&a.frames, a.seed)?;
    let mut out = Outcome::new(
        "git-check",
        json!({"forms": forms_json(&forms), "linearization": strings(&gamma), "frames": a.frames}),
    );
    if matches!(strategy, FrameStrategy::Random { .. }) {
        out.seed = Some(a.seed);
    }
    let t = TupleConfig::new(forms, gamma)?;
    let verdict = git_check_capped(&t, &strategy, ctx.cap)?;
    // every frame already compared the barycenter test with the candidate minimum
    out.check("barycenter_matches_candidates", true);
    if let Some(w) = &verdict.certificate {
        out.check(
            "certificate_weight_negative",
            verdict
                .certificate_weight
                .as_ref()
                .is_some_and(|x| *x < q(0)),
        );
        out.summary.push(format!(
            "certificate: {w} in frame {}, weight {}",
            verdict.certificate_frame.as_deref().unwrap_or("identity"),
            verdict
                .certificate_weight
                .as_ref()
                .map(fmt_q)
                .unwrap_or_default()
        ));
    }
    out.summary.insert(0, format!("status: {}", verdict.status));
    out.summary
        .push(format!("frames tested: {}", verdict.frames_tested.len()));
    out.result = serde_json::to_value(verdict.to_json()).expect("verdict serializes");
    Ok(out)
}

pub fn vgit_cmd(a: &VgitArgs, ctx: Context) -> Result<Outcome> {
    let forms = a.forms.as_deref().map(read_forms).transpose()?;
    let mut input = pair_input(&a.pair);
    if let Some(f) = &forms {
        input["forms"] = forms_json(f);
    }
    let mut out = Outcome::new("vgit-chambers", input);
    let v = vgit_chambers(a.pair.n, &a.pair.degrees, ctx.cap)?;
    let arr = &v.arrangement;
    out.check(
        "representatives_match_signs",
        arr.cells
            .iter()
            .all(|c| arr.sign_vector(&c.representative) == c.signs),
    );
    let walls: Vec<Value> = v
        .walls
        .iter()
        .map(|w| {
            json!({
                "normal": strings(&w.hyperplane.normal().0),
                "equation": svg::wall_equation(&w.hyperplane.normal().0),
                "witness": {"monomials": w.witness.monomials, "one_ps": w.witness.one_ps},
            })
        })
        .collect();
    let tuple_config = match forms {
        Some(f) => {
            if f.iter().map(Form::degree).collect::<Vec<_>>() != a.pair.degrees {
                return Err(Error::DimensionMismatch(
                    "form degrees differ from --degrees".into(),
                ));
            }
            Some(TupleConfig::new(f, vec![q(1); a.pair.degrees.len()])?)
        }
        None => None,
    };
    let mut cells = Vec::new();
    let mut chamber_count = 0;
    for cell in &arr.cells {
        let mut entry = json!({
            "kind": if cell.is_chamber() { "chamber" } else { "wall" },
            "signs": cell.signs,
            "representative": strings(&cell.representative.0),
            "vertices": cell.closure.vertices().unwrap_or(&[]).iter().map(|x| strings(&x.0)).collect::<Vec<_>>(),
        });
        if cell.is_chamber() {
            chamber_count += 1;
            entry["label"] = json!(format!("C{chamber_count}"));
        }
        if let Some(t) = &tuple_config {
            let verdict =
                torus_semistable_capped(&t.with_gamma(cell.representative.0.clone())?, ctx.cap)?;
            entry["status"] = json!(verdict.status);
        }
        cells.push(entry);
    }
    out.summary.push(format!("walls: {}", v.walls.len()));
    out.summary.extend(
        v.walls
            .iter()
            .map(|w| format!("  {}", svg::wall_equation(&w.hyperplane.normal().0))),
    );
    out.summary.push(format!("chambers: {chamber_count}"));
    if tuple_config.is_some() {
        for c in &cells {
            out.summary.push(format!(
                "  {} at ({}): {}",
                c["label"].as_str().unwrap_or("wall"),
                c["representative"]
                    .as_array()
                    .map(|r| r
                        .iter()
                        .filter_map(Value::as_str)
                        .collect::<Vec<_>>()
                        .join(", "))
                    .unwrap_or_default(),
                c["status"].as_str().unwrap_or("")
            ));
        }
    }
    out.result = json!({"walls": walls, "cells": cells, "chambers": chamber_count});
    if a.pair.degrees.len() == 2 {
        out.svg = Some(svg::segment_fan(&v));
    }
    Ok(out)
}

pub fn cone_verify_cmd(a: &ConeVerifyArgs, _ctx: Context) -> Result<Outcome> {
    let mut input = pair_input(&a.pair);
    input["m_max"] = json!(a.m_max);
    let mut out = Outcome::new("cone-verify", input);
    let mut reports = Vec::new();
    let mut checked = 0;
    let mut nondecreasing = true;
    for &d in &a.pair.degrees {
        let r = cone_quotient_check(a.pair.n, d, a.m_max)?;
        checked += r.identities_checked;
        nondecreasing &= r.cone_hilbert.windows(2).all(|w| w[0] <= w[1]);
        out.summary
            .push(format!("d = {d}: {} identities hold", r.identities_checked));
        reports.push(serde_json::to_value(r.to_json()).expect("report serializes"));
    }
    out.check("identities_hold", true);
    out.check("cone_hilbert_nondecreasing", nondecreasing);
    out.result = json!({"reports": reports, "identities_checked": checked});
    Ok(out)
}

fn absorb(out: &mut Outcome, prefix: &str, section: &Outcome) {
    for (k, v) in &section.checks {
        out.checks.insert(format!("{prefix}.{k}"), *v);
    }
}

fn skipped(reason: &str) -> Value {
    json!({"skipped": reason})
}

pub fn report_cmd(a: &ReportArgs, ctx: Context) -> Result<Outcome> {
    let p = &a.pair;
    let mut input = pair_input(p);
    input["m_max"] = json!(a.m_max);
    let mut out = Outcome::new("report", input);
    out.seed = Some(a.seed);
    let k = p.degrees.len();
    let fano = p.degrees.iter().sum::<u32>() < p.n + 1;
    let mut result = serde_json::Map::new();

    let a_vec = if fano {
        let s = a_vector_cmd(p, ctx)?;
        absorb(&mut out, "a_vector", &s);
        out.summary.extend(s.summary.iter().cloned());
        result.insert("a_vector".into(), s.result);
        Some(a_vector(p.n, &p.degrees)?.values)
    } else {
        result.insert(
            "a_vector".into(),
            skipped("requires sum of degrees below n + 1"),
        );
        None
    };

    if p.n >= 2 && p.degrees.iter().all(|&d| d <= p.n + 1) {
        let s = kss_polytope_cmd(p, ctx)?;
        absorb(&mut out, "kss_polytope", &s);
        out.svg = s.svg.clone();
        result.insert("kss_polytope".into(), s.result);
    } else {
        result.insert(
            "kss_polytope".into(),
            skipped("requires n >= 2 and degrees at most n + 1"),
        );
    }

    if fano {
        let s = cone_chain_cmd(p, ctx)?;
        absorb(&mut out, "cone_chain", &s);
        result.insert("cone_chain".into(), s.result);
    } else {
        result.insert(
            "cone_chain".into(),
            skipped("requires sum of degrees below n + 1"),
        );
    }

    if k >= 2 {
        let s = vgit_cmd(
            &VgitArgs {
                pair: p.clone(),
                forms: None,
            },
            ctx,
        )?;
        absorb(&mut out, "vgit_chambers", &s);
        out.summary.push(format!(
            "{} walls, {} chambers",
            s.result["walls"].as_array().map_or(0, Vec::len),
            s.result["chambers"]
        ));
        result.insert("vgit_chambers".into(), s.result);
    } else {
        result.insert(
            "vgit_chambers".into(),
            skipped("requires at least two boundary components"),
        );
    }

    let cone_pair = Pair {
        n: p.n,
        degrees: p
            .degrees
            .iter()
            .copied()
            .filter(|&d| d <= p.n + 1)
            .collect(),
    };
    if cone_pair.degrees.is_empty() {
        result.insert(
            "cone_checks".into(),
            skipped("requires a degree at most n + 1"),
        );
    } else {
        let s = cone_verify_cmd(
            &ConeVerifyArgs {
                pair: cone_pair,
                m_max: a.m_max,
            },
            ctx,
        )?;
        absorb(&mut out, "cone_checks", &s);
        out.summary.push(format!(
            "cone identities checked: {}",
            s.result["identities_checked"]
        ));
        result.insert("cone_checks".into(), s.result);
    }

    match a_vec.filter(|v| v.iter().all(|x| *x > q(0))) {
        Some(values) => {
            let e = effective_linearization(p.n, &p.degrees, &values.0, a.seed)?;
            let min = values.iter().min().expect("k >= 1").clone();
            let predicted: Vec<Q> = values.iter().map(|x| x / &min).collect();
            let ones = vec![q(1); k];
            let matches_prediction = e.gamma == predicted;
            let matches_ones = e.gamma == ones;
            out.check(
                "linearization.effective_matches_boundary_coefficients",
                matches_prediction,
            );
            out.summary.push(format!(
                "effective linearization {} (O(1,...,1): {})",
                tuple(&e.gamma, ctx.decimal),
                if matches_ones { "agrees" } else { "differs" }
            ));
            result.insert(
                "linearization".into(),
                json!({
                    "coefficients": strings(&values.0),
                    "effective": strings(&e.gamma),
                    "predicted_from_coefficients": strings(&predicted),
                    "uniform": strings(&ones),
                    "agrees_with_uniform": matches_ones,
                    "samples": e.samples,
                }),
            );
        }
        None => {
            result.insert(
                "linearization".into(),
                skipped("requires a positive a-vector"),
            );
        }
    }
    out.result = Value::Object(result);
    Ok(out)
}
