use std::path::{Path, PathBuf};

use clap::Args;
use cutforge::bounds::{
    self, blowup_scaling_check, c5_blowup_d2, c5_blowup_edge_optimum, efps_branches, haggkvist_premise,
    lemma1_bound, theorem3_regime, C5BlowUpProfile, PeelConfig, RegimeThresholds,
};
use cutforge::cuts::{
    average_expected_removed, derandomize, enumerate_family, expected_removed, induced_embeddings,
    reference_families, sample_cut, CutFamilySpec, RootConstraint, RootedCutDescriptor,
};
use cutforge::flags::{
    assemble_sdp, c5_limit_value, cut_to_flag_expression, emit_sdpa, lp_certificate, rooted_types,
    verify_certificate, Certificate, RootedType, SdpProblem, SdpaData, Verdict,
};
use cutforge::graphs::{d2_exact, enumerate_triangle_free, removed_edges, to_graph6, Bipartition, SmallGraph, MAX_D2_VERTICES};
use cutforge::rational::{format_q, parse_q, q, qi};
use cutforge::Q;
use serde_json::{json, Value};

use crate::inputs::{graph_token, load_cut, parse_probs, parse_vertices, CliResult, Usage};
use crate::report::Report;
use crate::Sourced;

fn graph_json(g: &SmallGraph) -> Value {
    json!({ "graph6": to_graph6(g), "n": g.n(), "m": g.edge_count() })
}

fn cut_json(g: &SmallGraph, cut: &Bipartition) -> Value {
    json!({
        "part_a": cut.part_a(g.n()),
        "part_b": cut.part_b(g.n()),
        "removed": removed_edges(g, cut),
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}

pub fn d2(s: &Sourced) -> CliResult<Report> {
    let g = s.source.load(s.seed)?;
    let best = d2_exact(&g)?;
    Ok(Report::new(json!({
        "command": "d2",
        "graph": graph_json(&g),
        "d2": best.removed,
        "cut": cut_json(&g, &best.cut),
    }))
    .row("graph", s.source.describe())
    .row("vertices", g.n())
    .row("edges", g.edge_count())
    .row("D2", best.removed)
    .row("part A", format!("{:?}", best.cut.part_a(g.n())))
    .row("part B", format!("{:?}", best.cut.part_b(g.n()))))
}

pub fn enumerate(n: usize) -> CliResult<Report> {
    let graphs = enumerate_triangle_free(n)?;
    let codes: Vec<String> = graphs.iter().map(to_graph6).collect();
    let mut r = Report::new(json!({ "command": "enumerate", "n": n, "count": graphs.len(), "graphs": codes }))
        .row("n", n)
        .row("count", graphs.len());
    for (i, c) in codes.iter().enumerate() {
        r = r.row(format!("#{i}"), c);
    }
    Ok(r)
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, default_value_t = 0)]
    pub min_root: usize,
    #[arg(long, default_value_t = 2)]
    pub max_root: usize,
    /// Comma-separated allowed class probabilities.
    #[arg(long, default_value = "0,1/2,1")]
    pub probs: String,
    /// Fix the root graph instead of ranging over root sizes.
    #[arg(long)]
    pub root: Option<String>,
    /// Include every descriptor in the JSON report.
    #[arg(long)]
    pub list: bool,
}

impl FamilyArgs {
    fn spec(&self) -> CliResult<CutFamilySpec> {
        let probs = parse_probs(&self.probs)?;
        Ok(match &self.root {
            Some(r) => CutFamilySpec::fixed_root(graph_token(r)?, probs),
            None => CutFamilySpec::any_root(self.min_root, self.max_root, probs),
        })
    }
}

pub fn cuts_enumerate(a: &FamilyArgs) -> CliResult<Report> {
    let spec = a.spec()?;
    let family = enumerate_family(&spec)?;
    let reference = reference_families().into_iter().find(|(_, s, _)| *s == spec);
    let mut json = json!({
        "command": "cuts enumerate",
        "spec": spec,
        "count": family.len(),
    });
    let mut r = Report::new(Value::Null).row(
        "roots",
        match &spec.root_constraint {
            RootConstraint::Any => format!("{}..={} vertices", spec.min_root_size, spec.max_root_size),
            RootConstraint::Graph(g) => to_graph6(g),
        },
    );
    r = r.row("probabilities", &a.probs).row("count", family.len());
    if let Some((name, _, published)) = reference {
        let flag = if published == family.len() { "match" } else { "mismatch" };
        json["reference"] = json!({ "family": name, "published": published, "status": flag });
        r = r.row("published count", format!("{published} ({flag})"));
    }
    if a.list {
        json["descriptors"] = serde_json::to_value(&family)?;
    }
    r.json = json;
    Ok(r)
}

#[derive(Args, Debug)]
pub struct CutOnGraph {
    #[command(flatten)]
    pub input: Sourced,
    /// Preset (single-vertex, edge, triple-edge, uniform, clebsch-025, clebsch-125) or a JSON file.
    #[arg(long)]
    pub cut: String,
    /// Comma-separated host vertices for the root; defaults to the first induced copy.
    #[arg(long)]
    pub embedding: Option<String>,
}

impl CutOnGraph {
    fn load(&self) -> CliResult<(SmallGraph, RootedCutDescriptor)> {
        Ok((self.input.source.load(self.input.seed)?, load_cut(&self.cut)?))
    }

    fn embedding(&self, g: &SmallGraph, d: &RootedCutDescriptor) -> CliResult<Vec<usize>> {
        match &self.embedding {
            Some(text) => parse_vertices(text),
            None => induced_embeddings(g, d.root())
                .into_iter()
                .next()
                .ok_or_else(|| "the root has no induced copy in the graph".into()),
        }
    }
}

pub fn cuts_expect(a: &CutOnGraph) -> CliResult<Report> {
    let (g, d) = a.load()?;
    if a.embedding.is_some() {
        let phi = a.embedding(&g, &d)?;
        let e = expected_removed(&g, &d, &phi)?;
        return Ok(Report::new(json!({
            "command": "cuts expect",
            "graph": graph_json(&g),
            "embedding": phi,
            "expected_removed": format_q(&e),
        }))
        .row("embedding", format!("{phi:?}"))
        .row("expected removed", format_q(&e)));
    }
    let embeddings = induced_embeddings(&g, d.root());
    let values = embeddings
        .iter()
        .map(|phi| expected_removed(&g, &d, phi))
        .collect::<cutforge::Result<Vec<Q>>>()?;
    let average = average_expected_removed(&g, &d)?;
    let min = values.iter().min().cloned();
    let max = values.iter().max().cloned();
    let show = |x: &Option<Q>| x.as_ref().map_or("-".to_string(), format_q);
    Ok(Report::new(json!({
        "command": "cuts expect",
        "graph": graph_json(&g),
        "embeddings": embeddings.len(),
        "average": format_q(&average),
        "min": min.as_ref().map(format_q),
        "max": max.as_ref().map(format_q),
    }))
    .row("embeddings", embeddings.len())
    .row("average", format_q(&average))
    .row("min", show(&min))
    .row("max", show(&max)))
}

pub fn cuts_sample(a: &CutOnGraph) -> CliResult<Report> {
    let seed = a.input.seed.ok_or_else(|| Usage("sampling needs --seed".into()))?;
    let (g, d) = a.load()?;
    let phi = a.embedding(&g, &d)?;
    let cut = sample_cut(&g, &d, &phi, seed)?;
    Ok(Report::new(json!({
        "command": "cuts sample",
        "graph": graph_json(&g),
        "embedding": phi,
        "seed": seed,
        "cut": cut_json(&g, &cut),
    }))
    .row("seed", seed)
    .row("part A", format!("{:?}", cut.part_a(g.n())))
    .row("removed", removed_edges(&g, &cut)))
}

pub fn cuts_derandomize(a: &CutOnGraph) -> CliResult<Report> {
    let (g, d) = a.load()?;
    let phi = a.embedding(&g, &d)?;
    let cut = derandomize(&g, &d, &phi)?;
    let expected = expected_removed(&g, &d, &phi)?;
    let removed = removed_edges(&g, &cut);
    let mut r = Report::new(json!({
        "command": "cuts derandomize",
        "graph": graph_json(&g),
        "embedding": phi,
        "expected_removed": format_q(&expected),
        "cut": cut_json(&g, &cut),
    }))
    .row("expected removed", format_q(&expected))
    .row("removed", removed)
    .row("part A", format!("{:?}", cut.part_a(g.n())));
    if qi(removed as i64) > expected {
        r = r.row("violation", "derandomized cut exceeds the expectation").failed();
    }
    Ok(r)
}

pub fn cuts_expression(cut: &str) -> CliResult<Report> {
    let d = load_cut(cut)?;
    let e = cut_to_flag_expression(&d);
    Ok(Report::new(json!({ "command": "cuts expression", "expression": e }))
        .row("root", to_graph6(&e.root))
        .row("constant", format_q(&e.constant))
        .row("linear terms", e.linear.len())
        .row("quadratic terms", e.quadratic.len()))
}

#[derive(Args, Debug)]
pub struct AssembleArgs {
    /// Constraint-graph size.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Extra cuts (presets or JSON files), added after the family.
    #[arg(long = "cut")]
    pub cuts: Vec<String>,
    /// Flag basis as ROOT/SIZE, e.g. p1/1 or p1/2; repeatable.
    #[arg(long = "basis")]
    pub bases: Vec<String>,
    /// Skip the family and use only --cut.
    #[arg(long)]
    pub no_family: bool,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_basis(text: &str) -> CliResult<Vec<RootedType>> {
    let (root, size) = text
        .split_once('/')
        .ok_or_else(|| Usage(format!("basis {text:?} is not ROOT/SIZE")))?;
    let size: usize = size.parse().map_err(|_| Usage(format!("bad basis size in {text:?}")))?;
    Ok(rooted_types(&graph_token(root)?, size, true)?)
}

pub fn sdp_assemble(a: &AssembleArgs) -> CliResult<Report> {
    let mut cuts = if a.no_family { Vec::new() } else { enumerate_family(&a.family.spec()?)? };
    for c in &a.cuts {
        cuts.push(load_cut(c)?);
    }
    let bases = a.bases.iter().map(|b| parse_basis(b)).collect::<CliResult<Vec<_>>>()?;
    let p = assemble_sdp(a.n, &cuts, &bases)?;
    write_json(&a.out, &p)?;
    Ok(Report::new(json!({
        "command": "sdp-assemble",
        "n": p.n,
        "cuts": p.cuts.len(),
        "constraint_graphs": p.constraint_graphs.len(),
        "block_sizes": p.block_sizes(),
        "out": a.out,
    }))
    .row("constraint graphs", p.constraint_graphs.len())
    .row("cuts", p.cuts.len())
    .row("block sizes", format!("{:?}", p.block_sizes()))
    .row("written", a.out.display()))
}

pub fn sdp_emit(problem: &Path, out: &Path) -> CliResult<Report> {
    let p: SdpProblem = read_json(problem)?;
    emit_sdpa(&p, out)?;
    let data = SdpaData::from_problem(&p);
    let reparsed = SdpaData::parse(&std::fs::read_to_string(out)?)?;
    let round_trip = data.matches_written(&reparsed);
    let r = Report::new(json!({
        "command": "sdp-emit",
        "variables": data.variables(),
        "block_sizes": data.block_sizes,
        "entries": data.entries.len(),
        "round_trip": round_trip,
    }))
    .row("variables", data.variables())
    .row("block sizes", format!("{:?}", data.block_sizes))
    .row("entries", data.entries.len())
    .row("round trip", round_trip);
    Ok(if round_trip { r } else { r.failed() })
}

/// Verdict plus the `C5` soundness check: a certified `λ` must dominate the
/// blow-up limit row, which is at least `2/25`.
fn judge(c: &Certificate, p: &SdpProblem, command: &str) -> CliResult<Report> {
    let verdict = verify_certificate(c, p)?;
    match verdict {
        Verdict::Certified { lambda } => {
            let mut r = Report::new(Value::Null).row("verdict", format!("certified λ = {}", format_q(&lambda)));
            let mut json = json!({ "command": command, "certified": true, "lambda": format_q(&lambda) });
            if p.n <= 8 {
                let limit = c5_limit_value(p, c)?;
                json["c5_limit_row"] = json!(format_q(&limit));
                r = r.row("C5 limit row", format_q(&limit));
                if limit > qi(2) * &lambda || limit < q(2, 25) {
                    r = r.row("violation", "C5 blow-up limit breaks the certified inequality").failed();
                }
            }
            r.json = json;
            Ok(r)
        }
        Verdict::Rejected(why) => {
            let mut json = json!({ "command": command, "certified": false, "reason": why.to_string() });
            if let cutforge::flags::Rejection::Violated { graph, lhs, rhs } = &why {
                json["witness"] = json!({ "graph6": graph, "lhs": format_q(lhs), "rhs": format_q(rhs) });
            }
            let mut r = Report::new(json).row("verdict", format!("rejected: {why}"));
            r.ok = false;
            Ok(r)
        }
    }
}

pub fn lp_certify(problem: &Path, out: &Path) -> CliResult<Report> {
    let p: SdpProblem = read_json(problem)?;
    let c = lp_certificate(&p)?;
    write_json(out, &c)?;
    let mut r = judge(&c, &p, "lp-certify")?;
    r.json["out"] = json!(out);
    Ok(r.row("written", out.display()))
}

pub fn certify(problem: &Path, certificate: &Path) -> CliResult<Report> {
    let p: SdpProblem = read_json(problem)?;
    let c: Certificate = read_json(certificate)?;
    judge(&c, &p, "certify")
}

pub fn efps(n: u64, m: u64) -> CliResult<Report> {
    let (first, second) = efps_branches(n, m)?;
    let bound = (&first).min(&second).clone();
    let eighteenth = Q::new(((n * n) as i64).into(), 18.into());
    Ok(Report::new(json!({
        "command": "bound efps",
        "n": n,
        "m": m,
        "first_branch": format_q(&first),
        "second_branch": format_q(&second),
        "bound": format_q(&bound),
        "within_n2_over_18": bound <= eighteenth,
    }))
    .row("first branch", format_q(&first))
    .row("second branch", format_q(&second))
    .row("bound", format_q(&bound))
    .row("<= n²/18", bound <= eighteenth))
}

pub fn lemma1(n: u64, stage: u64, tail: &str) -> CliResult<Report> {
    let value = lemma1_bound(n, stage, &parse_q(tail)?)?;
    Ok(Report::new(json!({ "command": "bound lemma1", "n": n, "stage": stage, "bound": format_q(&value) }))
        .row("bound", format_q(&value)))
}

#[derive(Args, Debug)]
pub struct RegimeArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Dense-regime threshold on m / C(n,2).
    #[arg(long, default_value = "0.3197")]
    pub dense: String,
    /// Sparse-regime threshold on m / C(n,2).
    #[arg(long, default_value = "0.2486")]
    pub sparse: String,
}

pub fn regime(a: &RegimeArgs) -> CliResult<Report> {
    let t = RegimeThresholds {
        dense: parse_q(&a.dense)?,
        sparse: parse_q(&a.sparse)?,
        ..RegimeThresholds::default()
    };
    let r = theorem3_regime(a.n, a.m, &t)?;
    let sharp = r.sharp_bound.as_ref().map_or("-".to_string(), format_q);
    Ok(Report::new(json!({ "command": "regime", "report": r }))
        .row("edge density", format_q(&r.edge_density))
        .row("regime", format!("{:?}", r.regime))
        .row("n²/23.5", format_q(&r.general_bound))
        .row("n²/25", sharp)
        .row("efps", format_q(&r.efps))
        .row("m/2", format_q(&r.half_edges)))
}

#[derive(Args, Debug)]
pub struct PeelArgs {
    #[command(flatten)]
    pub input: Sourced,
    #[arg(long, default_value = "3/8")]
    pub slope: String,
    /// Rounds are capped at ⌊coefficient · n⌋.
    #[arg(long, default_value = "0.0000005")]
    pub cap_coeff: String,
    /// Explicit round cap, or "inf"; overrides --cap-coeff.
    #[arg(long)]
    pub cap: Option<String>,
}

pub fn peel(a: &PeelArgs) -> CliResult<Report> {
    let g = a.input.source.load(a.input.seed)?;
    let round_cap_override = match a.cap.as_deref() {
        None => None,
        Some("inf") => Some(usize::MAX),
        Some(s) => Some(s.parse().map_err(|_| Usage(format!("bad cap {s:?}")))?),
    };
    let cfg = PeelConfig {
        slope: parse_q(&a.slope)?,
        round_cap_coeff: parse_q(&a.cap_coeff)?,
        round_cap_override,
    };
    let trace = bounds::peel(&g, &cfg)?;
    let stages: Vec<Value> = trace
        .stages
        .iter()
        .map(|s| json!({ "size": s.vertices.len(), "removed": s.removed, "degree": s.degree }))
        .collect();
    let mut r = Report::new(Value::Null)
        .row("rounds", trace.stages.len())
        .row("stop", format!("{:?}", trace.stop_reason))
        .row("final size", trace.final_vertices.len());
    for s in &trace.stages {
        r = r.row(format!("remove {}", s.removed), format!("degree {} of {}", s.degree, s.vertices.len()));
    }
    let mut json = json!({
        "command": "peel",
        "graph": graph_json(&g),
        "stages": stages,
        "final_vertices": trace.final_vertices,
        "stop_reason": trace.stop_reason,
    });
    if g.n() <= MAX_D2_VERTICES {
        let n = g.n() as u64;
        let d2 = qi(d2_exact(&g)?.removed as i64);
        let mut checks = Vec::new();
        for (vertices, sub) in trace.subgraphs() {
            let tail = qi(d2_exact(sub)?.removed as i64);
            let bound = lemma1_bound(n, vertices.len() as u64, &tail)?;
            if d2 > bound {
                r = r.row("violation", format!("Lemma 1 fails at stage {}", vertices.len())).failed();
            }
            checks.push(json!({ "stage": vertices.len(), "bound": format_q(&bound) }));
        }
        json["d2"] = json!(format_q(&d2));
        json["lemma1"] = json!(checks);
    }
    r.json = json;
    Ok(r)
}

fn parse_profile(text: &str) -> CliResult<C5BlowUpProfile> {
    let sizes: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Usage(format!("bad class size {s:?}"))))
        .collect::<Result<_, _>>()?;
    let sizes: [u64; 5] = sizes.try_into().map_err(|_| Usage("need exactly five class sizes".into()))?;
    Ok(C5BlowUpProfile::new(sizes))
}

pub fn c5_d2(sizes: &str, formula_only: bool) -> CliResult<Report> {
    let p = parse_profile(sizes)?;
    let d2 = c5_blowup_d2(&p, formula_only)?;
    let checked = p.total() <= MAX_D2_VERTICES as u64;
    Ok(Report::new(json!({
        "command": "c5-d2",
        "sizes": p.sizes,
        "d2": d2,
        "edges": p.edges(),
        "brute_force_checked": checked,
    }))
    .row("sizes", format!("{:?}", p.sizes))
    .row("edges", p.edges())
    .row("D2", d2)
    .row("brute-force checked", checked))
}

pub fn c5opt(total: u64, floor: &str, symmetric: bool) -> CliResult<Report> {
    let floor = parse_q(floor)?;
    let (p, edges) = c5_blowup_edge_optimum(total, &floor, symmetric)?;
    Ok(Report::new(json!({
        "command": "c5opt",
        "total": total,
        "floor": format_q(&floor),
        "symmetric": symmetric,
        "profile": p.sizes,
        "edges": edges,
        "d2": p.d2_formula(),
    }))
    .row("profile", format!("{:?}", p.sizes))
    .row("edges", edges)
    .row("D2", p.d2_formula()))
}

pub fn scale_check(input: &Sourced, factor: usize) -> CliResult<Report> {
    let g = input.source.load(input.seed)?;
    let s = blowup_scaling_check(&g, factor)?;
    let r = Report::new(json!({ "command": "scale-check", "graph": graph_json(&g), "report": s }))
        .row("D2(G)/n²", format_q(&s.base_ratio))
        .row("D2(G')/(kn)²", format_q(&s.blown_ratio))
        .row("holds", s.holds);
    Ok(if s.holds { r } else { r.failed() })
}

pub fn haggkvist(input: &Sourced) -> CliResult<Report> {
    let g = input.source.load(input.seed)?;
    let h = haggkvist_premise(&g);
    let missing = h.premise && g.is_triangle_free() && h.c5_coloring.is_none();
    let r = Report::new(json!({ "command": "haggkvist", "graph": graph_json(&g), "report": h }))
        .row("min degree", h.min_degree.map_or("-".into(), |d| d.to_string()))
        .row("3n/8", format_q(&h.threshold))
        .row("premise", h.premise)
        .row("C5 coloring", h.c5_coloring.as_ref().map_or("-".into(), |c| format!("{c:?}")));
    Ok(if missing { r.row("violation", "no homomorphism to C5").failed() } else { r })
}
