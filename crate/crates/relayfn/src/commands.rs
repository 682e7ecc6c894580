//! The batch commands. Each returns an [`Output`]; nothing here prints or
//! touches the file system except to read inputs.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use relayfn_core::entropy::{
    chromatic_entropy, complementary_entropy_sequence, conditional_graph_entropy, graph_entropy, EntropyResult,
    ProbabilisticGraph, Witness,
};
use relayfn_core::graphalg::{chromatic_number, clique_number, connected_components, is_perfect};
use relayfn_core::graphs::{
    aux_graph, confusability, f_rook_graph, n_instance_graph, rook_graph, Graph, IndepSetChannel, Mode, Side,
};
use relayfn_core::model::Blocks;
use relayfn_core::protocol::{
    bfn_verify, coloring_equivalence, enumerate_color_covers, relay_computability, scheme_rates, verify_zero_error,
    Conflict,
};
use relayfn_core::regions::{
    bfn_general_bounds, bfn_xor_perfect_route, bfn_xor_rate, cutset_outer, eps_inner_ri2, eval_eps_ri1, eval_zero_ri1,
    exchange_eps_region, relay_xor_zero_region, search_ri1, zero_inner_ri2, AuxChoice, AuxComponent, Region3,
    SearchConfig,
};
use relayfn_core::{AuxCondition, Config, ProblemInstance, Rational};

use crate::acceptance::{run_all, Criterion};
use crate::error::{CliError, Result};
use crate::graph_io::{adjacency_text, edge_csv};
use crate::instance_io::load_instance;
use crate::query::parse_queries;
use crate::report::{fmt, fmt_triple, table, Output};
use crate::scheme_io::{block_key, parse_scheme, SchemeFile};

/// Everything a command reads from the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Fixture name or instance file path.
    pub instance: String,
    pub n: usize,
    pub mode: Mode,
    pub nmax: usize,
    /// Choice and cover enumeration budget.
    pub budget: usize,
    pub seed: u64,
    /// Overrides the solver stopping tolerance.
    pub tol: Option<f64>,
    pub query: Option<PathBuf>,
    pub scheme: Option<PathBuf>,
    /// Also export the auxiliary graph of singleton choices.
    pub aux: bool,
    pub limits: relayfn_core::Limits,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            instance: String::new(),
            n: 1,
            mode: Mode::Restricted,
            nmax: 2,
            budget: 2000,
            seed: 0,
            tol: None,
            query: None,
            scheme: None,
            aux: false,
            limits: relayfn_core::Limits::default(),
        }
    }
}

impl RunConfig {
    pub fn core_config(&self) -> Config {
        let mut cfg = Config {
            limits: self.limits,
            ..Config::default()
        };
        cfg.solver.seed = self.seed;
        if let Some(t) = self.tol {
            cfg.solver.value_tol = t;
        }
        cfg
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.nmax == 0 || self.budget == 0 {
            return Err(CliError::Config("--n, --nmax and --budget must be positive".into()));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("--tol must be a positive number, got {t}")));
            }
        }
        Ok(())
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Restricted => "restricted",
        Mode::Unrestricted => "unrestricted",
    }
}

fn instance_name(inst: &ProblemInstance) -> String {
    inst.name.clone().unwrap_or_else(|| "unnamed".into())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "?".into(), |v| v.to_string())
}

// ---------------------------------------------------------------- graph

#[derive(Serialize)]
struct GraphSummary {
    family: String,
    vertices: Option<usize>,
    edges: Option<usize>,
    chromatic_number: Option<usize>,
    clique_number: Option<usize>,
    perfect: Option<bool>,
    components: Option<usize>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct GraphReport {
    instance: String,
    n: usize,
    families: Vec<GraphSummary>,
}

fn summarize(family: &str, g: &Graph, cfg: &Config) -> GraphSummary {
    let mut notes = Vec::new();
    let keep = |r: relayfn_core::Result<usize>, notes: &mut Vec<String>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let chi = keep(chromatic_number(g, cfg.limits.exact_vertices).map(|c| c.0), &mut notes);
    let omega = keep(clique_number(g, cfg.limits.exact_vertices).map(|c| c.0), &mut notes);
    let perfect = match is_perfect(g, cfg.limits.perfect_vertices) {
        Ok(p) => Some(p),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    GraphSummary {
        family: family.into(),
        vertices: Some(g.n()),
        edges: Some(g.edge_count()),
        chromatic_number: chi,
        clique_number: omega,
        perfect,
        components: Some(connected_components(g, None).len()),
        notes,
    }
}

/// Builds every graph family, summarizes it and exports it.
pub fn cmd_graph(rc: &RunConfig) -> Result<Output> {
    rc.validate()?;
    let inst = load_instance(&rc.instance)?;
    let cfg = rc.core_config();
    let cap = cfg.limits.product_vertices;
    let mut families: Vec<(String, relayfn_core::Result<Graph>)> = vec![
        ("rook".into(), Ok(rook_graph(&inst.pmf.x_alpha, &inst.pmf.y_alpha))),
        ("f_rook".into(), Ok(f_rook_graph(&inst))),
        ("confusability_x".into(), Ok(confusability(&inst, Side::A))),
        ("confusability_y".into(), Ok(confusability(&inst, Side::B))),
    ];
    for mode in [Mode::Restricted, Mode::Unrestricted] {
        families.push((
            format!("n{}_instance_{}", rc.n, mode_name(mode)),
            n_instance_graph(&inst, rc.n, mode, cap),
        ));
    }
    if rc.aux {
        let g = IndepSetChannel::singletons(&confusability(&inst, Side::A), AuxCondition::U1).and_then(|u1| {
            let u2 = IndepSetChannel::singletons(&confusability(&inst, Side::B), AuxCondition::U2)?;
            aux_graph(&inst, &u1, &u2)
        });
        families.push(("aux_singletons".into(), g));
    }

    let mut summaries = Vec::new();
    let mut files = Vec::new();
    let mut text = format!("instance {}\n", instance_name(&inst));
    for (name, g) in families {
        let s = match g {
            Ok(g) => {
                files.push((format!("{name}.adj"), adjacency_text(&g)));
                files.push((format!("{name}.csv"), edge_csv(&g)));
                summarize(&name, &g, &cfg)
            }
            Err(e) => GraphSummary {
                family: name.clone(),
                vertices: None,
                edges: None,
                chromatic_number: None,
                clique_number: None,
                perfect: None,
                components: None,
                notes: vec![e.to_string()],
            },
        };
        text.push_str(&format!(
            "{}: |V|={} |E|={} χ={} ω={} perfect={} components={}\n",
            s.family,
            opt(s.vertices),
            opt(s.edges),
            opt(s.chromatic_number),
            opt(s.clique_number),
            opt(s.perfect),
            opt(s.components)
        ));
        for note in &s.notes {
            text.push_str(&format!("  note: {note}\n"));
        }
        summaries.push(s);
    }
    let report = GraphReport {
        instance: instance_name(&inst),
        n: rc.n,
        families: summaries,
    };
    let mut out = Output::new(&report, text, true);
    out.files = files;
    Ok(out)
}

// ---------------------------------------------------------------- entropy

#[derive(Serialize)]
struct EntropyEntry {
    graph: String,
    quantity: String,
    value: Option<f64>,
    /// Certified lower end.
    lower: Option<f64>,
    gap: Option<f64>,
    iterations: Option<usize>,
    converged: Option<bool>,
    restart_spread: Option<f64>,
    witness: Option<String>,
    error: Option<String>,
}

#[derive(Serialize)]
struct SequenceEntry {
    graph: String,
    terms: Vec<(usize, f64)>,
    truncated: Option<String>,
    perfect: Option<bool>,
    limit: Option<f64>,
    lower: f64,
    upper: f64,
    monotone: bool,
}

#[derive(Serialize)]
struct EntropyReport {
    instance: String,
    entries: Vec<EntropyEntry>,
    complementary: Vec<SequenceEntry>,
    warnings: Vec<String>,
}

fn set_text(g: &Graph, set: &[usize]) -> String {
    let labels: Vec<String> = set.iter().map(|&v| g.label(v).to_string()).collect();
    format!("{{{}}}", labels.join(","))
}

fn witness_text(g: &Graph, w: &Witness) -> String {
    match w {
        Witness::Coloring(c) => {
            let classes: Vec<String> = c.classes.iter().map(|s| set_text(g, s)).collect();
            format!("classes {}", classes.join(" "))
        }
        Witness::Channel(ch) => {
            let sets: Vec<String> = ch.sets.iter().map(|s| set_text(g, s)).collect();
            format!("sets {}", sets.join(" "))
        }
    }
}

fn entry(graph: &str, quantity: &str, g: &Graph, r: relayfn_core::Result<EntropyResult>, warnings: &mut Vec<String>) -> EntropyEntry {
    match r {
        Ok(r) => {
            let c = r.convergence.as_ref();
            if let Some(c) = c {
                if !c.converged {
                    warnings.push(format!(
                        "{quantity} of {graph}: not converged after {} iterations, gap {:.3e}",
                        c.iterations, c.gap
                    ));
                }
                if c.spread_flag {
                    warnings.push(format!("{quantity} of {graph}: restart spread {:.3e}", c.spread));
                }
            }
            EntropyEntry {
                graph: graph.into(),
                quantity: quantity.into(),
                value: Some(r.value),
                lower: Some(r.lower()),
                gap: Some(c.map_or(0.0, |c| c.gap)),
                iterations: c.map(|c| c.iterations),
                converged: Some(c.map_or(true, |c| c.converged)),
                restart_spread: c.map(|c| c.spread),
                witness: r.witness.as_ref().map(|w| witness_text(g, w)),
                error: None,
            }
        }
        Err(e) => {
            warnings.push(format!("{quantity} of {graph}: {e}"));
            EntropyEntry {
                graph: graph.into(),
                quantity: quantity.into(),
                value: None,
                lower: None,
                gap: None,
                iterations: None,
                converged: None,
                restart_spread: None,
                witness: None,
                error: Some(e.to_string()),
            }
        }
    }
}

fn joint_rows(inst: &ProblemInstance, side: Side) -> Vec<Vec<Rational>> {
    match side {
        Side::A => (0..inst.nx()).map(|x| (0..inst.ny()).map(|y| inst.p(x, y)).collect()).collect(),
        Side::B => (0..inst.ny()).map(|y| (0..inst.nx()).map(|x| inst.p(x, y)).collect()).collect(),
    }
}

/// Chromatic, graph, conditional and complementary graph entropies of the
/// confusability and f-modified rook's graphs.
pub fn cmd_entropy(rc: &RunConfig) -> Result<Output> {
    rc.validate()?;
    let inst = load_instance(&rc.instance)?;
    let cfg = rc.core_config();
    let graphs = [
        ("confusability_x", confusability(&inst, Side::A), inst.pmf.marginal_x(), Some(Side::A)),
        ("confusability_y", confusability(&inst, Side::B), inst.pmf.marginal_y(), Some(Side::B)),
        ("f_rook", f_rook_graph(&inst), inst.pmf.mass.clone(), None),
    ];
    let mut entries = Vec::new();
    let mut sequences = Vec::new();
    let mut warnings = Vec::new();
    for (name, g, mass, side) in &graphs {
        let pg = ProbabilisticGraph::new(g.clone(), mass.clone())?;
        entries.push(entry(name, "chromatic", g, chromatic_entropy(&pg, cfg.limits.chromatic_entropy_vertices), &mut warnings));
        entries.push(entry(name, "graph", g, graph_entropy(&pg, &cfg), &mut warnings));
        if let Some(side) = side {
            let r = conditional_graph_entropy(g, &joint_rows(&inst, *side), &cfg);
            entries.push(entry(name, "conditional", g, r, &mut warnings));
            let s = complementary_entropy_sequence(&pg, rc.nmax, &cfg)?;
            if !s.monotone {
                warnings.push(format!("complementary sequence of {name} is not non-increasing"));
            }
            sequences.push(SequenceEntry {
                graph: name.to_string(),
                terms: s.terms,
                truncated: s.truncated.map(|e| e.to_string()),
                perfect: s.perfect,
                limit: s.limit,
                lower: s.lower,
                upper: s.upper,
                monotone: s.monotone,
            });
        }
    }

    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.graph.clone(),
                e.quantity.clone(),
                e.value.map_or_else(|| "-".into(), fmt),
                e.gap.map_or_else(|| "-".into(), |g| format!("{g:.1e}")),
                match (&e.error, e.converged) {
                    (Some(err), _) => err.clone(),
                    (None, Some(false)) => "not converged".into(),
                    _ => "ok".into(),
                },
            ]
        })
        .collect();
    let mut text = format!("instance {}\n", instance_name(&inst));
    text.push_str(&table(&["graph", "quantity", "value", "gap", "status"], &rows));
    for s in &sequences {
        let terms: Vec<String> = s.terms.iter().map(|(n, a)| format!("a_{n}={}", fmt(*a))).collect();
        text.push_str(&format!(
            "complementary {}: {} bounds [{}, {}]{}\n",
            s.graph,
            terms.join(" "),
            fmt(s.lower),
            fmt(s.upper),
            s.truncated.as_ref().map_or_else(String::new, |t| format!(" (stopped: {t})"))
        ));
    }
    for w in &warnings {
        text.push_str(&format!("warning: {w}\n"));
    }
    let report = EntropyReport {
        instance: instance_name(&inst),
        entries,
        complementary: sequences,
        warnings,
    };
    Ok(Output::new(&report, text, true))
}

// ---------------------------------------------------------------- region

#[derive(Serialize)]
struct RegionEntry {
    name: String,
    generators: Vec<[f64; 3]>,
    warnings: Vec<String>,
    error: Option<String>,
}

#[derive(Serialize)]
struct BfnEntry {
    lower: f64,
    upper: f64,
    upper_gap: f64,
    xor_rate: f64,
    xor_perfect_route: Option<f64>,
}

#[derive(Serialize)]
struct QueryAnswer {
    line: usize,
    text: String,
    point: [f64; 3],
    member: Vec<(String, bool)>,
}

#[derive(Serialize)]
struct RegionReport {
    instance: String,
    n: usize,
    mode: String,
    regions: Vec<RegionEntry>,
    broadcast: BfnEntry,
    queries: Vec<QueryAnswer>,
}

const CORNER_AXES: &str = "corners.csv: one row per generator of each region.
region: region name; each region is the up-closed convex hull of its rows.
r_a: rate from A to the relay, bits per source symbol.
r_b: rate from B to the relay, bits per source symbol.
r_c: relay broadcast rate, bits per source symbol.
";

/// Membership tolerance per coordinate.
pub const MEMBER_TOL: f64 = 1e-9;

/// All inner and outer bounds, the cover cloud at `n`, and query answers.
pub fn cmd_region(rc: &RunConfig) -> Result<Output> {
    rc.validate()?;
    let inst = load_instance(&rc.instance)?;
    let cfg = rc.core_config();
    let queries = match &rc.query {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            parse_queries(&text, &p.display().to_string())?
        }
        None => Vec::new(),
    };
    let search = |eps: bool| -> relayfn_core::Result<Region3> {
        let sc = SearchConfig {
            budget: rc.budget,
            grid: 2,
            eps,
            ..SearchConfig::default()
        };
        let r = search_ri1(&inst, &sc, &cfg)?;
        Ok(r.region)
    };
    let level = AuxComponent::level_sets(&inst).map(AuxChoice::single);
    let level_zero = level
        .clone()
        .and_then(|c| eval_zero_ri1(&inst, &c))
        .map(|z| Region3::corner(z.rates));
    let level_eps = level.and_then(|c| eval_eps_ri1(&inst, &c)).map(|e| e.region());
    let covers = enumerate_color_covers(&inst, rc.n, rc.mode, rc.budget, cfg.limits.product_vertices).map(|c| c.region);

    let regions: Vec<(String, relayfn_core::Result<Region3>)> = vec![
        ("zero_inner_ri2".into(), zero_inner_ri2(&inst, &cfg)),
        ("eps_inner_ri2".into(), eps_inner_ri2(&inst, &cfg)),
        ("zero_ri1_search".into(), search(false)),
        ("eps_ri1_search".into(), search(true)),
        ("zero_ri1_level_sets".into(), level_zero),
        ("eps_ri1_level_sets".into(), level_eps),
        (format!("color_covers_n{}_{}", rc.n, mode_name(rc.mode)), covers),
        ("cutset_outer".into(), cutset_outer(&inst, &cfg)),
        ("relay_xor_zero".into(), relay_xor_zero_region(&inst)),
        ("exchange_eps".into(), Ok(exchange_eps_region(&inst))),
    ];
    let bfn = bfn_general_bounds(&inst, &cfg)?;
    let broadcast = BfnEntry {
        lower: bfn.lower,
        upper: bfn.upper,
        upper_gap: bfn.upper_gap,
        xor_rate: bfn_xor_rate(&inst),
        xor_perfect_route: bfn_xor_perfect_route(&inst, &cfg).ok().and_then(|m| m.exact),
    };

    let answers: Vec<QueryAnswer> = queries
        .iter()
        .map(|q| QueryAnswer {
            line: q.line,
            text: q.text.clone(),
            point: q.point.as_array(),
            member: regions
                .iter()
                .filter_map(|(name, r)| r.as_ref().ok().map(|r| (name.clone(), r.member(&q.point, MEMBER_TOL))))
                .collect(),
        })
        .collect();

    let mut text = format!("instance {}  n={}  mode={}\n", instance_name(&inst), rc.n, mode_name(rc.mode));
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["region", "r_a", "r_b", "r_c"]).unwrap();
    let mut entries = Vec::new();
    for (name, r) in regions {
        match r {
            Ok(r) => {
                let corners: Vec<String> = r.generators.iter().map(|g| fmt_triple(g.as_array())).collect();
                text.push_str(&format!("{name}: {}\n", corners.join(" ")));
                for w in &r.warnings {
                    text.push_str(&format!("  warning: {w}\n"));
                }
                for g in &r.generators {
                    csv.write_record([name.clone(), g.r_a.to_string(), g.r_b.to_string(), g.r_c.to_string()])
                        .unwrap();
                }
                entries.push(RegionEntry {
                    name,
                    generators: r.generators.iter().map(|g| g.as_array()).collect(),
                    warnings: r.warnings,
                    error: None,
                });
            }
            Err(e) => {
                text.push_str(&format!("{name}: unavailable ({e})\n"));
                entries.push(RegionEntry {
                    name,
                    generators: Vec::new(),
                    warnings: Vec::new(),
                    error: Some(e.to_string()),
                });
            }
        }
    }
    text.push_str(&format!(
        "broadcast: lower {} upper {} (gap {:.1e}) xor rate {}\n",
        fmt(broadcast.lower),
        fmt(broadcast.upper),
        broadcast.upper_gap,
        fmt(broadcast.xor_rate)
    ));
    for a in &answers {
        let verdicts: Vec<String> = a
            .member
            .iter()
            .map(|(n, m)| format!("{n}={}", if *m { "yes" } else { "no" }))
            .collect();
        text.push_str(&format!("query {} {}: {}\n", a.line, fmt_triple(a.point), verdicts.join(" ")));
    }
    let report = RegionReport {
        instance: instance_name(&inst),
        n: rc.n,
        mode: mode_name(rc.mode).into(),
        regions: entries,
        broadcast,
        queries: answers,
    };
    let mut out = Output::new(&report, text, true);
    out.files.push(("corners.csv".into(), String::from_utf8(csv.into_inner().unwrap()).unwrap()));
    out.files.push(("corners_axes.txt".into(), CORNER_AXES.into()));
    Ok(out)
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct VerifyReport {
    instance: String,
    kind: String,
    n: usize,
    mode: String,
    decodable_at_a: bool,
    decodable_at_b: bool,
    witness_a: Option<[String; 2]>,
    witness_b: Option<[String; 2]>,
    error_prob: Option<String>,
    rates: Vec<String>,
    rates_bits: Vec<f64>,
    relay_computable: Option<bool>,
    relay_witness: Option<[String; 2]>,
    coloring_agrees: Option<bool>,
}

fn pair_label(inst: &ProblemInstance, n: usize, (ix, iy): (usize, usize)) -> String {
    let bx = Blocks::new(inst.nx(), n);
    let by = Blocks::new(inst.ny(), n);
    format!(
        "({} | {})",
        block_key(&inst.pmf.x_alpha, &bx.decode(ix)),
        block_key(&inst.pmf.y_alpha, &by.decode(iy))
    )
}

fn conflict_labels(inst: &ProblemInstance, n: usize, c: Option<Conflict>) -> Option<[String; 2]> {
    c.map(|c| [pair_label(inst, n, c.first), pair_label(inst, n, c.second)])
}

/// Exhaustive check of a scheme file against the instance.
pub fn cmd_verify(rc: &RunConfig) -> Result<Output> {
    rc.validate()?;
    let inst = load_instance(&rc.instance)?;
    let path = rc
        .scheme
        .as_ref()
        .ok_or_else(|| CliError::Config("verify needs a scheme file".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let cap = rc.limits.product_vertices;
    let report = match parse_scheme(&text, &inst, &path.display().to_string())? {
        SchemeFile::Relay(s) => {
            let v = verify_zero_error(&s, &inst, rc.mode);
            let rates = scheme_rates(&s, &inst);
            let relay = relay_computability(&s, &inst);
            let eq = coloring_equivalence(&s, &inst, rc.mode, cap)?;
            VerifyReport {
                instance: instance_name(&inst),
                kind: "relay".into(),
                n: s.n,
                mode: mode_name(rc.mode).into(),
                decodable_at_a: v.decodable_at_a,
                decodable_at_b: v.decodable_at_b,
                witness_a: conflict_labels(&inst, s.n, v.witness_a),
                witness_b: conflict_labels(&inst, s.n, v.witness_b),
                error_prob: v.error_prob.map(|p| p.to_string()),
                rates: rates.exact.iter().map(|r| r.to_string()).collect(),
                rates_bits: rates.rates.as_array().to_vec(),
                relay_computable: Some(relay.computable),
                relay_witness: conflict_labels(&inst, s.n, relay.witness),
                coloring_agrees: Some(eq.agree()),
            }
        }
        SchemeFile::Broadcast { n, phi_c } => {
            let b = bfn_verify(&phi_c, n, &inst)?;
            VerifyReport {
                instance: instance_name(&inst),
                kind: "broadcast".into(),
                n,
                mode: mode_name(Mode::Restricted).into(),
                decodable_at_a: b.report.decodable_at_a,
                decodable_at_b: b.report.decodable_at_b,
                witness_a: conflict_labels(&inst, n, b.report.witness_a),
                witness_b: conflict_labels(&inst, n, b.report.witness_b),
                error_prob: b.report.error_prob.map(|p| p.to_string()),
                rates: vec![b.rate.to_string()],
                rates_bits: vec![relayfn_core::model::to_f64(b.rate)],
                relay_computable: None,
                relay_witness: None,
                coloring_agrees: None,
            }
        }
    };
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut t = format!(
        "instance {}  {} scheme  n={}  mode={}\n",
        report.instance, report.kind, report.n, report.mode
    );
    t.push_str(&format!("decodable at A: {}", yes(report.decodable_at_a)));
    if let Some([u, v]) = &report.witness_a {
        t.push_str(&format!("  (confuses {u} and {v})"));
    }
    t.push_str(&format!("\ndecodable at B: {}", yes(report.decodable_at_b)));
    if let Some([u, v]) = &report.witness_b {
        t.push_str(&format!("  (confuses {u} and {v})"));
    }
    t.push('\n');
    if let Some(p) = &report.error_prob {
        t.push_str(&format!("error probability: {p}\n"));
    }
    let rates: Vec<String> = report
        .rates
        .iter()
        .zip(&report.rates_bits)
        .map(|(r, b)| format!("{r} ({})", fmt(*b)))
        .collect();
    t.push_str(&format!("rates: {}\n", rates.join(", ")));
    if let Some(c) = report.relay_computable {
        t.push_str(&format!("relay computes f: {}", yes(c)));
        if let Some([u, v]) = &report.relay_witness {
            t.push_str(&format!("  (ambiguous between {u} and {v})"));
        }
        t.push('\n');
    }
    if let Some(a) = report.coloring_agrees {
        t.push_str(&format!("coloring cross-check: {}\n", if a { "agrees" } else { "DISAGREES" }));
    }
    let ok = report.coloring_agrees != Some(false);
    Ok(Output::new(&report, t, ok))
}

// ---------------------------------------------------------------- accept

#[derive(Serialize)]
struct AcceptReport {
    passed: usize,
    total: usize,
    criteria: Vec<Criterion>,
}

/// Runs the acceptance suite; fails unless every criterion passes.
pub fn cmd_accept(rc: &RunConfig) -> Result<Output> {
    rc.validate()?;
    let criteria = run_all(&rc.core_config(), rc.seed, rc.budget);
    let passed = criteria.iter().filter(|c| c.passed).count();
    let mut text: String = criteria.iter().map(|c| c.line() + "\n").collect();
    text.push_str(&format!("{passed}/{} criteria passed\n", criteria.len()));
    let report = AcceptReport {
        passed,
        total: criteria.len(),
        criteria,
    };
    let ok = report.passed == report.total;
    Ok(Output::new(&report, text, ok))
}
