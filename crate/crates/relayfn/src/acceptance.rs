//! The acceptance suite: nine criteria, each reduced to a pass/fail line with
//! the measured values and tolerances it was judged by.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use relayfn_core::entropy::{
    chromatic_entropy, complementary_entropy_sequence, graph_entropy, entropy_by_components, ProbabilisticGraph,
};
use relayfn_core::graphalg::connected_components;
use relayfn_core::graphs::{
    and_power, confusability, f_rook_graph, n_instance_graph, single_decoder_graph, single_decoder_n_instance, Graph,
    IndepSetChannel, Mode, Side,
};
use relayfn_core::model::{binary_entropy, Blocks, X, Y, Z};
use relayfn_core::protocol::{
    coloring_equivalence_on, random_scheme, relay_computability, verify_zero_error, zero_error_scheme, Scheme,
};
use relayfn_core::regions::{
    bfn_general_bounds, bfn_xor_perfect_route, bfn_xor_rate, cutset_outer, eps_inner_ri2, eval_eps_ri1, eval_zero_ri1,
    exchange_eps_region, relay_xor_zero_region, search_ri1, side_rate, zero_inner_ri2, AuxChoice, AuxComponent,
    Region3, SearchConfig,
};
use relayfn_core::{
    fixture, Alphabet, AuxCondition, Config, FunctionTable, JointPmf, ProblemInstance, RateTriple, Rational,
};

use crate::commands::MEMBER_TOL;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub details: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} {} [{}]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.details
        )
    }
}

/// The seven built-in fixtures with crossover 1/4 for the DSBS family.
pub const FIXTURES: [&str; 7] = [
    "PENTAGON",
    "THRESHOLD",
    "DSBS_XOR(1/4)",
    "DSBS_AND(1/4)",
    "DSBS_F1(1/4)",
    "DSBS_F2(1/4)",
    "HANKOB",
];

type Outcome = relayfn_core::Result<(bool, String)>;

/// Collects named checks into a pass flag and a detail string.
struct Checks {
    ok: bool,
    parts: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            ok: true,
            parts: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, text: String) {
        self.ok &= ok;
        self.parts.push(if ok { text } else { format!("{text} FAILED") });
    }

    fn close(&mut self, what: &str, measured: f64, expected: f64, tol: f64) {
        let ok = (measured - expected).abs() <= tol;
        self.check(ok, format!("{what}={measured:.6} vs {expected:.6} ±{tol:e}"));
    }

    fn small(&mut self, what: &str, diff: f64, tol: f64) {
        let ok = diff.abs() <= tol;
        self.check(ok, format!("|{what}|={:.1e} <= {tol:e}", diff.abs()));
    }

    fn within(&mut self, what: &str, elapsed: Duration, limit: Duration) {
        let ok = elapsed <= limit;
        self.check(ok, format!("{what} within {} s", limit.as_secs()));
    }

    fn finish(self) -> Outcome {
        Ok((self.ok, self.parts.join("; ")))
    }
}

fn inst(name: &str) -> relayfn_core::Result<ProblemInstance> {
    fixture(name)
}

fn triple_close(c: &mut Checks, what: &str, got: &RateTriple, want: [f64; 3], tol: f64) {
    let ok = got.as_array().iter().zip(want).all(|(g, w)| (g - w).abs() <= tol);
    c.check(ok, format!("{what}={got} vs ({:.6}, {:.6}, {:.6}) ±{tol:e}", want[0], want[1], want[2]));
}

fn single_corner(r: &Region3) -> RateTriple {
    r.generators.first().copied().unwrap_or(RateTriple::new(f64::NAN, f64::NAN, f64::NAN))
}

/// `a = {1,2}`, `b = {2,3}` on THRESHOLD with `p(a | 2) = p`.
fn halves(inst: &ProblemInstance, side: Side, p: Rational) -> relayfn_core::Result<IndepSetChannel> {
    let which = if side == Side::A { AuxCondition::U1 } else { AuxCondition::U2 };
    let (o, z) = (Rational::from_integer(1), Rational::from_integer(0));
    let cond = vec![vec![o, z], vec![p, o - p], vec![z, o]];
    IndepSetChannel::new(&confusability(inst, side), vec![vec![0, 1], vec![1, 2]], cond, which)
}

fn threshold_entropy(cfg: &Config) -> Outcome {
    let t0 = Instant::now();
    let i = inst("THRESHOLD")?;
    let r = graph_entropy(&ProbabilisticGraph::uniform(confusability(&i, Side::A)), cfg)?;
    let mut c = Checks::new();
    c.close("H_G", r.value, 2.0 / 3.0, 1e-4);
    c.within("runtime", t0.elapsed(), Duration::from_secs(1));
    c.finish()
}

fn threshold_bottleneck() -> Outcome {
    let i = inst("THRESHOLD")?;
    let half = Rational::new(1, 2);
    let (u1, u2) = (halves(&i, Side::A, half)?, halves(&i, Side::B, half)?);
    let comp = AuxComponent::deterministic_w(&i, u1, u2, vec![vec![0, 3], vec![1, 2]], &[0, 1, 1, 0])?;
    let z = eval_zero_ri1(&i, &AuxChoice::single(comp))?;
    let mut c = Checks::new();
    let two_thirds = Some(Rational::new(2, 3));
    c.check(
        z.exact[0] == two_thirds && z.exact[1] == two_thirds,
        format!("R_A={}, R_B={} exact", opt_rational(z.exact[0]), opt_rational(z.exact[1])),
    );
    c.close("R_C", z.rates.r_c, 0.918296, 1e-6);
    c.small("R_C - H(1/3)", z.rates.r_c - binary_entropy(1.0 / 3.0), 1e-12);

    let mut hits = Vec::new();
    for k in 0..=64 {
        let ch = halves(&i, Side::A, Rational::new(k, 64))?;
        if side_rate(&i, Side::A, &ch)? <= 2.0 / 3.0 + 1e-6 {
            hits.push(k);
        }
    }
    let ok = hits.contains(&32) && hits.iter().all(|k| (k - 32).abs() <= 1);
    let shown: Vec<String> = hits.iter().map(|k| format!("{k}/64")).collect();
    c.check(ok, format!("grid p with I(X;U1) <= 2/3+1e-6: {{{}}}", shown.join(",")));
    c.finish()
}

fn opt_rational(r: Option<Rational>) -> String {
    r.map_or_else(|| "irrational".into(), |r| r.to_string())
}

fn pentagon_point(cfg: &Config) -> Outcome {
    let i = inst("PENTAGON")?;
    let z = eval_zero_ri1(&i, &AuxChoice::single(AuxComponent::level_sets(&i)?))?;
    let l5 = 5f64.log2();
    let mut c = Checks::new();
    c.small("R_A - log 5", z.rates.r_a - l5, 1e-12);
    c.small("R_B - log 5", z.rates.r_b - l5, 1e-12);
    c.check(
        z.exact[2] == Some(Rational::from_integer(1)),
        format!("R_C={} exact", opt_rational(z.exact[2])),
    );
    let pg = ProbabilisticGraph::uniform(Graph::cycle(5));
    let h = chromatic_entropy(&pg, cfg.limits.chromatic_entropy_vertices)?;
    c.close("H_chi(C5)", h.value, l5 - 0.8, 1e-9);
    let t0 = Instant::now();
    let s = complementary_entropy_sequence(&pg, 2, cfg)?;
    match s.terms.iter().find(|t| t.0 == 2) {
        Some(&(_, a2)) => c.close("a_2(C5)", a2, 0.5 * l5, 1e-9),
        None => c.check(false, "a_2(C5) missing".into()),
    }
    c.within("n=2 AND-power search", t0.elapsed(), Duration::from_secs(30));
    c.finish()
}

fn dsbs_regions(cfg: &Config, budget: usize) -> Outcome {
    let h = binary_entropy(0.25);
    let mut c = Checks::new();
    c.close("H(1/4)", h, 0.811278, 1e-6);
    let xor = inst("DSBS_XOR(1/4)")?;
    triple_close(&mut c, "XOR relay zero corner", &single_corner(&relay_xor_zero_region(&xor)?), [1.0, 1.0, h], 1e-6);
    triple_close(&mut c, "XOR exchange corner", &single_corner(&exchange_eps_region(&xor)), [h, h, h], 1e-6);

    let and = inst("DSBS_AND(1/4)")?;
    triple_close(&mut c, "AND cutset corner", &single_corner(&cutset_outer(&and, cfg)?), [h, h, h / 2.0], 1e-6);

    let ri2 = eps_inner_ri2(&and, cfg)?;
    let level = eval_eps_ri1(&and, &AuxChoice::single(AuxComponent::level_sets(&and)?))?.region();
    let sc = SearchConfig {
        budget,
        grid: 2,
        eps: true,
        ..SearchConfig::default()
    };
    let searched = search_ri1(&and, &sc, cfg)?.region;
    let hhh = RateTriple::new(h, h, h);
    let forced = [Side::A, Side::B].iter().all(|&s| {
        let g = confusability(&and, s);
        g.edge_count() == g.n() * (g.n() - 1) / 2
    });
    let hxy = and.xyz().entropy(&[X, Y]);
    c.check(ri2.member(&hhh, MEMBER_TOL), "(H,H,H) in eps RI2".into());
    c.check(
        forced && hxy > 2.0 * h + MEMBER_TOL,
        format!("(H,H,H) outside eps RI1: singleton U forced, H(X,Y)={hxy:.6} > 2H"),
    );
    c.check(
        !level.member(&hhh, MEMBER_TOL) && !searched.member(&hhh, MEMBER_TOL),
        "(H,H,H) outside evaluated and searched eps RI1".into(),
    );
    let p2 = RateTriple::new(1.0, h, h / 2.0);
    c.check(
        level.member(&p2, MEMBER_TOL) && !ri2.member(&p2, MEMBER_TOL),
        "(1,H,H/2) in eps RI1 and outside eps RI2".into(),
    );
    c.finish()
}

fn hankob_numbers() -> Outcome {
    let i = inst("HANKOB")?;
    let t = i.xyz();
    let h3 = binary_entropy(1.0 / 3.0);
    let mut c = Checks::new();
    let zy = t.cond_entropy_exact(&[Z], &[Y]);
    c.check(zy == Some(Rational::new(2, 3)), format!("H(Z|Y)={} exact", opt_rational(zy)));
    c.close("H(Z|X)", t.cond_entropy(&[Z], &[X]), h3, 1e-9);
    let ex = exchange_eps_region(&i);
    triple_close(&mut c, "exchange corner", &single_corner(&ex), [1.0, h3, 1.0], 1e-9);
    c.check(
        !ex.member(&RateTriple::new(1.0, h3, h3), MEMBER_TOL),
        "(1,H(1/3),H(1/3)) outside exchange region".into(),
    );
    c.finish()
}

fn coloring_suite(cfg: &Config, seed: u64) -> Outcome {
    let t0 = Instant::now();
    let mut total = 0;
    let mut agree = 0;
    let mut zero_error = 0;
    let mut bad = Vec::new();
    for (fi, name) in FIXTURES.iter().enumerate() {
        let i = inst(name)?;
        for n in 1..=2 {
            for (mi, mode) in [Mode::Restricted, Mode::Unrestricted].into_iter().enumerate() {
                let g = n_instance_graph(&i, n, mode, cfg.limits.product_vertices)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((fi * 4 + (n - 1) * 2 + mi) as u64) << 32);
                for _ in 0..200 {
                    let s = random_scheme(&i, n, &g, &mut rng)?;
                    let e = coloring_equivalence_on(&s, &i, mode, &g);
                    total += 1;
                    zero_error += usize::from(e.decodable);
                    if e.agree() {
                        agree += 1;
                    } else if bad.len() < 3 {
                        bad.push(format!("{name} n={n} {mode:?}"));
                    }
                }
            }
        }
    }
    let mut c = Checks::new();
    c.check(
        agree == total,
        format!("{agree}/{total} schemes agree ({zero_error} zero-error){}", disagreements(&bad)),
    );
    c.within("runtime", t0.elapsed(), Duration::from_secs(60));
    c.finish()
}

fn disagreements(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(", first disagreements: {}", bad.join(", "))
    }
}

fn pair_symbols(i: &ProblemInstance, (x, y): (usize, usize)) -> (String, String) {
    (i.pmf.x_alpha.symbol(x).to_string(), i.pmf.y_alpha.symbol(y).to_string())
}

/// THRESHOLD scheme sending the indicator of the smallest symbol and
/// relaying whether the indicators agree.
pub fn threshold_counterexample(i: &ProblemInstance) -> relayfn_core::Result<Scheme> {
    let ind = [1, 0, 0];
    Scheme::from_maps(i, 1, &ind, &ind, |a, b| usize::from(a == b))
}

fn relay_suite(cfg: &Config, seed: u64) -> Outcome {
    let full: Vec<ProblemInstance> = FIXTURES
        .iter()
        .map(|n| inst(n))
        .collect::<relayfn_core::Result<Vec<_>>>()?
        .into_iter()
        .filter(|i| i.pmf.is_full_support())
        .collect();
    let mut graphs = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7));
    let mut passed = 0;
    let mut zero = 0;
    for k in 0..100 {
        let fi = k % full.len();
        let n = 1 + (k / full.len()) % 2;
        let i = &full[fi];
        if !graphs.contains_key(&(fi, n)) {
            graphs.insert((fi, n), n_instance_graph(i, n, Mode::Restricted, cfg.limits.product_vertices)?);
        }
        let (_, s) = zero_error_scheme(i, n, &graphs[&(fi, n)], &mut rng)?;
        zero += usize::from(verify_zero_error(&s, i, Mode::Restricted).zero_error());
        passed += usize::from(relay_computability(&s, i).computable);
    }
    let mut c = Checks::new();
    let names: Vec<String> = full.iter().filter_map(|i| i.name.clone()).collect();
    c.check(
        zero == 100 && passed == 100,
        format!("{passed}/100 relay-computable, {zero}/100 zero-error on {}", names.join(" ")),
    );

    let t = inst("THRESHOLD")?;
    let s = threshold_counterexample(&t)?;
    let v = verify_zero_error(&s, &t, Mode::Restricted);
    let r = relay_computability(&s, &t);
    let witness = r.witness.map(|w| {
        let mut p = [pair_symbols(&t, w.first), pair_symbols(&t, w.second)];
        p.sort();
        p
    });
    let want = [("2".to_string(), "3".to_string()), ("3".to_string(), "2".to_string())];
    c.check(
        v.zero_error() && !r.computable && witness.as_ref() == Some(&want),
        format!(
            "counterexample: decodable {}/{}, relay computable {}, witness {}",
            v.decodable_at_a,
            v.decodable_at_b,
            r.computable,
            witness.map_or_else(|| "none".into(), |[a, b]| format!("({},{}) ({},{})", a.0, a.1, b.0, b.1))
        ),
    );
    c.finish()
}

/// Does the single-decoder n-instance graph equal the AND power of the
/// single-decoder graph under the natural vertex correspondence?
fn single_decoder_matches_power(i: &ProblemInstance, n: usize, cap: usize) -> relayfn_core::Result<bool> {
    let direct = single_decoder_n_instance(i, n, cap)?;
    let power = and_power(&single_decoder_graph(i), n, cap)?;
    let support = i.pmf.support();
    let digits = Blocks::new(support.len(), n);
    let (bx, by) = (Blocks::new(i.nx(), n), Blocks::new(i.ny(), n));
    let blocks: Vec<(usize, usize)> = (0..power.n())
        .map(|v| {
            let d = digits.decode(v);
            let xs: Vec<usize> = d.iter().map(|&s| support[s].0).collect();
            let ys: Vec<usize> = d.iter().map(|&s| support[s].1).collect();
            (bx.encode(&xs), by.encode(&ys))
        })
        .collect();
    let mut order = blocks.clone();
    order.sort_unstable();
    let perm: Vec<usize> = blocks.iter().map(|b| order.binary_search(b).unwrap()).collect();
    Ok(power.maps_onto(&direct, &perm))
}

fn random_instance(rng: &mut ChaCha8Rng, max_side: usize, full: bool) -> ProblemInstance {
    let mut pick = |k: usize| (rng.next_u64() % k as u64) as usize;
    let nx = 2 + pick(max_side - 1);
    let ny = 2 + pick(max_side - 1);
    let nz = 2 + pick(2);
    let mut weights: Vec<i128> = (0..nx * ny)
        .map(|_| if full { 1 + pick(4) as i128 } else { pick(5) as i128 })
        .collect();
    if weights.iter().all(|&w| w == 0) {
        weights[0] = 1;
    }
    let total: i128 = weights.iter().sum();
    let mass = weights.iter().map(|&w| Rational::new(w, total)).collect();
    let values = (0..nx * ny).map(|_| pick(nz)).collect();
    let pmf = JointPmf::new(Alphabet::range(nx), Alphabet::range(ny), mass).expect("weights normalize");
    ProblemInstance::new(pmf, FunctionTable { z_alpha: Alphabet::range(nz), values }, None)
        .expect("values lie in the alphabet")
}

fn structural(cfg: &Config, seed: u64) -> Outcome {
    let mut c = Checks::new();
    let cap = 20_000;
    let mut mismatches = Vec::new();
    let mut power_ok = true;
    for name in FIXTURES {
        let i = inst(name)?;
        for n in 1..=3 {
            let same = single_decoder_matches_power(&i, n, cap)?;
            power_ok &= same;
            if !same {
                mismatches.push(format!("{name} n={n}"));
            }
        }
    }
    c.check(
        power_ok,
        format!("single-decoder graph = AND power for n=1..3 on {} fixtures{}", FIXTURES.len(), disagreements(&mismatches)),
    );

    let mut compared = 0;
    let mut worst: f64 = 0.0;
    for name in FIXTURES {
        let i = inst(name)?;
        let support_mass: Vec<Rational> = i.pmf.support().iter().map(|&(x, y)| i.p(x, y)).collect();
        let graphs = [
            (confusability(&i, Side::A), i.pmf.marginal_x()),
            (confusability(&i, Side::B), i.pmf.marginal_y()),
            (f_rook_graph(&i), i.pmf.mass.clone()),
            (single_decoder_graph(&i), support_mass),
        ];
        for (g, mass) in graphs {
            let positive = connected_components(&g, Some(&mass))
                .iter()
                .filter(|k| k.mass.is_some_and(|m| m > Rational::from_integer(0)))
                .count();
            if positive < 2 {
                continue;
            }
            let pg = ProbabilisticGraph::new(g, mass)?;
            let ku = entropy_by_components(&pg, cfg)?;
            let direct = graph_entropy(&pg, cfg)?;
            worst = worst.max((ku.value - direct.value).abs());
            compared += 1;
        }
    }
    c.check(
        compared > 0 && worst <= 1e-6,
        format!("component sum vs direct on {compared} graphs: max diff {worst:.1e} <= 1e-6"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(8));
    let mut worst: f64 = 0.0;
    let mut exact = 0;
    for _ in 0..20 {
        let i = random_instance(&mut rng, 4, true);
        let m = bfn_xor_perfect_route(&i, cfg)?;
        if let Some(v) = m.exact {
            exact += 1;
            worst = worst.max((v - bfn_xor_rate(&i)).abs());
        }
    }
    c.check(
        exact == 20 && worst <= 1e-12,
        format!("perfect route exact on {exact}/20 sources, max diff {worst:.1e} <= 1e-12"),
    );
    c.finish()
}

fn bound_order(cfg: &Config, seed: u64, budget: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(9));
    let tol = 1e-6;
    let mut fails: BTreeMap<&str, usize> = BTreeMap::new();
    let mut samples = 0;
    let mut note = |what: &'static str, ok: bool| {
        if !ok {
            *fails.entry(what).or_default() += 1;
        }
    };
    for _ in 0..50 {
        let i = random_instance(&mut rng, 4, false);
        let outer = cutset_outer(&i, cfg)?;
        note("cutset contains eps RI2", outer.contains(&eps_inner_ri2(&i, cfg)?, tol));

        let level = AuxChoice::single(AuxComponent::level_sets(&i)?);
        let eps = eval_eps_ri1(&i, &level)?.region();
        let sc = SearchConfig {
            budget: budget.min(40),
            grid: 1,
            eps: true,
            ..SearchConfig::default()
        };
        let searched = search_ri1(&i, &sc, cfg)?.region;
        samples += 1 + searched.generators.len();
        note("cutset contains eps RI1 samples", outer.contains(&eps, tol) && outer.contains(&searched, tol));

        let b = bfn_general_bounds(&i, cfg)?;
        note("BFN lower <= upper", b.lower <= b.upper + b.upper_gap + tol);

        let z2 = single_corner(&zero_inner_ri2(&i, cfg)?);
        let e2 = single_corner(&eps_inner_ri2(&i, cfg)?);
        let z1 = eval_zero_ri1(&i, &level)?.rates;
        let mut dominated = z2.dominates(&e2, tol) && eps.member(&z1, tol);
        if i.pmf.is_full_support() {
            let zx = single_corner(&relay_xor_zero_region(&i)?);
            dominated &= zx.dominates(&single_corner(&exchange_eps_region(&i)), tol);
        }
        note("zero-error corners dominate eps corners", dominated);
    }
    let mut c = Checks::new();
    c.check(fails.is_empty(), format!("50 instances, {samples} eps RI1 samples, tol {tol:e}"));
    for (what, k) in fails {
        c.check(false, format!("{what}: {k} violations"));
    }
    c.finish()
}

/// Runs every criterion in order.
pub fn run_all(cfg: &Config, seed: u64, budget: usize) -> Vec<Criterion> {
    let suite: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("THRESHOLD graph entropy", Box::new(|| threshold_entropy(cfg))),
        ("THRESHOLD bottleneck point", Box::new(threshold_bottleneck)),
        ("PENTAGON point and C5 entropies", Box::new(|| pentagon_point(cfg))),
        ("DSBS regions at p=1/4", Box::new(|| dsbs_regions(cfg, budget))),
        ("HANKOB numbers", Box::new(hankob_numbers)),
        ("scheme decodability equals coloring properness", Box::new(|| coloring_suite(cfg, seed))),
        ("zero-error schemes compute f at the relay", Box::new(|| relay_suite(cfg, seed))),
        ("structural identities", Box::new(|| structural(cfg, seed))),
        ("bound order on random instances", Box::new(|| bound_order(cfg, seed, budget))),
    ];
    suite
        .into_iter()
        .enumerate()
        .map(|(k, (title, run))| {
            let (passed, details) = match run() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            Criterion {
                id: k + 1,
                title: title.into(),
                passed,
                details,
            }
        })
        .collect()
}
