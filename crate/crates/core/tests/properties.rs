use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relayfn_core::entropy::{graph_entropy, ProbabilisticGraph};
use relayfn_core::graphalg::is_perfect;
use relayfn_core::graphs::{n_instance_graph, Graph, Mode};
use relayfn_core::model::{entropy, is_robustly_typical, product_pmf, to_f64, Blocks, X, Y};
use relayfn_core::protocol::{
    coloring_equivalence_on, huffman_code, is_prefix_free, random_scheme, relay_computability, scheme_rates,
    verify_zero_error, zero_error_scheme,
};
use relayfn_core::regions::Region3;
use relayfn_core::{Alphabet, Config, FunctionTable, JointPmf, ProblemInstance, RateTriple, Rational};

fn instance(nx: usize, ny: usize, weights: &[u8], values: &[usize]) -> Option<ProblemInstance> {
    let total: i128 = weights.iter().map(|&w| w as i128).sum();
    if total == 0 {
        return None;
    }
    let mass = weights.iter().map(|&w| Rational::new(w as i128, total)).collect();
    let pmf = JointPmf::new(Alphabet::range(nx), Alphabet::range(ny), mass).unwrap();
    let f = FunctionTable {
        z_alpha: Alphabet::range(3),
        values: values.to_vec(),
    };
    Some(ProblemInstance::new(pmf, f, None).unwrap())
}

prop_compose! {
    fn small_instance(max_side: usize, full: bool)(nx in 1..=max_side, ny in 1..=max_side)
        (weights in prop::collection::vec(if full { 1u8..4 } else { 0u8..4 }, nx * ny),
         values in prop::collection::vec(0usize..3, nx * ny),
         nx in Just(nx), ny in Just(ny))
        -> Option<ProblemInstance> {
        instance(nx, ny, &weights, &values)
    }
}

prop_compose! {
    fn small_graph(max_n: usize)(n in 1..=max_n)(edges in prop::collection::vec(any::<bool>(), n * (n - 1) / 2), n in Just(n)) -> Graph {
        let mut list = Vec::new();
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if edges[i] {
                    list.push((u, v));
                }
                i += 1;
            }
        }
        Graph::new(Graph::numbered(n), list).unwrap()
    }
}

fn modes() -> [Mode; 2] {
    [Mode::Restricted, Mode::Unrestricted]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn entropy_chain_rule(inst in small_instance(4, false)) {
        let Some(inst) = inst else { return Ok(()) };
        let t = inst.xyz();
        let hxy = t.entropy(&[X, Y]);
        prop_assert!((hxy - t.entropy(&[X]) - t.cond_entropy(&[Y], &[X])).abs() < 1e-12);
        prop_assert!((hxy - t.entropy(&[Y]) - t.cond_entropy(&[X], &[Y])).abs() < 1e-12);
    }

    #[test]
    fn product_pmf_marginalizes(inst in small_instance(3, false), n in 1usize..=3) {
        let Some(inst) = inst else { return Ok(()) };
        let p = product_pmf(&inst.pmf, n, 5000).unwrap();
        let (bx, by) = (Blocks::new(inst.nx(), n), Blocks::new(inst.ny(), n));
        for i in 0..n {
            let mut marg = vec![Rational::from_integer(0); inst.nx() * inst.ny()];
            for ix in 0..p.nx() {
                for iy in 0..p.ny() {
                    let (x, y) = (bx.decode(ix)[i], by.decode(iy)[i]);
                    marg[x * inst.ny() + y] += p.p(ix, iy);
                }
            }
            prop_assert_eq!(&marg, &inst.pmf.mass);
        }
    }

    #[test]
    fn typicality_is_monotone(seq in prop::collection::vec(0usize..3, 1..40), eps in 0.0f64..2.0, extra in 0.0f64..1.0) {
        let dist = [Rational::new(1, 2), Rational::new(1, 3), Rational::new(1, 6)];
        if is_robustly_typical(&seq, &dist, eps) {
            prop_assert!(is_robustly_typical(&seq, &dist, eps + extra));
        }
    }

    #[test]
    fn restricted_edges_need_positive_mass(inst in small_instance(3, false), n in 1usize..=2) {
        let Some(inst) = inst else { return Ok(()) };
        let g = n_instance_graph(&inst, n, Mode::Restricted, 5000).unwrap();
        let u = n_instance_graph(&inst, n, Mode::Unrestricted, 5000).unwrap();
        let cy = Blocks::new(inst.ny(), n).count().unwrap();
        let (bx, by) = (Blocks::new(inst.nx(), n), Blocks::new(inst.ny(), n));
        let positive = |v: usize| {
            let (xs, ys) = (bx.decode(v / cy), by.decode(v % cy));
            xs.iter().zip(&ys).all(|(&x, &y)| inst.in_support(x, y))
        };
        for (a, b) in g.edges() {
            prop_assert!(positive(a) && positive(b));
            prop_assert!(u.has_edge(a, b));
        }
    }

    #[test]
    fn schemes_agree_with_coloring(inst in small_instance(3, false), n in 1usize..=2, seed in any::<u64>()) {
        let Some(inst) = inst else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for mode in modes() {
            let g = n_instance_graph(&inst, n, mode, 5000).unwrap();
            for _ in 0..8 {
                let s = random_scheme(&inst, n, &g, &mut rng).unwrap();
                prop_assert!(coloring_equivalence_on(&s, &inst, mode, &g).agree());
            }
        }
    }

    #[test]
    fn cover_schemes_are_zero_error_with_huffman_rates(inst in small_instance(3, false), n in 1usize..=2, seed in any::<u64>()) {
        let Some(inst) = inst else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for mode in modes() {
            let g = n_instance_graph(&inst, n, mode, 5000).unwrap();
            let (cover, s) = zero_error_scheme(&inst, n, &g, &mut rng).unwrap();
            let report = verify_zero_error(&s, &inst, mode);
            prop_assert!(report.zero_error());
            if mode == Mode::Restricted {
                prop_assert_eq!(report.error_prob, Some(Rational::from_integer(0)));
            }
            let r = scheme_rates(&s, &inst).rates.as_array();
            let h = cover.rates(&inst).as_array();
            for i in 0..3 {
                prop_assert!(r[i] >= h[i] - 1e-12 && r[i] <= h[i] + 1.0 / n as f64 + 1e-12);
            }
        }
    }

    #[test]
    fn full_support_zero_error_implies_relay(inst in small_instance(3, true), n in 1usize..=2, seed in any::<u64>()) {
        let Some(inst) = inst else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = n_instance_graph(&inst, n, Mode::Restricted, 5000).unwrap();
        for _ in 0..4 {
            let (_, s) = zero_error_scheme(&inst, n, &g, &mut rng).unwrap();
            prop_assert!(relay_computability(&s, &inst).computable);
        }
    }

    #[test]
    fn huffman_is_prefix_free_within_a_bit(weights in prop::collection::vec(0u8..20, 1..12)) {
        let total: i128 = weights.iter().map(|&w| w as i128).sum();
        prop_assume!(total > 0);
        let p: Vec<Rational> = weights.iter().map(|&w| Rational::new(w as i128, total)).collect();
        let code = huffman_code(&p);
        prop_assert!(is_prefix_free(&code));
        prop_assert_eq!(code.iter().collect::<std::collections::BTreeSet<_>>().len(), code.len());
        let len: f64 = p.iter().zip(&code).map(|(&q, c)| to_f64(q) * c.len() as f64).sum();
        let h = entropy(&p);
        prop_assert!(len >= h - 1e-12 && len < h + 1.0);
    }

    #[test]
    fn pruning_preserves_membership(
        gens in prop::collection::vec([0.0f64..3.0, 0.0f64..3.0, 0.0f64..3.0], 1..8),
        probes in prop::collection::vec([0.0f64..3.0, 0.0f64..3.0, 0.0f64..3.0], 16),
    ) {
        let r = Region3::new(gens.iter().map(|g| RateTriple::from_array(*g)).collect());
        let p = r.pruned(0.0);
        prop_assert!(p.generators.len() <= r.generators.len());
        for g in &r.generators {
            prop_assert!(r.member(g, 1e-12));
        }
        for q in &probes {
            let q = RateTriple::from_array(*q);
            prop_assert_eq!(r.member(&q, 1e-9), p.member(&q, 1e-9));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn perfect_graph_entropies_split_source_entropy(g in small_graph(6), weights in prop::collection::vec(1u8..5, 6)) {
        prop_assume!(is_perfect(&g, 14).unwrap());
        let n = g.n();
        let total: i128 = weights[..n].iter().map(|&w| w as i128).sum();
        let mass: Vec<Rational> = weights[..n].iter().map(|&w| Rational::new(w as i128, total)).collect();
        let cfg = Config::default();
        let h = graph_entropy(&ProbabilisticGraph::new(g.clone(), mass.clone()).unwrap(), &cfg).unwrap().value;
        let hc = graph_entropy(&ProbabilisticGraph::new(g.complement(), mass.clone()).unwrap(), &cfg).unwrap().value;
        prop_assert!((h + hc - entropy(&mass)).abs() < 1e-6, "{} + {} vs {}", h, hc, entropy(&mass));
    }
}
