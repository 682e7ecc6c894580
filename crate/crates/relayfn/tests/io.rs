use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relayfn::acceptance::FIXTURES;
use relayfn::error::CliError;
use relayfn::graph_io::{adjacency_text, edge_csv};
use relayfn::instance_io::{instance_to_json, parse_instance};
use relayfn::scheme_io::{broadcast_text, parse_scheme, relay_scheme_text, SchemeFile};
use relayfn_core::fixture;
use relayfn_core::graphs::{n_instance_graph, Mode};
use relayfn_core::protocol::random_scheme;

#[test]
fn every_fixture_survives_the_spec_format() {
    for name in FIXTURES {
        let inst = fixture(name).unwrap();
        let text = instance_to_json(&inst);
        assert_eq!(parse_instance(&text, "spec.json").unwrap(), inst, "{name}");
    }
}

#[test]
fn random_schemes_survive_the_scheme_format() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in FIXTURES {
        let inst = fixture(name).unwrap();
        for n in 1..=2 {
            let g = n_instance_graph(&inst, n, Mode::Restricted, 5_000).unwrap();
            for _ in 0..10 {
                let s = random_scheme(&inst, n, &g, &mut rng).unwrap();
                let text = relay_scheme_text(&s, &inst);
                assert_eq!(parse_scheme(&text, &inst, "s").unwrap(), SchemeFile::Relay(s));
            }
        }
    }
}

#[test]
fn broadcast_tables_need_every_block() {
    let inst = fixture("THRESHOLD").unwrap();
    let phi: Vec<String> = (0..9).map(|i| format!("{:b}", i % 4)).collect();
    let text = broadcast_text(1, &phi, &inst);
    assert_eq!(parse_scheme(&text, &inst, "b").unwrap(), SchemeFile::Broadcast { n: 1, phi_c: phi });
    let short: String = text.lines().take(text.lines().count() - 1).map(|l| format!("{l}\n")).collect();
    let e = parse_scheme(&short, &inst, "b").unwrap_err();
    assert!(e.to_string().contains("[BFN] has no entry for block #8"), "{e}");
}

#[test]
fn spec_errors_name_the_problem() {
    let e = parse_instance("{\n  \"x_alphabet\": [\"a\"],\n  oops\n}", "s.json").unwrap_err();
    assert!(matches!(e, CliError::Parse { line: 3, .. }), "{e}");
    let unnormalized = r#"{"x_alphabet":["a"],"y_alphabet":["b"],"z_alphabet":["z"],"pmf":[["1/2"]],"f":[["z"]]}"#;
    let e = parse_instance(unnormalized, "s.json").unwrap_err();
    assert!(e.to_string().contains("sums to 1/2"), "{e}");
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn graph_exports_agree_with_each_other() {
    let inst = fixture("PENTAGON").unwrap();
    let g = n_instance_graph(&inst, 2, Mode::Unrestricted, 5_000).unwrap();
    let csv_edges = edge_csv(&g).lines().count() - 1;
    let adj = adjacency_text(&g);
    let degree_sum: usize = adj.lines().skip(1).map(|l| l.split(':').nth(1).unwrap().split_whitespace().count()).sum();
    assert_eq!(csv_edges, g.edge_count());
    assert_eq!(degree_sum, 2 * g.edge_count());
    assert!(adj.starts_with(&format!("# vertices {} edges {}\n", g.n(), g.edge_count())));
}
