use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tfsr::exactmath::{int, rat};
use tfsr::flagcalc::{case_analysis, identity_suite, total_probability, types, Evaluator, FlagType};
use tfsr::graphcore::{catalog, WeightedGraph};
use tfsr::regweights::positive_feasibility;
use tfsr::search::{run_search, SearchConfig};

const EQUALITIES: [&str; 4] = ["i3n", "kuvw", "rho_expansion", "sst"];

fn random_triangle_free(rng: &mut ChaCha8Rng, n: usize, p: f64) -> WeightedGraph {
    let mut adj = vec![vec![false; n]; n];
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    for k in (1..pairs.len()).rev() {
        pairs.swap(k, rng.gen_range(0..=k));
    }
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if rng.gen_bool(p) && (0..n).all(|w| !(adj[u][w] && adj[v][w])) {
            adj[u][v] = true;
            adj[v][u] = true;
            edges.push((u, v));
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

fn random_weights(rng: &mut ChaCha8Rng, g: WeightedGraph) -> WeightedGraph {
    let raw: Vec<i64> = (0..g.n()).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = raw.iter().sum();
    g.with_weights(raw.iter().map(|&x| rat(x, total)).collect()).unwrap()
}

fn assert_suite(name: &str, g: &WeightedGraph) {
    let rep = identity_suite(g).unwrap();
    assert!(rep.all_hold(), "{name}\n{rep}");
    for id in EQUALITIES {
        let c = rep.get(id).unwrap();
        assert!(c.applicable, "{name}: {c}");
    }
}

#[test]
fn catalog_graphs_satisfy_every_applicable_check() {
    for name in ["petersen", "clebsch", "c5", "kneser-3"] {
        let g = catalog::by_name(name).unwrap();
        assert_suite(name, &g);
        let rep = identity_suite(&g).unwrap();
        for id in ["t4i", "t4n", "s4t4", "kplusu", "trivial_bound"] {
            assert!(rep.get(id).unwrap().applicable, "{name}: {id}");
        }
    }
}

#[test]
fn hundred_random_weighted_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7f5);
    let mut regular = 0;
    for k in 0..100 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.2..0.8);
        let skel = random_triangle_free(&mut rng, n, p);
        let g = match positive_feasibility(&skel) {
            Ok(Some(w)) if k % 2 == 0 => {
                regular += 1;
                skel.with_weights(w).unwrap()
            }
            _ => random_weights(&mut rng, skel),
        };
        assert_suite(&format!("instance {k}"), &g);
    }
    assert!(regular > 0);
}

#[test]
fn search_survivors_with_regular_weights() {
    let res = run_search(&SearchConfig::new(10)).unwrap();
    assert_eq!(res.len(), 3);
    for r in &res {
        let g = r.weighted();
        let rep = identity_suite(&g).unwrap();
        assert!(rep.all_hold(), "{r}\n{rep}");
        assert!(rep.get("kuvw_regular").unwrap().applicable);
        for (v1, v2) in g.minimizing_pairs().unwrap() {
            let c = case_analysis(&g, v1, v2).unwrap();
            assert!(c.consistent(), "{r}\n{c}");
        }
    }
}

#[test]
fn clebsch_case_analysis_is_tight() {
    let g = catalog::clebsch();
    for (v1, v2) in g.minimizing_pairs().unwrap() {
        let c = case_analysis(&g, v1, v2).unwrap();
        assert!(c.consistent());
        let t = c.check("twofifth").unwrap();
        assert!(t.applicable && t.tight(), "{t}");
    }
}

#[test]
fn c5_and_petersen_gate_the_pair_claims() {
    for g in [catalog::cycle5(), catalog::petersen()] {
        for (v1, v2) in g.minimizing_pairs().unwrap() {
            let c = case_analysis(&g, v1, v2).unwrap();
            assert!(c.consistent(), "{c}");
            assert!(!c.above_third || g.n() == 5);
        }
    }
}

fn span_type() -> impl Strategy<Value = (FlagType, usize)> {
    prop_oneof![
        Just((types::one(), 2usize)),
        Just((types::one(), 3)),
        Just((types::e(), 3)),
        Just((types::n(), 3)),
        Just((types::n(), 4)),
        Just((types::p(), 4)),
        Just((types::i(), 4)),
        Just((types::q1(), 4)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flag_densities_sum_to_one(seed in any::<u64>(), n in 3usize..9, (ty, l) in span_type()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let skel = random_triangle_free(&mut rng, n, 0.5);
        let g = random_weights(&mut rng, skel);
        let ev = Evaluator::new(&g);
        let anchors = ev.anchors_of(&ty);
        for a in anchors.iter().take(12) {
            prop_assert_eq!(total_probability(&g, &ty, l, a).unwrap(), int(1));
        }
    }
}
