use std::collections::HashSet;

use tfsr::exactmath::{int, rat};
use tfsr::graphcore::catalog;
use tfsr::search::{
    canonical, enumerate_triangle_free, levels, lower_bound_table, run_search, run_search_limited,
    SearchConfig, SearchError, SearchResult, SmallGraph,
};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Smallest adjacency string over all relabellings.
fn brute_canon(g: &SmallGraph, perms: &[Vec<usize>]) -> Vec<bool> {
    let n = g.n();
    perms
        .iter()
        .map(|p| {
            pairs(n)
                .into_iter()
                .map(|(i, j)| g.has_edge(p[i], p[j]))
                .collect::<Vec<bool>>()
        })
        .min()
        .unwrap()
}

fn brute_force_count(n: usize) -> usize {
    let perms = permutations(n);
    let ps = pairs(n);
    let mut seen = HashSet::new();
    for mask in 0u32..(1 << ps.len()) {
        let edges: Vec<(usize, usize)> = ps
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = SmallGraph::from_edges(n, &edges);
        if g.is_triangle_free() {
            seen.insert(brute_canon(&g, &perms));
        }
    }
    seen.len()
}

#[test]
fn counts_match_brute_force_up_to_six() {
    for n in 1..=6 {
        assert_eq!(
            enumerate_triangle_free(n).len(),
            brute_force_count(n),
            "n = {n}"
        );
    }
    assert_eq!(brute_force_count(3), 3);
}

#[test]
fn published_counts_through_ten() {
    let counts: Vec<usize> = levels(10).iter().map(|l| l.len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 7, 14, 38, 107, 410, 1897, 12172]);
}

#[test]
fn seven_vertex_output_is_isomorph_free() {
    let perms = permutations(7);
    let gs = enumerate_triangle_free(7);
    let forms: HashSet<Vec<bool>> = gs.iter().map(|g| brute_canon(g, &perms)).collect();
    assert_eq!(forms.len(), gs.len());
    assert!(gs.iter().all(|g| g.is_triangle_free()));
}

#[test]
fn certificates_ignore_labelling() {
    let perms = permutations(8);
    for g in enumerate_triangle_free(8).iter().step_by(17) {
        let c = canonical(g).cert;
        for p in perms.iter().step_by(997) {
            assert_eq!(canonical(&g.relabel(p)).cert, c);
        }
    }
}

#[test]
fn petersen_is_the_only_survivor_up_to_eleven() {
    let cfg = SearchConfig::new(11)
        .with_rho(int(0), rat(1, 3))
        .with_workers(4);
    let res = run_search(&cfg).unwrap();
    assert_eq!(res.len(), 1, "{res:?}");
    let r = &res[0];
    assert_eq!(r.n, 10);
    assert_eq!(r.rho_g, rat(3, 10));
    assert_eq!(r.optimum_a, rat(1, 10));
    assert!(r.revalidate());
    let p = SmallGraph::from_weighted(&catalog::petersen()).unwrap();
    let s = SmallGraph::from_weighted(&r.skeleton).unwrap();
    assert_eq!(canonical(&p).cert, canonical(&s).cert);
    let table = lower_bound_table(&res);
    assert_eq!(table.len(), 1);
    assert!(table[0].tight());
}

#[test]
fn survivors_revalidate_and_respect_the_bound() {
    let res = run_search(&SearchConfig::new(9).with_workers(2)).unwrap();
    assert!(res.iter().any(|r| r.rho_g == rat(2, 5) && r.optimum_a == rat(1, 5)));
    for r in &res {
        assert!(r.revalidate(), "{r}");
    }
    for row in lower_bound_table(&res) {
        assert_ne!(row.consistent(), Some(false), "{row}");
    }
}

#[test]
fn runs_are_deterministic_across_worker_counts() {
    let a = run_search(&SearchConfig::new(9).with_workers(1)).unwrap();
    let b = run_search(&SearchConfig::new(9).with_workers(3)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn interrupted_run_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = SearchConfig::new(9).with_workers(2);
    cfg.split_depth = 6;
    cfg.checkpoint_path = Some(dir.path().join("ck"));
    let partial = run_search_limited(&cfg, Some(5)).unwrap();
    assert_eq!(partial.pending_subtrees, 38 - 5);
    let resumed = run_search(&cfg).unwrap();
    let mut fresh = cfg.clone();
    fresh.checkpoint_path = None;
    assert_eq!(resumed, run_search(&fresh).unwrap());
    assert_eq!(run_search(&cfg).unwrap(), resumed);
}

#[test]
fn mismatched_or_garbled_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck");
    let mut cfg = SearchConfig::new(7);
    cfg.split_depth = 5;
    cfg.checkpoint_path = Some(path.clone());
    run_search_limited(&cfg, Some(1)).unwrap();
    let mut other = cfg.clone();
    other.n_max = 8;
    assert!(matches!(run_search(&other), Err(SearchError::CheckpointCorrupt(_))));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, format!("{text}!!not graph6\n")).unwrap();
    assert!(matches!(run_search(&cfg), Err(SearchError::CheckpointCorrupt(_))));
    std::fs::write(&path, "garbage\n").unwrap();
    assert!(matches!(run_search(&cfg), Err(SearchError::CheckpointCorrupt(_))));
}

#[test]
fn kneser_three_row_lies_below_the_bound() {
    let r = SearchResult::evaluate(&catalog::kneser(3).unwrap()).unwrap();
    assert_eq!(r.rho_g, rat(5, 28));
    assert_eq!(r.optimum_a, rat(1, 56));
    let table = lower_bound_table(&[r]);
    assert_eq!(table[0].consistent(), Some(true));
    assert!(!table[0].tight());
}
