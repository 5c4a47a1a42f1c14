use std::cmp::Ordering;
use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tfsr::bounds::*;
use tfsr::exactmath::{int, rat, ten_to_minus, to_f64, QuadElem, Rational, UniPoly};
use tfsr::flagcalc::{case_analysis, identity_suite};
use tfsr::graphcore::{boundedness_check, boundedness_witness, catalog, WeightedGraph};
use tfsr::regweights::{optimize_a, positive_feasibility, rho_of_skeleton, rho_of_skeleton_with_order, LpStatus};
use tfsr::search::{canonical, enumerate_triangle_free, run_search, SearchConfig, SmallGraph};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    } else {
        Ok(format!("{:.1}s", t.as_secs_f64()))
    }
}

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

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        p.swap(k, rng.gen_range(0..=k));
    }
    p
}

fn near(q: &QuadElem) -> Rational {
    let (lo, hi) = q.enclose(&ten_to_minus(14));
    (lo + hi) / int(2)
}

fn tightness() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("c5", catalog::cycle5(), rat(2, 5), rat(1, 5)),
        ("clebsch", catalog::clebsch(), rat(5, 16), rat(1, 8)),
        ("petersen", catalog::petersen(), rat(3, 10), rat(1, 10)),
        ("higman-sims", catalog::higman_sims().map_err(|e| e.to_string())?, rat(11, 50), rat(3, 50)),
    ];
    for (name, g, rho, a) in cases {
        ensure!(g.regular_degree() == Some(rho.clone()), "{name}: rho {}", g.rho());
        let got = g.a_value().map_err(|e| e.to_string())?;
        ensure!(got == a, "{name}: a_value {got}, expected {a}");
        let b = bound(&rho).map_err(|e| e.to_string())?;
        ensure!(b.as_rational() == Some(&a), "{name}: bound {} at {rho}", b.describe(&ten_to_minus(12)));
    }
    within(start, Duration::from_secs(10))
}

fn krein_exactness() -> Outcome {
    let (rho, a) = (rat(11, 50), rat(3, 50));
    ensure!(f_k(&rho, &a).is_zero(), "f_K(11/50, 3/50) = {}", f_k(&rho, &a));
    let k = krein(&rho).map_err(|e| e.to_string())?.refine(&ten_to_minus(30));
    ensure!(k.as_rational() == Some(&a), "krein(11/50) = {k}");
    Ok("f_K = 0, krein = 3/50".into())
}

fn breakpoints() -> Outcome {
    let w = ten_to_minus(9);
    let mut failures = Vec::new();
    let (lo0, hi0) = rho0().enclose(&w);
    let r1 = rho1().refine(&w);
    let (lo2, hi2) = rho2().enclose(&w);
    let windows = [
        ("rho0", lo0, hi0, rat(2629, 10000), rat(2631, 10000)),
        ("rho1", r1.lo().clone(), r1.hi().clone(), rat(2705, 10000), rat(2715, 10000)),
        ("rho2", lo2, hi2, rat(2715, 10000), rat(2725, 10000)),
    ];
    let mut shown = Vec::new();
    for (name, lo, hi, wlo, whi) in windows {
        shown.push(format!("{name}~{:.7}", to_f64(&lo)));
        if lo < wlo || hi > whi {
            failures.push(format!(
                "{name} in [{:.7}, {:.7}] outside [{}, {}]",
                to_f64(&lo),
                to_f64(&hi),
                to_f64(&wlo),
                to_f64(&whi)
            ));
        }
    }
    let r0 = rho0();
    let third = r0.scale(&rat(1, 3));
    let k = root_at_quad(f_k_poly(), &r0).map_err(|e| e.to_string())?;
    let h = root_at_quad(g_k_poly(), &r0).map_err(|e| e.to_string())?;
    if k.cmp_quad(&third) != Ordering::Equal || h.cmp_quad(&third) != Ordering::Equal {
        failures.push("Krein(rho0) or HatKrein(rho0) differs from rho0/3".into());
    }
    let imp = improved(&rat(9, 32)).map_err(|e| e.to_string())?;
    if imp.as_rational() != Some(&rat(3, 32)) {
        failures.push(format!("Improved(9/32) = {imp}"));
    }
    if failures.is_empty() {
        Ok(shown.join(" "))
    } else {
        Err(failures.join("; "))
    }
}

fn proximity() -> Outcome {
    let start = Instant::now();
    let w = ten_to_minus(9);
    let (r0, _) = rho0().enclose(&ten_to_minus(12));
    let r1 = rho1().refine(&ten_to_minus(12));
    let lo = r0 + ten_to_minus(10);
    let hi = r1.lo().clone();
    let steps = 60;
    let mut worst = Rational::zero();
    for i in 0..=steps {
        let rho = &lo + (&hi - &lo) * rat(i, steps);
        let k = krein(&rho).map_err(|e| e.to_string())?.refine(&w);
        let h = hat_krein(&rho).map_err(|e| e.to_string())?.refine(&w);
        ensure!(k.width() <= w && h.width() <= w, "enclosure wider than 1e-9 at {rho}");
        ensure!(h.hi() >= k.lo(), "HatKrein below Krein at {rho}");
        let gap = h.hi() - k.lo();
        ensure!(gap <= rat(3, 1_000_000), "gap {:.3e} at {rho}", to_f64(&gap));
        worst = worst.max(gap);
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{} points, max gap {:.3e}, {t}", steps + 1, to_f64(&worst)))
}

fn continuity() -> Outcome {
    for (rho, v) in [(rat(3, 10), rat(1, 10)), (rat(5, 16), rat(1, 8))] {
        let b = a0(&rho).map_err(|e| e.to_string())?;
        ensure!(b.pieces.len() == 2, "{rho} is not a breakpoint of a0");
        for p in &b.pieces {
            let x = p.eval(&rho).map_err(|e| e.to_string())?;
            ensure!(x.as_rational() == Some(&v), "{p} at {rho} gives {x}");
        }
    }
    let w = ten_to_minus(12);
    let tol = ten_to_minus(9);
    let r1 = rho1().refine(&ten_to_minus(14)).midpoint();
    let checks = [
        ("rho0", near(&rho0()), Piece::Krein, Piece::HatKrein),
        ("rho1", r1, Piece::HatKrein, Piece::OneMinusThreeRhoHalf),
        ("rho2", near(&rho2()), Piece::OneMinusThreeRhoHalf, Piece::Improved),
    ];
    for (name, rho, left, right) in checks {
        let l = left.eval(&rho).map_err(|e| e.to_string())?.refine(&w);
        let r = right.eval(&rho).map_err(|e| e.to_string())?.refine(&w);
        let gap = (l.midpoint() - r.midpoint()).abs();
        ensure!(gap <= tol, "{left} vs {right} at {name}: {:.3e}", to_f64(&gap));
    }
    Ok("3/10, 5/16 exact; rho0, rho1, rho2 within 1e-9".into())
}

fn polynomial_identities() -> Outcome {
    let x = UniPoly::x(2);
    let sq = &x * &x;
    let f = f_k_poly().substitute_second_fraction(&sq, &UniPoly::constant(QuadElem::one(2)));
    let f_expected = UniPoly::from_rationals(&[int(0), int(0), int(0), int(1), int(-4), int(3), int(1)], 2);
    ensure!((&f - &f_expected).is_zero(), "f_K(x, x^2) = {f}");
    let den = UniPoly::from_rationals(&[int(1), int(-1)], 2);
    let g = g_k_poly().substitute_second_fraction(&sq, &den);
    let tail = UniPoly::from_rationals(&[int(0), int(0), int(0), int(0), int(0), int(0), int(0), int(1), int(-2)], 2);
    ensure!((&g + &tail).is_zero(), "(1-x)^4 g_K(x, x^2/(1-x)) = {g}");
    Ok("both identities vanish coefficientwise".into())
}

fn flag_suite() -> Outcome {
    let start = Instant::now();
    let equalities = ["i3n", "kuvw", "rho_expansion", "sst"];
    let inequalities = ["t4i", "t4n", "s4t4", "upper_bound", "trivial_bound"];
    let mut graphs: Vec<(String, WeightedGraph)> = ["petersen", "clebsch", "c5", "kneser-3"]
        .iter()
        .map(|n| (n.to_string(), catalog::by_name(n).unwrap()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7f5);
    for k in 0..100 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.2..0.8);
        let skel = random_triangle_free(&mut rng, n, p);
        let g = match positive_feasibility(&skel) {
            Ok(Some(w)) if k % 2 == 0 => skel.with_weights(w).unwrap(),
            _ => {
                let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
                let total: i64 = raw.iter().sum();
                skel.with_weights(raw.iter().map(|&x| rat(x, total)).collect()).unwrap()
            }
        };
        graphs.push((format!("random-{k}"), g));
    }
    let mut anchors = 0;
    let mut inequality_runs = 0;
    for (name, g) in &graphs {
        let rep = identity_suite(g).map_err(|e| format!("{name}: {e}"))?;
        for id in equalities {
            let c = rep.get(id).unwrap();
            ensure!(c.applicable && c.holds(), "{name}: {c}");
            anchors += c.anchors_checked;
        }
        for id in inequalities {
            let c = rep.get(id).unwrap();
            ensure!(!c.applicable || c.holds(), "{name}: {c}");
            inequality_runs += c.applicable as usize;
        }
        if !name.starts_with("random") {
            for id in inequalities {
                ensure!(rep.get(id).unwrap().applicable, "{name}: {id} not applicable");
            }
        }
    }
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{} graphs, {anchors} equality anchors, {inequality_runs} applicable inequality checks, {t}",
        graphs.len()
    ))
}

fn case_suite() -> Outcome {
    let clebsch = catalog::clebsch();
    for (v1, v2) in clebsch.minimizing_pairs().map_err(|e| e.to_string())? {
        let c = case_analysis(&clebsch, v1, v2).map_err(|e| e.to_string())?;
        ensure!(c.consistent(), "clebsch ({v1},{v2}) inconsistent");
        let t = c.check("twofifth").ok_or("clebsch: no twofifth check")?;
        ensure!(t.applicable && t.holds && t.tight(), "clebsch twofifth: {t}");
        let cover = c.check("cover").ok_or("clebsch: no cover check")?;
        ensure!(cover.applicable && cover.lhs == int(1), "clebsch cover: {cover}");
    }

    let hs = catalog::higman_sims().map_err(|e| e.to_string())?;
    let pairs = hs.minimizing_pairs().map_err(|e| e.to_string())?;
    let mut hat_checks = 0;
    for &(v1, v2) in pairs.iter().step_by(pairs.len().div_ceil(25)) {
        let c = case_analysis(&hs, v1, v2).map_err(|e| e.to_string())?;
        for ch in c.checks.iter().filter(|ch| ch.id.starts_with("hat_ij")) {
            ensure!(ch.applicable && ch.holds, "higman-sims ({v1},{v2}): {ch}");
            hat_checks += 1;
        }
    }
    ensure!(hat_checks > 0, "higman-sims produced no pair or triple F-hat checks");

    let petersen = catalog::petersen();
    for (v1, v2) in petersen.minimizing_pairs().map_err(|e| e.to_string())? {
        let c = case_analysis(&petersen, v1, v2).map_err(|e| e.to_string())?;
        ensure!(!c.above_third, "petersen ({v1},{v2}) reports a > rho/3");
        for id in ["w_exists", "c_at_least_two"] {
            let ch = c.check(id).ok_or(format!("petersen: no {id} check"))?;
            ensure!(!ch.applicable, "petersen gated check applicable: {ch}");
        }
        ensure!(c.consistent(), "petersen ({v1},{v2}) inconsistent");
    }
    Ok(format!("clebsch tight, {hat_checks} higman-sims F-hat checks, petersen gated"))
}

fn lp_suite() -> Outcome {
    for (name, g, rho, a) in [
        ("petersen", catalog::petersen(), rat(3, 10), rat(1, 10)),
        ("clebsch", catalog::clebsch(), rat(5, 16), rat(1, 8)),
        ("c5", catalog::cycle5(), rat(2, 5), rat(1, 5)),
    ] {
        let r = optimize_a(&g);
        ensure!(r.status == LpStatus::Optimal, "{name}: {:?}", r.status);
        ensure!(r.rho_g == Some(rho.clone()) && r.optimum_a == Some(a.clone()), "{name}: {r}");
        ensure!(r.verify(&g), "{name}: certificate rejected");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut defined = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=14);
        let p = rng.gen_range(0.2..0.7);
        let g = random_triangle_free(&mut rng, n, p);
        let base = rho_of_skeleton(&g);
        defined += base.is_ok() as usize;
        for _ in 0..3 {
            let order = shuffled(&mut rng, n);
            ensure!(rho_of_skeleton_with_order(&g, &order) == base, "order dependence on {:?}", g.edges());
            ensure!(rho_of_skeleton(&g.permuted(&order)) == base, "relabelling dependence on {:?}", g.edges());
        }
    }
    Ok(format!("3 optima certified, 100 skeletons ({defined} with defined rho)"))
}

fn boundedness_suite() -> Outcome {
    let mut graphs: Vec<(String, WeightedGraph)> = ["c5", "petersen", "clebsch", "higman-sims"]
        .iter()
        .map(|n| (n.to_string(), catalog::by_name(n).unwrap()))
        .collect();
    for k in 2..=5 {
        graphs.push((format!("kneser-{k}"), catalog::kneser(k).unwrap()));
    }
    for h in 1..=4 {
        let g = catalog::g_h(h).unwrap();
        let a = g.a_value().map_err(|e| e.to_string())?;
        ensure!(a >= rat(1, 4 * h as i64), "g-{h}: a = {a} < 1/{}", 4 * h);
        graphs.push((format!("g-{h}"), g));
    }
    for (name, g) in &graphs {
        ensure!(boundedness_check(g) == Ok(true), "{name}: boundedness check failed");
        let chain = boundedness_witness(g).map_err(|e| format!("{name}: {e}"))?;
        ensure!(chain.verify(g), "{name}: witness chain rejected");
    }
    Ok(format!("{} graphs", graphs.len()))
}

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

fn brute_force_count(n: usize) -> usize {
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = HashSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = SmallGraph::from_edges(n, &edges);
        if g.is_triangle_free() {
            let key = perms
                .iter()
                .map(|p| pairs.iter().map(|&(i, j)| g.has_edge(p[i], p[j])).collect::<Vec<bool>>())
                .min()
                .unwrap();
            seen.insert(key);
        }
    }
    seen.len()
}

fn search_reproduction() -> Outcome {
    for n in 1..=6 {
        let fast = enumerate_triangle_free(n).len();
        let slow = brute_force_count(n);
        ensure!(fast == slow, "n = {n}: enumeration {fast}, brute force {slow}");
    }
    let start = Instant::now();
    let cfg = SearchConfig::new(11).with_rho(int(0), rat(1, 3));
    let first = run_search(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let second = run_search(&cfg.clone().with_workers(1)).map_err(|e| e.to_string())?;
    let lines = |rs: &[tfsr::search::SearchResult]| rs.iter().map(|r| r.to_string()).collect::<Vec<_>>();
    ensure!(lines(&first) == lines(&second), "two runs differ");
    ensure!(first.len() == 1, "expected one survivor, got {:?}", lines(&first));
    let petersen = SmallGraph::from_weighted(&catalog::petersen()).unwrap();
    let found = SmallGraph::from_weighted(&first[0].skeleton).unwrap();
    ensure!(canonical(&found).cert == canonical(&petersen).cert, "survivor {} is not Petersen", first[0].graph6());
    ensure!(elapsed <= Duration::from_secs(1800), "search took {:.0}s", elapsed.as_secs_f64());
    Ok(format!("only {} found in {:.1}s, brute force agrees for n <= 6", first[0].graph6(), elapsed.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("tightness quadruple", tightness),
        ("krein exactness", krein_exactness),
        ("breakpoint reproduction", breakpoints),
        ("two-bound proximity", proximity),
        ("piecewise continuity", continuity),
        ("polynomial identities", polynomial_identities),
        ("flag identity suite", flag_suite),
        ("case-analysis suite", case_suite),
        ("lp suite", lp_suite),
        ("boundedness suite", boundedness_suite),
        ("search reproduction", search_reproduction),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let num = i + 1;
        let label = format!("criterion {num} {name}");
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("{label}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("{label}: FAIL ({detail})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
