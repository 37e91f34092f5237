//! Acceptance checks, one per criterion. Prints a PASS/FAIL line for each
//! and exits non-zero if any fails.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use clap::Parser;
use corewalk::analysis::{count_triangles, enumerate_core_space, four_node_census, srp, SubgraphCensus};
use corewalk::chain::{forest_count, sample_forest_core1, ChainState, StepOutcome};
use corewalk::io::read_batch;
use corewalk::{
    config_sample, core_decomposition, is_realizable, realize, sample, ChainConfig, CoreSequence, Graph, SampleInput,
};
use corewalk_cli::{run, Cli};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------------------
// Independent oracles

fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Core values from the definition: peel nodes of degree below k until none
/// remain, for every k.
fn definitional_cores(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let adj = matrix(g);
    let mut core = vec![0; n];
    for k in 1..n {
        let mut alive = vec![true; n];
        loop {
            let doomed: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && (0..n).filter(|&w| alive[w] && adj[v][w]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            doomed.into_iter().for_each(|v| alive[v] = false);
        }
        (0..n).filter(|&v| alive[v]).for_each(|v| core[v] = k);
    }
    core
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

fn tv_from_uniform(tally: &HashMap<Vec<(usize, usize)>, u64>, states: usize) -> f64 {
    let total: u64 = tally.values().sum();
    let u = 1.0 / states as f64;
    let seen: f64 = tally.values().map(|&c| (c as f64 / total as f64 - u).abs()).sum();
    0.5 * (seen + (states - tally.len()) as f64 * u)
}

fn tally<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> HashMap<Vec<(usize, usize)>, u64> {
    let mut out = HashMap::new();
    for g in graphs {
        *out.entry(g.edges().collect()).or_insert(0) += 1;
    }
    out
}

/// Non-increasing sequences of length `n` with entries at most `max`.
fn sequences(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..=cap {
            prefix.push(x);
            rec(n, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::new(), &mut out);
    out
}

/// A random realizable sequence: a top core of at least `top + 1` nodes
/// followed by arbitrary smaller values.
fn random_realizable(rng: &mut ChaCha8Rng, max_n: usize, max_value: usize) -> CoreSequence {
    let top = rng.gen_range(0..=max_value.min(max_n - 1));
    let n = rng.gen_range(top + 1..=max_n);
    let n1 = rng.gen_range(top + 1..=n);
    let mut values = vec![top; n1];
    values.extend((n1..n).map(|_| rng.gen_range(0..=top)));
    CoreSequence::from_unsorted(values).0
}

fn seq(values: &[usize]) -> CoreSequence {
    CoreSequence::new(values.to_vec()).unwrap()
}

/// Forests on `k` labeled nodes with no isolated node, by brute force.
fn brute_forest_count(k: usize) -> u64 {
    all_graphs(k)
        .filter(|g| definitional_cores(g).iter().all(|&c| c == 1))
        .count() as u64
}

// ---------------------------------------------------------------------------
// Criteria

fn c1_realizability_oracle() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut checked = 0;
    for n in 0..=6 {
        let realized: BTreeSet<Vec<usize>> = all_graphs(n).map(|g| sorted_desc(definitional_cores(&g))).collect();
        for c in sequences(n, 4) {
            checked += 1;
            if is_realizable(&seq(&c)) != realized.contains(&c) {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        mismatches == 0 && elapsed < Duration::from_secs(300),
        format!("{checked} sequences, {mismatches} mismatches, {elapsed:.1?}"),
    )
}

fn c2_constructor_roundtrip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    for _ in 0..1000 {
        let c = random_realizable(&mut rng, 50, 10);
        match realize(&c) {
            Ok(g) if core_decomposition(&g).sequence() == c => {}
            _ => failures += 1,
        }
    }
    let elapsed = start.elapsed();
    check(
        failures == 0 && elapsed < Duration::from_secs(60),
        format!("1000 sequences, {failures} failures, {elapsed:.1?}"),
    )
}

fn c3_chain_closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut big = random_realizable(&mut rng, 200, 8);
    while big.len() != 200 || big.max() < 3 {
        big = random_realizable(&mut rng, 200, 8);
    }
    let mut details = Vec::new();
    let mut violations = 0;
    for (name, c) in [("(3,3,3,3,1,1)", seq(&[3, 3, 3, 3, 1, 1])), ("(2,2,2,2,2)", seq(&[2; 5])), ("200-node", big)] {
        let mut state = ChainState::new(realize(&c).unwrap()).unwrap();
        let mut walk = ChaCha8Rng::seed_from_u64(30);
        let mut accepted = 0;
        for _ in 0..100_000 {
            if let StepOutcome::Accepted(_) = state.transition(&mut walk) {
                accepted += 1;
                if core_decomposition(state.graph()).sequence() != c {
                    violations += 1;
                }
            }
        }
        details.push(format!("{name}: {accepted} accepted"));
    }
    check(violations == 0, format!("{}; {violations} violations", details.join(", ")))
}

fn c4_uniformity_two_core() -> Outcome {
    let start = Instant::now();
    let c = seq(&[2, 2, 2, 2]);
    let states = enumerate_core_space(&c).unwrap().len();
    let cfg = ChainConfig {
        steps: Some(20_000),
        num_samples: 100_000,
        ..ChainConfig::with_seed(4)
    };
    let batch = sample(SampleInput::Sequence(c), &cfg).unwrap();
    let tv = tv_from_uniform(&tally(&batch.graphs), states);
    let elapsed = start.elapsed();
    check(
        states == 9 && tv < 0.05 && elapsed < Duration::from_secs(600),
        format!("{states} states, 100000 samples x 20000 steps, TV {tv:.4}, {elapsed:.1?}"),
    )
}

fn c5_forest_uniformity() -> Outcome {
    let start = Instant::now();
    let c = seq(&[1, 1, 1, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs: Vec<Graph> = (0..100_000).map(|_| sample_forest_core1(&c, &mut rng).unwrap()).collect();
    let tv = tv_from_uniform(&tally(&graphs), 19);
    let (f4, f3) = (forest_count(4), forest_count(3));
    let (b4, b3) = (brute_forest_count(4), brute_forest_count(3));
    let elapsed = start.elapsed();
    check(
        tv < 0.05 && f4 == 19u32.into() && f3 == 3u32.into() && b4 == 19 && b3 == 3 && elapsed < Duration::from_secs(60),
        format!("TV {tv:.4} over 19 states; forest_count(4) = {f4}, (3) = {f3}; brute force {b4}, {b3}; {elapsed:.1?}"),
    )
}

fn cli(args: &[&str]) -> Result<String, String> {
    let cli = Cli::try_parse_from(std::iter::once("corewalk").chain(args.iter().copied())).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    run(cli, &mut out).map_err(|f| format!("{:#}", f.error))?;
    Ok(String::from_utf8(out).unwrap())
}

fn mean_triangles(dir: &Path) -> f64 {
    let graphs = read_batch(dir).unwrap();
    graphs.iter().map(|lg| count_triangles(&lg.graph) as f64).sum::<f64>() / graphs.len() as f64
}

fn c6_triangle_direction() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut values = vec![6; 10];
    values.extend([2; 30]);
    let seq_file = dir.path().join("seq.txt");
    fs::write(&seq_file, values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).unwrap();
    let s = seq_file.to_str().unwrap();
    let kcore = dir.path().join("kcore");
    let config = dir.path().join("config");
    cli(&["sample", "--seq", s, "--model", "kcore", "--seed", "6", "--out-dir", kcore.to_str().unwrap()])?;
    cli(&["sample", "--seq", s, "--model", "config", "--seed", "6", "--out-dir", config.to_str().unwrap()])?;
    let (k, c) = (mean_triangles(&kcore), mean_triangles(&config));
    let start = realize(&seq(&values)).unwrap();
    let m = start.edge_count();
    // Long single-run average, reported so a failure can be told apart from
    // slow mixing.
    let mut state = ChainState::new(start).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    state.run(2_000_000, &mut rng);
    let mut total = 0.0;
    for _ in 0..200 {
        state.run(100_000, &mut rng);
        total += count_triangles(state.graph()) as f64;
    }
    check(
        k >= c,
        format!(
            "m = {m}, {} steps; mean triangles k-core {k:.2} vs configuration {c:.2}; long-run k-core average {:.2}",
            100 * m,
            total / 200.0
        ),
    )
}

fn c7_edge_count_variability() -> Outcome {
    let cfg = ChainConfig {
        steps: Some(20_000),
        num_samples: 50,
        ..ChainConfig::with_seed(7)
    };
    let batch = sample(SampleInput::Sequence(seq(&[2, 2, 2, 2])), &cfg).unwrap();
    let four = batch.graphs.iter().filter(|g| g.edge_count() == 4).count();
    let five = batch.graphs.iter().filter(|g| g.edge_count() == 5).count();
    let p_both = 1.0 - (3.0f64 / 9.0).powi(50) - (6.0f64 / 9.0).powi(50);
    check(
        four > 0 && five > 0 && four + five == 50 && p_both > 0.999,
        format!("{four} four-edge and {five} five-edge samples; P(both) under uniformity = {p_both:.12}"),
    )
}

fn c8_configuration_baseline() -> Outcome {
    let inputs = [
        Graph::complete(5),
        Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3), (1, 2)]).unwrap(),
        realize(&seq(&[4, 4, 4, 4, 4, 3, 3, 2, 2, 1, 1, 0])).unwrap(),
    ];
    let mut violations = 0;
    for (i, g) in inputs.iter().enumerate() {
        let cfg = ChainConfig {
            num_samples: 50,
            ..ChainConfig::with_seed(80 + i as u64)
        };
        let batch = config_sample(g, &cfg).unwrap();
        violations += batch.graphs.iter().filter(|h| h.degree_sequence() != g.degree_sequence()).count();
    }
    let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let cfg = ChainConfig {
        num_samples: 100_000,
        ..ChainConfig::with_seed(8)
    };
    let batch = config_sample(&c4, &cfg).unwrap();
    let counts = tally(&batch.graphs);
    let tv = tv_from_uniform(&counts, 3);
    check(
        violations == 0 && counts.len() == 3 && tv < 0.05,
        format!("{violations} degree violations over 3 x 50 runs; 4-cycle TV {tv:.4} over {} states", counts.len()),
    )
}

/// Non-induced copies of a pattern, counted as edge-preserving injections
/// divided by the pattern's automorphisms.
fn brute_count(k: usize, edges: &[(usize, usize)], adj: &[Vec<bool>]) -> u64 {
    fn embeddings(k: usize, edges: &[(usize, usize)], adj: &[Vec<bool>], image: &mut Vec<usize>) -> u64 {
        if image.len() == k {
            return u64::from(edges.iter().all(|&(a, b)| adj[image[a]][image[b]]));
        }
        let mut total = 0;
        for v in 0..adj.len() {
            if !image.contains(&v) {
                image.push(v);
                total += embeddings(k, edges, adj, image);
                image.pop();
            }
        }
        total
    }
    let pattern = matrix(&Graph::from_edges(k, edges.iter().copied()).unwrap());
    embeddings(k, edges, adj, &mut Vec::new()) / embeddings(k, edges, &pattern, &mut Vec::new())
}

fn brute_census(g: &Graph) -> [u64; 7] {
    const PATTERNS: [(usize, &[(usize, usize)]); 7] = [
        (3, &[(0, 1), (1, 2), (0, 2)]),
        (4, &[(0, 1), (1, 2), (2, 3)]),
        (4, &[(0, 1), (0, 2), (0, 3)]),
        (4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
        (4, &[(0, 1), (1, 2), (0, 2), (2, 3)]),
        (4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]),
        (4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    ];
    let adj = matrix(g);
    PATTERNS.map(|(k, edges)| brute_count(k, edges, &adj))
}

fn c9_census_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut mismatches = 0;
    for _ in 0..200 {
        let n = rng.gen_range(0..=7);
        let p: f64 = rng.gen_range(0.1..0.9);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if four_node_census(&g).to_array() != brute_census(&g) {
            mismatches += 1;
        }
    }
    let k4 = four_node_census(&Graph::complete(4)).to_array();
    let table = [4, 12, 4, 3, 12, 6, 1];
    check(
        mismatches == 0 && k4 == table && brute_census(&Graph::complete(4)) == table,
        format!("200 random graphs, {mismatches} mismatches; K4 census {k4:?}"),
    )
}

fn census(a: [u64; 7]) -> SubgraphCensus {
    SubgraphCensus {
        triangle: a[0],
        path4: a[1],
        claw: a[2],
        cycle4: a[3],
        paw: a[4],
        diamond: a[5],
        k4: a[6],
    }
}

fn c10_srp_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    let mut nonzero_at_equal = 0;
    for _ in 0..10_000 {
        let draw = |rng: &mut ChaCha8Rng| census(std::array::from_fn(|_| rng.gen_range(0..1000)));
        let real = draw(&mut rng);
        let nulls: Vec<SubgraphCensus> = (0..rng.gen_range(2..10)).map(|_| draw(&mut rng)).collect();
        let profile = srp(&real, &nulls, 4.0).unwrap();
        if profile.delta.iter().any(|&d| d != 0.0) {
            let norm = profile.srp.iter().map(|x| x * x).sum::<f64>().sqrt();
            worst = worst.max((norm - 1.0).abs());
        }
        let same = srp(&real, &[real, real], 4.0).unwrap();
        if same.srp.iter().any(|&x| x != 0.0) {
            nonzero_at_equal += 1;
        }
    }
    check(
        worst <= 1e-12 && nonzero_at_equal == 0,
        format!("10000 profiles, max |norm - 1| = {worst:.1e}; {nonzero_at_equal} non-zero profiles at equal means"),
    )
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let seq_file = dir.path().join("seq.txt");
    fs::write(&seq_file, "4 4 4 4 4 4 3 3 3 2 2 1 1 0\n").unwrap();
    let mut outputs = Vec::new();
    for (name, jobs) in [("a", "1"), ("b", "1"), ("c", "2")] {
        let out_dir = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_corewalk"))
            .args(["sample", "--seq", seq_file.to_str().unwrap(), "--seed", "11", "--jobs", jobs])
            .args(["--out-dir", out_dir.to_str().unwrap()])
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("sample exited with {status}"));
        }
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(&out_dir)
            .unwrap()
            .map(|e| {
                let p = e.unwrap().path();
                (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
            })
            .collect();
        files.sort();
        outputs.push(files);
    }
    let count = outputs[0].len();
    check(
        count == 51 && outputs[0] == outputs[1] && outputs[0] == outputs[2],
        format!("{count} files per batch, identical across repeated runs and thread counts"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("realizability oracle equivalence", c1_realizability_oracle),
        ("constructor validity", c2_constructor_roundtrip),
        ("chain closure", c3_chain_closure),
        ("uniformity, top core 2", c4_uniformity_two_core),
        ("uniformity, top core 1", c5_forest_uniformity),
        ("triangle direction", c6_triangle_direction),
        ("edge-count variability", c7_edge_count_variability),
        ("configuration baseline", c8_configuration_baseline),
        ("census oracle equivalence", c9_census_oracle),
        ("SRP properties", c10_srp_properties),
        ("determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
