//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ktree_thickness::book::{embed_2tree_forests, embed_star_forests};
use ktree_thickness::geom::{
    draw_forests, draw_planar_2tree, draw_thickness, general_position_violation,
    perturbation_radius, Drawing, Pt,
};
use ktree_thickness::graph::{
    complete_split, qk_graph, random_ktree, star_lb_graph, Colouring, Graph, SplitParts,
};
use ktree_thickness::oracle::{
    exact_arboricity, exact_book_thickness, exact_star_arboricity, exact_thickness,
    inequality_chain_check,
};
use ktree_thickness::verify::{
    check_book, check_colourful, check_drawing_layers, check_good, has_k4_minor, nash_williams,
    refute_outerthickness, refute_star_arboricity, refute_thickness, validate_witness, LayerMode,
};
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let p: f64 = rng.gen_range(0.2..0.8);
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

fn star_arboricity_construction() -> Outcome {
    let start = Instant::now();
    let mut graphs = 0;
    for k in 1..=6 {
        for seed in 0..20u64 {
            let n = k + 1 + (seed as usize * 37 + k * 11) % (150 - k);
            let b = random_ktree(k, n, seed).map_err(|e| e.to_string())?;
            let g = b.realize();
            let emb = embed_star_forests(&b).map_err(|e| e.to_string())?;
            ensure(emb.page_count <= k + 1, || format!("k={k} seed={seed}: {} pages", emb.page_count))?;
            let r = check_book(&emb, &g, LayerMode::StarForest).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("k={k} seed={seed}: {:?}", r.violations.first()))?;
            for v in (0..n).filter(|&v| g.degree(v) == k && n > k + 1) {
                ensure(check_colourful(&emb.pages, v), || format!("k={k} seed={seed}: {v} not colourful"))?;
            }
            graphs += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("{graphs} k-trees, {t:.2?}"))
}

fn two_tree_book_arboricity() -> Outcome {
    for seed in 0..20u64 {
        let n = 3 + (seed as usize * 53) % 148;
        let b = random_ktree(2, n, seed).map_err(|e| e.to_string())?;
        let emb = embed_2tree_forests(&b).map_err(|e| e.to_string())?;
        ensure(emb.page_count <= 2, || format!("seed {seed}: {} pages", emb.page_count))?;
        let r = check_book(&emb, &b.realize(), LayerMode::Forest).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("seed {seed}: {:?}", r.violations.first()))?;
    }
    Ok("20 2-trees".into())
}

fn geometric_arboricity() -> Outcome {
    let mut graphs = 0;
    for k in 1..=5 {
        for seed in 0..3u64 {
            let n = [100, 60, 30][seed as usize];
            let b = random_ktree(k, n, 100 + seed).map_err(|e| e.to_string())?;
            let d = draw_forests(&b).map_err(|e| e.to_string())?;
            ensure(d.colour_count == k && d.colours.values().all(|&c| (1..=k).contains(&c)), || {
                format!("k={k}: colours outside 1..={k}")
            })?;
            let r = check_drawing_layers(&d, &b.realize(), LayerMode::Forest).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("k={k} seed={seed}: {:?}", r.violations.first()))?;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} drawings"))
}

fn geometric_thickness() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut graphs = 0;
    for k in 1..=6 {
        for seed in 0..2u64 {
            let n = 60;
            let b = random_ktree(k, n, 200 + seed).map_err(|e| e.to_string())?;
            let g = b.realize();
            let start = Instant::now();
            let d = draw_thickness(&b).map_err(|e| format!("k={k} seed={seed}: {e}"))?;
            let t = start.elapsed();
            slowest = slowest.max(t);
            let want = k.div_ceil(2);
            ensure(d.colours.values().all(|&c| (1..=want).contains(&c)), || {
                format!("k={k}: more than {want} colours")
            })?;
            let r = check_drawing_layers(&d, &g, LayerMode::Noncrossing).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("k={k} seed={seed}: {:?}", r.violations.first()))?;
            if k % 2 == 0 && k >= 4 {
                let r = check_good(&d, &b).map_err(|e| e.to_string())?;
                ensure(r.passed, || format!("k={k} seed={seed}: {:?}", r.violations.first()))?;
            }
            for c in 1..=want {
                let mut h = Graph::new(n);
                for e in d.class(c) {
                    h.add_edge(e.lo(), e.hi());
                }
                ensure(!has_k4_minor(&h), || format!("k={k} seed={seed}: class {c} has a K4 minor"))?;
            }
            if k == 6 {
                ensure(t < Duration::from_secs(60), || format!("k=6 took {t:?}"))?;
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} drawings, slowest {slowest:.2?}"))
}

fn oracle_fixtures() -> Outcome {
    for n in 4..=8 {
        let v = exact_book_thickness(&Graph::complete(n)).map_err(|e| e.to_string())?.value;
        ensure(v == n.div_ceil(2), || format!("bt(K_{n}) = {v}"))?;
    }
    let v = exact_thickness(&Graph::complete(8)).map_err(|e| e.to_string())?.value;
    ensure(v == 2, || format!("tt(K_8) = {v}"))?;
    let v = exact_thickness(&Graph::complete(9)).map_err(|e| e.to_string())?.value;
    ensure(v == 3, || format!("tt(K_9) = {v}"))?;
    for n in 2..=8 {
        let v = exact_arboricity(&Graph::complete(n)).map_err(|e| e.to_string())?.value;
        ensure(v == n.div_ceil(2), || format!("arb(K_{n}) = {v}"))?;
    }
    let v = exact_star_arboricity(&Graph::complete(4)).map_err(|e| e.to_string())?.value;
    ensure(v == 3, || format!("sa(K_4) = {v}"))?;
    let split = complete_split(2, 3).map_err(|e| e.to_string())?.realize();
    let v = exact_book_thickness(&split).map_err(|e| e.to_string())?.value;
    ensure(v == 2, || format!("bt(K*_(2,3)) = {v}"))?;
    Ok("bt(K_4..8), tt(K_8), tt(K_9), arb(K_2..8), sa(K_4), bt(K*_(2,3))".into())
}

fn refuters() -> Outcome {
    let gadget = star_lb_graph(2).map_err(|e| e.to_string())?;
    let edges = gadget.graph.edges();
    ensure(edges.len() == 16, || format!("gadget has {} edges", edges.len()))?;
    for mask in 0u32..1 << 16 {
        let c: Colouring = edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, 1 + (mask >> i & 1) as usize))
            .collect();
        let w = refute_star_arboricity(&gadget, &c).map_err(|e| format!("mask {mask}: {e}"))?;
        ensure(validate_witness(&gadget.graph, &c, &w), || format!("mask {mask}: bad witness"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (k, ell, s, thick) in [(5, 2, 65, true), (3, 2, 17, false)] {
        let parts = SplitParts::new(k, s);
        let g = parts.graph();
        let edges = g.edges();
        for trial in 0..10_000 {
            let c: Colouring = edges.iter().map(|&e| (e, rng.gen_range(1..=ell))).collect();
            let w = if thick {
                refute_thickness(&parts, &c, ell)
            } else {
                refute_outerthickness(&parts, &c, ell)
            }
            .map_err(|e| format!("k={k} trial {trial}: {e}"))?;
            ensure(validate_witness(&g, &c, &w), || format!("k={k} trial {trial}: bad witness"))?;
        }
    }
    Ok("65536 gadget colourings, 2 x 10000 split-graph colourings".into())
}

/// One random point strictly inside the open disc of radius `eps`.
fn offset(rng: &mut ChaCha8Rng, eps: &BigRational) -> Pt<BigRational> {
    // |(a, b)| / 1000 < 1 when both are at most 707.
    let a: i64 = rng.gen_range(-707..=707);
    let b: i64 = rng.gen_range(-707..=707);
    let s = |x: i64| eps * BigRational::new(x.into(), 1000.into());
    Pt::new(s(a), s(b))
}

fn perturbation_robustness() -> Outcome {
    let mut drawings: Vec<Drawing> = Vec::new();
    let mut seed = 0u64;
    while drawings.len() < 100 {
        let k = 1 + (seed % 2) as usize;
        let b = random_ktree(k, 8 + (seed % 7) as usize, seed).map_err(|e| e.to_string())?;
        drawings.push(draw_planar_2tree(&b).map_err(|e| e.to_string())?);
        seed += 1;
    }
    while drawings.len() < 200 {
        let k = 2 + (seed % 2) as usize;
        let b = random_ktree(k, 10, seed).map_err(|e| e.to_string())?;
        let d = draw_forests(&b).map_err(|e| e.to_string())?;
        for c in 1..=k {
            if drawings.len() < 200 {
                let mut layer = d.clone();
                layer.colours.retain(|_, x| *x == c);
                layer.colour_count = 1;
                drawings.push(layer);
            }
        }
        seed += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut trials = 0;
    for (i, d) in drawings.iter().enumerate() {
        ensure(general_position_violation(d).is_none(), || format!("drawing {i} not in general position"))?;
        let eps = perturbation_radius(d).map_err(|e| e.to_string())?;
        let g = d.graph();
        for _ in 0..100 {
            let mut moved = d.clone();
            for p in moved.positions.values_mut() {
                *p = p.add(&offset(&mut rng, &eps));
            }
            let r = check_drawing_layers(&moved, &g, LayerMode::Noncrossing).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("drawing {i}: {:?}", r.violations.first()))?;
            ensure(general_position_violation(&moved).is_none(), || format!("drawing {i}: collinear after move"))?;
            trials += 1;
        }
    }
    Ok(format!("{trials} perturbations of {} drawings", drawings.len()))
}

fn nash_williams_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..50 {
        let g = random_graph(&mut rng, 8);
        let nw = nash_williams(&g).map_err(|e| e.to_string())?;
        let a = exact_arboricity(&g).map_err(|e| e.to_string())?;
        let r = ktree_thickness::verify::check_classes(a.colouring(), &g, LayerMode::Forest)
            .map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("graph {i}: witness is not a forest partition"))?;
        ensure(nw == a.value, || format!("graph {i}: density {nw}, arboricity {}", a.value))?;
    }
    Ok("50 graphs".into())
}

fn inequality_chain() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..30 {
        let g = random_graph(&mut rng, 7);
        let r = inequality_chain_check(&g).map_err(|e| e.to_string())?;
        ensure(r.report.passed, || format!("graph {i}: {:?}", r.report.violations))?;
    }
    Ok("30 graphs".into())
}

fn qk_construction() -> Outcome {
    let b = qk_graph(3).map_err(|e| e.to_string())?;
    let g = b.realize();
    ensure(g.vertex_count() == 250 && g.edge_count() == 744, || {
        format!("{} vertices, {} edges", g.vertex_count(), g.edge_count())
    })?;
    let emb = embed_star_forests(&b).map_err(|e| e.to_string())?;
    ensure(emb.page_count <= 4, || format!("{} pages", emb.page_count))?;
    let r = check_book(&emb, &g, LayerMode::StarForest).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("{:?}", r.violations.first()))?;
    Ok(format!("{} pages", emb.page_count))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("star arboricity construction", star_arboricity_construction),
        ("2-tree book arboricity", two_tree_book_arboricity),
        ("geometric arboricity", geometric_arboricity),
        ("geometric thickness", geometric_thickness),
        ("oracle fixtures", oracle_fixtures),
        ("lower-bound refuters", refuters),
        ("perturbation robustness", perturbation_robustness),
        ("density formula equivalence", nash_williams_equivalence),
        ("inequality chain", inequality_chain),
        ("Q_3 construction", qk_construction),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
