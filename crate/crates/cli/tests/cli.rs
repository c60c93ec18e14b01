use std::fs;
use std::path::{Path, PathBuf};

use ktree_thickness::graph::complete_split;
use ktree_thickness::{Graph, KTreeBuild};
use ktree_thickness_cli::run;
use tempfile::TempDir;

fn ktt(args: &[&str]) -> i32 {
    run(std::iter::once("ktt").chain(args.iter().copied()))
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn split_generation_matches_the_library() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.json");
    assert_eq!(ktt(&["gen", "split", "--k", "3", "--s", "5", "-o", s(&g)]), 0);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(KTreeBuild::from_json(&value).unwrap(), complete_split(3, 5).unwrap());
}

#[test]
fn pipelines_exit_zero() {
    let dir = TempDir::new().unwrap();
    for (k, n) in [(1, 12), (2, 15), (3, 14), (4, 16)] {
        let b = path(&dir, &format!("b{k}.json"));
        let b = s(&b);
        assert_eq!(ktt(&["gen", "ktree", "--k", &k.to_string(), "--n", &n.to_string(), "--seed", "3", "-o", b]), 0);

        let e = path(&dir, &format!("e{k}.json"));
        assert_eq!(ktt(&["embed", "stars", "-i", b, "-o", s(&e)]), 0);
        assert_eq!(ktt(&["verify", "book", "-i", s(&e), "-g", b, "--mode", "star-forest"]), 0);

        let d = path(&dir, &format!("d{k}.json"));
        assert_eq!(ktt(&["draw", "thickness", "-i", b, "-o", s(&d)]), 0);
        assert_eq!(ktt(&["verify", "drawing", "-i", s(&d), "--mode", "noncrossing"]), 0);
        if k % 2 == 0 && k >= 4 {
            assert_eq!(ktt(&["verify", "good", "-i", s(&d), "-g", b]), 0);
        }

        let f = path(&dir, &format!("f{k}.json"));
        assert_eq!(ktt(&["draw", "forests", "-i", b, "-o", s(&f)]), 0);
        assert_eq!(ktt(&["verify", "drawing", "-i", s(&f), "-g", b, "--mode", "forest"]), 0);

        if k <= 2 {
            let p = path(&dir, &format!("p{k}.json"));
            assert_eq!(ktt(&["draw", "planar2", "-i", b, "-o", s(&p)]), 0);
            assert_eq!(ktt(&["verify", "drawing", "-i", s(&p), "-g", b]), 0);
        }
        if k == 2 {
            let e2 = path(&dir, "e2f.json");
            assert_eq!(ktt(&["embed", "forests2", "-i", b, "-o", s(&e2)]), 0);
            assert_eq!(ktt(&["verify", "book", "-i", s(&e2), "-g", b, "--mode", "forest"]), 0);
        }
    }
}

#[test]
fn broken_artifacts_fail_verification() {
    let dir = TempDir::new().unwrap();
    let b = path(&dir, "b.json");
    assert_eq!(ktt(&["gen", "ktree", "--k", "3", "--n", "9", "-o", s(&b)]), 0);
    let e = path(&dir, "e.json");
    assert_eq!(ktt(&["embed", "stars", "-i", s(&b), "-o", s(&e)]), 0);
    let mut emb: serde_json::Value = serde_json::from_str(&fs::read_to_string(&e).unwrap()).unwrap();
    for p in emb["pages"].as_object_mut().unwrap().values_mut() {
        *p = 1.into();
    }
    emb["page_count"] = 1.into();
    fs::write(&e, emb.to_string()).unwrap();
    assert_eq!(ktt(&["verify", "book", "-i", s(&e), "-g", s(&b)]), 1);
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ktt(&["frobnicate"]), 2);
    assert_eq!(ktt(&["gen", "ktree", "--k", "2"]), 2);
    assert_eq!(ktt(&["draw", "forests", "-i", s(&path(&dir, "missing.json"))]), 2);
    let junk = path(&dir, "junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(ktt(&["oracle", "bt", "-i", s(&junk)]), 2);
    assert_eq!(ktt(&["verify", "drawing", "-i", s(&junk), "--mode", "sideways"]), 2);
}

#[test]
fn oracles_and_refuters() {
    let dir = TempDir::new().unwrap();
    let k6 = path(&dir, "k6.json");
    fs::write(&k6, Graph::complete(6).to_json().to_string()).unwrap();
    for kind in ["bt", "tt", "arb", "sa", "chain"] {
        assert_eq!(ktt(&["oracle", kind, "-i", s(&k6)]), 0, "{kind}");
    }
    assert_eq!(ktt(&["oracle", "bt", "-i", s(&k6), "--json"]), 0);

    assert_eq!(ktt(&["refute", "sa", "--k", "2", "--seed", "5"]), 0);
    assert_eq!(ktt(&["refute", "tt", "--k", "5", "--s", "65", "--ell", "2", "--seed", "1"]), 0);
    assert_eq!(ktt(&["refute", "ot", "--k", "3", "--s", "17", "--ell", "2", "--seed", "1"]), 0);
    // too few independent vertices for the pigeonhole
    assert_eq!(ktt(&["refute", "tt", "--k", "5", "--s", "10", "--ell", "2"]), 2);
}

#[test]
fn svg_export_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let b = path(&dir, "b.json");
    assert_eq!(ktt(&["gen", "ktree", "--k", "3", "--n", "4", "-o", s(&b)]), 0);
    let d = path(&dir, "d.json");
    assert_eq!(ktt(&["draw", "forests", "-i", s(&b), "-o", s(&d)]), 0);
    let (a, c) = (path(&dir, "a.svg"), path(&dir, "c.svg"));
    assert_eq!(ktt(&["export-svg", "-i", s(&d), "-o", s(&a)]), 0);
    assert_eq!(ktt(&["export-svg", "-i", s(&d), "-o", s(&c)]), 0);
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&c).unwrap());
    assert_eq!(svg.matches("<g ").count(), 3);
    assert_eq!(svg.matches("<line ").count(), 6);

    let e = path(&dir, "e.json");
    assert_eq!(ktt(&["embed", "stars", "-i", s(&b), "-o", s(&e)]), 0);
    let out = path(&dir, "e.svg");
    assert_eq!(ktt(&["export-svg", "-i", s(&e), "-o", s(&out)]), 0);
    assert_eq!(fs::read_to_string(&out).unwrap().matches("<line ").count(), 6);

    assert_eq!(ktt(&["export-svg", "-i", s(&b)]), 2);
}
