//! Deterministic example inputs. Each file carries a `_provenance` field
//! saying how it was produced.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use acmq::algebra::{poly_parse, Polynomial};
use acmq::picard::PicardLattice;
use acmq::schemes;
use acmq::surface::{pfaffian_rep_from_quadrics, quadric_product_sum, QuarticSurface};
use serde_json::{json, Value};

const QUADRICS: [&str; 6] =
    ["x0^2 - x1*x2", "x3^2 + x0*x1", "x1^2 - x2*x3", "x0*x3 + 2*x2^2", "x2^2 - x0*x2", "x1*x3 - x0^2 + x3^2"];

fn tagged(provenance: &str, body: Value) -> Value {
    let mut v = json!({ "_provenance": provenance });
    if let Value::Object(extra) = body {
        v.as_object_mut().expect("object").extend(extra);
    }
    v
}

fn lattice(gram: Vec<Vec<i64>>, h: Vec<i64>) -> Value {
    PicardLattice::new(gram, h).expect("sample lattice is valid").to_json()
}

/// Writes the corpus into `dir` (created if missing) and returns the paths.
pub fn corpus_generate(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let q: [Polynomial; 6] = QUADRICS.map(|s| poly_parse(s, Some(2)).expect("sample quadric parses"));
    let f = quadric_product_sum(&q);
    let tc_params: Vec<i64> = (0..8).collect();
    let files: Vec<(&str, Value)> = vec![
        (
            "cube.json",
            tagged(
                "vertices (a,b,c,1), a,b,c in {0,1}: complete intersection of three quadrics",
                schemes::cube_points().to_json(),
            ),
        ),
        (
            "tc8.json",
            tagged(
                "(1,t,t^2,t^3) for t = 0..7 on the twisted cubic",
                schemes::twisted_cubic_points_int(&tc_params).expect("distinct parameters").to_json(),
            ),
        ),
        (
            "general8_seed1.json",
            tagged("acmq scheme generate --kind random --count 8 --seed 1", schemes::random_points(1, 8).to_json()),
        ),
        (
            "coplanar8_seed1.json",
            tagged(
                "acmq scheme generate --kind coplanar --count 8 --seed 1",
                schemes::random_coplanar_points(1, 8).to_json(),
            ),
        ),
        ("collinear8.json", tagged("(1,t,0,0) for t = 0..7", schemes::collinear_points(8).to_json())),
        ("fermat.json", tagged("Fermat quartic", json!({ "f": QuarticSurface::fermat().equation().to_string() }))),
        ("quadrics.json", tagged("fixed sample quadrics q1..q6", json!({ "quadrics": QUADRICS }))),
        ("quadric_quartic.json", tagged("q1*q2 + q3*q4 + q5*q6 for quadrics.json", json!({ "f": f.to_string() }))),
        (
            "quadric_pfaffian.json",
            tagged(
                "acmq surface build-pfaffian --quadrics quadrics.json",
                pfaffian_rep_from_quadrics(&q).expect("quadrics are quadrics").to_json(),
            ),
        ),
        ("lattice_rank1.json", tagged("Picard lattice generated by h, h^2 = 4", lattice(vec![vec![4]], vec![1]))),
        (
            "lattice_rank2_elliptic.json",
            tagged(
                "basis (h, D): elliptic quartic curve, Dh = 4, D^2 = 0",
                lattice(vec![vec![4, 4], vec![4, 0]], vec![1, 0]),
            ),
        ),
        (
            "lattice_rank2_quintic.json",
            tagged(
                "basis (h, D): genus-2 quintic curve, Dh = 5, D^2 = 2",
                lattice(vec![vec![4, 5], vec![5, 2]], vec![1, 0]),
            ),
        ),
        (
            "lattice_rank2_sextic.json",
            tagged(
                "basis (h, D): genus-3 sextic curve, Dh = 6, D^2 = 4",
                lattice(vec![vec![4, 6], vec![6, 4]], vec![1, 0]),
            ),
        ),
        (
            "lattice_rank3_two_elliptic.json",
            tagged(
                "basis (h, E1, E2): two elliptic quartic classes with E1.E2 = 2",
                lattice(vec![vec![4, 4, 4], vec![4, 0, 2], vec![4, 2, 0]], vec![1, 0, 0]),
            ),
        ),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (name, value) in files {
        let path = dir.join(name);
        fs::write(&path, serde_json::to_string_pretty(&value).expect("corpus serializes") + "\n")?;
        written.push(path);
    }
    Ok(written)
}
