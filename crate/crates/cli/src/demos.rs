//! Worked examples with their checks.

use serde_json::json;
use ultrastar::metric::dplus_space;
use ultrastar::*;

use crate::commands::{relation_name, CmdResult, Report, EXIT_FAILURE, EXIT_OK};
use crate::format::default_names;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Demo {
    #[value(name = "figure1")]
    Figure1,
    #[value(name = "figure2")]
    Figure2,
    #[value(name = "figure3")]
    Figure3,
    #[value(name = "figure4")]
    Figure4,
    #[value(name = "example2.3")]
    Example23,
    #[value(name = "example3.7")]
    Example37,
}

fn z(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn matrix_text(names: &[String], s: &Space) -> String {
    let mut out = Vec::new();
    for (i, j) in s.pairs() {
        out.push(format!("d({}, {}) = {}", names[i], names[j], s.dist(i, j)));
    }
    out.join("\n")
}

fn finish(ok: bool, text: String, mut json: serde_json::Value) -> CmdResult {
    json["checks_pass"] = json!(ok);
    let text = format!("{text}\nchecks: {}", if ok { "pass" } else { "FAIL" });
    Ok(Report { code: if ok { EXIT_OK } else { EXIT_FAILURE }, text, json })
}

pub fn run(demo: Demo) -> CmdResult {
    match demo {
        Demo::Figure1 => figure1(),
        Demo::Figure2 => figure2(),
        Demo::Figure3 => figure3(),
        Demo::Figure4 => figure4(),
        Demo::Example23 => example23(),
        Demo::Example37 => example37(),
    }
}

fn figure1() -> CmdResult {
    let names = default_names("x", 3, 0);
    let star = Star::new(0, vec![z(0), z(1), z(2)])?;
    let space = star_ultrametric(&star)?;
    let expected = Space::new(vec![vec![z(0), z(1), z(2)], vec![z(1), z(0), z(2)], vec![z(2), z(2), z(0)]])?;
    let hubs = find_hubs(&space);
    let again = synthesize_star(&space, hubs.hubs[0])?;
    let round_trip = star_ultrametric(&again)? == space;
    let text = format!(
        "star: center x0 (label 0), leaves x1 (label 1), x2 (label 2)\n{}\nis the (2, 2, 1) triangle: {}\nhubs: {}\nstar synthesized at {} generates the same space: {}",
        matrix_text(&names, &space),
        yes(space == expected),
        hubs.hubs.iter().map(|&h| names[h].clone()).collect::<Vec<_>>().join(" "),
        names[hubs.hubs[0]],
        yes(round_trip)
    );
    let ok = space == expected && hubs.hubs.contains(&0) && round_trip;
    finish(ok, text, json!({"demo": "figure1", "hubs": hubs.hubs, "round_trip": round_trip}))
}

fn figure2() -> CmdResult {
    // 0 < a1 <= a2 <= a3 <= a4
    let labels: Vec<Rational> = (1..=4).map(z).collect();
    let path = Tree::path(labels.clone())?;
    let star = Star::new(0, labels)?;
    let ps = tree_ultrametric(&path)?;
    let ss = star_ultrametric(&star)?;
    let names = default_names("v", 4, 1);
    let iso = find_isometry(&ps, &ss);
    let trees_isomorphic = labeled_tree_isomorphic(&path, &star.to_tree()).is_some();
    let mut path_degrees: Vec<usize> = (0..4).map(|v| path.degree(v)).collect();
    let mut star_degrees: Vec<usize> = (0..4).map(|v| star.to_tree().degree(v)).collect();
    path_degrees.sort_unstable();
    star_degrees.sort_unstable();
    let text = format!(
        "path v1-v2-v3-v4 and star centered at v1, labels 1, 2, 3, 4\npath space:\n{}\nisometry from path space to star space: {}\nlabeled trees isomorphic: {} (degree sequences {:?} and {:?})",
        matrix_text(&names, &ps),
        iso.as_ref().map_or("none".to_string(), |f| f.to_string()),
        yes(trees_isomorphic),
        path_degrees,
        star_degrees
    );
    let ok = iso.is_some() && !trees_isomorphic;
    finish(
        ok,
        text,
        json!({
            "demo": "figure2",
            "isometry": iso.map(|f| f.images().to_vec()),
            "trees_isomorphic": trees_isomorphic,
        }),
    )
}

fn figure3() -> CmdResult {
    let names: Vec<String> = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
    let x4: Space = x4_space();
    let y4: Space = y4_space();
    let hx = find_hubs(&x4);
    let hy = find_hubs(&y4);
    let similar = weakly_similar(&x4, &y4).is_some();
    let valid = validate_ultrametric(&x4.to_matrix())?.is_ok() && validate_ultrametric(&y4.to_matrix())?.is_ok();
    let text = format!(
        "X4:\n{}\nhubs of X4: {}\nY4:\n{}\nhubs of Y4: {}\nboth ultrametric: {}\nX4 and Y4 weakly similar: {}",
        matrix_text(&names, &x4),
        if hx.is_us { "some" } else { "none" },
        matrix_text(&names, &y4),
        if hy.is_us { "some" } else { "none" },
        yes(valid),
        yes(similar)
    );
    let ok = valid && !hx.is_us && !hy.is_us && !similar;
    finish(
        ok,
        text,
        json!({"demo": "figure3", "x4_hubs": hx.hubs, "y4_hubs": hy.hubs, "weakly_similar": similar}),
    )
}

fn figure4() -> CmdResult {
    let r = ray_experiment(5)?;
    let ok = r.hubs.is_us && r.last_vertex_is_hub() && r.embedding_verified();
    finish(
        ok,
        r.to_string(),
        json!({
            "demo": "figure4",
            "N": r.n,
            "hubs": r.hubs.hubs,
            "embedding_verified": r.embedding_verified(),
        }),
    )
}

fn example23() -> CmdResult {
    let points = [z(0), z(1), z(2), Rational::new(5, 2)];
    let names: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    let space = dplus_space(&points)?;
    let hubs = find_hubs(&space);
    let star = synthesize_star(&space, 0)?;
    let generates = is_generating(&star, &space)?;
    let text = format!(
        "points 0, 1, 2, 5/2 with d(p, q) = max(p, q) for p != q\n{}\nhubs: {}\nstar centered at 0 generates the space: {}",
        matrix_text(&names, &space),
        hubs.hubs.iter().map(|&h| names[h].clone()).collect::<Vec<_>>().join(" "),
        yes(generates)
    );
    let ok = hubs.hubs.contains(&0) && generates;
    finish(ok, text, json!({"demo": "example2.3", "hubs": hubs.hubs, "generates": generates}))
}

fn example37() -> CmdResult {
    let d = z(1);
    let star = Star::new(1, vec![d, z(0)])?;
    let space = star_ultrametric(&star)?;
    let iso = isometry_group(&space)?;
    let aut = labeled_star_automorphisms(&star);
    let swap = Permutation::transposition(2, 0, 1);
    let cmp = compare_groups(&iso, &aut)?;
    let text = format!(
        "two points at distance {d}; star labels (x1: {d}, x2: 0)\n|Iso(X)| = {}\n|Iso S(l)| = {}\nswap is an isometry: {}\nswap is a star automorphism: {}\nrelation: {}",
        iso.order(),
        aut.order(),
        yes(iso.contains(&swap)),
        yes(aut.contains(&swap)),
        relation_name(cmp.relation)
    );
    let ok = iso.contains(&swap) && !aut.contains(&swap) && cmp.relation == GroupRelation::StarStrictlySmaller;
    finish(
        ok,
        text,
        json!({"demo": "example3.7", "iso_space_order": iso.order(), "iso_star_order": aut.order()}),
    )
}
