use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use ultrastar::enumeration::{random_us_space, seeded_rng, BRUTE_FORCE_BOUND};
use ultrastar::lab::{ClassReport, CounterexampleCertificate};
use ultrastar::metric::Violation;
use ultrastar::similarity::SubsetScan;
use ultrastar::*;

use crate::format::{
    default_names, parse_space_doc, parse_tree_doc, space_to_json, star_to_json, tree_to_json, ParseError, SpaceDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

/// Seed used by randomized commands when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A finished command: both renderings plus the exit code.
pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { code: EXIT_OK, text, json }
    }

    fn with_code(code: i32, text: String, json: Value) -> Self {
        Self { code, text, json }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeBound { .. } => EXIT_BOUND,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

pub type CmdResult = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: ParseError) -> Failure {
    Failure::new(EXIT_PARSE, format!("{}: {e}", path.display()))
}

fn load_doc(path: &Path) -> Result<SpaceDoc, Failure> {
    parse_space_doc(&read(path)?).map_err(|e| located(path, e))
}

fn describe_structural(e: &Error, names: &[String], m: &[Vec<Rational>]) -> String {
    match *e {
        Error::Asymmetric { i, j } => {
            format!("d({}, {}) = {} but d({}, {}) = {}", names[i], names[j], m[i][j], names[j], names[i], m[j][i])
        }
        Error::NonzeroDiagonal { i } => format!("d({0}, {0}) = {1} is not zero", names[i], m[i][i]),
        _ => e.to_string(),
    }
}

fn describe_violation(v: &Violation, names: &[String], m: &[Vec<Rational>]) -> String {
    match *v {
        Violation::NonPositive { i, j } => {
            format!("d({}, {}) = {} for distinct points", names[i], names[j], m[i][j])
        }
        Violation::StrongTriangle { i, j, k } => {
            let longest = if m[i][k] > m[k][j] { m[i][k] } else { m[k][j] };
            format!(
                "triple ({a}, {b}, {c}): d({a}, {b}) = {} > max(d({a}, {c}), d({c}, {b})) = {longest}",
                m[i][j],
                a = names[i],
                b = names[j],
                c = names[k]
            )
        }
    }
}

fn violation_json(v: &Violation, names: &[String]) -> Value {
    match *v {
        Violation::NonPositive { i, j } => json!({"kind": "non-positive", "points": [names[i], names[j]]}),
        Violation::StrongTriangle { i, j, k } => {
            json!({"kind": "strong-triangle", "points": [names[i], names[j], names[k]]})
        }
    }
}

/// Parses and validates a space file; metric failures exit with 3.
fn load_space(path: &Path) -> Result<(Vec<String>, Space), Failure> {
    let doc = load_doc(path)?;
    match validate_ultrametric(&doc.matrix) {
        Err(e) => Err(Failure::new(
            EXIT_FAILURE,
            format!("{}: {}", path.display(), describe_structural(&e, &doc.names, &doc.matrix)),
        )),
        Ok(v) if !v.is_ok() => Err(Failure::new(
            EXIT_FAILURE,
            format!(
                "{}: not an ultrametric: {}",
                path.display(),
                describe_violation(&v.violations[0], &doc.names, &doc.matrix)
            ),
        )),
        Ok(_) => {
            let space = Space::new(doc.matrix)?;
            Ok((doc.names, space))
        }
    }
}

fn q(r: &Rational) -> String {
    r.to_string()
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn name_list(names: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| names[i].clone()).collect()
}

fn mapping_text(names_from: &[String], names_to: &[String], p: &Permutation) -> String {
    join((0..p.degree()).map(|i| format!("{}->{}", names_from[i], names_to[p.apply(i)])), " ")
}

fn tree_value(text: String) -> Value {
    serde_json::from_str(&text).expect("emitted json parses")
}

pub fn check(path: &Path) -> CmdResult {
    let doc = load_doc(path)?;
    let n = doc.names.len();
    match validate_ultrametric(&doc.matrix) {
        Err(e) => {
            let msg = describe_structural(&e, &doc.names, &doc.matrix);
            Ok(Report::with_code(
                EXIT_FAILURE,
                format!("ultrametric: no\n{msg}"),
                json!({"ultrametric": false, "points": n, "error": msg}),
            ))
        }
        Ok(v) if !v.is_ok() => {
            let mut text = format!("ultrametric: no\n{} violation(s)", v.violations.len());
            for violation in v.violations.iter().take(10) {
                text.push('\n');
                text.push_str(&describe_violation(violation, &doc.names, &doc.matrix));
            }
            let list: Vec<Value> = v.violations.iter().map(|x| violation_json(x, &doc.names)).collect();
            Ok(Report::with_code(
                EXIT_FAILURE,
                text,
                json!({"ultrametric": false, "points": n, "violations": list}),
            ))
        }
        Ok(_) => {
            let space = Space::new(doc.matrix)?;
            let spectrum = distance_spectrum(&space);
            let least = spectrum.infimum.finite().map(q);
            let text = format!(
                "ultrametric: yes\npoints: {n}\nspectrum: {}\nleast nonzero distance: {}",
                join(spectrum.all.iter().map(q), " "),
                least.clone().unwrap_or_else(|| "none".into())
            );
            let all: Vec<String> = spectrum.all.iter().map(q).collect();
            Ok(Report::ok(text, json!({"ultrametric": true, "points": n, "spectrum": all, "least_nonzero": least})))
        }
    }
}

pub fn hubs(path: &Path) -> CmdResult {
    let (names, space) = load_space(path)?;
    let report = find_hubs(&space);
    let listed = name_list(&names, &report.hubs);
    let text = format!(
        "hubs: {}\ngenerated by a labeled star: {}",
        if listed.is_empty() { "none".to_string() } else { listed.join(" ") },
        if report.is_us { "yes" } else { "no" }
    );
    let code = if report.is_us { EXIT_OK } else { EXIT_FAILURE };
    Ok(Report::with_code(code, text, json!({"hubs": listed, "is_us": report.is_us})))
}

fn resolve_point(names: &[String], key: &str) -> Result<usize, Failure> {
    if let Some(i) = names.iter().position(|n| n == key) {
        return Ok(i);
    }
    match key.parse::<usize>() {
        Ok(i) if i < names.len() => Ok(i),
        _ => Err(Failure::new(EXIT_PARSE, format!("--hub: no point named or numbered {key:?}"))),
    }
}

pub fn synthesize(path: &Path, hub: Option<&str>, witness: bool) -> CmdResult {
    let (names, space) = load_space(path)?;
    let report = find_hubs(&space);
    let center = match hub {
        Some(key) => resolve_point(&names, key)?,
        None => match report.first() {
            Some(h) => h,
            None => {
                return Ok(Report::with_code(
                    EXIT_FAILURE,
                    "no hub: the space is not generated by any labeled star".into(),
                    json!({"error": "no hub"}),
                ))
            }
        },
    };
    if !report.hubs.contains(&center) {
        return Ok(Report::with_code(
            EXIT_FAILURE,
            format!("{} is not a hub", names[center]),
            json!({"error": "not a hub", "point": names[center]}),
        ));
    }
    let star = synthesize_star(&space, center)?;
    if !witness {
        let verified = is_generating(&star, &space)?;
        let file = star_to_json(&names, &star);
        let text = format!(
            "center: {} (label 0)\ngenerates the space: {}\n{file}",
            names[center],
            if verified { "verified" } else { "NO" }
        );
        return Ok(Report::ok(text, tree_value(file)));
    }
    let explanation = unique_generator(&space)?.to_string();
    let (zero, shifted, shift, isomorphic) = match witness_nonuniqueness_at(&space, center)? {
        NonUniqueness::Pair { zero_center, shifted_center, shift, isomorphic, .. } => {
            if !zero_center.verified || !shifted_center.verified {
                return Err(Failure::new(EXIT_FAILURE, "internal: witness star failed verification"));
            }
            (zero_center.star, shifted_center.star, shift, isomorphic)
        }
        NonUniqueness::SingletonFamily => {
            let one = Rational::from_integer(1);
            (star.clone(), star.with_center_label(one)?, one, false)
        }
    };
    let zero_file = star_to_json(&names, &zero);
    let shifted_file = star_to_json(&names, &shifted);
    let text = format!(
        "{explanation}\nisomorphic: {}\nstar with center label 0:\n{zero_file}\nstar with center label {}:\n{shifted_file}",
        if isomorphic { "yes" } else { "no" },
        q(&shift)
    );
    let json = json!({
        "zero_center": tree_value(zero_file),
        "shifted_center": tree_value(shifted_file),
        "shift": q(&shift),
        "isomorphic": isomorphic,
        "explanation": explanation,
    });
    Ok(Report::ok(text, json))
}

pub(crate) fn relation_name(r: GroupRelation) -> &'static str {
    match r {
        GroupRelation::Equal => "equal",
        GroupRelation::StarStrictlySmaller => "star-strictly-smaller",
        GroupRelation::Incomparable => "incomparable",
    }
}

pub fn isogroups(path: &Path, star_path: Option<&Path>, bound: usize) -> CmdResult {
    let (names, space) = load_space(path)?;
    let iso = isometry_group_bounded(&space, bound)?;
    let mut text = format!("|Iso(X)| = {}", iso.order());
    let mut json = json!({"iso_space_order": iso.order()});
    let (star, source) = match star_path {
        Some(p) => {
            let doc = parse_tree_doc(&read(p)?).map_err(|e| located(p, e))?;
            if doc.tree.len() != space.len() {
                return Err(Failure::new(
                    EXIT_FAILURE,
                    format!("star has {} vertices, space has {} points", doc.tree.len(), space.len()),
                ));
            }
            (Some(doc.star()?), "file")
        }
        None => match find_hubs(&space).first() {
            Some(h) => (Some(synthesize_star(&space, h)?), "synthesized"),
            None => (None, "none"),
        },
    };
    let Some(star) = star else {
        text.push_str("\nno generating star: the space has no hub");
        json["star"] = Value::Null;
        return Ok(Report::ok(text, json));
    };
    if !is_generating(&star, &space)? {
        return Ok(Report::with_code(
            EXIT_FAILURE,
            format!("{text}\nthe star does not generate the space"),
            json!({"iso_space_order": iso.order(), "error": "star does not generate the space"}),
        ));
    }
    if star.len() > bound {
        return Err(Failure::from(Error::SizeBound { n: star.len(), bound }));
    }
    let aut = labeled_star_automorphisms(&star);
    let cmp = compare_groups(&iso, &aut)?;
    text.push_str(&format!(
        "\n|Iso S(l)| = {} (star centered at {}, {source})\nrelation: {}",
        aut.order(),
        names[star.center()],
        relation_name(cmp.relation)
    ));
    if let Some(w) = &cmp.witness {
        text.push_str(&format!("\nwitness: {}", mapping_text(&names, &names, w)));
    }
    json["iso_star_order"] = json!(aut.order());
    json["star_center"] = json!(names[star.center()]);
    json["star_source"] = json!(source);
    json["relation"] = json!(relation_name(cmp.relation));
    json["witness"] = json!(cmp.witness.as_ref().map(|w| w.images().to_vec()));
    if let Ok(swap) = min_leaf_swap_isometry(&space, &star) {
        text.push_str(&format!(
            "\ncenter/least-leaf swap: {} (isometry: {}, star automorphism: {})",
            mapping_text(&names, &names, &swap),
            if iso.contains(&swap) { "yes" } else { "no" },
            if aut.contains(&swap) { "yes" } else { "no" }
        ));
        json["min_leaf_swap"] = json!(swap.images().to_vec());
    }
    Ok(Report::ok(text, json))
}

pub fn weaksim(path1: &Path, path2: &Path) -> CmdResult {
    let (names1, a) = load_space(path1)?;
    let (names2, b) = load_space(path2)?;
    match weakly_similar(&a, &b) {
        Some(w) => {
            let f_text = join(w.f.iter().map(|(x, y)| format!("{x}->{y}")), " ");
            let text = format!(
                "weakly similar: yes\nphi: {}\nf: {f_text}",
                mapping_text(&names1, &names2, &w.phi)
            );
            let f: Vec<[String; 2]> = w.f.iter().map(|(x, y)| [q(x), q(y)]).collect();
            let phi: Vec<[String; 2]> =
                (0..w.phi.degree()).map(|i| [names1[i].clone(), names2[w.phi.apply(i)].clone()]).collect();
            Ok(Report::ok(text, json!({"weakly_similar": true, "phi": phi, "f": f})))
        }
        None => {
            let reason = if a.len() != b.len() {
                format!("different sizes ({} and {})", a.len(), b.len())
            } else if distance_spectrum(&a).all.len() != distance_spectrum(&b).all.len() {
                "different numbers of distinct distances".to_string()
            } else {
                "rank matrices are not equivalent under any relabeling".to_string()
            };
            Ok(Report::with_code(
                EXIT_FAILURE,
                format!("weakly similar: no\nreason: {reason}"),
                json!({"weakly_similar": false, "reason": reason}),
            ))
        }
    }
}

fn ranks_json(r: &RankMatrix) -> Value {
    json!(r.rows())
}

pub fn enumerate(n: usize, oracle: bool, jobs: usize, bound: usize) -> CmdResult {
    if n == 0 {
        return Err(Failure::new(EXIT_PARSE, "--n must be at least 1"));
    }
    let classes = enumerate_classes(n, EnumerationConfig { bound, jobs })?;
    let agrees = if oracle {
        if n > BRUTE_FORCE_BOUND {
            return Err(Failure::from(Error::SizeBound { n, bound: BRUTE_FORCE_BOUND }));
        }
        Some(brute_force_classes(n)? == classes)
    } else {
        None
    };
    let mut text = String::new();
    for c in &classes {
        text.push_str(&format!(
            "class {}: levels {}, ranks {}\n",
            c.id,
            c.ranks.levels(),
            join(c.ranks.upper_triangle(), " ")
        ));
    }
    text.push_str(&format!("{} classes", classes.len()));
    match agrees {
        Some(true) => text.push_str(", oracle agrees"),
        Some(false) => text.push_str(", oracle DISAGREES"),
        None => {}
    }
    let list: Vec<Value> = classes
        .iter()
        .map(|c| json!({"id": c.id, "levels": c.ranks.levels(), "ranks": ranks_json(&c.ranks)}))
        .collect();
    let json = json!({
        "n": n,
        "count": classes.len(),
        "oracle": agrees.map(|a| if a { "agrees" } else { "disagrees" }),
        "classes": list,
    });
    let code = if agrees == Some(false) { EXIT_FAILURE } else { EXIT_OK };
    Ok(Report::with_code(code, text, json))
}

fn scan_json(scan: &[SubsetScan]) -> Value {
    json!(scan
        .iter()
        .map(|s| json!({"subset": s.subset, "matched": s.matched.map(|m| m.name())}))
        .collect::<Vec<_>>())
}

fn class_json(c: &ClassReport) -> Value {
    json!({
        "n": c.n,
        "id": c.id,
        "ranks": ranks_json(&c.ranks),
        "hubs": c.hubs.hubs,
        "is_us": c.hubs.is_us,
        "status": c.status.name(),
        "obstruction": c.obstruction.as_ref().map(|o| json!({
            "subset": o.subset,
            "target": o.target.name(),
            "phi": o.witness.phi.images(),
        })),
        "hereditary": c.hereditary,
        "certificate_verified": c.certificate_verified,
    })
}

pub fn certificate_json(c: &CounterexampleCertificate) -> Value {
    json!({
        "ranks": ranks_json(&c.ranks),
        "hubs": c.hubs.hubs,
        "is_us": c.hubs.is_us,
        "status": c.status.name(),
        "scan": scan_json(&c.scan),
    })
}

pub fn conjecture(n_max: usize, jobs: usize, bound: usize, certificate_dir: Option<&Path>) -> CmdResult {
    let report = verify_sepjtg(n_max, EnumerationConfig { bound, jobs })?;
    let mut text = report.to_string();
    for c in &report.classes {
        let obstruction = match &c.obstruction {
            Some(o) => format!("{} on {}", o.target.name(), join(o.subset, ",")),
            None => "none".to_string(),
        };
        text.push_str(&format!(
            "\nn={} class {}: {}, hubs [{}], obstruction {obstruction}",
            c.n,
            c.id,
            c.status,
            join(&c.hubs.hubs, ",")
        ));
    }
    if let Some(dir) = certificate_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", dir.display())))?;
        for (k, cert) in report.counterexamples.iter().enumerate() {
            let file = dir.join(format!("counterexample-{k}.json"));
            let body = serde_json::to_string_pretty(&certificate_json(cert)).expect("serializable");
            fs::write(&file, body).map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", file.display())))?;
        }
    }
    let summary: Vec<Value> = report
        .summary()
        .into_iter()
        .map(|(n, total, us, non_us, bad)| {
            json!({"n": n, "classes": total, "us": us, "non_us": non_us, "inconsistent": bad})
        })
        .collect();
    let sound = report.provable_direction_holds() && report.heredity_holds() && report.certificates_verified();
    let json = json!({
        "n_max": n_max,
        "summary": summary,
        "provable_direction_holds": report.provable_direction_holds(),
        "heredity_holds": report.heredity_holds(),
        "certificates_verified": report.certificates_verified(),
        "equivalence_holds": report.equivalence_holds(),
        "classes": report.classes.iter().map(class_json).collect::<Vec<_>>(),
        "counterexamples": report.counterexamples.iter().map(certificate_json).collect::<Vec<_>>(),
    });
    Ok(Report::with_code(if sound { EXIT_OK } else { EXIT_FAILURE }, text, json))
}

pub fn ray(n: usize) -> CmdResult {
    if n == 0 {
        return Err(Failure::new(EXIT_PARSE, "--N must be at least 1"));
    }
    let r = ray_experiment(n)?;
    let ray_names = default_names("x", n, 1);
    let mut star_names = vec!["c".to_string()];
    star_names.extend(default_names("y", n, 1));
    let text = r.to_string();
    let json = json!({
        "N": n,
        "hubs": name_list(&ray_names, &r.hubs.hubs),
        "last_vertex_is_hub": r.last_vertex_is_hub(),
        "min_distance": r.min_distance.as_ref().map(q),
        "embedding": r.embedding,
        "pairs_checked": n * (n - 1) / 2,
        "embedding_verified": r.embedding_verified(),
        "ray": tree_value(tree_to_json(&ray_names, &r.ray, None)),
        "star": tree_value(star_to_json(&star_names, &r.star)),
    });
    let ok = r.hubs.is_us && r.last_vertex_is_hub() && r.embedding_verified();
    Ok(Report::with_code(if ok { EXIT_OK } else { EXIT_FAILURE }, text, json))
}

pub fn random(seed: u64, n: usize, levels: u32, us: bool) -> CmdResult {
    if n == 0 {
        return Err(Failure::new(EXIT_PARSE, "--n must be at least 1"));
    }
    let space: Space = if us { random_us_space(&mut seeded_rng(seed), n) } else { random_ultrametric(n, seed, levels)? };
    let names = default_names("p", n, 0);
    let file = space_to_json(&names, &space);
    Ok(Report::ok(file.clone(), tree_value(file)))
}
