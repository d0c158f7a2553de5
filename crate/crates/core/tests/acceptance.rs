//! One line per acceptance criterion, with runtime bounds.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dblgpd::coregpd::core_groupoid;
use dblgpd::corpus::{generate, run_corpus, CorpusSpec, Generator, Property};
use dblgpd::dbl::validate_double;
use dblgpd::diagonal::diagonal;
use dblgpd::factor::{box_double, filling_iff_factorization, phi_roundtrip, Diagram};
use dblgpd::gen::exact_factorization;
use dblgpd::gpd::validate_groupoid;
use dblgpd::groups::{catalogue, Group};
use dblgpd::io::Workspace;

type Check = Result<String, String>;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axiom_suite() -> Check {
    let dir = fixtures();
    let mut names = BTreeSet::new();
    let (mut groupoids, mut doubles) = (0, 0);
    for path in json_files(&dir) {
        let file = path.file_name().unwrap().to_string_lossy().to_string();
        let ws = Workspace::load(&path).map_err(|e| format!("{file}: {e}"))?;
        for (name, g) in ws.groupoids() {
            ensure(validate_groupoid(g).is_valid(), || {
                format!("{file}: {name}")
            })?;
            groupoids += 1;
        }
        for (name, s) in ws.doubles() {
            ensure(validate_double(&s.double).is_valid(), || {
                format!("{file}: {name}")
            })?;
            doubles += 1;
        }
        names.insert(file);
    }
    for required in [
        "unit.json",
        "pair1.json",
        "pair2.json",
        "pair3.json",
        "pair4.json",
        "pair5.json",
        "coarse_pair2.json",
        "coarse_pair3.json",
        "s3.json",
        "z6.json",
    ] {
        ensure(names.contains(required), || {
            format!("missing fixture {required}")
        })?;
    }
    let forged = dir.join("forged");
    let expected: BTreeMap<String, BTreeMap<String, String>> = serde_json::from_str(
        &std::fs::read_to_string(forged.join("expected.json")).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let mut rejected = 0;
    for path in json_files(&forged) {
        let file = path.file_name().unwrap().to_string_lossy().to_string();
        if file == "expected.json" {
            continue;
        }
        let want = expected
            .get(&file)
            .ok_or_else(|| format!("no expectation for {file}"))?;
        let err = match Workspace::load(&path) {
            Ok(_) => return Err(format!("forged {file} was accepted")),
            Err(e) => e,
        };
        ensure(err.path() == Some(want["path"].as_str()), || {
            format!("{file}: path {:?}, expected {}", err.path(), want["path"])
        })?;
        let text = err.to_string();
        ensure(text.contains(&want["message"]), || {
            format!("{file}: {text}")
        })?;
        rejected += 1;
    }
    ensure(rejected >= 10, || {
        format!("only {rejected} forged fixtures")
    })?;
    Ok(format!(
        "{} fixtures ({groupoids} groupoids, {doubles} doubles) valid; {rejected} forged rejected at the expected field",
        names.len()
    ))
}

// x·g = f·y over x, y in B and f, g in A, straight from the Cayley table
fn brute_force_boxes(g: &Group, a: &[usize], b: &[usize]) -> BTreeSet<[usize; 4]> {
    let mut out = BTreeSet::new();
    for &x in b {
        for &gg in a {
            for &f in a {
                for &y in b {
                    if g.mul(x, gg) == g.mul(f, y) {
                        out.insert([x, gg, f, y]);
                    }
                }
            }
        }
    }
    out
}

// frames of the box double, as group elements (top, right, left, bottom)
fn frames_as_elements(delta: &Diagram) -> Result<BTreeSet<[usize; 4]>, String> {
    let b = box_double(delta).map_err(|e| e.to_string())?;
    Ok(b.frames()
        .iter()
        .map(|fr| {
            [
                delta.i.apply(fr.top).0,
                delta.j.apply(fr.right).0,
                delta.j.apply(fr.left).0,
                delta.i.apply(fr.bottom).0,
            ]
        })
        .collect())
}

fn s3_exact() -> Check {
    let g = Group::symmetric(3);
    let a = g.generated(&[g.element_of_perm(&[1, 0, 2])]);
    let b = g.generated(&[g.element_of_perm(&[1, 2, 0])]);
    let delta = exact_factorization(&g, &a, &b).map_err(|e| e.to_string())?;
    let oracle = brute_force_boxes(&g, &a, &b);
    ensure(a.len() * a.len() * b.len() * b.len() == 36, || {
        "candidate count".into()
    })?;
    ensure(oracle.len() == 6, || {
        format!("oracle found {} boxes", oracle.len())
    })?;
    ensure(frames_as_elements(&delta)? == oracle, || {
        "box frames differ from the oracle".into()
    })?;
    let bx = box_double(&delta).map_err(|e| e.to_string())?;
    let core = core_groupoid(&bx).map_err(|e| e.to_string())?;
    ensure(core.len() == 1, || {
        format!("core has {} elements", core.len())
    })?;
    let d = diagonal(&bx).map_err(|e| e.to_string())?;
    ensure(d.num_classes() == 6, || {
        format!("{} classes", d.num_classes())
    })?;
    let cert = phi_roundtrip(&delta).map_err(|e| e.to_string())?;
    ensure(cert.certified(), || format!("{cert:?}"))?;
    Ok("6 boxes of 36 candidates, core 1, diagonal 6 classes, phi certified".into())
}

fn z2_non_vacant() -> Check {
    let g = Group::cyclic(2);
    let all = [0, 1];
    let delta = exact_factorization(&g, &all, &all).map_err(|e| e.to_string())?;
    let oracle = brute_force_boxes(&g, &all, &all);
    ensure(oracle.len() == 8, || {
        format!("oracle found {} boxes", oracle.len())
    })?;
    ensure(frames_as_elements(&delta)? == oracle, || {
        "box frames differ from the oracle".into()
    })?;
    let bx = box_double(&delta).map_err(|e| e.to_string())?;
    let core = core_groupoid(&bx).map_err(|e| e.to_string())?;
    let sides: BTreeSet<(usize, usize)> = core
        .elements()
        .iter()
        .map(|&e| (bx.left(e).0, bx.bottom(e).0))
        .collect();
    // {(h, y) : j(h⁻¹) = i(y)}
    let expected: BTreeSet<(usize, usize)> = all
        .iter()
        .flat_map(|&h| all.iter().map(move |&y| (h, y)))
        .filter(|&(h, y)| g.inv(h) == y)
        .collect();
    ensure(core.len() == 2 && sides == expected, || {
        format!("core sides {sides:?}")
    })?;
    let d = diagonal(&bx).map_err(|e| e.to_string())?;
    ensure(d.num_classes() == 2, || {
        format!("{} classes", d.num_classes())
    })?;
    let cert = phi_roundtrip(&delta).map_err(|e| e.to_string())?;
    ensure(cert.certified(), || format!("{cert:?}"))?;
    Ok(
        "8 boxes of 16 candidates, core 2 = {(h, y) : j(h⁻¹) = i(y)}, 2 classes, phi certified"
            .into(),
    )
}

// subgroups by testing every subset containing the identity
fn brute_force_subgroups(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    let e = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mut set = vec![false; n];
        set[e] = true;
        for (k, &x) in others.iter().enumerate() {
            if mask >> k & 1 == 1 {
                set[x] = true;
            }
        }
        let elems: Vec<usize> = (0..n).filter(|&x| set[x]).collect();
        if elems
            .iter()
            .all(|&x| elems.iter().all(|&y| set[g.mul(x, y)]))
        {
            out.push(elems);
        }
    }
    out
}

fn equivalence_corpus() -> Check {
    let mut expected = 0;
    for g in catalogue(16) {
        let subs = brute_force_subgroups(&g);
        for a in &subs {
            for b in &subs {
                let meet = a.iter().filter(|x| b.contains(x)).count();
                if a.len() * b.len() == g.order() && meet == 1 {
                    expected += 1;
                }
            }
        }
    }
    let spec = CorpusSpec {
        max_order: 16,
        ..CorpusSpec::new(Generator::Exact)
    };
    let suite = [
        Property::PhiRoundtrip,
        Property::FrameRoundtrip,
        Property::FillingIffFactorization,
    ];
    let report = run_corpus(&spec, &suite);
    ensure(report.instances == expected, || {
        format!(
            "{} exact factorizations, brute force finds {expected}",
            report.instances
        )
    })?;
    for p in suite {
        let t = report.tally(p);
        ensure(t.pass == expected && t.fail == 0 && t.skipped == 0, || {
            format!("{p}: {t:?}")
        })?;
    }
    let negatives = generate(&CorpusSpec {
        max_order: 16,
        ..CorpusSpec::new(Generator::Negatives)
    });
    ensure(negatives.len() >= 20, || {
        format!("{} negatives", negatives.len())
    })?;
    for inst in &negatives {
        let dblgpd::corpus::InstanceObject::Diagram(delta) = &inst.object else {
            unreachable!()
        };
        ensure(filling_iff_factorization(delta) == Ok(true), || {
            inst.name.clone()
        })?;
    }
    Ok(format!(
        "{expected} exact factorizations: phi and frame round trips certified; filling iff factorization on those and {} negatives",
        negatives.len()
    ))
}

fn corpus_property(property: Property) -> Check {
    let report = run_corpus(&CorpusSpec::default(), &[property]);
    let t = report.tally(property);
    let first_failure = report.failures().next().cloned();
    match first_failure {
        Some(f) => Err(format!("{}: {:?}", f.instance, f.outcome)),
        None if t.pass == 0 => Err("no instance exercised the property".into()),
        None => Ok(format!(
            "{} of {} instances checked, {} skipped",
            t.pass, report.instances, t.skipped
        )),
    }
}

fn serialization() -> Check {
    let mut count = 0;
    for path in json_files(&fixtures()) {
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let ws = Workspace::from_json(&text).map_err(|e| e.to_string())?;
        ensure(ws.to_json() == text, || {
            format!("{} is not reproduced", path.display())
        })?;
        let again = Workspace::from_json(&ws.to_json()).map_err(|e| e.to_string())?;
        ensure(again == ws, || format!("{} reload differs", path.display()))?;
        count += 1;
    }
    let spec = CorpusSpec {
        max_order: 8,
        seed: 7,
        ..CorpusSpec::default()
    };
    let first = run_corpus(&spec, &Property::ALL).to_json();
    let second = run_corpus(&spec, &Property::ALL).to_json();
    ensure(first == second, || "corpus reports differ".into())?;
    Ok(format!(
        "{count} fixtures reproduced byte for byte; corpus report of {} bytes identical across runs",
        first.len()
    ))
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("axiom suite", Duration::from_secs(5), axiom_suite),
        ("S3 exact factorization", Duration::from_secs(1), s3_exact),
        ("Z2 non-vacant case", Duration::from_secs(1), z2_non_vacant),
        (
            "equivalence corpus",
            Duration::from_secs(60),
            equivalence_corpus,
        ),
        ("same-class tests agree", Duration::from_secs(30), || {
            corpus_property(Property::SimAgreement)
        }),
        ("core action laws", Duration::from_secs(30), || {
            corpus_property(Property::CoreLaws)
        }),
        ("filler independence", Duration::from_secs(10), || {
            corpus_property(Property::FillerIndependence)
        }),
        ("serialization", Duration::MAX, serialization),
    ];
    let mut failed = 0;
    for (k, (name, bound, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed > bound => ("FAIL", format!("took {elapsed:.2?}, bound {bound:?}")),
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let bound = if bound == Duration::MAX {
            String::new()
        } else {
            format!(" < {bound:?}")
        };
        println!(
            "criterion {} [{status}] {name} ({elapsed:.2?}{bound}): {detail}",
            k + 1
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
