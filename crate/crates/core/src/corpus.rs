//! Deterministic instance corpora and a property runner over them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::Partition;
use crate::coregpd::{box_action_witness, pair_action_witness, CoreGroupoid};
use crate::dbl::DoubleGroupoid;
use crate::diagonal::DiagonalGroupoid;
use crate::error::Error;
use crate::factor::{
    box_double_bounded, frame_certificate, generated_by_images, is_factorization, phi_certificate,
    products_commute, Diagram,
};
use crate::gen::{lift_diagram, pair_groupoid, random_diagram, subgroup_diagram, Spread};
use crate::gpd::GroupoidTable;
use crate::groups::{catalogue, Group};
use crate::sim::SimContext;
use crate::word::{box_relator, in_j};

/// Default cap on enumerated boxes, overridden by `DBLGPD_MAX_BOXES`.
pub const DEFAULT_MAX_BOXES: usize = 100_000;

/// Reads `DBLGPD_MAX_BOXES`, falling back to [`DEFAULT_MAX_BOXES`].
pub fn max_boxes_from_env() -> usize {
    std::env::var("DBLGPD_MAX_BOXES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BOXES)
}

/// Families of instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// No instances.
    Empty,
    /// `G = AB` with `A ∩ B` trivial, for every group in range.
    Exact,
    /// `G = AB`, exact or small enough to enumerate.
    Factorizations,
    /// Subgroup pairs generating `G` with `AB ≠ G`.
    Negatives,
    /// Subgroup pairs whose images do not generate `G`.
    Ungenerated,
    /// Coarse, identity-only and doubled double groupoids.
    Doubles,
    /// Small exact factorizations spread over pair groupoids.
    Lifts,
    /// Seeded random subgroup diagrams with shuffled ids.
    Random,
    /// Everything above.
    All,
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::Empty,
        Generator::Exact,
        Generator::Factorizations,
        Generator::Negatives,
        Generator::Ungenerated,
        Generator::Doubles,
        Generator::Lifts,
        Generator::Random,
        Generator::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Empty => "empty",
            Generator::Exact => "exact",
            Generator::Factorizations => "factorizations",
            Generator::Negatives => "negatives",
            Generator::Ungenerated => "ungenerated",
            Generator::Doubles => "doubles",
            Generator::Lifts => "lifts",
            Generator::Random => "random",
            Generator::All => "all",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator `{s}`"))
    }
}

/// Checked properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// Filling of `□(Δ)` agrees with `Δ` being a factorization; on diagrams
    /// whose images generate `D`.
    FillingIffFactorization,
    /// Filling of `□(Δ)` agrees with `j(V)i(H) = i(H)j(V)`; on every
    /// diagram.
    FillingIffCommute,
    /// The four same-class tests agree on the whole carrier.
    SimAgreement,
    /// Core groupoid and both actions satisfy their axioms; freeness and
    /// box orbits on slim instances.
    CoreLaws,
    /// Every filler gives the same diagonal product; a single filler per
    /// corner when the core is trivial.
    FillerIndependence,
    /// `D(□(Δ)) → D` is a certified isomorphism of diagrams.
    PhiRoundtrip,
    /// `B → □(D(B))` is a certified isomorphism of double groupoids.
    FrameRoundtrip,
    /// Every box relator maps to an identity of the diagonal.
    Relators,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::FillingIffFactorization,
        Property::FillingIffCommute,
        Property::SimAgreement,
        Property::CoreLaws,
        Property::FillerIndependence,
        Property::PhiRoundtrip,
        Property::FrameRoundtrip,
        Property::Relators,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::FillingIffFactorization => "filling-iff-factorization",
            Property::FillingIffCommute => "filling-iff-commute",
            Property::SimAgreement => "sim-agreement",
            Property::CoreLaws => "core-laws",
            Property::FillerIndependence => "filler-independence",
            Property::PhiRoundtrip => "phi-roundtrip",
            Property::FrameRoundtrip => "frame-roundtrip",
            Property::Relators => "relators",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// Which corpus to build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub generator: Generator,
    /// Largest group order.
    pub max_order: usize,
    /// Largest base size for lifts and doubles.
    pub max_base: usize,
    pub seed: u64,
    /// Number of random instances.
    pub random_count: usize,
    /// Non-exact subgroup pairs are kept when `|A|²·|B|` is at most this.
    pub pair_budget: usize,
    /// Cap on the boxes of any one instance.
    pub max_boxes: usize,
}

impl CorpusSpec {
    pub fn new(generator: Generator) -> Self {
        CorpusSpec {
            generator,
            max_order: 16,
            max_base: 3,
            seed: 0,
            random_count: 32,
            pair_budget: 512,
            max_boxes: max_boxes_from_env(),
        }
    }
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec::new(Generator::All)
    }
}

/// The object an instance is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceObject {
    Diagram(Diagram),
    Double(DoubleGroupoid),
}

/// A named corpus member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub object: InstanceObject,
}

impl Instance {
    fn diagram(name: String, delta: Diagram) -> Self {
        Instance {
            name,
            object: InstanceObject::Diagram(delta),
        }
    }

    fn double(name: impl Into<String>, b: DoubleGroupoid) -> Self {
        Instance {
            name: name.into(),
            object: InstanceObject::Double(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairKind {
    Exact,
    Factorization,
    Negative,
    Ungenerated,
}

fn pair_name(group: &Group, a: &[usize], b: &[usize]) -> String {
    format!("{}:A={:?}:B={:?}", group.name(), a, b)
}

fn classify(group: &Group, a: &[usize], b: &[usize]) -> PairKind {
    let product = group.product_set(a, b);
    if product.len() == group.order() {
        if a.len() * b.len() == group.order() {
            PairKind::Exact
        } else {
            PairKind::Factorization
        }
    } else {
        let mut gens = a.to_vec();
        gens.extend_from_slice(b);
        if group.generated(&gens).len() == group.order() {
            PairKind::Negative
        } else {
            PairKind::Ungenerated
        }
    }
}

fn subgroup_pairs(spec: &CorpusSpec, wanted: &[PairKind]) -> Vec<Instance> {
    let mut out = Vec::new();
    for group in catalogue(spec.max_order) {
        let subs = group.subgroups();
        for a in &subs {
            for b in &subs {
                let kind = classify(&group, a, b);
                if !wanted.contains(&kind) {
                    continue;
                }
                if kind != PairKind::Exact && a.len() * a.len() * b.len() > spec.pair_budget {
                    continue;
                }
                let delta = subgroup_diagram(&group, a, b).expect("subgroups");
                out.push(Instance::diagram(pair_name(&group, a, b), delta));
            }
        }
    }
    out
}

fn doubles(spec: &CorpusSpec) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=spec.max_base {
        let (p, u) = (pair_groupoid(n), GroupoidTable::unit(n));
        let shapes = [("pair", &p), ("unit", &u)];
        for (vn, v) in shapes {
            for (hn, h) in shapes {
                if let Ok(b) = DoubleGroupoid::coarse_bounded(v.clone(), h.clone(), spec.max_boxes)
                {
                    out.push(Instance::double(format!("coarse({vn}{n},{hn}{n})"), b));
                }
                let b = DoubleGroupoid::identity_only(v.clone(), h.clone()).expect("same base");
                out.push(Instance::double(
                    format!("identity-only({vn}{n},{hn}{n})"),
                    b,
                ));
            }
        }
    }
    let (z2, z3) = (
        Group::cyclic(2).to_groupoid(),
        Group::cyclic(3).to_groupoid(),
    );
    for (name, v, h) in [
        ("Z2,Z2", &z2, &z2),
        ("Z2,Z3", &z2, &z3),
        ("Z3,Z2", &z3, &z2),
    ] {
        let b = DoubleGroupoid::coarse(v.clone(), h.clone()).expect("same base");
        out.push(Instance::double(format!("coarse({name})"), b));
        let b = DoubleGroupoid::identity_only(v.clone(), h.clone()).expect("same base");
        out.push(Instance::double(format!("identity-only({name})"), b));
    }
    if spec.max_base >= 2 {
        let b =
            DoubleGroupoid::coarse(pair_groupoid(2), GroupoidTable::unit(2)).expect("same base");
        out.push(Instance::double(
            "doubled(coarse(pair2,unit2))",
            b.doubled().expect("valid"),
        ));
    }
    out
}

fn lifts(spec: &CorpusSpec) -> Vec<Instance> {
    let mut out = Vec::new();
    let small = CorpusSpec {
        max_order: spec.max_order.min(6),
        ..spec.clone()
    };
    for inst in subgroup_pairs(&small, &[PairKind::Exact]) {
        let InstanceObject::Diagram(delta) = &inst.object else {
            continue;
        };
        // the trivial splittings add nothing over the base groupoid
        if delta.v.num_arrows() == 1 || delta.h.num_arrows() == 1 {
            continue;
        }
        for n in 2..=spec.max_base {
            for spread in [Spread::Vertical, Spread::Horizontal, Spread::Both] {
                out.push(Instance::diagram(
                    format!("lift({},{n},{spread:?})", inst.name),
                    lift_diagram(delta, n, spread),
                ));
            }
        }
    }
    out
}

fn random(spec: &CorpusSpec) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.random_count)
        .map(|k| {
            Instance::diagram(
                format!("random({},{k})", spec.seed),
                random_diagram(spec.max_order.min(8), &mut rng),
            )
        })
        .collect()
}

/// The instances of a corpus, in a fixed order.
pub fn generate(spec: &CorpusSpec) -> Vec<Instance> {
    use PairKind::*;
    match spec.generator {
        Generator::Empty => Vec::new(),
        Generator::Exact => subgroup_pairs(spec, &[Exact]),
        Generator::Factorizations => subgroup_pairs(spec, &[Exact, Factorization]),
        Generator::Negatives => subgroup_pairs(spec, &[Negative]),
        Generator::Ungenerated => subgroup_pairs(spec, &[Ungenerated]),
        Generator::Doubles => doubles(spec),
        Generator::Lifts => lifts(spec),
        Generator::Random => random(spec),
        Generator::All => {
            let mut out = subgroup_pairs(spec, &[Exact, Factorization, Negative, Ungenerated]);
            out.extend(doubles(spec));
            out.extend(lifts(spec));
            out.extend(random(spec));
            out
        }
    }
}

/// The result of one property on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail { counterexample: String },
    Skipped { reason: String },
}

impl Outcome {
    fn check(ok: bool, counterexample: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail {
                counterexample: counterexample(),
            }
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub instance: String,
    pub property: Property,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// Pass, fail and skip counts for one property.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// Everything a corpus run found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub spec: CorpusSpec,
    pub instances: usize,
    pub summary: BTreeMap<Property, Tally>,
    pub results: Vec<PropertyResult>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| !r.outcome.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| r.outcome.is_fail())
    }

    pub fn tally(&self, property: Property) -> Tally {
        self.summary.get(&property).copied().unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("plain data serializes");
        out.push('\n');
        out
    }
}

fn filling_counterexample(b: &DoubleGroupoid) -> String {
    match b.filling_witness() {
        Some((x, f)) => format!("corner (top {}, left {}) has no box", x.0, f.0),
        None => "every corner fills".to_string(),
    }
}

fn core_laws(core: &CoreGroupoid<'_>, slim: bool, filling: bool) -> Outcome {
    let b = core.parent();
    let report = core.table().validate();
    if !report.is_valid() {
        return Outcome::Fail {
            counterexample: format!("core groupoid: {report}"),
        };
    }
    let box_action = core.box_action();
    let report = box_action.validate(core.table());
    if !report.is_valid() {
        return Outcome::Fail {
            counterexample: format!("box action: {report}"),
        };
    }
    let pairs = core.carrier();
    let report = core.pair_action(&pairs).validate(core.table());
    if !report.is_valid() {
        return Outcome::Fail {
            counterexample: format!("pair action: {report}"),
        };
    }
    if let Some((e, a)) = box_action_witness(core) {
        return Outcome::Fail {
            counterexample: format!("core box {} fixes box {}", e.0, a.0),
        };
    }
    if slim {
        if let Some((e, (f, x))) = pair_action_witness(core) {
            return Outcome::Fail {
                counterexample: format!("core box {} fixes pair ({}, {})", e.0, f.0, x.0),
            };
        }
    }
    if slim && filling {
        let labels: Vec<_> = b.boxes().map(|a| (b.top(a), b.right(a))).collect();
        let expected = Partition::from_labels(&labels);
        let orbits = box_action.orbits(core.table());
        if orbits.classes() != expected.classes() {
            return Outcome::Fail {
                counterexample: "box orbits differ from the same-(top, right) classes".into(),
            };
        }
    }
    Outcome::Pass
}

fn filler_independence(d: &DiagonalGroupoid<'_>) -> Outcome {
    if let Err(e) = d.verify_filler_independence() {
        return Outcome::Fail {
            counterexample: e.to_string(),
        };
    }
    let vacant = d.core().len() == d.base_size();
    for (x, g, n) in d.filler_counts() {
        if n == 0 || (vacant && n != 1) {
            return Outcome::Fail {
                counterexample: format!("corner (top {}, right {}) has {n} fillers", x.0, g.0),
            };
        }
    }
    Outcome::Pass
}

fn relators(d: &DiagonalGroupoid<'_>) -> Outcome {
    let b = d.parent();
    for a in b.boxes() {
        let w = box_relator(b, a);
        if !matches!(in_j(d, &w), Ok(true)) {
            return Outcome::Fail {
                counterexample: format!("relator of box {} is not in the kernel", a.0),
            };
        }
    }
    Outcome::Pass
}

/// Runs `suite` on one instance. Properties that do not apply to the
/// instance are left out.
pub fn check_instance(
    instance: &Instance,
    suite: &[Property],
    max_boxes: usize,
) -> Vec<PropertyResult> {
    let mut results = Vec::new();
    let mut push = |property: Property, outcome: &dyn Fn() -> Outcome| {
        if suite.contains(&property) {
            results.push(PropertyResult {
                instance: instance.name.clone(),
                property,
                outcome: outcome(),
            });
        }
    };
    let built;
    let (delta, b) = match &instance.object {
        InstanceObject::Diagram(delta) => match box_double_bounded(delta, max_boxes) {
            Ok(b) => {
                built = b;
                (Some(delta), &built)
            }
            Err(e) => {
                let reason = match e {
                    Error::TooManyBoxes { .. } => e.to_string(),
                    other => format!("box double: {other}"),
                };
                for &p in suite {
                    push(p, &|| Outcome::Skipped {
                        reason: reason.clone(),
                    });
                }
                return results;
            }
        },
        InstanceObject::Double(b) => (None, b),
    };
    let slim = b.is_slim();
    let filling = b.filling_condition();
    let factorization = delta.map(|d| is_factorization(d).is_factorization);

    if let (Some(delta), Some(fact)) = (delta, factorization) {
        if generated_by_images(delta) {
            push(Property::FillingIffFactorization, &|| {
                Outcome::check(filling == fact, || {
                    format!(
                        "filling {filling}, factorization {fact}; {}",
                        filling_counterexample(b)
                    )
                })
            });
        }
        push(Property::FillingIffCommute, &|| {
            let commute = products_commute(delta);
            Outcome::check(filling == commute, || {
                format!("filling {filling}, products commute {commute}")
            })
        });
    }

    let needs_core = suite.iter().any(|p| {
        matches!(
            p,
            Property::CoreLaws
                | Property::SimAgreement
                | Property::FillerIndependence
                | Property::PhiRoundtrip
                | Property::FrameRoundtrip
                | Property::Relators
        )
    });
    if !needs_core {
        return results;
    }
    let core = match CoreGroupoid::of_valid(b) {
        Ok(core) => core,
        Err(e) => {
            push(Property::CoreLaws, &|| Outcome::Fail {
                counterexample: e.to_string(),
            });
            return results;
        }
    };
    push(Property::CoreLaws, &|| core_laws(&core, slim, filling));
    if !(slim && filling) {
        return results;
    }
    let d = match DiagonalGroupoid::of_valid(b) {
        Ok(d) => d,
        Err(e) => {
            for p in [
                Property::SimAgreement,
                Property::FillerIndependence,
                Property::FrameRoundtrip,
                Property::Relators,
            ] {
                push(p, &|| Outcome::Fail {
                    counterexample: format!("diagonal: {e}"),
                });
            }
            return results;
        }
    };
    push(
        Property::SimAgreement,
        &|| match SimContext::new(&d).disagreement() {
            None => Outcome::Pass,
            Some(((f1, x1), (f2, x2), answers)) => Outcome::Fail {
                counterexample: format!(
                    "({}, {}) vs ({}, {}): orbit/core-box/word/two-boxes = {answers:?}",
                    f1.0, x1.0, f2.0, x2.0
                ),
            },
        },
    );
    push(Property::FillerIndependence, &|| filler_independence(&d));
    push(Property::Relators, &|| relators(&d));
    if let (Some(delta), Some(true)) = (delta, factorization) {
        push(Property::PhiRoundtrip, &|| {
            let cert = phi_certificate(delta, &d);
            Outcome::check(cert.certified(), || {
                format!(
                    "morphism {}, bijective {}, j {}, i {}",
                    cert.is_morphism, cert.is_bijective, cert.intertwines_j, cert.intertwines_i
                )
            })
        });
    }
    push(Property::FrameRoundtrip, &|| match frame_certificate(&d) {
        Ok(cert) => Outcome::check(cert.certified(), || {
            format!(
                "morphism {}, bijective {}",
                cert.is_morphism, cert.is_bijective
            )
        }),
        Err(e) => Outcome::Fail {
            counterexample: e.to_string(),
        },
    });
    results
}

/// Builds the corpus and runs `suite` on every instance, in parallel, with
/// results in instance order.
pub fn run_corpus(spec: &CorpusSpec, suite: &[Property]) -> CorpusReport {
    let instances = generate(spec);
    run_instances(spec, &instances, suite)
}

/// Runs `suite` on the given instances.
pub fn run_instances(
    spec: &CorpusSpec,
    instances: &[Instance],
    suite: &[Property],
) -> CorpusReport {
    let results: Vec<PropertyResult> = instances
        .par_iter()
        .map(|inst| check_instance(inst, suite, spec.max_boxes))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let mut summary: BTreeMap<Property, Tally> =
        suite.iter().map(|&p| (p, Tally::default())).collect();
    for r in &results {
        let t = summary.entry(r.property).or_default();
        match r.outcome {
            Outcome::Pass => t.pass += 1,
            Outcome::Fail { .. } => t.fail += 1,
            Outcome::Skipped { .. } => t.skipped += 1,
        }
    }
    CorpusReport {
        spec: spec.clone(),
        instances: instances.len(),
        summary,
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(generator: Generator) -> CorpusSpec {
        CorpusSpec {
            max_order: 8,
            max_base: 2,
            random_count: 8,
            max_boxes: 20_000,
            ..CorpusSpec::new(generator)
        }
    }

    #[test]
    fn empty_corpus_gives_empty_report() {
        let report = run_corpus(&small(Generator::Empty), &Property::ALL);
        assert_eq!(report.instances, 0);
        assert!(report.results.is_empty());
        assert!(report.all_passed());
    }

    #[test]
    fn exact_factorizations_up_to_twelve_fill() {
        let spec = CorpusSpec {
            max_order: 12,
            ..small(Generator::Exact)
        };
        let report = run_corpus(&spec, &[Property::FillingIffFactorization]);
        assert!(report.instances > 50);
        assert!(report.all_passed(), "{:?}", report.failures().next());
        assert_eq!(
            report.tally(Property::FillingIffFactorization).pass,
            report.instances
        );
    }

    #[test]
    fn ungenerated_pairs_satisfy_the_commuting_criterion_only() {
        let report = run_corpus(
            &small(Generator::Ungenerated),
            &[
                Property::FillingIffFactorization,
                Property::FillingIffCommute,
            ],
        );
        assert_eq!(report.tally(Property::FillingIffFactorization).pass, 0);
        assert!(report.tally(Property::FillingIffCommute).pass > 0);
        assert!(report.all_passed());
        assert!(report
            .results
            .iter()
            .any(|r| r.instance == "Z4:A=[0, 2]:B=[0]"));
    }

    #[test]
    fn doubles_pass_everything_that_applies() {
        let report = run_corpus(&small(Generator::Doubles), &Property::ALL);
        assert!(report.all_passed(), "{:?}", report.failures().next());
        assert!(report.tally(Property::CoreLaws).pass >= report.instances);
    }

    #[test]
    fn same_seed_same_report() {
        let spec = small(Generator::Random);
        let a = run_corpus(&spec, &Property::ALL).to_json();
        let b = run_corpus(&spec, &Property::ALL).to_json();
        assert_eq!(a, b);
        let other = CorpusSpec { seed: 1, ..spec };
        assert_ne!(a, run_corpus(&other, &Property::ALL).to_json());
    }

    #[test]
    fn names_parse() {
        for g in Generator::ALL {
            assert_eq!(g.name().parse::<Generator>(), Ok(g));
        }
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>(), Ok(p));
        }
    }
}
