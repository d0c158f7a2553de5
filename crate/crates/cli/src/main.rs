use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dblgpd::coregpd::{box_action_witness, core_groupoid, pair_action_witness};
use dblgpd::corpus::{run_corpus, CorpusSpec, Generator, Property};
use dblgpd::dbl::DoubleGroupoid;
use dblgpd::diagonal::diagonal;
use dblgpd::dot::export_dot;
use dblgpd::factor::{
    box_double_bounded, filling_iff_factorization, frame_roundtrip, induced_diagram,
    is_factorization, phi_roundtrip, Diagram,
};
use dblgpd::gen::{exact_factorization, pair_groupoid, random_diagram_seeded, subgroup_diagram};
use dblgpd::gpd::GroupoidTable;
use dblgpd::groups::{by_name, Group};
use dblgpd::io::{Object, Workspace};

/// Finite groupoids, double groupoids and factorization diagrams.
#[derive(Parser)]
#[command(name = "dblgpd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Workspace file to read.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Where to write the result; stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest group order for generators.
    #[arg(long, global = true, default_value_t = 16)]
    max_order: usize,

    /// Machine-readable report on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on enumerated boxes.
    #[arg(
        long,
        global = true,
        env = "DBLGPD_MAX_BOXES",
        default_value_t = 100_000
    )]
    max_boxes: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Load a workspace file, validating every object in it.
    Validate,
    /// Add the coarse double groupoid of two stored groupoids.
    Coarse {
        #[arg(long = "vertical")]
        v: String,
        #[arg(long = "horizontal")]
        h: String,
        #[arg(long, default_value = "coarse")]
        name: String,
    },
    /// Core groupoid of a stored double groupoid and its actions.
    Core {
        #[arg(long)]
        name: String,
    },
    /// Diagonal groupoid of a stored double groupoid.
    Diagonal {
        #[arg(long)]
        name: String,
    },
    /// Box double groupoid of a stored diagram.
    Boxdbl {
        #[arg(long)]
        name: String,
    },
    /// Whether a stored diagram is a factorization.
    FactorCheck {
        #[arg(long)]
        name: String,
    },
    /// Certify the canonical round trip of a stored diagram or double.
    Roundtrip {
        #[arg(long)]
        name: String,
    },
    /// Generate a workspace.
    Gen(GenArgs),
    /// Run properties over a generated corpus.
    Corpus {
        #[arg(long, default_value = "all")]
        generator: Generator,
        #[arg(long, default_value_t = 3)]
        max_base: usize,
        #[arg(long, default_value_t = 32)]
        random_count: usize,
        /// Properties to check; all when absent.
        #[arg(long = "property")]
        properties: Vec<Property>,
    },
    /// Graphviz text for a stored object.
    ExportDot {
        #[arg(long)]
        name: String,
    },
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    what: GenWhat,
    /// Name of the generated object.
    #[arg(long, global = true)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum GenWhat {
    /// Pair groupoid on `n` points.
    Pair {
        #[arg(long)]
        n: usize,
    },
    /// Unit groupoid on `n` points.
    Unit {
        #[arg(long)]
        n: usize,
    },
    /// One-object groupoid of a group.
    Group(GroupArg),
    /// Coarse double groupoid; sides are `pair:N`, `unit:N` or `group:NAME`.
    Coarse {
        #[arg(long = "vertical")]
        v: String,
        #[arg(long = "horizontal")]
        h: String,
    },
    /// Diagram of a factorization `G = AB` by subgroups.
    Exact {
        #[command(flatten)]
        group: GroupArg,
        /// Elements of `A`, the vertical subgroup.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Elements of `B`, the horizontal subgroup.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
    },
    /// Diagram of two subgroups, factorization or not.
    Subgroups {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
    },
    /// Random subgroup diagram from `--seed` and `--max-order`.
    Random,
}

#[derive(Args)]
struct GroupArg {
    /// Catalogue name such as `S3`, `Z6` or `Q8`.
    #[arg(long, conflicts_with = "cayley")]
    group: Option<String>,
    /// JSON file holding a Cayley table.
    #[arg(long)]
    cayley: Option<PathBuf>,
}

impl GroupArg {
    fn resolve(&self) -> Result<Group> {
        match (&self.group, &self.cayley) {
            (Some(name), _) => by_name(name).ok_or_else(|| anyhow!("no group named `{name}`")),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let table: Vec<Vec<usize>> = serde_json::from_str(&text)
                    .with_context(|| format!("parsing {}", path.display()))?;
                Ok(Group::from_cayley("G", table)?)
            }
            (None, None) => bail!("pass --group or --cayley"),
        }
    }
}

fn shape(spec: &str) -> Result<GroupoidTable> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("side `{spec}` is not of the form kind:arg"))?;
    match kind {
        "pair" => Ok(pair_groupoid(arg.parse()?)),
        "unit" => Ok(GroupoidTable::unit(arg.parse()?)),
        "group" => Ok(by_name(arg)
            .ok_or_else(|| anyhow!("no group named `{arg}`"))?
            .to_groupoid()),
        _ => bail!("unknown side kind `{kind}`"),
    }
}

/// What a verb reports: a verdict, human-readable lines and a JSON body.
struct Outcome {
    ok: bool,
    lines: Vec<String>,
    body: Value,
    workspace: Option<Workspace>,
    text: Option<String>,
}

impl Outcome {
    fn report(ok: bool, lines: Vec<String>, body: Value) -> Self {
        Outcome {
            ok,
            lines,
            body,
            workspace: None,
            text: None,
        }
    }
}

fn load(cli: &Cli) -> Result<Workspace> {
    let path = cli
        .input
        .as_deref()
        .ok_or_else(|| anyhow!("--input is required"))?;
    Workspace::load(path).with_context(|| format!("loading {}", path.display()))
}

fn double<'w>(ws: &'w Workspace, name: &str) -> Result<&'w DoubleGroupoid> {
    ws.double(name)
        .ok_or_else(|| anyhow!("no double groupoid named `{name}`"))
}

fn diagram<'w>(ws: &'w Workspace, name: &str) -> Result<&'w Diagram> {
    ws.diagram(name)
        .ok_or_else(|| anyhow!("no diagram named `{name}`"))
}

fn validate(ws: &Workspace) -> Outcome {
    let mut lines = Vec::new();
    let mut objects = Vec::new();
    for (name, g) in ws.groupoids() {
        lines.push(format!(
            "groupoid {name}: valid, {} arrows over {} objects",
            g.num_arrows(),
            g.base_size()
        ));
        objects.push(json!({"name": name, "kind": "groupoid", "arrows": g.num_arrows()}));
    }
    for (name, s) in ws.doubles() {
        let b = &s.double;
        let (slim, filling) = (b.is_slim(), b.filling_condition());
        lines.push(format!(
            "double {name}: valid, {} boxes, slim {slim}, filling {filling}",
            b.num_boxes()
        ));
        objects.push(json!({
            "name": name, "kind": "double", "boxes": b.num_boxes(),
            "slim": slim, "filling": filling,
        }));
    }
    for (name, s) in ws.diagrams() {
        let fact = is_factorization(&s.diagram).is_factorization;
        lines.push(format!("diagram {name}: valid, factorization {fact}"));
        objects.push(json!({"name": name, "kind": "diagram", "factorization": fact}));
    }
    Outcome::report(true, lines, json!({"valid": true, "objects": objects}))
}

fn core(ws: &Workspace, name: &str) -> Result<Outcome> {
    let b = double(ws, name)?;
    let core = core_groupoid(b)?;
    let pairs = core.carrier();
    let box_orbits = core.box_orbits().len();
    let pair_orbits = core.pair_orbits(&pairs).len();
    let box_free = box_action_witness(&core).is_none();
    let pair_witness = pair_action_witness(&core);
    let lines = vec![
        format!("core of {name}: {} elements", core.len()),
        format!("box action: {box_orbits} orbits, free {box_free}"),
        match pair_witness {
            None => format!("pair action: {pair_orbits} orbits, free true"),
            Some((e, (f, x))) => format!(
                "pair action: {pair_orbits} orbits, free false (box {} fixes ({}, {}))",
                e.0, f.0, x.0
            ),
        },
    ];
    let body = json!({
        "elements": core.elements().iter().map(|e| e.0).collect::<Vec<_>>(),
        "box_orbits": box_orbits,
        "pair_orbits": pair_orbits,
        "box_action_free": box_free,
        "pair_action_free": pair_witness.is_none(),
    });
    let mut out = ws.clone();
    out.insert_groupoid(&format!("{name}.core"), core.table().clone())?;
    let mut outcome = Outcome::report(box_free, lines, body);
    outcome.workspace = Some(out);
    Ok(outcome)
}

fn diagonal_verb(ws: &Workspace, name: &str) -> Result<Outcome> {
    let b = double(ws, name)?;
    let d = diagonal(b)?;
    let classes: Vec<Value> = d
        .table()
        .arrow_ids()
        .map(|c| {
            let members: Vec<[usize; 2]> = d.members(c).map(|(f, x)| [f.0, x.0]).collect();
            json!(members)
        })
        .collect();
    let lines = vec![format!(
        "diagonal of {name}: {} classes over {} pairs",
        d.num_classes(),
        d.carrier().len()
    )];
    let mut out = ws.clone();
    out.insert_diagram(&format!("{name}.diagonal"), induced_diagram(&d))?;
    let mut outcome = Outcome::report(true, lines, json!({"classes": classes}));
    outcome.workspace = Some(out);
    Ok(outcome)
}

fn boxdbl(ws: &Workspace, name: &str, max_boxes: usize) -> Result<Outcome> {
    let delta = diagram(ws, name)?;
    let b = box_double_bounded(delta, max_boxes)?;
    let report = b.validate();
    let (slim, filling) = (b.is_slim(), b.filling_condition());
    let lines = vec![format!(
        "box double of {name}: {} boxes, valid {}, slim {slim}, filling {filling}",
        b.num_boxes(),
        report.is_valid()
    )];
    let body = json!({
        "boxes": b.num_boxes(), "valid": report.is_valid(),
        "slim": slim, "filling": filling,
    });
    let ok = report.is_valid() && slim;
    let mut out = ws.clone();
    out.insert_double(&format!("{name}.box"), b)?;
    let mut outcome = Outcome::report(ok, lines, body);
    outcome.workspace = Some(out);
    Ok(outcome)
}

fn factor_check(ws: &Workspace, name: &str) -> Result<Outcome> {
    let delta = diagram(ws, name)?;
    let report = is_factorization(delta);
    let agrees = filling_iff_factorization(delta)?;
    let mut lines = vec![format!(
        "{name}: factorization {}, exact {}",
        report.is_factorization,
        report.is_exact()
    )];
    if !report.uncovered.is_empty() {
        let uncovered: Vec<String> = report.uncovered.iter().map(|a| a.0.to_string()).collect();
        lines.push(format!("uncovered arrows: {}", uncovered.join(", ")));
    }
    lines.push(format!("filling agrees with factorization: {agrees}"));
    let body = json!({
        "is_factorization": report.is_factorization,
        "exact": report.is_exact(),
        "uncovered": report.uncovered.iter().map(|a| a.0).collect::<Vec<_>>(),
        "redundancy": report.redundancy,
        "filling_iff_factorization": agrees,
    });
    Ok(Outcome::report(
        report.is_factorization && agrees,
        lines,
        body,
    ))
}

fn roundtrip(ws: &Workspace, name: &str) -> Result<Outcome> {
    match ws.get(name) {
        Some(Object::Diagram(delta)) => {
            let cert = phi_roundtrip(delta)?;
            let ok = cert.certified();
            let lines = vec![format!(
                "{name}: diagonal has {} arrows; phi morphism {}, bijective {}, intertwines j {}, i {}",
                cert.diagonal.num_arrows(),
                cert.is_morphism,
                cert.is_bijective,
                cert.intertwines_j,
                cert.intertwines_i
            )];
            let body = json!({
                "kind": "phi", "certified": ok,
                "phi": cert.phi.arrow_map().iter().map(|a| a.0).collect::<Vec<_>>(),
            });
            Ok(Outcome::report(ok, lines, body))
        }
        Some(Object::Double(b)) => {
            let cert = frame_roundtrip(b)?;
            let ok = cert.certified();
            let lines = vec![format!(
                "{name}: frame map into {} boxes; morphism {}, bijective {}",
                cert.target.num_boxes(),
                cert.is_morphism,
                cert.is_bijective
            )];
            let body = json!({
                "kind": "frame", "certified": ok,
                "map": cert.map.box_map().iter().map(|a| a.0).collect::<Vec<_>>(),
            });
            Ok(Outcome::report(ok, lines, body))
        }
        Some(Object::Groupoid(_)) => {
            bail!("`{name}` is a groupoid; round trips need a diagram or a double")
        }
        None => bail!("no object named `{name}`"),
    }
}

fn generate(cli: &Cli, args: &GenArgs) -> Result<Outcome> {
    let name = |default: &str| args.name.clone().unwrap_or_else(|| default.to_string());
    let ws = match &args.what {
        GenWhat::Pair { n } => {
            let mut ws = Workspace::new(*n);
            ws.insert_groupoid(&name(&format!("pair{n}")), pair_groupoid(*n))?;
            ws
        }
        GenWhat::Unit { n } => {
            let mut ws = Workspace::new(*n);
            ws.insert_groupoid(&name(&format!("unit{n}")), GroupoidTable::unit(*n))?;
            ws
        }
        GenWhat::Group(g) => {
            let group = g.resolve()?;
            let mut ws = Workspace::new(1);
            ws.insert_groupoid(&name(group.name()), group.to_groupoid())?;
            ws
        }
        GenWhat::Coarse { v, h } => {
            let (v, h) = (shape(v)?, shape(h)?);
            let mut ws = Workspace::new(v.base_size());
            let b = DoubleGroupoid::coarse_bounded(v, h, cli.max_boxes)?;
            ws.insert_double(&name("coarse"), b)?;
            ws
        }
        GenWhat::Exact { group, a, b } => {
            let group = group.resolve()?;
            let mut ws = Workspace::new(1);
            ws.insert_diagram(&name("diagram"), exact_factorization(&group, a, b)?)?;
            ws
        }
        GenWhat::Subgroups { group, a, b } => {
            let group = group.resolve()?;
            let mut ws = Workspace::new(1);
            ws.insert_diagram(&name("diagram"), subgroup_diagram(&group, a, b)?)?;
            ws
        }
        GenWhat::Random => {
            let delta = random_diagram_seeded(cli.max_order.min(8), cli.seed);
            let mut ws = Workspace::new(delta.d.base_size());
            ws.insert_diagram(&name("random"), delta)?;
            ws
        }
    };
    let names: Vec<&str> = ws.names().collect();
    let lines = vec![format!("generated {}", names.join(", "))];
    let body = json!({ "names": names });
    let mut outcome = Outcome::report(true, lines, body);
    outcome.workspace = Some(ws);
    Ok(outcome)
}

fn corpus(
    cli: &Cli,
    generator: Generator,
    max_base: usize,
    random_count: usize,
    properties: &[Property],
) -> Outcome {
    let spec = CorpusSpec {
        generator,
        max_order: cli.max_order,
        max_base,
        seed: cli.seed,
        random_count,
        max_boxes: cli.max_boxes,
        ..CorpusSpec::new(generator)
    };
    let suite: Vec<Property> = if properties.is_empty() {
        Property::ALL.to_vec()
    } else {
        properties.to_vec()
    };
    let report = run_corpus(&spec, &suite);
    let mut lines = vec![format!("{} instances from `{generator}`", report.instances)];
    for (p, t) in &report.summary {
        lines.push(format!(
            "{p}: {} passed, {} failed, {} skipped",
            t.pass, t.fail, t.skipped
        ));
    }
    for f in report.failures().take(10) {
        if let dblgpd::corpus::Outcome::Fail { counterexample } = &f.outcome {
            lines.push(format!(
                "FAIL {} {}: {counterexample}",
                f.property, f.instance
            ));
        }
    }
    let ok = report.all_passed();
    let mut outcome = Outcome::report(
        ok,
        lines,
        serde_json::to_value(&report).expect("serializable"),
    );
    outcome.text = Some(report.to_json());
    outcome
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate => Ok(validate(&load(cli)?)),
        Command::Coarse { v, h, name } => {
            let ws = load(cli)?;
            let get = |n: &str| {
                ws.groupoid(n)
                    .cloned()
                    .ok_or_else(|| anyhow!("no groupoid named `{n}`"))
            };
            let b = DoubleGroupoid::coarse_bounded(get(v)?, get(h)?, cli.max_boxes)?;
            let lines = vec![format!("coarse {name}: {} boxes", b.num_boxes())];
            let body = json!({"boxes": b.num_boxes()});
            let mut out = ws.clone();
            out.insert_double(name, b)?;
            let mut outcome = Outcome::report(true, lines, body);
            outcome.workspace = Some(out);
            Ok(outcome)
        }
        Command::Core { name } => core(&load(cli)?, name),
        Command::Diagonal { name } => diagonal_verb(&load(cli)?, name),
        Command::Boxdbl { name } => boxdbl(&load(cli)?, name, cli.max_boxes),
        Command::FactorCheck { name } => factor_check(&load(cli)?, name),
        Command::Roundtrip { name } => roundtrip(&load(cli)?, name),
        Command::Gen(args) => generate(cli, args),
        Command::Corpus {
            generator,
            max_base,
            random_count,
            properties,
        } => Ok(corpus(
            cli,
            *generator,
            *max_base,
            *random_count,
            properties,
        )),
        Command::ExportDot { name } => {
            let ws = load(cli)?;
            let object = ws
                .get(name)
                .ok_or_else(|| anyhow!("no object named `{name}`"))?;
            let dot = export_dot(name, object);
            let mut outcome = Outcome::report(true, Vec::new(), json!({"dot": dot}));
            outcome.text = Some(dot);
            Ok(outcome)
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            if cli.json {
                println!("{}", json!({"ok": false, "error": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            return ExitCode::from(2);
        }
    };
    // artefacts go to --output; without one they take over stdout
    let artefact = outcome
        .workspace
        .as_ref()
        .map(Workspace::to_json)
        .or(outcome.text.clone());
    let stdout_taken = artefact.is_some() && cli.output.is_none();
    if let Some(text) = &artefact {
        if let Err(e) = write_out(cli.output.as_deref(), text) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    if cli.json && !stdout_taken {
        println!("{}", json!({"ok": outcome.ok, "report": outcome.body}));
    } else if stdout_taken {
        for line in &outcome.lines {
            eprintln!("{line}");
        }
    } else {
        for line in &outcome.lines {
            println!("{line}");
        }
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
