//! The `spslab` command line.
//!
//! Exit codes: 0 when the command succeeds and the checked property holds,
//! 2 for a domain failure (axiom, ortho or witness negative), 1 for usage,
//! parse and I/O errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classical::{check_thm3, classical_subsystem, decompose, ClassicalAnalysis, OperationalClassicalAnalysis};
use crate::closure::prop1_verdict;
use crate::doc::{Document, LatticeDocument, ModelDocument, SpsDocument};
use crate::error::{Error, Result};
use crate::fixtures::from_topology;
use crate::order::{enumerate_orthos, verify_ortho, Lattice, OrthoMap, DEFAULT_SIZE_CAP};
use crate::report::{list, Report};
use crate::sphere::{
    build_model, counterexample_eps0, epsilon_sweep, outcome_probability, simulate, OrthoSearchOutcome,
    SphereModelConfig, SpherePoint, TestSpec,
};
use crate::sps::{FiniteSps, TestPair};
use crate::stateset::StateSet;
use crate::topological::{
    check_prop2, coverage_structure, is_t_classical, t_classical_system, FamilyShape, TopologicalAnalysis,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "spslab",
    version,
    about = "Finite state property systems and the (ε, d) sphere model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the axioms of a system (or validate a lattice or topology).
    Check { file: PathBuf },
    /// Classical, topological and order-theoretic analysis.
    Analyze(AnalyzeArgs),
    /// Split into totally non-classical summands; one document per summand.
    Decompose {
        file: PathBuf,
        /// Where summand documents go (default: next to the input).
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The discretized sphere model.
    #[command(subcommand)]
    Model(ModelCommand),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// System, topology or lattice document.
    pub file: PathBuf,
    /// Classical properties and the classical subsystem (needs an ortho).
    #[arg(long)]
    pub classical: bool,
    /// Topological properties, τ and the T-classical system (default).
    #[arg(long)]
    pub topological: bool,
    /// Enumerate orthocomplementations of the property lattice.
    #[arg(long)]
    pub ortho_search: bool,
    /// Compare classical, topological and central properties (needs an ortho).
    #[arg(long)]
    pub thm3: bool,
    /// Operationally classical properties of the document's test battery.
    #[arg(long)]
    pub prop2: bool,
    /// Whether the test battery covers every topological property.
    #[arg(long)]
    pub coverage: bool,
}

#[derive(Debug, Args, Clone)]
pub struct ModelSource {
    /// Model config document.
    #[arg(long, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// icosahedron, cube, octahedron or fibonacci-N.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Number of d-grid intervals over [−(1−ε), 1−ε].
    #[arg(long)]
    pub d_steps: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// Emit the model as a system document with its test battery.
    Build {
        #[command(flatten)]
        source: ModelSource,
        /// Write the document here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte Carlo runs for one state; CSV on stdout.
    Simulate {
        /// Polar angle of the state from the test axis, in degrees.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Test every direction and d of this config instead of the z-axis.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Closed-family size, topological count and additivity defect per ε.
    Sweep {
        #[command(flatten)]
        source: ModelSource,
        /// Comma-separated, descending.
        #[arg(long, value_delimiter = ',', default_value = "1,0.5,0.2,0.1,0.05,0.01")]
        eps: Vec<f64>,
    },
    /// Search the ε = d = 0 model for an operationally classical,
    /// non-topological eigen-property.
    Counterexample {
        #[command(flatten)]
        source: ModelSource,
    },
}

/// Enumeration cap, overridable through `SPSLAB_SIZE_CAP`.
pub fn size_cap() -> usize {
    std::env::var("SPSLAB_SIZE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Document(_) | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

struct Outcome {
    report: Report,
    code: i32,
    /// Extra text printed after the report.
    trailer: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let echo = std::iter::once("spslab".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ");
    match execute(&cli.command, &echo) {
        Ok(o) => {
            let _ = out.write_all(o.report.render().as_bytes());
            let _ = out.write_all(o.trailer.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cmd: &Command, echo: &str) -> Result<Outcome> {
    match cmd {
        Command::Check { file } => cmd_check(file, echo),
        Command::Analyze(a) => cmd_analyze(a, echo),
        Command::Decompose { file, out_dir } => cmd_decompose(file, out_dir.as_deref(), echo),
        Command::Model(m) => cmd_model(m, echo),
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn done(report: Report, ok: bool) -> Outcome {
    Outcome {
        report,
        code: if ok { EXIT_OK } else { EXIT_FAILURE },
        trailer: String::new(),
    }
}

pub fn cmd_check_text(text: &str, echo: &str) -> Result<(Report, bool)> {
    let mut r = Report::new(echo, text.as_bytes());
    let ok = match Document::parse(text)? {
        Document::Sps(doc) => {
            let parsed = doc.resolve()?;
            let axioms = parsed.candidate.verify();
            r.section("axioms");
            r.kv("states", parsed.candidate.states.len());
            r.kv("properties", parsed.candidate.family.len());
            for axiom in 1..=4u8 {
                r.kv(
                    &format!("axiom-{axiom}"),
                    if axioms.axiom_holds(axiom) { "pass" } else { "fail" },
                );
            }
            r.kv("lattice", if axioms.lattice_ok() { "pass" } else { "fail" });
            for f in &axioms.failures {
                r.kv("witness", axioms.describe(f));
            }
            r.kv("status", if axioms.passed() { "pass" } else { "fail" });
            if !axioms.passed() {
                false
            } else {
                let (s, ortho, tests) = parsed.into_system()?;
                let mut ok = true;
                if let Some(m) = ortho {
                    let v = verify_ortho(&s, &m);
                    r.section("ortho");
                    r.kv("status", if v.passed() { "pass" } else { "fail" });
                    if !v.passed() {
                        r.kv("witness", v.describe(&s));
                        ok = false;
                    }
                }
                if !tests.is_empty() {
                    r.section("tests").kv("count", tests.len());
                }
                ok
            }
        }
        Document::Lattice(doc) => {
            let (l, ortho) = doc.build()?;
            r.section("lattice");
            r.kv("elements", l.size());
            r.kv("atomistic", yes_no(l.is_atomistic()));
            r.kv("boolean", yes_no(l.is_boolean()));
            r.kv("status", "pass");
            match ortho {
                Some(m) => {
                    let v = verify_ortho(&l, &m);
                    r.section("ortho");
                    r.kv("status", if v.passed() { "pass" } else { "fail" });
                    if !v.passed() {
                        r.kv("witness", v.describe(&l));
                    }
                    v.passed()
                }
                None => true,
            }
        }
        Document::Topology(doc) => {
            let t = doc.build()?;
            r.section("topology");
            r.kv("points", t.ground().len());
            r.kv("open-sets", t.opens().len());
            r.kv("status", "pass");
            true
        }
    };
    Ok((r, ok))
}

fn cmd_check(file: &Path, echo: &str) -> Result<Outcome> {
    let text = read(file)?;
    let (r, ok) = cmd_check_text(&text, echo)?;
    Ok(done(r, ok))
}

/// A verified system with its optional ortho and tests, from any document
/// kind that describes one.
fn load_system(text: &str) -> Result<(FiniteSps, Option<OrthoMap>, Vec<TestPair>)> {
    match Document::parse(text)? {
        Document::Sps(doc) => doc.resolve()?.into_system(),
        Document::Topology(doc) => Ok((from_topology(&doc.build()?), None, Vec::new())),
        Document::Lattice(_) => Err(Error::Document(
            "this command needs a system (`states` + `closed_sets`) or a topology".into(),
        )),
    }
}

fn names(s: &FiniteSps, props: &[usize]) -> String {
    list(&s.names_of(props))
}

fn sets(s: &FiniteSps, blocks: &[StateSet]) -> String {
    list(&blocks.iter().map(|b| s.set_name(*b)).collect::<Vec<_>>())
}

fn shape(s: &FiniteSps, f: &FamilyShape) -> String {
    match f {
        FamilyShape::Partition => "partition".into(),
        FamilyShape::Overlapping(a, b) => format!("overlapping cover ({} meets {})", s.set_name(*a), s.set_name(*b)),
        FamilyShape::NotCovering(p) => format!("not a cover (misses {})", s.states()[*p]),
    }
}

fn cmd_analyze(a: &AnalyzeArgs, echo: &str) -> Result<Outcome> {
    let text = read(&a.file)?;
    let mut r = Report::new(echo, text.as_bytes());
    let cap = size_cap();

    if let Document::Lattice(doc) = Document::parse(&text)? {
        let (l, ortho) = doc.build()?;
        r.section("lattice");
        r.kv("elements", l.size());
        r.kv("atomistic", yes_no(l.is_atomistic()));
        r.kv("boolean", yes_no(l.is_boolean()));
        if a.ortho_search {
            let found = enumerate_orthos(&l, cap)?;
            ortho_section(&mut r, &found, |m| {
                let d = LatticeDocument::from_lattice(&l, Some(m));
                d.ortho
                    .unwrap_or_default()
                    .iter()
                    .map(|[x, y]| format!("{x}<->{y}"))
                    .collect()
            });
        }
        if let Some(m) = ortho {
            let v = verify_ortho(&l, &m);
            r.section("ortho")
                .kv("status", if v.passed() { "pass" } else { "fail" });
            if v.passed() {
                r.kv(
                    "centre",
                    list(
                        &crate::order::central_elements(&l, &m)?
                            .iter()
                            .map(|&x| l.element_name(x))
                            .collect::<Vec<_>>(),
                    ),
                );
            }
        }
        return Ok(done(r, true));
    }

    let topology = match Document::parse(&text)? {
        Document::Topology(doc) => Some(doc.build()?),
        _ => None,
    };
    let (s, given, tests) = load_system(&text)?;
    let any = a.classical || a.topological || a.ortho_search || a.thm3 || a.prop2 || a.coverage;
    let topological = a.topological || !any;
    let mut ok = true;

    r.section("system");
    r.kv("states", s.n_states());
    r.kv("properties", s.n_props());
    r.kv("atomistic", yes_no(s.is_atomistic()));
    r.kv("boolean", yes_no(s.is_boolean()));

    if let Some(t) = &topology {
        let v = prop1_verdict(t, cap)?;
        r.section("prop1");
        r.kv("ortho-exists", yes_no(v.ortho_exists));
        r.kv("boolean", yes_no(v.boolean));
        r.kv("clopen-coincide", yes_no(v.clopen_coincide));
        r.kv("discrete", yes_no(v.discrete));
        r.kv("equivalence-holds", yes_no(v.equivalence_holds));
        ok &= v.equivalence_holds;
    }

    let mut searched: Option<Vec<OrthoMap>> = None;
    if a.ortho_search {
        let found = enumerate_orthos(&s, cap)?;
        ortho_section(&mut r, &found, |m| {
            (0..s.n_props())
                .filter(|&x| x <= m.apply(x))
                .map(|x| format!("{}<->{}", s.property_name(x), s.property_name(m.apply(x))))
                .collect()
        });
        searched = Some(found);
    }

    let needs_ortho = a.classical || a.thm3;
    let ortho = match (&given, &searched) {
        (Some(m), _) => {
            m.validate(&s)?;
            Some(m.clone())
        }
        (None, Some(found)) => found.first().cloned(),
        (None, None) => None,
    };
    if needs_ortho && ortho.is_none() {
        return Err(Error::InvalidOrtho(if searched.is_some() {
            "no orthocomplementation exists".into()
        } else {
            "document has no ortho; add one or pass --ortho-search".into()
        }));
    }
    if given.is_none() && needs_ortho {
        r.section("ortho-choice")
            .kv("using", "first orthocomplementation found by the search");
    }

    if a.classical {
        let m = ortho.as_ref().expect("checked above");
        let c = ClassicalAnalysis::new(&s, m)?;
        r.section("classical");
        r.kv("classical", names(&s, &c.classical));
        for p in 0..s.n_states() {
            r.kv(
                &format!("omega({})", s.states()[p]),
                s.property_name(c.classical_state_of[p]),
            );
        }
        r.kv("classical-states", names(&s, &c.omega));
        r.kv("partition", yes_no(c.partition_is_valid(s.n_states())));
        r.kv("totally-nonclassical", yes_no(c.classical == [s.bottom(), s.top()]));
        let sub = classical_subsystem(&s, m)?;
        r.kv(
            "classical-subsystem",
            format!("{} states, {} properties", sub.n_states(), sub.n_props()),
        );
    }

    if topological {
        let t = TopologicalAnalysis::new(&s);
        r.section("topological");
        r.kv("topological", names(&s, &t.topological));
        for p in 0..s.n_states() {
            r.kv(&format!("tau({})", s.states()[p]), s.property_name(t.tau_of[p]));
        }
        r.kv("topological-states", names(&s, &t.t_states));
        r.kv("t-classical", yes_no(is_t_classical(&s)));
        let sub = t_classical_system(&s)?;
        r.kv(
            "t-classical-system",
            format!("{} states, {} properties", sub.n_states(), sub.n_props()),
        );
    }

    if a.thm3 {
        let m = ortho.as_ref().expect("checked above");
        let rep = check_thm3(&s, m)?;
        r.section("thm3");
        r.kv("classical", names(&s, &rep.classical));
        r.kv("topological", names(&s, &rep.topological));
        r.kv("central", names(&s, &rep.central));
        r.kv("atomistic", yes_no(rep.atomistic));
        r.kv("classical=topological", yes_no(rep.classical_eq_topological));
        r.kv(
            "central=classical",
            rep.central_eq_classical.map_or("n/a (not atomistic)", yes_no),
        );
        r.kv("classical-in-centre", yes_no(rep.classical_subset_central));
        for v in &rep.violations {
            r.kv("violation", v);
        }
        r.kv("status", if rep.holds() { "pass" } else { "fail" });
        ok &= rep.holds();
    }

    if a.prop2 {
        let rep = check_prop2(&s, &tests)?;
        r.section("prop2");
        r.kv("tests", tests.len());
        r.kv(
            "unconditional",
            if rep.unconditional_violations.is_empty() {
                "pass"
            } else {
                "fail"
            },
        );
        r.kv("condition", yes_no(rep.condition_holds));
        if let Some(w) = rep.condition_witness {
            r.kv(
                "condition-witness",
                format!("{} is topological but not operationally classical", s.property_name(w)),
            );
        }
        if rep.condition_holds {
            r.kv(
                "identity-1",
                if rep.identity1_violations.is_empty() {
                    "pass"
                } else {
                    "fail"
                },
            );
            r.kv(
                "identity-2",
                if rep.identity2_violations.is_empty() {
                    "pass"
                } else {
                    "fail"
                },
            );
        } else {
            r.kv("identity-1", "skipped");
            r.kv("identity-2", "skipped");
        }
        for &p in rep
            .unconditional_violations
            .iter()
            .chain(&rep.identity1_violations)
            .chain(&rep.identity2_violations)
        {
            r.kv("violation-at", &s.states()[p]);
        }
        r.kv("status", if rep.holds() { "pass" } else { "fail" });
        ok &= rep.holds();
    }

    if a.coverage {
        let rep = coverage_structure(&s, &tests)?;
        r.section("coverage");
        r.kv("topological-blocks", sets(&s, &rep.topological_blocks));
        r.kv("topological-shape", shape(&s, &rep.topological_shape));
        r.kv("operational-blocks", sets(&s, &rep.operational_blocks));
        r.kv("operational-shape", shape(&s, &rep.operational_shape));
        r.kv("same-structure", yes_no(rep.same_structure()));
    }

    Ok(done(r, ok))
}

fn ortho_section(r: &mut Report, found: &[OrthoMap], describe: impl Fn(&OrthoMap) -> Vec<String>) {
    r.section("ortho-search");
    r.kv("count", found.len());
    if found.is_empty() {
        r.kv("result", "no orthocomplementation exists");
    }
    for (i, m) in found.iter().enumerate() {
        r.kv(&format!("ortho-{i}"), describe(m).join(" "));
    }
}

fn cmd_decompose(file: &Path, out_dir: Option<&Path>, echo: &str) -> Result<Outcome> {
    let text = read(file)?;
    let mut r = Report::new(echo, text.as_bytes());
    let (s, ortho, _) = load_system(&text)?;
    let m = ortho.ok_or_else(|| Error::InvalidOrtho("document has no ortho".into()))?;
    let d = decompose(&s, &m, crate::stateset::MAX_STATES)?;
    let dir = match out_dir {
        Some(d) => d.to_path_buf(),
        None => file.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let stem = file
        .file_stem()
        .map_or("system".into(), |x| x.to_string_lossy().into_owned());
    r.section("decomposition");
    r.kv("summands", d.summands.len());
    for (i, part) in d.summands.iter().enumerate() {
        let path = dir.join(format!("{stem}.summand-{i}.toml"));
        let doc = SpsDocument::from_system(&part.system, Some(&part.ortho), &[]);
        std::fs::write(&path, doc.to_toml())?;
        r.kv(
            &format!("summand-{i}"),
            format!(
                "omega {} | {} states, {} properties | totally-nonclassical: yes | {}",
                s.property_name(part.omega),
                part.system.n_states(),
                part.system.n_props(),
                path.file_name().map(|x| x.to_string_lossy()).unwrap_or_default()
            ),
        );
    }
    let sum_names: Vec<String> = d
        .summands
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.system.states().iter().map(move |x| format!("{i}.{x}")))
        .collect();
    let pairs: Vec<String> = sum_names
        .iter()
        .zip(&d.witness.state_map)
        .map(|(a, &b)| format!("{a}->{}", s.states()[b]))
        .collect();
    r.kv("isomorphism", pairs.join(" "));
    Ok(done(r, true))
}

fn model_doc(source: &ModelSource) -> Result<(ModelDocument, Vec<u8>)> {
    let mut doc = match &source.config {
        Some(path) => {
            let text = read(path)?;
            let doc = ModelDocument::parse(&text)?;
            (doc, text.into_bytes())
        }
        None => {
            let name = source.preset.clone().unwrap_or_else(|| "icosahedron".into());
            (
                ModelDocument {
                    preset: Some(name),
                    epsilon: 0.0,
                    ..Default::default()
                },
                Vec::new(),
            )
        }
    };
    if let Some(e) = source.epsilon {
        doc.0.epsilon = e;
    }
    if let Some(k) = source.d_steps {
        doc.0.d_grid = None;
        doc.0.d_steps = Some(k);
    }
    if doc.1.is_empty() {
        doc.1 = toml::to_string(&doc.0).expect("documents serialize").into_bytes();
    }
    Ok(doc)
}

fn cmd_model(cmd: &ModelCommand, echo: &str) -> Result<Outcome> {
    match cmd {
        ModelCommand::Build { source, output } => {
            let (doc, input) = model_doc(source)?;
            let config = doc.config()?;
            let (s, tests) = build_model(&config)?;
            let mut r = Report::new(echo, &input);
            r.section("model");
            r.kv("states", s.n_states());
            r.kv("epsilon", config.epsilon);
            r.kv("d-values", config.d_grid.len());
            r.kv("properties", s.n_props());
            r.kv("tests", tests.len());
            r.kv("axioms", if s.verify_axioms().passed() { "pass" } else { "fail" });
            let document = SpsDocument::from_system(&s, None, &tests).to_toml();
            let coords: Vec<String> = config
                .sample
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    // adding 0.0 turns −0 into +0 for printing
                    let [x, y, z] = p.coords().map(|c| c + 0.0);
                    format!("v{i}=({x:.6},{y:.6},{z:.6})")
                })
                .collect();
            r.kv("sample", coords.join(" "));
            match output {
                Some(path) => {
                    std::fs::write(path, &document)?;
                    r.kv("written", path.display());
                    Ok(done(r, true))
                }
                None => Ok(Outcome {
                    trailer: format!("{}{document}", r.render_commented()),
                    report: Report::default(),
                    code: EXIT_OK,
                }),
            }
        }
        ModelCommand::Simulate {
            theta,
            phi,
            epsilon,
            d,
            n,
            seed,
            config,
        } => {
            let p = SpherePoint::from_degrees(*theta, *phi);
            let (tests, input): (Vec<(usize, TestSpec)>, Vec<u8>) = match config {
                Some(path) => {
                    let text = read(path)?;
                    let c: SphereModelConfig = ModelDocument::parse(&text)?.config()?;
                    let mut out = Vec::new();
                    for &dv in &c.d_grid {
                        for (i, &u) in c.directions.iter().enumerate() {
                            out.push((i, TestSpec::new(u, c.epsilon, dv)?));
                        }
                    }
                    (out, text.into_bytes())
                }
                None => {
                    let u = SpherePoint::new(0.0, 0.0, 1.0)?;
                    let t = TestSpec::new(u, *epsilon, *d)?;
                    let canon = format!("theta={theta} phi={phi} epsilon={epsilon} d={d} n={n}");
                    (vec![(0, t)], canon.into_bytes())
                }
            };
            let mut r = Report::new(echo, &input);
            r.seed(*seed);
            r.section("simulation");
            r.line("epsilon,d,direction-index,trials,up-count,analytic-probability");
            for (k, (i, t)) in tests.iter().enumerate() {
                // each row gets its own seed so rows are independent
                let ups = simulate(&p, t, *n, seed.wrapping_add(k as u64))?;
                r.line(format!(
                    "{},{},{},{},{},{}",
                    t.epsilon,
                    t.d,
                    i,
                    n,
                    ups,
                    outcome_probability(&p, t)
                ));
            }
            Ok(done(r, true))
        }
        ModelCommand::Sweep { source, eps } => {
            let (doc, input) = model_doc(source)?;
            let sample = doc.sample()?;
            let directions = match &doc.directions {
                Some(_) => doc.config()?.directions,
                None => sample.clone(),
            };
            let steps = doc.d_steps.unwrap_or(20);
            let rows = epsilon_sweep(&sample, &directions, eps, steps)?;
            let mut r = Report::new(echo, &input);
            r.section("sweep");
            r.kv("d-steps", steps);
            r.line("epsilon,d-values,properties,topological,additivity-defect,t-classical");
            for row in &rows {
                r.line(format!(
                    "{},{},{},{},{},{}",
                    row.epsilon,
                    row.d_values,
                    row.n_props,
                    row.n_topological,
                    row.additivity_defect,
                    yes_no(row.t_classical)
                ));
            }
            if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
                r.kv(
                    "endpoint-defect-decreases",
                    yes_no(first.additivity_defect > last.additivity_defect),
                );
            }
            Ok(done(r, true))
        }
        ModelCommand::Counterexample { source } => {
            let (doc, input) = model_doc(source)?;
            let sample = doc.sample()?;
            let cap = size_cap();
            let rep = counterexample_eps0(&sample, cap)?;
            let mut r = Report::new(echo, &input);
            r.section("counterexample");
            r.kv("states", rep.n_states);
            r.kv("properties", rep.n_props);
            let names: Vec<String> = (0..sample.len()).map(|i| format!("v{i}")).collect();
            let found = rep.witness.is_some();
            match &rep.witness {
                Some(w) => {
                    let config = SphereModelConfig::new(sample.clone(), 0.0, 0);
                    let (s, tests) = build_model(&config)?;
                    r.kv("direction", &names[w.direction]);
                    r.kv("a_u", s.property_name(w.a_u));
                    let cop = OperationalClassicalAnalysis::new(&s, &tests)?;
                    r.kv("a_u-operationally-classical", yes_no(cop.contains(w.a_u)));
                    r.kv("b_u", s.property_name(w.b_u));
                    r.kv("join", s.property_name(w.join));
                    r.kv("join-size", w.join_size);
                    r.kv("union-size", w.union_size);
                    r.kv("a_u-topological", "no");
                }
                None => {
                    r.kv("result", "no witness: sample is insufficient");
                }
            }
            match rep.ortho_search {
                OrthoSearchOutcome::Searched(0) => r.kv("ortho-search", "no orthocomplementation exists"),
                OrthoSearchOutcome::Searched(k) => r.kv("ortho-search", format!("{k} orthocomplementation(s) found")),
                OrthoSearchOutcome::CapExceeded { size, cap } => r.kv(
                    "ortho-search",
                    format!("skipped: {size} properties exceed the cap {cap}"),
                ),
            };
            r.kv(
                "antipodal-polarity-is-ortho",
                rep.antipodal_polarity_is_ortho.map_or("not a property map", yes_no),
            );
            Ok(done(r, found))
        }
    }
}
