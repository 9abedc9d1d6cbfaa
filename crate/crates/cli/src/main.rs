//! `owb` — batch verification front end for the finite-model workbench.
//!
//! Exit codes: 0 all laws pass, 1 a law fails (witness printed), 2 the input
//! cannot be parsed or validated, 3 a search or frame budget was exceeded.

use std::io::Read as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use owb_core::corpus::{run_suites, Scale};
use owb_core::lattice::{
    build_lattice, is_boolean, is_distributive, lattice_laws_hold, mask_name, minimal_base,
};
use owb_core::morphism::{
    check_o_morphism, is_symmetric_pair, morphism_to_relation, relation_operators,
};
use owb_core::overlap::{
    canonical_overlap, check_overlap_axioms, derived_properties_suite, find_all_overlaps,
    Verdict,
};
use owb_core::topology::build_frame;
use owb_core::{
    Budget, CoverPresentation, Error, FiniteLattice, FiniteRelation, LatticeMap, OAlgebra,
    OverlapRelation,
};

#[derive(Parser)]
#[command(name = "owb", version, about = "finite-model workbench for overlap algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Structure file; standard input when omitted
    #[arg(long, global = true)]
    input: Option<String>,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on frame size and map-enumeration count
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for sampled map suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the laws of the structure in the input document
    Check,
    /// Exhaustively search a lattice for overlap relations
    SearchOverlap,
    /// Run the bundled theorem corpus
    Corpus {
        /// Corpus size
        #[arg(long, value_enum, default_value_t = ScaleArg::Default)]
        scale: ScaleArg,
    },
    /// Print the four operators induced by a relation and verify their laws
    Relation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Small,
    Default,
    Large,
}

impl From<ScaleArg> for Scale {
    fn from(s: ScaleArg) -> Scale {
        match s {
            ScaleArg::Small => Scale::Small,
            ScaleArg::Default => Scale::Default,
            ScaleArg::Large => Scale::Large,
        }
    }
}

/// The self-describing input document shared by all commands.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Document {
    Lattice(LatticePayload),
    Oalgebra(OalgebraPayload),
    Poset {
        #[serde(default)]
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
    },
    Cover {
        #[serde(default)]
        names: Vec<String>,
        base_meet: Vec<Vec<usize>>,
        top: usize,
        #[serde(default)]
        axioms: Vec<(usize, Vec<usize>)>,
    },
    Map {
        source: OalgebraPayload,
        target: OalgebraPayload,
        table: Vec<usize>,
    },
    Relation {
        x_size: usize,
        y_size: usize,
        pairs: Vec<(usize, usize)>,
    },
}

#[derive(Deserialize)]
struct LatticePayload {
    #[serde(default)]
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

#[derive(Deserialize)]
struct OalgebraPayload {
    #[serde(default)]
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    overlap: Vec<Vec<bool>>,
}

struct Report {
    command: &'static str,
    verdicts: Vec<(String, bool, Option<String>)>,
    notes: Vec<String>,
    started: Instant,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            verdicts: Vec::new(),
            notes: Vec::new(),
            started: Instant::now(),
        }
    }

    fn law(&mut self, name: &str, pass: bool, witness: Option<String>) {
        self.verdicts.push((name.to_string(), pass, witness));
    }

    fn verdict(&mut self, name: &str, v: &Verdict, lattice: &FiniteLattice) {
        let witness = v.witness.as_ref().map(|w| {
            w.iter()
                .map(|&p| lattice.name(p).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        });
        self.law(name, v.holds, witness);
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|(_, pass, _)| *pass)
    }

    fn emit(&self, format: Format) -> ExitCode {
        let elapsed = self.started.elapsed().as_millis();
        match format {
            Format::Text => {
                println!("command: {}", self.command);
                for note in &self.notes {
                    println!("  {note}");
                }
                for (name, pass, witness) in &self.verdicts {
                    match witness {
                        Some(w) => println!(
                            "  {name}: {} [{w}]",
                            if *pass { "pass" } else { "FAIL" }
                        ),
                        None => println!("  {name}: {}", if *pass { "pass" } else { "FAIL" }),
                    }
                }
                println!(
                    "result: {} ({} laws, {elapsed} ms)",
                    if self.all_pass() { "pass" } else { "FAIL" },
                    self.verdicts.len()
                );
            }
            Format::JsonLines => {
                for (name, pass, witness) in &self.verdicts {
                    println!(
                        "{}",
                        serde_json::json!({ "law": name, "pass": pass, "witness": witness })
                    );
                }
                println!(
                    "{}",
                    serde_json::json!({
                        "command": self.command,
                        "pass": self.all_pass(),
                        "laws": self.verdicts.len(),
                        "notes": self.notes,
                        "elapsed_ms": elapsed as u64,
                    })
                );
            }
        }
        if self.all_pass() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn error_exit(e: &Error, format: Format) -> ExitCode {
    let code = match e {
        Error::SearchBudgetExceeded { .. }
        | Error::FrameBudgetExceeded { .. }
        | Error::SizeLimit { .. } => 3u8,
        Error::NotPoset { .. }
        | Error::NoBounds
        | Error::CarrierMismatch { .. }
        | Error::AsymmetricRelation { .. }
        | Error::ShapeMismatch { .. } => 2,
        _ => 1,
    };
    match format {
        Format::Text => eprintln!("error: {e}"),
        Format::JsonLines => println!("{}", serde_json::json!({ "error": e.to_string() })),
    }
    ExitCode::from(code)
}

fn parse_exit(msg: &str, format: Format) -> ExitCode {
    match format {
        Format::Text => eprintln!("error: {msg}"),
        Format::JsonLines => println!("{}", serde_json::json!({ "error": msg })),
    }
    ExitCode::from(2)
}

fn read_document(common: &Common) -> Result<Document, String> {
    let text = match &common.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| e.to_string())?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn budget_of(common: &Common) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = common.budget {
        b.frame_limit = n;
        b.map_enum_limit = n;
    }
    b
}

fn lattice_of(names: Vec<String>, leq: &[Vec<bool>]) -> Result<FiniteLattice, Error> {
    build_lattice(names, leq)
}

fn oalgebra_parts(
    doc: &OalgebraPayload,
) -> Result<(FiniteLattice, OverlapRelation), Error> {
    let lattice = lattice_of(doc.names.clone(), &doc.leq)?;
    let overlap = OverlapRelation::new(lattice.len(), &doc.overlap)?;
    Ok((lattice, overlap))
}

/// Build a fully verified algebra from a payload, for use as a morphism
/// endpoint (where the endpoint itself is context, not the thing under test).
fn oalgebra_of(doc: &OalgebraPayload) -> Result<OAlgebra, Error> {
    let (lattice, overlap) = oalgebra_parts(doc)?;
    let base = minimal_base(&lattice);
    OAlgebra::new(lattice, base, overlap)
}

fn cmd_check(doc: Document, common: &Common) -> ExitCode {
    let format = common.format;
    let budget = budget_of(common);
    let mut report = Report::new("check");
    match doc {
        Document::Lattice(p) => match lattice_of(p.names, &p.leq) {
            Ok(l) => {
                report.note(format!("lattice with {} elements", l.len()));
                report.note(format!(
                    "distributive: {}, boolean: {}",
                    is_distributive(&l),
                    is_boolean(&l)
                ));
                report.law("lattice laws", lattice_laws_hold(&l), None);
            }
            Err(e @ Error::NotPoset { .. }) => return error_exit(&e, format),
            Err(Error::NotLattice { p, q, kind }) => {
                report.law(
                    "lattice laws",
                    false,
                    Some(format!("elements {p} and {q} lack a {kind}")),
                );
            }
            Err(e) => return error_exit(&e, format),
        },
        Document::Oalgebra(p) => match oalgebra_parts(&p) {
            Ok((lattice, overlap)) => {
                let base = minimal_base(&lattice);
                match check_overlap_axioms(&lattice, &base, &overlap) {
                    Ok(axioms) => {
                        for (name, v) in axioms.verdicts() {
                            report.verdict(name, v, &lattice);
                        }
                        report.law("density forms agree", axioms.density_forms_agree, None);
                        if axioms.all_pass() {
                            let alg = OAlgebra {
                                lattice: lattice.clone(),
                                base,
                                overlap,
                            };
                            let derived = derived_properties_suite(&alg);
                            for (name, v) in derived.verdicts() {
                                report.verdict(name, v, &lattice);
                            }
                        }
                    }
                    Err(e) => return error_exit(&e, format),
                }
            }
            Err(e) => return error_exit(&e, format),
        },
        Document::Poset { names, leq } => {
            match owb_core::constructions::dm_completion(&leq) {
                Ok(c) => {
                    let _ = names;
                    report.note(format!(
                        "poset with {} elements; completion has {} cuts",
                        c.source_size,
                        c.cuts.len()
                    ));
                    report.law("poset laws", true, None);
                    report.law(
                        "completion embeds the source",
                        c.embedding.len() == c.source_size,
                        None,
                    );
                }
                Err(e) => return error_exit(&e, format),
            }
        }
        Document::Cover {
            names,
            base_meet,
            top,
            axioms,
        } => match CoverPresentation::new(names, &base_meet, top, axioms) {
            Ok(p) => match build_frame(&p, &budget) {
                Ok(frame) => {
                    report.note(format!(
                        "frame with {} saturated sets over a base of {}",
                        frame.len(),
                        p.base_size()
                    ));
                    let pos: Vec<&str> = (0..p.base_size())
                        .filter(|&a| frame.pos_base()[a])
                        .map(|a| p.names()[a].as_str())
                        .collect();
                    report.note(format!("positive base elements: {}", pos.join(", ")));
                    report.law("saturation closure and frame laws", true, None);
                    report.law("positivity laws", true, None);
                }
                Err(e @ Error::FrameBudgetExceeded { .. }) => return error_exit(&e, format),
                Err(Error::PositivityLawViolation { law }) => {
                    report.law(&format!("positivity: {law}"), false, None);
                }
                Err(Error::TheoremViolation { theorem }) => {
                    report.law(theorem, false, None);
                }
                Err(e) => return error_exit(&e, format),
            },
            Err(e) => return error_exit(&e, format),
        },
        Document::Map {
            source,
            target,
            table,
        } => {
            let (src, tgt) = match (oalgebra_of(&source), oalgebra_of(&target)) {
                (Ok(s), Ok(t)) => (s, t),
                (Err(e), _) | (_, Err(e)) => return error_exit(&e, format),
            };
            let f = match LatticeMap::new(src.lattice.len(), tgt.lattice.len(), table) {
                Ok(f) => f,
                Err(e) => return error_exit(&e, format),
            };
            match owb_core::morphism::three_way_equivalence(&f, &src, &tgt) {
                Ok(true) => report.law("o-morphism (three characterizations)", true, None),
                Ok(false) => {
                    let witness = match check_o_morphism(&f, &src, &tgt) {
                        Err(Error::NotOMorphism { condition, p, q }) => Some(format!(
                            "{condition} fails at ({}, {})",
                            src.lattice.name(p),
                            tgt.lattice.name(q)
                        )),
                        _ => None,
                    };
                    report.law("o-morphism (three characterizations)", false, witness);
                }
                Err(e) => return error_exit(&e, format),
            }
        }
        Document::Relation { .. } => {
            return parse_exit("relation documents go to the `relation` command", format)
        }
    }
    report.emit(format)
}

fn cmd_search_overlap(doc: Document, common: &Common) -> ExitCode {
    let format = common.format;
    let budget = budget_of(common);
    let Document::Lattice(p) = doc else {
        return parse_exit("search-overlap expects a lattice document", format);
    };
    let lattice = match lattice_of(p.names, &p.leq) {
        Ok(l) => l,
        Err(e) => return error_exit(&e, format),
    };
    let base = minimal_base(&lattice);
    let mut report = Report::new("search-overlap");
    match find_all_overlaps(&lattice, &base, &budget) {
        Ok(found) => {
            let boolean = is_boolean(&lattice);
            report.note(format!(
                "{} overlap relation(s) found; lattice is {}boolean{}",
                found.len(),
                if boolean { "" } else { "not " },
                if lattice.is_trivial() {
                    " (degenerate: single element)"
                } else {
                    ""
                }
            ));
            for r in &found {
                let cells: Vec<String> = (0..lattice.len())
                    .flat_map(|a| (0..=a).map(move |b| (a, b)))
                    .filter(|&(a, b)| r.overlaps(a, b))
                    .map(|(a, b)| format!("({}, {})", lattice.name(a), lattice.name(b)))
                    .collect();
                report.note(format!("overlap: {}", cells.join(" ")));
            }
            let expected = boolean || lattice.is_trivial();
            let matches_canonical =
                found.len() != 1 || found[0] == canonical_overlap(&lattice);
            report.law(
                "unique overlap exactly on boolean lattices",
                (found.len() == 1) == expected && matches_canonical,
                None,
            );
        }
        Err(e) => return error_exit(&e, format),
    }
    report.emit(format)
}

fn cmd_relation(doc: Document, common: &Common) -> ExitCode {
    let format = common.format;
    let budget = budget_of(common);
    let Document::Relation {
        x_size,
        y_size,
        pairs,
    } = doc
    else {
        return parse_exit("relation expects a relation document", format);
    };
    let r = match FiniteRelation::new(x_size, y_size, pairs) {
        Ok(r) => r,
        Err(e) => return error_exit(&e, format),
    };
    let ops = relation_operators(&r);
    let mut report = Report::new("relation");

    let table_note = |name: &str, f: &LatticeMap, src_ground: usize, tgt_ground: usize| {
        let rows: Vec<String> = (0..f.source_len())
            .map(|m| {
                format!(
                    "{} -> {}",
                    mask_name(src_ground, m as u64),
                    mask_name(tgt_ground, f.apply(m) as u64)
                )
            })
            .collect();
        format!("{name}: {}", rows.join("; "))
    };
    report.note(table_note("R", &ops.forward, x_size, y_size));
    report.note(table_note("R^-", &ops.inverse, y_size, x_size));
    report.note(table_note("R*", &ops.star, y_size, x_size));
    report.note(table_note("R^-*", &ops.inverse_star, x_size, y_size));

    let (src, tgt) = match (
        OAlgebra::powerset(x_size, &budget),
        OAlgebra::powerset(y_size, &budget),
    ) {
        (Ok(s), Ok(t)) => (s, t),
        (Err(e), _) | (_, Err(e)) => return error_exit(&e, format),
    };
    match check_o_morphism(&ops.forward, &src, &tgt) {
        Ok(quad) => {
            report.law("R -| R*", quad.f_star == ops.star, None);
            report.law("R^- -| R^-*", quad.f_minus_star == ops.inverse_star, None);
            report.law(
                "R ~ R^-",
                is_symmetric_pair(&ops.forward, &ops.inverse, &src, &tgt),
                None,
            );
            let round_trip = morphism_to_relation(&ops.forward, &src, &tgt)
                .map(|back| back == r)
                .unwrap_or(false);
            report.law("relation round-trip", round_trip, None);
        }
        Err(e) => return error_exit(&e, format),
    }
    report.emit(format)
}

fn cmd_corpus(scale: ScaleArg, common: &Common) -> ExitCode {
    let format = common.format;
    let budget = budget_of(common);
    match run_suites(scale.into(), &budget, common.seed) {
        Ok(outcomes) => {
            let mut all = true;
            for o in &outcomes {
                all &= o.pass;
                match format {
                    Format::Text => println!(
                        "{}: {} ({}, {} ms)",
                        o.name,
                        if o.pass { "pass" } else { "FAIL" },
                        o.details,
                        o.millis
                    ),
                    Format::JsonLines => println!(
                        "{}",
                        serde_json::json!({
                            "suite": o.name,
                            "pass": o.pass,
                            "details": o.details,
                            "elapsed_ms": o.millis as u64,
                        })
                    ),
                }
            }
            if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => error_exit(&e, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Corpus { scale } => cmd_corpus(scale, &cli.common),
        ref command => {
            let doc = match read_document(&cli.common) {
                Ok(d) => d,
                Err(msg) => return parse_exit(&msg, cli.common.format),
            };
            match command {
                Command::Check => cmd_check(doc, &cli.common),
                Command::SearchOverlap => cmd_search_overlap(doc, &cli.common),
                Command::Relation => cmd_relation(doc, &cli.common),
                Command::Corpus { .. } => unreachable!(),
            }
        }
    }
}
