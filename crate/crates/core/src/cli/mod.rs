//! Command-line driver: one problem file per invocation, a human table on
//! stdout and an optional JSON report.

pub mod problem;
pub mod report;
pub mod verify;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::groups::{double_coset_reps, Subgroup};
use crate::littlegroups::{classify_with_offset, completeness_check, field_compat, match_irreducible, MatchResult};
use crate::mackey::{
    induced_isomorphism_test, intertwining_preserved_by_induction, mackey_sufficient, monomial_criterion, normal_terms,
    CosetTerm,
};
use crate::repr::{
    exhaustive_spin_oracle, induce, intertwining_number, irreducibles_of_group_with, is_irreducible_with, Config,
    Representation,
};

use problem::{encode_matrix, parse_problem, Encoded, ProblemSpec};
use report::*;

pub const TOOL: &str = "modrep";

/// Samples drawn by `verify` for each randomized identity.
const VERIFY_SAMPLES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    /// Little-groups classification with completeness summary.
    Classify,
    /// Run the invariant suite on the instance.
    Verify,
    /// Irreducibility test of --rep.
    Irr,
    /// Intertwining number i(--rep, --rep2).
    Intertwine,
    /// Induce --rep from its subgroup to G.
    Induce,
    /// Double-coset irreducibility test for the module induced from --rep.
    Mackey,
    /// Locate irreducibles of G in the classification.
    Match,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::Classify => "classify",
            CommandKind::Verify => "verify",
            CommandKind::Irr => "irr",
            CommandKind::Intertwine => "intertwine",
            CommandKind::Induce => "induce",
            CommandKind::Mackey => "mackey",
            CommandKind::Match => "match",
        }
    }
}

#[derive(Parser, Debug, Clone)]
#[command(name = "modrep", version, about = "Irreducible representations of N ⋊ H over finite fields")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: CommandKind,
    /// Problem file (JSON).
    pub problem: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the machine-readable report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Cross-check irreducibility verdicts by exhaustive spinning.
    #[arg(long)]
    pub oracle: bool,
    /// Named representation from the file, or `trivial` / `regular` on --subgroup.
    #[arg(long)]
    pub rep: Option<String>,
    #[arg(long)]
    pub rep2: Option<String>,
    /// Generators of a subgroup as words in the generators of G, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub subgroup: Option<Vec<String>>,
}

/// Runs the parsed command line and returns the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let text = match std::fs::read_to_string(&cli.problem) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {}", cli.problem.display(), Error::Io(e.to_string()));
            return 2;
        }
    };
    let spec = match parse_problem(&text) {
        Ok(s) => s,
        Err(e) => {
            if matches!(e.error, Error::CharacteristicDivides { .. }) {
                eprintln!("error: {e} (only the semisimple case char K ∤ |G| is supported)");
            } else {
                eprintln!("error: {e}");
            }
            return e.error.exit_code();
        }
    };
    let report = match run_command(&spec, cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    print!("{}", report.human());
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: {}: {}", path.display(), Error::Io(e.to_string()));
            return 2;
        }
    }
    let failed = report.checks.as_ref().is_some_and(|cs| cs.iter().any(|c| !c.passed));
    if failed {
        4
    } else {
        0
    }
}

pub fn run() -> i32 {
    main_with(&Cli::parse())
}

fn header(spec: &ProblemSpec, cli: &Cli) -> Report {
    let f = &spec.field;
    Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: CommandEcho {
            name: cli.command.name().into(),
            rep: cli.rep.clone(),
            rep2: cli.rep2.clone(),
            subgroup: cli.subgroup.clone(),
            oracle: cli.oracle,
        },
        seed: cli.seed,
        field: FieldEcho {
            p: f.characteristic(),
            k: f.degree(),
            q: f.order(),
            min_poly: f.min_poly().map(<[u32]>::to_vec),
        },
        group_order: spec.group.order(),
        entries: None,
        sum: None,
        complete: None,
        field_compat: None,
        checks: None,
        irreducibility: None,
        intertwining: None,
        induced: None,
        mackey: None,
        isomorphism: None,
        matches: None,
    }
}

/// Executes one command on a validated problem.
pub fn run_command(spec: &ProblemSpec, cli: &Cli) -> Result<Report> {
    let cfg = Config { seed: cli.seed, force_oracle: cli.oracle };
    let mut r = header(spec, cli);
    let sd = &spec.group;
    let field = &spec.field;
    match cli.command {
        CommandKind::Classify => {
            let entries = classify_with_offset(sd, field, &cfg, 0)?;
            let (sum, complete) = completeness_check(&entries, sd.order());
            r.entries = Some(
                entries
                    .iter()
                    .map(|e| EntryRow {
                        j: e.orbit_index,
                        chi: e.chi.values.iter().map(|&x| Encoded::encode(field, x)).collect(),
                        orbit_size: e.orbit_size,
                        stabilizer_order: e.stabilizer_order,
                        rho_index: e.rho_index,
                        rho_dim: e.rho.dim(),
                        theta_dim: e.dim_theta,
                        endo_dim: e.endo_dim,
                        irreducible: e.certified_irreducible,
                    })
                    .collect(),
            );
            r.sum = Some(sum);
            r.complete = Some(complete);
            r.field_compat = Some(field_compat(sd.n_spec(), field));
        }
        CommandKind::Verify => {
            r.checks = Some(verify::verify_instance(sd, field, &cfg, VERIFY_SAMPLES));
        }
        CommandKind::Irr => {
            let name = required(&cli.rep, "--rep")?;
            let (_, m) = resolve(spec, name, cli.subgroup.as_deref())?;
            let v = is_irreducible_with(&m, &cfg)?;
            let oracle = if cli.oracle { exhaustive_spin_oracle(&m).map(|w| w.is_none()) } else { None };
            r.irreducibility = Some(IrreducibilitySection {
                rep: name.into(),
                dim: m.dim(),
                irreducible: v.irreducible,
                method: v.method.name().into(),
                witness_dim: v.witness.as_ref().map(|w| w.dim()),
                oracle,
            });
        }
        CommandKind::Intertwine => {
            let a = required(&cli.rep, "--rep")?;
            let b = required(&cli.rep2, "--rep2")?;
            let (_, m) = resolve(spec, a, cli.subgroup.as_deref())?;
            let (_, n) = resolve(spec, b, cli.subgroup.as_deref())?;
            let i = intertwining_number(&m, &n)?;
            r.intertwining =
                Some(IntertwiningSection { rep: a.into(), rep2: b.into(), i_value: i, disjoint: Some(i == 0) });
        }
        CommandKind::Induce => {
            let name = required(&cli.rep, "--rep")?;
            let (h, l) = resolve(spec, name, cli.subgroup.as_deref())?;
            let ind = induce(&l, &h)?;
            let irreducible = is_irreducible_with(&ind, &cfg)?.irreducible;
            let endo_dim = intertwining_number(&ind, &ind)?;
            r.induced = Some(InducedSection {
                from_order: h.order(),
                index: h.index(),
                induced: summarize(&format!("{name}^G"), &ind),
                irreducible,
                endo_dim,
            });
        }
        CommandKind::Mackey => {
            let name = required(&cli.rep, "--rep")?;
            let (h, l) = resolve(spec, name, cli.subgroup.as_deref())?;
            let m = mackey_sufficient(&l, &h, &cfg)?;
            let preserved = intertwining_preserved_by_induction(&l, &h, &cfg)?;
            let monomial = if l.dim() == 1 { Some(monomial_criterion(&l, &h)?) } else { None };
            let normal_path_agrees = if h.is_normal() {
                let xs = double_coset_reps(&h, &h)?;
                let total: usize = normal_terms(&l, &h, &xs)?.iter().map(|t| t.i_value).sum();
                Some(total == m.total)
            } else {
                None
            };
            r.mackey = Some(MackeySection {
                rep: name.into(),
                subgroup_order: h.order(),
                double_cosets: rows(&m.double_cosets),
                i_total: m.total,
                i_ll: m.i_ll,
                i_induced_direct: m.direct_total,
                condition_holds: m.condition_holds,
                irreducible_by_condition: m.irreducible_by_disjointness,
                direct_irreducible: m.direct_verdict,
                intertwining_preserved: preserved,
                monomial_criterion: monomial,
                normal_path_agrees,
            });
            if let Some(b) = &cli.rep2 {
                let (h2, l2) = resolve(spec, b, cli.subgroup.as_deref())?;
                let iso = induced_isomorphism_test(&l, &h, &l2, &h2, &cfg)?;
                r.isomorphism = Some(IsomorphismSection {
                    rep: name.into(),
                    rep2: b.clone(),
                    double_cosets: rows(&iso.double_cosets),
                    non_isomorphic: iso.non_isomorphic,
                    i_direct: iso.direct_i,
                });
            }
        }
        CommandKind::Match => {
            let entries = classify_with_offset(sd, field, &cfg, 0)?;
            let targets: Vec<(String, Representation)> = match &cli.rep {
                Some(name) => {
                    let (s, m) = resolve(spec, name, cli.subgroup.as_deref())?;
                    if s.order() != sd.order() {
                        return Err(Error::Hypothesis(format!("{name} is not a representation of G")));
                    }
                    vec![(name.clone(), m)]
                }
                None => irreducibles_of_group_with(sd.group(), field, &cfg)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, m)| (format!("irr{i}"), m))
                    .collect(),
            };
            let mut out = Vec::new();
            for (name, m) in targets {
                let row = match match_irreducible(sd, &m, &entries, &cfg)? {
                    MatchResult::Entry(e) => MatchRow { rep: name, dim: m.dim(), entry: Some(e), verdict: "matched".into() },
                    MatchResult::NoLinearConstituent => MatchRow {
                        rep: name,
                        dim: m.dim(),
                        entry: None,
                        verdict: "no one-dimensional N-composition factor".into(),
                    },
                };
                out.push(row);
            }
            r.matches = Some(out);
        }
    }
    Ok(r)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("{flag} is required for this command")))
}

fn rows(terms: &[CosetTerm]) -> Vec<CosetRow> {
    terms.iter().map(|t| CosetRow { rep_word: t.rep_word.clone(), hx_order: t.hx_order, i_value: t.i_value }).collect()
}

fn summarize(name: &str, m: &Representation) -> RepSummary {
    let names = m.group().generator_names();
    let images: BTreeMap<String, EncodedMatrix> =
        names.iter().zip(m.images()).map(|(n, a)| (n.clone(), encode_matrix(a))).collect();
    RepSummary { name: name.into(), group_order: m.group().order(), dim: m.dim(), images }
}

fn parse_subgroup(spec: &ProblemSpec, words: Option<&[String]>) -> Result<Subgroup> {
    let g = spec.group.group();
    match words {
        None => Ok(Subgroup::whole(g)),
        Some(ws) => {
            let elems = ws.iter().map(|w| g.parse_word(w)).collect::<Result<Vec<_>>>()?;
            Subgroup::generated(g, &elems)
        }
    }
}

/// Looks up a named representation. `trivial` and `regular` are built on the
/// subgroup given by --subgroup (default G) unless the file defines them.
pub fn resolve(spec: &ProblemSpec, name: &str, subgroup: Option<&[String]>) -> Result<(Subgroup, Representation)> {
    if let Some(n) = spec.reps.get(name) {
        return Ok((n.subgroup.clone(), n.rep.clone()));
    }
    let field: &FieldSpec = &spec.field;
    match name {
        "trivial" => {
            let s = parse_subgroup(spec, subgroup)?;
            let m = Representation::trivial(s.group(), field);
            Ok((s, m))
        }
        "regular" => {
            let s = parse_subgroup(spec, subgroup)?;
            let m = Representation::regular(s.group(), field);
            Ok((s, m))
        }
        _ => Err(Error::UnknownRep(name.into())),
    }
}
