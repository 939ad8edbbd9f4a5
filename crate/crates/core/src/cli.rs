//! Text model formats, command dispatch and JSON reports.
//!
//! Polymatroid files:
//!
//! ```text
//! # comments run to the end of the line
//! ground a b
//! rank {a} = 1
//! rank {b} = 1/2
//! rank {a b} = 3/2
//! ```
//!
//! Every non-empty subset needs exactly one `rank` line; `rank {} = 0` is
//! accepted. Lattice files use `member {a x} = 2` (with `{}` for the empty
//! set) and one `measure a = 2` line per element.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::convolution::{check_conditions, convolve, make_ranked_lattice, EmbeddingReport, Outcome, RankedLattice, Witness};
use crate::cuts::{find_nonprincipal_cut, generate_cut, ModularCut};
use crate::cyclic::cyclic_lattice;
use crate::error::{Error, Result};
use crate::extensions::{
    certify_nonsticky, common_info_extension, contract_extension, factor_extension, helgason_expand_free,
    ingleton_epsilon, ingleton_extension, IngletonBranch, Verdict,
};
use crate::inequalities::{amalgam_search_integer, comm_value, ing_value, ten_term_check, ten_terms};
use crate::setcore::{
    contract, factor, flats, make_set_function, parse_ratio, validate_polymatroid, GroundSet, Measure, Partition,
    Polymatroid, Ratio, SetFunction, Subset, Violation,
};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn parse_ground<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<GroundSet> {
    let (no, line) = lines.next().ok_or_else(|| syntax(1, "missing `ground` line"))?;
    let mut words = line.split_whitespace();
    if words.next() != Some("ground") {
        return Err(syntax(no, "expected `ground` line first"));
    }
    GroundSet::new(words)
}

/// Parse `{a b} = v` after a keyword.
fn parse_braced(ground: &GroundSet, no: usize, rest: &str) -> Result<(Subset, Ratio)> {
    let rest = rest.trim_start();
    let inner = rest.strip_prefix('{').ok_or_else(|| syntax(no, "expected `{`"))?;
    let close = inner.find('}').ok_or_else(|| syntax(no, "unclosed brace"))?;
    let mut set = Subset::EMPTY;
    for label in inner[..close].split_whitespace() {
        let i = ground.index_of(label).ok_or_else(|| Error::UnknownElement(label.to_string()))?;
        if set.contains(i) {
            return Err(syntax(no, format!("element {label} listed twice")));
        }
        set = set.with(i);
    }
    let value = parse_value(no, &inner[close + 1..])?;
    Ok((set, value))
}

fn parse_value(no: usize, text: &str) -> Result<Ratio> {
    let text = text.trim_start().strip_prefix('=').ok_or_else(|| syntax(no, "expected `=`"))?.trim();
    parse_ratio(text).ok_or_else(|| syntax(no, format!("bad value {text:?}")))
}

pub fn parse_polymatroid(text: &str) -> Result<SetFunction> {
    let mut lines = content_lines(text);
    let ground = parse_ground(&mut lines)?;
    let mut entries = Vec::new();
    for (no, line) in lines {
        let rest = line.strip_prefix("rank").ok_or_else(|| syntax(no, "expected `rank` line"))?;
        entries.push(parse_braced(&ground, no, rest)?);
    }
    make_set_function(ground, &entries)
}

/// Canonical text: subsets in canonical order, the empty set omitted.
pub fn write_polymatroid(sf: &SetFunction) -> String {
    let g = sf.ground();
    let mut out = format!("ground {}\n", g.labels().join(" "));
    for (s, v) in sf.entries() {
        out.push_str(&format!("rank {} = {v}\n", g.format(s)));
    }
    out
}

pub fn parse_ranked_lattice(text: &str) -> Result<(RankedLattice, Measure)> {
    let mut lines = content_lines(text);
    let ground = parse_ground(&mut lines)?;
    let mut members = Vec::new();
    let mut weights: Vec<Option<Ratio>> = vec![None; ground.len()];
    let mut last = 1;
    for (no, line) in lines {
        last = no;
        if let Some(rest) = line.strip_prefix("member") {
            members.push(parse_braced(&ground, no, rest)?);
        } else if let Some(rest) = line.strip_prefix("measure") {
            let rest = rest.trim_start();
            let label = rest.split(|c: char| c.is_whitespace() || c == '=').next().unwrap_or("");
            let i = ground.index_of(label).ok_or_else(|| Error::UnknownElement(label.to_string()))?;
            let value = parse_value(no, &rest[label.len()..])?;
            if value < Ratio::zero() {
                return Err(syntax(no, format!("negative measure for {label}")));
            }
            if weights[i].replace(value).is_some() {
                return Err(syntax(no, format!("measure for {label} given twice")));
            }
        } else {
            return Err(syntax(no, "expected `member` or `measure` line"));
        }
    }
    let weights = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| syntax(last, format!("no measure for {}", ground.label(i)))))
        .collect::<Result<Vec<_>>>()?;
    let rl = make_ranked_lattice(ground.clone(), members)?;
    Ok((rl, Measure::new(ground, weights)?))
}

pub fn write_ranked_lattice(rl: &RankedLattice, mu: &Measure) -> String {
    let g = rl.ground();
    let mut out = format!("ground {}\n", g.labels().join(" "));
    for (z, r) in rl.entries() {
        out.push_str(&format!("member {} = {r}\n", g.format(z)));
    }
    for (i, w) in mu.weights().iter().enumerate() {
        out.push_str(&format!("measure {} = {w}\n", g.label(i)));
    }
    out
}

/// A subset argument such as `"{a b}"` or `"a b"`.
pub fn parse_subset_arg(ground: &GroundSet, text: &str) -> Result<Subset> {
    let t = text.trim();
    let t = t.strip_prefix('{').map_or(Ok(t), |inner| {
        inner.strip_suffix('}').ok_or_else(|| syntax(0, format!("unclosed brace in {text:?}")))
    })?;
    ground.subset(t.split_whitespace())
}

fn ratio_json(r: Ratio) -> Value {
    Value::String(r.to_string())
}

fn subset_json(g: &GroundSet, s: Subset) -> Value {
    json!(g.element_labels(s))
}

fn subsets_json(g: &GroundSet, ss: &[Subset]) -> Value {
    Value::Array(ss.iter().map(|&s| subset_json(g, s)).collect())
}

fn violation_json(g: &GroundSet, v: Option<Violation>) -> Value {
    v.map_or(Value::Null, |v| json!([subset_json(g, v.first), subset_json(g, v.second)]))
}

fn cut_json(g: &GroundSet, cut: &ModularCut) -> Value {
    json!({
        "members": subsets_json(g, &cut.members),
        "principal": cut.principal,
        "delta": cut.delta.map_or(Value::Null, ratio_json),
        "generators": cut.generators.map_or(Value::Null, |(a, b)| subsets_json(g, &[a, b])),
        "witness_pair": cut.witness_pair.map_or(Value::Null, |(a, b)| subsets_json(g, &[a, b])),
    })
}

fn outcome_json(g: &GroundSet, o: Outcome) -> Value {
    match o {
        Outcome::Pass => json!("pass"),
        Outcome::Fail(w) => {
            let w = match w {
                Witness::Pair(a, b) => subsets_json(g, &[a, b]),
                Witness::Member(z) => subset_json(g, z),
                Witness::Element(i) => json!(g.label(i)),
            };
            json!({ "fail": w })
        }
    }
}

fn embedding_json(g: &GroundSet, e: &EmbeddingReport) -> Value {
    json!({
        "meet_with_base": outcome_json(g, e.meet_with_base),
        "cyclic_flats_present": outcome_json(g, e.cyclic_flats_present),
        "monotone_on_chains": outcome_json(g, e.monotone_on_chains),
        "rank_matches_base": outcome_json(g, e.rank_matches_base),
        "measure_matches_base": outcome_json(g, e.measure_matches_base),
    })
}

/// Outcome of one command. `exit_code` is 0 when the verdict holds and 1
/// when it fails or nothing was found; input errors never produce a report.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub verdict: String,
    pub exit_code: u8,
}

impl Report {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("input_digest".into(), json!(self.input_digest));
        top.insert("result".into(), self.result.clone());
        top.insert("verdict".into(), json!(self.verdict));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json values serialize");
        s.push('\n');
        s
    }
}

#[derive(Parser, Debug)]
#[command(name = "polyconv", version, about = "Exact polymatroid workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtendMode {
    CommonInfo,
    Ingleton,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the polymatroid axioms; exits 1 with a witness pair on failure.
    Validate { model: PathBuf },
    Flats { model: PathBuf },
    /// Cyclic flats with their meets and joins.
    CyclicFlats { model: PathBuf },
    /// The cut generated by two flats, or a search for a non-principal one.
    Cut {
        model: PathBuf,
        #[arg(long = "gen", num_args = 2, value_names = ["F1", "F2"])]
        generators: Option<Vec<String>>,
    },
    /// Convolve a lattice file with its measure.
    Convolve {
        lattice: PathBuf,
        /// Base polymatroid for the embedding conditions.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    Factor {
        model: PathBuf,
        #[arg(long)]
        merge: String,
        /// Label for the merged class.
        #[arg(long)]
        name: Option<String>,
    },
    Contract {
        model: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Factor extension along one merged class.
    FactorExtend {
        model: PathBuf,
        #[arg(long)]
        merge: String,
        #[arg(long)]
        name: Option<String>,
        /// Polymatroid extending the factor.
        #[arg(long)]
        ext: PathBuf,
    },
    ContractExtend {
        model: PathBuf,
        #[arg(long)]
        set: String,
        /// Polymatroid extending the contraction.
        #[arg(long)]
        ext: PathBuf,
    },
    /// Expand an integer polymatroid into a matroid with free blocks.
    Helgason { model: PathBuf },
    /// Common information or Ingleton extension of a non-principal cut.
    Extend {
        model: PathBuf,
        #[arg(long, value_enum)]
        mode: ExtendMode,
        #[arg(long, default_value = "0")]
        epsilon: String,
        #[arg(long = "gen", num_args = 2, value_names = ["F1", "F2"])]
        generators: Option<Vec<String>>,
    },
    /// Build the two extensions that cannot be amalgamated.
    Certify { model: PathBuf },
    /// Search for an integer amalgam of two polymatroids.
    AmalgamSearch {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Evaluate COMM, ING and the ten-term identity.
    IneqCheck {
        model: PathBuf,
        #[arg(long, default_value = "{}")]
        a: String,
        #[arg(long, default_value = "{}")]
        b: String,
        #[arg(long, default_value = "{}")]
        p: String,
        #[arg(long, default_value = "{}")]
        q: String,
        #[arg(long, default_value = "{}")]
        y: String,
        #[arg(long, default_value = "{}")]
        e: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Flats { .. } => "flats",
            Command::CyclicFlats { .. } => "cyclic-flats",
            Command::Cut { .. } => "cut",
            Command::Convolve { .. } => "convolve",
            Command::Factor { .. } => "factor",
            Command::Contract { .. } => "contract",
            Command::FactorExtend { .. } => "factor-extend",
            Command::ContractExtend { .. } => "contract-extend",
            Command::Helgason { .. } => "helgason",
            Command::Extend { .. } => "extend",
            Command::Certify { .. } => "certify",
            Command::AmalgamSearch { .. } => "amalgam-search",
            Command::IneqCheck { .. } => "ineq-check",
        }
    }
}

/// Reads input files and hashes their contents in argument order.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).map_err(|e| Error::Syntax {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        self.hasher.update(&bytes);
        String::from_utf8(bytes).map_err(|_| syntax(0, format!("{} is not UTF-8", path.display())))
    }

    fn set_function(&mut self, path: &Path) -> Result<SetFunction> {
        parse_polymatroid(&self.read(path)?)
    }

    fn polymatroid(&mut self, path: &Path) -> Result<Polymatroid> {
        Polymatroid::new(self.set_function(path)?)
    }
}

fn generators(pm: &Polymatroid, gens: &[String]) -> Result<(Subset, Subset)> {
    Ok((parse_subset_arg(pm.ground(), &gens[0])?, parse_subset_arg(pm.ground(), &gens[1])?))
}

fn verdict(holds: bool, yes: &str, no: &str) -> (String, u8) {
    if holds {
        (yes.into(), 0)
    } else {
        (no.into(), 1)
    }
}

/// Execute one command. Errors are input or precondition failures.
pub fn run(command: &Command) -> Result<Report> {
    let mut inputs = Inputs { hasher: Sha256::new() };
    let (result, (verdict, exit_code)) = dispatch(command, &mut inputs)?;
    Ok(Report {
        command: command.name().into(),
        input_digest: hex::encode(inputs.hasher.finalize()),
        result,
        verdict,
        exit_code,
    })
}

fn dispatch(command: &Command, io: &mut Inputs) -> Result<(Value, (String, u8))> {
    Ok(match command {
        Command::Validate { model } => {
            let sf = io.set_function(model)?;
            let g = sf.ground();
            let rep = validate_polymatroid(&sf);
            let result = json!({
                "ground": g.labels(),
                "is_polymatroid": rep.is_polymatroid,
                "is_matroid": rep.is_matroid,
                "integer_valued": rep.integer_valued,
                "modular": rep.modular,
                "flat_modular": rep.flat_modular,
                "negative": violation_json(g, rep.negative),
                "non_monotone": violation_json(g, rep.non_monotone),
                "non_submodular": violation_json(g, rep.non_submodular),
            });
            (result, verdict(rep.is_polymatroid, "polymatroid", "not-polymatroid"))
        }
        Command::Flats { model } => {
            let pm = io.polymatroid(model)?;
            let fl = flats(&pm);
            let result = json!({ "count": fl.len(), "flats": subsets_json(pm.ground(), fl.members()) });
            (result, verdict(true, "ok", ""))
        }
        Command::CyclicFlats { model } => {
            let pm = io.polymatroid(model)?;
            let g = pm.ground();
            let lat = cyclic_lattice(&pm);
            let mut pairs = Vec::new();
            for i in 0..lat.len() {
                for j in i + 1..lat.len() {
                    let m = lat.members();
                    pairs.push(json!({
                        "pair": subsets_json(g, &[m[i], m[j]]),
                        "meet": subset_json(g, m[lat.meet_index(i, j)]),
                        "join": subset_json(g, m[lat.join_index(i, j)]),
                    }));
                }
            }
            let result = json!({ "cyclic_flats": subsets_json(g, lat.members()), "operations": pairs });
            (result, verdict(true, "ok", ""))
        }
        Command::Cut { model, generators: gens } => {
            let pm = io.polymatroid(model)?;
            let g = pm.ground();
            match gens {
                Some(gens) => {
                    let (a, b) = generators(&pm, gens)?;
                    let cut = generate_cut(&pm, a, b)?;
                    let result = json!({ "cut": cut_json(g, &cut) });
                    (result, verdict(!cut.principal, "non-principal", "principal"))
                }
                None => match find_nonprincipal_cut(&pm) {
                    Some(found) => (json!({ "cut": cut_json(g, &found.cut) }), verdict(true, "non-principal", "")),
                    None => (json!({ "cut": Value::Null }), verdict(false, "", "absent")),
                },
            }
        }
        Command::Convolve { lattice, base } => {
            let (rl, mu) = parse_ranked_lattice(&io.read(lattice)?)?;
            let base = base.as_deref().map(|p| io.polymatroid(p)).transpose()?;
            let cond = check_conditions(&rl, &mu, base.as_ref())?;
            let conv = convolve(&rl, &mu)?;
            let g = rl.ground();
            let rep = validate_polymatroid(&conv.value);
            let mut result = json!({
                "members": rl.len(),
                "incomparable_condition": outcome_json(g, cond.incomparable),
                "chain_condition": outcome_json(g, cond.chain),
                "embedding": cond.embedding.as_ref().map_or(Value::Null, |e| embedding_json(g, e)),
                "empty_minimum": ratio_json(conv.empty_raw),
                "is_polymatroid": rep.is_polymatroid,
                "model": write_polymatroid(&conv.value),
            });
            if let Some(b) = &base {
                result["extends_base"] = json!(conv.value.extends(b));
            }
            (result, verdict(rep.is_polymatroid, "polymatroid", "not-polymatroid"))
        }
        Command::Factor { model, merge, name } => {
            let pm = io.polymatroid(model)?;
            let part = Partition::merging(pm.ground().clone(), parse_subset_arg(pm.ground(), merge)?, name.as_deref())?;
            let fac = factor(&pm, &part)?;
            (json!({ "model": write_polymatroid(&fac) }), verdict(true, "ok", ""))
        }
        Command::Contract { model, set } => {
            let pm = io.polymatroid(model)?;
            let con = contract(&pm, parse_subset_arg(pm.ground(), set)?)?;
            (json!({ "model": write_polymatroid(&con) }), verdict(true, "ok", ""))
        }
        Command::FactorExtend { model, merge, name, ext } => {
            let pm = io.polymatroid(model)?;
            let gp = io.polymatroid(ext)?;
            let part = Partition::merging(pm.ground().clone(), parse_subset_arg(pm.ground(), merge)?, name.as_deref())?;
            let g = factor_extension(&pm, &part, &gp)?;
            (json!({ "model": write_polymatroid(&g) }), verdict(true, "ok", ""))
        }
        Command::ContractExtend { model, set, ext } => {
            let pm = io.polymatroid(model)?;
            let gp = io.polymatroid(ext)?;
            let g = contract_extension(&pm, parse_subset_arg(pm.ground(), set)?, &gp)?;
            (json!({ "model": write_polymatroid(&g) }), verdict(true, "ok", ""))
        }
        Command::Helgason { model } => {
            let pm = io.polymatroid(model)?;
            let m = helgason_expand_free(&pm)?;
            let result = json!({ "is_matroid": m.is_matroid(), "model": write_polymatroid(&m) });
            (result, verdict(true, "matroid", ""))
        }
        Command::Extend { model, mode, epsilon, generators: gens } => {
            let pm = io.polymatroid(model)?;
            let g = pm.ground();
            let eps = parse_ratio(epsilon).ok_or_else(|| syntax(0, format!("bad epsilon {epsilon:?}")))?;
            let cut = match gens {
                Some(gens) => {
                    let (a, b) = generators(&pm, gens)?;
                    generate_cut(&pm, a, b)?
                }
                None => match find_nonprincipal_cut(&pm) {
                    Some(found) => found.cut,
                    None => return Ok((json!({ "cut": Value::Null }), verdict(false, "", "absent"))),
                },
            };
            let (ext, eps) = match mode {
                ExtendMode::CommonInfo => (common_info_extension(&pm, &cut, eps)?, eps),
                ExtendMode::Ingleton => (ingleton_extension(&pm, &cut)?, ingleton_epsilon(&pm, &cut)?),
            };
            let result = json!({
                "cut": cut_json(g, &cut),
                "epsilon": ratio_json(eps),
                "new_labels": &ext.ground().labels()[g.len()..],
                "model": write_polymatroid(&ext),
            });
            (result, verdict(true, "extended", ""))
        }
        Command::Certify { model } => {
            let pm = io.polymatroid(model)?;
            let g = pm.ground();
            let cert = certify_nonsticky(&pm)?;
            cert.verify()?;
            let result = match &cert.witness {
                None => json!({ "witness": Value::Null }),
                Some(w) => json!({
                    "generators": subsets_json(g, &[w.generators.0, w.generators.1]),
                    "intersection": subset_json(g, w.intersection),
                    "delta": ratio_json(w.delta),
                    "cut": cut_json(g, &w.cut),
                    "comm": ratio_json(w.comm_value),
                    "ing": ratio_json(w.ing_value),
                    "common_info_label": w.common_label,
                    "common_info": write_polymatroid(&w.common_info),
                    "ingleton_labels": [w.ingleton_labels.0, w.ingleton_labels.1],
                    "ingleton_epsilon": ratio_json(w.ingleton_epsilon),
                    "ingleton_branch": match w.branch {
                        IngletonBranch::Measure => "measure",
                        IngletonBranch::Top => "top",
                    },
                    "ingleton": write_polymatroid(&w.ingleton),
                }),
            };
            (result, verdict(cert.verdict == Verdict::NotSticky, "NotSticky", "NoWitness"))
        }
        Command::AmalgamSearch { first, second, bound } => {
            let f1 = io.polymatroid(first)?;
            let f2 = io.polymatroid(second)?;
            let found = amalgam_search_integer(&f1, &f2, *bound)?;
            let result = json!({
                "bound": bound.map_or(Value::Null, |b| json!(b)),
                "model": found.as_ref().map_or(Value::Null, |m| json!(write_polymatroid(m))),
            });
            (result, verdict(found.is_some(), "found", "absent"))
        }
        Command::IneqCheck { model, a, b, p, q, y, e } => {
            let sf = io.set_function(model)?;
            let g = sf.ground().clone();
            let arg = |t: &String| parse_subset_arg(&g, t);
            let (a, b, p, q, y, e) = (arg(a)?, arg(b)?, arg(p)?, arg(q)?, arg(y)?, arg(e)?);
            let check = ten_term_check(&sf, a, b, p, q, y, e);
            let is_pm = validate_polymatroid(&sf).is_polymatroid;
            let combined_ok = !is_pm || check.lhs >= Ratio::zero();
            let result = json!({
                "comm": ratio_json(comm_value(&sf, a, b, y, e)),
                "ing": ratio_json(ing_value(&sf, a, b, p, q, e)),
                "lhs": ratio_json(check.lhs),
                "rhs": ratio_json(check.rhs),
                "terms": ten_terms(&sf, a, b, p, q, y, e).iter().map(|&t| ratio_json(t)).collect::<Vec<_>>(),
                "identity_holds": check.equal,
                "is_polymatroid": is_pm,
            });
            (result, verdict(check.equal && combined_ok, "holds", "fails"))
        }
    })
}

/// Parse arguments, run, print or write the report, and map the outcome to
/// an exit code (2 for input errors).
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code)
}
