//! Command-line front end. Every command reads JSON, writes one canonical JSON
//! document and returns an exit code: 0 success, 2 invalid input or witness,
//! 3 search budget exhausted, 4 violated hypothesis.

pub mod json;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::construct::{metabolic_basis, ru_wall_witness, stable_lagrangian_iso, wall_target};
use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::group::GroupHom;
use crate::int::Int;
use crate::lmonoid::{bar_reduce, jacobi_witness, l_group_trivialize, splitting_iso, zero_formation, MoveSummary, QuasiFormation};
use crate::oracle::{self, SearchBudget, SearchOutcome};
use crate::stableclass::{self, SIReport};
use crate::surjection::MatchMode;
use json::{field, to_value, DocKind, FormDoc, IsoDoc, JsonInt, QfDoc, SequenceDoc, StableIsoDoc, SubgroupDoc, WallDoc, WordDoc};

pub const NODE_LIMIT_VAR: &str = "QFORM_NODE_LIMIT";

#[derive(Parser, Debug)]
#[command(name = "qform", version, about = "Extended quadratic forms, lagrangians and quasi-formations")]
struct Cli {
    /// JSON input document.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest absolute matrix entry tried by searches.
    #[arg(long, global = true)]
    entry_bound: Option<u64>,
    /// Most hyperbolic planes added by stable searches.
    #[arg(long, global = true)]
    max_stab: Option<usize>,
    /// Search nodes before giving up; defaults to $QFORM_NODE_LIMIT.
    #[arg(long, global = true)]
    node_limit: Option<u64>,
    /// Forbid stabilization where a construction allows it.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check any document, re-verifying every embedded witness.
    Validate,
    /// Freeness, nonsingularity, evenness, fullness and geometricity of a form.
    Invariants,
    /// Orthogonal complement of a subgroup.
    Perp,
    /// Isotropy and lagrangian tests for a subgroup.
    Classify,
    /// Adapted basis `e, f` of a metabolic form.
    MetabolicBasis,
    /// Stable isomorphism of two metabolic forms matching their lagrangians.
    StableIso,
    /// Word in the lagrangian-preserving group for `Φ ⊕ Φ^{-1} ⊕ id`.
    RuWall,
    /// The zero quasi-formation over a target group.
    ZeroForm,
    /// Free reduction of a quasi-formation and the splitting isomorphism.
    Bar,
    /// Elementary and invertibility tests.
    Elementary,
    /// Decomposition of an invertible quasi-formation with its move sequence.
    Ltriv,
    /// Move sequence from `(M; K, L) ⊕ (M; L, V)` to `(M; K, V)`.
    Jacobi,
    /// Restriction to the complement of `Ker μ`.
    Kappa(PairArgs),
    /// Classes stably isomorphic to `E_{a,b}` or to a given rank-2 form.
    Si(PairArgs),
    /// Stable class counts.
    StableClass {
        #[arg(long)]
        rkq: usize,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Lagrangians with entries within the bound.
    OracleLagrangians,
    /// Isomorphism search between two forms or quasi-formations.
    OracleIso,
    /// `SI(E_{a,b})` by brute force.
    OracleSi(PairArgs),
    /// Canonical re-encoding of a document.
    Roundtrip,
}

/// Exit code and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Runs the command line, printing the result or writing it to `--output`.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (outcome, target) = execute_with_target(args);
    match target {
        Some(path) if outcome.code == 0 => {
            if let Err(e) = std::fs::write(&path, &outcome.output) {
                let o = error_outcome(&Error::Parse { path: path.display().to_string(), message: e.to_string() });
                print!("{}", o.output);
                return o.code;
            }
        }
        _ => print!("{}", outcome.output),
    }
    outcome.code
}

/// Runs the command line and returns the output instead of printing it.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    execute_with_target(args).0
}

fn execute_with_target<I, T>(args: I) -> (Outcome, Option<PathBuf>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                return (Outcome { code: 0, output: e.to_string() }, None);
            }
            let o = Outcome { code: 2, output: json::render(&json!({"error": e.kind().to_string(), "exit_code": 2, "message": e.to_string().trim()})) };
            return (o, None);
        }
    };
    let target = cli.output.clone();
    let outcome = match dispatch(&cli) {
        Ok(v) => Outcome { code: 0, output: json::render(&v) },
        Err(e) => error_outcome(&e),
    };
    (outcome, target)
}

fn error_outcome(e: &Error) -> Outcome {
    let code = e.exit_code();
    let mut m = Map::new();
    m.insert("error".into(), Value::String(e.to_string()));
    m.insert("exit_code".into(), json!(code));
    if let Error::Parse { path, .. } = e {
        m.insert("path".into(), Value::String(path.clone()));
    }
    Outcome { code, output: json::render(&Value::Object(m)) }
}

impl Cli {
    fn budget(&self) -> Result<SearchBudget> {
        let mut b = SearchBudget::default();
        if let Some(x) = self.entry_bound {
            b.entry_bound = x;
        }
        if let Some(x) = self.max_stab {
            b.max_stab = x;
        }
        b.node_limit = match self.node_limit {
            Some(x) => x,
            None => match std::env::var(NODE_LIMIT_VAR) {
                Ok(s) => s.trim().parse().map_err(|_| Error::Parse { path: NODE_LIMIT_VAR.into(), message: format!("{s:?} is not a node count") })?,
                Err(_) => b.node_limit,
            },
        };
        Ok(b)
    }

    fn input(&self) -> Result<Value> {
        let path = self.input.as_ref().ok_or_else(|| Error::Parse { path: "--input".into(), message: "this command reads a JSON document".into() })?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse { path: path.display().to_string(), message: e.to_string() })?;
        json::parse_text(&text)
    }
}

fn parse_int(s: &Option<String>, name: &str) -> Result<Int> {
    let s = s.as_ref().ok_or_else(|| Error::Parse { path: format!("--{name}"), message: "missing value".into() })?;
    s.trim().parse().map_err(|_| Error::Parse { path: format!("--{name}"), message: format!("{s:?} is not an integer") })
}

fn pair(p: &PairArgs) -> Result<Option<(Int, Int)>> {
    match (&p.a, &p.b) {
        (None, None) => Ok(None),
        _ => Ok(Some((parse_int(&p.a, "a")?, parse_int(&p.b, "b")?))),
    }
}

fn int_value(x: &Int) -> Value {
    to_value(&JsonInt(x.clone()))
}

fn summary_value(s: &MoveSummary) -> Value {
    to_value(s)
}

fn dispatch(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Validate => validate(&cli.input()?),
        Command::Roundtrip => json::canonicalize(&cli.input()?, ""),
        Command::Invariants => {
            let f = json::decode_form(&cli.input()?, "")?;
            let mut v = to_value(&f.report());
            v["rank"] = json!(f.rank());
            Ok(v)
        }
        Command::Perp => {
            let doc = cli.input()?;
            let f = json::decode_form(field(&doc, "form")?, "form")?;
            let s = json::decode_subgroup(field(&doc, "subgroup")?, f.group(), "subgroup")?;
            Ok(json!({"perp": to_value(&SubgroupDoc::new(&f.perp(&s)?))}))
        }
        Command::Classify => {
            let doc = cli.input()?;
            let f = json::decode_form(field(&doc, "form")?, "form")?;
            let s = json::decode_subgroup(field(&doc, "subgroup")?, f.group(), "subgroup")?;
            Ok(to_value(&f.classify(&s)?))
        }
        Command::MetabolicBasis => {
            let doc = cli.input()?;
            let f = json::decode_form(field(&doc, "form")?, "form")?;
            let l = json::decode_subgroup(field(&doc, "L")?, f.group(), "L")?;
            let b = metabolic_basis(&f, &l)?;
            let normal = f.pullback(&GroupHom::new(f.group().clone(), f.group().clone(), b.change.clone())?)?;
            let iso = FormIso::new(&normal, &f, b.change.clone())?;
            let vecs = |xs: &[Vec<Int>]| xs.iter().map(|x| x.iter().map(int_value).collect::<Vec<_>>()).collect::<Vec<_>>();
            Ok(json!({
                "d": b.d.iter().map(int_value).collect::<Vec<_>>(),
                "e": vecs(&b.e),
                "f": vecs(&b.f),
                "witness": to_value(&IsoDoc::new(&iso)),
            }))
        }
        Command::StableIso => {
            let doc = cli.input()?;
            let read = |key: &str| -> Result<(EQForm, crate::subgroup::SubgroupRep)> {
                let side = field(&doc, key)?;
                let f = json::decode_form(field(side, "form").map_err(|_| missing(key, "form"))?, &format!("{key}.form"))?;
                let l = json::decode_subgroup(field(side, "L").map_err(|_| missing(key, "L"))?, f.group(), &format!("{key}.L"))?;
                Ok((f, l))
            };
            let (f1, l1) = read("source")?;
            let (f2, l2) = read("target")?;
            let mode = if cli.strict { MatchMode::Strict } else { MatchMode::Stable };
            let s = stable_lagrangian_iso(&f1, &l1, &f2, &l2, mode)?;
            s.verify()?;
            let w = StableIsoDoc {
                iso: IsoDoc::new(&s.iso),
                source_lagrangian: SubgroupDoc::new(&s.source_lagrangian),
                target_lagrangian: SubgroupDoc::new(&s.target_lagrangian),
            };
            Ok(json!({"k": s.k, "l": s.l, "witness": to_value(&w)}))
        }
        Command::RuWall => {
            let doc = cli.input()?;
            let f = json::decode_form(field(&doc, "form")?, "form")?;
            let l = json::decode_subgroup(field(&doc, "L")?, f.group(), "L")?;
            let m = json::decode_matrix(field(&doc, "phi")?, f.dim(), "phi")?;
            let phi = FormIso::new(&f, &f, m).map_err(|e| Error::Parse { path: "phi".into(), message: e.to_string() })?;
            let word = ru_wall_witness(&f, &l, &phi)?;
            let eval = word.evaluate()?;
            let expected = wall_target(&f, &phi)?;
            if eval.matrix() != expected.matrix() {
                return Err(Error::InvalidWitness("word does not evaluate to the wall automorphism".into()));
            }
            Ok(json!({
                "length": word.generators.len(),
                "evaluation": to_value(&json::matrix_doc(eval.matrix())),
                "witness": to_value(&WallDoc { word: WordDoc::new(&word), phi: IsoDoc::new(&phi) }),
            }))
        }
        Command::ZeroForm => {
            let doc = cli.input()?;
            let t = json::decode_group(field(&doc, "target")?, "target")?;
            let v: Vec<u8> = match doc.get("v") {
                Some(x) => json::typed(x, "v")?,
                None => vec![0; t.dim()],
            };
            Ok(json!({"formation": to_value(&QfDoc::new(&zero_formation(&t, &v)?))}))
        }
        Command::Bar => {
            let q = json::decode_qf(&cli.input()?, "")?;
            let reduced = bar_reduce(&q)?;
            let iso = splitting_iso(&q)?;
            Ok(json!({"reduced": to_value(&QfDoc::new(&reduced)), "torsion": to_value(&json::GroupDoc::new(&q.form().group().torsion_only())), "witness": to_value(&IsoDoc::new(&iso))}))
        }
        Command::Elementary => {
            let q = json::decode_qf(&cli.input()?, "")?;
            let stabilized = q.direct_sum(&QuasiFormation::standard_hyperbolic(1, q.form().target()))?;
            Ok(json!({
                "admissible": q.is_admissible()?,
                "elementary": q.is_elementary()?,
                "l_element": q.is_l_element()?,
                "stabilized_elementary": stabilized.is_elementary()?,
            }))
        }
        Command::Ltriv => {
            let q = json::decode_qf(&cli.input()?, "")?;
            let d = l_group_trivialize(&q)?;
            Ok(json!({
                "common": to_value(&SubgroupDoc::new(&d.common)),
                "complement": to_value(&SubgroupDoc::new(&d.complement)),
                "core": to_value(&SubgroupDoc::new(&d.core)),
                "hyperbolic": to_value(&SubgroupDoc::new(&d.hyperbolic)),
                "core_part": to_value(&QfDoc::new(&d.core_part)),
                "hyperbolic_part": to_value(&QfDoc::new(&d.hyperbolic_part)),
                "summary": summary_value(&d.sequence.summary()),
                "witness": {
                    "hyperbolic_witness": to_value(&IsoDoc::new(&d.hyperbolic_witness)),
                    "sequence": to_value(&SequenceDoc::new(&d.sequence)),
                },
            }))
        }
        Command::Jacobi => {
            let doc = cli.input()?;
            let f = json::decode_form(field(&doc, "form")?, "form")?;
            let k = json::decode_subgroup(field(&doc, "K")?, f.group(), "K")?;
            let l = json::decode_subgroup(field(&doc, "L")?, f.group(), "L")?;
            let v = json::decode_subgroup(field(&doc, "V")?, f.group(), "V")?;
            let w = jacobi_witness(&f, &k, &l, &v)?;
            Ok(json!({
                "stabilization": w.stabilization,
                "summary": summary_value(&w.sequence.summary()),
                "witness": {
                    "phi": to_value(&IsoDoc::new(&w.phi)),
                    "sequence": to_value(&SequenceDoc::new(&w.sequence)),
                },
            }))
        }
        Command::Kappa(p) => {
            if let Some((a, b)) = pair(p)? {
                let direct = stableclass::kappa(&stableclass::e_ab(&a, &b))?.0;
                let formula = stableclass::kappa_ab(&a, &b);
                let iso = stableclass::rank_one_iso(&direct, &formula).ok_or_else(|| Error::InvalidWitness("formula disagrees with the direct computation".into()))?;
                Ok(json!({"kappa": to_value(&FormDoc::new(&formula)), "witness": to_value(&IsoDoc::new(&iso))}))
            } else {
                let f = json::decode_form(&cli.input()?, "")?;
                let (k, inc) = stableclass::kappa(&f)?;
                Ok(json!({"inclusion": to_value(&json::matrix_doc(inc.matrix())), "kappa": to_value(&FormDoc::new(&k))}))
            }
        }
        Command::Si(p) => {
            if let Some((a, b)) = pair(p)? {
                Ok(si_value(&stableclass::si_enumerate(&a, &b)))
            } else {
                let f = json::decode_form(&cli.input()?, "")?;
                let r = stableclass::si_hyp(&f)?;
                let mut v = si_value(&r);
                v["representatives"] = Value::Array(r.representatives.iter().map(|e| to_value(&FormDoc::new(e))).collect());
                Ok(v)
            }
        }
        Command::StableClass { rkq, pair: p } => {
            let (a, b) = pair(p)?.unwrap_or_else(|| (Int::from(1), Int::from(0)));
            let c = stableclass::stable_class_report(*rkq, &a, &b)?;
            Ok(json!({"Sst": c.total, "Sst_f": c.with_smoothing}))
        }
        Command::OracleLagrangians => {
            let f = json::decode_form(&cli.input()?, "")?;
            let ls = oracle::enumerate_lagrangians(&f, &cli.budget()?)?;
            Ok(json!({"count": ls.len(), "lagrangians": ls.iter().map(|s| to_value(&SubgroupDoc::new(s))).collect::<Vec<_>>()}))
        }
        Command::OracleIso => oracle_iso(cli),
        Command::OracleSi(p) => {
            let (a, b) = pair(p)?.ok_or_else(|| Error::Parse { path: "--a".into(), message: "missing value".into() })?;
            Ok(si_value(&oracle::brute_si(&a, &b)))
        }
    }
}

fn missing(side: &str, key: &str) -> Error {
    Error::Parse { path: format!("{side}.{key}"), message: "missing field".into() }
}

fn si_value(r: &SIReport) -> Value {
    json!({
        "size": r.size,
        "reps": r.pairs.iter().map(|(c, d)| vec![int_value(c), int_value(d)]).collect::<Vec<_>>(),
    })
}

fn oracle_iso(cli: &Cli) -> Result<Value> {
    let doc = cli.input()?;
    let budget = cli.budget()?;
    let src = field(&doc, "source")?;
    let tgt = field(&doc, "target")?;
    let stable = |o: SearchOutcome<oracle::StableWitness>| -> Value {
        let label = o.label();
        match o {
            SearchOutcome::Found(w) => json!({"k": w.k, "l": w.l, "result": label, "witness": to_value(&IsoDoc::new(&w.iso))}),
            _ => json!({"result": label}),
        }
    };
    if DocKind::detect(src) == Some(DocKind::QuasiFormation) {
        let q1 = json::decode_qf(src, "source")?;
        let q2 = json::decode_qf(tgt, "target")?;
        return Ok(stable(oracle::search_stable_isomorphism(&q1, &q2, &budget)?));
    }
    let f1 = json::decode_form(src, "source")?;
    let f2 = json::decode_form(tgt, "target")?;
    if cli.max_stab.is_some() {
        return Ok(stable(oracle::search_stable_form_isomorphism(&f1, &f2, &budget)?));
    }
    let o = oracle::search_isomorphism(&f1, &f2, &budget)?;
    let label = o.label();
    Ok(match o {
        SearchOutcome::Found(iso) => json!({"result": label, "witness": to_value(&IsoDoc::new(&iso))}),
        _ => json!({"result": label}),
    })
}

/// Validates every recognized document inside `value`.
fn validate(value: &Value) -> Result<Value> {
    let mut checked = Vec::new();
    walk(value, "", &mut checked)?;
    if checked.is_empty() {
        return Err(Error::Parse { path: ".".into(), message: "no recognizable document".into() });
    }
    Ok(json!({"documents": checked, "valid": true}))
}

fn walk(value: &Value, path: &str, out: &mut Vec<Value>) -> Result<()> {
    if let Some(kind) = DocKind::detect(value) {
        let mut report = check(kind, value, path)?;
        report["kind"] = json!(kind.name());
        report["path"] = json!(if path.is_empty() { "." } else { path });
        out.push(report);
        return Ok(());
    }
    match value {
        Value::Object(obj) => {
            for (k, v) in obj {
                walk(v, &if path.is_empty() { k.clone() } else { format!("{path}.{k}") }, out)?;
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                walk(x, &format!("{path}[{i}]"), out)?;
            }
        }
        _ => {}
    }
    Ok(())
}

fn check(kind: DocKind, value: &Value, path: &str) -> Result<Value> {
    Ok(match kind {
        DocKind::Form => {
            let f = json::decode_form(value, path)?;
            let mut r = to_value(&f.report());
            r["rank"] = json!(f.rank());
            r
        }
        DocKind::QuasiFormation => {
            let q = json::decode_qf(value, path)?;
            json!({"elementary": q.is_elementary()?, "l_element": q.is_l_element()?})
        }
        DocKind::FormIso => {
            json::typed::<IsoDoc>(value, path)?.decode(path)?;
            json!({})
        }
        DocKind::Sequence => {
            let s = json::typed::<SequenceDoc>(value, path)?.decode(path)?;
            s.replay()?;
            json!({"moves": s.moves.len(), "summary": summary_value(&s.summary())})
        }
        DocKind::Word => {
            let w = json::typed::<WordDoc>(value, path)?.decode(path)?;
            w.validate()?;
            json!({"length": w.generators.len()})
        }
        DocKind::StableIso => {
            let d = json::typed::<StableIsoDoc>(value, path)?;
            let iso = d.iso.decode(&format!("{path}.iso"))?;
            let ls = d.source_lagrangian.decode(iso.source().group(), &format!("{path}.source_lagrangian"))?;
            let lt = d.target_lagrangian.decode(iso.target().group(), &format!("{path}.target_lagrangian"))?;
            if !iso.source().is_free_lagrangian(&ls)? || !iso.target().is_free_lagrangian(&lt)? {
                return Err(Error::InvalidWitness(format!("{path}: subgroups are not free lagrangians")));
            }
            if iso.apply_subgroup(&ls)? != lt {
                return Err(Error::InvalidWitness(format!("{path}: isomorphism does not match the lagrangians")));
            }
            json!({})
        }
        DocKind::Wall => {
            let d = json::typed::<WallDoc>(value, path)?;
            let w = d.word.decode(&format!("{path}.word"))?;
            let phi = d.phi.decode(&format!("{path}.phi"))?;
            w.validate()?;
            let expected = wall_target(phi.source(), &phi)?;
            let eval = w.evaluate()?;
            if eval.matrix() != expected.matrix() || w.form != *expected.source() {
                return Err(Error::InvalidWitness(format!("{path}: word does not evaluate to the wall automorphism")));
            }
            json!({"length": w.generators.len()})
        }
    })
}
