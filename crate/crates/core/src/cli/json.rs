//! JSON documents for the domain objects.
//!
//! Keys are sorted and output is compact with a trailing newline. Integers whose
//! magnitude exceeds `2^53 - 1` are written as decimal strings; either form is
//! accepted on input.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::construct::{RUGenerator, RUWord};
use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::group::AbGroup;
use crate::int::Int;
use crate::lmonoid::{Move, MoveSequence, QuasiFormation};
use crate::matrix::IntMatrix;
use crate::subgroup::SubgroupRep;

const SAFE: i64 = (1i64 << 53) - 1;

/// Integer that survives lossy JSON readers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match crate::int::to_i64(&self.0) {
            Some(x) if (-SAFE..=SAFE).contains(&x) => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Int::from(x)))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Int::from(x)))
            }
            fn visit_f64<E: de::Error>(self, x: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!("{x} is not an integer; large integers must be strings")))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<JsonInt, E> {
                s.parse::<Int>().map(JsonInt).map_err(|_| E::custom(format!("{s:?} is not a decimal integer")))
            }
        }
        d.deserialize_any(V)
    }
}

fn ints(xs: &[Int]) -> Vec<JsonInt> {
    xs.iter().cloned().map(JsonInt).collect()
}

fn unwrap_ints(xs: &[JsonInt]) -> Vec<Int> {
    xs.iter().map(|x| x.0.clone()).collect()
}

pub type Rows = Vec<Vec<JsonInt>>;

pub fn matrix_doc(m: &IntMatrix) -> Rows {
    m.row_vecs().iter().map(|r| ints(r)).collect()
}

fn matrix_from(rows: &Rows, cols: usize, path: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<Int>> = rows.iter().map(|r| unwrap_ints(r)).collect();
    IntMatrix::from_rows(&rows, cols).map_err(|e| at(path, e))
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse { path: path.to_string(), message: other.to_string() },
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub free_rank: usize,
    pub torsion: Vec<JsonInt>,
}

impl GroupDoc {
    pub fn new(g: &AbGroup) -> Self {
        GroupDoc { free_rank: g.free_rank(), torsion: ints(g.torsion()) }
    }

    pub fn decode(&self, path: &str) -> Result<AbGroup> {
        AbGroup::new(self.free_rank, unwrap_ints(&self.torsion)).map_err(|e| at(&join(path, "torsion"), e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub group: GroupDoc,
    pub lambda: Rows,
    pub target: GroupDoc,
    pub mu: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<u8>>,
}

impl FormDoc {
    pub fn new(f: &EQForm) -> Self {
        FormDoc {
            group: GroupDoc::new(f.group()),
            lambda: matrix_doc(f.lambda()),
            target: GroupDoc::new(f.target()),
            mu: matrix_doc(f.mu().matrix()),
            v: f.v().map(<[u8]>::to_vec),
        }
    }

    pub fn decode(&self, path: &str) -> Result<EQForm> {
        let g = self.group.decode(&join(path, "group"))?;
        let t = self.target.decode(&join(path, "target"))?;
        let lambda = matrix_from(&self.lambda, g.dim(), &join(path, "lambda"))?;
        if lambda.rows() != g.dim() {
            return Err(at(&join(path, "lambda"), Error::Dimension(format!("expected {} rows", g.dim()))));
        }
        let mu = matrix_from(&self.mu, g.dim(), &join(path, "mu"))?;
        if mu.rows() != t.dim() {
            return Err(at(&join(path, "mu"), Error::Dimension(format!("expected {} rows", t.dim()))));
        }
        EQForm::from_parts(g, lambda, t, mu, self.v.clone()).map_err(|e| at(path, e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDoc {
    pub generators: Rows,
}

impl SubgroupDoc {
    pub fn new(s: &SubgroupRep) -> Self {
        SubgroupDoc { generators: s.generators().iter().map(|g| ints(g)).collect() }
    }

    pub fn decode(&self, ambient: &AbGroup, path: &str) -> Result<SubgroupRep> {
        let gens: Vec<Vec<Int>> = self.generators.iter().map(|g| unwrap_ints(g)).collect();
        for (i, g) in gens.iter().enumerate() {
            if g.len() != ambient.dim() {
                return Err(at(&format!("{}[{i}]", join(path, "generators")), Error::Dimension(format!("expected {} entries", ambient.dim()))));
            }
        }
        SubgroupRep::new(ambient, &gens).map_err(|e| at(path, e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QfDoc {
    pub form: FormDoc,
    #[serde(rename = "L")]
    pub lagrangian: SubgroupDoc,
    #[serde(rename = "V")]
    pub summand: SubgroupDoc,
}

impl QfDoc {
    pub fn new(q: &QuasiFormation) -> Self {
        QfDoc { form: FormDoc::new(q.form()), lagrangian: SubgroupDoc::new(q.lagrangian()), summand: SubgroupDoc::new(q.summand()) }
    }

    pub fn decode(&self, path: &str) -> Result<QuasiFormation> {
        let f = self.form.decode(&join(path, "form"))?;
        let l = self.lagrangian.decode(f.group(), &join(path, "L"))?;
        let v = self.summand.decode(f.group(), &join(path, "V"))?;
        QuasiFormation::new(f, l, v).map_err(|e| at(path, e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoDoc {
    pub source: FormDoc,
    pub target: FormDoc,
    pub matrix: Rows,
}

impl IsoDoc {
    pub fn new(h: &FormIso) -> Self {
        IsoDoc { source: FormDoc::new(h.source()), target: FormDoc::new(h.target()), matrix: matrix_doc(h.matrix()) }
    }

    pub fn decode(&self, path: &str) -> Result<FormIso> {
        let s = self.source.decode(&join(path, "source"))?;
        let t = self.target.decode(&join(path, "target"))?;
        let m = matrix_from(&self.matrix, s.dim(), &join(path, "matrix"))?;
        FormIso::new(&s, &t, m).map_err(|e| at(path, e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MoveDoc {
    Stab,
    Destab { iso: IsoDoc, rest: QfDoc },
    Flip { iso: IsoDoc, rest: FormDoc, inner: SubgroupDoc },
    Iso { iso: IsoDoc },
}

impl MoveDoc {
    pub fn new(m: &Move) -> Self {
        match m {
            Move::Stab => MoveDoc::Stab,
            Move::Destab { iso, rest } => MoveDoc::Destab { iso: IsoDoc::new(iso), rest: QfDoc::new(rest) },
            Move::FlipL { iso, rest, inner } => MoveDoc::Flip { iso: IsoDoc::new(iso), rest: FormDoc::new(rest), inner: SubgroupDoc::new(inner) },
            Move::ApplyIso(iso) => MoveDoc::Iso { iso: IsoDoc::new(iso) },
        }
    }

    pub fn decode(&self, path: &str) -> Result<Move> {
        Ok(match self {
            MoveDoc::Stab => Move::Stab,
            MoveDoc::Destab { iso, rest } => Move::Destab { iso: iso.decode(&join(path, "iso"))?, rest: rest.decode(&join(path, "rest"))? },
            MoveDoc::Flip { iso, rest, inner } => {
                let rest = rest.decode(&join(path, "rest"))?;
                let inner = inner.decode(rest.group(), &join(path, "inner"))?;
                Move::FlipL { iso: iso.decode(&join(path, "iso"))?, rest, inner }
            }
            MoveDoc::Iso { iso } => Move::ApplyIso(iso.decode(&join(path, "iso"))?),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub start: QfDoc,
    pub end: QfDoc,
    pub moves: Vec<MoveDoc>,
}

impl SequenceDoc {
    pub fn new(s: &MoveSequence) -> Self {
        SequenceDoc { start: QfDoc::new(&s.start), end: QfDoc::new(&s.end), moves: s.moves.iter().map(MoveDoc::new).collect() }
    }

    pub fn decode(&self, path: &str) -> Result<MoveSequence> {
        let moves = self.moves.iter().enumerate().map(|(i, m)| m.decode(&format!("{}[{i}]", join(path, "moves")))).collect::<Result<_>>()?;
        Ok(MoveSequence::new(self.start.decode(&join(path, "start"))?, self.end.decode(&join(path, "end"))?, moves))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorDoc {
    Keep { iso: IsoDoc },
    Flip { iso: IsoDoc, rest: FormDoc, inner: SubgroupDoc },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    pub form: FormDoc,
    pub lagrangian: SubgroupDoc,
    pub generators: Vec<GeneratorDoc>,
}

impl WordDoc {
    pub fn new(w: &RUWord) -> Self {
        let generators = w
            .generators
            .iter()
            .map(|g| match g {
                RUGenerator::Keep(iso) => GeneratorDoc::Keep { iso: IsoDoc::new(iso) },
                RUGenerator::Flip { iso, rest, inner } => GeneratorDoc::Flip { iso: IsoDoc::new(iso), rest: FormDoc::new(rest), inner: SubgroupDoc::new(inner) },
            })
            .collect();
        WordDoc { form: FormDoc::new(&w.form), lagrangian: SubgroupDoc::new(&w.lagrangian), generators }
    }

    pub fn decode(&self, path: &str) -> Result<RUWord> {
        let form = self.form.decode(&join(path, "form"))?;
        let lagrangian = self.lagrangian.decode(form.group(), &join(path, "lagrangian"))?;
        let mut generators = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let p = format!("{}[{i}]", join(path, "generators"));
            generators.push(match g {
                GeneratorDoc::Keep { iso } => RUGenerator::Keep(iso.decode(&join(&p, "iso"))?),
                GeneratorDoc::Flip { iso, rest, inner } => {
                    let rest = rest.decode(&join(&p, "rest"))?;
                    let inner = inner.decode(rest.group(), &join(&p, "inner"))?;
                    RUGenerator::Flip { iso: iso.decode(&join(&p, "iso"))?, rest, inner }
                }
            });
        }
        Ok(RUWord { form, lagrangian, generators })
    }
}

/// A stable isomorphism of metabolic forms carrying one stabilized lagrangian onto the other.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableIsoDoc {
    pub iso: IsoDoc,
    pub source_lagrangian: SubgroupDoc,
    pub target_lagrangian: SubgroupDoc,
}

/// An element of the lagrangian-preserving group together with the automorphism it should equal.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallDoc {
    pub word: WordDoc,
    pub phi: IsoDoc,
}

/// Deserializes `value` reporting the path of the first offending field.
pub fn typed<T: serde::de::DeserializeOwned>(value: &Value, path: &str) -> Result<T> {
    serde_path_to_error::deserialize(value.clone()).map_err(|e| {
        let inner = e.path().to_string();
        let full = match (path.is_empty(), inner == ".") {
            (true, _) => inner,
            (false, true) => path.to_string(),
            (false, false) => format!("{path}.{inner}"),
        };
        Error::Parse { path: full, message: e.into_inner().to_string() }
    })
}

pub fn field<'a>(value: &'a Value, key: &str) -> Result<&'a Value> {
    value.get(key).ok_or_else(|| Error::Parse { path: key.to_string(), message: "missing field".into() })
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("documents serialize")
}

/// Compact, key-sorted text with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse_text(text: &str) -> Result<Value> {
    let mut de = serde_json::Deserializer::from_str(text);
    let v: Value = serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        message: e.into_inner().to_string(),
    })?;
    de.end().map_err(|e| Error::Parse { path: ".".into(), message: e.to_string() })?;
    Ok(v)
}

/// Kind of a recognized document, decided by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Form,
    QuasiFormation,
    FormIso,
    Sequence,
    Word,
    StableIso,
    Wall,
}

impl DocKind {
    pub fn name(self) -> &'static str {
        match self {
            DocKind::Form => "form",
            DocKind::QuasiFormation => "quasi-formation",
            DocKind::FormIso => "form-iso",
            DocKind::Sequence => "move-sequence",
            DocKind::Word => "ru-word",
            DocKind::StableIso => "stable-iso",
            DocKind::Wall => "ru-wall",
        }
    }

    pub fn detect(value: &Value) -> Option<DocKind> {
        let obj = value.as_object()?;
        let has = |k: &str| obj.contains_key(k);
        if has("group") && has("lambda") {
            Some(DocKind::Form)
        } else if has("form") && has("L") && has("V") {
            Some(DocKind::QuasiFormation)
        } else if has("source") && has("target") && has("matrix") {
            Some(DocKind::FormIso)
        } else if has("start") && has("end") && has("moves") {
            Some(DocKind::Sequence)
        } else if has("form") && has("lagrangian") && has("generators") {
            Some(DocKind::Word)
        } else if has("iso") && has("source_lagrangian") && has("target_lagrangian") {
            Some(DocKind::StableIso)
        } else if has("word") && has("phi") {
            Some(DocKind::Wall)
        } else {
            None
        }
    }
}

pub fn decode_form(value: &Value, path: &str) -> Result<EQForm> {
    typed::<FormDoc>(value, path)?.decode(path)
}

pub fn decode_qf(value: &Value, path: &str) -> Result<QuasiFormation> {
    typed::<QfDoc>(value, path)?.decode(path)
}

pub fn decode_subgroup(value: &Value, ambient: &AbGroup, path: &str) -> Result<SubgroupRep> {
    typed::<SubgroupDoc>(value, path)?.decode(ambient, path)
}

pub fn decode_group(value: &Value, path: &str) -> Result<AbGroup> {
    typed::<GroupDoc>(value, path)?.decode(path)
}

pub fn decode_matrix(value: &Value, cols: usize, path: &str) -> Result<IntMatrix> {
    matrix_from(&typed::<Rows>(value, path)?, cols, path)
}

/// Re-encodes a recognized document in canonical form; other objects and arrays
/// are canonicalized element by element.
pub fn canonicalize(value: &Value, path: &str) -> Result<Value> {
    if let Some(kind) = DocKind::detect(value) {
        return Ok(match kind {
            DocKind::Form => to_value(&FormDoc::new(&decode_form(value, path)?)),
            DocKind::QuasiFormation => to_value(&QfDoc::new(&decode_qf(value, path)?)),
            DocKind::FormIso => to_value(&IsoDoc::new(&typed::<IsoDoc>(value, path)?.decode(path)?)),
            DocKind::Sequence => to_value(&SequenceDoc::new(&typed::<SequenceDoc>(value, path)?.decode(path)?)),
            DocKind::Word => to_value(&WordDoc::new(&typed::<WordDoc>(value, path)?.decode(path)?)),
            DocKind::StableIso | DocKind::Wall => {
                let obj = value.as_object().expect("detected objects");
                let mut out = serde_json::Map::new();
                for (k, v) in obj {
                    out.insert(k.clone(), canonicalize(v, &join(path, k))?);
                }
                Value::Object(out)
            }
        });
    }
    match value {
        Value::Object(obj) => {
            let mut out = serde_json::Map::new();
            for (k, v) in obj {
                out.insert(k.clone(), canonicalize(v, &join(path, k))?);
            }
            Ok(Value::Object(out))
        }
        Value::Array(xs) => xs.iter().enumerate().map(|(i, x)| canonicalize(x, &format!("{path}[{i}]"))).collect::<Result<Vec<_>>>().map(Value::Array),
        Value::Number(n) if n.is_f64() => Err(Error::Parse { path: path.to_string(), message: "floating point numbers are not allowed".into() }),
        other => Ok(other.clone()),
    }
}
