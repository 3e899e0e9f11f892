//! Canonical JSON for carriers, elements, words, transcripts and matrices.
//!
//! Integers travel as decimal strings, rationals as `"p/q"`, excision
//! elements as `[base, ideal]` pairs. `serde_json` keeps object keys sorted,
//! so pretty printing a [`Value`] is already canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::coeff_rings::{IdealDescriptor, RingDescriptor, Scalar};
use crate::geometry::AffineMonoid;
use crate::groups::{FormKind, FormType, GroupWord, Token, WordItem};
use crate::lattice::Q;
use crate::matrix::Matrix;
use crate::monoid_ring::{MonoidRing, Poly};
use crate::reduction::{Procedure, ReductionTranscript};
use crate::ring::Ring;

use super::IoError;

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

/// Pretty, key-sorted rendering with a trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value, IoError> {
    Ok(serde_json::from_str(text)?)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, IoError> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, IoError> {
    field(v, key)?.as_str().ok_or_else(|| bad(format!("field \"{key}\" must be a string")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize, IoError> {
    let x = field(v, key)?;
    x.as_u64()
        .or_else(|| x.as_str().and_then(|s| s.parse().ok()))
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("field \"{key}\" must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn int_vec(v: &Value, what: &str) -> Result<Vec<i64>, IoError> {
    array(v, what)?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| bad(format!("{what} entries must be integers"))))
        .collect()
}

fn bigint(v: &Value) -> Result<BigInt, IoError> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| bad(format!("not an integer: {n}"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

pub fn q_to_json(x: &Q) -> Value {
    if *x.denom() == 1 {
        Value::String(x.numer().to_string())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn q_vec_to_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_to_json).collect())
}

// ---- carriers ----

pub fn ring_to_json(r: &RingDescriptor) -> Value {
    match r {
        RingDescriptor::Integers => json!({"kind": "int"}),
        RingDescriptor::Rationals => json!({"kind": "rat"}),
        RingDescriptor::IntegersMod(n) => json!({"kind": "mod", "n": n}),
        RingDescriptor::Excision { base, ideal } => json!({
            "kind": "excision",
            "base": ring_to_json(base),
            "ideal": ideal_to_json(base, ideal),
        }),
    }
}

pub fn ring_from_json(v: &Value) -> Result<RingDescriptor, IoError> {
    match str_field(v, "kind")? {
        "int" => Ok(RingDescriptor::Integers),
        "rat" => Ok(RingDescriptor::Rationals),
        "mod" => {
            let n = field(v, "n")?;
            let n = n
                .as_u64()
                .or_else(|| n.as_str().and_then(|s| s.parse().ok()))
                .ok_or_else(|| bad("\"n\" must be a positive integer"))?;
            Ok(RingDescriptor::integers_mod(n)?)
        }
        "excision" => {
            let base = ring_from_json(field(v, "base")?)?;
            let gens = array(field(field(v, "ideal")?, "gens")?, "ideal generators")?
                .iter()
                .map(|g| scalar_from_json(&base, g))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RingDescriptor::excision(base, gens)?)
        }
        other => Err(bad(format!("unknown ring kind {other:?}"))),
    }
}

pub fn ideal_to_json(base: &RingDescriptor, ideal: &IdealDescriptor) -> Value {
    json!({"gens": ideal.generators().iter().map(|g| scalar_to_json(base, g)).collect::<Vec<_>>()})
}

pub fn ideal_from_json(base: &RingDescriptor, v: &Value) -> Result<IdealDescriptor, IoError> {
    let gens = array(field(v, "gens")?, "ideal generators")?
        .iter()
        .map(|g| scalar_from_json(base, g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealDescriptor::new(base, gens)?)
}

pub fn scalar_to_json(r: &RingDescriptor, x: &Scalar) -> Value {
    match (r, x) {
        (RingDescriptor::Excision { base, .. }, Scalar::Pair(a, b)) => {
            Value::Array(vec![scalar_to_json(base, a), scalar_to_json(base, b)])
        }
        (_, Scalar::Int(v)) => Value::String(v.to_string()),
        (_, Scalar::Rat(q)) => Value::String(if q.is_integer() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }),
        (_, Scalar::Mod(v)) => Value::String(v.to_string()),
        (_, Scalar::Pair(a, b)) => Value::Array(vec![scalar_to_json(r, a), scalar_to_json(r, b)]),
    }
}

pub fn scalar_from_json(r: &RingDescriptor, v: &Value) -> Result<Scalar, IoError> {
    let x = match r {
        RingDescriptor::Integers => Scalar::Int(bigint(v)?),
        RingDescriptor::Rationals => {
            let q = match v {
                Value::String(s) => match s.split_once('/') {
                    Some((p, q)) => {
                        let p: BigInt = p.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
                        let q: BigInt = q.trim().parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
                        if q == BigInt::from(0) {
                            return Err(bad(format!("zero denominator in {s:?}")));
                        }
                        BigRational::new(p, q)
                    }
                    None => BigRational::from_integer(bigint(v)?),
                },
                _ => BigRational::from_integer(bigint(v)?),
            };
            Scalar::Rat(q)
        }
        RingDescriptor::IntegersMod(_) => r.int(bigint(v)?),
        RingDescriptor::Excision { base, .. } => {
            let parts = array(v, "excision element")?;
            if parts.len() != 2 {
                return Err(bad("excision elements are [base, ideal] pairs"));
            }
            Scalar::pair(scalar_from_json(base, &parts[0])?, scalar_from_json(base, &parts[1])?)
        }
    };
    r.validate(&x)?;
    Ok(x)
}

pub fn monoid_to_json(m: &AffineMonoid) -> Value {
    json!({"rank": m.ambient_rank(), "generators": m.generators()})
}

pub fn monoid_from_json(v: &Value) -> Result<AffineMonoid, IoError> {
    let rank = usize_field(v, "rank")?;
    let gens = array(field(v, "generators")?, "generators")?
        .iter()
        .map(|g| int_vec(g, "generator"))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(g) = gens.iter().find(|g| g.len() != rank) {
        return Err(bad(format!("generator {g:?} does not have length {rank}")));
    }
    Ok(AffineMonoid::new(gens)?)
}

pub fn form_to_json(f: FormKind) -> Value {
    json!({"kind": f.kind.to_string(), "size": f.size()})
}

pub fn form_from_json(v: &Value) -> Result<FormKind, IoError> {
    let kind = match str_field(v, "kind")? {
        "symplectic" => FormType::Symplectic,
        "orthogonal" => FormType::Orthogonal,
        other => return Err(bad(format!("unknown form kind {other:?}"))),
    };
    let size = usize_field(v, "size")?;
    if size % 2 != 0 {
        return Err(bad(format!("form size must be even, got {size}")));
    }
    Ok(FormKind::new(kind, size / 2)?)
}

/// A carrier that knows how to write and read its own elements.
pub trait JsonCarrier: Ring {
    fn carrier_to_json(&self) -> Value;
    fn elem_to_json(&self, x: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, IoError>;
    /// The coefficient ring ideals are taken in.
    fn base_ring(&self) -> &RingDescriptor;

    fn row_to_json(&self, u: &[Self::Elem]) -> Value {
        Value::Array(u.iter().map(|x| self.elem_to_json(x)).collect())
    }

    fn row_from_json(&self, v: &Value) -> Result<Vec<Self::Elem>, IoError> {
        array(v, "row")?.iter().map(|x| self.elem_from_json(x)).collect()
    }
}

impl JsonCarrier for RingDescriptor {
    fn carrier_to_json(&self) -> Value {
        ring_to_json(self)
    }

    fn elem_to_json(&self, x: &Scalar) -> Value {
        scalar_to_json(self, x)
    }

    fn elem_from_json(&self, v: &Value) -> Result<Scalar, IoError> {
        scalar_from_json(self, v)
    }

    fn base_ring(&self) -> &RingDescriptor {
        self
    }
}

impl JsonCarrier for MonoidRing<RingDescriptor> {
    fn carrier_to_json(&self) -> Value {
        json!({"kind": "monoid", "coeffs": ring_to_json(self.coeffs()), "monoid": monoid_to_json(self.monoid())})
    }

    fn elem_to_json(&self, f: &Poly<Scalar>) -> Value {
        Value::Array(
            f.terms()
                .map(|(e, c)| json!({"exp": e, "coef": scalar_to_json(self.coeffs(), c)}))
                .collect(),
        )
    }

    fn elem_from_json(&self, v: &Value) -> Result<Poly<Scalar>, IoError> {
        let terms = array(v, "monoid ring element")?
            .iter()
            .map(|t| Ok((int_vec(field(t, "exp")?, "exponent")?, scalar_from_json(self.coeffs(), field(t, "coef")?)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(self.from_terms(terms)?)
    }

    fn base_ring(&self) -> &RingDescriptor {
        self.coeffs()
    }
}

/// Either kind of carrier, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum Carrier {
    Scalar(RingDescriptor),
    Monoid(MonoidRing<RingDescriptor>),
}

pub fn carrier_from_json(v: &Value) -> Result<Carrier, IoError> {
    if str_field(v, "kind")? == "monoid" {
        let coeffs = ring_from_json(field(v, "coeffs")?)?;
        let monoid = monoid_from_json(field(v, "monoid")?)?;
        Ok(Carrier::Monoid(MonoidRing::new(coeffs, monoid)?))
    } else {
        Ok(Carrier::Scalar(ring_from_json(v)?))
    }
}

// ---- words ----

pub fn token_to_json<R: JsonCarrier>(r: &R, t: &Token<R::Elem>) -> Value {
    match t {
        Token::Ge { i, j, lam } => json!({"op": "ge", "i": i, "j": j, "lam": r.elem_to_json(lam)}),
        Token::SeShort { i, lam } => json!({"op": "se", "i": i, "lam": r.elem_to_json(lam)}),
    }
}

fn items_to_json<R: JsonCarrier>(r: &R, items: &[WordItem<R::Elem>]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|it| match it {
                WordItem::Token(t) => token_to_json(r, t),
                WordItem::Conjugate { core, by } => {
                    json!({"op": "conj", "core": items_to_json(r, core), "by": items_to_json(r, by)})
                }
            })
            .collect(),
    )
}

fn items_from_json<R: JsonCarrier>(r: &R, v: &Value) -> Result<Vec<WordItem<R::Elem>>, IoError> {
    let mut out = Vec::new();
    for it in array(v, "word")? {
        match str_field(it, "op")? {
            "ge" => out.push(WordItem::Token(Token::ge(
                usize_field(it, "i")?,
                usize_field(it, "j")?,
                r.elem_from_json(field(it, "lam")?)?,
            ))),
            "se" => out.push(WordItem::Token(Token::se(usize_field(it, "i")?, r.elem_from_json(field(it, "lam")?)?))),
            "conj" => {
                let core = items_from_json(r, field(it, "core")?)?;
                let by = items_from_json(r, field(it, "by")?)?;
                out.extend(WordItem::conjugate(core, by));
            }
            other => return Err(bad(format!("unknown word op {other:?}"))),
        }
    }
    Ok(out)
}

pub fn word_to_json<R: JsonCarrier>(r: &R, w: &GroupWord<R::Elem>) -> Value {
    items_to_json(r, &w.items)
}

/// Parses and validates a word against `form`.
pub fn word_from_json<R: JsonCarrier>(r: &R, form: FormKind, v: &Value) -> Result<GroupWord<R::Elem>, IoError> {
    let w = GroupWord { form, items: items_from_json(r, v)? };
    w.validate()?;
    Ok(w)
}

pub fn matrix_to_json<R: JsonCarrier>(r: &R, a: &Matrix<R::Elem>) -> Value {
    Value::Array(a.rows().iter().map(|row| r.row_to_json(row)).collect())
}

pub fn matrix_from_json<R: JsonCarrier>(r: &R, v: &Value) -> Result<Matrix<R::Elem>, IoError> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|row| r.row_from_json(row))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).ok_or_else(|| bad("matrix rows have unequal lengths"))
}

// ---- documents ----

pub fn transcript_to_json<R: JsonCarrier>(r: &R, t: &ReductionTranscript<R::Elem>) -> Value {
    json!({
        "ring": r.carrier_to_json(),
        "form": form_to_json(t.form()),
        "procedure": t.procedure.as_str(),
        "input": r.row_to_json(&t.input),
        "word": word_to_json(r, &t.word),
        "output": r.row_to_json(&t.output),
        "relative_ideal": t.relative_ideal.as_ref().map_or(Value::Null, |i| ideal_to_json(r.base_ring(), i)),
    })
}

/// Reads a transcript for an already-parsed carrier `r`.
pub fn transcript_from_json<R: JsonCarrier>(r: &R, v: &Value) -> Result<ReductionTranscript<R::Elem>, IoError> {
    let form = form_from_json(field(v, "form")?)?;
    let procedure: Procedure = str_field(v, "procedure")?.parse().map_err(|e: String| bad(e))?;
    let input = r.row_from_json(field(v, "input")?)?;
    let output = r.row_from_json(field(v, "output")?)?;
    for (name, row) in [("input", &input), ("output", &output)] {
        if row.len() != form.size() {
            return Err(bad(format!("{name} has length {}, form needs {}", row.len(), form.size())));
        }
    }
    let word = word_from_json(r, form, field(v, "word")?)?;
    let relative_ideal = match v.get("relative_ideal") {
        None | Some(Value::Null) => None,
        Some(i) => Some(ideal_from_json(r.base_ring(), i)?),
    };
    Ok(ReductionTranscript { procedure, input, word, output, relative_ideal })
}

/// A row document: `{"ring", "form", "entries", "relative_ideal"?}`.
pub fn row_document<R: JsonCarrier>(r: &R, form: FormKind, u: &[R::Elem], ideal: Option<&IdealDescriptor>) -> Value {
    let mut m = Map::new();
    m.insert("ring".into(), r.carrier_to_json());
    m.insert("form".into(), form_to_json(form));
    m.insert("entries".into(), r.row_to_json(u));
    if let Some(i) = ideal {
        m.insert("relative_ideal".into(), ideal_to_json(r.base_ring(), i));
    }
    Value::Object(m)
}

/// A matrix document: `{"ring", "form", "matrix"}`.
pub fn matrix_document<R: JsonCarrier>(r: &R, form: FormKind, a: &Matrix<R::Elem>) -> Value {
    json!({"ring": r.carrier_to_json(), "form": form_to_json(form), "matrix": matrix_to_json(r, a)})
}

/// The shared header of row, matrix and transcript documents.
pub fn document_header(v: &Value) -> Result<(Carrier, FormKind), IoError> {
    Ok((carrier_from_json(field(v, "ring")?)?, form_from_json(field(v, "form")?)?))
}

pub fn entries_from_document<R: JsonCarrier>(r: &R, form: FormKind, v: &Value) -> Result<Vec<R::Elem>, IoError> {
    let u = r.row_from_json(field(v, "entries")?)?;
    if u.len() != form.size() {
        return Err(bad(format!("row has length {}, form needs {}", u.len(), form.size())));
    }
    Ok(u)
}

pub fn ideal_from_document<R: JsonCarrier>(r: &R, v: &Value) -> Result<Option<IdealDescriptor>, IoError> {
    match v.get("relative_ideal") {
        None | Some(Value::Null) => Ok(None),
        Some(i) => Ok(Some(ideal_from_json(r.base_ring(), i)?)),
    }
}

pub fn matrix_from_document<R: JsonCarrier>(r: &R, form: FormKind, v: &Value) -> Result<Matrix<R::Elem>, IoError> {
    let a = matrix_from_json(r, field(v, "matrix")?)?;
    if a.nrows() != form.size() || !a.is_square() {
        return Err(bad(format!("matrix must be {0} x {0}", form.size())));
    }
    Ok(a)
}
