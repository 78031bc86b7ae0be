//! JSON persistence. Every file starts with a header
//! `{"schema": 1, "session": {"conductor": N, "q": bool}, "kind": ...}`
//! followed by the fields of its kind. Scalars are written in the declared
//! session field and must lie in it when read back.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraData, CoalgebraData, HopfData};
use crate::cartan::{CartanDatum, CartanMatrix};
use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::linalg::Matrix;
use crate::modules::{Generator, Representation, Role, Side};
use crate::poly::Poly;
use crate::scalars::{euler_phi, CycloElem, Rational, Scalar};
use crate::twist::{build_twisted, Pairing, TwistedAlgebra};

pub const SCHEMA: u64 = 1;

/// The field `Q(ζ_N)` or `Q(ζ_N)(q)` a file is written over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub conductor: u32,
    pub q: bool,
}

impl Session {
    pub fn rational() -> Self {
        Session { conductor: 1, q: false }
    }

    /// The smallest session containing all of `xs`.
    pub fn of<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Self {
        xs.into_iter()
            .fold(Self::rational(), |s, x| Session { conductor: s.conductor.lcm(&x.conductor()), q: s.q || x.has_q() })
    }

    pub fn join(self, other: Session) -> Self {
        Session { conductor: self.conductor.lcm(&other.conductor), q: self.q || other.q }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.conductor.is_multiple_of(x.conductor()) && (self.q || !x.has_q())
    }
}

/// A parsed input file.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum Document {
    Hopf(HopfData<Scalar>),
    Twisted(TwistedAlgebra<Scalar>),
    Datum(CartanDatum<Scalar>),
    Representation(Representation<Scalar>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Hopf(_) => "hopf",
            Document::Twisted(_) => "twisted",
            Document::Datum(_) => "datum",
            Document::Representation(_) => "representation",
        }
    }

    fn scalars(&self) -> Vec<&Scalar> {
        match self {
            Document::Hopf(h) => hopf_scalars(h),
            Document::Twisted(t) => {
                let mut v = hopf_scalars(t.h());
                v.extend(hopf_scalars(t.u()));
                v.extend(hopf_scalars(t.a()));
                v.extend(t.pairing().matrix().to_rows_ref());
                v
            }
            Document::Datum(d) => d.chi.iter().flat_map(|c| c.values()).collect(),
            Document::Representation(r) => r.generators().iter().flat_map(|g| g.matrix.to_rows_ref()).collect(),
        }
    }

    pub fn session(&self) -> Session {
        Session::of(self.scalars())
    }

    /// The document with header, in the smallest session containing it.
    pub fn to_json(&self) -> Value {
        self.to_json_in(self.session()).expect("own session contains every scalar")
    }

    pub fn to_json_in(&self, s: Session) -> Result<Value> {
        if let Some(x) = self.scalars().into_iter().find(|x| !s.contains(x)) {
            return Err(Error::Invalid(format!("{x} does not lie in session {s:?}")));
        }
        let mut out = Map::new();
        out.insert("schema".into(), json!(SCHEMA));
        out.insert("session".into(), json!(s));
        out.insert("kind".into(), json!(self.kind()));
        let body = match self {
            Document::Hopf(h) => hopf_to_json(h, s.conductor),
            Document::Twisted(t) => twisted_to_json(t, s.conductor),
            Document::Datum(d) => datum_to_json(d, s.conductor),
            Document::Representation(r) => rep_to_json(r, s.conductor),
        };
        out.extend(body);
        Ok(Value::Object(out))
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("values serialize")
    }
}

trait RowsRef {
    fn to_rows_ref(&self) -> Vec<&Scalar>;
}

impl RowsRef for Matrix<Scalar> {
    fn to_rows_ref(&self) -> Vec<&Scalar> {
        (0..self.nrows()).flat_map(|r| self.row(r)).collect()
    }
}

fn hopf_scalars(h: &HopfData<Scalar>) -> Vec<&Scalar> {
    let mut v: Vec<&Scalar> = h.unit().iter().chain(h.counit()).collect();
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            v.extend(h.algebra.product(i, j).iter().map(|(_, c)| c));
        }
        v.extend(h.coalgebra.coproduct(i).iter().map(|(_, _, c)| c));
    }
    if let Some(s) = h.antipode() {
        v.extend(s.to_rows_ref());
    }
    v
}

/// Parse a document and check it against its declared session.
pub fn parse_document(text: &str) -> Result<(Session, Document)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    document_from_json(&v)
}

pub fn document_from_json(v: &Value) -> Result<(Session, Document)> {
    let schema = field(v, "schema")?.as_u64().ok_or_else(|| bad("schema", "an integer"))?;
    if schema != SCHEMA {
        return Err(Error::Invalid(format!("schema {schema} is not supported, expected {SCHEMA}")));
    }
    let s: Session =
        serde_json::from_value(field(v, "session")?.clone()).map_err(|e| Error::Parse(format!("session: {e}")))?;
    if s.conductor == 0 {
        return Err(Error::Invalid("session conductor must be positive".into()));
    }
    let doc = match string(field(v, "kind")?, "kind")? {
        "hopf" => Document::Hopf(hopf_from_json(v, &s)?),
        "twisted" => Document::Twisted(twisted_from_json(v, &s)?),
        "datum" => Document::Datum(datum_from_json(v, &s)?),
        "representation" => Document::Representation(rep_from_json(v, &s)?),
        k => return Err(Error::Invalid(format!("unknown kind {k:?}"))),
    };
    Ok((s, doc))
}

fn bad(what: &str, expected: &str) -> Error {
    Error::Parse(format!("{what}: expected {expected}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(what, "a string"))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, "an array"))
}

fn uint(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(what, "a non-negative integer"))
}

fn int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(what, "an integer"))
}

fn cyclo_to_json(c: &CycloElem, n: u32) -> Value {
    Value::Array(c.lift(n).coeffs().iter().map(|r| json!(r.to_string())).collect())
}

fn poly_to_json(p: &Poly<CycloElem>, n: u32) -> Value {
    Value::Array(p.coeffs().iter().map(|c| cyclo_to_json(c, n)).collect())
}

/// `{"conductor": N, "num": [...], "den": [...]}`, one coefficient vector
/// of `Q(ζ_N)` per power of `q`. Requires `x` to lie in `Q(ζ_N)(q)`.
pub fn scalar_to_json(x: &Scalar, n: u32) -> Value {
    let (num, den) = x.parts();
    json!({"conductor": n, "num": poly_to_json(&num, n), "den": poly_to_json(&den, n)})
}

pub fn scalar_from_json(v: &Value, s: &Session) -> Result<Scalar> {
    let n = uint(field(v, "conductor")?, "conductor")? as u32;
    if n != s.conductor {
        return Err(Error::Invalid(format!("scalar has conductor {n}, session declares {}", s.conductor)));
    }
    let phi = euler_phi(n);
    let poly = |key: &str| -> Result<Poly<CycloElem>> {
        let coeffs = array(field(v, key)?, key)?
            .iter()
            .map(|c| {
                let c = array(c, key)?;
                if c.len() != phi {
                    return Err(Error::Parse(format!("{key}: coefficient vectors of Q(ζ_{n}) have length {phi}")));
                }
                let r = c.iter().map(|x| string(x, key)?.parse::<Rational>()).collect::<Result<Vec<_>>>()?;
                Ok(CycloElem::new(n, r))
            })
            .collect::<Result<Vec<_>>>()?;
        if !s.q && coeffs.len() > 1 {
            return Err(Error::Invalid("scalar depends on q but the session has q off".into()));
        }
        Ok(Poly::new(coeffs))
    };
    Scalar::normalize(poly("num")?, poly("den")?)
}

pub fn vec_to_json(v: &[Scalar], n: u32) -> Value {
    Value::Array(v.iter().map(|x| scalar_to_json(x, n)).collect())
}

fn vec_from_json(v: &Value, s: &Session, what: &str) -> Result<Vec<Scalar>> {
    array(v, what)?.iter().map(|x| scalar_from_json(x, s)).collect()
}

pub fn matrix_to_json(m: &Matrix<Scalar>, n: u32) -> Value {
    Value::Array((0..m.nrows()).map(|r| vec_to_json(m.row(r), n)).collect())
}

/// A matrix given by rows; `cols` is required when there are no rows.
fn matrix_from_json(v: &Value, s: &Session, what: &str, cols: Option<usize>) -> Result<Matrix<Scalar>> {
    let rows = array(v, what)?.iter().map(|r| vec_from_json(r, s, what)).collect::<Result<Vec<_>>>()?;
    let width = rows.first().map(|r| r.len()).or(cols).unwrap_or(0);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Shape(format!("{what}: rows of unequal length")));
    }
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, width));
    }
    Ok(Matrix::from_rows(rows))
}

fn tensor_to_json(entries: Vec<(usize, usize, usize, Scalar)>, n: u32) -> Value {
    Value::Array(entries.into_iter().map(|(i, j, k, c)| json!([i, j, k, scalar_to_json(&c, n)])).collect())
}

fn tensor_from_json(v: &Value, s: &Session, what: &str) -> Result<Vec<(usize, usize, usize, Scalar)>> {
    array(v, what)?
        .iter()
        .map(|e| {
            let e = array(e, what)?;
            if e.len() != 4 {
                return Err(bad(what, "entries [i, j, k, scalar]"));
            }
            Ok((uint(&e[0], what)?, uint(&e[1], what)?, uint(&e[2], what)?, scalar_from_json(&e[3], s)?))
        })
        .collect()
}

fn hopf_to_json(h: &HopfData<Scalar>, n: u32) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("dim".into(), json!(h.dim()));
    m.insert("unit".into(), vec_to_json(h.unit(), n));
    m.insert("mult".into(), tensor_to_json(h.algebra.entries(), n));
    m.insert("comult".into(), tensor_to_json(h.coalgebra.entries(), n));
    m.insert("counit".into(), vec_to_json(h.counit(), n));
    m.insert("antipode".into(), h.antipode().map_or(Value::Null, |s| matrix_to_json(s, n)));
    m
}

fn hopf_from_json(v: &Value, s: &Session) -> Result<HopfData<Scalar>> {
    let dim = uint(field(v, "dim")?, "dim")?;
    let algebra = AlgebraData::new(
        dim,
        tensor_from_json(field(v, "mult")?, s, "mult")?,
        vec_from_json(field(v, "unit")?, s, "unit")?,
    )?;
    let coalgebra = CoalgebraData::new(
        dim,
        tensor_from_json(field(v, "comult")?, s, "comult")?,
        vec_from_json(field(v, "counit")?, s, "counit")?,
    )?;
    let antipode = match v.get("antipode") {
        None | Some(Value::Null) => None,
        Some(m) => Some(matrix_from_json(m, s, "antipode", Some(dim))?),
    };
    HopfData::new(algebra, coalgebra, antipode)
}

/// The product structure of `H` plus a `pairing` block holding `U`, `A`
/// and the matrix of `τ`.
fn twisted_to_json(t: &TwistedAlgebra<Scalar>, n: u32) -> Map<String, Value> {
    let mut m = hopf_to_json(t.h(), n);
    let p = t.pairing();
    m.insert(
        "pairing".into(),
        json!({
            "U": Value::Object(hopf_to_json(p.u(), n)),
            "A": Value::Object(hopf_to_json(p.a(), n)),
            "matrix": matrix_to_json(p.matrix(), n),
        }),
    );
    m
}

/// Rebuilds `H` from the pairing block; the stored structure must agree.
fn twisted_from_json(v: &Value, s: &Session) -> Result<TwistedAlgebra<Scalar>> {
    let stored = hopf_from_json(v, s)?;
    let p = field(v, "pairing")?;
    let u = hopf_from_json(field(p, "U")?, s)?;
    let a = hopf_from_json(field(p, "A")?, s)?;
    let tau = matrix_from_json(field(p, "matrix")?, s, "matrix", Some(a.dim()))?;
    let t = build_twisted(Pairing::new(u, a, tau)?)?;
    if stored.algebra != t.h().algebra || stored.coalgebra != t.h().coalgebra {
        return Err(Error::CheckFailed("stored structure differs from the twist of its pairing".into()));
    }
    Ok(t)
}

fn datum_to_json(d: &CartanDatum<Scalar>, n: u32) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("group".into(), json!({"free": d.group.free_rank, "torsion": d.group.torsion}));
    m.insert("g".into(), json!(d.g.iter().map(|x| x.exponents().to_vec()).collect::<Vec<_>>()));
    m.insert("chi".into(), Value::Array(d.chi.iter().map(|c| json!({"values": vec_to_json(c.values(), n)})).collect()));
    m.insert("cartan".into(), json!(d.a.rows()));
    m
}

fn datum_from_json(v: &Value, s: &Session) -> Result<CartanDatum<Scalar>> {
    let g = field(v, "group")?;
    let torsion = array(field(g, "torsion")?, "torsion")?
        .iter()
        .map(|x| uint(x, "torsion").map(|n| n as u32))
        .collect::<Result<Vec<_>>>()?;
    let group = AbelianGroup::new(uint(field(g, "free")?, "free")?, torsion)?;
    let elems = array(field(v, "g")?, "g")?
        .iter()
        .map(|e| group.elem(array(e, "g")?.iter().map(|x| int(x, "g")).collect::<Result<Vec<_>>>()?))
        .collect::<Result<Vec<_>>>()?;
    let chi = array(field(v, "chi")?, "chi")?
        .iter()
        .map(|c| group.character(vec_from_json(field(c, "values")?, s, "values")?))
        .collect::<Result<Vec<_>>>()?;
    let rows = array(field(v, "cartan")?, "cartan")?
        .iter()
        .map(|r| array(r, "cartan")?.iter().map(|x| int(x, "cartan")).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    CartanDatum::new(group, elems, chi, CartanMatrix::new(rows)?)
}

fn rep_to_json(r: &Representation<Scalar>, n: u32) -> Map<String, Value> {
    let gens = r
        .generators()
        .iter()
        .map(|g| {
            let mut o = Map::new();
            o.insert("name".into(), json!(g.name));
            o.insert("matrix".into(), matrix_to_json(&g.matrix, n));
            if let Some(role) = g.role {
                o.insert("role".into(), json!(role.as_str()));
            }
            Value::Object(o)
        })
        .collect();
    let mut m = Map::new();
    m.insert("dim".into(), json!(r.dim()));
    m.insert("side".into(), json!(r.side().as_str()));
    m.insert("generators".into(), Value::Array(gens));
    m
}

fn rep_from_json(v: &Value, s: &Session) -> Result<Representation<Scalar>> {
    let dim = uint(field(v, "dim")?, "dim")?;
    let side = match string(field(v, "side")?, "side")? {
        "left" => Side::Left,
        "right" => Side::Right,
        x => return Err(Error::Parse(format!("side {x:?} is neither \"left\" nor \"right\""))),
    };
    let gens = array(field(v, "generators")?, "generators")?
        .iter()
        .map(|g| {
            let name = string(field(g, "name")?, "name")?;
            let matrix = matrix_from_json(field(g, "matrix")?, s, "matrix", Some(dim))?;
            let role = match g.get("role") {
                None | Some(Value::Null) => None,
                Some(r) => {
                    let r = string(r, "role")?;
                    Some(Role::parse(r).ok_or_else(|| Error::Parse(format!("unknown role {r:?}")))?)
                }
            };
            Ok(Generator::new(name, matrix, role))
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(dim, side, gens)
}

/// Both files must declare the same session.
pub fn check_same_session(a: &Session, b: &Session) -> Result<()> {
    if a != b {
        return Err(Error::Invalid(format!("session mismatch: {a:?} vs {b:?}")));
    }
    Ok(())
}
