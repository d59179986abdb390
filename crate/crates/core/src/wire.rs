//! Text and JSON encodings of fields, curves and points.
//!
//! * field: `Q` or `Fp:<decimal prime>`
//! * curve descriptor: `<field>,a=<val>,b=<val>` (coefficients optional where
//!   a command samples its own curves)
//! * point list: `(x,y);(x,y);O`, coordinates as integers or `num/den`
//! * JSON point: `{"x": "<canonical>", "y": "<canonical>"}` or `"O"`
//! * JSON curve: `{"a": "<canonical>", "b": "<canonical>", "field": "Fp:10007"}`
//!
//! Canonical strings are decimal residues for prime fields and `num/den`
//! (just `num` when the denominator is 1) for rationals.

use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldValue};

/// A parsed `--curve` argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub field: FieldDescriptor,
    pub coefficients: Option<(FieldValue, FieldValue)>,
}

impl CurveSpec {
    pub fn curve(&self) -> Result<Option<Curve>> {
        self.coefficients
            .as_ref()
            .map(|(a, b)| Curve::new(a.clone(), b.clone()))
            .transpose()
    }

    pub fn require_curve(&self) -> Result<Curve> {
        self.curve()?
            .ok_or_else(|| Error::Parse("curve needs both a=<val> and b=<val>".into()))
    }
}

pub fn parse_curve_spec(s: &str) -> Result<CurveSpec> {
    let mut parts = s.split(',').map(str::trim);
    let field: FieldDescriptor = parts.next().unwrap_or_default().parse()?;
    let (mut a, mut b) = (None, None);
    for part in parts {
        let (key, val) = part.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "expected key=value in curve descriptor, got {part:?}"
            ))
        })?;
        let slot = match key.trim() {
            "a" => &mut a,
            "b" => &mut b,
            other => return Err(Error::Parse(format!("unknown curve parameter {other:?}"))),
        };
        if slot.is_some() {
            return Err(Error::Parse(format!("duplicate curve parameter {key:?}")));
        }
        *slot = Some(field.parse_value(val)?);
    }
    let coefficients = match (a, b) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => return Err(Error::Parse("curve needs both a=<val> and b=<val>".into())),
    };
    Ok(CurveSpec {
        field,
        coefficients,
    })
}

pub fn format_curve_spec(curve: &Curve) -> String {
    format!("{},a={},b={}", curve.field(), curve.a(), curve.b())
}

/// Parses `(x,y);(x,y);O`.
pub fn parse_points(s: &str, field: FieldDescriptor) -> Result<Vec<Point>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_point(t, field))
        .collect()
}

pub fn parse_point(s: &str, field: FieldDescriptor) -> Result<Point> {
    let s = s.trim();
    if s == "O" {
        return Ok(Point::Infinity);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected (x,y) or O, got {s:?}")))?;
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected (x,y), got {s:?}")))?;
    Point::new(field.parse_value(x)?, field.parse_value(y)?)
}

pub fn format_points(points: &[Point]) -> String {
    points
        .iter()
        .map(Point::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// JSON form of a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Affine { x: String, y: String },
    Tag(String),
}

impl PointJson {
    pub fn from_point(p: &Point) -> Self {
        match p {
            Point::Infinity => PointJson::Tag("O".into()),
            Point::Affine { x, y } => PointJson::Affine {
                x: x.to_string(),
                y: y.to_string(),
            },
        }
    }

    pub fn to_point(&self, field: FieldDescriptor) -> Result<Point> {
        match self {
            PointJson::Tag(t) if t == "O" => Ok(Point::Infinity),
            PointJson::Tag(t) => Err(Error::Parse(format!(
                "expected \"O\" or an object, got {t:?}"
            ))),
            PointJson::Affine { x, y } => Point::new(field.parse_value(x)?, field.parse_value(y)?),
        }
    }
}

/// JSON form of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub a: String,
    pub b: String,
    pub field: String,
}

impl CurveJson {
    pub fn from_curve(c: &Curve) -> Self {
        CurveJson {
            a: c.a().to_string(),
            b: c.b().to_string(),
            field: c.field().to_string(),
        }
    }

    pub fn to_curve(&self) -> Result<Curve> {
        let field: FieldDescriptor = self.field.parse()?;
        Curve::new(field.parse_value(&self.a)?, field.parse_value(&self.b)?)
    }
}

/// Input document for an n-point sum: a curve and a list of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumInput {
    pub curve: CurveJson,
    pub points: Vec<PointJson>,
}

impl SumInput {
    pub fn decode(&self) -> Result<(Curve, Vec<Point>)> {
        let curve = self.curve.to_curve()?;
        let points = self
            .points
            .iter()
            .map(|p| p.to_point(curve.field()))
            .collect::<Result<_>>()?;
        Ok((curve, points))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
