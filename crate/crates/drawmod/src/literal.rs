//! `key=value` property literals for the command line.
//!
//! Values use RON syntax: numbers, `true`/`false`, `"text"`, points as
//! `(x,y)`, lists as `[...]`, records as `(key: value, ...)`. The module
//! schema decides the property kind, so `diameter_mm=5` is a real and
//! `path=[(0,0),(100,0)]` a point list. Text properties also accept bare
//! words: `function_code=TI`.

use drawmod_core::geometry::Point;
use drawmod_core::props::{schema_for, Axis, ModuleTypeId, PropertyValue, Props, Record, ValueKind};
use ron::value::Number;
use ron::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("property literal `{literal}`: {reason}")]
pub struct LiteralError {
    pub literal: String,
    pub reason: String,
}

fn err(literal: &str, reason: impl Into<String>) -> LiteralError {
    LiteralError {
        literal: literal.into(),
        reason: reason.into(),
    }
}

/// Parses `key=value` pairs for a module of `module_type`.
pub fn parse_props(module_type: ModuleTypeId, pairs: &[String]) -> Result<Props, LiteralError> {
    let schema = schema_for(module_type);
    pairs
        .iter()
        .map(|pair| {
            let (key, raw) = pair.split_once('=').ok_or_else(|| err(pair, "expected key=value"))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(err(pair, "empty key"));
            }
            let kind = schema.get(key).map(|d| d.kind);
            let v = parse_value(raw.trim(), kind).map_err(|reason| err(pair, reason))?;
            Ok((key.to_string(), v))
        })
        .collect()
}

/// Parses `key=value` pairs with kinds inferred from the literals alone.
pub fn parse_record(pairs: &[String]) -> Result<Record, LiteralError> {
    pairs
        .iter()
        .map(|pair| {
            let (key, raw) = pair.split_once('=').ok_or_else(|| err(pair, "expected key=value"))?;
            let v = parse_value(raw.trim(), None).map_err(|reason| err(pair, reason))?;
            Ok((key.trim().to_string(), v))
        })
        .collect()
}

/// Parses one literal, coerced to `kind` when given.
pub fn parse_value(raw: &str, kind: Option<ValueKind>) -> Result<PropertyValue, String> {
    if kind == Some(ValueKind::Text) && !raw.starts_with('"') {
        return Ok(PropertyValue::Text(raw.to_string()));
    }
    // schema-less bare words read as text rather than as RON unit structs
    if kind.is_none() && is_bare_word(raw) && raw.parse::<f64>().is_err() && raw != "true" && raw != "false" {
        return Ok(PropertyValue::Text(raw.to_string()));
    }
    let v: Value = ron::from_str(raw).map_err(|e| format!("not a valid literal ({e})"))?;
    match kind {
        Some(k) => coerce(&v, k),
        None => infer(&v),
    }
}

fn is_bare_word(raw: &str) -> bool {
    !raw.is_empty() && raw.chars().all(|c| c.is_alphanumeric() || "_-.".contains(c))
}

fn number(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => Some(n.into_f64()).filter(|x| x.is_finite()),
        _ => None,
    }
}

fn integer(v: &Value) -> Option<i64> {
    match v {
        Value::Number(Number::F32(_) | Number::F64(_)) => None,
        Value::Number(n) => {
            let f = n.into_f64();
            (f.fract() == 0.0 && f.abs() < 9.0e15).then_some(f as i64)
        }
        _ => None,
    }
}

fn point(v: &Value) -> Option<Point> {
    match v {
        Value::Seq(s) if s.len() == 2 => Some(Point::new(number(&s[0])?, number(&s[1])?)),
        _ => None,
    }
}

fn points(v: &Value) -> Option<Vec<Point>> {
    match v {
        Value::Seq(s) => s.iter().map(point).collect(),
        _ => None,
    }
}

fn axis(v: &Value) -> Option<Axis> {
    match v {
        Value::Seq(s) if s.len() == 2 => Some(Axis::new(point(&s[0])?, number(&s[1])?)),
        Value::Map(m) if m.len() == 2 => Some(Axis::new(
            point(m.get(&Value::String("origin".into()))?)?,
            number(m.get(&Value::String("angle_deg".into()))?)?,
        )),
        _ => None,
    }
}

fn record(v: &Value) -> Result<Record, String> {
    match v {
        Value::Map(m) => m
            .iter()
            .map(|(k, x)| match k {
                Value::String(k) => Ok((k.clone(), infer(x)?)),
                _ => Err("record keys must be names".to_string()),
            })
            .collect(),
        Value::Unit => Ok(Record::new()),
        _ => Err("expected a record `(key: value, ...)`".into()),
    }
}

fn coerce(v: &Value, kind: ValueKind) -> Result<PropertyValue, String> {
    let bad = || format!("expected {}", kind.as_str());
    Ok(match kind {
        ValueKind::Text => match v {
            Value::String(s) => PropertyValue::Text(s.clone()),
            _ => return Err(bad()),
        },
        ValueKind::Real => PropertyValue::Real(number(v).ok_or_else(bad)?),
        ValueKind::Integer => PropertyValue::Integer(integer(v).ok_or_else(bad)?),
        ValueKind::Boolean => match v {
            Value::Bool(b) => PropertyValue::Boolean(*b),
            _ => return Err(bad()),
        },
        ValueKind::Point => PropertyValue::Point(point(v).ok_or_else(bad)?),
        ValueKind::PointList => PropertyValue::PointList(points(v).ok_or_else(bad)?),
        ValueKind::AxisList => match v {
            Value::Seq(s) => PropertyValue::AxisList(s.iter().map(axis).collect::<Option<_>>().ok_or_else(bad)?),
            _ => return Err(bad()),
        },
        ValueKind::Record => PropertyValue::Record(record(v)?),
        ValueKind::RecordList => match v {
            Value::Seq(s) => PropertyValue::RecordList(s.iter().map(record).collect::<Result<_, _>>()?),
            _ => return Err(bad()),
        },
    })
}

/// Kind of a literal seen without a schema.
fn infer(v: &Value) -> Result<PropertyValue, String> {
    Ok(match v {
        Value::Bool(b) => PropertyValue::Boolean(*b),
        Value::String(s) => PropertyValue::Text(s.clone()),
        Value::Char(c) => PropertyValue::Text(c.to_string()),
        Value::Number(_) => match integer(v) {
            Some(i) => PropertyValue::Integer(i),
            None => PropertyValue::Real(number(v).ok_or("numbers must be finite")?),
        },
        Value::Map(_) | Value::Unit => PropertyValue::Record(record(v)?),
        Value::Seq(s) if point(v).is_some() && s.len() == 2 => PropertyValue::Point(point(v).expect("checked")),
        Value::Seq(s) if s.iter().all(|x| matches!(x, Value::Map(_))) && !s.is_empty() => {
            PropertyValue::RecordList(s.iter().map(record).collect::<Result<_, _>>()?)
        }
        Value::Seq(_) => PropertyValue::PointList(points(v).ok_or("lists hold points or records")?),
        Value::Option(_) | Value::Bytes(_) => return Err("unsupported literal".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn schema_guided_kinds() {
        let p = parse_props(
            ModuleTypeId::Pipeline,
            &s(&["path=[(0,0),(100,0)]", "diameter_mm=5", "corner=bent"]),
        )
        .unwrap();
        assert_eq!(
            p["path"],
            PropertyValue::PointList(vec![Point::new(0.0, 0.0), Point::new(100.0, 0.0)])
        );
        assert_eq!(p["diameter_mm"], PropertyValue::Real(5.0));
        assert_eq!(p["corner"], PropertyValue::text("bent"));
        let p = parse_props(ModuleTypeId::Valve, &s(&["dy=50", "name=\"Клапан запорный\""])).unwrap();
        assert_eq!(p["dy"], PropertyValue::Integer(50));
        assert_eq!(p["name"], PropertyValue::text("Клапан запорный"));
        assert!(parse_props(ModuleTypeId::Valve, &s(&["dy=2.5"])).is_err());
        assert!(parse_props(ModuleTypeId::Valve, &s(&["dy"])).is_err());
    }

    #[test]
    fn records_and_lists() {
        let p = parse_props(
            ModuleTypeId::User,
            &s(&[
                "elements=[(kind: \"segment\", p1: (0,0), p2: (10,0)), (kind: \"circle\", center: (0,0), radius: 2.5)]",
            ]),
        )
        .unwrap();
        match &p["elements"] {
            PropertyValue::RecordList(r) => {
                assert_eq!(r.len(), 2);
                assert_eq!(r[0]["p2"], PropertyValue::Point(Point::new(10.0, 0.0)));
                assert_eq!(r[1]["radius"], PropertyValue::Real(2.5));
            }
            other => panic!("{other:?}"),
        }
        let p = parse_props(
            ModuleTypeId::Lightning,
            &s(&["rods=[(x: 0, y: 0, h: 10)]", "zone_class=B"]),
        )
        .unwrap();
        match &p["rods"] {
            PropertyValue::RecordList(r) => assert_eq!(r[0]["h"], PropertyValue::Integer(10)),
            other => panic!("{other:?}"),
        }
        let p = parse_props(ModuleTypeId::Valve, &s(&["attach=[((0,0),90)]"])).unwrap();
        assert_eq!(
            p["attach"],
            PropertyValue::AxisList(vec![Axis::new(Point::ORIGIN, 90.0)])
        );
    }

    #[test]
    fn inferred_kinds() {
        let r = parse_record(&s(&["a=1", "b=1.5", "c=(1,2)", "d=word", "e=true"])).unwrap();
        assert_eq!(r["a"], PropertyValue::Integer(1));
        assert_eq!(r["b"], PropertyValue::Real(1.5));
        assert_eq!(r["c"], PropertyValue::Point(Point::new(1.0, 2.0)));
        assert_eq!(r["d"], PropertyValue::text("word"));
        assert_eq!(r["e"], PropertyValue::Boolean(true));
    }
}
