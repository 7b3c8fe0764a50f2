//! JSON encodings. Rationals are always `"num/den"` strings.

use dioph_core::double_eq::ReducedPoint;
use dioph_core::surface::WitnessRule;
use dioph_core::{CurvePoint, MultiPoly, Problem, Rat, RatPoint, SurfaceModel};
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
#[error("malformed model document: {0}")]
pub struct ModelError(String);

fn bad(msg: impl Into<String>) -> ModelError {
    ModelError(msg.into())
}

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rats(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

pub fn point(p: &RatPoint) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), rat(v))).collect())
}

/// Coordinates listed in `order` first, then any others alphabetically.
pub fn point_in(p: &RatPoint, order: &[String]) -> Value {
    let mut m = Map::new();
    for v in order {
        if let Some(x) = p.get(v) {
            m.insert(v.clone(), rat(x));
        }
    }
    for (k, v) in p.iter() {
        if !m.contains_key(k) {
            m.insert(k.clone(), rat(v));
        }
    }
    Value::Object(m)
}

pub fn curve_point(p: &CurvePoint) -> Value {
    let projective: Vec<Value> = p.coords().iter().map(|c| Value::String(c.to_string())).collect();
    let affine = match p.affine() {
        Ok((x, u, v)) => json!({ "x": rat(&x), "u": rat(&u), "v": rat(&v) }),
        Err(_) => Value::Null,
    };
    json!({ "projective": projective, "affine": affine })
}

pub fn reduced_point(p: &ReducedPoint) -> Value {
    json!({ "coords": p.coords, "prime": p.prime, "display": p.to_string() })
}

fn poly(p: &MultiPoly) -> Value {
    let terms: Map<String, Value> = p
        .terms()
        .map(|(exps, c)| {
            let key = exps.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            (key, rat(c))
        })
        .collect();
    Value::Object(terms)
}

pub fn model(m: &SurfaceModel) -> Value {
    let constants: Map<String, Value> = m.constants.iter().map(|(k, v)| (k.clone(), rat(v))).collect();
    let witnesses: Vec<Value> = m
        .witnesses
        .iter()
        .map(|w| json!({ "var": w.var, "degree": w.degree, "expr": poly(&w.expr) }))
        .collect();
    json!({
        "name": m.name.as_str(),
        "variables": m.variables,
        "weights": m.weights,
        "constants": constants,
        "equations": m.equations.iter().map(poly).collect::<Vec<_>>(),
        "witnesses": witnesses,
    })
}

fn parse_rat(v: &Value) -> Result<Rat, ModelError> {
    let s = v.as_str().ok_or_else(|| bad("rational must be a string"))?;
    s.parse().map_err(|e| bad(format!("{e}")))
}

fn parse_poly(vars: &[String], v: &Value) -> Result<MultiPoly, ModelError> {
    let obj = v.as_object().ok_or_else(|| bad("polynomial must be an object"))?;
    let mut terms = Vec::with_capacity(obj.len());
    for (key, c) in obj {
        let exps = key
            .split(',')
            .map(|e| e.trim().parse::<u32>().map_err(|_| bad(format!("bad exponent key {key:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        terms.push((exps, parse_rat(c)?));
    }
    MultiPoly::from_terms(vars.to_vec(), terms).map_err(|e| bad(e.to_string()))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, ModelError> {
    v.get(name).ok_or_else(|| bad(format!("missing field {name:?}")))
}

fn array<'a>(v: &'a Value, name: &str) -> Result<&'a Vec<Value>, ModelError> {
    field(v, name)?.as_array().ok_or_else(|| bad(format!("{name} must be an array")))
}

pub fn model_from_json(v: &Value) -> Result<SurfaceModel, ModelError> {
    let name: Problem = field(v, "name")?
        .as_str()
        .ok_or_else(|| bad("name must be a string"))?
        .parse()
        .map_err(|e: dioph_core::Error| bad(e.to_string()))?;
    let variables = array(v, "variables")?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("variable names must be strings")))
        .collect::<Result<Vec<_>, _>>()?;
    let weights = array(v, "weights")?
        .iter()
        .map(|w| w.as_u64().and_then(|w| u32::try_from(w).ok()).ok_or_else(|| bad("weights must be small integers")))
        .collect::<Result<Vec<_>, _>>()?;
    let constants = field(v, "constants")?
        .as_object()
        .ok_or_else(|| bad("constants must be an object"))?
        .iter()
        .map(|(k, c)| Ok((k.clone(), parse_rat(c)?)))
        .collect::<Result<_, ModelError>>()?;
    let equations = array(v, "equations")?
        .iter()
        .map(|e| parse_poly(&variables, e))
        .collect::<Result<Vec<_>, _>>()?;
    let witnesses = array(v, "witnesses")?
        .iter()
        .map(|w| {
            let var = field(w, "var")?.as_str().ok_or_else(|| bad("witness var must be a string"))?.to_string();
            let degree = field(w, "degree")?
                .as_u64()
                .and_then(|d| u32::try_from(d).ok())
                .ok_or_else(|| bad("witness degree must be a small integer"))?;
            Ok(WitnessRule { var, degree, expr: parse_poly(&variables, field(w, "expr")?)? })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    let model = SurfaceModel { name, variables, weights, constants, equations, witnesses };
    model.validate().map_err(|e| bad(e.to_string()))?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rat(&Rat::frac(6, -4)), json!("-3/2"));
        assert_eq!(rat(&Rat::from(7)), json!("7"));
    }

    #[test]
    fn model_round_trip() {
        for problem in Problem::ALL {
            let m = SurfaceModel::new(problem);
            let doc = model(&m);
            assert_eq!(model_from_json(&doc).unwrap(), m, "{problem}");
        }
        let m = SurfaceModel::iv32(Rat::frac(7, 2));
        assert_eq!(model_from_json(&model(&m)).unwrap(), m);
    }

    #[test]
    fn exponent_keys() {
        let doc = model(&SurfaceModel::new(Problem::II20));
        let eq = &doc["equations"][0];
        assert_eq!(eq["2,0,0,0"], json!("1"));
        assert_eq!(eq["0,0,2,0"], json!("-1"));
    }

    #[test]
    fn rejects_malformed_documents() {
        let mut doc = model(&SurfaceModel::new(Problem::II20));
        doc["equations"][0] = json!({ "2,0": "1" });
        assert!(model_from_json(&doc).is_err());
        assert!(model_from_json(&json!({ "name": "II20" })).is_err());
    }
}
