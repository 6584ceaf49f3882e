//! JSON formats: algebra files in, reports out. Object keys are emitted in
//! sorted order so equal inputs give byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{PointScheme, QuadraticAlgebra};
use crate::classify::CubicClassification;
use crate::error::{Error, Result};
use crate::field::{FieldRef, NumberField};
use crate::form::TernaryForm;
use crate::hesse::HessePoint;
use crate::order::{OrderReport, ProjectiveMap};
use crate::parse::parse_qpoly;
use crate::point::ProjPoint;
use crate::verdict::VerdictReport;

/// `{}` for Q, otherwise the generator name and its minimal polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_poly: Option<String>,
}

impl FieldSpec {
    pub fn of(k: &FieldRef) -> Self {
        if k.is_rationals() {
            return FieldSpec::default();
        }
        FieldSpec {
            generator: Some(k.name().to_string()),
            min_poly: Some(k.min_poly().display_with(k.name())),
        }
    }

    pub fn build(&self) -> Result<FieldRef> {
        match (&self.generator, &self.min_poly) {
            (None, None) => Ok(NumberField::rationals()),
            (Some(g), Some(m)) => {
                if g.is_empty() || !g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(Error::InvalidInput(format!("bad generator name {g:?}")));
                }
                if ["x", "y", "z"].contains(&g.as_str()) {
                    return Err(Error::InvalidInput(format!(
                        "generator name {g:?} clashes with a variable"
                    )));
                }
                NumberField::new(g, parse_qpoly(m, g)?)
            }
            _ => Err(Error::InvalidInput(
                "field needs both \"generator\" and \"min_poly\", or neither".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub relations: Vec<String>,
}

impl AlgebraFile {
    pub fn of(alg: &QuadraticAlgebra) -> Self {
        AlgebraFile {
            field: FieldSpec::of(alg.field()),
            relations: alg.relation_strings().to_vec(),
        }
    }

    pub fn build(&self) -> Result<QuadraticAlgebra> {
        let k = self.field.build()?;
        QuadraticAlgebra::from_relations(&k, &self.relations)
    }
}

pub fn algebra_from_json(src: &str) -> Result<QuadraticAlgebra> {
    let f: AlgebraFile =
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("algebra file: {e}")))?;
    f.build()
}

pub fn algebra_to_json(alg: &QuadraticAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::of(alg)).expect("serializable")
}

pub fn load_algebra(path: &std::path::Path) -> Result<QuadraticAlgebra> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    algebra_from_json(&src)
}

fn point(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(|c| Value::String(c.to_string())).collect())
}

fn form(f: &TernaryForm) -> Value {
    Value::String(f.to_string())
}

pub fn matrix_json(t: &ProjectiveMap) -> Value {
    json!(t.rows())
}

pub fn point_scheme_json(ps: &PointScheme) -> Value {
    match ps {
        PointScheme::P2 => Value::String("P2".into()),
        PointScheme::Cubic(g) => form(g),
    }
}

pub fn order_report_json(r: &OrderReport) -> Value {
    let mut v = json!({
        "result": r.result,
        "rule": r.rule.id(),
    });
    if let Some(t) = &r.witness {
        v["witness"] = matrix_json(t);
        v["witness_field"] = json!(FieldSpec::of(t.field()));
    }
    v
}

pub fn classification_json(c: &CubicClassification) -> Value {
    let components: Vec<Value> = c
        .components
        .iter()
        .map(|comp| {
            json!({
                "equation": form(&comp.equation),
                "kind": comp.kind,
                "multiplicity": comp.multiplicity,
                "parametrization": comp.parametrization.as_ref().map(|p| p.to_string()),
            })
        })
        .collect();
    let singular: Vec<Value> = c
        .singular_points
        .iter()
        .map(|s| {
            json!({
                "point": point(&s.point),
                "multiplicity": s.multiplicity,
                "tangent_cone": form(&s.tangent_cone.form),
                "cone_kind": s.tangent_cone.kind,
            })
        })
        .collect();
    let mut v = json!({
        "type": c.type_label,
        "cubic": form(&c.cubic),
        "field": FieldSpec::of(&c.field),
        "components": components,
        "singular_points": singular,
    });
    if let Some(l) = &c.hesse_lambda {
        v["hesse_lambda"] = Value::String(l.to_string());
    }
    v
}

pub fn verdict_json(r: &VerdictReport) -> Value {
    json!({
        "type_label": r.type_label,
        "point_scheme": point_scheme_json(&r.point_scheme),
        "sigma_norm": order_report_json(&r.sigma_norm),
        "sigma_order": order_report_json(&r.sigma_order),
        "has_fat_point": r.has_fat_point,
        "proj_finite_over_center": r.proj_finite_over_center,
        "algebra_finite_over_center": r.algebra_finite_over_center,
        "second_hessian_zero": match r.second_hessian_zero {
            Some(b) => json!(b),
            None => json!("not-applicable"),
        },
        "beilinson_parameterization": r.beilinson_parameterization,
        "citations": r.citations,
        "assumed_regular": r.assumed_regular,
    })
}

pub fn hesse_point_json(p: &HessePoint) -> Value {
    point(p.point())
}

pub fn point_json(p: &ProjPoint) -> Value {
    point(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table1::{omega_field, RowType, Table1Row};
    use crate::field::FieldExt;

    #[test]
    fn algebra_roundtrip() {
        let w = omega_field();
        let a = Table1Row::new(RowType::P, &w, Some(w.generator()), None).unwrap().algebra();
        let s = algebra_to_json(&a);
        assert!(s.contains("\"min_poly\": \"w^2 + w + 1\""));
        assert_eq!(algebra_from_json(&s).unwrap(), a);
    }

    #[test]
    fn rational_field_is_empty_object() {
        let a = algebra_from_json(r#"{"field": {}, "relations": ["yz - 2zy", "zx - 2xz", "xy - 2yx"]}"#)
            .unwrap();
        assert!(algebra_to_json(&a).contains("\"field\": {}"));
        assert!(algebra_from_json(r#"{"relations": ["yz"]}"#).is_err());
        assert!(algebra_from_json(r#"{"field": {"generator": "w"}, "relations": []}"#).is_err());
        assert!(algebra_from_json("not json").is_err());
    }
}
