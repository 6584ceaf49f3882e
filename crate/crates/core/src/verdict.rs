//! End-to-end verdicts: point scheme, type, both orders of σ, and the
//! fat-point and finiteness questions they decide.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{PointScheme, QuadraticAlgebra};
use crate::classify::TypeLabel;
use crate::error::{Error, Result};
use crate::order::{Caps, OrderEngine, OrderReport};
use crate::order_result::OrderResult;

/// A three-valued answer; serialized as `true`, `false` or `"unknown"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn from_option(b: Option<bool>) -> Self {
        match b {
            Some(true) => Tri::True,
            Some(false) => Tri::False,
            None => Tri::Unknown,
        }
    }

    pub fn as_option(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Unknown => None,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Unknown => "unknown",
        })
    }
}

impl Serialize for Tri {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_option() {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("unknown"),
        }
    }
}

/// Verdict rules, cited by id in every report.
pub mod rules {
    /// Fat points exist exactly when `1 < ‖σ‖ < ∞`.
    pub const FAT_POINT: &str = "fat-point.norm-between";
    /// The noncommutative projective scheme is finite over its center iff `‖σ‖ < ∞`.
    pub const PROJ_CENTER: &str = "center.proj-iff-norm-finite";
    /// The algebra is finite over its center iff `|σ| < ∞`.
    pub const ALGEBRA_CENTER: &str = "center.algebra-iff-order-finite";
    /// Vanishing second Hessian of the point scheme rules out finiteness over the center.
    pub const SECOND_HESSIAN: &str = "hessian.second-zero";
    /// Simple 2-regular Beilinson modules and closed points of E.
    pub const BEILINSON: &str = "beilinson.closed-points";
}

#[derive(Clone, Debug)]
pub struct VerdictReport {
    pub type_label: TypeLabel,
    pub point_scheme: PointScheme,
    pub sigma_norm: OrderReport,
    pub sigma_order: OrderReport,
    pub has_fat_point: Tri,
    pub proj_finite_over_center: Tri,
    pub algebra_finite_over_center: Tri,
    /// `None` when the point scheme is all of P².
    pub second_hessian_zero: Option<bool>,
    pub beilinson_parameterization: String,
    pub citations: Vec<String>,
    /// AS-regularity of the input is assumed, not checked.
    pub assumed_regular: bool,
}

fn fat_point(norm: &OrderResult) -> Tri {
    match norm {
        OrderResult::Exact { value } => Tri::from_option(Some(*value >= 2)),
        OrderResult::CertifiedInfinite { .. } => Tri::False,
        OrderResult::Unknown { .. } => Tri::Unknown,
    }
}

fn beilinson_text(label: TypeLabel, fat: Tri) -> String {
    let space = if label == TypeLabel::P { "P2" } else { "E in P2" };
    match fat {
        Tri::False => format!(
            "simple 2-regular modules over the Beilinson algebra correspond bijectively to the closed points of {space}"
        ),
        Tri::True => "fat points exist, so simple 2-regular modules over the Beilinson algebra are not exhausted by the closed points of E".into(),
        Tri::Unknown => "undetermined: ‖σ‖ was not decided within the caps".into(),
    }
}

/// Runs the whole pipeline on one algebra.
pub fn verdict(alg: &QuadraticAlgebra, caps: Caps) -> Result<VerdictReport> {
    let stage = |s: &'static str| move |e: Error| attribute(e, s);
    let point_scheme = alg.point_scheme();
    let engine = OrderEngine::new(alg, caps).map_err(stage("classification"))?;
    let sigma_norm = engine.sigma_norm().map_err(stage("sigma_norm"))?;
    let sigma_order = engine.sigma_order().map_err(stage("sigma_order"))?;
    let type_label = engine.type_label();
    let second_hessian_zero = match point_scheme.cubic() {
        Some(g) => Some(g.second_hessian_is_zero().map_err(stage("hessian"))?),
        None => None,
    };
    if let Some(h) = second_hessian_zero {
        if h != type_label.second_hessian_vanishes() {
            return Err(Error::Invariant(format!(
                "second Hessian test disagrees with type {type_label}"
            )));
        }
    }
    let has_fat_point = fat_point(&sigma_norm.result);
    let proj_finite_over_center = Tri::from_option(sigma_norm.result.is_finite());
    let mut algebra_finite_over_center = Tri::from_option(sigma_order.result.is_finite());
    let mut citations = vec![
        sigma_norm.rule.id().to_string(),
        sigma_order.rule.id().to_string(),
        rules::FAT_POINT.to_string(),
        rules::PROJ_CENTER.to_string(),
        rules::ALGEBRA_CENTER.to_string(),
    ];
    if second_hessian_zero == Some(true) {
        citations.push(rules::SECOND_HESSIAN.to_string());
        match algebra_finite_over_center {
            Tri::True => {
                return Err(Error::Invariant(
                    "finite over the center although the second Hessian vanishes".into(),
                ))
            }
            Tri::Unknown => algebra_finite_over_center = Tri::False,
            Tri::False => {}
        }
    }
    citations.push(rules::BEILINSON.to_string());
    citations.dedup();
    Ok(VerdictReport {
        type_label,
        point_scheme,
        beilinson_parameterization: beilinson_text(type_label, has_fat_point),
        sigma_norm,
        sigma_order,
        has_fat_point,
        proj_finite_over_center,
        algebra_finite_over_center,
        second_hessian_zero,
        citations,
        assumed_regular: true,
    })
}

fn attribute(e: Error, stage: &str) -> Error {
    match e {
        Error::Invariant(m) => Error::Invariant(format!("{stage}: {m}")),
        other => other,
    }
}

/// Verdicts for several algebras, computed on separate threads; output order matches input.
pub fn verdict_many(algs: &[QuadraticAlgebra], caps: Caps) -> Vec<Result<VerdictReport>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = algs
            .iter()
            .map(|a| s.spawn(move || verdict(a, caps)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(Error::Invariant("verdict worker panicked".into())))
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldExt, NumberField};
    use crate::table1::{omega_field, zeta6_field, RowType, Table1Row};

    #[test]
    fn s1_sixth_root() {
        let k = zeta6_field();
        let a = Table1Row::new(RowType::S1, &k, Some(k.generator()), None).unwrap().algebra();
        let r = verdict(&a, Caps::default()).unwrap();
        assert_eq!(r.type_label, TypeLabel::S);
        assert_eq!(r.sigma_norm.result, OrderResult::exact(2));
        assert_eq!(r.has_fat_point, Tri::True);
        assert_eq!(r.proj_finite_over_center, Tri::True);
        assert_eq!(r.algebra_finite_over_center, Tri::True);
    }

    #[test]
    fn cusp_and_plane() {
        let q = NumberField::rationals();
        let cc = Table1Row::new(RowType::CC, &q, None, None).unwrap().algebra();
        let r = verdict(&cc, Caps::default()).unwrap();
        assert_eq!(r.has_fat_point, Tri::False);
        assert_eq!(r.proj_finite_over_center, Tri::False);
        assert_eq!(r.algebra_finite_over_center, Tri::False);
        assert_eq!(r.second_hessian_zero, Some(true));
        let w = omega_field();
        let p = Table1Row::new(RowType::P, &w, Some(w.generator()), None).unwrap().algebra();
        let r = verdict(&p, Caps::default()).unwrap();
        assert_eq!(r.sigma_norm.result, OrderResult::exact(1));
        assert_eq!(r.has_fat_point, Tri::False);
        assert_eq!(r.proj_finite_over_center, Tri::True);
        assert_eq!(r.second_hessian_zero, None);
        assert!(r.beilinson_parameterization.contains("closed points of P2"));
    }

    #[test]
    fn tri_json() {
        assert_eq!(serde_json::to_string(&Tri::True).unwrap(), "true");
        assert_eq!(serde_json::to_string(&Tri::Unknown).unwrap(), "\"unknown\"");
    }
}
