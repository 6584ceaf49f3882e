//! Three-valued answers for orders of automorphisms and points.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfinityReason {
    /// A multiplier is not a root of unity.
    NonRootOfUnity,
    /// Infinite for every algebra of the classified type.
    TypeRule,
    /// A nontrivial unipotent (translation) part survives every power.
    AdditiveUnipotent,
}

impl fmt::Display for InfinityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfinityReason::NonRootOfUnity => "NonRootOfUnity",
            InfinityReason::TypeRule => "TypeRule",
            InfinityReason::AdditiveUnipotent => "AdditiveUnipotent",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderResult {
    Exact { value: u64 },
    CertifiedInfinite { reason: InfinityReason },
    Unknown { cap: u64 },
}

impl OrderResult {
    pub fn exact(n: u64) -> Self {
        OrderResult::Exact { value: n }
    }

    pub fn infinite(reason: InfinityReason) -> Self {
        OrderResult::CertifiedInfinite { reason }
    }

    pub fn unknown(cap: u64) -> Self {
        OrderResult::Unknown { cap }
    }

    pub fn as_exact(&self) -> Option<u64> {
        match self {
            OrderResult::Exact { value } => Some(*value),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> Option<bool> {
        match self {
            OrderResult::Exact { .. } => Some(true),
            OrderResult::CertifiedInfinite { .. } => Some(false),
            OrderResult::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Exact { value } => write!(f, "Exact({value})"),
            OrderResult::CertifiedInfinite { reason } => write!(f, "CertifiedInfinite({reason})"),
            OrderResult::Unknown { cap } => write!(f, "Unknown({cap})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&OrderResult::exact(2)).unwrap();
        assert_eq!(s, r#"{"kind":"exact","value":2}"#);
        let s = serde_json::to_string(&OrderResult::infinite(InfinityReason::TypeRule)).unwrap();
        assert_eq!(s, r#"{"kind":"certified_infinite","reason":"type_rule"}"#);
        let back: OrderResult = serde_json::from_str(r#"{"kind":"unknown","cap":60}"#).unwrap();
        assert_eq!(back, OrderResult::unknown(60));
    }
}
