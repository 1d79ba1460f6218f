//! Pass/fail reports shared by every verifier in the crate.

use crate::rat::Rational;
use serde_json::{json, Value};
use std::fmt;

/// Outcome of checking one identity instance as a truncated-series (or
/// exact scalar) equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    /// The instance parameter, where the identity family has one.
    pub n: Option<u32>,
    /// Truncation order in quarter-exponent units (0 for scalar checks).
    pub order: usize,
    pub pass: bool,
    /// Present exactly when the check failed.
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Quarter-exponent of the first differing coefficient.
    pub e: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl VerificationReport {
    pub fn pass(id: &str, n: Option<u32>, order: usize) -> Self {
        VerificationReport {
            id: id.to_string(),
            n,
            order,
            pass: true,
            first_mismatch: None,
        }
    }

    pub fn fail(
        id: &str,
        n: Option<u32>,
        order: usize,
        e: usize,
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        VerificationReport {
            id: id.to_string(),
            n,
            order,
            pass: false,
            first_mismatch: Some(Mismatch { e, lhs, rhs }),
        }
    }

    /// Compare two series and report the first mismatching coefficient.
    pub fn from_series(id: &str, n: Option<u32>, lhs: &crate::qx::QX, rhs: &crate::qx::QX) -> Self {
        let order = lhs.order().min(rhs.order());
        match lhs.first_mismatch(rhs) {
            None => VerificationReport::pass(id, n, order),
            Some(e) => VerificationReport::fail(
                id,
                n,
                order,
                e,
                lhs.coeff(e).clone(),
                rhs.coeff(e).clone(),
            ),
        }
    }

    pub fn to_json(&self) -> Value {
        let mismatch = self.first_mismatch.as_ref().map(|m| {
            json!({
                "e": m.e,
                "lhs": format!("{}/{}", m.lhs.numer(), m.lhs.denom()),
                "rhs": format!("{}/{}", m.rhs.numer(), m.rhs.denom()),
            })
        });
        json!({
            "id": self.id,
            "n": self.n,
            "order_quarter": self.order,
            "status": if self.pass { "pass" } else { "fail" },
            "first_mismatch": mismatch,
        })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let id = v["id"].as_str()?.to_string();
        let n = v["n"].as_u64().map(|x| x as u32);
        let order = v["order_quarter"].as_u64()? as usize;
        let pass = v["status"].as_str()? == "pass";
        let first_mismatch = if v["first_mismatch"].is_null() {
            None
        } else {
            let m = &v["first_mismatch"];
            Some(Mismatch {
                e: m["e"].as_u64()? as usize,
                lhs: crate::qx::parse_rational(m["lhs"].as_str()?)?,
                rhs: crate::qx::parse_rational(m["rhs"].as_str()?)?,
            })
        };
        Some(VerificationReport {
            id,
            n,
            order,
            pass,
            first_mismatch,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.id)?;
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        if self.order > 0 {
            write!(f, " order={}", self.order)?;
        }
        if let Some(m) = &self.first_mismatch {
            write!(
                f,
                " first mismatch at e={} lhs={} rhs={}",
                m.e, m.lhs, m.rhs
            )?;
        }
        Ok(())
    }
}
