//! The `check` command: pick a decider, run it, and map the verdict to an
//! exit code.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use frame_equiv::{
    angle_equivalent, ip_equivalent, oracle_verdict, Decision, Frame, OracleConfig, Verdict,
};

use crate::error::{exit, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Angle test in `R^2`, otherwise the inner-product test escalated to
    /// the oracle when it cannot certify a match and `k` is small.
    Auto,
    Angle,
    InnerProduct,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Angle => "angle",
            Method::InnerProduct => "innerprod",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "angle" => Ok(Method::Angle),
            "innerprod" | "ip" => Ok(Method::InnerProduct),
            "oracle" => Ok(Method::Oracle),
            other => Err(format!("unknown method {other:?}; expected auto, angle, innerprod or oracle")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// Deciders that ran, in order.
    pub path: Vec<Method>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn exit_code(&self) -> u8 {
        decision_exit_code(self.verdict.decision)
    }
}

pub fn decision_exit_code(decision: Decision) -> u8 {
    match decision {
        Decision::Equivalent => exit::EQUIVALENT,
        Decision::NotEquivalent => exit::NOT_EQUIVALENT,
        Decision::LikelyEquivalent => exit::LIKELY_EQUIVALENT,
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<&str> = self.path.iter().map(|m| m.as_str()).collect();
        writeln!(f, "verdict: {}", self.verdict.decision)?;
        writeln!(f, "certificate: {}", self.verdict.certificate)?;
        writeln!(f, "method: {}", path.join(" -> "))?;
        if let Some(note) = &self.verdict.note {
            writeln!(f, "note: {note}")?;
        }
        if self.verdict.witness.is_some() {
            writeln!(f, "witness: found")?;
        }
        write!(f, "elapsed_micros: {}", self.elapsed.as_micros())
    }
}

/// Decides whether `f` and `g` are equivalent with the requested method.
pub fn check(f: &Frame, g: &Frame, method: Method, tol: f64) -> Result<CheckReport> {
    let oracle_cfg = OracleConfig {
        tol,
        ..OracleConfig::default()
    };
    let start = Instant::now();
    let (verdict, path) = match method {
        Method::Angle => (angle_equivalent(f, g, tol)?, vec![Method::Angle]),
        Method::InnerProduct => (ip_equivalent(f, g, tol)?, vec![Method::InnerProduct]),
        Method::Oracle => (oracle_verdict(f, g, &oracle_cfg)?, vec![Method::Oracle]),
        Method::Auto if f.dim() == 2 => (angle_equivalent(f, g, tol)?, vec![Method::Angle]),
        Method::Auto => {
            let ip = ip_equivalent(f, g, tol)?;
            if ip.decision == Decision::LikelyEquivalent && f.count() <= oracle_cfg.max_count {
                (
                    oracle_verdict(f, g, &oracle_cfg)?,
                    vec![Method::InnerProduct, Method::Oracle],
                )
            } else {
                (ip, vec![Method::InnerProduct])
            }
        }
    };
    Ok(CheckReport {
        verdict,
        path,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use frame_equiv::corpus::{frame_pair, PairKind};
    use frame_equiv::Certificate;

    #[test]
    fn auto_routing() {
        let p = frame_pair(2, 6, PairKind::Constructed, 1).unwrap();
        let r = check(&p.f, &p.g, Method::Auto, 1e-9).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.verdict.certificate, Certificate::AngleCanonical);

        let p = frame_pair(3, 5, PairKind::Constructed, 2).unwrap();
        let r = check(&p.f, &p.g, Method::Auto, 1e-9).unwrap();
        assert_eq!(r.path, vec![Method::InnerProduct, Method::Oracle]);
        assert_eq!(r.verdict.certificate, Certificate::OracleWitness);
        assert_eq!(r.exit_code(), 0);

        let p = frame_pair(5, 20, PairKind::Constructed, 3).unwrap();
        let r = check(&p.f, &p.g, Method::Auto, 1e-9).unwrap();
        assert_eq!(r.path, vec![Method::InnerProduct]);
        assert_eq!(r.verdict.certificate, Certificate::Conjecture1);
        assert_eq!(r.exit_code(), 2);

        let p = frame_pair(3, 5, PairKind::Independent, 4).unwrap();
        let r = check(&p.f, &p.g, Method::Auto, 1e-9).unwrap();
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.path, vec![Method::InnerProduct]);
    }

    #[test]
    fn method_errors_map_to_usage() {
        let p = frame_pair(3, 4, PairKind::Constructed, 5).unwrap();
        let err = check(&p.f, &p.g, Method::Angle, 1e-9).unwrap_err();
        assert_eq!(err.exit_code(), exit::USAGE);
        let p = frame_pair(3, 9, PairKind::Constructed, 5).unwrap();
        let err = check(&p.f, &p.g, Method::Oracle, 1e-9).unwrap_err();
        assert_eq!(err.exit_code(), exit::USAGE);
    }

    #[test]
    fn report_text() {
        let p = frame_pair(2, 3, PairKind::Independent, 8).unwrap();
        let r = check(&p.f, &p.g, Method::InnerProduct, 1e-9).unwrap();
        let text = r.to_string();
        assert!(text.starts_with("verdict: not-equivalent\ncertificate: abs-gram-mismatch\n"), "{text}");
        assert!(text.contains("elapsed_micros: "));
        assert_eq!("ip".parse::<Method>().unwrap(), Method::InnerProduct);
        assert!("fast".parse::<Method>().is_err());
    }
}
