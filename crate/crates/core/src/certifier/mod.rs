//! Classification of `(m, d)`-nets: the main inequality, the deletion
//! argument, and replayable certificates. The command-line front end lives
//! in [`cli`].

pub mod cli;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{is_prime, ArithError, Field, FieldDescriptor, FieldElement};
use crate::net_geometry::{fermat_net, hesse_net, pencil_rank, validate_net, NetError, NetRealization};
use crate::signature_engine::sigma_that;

pub use cli::run_cli;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("(m, d) = ({m}, {d}) is outside the domain of the inequality (need m >= 4, d >= m)")]
    Domain { m: u32, d: u32 },
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `((m−3)d − 3)(d − 1)`, which a net with `d >= m >= 4` would force to be
/// negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityOutcome {
    pub value: i64,
    pub nonexistent: bool,
}

pub fn main_inequality(m: u32, d: u32) -> Result<InequalityOutcome, CertError> {
    if m < 4 || d < m {
        return Err(CertError::Domain { m, d });
    }
    let (mi, di) = (m as i64, d as i64);
    let value = ((mi - 3) * di - 3) * (di - 1);
    assert_eq!(value, (mi - 3) * di * di - mi * di + 3, "expanded form");
    Ok(InequalityOutcome { value, nonexistent: value > 0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exists,
    ExistsUnique,
    Nonexistent,
    OutOfDomain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReasonKind {
    Computed,
    Cited,
}

/// Library call that reproduces a computed reason's value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Call {
    DomainCheck { m: u32, d: u32 },
    ValidateFermat { d: u32, field: FieldDescriptor },
    ValidateHesse { field: FieldDescriptor },
    HesseJoiningLines { field: FieldDescriptor },
    DeleteClass { m: u32, d: u32 },
    SigmaThat { m: u32, d: u32 },
    MainInequality { m: u32, d: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub kind: ReasonKind,
    pub statement: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub call: Option<Call>,
}

impl Reason {
    fn computed(statement: impl Into<String>, call: Call) -> Result<Reason, CertError> {
        Ok(Reason {
            kind: ReasonKind::Computed,
            statement: statement.into(),
            value: replay(&call)?,
            call: Some(call),
        })
    }

    fn cited(statement: impl Into<String>, value: impl Into<String>) -> Reason {
        Reason { kind: ReasonKind::Cited, statement: statement.into(), value: value.into(), call: None }
    }
}

/// A realization that passed validation. Only [`Witness::certify`] builds
/// one outside deserialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub construction: String,
    pub field: FieldDescriptor,
    pub base_points: usize,
    pub pencil_rank: usize,
    validated: bool,
}

impl Witness {
    pub fn certify(construction: impl Into<String>, net: &NetRealization) -> Option<Witness> {
        let report = validate_net(net);
        report.valid.then(|| Witness {
            construction: construction.into(),
            field: net.field().descriptor(),
            base_points: report.base_point_count,
            pencil_rank: pencil_rank(net),
            validated: true,
        })
    }

    pub fn validated(&self) -> bool {
        self.validated
    }

    /// Rebuilds the realization named by `construction` over `field`.
    pub fn rebuild(&self) -> Result<NetRealization, CertError> {
        let field = Field::new(self.field)?;
        match self.construction.as_str() {
            "hesse" => Ok(hesse_net(&field)?),
            other => {
                let d = other
                    .strip_prefix("fermat:")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| NetError::Format(format!("unknown construction {other}")))?;
                Ok(fermat_net(d, &field)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub m: u32,
    pub d: u32,
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Certificate {
    fn existence(m: u32, d: u32, unique: bool, witness: Witness, reasons: Vec<Reason>) -> Certificate {
        let verdict = if unique { Verdict::ExistsUnique } else { Verdict::Exists };
        Certificate { m, d, verdict, reasons, witness: Some(witness) }
    }

    /// Re-executes every computed reason and compares the recorded values.
    pub fn replay(&self) -> bool {
        self.reasons.iter().all(|r| match (r.kind, &r.call) {
            (ReasonKind::Computed, Some(call)) => replay(call).ok().as_deref() == Some(r.value.as_str()),
            (ReasonKind::Computed, None) => false,
            (ReasonKind::Cited, _) => true,
        }) && self.witness.as_ref().is_none_or(|w| {
            w.rebuild().map(|net| Witness::certify(w.construction.clone(), &net).as_ref() == Some(w)).unwrap_or(false)
        })
    }

    pub fn cited_count(&self) -> usize {
        self.reasons.iter().filter(|r| r.kind == ReasonKind::Cited).count()
    }
}

/// Field used for existence witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WitnessField {
    /// Smallest prime `p >= d + 2` with `p ≡ 1 (mod d)`.
    #[default]
    Prime,
    /// `Q(ζ_d)`.
    Cyclotomic,
}

pub fn witness_prime(d: u32) -> u64 {
    let d = d as u64;
    (d + 2..).find(|&p| (p - 1) % d == 0 && is_prime(p)).expect("primes 1 mod d exist")
}

pub fn witness_field(d: u32, kind: WitnessField) -> Result<Field, CertError> {
    Ok(match kind {
        WitnessField::Prime => Field::prime(witness_prime(d))?,
        WitnessField::Cyclotomic => Field::cyclotomic(d)?,
    })
}

fn validation_summary(net: &NetRealization) -> String {
    let report = validate_net(net);
    if report.valid {
        format!("valid, |X| = {}, pencil rank {}", report.base_point_count, pencil_rank(net))
    } else {
        format!("invalid, {} violations", report.violations.len())
    }
}

/// Lines through at least two base points of the Hesse net, and how many of
/// them belong to its classes.
fn hesse_joining_lines(field: &Field) -> Result<String, CertError> {
    let net = hesse_net(field)?;
    let points = net.base_points();
    let mut lines = std::collections::BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let [a, b, c] = p.coords();
            let [x, y, z] = q.coords();
            let coeffs: [FieldElement; 3] = [b * z - c * y, c * x - a * z, a * y - b * x];
            lines.insert(crate::net_geometry::ProjLine::new(coeffs)?);
        }
    }
    let in_net = lines.iter().filter(|l| net.classes().iter().flatten().any(|k| k == *l)).count();
    let rich = lines.iter().filter(|l| points.iter().filter(|p| l.contains(p)).count() == 3).count();
    Ok(format!("{} joining lines, {} with 3 points, {} in the net", lines.len(), rich, in_net))
}

/// Executes the call behind a computed reason.
pub fn replay(call: &Call) -> Result<String, CertError> {
    Ok(match *call {
        Call::DomainCheck { m, d } => {
            if m >= 3 && d >= 3 { "in-domain" } else { "out-of-domain" }.to_string()
        }
        Call::ValidateFermat { d, field } => validation_summary(&fermat_net(d, &Field::new(field)?)?),
        Call::ValidateHesse { field } => validation_summary(&hesse_net(&Field::new(field)?)?),
        Call::HesseJoiningLines { field } => hesse_joining_lines(&Field::new(field)?)?,
        Call::DeleteClass { m, d } => {
            if m <= 3 {
                return Err(NetError::CannotDelete { m: m as usize }.into());
            }
            format!("({}, {d})", m - 1)
        }
        Call::SigmaThat { m, d } => {
            let s = sigma_that(m, d);
            format!("sigma = {}, a = {}", s.sigma, s.a)
        }
        Call::MainInequality { m, d } => main_inequality(m, d)?.value.to_string(),
    })
}

fn deletions(m: u32, d: u32, target: u32) -> Result<Vec<Reason>, CertError> {
    (target + 1..=m)
        .rev()
        .map(|k| {
            Reason::computed(
                format!("deleting one class of a ({k}, {d})-net leaves a ({}, {d})-net", k - 1),
                Call::DeleteClass { m: k, d },
            )
        })
        .collect()
}

pub fn classify(m: u32, d: u32) -> Result<Certificate, CertError> {
    classify_with(m, d, WitnessField::Prime)
}

pub fn classify_with(m: u32, d: u32, kind: WitnessField) -> Result<Certificate, CertError> {
    let domain = Reason::computed("nets are defined for m >= 3 classes of d >= 3 lines", Call::DomainCheck { m, d })?;
    if m < 3 || d < 3 {
        return Ok(Certificate { m, d, verdict: Verdict::OutOfDomain, reasons: vec![domain], witness: None });
    }
    let mut reasons = vec![domain];
    if m == 3 {
        let field = witness_field(d, kind)?;
        let net = fermat_net(d, &field)?;
        reasons.push(Reason::computed(
            format!("the Fermat arrangement of degree {d} over {} is a (3, {d})-net", field.descriptor()),
            Call::ValidateFermat { d, field: field.descriptor() },
        )?);
        let witness = Witness::certify(format!("fermat:{d}"), &net).expect("Fermat net validates");
        return Ok(Certificate::existence(m, d, false, witness, reasons));
    }
    if (m, d) == (4, 3) {
        let field = witness_field(3, kind)?;
        let net = hesse_net(&field)?;
        reasons.push(Reason::computed(
            format!("the Hesse configuration over {} is a (4, 3)-net", field.descriptor()),
            Call::ValidateHesse { field: field.descriptor() },
        )?);
        reasons.push(Reason::cited(
            "every (4, 3)-net is projectively equivalent to the Hesse configuration",
            "unique",
        ));
        let witness = Witness::certify("hesse", &net).expect("Hesse net validates");
        return Ok(Certificate::existence(m, d, true, witness, reasons));
    }
    if d == 3 {
        reasons.extend(deletions(m, d, 5)?);
        let field = witness_field(3, kind)?.descriptor();
        reasons.push(Reason::computed(
            "every line through two Hesse base points is one of its 12 lines, so no fifth class fits",
            Call::HesseJoiningLines { field },
        )?);
        reasons.push(Reason::cited(
            "deleting a class of a (5, 3)-net leaves a (4, 3)-net, which must be the Hesse configuration",
            "unique",
        ));
        return Ok(Certificate { m, d, verdict: Verdict::Nonexistent, reasons, witness: None });
    }
    reasons.extend(deletions(m, d, 4)?);
    reasons.push(Reason::computed(
        format!("the complement of 4 fibers has negative signature since {d} > 3, so a >= 1"),
        Call::SigmaThat { m: 4, d },
    )?);
    let outcome = main_inequality(4, d)?;
    reasons.push(Reason::computed(
        format!("((m-3)d - 3)(d - 1) at (4, {d}) is positive, but a (4, {d})-net forces it negative"),
        Call::MainInequality { m: 4, d },
    )?);
    assert!(outcome.nonexistent);
    Ok(Certificate { m, d, verdict: Verdict::Nonexistent, reasons, witness: None })
}

/// All cells `3 <= m <= m_max`, `3 <= d <= d_max`, sorted by `(m, d)`.
pub fn table(m_max: u32, d_max: u32, kind: WitnessField) -> Result<Vec<Certificate>, CertError> {
    let cells: Vec<(u32, u32)> = (3..=m_max).flat_map(|m| (3..=d_max).map(move |d| (m, d))).collect();
    let mut out = cells
        .into_par_iter()
        .map(|(m, d)| classify_with(m, d, kind))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by_key(|c| (c.m, c.d));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inequality_examples() {
        assert_eq!(main_inequality(4, 4).unwrap(), InequalityOutcome { value: 3, nonexistent: true });
        assert_eq!(main_inequality(5, 5).unwrap().value, 28);
        assert_eq!(main_inequality(4, 7).unwrap().value, 24);
        assert_eq!(main_inequality(4, 5).unwrap().value, 8);
        assert_eq!(main_inequality(4, 3), Err(CertError::Domain { m: 4, d: 3 }));
        assert!(main_inequality(3, 5).is_err());
    }

    #[test]
    fn witness_primes() {
        assert_eq!(witness_prime(17), 103);
        assert_eq!(witness_prime(3), 7);
        assert_eq!(witness_prime(4), 13);
    }

    #[test]
    fn small_cases() {
        let c = classify(3, 17).unwrap();
        assert_eq!(c.verdict, Verdict::Exists);
        let w = c.witness.as_ref().unwrap();
        assert!(w.validated() && w.base_points == 289);
        assert_eq!(w.field, FieldDescriptor::Prime { p: 103 });

        let c = classify(4, 3).unwrap();
        assert_eq!((c.verdict, c.cited_count()), (Verdict::ExistsUnique, 1));

        let c = classify(4, 7).unwrap();
        assert_eq!(c.verdict, Verdict::Nonexistent);
        assert_eq!(c.reasons.last().unwrap().value, "24");

        let c = classify(6, 4).unwrap();
        let ops: Vec<_> = c.reasons.iter().filter_map(|r| r.call.clone()).collect();
        assert_eq!(ops[1], Call::DeleteClass { m: 6, d: 4 });
        assert_eq!(ops[2], Call::DeleteClass { m: 5, d: 4 });
        assert_eq!(c.reasons.last().unwrap().value, "3");

        let c = classify(7, 3).unwrap();
        assert_eq!((c.verdict, c.cited_count()), (Verdict::Nonexistent, 1));
        assert!(c.reasons.iter().any(|r| r.value == "12 joining lines, 12 with 3 points, 12 in the net"));

        for (m, d) in [(2, 5), (5, 2), (0, 0)] {
            assert_eq!(classify(m, d).unwrap().verdict, Verdict::OutOfDomain);
        }
    }

    #[test]
    fn cyclotomic_witness() {
        let c = classify_with(3, 5, WitnessField::Cyclotomic).unwrap();
        assert_eq!(c.witness.as_ref().unwrap().field, FieldDescriptor::Cyclotomic { k: 5 });
        assert!(c.replay());
    }

    #[test]
    fn grid_replays_and_round_trips() {
        for c in table(7, 7, WitnessField::Prime).unwrap() {
            let exists = c.m == 3 || (c.m, c.d) == (4, 3);
            assert_eq!(c.witness.is_some(), exists);
            assert!(c.replay(), "{c:?}");
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), c);
        }
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut c = classify(5, 5).unwrap();
        c.reasons.last_mut().unwrap().value = "-1".into();
        assert!(!c.replay());
    }
}
