//! JSON forms of nets and profiles.
//!
//! A net file looks like
//! `{"m":4,"d":3,"field":{"kind":"cyclotomic","k":3},"classes":[[[a,b,c], ...], ...]}`
//! where a coefficient is `"num/den"` over the rationals, an integer residue
//! over a prime field, and an array of `"num/den"` (powers of ζ) over a
//! cyclotomic field.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{format_rational, parse_rational, Field, FieldDescriptor, FieldElement};

use super::net::NetRealization;
use super::profile::MultiplicityProfile;
use super::projective::ProjLine;
use super::NetError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Residue(i64),
    Rational(String),
    Cyclotomic(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetFile {
    pub m: usize,
    pub d: usize,
    pub field: FieldDescriptor,
    pub classes: Vec<Vec<[Coefficient; 3]>>,
}

fn encode(e: &FieldElement) -> Coefficient {
    if let Some(q) = e.as_rational() {
        Coefficient::Rational(format_rational(q))
    } else if let Some(r) = e.residue() {
        Coefficient::Residue(r as i64)
    } else {
        Coefficient::Cyclotomic(e.coefficients().unwrap_or(&[]).iter().map(format_rational).collect())
    }
}

fn decode(field: &Field, c: &Coefficient) -> Result<FieldElement, NetError> {
    let mismatch = || {
        NetError::Format(format!("coefficient {c:?} does not match field {}", field.descriptor()))
    };
    Ok(match (field.descriptor(), c) {
        (FieldDescriptor::Rational, Coefficient::Rational(s)) => {
            field.from_rational(&parse_rational(s)?)?
        }
        (FieldDescriptor::Rational, Coefficient::Residue(v)) => field.from_i64(*v),
        (FieldDescriptor::Prime { .. }, Coefficient::Residue(v)) => field.from_residue(*v)?,
        (FieldDescriptor::Cyclotomic { .. }, Coefficient::Cyclotomic(v)) => field.from_coefficients(
            v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?,
        ),
        _ => return Err(mismatch()),
    })
}

impl NetFile {
    pub fn from_net(net: &NetRealization) -> NetFile {
        NetFile {
            m: net.m(),
            d: net.d(),
            field: net.field().descriptor(),
            classes: net
                .classes()
                .iter()
                .map(|c| c.iter().map(|l| l.coeffs().clone().map(|e| encode(&e))).collect())
                .collect(),
        }
    }

    pub fn into_net(&self) -> Result<NetRealization, NetError> {
        let field = Field::new(self.field)?;
        if self.classes.len() != self.m {
            return Err(NetError::Format(format!(
                "declared m = {} but {} classes given",
                self.m,
                self.classes.len()
            )));
        }
        if self.classes.first().map_or(0, Vec::len) != self.d {
            return Err(NetError::Format(format!("declared d = {} does not match class 0", self.d)));
        }
        let classes = self
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|coeffs| {
                        let [a, b, c] = coeffs;
                        ProjLine::new([decode(&field, a)?, decode(&field, b)?, decode(&field, c)?])
                    })
                    .collect::<Result<Vec<_>, NetError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        NetRealization::new(field, classes)
    }
}

pub fn net_from_json(text: &str) -> Result<NetRealization, NetError> {
    let file: NetFile = serde_json::from_str(text).map_err(|e| NetError::Format(e.to_string()))?;
    file.into_net()
}

pub fn net_to_json(net: &NetRealization) -> String {
    serde_json::to_string_pretty(&NetFile::from_net(net)).expect("net files serialize")
}

pub fn load_net(path: &Path) -> Result<NetRealization, NetError> {
    let text = std::fs::read_to_string(path).map_err(|e| NetError::Io(format!("{}: {e}", path.display())))?;
    net_from_json(&text)
}

pub fn profile_from_json(text: &str) -> Result<MultiplicityProfile, NetError> {
    serde_json::from_str(text).map_err(|e| NetError::Format(e.to_string()))
}

pub fn load_profile(path: &Path) -> Result<MultiplicityProfile, NetError> {
    let text = std::fs::read_to_string(path).map_err(|e| NetError::Io(format!("{}: {e}", path.display())))?;
    profile_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_geometry::{fermat_net, hesse_net, validate_net};

    #[test]
    fn round_trips_all_field_kinds() {
        for net in [
            hesse_net(&Field::cyclotomic(3).unwrap()).unwrap(),
            hesse_net(&Field::prime(7).unwrap()).unwrap(),
            fermat_net(4, &Field::prime(13).unwrap()).unwrap(),
        ] {
            let back = net_from_json(&net_to_json(&net)).unwrap();
            assert_eq!(back, net);
        }
    }

    #[test]
    fn rational_file() {
        // parses fine but is not a net
        let text = r#"{"m":3,"d":3,"field":{"kind":"rational"},
            "classes":[[["1/1","0/1","0/1"],["0","1","0"],["1","1","0"]],
                       [["1","0","-1"],["0","1","-1"],["1","1","-1"]],
                       [["1","0","-2"],["0","1","-2"],["1","1","-2"]]]}"#;
        let net = net_from_json(text).unwrap();
        assert_eq!(net.m(), 3);
        assert!(!validate_net(&net).valid);
    }

    #[test]
    fn format_errors() {
        let wrong_kind = r#"{"m":3,"d":3,"field":{"kind":"prime","p":7},"classes":[[["1/2","0","0"]]]}"#;
        assert!(matches!(net_from_json(wrong_kind), Err(NetError::Format(_))));
        let wrong_m = NetFile { m: 5, ..NetFile::from_net(&hesse_net(&Field::prime(7).unwrap()).unwrap()) };
        assert!(matches!(wrong_m.into_net(), Err(NetError::Format(_))));
        assert!(net_from_json("{").is_err());
    }
}
