//! Input documents.

use std::path::Path;

use cliffconic::catalog::QuadricNet;
use cliffconic::exactpoly::{parse_poly, Domain, Matrix, Poly, PolyMatrix};
use cliffconic::qform::{QForm, BASE_NAMES, BASE_VARS};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainSpec {
    Named(String),
    Prime { prime: u64 },
}

impl DomainSpec {
    pub fn resolve(&self) -> Result<Domain, CliError> {
        match self {
            DomainSpec::Named(s) if s == "rational" => Ok(Domain::Rational),
            DomainSpec::Named(s) => Err(CliError::Input(format!(
                "scalar_domain must be \"rational\" or {{\"prime\": p}}, got \"{s}\""
            ))),
            DomainSpec::Prime { prime } => Ok(Domain::prime(*prime)?),
        }
    }

    pub fn of(domain: Domain) -> DomainSpec {
        match domain {
            Domain::Rational => DomainSpec::Named("rational".into()),
            Domain::Prime(p) => DomainSpec::Prime { prime: p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub a: [i64; 3],
    pub d: i64,
    /// `Q11, Q12, Q13, Q22, Q23, Q33`.
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDoc {
    /// Upper triangle of the 5x5 matrix, row-major.
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub scalar_domain: DomainSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub net: Option<NetDoc>,
}

/// A parsed input: a form or a net over a field.
pub enum Parsed {
    Form(QForm),
    Net(QuadricNet),
}

impl InputDocument {
    pub fn read(path: &Path) -> Result<InputDocument, CliError> {
        let text = if path.as_os_str() == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        }
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        InputDocument::from_json(&text)
    }

    /// Accepts a bare document or a `catalog` report carrying one.
    pub fn from_json(text: &str) -> Result<InputDocument, CliError> {
        let mut value: Value = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
        if value.get("command").and_then(Value::as_str) == Some("catalog") {
            value = value
                .pointer("/payload/document")
                .cloned()
                .ok_or_else(|| CliError::Input("catalog report without a document".into()))?;
        }
        let doc: InputDocument = serde_json::from_value(value)
            .map_err(|e| CliError::Input(format!("invalid document: {e}")))?;
        match (&doc.form, &doc.net) {
            (Some(_), None) | (None, Some(_)) => Ok(doc),
            _ => Err(CliError::Input(
                "exactly one of `form` and `net` must be present".into(),
            )),
        }
    }

    pub fn domain(&self) -> Result<Domain, CliError> {
        self.scalar_domain.resolve()
    }

    /// Parse over the document's own domain or an override.
    pub fn parse(&self, domain: Option<Domain>) -> Result<Parsed, CliError> {
        let domain = match domain {
            Some(d) => d,
            None => self.domain()?,
        };
        if let Some(form) = &self.form {
            let m = symmetric(&form.entries, 3, domain)?;
            return Ok(Parsed::Form(QForm::new(form.a, form.d, m)?));
        }
        let net = self.net.as_ref().expect("checked on load");
        Ok(Parsed::Net(QuadricNet::new(symmetric(
            &net.entries,
            5,
            domain,
        )?)?))
    }

    pub fn from_form(q: &QForm) -> InputDocument {
        let m = q.entries();
        let entries = (0..3)
            .flat_map(|i| (i..3).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).to_string())
            .collect();
        InputDocument {
            scalar_domain: DomainSpec::of(q.domain()),
            form: Some(FormDoc {
                a: q.a(),
                d: q.d(),
                entries,
            }),
            net: None,
        }
    }

    pub fn from_net(net: &QuadricNet) -> InputDocument {
        let m = net.entries();
        let entries = (0..5)
            .flat_map(|i| (i..5).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).to_string())
            .collect();
        InputDocument {
            scalar_domain: DomainSpec::of(net.domain()),
            form: None,
            net: Some(NetDoc { entries }),
        }
    }
}

/// Symmetric `n x n` matrix from its upper triangle.
fn symmetric(upper: &[String], n: usize, domain: Domain) -> Result<PolyMatrix, CliError> {
    let expected = n * (n + 1) / 2;
    if upper.len() != expected {
        return Err(CliError::Input(format!(
            "expected {expected} upper-triangle entries, got {}",
            upper.len()
        )));
    }
    let mut m = Matrix::from_fn(n, n, |_, _| Poly::zero(domain, BASE_VARS));
    let mut it = upper.iter();
    for i in 0..n {
        for j in i..n {
            let text = it.next().unwrap();
            let p = parse_poly(text, &BASE_NAMES, domain)
                .map_err(|e| {
                    CliError::Input(format!("entry ({}, {}) `{text}`: {e}", i + 1, j + 1))
                })?
                .into_poly();
            m.set(i, j, p.clone());
            m.set(j, i, p);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAG: &str = r#"{"scalar_domain": "rational",
        "form": {"a": [0, 0, 0], "d": 1, "entries": ["u", "0", "0", "v", "0", "w"]}}"#;

    #[test]
    fn parses_a_form() {
        let doc = InputDocument::from_json(DIAG).unwrap();
        let Parsed::Form(q) = doc.parse(None).unwrap() else {
            panic!("expected a form")
        };
        assert_eq!(q.discriminant().to_string(), "u*v*w");
        assert_eq!(InputDocument::from_form(&q), doc);
    }

    #[test]
    fn prime_domain() {
        let doc = InputDocument::from_json(
            r#"{"scalar_domain": {"prime": 7}, "form": {"a": [0,0,0], "d": 1, "entries": ["u","0","0","v","0","w"]}}"#,
        )
        .unwrap();
        assert_eq!(doc.domain().unwrap(), Domain::prime(7).unwrap());
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(InputDocument::from_json("{").is_err());
        assert!(InputDocument::from_json(r#"{"scalar_domain": "rational"}"#).is_err());
        let doc = InputDocument::from_json(&DIAG.replace("\"rational\"", "\"real\"")).unwrap();
        assert!(doc.domain().is_err());
        let doc = InputDocument::from_json(&DIAG.replace("\"w\"", "\"w^2\"")).unwrap();
        assert!(doc.parse(None).is_err());
    }
}
