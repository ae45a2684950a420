//! JSON forms of matrices, parameter arrays and verification reports. Field
//! elements are always strings; output is pretty-printed with a fixed key
//! order, so equal values print to equal bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::leonard::{extract_parameter_array, fit_askey_wilson, is_leonard_pair, AskeyWilson, LeonardError};
use crate::matrix::ExactMatrix;
use crate::parray::{fingerprint, Fingerprint, ParameterArray};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Value { path: String, message: String },
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        let suffix = format!(" at line {line} column {column}");
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        JsonError::Syntax { line, column, message }
    }
}

fn value_err(path: impl Into<String>, message: impl ToString) -> JsonError {
    JsonError::Value {
        path: path.into(),
        message: message.to_string(),
    }
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn strings(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn parse_elements(spec: FieldSpec, path: &str, v: &[String]) -> Result<Vec<FieldElement>, JsonError> {
    v.iter()
        .enumerate()
        .map(|(i, s)| FieldElement::parse(spec, s).map_err(|e| value_err(format!("{path}[{i}]"), e)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub field: FieldSpec,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        MatrixJson {
            field: m.spec(),
            rows: m.to_string_rows(),
        }
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix, JsonError> {
        self.to_matrix_in(self.field)
    }

    /// Parse entries in `spec` instead of the declared field, which lets
    /// integer or rational data be embedded in another field.
    pub fn to_matrix_in(&self, spec: FieldSpec) -> Result<ExactMatrix, JsonError> {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| parse_elements(spec, &format!("rows[{r}]"), row))
            .collect::<Result<Vec<_>, _>>()?;
        ExactMatrix::from_rows(spec, rows).map_err(|e| value_err("rows", e))
    }
}

pub fn matrix_to_json(m: &ExactMatrix) -> String {
    to_pretty(&MatrixJson::from_matrix(m))
}

pub fn matrix_from_json(s: &str) -> Result<ExactMatrix, JsonError> {
    serde_json::from_str::<MatrixJson>(s)?.to_matrix()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterArrayJson {
    pub field: FieldSpec,
    pub d: usize,
    pub theta: Vec<String>,
    pub theta_star: Vec<String>,
    pub varphi: Vec<String>,
    pub phi: Vec<String>,
}

impl ParameterArrayJson {
    pub fn from_array(pa: &ParameterArray) -> Self {
        ParameterArrayJson {
            field: pa.spec,
            d: pa.d(),
            theta: strings(&pa.theta),
            theta_star: strings(&pa.theta_star),
            varphi: strings(&pa.varphi),
            phi: strings(&pa.phi),
        }
    }

    pub fn to_array(&self) -> Result<ParameterArray, JsonError> {
        self.to_array_in(self.field)
    }

    pub fn to_array_in(&self, spec: FieldSpec) -> Result<ParameterArray, JsonError> {
        let pa = ParameterArray::new(
            spec,
            parse_elements(spec, "theta", &self.theta)?,
            parse_elements(spec, "theta_star", &self.theta_star)?,
            parse_elements(spec, "varphi", &self.varphi)?,
            parse_elements(spec, "phi", &self.phi)?,
        )
        .map_err(|e| value_err("parameter array", e))?;
        if pa.d() != self.d {
            return Err(value_err("d", format!("declared {} but theta has {} entries", self.d, pa.d() + 1)));
        }
        Ok(pa)
    }
}

pub fn array_to_json(pa: &ParameterArray) -> String {
    to_pretty(&ParameterArrayJson::from_array(pa))
}

pub fn array_from_json(s: &str) -> Result<ParameterArray, JsonError> {
    serde_json::from_str::<ParameterArrayJson>(s)?.to_array()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AskeyWilsonJson {
    pub beta: String,
    pub gamma: String,
    pub gamma_star: String,
    pub rho: String,
    pub rho_star: String,
    pub omega: String,
    pub eta: String,
    pub eta_star: String,
    pub unique: bool,
}

impl AskeyWilsonJson {
    pub fn from_fit(aw: &AskeyWilson) -> Self {
        let v = strings(&aw.to_vec());
        AskeyWilsonJson {
            beta: v[0].clone(),
            gamma: v[1].clone(),
            gamma_star: v[2].clone(),
            rho: v[3].clone(),
            rho_star: v[4].clone(),
            omega: v[5].clone(),
            eta: v[6].clone(),
            eta_star: v[7].clone(),
            unique: aw.unique,
        }
    }

    fn check(&self, spec: FieldSpec) -> Result<(), JsonError> {
        let all = [
            &self.beta,
            &self.gamma,
            &self.gamma_star,
            &self.rho,
            &self.rho_star,
            &self.omega,
            &self.eta,
            &self.eta_star,
        ];
        parse_elements(spec, "askey_wilson", &all.map(|s| s.clone())).map(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FingerprintJson {
    pub class: String,
    pub beta_plus_one: Option<String>,
    pub beta: Option<String>,
    pub q: Option<String>,
    /// Field that q lives in, which may extend the array's field.
    pub q_field: Option<FieldSpec>,
}

impl FingerprintJson {
    pub fn from_fingerprint(f: &Fingerprint) -> Self {
        FingerprintJson {
            class: f.class.to_string(),
            beta_plus_one: f.beta_plus_one.as_ref().map(|x| x.to_string()),
            beta: f.beta.as_ref().map(|x| x.to_string()),
            q: f.q.as_ref().map(|x| x.to_string()),
            q_field: f.q.as_ref().map(|x| x.spec()),
        }
    }

    fn check(&self, spec: FieldSpec) -> Result<(), JsonError> {
        for (name, v) in [("beta_plus_one", &self.beta_plus_one), ("beta", &self.beta)] {
            if let Some(s) = v {
                FieldElement::parse(spec, s).map_err(|e| value_err(format!("fingerprint.{name}"), e))?;
            }
        }
        match (&self.q, self.q_field) {
            (Some(s), Some(f)) => {
                FieldElement::parse(f, s).map_err(|e| value_err("fingerprint.q", e))?;
            }
            (None, None) => {}
            _ => return Err(value_err("fingerprint.q_field", "q and q_field must both be present or both null")),
        }
        Ok(())
    }
}

/// Result of recognizing a pair and, on success, analysing its canonical
/// Leonard system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub is_leonard_pair: bool,
    pub diameter: usize,
    pub orderings_found: usize,
    pub parameter_array: Option<ParameterArrayJson>,
    pub askey_wilson: Option<AskeyWilsonJson>,
    pub fingerprint: Option<FingerprintJson>,
    pub failure_reason: Option<String>,
}

impl VerificationReport {
    pub fn for_pair(a: &ExactMatrix, a_star: &ExactMatrix) -> Result<Self, LeonardError> {
        let rec = is_leonard_pair(a, a_star)?;
        let mut report = VerificationReport {
            is_leonard_pair: rec.is_leonard_pair(),
            diameter: a.rows() - 1,
            orderings_found: rec.orderings_found,
            parameter_array: None,
            askey_wilson: None,
            fingerprint: None,
            failure_reason: rec.failure_message(),
        };
        if let Some(sys) = &rec.system {
            let pa = extract_parameter_array(sys)?;
            let aw = fit_askey_wilson(a, a_star)?;
            let fp = fingerprint(&pa).map_err(|e| LeonardError::DegenerateSplit(e.to_string()))?;
            report.parameter_array = Some(ParameterArrayJson::from_array(&pa));
            report.askey_wilson = Some(AskeyWilsonJson::from_fit(&aw));
            report.fingerprint = Some(FingerprintJson::from_fingerprint(&fp));
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    /// Parse and check that every element string is valid in its field.
    pub fn from_json(s: &str) -> Result<Self, JsonError> {
        let r: VerificationReport = serde_json::from_str(s)?;
        if let Some(pa) = &r.parameter_array {
            pa.to_array()?;
            if let Some(aw) = &r.askey_wilson {
                aw.check(pa.field)?;
            }
            if let Some(fp) = &r.fingerprint {
                fp.check(pa.field)?;
            }
        }
        Ok(r)
    }
}

/// One irreducible summand of a generated module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub weight: usize,
    pub d: usize,
    pub a: MatrixJson,
    pub a_star: MatrixJson,
    pub theta: Vec<String>,
    pub theta_star: Vec<String>,
    pub certified: bool,
}

/// Output of a generator: the pair plus where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratedPair {
    pub source: String,
    pub params: std::collections::BTreeMap<String, String>,
    pub a: MatrixJson,
    pub a_star: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentJson>>,
}

impl GeneratedPair {
    pub fn from_json(s: &str) -> Result<Self, JsonError> {
        let g: GeneratedPair = serde_json::from_str(s)?;
        g.a.to_matrix()?;
        g.a_star.to_matrix()?;
        if let Some(p) = &g.p {
            p.to_matrix()?;
        }
        for c in g.components.iter().flatten() {
            c.a.to_matrix()?;
            c.a_star.to_matrix()?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::example_section2;

    #[test]
    fn matrix_round_trip_and_errors() {
        let spec = FieldSpec::quadratic(2).unwrap();
        let m = ExactMatrix::from_rows(
            spec,
            vec![vec![FieldElement::parse(spec, "1/2+3*s").unwrap(), FieldElement::one(spec)]],
        )
        .unwrap();
        let s = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&s).unwrap(), m);
        assert!(matches!(matrix_from_json("{\"field\": \"Q\", \"rows\": [[\"1\"], [\"x\"]]}"), Err(JsonError::Value { path, .. }) if path == "rows[1][0]"));
        assert!(matches!(matrix_from_json("{\"field\": \"Q\",\n \"rows\": [[1]]}"), Err(JsonError::Syntax { line: 2, .. })));
        assert!(matches!(matrix_from_json("{\"field\": \"GF(4)\", \"rows\": []}"), Err(JsonError::Syntax { .. })));
    }

    #[test]
    fn report_for_section2() {
        let (a, s, _) = example_section2(FieldSpec::Rationals);
        let r = VerificationReport::for_pair(&a, &s).unwrap();
        assert!(r.is_leonard_pair);
        assert_eq!(r.diameter, 3);
        assert_eq!(r.askey_wilson.as_ref().unwrap().beta, "2");
        assert_eq!(r.fingerprint.as_ref().unwrap().class, "classical");
        let text = r.to_json();
        assert_eq!(VerificationReport::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn report_for_failure() {
        let (a, s, _) = example_section2(FieldSpec::prime(3).unwrap());
        let r = VerificationReport::for_pair(&a, &s).unwrap();
        assert!(!r.is_leonard_pair);
        assert!(r.failure_reason.unwrap().contains("not irreducible"));
    }
}
