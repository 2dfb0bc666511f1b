//! One report line per operation, as `key=value` text or JSON.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub operation: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digits: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub wall_ms: u64,
    #[serde(skip)]
    pub ok: bool,
}

impl Record {
    pub fn new(name: &str, operation: &str, verdict: &str, ok: bool) -> Self {
        Record {
            name: name.to_string(),
            operation: operation.to_string(),
            verdict: verdict.to_string(),
            residual: None,
            digits: None,
            value: None,
            detail: None,
            wall_ms: 0,
            ok,
        }
    }

    pub fn residual(mut self, r: impl Into<String>) -> Self {
        self.residual = Some(r.into());
        self
    }

    pub fn digits(mut self, d: f64) -> Self {
        self.digits = Some((d * 10.0).floor() / 10.0);
        self
    }

    pub fn value(mut self, v: impl Into<String>) -> Self {
        self.value = Some(v.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain record")
    }

    pub fn to_text(&self) -> String {
        fn field(k: &str, v: &str) -> String {
            if v.is_empty() || v.contains(char::is_whitespace) || v.contains('"') {
                format!("{k}={v:?}")
            } else {
                format!("{k}={v}")
            }
        }
        let mut parts = vec![field("name", &self.name), field("operation", &self.operation), field("verdict", &self.verdict)];
        if let Some(r) = &self.residual {
            parts.push(field("residual", r));
        }
        if let Some(d) = self.digits {
            parts.push(format!("digits={d}"));
        }
        if let Some(v) = &self.value {
            parts.push(field("value", v));
        }
        if let Some(d) = &self.detail {
            parts.push(field("detail", d));
        }
        parts.push(format!("wall_ms={}", self.wall_ms));
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_quotes_spaces() {
        let r = Record::new("a", "sum", "PASS", true).detail("two words");
        assert_eq!(r.to_text(), "name=a operation=sum verdict=PASS detail=\"two words\" wall_ms=0");
    }

    #[test]
    fn json_skips_absent_fields() {
        let r = Record::new("a", "verify", "VERIFIED", true).residual("0");
        assert_eq!(r.to_json(), r#"{"name":"a","operation":"verify","verdict":"VERIFIED","residual":"0","wall_ms":0}"#);
    }
}
