//! JSON input documents: a versioned, strictly validated description of a
//! curve germ, plus optional forms and a partition for the residue and
//! splayed commands. Unknown fields are rejected so typos fail loudly.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use sncurve_core::curve::{Branch, CurveSpec};
use sncurve_core::parse::{parse_poly, parse_series};
use sncurve_core::Poly;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub version: u32,
    pub variables: Vec<String>,
    pub branches: Vec<BranchDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane_poly: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub coords: Vec<String>,
}

/// Numerator data of a dx + b dy over the curve polynomial.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub a: String,
    pub b: String,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument> {
        let doc: InputDocument =
            serde_json::from_str(text).context("input document is not valid JSON")?;
        if doc.version != 1 {
            bail!(
                "unsupported document version {} (this tool reads version 1)",
                doc.version
            );
        }
        Ok(doc)
    }

    pub fn to_spec(&self, label: &str) -> Result<CurveSpec> {
        let vars = self.variables.clone();
        let mut branches = Vec::new();
        for (i, b) in self.branches.iter().enumerate() {
            let coords = b
                .coords
                .iter()
                .map(|c| parse_series(c))
                .collect::<sncurve_core::Result<Vec<_>>>()
                .with_context(|| format!("branch {i}"))?;
            branches.push(Branch { name: b.name.clone(), coords, factor: None });
        }
        let equations = self
            .equations
            .iter()
            .map(|e| parse_poly(e, &vars))
            .collect::<sncurve_core::Result<Vec<_>>>()
            .context("equations")?;
        let plane_poly = self
            .plane_poly
            .as_deref()
            .map(|h| parse_poly(h, &vars))
            .transpose()
            .context("plane polynomial")?;
        let spec = CurveSpec {
            label: label.to_string(),
            vars,
            branches,
            equations,
            plane_poly,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn parsed_forms(&self, vars: &[String]) -> Result<Vec<(Poly, Poly)>> {
        self.forms
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let a = parse_poly(&f.a, vars).with_context(|| format!("form {i}, field a"))?;
                let b = parse_poly(&f.b, vars).with_context(|| format!("form {i}, field b"))?;
                Ok((a, b))
            })
            .collect()
    }

    pub fn parsed_partition(&self, vars: &[String]) -> Result<Option<(Poly, Poly)>> {
        match &self.partition {
            None => Ok(None),
            Some((p, q)) => {
                let p = parse_poly(p, vars).context("partition, first divisor")?;
                let q = parse_poly(q, vars).context("partition, second divisor")?;
                Ok(Some((p, q)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = r#"{
        "version": 1,
        "variables": ["x", "y"],
        "branches": [{"coords": ["t^3", "t^2"]}],
        "plane_poly": "x^2 - y^3",
        "forms": [{"a": "2*y", "b": "-3*x"}]
    }"#;

    #[test]
    fn reads_a_plane_document() {
        let doc = InputDocument::parse(CUSP).unwrap();
        let spec = doc.to_spec("cusp").unwrap();
        assert_eq!(spec.s(), 1);
        assert!(spec.plane_poly.is_some());
        assert_eq!(doc.parsed_forms(&spec.vars).unwrap().len(), 1);
    }

    #[test]
    fn round_trips_through_its_own_serialization() {
        let doc = InputDocument::parse(CUSP).unwrap();
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let doc2 = InputDocument::parse(&text).unwrap();
        let text2 = serde_json::to_string_pretty(&doc2).unwrap();
        assert_eq!(text, text2);
        let a = doc.to_spec("cusp").unwrap();
        let b = doc2.to_spec("cusp").unwrap();
        assert_eq!(a.plane_poly, b.plane_poly);
        assert_eq!(a.branches.len(), b.branches.len());
        for (x, y) in a.branches.iter().zip(&b.branches) {
            for (cx, cy) in x.coords.iter().zip(&y.coords) {
                assert!(cx.agrees_with(cy));
            }
        }
    }

    #[test]
    fn rejects_unknown_fields_and_bad_versions() {
        assert!(InputDocument::parse(r#"{"version": 1, "variables": [], "branches": [], "typo": 0}"#).is_err());
        assert!(InputDocument::parse(r#"{"version": 2, "variables": [], "branches": []}"#).is_err());
    }

    #[test]
    fn rejects_order_zero_coordinates() {
        let doc = InputDocument::parse(
            r#"{"version": 1, "variables": ["x", "y"],
                "branches": [{"coords": ["1 + t", "t"]}]}"#,
        )
        .unwrap();
        assert!(doc.to_spec("bad").is_err());
    }
}
