//! Serializable documents for the command-line front end.
//!
//! Every number is an exact decimal string (rationals as `p/q`), so the
//! JSON never passes through floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::adjoint::CertReport;
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::principal::PrincipalBasis;
use crate::rootsys::{LieType, RootSystem};

pub const TOOL: &str = "principal-basis";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVector {
    pub exponent: String,
    /// Simple-coroot coordinates (simple-root coordinates for a dual basis).
    pub coords: Vec<String>,
    pub ambient: Vec<String>,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub certified: bool,
    /// Type the certificate was computed on (the dual type for `--dual`).
    pub certified_on: String,
    pub orthogonal: bool,
    pub kernel: Vec<KernelRow>,
    pub module_dimensions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma_minus_index: Option<String>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRow {
    pub exponent: String,
    pub in_kernel_next: bool,
    pub in_kernel_k: bool,
    pub casimir: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub tool: String,
    pub version: String,
    #[serde(rename = "type")]
    pub lie_type: String,
    pub dual: bool,
    pub form: String,
    pub coordinates: String,
    pub exponents: Vec<String>,
    pub sigma_refined: bool,
    pub basis: Vec<BasisVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certification: Option<Certification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoDocument {
    pub tool: String,
    pub version: String,
    #[serde(rename = "type")]
    pub lie_type: String,
    pub query: String,
    pub rows: Vec<Vec<String>>,
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

impl OutputDocument {
    pub fn from_basis(pb: &PrincipalBasis, rs: &RootSystem) -> OutputDocument {
        let ambient = pb.ambient_vectors(rs);
        let basis = pb
            .vectors
            .iter()
            .zip(&ambient)
            .zip(pb.exponent_labels.iter().zip(&pb.generator_provenance))
            .map(|((v, a), (k, g))| BasisVector {
                exponent: k.to_string(),
                coords: strings(v),
                ambient: strings(a),
                generator: g.clone(),
            })
            .collect();
        OutputDocument {
            tool: TOOL.into(),
            version: VERSION.into(),
            lie_type: pb.lie_type.to_string(),
            dual: pb.dual,
            form: "canonical".into(),
            coordinates: if pb.dual { "simple-root" } else { "simple-coroot" }.into(),
            exponents: strings(&pb.exponent_labels),
            sigma_refined: pb.sigma_refined,
            basis,
            certification: None,
        }
    }

    pub fn with_certification(mut self, report: &CertReport, certified_on: LieType) -> OutputDocument {
        self.certification = Some(Certification {
            certified: report.certified(),
            certified_on: certified_on.to_string(),
            orthogonal: report.orthogonal,
            kernel: report
                .vectors
                .iter()
                .map(|v| KernelRow {
                    exponent: v.exponent.to_string(),
                    in_kernel_next: v.in_kernel_next,
                    in_kernel_k: v.in_kernel_k,
                    casimir: v.casimir,
                })
                .collect(),
            module_dimensions: strings(&report.module_dimensions),
            sigma_minus_index: report.sigma.as_ref().map(|s| s.minus_index.to_string()),
            failures: report.failures.clone(),
        });
        self
    }

    /// Rebuilds the basis; the ambient columns are ignored.
    pub fn to_basis(&self) -> Result<PrincipalBasis> {
        let lie_type: LieType = self.lie_type.parse()?;
        let bad = |s: &str| Error::ParseType(format!("bad number {s:?} in document"));
        let mut vectors = Vec::new();
        let mut exponent_labels = Vec::new();
        let mut generator_provenance = Vec::new();
        for v in &self.basis {
            let coords =
                v.coords.iter().map(|c| BigInt::from_str(c).map_err(|_| bad(c))).collect::<Result<Vec<_>>>()?;
            vectors.push(coords);
            exponent_labels.push(v.exponent.parse::<u32>().map_err(|_| bad(&v.exponent))?);
            generator_provenance.push(v.generator.clone());
        }
        Ok(PrincipalBasis {
            lie_type,
            dual: self.dual,
            vectors,
            exponent_labels,
            generator_provenance,
            sigma_refined: self.sigma_refined,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "type {}{}  form {}  coordinates {}\nexponents {}\n",
            self.lie_type,
            if self.dual { " (dual)" } else { "" },
            self.form,
            self.coordinates,
            self.exponents.join(" ")
        );
        let rows: Vec<[String; 4]> = self
            .basis
            .iter()
            .map(|v| [v.exponent.clone(), v.coords.join(" "), v.ambient.join(" "), v.generator.clone()])
            .collect();
        let header = ["k", "coords", "ambient", "generator"].map(String::from);
        let widths: Vec<usize> =
            (0..4).map(|i| rows.iter().chain([&header]).map(|r| r[i].len()).max().unwrap_or(0)).collect();
        for r in [&header].into_iter().chain(&rows) {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
        }
        if let Some(c) = &self.certification {
            out.push_str(&format!(
                "certification on {}: {}\n",
                c.certified_on,
                if c.certified { "certified" } else { "FAILED" }
            ));
            for f in &c.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        out
    }
}

impl InfoDocument {
    pub fn new(t: LieType, query: &str, rows: Vec<Vec<String>>) -> InfoDocument {
        InfoDocument { tool: TOOL.into(), version: VERSION.into(), lie_type: t.to_string(), query: query.into(), rows }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| r.join(" ") + "\n").collect()
    }
}

pub fn rational_strings(v: &[Q]) -> Vec<String> {
    strings(v)
}
