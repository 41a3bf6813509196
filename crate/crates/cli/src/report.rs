//! Output values for every subcommand, with a text rendering next to the
//! serde one so both views come from the same data.

use std::fmt::Write as _;

use ks_core::hodgetype::HodgeType;
use ks_core::ksclassify::{HyperkahlerPreset, KSBranch, KSReport, Splitness};
use ks_core::rootspin::Series;
use serde::{Deserialize, Serialize};

pub trait Render: Serialize {
    fn text(&self) -> String;
}

fn branch_line(b: &KSBranch) -> String {
    let noun = if b.distinct_factors == 1 {
        "factor"
    } else {
        "factors"
    };
    format!(
        "r={}: {} simple {} of dim {}, multiplicity {}",
        b.r, b.distinct_factors, noun, b.factor_dim, b.multiplicity
    )
}

fn splitness_name(s: Splitness) -> &'static str {
    match s {
        Splitness::Split => "split",
        Splitness::Nonsplit => "nonsplit",
    }
}

impl Render for KSReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "delta: {}", self.delta);
        let _ = writeln!(s, "case: {}", self.case);
        if let Some((p, m)) = self.signature {
            let _ = writeln!(s, "signature: ({p}, {m})");
        }
        for b in &self.branches {
            let _ = writeln!(s, "branch {}", branch_line(b));
        }
        let _ = writeln!(s, "torus_bound: {}", self.torus_bound);
        if let Some(h) = self.splitness_hint {
            let _ = writeln!(
                s,
                "hint: {} (selects r={})",
                splitness_name(h),
                h.branch_r()
            );
        }
        if let Some(o) = &self.oracle {
            let split = match o.split {
                Some(b) => b.to_string(),
                None => "n/a".into(),
            };
            let _ = writeln!(s, "oracle: center dim {}, split {}", o.center_dim, split);
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

/// How a failure is reported inside a batch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchItem {
    pub line: usize,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<KSReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BatchReport {
    pub items: Vec<BatchItem>,
}

impl Render for BatchReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for (k, item) in self.items.iter().enumerate() {
            if k > 0 {
                s.push('\n');
            }
            let _ = writeln!(s, "# line {}: {}", item.line, item.input);
            if let Some(r) = &item.report {
                s.push_str(&r.text());
            }
            if let Some(e) = &item.error {
                let _ = writeln!(s, "error ({}): {}", e.kind, e.message);
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterOutput {
    pub n: usize,
    pub diagonal: Vec<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub split: Option<bool>,
    pub central_square: Option<String>,
}

impl Render for CenterOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "diagonal: ({})", self.diagonal.join(", "));
        let _ = writeln!(s, "center dim: {}", self.dim);
        for b in &self.basis {
            let _ = writeln!(s, "basis: {b}");
        }
        if let Some(c) = &self.central_square {
            let _ = writeln!(s, "z^2: {c}");
        }
        match self.split {
            Some(b) => {
                let _ = writeln!(s, "split: {b}");
            }
            None => s.push_str("split: n/a\n"),
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultOutput {
    pub n: usize,
    pub diagonal: Vec<String>,
    pub a: String,
    pub b: String,
    pub product: String,
}

impl Render for MultOutput {
    fn text(&self) -> String {
        format!(
            "diagonal: ({})\n({}) * ({}) = {}\n",
            self.diagonal.join(", "),
            self.a,
            self.b,
            self.product
        )
    }
}

/// Dimensions as decimal strings; they overflow 64 bits for large `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsOutput {
    pub n: usize,
    pub clifford_dim: String,
    pub even_dim: String,
}

impl Render for DimsOutput {
    fn text(&self) -> String {
        format!(
            "n: {}\ndim C: {}\ndim C+: {}\n",
            self.n, self.clifford_dim, self.even_dim
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeOutput {
    pub operation: String,
    #[serde(rename = "type")]
    pub hodge_type: HodgeType,
    pub dim: u64,
    pub purity: Option<String>,
    pub k3_type: bool,
    pub abelian_type: bool,
}

impl Render for HodgeOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.operation, self.hodge_type);
        let _ = writeln!(s, "dim: {}", self.dim);
        let _ = writeln!(s, "weight: {}", self.purity.as_deref().unwrap_or("mixed"));
        let _ = writeln!(s, "k3 type: {}", self.k3_type);
        let _ = writeln!(s, "abelian type: {}", self.abelian_type);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOutput {
    pub index: usize,
    pub constants: Vec<String>,
    pub offset: String,
}

impl Render for FactorOutput {
    fn text(&self) -> String {
        format!(
            "index: {}\nconstants: [{}]\noffset: {}\n",
            self.index,
            self.constants.join(", "),
            self.offset
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: String,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSpectrum {
    pub name: String,
    pub dim: u64,
    pub spectrum: Vec<SpectrumEntry>,
    pub two_weight: bool,
    pub offset: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsOutput {
    pub series: Series,
    pub rank: usize,
    pub nu: Vec<String>,
    pub pairings: Vec<String>,
    pub special_vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_vertex_error: Option<String>,
    pub representations: Vec<RepSpectrum>,
}

impl Render for RootsOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "root datum: {}{}", self.series, self.rank);
        let _ = writeln!(s, "nu: ({})", self.nu.join(", "));
        let _ = writeln!(s, "pairings: [{}]", self.pairings.join(", "));
        match (self.special_vertex, &self.special_vertex_error) {
            (Some(v), _) => {
                let _ = writeln!(s, "special vertex: {v}");
            }
            (None, Some(e)) => {
                let _ = writeln!(s, "special vertex: none ({e})");
            }
            (None, None) => s.push_str("special vertex: none\n"),
        }
        for r in &self.representations {
            let spec: Vec<String> = r
                .spectrum
                .iter()
                .map(|e| format!("{}:{}", e.value, e.mult))
                .collect();
            let _ = write!(s, "{} (dim {}): {{{}}}", r.name, r.dim, spec.join(", "));
            match &r.offset {
                Some(o) => {
                    let _ = writeln!(s, ", two weights with offset {o}");
                }
                None => s.push_str(", not two-weight\n"),
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftOutput {
    pub matrix: Vec<Vec<i64>>,
    pub target: Vec<String>,
    pub x: Vec<String>,
    #[serde(rename = "N")]
    pub level: u64,
    pub level_bound: u64,
    pub elementary_divisors: Vec<String>,
}

impl Render for LiftOutput {
    fn text(&self) -> String {
        format!(
            "x: [{}]\nN: {}\nlevel bound: {}\nelementary divisors: [{}]\n",
            self.x.join(", "),
            self.level,
            self.level_bound,
            self.elementary_divisors.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetOutput {
    #[serde(flatten)]
    pub preset: HyperkahlerPreset,
    pub factor_dims: Vec<u64>,
}

impl Render for PresetOutput {
    fn text(&self) -> String {
        let p = &self.preset;
        let mut s = String::new();
        let what = if p.polarized {
            "primitive part of H^2"
        } else {
            "H^2"
        };
        let _ = writeln!(s, "b2: {} ({what})", p.b2);
        let _ = writeln!(s, "n: {}", p.n);
        let _ = writeln!(s, "signature: ({}, {})", p.signature.0, p.signature.1);
        let _ = writeln!(
            s,
            "discriminant sign: {}",
            if p.discriminant_sign > 0 { "+" } else { "-" }
        );
        match p.case {
            Some(c) => {
                let _ = writeln!(s, "case: {c}");
            }
            None => {
                let names: Vec<String> = p.candidates.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "case: undetermined, one of {}", names.join(", "));
            }
        }
        for b in &p.branches {
            let _ = writeln!(s, "branch {}", branch_line(b));
        }
        let dims: Vec<String> = self.factor_dims.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "factor dims: {}", dims.join(", "));
        match p.torus_bound {
            Some(t) => {
                let _ = writeln!(s, "torus_bound: {t}");
            }
            None => s.push_str("torus_bound: undetermined\n"),
        }
        s
    }
}
