//! Operation-count comparison of the κ-product path against the echelon
//! oracle on the same matrix and spectrum.

use std::time::Instant;

use eigenmatrix::kappa::eigenvectors_via_kappa;
use eigenmatrix::verify::{oracle_eigenvectors, same_span};
use eigenmatrix::{GaussianRational, GqMatrix, GqVector, OpCounter, OpCounts, Result, Spectrum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub input: BenchInput,
    pub kappa: MethodReport,
    pub oracle: MethodReport,
    /// Whether both methods produced the same eigenspace for every eigenvalue.
    pub spans_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchInput {
    /// `"file"` or `"seed"`.
    pub source: String,
    pub seed: Option<u64>,
    pub dim: usize,
    pub spectrum: Vec<EigenvalueEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodReport {
    pub scalar_mults: u64,
    pub scalar_adds: u64,
    pub scalar_divs: u64,
    pub wall_time_ns: u64,
    pub per_eigenvalue: Vec<EigenvalueCounts>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueCounts {
    pub eigenvalue: String,
    pub vectors: usize,
    pub scalar_mults: u64,
    pub scalar_adds: u64,
    pub scalar_divs: u64,
}

impl MethodReport {
    /// Same report with the wall time zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> MethodReport {
        MethodReport {
            wall_time_ns: 0,
            ..self.clone()
        }
    }
}

type Finder<'a> = dyn Fn(&GaussianRational, &OpCounter) -> Result<Vec<GqVector>> + 'a;

fn measure(s: &Spectrum, find: &Finder) -> Result<(MethodReport, Vec<Vec<GqVector>>)> {
    let start = Instant::now();
    let mut per_eigenvalue = Vec::with_capacity(s.len());
    let mut spaces = Vec::with_capacity(s.len());
    let mut total = OpCounts::default();
    for lambda in s.values() {
        let counter = OpCounter::new();
        let vectors = find(lambda, &counter)?;
        let c = counter.counts();
        total.scalar_mults += c.scalar_mults;
        total.scalar_adds += c.scalar_adds;
        total.scalar_divs += c.scalar_divs;
        per_eigenvalue.push(EigenvalueCounts {
            eigenvalue: lambda.to_string(),
            vectors: vectors.len(),
            scalar_mults: c.scalar_mults,
            scalar_adds: c.scalar_adds,
            scalar_divs: c.scalar_divs,
        });
        spaces.push(vectors);
    }
    let report = MethodReport {
        scalar_mults: total.scalar_mults,
        scalar_adds: total.scalar_adds,
        scalar_divs: total.scalar_divs,
        wall_time_ns: u64::try_from(start.elapsed().as_nanos()).unwrap_or(u64::MAX),
        per_eigenvalue,
    };
    Ok((report, spaces))
}

/// Runs both methods on every eigenvalue of `s` under separate counters.
pub fn run_bench(a: &GqMatrix, s: &Spectrum, source: &str, seed: Option<u64>) -> Result<BenchReport> {
    let (kappa, ours) = measure(s, &|l, c| eigenvectors_via_kappa(a, s, l, Some(c)))?;
    let (oracle, theirs) = measure(s, &|l, c| oracle_eigenvectors(a, l, Some(c)))?;
    let mut spans_agree = true;
    for (x, y) in ours.iter().zip(&theirs) {
        spans_agree &= same_span(x, y, a.rows())?;
    }
    Ok(BenchReport {
        input: BenchInput {
            source: source.to_string(),
            seed,
            dim: a.rows(),
            spectrum: s
                .pairs()
                .iter()
                .map(|(v, m)| EigenvalueEntry {
                    value: v.to_string(),
                    multiplicity: *m,
                })
                .collect(),
        },
        kappa,
        oracle,
        spans_agree,
    })
}

/// Plain-text table of a report.
pub fn render_bench(r: &BenchReport) -> String {
    let mut out = format!("input: {} (dim {})", r.input.source, r.input.dim);
    if let Some(seed) = r.input.seed {
        out += &format!(", seed {seed}");
    }
    let spectrum: Vec<String> = r
        .input
        .spectrum
        .iter()
        .map(|e| format!("{}:{}", e.value, e.multiplicity))
        .collect();
    out += &format!("\nspectrum: {{{}}}\n", spectrum.join(", "));
    out += &format!("{:<8} {:>10} {:>10} {:>10} {:>14}\n", "method", "mults", "adds", "divs", "wall_ns");
    for (name, m) in [("kappa", &r.kappa), ("oracle", &r.oracle)] {
        out += &format!(
            "{:<8} {:>10} {:>10} {:>10} {:>14}\n",
            name, m.scalar_mults, m.scalar_adds, m.scalar_divs, m.wall_time_ns
        );
        for e in &m.per_eigenvalue {
            out += &format!(
                "  l={:<5} {:>10} {:>10} {:>10}   vectors {}\n",
                e.eigenvalue, e.scalar_mults, e.scalar_adds, e.scalar_divs, e.vectors
            );
        }
    }
    out += &format!("spans agree: {}", r.spans_agree);
    out
}
