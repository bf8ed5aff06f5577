//! One function per subcommand, each returning the rendered output.

use std::fmt::Write as _;

use gtvar::canonical::{classify_module, compute_canonical};
use gtvar::cohomology::{build_rl, default_columns, table};
use gtvar::hilbert::compute_hilbert;
use gtvar::invariants::{classify_gt, classify_gt_with_wlp, enumerate_invariants};
use gtvar::toric::{certify_degree_bound, generators, ToricOptions};
use gtvar::{ExponentVector, GroupSpec};
use serde::Serialize;
use serde_json::json;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Table => "table",
            Format::Csv => "csv",
        }
    }
}

fn texts(ms: &[ExponentVector]) -> Vec<String> {
    ms.iter().map(ExponentVector::to_text).collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_from_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// `key value` lines with the values aligned.
fn key_values(pairs: &[(&str, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<w$}  {v}\n"))
        .collect()
}

pub fn invariants(spec: &GroupSpec, t: u32, format: Format) -> Result<String> {
    let basis = enumerate_invariants(spec, t)?;
    Ok(match format {
        Format::Json => to_json(&json!({
            "spec": spec,
            "t": t,
            "count": basis.len(),
            "monomials": texts(&basis.monomials),
            "exponents": basis.monomials,
        })),
        Format::Table => {
            let mut out = format!(
                "{spec}, degree {}: {} monomials\n",
                t * spec.d(),
                basis.len()
            );
            let w = basis.len().to_string().len() + 1;
            for (i, m) in basis.monomials.iter().enumerate() {
                writeln!(out, "{:>w$}  {m}", format!("w{}", i + 1)).unwrap();
            }
            out
        }
        Format::Csv => csv_from_rows(
            &["index", "monomial"],
            basis
                .monomials
                .iter()
                .enumerate()
                .map(|(i, m)| vec![(i + 1).to_string(), m.to_text()]),
        ),
    })
}

pub fn classify(spec: &GroupSpec, wlp: Option<(usize, u64)>, format: Format) -> Result<String> {
    let c = match wlp {
        Some((samples, seed)) => classify_gt_with_wlp(spec, samples, seed),
        None => classify_gt(spec),
    };
    let mut pairs = vec![
        ("spec", spec.to_string()),
        ("mu_d", c.mu_d.to_string()),
        ("togliatti_bound", c.togliatti_bound.to_string()),
        ("is_gt_system", c.is_gt_system.to_string()),
    ];
    if let Some(r) = &c.wlp_report {
        pairs.push(("wlp_domain_dim", r.domain_dim.to_string()));
        pairs.push(("wlp_codomain_dim", r.codomain_dim.to_string()));
        pairs.push((
            "wlp_deficiency_witnessed",
            r.deficiency_witnessed.to_string(),
        ));
    }
    Ok(match format {
        Format::Json => to_json(&json!({ "spec": spec, "classification": c })),
        Format::Table => {
            let mut out = key_values(&pairs);
            if let Some(r) = &c.wlp_report {
                for s in &r.sampled_ranks {
                    let label = s
                        .seed
                        .map_or("structured".to_string(), |v| format!("seed {v}"));
                    writeln!(out, "  L = {:?} ({label}): rank {}", s.coefficients, s.rank).unwrap();
                }
            }
            out
        }
        Format::Csv => csv_from_rows(
            &["key", "value"],
            pairs.into_iter().map(|(k, v)| vec![k.to_string(), v]),
        ),
    })
}

pub fn ideal(
    spec: &GroupSpec,
    k_max: usize,
    opts: &ToricOptions,
    format: Format,
) -> Result<String> {
    let gens = enumerate_invariants(spec, 1)?;
    let ideal = generators(spec, opts)?;
    let cert = if k_max >= 4 {
        Some(certify_degree_bound(spec, k_max, opts)?)
    } else {
        None
    };
    let certified = cert.as_ref().map(|c| c.certified);
    Ok(match format {
        Format::Json => to_json(&json!({
            "spec": spec,
            "generators": texts(&gens.monomials),
            "quadric_count": ideal.quadrics.len(),
            "cubic_count": ideal.cubics.len(),
            "quadrics": ideal.quadrics,
            "cubics": ideal.cubics,
            "certificate": cert,
        })),
        Format::Table => {
            let status = match &cert {
                Some(c) => format!("{} (degrees 4..={})", c.certified, c.k_max),
                None => "not checked".to_string(),
            };
            let mut out = key_values(&[
                ("spec", spec.to_string()),
                ("generators", gens.len().to_string()),
                ("quadrics", ideal.quadrics.len().to_string()),
                ("cubics", ideal.cubics.len().to_string()),
                ("certified", status),
            ]);
            if certified == Some(false) {
                for d in cert.iter().flat_map(|c| &c.degrees) {
                    for key in &d.disconnected {
                        writeln!(out, "disconnected fiber in degree {}: {key}", d.k).unwrap();
                    }
                }
            }
            for b in ideal.quadrics.iter().chain(&ideal.cubics) {
                writeln!(out, "{}", b.to_text()).unwrap();
            }
            out
        }
        Format::Csv => csv_from_rows(
            &["degree", "binomial"],
            ideal
                .quadrics
                .iter()
                .chain(&ideal.cubics)
                .map(|b| vec![b.degree().to_string(), b.to_text()]),
        ),
    })
}

pub fn canonical(spec: &GroupSpec, format: Format) -> Result<String> {
    let cm = compute_canonical(spec);
    let cls = classify_module(&cm);
    Ok(match format {
        Format::Json => to_json(&json!({
            "spec": spec,
            "eta_d": cm.eta_d,
            "c1": texts(&cm.c1),
            "c2_minimal": texts(cm.c2_minimal()),
            "c2_size": cm.c2.len(),
            "classification": cls,
        })),
        Format::Table => {
            let mut out = key_values(&[
                ("spec", spec.to_string()),
                ("eta_d", cm.eta_d.to_string()),
                ("level", cls.is_level.to_string()),
                ("gorenstein", cls.is_gorenstein.to_string()),
                ("level_gt", cls.is_level_gt.to_string()),
                ("regularity", cls.regularity.to_string()),
                ("minimal_generators", cm.minimal_gens.len().to_string()),
            ]);
            writeln!(out, "degree {}:", spec.d()).unwrap();
            for m in &cm.c1 {
                writeln!(out, "  {m}").unwrap();
            }
            writeln!(out, "degree {}:", 2 * spec.d()).unwrap();
            for m in cm.c2_minimal() {
                writeln!(out, "  {m}").unwrap();
            }
            out
        }
        Format::Csv => csv_from_rows(
            &["degree", "monomial"],
            cm.c1
                .iter()
                .map(|m| (spec.d(), m))
                .chain(cm.c2_minimal().iter().map(|m| (2 * spec.d(), m)))
                .map(|(d, m)| vec![d.to_string(), m.to_text()]),
        ),
    })
}

pub fn hilbert(spec: &GroupSpec, t: Option<u32>, format: Format) -> Result<String> {
    let h = compute_hilbert(spec);
    let hf = t.map(|t| h.hilbert_function(t as i64));
    Ok(match format {
        Format::Json => {
            let mut v = json!({
                "spec": spec,
                "e": h.e,
                "numerator": h.numerator,
                "degree": h.degree,
                "series": h.to_text(),
                "secondary_invariants": h.secondary_invariants.iter().map(|b| texts(b)).collect::<Vec<_>>(),
            });
            if let (Some(t), Some(hf)) = (t, &hf) {
                v["t"] = json!(t);
                v["hilbert_function"] = json!(hf.to_string());
            }
            to_json(&v)
        }
        Format::Table => {
            let mut pairs = vec![
                ("spec", spec.to_string()),
                ("series", h.to_text()),
                ("e", format!("{:?}", h.e)),
                ("degree", h.degree.to_string()),
            ];
            if let (Some(t), Some(hf)) = (t, &hf) {
                pairs.push(("t", t.to_string()));
                pairs.push(("hilbert_function", hf.to_string()));
            }
            key_values(&pairs)
        }
        Format::Csv => csv_from_rows(
            &["j", "e_j"],
            h.e.iter()
                .enumerate()
                .map(|(j, e)| vec![j.to_string(), e.to_string()]),
        ),
    })
}

pub fn cohomology(
    spec: &GroupSpec,
    j_min: Option<i64>,
    j_max: Option<i64>,
    format: Format,
) -> Result<String> {
    let rl = build_rl(spec)?;
    let (lo, hi) = default_columns(&rl);
    let t = table(&rl, j_min.unwrap_or(lo), j_max.unwrap_or(hi))?;
    Ok(match format {
        Format::Json => to_json(&t),
        Format::Table => t.render(),
        Format::Csv => t.to_csv(),
    })
}
