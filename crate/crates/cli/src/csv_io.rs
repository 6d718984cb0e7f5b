//! CSV ingestion and persistence. Feature cells are written with
//! Rust's shortest round-trip float formatting, so a write/read cycle
//! reproduces the exact values.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sup_core::PointSet;

/// A parsed input file: points plus whatever labeling columns it had.
#[derive(Debug, Clone)]
pub struct CsvDataset {
    pub points: PointSet,
    /// Feature column names (generated as `f0..` for headerless files).
    pub feature_names: Vec<String>,
    /// Ground-truth ids, contiguous from 0 in first-occurrence order.
    pub truth: Option<Vec<usize>>,
    /// True for rows flagged as noise.
    pub noise: Option<Vec<bool>>,
}

/// Reads a CSV of numeric features, optionally extracting a truth
/// column and a noise column by name (both require `has_header`).
pub fn read_csv(
    path: &Path,
    has_header: bool,
    truth_column: Option<&str>,
    noise_column: Option<&str>,
) -> Result<CsvDataset> {
    if !has_header && (truth_column.is_some() || noise_column.is_some()) {
        bail!("named label columns require a header row");
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;

    let mut truth_idx = None;
    let mut noise_idx = None;
    let mut feature_names = Vec::new();
    let mut feature_cols = Vec::new();
    if has_header {
        let headers = reader.headers()?.clone();
        for (i, name) in headers.iter().enumerate() {
            if Some(name) == truth_column {
                truth_idx = Some(i);
            } else if Some(name) == noise_column {
                noise_idx = Some(i);
            } else {
                feature_cols.push(i);
                feature_names.push(name.to_string());
            }
        }
        if let Some(wanted) = truth_column {
            if truth_idx.is_none() {
                bail!("truth column '{wanted}' not found in header");
            }
        }
        if let Some(wanted) = noise_column {
            if noise_idx.is_none() {
                bail!("noise column '{wanted}' not found in header");
            }
        }
    }

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut truth_raw: Vec<String> = Vec::new();
    let mut noise = Vec::new();
    let mut width = None;
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        let line = r + 1 + usize::from(has_header);
        if !has_header && width.is_none() {
            width = Some(record.len());
            feature_cols = (0..record.len()).collect();
            feature_names = (0..record.len()).map(|i| format!("f{i}")).collect();
        }
        let expected = feature_cols.len()
            + usize::from(truth_idx.is_some())
            + usize::from(noise_idx.is_some());
        if record.len() != expected {
            bail!(
                "row {line}: expected {expected} fields, found {}",
                record.len()
            );
        }
        let mut row = Vec::with_capacity(feature_cols.len());
        for &c in &feature_cols {
            let cell = record.get(c).expect("column bounds checked above");
            let value: f64 = cell.trim().parse().with_context(|| {
                format!("row {line}, column {}: '{cell}' is not numeric", c + 1)
            })?;
            row.push(value);
        }
        rows.push(row);
        if let Some(c) = truth_idx {
            truth_raw.push(record.get(c).unwrap_or_default().trim().to_string());
        }
        if let Some(c) = noise_idx {
            let cell = record.get(c).unwrap_or_default().trim();
            noise.push(match cell.to_ascii_lowercase().as_str() {
                "1" | "true" | "yes" => true,
                "0" | "false" | "no" | "" => false,
                other => bail!("row {line}: noise flag '{other}' is not boolean"),
            });
        }
    }
    if rows.is_empty() {
        bail!("{} contains no data rows", path.display());
    }

    let truth = truth_idx.map(|_| {
        let mut ids = HashMap::new();
        truth_raw
            .iter()
            .map(|raw| {
                let next = ids.len();
                *ids.entry(raw.clone()).or_insert(next)
            })
            .collect()
    });
    Ok(CsvDataset {
        points: PointSet::from_rows(&rows)?,
        feature_names,
        truth,
        noise: noise_idx.map(|_| noise),
    })
}

/// Writes points with a header line; `extras` appends trailing labeled
/// columns (used for generated datasets carrying their truth and noise
/// flags).
pub fn write_points_csv(
    path: &Path,
    points: &PointSet,
    feature_names: &[String],
    extras: &[(&str, Vec<String>)],
) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    let mut header: Vec<String> = feature_names.to_vec();
    for (name, values) in extras {
        assert_eq!(values.len(), points.n_points(), "ragged extra column");
        header.push(name.to_string());
    }
    writer.write_record(&header)?;
    for i in 0..points.n_points() {
        let mut record: Vec<String> = points.row(i).iter().map(|v| format!("{v}")).collect();
        for (_, values) in extras {
            record.push(values[i].clone());
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// One `label` column, row-aligned with the input points.
pub fn write_labels_csv(path: &Path, labels: &[usize]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    writer.write_record(["label"])?;
    for &label in labels {
        writer.write_record([label.to_string()])?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads back a single-column labels file written by
/// [`write_labels_csv`].
pub fn read_labels_csv(path: &Path) -> Result<Vec<usize>> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record?;
        labels.push(record[0].trim().parse()?);
    }
    Ok(labels)
}
