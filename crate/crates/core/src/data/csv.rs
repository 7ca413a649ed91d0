//! CSV datasets: header `label,f0,f1,…`, one example per row, label ±1.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{Dataset, Example, FeatureVector, Label};

pub fn read_csv<R: Read>(reader: R, name: &str) -> Result<Dataset> {
    let mut rdr = ::csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.get(0) != Some("label") {
        return Err(Error::Csv("first column must be 'label'".into()));
    }
    let dim = headers.len() - 1;
    for (i, h) in headers.iter().skip(1).enumerate() {
        if h != format!("f{i}") {
            return Err(Error::Csv(format!("column {} should be 'f{i}', found '{h}'", i + 1)));
        }
    }
    let mut data = Dataset::new(name, dim).map_err(|_| Error::Csv("no feature columns".into()))?;
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let line = row + 2;
        let label: i64 = record[0]
            .trim()
            .parse()
            .map_err(|_| Error::Csv(format!("line {line}: bad label '{}'", &record[0])))?;
        let label = Label::from_i64(label).map_err(|e| Error::Csv(format!("line {line}: {e}")))?;
        let values = record
            .iter()
            .skip(1)
            .map(|f| f.trim().parse::<f64>().map_err(|_| Error::Csv(format!("line {line}: bad number '{f}'"))))
            .collect::<Result<Vec<_>>>()?;
        let features = FeatureVector::new(values).map_err(|e| Error::Csv(format!("line {line}: {e}")))?;
        data.push(Example::new(features, label))?;
    }
    Ok(data)
}

/// Reads a dataset, naming it after the file stem.
pub fn read_csv_dataset(path: &Path) -> Result<Dataset> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("data");
    read_csv(std::io::BufReader::new(file), name)
}

/// Features use Rust's shortest round-trip float formatting.
pub fn write_csv<W: Write>(writer: W, data: &Dataset) -> Result<()> {
    let mut wtr = ::csv::Writer::from_writer(writer);
    let mut header = vec!["label".to_string()];
    header.extend((0..data.dim()).map(|i| format!("f{i}")));
    wtr.write_record(&header)?;
    let mut row = Vec::with_capacity(data.dim() + 1);
    for ex in data {
        row.clear();
        row.push(ex.label.to_string());
        row.extend(ex.features.iter().map(|v| v.to_string()));
        wtr.write_record(&row)?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}

pub fn write_csv_dataset(path: &Path, data: &Dataset) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(std::io::BufWriter::new(file), data)
}
