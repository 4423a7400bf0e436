use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::{CliError, Resolved, VERSION};

/// 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// CSV table with the commented version and config header.
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, config: &Resolved, mut out: W) -> Result<(), CliError> {
        writeln!(out, "# version: {VERSION}")?;
        let json = serde_json::to_string(config).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(out, "# config: {json}")?;
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(self.columns)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn write(&self, config: &Resolved, path: Option<&Path>) -> Result<(), CliError> {
        match path {
            Some(p) => {
                let file = File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                self.write_to(config, io::BufWriter::new(file))
            }
            None => self.write_to(config, io::stdout().lock()),
        }
    }
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::to_writer_pretty(io::BufWriter::new(file), value).map_err(|e| CliError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trips() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float(0.5), "5.0000000000000000e-1");
        assert_eq!(opt_float(None), "");
    }
}
