//! Column-oriented numeric tables written as CSV.

use std::io::Write;

use super::CliError;

/// A header row and numeric rows of the same width.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    /// Writes comma-separated values with LF line endings; numbers use the
    /// shortest representation that round-trips to the same `f64`,
    /// switching to exponent notation for very large or small magnitudes.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|x| format!("{x:?}")))?;
        }
        writer.flush()?;
        Ok(())
    }

    /// Reads a table produced by [`Table::write_csv`].
    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self, CliError> {
        let mut reader = csv::Reader::from_reader(input);
        let header = reader.headers()?.iter().map(str::to_owned).collect::<Vec<_>>();
        let mut table = Table::new(header);
        for record in reader.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|field| {
                    field
                        .parse::<f64>()
                        .map_err(|_| CliError::Config(format!("non-numeric CSV field '{field}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.push(row);
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_full_precision() {
        let mut t = Table::new(["u", "value"]);
        t.push(vec![0.1, std::f64::consts::PI]);
        t.push(vec![1e-300, f64::NAN]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "u,value\n0.1,3.141592653589793\n1e-300,NaN\n");
        let back = Table::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.header, t.header);
        assert_eq!(back.rows[0], t.rows[0]);
        assert_eq!(back.rows[1][0], 1e-300);
        assert!(back.rows[1][1].is_nan());
    }
}
