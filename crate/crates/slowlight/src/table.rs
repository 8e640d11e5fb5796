//! Plot-ready columnar text tables.
//!
//! Layout: '#'-prefixed header lines carrying metadata (sorted `key = value`
//! pairs), the column names, and the column units; then whitespace-delimited
//! numeric rows printed with 17 significant digits so that every f64
//! round-trips bit-exactly. Complex columns are split into `_re`/`_im`
//! pairs at declaration time.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A value accepted by [`Table::push_row`].
#[derive(Debug, Clone, Copy)]
pub enum Value {
    Real(f64),
    Complex(Complex64),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    /// Sorted metadata echoed into the header; one entry per key.
    pub meta: BTreeMap<String, String>,
    /// Flattened column names (complex columns already split).
    pub columns: Vec<String>,
    /// Unit token per flattened column.
    pub units: Vec<String>,
    /// Declared arity used by `push_row` (complex counts as one slot).
    slots: Vec<bool>, // true = complex
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// Declare columns as `(name, unit, is_complex)` triples.
    pub fn new(spec: &[(&str, &str, bool)]) -> Self {
        let mut columns = Vec::new();
        let mut units = Vec::new();
        let mut slots = Vec::new();
        for &(name, unit, complex) in spec {
            if complex {
                columns.push(format!("{name}_re"));
                columns.push(format!("{name}_im"));
                units.push(unit.to_string());
                units.push(unit.to_string());
            } else {
                columns.push(name.to_string());
                units.push(unit.to_string());
            }
            slots.push(complex);
        }
        Table {
            meta: BTreeMap::new(),
            columns,
            units,
            slots,
            rows: Vec::new(),
        }
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.meta.insert(key.into(), value.to_string());
    }

    pub fn push_row(&mut self, values: &[Value]) -> Result<()> {
        if values.len() != self.slots.len() {
            return Err(Error::TableParse(format!(
                "row has {} values, table declares {} columns",
                values.len(),
                self.slots.len()
            )));
        }
        let mut flat = Vec::with_capacity(self.columns.len());
        for (value, &complex) in values.iter().zip(&self.slots) {
            match (value, complex) {
                (Value::Real(x), false) => flat.push(*x),
                (Value::Complex(z), true) => {
                    flat.push(z.re);
                    flat.push(z.im);
                }
                _ => {
                    return Err(Error::TableParse(
                        "value kind does not match the declared column".into(),
                    ))
                }
            }
        }
        for (x, name) in flat.iter().zip(&self.columns) {
            if !x.is_finite() {
                return Err(Error::NonFiniteTableValue {
                    column: name.clone(),
                });
            }
        }
        self.rows.push(flat);
        Ok(())
    }

    /// Look up a single cell by flattened column name.
    pub fn get(&self, row: usize, column: &str) -> Option<f64> {
        let idx = self.columns.iter().position(|c| c == column)?;
        self.rows.get(row).map(|r| r[idx])
    }

    pub fn write(&self, mut w: impl Write) -> Result<()> {
        for (key, value) in &self.meta {
            writeln!(w, "# {key} = {value}")?;
        }
        writeln!(w, "# columns: {}", self.columns.join(" "))?;
        writeln!(w, "# units: {}", self.units.join(" "))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(w, "{}", cells.join(" "))?;
        }
        Ok(())
    }

    pub fn write_to_path(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let file = std::fs::File::create(path)?;
        self.write(std::io::BufWriter::new(file))
    }

    /// Parse a table previously written by [`Table::write`].
    pub fn read(r: impl std::io::Read) -> Result<Table> {
        let reader = std::io::BufReader::new(r);
        let mut meta = BTreeMap::new();
        let mut columns: Vec<String> = Vec::new();
        let mut units: Vec<String> = Vec::new();
        let mut rows = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(cols) = rest.strip_prefix("columns:") {
                    columns = cols.split_whitespace().map(str::to_string).collect();
                } else if let Some(us) = rest.strip_prefix("units:") {
                    units = us.split_whitespace().map(str::to_string).collect();
                } else if let Some((key, value)) = rest.split_once('=') {
                    meta.insert(key.trim().to_string(), value.trim().to_string());
                }
                continue;
            }
            let row: std::result::Result<Vec<f64>, _> =
                line.split_whitespace().map(str::parse::<f64>).collect();
            let row = row.map_err(|e| Error::TableParse(format!("bad numeric row: {e}")))?;
            if !columns.is_empty() && row.len() != columns.len() {
                return Err(Error::TableParse(format!(
                    "row width {} does not match {} columns",
                    row.len(),
                    columns.len()
                )));
            }
            rows.push(row);
        }
        if columns.is_empty() {
            return Err(Error::TableParse("missing `# columns:` header".into()));
        }
        let slots = vec![false; columns.len()];
        Ok(Table {
            meta,
            columns,
            units,
            slots,
            rows,
        })
    }

    pub fn read_from_path(path: &Path) -> Result<Table> {
        Self::read(std::fs::File::open(path)?)
    }
}
