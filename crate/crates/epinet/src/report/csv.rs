//! `node,S,D,pi,h` profile tables.

use epinet_core::{NodeProfile, ProfileTable, TableMeta};

use crate::error::{Error, Result};

pub const HEADER: [&str; 5] = ["node", "S", "D", "pi", "h"];

pub fn write_profile_csv(table: &ProfileTable) -> Result<String> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    for r in table.rows() {
        w.write_record([r.node.clone(), r.s.to_string(), r.d.to_string(), r.pi.to_string(), r.h.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
}

/// Reads a table written by [`write_profile_csv`]; `pi` must equal `S * D`.
pub fn read_profile_csv(text: &str) -> Result<ProfileTable> {
    let mut reader = ::csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::invalid(format!("profile header must be {}, found {}", HEADER.join(","), header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let num = |col: usize| -> Result<u64> {
            record[col]
                .parse()
                .map_err(|_| Error::parse(line, format!("column {} is not a non-negative integer: {:?}", HEADER[col], &record[col])))
        };
        let narrow = |col: usize| -> Result<u32> {
            u32::try_from(num(col)?).map_err(|_| Error::parse(line, format!("column {} out of range", HEADER[col])))
        };
        let row = NodeProfile::new(&record[0], narrow(1)?, narrow(2)?, narrow(4)?);
        if num(3)? != row.pi {
            return Err(Error::invalid(format!("line {line}: pi must equal S * D for node {}", row.node)));
        }
        rows.push(row);
    }
    Ok(ProfileTable::from_rows(rows, TableMeta::default())?)
}
