//! Plain CSV exports with a `c0,c1,…` header.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fock::PhotonConfiguration;
use crate::formats::qls::{Payload, QlsBatch};
use crate::sampler::DistributionTable;

fn header(cols: usize, extra: Option<&str>) -> String {
    let mut h = (0..cols).map(|j| format!("c{j}")).collect::<Vec<_>>().join(",");
    if let Some(e) = extra {
        h.push(',');
        h.push_str(e);
    }
    h.push('\n');
    h
}

pub fn batch_to_csv(batch: &QlsBatch) -> String {
    let mut out = header(batch.cols(), None);
    let cols = batch.cols();
    let mut push_rows = |cells: Vec<String>| {
        for row in cells.chunks(cols) {
            out.push_str(&row.join(","));
            out.push('\n');
        }
    };
    match batch.payload() {
        Payload::F32(v) => push_rows(v.iter().map(|x| x.to_string()).collect()),
        Payload::I32(v) => push_rows(v.iter().map(|x| x.to_string()).collect()),
    }
    out
}

/// One row per configuration, occupations then probability.
pub fn table_to_csv(table: &DistributionTable) -> String {
    let mut out = header(table.modes(), Some("probability"));
    for (c, p) in table.entries() {
        for t in c.occupations() {
            write!(out, "{t},").unwrap();
        }
        writeln!(out, "{p:e}").unwrap();
    }
    out
}

pub fn table_from_csv(text: &str) -> Result<DistributionTable> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().ok_or_else(|| Error::Format("empty distribution file".into()))?;
    let fields: Vec<&str> = head.split(',').collect();
    if fields.last() != Some(&"probability") || fields.len() < 2 {
        return Err(Error::Format("distribution header must end in `probability`".into()));
    }
    let modes = fields.len() - 1;
    let mut entries = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != modes + 1 {
            return Err(Error::Format(format!("row {}: expected {} fields", i + 1, modes + 1)));
        }
        let occ = cells[..modes]
            .iter()
            .map(|s| s.parse::<u32>().map_err(|_| Error::Format(format!("row {}: bad count {s:?}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let p: f64 = cells[modes].parse().map_err(|_| Error::Format(format!("row {}: bad probability", i + 1)))?;
        entries.push((PhotonConfiguration::new(occ), p));
    }
    let photons = entries.first().map_or(0, |(c, _)| c.total());
    DistributionTable::from_entries(modes, photons, entries)
}
