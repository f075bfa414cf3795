//! Disk files and complex output.
//!
//! Disk files come in two forms. CSV holds one `id,x,y,r` record per line;
//! `#` starts a comment line and an optional `id,x,y,r` header is skipped.
//! JSON is `{"disks":[{"id":0,"x":0.0,"y":0.0,"r":1.0}, ...]}`. Files ending
//! in `.json` are read as JSON, everything else as CSV.
//!
//! Complexes are written as `{"kind":"cech","dmax":2,"levels":[[[0],[1]],[[0,1]]]}`
//! with `dmax` null when uncapped.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::complex::{CechComplex, ComplexKind, DiskSet, Simplex, UNBOUNDED};
use crate::geometry::{Disk, VertexId};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct DiskRecord {
    id: VertexId,
    x: f64,
    y: f64,
    r: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct DiskFile {
    disks: Vec<DiskRecord>,
}

#[derive(Debug, Serialize)]
struct ComplexFile<'a> {
    kind: ComplexKind,
    dmax: Option<usize>,
    levels: &'a [Vec<Simplex>],
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn read_disks(path: &Path) -> Result<DiskSet> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    if is_json(path) {
        parse_json(&text, path)
    } else {
        parse_csv(&text, path)
    }
}

/// `origin` only labels error messages.
pub fn parse_csv(text: &str, origin: &Path) -> Result<DiskSet> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line: line as u64,
        message,
    };

    let mut disks = Vec::new();
    let mut seen_record = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let first = !std::mem::replace(&mut seen_record, true);
        if first && fields[0].eq_ignore_ascii_case("id") {
            continue;
        }
        if fields.len() != 4 {
            return Err(parse_err(
                line,
                format!("expected 4 fields id,x,y,r, found {}", fields.len()),
            ));
        }
        let id: VertexId = fields[0]
            .parse()
            .map_err(|_| parse_err(line, format!("bad id {:?}", fields[0])))?;
        let mut nums = [0.0; 3];
        for (slot, (name, field)) in nums
            .iter_mut()
            .zip(["x", "y", "r"].iter().zip(&fields[1..]))
        {
            *slot = field
                .parse()
                .map_err(|_| parse_err(line, format!("bad {name} {field:?}")))?;
        }
        let disk =
            Disk::new(id, nums[0], nums[1], nums[2]).map_err(|e| parse_err(line, e.to_string()))?;
        disks.push(disk);
    }
    DiskSet::new(disks)
}

pub fn parse_json(text: &str, origin: &Path) -> Result<DiskSet> {
    let file: DiskFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    let disks = file
        .disks
        .into_iter()
        .map(|d| Disk::new(d.id, d.x, d.y, d.r))
        .collect::<Result<Vec<_>>>()?;
    DiskSet::new(disks)
}

pub fn disks_to_csv(ds: &DiskSet) -> String {
    let mut out = String::from("id,x,y,r\n");
    for d in ds.disks() {
        // `{}` on f64 prints the shortest string that parses back exactly
        let _ = writeln!(out, "{},{},{},{}", d.id, d.center.x, d.center.y, d.radius);
    }
    out
}

pub fn disks_to_json(ds: &DiskSet) -> Result<String> {
    let file = DiskFile {
        disks: ds
            .disks()
            .iter()
            .map(|d| DiskRecord {
                id: d.id,
                x: d.center.x,
                y: d.center.y,
                r: d.radius,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn write_disks(ds: &DiskSet, path: &Path) -> Result<()> {
    let text = if is_json(path) {
        disks_to_json(ds)?
    } else {
        disks_to_csv(ds)
    };
    write_file(path, text.as_bytes())
}

pub fn complex_to_json(cx: &CechComplex) -> Result<String> {
    let file = ComplexFile {
        kind: cx.kind(),
        dmax: (cx.dmax() != UNBOUNDED).then_some(cx.dmax()),
        levels: cx.levels(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(io_err(path))
}

/// Placeholder origin for text that did not come from a file.
pub fn inline_origin() -> PathBuf {
    PathBuf::from("<input>")
}
