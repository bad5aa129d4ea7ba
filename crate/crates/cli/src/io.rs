//! Lattice, map and family files, and built-in lattice names.
//!
//! Files are JSON objects. Reading goes through serde; writing uses a fixed
//! layout (one table row per line, fields in schema order) so that a file in
//! canonical form is reproduced byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use leibniz_core::fincat::{Family, FinMap};
use leibniz_core::lattice::FiniteLattice;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown lattice `{0}` (expected chain:N, boolean:K, product:A,B, C<N>, B<K> or a file path)")]
    UnknownLattice(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    size: usize,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    fibers: Vec<usize>,
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, IoError> {
    let file: LatticeFile = serde_json::from_str(text)?;
    if file.meet.len() != file.size {
        return Err(IoError::Invalid(format!(
            "size is {} but the meet table has {} rows",
            file.size,
            file.meet.len()
        )));
    }
    let l = FiniteLattice::from_rows(&file.meet, &file.join, file.bottom, file.top)
        .map_err(|e| IoError::Invalid(e.to_string()))?;
    match file.labels {
        Some(labels) => l.with_labels(labels).map_err(|e| IoError::Invalid(e.to_string())),
        None => Ok(l),
    }
}

pub fn parse_map(text: &str) -> Result<FinMap, IoError> {
    let file: MapFile = serde_json::from_str(text)?;
    if file.table.len() != file.dom {
        return Err(IoError::Invalid(format!(
            "dom is {} but the table has {} entries",
            file.dom,
            file.table.len()
        )));
    }
    FinMap::new(file.cod, file.table).map_err(|e| IoError::Invalid(e.to_string()))
}

pub fn parse_family(text: &str) -> Result<Family, IoError> {
    let file: FamilyFile = serde_json::from_str(text)?;
    Ok(Family::new(file.fibers))
}

fn row(values: &[usize]) -> String {
    let items: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn table(out: &mut String, name: &str, l: &FiniteLattice, op: fn(&FiniteLattice, usize, usize) -> usize) {
    let n = l.size();
    let _ = writeln!(out, "  \"{name}\": [");
    for x in 0..n {
        let r: Vec<usize> = (0..n).map(|y| op(l, x, y)).collect();
        let sep = if x + 1 < n { "," } else { "" };
        let _ = writeln!(out, "    {}{sep}", row(&r));
    }
    out.push_str("  ],\n");
}

pub fn write_lattice(l: &FiniteLattice) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"size\": {},", l.size());
    table(&mut out, "meet", l, FiniteLattice::meet);
    table(&mut out, "join", l, FiniteLattice::join);
    let _ = write!(out, "  \"bottom\": {},\n  \"top\": {}", l.bottom(), l.top());
    if let Some(labels) = l.labels() {
        let quoted: Vec<String> = labels
            .iter()
            .map(|s| serde_json::to_string(s).expect("strings serialize"))
            .collect();
        let _ = write!(out, ",\n  \"labels\": [{}]", quoted.join(", "));
    }
    out.push_str("\n}\n");
    out
}

pub fn write_map(f: &FinMap) -> String {
    format!(
        "{{\n  \"dom\": {},\n  \"cod\": {},\n  \"table\": {}\n}}\n",
        f.dom(),
        f.cod(),
        row(f.table())
    )
}

pub fn write_family(fam: &Family) -> String {
    format!("{{\n  \"fibers\": {}\n}}\n", row(fam.fibers()))
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_map(path: &Path) -> Result<FinMap, IoError> {
    parse_map(&read(path)?)
}

pub fn read_family(path: &Path) -> Result<Family, IoError> {
    parse_family(&read(path)?)
}

/// A lattice with the name it was requested by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedLattice {
    pub name: String,
    pub lattice: FiniteLattice,
}

/// The built-in names accepted by [`resolve_lattice`].
pub const BUILTIN_FORMS: [&str; 5] = ["chain:N", "boolean:K", "product:A,B", "C<N>", "B<K>"];

fn builtin(spec: &str) -> Result<Option<FiniteLattice>, IoError> {
    let bad = |e: leibniz_core::lattice::LatticeError| IoError::Invalid(e.to_string());
    let number = |s: &str| s.parse::<usize>().map_err(|_| IoError::UnknownLattice(spec.to_string()));
    if let Some(rest) = spec.strip_prefix("chain:") {
        return Ok(Some(FiniteLattice::chain(number(rest)?).map_err(bad)?));
    }
    if let Some(rest) = spec.strip_prefix("boolean:") {
        return Ok(Some(FiniteLattice::boolean(number(rest)?).map_err(bad)?));
    }
    if let Some(rest) = spec.strip_prefix("product:") {
        // the first comma whose two sides both resolve
        for (i, _) in rest.match_indices(',') {
            if let (Ok(Some(a)), Ok(Some(b))) = (builtin(&rest[..i]), builtin(&rest[i + 1..])) {
                return Ok(Some(FiniteLattice::product(&a, &b).map_err(bad)?));
            }
        }
        return Err(IoError::UnknownLattice(spec.to_string()));
    }
    let short = |p: char| spec.strip_prefix(p).filter(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()));
    if let Some(rest) = short('C') {
        return Ok(Some(FiniteLattice::chain(number(rest)?).map_err(bad)?));
    }
    if let Some(rest) = short('B') {
        return Ok(Some(FiniteLattice::boolean(number(rest)?).map_err(bad)?));
    }
    Ok(None)
}

/// A built-in name, or else a lattice file path.
pub fn resolve_lattice(spec: &str) -> Result<NamedLattice, IoError> {
    let lattice = match builtin(spec)? {
        Some(l) => l,
        None => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(IoError::UnknownLattice(spec.to_string()));
            }
            parse_lattice(&read(path)?)?
        }
    };
    Ok(NamedLattice {
        name: spec.to_string(),
        lattice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_round_trip_is_byte_exact() {
        for l in [
            FiniteLattice::chain(3).unwrap(),
            FiniteLattice::boolean(2).unwrap(),
            FiniteLattice::from_rows(&[vec![0]], &[vec![0]], 0, 0).unwrap(),
        ] {
            let text = write_lattice(&l);
            let back = parse_lattice(&text).unwrap();
            assert_eq!(back, l);
            assert_eq!(write_lattice(&back), text);
        }
    }

    #[test]
    fn canonical_chain_file() {
        let text = write_lattice(&FiniteLattice::chain(2).unwrap());
        assert_eq!(
            text,
            "{\n  \"size\": 2,\n  \"meet\": [\n    [0, 0],\n    [0, 1]\n  ],\n  \"join\": [\n    [0, 1],\n    [1, 1]\n  ],\n  \"bottom\": 0,\n  \"top\": 1,\n  \"labels\": [\"0\", \"1\"]\n}\n"
        );
    }

    #[test]
    fn maps_and_families_round_trip() {
        let f = FinMap::new(3, vec![0, 2, 2]).unwrap();
        assert_eq!(write_map(&parse_map(&write_map(&f)).unwrap()), write_map(&f));
        let e = FinMap::empty(4);
        assert_eq!(parse_map(&write_map(&e)).unwrap(), e);
        let fam = Family::new(vec![2, 0, 1]);
        assert_eq!(parse_family(&write_family(&fam)).unwrap(), fam);
        assert_eq!(write_family(&fam), "{\n  \"fibers\": [2, 0, 1]\n}\n");
    }

    #[test]
    fn rejects_inconsistent_files() {
        assert!(parse_map(r#"{"dom": 2, "cod": 1, "table": [0]}"#).is_err());
        assert!(parse_map(r#"{"dom": 1, "cod": 1, "table": [1]}"#).is_err());
        assert!(parse_map(r#"{"dom": 1, "cod": 1, "table": [0], "extra": 1}"#).is_err());
        assert!(parse_lattice(r#"{"size": 2, "meet": [[0]], "join": [[0]], "bottom": 0, "top": 0}"#).is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(resolve_lattice("chain:3").unwrap().lattice.size(), 3);
        assert_eq!(resolve_lattice("C4").unwrap().lattice.size(), 4);
        assert_eq!(resolve_lattice("B2").unwrap().lattice.size(), 4);
        assert_eq!(resolve_lattice("product:chain:2,chain:3").unwrap().lattice.size(), 6);
        assert!(resolve_lattice("chain:x").is_err());
        assert!(resolve_lattice("no-such-lattice").is_err());
    }
}
