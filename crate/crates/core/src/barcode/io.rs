//! Barcode CSV: one bar per line as `dim,birth,death`, multiplicity by
//! repetition, `inf` allowed as a death, optional `dim,birth,death` header.

use std::fmt::Write as _;
use std::path::Path;

use super::{Barcode, BarcodeSet, Interval};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn parse_barcodes<T: Real>(text: &str) -> Result<BarcodeSet<T>> {
    let mut per_dim: std::collections::BTreeMap<usize, Vec<Interval<T>>> = Default::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if idx == 0 && fields == ["dim", "birth", "death"] {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if fields.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        }
        let dim: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("bad dimension `{}`", fields[0])))?;
        let birth = parse_value::<T>(fields[1]).ok_or_else(|| err(format!("bad birth `{}`", fields[1])))?;
        let death = parse_value::<T>(fields[2]).ok_or_else(|| err(format!("bad death `{}`", fields[2])))?;
        let iv = Interval::new(birth, death).map_err(|e| err(e.to_string()))?;
        per_dim.entry(dim).or_default().push(iv);
    }
    Ok(per_dim
        .into_iter()
        .map(|(d, ivs)| (d, Barcode::from_intervals(d, ivs)))
        .collect())
}

fn parse_value<T: Real>(s: &str) -> Option<T> {
    let v = match s.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => T::infinity(),
        _ => s.parse::<T>().ok()?,
    };
    (!v.is_nan()).then_some(v)
}

/// Serializes barcodes with a header line, in dimension then bar order.
pub fn format_barcodes<T: Real>(set: &BarcodeSet<T>) -> String {
    let mut out = String::from("dim,birth,death\n");
    for (dim, b) in set {
        for iv in b.expanded() {
            let death = if iv.is_essential() {
                "inf".to_string()
            } else {
                iv.death().to_string()
            };
            let _ = writeln!(out, "{dim},{},{death}", iv.birth());
        }
    }
    out
}

pub fn read_barcodes<T: Real>(path: impl AsRef<Path>) -> Result<BarcodeSet<T>> {
    parse_barcodes(&std::fs::read_to_string(path)?)
}

pub fn write_barcodes<T: Real>(set: &BarcodeSet<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_barcodes(set))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_row() {
        let set = parse_barcodes::<f64>("0,0.0,1.5").unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set[&0], Barcode::from_pairs(0, [(0.0, 1.5)]).unwrap());
    }

    #[test]
    fn rejects_reversed_interval_with_line_number() {
        let err = parse_barcodes::<f64>("dim,birth,death\n0,0,1\n1,2.0,1.0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(matches!(
            parse_barcodes::<f64>("0,1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_barcodes::<f64>("x,0,1").is_err());
        assert!(parse_barcodes::<f64>("0,0,nan").is_err());
    }

    #[test]
    fn infinity_and_repetition() {
        let set = parse_barcodes::<f64>("0,0,inf\n0,0,inf\n1,0.5,1\n").unwrap();
        assert_eq!(set[&0].len(), 2);
        assert!(set[&0].has_essential());
        assert_eq!(set[&1].dimension(), 1);
    }

    #[test]
    fn round_trip() {
        let text = "dim,birth,death\n0,0,inf\n0,0.1,0.30000000000000004\n0,0.1,0.30000000000000004\n1,1,1.4142135623730951\n";
        let set = parse_barcodes::<f64>(text).unwrap();
        assert_eq!(format_barcodes(&set), text);
        assert_eq!(parse_barcodes::<f64>(&format_barcodes(&set)).unwrap(), set);
    }
}
