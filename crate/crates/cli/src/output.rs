//! CSV tables and number formatting.

use std::io::Write;

/// Seventeen significant digits, enough to read every double back exactly.
/// Missing values are empty fields.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

/// Decimal rendering of `exp(ln_value)` that also covers magnitudes beyond
/// the double range, e.g. `2.5e1234`.
pub fn fmt_from_ln(ln_value: f64) -> String {
    if ln_value.is_nan() {
        return String::new();
    }
    let direct = ln_value.exp();
    if direct.is_finite() && direct > f64::MIN_POSITIVE {
        return fmt_f64(direct);
    }
    if ln_value == f64::INFINITY {
        return "inf".into();
    }
    if ln_value == f64::NEG_INFINITY {
        return fmt_f64(0.0);
    }
    let log10 = ln_value / std::f64::consts::LN_10;
    let mut exponent = log10.floor();
    let mut mantissa = 10f64.powf(log10 - exponent);
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    format!("{mantissa:.15}e{exponent:.0}")
}

/// A header row plus string records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// UTF-8, LF line endings, header first.
    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    pub fn write_to(&self, out: &mut dyn Write) -> std::io::Result<()> {
        out.write_all(&self.to_csv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, -2.5e-300, 1e308, std::f64::consts::PI, 0.0, 4.05719e76] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(f64::NAN), "");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn huge_from_log() {
        assert_eq!(fmt_from_ln(0.0).parse::<f64>().unwrap(), 1.0);
        let s = fmt_from_ln(1234.5 * std::f64::consts::LN_10);
        assert!(s.starts_with("3.16227766016"), "{s}");
        assert!(s.ends_with("e1234"), "{s}");
        let tiny = fmt_from_ln(-800.0 * std::f64::consts::LN_10);
        assert!(tiny.ends_with("e-800"), "{tiny}");
    }

    #[test]
    fn csv_uses_lf() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec!["1".into(), "x;y".into()]);
        assert_eq!(String::from_utf8(t.to_csv()).unwrap(), "a,b\n1,x;y\n");
    }
}
