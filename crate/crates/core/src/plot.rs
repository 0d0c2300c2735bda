//! Plot data for `p(k, N)` against its leading asymptotic term, one row per `N`.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::spectral::{envelope_decimals, SciDecimal};
use crate::table::{BigNat, RootOrder};
use crate::tilting::TiltingRows;

pub const CSV_HEADER: &str = "l,k,N,p_exact,leading,error_bound,upper_bound";

#[derive(Debug, Clone, PartialEq)]
pub struct PlotRow {
    pub l: usize,
    pub k: usize,
    pub n: usize,
    pub p_exact: BigNat,
    pub leading: SciDecimal,
    pub error_bound: SciDecimal,
    pub upper_bound: SciDecimal,
}

impl PlotRow {
    /// `error_bound / leading` in double precision; infinite when the leading
    /// term is zero.
    pub fn relative_error(&self) -> f64 {
        if self.leading.is_zero() {
            f64::INFINITY
        } else {
            self.error_bound.to_f64() / self.leading.to_f64()
        }
    }
}

pub fn plot_rows(l: RootOrder, k: usize, ns: impl IntoIterator<Item = usize>) -> Result<Vec<PlotRow>> {
    let mut rows = TiltingRows::new(l);
    ns.into_iter()
        .map(|n| {
            let env = envelope_decimals(k, n, l)?;
            Ok(PlotRow {
                l: l.get(),
                k,
                n,
                p_exact: rows.row(n).get(k).clone(),
                leading: env.leading,
                error_bound: env.error_bound,
                upper_bound: env.upper_bound,
            })
        })
        .collect()
}

pub fn write_plot_csv<W: Write + ?Sized>(out: &mut W, rows: &[PlotRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.l, r.k, r.n, r.p_exact, r.leading, r.error_bound, r.upper_bound
        )?;
    }
    Ok(())
}

pub fn parse_plot_csv<R: BufRead>(input: R) -> Result<Vec<PlotRow>> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .transpose()
        .map_err(|e| Error::Parse(e.to_string()))?
        .unwrap_or_default();
    if header.trim() != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Parse(format!("line {}: expected 7 fields", i + 2)));
        }
        let bad = |what: &str| Error::Parse(format!("line {}: bad {what}", i + 2));
        rows.push(PlotRow {
            l: fields[0].parse().map_err(|_| bad("l"))?,
            k: fields[1].parse().map_err(|_| bad("k"))?,
            n: fields[2].parse().map_err(|_| bad("N"))?,
            p_exact: fields[3].parse().map_err(|_| bad("p_exact"))?,
            leading: fields[4].parse().map_err(|_| bad("leading"))?,
            error_bound: fields[5].parse().map_err(|_| bad("error_bound"))?,
            upper_bound: fields[6].parse().map_err(|_| bad("upper_bound"))?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let l = RootOrder::new(5).unwrap();
        let rows = plot_rows(l, 0, 0..=12).unwrap();
        assert_eq!(rows[8].p_exact, BigNat::from(13u32));
        assert!(rows[7].leading.is_zero());
        assert_eq!(rows[10].leading.to_string(), "3.3994116628998402e1");
        let mut buf = Vec::new();
        write_plot_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("l,k,N,p_exact,leading,error_bound,upper_bound\n5,0,0,1,"));
        let back = parse_plot_csv(&buf[..]).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn rejects_bad_csv() {
        assert!(parse_plot_csv(&b"a,b\n"[..]).is_err());
        let text = format!("{CSV_HEADER}\n5,0,1,x,0,0,0\n");
        assert!(parse_plot_csv(text.as_bytes()).is_err());
    }

    #[test]
    fn rejects_large_k() {
        assert!(plot_rows(RootOrder::new(5).unwrap(), 4, 0..3).is_err());
    }
}
