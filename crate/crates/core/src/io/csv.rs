//! CSV emission and parsing.
//!
//! All files are RFC-4180-style with LF line endings, '.' decimal
//! separator, and floats printed with 17 significant digits so a written
//! double parses back bit-exactly.

use std::fmt::Write as _;

/// Format a float with 17 significant digits (round-trip exact for f64).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x,T,regime` rows of a transmission sweep.
pub fn transmission_csv(rows: &[(f64, f64, &str)]) -> String {
    let mut out = String::from("x,T,regime\n");
    for (x, t, regime) in rows {
        let _ = writeln!(out, "{},{},{}", fmt_f64(*x), fmt_f64(*t), regime);
    }
    out
}

/// `V_mV,I_norm,est_error,n_evals` rows of an I-V sweep.
pub fn iv_csv(points: &[crate::landauer::IVPoint]) -> String {
    let mut out = String::from("V_mV,I_norm,est_error,n_evals\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(p.v_mv),
            fmt_f64(p.i_norm),
            fmt_f64(p.est_error),
            p.n_evals
        );
    }
    out
}

/// Wide-format CSV: a shared x column followed by one column per curve.
/// Every curve must have the same length as `x`.
pub fn wide_csv(x_header: &str, x: &[f64], curves: &[(String, Vec<f64>)]) -> String {
    let mut out = String::from(x_header);
    for (name, ys) in curves {
        assert_eq!(ys.len(), x.len(), "curve `{name}` length mismatch");
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, &xv) in x.iter().enumerate() {
        out.push_str(&fmt_f64(xv));
        for (_, ys) in curves {
            out.push(',');
            out.push_str(&fmt_f64(ys[i]));
        }
        out.push('\n');
    }
    out
}

/// Parse a `V_mV,I_norm,est_error,n_evals` document back into bias/current
/// pairs. Errors name the offending 1-based line.
pub fn parse_iv_csv(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "V_mV,I_norm,est_error,n_evals" => {}
        Some((_, header)) => {
            return Err(format!(
                "line 1: expected header `V_mV,I_norm,est_error,n_evals`, got `{header}`"
            ))
        }
        None => return Err("line 1: empty document".into()),
    }
    let mut points = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(format!(
                "line {lineno}: expected 4 fields, got {}",
                fields.len()
            ));
        }
        let v: f64 = fields[0]
            .trim()
            .parse()
            .map_err(|e| format!("line {lineno}: bad V_mV value `{}`: {e}", fields[0]))?;
        let i: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|e| format!("line {lineno}: bad I_norm value `{}`: {e}", fields[1]))?;
        points.push((v, i));
    }
    if points.is_empty() {
        return Err("line 2: no data rows".into());
    }
    Ok(points)
}
