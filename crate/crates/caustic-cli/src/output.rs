//! Deterministic file emission: CSV with 17-significant-digit floats and
//! binary 16-bit PGM.

use std::io::Write;

use caustic_core::FieldMap;

/// Format a float with 17 significant digits ('.' decimal separator), enough
/// to round-trip any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Wrap an unwrapped phase to the principal interval (-π, π].
pub fn wrap_phase(phi: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = phi.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r - two_pi
    } else {
        r
    }
}

/// Unwrap a sequence of principal-value phases by removing 2π jumps between
/// consecutive entries.
pub fn unwrap_phases(wrapped: &[f64]) -> Vec<f64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::with_capacity(wrapped.len());
    let mut offset = 0.0;
    for (i, &p) in wrapped.iter().enumerate() {
        if i > 0 {
            let jump = p - wrapped[i - 1];
            if jump > std::f64::consts::PI {
                offset -= two_pi;
            } else if jump < -std::f64::consts::PI {
                offset += two_pi;
            }
        }
        out.push(p + offset);
    }
    out
}

/// Field map as CSV: ny rows by nx columns, row-major with y ascending,
/// linear normalized power.
pub fn write_field_csv<W: Write>(mut w: W, map: &FieldMap) -> std::io::Result<()> {
    let grid = map.grid();
    for j in 0..grid.ny() {
        let mut line = String::new();
        for i in 0..grid.nx() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&fmt_f64(map.value(i, j)));
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Field map as binary 16-bit PGM (P5, maxval 65535, big-endian samples).
///
/// Pixel value = `round(65535 · clamp((db + 60) / 60, 0, 1))` with
/// `db = 10·log10(power)`; columns follow x ascending, rows y descending
/// (image convention, top row = y_max).
pub fn write_field_pgm<W: Write>(mut w: W, map: &FieldMap) -> std::io::Result<()> {
    let grid = map.grid();
    write!(w, "P5\n{} {}\n65535\n", grid.nx(), grid.ny())?;
    let mut row = Vec::with_capacity(grid.nx() * 2);
    for j in (0..grid.ny()).rev() {
        row.clear();
        for i in 0..grid.nx() {
            let v = map.value(i, j);
            let pixel = if v > 0.0 {
                let db = 10.0 * v.log10();
                let t = ((db + 60.0) / 60.0).clamp(0.0, 1.0);
                (65535.0 * t).round() as u16
            } else {
                0
            };
            row.extend_from_slice(&pixel.to_be_bytes());
        }
        w.write_all(&row)?;
    }
    Ok(())
}
