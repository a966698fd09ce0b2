//! The `a+bi` / `a-bi` literal format for complex flags.
//!
//! Accepted forms: `1+1.5i`, `3-i`, `-1+i`, `2.5i`, `i`, `-i`, and plain
//! reals like `2`. Components are decimal with optional exponents; the
//! split sign is the first `+`/`-` that is neither leading nor part of an
//! exponent.

use paspectra_core::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let bytes = t.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    match split {
        Some(i) => {
            let (re_part, im_part) = (&t[..i], &t[i..]);
            let im_part = im_part
                .strip_suffix('i')
                .ok_or_else(|| format!("expected trailing 'i' in `{t}`"))?;
            let re = parse_real(re_part)?;
            let im = match im_part {
                "+" => 1.0,
                "-" => -1.0,
                other => parse_real(other)?,
            };
            Ok(Complex64::new(re, im))
        }
        None => {
            if let Some(im_part) = t.strip_suffix('i') {
                let im = match im_part {
                    "" => 1.0,
                    "-" => -1.0,
                    other => parse_real(other)?,
                };
                Ok(Complex64::new(0.0, im))
            } else {
                Ok(Complex64::new(parse_real(t)?, 0.0))
            }
        }
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .map_err(|_| format!("invalid real component `{s}`"))
}

/// Canonical text for a complex value, parseable by [`parse_complex`].
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im >= 0.0 || z.im.is_nan() {
        "+"
    } else {
        "-"
    };
    format!("{:.16e}{}{:.16e}i", z.re, sign, z.im.abs())
}
