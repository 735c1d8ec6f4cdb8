//! Flat `key=value` parameter files.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use abcd_core::{AbcdParams, Variant};

use crate::error::{Error, Result};

pub const KEYS: [&str; 9] = ["n", "gamma", "delta", "zeta", "beta", "s", "tau", "xi", "variant"];

/// One non-blank, non-comment line.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Entry<'a> {
    pub line: usize,
    pub key: &'a str,
    pub value: &'a str,
}

/// Splits text into `key=value` entries. Lines starting with `#` and blank
/// lines are skipped.
pub(crate) fn entries<'a>(text: &'a str, origin: &str) -> Result<Vec<Entry<'a>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(origin, i + 1, "expected key=value"))?;
        out.push(Entry { line: i + 1, key: key.trim(), value: value.trim() });
    }
    Ok(out)
}

pub(crate) fn parse_value<T: FromStr>(origin: &str, e: &Entry) -> Result<T> {
    e.value
        .parse()
        .map_err(|_| Error::parse(origin, e.line, format!("invalid value for {}: {:?}", e.key, e.value)))
}

/// Applies one parameter entry. Returns `false` if `key` is not a parameter.
pub(crate) fn set_param(p: &mut AbcdParams, origin: &str, e: &Entry) -> Result<bool> {
    match e.key {
        "n" => p.n = parse_value(origin, e)?,
        "gamma" => p.gamma = parse_value(origin, e)?,
        "delta" => p.delta = parse_value(origin, e)?,
        "zeta" => p.zeta = parse_value(origin, e)?,
        "beta" => p.beta = parse_value(origin, e)?,
        "s" => p.s = parse_value(origin, e)?,
        "tau" => p.tau = parse_value(origin, e)?,
        "xi" => p.xi = parse_value(origin, e)?,
        "variant" => {
            p.variant = Variant::parse(e.value).ok_or_else(|| {
                Error::parse(origin, e.line, format!("unknown variant {:?}", e.value))
            })?
        }
        _ => return Ok(false),
    }
    Ok(true)
}

/// Parses and validates a parameter file. Every key except `variant`
/// (default `discrete`) is required; unknown and repeated keys are errors.
pub fn parse_params(text: &str, origin: &str) -> Result<AbcdParams> {
    let mut p = AbcdParams::reference(0, 0.0);
    let mut seen = [false; KEYS.len()];
    let mut last_line = 0;
    for e in entries(text, origin)? {
        last_line = e.line;
        let slot = KEYS
            .iter()
            .position(|&k| k == e.key)
            .ok_or_else(|| Error::parse(origin, e.line, format!("unknown key {:?}", e.key)))?;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(Error::parse(origin, e.line, format!("repeated key {:?}", e.key)));
        }
        set_param(&mut p, origin, &e)?;
    }
    p.variant = if seen[8] { p.variant } else { Variant::Discrete };
    if let Some(missing) = KEYS[..8].iter().zip(&seen).find(|(_, &s)| !s) {
        return Err(Error::parse(origin, last_line, format!("missing key {:?}", missing.0)));
    }
    Ok(p.validate()?)
}

pub fn load_params(path: &Path) -> Result<AbcdParams> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_params(&text, &path.display().to_string())
}

/// Writes every key; floats use the shortest representation that parses back
/// to the same value.
pub fn render_params(p: &AbcdParams) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={}", p.n);
    let _ = writeln!(out, "gamma={}", p.gamma);
    let _ = writeln!(out, "delta={}", p.delta);
    let _ = writeln!(out, "zeta={}", p.zeta);
    let _ = writeln!(out, "beta={}", p.beta);
    let _ = writeln!(out, "s={}", p.s);
    let _ = writeln!(out, "tau={}", p.tau);
    let _ = writeln!(out, "xi={}", p.xi);
    let _ = writeln!(out, "variant={}", p.variant.as_str());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# reference graph\nn=1000\ngamma=2.5\ndelta=5\nzeta=0.5\nbeta=1.5\ns=50\ntau=0.75\nxi=0.2\n";

    #[test]
    fn parses_the_eight_keys() {
        let p = parse_params(SAMPLE, "sample").unwrap();
        assert_eq!(p, AbcdParams::reference(1000, 0.2));
    }

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_xi() {
        let text = SAMPLE.replace("xi=0.2\n", "");
        assert!(matches!(parse_params(&text, "t"), Err(Error::Parse { .. })));
    }

    #[test]
    fn malformed_number_reports_its_line() {
        let text = SAMPLE.replace("gamma=2.5", "gamma=abc");
        assert_eq!(line_of(parse_params(&text, "t").unwrap_err()), 3);
    }

    #[test]
    fn unknown_and_repeated_keys() {
        assert_eq!(line_of(parse_params(&format!("{SAMPLE}colour=red\n"), "t").unwrap_err()), 10);
        assert_eq!(line_of(parse_params(&format!("{SAMPLE}n=5\n"), "t").unwrap_err()), 10);
        assert!(parse_params("n 5\n", "t").is_err());
    }

    #[test]
    fn out_of_range_values_are_range_errors() {
        let text = SAMPLE.replace("xi=0.2", "xi=1.5");
        assert!(matches!(
            parse_params(&text, "t"),
            Err(Error::Model(abcd_core::Error::Range(abcd_core::error::Field::Xi)))
        ));
    }

    #[test]
    fn variant_key() {
        let p = parse_params(&format!("{SAMPLE}variant=continuous\n"), "t").unwrap();
        assert_eq!(p.variant, Variant::Continuous);
    }
}
