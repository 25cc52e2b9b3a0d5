//! Text format for simple functions.
//!
//! ```text
//! # comment
//! dim = 2
//! value=3 region=box lo=0,0 hi=1,2
//! value=-1 region=ball center=5,5 radius=1
//! ```

use std::fmt::Write as _;

use orlicz_core::{Ball, BoxRegion, Piece, Region, SimpleFunction};

#[derive(Debug, PartialEq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

fn numbers(line: usize, key: &str, s: &str) -> Result<Vec<f64>, FormatError> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| err(line, format!("`{key}` has invalid number `{x}`"))))
        .collect()
}

/// Parses one `key=value ...` piece record.
pub fn parse_piece(line: usize, record: &str) -> Result<Piece, FormatError> {
    let mut fields: Vec<(&str, &str)> = Vec::new();
    for tok in record.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got `{tok}`")))?;
        if fields.iter().any(|(seen, _)| *seen == k) {
            return Err(err(line, format!("`{k}` given twice")));
        }
        fields.push((k, v));
    }
    let get = |k: &str| {
        fields.iter().find(|(key, _)| *key == k).map(|(_, v)| *v).ok_or_else(|| err(line, format!("missing `{k}`")))
    };
    let allowed: &[&str] = match get("region")? {
        "box" => &["value", "region", "lo", "hi"],
        "ball" => &["value", "region", "center", "radius"],
        other => return Err(err(line, format!("unknown region `{other}`"))),
    };
    if let Some((k, _)) = fields.iter().find(|(k, _)| !allowed.contains(k)) {
        return Err(err(line, format!("unexpected field `{k}`")));
    }
    let value = get("value")?.parse::<f64>().map_err(|_| err(line, "invalid `value`"))?;
    let region = if get("region")? == "box" {
        let b = BoxRegion::new(numbers(line, "lo", get("lo")?)?, numbers(line, "hi", get("hi")?)?);
        Region::Box(b.map_err(|e| err(line, e.to_string()))?)
    } else {
        let r = get("radius")?.parse::<f64>().map_err(|_| err(line, "invalid `radius`"))?;
        let b = Ball::new(numbers(line, "center", get("center")?)?, r);
        Region::Ball(b.map_err(|e| err(line, e.to_string()))?)
    };
    Ok(Piece { value, region })
}

pub fn parse_function(text: &str) -> Result<SimpleFunction, FormatError> {
    let mut dim: Option<usize> = None;
    let mut pieces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            if let Some(v) = rest.trim_start().strip_prefix('=') {
                if dim.is_some() {
                    return Err(err(i + 1, "`dim` given twice"));
                }
                dim = Some(v.trim().parse().map_err(|_| err(i + 1, "invalid `dim`"))?);
                continue;
            }
        }
        pieces.push((i + 1, parse_piece(i + 1, line)?));
    }
    let dim = dim.or_else(|| pieces.first().map(|(_, p)| p.region.dim())).ok_or_else(|| err(0, "missing `dim`"))?;
    if let Some((line, p)) = pieces.iter().find(|(_, p)| p.region.dim() != dim) {
        return Err(err(*line, format!("piece has dimension {}, expected {dim}", p.region.dim())));
    }
    SimpleFunction::new(dim, pieces.into_iter().map(|(_, p)| p).collect()).map_err(|e| err(0, e.to_string()))
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn write_function(f: &SimpleFunction) -> String {
    let mut out = format!("dim = {}\n", f.dim());
    for p in f.pieces() {
        match &p.region {
            Region::Box(b) => {
                let _ = writeln!(out, "value={} region=box lo={} hi={}", p.value, join(b.lo()), join(b.hi()));
            }
            Region::Ball(b) => {
                let _ = writeln!(out, "value={} region=ball center={} radius={}", p.value, join(b.center()), b.radius());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# two pieces\ndim = 2\nvalue=3 region=box lo=0,0 hi=1,2\n\nvalue=-1 region=ball center=5,5 radius=1  # disk\n";

    #[test]
    fn parses_and_round_trips() {
        let f = parse_function(SAMPLE).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.pieces().len(), 2);
        assert_eq!(f.eval_at(&[0.5, 1.0]), 3.0);
        assert_eq!(f.eval_at(&[5.0, 5.5]), -1.0);
        assert_eq!(parse_function(&write_function(&f)).unwrap(), f);
    }

    #[test]
    fn dim_is_inferred() {
        let f = parse_function("value=1 region=box lo=0 hi=1").unwrap();
        assert_eq!(f.dim(), 1);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_function("dim = 1\nvalue=1 region=box lo=0 hi=1\nvalue=1 region=box lo=0.5 hi=2\n").unwrap_err();
        assert_eq!(e.line, 0);
        let e = parse_function("dim = 1\n\nvalue=x region=box lo=0 hi=1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_function("dim = 2\nvalue=1 region=box lo=0 hi=1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_function("value=1 region=cone").is_err());
        assert!(parse_function("value=1 region=box lo=0 hi=1 radius=2").is_err());
        assert!(parse_function("# nothing").is_err());
    }
}
