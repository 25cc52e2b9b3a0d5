//! Flat `key = value` config files with `[section]` headers.
//!
//! Every key is the long name of a command-line flag (`seed = 7` mirrors
//! `--seed 7`); sections only group keys. Flags given on the command line
//! take precedence.

use std::collections::BTreeMap;

use crate::fnfile::FormatError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                let name = line.strip_prefix('[').and_then(|l| l.strip_suffix(']'));
                match name {
                    Some(n) if !n.trim().is_empty() => continue,
                    _ => return Err(FormatError { line: i + 1, message: format!("bad section header `{line}`") }),
                }
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| FormatError { line: i + 1, message: format!("expected key = value, got `{line}`") })?;
            let key = k.trim().replace('_', "-");
            if values.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(FormatError { line: i + 1, message: format!("`{key}` given twice") });
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_comments() {
        let c = ConfigFile::parse("# run\n[corpus]\nseed = 7\nsize=20 # small\n\n[functions]\nphi1 = power(p=2,c=1)\nt_points = 11\n")
            .unwrap();
        assert_eq!(c.get("seed"), Some("7"));
        assert_eq!(c.get("size"), Some("20"));
        assert_eq!(c.get("phi1"), Some("power(p=2,c=1)"));
        assert_eq!(c.get("t-points"), Some("11"));
        assert_eq!(c.get("dim"), None);
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(ConfigFile::parse("seed 7").unwrap_err().line, 1);
        assert_eq!(ConfigFile::parse("[a]\nseed=1\n[b]\nseed=2").unwrap_err().line, 4);
        assert!(ConfigFile::parse("[]").is_err());
    }
}
