//! Whitespace-separated decimal residues, `#` to end of line is a comment.
//! Values are not reduced: anything outside `[0, m)` is rejected.

use std::path::Path;

use sumprod_core::{Modulus, ResidueSet};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedSet {
    pub set: ResidueSet,
    /// Tokens that repeated an earlier value.
    pub duplicates: usize,
}

pub fn parse_set_file(path: &Path, modulus: &Modulus) -> Result<ParsedSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    parse_set_str(&text, modulus, &path.display().to_string())
}

/// `origin` only labels error messages.
pub fn parse_set_str(text: &str, modulus: &Modulus, origin: &str) -> Result<ParsedSet, CliError> {
    let m = modulus.m();
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for token in line.split_whitespace() {
            let digits = token.strip_prefix('-').unwrap_or(token);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(CliError::NotNumeric { origin: origin.to_string(), line: idx + 1, token: token.to_string() });
            }
            let value = match token.parse::<u64>() {
                Ok(v) if v < m => v,
                _ => {
                    return Err(CliError::OutOfRange {
                        origin: origin.to_string(),
                        line: idx + 1,
                        token: token.to_string(),
                        modulus: m,
                    })
                }
            };
            values.push(value);
        }
    }
    let total = values.len();
    let set = ResidueSet::from_residues(modulus, values)?;
    Ok(ParsedSet { duplicates: total - set.len(), set })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn comments_and_duplicates() {
        let got = parse_set_str("1 2 3 # tail", &md(7), "t").unwrap();
        assert_eq!(got.set.to_vec(), vec![1, 2, 3]);
        assert_eq!(got.duplicates, 0);

        let got = parse_set_str("3 3", &md(7), "t").unwrap();
        assert_eq!(got.set.to_vec(), vec![3]);
        assert_eq!(got.duplicates, 1);

        let got = parse_set_str("# only a comment\n\n 4\t5\n5 # again\n", &md(7), "t").unwrap();
        assert_eq!(got.set.to_vec(), vec![4, 5]);
        assert_eq!(got.duplicates, 1);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(matches!(parse_set_str("9", &md(9), "t"), Err(CliError::OutOfRange { line: 1, .. })));
        assert!(matches!(parse_set_str("1\n-3", &md(9), "t"), Err(CliError::OutOfRange { line: 2, .. })));
        assert!(matches!(parse_set_str("1 x2", &md(9), "t"), Err(CliError::NotNumeric { .. })));
        assert!(matches!(parse_set_str("1.5", &md(9), "t"), Err(CliError::NotNumeric { .. })));
        assert!(matches!(parse_set_str("-", &md(9), "t"), Err(CliError::NotNumeric { .. })));
        assert!(matches!(
            parse_set_str("99999999999999999999999", &md(9), "t"),
            Err(CliError::OutOfRange { .. })
        ));
    }
}
