//! Edit distance between a pattern and the best-matching substring of a text.
//!
//! Costs are unit for insertion, deletion and substitution.

use crate::error::{Error, Result};

/// Levenshtein distance.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = diag + usize::from(ca != cb);
            diag = row[j + 1];
            row[j + 1] = sub.min(row[j] + 1).min(diag + 1);
        }
    }
    row[b.len()]
}

pub fn edit_distance_str(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    edit_distance(&a, &b)
}

/// `min over substrings S of text` of `edit_distance(S, pattern)`.
///
/// Rows run over the pattern, columns over the text; the first row is all
/// zeros so an alignment may start anywhere in the text, and the answer is
/// the minimum of the last row.
pub fn substring_edit_distance<T: PartialEq>(text: &[T], pattern: &[T]) -> usize {
    let mut row = vec![0usize; text.len() + 1];
    for (i, cp) in pattern.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, ct) in text.iter().enumerate() {
            let sub = diag + usize::from(cp != ct);
            diag = row[j + 1];
            row[j + 1] = sub.min(row[j] + 1).min(diag + 1);
        }
    }
    row.into_iter().min().unwrap_or(0)
}

pub fn substring_edit_distance_str(text: &str, pattern: &str) -> usize {
    let t: Vec<char> = text.chars().collect();
    let p: Vec<char> = pattern.chars().collect();
    substring_edit_distance(&t, &p)
}

/// Whether some substring of `text` lies within `kappa` edits of `pattern`.
pub fn within_distance<T: PartialEq>(text: &[T], pattern: &[T], kappa: usize) -> bool {
    substring_edit_distance(text, pattern) <= kappa
}

pub const ORACLE_MAX_TEXT: usize = 15;
pub const ORACLE_MAX_PATTERN: usize = 8;

/// Enumerates every substring (including the empty one) and takes the best
/// edit distance.
pub fn substring_ed_bruteforce<T: PartialEq>(text: &[T], pattern: &[T]) -> Result<usize> {
    if text.len() > ORACLE_MAX_TEXT || pattern.len() > ORACLE_MAX_PATTERN {
        return Err(Error::OracleRefused(format!(
            "|T| = {}, |P| = {} exceed caps ({ORACLE_MAX_TEXT}, {ORACLE_MAX_PATTERN})",
            text.len(),
            pattern.len()
        )));
    }
    let mut best = pattern.len();
    for start in 0..=text.len() {
        for end in start..=text.len() {
            best = best.min(edit_distance(&text[start..end], pattern));
        }
    }
    Ok(best)
}
