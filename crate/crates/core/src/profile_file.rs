//! Plain-text profile files.
//!
//! ```text
//! # comments run to the end of the line
//! alternatives: a,b,c
//! 2: a > b = c        # two voters, a first, b and c tied
//! 1: c > b > a
//! matrix 1:           # one voter with a raw SSB matrix, one row per line
//! 0 1/2 -1
//! -1/2 0 1
//! 1 -1 0
//! ```
//!
//! The header order is the global tie-break order used by lexicographic
//! selections, so reordering the header can change `ml` and `copeland`.

use std::fmt::Write as _;

use crate::algebra::{AlternativeSet, Profile, Scalar, SsbMatrix, VoterType, WeakOrder};
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn located(line: usize, column: usize, source: Error) -> Error {
    Error::At {
        line,
        column,
        source: Box::new(source),
    }
}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, ',' | '>' | '=' | ':' | '#'))
}

/// A content line: 1-based line number, text with comments stripped, and the
/// byte offset of the text within the original line.
struct Line<'a> {
    number: usize,
    text: &'a str,
    offset: usize,
}

impl Line<'_> {
    fn column_of(&self, sub: &str) -> usize {
        // sub is a slice of self.text
        let start = sub.as_ptr() as usize - self.text.as_ptr() as usize;
        self.offset + start + 1
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let uncommented = raw.split('#').next().unwrap_or("");
        let trimmed = uncommented.trim();
        if trimmed.is_empty() {
            return None;
        }
        let offset = uncommented.len() - uncommented.trim_start().len();
        Some(Line {
            number: i + 1,
            text: trimmed,
            offset,
        })
    })
}

fn parse_count(line: &Line<'_>, text: &str) -> Result<u64> {
    let trimmed = text.trim();
    match trimmed.parse::<u64>() {
        Ok(0) => Err(parse_err(line.number, line.column_of(trimmed), "count must be positive")),
        Ok(c) => Ok(c),
        Err(_) => Err(parse_err(
            line.number,
            line.column_of(trimmed),
            format!("invalid count `{trimmed}`"),
        )),
    }
}

fn parse_ranking(line: &Line<'_>, text: &str, alts: &AlternativeSet) -> Result<WeakOrder> {
    let mut classes = Vec::new();
    let mut seen = vec![false; alts.len()];
    for class_text in text.split('>') {
        let mut class = Vec::new();
        for token in class_text.split('=') {
            let label = token.trim();
            let column = if label.is_empty() {
                line.column_of(token)
            } else {
                line.column_of(label)
            };
            if label.is_empty() {
                return Err(parse_err(line.number, column, "empty alternative in ranking"));
            }
            let alt = alts
                .find(label)
                .ok_or_else(|| located(line.number, column, Error::UnknownAlternative(label.into())))?;
            if std::mem::replace(&mut seen[alt.index()], true) {
                return Err(located(
                    line.number,
                    column,
                    Error::DuplicateAlternative(label.into()),
                ));
            }
            class.push(alt.index());
        }
        classes.push(class);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(parse_err(
            line.number,
            line.column_of(text),
            format!("ranking omits alternative `{}`", alts.labels()[missing]),
        ));
    }
    WeakOrder::new(classes).map_err(|e| located(line.number, line.column_of(text), e))
}

/// Parses the profile file grammar.
pub fn parse_profile<T: Scalar>(text: &str) -> Result<Profile<T>> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing `alternatives:` header"))?;
    let labels_text = header
        .text
        .strip_prefix("alternatives:")
        .ok_or_else(|| parse_err(header.number, header.column_of(header.text), "expected `alternatives: <labels>`"))?;
    let mut labels = Vec::new();
    for token in labels_text.split(',') {
        let label = token.trim();
        if !valid_label(label) {
            return Err(parse_err(
                header.number,
                header.column_of(if label.is_empty() { token } else { label }),
                format!("invalid alternative label `{label}`"),
            ));
        }
        if labels.iter().any(|l| l == label) {
            return Err(located(
                header.number,
                header.column_of(label),
                Error::DuplicateAlternative(label.into()),
            ));
        }
        labels.push(label.to_string());
    }
    let alts = AlternativeSet::new(labels)?;

    let mut types: Vec<(VoterType<T>, u64)> = Vec::new();
    while let Some(line) = lines.next() {
        let Some((head, rest)) = line.text.split_once(':') else {
            return Err(parse_err(line.number, line.column_of(line.text), "expected `<count>: <ranking>` or `matrix <count>:`"));
        };
        if let Some(count_text) = head.strip_prefix("matrix") {
            if !rest.trim().is_empty() {
                return Err(parse_err(line.number, line.column_of(rest.trim()), "unexpected text after `matrix <count>:`"));
            }
            let count = parse_count(&line, count_text)?;
            let mut rows = Vec::with_capacity(alts.len());
            for _ in 0..alts.len() {
                let row_line = lines.next().ok_or_else(|| {
                    parse_err(line.number, 1, format!("matrix block needs {} rows", alts.len()))
                })?;
                let mut row = Vec::with_capacity(alts.len());
                for token in row_line.text.split_whitespace() {
                    let value = T::parse(token).ok_or_else(|| {
                        parse_err(row_line.number, row_line.column_of(token), format!("invalid rational `{token}`"))
                    })?;
                    row.push(value);
                }
                if row.len() != alts.len() {
                    return Err(parse_err(
                        row_line.number,
                        row_line.column_of(row_line.text),
                        format!("expected {} entries, found {}", alts.len(), row.len()),
                    ));
                }
                rows.push(row);
            }
            let matrix = SsbMatrix::new(rows).map_err(|e| located(line.number, line.column_of(line.text), e))?;
            types.push((VoterType::Ssb(matrix), count));
        } else {
            let count = parse_count(&line, head)?;
            let order = parse_ranking(&line, rest, &alts)?;
            types.push((VoterType::Ordinal(order), count));
        }
    }
    Profile::new(alts, types)
}

/// Parses a single ranking such as `"a > b = c"`.
pub fn parse_order(alts: &AlternativeSet, text: &str) -> Result<WeakOrder> {
    let trimmed = text.trim();
    let line = Line {
        number: 1,
        text: trimmed,
        offset: text.len() - text.trim_start().len(),
    };
    parse_ranking(&line, trimmed, alts)
}

/// Writes `order` with labels, e.g. `"a > b = c"`.
pub fn format_order(alts: &AlternativeSet, order: &WeakOrder) -> String {
    order
        .classes()
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&x| alts.labels()[x].as_str())
                .collect::<Vec<_>>()
                .join(" = ")
        })
        .collect::<Vec<_>>()
        .join(" > ")
}

/// Writes a profile in the same grammar; `parse_profile` inverts it.
pub fn serialize_profile<T: Scalar>(profile: &Profile<T>) -> String {
    let alts = profile.alternatives();
    let mut out = format!("alternatives: {}\n", alts.labels().join(","));
    for (ty, count) in profile.types() {
        match ty {
            VoterType::Ordinal(order) => {
                let _ = writeln!(out, "{count}: {}", format_order(alts, order));
            }
            VoterType::Ssb(m) => {
                let _ = writeln!(out, "matrix {count}:\n{m}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Profile, Rational};

    fn parse(text: &str) -> Result<Profile> {
        parse_profile(text)
    }

    #[test]
    fn parses_cyclic_profile() {
        let p = parse("alternatives: a,b,c\n1: a > b > c\n1: b > c > a\n1: c > a > b").unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.num_types(), 3);
        assert_eq!(*p.aggregate().entry(2, 0), Rational::from_int(1));
    }

    #[test]
    fn parses_ties_comments_and_spacing() {
        let p = parse("# header\nalternatives: a, b\n\n2: a = b   # tie\n").unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.aggregate(), SsbMatrix::zero(2));
    }

    #[test]
    fn parses_matrix_blocks() {
        let p = parse("alternatives: a,b\nmatrix 3:\n0 1/2\n-1/2 0\n").unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(*p.aggregate().entry(0, 1), Rational::ratio(3, 2));
        assert!(!p.is_ordinal());
    }

    #[test]
    fn rejects_non_skew_matrix() {
        let err = parse("alternatives: a,b\nmatrix 1:\n0 1\n1 0").unwrap_err();
        match err {
            Error::At { line, source, .. } => {
                assert_eq!(line, 2);
                assert!(matches!(*source, Error::NotSkewSymmetric { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn located_errors() {
        let err = parse("alternatives: a,b,c\n1: a > d > c").unwrap_err();
        assert_eq!(
            err,
            Error::At {
                line: 2,
                column: 8,
                source: Box::new(Error::UnknownAlternative("d".into()))
            }
        );
        let dup = parse("alternatives: a,b\n1: a > a").unwrap_err();
        assert!(matches!(dup, Error::At { line: 2, column: 8, .. }));
        let dup_header = parse("alternatives: a,a").unwrap_err();
        assert!(matches!(dup_header, Error::At { line: 1, column: 17, .. }));
        let missing = parse("alternatives: a,b,c\n1: a > b").unwrap_err();
        assert!(matches!(missing, Error::Parse { line: 2, .. }));
        let zero = parse("alternatives: a,b\n0: a > b").unwrap_err();
        assert!(matches!(zero, Error::Parse { line: 2, column: 1, .. }));
        assert_eq!(parse("alternatives: a,b\n").unwrap_err(), Error::EmptyProfile);
        assert!(matches!(parse("").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(
            parse("alternatives: a,b\nmatrix 1:\n0 x\n0 0").unwrap_err(),
            Error::Parse { line: 3, column: 3, .. }
        ));
    }

    #[test]
    fn single_orders() {
        let alts = AlternativeSet::standard(3);
        let o = parse_order(&alts, " c > a = b").unwrap();
        assert_eq!(format_order(&alts, &o), "c > a = b");
        assert!(parse_order(&alts, "a > b").is_err());
    }

    #[test]
    fn serializes_back() {
        let text = "alternatives: a,b,c\n2: a > b = c\n1: c > b > a\nmatrix 1:\n0 1/2 -1\n-1/2 0 1\n1 -1 0\n";
        let p = parse(text).unwrap();
        let written = serialize_profile(&p);
        assert_eq!(parse(&written).unwrap(), p);
        assert!(written.contains("2: a > b = c\n"));
    }
}
