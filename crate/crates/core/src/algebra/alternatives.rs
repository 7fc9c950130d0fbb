use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An alternative, identified by its position in the alternative list.
///
/// The list order doubles as the global tie-break order: lower indices win
/// lexicographic selections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alternative(pub usize);

impl Alternative {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Ordered, labelled list of alternatives shared by every voter in a profile.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlternativeSet {
    labels: Arc<[String]>,
}

impl AlternativeSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateAlternative(label.clone()));
            }
        }
        if labels.is_empty() {
            return Err(Error::InvalidWeakOrder("no alternatives".into()));
        }
        Ok(AlternativeSet {
            labels: labels.into(),
        })
    }

    /// `a, b, c, ...` for up to 26 alternatives, `a1, a2, ...` beyond that.
    pub fn standard(count: usize) -> Self {
        assert!(count >= 1, "at least one alternative is required");
        let labels: Vec<String> = if count <= 26 {
            (0..count)
                .map(|i| char::from(b'a' + i as u8).to_string())
                .collect()
        } else {
            (1..=count).map(|i| format!("a{i}")).collect()
        };
        AlternativeSet {
            labels: labels.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, alt: Alternative) -> &str {
        &self.labels[alt.0]
    }

    pub fn find(&self, label: &str) -> Option<Alternative> {
        self.labels.iter().position(|l| l == label).map(Alternative)
    }

    pub fn iter(&self) -> impl Iterator<Item = Alternative> {
        (0..self.len()).map(Alternative)
    }
}
