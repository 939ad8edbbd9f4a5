use std::sync::Arc;

use super::subset::{Subset, MAX_GROUND};
use crate::error::{Error, Result};

/// An ordered list of distinct element labels. Element `i` is bit `i` of
/// every [`Subset`] over this ground set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

fn label_ok(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '{' | '}' | '=' | '#' | '"' | ','))
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if !label_ok(l) {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet {
            labels: labels.into(),
        })
    }

    /// Single-character labels `a`, `b`, ... for quick fixtures.
    pub fn letters(n: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&n));
        GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset_count(&self) -> usize {
        1 << self.len()
    }

    pub fn contains_mask(&self, s: Subset) -> bool {
        s.is_subset_of(self.full())
    }

    /// Subset from element labels.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = Subset::EMPTY;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownElement(l.to_string()))?;
            s = s.with(i);
        }
        Ok(s)
    }

    /// Subset from a word of single-character labels, e.g. `"ab"`.
    /// Panics on unknown characters; meant for fixtures and tests.
    pub fn set(&self, word: &str) -> Subset {
        self.subset(word.chars().map(|c| c.to_string()))
            .unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn element_labels(&self, s: Subset) -> Vec<&str> {
        s.elements().map(|i| self.label(i)).collect()
    }

    /// `{a b}` style rendering, the same spelling the text formats use.
    pub fn format(&self, s: Subset) -> String {
        format!("{{{}}}", self.element_labels(s).join(" "))
    }

    /// For every element of `sub`, its index in `self`; `None` if some
    /// label of `sub` is missing here.
    pub fn embedding_of(&self, sub: &GroundSet) -> Option<Vec<usize>> {
        sub.labels.iter().map(|l| self.index_of(l)).collect()
    }

    /// Ground set with `extra` appended after the existing labels.
    pub fn extended<I, S>(&self, extra: I) -> Result<GroundSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        GroundSet::new(
            self.labels
                .iter()
                .cloned()
                .chain(extra.into_iter().map(Into::into)),
        )
    }

    /// Ground set of the elements of `s`, order preserved.
    pub fn restricted(&self, s: Subset) -> Result<GroundSet> {
        GroundSet::new(s.elements().map(|i| self.labels[i].clone()))
    }

    /// A label starting with `stem` that is not used here nor in `avoid`.
    pub fn fresh_label(&self, stem: &str, avoid: &[&str]) -> String {
        let taken = |l: &str| self.index_of(l).is_some() || avoid.contains(&l);
        if !taken(stem) {
            return stem.to_string();
        }
        (1..)
            .map(|k| format!("{stem}{k}"))
            .find(|l| !taken(l))
            .expect("unbounded search")
    }
}

/// Map a subset through an index embedding (`map[i]` is the image of `i`).
pub fn map_subset(s: Subset, map: &[usize]) -> Subset {
    Subset::from_indices(s.elements().map(|i| map[i]))
}
