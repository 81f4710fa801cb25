//! Non-backtracking paths recorded as an origin plus edge labels.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A path without backtracking. Each step names the neighbour taken under
/// the tree's fixed edge ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreePath<V, L> {
    pub origin: V,
    pub steps: Vec<L>,
}

impl<V: Clone, L: Clone> TreePath<V, L> {
    pub fn empty(origin: V) -> Self {
        TreePath {
            origin,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The initial segment with `k` steps.
    pub fn prefix(&self, k: usize) -> Self {
        TreePath {
            origin: self.origin.clone(),
            steps: self.steps[..k.min(self.steps.len())].to_vec(),
        }
    }
}

/// Edge-label order on paths of equal length; shorter paths come first.
pub fn compare_labels<L: Ord>(a: &[L], b: &[L]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The well-order on paths sharing an origin: shorter first, then
/// lexicographic on labels at the first divergence.
pub fn compare_paths<V: Eq, L: Ord>(a: &TreePath<V, L>, b: &TreePath<V, L>) -> Result<Ordering> {
    if a.origin != b.origin {
        return Err(Error::OriginMismatch);
    }
    Ok(compare_labels(&a.steps, &b.steps))
}
