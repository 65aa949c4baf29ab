use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of vertex labels, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Builds a set from arbitrary labels; duplicates are rejected.
    pub fn new<I: IntoIterator<Item = usize>>(items: I) -> Result<Self> {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidVertexSet(format!("duplicate vertex {}", w[0])));
        }
        Ok(VertexSet(v))
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn range(start: usize, end: usize) -> Self {
        VertexSet((start..end).collect())
    }

    /// Bits set in `mask`, lowest bit = vertex 0.
    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> Self {
        VertexSet((0..n).filter(|&v| !self.contains(v)).collect())
    }

    /// Checks every label is below `n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(m) if m >= n => Err(Error::InvalidVertexSet(format!(
                "vertex {m} out of range for order {n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Vec<usize> {
        s.0
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let s = VertexSet::new([3, 1, 2]).unwrap();
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert!(VertexSet::new([1, 1]).is_err());
        assert_eq!(s.complement(5).as_slice(), &[0, 4]);
        assert!(s.check_within(4).is_ok());
        assert!(s.check_within(3).is_err());
    }

    #[test]
    fn mask_round_trip() {
        let s = VertexSet::new([0, 5, 9]).unwrap();
        assert_eq!(VertexSet::from_mask(s.to_mask()), s);
    }

    #[test]
    fn serde_rejects_duplicates() {
        assert!(serde_json::from_str::<VertexSet>("[2,2]").is_err());
        let s: VertexSet = serde_json::from_str("[4,0]").unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,4]");
    }
}
