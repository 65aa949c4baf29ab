//! Tournament data model and structural operations.

mod ttf;
mod vertex_set;

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub use ttf::{parse_ttf, write_ttf};
pub use vertex_set::VertexSet;

/// An orientation of the complete graph on vertices `0..n`.
///
/// One bit per unordered pair `{i, j}`, `i < j`, in lexicographic pair order;
/// a set bit means `i` dominates `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    bits: Vec<u64>,
}

#[inline]
fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Tournament {
    /// The tournament on `n` vertices in which every `j > i` dominates `i`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("a tournament needs at least one vertex".into()));
        }
        Ok(Tournament {
            n,
            bits: vec![0; pair_count(n).div_ceil(64)],
        })
    }

    /// Builds a tournament where `i` dominates `j` (for `i < j`) iff `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut t = Self::new(n)?;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if f(i, j) {
                    t.bits[k / 64] |= 1 << (k % 64);
                }
                k += 1;
            }
        }
        Ok(t)
    }

    /// Builds a tournament from its pair bits in lexicographic pair order.
    pub fn from_pair_bits(n: usize, bits: impl IntoIterator<Item = bool>) -> Result<Self> {
        let mut t = Self::new(n)?;
        let mut count = 0;
        for (k, b) in bits.into_iter().enumerate() {
            if k >= pair_count(n) {
                return Err(Error::InvalidParameter(format!(
                    "too many arc bits for order {n}"
                )));
            }
            if b {
                t.bits[k / 64] |= 1 << (k % 64);
            }
            count += 1;
        }
        if count != pair_count(n) {
            return Err(Error::InvalidParameter(format!(
                "expected {} arc bits, got {count}",
                pair_count(n)
            )));
        }
        Ok(t)
    }

    /// Reads a tournament off a skew-adjacency matrix, validating its shape.
    pub fn from_skew_matrix(m: &IntMatrix) -> Result<Self> {
        let n = m.require_square()?;
        if !m.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let mut bad = None;
        let t = Self::from_fn(n, |i, j| match m.get(i, j).to_i64() {
            Some(1) => true,
            Some(-1) => false,
            _ => {
                bad.get_or_insert((i, j));
                false
            }
        })?;
        if let Some((i, j)) = bad {
            return Err(Error::InvalidParameter(format!(
                "entry ({i},{j}) of a tournament matrix must be +1 or -1"
            )));
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    #[inline]
    fn bit(&self, k: usize) -> bool {
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// Whether `i` dominates `j`. Panics if either label is out of range or `i == j`.
    #[inline]
    pub fn dominates(&self, i: usize, j: usize) -> bool {
        assert!(i != j && i < self.n && j < self.n, "bad arc ({i},{j})");
        if i < j {
            self.bit(self.pair_index(i, j))
        } else {
            !self.bit(self.pair_index(j, i))
        }
    }

    /// Orients the pair `{i, j}` so that `i` dominates `j`.
    pub fn set_arc(&mut self, i: usize, j: usize) {
        assert!(i != j && i < self.n && j < self.n, "bad arc ({i},{j})");
        let (a, b, forward) = if i < j { (i, j, true) } else { (j, i, false) };
        let k = self.pair_index(a, b);
        if forward {
            self.bits[k / 64] |= 1 << (k % 64);
        } else {
            self.bits[k / 64] &= !(1 << (k % 64));
        }
    }

    /// Entry `(i, j)` of the skew-adjacency matrix.
    #[inline]
    pub fn skew_entry(&self, i: usize, j: usize) -> i8 {
        if i == j {
            0
        } else if self.dominates(i, j) {
            1
        } else {
            -1
        }
    }

    pub fn pair_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..pair_count(self.n)).map(move |k| self.bit(k))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| u != v && self.dominates(v, u)).count()
    }

    pub fn skew_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| self.skew_entry(i, j) as i64)
    }

    /// Skew-adjacency matrix as a flat row-major buffer, for the fast paths.
    pub fn skew_i128(&self) -> Vec<i128> {
        let n = self.n;
        let mut out = vec![0i128; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let s = if self.dominates(i, j) { 1 } else { -1 };
                out[i * n + j] = s;
                out[j * n + i] = -s;
            }
        }
        out
    }

    /// Every arc reversed.
    pub fn converse(&self) -> Tournament {
        Self::from_fn(self.n, |i, j| !self.dominates(i, j)).expect("order is positive")
    }

    /// Reverses every arc with exactly one endpoint in `x`.
    pub fn switch(&self, x: &VertexSet) -> Result<Tournament> {
        x.check_within(self.n)?;
        let mut inside = vec![false; self.n];
        for v in x {
            inside[*v] = true;
        }
        Ok(self.switch_by(|v| inside[v]))
    }

    pub(crate) fn switch_by(&self, inside: impl Fn(usize) -> bool) -> Tournament {
        Self::from_fn(self.n, |i, j| self.dominates(i, j) ^ (inside(i) != inside(j)))
            .expect("order is positive")
    }

    /// `t1 -> t2`: disjoint union where every vertex of `t1` dominates every
    /// vertex of `t2`. `t2`'s vertices are relabeled `p..p+q`.
    pub fn join(t1: &Tournament, t2: &Tournament) -> Tournament {
        let p = t1.n;
        Self::from_fn(p + t2.n, |i, j| {
            if j < p {
                t1.dominates(i, j)
            } else if i < p {
                true
            } else {
                t2.dominates(i - p, j - p)
            }
        })
        .expect("order is positive")
    }

    /// `T+`: `T` joined to one extra vertex, labeled `n`, dominated by all of `T`.
    pub fn plus(&self) -> Tournament {
        Self::join(self, &Tournament::new(1).expect("order is positive"))
    }

    /// Subtournament on `vertices`, relabeled `0..|vertices|` in increasing order.
    pub fn induced(&self, vertices: &VertexSet) -> Result<Tournament> {
        if vertices.is_empty() {
            return Err(Error::InvalidVertexSet("induced subtournament needs a vertex".into()));
        }
        vertices.check_within(self.n)?;
        Ok(self.induced_unchecked(vertices.as_slice()))
    }

    pub(crate) fn induced_unchecked(&self, v: &[usize]) -> Tournament {
        Self::from_fn(v.len(), |i, j| self.dominates(v[i], v[j])).expect("nonempty")
    }

    /// The doubling `T^`: a copy `v'_i` (labeled `n + i`) of every vertex,
    /// where `v_i` dominates `v'_i`, `v_i` dominates `v'_j` iff `v_i`
    /// dominates `v_j`, and the copies induce `T` again. Its skew matrix is
    /// `[[S, S+I], [S-I, S]]`.
    pub fn hat(&self) -> Tournament {
        let n = self.n;
        Self::from_fn(2 * n, |i, j| {
            if j < n {
                self.dominates(i, j)
            } else if i >= n {
                self.dominates(i - n, j - n)
            } else {
                i == j - n || self.dominates(i, j - n)
            }
        })
        .expect("order is positive")
    }

    /// Applies `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Tournament> {
        let n = self.n;
        let mut inv = vec![usize::MAX; n];
        if perm.len() != n {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        for (v, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            inv[p] = v;
        }
        Self::from_fn(n, |i, j| self.dominates(inv[i], inv[j]))
    }

    /// The arc bit string used by TTF.
    pub fn arc_string(&self) -> String {
        self.pair_bits().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// All labeled tournaments of order `n`, in increasing order of their
    /// pair-bit vectors read as binary numbers with the first pair lowest.
    pub fn all_labeled(n: usize) -> Result<impl Iterator<Item = Tournament>> {
        let m = pair_count(n);
        if m >= 64 {
            return Err(Error::InvalidParameter(format!(
                "cannot enumerate all tournaments of order {n}"
            )));
        }
        Self::new(n)?;
        Ok((0u64..1 << m).map(move |code| Tournament::from_code(n, code)))
    }

    /// Tournament whose pair bits are the low bits of `code`.
    pub(crate) fn from_code(n: usize, code: u64) -> Tournament {
        let mut t = Tournament::new(n).expect("order is positive");
        if !t.bits.is_empty() {
            t.bits[0] = code;
        }
        t
    }

    /// Inverse of `from_code`, for orders with at most 64 pairs.
    pub(crate) fn code(&self) -> u64 {
        self.bits.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}, {})", self.n, self.arc_string())
    }
}

impl Serialize for Tournament {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Tournament", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("arcs", &self.arc_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> Tournament {
        // 0 dominates the 3-cycle 1 -> 2 -> 3 -> 1
        let mut t = Tournament::new(4).unwrap();
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)] {
            t.set_arc(a, b);
        }
        t
    }

    fn three_cycle() -> Tournament {
        let mut t = Tournament::new(3).unwrap();
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            t.set_arc(a, b);
        }
        t
    }

    fn transitive(n: usize) -> Tournament {
        Tournament::from_fn(n, |_, _| true).unwrap()
    }

    #[test]
    fn skew_matrix_of_small_cases() {
        let t2 = transitive(2);
        assert_eq!(t2.skew_matrix(), IntMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap());
        let d = diamond().skew_matrix();
        assert_eq!(d.row_vecs()[0], IntMatrix::from_rows(&[[0, 1, 1, 1]]).unwrap().row_vecs()[0]);
        assert!(d.is_skew_symmetric());
    }

    #[test]
    fn zero_order_rejected() {
        assert!(Tournament::new(0).is_err());
    }

    #[test]
    fn converse_and_switch() {
        let t2 = transitive(2);
        assert!(t2.converse().dominates(1, 0));
        let t = diamond();
        assert_eq!(t.converse().converse(), t);

        let s = transitive(3).switch(&VertexSet::new([0]).unwrap()).unwrap();
        assert!(s.dominates(1, 0) && s.dominates(2, 0) && s.dominates(1, 2));
        let x = VertexSet::new([1, 3]).unwrap();
        assert_eq!(t.switch(&x).unwrap().switch(&x).unwrap(), t);
        assert!(t.switch(&VertexSet::new([4]).unwrap()).is_err());
    }

    #[test]
    fn join_and_plus() {
        let one = Tournament::new(1).unwrap();
        assert_eq!(Tournament::join(&one, &one), transitive(2));
        assert_eq!(one.plus(), transitive(2));
        let j = Tournament::join(&one, &three_cycle());
        // vertex 0 dominating a 3-cycle on 1..4
        assert!((1..4).all(|v| j.dominates(0, v)));
        assert_eq!(j.induced(&VertexSet::range(1, 4)).unwrap(), three_cycle());
        let p = three_cycle().plus();
        assert!((0..3).all(|v| p.dominates(v, 3)));
    }

    #[test]
    fn induced_subtournaments() {
        let d = diamond();
        assert_eq!(d.induced(&VertexSet::full(4)).unwrap(), d);
        assert_eq!(d.induced(&VertexSet::range(1, 4)).unwrap(), three_cycle());
        assert!(d.induced(&VertexSet::empty()).is_err());
    }

    #[test]
    fn hat_block_structure() {
        let one = Tournament::new(1).unwrap();
        assert_eq!(one.hat(), transitive(2));
        let t = three_cycle();
        let h = t.hat().skew_matrix();
        let s = t.skew_matrix();
        let i = IntMatrix::identity(3);
        let expected = IntMatrix::block(&s, &(&s + &i), &(&s - &i), &s).unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let t = diamond();
        assert!(t.relabel(&[0, 0, 1, 2]).is_err());
        let r = t.relabel(&[3, 2, 1, 0]).unwrap();
        assert!((0..3).all(|v| r.dominates(3, v)));
    }

    #[test]
    fn enumerates_all_labeled() {
        assert_eq!(Tournament::all_labeled(4).unwrap().count(), 64);
        assert_eq!(Tournament::all_labeled(1).unwrap().count(), 1);
    }

    #[test]
    fn from_skew_matrix_validates() {
        let d = diamond();
        assert_eq!(Tournament::from_skew_matrix(&d.skew_matrix()).unwrap(), d);
        let bad = IntMatrix::from_rows(&[[0, 2], [-2, 0]]).unwrap();
        assert!(Tournament::from_skew_matrix(&bad).is_err());
    }
}
