//! Switching equivalence, switching decomposability and membership in the
//! class `H` generated from the 2-tournament by joins and switches.
//!
//! Every positive answer comes with a certificate that can be re-checked
//! independently of the search that produced it.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::is_unimodular;
use crate::tournament::{Tournament, VertexSet};

/// Diagonal `D` with `S2 = D S1 D`, normalized so `signs[0] = +1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchWitness {
    pub signs: Vec<i8>,
}

impl SwitchWitness {
    /// Vertices with sign `-1`: switching `t1` on this set gives `t2`.
    pub fn switch_set(&self) -> VertexSet {
        VertexSet::new(self.signs.iter().enumerate().filter(|(_, &s)| s < 0).map(|(i, _)| i))
            .expect("indices are distinct")
    }

    pub fn verify(&self, t1: &Tournament, t2: &Tournament) -> bool {
        self.signs.len() == t1.order()
            && t1.order() == t2.order()
            && t1.skew_matrix().sign_conjugate(&self.signs) == t2.skew_matrix()
    }
}

/// Finds `D` with `S2 = D S1 D` by fixing `d_0 = +1` and propagating along row 0.
pub fn switching_witness(t1: &Tournament, t2: &Tournament) -> Result<Option<SwitchWitness>> {
    let n = t1.order();
    if n != t2.order() {
        return Err(Error::OrderMismatch(n, t2.order()));
    }
    let mut signs = vec![1i8; n];
    for j in 1..n {
        signs[j] = t1.skew_entry(0, j) * t2.skew_entry(0, j);
    }
    for i in 1..n {
        for j in i + 1..n {
            if signs[i] * signs[j] * t1.skew_entry(i, j) != t2.skew_entry(i, j) {
                return Ok(None);
            }
        }
    }
    Ok(Some(SwitchWitness { signs }))
}

/// `switch(T, switch_set)` has every arc directed from `side_a` to the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub side_a: VertexSet,
    pub switch_set: VertexSet,
}

impl DecompositionCertificate {
    pub fn verify(&self, t: &Tournament) -> bool {
        let n = t.order();
        if self.side_a.len() < 2 || self.side_a.len() + 2 > n {
            return false;
        }
        let Ok(s) = t.switch(&self.switch_set) else {
            return false;
        };
        let b = self.side_a.complement(n);
        self.side_a.iter().all(|a| b.iter().all(|v| s.dominates(a, v)))
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Sorted members of `mask`, for lexicographic comparison.
fn members(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// If some switch makes every arc go from `a` to `b` (disjoint, nonempty),
/// returns that switch set as a mask, normalized to exclude the smallest
/// vertex of `a | b`.
fn join_switch(t: &Tournament, a: u64, b: u64) -> Option<u64> {
    let a0 = a.trailing_zeros() as usize;
    let b0 = b.trailing_zeros() as usize;
    // with d_{b0} = +1: d_a = s(a, b0), then d_b = d_{a0} s(a0, b)
    let da0 = t.skew_entry(a0, b0);
    let mut neg = 0u64;
    for x in bits(a) {
        if t.skew_entry(x, b0) < 0 {
            neg |= 1 << x;
        }
    }
    for y in bits(b) {
        if da0 * t.skew_entry(a0, y) < 0 {
            neg |= 1 << y;
        }
    }
    let sign = |v: usize| if neg >> v & 1 == 1 { -1 } else { 1 };
    for x in bits(a) {
        for y in bits(b) {
            if sign(x) * sign(y) * t.skew_entry(x, y) != 1 {
                return None;
            }
        }
    }
    let low = (a | b).trailing_zeros();
    if neg >> low & 1 == 1 {
        neg ^= a | b;
    }
    Some(neg)
}

fn check_mask_order(n: usize) -> Result<()> {
    if n > 63 {
        return Err(Error::InvalidParameter(format!(
            "subset enumeration supports at most 63 vertices, got {n}"
        )));
    }
    Ok(())
}

/// Finds a bipartition `(A, B)`, both of size at least 2, and a switch that
/// turns `T` into the join `A -> B`. Exhaustive over all `2^(n-1)`
/// bipartitions and both join directions; the certificate returned has the
/// lexicographically least `A`, and its switch set excludes vertex 0.
pub fn switching_decomposable(t: &Tournament) -> Result<Option<DecompositionCertificate>> {
    let n = t.order();
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "switching decomposability needs at least 4 vertices, got {n}"
        )));
    }
    check_mask_order(n)?;
    let full = (1u64 << n) - 1;
    let best = (0u64..1 << (n - 1))
        .into_par_iter()
        .flat_map_iter(|rest| {
            let with0 = rest << 1 | 1;
            let other = full & !with0;
            let size = with0.count_ones() as usize;
            let ok = size >= 2 && size + 2 <= n;
            let forward = ok.then(|| join_switch(t, with0, other).map(|x| (with0, x))).flatten();
            let backward = ok.then(|| join_switch(t, other, with0).map(|x| (other, x))).flatten();
            forward.into_iter().chain(backward)
        })
        .min_by_key(|&(a, x)| (members(a), members(x)));
    Ok(best.map(|(a, x)| DecompositionCertificate {
        side_a: VertexSet::from_mask(a),
        switch_set: VertexSet::from_mask(x),
    }))
}

/// Derivation of a tournament from 2-tournaments by joins and switches.
/// Vertex labels refer to the tournament the derivation was computed for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HDerivation {
    /// The 2-tournament on `vertices`: the smaller label dominates unless
    /// `switch_set` holds the larger one.
    Leaf {
        vertices: VertexSet,
        switch_set: VertexSet,
    },
    /// Switching the node's subtournament on `switch_set` gives the join of
    /// `dominant` (on `side_a`) to `dominated` (on the rest of `vertices`).
    Join {
        vertices: VertexSet,
        side_a: VertexSet,
        switch_set: VertexSet,
        dominant: Box<HDerivation>,
        dominated: Box<HDerivation>,
    },
}

impl HDerivation {
    pub fn vertices(&self) -> &VertexSet {
        match self {
            HDerivation::Leaf { vertices, .. } | HDerivation::Join { vertices, .. } => vertices,
        }
    }

    /// Rebuilds the subtournament on [`vertices`](Self::vertices), relabeled
    /// `0..len` in increasing order, using only joins and switches.
    pub fn replay(&self) -> Result<Tournament> {
        match self {
            HDerivation::Leaf {
                vertices,
                switch_set,
            } => {
                if vertices.len() != 2 {
                    return Err(Error::InvalidParameter("leaf must have 2 vertices".into()));
                }
                let base = Tournament::from_fn(2, |_, _| true)?;
                base.switch(&localize(vertices, switch_set)?)
            }
            HDerivation::Join {
                vertices,
                side_a,
                switch_set,
                dominant,
                dominated,
            } => {
                let v = vertices.as_slice();
                let a_local = localize(vertices, side_a)?;
                let b_local = a_local.complement(v.len());
                if dominant.vertices() != side_a
                    || dominated.vertices().as_slice()
                        != b_local.iter().map(|i| v[i]).collect::<Vec<_>>().as_slice()
                {
                    return Err(Error::InvalidParameter("children do not partition the node".into()));
                }
                let x_local = localize(vertices, switch_set)?;
                let part = |child: &HDerivation, local: &VertexSet| -> Result<Tournament> {
                    let sub = child.replay()?;
                    let inner: Vec<usize> = local
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| x_local.contains(*g))
                        .map(|(i, _)| i)
                        .collect();
                    sub.switch(&VertexSet::new(inner)?)
                };
                let ta = part(dominant, &a_local)?;
                let tb = part(dominated, &b_local)?;
                // join of ta and tb, placed at the node's local positions
                let mut pos = vec![(false, 0usize); v.len()];
                for (k, i) in a_local.iter().enumerate() {
                    pos[i] = (true, k);
                }
                for (k, i) in b_local.iter().enumerate() {
                    pos[i] = (false, k);
                }
                let joined = Tournament::from_fn(v.len(), |i, j| match (pos[i], pos[j]) {
                    ((true, p), (true, q)) => ta.dominates(p, q),
                    ((false, p), (false, q)) => tb.dominates(p, q),
                    ((in_a, _), _) => in_a,
                })?;
                joined.switch(&x_local)
            }
        }
    }

    /// Replays the derivation and compares with the matching subtournament of `t`.
    pub fn verify(&self, t: &Tournament) -> bool {
        match (self.replay(), t.induced(self.vertices())) {
            (Ok(r), Ok(sub)) => r == sub,
            _ => false,
        }
    }

    /// Number of leaves.
    pub fn leaves(&self) -> usize {
        match self {
            HDerivation::Leaf { .. } => 1,
            HDerivation::Join {
                dominant, dominated, ..
            } => dominant.leaves() + dominated.leaves(),
        }
    }
}

/// Positions of `subset` inside `vertices`.
fn localize(vertices: &VertexSet, subset: &VertexSet) -> Result<VertexSet> {
    let v = vertices.as_slice();
    VertexSet::new(subset.iter().map(|x| {
        v.binary_search(&x).map_err(|_| {
            Error::InvalidVertexSet(format!("vertex {x} is not in the derivation node"))
        })
    }).collect::<Result<Vec<_>>>()?)
}

/// Membership in `H` with a derivation.
///
/// `T` is in `H` iff `n = 2`, or some bipartition into even parts of size at
/// least 2 switches to a join and both induced parts are in `H`. Switching a
/// part only switches it inside a switching-closed class, so the induced parts
/// of `T` itself can be tested. Results are memoized per vertex subset; the
/// first working bipartition in lexicographic order of `A` is recorded.
pub fn is_in_h(t: &Tournament) -> Result<Option<HDerivation>> {
    let n = t.order();
    check_mask_order(n)?;
    let mut memo = HashMap::new();
    let full = (1u64 << n) - 1;
    Ok(derive(t, full, &mut memo))
}

type Split = Option<(u64, u64)>;

fn derive(t: &Tournament, u: u64, memo: &mut HashMap<u64, Split>) -> Option<HDerivation> {
    let size = u.count_ones() as usize;
    let vertices = VertexSet::from_mask(u);
    if size == 2 {
        let v = vertices.as_slice();
        let switch_set = if t.dominates(v[0], v[1]) {
            VertexSet::empty()
        } else {
            VertexSet::new([v[1]]).expect("single vertex")
        };
        return Some(HDerivation::Leaf {
            vertices,
            switch_set,
        });
    }
    let (a, x) = find_split(t, u, memo)?;
    let dominant = derive(t, a, memo).expect("memoized member");
    let dominated = derive(t, u & !a, memo).expect("memoized member");
    Some(HDerivation::Join {
        vertices,
        side_a: VertexSet::from_mask(a),
        switch_set: VertexSet::from_mask(x),
        dominant: Box::new(dominant),
        dominated: Box::new(dominated),
    })
}

fn in_h(t: &Tournament, u: u64, memo: &mut HashMap<u64, Split>) -> bool {
    match u.count_ones() {
        2 => true,
        s if s < 2 || s % 2 == 1 => false,
        _ => find_split(t, u, memo).is_some(),
    }
}

fn find_split(t: &Tournament, u: u64, memo: &mut HashMap<u64, Split>) -> Split {
    if let Some(&known) = memo.get(&u) {
        return known;
    }
    let size = u.count_ones() as usize;
    let result = if size < 4 || size % 2 == 1 || !is_unimodular(&t.induced_unchecked(&members(u)))
    {
        None
    } else {
        let mut candidates: Vec<(Vec<usize>, u64, u64)> = Vec::new();
        let mut sub = (u - 1) & u;
        while sub != 0 {
            let k = sub.count_ones() as usize;
            if k % 2 == 0 && k >= 2 && k + 2 <= size {
                if let Some(x) = join_switch(t, sub, u & !sub) {
                    candidates.push((members(sub), sub, x));
                }
            }
            sub = (sub - 1) & u;
        }
        candidates.sort_unstable();
        candidates
            .into_iter()
            .find(|&(_, a, _)| in_h(t, a, memo) && in_h(t, u & !a, memo))
            .map(|(_, a, x)| (a, x))
    };
    memo.insert(u, result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circular, example_8, random_tournament, sample_h, transitive};

    fn diamond() -> Tournament {
        let mut t = Tournament::new(4).unwrap();
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)] {
            t.set_arc(a, b);
        }
        t
    }

    #[test]
    fn witnesses() {
        let t = random_tournament(7, 3).unwrap();
        let w = switching_witness(&t, &t).unwrap().unwrap();
        assert!(w.signs.iter().all(|&s| s == 1));

        let x = VertexSet::new([2, 3, 6]).unwrap();
        let s = t.switch(&x).unwrap();
        let w = switching_witness(&t, &s).unwrap().unwrap();
        assert_eq!(w.switch_set(), x);
        assert!(w.verify(&t, &s));

        let x0 = VertexSet::new([0, 1]).unwrap();
        let w = switching_witness(&t, &t.switch(&x0).unwrap()).unwrap().unwrap();
        assert_eq!(w.switch_set(), x0.complement(7));

        assert!(switching_witness(&transitive(4).unwrap(), &diamond()).unwrap().is_none());
        assert!(switching_witness(&transitive(4).unwrap(), &transitive(5).unwrap()).is_err());
    }

    #[test]
    fn circular_tournaments_decompose() {
        for n in [5, 7, 9] {
            let c = circular(n).unwrap();
            let cert = switching_decomposable(&c).unwrap().unwrap();
            assert!(cert.verify(&c));
        }
        let c5 = circular(5).unwrap();
        let cert = switching_decomposable(&c5).unwrap().unwrap();
        // brute force over all (A, X) pairs
        assert_eq!(cert.side_a.as_slice(), &[0, 1, 3]);
        assert_eq!(cert.switch_set.as_slice(), &[2, 3]);
    }

    #[test]
    fn transitive_is_already_a_join() {
        let t = transitive(4).unwrap();
        let cert = switching_decomposable(&t).unwrap().unwrap();
        assert_eq!(cert.side_a.as_slice(), &[0, 1]);
        assert!(cert.switch_set.is_empty());
        assert!(switching_decomposable(&transitive(3).unwrap()).is_err());
    }

    #[test]
    fn example_8_is_indecomposable() {
        let e8 = example_8();
        assert!(switching_decomposable(&e8).unwrap().is_none());
        assert!(is_in_h(&e8).unwrap().is_none());
    }

    #[test]
    fn h_membership() {
        let d = is_in_h(&transitive(2).unwrap()).unwrap().unwrap();
        assert!(matches!(d, HDerivation::Leaf { .. }));
        assert!(is_in_h(&diamond()).unwrap().is_none());
        assert!(is_in_h(&transitive(3).unwrap()).unwrap().is_none());
        for seed in 0..20 {
            let t = sample_h(8, seed).unwrap();
            let d = is_in_h(&t).unwrap().expect("sampled from H");
            assert!(d.verify(&t));
            assert_eq!(d.leaves(), 4);
        }
    }

    #[test]
    fn derivation_serializes_as_nested_objects() {
        let d = is_in_h(&transitive(4).unwrap()).unwrap().unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["kind"], "join");
        assert_eq!(v["side_a"], serde_json::json!([0, 1]));
        assert_eq!(v["dominant"]["kind"], "leaf");
    }

    #[test]
    fn tampered_derivation_fails_verification() {
        let t = sample_h(6, 9).unwrap();
        let mut d = is_in_h(&t).unwrap().unwrap();
        if let HDerivation::Join { switch_set, vertices, .. } = &mut d {
            *switch_set = if switch_set.is_empty() {
                VertexSet::new([vertices.as_slice()[1]]).unwrap()
            } else {
                VertexSet::empty()
            };
        }
        assert!(!d.verify(&t));
    }
}
