use serde::{Deserialize, Serialize};

use crate::profile::MatrixProfile;
use crate::{Error, Result};

/// Chains kept must have at least this many windows.
pub const MIN_CHAIN_LEN: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSet {
    /// Maximal chains of length at least three, by start position.
    pub chains: Vec<Vec<usize>>,
    /// The longest chain, earliest start on ties; empty when there is none.
    pub best: Vec<usize>,
    pub window: usize,
}

impl ChainSet {
    pub fn count(&self) -> usize {
        self.chains.len()
    }
}

/// All time series chains of a self-join profile.
///
/// `a → b` is a link when `right_index[a] = b` and `left_index[b] = a`. Each
/// window has at most one link in and one out, so the links split the
/// windows into disjoint maximal paths; those with at least three windows are
/// returned.
pub fn find_chains(mp: &MatrixProfile) -> Result<ChainSet> {
    mp.require_full_coverage("chain search")?;
    let (Some(left), Some(right)) = (&mp.left_index, &mp.right_index) else {
        return Err(Error::Stale("chain search needs left and right profile indexes".into()));
    };
    let len = mp.len();
    let next = |a: usize| right[a].filter(|&b| b < len && left[b] == Some(a));
    let has_prev = |b: usize| left[b].is_some_and(|a| a < len && right[a] == Some(b));

    let mut chains = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    for start in (0..len).filter(|&i| !has_prev(i)) {
        let mut chain = vec![start];
        let mut a = start;
        while let Some(b) = next(a) {
            chain.push(b);
            a = b;
        }
        if chain.len() >= MIN_CHAIN_LEN {
            if chain.len() > best.len() {
                best = chain.clone();
            }
            chains.push(chain);
        }
    }
    Ok(ChainSet {
        chains,
        best,
        window: mp.window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Algorithm, JoinKind};

    fn profile(left: Vec<Option<usize>>, right: Vec<Option<usize>>) -> MatrixProfile {
        let mut mp = MatrixProfile::empty(left.len(), 4, 0, Algorithm::Stomp, JoinKind::SelfJoin);
        mp.coverage = 1.0;
        mp.left_index = Some(left);
        mp.right_index = Some(right);
        mp
    }

    #[test]
    fn follows_bidirectional_links_only() {
        // 0 → 2 → 5 → 7 is bidirectional; 1 → 3 → 6 breaks at 6 (left[6] = 4)
        let mut left = vec![None; 8];
        let mut right = vec![None; 8];
        for (a, b) in [(0, 2), (2, 5), (5, 7), (1, 3), (3, 6)] {
            right[a] = Some(b);
            left[b] = Some(a);
        }
        left[6] = Some(4);
        right[4] = Some(6);
        let set = find_chains(&profile(left, right)).unwrap();
        assert_eq!(set.chains, vec![vec![0, 2, 5, 7]]);
        assert_eq!(set.best, vec![0, 2, 5, 7]);
        assert_eq!(set.count(), 1);
    }

    #[test]
    fn ties_prefer_earliest_start() {
        let mut left = vec![None; 6];
        let mut right = vec![None; 6];
        for (a, b) in [(0, 2), (2, 4), (1, 3), (3, 5)] {
            right[a] = Some(b);
            left[b] = Some(a);
        }
        let set = find_chains(&profile(left, right)).unwrap();
        assert_eq!(set.count(), 2);
        assert_eq!(set.best, vec![0, 2, 4]);
    }

    #[test]
    fn needs_left_and_right() {
        let mut mp = profile(vec![None; 4], vec![None; 4]);
        mp.left_index = None;
        assert!(matches!(find_chains(&mp), Err(Error::Stale(_))));
    }
}
