use serde::{Deserialize, Serialize};

use super::{argmax_unmasked, mask};
use crate::profile::MatrixProfile;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discord {
    pub index: usize,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscordSet {
    /// Descending by distance.
    pub discords: Vec<Discord>,
    pub window: usize,
    pub exclusion_zone: usize,
    pub n_requested: usize,
    pub exhausted: bool,
}

impl DiscordSet {
    pub fn indexes(&self) -> Vec<usize> {
        self.discords.iter().map(|d| d.index).collect()
    }
}

/// The `n_discords` largest finite profile values, each more than
/// `exclusion_zone` positions (default: the profile's own zone) from the
/// others.
pub fn find_discord(mp: &MatrixProfile, n_discords: usize, exclusion_zone: Option<usize>) -> Result<DiscordSet> {
    mp.require_full_coverage("discord search")?;
    if n_discords < 1 {
        return Err(Error::param("n_discords must be at least 1"));
    }
    let zone = exclusion_zone.unwrap_or(mp.exclusion_zone);
    let mut masked = vec![false; mp.len()];
    let mut discords = Vec::new();
    while discords.len() < n_discords {
        let Some(i) = argmax_unmasked(&mp.values, &masked) else {
            break;
        };
        discords.push(Discord {
            index: i,
            distance: mp.values[i],
        });
        mask(&mut masked, i, zone);
    }
    Ok(DiscordSet {
        exhausted: discords.len() < n_discords,
        discords,
        window: mp.window,
        exclusion_zone: zone,
        n_requested: n_discords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Algorithm, JoinKind};

    fn profile(values: Vec<f64>) -> MatrixProfile {
        let mut mp = MatrixProfile::empty(values.len(), 4, 2, Algorithm::Stomp, JoinKind::SelfJoin);
        mp.index = (0..values.len()).map(|i| Some((i + 5) % values.len())).collect();
        mp.values = values;
        mp.coverage = 1.0;
        mp
    }

    #[test]
    fn picks_separated_maxima() {
        let mp = profile(vec![1.0, 2.0, 9.0, 8.5, 1.0, 1.0, 1.0, 7.0, 1.0, f64::INFINITY]);
        let set = find_discord(&mp, 2, None).unwrap();
        assert_eq!(set.indexes(), vec![2, 7]);
        assert_eq!(set.discords[0].distance, 9.0);
        assert!(!set.exhausted);
    }

    #[test]
    fn runs_out() {
        let mp = profile(vec![1.0; 6]);
        let set = find_discord(&mp, 5, Some(2)).unwrap();
        assert_eq!(set.indexes(), vec![0, 3]);
        assert!(set.exhausted);
        assert!(find_discord(&mp, 0, None).is_err());
    }
}
