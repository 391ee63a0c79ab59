//! Profile extensions that leave the relevant winners unchanged. They lift a
//! manipulable profile to more voters or candidates.

use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{all_rankings, Ranking};

fn require(profile: &Profile, n: usize) -> Result<()> {
    if profile.num_candidates() != n {
        return Err(Error::ConstructionArity {
            expected: n,
            got: profile.num_candidates(),
        });
    }
    Ok(())
}

/// Appends the mirror pair `abc`, `cba` to a three-candidate profile.
pub fn add_two_voters(profile: &Profile) -> Result<Profile> {
    require(profile, 3)?;
    let mut out = profile.clone();
    out.push_ranking(Ranking::from_indices(&[0, 1, 2])?);
    out.push_ranking(Ranking::from_indices(&[2, 1, 0])?);
    Ok(out)
}

/// Appends one voter for each of the 24 rankings of four candidates.
pub fn add_24_voters(profile: &Profile) -> Result<Profile> {
    require(profile, 4)?;
    let mut out = profile.clone();
    for r in all_rankings(4)? {
        out.push_ranking(r);
    }
    Ok(out)
}

/// Adds a fresh candidate, ranked last by every voter.
pub fn add_bottom_candidate(profile: &Profile) -> Result<Profile> {
    Profile::new(
        profile
            .rankings()
            .iter()
            .map(Ranking::with_bottom_candidate)
            .collect::<Result<_>>()?,
    )
}
