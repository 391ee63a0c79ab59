use crate::candidates::{CandidateId, CandidateSet};
use crate::profile::Profile;
use crate::ranking::{all_rankings, Ranking};

pub fn ranking(s: &str) -> Ranking {
    let ids: Vec<usize> = s.bytes().map(|b| (b - b'a') as usize).collect();
    Ranking::from_indices(&ids).unwrap()
}

pub fn profile(rows: &[&str]) -> Profile {
    Profile::new(rows.iter().map(|r| ranking(r)).collect()).unwrap()
}

pub fn set(s: &str) -> CandidateSet {
    s.bytes().map(|b| CandidateId(b - b'a')).collect()
}

/// Brute-force walk over every labeled (n, m)-profile.
pub fn for_each_profile(n: usize, m: usize, mut f: impl FnMut(&Profile)) {
    let all = all_rankings(n).unwrap();
    let mut idx = vec![0usize; m];
    loop {
        let p = Profile::new(idx.iter().map(|&i| all[i]).collect()).unwrap();
        f(&p);
        let mut k = m;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < all.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
