//! Profile file formats.
//!
//! Text: first line `n m`, then `m` lines each listing the candidates of one
//! ballot from highest to lowest, separated by spaces (`a b c`). Candidate ids
//! follow the sorted order of the labels, so `a`, `b`, `c` get ids 0, 1, 2.
//!
//! JSON: `{"candidates": ["a","b","c"], "rankings": [["a","b","c"], ...]}`,
//! with ids following the order of `candidates`.

use serde::{Deserialize, Serialize};

use crate::candidates::Candidates;
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::Ranking;

/// A profile with the label table it was read with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledProfile {
    pub candidates: Candidates,
    pub profile: Profile,
}

impl LabeledProfile {
    pub fn with_default_labels(profile: Profile) -> Result<Self> {
        Ok(LabeledProfile {
            candidates: Candidates::default_labels(profile.num_candidates())?,
            profile,
        })
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: header_line,
                message: format!("expected `n m`, found `{header}`"),
            })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: header_line,
                message: format!("expected `n m`, found `{header}`"),
            });
        }
        let (n, m) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        if m == 0 {
            return Err(Error::NoVoters);
        }

        let ballots: Vec<(usize, Vec<&str>)> = lines
            .map(|(no, l)| (no, l.split_whitespace().collect()))
            .collect();
        if ballots.len() != m {
            return Err(Error::Parse {
                line: ballots.last().map_or(header_line, |b| b.0),
                message: format!("header declares {m} ballots, found {}", ballots.len()),
            });
        }
        let mut labels: Vec<String> = ballots[0].1.iter().map(|s| s.to_string()).collect();
        labels.sort();
        if labels.len() != n {
            return Err(Error::Parse {
                line: ballots[0].0,
                message: format!("header declares {n} candidates, ballot lists {}", labels.len()),
            });
        }
        let candidates = Candidates::from_labels(labels).map_err(|e| Error::Parse {
            line: ballots[0].0,
            message: e.to_string(),
        })?;
        let rankings = ballots
            .iter()
            .map(|(no, tokens)| {
                parse_tokens(tokens, &candidates).map_err(|e| Error::Parse {
                    line: *no,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledProfile {
            candidates,
            profile: Profile::new(rankings)?,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}\n",
            self.profile.num_candidates(),
            self.profile.num_voters()
        );
        for r in self.profile.rankings() {
            let names: Vec<&str> = r.order().map(|c| self.candidates.label(c)).collect();
            out.push_str(&names.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: ProfileDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let candidates = Candidates::from_labels(doc.candidates)?;
        let rankings = doc
            .rankings
            .iter()
            .enumerate()
            .map(|(i, names)| {
                let tokens: Vec<&str> = names.iter().map(String::as_str).collect();
                parse_tokens(&tokens, &candidates).map_err(|e| Error::Json(format!("ranking {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledProfile {
            candidates,
            profile: Profile::new(rankings)?,
        })
    }

    pub fn to_json(&self) -> String {
        let doc = ProfileDoc {
            candidates: self.candidates.labels().to_vec(),
            rankings: self
                .profile
                .rankings()
                .iter()
                .map(|r| r.order().map(|c| self.candidates.label(c).to_string()).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("profile documents always serialize")
    }

    /// Picks the format from the first non-blank character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileDoc {
    candidates: Vec<String>,
    rankings: Vec<Vec<String>>,
}

fn parse_tokens(tokens: &[&str], candidates: &Candidates) -> Result<Ranking> {
    let n = candidates.len();
    if tokens.len() != n {
        return Err(Error::NotAPermutation {
            n,
            detail: format!("ballot lists {} candidates", tokens.len()),
        });
    }
    let ids = tokens
        .iter()
        .map(|t| {
            candidates.id(t).ok_or_else(|| Error::NotAPermutation {
                n,
                detail: format!("unknown candidate `{t}`"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ranking::new(&ids)
}
