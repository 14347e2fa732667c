use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::methods::MethodId;
use crate::num::Scalar;

/// Rank positions of methods under one criterion. Rank 1 is best; tied
/// methods share the smallest rank of their group and the next rank skips.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingVector {
    pub criterion: String,
    pub ranks: BTreeMap<MethodId, u32>,
}

impl RankingVector {
    /// Ranks `scores` in descending order. Neighbouring scores within
    /// `tie_tolerance` of each other are tied.
    pub fn from_scores<T: Scalar>(
        criterion: impl Into<String>,
        scores: &[(MethodId, T)],
        tie_tolerance: T,
    ) -> Self {
        let mut order: Vec<&(MethodId, T)> = scores.iter().collect();
        order.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.0.cmp(&b.0))
        });
        let mut ranks = BTreeMap::new();
        let mut prev: Option<(T, u32)> = None;
        for (i, (m, score)) in order.into_iter().enumerate() {
            let rank = match prev {
                Some((p, r)) if (p - *score).abs() <= tie_tolerance => r,
                _ => i as u32 + 1,
            };
            prev = Some((*score, rank));
            ranks.insert(*m, rank);
        }
        RankingVector {
            criterion: criterion.into(),
            ranks,
        }
    }

    pub fn rank(&self, method: MethodId) -> Option<u32> {
        self.ranks.get(&method).copied()
    }

    /// Rank positions in [`MethodId`] order.
    pub fn positions(&self) -> Vec<u32> {
        self.ranks.values().copied().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankingDistance<T> {
    pub euclidean: T,
    pub cosine: T,
}

/// Euclidean distance and cosine similarity between two rank vectors over
/// the same method set.
pub fn ranking_distance<T: Scalar>(
    a: &RankingVector,
    b: &RankingVector,
) -> Result<RankingDistance<T>> {
    if !a.ranks.keys().eq(b.ranks.keys()) {
        return Err(Error::Consistency(format!(
            "rankings `{}` and `{}` cover different methods",
            a.criterion, b.criterion
        )));
    }
    let (mut sq, mut dot, mut na, mut nb) = (T::zero(), T::zero(), T::zero(), T::zero());
    for (x, y) in a.ranks.values().zip(b.ranks.values()) {
        let (x, y) = (T::from_u32(*x).unwrap(), T::from_u32(*y).unwrap());
        sq = sq + (x - y) * (x - y);
        dot = dot + x * y;
        na = na + x * x;
        nb = nb + y * y;
    }
    let denom = na.sqrt() * nb.sqrt();
    Ok(RankingDistance {
        euclidean: sq.sqrt(),
        cosine: if denom > T::zero() {
            dot / denom
        } else {
            T::zero()
        },
    })
}
