//! The urn of all size-n samples drawn without replacement from a base urn.
//!
//! Samples are represented by their [`Composition`]: how many balls of each
//! distinct value they hold. A composition with counts `k_i` stands for
//! `prod_i C(c_i, k_i)` distinct subsets of balls, so the `C(N, n)` subsets
//! collapse to a much smaller weighted list. [`enumerate_samples`] walks the
//! subsets one by one instead and is kept as a brute-force cross-check.

use std::fmt;

use num::traits::{One, Zero};
use num::BigUint;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UrnError};
use crate::urn::Urn;

/// Default cap on the number of samples a full enumeration may visit.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

/// `C(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Per-value sample counts, aligned with the distinct values of an urn.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    counts: Vec<u64>,
}

impl Composition {
    pub fn new(counts: Vec<u64>) -> Self {
        Composition { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Checks that this is a size-`n` sample of `urn`.
    pub fn validate_for(&self, urn: &Urn, n: u64) -> Result<()> {
        if self.counts.len() != urn.distinct() {
            return Err(UrnError::Misaligned {
                expected: urn.distinct(),
                got: self.counts.len(),
            });
        }
        let invalid = |reason: String| UrnError::InvalidComposition {
            counts: self.counts.clone(),
            n,
            reason,
        };
        for (k, c) in self.counts.iter().zip(urn.counts()) {
            if *k > c {
                return Err(invalid(format!(
                    "takes {k} balls of a value with count {c}"
                )));
            }
        }
        if self.size() != n {
            return Err(invalid(format!("holds {} balls", self.size())));
        }
        Ok(())
    }

    /// Number of ball subsets of `urn` with this composition.
    pub fn weight(&self, urn: &Urn) -> BigUint {
        self.counts
            .iter()
            .zip(urn.counts())
            .map(|(&k, c)| binomial(c, k))
            .product()
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Composition{:?}", self.counts)
    }
}

fn check_n(urn: &Urn, n: u64) -> Result<()> {
    if n == 0 || n > urn.total() {
        return Err(UrnError::SampleSizeOutOfRange {
            n,
            total: urn.total(),
        });
    }
    Ok(())
}

/// `C(N, n)`, the number of size-`n` samples of `urn`.
pub fn space_size(urn: &Urn, n: u64) -> Result<BigUint> {
    check_n(urn, n)?;
    Ok(binomial(urn.total(), n))
}

/// Handle on the size-`n` sample space of an urn. Nothing is materialized
/// until one of the iterators is requested.
#[derive(Debug, Clone)]
pub struct SampleSpace<'a> {
    urn: &'a Urn,
    n: u64,
    size: BigUint,
}

impl<'a> SampleSpace<'a> {
    pub fn new(urn: &'a Urn, n: u64) -> Result<Self> {
        let size = space_size(urn, n)?;
        Ok(SampleSpace { urn, n, size })
    }

    pub fn urn(&self) -> &'a Urn {
        self.urn
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn compositions(&self) -> Compositions {
        Compositions::new(self.urn, self.n)
    }

    pub fn samples(&self, limit: &BigUint) -> Result<Samples> {
        if &self.size > limit {
            return Err(UrnError::CapacityExceeded {
                size: self.size.clone(),
                limit: limit.clone(),
            });
        }
        Ok(Samples::new(self.urn, self.n))
    }
}

/// Weighted compositions of a sample space in descending lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    caps: Vec<u64>,
    // binomials[i][k] = C(caps[i], k) for k <= min(caps[i], n)
    binomials: Vec<Vec<BigUint>>,
    current: Option<Vec<u64>>,
}

impl Compositions {
    fn new(urn: &Urn, n: u64) -> Self {
        let caps = urn.counts();
        let binomials = caps
            .iter()
            .map(|&c| {
                let top = c.min(n);
                let mut row = Vec::with_capacity(top as usize + 1);
                let mut b = BigUint::one();
                row.push(b.clone());
                for k in 1..=top {
                    b = b * (c - k + 1) / k;
                    row.push(b.clone());
                }
                row
            })
            .collect();
        let mut first = vec![0; caps.len()];
        let placed = fill_greedy(&mut first, &caps, 0, n);
        Compositions {
            caps,
            binomials,
            current: (placed == n).then_some(first),
        }
    }

    fn weight_of(&self, counts: &[u64]) -> BigUint {
        counts
            .iter()
            .enumerate()
            .map(|(i, &k)| &self.binomials[i][k as usize])
            .product()
    }

    fn advance(&self, counts: &[u64]) -> Option<Vec<u64>> {
        let mut next = counts.to_vec();
        let m = next.len();
        // Room to the right of position i, and balls currently placed there.
        let mut room: u64 = 0;
        let mut tail: u64 = 0;
        for i in (0..m.saturating_sub(1)).rev() {
            room += self.caps[i + 1] - next[i + 1];
            tail += next[i + 1];
            if next[i] > 0 && room > 0 {
                next[i] -= 1;
                for slot in next.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                fill_greedy(&mut next, &self.caps, i + 1, tail + 1);
                return Some(next);
            }
        }
        None
    }
}

/// Places up to `amount` balls into `counts[from..]`, leftmost first.
fn fill_greedy(counts: &mut [u64], caps: &[u64], from: usize, mut amount: u64) -> u64 {
    let mut placed = 0;
    for (slot, &cap) in counts.iter_mut().zip(caps).skip(from) {
        let take = cap.min(amount);
        *slot = take;
        amount -= take;
        placed += take;
    }
    placed
}

impl Iterator for Compositions {
    type Item = (Composition, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        let counts = self.current.take()?;
        self.current = self.advance(&counts);
        let weight = self.weight_of(&counts);
        Some((Composition::new(counts), weight))
    }
}

/// Every composition of the size-`n` sample space with its multiplicity.
pub fn enumerate_compositions(urn: &Urn, n: u64) -> Result<Compositions> {
    Ok(SampleSpace::new(urn, n)?.compositions())
}

/// Every individual size-`n` subset of balls, reported by composition.
///
/// Balls are numbered `0..N` in value order and subsets are visited in
/// lexicographic order of their ball indices.
#[derive(Debug, Clone)]
pub struct Samples {
    // upper[i] = index one past the last ball carrying value i
    upper: Vec<u64>,
    total: u64,
    current: Option<Vec<u64>>,
}

impl Samples {
    fn new(urn: &Urn, n: u64) -> Self {
        let upper = cumulative_bounds(urn);
        Samples {
            upper,
            total: urn.total(),
            current: Some((0..n).collect()),
        }
    }

    fn advance(&self, idx: &[u64]) -> Option<Vec<u64>> {
        let n = idx.len() as u64;
        let mut next = idx.to_vec();
        for i in (0..idx.len()).rev() {
            if next[i] < self.total - n + i as u64 {
                next[i] += 1;
                for j in i + 1..idx.len() {
                    next[j] = next[j - 1] + 1;
                }
                return Some(next);
            }
        }
        None
    }
}

fn cumulative_bounds(urn: &Urn) -> Vec<u64> {
    urn.counts()
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

fn composition_of(upper: &[u64], balls: impl Iterator<Item = u64>) -> Composition {
    let mut counts = vec![0; upper.len()];
    for ball in balls {
        let slot = upper.partition_point(|&u| u <= ball);
        counts[slot] += 1;
    }
    Composition::new(counts)
}

impl Iterator for Samples {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let idx = self.current.take()?;
        self.current = self.advance(&idx);
        Some(composition_of(&self.upper, idx.iter().copied()))
    }
}

/// Enumerates all `C(N, n)` samples, refusing when that exceeds `limit`.
pub fn enumerate_samples(urn: &Urn, n: u64, limit: &BigUint) -> Result<Samples> {
    SampleSpace::new(urn, n)?.samples(limit)
}

/// One simple random sample of size `n`, drawn uniformly over all subsets.
///
/// The generator is ChaCha20 seeded from `seed`; `position` selects the
/// ChaCha stream, so positions `0, 1, 2, ...` form a reproducible sequence
/// of independent samples.
pub fn srs_draw(urn: &Urn, n: u64, seed: u64, position: u64) -> Result<Composition> {
    check_n(urn, n)?;
    let upper = cumulative_bounds(urn);
    Ok(draw_with(&upper, urn.total(), n, seed, position))
}

fn draw_with(upper: &[u64], total: u64, n: u64, seed: u64, position: u64) -> Composition {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(position);
    let picked = index::sample(&mut rng, total as usize, n as usize);
    composition_of(upper, picked.iter().map(|i| i as u64))
}

/// The sequence of simple random samples at positions `0, 1, 2, ...`.
#[derive(Debug, Clone)]
pub struct SrsSequence {
    upper: Vec<u64>,
    total: u64,
    n: u64,
    seed: u64,
    position: u64,
}

impl SrsSequence {
    pub fn new(urn: &Urn, n: u64, seed: u64) -> Result<Self> {
        check_n(urn, n)?;
        Ok(SrsSequence {
            upper: cumulative_bounds(urn),
            total: urn.total(),
            n,
            seed,
            position: 0,
        })
    }
}

impl Iterator for SrsSequence {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let c = draw_with(&self.upper, self.total, self.n, self.seed, self.position);
        self.position = self.position.checked_add(1)?;
        Some(c)
    }
}
