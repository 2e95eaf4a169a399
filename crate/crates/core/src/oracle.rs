//! Brute-force reference implementations. Nothing here uses balance,
//! centrality, or the prefix rule that the fast path in [`crate::lexmap`]
//! relies on; they only enumerate and compare.

use crate::error::{Error, Result};
use crate::seq::{distinct_shifts, expansion, DyadicMode, EventuallyPeriodicSeq};
use crate::word::{BinaryWord, Bit};
use crate::Rational;

/// Search bounds for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_period: usize,
    pub max_preperiod: usize,
    pub max_word_len: usize,
}

impl SweepConfig {
    /// Largest period the candidate search accepts.
    pub const PERIOD_GUARD: usize = 16;

    pub fn with_max_period(max_period: usize) -> Self {
        SweepConfig {
            max_period,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if self.max_period == 0 || self.max_period > Self::PERIOD_GUARD {
            return Err(Error::domain(format!(
                "max_period {} outside 1..={}",
                self.max_period,
                Self::PERIOD_GUARD
            )));
        }
        Ok(())
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_period: 8,
            max_preperiod: 2,
            max_word_len: 12,
        }
    }
}

/// Every word of length `len`, in lexicographic order.
pub fn all_words(len: usize) -> impl Iterator<Item = BinaryWord> {
    (0u64..1 << len)
        .map(move |n| BinaryWord::from_bits((0..len).rev().map(|i| ((n >> i) & 1) as Bit).collect()).expect("bits"))
}

/// Periodic candidates (c)^∞ with |c| ≤ max_period, one per necklace:
/// c is primitive and is the greatest of its rotations, so (c)^∞ is the
/// greatest shift of the candidate.
fn candidates(max_period: usize) -> impl Iterator<Item = BinaryWord> {
    (1..=max_period)
        .flat_map(all_words)
        .filter(|c| c.is_primitive() && c.rotations().iter().all(|r| r <= c))
}

/// min over periodic s with every shift ≥ `lower` of (greatest shift of s).
fn brute_min_sup(lower: &EventuallyPeriodicSeq, cfg: &SweepConfig) -> Result<EventuallyPeriodicSeq> {
    cfg.check()?;
    let mut best: Option<EventuallyPeriodicSeq> = None;
    for c in candidates(cfg.max_period) {
        let s = EventuallyPeriodicSeq::periodic(c)?;
        if best.as_ref().is_some_and(|b| *b <= s) {
            continue;
        }
        let orbit = distinct_shifts(&s);
        if orbit.iter().all(|t| t >= lower) {
            debug_assert!(orbit.iter().all(|t| *t <= s));
            best = Some(s);
        }
    }
    best.ok_or_else(|| Error::SearchExhausted(format!("no periodic s with all shifts ≥ {lower}")))
}

/// φ(0u) by exhaustive search over periodic sequences.
pub fn brute_phi(u: &EventuallyPeriodicSeq, cfg: &SweepConfig) -> Result<EventuallyPeriodicSeq> {
    let lower = u.prepend(&BinaryWord::from_bits(vec![0])?);
    brute_min_sup(&lower, cfg)
}

/// F(x) by exhaustive search over the same candidate family.
#[allow(non_snake_case)]
pub fn brute_F(x: &Rational, cfg: &SweepConfig) -> Result<Rational> {
    let a = expansion(x, DyadicMode::Lesser)?;
    Ok(brute_min_sup(&a, cfg)?.value())
}

/// Literal reading of the balance definition: every pair of equal-length
/// factors differs by at most one in the number of 1s.
pub fn naive_balance(w: &BinaryWord) -> bool {
    let bits = w.bits();
    let ones = |i: usize, n: usize| bits[i..i + n].iter().filter(|&&b| b == 1).count();
    for n in 1..=bits.len() {
        for i in 0..=bits.len() - n {
            for j in 0..=bits.len() - n {
                if ones(i, n).abs_diff(ones(j, n)) > 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// All central words of length ≤ max_len, found as the words w with both
/// 0w1 and 1w0 balanced.
pub fn enumerate_central(max_len: usize) -> Result<Vec<BinaryWord>> {
    if max_len > 20 {
        return Err(Error::domain("enumerate_central is limited to length 20"));
    }
    let (zero, one) = (BinaryWord::from_bits(vec![0])?, BinaryWord::from_bits(vec![1])?);
    Ok((0..=max_len)
        .flat_map(all_words)
        .filter(|w| {
            naive_balance(&BinaryWord::concat_all([&zero, w, &one]))
                && naive_balance(&BinaryWord::concat_all([&one, w, &zero]))
        })
        .collect())
}

/// Central words w, |w| ≤ max_len, with (w01)^∞ ≤ u ≤ (w10)^∞.
pub fn sandwich_census(u: &EventuallyPeriodicSeq, max_len: usize) -> Result<Vec<BinaryWord>> {
    sandwich_census_among(u, &enumerate_central(max_len)?)
}

/// As [`sandwich_census`], over a precomputed list of central words.
pub fn sandwich_census_among(u: &EventuallyPeriodicSeq, central_words: &[BinaryWord]) -> Result<Vec<BinaryWord>> {
    if u.constant_letter().is_some() {
        return Err(Error::domain(format!("census does not apply to constant {u}")));
    }
    let (d01, d10) = (BinaryWord::from_bits(vec![0, 1])?, BinaryWord::from_bits(vec![1, 0])?);
    let mut out = Vec::new();
    for w in central_words {
        let lower = EventuallyPeriodicSeq::periodic(w.concat(&d01))?;
        let upper = EventuallyPeriodicSeq::periodic(w.concat(&d10))?;
        if lower <= *u && *u <= upper {
            out.push(w.clone());
        }
    }
    Ok(out)
}

/// Every canonical eventually periodic sequence with |pre| ≤ max_pre and
/// |per| ≤ max_per.
pub fn enumerate_sequences(max_pre: usize, max_per: usize) -> Vec<EventuallyPeriodicSeq> {
    let mut out: Vec<EventuallyPeriodicSeq> = Vec::new();
    for pre_len in 0..=max_pre {
        for per_len in 1..=max_per {
            for pre in all_words(pre_len) {
                for per in all_words(per_len) {
                    let s = EventuallyPeriodicSeq::new(pre.clone(), per).expect("nonempty");
                    if s.preperiod() == &pre && s.period().len() == per_len {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}
