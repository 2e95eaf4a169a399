//! Mechanical sequences of rational slope, characteristic sequences, and the
//! dictionary between continued fractions and directive words.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::central::{central_from_slope, PalBuilder};
use crate::error::{Error, Result};
use crate::seq::EventuallyPeriodicSeq;
use crate::word::{BinaryWord, Bit};
use crate::Rational;

fn check_unit(name: &str, r: &Rational) -> Result<()> {
    if r.is_negative() || *r > Rational::one() {
        return Err(Error::domain(format!("{name} = {r} is outside [0, 1]")));
    }
    Ok(())
}

fn bit_of(diff: BigInt) -> Result<Bit> {
    diff.to_u8()
        .filter(|&b| b <= 1)
        .ok_or_else(|| Error::invariant(format!("mechanical difference {diff} is not a bit")))
}

/// s_{α,ρ}(n) = ⌊(n+1)α + ρ⌋ − ⌊nα + ρ⌋.
pub fn mech_lower(alpha: &Rational, rho: &Rational, n: u64) -> Result<Bit> {
    check_unit("alpha", alpha)?;
    check_unit("rho", rho)?;
    let at = |k: u64| (alpha * Rational::from_integer(k.into()) + rho).floor().to_integer();
    bit_of(at(n + 1) - at(n))
}

/// s'_{α,ρ}(n) = ⌈(n+1)α + ρ⌉ − ⌈nα + ρ⌉.
pub fn mech_upper(alpha: &Rational, rho: &Rational, n: u64) -> Result<Bit> {
    check_unit("alpha", alpha)?;
    check_unit("rho", rho)?;
    let at = |k: u64| (alpha * Rational::from_integer(k.into()) + rho).ceil().to_integer();
    bit_of(at(n + 1) - at(n))
}

/// The mechanical sequence of slope p/q as a periodic object. Slope p/q
/// advances the argument by an integer every q steps, so q letters are a
/// period; canonicalization reduces it to the minimal one.
pub fn mech_periodic(p: u64, q: u64, rho: &Rational, upper: bool) -> Result<EventuallyPeriodicSeq> {
    if q == 0 || p > q || p.gcd(&q) != 1 {
        return Err(Error::domain(format!("{p}/{q} is not a reduced fraction in [0, 1]")));
    }
    let alpha = Rational::new(p.into(), q.into());
    let period: Vec<Bit> = (0..q)
        .map(|n| {
            if upper {
                mech_upper(&alpha, rho, n)
            } else {
                mech_lower(&alpha, rho, n)
            }
        })
        .collect::<Result<_>>()?;
    EventuallyPeriodicSeq::periodic(BinaryWord::from_bits_unchecked(period))
}

/// ((w10)^∞, (w01)^∞) for w = w_{p,q}: the two characteristic periodic
/// balanced sequences of slope p/q.
pub fn characteristic_pair(p: u64, q: u64) -> Result<(EventuallyPeriodicSeq, EventuallyPeriodicSeq)> {
    let cert = central_from_slope(p, q)?;
    let w = cert.word();
    let s10 = EventuallyPeriodicSeq::periodic(w.concat(&crate::word::w("10")))?;
    let s01 = EventuallyPeriodicSeq::periodic(w.concat(&crate::word::w("01")))?;
    Ok((s10, s01))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfForm {
    EvenLength,
    OddLength,
}

/// A finite simple continued fraction [0; a₁, …, aₙ] of a rational in (0, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    digits: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() || digits.contains(&0) {
            return Err(Error::domain("continued fraction digits must be positive"));
        }
        if digits == [1] {
            return Err(Error::domain("[0; 1] = 1 is not in (0, 1)"));
        }
        Ok(ContinuedFraction { digits })
    }

    /// a₁, …, aₙ (the leading 0 is implicit).
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn form(&self) -> CfForm {
        if self.digits.len().is_multiple_of(2) {
            CfForm::EvenLength
        } else {
            CfForm::OddLength
        }
    }

    pub fn ends_in_one(&self) -> bool {
        self.digits.len() >= 2 && self.digits.last() == Some(&1)
    }

    /// The other admissible expansion: [.., a] ↔ [.., a − 1, 1].
    pub fn alternate(&self) -> ContinuedFraction {
        let mut digits = self.digits.clone();
        if self.ends_in_one() {
            digits.pop();
            *digits.last_mut().unwrap() += 1;
        } else {
            *digits.last_mut().unwrap() -= 1;
            digits.push(1);
        }
        ContinuedFraction { digits }
    }

    pub fn to_rational(&self) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for &a in self.digits.iter().rev() {
            acc = (Rational::from_integer(a.into()) + acc).recip();
        }
        acc
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(u64::to_string).collect();
        write!(f, "[0;{}]", parts.join(","))
    }
}

/// Euclidean continued fraction of p/q; the last digit is ≥ 2.
pub fn cf_of_rational(p: u64, q: u64) -> Result<ContinuedFraction> {
    if !(0 < p && p < q) || p.gcd(&q) != 1 {
        return Err(Error::domain(format!("{p}/{q} is not a reduced fraction in (0, 1)")));
    }
    let (mut num, mut den) = (q, p);
    let mut digits = Vec::new();
    while den != 0 {
        digits.push(num / den);
        (num, den) = (den, num % den);
    }
    ContinuedFraction::new(digits)
}

/// v = 0^{d₁}1^{d₂}0^{d₃}… where p/q = [0; d₁+1, d₂, …, dₙ, 1]; Pal(v) = w_{p,q}.
pub fn directive_from_cf(cf: &ContinuedFraction) -> BinaryWord {
    let (_, blocks) = directive_blocks(cf);
    blocks_to_word(&blocks)
}

/// (x, d₁..dₙ) where x is the letter of the last block.
fn directive_blocks(cf: &ContinuedFraction) -> (Bit, Vec<u64>) {
    let ending_one = if cf.ends_in_one() { cf.clone() } else { cf.alternate() };
    let mut d = ending_one.digits.clone();
    d.pop();
    d[0] -= 1;
    let x = if d.len() % 2 == 1 { 0 } else { 1 };
    (x, d)
}

fn blocks_to_word(blocks: &[u64]) -> BinaryWord {
    let mut v = BinaryWord::empty();
    for (i, &len) in blocks.iter().enumerate() {
        for _ in 0..len {
            v.push((i % 2) as Bit);
        }
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharVariant {
    /// (w_{p,q} x y)^∞ = Pal(0^{d₁}…x^{dₙ+1} y^∞)
    XyFirst,
    /// (w_{p,q} y x)^∞ = Pal(0^{d₁}…x^{dₙ} y x^∞)
    YxFirst,
}

/// A characteristic periodic balanced sequence of slope p/q, built by
/// iterated palindromic closure of an eventually constant directive and
/// checked against [`characteristic_pair`].
pub fn characteristic_periodic_via_pal(p: u64, q: u64, variant: CharVariant) -> Result<EventuallyPeriodicSeq> {
    let cf = cf_of_rational(p, q)?;
    let (x, blocks) = directive_blocks(&cf);
    let y = 1 - x;
    let mut builder = PalBuilder::new();
    blocks_to_word(&blocks).bits().iter().for_each(|&b| builder.push(b));
    let (head, tail) = match variant {
        CharVariant::XyFirst => (x, y),
        CharVariant::YxFirst => (y, x),
    };
    builder.push(head);
    let need = 2 * q as usize;
    while builder.len() < need {
        builder.push(tail);
    }
    let word = builder.word();
    let period = word.prefix(q as usize);
    let result = EventuallyPeriodicSeq::periodic(period)?;
    if result.prefix(word.len()) != word {
        return Err(Error::invariant(format!(
            "Pal prefix {word} is not periodic with period {q}"
        )));
    }
    let (s10, s01) = characteristic_pair(p, q)?;
    let expected = if (x, y) == (1, 0) { [s10, s01] } else { [s01, s10] };
    let expected = match variant {
        CharVariant::XyFirst => &expected[0],
        CharVariant::YxFirst => &expected[1],
    };
    if &result != expected {
        return Err(Error::invariant(format!(
            "{result} != characteristic sequence {expected}"
        )));
    }
    Ok(result)
}

/// A directive sequence Δ for iterated palindromic closure. For Sturmian
/// use it must not be eventually constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectiveSpec(EventuallyPeriodicSeq);

impl DirectiveSpec {
    pub fn new(letters: EventuallyPeriodicSeq) -> Result<Self> {
        if letters.period().len() == 1 {
            return Err(Error::domain(format!(
                "directive {letters} is eventually constant; Pal of it is periodic"
            )));
        }
        Ok(DirectiveSpec(letters))
    }

    pub fn letters(&self) -> &EventuallyPeriodicSeq {
        &self.0
    }

    /// Block lengths of Δ = 0^{d₁}1^{d₂}0^{d₃}… as (preperiod, period), with
    /// d₁ = 0 when Δ starts with 1. The period has an even number of blocks.
    pub fn block_lengths(&self) -> (Vec<u64>, Vec<u64>) {
        let delta = &self.0;
        let pre = delta.preperiod().len();
        let per = delta.period().len();
        // A block boundary j in (pre, pre + per]: from j on, whole periods
        // consist of whole blocks.
        let j = (pre + 1..=pre + per)
            .find(|&j| delta.digit(j) != delta.digit(j - 1))
            .expect("non-constant period has a boundary");
        let mut head = run_lengths((0..j).map(|n| delta.digit(n)));
        if delta.digit(0) == 1 {
            head.insert(0, 0);
        }
        let tail = run_lengths((j..j + per).map(|n| delta.digit(n)));
        (head, tail)
    }

    /// Continued fraction of the slope, [0; d₁+1, d₂, d₃, …], as
    /// (preperiod digits, periodic digits).
    pub fn slope_cf(&self) -> (Vec<u64>, Vec<u64>) {
        let (mut head, tail) = self.block_lengths();
        head[0] += 1;
        (head, tail)
    }
}

fn run_lengths(bits: impl Iterator<Item = Bit>) -> Vec<u64> {
    let mut runs: Vec<(Bit, u64)> = Vec::new();
    for b in bits {
        match runs.last_mut() {
            Some((letter, n)) if *letter == b => *n += 1,
            _ => runs.push((b, 1)),
        }
    }
    runs.into_iter().map(|(_, n)| n).collect()
}

/// Length-n prefix of the characteristic Sturmian sequence Pal(Δ).
pub fn characteristic_sturmian_prefix(delta: &DirectiveSpec, n: usize) -> Result<BinaryWord> {
    if n == 0 {
        return Err(Error::domain("prefix length must be positive"));
    }
    let mut builder = PalBuilder::new();
    let mut letters = delta.letters().digits();
    while builder.len() < n {
        builder.push(letters.next().expect("infinite directive"));
    }
    Ok(builder.word().prefix(n))
}
