//! Eventually periodic binary sequences, their lexicographic order, the
//! shift map, and the bridge to exact rationals in [0, 1].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{BinaryWord, Bit};
use crate::Rational;

/// `preperiod · (period)^∞`, always stored in canonical form: the period is
/// primitive and the preperiod is as short as possible. Two sequences are
/// digitwise equal iff their canonical forms are equal, so derived `Eq` is
/// sequence equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSeq {
    preperiod: BinaryWord,
    period: BinaryWord,
}

/// Which binary expansion to pick for a dyadic rational other than 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DyadicMode {
    /// The expansion ending in `01^∞`.
    Lesser,
    /// The terminating expansion, ending in `10^∞`.
    Greater,
}

impl EventuallyPeriodicSeq {
    /// Builds `pre · per^∞` and canonicalizes it. Fails on an empty period.
    pub fn new(preperiod: BinaryWord, period: BinaryWord) -> Result<Self> {
        canonicalize(&preperiod, &period)
    }

    pub fn periodic(period: BinaryWord) -> Result<Self> {
        Self::new(BinaryWord::empty(), period)
    }

    pub fn constant(letter: Bit) -> Self {
        EventuallyPeriodicSeq {
            preperiod: BinaryWord::empty(),
            period: BinaryWord::repeat_letter(letter, 1),
        }
    }

    pub fn zeros() -> Self {
        Self::constant(0)
    }

    pub fn ones() -> Self {
        Self::constant(1)
    }

    pub fn preperiod(&self) -> &BinaryWord {
        &self.preperiod
    }

    pub fn period(&self) -> &BinaryWord {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// Constant sequence 0^∞ or 1^∞.
    pub fn constant_letter(&self) -> Option<Bit> {
        (self.preperiod.is_empty() && self.period.len() == 1).then(|| self.period.bits()[0])
    }

    pub fn digit(&self, n: usize) -> Bit {
        let pre = self.preperiod.len();
        if n < pre {
            self.preperiod.bits()[n]
        } else {
            self.period.bits()[(n - pre) % self.period.len()]
        }
    }

    pub fn digits(&self) -> impl Iterator<Item = Bit> + '_ {
        (0..).map(move |n| self.digit(n))
    }

    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord::from_bits_unchecked(self.digits().take(n).collect())
    }

    /// `word · self`.
    pub fn prepend(&self, word: &BinaryWord) -> Self {
        canonicalize(&word.concat(&self.preperiod), &self.period).expect("period is nonempty")
    }

    /// T^k.
    pub fn shift(&self, k: usize) -> Self {
        shift(self, k)
    }

    /// Number of leading digits that settle the comparison between two
    /// sequences: past this point both are periodic with period lcm.
    pub fn comparison_horizon(&self, other: &Self) -> usize {
        self.preperiod.len().max(other.preperiod.len()) + self.period.len().lcm(&other.period.len())
    }

    /// r(s): the real number with binary digits s, digit n weighing 2^-(n+1).
    pub fn value(&self) -> Rational {
        value(self)
    }
}

/// Reduces `pre · per^∞` to its canonical form.
pub fn canonicalize(pre: &BinaryWord, per: &BinaryWord) -> Result<EventuallyPeriodicSeq> {
    if per.is_empty() {
        return Err(Error::domain("period must be nonempty"));
    }
    let mut period = per.prefix(per.primitive_root_len()).into_bits();
    let mut preperiod = pre.bits().to_vec();
    // Rotation merge: pre·a · (x·a)^∞ == pre · (a·x)^∞ when the last letters agree.
    while let (Some(&p), Some(&q)) = (preperiod.last(), period.last()) {
        if p != q {
            break;
        }
        preperiod.pop();
        period.rotate_right(1);
    }
    Ok(EventuallyPeriodicSeq {
        preperiod: BinaryWord::from_bits_unchecked(preperiod),
        period: BinaryWord::from_bits_unchecked(period),
    })
}

pub fn shift(s: &EventuallyPeriodicSeq, k: usize) -> EventuallyPeriodicSeq {
    let pre = s.preperiod.len();
    if k <= pre {
        canonicalize(&s.preperiod.suffix_from(k), &s.period).expect("period is nonempty")
    } else {
        canonicalize(&BinaryWord::empty(), &s.period.rotate(k - pre)).expect("period is nonempty")
    }
}

/// Lexicographic comparison decided on the finite horizon
/// `max(|pre|) + lcm(|per|)`.
pub fn lex_compare(s: &EventuallyPeriodicSeq, t: &EventuallyPeriodicSeq) -> Ordering {
    let horizon = s.comparison_horizon(t);
    (0..horizon)
        .map(|n| s.digit(n).cmp(&t.digit(n)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl Ord for EventuallyPeriodicSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(self, other)
    }
}

impl PartialOrd for EventuallyPeriodicSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The finite orbit {T^k(s) : k ≥ 0}, in order of first appearance.
pub fn distinct_shifts(s: &EventuallyPeriodicSeq) -> Vec<EventuallyPeriodicSeq> {
    let mut out: Vec<EventuallyPeriodicSeq> = Vec::new();
    for k in 0..s.preperiod.len() + s.period.len() {
        let t = s.shift(k);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

pub fn value(s: &EventuallyPeriodicSeq) -> Rational {
    let per_len = s.period.len();
    let per_den = (BigUint::one() << per_len) - BigUint::one();
    let per_val = Rational::new(BigInt::from(s.period.to_biguint()), BigInt::from(per_den));
    let pre_len = s.preperiod.len();
    let scaled = Rational::from_integer(BigInt::from(s.preperiod.to_biguint())) + per_val;
    scaled / Rational::from_integer(BigInt::one() << pre_len)
}

/// Binary expansion of a rational in [0, 1], in canonical form.
pub fn expansion(x: &Rational, mode: DyadicMode) -> Result<EventuallyPeriodicSeq> {
    if x.is_negative() || *x > Rational::one() {
        return Err(Error::domain(format!("{x} is outside [0, 1]")));
    }
    if x.is_zero() {
        return Ok(EventuallyPeriodicSeq::zeros());
    }
    if x.is_one() {
        return Ok(EventuallyPeriodicSeq::ones());
    }
    let den = x.denom().clone();
    let mut rem = x.numer().clone();
    let mut digits: Vec<Bit> = Vec::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    loop {
        if rem.is_zero() {
            // Dyadic: digits is the terminating expansion ending in 1.
            let per = match mode {
                DyadicMode::Greater => 0,
                DyadicMode::Lesser => {
                    *digits.last_mut().expect("nonzero x has a digit") = 0;
                    1
                }
            };
            return canonicalize(
                &BinaryWord::from_bits_unchecked(digits),
                &BinaryWord::repeat_letter(per, 1),
            );
        }
        if let Some(&start) = seen.get(&rem) {
            let period = digits.split_off(start);
            return canonicalize(
                &BinaryWord::from_bits_unchecked(digits),
                &BinaryWord::from_bits_unchecked(period),
            );
        }
        seen.insert(rem.clone(), digits.len());
        rem <<= 1u32;
        if rem >= den {
            rem -= &den;
            digits.push(1);
        } else {
            digits.push(0);
        }
    }
}

/// Parses a rational written `a/b` or `a`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |part: &str, offset: usize| -> Result<BigInt> {
        part.trim().parse::<BigInt>().map_err(|_| Error::Parse {
            position: offset,
            message: format!("expected an integer, found {part:?}"),
        })
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let numer = parse_int(n, 0)?;
            let denom = parse_int(d, n.len() + 1)?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    position: n.len() + 1,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(numer, denom))
        }
        None => Ok(Rational::from_integer(parse_int(s, 0)?)),
    }
}

impl fmt::Display for EventuallyPeriodicSeq {
    /// `pre(per)`; a purely periodic sequence prints as `(per)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.preperiod.is_empty() {
            write!(f, "{}", self.preperiod)?;
        }
        write!(f, "({})", self.period)
    }
}

impl fmt::Debug for EventuallyPeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq({self})")
    }
}

impl FromStr for EventuallyPeriodicSeq {
    type Err = Error;

    /// `SEQ ::= WORD | WORD "(" WORD ")"`. A bare word is read as a
    /// terminating expansion, `WORD(0)`.
    fn from_str(s: &str) -> Result<Self> {
        let shift_err = |e: Error, offset: usize| match e {
            Error::Parse { position, message } => Error::Parse {
                position: position + offset,
                message,
            },
            other => other,
        };
        let Some(open) = s.find('(') else {
            if let Some(pos) = s.find(')') {
                return Err(Error::Parse {
                    position: pos,
                    message: "unmatched ')'".into(),
                });
            }
            let pre: BinaryWord = s.parse()?;
            return canonicalize(&pre, &BinaryWord::repeat_letter(0, 1));
        };
        let pre: BinaryWord = if open == 0 {
            BinaryWord::empty()
        } else {
            s[..open].parse()?
        };
        let rest = &s[open + 1..];
        let Some(close) = rest.find(')') else {
            return Err(Error::Parse {
                position: s.len(),
                message: "missing ')'".into(),
            });
        };
        if close + 1 != rest.len() {
            return Err(Error::Parse {
                position: open + 1 + close + 1,
                message: "unexpected text after ')'".into(),
            });
        }
        let per_text = &rest[..close];
        if per_text.is_empty() || per_text == "ε" {
            return Err(Error::Parse {
                position: open + 1,
                message: "period must be nonempty".into(),
            });
        }
        let per: BinaryWord = per_text.parse().map_err(|e| shift_err(e, open + 1))?;
        canonicalize(&pre, &per)
    }
}

/// Shorthand for tests and examples: panics on malformed input.
pub fn seq(s: &str) -> EventuallyPeriodicSeq {
    s.parse().expect("malformed sequence literal")
}

/// Shorthand for tests and examples: panics on malformed input.
pub fn rat(s: &str) -> Rational {
    parse_rational(s).expect("malformed rational literal")
}
