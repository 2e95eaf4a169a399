//! Balance, palindromic closure, iterated palindromic closure (`Pal`), and
//! central words with their certificates.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::mechanical::{self, cf_of_rational, directive_from_cf};
use crate::word::{is_palindrome, BinaryWord, Bit};
use crate::Rational;

/// True iff any two factors of equal length differ by at most one in their
/// number of 1s. Sliding-window min/max per window length, O(n²).
pub fn is_balanced(w: &BinaryWord) -> bool {
    let bits = w.bits();
    let mut prefix = Vec::with_capacity(bits.len() + 1);
    prefix.push(0usize);
    for &b in bits {
        prefix.push(prefix.last().unwrap() + b as usize);
    }
    (1..bits.len()).all(|n| {
        let (lo, hi) = (0..=bits.len() - n)
            .map(|i| prefix[i + n] - prefix[i])
            .fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
        hi - lo <= 1
    })
}

/// w^(+): the shortest palindrome with `w` as a prefix.
pub fn palindromic_closure(w: &BinaryWord) -> BinaryWord {
    let bits = w.bits();
    // First start index of a palindromic suffix = start of the longest one.
    let start = (0..bits.len()).find(|&i| is_palindrome(&bits[i..])).unwrap_or(0);
    let mut out = bits.to_vec();
    out.extend(bits[..start].iter().rev());
    BinaryWord::from_bits_unchecked(out)
}

/// Iterated palindromic closure: Pal(ε) = ε, Pal(vx) = (Pal(v)x)^(+).
pub fn pal(v: &BinaryWord) -> BinaryWord {
    v.bits().iter().fold(BinaryWord::empty(), |acc, &x| {
        let mut next = acc;
        next.push(x);
        palindromic_closure(&next)
    })
}

/// Incremental `Pal` over a stream of directive letters, using the
/// identity Pal(vx) = Pal(v)·Pal(v')⁻¹·Pal(v), where v' is the prefix of `v`
/// before the last occurrence of x (or Pal(v)·x·Pal(v) if x does not occur).
#[derive(Clone, Debug, Default)]
pub struct PalBuilder {
    word: Vec<Bit>,
    /// |Pal(v')| where v' is the prefix before the last occurrence of each letter.
    last_len: [Option<usize>; 2],
}

impl PalBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: Bit) {
        let x = (x & 1) as usize;
        let before = self.word.len();
        match self.last_len[x] {
            None => {
                let copy = self.word.clone();
                self.word.push(x as Bit);
                self.word.extend_from_slice(&copy);
            }
            Some(inner) => {
                let tail = self.word[inner..].to_vec();
                self.word.extend_from_slice(&tail);
            }
        }
        self.last_len[x] = Some(before);
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> BinaryWord {
        BinaryWord::from_bits_unchecked(self.word.clone())
    }
}

/// Everything known about a central word: its slope p/q, coprime periods,
/// standard factorization, and directive word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCertificate {
    word: BinaryWord,
    p: u64,
    q: u64,
    ell1: usize,
    ell2: usize,
    factorization: Option<(BinaryWord, BinaryWord)>,
    directive: BinaryWord,
}

impl CentralCertificate {
    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    /// Slope numerator: |w|_1 + 1.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Slope denominator: |w| + 2.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn slope(&self) -> Rational {
        Rational::new(self.p.into(), self.q.into())
    }

    /// The coprime periods (ℓ₁, ℓ₂). When the word has both letters,
    /// ℓ₁ = |w₁| + 2 and ℓ₂ = |w₂| + 2; for w ∈ 0* ∪ 1* they are (1, |w| + 1).
    pub fn periods(&self) -> (usize, usize) {
        (self.ell1, self.ell2)
    }

    /// (w₁, w₂) with w = w₁01w₂ = w₂10w₁; `None` for w ∈ 0* ∪ 1*.
    pub fn factorization(&self) -> Option<(&BinaryWord, &BinaryWord)> {
        self.factorization.as_ref().map(|(a, b)| (a, b))
    }

    /// The unique v with Pal(v) = w.
    pub fn directive(&self) -> &BinaryWord {
        &self.directive
    }

    fn check(&self) -> Result<()> {
        let w = &self.word;
        let fail = |what: &str| Err(Error::invariant(format!("certificate for {w}: {what}")));
        if self.p.gcd(&self.q) != 1 || !(0 < self.p && self.p < self.q) {
            return fail("slope not reduced in (0,1)");
        }
        if w.len() as u64 + 2 != self.q || w.count_ones() as u64 + 1 != self.p {
            return fail("slope does not match letter counts");
        }
        if !w.has_period(self.ell1) || !w.has_period(self.ell2) {
            return fail("periods");
        }
        if self.ell1.gcd(&self.ell2) != 1 || self.ell1 + self.ell2 != w.len() + 2 {
            return fail("periods not coprime or wrong sum");
        }
        if !w.is_empty() && self.ell1.min(self.ell2) != w.minimal_period()? {
            return fail("minimal period");
        }
        if let Some((w1, w2)) = &self.factorization {
            let lhs = BinaryWord::concat_all([w1, &crate::word::w("01"), w2]);
            let rhs = BinaryWord::concat_all([w2, &crate::word::w("10"), w1]);
            if &lhs != w || &rhs != w || w1.len() + 2 != self.ell1 || w2.len() + 2 != self.ell2 {
                return fail("standard factorization");
            }
        } else if w.has_both_letters() {
            return fail("missing factorization");
        }
        if &pal(&self.directive) != w {
            return fail("directive");
        }
        Ok(())
    }
}

/// The coprime period pair (ℓ, m) with ℓ the minimal period and
/// ℓ + m = |w| + 2, if `w` is central.
fn central_period_pair(w: &BinaryWord) -> Option<(usize, usize)> {
    if w.is_empty() {
        return Some((1, 1));
    }
    let ell = w.minimal_period().ok()?;
    let m = w.len() + 2 - ell;
    (w.has_period(m) && ell.gcd(&m) == 1).then_some((ell, m))
}

pub(crate) fn is_central_word(w: &BinaryWord) -> bool {
    central_period_pair(w).is_some()
}

/// Splits w = w₁·01·w₂ at `cut` = |w₁| and checks w = w₂·10·w₁.
fn try_split(w: &BinaryWord, cut: usize) -> Option<(BinaryWord, BinaryWord)> {
    let bits = w.bits();
    if cut + 2 > bits.len() || bits[cut] != 0 || bits[cut + 1] != 1 {
        return None;
    }
    let w1 = w.prefix(cut);
    let w2 = w.suffix_from(cut + 2);
    let rhs = BinaryWord::concat_all([&w2, &crate::word::w("10"), &w1]);
    (&rhs == w).then_some((w1, w2))
}

/// Returns a full certificate iff `w` is central.
pub fn is_central(w: &BinaryWord) -> Option<CentralCertificate> {
    let (ell, m) = central_period_pair(w)?;
    let factorization = if w.has_both_letters() {
        Some(try_split(w, ell - 2).or_else(|| try_split(w, m - 2))?)
    } else {
        None
    };
    let (ell1, ell2) = match &factorization {
        Some((w1, w2)) => (w1.len() + 2, w2.len() + 2),
        None => (ell, m),
    };
    let cert = CentralCertificate {
        word: w.clone(),
        p: w.count_ones() as u64 + 1,
        q: w.len() as u64 + 2,
        ell1,
        ell2,
        factorization,
        directive: directive_from_prefixes(w),
    };
    cert.check().expect("central certificate");
    Some(cert)
}

/// Reads the directive off the central prefixes 0 = p₀ < p₁ < … < pₙ = |w|:
/// the i-th directive letter is w[p_{i-1}].
fn directive_from_prefixes(w: &BinaryWord) -> BinaryWord {
    let mut v = BinaryWord::empty();
    let mut last = 0;
    for len in 1..=w.len() {
        let prefix = w.prefix(len);
        if prefix.is_palindrome() && is_central_word(&prefix) {
            v.push(w.bits()[last]);
            last = len;
        }
    }
    v
}

/// The unique v with Pal(v) = w.
pub fn directive_of_central(w: &BinaryWord) -> Result<BinaryWord> {
    if !is_central_word(w) {
        return Err(Error::NotCentral(w.to_string()));
    }
    let v = directive_from_prefixes(w);
    if &pal(&v) != w {
        return Err(Error::invariant(format!("Pal({v}) != {w}")));
    }
    Ok(v)
}

/// w_{p,q}, computed three independent ways that must agree: from the
/// mechanical sequence s_{p/q,0}, as Pal of the continued-fraction
/// directive, and by gluing positions along the periods (ℓ, m) with
/// ℓ + m = q and mp ≡ 1 (mod q).
pub fn central_from_slope(p: u64, q: u64) -> Result<CentralCertificate> {
    if !(0 < p && p < q) || p.gcd(&q) != 1 {
        return Err(Error::domain(format!("{p}/{q} is not a reduced fraction in (0, 1)")));
    }
    let alpha = Rational::new(p.into(), q.into());
    let zero = Rational::from_integer(0.into());
    let mech: Vec<Bit> = (0..q)
        .map(|n| mechanical::mech_lower(&alpha, &zero, n))
        .collect::<Result<_>>()?;
    let from_mech = BinaryWord::from_bits_unchecked(mech[1..mech.len() - 1].to_vec());

    let directive = directive_from_cf(&cf_of_rational(p, q)?);
    let from_pal = pal(&directive);

    let from_periods = word_from_periods(p, q)?;

    if from_mech != from_pal || from_mech != from_periods {
        return Err(Error::invariant(format!(
            "w_({p},{q}) disagrees: mechanical {from_mech}, Pal {from_pal}, periods {from_periods}"
        )));
    }
    let cert =
        is_central(&from_mech).ok_or_else(|| Error::invariant(format!("w_({p},{q}) = {from_mech} is not central")))?;
    if cert.directive != directive {
        return Err(Error::invariant(format!("directive mismatch for {p}/{q}")));
    }
    Ok(cert)
}

/// The word of length q − 2 with periods ℓ and m (ℓ + m = q, mp ≡ 1 mod q)
/// and p − 1 ones, by merging positions i ~ i+ℓ and i ~ i+m.
fn word_from_periods(p: u64, q: u64) -> Result<BinaryWord> {
    let len = (q - 2) as usize;
    if len == 0 {
        return Ok(BinaryWord::empty());
    }
    let m = (1..q).find(|&m| (m * p) % q == 1).expect("p invertible mod q") as usize;
    let ell = q as usize - m;
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for step in [ell, m] {
        for i in 0..len.saturating_sub(step) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, i + step));
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..len).map(|i| find(&mut parent, i)).collect();
    let ones = (p - 1) as usize;
    let mut classes: Vec<(usize, usize)> = Vec::new();
    for &r in &roots {
        match classes.iter_mut().find(|(root, _)| *root == r) {
            Some(entry) => entry.1 += 1,
            None => classes.push((r, 1)),
        }
    }
    let one_class = match classes.as_slice() {
        [(r, n)] => (*n == ones).then_some(*r),
        [(r1, n1), (r2, n2)] if n1 + n2 == len => {
            if *n1 == ones {
                Some(*r1)
            } else if *n2 == ones {
                Some(*r2)
            } else {
                return Err(Error::invariant(format!("no period class of size {ones} for {p}/{q}")));
            }
        }
        _ => {
            return Err(Error::invariant(format!(
                "periods of {p}/{q} leave {} classes",
                classes.len()
            )))
        }
    };
    let bits = roots.iter().map(|&r| Bit::from(Some(r) == one_class)).collect();
    Ok(BinaryWord::from_bits_unchecked(bits))
}

/// (w₁, w₂) with w = w₁01w₂ = w₂10w₁.
pub fn standard_factorization(cert: &CentralCertificate) -> Result<(BinaryWord, BinaryWord)> {
    match &cert.factorization {
        Some((w1, w2)) => Ok((w1.clone(), w2.clone())),
        None => Err(Error::domain(format!(
            "{} lies in 0* ∪ 1* and has no standard factorization",
            cert.word
        ))),
    }
}

/// (least, greatest) among the circular shifts of `w`.
pub fn extremal_rotations(w: &BinaryWord) -> Result<(BinaryWord, BinaryWord)> {
    if w.is_empty() {
        return Err(Error::domain("rotations of the empty word"));
    }
    let rotations = w.rotations();
    let least = rotations.iter().min().unwrap().clone();
    let greatest = rotations.iter().max().unwrap().clone();
    Ok((least, greatest))
}

/// Pal(w0) = w₂10w₁01w₂ and Pal(w1) = w₁01w₂10w₁, checked against
/// Pal(directive·x).
pub fn pal_extension(cert: &CentralCertificate, x: Bit) -> Result<BinaryWord> {
    let (w1, w2) = standard_factorization(cert)?;
    let (d01, d10) = (crate::word::w("01"), crate::word::w("10"));
    let out = if x & 1 == 0 {
        BinaryWord::concat_all([&w2, &d10, &w1, &d01, &w2])
    } else {
        BinaryWord::concat_all([&w1, &d01, &w2, &d10, &w1])
    };
    let mut directive = cert.directive.clone();
    directive.push(x);
    let expected = pal(&directive);
    if out != expected {
        return Err(Error::invariant(format!(
            "Pal extension {out} != Pal({directive}) = {expected}"
        )));
    }
    Ok(out)
}
