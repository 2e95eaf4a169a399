//! The map φ of the lexicographic world and the minimal right endpoint F(x).
//!
//! For a sequence `a`, φ(a) is the least `y` such that some sequence has all
//! of its shifts in `[a, y]`. φ(1u) = 1^∞; for φ(0u) the answer is u itself
//! on constants, `1u` on characteristic Sturmian u, and otherwise
//! `(1w0)^∞` for the unique central `w` with `(w01)^∞ ≤ u ≤ (w10)^∞`.
//! F(x) is φ read through binary expansions.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::central::{is_balanced, is_central, is_central_word, CentralCertificate, PalBuilder};
use crate::error::{Error, Result};
use crate::mechanical::DirectiveSpec;
use crate::seq::{distinct_shifts, expansion, DyadicMode, EventuallyPeriodicSeq};
use crate::word::{w as word, BinaryWord, Bit};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `(w01)^∞`
    Ends01,
    /// `(w10)^∞`
    Ends10,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Ends01 => "ends01",
            Variant::Ends10 => "ends10",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    AllZero,
    AllOne,
    CharacteristicPeriodicBalanced {
        p: u64,
        q: u64,
        variant: Variant,
    },
    /// Only produced for inputs given by a directive sequence; an eventually
    /// periodic sequence is never characteristic Sturmian.
    CharacteristicSturmianDeclared,
    Generic,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::AllZero => "all_zero",
            Classification::AllOne => "all_one",
            Classification::CharacteristicPeriodicBalanced { .. } => "characteristic_periodic_balanced",
            Classification::CharacteristicSturmianDeclared => "characteristic_sturmian",
            Classification::Generic => "generic",
        }
    }
}

/// Splits a characteristic periodic balanced sequence `(w·xy)^∞` into its
/// central core `w` and the variant.
fn characteristic_core(u: &EventuallyPeriodicSeq) -> Option<(CentralCertificate, Variant)> {
    let c = u.period();
    if !u.is_purely_periodic() || c.len() < 2 {
        return None;
    }
    let n = c.len();
    let variant = match (c.bits()[n - 2], c.bits()[n - 1]) {
        (0, 1) => Variant::Ends01,
        (1, 0) => Variant::Ends10,
        _ => return None,
    };
    is_central(&c.prefix(n - 2)).map(|cert| (cert, variant))
}

pub fn classify(u: &EventuallyPeriodicSeq) -> Classification {
    match u.constant_letter() {
        Some(0) => return Classification::AllZero,
        Some(_) => return Classification::AllOne,
        None => {}
    }
    match characteristic_core(u) {
        Some((cert, variant)) => Classification::CharacteristicPeriodicBalanced {
            p: cert.p(),
            q: cert.q(),
            variant,
        },
        None => Classification::Generic,
    }
}

/// Which rule determined φ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiCase {
    /// φ(1u) = 1^∞.
    CaseI,
    /// u ∈ {0^∞, 1^∞}: φ(0u) = u.
    CaseII,
    /// u characteristic Sturmian: φ(0u) = 1u.
    CaseIIISturmian,
    /// u characteristic periodic balanced of slope p/q: φ(0u) = (1w_{p,q}0)^∞.
    CaseIV,
    /// Longest central prefix v with both letters; φ(0u) = (1v0)^∞.
    CaseVA,
    /// φ(0u) = (1v₂0)^∞.
    CaseVB,
    /// φ(0u) = (1v₁0)^∞.
    CaseVC,
    /// Longest central prefix 0^k: φ(0u) = (10^k)^∞.
    CaseVAllZeroPrefix,
    /// Longest central prefix 1^k: φ(0u) = (1^k0)^∞.
    CaseVAllOnePrefix,
}

impl PhiCase {
    pub fn label(&self) -> &'static str {
        match self {
            PhiCase::CaseI => "i",
            PhiCase::CaseII => "ii",
            PhiCase::CaseIIISturmian => "iii",
            PhiCase::CaseIV => "iv",
            PhiCase::CaseVA => "v_a",
            PhiCase::CaseVB => "v_b",
            PhiCase::CaseVC => "v_c",
            PhiCase::CaseVAllZeroPrefix => "v_allzero_prefix",
            PhiCase::CaseVAllOnePrefix => "v_allone_prefix",
        }
    }

    pub fn is_case_v(&self) -> bool {
        matches!(
            self,
            PhiCase::CaseVA
                | PhiCase::CaseVB
                | PhiCase::CaseVC
                | PhiCase::CaseVAllZeroPrefix
                | PhiCase::CaseVAllOnePrefix
        )
    }
}

impl fmt::Display for PhiCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One step of the computation: the rule applied and what it looked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub rule: &'static str,
    pub detail: String,
}

impl TraceRecord {
    fn new(rule: &'static str, detail: impl Into<String>) -> Self {
        TraceRecord {
            rule,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiResult {
    pub phi: EventuallyPeriodicSeq,
    /// The central word w with φ = (1w0)^∞, when φ has that form.
    pub central: Option<CentralCertificate>,
    pub case: PhiCase,
    pub longest_central_prefix: Option<BinaryWord>,
    pub trace: Vec<TraceRecord>,
}

fn one_w_zero(w: &BinaryWord) -> EventuallyPeriodicSeq {
    EventuallyPeriodicSeq::periodic(BinaryWord::concat_all([&word("1"), w, &word("0")])).expect("nonempty period")
}

fn with_suffix(w: &BinaryWord, suffix: &str) -> EventuallyPeriodicSeq {
    EventuallyPeriodicSeq::periodic(w.concat(&word(suffix))).expect("nonempty period")
}

/// (w01)^∞ ≤ u ≤ (w10)^∞.
pub fn sandwiched(w: &BinaryWord, u: &EventuallyPeriodicSeq) -> bool {
    with_suffix(w, "01") <= *u && *u <= with_suffix(w, "10")
}

/// Longest central prefix of u among prefixes of length ≤ `bound`.
fn longest_central_prefix(u: &EventuallyPeriodicSeq, bound: usize) -> BinaryWord {
    let prefix = u.prefix(bound);
    (0..=bound)
        .rev()
        .map(|n| prefix.prefix(n))
        .find(|p| p.is_palindrome() && is_central_word(p))
        .unwrap_or_default()
}

/// Outcome of the longest-central-prefix rule for one candidate v.
enum PrefixRule {
    Resolved {
        w: BinaryWord,
        case: PhiCase,
        detail: String,
    },
    /// u continues v with a longer central prefix: v was not the longest.
    NotMaximal,
}

fn apply_prefix_rule(letter: impl Fn(usize) -> Bit, v: &BinaryWord) -> Result<PrefixRule> {
    if v.is_empty() {
        return Ok(PrefixRule::NotMaximal);
    }
    if v.is_constant() {
        let x = v.bits()[0];
        let k = v.len();
        let w = BinaryWord::repeat_letter(x, k - 1);
        let case = if x == 1 {
            PhiCase::CaseVAllOnePrefix
        } else {
            PhiCase::CaseVAllZeroPrefix
        };
        return Ok(PrefixRule::Resolved {
            w,
            case,
            detail: format!("v = {x}^{k}"),
        });
    }
    let cert = is_central(v).ok_or_else(|| Error::invariant(format!("{v} is not central")))?;
    let (v1, v2) = cert.factorization().expect("v has both letters");
    let n = v.len();
    let xy = (letter(n), letter(n + 1));
    let z = BinaryWord::from_bits_unchecked((n + 2..2 * n + 4).map(&letter).collect());
    let v01 = v.concat(&word("01"));
    let v10 = v.concat(&word("10"));
    let (w, case, detail) = match xy {
        (0, 0) => (v2.clone(), PhiCase::CaseVB, "xy = 00".to_string()),
        (1, 1) => (v1.clone(), PhiCase::CaseVC, "xy = 11".to_string()),
        (0, 1) => match z.cmp(&v01) {
            Ordering::Greater => (v.clone(), PhiCase::CaseVA, format!("xy = 01, z = {z} > v01")),
            Ordering::Less => (v2.clone(), PhiCase::CaseVB, format!("xy = 01, z = {z} < v01")),
            Ordering::Equal => return Ok(PrefixRule::NotMaximal),
        },
        _ => match z.cmp(&v10) {
            Ordering::Less => (v.clone(), PhiCase::CaseVA, format!("xy = 10, z = {z} < v10")),
            Ordering::Greater => (v1.clone(), PhiCase::CaseVC, format!("xy = 10, z = {z} > v10")),
            Ordering::Equal => return Ok(PrefixRule::NotMaximal),
        },
    };
    Ok(PrefixRule::Resolved { w, case, detail })
}

fn certificate(w: &BinaryWord) -> Result<CentralCertificate> {
    is_central(w).ok_or_else(|| Error::invariant(format!("{w} is not central")))
}

/// φ(0u) for an eventually periodic u.
pub fn phi_zero_u(u: &EventuallyPeriodicSeq) -> Result<PhiResult> {
    let mut trace = vec![];
    let class = classify(u);
    trace.push(TraceRecord::new("classify", format!("{u}: {}", class.label())));
    let result = match class {
        Classification::AllZero | Classification::AllOne => PhiResult {
            phi: u.clone(),
            central: None,
            case: PhiCase::CaseII,
            longest_central_prefix: None,
            trace,
        },
        Classification::CharacteristicPeriodicBalanced { .. } => {
            let (cert, variant) = characteristic_core(u).expect("classified as characteristic");
            trace.push(TraceRecord::new(
                "characteristic",
                format!("u = ({}{})^∞, slope {}/{}", cert.word(), variant, cert.p(), cert.q()),
            ));
            PhiResult {
                phi: one_w_zero(cert.word()),
                central: Some(cert),
                case: PhiCase::CaseIV,
                longest_central_prefix: None,
                trace,
            }
        }
        Classification::CharacteristicSturmianDeclared => unreachable!("not produced for periodic input"),
        Classification::Generic => generic_phi(u, trace)?,
    };
    let report = verify_phi(u, &result.phi);
    if !report.passed {
        return Err(Error::invariant(format!(
            "φ(0{u}) = {} fails verification: {report}",
            result.phi
        )));
    }
    let mut result = result;
    result.trace.push(TraceRecord::new("verify", report.to_string()));
    Ok(result)
}

fn generic_phi(u: &EventuallyPeriodicSeq, mut trace: Vec<TraceRecord>) -> Result<PhiResult> {
    let mut bound = 2 * (u.preperiod().len() + u.period().len()) + 8;
    // Termination is guaranteed for non-characteristic u; this cap only
    // turns a bug into an error instead of a hang.
    let cap = 1 << 20;
    while bound <= cap {
        let v = longest_central_prefix(u, bound);
        trace.push(TraceRecord::new(
            "longest_central_prefix",
            format!("v = {v} (scanned ≤ {bound})"),
        ));
        match apply_prefix_rule(|n| u.digit(n), &v)? {
            PrefixRule::Resolved { w, case, detail } => {
                trace.push(TraceRecord::new(case.label(), format!("{detail} → w = {w}")));
                if sandwiched(&w, u) {
                    trace.push(TraceRecord::new("sandwich", format!("({w}01)^∞ ≤ u ≤ ({w}10)^∞")));
                    return Ok(PhiResult {
                        phi: one_w_zero(&w),
                        central: Some(certificate(&w)?),
                        case,
                        longest_central_prefix: Some(v),
                        trace,
                    });
                }
                trace.push(TraceRecord::new("sandwich_failed", format!("w = {w}; widening scan")));
            }
            PrefixRule::NotMaximal => {
                if 2 * v.len() + 4 <= bound && !v.is_empty() {
                    return Err(Error::invariant(format!(
                        "z = vxy for v = {v} although the scan covered the longer central prefix"
                    )));
                }
                trace.push(TraceRecord::new("not_maximal", format!("v = {v}; widening scan")));
            }
        }
        bound *= 2;
    }
    Err(Error::invariant(format!("no central word sandwiches {u}")))
}

/// φ(a) for any eventually periodic a.
pub fn phi(a: &EventuallyPeriodicSeq) -> Result<PhiResult> {
    if a.digit(0) == 1 {
        return Ok(PhiResult {
            phi: EventuallyPeriodicSeq::ones(),
            central: None,
            case: PhiCase::CaseI,
            longest_central_prefix: None,
            trace: vec![TraceRecord::new("i", format!("{a} begins with 1"))],
        });
    }
    phi_zero_u(&a.shift(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum PrefixDecision {
    Decided(PhiResult),
    Insufficient(String),
}

/// First index below `n` where `prefix` and `s` differ, with the prefix letter.
fn first_mismatch(prefix: &BinaryWord, s: &EventuallyPeriodicSeq) -> Option<(usize, Bit)> {
    prefix
        .bits()
        .iter()
        .enumerate()
        .find(|&(i, &b)| b != s.digit(i))
        .map(|(i, &b)| (i, b))
}

/// Whether every infinite extension of `prefix` lies strictly between
/// `(w01)^∞` and `(w10)^∞`; `Err` names the first comparison that fails
/// or is undecided.
fn strict_sandwich_within(prefix: &BinaryWord, w: &BinaryWord) -> std::result::Result<(), String> {
    let lower = with_suffix(w, "01");
    let upper = with_suffix(w, "10");
    match first_mismatch(prefix, &lower) {
        None => return Err(format!("P is a prefix of lower bound {lower}: comparison undecided")),
        Some((i, 0)) => return Err(format!("P < {lower} at index {i}")),
        Some(_) => {}
    }
    match first_mismatch(prefix, &upper) {
        None => Err(format!("P is a prefix of upper bound {upper}: comparison undecided")),
        Some((i, 1)) => Err(format!("P > {upper} at index {i}")),
        Some(_) => Ok(()),
    }
}

/// φ(0u) for every u beginning with `prefix`, when the prefix alone forces
/// it: some central w has `(w01)^∞ < u < (w10)^∞` decided inside the prefix.
pub fn phi_prefix(prefix: &BinaryWord) -> Result<PrefixDecision> {
    if prefix.is_empty() {
        return Err(Error::domain("phi_prefix needs a nonempty prefix"));
    }
    // w is always ε or a central prefix of u.
    let candidates: Vec<BinaryWord> = (0..=prefix.len())
        .map(|n| prefix.prefix(n))
        .filter(is_central_word)
        .collect();
    let v = candidates.last().cloned().unwrap_or_default();
    let mut first_failure = None;
    let mut decided = None;
    for w in candidates.iter().rev() {
        match strict_sandwich_within(prefix, w) {
            Ok(()) => {
                decided = Some(w.clone());
                break;
            }
            Err(reason) if reason.contains("undecided") && first_failure.is_none() => {
                first_failure = Some(format!("w = {w}: {reason}"));
            }
            Err(_) => {}
        }
    }
    let Some(w) = decided else {
        let reason = first_failure.unwrap_or_else(|| "no central prefix of P has both comparisons decided".to_string());
        return Ok(PrefixDecision::Insufficient(reason));
    };
    let case = match apply_prefix_rule(|n| prefix.get(n).unwrap_or(0), &v)? {
        PrefixRule::Resolved { w: rule_w, case, .. } if rule_w == w => case,
        _ => case_from_shape(&v, &w),
    };
    let trace = vec![
        TraceRecord::new("longest_central_prefix", format!("v = {v} within P = {prefix}")),
        TraceRecord::new(
            "strict_sandwich",
            format!("({w}01)^∞ < P… < ({w}10)^∞ decided inside |P| = {}", prefix.len()),
        ),
    ];
    Ok(PrefixDecision::Decided(PhiResult {
        phi: one_w_zero(&w),
        central: Some(certificate(&w)?),
        case,
        longest_central_prefix: Some(v),
        trace,
    }))
}

/// Case tag from how the witness w sits inside the prefix's longest
/// central prefix v.
fn case_from_shape(v: &BinaryWord, w: &BinaryWord) -> PhiCase {
    if v.is_constant() && !v.is_empty() {
        return if v.bits()[0] == 1 {
            PhiCase::CaseVAllOnePrefix
        } else {
            PhiCase::CaseVAllZeroPrefix
        };
    }
    if w == v {
        return PhiCase::CaseVA;
    }
    match is_central(v).and_then(|c| c.factorization().map(|(a, b)| (a.clone(), b.clone()))) {
        Some((v1, _)) if &v1 == w => PhiCase::CaseVC,
        _ => PhiCase::CaseVB,
    }
}

/// φ(0u) = 1u for the characteristic Sturmian u = Pal(Δ), kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianPhi {
    pub directive: DirectiveSpec,
    /// Slope of u as [0; head…, (period…)].
    pub slope_cf: (Vec<u64>, Vec<u64>),
}

impl SturmianPhi {
    pub fn case(&self) -> PhiCase {
        PhiCase::CaseIIISturmian
    }

    /// Length-n prefix of u = Pal(Δ).
    pub fn u_prefix(&self, n: usize) -> BinaryWord {
        let mut builder = PalBuilder::new();
        let mut letters = self.directive.letters().digits();
        while builder.len() < n {
            builder.push(letters.next().expect("infinite directive"));
        }
        builder.word().prefix(n)
    }

    /// Length-n prefix of φ(0u) = 1u.
    pub fn prefix(&self, n: usize) -> BinaryWord {
        if n == 0 {
            return BinaryWord::empty();
        }
        word("1").concat(&self.u_prefix(n - 1))
    }

    pub fn symbolic(&self) -> String {
        format!("1*Pal({})", self.directive.letters())
    }
}

pub fn phi_sturmian(delta: &EventuallyPeriodicSeq) -> Result<SturmianPhi> {
    let directive = DirectiveSpec::new(delta.clone())?;
    let slope_cf = directive.slope_cf();
    Ok(SturmianPhi { directive, slope_cf })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FCase {
    Phi(PhiCase),
    BoundaryXGtHalf,
    BoundaryXZero,
}

impl FCase {
    pub fn label(&self) -> &'static str {
        match self {
            FCase::Phi(c) => c.label(),
            FCase::BoundaryXGtHalf => "boundary_x_gt_half",
            FCase::BoundaryXZero => "boundary_x_zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FResult {
    pub x: Rational,
    pub f: Rational,
    pub phi_expansion: EventuallyPeriodicSeq,
    pub case: FCase,
    pub central: Option<CentralCertificate>,
    pub verified: bool,
    /// F(x) against x + 1/2; `None` on the boundary cases.
    pub comparison_to_x_plus_half: Option<Ordering>,
}

/// F(x): the least y such that some ξ keeps every {ξ2ⁿ} in [x, y].
#[allow(non_snake_case)]
pub fn F(x: &Rational) -> Result<FResult> {
    minimal_right_endpoint(x)
}

pub fn minimal_right_endpoint(x: &Rational) -> Result<FResult> {
    let half = Rational::new(1.into(), 2.into());
    if *x < Rational::zero() || *x > Rational::one() {
        return Err(Error::domain(format!("x = {x} is outside [0, 1]")));
    }
    if *x > half {
        return Ok(FResult {
            x: x.clone(),
            f: Rational::one(),
            phi_expansion: EventuallyPeriodicSeq::ones(),
            case: FCase::BoundaryXGtHalf,
            central: None,
            verified: true,
            comparison_to_x_plus_half: None,
        });
    }
    if x.is_zero() {
        return Ok(FResult {
            x: x.clone(),
            f: Rational::zero(),
            phi_expansion: EventuallyPeriodicSeq::zeros(),
            case: FCase::BoundaryXZero,
            central: None,
            verified: true,
            comparison_to_x_plus_half: None,
        });
    }
    // t ≥ lesser expansion of x ⟺ r(t) ≥ x.
    let a = expansion(x, DyadicMode::Lesser)?;
    let res = phi(&a)?;
    let f = res.phi.value();
    let cmp = f.cmp(&(x + &half));
    let consistent = match res.case {
        PhiCase::CaseIV | PhiCase::CaseII => cmp != Ordering::Greater,
        c if c.is_case_v() => cmp == Ordering::Less,
        _ => true,
    };
    if !consistent {
        return Err(Error::invariant(format!(
            "F({x}) = {f} violates the x + 1/2 bound ({})",
            res.case
        )));
    }
    Ok(FResult {
        x: x.clone(),
        f,
        phi_expansion: res.phi,
        case: FCase::Phi(res.case),
        central: res.central,
        verified: true,
        comparison_to_x_plus_half: Some(cmp),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// T^k(b) < 0u
    BelowLower,
    /// T^k(b) > 1u
    AboveUpper,
    /// T^k(b) > b
    AboveSelf,
    /// b has unbalanced factors
    Unbalanced,
}

impl ViolationKind {
    pub fn label(&self) -> &'static str {
        match self {
            ViolationKind::BelowLower => "below_lower",
            ViolationKind::AboveUpper => "above_upper",
            ViolationKind::AboveSelf => "above_self",
            ViolationKind::Unbalanced => "unbalanced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub shift: usize,
    pub shifted: EventuallyPeriodicSeq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub comparisons: usize,
    pub violation: Option<Violation>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass ({} comparisons)", self.comparisons),
            Some(v) => write!(f, "fail: {} at shift {} ({})", v.kind.label(), v.shift, v.shifted),
        }
    }
}

/// Checks the inequalities characterizing b = φ(0u): for every shift,
/// 0u ≤ T^k(b) ≤ 1u and T^k(b) ≤ b; plus balance of b on a window
/// covering every residue of its period.
pub fn verify_phi(u: &EventuallyPeriodicSeq, b: &EventuallyPeriodicSeq) -> VerifyReport {
    let lower = u.prepend(&word("0"));
    let upper = u.prepend(&word("1"));
    let mut comparisons = 0;
    let fail = |kind, shift, shifted, comparisons| VerifyReport {
        passed: false,
        comparisons,
        violation: Some(Violation { kind, shift, shifted }),
    };
    for (k, t) in distinct_shifts(b).into_iter().enumerate() {
        comparisons += 3;
        if t < lower {
            return fail(ViolationKind::BelowLower, k, t, comparisons);
        }
        if t > upper {
            return fail(ViolationKind::AboveUpper, k, t, comparisons);
        }
        if t > *b {
            return fail(ViolationKind::AboveSelf, k, t, comparisons);
        }
    }
    let window = b.prefix(b.preperiod().len() + 2 * b.period().len());
    if !is_balanced(&window) {
        return fail(ViolationKind::Unbalanced, 0, b.clone(), comparisons);
    }
    VerifyReport {
        passed: true,
        comparisons,
        violation: None,
    }
}

/// s ∈ Σ_{x,y}: every shift of s lies in [x, y].
pub fn sigma_member(s: &EventuallyPeriodicSeq, x: &EventuallyPeriodicSeq, y: &EventuallyPeriodicSeq) -> bool {
    distinct_shifts(s).iter().all(|t| x <= t && t <= y)
}
