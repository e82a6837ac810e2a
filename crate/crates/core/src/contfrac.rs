//! Continuants, finite continued fractions with a prescribed length parity,
//! and exact expansions of quadratic surds `(P + √Δ)/Q`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{domain, parse, Error, Result};
use crate::forms::is_indefinite_discriminant;
use crate::strings::BinString;

/// A finite sequence of positive integers `(q₁, …, q_l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NatString(Vec<BigUint>);

impl NatString {
    pub fn new(entries: Vec<BigUint>) -> Result<Self> {
        if entries.iter().any(Zero::is_zero) {
            return Err(domain("natural strings have positive entries"));
        }
        Ok(NatString(entries))
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self> {
        Self::new(entries.iter().map(|&q| BigUint::from(q)).collect())
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<BigUint>) -> Self {
        debug_assert!(entries.iter().all(|q| !q.is_zero()));
        NatString(entries)
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigUint> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> NatString {
        NatString(self.0.iter().rev().cloned().collect())
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl std::ops::Deref for NatString {
    type Target = [BigUint];

    fn deref(&self) -> &[BigUint] {
        &self.0
    }
}

impl fmt::Display for NatString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

/// Parses comma-joined positive decimals such as `3,1,1`. The empty string
/// parses to the empty natural string.
impl FromStr for NatString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(NatString(Vec::new()));
        }
        let entries = s
            .split(',')
            .map(|tok| {
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(parse(format!("malformed natural string entry {tok:?}")));
                }
                let q: BigUint = tok
                    .parse()
                    .map_err(|_| parse(format!("malformed natural string entry {tok:?}")))?;
                if q.is_zero() {
                    return Err(parse("natural string entries must be positive"));
                }
                Ok(q)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NatString(entries))
    }
}

/// Entries that fit in 64 bits serialize as JSON numbers, larger ones as
/// decimal strings.
impl Serialize for NatString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for q in &self.0 {
            match q.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&q.to_string())?,
            }
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(parse(format!("parity must be `odd` or `even`, got {s:?}"))),
        }
    }
}

/// Regular continued fraction of `num/den > 1` whose number of partial
/// quotients has the requested parity.
///
/// `num = den` is accepted for odd parity only, giving `(1)`: Dirichlet's
/// map meets `1/1` on the form `(1,1,−1)`, and `(1)` has no even partner.
pub fn cf_expand(num: &BigUint, den: &BigUint, parity: Parity) -> Result<NatString> {
    if num == den && !den.is_zero() && parity == Parity::Odd {
        return Ok(NatString(vec![BigUint::one()]));
    }
    if den.is_zero() || num <= den {
        return Err(domain(format!(
            "continued fraction expansion needs num > den >= 1, got {num}/{den} with {parity} parity"
        )));
    }
    let mut quotients = Vec::new();
    let (mut x, mut y) = (num.clone(), den.clone());
    while !y.is_zero() {
        let (q, r) = x.div_rem(&y);
        quotients.push(q);
        x = y;
        y = r;
    }
    if Parity::of(quotients.len()) != parity {
        // Euclid ends on a quotient >= 2 because num/den != 1.
        let last = quotients.last_mut().unwrap();
        *last -= 1u32;
        quotients.push(BigUint::one());
    }
    Ok(NatString(quotients))
}

/// The continuant `[q₁, …, q_l]`: numerator of the simplified continued
/// fraction. Zero is allowed as the first or last entry, with
/// `[0, q₂, …] = [q₃, …]`, `[…, q_{l−1}, 0] = […, q_{l−2}]` and `[0] = 0`;
/// the empty continuant is 1.
pub fn continuant(s: &[BigUint]) -> Result<BigUint> {
    if s.len() > 2 && s[1..s.len() - 1].iter().any(Zero::is_zero) {
        return Err(domain("continuant has an interior zero entry"));
    }
    Ok(continuant_raw(s))
}

pub(crate) fn continuant_raw(s: &[BigUint]) -> BigUint {
    // [q_k..q_l] = q_k [q_{k+1}..q_l] + [q_{k+2}..q_l], seeded with [] = 1
    // and the length -1 value 0.
    let mut next = BigUint::zero();
    let mut cur = BigUint::one();
    for q in s.iter().rev() {
        let val = q * &cur + &next;
        next = cur;
        cur = val;
    }
    cur
}

/// `[[q₁,1],[1,0]] ⋯ [[q_l,1],[1,0]]`.
pub fn continuant_matrix(s: &[BigUint]) -> [[BigUint; 2]; 2] {
    let mut m = [
        [BigUint::one(), BigUint::zero()],
        [BigUint::zero(), BigUint::one()],
    ];
    for q in s {
        let [[a, b], [c, d]] = m;
        m = [[&a * q + &b, a], [&c * q + &d, c]];
    }
    m
}

/// `⌊(p + √Δ)/q⌋` given `root = ⌊√Δ⌋` for nonsquare `Δ`.
pub(crate) fn floor_with_root(p: &BigInt, q: &BigInt, root: &BigInt) -> BigInt {
    let num = p + root;
    if q.is_positive() {
        num.div_floor(q)
    } else {
        -num.div_floor(&-q) - 1
    }
}

/// The quadratic irrational `(p + √Δ)/q`, kept normalized so that
/// `q | Δ − p²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    delta: BigInt,
    root: BigInt,
}

impl QuadraticSurd {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        delta: impl Into<BigInt>,
    ) -> Result<Self> {
        let (mut p, mut q, mut delta) = (p.into(), q.into(), delta.into());
        if !is_indefinite_discriminant(&delta) {
            return Err(Error::NotIndefinite(delta.to_string()));
        }
        if q.is_zero() {
            return Err(domain("surd denominator must be nonzero"));
        }
        if !(&delta - &p * &p).is_multiple_of(&q) {
            let scale = q.abs();
            p *= &scale;
            delta *= &scale * &scale;
            q *= scale;
        }
        let root = delta.sqrt();
        Ok(QuadraticSurd { p, q, delta, root })
    }

    fn from_state(p: BigInt, q: BigInt, delta: &BigInt, root: &BigInt) -> Self {
        QuadraticSurd {
            p,
            q,
            delta: delta.clone(),
            root: root.clone(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    /// `(p − √Δ)/q`, written as `(−p + √Δ)/(−q)`.
    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd {
            p: -&self.p,
            q: -&self.q,
            delta: self.delta.clone(),
            root: self.root.clone(),
        }
    }

    pub fn floor(&self) -> BigInt {
        floor_with_root(&self.p, &self.q, &self.root)
    }

    /// The value is never an integer, so this is always `floor + 1`.
    pub fn ceil(&self) -> BigInt {
        self.floor() + 1
    }

    /// `1/(x − a)`.
    fn recip_after_subtracting(&self, a: &BigInt) -> QuadraticSurd {
        let p = &self.p - a * &self.q;
        let q = (&self.delta - &p * &p) / &self.q;
        Self::from_state(-p, q, &self.delta, &self.root)
    }

    /// `1/(a − x)`.
    fn recip_of_difference_from(&self, a: &BigInt) -> QuadraticSurd {
        let p = &self.p - a * &self.q;
        let q = -((&self.delta - &p * &p) / &self.q);
        Self::from_state(-p, q, &self.delta, &self.root)
    }

    /// One expansion step: the partial quotient and the complete quotient
    /// that follows it.
    pub fn step(&self, kind: CfKind) -> (BigInt, QuadraticSurd) {
        match kind {
            CfKind::Regular => {
                let a = self.floor();
                let next = self.recip_after_subtracting(&a);
                (a, next)
            }
            CfKind::Negative => {
                let a = self.ceil();
                let next = self.recip_of_difference_from(&a);
                (a, next)
            }
            CfKind::Denjoy => {
                let a = if self.floor().is_positive() {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                let next = self.recip_after_subtracting(&a);
                (a, next)
            }
        }
    }

    /// The first `n` partial quotients of the given kind, without any
    /// precondition on the value.
    pub fn terms(&self, kind: CfKind, n: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(n);
        let mut x = self.clone();
        for _ in 0..n {
            let (a, next) = x.step(kind);
            out.push(a);
            x = next;
        }
        out
    }

    /// Splits the expansion into pre-period and period by detecting the
    /// first recurring complete quotient.
    pub fn periodic_expansion(&self, kind: CfKind) -> PeriodicExpansion {
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut terms = Vec::new();
        let mut x = self.clone();
        loop {
            if let Some(&start) = seen.get(&(x.p.clone(), x.q.clone())) {
                let period = terms.split_off(start);
                return PeriodicExpansion {
                    pre_period: terms,
                    period,
                };
            }
            seen.insert((x.p.clone(), x.q.clone()), terms.len());
            let (a, next) = x.step(kind);
            terms.push(a);
            x = next;
        }
    }

    pub fn is_greater_than_one(&self) -> bool {
        self.floor() >= BigInt::one()
    }

    pub fn is_positive(&self) -> bool {
        !self.floor().is_negative()
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+√{})/{}", self.p, self.delta, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfKind {
    Regular,
    Negative,
    Denjoy,
}

impl FromStr for CfKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reg" => Ok(CfKind::Regular),
            "neg" => Ok(CfKind::Negative),
            "denjoy" => Ok(CfKind::Denjoy),
            _ => Err(parse(format!("kind must be reg, neg or denjoy, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicExpansion {
    pub pre_period: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl PeriodicExpansion {
    pub fn is_purely_periodic(&self) -> bool {
        self.pre_period.is_empty()
    }
}

fn to_biguint(a: BigInt) -> BigUint {
    a.to_biguint().expect("quotient is nonnegative")
}

/// First `n` regular partial quotients of `x > 0`. The leading quotient is
/// zero when `x < 1`; all later ones are positive.
pub fn reg_cf_surd(x: &QuadraticSurd, n: usize) -> Result<Vec<BigUint>> {
    if !x.is_positive() {
        return Err(domain(format!(
            "regular expansion needs a positive surd, got {x}"
        )));
    }
    Ok(x.terms(CfKind::Regular, n)
        .into_iter()
        .map(to_biguint)
        .collect())
}

/// First `n` quotients of `x = q₁ − 1/(q₂ − 1/⋯)` for `x > 1`; each is ≥ 2.
pub fn neg_cf_surd(x: &QuadraticSurd, n: usize) -> Result<NatString> {
    if !x.is_greater_than_one() {
        return Err(domain(format!(
            "negative expansion needs a surd > 1, got {x}"
        )));
    }
    Ok(NatString(
        x.terms(CfKind::Negative, n)
            .into_iter()
            .map(to_biguint)
            .collect(),
    ))
}

/// First `n` Denjoy quotients (`0` below one, `1` above) of `x > 0`.
pub fn denjoy_surd(x: &QuadraticSurd, n: usize) -> Result<BinString> {
    if !x.is_positive() {
        return Err(domain(format!(
            "Denjoy expansion needs a positive surd, got {x}"
        )));
    }
    Ok(x.terms(CfKind::Denjoy, n)
        .into_iter()
        .map(|a| a.is_one())
        .collect())
}

/// Replaces each quotient `q` by the block `1010…01` holding `q − 1` zeros.
pub fn reg_to_denjoy(s: &[BigUint]) -> Result<BinString> {
    let mut bits = Vec::new();
    for q in s {
        let q = q
            .to_usize()
            .filter(|&q| q >= 1)
            .ok_or_else(|| domain(format!("quotient {q} outside 1..=usize::MAX")))?;
        bits.push(true);
        for _ in 1..q {
            bits.push(false);
            bits.push(true);
        }
    }
    Ok(BinString::from_bits(bits))
}

/// The first `n` regular quotients of the purely periodic negative continued
/// fraction `[q₁, q₂, …]` with the given period: `q₁ − 1`, then alternately
/// one more than the length of each maximal run of 2s and two less than the
/// entry that ends the run.
pub fn neg_to_reg_stream(period: &[BigUint], n: usize) -> Result<NatString> {
    let two = BigUint::from(2u32);
    if period.is_empty() {
        return Err(domain("empty period"));
    }
    if period.iter().any(|q| q < &two) {
        return Err(domain("negative continued fraction entries must be >= 2"));
    }
    if period.iter().all(|q| q == &two) {
        return Err(domain("an all-2 period does not represent an irrational"));
    }
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(NatString(out));
    }
    out.push(&period[0] - 1u32);
    let mut idx = 1usize;
    while out.len() < n {
        let mut run = 0u64;
        while period[idx % period.len()] == two {
            run += 1;
            idx += 1;
        }
        out.push(BigUint::from(run + 1));
        if out.len() < n {
            out.push(&period[idx % period.len()] - 2u32);
        }
        idx += 1;
    }
    if out.iter().skip(1).any(Zero::is_zero) {
        return Err(Error::Internal("zero quotient in converted stream".into()));
    }
    Ok(NatString(out))
}

/// Sign helper for callers that hold signed quotients known to be positive.
pub fn nat_string_from_signed(terms: Vec<BigInt>) -> Result<NatString> {
    let entries = terms
        .into_iter()
        .map(|a| match a.sign() {
            Sign::Plus => Ok(a.to_biguint().unwrap()),
            _ => Err(domain(format!("quotient {a} is not positive"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NatString(entries))
}
