//! Natural and binary string combinatorics: stars-and-bars, the shift maps
//! `T_G` and `T_Z`, pinching and kneading, cyclic rotation of σ-strings,
//! necklaces and alternating necklaces.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::contfrac::NatString;
use crate::error::{domain, parse, Error, Result};

/// A finite string over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinString(Vec<bool>);

impl BinString {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinString(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of 1s.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.weight()
    }

    /// Left rotation by `k` places.
    pub fn rotated(&self, k: usize) -> BinString {
        BinString(rotate_left(&self.0, k))
    }
}

impl FromIterator<bool> for BinString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BinString(iter.into_iter().collect())
    }
}

impl fmt::Display for BinString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|b| match b {
                b'0' => Ok(false),
                b'1' => Ok(true),
                _ => Err(parse(format!(
                    "binary strings contain only 0 and 1, got {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinString)
    }
}

impl Serialize for BinString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn rotate_left<T: Clone>(s: &[T], k: usize) -> Vec<T> {
    if s.is_empty() {
        return Vec::new();
    }
    let k = k % s.len();
    s[k..].iter().chain(&s[..k]).cloned().collect()
}

/// Stars-and-bars: `n = Σqᵢ` stars in bunches of sizes `q₁, …, q_l`; each of
/// the `n − 1` gaps becomes `1` if it holds a bar and `0` otherwise.
pub fn sb(s: &NatString) -> Result<BinString> {
    if s.len() < 2 {
        return Err(domain(
            "stars-and-bars needs a natural string of length >= 2",
        ));
    }
    let mut bits = Vec::new();
    for (i, q) in s.iter().enumerate() {
        let q = q
            .to_usize()
            .ok_or_else(|| domain(format!("entry {q} too large for stars-and-bars")))?;
        if i > 0 {
            bits.push(true);
        }
        bits.extend(std::iter::repeat_n(false, q - 1));
    }
    Ok(BinString(bits))
}

pub fn sb_inv(b: &BinString) -> Result<NatString> {
    if b.weight() == 0 {
        return Err(domain("inverse stars-and-bars needs at least one 1"));
    }
    let mut out = Vec::new();
    let mut run = 1u64;
    for &bit in b.bits() {
        if bit {
            out.push(BigUint::from(run));
            run = 1;
        } else {
            run += 1;
        }
    }
    out.push(BigUint::from(run));
    Ok(NatString::from_vec_unchecked(out))
}

/// Prepends a 1.
pub fn eta_plus(s: &NatString) -> Result<NatString> {
    nonempty(s)?;
    let mut v = vec![BigUint::one()];
    v.extend_from_slice(s);
    Ok(NatString::from_vec_unchecked(v))
}

/// Appends a 1.
pub fn eta_minus(s: &NatString) -> Result<NatString> {
    nonempty(s)?;
    let mut v = s.entries().to_vec();
    v.push(BigUint::one());
    Ok(NatString::from_vec_unchecked(v))
}

fn nonempty(s: &NatString) -> Result<()> {
    if s.is_empty() {
        Err(domain("operation needs a nonempty natural string"))
    } else {
        Ok(())
    }
}

/// `(q₁, …, q_l) ↦ (q₂, …, q_l, q₁)`.
pub fn t_g(s: &NatString) -> Result<NatString> {
    nonempty(s)?;
    Ok(NatString::from_vec_unchecked(rotate_left(s, 1)))
}

/// The bead-sequence shift induced by Zagier's reduction operator.
pub fn t_z(s: &NatString) -> Result<NatString> {
    let q = s.entries();
    let l = q.len();
    if l < 2 {
        return Err(domain("T_Z needs a natural string of length >= 2"));
    }
    let v = if !q[0].is_one() {
        let mut v = q.to_vec();
        v[0] -= 1u32;
        v[l - 1] += 1u32;
        v
    } else if l == 2 {
        vec![q[1].clone(), q[0].clone()]
    } else {
        q[2..].iter().chain([&q[1], &q[0]]).cloned().collect()
    };
    Ok(NatString::from_vec_unchecked(v))
}

/// `(q₁, q₂, …) ↦ (1, q₁ − 1, q₂, …)` when `q₁ ≥ 2`, `(q₂ + 1, q₃, …)` when
/// `q₁ = 1`. The strings `()` and `(1)` are left alone.
pub fn pinch_left(s: &NatString) -> NatString {
    let q = s.entries();
    if q.is_empty() || (q.len() == 1 && q[0].is_one()) {
        return s.clone();
    }
    let v = if !q[0].is_one() {
        let mut v = Vec::with_capacity(q.len() + 1);
        v.push(BigUint::one());
        v.push(&q[0] - 1u32);
        v.extend_from_slice(&q[1..]);
        v
    } else {
        let mut v = Vec::with_capacity(q.len() - 1);
        v.push(&q[1] + 1u32);
        v.extend_from_slice(&q[2..]);
        v
    };
    NatString::from_vec_unchecked(v)
}

pub fn pinch_right(s: &NatString) -> NatString {
    pinch_left(&s.reversed()).reversed()
}

/// Pinches the left end, then the right end.
pub fn pinch_both(s: &NatString) -> NatString {
    pinch_right(&pinch_left(s))
}

/// Removes the leftmost entry, pinches both ends of the rest, then appends
/// the removed entry.
pub fn knead(s: &NatString) -> NatString {
    let Some((first, rest)) = s.entries().split_first() else {
        return s.clone();
    };
    let mut v = pinch_both(&NatString::from_vec_unchecked(rest.to_vec())).into_entries();
    v.push(first.clone());
    NatString::from_vec_unchecked(v)
}

/// The rotation of a σ-string that accompanies one Zagier reduction step.
pub fn rotate_bin(b: &BinString) -> Result<BinString> {
    let bits = b.bits();
    let ones: Vec<usize> = bits
        .iter()
        .enumerate()
        .filter_map(|(i, &x)| x.then_some(i))
        .collect();
    if ones.is_empty() {
        return Err(domain("rotation needs a binary string with at least one 1"));
    }
    let k = if !bits[0] || ones.len() == 1 {
        // A leading 0 moves to the back, as does a lone leading 1.
        1
    } else {
        ones[1] + 1
    };
    Ok(b.rotated(k))
}

/// Smallest `p` dividing `len` with `s` invariant under rotation by `p`.
pub fn minimal_period<T: Eq>(s: &[T]) -> usize {
    let n = s.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (0..n).all(|i| s[i] == s[(i + p) % n]))
        .unwrap_or(n)
}

/// No nontrivial rotation fixes `s`.
pub fn is_primitive_string<T: Eq>(s: &[T]) -> Result<bool> {
    if s.is_empty() {
        return Err(domain("primitivity is defined for nonempty strings"));
    }
    Ok(minimal_period(s) == s.len())
}

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// A cyclic equivalence class of strings, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace<T> {
    canonical: Vec<T>,
}

impl<T: Ord + Clone> Necklace<T> {
    pub fn of(s: &[T]) -> Self {
        Necklace {
            canonical: rotate_left(s, least_rotation(s)),
        }
    }

    pub fn canonical(&self) -> &[T] {
        &self.canonical
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    pub fn is_primitive(&self) -> bool {
        minimal_period(&self.canonical) == self.canonical.len()
    }
}

impl Necklace<bool> {
    pub fn weight(&self) -> usize {
        self.canonical.iter().filter(|&&b| b).count()
    }
}

pub fn necklace_of(b: &BinString) -> Necklace<bool> {
    Necklace::of(b.bits())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bead {
    Zero,
    Green,
    Blue,
}

impl Bead {
    fn is_one(self) -> bool {
        self != Bead::Zero
    }
}

/// A binary string of even positive weight whose 1s alternate between green
/// and blue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredBinString(Vec<Bead>);

impl ColoredBinString {
    /// Colors `b` with its first 1 green.
    pub fn alternate(b: &BinString) -> Result<Self> {
        let w = b.weight();
        if w == 0 || w % 2 == 1 {
            return Err(domain(format!(
                "alternating colorings need even positive weight, got weight {w}"
            )));
        }
        let mut green = true;
        let beads = b
            .bits()
            .iter()
            .map(|&bit| {
                if !bit {
                    Bead::Zero
                } else {
                    let c = if green { Bead::Green } else { Bead::Blue };
                    green = !green;
                    c
                }
            })
            .collect();
        Ok(ColoredBinString(beads))
    }

    pub fn beads(&self) -> &[Bead] {
        &self.0
    }

    pub fn underlying(&self) -> BinString {
        self.0.iter().map(|b| b.is_one()).collect()
    }

    pub fn rotated(&self, k: usize) -> Self {
        ColoredBinString(rotate_left(&self.0, k))
    }

    fn from_beads(beads: Vec<Bead>) -> Result<Self> {
        let ones: Vec<Bead> = beads.iter().copied().filter(|b| b.is_one()).collect();
        if ones.is_empty() || ones.len() % 2 == 1 {
            return Err(domain("alternating strings need even positive weight"));
        }
        if ones.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain("colors of consecutive 1s must alternate"));
        }
        Ok(ColoredBinString(beads))
    }
}

/// Renders every 1 with its color marker, e.g. `1g001b`.
impl fmt::Display for ColoredBinString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(match b {
                Bead::Zero => "0",
                Bead::Green => "1g",
                Bead::Blue => "1b",
            })?;
        }
        Ok(())
    }
}

impl FromStr for ColoredBinString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut beads = Vec::new();
        let mut bytes = s.bytes();
        while let Some(c) = bytes.next() {
            let bead = match c {
                b'0' => Bead::Zero,
                b'1' => match bytes.next() {
                    Some(b'g') => Bead::Green,
                    Some(b'b') => Bead::Blue,
                    _ => return Err(parse(format!("each 1 needs a g or b marker in {s:?}"))),
                },
                _ => {
                    return Err(parse(format!(
                        "unexpected character in colored string {s:?}"
                    )))
                }
            };
            beads.push(bead);
        }
        Self::from_beads(beads).map_err(|e| parse(e.to_string()))
    }
}

/// True iff some rotation makes the two colored strings agree bead for bead.
pub fn alternating_equal(b1: &ColoredBinString, b2: &ColoredBinString) -> bool {
    let (x, y) = (b1.beads(), b2.beads());
    x.len() == y.len() && (0..x.len().max(1)).any(|k| rotate_left(x, k) == y)
}

/// An even-weight binary necklace whose 1s alternate in color. Stored as the
/// underlying necklace plus the index of a green 1 in its canonical rotation;
/// of the two possible indices (first or second 1) the smaller one reachable
/// by some aligning rotation is kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlternatingNecklace {
    underlying: Necklace<bool>,
    phase: usize,
}

impl AlternatingNecklace {
    pub fn of(s: &ColoredBinString) -> Self {
        let plain = s.underlying();
        let underlying = necklace_of(&plain);
        let canon = underlying.canonical();
        let first_one = canon.iter().position(|&b| b).expect("positive weight");
        let n = canon.len();
        let phase = (0..n)
            .filter(|&k| rotate_left(plain.bits(), k) == canon)
            .map(|k| {
                let colored = s.rotated(k);
                if colored.beads()[first_one] == Bead::Green {
                    first_one
                } else {
                    canon[first_one + 1..]
                        .iter()
                        .position(|&b| b)
                        .map(|i| first_one + 1 + i)
                        .expect("even weight has a second 1")
                }
            })
            .min()
            .expect("the canonical rotation is reachable");
        AlternatingNecklace { underlying, phase }
    }

    pub fn underlying(&self) -> &Necklace<bool> {
        &self.underlying
    }

    pub fn phase(&self) -> usize {
        self.phase
    }

    /// The canonical rotation colored from the stored phase.
    pub fn representative(&self) -> ColoredBinString {
        let canon = self.underlying.canonical();
        let mut green = true;
        let mut beads: Vec<Bead> = Vec::with_capacity(canon.len());
        // Color from the phase position onward, wrapping around.
        let n = canon.len();
        let mut tmp = vec![Bead::Zero; n];
        for off in 0..n {
            let i = (self.phase + off) % n;
            if canon[i] {
                tmp[i] = if green { Bead::Green } else { Bead::Blue };
                green = !green;
            }
        }
        beads.extend(tmp);
        ColoredBinString(beads)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: &[u64]) -> NatString {
        NatString::from_u64s(v).unwrap()
    }

    fn bin(s: &str) -> BinString {
        s.parse().unwrap()
    }

    #[test]
    fn stars_and_bars() {
        assert_eq!(sb(&nat(&[1, 3, 1, 1])).unwrap(), bin("10011"));
        assert_eq!(sb(&nat(&[1, 1])).unwrap(), bin("1"));
        assert_eq!(sb_inv(&bin("11001")).unwrap(), nat(&[1, 1, 3, 1]));
        assert_eq!(sb_inv(&bin("1")).unwrap(), nat(&[1, 1]));
        assert!(sb(&nat(&[5])).is_err());
        assert!(sb_inv(&bin("000")).is_err());
        assert!(sb_inv(&bin("")).is_err());
    }

    #[test]
    fn eta_and_t_g() {
        assert_eq!(eta_plus(&nat(&[3, 1, 1])).unwrap(), nat(&[1, 3, 1, 1]));
        assert_eq!(eta_minus(&nat(&[3, 1, 1])).unwrap(), nat(&[3, 1, 1, 1]));
        assert_eq!(eta_plus(&nat(&[5])).unwrap(), nat(&[1, 5]));
        assert!(eta_plus(&nat(&[])).is_err());
        assert_eq!(t_g(&nat(&[3, 1, 1])).unwrap(), nat(&[1, 1, 3]));
        assert_eq!(t_g(&nat(&[7])).unwrap(), nat(&[7]));
        let s = nat(&[4, 2, 9, 1, 1]);
        let mut r = s.clone();
        for _ in 0..s.len() {
            r = t_g(&r).unwrap();
        }
        assert_eq!(r, s);
    }

    #[test]
    fn t_z_cases() {
        assert_eq!(t_z(&nat(&[1, 3, 1, 1])).unwrap(), nat(&[1, 1, 3, 1]));
        assert_eq!(t_z(&nat(&[2, 5])).unwrap(), nat(&[1, 6]));
        assert_eq!(t_z(&nat(&[1, 4])).unwrap(), nat(&[4, 1]));
        assert!(t_z(&nat(&[3])).is_err());
    }

    #[test]
    fn pinch_and_knead() {
        assert_eq!(pinch_left(&nat(&[3, 1, 1])), nat(&[1, 2, 1, 1]));
        assert_eq!(pinch_left(&nat(&[1, 4])), nat(&[5]));
        assert_eq!(pinch_left(&nat(&[1])), nat(&[1]));
        assert_eq!(pinch_left(&nat(&[])), nat(&[]));
        assert_eq!(pinch_right(&nat(&[3, 1, 1])), nat(&[3, 2]));
        assert_eq!(knead(&nat(&[1, 3, 1, 1])), nat(&[1, 2, 2, 1]));
        // Displayed cases from the beading argument.
        assert_eq!(pinch_both(&nat(&[1, 4, 1])), nat(&[6]));
        assert_eq!(knead(&nat(&[6])), nat(&[6]));
        assert_eq!(pinch_both(&nat(&[6])), nat(&[1, 4, 1]));
        assert_eq!(pinch_both(&nat(&[2, 1])), nat(&[1, 2]));
    }

    #[test]
    fn rotation_cases() {
        assert_eq!(rotate_bin(&bin("10011")).unwrap(), bin("11001"));
        assert_eq!(rotate_bin(&bin("00111")).unwrap(), bin("01110"));
        assert_eq!(rotate_bin(&bin("10000")).unwrap(), bin("00001"));
        assert_eq!(rotate_bin(&bin("1")).unwrap(), bin("1"));
        assert!(rotate_bin(&bin("000")).is_err());
        let cycle = ["10011", "11001", "00111", "01110", "11100", "10011"];
        for w in cycle.windows(2) {
            assert_eq!(rotate_bin(&bin(w[0])).unwrap(), bin(w[1]));
        }
    }

    #[test]
    fn primitivity_weight_necklaces() {
        let s = bin("10011");
        assert!(is_primitive_string(s.bits()).unwrap());
        assert_eq!((s.weight(), s.len()), (3, 5));
        assert!(!is_primitive_string(bin("1010").bits()).unwrap());
        assert!(is_primitive_string::<bool>(&[]).is_err());
        assert_eq!(necklace_of(&bin("11001")), necklace_of(&bin("10011")));
        assert_eq!(necklace_of(&bin("10011")).canonical(), bin("00111").bits());
        assert_ne!(necklace_of(&bin("10011")), necklace_of(&bin("10101")));
    }

    #[test]
    fn booth_matches_brute_force() {
        for n in 1..=10usize {
            for m in 0u32..(1 << n) {
                let s: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
                let best = (0..n).map(|k| rotate_left(&s, k)).min().unwrap();
                assert_eq!(rotate_left(&s, least_rotation(&s)), best);
            }
        }
    }

    #[test]
    fn alternating_equality_examples() {
        let c = |s: &str| s.parse::<ColoredBinString>().unwrap();
        assert!(alternating_equal(&c("1g1b"), &c("1b1g")));
        assert!(alternating_equal(&c("1g01b0"), &c("1g01b0")));
        assert!(!alternating_equal(&c("1g1b00"), &c("1b1g00")));
        assert!("1g1g".parse::<ColoredBinString>().is_err());
        assert!("1g01".parse::<ColoredBinString>().is_err());
        assert!("1g0".parse::<ColoredBinString>().is_err());
        assert!("".parse::<ColoredBinString>().is_err());
        assert_eq!(c("1g001b").to_string(), "1g001b");
    }

    #[test]
    fn alternating_necklace_agrees_with_rotation_search() {
        for n in 2..=8usize {
            for m in 0u32..(1 << n) {
                let b: BinString = (0..n).map(|i| m >> i & 1 == 1).collect();
                if b.weight() == 0 || b.weight() % 2 == 1 {
                    continue;
                }
                let x = ColoredBinString::alternate(&b).unwrap();
                for k in 0..n {
                    let y = x.rotated(k);
                    let z = ColoredBinString::alternate(&y.underlying()).unwrap();
                    assert_eq!(
                        alternating_equal(&x, &z),
                        AlternatingNecklace::of(&x) == AlternatingNecklace::of(&z),
                        "{x} vs {z}"
                    );
                    assert!(alternating_equal(&x, &y));
                    assert_eq!(AlternatingNecklace::of(&x), AlternatingNecklace::of(&y));
                }
                let rep = AlternatingNecklace::of(&x).representative();
                assert!(alternating_equal(&rep, &x));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn nat_string(min_len: usize) -> impl Strategy<Value = NatString> {
            prop::collection::vec(1u64..=9, min_len..=12).prop_map(|v| nat(&v))
        }

        proptest! {
            #[test]
            fn sb_round_trips(s in nat_string(2)) {
                let b = sb(&s).unwrap();
                prop_assert_eq!(sb_inv(&b).unwrap(), s.clone());
                prop_assert_eq!(b.weight(), s.len() - 1);
                let total: u64 = s.to_u64s().unwrap().iter().sum();
                prop_assert_eq!(b.len() as u64, total - 1);
            }

            #[test]
            fn sb_inv_round_trips(bits in prop::collection::vec(any::<bool>(), 1..16)) {
                let b = BinString::from_bits(bits);
                prop_assume!(b.weight() > 0);
                prop_assert_eq!(sb(&sb_inv(&b).unwrap()).unwrap(), b);
            }

            #[test]
            fn knead_conjugation_is_t_z(s in nat_string(2)) {
                prop_assert_eq!(pinch_both(&knead(&pinch_both(&s))), t_z(&s).unwrap());
            }

            #[test]
            fn rotation_transports_t_z(s in nat_string(2)) {
                let lhs = rotate_bin(&sb(&s).unwrap()).unwrap();
                prop_assert_eq!(lhs, sb(&t_z(&s).unwrap()).unwrap());
            }

            #[test]
            fn rotation_keeps_necklace(bits in prop::collection::vec(any::<bool>(), 1..16)) {
                let b = BinString::from_bits(bits);
                prop_assume!(b.weight() > 0);
                let n = necklace_of(&b);
                let mut r = b.clone();
                for _ in 0..2 * b.len() {
                    r = rotate_bin(&r).unwrap();
                    prop_assert_eq!(&necklace_of(&r), &n);
                }
            }
        }
    }
}
