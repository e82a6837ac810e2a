//! Maps between reduced forms, natural strings and binary strings.
//!
//! `gamma` (Dirichlet) and `beta` (bead sequence) read a form as a finite
//! continued fraction whose length parity is fixed by the Pell sign; `tau`
//! and `xi` rebuild forms from strings through continuants.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::contfrac::{cf_expand, continuant_raw, NatString, Parity, QuadraticSurd};
use crate::error::{domain, Error, Result};
use crate::forms::Form;
use crate::pell::{fundamental_solution, PellSign, PellSolution};
use crate::strings::{necklace_of, sb, AlternatingNecklace, BinString, ColoredBinString, Necklace};

fn pell_for(f: &Form) -> Result<PellSolution> {
    fundamental_solution(&f.indefinite_discriminant()?)
}

fn check_pell(f: &Form, pell: &PellSolution) -> Result<()> {
    if pell.residual(&f.discriminant()) != BigInt::from(pell.epsilon.value()) {
        return Err(domain(format!(
            "Pell solution ({}, {}) does not belong to the discriminant of {f}",
            pell.t, pell.u
        )));
    }
    Ok(())
}

/// `z = (t + Bu)/2`, which the theory says is an integer.
fn z_of(f: &Form, pell: &PellSolution) -> Result<BigInt> {
    let twice = &pell.t + &f.b * &pell.u;
    if twice.is_odd() {
        return Err(Error::Internal(format!("t + Bu is odd for {f}")));
    }
    Ok(twice / 2)
}

fn positive(x: BigInt, what: &str, f: &Form) -> Result<BigUint> {
    x.to_biguint()
        .filter(|v| !v.is_zero())
        .ok_or_else(|| Error::Internal(format!("{what} is not positive for {f}")))
}

/// Dirichlet's map on `G⁺`.
pub fn gamma(f: &Form) -> Result<NatString> {
    gamma_with(f, &pell_for(f)?)
}

pub fn gamma_with(f: &Form, pell: &PellSolution) -> Result<NatString> {
    if !f.is_g_reduced() {
        return Err(Error::NotGReduced(f.to_string()));
    }
    if !f.a.is_positive() {
        return Err(domain(format!("gamma needs A > 0, got {f}")));
    }
    check_pell(f, pell)?;
    let z = positive(z_of(f, pell)?, "z", f)?;
    let au = positive(&f.a * &pell.u, "Au", f)?;
    let parity = match pell.epsilon {
        PellSign::Minus => Parity::Odd,
        PellSign::Plus => Parity::Even,
    };
    cf_expand(&z, &au, parity)
}

/// The bead sequence of a Z-reduced form.
pub fn beta(f: &Form) -> Result<NatString> {
    beta_with(f, &pell_for(f)?)
}

pub fn beta_with(f: &Form, pell: &PellSolution) -> Result<NatString> {
    if !f.is_z_reduced() {
        return Err(Error::NotZReduced(f.to_string()));
    }
    check_pell(f, pell)?;
    let z = z_of(f, pell)?;
    let den = positive(&z - &f.a * &pell.u, "z - Au", f)?;
    let z = positive(z, "z", f)?;
    let parity = match pell.epsilon {
        PellSign::Minus => Parity::Even,
        PellSign::Plus => Parity::Odd,
    };
    let s = cf_expand(&z, &den, parity)?;
    if s.len() < 2 {
        return Err(Error::Internal(format!(
            "bead sequence of {f} has length < 2"
        )));
    }
    Ok(s)
}

/// `σ = sb ∘ β`.
pub fn sigma(f: &Form) -> Result<BinString> {
    sigma_with(f, &pell_for(f)?)
}

pub fn sigma_with(f: &Form, pell: &PellSolution) -> Result<BinString> {
    sb(&beta_with(f, pell)?)
}

/// Sends a G-reduced form to an equivalent Z-reduced one.
pub fn mu(f: &Form) -> Result<Form> {
    if !f.is_g_reduced() {
        return Err(Error::NotGReduced(f.to_string()));
    }
    let (a, b, c) = (&f.a, &f.b, &f.c);
    Ok(if a.is_positive() {
        Form {
            a: a.clone(),
            b: 2 * a + b,
            c: a + b + c,
        }
    } else {
        Form {
            a: a + b + c,
            b: b + 2 * c,
            c: c.clone(),
        }
    })
}

fn minus_one(q: &BigUint) -> BigUint {
    q - 1u32
}

/// Rebuilds a Z-reduced form from its bead sequence:
/// `A = [q₁−1, q₂, …, q_l]`, `C = [q₁, …, q_{l−1}, q_l−1]`,
/// `B = [q₁, …, q_l] + [q₁−1, q₂, …, q_{l−1}, q_l−1]`.
pub fn tau(s: &NatString) -> Result<Form> {
    let q = s.entries();
    let l = q.len();
    if l < 2 {
        return Err(domain("tau needs a natural string of length >= 2"));
    }
    let mut head = q.to_vec();
    head[0] = minus_one(&q[0]);
    let mut tail = q.to_vec();
    tail[l - 1] = minus_one(&q[l - 1]);
    let mut both = head.clone();
    both[l - 1] = minus_one(&q[l - 1]);
    let a = continuant_raw(&head);
    let c = continuant_raw(&tail);
    let b = continuant_raw(q) + continuant_raw(&both);
    Ok(Form::new(a, b, c))
}

/// A section of `gamma`: `A = [q₂, …, q_l]`,
/// `B = [q₁, …, q_l] − [q₂, …, q_{l−1}]`, `C = −[q₁, …, q_{l−1}]`.
pub fn xi(s: &NatString) -> Result<Form> {
    let q = s.entries();
    let l = q.len();
    if l == 0 {
        return Err(domain("xi needs a nonempty natural string"));
    }
    let a = continuant_raw(&q[1..]);
    // [q₂, …, q_{l−1}] has length −1 when l = 1, and that continuant is 0.
    let inner = if l >= 2 {
        continuant_raw(&q[1..l - 1])
    } else {
        BigUint::zero()
    };
    let b = BigInt::from(continuant_raw(q)) - BigInt::from(inner);
    let c = -BigInt::from(continuant_raw(&q[..l - 1]));
    Ok(Form::new(a, b, c))
}

/// Weight and length of `σ(f)`, constant along a Zagier cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ClassInvariants {
    pub weight: usize,
    pub length: usize,
    pub parity: Parity,
}

pub fn class_invariants(f: &Form) -> Result<ClassInvariants> {
    let pell = pell_for(f)?;
    let s = sigma_with(f, &pell)?;
    let parity = Parity::of(s.weight());
    let expected = match pell.epsilon {
        PellSign::Minus => Parity::Odd,
        PellSign::Plus => Parity::Even,
    };
    if parity != expected {
        return Err(Error::Internal(format!(
            "weight of σ({f}) = {s} disagrees with the Pell sign"
        )));
    }
    Ok(ClassInvariants {
        weight: s.weight(),
        length: s.len(),
        parity,
    })
}

/// The necklace attached to a class: plain for odd weight, alternating for
/// even weight with the first 1 of `σ(f)` colored green.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SigmaBar {
    Plain(Necklace<bool>),
    Alternating(AlternatingNecklace),
}

impl fmt::Display for SigmaBar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaBar::Plain(n) => {
                write!(f, "{}", BinString::from_bits(n.canonical().to_vec()))
            }
            SigmaBar::Alternating(n) => write!(f, "{}", n.representative()),
        }
    }
}

pub fn sigma_bar(f: &Form) -> Result<SigmaBar> {
    sigma_bar_of(&sigma(f)?)
}

pub fn sigma_bar_of(s: &BinString) -> Result<SigmaBar> {
    Ok(if s.weight() % 2 == 1 {
        SigmaBar::Plain(necklace_of(s))
    } else {
        SigmaBar::Alternating(AlternatingNecklace::of(&ColoredBinString::alternate(s)?))
    })
}

/// `(B − 2A + √Δ)/(2A)`, whose Denjoy expansion is purely periodic.
pub fn denjoy_surd_of(f: &Form) -> Result<QuadraticSurd> {
    if !f.is_z_reduced() {
        return Err(Error::NotZReduced(f.to_string()));
    }
    QuadraticSurd::new(&f.b - 2 * &f.a, 2 * &f.a, f.discriminant())
}

/// `σ(f)` with every 0 replaced by 01.
pub fn denjoy_period(f: &Form) -> Result<BinString> {
    Ok(zero_to_zero_one(&sigma(f)?))
}

pub fn zero_to_zero_one(s: &BinString) -> BinString {
    s.bits()
        .iter()
        .flat_map(|&b| if b { vec![true] } else { vec![false, true] })
        .collect()
}
