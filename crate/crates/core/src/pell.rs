//! Fundamental solutions of `|t² − Δu²| = 4`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::contfrac::{CfKind, QuadraticSurd};
use crate::error::{Error, Result};
use crate::forms::{is_indefinite_discriminant, is_square};

/// Which side of the Pellian equation a solution lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PellSign {
    /// `t² − Δu² = −4`
    Minus,
    /// `t² − Δu² = +4`
    Plus,
}

impl PellSign {
    pub fn value(self) -> i32 {
        match self {
            PellSign::Minus => -4,
            PellSign::Plus => 4,
        }
    }
}

impl Serialize for PellSign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub t: BigInt,
    pub u: BigInt,
    pub epsilon: PellSign,
}

impl PellSolution {
    /// `t² − Δu²`
    pub fn residual(&self, delta: &BigInt) -> BigInt {
        &self.t * &self.t - delta * &self.u * &self.u
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "t": self.t.to_string(),
            "u": self.u.to_string(),
            "epsilon": self.epsilon.value(),
        })
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t={} u={} epsilon={}",
            self.t,
            self.u,
            self.epsilon.value()
        )
    }
}

/// The positive solution of `|t² − Δu²| = 4` with least `u`.
///
/// Expands `(b + √Δ)/2` over one minimal period, where `b` is the largest
/// integer below `√Δ` congruent to `Δ` mod 2. That number is reduced, so its
/// expansion is purely periodic. With `l` the period length and `u`, `u'` the
/// last two convergent denominators, `t = bu + 2u'` and `t² − Δu² = 4(−1)^l`.
pub fn fundamental_solution(delta: &BigInt) -> Result<PellSolution> {
    if !is_indefinite_discriminant(delta) {
        return Err(Error::NotIndefinite(delta.to_string()));
    }
    let root = delta.sqrt();
    let b = if (&root - delta).is_even() {
        root
    } else {
        root - 1
    };
    if b.is_zero() {
        // Only Δ = 2 lands here; (b + √Δ)/2 < 1 is not reduced.
        return solve_pell_bruteforce(delta, 2)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("no Pell solution for Δ = 2".into()));
    }
    let start = QuadraticSurd::new(b.clone(), 2, delta.clone())?;
    let (mut u_prev, mut u) = (BigInt::one(), BigInt::zero());
    let mut x = start.clone();
    let mut len = 0usize;
    loop {
        let (a, next) = x.step(CfKind::Regular);
        let u_next = &a * &u + &u_prev;
        u_prev = std::mem::replace(&mut u, u_next);
        len += 1;
        x = next;
        if x == start {
            break;
        }
    }
    let t = &b * &u + 2 * &u_prev;
    let epsilon = if len % 2 == 1 {
        PellSign::Minus
    } else {
        PellSign::Plus
    };
    let sol = PellSolution { t, u, epsilon };
    if sol.residual(delta) != BigInt::from(epsilon.value()) {
        return Err(Error::Internal(format!(
            "Pell residual check failed for {delta}: {sol}"
        )));
    }
    Ok(sol)
}

/// Every solution with `1 ≤ u ≤ u_max`, by testing `Δu² ∓ 4` for squareness.
/// Ordered by `u`, with the `−4` solution first when both occur.
pub fn solve_pell_bruteforce(delta: &BigInt, u_max: u64) -> Result<Vec<PellSolution>> {
    if !is_indefinite_discriminant(delta) {
        return Err(Error::NotIndefinite(delta.to_string()));
    }
    let mut out = Vec::new();
    for u in 1..=u_max {
        let u = BigInt::from(u);
        let du2 = delta * &u * &u;
        for epsilon in [PellSign::Minus, PellSign::Plus] {
            let t2 = &du2 + epsilon.value();
            if !t2.is_negative() && is_square(&t2) {
                out.push(PellSolution {
                    t: t2.sqrt(),
                    u: u.clone(),
                    epsilon,
                });
            }
        }
    }
    Ok(out)
}
