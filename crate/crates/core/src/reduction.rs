//! Gauss and Zagier reduction operators, their cycles, and enumeration of
//! reduced forms of a fixed discriminant.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::contfrac::floor_with_root;
use crate::error::{domain, parse, Error, Result};
use crate::forms::{is_indefinite_discriminant, Form, UnimodularMatrix};

/// A positive nonsquare discriminant together with `⌊√Δ⌋`, so that repeated
/// reductions at the same `Δ` skip the square root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Discriminant {
    delta: BigInt,
    root: BigInt,
}

impl Discriminant {
    pub fn new(delta: impl Into<BigInt>) -> Result<Self> {
        let delta = delta.into();
        if !is_indefinite_discriminant(&delta) {
            return Err(Error::NotIndefinite(delta.to_string()));
        }
        let root = delta.sqrt();
        Ok(Discriminant { delta, root })
    }

    pub fn of(f: &Form) -> Result<Self> {
        Self::new(f.discriminant())
    }

    pub fn value(&self) -> &BigInt {
        &self.delta
    }

    pub fn root(&self) -> &BigInt {
        &self.root
    }

    fn check(&self, f: &Form) -> Result<()> {
        if f.discriminant() != self.delta {
            return Err(domain(format!(
                "form {f} does not have discriminant {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// Which reduction operator to iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Zagier,
    Gauss,
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(Operator::Zagier),
            "g" => Ok(Operator::Gauss),
            _ => Err(parse(format!("operator must be z or g, got {s:?}"))),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Zagier => "z",
            Operator::Gauss => "g",
        })
    }
}

/// `⌈(B + √Δ)/(2A)⌉`.
pub fn reducing_number(f: &Form) -> Result<BigInt> {
    reducing_number_in(&Discriminant::of(f)?, f)
}

pub fn reducing_number_in(d: &Discriminant, f: &Form) -> Result<BigInt> {
    d.check(f)?;
    Ok(floor_with_root(&f.b, &(2 * &f.a), &d.root) + 1)
}

/// `f(nx + y, −x) = (An² − Bn + C, 2An − B, A)`.
fn shift_by(f: &Form, n: &BigInt) -> Form {
    Form {
        a: (&f.a * n - &f.b) * n + &f.c,
        b: 2 * &f.a * n - &f.b,
        c: f.a.clone(),
    }
}

/// Zagier's operator: `f ↦ f(nx + y, −x)` with `n` the reducing number.
pub fn r_z(f: &Form) -> Result<Form> {
    r_z_in(&Discriminant::of(f)?, f)
}

pub fn r_z_in(d: &Discriminant, f: &Form) -> Result<Form> {
    let n = reducing_number_in(d, f)?;
    Ok(shift_by(f, &n))
}

/// The signed step of Gauss's operator: `|δ| = ⌊(B + √Δ)/(2|A|)⌋`, `δA > 0`.
pub fn gauss_step(d: &Discriminant, f: &Form) -> Result<BigInt> {
    d.check(f)?;
    if !f.is_g_reduced() {
        return Err(Error::NotGReduced(f.to_string()));
    }
    let m = floor_with_root(&f.b, &(2 * f.a.abs()), &d.root);
    Ok(if f.a.is_positive() { m } else { -m })
}

/// Gauss's operator on G-reduced forms: `f ↦ f(δx + y, −x)`.
pub fn r_g(f: &Form) -> Result<Form> {
    r_g_in(&Discriminant::of(f)?, f)
}

pub fn r_g_in(d: &Discriminant, f: &Form) -> Result<Form> {
    let delta = gauss_step(d, f)?;
    let g = shift_by(f, &delta);
    if !g.is_g_reduced() {
        return Err(Error::Internal(format!(
            "R_G({f}) = {g} left the G-reduced set"
        )));
    }
    Ok(g)
}

/// The substitution matrix `(n, 1, −1, 0)` realising one reduction step.
pub fn step_matrix(n: &BigInt) -> UnimodularMatrix {
    UnimodularMatrix::shift(n.clone())
}

fn apply(op: Operator, d: &Discriminant, f: &Form) -> Result<Form> {
    match op {
        Operator::Zagier => r_z_in(d, f),
        Operator::Gauss => r_g_in(d, f),
    }
}

/// An orbit split into the forms visited once and the cycle it falls into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionCycle {
    pub pre_period: Vec<Form>,
    pub cycle: Vec<Form>,
}

impl ReductionCycle {
    pub fn is_purely_periodic(&self) -> bool {
        self.pre_period.is_empty()
    }
}

/// Iterates the operator from `f` until a form repeats.
pub fn orbit_to_cycle(f: &Form, op: Operator) -> Result<ReductionCycle> {
    orbit_to_cycle_in(&Discriminant::of(f)?, f, op)
}

pub fn orbit_to_cycle_in(d: &Discriminant, f: &Form, op: Operator) -> Result<ReductionCycle> {
    if op == Operator::Gauss && !f.is_g_reduced() {
        return Err(Error::NotGReduced(f.to_string()));
    }
    let mut seen: HashMap<Form, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut x = f.clone();
    while !seen.contains_key(&x) {
        seen.insert(x.clone(), orbit.len());
        let next = apply(op, d, &x)?;
        orbit.push(x);
        x = next;
    }
    let cycle = orbit.split_off(seen[&x]);
    let entry = &cycle[0];
    let entry_ok = match op {
        Operator::Zagier => entry.is_z_reduced(),
        Operator::Gauss => entry.is_g_reduced(),
    };
    if !entry_ok {
        return Err(Error::Internal(format!(
            "orbit of {f} re-entered at non-reduced form {entry}"
        )));
    }
    Ok(ReductionCycle {
        pre_period: orbit,
        cycle,
    })
}

fn small_delta(d: &Discriminant) -> Result<u64> {
    d.delta
        .to_u64()
        .filter(|&x| x < 1 << 60)
        .ok_or_else(|| domain(format!("discriminant {} too large to enumerate", d.delta)))
}

/// All Z-reduced forms of discriminant `Δ`, sorted.
///
/// `(B − A − C)(B + A + C) = Δ − (A − C)²` bounds `B ≤ (Δ + 1)/2`, and
/// `B² − 4AC = Δ` gives `B > √Δ`. For fixed `B`, `A + C < B` with
/// `AC = (B² − Δ)/4` confines `A` to the open interval `((B − √Δ)/2, (B + √Δ)/2)`.
/// Runs in machine integers; the bound keeps every product inside `u128`.
pub fn enumerate_z_reduced(delta: &BigInt) -> Result<Vec<Form>> {
    enumerate_z_reduced_in(&Discriminant::new(delta.clone())?)
}

pub fn enumerate_z_reduced_in(d: &Discriminant) -> Result<Vec<Form>> {
    let delta = small_delta(d)?;
    if delta % 4 > 1 {
        // B² ≡ 0 or 1 (mod 4), so no form has this discriminant.
        return Ok(Vec::new());
    }
    let s = d.root.to_u64().expect("root of a u64 fits");
    let mut out = Vec::new();
    let mut b = s + 1;
    if (b + delta) % 2 == 1 {
        b += 1;
    }
    while b <= delta.div_ceil(2) {
        let m = ((b as u128 * b as u128 - delta as u128) / 4) as u64;
        // (B − √Δ)/2 < A < (B + √Δ)/2 with √Δ irrational.
        let lo = (b - s - 1) / 2 + 1;
        let hi = (b + s) / 2;
        for a in lo..=hi {
            if m.is_multiple_of(a) {
                let c = m / a;
                if a + c < b {
                    out.push(Form::new(a, b, c));
                }
            }
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

/// All G-reduced forms of discriminant `Δ`, sorted. Here `0 < B < √Δ` and
/// `|A|·|C| = (Δ − B²)/4` with `||A| − |C|| < B`.
pub fn enumerate_g_reduced(delta: &BigInt) -> Result<Vec<Form>> {
    enumerate_g_reduced_in(&Discriminant::new(delta.clone())?)
}

pub fn enumerate_g_reduced_in(d: &Discriminant) -> Result<Vec<Form>> {
    let delta = small_delta(d)?;
    if delta % 4 > 1 {
        // B² ≡ 0 or 1 (mod 4), so no form has this discriminant.
        return Ok(Vec::new());
    }
    let s = d.root.to_u64().expect("root of a u64 fits");
    let mut out = Vec::new();
    let mut b = if delta % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let m = (delta - b * b) / 4;
        // (√Δ − B)/2 < |A| < (√Δ + B)/2
        let lo = (s - b) / 2 + 1;
        let hi = (s + b) / 2;
        for a in lo..=hi {
            if m % a == 0 {
                let c = m / a;
                if a.abs_diff(c) < b {
                    let (a, b, c) = (a as i128, b as i128, c as i128);
                    out.push(Form::new(a, b, -c));
                    out.push(Form::new(-a, b, c));
                }
            }
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

/// Partitions the reduced forms of `Δ` into operator cycles. Each cycle starts
/// at its least form; cycles are ordered by that form.
pub fn cycles(delta: &BigInt, op: Operator) -> Result<Vec<Vec<Form>>> {
    cycles_in(&Discriminant::new(delta.clone())?, op)
}

pub fn cycles_in(d: &Discriminant, op: Operator) -> Result<Vec<Vec<Form>>> {
    let forms = match op {
        Operator::Zagier => enumerate_z_reduced_in(d)?,
        Operator::Gauss => enumerate_g_reduced_in(d)?,
    };
    let members: HashSet<&Form> = forms.iter().collect();
    let mut visited: HashSet<Form> = HashSet::new();
    let mut out = Vec::new();
    for f in &forms {
        if visited.contains(f) {
            continue;
        }
        let mut cycle = vec![f.clone()];
        visited.insert(f.clone());
        let mut x = apply(op, d, f)?;
        while &x != f {
            if !members.contains(&x) || !visited.insert(x.clone()) {
                return Err(Error::Internal(format!(
                    "orbit of reduced form {f} left its cycle at {x}"
                )));
            }
            let next = apply(op, d, &x)?;
            cycle.push(x);
            x = next;
        }
        out.push(cycle);
    }
    Ok(out)
}

/// Number of Z-reduced forms in the class of `f`.
pub fn z_caliber(f: &Form) -> Result<usize> {
    Ok(orbit_to_cycle(f, Operator::Zagier)?.cycle.len())
}

/// Divides out the content.
pub fn primitive_part(f: &Form) -> Result<Form> {
    let g = f.content()?;
    Ok(Form {
        a: &f.a / &g,
        b: &f.b / &g,
        c: &f.c / &g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Roots;
    use num_traits::One;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c)
    }

    fn worked_cycle() -> Vec<Form> {
        vec![f(1, 5, 2), f(2, 5, 1), f(4, 7, 2), f(4, 9, 4), f(2, 7, 4)]
    }

    #[test]
    fn reducing_numbers() {
        assert_eq!(reducing_number(&f(1, 5, 2)).unwrap(), BigInt::from(5));
        assert_eq!(reducing_number(&f(2, 5, 1)).unwrap(), BigInt::from(3));
        assert_eq!(reducing_number(&f(4, 7, 2)).unwrap(), BigInt::from(2));
        assert!(reducing_number(&f(1, 3, 0)).is_err());
    }

    #[test]
    fn zagier_steps() {
        assert_eq!(r_z(&f(1, 5, 2)).unwrap(), f(2, 5, 1));
        assert_eq!(r_z(&f(4, 7, 2)).unwrap(), f(4, 9, 4));
        assert_eq!(r_z(&f(2, 7, 4)).unwrap(), f(1, 5, 2));
        assert_eq!(r_z(&f(1, 3, 1)).unwrap(), f(1, 3, 1));
    }

    #[test]
    fn zagier_step_is_the_shift_action() {
        for g in worked_cycle() {
            let n = reducing_number(&g).unwrap();
            let m = step_matrix(&n);
            assert_eq!(m.determinant(), BigInt::one());
            assert_eq!(g.act(&m), r_z(&g).unwrap());
        }
    }

    #[test]
    fn gauss_steps() {
        let g = f(1, 3, -2);
        let h = r_g(&g).unwrap();
        assert_eq!(h, f(-2, 3, 1));
        assert_eq!(r_g(&h).unwrap(), f(2, 1, -2));
        assert!(r_g(&r_g(&g).unwrap()).unwrap().a.is_positive());
        assert!(matches!(r_g(&f(1, 5, 2)), Err(Error::NotGReduced(_))));
    }

    #[test]
    fn worked_orbit() {
        let c = orbit_to_cycle(&f(1, 5, 2), Operator::Zagier).unwrap();
        assert!(c.pre_period.is_empty());
        assert_eq!(c.cycle, worked_cycle());
        let g = orbit_to_cycle(&f(1, 3, -2), Operator::Gauss).unwrap();
        assert!(g.is_purely_periodic());
        assert!(g.cycle.iter().all(Form::is_g_reduced));
        // A non-reduced start has a nonempty pre-period.
        let h = orbit_to_cycle(&f(3, 1, -5), Operator::Zagier).unwrap();
        assert!(!h.pre_period.is_empty());
        assert!(h.cycle[0].is_z_reduced());
        assert!(orbit_to_cycle(&f(1, 5, 2), Operator::Gauss).is_err());
    }

    #[test]
    fn enumerations() {
        let z = |d: i64| enumerate_z_reduced(&BigInt::from(d)).unwrap();
        let mut c17 = worked_cycle();
        c17.sort();
        assert_eq!(z(17), c17);
        assert_eq!(z(5), vec![f(1, 3, 1)]);
        assert_eq!(z(8), vec![f(1, 4, 2), f(2, 4, 1)]);
        let g = |d: i64| enumerate_g_reduced(&BigInt::from(d)).unwrap();
        assert_eq!(g(5), vec![f(-1, 1, 1), f(1, 1, -1)]);
        let g17 = g(17);
        assert!(g17.contains(&f(1, 3, -2)) && g17.contains(&f(-2, 3, 1)));
        for d in [5i64, 8, 12, 13, 17, 21, 28, 40, 61, 97] {
            assert_eq!(g(d).len() % 2, 0);
        }
        assert!(enumerate_z_reduced(&BigInt::from(16)).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in 2i64..=400 {
            let delta = BigInt::from(d);
            if !is_indefinite_discriminant(&delta) {
                continue;
            }
            let mut z = Vec::new();
            let mut g = Vec::new();
            for a in -d..=d {
                for c in -d..=d {
                    let b2 = d + 4 * a * c;
                    if b2 <= 0 {
                        continue;
                    }
                    let b = b2.sqrt();
                    if b * b == b2 {
                        let h = f(a, b, c);
                        if h.is_z_reduced() {
                            z.push(h.clone());
                        }
                        if h.is_g_reduced() {
                            g.push(h);
                        }
                    }
                }
            }
            z.sort();
            g.sort();
            assert_eq!(enumerate_z_reduced(&delta).unwrap(), z, "Δ={d}");
            assert_eq!(enumerate_g_reduced(&delta).unwrap(), g, "Δ={d}");
        }
    }

    #[test]
    fn cycle_partitions() {
        let c17 = cycles(&BigInt::from(17), Operator::Zagier).unwrap();
        assert_eq!(c17.len(), 1);
        assert_eq!(c17[0].len(), 5);
        assert_eq!(
            cycles(&BigInt::from(5), Operator::Zagier).unwrap(),
            vec![vec![f(1, 3, 1)]]
        );
        for d in [12i64, 40, 60, 145, 316] {
            let delta = BigInt::from(d);
            let mut flat: Vec<Form> = cycles(&delta, Operator::Zagier)
                .unwrap()
                .into_iter()
                .flatten()
                .collect();
            flat.sort();
            assert_eq!(flat, enumerate_z_reduced(&delta).unwrap());
            let gs: usize = cycles(&delta, Operator::Gauss)
                .unwrap()
                .iter()
                .map(Vec::len)
                .sum();
            assert_eq!(gs, enumerate_g_reduced(&delta).unwrap().len());
        }
    }

    #[test]
    fn calibers() {
        assert_eq!(z_caliber(&f(1, 5, 2)).unwrap(), 5);
        assert_eq!(z_caliber(&f(1, 3, 1)).unwrap(), 1);
        assert_eq!(z_caliber(&f(2, 10, 4)).unwrap(), 5);
    }

    #[test]
    fn zagier_reduced_iff_purely_periodic() {
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                for c in -30i64..=30 {
                    let g = f(a, b, c);
                    if !g.is_indefinite() {
                        continue;
                    }
                    let orbit = orbit_to_cycle(&g, Operator::Zagier).unwrap();
                    assert_eq!(orbit.is_purely_periodic(), g.is_z_reduced(), "{g}");
                }
            }
        }
    }

    #[test]
    fn gauss_flips_sign_and_stays_reduced() {
        for d in 2i64..=500 {
            let Ok(disc) = Discriminant::new(d) else {
                continue;
            };
            for g in enumerate_g_reduced_in(&disc).unwrap() {
                let h = r_g_in(&disc, &g).unwrap();
                assert!(h.is_g_reduced());
                assert_ne!(h.a.is_positive(), g.a.is_positive(), "{g}");
                let delta = gauss_step(&disc, &g).unwrap();
                assert_eq!(g.act(&step_matrix(&delta)), h);
            }
        }
    }
}
