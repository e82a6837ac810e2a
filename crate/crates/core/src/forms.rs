//! Binary quadratic forms `Ax² + Bxy + Cy²` and the right action of SL₂(ℤ).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{parse, Error, Result};

/// The form `a·x² + b·xy + c·y²`, written `(a,b,c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Form {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Form {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> Result<BigInt> {
        if self.a.is_zero() && self.b.is_zero() && self.c.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(self.a.gcd(&self.b).gcd(&self.c))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.content()?.is_one())
    }

    pub fn is_indefinite(&self) -> bool {
        is_indefinite_discriminant(&self.discriminant())
    }

    /// `AC < 0` and `B > |A + C|`.
    pub fn is_g_reduced(&self) -> bool {
        (&self.a * &self.c).is_negative()
            && self.b > (&self.a + &self.c).abs()
            && self.is_indefinite()
    }

    /// `A, B, C > 0` and `B > A + C`.
    pub fn is_z_reduced(&self) -> bool {
        self.a.is_positive()
            && self.b.is_positive()
            && self.c.is_positive()
            && self.b > &self.a + &self.c
            && self.is_indefinite()
    }

    /// The form `f(αx + βy, γx + δy)`.
    pub fn act(&self, m: &UnimodularMatrix) -> Form {
        let (al, be, ga, de) = (&m.alpha, &m.beta, &m.gamma, &m.delta);
        let a = &self.a * al * al + &self.b * al * ga + &self.c * ga * ga;
        let b = BigInt::from(2) * &self.a * al * be
            + &self.b * (al * de + be * ga)
            + BigInt::from(2) * &self.c * ga * de;
        let c = &self.a * be * be + &self.b * be * de + &self.c * de * de;
        Form { a, b, c }
    }

    /// `(A,B,C)ᴿ = (C,B,A)`.
    pub fn reverse(&self) -> Form {
        Form {
            a: self.c.clone(),
            b: self.b.clone(),
            c: self.a.clone(),
        }
    }

    /// `(A,B,C) ↦ (−A,B,−C)`.
    pub fn rho(&self) -> Form {
        Form {
            a: -&self.a,
            b: self.b.clone(),
            c: -&self.c,
        }
    }

    pub fn scalar_mul(&self, u: &BigInt) -> Result<Form> {
        if !u.is_positive() {
            return Err(crate::error::domain(format!(
                "scalar multiplier must be positive, got {u}"
            )));
        }
        Ok(Form {
            a: &self.a * u,
            b: &self.b * u,
            c: &self.c * u,
        })
    }

    /// The discriminant, checked to be positive and nonsquare.
    pub fn indefinite_discriminant(&self) -> Result<BigInt> {
        let delta = self.discriminant();
        if is_indefinite_discriminant(&delta) {
            Ok(delta)
        } else {
            Err(Error::NotIndefinite(delta.to_string()))
        }
    }

    /// Parses `["a","b","c"]`.
    pub fn from_json(s: &str) -> Result<Form> {
        serde_json::from_str(s).map_err(|e| parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("form serialization is infallible")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(3)?;
        t.serialize_element(&self.a.to_string())?;
        t.serialize_element(&self.b.to_string())?;
        t.serialize_element(&self.c.to_string())?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct FormVisitor;

        impl<'de> Visitor<'de> for FormVisitor {
            type Value = Form;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of three decimal strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Form, A::Error> {
                let mut coeffs = Vec::with_capacity(3);
                while let Some(s) = seq.next_element::<String>()? {
                    if coeffs.len() == 3 {
                        return Err(de::Error::invalid_length(4, &self));
                    }
                    coeffs.push(parse_int(&s).map_err(de::Error::custom)?);
                }
                if coeffs.len() != 3 {
                    return Err(de::Error::invalid_length(coeffs.len(), &self));
                }
                let c = coeffs.pop().unwrap();
                let b = coeffs.pop().unwrap();
                let a = coeffs.pop().unwrap();
                Ok(Form { a, b, c })
            }
        }

        deserializer.deserialize_seq(FormVisitor)
    }
}

/// Parses a signed decimal integer: optional sign, then ASCII digits only.
pub fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse(format!("malformed integer {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|_| parse(format!("malformed integer {s:?}")))
}

/// True iff `n ≥ 0` is a perfect square.
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_indefinite_discriminant(delta: &BigInt) -> bool {
    delta.is_positive() && !is_square(delta)
}

/// A 2×2 integer matrix of determinant one, acting by substitution
/// `x → αx + βy`, `y → γx + δy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    pub delta: BigInt,
}

impl UnimodularMatrix {
    pub fn new(
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
        gamma: impl Into<BigInt>,
        delta: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = UnimodularMatrix {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
            delta: delta.into(),
        };
        let det = m.determinant();
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        UnimodularMatrix {
            alpha: BigInt::one(),
            beta: BigInt::zero(),
            gamma: BigInt::zero(),
            delta: BigInt::one(),
        }
    }

    /// `[[n, 1], [−1, 0]]`, the substitution `f(nx + y, −x)`.
    pub fn shift(n: impl Into<BigInt>) -> Self {
        UnimodularMatrix {
            alpha: n.into(),
            beta: BigInt::one(),
            gamma: -BigInt::one(),
            delta: BigInt::zero(),
        }
    }

    pub fn determinant(&self) -> BigInt {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    pub fn mul(&self, rhs: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix {
            alpha: &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            beta: &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            gamma: &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            delta: &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        }
    }
}
