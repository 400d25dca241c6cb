//! The closed vocabulary of computable base fields.
//!
//! Grammar shared with the CLI: `Q`, `GF(p)`, `GF(p^n)`, `PC(q;p)`, `RC`.
//! Anything else is a validation error, never a silent fallback.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, prime_power};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// The rational numbers `Q`.
    Rational,
    /// The finite field `GF(p^n)`.
    Finite { p: u64, n: u32 },
    /// The procyclic model `PC(q;p)`: the union of `GF(q^m)` over all `m`
    /// coprime to `p`.
    Procyclic { q: u64, p: u64 },
    /// The sign-model real closed field.
    RealClosed,
}

impl FieldDescriptor {
    pub fn finite(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument {
                argument: "n",
                reason: "extension degree must be positive".into(),
            });
        }
        Ok(FieldDescriptor::Finite { p, n })
    }

    pub fn procyclic(q: u64, p: u64) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDescriptor::Procyclic { q, p })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Finite { p, n: 1 } => write!(f, "GF({})", p),
            FieldDescriptor::Finite { p, n } => write!(f, "GF({}^{})", p, n),
            FieldDescriptor::Procyclic { q, p } => write!(f, "PC({};{})", q, p),
            FieldDescriptor::RealClosed => write!(f, "RC"),
        }
    }
}

fn parse_u64(s: &str, original: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| Error::BadDescriptor(original.to_string()))
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Q" => return Ok(FieldDescriptor::Rational),
            "RC" => return Ok(FieldDescriptor::RealClosed),
            _ => {}
        }
        let bad = || Error::BadDescriptor(s.to_string());
        if let Some(rest) = t.strip_prefix("GF(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (p, n) = match inner.split_once('^') {
                Some((p, n)) => (parse_u64(p, s)?, parse_u64(n, s)?),
                None => (parse_u64(inner, s)?, 1),
            };
            if n == 0 || n > u32::MAX as u64 {
                return Err(bad());
            }
            return FieldDescriptor::finite(p, n as u32);
        }
        if let Some(rest) = t.strip_prefix("PC(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (q, p) = inner.split_once(';').ok_or_else(bad)?;
            return FieldDescriptor::procyclic(parse_u64(q, s)?, parse_u64(p, s)?);
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_closed_vocabulary() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rational);
        assert_eq!("RC".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::RealClosed);
        assert_eq!(
            "GF(5)".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Finite { p: 5, n: 1 }
        );
        assert_eq!(
            "GF(3^2)".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Finite { p: 3, n: 2 }
        );
        assert_eq!(
            "PC(9;2)".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Procyclic { q: 9, p: 2 }
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["Q", "RC", "GF(7)", "GF(2^4)", "PC(3;2)"] {
            let d: FieldDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(d.to_string().parse::<FieldDescriptor>().unwrap(), d);
        }
    }

    #[test]
    fn rejects_everything_else() {
        for s in ["", "R", "GF(4)", "GF(6)", "GF(0)", "GF(5^0)", "PC(6;2)", "PC(3;4)", "GF(3", "Zp", "C"] {
            assert!(s.parse::<FieldDescriptor>().is_err(), "{:?} should be rejected", s);
        }
    }
}
