//! Computable model of the procyclic fields `PC(q;p)`: the union of
//! `GF(q^m)` over all `m` coprime to `p`, inside a fixed algebraic closure
//! of `GF(q)`.
//!
//! The model field `K` is never materialized. Every computation happens in
//! a finite level `GF(q^m)` chosen as the compositum (lcm of levels) of its
//! inputs, and membership/degree questions reduce to arithmetic on Frobenius
//! orbit lengths: an element of degree `m = p^s * t` over `GF(q)` (with
//! `gcd(t, p) = 1`) lies in `K` iff `s = 0`, and generates a degree-`p^s`
//! extension of `K` otherwise.

use num_integer::Integer;
use serde::Serialize;

use crate::descriptor::FieldDescriptor;
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, prime_power};
use crate::finfield::{Embedding, FfElement, FiniteField, Poly};
use crate::DEFAULT_AMBIENT_BITS;

/// Handle for the model field `PC(q;p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcyclicField {
    q: u64,
    p: u64,
    base_char: u64,
    base_deg: u32,
    cap_bits: u32,
}

impl ProcyclicField {
    pub fn new(q: u64, p: u64) -> Result<Self> {
        Self::with_cap(q, p, DEFAULT_AMBIENT_BITS)
    }

    pub fn with_cap(q: u64, p: u64, cap_bits: u32) -> Result<Self> {
        let (base_char, base_deg) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ProcyclicField { q, p, base_char, base_deg, cap_bits })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn characteristic(&self) -> u64 {
        self.base_char
    }

    pub fn cap_bits(&self) -> u32 {
        self.cap_bits
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Procyclic { q: self.q, p: self.p }
    }

    /// `GF(q)` itself.
    pub fn base_field(&self) -> Result<FiniteField> {
        FiniteField::make_field_with_cap(self.base_char, self.base_deg, self.cap_bits)
    }

    /// The finite level `GF(q^m)`.
    pub fn level_field(&self, m: u64) -> Result<FiniteField> {
        let degree = self
            .base_deg
            .checked_mul(u32::try_from(m).map_err(|_| Error::SizeCapExceeded {
                base: self.q,
                degree: u32::MAX,
                cap_bits: self.cap_bits,
            })?)
            .ok_or(Error::SizeCapExceeded { base: self.q, degree: u32::MAX, cap_bits: self.cap_bits })?;
        FiniteField::make_field_with_cap(self.base_char, degree, self.cap_bits)
    }

    /// Normalize a raw element of some `GF(q^N)` into a [`ProElement`]
    /// stored at its minimal level over `GF(q)`.
    pub fn element(&self, x: &FfElement) -> Result<ProElement> {
        if x.field().characteristic() != self.base_char {
            return Err(Error::CharacteristicMismatch {
                elem_char: x.field().characteristic(),
                field_char: self.base_char,
            });
        }
        let e = x.degree_over_prime();
        // Degree over GF(q) = lcm(e, k) / k for k = [GF(q):prime].
        let k = self.base_deg;
        let level = (e as u64).lcm(&(k as u64)) / k as u64;
        let minimal_deg = ((e as u64).lcm(&(k as u64))) as u32;
        let value = if minimal_deg == x.field().extension_degree() {
            x.clone()
        } else {
            // Pull back to the Frobenius-degree subfield, then embed into
            // the minimal field containing both the element and GF(q).
            let small = FiniteField::make_field_with_cap(self.base_char, e, self.cap_bits)?;
            let down = Embedding::new(&small, x.field())?;
            let in_small = down.preimage(x).expect("element lies in its Frobenius-degree subfield");
            let minimal = FiniteField::make_field_with_cap(self.base_char, minimal_deg, self.cap_bits)?;
            Embedding::new(&small, &minimal)?.apply(&in_small)
        };
        Ok(ProElement { value, level, q: self.q })
    }

    /// True iff the element lies in the model field `K`, i.e. its degree
    /// over `GF(q)` is coprime to `p`.
    pub fn member_of_k(&self, x: &ProElement) -> Result<bool> {
        self.check(x)?;
        Ok(x.level % self.p != 0)
    }

    /// `[K(x):K]`: the `p`-part of the degree of `x` over `GF(q)`.
    pub fn degree_over_k(&self, x: &ProElement) -> Result<u64> {
        self.check(x)?;
        let mut d = 1u64;
        let mut level = x.level;
        while level % self.p == 0 {
            d *= self.p;
            level /= self.p;
        }
        Ok(d)
    }

    fn check(&self, x: &ProElement) -> Result<()> {
        if x.q != self.q || x.value.field().characteristic() != self.base_char {
            return Err(Error::CharacteristicMismatch {
                elem_char: x.value.field().characteristic(),
                field_char: self.base_char,
            });
        }
        Ok(())
    }
}

/// Element of the fixed algebraic closure of `GF(q)`, stored at its minimal
/// level: the ambient field is `GF(q^m)` where `m` is the degree of the
/// element over `GF(q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProElement {
    value: FfElement,
    level: u64,
    q: u64,
}

impl ProElement {
    pub fn value(&self) -> &FfElement {
        &self.value
    }

    /// Degree over `GF(q)`.
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn ambient(&self) -> &FiniteField {
        self.value.field()
    }
}

/// Degrees of the irreducible-over-`K` factors of a monic squarefree
/// polynomial over `GF(q)`, for `K = PC(q;p)`.
///
/// Each `GF(q)`-irreducible factor of degree `m = p^s * t` (with `t` coprime
/// to `p`) splits over `K` into `t` factors of degree `p^s`, because its
/// roots have degree `p^s` over `K`. The returned multiset is sorted and
/// always sums to `deg f`.
pub fn factor_degrees_over_k(f: &Poly, pc: &ProcyclicField) -> Result<Vec<u64>> {
    factor_degrees_over_k_seeded(f, pc, crate::DEFAULT_SEED)
}

/// Same as [`factor_degrees_over_k`] with an explicit seed for the
/// equal-degree splitting; the seed only changes internal search order,
/// never the returned multiset.
pub fn factor_degrees_over_k_seeded(f: &Poly, pc: &ProcyclicField, seed: u64) -> Result<Vec<u64>> {
    let base = pc.base_field()?;
    if f.field() != &base {
        return Err(Error::InvalidArgument {
            argument: "f",
            reason: format!("polynomial must live over {}", base),
        });
    }
    let deg = match f.degree() {
        None | Some(0) => {
            return Err(Error::InvalidArgument {
                argument: "f",
                reason: "need a nonconstant polynomial".into(),
            })
        }
        Some(d) => d,
    };
    if !f.is_monic() {
        return Err(Error::InvalidArgument { argument: "f", reason: "polynomial must be monic".into() });
    }
    if (pc.q as f64).powi(deg as i32) > (1u128 << pc.cap_bits.min(80)) as f64 {
        return Err(Error::SizeCapExceeded {
            base: pc.q,
            degree: deg as u32,
            cap_bits: pc.cap_bits,
        });
    }
    let derivative = f.derivative();
    if derivative.is_zero() || f.gcd(&derivative).degree() != Some(0) {
        return Err(Error::InvalidArgument {
            argument: "f",
            reason: "polynomial must be squarefree".into(),
        });
    }
    let mut degrees = Vec::new();
    for (factor, mult) in f.factor_seeded(seed)? {
        debug_assert_eq!(mult, 1);
        let m = factor.degree().unwrap() as u64;
        let mut ppart = 1u64;
        let mut t = m;
        while t % pc.p == 0 {
            ppart *= pc.p;
            t /= pc.p;
        }
        for _ in 0..t {
            degrees.push(ppart);
        }
    }
    degrees.sort_unstable();
    debug_assert_eq!(degrees.iter().sum::<u64>(), deg as u64);
    Ok(degrees)
}

/// Anti-closure report: the intersection `K'` of all finite non-trivial
/// extensions of `K`, which is non-trivial exactly when `K` has a unique
/// minimal extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnticlosureReport {
    pub field: String,
    pub is_trivial: bool,
    /// `[K':K]`; 1 when trivial.
    pub degree: u64,
    /// Minimal polynomial over the base field of a generator of `K'`,
    /// absent when trivial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_min_poly: Option<String>,
    /// For the trivial case: two minimal extensions of coprime prime
    /// degrees whose intersection is the base field.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    pub reason: String,
}

/// Compute the anti-closure report for a descriptor in the computable
/// vocabulary: `GF(q)`, `PC(q;p)`, or `RC`.
pub fn anticlosure(desc: &FieldDescriptor, cap_bits: u32) -> Result<AnticlosureReport> {
    match desc {
        FieldDescriptor::Finite { p, n } => {
            // GF(q^2) and GF(q^3) are minimal extensions of coprime prime
            // degrees; inside the closure their intersection has degree
            // gcd(2n, 3n) = n, i.e. is GF(q) itself. So K' = K.
            let w2 = FieldDescriptor::Finite { p: *p, n: n * 2 };
            let w3 = FieldDescriptor::Finite { p: *p, n: n * 3 };
            assert_eq!((2 * n).gcd(&(3 * n)), *n);
            Ok(AnticlosureReport {
                field: desc.to_string(),
                is_trivial: true,
                degree: 1,
                generator_min_poly: None,
                witnesses: vec![w2.to_string(), w3.to_string()],
                reason: "intersection of the witness extensions is the base field (degree gcd)"
                    .into(),
            })
        }
        FieldDescriptor::Procyclic { q, p } => {
            let pc = ProcyclicField::with_cap(*q, *p, cap_bits)?;
            let base = pc.base_field()?;
            let min_poly = smallest_irreducible(&base, *p as usize)?;
            Ok(AnticlosureReport {
                field: desc.to_string(),
                is_trivial: false,
                degree: *p,
                generator_min_poly: Some(min_poly.to_string()),
                witnesses: Vec::new(),
                reason: format!(
                    "unique minimal extension: the degree-{} level of the closure of GF({})",
                    p, q
                ),
            })
        }
        FieldDescriptor::RealClosed => Ok(AnticlosureReport {
            field: desc.to_string(),
            is_trivial: false,
            degree: 2,
            // T^2 + 1: the generator is i with i^2 = -1.
            generator_min_poly: Some("1,0,1".into()),
            witnesses: Vec::new(),
            reason: "the algebraic closure RC(i) is the unique minimal extension".into(),
        }),
        FieldDescriptor::Rational => Err(Error::InvalidArgument {
            argument: "field",
            reason: "anti-closure report requires GF(q), PC(q;p), or RC".into(),
        }),
    }
}

/// Lexicographically smallest monic irreducible polynomial of the given
/// degree over an arbitrary finite field, in the canonical element order.
pub fn smallest_irreducible(field: &FiniteField, degree: usize) -> Result<Poly> {
    let q = field.order();
    let count = (q as u128).pow(degree as u32);
    if count > 1u128 << 40 {
        return Err(Error::SizeCapExceeded { base: q, degree: degree as u32, cap_bits: 40 });
    }
    // Skip candidates with zero constant term (divisible by X) except in
    // degree one, where X itself is the first candidate.
    let start = if degree == 1 { 0 } else { count / q as u128 };
    for rank in start..count {
        let mut digits = vec![0u64; degree];
        let mut r = rank;
        // c_0 is most significant, matching lex order on coefficient tuples.
        for i in (0..degree).rev() {
            digits[i] = (r % q as u128) as u64;
            r /= q as u128;
        }
        let mut coeffs: Vec<FfElement> =
            digits.iter().map(|&d| field.element_from_rank(d)).collect();
        coeffs.push(field.one());
        let candidate = Poly::from_elements(field, coeffs);
        if candidate.is_irreducible()? {
            return Ok(candidate);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
