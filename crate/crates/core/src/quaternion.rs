//! Quaternion algebras `Q(a,b)` over `Q` and over odd finite fields.
//!
//! Basis `1, i, j, k` with `i^2 = a`, `j^2 = b`, and `ij = k = -ji` (so
//! `k^2 = -ab` and, over `Q(-1,-1)`, `ijk = -1`: the Hamilton quaternions
//! come out literally). The alternative convention `ij = -k` is the same
//! algebra under `k -> -k`.
//!
//! The norm form is `N(t + xi + yj + zk) = t^2 - a x^2 - b y^2 + a b z^2`;
//! the algebra is a division algebra iff the norm form is anisotropic, and
//! [`classify`](QuaternionAlgebra::classify) decides the dichotomy with
//! checkable evidence: a zero-norm witness for Split, local Hilbert-symbol
//! obstructions for Division over `Q`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{hilbert_symbol, BigRational, Place, SquarefreePair};
use crate::finfield::{FfElement, FiniteField};

/// Base-field scalar for quaternion coordinates.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Option<Self>;
    /// Same base field (always true over `Q`).
    fn compatible(&self, other: &Self) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::from(BigInt::from(1))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

impl Scalar for FfElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, other: &Self) -> Self {
        FfElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FfElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FfElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        FfElement::neg(self)
    }
    fn is_zero(&self) -> bool {
        FfElement::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }
}

#[derive(Debug)]
struct AlgebraRepr<S> {
    a: S,
    b: S,
}

/// The algebra `Q(a,b)`; characteristic 2 bases are rejected.
#[derive(Debug)]
pub struct QuaternionAlgebra<S: Scalar>(Arc<AlgebraRepr<S>>);

impl<S: Scalar> Clone for QuaternionAlgebra<S> {
    fn clone(&self) -> Self {
        QuaternionAlgebra(Arc::clone(&self.0))
    }
}

impl<S: Scalar> PartialEq for QuaternionAlgebra<S> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.a == other.0.a && self.0.b == other.0.b && self.0.a.compatible(&other.0.a))
    }
}

impl<S: Scalar> fmt::Display for QuaternionAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({},{})", self.0.a, self.0.b)
    }
}

impl<S: Scalar> QuaternionAlgebra<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        if a.characteristic() == 2 {
            return Err(Error::InvalidArgument {
                argument: "base",
                reason: "quaternion algebras need characteristic different from 2".into(),
            });
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidArgument {
                argument: if a.is_zero() { "a" } else { "b" },
                reason: "structure constants must be nonzero".into(),
            });
        }
        if !a.compatible(&b) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(QuaternionAlgebra(Arc::new(AlgebraRepr { a, b })))
    }

    pub fn a(&self) -> &S {
        &self.0.a
    }

    pub fn b(&self) -> &S {
        &self.0.b
    }

    pub fn element(&self, t: S, x: S, y: S, z: S) -> Result<QuaternionElement<S>> {
        for c in [&t, &x, &y, &z] {
            if !c.compatible(&self.0.a) {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(QuaternionElement { algebra: self.clone(), coords: [t, x, y, z] })
    }

    pub fn zero(&self) -> QuaternionElement<S> {
        let z = self.0.a.zero_like();
        QuaternionElement { algebra: self.clone(), coords: [z.clone(), z.clone(), z.clone(), z] }
    }

    pub fn one(&self) -> QuaternionElement<S> {
        let z = self.0.a.zero_like();
        QuaternionElement {
            algebra: self.clone(),
            coords: [self.0.a.one_like(), z.clone(), z.clone(), z],
        }
    }
}

/// Element `t + xi + yj + zk` of a quaternion algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionElement<S: Scalar> {
    algebra: QuaternionAlgebra<S>,
    coords: [S; 4],
}

impl<S: Scalar> fmt::Display for QuaternionElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t, x, y, z] = &self.coords;
        write!(f, "({}, {}, {}, {})", t, x, y, z)
    }
}

impl<S: Scalar> QuaternionElement<S> {
    pub fn algebra(&self) -> &QuaternionAlgebra<S> {
        &self.algebra
    }

    pub fn coords(&self) -> &[S; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Bilinear product under `i^2 = a`, `j^2 = b`, `ij = k = -ji`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let a = &self.algebra.0.a;
        let b = &self.algebra.0.b;
        let ab = a.mul(b);
        let [t1, x1, y1, z1] = &self.coords;
        let [t2, x2, y2, z2] = &other.coords;
        // 1: t1 t2 + a x1 x2 + b y1 y2 - ab z1 z2
        let t = t1
            .mul(t2)
            .add(&a.mul(&x1.mul(x2)))
            .add(&b.mul(&y1.mul(y2)))
            .sub(&ab.mul(&z1.mul(z2)));
        // i: t1 x2 + x1 t2 - b y1 z2 + b z1 y2
        let x = t1
            .mul(x2)
            .add(&x1.mul(t2))
            .sub(&b.mul(&y1.mul(z2)))
            .add(&b.mul(&z1.mul(y2)));
        // j: t1 y2 + y1 t2 + a x1 z2 - a z1 x2
        let y = t1
            .mul(y2)
            .add(&y1.mul(t2))
            .add(&a.mul(&x1.mul(z2)))
            .sub(&a.mul(&z1.mul(x2)));
        // k: t1 z2 + z1 t2 + x1 y2 - y1 x2
        let z = t1.mul(z2).add(&z1.mul(t2)).add(&x1.mul(y2)).sub(&y1.mul(x2));
        Ok(QuaternionElement { algebra: self.algebra.clone(), coords: [t, x, y, z] })
    }

    /// `N(t + xi + yj + zk) = t^2 - a x^2 - b y^2 + a b z^2`.
    pub fn norm(&self) -> S {
        let a = &self.algebra.0.a;
        let b = &self.algebra.0.b;
        let [t, x, y, z] = &self.coords;
        t.mul(t)
            .sub(&a.mul(&x.mul(x)))
            .sub(&b.mul(&y.mul(y)))
            .add(&a.mul(b).mul(&z.mul(z)))
    }

    pub fn conjugate(&self) -> Self {
        let [t, x, y, z] = &self.coords;
        QuaternionElement {
            algebra: self.algebra.clone(),
            coords: [t.clone(), x.neg(), y.neg(), z.neg()],
        }
    }

    /// `u^-1 = conj(u) / N(u)`; a zero norm means `u` is a zero-divisor
    /// candidate and is reported as an error.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        let inv = n.try_inv().ok_or_else(|| Error::ZeroNorm(self.to_string()))?;
        let conj = self.conjugate();
        let coords = conj.coords.map(|c| c.mul(&inv));
        Ok(QuaternionElement { algebra: self.algebra.clone(), coords })
    }
}

/// Outcome of the division/split classification, with evidence.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyVerdict<S: Scalar> {
    /// Division algebra; over `Q` the obstruction lists every place where
    /// the Hilbert symbol is -1.
    Division { obstruction: Vec<(Place, i32)> },
    /// Matrix algebra; the witness is nonzero with norm exactly zero.
    Split { witness: QuaternionElement<S> },
}

impl<S: Scalar> ClassifyVerdict<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            ClassifyVerdict::Division { .. } => "Division",
            ClassifyVerdict::Split { .. } => "Split",
        }
    }
}

impl QuaternionAlgebra<FfElement> {
    pub fn base_field(&self) -> &FiniteField {
        self.0.a.field()
    }

    /// Over a finite field every quaternion algebra splits; the classifier
    /// produces the witness constructively.
    ///
    /// Search order (deterministic): a ternary isotropy scan of
    /// `x^2 - a y^2 - b z^2` in lexicographic canonical order for
    /// `q <= 100`; for larger fields a structured scan fixing `z = 1` and
    /// walking `y` upward, taking the smallest square root for `x`. The
    /// ternary zero `(x, y, z)` assembles to the quaternion `x + yi + zj`.
    pub fn classify(&self) -> Result<ClassifyVerdict<FfElement>> {
        let field = self.base_field().clone();
        let q = field.order();
        if q > 1 << 16 {
            return Err(Error::SizeCapExceeded {
                base: field.characteristic(),
                degree: field.extension_degree(),
                cap_bits: 16,
            });
        }
        let a = &self.0.a;
        let b = &self.0.b;
        let found = if q <= 100 {
            let mut hit = None;
            'scan: for rx in 0..q {
                let x = field.element_from_rank(rx);
                let xx = x.square();
                for ry in 0..q {
                    let y = field.element_from_rank(ry);
                    let head = xx.sub(&a.mul(&y.square()));
                    for rz in 0..q {
                        if rx == 0 && ry == 0 && rz == 0 {
                            continue;
                        }
                        let z = field.element_from_rank(rz);
                        if head.sub(&b.mul(&z.square())).is_zero() {
                            hit = Some((x, y, z));
                            break 'scan;
                        }
                    }
                }
            }
            hit
        } else {
            // smallest square root per value, built by a descending scan
            let mut sqrt = vec![None; q as usize];
            for r in (0..q).rev() {
                let e = field.element_from_rank(r);
                sqrt[e.square().rank() as usize] = Some(r);
            }
            let mut hit = None;
            for ry in 0..q {
                let y = field.element_from_rank(ry);
                let target = a.mul(&y.square()).add(b);
                if let Some(rx) = sqrt[target.rank() as usize] {
                    hit = Some((field.element_from_rank(rx), y, field.one()));
                    break;
                }
            }
            hit
        };
        let (x, y, z) = found.expect("ternary forms over finite fields are isotropic");
        let witness = self.element(x, y, z, field.zero())?;
        debug_assert!(!witness.is_zero());
        debug_assert!(witness.norm().is_zero());
        Ok(ClassifyVerdict::Split { witness })
    }
}

/// Zero-norm element of `Q(m^2 b, b)` over `GF(q)` when `-1` is a square:
/// with `i0^2 = -1`, the element `i0 m b + k` has norm
/// `-(m b)^2 + (m^2 b) b = 0`, so proportional structure constants force a
/// split. Returns the algebra and the witness.
pub fn zero_norm_witness(
    field: &FiniteField,
    m: &FfElement,
    b: &FfElement,
) -> Result<(QuaternionAlgebra<FfElement>, QuaternionElement<FfElement>)> {
    if m.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument {
            argument: if m.is_zero() { "m" } else { "b" },
            reason: "must be nonzero".into(),
        });
    }
    if field.order() % 4 != 1 {
        return Err(Error::InvalidArgument {
            argument: "field",
            reason: format!("-1 is not a square in {} (need q = 1 mod 4)", field),
        });
    }
    let minus_one = field.one().neg();
    let i0 = field
        .elements()
        .find(|x| x.square() == minus_one)
        .expect("q = 1 mod 4 guarantees a square root of -1");
    let a = m.square().mul(b);
    let algebra = QuaternionAlgebra::new(a, b.clone())?;
    let witness = algebra.element(i0.mul(m).mul(b), field.zero(), field.zero(), field.one())?;
    assert!(!witness.is_zero());
    assert!(witness.norm().is_zero());
    Ok((algebra, witness))
}

impl QuaternionAlgebra<BigRational> {
    /// Decide division/split over `Q`.
    ///
    /// Division verdicts come from local evidence: the Hilbert symbol at
    /// some place in `{2, infinity} + {odd primes dividing ab}` is -1 (the
    /// symbol is +1 everywhere else automatically). Split verdicts are
    /// self-certifying: a bounded search produces an explicit zero-norm
    /// witness.
    ///
    /// Witness search order (deterministic): on the squarefree reduction
    /// `(a', b')`, scan shells of increasing `h = max(y, z) >= 1` with
    /// `(y, z)` lexicographic inside a shell, and accept the first pair
    /// where `a' y^2 + b' z^2` is a perfect square `x^2`, taking the
    /// nonnegative root. The triple maps back to the original algebra by
    /// rescaling the y and z coordinates.
    pub fn classify(&self, max_height: u64) -> Result<ClassifyVerdict<BigRational>> {
        let pair = SquarefreePair::reduce(&self.0.a, &self.0.b)?;
        let sa = bounded_i64(pair.a(), "a")?;
        let sb = bounded_i64(pair.b(), "b")?;
        let mut places = vec![Place::Finite(2)];
        let mut odd: Vec<u64> = Vec::new();
        for v in [sa, sb] {
            for (p, _) in crate::finfield::factor_u64(v.unsigned_abs()) {
                if p > 2 && !odd.contains(&p) {
                    odd.push(p);
                }
            }
        }
        odd.sort_unstable();
        places.extend(odd.into_iter().map(Place::Finite));
        places.push(Place::Infinity);
        let ra = BigRational::from(BigInt::from(sa));
        let rb = BigRational::from(BigInt::from(sb));
        let mut obstruction = Vec::new();
        for place in places {
            let s = hilbert_symbol(&ra, &rb, place)?;
            if s == -1 {
                obstruction.push((place, s));
            }
        }
        if !obstruction.is_empty() {
            return Ok(ClassifyVerdict::Division { obstruction });
        }
        let (x, y, z) = ternary_witness_search(sa, sb, max_height)
            .ok_or(Error::WitnessSearchExhausted { height: max_height })?;
        // scale back: a = a' ca^2, b = b' cb^2
        let ca = exact_sqrt(&(self.0.a.clone() / ra))?;
        let cb = exact_sqrt(&(self.0.b.clone() / rb))?;
        let witness = self.element(
            BigRational::from(BigInt::from(x)),
            BigRational::from(BigInt::from(y)) / ca,
            BigRational::from(BigInt::from(z)) / cb,
            BigRational::zero(),
        )?;
        assert!(!witness.is_zero());
        assert!(Zero::is_zero(&witness.norm()), "witness must have exact zero norm");
        Ok(ClassifyVerdict::Split { witness })
    }
}

fn bounded_i64(reduced: &BigInt, argument: &'static str) -> Result<i64> {
    let r = reduced.to_i64().ok_or_else(|| Error::InvalidArgument {
        argument,
        reason: "square class too large".into(),
    })?;
    if r.unsigned_abs() > 1_000_000 {
        return Err(Error::InvalidArgument {
            argument,
            reason: format!("squarefree part {} exceeds 10^6", r),
        });
    }
    Ok(r)
}

fn exact_sqrt(ratio: &BigRational) -> Result<BigRational> {
    let num = ratio.numer();
    let den = ratio.denom();
    if num.is_negative() {
        return Err(Error::InvalidArgument {
            argument: "a",
            reason: "square-class cofactor must be positive".into(),
        });
    }
    let ns = num.sqrt();
    let ds = den.sqrt();
    if &(&ns * &ns) != num || &(&ds * &ds) != den {
        return Err(Error::InvalidArgument {
            argument: "a",
            reason: "square-class cofactor is not a perfect square".into(),
        });
    }
    Ok(BigRational::new(ns, ds))
}

/// Nonnegative integral zero of `x^2 - a y^2 - b z^2` with
/// `1 <= max(y, z) <= max_height`, scanning shells outward; `None` when the
/// budget is exhausted.
fn ternary_witness_search(a: i64, b: i64, max_height: u64) -> Option<(i64, i64, i64)> {
    let isqrt = |v: i128| -> i128 {
        let r = (v as f64).sqrt() as i128;
        // float guess, then exact fixup
        let mut r = r.max(0);
        while r * r > v {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= v {
            r += 1;
        }
        r
    };
    let a = a as i128;
    let b = b as i128;
    for h in 1..=max_height as i128 {
        // shell max(y, z) = h, lexicographic (y, z)
        for y in 0..=h {
            let zs: &[std::ops::RangeInclusive<i128>] =
                if y < h { &[h..=h] } else { &[0..=h] };
            for zr in zs {
                for z in zr.clone() {
                    let t = a * y * y + b * z * z;
                    if t < 0 {
                        continue;
                    }
                    let x = isqrt(t);
                    if x * x == t && (x != 0 || y != 0 || z != 0) {
                        return Some((x as i64, y as i64, z as i64));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn hamilton() -> QuaternionAlgebra<BigRational> {
        QuaternionAlgebra::new(rat(-1), rat(-1)).unwrap()
    }

    #[test]
    fn multiplication_table() {
        let h = hamilton();
        let zero = BigRational::zero;
        let i = h.element(zero(), rat(1), zero(), zero()).unwrap();
        let j = h.element(zero(), zero(), rat(1), zero()).unwrap();
        let k = h.element(zero(), zero(), zero(), rat(1)).unwrap();
        // ij = k, ji = -k, i^2 = a, j^2 = b, k^2 = -ab, ijk = -1
        assert_eq!(i.multiply(&j).unwrap(), k);
        assert_eq!(j.multiply(&i).unwrap(), h.element(zero(), zero(), zero(), rat(-1)).unwrap());
        assert_eq!(i.multiply(&i).unwrap(), h.element(rat(-1), zero(), zero(), zero()).unwrap());
        assert_eq!(k.multiply(&k).unwrap(), h.element(rat(-1), zero(), zero(), zero()).unwrap());
        let ijk = i.multiply(&j).unwrap().multiply(&k).unwrap();
        assert_eq!(ijk, h.element(rat(-1), zero(), zero(), zero()).unwrap());
        // unit
        let v = h.element(rat(3), rat(-2), rat(5), rat(7)).unwrap();
        assert_eq!(h.one().multiply(&v).unwrap(), v);
        assert_eq!(v.multiply(&h.one()).unwrap(), v);
    }

    #[test]
    fn expansion_example_in_hamilton() {
        let h = hamilton();
        let u = h.element(rat(1), rat(1), rat(1), rat(1)).unwrap();
        let v = h.element(rat(1), rat(-1), rat(-1), rat(-1)).unwrap();
        let four = h.element(rat(4), rat(0), rat(0), rat(0)).unwrap();
        assert_eq!(u.multiply(&v).unwrap(), four);
        assert_eq!(u.norm(), rat(4));
    }

    #[test]
    fn norm_examples() {
        let h = hamilton();
        let u = h.element(rat(1), rat(1), rat(1), rat(1)).unwrap();
        assert_eq!(u.norm(), rat(4));
        assert!(Scalar::is_zero(&h.zero().norm()));

        let g5 = FiniteField::make_field(5, 1).unwrap();
        let alg = QuaternionAlgebra::new(g5.scalar(2), g5.scalar(3)).unwrap();
        let u = alg
            .element(g5.scalar(1), g5.scalar(1), g5.scalar(0), g5.scalar(1))
            .unwrap();
        // 1 - 2 - 0 + 6 = 5 = 0 mod 5
        assert!(u.norm().is_zero());
    }

    #[test]
    fn inverse_examples() {
        let h = hamilton();
        let u = h.element(rat(1), rat(1), rat(1), rat(1)).unwrap();
        let inv = u.inverse().unwrap();
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        assert_eq!(
            inv,
            h.element(
                quarter.clone(),
                -quarter.clone(),
                -quarter.clone(),
                -quarter.clone()
            )
            .unwrap()
        );
        assert_eq!(u.multiply(&inv).unwrap(), h.one());
        assert_eq!(inv.multiply(&u).unwrap(), h.one());
        assert_eq!(h.one().inverse().unwrap(), h.one());

        let g5 = FiniteField::make_field(5, 1).unwrap();
        let alg = QuaternionAlgebra::new(g5.scalar(2), g5.scalar(3)).unwrap();
        let u = alg
            .element(g5.scalar(1), g5.scalar(1), g5.scalar(0), g5.scalar(1))
            .unwrap();
        assert!(matches!(u.inverse(), Err(Error::ZeroNorm(_))));
    }

    #[test]
    fn algebra_mismatch_is_rejected() {
        let h = hamilton();
        let other = QuaternionAlgebra::new(rat(-1), rat(-2)).unwrap();
        let u = h.one();
        let v = other.one();
        assert!(matches!(u.multiply(&v), Err(Error::AlgebraMismatch)));
        assert!(QuaternionAlgebra::new(rat(0), rat(1)).is_err());
        let g4 = FiniteField::make_field(2, 2).unwrap();
        assert!(QuaternionAlgebra::new(g4.one(), g4.one()).is_err());
    }

    #[test]
    fn classify_hamilton_is_division() {
        let h = hamilton();
        match h.classify(100).unwrap() {
            ClassifyVerdict::Division { obstruction } => {
                assert_eq!(
                    obstruction,
                    vec![(Place::Finite(2), -1), (Place::Infinity, -1)]
                );
            }
            other => panic!("expected Division, got {:?}", other),
        }
    }

    #[test]
    fn classify_split_with_unit_parameter() {
        // a = 1: N(1 + i) = 1 - a = 0
        for b in [-5i64, 2, 3, 7] {
            let alg = QuaternionAlgebra::new(rat(1), rat(b)).unwrap();
            match alg.classify(100).unwrap() {
                ClassifyVerdict::Split { witness } => {
                    assert!(Zero::is_zero(&witness.norm()));
                    assert_eq!(
                        witness,
                        alg.element(rat(1), rat(1), rat(0), rat(0)).unwrap()
                    );
                }
                other => panic!("expected Split, got {:?}", other),
            }
        }
    }

    #[test]
    fn classify_2_7_finds_the_small_witness() {
        let alg = QuaternionAlgebra::new(rat(2), rat(7)).unwrap();
        match alg.classify(10_000).unwrap() {
            ClassifyVerdict::Split { witness } => {
                // 3^2 = 2 + 7
                assert_eq!(
                    witness,
                    alg.element(rat(3), rat(1), rat(1), rat(0)).unwrap()
                );
                assert!(Zero::is_zero(&witness.norm()));
            }
            other => panic!("expected Split, got {:?}", other),
        }
    }

    #[test]
    fn classify_rescales_witness_to_the_original_constants() {
        // a = 8 reduces to 2, b = 28 reduces to 7
        let alg = QuaternionAlgebra::new(rat(8), rat(28)).unwrap();
        match alg.classify(10_000).unwrap() {
            ClassifyVerdict::Split { witness } => {
                assert!(Zero::is_zero(&witness.norm()));
                assert!(!witness.is_zero());
            }
            other => panic!("expected Split, got {:?}", other),
        }
    }

    #[test]
    fn classify_exhaustion_is_an_error() {
        // Q(2,3) is division at 2 and 3... use a split algebra with a tiny
        // budget instead: Q(2,7) has its smallest witness at height 1 in the
        // (y,z) shells, so exhaust something genuinely larger.
        // Q(61, 79) is split (61 = 5^2+6^2..., check symbols all +1 via the
        // classifier itself at a large budget), smallest witness beyond
        // height zero. Budget 0 exhausts immediately for any split algebra.
        let alg = QuaternionAlgebra::new(rat(2), rat(7)).unwrap();
        assert!(matches!(
            alg.classify(0),
            Err(Error::WitnessSearchExhausted { height: 0 })
        ));
    }

    #[test]
    fn classify_gf5_example() {
        let g5 = FiniteField::make_field(5, 1).unwrap();
        let alg = QuaternionAlgebra::new(g5.scalar(2), g5.scalar(3)).unwrap();
        match alg.classify().unwrap() {
            ClassifyVerdict::Split { witness } => {
                assert!(witness.norm().is_zero());
                assert!(!witness.is_zero());
                // first ternary zero in lex order: (0,1,1) -> witness j + k...
                // coordinates (t,x,y,z) = (0,1,1,0)
                assert_eq!(
                    witness,
                    alg.element(g5.scalar(0), g5.scalar(1), g5.scalar(1), g5.scalar(0))
                        .unwrap()
                );
            }
            other => panic!("expected Split, got {:?}", other),
        }
    }

    #[test]
    fn classify_structured_scan_matches_exhaustive_property() {
        // q > 100 uses the structured scan; verify the witness it returns.
        let g = FiniteField::make_field(101, 1).unwrap();
        for (a, b) in [(2u64, 3u64), (5, 7), (100, 99), (13, 13)] {
            let alg = QuaternionAlgebra::new(g.scalar(a), g.scalar(b)).unwrap();
            match alg.classify().unwrap() {
                ClassifyVerdict::Split { witness } => {
                    assert!(witness.norm().is_zero());
                    assert!(!witness.is_zero());
                }
                other => panic!("expected Split, got {:?}", other),
            }
        }
    }

    #[test]
    fn wedderburn_sweep_small() {
        // every quaternion algebra over GF(q) splits, q in {3, 9}
        for (p, n) in [(3u64, 1u32), (3, 2)] {
            let field = FiniteField::make_field(p, n).unwrap();
            for ra in 1..field.order() {
                for rb in 1..field.order() {
                    let alg = QuaternionAlgebra::new(
                        field.element_from_rank(ra),
                        field.element_from_rank(rb),
                    )
                    .unwrap();
                    match alg.classify().unwrap() {
                        ClassifyVerdict::Split { witness } => {
                            assert!(witness.norm().is_zero());
                            assert!(!witness.is_zero());
                        }
                        other => panic!("expected Split, got {:?}", other),
                    }
                }
            }
        }
    }

    #[test]
    fn zero_norm_witness_examples() {
        let g13 = FiniteField::make_field(13, 1).unwrap();
        let (alg, w) = zero_norm_witness(&g13, &g13.scalar(3), &g13.scalar(2)).unwrap();
        // i0 = 5 (smallest root of -1 mod 13), t = 5*3*2 = 30 = 4 mod 13
        assert_eq!(*alg.a(), g13.scalar(5));
        assert_eq!(
            w,
            alg.element(g13.scalar(4), g13.scalar(0), g13.scalar(0), g13.scalar(1))
                .unwrap()
        );
        assert!(w.norm().is_zero());

        let g5 = FiniteField::make_field(5, 1).unwrap();
        let (alg, w) = zero_norm_witness(&g5, &g5.scalar(1), &g5.scalar(1)).unwrap();
        assert_eq!(
            w,
            alg.element(g5.scalar(2), g5.scalar(0), g5.scalar(0), g5.scalar(1))
                .unwrap()
        );

        let (_, w13) = zero_norm_witness(&g13, &g13.scalar(1), &g13.scalar(1)).unwrap();
        assert_eq!(w13.coords()[0], g13.scalar(5));

        // -1 is not a square mod 7
        let g7 = FiniteField::make_field(7, 1).unwrap();
        assert!(zero_norm_witness(&g7, &g7.scalar(1), &g7.scalar(1)).is_err());
    }

    #[test]
    fn zero_norm_witness_exhaustive_small_fields() {
        for q in [5u64, 13, 17] {
            let field = FiniteField::make_field(q, 1).unwrap();
            for m in 1..q {
                for b in 1..q {
                    let (_, w) =
                        zero_norm_witness(&field, &field.scalar(m), &field.scalar(b)).unwrap();
                    assert!(w.norm().is_zero());
                    assert!(!w.is_zero());
                }
            }
        }
    }

    #[test]
    fn norm_is_multiplicative_over_q_and_finite_fields() {
        let mut rng = StdRng::seed_from_u64(7);
        let h = hamilton();
        let alg2 = QuaternionAlgebra::new(rat(3), rat(-5)).unwrap();
        for _ in 0..500 {
            for alg in [&h, &alg2] {
                let mut c = || rat(rng.gen_range(-9..=9));
                let u = alg.element(c(), c(), c(), c()).unwrap();
                let v = alg.element(c(), c(), c(), c()).unwrap();
                let uv = u.multiply(&v).unwrap();
                assert_eq!(uv.norm(), u.norm().mul(&v.norm()));
            }
        }
        for q in [3u64, 5, 7, 13] {
            let field = FiniteField::make_field(q, 1).unwrap();
            let alg = QuaternionAlgebra::new(field.scalar(q - 1), field.scalar(2)).unwrap();
            for _ in 0..500 {
                let mut c = || field.random_element(&mut rng);
                let u = alg.element(c(), c(), c(), c()).unwrap();
                let v = alg.element(c(), c(), c(), c()).unwrap();
                let uv = u.multiply(&v).unwrap();
                assert_eq!(uv.norm(), u.norm().mul(&v.norm()));
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = StdRng::seed_from_u64(11);
        let h = hamilton();
        for _ in 0..200 {
            let mut c = || rat(rng.gen_range(-5..=5));
            let u = h.element(c(), c(), c(), c()).unwrap();
            let v = h.element(c(), c(), c(), c()).unwrap();
            let w = h.element(c(), c(), c(), c()).unwrap();
            let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
            let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
            assert_eq!(left, right);
        }
        let field = FiniteField::make_field(7, 1).unwrap();
        let alg = QuaternionAlgebra::new(field.scalar(3), field.scalar(5)).unwrap();
        for _ in 0..200 {
            let mut c = || field.random_element(&mut rng);
            let u = alg.element(c(), c(), c(), c()).unwrap();
            let v = alg.element(c(), c(), c(), c()).unwrap();
            let w = alg.element(c(), c(), c(), c()).unwrap();
            let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
            let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn hamilton_inverse_succeeds_on_random_nonzero_elements() {
        // anisotropy of the Hamilton norm form over Q
        let mut rng = StdRng::seed_from_u64(13);
        let h = hamilton();
        for _ in 0..500 {
            let mut c = || rat(rng.gen_range(-20..=20));
            let u = h.element(c(), c(), c(), c()).unwrap();
            if u.is_zero() {
                continue;
            }
            let inv = u.inverse().unwrap();
            assert_eq!(u.multiply(&inv).unwrap(), h.one());
        }
    }
}
