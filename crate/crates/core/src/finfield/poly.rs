//! Univariate polynomials over `GF(q)` with distinct-degree and
//! equal-degree factorization.
//!
//! Text format (shared with the CLI): ascending coefficients, e.g. `1,0,1`
//! is `1 + X^2`. Over extension fields the coefficients are themselves
//! comma-separated residue lists, so the coefficient separator becomes `;`.
//!
//! Equal-degree splitting draws random polynomials from a seeded generator;
//! the factor list is sorted before it is returned, so the output does not
//! depend on the seed.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

use super::{FfElement, FiniteField};
use crate::error::{Error, Result};
use crate::DEFAULT_SEED;

/// Polynomial with ascending coefficients and no trailing zeros; the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<FfElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly[{}] over {}", self, self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let sep = if self.field.extension_degree() == 1 { "," } else { ";" };
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl Poly {
    pub fn zero(field: &FiniteField) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FiniteField) -> Self {
        Poly::constant(field.one())
    }

    pub fn x(field: &FiniteField) -> Self {
        Poly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    pub fn constant(c: FfElement) -> Self {
        let field = c.field().clone();
        Poly::from_elements(&field, vec![c])
    }

    pub fn from_elements(field: &FiniteField, coeffs: Vec<FfElement>) -> Self {
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient from a different field");
        }
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Polynomial with prime-field coefficients `r mod p`.
    pub fn from_residues(field: &FiniteField, residues: &[u64]) -> Self {
        let coeffs = residues.iter().map(|&r| field.scalar(r)).collect();
        Poly::from_elements(field, coeffs)
    }

    /// Parse the CLI text format relative to a coefficient field.
    pub fn parse(field: &FiniteField, text: &str) -> Result<Self> {
        let sep = if field.extension_degree() == 1 { ',' } else { ';' };
        let mut coeffs = Vec::new();
        for part in text.trim().split(sep) {
            coeffs.push(field.parse_element(part)?);
        }
        Ok(Poly::from_elements(field, coeffs))
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeff_slice(&self) -> &[FfElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&FfElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.leading(), Some(c) if c.is_one())
    }

    pub fn coeff(&self, i: usize) -> FfElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, s: &FfElement) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.mul(s)).collect();
        Poly::from_elements(&self.field, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::from_elements(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Poly::from_elements(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut acc = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = acc[i + j].add(&a.mul(b));
            }
        }
        Poly::from_elements(&self.field, acc)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert_eq!(self.field, divisor.field);
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(&self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].mul(&lead_inv);
            quot[k - d] = q.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = rem[k - d + j].sub(&q.mul(dc));
            }
        }
        (Poly::from_elements(&self.field, quot), Poly::from_elements(&self.field, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut acc = self.field.zero();
                let mut k = i as u64 % self.field.characteristic();
                let mut term = c.clone();
                // multiply c by the integer i via double-and-add on residues
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc.add(&term);
                    }
                    k >>= 1;
                    if k > 0 {
                        term = term.add(&term);
                    }
                }
                acc
            })
            .collect();
        Poly::from_elements(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FfElement) -> FfElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Map a polynomial with prime-field (constant) coefficients into a
    /// larger field over the same prime.
    pub fn lift_scalars(&self, target: &FiniteField) -> Poly {
        assert_eq!(self.field.characteristic(), target.characteristic());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                assert!(
                    c.coeffs().iter().skip(1).all(|&v| v == 0),
                    "coefficient is not prime-field valued"
                );
                target.scalar(c.coeffs()[0])
            })
            .collect();
        Poly::from_elements(target, coeffs)
    }

    pub fn pow_mod_u64(&self, exp: u64, modulus: &Self) -> Self {
        self.pow_mod(&BigUint::from(exp), modulus)
    }

    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Poly::one(&self.field).rem(modulus);
        let mut base = self.rem(modulus);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Deterministic irreducibility test: `f` of degree `d` over `GF(q)` is
    /// irreducible iff `X^(q^d) = X (mod f)` and `gcd(X^(q^(d/l)) - X, f) = 1`
    /// for every prime `l | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => {
                return Err(Error::InvalidArgument {
                    argument: "f",
                    reason: "zero or constant polynomial has no irreducibility".into(),
                })
            }
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let q = BigUint::from(self.field.order());
        let x = Poly::x(&self.field);
        let xqd = x.pow_mod(&q.pow(d as u32), &f);
        if xqd != x {
            return Ok(false);
        }
        for (l, _) in super::factor_u64(d as u64) {
            let e = q.pow((d as u64 / l) as u32);
            let h = x.pow_mod(&e, &f).sub(&x);
            let g = h.gcd(&f);
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Distinct roots in the coefficient field, in canonical element order.
    pub fn roots(&self) -> Vec<FfElement> {
        self.roots_seeded(DEFAULT_SEED)
    }

    pub fn roots_seeded(&self, seed: u64) -> Vec<FfElement> {
        let Some(d) = self.degree() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let q = self.field.order();
        let x = Poly::x(&self.field);
        let xq = x.pow_mod_u64(q, &f);
        let linear_part = xq.sub(&x).gcd(&f);
        let mut out = Vec::new();
        if linear_part.degree() == Some(0) {
            return out;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stack = vec![linear_part];
        while let Some(g) = stack.pop() {
            match g.degree() {
                Some(1) => {
                    out.push(g.coeff(0).neg());
                }
                Some(_) => {
                    let (a, b) = split_once(&g, 1, &mut rng);
                    stack.push(a);
                    stack.push(b);
                }
                None => unreachable!(),
            }
        }
        out.sort_by(|a, b| a.cmp_lex(b));
        out
    }

    /// Factorization into monic irreducibles with multiplicity, under the
    /// default splitting seed.
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        self.factor_seeded(DEFAULT_SEED)
    }

    pub fn factor_seeded(&self, seed: u64) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument {
                argument: "f",
                reason: "cannot factor the zero polynomial".into(),
            });
        }
        let mut out: Vec<(Poly, u32)> = Vec::new();
        if self.degree() == Some(0) {
            return Ok(out);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monic = self.monic();
        for (part, mult) in squarefree_decomposition(&monic) {
            for (irr, d) in distinct_degree(&part) {
                for factor in equal_degree(&irr, d, &mut rng) {
                    out.push((factor, mult));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            da.cmp(&db).then_with(|| {
                let ra: Vec<u64> = a.coeffs.iter().map(|c| c.rank()).collect();
                let rb: Vec<u64> = b.coeffs.iter().map(|c| c.rank()).collect();
                ra.cmp(&rb)
            })
        });
        debug_assert_eq!(
            {
                let mut prod = Poly::constant(self.leading().unwrap().clone());
                for (f, m) in &out {
                    for _ in 0..*m {
                        prod = prod.mul(f);
                    }
                }
                prod
            },
            *self
        );
        Ok(out)
    }
}

/// Squarefree parts with multiplicities: the product of `part^mult` is the
/// monic input.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sf_inner(f, 1, &mut out);
    out
}

fn sf_inner(f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.field().characteristic() as u32;
    let fp = f.derivative();
    if fp.is_zero() {
        sf_inner(&pth_root(f), mult * p, out);
        return;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree() != Some(0) {
            out.push((z, mult * i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.degree() != Some(0) {
        sf_inner(&pth_root(&c), mult * p, out);
    }
}

/// For `g(X) = h(X)^p` (all exponents divisible by p), recover `h`: the
/// support sits on multiples of `p` and the coefficients are p-th powers.
fn pth_root(g: &Poly) -> Poly {
    let field = g.field();
    let p = field.characteristic() as usize;
    // c^(q/p) is the p-th root of c, because c^q = c.
    let root_exp = field.order() / field.characteristic();
    let mut coeffs = Vec::new();
    for (i, c) in g.coeff_slice().iter().enumerate() {
        if i % p == 0 {
            coeffs.push(c.pow(root_exp));
        } else {
            assert!(c.is_zero(), "polynomial is not a p-th power");
        }
    }
    Poly::from_elements(field, coeffs)
}

/// Distinct-degree stage: splits a monic squarefree polynomial into products
/// of irreducibles of equal degree, returned as (product, degree).
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.order();
    let mut out = Vec::new();
    let mut v = f.clone();
    let x = Poly::x(&field);
    let mut h = x.clone();
    let mut d = 0usize;
    while v.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > v.degree().unwrap() {
            let deg = v.degree().unwrap();
            out.push((v, deg));
            break;
        }
        h = h.pow_mod_u64(q, &v);
        let g = h.sub(&x).gcd(&v);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            v = v.div_exact(&g);
            h = h.rem(&v);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting of a product of distinct monic
/// irreducibles of degree `d`.
fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let deg = g.degree().unwrap();
    if deg == d {
        return vec![g.clone()];
    }
    let (a, b) = split_once(g, d, rng);
    let mut out = equal_degree(&a, d, rng);
    out.extend(equal_degree(&b, d, rng));
    out
}

fn split_once(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> (Poly, Poly) {
    let field = g.field().clone();
    let deg = g.degree().unwrap();
    let p = field.characteristic();
    loop {
        let coeffs: Vec<FfElement> =
            (0..deg).map(|_| field.random_element(rng)).collect();
        let r = Poly::from_elements(&field, coeffs);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let pre = r.gcd(g);
        if proper(&pre, deg) {
            return (pre.clone(), g.div_exact(&pre));
        }
        let s = if p == 2 {
            // additive trace map: r + r^2 + r^4 + ... over GF(2)
            let steps = field.extension_degree() as usize * d;
            let mut acc = r.clone();
            let mut t = r.clone();
            for _ in 1..steps {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t).rem(g);
            }
            acc
        } else {
            let e = (BigUint::from(field.order()).pow(d as u32) - BigUint::one()) >> 1;
            r.pow_mod(&e, g).sub(&Poly::one(&field))
        };
        let t = s.gcd(g);
        if proper(&t, deg) {
            return (t.clone(), g.div_exact(&t));
        }
    }
}

fn proper(t: &Poly, deg: usize) -> bool {
    matches!(t.degree(), Some(d) if d > 0 && d < deg)
}
