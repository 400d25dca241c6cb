//! Extension towers over the procyclic model `PC(q;p)`, with verified
//! degrees.
//!
//! Three constructions cover the model's linear lattice of extensions:
//!
//! * Artin-Schreier towers in characteristic `p` (base `PC(p;p)`): each
//!   level adjoins a root of `T^p - T - a` seeded with `a = 1`, whose trace
//!   at every prime-to-`p` level is nonzero.
//! * Kummer towers when `p | q - 1` (and `q = 1 mod 4` if `p = 2`): level
//!   `i` adjoins `alpha^(1/p^i)` for the smallest `alpha` that is not a
//!   `p`-th power.
//! * Quadratic square-root towers for `q = 3 mod 4` (so `-1` is a
//!   nonsquare): the seed is the smallest element of `GF(q^2)` whose norm
//!   to `GF(q)` is a nonsquare, and each level takes a square root.
//!
//! Every level's degree over `K` is re-verified through the procyclic
//! degree oracle (Frobenius orbits + minimal-polynomial factoring), never
//! assumed.

use serde::{Deserialize, Serialize};

use crate::descriptor::FieldDescriptor;
use crate::error::{Error, Result};
use crate::finfield::{min_poly_over, Embedding, FfElement, FiniteField, Poly};
use crate::procyclic::ProcyclicField;

/// One level of a tower: `K^(i) = K(generator)` with the generator pinned
/// by its minimal polynomial over `GF(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub i: u32,
    /// Minimal polynomial of the level generator over `GF(q)`, in the
    /// polynomial text format.
    pub min_poly: String,
    /// Finite field housing the generator, e.g. `GF(3^4)`.
    pub ambient: String,
    /// Verified degree of the level over `K`, always a power of `p`.
    pub degree: u64,
}

/// Ordered tower report; level 0 is `K` itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub base: String,
    pub p: u64,
    pub levels: Vec<TowerLevel>,
}

impl TowerReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tower reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedReport(e.to_string()))
    }
}

fn verified_level(
    pc: &ProcyclicField,
    base: &FiniteField,
    generator: &FfElement,
    index: u32,
    expected_degree: u64,
) -> Result<TowerLevel> {
    let pro = pc.element(generator)?;
    let found = pc.degree_over_k(&pro)?;
    if found != expected_degree || pro.level() != expected_degree {
        return Err(Error::DegreeVerificationFailed {
            level: index as usize,
            expected: expected_degree,
            found,
        });
    }
    let emb = Embedding::new(base, generator.field())?;
    let min_poly = min_poly_over(&emb, generator)?;
    if min_poly.degree() != Some(expected_degree as usize) || !min_poly.is_irreducible()? {
        return Err(Error::DegreeVerificationFailed {
            level: index as usize,
            expected: expected_degree,
            found: min_poly.degree().unwrap_or(0) as u64,
        });
    }
    Ok(TowerLevel {
        i: index,
        min_poly: min_poly.to_string(),
        ambient: generator.field().to_string(),
        degree: expected_degree,
    })
}

/// Artin-Schreier tower over `K = PC(p;p)` with the canonical seed
/// `alpha_0 = 1` (its trace from any prime-to-`p` level `GF(p^m)` is
/// `m != 0`, so `T^p - T - 1` is irreducible over `K`).
///
/// The naive root iteration has a hard reach: the trace of an adjoined
/// root down to `GF(p)` is `p * alpha + (0 + 1 + ... + (p-1))`, which
/// vanishes for every odd `p` at depth 2 and for `p = 2` at depth 3, so
/// `T^p - T - alpha_i` splits at the previous level and the would-be new
/// generator gains no degree. Reachable depths are 2 for `p = 2` and 1 for
/// odd `p`; beyond that the degree verification fails and the builder
/// returns [`Error::DegreeVerificationFailed`] instead of a bogus tower.
pub fn build_artin_schreier_tower(p: u64, depth: u32, cap_bits: u32) -> Result<TowerReport> {
    let base = FiniteField::make_field_with_cap(p, 1, cap_bits)?;
    build_artin_schreier_tower_from(p, depth, cap_bits, &base.one())
}

/// Artin-Schreier tower from an explicit seed in `GF(p)` with nonzero
/// trace; exposed so that choice-independence is testable.
pub fn build_artin_schreier_tower_from(
    p: u64,
    depth: u32,
    cap_bits: u32,
    alpha0: &FfElement,
) -> Result<TowerReport> {
    if depth > 3 {
        return Err(Error::InvalidArgument {
            argument: "depth",
            reason: "Artin-Schreier towers are capped at depth 3".into(),
        });
    }
    let pc = ProcyclicField::with_cap(p, p, cap_bits)?;
    let base = pc.base_field()?;
    if alpha0.field() != &base || alpha0.is_zero() {
        return Err(Error::InvalidArgument {
            argument: "alpha0",
            reason: "seed must be a nonzero element of GF(p)".into(),
        });
    }
    let mut levels = vec![verified_level(&pc, &base, alpha0, 0, 1)?];
    let mut current = alpha0.clone();
    for i in 1..=depth {
        let expected = p.pow(i);
        let ambient = pc.level_field(expected)?;
        let lifted = Embedding::new(current.field(), &ambient)?.apply(&current);
        // T^p - T - current
        let mut coeffs = vec![ambient.zero(); p as usize + 1];
        coeffs[0] = lifted.neg();
        coeffs[1] = ambient.one().neg();
        coeffs[p as usize] = ambient.one();
        let artin_schreier = Poly::from_elements(&ambient, coeffs);
        let roots = artin_schreier.roots();
        let root = roots.into_iter().next().ok_or(Error::DegreeVerificationFailed {
            level: i as usize,
            expected,
            found: 0,
        })?;
        levels.push(verified_level(&pc, &base, &root, i, expected)?);
        current = root;
    }
    Ok(TowerReport { base: pc.descriptor().to_string(), p, levels })
}

/// Smallest `alpha` in `GF(q)*` (canonical order) that is not a `p`-th
/// power, detected by `alpha^((q-1)/p) != 1`.
pub fn smallest_non_pth_power(base: &FiniteField, p: u64) -> Option<FfElement> {
    let q = base.order();
    (1..q)
        .map(|r| base.element_from_rank(r))
        .find(|alpha| !alpha.pow((q - 1) / p).is_one())
}

/// Kummer tower over `K = PC(q;p)` for `p | q - 1`: level `i` adjoins a
/// root of `T^(p^i) - alpha`. The canonical seed is the smallest non-`p`-th
/// power; the norm argument makes any such seed a non-`p`-th power in `K`
/// itself, not just in `GF(q)`.
pub fn build_kummer_tower(q: u64, p: u64, depth: u32, cap_bits: u32) -> Result<TowerReport> {
    let pc = ProcyclicField::with_cap(q, p, cap_bits)?;
    let base = pc.base_field()?;
    let alpha = smallest_non_pth_power(&base, p).ok_or_else(|| Error::InvalidArgument {
        argument: "q",
        reason: format!("every unit of GF({}) is a {}-th power", q, p),
    })?;
    build_kummer_tower_from(q, p, depth, cap_bits, &alpha)
}

/// Kummer tower from an explicit non-`p`-th-power seed.
pub fn build_kummer_tower_from(
    q: u64,
    p: u64,
    depth: u32,
    cap_bits: u32,
    alpha: &FfElement,
) -> Result<TowerReport> {
    let pc = ProcyclicField::with_cap(q, p, cap_bits)?;
    let base = pc.base_field()?;
    if (q - 1) % p != 0 {
        return Err(Error::InvalidArgument {
            argument: "p",
            reason: format!("{} does not divide q - 1 = {}", p, q - 1),
        });
    }
    if p == 2 && q % 4 == 3 {
        return Err(Error::InvalidArgument {
            argument: "q",
            reason: "q = 3 mod 4 makes -1 a nonsquare; use the quadratic tower builder".into(),
        });
    }
    if alpha.field() != &base || alpha.is_zero() || alpha.pow((q - 1) / p).is_one() {
        return Err(Error::InvalidArgument {
            argument: "alpha",
            reason: "seed must be a unit of GF(q) that is not a p-th power".into(),
        });
    }
    let mut levels = vec![verified_level(&pc, &base, alpha, 0, 1)?];
    for i in 1..=depth {
        let expected = p.pow(i);
        let ambient = pc.level_field(expected)?;
        let lifted = Embedding::new(&base, &ambient)?.apply(alpha);
        // T^(p^i) - alpha
        let mut coeffs = vec![ambient.zero(); expected as usize + 1];
        coeffs[0] = lifted.neg();
        coeffs[expected as usize] = ambient.one();
        let kummer = Poly::from_elements(&ambient, coeffs);
        let root = kummer.roots().into_iter().next().ok_or(Error::DegreeVerificationFailed {
            level: i as usize,
            expected,
            found: 0,
        })?;
        levels.push(verified_level(&pc, &base, &root, i, expected)?);
    }
    Ok(TowerReport { base: pc.descriptor().to_string(), p, levels })
}

/// Square-root tower over `K = PC(q;2)` for `q = 3 mod 4`: the seed is the
/// smallest element of `GF(q^2)` whose norm down to `GF(q)` is a nonsquare
/// (such a seed cannot be a square in `K'`, which drives the degrees), and
/// level `n+1` adjoins a square root of the level-`n` generator.
pub fn build_quadratic_tower(q: u64, depth: u32, cap_bits: u32) -> Result<TowerReport> {
    if q % 4 != 3 {
        return Err(Error::InvalidArgument {
            argument: "q",
            reason: format!("{} is not 3 mod 4", q),
        });
    }
    let pc = ProcyclicField::with_cap(q, 2, cap_bits)?;
    let base = pc.base_field()?;
    let quadratic = pc.level_field(2)?;
    let emb = Embedding::new(&base, &quadratic)?;
    let alpha0 = quadratic
        .elements()
        .find(|x| {
            if x.is_zero() {
                return false;
            }
            let norm = emb
                .preimage(&x.pow(q + 1))
                .expect("the norm lands in the base field");
            !norm.is_square()
        })
        .expect("norms of GF(q^2)* cover the nonsquares of GF(q)*");
    let mut levels = vec![verified_level(&pc, &base, &base.one(), 0, 1)?];
    let mut current = alpha0;
    for i in 1..=depth {
        let expected = 2u64.pow(i);
        let generator = if i == 1 {
            current.clone()
        } else {
            let ambient = pc.level_field(expected)?;
            let lifted = Embedding::new(current.field(), &ambient)?.apply(&current);
            // T^2 - current
            let sqrt_poly =
                Poly::from_elements(&ambient, vec![lifted.neg(), ambient.zero(), ambient.one()]);
            sqrt_poly.roots().into_iter().next().ok_or(Error::DegreeVerificationFailed {
                level: i as usize,
                expected,
                found: 0,
            })?
        };
        levels.push(verified_level(&pc, &base, &generator, i, expected)?);
        current = generator;
    }
    Ok(TowerReport { base: pc.descriptor().to_string(), p: 2, levels })
}

/// Witness table for the fourth-power property of the quadratic model:
/// every unit of `GF(q)` has a fourth root in `GF(q^2)` when `q = 3 mod 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourthPowerReport {
    pub q: u64,
    pub all_pass: bool,
    /// (unit of GF(q), smallest fourth root in GF(q^2)) in canonical order.
    pub witnesses: Vec<(String, String)>,
}

pub fn fourth_power_check(q: u64) -> Result<FourthPowerReport> {
    if q % 4 != 3 {
        return Err(Error::InvalidArgument {
            argument: "q",
            reason: format!("{} is not 3 mod 4", q),
        });
    }
    if (q as f64) * (q as f64) > (1u64 << 16) as f64 {
        return Err(Error::SizeCapExceeded { base: q, degree: 2, cap_bits: 16 });
    }
    let pc = ProcyclicField::with_cap(q, 2, 17)?;
    let base = pc.base_field()?;
    let ext = pc.level_field(2)?;
    let emb = Embedding::new(&base, &ext)?;
    let mut table: Vec<Option<String>> = vec![None; base.order() as usize];
    for rank in 0..ext.order() {
        let x = ext.element_from_rank(rank);
        if let Some(a) = emb.preimage(&x.pow(4)) {
            if a.is_zero() {
                continue;
            }
            let slot = &mut table[a.rank() as usize];
            if slot.is_none() {
                *slot = Some(x.to_string());
            }
        }
    }
    let mut witnesses = Vec::new();
    let mut all_pass = true;
    for rank in 1..base.order() {
        match &table[rank as usize] {
            Some(x) => witnesses.push((base.element_from_rank(rank).to_string(), x.clone())),
            None => all_pass = false,
        }
    }
    Ok(FourthPowerReport { q, all_pass, witnesses })
}

/// Check a tower report against the model's lattice up to a degree bound:
/// the extensions of `K` of degree at most `D` are exactly the levels
/// `p^s <= D`, each must appear in the tower, and each level's minimal
/// polynomial must be irreducible over `GF(q)` with the right splitting
/// behaviour at its own level (all factors over `GF(q^(p^s))` share the
/// degree `deg(min_poly)/p^s`).
pub fn verify_linear_lattice(report: &TowerReport, degree_bound: u64, cap_bits: u32) -> Result<bool> {
    let desc: FieldDescriptor =
        report.base.parse().map_err(|e: Error| Error::MalformedReport(e.to_string()))?;
    let FieldDescriptor::Procyclic { q, p } = desc else {
        return Err(Error::MalformedReport(format!(
            "tower base must be a procyclic descriptor, got {}",
            report.base
        )));
    };
    if p != report.p {
        return Err(Error::MalformedReport(format!(
            "report p = {} disagrees with base {}",
            report.p, report.base
        )));
    }
    let pc = ProcyclicField::with_cap(q, p, cap_bits)?;
    let base = pc.base_field()?;
    if report.levels.is_empty() {
        return Err(Error::MalformedReport("tower has no levels".into()));
    }
    for (idx, level) in report.levels.iter().enumerate() {
        if level.i as usize != idx {
            return Err(Error::MalformedReport(format!(
                "level indices must be consecutive from 0, found {} at position {}",
                level.i, idx
            )));
        }
        if level.degree != p.pow(level.i) {
            return Ok(false);
        }
    }
    let mut s = 0u32;
    loop {
        let degree = p.pow(s);
        if degree > degree_bound {
            break;
        }
        let Some(level) = report.levels.iter().find(|l| l.degree == degree) else {
            return Ok(false);
        };
        let min_poly = Poly::parse(&base, &level.min_poly)?;
        if !min_poly.is_monic() || !min_poly.is_irreducible()? {
            return Ok(false);
        }
        let d = min_poly.degree().unwrap() as u64;
        // the p-part of the generator degree is the level degree
        let mut ppart = 1u64;
        let mut rest = d;
        while rest % p == 0 {
            ppart *= p;
            rest /= p;
        }
        if ppart != degree {
            return Ok(false);
        }
        // splitting-field comparison at the matching level: over GF(q^(p^s))
        // every factor has the prime-to-p degree
        let level_field = pc.level_field(degree)?;
        let emb = Embedding::new(&base, &level_field)?;
        let lifted = Poly::from_elements(
            &level_field,
            min_poly.coeff_slice().iter().map(|c| emb.apply(c)).collect(),
        );
        let factors = lifted.factor()?;
        if !factors.iter().all(|(f, m)| *m == 1 && f.degree() == Some(rest as usize)) {
            return Ok(false);
        }
        s += 1;
    }
    Ok(true)
}
