//! Relative Brauer groups of cyclic extensions as norm cokernels.
//!
//! For a cyclic extension `L/K` the relative Brauer group is `K*/N(L*)`,
//! so at desk scale it is computed exhaustively from the norm image. Finite
//! fields always give the trivial group; the sign-model real closed field
//! gives the one genuinely nontrivial cokernel `{+1,-1}/{+1}` of order 2,
//! matching the unique nontrivial central division algebra class over a
//! real closed field.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::prime_power;
use crate::finfield::{norm_image, FiniteField};

/// Square class of a nonzero element of the sign-model real closed field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of(v: i64) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Pos => write!(f, "+1"),
            Sign::Neg => write!(f, "-1"),
        }
    }
}

/// Norm-cokernel report for a cyclic extension: `K*/N(L*)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormCokernelReport {
    pub extension: String,
    /// Generators of the image subgroup (one suffices: the groups here are
    /// cyclic), rendered in the element text format.
    pub image_generators: Vec<String>,
    pub image_order: u64,
    /// Order of the model of `K*`: `q - 1` for finite fields, 2 for the
    /// sign-model square-class group.
    pub group_order: u64,
    pub cokernel_order: u64,
    /// Cyclic factor orders; empty for the trivial group.
    pub cokernel_structure: Vec<u64>,
}

impl NormCokernelReport {
    pub fn is_surjective(&self) -> bool {
        self.cokernel_order == 1
    }
}

/// `K*/N(L*)` for finite fields `K` inside `L`, computed exhaustively.
/// Extensions of finite fields are cyclic, so this is the relative Brauer
/// group; norm surjectivity makes it trivial every time.
pub fn relative_brauer_cyclic(upper: &FiniteField, lower: &FiniteField) -> Result<NormCokernelReport> {
    let image = norm_image(upper, lower)?;
    let image_order = image.len() as u64;
    let group_order = lower.order() - 1;
    debug_assert_eq!(group_order % image_order, 0, "norm image is a subgroup");
    let cokernel_order = group_order / image_order;
    // K* is cyclic, so the image is its unique subgroup of this order and
    // any element of full order inside it generates.
    let generator = image
        .iter()
        .find(|x| x.multiplicative_order() == image_order)
        .expect("a subgroup of a cyclic group is cyclic");
    Ok(NormCokernelReport {
        extension: format!("{}/{}", upper, lower),
        image_generators: vec![generator.to_string()],
        image_order,
        group_order,
        cokernel_order,
        cokernel_structure: if cokernel_order > 1 { vec![cokernel_order] } else { vec![] },
    })
}

/// The real closed case in the sign model: norms from the algebraic closure
/// are `a^2 + b^2`, always positive, so the norm image is `{+1}` and the
/// cokernel is the square-class group `{+1,-1}` of order 2.
pub fn realclosed_brauer() -> NormCokernelReport {
    // Exhaust the sign classes of a^2 + b^2 over representatives of the
    // square classes of C* in the model: (a, b) != (0, 0) with a, b in
    // {0, +1, -1}.
    let mut image = Vec::new();
    for a in [0i64, 1, -1] {
        for b in [0i64, 1, -1] {
            if a == 0 && b == 0 {
                continue;
            }
            let norm = Sign::of(a * a + b * b).expect("norm of a nonzero element is nonzero");
            if !image.contains(&norm) {
                image.push(norm);
            }
        }
    }
    assert_eq!(image, vec![Sign::Pos]);
    NormCokernelReport {
        extension: "C/R (sign model)".into(),
        image_generators: image.iter().map(Sign::to_string).collect(),
        image_order: image.len() as u64,
        group_order: 2,
        cokernel_order: 2 / image.len() as u64,
        cokernel_structure: vec![2],
    }
}

/// Surjectivity evidence for the norm of the degree-`p` extension of
/// `GF(p)`: each target with its smallest preimage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormSurjectivityReport {
    pub extension: String,
    pub surjective: bool,
    /// (target, smallest preimage) pairs in canonical target order.
    pub preimages: Vec<(String, String)>,
}

/// Checks exhaustively that the norm `GF(p^p)* -> GF(p)*` is surjective,
/// returning a preimage table.
pub fn norm_surjective_degree_p(p: u64) -> Result<NormSurjectivityReport> {
    let pu = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
    if (p as f64).powi(pu as i32) > (1u64 << 16) as f64 {
        return Err(Error::SizeCapExceeded { base: p, degree: pu, cap_bits: 16 });
    }
    let lower = FiniteField::make_field(p, 1)?;
    let upper = FiniteField::make_field(p, pu)?;
    let emb = crate::finfield::Embedding::new(&lower, &upper)?;
    let mut table: Vec<Option<String>> = vec![None; lower.order() as usize];
    for rank in 1..upper.order() {
        let x = upper.element_from_rank(rank);
        let v = crate::finfield::norm_via(&emb, &x)?;
        let slot = &mut table[v.rank() as usize];
        if slot.is_none() {
            *slot = Some(x.to_string());
        }
    }
    let mut preimages = Vec::new();
    let mut surjective = true;
    for rank in 1..lower.order() {
        match &table[rank as usize] {
            Some(pre) => {
                preimages.push((lower.element_from_rank(rank).to_string(), pre.clone()))
            }
            None => surjective = false,
        }
    }
    Ok(NormSurjectivityReport {
        extension: format!("{}/{}", upper, lower),
        surjective,
        preimages,
    })
}

/// Level-by-level norm surjectivity for the quadratic steps of the
/// `PC(q;2)` model with `q = 3 mod 4`: at each odd level `n` the norm
/// `GF(q^2n)* -> GF(q^n)*` must be surjective (the model field is not real
/// closed, so its quadratic-extension norm has trivial cokernel).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticNormReport {
    pub q: u64,
    pub levels: Vec<QuadraticNormLevel>,
    pub all_surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticNormLevel {
    pub n: u64,
    pub extension: String,
    pub cokernel_order: u64,
}

pub fn quadratic_norm_surjectivity(q: u64) -> Result<QuadraticNormReport> {
    let (p0, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q % 4 != 3 {
        return Err(Error::InvalidArgument {
            argument: "q",
            reason: format!("{} is not 3 mod 4", q),
        });
    }
    let mut levels = Vec::new();
    let mut n = 1u64;
    loop {
        let big = (q as f64).powi(2 * n as i32);
        if big > (1u64 << 16) as f64 {
            break;
        }
        let lower = FiniteField::make_field(p0, k * n as u32)?;
        let upper = FiniteField::make_field(p0, 2 * k * n as u32)?;
        let report = relative_brauer_cyclic(&upper, &lower)?;
        levels.push(QuadraticNormLevel {
            n,
            extension: report.extension.clone(),
            cokernel_order: report.cokernel_order,
        });
        n += 2;
    }
    let all = levels.iter().all(|l| l.cokernel_order == 1);
    Ok(QuadraticNormReport { q, levels, all_surjective: all })
}

/// Floating-point check of the explicit square root of `c + di`:
/// `alpha = sqrt((c + s)/2) + i sign(d) sqrt((-c + s)/2)` with
/// `s = sqrt(c^2 + d^2)`; returns `alpha` and the residual `|alpha^2 - (c+di)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SqrtFormulaCheck {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub residual: f64,
}

pub fn complex_sqrt_residual(c: f64, d: f64) -> Result<SqrtFormulaCheck> {
    if c == 0.0 && d == 0.0 {
        return Err(Error::InvalidArgument {
            argument: "c,d",
            reason: "(0,0) is degenerate".into(),
        });
    }
    let s = c.hypot(d);
    let re = (((c + s) / 2.0).max(0.0)).sqrt();
    let im_mag = (((-c + s) / 2.0).max(0.0)).sqrt();
    // sign of the imaginary part so that 2 Re Im matches the sign of d
    let im = if d < 0.0 { -im_mag } else { im_mag };
    let rr = re * re - im * im - c;
    let ri = 2.0 * re * im - d;
    Ok(SqrtFormulaCheck { alpha_re: re, alpha_im: im, residual: rr.hypot(ri) })
}
