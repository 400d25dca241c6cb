//! Command-line entry point for the algebra workbench.
//!
//! One verb per operation, a closed field-descriptor grammar
//! (`Q`, `GF(p)`, `GF(p^n)`, `PC(q;p)`, `RC`), JSON or table output, and
//! deterministic results. Exit codes: 0 success, 1 computation budget
//! exhausted (witness search), 2 validation error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Signed;
use serde_json::{json, Value};

use brauer_workbench_core::brauer::{
    complex_sqrt_residual, realclosed_brauer, relative_brauer_cyclic,
};
use brauer_workbench_core::grouplat::{self, fixtures, GroupFixture};
use brauer_workbench_core::lattice::{
    build_artin_schreier_tower, build_kummer_tower, build_quadratic_tower, verify_linear_lattice,
    TowerReport,
};
use brauer_workbench_core::procyclic::{anticlosure, factor_degrees_over_k_seeded, ProcyclicField};
use brauer_workbench_core::quaternion::{ClassifyVerdict, QuaternionAlgebra, QuaternionElement};
use brauer_workbench_core::{
    exactnum, BigRational, Error, FfElement, FieldDescriptor, FiniteField, Poly,
};

#[derive(Parser)]
#[command(
    name = "brauer-workbench",
    version,
    about = "Exact-arithmetic workbench: quaternion algebras, norm cokernels, extension towers"
)]
struct Cli {
    /// Emit JSON instead of the table rendering.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for internally randomized searches (equal-degree splitting).
    /// Changes internal search order only, never any result.
    #[arg(long, global = true, env = "BRAUER_WORKBENCH_SEED")]
    seed: Option<u64>,

    /// Height budget for the rational zero-norm witness search.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_height: u64,

    /// Ambient field size cap, in bits.
    #[arg(long, global = true, default_value_t = brauer_workbench_core::DEFAULT_AMBIENT_BITS)]
    max_ambient: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quaternion algebras Q(a,b): classification and arithmetic.
    Quat {
        #[command(subcommand)]
        cmd: QuatCmd,
    },
    /// Relative Brauer groups as norm cokernels.
    Brauer {
        #[command(subcommand)]
        cmd: BrauerCmd,
    },
    /// Extension towers over the procyclic model.
    Tower {
        #[command(subcommand)]
        cmd: TowerCmd,
    },
    /// Anti-closure report for a field descriptor (GF(q), PC(q;p), RC).
    Anticlosure {
        #[arg(long)]
        field: String,
    },
    /// Finite-group checks on Cayley-table or permutation fixtures.
    Mgroup {
        #[command(subcommand)]
        cmd: MgroupCmd,
    },
    /// Degrees of the irreducible-over-PC(q;p) factors of a polynomial
    /// over GF(q).
    FactorDegrees {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        /// Ascending coefficients, e.g. `1,0,1` for 1 + X^2.
        #[arg(long)]
        poly: String,
    },
    /// Residual of the explicit complex square root formula.
    SqrtCheck {
        #[arg(short = 'c', long, allow_hyphen_values = true)]
        c: f64,
        #[arg(short = 'd', long, allow_hyphen_values = true)]
        d: f64,
    },
    /// Exhaustive norm image of a finite-field extension.
    NormImage {
        #[arg(long)]
        upper: String,
        #[arg(long)]
        lower: String,
    },
}

#[derive(Subcommand)]
enum QuatCmd {
    /// Division/split classification with evidence.
    Classify {
        /// Base field: `Q` or `GF(q)` (odd q).
        #[arg(long)]
        base: String,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
    },
    /// Evaluate products, norms and inverses. Coordinates are
    /// `t;x;y;z` with each coordinate in the base-field text format.
    Eval {
        #[arg(long)]
        base: String,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_parser = ["mul", "norm", "inverse"])]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Option<String>,
    },
}

#[derive(Subcommand)]
enum BrauerCmd {
    /// K*/N(L*) for finite fields K inside L.
    Cyclic {
        #[arg(long)]
        upper: String,
        #[arg(long)]
        lower: String,
    },
    /// The sign-model real closed field: cokernel of the closure norm.
    Realclosed,
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Build a tower and verify every level degree.
    Build {
        #[arg(long, value_parser = ["artin-schreier", "kummer", "quadratic"])]
        kind: String,
        /// Base prime power q (kummer and quadratic towers).
        #[arg(long)]
        q: Option<u64>,
        /// The prime p (artin-schreier and kummer towers).
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        depth: u32,
    },
    /// Re-verify a tower report against the model lattice.
    Verify {
        /// Path to a tower report JSON file, or `-` for stdin.
        #[arg(long)]
        report: String,
        #[arg(long)]
        degree_bound: u64,
    },
}

#[derive(Subcommand)]
enum MgroupCmd {
    /// Unique-maximal-subgroup and cyclicity checks.
    Check {
        /// Built-in fixture name (Cn, C2xC2, C2xC4, C3xC3, S3, A4, D4, D6, Q8).
        #[arg(long, conflicts_with = "file")]
        name: Option<String>,
        /// JSON fixture: {name, order, table} or {name, degree, generators}.
        #[arg(long)]
        file: Option<String>,
    },
}

fn invalid(argument: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument { argument, reason: reason.into() }
}

enum Base {
    Rational,
    Finite(FiniteField),
}

fn parse_base(text: &str, cap_bits: u32) -> Result<Base, Error> {
    match text.parse::<FieldDescriptor>()? {
        FieldDescriptor::Rational => Ok(Base::Rational),
        FieldDescriptor::Finite { p, n } => {
            Ok(Base::Finite(FiniteField::make_field_with_cap(p, n, cap_bits)?))
        }
        other => Err(invalid("base", format!("{} is not a quaternion base field", other))),
    }
}

fn parse_rational(text: &str, argument: &'static str) -> Result<BigRational, Error> {
    let v: BigRational = text
        .trim()
        .parse()
        .map_err(|_| invalid(argument, format!("`{}` is not a rational number", text)))?;
    let bound = num_bigint_bound();
    if v.numer().abs() > bound || v.denom().abs() > bound {
        return Err(invalid(
            argument,
            format!("|numerator| and denominator must be at most {}", exactnum::FACTOR_BOUND),
        ));
    }
    Ok(v)
}

fn num_bigint_bound() -> num_bigint::BigInt {
    num_bigint::BigInt::from(exactnum::FACTOR_BOUND)
}

fn rational_quaternion(
    alg: &QuaternionAlgebra<BigRational>,
    coords: &str,
    argument: &'static str,
) -> Result<QuaternionElement<BigRational>, Error> {
    let parts: Vec<&str> = coords.split(';').collect();
    if parts.len() != 4 {
        return Err(invalid(argument, "need four `;`-separated coordinates t;x;y;z"));
    }
    let mut vals = Vec::with_capacity(4);
    for p in parts {
        vals.push(parse_rational(p, argument)?);
    }
    alg.element(vals[0].clone(), vals[1].clone(), vals[2].clone(), vals[3].clone())
}

fn finite_quaternion(
    alg: &QuaternionAlgebra<FfElement>,
    field: &FiniteField,
    coords: &str,
    argument: &'static str,
) -> Result<QuaternionElement<FfElement>, Error> {
    let parts: Vec<&str> = coords.split(';').collect();
    if parts.len() != 4 {
        return Err(invalid(argument, "need four `;`-separated coordinates t;x;y;z"));
    }
    let mut vals = Vec::with_capacity(4);
    for p in parts {
        vals.push(field.parse_element(p)?);
    }
    alg.element(vals[0].clone(), vals[1].clone(), vals[2].clone(), vals[3].clone())
}

fn coords_json<S: brauer_workbench_core::Scalar>(e: &QuaternionElement<S>) -> Value {
    Value::Array(e.coords().iter().map(|c| Value::String(c.to_string())).collect())
}

fn classify_json<S: brauer_workbench_core::Scalar>(verdict: &ClassifyVerdict<S>) -> Value {
    match verdict {
        ClassifyVerdict::Division { obstruction } => json!({
            "kind": "Division",
            "obstruction": obstruction
                .iter()
                .map(|(place, v)| json!([place.to_string(), v]))
                .collect::<Vec<_>>(),
        }),
        ClassifyVerdict::Split { witness } => json!({
            "kind": "Split",
            "witness": coords_json(witness),
        }),
    }
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let cap = cli.max_ambient;
    let seed = cli.seed.unwrap_or(brauer_workbench_core::DEFAULT_SEED);
    match &cli.command {
        Command::Quat { cmd } => match cmd {
            QuatCmd::Classify { base, a, b } => match parse_base(base, cap)? {
                Base::Rational => {
                    let alg = QuaternionAlgebra::new(
                        parse_rational(a, "a")?,
                        parse_rational(b, "b")?,
                    )?;
                    Ok(classify_json(&alg.classify(cli.max_height)?))
                }
                Base::Finite(field) => {
                    let alg = QuaternionAlgebra::new(
                        field.parse_element(a)?,
                        field.parse_element(b)?,
                    )?;
                    Ok(classify_json(&alg.classify()?))
                }
            },
            QuatCmd::Eval { base, a, b, op, lhs, rhs } => {
                let need_rhs = || {
                    rhs.as_deref().ok_or_else(|| invalid("rhs", "`--op mul` needs --rhs"))
                };
                match parse_base(base, cap)? {
                    Base::Rational => {
                        let alg = QuaternionAlgebra::new(
                            parse_rational(a, "a")?,
                            parse_rational(b, "b")?,
                        )?;
                        let u = rational_quaternion(&alg, lhs, "lhs")?;
                        match op.as_str() {
                            "mul" => {
                                let v = rational_quaternion(&alg, need_rhs()?, "rhs")?;
                                let w = u.multiply(&v)?;
                                Ok(json!({
                                    "op": "mul",
                                    "product": coords_json(&w),
                                    "norm": w.norm().to_string(),
                                }))
                            }
                            "norm" => Ok(json!({"op": "norm", "norm": u.norm().to_string()})),
                            _ => {
                                let w = u.inverse()?;
                                Ok(json!({"op": "inverse", "inverse": coords_json(&w)}))
                            }
                        }
                    }
                    Base::Finite(field) => {
                        let alg = QuaternionAlgebra::new(
                            field.parse_element(a)?,
                            field.parse_element(b)?,
                        )?;
                        let u = finite_quaternion(&alg, &field, lhs, "lhs")?;
                        match op.as_str() {
                            "mul" => {
                                let v = finite_quaternion(&alg, &field, need_rhs()?, "rhs")?;
                                let w = u.multiply(&v)?;
                                Ok(json!({
                                    "op": "mul",
                                    "product": coords_json(&w),
                                    "norm": w.norm().to_string(),
                                }))
                            }
                            "norm" => Ok(json!({"op": "norm", "norm": u.norm().to_string()})),
                            _ => {
                                let w = u.inverse()?;
                                Ok(json!({"op": "inverse", "inverse": coords_json(&w)}))
                            }
                        }
                    }
                }
            }
        },
        Command::Brauer { cmd } => match cmd {
            BrauerCmd::Cyclic { upper, lower } => {
                let upper = parse_finite(upper, "upper", cap)?;
                let lower = parse_finite(lower, "lower", cap)?;
                let report = relative_brauer_cyclic(&upper, &lower)?;
                Ok(serde_json::to_value(report).expect("reports serialize"))
            }
            BrauerCmd::Realclosed => {
                Ok(serde_json::to_value(realclosed_brauer()).expect("reports serialize"))
            }
        },
        Command::Tower { cmd } => match cmd {
            TowerCmd::Build { kind, q, p, depth } => {
                let report = match kind.as_str() {
                    "artin-schreier" => {
                        let p = (*p).ok_or_else(|| invalid("p", "artin-schreier towers need --p"))?;
                        if let Some(q) = q {
                            if *q != p {
                                return Err(invalid("q", "artin-schreier towers have q = p"));
                            }
                        }
                        build_artin_schreier_tower(p, *depth, cap)?
                    }
                    "kummer" => {
                        let q = (*q).ok_or_else(|| invalid("q", "kummer towers need --q"))?;
                        let p = (*p).ok_or_else(|| invalid("p", "kummer towers need --p"))?;
                        build_kummer_tower(q, p, *depth, cap)?
                    }
                    _ => {
                        let q = (*q).ok_or_else(|| invalid("q", "quadratic towers need --q"))?;
                        if p.is_some() && *p != Some(2) {
                            return Err(invalid("p", "quadratic towers have p = 2"));
                        }
                        build_quadratic_tower(q, *depth, cap)?
                    }
                };
                Ok(serde_json::to_value(report).expect("reports serialize"))
            }
            TowerCmd::Verify { report, degree_bound } => {
                let text = if report == "-" {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| Error::MalformedReport(e.to_string()))?;
                    buf
                } else {
                    std::fs::read_to_string(report)
                        .map_err(|e| Error::MalformedReport(format!("{}: {}", report, e)))?
                };
                let parsed = TowerReport::from_json(&text)?;
                let verified = verify_linear_lattice(&parsed, *degree_bound, cap)?;
                Ok(json!({
                    "base": parsed.base,
                    "p": parsed.p,
                    "levels": parsed.levels.len(),
                    "degree_bound": degree_bound,
                    "verified": verified,
                }))
            }
        },
        Command::Anticlosure { field } => {
            let desc: FieldDescriptor = field.parse()?;
            let report = anticlosure(&desc, cap)?;
            Ok(serde_json::to_value(report).expect("reports serialize"))
        }
        Command::Mgroup { cmd } => match cmd {
            MgroupCmd::Check { name, file } => {
                let group = match (name, file) {
                    (Some(n), None) => fixtures::builtin(n)
                        .ok_or_else(|| invalid("name", format!("unknown builtin `{}`", n)))?,
                    (None, Some(path)) => {
                        let text = std::fs::read_to_string(path).map_err(|e| {
                            invalid("file", format!("{}: {}", path, e))
                        })?;
                        let fx: GroupFixture = serde_json::from_str(&text)
                            .map_err(|e| invalid("file", e.to_string()))?;
                        fx.build()?
                    }
                    _ => return Err(invalid("name", "pass exactly one of --name or --file")),
                };
                let lattice = grouplat::subgroups(&group)?;
                let m_group = grouplat::is_m_group(&group)?;
                let generator = group.is_cyclic();
                Ok(json!({
                    "name": group.name(),
                    "order": group.order(),
                    "m_group": m_group,
                    "cyclic": generator.is_some(),
                    "generator": generator,
                    "prime_power_order": exactnum_prime_power(group.order() as u64),
                    "subgroup_count": lattice.subgroups().len(),
                    "maximal_subgroup_count": lattice.maximal().len(),
                }))
            }
        },
        Command::FactorDegrees { q, p, poly } => {
            let pc = ProcyclicField::with_cap(*q, *p, cap)?;
            let base = pc.base_field()?;
            let f = Poly::parse(&base, poly)?;
            let degrees = factor_degrees_over_k_seeded(&f, &pc, seed)?;
            Ok(json!({
                "field": pc.descriptor().to_string(),
                "poly": f.to_string(),
                "degrees": degrees,
            }))
        }
        Command::SqrtCheck { c, d } => {
            let check = complex_sqrt_residual(*c, *d)?;
            let bound = 1e-9 * (1.0 + c.abs() + d.abs());
            Ok(json!({
                "alpha": [check.alpha_re, check.alpha_im],
                "residual": check.residual,
                "bound": bound,
                "within_bound": check.residual <= bound,
            }))
        }
        Command::NormImage { upper, lower } => {
            let upper = parse_finite(upper, "upper", cap)?;
            let lower = parse_finite(lower, "lower", cap)?;
            let image = brauer_workbench_core::finfield::norm_image(&upper, &lower)?;
            let surjective = image.len() as u64 == lower.order() - 1;
            Ok(json!({
                "extension": format!("{}/{}", upper, lower),
                "image": image.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "image_order": image.len(),
                "group_order": lower.order() - 1,
                "surjective": surjective,
            }))
        }
    }
}

fn exactnum_prime_power(n: u64) -> bool {
    exactnum::prime_power(n).is_some()
}

fn parse_finite(text: &str, argument: &'static str, cap_bits: u32) -> Result<FiniteField, Error> {
    match text.parse::<FieldDescriptor>()? {
        FieldDescriptor::Finite { p, n } => FiniteField::make_field_with_cap(p, n, cap_bits),
        other => Err(invalid(argument, format!("{} is not a finite field descriptor", other))),
    }
}

/// Table rendering: one `key: value` line per top-level field, compact JSON
/// for nested values.
fn render_table(value: &Value) -> String {
    fn leaf(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{}: {}", k, leaf(v)))
            .collect::<Vec<_>>()
            .join("\n"),
        other => leaf(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            if cli.json {
                println!("{}", value);
            } else {
                println!("{}", render_table(&value));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
