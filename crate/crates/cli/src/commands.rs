//! Subcommand implementations. Each returns the report lines and whether every
//! check passed; `Err` means the input was unusable.

use std::path::Path;

use anyhow::{bail, Context, Result};
use cyclocat_core::k0::class_of;
use cyclocat_core::modules::random::{random_module_in, rng_from_seed, Family};
use cyclocat_core::modules::{GradedModule, GradingScheme, SchemeKind};
use cyclocat_core::quantum::verify_main_theorem;
use cyclocat_core::stable::{
    decompose_intervals, eta, factor_through_eta, in_kernel_p0, in_kernel_p1, is_projective, r0, random_morphism, restrict_p0,
    restrict_p1, IntervalDecomposition, RestrictedModule, StableError,
};
use serde::Serialize;

use crate::format::{module_to_json, morphism_to_json, read_module, read_morphism};

#[derive(Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub passed: bool,
}

impl Outcome {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            passed: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.line(format!("{label}: {}", yes_no(ok)));
        self.passed &= ok;
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

#[derive(Serialize)]
struct StepJson<'a> {
    step: u8,
    claim: &'a str,
    passed: bool,
}

#[derive(Serialize)]
struct TheoremJson<'a> {
    n: u64,
    m: u64,
    passed: bool,
    steps: Vec<StepJson<'a>>,
}

pub fn verify_theorem(n: u64, m: u64, report: Option<&Path>) -> Result<Outcome> {
    let r = verify_main_theorem(n, m)?;
    let mut out = Outcome::new();
    out.lines.extend(r.to_string().lines().map(String::from));
    out.passed = r.passed();
    if let Some(path) = report {
        let json = TheoremJson {
            n,
            m,
            passed: r.passed(),
            steps: r
                .steps
                .iter()
                .map(|s| StepJson {
                    step: s.step,
                    claim: &s.claim,
                    passed: s.passed,
                })
                .collect(),
        };
        write(path, &(serde_json::to_string_pretty(&json)? + "\n"))?;
    }
    Ok(out)
}

pub fn module_check(path: &Path) -> Result<Outcome> {
    let x = read_module(path)?;
    let s = x.scheme();
    let mut out = Outcome::new();
    out.line("valid: yes");
    out.line(format!("scheme: {} (n = {}, m = {})", scheme_name(s), s.n(), s.m()));
    out.line(format!("dim: {}", x.dim()));
    Ok(out)
}

fn scheme_name(s: &GradingScheme) -> &'static str {
    match s.kind() {
        SchemeKind::Z2 => "Z2",
        SchemeKind::Cyclic => "cyclic",
    }
}

fn describe(out: &mut Outcome, label: &str, r: &RestrictedModule, d: &IntervalDecomposition) {
    out.line(format!("{label} intervals: {}", d.intervals.len()));
    for iv in d.multiset() {
        out.line(format!("  start ({}, {}) length {}", iv.start.0, iv.start.1, iv.len));
    }
    out.check(&format!("{label} ranks match"), d.is_sound(r));
}

pub fn module_decompose(path: &Path) -> Result<Outcome> {
    let x = read_module(path)?;
    let mut out = Outcome::new();
    for (label, r) in [("d0", restrict_p1(&x)), ("d1", restrict_p0(&x))] {
        let d = decompose_intervals(&r);
        describe(&mut out, label, &r, &d);
    }
    Ok(out)
}

pub fn module_class(path: &Path) -> Result<Outcome> {
    let x = read_module(path)?;
    let c = class_of(&x)?;
    let mut out = Outcome::new();
    out.line(format!("class: {c}"));
    out.line(format!("class is zero in K0: {}", yes_no(c.is_zero())));
    out.line(format!("quotient: {}", c.quotient_class()));
    out.line(format!("image: {}", c.cyclotomic_image()?));
    Ok(out)
}

pub fn module_kernels(path: &Path) -> Result<Outcome> {
    let x = read_module(path)?;
    let mut out = Outcome::new();
    out.line(format!(
        "ker P0: {}, ker P1: {}, projective: {}",
        yes_no(in_kernel_p0(&x)),
        yes_no(in_kernel_p1(&x)),
        yes_no(is_projective(&x))
    ));
    Ok(out)
}

pub fn r0_command(input: &Path, output: &Path) -> Result<Outcome> {
    let x = read_module(input)?;
    let r = r0(&restrict_p0(&x))?;
    write(output, &module_to_json(&r))?;
    let n = x.scheme().n() as usize;
    let mut out = Outcome::new();
    out.line(format!("dim: {} (n * {})", r.dim(), x.dim()));
    out.check("dimension is n * dim X", r.dim() == n * x.dim());
    out.check("valid", r.validate().is_ok());
    Ok(out)
}

pub fn eta_command(input: &Path) -> Result<Outcome> {
    let x = read_module(input)?;
    let mut out = Outcome::new();
    let (injective, commutes) = match eta(&x) {
        Ok(e) => (e.is_injective(), true),
        Err(StableError::Module(_)) => (false, false),
        Err(e) => return Err(e.into()),
    };
    out.line(format!("injective: {}, commutes: {}", yes_no(injective), yes_no(commutes)));
    out.passed = injective && commutes;
    Ok(out)
}

pub fn factorize(input: &Path, output: Option<&Path>) -> Result<Outcome> {
    let f = read_morphism(input)?;
    if !in_kernel_p1(f.target()) {
        bail!("factorization precondition violated: the target is not in ker P1");
    }
    let mut out = Outcome::new();
    match factor_through_eta(&f) {
        Ok(g) => {
            let exact = g.compose(&eta(f.source())?)? == f;
            out.line(format!("g found, g∘η = f: {}", if exact { "exact" } else { "MISMATCH" }));
            out.passed = exact;
            if let Some(path) = output {
                write(path, &morphism_to_json(&g))?;
            }
        }
        Err(e @ StableError::NoFactorization(_)) => {
            out.line(format!("no factorization: {e}"));
            out.passed = false;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

pub fn counterexample(n: u64, m: u64, output: &Path) -> Result<Outcome> {
    if (n, m) != (3, 5) {
        bail!("the counterexample is only available for n = 3, m = 5, the single known instance");
    }
    let c = GradedModule::counterexample(n, m)?;
    write(output, &module_to_json(&c))?;
    let mut out = Outcome::new();
    out.line(format!("dim: {}", c.dim()));
    out.check("valid", c.validate().is_ok());
    out.check("non-projective", !is_projective(&c));
    out.check("in ker P0 and ker P1", in_kernel_p0(&c) && in_kernel_p1(&c));
    Ok(out)
}

pub fn parse_family(name: &str) -> Result<Family> {
    Ok(match name {
        "any" => Family::Any,
        "ker-p0" => Family::KerP0,
        "ker-p1" => Family::KerP1,
        "both" => Family::BothKernels,
        "projective" => Family::Projective,
        _ => bail!("unknown family {name:?}; expected any, ker-p0, ker-p1, both or projective"),
    })
}

pub fn parse_scheme(name: &str, n: u64, m: u64) -> Result<GradingScheme> {
    let kind = match name {
        "Z2" | "z2" => SchemeKind::Z2,
        "cyclic" => SchemeKind::Cyclic,
        _ => bail!("unknown scheme {name:?}; expected Z2 or cyclic"),
    };
    Ok(GradingScheme::new(kind, n, m)?)
}

pub fn random_module(scheme: &GradingScheme, family: Family, max_dim: usize, seed: u64, output: &Path) -> Result<Outcome> {
    let x = random_module_in(scheme, family, max_dim, &mut rng_from_seed(seed));
    write(output, &module_to_json(&x))?;
    let mut out = Outcome::new();
    out.line(format!("dim: {}", x.dim()));
    Ok(out)
}

/// A random `f: X → Y` with `Y ∈ ker P1`, as input for `factorize`.
pub fn random_factorization(scheme: &GradingScheme, max_dim: usize, seed: u64, output: &Path) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed);
    let x = random_module_in(scheme, Family::Any, max_dim, &mut rng);
    let y = random_module_in(scheme, Family::KerP1, max_dim.max(scheme.n() as usize), &mut rng);
    let f = random_morphism(&x, &y, &mut rng)?;
    write(output, &morphism_to_json(&f))?;
    let mut out = Outcome::new();
    out.line(format!("dim X: {}, dim Y: {}", x.dim(), y.dim()));
    Ok(out)
}
