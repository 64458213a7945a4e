//! Acceptance suite. Every criterion is an exact check; each prints one
//! `PASS`/`FAIL` line and the process fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cyclocat::format::read_module;
use cyclocat_core::arith::{Integer, IntPolynomial, Matrix};
use cyclocat_core::k0::{class_additivity_check, class_multiplicativity_check, class_of, single_algebra_k0};
use cyclocat_core::modules::random::{random_module_in, random_vectors, rng_from_seed, Family};
use cyclocat_core::modules::{quotient, submodule_generated_by, GradedModule, GradingScheme};
use cyclocat_core::quantum::{
    check_bezout_identity, check_crt_correspondence, check_product_identity, crt_exponents, cyclotomic, quantum_integer,
    LaurentPolynomial2, QuotientElementXY,
};
use cyclocat_core::stable::{
    cone_from_ses, decompose_intervals, eta, factor_through_eta, in_kernel_p0, in_kernel_p1, is_projective, random_morphism,
    restrict_p0, restrict_p1, stable_hom,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z2() -> GradingScheme {
    GradingScheme::z2(3, 5).unwrap()
}

fn theorem_pipeline() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cyclocat");
    let mut slowest = Duration::ZERO;
    for (n, m) in [(3, 5), (3, 7), (5, 7), (5, 11), (7, 11)] {
        let start = Instant::now();
        let out = Command::new(bin)
            .args(["verify-theorem", "--n", &n.to_string(), "--m", &m.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        let text = String::from_utf8_lossy(&out.stdout);
        ensure(out.status.success(), || format!("({n}, {m}) exited with {}: {text}", out.status))?;
        for k in 1..=4 {
            ensure(text.contains(&format!("step{k}: PASS")), || format!("({n}, {m}) step {k} missing"))?;
        }
        ensure(took < Duration::from_secs(1), || format!("({n}, {m}) took {took:?}"))?;
        ensure(check_product_identity(n, m).unwrap() && check_bezout_identity(n, m).unwrap(), || {
            format!("({n}, {m}) step 4 identities")
        })?;
    }
    Ok(format!("5 pairs, slowest run {slowest:.2?}"))
}

fn cyclotomic_oracle() -> Outcome {
    let qm1 = IntPolynomial::q_power_minus_one;
    let num = &qm1(15) * &qm1(1);
    let den = &qm1(3) * &qm1(5);
    let quotient = num.exact_div(&den).map_err(|e| e.to_string())?;
    let expected = IntPolynomial::from_i64s(&[1, -1, 0, 1, -1, 1, 0, -1, 1]);
    let phi = cyclotomic(15).unwrap();
    ensure(phi == quotient && phi == expected, || format!("Φ15 = {phi}, quotient = {quotient}"))?;
    Ok(format!("Φ15 = {}", phi.display_with("q")))
}

fn crt_correspondence() -> Outcome {
    ensure(check_crt_correspondence(3, 5).unwrap(), || "library check".into())?;
    let (alpha, beta) = crt_exponents(3, 5).unwrap();
    // image of [3]_x and [5]_y modulo q^15 - 1, against [15]_q/[5]_q and [15]_q/[3]_q
    let image = |e: u64, len: u64| {
        let mut c = vec![0i64; 15];
        for i in 0..len {
            c[((i * e) % 15) as usize] += 1;
        }
        IntPolynomial::from_i64s(&c)
    };
    let q15 = quantum_integer(15).unwrap();
    let fold = |p: IntPolynomial| p.reduce_exponents(15);
    ensure(image(alpha, 3) == fold(q15.exact_div(&quantum_integer(5).unwrap()).unwrap()), || "[3]_x".into())?;
    ensure(image(beta, 5) == fold(q15.exact_div(&quantum_integer(3).unwrap()).unwrap()), || "[5]_y".into())?;
    let mut seen = [false; 15];
    for i in 0..3u64 {
        for j in 0..5u64 {
            let e = (i * alpha + j * beta) % 15;
            ensure(!seen[e as usize] && (e % 3, e % 5) == (i, j), || format!("x^{i} y^{j}"))?;
            seen[e as usize] = true;
        }
    }
    Ok(format!("x -> q^{alpha}, y -> q^{beta}, 15/15 monomials round trip"))
}

fn orthogonality() -> Outcome {
    let s = z2();
    let mut rng = rng_from_seed(1001);
    let start = Instant::now();
    let mut max_dim = 0;
    for k in 0..200 {
        let x = random_module_in(&s, Family::KerP0, 60, &mut rng);
        let y = random_module_in(&s, Family::KerP1, 60, &mut rng);
        max_dim = max_dim.max(x.dim()).max(y.dim());
        ensure(in_kernel_p0(&x) && in_kernel_p1(&y), || format!("pair {k} not in the kernels"))?;
        let xy = stable_hom(&x, &y).map_err(|e| e.to_string())?.dim();
        let yx = stable_hom(&y, &x).map_err(|e| e.to_string())?.dim();
        ensure(xy == 0 && yx == 0, || format!("pair {k}: stable Hom dims {xy}, {yx}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("200/200 pairs, dims up to {max_dim}, {took:.2?}"))
}

fn intersection() -> Outcome {
    let s = z2();
    let mut rng = rng_from_seed(1002);
    for k in 0..200 {
        let x = random_module_in(&s, Family::BothKernels, 60, &mut rng);
        ensure(in_kernel_p0(&x) && in_kernel_p1(&x), || format!("module {k} not in both kernels"))?;
        ensure(is_projective(&x), || format!("module {k} in both kernels is not projective"))?;
    }
    for k in 0..200 {
        let p = random_module_in(&s, Family::Projective, 60, &mut rng);
        ensure(is_projective(&p), || format!("projective {k} rejected"))?;
        ensure(in_kernel_p0(&p) && in_kernel_p1(&p), || format!("projective {k} outside a kernel"))?;
    }
    Ok("200/200 both-kernel modules projective, 200/200 projectives in both kernels".into())
}

fn counterexample() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/counterexample.json");
    let c = read_module(&path).map_err(|e| e.to_string())?;
    ensure(c == GradedModule::counterexample(3, 5).unwrap(), || "fixture differs from the library module".into())?;
    ensure(c.dim() == 15 && c.validate().is_ok(), || "invalid".into())?;
    ensure(!is_projective(&c), || "projective".into())?;
    ensure(in_kernel_p0(&c) && in_kernel_p1(&c), || "not in both kernels".into())?;
    Ok("15-dim cyclic module: valid, not projective, in ker P0 and ker P1".into())
}

fn factorization() -> Outcome {
    let s = z2();
    let mut rng = rng_from_seed(1003);
    for k in 0..100 {
        let x = random_module_in(&s, Family::Any, 15, &mut rng);
        let y = random_module_in(&s, Family::KerP1, 15, &mut rng);
        ensure(in_kernel_p1(&y), || format!("instance {k}: Y not in ker P1"))?;
        let f = random_morphism(&x, &y, &mut rng).map_err(|e| e.to_string())?;
        let g = factor_through_eta(&f).map_err(|e| format!("instance {k}: {e}"))?;
        let eta = eta(&x).map_err(|e| e.to_string())?;
        ensure(g.compose(&eta).map_err(|e| e.to_string())? == f, || format!("instance {k}: g∘η ≠ f"))?;
    }
    Ok("100/100 factorizations with g∘η = f".into())
}

fn k0_laws() -> Outcome {
    let s = z2();
    let mut rng = rng_from_seed(1004);
    for k in 0..100 {
        let x = random_module_in(&s, Family::Any, 10, &mut rng);
        let y = random_module_in(&s, Family::Any, 10, &mut rng);
        let (cx, cy) = (class_of(&x).unwrap(), class_of(&y).unwrap());
        ensure(class_of(&x.direct_sum(&y).unwrap()).unwrap() == &cx + &cy, || format!("pair {k}: sum"))?;
        ensure(class_multiplicativity_check(&x, &y).unwrap(), || format!("pair {k}: product"))?;
        let gens: Vec<_> = random_vectors(&y, &mut rng).into_iter().take(2).collect();
        let (_, inc) = submodule_generated_by(&y, &gens).map_err(|e| e.to_string())?;
        let (_, proj) = quotient(&inc).map_err(|e| e.to_string())?;
        let t = cone_from_ses(&inc, &proj).map_err(|e| e.to_string())?;
        ensure(class_additivity_check(&t).unwrap(), || format!("pair {k}: triangle"))?;
        let p = random_module_in(&s, Family::Projective, 30, &mut rng);
        let c = class_of(&p).unwrap();
        ensure(c.is_zero() && c.quotient_class().is_zero(), || format!("pair {k}: projective class {c}"))?;
        ensure(c.cyclotomic_image().unwrap().is_zero(), || format!("pair {k}: projective image"))?;
    }
    // the ideal generators themselves vanish in the quotient
    let nx = LaurentPolynomial2::from_x_poly(&quantum_integer(3).unwrap());
    ensure(QuotientElementXY::reduce(3, 5, &nx).is_zero(), || "[3]_x".into())?;
    Ok("100/100 pairs: sums, products, triangles, projectives".into())
}

fn single_algebra() -> Outcome {
    for n in [2, 3, 5, 7] {
        let r = single_algebra_k0(n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("n = {n}: {r}"))?;
        let x = IntPolynomial::q();
        let two_sided = (&r.inverse * &x).rem_monic(&quantum_integer(n).unwrap()).unwrap();
        ensure(two_sided == IntPolynomial::constant(Integer::from(1)), || format!("n = {n}: x^-1 x"))?;
    }
    Ok("n = 2, 3, 5, 7".into())
}

fn interval_soundness() -> Outcome {
    let schemes = [z2(), GradingScheme::cyclic(3, 5).unwrap(), GradingScheme::z2(5, 7).unwrap()];
    let families = [Family::Any, Family::KerP0, Family::KerP1];
    let mut rng = rng_from_seed(1005);
    for k in 0..200 {
        let s = &schemes[k % schemes.len()];
        let x = random_module_in(s, families[k % families.len()], 25, &mut rng);
        let r = if k % 2 == 0 { restrict_p0(&x) } else { restrict_p1(&x) };
        let d = decompose_intervals(&r);
        ensure(d.total_dim() == x.dim(), || format!("module {k}: total dimension"))?;
        ensure(d.is_sound(&r), || format!("module {k}: ranks differ"))?;
        let chains = d.chain_vectors(&x);
        for (g, &dim) in x.dims() {
            let vs = chains.get(g).cloned().unwrap_or_default();
            ensure(vs.len() == dim && Matrix::from_columns(x.field(), dim, &vs).rank() == dim, || {
                format!("module {k}: chains are not a basis at {g:?}")
            })?;
        }
    }
    Ok("200/200 restricted modules".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("theorem pipeline", theorem_pipeline),
        ("cyclotomic oracle", cyclotomic_oracle),
        ("CRT correspondence", crt_correspondence),
        ("orthogonality", orthogonality),
        ("intersection", intersection),
        ("counterexample", counterexample),
        ("factorization", factorization),
        ("K0 laws", k0_laws),
        ("single algebra", single_algebra),
        ("interval decomposition", interval_soundness),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
