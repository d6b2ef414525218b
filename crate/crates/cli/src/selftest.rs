//! Built-in property suites on fixed seeds. Quick versions of the library's
//! heavier test batteries, runnable from any installed binary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqdisc_core::{
    approximate_square_disc, construct_case_i, construct_case_ii, construct_case_iii,
    discriminant, find_all_roots, reciprocal_square_criterion, resultant, ApproxCertificate,
    BigInt, CoeffSet, Complex64, IntPolynomial,
};

type SuiteError = Box<dyn std::error::Error>;
type Suite = fn() -> Result<usize, SuiteError>;

pub fn run_all() -> bool {
    let suites: [(&str, Suite); 6] = [
        ("exact-identities", exact_identities),
        ("product-rule", product_rule),
        ("reciprocal-criterion", reciprocal_criterion),
        ("constructions", constructions),
        ("root-finder", root_finder),
        ("certificate-roundtrip", certificate_roundtrip),
    ];
    let mut ok = true;
    for (name, suite) in suites {
        match suite() {
            Ok(checks) => println!("selftest {name}: ok ({checks} checks)"),
            Err(msg) => {
                println!("selftest {name}: FAILED: {msg}");
                ok = false;
            }
        }
    }
    ok
}

fn ensure(cond: bool, msg: impl Fn() -> String) -> Result<(), SuiteError> {
    if cond {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize, height: i64) -> IntPolynomial {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=degree)
        .map(|i| loop {
            let c = rng.gen_range(-height..=height);
            if c != 0 || i != degree {
                return c;
            }
        })
        .collect();
    IntPolynomial::from_i64(&coeffs)
}

fn random_set_poly(rng: &mut ChaCha8Rng, set: &CoeffSet, degree: usize) -> IntPolynomial {
    let elems = set.elements();
    let nonzero: Vec<i64> = elems.iter().copied().filter(|a| *a != 0).collect();
    let coeffs: Vec<i64> = (0..=degree)
        .map(|i| {
            if i == 0 || i == degree {
                nonzero[rng.gen_range(0..nonzero.len())]
            } else {
                elems[rng.gen_range(0..elems.len())]
            }
        })
        .collect();
    IntPolynomial::from_i64(&coeffs)
}

fn exact_identities() -> Result<usize, SuiteError> {
    let mut checks = 0;
    for n in 1..=12usize {
        let mut coeffs = vec![0i64; n + 2];
        coeffs[0] = -1;
        coeffs[n + 1] = 1;
        let d = discriminant(&IntPolynomial::from_i64(&coeffs))?;
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let expected = BigInt::from(sign) * BigInt::from(n as i64 + 1).pow(n as u32 + 1);
        ensure(d.value == expected.into(), || format!("cyclotomic-like identity at n={n}"))?;
        checks += 1;
    }
    let p5 = IntPolynomial::from_i64(&[1, 1, 1, 1, 1, 1]);
    let d = discriminant(&p5)?;
    ensure(d.value == BigInt::from(1296).into() && d.is_square, || "all-ones quintic".into())?;
    let d = discriminant(&IntPolynomial::from_i64(&[1, 1, 1]))?;
    ensure(d.value == BigInt::from(-3).into() && !d.is_square, || "quadratic".into())?;
    let r = resultant(
        &IntPolynomial::from_i64(&[1, 1, 1]),
        &IntPolynomial::from_i64(&[1, 2]),
    )?;
    ensure(r == BigInt::from(3), || "resultant 3".into())?;
    Ok(checks + 3)
}

fn product_rule() -> Result<usize, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..100 {
        let f = random_poly(&mut rng, 5, 3);
        let g = random_poly(&mut rng, 5, 3);
        let lhs = discriminant(&(&f * &g))?.value;
        let r = resultant(&f, &g)?;
        let rhs = discriminant(&f)?.value * discriminant(&g)?.value
            * sqdisc_core::BigRational::from(&r * &r);
        ensure(lhs == rhs, || format!("product rule failed at trial {trial}: f={f} g={g}"))?;
    }
    Ok(100)
}

fn reciprocal_criterion() -> Result<usize, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..100 {
        let m = rng.gen_range(1..=5usize);
        let mut coeffs: Vec<i64> = (0..m).map(|_| rng.gen_range(-4..=4)).collect();
        let middle = rng.gen_range(-4..=4i64);
        if coeffs[0] == 0 {
            coeffs[0] = 1;
        }
        let mut full = coeffs.clone();
        full.push(middle);
        full.extend(coeffs.iter().rev());
        let f = IntPolynomial::from_i64(&full);
        let by_criterion = reciprocal_square_criterion(&f)?;
        let exact = discriminant(&f)?.is_square;
        ensure(by_criterion == exact, || {
            format!("criterion mismatch at trial {trial}: f={f}")
        })?;
    }
    Ok(100)
}

fn constructions() -> Result<usize, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let pm1 = CoeffSet::new([-1, 1]).map_err(|e| e.to_string())?;
    let zo = CoeffSet::new([0, 1]).map_err(|e| e.to_string())?;
    let mut checks = 0;
    for trial in 0..15 {
        let k = 2 * rng.gen_range(1..=3usize);
        let g = random_set_poly(&mut rng, &pm1, k - 1);
        let f = construct_case_i(&g, k, &BigInt::from(1), &pm1).map_err(|e| e.to_string())?;
        let d = discriminant(&f)?;
        let at = |x: i64| f.eval_bigint(&BigInt::from(x));
        let expected = BigInt::from(2) * (g.eval_bigint(&BigInt::from(1))
            + g.eval_bigint(&BigInt::from(-1)))
            + 1;
        let good = f.degree() == Some(4 * k)
            && f.is_reciprocal()
            && at(1) == expected
            && at(-1) == expected
            && d.is_square
            && !d.is_zero;
        ensure(good, || format!("negation construction invariants at trial {trial}"))?;
        checks += 1;
    }
    for trial in 0..15 {
        let k = 2 * rng.gen_range(1..=2usize) + 1;
        let set = if trial % 2 == 0 { &zo } else { &pm1 };
        let g = random_set_poly(&mut rng, set, k - 1);
        let f = construct_case_ii(&g, k, set).map_err(|e| e.to_string())?;
        let good = f.degree() == Some(k * k - 1) && discriminant(&f)?.is_square;
        ensure(good, || format!("multiplicative construction invariants at trial {trial}"))?;
        checks += 1;
    }
    for trial in 0..15 {
        let k = 2 * rng.gen_range(1..=2usize) + 1;
        let g = loop {
            let g = random_set_poly(&mut rng, &pm1, k - 1);
            if g.eval_bigint(&BigInt::from(1)) != BigInt::from(0) {
                break g;
            }
        };
        let f = construct_case_iii(&g, k, &pm1).map_err(|e| e.to_string())?;
        let g1: BigInt = g.eval_bigint(&BigInt::from(1));
        let u = BigInt::from(if g1 > BigInt::from(0) { -1 } else { 1 });
        let abs: usize = 4 * g1.magnitude().try_into().unwrap_or(0usize);
        let good = f.degree() == Some(4 * k + abs)
            && f.eval_bigint(&BigInt::from(1)) == u
            && f.eval_bigint(&BigInt::from(-1)) == u
            && discriminant(&f)?.is_square;
        ensure(good, || format!("run-insertion construction invariants at trial {trial}"))?;
        checks += 1;
    }
    Ok(checks)
}

fn root_finder() -> Result<usize, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checks = 0;
    for trial in 0..10 {
        let f = random_poly(&mut rng, 12, 5);
        if f.degree().unwrap_or(0) < 1 {
            continue;
        }
        let roots = find_all_roots(&f).map_err(|e| format!("trial {trial}: {e}"))?;
        let n = roots.degree();
        let cs = f.coeffs_f64();
        let sum: Complex64 = roots.roots().iter().sum();
        let expect_sum = -cs[n - 1] / cs[n];
        let scale = 1.0 + roots.roots().iter().map(|z| z.norm()).sum::<f64>();
        ensure((sum.re - expect_sum).abs() / scale < 1e-6 && sum.im.abs() / scale < 1e-6, || {
            format!("root sum mismatch at trial {trial}: f={f}")
        })?;
        let again = find_all_roots(&f).map_err(|e| e.to_string())?;
        ensure(roots.roots() == again.roots(), || format!("nondeterministic roots: f={f}"))?;
        checks += 2;
    }
    let p13 = IntPolynomial::from_i64(&[1; 14]);
    let roots = find_all_roots(&p13).map_err(|e| e.to_string())?;
    for z in roots.roots() {
        ensure((z.norm() - 1.0).abs() < 1e-7, || "all-ones roots must be unimodular".into())?;
    }
    Ok(checks + 1)
}

fn certificate_roundtrip() -> Result<usize, SuiteError> {
    let pm1 = CoeffSet::new([-1, 1]).map_err(|e| e.to_string())?;
    let f = IntPolynomial::from_i64(&[1, -1, -1]);
    let alpha = Complex64::new(0.6180339887498949, 0.0);
    let cert = approximate_square_disc(&f, alpha, 1e-2, &pm1, None).map_err(|e| e.to_string())?;
    let reparsed = ApproxCertificate::parse(&cert.to_document()).map_err(|e| e.to_string())?;
    ensure(reparsed == cert, || "document round trip changed the certificate".into())?;
    let violations = cert.verify();
    ensure(violations.is_empty(), || format!("fresh certificate rejected: {violations:?}"))?;
    ensure(cert.achieved_error < 1e-2, || "accuracy target missed".into())?;
    Ok(3)
}
