//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible with --nocapture). Tolerances are pinned as
//! constants next to the checks they govern; exact checks use exact
//! arithmetic and no tolerance at all.

use std::panic::AssertUnwindSafe;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqdisc_core::{
    construct_case_i, construct_case_ii, construct_case_iii, discriminant, f2::squarefree_mod2,
    find_all_roots, rasterize, reciprocal_square_criterion, render_ppm, resultant,
    ApproxCertificate, BigInt, BigRational, CoeffSet, Complex64, IntPolynomial, RenderConfig,
};

const INSTANCES_PER_CASE: usize = 200;
const CERTIFIED_ROOTS: usize = 25;
const CERT_NORM_BOUND: f64 = 0.95;
const CERT_EPSILONS: [f64; 2] = [1e-2, 1e-3];
const SECTOR_DEGREES: f64 = 5.0;
const CIRCLE_TOL_PIXELS: f64 = 2.0;
const RECONSTRUCTION_REL_TOL: f64 = 1e-6;
const ROOT_OF_UNITY_TOL: f64 = 1e-7;

fn criterion(number: usize, name: &str, body: impl FnOnce() -> String) {
    match std::panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(detail) => println!("criterion {number} ({name}): PASS, {detail}"),
        Err(cause) => {
            println!("criterion {number} ({name}): FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn sqdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqdisc"))
        .args(args)
        .output()
        .expect("binary runs")
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

fn all_ones(degree: usize) -> IntPolynomial {
    IntPolynomial::from_i64(&vec![1; degree + 1])
}

#[test]
fn acceptance_1_exact_identity_suite() {
    criterion(1, "exact identities", || {
        for n in 1..=30usize {
            let mut coeffs = vec![0i64; n + 2];
            coeffs[0] = -1;
            coeffs[n + 1] = 1;
            let d = discriminant(&IntPolynomial::from_i64(&coeffs)).unwrap();
            let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
            let expected = BigInt::from(sign) * BigInt::from(n as i64 + 1).pow(n as u32 + 1);
            assert_eq!(d.value, BigRational::from(expected), "X^{}-1", n + 1);
        }
        let mut square_count = 0;
        for n in (1..=101usize).step_by(4) {
            let d = discriminant(&all_ones(n)).unwrap();
            assert!(d.is_square, "all-ones degree {n} must have square discriminant");
            assert!(!d.is_zero, "all-ones degree {n} is squarefree");
            square_count += 1;
        }
        format!("30 closed-form discriminants, {square_count} square all-ones checks")
    });
}

#[test]
fn acceptance_2_product_rule_suite() {
    criterion(2, "product rule", || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..1000 {
            let f = random_poly(&mut rng, 6, 3);
            let g = random_poly(&mut rng, 6, 3);
            let lhs = discriminant(&(&f * &g)).unwrap().value;
            let r = resultant(&f, &g).unwrap();
            let rhs = discriminant(&f).unwrap().value
                * discriminant(&g).unwrap().value
                * BigRational::from(&r * &r);
            assert_eq!(lhs, rhs, "trial {trial}: f={f} g={g}");
        }
        "1000 exact product identities".into()
    });
}

#[test]
fn acceptance_3_reciprocal_criterion_suite() {
    criterion(3, "reciprocal criterion and products", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..1000 {
            let m = rng.gen_range(1..=6usize);
            let mut head: Vec<i64> = (0..m).map(|_| rng.gen_range(-5..=5)).collect();
            if head[0] == 0 {
                head[0] = rng.gen_range(1..=5);
            }
            let mut coeffs = head.clone();
            coeffs.push(rng.gen_range(-5..=5));
            coeffs.extend(head.iter().rev());
            let f = IntPolynomial::from_i64(&coeffs);
            let fast = reciprocal_square_criterion(&f).unwrap();
            let exact = discriminant(&f).unwrap().is_square;
            assert_eq!(fast, exact, "trial {trial}: f={f}");
        }
        for trial in 0..500 {
            let degree = 2 * rng.gen_range(1..=4usize);
            let f = loop {
                let f = random_poly(&mut rng, degree, 3);
                if f.degree() == Some(degree) && f.constant_term() != BigInt::from(0) {
                    break f;
                }
            };
            let k = [1usize, 3, 5][rng.gen_range(0..3)];
            let product = &f * &f.compose_power(k).unwrap();
            assert!(
                discriminant(&product).unwrap().is_square,
                "trial {trial}: f={f} k={k}"
            );
        }
        "1000 criterion agreements, 500 square products".into()
    });
}

#[test]
fn acceptance_4_construction_suite() {
    criterion(4, "constructions", || {
        let pm1 = CoeffSet::new([-1, 1]).unwrap();
        let zpm1 = CoeffSet::new([-1, 0, 1]).unwrap();
        let zo = CoeffSet::new([0, 1]).unwrap();
        let two = CoeffSet::new([-2, -1, 1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);

        for trial in 0..INSTANCES_PER_CASE {
            let set = [&pm1, &zpm1, &two][trial % 3];
            let k = 2 * rng.gen_range(1..=6usize);
            let g = random_set_poly(&mut rng, set, k - 1);
            let elems = set.elements();
            let a = BigInt::from(elems[rng.gen_range(0..elems.len())]);
            let f = construct_case_i(&g, k, &a, set).unwrap();
            assert_eq!(f.degree(), Some(4 * k), "trial {trial}");
            assert!(f.is_reciprocal(), "trial {trial}");
            for c in f.coeffs() {
                assert!(set.contains_bigint(c), "trial {trial}: coefficient {c}");
            }
            let one = BigInt::from(1);
            let minus = BigInt::from(-1);
            let expected =
                BigInt::from(2) * (g.eval_bigint(&one) + g.eval_bigint(&minus)) + &a;
            assert_eq!(f.eval_bigint(&one), expected, "trial {trial}");
            assert_eq!(f.eval_bigint(&minus), expected, "trial {trial}");
            let d = discriminant(&f).unwrap();
            assert!(d.is_square, "trial {trial}: f={f}");
            if std::ptr::eq(set, &pm1) {
                assert!(squarefree_mod2(&f).unwrap(), "trial {trial}");
                assert!(!d.is_zero, "trial {trial}");
            }
        }

        for trial in 0..INSTANCES_PER_CASE {
            let set = if trial % 2 == 0 { &zo } else { &pm1 };
            let k = [3usize, 5, 7][rng.gen_range(0..3)];
            let g = random_set_poly(&mut rng, set, k - 1);
            let f = construct_case_ii(&g, k, set).unwrap();
            assert_eq!(f.degree(), Some(k * k - 1), "trial {trial}");
            for c in f.coeffs() {
                assert!(set.contains_bigint(c), "trial {trial}: coefficient {c}");
            }
            assert!(discriminant(&f).unwrap().is_square, "trial {trial}: f={f}");
            // g divides f, so its zeros survive.
            assert_eq!(resultant(&g, &f).unwrap(), BigInt::from(0), "trial {trial}");
        }

        for trial in 0..INSTANCES_PER_CASE {
            let set = if trial % 4 == 0 { &zpm1 } else { &pm1 };
            let k = [3usize, 5, 7, 9][rng.gen_range(0..4)];
            let g = loop {
                let g = random_set_poly(&mut rng, set, k - 1);
                if g.eval_bigint(&BigInt::from(1)) != BigInt::from(0) {
                    break g;
                }
            };
            let f = construct_case_iii(&g, k, set).unwrap();
            let g1 = g.eval_bigint(&BigInt::from(1));
            let u = BigInt::from(if g1 > BigInt::from(0) { -1 } else { 1 });
            let abs_g1 = usize::try_from(g1.magnitude()).unwrap();
            assert_eq!(f.degree(), Some(4 * k + 4 * abs_g1), "trial {trial}");
            assert_eq!(f.eval_bigint(&BigInt::from(1)), u, "trial {trial}");
            assert_eq!(f.eval_bigint(&BigInt::from(-1)), u, "trial {trial}");
            for c in f.coeffs() {
                assert!(set.contains_bigint(c), "trial {trial}: coefficient {c}");
            }
            assert!(discriminant(&f).unwrap().is_square, "trial {trial}: f={f}");
        }

        format!("{INSTANCES_PER_CASE} instances per construction")
    });
}

#[test]
fn acceptance_5_end_to_end_certification() {
    criterion(5, "certified approximation", || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut jobs: Vec<(String, usize)> = Vec::new();
        while jobs.len() < CERTIFIED_ROOTS {
            let degree = rng.gen_range(1..=10usize);
            let coeffs: Vec<i64> =
                (0..=degree).map(|_| [-1, 1][rng.gen_range(0..2usize)]).collect();
            let f = IntPolynomial::from_i64(&coeffs);
            let roots = find_all_roots(&f).unwrap();
            let mut sorted = roots.roots().to_vec();
            sorted.sort_by(|a, b| {
                (a.norm(), a.arg()).partial_cmp(&(b.norm(), b.arg())).unwrap()
            });
            let eligible: Vec<usize> = (0..sorted.len())
                .filter(|&i| sorted[i].norm() < CERT_NORM_BOUND)
                .collect();
            if eligible.is_empty() {
                continue;
            }
            let index = eligible[rng.gen_range(0..eligible.len())];
            jobs.push((f.to_string(), index));
        }
        let dir = tempfile::tempdir().unwrap();
        let mut runs = 0;
        for (job, (poly, index)) in jobs.iter().enumerate() {
            for (e, eps) in CERT_EPSILONS.iter().enumerate() {
                let cert_path = dir.path().join(format!("cert_{job}_{e}.txt"));
                let eps_text = format!("{eps}");
                let index_text = index.to_string();
                let out = sqdisc(&[
                    "approx", "--poly", poly, "--root-index", &index_text,
                    "--eps", &eps_text, "--set", "pm1",
                    "--out", cert_path.to_str().unwrap(),
                ]);
                assert_eq!(
                    out.status.code(),
                    Some(0),
                    "job {job} eps {eps}: {}",
                    String::from_utf8_lossy(&out.stderr)
                );
                let cert =
                    ApproxCertificate::parse(&std::fs::read_to_string(&cert_path).unwrap())
                        .unwrap();
                assert!(
                    cert.achieved_error < *eps,
                    "job {job}: error {} at eps {eps}",
                    cert.achieved_error
                );
                assert!(cert.disc.is_square, "job {job}");
                assert!(!cert.inverted, "job {job}: target was inside the disk");
                let check = sqdisc(&["verify", "--cert", cert_path.to_str().unwrap()]);
                assert_eq!(check.status.code(), Some(0), "job {job} eps {eps}");
                runs += 1;
            }
        }
        format!("{runs} approx+verify subprocess round trips")
    });
}

/// Exact squared Euclidean distance transform, one dimension.
fn distance_transform_1d(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    let mut v = vec![0usize; n];
    let mut z = vec![0.0f64; n + 1];
    let mut k = 0usize;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    let sep = |p: usize, q: usize| {
        (f[q] + (q * q) as f64 - f[p] - (p * p) as f64) / (2.0 * (q as f64 - p as f64))
    };
    for q in 1..n {
        let mut s = sep(v[k], q);
        while s <= z[k] {
            k -= 1;
            s = sep(v[k], q);
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        d[q] = ((q as f64) - v[k] as f64).powi(2) + f[v[k]];
    }
    d
}

/// Larger than any true squared pixel distance on a 512 grid; keeps the
/// envelope arithmetic finite on rows with no sites.
const FAR: f64 = 1e9;

/// Squared distances from every pixel to the nearest site pixel. Exact for
/// every pixel as long as at least one site exists.
fn distance_transform_2d(width: usize, height: usize, sites: &[bool]) -> Vec<f64> {
    let mut grid: Vec<f64> = sites.iter().map(|&s| if s { 0.0 } else { FAR }).collect();
    for y in 0..height {
        let row = distance_transform_1d(&grid[y * width..(y + 1) * width]);
        grid[y * width..(y + 1) * width].copy_from_slice(&row);
    }
    let mut column = vec![0.0; height];
    for x in 0..width {
        for y in 0..height {
            column[y] = grid[y * width + x];
        }
        let out = distance_transform_1d(&column);
        for y in 0..height {
            grid[y * width + x] = out[y];
        }
    }
    grid
}

fn littlewood_render(max_degree: usize) -> (RenderConfig, sqdisc_core::Raster) {
    let config = RenderConfig::new(
        CoeffSet::new([-1, 1]).unwrap(),
        max_degree,
        Complex64::new(0.0, 0.0),
        2.0,
        512,
        512,
    )
    .unwrap();
    let (raster, _, skipped) = rasterize(&config).unwrap();
    assert_eq!(skipped, 0, "no polynomial may be skipped");
    (config, raster)
}

fn mean_grey_to_red_distance(config: &RenderConfig, raster: &sqdisc_core::Raster) -> f64 {
    let red: Vec<bool> = raster.square_counts().iter().map(|&c| c > 0).collect();
    assert!(red.iter().any(|&r| r), "square channel must be nonempty");
    let squared = distance_transform_2d(config.width, config.height, &red);
    let mut sum = 0.0;
    let mut count = 0usize;
    for (i, &c) in raster.all_counts().iter().enumerate() {
        if c > 0 {
            sum += squared[i].sqrt();
            count += 1;
        }
    }
    sum / count as f64
}

#[test]
fn acceptance_6_figure_reproduction() {
    criterion(6, "atlas rendering", || {
        let (config12, raster12) = littlewood_render(12);
        let (config16, raster16) = littlewood_render(16);

        // (a) The square channel hugs the whole unit circle at degree 16:
        // every 5 degree sector holds a red pixel within 2 pixels of it.
        let pixel_units = 2.0 * config16.half_width / config16.width as f64;
        let sectors = (360.0 / SECTOR_DEGREES) as usize;
        let mut occupied = vec![false; sectors];
        for (i, &c) in raster16.square_counts().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let x = (i % config16.width) as f64;
            let y = (i / config16.width) as f64;
            let re = -config16.half_width + (x + 0.5) * pixel_units;
            let im = config16.half_width - (y + 0.5) * pixel_units;
            let radius = (re * re + im * im).sqrt();
            if (radius - 1.0).abs() <= CIRCLE_TOL_PIXELS * pixel_units {
                let angle = im.atan2(re).to_degrees().rem_euclid(360.0);
                occupied[(angle / SECTOR_DEGREES) as usize % sectors] = true;
            }
        }
        let missing: Vec<usize> = (0..sectors).filter(|&s| !occupied[s]).collect();
        assert!(missing.is_empty(), "empty sectors at {missing:?}");

        // (b) Denser square coverage with growing degree.
        let mean12 = mean_grey_to_red_distance(&config12, &raster12);
        let mean16 = mean_grey_to_red_distance(&config16, &raster16);
        assert!(
            mean16 <= mean12,
            "mean grey-to-red distance grew: {mean16} > {mean12}"
        );
        format!(
            "all {sectors} sectors covered, mean distance {mean16:.3}px (deg 16) <= {mean12:.3}px (deg 12)"
        )
    });
}

#[test]
fn acceptance_7_determinism() {
    criterion(7, "determinism", || {
        let dir = tempfile::tempdir().unwrap();
        let run_approx = |name: &str| -> Vec<u8> {
            let path = dir.path().join(name);
            let out = sqdisc(&[
                "approx", "--poly", "-1,-1,-1,1,-1,-1,-1,1,1,1", "--root-index", "2",
                "--eps", "1e-3", "--set", "pm1", "--out", path.to_str().unwrap(),
            ]);
            assert_eq!(out.status.code(), Some(0));
            std::fs::read(&path).unwrap()
        };
        assert_eq!(run_approx("a1.txt"), run_approx("a2.txt"));

        let run_render = |img: &str, csv: &str| -> (Vec<u8>, Vec<u8>, Vec<u8>) {
            let img = dir.path().join(img);
            let csv = dir.path().join(csv);
            let out = sqdisc(&[
                "render", "--set", "pm1", "--max-degree", "10",
                "--out", img.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
                "--width", "256", "--height", "256",
            ]);
            assert_eq!(out.status.code(), Some(0));
            (out.stdout, std::fs::read(&img).unwrap(), std::fs::read(&csv).unwrap())
        };
        let first = run_render("r1.ppm", "r1.csv");
        let second = run_render("r2.ppm", "r2.csv");
        assert_eq!(first, second);

        // Parallel accumulation equals serial accumulation exactly.
        let config = RenderConfig::new(
            CoeffSet::new([-1, 1]).unwrap(),
            10,
            Complex64::new(0.0, 0.0),
            2.0,
            256,
            256,
        )
        .unwrap();
        let mut rasters = Vec::new();
        for threads in [1usize, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let (raster, records, _) = pool.install(|| rasterize(&config)).unwrap();
            rasters.push((render_ppm(&config, &raster), sqdisc_core::csv_bytes(&records)));
        }
        assert_eq!(rasters[0], rasters[1], "1-thread and 3-thread rasters differ");
        "byte-identical reruns, parallel raster equals serial".into()
    });
}

#[test]
fn acceptance_8_root_finder_oracles() {
    criterion(8, "root-finder oracles", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for trial in 0..40 {
            let degree = rng.gen_range(1..=32usize);
            let f = loop {
                let f = random_poly(&mut rng, degree, 2);
                if f.degree() == Some(degree) {
                    break f;
                }
            };
            let roots = find_all_roots(&f).unwrap();
            let coeffs = f.coeffs_f64();
            let mut product = vec![Complex64::new(1.0, 0.0)];
            for &root in roots.roots() {
                let mut next = vec![Complex64::new(0.0, 0.0); product.len() + 1];
                for (i, &c) in product.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * root;
                }
                product = next;
            }
            let scale = coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            let lead = coeffs[degree];
            for (i, &c) in coeffs.iter().enumerate() {
                let reconstructed = product[i] * lead;
                let err = (reconstructed - Complex64::new(c, 0.0)).norm();
                assert!(
                    err <= RECONSTRUCTION_REL_TOL * scale,
                    "trial {trial}: coefficient {i} off by {err:.3e} for f={f}"
                );
            }
        }

        for n in 1..=101usize {
            let roots = find_all_roots(&all_ones(n)).unwrap();
            let order = n + 1;
            let mut seen = vec![false; order];
            for &z in roots.roots() {
                let turn = z.arg() / (2.0 * std::f64::consts::PI) * order as f64;
                let j = (turn.round() as i64).rem_euclid(order as i64) as usize;
                let exact = Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * j as f64 / order as f64,
                );
                assert!(
                    (z - exact).norm() <= ROOT_OF_UNITY_TOL,
                    "degree {n}: root {z} vs unity power {j}"
                );
                assert!(j != 0 && !seen[j], "degree {n}: unity power {j} duplicated");
                seen[j] = true;
            }
        }
        "40 reconstructions at degree <= 32, all-ones roots matched for n <= 101".into()
    });
}
