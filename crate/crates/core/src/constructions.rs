//! Square-discriminant constructions.
//!
//! Starting from f with coefficients in a finite set N and a target zero
//! alpha inside the unit disk, the pipeline truncates the power series
//! f/(1 - X^(n+1)) to a polynomial g of order k, then completes g to a
//! polynomial f_k whose discriminant is provably a perfect square:
//!
//!   case i   (N closed under negation, k even):
//!            h = g + X^k g(-X),  f_k = h + a X^(2k) + X^(2k+1) h_rev
//!   case ii  (N closed under multiplication, k odd):
//!            f_k = g(X) g(X^k)
//!   case iii ({-1, +1} in N, k odd):
//!            f_k = (1+X^k) g + u X^(2k) (1 + ... + X^(|l|-1))
//!                + X^(2k+|l|) (1+X^k) g_rev,
//!            u = -sign(g(1)), l = 4 g(1) - u
//!
//! The order k comes from a certified contour bound: once the series tail
//! B r^(k-1)/(1-r) drops below the minimum modulus m of the series on a
//! circle around alpha, a zero of f_k must lie inside that circle.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::certificate::{ApproxCertificate, GaloisFlags, RoucheData};
use crate::coeffset::{CoeffSet, ConstructionCase};
use crate::disc::{discriminant, reciprocal_square_criterion};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::roots::{
    find_all_roots, min_modulus_on_circle, nearest_root, relative_residual, CLUSTER_EPS,
};

/// A target passes as a root of f when its relative residual is below this.
pub const ALPHA_RESIDUAL_TOL: f64 = 1e-8;

/// First sample count for the contour minimum, doubled on failure.
const CONTOUR_SAMPLES_INITIAL: usize = 4096;
/// Sample-count ceiling before giving up on certifying the contour minimum.
const CONTOUR_SAMPLES_MAX: usize = 1 << 20;

/// Order-k truncation of the series f/(1 - X^(n+1)), whose coefficients
/// repeat those of f with period n+1. Two repairs keep the result usable:
/// a zero top coefficient is replaced by the set's smallest nonzero element
/// (ties toward positive), and with `force_nonzero_at_one` the top
/// coefficient is re-picked from {-1, +1} so that g(1) != 0, preferring a
/// value that lands g(1) on +-1 and then the positive sign.
pub fn periodic_truncation(
    f: &IntPolynomial,
    k: usize,
    set: &CoeffSet,
    force_nonzero_at_one: bool,
) -> Result<IntPolynomial> {
    set.check_member(f)?;
    if k < 2 {
        return Err(Error::InvalidArgument(
            "truncation order must be at least 2".into(),
        ));
    }
    let period = f.degree().expect("nonzero by membership") + 1;
    let mut b: Vec<BigInt> = (0..k).map(|j| f.coeff(j % period)).collect();
    if b[k - 1].is_zero() {
        b[k - 1] = BigInt::from(set.smallest_nonzero());
    }
    if force_nonzero_at_one {
        let at_one: BigInt = b.iter().sum();
        if at_one.is_zero() {
            if !set.contains_pm1 {
                return Err(Error::UnsupportedCoeffSet);
            }
            let head = &at_one - &b[k - 1];
            let plus = &head + BigInt::one();
            let minus = &head - BigInt::one();
            b[k - 1] = BigInt::from(if plus.abs().is_one() {
                1
            } else if minus.abs().is_one() {
                -1
            } else if !plus.is_zero() {
                1
            } else {
                -1
            });
        }
    }
    Ok(IntPolynomial::new(b))
}

fn check_order(k: usize, even: bool, label: &str) -> Result<()> {
    if k == 0 || (k % 2 == 0) != even {
        return Err(Error::InvalidArgument(format!(
            "{label} requires a {} order, got {k}",
            if even { "positive even" } else { "positive odd" }
        )));
    }
    Ok(())
}

fn check_degree(g: &IntPolynomial, k: usize) -> Result<()> {
    if g.degree() != Some(k - 1) {
        return Err(Error::InvalidArgument(format!(
            "truncation degree must be exactly {}, got {:?}",
            k - 1,
            g.degree()
        )));
    }
    Ok(())
}

/// h = g + X^k g(-X), then f_k = h + a X^(2k) + X^(2k+1) h_rev: a degree-4k
/// reciprocal polynomial with f_k(1) = f_k(-1), hence square discriminant
/// by the evaluation criterion. Needs g's coefficients closed under
/// negation within the set; the free middle coefficient a also comes from
/// the set.
pub fn construct_case_i(
    g: &IntPolynomial,
    k: usize,
    a: &BigInt,
    set: &CoeffSet,
) -> Result<IntPolynomial> {
    check_order(k, true, "the negation construction")?;
    check_degree(g, k)?;
    set.check_member(g)?;
    for (index, c) in g.coeffs().iter().enumerate() {
        if !set.contains_bigint(&(-c)) {
            return Err(Error::CoefficientOutsideSet {
                coeff: (-c).to_string(),
                index,
            });
        }
    }
    if !set.contains_bigint(a) {
        return Err(Error::InvalidArgument(format!(
            "free coefficient {a} lies outside the set"
        )));
    }
    let h = g + &g.negate_variable().shift(k);
    let middle = IntPolynomial::monomial(a.clone(), 2 * k);
    let f_k = &(&h + &middle) + &h.reverse()?.shift(2 * k + 1);
    debug_assert_eq!(f_k.degree(), Some(4 * k));
    debug_assert!(f_k.is_reciprocal());
    Ok(f_k)
}

/// f_k = g(X) g(X^k) for odd k and deg g = k - 1. Every coefficient is a
/// single product of two coefficients of g (the index split t = i + k j is
/// unique for i < k), so multiplication closure keeps f_k in the set, and
/// every zero of g stays a zero of f_k.
pub fn construct_case_ii(g: &IntPolynomial, k: usize, set: &CoeffSet) -> Result<IntPolynomial> {
    check_order(k, false, "the multiplicative construction")?;
    check_degree(g, k)?;
    if !set.multiplication_closed {
        return Err(Error::UnsupportedCoeffSet);
    }
    set.check_member(g)?;
    let f_k = g * &g.compose_power(k)?;
    set.check_member(&f_k).map_err(|e| {
        Error::Internal(format!("product construction left the coefficient set: {e}"))
    })?;
    Ok(f_k)
}

/// Three non-overlapping blocks: (1+X^k) g, then u X^(2k) (1+...+X^(|l|-1))
/// with u = -sign(g(1)) and |l| = 4|g(1)|+1, then the mirror image of the
/// first block. The result is reciprocal of degree 4(k + |g(1)|) with
/// f_k(1) = f_k(-1) = u.
pub fn construct_case_iii(g: &IntPolynomial, k: usize, set: &CoeffSet) -> Result<IntPolynomial> {
    check_order(k, false, "the plus-minus-one construction")?;
    check_degree(g, k)?;
    if !set.contains_pm1 {
        return Err(Error::UnsupportedCoeffSet);
    }
    set.check_member(g)?;
    let at_one = g.eval_bigint(&BigInt::one());
    if at_one.is_zero() {
        return Err(Error::InvalidArgument(
            "construction needs g(1) != 0; re-truncate with the fixup enabled".into(),
        ));
    }
    let u: i64 = if at_one.is_positive() { -1 } else { 1 };
    let run_len = (4u32 * &at_one.abs() + 1u32)
        .to_usize()
        .ok_or_else(|| Error::Internal("middle run length overflows usize".into()))?;
    let mut comb_coeffs = vec![BigInt::zero(); k + 1];
    comb_coeffs[0] = BigInt::one();
    comb_coeffs[k] = BigInt::one();
    let comb = IntPolynomial::new(comb_coeffs);
    let first = &comb * g;
    let middle = IntPolynomial::from_i64(&vec![u; run_len]).shift(2 * k);
    let last = (&comb * &g.reverse()?).shift(2 * k + run_len);
    let f_k = &(&first + &middle) + &last;
    debug_assert!(f_k.is_reciprocal());
    debug_assert_eq!(f_k.degree().map(|d| d % 4), Some(0));
    Ok(f_k)
}

/// Everything the truncation-order selection certifies: the contour radius
/// around the target, the certified minimum of the series on that contour,
/// the tail coefficient bound, the geometric growth rate |alpha| + radius,
/// and the resulting order k (parity already adjusted for the case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationChoice {
    pub k: usize,
    pub radius: f64,
    pub min_modulus: f64,
    pub coeff_bound: f64,
    pub growth_rate: f64,
}

/// Smallest k with coeff_bound * rate^(k-1) / (1 - rate) < min_modulus,
/// rounded up to the requested parity (minimum 2 for even, 3 for odd).
pub fn find_truncation_order(
    coeff_bound: f64,
    growth_rate: f64,
    min_modulus: f64,
    even: bool,
) -> Result<usize> {
    if !(growth_rate > 0.0 && growth_rate < 1.0) || !(min_modulus > 0.0) || !(coeff_bound >= 0.0) {
        return Err(Error::InvalidArgument(
            "order selection needs rate in (0,1), a positive minimum, and a nonnegative bound"
                .into(),
        ));
    }
    let holds =
        |k: usize| coeff_bound * growth_rate.powi(k as i32 - 1) / (1.0 - growth_rate) < min_modulus;
    let mut k = if coeff_bound == 0.0 {
        2
    } else {
        let target = min_modulus * (1.0 - growth_rate) / coeff_bound;
        let mut k = if target > 1.0 {
            2
        } else {
            ((target.ln() / growth_rate.ln()).ceil() + 1.0).max(2.0) as usize
        };
        while k > 2 && holds(k - 1) {
            k -= 1;
        }
        while !holds(k) {
            k += 1;
            if k > 100_000_000 {
                return Err(Error::Internal(
                    "truncation order exceeds any practical bound".into(),
                ));
            }
        }
        k
    };
    if even {
        k += k % 2;
    } else if k % 2 == 0 {
        k += 1;
    }
    if !even && k < 3 {
        k = 3;
    }
    Ok(k)
}

/// Picks the contour and the truncation order for approximating alpha by a
/// zero of the case construction. The radius is the largest circle that
/// stays within epsilon, keeps away from the other zeros of f inside the
/// closed unit disk, and stays inside the unit disk itself; the contour
/// minimum is certified by sampling with a Lipschitz slack, doubling the
/// sample count until the bound is positive.
pub fn choose_truncation_order(
    f: &IntPolynomial,
    alpha: Complex64,
    epsilon: f64,
    set: &CoeffSet,
    case: ConstructionCase,
) -> Result<TruncationChoice> {
    set.check_member(f)?;
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let dist = alpha.norm();
    if !(dist < 1.0) {
        return Err(Error::TargetNotInUnitDisk { modulus: dist });
    }
    let residual = relative_residual(f, alpha);
    if !(residual <= ALPHA_RESIDUAL_TOL) {
        return Err(Error::TargetNotARoot { residual });
    }

    let mut radius = epsilon.min((1.0 - dist) / 2.0);
    for &root in find_all_roots(f)?.roots() {
        if root.norm() <= 1.0 + 1e-9 {
            let d = (root - alpha).norm();
            if d > CLUSTER_EPS {
                radius = radius.min(d / 2.0);
            }
        }
    }

    let height = set.height as f64;
    let coeff_bound = match case {
        ConstructionCase::Multiplicative => 2.0 * height,
        _ => height + height.max(1.0),
    };
    let growth_rate = dist + radius;

    let mut samples = CONTOUR_SAMPLES_INITIAL;
    let min_modulus = loop {
        let m = min_modulus_on_circle(f, alpha, radius, samples)?;
        if m > 0.0 {
            break m;
        }
        if samples >= CONTOUR_SAMPLES_MAX {
            return Err(Error::IsolationFailure);
        }
        samples *= 2;
    };

    let k = find_truncation_order(
        coeff_bound,
        growth_rate,
        min_modulus,
        case.requires_even_k(),
    )?;
    Ok(TruncationChoice {
        k,
        radius,
        min_modulus,
        coeff_bound,
        growth_rate,
    })
}

/// End-to-end approximation: truncate, construct, locate the certified
/// zero, compute the exact discriminant, and cross-check every certificate
/// invariant before returning. An invariant failure here is a bug, not an
/// input problem, and surfaces as an internal error.
pub fn approximate_square_disc(
    f: &IntPolynomial,
    alpha: Complex64,
    epsilon: f64,
    set: &CoeffSet,
    forced_case: Option<ConstructionCase>,
) -> Result<ApproxCertificate> {
    set.check_member(f)?;
    let case = ConstructionCase::choose(set, forced_case)?;
    let choice = choose_truncation_order(f, alpha, epsilon, set, case)?;
    let g = periodic_truncation(
        f,
        choice.k,
        set,
        case == ConstructionCase::PlusMinusOne,
    )?;
    let f_k = match case {
        ConstructionCase::Negation => {
            construct_case_i(&g, choice.k, &BigInt::from(set.smallest_by_abs()), set)?
        }
        ConstructionCase::Multiplicative => construct_case_ii(&g, choice.k, set)?,
        ConstructionCase::PlusMinusOne => construct_case_iii(&g, choice.k, set)?,
    };

    let roots = find_all_roots(&f_k)?;
    let (_, beta, achieved_error) = nearest_root(roots.roots(), alpha)
        .ok_or_else(|| Error::Internal("constructed polynomial has no roots".into()))?;
    let disc = discriminant(&f_k)?;

    let mut problems: Vec<String> = Vec::new();
    // 1e-9 covers the root finder's own error on top of the contour bound.
    if !(achieved_error <= choice.radius + 1e-9) {
        problems.push(format!(
            "nearest zero at distance {achieved_error} misses the contour radius {}",
            choice.radius
        ));
    }
    if !(achieved_error < epsilon) {
        problems.push(format!(
            "nearest zero at distance {achieved_error} misses epsilon {epsilon}"
        ));
    }
    if !(beta.norm() < 1.0) {
        problems.push("certified zero left the open unit disk".into());
    }
    if !disc.is_square {
        problems.push("discriminant is not a perfect square".into());
    }
    if let Err(e) = set.check_member(&f_k) {
        problems.push(format!("output left the coefficient set: {e}"));
    }
    if case != ConstructionCase::Multiplicative && !reciprocal_square_criterion(&f_k)? {
        problems.push("evaluation criterion rejected a reciprocal construction".into());
    }
    let tail = choice.coeff_bound * choice.growth_rate.powi(choice.k as i32 - 1)
        / (1.0 - choice.growth_rate);
    if !(tail < choice.min_modulus) {
        problems.push("selected order does not satisfy the contour inequality".into());
    }
    if !problems.is_empty() {
        return Err(Error::Internal(problems.join("; ")));
    }

    let galois = GaloisFlags {
        in_alternating: disc.is_square && !disc.is_zero,
        in_wreath: f_k.is_reciprocal(),
    };
    Ok(ApproxCertificate {
        case_used: case,
        set: set.clone(),
        alpha,
        epsilon,
        k: choice.k,
        g,
        f_k,
        beta,
        achieved_error,
        rouche: RoucheData {
            radius: choice.radius,
            min_modulus: choice.min_modulus,
            coeff_bound: choice.coeff_bound,
            growth_rate: choice.growth_rate,
        },
        disc,
        galois,
        inverted: false,
    })
}
