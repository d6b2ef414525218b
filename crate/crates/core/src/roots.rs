//! Simultaneous root finding and the certified contour bounds used by the
//! truncation-order selection.
//!
//! The solver is Aberth-Ehrlich iteration from staggered circular starting
//! points, followed by Newton polishing. Evaluation switches to the reversed
//! polynomial outside the unit circle (f(z) = z^n q(1/z)), so intermediate
//! values stay bounded even at degrees in the thousands. Everything here is
//! sequential and allocation-order deterministic: the same input yields
//! bitwise-identical output.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Residuals at or below this (relative to the coefficient-weighted
/// evaluation scale) accept a computed root.
pub const RESIDUAL_ACCEPT: f64 = 1e-10;
/// Roots whose conjugates agree to within this are snapped into exactly
/// conjugate pairs (the input has real coefficients, so the true root
/// multiset is exactly self-conjugate). Kept well above double-root
/// splitting (~1e-8) and well below genuine root separations.
const CONJ_PAIR_TOL: f64 = 1e-6;
/// Two computed roots closer than this are treated as one cluster.
pub const CLUSTER_EPS: f64 = 1e-8;
/// Iteration cap for the simultaneous solver.
pub const MAX_ITERATIONS: usize = 1000;

/// Computed roots of an integer polynomial. `residuals[i]` is the
/// evaluation magnitude at `roots[i]` relative to the coefficient-weighted
/// scale sum |a_j| |z|^j, which is the backward-error-meaningful quantity.
#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<Complex64>,
    residuals: Vec<f64>,
    degree: usize,
}

impl RootSet {
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Dense f64 coefficients plus their reversal, shared by the evaluation
/// helpers below.
struct EvalPoly {
    coeffs: Vec<f64>, // constant first
    rev: Vec<f64>,    // leading first
}

impl EvalPoly {
    fn new(coeffs: Vec<f64>) -> Self {
        let mut rev = coeffs.clone();
        rev.reverse();
        EvalPoly { coeffs, rev }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Newton ratio f(z)/f'(z), stable on both sides of the unit circle.
    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        let n = self.degree() as f64;
        if z.norm_sqr() <= 1.0 {
            let (mut f, mut df) = (Complex64::zero(), Complex64::zero());
            for &c in self.coeffs.iter().rev() {
                df = df * z + f;
                f = f * z + c;
            }
            f / df
        } else {
            // f(z) = z^n q(w), w = 1/z, q reversed; then
            // f/f' = q / (n w q - w^2 q').
            let w = z.finv();
            let (mut q, mut dq) = (Complex64::zero(), Complex64::zero());
            for &c in self.rev.iter().rev() {
                dq = dq * w + q;
                q = q * w + c;
            }
            q / (n * w * q - w * w * dq)
        }
    }

    /// Evaluation magnitude relative to sum |a_j| |z|^j.
    fn relative_residual(&self, z: Complex64) -> f64 {
        let (side, w) = if z.norm_sqr() <= 1.0 {
            (&self.coeffs, z)
        } else {
            (&self.rev, z.finv())
        };
        let mut val = Complex64::zero();
        let mut scale = 0.0f64;
        let r = w.norm();
        for &c in side.iter().rev() {
            val = val * w + c;
            scale = scale * r + c.abs();
        }
        if scale == 0.0 {
            return 0.0;
        }
        val.norm() / scale
    }
}

fn initial_points(p: &EvalPoly) -> Vec<Complex64> {
    let n = p.degree();
    let an = p.coeffs[n].abs();
    let a0 = p.coeffs[0].abs();
    let max_mid = p.coeffs[..n].iter().map(|c| c.abs()).fold(0.0f64, f64::max);
    let max_tail = p.coeffs[1..].iter().map(|c| c.abs()).fold(0.0f64, f64::max);
    let upper = 1.0 + max_mid / an;
    let lower = if a0 == 0.0 { 1e-12 } else { a0 / (a0 + max_tail) };
    let geo = (a0 / an).powf(1.0 / n as f64).clamp(lower, upper);
    let r_inner = (geo * 0.85).max(lower);
    let r_outer = (geo * 1.2).min(upper).max(r_inner * 1.001);
    (0..n)
        .map(|j| {
            let r = if j % 2 == 0 { r_inner } else { r_outer };
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64
                + 0.7
                + std::f64::consts::PI * (j % 2) as f64 / n as f64;
            r * Complex64::new(theta.cos(), theta.sin())
        })
        .collect()
}

fn aberth(p: &EvalPoly) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let mut z = initial_points(p);
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let w = p.newton_ratio(z[j]);
            if !w.is_finite() {
                // Stationary point of f; nudge deterministically.
                let nudge = Complex64::new(1e-6, 1e-6) * (1.0 + z[j].norm());
                z[j] += nudge;
                max_step = f64::INFINITY;
                continue;
            }
            let mut s = Complex64::zero();
            for k in 0..n {
                if k != j {
                    let d = z[j] - z[k];
                    if d.norm_sqr() == 0.0 {
                        s += 1e12;
                    } else {
                        s += d.finv();
                    }
                }
            }
            let denom = 1.0 - w * s;
            let step = if denom.norm_sqr() == 0.0 { w } else { w / denom };
            z[j] -= step;
            let rel = step.norm() / (1.0 + z[j].norm());
            max_step = max_step.max(rel);
        }
        if max_step < 1e-14 {
            return Ok(z);
        }
    }
    // Aberth may stall on hard clusters while the points are already
    // excellent; the residual gate downstream decides acceptance.
    Ok(z)
}

/// Snap the computed multiset onto exact conjugate symmetry: near-real
/// roots drop their imaginary part, near-conjugate pairs are replaced by an
/// exactly conjugate pair at their symmetrized position. Every move is
/// residual-gated and reverted if it would leave the accept band, so this
/// only ever formalizes symmetry the true roots already have.
fn canonicalize_conjugates(p: &EvalPoly, roots: &mut [Complex64], residuals: &mut [f64]) {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = roots[i].conj();
        let mut best = i;
        let mut best_d = (roots[i] - target).norm();
        for (j, seen) in used.iter().enumerate().skip(i + 1) {
            if *seen {
                continue;
            }
            let d = (roots[j] - target).norm();
            if d < best_d {
                best_d = d;
                best = j;
            }
        }
        if best_d > CONJ_PAIR_TOL {
            continue;
        }
        if best == i {
            let snapped = Complex64::new(roots[i].re, 0.0);
            let res = p.relative_residual(snapped);
            if res <= RESIDUAL_ACCEPT {
                roots[i] = snapped;
                residuals[i] = res;
            }
        } else {
            used[best] = true;
            let avg = 0.5 * (roots[i] + roots[best].conj());
            let pair = (avg, avg.conj());
            let (ci, cb) = if (roots[i] - pair.0).norm() <= (roots[i] - pair.1).norm() {
                pair
            } else {
                (pair.1, pair.0)
            };
            let (ri, rb) = (p.relative_residual(ci), p.relative_residual(cb));
            if ri <= RESIDUAL_ACCEPT && rb <= RESIDUAL_ACCEPT {
                roots[i] = ci;
                residuals[i] = ri;
                roots[best] = cb;
                residuals[best] = rb;
            }
        }
    }
}

fn polish(p: &EvalPoly, mut z: Complex64) -> Complex64 {
    let mut best = z;
    let mut best_res = p.relative_residual(z);
    for _ in 0..3 {
        let w = p.newton_ratio(z);
        if !w.is_finite() {
            break;
        }
        z -= w;
        let res = p.relative_residual(z);
        if res < best_res {
            best = z;
            best_res = res;
        } else {
            break;
        }
    }
    best
}

/// All complex roots of f (degree >= 1), multiplicity as repetition.
/// Roots at the origin are deflated exactly; the rest come from the
/// simultaneous solver. Fails if any residual misses the accept threshold.
pub fn find_all_roots(f: &IntPolynomial) -> Result<RootSet> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    if degree == 0 {
        return Err(Error::InvalidArgument(
            "root finding requires degree >= 1".into(),
        ));
    }
    let all = f.coeffs_f64();
    if all.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument(
            "coefficients exceed f64 range for root finding".into(),
        ));
    }
    let zeros_at_origin = all.iter().take_while(|c| **c == 0.0).count();
    let mut roots: Vec<Complex64> = vec![Complex64::zero(); zeros_at_origin];
    let mut residuals: Vec<f64> = vec![0.0; zeros_at_origin];

    if zeros_at_origin < degree {
        // Normalize so the largest magnitude is 1; roots are unchanged.
        let mut core: Vec<f64> = all[zeros_at_origin..].to_vec();
        let max = core.iter().map(|c| c.abs()).fold(0.0f64, f64::max);
        for c in core.iter_mut() {
            *c /= max;
        }
        let p = EvalPoly::new(core);
        for z in aberth(&p)? {
            let z = polish(&p, z);
            let res = p.relative_residual(z);
            if !(res <= RESIDUAL_ACCEPT) {
                return Err(Error::NonConvergence {
                    iterations: MAX_ITERATIONS,
                });
            }
            roots.push(z);
            residuals.push(res);
        }
        canonicalize_conjugates(
            &p,
            &mut roots[zeros_at_origin..],
            &mut residuals[zeros_at_origin..],
        );
    }
    Ok(RootSet {
        roots,
        residuals,
        degree,
    })
}

/// Magnitude of f at z relative to the coefficient-weighted scale
/// sum |a_j| |z|^j: the backward-error-meaningful residual. Infinite for
/// the zero polynomial.
pub fn relative_residual(f: &IntPolynomial, z: Complex64) -> f64 {
    if f.is_zero() {
        return f64::INFINITY;
    }
    EvalPoly::new(f.coeffs_f64()).relative_residual(z)
}

/// Index, value and distance of the root closest to `target`. Exact
/// distance ties resolve to the lexicographically smaller (re, im).
pub fn nearest_root(roots: &[Complex64], target: Complex64) -> Option<(usize, Complex64, f64)> {
    let mut best: Option<(usize, Complex64, f64)> = None;
    for (i, &r) in roots.iter().enumerate() {
        let d = (r - target).norm();
        let better = match best {
            None => true,
            Some((_, b, bd)) => {
                d < bd || (d == bd && (r.re, r.im) < (b.re, b.im))
            }
        };
        if better {
            best = Some((i, r, d));
        }
    }
    best
}

/// Half the distance from `alpha` to the nearest root outside its own
/// cluster, capped. With no distinct root the cap itself comes back.
pub fn isolation_radius(roots: &[Complex64], alpha: Complex64, cap: f64) -> f64 {
    let mut radius = cap;
    for &r in roots {
        let d = (r - alpha).norm();
        if d > CLUSTER_EPS {
            radius = radius.min(d / 2.0);
        }
    }
    radius
}

/// Certified lower bound for |F| on the circle |z - center| = radius, where
/// F(z) = f(z) / (1 - z^(n+1)) and n = deg f. The bound is the sampled
/// minimum minus a Lipschitz slack; zero means certification failed at this
/// sample count. The circle must stay strictly inside the unit disk, where
/// F picks up exactly the zeros of f.
pub fn min_modulus_on_circle(
    f: &IntPolynomial,
    center: Complex64,
    radius: f64,
    samples: usize,
) -> Result<f64> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !(radius > 0.0) || samples < 8 {
        return Err(Error::InvalidArgument(
            "min_modulus_on_circle needs radius > 0 and samples >= 8".into(),
        ));
    }
    let reach = center.norm() + radius;
    if reach >= 1.0 {
        return Err(Error::InvalidArgument(
            "contour must stay strictly inside the unit disk".into(),
        ));
    }
    let coeffs = f.coeffs_f64();
    let height = coeffs.iter().map(|c| c.abs()).fold(0.0f64, f64::max);

    let mut min = f64::INFINITY;
    let exp = (n + 1) as u32;
    for j in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
        let z = center + radius * Complex64::new(theta.cos(), theta.sin());
        let mut val = Complex64::zero();
        for &c in coeffs.iter().rev() {
            val = val * z + c;
        }
        let denom = Complex64::new(1.0, 0.0) - z.powu(exp);
        min = min.min((val / denom).norm());
    }

    // |F'| <= H/(1-rho)^2 on |z| <= rho; evaluated at the midpoint radius
    // between the contour's reach and the unit circle.
    let rho = (1.0 + reach) / 2.0;
    let lipschitz = height / ((1.0 - rho) * (1.0 - rho));
    let slack = lipschitz * std::f64::consts::PI * radius / samples as f64;
    Ok((min - slack).max(0.0))
}
