//! Approximation certificates: a self-contained record of one run of the
//! square-discriminant approximation, serializable to a flat text document
//! and re-checkable from scratch.
//!
//! Verification is adversarial: it trusts nothing but the document, rebuilds
//! the constructed polynomial from its ingredients, recomputes the exact
//! discriminant, and replays every recorded inequality bit for bit.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::coeffset::{CoeffSet, ConstructionCase};
use crate::disc::{discriminant, reciprocal_square_criterion, DiscriminantValue};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::roots::{relative_residual, RESIDUAL_ACCEPT};

/// The contour data behind the truncation-order choice: the tail of the
/// coefficient series is bounded by `coeff_bound * growth_rate^(k-1) /
/// (1 - growth_rate)`, which must stay below `min_modulus` on the circle of
/// `radius` around the target.
#[derive(Debug, Clone, PartialEq)]
pub struct RoucheData {
    pub radius: f64,
    pub min_modulus: f64,
    pub coeff_bound: f64,
    pub growth_rate: f64,
}

/// in_alternating: discriminant is a nonzero square, so for irreducible
/// inputs the Galois group lands in the alternating group. in_wreath: the
/// polynomial is reciprocal, constraining the group to the wreath product of
/// C2 with the symmetric group on root pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisFlags {
    pub in_alternating: bool,
    pub in_wreath: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxCertificate {
    pub case_used: ConstructionCase,
    /// The coefficient set, carried so verification can recheck membership.
    pub set: CoeffSet,
    pub alpha: Complex64,
    pub epsilon: f64,
    pub k: usize,
    pub g: IntPolynomial,
    pub f_k: IntPolynomial,
    pub beta: Complex64,
    pub achieved_error: f64,
    pub rouche: RoucheData,
    pub disc: DiscriminantValue,
    pub galois: GaloisFlags,
    /// True when the original target lay outside the closed unit disk and
    /// the run approximated the root 1/alpha of the reversed polynomial.
    pub inverted: bool,
}

const KEY_ORDER: [&str; 21] = [
    "case",
    "set",
    "alpha_re",
    "alpha_im",
    "epsilon",
    "k",
    "g",
    "f_k",
    "beta_re",
    "beta_im",
    "achieved_error",
    "rouche_radius",
    "rouche_min_modulus",
    "rouche_coeff_bound",
    "rouche_growth_rate",
    "disc",
    "disc_is_square",
    "disc_is_zero",
    "in_a_n",
    "in_wreath",
    "inverted",
];

impl ApproxCertificate {
    /// Flat `key = value` document, one line per field, fixed key order.
    /// Floats use the shortest round-trip decimal form.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        for key in KEY_ORDER {
            let value = match key {
                "case" => self.case_used.name().to_string(),
                "set" => self.set.to_list_string(),
                "alpha_re" => self.alpha.re.to_string(),
                "alpha_im" => self.alpha.im.to_string(),
                "epsilon" => self.epsilon.to_string(),
                "k" => self.k.to_string(),
                "g" => self.g.to_string(),
                "f_k" => self.f_k.to_string(),
                "beta_re" => self.beta.re.to_string(),
                "beta_im" => self.beta.im.to_string(),
                "achieved_error" => self.achieved_error.to_string(),
                "rouche_radius" => self.rouche.radius.to_string(),
                "rouche_min_modulus" => self.rouche.min_modulus.to_string(),
                "rouche_coeff_bound" => self.rouche.coeff_bound.to_string(),
                "rouche_growth_rate" => self.rouche.growth_rate.to_string(),
                "disc" => self.disc.value.to_string(),
                "disc_is_square" => self.disc.is_square.to_string(),
                "disc_is_zero" => self.disc.is_zero.to_string(),
                "in_a_n" => self.galois.in_alternating.to_string(),
                "in_wreath" => self.galois.in_wreath.to_string(),
                "inverted" => self.inverted.to_string(),
                _ => unreachable!("KEY_ORDER is exhaustive"),
            };
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&value);
            out.push('\n');
        }
        out
    }

    /// Parses a document produced by to_document. Keys may appear in any
    /// order but each exactly once; unknown keys are rejected.
    pub fn parse(text: &str) -> Result<ApproxCertificate> {
        let bad = |msg: String| Error::CertificateParse(msg);
        let mut fields: std::collections::HashMap<&str, &str> = std::collections::HashMap::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(" = ")
                .ok_or_else(|| bad(format!("malformed line: {line:?}")))?;
            if !KEY_ORDER.contains(&key) {
                return Err(bad(format!("unknown key: {key:?}")));
            }
            if fields.insert(key, value).is_some() {
                return Err(bad(format!("duplicate key: {key:?}")));
            }
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| bad(format!("missing key: {key:?}")))
        };
        let float = |key: &str| -> Result<f64> {
            get(key)?
                .parse()
                .map_err(|e| bad(format!("bad float for {key}: {e}")))
        };
        let boolean = |key: &str| -> Result<bool> {
            match get(key)? {
                "true" => Ok(true),
                "false" => Ok(false),
                other => Err(bad(format!("bad boolean for {key}: {other:?}"))),
            }
        };
        let poly = |key: &str| -> Result<IntPolynomial> {
            get(key)?
                .parse()
                .map_err(|e: Error| bad(format!("bad polynomial for {key}: {e}")))
        };

        Ok(ApproxCertificate {
            case_used: ConstructionCase::from_name(get("case")?)
                .map_err(|e| bad(format!("bad case: {e}")))?,
            set: CoeffSet::parse_list(get("set")?)
                .map_err(|e| bad(format!("bad set: {e}")))?,
            alpha: Complex64::new(float("alpha_re")?, float("alpha_im")?),
            epsilon: float("epsilon")?,
            k: get("k")?
                .parse()
                .map_err(|e| bad(format!("bad k: {e}")))?,
            g: poly("g")?,
            f_k: poly("f_k")?,
            beta: Complex64::new(float("beta_re")?, float("beta_im")?),
            achieved_error: float("achieved_error")?,
            rouche: RoucheData {
                radius: float("rouche_radius")?,
                min_modulus: float("rouche_min_modulus")?,
                coeff_bound: float("rouche_coeff_bound")?,
                growth_rate: float("rouche_growth_rate")?,
            },
            disc: DiscriminantValue {
                value: get("disc")?
                    .parse::<BigRational>()
                    .map_err(|e| bad(format!("bad disc: {e}")))?,
                is_square: boolean("disc_is_square")?,
                is_zero: boolean("disc_is_zero")?,
            },
            galois: GaloisFlags {
                in_alternating: boolean("in_a_n")?,
                in_wreath: boolean("in_wreath")?,
            },
            inverted: boolean("inverted")?,
        })
    }

    /// Recomputes every invariant from the recorded fields. Returns the list
    /// of violations; an empty list means the certificate checks out.
    pub fn verify(&self) -> Vec<String> {
        let mut bad: Vec<String> = Vec::new();
        let mut check = |ok: bool, msg: String| {
            if !ok {
                bad.push(msg);
            }
        };

        check(self.epsilon > 0.0, format!("epsilon {} not positive", self.epsilon));
        check(self.k >= 2, format!("truncation order {} below 2", self.k));
        let even = self.case_used.requires_even_k();
        check(
            (self.k % 2 == 0) == even,
            format!("order {} has wrong parity for case {}", self.k, self.case_used.name()),
        );
        check(
            self.g.degree() == Some(self.k.saturating_sub(1)),
            format!("truncation degree {:?} is not k-1", self.g.degree()),
        );

        if let Err(e) = self.set.check_member(&self.g) {
            bad.push(format!("truncation leaves the coefficient set: {e}"));
        }
        if let Err(e) = self.set.check_member(&self.f_k) {
            bad.push(format!("constructed polynomial leaves the coefficient set: {e}"));
        }

        // Rebuild f_k from its ingredients; any tampering with g, k or f_k
        // breaks this equality.
        let rebuilt = match self.case_used {
            ConstructionCase::Negation => {
                let a = self.f_k.coeff(2 * self.k);
                crate::constructions::construct_case_i(&self.g, self.k, &a, &self.set)
            }
            ConstructionCase::Multiplicative => {
                crate::constructions::construct_case_ii(&self.g, self.k, &self.set)
            }
            ConstructionCase::PlusMinusOne => {
                crate::constructions::construct_case_iii(&self.g, self.k, &self.set)
            }
        };
        match rebuilt {
            Ok(rebuilt) => {
                if rebuilt != self.f_k {
                    bad.push("constructed polynomial does not match its ingredients".into());
                }
            }
            Err(e) => bad.push(format!("construction replay failed: {e}")),
        }

        match discriminant(&self.f_k) {
            Ok(fresh) => {
                if fresh.value != self.disc.value {
                    bad.push("recorded discriminant differs from recomputation".into());
                }
                if fresh.is_square != self.disc.is_square || fresh.is_zero != self.disc.is_zero {
                    bad.push("recorded discriminant flags differ from recomputation".into());
                }
                if !fresh.is_square {
                    bad.push("discriminant is not a perfect square".into());
                }
                if self.galois.in_alternating != (fresh.is_square && !fresh.is_zero) {
                    bad.push("alternating-group flag inconsistent with discriminant".into());
                }
            }
            Err(e) => bad.push(format!("discriminant recomputation failed: {e}")),
        }
        if self.galois.in_wreath != self.f_k.is_reciprocal() {
            bad.push("wreath flag inconsistent with reciprocality".into());
        }
        if self.f_k.is_reciprocal() {
            match reciprocal_square_criterion(&self.f_k) {
                Ok(c) => {
                    if c != self.disc.is_square {
                        bad.push("evaluation criterion disagrees with discriminant".into());
                    }
                }
                Err(e) => bad.push(format!("criterion evaluation failed: {e}")),
            }
        }

        let beta_res = relative_residual(&self.f_k, self.beta);
        if !(beta_res <= RESIDUAL_ACCEPT) {
            bad.push(format!("beta residual {beta_res:e} exceeds the accept threshold"));
        }
        if !(self.beta.norm() < 1.0) {
            bad.push("beta lies outside the open unit disk".into());
        }
        let dist = (self.alpha - self.beta).norm();
        if dist != self.achieved_error {
            bad.push(format!(
                "achieved_error {} does not equal |alpha - beta| = {}",
                self.achieved_error, dist
            ));
        }
        if !(self.achieved_error < self.epsilon) {
            bad.push(format!(
                "achieved_error {} not below epsilon {}",
                self.achieved_error, self.epsilon
            ));
        }

        let r = self.rouche.growth_rate;
        if !(self.rouche.radius > 0.0 && self.rouche.radius <= self.epsilon) {
            bad.push("contour radius outside (0, epsilon]".into());
        }
        if r != self.alpha.norm() + self.rouche.radius {
            bad.push("growth rate is not |alpha| + radius".into());
        }
        if !(r > 0.0 && r < 1.0) {
            bad.push("growth rate outside (0, 1)".into());
        } else {
            let tail = self.rouche.coeff_bound * r.powi(self.k as i32 - 1) / (1.0 - r);
            if !(self.rouche.min_modulus > 0.0 && tail < self.rouche.min_modulus) {
                bad.push(format!(
                    "tail bound {tail:e} not below contour minimum {:e}",
                    self.rouche.min_modulus
                ));
            }
        }

        bad
    }
}
