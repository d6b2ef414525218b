//! Finite coefficient sets and their closure properties.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// An explicit finite set of admissible integer coefficients, together with
/// the closure flags that decide which construction cases apply. The set
/// must contain a nonzero element, so the height is always at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSet {
    elements: Vec<i64>,
    pub height: i64,
    pub negation_closed: bool,
    pub multiplication_closed: bool,
    pub contains_pm1: bool,
}

impl CoeffSet {
    pub fn new(elements: impl IntoIterator<Item = i64>) -> Result<CoeffSet> {
        let mut elements: Vec<i64> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::InvalidCoeffSet("set is empty".into()));
        }
        if elements == [0] {
            return Err(Error::InvalidCoeffSet("set must contain a nonzero element".into()));
        }
        let height = elements.iter().map(|a| a.abs()).max().unwrap();
        let negation_closed = elements
            .iter()
            .all(|a| elements.binary_search(&-a).is_ok());
        let multiplication_closed = elements.iter().all(|a| {
            elements.iter().all(|b| {
                a.checked_mul(*b)
                    .map_or(false, |ab| elements.binary_search(&ab).is_ok())
            })
        });
        let contains_pm1 =
            elements.binary_search(&1).is_ok() && elements.binary_search(&-1).is_ok();
        Ok(CoeffSet {
            elements,
            height,
            negation_closed,
            multiplication_closed,
            contains_pm1,
        })
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn contains(&self, a: i64) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn contains_bigint(&self, a: &BigInt) -> bool {
        a.to_i64().map_or(false, |a| self.contains(a))
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0)
    }

    /// Smallest-magnitude element overall (zero eligible), ties resolved
    /// toward positive. Supplies free middle coefficients.
    pub fn smallest_by_abs(&self) -> i64 {
        *self
            .elements
            .iter()
            .min_by_key(|a| (a.abs(), a.is_negative()))
            .unwrap()
    }

    /// Smallest-magnitude nonzero element, ties resolved toward positive.
    /// Used to repair truncations whose top coefficient lands on zero.
    pub fn smallest_nonzero(&self) -> i64 {
        *self
            .elements
            .iter()
            .filter(|a| **a != 0)
            .min_by_key(|a| (a.abs(), a.is_negative()))
            .unwrap()
    }

    /// Checks that every coefficient of f lies in the set and f(0) != 0,
    /// i.e. f belongs to the family the set generates.
    pub fn check_member(&self, f: &IntPolynomial) -> Result<()> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.constant_term() == BigInt::from(0) {
            return Err(Error::ZeroConstantTerm);
        }
        for (index, c) in f.coeffs().iter().enumerate() {
            if !self.contains_bigint(c) {
                return Err(Error::CoefficientOutsideSet {
                    coeff: c.to_string(),
                    index,
                });
            }
        }
        Ok(())
    }

    pub fn to_list_string(&self) -> String {
        self.elements
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses an explicit comma-separated element list, e.g. "-1,1".
    pub fn parse_list(s: &str) -> Result<CoeffSet> {
        let elements: Result<Vec<i64>> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidCoeffSet(format!("invalid element: {t:?}")))
            })
            .collect();
        CoeffSet::new(elements?)
    }
}

/// The three construction routes to a square discriminant. The automatic
/// chooser tries them in the declared order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionCase {
    /// Reflection construction for negation-closed sets (case i).
    Negation,
    /// Sign-block construction for sets containing +1 and -1 (case iii).
    PlusMinusOne,
    /// Product construction for multiplication-closed sets (case ii).
    Multiplicative,
}

impl ConstructionCase {
    pub const AUTO_ORDER: [ConstructionCase; 3] = [
        ConstructionCase::Negation,
        ConstructionCase::PlusMinusOne,
        ConstructionCase::Multiplicative,
    ];

    pub fn applicable(self, set: &CoeffSet) -> bool {
        match self {
            ConstructionCase::Negation => set.negation_closed,
            ConstructionCase::PlusMinusOne => set.contains_pm1,
            ConstructionCase::Multiplicative => set.multiplication_closed,
        }
    }

    /// Required parity of the truncation order k.
    pub fn requires_even_k(self) -> bool {
        matches!(self, ConstructionCase::Negation)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstructionCase::Negation => "negation",
            ConstructionCase::PlusMinusOne => "pm1",
            ConstructionCase::Multiplicative => "multiplicative",
        }
    }

    pub fn from_name(s: &str) -> Result<ConstructionCase> {
        match s {
            "negation" => Ok(ConstructionCase::Negation),
            "pm1" => Ok(ConstructionCase::PlusMinusOne),
            "multiplicative" => Ok(ConstructionCase::Multiplicative),
            _ => Err(Error::InvalidArgument(format!("unknown construction case: {s:?}"))),
        }
    }

    pub fn choose(set: &CoeffSet, forced: Option<ConstructionCase>) -> Result<ConstructionCase> {
        match forced {
            Some(case) => {
                if case.applicable(set) {
                    Ok(case)
                } else {
                    Err(Error::UnsupportedCoeffSet)
                }
            }
            None => Self::AUTO_ORDER
                .into_iter()
                .find(|case| case.applicable(set))
                .ok_or(Error::UnsupportedCoeffSet),
        }
    }
}
