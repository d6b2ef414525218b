//! Polynomials over GF(2) and the mod-2 squarefreeness certificate.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Dense polynomial over GF(2), constant term first, no trailing false bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Polynomial {
    bits: Vec<bool>,
}

impl F2Polynomial {
    pub fn new(mut bits: Vec<bool>) -> Self {
        while bits.last() == Some(&false) {
            bits.pop();
        }
        F2Polynomial { bits }
    }

    pub fn from_int_polynomial(f: &IntPolynomial) -> Self {
        Self::new(f.coeffs().iter().map(|c| c.is_odd()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.bits.len() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.bits.len().checked_sub(1)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Formal derivative over GF(2): only odd-index terms survive.
    pub fn derivative(&self) -> F2Polynomial {
        if self.bits.len() <= 1 {
            return F2Polynomial::new(Vec::new());
        }
        F2Polynomial::new(
            (1..self.bits.len())
                .map(|i| self.bits[i] && i % 2 == 1)
                .collect(),
        )
    }

    fn rem(mut a: Vec<bool>, b: &[bool]) -> Vec<bool> {
        let db = b.len() - 1;
        while a.len() > db {
            let shift = a.len() - 1 - db;
            if *a.last().unwrap() {
                for (i, &bit) in b.iter().enumerate() {
                    a[shift + i] ^= bit;
                }
            }
            while a.last() == Some(&false) {
                a.pop();
            }
            if a.len() <= db {
                break;
            }
        }
        a
    }

    pub fn gcd(&self, other: &F2Polynomial) -> F2Polynomial {
        let mut a = self.bits.clone();
        let mut b = other.bits.clone();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = Self::rem(a, &b);
            a = b;
            b = r;
        }
        F2Polynomial::new(a)
    }
}

/// True when the reduction of f mod 2 is coprime to its derivative.
/// For inputs with an odd leading coefficient, a true result certifies
/// that f is squarefree over Q and hence has nonzero discriminant.
pub fn squarefree_mod2(f: &IntPolynomial) -> Result<bool> {
    let fbar = F2Polynomial::from_int_polynomial(f);
    if fbar.is_zero() {
        return Err(Error::ZeroModTwo);
    }
    Ok(fbar.gcd(&fbar.derivative()).is_one())
}
