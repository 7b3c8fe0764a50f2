//! Polynomials over the prime field F_p, p < 2⁶¹.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{inv_mod_prime, is_prime, mul_mod};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rat::Rat;

pub const MAX_PRIME: u64 = 1 << 61;

/// Residues lowest degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    p: u64,
}

pub fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::OutOfRange(alloc::format!("prime {p} exceeds 2^61")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Reduce an integer modulo `p` into `[0, p)`.
pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Reduce a rational whose denominator is a unit mod `p`.
pub fn reduce_rat(r: &Rat, p: u64) -> Result<u64> {
    let d = reduce_int(r.denom(), p);
    let inv = inv_mod_prime(d, p).ok_or(Error::PrimeDividesDenominator(p))?;
    Ok(mul_mod(reduce_int(r.numer(), p), inv, p))
}

impl ModPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { coeffs, p }
    }

    pub fn from_unipoly(f: &UniPoly, p: u64) -> Result<Self> {
        check_prime(p)?;
        let coeffs = f.coeffs().iter().map(|c| reduce_rat(c, p)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs, p))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::new(coeffs, self.p)
    }

    pub fn mul(&self, other: &ModPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new(), self.p);
        }
        let p = self.p;
        let mut out = alloc::vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(out, p)
    }

    pub fn rem(&self, divisor: &ModPoly) -> Result<Self> {
        let p = self.p;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv = inv_mod_prime(*divisor.coeffs.last().unwrap(), p).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = mul_mod(*r.last().unwrap(), inv, p);
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(q, c, p)) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Ok(Self::new(r, p))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &ModPoly) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = inv_mod_prime(l, self.p).expect("nonzero leading residue");
                Self::new(self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(), self.p)
            }
        }
    }

    /// No repeated factor over the algebraic closure of F_p.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

/// Whether the reduction of `f` modulo `prime` is squarefree.
pub fn squarefree_mod_p(f: &UniPoly, prime: u64) -> Result<bool> {
    Ok(ModPoly::from_unipoly(f, prime)?.is_squarefree())
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let f = UniPoly::from_ints(&[-1, 3, 4]);
        assert!(!squarefree_mod_p(&f, 5).unwrap());
        assert!(squarefree_mod_p(&f, 7).unwrap());
        assert!(!squarefree_mod_p(&UniPoly::from_ints(&[0, 0, 1]), 3).unwrap());
        // x^7 has zero derivative in characteristic 7
        assert!(!squarefree_mod_p(&UniPoly::from_ints(&[0, 0, 0, 0, 0, 0, 0, 1]), 7).unwrap());
    }

    #[test]
    fn reduction_errors() {
        let f = UniPoly::new(alloc::vec![Rat::frac(1, 7), Rat::one()]);
        assert_eq!(squarefree_mod_p(&f, 7), Err(Error::PrimeDividesDenominator(7)));
        assert_eq!(squarefree_mod_p(&f, 9), Err(Error::NotPrime(9)));
        assert_eq!(reduce_rat(&Rat::frac(-1, 2), 7).unwrap(), 3);
    }

    #[test]
    fn arithmetic_mod_p() {
        let a = ModPoly::new(alloc::vec![1, 1], 5);
        let b = ModPoly::new(alloc::vec![4, 1], 5);
        let prod = a.mul(&b);
        assert_eq!(prod.coeffs(), &[4, 0, 1]);
        assert_eq!(prod.gcd(&a), a);
        assert_eq!(prod.eval(1), 0);
        assert_eq!(prod.to_string(), "x^2 + 4 (mod 5)");
    }
}
