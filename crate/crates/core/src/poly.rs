//! Dense univariate polynomials over Q.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::{content, Rat};

/// Coefficients lowest degree first; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
    var: String,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Self::with_var(coeffs, "x")
    }

    pub fn with_var(mut coeffs: Vec<Rat>, var: &str) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, var: String::from(var) }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `m·x + n`.
    pub fn linear(m: Rat, n: Rat) -> Self {
        Self::new(vec![n, m])
    }

    /// `a·x² + b·x + c`.
    pub fn quadratic(a: Rat, b: Rat, c: Rat) -> Self {
        Self::new(vec![c, b, a])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::with_var(self.coeffs.iter().map(|c| c * k).collect(), &self.var)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Rat::from(i as i64))
            .collect();
        Self::with_var(coeffs, &self.var)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().recip()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &lead_inv;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &(&q * c);
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Rat::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::with_var(quot, &self.var), Self::with_var(rem, &self.var)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True when no repeated factor exists over Q-bar. Zero is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Discriminant of a quadratic `b² − 4ac`; `None` for other degrees.
    pub fn quadratic_discriminant(&self) -> Option<Rat> {
        (self.degree() == Some(2)).then(|| {
            let (a, b, c) = (self.coeff(2), self.coeff(1), self.coeff(0));
            b.square() - Rat::from(4) * a * c
        })
    }

    /// Rational roots with multiplicity, for degree ≤ 2. A nonzero constant
    /// has none; for degree 2 the `+√Δ` root comes first.
    pub fn quad_roots(&self) -> Result<Vec<Rat>> {
        match self.degree() {
            None => Err(Error::Precondition("quad_roots of the zero polynomial".into())),
            Some(0) => Ok(Vec::new()),
            Some(1) => Ok(vec![-(self.coeff(0).checked_div(&self.coeff(1))?)]),
            Some(2) => {
                let disc = self.quadratic_discriminant().unwrap();
                let Some(s) = disc.sqrt() else {
                    return Ok(Vec::new());
                };
                let two_a = Rat::from(2) * self.coeff(2);
                let b = self.coeff(1);
                Ok(vec![(&s - &b).checked_div(&two_a)?, (-&s - &b).checked_div(&two_a)?])
            }
            Some(_) => Err(Error::Precondition("quad_roots needs degree ≤ 2".into())),
        }
    }

    /// Split a polynomial of degree ≤ 2 into two factors of degree ≤ 1 with
    /// rational coefficients, or `None` when it is an irreducible quadratic.
    ///
    /// The first factor is primitive over Z with positive leading
    /// coefficient; the second absorbs content and sign.
    pub fn factor_difference(&self) -> Result<Option<(UniPoly, UniPoly)>> {
        let first = match self.degree() {
            None => return Err(Error::Precondition("factor_difference of the zero polynomial".into())),
            Some(0) => return Ok(Some((UniPoly::constant(Rat::one()), self.clone()))),
            Some(1) => primitive_part(self),
            Some(2) => {
                let roots = self.quad_roots()?;
                let Some(r) = roots.first() else {
                    return Ok(None);
                };
                primitive_part(&UniPoly::linear(Rat::one(), -r))
            }
            Some(_) => return Err(Error::Precondition("factor_difference needs degree ≤ 2".into())),
        };
        let (second, rem) = self.div_rem(&first)?;
        debug_assert!(rem.is_zero());
        Ok(Some((first.renamed(&self.var), second.renamed(&self.var))))
    }

    fn renamed(mut self, var: &str) -> Self {
        self.var = String::from(var);
        self
    }

    /// Integer coefficients after multiplying through by the lcm of denominators.
    pub fn cleared_integers(&self) -> (Vec<BigInt>, BigInt) {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (ints, l)
    }
}

/// Divide by the rational content, making the leading coefficient positive.
fn primitive_part(p: &UniPoly) -> UniPoly {
    let mut c = content(p.coeffs());
    if p.leading().is_negative() {
        c = -c;
    }
    p.scale(&c.recip().expect("nonzero polynomial"))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::with_var(coeffs, &self.var)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::with_var(coeffs, &self.var)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::with_var(Vec::new(), &self.var);
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::with_var(out, &self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::with_var(self.coeffs.iter().map(|c| -c).collect(), &self.var)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn quad_roots_examples() {
        assert_eq!(UniPoly::from_ints(&[-1, 0, 1]).quad_roots().unwrap(), vec![r("1"), r("-1")]);
        assert_eq!(UniPoly::from_ints(&[4, 16]).quad_roots().unwrap(), vec![r("-1/4")]);
        assert!(UniPoly::from_ints(&[1, 0, 3]).quad_roots().unwrap().is_empty());
        assert_eq!(UniPoly::from_ints(&[1, 2, 1]).quad_roots().unwrap(), vec![r("-1"), r("-1")]);
        assert!(UniPoly::zero().quad_roots().is_err());
    }

    #[test]
    fn factor_difference_examples() {
        let (f, g) = UniPoly::from_ints(&[4, 16]).factor_difference().unwrap().unwrap();
        assert_eq!(f, UniPoly::from_ints(&[1, 4]));
        assert_eq!(g, UniPoly::from_ints(&[4]));

        let (f, g) = UniPoly::from_ints(&[0, 1]).factor_difference().unwrap().unwrap();
        assert_eq!(f, UniPoly::from_ints(&[0, 1]));
        assert_eq!(g, UniPoly::from_ints(&[1]));

        // 2x² − 2 = (x − 1)(2x + 2); the + root (x = 1) is taken first.
        let d = UniPoly::from_ints(&[-2, 0, 2]);
        let (f, g) = d.factor_difference().unwrap().unwrap();
        assert_eq!(f, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(g, UniPoly::from_ints(&[2, 2]));
        assert_eq!(&f * &g, d);

        assert_eq!(UniPoly::from_ints(&[1, 0, 3]).factor_difference().unwrap(), None);
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = UniPoly::from_ints(&[1, 2, 1]);
        assert!(!p.is_squarefree());
        assert!(UniPoly::from_ints(&[-1, 0, 1]).is_squarefree());
        let g = UniPoly::from_ints(&[-1, 0, 1]).gcd(&UniPoly::from_ints(&[1, 1]));
        assert_eq!(g, UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[-1, 4, 4]).to_string(), "4x^2 + 4x - 1");
        assert_eq!(UniPoly::from_ints(&[0, -1]).to_string(), "-x");
        assert_eq!(UniPoly::new(vec![r("1/2"), Rat::zero(), Rat::one()]).to_string(), "x^2 + 1/2");
    }
}
