//! Sparse multivariate polynomials over Q with labelled variables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Exponent vector → nonzero coefficient. Every exponent vector has one
/// entry per variable label.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly { vars: vars.iter().map(|v| String::from(*v)).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        p.terms.insert(e, Rat::one());
        p
    }

    /// One polynomial per label, in order.
    pub fn vars(vars: &[&str]) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::var(vars, i)).collect()
    }

    /// Build from raw terms; zero coefficients are dropped and like terms summed.
    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Result<Self> {
        let mut p = MultiPoly { vars, terms: BTreeMap::new() };
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Precondition("exponent vector length differs from variable count".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += &c;
        if slot.is_zero() {
            // borrowck: re-find the key to remove it
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// Common weighted degree of all terms, if the polynomial is weighted
    /// homogeneous for `weights`.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.vars.len() {
            return Err(Error::Precondition("point dimension differs from variable count".into()));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= &x.pow(k as i32)?;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut p = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        if !k.is_zero() {
            p.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MultiPoly::constant(&self.var_refs(), Rat::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (name, &x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{x}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_evaluate() {
        let names = ["x", "y", "u"];
        let v = MultiPoly::vars(&names);
        let (x, y, u) = (&v[0], &v[1], &v[2]);
        let eq = &(x * x) + y - u * u;
        assert_eq!(eq.to_string(), "x^2 - u^2 + y");
        let p = [Rat::frac(3, 13), Rat::frac(19, 13), Rat::frac(16, 13)];
        assert!(eq.eval(&p).unwrap().is_zero());
        assert_eq!(eq.total_degree(), Some(2));
        assert_eq!(eq.support(), vec![0, 1, 2]);
        assert!(eq.eval(&p[..2]).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let names = ["a", "b"];
        let v = MultiPoly::vars(&names);
        let p = &(&v[0] + &v[1]) - &v[1];
        assert_eq!(p, v[0]);
        assert_eq!(p.num_terms(), 1);
        let q = &(&v[0] * &v[1]) - &(&v[1] * &v[0]);
        assert!(q.is_zero());
    }

    #[test]
    fn weighted_homogeneity() {
        let names = ["x", "y", "z", "w"];
        let v = MultiPoly::vars(&names);
        let eq = v[0].pow(4) + v[1].pow(4) + v[2].pow(4) - v[3].pow(2);
        assert_eq!(eq.weighted_degree(&[1, 1, 1, 2]), Some(4));
        assert_eq!(eq.weighted_degree(&[1, 1, 1, 1]), None);
    }

    #[test]
    fn from_terms_validates_length() {
        let vars = vec![String::from("x")];
        assert!(MultiPoly::from_terms(vars.clone(), [(vec![1, 0], Rat::one())]).is_err());
        let p = MultiPoly::from_terms(vars, [(vec![1], Rat::one()), (vec![1], -Rat::one())]).unwrap();
        assert!(p.is_zero());
    }
}
