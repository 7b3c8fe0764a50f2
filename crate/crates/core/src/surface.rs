//! The six surfaces as labelled polynomial systems.
//!
//! Each model lists its equations as `expr − var^deg = 0`, where `var` is a
//! witness coordinate (a square root, cube root, or for IV.32 the eliminated
//! `z`). Witness rules are ordered so that [`SurfaceModel::witness_solve`] can
//! fill them one at a time.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::factor;
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rat::{common_denominator, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    II20,
    II31,
    III17,
    IV18,
    IV32,
    V29,
}

impl Problem {
    pub const ALL: [Problem; 6] = [Problem::II20, Problem::II31, Problem::III17, Problem::IV18, Problem::IV32, Problem::V29];

    pub fn as_str(&self) -> &'static str {
        match self {
            Problem::II20 => "II20",
            Problem::II31 => "II31",
            Problem::III17 => "III17",
            Problem::IV18 => "IV18",
            Problem::IV32 => "IV32",
            Problem::V29 => "V29",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = Error;

    /// Accepts `II20`, `II.20`, `ii20`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '.' && *c != ' ').flat_map(char::to_uppercase).collect();
        Problem::ALL
            .into_iter()
            .find(|p| p.as_str() == key)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// Coordinates by variable label.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RatPoint(BTreeMap<String, Rat>);

impl RatPoint {
    pub fn new() -> Self {
        RatPoint(BTreeMap::new())
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Rat)>) -> Self {
        RatPoint(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn with(mut self, name: &str, value: Rat) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn insert(&mut self, name: &str, value: Rat) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rat> {
        self.0.get(name)
    }

    pub fn require(&self, name: &str) -> Result<&Rat> {
        self.get(name).ok_or_else(|| Error::MissingCoordinate(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every coordinate strictly positive.
    pub fn is_admissible(&self) -> bool {
        self.0.values().all(Rat::is_positive)
    }

    /// Coordinates in the order of `vars`, erroring on the first missing one.
    pub fn values_in(&self, vars: &[String]) -> Result<Vec<Rat>> {
        vars.iter().map(|v| self.require(v).cloned()).collect()
    }
}

impl FromStr for RatPoint {
    type Err = Error;

    /// `x=3/13,y=19/13`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = RatPoint::new();
        for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(part.to_string()))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(Error::Parse(part.to_string()));
            }
            p.insert(k, v.parse()?);
        }
        Ok(p)
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoint({self})")
    }
}

/// `var^degree = expr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRule {
    pub var: String,
    pub degree: u32,
    pub expr: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibreValue {
    Single(Rat),
    Pair(Rat, Rat),
}

impl fmt::Display for FibreValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibreValue::Single(t) => write!(f, "{t}"),
            FibreValue::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: Problem,
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    pub constants: BTreeMap<String, Rat>,
    pub equations: Vec<MultiPoly>,
    pub witnesses: Vec<WitnessRule>,
}

impl SurfaceModel {
    /// The model with default constants (IV.32 uses `n = 6`).
    pub fn new(name: Problem) -> Self {
        match name {
            Problem::IV32 => Self::iv32(Rat::from(6)),
            _ => Self::build(name, None),
        }
    }

    pub fn iv32(n: Rat) -> Self {
        Self::build(Problem::IV32, Some(n))
    }

    fn build(name: Problem, n: Option<Rat>) -> Self {
        let names: &[&str] = match name {
            Problem::II20 => &["x", "y", "u", "v"],
            Problem::II31 | Problem::III17 => &["x", "y", "u", "v", "w"],
            Problem::IV18 => &["x", "y", "u", "v"],
            Problem::IV32 => &["x", "y", "z", "u", "v"],
            Problem::V29 => &["x", "y", "z", "w"],
        };
        let vs = MultiPoly::vars(names);
        let var = |s: &str| vs[names.iter().position(|n| *n == s).unwrap()].clone();
        let (x, y) = (var("x"), var("y"));
        let rule = |v: &str, degree: u32, expr: MultiPoly| WitnessRule { var: v.to_string(), degree, expr };
        let mut constants = BTreeMap::new();
        let mut weights = alloc::vec![1; names.len()];
        let witnesses = match name {
            Problem::II20 => alloc::vec![rule("u", 2, &x * &x + &y), rule("v", 2, &x + &y * &y)],
            Problem::II31 => {
                let xy = &x * &y;
                alloc::vec![
                    rule("u", 2, &x + &y),
                    rule("v", 2, &xy + &x + &y),
                    rule("w", 2, &xy - &x - &y),
                ]
            }
            Problem::III17 => {
                let xy = &x * &y;
                alloc::vec![rule("u", 2, &xy + &x + &y), rule("v", 2, &xy + &x), rule("w", 2, &xy + &y)]
            }
            Problem::IV18 => alloc::vec![rule("u", 3, x.pow(3) + &y), rule("v", 2, &x + &y * &y)],
            Problem::IV32 => {
                let n = n.expect("IV32 needs n");
                constants.insert("n".to_string(), n.clone());
                let xy = &x * &y;
                let z = var("z");
                alloc::vec![
                    rule("z", 1, MultiPoly::constant(names, n) - &x - &y),
                    rule("u", 2, &xy - &z),
                    rule("v", 2, &xy + &z),
                ]
            }
            Problem::V29 => {
                weights[3] = 2;
                alloc::vec![rule("w", 2, x.pow(4) + y.pow(4) + var("z").pow(4))]
            }
        };
        let equations = witnesses.iter().map(|r| &r.expr - &var(&r.var).pow(r.degree)).collect();
        SurfaceModel {
            name,
            variables: names.iter().map(|s| s.to_string()).collect(),
            weights,
            constants,
            equations,
            witnesses,
        }
    }

    /// Structural checks: weights match variables, equations use the declared labels.
    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.variables.len() || self.weights.contains(&0) {
            return Err(Error::Precondition("one positive weight per variable".into()));
        }
        for eq in &self.equations {
            if eq.var_names() != self.variables.as_slice() {
                return Err(Error::Precondition("equation over undeclared variables".into()));
            }
        }
        Ok(())
    }

    /// Whether each equation vanishes at `p`.
    pub fn check_equations(&self, p: &RatPoint) -> Result<Vec<bool>> {
        let vals = p.values_in(&self.variables)?;
        self.equations.iter().map(|e| Ok(e.eval(&vals)?.is_zero())).collect()
    }

    pub fn membership(&self, p: &RatPoint) -> Result<bool> {
        Ok(self.check_equations(p)?.into_iter().all(|b| b))
    }

    fn is_witness(&self, v: &str) -> bool {
        self.witnesses.iter().any(|r| r.var == v)
    }

    /// Fill in missing witness coordinates with nonnegative rational roots.
    /// `Ok(None)` when a root is irrational or the completed point fails.
    pub fn witness_solve(&self, partial: &RatPoint) -> Result<Option<RatPoint>> {
        for v in self.variables.iter().filter(|v| !self.is_witness(v)) {
            partial.require(v)?;
        }
        let mut p = partial.clone();
        let zero = Rat::zero();
        for r in &self.witnesses {
            if p.contains(&r.var) {
                continue;
            }
            let vals: Vec<Rat> =
                self.variables.iter().map(|v| p.get(v).cloned().unwrap_or_else(|| zero.clone())).collect();
            let val = r.expr.eval(&vals)?;
            let root = match r.degree {
                1 => Some(val),
                2 => val.sqrt(),
                3 => val.cbrt(),
                _ => None,
            };
            match root {
                Some(x) => p.insert(&r.var, x),
                None => return Ok(None),
            }
        }
        Ok(self.membership(&p)?.then_some(p))
    }

    /// The base coordinate of the fibration named for each problem.
    pub fn fibration_value(&self, p: &RatPoint) -> Result<FibreValue> {
        if !self.membership(p)? {
            return Err(Error::NotOnSurface(self.name.to_string()));
        }
        let g = |v: &str| p.require(v).cloned();
        let ratio = |a: Rat, b: Rat, what: &str| {
            if b.is_zero() {
                Err(Error::Indeterminate(alloc::format!("{what} with zero denominator")))
            } else {
                a.checked_div(&b)
            }
        };
        Ok(match self.name {
            Problem::II20 => FibreValue::Single(g("u")? - g("x")?),
            Problem::II31 => {
                let u = g("u")?;
                FibreValue::Pair(ratio(g("v")?, u.clone(), "v/u")?, ratio(g("w")?, u, "w/u")?)
            }
            Problem::III17 => FibreValue::Single(ratio(g("v")?, g("x")?, "v/x")?),
            Problem::IV18 => FibreValue::Single(g("u")?),
            Problem::IV32 => FibreValue::Single(g("y")?),
            Problem::V29 => return Err(Error::Precondition("V29 has no fibration in the catalog".into())),
        })
    }

    /// Integer representative in weighted projective space: scale
    /// `cᵢ ↦ s^{wᵢ}·cᵢ` to clear denominators, then divide out every prime
    /// `p` with `p^{wᵢ} | cᵢ` for all `i`. The first nonzero coordinate of odd
    /// weight is made positive.
    pub fn normalize_weighted(&self, p: &RatPoint) -> Result<Vec<BigInt>> {
        let vals = p.values_in(&self.variables)?;
        if vals.iter().all(Rat::is_zero) {
            return Err(Error::Precondition("all coordinates are zero".into()));
        }
        let s = Rat::from(common_denominator(&vals));
        let mut ints: Vec<BigInt> = vals
            .iter()
            .zip(&self.weights)
            .map(|(c, &w)| {
                let scaled = c * &s.pow(w as i32).expect("positive scale");
                debug_assert!(scaled.is_integer());
                scaled.numer().clone()
            })
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let g = g
            .to_u64()
            .ok_or_else(|| Error::OutOfRange("common factor exceeds 64 bits".into()))?;
        for (prime, _) in factor(g) {
            let pb = BigInt::from(prime);
            loop {
                let divisible = ints
                    .iter()
                    .zip(&self.weights)
                    .all(|(c, &w)| c.is_multiple_of(&num_traits::pow(pb.clone(), w as usize)));
                if !divisible {
                    break;
                }
                for (c, &w) in ints.iter_mut().zip(&self.weights) {
                    *c = &*c / num_traits::pow(pb.clone(), w as usize);
                }
            }
        }
        let flip = ints
            .iter()
            .zip(&self.weights)
            .find(|(c, w)| !c.is_zero() && *w % 2 == 1)
            .is_some_and(|(c, _)| c.is_negative());
        if flip {
            for (c, &w) in ints.iter_mut().zip(&self.weights) {
                if w % 2 == 1 {
                    *c = -&*c;
                }
            }
        }
        Ok(ints)
    }

    /// The constant `n` of IV.32, if any.
    pub fn constant(&self, name: &str) -> Option<&Rat> {
        self.constants.get(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> RatPoint {
        s.parse().unwrap()
    }

    #[test]
    fn golden_membership() {
        let m = SurfaceModel::new(Problem::II20);
        assert!(m.membership(&pt("x=3/13,y=19/13,u=16/13,v=20/13")).unwrap());
        assert!(m.membership(&pt("x=3/13,y=19/13,u=16/13,v=-20/13")).unwrap());
        let m = SurfaceModel::new(Problem::II31);
        assert!(m.membership(&pt("x=3/2,y=15/2,u=3,v=9/2,w=3/2")).unwrap());
        let m = SurfaceModel::new(Problem::V29);
        assert!(!m.membership(&pt("x=0,y=0,z=0,w=1")).unwrap());
        assert_eq!(m.membership(&pt("x=0,y=0,z=0")), Err(Error::MissingCoordinate("w".into())));
    }

    #[test]
    fn witness_examples() {
        let m = SurfaceModel::new(Problem::IV18);
        let p = m.witness_solve(&pt("x=1/16,y=262143/4096")).unwrap().unwrap();
        assert_eq!(p.get("u"), Some(&Rat::from(4)));
        assert_eq!(p.get("v"), Some(&"262145/4096".parse().unwrap()));
        let m = SurfaceModel::new(Problem::II31);
        assert_eq!(m.witness_solve(&pt("x=1,y=1")).unwrap(), None);
        let m = SurfaceModel::new(Problem::V29);
        let p = m.witness_solve(&pt("x=12/5,y=3,z=4")).unwrap().unwrap();
        assert_eq!(p.get("w"), Some(&"481/25".parse().unwrap()));
        let m = SurfaceModel::new(Problem::IV32);
        let p = m.witness_solve(&pt("x=5/3,y=5/3")).unwrap().unwrap();
        assert_eq!(p.get("z"), Some(&"8/3".parse().unwrap()));
        assert!(m.witness_solve(&pt("x=5/3")).is_err());
    }

    #[test]
    fn fibrations() {
        let m = SurfaceModel::new(Problem::III17);
        let p = pt("x=65/224,y=9/56,u=79/112,v=65/112,w=51/112");
        assert_eq!(m.fibration_value(&p).unwrap(), FibreValue::Single(Rat::from(2)));
        let m = SurfaceModel::new(Problem::II20);
        let p = pt("x=3/13,y=19/13,u=16/13,v=20/13");
        assert_eq!(m.fibration_value(&p).unwrap(), FibreValue::Single(Rat::one()));
        let m = SurfaceModel::new(Problem::II31);
        let p = pt("x=9/4,y=45/16,u=9/4,v=27/8,w=9/8");
        assert_eq!(
            m.fibration_value(&p).unwrap(),
            FibreValue::Pair(Rat::frac(3, 2), Rat::frac(1, 2))
        );
        let zero = pt("x=0,y=0,u=0,v=0,w=0");
        assert!(matches!(m.fibration_value(&zero), Err(Error::Indeterminate(_))));
        assert!(matches!(m.fibration_value(&pt("x=1,y=1,u=1,v=1,w=1")), Err(Error::NotOnSurface(_))));
    }

    #[test]
    fn weighted_normal_form() {
        let m = SurfaceModel::new(Problem::V29);
        let n = m.normalize_weighted(&pt("x=12/5,y=3,z=4,w=481/25")).unwrap();
        assert_eq!(n, [12, 15, 20, 481].map(BigInt::from).to_vec());
        let n = m.normalize_weighted(&pt("x=-24,y=-30,z=-40,w=1924")).unwrap();
        assert_eq!(n, [12, 15, 20, 481].map(BigInt::from).to_vec());
    }

    #[test]
    fn models_are_consistent() {
        for p in Problem::ALL {
            let m = SurfaceModel::new(p);
            m.validate().unwrap();
            assert_eq!(p.as_str().parse::<Problem>().unwrap(), p);
        }
        assert_eq!("iii.17".parse::<Problem>().unwrap(), Problem::III17);
        assert!("VI1".parse::<Problem>().is_err());
        let v29 = SurfaceModel::new(Problem::V29);
        assert_eq!(v29.weights, [1, 1, 1, 2]);
        assert_eq!(v29.equations[0].weighted_degree(&v29.weights), Some(4));
    }
}
