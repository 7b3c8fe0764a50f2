//! Double equations `a₁x² + b₁x + c₁ = u²`, `a₂x² + b₂x + c₂ = v²`.
//!
//! The curve is handled projectively as the intersection of
//! `U² = a₁X² + b₁XZ + c₁Z²` and `V² = a₂X² + b₂XZ + c₂Z²` in P³, so points at
//! infinity such as `(1 : α₁ : α₂ : 0)` are ordinary [`CurvePoint`]s.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Inapplicable, Result};
use crate::modp::{check_prime, reduce_int, ModPoly};
use crate::poly::UniPoly;
use crate::rat::{common_denominator, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DoubleEquation {
    c: [Rat; 6],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeathCase {
    /// `a₁ = a₂` a nonzero square.
    I,
    /// `a₁` a nonzero square and `a₂ = 0`.
    II,
    /// `c₁ = c₂ = 0`.
    III,
    /// `a₁ = a₂ = 0`: both sides linear in `x`.
    FirstOrder,
    Other,
}

impl fmt::Display for HeathCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeathCase::I => "I",
            HeathCase::II => "II",
            HeathCase::III => "III",
            HeathCase::FirstOrder => "first-order",
            HeathCase::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleEqClass {
    pub heath_case: HeathCase,
    pub genus: u8,
    pub smooth: bool,
    pub reducible: bool,
    pub alpha1: Option<Rat>,
    pub alpha2: Option<Rat>,
    /// `p₁ − p₂` splits into rational factors of degree ≤ 1.
    pub difference_splits: bool,
}

/// A factorization `f₁·f₂` of `p₁ − p₂` together with the pencil parameter λ
/// of `u + v = λf₁`, `u − v = λ⁻¹f₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPair {
    pub f1: UniPoly,
    pub f2: UniPoly,
    pub scale: Rat,
}

impl FactorPair {
    /// The point on the pencil line over `x`.
    pub fn uv_at(&self, x: &Rat) -> Result<(Rat, Rat)> {
        let a = &self.scale * self.f1.eval(x);
        let b = self.f2.eval(x).checked_div(&self.scale)?;
        let half = Rat::frac(1, 2);
        Ok((&(&a + &b) * &half, &(&a - &b) * &half))
    }
}

impl DoubleEquation {
    /// Coefficients in the order `a₁, b₁, c₁, a₂, b₂, c₂`.
    pub fn new(c: [Rat; 6]) -> Result<Self> {
        let de = DoubleEquation { c };
        let (p1, p2) = (de.p1(), de.p2());
        if p1.is_zero() || p2.is_zero() {
            return Err(Error::Precondition("both quadratics must be nonzero".into()));
        }
        if p1.scale(&p2.leading()) == p2.scale(&p1.leading()) {
            return Err(Error::Precondition("p1 and p2 are rational multiples of each other".into()));
        }
        Ok(de)
    }

    pub fn from_ints(c: [i64; 6]) -> Result<Self> {
        Self::new(c.map(Rat::from))
    }

    pub fn coeffs(&self) -> &[Rat; 6] {
        &self.c
    }

    pub fn a1(&self) -> &Rat {
        &self.c[0]
    }
    pub fn b1(&self) -> &Rat {
        &self.c[1]
    }
    pub fn c1(&self) -> &Rat {
        &self.c[2]
    }
    pub fn a2(&self) -> &Rat {
        &self.c[3]
    }
    pub fn b2(&self) -> &Rat {
        &self.c[4]
    }
    pub fn c2(&self) -> &Rat {
        &self.c[5]
    }

    pub fn p1(&self) -> UniPoly {
        UniPoly::quadratic(self.c[0].clone(), self.c[1].clone(), self.c[2].clone())
    }

    pub fn p2(&self) -> UniPoly {
        UniPoly::quadratic(self.c[3].clone(), self.c[4].clone(), self.c[5].clone())
    }

    /// `p₁ − p₂`, which equals `u² − v²` on the curve.
    pub fn difference(&self) -> UniPoly {
        &self.p1() - &self.p2()
    }

    /// The system with the two equations exchanged.
    pub fn swapped(&self) -> Self {
        let c = &self.c;
        DoubleEquation { c: [c[3].clone(), c[4].clone(), c[5].clone(), c[0].clone(), c[1].clone(), c[2].clone()] }
    }

    /// Residuals `(U² − P₁(X,Z), V² − P₂(X,Z))` at a projective point.
    pub fn residuals(&self, p: &CurvePoint) -> (Rat, Rat) {
        let [x, u, v, z] = p.rats();
        let form = |a: &Rat, b: &Rat, c: &Rat| a * &x * &x + b * &x * &z + c * &z * &z;
        (
            u.square() - form(&self.c[0], &self.c[1], &self.c[2]),
            v.square() - form(&self.c[3], &self.c[4], &self.c[5]),
        )
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        let (r1, r2) = self.residuals(p);
        r1.is_zero() && r2.is_zero()
    }

    /// `(1 : ±α₁ : ±α₂ : 0)` in the order P₁ = (α₁, α₂), P₂ = (−α₁, −α₂),
    /// P₃ = (−α₁, α₂), P₄ = (α₁, −α₂), duplicates removed. Empty unless both
    /// leading coefficients are rational squares.
    pub fn points_at_infinity(&self) -> Vec<CurvePoint> {
        let (Some(s1), Some(s2)) = (self.a1().sqrt(), self.a2().sqrt()) else {
            return Vec::new();
        };
        let mut out: Vec<CurvePoint> = Vec::new();
        for (e1, e2) in [(1, 1), (-1, -1), (-1, 1), (1, -1)] {
            let p = CurvePoint::from_rats([Rat::one(), &s1 * &Rat::from(e1), &s2 * &Rat::from(e2), Rat::zero()])
                .expect("X = 1");
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

impl fmt::Debug for DoubleEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleEquation({} = u², {} = v²)", self.p1(), self.p2())
    }
}

impl fmt::Display for DoubleEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = u^2, {} = v^2", self.p1(), self.p2())
    }
}

/// A point `(X : U : V : Z)` stored as coprime integers whose first nonzero
/// entry is positive. The affine chart is `Z ≠ 0` with `x = X/Z` etc.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurvePoint {
    coords: [BigInt; 4],
}

impl CurvePoint {
    pub fn from_affine(x: Rat, u: Rat, v: Rat) -> Self {
        Self::from_rats([x, u, v, Rat::one()]).expect("Z = 1")
    }

    pub fn from_ints(coords: [i64; 4]) -> Result<Self> {
        Self::from_rats(coords.map(Rat::from))
    }

    /// Projective point from rational coordinates, rescaled to normal form.
    pub fn from_rats(coords: [Rat; 4]) -> Result<Self> {
        if coords.iter().all(Rat::is_zero) {
            return Err(Error::Precondition("all projective coordinates are zero".into()));
        }
        let l = common_denominator(&coords);
        let mut ints: [BigInt; 4] = coords.map(|c| c.numer() * (&l / c.denom()));
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let neg = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        for c in ints.iter_mut() {
            *c = &*c / &g;
            if neg {
                *c = -&*c;
            }
        }
        Ok(CurvePoint { coords: ints })
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn rats(&self) -> [Rat; 4] {
        self.coords.clone().map(Rat::from)
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[3].is_zero()
    }

    fn affine_coord(&self, i: usize) -> Result<Rat> {
        if self.is_at_infinity() {
            return Err(Error::PointAtInfinity);
        }
        Rat::new(self.coords[i].clone(), self.coords[3].clone())
    }

    pub fn x(&self) -> Result<Rat> {
        self.affine_coord(0)
    }

    pub fn u(&self) -> Result<Rat> {
        self.affine_coord(1)
    }

    pub fn v(&self) -> Result<Rat> {
        self.affine_coord(2)
    }

    pub fn affine(&self) -> Result<(Rat, Rat, Rat)> {
        Ok((self.x()?, self.u()?, self.v()?))
    }

    /// `(X : −U : V : Z)`.
    pub fn negate_u(&self) -> Self {
        let [x, u, v, z] = self.rats();
        Self::from_rats([x, -u, v, z]).expect("nonzero point")
    }

    /// `(X : U : −V : Z)`.
    pub fn negate_v(&self) -> Self {
        let [x, u, v, z] = self.rats();
        Self::from_rats([x, u, -v, z]).expect("nonzero point")
    }

    /// All affine coordinates strictly positive (Diophantus' requirement).
    pub fn is_admissible(&self) -> bool {
        self.affine().is_ok_and(|(x, u, v)| x.is_positive() && u.is_positive() && v.is_positive())
    }

    /// Largest absolute numerator among the affine coordinates, or among the
    /// projective integers at infinity.
    pub fn max_numerator(&self) -> BigInt {
        match self.affine() {
            Ok((x, u, v)) => [x, u, v].iter().map(|c| c.numer().abs()).max().unwrap(),
            Err(_) => self.coords.iter().map(|c| c.abs()).max().unwrap(),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Ok((x, u, v)) => write!(f, "(x, u, v) = ({x}, {u}, {v})"),
            Err(_) => {
                let [a, b, c, d] = &self.coords;
                write!(f, "({a}:{b}:{c}:{d})")
            }
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coords;
        write!(f, "CurvePoint({a}:{b}:{c}:{d})")
    }
}

fn is_nonzero_square(r: &Rat) -> bool {
    !r.is_zero() && r.is_square()
}

pub fn classify(de: &DoubleEquation) -> DoubleEqClass {
    let (p1, p2) = (de.p1(), de.p2());
    let prod = &p1 * &p2;
    let smooth = matches!(prod.degree(), Some(3) | Some(4)) && prod.is_squarefree();
    let nonconst_sf = |p: &UniPoly| p.degree().is_some_and(|d| d > 0) && p.is_squarefree();
    // not proportional is guaranteed by construction
    let reducible = !(nonconst_sf(&p1) && nonconst_sf(&p2));
    let heath_case = if de.a1() == de.a2() && is_nonzero_square(de.a1()) {
        HeathCase::I
    } else if is_nonzero_square(de.a1()) && de.a2().is_zero() {
        HeathCase::II
    } else if de.c1().is_zero() && de.c2().is_zero() {
        HeathCase::III
    } else if de.a1().is_zero() && de.a2().is_zero() {
        HeathCase::FirstOrder
    } else {
        HeathCase::Other
    };
    let difference_splits = de.difference().factor_difference().ok().flatten().is_some();
    DoubleEqClass {
        heath_case,
        genus: if smooth { 1 } else { 0 },
        smooth,
        reducible,
        alpha1: de.a1().sqrt(),
        alpha2: de.a2().sqrt(),
        difference_splits,
    }
}

/// Two linear equations with equal `x` coefficient: split the constant
/// difference `|c₁ − c₂| = f·g` as a difference of the squares
/// `((f+g)/2)²` and `((f−g)/2)²`.
pub fn solve_genus0(de: &DoubleEquation, f: &Rat, g: &Rat) -> Result<CurvePoint> {
    if !de.a1().is_zero() || !de.a2().is_zero() {
        return Err(Error::Precondition("solve_genus0 needs a1 = a2 = 0".into()));
    }
    if de.b1() != de.b2() {
        return Err(Error::MethodInapplicable(Inapplicable::NonConstantDifference));
    }
    let diff = de.c1() - de.c2();
    if (f * g) != diff.abs() {
        return Err(Error::Precondition(alloc::format!("factors multiply to {}, not {}", f * g, diff.abs())));
    }
    if f == g || f == &-g {
        return Err(Error::Precondition("degenerate split: f = ±g".into()));
    }
    let half = Rat::frac(1, 2);
    let big = (f + g).abs() * &half;
    let small = (f - g).abs() * &half;
    let (c_large, u, v) =
        if diff.is_positive() { (de.c1(), big.clone(), small) } else { (de.c2(), small, big.clone()) };
    let x = (big.square() - c_large).checked_div(de.b1())?;
    Ok(CurvePoint::from_affine(x, u, v))
}

fn solve_linear_for_x(rest: &UniPoly) -> Result<Rat> {
    // rest = p − u(x)², linear by construction
    match rest.degree() {
        Some(1) => Ok(-(rest.coeff(0).checked_div(&rest.coeff(1))?)),
        Some(_) | None if rest.degree().is_none_or(|d| d == 0) => Err(Error::PointAtInfinity),
        _ => Err(Error::Precondition("equation for x is not linear".into())),
    }
}

/// Case I: `a₁ = a₂ = α²`. The difference is linear, `f₁ = (b₁−b₂)x + (c₁−c₂)`,
/// `f₂ = 1`, and λ = 2α/(b₁ − b₂) makes the equation for `x` linear.
pub fn case_i_factors(de: &DoubleEquation, class: &DoubleEqClass) -> Result<FactorPair> {
    if class.heath_case != HeathCase::I {
        return Err(Error::Precondition(alloc::format!("heath case is {}, not I", class.heath_case)));
    }
    let alpha = class.alpha1.clone().expect("case I has α");
    let db = de.b1() - de.b2();
    if db.is_zero() {
        return Err(Error::Precondition("b1 = b2: λ = 2α/(b1 − b2) is undefined".into()));
    }
    Ok(FactorPair {
        f1: UniPoly::linear(db.clone(), de.c1() - de.c2()),
        f2: UniPoly::constant(Rat::one()),
        scale: (Rat::from(2) * alpha).checked_div(&db)?,
    })
}

pub fn solve_case_i(de: &DoubleEquation, class: &DoubleEqClass) -> Result<CurvePoint> {
    let fp = case_i_factors(de, class)?;
    // u = (λf₁ + λ⁻¹)/2 as a polynomial in x
    let half = Rat::frac(1, 2);
    let u_poly = &fp.f1.scale(&(&fp.scale * &half)) + &UniPoly::constant(fp.scale.recip()? * &half);
    let x = solve_linear_for_x(&(&de.p1() - &(&u_poly * &u_poly)))?;
    let (u, v) = fp.uv_at(&x)?;
    Ok(CurvePoint::from_affine(x, u, v))
}

/// Case II: `a₁ = α²`, `a₂ = 0`. After scaling the second equation by
/// `s² = c₁/c₂`, λ = 1 makes `v` the constant `(b₁ − b₂)/(2α)`.
pub fn solve_case_ii(de: &DoubleEquation, class: &DoubleEqClass) -> Result<CurvePoint> {
    if class.heath_case != HeathCase::II {
        return Err(Error::Precondition(alloc::format!("heath case is {}, not II", class.heath_case)));
    }
    let alpha = class.alpha1.clone().expect("case II has α");
    let s = if de.c1() == de.c2() {
        Rat::one()
    } else {
        let ratio = if de.c2().is_zero() { None } else { de.c1().checked_div(de.c2()).ok() };
        match ratio.filter(|r| !r.is_zero()).and_then(|r| r.sqrt()) {
            Some(s) => s,
            None => {
                return Err(Error::Precondition(alloc::format!(
                    "cannot scale the second equation: c1/c2 = {}/{} is not a nonzero square",
                    de.c1(),
                    de.c2()
                )))
            }
        }
    };
    let s2 = s.square();
    let b2 = de.b2() * &s2;
    let c2 = de.c2() * &s2;
    let two_alpha = Rat::from(2) * &alpha;
    let k = (de.b1() - &b2).checked_div(&two_alpha)?;
    if b2.is_zero() {
        return Err(Error::PointAtInfinity);
    }
    let x = (k.square() - c2).checked_div(&b2)?;
    let u = &alpha * &x + &k;
    let v = k.checked_div(&s)?;
    Ok(CurvePoint::from_affine(x, u, v))
}

fn swap_uv(p: CurvePoint) -> CurvePoint {
    let [x, u, v, z] = p.rats();
    CurvePoint::from_rats([x, v, u, z]).expect("nonzero point")
}

/// Dispatch on the Heath case. `factors` is the caller's split of the
/// constant difference for first-order systems (and case III after `x ↦ 1/x`).
pub fn solve(de: &DoubleEquation, factors: Option<(&Rat, &Rat)>) -> Result<CurvePoint> {
    let class = classify(de);
    match class.heath_case {
        HeathCase::I if de.b1() != de.b2() => return solve_case_i(de, &class),
        HeathCase::II => return solve_case_ii(de, &class),
        HeathCase::FirstOrder => {
            let (f, g) = factors.ok_or(Error::MethodInapplicable(Inapplicable::FactorsRequired))?;
            return solve_genus0(de, f, g);
        }
        HeathCase::III if de.b1() == de.b2() || factors.is_some() => {
            let (f, g) = factors.ok_or(Error::MethodInapplicable(Inapplicable::FactorsRequired))?;
            // x = 1/y: y²·pᵢ(1/y) = cᵢy² + bᵢy + aᵢ = bᵢy + aᵢ
            let c = de.coeffs();
            let t = DoubleEquation::new([
                Rat::zero(),
                c[1].clone(),
                c[0].clone(),
                Rat::zero(),
                c[4].clone(),
                c[3].clone(),
            ])?;
            let q = solve_genus0(&t, f, g)?;
            let (y, u, v) = q.affine()?;
            if y.is_zero() {
                return Err(Error::PointAtInfinity);
            }
            return Ok(CurvePoint::from_affine(y.recip()?, u.checked_div(&y)?, v.checked_div(&y)?));
        }
        _ => {}
    }
    if de.a1().is_zero() && is_nonzero_square(de.a2()) {
        let sw = de.swapped();
        return solve_case_ii(&sw, &classify(&sw)).map(swap_uv);
    }
    if is_nonzero_square(de.a1()) && is_nonzero_square(de.a2()) {
        let p1 = de.points_at_infinity().remove(0);
        let r = fermat_step(de, &p1)?;
        if r.is_at_infinity() {
            return Err(Error::PointAtInfinity);
        }
        return Ok(r);
    }
    if class.difference_splits {
        Err(Error::MethodInapplicable(Inapplicable::NoLambda))
    } else {
        Err(Error::MethodInapplicable(Inapplicable::IrreducibleDifference))
    }
}

/// Coefficients `(k, l)` with `A X² + B XZ + C Z² = (Z₀X − X₀Z)(kX + lZ)`,
/// given that the left side vanishes at `(X₀ : Z₀)`.
fn cofactor(q: [&Rat; 3], x0: &Rat, z0: &Rat) -> Result<(Rat, Rat)> {
    let [a, b, c] = q;
    if !z0.is_zero() {
        let k = a.checked_div(z0)?;
        let l = (b + x0 * &k).checked_div(z0)?;
        Ok((k, l))
    } else {
        let l = (-c).checked_div(x0)?;
        let k = (-b).checked_div(x0)?;
        Ok((k, l))
    }
}

/// Second intersection of the curve with the line `L_{P,λ}` of the pencil
/// `v₀u + u₀v = λh(x)`, `v₀u − u₀v = λ⁻¹(x − x₀)` through `P`, where
/// `v₀²p₁ − u₀²p₂ = (x − x₀)h(x)`.
pub fn fermat_step(de: &DoubleEquation, p: &CurvePoint) -> Result<CurvePoint> {
    if !de.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let [x0, u0, v0, z0] = p.rats();
    if u0.is_zero() || v0.is_zero() {
        return Err(Error::DegenerateSecant);
    }
    let c = de.coeffs();
    let (u0s, v0s) = (u0.square(), v0.square());
    let ell = &v0s * &c[0] - &u0s * &c[3];
    let m = &v0s * &c[1] - &u0s * &c[4];
    let n = &v0s * &c[2] - &u0s * &c[5];
    let (hk, hl) = cofactor([&ell, &m, &n], &x0, &z0)?;
    let h0 = &hk * &x0 + &hl * &z0;
    if h0.is_zero() {
        return Err(Error::TangentialDegeneracy);
    }
    let lambda = (Rat::from(2) * &u0 * &v0).checked_div(&h0)?;
    let lam_inv = lambda.recip()?;
    // U = αX + βZ with 2V₀U = λ(kX + lZ) + λ⁻¹(Z₀X − X₀Z)
    let two_v0 = Rat::from(2) * &v0;
    let ua = (&lambda * &hk + &lam_inv * &z0).checked_div(&two_v0)?;
    let ub = (&lambda * &hl - &lam_inv * &x0).checked_div(&two_v0)?;
    // G = P₁ − U², vanishing at (X₀ : Z₀)
    let ga = &c[0] - ua.square();
    let gb = &c[1] - Rat::from(2) * &ua * &ub;
    let gc = &c[2] - ub.square();
    if ga.is_zero() && gb.is_zero() && gc.is_zero() {
        return Err(Error::TangentialDegeneracy);
    }
    let (gk, gl) = cofactor([&ga, &gb, &gc], &x0, &z0)?;
    let (x1, z1) = (gl, -gk);
    let u1 = &ua * &x1 + &ub * &z1;
    let two_u0 = Rat::from(2) * &u0;
    let v1 = (&lambda * (&hk * &x1 + &hl * &z1) - &lam_inv * (&z0 * &x1 - &x0 * &z1)).checked_div(&two_u0)?;
    let r = CurvePoint::from_rats([x1, u1, v1, z1])?;
    debug_assert!(de.contains(&r));
    Ok(r)
}

/// `(1 − (−3)ⁿ)/4`, the multiple of `R` reached after `n` secant steps.
pub fn fermat_coefficient(n: u32) -> BigInt {
    (BigInt::one() - num_traits::pow(BigInt::from(-3), n as usize)) / BigInt::from(4)
}

/// Projective residues modulo a prime, compared up to a unit.
#[derive(Clone, Eq)]
pub struct ReducedPoint {
    pub coords: [u64; 4],
    pub prime: u64,
}

impl PartialEq for ReducedPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.prime != other.prime {
            return false;
        }
        let p = self.prime as u128;
        (0..4).all(|i| {
            (0..4).all(|j| {
                (self.coords[i] as u128 * other.coords[j] as u128) % p
                    == (self.coords[j] as u128 * other.coords[i] as u128) % p
            })
        })
    }
}

impl fmt::Display for ReducedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords;
        write!(f, "({a}:{b}:{c}:{d})")
    }
}

impl fmt::Debug for ReducedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod {}", self.prime)
    }
}

/// Whether the curve reduces to a smooth genus 1 curve over F_p: p odd, no
/// denominator divisible by p, and p₁p₂ mod p of degree 3 or 4 and squarefree.
pub fn good_reduction(de: &DoubleEquation, prime: u64) -> Result<bool> {
    check_prime(prime)?;
    if prime == 2 {
        return Ok(false);
    }
    let prod = ModPoly::from_unipoly(&de.p1(), prime)?.mul(&ModPoly::from_unipoly(&de.p2(), prime)?);
    Ok(matches!(prod.degree(), Some(3) | Some(4)) && prod.is_squarefree())
}

pub fn reduce_point_mod_p(de: &DoubleEquation, p: &CurvePoint, prime: u64) -> Result<ReducedPoint> {
    if !good_reduction(de, prime)? {
        return Err(Error::BadReduction(prime));
    }
    if !de.contains(p) {
        return Err(Error::NotOnCurve);
    }
    Ok(ReducedPoint { coords: p.coords().clone().map(|c| reduce_int(&c, prime)), prime })
}

/// Short description used in reports.
pub fn describe(class: &DoubleEqClass) -> String {
    alloc::format!(
        "case {}, genus {}, {}{}",
        class.heath_case,
        class.genus,
        if class.smooth { "smooth" } else { "singular" },
        if class.reducible { ", reducible" } else { "" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn de(c: [i64; 6]) -> DoubleEquation {
        DoubleEquation::from_ints(c).unwrap()
    }

    #[test]
    fn rejects_proportional_systems() {
        assert!(DoubleEquation::from_ints([1, 2, 3, 2, 4, 6]).is_err());
        assert!(DoubleEquation::from_ints([0, 0, 0, 1, 0, 1]).is_err());
        assert!(DoubleEquation::from_ints([0, 0, 1, 0, 0, 5]).is_err());
    }

    #[test]
    fn classification_examples() {
        let c = classify(&de([0, 1, 2, 0, 1, 3]));
        assert_eq!(c.heath_case, HeathCase::FirstOrder);
        assert_eq!((c.genus, c.smooth), (0, false));

        let c = classify(&de([4, 4, -1, 4, 3, -1]));
        assert_eq!(c.heath_case, HeathCase::I);
        assert_eq!((c.genus, c.smooth), (1, true));
        assert_eq!(c.alpha1, Some(r("2")));

        let c = classify(&de([3, 0, -1, 1, 0, 1]));
        assert_eq!((c.genus, c.smooth, c.difference_splits), (1, true, true));
        assert_eq!(c.heath_case, HeathCase::Other);

        let c = classify(&de([1, 2, 1, 1, 0, 1]));
        assert!(c.reducible);
        assert_eq!(c.heath_case, HeathCase::I);
    }

    #[test]
    fn first_order_split() {
        let p = solve_genus0(&de([0, 1, 2, 0, 1, 3]), &r("4"), &r("1/4")).unwrap();
        assert_eq!(p.x().unwrap(), r("97/64"));
        assert!(de([0, 1, 2, 0, 1, 3]).contains(&p));
        assert!(solve_genus0(&de([0, 1, 2, 0, 1, 3]), &r("1"), &r("1")).is_err());
        assert!(solve_genus0(&de([0, 1, 2, 0, 1, 3]), &r("2"), &r("1")).is_err());

        let e = de([0, 1, 0, 0, 1, 8]);
        let p = solve_genus0(&e, &r("2"), &r("4")).unwrap();
        assert_eq!(p.affine().unwrap(), (r("1"), r("1"), r("3")));
    }

    #[test]
    fn case_i_examples() {
        let e = de([4, 4, -1, 4, 3, -1]);
        let p = solve_case_i(&e, &classify(&e)).unwrap();
        assert_eq!(p.affine().unwrap(), (r("65/224"), r("79/112"), r("51/112")));

        let e = de([4, 15, 0, 4, -1, -4]);
        let p = solve_case_i(&e, &classify(&e)).unwrap();
        assert_eq!(p.affine().unwrap(), (r("5/4"), r("5"), r("1")));

        let e = de([1, 2, 1, 1, 0, 1]);
        let p = solve_case_i(&e, &classify(&e)).unwrap();
        assert!(e.contains(&p));
        assert_eq!(p.x().unwrap(), r("-3/4"));

        let e = de([1, 0, 1, 1, 0, 2]);
        assert!(solve_case_i(&e, &classify(&e)).is_err());
    }

    #[test]
    fn case_ii_examples() {
        let e = de([1, 2, 1, 0, 1, 1]);
        let p = solve_case_ii(&e, &classify(&e)).unwrap();
        assert_eq!(p.x().unwrap(), r("-3/4"));
        assert_eq!(p.v().unwrap(), r("1/2"));
        assert!(e.contains(&p));

        let e = de([4, 0, 1, 0, 1, 1]);
        let p = solve_case_ii(&e, &classify(&e)).unwrap();
        assert_eq!((p.x().unwrap(), p.v().unwrap()), (r("-15/16"), r("-1/4")));
        assert!(e.contains(&p));

        let e = de([1, 1, 1, 0, 1, 2]);
        assert!(matches!(solve_case_ii(&e, &classify(&e)), Err(Error::Precondition(_))));

        // c₁/c₂ = 4 is a square: the second equation is rescaled
        let e = de([1, 3, 4, 0, 1, 1]);
        let p = solve_case_ii(&e, &classify(&e)).unwrap();
        assert!(e.contains(&p));
    }

    #[test]
    fn dispatcher() {
        assert_eq!(solve(&de([4, 4, -1, 4, 3, -1]), None).unwrap().x().unwrap(), r("65/224"));
        assert_eq!(
            solve(&de([3, 0, -1, 1, 0, 1]), None),
            Err(Error::MethodInapplicable(Inapplicable::NoLambda))
        );
        assert_eq!(
            solve(&de([3, 0, -1, 1, 0, 2]), None),
            Err(Error::MethodInapplicable(Inapplicable::IrreducibleDifference))
        );
        assert_eq!(
            solve(&de([0, 1, 2, 0, 1, 3]), None),
            Err(Error::MethodInapplicable(Inapplicable::FactorsRequired))
        );
        let e = de([0, 1, 1, 4, 0, 1]);
        assert!(e.contains(&solve(&e, None).unwrap()));
        let e = de([1, 1, 0, 4, 1, 0]);
        let p = solve(&e, Some((&r("6"), &r("1/2")))).unwrap();
        assert!(e.contains(&p));
        let e = de([1, 2, 3, 4, 5, 6]);
        let p = solve(&e, None).unwrap();
        assert!(e.contains(&p));
    }

    #[test]
    fn fermat_from_infinity() {
        let e = de([4, 4, -1, 4, 3, -1]);
        let p1 = CurvePoint::from_ints([1, 2, 2, 0]).unwrap();
        assert_eq!(e.points_at_infinity()[0], p1);
        let r1 = fermat_step(&e, &p1).unwrap();
        assert_eq!(r1.affine().unwrap(), (r("65/224"), r("79/112"), r("51/112")));
        let r2 = fermat_step(&e, &r1).unwrap();
        assert!(e.contains(&r2));
        assert!(r2 != r1 && r2 != r1.negate_u() && r2 != r1.negate_v());
    }

    #[test]
    fn fermat_guards() {
        let e = de([1, 0, 0, 1, 0, 1]);
        let p = CurvePoint::from_ints([0, 0, 1, 1]).unwrap();
        assert_eq!(fermat_step(&e, &p), Err(Error::DegenerateSecant));
        let off = CurvePoint::from_ints([1, 1, 1, 1]).unwrap();
        assert_eq!(fermat_step(&e, &off), Err(Error::NotOnCurve));
    }

    #[test]
    fn coefficients() {
        let table: Vec<BigInt> = (0..6).map(fermat_coefficient).collect();
        assert_eq!(table, [0, 1, -2, 7, -20, 61].map(BigInt::from));
    }

    #[test]
    fn reduction_mod_7() {
        let e = de([4, 4, -1, 4, 3, -1]);
        let p = CurvePoint::from_affine(r("65/224"), r("79/112"), r("51/112"));
        let red = reduce_point_mod_p(&e, &p, 7).unwrap();
        assert_eq!(red.coords, [2, 4, 4, 0]);
        let inf = reduce_point_mod_p(&e, &CurvePoint::from_ints([1, 2, 2, 0]).unwrap(), 7).unwrap();
        assert_eq!(inf.coords, [1, 2, 2, 0]);
        assert_eq!(red, inf);
        assert_eq!(reduce_point_mod_p(&e, &p, 5), Err(Error::BadReduction(5)));
    }

    #[test]
    fn normal_form() {
        let p = CurvePoint::from_rats([r("-1/2"), r("1"), r("0"), r("-1")]).unwrap();
        assert_eq!(p.coords(), &[1, -2, 0, 2].map(BigInt::from));
        assert!(CurvePoint::from_ints([0, 0, 0, 0]).is_err());
        assert_eq!(CurvePoint::from_ints([1, 2, 2, 0]).unwrap().x(), Err(Error::PointAtInfinity));
    }
}
