//! Closed-form parametrizations and fibre solvers for the six problems.
//!
//! Witness signs are those the formulas produce; see
//! [`RatPoint::is_admissible`] for the positivity filter.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use crate::error::{Error, Result};
use crate::rat::{content, Rat};
use crate::surface::{Problem, RatPoint};

fn q(n: i64) -> Rat {
    Rat::from(n)
}

fn excluded(what: &str) -> Error {
    Error::ExcludedParameter(what.to_string())
}

/// `x = (μ² − λ⁴)/(4λ³ − 4λμ + 1)`, `y = 2λx + λ²`, `u = x + λ`, `v = 2λx + μ`.
pub fn ii20_param(lambda: &Rat, mu: &Rat) -> Result<RatPoint> {
    let den = q(4) * lambda.pow(3)? - q(4) * lambda * mu + q(1);
    if den.is_zero() {
        return Err(Error::Indeterminate("4λ³ − 4λμ + 1 = 0".into()));
    }
    let x = (mu.square() - lambda.pow(4)?).checked_div(&den)?;
    let two_lx = q(2) * lambda * &x;
    let y = &two_lx + lambda.square();
    let u = &x + lambda;
    let v = &two_lx + mu;
    Ok(RatPoint::from_pairs([("x", x), ("y", y), ("u", u), ("v", v)]))
}

/// `λ = u − x`, `μ = v − 2λx`.
pub fn ii20_inverse(p: &RatPoint) -> Result<(Rat, Rat)> {
    let (x, u, v) = (p.require("x")?, p.require("u")?, p.require("v")?);
    let lambda = u - x;
    let mu = v - q(2) * &lambda * x;
    Ok((lambda, mu))
}

/// Product and sum with square witnesses: `S = (2ra)²`,
/// `P ± S = (a(2r² ± 1))²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSum {
    pub product: Rat,
    pub sum: Rat,
    pub sqrt_sum: Rat,
    pub sqrt_p_plus_s: Rat,
    pub sqrt_p_minus_s: Rat,
}

pub fn ii31_ps(a: &Rat, r: &Rat) -> Result<ProductSum> {
    if a.is_zero() || r.is_zero() {
        return Err(excluded("a and r must be nonzero"));
    }
    let r2 = r.square();
    let a2 = a.square();
    Ok(ProductSum {
        product: (q(4) * r2.square() + q(1)) * &a2,
        sum: q(4) * &r2 * &a2,
        sqrt_sum: q(2) * r * a,
        sqrt_p_plus_s: a * (q(2) * &r2 + q(1)),
        sqrt_p_minus_s: a * (q(2) * &r2 - q(1)),
    })
}

/// `x = λ² + a² + 1/(4a²)`, `y = (a² + 1/(4a²))·x/λ²`, `u = x/λ`,
/// `(v, w) = (m·u, n·u)` with `(m, n) = (a + 1/(2a), a − 1/(2a))`.
pub fn ii31_param(lambda: &Rat, a: &Rat) -> Result<RatPoint> {
    if lambda.is_zero() || a.is_zero() {
        return Err(excluded("λ and a must be nonzero"));
    }
    let k = a.square() + (q(4) * a.square()).recip()?;
    let x = lambda.square() + &k;
    let u = x.checked_div(lambda)?;
    let y = (&k * &x).checked_div(&lambda.square())?;
    let half_inv = (q(2) * a).recip()?;
    let m = a + &half_inv;
    let n = a - &half_inv;
    let v = &m * &u;
    let w = &n * &u;
    Ok(RatPoint::from_pairs([("x", x), ("y", y), ("u", u), ("v", v), ("w", w)]))
}

/// Recover `(λ, a) = (x/u, (v/u + w/u)/2)`.
pub fn ii31_inverse(p: &RatPoint) -> Result<(Rat, Rat)> {
    let u = p.require("u")?;
    if u.is_zero() {
        return Err(Error::Indeterminate("u = 0".into()));
    }
    let lambda = p.require("x")?.checked_div(u)?;
    let a = (p.require("v")? + p.require("w")?).checked_div(&(q(2) * u))?;
    Ok((lambda, a))
}

/// The section of `(x, y, u, v, w) ↦ v/x`.
pub fn iii17_sigma(t: &Rat) -> Result<RatPoint> {
    let t2 = t.square();
    let d = q(16) * t.pow(3)? - q(8) * t;
    let dx = q(16) * t2.square() - q(8) * &t2;
    let dy = q(16) * &t2 - q(8);
    if t.is_zero() || d.is_zero() || dx.is_zero() || dy.is_zero() {
        return Err(excluded("t = 0 or 16t⁴ − 8t² = 0"));
    }
    let s = q(16) * &t2 + q(1);
    Ok(RatPoint::from_pairs([
        ("x", s.checked_div(&dx)?),
        ("y", q(9).checked_div(&dy)?),
        ("u", (q(20) * &t2 - q(1)).checked_div(&d)?),
        ("v", s.checked_div(&d)?),
        ("w", (q(12) * &t2 + q(3)).checked_div(&d)?),
    ]))
}

/// After the base change `u = t²`: `x = 1/(2t³)`, `y = (8t¹⁵ − 1)/(8t⁹)`,
/// `v = (8t¹⁵ + 1)/(8t⁹)`.
pub fn iv18_section(t: &Rat) -> Result<RatPoint> {
    if t.is_zero() {
        return Err(excluded("t = 0"));
    }
    let t15 = q(8) * t.pow(15)?;
    let t9 = q(8) * t.pow(9)?;
    Ok(RatPoint::from_pairs([
        ("x", (q(2) * t.pow(3)?).recip()?),
        ("y", (&t15 - q(1)).checked_div(&t9)?),
        ("u", t.square()),
        ("v", (&t15 + q(1)).checked_div(&t9)?),
    ]))
}

/// `(T² − 1)((n − 1)T − n − 1)` with `T = t₀²`: the right side of the fibre
/// conic `t₀²u² − v² = …`.
pub fn iv32_conic_constant(t0: &Rat, n: &Rat) -> Rat {
    let tt = t0.square();
    (tt.square() - q(1)) * ((n - q(1)) * &tt - n - q(1))
}

/// The default split `λ₀ = product`, `μ₀ = 1`.
pub fn iv32_default_split(t0: &Rat, n: &Rat) -> (Rat, Rat) {
    (iv32_conic_constant(t0, n), Rat::one())
}

/// Solve the fibre over `y = (t₀² + 1)/(t₀² − 1)` from a factorization
/// `λ₀μ₀` of the conic constant. Returns `x, y, z` with `u = √(xy − z)`,
/// `v = √(xy + z)`.
pub fn iv32_solve_fibre(t0: &Rat, n: &Rat, l0: &Rat, m0: &Rat) -> Result<RatPoint> {
    let tt = t0.square();
    if t0.is_zero() || tt.is_one() {
        return Err(excluded("t0 ∈ {0, ±1}"));
    }
    let k = iv32_conic_constant(t0, n);
    if l0 * m0 != k {
        return Err(Error::Precondition(format!("λ0·μ0 = {} but the conic needs {}", l0 * m0, k)));
    }
    if l0 == m0 || l0 == &-m0 {
        return Err(Error::Precondition("degenerate factor pair λ0 = ±μ0".into()));
    }
    let up = (l0 + m0).checked_div(&(q(2) * t0))?;
    let vp = (l0 - m0) * Rat::frac(1, 2);
    let tm = &tt - q(1);
    let tp = &tt + q(1);
    let z = (&tp * ((n - q(1)) * &tt - n - q(1)) - up.square()).checked_div(&(q(2) * &tm))?;
    let y = tp.checked_div(&tm)?;
    let x = n - &y - &z;
    let u = vp.checked_div(&tm)?;
    let v = up.checked_div(&tm)?;
    Ok(RatPoint::from_pairs([("x", x), ("y", y), ("z", z), ("u", u), ("v", v)]))
}

/// From a rational Pythagorean triple `p² + q² = c²`:
/// `(x, y, z, w) = (pq/c, p, q, |x² − c²|)`.
pub fn v29_curve(p: &Rat, q_: &Rat, c: &Rat) -> Result<RatPoint> {
    if c.is_zero() {
        return Err(excluded("c = 0"));
    }
    if p.square() + q_.square() != c.square() {
        return Err(Error::Precondition(format!("{p}² + {q_}² ≠ {c}²")));
    }
    let g = content(&[p.clone(), q_.clone(), c.clone()]);
    let (p, q_, c) = (p.checked_div(&g)?, q_.checked_div(&g)?, c.checked_div(&g)?);
    let x = (&p * &q_).checked_div(&c)?;
    let w = (x.square() - c.square()).abs();
    Ok(RatPoint::from_pairs([("x", x), ("y", p), ("z", q_), ("w", w)]))
}

/// Labelled parameters for one engine.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamInput {
    pub params: BTreeMap<String, Rat>,
}

impl ParamInput {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, label: &str, value: Rat) -> Self {
        self.params.insert(label.to_string(), value);
        self
    }

    fn get(&self, label: &str) -> Result<&Rat> {
        self.params.get(label).ok_or_else(|| Error::MissingParameter(label.to_string()))
    }

    /// Labels each engine reads; IV.32's `n`, `l0`, `m0` and V.29's `c` are optional.
    pub fn labels(problem: Problem) -> &'static [&'static str] {
        match problem {
            Problem::II20 => &["lambda", "mu"],
            Problem::II31 => &["lambda", "a"],
            Problem::III17 | Problem::IV18 => &["t"],
            Problem::IV32 => &["t0", "n", "l0", "m0"],
            Problem::V29 => &["p", "q", "c"],
        }
    }

    pub fn run(&self, problem: Problem) -> Result<RatPoint> {
        match problem {
            Problem::II20 => ii20_param(self.get("lambda")?, self.get("mu")?),
            Problem::II31 => ii31_param(self.get("lambda")?, self.get("a")?),
            Problem::III17 => iii17_sigma(self.get("t")?),
            Problem::IV18 => iv18_section(self.get("t")?),
            Problem::IV32 => {
                let t0 = self.get("t0")?;
                let n = self.params.get("n").cloned().unwrap_or_else(|| q(6));
                let (l0, m0) = match (self.params.get("l0"), self.params.get("m0")) {
                    (Some(l), Some(m)) => (l.clone(), m.clone()),
                    (None, None) => iv32_default_split(t0, &n),
                    (Some(_), None) => return Err(Error::MissingParameter("m0".into())),
                    (None, Some(_)) => return Err(Error::MissingParameter("l0".into())),
                };
                iv32_solve_fibre(t0, &n, &l0, &m0)
            }
            Problem::V29 => {
                let (p, q_) = (self.get("p")?, self.get("q")?);
                let c = match self.params.get("c") {
                    Some(c) => c.clone(),
                    None => (p.square() + q_.square())
                        .sqrt()
                        .ok_or_else(|| Error::Precondition("p² + q² is not a rational square".into()))?,
                };
                v29_curve(p, q_, &c)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceModel;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> RatPoint {
        s.parse().unwrap()
    }

    #[test]
    fn ii20_examples() {
        assert_eq!(ii20_param(&q(1), &q(-2)).unwrap(), pt("x=3/13,y=19/13,u=16/13,v=-20/13"));
        assert_eq!(ii20_param(&q(2), &q(1)).unwrap(), pt("x=-3/5,y=8/5,u=7/5,v=-7/5"));
        assert_eq!(ii20_param(&q(0), &q(0)).unwrap(), pt("x=0,y=0,u=0,v=0"));
        assert_eq!(ii20_inverse(&pt("x=3/13,y=19/13,u=16/13,v=-20/13")).unwrap(), (q(1), q(-2)));
        assert_eq!(ii20_inverse(&pt("x=-3/5,y=8/5,u=7/5,v=-7/5")).unwrap(), (q(2), q(1)));
        // 4λ³ − 4λμ + 1 = 0 at λ = 1, μ = 5/4
        assert!(matches!(ii20_param(&q(1), &r("5/4")), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn ii31_examples() {
        let ps = ii31_ps(&q(2), &q(1)).unwrap();
        assert_eq!((ps.product, ps.sum), (q(20), q(16)));
        let ps = ii31_ps(&q(1), &q(1)).unwrap();
        assert_eq!((ps.sqrt_sum, ps.sqrt_p_plus_s, ps.sqrt_p_minus_s), (q(2), q(3), q(1)));
        let ps = ii31_ps(&q(1), &r("1/2")).unwrap();
        assert_eq!((ps.product, ps.sum), (r("5/4"), q(1)));

        let p = ii31_param(&q(1), &q(1)).unwrap();
        assert_eq!(p, pt("x=9/4,y=45/16,u=9/4,v=27/8,w=9/8"));
        let p = ii31_param(&q(2), &q(1)).unwrap();
        assert_eq!(p.get("y"), Some(&r("105/64")));
        assert_eq!(ii31_inverse(&p).unwrap(), (q(2), q(1)));
        assert!(ii31_param(&q(1), &q(0)).is_err());
    }

    #[test]
    fn iii17_and_iv18() {
        assert_eq!(iii17_sigma(&q(2)).unwrap(), pt("x=65/224,y=9/56,u=79/112,v=65/112,w=51/112"));
        assert_eq!(iii17_sigma(&q(1)).unwrap(), pt("x=17/8,y=9/8,u=19/8,v=17/8,w=15/8"));
        assert!(matches!(iii17_sigma(&q(0)), Err(Error::ExcludedParameter(_))));

        assert_eq!(iv18_section(&q(2)).unwrap(), pt("x=1/16,y=262143/4096,u=4,v=262145/4096"));
        assert_eq!(iv18_section(&q(1)).unwrap(), pt("x=1/2,y=7/8,u=1,v=9/8"));
        let p = iv18_section(&q(-1)).unwrap();
        assert_eq!(p, pt("x=-1/2,y=9/8,u=1,v=7/8"));
        assert!(SurfaceModel::new(Problem::IV18).membership(&p).unwrap());
        assert!(iv18_section(&q(0)).is_err());
    }

    #[test]
    fn iv32_examples() {
        let p = iv32_solve_fibre(&q(2), &q(6), &q(15), &q(13)).unwrap();
        assert_eq!(p, pt("x=5/3,y=5/3,z=8/3,u=1/3,v=7/3"));
        let p = iv32_solve_fibre(&q(3), &q(6), &q(40), &q(76)).unwrap();
        assert_eq!((p.get("x"), p.get("y"), p.get("z")), (Some(&r("157/36")), Some(&r("5/4")), Some(&r("7/18"))));
        assert_eq!(p.get("u").unwrap().square(), r("81/16"));
        assert_eq!(p.get("v").unwrap().square(), r("841/144"));
        assert!(iv32_solve_fibre(&q(2), &q(6), &q(1), &q(1)).is_err());
        assert!(iv32_solve_fibre(&q(1), &q(6), &q(1), &q(1)).is_err());
        let (l, m) = iv32_default_split(&q(2), &q(6));
        assert_eq!((l.clone(), m.clone()), (q(195), q(1)));
        let p = iv32_solve_fibre(&q(2), &q(6), &l, &m).unwrap();
        assert!(SurfaceModel::new(Problem::IV32).membership(&p).unwrap());
    }

    #[test]
    fn v29_examples() {
        assert_eq!(v29_curve(&q(3), &q(4), &q(5)).unwrap(), pt("x=12/5,y=3,z=4,w=481/25"));
        assert_eq!(v29_curve(&q(5), &q(12), &q(13)).unwrap(), pt("x=60/13,y=5,z=12,w=24961/169"));
        assert_eq!(v29_curve(&q(6), &q(8), &q(10)).unwrap(), v29_curve(&q(3), &q(4), &q(5)).unwrap());
        assert!(v29_curve(&q(1), &q(1), &q(2)).is_err());
    }

    #[test]
    fn dispatcher() {
        let input = ParamInput::new().with("t0", q(2)).with("l0", q(15)).with("m0", q(13));
        assert_eq!(input.run(Problem::IV32).unwrap().get("x"), Some(&r("5/3")));
        assert_eq!(ParamInput::new().run(Problem::II20), Err(Error::MissingParameter("lambda".into())));
        let v = ParamInput::new().with("p", q(3)).with("q", q(4)).run(Problem::V29).unwrap();
        assert_eq!(v.get("w"), Some(&r("481/25")));
    }
}
