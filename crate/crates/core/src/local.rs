//! Local solubility: Hilbert symbols, diagonal conics over Q, and a bounded
//! p-adic search for double equations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, crt, factor, legendre, sqrt_mod_prime};
use crate::double_eq::DoubleEquation;
use crate::error::{Error, Result};
use crate::modp::check_prime;
use crate::rat::{common_denominator, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `n = p^v · u` with `p ∤ u`.
fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut u = n.clone();
    let mut v = 0;
    while !u.is_zero() && u.is_multiple_of(&pb) {
        u /= &pb;
        v += 1;
    }
    (v, u)
}

fn residue(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// A rational as an integer in the same square class: `n·d`.
fn square_class_int(r: &Rat) -> BigInt {
    r.numer() * r.denom()
}

/// The Hilbert symbol `(a, b)_v` as ±1.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("Hilbert symbol of zero".into()));
    }
    let p = match place {
        Place::Infinity => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => p,
    };
    check_prime(p)?;
    let (alpha, u) = split_valuation(&square_class_int(a), p);
    let (beta, v) = split_valuation(&square_class_int(b), p);
    if p == 2 {
        let (u8_, v8) = (residue(&u, 8), residue(&v, 8));
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let e = eps(u8_) * eps(v8) + alpha as u64 * omega(v8) + beta as u64 * omega(u8_);
        return Ok(if e.is_multiple_of(2) { 1 } else { -1 });
    }
    let mut s = 1;
    if (alpha as u64 * beta as u64) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
        s = -s;
    }
    if beta % 2 == 1 {
        s *= legendre(residue(&u, p), p);
    }
    if alpha % 2 == 1 {
        s *= legendre(residue(&v, p), p);
    }
    Ok(s)
}

/// Odd primes dividing `n`, plus 2.
fn relevant_primes(n: u64) -> Vec<u64> {
    let mut ps: Vec<u64> = factor(n).into_iter().map(|(p, _)| p).collect();
    if !ps.contains(&2) {
        ps.insert(0, 2);
    }
    ps
}

/// `aX² + bY² + cZ² = 0` with squarefree, pairwise coprime coefficients.
/// `scales` maps a solution of the normalized form back to the original:
/// `X_orig = scales[0]·X` etc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagConic {
    pub original: [i64; 3],
    pub coeffs: [i64; 3],
    pub scales: [Rat; 3],
}

const COEFF_LIMIT: i64 = 1 << 31;

impl DiagConic {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let orig = [a, b, c];
        if orig.contains(&0) {
            return Err(Error::Precondition("conic coefficients must be nonzero".into()));
        }
        if orig.iter().any(|x| x.abs() >= COEFF_LIMIT) {
            return Err(Error::OutOfRange("conic coefficients must be below 2^31 in absolute value".into()));
        }
        let mut k = orig;
        let mut scales = [Rat::one(), Rat::one(), Rat::one()];
        for i in 0..3 {
            let (sf, s) = arith::squarefree_decompose(k[i].unsigned_abs());
            k[i] = k[i].signum() * sf as i64;
            // a·s²·X² = a·(sX)²: the new coordinate is sX
            scales[i] = Rat::frac(1, s as i64);
        }
        loop {
            let g = arith::gcd(arith::gcd(k[0].unsigned_abs(), k[1].unsigned_abs()), k[2].unsigned_abs());
            if g > 1 {
                for x in k.iter_mut() {
                    *x /= g as i64;
                }
            }
            let mut changed = false;
            for (i, j, l) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                let g = arith::gcd(k[i].unsigned_abs(), k[j].unsigned_abs());
                if g > 1 {
                    // g | Z_l: put Z_l = g·Z', divide through by g
                    k[i] /= g as i64;
                    k[j] /= g as i64;
                    k[l] *= g as i64;
                    scales[l] = &scales[l] * &Rat::from(g as i64);
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(DiagConic { original: orig, coeffs: k, scales })
    }

    pub fn eval_original(&self, p: &[BigInt; 3]) -> BigInt {
        (0..3).map(|i| BigInt::from(self.original[i]) * &p[i] * &p[i]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicSolubility {
    Soluble { witness: [BigInt; 3] },
    Insoluble { obstructions: Vec<Place> },
}

/// Places where `(−ac, −bc)_v = −1` for the normalized form.
pub fn conic_obstructions(c: &DiagConic) -> Result<Vec<Place>> {
    let [a, b, cc] = c.coeffs.map(|x| x as i128);
    let s = Rat::from(BigInt::from(-a * cc));
    let t = Rat::from(BigInt::from(-b * cc));
    let mut out = Vec::new();
    if hilbert_symbol(&s, &t, Place::Infinity)? == -1 {
        out.push(Place::Infinity);
    }
    let abc = (a * b * cc).unsigned_abs() as u64;
    for p in relevant_primes(abc) {
        if hilbert_symbol(&s, &t, Place::Prime(p))? == -1 {
            out.push(Place::Prime(p));
        }
    }
    out.sort();
    Ok(out)
}

const SEARCH_HEIGHT: i64 = 48;

fn small_positive_witness(c: &DiagConic) -> Option<[BigInt; 3]> {
    let [a, b, cc] = c.original.map(|x| x as i128);
    for h in 1..=SEARCH_HEIGHT as i128 {
        for x in 1..=h {
            for y in 1..=h {
                for z in 1..=h {
                    if x.max(y).max(z) != h {
                        continue;
                    }
                    if a * x * x + b * y * y + cc * z * z == 0
                        && arith::gcd(arith::gcd(x as u64, y as u64), z as u64) == 1
                    {
                        return Some([x, y, z].map(BigInt::from));
                    }
                }
            }
        }
    }
    None
}

/// A square root of `a` modulo the squarefree `m`, via CRT over its primes.
fn sqrt_mod_squarefree(a: i128, m: u64) -> Option<u64> {
    let (mut r, mut modulus) = (0u64, 1u64);
    for (p, _) in factor(m) {
        let ap = a.rem_euclid(p as i128) as u64;
        let s = sqrt_mod_prime(ap, p)?;
        r = crt(r, modulus, s, p);
        modulus *= p;
    }
    Some(r)
}

/// A nontrivial integer solution of `x² = A·y² + B·z²` (A, B squarefree),
/// by Lagrange's descent.
fn legendre_descent(a: i128, b: i128) -> Option<[BigInt; 3]> {
    let is_sq = |n: i128| n >= 0 && Roots::sqrt(&n).pow(2) == n;
    let isqrt = |n: i128| Roots::sqrt(&n);
    if is_sq(a) {
        return Some([BigInt::from(isqrt(a)), BigInt::one(), BigInt::zero()]);
    }
    if is_sq(b) {
        return Some([BigInt::from(isqrt(b)), BigInt::zero(), BigInt::one()]);
    }
    if a.abs() > b.abs() {
        let [x, y, z] = legendre_descent(b, a)?;
        return Some([x, z, y]);
    }
    let m = b.unsigned_abs() as u64;
    if m <= 1 {
        return None;
    }
    let mut r = sqrt_mod_squarefree(a, m)? as i128;
    if r > (m / 2) as i128 {
        r -= m as i128;
    }
    let t = (r * r - a) / b;
    if t == 0 {
        return None;
    }
    let (sf, s) = arith::squarefree_decompose(t.unsigned_abs() as u64);
    let t_sf = t.signum() * sf as i128;
    let [xx, yy, zz] = legendre_descent(a, t_sf)?;
    let (ab, rb) = (BigInt::from(a), BigInt::from(r));
    let x = &rb * &xx + &ab * &yy;
    let y = &xx + &rb * &yy;
    let z = BigInt::from(t_sf) * BigInt::from(s) * zz;
    Some([x, y, z])
}

fn primitive_abs(v: [BigInt; 3]) -> [BigInt; 3] {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    v.map(|c| (c / &g).abs())
}

/// Decide solubility over Q; return a primitive integer witness or every
/// obstructing place.
pub fn conic_soluble(c: &DiagConic) -> Result<ConicSolubility> {
    let obstructions = conic_obstructions(c)?;
    if !obstructions.is_empty() {
        return Ok(ConicSolubility::Insoluble { obstructions });
    }
    if let Some(w) = small_positive_witness(c) {
        return Ok(ConicSolubility::Soluble { witness: w });
    }
    // aX² + bY² + cZ² = 0 with x = aX: x² = −ab·Y² − ac·Z²
    let [a, b, cc] = c.coeffs.map(|x| x as i128);
    let [x, y, z] = legendre_descent(-a * b, -a * cc)
        .ok_or_else(|| Error::Precondition("descent failed on a locally soluble conic".into()))?;
    let norm = [Rat::from(x) * Rat::from(BigInt::from(a)).recip()?, Rat::from(y), Rat::from(z)];
    let orig: Vec<Rat> = norm.iter().zip(&c.scales).map(|(v, s)| v * s).collect();
    let l = Rat::from(common_denominator(&orig));
    let ints = [0, 1, 2].map(|i| (&orig[i] * &l).numer().clone());
    let w = primitive_abs(ints);
    debug_assert!(c.eval_original(&w).is_zero());
    Ok(ConicSolubility::Soluble { witness: w })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicVerdict {
    Insoluble,
    Unknown,
}

impl fmt::Display for PadicVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PadicVerdict::Insoluble => "insoluble",
            PadicVerdict::Unknown => "unknown",
        })
    }
}

pub const DEFAULT_PRECISION: u32 = 6;
const FRONTIER_LIMIT: usize = 200_000;

struct IntSystem {
    // U² = A1 X² + B1 XZ + C1 Z², V² = A2 X² + B2 XZ + C2 Z²
    c: [BigInt; 6],
}

impl IntSystem {
    fn new(de: &DoubleEquation) -> Self {
        let k = de.coeffs();
        let d1 = Rat::from(common_denominator(&k[0..3]).pow(2));
        let d2 = Rat::from(common_denominator(&k[3..6]).pow(2));
        let c = [0, 1, 2, 3, 4, 5].map(|i| {
            let d = if i < 3 { &d1 } else { &d2 };
            (&k[i] * d).numer().clone()
        });
        IntSystem { c }
    }

    fn reduced(&self, m: u64) -> [u128; 6] {
        self.c.clone().map(|x| residue(&x, m) as u128)
    }
}

/// Residues of `F₁ = U² − P₁(X,Z)` and `F₂ = V² − P₂(X,Z)` modulo `m`.
fn eval_mod(c: &[u128; 6], pt: &[u128; 4], m: u128) -> (u128, u128) {
    let [x, u, v, z] = *pt;
    let form = |a: u128, b: u128, cc: u128| (a * (x * x % m) % m + b * (x * z % m) % m + cc * (z * z % m) % m) % m;
    let f1 = (u * u % m + m - form(c[0], c[1], c[2])) % m;
    let f2 = (v * v % m + m - form(c[3], c[4], c[5])) % m;
    (f1, f2)
}

/// Rank of the Jacobian in the free coordinates is 2 modulo `p`.
fn hensel_liftable(c: &[u128; 6], pt: &[u128; 4], fixed: usize, p: u128) -> bool {
    let [x, u, v, z] = pt.map(|t| t % p);
    let c = c.map(|t| t % p);
    let neg = |t: u128| (p - t % p) % p;
    // columns X, U, V, Z
    let r1 = [neg(2 * c[0] * x + c[1] * z), 2 * u % p, 0, neg(c[1] * x + 2 * c[2] * z)];
    let r2 = [neg(2 * c[3] * x + c[4] * z), 0, 2 * v % p, neg(c[4] * x + 2 * c[5] * z)];
    let cols: Vec<usize> = (0..4).filter(|&i| i != fixed).collect();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let (a, b) = (cols[i], cols[j]);
            let det = (r1[a] % p * (r2[b] % p) % p + p - r1[b] % p * (r2[a] % p) % p) % p;
            if det != 0 {
                return true;
            }
        }
    }
    false
}

/// One-sided certificate: `Insoluble` only when no primitive solution exists
/// modulo `p^k` (points at infinity included).
pub fn padic_insoluble_system(de: &DoubleEquation, prime: u64, k: u32) -> Result<PadicVerdict> {
    check_prime(prime)?;
    if k == 0 {
        return Err(Error::Precondition("precision k must be at least 1".into()));
    }
    let pk = (prime as u128).checked_pow(k).filter(|&m| m < (1u128 << 62));
    if pk.is_none() {
        return Err(Error::OutOfRange(alloc::format!("{prime}^{k} exceeds 2^62")));
    }
    let sys = IntSystem::new(de);
    let p = prime as u128;
    for fixed in 0..4 {
        // coordinates before `fixed` are divisible by p, `fixed` itself is 1
        let c1 = sys.reduced(prime);
        let mut frontier: Vec<[u128; 4]> = Vec::new();
        let free: Vec<usize> = (fixed + 1..4).collect();
        let count = p.pow(free.len() as u32);
        for idx in 0..count {
            let mut pt = [0u128; 4];
            pt[fixed] = 1;
            let mut r = idx;
            for &f in &free {
                pt[f] = r % p;
                r /= p;
            }
            if eval_mod(&c1, &pt, p) == (0, 0) {
                if prime != 2 && hensel_liftable(&c1, &pt, fixed, p) {
                    return Ok(PadicVerdict::Unknown);
                }
                frontier.push(pt);
            }
        }
        let mut modulus = p;
        for _ in 1..k {
            if frontier.is_empty() {
                break;
            }
            let next_mod = modulus * p;
            let cj = sys.reduced(next_mod as u64);
            let movable: Vec<usize> = (0..4).filter(|&i| i != fixed).collect();
            let mut next = Vec::new();
            for pt in &frontier {
                for idx in 0..p.pow(3) {
                    let mut q = *pt;
                    let mut r = idx;
                    for &f in &movable {
                        q[f] += (r % p) * modulus;
                        r /= p;
                    }
                    if eval_mod(&cj, &q, next_mod) == (0, 0) {
                        next.push(q);
                    }
                }
                if next.len() > FRONTIER_LIMIT {
                    return Ok(PadicVerdict::Unknown);
                }
            }
            frontier = next;
            modulus = next_mod;
        }
        if !frontier.is_empty() {
            return Ok(PadicVerdict::Unknown);
        }
    }
    Ok(PadicVerdict::Insoluble)
}

/// Primes worth testing for a local obstruction: 2, 3, 5, 7 and the primes
/// below 100 dividing a coefficient numerator or denominator.
pub fn candidate_primes(de: &DoubleEquation) -> Vec<u64> {
    let mut ps = vec![2u64, 3, 5, 7];
    for c in de.coeffs() {
        for n in [c.numer(), c.denom()] {
            for p in (11..100u64).filter(|&p| arith::is_prime(p)) {
                if !n.is_zero() && n.is_multiple_of(&BigInt::from(p)) && !ps.contains(&p) {
                    ps.push(p);
                }
            }
        }
    }
    ps.sort_unstable();
    ps
}
