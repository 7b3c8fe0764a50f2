#![allow(dead_code)]

use dioph_core::double_eq::DoubleEquation;
use dioph_core::Rat;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::frac(n, d)
}

/// Numerator in [-h, h], denominator in [1, h].
pub fn rand_rat(rng: &mut impl Rng, h: i64) -> Rat {
    Rat::frac(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn rand_nonzero_rat(rng: &mut impl Rng, h: i64) -> Rat {
    loop {
        let r = rand_rat(rng, h);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    let (n, d) = r.to_i64_pair().expect("small rational");
    n as f64 / d as f64
}

/// Independent smoothness test for `U² = P₁(X,Z)`, `V² = P₂(X,Z)` in P³:
/// a singular point needs the 4·U·V minor to vanish, so it has U = 0 or
/// V = 0 and lies over a root of P₁ or P₂. At each such candidate the six
/// 2×2 minors of the Jacobian are evaluated in floating point.
pub fn jacobian_smooth(de: &DoubleEquation) -> bool {
    let c: Vec<f64> = de.coeffs().iter().map(to_f64).collect();
    let (f1, f2) = ([c[0], c[1], c[2]], [c[3], c[4], c[5]]);
    let form = |f: [f64; 3], x: Complex64, z: Complex64| x * x * f[0] + x * z * f[1] + z * z * f[2];
    let mut candidates = Vec::new();
    for (which, f) in [(0usize, f1), (1usize, f2)] {
        for (x, z) in binary_roots(f) {
            let other = if which == 0 { f2 } else { f1 };
            let w = form(other, x, z).sqrt();
            let (u, v) = if which == 0 { (Complex64::new(0.0, 0.0), w) } else { (w, Complex64::new(0.0, 0.0)) };
            candidates.push([x, u, v, z]);
        }
    }
    for [x, u, v, z] in candidates {
        let two = Complex64::new(2.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let r1 = [-(x * 2.0 * f1[0] + z * f1[1]), two * u, zero, -(x * f1[1] + z * 2.0 * f1[2])];
        let r2 = [-(x * 2.0 * f2[0] + z * f2[1]), zero, two * v, -(x * f2[1] + z * 2.0 * f2[2])];
        let mut max_minor: f64 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                max_minor = max_minor.max((r1[i] * r2[j] - r1[j] * r2[i]).norm());
            }
        }
        if max_minor < 1e-7 {
            return false;
        }
    }
    true
}

/// Zeros of `aX² + bXZ + cZ²` on the complex projective line.
fn binary_roots(f: [f64; 3]) -> Vec<(Complex64, Complex64)> {
    let [a, b, c] = f;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if a != 0.0 {
        let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
        return vec![((-b + disc) / (2.0 * a), one), ((-b - disc) / (2.0 * a), one)];
    }
    let mut out = vec![(one, zero)];
    if b != 0.0 {
        out.push((Complex64::new(-c / b, 0.0), one));
    }
    out
}
