mod common;

use common::jacobian_smooth;
use dioph_core::double_eq::{classify, fermat_coefficient, fermat_step, solve_case_i};
use dioph_core::local::{
    candidate_primes, conic_soluble, hilbert_symbol, padic_insoluble_system, ConicSolubility, DiagConic, PadicVerdict,
    Place,
};
use dioph_core::param::{ii20_inverse, ii20_param, ii31_inverse, ii31_param, ii31_ps, iii17_sigma, iv18_section};
use dioph_core::surface::FibreValue;
use dioph_core::{DoubleEquation, Problem, Rat, RatPoint, SurfaceModel, UniPoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat(h: i64) -> impl Strategy<Value = Rat> {
    (-h..=h, 1..=h).prop_map(|(n, d)| Rat::frac(n, d))
}

fn nonzero_rat(h: i64) -> impl Strategy<Value = Rat> {
    rat(h).prop_filter("nonzero", |r| !r.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_laws(a in rat(1000), b in rat(1000), c in rat(1000)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap() * &b, a.clone());
        }
        prop_assert_eq!(a.square().sqrt(), Some(a.abs()));
    }

    #[test]
    fn display_parse_round_trip(a in rat(1_000_000)) {
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a);
    }

    #[test]
    fn planted_quadratic_roots(lead in nonzero_rat(100), r1 in rat(100), r2 in rat(100)) {
        let f = UniPoly::quadratic(lead.clone(), -(&lead * (&r1 + &r2)), &lead * &r1 * &r2);
        let roots = f.quad_roots().unwrap();
        prop_assert!(roots.contains(&r1) && roots.contains(&r2));
        for r in &roots {
            prop_assert!(f.eval(r).is_zero());
        }
    }

    #[test]
    fn ii20_engine(lambda in rat(1000), mu in rat(1000)) {
        if let Ok(p) = ii20_param(&lambda, &mu) {
            let model = SurfaceModel::new(Problem::II20);
            prop_assert!(model.membership(&p).unwrap());
            prop_assert_eq!(ii20_inverse(&p).unwrap(), (lambda.clone(), mu));
            prop_assert_eq!(model.fibration_value(&p).unwrap(), FibreValue::Single(lambda));
        }
    }

    #[test]
    fn ii31_engine(lambda in nonzero_rat(1000), a in nonzero_rat(1000)) {
        let p = ii31_param(&lambda, &a).unwrap();
        prop_assert!(SurfaceModel::new(Problem::II31).membership(&p).unwrap());
        let (l, b) = ii31_inverse(&p).unwrap();
        prop_assert_eq!(l, lambda);
        // a and −1/(4a) give the same surface point
        let alt = -(Rat::from(4) * &a).recip().unwrap();
        prop_assert!(b == a || b == alt);
    }

    #[test]
    fn product_sum_witnesses(a in nonzero_rat(1000), r in nonzero_rat(1000)) {
        let ps = ii31_ps(&a, &r).unwrap();
        prop_assert_eq!(ps.sqrt_sum.square(), ps.sum.clone());
        prop_assert_eq!(ps.sqrt_p_plus_s.square(), &ps.product + &ps.sum);
        prop_assert_eq!(ps.sqrt_p_minus_s.square(), &ps.product - &ps.sum);
    }

    #[test]
    fn hilbert_symbol_laws(a in 1i64..100_000, b in 1i64..100_000, c in 1i64..100_000, sa: bool, sb: bool) {
        let a = Rat::from(if sa { -a } else { a });
        let b = Rat::from(if sb { -b } else { b });
        let c = Rat::from(c);
        for place in [Place::Infinity, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)] {
            let ab = hilbert_symbol(&a, &b, place).unwrap();
            prop_assert_eq!(ab, hilbert_symbol(&b, &a, place).unwrap());
            prop_assert_eq!(hilbert_symbol(&a, &(-&a), place).unwrap(), 1);
            let ac = hilbert_symbol(&a, &c, place).unwrap();
            prop_assert_eq!(ab * ac, hilbert_symbol(&a, &(&b * &c), place).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witness_completion_is_sound(problem in prop::sample::select(Problem::ALL.to_vec()), vals in prop::collection::vec(rat(20), 5)) {
        let model = SurfaceModel::new(problem);
        let mut partial = RatPoint::new();
        let witnesses: Vec<&str> = model.witnesses.iter().map(|w| w.var.as_str()).collect();
        for (v, x) in model.variables.iter().filter(|v| !witnesses.contains(&v.as_str())).zip(vals) {
            partial.insert(v, x);
        }
        if let Some(full) = model.witness_solve(&partial).unwrap() {
            prop_assert!(model.membership(&full).unwrap());
        }
    }

    #[test]
    fn witness_completion_recovers_engine_points(t in nonzero_rat(50)) {
        for (problem, point) in [(Problem::III17, iii17_sigma(&t)), (Problem::IV18, iv18_section(&t))] {
            let Ok(point) = point else { continue };
            let model = SurfaceModel::new(problem);
            let mut partial = RatPoint::new();
            for (k, v) in point.iter() {
                if !model.witnesses.iter().any(|w| &w.var == k) {
                    partial.insert(k, v.clone());
                }
            }
            let full = model.witness_solve(&partial).unwrap().expect("engine point completes");
            prop_assert!(model.membership(&full).unwrap());
        }
    }

    #[test]
    fn classifier_matches_jacobian(c in prop::array::uniform6(-5i64..=5)) {
        if let Ok(e) = DoubleEquation::from_ints(c) {
            prop_assert_eq!(classify(&e).smooth, jacobian_smooth(&e));
        }
    }
}

#[test]
fn jacobian_oracle_sees_both_outcomes() {
    let smooth = DoubleEquation::from_ints([4, 4, -1, 4, 3, -1]).unwrap();
    let shared_root = DoubleEquation::from_ints([1, -1, 0, 1, -2, 0]).unwrap();
    let double_root = DoubleEquation::from_ints([1, 2, 1, 1, 0, 3]).unwrap();
    assert!(jacobian_smooth(&smooth));
    assert!(!jacobian_smooth(&shared_root));
    assert!(!jacobian_smooth(&double_root));
}

fn iii17_fibre(t: &Rat) -> DoubleEquation {
    let t2 = t.square();
    DoubleEquation::new([t2.clone(), t2.clone(), Rat::from(-1), t2.clone(), &t2 - Rat::one(), Rat::from(-1)]).unwrap()
}

#[test]
fn section_agrees_with_case_i_solver() {
    let mut checked = 0;
    for n in 1..=20i64 {
        for d in 1..=6i64 {
            let t = Rat::frac(n, d);
            if checked == 50 || t.denom() != &BigInt::from(d) {
                continue;
            }
            let Ok(sigma) = iii17_sigma(&t) else { continue };
            let e = iii17_fibre(&t);
            let p = solve_case_i(&e, &classify(&e)).unwrap();
            assert_eq!(&p.x().unwrap(), sigma.get("x").unwrap(), "t = {t}");
            assert!(e.contains(&p));
            checked += 1;
        }
    }
    assert_eq!(checked, 50);
}

#[test]
fn padic_search_respects_soluble_fibres() {
    for t in [2i64, 3, 5] {
        let e = iii17_fibre(&Rat::from(t));
        for prime in candidate_primes(&e) {
            assert_eq!(padic_insoluble_system(&e, prime, 4).unwrap(), PadicVerdict::Unknown, "t = {t}, p = {prime}");
        }
    }
}

#[test]
fn fermat_iterates_stay_distinct() {
    let mut rng = common::rng(20);
    for _ in 0..20 {
        let t = common::rand_nonzero_rat(&mut rng, 12);
        if iii17_sigma(&t).is_err() {
            continue;
        }
        let e = iii17_fibre(&t);
        let mut p = e.points_at_infinity()[0].clone();
        let mut seen = vec![p.clone()];
        for _ in 0..3 {
            p = fermat_step(&e, &p).unwrap();
            assert!(e.contains(&p));
            assert!(!seen.contains(&p), "t = {t}: repeated {p}");
            seen.push(p.clone());
        }
    }
}

#[test]
fn fermat_coefficients_follow_recurrence() {
    let mut c = BigInt::from(0);
    for n in 0..=60 {
        assert_eq!(fermat_coefficient(n), c);
        c = BigInt::from(1) - BigInt::from(3) * c;
    }
}

fn small_solution(a: i64, b: i64, c: i64, bound: i64) -> bool {
    (-bound..=bound).any(|x| {
        (-bound..=bound).any(|y| (0..=bound).any(|z| (x, y, z) != (0, 0, 0) && a * x * x + b * y * y + c * z * z == 0))
    })
}

#[test]
fn conic_verdicts_match_search() {
    for a in [-7i64, -3, -2, -1, 1, 2, 3, 5] {
        for b in [-5i64, -2, -1, 1, 3, 6] {
            for c in [-11i64, -6, -1, 1, 2, 7] {
                let conic = DiagConic::new(a, b, c).unwrap();
                match conic_soluble(&conic).unwrap() {
                    ConicSolubility::Soluble { witness } => {
                        assert!(witness.iter().any(|w| w != &BigInt::from(0)));
                        assert_eq!(conic.eval_original(&witness), BigInt::from(0), "({a},{b},{c})");
                    }
                    ConicSolubility::Insoluble { obstructions } => {
                        assert!(!obstructions.is_empty());
                        assert!(!small_solution(a, b, c, 25), "({a},{b},{c}) has a small point");
                    }
                }
            }
        }
    }
}
