use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ecsum::curve::{Curve, Point};
use ecsum::det::{det_bareiss, det_laplace};
use ecsum::field::{FieldDescriptor, FieldValue};
use ecsum::identity::{SparsePolynomial, Var};
use ecsum::multisum::{iterated_sum, multisum};
use ecsum::sum3::{sum3_symmetric, triple_coeffs};

fn descriptors() -> Vec<FieldDescriptor> {
    vec![
        FieldDescriptor::Rationals,
        FieldDescriptor::prime(5).unwrap(),
        FieldDescriptor::prime(10007).unwrap(),
        FieldDescriptor::prime((1 << 61) - 1).unwrap(),
    ]
}

fn value(f: FieldDescriptor, (n, d): (i64, i64)) -> FieldValue {
    let q = BigRational::new(BigInt::from(n), BigInt::from(d));
    f.from_rational(&q).unwrap_or_else(|_| f.from_i64(n))
}

fn frac() -> impl Strategy<Value = (i64, i64)> {
    (-1_000_000i64..1_000_000, 1i64..1000)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn f10007() -> FieldDescriptor {
    FieldDescriptor::prime(10007).unwrap()
}

fn random_points(curve: &Curve, n: usize, seed: u64) -> Vec<Point> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| curve.random_point_signed(&mut r).unwrap())
        .collect()
}

/// Random polynomial in x1, x2, y1, y2, a, b.
fn poly() -> impl Strategy<Value = SparsePolynomial> {
    let term = (-20i64..20, prop::collection::vec(0u32..4, 6));
    prop::collection::vec(term, 1..6).prop_map(|terms| {
        let vars = [Var::X(1), Var::X(2), Var::Y(1), Var::Y(2), Var::A, Var::B];
        terms
            .into_iter()
            .fold(SparsePolynomial::zero(2), |acc, (c, exps)| {
                let mono = vars
                    .iter()
                    .zip(exps)
                    .fold(SparsePolynomial::from_i64(2, c), |m, (&v, e)| {
                        &m * &SparsePolynomial::var(2, v).pow(e)
                    });
                &acc + &mono
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn field_axioms(k in 0usize..4, a in frac(), b in frac(), c in frac()) {
        let f = descriptors()[k];
        let (a, b, c) = (value(f, a), value(f, b), value(f, c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &f.zero(), a.clone());
        prop_assert_eq!(&a * &f.one(), a.clone());
        prop_assert!((&a + &-&a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent_and_reduced(p in poly()) {
        let nf = p.curve_normal_form();
        prop_assert!(nf.is_curve_reduced());
        prop_assert_eq!(nf.curve_normal_form(), nf.clone());
    }

    #[test]
    fn normal_form_ignores_rewrite_order(p in poly()) {
        let exhaust = |mut q: SparsePolynomial, order: [usize; 2]| {
            while !q.is_curve_reduced() {
                for i in order {
                    q = q.rewrite_once(i);
                }
            }
            q
        };
        let nf = p.curve_normal_form();
        prop_assert_eq!(exhaust(p.clone(), [1, 2]), nf.clone());
        prop_assert_eq!(exhaust(p, [2, 1]), nf);
    }

    #[test]
    fn normal_form_preserves_values_on_the_curve(p in poly(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let curve = Curve::random(f10007(), &mut r);
        let pts = random_points(&curve, 2, seed ^ 1);
        let xs: Vec<_> = pts.iter().map(|q| q.x().unwrap().clone()).collect();
        let ys: Vec<_> = pts.iter().map(|q| q.y().unwrap().clone()).collect();
        let before = p.eval(&xs, &ys, curve.a(), curve.b()).unwrap();
        let after = p.curve_normal_form().eval(&xs, &ys, curve.a(), curve.b()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn exact_division_recovers_factors(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
    }

    #[test]
    fn sum3_is_permutation_invariant(seed in any::<u64>()) {
        let curve = Curve::random(f10007(), &mut rng(seed));
        let p = random_points(&curve, 3, seed);
        if let Ok(s) = sum3_symmetric(&curve, &p[0], &p[1], &p[2]) {
            prop_assert_eq!(&s, &iterated_sum(&curve, &p).unwrap());
            for (i, j, k) in [(1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)] {
                if let Ok(t) = sum3_symmetric(&curve, &p[i], &p[j], &p[k]) {
                    prop_assert_eq!(&t, &s);
                }
            }
        }
    }

    #[test]
    fn coefficients_alternate(xy in prop::collection::vec(frac(), 6), k in 0usize..4) {
        let f = descriptors()[k];
        let pt = |i: usize| Point::new(value(f, xy[2 * i]), value(f, xy[2 * i + 1])).unwrap();
        let (p1, p2, p3) = (pt(0), pt(1), pt(2));
        let t = triple_coeffs(&p1, &p2, &p3).unwrap();
        for s in [triple_coeffs(&p2, &p1, &p3).unwrap(), triple_coeffs(&p1, &p3, &p2).unwrap(), triple_coeffs(&p3, &p2, &p1).unwrap()] {
            prop_assert_eq!(&s.v, &-&t.v);
            prop_assert_eq!(&s.c0, &-&t.c0);
            prop_assert_eq!(&s.c1, &-&t.c1);
            prop_assert_eq!(&s.c2, &-&t.c2);
        }
    }

    // needs no curve relation, so any six values will do
    #[test]
    fn eq2_on_arbitrary_triples(xy in prop::collection::vec(frac(), 6), k in 0usize..4) {
        let f = descriptors()[k];
        let v: Vec<FieldValue> = xy.into_iter().map(|q| value(f, q)).collect();
        let pt = |i: usize| Point::new(v[2 * i].clone(), v[2 * i + 1].clone()).unwrap();
        let t = triple_coeffs(&pt(0), &pt(1), &pt(2)).unwrap();
        let (x1, y1, x2, y2, x3) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
        let lhs = &t.c1 + &(&(x1 + x2) * &t.c2);
        let rhs = (x1 - x3) * (x3 - x2) * (y1 - y2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_is_alternating_and_multilinear(entries in prop::collection::vec(-50i64..50, 25), k in 1i64..20) {
        let f = FieldDescriptor::Rationals;
        let m: Vec<Vec<FieldValue>> = entries.chunks(5).map(|r| r.iter().map(|&e| f.from_i64(e)).collect()).collect();
        let d = det_bareiss(&m).unwrap();
        let mut swapped = m.clone();
        swapped.swap(0, 3);
        prop_assert_eq!(det_bareiss(&swapped).unwrap(), -&d);
        let mut scaled = m.clone();
        scaled[2] = scaled[2].iter().map(|e| e * &f.from_i64(k)).collect();
        prop_assert_eq!(det_bareiss(&scaled).unwrap(), &d * &f.from_i64(k));
        let small: Vec<Vec<FieldValue>> = m[..4].iter().map(|r| r[..4].to_vec()).collect();
        prop_assert_eq!(det_bareiss(&small).unwrap(), det_laplace(&small).unwrap());
    }

    #[test]
    fn multisum_is_permutation_invariant(seed in any::<u64>(), n in 2usize..7) {
        let curve = Curve::random(f10007(), &mut rng(seed));
        let mut p = random_points(&curve, n, seed);
        if let Ok(s) = multisum(&curve, &p) {
            p.reverse();
            p.rotate_left(1);
            if let Ok(t) = multisum(&curve, &p) {
                prop_assert_eq!(t, s);
            }
        }
    }

    #[test]
    fn group_law(seed in any::<u64>()) {
        let curve = Curve::random(f10007(), &mut rng(seed));
        let p = random_points(&curve, 3, seed);
        let add = |a: &Point, b: &Point| curve.add(a, b).unwrap();
        prop_assert_eq!(add(&add(&p[0], &p[1]), &p[2]), add(&p[0], &add(&p[1], &p[2])));
        prop_assert_eq!(add(&p[0], &p[1]), add(&p[1], &p[0]));
        prop_assert!(add(&p[0], &p[0].negate()).is_infinity());
        prop_assert_eq!(curve.scalar_mul(3, &p[0]).unwrap(), add(&add(&p[0], &p[0]), &p[0]));
    }
}
