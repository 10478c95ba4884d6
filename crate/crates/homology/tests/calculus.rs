use homology::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use pillowcase_core::GluingMatrix;
use proptest::prelude::*;

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

// Invariant factors from determinantal divisors: D_k = gcd of k×k minors,
// d_k = D_k / D_{k-1}.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m[0].len();
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = g.gcd(&det_i128(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn matrix_5x5() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, 5), 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_matches_determinantal_divisors(m in matrix_5x5()) {
        let im = IntMatrix::from_rows(&m);
        let s = smith_normal_form(&im);
        prop_assert_eq!(s.u.mul(&im).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.det().abs(), BigInt::from(1));
        prop_assert_eq!(s.v.det().abs(), BigInt::from(1));
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
        let nonzero: Vec<i128> = diag.iter().filter(|d| !d.is_zero()).map(|d| d.to_i128().unwrap()).collect();
        prop_assert_eq!(nonzero, determinantal_factors(&m));
    }
}

fn fiber_triple() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((2i64..12, -15i64..15), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn seifert_order_matches_formula(data in fiber_triple()) {
        let [(a1, b1), (a2, b2), (a3, b3)] = [data[0], data[1], data[2]];
        let formula = (a1 * a2 * b3 + a1 * b2 * a3 + b1 * a2 * a3).abs();
        prop_assume!(formula != 0);
        let h = seifert_h1(&data).unwrap();
        prop_assert_eq!(h.order_formula, formula);
        prop_assert_eq!(h.factors.order(), Some(BigInt::from(formula)));
    }

    #[test]
    fn two_four_four_surjects_onto_z4(b in prop::array::uniform3(-20i64..20)) {
        let data = [(2, b[0]), (4, b[1]), (4, b[2])];
        match seifert_h1(&data) {
            Ok(h) => prop_assert!(h.factors.0.iter().any(|d: &BigInt| (d % BigInt::from(4)).is_zero()), "{}", h.factors),
            Err(e) => prop_assert_eq!(e, HomologyError::PositiveBetti(1)),
        }
    }

    #[test]
    fn three_three_three_even_orders_are_multiples_of_18(b in prop::array::uniform3(-20i64..20)) {
        if let Ok(h) = seifert_h1(&[(3, b[0]), (3, b[1]), (3, b[2])]) {
            prop_assert_eq!(h.order_formula % 9, 0);
            if h.order_formula % 2 == 0 {
                prop_assert_eq!(h.order_formula % 18, 0);
            }
        }
    }
}

#[test]
fn seifert_examples() {
    let h = seifert_h1(&[(3, 1), (3, 1), (3, 1)]).unwrap();
    assert_eq!(h.order_formula, 27);
    assert_eq!(h.factors.0, vec![BigInt::from(3), BigInt::from(9)]);
}

fn valid_tuple() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (prop::sample::select(vec![2i64, 3, 5, 7, 11]), -60i64..60, -5i64..5).prop_filter_map("c coprime to p", |(p, c, k)| {
        if c == 0 || c.gcd(&p) != 1 {
            return None;
        }
        let b0 = (0..c.abs()).find(|b| (b * p - 1).rem_euclid(c.abs()) == 0)?;
        let b = b0 + k * c;
        let a = (b * p - 1) / c;
        (a * c - b * p == -1).then_some((a, b, c, p))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn standard_form_round_trips((a, b, c, p) in valid_tuple(), allow in any::<bool>()) {
        let r = standard_form_reduce(a, b, c, p, allow).unwrap();
        prop_assert_eq!(r.a * r.c - r.b * p, -1);
        prop_assert!(0 <= r.b && r.b < r.c && r.c < p);
        if allow {
            prop_assert!(2 * r.c <= p);
        }
        prop_assert_eq!(r.replay(), (a, b, c));
        for (x, y, z) in r.trajectory() {
            prop_assert_eq!(x * z - y * p, -1);
        }
        if p == 2 || (p == 3 && allow) {
            prop_assert_eq!(r.tuple(), (-1, 0, 1));
        }
        if p == 5 && allow {
            prop_assert!([(-1, 0, 1), (2, 1, 2)].contains(&r.tuple()));
        }
    }
}

#[test]
fn tuple_counts_and_brute_force() {
    for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let t = enumerate_standard_tuples(p).unwrap();
        assert_eq!(t.len() as i64, (p - 1) / 2);
        let mut brute = Vec::new();
        for c in 1..=(p - 1) / 2 {
            for b in 0..c {
                if (b * p - 1) % c == 0 {
                    brute.push(((b * p - 1) / c, b, c));
                }
            }
        }
        assert_eq!(t, brute, "p = {p}");
    }
}

fn torus_knot(p: i64, q: i64) -> KnotExteriorModel {
    // ⟨u, v | u^p v^-q⟩; meridian u^s v^r with s·q + r·p = 1
    let s = (0..p.abs()).find(|s| (s * q - 1).rem_euclid(p.abs()) == 0).unwrap();
    let r = (1 - s * q) / p;
    let rel = Word::generator_power(0, p).concat(&Word::generator_power(1, -q));
    let mu = Word::generator_power(0, s).concat(&Word::generator_power(1, r));
    let lambda = Word::generator_power(0, p).concat(&mu.pow(-p * q));
    let pres = GroupPresentation::new(vec!["u".into(), "v".into()], vec![rel], mu, lambda).unwrap();
    KnotExteriorModel::new(format!("T({p},{q})"), pres, None, true).unwrap()
}

fn klein() -> KnotExteriorModel {
    let pres = GroupPresentation::new(
        vec!["a".into(), "b".into()],
        vec![Word::new(vec![1, 2, -1, 2])],
        Word::new(vec![1, 1]),
        Word::new(vec![2]),
    )
    .unwrap();
    KnotExteriorModel::new("klein", pres, None, false).unwrap()
}

fn factors(v: &[i64]) -> InvariantFactors {
    InvariantFactors(v.iter().map(|&x| BigInt::from(x)).collect())
}

#[test]
fn knot_exterior_examples() {
    let t = torus_knot(2, 3);
    let ab = abelianization(&t.presentation);
    assert_eq!(ab.presentation.invariant_factors(), factors(&[0]));
    assert!(ab.presentation.coordinates().is_zero(&ab.longitude));
    assert_eq!(rational_longitude(&t).unwrap().class, (0, 1));
    assert_eq!(filling_homology(&t, (1, 0)).unwrap(), factors(&[]));
    assert_eq!(filling_homology(&t, (5, 1)).unwrap(), factors(&[5]));
    assert_eq!(filling_homology(&klein(), (3, 1)).unwrap(), factors(&[12]));
    let x3 = GroupPresentation::new(vec!["x".into()], vec![Word::new(vec![1, 1, 1])], Word::empty(), Word::empty()).unwrap();
    assert_eq!(abelianization(&x3).presentation.invariant_factors(), factors(&[3]));
}

#[test]
fn gluing_examples() {
    let t = torus_knot(2, 3);
    let tn = torus_knot(-2, 3);
    assert_eq!(glue_homology(&t, &t, &GluingMatrix::swap()), factors(&[]));
    assert_eq!(glue_homology(&t, &t, &GluingMatrix::new(-1, 0, 2, 1).unwrap()), factors(&[2]));
    let fiber_swap = GluingMatrix::new(-6, 1, 37, -6).unwrap();
    assert_eq!(glue_homology(&t, &tn, &fiber_swap), factors(&[37]));
    assert_eq!(glue_homology(&klein(), &t, &GluingMatrix::swap()), factors(&[2, 2]));
}

fn gluing() -> impl Strategy<Value = GluingMatrix> {
    (-6i64..=6, -6i64..=6, -6i64..=6).prop_filter_map("det −1", |(a, b, p)| {
        // solve a·c − b·p = −1 for c
        if a == 0 {
            return None;
        }
        let num = b * p - 1;
        (num % a == 0).then(|| GluingMatrix::new(a, b, p, num / a).ok()).flatten()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gluing_is_symmetric_under_inverse(g in gluing(), which in 0usize..3) {
        let models = [torus_knot(2, 3), torus_knot(-2, 3), klein()];
        let m1 = &models[which];
        let m2 = &models[(which + 1) % 3];
        let forward = glue_homology(m1, m2, &g);
        let backward = glue_homology(m2, m1, &g.inverse());
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn glue_order_is_the_longitude_pairing_for_knots(g in gluing()) {
        // for two knots in S³, |H1| = |det[λ1·G; λ2]| = |p|
        let t = torus_knot(2, 3);
        let h = glue_homology(&t, &t, &g);
        match g.p() {
            0 => prop_assert_eq!(h.free_rank(), 1),
            p => prop_assert_eq!(h.order(), Some(BigInt::from(p.abs()))),
        }
    }
}

#[test]
fn classification_examples() {
    let t = torus_knot(2, 3);
    let r = classify_gluing(&t, &t, &GluingMatrix::swap(), 2).unwrap();
    assert_eq!(r.case, GluingCase::DualLongitudes);

    let r = classify_gluing(&t, &t, &GluingMatrix::new(-1, 0, 2, 1).unwrap(), 2).unwrap();
    assert_eq!(r.case, GluingCase::StandardForm);
    assert_eq!(r.standard_form.unwrap().tuple(), (-1, 0, 1));

    let r = classify_gluing(&klein(), &t, &GluingMatrix::swap(), 2).unwrap();
    assert_eq!(r.case, GluingCase::Essential);
    let e = r.essential.unwrap();
    assert_eq!((e.essential_side, e.order), (1, 2));
    assert_eq!(e.essential_of_other.free.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2]);
    assert!(e.verified, "{e:?}");

    let r = classify_gluing(&t, &klein(), &GluingMatrix::swap(), 2).unwrap();
    assert_eq!(r.essential.unwrap().essential_side, 2);

    let fiber_swap = GluingMatrix::new(-6, 1, 37, -6).unwrap();
    let r = classify_gluing(&t, &torus_knot(-2, 3), &fiber_swap, 37).unwrap();
    assert_eq!(r.case, GluingCase::StandardForm);
    let sf = r.standard_form.unwrap();
    assert_eq!(sf.a * sf.c - sf.b * 37, -1);
    assert!(0 <= sf.b && sf.b < sf.c && sf.c < 37);
}

#[test]
fn classification_rejects_wrong_prime() {
    let t = torus_knot(2, 3);
    let g = GluingMatrix::new(-1, 0, 2, 1).unwrap();
    assert!(matches!(classify_gluing(&t, &t, &g, 3), Err(HomologyError::NotPTorsion(_, 3))));
    assert!(matches!(classify_gluing(&t, &t, &g, 4), Err(HomologyError::NotPrime(4))));
}
