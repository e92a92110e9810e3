use iet_core::experiments::{
    geodesic_compactness_trace, line_scan, mahler_curve, DiagnosticConfig, MeasureSampler, SamplerKind, ScanConfig,
};
use iet_core::pairing::{
    cone_contains, heights, is_positive_pair, null_space, q_matrix, universal_direction, PositivityConfig,
    PositivityStatus,
};
use iet_core::scalar::{rat, rat_vec};
use iet_core::{Iet, Matrix2, Permutation, QSqrt5, Rational, Scalar, TranslationSurface};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_iet(seed: u64, dmax: usize) -> Iet<Rational> {
    let mut r = rng(seed);
    let d = r.gen_range(2..=dmax);
    let p = Permutation::random_irreducible(d, &mut r);
    let a = (0..d).map(|_| rat(r.gen_range(1..=30), r.gen_range(1..=7))).collect();
    Iet::new(p, a).unwrap()
}

fn random_suspension(r: &mut ChaCha8Rng, dmax: usize) -> (Permutation, Vec<Rational>, Vec<Rational>) {
    loop {
        let d = r.gen_range(2..=dmax);
        let p = Permutation::random_irreducible(d, r);
        let b0 = universal_direction(&p).unwrap();
        let b: Vec<Rational> = b0.iter().map(|&v| rat(3 * v + r.gen_range(-1..=1), 1)).collect();
        let a: Vec<Rational> = (0..d).map(|_| rat(r.gen_range(1..=20), r.gen_range(1..=5))).collect();
        if cone_contains(&p, &b) && TranslationSurface::suspend(&p, &a, &b).is_ok() {
            return (p, a, b);
        }
    }
}

fn cone_vector(p: &Permutation, r: &mut ChaCha8Rng) -> Vec<i64> {
    let b0 = universal_direction(p).unwrap();
    loop {
        let b: Vec<i64> = b0.iter().map(|&v| 2 * v + r.gen_range(-2..=2)).collect();
        if cone_contains(p, &rat_vec(&b)) {
            return b;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_undoes_evaluation(seed in any::<u64>(), ks in prop::collection::vec(0u32..997, 20)) {
        let t = random_iet(seed, 6);
        for k in ks {
            let x = t.total().clone() * rat(k as i64, 997);
            let y = t.evaluate(&x).unwrap();
            prop_assert_eq!(t.evaluate_inverse(&y).unwrap(), x.clone());
            prop_assert_eq!(t.evaluate(&t.evaluate_inverse(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn subintervals_keep_their_length(seed in any::<u64>(), u in 0u32..100, w in 1u32..100) {
        let t = random_iet(seed, 6);
        for i in 1..=t.d() {
            let (lo, len) = (t.x()[i - 1].clone(), t.lengths()[i - 1].clone());
            let (s, e) = (u.min(w), u.max(w) + 1);
            let p = lo.clone() + len.clone() * rat(s as i64, 101);
            let q = lo + len * rat(e as i64, 101);
            let image = t.evaluate(&q).unwrap() - t.evaluate(&p).unwrap();
            prop_assert_eq!(image, q - p);
        }
    }

    #[test]
    fn epsilon_is_nonincreasing(seed in any::<u64>()) {
        let t = random_iet(seed, 6);
        let schedule: Vec<usize> = (0..=60).collect();
        let trace = t.epsilon_trace(&schedule);
        for w in trace.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn epsilon_scales_with_the_lengths(seed in any::<u64>(), num in 1i64..20, den in 1i64..20, n in 0usize..50) {
        let t = random_iet(seed, 6);
        let c = rat(num, den);
        let scaled: Vec<Rational> = t.lengths().iter().map(|v| v.clone() * c.clone()).collect();
        let ts = Iet::new(t.perm().clone(), scaled).unwrap();
        prop_assert_eq!(ts.epsilon_n(n), t.epsilon_n(n) * c);
    }

    #[test]
    fn return_times_are_the_form_on_basis_vectors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..=8);
        let p = Permutation::random_irreducible(d, &mut r);
        let b: Vec<Rational> = (0..d).map(|_| rat(r.gen_range(-10..=10), r.gen_range(1..=4))).collect();
        let q = q_matrix(&p);
        let h = heights(&p, &b).unwrap();
        for i in 0..d {
            let mut e = vec![rat(0, 1); d];
            e[i] = rat(1, 1);
            prop_assert_eq!(h.l[i].clone(), q.eval(&e, &b).unwrap());
        }
    }

    #[test]
    fn cone_is_convex(seed in any::<u64>(), alpha in 1i64..10, beta in 1i64..10) {
        let mut r = rng(seed);
        let p = Permutation::random_irreducible(r.gen_range(2..=7), &mut r);
        let b1 = cone_vector(&p, &mut r);
        let b2 = cone_vector(&p, &mut r);
        let mix: Vec<Rational> = b1.iter().zip(&b2).map(|(x, y)| rat(alpha * x, 3) + rat(beta * y, 7)).collect();
        prop_assert!(cone_contains(&p, &mix));
    }

    #[test]
    fn null_directions_pair_to_zero_and_avoid_the_cone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = Permutation::random_irreducible(r.gen_range(2..=8), &mut r);
        let q = q_matrix(&p);
        for v in null_space(&p).unwrap() {
            let v = rat_vec(&v);
            prop_assert!(q.apply(&v).iter().all(|x| *x == rat(0, 1)));
            let neg: Vec<Rational> = v.iter().map(|x| -x.clone()).collect();
            prop_assert!(!cone_contains(&p, &v));
            prop_assert!(!cone_contains(&p, &neg));
        }
    }

    #[test]
    fn singularities_do_not_depend_on_heights(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(2..=8);
        let p = Permutation::random_irreducible(d, &mut r);
        let lengths: Vec<i64> = (0..d).map(|_| r.gen_range(1..=9)).collect();
        let base = p.singularity_data().unwrap();
        let other = p.singularity_data_with(&lengths, &cone_vector(&p, &mut r));
        prop_assume!(other.is_ok());
        let other = other.unwrap();
        prop_assert_eq!(other.k, base.k);
        prop_assert_eq!(other.orders, base.orders);
        prop_assert_eq!(other.vertex_cycles, base.vertex_cycles);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unimodular_matrices_preserve_area(seed in any::<u64>(), shears in prop::collection::vec(-3i64..=3, 1..5)) {
        let mut r = rng(seed);
        let (p, a, b) = random_suspension(&mut r, 6);
        let q = TranslationSurface::suspend(&p, &a, &b).unwrap();
        let mut g = Matrix2::identity();
        for (k, s) in shears.iter().enumerate() {
            let step = if k % 2 == 0 {
                Matrix2::new(rat(1, 1), rat(*s, 1), rat(0, 1), rat(1, 1))
            } else {
                Matrix2::new(rat(1, 1), rat(0, 1), rat(*s, 1), rat(1, 1))
            };
            g = g.mul(&step);
        }
        prop_assert_eq!(g.det(), rat(1, 1));
        let moved = q.apply_matrix(&g).unwrap();
        prop_assert_eq!(moved.area(), q.area());
        prop_assert_eq!(q.area(), q_matrix(&p).eval(&a, &b).unwrap());
    }

    #[test]
    fn first_return_recovers_the_exchange(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, a, b) = random_suspension(&mut r, 7);
        let t = TranslationSurface::suspend(&p, &a, &b).unwrap().vertical_return_map().unwrap();
        prop_assert_eq!(t.perm(), &p);
        prop_assert_eq!(t.lengths(), &a[..]);
    }

    #[test]
    fn geodesic_flow_scales_phi_within_its_stretch(seed in any::<u64>(), t in -2.0f64..2.0) {
        let mut r = rng(seed);
        let (p, a, b) = random_suspension(&mut r, 5);
        let q = TranslationSurface::suspend(&p, &a, &b).unwrap().to_f64();
        let phi = q.phi();
        let moved = q.apply_matrix(&Matrix2::geodesic(t)).unwrap().phi();
        let s = (t / 2.0).abs().exp();
        prop_assert!(moved <= s * phi * (1.0 + 1e-12));
        prop_assert!(moved >= phi / s * (1.0 - 1e-12));
    }

    #[test]
    fn mahler_derivative_matches_finite_differences(d in 2usize..=6, s in 0.2f64..2.0) {
        let h = 1e-6;
        let (_, beta_prime) = mahler_curve::<f64>(d, &s).unwrap();
        let (up, _) = mahler_curve::<f64>(d, &(s + h)).unwrap();
        let (down, _) = mahler_curve::<f64>(d, &(s - h)).unwrap();
        for i in 0..d {
            let fd = (up[i] - down[i]) / (2.0 * h);
            prop_assert!((fd - beta_prime[i]).abs() <= 1e-8, "i={} fd={} exact={}", i, fd, beta_prime[i]);
        }
    }

    #[test]
    fn periodic_connection_verdicts_match_an_orbit_walk(p in 1i64..30, q in 1i64..30, b1 in 1i64..6, b2 in -5i64..0) {
        let m_max = 100;
        let sigma = Permutation::new(vec![2, 1]).unwrap();
        let cfg = PositivityConfig { seeds: 2, orbit_len: 1000, m_max, margin: None, rng_seed: 1 };
        let verdict = is_positive_pair(&sigma, &rat_vec(&[p, q]), &rat_vec(&[b1, b2]), &cfg).unwrap();

        // rotation on [0, p+q) by q, values of L on the two intervals, heights y_0 = 0 and y_1 = b1
        let step = |z: i64| if z < p { z + q } else { z - p };
        let l = |z: i64| if z < p { -b2 } else { b1 };
        let (starts, y) = ([0, p], [0, b1]);
        let mut violated = false;
        for i in 0..2 {
            let (mut z, mut sum) = (starts[i], 0);
            for m in 1..=m_max {
                sum += l(z);
                z = step(z);
                for j in 0..2 {
                    let trivial = i == 1 && j == 0 && m == 1;
                    if z == starts[j] && !trivial && sum <= y[i] - y[j] {
                        violated = true;
                    }
                }
            }
        }
        prop_assert_eq!(verdict.status == PositivityStatus::NotPositive, violated);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn proximity_stays_below_the_systole_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, _, b) = random_suspension(&mut r, 5);
        let a: Vec<f64> = (0..p.d()).map(|_| r.gen_range(0.5..2.0)).collect();
        let b: Vec<f64> = b.iter().map(Scalar::to_f64).collect();
        let grid: Vec<f64> = (0..=8).map(|k| k as f64 * 0.5).collect();
        let tr = geodesic_compactness_trace(&p, &a, &b, &grid).unwrap();
        for pt in &tr.record.phi_trace {
            prop_assert!(pt.holds, "t={} n·ε_n={} bound={}", pt.t, pt.n_eps_n, pt.bound);
        }
    }

    #[test]
    fn line_scans_ignore_reparametrization(seed in any::<u64>(), c in prop::sample::select(vec![0.25, 0.5, 2.0, 4.0])) {
        let mut r = rng(seed);
        let p = Permutation::reversal(4).unwrap();
        let a: Vec<f64> = (0..4).map(|_| r.gen_range(1.0..2.0)).collect();
        let b: Vec<f64> = universal_direction(&p).unwrap().iter().map(|&v| v as f64).collect();
        let cfg = |w: (f64, f64)| ScanConfig {
            samples: 6,
            window: w,
            diagnostic: DiagnosticConfig::with_cap(10),
            positivity: PositivityConfig { seeds: 4, orbit_len: 2000, m_max: 200, margin: None, rng_seed: 0 },
        };
        let sampler = MeasureSampler { kind: SamplerKind::Lebesgue, seed };
        let base = line_scan(&p, &a, &b, &sampler, &cfg((-0.1, 0.1))).unwrap();
        let cb: Vec<f64> = b.iter().map(|v| v * c).collect();
        let moved = line_scan(&p, &a, &cb, &sampler, &cfg((-0.1 / c, 0.1 / c))).unwrap();
        let classes = |s: &iet_core::experiments::Scan| s.records.iter().map(|r| r.classification).collect::<Vec<_>>();
        prop_assert_eq!(classes(&base), classes(&moved));
    }
}

#[test]
fn universal_direction_lies_in_the_cone() {
    for d in 2..=7 {
        for p in Permutation::all_irreducible(d) {
            let b = rat_vec(&universal_direction(&p).unwrap());
            assert!(cone_contains(&p, &b), "{:?}", p.images());
        }
    }
}

#[test]
fn golden_rotation_has_only_the_corner_connection() {
    let p = Permutation::new(vec![2, 1]).unwrap();
    let t = Iet::new(p, vec![QSqrt5::one(), QSqrt5::phi()]).unwrap();
    let found = t.detect_connections(1000);
    assert!(found.iter().all(|c| c.degenerate));
}
