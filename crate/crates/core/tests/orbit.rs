use orbitcode::fieldmap::ExtensionContext;
use orbitcode::gfq::FieldSpec;
use orbitcode::matspace::{grassmannian, intersection_dim, subspace_distance, Mat, Subspace};
use orbitcode::orbitcode::{
    analyze, build_spread_start, check_sidon_condition, companion_generator, conjugate_code,
    export_code, find_sidon_start, generate_orbit, min_distance_brute, min_distance_orbit,
    parse_code_export, AnalysisMode,
};
use orbitcode::polyring::{list_irreducibles, Poly};
use orbitcode::{AnalysisReport, OrbitCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn z(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn contexts(f: &FieldSpec, n: usize) -> Vec<ExtensionContext> {
    list_irreducibles(f, n)
        .unwrap()
        .iter()
        .filter(|p| p.coeff(0) != 0)
        .map(|p| ExtensionContext::new(p).unwrap())
        .collect()
}

/// Cardinality and (if any) minimum distance by enumeration.
fn oracle(code: &OrbitCode) -> (u64, Option<usize>) {
    let distance = (code.cardinality() > 1).then(|| min_distance_brute(code).unwrap());
    (code.cardinality() as u64, distance)
}

fn check_prediction(u: &Subspace, ctx: &ExtensionContext) -> (AnalysisReport, OrbitCode) {
    let mut report = analyze(u, ctx).unwrap();
    let code = generate_orbit(u, &ctx.companion()).unwrap();
    let (card, dist) = oracle(&code);
    assert_eq!(
        (report.predicted_cardinality, report.predicted_distance),
        (card, dist),
        "{} start={:?}",
        ctx.modulus(),
        u
    );
    assert!(report.verify_with(&code).unwrap());
    (report, code)
}

#[test]
fn prediction_matches_oracle_on_every_small_grassmannian() {
    for (q, n) in [(2u64, 3usize), (2, 4), (2, 5), (3, 3), (3, 4), (5, 3)] {
        let f = z(q);
        for ctx in contexts(&f, n) {
            for k in 1..n {
                for u in grassmannian(&f, k, n).unwrap() {
                    let (report, _) = check_prediction(&u, &ctx);
                    let mode = if ctx.is_primitive() {
                        AnalysisMode::Primitive
                    } else {
                        AnalysisMode::NonPrimitive
                    };
                    assert_eq!(report.mode, mode);
                }
            }
        }
    }
}

#[test]
fn nonprimitive_prediction_matches_oracle_in_dimension_six() {
    let f = z(2);
    let nonprimitive: Vec<_> = contexts(&f, 6)
        .into_iter()
        .filter(|c| !c.is_primitive())
        .collect();
    // x^6+x^3+1 has order 9; the others have order 21.
    let orders: Vec<u64> = nonprimitive.iter().map(|c| c.order()).collect();
    assert!(orders.contains(&9) && orders.contains(&21));
    for ctx in &nonprimitive {
        for k in 1..=3 {
            for u in grassmannian(&f, k, 6).unwrap() {
                check_prediction(&u, ctx);
            }
        }
    }
}

#[test]
fn primitive_prediction_matches_oracle_in_dimension_six() {
    let f = z(2);
    let ctx = ExtensionContext::new(&Poly::parse(&f, "x^6+x+1").unwrap()).unwrap();
    for k in 1..=3 {
        for u in grassmannian(&f, k, 6).unwrap().into_iter().step_by(7) {
            check_prediction(&u, &ctx);
        }
    }
}

#[test]
fn orbits_meeting_one_alpha_orbit_twice() {
    // Subspaces with two nonzero vectors in one α-orbit and one in another,
    // under a non-primitive generator: the merged multiset decides.
    let f = z(2);
    let mut found = 0;
    for ctx in contexts(&f, 6).into_iter().filter(|c| !c.is_primitive()) {
        for u in grassmannian(&f, 2, 6).unwrap() {
            let report = analyze(&u, &ctx).unwrap();
            let mut pattern: Vec<u64> = report
                .orbit_members
                .iter()
                .copied()
                .filter(|&m| m > 0)
                .collect();
            pattern.sort_unstable();
            if pattern == [1, 2] {
                found += 1;
                check_prediction(&u, &ctx);
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn base_point_distance_equals_pairwise_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (q, n) in [(2u64, 6usize), (3, 4), (2, 5)] {
        let f = z(q);
        let all: Vec<_> = (1..n)
            .flat_map(|k| grassmannian(&f, k, n).unwrap())
            .collect();
        for ctx in contexts(&f, n).into_iter().take(4) {
            for _ in 0..20 {
                let u = &all[rng.gen_range(0..all.len())];
                let code = generate_orbit(u, &ctx.companion()).unwrap();
                if code.cardinality() > 1 {
                    assert_eq!(
                        min_distance_orbit(&code).unwrap(),
                        min_distance_brute(&code).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn orbit_size_divides_generator_order() {
    let f = z(2);
    for ctx in contexts(&f, 4).into_iter().chain(contexts(&f, 6)) {
        for u in grassmannian(&f, 2, ctx.degree())
            .unwrap()
            .into_iter()
            .step_by(5)
        {
            let code = generate_orbit(&u, &ctx.companion()).unwrap();
            assert_eq!(code.generator_order(), ctx.order());
            assert_eq!(code.generator_order() % code.cardinality() as u64, 0);
            assert!(code.codewords().windows(2).all(|w| w[0] < w[1]));
            assert!(code.codewords().contains(&u));
        }
    }
}

fn first_primitive(f: &FieldSpec, n: usize) -> Poly {
    contexts(f, n)
        .into_iter()
        .find(|c| c.is_primitive())
        .unwrap()
        .modulus()
        .clone()
}

#[test]
fn spreads_are_optimal() {
    for (k, n, q) in [
        (2usize, 4usize, 2u64),
        (2, 6, 2),
        (3, 6, 2),
        (1, 3, 3),
        (2, 4, 3),
    ] {
        let f = z(q);
        let p = first_primitive(&f, n);
        let ctx = ExtensionContext::new(&p).unwrap();
        let u = build_spread_start(k, n, &p).unwrap();
        let code = generate_orbit(&u, &ctx.companion()).unwrap();
        let size = (q.pow(n as u32) - 1) / (q.pow(k as u32) - 1);
        assert_eq!(code.cardinality() as u64, size, "k={} n={} q={}", k, n, q);
        if code.cardinality() > 1 {
            assert_eq!(min_distance_brute(&code).unwrap(), 2 * k);
        }
        // Pairwise trivial intersections and a partition of the nonzero vectors.
        let mut covered = std::collections::BTreeSet::new();
        for (i, a) in code.codewords().iter().enumerate() {
            for b in &code.codewords()[i + 1..] {
                assert_eq!(intersection_dim(a, b).unwrap(), 0);
            }
            for v in a.nonzero_vectors() {
                assert!(covered.insert(v));
            }
        }
        assert_eq!(covered.len() as u64, q.pow(n as u32) - 1);
        let report = analyze(&u, &ctx).unwrap();
        assert!(report.spread);
        assert_eq!(report.predicted_cardinality, size);
    }
}

#[test]
fn spread_start_needs_divisor_and_primitive() {
    let f = z(2);
    let p = Poly::parse(&f, "x^6+x+1").unwrap();
    assert!(build_spread_start(4, 6, &p).is_err());
    let np = Poly::parse(&f, "x^4+x^3+x^2+x+1").unwrap();
    assert!(build_spread_start(2, 4, &np).is_err());
}

fn random_invertible(f: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.size())).collect();
        let m = Mat::from_indices(f, n, n, data).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

#[test]
fn conjugation_preserves_code_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let f = z(2);
    for p in ["x^6+x+1", "x^6+x^3+1", "x^4+x^3+x^2+x+1"] {
        let p = Poly::parse(&f, p).unwrap();
        let n = p.degree().unwrap();
        let g = companion_generator(&p).unwrap();
        let all = grassmannian(&f, 2, n).unwrap();
        for _ in 0..10 {
            let u = &all[rng.gen_range(0..all.len())];
            let base = generate_orbit(u, &g).unwrap();
            let s = random_invertible(&f, n, &mut rng);
            let (us, gs) = conjugate_code(u, &g, &s).unwrap();
            let moved = generate_orbit(&us, &gs).unwrap();
            assert_eq!(moved.cardinality(), base.cardinality());
            assert_eq!(oracle(&moved), oracle(&base));
        }
    }
}

#[test]
fn sidon_start_gives_full_orbit_with_distance_2k_minus_2() {
    let f = z(2);
    let ctx = ExtensionContext::new(&Poly::parse(&f, "x^6+x+1").unwrap()).unwrap();
    let u = find_sidon_start(&ctx, 3).unwrap();
    let profile = ctx.exponent_profile(&u).unwrap();
    assert!(check_sidon_condition(&profile, 63));
    let (report, code) = check_prediction(&u, &ctx);
    assert!(report.distinct_differences);
    assert_eq!(code.cardinality(), 63);
    assert_eq!(min_distance_brute(&code).unwrap(), 4);
}

#[test]
fn report_survives_json() {
    let f = z(2);
    let ctx = ExtensionContext::new(&Poly::parse(&f, "x^4+x^3+x^2+x+1").unwrap()).unwrap();
    let u = Subspace::parse(&f, "1000\n0011").unwrap();
    let (report, _) = check_prediction(&u, &ctx);
    let text = serde_json::to_string(&report).unwrap();
    let back: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn export_round_trips() {
    for (q, p, start) in [
        (2u64, "x^6+x+1", "100000\n011010\n000110"),
        (3, "x^3+2*x+1", "100\n010"),
    ] {
        let f = z(q);
        let g = companion_generator(&Poly::parse(&f, p).unwrap()).unwrap();
        let code = generate_orbit(&Subspace::parse(&f, start).unwrap(), &g).unwrap();
        let text = export_code(&code);
        let back = parse_code_export(&f, &text).unwrap();
        assert_eq!(back.codewords, code.codewords());
        assert_eq!(
            (back.q, back.n, back.k),
            (q, code.ambient_dim(), code.dim())
        );
    }
    assert!(parse_code_export(&z(2), "2 4 2 3\n1000\n0100\n").is_err());
}

#[test]
fn distance_is_zero_only_on_identical_codewords() {
    let f = z(2);
    let u = Subspace::parse(&f, "1000\n0100").unwrap();
    let v = Subspace::parse(&f, "1100\n0100").unwrap();
    assert_eq!(u, v);
    assert_eq!(subspace_distance(&u, &v).unwrap(), 0);
}
