use orbitcode::gfq::{field_make, FieldSpec};
use orbitcode::matspace::{char_poly, Mat};
use orbitcode::polyring::{
    companion_matrix, is_irreducible, list_irreducibles, order_of_polynomial, poly_powmod, Poly,
};
use proptest::prelude::*;

fn prime(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn ext(base: &FieldSpec, modulus: &str) -> FieldSpec {
    base.extend(&Poly::parse(base, modulus).unwrap()).unwrap()
}

/// The test tower, every field of size at most 2^16.
fn tower() -> Vec<FieldSpec> {
    let z2 = prime(2);
    let z3 = prime(3);
    let f4 = ext(&z2, "x^2+x+1");
    vec![
        z2.clone(),
        z3.clone(),
        prime(5),
        prime(7),
        prime(251),
        f4.clone(),
        ext(&z2, "x^3+x+1"),
        ext(&z3, "x^2+1"),
        ext(&z2, "x^4+x+1"),
        ext(&f4, "x^2+x+[2]"),
        ext(&z3, "x^3+2*x+1"),
        ext(&z2, "x^6+x+1"),
        f4.extend(list_irreducibles(&f4, 3).unwrap().last().unwrap())
            .unwrap(),
        ext(&z2, "x^10+x^3+1"),
        ext(&z2, "x^16+x^5+x^3+x^2+1"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(which in 0usize..15, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &tower()[which];
        let (a, b, c) = (a % f.size(), b % f.size(), c % f.size());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn polynomial_text_round_trips(which in 0usize..15, coeffs in prop::collection::vec(any::<u32>(), 0..8)) {
        let f = &tower()[which];
        let coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % f.size()).collect();
        let p = Poly::from_indices(f, coeffs).unwrap();
        let text = p.to_string();
        prop_assert_eq!(Poly::parse(f, &text).unwrap(), p);
    }
}

#[test]
fn lagrange_exhaustive() {
    for f in tower().iter().filter(|f| f.size() <= 1 << 10) {
        for a in 1..f.size() {
            assert_eq!(f.pow(a, f.size() as u64 - 1), 1, "{:?} a={}", f, a);
        }
    }
}

#[test]
fn index_round_trip_exhaustive() {
    for f in tower().iter().filter(|f| f.size() <= 1 << 10) {
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all.len() as u32, f.size());
        for (i, e) in all.iter().enumerate() {
            assert_eq!(e.index() as usize, i);
            assert_eq!(&f.element(i as u64).unwrap(), e);
            let digits: Vec<u32> = e.coefficients().iter().map(|c| c.index()).collect();
            assert_eq!(f.from_digits(&digits), e.index());
        }
    }
}

#[test]
fn cached_cardinalities() {
    let z2 = prime(2);
    let f4 = ext(&z2, "x^2+x+1");
    let top = Poly::parse(&f4, "x^2+x+[2]").unwrap();
    let base = Poly::parse(&z2, "x^2+x+1").unwrap();
    let f16 = field_make(2, Some(&base), Some(&top)).unwrap();
    assert_eq!(f16.level_sizes(), vec![2, 4, 16]);
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1i64;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn necklace_count(q: u64, n: u64) -> u64 {
    let total: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * (q as i64).pow((n / d) as u32))
        .sum();
    (total / n as i64) as u64
}

fn monic_polys(f: &FieldSpec, degree: usize) -> Vec<Poly> {
    let q = f.size() as u64;
    (0..q.pow(degree as u32))
        .map(|mut i| {
            let mut c: Vec<u32> = (0..degree)
                .map(|_| {
                    let d = (i % q) as u32;
                    i /= q;
                    d
                })
                .collect();
            c.push(1);
            Poly::from_indices(f, c).unwrap()
        })
        .collect()
}

/// Irreducible iff no monic factor of degree 1..=n/2 divides it.
fn irreducible_by_trial_division(p: &Poly) -> bool {
    let n = p.degree().unwrap();
    (1..=n / 2).all(|d| {
        monic_polys(p.field(), d)
            .iter()
            .all(|g| !p.rem(g).unwrap().is_zero())
    })
}

#[test]
fn irreducible_counts_match_two_oracles() {
    for (q, max_n) in [(2u64, 8usize), (3, 4), (5, 3)] {
        let f = prime(q);
        for n in 1..=max_n {
            let listed = list_irreducibles(&f, n).unwrap();
            assert_eq!(
                listed.len() as u64,
                necklace_count(q, n as u64),
                "q={} n={}",
                q,
                n
            );
            let brute: Vec<Poly> = monic_polys(&f, n)
                .into_iter()
                .filter(irreducible_by_trial_division)
                .collect();
            assert_eq!(listed, brute, "q={} n={}", q, n);
        }
    }
    let f4 = ext(&prime(2), "x^2+x+1");
    for n in 1..=3 {
        let listed = list_irreducibles(&f4, n).unwrap();
        assert_eq!(listed.len() as u64, necklace_count(4, n as u64));
        assert!(listed.iter().all(irreducible_by_trial_division));
    }
}

fn small_irreducibles() -> Vec<Poly> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.extend(list_irreducibles(&prime(2), n).unwrap());
    }
    for n in 1..=3 {
        out.extend(list_irreducibles(&prime(3), n).unwrap());
    }
    out.retain(|p| p.coeff(0) != 0);
    out
}

#[test]
fn order_divides_group_order_and_characterizes_divisibility() {
    for p in small_irreducibles() {
        let f = p.field();
        let n = p.degree().unwrap();
        let group = (f.size() as u64).pow(n as u32) - 1;
        let e = order_of_polynomial(&p).unwrap();
        assert_eq!(group % e, 0, "{}", p);
        let x = Poly::x(f);
        let one = Poly::one(f).rem(&p).unwrap();
        for m in 1..=2 * group {
            let divides = poly_powmod(&x, m, &p).unwrap() == one;
            assert_eq!(divides, m % e == 0, "{} m={}", p, m);
        }
    }
}

#[test]
fn companion_has_its_polynomial_as_char_poly() {
    for p in small_irreducibles() {
        let c = companion_matrix(&p).unwrap();
        assert_eq!(char_poly(&c).unwrap(), p);
    }
    let z5 = prime(5);
    let f = Poly::parse(&z5, "x^4+3*x^2+2*x+4").unwrap();
    assert_eq!(char_poly(&companion_matrix(&f).unwrap()).unwrap(), f);
}

/// det(xI - A) by permutation expansion over polynomial entries.
fn char_poly_leibniz(a: &Mat) -> Poly {
    let f = a.field();
    let n = a.rows();
    let entry = |i: usize, j: usize| {
        let c = Poly::constant(f, f.neg(a.entry(i, j)));
        if i == j {
            c.add(&Poly::x(f)).unwrap()
        } else {
            c
        }
    };
    let mut total = Poly::zero(f);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = Poly::one(f);
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&entry(i, j)).unwrap();
        }
        if inversions % 2 == 1 {
            term = term.neg();
        }
        total = total.add(&term).unwrap();
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn char_poly_matches_leibniz(which in 0usize..4, n in 1usize..6, seed in prop::collection::vec(any::<u32>(), 25)) {
        let f = [prime(2), prime(3), prime(7), ext(&prime(2), "x^2+x+1")][which].clone();
        let data: Vec<u32> = seed[..n * n].iter().map(|x| x % f.size()).collect();
        let a = Mat::from_indices(&f, n, n, data).unwrap();
        prop_assert_eq!(char_poly(&a).unwrap(), char_poly_leibniz(&a));
    }
}

#[test]
fn irreducibility_over_extension_base() {
    let f4 = ext(&prime(2), "x^2+x+1");
    // x^2+x+1 splits over F_4 (its roots are the primitive cube roots of unity).
    assert!(!is_irreducible(&Poly::parse(&f4, "x^2+x+1").unwrap()).unwrap());
    assert!(is_irreducible(&Poly::parse(&f4, "x^2+x+[2]").unwrap()).unwrap());
}
