//! Worked examples with known answers, checked end to end.

use orbitcode::matspace::{
    grassmannian, groups_conjugate, intersection_dim, is_irreducible_matrix, matrix_order, rref,
    subspace_distance, Mat,
};
use orbitcode::orbitcode::{
    analyze, build_spread_start, conjugate_code, export_code, find_sidon_start, generate_orbit,
    min_distance_brute, min_distance_of, min_distance_orbit, parse_code_export,
};
use orbitcode::polyring::{
    companion_matrix, is_irreducible, is_primitive, list_irreducibles, order_of_polynomial,
    poly_powmod,
};
use orbitcode::{ExtensionContext, FieldSpec, OrbitCode, Poly, Subspace};

type Outcome = std::result::Result<(), String>;
type Check = fn(&Env) -> Outcome;

struct Env {
    z2: FieldSpec,
    z3: FieldSpec,
}

impl Env {
    fn poly(&self, s: &str) -> Poly {
        Poly::parse(&self.z2, s).expect("valid literal")
    }

    fn ctx(&self, s: &str) -> ExtensionContext {
        ExtensionContext::new(&self.poly(s)).expect("irreducible literal")
    }

    fn rows(&self, s: &str) -> Subspace {
        Subspace::parse(&self.z2, &s.replace(';', "\n")).expect("valid literal")
    }

    fn orbit(&self, p: &str, start: &Subspace) -> OrbitCode {
        generate_orbit(start, &self.ctx(p).companion()).expect("valid orbit")
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {:?}, expected {:?}", got, want))
    }
}

fn all(checks: impl IntoIterator<Item = Outcome>) -> Outcome {
    checks
        .into_iter()
        .collect::<Result<Vec<()>, String>>()
        .map(|_| ())
}

fn err(e: orbitcode::Error) -> String {
    e.to_string()
}

const P6: &str = "x^6+x+1";
const P3: &str = "x^4+x^3+x^2+x+1";

fn checks() -> Vec<(&'static str, Check)> {
    vec![
        ("F_64 from x^6+x+1 has 64 elements", |e| {
            expect(e.ctx(P6).field().size(), 64)
        }),
        ("alpha^63 = 1 in F_64", |e| {
            let a = e.ctx(P6).alpha();
            expect(a.pow(63).map_err(err)?.index(), 1)
        }),
        ("x^9 mod x^6+x+1 = x^4+x^3", |e| {
            let r = poly_powmod(&Poly::x(&e.z2), 9, &e.poly(P6)).map_err(err)?;
            expect(r, e.poly("x^4+x^3"))
        }),
        ("x^2+x+1 and x^4+x^3+1 are irreducible", |e| {
            all([
                expect(is_irreducible(&e.poly("x^2+x+1")).map_err(err)?, true),
                expect(is_irreducible(&e.poly("x^4+x^3+1")).map_err(err)?, true),
            ])
        }),
        ("polynomial orders 15, 15, 5, 63", |e| {
            let orders = ["x^4+x+1", "x^4+x^3+1", P3, P6]
                .iter()
                .map(|s| order_of_polynomial(&e.poly(s)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            expect(orders, vec![15, 15, 5, 63])
        }),
        ("primitivity of x^6+x+1, x^4+x^3+x^2+x+1, x^4+x^3+1", |e| {
            let flags = [P6, P3, "x^4+x^3+1"]
                .iter()
                .map(|s| is_primitive(&e.poly(s)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            expect(flags, vec![true, false, true])
        }),
        ("companion of x^2+x+1", |e| {
            let c = companion_matrix(&e.poly("x^2+x+1")).map_err(err)?;
            expect(c.to_string(), "01\n11".to_string())
        }),
        ("irreducibles of degree 2 and 4 over Z_2", |e| {
            let show = |n| -> Result<Vec<String>, String> {
                Ok(list_irreducibles(&e.z2, n)
                    .map_err(err)?
                    .iter()
                    .map(|p| p.to_string())
                    .collect())
            };
            all([
                expect(show(2)?, vec!["x^2+x+1".to_string()]),
                expect(
                    show(4)?,
                    vec![
                        "x^4+x+1".to_string(),
                        "x^4+x^3+1".to_string(),
                        "x^4+x^3+x^2+x+1".to_string(),
                    ],
                ),
            ])
        }),
        ("row reduction of the displayed 3x6 matrix", |e| {
            let m = Mat::parse(&e.z2, "100000\n000110\n111100").map_err(err)?;
            let (r, rank) = rref(&m);
            all([
                expect(rank, 3),
                expect(r.to_string(), "100000\n011010\n000110".to_string()),
            ])
        }),
        ("canonical form of (100000; 111000)", |e| {
            expect(
                e.rows("100000;111000").to_string(),
                "100000\n011000".to_string(),
            )
        }),
        ("companion orders 5 and 63", |e| {
            let a = matrix_order(&e.ctx(P3).companion()).map_err(err)?;
            let b = matrix_order(&e.ctx(P6).companion()).map_err(err)?;
            expect((a, b), (5, 63))
        }),
        ("companions of x^2+x+1 and x^4+x^3+1 are irreducible", |e| {
            let a = is_irreducible_matrix(&e.ctx("x^2+x+1").companion()).map_err(err)?;
            let b = is_irreducible_matrix(&e.ctx("x^4+x^3+1").companion()).map_err(err)?;
            expect((a, b), (true, true))
        }),
        ("conjugacy of the degree 4 Singer-type groups", |e| {
            let p1 = e.poly("x^4+x+1");
            let a = groups_conjugate(&p1, &e.poly("x^4+x^3+1")).map_err(err)?;
            let b = groups_conjugate(&p1, &e.poly(P3)).map_err(err)?;
            expect((a, b), (true, false))
        }),
        ("phi(000110) = alpha^9 and phi(100000) = 1", |e| {
            let c = e.ctx(P6);
            let x = c.phi(&[0, 0, 0, 1, 1, 0]).map_err(err)?;
            all([
                expect(x.clone(), c.alpha_power(9)),
                expect(c.dlog(&x).map_err(err)?, 9),
                expect(c.phi(&[1, 0, 0, 0, 0, 0]).map_err(err)?.index(), 1),
            ])
        }),
        ("dlog(alpha^2+alpha+1) = 21", |e| {
            let c = e.ctx(P6);
            let x = c.phi(&[1, 1, 1, 0, 0, 0]).map_err(err)?;
            expect(c.dlog(&x).map_err(err)?, 21)
        }),
        ("profile of rs(100000; 011000) contains 0 and 21", |e| {
            let c = e.ctx(P6);
            let profile = c.exponent_profile(&e.rows("100000;011000")).map_err(err)?;
            let has = |b| profile.exponents.contains(&b);
            if has(0) && has(21) {
                Ok(())
            } else {
                Err(format!("profile is {:?}", profile.exponents))
            }
        }),
        ("x^4+x^3+x^2+x+1 gives 3 orbits of size 5", |e| {
            let part = e.ctx(P3).orbit_partition(None).map_err(err)?;
            expect((part.orbit_count, part.orbit_size), (3, 5))
        }),
        ("spread start rows for k = 3", |e| {
            let u = build_spread_start(3, 6, &e.poly(P6)).map_err(err)?;
            expect(u.to_string(), "100000\n011010\n000110".to_string())
        }),
        ("spread start rows for k = 2", |e| {
            let u = build_spread_start(2, 6, &e.poly(P6)).map_err(err)?;
            expect(u.to_string(), "100000\n011000".to_string())
        }),
        (
            "k = 3 spread: 9 codewords, distance 6, trivial intersections",
            |e| {
                let code = e.orbit(P6, &build_spread_start(3, 6, &e.poly(P6)).map_err(err)?);
                let w = code.codewords();
                all([
                    expect(code.cardinality(), 9),
                    expect(min_distance_brute(&code).map_err(err)?, 6),
                    expect(min_distance_orbit(&code).map_err(err)?, 6),
                    expect(subspace_distance(&w[0], &w[1]).map_err(err)?, 6),
                    expect(intersection_dim(&w[0], &w[1]).map_err(err)?, 0),
                ])
            },
        ),
        (
            "k = 2 spread: stabilizer 21, 21 codewords, distance 4",
            |e| {
                let u = build_spread_start(2, 6, &e.poly(P6)).map_err(err)?;
                let r = analyze(&u, &e.ctx(P6)).map_err(err)?;
                let code = e.orbit(P6, &u);
                all([
                    expect(r.stabilizer_shifts.first().copied(), Some(21)),
                    expect(r.predicted_cardinality, 21),
                    expect(r.max_multiplicity, 0),
                    expect(r.predicted_distance, Some(4)),
                    expect(code.cardinality(), 21),
                    expect(min_distance_brute(&code).map_err(err)?, 4),
                ])
            },
        ),
        (
            "non-primitive example: m = (1,1,1), 5 codewords, distance 4, spread",
            |e| {
                let u = e.rows("1000;0011");
                let r = analyze(&u, &e.ctx(P3)).map_err(err)?;
                let code = e.orbit(P3, &u);
                all([
                    expect(r.orbit_members.clone(), vec![1, 1, 1]),
                    expect(r.differences.is_empty(), true),
                    expect(
                        (r.predicted_cardinality, r.predicted_distance),
                        (5, Some(4)),
                    ),
                    expect(r.spread, true),
                    expect(code.cardinality(), 5),
                    expect(min_distance_brute(&code).map_err(err)?, 4),
                ])
            },
        ),
        (
            "distinct-difference start in G(3,6): 63 codewords, distance 4",
            |e| {
                let c = e.ctx(P6);
                let u = find_sidon_start(&c, 3).map_err(err)?;
                let r = analyze(&u, &c).map_err(err)?;
                let code = e.orbit(P6, &u);
                all([
                    expect(
                        (r.predicted_cardinality, r.predicted_distance),
                        (63, Some(4)),
                    ),
                    expect(code.cardinality(), 63),
                    expect(min_distance_brute(&code).map_err(err)?, 4),
                ])
            },
        ),
        (
            "conjugated k = 3 spreads keep 9 codewords and distance 6",
            |e| {
                let u = build_spread_start(3, 6, &e.poly(P6)).map_err(err)?;
                let g = e.ctx(P6).companion();
                for seed in 1..=8u32 {
                    let s = unitriangular(&e.z2, 6, seed);
                    let (us, gs) = conjugate_code(&u, &g, &s).map_err(err)?;
                    let code = generate_orbit(&us, &gs).map_err(err)?;
                    expect(
                        (code.cardinality(), min_distance_brute(&code).map_err(err)?),
                        (9, 6),
                    )?;
                }
                Ok(())
            },
        ),
        ("export and reload of the k = 3 spread", |e| {
            let code = e.orbit(P6, &build_spread_start(3, 6, &e.poly(P6)).map_err(err)?);
            let back = parse_code_export(&e.z2, &export_code(&code)).map_err(err)?;
            all([
                expect(back.codewords.len(), 9),
                expect(min_distance_of(&back.codewords).map_err(err)?, 6),
            ])
        }),
        ("predictor agrees with the oracle on G(2,4)", |e| {
            for p in list_irreducibles(&e.z2, 4).map_err(err)? {
                let c = ExtensionContext::new(&p).map_err(err)?;
                for u in grassmannian(&e.z2, 2, 4).map_err(err)? {
                    let mut r = analyze(&u, &c).map_err(err)?;
                    let code = generate_orbit(&u, &c.companion()).map_err(err)?;
                    if !r.verify_with(&code).map_err(err)? {
                        return Err(format!("{} start {:?}", p, u));
                    }
                }
            }
            Ok(())
        }),
        ("phi(vP) = phi(v) alpha over Z_3, n = 3", |e| {
            let p = Poly::parse(&e.z3, "x^3+2*x+1").map_err(err)?;
            let c = ExtensionContext::new(&p).map_err(err)?;
            let g = c.companion();
            for i in 0..27 {
                let v = orbitcode::matspace::vector_from_index(&e.z3, 3, i);
                let vp = Mat::from_rows(&e.z3, std::slice::from_ref(&v))
                    .map_err(err)?
                    .mul(&g)
                    .map_err(err)?;
                let lhs = c.phi(vp.row(0)).map_err(err)?;
                expect(lhs, &c.phi(&v).map_err(err)? * &c.alpha())?;
            }
            Ok(())
        }),
    ]
}

/// Upper unitriangular matrix with entries above the diagonal taken from the
/// bits of a simple hash of `seed`.
fn unitriangular(f: &FieldSpec, n: usize, seed: u32) -> Mat {
    let mut bits = seed.wrapping_mul(2_654_435_761);
    let mut data = vec![0u32; n * n];
    for i in 0..n {
        data[i * n + i] = 1;
        for j in i + 1..n {
            data[i * n + j] = bits & 1;
            bits = bits.rotate_right(1);
        }
    }
    Mat::from_indices(f, n, n, data).expect("square")
}

/// Runs every check, printing one line each. Returns the number of failures.
pub fn run() -> usize {
    let env = Env {
        z2: FieldSpec::prime(2).expect("2 is prime"),
        z3: FieldSpec::prime(3).expect("3 is prime"),
    };
    let list = checks();
    let mut failed = 0;
    for (name, check) in &list {
        match check(&env) {
            Ok(()) => println!("PASS  {}", name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}: {}", name, why);
            }
        }
    }
    println!("{} of {} checks passed", list.len() - failed, list.len());
    failed
}
