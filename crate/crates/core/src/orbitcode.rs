//! Cyclic orbit codes `{U·P^i}` for an irreducible generator `P`.
//!
//! Cardinality and minimum distance are predicted from difference multisets
//! of discrete-log exponents and can be checked against the brute-force
//! oracle ([`min_distance_brute`]).
//!
//! Under `phi`, `U·P^h` corresponds to `α^h·U`, so the number of nonzero
//! vectors shared by `U` and `U·P^h` is the multiplicity of `h` among the
//! pairwise exponent differences. That multiplicity is always `q^d - 1` for
//! `d = dim(U ∩ U·P^h)`, and it is the full `q^k - 1` exactly when `P^h`
//! stabilises `U`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldmap::{ExponentProfile, ExtensionContext};
use crate::gfq::FieldSpec;
use crate::matspace::{self, grassmannian, subspace_apply, subspace_distance, Mat, Subspace};
use crate::polyring::{self, Poly};

/// The orbit of a starting subspace under the cyclic group `<P>`.
#[derive(Clone, Debug)]
pub struct OrbitCode {
    generator: Mat,
    start: Subspace,
    codewords: Vec<Subspace>,
    generator_order: u64,
}

impl OrbitCode {
    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    pub fn start(&self) -> &Subspace {
        &self.start
    }

    /// Distinct codewords, sorted by canonical matrix.
    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn cardinality(&self) -> usize {
        self.codewords.len()
    }

    /// `ord(P)`.
    pub fn generator_order(&self) -> u64 {
        self.generator_order
    }

    pub fn field(&self) -> &FieldSpec {
        self.start.field()
    }

    pub fn dim(&self) -> usize {
        self.start.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.start.ambient_dim()
    }
}

/// Collects `u, u·P, u·P^2, ...` until the orbit closes.
pub fn generate_orbit(u: &Subspace, p: &Mat) -> Result<OrbitCode> {
    if u.dim() == 0 {
        return Err(Error::ZeroSubspace);
    }
    let order = matspace::matrix_order(p)?;
    // Validates field, shape and invertibility once.
    let mut current = subspace_apply(u, p)?;
    let mut codewords = vec![u.clone()];
    while &current != u {
        if codewords.len() as u64 >= order {
            unreachable!("orbit longer than the generator order");
        }
        let next = current.apply_unchecked(p);
        codewords.push(current);
        current = next;
    }
    codewords.sort();
    codewords.dedup();
    Ok(OrbitCode {
        generator: p.clone(),
        start: u.clone(),
        codewords,
        generator_order: order,
    })
}

/// Minimum pairwise subspace distance of a set of subspaces.
pub fn min_distance_of(codewords: &[Subspace]) -> Result<usize> {
    if codewords.len() < 2 {
        return Err(Error::SingletonCode);
    }
    let mut best = usize::MAX;
    for (i, a) in codewords.iter().enumerate() {
        for b in &codewords[i + 1..] {
            best = best.min(subspace_distance(a, b)?);
        }
    }
    Ok(best)
}

/// Minimum distance over all unordered codeword pairs.
pub fn min_distance_brute(code: &OrbitCode) -> Result<usize> {
    min_distance_of(&code.codewords)
}

/// Minimum distance from the starting point to the other codewords, which
/// suffices because the group acts isometrically and transitively.
pub fn min_distance_orbit(code: &OrbitCode) -> Result<usize> {
    if code.cardinality() < 2 {
        return Err(Error::SingletonCode);
    }
    let mut best = usize::MAX;
    for c in code.codewords.iter().filter(|c| *c != &code.start) {
        best = best.min(subspace_distance(&code.start, c)?);
    }
    Ok(best)
}

/// Starting point of a spread: the row space of `phi⁻¹(α^{ic})` for
/// `i < k`, `c = (q^n - 1)/(q^k - 1)`, i.e. the subfield `F_{q^k}` inside
/// `F_{q^n}`. Its orbit under the companion matrix of `p` is a spread.
pub fn build_spread_start(k: usize, n: usize, p: &Poly) -> Result<Subspace> {
    let deg = p.degree().unwrap_or(0);
    if deg != n {
        return Err(Error::DegreeMismatch(deg, n));
    }
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisor { k, n });
    }
    let ctx = ExtensionContext::new(p)?;
    if !ctx.is_primitive() {
        return Err(Error::NotPrimitive(p.to_string()));
    }
    let q = ctx.q();
    let c = ctx.group_order() / (q.pow(k as u32) - 1);
    let rows = (0..k as u64)
        .map(|i| ctx.phi_inv(&ctx.alpha_power(i * c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_rows(&Mat::from_rows(ctx.base(), &rows)?))
}

/// True iff all pairwise differences `b_m - b_l` (`l ≠ m`) are distinct
/// modulo `modulus`.
pub fn check_sidon_condition(profile: &ExponentProfile, modulus: u64) -> bool {
    let mut seen = std::collections::HashSet::new();
    let b = &profile.exponents;
    for (i, &x) in b.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if i != j && !seen.insert((x + modulus - y % modulus) % modulus) {
                return false;
            }
        }
    }
    true
}

/// First subspace of `G(k, n)` (in canonical order) whose exponent profile
/// has pairwise distinct differences.
pub fn find_sidon_start(ctx: &ExtensionContext, k: usize) -> Result<Subspace> {
    for u in grassmannian(ctx.base(), k, ctx.degree())? {
        let profile = ctx.exponent_profile(&u)?;
        if check_sidon_condition(&profile, ctx.group_order()) {
            return Ok(u);
        }
    }
    Err(Error::NotFound)
}

/// Multiset of pairwise differences of exponents modulo `modulus`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceMultiset {
    pub modulus: u64,
    /// Residue `a ≠ 0` to multiplicity `m(a)`.
    pub counts: BTreeMap<u64, u64>,
}

impl DifferenceMultiset {
    pub fn from_exponents(exponents: &[u64], modulus: u64) -> Self {
        let mut counts = BTreeMap::new();
        for (i, &x) in exponents.iter().enumerate() {
            for (j, &y) in exponents.iter().enumerate() {
                if i != j {
                    let a = (x % modulus + modulus - y % modulus) % modulus;
                    *counts.entry(a).or_insert(0) += 1;
                }
            }
        }
        DifferenceMultiset { modulus, counts }
    }

    /// Union with multiplicities added.
    pub fn merge<'a>(
        modulus: u64,
        parts: impl IntoIterator<Item = &'a DifferenceMultiset>,
    ) -> Self {
        let mut counts = BTreeMap::new();
        for part in parts {
            for (&a, &m) in &part.counts {
                *counts.entry(a).or_insert(0) += m;
            }
        }
        DifferenceMultiset { modulus, counts }
    }

    pub fn multiplicity(&self, a: u64) -> u64 {
        self.counts.get(&(a % self.modulus)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalysisMode {
    Primitive,
    NonPrimitive,
}

/// Oracle values attached to a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub cardinality: u64,
    pub distance: Option<usize>,
}

/// Predicted (and optionally verified) parameters of an orbit code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub mode: AnalysisMode,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    /// `ord(P)`, the modulus of all differences.
    pub generator_order: u64,
    /// Discrete-log profile (primitive mode only).
    pub exponent_profile: Option<ExponentProfile>,
    /// `m_i` for every orbit (a single orbit in primitive mode).
    pub orbit_members: Vec<u64>,
    /// Within-orbit exponents per orbit.
    pub orbit_exponents: Vec<Vec<u64>>,
    /// `D_i` per orbit.
    pub orbit_differences: Vec<DifferenceMultiset>,
    /// `D`, the merged multiset.
    pub differences: DifferenceMultiset,
    /// Shifts `h` in `[1, ord(P))` with full multiplicity `q^k - 1`.
    pub stabilizer_shifts: Vec<u64>,
    pub predicted_cardinality: u64,
    /// Largest multiplicity among non-stabilizer shifts (0 if none).
    pub max_multiplicity: u64,
    /// `d_max = log_q(max_multiplicity + 1)`; absent for a single codeword.
    pub intersection_dim: Option<usize>,
    pub predicted_distance: Option<usize>,
    /// Every orbit holds at most one nonzero vector of the start.
    pub distinct_orbits: bool,
    /// All differences occur at most once.
    pub distinct_differences: bool,
    /// Cardinality `(q^n-1)/(q^k-1)` with distance `2k`.
    pub spread: bool,
    pub verified: Option<Verification>,
}

impl AnalysisReport {
    /// Runs the brute-force oracle on `code` and stores its values. Returns
    /// whether they agree with the prediction.
    pub fn verify_with(&mut self, code: &OrbitCode) -> Result<bool> {
        let distance = match code.cardinality() {
            1 => None,
            _ => Some(min_distance_brute(code)?),
        };
        self.verified = Some(Verification {
            cardinality: code.cardinality() as u64,
            distance,
        });
        Ok(self.agrees().unwrap_or(false))
    }

    /// `None` until an oracle has been attached.
    pub fn agrees(&self) -> Option<bool> {
        self.verified.as_ref().map(|v| {
            v.cardinality == self.predicted_cardinality && v.distance == self.predicted_distance
        })
    }
}

fn log_q(value: u64, q: u64) -> Option<usize> {
    let mut d = 0;
    let mut power = 1u64;
    while power < value {
        power *= q;
        d += 1;
    }
    (power == value).then_some(d)
}

struct Groups {
    members: Vec<u64>,
    exponents: Vec<Vec<u64>>,
}

fn summarize(
    mode: AnalysisMode,
    ctx: &ExtensionContext,
    k: usize,
    modulus: u64,
    groups: Groups,
    profile: Option<ExponentProfile>,
) -> Result<AnalysisReport> {
    let q = ctx.q();
    let n = ctx.degree();
    let full = q.pow(k as u32) - 1;
    let orbit_differences: Vec<DifferenceMultiset> = groups
        .exponents
        .iter()
        .map(|b| DifferenceMultiset::from_exponents(b, modulus))
        .collect();
    let differences = DifferenceMultiset::merge(modulus, &orbit_differences);
    let stabilizer_shifts: Vec<u64> = differences
        .counts
        .iter()
        .filter(|&(_, &m)| m == full)
        .map(|(&a, _)| a)
        .collect();
    let predicted_cardinality = stabilizer_shifts.first().copied().unwrap_or(modulus);
    let max_multiplicity = differences
        .counts
        .values()
        .copied()
        .filter(|&m| m != full)
        .max()
        .unwrap_or(0);
    let (intersection_dim, predicted_distance) = if predicted_cardinality == 1 {
        (None, None)
    } else {
        let d = log_q(max_multiplicity + 1, q).ok_or(Error::NonIntegralIntersection {
            multiplicity: max_multiplicity,
            q,
        })?;
        (Some(d), Some(2 * k - 2 * d))
    };
    let spread = n.is_multiple_of(k)
        && predicted_cardinality == ctx.group_order() / full
        && (predicted_cardinality == 1 || predicted_distance == Some(2 * k));
    Ok(AnalysisReport {
        mode,
        q,
        n,
        k,
        generator_order: modulus,
        exponent_profile: profile,
        distinct_orbits: groups.members.iter().all(|&m| m <= 1),
        distinct_differences: differences.counts.values().all(|&m| m <= 1),
        orbit_members: groups.members,
        orbit_exponents: groups.exponents,
        orbit_differences,
        differences,
        stabilizer_shifts,
        predicted_cardinality,
        max_multiplicity,
        intersection_dim,
        predicted_distance,
        spread,
        verified: None,
    })
}

/// Cardinality and distance of the orbit of `u` under the companion matrix
/// of a primitive polynomial.
pub fn predict_primitive(u: &Subspace, ctx: &ExtensionContext) -> Result<AnalysisReport> {
    let profile = ctx.exponent_profile(u)?;
    let groups = Groups {
        members: vec![profile.exponents.len() as u64],
        exponents: vec![profile.exponents.clone()],
    };
    summarize(
        AnalysisMode::Primitive,
        ctx,
        u.dim(),
        ctx.group_order(),
        groups,
        Some(profile),
    )
}

/// Cardinality and distance of the orbit of `u` under the companion matrix
/// of an irreducible non-primitive polynomial, via per-orbit difference
/// multisets merged into one.
pub fn analyze_nonprimitive(u: &Subspace, ctx: &ExtensionContext) -> Result<AnalysisReport> {
    if ctx.is_primitive() {
        return Err(Error::PrimitiveContext);
    }
    let partition = ctx.orbit_partition(Some(u))?;
    let members = partition.members.expect("subspace was given");
    let groups = Groups {
        members: members.iter().map(|m| m.count).collect(),
        exponents: members.into_iter().map(|m| m.exponents).collect(),
    };
    summarize(
        AnalysisMode::NonPrimitive,
        ctx,
        u.dim(),
        ctx.order(),
        groups,
        None,
    )
}

/// Dispatches on primitivity.
pub fn analyze(u: &Subspace, ctx: &ExtensionContext) -> Result<AnalysisReport> {
    if ctx.is_primitive() {
        predict_primitive(u, ctx)
    } else {
        analyze_nonprimitive(u, ctx)
    }
}

/// `(U·S, S⁻¹·G·S)`: the same code seen through the basis change `S`.
pub fn conjugate_code(u: &Subspace, g: &Mat, s: &Mat) -> Result<(Subspace, Mat)> {
    let s_inv = s.inv()?;
    let moved = subspace_apply(u, s)?;
    Ok((moved, s_inv.mul(g)?.mul(s)?))
}

/// Companion matrix of `p`, the standard generator.
pub fn companion_generator(p: &Poly) -> Result<Mat> {
    polyring::companion_matrix(&p.make_monic())
}

/// Codewords read back from an export file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExportedCode {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub codewords: Vec<Subspace>,
}

/// Export format: a `q n k size` header line, then one `k`-line block per
/// codeword in canonical order, blocks separated by a blank line.
pub fn export_code(code: &OrbitCode) -> String {
    let mut out = format!(
        "{} {} {} {}\n",
        code.field().size(),
        code.ambient_dim(),
        code.dim(),
        code.cardinality()
    );
    let blocks: Vec<Mat> = code.codewords.iter().map(|c| c.matrix().clone()).collect();
    out.push_str(&matspace::format_blocks(&blocks));
    out
}

pub fn parse_code_export(field: &FieldSpec, text: &str) -> Result<ExportedCode> {
    let (header, body) = text.split_once('\n').unwrap_or((text, ""));
    let nums = header
        .split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad header field {:?}", t)))
        })
        .collect::<Result<Vec<_>>>()?;
    let [q, n, k, size] = nums[..] else {
        return Err(Error::Parse(format!(
            "header must be `q n k size`, got {:?}",
            header
        )));
    };
    if q != field.size() as u64 {
        return Err(Error::Parse(format!(
            "file is over a field of size {}, expected {}",
            q,
            field.size()
        )));
    }
    let (n, k) = (n as usize, k as usize);
    let blocks = matspace::parse_blocks(field, body)?;
    if blocks.len() as u64 != size {
        return Err(Error::Parse(format!(
            "header announces {} codewords, found {}",
            size,
            blocks.len()
        )));
    }
    let mut codewords = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.rows() != k || b.cols() != n {
            return Err(Error::Parse(format!(
                "codeword is {}x{}, expected {}x{}",
                b.rows(),
                b.cols(),
                k,
                n
            )));
        }
        let s = Subspace::from_rows(&b);
        if s.dim() != k {
            return Err(Error::Parse("codeword basis is rank deficient".into()));
        }
        codewords.push(s);
    }
    Ok(ExportedCode { q, n, k, codewords })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn poly(s: &str) -> Poly {
        Poly::parse(&z2(), s).unwrap()
    }

    fn sub(s: &str) -> Subspace {
        Subspace::parse(&z2(), &s.replace(';', "\n")).unwrap()
    }

    #[test]
    fn spread_starts() {
        let p = poly("x^6+x+1");
        assert_eq!(
            build_spread_start(3, 6, &p).unwrap(),
            sub("100000;011010;000110")
        );
        // φ⁻¹(α^21) = (110111): α^21 = α^5+α^4+α^3+α+1 under x^6+x+1.
        assert_eq!(build_spread_start(2, 6, &p).unwrap(), sub("100000;010111"));
        let full = build_spread_start(6, 6, &p).unwrap();
        assert_eq!(full.dim(), 6);
        assert_eq!(
            build_spread_start(4, 6, &p).unwrap_err(),
            Error::NotDivisor { k: 4, n: 6 }
        );
        assert!(matches!(
            build_spread_start(2, 4, &poly("x^4+x^3+x^2+x+1")),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn spread_orbits() {
        let p = poly("x^6+x+1");
        let gen = companion_generator(&p).unwrap();
        let code = generate_orbit(&build_spread_start(3, 6, &p).unwrap(), &gen).unwrap();
        assert_eq!(code.cardinality(), 9);
        assert_eq!(code.generator_order(), 63);
        assert_eq!(min_distance_brute(&code).unwrap(), 6);
        assert_eq!(min_distance_orbit(&code).unwrap(), 6);
        let code = generate_orbit(&build_spread_start(2, 6, &p).unwrap(), &gen).unwrap();
        assert_eq!(code.cardinality(), 21);
        assert_eq!(min_distance_brute(&code).unwrap(), 4);
        let full = generate_orbit(&Subspace::full(&z2(), 6), &gen).unwrap();
        assert_eq!(full.cardinality(), 1);
        assert_eq!(min_distance_brute(&full).unwrap_err(), Error::SingletonCode);
        assert_eq!(min_distance_orbit(&full).unwrap_err(), Error::SingletonCode);
    }

    #[test]
    fn displayed_two_dimensional_start_is_not_a_spread() {
        // rs(100000; 111000) spans {1, α^26, α^7}: all differences distinct.
        let p = poly("x^6+x+1");
        let ctx = ExtensionContext::new(&p).unwrap();
        let u = sub("100000;011000");
        assert_eq!(ctx.exponent_profile(&u).unwrap().exponents, vec![0, 7, 26]);
        let code = generate_orbit(&u, &companion_generator(&p).unwrap()).unwrap();
        assert_eq!(code.cardinality(), 63);
        assert_eq!(min_distance_brute(&code).unwrap(), 2);
    }

    #[test]
    fn non_primitive_example() {
        let p = poly("x^4+x^3+x^2+x+1");
        let u = sub("1000;0011");
        let code = generate_orbit(&u, &companion_generator(&p).unwrap()).unwrap();
        assert_eq!(code.cardinality(), 5);
        assert_eq!(min_distance_brute(&code).unwrap(), 4);
        let ctx = ExtensionContext::new(&p).unwrap();
        let r = analyze_nonprimitive(&u, &ctx).unwrap();
        assert_eq!(r.orbit_members, vec![1, 1, 1]);
        assert!(r.differences.is_empty());
        assert_eq!(r.predicted_cardinality, 5);
        assert_eq!(r.predicted_distance, Some(4));
        assert!(r.spread && r.distinct_orbits);
        assert_eq!(
            analyze_nonprimitive(&u, &ExtensionContext::new(&poly("x^4+x+1")).unwrap())
                .unwrap_err(),
            Error::PrimitiveContext
        );
    }

    #[test]
    fn sidon_condition() {
        let ctx = ExtensionContext::new(&poly("x^6+x+1")).unwrap();
        let line = ctx.exponent_profile(&sub("010000")).unwrap();
        assert!(check_sidon_condition(&line, 63));
        let spread2 = build_spread_start(2, 6, &poly("x^6+x+1")).unwrap();
        let profile = ctx.exponent_profile(&spread2).unwrap();
        assert_eq!(profile.exponents, vec![0, 21, 42]);
        assert!(!check_sidon_condition(&profile, 63));
    }

    #[test]
    fn primitive_predictions() {
        let p = poly("x^6+x+1");
        let ctx = ExtensionContext::new(&p).unwrap();
        let r = predict_primitive(&build_spread_start(2, 6, &p).unwrap(), &ctx).unwrap();
        assert_eq!(r.stabilizer_shifts, vec![21, 42]);
        assert_eq!(r.predicted_cardinality, 21);
        assert_eq!(r.max_multiplicity, 0);
        assert_eq!(r.predicted_distance, Some(4));
        assert!(r.spread);
        let r = predict_primitive(&sub("001100"), &ctx).unwrap();
        assert!(r.differences.is_empty());
        assert_eq!(
            (r.predicted_cardinality, r.predicted_distance),
            (63, Some(2))
        );
        let ctx3 = ExtensionContext::new(&poly("x^4+x^3+x^2+x+1")).unwrap();
        assert_eq!(
            predict_primitive(&sub("1000"), &ctx3).unwrap_err(),
            Error::NonPrimitiveContext
        );
    }

    #[test]
    fn full_space_is_degenerate() {
        let p = poly("x^4+x^3+x^2+x+1");
        let ctx = ExtensionContext::new(&p).unwrap();
        let r = analyze(&Subspace::full(&z2(), 4), &ctx).unwrap();
        assert_eq!(r.predicted_cardinality, 1);
        assert_eq!(r.predicted_distance, None);
    }

    #[test]
    fn conjugation_identity() {
        let p = poly("x^4+x+1");
        let g = companion_generator(&p).unwrap();
        let u = sub("1000;0100");
        let id = Mat::identity(&z2(), 4);
        assert_eq!(conjugate_code(&u, &g, &id).unwrap(), (u.clone(), g.clone()));
        let singular = Mat::zeros(&z2(), 4, 4);
        assert_eq!(
            conjugate_code(&u, &g, &singular).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn log_q_is_exact() {
        assert_eq!(log_q(1, 2), Some(0));
        assert_eq!(log_q(8, 2), Some(3));
        assert_eq!(log_q(9, 3), Some(2));
        assert_eq!(log_q(6, 2), None);
    }

    #[test]
    fn export_round_trip() {
        let p = poly("x^6+x+1");
        let code = generate_orbit(
            &build_spread_start(3, 6, &p).unwrap(),
            &companion_generator(&p).unwrap(),
        )
        .unwrap();
        let text = export_code(&code);
        assert!(text.starts_with("2 6 3 9\n"));
        assert_eq!(text.matches("\n\n").count(), 8);
        let back = parse_code_export(&z2(), &text).unwrap();
        assert_eq!(back.codewords, code.codewords());
        assert!(parse_code_export(&z2(), "2 6 3 2\n100000\n010000\n001000\n").is_err());
        assert!(parse_code_export(&FieldSpec::prime(3).unwrap(), &text).is_err());
    }
}
