//! The dictionary between `F_q^n` and `F_{q^n} = F_q[x]/(p)`.
//!
//! `phi` sends `(v_1, ..., v_n)` to `Σ v_i α^{i-1}` where `α` is the class of
//! `x`; under it, right multiplication by the companion matrix of `p` becomes
//! multiplication by `α`. Discrete logarithms are taken with respect to a
//! fixed primitive element `γ` (`γ = α` when `p` is primitive, otherwise the
//! first primitive element in index order).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfq::{FieldElement, FieldSpec};
use crate::matspace::{Mat, Subspace};
use crate::polyring::{self, prime_factors, Poly};

/// `F_{q^n}` together with its root `α`, a primitive element `γ` and dense
/// log and orbit tables, all built at construction.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    base: FieldSpec,
    ext: FieldSpec,
    modulus: Poly,
    alpha: u32,
    order: u64,
    primitive: bool,
    gamma: u32,
    // log_gamma[x] for x != 0
    dlog: Vec<u32>,
    // gamma^i
    exp: Vec<u32>,
    // b with x = rep(x)·α^b
    orbit_position: Vec<u32>,
}

/// Discrete logarithms of the nonzero vectors of a subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentProfile {
    pub dim: usize,
    pub modulus: u64,
    /// Sorted, pairwise distinct, `q^k - 1` of them.
    pub exponents: Vec<u64>,
}

/// Orbits of `x ↦ α·x` on the nonzero field elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub orbit_count: u64,
    pub orbit_size: u64,
    /// Packed index of each orbit's representative (minimal discrete log).
    pub representatives: Vec<u32>,
    /// Per orbit, the subspace's members in it; present when a subspace was given.
    pub members: Option<Vec<OrbitMembers>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitMembers {
    pub count: u64,
    /// Within-orbit exponents `b` (vector = representative·α^b), sorted.
    pub exponents: Vec<u64>,
}

fn is_generator(field: &FieldSpec, g: u32, group: u64, factors: &[u64]) -> bool {
    g != 0 && factors.iter().all(|&t| field.pow(g, group / t) != 1)
}

impl ExtensionContext {
    /// Builds `F_q[x]/(p)` for an irreducible `p` over `F_q` with `p(0) ≠ 0`.
    pub fn new(p: &Poly) -> Result<Self> {
        let base = p.field().clone();
        let ext = base.extend(&p.make_monic()).map_err(|e| match e {
            Error::ReducibleModulus(s) => Error::Reducible(s),
            other => other,
        })?;
        let order = polyring::order_of_polynomial(p)?;
        let group = ext.size() as u64 - 1;
        let alpha = ext.reduce_digits(&[0, 1]);
        let primitive = order == group;
        let factors = prime_factors(group);
        let gamma = if primitive {
            alpha
        } else {
            (1..ext.size())
                .find(|&g| is_generator(&ext, g, group, &factors))
                .expect("the multiplicative group is cyclic")
        };
        let size = ext.size() as usize;
        let mut dlog = vec![u32::MAX; size];
        let mut exp = Vec::with_capacity(group as usize);
        let mut x = 1u32;
        for i in 0..group as u32 {
            exp.push(x);
            dlog[x as usize] = i;
            x = ext.mul(x, gamma);
        }
        let mut orbit_position = vec![u32::MAX; size];
        let orbit_count = group / order;
        for &rep in exp.iter().take(orbit_count as usize) {
            let mut y = rep;
            for b in 0..order as u32 {
                orbit_position[y as usize] = b;
                y = ext.mul(y, alpha);
            }
        }
        Ok(ExtensionContext {
            base,
            ext,
            modulus: p.make_monic(),
            alpha,
            order,
            primitive,
            gamma,
            dlog,
            exp,
            orbit_position,
        })
    }

    /// The base field `F_q`.
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    /// The extension `F_{q^n}`.
    pub fn field(&self) -> &FieldSpec {
        &self.ext
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn q(&self) -> u64 {
        self.base.size() as u64
    }

    /// `q^n - 1`.
    pub fn group_order(&self) -> u64 {
        self.ext.size() as u64 - 1
    }

    /// Multiplicative order `e` of `α`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn alpha(&self) -> FieldElement {
        self.element(self.alpha)
    }

    pub fn gamma(&self) -> FieldElement {
        self.element(self.gamma)
    }

    /// Number of `α`-orbits on the nonzero elements, `(q^n - 1) / e`.
    pub fn orbit_count(&self) -> u64 {
        self.group_order() / self.order
    }

    pub fn companion(&self) -> Mat {
        polyring::companion_matrix(&self.modulus).expect("modulus is monic")
    }

    fn element(&self, i: u32) -> FieldElement {
        self.ext.element(i as u64).expect("valid index")
    }

    /// `γ^i`.
    pub fn gamma_power(&self, i: u64) -> FieldElement {
        self.element(self.exp[(i % self.group_order()) as usize])
    }

    /// `α^i`.
    pub fn alpha_power(&self, i: u64) -> FieldElement {
        self.element(self.ext.pow(self.alpha, i))
    }

    fn check_vector(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F_q^{}",
                v.len(),
                self.degree()
            )));
        }
        if let Some(&bad) = v.iter().find(|&&c| c >= self.base.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad as u64,
                size: self.base.size() as u64,
            });
        }
        Ok(())
    }

    pub(crate) fn phi_index(&self, v: &[u32]) -> u32 {
        self.ext.from_digits(v)
    }

    /// `(v_1, ..., v_n) ↦ Σ v_i α^{i-1}`.
    pub fn phi(&self, v: &[u32]) -> Result<FieldElement> {
        self.check_vector(v)?;
        Ok(self.element(self.phi_index(v)))
    }

    pub fn phi_inv(&self, x: &FieldElement) -> Result<Vec<u32>> {
        if x.field() != &self.ext {
            return Err(Error::FieldMismatch);
        }
        Ok(self.ext.digits(x.index()))
    }

    pub(crate) fn dlog_index(&self, x: u32) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.dlog[x as usize] as u64)
    }

    /// The `i ∈ [0, q^n - 1)` with `γ^i = x`.
    pub fn dlog(&self, x: &FieldElement) -> Result<u64> {
        if x.field() != &self.ext {
            return Err(Error::FieldMismatch);
        }
        self.dlog_index(x.index())
    }

    fn check_subspace(&self, u: &Subspace) -> Result<()> {
        if u.field() != &self.base {
            return Err(Error::FieldMismatch);
        }
        if u.ambient_dim() != self.degree() {
            return Err(Error::AmbientMismatch(u.ambient_dim(), self.degree()));
        }
        if u.dim() == 0 {
            return Err(Error::ZeroSubspace);
        }
        Ok(())
    }

    /// Sorted discrete logs of the `q^k - 1` nonzero vectors of `u`.
    pub fn exponent_profile(&self, u: &Subspace) -> Result<ExponentProfile> {
        if !self.primitive {
            return Err(Error::NonPrimitiveContext);
        }
        self.check_subspace(u)?;
        let mut exponents = u
            .nonzero_vectors()
            .map(|v| self.dlog_index(self.phi_index(&v)))
            .collect::<Result<Vec<_>>>()?;
        exponents.sort_unstable();
        Ok(ExponentProfile {
            dim: u.dim(),
            modulus: self.group_order(),
            exponents,
        })
    }

    /// Orbit index of a nonzero element and its within-orbit exponent.
    pub(crate) fn orbit_coordinates(&self, x: u32) -> Result<(usize, u64)> {
        let log = self.dlog_index(x)?;
        Ok((
            (log % self.orbit_count()) as usize,
            self.orbit_position[x as usize] as u64,
        ))
    }

    /// The `α`-orbits on `F_{q^n}^*`; with `u`, also how `u`'s nonzero
    /// vectors distribute over them.
    pub fn orbit_partition(&self, u: Option<&Subspace>) -> Result<OrbitPartition> {
        let l = self.orbit_count();
        let representatives = self.exp[..l as usize].to_vec();
        let members = match u {
            None => None,
            Some(u) => {
                self.check_subspace(u)?;
                let mut per_orbit = vec![Vec::new(); l as usize];
                for v in u.nonzero_vectors() {
                    let (i, b) = self.orbit_coordinates(self.phi_index(&v))?;
                    per_orbit[i].push(b);
                }
                Some(
                    per_orbit
                        .into_iter()
                        .map(|mut exponents| {
                            exponents.sort_unstable();
                            OrbitMembers {
                                count: exponents.len() as u64,
                                exponents,
                            }
                        })
                        .collect(),
                )
            }
        };
        Ok(OrbitPartition {
            orbit_count: l,
            orbit_size: self.order,
            representatives,
            members,
        })
    }
}
