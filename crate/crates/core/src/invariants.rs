//! Weyl-invariant polynomials on `h`, generator sets per type, and the
//! maps `Dp = B_flat . dp` and `D^p = dp . B_flat`.

use std::fmt;

use num_traits::{One, Zero};

use crate::cache::OrbitCache;
use crate::error::{Error, Result};
use crate::linalg::{pair, q, q_frac, CartanVec, Vector, WeightVec, Q};
use crate::poly::SparsePolynomial;
use crate::rootsys::{Family, LieType, RootSystem};

#[derive(Debug, Clone, PartialEq)]
pub enum InvariantBody {
    Explicit(SparsePolynomial),
    /// `f(x) = sum_{v in W.seed} <v, x>^d`, never expanded.
    OrbitPowerSum {
        seed: WeightVec,
        orbit: Vec<WeightVec>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSpec {
    degree: u32,
    body: InvariantBody,
    scale: Q,
    label: String,
}

impl InvariantSpec {
    pub fn explicit(poly: SparsePolynomial, label: impl Into<String>) -> Result<InvariantSpec> {
        let label = label.into();
        let degree =
            poly.homogeneous_degree().ok_or_else(|| Error::ZeroInvariant { degree: 0, seed: label.clone() })?;
        Ok(InvariantSpec { degree, body: InvariantBody::Explicit(poly), scale: Q::one(), label })
    }

    pub fn orbit_power_sum(
        rs: &RootSystem,
        seed: &WeightVec,
        degree: u32,
        cap: usize,
        cache: Option<&OrbitCache>,
    ) -> Result<InvariantSpec> {
        if seed.dim() != rs.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: rs.ambient_dim(), got: seed.dim() });
        }
        if seed.is_zero() || degree == 0 {
            return Err(Error::ZeroInvariant { degree, seed: seed.to_string() });
        }
        let orbit = match cache {
            Some(c) => c.orbit(rs, seed, cap)?,
            None => rs.weyl_orbit(seed, cap)?,
        };
        let label = format!("orbit power sum, degree {degree}, seed {seed}");
        Ok(InvariantSpec {
            degree,
            body: InvariantBody::OrbitPowerSum { seed: seed.clone(), orbit },
            scale: Q::one(),
            label,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn body(&self) -> &InvariantBody {
        &self.body
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same invariant multiplied by a nonzero constant.
    pub fn scaled(&self, c: &Q) -> InvariantSpec {
        assert!(!c.is_zero(), "scaling by zero");
        InvariantSpec { scale: &self.scale * c, ..self.clone() }
    }

    pub fn evaluate(&self, x: &CartanVec) -> Q {
        let raw = match &self.body {
            InvariantBody::Explicit(p) => p.evaluate(x.coords()),
            InvariantBody::OrbitPowerSum { orbit, .. } => {
                orbit.iter().fold(Q::zero(), |acc, v| acc + num_traits::pow(pair(v, x), self.degree as usize))
            }
        };
        raw * &self.scale
    }

    /// Symbolic form of the invariant. For orbit power sums this expands
    /// every `<v, x>^d`; only meant for small ranks.
    pub fn to_polynomial(&self) -> SparsePolynomial {
        let p = match &self.body {
            InvariantBody::Explicit(p) => p.clone(),
            InvariantBody::OrbitPowerSum { orbit, .. } => {
                let n = orbit.first().map_or(0, Vector::dim);
                orbit.iter().fold(SparsePolynomial::zero(n), |acc, v| {
                    acc.add(&SparsePolynomial::linear_form(v.coords()).pow(self.degree))
                })
            }
        };
        p.scale(&self.scale)
    }
}

impl fmt::Display for InvariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self.label)
    }
}

/// Ordered generators of `S(h*)^W`, degrees weakly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    specs: Vec<InvariantSpec>,
    independent: Option<bool>,
}

impl GeneratorSet {
    pub fn new(specs: Vec<InvariantSpec>) -> GeneratorSet {
        assert!(specs.windows(2).all(|w| w[0].degree <= w[1].degree), "degrees must be weakly increasing");
        GeneratorSet { specs, independent: None }
    }

    pub fn specs(&self) -> &[InvariantSpec] {
        &self.specs
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.specs.iter().map(InvariantSpec::degree).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.specs.iter().map(|s| s.label.clone()).collect()
    }

    /// Result of the runtime independence check, once it has run.
    pub fn independence(&self) -> Option<bool> {
        self.independent
    }

    pub(crate) fn set_independence(&mut self, ok: bool) {
        self.independent = Some(ok);
    }

    pub fn map_specs(&self, f: impl Fn(usize, &InvariantSpec) -> InvariantSpec) -> GeneratorSet {
        GeneratorSet::new(self.specs.iter().enumerate().map(|(i, s)| f(i, s)).collect())
    }
}

/// Power sums for `A`, even power sums for `B`/`C`, even power sums plus the
/// Pfaffian `x_1 ... x_l` for `D` (placed before an even power sum of the
/// same degree).
pub fn classical_generators(t: LieType) -> Result<GeneratorSet> {
    let n = t.rank();
    let dim = t.ambient_dim();
    let power = |d: u32| InvariantSpec::explicit(SparsePolynomial::power_sum(dim, d), format!("sum x_i^{d}"));
    let specs = match t.family() {
        Family::A => (2..=n as u32 + 1).map(power).collect::<Result<Vec<_>>>()?,
        Family::B | Family::C => (1..=n as u32).map(|i| power(2 * i)).collect::<Result<Vec<_>>>()?,
        Family::D => {
            let pfaffian = SparsePolynomial::from_terms(dim, [(vec![1; dim], Q::one())]);
            let pfaffian = InvariantSpec::explicit(pfaffian, "x_1 x_2 ... x_l (pfaffian)")?;
            let mut specs: Vec<InvariantSpec> = (1..n as u32).map(|i| power(2 * i)).collect::<Result<_>>()?;
            let pos = specs.iter().position(|s| s.degree >= n as u32).unwrap_or(specs.len());
            specs.insert(pos, pfaffian);
            specs
        }
        _ => return Err(Error::UnsupportedFamily { family: "classical", lie_type: t }),
    };
    Ok(GeneratorSet::new(specs))
}

/// The explicit `G_2` pair
/// `p1 = x^2 + y^2`, `p2 = 33x^6 + 27y^6 + 45x^4y^2 + 135x^2y^4`
/// in an orthonormal frame `x = a1v / sqrt 2`, `y = sqrt(2/3)(a2v + 3/2 a1v)`.
/// Writing `X = a a1v + b a2v` gives `x^2 = (2a - 3b)^2 / 2` and
/// `y^2 = 3b^2 / 2`, so both polynomials are rational in the coroot
/// coordinates `(a, b)`.
pub fn g2_generators() -> GeneratorSet {
    let a = SparsePolynomial::var(2, 0);
    let b = SparsePolynomial::var(2, 1);
    let u = a.scale(&q(2)).add(&b.scale(&q(-3))).pow(2);
    let w = b.pow(2).scale(&q(3));
    let p1 = u.add(&w).scale(&q_frac(1, 2));
    let p2 = u
        .pow(3)
        .scale(&q(33))
        .add(&w.pow(3).scale(&q(27)))
        .add(&u.pow(2).mul(&w).scale(&q(45)))
        .add(&u.mul(&w.pow(2)).scale(&q(135)))
        .scale(&q_frac(1, 8));
    GeneratorSet::new(vec![
        InvariantSpec::explicit(p1, "x^2 + y^2").expect("homogeneous"),
        InvariantSpec::explicit(p2, "33x^6 + 27y^6 + 45x^4y^2 + 135x^2y^4").expect("homogeneous"),
    ])
}

/// One orbit power sum per exponent `k`, of degree `k + 1`. With an explicit
/// `seed_weight` every spec uses that fundamental weight. Otherwise the
/// fundamental weight with the smallest orbit is used, and a second spec of
/// a repeated degree is seeded by the last fundamental weight instead (a
/// single orbit gives the same polynomial twice).
pub fn orbit_generators(
    rs: &RootSystem,
    seed_weight: Option<usize>,
    cap: usize,
    cache: Option<&OrbitCache>,
) -> Result<GeneratorSet> {
    let weights = rs.fundamental_weights();
    let seed_at = |idx: usize| weights.get(idx).ok_or(Error::InvalidSeedWeight { index: idx + 1, rank: rs.rank() });
    let Some(idx) = seed_weight else {
        let first = seed_at(rs.lie_type().minimal_orbit_weight())?;
        let other = seed_at(rs.rank() - 1)?;
        let exps = rs.exponents();
        let specs = exps
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let seed = if i > 0 && exps[i - 1] == *k { other } else { first };
                InvariantSpec::orbit_power_sum(rs, seed, k + 1, cap, cache)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(GeneratorSet::new(specs));
    };
    orbit_generators_from_seed(rs, seed_at(idx)?, cap, cache)
}

pub fn orbit_generators_from_seed(
    rs: &RootSystem,
    seed: &WeightVec,
    cap: usize,
    cache: Option<&OrbitCache>,
) -> Result<GeneratorSet> {
    let specs = rs
        .exponents()
        .iter()
        .map(|k| InvariantSpec::orbit_power_sum(rs, seed, k + 1, cap, cache))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet::new(specs))
}

/// `dp(x) = sum_i dp/dx_i (x) e*_i`, projected off the center for type `A`.
pub fn differential_at(spec: &InvariantSpec, x: &CartanVec, t: LieType) -> Result<WeightVec> {
    if x.dim() != t.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: t.ambient_dim(), got: x.dim() });
    }
    let raw = match &spec.body {
        InvariantBody::Explicit(p) => {
            if p.nvars() != x.dim() {
                return Err(Error::DimensionMismatch { expected: p.nvars(), got: x.dim() });
            }
            WeightVec::new(p.gradient_at(x.coords()))
        }
        InvariantBody::OrbitPowerSum { orbit, .. } => {
            let d = spec.degree as usize;
            let mut acc = WeightVec::zero(x.dim());
            for v in orbit {
                let c = num_traits::pow(pair(v, x), d - 1);
                if !c.is_zero() {
                    acc = acc.add_scaled(&c, v);
                }
            }
            acc.scale(&q(spec.degree as i64))
        }
    };
    Ok(project_to_h(&raw.scale(&spec.scale), t))
}

/// `Dp(x) = B_flat(dp(x))`, an element of `h`.
#[allow(non_snake_case)]
pub fn D_at(spec: &InvariantSpec, x: &CartanVec, rs: &RootSystem) -> Result<CartanVec> {
    let dp = differential_at(spec, x, rs.lie_type())?;
    Ok(project_to_h(&rs.form().b_flat(&dp)?, rs.lie_type()))
}

/// `D^p(lambda) = dp(B_flat(lambda))`, an element of `h*`, the Cartan
/// subalgebra of the Langlands dual.
#[allow(non_snake_case)]
pub fn Dhat_at(spec: &InvariantSpec, lambda: &WeightVec, rs: &RootSystem) -> Result<WeightVec> {
    let x = rs.form().b_flat(lambda)?;
    differential_at(spec, &x, rs.lie_type())
}

/// Removes the component along `(1, ..., 1)` for type `A`; identity
/// otherwise.
pub fn project_to_h<S>(v: &Vector<S>, t: LieType) -> Vector<S> {
    if t.family() != Family::A || v.dim() != t.ambient_dim() {
        return v.clone();
    }
    let n = v.dim() as i64;
    let mean = v.coords().iter().fold(Q::zero(), |acc, c| acc + c) / q(n);
    Vector::new(v.coords().iter().map(|c| c - &mean).collect())
}
