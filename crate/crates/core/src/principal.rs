//! Principal bases of `h` and of the Cartan subalgebra `h*` of the
//! Langlands dual, obtained by Gram-Schmidt from the differentials of a
//! generator set evaluated at `rho^vee` (resp. `rho`).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cache::OrbitCache;
use crate::error::{Error, Result};
use crate::invariants::{
    classical_generators, g2_generators, orbit_generators, orbit_generators_from_seed, D_at, Dhat_at, GeneratorSet,
    InvariantBody,
};
use crate::linalg::{primitive_integer, rank_rational, CartanVec, HStar, Vector, WeightVec, H, Q};
use crate::rootsys::{build_root_system, BilinearForm, Family, LieType, RootSystem, DEFAULT_ORBIT_CAP};

/// A symmetric form usable on vectors of one space.
pub trait InnerProduct<S> {
    fn inner(&self, a: &Vector<S>, b: &Vector<S>) -> Q;
}

impl InnerProduct<H> for BilinearForm {
    fn inner(&self, a: &CartanVec, b: &CartanVec) -> Q {
        self.cartan(a, b)
    }
}

impl InnerProduct<HStar> for BilinearForm {
    fn inner(&self, a: &WeightVec, b: &WeightVec) -> Q {
        self.dual(a, b)
    }
}

/// Projection coefficients `lambda_ij = B(v_i, u_j) / B(u_j, u_j)` for
/// `j < i`, and the pivot norms `B(u_j, u_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoReport {
    pub coefficients: Vec<Vec<Q>>,
    pub pivot_norms: Vec<Q>,
}

/// Classical Gram-Schmidt without normalization; stays rational.
pub fn gram_schmidt<S>(vs: &[Vector<S>], form: &impl InnerProduct<S>) -> Result<(Vec<Vector<S>>, OrthoReport)> {
    let mut us: Vec<Vector<S>> = Vec::with_capacity(vs.len());
    let mut report = OrthoReport { coefficients: Vec::new(), pivot_norms: Vec::new() };
    for (i, v) in vs.iter().enumerate() {
        let mut u = v.clone();
        let mut lambdas = Vec::with_capacity(i);
        for (uj, nj) in us.iter().zip(&report.pivot_norms) {
            let lambda = form.inner(v, uj) / nj;
            if !lambda.is_zero() {
                u = u.add_scaled(&-lambda.clone(), uj);
            }
            lambdas.push(lambda);
        }
        let norm = form.inner(&u, &u);
        if u.is_zero() || norm.is_zero() {
            return Err(Error::DependentInput { index: i });
        }
        report.coefficients.push(lambdas);
        report.pivot_norms.push(norm);
        us.push(u);
    }
    Ok((us, report))
}

/// Clears denominators, divides by the content and makes the first nonzero
/// coordinate positive.
pub fn primitive_normalize(v: &[Q]) -> Result<Vec<BigInt>> {
    primitive_integer(v).ok_or(Error::ZeroVector)
}

/// Splits a `sigma`-invariant plane of a `D_l` (`l` even) Cartan into the
/// `sigma = -1` line (spanned by the last coordinate vector) and the
/// `sigma = +1` line, returned in that order.
pub fn sigma_refine<S>(pair: (&Vector<S>, &Vector<S>), t: LieType) -> Result<(Vector<S>, Vector<S>)> {
    if !t.is_d_even() {
        return Err(Error::NotDEven(t));
    }
    let sigma = |v: &Vector<S>| {
        let mut w = v.clone();
        let last = w.dim() - 1;
        w[last] = -w[last].clone();
        w
    };
    let (u, w) = pair;
    let (su, sw) = (sigma(u), sigma(w));
    let span = |vs: &[&Vector<S>]| rank_rational(vs.iter().map(|v| v.coords().to_vec()).collect());
    if span(&[u, w]) != 2 || span(&[u, w, &su, &sw]) != 2 {
        return Err(Error::NotSigmaInvariant);
    }
    let pick = |a: Vector<S>, b: Vector<S>| if a.is_zero() { b } else { a };
    let minus = pick(u - &su, w - &sw);
    let plus = pick(u + &su, w + &sw);
    if minus.is_zero() || plus.is_zero() {
        return Err(Error::NotSigmaInvariant);
    }
    Ok((minus, plus))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Explicit formulas: classical families and the `G_2` pair.
    Classical,
    /// Weyl-orbit power sums.
    Orbit,
    /// Explicit formulas where available, orbit sums for `E` and `F`.
    #[default]
    Auto,
}

#[derive(Debug, Clone)]
pub struct BasisOptions {
    pub route: Route,
    /// 0-based fundamental weight seeding the orbit route.
    pub seed_weight: Option<usize>,
    pub orbit_cap: usize,
    pub allow_e8: bool,
    pub cache: Option<OrbitCache>,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions {
            route: Route::Auto,
            seed_weight: None,
            orbit_cap: DEFAULT_ORBIT_CAP,
            allow_e8: false,
            cache: None,
        }
    }
}

impl BasisOptions {
    pub fn with_route(route: Route) -> Self {
        BasisOptions { route, ..Default::default() }
    }
}

pub fn generators_for(rs: &RootSystem, opts: &BasisOptions) -> Result<GeneratorSet> {
    let t = rs.lie_type();
    if t.family() == Family::E && t.rank() == 8 && !opts.allow_e8 {
        return Err(Error::E8NotAllowed(t, opts.orbit_cap));
    }
    let route = match opts.route {
        Route::Auto if t.family().is_classical() || t.family() == Family::G => Route::Classical,
        Route::Auto => Route::Orbit,
        r => r,
    };
    match route {
        Route::Classical if t.family() == Family::G => Ok(g2_generators()),
        Route::Classical => classical_generators(t),
        _ => orbit_generators(rs, opts.seed_weight, opts.orbit_cap, opts.cache.as_ref()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalBasis {
    pub lie_type: LieType,
    /// Basis of the dual Cartan `h*`, written in simple-root coordinates.
    pub dual: bool,
    /// Primitive integer vectors: simple-coroot coordinates for `h`,
    /// simple-root coordinates for `h*`.
    pub vectors: Vec<Vec<BigInt>>,
    pub exponent_labels: Vec<u32>,
    pub generator_provenance: Vec<String>,
    pub sigma_refined: bool,
}

impl PrincipalBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Rational copies of the coordinate vectors.
    pub fn rational_vectors(&self) -> Vec<Vec<Q>> {
        self.vectors.iter().map(|v| v.iter().map(|c| Q::from_integer(c.clone())).collect()).collect()
    }

    /// Ambient coordinates of each vector (as an element of `h`, or of `h*`
    /// for a dual basis).
    pub fn ambient_vectors(&self, rs: &RootSystem) -> Vec<Vec<Q>> {
        self.rational_vectors()
            .iter()
            .map(|c| {
                if self.dual {
                    rs.from_root_coordinates(c).into_coords()
                } else {
                    rs.from_coroot_coordinates(c).into_coords()
                }
            })
            .collect()
    }

    /// A dual basis of `g` re-expressed as a basis of the Cartan of the
    /// Langlands dual, in that type's simple-coroot coordinates.
    pub fn as_dual_type_basis(&self) -> PrincipalBasis {
        assert!(self.dual, "only dual bases can be transported");
        let perm = self.lie_type.dual_node_map();
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                let mut w = vec![BigInt::zero(); v.len()];
                for (i, c) in v.iter().enumerate() {
                    w[perm[i]] = c.clone();
                }
                primitive_integer(&w.into_iter().map(Q::from_integer).collect::<Vec<_>>()).expect("nonzero")
            })
            .collect();
        PrincipalBasis { lie_type: self.lie_type.langlands_dual(), dual: false, vectors, ..self.clone() }
    }
}

/// Everything computed on the way to a principal basis.
#[derive(Debug, Clone)]
pub struct BasisComputation<S> {
    pub basis: PrincipalBasis,
    /// `Dp_i(rho^vee)` (or `D^p_i(rho)`), in ambient coordinates.
    pub differentials: Vec<Vector<S>>,
    /// Gram-Schmidt output before refinement and normalization.
    pub orthogonal: Vec<Vector<S>>,
    pub report: OrthoReport,
    pub generators: GeneratorSet,
}

fn check_independence<S>(vs: &[Vector<S>], gens: &mut GeneratorSet, orbit_route: bool) -> Result<()> {
    let rows: Vec<Vec<Q>> = vs.iter().map(|v| v.coords().to_vec()).collect();
    let rank = rank_rational(rows.clone());
    gens.set_independence(rank == vs.len());
    if rank == vs.len() {
        return Ok(());
    }
    let index = (1..=rows.len()).find(|&k| rank_rational(rows[..k].to_vec()) < k).expect("rank deficit") - 1;
    let hint = if orbit_route {
        "The orbit of this seed does not see every generator direction; choose another seed weight or the classical route."
    } else {
        "The generator set is not algebraically independent."
    };
    Err(Error::Dependent {
        rank,
        expected: vs.len(),
        index: index + 1,
        label: gens.specs()[index].label().to_string(),
        hint: hint.into(),
    })
}

fn finish<S>(
    rs: &RootSystem,
    dual: bool,
    differentials: Vec<Vector<S>>,
    mut generators: GeneratorSet,
    form: &impl InnerProduct<S>,
    coords: impl Fn(&Vector<S>) -> Vec<Q>,
) -> Result<BasisComputation<S>> {
    let t = rs.lie_type();
    let orbit_route =
        generators.specs().iter().any(|s| matches!(s.body(), crate::invariants::InvariantBody::OrbitPowerSum { .. }));
    check_independence(&differentials, &mut generators, orbit_route)?;
    let (orthogonal, report) = gram_schmidt(&differentials, form)?;
    let mut refined = orthogonal.clone();
    let sigma_refined = t.is_d_even();
    if sigma_refined {
        let i = t.rank() / 2 - 1;
        let (minus, plus) = sigma_refine((&refined[i], &refined[i + 1]), t)?;
        refined[i] = minus;
        refined[i + 1] = plus;
    }
    let vectors = refined.iter().map(|v| primitive_normalize(&coords(v))).collect::<Result<Vec<_>>>()?;
    let basis = PrincipalBasis {
        lie_type: t,
        dual,
        vectors,
        exponent_labels: generators.degrees().iter().map(|d| d - 1).collect(),
        generator_provenance: generators.labels(),
        sigma_refined,
    };
    Ok(BasisComputation { basis, differentials, orthogonal, report, generators })
}

/// Gram-Schmidt of `{Dp_1(rho^vee), ..., Dp_r(rho^vee)}` for a given
/// generator set.
pub fn principal_basis_with(rs: &RootSystem, generators: GeneratorSet) -> Result<BasisComputation<H>> {
    let differentials = generators.specs().iter().map(|s| D_at(s, rs.rho_check(), rs)).collect::<Result<Vec<_>>>()?;
    finish(rs, false, differentials, generators, rs.form(), |v| rs.coroot_coordinates(v))
}

/// Gram-Schmidt of `{D^p_1(rho), ..., D^p_r(rho)}` in `h*`.
pub fn dual_principal_basis_with(rs: &RootSystem, generators: GeneratorSet) -> Result<BasisComputation<HStar>> {
    let differentials = generators.specs().iter().map(|s| Dhat_at(s, rs.rho(), rs)).collect::<Result<Vec<_>>>()?;
    finish(rs, true, differentials, generators, rs.form(), |v| rs.root_coordinates(v))
}

/// Runs `compute` on the generators chosen by `opts`. When the orbit route
/// was seeded by default and its differentials turn out dependent, it is
/// retried once with the orbit of `rho`; an explicitly chosen seed is never
/// replaced.
fn with_seed_fallback<T>(
    rs: &RootSystem,
    opts: &BasisOptions,
    compute: impl Fn(GeneratorSet) -> Result<T>,
) -> Result<T> {
    let gens = generators_for(rs, opts)?;
    let orbit = gens.specs().iter().any(|s| matches!(s.body(), InvariantBody::OrbitPowerSum { .. }));
    match compute(gens) {
        Err(Error::Dependent { .. }) if orbit && opts.seed_weight.is_none() => {
            compute(orbit_generators_from_seed(rs, rs.rho(), opts.orbit_cap, opts.cache.as_ref())?)
        }
        r => r,
    }
}

pub fn principal_computation(rs: &RootSystem, opts: &BasisOptions) -> Result<BasisComputation<H>> {
    with_seed_fallback(rs, opts, |gens| principal_basis_with(rs, gens))
}

pub fn dual_principal_computation(rs: &RootSystem, opts: &BasisOptions) -> Result<BasisComputation<HStar>> {
    with_seed_fallback(rs, opts, |gens| dual_principal_basis_with(rs, gens))
}

pub fn principal_basis_opts(t: LieType, opts: &BasisOptions) -> Result<PrincipalBasis> {
    Ok(principal_computation(&build_root_system(t), opts)?.basis)
}

pub fn dual_principal_basis_opts(t: LieType, opts: &BasisOptions) -> Result<PrincipalBasis> {
    Ok(dual_principal_computation(&build_root_system(t), opts)?.basis)
}

pub fn principal_basis(t: LieType) -> Result<PrincipalBasis> {
    principal_basis_opts(t, &BasisOptions::default())
}

pub fn dual_principal_basis(t: LieType) -> Result<PrincipalBasis> {
    dual_principal_basis_opts(t, &BasisOptions::default())
}

/// `B(h_i, h_j) = 0` for all `i != j`, exactly.
pub fn is_orthogonal(pb: &PrincipalBasis, rs: &RootSystem) -> bool {
    let gram = if pb.dual { rs.root_gram() } else { rs.coroot_gram() };
    let vs = pb.rational_vectors();
    (0..vs.len()).all(|i| (0..i).all(|j| gram.bilinear(&vs[i], &vs[j]).is_zero()))
}

/// Integer vector helper for tests and callers.
pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// True when `a` is a nonzero rational multiple of `b`.
pub fn proportional(a: &[BigInt], b: &[BigInt]) -> bool {
    let qa = Vector::<H>::new(a.iter().cloned().map(Q::from_integer).collect());
    let qb = Vector::<H>::new(b.iter().cloned().map(Q::from_integer).collect());
    qa.is_proportional(&qb)
}
