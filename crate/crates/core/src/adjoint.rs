//! Certification through the adjoint action of the principal nilpotent.
//!
//! Only the positive nilpotent part `n+` is built. With `h` in the
//! simple-coroot basis and `n+` in a Chevalley basis graded by height,
//! `ad(e_0)` is an integer matrix from each layer to the next:
//! `[e_0, h] = -sum_i alpha_i(h) e_i` and
//! `[e_0, e_beta] = sum_i N(alpha_i, beta) e_{alpha_i + beta}`.
//!
//! Structure constants come from the extraspecial-pair recursion: for each
//! non-simple positive root `xi` the special pair `(alpha, beta)` with the
//! earliest `alpha` gets `N = +-(p + 1)`, and every other pair is forced by
//! the Chevalley relations.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::linalg::{q, rank_integer, CartanVec, Matrix, Q};
use crate::principal::PrincipalBasis;
use crate::rootsys::RootSystem;

/// `[e_{alpha_i}, e_beta] = n * e_target` for simple `alpha_i` and positive
/// `beta`, plus the same data for every positive pair.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    simple: HashMap<(usize, usize), (usize, i64)>,
    positive: HashMap<(usize, usize), (usize, i64)>,
    /// Positive-root indices by height; `layers[k]` holds height `k + 1`.
    layers: Vec<Vec<usize>>,
    /// Position of each positive root inside its layer.
    slot: Vec<usize>,
    rank: usize,
}

impl StructureConstants {
    /// `N(alpha_i, beta)` and the index of `alpha_i + beta`, if it is a root.
    pub fn simple_bracket(&self, i: usize, beta: usize) -> Option<(usize, i64)> {
        self.simple.get(&(i, beta)).copied()
    }

    /// `[e_a, e_b]` for positive roots `a`, `b`.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        self.positive.get(&(a, b)).copied()
    }

    pub fn simple_table(&self) -> impl Iterator<Item = (&(usize, usize), &(usize, i64))> {
        self.simple.iter()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

struct Recursion<'a> {
    rs: &'a RootSystem,
    gram: Matrix,
    extraspecial: HashMap<usize, (usize, usize)>,
    signs: Vec<i64>,
    memo: RefCell<HashMap<(usize, usize), i64>>,
}

impl<'a> Recursion<'a> {
    fn index(&self, c: &[i64]) -> Option<usize> {
        self.rs.positive_root_index(c)
    }

    fn is_root(&self, c: &[i64]) -> bool {
        self.index(c).is_some() || self.index(&neg(c)).is_some()
    }

    fn norm(&self, c: &[i64]) -> Q {
        let v: Vec<Q> = c.iter().map(|&x| q(x)).collect();
        self.gram.bilinear(&v, &v)
    }

    /// `max { k : b - k a is a root }`
    fn p(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut k = 0;
        let mut cur = b.to_vec();
        loop {
            cur = sub(&cur, a);
            if self.is_root(&cur) {
                k += 1;
            } else {
                return k;
            }
        }
    }

    /// `N(a, b)` for arbitrary roots with `a + b` a root.
    fn n(&self, a: &[i64], b: &[i64]) -> Q {
        let c = add(a, b);
        if !self.is_root(&c) {
            return Q::zero();
        }
        match (is_positive(a), is_positive(b)) {
            (true, true) => q(self.n_positive(self.index(a).unwrap(), self.index(b).unwrap())),
            (false, false) => -self.n(&neg(a), &neg(b)),
            (false, true) => -self.n(b, a),
            (true, false) => {
                if is_positive(&c) {
                    self.norm(&c) / self.norm(a) * -self.n(&neg(b), &c)
                } else {
                    self.norm(&c) / self.norm(b) * self.n(&neg(&c), a)
                }
            }
        }
    }

    fn n_positive(&self, ia: usize, ib: usize) -> i64 {
        if let Some(&v) = self.memo.borrow().get(&(ia, ib)) {
            return v;
        }
        let v = if ia > ib {
            -self.n_positive(ib, ia)
        } else {
            let roots = self.rs.positive_roots();
            let (a, b) = (&roots[ia].coeffs, &roots[ib].coeffs);
            let xi = add(a, b);
            let ix = self.index(&xi).expect("caller checked a + b is a root");
            let (ea, eb) = self.extraspecial[&ix];
            let (alpha, beta) = (&roots[ea].coeffs, &roots[eb].coeffs);
            let n_ext = self.signs[ix] * (self.p(alpha, beta) + 1);
            if (ia, ib) == (ea, eb) {
                n_ext
            } else {
                let (gamma, delta) = (a, b);
                let mut sum = Q::zero();
                let bg = sub(beta, gamma);
                if self.is_root(&bg) {
                    sum += self.n(beta, &neg(gamma)) * self.n(alpha, &neg(delta)) / self.norm(&bg);
                }
                let ag = sub(alpha, gamma);
                if self.is_root(&ag) {
                    sum += self.n(&neg(gamma), alpha) * self.n(beta, &neg(delta)) / self.norm(&ag);
                }
                let val = self.norm(&xi) / q(n_ext) * sum;
                assert!(val.is_integer(), "non-integral structure constant");
                val.to_integer().to_i64().expect("small structure constant")
            }
        };
        self.memo.borrow_mut().insert((ia, ib), v);
        v
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn is_positive(a: &[i64]) -> bool {
    a.iter().all(|&x| x >= 0)
}

/// Structure constants with every extraspecial sign `+1`.
pub fn positive_structure_constants(rs: &RootSystem) -> StructureConstants {
    positive_structure_constants_with_signs(rs, |_| false)
}

/// Same, with the extraspecial sign of the positive root at index `i`
/// flipped whenever `flip(i)` holds.
pub fn positive_structure_constants_with_signs(rs: &RootSystem, flip: impl Fn(usize) -> bool) -> StructureConstants {
    let roots = rs.positive_roots();
    let np = roots.len();
    let mut extraspecial = HashMap::new();
    for ia in 0..np {
        for ib in ia + 1..np {
            if let Some(ix) = rs.positive_root_index(&add(&roots[ia].coeffs, &roots[ib].coeffs)) {
                extraspecial.entry(ix).or_insert((ia, ib));
            }
        }
    }
    let rec = Recursion {
        rs,
        gram: rs.root_gram(),
        extraspecial,
        signs: (0..np).map(|i| if flip(i) { -1 } else { 1 }).collect(),
        memo: RefCell::new(HashMap::new()),
    };
    let mut positive = HashMap::new();
    for ia in 0..np {
        for ib in 0..np {
            if let Some(ix) = rs.positive_root_index(&add(&roots[ia].coeffs, &roots[ib].coeffs)) {
                positive.insert((ia, ib), (ix, rec.n_positive(ia, ib)));
            }
        }
    }
    let simple = positive.iter().filter(|((a, _), _)| roots[*a].height == 1).map(|(&(a, b), &v)| {
        let i = roots[a].coeffs.iter().position(|&c| c == 1).expect("simple root");
        ((i, b), v)
    });
    let simple = simple.collect();

    let max_h = rs.max_height() as usize;
    let mut layers = vec![Vec::new(); max_h];
    let mut slot = vec![0; np];
    for (i, r) in roots.iter().enumerate() {
        let layer = &mut layers[r.height as usize - 1];
        slot[i] = layer.len();
        layer.push(i);
    }
    StructureConstants { simple, positive, layers, slot, rank: rs.rank() }
}

/// Integer vector on one layer of the grading: layer 0 is `h` (coroot
/// coordinates), layer `k >= 1` the root vectors of height `k`.
pub type LayerVec = Vec<BigInt>;

/// One application of `ad(e_0)`, from layer `k` to layer `k + 1`.
pub fn apply_ad_e0(rs: &RootSystem, sc: &StructureConstants, k: usize, v: &[BigInt]) -> LayerVec {
    let r = rs.rank();
    if k == 0 {
        let cartan = rs.cartan();
        // [e_0, a_j^vee] = -sum_i <alpha_i, a_j^vee> e_i
        return (0..r).map(|i| -(0..r).fold(BigInt::zero(), |acc, j| acc + &v[j] * cartan[j][i])).collect();
    }
    let Some(target_layer) = sc.layers.get(k) else {
        return Vec::new();
    };
    let mut out = vec![BigInt::zero(); target_layer.len()];
    for (pos, &beta) in sc.layers[k - 1].iter().enumerate() {
        if v[pos].is_zero() {
            continue;
        }
        for i in 0..r {
            if let Some((target, n)) = sc.simple_bracket(i, beta) {
                out[sc.slot[target]] += &v[pos] * n;
            }
        }
    }
    out
}

/// `ad(e_0)^m h`, landing in layer `m` (empty once `m` exceeds the highest
/// root's height).
pub fn ad_e0_power(rs: &RootSystem, sc: &StructureConstants, m: usize, h: &[BigInt]) -> LayerVec {
    let mut v = h.to_vec();
    for k in 0..m {
        if v.is_empty() {
            break;
        }
        v = apply_ad_e0(rs, sc, k, &v);
    }
    v
}

pub fn in_kernel(rs: &RootSystem, sc: &StructureConstants, m: usize, h: &[BigInt]) -> bool {
    ad_e0_power(rs, sc, m, h).iter().all(Zero::is_zero)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelDim {
    pub dim: usize,
    /// `m` exceeds `1 + max exponent`; the kernel is all of `h`.
    pub saturated: bool,
}

/// `dim { h : ad(e_0)^m h = 0 }`, exactly.
pub fn ad_e0_kernel_dims(rs: &RootSystem, sc: &StructureConstants, m: usize) -> KernelDim {
    assert!(m >= 1, "power must be at least 1");
    let r = rs.rank();
    let max_exp = *rs.exponents().last().expect("rank >= 1") as usize;
    let columns: Vec<LayerVec> = (0..r)
        .map(|j| {
            let mut e = vec![BigInt::zero(); r];
            e[j] = BigInt::from(1);
            ad_e0_power(rs, sc, m, &e)
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    let matrix: Vec<Vec<BigInt>> = (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    KernelDim { dim: r - rank_integer(matrix), saturated: m > max_exp + 1 }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalTriple {
    /// `h_0 = 2 rho^vee`, ambient coordinates.
    pub h0: CartanVec,
    /// `h_0` in simple-coroot coordinates.
    pub h0_coroot: Vec<Q>,
    /// `f_0 = sum_i c_i f_i` with `B(e_i, f_i) = 1`.
    pub c: Vec<Q>,
}

/// `h_0 = 2 rho^vee`, `e_0 = sum e_i`, `f_0 = sum c_i f_i` with
/// `sum_i c_i B_flat(alpha_i) = 2 rho^vee`.
pub fn principal_triple(rs: &RootSystem) -> PrincipalTriple {
    let h0 = rs.rho_check().scale(&q(2));
    let flats: Vec<Vec<Q>> = rs
        .simple_roots()
        .iter()
        .map(|a| {
            crate::invariants::project_to_h(&rs.form().b_flat(a).expect("ambient dim"), rs.lie_type()).into_coords()
        })
        .collect();
    let system = Matrix::from_rows(flats).transpose();
    let target = crate::invariants::project_to_h(&h0, rs.lie_type());
    let c = system.solve(target.coords()).expect("simple types give a nonsingular system");
    for a in rs.simple_roots() {
        assert_eq!(crate::linalg::pair(a, &h0), q(2), "alpha_j(h_0) = 2");
    }
    PrincipalTriple { h0_coroot: rs.coroot_coordinates(&h0), h0, c }
}

/// `ad(e_0) ad(f_0) h = sum_i c_i alpha_i(h) B_flat(alpha_i)`, in coroot
/// coordinates. On `V_k` intersected with `h` this is multiplication by
/// `k (k + 1)`.
pub fn ad_e0_ad_f0(rs: &RootSystem, triple: &PrincipalTriple, h: &[Q]) -> Vec<Q> {
    let r = rs.rank();
    let cartan = rs.cartan();
    let gram = rs.root_gram();
    (0..r)
        .map(|i| {
            let alpha_h = (0..r).fold(Q::zero(), |acc, k| acc + &h[k] * q(cartan[k][i]));
            // B_flat(alpha_i) = (B(alpha_i, alpha_i) / 2) alpha_i^vee
            &triple.c[i] * alpha_h * &gram[(i, i)] / q(2)
        })
        .collect()
}

/// `[2 k_i + 1]` sorted; they sum to `dim g`.
pub fn module_dimensions(rs: &RootSystem) -> Vec<usize> {
    let mut d: Vec<usize> = rs.exponents().iter().map(|&k| 2 * k as usize + 1).collect();
    d.sort_unstable();
    d
}

/// Diagram automorphism of `D_l` on every layer: on `h` it swaps the last two
/// coroots; on root vectors `sigma(e_beta) = s(beta) e_{sigma beta}`, with the
/// signs `s` propagated up from `s = 1` on simple root vectors by
/// `sigma [e_i, e_beta] = [e_{sigma i}, sigma e_beta]`. Returns whether
/// `sigma` commutes with `ad(e_0)` on every layer.
pub fn sigma_commutes_with_ad_e0(rs: &RootSystem, sc: &StructureConstants) -> bool {
    let r = rs.rank();
    let perm = |i: usize| match i {
        _ if i == r - 2 => r - 1,
        _ if i == r - 1 => r - 2,
        _ => i,
    };
    let roots = rs.positive_roots();
    let sigma_root = |b: usize| {
        let c = &roots[b].coeffs;
        let mut s = c.clone();
        s.swap(r - 2, r - 1);
        rs.positive_root_index(&s).expect("sigma permutes roots")
    };
    let mut sign = vec![0i64; roots.len()];
    for layer in &sc.layers {
        for &b in layer {
            if roots[b].height == 1 {
                sign[b] = 1;
                continue;
            }
            let (i, beta) = sc
                .simple
                .iter()
                .find(|(_, &(t, _))| t == b)
                .map(|(&(i, beta), _)| (i, beta))
                .expect("every non-simple root is alpha_i + beta");
            let (_, n) = sc.simple_bracket(i, beta).unwrap();
            let (_, n_sigma) = sc.simple_bracket(perm(i), sigma_root(beta)).unwrap();
            // sigma(n e_b) = n_sigma s(beta) e_{sigma b}
            sign[b] = n_sigma * sign[beta] / n;
        }
    }
    let sigma_layer = |k: usize, v: &[BigInt]| -> LayerVec {
        if k == 0 {
            return (0..r).map(|i| v[perm(i)].clone()).collect();
        }
        let mut out = vec![BigInt::zero(); v.len()];
        for (pos, &b) in sc.layers[k - 1].iter().enumerate() {
            let sb = sigma_root(b);
            out[sc.slot[sb]] = &v[pos] * sign[b];
        }
        out
    };
    for k in 0..sc.layers.len() {
        let width = if k == 0 { r } else { sc.layers[k - 1].len() };
        for j in 0..width {
            let mut e = vec![BigInt::zero(); width];
            e[j] = BigInt::from(1);
            let lhs = sigma_layer(k + 1, &apply_ad_e0(rs, sc, k, &e));
            let rhs = apply_ad_e0(rs, sc, k, &sigma_layer(k, &e));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorVerdict {
    pub exponent: u32,
    /// `h in Ker ad(e_0)^{k+1}`
    pub in_kernel_next: bool,
    /// `h in Ker ad(e_0)^k`; must be false
    pub in_kernel_k: bool,
    /// `ad(e_0) ad(f_0) h = k (k + 1) h`
    pub casimir: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaVerdict {
    /// Index of the `sigma = -1` vector.
    pub minus_index: usize,
    pub minus_spans_last_axis: bool,
    pub others_in_plus_space: bool,
    pub commutes_with_ad_e0: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertReport {
    pub vectors: Vec<VectorVerdict>,
    /// `B(h_i, h_j)` in the ambient form.
    pub gram: Vec<Vec<Q>>,
    pub orthogonal: bool,
    pub labels_match_exponents: bool,
    pub module_dimensions: Vec<usize>,
    pub sigma: Option<SigmaVerdict>,
    pub failures: Vec<String>,
}

impl CertReport {
    pub fn certified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks a (non-dual) basis against the kernel filtration of `ad(e_0)`,
/// the `ad(e_0) ad(f_0)` eigenvalues, exact orthogonality and, for `D_l`
/// with `l` even, the `sigma` eigenspaces.
pub fn certify(pb: &PrincipalBasis, rs: &RootSystem, sc: &StructureConstants) -> CertReport {
    let mut failures = Vec::new();
    if pb.dual || pb.lie_type != rs.lie_type() {
        failures.push(format!(
            "basis for {}{} cannot be certified on {}",
            pb.lie_type,
            if pb.dual { " (dual)" } else { "" },
            rs.lie_type()
        ));
        return CertReport {
            vectors: Vec::new(),
            gram: Vec::new(),
            orthogonal: false,
            labels_match_exponents: false,
            module_dimensions: module_dimensions(rs),
            sigma: None,
            failures,
        };
    }
    if pb.vectors.len() != rs.rank() || pb.vectors.iter().any(|v| v.len() != rs.rank()) {
        failures.push(format!("expected {} vectors of length {}", rs.rank(), rs.rank()));
    }
    let labels_match_exponents = pb.exponent_labels == rs.exponents();
    if !labels_match_exponents {
        failures.push(format!("labels {:?} differ from exponents {:?}", pb.exponent_labels, rs.exponents()));
    }
    if !failures.is_empty() {
        return CertReport {
            vectors: Vec::new(),
            gram: Vec::new(),
            orthogonal: false,
            labels_match_exponents,
            module_dimensions: module_dimensions(rs),
            sigma: None,
            failures,
        };
    }

    let triple = principal_triple(rs);
    let rational = pb.rational_vectors();
    let mut vectors = Vec::new();
    for (i, (v, &k)) in pb.vectors.iter().zip(&pb.exponent_labels).enumerate() {
        let k_us = k as usize;
        let in_kernel_next = in_kernel(rs, sc, k_us + 1, v);
        let in_kernel_k = in_kernel(rs, sc, k_us, v);
        let eig = q(i64::from(k) * i64::from(k + 1));
        let casimir =
            ad_e0_ad_f0(rs, &triple, &rational[i]) == rational[i].iter().map(|x| x * &eig).collect::<Vec<_>>();
        if !in_kernel_next {
            failures.push(format!("vector {i} (exponent {k}) is not in Ker ad(e0)^{}", k + 1));
        }
        if in_kernel_k {
            failures.push(format!("vector {i} (exponent {k}) lies in Ker ad(e0)^{k}"));
        }
        if !casimir {
            failures
                .push(format!("vector {i} (exponent {k}) is not an ad(e0)ad(f0) eigenvector with eigenvalue {eig}"));
        }
        vectors.push(VectorVerdict { exponent: k, in_kernel_next, in_kernel_k, casimir });
    }

    let cg = rs.coroot_gram();
    let gram: Vec<Vec<Q>> = rational.iter().map(|a| rational.iter().map(|b| cg.bilinear(a, b)).collect()).collect();
    let mut orthogonal = true;
    for (i, row) in gram.iter().enumerate() {
        for (j, b) in row[..i].iter().enumerate() {
            if !b.is_zero() {
                orthogonal = false;
                failures.push(format!("vectors {j} and {i} are not orthogonal (B = {b})"));
            }
        }
    }

    let sigma = rs.lie_type().is_d_even().then(|| {
        let l = rs.rank();
        let minus_index = l / 2 - 1;
        let ambient = pb.ambient_vectors(rs);
        let last = ambient[0].len() - 1;
        let minus_spans_last_axis =
            ambient[minus_index][last] != Q::zero() && ambient[minus_index][..last].iter().all(Zero::is_zero);
        let others_in_plus_space =
            ambient.iter().enumerate().filter(|(i, _)| *i != minus_index).all(|(_, v)| v[last].is_zero());
        let commutes_with_ad_e0 = sigma_commutes_with_ad_e0(rs, sc);
        if !minus_spans_last_axis {
            failures.push(format!("vector {minus_index} is not a sigma = -1 eigenvector"));
        }
        if !others_in_plus_space {
            failures.push("a vector other than the sigma = -1 one leaves the sigma = +1 eigenspace".into());
        }
        if !commutes_with_ad_e0 {
            failures.push("sigma does not commute with ad(e0)".into());
        }
        SigmaVerdict { minus_index, minus_spans_last_axis, others_in_plus_space, commutes_with_ad_e0 }
    });

    CertReport {
        vectors,
        gram,
        orthogonal,
        labels_match_exponents,
        module_dimensions: module_dimensions(rs),
        sigma,
        failures,
    }
}

/// `|N(alpha, beta)| = p + 1` for every simple-first entry.
pub fn check_chevalley_integrality(rs: &RootSystem, sc: &StructureConstants) -> bool {
    let roots = rs.positive_roots();
    let is_root = |c: &[i64]| rs.positive_root_index(c).is_some() || rs.positive_root_index(&neg(c)).is_some();
    sc.positive.iter().all(|(&(a, b), &(_, n))| {
        let (ca, cb) = (&roots[a].coeffs, &roots[b].coeffs);
        let mut p = 0;
        let mut cur = cb.clone();
        loop {
            cur = sub(&cur, ca);
            if is_root(&cur) {
                p += 1;
            } else {
                break;
            }
        }
        n.abs() == p + 1
    })
}

/// Jacobi identity on `n+`, checked on every triple of positive roots.
pub fn check_jacobi(rs: &RootSystem, sc: &StructureConstants) -> bool {
    let np = rs.positive_roots().len();
    let br = |a: usize, b: usize| sc.bracket(a, b);
    // [[x, y], z] as (index, coefficient)
    let nested = |x: usize, y: usize, z: usize| -> Option<(usize, i64)> {
        let (xy, n1) = br(x, y)?;
        let (t, n2) = br(xy, z)?;
        Some((t, n1 * n2))
    };
    for a in 0..np {
        for b in 0..np {
            for c in 0..np {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    if let Some((t, n)) = nested(x, y, z) {
                        *acc.entry(t).or_insert(0) += n;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// `beta(h_0) = 2 ht(beta)` for every positive root.
pub fn check_h0_grading(rs: &RootSystem, triple: &PrincipalTriple) -> bool {
    rs.positive_roots().iter().all(|r| crate::linalg::pair(&r.weight, &triple.h0) == q(2 * i64::from(r.height)))
}
