//! Root data for the simple types.
//!
//! Classical families use the usual orthonormal ambient coordinates
//! (`A_n` lives in `R^{n+1}` with the trace-zero hyperplane as `h*`). The
//! exceptional types use fundamental-weight coordinates on `h*`, so that
//! elements of `h` are written directly in the simple-coroot basis; the
//! form is fixed by the Gram matrix of the simple roots.
//!
//! In both cases `h` and `h*` pair by the coordinate dot product, and the
//! form on `h*` is a Gram matrix `G`; then `B_flat(lambda) = G lambda` and
//! the induced form on `h` is `G^{-1}`. Long roots have `B(a, a) = 2`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{pair, q, q_frac, CartanVec, Matrix, WeightVec, Q};

/// Default cap on Weyl orbit sizes.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient coordinate space.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Classical dimension formula for the Lie algebra.
    pub fn dimension(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Family::F => 52,
            Family::G => 14,
        }
    }

    /// Tabulated exponents, sorted.
    pub fn exponent_table(&self) -> Vec<u32> {
        let n = self.rank as u32;
        let mut e: Vec<u32> = match self.family {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i - 1).collect(),
            Family::D => (1..n).map(|i| 2 * i - 1).chain([n - 1]).collect(),
            Family::E => match n {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Family::F => vec![1, 5, 7, 11],
            Family::G => vec![1, 5],
        };
        e.sort_unstable();
        e
    }

    /// `D_l` with `l` even: the only types with a repeated exponent.
    pub fn is_d_even(&self) -> bool {
        self.family == Family::D && self.rank.is_multiple_of(2)
    }

    /// Cartan matrix transpose: `B_n <-> C_n`, everything else is fixed as
    /// an abstract type.
    pub fn langlands_dual(&self) -> LieType {
        let family = match self.family {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        };
        LieType { family, rank: self.rank }
    }

    /// Permutation `p` such that the simple coroot `alpha_i^vee` of this type
    /// is the simple root `p[i]` of the dual type in its own standard
    /// numbering.
    pub fn dual_node_map(&self) -> Vec<usize> {
        match self.family {
            Family::F | Family::G => (0..self.rank).rev().collect(),
            _ => (0..self.rank).collect(),
        }
    }

    /// Index (0-based) of the fundamental weight with the smallest Weyl orbit.
    pub fn minimal_orbit_weight(&self) -> usize {
        match (self.family, self.rank) {
            (Family::E, 7) => 6,
            (Family::E, 8) => 7,
            (Family::F, _) => 3,
            _ => 0,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieType> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(|| Error::ParseType(s.into()))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::ParseType(s.into()));
        }
        let rank = digits.parse().map_err(|_| Error::ParseType(s.into()))?;
        LieType::new(family, rank)
    }
}

/// Invariant symmetric form, stored as Gram matrices on `h*` and on `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
    gram_h: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<BilinearForm> {
        if !gram.is_symmetric() {
            return Err(Error::SingularForm);
        }
        let gram_h = gram.inverse().ok_or(Error::SingularForm)?;
        Ok(BilinearForm { gram, gram_h })
    }

    /// Gram matrix on `h*`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Gram matrix of the induced form on `h`.
    pub fn gram_h(&self) -> &Matrix {
        &self.gram_h
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn dual(&self, a: &WeightVec, b: &WeightVec) -> Q {
        self.gram.bilinear(a.coords(), b.coords())
    }

    pub fn cartan(&self, x: &CartanVec, y: &CartanVec) -> Q {
        self.gram_h.bilinear(x.coords(), y.coords())
    }

    pub fn b_flat(&self, lambda: &WeightVec) -> Result<CartanVec> {
        check_dim(self.dim(), lambda.dim())?;
        Ok(CartanVec::new(self.gram.mul_vec(lambda.coords())))
    }

    pub fn b_natural(&self, x: &CartanVec) -> Result<WeightVec> {
        check_dim(self.dim(), x.dim())?;
        Ok(WeightVec::new(self.gram_h.mul_vec(x.coords())))
    }
}

pub fn b_flat(lambda: &WeightVec, form: &BilinearForm) -> Result<CartanVec> {
    form.b_flat(lambda)
}

pub fn b_natural(x: &CartanVec, form: &BilinearForm) -> Result<WeightVec> {
    form.b_natural(x)
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coefficients on the simple roots.
    pub coeffs: Vec<i64>,
    pub height: u32,
    pub weight: WeightVec,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    simple_roots: Vec<WeightVec>,
    simple_coroots: Vec<CartanVec>,
    positive_roots: Vec<PositiveRoot>,
    root_index: HashMap<Vec<i64>, usize>,
    cartan: Vec<Vec<i64>>,
    form: BilinearForm,
    rho: WeightVec,
    rho_check: CartanVec,
    exponents: Vec<u32>,
}

/// Ambient simple roots and form for a type.
fn ambient_data(t: LieType) -> (Vec<WeightVec>, Matrix) {
    let n = t.rank();
    let dim = t.ambient_dim();
    let e = |i: usize| WeightVec::unit(dim, i);
    match t.family() {
        Family::A => ((0..n).map(|i| &e(i) - &e(i + 1)).collect(), Matrix::identity(dim)),
        Family::B | Family::C | Family::D => {
            let mut simple: Vec<WeightVec> = (0..n - 1).map(|i| &e(i) - &e(i + 1)).collect();
            let mut gram = Matrix::identity(dim);
            match t.family() {
                Family::B => simple.push(e(n - 1)),
                Family::C => {
                    simple.push(e(n - 1).scale(&q(2)));
                    for i in 0..dim {
                        gram[(i, i)] = q_frac(1, 2);
                    }
                }
                _ => {
                    simple[n - 2] = &e(n - 2) - &e(n - 1);
                    simple.push(&e(n - 2) + &e(n - 1));
                }
            }
            (simple, gram)
        }
        _ => {
            let s = exceptional_simple_gram(t);
            let sq = Matrix::from_rows(s);
            let d: Vec<Q> = (0..n).map(|i| sq[(i, i)].clone() / q(2)).collect();
            // a[k][i] = <alpha_i, alpha_k^vee> = B(alpha_k, alpha_i) / d_k
            let mut a = Matrix::zeros(n, n);
            for k in 0..n {
                for i in 0..n {
                    a[(k, i)] = sq[(k, i)].clone() / &d[k];
                }
            }
            // alpha_i in weight coordinates is column i of a.
            let simple = (0..n).map(|i| WeightVec::new((0..n).map(|k| a[(k, i)].clone()).collect())).collect();
            let a_inv = a.inverse().expect("Cartan matrix is invertible");
            let gram = a_inv.transpose().mul(&sq).mul(&a_inv);
            (simple, gram)
        }
    }
}

/// `B(alpha_i, alpha_j)` for the exceptional types, Bourbaki numbering
/// (except `G_2`, whose first simple root is the long one).
fn exceptional_simple_gram(t: LieType) -> Vec<Vec<Q>> {
    let n = t.rank();
    let mut s = vec![vec![Q::zero(); n]; n];
    let mut link = |i: usize, j: usize, v: Q| {
        s[i - 1][j - 1] = v.clone();
        s[j - 1][i - 1] = v;
    };
    match t.family() {
        Family::E => {
            link(1, 3, q(-1));
            link(2, 4, q(-1));
            for i in 3..n {
                link(i, i + 1, q(-1));
            }
            for (i, row) in s.iter_mut().enumerate() {
                row[i] = q(2);
            }
        }
        Family::F => {
            link(1, 2, q(-1));
            link(2, 3, q(-1));
            link(3, 4, q_frac(-1, 2));
            for (i, row) in s.iter_mut().enumerate() {
                row[i] = if i < 2 { q(2) } else { q(1) };
            }
        }
        Family::G => {
            link(1, 2, q(-1));
            s[0][0] = q(2);
            s[1][1] = q_frac(2, 3);
        }
        _ => unreachable!("classical types use orthonormal coordinates"),
    }
    s
}

impl RootSystem {
    pub fn new(t: LieType) -> RootSystem {
        let (simple_roots, gram) = ambient_data(t);
        let form = BilinearForm::new(gram).expect("ambient form is non-degenerate");
        let n = t.rank();
        let simple_coroots: Vec<CartanVec> = simple_roots
            .iter()
            .map(|a| {
                let c = q(2) / form.dual(a, a);
                form.b_flat(a).expect("ambient dimension").scale(&c)
            })
            .collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = pair(&simple_roots[j], &simple_coroots[i]);
                        assert!(v.is_integer(), "non-integral Cartan entry");
                        v.to_integer().to_i64().expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect();

        let coeff_lists = positive_root_coefficients(&cartan);
        let positive_roots: Vec<PositiveRoot> = coeff_lists
            .into_iter()
            .map(|coeffs| {
                let height = coeffs.iter().sum::<i64>() as u32;
                let weight = combine(&simple_roots, &coeffs, t.ambient_dim());
                PositiveRoot { coeffs, height, weight }
            })
            .collect();
        let root_index = positive_roots.iter().enumerate().map(|(i, r)| (r.coeffs.clone(), i)).collect();

        let half = q_frac(1, 2);
        let dim = t.ambient_dim();
        let rho = positive_roots.iter().fold(WeightVec::zero(dim), |acc, r| acc.add_scaled(&half, &r.weight));
        let mut rs = RootSystem {
            lie_type: t,
            simple_roots,
            simple_coroots,
            positive_roots,
            root_index,
            cartan,
            form,
            rho,
            rho_check: CartanVec::zero(dim),
            exponents: Vec::new(),
        };
        rs.rho_check = rs
            .positive_roots
            .iter()
            .fold(CartanVec::zero(dim), |acc, r| acc.add_scaled(&half, &rs.coroot_of_positive(r)));
        rs.exponents = rs.exponents_from_heights().expect("freshly built root system");
        rs
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.lie_type.ambient_dim()
    }

    pub fn simple_roots(&self) -> &[WeightVec] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[CartanVec] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// Index of the positive root with the given simple-root coefficients.
    pub fn positive_root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_index.get(coeffs).copied()
    }

    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn rho(&self) -> &WeightVec {
        &self.rho
    }

    pub fn rho_check(&self) -> &CartanVec {
        &self.rho_check
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Coxeter number minus one; also the height of the highest root.
    pub fn max_height(&self) -> u32 {
        self.positive_roots.iter().map(|r| r.height).max().unwrap_or(0)
    }

    fn coroot_of_positive(&self, r: &PositiveRoot) -> CartanVec {
        let c = q(2) / self.form.dual(&r.weight, &r.weight);
        self.form.b_flat(&r.weight).expect("ambient dimension").scale(&c)
    }

    /// Simple-root coefficients of `alpha` if it is a root (positive or
    /// negative).
    pub fn root_coefficients(&self, alpha: &WeightVec) -> Option<Vec<i64>> {
        if alpha.dim() != self.ambient_dim() {
            return None;
        }
        self.positive_roots.iter().find_map(|r| {
            if r.weight == *alpha {
                Some(r.coeffs.clone())
            } else if (-&r.weight) == *alpha {
                Some(r.coeffs.iter().map(|c| -c).collect())
            } else {
                None
            }
        })
    }

    pub fn is_root(&self, alpha: &WeightVec) -> bool {
        self.root_coefficients(alpha).is_some()
    }

    /// `alpha^vee = (2 / B(alpha, alpha)) B_flat(alpha)`.
    pub fn coroot(&self, alpha: &WeightVec) -> Result<CartanVec> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(self.lie_type));
        }
        let c = q(2) / self.form.dual(alpha, alpha);
        Ok(self.form.b_flat(alpha)?.scale(&c))
    }

    /// Reflection of `h*` in the simple root `i`.
    pub fn reflect_weight(&self, i: usize, lambda: &WeightVec) -> WeightVec {
        let c = pair(lambda, &self.simple_coroots[i]);
        lambda.add_scaled(&-c, &self.simple_roots[i])
    }

    /// Reflection of `h` in the simple coroot `i`.
    pub fn reflect_cartan(&self, i: usize, x: &CartanVec) -> CartanVec {
        let c = pair(&self.simple_roots[i], x);
        x.add_scaled(&-c, &self.simple_coroots[i])
    }

    /// Fundamental weights, inside the span of the simple roots.
    pub fn fundamental_weights(&self) -> Vec<WeightVec> {
        let n = self.rank();
        let a = Matrix::from_int_rows(&self.cartan);
        (0..n)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::one();
                let m = a.solve(&e).expect("Cartan matrix is invertible");
                combine_q(&self.simple_roots, &m, self.ambient_dim())
            })
            .collect()
    }

    /// Dual partition of the root-height multiplicities.
    pub fn exponents_from_heights(&self) -> Result<Vec<u32>> {
        let max = self.max_height() as usize;
        let mut counts = vec![0usize; max];
        for r in &self.positive_roots {
            counts[r.height as usize - 1] += 1;
        }
        if counts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::CorruptHeights);
        }
        let first = counts.first().copied().unwrap_or(0);
        let mut exps: Vec<u32> = (1..=first).map(|j| counts.iter().filter(|&&c| c >= j).count() as u32).collect();
        exps.sort_unstable();
        Ok(exps)
    }

    /// Closure of `v` under the simple reflections, in canonical sorted order.
    pub fn weyl_orbit(&self, v: &WeightVec, cap: usize) -> Result<Vec<WeightVec>> {
        let mut seen: HashSet<WeightVec> = HashSet::new();
        seen.insert(v.clone());
        let mut frontier = vec![v.clone()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 0..self.rank() {
                    if pair(w, &self.simple_coroots[i]).is_zero() {
                        continue;
                    }
                    let r = self.reflect_weight(i, w);
                    if !seen.contains(&r) {
                        if seen.len() >= cap {
                            return Err(Error::OrbitCapExceeded { cap });
                        }
                        seen.insert(r.clone());
                        next.push(r);
                    }
                }
            }
            frontier = next;
        }
        let mut orbit: Vec<WeightVec> = seen.into_iter().collect();
        orbit.sort();
        Ok(orbit)
    }

    /// Coordinates of `x` in the simple-coroot basis. The component of `x`
    /// outside the span of the coroots is ignored.
    pub fn coroot_coordinates(&self, x: &CartanVec) -> Vec<Q> {
        let x = crate::invariants::project_to_h(x, self.lie_type);
        let cols = Matrix::from_rows(self.simple_coroots.iter().map(|c| c.coords().to_vec()).collect()).transpose();
        cols.solve(x.coords()).expect("projected vector lies in the coroot span")
    }

    pub fn from_coroot_coordinates(&self, c: &[Q]) -> CartanVec {
        combine_q(&self.simple_coroots, c, self.ambient_dim())
    }

    /// Coordinates of `lambda` in the simple-root basis.
    pub fn root_coordinates(&self, lambda: &WeightVec) -> Vec<Q> {
        let lambda = crate::invariants::project_to_h(lambda, self.lie_type);
        let cols = Matrix::from_rows(self.simple_roots.iter().map(|c| c.coords().to_vec()).collect()).transpose();
        cols.solve(lambda.coords()).expect("projected vector lies in the root span")
    }

    pub fn from_root_coordinates(&self, c: &[Q]) -> WeightVec {
        combine_q(&self.simple_roots, c, self.ambient_dim())
    }

    /// `B(alpha_i^vee, alpha_j^vee)`.
    pub fn coroot_gram(&self) -> Matrix {
        let n = self.rank();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.form.cartan(&self.simple_coroots[i], &self.simple_coroots[j]);
            }
        }
        g
    }

    /// `B(alpha_i, alpha_j)`.
    pub fn root_gram(&self) -> Matrix {
        let n = self.rank();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.form.dual(&self.simple_roots[i], &self.simple_roots[j]);
            }
        }
        g
    }

    /// Diagram automorphism of `D_l` swapping the two fork nodes; on `h` it
    /// negates the last orthonormal coordinate.
    pub fn sigma_cartan(&self, x: &CartanVec) -> Result<CartanVec> {
        if self.lie_type.family() != Family::D {
            return Err(Error::NotDEven(self.lie_type));
        }
        let mut y = x.clone();
        let last = y.dim() - 1;
        y[last] = -y[last].clone();
        Ok(y)
    }

    pub fn sigma_weight(&self, x: &WeightVec) -> Result<WeightVec> {
        Ok(self.sigma_cartan(&x.clone().retag())?.retag())
    }
}

pub fn build_root_system(t: LieType) -> RootSystem {
    RootSystem::new(t)
}

pub fn langlands_dual(t: LieType) -> LieType {
    t.langlands_dual()
}

fn combine(basis: &[WeightVec], coeffs: &[i64], dim: usize) -> WeightVec {
    basis.iter().zip(coeffs).fold(WeightVec::zero(dim), |acc, (b, &c)| acc.add_scaled(&q(c), b))
}

fn combine_q<S>(basis: &[crate::linalg::Vector<S>], coeffs: &[Q], dim: usize) -> crate::linalg::Vector<S> {
    basis.iter().zip(coeffs).fold(crate::linalg::Vector::zero(dim), |acc, (b, c)| acc.add_scaled(c, b))
}

/// Breadth-first closure of the simple roots under addition of simple roots,
/// using root strings: for `beta != alpha_i`, `beta + alpha_i` is a root iff
/// `p - <beta, alpha_i^vee> > 0`, where `p` is the length of the string
/// below `beta`. Output is ordered by height, then lexicographically.
fn positive_root_coefficients(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut all: HashSet<Vec<i64>> = (0..n).map(unit).collect();
    let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..n).map(unit).collect()];
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in layers.last().expect("nonempty") {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| b.cmp(a));
        all.extend(next.iter().cloned());
        layers.push(next);
    }
    layers
        .into_iter()
        .flat_map(|mut layer| {
            layer.sort_by(|a, b| b.cmp(a));
            layer
        })
        .collect()
}
