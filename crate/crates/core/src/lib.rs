//! Exact principal bases of Cartan subalgebras of simple Lie algebras.
//!
//! A principal basis of `h` is obtained by orthogonalizing the
//! differentials `Dp_i(rho^vee)` of a set of basic invariant polynomials,
//! and is checked independently against the kernel filtration of
//! `ad(e_0)` for the principal `sl_2`-triple. Everything is exact.

pub mod adjoint;
pub mod cache;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod output;
pub mod poly;
pub mod principal;
pub mod rootsys;

pub use adjoint::{
    ad_e0_kernel_dims, certify, module_dimensions, positive_structure_constants, principal_triple, CertReport,
    PrincipalTriple, StructureConstants,
};
pub use error::{Error, Result};
pub use principal::{
    dual_principal_basis, dual_principal_basis_opts, principal_basis, principal_basis_opts, BasisOptions,
    PrincipalBasis, Route,
};
pub use rootsys::{build_root_system, langlands_dual, Family, LieType, RootSystem};
