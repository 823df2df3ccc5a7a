//! Exact invariants of hyperbolic toral automorphisms.
//!
//! An integer 2×2 matrix with determinant ±1 and no eigenvalue on the unit
//! circle acts on the torus with dense, exponentially contracting and
//! expanding directions.  This crate computes the algebraic data of that
//! action without any floating-point shortcuts:
//!
//! - [`exactfield`] — arithmetic in a real quadratic field `Q(√D)`, with
//!   exact comparison, floor/fractional part, a canonical text grammar, and
//!   certified squarefree decomposition.
//! - [`hyperbolic`] — matrix certification: eigenvalues `λ_u, λ_s` and
//!   eigenvectors as exact field elements.
//! - [`torusparams`] — the slope tuple `(θ₁, θ₂, θ₃, θ₄)` by two independent
//!   routes, its identity suite, the antisymmetric coupling form and its
//!   Pfaffian, and the induced torus translation.
//! - [`invariant`] — the canonical lattice `Z + Zθ₁ + Zθ₂ + Zθ₃` in Hermite
//!   normal form: a computable, comparable conjugacy invariant, plus a
//!   bounded conjugator search and the invariance suite.
//! - [`weyl`] — the four-generator monomial algebra with exact commutation
//!   phases: normal ordering, commutators, the `θ·(g∧h)` pairing,
//!   nondegeneracy scans, generator substitutions, and the automorphism
//!   induced by the matrix.
//! - [`dynamics`] — the one deliberately floating-point module: numerical
//!   witnesses for asymptotic pairs and translation-orbit density, with an
//!   explicit iteration budget.
//!
//! The exact layers never round: every identity they report reduces to
//! equalities between integers.  The dynamics layer is a numerical witness
//! with documented error bounds, kept strictly separate.

pub mod dynamics;
pub mod exactfield;
pub mod hyperbolic;
pub mod invariant;
pub mod torusparams;
pub mod weyl;

pub use exactfield::{ExactError, QuadNum, RATIONAL};
pub use hyperbolic::{HypMatrix, Mat2Z, MatrixError};
pub use invariant::{
    canonicalize, conjugator_search, invariance_suite, invariants_equal, trace_range,
    ConjugacyWitness, InvarianceSuite, InvariantError, TraceRangeInvariant,
};
pub use torusparams::{
    alpha_translation, freeness_check, route_relation, theta_closed_form,
    theta_from_eigenvectors, verify_theta_identities, EigenvalueHit, IdentityReport, ParamError,
    RouteRelation, SkewForm, ThetaRoute, ThetaVector,
};
pub use weyl::{
    bicharacter_preserved, commutator_check, coupling_matrix, nondegeneracy_scan, rho_exponent,
    ruelle_automorphism_check, ruelle_presentation, substitution_pairings, wedge, Gen,
    GeneratorWord, RuellePresentation, WeylElement,
};
pub use dynamics::{
    apply_matrix, asymptotic_pair_report, orbit_density_estimate, torus_distance,
    AsymptoticReport, DynamicsError, TorusPoint, MAX_STEPS,
};
