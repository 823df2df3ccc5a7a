//! Slope tuples of a certified hyperbolic matrix and the structures built
//! from them: the antisymmetric 4×4 form, its Pfaffian, exterior-square
//! generators, and the induced torus translation.
//!
//! The tuple `θ = (θ₁, θ₂, θ₃, θ₄)` is computed by two independent routes —
//! a closed form in the trace discriminant and a quotient of eigenvector
//! coordinates — which agree either exactly or up to the sign-variant map
//! `(θ₁, θ₂, θ₃, θ₄) ↦ (θ₄, −θ₂, −θ₃, θ₁)` (the tuple of the inverse matrix).
//! All identities here are checked in exact quadratic-field arithmetic.

use thiserror::Error;

use crate::exactfield::{ExactError, QuadNum};
use crate::hyperbolic::HypMatrix;

/// Errors specific to tuple and form construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("matrix is not antisymmetric at entry ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which computation produced a tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaRoute {
    ClosedForm,
    Eigenvectors,
}

impl ThetaRoute {
    pub fn label(self) -> &'static str {
        match self {
            ThetaRoute::ClosedForm => "closed_form",
            ThetaRoute::Eigenvectors => "eigenvector",
        }
    }
}

/// An exact slope tuple.  Entries share one quadratic field (rational entries
/// are allowed: matrices with equal diagonal give `θ₁ = θ₄ = 1/2`, while
/// `θ₂, θ₃` stay irrational).
#[derive(Debug, Clone)]
pub struct ThetaVector {
    entries: [QuadNum; 4],
    route: ThetaRoute,
}

impl PartialEq for ThetaVector {
    /// Tuple equality ignores the provenance tag.
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for ThetaVector {}

impl ThetaVector {
    /// Wraps raw entries after checking they share a field.
    pub fn from_entries(entries: [QuadNum; 4], route: ThetaRoute) -> Result<Self, ExactError> {
        let mut field = 0u64;
        for e in &entries {
            if e.field() != 0 {
                if field != 0 && field != e.field() {
                    return Err(ExactError::FieldMismatch(field, e.field()));
                }
                field = e.field();
            }
        }
        Ok(ThetaVector { entries, route })
    }

    pub fn entries(&self) -> &[QuadNum; 4] {
        &self.entries
    }

    /// 1-indexed accessor: `theta(1)` is θ₁, …, `theta(4)` is θ₄.
    pub fn theta(&self, i: usize) -> &QuadNum {
        &self.entries[i - 1]
    }

    pub fn route(&self) -> ThetaRoute {
        self.route
    }

    /// The common squarefree discriminant (0 if every entry is rational).
    pub fn field(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| e.field())
            .find(|&d| d != 0)
            .unwrap_or(0)
    }

    /// The sign-variant tuple `(θ₄, −θ₂, −θ₃, θ₁)`: the tuple belonging to
    /// the inverse matrix, and the other admissible sign choice.
    pub fn variant(&self) -> ThetaVector {
        let [t1, t2, t3, t4] = &self.entries;
        ThetaVector {
            entries: [t4.clone(), -t2, -t3, t1.clone()],
            route: self.route,
        }
    }

    /// JSON array of canonical-grammar strings.
    pub fn to_json_array(&self) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("\"{}\"", e))
            .collect();
        format!("[{}]", parts.join(","))
    }
}

/// How two tuples for the same matrix are related.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteRelation {
    Identity,
    Variant,
}

impl RouteRelation {
    pub fn label(self) -> &'static str {
        match self {
            RouteRelation::Identity => "identity",
            RouteRelation::Variant => "variant",
        }
    }
}

/// Compares two tuples up to the variant map.
pub fn route_relation(x: &ThetaVector, y: &ThetaVector) -> Option<RouteRelation> {
    if x == y {
        Some(RouteRelation::Identity)
    } else if &x.variant() == y {
        Some(RouteRelation::Variant)
    } else {
        None
    }
}

/// The closed-form tuple in the discriminant field:
/// `θ₁ = (1 + (a−d)/√Δ)/2`, `θ₂ = c/√Δ`, `θ₃ = b/√Δ`,
/// `θ₄ = (1 − (a−d)/√Δ)/2`.
pub fn theta_closed_form(h: &HypMatrix) -> ThetaVector {
    let m = h.mat();
    let inv_root = h
        .sqrt_delta()
        .checked_inv()
        .expect("√Δ ≠ 0 for a certified matrix");
    let half = QuadNum::rational(1, 2).expect("2 ≠ 0");
    let skew = &QuadNum::from(m.a - m.d) * &inv_root;
    let t1 = &half * &(&QuadNum::one() + &skew);
    let t2 = &QuadNum::from(m.c) * &inv_root;
    let t3 = &QuadNum::from(m.b) * &inv_root;
    let t4 = &half * &(&QuadNum::one() - &skew);
    ThetaVector {
        entries: [t1, t2, t3, t4],
        route: ThetaRoute::ClosedForm,
    }
}

/// The eigenvector-route tuple: with unstable `u = (u₁, u₂)`, stable
/// `s = (s₁, s₂)` and `W = u₁s₂ − u₂s₁`,
/// `θ = (u₁s₂, u₂s₂, −u₁s₁, −u₂s₁)/W`.
/// Scale-free in each eigenvector, so projective representatives suffice.
pub fn theta_from_eigenvectors(h: &HypMatrix) -> ThetaVector {
    let (u1, u2) = h.v_u();
    let (s1, s2) = h.v_s();
    let den = &(u1 * s2) - &(u2 * s1);
    debug_assert!(!den.is_zero());
    let t1 = &(u1 * s2) / &den;
    let t2 = &(u2 * s2) / &den;
    let t3 = -&(&(u1 * s1) / &den);
    let t4 = -&(&(u2 * s1) / &den);
    ThetaVector {
        entries: [t1, t2, t3, t4],
        route: ThetaRoute::Eigenvectors,
    }
}

/// Which eigenvalue an identity resolved to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenvalueHit {
    Unstable,
    Stable,
    Neither,
}

impl EigenvalueHit {
    pub fn label(self) -> &'static str {
        match self {
            EigenvalueHit::Unstable => "lambda_u",
            EigenvalueHit::Stable => "lambda_s",
            EigenvalueHit::Neither => "none",
        }
    }
}

/// Exact pass/fail record for the tuple identities of one matrix.
///
/// The *expansion rows* are the four identities `aθ₁+bθ₂ = λθ₁`,
/// `aθ₃+bθ₄ = λθ₃`, `cθ₁+dθ₂ = λθ₂`, `cθ₃+dθ₄ = λθ₄`; the *contraction rows*
/// are `aθ₃−bθ₁ = λθ₃`, `aθ₄−bθ₂ = λθ₄`, `cθ₃−dθ₁ = −λθ₁`, `cθ₄−dθ₂ = −λθ₂`.
/// Each family is evaluated against both eigenvalues, because the variant
/// tuple satisfies them with the roles of λ_u and λ_s swapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// θ₁ + θ₄ = 1
    pub sum_is_one: bool,
    /// θ₁θ₄ = θ₂θ₃
    pub product_identity: bool,
    /// bθ₂ = cθ₃
    pub cross_identity: bool,
    pub expansion_rows_u: [bool; 4],
    pub expansion_rows_s: [bool; 4],
    pub contraction_rows_s: [bool; 4],
    pub contraction_rows_u: [bool; 4],
    /// Which eigenvalue `aθ₁ + bθ₂ + cθ₃ + dθ₄` reconstructs.
    pub reconstruction: EigenvalueHit,
    pub reconstruction_value: QuadNum,
}

impl IdentityReport {
    /// True when every identity holds in its canonical orientation
    /// (expansion rows with λ_u, contraction rows with λ_s, sum = λ_u), as an
    /// eigenvector-route tuple always does.
    pub fn all_canonical(&self) -> bool {
        self.sum_is_one
            && self.product_identity
            && self.cross_identity
            && self.expansion_rows_u.iter().all(|&b| b)
            && self.contraction_rows_s.iter().all(|&b| b)
            && self.reconstruction == EigenvalueHit::Unstable
    }

    /// True when every identity holds with the eigenvalue roles swapped, as
    /// the variant tuple does.
    pub fn all_swapped(&self) -> bool {
        self.sum_is_one
            && self.product_identity
            && self.cross_identity
            && self.expansion_rows_s.iter().all(|&b| b)
            && self.contraction_rows_u.iter().all(|&b| b)
            && self.reconstruction == EigenvalueHit::Stable
    }

    pub fn to_json(&self) -> String {
        let rows = |r: &[bool; 4]| {
            format!("[{},{},{},{}]", r[0], r[1], r[2], r[3])
        };
        format!(
            "{{\"sum_is_one\":{},\"product_identity\":{},\"cross_identity\":{},\
             \"expansion_rows\":{{\"lambda_u\":{},\"lambda_s\":{}}},\
             \"contraction_rows\":{{\"lambda_s\":{},\"lambda_u\":{}}},\
             \"sum_equals\":\"{}\",\"sum_value\":\"{}\"}}",
            self.sum_is_one,
            self.product_identity,
            self.cross_identity,
            rows(&self.expansion_rows_u),
            rows(&self.expansion_rows_s),
            rows(&self.contraction_rows_s),
            rows(&self.contraction_rows_u),
            self.reconstruction.label(),
            self.reconstruction_value,
        )
    }
}

/// Evaluates every tuple identity for `theta` against the certified data of
/// `h`, entirely in exact arithmetic.
pub fn verify_theta_identities(h: &HypMatrix, theta: &ThetaVector) -> IdentityReport {
    let [t1, t2, t3, t4] = theta.entries();
    let m = h.mat();
    let (a, b) = (QuadNum::from(m.a), QuadNum::from(m.b));
    let (c, d) = (QuadNum::from(m.c), QuadNum::from(m.d));

    let sum_is_one = &(t1 + t4) == &QuadNum::one();
    let product_identity = t1 * t4 == t2 * t3;
    let cross_identity = &b * t2 == &c * t3;

    let expansion = |lam: &QuadNum| {
        [
            &(&a * t1) + &(&b * t2) == lam * t1,
            &(&a * t3) + &(&b * t4) == lam * t3,
            &(&c * t1) + &(&d * t2) == lam * t2,
            &(&c * t3) + &(&d * t4) == lam * t4,
        ]
    };
    let contraction = |lam: &QuadNum| {
        [
            &(&a * t3) - &(&b * t1) == lam * t3,
            &(&a * t4) - &(&b * t2) == lam * t4,
            &(&c * t3) - &(&d * t1) == -&(lam * t1),
            &(&c * t4) - &(&d * t2) == -&(lam * t2),
        ]
    };

    let sum = &(&(&a * t1) + &(&b * t2)) + &(&(&c * t3) + &(&d * t4));
    let reconstruction = if &sum == h.lambda_u() {
        EigenvalueHit::Unstable
    } else if &sum == h.lambda_s() {
        EigenvalueHit::Stable
    } else {
        EigenvalueHit::Neither
    };

    IdentityReport {
        sum_is_one,
        product_identity,
        cross_identity,
        expansion_rows_u: expansion(h.lambda_u()),
        expansion_rows_s: expansion(h.lambda_s()),
        contraction_rows_s: contraction(h.lambda_s()),
        contraction_rows_u: contraction(h.lambda_u()),
        reconstruction,
        reconstruction_value: sum,
    }
}

/// Renders one route's tuple and identity report as a JSON object.
pub fn theta_report_json(theta: &ThetaVector, report: &IdentityReport) -> String {
    format!(
        "{{\"theta\":{},\"source\":\"{}\",\"identities\":{}}}",
        theta.to_json_array(),
        theta.route().label(),
        report.to_json()
    )
}

/// An antisymmetric 4×4 matrix over one quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewForm {
    entries: [[QuadNum; 4]; 4],
}

impl SkewForm {
    /// Validates antisymmetry (zero diagonal, `e[j][k] = −e[k][j]`) and field
    /// compatibility.
    pub fn new(entries: [[QuadNum; 4]; 4]) -> Result<Self, ParamError> {
        let mut field = 0u64;
        for (j, row) in entries.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                if e.field() != 0 {
                    if field != 0 && field != e.field() {
                        return Err(ParamError::Exact(ExactError::FieldMismatch(
                            field,
                            e.field(),
                        )));
                    }
                    field = e.field();
                }
                if k <= j && entries[j][k] != -&entries[k][j] {
                    return Err(ParamError::NotAntisymmetric(j + 1, k + 1));
                }
            }
        }
        Ok(SkewForm { entries })
    }

    /// The form attached to a slope tuple: zero 1-2 and 3-4 couplings, and
    /// `θ_{13} = θ₄`, `θ_{14} = θ₃`, `θ_{23} = θ₂`, `θ_{24} = θ₁`.
    pub fn from_theta(theta: &ThetaVector) -> Self {
        let [t1, t2, t3, t4] = theta.entries();
        let z = QuadNum::zero;
        let upper: [(usize, usize, QuadNum); 6] = [
            (0, 1, z()),
            (0, 2, t4.clone()),
            (0, 3, t3.clone()),
            (1, 2, t2.clone()),
            (1, 3, t1.clone()),
            (2, 3, z()),
        ];
        let mut entries: [[QuadNum; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
        for (j, k, v) in upper {
            entries[k][j] = -&v;
            entries[j][k] = v;
        }
        SkewForm { entries }
    }

    /// 1-indexed entry `θ_{jk}`.
    pub fn entry(&self, j: usize, k: usize) -> &QuadNum {
        &self.entries[j - 1][k - 1]
    }

    /// `Pf = θ₁₂θ₃₄ − θ₁₃θ₂₄ + θ₁₄θ₂₃`; vanishes exactly on tuple forms.
    pub fn pfaffian(&self) -> QuadNum {
        let e = |j: usize, k: usize| self.entry(j, k);
        &(&(e(1, 2) * e(3, 4)) - &(e(1, 3) * e(2, 4))) + &(e(1, 4) * e(2, 3))
    }

    /// Generators of the exterior square pairing:
    /// `[1, Pf, θ₁₂, θ₁₃, θ₁₄, θ₂₃, θ₂₄, θ₃₄]`.
    pub fn exp_wedge_generators(&self) -> [QuadNum; 8] {
        let e = |j: usize, k: usize| self.entry(j, k).clone();
        [
            QuadNum::one(),
            self.pfaffian(),
            e(1, 2),
            e(1, 3),
            e(1, 4),
            e(2, 3),
            e(2, 4),
            e(3, 4),
        ]
    }
}

/// The torus translation attached to `θ` and the lattice direction `(m, n)`:
/// `(mθ₁ + nθ₃ mod 1, mθ₂ + nθ₄ mod 1)`.
pub fn alpha_translation(theta: &ThetaVector, m: i64, n: i64) -> (QuadNum, QuadNum) {
    let [t1, t2, t3, t4] = theta.entries();
    let (m, n) = (QuadNum::from(m), QuadNum::from(n));
    let x1 = &(&m * t1) + &(&n * t3);
    let x2 = &(&m * t2) + &(&n * t4);
    (x1.mod_one(), x2.mod_one())
}

/// Scans `|m|, |n| ≤ bound` for directions whose translation is trivial
/// (both coordinates integral).  A tuple of a hyperbolic matrix admits only
/// `(0, 0)`, which is always reported.
pub fn freeness_check(theta: &ThetaVector, bound: i64) -> Vec<(i64, i64)> {
    let [t1, t2, t3, t4] = theta.entries();
    let mut fixing = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            let (qm, qn) = (QuadNum::from(m), QuadNum::from(n));
            let x1 = &(&qm * t1) + &(&qn * t3);
            let x2 = &(&qm * t2) + &(&qn * t4);
            if x1.is_integer() && x2.is_integer() {
                fixing.push((m, n));
            }
        }
    }
    fixing
}
