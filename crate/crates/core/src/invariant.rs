//! The canonical lattice invariant of a hyperbolic matrix.
//!
//! The fractional lattice spanned by `1, θ₁, θ₂, θ₃` inside `Q(√D)` is
//! reduced to a unique normal form: the squarefree discriminant `D`, the
//! minimal common denominator `m`, and a row-echelon Hermite basis of the
//! numerator lattice.  Two matrices get the same normal form exactly when
//! their slope tuples span the same fractional module, which makes the form
//! directly comparable — conjugate matrices (and inverses, and flips) agree,
//! and disagreement certifies non-conjugacy.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactfield::{ExactError, QuadNum};
use crate::hyperbolic::{HypMatrix, Mat2Z, MatrixError};
use crate::torusparams::{theta_closed_form, theta_from_eigenvectors};

/// Errors from invariant construction and comparison.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("conjugating matrix must have determinant ±1 (got {0})")]
    NotUnimodular(i64),
    #[error("cannot canonicalize generators from different fields: √{0} vs √{1}")]
    MixedFields(u64, u64),
    #[error("invariant parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Normal form of a fractional lattice in `Q(√D)`.
///
/// Elements are `(P + Q√D)/m` with `(P, Q)` ranging over the integer span of
/// the basis rows.  The basis is row-echelon Hermite: rows `(h₁₁, h₁₂)` and
/// `(0, h₂₂)` with `h₁₁ > 0`, `h₂₂ ≥ 0`, and `0 ≤ h₁₂ < h₂₂` when both
/// pivots are positive; a rank-one lattice leaves the second row zero; `m`
/// is minimal for the lattice as a whole.  `D = 0` marks a purely rational
/// lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRangeInvariant {
    d: u64,
    m: BigInt,
    basis: [[BigInt; 2]; 2],
}

impl TraceRangeInvariant {
    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn denominator(&self) -> &BigInt {
        &self.m
    }

    pub fn basis(&self) -> &[[BigInt; 2]; 2] {
        &self.basis
    }

    /// `{"D":5,"m":10,"basis":[[5,1],[0,2]]}`
    pub fn to_json(&self) -> String {
        format!(
            "{{\"D\":{},\"m\":{},\"basis\":[[{},{}],[{},{}]]}}",
            self.d,
            self.m,
            self.basis[0][0],
            self.basis[0][1],
            self.basis[1][0],
            self.basis[1][1]
        )
    }

    pub fn from_json(text: &str) -> Result<Self, InvariantError> {
        let bad = |why: &str| InvariantError::Parse(why.to_string());
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| InvariantError::Parse(e.to_string()))?;
        let d = value
            .get("D")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| bad("missing or invalid \"D\""))?;
        let m = value
            .get("m")
            .and_then(|v| v.as_i64())
            .ok_or_else(|| bad("missing or invalid \"m\""))?;
        if m < 1 {
            return Err(bad("denominator must be ≥ 1"));
        }
        let rows = value
            .get("basis")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing or invalid \"basis\""))?;
        if rows.len() != 2 {
            return Err(bad("basis must have exactly two rows"));
        }
        let mut basis: [[BigInt; 2]; 2] = Default::default();
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| bad("basis rows must be integer pairs"))?;
            for (j, entry) in row.iter().enumerate() {
                let n = entry
                    .as_i64()
                    .ok_or_else(|| bad("basis entries must be integers"))?;
                basis[i][j] = BigInt::from(n);
            }
        }
        Ok(TraceRangeInvariant {
            d,
            m: BigInt::from(m),
            basis,
        })
    }

    /// Human form, e.g. `Z·(5+1√5)/10 + Z·(0+2√5)/10`.  Rows are shown
    /// verbatim over the common denominator (zero rows omitted) so the
    /// printed generators are literally the basis.
    pub fn render(&self, ascii: bool) -> String {
        let dot = if ascii { "*" } else { "·" };
        let root = |n: &BigInt| {
            if ascii {
                format!("{}sqrt({})", n, self.d)
            } else {
                format!("{}√{}", n, self.d)
            }
        };
        let mut parts = Vec::new();
        for row in &self.basis {
            if row[0].is_zero() && row[1].is_zero() {
                continue;
            }
            let numer = if self.d == 0 {
                row[0].to_string()
            } else if row[1].is_negative() {
                format!("({}-{})", row[0], root(&-&row[1]))
            } else {
                format!("({}+{})", row[0], root(&row[1]))
            };
            let gen = if self.m.is_one() {
                numer
            } else {
                format!("{}/{}", numer, self.m)
            };
            parts.push(format!("Z{}{}", dot, gen));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Whether `x` lies in the fractional lattice.
    pub fn contains(&self, x: &QuadNum) -> bool {
        if x.field() != 0 && x.field() != self.d {
            return false;
        }
        // Scale x to the common denominator: need m·p ≡ 0 and m·q ≡ 0 mod mₓ.
        let (pm, qm) = (x.p() * &self.m, x.q() * &self.m);
        let (pq, pr) = pm.div_rem(x.m());
        let (qq, qr) = qm.div_rem(x.m());
        if !pr.is_zero() || !qr.is_zero() {
            return false;
        }
        // Solve (pq, qq) = s·(h₁₁, h₁₂) + t·(0, h₂₂) over Z.  When the first
        // column has no pivot, both rows constrain only the second
        // coordinate.
        let [[h11, h12], [_, h22]] = &self.basis;
        if h11.is_zero() {
            let g = h12.gcd(h22);
            return pq.is_zero()
                && if g.is_zero() {
                    qq.is_zero()
                } else {
                    qq.div_rem(&g).1.is_zero()
                };
        }
        let (s, r) = pq.div_rem(h11);
        if !r.is_zero() {
            return false;
        }
        let rest = qq - s * h12;
        if h22.is_zero() {
            rest.is_zero()
        } else {
            rest.div_rem(h22).1.is_zero()
        }
    }
}

/// Reduces a generator list to the normal form of the fractional lattice it
/// spans.  Rational generators are welcome in any field; two distinct
/// irrationalities are refused.
pub fn canonicalize(generators: &[QuadNum]) -> Result<TraceRangeInvariant, InvariantError> {
    let mut d = 0u64;
    for g in generators {
        if g.field() != 0 {
            if d != 0 && d != g.field() {
                return Err(InvariantError::MixedFields(d, g.field()));
            }
            d = g.field();
        }
    }

    let mut m = BigInt::one();
    for g in generators {
        m = m.lcm(g.m());
    }

    // Integer vectors (P, Q) with g = (P + Q√d)/m, folded into a row-echelon
    // pair by extended-gcd column elimination.
    let mut r1 = [BigInt::zero(), BigInt::zero()];
    let mut b2 = BigInt::zero();
    for g in generators {
        let scale = &m / g.m();
        let v = [g.p() * &scale, g.q() * &scale];
        if v[0].is_zero() {
            b2 = b2.gcd(&v[1]);
        } else {
            let ext = r1[0].extended_gcd(&v[0]);
            let comp = (&r1[0] / &ext.gcd) * &v[1] - (&v[0] / &ext.gcd) * &r1[1];
            r1 = [
                ext.gcd.clone(),
                &ext.x * &r1[1] + &ext.y * &v[1],
            ];
            b2 = b2.gcd(&comp);
        }
    }

    // Normalize: positive pivots, reduced off-pivot entry, minimal m.
    if r1[0].is_negative() {
        r1 = [-&r1[0], -&r1[1]];
    }
    if b2.is_positive() && !r1[0].is_zero() {
        r1[1] = r1[1].mod_floor(&b2);
    }
    let mut basis = if r1[0].is_zero() {
        [[BigInt::zero(), b2], [BigInt::zero(), BigInt::zero()]]
    } else {
        [r1, [BigInt::zero(), b2]]
    };

    let content = basis
        .iter()
        .flatten()
        .fold(BigInt::zero(), |acc, e| acc.gcd(e));
    if content.is_zero() {
        return Ok(TraceRangeInvariant {
            d: 0,
            m: BigInt::one(),
            basis,
        });
    }
    let shrink = content.gcd(&m);
    if shrink > BigInt::one() {
        m /= &shrink;
        for row in basis.iter_mut() {
            for e in row.iter_mut() {
                *e /= &shrink;
            }
        }
    }
    // A lattice whose second column is all zero is purely rational.
    if basis[0][1].is_zero() && basis[1][1].is_zero() {
        d = 0;
    }
    Ok(TraceRangeInvariant { d, m, basis })
}

/// The normal form attached to a certified matrix: the lattice spanned by
/// `1, θ₁, θ₂, θ₃` (θ₄ = 1 − θ₁ adds nothing).
pub fn trace_range(h: &HypMatrix) -> TraceRangeInvariant {
    let theta = theta_closed_form(h);
    let gens = [
        QuadNum::one(),
        theta.theta(1).clone(),
        theta.theta(2).clone(),
        theta.theta(3).clone(),
    ];
    canonicalize(&gens).expect("slope tuple lives in one field")
}

/// Normal-form comparison.
pub fn invariants_equal(a: &TraceRangeInvariant, b: &TraceRangeInvariant) -> bool {
    a == b
}

/// A conjugation certificate: `A·M = M·B` (or `A·M = M·B⁻¹` when `flip`),
/// with `M` unimodular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub m: Mat2Z,
    pub flip: bool,
}

impl ConjugacyWitness {
    /// Re-checks the certificate against the pair it claims to relate.
    pub fn verify(&self, a: &Mat2Z, b: &Mat2Z) -> bool {
        if !matches!(self.m.det(), 1 | -1) {
            return false;
        }
        let target = if self.flip {
            match b.inv() {
                Ok(inv) => inv,
                Err(_) => return false,
            }
        } else {
            *b
        };
        *a * self.m == self.m * target
    }
}

/// Exhaustive search for a unimodular `M` with `AM = MB` or `AM = MB⁻¹`,
/// entries ranging over `[-bound, bound]` in lexicographic order
/// `(m₁₁, m₁₂, m₂₁, m₂₂)`.  For each candidate the direct test runs before
/// the flip test, so the first witness found is deterministic.
pub fn conjugator_search(a: &Mat2Z, b: &Mat2Z, bound: i64) -> Option<ConjugacyWitness> {
    let b_inv = b.inv().ok();
    for m11 in -bound..=bound {
        for m12 in -bound..=bound {
            for m21 in -bound..=bound {
                for m22 in -bound..=bound {
                    let m = Mat2Z::new(m11, m12, m21, m22);
                    if !matches!(m.det(), 1 | -1) {
                        continue;
                    }
                    if *a * m == m * *b {
                        return Some(ConjugacyWitness { m, flip: false });
                    }
                    if let Some(bi) = b_inv {
                        if *a * m == m * bi {
                            return Some(ConjugacyWitness { m, flip: true });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Results of the invariance checks for one matrix and one unimodular
/// conjugator: the normal form must survive conjugation and inversion, and
/// the inverse's eigenvector tuple must be the variant of the original's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvarianceSuite {
    pub conjugation_equal: bool,
    pub inverse_equal: bool,
    pub inverse_tuple_map: bool,
}

impl InvarianceSuite {
    pub fn all_hold(&self) -> bool {
        self.conjugation_equal && self.inverse_equal && self.inverse_tuple_map
    }
}

/// Runs the invariance suite for `a` under the conjugator `m`.
pub fn invariance_suite(a: &Mat2Z, m: &Mat2Z) -> Result<InvarianceSuite, InvariantError> {
    if !matches!(m.det(), 1 | -1) {
        return Err(InvariantError::NotUnimodular(m.det()));
    }
    let h = HypMatrix::certify(*a)?;
    let base = trace_range(&h);

    let conjugated = *m * *a * m.inv()?;
    let h_conj = HypMatrix::certify(conjugated)?;
    let conjugation_equal = trace_range(&h_conj) == base;

    let inverse = a.inv()?;
    let h_inv = HypMatrix::certify(inverse)?;
    let inverse_equal = trace_range(&h_inv) == base;

    let tuple = theta_from_eigenvectors(&h);
    let tuple_inv = theta_from_eigenvectors(&h_inv);
    let inverse_tuple_map = tuple_inv == tuple.variant();

    Ok(InvarianceSuite {
        conjugation_equal,
        inverse_equal,
        inverse_tuple_map,
    })
}
