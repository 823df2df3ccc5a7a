//! Exact monomial calculus for the four-generator phase algebra of a slope
//! tuple.
//!
//! Elements are scalar-dressed monomials `e(φ)·V₁^{a₁}U₁^{b₁}V₂^{a₂}U₂^{b₂}`
//! with `e(φ) = exp(2πiφ)` and `φ` a quadratic irrational kept modulo one.
//! The generators satisfy `V_j U_k = e(θ_{jk}) U_k V_j` with the coupling
//! matrix `θ_{11} = θ₁`, `θ_{12} = θ₂`, `θ_{21} = θ₃`, `θ_{22} = θ₄`, while
//! `U₁U₂` and `V₁V₂` commute.  All phase bookkeeping is exact, so commutator
//! identities and pairing scans are decided, not approximated.

use crate::exactfield::QuadNum;
use crate::hyperbolic::{HypMatrix, Mat2Z, MatrixError};
use crate::torusparams::{theta_from_eigenvectors, ThetaVector};

/// The four generators, in normal-form order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    V1,
    U1,
    V2,
    U2,
}

impl Gen {
    pub fn label(self) -> &'static str {
        match self {
            Gen::V1 => "V1",
            Gen::U1 => "U1",
            Gen::V2 => "V2",
            Gen::U2 => "U2",
        }
    }

    /// Index into an exponent vector `(a₁, b₁, a₂, b₂)`.
    fn slot(self) -> usize {
        match self {
            Gen::V1 => 0,
            Gen::U1 => 1,
            Gen::V2 => 2,
            Gen::U2 => 3,
        }
    }
}

/// A word in the generators: letters with integer powers, read left to right.
pub type GeneratorWord = Vec<(Gen, i64)>;

/// A normal-form monomial `e(φ)·V₁^{a₁}U₁^{b₁}V₂^{a₂}U₂^{b₂}`.
///
/// The phase is always reduced to `[0, 1)`.  The exponent vector is stored
/// as `(a₁, b₁, a₂, b₂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    phase: QuadNum,
    exp: [i64; 4],
}

fn add_exp(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
    std::array::from_fn(|i| x[i].checked_add(y[i]).expect("exponent overflow"))
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement {
            phase: QuadNum::zero(),
            exp: [0; 4],
        }
    }

    /// A bare generator power, phase zero.
    pub fn generator(g: Gen, power: i64) -> Self {
        let mut exp = [0i64; 4];
        exp[g.slot()] = power;
        WeylElement {
            phase: QuadNum::zero(),
            exp,
        }
    }

    /// A pure scalar `e(φ)`.
    pub fn scalar(phase: QuadNum) -> Self {
        WeylElement {
            phase: phase.mod_one(),
            exp: [0; 4],
        }
    }

    pub fn phase(&self) -> &QuadNum {
        &self.phase
    }

    pub fn exponents(&self) -> [i64; 4] {
        self.exp
    }

    pub fn is_scalar(&self) -> bool {
        self.exp == [0; 4]
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.phase.is_zero()
    }

    /// Normal-form product.  Moving the right factor's generators into place
    /// crosses the left factor's, and each crossing deposits an exact phase:
    /// with `x = (a₁, b₁, a₂, b₂)` and `y = (c₁, d₁, c₂, d₂)`,
    /// `swap = −θ₁b₁c₁ − θ₂b₂c₁ + θ₃a₂d₁ − θ₄b₂c₂`.
    pub fn mul(theta: &ThetaVector, x: &WeylElement, y: &WeylElement) -> WeylElement {
        let [_a1, b1, a2, b2] = x.exp.map(QuadNum::from);
        let [c1, d1, c2, _d2] = y.exp.map(QuadNum::from);
        let [t1, t2, t3, t4] = theta.entries();
        let swap = &(&(&-&(&(t1 * &b1) * &c1) - &(&(t2 * &b2) * &c1)) + &(&(t3 * &a2) * &d1))
            - &(&(t4 * &b2) * &c2);
        WeylElement {
            phase: (&(&x.phase + &y.phase) + &swap).mod_one(),
            exp: add_exp(x.exp, y.exp),
        }
    }

    /// The exact inverse: exponents negate, and the phase compensates the
    /// crossings undone on the way back.
    pub fn inverse(theta: &ThetaVector, x: &WeylElement) -> WeylElement {
        let [a1, b1, a2, b2] = x.exp.map(QuadNum::from);
        let [t1, t2, t3, t4] = theta.entries();
        let cross = &(&(&(&(t1 * &a1) * &b1) + &(&(t2 * &a1) * &b2)) - &(&(t3 * &a2) * &b1))
            + &(&(t4 * &a2) * &b2);
        WeylElement {
            phase: (&(-&x.phase) - &cross).mod_one(),
            exp: x.exp.map(|e| e.checked_neg().expect("exponent overflow")),
        }
    }

    /// Reduces a word to normal form by multiplying letters left to right.
    pub fn from_word(theta: &ThetaVector, word: &[(Gen, i64)]) -> WeylElement {
        word.iter().fold(WeylElement::identity(), |acc, &(g, e)| {
            WeylElement::mul(theta, &acc, &WeylElement::generator(g, e))
        })
    }

    /// The group commutator `x y x⁻¹ y⁻¹`; always a scalar.
    pub fn commutator(theta: &ThetaVector, x: &WeylElement, y: &WeylElement) -> WeylElement {
        let xy = WeylElement::mul(theta, x, y);
        let xi = WeylElement::inverse(theta, x);
        let yi = WeylElement::inverse(theta, y);
        WeylElement::mul(theta, &WeylElement::mul(theta, &xy, &xi), &yi)
    }
}

impl std::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.phase.is_zero() {
            write!(f, "e({})", self.phase)?;
            if self.exp != [0; 4] {
                write!(f, "·")?;
            }
        } else if self.exp == [0; 4] {
            return write!(f, "1");
        }
        let names = [Gen::V1, Gen::U1, Gen::V2, Gen::U2];
        let mut first = true;
        for (g, &e) in names.iter().zip(&self.exp) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", g.label())?;
            } else {
                write!(f, "{}^{}", g.label(), e)?;
            }
        }
        Ok(())
    }
}

/// The pairing `g∧h` of two exponent vectors, componentwise against the four
/// couplings: `(a₁d₁−b₁c₁, a₁d₂−b₂c₁, a₂d₁−b₁c₂, a₂d₂−b₂c₂)` for
/// `g = (a₁, b₁, a₂, b₂)`, `h = (c₁, d₁, c₂, d₂)`.
pub fn wedge(g: [i64; 4], h: [i64; 4]) -> [i64; 4] {
    let [a1, b1, a2, b2] = g.map(i128::from);
    let [c1, d1, c2, d2] = h.map(i128::from);
    [a1 * d1 - b1 * c1, a1 * d2 - b2 * c1, a2 * d1 - b1 * c2, a2 * d2 - b2 * c2]
        .map(|w| i64::try_from(w).expect("wedge overflow"))
}

/// The commutator phase `θ·(g∧h)` reduced modulo one.
pub fn rho_exponent(theta: &ThetaVector, g: [i64; 4], h: [i64; 4]) -> QuadNum {
    let w = wedge(g, h);
    let mut acc = QuadNum::zero();
    for (t, wi) in theta.entries().iter().zip(w) {
        acc = &acc + &(t * &QuadNum::from(wi));
    }
    acc.mod_one()
}

/// Verifies that the group commutator of `x` and `y` is the scalar predicted
/// by the pairing of their exponent vectors.
pub fn commutator_check(theta: &ThetaVector, x: &WeylElement, y: &WeylElement) -> bool {
    let com = WeylElement::commutator(theta, x, y);
    com.is_scalar() && com.phase() == &rho_exponent(theta, x.exponents(), y.exponents())
}

/// Scans the box `‖g‖∞ ≤ bound` for exponent vectors that pair integrally
/// with every basis vector — the degenerate directions.  A nondegenerate
/// coupling yields exactly `[[0, 0, 0, 0]]`.
pub fn nondegeneracy_scan(theta: &ThetaVector, bound: i64) -> Vec<[i64; 4]> {
    let basis = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ];
    let mut degenerate = Vec::new();
    for a1 in -bound..=bound {
        for b1 in -bound..=bound {
            for a2 in -bound..=bound {
                for b2 in -bound..=bound {
                    let g = [a1, b1, a2, b2];
                    let trivial = basis.iter().all(|&e| {
                        let w = wedge(g, e);
                        let mut acc = QuadNum::zero();
                        for (t, wi) in theta.entries().iter().zip(w) {
                            acc = &acc + &(t * &QuadNum::from(wi));
                        }
                        acc.is_integer()
                    });
                    if trivial {
                        degenerate.push(g);
                    }
                }
            }
        }
    }
    degenerate
}

/// Pairing table for substituted generators: entry `(j, k)` is the
/// commutator phase of the `j`-th V-word against the `k`-th U-word.
pub fn substitution_pairings(
    theta: &ThetaVector,
    v: &[[i64; 4]; 2],
    u: &[[i64; 4]; 2],
) -> [[QuadNum; 2]; 2] {
    std::array::from_fn(|j| std::array::from_fn(|k| rho_exponent(theta, v[j], u[k])))
}

/// The presentation data a hyperbolic matrix induces on the algebra: the
/// coupling tuple together with the integer maps the matrix applies to
/// U-exponents and V-exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuellePresentation {
    theta: ThetaVector,
    u_map: Mat2Z,
    v_map: Mat2Z,
}

impl RuellePresentation {
    pub fn theta(&self) -> &ThetaVector {
        &self.theta
    }

    /// Columns are the exponent images of `U₁, U₂`.
    pub fn u_map(&self) -> Mat2Z {
        self.u_map
    }

    /// Columns are the exponent images of `V₁, V₂`.
    pub fn v_map(&self) -> Mat2Z {
        self.v_map
    }

    /// Applies the exponent maps to a full vector `(a₁, b₁, a₂, b₂)`.
    pub fn apply(&self, exp: [i64; 4]) -> [i64; 4] {
        let [a1, b1, a2, b2] = exp;
        let v = &self.v_map;
        let u = &self.u_map;
        [
            v.a * a1 + v.b * a2,
            u.a * b1 + u.b * b2,
            v.c * a1 + v.d * a2,
            u.c * b1 + u.d * b2,
        ]
    }
}

/// Builds the induced presentation: U-exponents transform by `Aᵀ` and
/// V-exponents by `A⁻¹` (equivalently `det(A)·adj(A)`, staying integral).
pub fn ruelle_presentation(h: &HypMatrix) -> RuellePresentation {
    let a = *h.mat();
    let u_map = a.transpose();
    let v_map = a.inv().expect("certified matrices have determinant ±1");
    RuellePresentation {
        theta: theta_from_eigenvectors(h),
        u_map,
        v_map,
    }
}

fn quad_mat(m: &Mat2Z) -> [[QuadNum; 2]; 2] {
    [
        [QuadNum::from(m.a), QuadNum::from(m.b)],
        [QuadNum::from(m.c), QuadNum::from(m.d)],
    ]
}

fn mat_mul(x: &[[QuadNum; 2]; 2], y: &[[QuadNum; 2]; 2]) -> [[QuadNum; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]))
    })
}

fn transpose2(x: &[[QuadNum; 2]; 2]) -> [[QuadNum; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| x[j][i].clone()))
}

/// Whether the coupling matrix `Q` is exactly preserved by the exponent maps
/// of `a`: computes `(A⁻¹)ᵀ · Q · Aᵀ` and compares entrywise.
pub fn bicharacter_preserved(q: &[[QuadNum; 2]; 2], a: &Mat2Z) -> Result<bool, MatrixError> {
    let a_inv = a.inv()?;
    let left = transpose2(&quad_mat(&a_inv));
    let right = transpose2(&quad_mat(a));
    let image = mat_mul(&mat_mul(&left, q), &right);
    Ok(&image == q)
}

/// The coupling matrix `[[θ₁, θ₂], [θ₃, θ₄]]` of a tuple.
pub fn coupling_matrix(theta: &ThetaVector) -> [[QuadNum; 2]; 2] {
    [
        [theta.theta(1).clone(), theta.theta(2).clone()],
        [theta.theta(3).clone(), theta.theta(4).clone()],
    ]
}

/// Checks that the matrix's own coupling is invariant under its induced
/// exponent maps — the exact identity behind the induced automorphism.
pub fn ruelle_automorphism_check(h: &HypMatrix) -> bool {
    let theta = theta_from_eigenvectors(h);
    let q = coupling_matrix(&theta);
    bicharacter_preserved(&q, h.mat()).expect("certified matrices have determinant ±1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::QuadNum;
    use crate::torusparams::theta_closed_form;
    use proptest::prelude::*;

    fn qn(p: i64, q: i64, m: i64, d: u64) -> QuadNum {
        QuadNum::new(p, q, m, d).unwrap()
    }

    fn golden_theta() -> ThetaVector {
        let h = HypMatrix::certify(Mat2Z::new(1, 1, 1, 0)).unwrap();
        theta_from_eigenvectors(&h)
    }

    fn elem(theta: &ThetaVector, exp: [i64; 4]) -> WeylElement {
        let word = [
            (Gen::V1, exp[0]),
            (Gen::U1, exp[1]),
            (Gen::V2, exp[2]),
            (Gen::U2, exp[3]),
        ];
        WeylElement::from_word(theta, &word)
    }

    #[test]
    fn generators_commute_up_to_the_coupling() {
        let theta = golden_theta();
        // In-order products carry no phase…
        let v1u1 = WeylElement::from_word(&theta, &[(Gen::V1, 1), (Gen::U1, 1)]);
        assert!(v1u1.phase().is_zero());
        assert_eq!(v1u1.exponents(), [1, 1, 0, 0]);
        // …and each out-of-order crossing deposits its coupling exactly.
        let table: [(Gen, Gen, QuadNum); 4] = [
            (Gen::U1, Gen::V1, -theta.theta(1)),
            (Gen::U2, Gen::V1, -theta.theta(2)),
            (Gen::V2, Gen::U1, theta.theta(3).clone()),
            (Gen::U2, Gen::V2, -theta.theta(4)),
        ];
        for (left, right, want) in table {
            let w = WeylElement::from_word(&theta, &[(left, 1), (right, 1)]);
            assert_eq!(w.phase(), &want.mod_one(), "{}·{}", left.label(), right.label());
        }
        // Same-class generators commute outright.
        let u2u1 = WeylElement::from_word(&theta, &[(Gen::U2, 1), (Gen::U1, 1)]);
        assert!(u2u1.phase().is_zero());
        let v2v1 = WeylElement::from_word(&theta, &[(Gen::V2, 1), (Gen::V1, 1)]);
        assert!(v2v1.phase().is_zero());
    }

    #[test]
    fn commutator_of_basic_pair_is_the_coupling_scalar() {
        let theta = golden_theta();
        let v1 = WeylElement::generator(Gen::V1, 1);
        let u1 = WeylElement::generator(Gen::U1, 1);
        let com = WeylElement::commutator(&theta, &v1, &u1);
        assert!(com.is_scalar());
        assert_eq!(com.phase(), &qn(5, 1, 10, 5));
        // And in display form:
        assert_eq!(com.to_string(), "e((5+1√5)/10)");
        assert_eq!(WeylElement::identity().to_string(), "1");
        assert_eq!(
            elem(&theta, [1, 2, 0, -1]).to_string(),
            "V1·U1^2·U2^-1"
        );
    }

    #[test]
    fn inverse_cancels_exactly() {
        let theta = golden_theta();
        for exp in [
            [1, 0, 0, 0],
            [0, -2, 1, 3],
            [2, 1, -1, 1],
            [-3, 4, 5, -2],
        ] {
            let x = elem(&theta, exp);
            let xi = WeylElement::inverse(&theta, &x);
            assert!(WeylElement::mul(&theta, &x, &xi).is_identity(), "{:?}", exp);
            assert!(WeylElement::mul(&theta, &xi, &x).is_identity(), "{:?}", exp);
        }
    }

    #[test]
    fn wedge_is_antisymmetric_and_bilinear() {
        let g = [1, -2, 3, 4];
        let h = [0, 5, -1, 2];
        let gh = wedge(g, h);
        let hg = wedge(h, g);
        for i in 0..4 {
            assert_eq!(gh[i], -hg[i]);
        }
        assert_eq!(wedge(g, g), [0; 4]);
    }

    #[test]
    fn commutator_phase_matches_the_pairing() {
        let theta = golden_theta();
        for (g, h) in [
            ([1, 0, 0, 0], [0, 1, 0, 0]),
            ([0, 1, 0, 2], [1, 0, 2, 0]),
            ([2, -1, 1, 1], [0, 3, -2, 1]),
        ] {
            let x = elem(&theta, g);
            let y = elem(&theta, h);
            assert!(commutator_check(&theta, &x, &y), "{:?} vs {:?}", g, h);
        }
    }

    #[test]
    fn nondegenerate_coupling_scans_clean() {
        let theta = golden_theta();
        assert_eq!(nondegeneracy_scan(&theta, 2), vec![[0, 0, 0, 0]]);
        let h = HypMatrix::certify(Mat2Z::new(3, 1, 2, 1)).unwrap();
        let theta3 = theta_closed_form(&h);
        assert_eq!(nondegeneracy_scan(&theta3, 2), vec![[0, 0, 0, 0]]);
    }

    #[test]
    fn rational_coupling_is_degenerate() {
        let half = QuadNum::rational(1, 2).unwrap();
        let theta = ThetaVector::from_entries(
            [half.clone(), half.clone(), half.clone(), half],
            crate::torusparams::ThetaRoute::ClosedForm,
        )
        .unwrap();
        let hits = nondegeneracy_scan(&theta, 2);
        assert!(hits.len() > 1, "{:?}", hits);
        assert!(hits.contains(&[2, 0, 0, 0]));
    }

    #[test]
    fn substitution_table_matches_the_expected_tuple() {
        let theta = golden_theta();
        let v = [[1, 0, 2, 0], [0, 0, 1, 0]]; // V₁V₂², V₂
        let u = [[0, 1, 0, 2], [0, 0, 0, 1]]; // U₁U₂², U₂
        let table = substitution_pairings(&theta, &v, &u);
        assert_eq!(table[0][0], qn(-1, 1, 2, 5)); // (−1+√5)/2
        assert!(table[0][1].is_zero());
        assert!(table[1][0].is_zero());
        assert_eq!(table[1][1], qn(5, -1, 10, 5)); // (5−√5)/10
    }

    #[test]
    fn substitution_table_detects_wrong_words() {
        let theta = golden_theta();
        let v = [[1, 0, 2, 0], [0, 0, 1, 0]];
        // U₁U₂ instead of U₁U₂²: the (V₂, U₁) slot picks up a phase.
        let u_wrong = [[0, 1, 0, 1], [0, 0, 0, 1]];
        let table = substitution_pairings(&theta, &v, &u_wrong);
        assert_eq!(table[0][0], qn(-1, 1, 2, 5)); // unchanged
        assert_eq!(table[1][0], qn(5, 1, 10, 5)); // θ instead of 0
        // V₁V₂ instead of V₁V₂²: the (V₁, U₂) slot flips.
        let v_wrong = [[1, 0, 1, 0], [0, 0, 1, 0]];
        let table = substitution_pairings(&theta, &v_wrong, &u_wrong);
        assert!(!table[0][1].is_zero());
    }

    #[test]
    fn presentation_maps_on_fixtures() {
        let h = HypMatrix::certify(Mat2Z::new(1, 1, 1, 0)).unwrap();
        let p = ruelle_presentation(&h);
        assert_eq!(p.u_map(), Mat2Z::new(1, 1, 1, 0));
        assert_eq!(p.v_map(), Mat2Z::new(0, 1, 1, -1));

        let h = HypMatrix::certify(Mat2Z::new(3, 1, 2, 1)).unwrap();
        let p = ruelle_presentation(&h);
        assert_eq!(p.u_map(), Mat2Z::new(3, 2, 1, 1));
        assert_eq!(p.v_map(), Mat2Z::new(1, -1, -2, 3));
    }

    #[test]
    fn exponent_maps_preserve_the_pairing() {
        for mat in [(1, 1, 1, 0), (3, 1, 2, 1), (-2, 1, 1, -1)] {
            let h = HypMatrix::certify(Mat2Z::new(mat.0, mat.1, mat.2, mat.3)).unwrap();
            let p = ruelle_presentation(&h);
            let theta = p.theta().clone();
            for (g, hh) in [
                ([1, 0, 0, 0], [0, 1, 0, 0]),
                ([0, 1, 0, 2], [1, 0, 2, 0]),
                ([2, -1, 1, 1], [0, 3, -2, 1]),
            ] {
                let before = rho_exponent(&theta, g, hh);
                let after = rho_exponent(&theta, p.apply(g), p.apply(hh));
                assert_eq!(before, after, "{:?}: {:?} vs {:?}", mat, g, hh);
            }
        }
    }

    #[test]
    fn automorphism_check_holds_and_perturbation_breaks_it() {
        for mat in [(1, 1, 1, 0), (3, 1, 2, 1), (-2, 1, 1, -1), (0, 1, 1, 3)] {
            let h = HypMatrix::certify(Mat2Z::new(mat.0, mat.1, mat.2, mat.3)).unwrap();
            assert!(ruelle_automorphism_check(&h), "{:?}", mat);
        }
        // Nudging one coupling entry by 1/7 destroys exact invariance.
        let h = HypMatrix::certify(Mat2Z::new(1, 1, 1, 0)).unwrap();
        let theta = theta_from_eigenvectors(&h);
        let mut q = coupling_matrix(&theta);
        q[0][0] = &q[0][0] + &QuadNum::rational(1, 7).unwrap();
        assert!(!bicharacter_preserved(&q, h.mat()).unwrap());
    }

    proptest! {
        #[test]
        fn product_is_associative(
            x in proptest::array::uniform4(-4i64..=4),
            y in proptest::array::uniform4(-4i64..=4),
            z in proptest::array::uniform4(-4i64..=4),
        ) {
            let theta = golden_theta();
            let (ex, ey, ez) = (elem(&theta, x), elem(&theta, y), elem(&theta, z));
            let left = WeylElement::mul(&theta, &WeylElement::mul(&theta, &ex, &ey), &ez);
            let right = WeylElement::mul(&theta, &ex, &WeylElement::mul(&theta, &ey, &ez));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn commutator_check_holds_generically(
            g in proptest::array::uniform4(-3i64..=3),
            h in proptest::array::uniform4(-3i64..=3),
        ) {
            let theta = golden_theta();
            let x = elem(&theta, g);
            let y = elem(&theta, h);
            prop_assert!(commutator_check(&theta, &x, &y));
        }

        #[test]
        fn pairing_is_biadditive(
            g in proptest::array::uniform4(-3i64..=3),
            g2 in proptest::array::uniform4(-3i64..=3),
            h in proptest::array::uniform4(-3i64..=3),
        ) {
            let theta = golden_theta();
            let sum: [i64; 4] = std::array::from_fn(|i| g[i] + g2[i]);
            let lhs = rho_exponent(&theta, sum, h);
            let rhs = (&rho_exponent(&theta, g, h) + &rho_exponent(&theta, g2, h)).mod_one();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
