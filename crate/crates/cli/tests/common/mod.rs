//! Shared helpers for the integration suites: seeded random matrices, random
//! Weyl words, and a brute-force normal-ordering oracle that recomputes
//! phases one adjacent transposition at a time.
#![allow(dead_code)]

use nctorus::exactfield::QuadNum;
use nctorus::hyperbolic::Mat2Z;
use nctorus::torusparams::ThetaVector;
use nctorus::weyl::Gen;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random hyperbolic matrix with entries in `[-10, 10]`, by rejection.
pub fn random_hyperbolic(rng: &mut StdRng) -> Mat2Z {
    loop {
        let m = Mat2Z::new(
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
        );
        if m.is_hyperbolic() {
            return m;
        }
    }
}

/// Random determinant-±1 matrix built from a short product of elementary
/// shears and swaps, so the entries stay small.
pub fn random_unimodular(rng: &mut StdRng) -> Mat2Z {
    let mut m = Mat2Z::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(-3..=3);
        m = m * if rng.gen_bool(0.5) {
            Mat2Z::new(1, k, 0, 1)
        } else {
            Mat2Z::new(1, 0, k, 1)
        };
        if rng.gen_bool(0.3) {
            m = m * Mat2Z::new(0, 1, -1, 0);
        }
    }
    m
}

/// Random exponent vector with entries in `[-bound, bound]`.
pub fn random_exponents(rng: &mut StdRng, bound: i64) -> [i64; 4] {
    std::array::from_fn(|_| rng.gen_range(-bound..=bound))
}

/// The normal-form word for an exponent vector.
pub fn word_of(exp: [i64; 4]) -> Vec<(Gen, i64)> {
    vec![
        (Gen::V1, exp[0]),
        (Gen::U1, exp[1]),
        (Gen::V2, exp[2]),
        (Gen::U2, exp[3]),
    ]
}

fn slot(g: Gen) -> usize {
    match g {
        Gen::V1 => 0,
        Gen::U1 => 1,
        Gen::V2 => 2,
        Gen::U2 => 3,
    }
}

/// Phase picked up when the adjacent pair `left right` (slots out of order)
/// is rewritten as `right left`, for unit letters with positive exponent.
///
/// The couplings come straight from the defining relations
/// `Vⱼ Uₖ = e(θⱼₖ) Uₖ Vⱼ`: rewriting `U₁V₁ → V₁U₁` costs `−θ₁`,
/// `U₂V₁ → V₁U₂` costs `−θ₂`, `V₂U₁ → U₁V₂` costs `+θ₃`, and
/// `U₂V₂ → V₂U₂` costs `−θ₄`; same-class pairs commute freely.
fn transposition_phase(theta: &ThetaVector, left: usize, right: usize) -> Option<QuadNum> {
    let (t, negate) = match (left, right) {
        (1, 0) => (theta.theta(1), true),
        (3, 0) => (theta.theta(2), true),
        (2, 1) => (theta.theta(3), false),
        (3, 2) => (theta.theta(4), true),
        _ => return None,
    };
    Some(if negate { -t.clone() } else { t.clone() })
}

/// Brute-force normal ordering: expand the word into unit letters, bubble
/// them into slot order while accumulating the transposition phases, and
/// return the reduced phase together with the collected exponents.
pub fn normal_order_oracle(theta: &ThetaVector, word: &[(Gen, i64)]) -> (QuadNum, [i64; 4]) {
    let mut letters: Vec<(usize, i64)> = Vec::new();
    for &(g, e) in word {
        let sign = if e >= 0 { 1 } else { -1 };
        for _ in 0..e.abs() {
            letters.push((slot(g), sign));
        }
    }

    let mut phase = QuadNum::zero();
    loop {
        let mut swapped = false;
        for i in 1..letters.len() {
            let (ls, le) = letters[i - 1];
            let (rs, re) = letters[i];
            if ls > rs {
                if let Some(t) = transposition_phase(theta, ls, rs) {
                    let signed = if le * re < 0 { -t } else { t };
                    phase = &phase + &signed;
                }
                letters.swap(i - 1, i);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    let mut exp = [0i64; 4];
    for (s, e) in letters {
        exp[s] += e;
    }
    (phase.mod_one(), exp)
}

/// The inverse of a normal-form word as a word: reversed letters, negated
/// powers.
pub fn inverse_word(word: &[(Gen, i64)]) -> Vec<(Gen, i64)> {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}
