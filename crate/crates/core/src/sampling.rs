//! Seeded random inputs: rational pants parameters, points of the projective
//! line, and generic flags.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::flag::{is_generic, Flag};
use crate::pants::{PantsParams, ProjPoint};
use crate::scalar::Rational;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `α > 1`, `0 < γ < 1` and `β > 1/α`, with small numerators and denominators.
pub fn random_params(rng: &mut impl Rng) -> PantsParams<Rational> {
    loop {
        let alpha = Rational::from_integer(1.into()) + ratio(rng.gen_range(1..=24), rng.gen_range(1..=9));
        let den = rng.gen_range(2..=11);
        let gamma = ratio(rng.gen_range(1..den), den);
        let beta = alpha.recip() + ratio(rng.gen_range(1..=24), rng.gen_range(1..=9));
        if let Ok(p) = PantsParams::new(alpha, beta, gamma) {
            return p;
        }
    }
}

/// `∞` about one time in eight, otherwise a small rational.
pub fn random_point(rng: &mut impl Rng) -> ProjPoint<Rational> {
    if rng.gen_range(0..8) == 0 {
        ProjPoint::infinity()
    } else {
        ProjPoint::finite(ratio(rng.gen_range(-30..=30), rng.gen_range(1..=7)))
    }
}

/// A flag with random small integer basis vectors.
pub fn random_flag(rng: &mut impl Rng, n: usize) -> Flag<Rational> {
    loop {
        let basis = (0..n)
            .map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(-5i64..=5).into())).collect())
            .collect();
        if let Ok(f) = Flag::new(basis) {
            return f;
        }
    }
}

/// `k` random flags in general position.
pub fn random_generic_flags(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Flag<Rational>> {
    loop {
        let flags: Vec<_> = (0..k).map(|_| random_flag(rng, n)).collect();
        let refs: Vec<&Flag<Rational>> = flags.iter().collect();
        if is_generic(&refs).unwrap_or(false) {
            return flags;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_params_repeat() {
        let a: Vec<_> = (0..5).map({
            let mut r = rng(7);
            move |_| random_params(&mut r)
        }).collect();
        let b: Vec<_> = (0..5).map({
            let mut r = rng(7);
            move |_| random_params(&mut r)
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn generic_flags_are_generic() {
        let mut r = rng(3);
        let flags = random_generic_flags(&mut r, 4, 3);
        assert!(is_generic(&flags.iter().collect::<Vec<_>>()).unwrap());
    }
}
