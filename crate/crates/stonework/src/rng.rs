//! Seeded randomness: one ChaCha8 stream per suite, derived from the run seed.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stonework_core::scalar::{gauss, Float, GaussRational, Scalar};

/// Stream number of each suite. Fixed so that adding a suite never shifts
/// the samples of another.
pub fn stream_id(suite: &str) -> u64 {
    match suite {
        "dyadic-laws" => 1,
        "orbit-freeness" => 2,
        "clopen-images" => 3,
        "involution-tower" => 4,
        "z-action" => 5,
        "groupoid-laws" => 6,
        "groupoid-identities" => 7,
        "groupoid-approximation" => 8,
        "diagonal-masa" => 9,
        "normalizer" => 10,
        "fermion-tower" => 11,
        "boolean-saturation" => 12,
        "feasible-space" => 13,
        "afd" => 14,
        _ => 0,
    }
}

pub fn substream(seed: u64, suite: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(suite));
    rng
}

/// Scalars that can be drawn at random.
pub trait Sample: Scalar {
    /// A small random value; zero about a third of the time so that
    /// vanishing rows and diagonals occur in samples.
    fn sample(rng: &mut ChaCha8Rng) -> Self;
    /// A random unimodular value.
    fn phase(rng: &mut ChaCha8Rng) -> Self;
    /// The real number `n / d`.
    fn from_ratio(n: i64, d: i64) -> Self;
}

impl Sample for GaussRational {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        if rng.gen_ratio(1, 3) {
            return Self::zero();
        }
        let mut part = || (rng.gen_range(-5i128..=5), rng.gen_range(1i128..=4));
        gauss(part(), part())
    }

    fn phase(rng: &mut ChaCha8Rng) -> Self {
        [gauss((1, 1), (0, 1)), gauss((0, 1), (1, 1)), gauss((-1, 1), (0, 1)), gauss((0, 1), (-1, 1))]
            [rng.gen_range(0..4)]
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        gauss((n.into(), d.into()), (0, 1))
    }
}

impl Sample for Float {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        if rng.gen_ratio(1, 3) {
            return Self::zero();
        }
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    fn phase(rng: &mut ChaCha8Rng) -> Self {
        Complex::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Complex::new(n as f64 / d as f64, 0.0)
    }
}
