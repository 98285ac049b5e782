//! Seed derivation and the per-trial generator.
//!
//! Every random draw in the crate comes from either
//! * a `ChaCha8Rng` seeded through [`trial_rng`], or
//! * the stateless hash [`mix`] (SplitMix64 finalizer) keyed by integers,
//!   used where draws must not depend on iteration order (dilution).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fold a list of words into one seed. Order matters.
pub fn derive(parts: &[u64]) -> u64 {
    parts.iter().fold(0x6C64_6C00_u64, |acc, &p| mix(acc ^ mix(p)))
}

/// Uniform draw in [0,1) from a hash value (53 significant bits).
#[inline]
pub fn unit(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Key for a lattice point under a seed.
#[inline]
pub fn point_key(seed: u64, x: i64, y: i64) -> u64 {
    mix(mix(seed ^ mix(x as u64)) ^ (y as u64))
}

pub fn trial_rng(parts: &[u64]) -> TrialRng {
    ChaCha8Rng::seed_from_u64(derive(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn mix_reference_values() {
        // SplitMix64 with state 0 yields these first outputs.
        assert_eq!(mix(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(mix(GOLDEN), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn derive_is_order_sensitive() {
        assert_ne!(derive(&[1, 2]), derive(&[2, 1]));
        assert_eq!(derive(&[5, 6, 7]), derive(&[5, 6, 7]));
    }

    #[test]
    fn unit_in_range() {
        for i in 0..1000u64 {
            let u = unit(mix(i));
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn trial_rng_replays() {
        let mut a = trial_rng(&[42, 3]);
        let mut b = trial_rng(&[42, 3]);
        let xs: Vec<u64> = (0..8).map(|_| a.random()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.random()).collect();
        assert_eq!(xs, ys);
    }
}
