#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use bridgesynth::synth::numeric::{cancelling_realization, fig7_family};
use bridgesynth::topology::dual_realization;
use bridgesynth::{Biquadratic, ConfigId, Realization};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform in [10^lo, 10^hi].
pub fn log_uniform(rng: &mut TestRng, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.gen_range(lo..hi))
}

/// Six log-uniform coefficients in [1e-2, 1e2].
pub fn random_biquad(rng: &mut TestRng) -> Biquadratic {
    let c: Vec<f64> = (0..6).map(|_| log_uniform(rng, -2.0, 2.0)).collect();
    Biquadratic::new(c[0], c[1], c[2], c[3], c[4], c[5]).unwrap()
}

/// Random member of the five-element class.
pub fn random_zb(rng: &mut TestRng) -> Biquadratic {
    loop {
        let z = random_biquad(rng);
        if z.membership().in_zb() {
            return z;
        }
    }
}

/// Element values log-uniform in [1e-2, 1e2].
pub fn random_realization(rng: &mut TestRng, id: ConfigId) -> Realization {
    let pairs: Vec<(String, f64)> = id
        .configuration()
        .labels()
        .iter()
        .map(|l| (l.to_string(), log_uniform(rng, -2.0, 2.0)))
        .collect();
    Realization::new(id, pairs.into_iter().collect()).unwrap()
}

/// Three-reactive placements for which the cancellation generator finds
/// solutions reliably.
pub const FIG7_SAMPLED_VARIANTS: [u8; 3] = [1, 2, 3];

/// A three-reactive realization whose impedance is biquadratic: four values
/// drawn at random, the fifth solved for a common numerator/denominator root.
pub fn random_fig7(rng: &mut TestRng, dual: bool) -> Realization {
    loop {
        let k = FIG7_SAMPLED_VARIANTS[rng.gen_range(0..FIG7_SAMPLED_VARIANTS.len())];
        let id = fig7_family(false)[k as usize - 1];
        let values: Vec<f64> = (0..5).map(|_| log_uniform(rng, -1.0, 1.0)).collect();
        let free = rng.gen_range(0..5);
        if let Some(r) = cancelling_realization(id, &values, free) {
            return if dual { dual_realization(&r).unwrap() } else { r };
        }
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
