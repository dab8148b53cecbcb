//! SplitMix64, the seeded generator behind every design draw.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

/// Advances `state` and returns the next raw 64-bit output.
#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One step of the generator: the next state and a uniform draw in `[0, 1)`.
///
/// The draw is `z / 2^64` rounded to the nearest double; outputs within
/// 2^10 of `u64::MAX` would round up to 1.0 and are clamped to the largest
/// double below one.
pub fn prng_next(state: u64) -> (u64, f64) {
    let mut s = state;
    let z = splitmix64(&mut s);
    (s, to_unit(z))
}

#[inline]
fn to_unit(z: u64) -> f64 {
    let u = z as f64 / TWO_POW_64;
    if u < 1.0 {
        u
    } else {
        1.0 - f64::EPSILON / 2.0
    }
}

/// Stateful wrapper used when streaming many draws.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        splitmix64(&mut self.state)
    }

    pub fn next_f64(&mut self) -> f64 {
        to_unit(self.next_u64())
    }
}

impl Iterator for SplitMix64 {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.next_f64())
    }
}
