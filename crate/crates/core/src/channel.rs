//! Rayleigh block-fading draws.
//!
//! Squared magnitudes are exponential with the configured means and are
//! sampled by inverse CDF from a counter-based ChaCha8 stream, so the draw at
//! position `k` depends only on `(seed, stream_index, k)`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::params::SystemParams;
use crate::scalar::Real;

/// Uniform words consumed per draw (five `u64`, two 32-bit words each).
const WORDS_PER_DRAW: u128 = 10;

/// One realization of the five squared channel magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ChannelDraw<T> {
    pub g_sun: T,
    pub g_sr: T,
    pub g_unr: T,
    pub g_ruf: T,
    pub g_unuf: T,
}

impl<T: Real> ChannelDraw<T> {
    pub fn zero() -> Self {
        ChannelDraw {
            g_sun: T::zero(),
            g_sr: T::zero(),
            g_unr: T::zero(),
            g_ruf: T::zero(),
            g_unuf: T::zero(),
        }
    }

    pub fn as_array(&self) -> [T; 5] {
        [self.g_sun, self.g_sr, self.g_unr, self.g_ruf, self.g_unuf]
    }
}

/// Identifies an independent random sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        RngStream { seed, stream_index }
    }

    /// Generator positioned at the first word of draw `position`.
    fn generator_at(&self, position: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng.set_word_pos(u128::from(position) * WORDS_PER_DRAW);
        rng
    }
}

/// Maps a `u64` to a uniform on `(0, 1]`.
#[inline]
fn open_unit(word: u64) -> f64 {
    ((word >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
fn exponential<T: Real>(rng: &mut ChaCha8Rng, mean: T) -> T {
    let e = -open_unit(rng.next_u64()).ln();
    mean * T::lit(e)
}

#[inline]
fn next_draw<T: Real>(rng: &mut ChaCha8Rng, p: &SystemParams<T>) -> ChannelDraw<T> {
    ChannelDraw {
        g_sun: exponential(rng, p.lambda_sun),
        g_sr: exponential(rng, p.lambda_sr),
        g_unr: exponential(rng, p.lambda_run),
        g_ruf: exponential(rng, p.lambda_ruf),
        g_unuf: exponential(rng, p.lambda_unuf),
    }
}

/// The draw at global `position` of `stream`.
pub fn sample<T: Real>(params: &SystemParams<T>, stream: RngStream, position: u64) -> ChannelDraw<T> {
    next_draw(&mut stream.generator_at(position), params)
}

/// Fills `out` with the draws at positions `start, start + 1, ...`.
pub fn sample_into<T: Real>(
    params: &SystemParams<T>,
    stream: RngStream,
    start: u64,
    out: &mut [ChannelDraw<T>],
) {
    let mut rng = stream.generator_at(start);
    for d in out.iter_mut() {
        *d = next_draw(&mut rng, params);
    }
}

/// Calls `f` on the draws at positions `start..start + count` without buffering.
pub fn for_each_draw<T: Real, F: FnMut(&ChannelDraw<T>)>(
    params: &SystemParams<T>,
    stream: RngStream,
    start: u64,
    count: u64,
    mut f: F,
) {
    let mut rng = stream.generator_at(start);
    for _ in 0..count {
        f(&next_draw(&mut rng, params));
    }
}
