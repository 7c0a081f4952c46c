//! Counter-based random streams keyed by `(seed, stream id)`.

use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A reproducible random stream.
///
/// The ChaCha key is expanded from `seed` and the 64-bit ChaCha stream
/// (nonce) is a hash of the stream id, so the same `(seed, stream id)` gives
/// the same sequence on every platform and different ids give independent
/// keystreams. No global state is involved.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: Vec<u64>,
    rng: ChaCha12Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: &[u64]) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed;
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut h = stream_id.len() as u64;
        let mut nonce = splitmix64(&mut h);
        for &id in stream_id {
            let mut s = nonce ^ id;
            nonce = splitmix64(&mut s);
        }
        let mut rng = ChaCha12Rng::from_seed(key);
        rng.set_stream(nonce);
        RngStream {
            seed,
            stream_id: stream_id.to_vec(),
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> &[u64] {
        &self.stream_id
    }

    /// A fresh stream whose id is this one's id followed by `extra`.
    pub fn derive(&self, extra: &[u64]) -> RngStream {
        let mut id = self.stream_id.clone();
        id.extend_from_slice(extra);
        RngStream::new(self.seed, &id)
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Uniform in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// `k` distinct indices from `0..n`, sorted ascending.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut v = self.choose_indices(n, k);
        v.sort_unstable();
        v
    }

    /// `k` distinct indices from `0..n` in draw order.
    pub fn choose_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        index::sample(&mut self.rng, n, k).into_vec()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}
