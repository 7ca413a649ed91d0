//! Deterministic random streams.
//!
//! xoshiro256++ seeded by four splitmix64 outputs, Box–Muller Gaussians.
//! The algorithms are fixed so that any implementation, in any language,
//! reproduces the same streams from the same seeds.

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const FNV_OFFSET: u64 = 0xCBF2_9CE4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01B3;

/// Advances a splitmix64 state and returns the next output.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(SPLITMIX_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// First splitmix64 output for a given starting state.
pub fn splitmix64_once(x: u64) -> u64 {
    let mut state = x;
    splitmix64(&mut state)
}

/// 64-bit FNV-1a hash.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// Single-owner xoshiro256++ stream.
///
/// Gaussian draws use both Box–Muller outputs: an even-numbered call
/// consumes two uniforms and caches the sine branch for the next call.
#[derive(Debug, Clone, PartialEq)]
pub struct RngStream {
    state: [u64; 4],
    origin_seed: u64,
    cached_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let state = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        RngStream { state, origin_seed: seed, cached_normal: None }
    }

    /// Stream for one experiment cell: `splitmix64(master ^ fnv1a64(tags.join("/")))`.
    pub fn derive<S: AsRef<str>>(master: u64, tags: &[S]) -> Self {
        RngStream::new(derive_seed(master, tags))
    }

    #[cfg(test)]
    pub(crate) fn from_state(state: [u64; 4]) -> Self {
        RngStream { state, origin_seed: 0, cached_normal: None }
    }

    pub fn origin_seed(&self) -> u64 {
        self.origin_seed
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[0].wrapping_add(s[3]).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)`, unbiased (Lemire's multiply-and-reject).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = u128::from(self.next_u64()) * u128::from(n);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Fair coin from the top bit.
    pub fn next_bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.cached_normal.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite.
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.cached_normal = Some(radius * angle.sin());
        radius * angle.cos()
    }
}

pub fn derive_seed<S: AsRef<str>>(master: u64, tags: &[S]) -> u64 {
    let joined = tags.iter().map(AsRef::as_ref).collect::<Vec<_>>().join("/");
    splitmix64_once(master ^ fnv1a64(joined.as_bytes()))
}
