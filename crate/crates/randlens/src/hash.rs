//! Stable 64-bit hashing with pinned constants.
//!
//! Run identifiers, derived seeds and synthetic-oracle offsets all go through
//! this hasher instead of `std::hash`, so the values match across platforms,
//! toolchains and process restarts. The scheme is FNV-1a over a
//! length-prefixed byte encoding, followed by a splitmix64 finalizer for
//! avalanche.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Incremental stable hasher. Field order matters; strings and byte slices
/// are length-prefixed so adjacent fields cannot alias.
#[derive(Debug, Clone)]
pub struct StableHasher {
    state: u64,
}

impl Default for StableHasher {
    fn default() -> Self {
        Self::new()
    }
}

impl StableHasher {
    pub fn new() -> Self {
        Self { state: FNV_OFFSET }
    }

    fn write_raw(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.state ^= u64::from(b);
            self.state = self.state.wrapping_mul(FNV_PRIME);
        }
    }

    pub fn write_bytes(mut self, bytes: &[u8]) -> Self {
        self.write_raw(&(bytes.len() as u64).to_le_bytes());
        self.write_raw(bytes);
        self
    }

    pub fn write_str(self, s: &str) -> Self {
        self.write_bytes(s.as_bytes())
    }

    pub fn write_u64(mut self, v: u64) -> Self {
        self.write_raw(&v.to_le_bytes());
        self
    }

    pub fn write_usize(self, v: usize) -> Self {
        self.write_u64(v as u64)
    }

    pub fn finish(&self) -> u64 {
        splitmix64(self.state)
    }
}

/// splitmix64 finalizer (Steele, Lea & Flood constants).
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derives a sub-seed from a parent seed and a purpose tag. Used to fan a
/// single master seed out into independent, reproducible RNG streams.
pub fn mix_seed(seed: u64, tag: &str) -> u64 {
    StableHasher::new().write_u64(seed).write_str(tag).finish()
}

/// Standard normal deviate derived deterministically from a hash value via
/// Box-Muller over two splitmix64 steps.
pub fn normal_from_hash(h: u64) -> f64 {
    let a = splitmix64(h);
    let b = splitmix64(a);
    // map to (0, 1] so the logarithm is finite
    let u1 = ((a >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
    let u2 = (b >> 11) as f64 / (1u64 << 53) as f64;
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
