//! Seeded pseudorandom stream shared by every sampled operation.
//!
//! The generator is xorshift64* with the state initialised as
//! `seed ^ 0x9E37_79B9_7F4A_7C15` (replaced by that constant if the xor is
//! zero). One step is
//!
//! ```text
//! x ^= x >> 12;
//! x ^= x << 25;
//! x ^= x >> 27;
//! output = x * 0x2545_F491_4F6C_DD1D   (wrapping)
//! ```
//!
//! Bounded integers are drawn as `output % span` on the upper 32 bits, which
//! is slightly biased but portable and reproducible.

use crate::exact::Rational;
use num_bigint::BigInt;

const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;
const MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;

#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = match seed ^ SEED_MIX {
            0 => SEED_MIX,
            s => s,
        };
        Self { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(MULTIPLIER)
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + ((self.next_u64() >> 32) % span) as i64
    }

    pub fn rational_in(&mut self, lo: i64, hi: i64) -> Rational {
        Rational::from_integer(BigInt::from(self.int_in(lo, hi)))
    }

    /// Vector of `len` small integers in `lo..=hi`, redrawn until nonzero.
    pub fn nonzero_vector(&mut self, len: usize, lo: i64, hi: i64) -> Vec<Rational> {
        loop {
            let v: Vec<i64> = (0..len).map(|_| self.int_in(lo, hi)).collect();
            if v.iter().any(|&x| x != 0) {
                return v
                    .into_iter()
                    .map(|x| Rational::from_integer(x.into()))
                    .collect();
            }
        }
    }
}
