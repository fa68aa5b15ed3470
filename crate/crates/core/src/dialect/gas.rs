//! Gas constants (Shanghai schedule, warm access prices throughout).

use crate::word::Word;

pub const ZERO: u64 = 0;
pub const BASE: u64 = 2;
pub const VERYLOW: u64 = 3;
pub const LOW: u64 = 5;
pub const MID: u64 = 8;
pub const EXP: u64 = 10;
pub const EXP_BYTE: u64 = 50;
pub const KECCAK: u64 = 30;
pub const KECCAK_WORD: u64 = 6;
pub const COPY_WORD: u64 = 3;
pub const WARM_ACCESS: u64 = 100;
pub const SSTORE_SET: u64 = 20_000;
pub const SSTORE_RESET: u64 = 2_900;
pub const SSTORE_SENTRY: u64 = 2_300;
pub const BLOCKHASH: u64 = 20;
pub const LOG: u64 = 375;
pub const LOG_TOPIC: u64 = 375;
pub const LOG_DATA: u64 = 8;
pub const CALL_VALUE: u64 = 9_000;
pub const CALL_STIPEND: u64 = 2_300;
pub const CREATE: u64 = 32_000;
pub const INITCODE_WORD: u64 = 2;
pub const KECCAK_WORD_CREATE2: u64 = 6;
pub const MEMORY: u64 = 3;
pub const QUAD_DIVISOR: u64 = 512;

/// Total cost of a memory of `words` 32-byte words; `None` if it overflows.
pub fn memory_cost(words: Word) -> Option<Word> {
    let sq = words.checked_mul(words)?;
    words
        .checked_mul(Word::from(MEMORY))?
        .checked_add(sq / Word::from(QUAD_DIVISOR))
}

/// Number of words needed to cover `bytes` bytes.
pub fn words(bytes: Word) -> Word {
    let (q, r) = bytes.div_rem(Word::from(32u8));
    if r.is_zero() {
        q
    } else {
        q + Word::from(1u8)
    }
}

/// Bytes needed to represent `w` (0 for zero).
pub fn byte_len(w: Word) -> u64 {
    w.bit_len().div_ceil(8) as u64
}

/// All but one 64th, the most a call may forward.
pub fn all_but_one_64th(gas: Word) -> Word {
    gas - gas / Word::from(64u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memory_schedule() {
        assert_eq!(memory_cost(Word::from(1u8)), Some(Word::from(3u8)));
        // 3 * 1024 + 1024^2 / 512
        assert_eq!(memory_cost(Word::from(1024u16)), Some(Word::from(5120u16)));
        assert_eq!(memory_cost(Word::MAX), None);
    }

    #[test]
    fn word_rounding() {
        assert_eq!(words(Word::ZERO), Word::ZERO);
        assert_eq!(words(Word::from(1u8)), Word::from(1u8));
        assert_eq!(words(Word::from(32u8)), Word::from(1u8));
        assert_eq!(words(Word::from(33u8)), Word::from(2u8));
    }

    #[test]
    fn exponent_bytes() {
        assert_eq!(byte_len(Word::ZERO), 0);
        assert_eq!(byte_len(Word::from(255u8)), 1);
        assert_eq!(byte_len(Word::from(256u16)), 2);
        assert_eq!(byte_len(Word::MAX), 32);
    }
}
