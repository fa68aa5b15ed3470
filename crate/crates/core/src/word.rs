//! 256-bit machine words and 160-bit addresses.

use std::fmt;

use ruint::aliases::{U160, U256};

/// A 256-bit EVM word. All arithmetic wraps modulo 2^256.
pub type Word = U256;

/// Largest representable word, `2^256 - 1`.
pub const MAX_WORD: Word = Word::MAX;

/// A 160-bit account address.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Address(U160);

impl Address {
    pub const ZERO: Address = Address(U160::ZERO);

    /// Truncates a word to its low 160 bits.
    pub fn from_word(w: Word) -> Self {
        let bytes = w.to_be_bytes::<32>();
        Address(U160::from_be_slice(&bytes[12..]))
    }

    pub fn to_word(self) -> Word {
        Word::from(self.0)
    }

    pub fn from_u64(v: u64) -> Self {
        Address(U160::from(v))
    }

    /// Interprets `bytes` as a big-endian number (at most 20 bytes).
    pub fn from_be_slice(bytes: &[u8]) -> Self {
        Address(U160::from_be_slice(bytes))
    }

    pub fn to_be_bytes(self) -> [u8; 20] {
        self.0.to_be_bytes::<20>()
    }

    /// Parses `0x`-prefixed hex or decimal text.
    pub fn parse(text: &str) -> Option<Self> {
        let w = parse_word(text)?;
        if w.bit_len() > 160 {
            return None;
        }
        Some(Address::from_word(w))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.0)
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Address({self})")
    }
}

/// Parses a decimal or `0x`-prefixed hexadecimal word. Underscores are ignored.
pub fn parse_word(text: &str) -> Option<Word> {
    let t: String = text.trim().chars().filter(|c| *c != '_').collect();
    if t.is_empty() {
        return None;
    }
    if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        if hex.is_empty() || hex.len() > 64 {
            return None;
        }
        Word::from_str_radix(hex, 16).ok()
    } else {
        if !t.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        Word::from_str_radix(&t, 10).ok()
    }
}

/// Reads a word from up to 32 bytes, right-padding with zeros.
pub fn word_from_padded(bytes: &[u8]) -> Word {
    let mut buf = [0u8; 32];
    let n = bytes.len().min(32);
    buf[..n].copy_from_slice(&bytes[..n]);
    Word::from_be_bytes(buf)
}

pub fn word_to_bytes(w: Word) -> [u8; 32] {
    w.to_be_bytes::<32>()
}

pub fn bool_word(b: bool) -> Word {
    if b {
        Word::from(1u8)
    } else {
        Word::ZERO
    }
}

/// Converts to `u64` when the word fits.
pub fn to_u64(w: Word) -> Option<u64> {
    u64::try_from(w).ok()
}

pub fn is_negative(w: Word) -> bool {
    w.bit(255)
}

/// Absolute value under the two's-complement reading; `-2^255` maps to itself.
pub fn abs_signed(w: Word) -> Word {
    if is_negative(w) {
        w.wrapping_neg()
    } else {
        w
    }
}

/// Lowercase `0x` hex rendering without leading zeros.
pub fn hex_word(w: Word) -> String {
    format!("0x{w:x}")
}

/// Two's-complement decimal rendering.
pub fn signed_decimal(w: Word) -> String {
    if is_negative(w) {
        format!("-{}", w.wrapping_neg())
    } else {
        w.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn address_truncates_high_bits() {
        let w = MAX_WORD;
        let a = Address::from_word(w);
        assert_eq!(a.to_word(), (Word::from(1u8) << 160) - Word::from(1u8));
    }

    #[test]
    fn address_display_drops_leading_zeros() {
        let a = Address::parse("0x0102030405060708090A").unwrap();
        assert_eq!(a.to_string(), "0x102030405060708090a");
    }

    #[test]
    fn parse_word_forms() {
        assert_eq!(parse_word("1000"), Some(Word::from(1000u64)));
        assert_eq!(parse_word("0xff"), Some(Word::from(255u64)));
        assert_eq!(parse_word("1_000"), Some(Word::from(1000u64)));
        assert_eq!(parse_word("x"), None);
        assert_eq!(parse_word("0x"), None);
        assert_eq!(parse_word(&"f".repeat(65).replacen('f', "0xf", 1)), None);
    }

    #[test]
    fn signed_rendering() {
        assert_eq!(signed_decimal(MAX_WORD), "-1");
        assert_eq!(signed_decimal(Word::from(5u8)), "5");
    }
}
