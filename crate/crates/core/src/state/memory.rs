use std::collections::BTreeMap;

use crate::word::Word;

/// Sparse byte-addressed memory, stored as 32-byte chunks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Memory {
    chunks: BTreeMap<u64, [u8; 32]>,
    /// High-water mark in bytes, always a multiple of 32.
    size: u64,
}

impl Memory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn msize(&self) -> u64 {
        self.size
    }

    /// Raises the high-water mark to cover `[offset, offset + len)`.
    pub fn touch(&mut self, offset: u64, len: u64) {
        if len == 0 {
            return;
        }
        let end = offset.saturating_add(len);
        let words = end.div_ceil(32);
        self.size = self.size.max(words.saturating_mul(32));
    }

    pub fn read_byte(&self, i: u64) -> u8 {
        self.chunks
            .get(&(i / 32))
            .map_or(0, |c| c[(i % 32) as usize])
    }

    pub fn write_byte(&mut self, i: u64, b: u8) {
        if b == 0 && !self.chunks.contains_key(&(i / 32)) {
            self.touch(i, 1);
            return;
        }
        self.chunks.entry(i / 32).or_insert([0; 32])[(i % 32) as usize] = b;
        self.touch(i, 1);
    }

    pub fn read(&self, offset: u64, len: u64) -> Vec<u8> {
        let mut out = vec![0u8; len as usize];
        if len == 0 {
            return out;
        }
        let first = offset / 32;
        let last = (offset + len - 1) / 32;
        for (&k, chunk) in self.chunks.range(first..=last) {
            let base = k * 32;
            for (j, &b) in chunk.iter().enumerate() {
                let addr = base + j as u64;
                if addr >= offset && addr < offset + len {
                    out[(addr - offset) as usize] = b;
                }
            }
        }
        out
    }

    pub fn write(&mut self, offset: u64, data: &[u8]) {
        for (i, &b) in data.iter().enumerate() {
            self.write_byte(offset + i as u64, b);
        }
    }

    pub fn load_word(&self, offset: u64) -> Word {
        if offset.is_multiple_of(32) {
            return self
                .chunks
                .get(&(offset / 32))
                .map_or(Word::ZERO, |c| Word::from_be_bytes(*c));
        }
        let bytes = self.read(offset, 32);
        Word::from_be_slice(&bytes)
    }

    pub fn store_word(&mut self, offset: u64, w: Word) {
        let bytes: [u8; 32] = w.to_be_bytes();
        if offset.is_multiple_of(32) {
            self.chunks.insert(offset / 32, bytes);
            self.touch(offset, 32);
        } else {
            self.write(offset, &bytes);
        }
    }
}
