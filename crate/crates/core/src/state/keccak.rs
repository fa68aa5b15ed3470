use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use sha2::{Digest, Sha256};

use crate::word::Word;

/// Default oracle seed. Any fixed value works; this one spells "yulgc".
pub const DEFAULT_SEED: u64 = 0x79_75_6c_67_63;

#[derive(Debug, Default)]
struct Tables {
    forward: HashMap<Vec<u8>, Word>,
    reverse: HashMap<Word, Vec<u8>>,
}

/// Stand-in for Keccak-256: an injective, memoised map from byte strings to
/// words. Each fresh input gets a pseudo-random word from a generator keyed by
/// the seed and the input itself, so results do not depend on query order.
///
/// Clones share the same tables.
#[derive(Debug, Clone)]
pub struct KeccakOracle {
    seed: u64,
    tables: Arc<Mutex<Tables>>,
}

impl Default for KeccakOracle {
    fn default() -> Self {
        KeccakOracle::new(DEFAULT_SEED)
    }
}

impl KeccakOracle {
    pub fn new(seed: u64) -> Self {
        KeccakOracle {
            seed,
            tables: Arc::new(Mutex::new(Tables::default())),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn hash(&self, input: &[u8]) -> Word {
        let mut t = self.tables.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(w) = t.forward.get(input) {
            return *w;
        }
        let mut h = Sha256::new();
        h.update(self.seed.to_be_bytes());
        h.update(input);
        let mut rng = ChaCha20Rng::from_seed(h.finalize().into());
        let w = loop {
            let mut buf = [0u8; 32];
            rng.fill_bytes(&mut buf);
            let cand = Word::from_be_bytes(buf);
            if !cand.is_zero() && !t.reverse.contains_key(&cand) {
                break cand;
            }
        };
        t.forward.insert(input.to_vec(), w);
        t.reverse.insert(w, input.to_vec());
        w
    }

    /// The input that produced `w`, if it was ever hashed.
    pub fn preimage(&self, w: Word) -> Option<Vec<u8>> {
        let t = self.tables.lock().unwrap_or_else(|e| e.into_inner());
        t.reverse.get(&w).cloned()
    }

    pub fn len(&self) -> usize {
        self.tables
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .forward
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memoised() {
        let o = KeccakOracle::default();
        let a = o.hash(b"abc");
        assert_eq!(o.hash(b"abc"), a);
        assert_eq!(o.len(), 1);
        assert_eq!(o.preimage(a).as_deref(), Some(&b"abc"[..]));
    }

    #[test]
    fn order_independent() {
        let a = KeccakOracle::default();
        let b = KeccakOracle::default();
        let x1 = a.hash(b"x");
        let y1 = a.hash(b"y");
        let y2 = b.hash(b"y");
        let x2 = b.hash(b"x");
        assert_eq!((x1, y1), (x2, y2));
    }

    #[test]
    fn seed_matters() {
        assert_ne!(
            KeccakOracle::new(1).hash(b""),
            KeccakOracle::new(2).hash(b"")
        );
    }

    #[test]
    fn clones_share_tables() {
        let a = KeccakOracle::default();
        let b = a.clone();
        let h = a.hash(b"shared");
        assert_eq!(b.preimage(h).as_deref(), Some(&b"shared"[..]));
    }
}
