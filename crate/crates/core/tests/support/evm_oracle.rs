//! Arbitrary-precision reference semantics for the arithmetic builtins and a
//! harness that runs single builtins.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use yulgc_core::dialect::{exec, Builtin, CallContext, Host, Outcome};
use yulgc_core::state::{KeccakOracle, World};
use yulgc_core::yul::ObjectTable;
use yulgc_core::{Address, Word};

pub const GAS: u64 = 10_000_000;

pub struct Harness {
    pub ctx: CallContext,
    pub world: World,
    pub objects: ObjectTable,
}

impl Harness {
    pub fn new() -> Self {
        Harness {
            ctx: CallContext::new(
                Address::from_u64(0xc0de),
                Word::ZERO,
                Address::from_u64(0xca11),
                Word::from(GAS),
            ),
            world: World::new(KeccakOracle::default()),
            objects: ObjectTable::default(),
        }
    }

    /// Result and gas charged for one builtin.
    pub fn run(&mut self, name: &str, args: &[Word]) -> (Option<Word>, u64) {
        let op = Builtin::from_name(name).unwrap_or_else(|| panic!("no builtin {name}"));
        let before: u64 = self.ctx.gas.try_into().unwrap();
        let print = |_: &str| {};
        let host = Host {
            objects: &self.objects,
            opponents: &[],
            print: &print,
        };
        let out = exec(op, args, None, &mut self.ctx, &mut self.world, &host).expect("no fault");
        let after: u64 = self.ctx.gas.try_into().unwrap();
        let value = match out {
            Outcome::Value(w) => Some(w),
            Outcome::Done => None,
            other => panic!("{name}: unexpected {other:?}"),
        };
        (value, before - after)
    }
}

pub fn big(w: Word) -> BigUint {
    BigUint::from_bytes_be(&w.to_be_bytes::<32>())
}

pub fn modulus() -> BigUint {
    BigUint::one() << 256u32
}

pub fn word(b: &BigUint) -> Word {
    let b = b % modulus();
    Word::from_be_slice(&b.to_bytes_be())
}

pub fn signed(w: Word) -> BigInt {
    let u = BigInt::from_biguint(Sign::Plus, big(w));
    if w.bit(255) {
        u - BigInt::from_biguint(Sign::Plus, modulus())
    } else {
        u
    }
}

pub fn from_signed(i: &BigInt) -> Word {
    let m = BigInt::from_biguint(Sign::Plus, modulus());
    let r = ((i % &m) + &m) % &m;
    word(&r.to_biguint().unwrap())
}

pub fn bool_word(b: bool) -> Word {
    Word::from(b as u8)
}

pub fn small(w: Word) -> Option<u32> {
    u32::try_from(w).ok()
}

/// Expected value and gas, computed without the word type's arithmetic.
pub fn oracle(name: &str, a: &[Word]) -> (Word, u64) {
    let x = || big(a[0]);
    let y = || big(a[1]);
    match name {
        "add" => (word(&(x() + y())), 3),
        "sub" => (word(&(x() + modulus() - y())), 3),
        "mul" => (word(&(x() * y())), 5),
        "div" => (
            if y().is_zero() {
                Word::ZERO
            } else {
                word(&(x() / y()))
            },
            5,
        ),
        "mod" => (
            if y().is_zero() {
                Word::ZERO
            } else {
                word(&(x() % y()))
            },
            5,
        ),
        "sdiv" => {
            let d = signed(a[1]);
            (
                if d.is_zero() {
                    Word::ZERO
                } else {
                    from_signed(&(signed(a[0]) / d))
                },
                5,
            )
        }
        "smod" => {
            let d = signed(a[1]);
            (
                if d.is_zero() {
                    Word::ZERO
                } else {
                    from_signed(&(signed(a[0]) % d))
                },
                5,
            )
        }
        "addmod" | "mulmod" => {
            let n = big(a[2]);
            let v = if n.is_zero() {
                Word::ZERO
            } else if name == "addmod" {
                word(&((x() + y()) % n))
            } else {
                word(&((x() * y()) % n))
            };
            (v, 8)
        }
        "exp" => {
            let len = a[1]
                .to_be_bytes::<32>()
                .iter()
                .skip_while(|b| **b == 0)
                .count() as u64;
            (word(&x().modpow(&y(), &modulus())), 10 + 50 * len)
        }
        "signextend" => {
            let v = match small(a[0]) {
                Some(b) if b < 31 => {
                    let bits = 8 * (b + 1);
                    let t = y() % (BigUint::one() << bits);
                    if t.bit(u64::from(bits - 1)) {
                        word(&(t + modulus() - (BigUint::one() << bits)))
                    } else {
                        word(&t)
                    }
                }
                _ => a[1],
            };
            (v, 5)
        }
        "lt" => (bool_word(x() < y()), 3),
        "gt" => (bool_word(x() > y()), 3),
        "slt" => (bool_word(signed(a[0]) < signed(a[1])), 3),
        "sgt" => (bool_word(signed(a[0]) > signed(a[1])), 3),
        "eq" => (bool_word(x() == y()), 3),
        "iszero" => (bool_word(x().is_zero()), 3),
        "and" => (word(&(x() & y())), 3),
        "or" => (word(&(x() | y())), 3),
        "xor" => (word(&(x() ^ y())), 3),
        "not" => (word(&(modulus() - BigUint::one() - x())), 3),
        "byte" => {
            let v = match small(a[0]) {
                Some(i) if i < 32 => word(&((y() >> (8 * (31 - i))) % BigUint::from(256u32))),
                _ => Word::ZERO,
            };
            (v, 3)
        }
        "shl" => {
            let v = match small(a[0]) {
                Some(s) if s < 256 => word(&(y() << s)),
                _ => Word::ZERO,
            };
            (v, 3)
        }
        "shr" => {
            let v = match small(a[0]) {
                Some(s) if s < 256 => word(&(y() >> s)),
                _ => Word::ZERO,
            };
            (v, 3)
        }
        "sar" => {
            let s = small(a[0]).unwrap_or(256).min(256);
            let v = signed(a[1]);
            let shifted = if s == 256 {
                if v.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::zero()
                }
            } else {
                v >> s
            };
            (from_signed(&shifted), 3)
        }
        _ => unreachable!("{name}"),
    }
}

pub const UNARY: &[&str] = &["iszero", "not"];
pub const BINARY: &[&str] = &[
    "add",
    "sub",
    "mul",
    "div",
    "sdiv",
    "mod",
    "smod",
    "exp",
    "signextend",
    "lt",
    "gt",
    "slt",
    "sgt",
    "eq",
    "and",
    "or",
    "xor",
    "byte",
    "shl",
    "shr",
    "sar",
];
pub const TERNARY: &[&str] = &["addmod", "mulmod"];

pub fn edges() -> Vec<Word> {
    let max = Word::MAX;
    let min_signed = Word::from(1u8) << 255;
    vec![
        Word::ZERO,
        Word::from(1u8),
        Word::from(2u8),
        Word::from(7u8),
        Word::from(31u8),
        Word::from(32u8),
        Word::from(0x80u8),
        Word::from(0xffu8),
        Word::from(255u16),
        Word::from(256u16),
        Word::from(0x7fffu16),
        Word::from(u64::MAX),
        Word::from(1u8) << 128,
        min_signed,
        min_signed - Word::from(1u8),
        max,
        max - Word::from(1u8),
        max - Word::from(0x7fu8),
    ]
}

/// Runs one vector and compares value and gas with the oracle.
pub fn check(h: &mut Harness, name: &str, args: &[Word]) -> Result<(), String> {
    let (got, gas) = h.run(name, args);
    let (want, want_gas) = oracle(name, args);
    if got != Some(want) {
        return Err(format!("{name}{args:?}: got {got:?}, want {want}"));
    }
    if gas != want_gas {
        return Err(format!("{name}{args:?}: gas {gas}, want {want_gas}"));
    }
    Ok(())
}

/// Every unary, binary and ternary vector over the edge words.
pub fn edge_vectors() -> Vec<(&'static str, Vec<Word>)> {
    let e = edges();
    let mut out = Vec::new();
    for name in UNARY {
        for x in &e {
            out.push((*name, vec![*x]));
        }
    }
    for name in BINARY {
        for x in &e {
            for y in &e {
                out.push((*name, vec![*x, *y]));
            }
        }
    }
    for name in TERNARY {
        for x in &e {
            for y in &e[..6] {
                for n in &e[..8] {
                    out.push((*name, vec![*x, *y, *n]));
                }
            }
        }
    }
    out
}

/// One step of a memory/storage program.
#[derive(Debug, Clone)]
pub enum MemOp {
    Mstore(u64, Word),
    Mstore8(u64, u8),
    Mload(u64),
    Sstore(u8, Word),
    Sload(u8),
}

fn mem_cost(words: u64) -> u64 {
    3 * words + words * words / 512
}

/// Runs `ops` against the builtins and against a byte-vector and map model,
/// comparing values, msize and gas after every step.
pub fn check_memory_program(ops: &[MemOp]) -> Result<(), String> {
    let mut h = Harness::new();
    let mut mem: Vec<u8> = Vec::new();
    let mut store: std::collections::HashMap<u8, Word> = std::collections::HashMap::new();
    let grow = |mem: &mut Vec<u8>, end: u64| -> u64 {
        let old = mem.len() as u64 / 32;
        let new = end.div_ceil(32).max(old);
        mem.resize((new * 32) as usize, 0);
        mem_cost(new) - mem_cost(old)
    };
    for (i, op) in ops.iter().enumerate() {
        let (name, args, want, want_gas) = match op {
            MemOp::Mstore(off, v) => {
                let g = grow(&mut mem, off + 32);
                mem[*off as usize..*off as usize + 32].copy_from_slice(&v.to_be_bytes::<32>());
                ("mstore", vec![Word::from(*off), *v], None, 3 + g)
            }
            MemOp::Mstore8(off, b) => {
                let g = grow(&mut mem, off + 1);
                mem[*off as usize] = *b;
                (
                    "mstore8",
                    vec![Word::from(*off), Word::from(0x100u16 + *b as u16)],
                    None,
                    3 + g,
                )
            }
            MemOp::Mload(off) => {
                let g = grow(&mut mem, off + 32);
                let w = Word::from_be_slice(&mem[*off as usize..*off as usize + 32]);
                ("mload", vec![Word::from(*off)], Some(w), 3 + g)
            }
            MemOp::Sstore(k, v) => {
                let cur = store.get(k).copied().unwrap_or(Word::ZERO);
                let cost = if cur == *v {
                    100
                } else if cur.is_zero() {
                    20_000
                } else {
                    2_900
                };
                store.insert(*k, *v);
                ("sstore", vec![Word::from(*k), *v], None, cost)
            }
            MemOp::Sload(k) => {
                let cur = store.get(k).copied().unwrap_or(Word::ZERO);
                ("sload", vec![Word::from(*k)], Some(cur), 100)
            }
        };
        let (got, gas) = h.run(name, &args);
        if got != want || gas != want_gas {
            return Err(format!(
                "step {i} {op:?}: got {got:?}/{gas} gas, want {want:?}/{want_gas} gas"
            ));
        }
        let (msize, _) = h.run("msize", &[]);
        if msize != Some(Word::from(mem.len() as u64)) {
            return Err(format!(
                "step {i} {op:?}: msize {msize:?}, want {}",
                mem.len()
            ));
        }
    }
    Ok(())
}

/// Random memory/storage steps over a 2 KiB window and four slots.
pub fn mem_op() -> impl Strategy<Value = MemOp> {
    let small = prop_oneof![
        (0u64..8).prop_map(Word::from),
        any::<[u8; 32]>().prop_map(|b| Word::from_be_slice(&b))
    ];
    prop_oneof![
        (0u64..2048, small.clone()).prop_map(|(o, v)| MemOp::Mstore(o, v)),
        (0u64..2048, any::<u8>()).prop_map(|(o, b)| MemOp::Mstore8(o, b)),
        (0u64..2048).prop_map(MemOp::Mload),
        (0u8..4, small).prop_map(|(k, v)| MemOp::Sstore(k, v)),
        (0u8..4).prop_map(MemOp::Sload),
    ]
}
