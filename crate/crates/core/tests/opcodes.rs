//! Arithmetic builtins against an arbitrary-precision oracle.

#[path = "support/evm_oracle.rs"]
mod evm_oracle;

use evm_oracle::*;
use proptest::prelude::*;
use yulgc_core::state::KeccakOracle;
use yulgc_core::{Address, Word};

#[test]
fn edge_vectors_agree_with_bigint() {
    let mut h = Harness::new();
    let vectors = edge_vectors();
    assert!(vectors.len() >= 200);
    for (name, args) in vectors {
        check(&mut h, name, &args).unwrap();
    }
}

#[test]
fn signed_corner_cases() {
    let mut h = Harness::new();
    let min = Word::from(1u8) << 255;
    let minus_one = Word::MAX;
    assert_eq!(h.run("sdiv", &[min, minus_one]).0, Some(min));
    assert_eq!(h.run("smod", &[min, minus_one]).0, Some(Word::ZERO));
    let minus_seven = Word::ZERO.wrapping_sub(Word::from(7u8));
    assert_eq!(
        h.run("smod", &[minus_seven, Word::from(3u8)]).0,
        Some(Word::ZERO.wrapping_sub(Word::from(1u8)))
    );
    assert_eq!(
        h.run("signextend", &[Word::ZERO, Word::from(0xffu8)]).0,
        Some(minus_one)
    );
    assert_eq!(
        h.run("signextend", &[Word::ZERO, Word::from(0x7fu8)]).0,
        Some(Word::from(0x7fu8))
    );
    assert_eq!(
        h.run("signextend", &[Word::from(31u8), Word::from(0xffu8)])
            .0,
        Some(Word::from(0xffu8))
    );
    assert_eq!(
        h.run(
            "sar",
            &[Word::from(4u8), Word::ZERO.wrapping_sub(Word::from(17u8))]
        )
        .0,
        Some(Word::ZERO.wrapping_sub(Word::from(2u8)))
    );
    assert_eq!(h.run("sar", &[Word::from(300u16), min]).0, Some(minus_one));
}

#[test]
fn exp_gas_grows_with_exponent_bytes() {
    let mut h = Harness::new();
    assert_eq!(h.run("exp", &[Word::from(2u8), Word::ZERO]).1, 10);
    assert_eq!(h.run("exp", &[Word::from(2u8), Word::from(255u8)]).1, 60);
    assert_eq!(h.run("exp", &[Word::from(2u8), Word::from(256u16)]).1, 110);
    assert_eq!(h.run("exp", &[Word::from(2u8), Word::MAX]).1, 10 + 50 * 32);
}

#[test]
fn memory_expansion_is_charged_once() {
    let mut h = Harness::new();
    let (_, g) = h.run("mstore", &[Word::ZERO, Word::from(0xabu8)]);
    assert_eq!(g, 3 + 3);
    let (_, g) = h.run("mstore", &[Word::from(1u8), Word::from(0xcdu8)]);
    assert_eq!(g, 3 + 3);
    assert_eq!(h.run("msize", &[]).0, Some(Word::from(64u8)));
    let (v, g) = h.run("mload", &[Word::ZERO]);
    assert_eq!(g, 3);
    assert_eq!(v, Some(Word::ZERO));
    let (v, _) = h.run("mload", &[Word::from(1u8)]);
    assert_eq!(v, Some(Word::from(0xcdu8)));
    // Growing from 2 to 100 words: (300 + 10000/512) - (6 + 0).
    let (_, g) = h.run("mstore8", &[Word::from(99 * 32u32), Word::from(0x1ffu16)]);
    assert_eq!(g, 3 + (300 + 19) - 6);
    let (v, _) = h.run("mload", &[Word::from(99 * 32u32)]);
    assert_eq!(v, Some(Word::from(0xffu8) << 248));
}

#[test]
fn storage_costs_follow_the_transition() {
    let mut h = Harness::new();
    let k = Word::from(5u8);
    assert_eq!(h.run("sload", &[k]), (Some(Word::ZERO), 100));
    assert_eq!(h.run("sstore", &[k, Word::from(1u8)]).1, 20_000);
    assert_eq!(h.run("sstore", &[k, Word::from(2u8)]).1, 2_900);
    assert_eq!(h.run("sstore", &[k, Word::from(2u8)]).1, 100);
    assert_eq!(h.run("sload", &[k]).0, Some(Word::from(2u8)));
    assert_eq!(h.world.sload(Address::from_u64(0xc0de), k), Word::from(2u8));
}

#[test]
fn keccak_reads_memory_through_the_oracle() {
    let mut h = Harness::new();
    h.run("mstore", &[Word::ZERO, Word::from(42u8)]);
    let (v, g) = h.run("keccak256", &[Word::ZERO, Word::from(32u8)]);
    let mut input = [0u8; 32];
    input[31] = 42;
    assert_eq!(v, Some(KeccakOracle::default().hash(&input)));
    assert_eq!(g, 30 + 6);
}

#[test]
fn environment_reads_cost_base() {
    let mut h = Harness::new();
    assert_eq!(h.run("address", &[]), (Some(Word::from(0xc0deu16)), 2));
    assert_eq!(h.run("caller", &[]), (Some(Word::from(0xca11u16)), 2));
    assert_eq!(h.run("callvalue", &[]), (Some(Word::ZERO), 2));
}

fn any_word() -> impl Strategy<Value = Word> {
    prop_oneof![
        any::<[u8; 32]>().prop_map(|b| Word::from_be_slice(&b)),
        (0u64..300).prop_map(Word::from),
        (0u64..300).prop_map(|v| Word::MAX - Word::from(v)),
    ]
}

proptest! {
    #[test]
    fn random_binary_vectors(op in 0..BINARY.len(), x in any_word(), y in any_word()) {
        let mut h = Harness::new();
        check(&mut h, BINARY[op], &[x, y]).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn random_ternary_vectors(op in 0..TERNARY.len(), x in any_word(), y in any_word(), n in any_word()) {
        let mut h = Harness::new();
        check(&mut h, TERNARY[op], &[x, y, n]).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #[test]
    fn memory_and_storage_follow_the_model(ops in proptest::collection::vec(mem_op(), 1..40)) {
        check_memory_program(&ops).map_err(TestCaseError::fail)?;
    }
}
