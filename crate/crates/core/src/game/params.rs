use std::time::Duration;

use crate::word::{Address, Word};

pub const DAY: u64 = 86_400;

/// Exploration parameters. Defaults follow the tool's documented table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    /// Per-function bound on Opponent calls within one trace.
    pub call_bound: u32,
    /// Bound on simultaneously open Opponent-to-Proponent calls.
    pub stack_bound: u32,
    pub opponent_addresses: u32,
    pub opponent_balance: Word,
    /// Value the Opponent may attach to a payable call (besides zero).
    pub opponent_spending: Word,
    pub uint_domain: Vec<Word>,
    pub address_domain: Vec<Address>,
    /// Draw Opponent return data from the domains instead of returning zeros.
    pub opponent_return_values: bool,
    /// Seconds per wait move.
    pub wait_time: Word,
    pub no_waiting: bool,
    pub wait_first: bool,
    pub max_wait: Word,
    pub deploy_gas: Word,
    pub deploy_address: Address,
    pub deploy_value: Word,
    pub legacy: bool,
    /// `Contract.signature` entries to keep; empty keeps everything.
    pub only: Vec<String>,
    pub deadline: Option<Duration>,
}

fn ether(n: u64) -> Word {
    Word::from(n) * Word::from(10u64).pow(Word::from(18u8))
}

impl Default for Params {
    fn default() -> Self {
        Params {
            call_bound: 2,
            stack_bound: 3,
            opponent_addresses: 1,
            opponent_balance: ether(10),
            opponent_spending: Word::from(1000u16),
            uint_domain: vec![Word::ZERO, Word::from(1u8), Word::from(1000u16)],
            address_domain: Vec::new(),
            opponent_return_values: false,
            wait_time: Word::from(7 * DAY),
            no_waiting: false,
            wait_first: false,
            max_wait: Word::from(22 * DAY),
            deploy_gas: ether(30_000),
            deploy_address: Address::from_be_slice(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
            deploy_value: ether(123_456_789),
            legacy: false,
            only: Vec::new(),
            deadline: None,
        }
    }
}

impl Params {
    pub fn waiting_enabled(&self) -> bool {
        !self.no_waiting && !self.wait_time.is_zero()
    }
}

/// The `i`-th Opponent address: the ASCII bytes of `OP_ADDRESS_<i>` read as a
/// big-endian number.
pub fn opponent_address(i: u32) -> Address {
    Address::from_be_slice(format!("OP_ADDRESS_{i}").as_bytes())
}

/// Sender of the top-level deployment.
pub fn deployer_address() -> Address {
    Address::from_be_slice(b"DEPLOYER")
}

/// Address of the `n`-th contract created during exploration (from 1).
pub fn create_address(n: u64) -> Address {
    let mut b = [0u8; 20];
    b[0] = 0xa0;
    b[12..].copy_from_slice(&n.to_be_bytes());
    Address::from_be_slice(&b)
}

/// Address of the `n`-th linked library (from 1).
pub fn library_address(n: u64) -> Address {
    let mut b = [0u8; 20];
    b[0] = 0xb0;
    b[12..].copy_from_slice(&n.to_be_bytes());
    Address::from_be_slice(&b)
}
