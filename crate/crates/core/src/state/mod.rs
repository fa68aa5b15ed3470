//! The mutable world: accounts, storage, block time and the hash oracle.

mod keccak;
mod memory;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use keccak::{KeccakOracle, DEFAULT_SEED};
pub use memory::Memory;

use crate::word::{Address, Word};

pub const BLOCK_NUMBER: u64 = 1;
pub const CHAIN_ID: u64 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Account {
    pub balance: Word,
    pub storage: BTreeMap<Word, Word>,
    /// Object ID of the deployed code, if any.
    pub code: Option<Word>,
    pub immutables: BTreeMap<String, Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsufficientBalance {
    pub from: Address,
    pub balance: Word,
    pub amount: Word,
}

impl std::fmt::Display for InsufficientBalance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "sender {} has insufficient balance ({}) to transfer {}",
            self.from, self.balance, self.amount
        )
    }
}

/// World state. Accounts sit behind `Arc` so that cloning a world at a branch
/// point copies only the account map; an account is copied on first write.
#[derive(Debug, Clone, Default)]
pub struct World {
    accounts: BTreeMap<Address, Arc<Account>>,
    pub link_table: BTreeMap<String, Address>,
    pub time: Word,
    pub keccak: KeccakOracle,
}

impl PartialEq for World {
    /// Value equality; the shared oracle is deliberately ignored.
    fn eq(&self, other: &Self) -> bool {
        self.accounts == other.accounts
            && self.link_table == other.link_table
            && self.time == other.time
    }
}

impl World {
    pub fn new(keccak: KeccakOracle) -> Self {
        World {
            keccak,
            ..World::default()
        }
    }

    pub fn account(&self, a: Address) -> Option<&Account> {
        self.accounts.get(&a).map(|a| a.as_ref())
    }

    pub fn account_mut(&mut self, a: Address) -> &mut Account {
        Arc::make_mut(self.accounts.entry(a).or_default())
    }

    pub fn accounts(&self) -> impl Iterator<Item = (&Address, &Account)> {
        self.accounts.iter().map(|(k, v)| (k, v.as_ref()))
    }

    pub fn balance(&self, a: Address) -> Word {
        self.account(a).map_or(Word::ZERO, |x| x.balance)
    }

    pub fn code(&self, a: Address) -> Option<Word> {
        self.account(a).and_then(|x| x.code)
    }

    pub fn sload(&self, a: Address, key: Word) -> Word {
        self.account(a)
            .and_then(|x| x.storage.get(&key).copied())
            .unwrap_or(Word::ZERO)
    }

    pub fn sstore(&mut self, a: Address, key: Word, value: Word) {
        let acct = self.account_mut(a);
        if value.is_zero() {
            acct.storage.remove(&key);
        } else {
            acct.storage.insert(key, value);
        }
    }

    pub fn set_code(&mut self, a: Address, id: Word) {
        self.account_mut(a).code = Some(id);
    }

    pub fn transfer(
        &mut self,
        from: Address,
        to: Address,
        amount: Word,
    ) -> Result<(), InsufficientBalance> {
        if amount.is_zero() {
            return Ok(());
        }
        let balance = self.balance(from);
        if balance < amount {
            return Err(InsufficientBalance {
                from,
                balance,
                amount,
            });
        }
        self.account_mut(from).balance = balance - amount;
        let to_acct = self.account_mut(to);
        to_acct.balance = to_acct.balance.wrapping_add(amount);
        Ok(())
    }

    /// Mints `amount` into `to`. The only way balance enters the system after
    /// setup.
    pub fn ext_fund(&mut self, to: Address, amount: Word) {
        let acct = self.account_mut(to);
        acct.balance = acct.balance.wrapping_add(amount);
    }

    /// Moves block time forward. Returns `false` (and leaves time alone) on
    /// overflow or a zero delta.
    pub fn advance_time(&mut self, delta: Word) -> bool {
        if delta.is_zero() {
            return false;
        }
        match self.time.checked_add(delta) {
            Some(t) => {
                self.time = t;
                true
            }
            None => false,
        }
    }

    pub fn total_balance(&self) -> Word {
        self.accounts
            .values()
            .fold(Word::ZERO, |acc, a| acc.wrapping_add(a.balance))
    }
}
