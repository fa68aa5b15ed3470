use std::collections::BTreeMap;
use std::sync::Arc;

use super::params::Params;
use crate::abi::{AbiType, AbiValue, Domains};
use crate::dialect::{CallContext, ControlEvent};
use crate::eval::Machine;
use crate::state::World;
use crate::word::{Address, Word};

#[derive(Debug, Clone)]
pub enum Status {
    Runnable,
    Stuck(ControlEvent),
    /// Finished normally with this return data.
    Halted(Vec<u8>),
}

/// How a Proponent frame was entered; decides what happens when it halts.
#[derive(Debug, Clone)]
pub enum Entry {
    Deploy,
    OCall { outputs: Vec<AbiType> },
    PPCall { outputs: Option<Vec<AbiType>> },
    Create { address: Address },
}

#[derive(Debug, Clone)]
pub struct ProFrame {
    pub ctx: CallContext,
    pub machine: Machine,
    pub status: Status,
    pub entry: Entry,
}

#[derive(Debug, Clone)]
pub struct OppFrame {
    /// The Opponent address that was called (meaningless at the bottom).
    pub address: Address,
    pub origin: Address,
    pub is_static: bool,
    /// Return types the Proponent expects, when the call matched a known
    /// function.
    pub outputs: Option<Vec<AbiType>>,
    pub ret_size: u64,
}

#[derive(Debug, Clone)]
pub enum Frame {
    Proponent(Box<ProFrame>),
    Opponent(OppFrame),
}

/// One step of the game. Moves other than `OCall`, `ORet` and `OWait` carry
/// no data: they are fully determined by the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Run the Proponent until it halts or passes control.
    Internal,
    Deploy,
    OCall {
        caller: Address,
        target: Address,
        /// Index into the target contract's ABI function list.
        function: usize,
        args: Vec<AbiValue>,
        value: Word,
    },
    POCall,
    PPCall,
    Create,
    ORet(Vec<u8>),
    PORet,
    PPRet,
    OWait,
}

/// A rendered move, without the trailing arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub kind: &'static str,
    pub text: String,
}

#[derive(Debug)]
struct Hist {
    mv: Move,
    line: Option<TraceLine>,
    prev: Option<Arc<Hist>>,
}

/// A game configuration: world state, the interleaved call stack and the
/// bookkeeping the bounds need. Cloned at every branch point; the history
/// is a shared list so clones stay cheap.
#[derive(Debug, Clone)]
pub struct Config {
    pub world: World,
    pub stack: Vec<Frame>,
    /// Addresses holding Proponent code, in deployment order.
    pub proponents: Vec<Address>,
    pub domains: Domains,
    pub(crate) calls: BTreeMap<(Address, [u8; 4]), u32>,
    pub total_wait: Word,
    pub waits: u32,
    /// Top-level Opponent transactions so far.
    pub transactions: u32,
    pub(crate) creates: u64,
    hist: Option<Arc<Hist>>,
}

impl Config {
    pub(crate) fn new(world: World, frame: ProFrame, proponents: Vec<Address>, p: &Params) -> Self {
        let domains = Domains {
            words: p.uint_domain.iter().copied().collect(),
            addresses: p.address_domain.iter().copied().collect(),
            ..Domains::default()
        };
        Config {
            world,
            stack: vec![Frame::Proponent(Box::new(frame))],
            proponents,
            domains,
            calls: BTreeMap::new(),
            total_wait: Word::ZERO,
            waits: 0,
            transactions: 0,
            creates: 0,
            hist: None,
        }
    }

    pub(crate) fn record(&mut self, mv: Move, line: Option<TraceLine>) {
        self.hist = Some(Arc::new(Hist {
            mv,
            line,
            prev: self.hist.take(),
        }));
    }

    /// Every move applied so far, oldest first.
    pub fn moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        let mut at = self.hist.as_deref();
        while let Some(h) = at {
            out.push(h.mv.clone());
            at = h.prev.as_deref();
        }
        out.reverse();
        out
    }

    /// Rendered moves so far, oldest first.
    pub fn lines(&self) -> Vec<TraceLine> {
        let mut out = Vec::new();
        let mut at = self.hist.as_deref();
        while let Some(h) = at {
            if let Some(l) = &h.line {
                out.push(l.clone());
            }
            at = h.prev.as_deref();
        }
        out.reverse();
        out
    }

    /// Opponent-to-Proponent calls currently open.
    pub fn open_calls(&self) -> u32 {
        self.stack
            .iter()
            .filter(|f| matches!(f, Frame::Proponent(p) if matches!(p.entry, Entry::OCall { .. })))
            .count() as u32
    }

    pub fn calls_to(&self, target: Address, key: [u8; 4]) -> u32 {
        self.calls.get(&(target, key)).copied().unwrap_or(0)
    }

    pub fn max_calls(&self) -> u32 {
        self.calls.values().copied().max().unwrap_or(0)
    }

    /// True if `a` runs Proponent code or is executing a Proponent frame
    /// (a contract whose constructor is still running has no code yet).
    pub fn is_proponent(&self, a: Address) -> bool {
        self.world.code(a).is_some()
            || self
                .stack
                .iter()
                .any(|f| matches!(f, Frame::Proponent(p) if p.ctx.address == a))
    }
}
