//! Semantics of the EVM-dialect builtins.

mod builtin;
pub mod gas;

use thiserror::Error;

pub use builtin::Builtin;

use crate::state::{Memory, World};
use crate::word::{
    abs_signed, bool_word, hex_word, is_negative, signed_decimal, to_u64, word_to_bytes, Address,
    Word,
};
use crate::yul::{ObjectTable, Resolved};

/// Execution context of one message frame.
#[derive(Debug, Clone)]
pub struct CallContext {
    /// Storage owner and `address()`.
    pub address: Address,
    /// Account whose code runs (differs from `address` under delegatecall).
    pub code_address: Address,
    pub code_id: Word,
    pub caller: Address,
    pub origin: Address,
    pub callvalue: Word,
    pub calldata: Vec<u8>,
    /// What `codecopy`/`codesize` see: the object ID, then constructor args.
    pub code: Vec<u8>,
    pub returndata: Vec<u8>,
    pub gas: Word,
    pub memory: Memory,
    pub is_static: bool,
}

impl CallContext {
    pub fn new(address: Address, code_id: Word, caller: Address, gas: Word) -> Self {
        CallContext {
            address,
            code_address: address,
            code_id,
            caller,
            origin: caller,
            callvalue: Word::ZERO,
            calldata: Vec::new(),
            code: word_to_bytes(code_id).to_vec(),
            returndata: Vec::new(),
            gas,
            memory: Memory::new(),
            is_static: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallKind {
    Call,
    StaticCall,
    DelegateCall,
    Impersonate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevealKind {
    Uint,
    Addr,
}

/// A builtin that hands control to the game engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ControlEvent {
    Call {
        kind: CallKind,
        /// `msg.sender` the callee will see.
        sender: Address,
        target: Address,
        value: Word,
        input: Vec<u8>,
        ret_offset: u64,
        ret_size: u64,
        /// Gas given to the callee, stipend included.
        gas: Word,
    },
    Create {
        value: Word,
        object: Word,
        args: Vec<u8>,
        salt: Option<Word>,
        gas: Word,
    },
    Reveal(RevealKind, Word),
    AssertFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Halt {
    Stop,
    Return(Vec<u8>),
    Revert(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Value(Word),
    Done,
    Event(ControlEvent),
    Halt(Halt),
}

/// Exceptional halts. The frame, and with it the trace, is abandoned.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Fault {
    #[error("out of gas")]
    OutOfGas,
    #[error("unsupported opcode `{0}`")]
    Unsupported(&'static str),
    #[error("`{0}` in a static context")]
    StaticViolation(&'static str),
    #[error("returndatacopy out of bounds")]
    ReturnDataOutOfBounds,
    #[error("unknown object or data segment \"{0}\"")]
    UnknownName(String),
    #[error("no deployed address for library \"{0}\"")]
    Unlinked(String),
    #[error("create from memory that does not hold an object ID")]
    NotAnObject,
}

/// Read-only facts the dialect needs beyond the frame and the world.
pub struct Host<'a> {
    pub objects: &'a ObjectTable,
    pub opponents: &'a [Address],
    pub print: &'a (dyn Fn(&str) + Sync),
}

fn charge(ctx: &mut CallContext, amount: Word) -> Result<(), Fault> {
    if ctx.gas < amount {
        ctx.gas = Word::ZERO;
        return Err(Fault::OutOfGas);
    }
    ctx.gas -= amount;
    Ok(())
}

/// Charges for growing memory to cover `[offset, offset + size)` and raises
/// msize. Returns the offset as `u64`.
fn expand(ctx: &mut CallContext, offset: Word, size: Word) -> Result<u64, Fault> {
    if size.is_zero() {
        return Ok(to_u64(offset).unwrap_or(0));
    }
    let end = offset.checked_add(size).ok_or(Fault::OutOfGas)?;
    let (Some(off), Some(len)) = (to_u64(offset), to_u64(size)) else {
        ctx.gas = Word::ZERO;
        return Err(Fault::OutOfGas);
    };
    let old = Word::from(ctx.memory.msize() / 32);
    let new = gas::words(end);
    if new > old {
        let cost = match (gas::memory_cost(new), gas::memory_cost(old)) {
            (Some(n), Some(o)) => n - o,
            _ => {
                ctx.gas = Word::ZERO;
                return Err(Fault::OutOfGas);
            }
        };
        charge(ctx, cost)?;
    }
    ctx.memory.touch(off, len);
    Ok(off)
}

fn copy_cost(size: Word) -> Word {
    Word::from(gas::VERYLOW)
        .saturating_add(gas::words(size).saturating_mul(Word::from(gas::COPY_WORD)))
}

fn slice_padded(src: &[u8], offset: Word, len: u64) -> Vec<u8> {
    let mut out = vec![0u8; len as usize];
    if let Some(o) = to_u64(offset) {
        let o = o as usize;
        if o < src.len() {
            let n = (src.len() - o).min(len as usize);
            out[..n].copy_from_slice(&src[o..o + n]);
        }
    }
    out
}

fn u(v: u64) -> Word {
    Word::from(v)
}

pub fn sdiv(x: Word, y: Word) -> Word {
    if y.is_zero() {
        return Word::ZERO;
    }
    let q = abs_signed(x) / abs_signed(y);
    if is_negative(x) != is_negative(y) {
        q.wrapping_neg()
    } else {
        q
    }
}

pub fn smod(x: Word, y: Word) -> Word {
    if y.is_zero() {
        return Word::ZERO;
    }
    let r = abs_signed(x) % abs_signed(y);
    if is_negative(x) {
        r.wrapping_neg()
    } else {
        r
    }
}

pub fn signextend(b: Word, x: Word) -> Word {
    if b >= u(31) {
        return x;
    }
    let bit = (to_u64(b).unwrap_or(31) * 8 + 7) as usize;
    let mask = (Word::from(1u8) << (bit + 1)) - Word::from(1u8);
    if x.bit(bit) {
        x | !mask
    } else {
        x & mask
    }
}

pub fn slt(x: Word, y: Word) -> bool {
    match (is_negative(x), is_negative(y)) {
        (true, false) => true,
        (false, true) => false,
        _ => x < y,
    }
}

pub fn byte(i: Word, x: Word) -> Word {
    match to_u64(i) {
        Some(i) if i < 32 => Word::from(word_to_bytes(x)[i as usize]),
        _ => Word::ZERO,
    }
}

pub fn shl(s: Word, v: Word) -> Word {
    match to_u64(s) {
        Some(s) if s < 256 => v << s as usize,
        _ => Word::ZERO,
    }
}

pub fn shr(s: Word, v: Word) -> Word {
    match to_u64(s) {
        Some(s) if s < 256 => v >> s as usize,
        _ => Word::ZERO,
    }
}

pub fn sar(s: Word, v: Word) -> Word {
    let neg = is_negative(v);
    match to_u64(s) {
        Some(s) if s < 256 => {
            let shifted = v >> s as usize;
            if neg && s > 0 {
                shifted | !(Word::MAX >> s as usize)
            } else {
                shifted
            }
        }
        _ => {
            if neg {
                Word::MAX
            } else {
                Word::ZERO
            }
        }
    }
}

fn static_cost(op: Builtin) -> u64 {
    use Builtin::*;
    match op {
        Add | Sub | Lt | Gt | Slt | Sgt | Eq | Iszero | And | Or | Xor | Not | Byte | Shl | Shr
        | Sar | Calldataload | Mload | Mstore | Mstore8 => gas::VERYLOW,
        Mul | Div | Sdiv | Mod | Smod | Signextend | Selfbalance => gas::LOW,
        Addmod | Mulmod => gas::MID,
        Address | Origin | Caller | Callvalue | Calldatasize | Codesize | Gasprice
        | Returndatasize | Coinbase | Timestamp | Number | Prevrandao | Difficulty | Gaslimit
        | Chainid | Basefee | Blobbasefee | Pop | Msize | Gas => gas::BASE,
        Blobhash => gas::VERYLOW,
        Balance | Extcodesize | Extcodehash | Sload => gas::WARM_ACCESS,
        Blockhash => gas::BLOCKHASH,
        // Compile to PUSH in bytecode.
        Datasize | Dataoffset | Loadimmutable | Linkersymbol | Memoryguard => gas::VERYLOW,
        _ => gas::ZERO,
    }
}

/// Executes one builtin. `args` holds the evaluated non-literal arguments in
/// source order; `lit` the literal argument, if the builtin takes one.
pub fn exec(
    op: Builtin,
    args: &[Word],
    lit: Option<&str>,
    ctx: &mut CallContext,
    world: &mut World,
    host: &Host<'_>,
) -> Result<Outcome, Fault> {
    use Builtin as B;
    use Outcome::{Done, Value};
    charge(ctx, u(static_cost(op)))?;
    let a = |i: usize| args[i];
    let out = match op {
        B::Add => Value(a(0).wrapping_add(a(1))),
        B::Sub => Value(a(0).wrapping_sub(a(1))),
        B::Mul => Value(a(0).wrapping_mul(a(1))),
        B::Div => Value(if a(1).is_zero() {
            Word::ZERO
        } else {
            a(0) / a(1)
        }),
        B::Sdiv => Value(sdiv(a(0), a(1))),
        B::Mod => Value(if a(1).is_zero() {
            Word::ZERO
        } else {
            a(0) % a(1)
        }),
        B::Smod => Value(smod(a(0), a(1))),
        B::Addmod => Value(if a(2).is_zero() {
            Word::ZERO
        } else {
            a(0).add_mod(a(1), a(2))
        }),
        B::Mulmod => Value(if a(2).is_zero() {
            Word::ZERO
        } else {
            a(0).mul_mod(a(1), a(2))
        }),
        B::Exp => {
            charge(ctx, u(gas::EXP + gas::EXP_BYTE * gas::byte_len(a(1))))?;
            Value(a(0).wrapping_pow(a(1)))
        }
        B::Signextend => Value(signextend(a(0), a(1))),
        B::Lt => Value(bool_word(a(0) < a(1))),
        B::Gt => Value(bool_word(a(0) > a(1))),
        B::Slt => Value(bool_word(slt(a(0), a(1)))),
        B::Sgt => Value(bool_word(slt(a(1), a(0)))),
        B::Eq => Value(bool_word(a(0) == a(1))),
        B::Iszero => Value(bool_word(a(0).is_zero())),
        B::And => Value(a(0) & a(1)),
        B::Or => Value(a(0) | a(1)),
        B::Xor => Value(a(0) ^ a(1)),
        B::Not => Value(!a(0)),
        B::Byte => Value(byte(a(0), a(1))),
        B::Shl => Value(shl(a(0), a(1))),
        B::Shr => Value(shr(a(0), a(1))),
        B::Sar => Value(sar(a(0), a(1))),
        B::Keccak256 => {
            let cost =
                u(gas::KECCAK).saturating_add(gas::words(a(1)).saturating_mul(u(gas::KECCAK_WORD)));
            charge(ctx, cost)?;
            let off = expand(ctx, a(0), a(1))?;
            let len = to_u64(a(1)).unwrap_or(0);
            let bytes = ctx.memory.read(off, len);
            Value(world.keccak.hash(&bytes))
        }
        B::Mload => {
            let off = expand(ctx, a(0), u(32))?;
            Value(ctx.memory.load_word(off))
        }
        B::Mstore => {
            let off = expand(ctx, a(0), u(32))?;
            ctx.memory.store_word(off, a(1));
            Done
        }
        B::Mstore8 => {
            let off = expand(ctx, a(0), u(1))?;
            ctx.memory.write_byte(off, a(1).byte(0));
            Done
        }
        B::Msize => Value(u(ctx.memory.msize())),
        B::Mcopy => {
            charge(ctx, copy_cost(a(2)))?;
            let dst = expand(ctx, a(0), a(2))?;
            let src = expand(ctx, a(1), a(2))?;
            let len = to_u64(a(2)).unwrap_or(0);
            let bytes = ctx.memory.read(src, len);
            ctx.memory.write(dst, &bytes);
            Done
        }
        B::Sload => Value(world.sload(ctx.address, a(0))),
        B::Sstore => {
            if ctx.is_static {
                return Err(Fault::StaticViolation("sstore"));
            }
            if ctx.gas <= u(gas::SSTORE_SENTRY) {
                ctx.gas = Word::ZERO;
                return Err(Fault::OutOfGas);
            }
            let current = world.sload(ctx.address, a(0));
            let cost = if current == a(1) {
                gas::WARM_ACCESS
            } else if current.is_zero() {
                gas::SSTORE_SET
            } else {
                gas::SSTORE_RESET
            };
            charge(ctx, u(cost))?;
            world.sstore(ctx.address, a(0), a(1));
            Done
        }
        B::Caller => Value(ctx.caller.to_word()),
        B::Callvalue => Value(ctx.callvalue),
        B::Calldataload => Value(Word::from_be_slice(&slice_padded(&ctx.calldata, a(0), 32))),
        B::Calldatasize => Value(u(ctx.calldata.len() as u64)),
        B::Calldatacopy => {
            charge(ctx, copy_cost(a(2)))?;
            let off = expand(ctx, a(0), a(2))?;
            let len = to_u64(a(2)).unwrap_or(0);
            let bytes = slice_padded(&ctx.calldata, a(1), len);
            ctx.memory.write(off, &bytes);
            Done
        }
        B::Returndatasize => Value(u(ctx.returndata.len() as u64)),
        B::Returndatacopy => {
            charge(ctx, copy_cost(a(2)))?;
            let end = a(1).checked_add(a(2));
            if end.is_none_or(|e| e > u(ctx.returndata.len() as u64)) {
                return Err(Fault::ReturnDataOutOfBounds);
            }
            let off = expand(ctx, a(0), a(2))?;
            let len = to_u64(a(2)).unwrap_or(0);
            let bytes = slice_padded(&ctx.returndata, a(1), len);
            ctx.memory.write(off, &bytes);
            Done
        }
        B::Address => Value(ctx.address.to_word()),
        B::Balance => Value(world.balance(Address::from_word(a(0)))),
        B::Selfbalance => Value(world.balance(ctx.address)),
        B::Origin => Value(ctx.origin.to_word()),
        B::Gas => Value(ctx.gas),
        B::Gasprice => Value(Word::ZERO),
        B::Extcodesize => {
            let t = Address::from_word(a(0));
            Value(bool_word(
                world.code(t).is_some() || host.opponents.contains(&t),
            ))
        }
        B::Extcodehash => match world.code(Address::from_word(a(0))) {
            Some(id) => Value(world.keccak.hash(&word_to_bytes(id))),
            None => Value(Word::ZERO),
        },
        B::Timestamp => Value(world.time),
        B::Number => Value(u(crate::state::BLOCK_NUMBER)),
        B::Chainid => Value(u(crate::state::CHAIN_ID)),
        B::Coinbase | B::Basefee | B::Blobbasefee | B::Gaslimit | B::Prevrandao | B::Difficulty => {
            Value(Word::ZERO)
        }
        B::Blobhash | B::Blockhash => Value(Word::ZERO),
        B::Stop => Outcome::Halt(Halt::Stop),
        B::Return | B::Revert => {
            let off = expand(ctx, a(0), a(1))?;
            let len = to_u64(a(1)).unwrap_or(0);
            let bytes = ctx.memory.read(off, len);
            Outcome::Halt(if op == B::Return {
                Halt::Return(bytes)
            } else {
                Halt::Revert(bytes)
            })
        }
        B::Call | B::Staticcall | B::Delegatecall | B::Impersonatecall => call(op, args, ctx)?,
        B::Create | B::Create2 => {
            if ctx.is_static {
                return Err(Fault::StaticViolation(op.name()));
            }
            let mut cost = u(gas::CREATE)
                .saturating_add(gas::words(a(2)).saturating_mul(u(gas::INITCODE_WORD)));
            if op == B::Create2 {
                cost = cost
                    .saturating_add(gas::words(a(2)).saturating_mul(u(gas::KECCAK_WORD_CREATE2)));
            }
            charge(ctx, cost)?;
            let off = expand(ctx, a(1), a(2))?;
            let len = to_u64(a(2)).unwrap_or(0);
            if len < 32 {
                return Err(Fault::NotAnObject);
            }
            let bytes = ctx.memory.read(off, len);
            let object = Word::from_be_slice(&bytes[..32]);
            if host.objects.entry_by_id(object).is_none() {
                return Err(Fault::NotAnObject);
            }
            let g = gas::all_but_one_64th(ctx.gas);
            ctx.gas -= g;
            Outcome::Event(ControlEvent::Create {
                value: a(0),
                object,
                args: bytes[32..].to_vec(),
                salt: (op == B::Create2).then(|| a(3)),
                gas: g,
            })
        }
        B::Log0 | B::Log1 | B::Log2 | B::Log3 | B::Log4 => {
            if ctx.is_static {
                return Err(Fault::StaticViolation(op.name()));
            }
            let topics = (args.len() - 2) as u64;
            let cost = u(gas::LOG + gas::LOG_TOPIC * topics)
                .saturating_add(a(1).saturating_mul(u(gas::LOG_DATA)));
            charge(ctx, cost)?;
            expand(ctx, a(0), a(1))?;
            Done
        }
        B::Pop => Done,
        B::Datasize | B::Dataoffset => {
            let name = lit.unwrap_or_default();
            let from = host.objects.name_of(ctx.code_id).unwrap_or_default();
            match host.objects.resolve(from, name) {
                Some(Resolved::Object(id)) => Value(if op == B::Datasize { u(32) } else { id }),
                Some(Resolved::Data { id, len }) => {
                    Value(if op == B::Datasize { u(len as u64) } else { id })
                }
                None => return Err(Fault::UnknownName(name.to_string())),
            }
        }
        B::Datacopy | B::Codecopy => {
            charge(ctx, copy_cost(a(2)))?;
            let off = expand(ctx, a(0), a(2))?;
            let len = to_u64(a(2)).unwrap_or(0);
            let bytes = if host.objects.entry_by_id(a(1)).is_some() {
                slice_padded(&word_to_bytes(a(1)), Word::ZERO, len)
            } else if let Some(d) = host.objects.data(a(1)) {
                slice_padded(&d.bytes, Word::ZERO, len)
            } else {
                slice_padded(&ctx.code, a(1), len)
            };
            ctx.memory.write(off, &bytes);
            Done
        }
        B::Codesize => Value(u(ctx.code.len() as u64)),
        B::Setimmutable => {
            let name = lit.unwrap_or_default().to_string();
            world.account_mut(ctx.address).immutables.insert(name, a(1));
            Done
        }
        B::Loadimmutable => {
            let name = lit.unwrap_or_default();
            Value(
                world
                    .account(ctx.code_address)
                    .and_then(|acc| acc.immutables.get(name).copied())
                    .unwrap_or(Word::ZERO),
            )
        }
        B::Linkersymbol => {
            let name = lit.unwrap_or_default();
            match world.link_table.get(name) {
                Some(addr) => Value(addr.to_word()),
                None => return Err(Fault::Unlinked(name.to_string())),
            }
        }
        B::Memoryguard => Value(a(0)),
        B::Assert => {
            if a(0).is_zero() {
                Outcome::Event(ControlEvent::AssertFailed)
            } else {
                Done
            }
        }
        B::RevealUint => Outcome::Event(ControlEvent::Reveal(RevealKind::Uint, a(0))),
        B::RevealAddr => Outcome::Event(ControlEvent::Reveal(RevealKind::Addr, a(0))),
        B::ExtFund => {
            if ctx.is_static {
                return Err(Fault::StaticViolation("EXT_FUND"));
            }
            world.ext_fund(Address::from_word(a(0)), a(1));
            Done
        }
        B::Print => {
            (host.print)(&a(0).to_string());
            Done
        }
        B::PrintSigned => {
            (host.print)(&signed_decimal(a(0)));
            Done
        }
        B::PrintHex => {
            (host.print)(&hex_word(a(0)));
            Done
        }
        B::Tload | B::Tstore | B::Extcodecopy | B::Invalid | B::Selfdestruct | B::Callcode => {
            return Err(Fault::Unsupported(op.name()))
        }
    };
    Ok(out)
}

fn call(op: Builtin, args: &[Word], ctx: &mut CallContext) -> Result<Outcome, Fault> {
    use Builtin as B;
    // Normalise to (sender, gas, target, value, in_off, in_size, out_off, out_size).
    let (kind, sender, rest) = match op {
        B::Call => (CallKind::Call, ctx.address, args),
        B::Staticcall => (CallKind::StaticCall, ctx.address, args),
        B::Delegatecall => (CallKind::DelegateCall, ctx.caller, args),
        _ => (
            CallKind::Impersonate,
            Address::from_word(args[0]),
            &args[1..],
        ),
    };
    let (g, target, value, io) = match kind {
        CallKind::Call | CallKind::Impersonate => (rest[0], rest[1], rest[2], &rest[3..7]),
        CallKind::StaticCall => (rest[0], rest[1], Word::ZERO, &rest[2..6]),
        CallKind::DelegateCall => (rest[0], rest[1], ctx.callvalue, &rest[2..6]),
    };
    let transfers = matches!(kind, CallKind::Call | CallKind::Impersonate) && !value.is_zero();
    if ctx.is_static && transfers {
        return Err(Fault::StaticViolation(op.name()));
    }
    let mut cost = u(gas::WARM_ACCESS);
    if transfers {
        cost += u(gas::CALL_VALUE);
    }
    charge(ctx, cost)?;
    let in_off = expand(ctx, io[0], io[1])?;
    let out_off = expand(ctx, io[2], io[3])?;
    let in_len = to_u64(io[1]).unwrap_or(0);
    let out_len = to_u64(io[3]).unwrap_or(0);
    let forwarded = g.min(gas::all_but_one_64th(ctx.gas));
    ctx.gas -= forwarded;
    let stipend = if transfers {
        u(gas::CALL_STIPEND)
    } else {
        Word::ZERO
    };
    Ok(Outcome::Event(ControlEvent::Call {
        kind,
        sender,
        target: Address::from_word(target),
        value,
        input: ctx.memory.read(in_off, in_len),
        ret_offset: out_off,
        ret_size: out_len,
        gas: forwarded + stipend,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::KeccakOracle;
    use crate::yul::{index_objects, parse_object};

    struct Rig {
        ctx: CallContext,
        world: World,
        table: ObjectTable,
    }

    impl Rig {
        fn new() -> Self {
            let oracle = KeccakOracle::default();
            let mut o = parse_object(
                r#"object "DAO_3087" { code { }
                    object "DAO_3087_deployed" { code { } data ".metadata" hex"a264" } }"#,
            )
            .unwrap();
            let table = index_objects(&mut o, &oracle).unwrap();
            let mut ctx = CallContext::new(
                Address::from_u64(0xaa),
                o.id,
                Address::from_u64(1),
                u(1_000_000),
            );
            ctx.calldata = vec![0xde, 0xad];
            Rig {
                ctx,
                world: World::new(oracle),
                table,
            }
        }

        fn run(&mut self, op: &str, args: &[u64]) -> Result<Outcome, Fault> {
            let words: Vec<Word> = args.iter().map(|&x| u(x)).collect();
            self.run_w(op, &words, None)
        }

        fn run_w(&mut self, op: &str, args: &[Word], lit: Option<&str>) -> Result<Outcome, Fault> {
            let host = Host {
                objects: &self.table,
                opponents: &[],
                print: &|_| {},
            };
            exec(
                Builtin::from_name(op).unwrap(),
                args,
                lit,
                &mut self.ctx,
                &mut self.world,
                &host,
            )
        }

        fn val(&mut self, op: &str, args: &[Word]) -> Word {
            match self.run_w(op, args, None).unwrap() {
                Outcome::Value(v) => v,
                o => panic!("{o:?}"),
            }
        }
    }

    #[test]
    fn wraparound() {
        let mut r = Rig::new();
        assert_eq!(r.val("add", &[Word::MAX, u(1)]), Word::ZERO);
    }

    #[test]
    fn sdiv_overflow_case() {
        let mut r = Rig::new();
        let min = Word::from(1u8) << 255;
        assert_eq!(r.val("sdiv", &[min, Word::MAX]), min);
    }

    #[test]
    fn shl_small() {
        let mut r = Rig::new();
        assert_eq!(r.val("shl", &[u(4), u(0xff)]), u(0xff0));
    }

    #[test]
    fn datasize_of_object_is_32() {
        let mut r = Rig::new();
        assert_eq!(
            r.run_w("datasize", &[], Some("DAO_3087_deployed")),
            Ok(Outcome::Value(u(32)))
        );
        let id = r.table.id_of("DAO_3087_deployed").unwrap();
        assert_eq!(
            r.run_w("dataoffset", &[], Some("DAO_3087_deployed")),
            Ok(Outcome::Value(id))
        );
        assert!(matches!(
            r.run_w("datasize", &[], Some("nope")),
            Err(Fault::UnknownName(_))
        ));
    }

    #[test]
    fn codecopy_of_object_writes_id() {
        let mut r = Rig::new();
        let id = r.table.id_of("DAO_3087_deployed").unwrap();
        r.run_w("codecopy", &[u(0), id, u(32)], None).unwrap();
        assert_eq!(r.val("mload", &[u(0)]), id);
    }

    #[test]
    fn assert_outcomes() {
        let mut r = Rig::new();
        assert_eq!(r.run("ASSERT", &[1]), Ok(Outcome::Done));
        assert_eq!(
            r.run("ASSERT", &[0]),
            Ok(Outcome::Event(ControlEvent::AssertFailed))
        );
    }

    #[test]
    fn memory_rw_and_msize() {
        let mut r = Rig::new();
        r.run("mstore", &[0, 7]).unwrap();
        assert_eq!(r.val("mload", &[u(0)]), u(7));
        assert_eq!(r.val("msize", &[]), u(32));
    }

    #[test]
    fn keccak_gas() {
        let mut r = Rig::new();
        r.run("mstore", &[32, 0]).unwrap();
        let before = r.ctx.gas;
        r.run("keccak256", &[0, 64]).unwrap();
        assert_eq!(before - r.ctx.gas, u(42));
    }

    #[test]
    fn mload_fresh_memory_gas() {
        let mut r = Rig::new();
        let before = r.ctx.gas;
        r.run("mload", &[0]).unwrap();
        assert_eq!(before - r.ctx.gas, u(3 + 3));
    }

    #[test]
    fn out_of_gas_at_zero() {
        let mut r = Rig::new();
        r.ctx.gas = Word::ZERO;
        assert_eq!(r.run("add", &[1, 2]), Err(Fault::OutOfGas));
    }

    #[test]
    fn static_context_blocks_sstore_before_mutation() {
        let mut r = Rig::new();
        r.ctx.is_static = true;
        let before = r.world.clone();
        assert!(matches!(
            r.run("sstore", &[1, 1]),
            Err(Fault::StaticViolation(_))
        ));
        assert!(matches!(
            r.run("log0", &[0, 0]),
            Err(Fault::StaticViolation(_))
        ));
        assert!(matches!(
            r.run("call", &[0, 5, 1, 0, 0, 0, 0]),
            Err(Fault::StaticViolation(_))
        ));
        assert_eq!(r.world, before);
    }

    #[test]
    fn call_becomes_event_without_world_change() {
        let mut r = Rig::new();
        r.run("mstore", &[0, 0x1234]).unwrap();
        let before = r.world.clone();
        let out = r.run("call", &[5000, 0x30, 3, 30, 2, 64, 32]).unwrap();
        match out {
            Outcome::Event(ControlEvent::Call {
                kind,
                target,
                value,
                input,
                ret_offset,
                ret_size,
                gas,
                ..
            }) => {
                assert_eq!(kind, CallKind::Call);
                assert_eq!(target, Address::from_u64(0x30));
                assert_eq!(value, u(3));
                assert_eq!(input, vec![0x12, 0x34]);
                assert_eq!((ret_offset, ret_size), (64, 32));
                assert_eq!(gas, u(5000 + 2300));
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(r.world, before);
        assert_eq!(r.ctx.memory.msize(), 96);
    }

    #[test]
    fn unsupported_ops() {
        let mut r = Rig::new();
        assert_eq!(r.run("invalid", &[]), Err(Fault::Unsupported("invalid")));
        assert_eq!(
            r.run("selfdestruct", &[1]),
            Err(Fault::Unsupported("selfdestruct"))
        );
        assert_eq!(r.run("tstore", &[1, 1]), Err(Fault::Unsupported("tstore")));
        assert_eq!(
            r.run("extcodecopy", &[1, 0, 0, 0]),
            Err(Fault::Unsupported("extcodecopy"))
        );
    }

    #[test]
    fn returndatacopy_bounds() {
        let mut r = Rig::new();
        r.ctx.returndata = vec![1, 2, 3];
        assert!(r.run("returndatacopy", &[0, 0, 3]).is_ok());
        assert_eq!(
            r.run("returndatacopy", &[0, 1, 3]),
            Err(Fault::ReturnDataOutOfBounds)
        );
    }

    #[test]
    fn calldata_padding() {
        let mut r = Rig::new();
        assert_eq!(r.val("calldataload", &[u(1)]), u(0xad) << 248);
        assert_eq!(r.val("calldataload", &[Word::MAX]), Word::ZERO);
    }

    #[test]
    fn immutables_follow_code_address() {
        let mut r = Rig::new();
        r.run_w("setimmutable", &[u(0), u(9)], Some("18")).unwrap();
        assert_eq!(
            r.run_w("loadimmutable", &[], Some("18")),
            Ok(Outcome::Value(u(9)))
        );
        r.ctx.code_address = Address::from_u64(0xbb);
        assert_eq!(
            r.run_w("loadimmutable", &[], Some("18")),
            Ok(Outcome::Value(Word::ZERO))
        );
    }

    #[test]
    fn block_constants() {
        let mut r = Rig::new();
        assert_eq!(r.val("number", &[]), u(1));
        assert_eq!(r.val("chainid", &[]), u(1));
        assert_eq!(r.val("coinbase", &[]), Word::ZERO);
        assert_eq!(r.val("blockhash", &[u(0)]), Word::ZERO);
    }

    #[test]
    fn sstore_pricing() {
        let mut r = Rig::new();
        let g0 = r.ctx.gas;
        r.run("sstore", &[1, 5]).unwrap();
        let g1 = r.ctx.gas;
        r.run("sstore", &[1, 6]).unwrap();
        let g2 = r.ctx.gas;
        r.run("sstore", &[1, 6]).unwrap();
        assert_eq!(g0 - g1, u(20_000));
        assert_eq!(g1 - g2, u(2_900));
        assert_eq!(g2 - r.ctx.gas, u(100));
    }
}
