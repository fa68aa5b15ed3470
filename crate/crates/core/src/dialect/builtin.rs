/// Every builtin of the EVM dialect, plus the analysis opcodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Add,
    Sub,
    Mul,
    Div,
    Sdiv,
    Mod,
    Smod,
    Addmod,
    Mulmod,
    Exp,
    Signextend,
    Lt,
    Gt,
    Slt,
    Sgt,
    Eq,
    Iszero,
    And,
    Or,
    Xor,
    Not,
    Byte,
    Shl,
    Shr,
    Sar,
    Keccak256,
    Mload,
    Mstore,
    Mstore8,
    Msize,
    Mcopy,
    Sload,
    Sstore,
    Tload,
    Tstore,
    Caller,
    Callvalue,
    Calldataload,
    Calldatasize,
    Calldatacopy,
    Returndatasize,
    Returndatacopy,
    Address,
    Balance,
    Selfbalance,
    Origin,
    Gas,
    Gasprice,
    Extcodesize,
    Extcodehash,
    Extcodecopy,
    Timestamp,
    Number,
    Chainid,
    Coinbase,
    Basefee,
    Blobbasefee,
    Blobhash,
    Gaslimit,
    Prevrandao,
    Difficulty,
    Blockhash,
    Stop,
    Return,
    Revert,
    Call,
    Callcode,
    Staticcall,
    Delegatecall,
    Create,
    Create2,
    Log0,
    Log1,
    Log2,
    Log3,
    Log4,
    Pop,
    Invalid,
    Selfdestruct,
    Datasize,
    Dataoffset,
    Datacopy,
    Codecopy,
    Codesize,
    Setimmutable,
    Loadimmutable,
    Linkersymbol,
    Memoryguard,
    Assert,
    RevealUint,
    RevealAddr,
    ExtFund,
    Print,
    PrintSigned,
    PrintHex,
    Impersonatecall,
}

use Builtin::*;

const TABLE: &[(&str, Builtin, u8, u8)] = &[
    ("add", Add, 2, 1),
    ("sub", Sub, 2, 1),
    ("mul", Mul, 2, 1),
    ("div", Div, 2, 1),
    ("sdiv", Sdiv, 2, 1),
    ("mod", Mod, 2, 1),
    ("smod", Smod, 2, 1),
    ("addmod", Addmod, 3, 1),
    ("mulmod", Mulmod, 3, 1),
    ("exp", Exp, 2, 1),
    ("signextend", Signextend, 2, 1),
    ("lt", Lt, 2, 1),
    ("gt", Gt, 2, 1),
    ("slt", Slt, 2, 1),
    ("sgt", Sgt, 2, 1),
    ("eq", Eq, 2, 1),
    ("iszero", Iszero, 1, 1),
    ("and", And, 2, 1),
    ("or", Or, 2, 1),
    ("xor", Xor, 2, 1),
    ("not", Not, 1, 1),
    ("byte", Byte, 2, 1),
    ("shl", Shl, 2, 1),
    ("shr", Shr, 2, 1),
    ("sar", Sar, 2, 1),
    ("keccak256", Keccak256, 2, 1),
    ("mload", Mload, 1, 1),
    ("mstore", Mstore, 2, 0),
    ("mstore8", Mstore8, 2, 0),
    ("msize", Msize, 0, 1),
    ("mcopy", Mcopy, 3, 0),
    ("sload", Sload, 1, 1),
    ("sstore", Sstore, 2, 0),
    ("tload", Tload, 1, 1),
    ("tstore", Tstore, 2, 0),
    ("caller", Caller, 0, 1),
    ("callvalue", Callvalue, 0, 1),
    ("calldataload", Calldataload, 1, 1),
    ("calldatasize", Calldatasize, 0, 1),
    ("calldatacopy", Calldatacopy, 3, 0),
    ("returndatasize", Returndatasize, 0, 1),
    ("returndatacopy", Returndatacopy, 3, 0),
    ("address", Address, 0, 1),
    ("balance", Balance, 1, 1),
    ("selfbalance", Selfbalance, 0, 1),
    ("origin", Origin, 0, 1),
    ("gas", Gas, 0, 1),
    ("gasprice", Gasprice, 0, 1),
    ("extcodesize", Extcodesize, 1, 1),
    ("extcodehash", Extcodehash, 1, 1),
    ("extcodecopy", Extcodecopy, 4, 0),
    ("timestamp", Timestamp, 0, 1),
    ("number", Number, 0, 1),
    ("chainid", Chainid, 0, 1),
    ("coinbase", Coinbase, 0, 1),
    ("basefee", Basefee, 0, 1),
    ("blobbasefee", Blobbasefee, 0, 1),
    ("blobhash", Blobhash, 1, 1),
    ("gaslimit", Gaslimit, 0, 1),
    ("prevrandao", Prevrandao, 0, 1),
    ("difficulty", Difficulty, 0, 1),
    ("blockhash", Blockhash, 1, 1),
    ("stop", Stop, 0, 0),
    ("return", Return, 2, 0),
    ("revert", Revert, 2, 0),
    ("call", Call, 7, 1),
    ("callcode", Callcode, 7, 1),
    ("staticcall", Staticcall, 6, 1),
    ("delegatecall", Delegatecall, 6, 1),
    ("create", Create, 3, 1),
    ("create2", Create2, 4, 1),
    ("log0", Log0, 2, 0),
    ("log1", Log1, 3, 0),
    ("log2", Log2, 4, 0),
    ("log3", Log3, 5, 0),
    ("log4", Log4, 6, 0),
    ("pop", Pop, 1, 0),
    ("invalid", Invalid, 0, 0),
    ("selfdestruct", Selfdestruct, 1, 0),
    ("datasize", Datasize, 1, 1),
    ("dataoffset", Dataoffset, 1, 1),
    ("datacopy", Datacopy, 3, 0),
    ("codecopy", Codecopy, 3, 0),
    ("codesize", Codesize, 0, 1),
    ("setimmutable", Setimmutable, 3, 0),
    ("loadimmutable", Loadimmutable, 1, 1),
    ("linkersymbol", Linkersymbol, 1, 1),
    ("memoryguard", Memoryguard, 1, 1),
    ("ASSERT", Assert, 1, 0),
    ("REVEAL_UINT", RevealUint, 1, 0),
    ("REVEAL_ADDR", RevealAddr, 1, 0),
    ("EXT_FUND", ExtFund, 2, 0),
    ("PRINT", Print, 1, 0),
    ("PRINT_signed", PrintSigned, 1, 0),
    ("PRINT_hex", PrintHex, 1, 0),
    ("IMPERSONATECALL", Impersonatecall, 8, 1),
];

impl Builtin {
    pub fn from_name(name: &str) -> Option<Builtin> {
        TABLE.iter().find(|e| e.0 == name).map(|e| e.1)
    }

    fn entry(self) -> &'static (&'static str, Builtin, u8, u8) {
        TABLE
            .iter()
            .find(|e| e.1 == self)
            .expect("every builtin has a table entry")
    }

    pub fn name(self) -> &'static str {
        self.entry().0
    }

    /// Number of arguments as written in source, literal arguments included.
    pub fn arity(self) -> usize {
        self.entry().2 as usize
    }

    pub fn returns(self) -> usize {
        self.entry().3 as usize
    }

    /// Position of the argument that must be a string literal, if any.
    pub fn literal_arg(self) -> Option<usize> {
        match self {
            Datasize | Dataoffset | Loadimmutable | Linkersymbol => Some(0),
            Setimmutable => Some(1),
            _ => None,
        }
    }

    pub fn all() -> impl Iterator<Item = Builtin> {
        TABLE.iter().map(|e| e.1)
    }
}
