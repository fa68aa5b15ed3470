//! Contract ABIs: parsing, selectors, calldata encoding, return decoding and
//! argument enumeration over the Opponent's domains.

use std::fmt;

use indexmap::{IndexMap, IndexSet};
use serde_json::Value;
use thiserror::Error;
use tiny_keccak::{Hasher, Keccak};

use crate::word::{hex_word, word_to_bytes, Address, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AbiType {
    Uint(u16),
    Address,
    Bool,
    FixedBytes(u8),
    Bytes,
    String,
    FixedArray(Box<AbiType>, usize),
}

impl AbiType {
    pub fn parse(text: &str) -> Option<AbiType> {
        if let Some(elem) = text.strip_suffix("[2]") {
            return match elem {
                "uint256" | "bytes32" => {
                    Some(AbiType::FixedArray(Box::new(AbiType::parse(elem)?), 2))
                }
                _ => None,
            };
        }
        match text {
            "address" => return Some(AbiType::Address),
            "bool" => return Some(AbiType::Bool),
            "bytes" => return Some(AbiType::Bytes),
            "string" => return Some(AbiType::String),
            "uint" => return Some(AbiType::Uint(256)),
            _ => {}
        }
        if let Some(n) = text.strip_prefix("uint") {
            let n: u16 = n.parse().ok()?;
            return (n > 0 && n <= 256 && n.is_multiple_of(8) && !text.starts_with("uint0"))
                .then_some(AbiType::Uint(n));
        }
        if let Some(n) = text.strip_prefix("bytes") {
            let n: u8 = n.parse().ok()?;
            return (1..=32).contains(&n).then_some(AbiType::FixedBytes(n));
        }
        None
    }

    pub fn is_dynamic(&self) -> bool {
        matches!(self, AbiType::Bytes | AbiType::String)
    }

    /// Size of the head slot(s) in bytes.
    fn head_size(&self) -> usize {
        match self {
            AbiType::FixedArray(e, n) => e.head_size() * n,
            _ => 32,
        }
    }
}

impl fmt::Display for AbiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbiType::Uint(n) => write!(f, "uint{n}"),
            AbiType::Address => f.write_str("address"),
            AbiType::Bool => f.write_str("bool"),
            AbiType::FixedBytes(n) => write!(f, "bytes{n}"),
            AbiType::Bytes => f.write_str("bytes"),
            AbiType::String => f.write_str("string"),
            AbiType::FixedArray(e, n) => write!(f, "{e}[{n}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbiValue {
    Uint(Word),
    Address(Address),
    Bool(bool),
    /// Left-aligned word.
    FixedBytes(Word),
    Bytes(Vec<u8>),
    String(String),
    Array(Vec<AbiValue>),
}

impl fmt::Display for AbiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbiValue::Uint(w) => write!(f, "{w}"),
            AbiValue::Address(a) => write!(f, "{a}"),
            AbiValue::Bool(b) => write!(f, "{b}"),
            AbiValue::FixedBytes(w) => f.write_str(&hex_word(*w)),
            AbiValue::Bytes(b) => {
                f.write_str("0x")?;
                b.iter().try_for_each(|x| write!(f, "{x:02x}"))
            }
            AbiValue::String(s) => write!(f, "{s:?}"),
            AbiValue::Array(v) => write!(f, "{}", ValueList(v)),
        }
    }
}

/// Renders `[a, b, c]`.
pub struct ValueList<'a>(pub &'a [AbiValue]);

impl fmt::Display for ValueList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutability {
    Pure,
    View,
    Nonpayable,
    Payable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnKind {
    Function,
    Fallback,
    Receive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbiFunction {
    pub name: String,
    pub kind: FnKind,
    pub inputs: Vec<AbiType>,
    pub outputs: Vec<AbiType>,
    pub mutability: Mutability,
    pub signature: String,
    /// `None` for fallback and receive, which take empty calldata.
    pub selector: Option<[u8; 4]>,
}

impl AbiFunction {
    pub fn is_payable(&self) -> bool {
        self.mutability == Mutability::Payable
    }

    pub fn is_read_only(&self) -> bool {
        matches!(self.mutability, Mutability::Pure | Mutability::View)
    }

    /// Key used for per-function call counting.
    pub fn key(&self) -> [u8; 4] {
        self.selector.unwrap_or([0; 4])
    }
}

/// Functions the Opponent may call, per contract name, in file order.
#[derive(Debug, Clone, Default)]
pub struct ExploreAbi {
    pub contracts: IndexMap<String, Vec<AbiFunction>>,
    /// Diagnostics for functions that were dropped.
    pub warnings: Vec<String>,
}

#[derive(Debug, Error)]
pub enum AbiError {
    #[error("malformed ABI JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed ABI: {0}")]
    Shape(String),
    #[error("duplicate function {signature} in contract {contract}")]
    Duplicate { contract: String, signature: String },
}

pub fn selector(signature: &str) -> [u8; 4] {
    let mut k = Keccak::v256();
    k.update(signature.as_bytes());
    let mut out = [0u8; 32];
    k.finalize(&mut out);
    [out[0], out[1], out[2], out[3]]
}

impl ExploreAbi {
    /// Parses compiler ABI JSON. Accepted shapes: `--combined-json` output
    /// (`{"contracts": {"file:Name": {"abi": ...}}}`), a map from contract
    /// name to entry list, or a bare entry list, which is filed under
    /// `default_contract`.
    pub fn parse(text: &str, default_contract: &str) -> Result<ExploreAbi, AbiError> {
        let json: Value = serde_json::from_str(text)?;
        let mut abi = ExploreAbi::default();
        match &json {
            Value::Array(entries) => abi.add_contract(default_contract, entries)?,
            Value::Object(map) => {
                if let Some(Value::Object(cs)) = map.get("contracts") {
                    for (key, c) in cs {
                        let name = key.rsplit(':').next().unwrap_or(key);
                        let entries = match c.get("abi") {
                            Some(Value::Array(a)) => a.clone(),
                            Some(Value::String(s)) => match serde_json::from_str(s)? {
                                Value::Array(a) => a,
                                _ => {
                                    return Err(AbiError::Shape(format!(
                                        "abi of {key} is not a list"
                                    )))
                                }
                            },
                            _ => {
                                return Err(AbiError::Shape(format!(
                                    "contract {key} has no abi list"
                                )))
                            }
                        };
                        abi.add_contract(name, &entries)?;
                    }
                } else {
                    for (name, entries) in map {
                        let Value::Array(entries) = entries else {
                            return Err(AbiError::Shape(format!("entry for {name} is not a list")));
                        };
                        abi.add_contract(name, entries)?;
                    }
                }
            }
            _ => return Err(AbiError::Shape("expected a list or an object".into())),
        }
        Ok(abi)
    }

    fn add_contract(&mut self, contract: &str, entries: &[Value]) -> Result<(), AbiError> {
        let mut fns: Vec<AbiFunction> = Vec::new();
        for e in entries {
            let kind = match e.get("type").and_then(Value::as_str).unwrap_or("function") {
                "function" => FnKind::Function,
                "fallback" => FnKind::Fallback,
                "receive" => FnKind::Receive,
                _ => continue,
            };
            let name = match kind {
                FnKind::Function => e
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| {
                        AbiError::Shape(format!("function without a name in {contract}"))
                    })?
                    .to_string(),
                FnKind::Fallback => "fallback".into(),
                FnKind::Receive => "receive".into(),
            };
            let mutability = match e.get("stateMutability").and_then(Value::as_str) {
                Some("pure") => Mutability::Pure,
                Some("view") => Mutability::View,
                Some("payable") => Mutability::Payable,
                Some(_) => Mutability::Nonpayable,
                None => {
                    if e.get("payable").and_then(Value::as_bool) == Some(true) {
                        Mutability::Payable
                    } else if e.get("constant").and_then(Value::as_bool) == Some(true) {
                        Mutability::View
                    } else {
                        Mutability::Nonpayable
                    }
                }
            };
            let types = |key: &str| -> Result<Vec<AbiType>, String> {
                let list = match e.get(key) {
                    Some(Value::Array(l)) => l.clone(),
                    _ => Vec::new(),
                };
                list.iter()
                    .map(|p| {
                        let t = p.get("type").and_then(Value::as_str).unwrap_or("");
                        AbiType::parse(t).ok_or_else(|| t.to_string())
                    })
                    .collect()
            };
            let inputs = match types("inputs") {
                Ok(t) => t,
                Err(bad) => {
                    self.warnings.push(format!(
                        "skipping {contract}.{name}: unsupported parameter type `{bad}`"
                    ));
                    continue;
                }
            };
            // Unsupported return types only affect decoding.
            let outputs = types("outputs").unwrap_or_default();
            let signature = format!(
                "{name}({})",
                inputs
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            if fns.iter().any(|f| f.signature == signature) {
                return Err(AbiError::Duplicate {
                    contract: contract.to_string(),
                    signature,
                });
            }
            let selector = (kind == FnKind::Function).then(|| selector(&signature));
            fns.push(AbiFunction {
                name,
                kind,
                inputs,
                outputs,
                mutability,
                signature,
                selector,
            });
        }
        self.contracts
            .entry(contract.to_string())
            .or_default()
            .extend(fns);
        Ok(())
    }

    pub fn functions(&self, contract: &str) -> &[AbiFunction] {
        self.contracts.get(contract).map_or(&[], |v| v.as_slice())
    }

    /// Keeps only functions named by `Contract.signature` (or `Contract.name`)
    /// entries. Returns the entries that matched nothing.
    pub fn retain_only(&mut self, keep: &[String]) -> Vec<String> {
        let mut used = vec![false; keep.len()];
        for (contract, fns) in self.contracts.iter_mut() {
            fns.retain(|f| {
                let mut hit = false;
                for (i, k) in keep.iter().enumerate() {
                    if let Some((c, s)) = k.split_once('.') {
                        if c == contract && (s == f.signature || s == f.name) {
                            used[i] = true;
                            hit = true;
                        }
                    }
                }
                hit
            });
        }
        keep.iter()
            .zip(used)
            .filter(|(_, u)| !u)
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Any function, in any contract, with this selector.
    pub fn by_selector(&self, sel: [u8; 4]) -> Option<&AbiFunction> {
        self.contracts
            .values()
            .flatten()
            .find(|f| f.selector == Some(sel))
    }
}

fn encode_static(t: &AbiType, v: &AbiValue, out: &mut Vec<u8>) {
    match v {
        AbiValue::Uint(w) | AbiValue::FixedBytes(w) => out.extend_from_slice(&word_to_bytes(*w)),
        AbiValue::Address(a) => out.extend_from_slice(&word_to_bytes(a.to_word())),
        AbiValue::Bool(b) => out.extend_from_slice(&word_to_bytes(Word::from(*b as u8))),
        AbiValue::Array(items) => {
            let elem = match t {
                AbiType::FixedArray(e, _) => e.as_ref(),
                _ => t,
            };
            for i in items {
                encode_static(elem, i, out);
            }
        }
        AbiValue::Bytes(_) | AbiValue::String(_) => unreachable!("dynamic value in head"),
    }
}

/// Encodes values against types with the standard head/tail layout.
pub fn encode_args(types: &[AbiType], values: &[AbiValue]) -> Vec<u8> {
    let head_len: usize = types.iter().map(|t| t.head_size()).sum();
    let mut head = Vec::with_capacity(head_len);
    let mut tail = Vec::new();
    for (t, v) in types.iter().zip(values) {
        match v {
            AbiValue::Bytes(b) => push_dynamic(b, head_len, &mut head, &mut tail),
            AbiValue::String(s) => push_dynamic(s.as_bytes(), head_len, &mut head, &mut tail),
            _ => encode_static(t, v, &mut head),
        }
    }
    head.extend(tail);
    head
}

fn push_dynamic(data: &[u8], head_len: usize, head: &mut Vec<u8>, tail: &mut Vec<u8>) {
    head.extend_from_slice(&word_to_bytes(Word::from(head_len + tail.len())));
    tail.extend_from_slice(&word_to_bytes(Word::from(data.len())));
    tail.extend_from_slice(data);
    let pad = (32 - data.len() % 32) % 32;
    tail.extend(std::iter::repeat_n(0u8, pad));
}

/// Selector followed by the encoded arguments; empty for fallback/receive.
pub fn encode_call(f: &AbiFunction, args: &[AbiValue]) -> Vec<u8> {
    let Some(sel) = f.selector else {
        return Vec::new();
    };
    let mut out = sel.to_vec();
    out.extend(encode_args(&f.inputs, args));
    out
}

/// Result of decoding return data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Values(Vec<AbiValue>),
    Raw(Vec<u8>),
}

impl fmt::Display for Decoded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoded::Values(v) => write!(f, "{}", ValueList(v)),
            Decoded::Raw(b) if b.is_empty() => f.write_str("[]"),
            Decoded::Raw(b) => {
                f.write_str("0x")?;
                b.iter().try_for_each(|x| write!(f, "{x:02x}"))
            }
        }
    }
}

fn word_at(data: &[u8], off: usize) -> Option<Word> {
    data.get(off..off.checked_add(32)?).map(Word::from_be_slice)
}

fn decode_one(t: &AbiType, data: &[u8], head: usize) -> Option<AbiValue> {
    let w = word_at(data, head)?;
    Some(match t {
        AbiType::Uint(n) => {
            if *n < 256 && w.bit_len() > *n as usize {
                return None;
            }
            AbiValue::Uint(w)
        }
        AbiType::Address => {
            if w.bit_len() > 160 {
                return None;
            }
            AbiValue::Address(Address::from_word(w))
        }
        AbiType::Bool => {
            if w > Word::from(1u8) {
                return None;
            }
            AbiValue::Bool(!w.is_zero())
        }
        AbiType::FixedBytes(n) => {
            if !fits_bytes(w, *n) {
                return None;
            }
            AbiValue::FixedBytes(w)
        }
        AbiType::Bytes | AbiType::String => {
            let off: usize = w.try_into().ok()?;
            let len: usize = word_at(data, off)?.try_into().ok()?;
            let start = off.checked_add(32)?;
            let bytes = data.get(start..start.checked_add(len)?)?.to_vec();
            if *t == AbiType::String {
                AbiValue::String(String::from_utf8(bytes).ok()?)
            } else {
                AbiValue::Bytes(bytes)
            }
        }
        AbiType::FixedArray(e, n) => {
            let mut items = Vec::new();
            for i in 0..*n {
                items.push(decode_one(e, data, head + i * e.head_size())?);
            }
            AbiValue::Array(items)
        }
    })
}

/// Best-effort decode; anything malformed comes back as raw bytes.
pub fn decode_return(types: &[AbiType], data: &[u8]) -> Decoded {
    let mut out = Vec::new();
    let mut head = 0;
    for t in types {
        match decode_one(t, data, head) {
            Some(v) => out.push(v),
            None => return Decoded::Raw(data.to_vec()),
        }
        head += t.head_size();
    }
    if types.is_empty() && !data.is_empty() {
        return Decoded::Raw(data.to_vec());
    }
    Decoded::Values(out)
}

/// A `bytesN` value is a word whose low `32 - N` bytes are zero.
pub fn fits_bytes(w: Word, n: u8) -> bool {
    let bytes = word_to_bytes(w);
    bytes[n as usize..].iter().all(|b| *b == 0)
}

pub fn fits_uint(w: Word, bits: u16) -> bool {
    w.bit_len() <= bits as usize
}

/// What the Opponent knows and may pass as arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domains {
    /// Shared by `uintN` and `bytesN` parameters; grows during a trace.
    pub words: IndexSet<Word>,
    /// Grows during a trace.
    pub addresses: IndexSet<Address>,
    pub strings: Vec<String>,
    pub bytes: Vec<Vec<u8>>,
}

impl Default for Domains {
    fn default() -> Self {
        Domains {
            words: [0u64, 1, 1000].into_iter().map(Word::from).collect(),
            addresses: IndexSet::new(),
            strings: vec![String::new()],
            bytes: vec![Vec::new()],
        }
    }
}

/// Candidate values for one parameter, in enumeration order.
pub fn candidates(
    t: &AbiType,
    d: &Domains,
    proponents: &[Address],
    opponents: &[Address],
) -> Vec<AbiValue> {
    match t {
        AbiType::Uint(n) => d
            .words
            .iter()
            .filter(|w| fits_uint(**w, *n))
            .map(|w| AbiValue::Uint(*w))
            .collect(),
        AbiType::FixedBytes(n) => d
            .words
            .iter()
            .filter(|w| fits_bytes(**w, *n))
            .map(|w| AbiValue::FixedBytes(*w))
            .collect(),
        AbiType::Address => {
            let mut all: IndexSet<Address> = d.addresses.clone();
            all.extend(proponents.iter().copied());
            all.extend(opponents.iter().copied());
            all.into_iter().map(AbiValue::Address).collect()
        }
        AbiType::Bool => vec![AbiValue::Bool(false), AbiValue::Bool(true)],
        AbiType::String => d.strings.iter().cloned().map(AbiValue::String).collect(),
        AbiType::Bytes => d.bytes.iter().cloned().map(AbiValue::Bytes).collect(),
        AbiType::FixedArray(e, n) => {
            let one = match e.as_ref() {
                AbiType::FixedBytes(_) => AbiValue::FixedBytes(Word::from(1u8)),
                _ => AbiValue::Uint(Word::from(1u8)),
            };
            vec![AbiValue::Array(vec![one; *n])]
        }
    }
}

/// Cartesian product of per-parameter candidates, leftmost position slowest.
pub fn enumerate_args(
    types: &[AbiType],
    d: &Domains,
    proponents: &[Address],
    opponents: &[Address],
) -> Vec<Vec<AbiValue>> {
    let per: Vec<Vec<AbiValue>> = types
        .iter()
        .map(|t| candidates(t, d, proponents, opponents))
        .collect();
    let mut out = vec![Vec::new()];
    for options in &per {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for v in options {
                let mut p = prefix.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: u64) -> Word {
        Word::from(v)
    }

    #[test]
    fn known_selectors() {
        assert_eq!(
            selector("transfer(address,uint256)"),
            [0xa9, 0x05, 0x9c, 0xbb]
        );
        assert_eq!(selector("withdraw()"), [0x3c, 0xcf, 0xd6, 0x0b]);
        assert_eq!(selector("deposit()"), [0xd0, 0xe3, 0x0d, 0xb0]);
        assert_eq!(selector("supportsToken()"), selector("supportsToken()"));
    }

    #[test]
    fn parse_entries() {
        let abi = ExploreAbi::parse(
            r#"[{"type":"function","name":"vote","inputs":[{"type":"uint256"},{"type":"bool"}],
                 "outputs":[],"stateMutability":"nonpayable"},
                {"type":"function","name":"get","inputs":[],"outputs":[{"type":"uint256"}],"stateMutability":"view"},
                {"type":"constructor","inputs":[]},
                {"type":"event","name":"E","inputs":[]},
                {"type":"function","name":"t","inputs":[{"type":"tuple","components":[]}],"outputs":[],"stateMutability":"nonpayable"}]"#,
            "DAO",
        )
        .unwrap();
        let fns = abi.functions("DAO");
        assert_eq!(fns.len(), 2);
        assert_eq!(fns[0].signature, "vote(uint256,bool)");
        assert!(fns[1].is_read_only());
        assert_eq!(abi.warnings.len(), 1);
    }

    #[test]
    fn empty_list() {
        let abi = ExploreAbi::parse("[]", "X").unwrap();
        assert!(abi.functions("X").is_empty());
    }

    #[test]
    fn combined_json_and_map() {
        let c = ExploreAbi::parse(
            r#"{"contracts":{"src/B.sol:Bank":{"abi":[{"type":"function","name":"withdraw","inputs":[],"outputs":[],"stateMutability":"nonpayable"}]}}}"#,
            "",
        )
        .unwrap();
        assert_eq!(c.functions("Bank")[0].signature, "withdraw()");
        let m = ExploreAbi::parse(
            r#"{"Bank":[{"type":"receive","stateMutability":"payable"}]}"#,
            "",
        )
        .unwrap();
        assert_eq!(m.functions("Bank")[0].kind, FnKind::Receive);
        assert_eq!(m.functions("Bank")[0].selector, None);
    }

    #[test]
    fn duplicate_signature() {
        let e = ExploreAbi::parse(
            r#"[{"type":"function","name":"f","inputs":[],"outputs":[]},
                {"type":"function","name":"f","inputs":[],"outputs":[]}]"#,
            "A",
        );
        assert!(matches!(e, Err(AbiError::Duplicate { .. })));
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(
            ExploreAbi::parse("{", "A"),
            Err(AbiError::Json(_))
        ));
    }

    #[test]
    fn encode_uint() {
        let f = AbiFunction {
            name: "f".into(),
            kind: FnKind::Function,
            inputs: vec![AbiType::Uint(256)],
            outputs: vec![],
            mutability: Mutability::Nonpayable,
            signature: "f(uint256)".into(),
            selector: Some(selector("f(uint256)")),
        };
        let data = encode_call(&f, &[AbiValue::Uint(w(5))]);
        assert_eq!(data.len(), 36);
        assert_eq!(&data[..4], &selector("f(uint256)"));
        assert_eq!(data[35], 5);
        assert!(data[4..35].iter().all(|b| *b == 0));
    }

    #[test]
    fn encode_bool_and_empty_string() {
        assert_eq!(
            encode_args(&[AbiType::Bool], &[AbiValue::Bool(true)]),
            word_to_bytes(w(1)).to_vec()
        );
        let enc = encode_args(&[AbiType::String], &[AbiValue::String(String::new())]);
        assert_eq!(enc.len(), 64);
        assert_eq!(Word::from_be_slice(&enc[..32]), w(32));
        assert_eq!(Word::from_be_slice(&enc[32..]), Word::ZERO);
    }

    #[test]
    fn decode_cases() {
        assert_eq!(
            decode_return(&[AbiType::Uint(256)], &word_to_bytes(w(1))),
            Decoded::Values(vec![AbiValue::Uint(w(1))])
        );
        assert_eq!(decode_return(&[], &[]), Decoded::Values(vec![]));
        assert_eq!(
            decode_return(&[AbiType::Uint(256)], &[1, 2, 3, 4, 5]),
            Decoded::Raw(vec![1, 2, 3, 4, 5])
        );
    }

    #[test]
    fn round_trip_mixed() {
        let types = vec![
            AbiType::Uint(8),
            AbiType::Address,
            AbiType::Bytes,
            AbiType::FixedArray(Box::new(AbiType::Uint(256)), 2),
            AbiType::String,
            AbiType::FixedBytes(4),
        ];
        let values = vec![
            AbiValue::Uint(w(200)),
            AbiValue::Address(Address::from_u64(0xabc)),
            AbiValue::Bytes(vec![1, 2, 3]),
            AbiValue::Array(vec![AbiValue::Uint(w(1)), AbiValue::Uint(w(1))]),
            AbiValue::String("hello".into()),
            AbiValue::FixedBytes(w(0xdeadbeef) << 224),
        ];
        let enc = encode_args(&types, &values);
        assert_eq!(decode_return(&types, &enc), Decoded::Values(values));
    }

    #[test]
    fn enumeration_orders_and_filters() {
        let d = Domains::default();
        let a = enumerate_args(&[AbiType::Uint(256)], &d, &[], &[]);
        assert_eq!(
            a,
            vec![
                vec![AbiValue::Uint(w(0))],
                vec![AbiValue::Uint(w(1))],
                vec![AbiValue::Uint(w(1000))]
            ]
        );
        assert_eq!(
            enumerate_args(&[], &d, &[], &[]),
            vec![Vec::<AbiValue>::new()]
        );
        assert_eq!(enumerate_args(&[AbiType::Uint(8)], &d, &[], &[]).len(), 2);
        let pair = enumerate_args(&[AbiType::Bool, AbiType::Uint(256)], &d, &[], &[]);
        assert_eq!(pair.len(), 6);
        assert_eq!(pair[1], vec![AbiValue::Bool(false), AbiValue::Uint(w(1))]);
        let arr = enumerate_args(
            &[AbiType::FixedArray(Box::new(AbiType::FixedBytes(32)), 2)],
            &d,
            &[],
            &[],
        );
        assert_eq!(arr.len(), 1);
    }

    #[test]
    fn bytes_fit_rule() {
        assert!(fits_bytes(Word::ZERO, 1));
        assert!(!fits_bytes(w(1), 31));
        assert!(fits_bytes(w(1), 32));
        assert!(fits_bytes(w(0xff) << 248, 1));
    }

    #[test]
    fn addresses_merge_in_order() {
        let mut d = Domains::default();
        d.addresses.insert(Address::from_u64(7));
        let p = [Address::from_u64(1), Address::from_u64(7)];
        let o = [Address::from_u64(9)];
        let c = candidates(&AbiType::Address, &d, &p, &o);
        let got: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        assert_eq!(got, vec!["0x7", "0x1", "0x9"]);
    }

    #[test]
    fn type_parsing() {
        assert_eq!(AbiType::parse("uint"), Some(AbiType::Uint(256)));
        assert_eq!(AbiType::parse("uint7"), None);
        assert_eq!(AbiType::parse("bytes33"), None);
        assert_eq!(AbiType::parse("int256"), None);
        assert_eq!(AbiType::parse("uint8[2]"), None);
        assert_eq!(
            AbiType::parse("bytes32[2]").unwrap().to_string(),
            "bytes32[2]"
        );
    }
}
