//! Yul source: lexing, parsing, rendering and the object table.

pub mod ast;
mod lexer;
mod parser;
mod render;

use std::collections::HashMap;

use thiserror::Error;

pub use ast::*;
pub use parser::{parse_block, parse_object};
pub use render::{render, render_block};

use crate::state::KeccakOracle;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("duplicate object name \"{0}\"")]
    DuplicateName(String),
}

/// One object in the tree, flattened.
#[derive(Debug, Clone)]
pub struct ObjectEntry {
    pub name: String,
    pub id: Word,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Data segments owned by this object: (name, id).
    pub data: Vec<(String, Word)>,
}

#[derive(Debug, Clone)]
pub struct DataEntry {
    pub name: String,
    pub owner: usize,
    pub bytes: Vec<u8>,
}

/// What a `dataoffset`/`datasize` argument refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolved {
    Object(Word),
    Data { id: Word, len: usize },
}

/// Two-way index between object names and object IDs.
#[derive(Debug, Clone, Default)]
pub struct ObjectTable {
    entries: Vec<ObjectEntry>,
    by_name: HashMap<String, usize>,
    by_id: HashMap<Word, usize>,
    data: HashMap<Word, DataEntry>,
}

impl ObjectTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ObjectEntry] {
        &self.entries
    }

    pub fn id_of(&self, name: &str) -> Option<Word> {
        self.by_name.get(name).map(|&i| self.entries[i].id)
    }

    pub fn name_of(&self, id: Word) -> Option<&str> {
        self.by_id.get(&id).map(|&i| self.entries[i].name.as_str())
    }

    pub fn entry_by_id(&self, id: Word) -> Option<&ObjectEntry> {
        self.by_id.get(&id).map(|&i| &self.entries[i])
    }

    pub fn entry_by_name(&self, name: &str) -> Option<&ObjectEntry> {
        self.by_name.get(name).map(|&i| &self.entries[i])
    }

    pub fn data(&self, id: Word) -> Option<&DataEntry> {
        self.data.get(&id)
    }

    /// Resolves a name used inside `from`'s code: the object itself, a direct
    /// data segment or subobject, a dotted path, or any object by its globally
    /// unique name.
    pub fn resolve(&self, from: &str, name: &str) -> Option<Resolved> {
        let here = self.by_name.get(from).copied();
        if let Some(h) = here {
            let e = &self.entries[h];
            if e.name == name {
                return Some(Resolved::Object(e.id));
            }
            if let Some((_, id)) = e.data.iter().find(|(n, _)| n == name) {
                let len = self.data[id].bytes.len();
                return Some(Resolved::Data { id: *id, len });
            }
            // Dotted paths walk down from the current object.
            if name.contains('.') && !name.starts_with('.') {
                let mut cur = h;
                let mut ok = true;
                let parts: Vec<&str> = name.split('.').collect();
                for (k, part) in parts.iter().enumerate() {
                    let ce = &self.entries[cur];
                    if let Some(&c) = ce.children.iter().find(|&&c| self.entries[c].name == *part) {
                        cur = c;
                    } else if k == parts.len() - 1 {
                        if let Some((_, id)) = ce.data.iter().find(|(n, _)| n == part) {
                            let len = self.data[id].bytes.len();
                            return Some(Resolved::Data { id: *id, len });
                        }
                        ok = false;
                    } else {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Some(Resolved::Object(self.entries[cur].id));
                }
            }
        }
        self.id_of(name).map(Resolved::Object)
    }
}

/// Assigns every object a deterministic nonzero ID derived from its name and
/// returns the two-way table. IDs are written back into the tree.
pub fn index_objects(
    root: &mut YulObject,
    oracle: &KeccakOracle,
) -> Result<ObjectTable, IndexError> {
    let mut table = ObjectTable::default();
    fn visit(
        o: &mut YulObject,
        parent: Option<usize>,
        oracle: &KeccakOracle,
        t: &mut ObjectTable,
    ) -> Result<(), IndexError> {
        if t.by_name.contains_key(&o.name) {
            return Err(IndexError::DuplicateName(o.name.clone()));
        }
        let id = oracle.hash(o.name.as_bytes());
        o.id = id;
        let idx = t.entries.len();
        let mut data = Vec::new();
        for d in &o.data {
            let mut key = o.name.as_bytes().to_vec();
            key.push(0);
            key.extend_from_slice(d.name.as_bytes());
            let did = oracle.hash(&key);
            t.data.insert(
                did,
                DataEntry {
                    name: d.name.clone(),
                    owner: idx,
                    bytes: d.bytes.clone(),
                },
            );
            data.push((d.name.clone(), did));
        }
        t.entries.push(ObjectEntry {
            name: o.name.clone(),
            id,
            parent,
            children: Vec::new(),
            data,
        });
        t.by_name.insert(o.name.clone(), idx);
        t.by_id.insert(id, idx);
        if let Some(p) = parent {
            t.entries[p].children.push(idx);
        }
        for sub in &mut o.subobjects {
            visit(sub, Some(idx), oracle, t)?;
        }
        Ok(())
    }
    visit(root, None, oracle, &mut table)?;
    Ok(table)
}

/// Strips a `_deployed` suffix and the trailing `_<counter>` from a compiler
/// object name, yielding the contract name.
pub fn contract_name(object_name: &str) -> &str {
    let base = object_name.strip_suffix("_deployed").unwrap_or(object_name);
    match base.rfind('_') {
        Some(i)
            if i > 0 && base[i + 1..].bytes().all(|b| b.is_ascii_digit()) && i + 1 < base.len() =>
        {
            &base[..i]
        }
        _ => base,
    }
}
