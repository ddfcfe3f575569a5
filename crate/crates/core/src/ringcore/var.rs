//! Interned variable names.
//!
//! Every indeterminate is a small copyable handle into a process-wide table.
//! Handle ids depend on interning order and are only used for hashing and
//! internal monomial orders; anything user-visible goes through
//! [`canonical_cmp`], which puts `u` first and the rest lexicographically.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// Name of the square root of the residue field cardinality (`q = u^2`).
pub const U_NAME: &str = "u";

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

#[derive(Default)]
struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static TABLE: OnceLock<RwLock<Interner>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Interner::default();
        let name: Arc<str> = Arc::from(U_NAME);
        table.names.push(name.clone());
        table.ids.insert(name, 0);
        RwLock::new(table)
    })
}

impl Var {
    pub fn new(name: &str) -> Var {
        if let Some(&id) = interner().read().expect("interner poisoned").ids.get(name) {
            return Var(id);
        }
        let mut table = interner().write().expect("interner poisoned");
        if let Some(&id) = table.ids.get(name) {
            return Var(id);
        }
        let id = table.names.len() as u32;
        let name: Arc<str> = Arc::from(name);
        table.names.push(name.clone());
        table.ids.insert(name, id);
        Var(id)
    }

    /// The variable `u` with `u^2 = q`.
    pub fn u() -> Var {
        // interned first by construction
        let _ = interner();
        Var(0)
    }

    pub fn is_u(self) -> bool {
        self.0 == 0
    }

    pub fn name(self) -> Arc<str> {
        interner().read().expect("interner poisoned").names[self.0 as usize].clone()
    }
}

/// The printing order: `u` before everything, then names lexicographically.
pub fn canonical_cmp(a: Var, b: Var) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    match (a.is_u(), b.is_u()) {
        (true, _) => Ordering::Less,
        (_, true) => Ordering::Greater,
        _ => a.name().cmp(&b.name()),
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
