//! Resource caps.
//!
//! Caps are read through [`Caps::current`]: a thread-local override (see
//! [`Caps::scoped`]) wins over the process-wide value installed with
//! [`Caps::install`]. Exceeding a cap is always a hard
//! [`Error::Resource`](crate::Error::Resource), never a silent truncation.

use std::cell::RefCell;
use std::sync::RwLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of tuples in a computed limit apex.
    pub apex: usize,
    /// Maximum cube dimension.
    pub dim: usize,
    /// Maximum number of candidate tables tried per level by contraction search.
    pub contraction_candidates: usize,
    /// Maximum number of entries of a single tabulated operation.
    pub table_entries: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            apex: 1_000_000,
            dim: 6,
            contraction_candidates: 100_000,
            table_entries: 1 << 22,
        }
    }
}

static GLOBAL: RwLock<Option<Caps>> = RwLock::new(None);

thread_local! {
    static LOCAL: RefCell<Option<Caps>> = const { RefCell::new(None) };
}

impl Caps {
    pub fn current() -> Caps {
        if let Some(c) = LOCAL.with(|l| *l.borrow()) {
            return c;
        }
        GLOBAL
            .read()
            .ok()
            .and_then(|g| *g)
            .unwrap_or_default()
    }

    /// Installs process-wide caps.
    pub fn install(self) {
        if let Ok(mut g) = GLOBAL.write() {
            *g = Some(self);
        }
    }

    /// Runs `f` with these caps on the current thread only.
    pub fn scoped<T>(self, f: impl FnOnce() -> T) -> T {
        let prev = LOCAL.with(|l| l.replace(Some(self)));
        let out = f();
        LOCAL.with(|l| *l.borrow_mut() = prev);
        out
    }
}
