//! Process-wide symbol table.
//!
//! The fifteen coefficient symbols `a12, a13, ..., a56` of a generic 2-form on a
//! six-dimensional space are pre-registered in row-major order over the index
//! pairs, so their indices (and therefore the canonical term order) never depend
//! on what else a program happens to intern. Further names are appended on first
//! use.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use super::ScalarError;

/// Upper bound on the number of distinct symbols. Monomials are fixed-width
/// exponent arrays of this length.
pub const MAX_SYMBOLS: usize = 32;

/// Number of pre-registered `aij` symbols.
pub const COEFFICIENT_SYMBOLS: usize = 15;

/// Handle to an interned symbol name.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

fn registry() -> &'static RwLock<Vec<String>> {
    static REGISTRY: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut names = Vec::with_capacity(MAX_SYMBOLS);
        for i in 1..=6 {
            for j in (i + 1)..=6 {
                names.push(format!("a{i}{j}"));
            }
        }
        RwLock::new(names)
    })
}

impl Symbol {
    /// Looks up `name`, registering it if it is new.
    pub fn intern(name: &str) -> Result<Symbol, ScalarError> {
        if let Some(s) = Self::lookup(name) {
            return Ok(s);
        }
        let mut names = registry().write().expect("symbol registry poisoned");
        if let Some(pos) = names.iter().position(|n| n == name) {
            return Ok(Symbol(pos as u8));
        }
        if names.len() >= MAX_SYMBOLS {
            return Err(ScalarError::TooManySymbols(name.to_string()));
        }
        names.push(name.to_string());
        Ok(Symbol((names.len() - 1) as u8))
    }

    pub fn lookup(name: &str) -> Option<Symbol> {
        let names = registry().read().expect("symbol registry poisoned");
        names.iter().position(|n| n == name).map(|p| Symbol(p as u8))
    }

    /// The coefficient symbol `a_ij` for `1 <= i < j <= 6`.
    pub fn coefficient(i: usize, j: usize) -> Symbol {
        assert!(1 <= i && i < j && j <= 6, "a{i}{j} is not a coefficient symbol");
        // row-major position of (i, j) among pairs i < j
        let before: usize = (1..i).map(|r| 6 - r).sum();
        Symbol((before + (j - i - 1)) as u8)
    }

    /// Inverse of [`Symbol::coefficient`], if this is one of the `aij`.
    pub fn coefficient_indices(self) -> Option<(usize, usize)> {
        if (self.0 as usize) >= COEFFICIENT_SYMBOLS {
            return None;
        }
        let mut k = self.0 as usize;
        for i in 1..=5 {
            let row = 6 - i;
            if k < row {
                return Some((i, i + 1 + k));
            }
            k -= row;
        }
        unreachable!()
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Symbol {
        debug_assert!(index < MAX_SYMBOLS);
        Symbol(index as u8)
    }

    pub fn name(self) -> String {
        let names = registry().read().expect("symbol registry poisoned");
        names[self.0 as usize].clone()
    }

    /// All fifteen `aij` in canonical order.
    pub fn coefficients() -> impl Iterator<Item = Symbol> {
        (0..COEFFICIENT_SYMBOLS).map(|i| Symbol(i as u8))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_symbols_are_row_major() {
        assert_eq!(Symbol::coefficient(1, 2).index(), 0);
        assert_eq!(Symbol::coefficient(1, 6).index(), 4);
        assert_eq!(Symbol::coefficient(2, 3).index(), 5);
        assert_eq!(Symbol::coefficient(5, 6).index(), 14);
        assert_eq!(Symbol::coefficient(4, 6).name(), "a46");
        for s in Symbol::coefficients() {
            let (i, j) = s.coefficient_indices().unwrap();
            assert_eq!(Symbol::coefficient(i, j), s);
        }
    }

    #[test]
    fn interning_is_stable() {
        let t = Symbol::intern("t_extra").unwrap();
        assert_eq!(Symbol::intern("t_extra").unwrap(), t);
        assert_eq!(t.name(), "t_extra");
        assert!(t.coefficient_indices().is_none());
        assert_eq!(Symbol::intern("a46").unwrap(), Symbol::coefficient(4, 6));
    }
}
