use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use super::{GreedyConstructor, GreedyWithImprovement, LocalSearch};

pub const DEFAULT_STRATEGY: &str = "greedy";

pub type SearchFactory = fn() -> Arc<dyn LocalSearch>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown local search {name:?} (available: {available})")]
    Unknown { name: String, available: String },
    #[error("local search {0:?} is already registered")]
    Duplicate(String),
}

/// Name → constructor table for local search strategies.
#[derive(Clone)]
pub struct Registry {
    factories: BTreeMap<&'static str, SearchFactory>,
}

impl Registry {
    /// A registry with no strategies.
    pub fn empty() -> Self {
        Self { factories: BTreeMap::new() }
    }

    /// The built-in strategies: `greedy` and `greedy-improve`.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("greedy", || Arc::new(GreedyConstructor)).expect("fresh registry");
        r.register("greedy-improve", || Arc::new(GreedyWithImprovement)).expect("fresh registry");
        r
    }

    pub fn register(&mut self, name: &'static str, factory: SearchFactory) -> Result<(), RegistryError> {
        if self.factories.contains_key(name) {
            return Err(RegistryError::Duplicate(name.to_string()));
        }
        self.factories.insert(name, factory);
        Ok(())
    }

    pub fn create(&self, name: &str) -> Result<Arc<dyn LocalSearch>, RegistryError> {
        self.factories.get(name).map(|f| f()).ok_or_else(|| RegistryError::Unknown {
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    /// Registered names in sorted order.
    pub fn names(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl std::fmt::Debug for Registry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Registry").field("strategies", &self.names()).finish()
    }
}
