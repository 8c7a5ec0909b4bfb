//! Name → strategy lookup used wherever an algorithm has interchangeable variants.

use crate::error::{NumericsError, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A set of named trait objects with one designated default.
pub struct Registry<T: ?Sized> {
    entries: BTreeMap<String, Arc<T>>,
    default: Option<String>,
}

impl<T: ?Sized> Default for Registry<T> {
    fn default() -> Self {
        Self { entries: BTreeMap::new(), default: None }
    }
}

impl<T: ?Sized> Clone for Registry<T> {
    fn clone(&self) -> Self {
        Self { entries: self.entries.clone(), default: self.default.clone() }
    }
}

impl<T: ?Sized> Registry<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds (or replaces) a strategy. The first one registered becomes the default.
    pub fn register(&mut self, name: impl Into<String>, item: Arc<T>) -> &mut Self {
        let name = name.into();
        if self.default.is_none() {
            self.default = Some(name.clone());
        }
        self.entries.insert(name, item);
        self
    }

    pub fn set_default(&mut self, name: &str) -> Result<()> {
        self.get(name)?;
        self.default = Some(name.to_string());
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<Arc<T>> {
        self.entries.get(name).cloned().ok_or_else(|| NumericsError::UnknownStrategy {
            name: name.to_string(),
            available: self.names().join(", "),
        })
    }

    /// `Some(name)` → that entry, `None` → the default.
    pub fn resolve(&self, name: Option<&str>) -> Result<Arc<T>> {
        match name.or(self.default.as_deref()) {
            Some(n) => self.get(n),
            None => Err(NumericsError::UnknownStrategy { name: "<default>".into(), available: String::new() }),
        }
    }

    pub fn default_name(&self) -> Option<&str> {
        self.default.as_deref()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }
}
