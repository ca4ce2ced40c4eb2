//! Name-keyed registries of interchangeable algorithm implementations.

use std::collections::BTreeMap;
use std::fmt;

/// Something that can be registered: it knows its own name.
pub trait Named {
    fn name(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: BTreeMap<&'static str, Box<T>>,
    default: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} `{name}` (available: {available})")]
pub struct UnknownStrategy {
    pub kind: &'static str,
    pub name: String,
    pub available: String,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: BTreeMap::new(), default: None }
    }

    /// Registers `item`; the first registration becomes the default.
    pub fn register(&mut self, item: Box<T>) -> &mut Self {
        let name = item.name();
        self.default.get_or_insert(name);
        self.entries.insert(name, item);
        self
    }

    pub fn set_default(&mut self, name: &'static str) {
        assert!(self.entries.contains_key(name), "no {} named {name}", self.kind);
        self.default = Some(name);
    }

    pub fn get(&self, name: &str) -> Result<&T, UnknownStrategy> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| UnknownStrategy {
            kind: self.kind,
            name: name.to_string(),
            available: self.names().collect::<Vec<_>>().join(", "),
        })
    }

    pub fn default_entry(&self) -> &T {
        let name = self.default.expect("empty registry");
        self.entries[name].as_ref()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.entries.values().map(|b| b.as_ref())
    }
}

impl<T: ?Sized + Named> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("kind", &self.kind)
            .field("entries", &self.entries.keys().collect::<Vec<_>>())
            .field("default", &self.default)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }
    struct Hi;
    struct Yo;
    impl Named for Hi {
        fn name(&self) -> &'static str {
            "hi"
        }
    }
    impl Greeter for Hi {
        fn greet(&self) -> String {
            "hi".into()
        }
    }
    impl Named for Yo {
        fn name(&self) -> &'static str {
            "yo"
        }
    }
    impl Greeter for Yo {
        fn greet(&self) -> String {
            "yo".into()
        }
    }

    #[test]
    fn lookup_and_default() {
        let mut r: Registry<dyn Greeter> = Registry::new("greeter");
        r.register(Box::new(Hi)).register(Box::new(Yo));
        assert_eq!(r.default_entry().greet(), "hi");
        assert_eq!(r.get("yo").unwrap().greet(), "yo");
        let Err(err) = r.get("hey") else { panic!() };
        assert_eq!(err.available, "hi, yo");
        r.set_default("yo");
        assert_eq!(r.default_entry().greet(), "yo");
    }
}
