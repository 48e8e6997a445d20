//! Hierarchical names.

use std::fmt;
use std::sync::Arc;

/// A hierarchical name such as `Nat.succ` or `foo.bar.1`.
///
/// Equality is structural; the total order is used for deterministic output
/// (report ordering, topological tie-breaks).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<NameKind>);

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord)]
enum NameKind {
    Anonymous,
    Str(Name, String),
    Num(Name, u64),
}

impl Name {
    pub fn anonymous() -> Name {
        Name(Arc::new(NameKind::Anonymous))
    }

    pub fn str(prefix: Name, s: impl Into<String>) -> Name {
        Name(Arc::new(NameKind::Str(prefix, s.into())))
    }

    pub fn num(prefix: Name, n: u64) -> Name {
        Name(Arc::new(NameKind::Num(prefix, n)))
    }

    /// Builds a name from dot-separated components, e.g. `Name::from_parts("Nat.succ")`.
    pub fn from_parts(s: &str) -> Name {
        let mut n = Name::anonymous();
        for part in s.split('.') {
            n = match part.parse::<u64>() {
                Ok(k) => Name::num(n, k),
                Err(_) => Name::str(n, part),
            };
        }
        n
    }

    pub fn is_anonymous(&self) -> bool {
        matches!(*self.0, NameKind::Anonymous)
    }

    /// Appends a string component.
    pub fn child(&self, s: impl Into<String>) -> Name {
        Name::str(self.clone(), s)
    }

    pub fn prefix(&self) -> Option<&Name> {
        match &*self.0 {
            NameKind::Anonymous => None,
            NameKind::Str(p, _) | NameKind::Num(p, _) => Some(p),
        }
    }

    /// True if `prefix` is a (non-strict) prefix of `self`.
    pub fn has_prefix(&self, prefix: &Name) -> bool {
        let mut cur = Some(self);
        while let Some(n) = cur {
            if n == prefix {
                return true;
            }
            cur = n.prefix();
        }
        false
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            NameKind::Anonymous => write!(f, "[anonymous]"),
            NameKind::Str(p, s) => {
                if !p.is_anonymous() {
                    write!(f, "{p}.")?;
                }
                write!(f, "{s}")
            }
            NameKind::Num(p, n) => {
                if !p.is_anonymous() {
                    write!(f, "{p}.")?;
                }
                write!(f, "{n}")
            }
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parts() {
        let n = Name::from_parts("Nat.succ");
        assert_eq!(n.to_string(), "Nat.succ");
        assert_eq!(n.prefix().unwrap().to_string(), "Nat");
        assert!(n.has_prefix(&Name::from_parts("Nat")));
        assert!(!n.has_prefix(&Name::from_parts("Int")));
    }

    #[test]
    fn numeric_components() {
        let n = Name::num(Name::from_parts("foo"), 3);
        assert_eq!(n.to_string(), "foo.3");
        assert_eq!(Name::from_parts("foo.3"), n);
    }

    #[test]
    fn order_is_total_and_structural() {
        let a = Name::from_parts("A");
        let b = Name::from_parts("B");
        assert!(a < b);
        assert_eq!(a, Name::from_parts("A"));
    }
}
