use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An opaque, cheaply clonable vertex or element name.
///
/// Base labels (user-supplied) may not contain whitespace, `[`, `]`, `,` or
/// `|`; those characters are reserved for subdivision names such as `[a,b]`
/// and for carrier tokens such as `a|[a,b]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    /// Build a label without checking the reserved-character rule. Used for
    /// generated names.
    pub fn new(s: impl AsRef<str>) -> Self {
        Label(Arc::from(s.as_ref()))
    }

    /// Build a user-facing base label.
    pub fn base(s: impl AsRef<str>) -> Result<Self> {
        let s = s.as_ref();
        let bad = s.is_empty() || s.chars().any(|c| c.is_whitespace() || matches!(c, '[' | ']' | ',' | '|'));
        if bad {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        Ok(Label::new(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for Label {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::new(s)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(Label::new(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_labels_reject_reserved_characters() {
        assert!(Label::base("a").is_ok());
        assert!(Label::base("vertex_12").is_ok());
        for bad in ["", "a b", "[a", "a,b", "x|y", "]"] {
            assert!(Label::base(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = vec![Label::new("b"), Label::new("[a,b]"), Label::new("a")];
        v.sort();
        assert_eq!(v, vec![Label::new("[a,b]"), Label::new("a"), Label::new("b")]);
    }
}
