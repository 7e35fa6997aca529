use std::fmt;

use super::labels::NodeLabel;
use crate::store::value::PropertyValue;

/// Canonical string form used in identity keys: leading/trailing whitespace
/// trimmed, internal whitespace runs collapsed to a single space, case kept.
pub fn canonicalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Canonical string form of a property value, for identity comparison.
pub fn canonical_value(value: &PropertyValue) -> String {
    match value {
        PropertyValue::Text(s) => canonicalize(s),
        other => other.to_string(),
    }
}

/// Identity of one logical graph entity: its label plus the ordered,
/// canonicalized values of the label's identity properties. Equal keys
/// denote the same entity; MERGE resolves through this type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityKey {
    label: NodeLabel,
    properties: Vec<(String, String)>,
}

impl IdentityKey {
    /// Builds a key from raw values, canonicalizing each one. The value
    /// order must follow `label.identity_properties()`.
    pub fn new<I, S>(label: NodeLabel, values: I) -> IdentityKey
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let names = label.identity_properties();
        let properties: Vec<(String, String)> = names
            .iter()
            .zip(values)
            .map(|(name, value)| (name.to_string(), canonicalize(value.as_ref())))
            .collect();
        debug_assert_eq!(properties.len(), names.len(), "identity value count");
        IdentityKey { label, properties }
    }

    /// Reads the identity properties off an existing property map. Returns
    /// `None` when any identity property is absent.
    pub fn from_properties<'a, F>(label: NodeLabel, lookup: F) -> Option<IdentityKey>
    where
        F: Fn(&str) -> Option<&'a PropertyValue>,
    {
        let mut properties = Vec::new();
        for name in label.identity_properties() {
            let value = lookup(name)?;
            properties.push((name.to_string(), canonical_value(value)));
        }
        Some(IdentityKey { label, properties })
    }

    pub fn label(&self) -> NodeLabel {
        self.label
    }

    /// Ordered (name, canonical value) pairs.
    pub fn properties(&self) -> &[(String, String)] {
        &self.properties
    }
}

impl fmt::Display for IdentityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.label)?;
        for (i, (name, value)) in self.properties.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", name, value)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_trims_and_collapses() {
        assert_eq!(canonicalize("  Intel  Xeon \t Gold "), "Intel Xeon Gold");
        assert_eq!(canonicalize("plain"), "plain");
        assert_eq!(canonicalize("   "), "");
        assert_eq!(canonicalize("Keep Case"), "Keep Case");
    }

    #[test]
    fn keys_equal_after_whitespace_noise() {
        let a = IdentityKey::new(NodeLabel::Model, ["my model", "1.0"]);
        let b = IdentityKey::new(NodeLabel::Model, ["  my   model ", "1.0"]);
        assert_eq!(a, b);
    }

    #[test]
    fn label_distinguishes_keys_with_same_values() {
        let a = IdentityKey::new(NodeLabel::ModelTraining, ["m", "1"]);
        let b = IdentityKey::new(NodeLabel::Parameters, ["m", "1"]);
        assert_ne!(a, b);
    }

    #[test]
    fn from_properties_requires_all_identity_fields() {
        let name = PropertyValue::Text("m".into());
        let key = IdentityKey::from_properties(NodeLabel::Model, |p| {
            (p == "name").then_some(&name)
        });
        assert!(key.is_none(), "version missing");
    }
}
