//! Resource caps shared by every constructive or searching operation.

use thiserror::Error;

/// Limits applied by operations that synthesize groups or run searches.
///
/// One record is threaded through the whole API so a caller (or the CLI via
/// `XCB_CAPS`) can raise or lower every limit in one place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order accepted when loading external data.
    pub max_order: usize,
    /// Largest order allowed for synthesized product-like groups.
    pub max_product: usize,
    /// Largest element count explored by permutation closure.
    pub max_closure: usize,
    /// Largest search space (assignments, map tables) explored exhaustively.
    pub max_search: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 64,
            max_product: 8192,
            max_closure: 10_000,
            max_search: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapsParseError {
    #[error("malformed caps entry `{entry}`, expected key=value")]
    Malformed { entry: String },
    #[error("unknown caps key `{key}`")]
    UnknownKey { key: String },
    #[error("value for `{key}` is not a positive integer: `{value}`")]
    BadValue { key: String, value: String },
}

impl Caps {
    /// Parses an override string such as `order=64,search=1000000`.
    ///
    /// Recognized keys: `order`, `product`, `closure`, `search`. Unlisted keys
    /// keep their default values.
    pub fn parse_overrides(spec: &str) -> Result<Self, CapsParseError> {
        let mut caps = Caps::default();
        for entry in spec.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (key, value) = entry.split_once('=').ok_or(CapsParseError::Malformed {
                entry: entry.to_string(),
            })?;
            let key = key.trim();
            let value = value.trim();
            let parsed: u64 = value.parse().map_err(|_| CapsParseError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
            })?;
            if parsed == 0 {
                return Err(CapsParseError::BadValue {
                    key: key.to_string(),
                    value: value.to_string(),
                });
            }
            match key {
                "order" => caps.max_order = parsed as usize,
                "product" => caps.max_product = parsed as usize,
                "closure" => caps.max_closure = parsed as usize,
                "search" => caps.max_search = parsed,
                _ => {
                    return Err(CapsParseError::UnknownKey {
                        key: key.to_string(),
                    })
                }
            }
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_stated() {
        let caps = Caps::default();
        assert_eq!(caps.max_order, 64);
        assert_eq!(caps.max_product, 8192);
        assert_eq!(caps.max_closure, 10_000);
        assert_eq!(caps.max_search, 1_000_000);
    }

    #[test]
    fn parses_override_string() {
        let caps = Caps::parse_overrides("order=128, search=5000").unwrap();
        assert_eq!(caps.max_order, 128);
        assert_eq!(caps.max_search, 5000);
        assert_eq!(caps.max_product, 8192);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(
            Caps::parse_overrides("depth=3"),
            Err(CapsParseError::UnknownKey { .. })
        ));
        assert!(matches!(
            Caps::parse_overrides("order=abc"),
            Err(CapsParseError::BadValue { .. })
        ));
        assert!(matches!(
            Caps::parse_overrides("order"),
            Err(CapsParseError::Malformed { .. })
        ));
        assert!(matches!(
            Caps::parse_overrides("order=0"),
            Err(CapsParseError::BadValue { .. })
        ));
    }
}
