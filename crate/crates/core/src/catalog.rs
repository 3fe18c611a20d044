//! The built-in scenario catalog and lookup by case label.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scenario::{parse_scenario, Diagnostic, QuotientScenario};

/// Shipped scenario files, embedded at compile time.
pub const BUILTIN_FILES: &[(&str, &str)] = &[
    ("I.json", include_str!("../catalog/I.json")),
    ("II.json", include_str!("../catalog/II.json")),
    ("III-1.json", include_str!("../catalog/III-1.json")),
    ("III-2.json", include_str!("../catalog/III-2.json")),
    ("III-3.json", include_str!("../catalog/III-3.json")),
    ("III-4.json", include_str!("../catalog/III-4.json")),
    ("IV-1.json", include_str!("../catalog/IV-1.json")),
    ("IV-2.json", include_str!("../catalog/IV-2.json")),
    ("V.json", include_str!("../catalog/V.json")),
    ("XI.json", include_str!("../catalog/XI.json")),
    ("XV.json", include_str!("../catalog/XV.json")),
    ("Z2xZ2.json", include_str!("../catalog/Z2xZ2.json")),
    ("S3.json", include_str!("../catalog/S3.json")),
    ("Z3xZ3.json", include_str!("../catalog/Z3xZ3.json")),
    ("D2.json", include_str!("../catalog/D2.json")),
    ("D3.json", include_str!("../catalog/D3.json")),
    ("D5.json", include_str!("../catalog/D5.json")),
    ("S3xZ3.json", include_str!("../catalog/S3xZ3.json")),
    ("trivial.json", include_str!("../catalog/trivial.json")),
];

/// A set of validated scenarios.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    scenarios: Vec<QuotientScenario>,
}

impl Catalog {
    /// Parse named documents; diagnostics are prefixed with the file name.
    pub fn from_documents<'a>(
        docs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> std::result::Result<Self, Vec<Diagnostic>> {
        let mut scenarios = Vec::new();
        let mut errors = Vec::new();
        for (name, text) in docs {
            match parse_scenario(text) {
                Ok(s) => scenarios.push(s),
                Err(ds) => errors.extend(ds.into_iter().map(|d| Diagnostic {
                    path: format!("{name}:{}", d.path),
                    message: d.message,
                })),
            }
        }
        if errors.is_empty() {
            Ok(Self { scenarios })
        } else {
            Err(errors)
        }
    }

    /// The embedded catalog, parsed once.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            Catalog::from_documents(BUILTIN_FILES.iter().copied()).unwrap_or_else(|e| {
                let msgs: Vec<String> = e.iter().map(ToString::to_string).collect();
                panic!("built-in catalog is invalid: {}", msgs.join("; "))
            })
        })
    }

    pub fn scenarios(&self) -> &[QuotientScenario] {
        &self.scenarios
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }

    /// Case-insensitive lookup by label.
    pub fn get(&self, label: &str) -> Result<&QuotientScenario> {
        let key = label.trim().to_ascii_lowercase();
        self.scenarios
            .iter()
            .find(|s| s.label.to_ascii_lowercase() == key)
            .ok_or_else(|| Error::UnknownCase(label.to_string()))
    }

    /// Rows of table `t`, in row order.
    pub fn table(&self, t: u32) -> Vec<&QuotientScenario> {
        let mut v: Vec<&QuotientScenario> = self
            .scenarios
            .iter()
            .filter(|s| s.table == Some(t))
            .collect();
        v.sort_by_key(|s| s.row);
        v
    }
}
