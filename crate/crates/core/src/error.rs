use thiserror::Error;

use crate::fincat::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid category: {0}")]
    InvalidCategory(ValidationReport),
    #[error("{key} exceeded: {count} > {limit}")]
    CapExceeded { key: &'static str, count: usize, limit: usize },
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("subpresheaf does not belong to the given parent presheaf")]
    ParentMismatch,
    #[error("not a sieve on {object}: {detail}")]
    NotASieve { object: String, detail: String },
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("not an admissible class: {0}")]
    InvalidAdmissible(String),
    #[error("no pullback for the cospan ({f}, {g})")]
    MissingPullback { f: String, g: String },
    #[error("partial maps are not composable: {0}")]
    NotComposable(String),
    #[error("invalid translation family: {0}")]
    InvalidFamily(String),
    #[error("not natural: {0}")]
    NotNatural(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Process exit status: 3 for cap errors, 2 for every other input error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}

/// Size limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct Caps {
    pub max_morphisms: usize,
    pub max_sieves_per_object: usize,
    pub max_elements: usize,
    /// Bound on enumerated subobject lattices, ideal sets and similar families.
    pub max_subobjects: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_morphisms: 64, max_sieves_per_object: 4096, max_elements: 4096, max_subobjects: 65536 }
    }
}

impl Caps {
    pub fn set(&mut self, key: &str, value: usize) -> Result<()> {
        match key {
            "max_morphisms" => self.max_morphisms = value,
            "max_sieves_per_object" => self.max_sieves_per_object = value,
            "max_elements" => self.max_elements = value,
            "max_subobjects" => self.max_subobjects = value,
            other => return Err(Error::UnknownName(other.to_string())),
        }
        Ok(())
    }

    pub(crate) fn check(key: &'static str, count: usize, limit: usize) -> Result<()> {
        if count > limit {
            Err(Error::CapExceeded { key, count, limit })
        } else {
            Ok(())
        }
    }
}
