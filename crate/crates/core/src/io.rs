//! Algebra files: JSON objects with `name`, `dim`, `kind`, `params` and a
//! list of `entries` `{i, j, k, m, value}`, 1-based, values in the scalar
//! text grammar.
//!
//! ```json
//! {
//!   "name": "A1",
//!   "dim": 3,
//!   "kind": "leibniz1",
//!   "params": [],
//!   "entries": [
//!     { "i": 1, "j": 1, "k": 1, "m": 3, "value": "1" }
//!   ]
//! }
//! ```

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebras::{Algebra3, AlgebraError, AlgebraKind};
use crate::exactmath::{ParseScalarError, Scalar};
use crate::structure::{is_antisymmetric, Sc3, StructureError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("entries[{entry}].value: {source}")]
    Value {
        entry: usize,
        #[source]
        source: ParseScalarError,
    },
    #[error("entries[{entry}].value uses undeclared parameter `{param}`")]
    UndeclaredParam { entry: usize, param: String },
    #[error("entries[{entry}]: {source}")]
    Entry {
        entry: usize,
        #[source]
        source: StructureError,
    },
    #[error("kind is lie3 but the entries are not antisymmetric (pass --antisymmetrize to complete them)")]
    NotAntisymmetric,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One nonzero structure constant `f_{ijk}^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub m: usize,
    pub value: ValueText,
}

/// Scalar text; bare JSON integers are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueText {
    Text(String),
    Int(i64),
}

impl ValueText {
    fn as_text(&self) -> String {
        match self {
            ValueText::Text(s) => s.clone(),
            ValueText::Int(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub kind: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub entries: Vec<EntryRecord>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Replace the file's kind.
    pub kind: Option<AlgebraKind>,
    /// Complete listed entries antisymmetrically before building the
    /// algebra.
    pub antisymmetrize: bool,
}

/// A parsed file before kind-specific validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedTensor {
    pub name: String,
    pub kind: AlgebraKind,
    pub sc: Sc3,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }

    pub fn from_algebra(alg: &Algebra3) -> Self {
        Self {
            name: alg.name.clone(),
            dim: alg.dim(),
            kind: alg.kind.as_str().to_string(),
            params: alg.sc.params().into_iter().collect(),
            entries: alg
                .sc
                .entries()
                .map(|(&[i, j, k, m], v)| EntryRecord {
                    i,
                    j,
                    k,
                    m,
                    value: ValueText::Text(v.to_string()),
                })
                .collect(),
        }
    }

    /// Pretty JSON, entries sorted by index, trailing newline.
    pub fn render(&self) -> String {
        let mut canonical = self.clone();
        canonical.entries.sort_by_key(|e| [e.i, e.j, e.k, e.m]);
        let mut out = serde_json::to_string_pretty(&canonical).expect("plain data serializes");
        out.push('\n');
        out
    }

    /// The tensor and kind, with the override from `options` applied. Only
    /// checks the file itself; a lie3 kind given as an override is not
    /// antisymmetry-checked here.
    pub fn to_tensor(&self, options: LoadOptions) -> Result<LoadedTensor, IoError> {
        let file_kind: AlgebraKind = self.kind.parse().map_err(|e: AlgebraError| IoError::Field {
            field: "kind".into(),
            message: e.to_string(),
        })?;
        if self.dim == 0 {
            return Err(IoError::Field {
                field: "dim".into(),
                message: "must be at least 1".into(),
            });
        }
        let declared: BTreeSet<&str> = self.params.iter().map(String::as_str).collect();
        let mut sc = Sc3::zero(self.dim);
        for (n, e) in self.entries.iter().enumerate() {
            let value: Scalar = e
                .value
                .as_text()
                .parse()
                .map_err(|source| IoError::Value { entry: n, source })?;
            if let Some(p) = value.params().into_iter().find(|p| !declared.contains(p.as_str())) {
                return Err(IoError::UndeclaredParam { entry: n, param: p });
            }
            sc.add_at([e.i, e.j, e.k, e.m], &value)
                .map_err(|source| IoError::Entry { entry: n, source })?;
        }
        if options.antisymmetrize {
            sc = sc.antisymmetric_completion()?;
        } else if file_kind == AlgebraKind::Lie3 && !is_antisymmetric(&sc) {
            return Err(IoError::NotAntisymmetric);
        }
        Ok(LoadedTensor {
            name: self.name.clone(),
            kind: options.kind.unwrap_or(file_kind),
            sc,
        })
    }

    pub fn to_algebra(&self, options: LoadOptions) -> Result<Algebra3, IoError> {
        let t = self.to_tensor(options)?;
        Ok(Algebra3::new(t.name, t.sc, t.kind)?)
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(at) => message[..at].to_string(),
        None => message.to_string(),
    }
}

pub fn read_file(path: &Path) -> Result<AlgebraFile, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    AlgebraFile::parse(&text)
}

pub fn load_algebra(path: &Path, options: LoadOptions) -> Result<Algebra3, IoError> {
    read_file(path)?.to_algebra(options)
}

pub fn save_algebra(path: &Path, alg: &Algebra3) -> Result<(), IoError> {
    std::fs::write(path, AlgebraFile::from_algebra(alg).render()).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixtures() {
        for alg in fixtures::all() {
            let text = AlgebraFile::from_algebra(&alg).render();
            let back = AlgebraFile::parse(&text)
                .unwrap()
                .to_algebra(LoadOptions::default())
                .unwrap();
            assert_eq!(back.sc, alg.sc, "{}", alg.name);
            assert_eq!(AlgebraFile::from_algebra(&back).render(), text);
        }
    }

    #[test]
    fn unknown_field_has_position() {
        let err = AlgebraFile::parse("{\"name\":\"x\",\"dim\":2,\n\"kind\":\"lie3\",\"extra\":1}").unwrap_err();
        match err {
            IoError::Syntax { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("extra"), "{message}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn undeclared_param_rejected() {
        let file = AlgebraFile::parse(
            r#"{"name":"x","dim":2,"kind":"leibniz1","params":["a"],
                "entries":[{"i":1,"j":1,"k":1,"m":2,"value":"a + b"}]}"#,
        )
        .unwrap();
        assert!(matches!(
            file.to_tensor(LoadOptions::default()),
            Err(IoError::UndeclaredParam { entry: 0, .. })
        ));
    }

    #[test]
    fn lie_files_need_antisymmetry() {
        let file = AlgebraFile::parse(
            r#"{"name":"x","dim":3,"kind":"lie3","entries":[{"i":1,"j":2,"k":3,"m":1,"value":"2"}]}"#,
        )
        .unwrap();
        assert!(matches!(
            file.to_algebra(LoadOptions::default()),
            Err(IoError::NotAntisymmetric)
        ));
        let alg = file
            .to_algebra(LoadOptions {
                antisymmetrize: true,
                ..LoadOptions::default()
            })
            .unwrap();
        assert_eq!(alg.sc.nnz(), 6);
        assert_eq!(alg.sc.get(2, 1, 3, 1), Scalar::from_int(-2));
    }

    #[test]
    fn bad_index_and_value() {
        let file = AlgebraFile::parse(
            r#"{"name":"x","dim":2,"kind":"leibniz1","entries":[{"i":3,"j":1,"k":1,"m":1,"value":"1"}]}"#,
        )
        .unwrap();
        assert!(matches!(
            file.to_tensor(LoadOptions::default()),
            Err(IoError::Entry { entry: 0, .. })
        ));
        let file = AlgebraFile::parse(
            r#"{"name":"x","dim":2,"kind":"leibniz1","entries":[{"i":1,"j":1,"k":1,"m":1,"value":"1/0"}]}"#,
        )
        .unwrap();
        assert!(matches!(
            file.to_tensor(LoadOptions::default()),
            Err(IoError::Value { .. })
        ));
    }
}
