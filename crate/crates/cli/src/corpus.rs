//! The bundled corpus of knot complexes, paired monodromies and expected
//! classifications.
//!
//! The files are compiled into the binary; a directory with the same layout
//! can be used instead.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use veerkit::cfk::ReducedCFK;
use veerkit::classify::{classify_fibered, consistency_audit};
use veerkit::surface_map::StandardFormMap;

const MANIFEST: &str = "manifest.json";

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../corpus/", $name)))),*]
    };
}

static BUNDLED: &[(&str, &str)] = bundled!(
    "manifest.json",
    "unknot.json",
    "right_trefoil.json",
    "left_trefoil.json",
    "figure8.json",
    "t2_5.json",
    "t2_7.json",
    "t3_4.json",
    "figure8_sum.json",
    "right_trefoil_monodromy.json",
    "left_trefoil_monodromy.json",
    "figure8_monodromy.json",
);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<String>,
    /// Subset of the classification fields that must be reproduced exactly.
    #[serde(default)]
    pub expected: BTreeMap<String, Value>,
    #[serde(default = "yes")]
    pub expect_agreement: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
struct Manifest {
    entries: Vec<CorpusEntry>,
}

/// A corpus with its files held in memory.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    files: BTreeMap<String, String>,
}

#[derive(Debug)]
pub enum LoadError {
    Io {
        file: String,
        message: String,
    },
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io { file, message } => write!(f, "{file}: {message}"),
            LoadError::Parse {
                file,
                line,
                column,
                message,
            } => {
                write!(f, "{file}:{line}:{column}: {message}")
            }
        }
    }
}

pub fn parse<T: serde::de::DeserializeOwned>(file: &str, text: &str) -> Result<T, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse {
        file: file.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl Corpus {
    pub fn bundled() -> Self {
        let files: BTreeMap<String, String> = BUNDLED
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect();
        let manifest: Manifest =
            parse(MANIFEST, &files[MANIFEST]).expect("bundled manifest parses");
        Corpus {
            entries: manifest.entries,
            files,
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self, LoadError> {
        let read = |name: &str| {
            fs::read_to_string(dir.join(name)).map_err(|e| LoadError::Io {
                file: dir.join(name).display().to_string(),
                message: e.to_string(),
            })
        };
        let manifest: Manifest = parse(MANIFEST, &read(MANIFEST)?)?;
        let mut files = BTreeMap::new();
        for e in &manifest.entries {
            for name in std::iter::once(&e.complex).chain(&e.monodromy) {
                files.insert(name.clone(), read(name)?);
            }
        }
        Ok(Corpus {
            entries: manifest.entries,
            files,
        })
    }

    fn file(&self, name: &str) -> Result<&str, LoadError> {
        self.files
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| LoadError::Io {
                file: name.to_owned(),
                message: "not in the corpus".into(),
            })
    }

    pub fn complex(&self, entry: &CorpusEntry) -> Result<ReducedCFK, LoadError> {
        parse(&entry.complex, self.file(&entry.complex)?)
    }

    pub fn monodromy(&self, entry: &CorpusEntry) -> Result<Option<StandardFormMap>, LoadError> {
        entry
            .monodromy
            .as_ref()
            .map(|name| parse(name, self.file(name)?))
            .transpose()
    }

    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Outcome of checking one entry.
#[derive(Clone, Debug, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryCheck>,
    pub passed: usize,
    pub failed: usize,
}

fn check_entry(corpus: &Corpus, e: &CorpusEntry, n: u32) -> EntryCheck {
    let mut mismatches = Vec::new();
    let mut agreement = None;
    let outcome = (|| -> Result<(), String> {
        let c = corpus.complex(e).map_err(|x| x.to_string())?;
        let got = serde_json::to_value(classify_fibered(&c).map_err(|x| x.to_string())?)
            .expect("classifications serialize");
        for (key, want) in &e.expected {
            match got.get(key) {
                Some(v) if v == want => {}
                other => mismatches.push(format!(
                    "{key}: expected {want}, got {}",
                    other.map_or("nothing".into(), Value::to_string)
                )),
            }
        }
        if let Some(h) = corpus.monodromy(e).map_err(|x| x.to_string())? {
            let audit = consistency_audit(&c, Some(&h), n).map_err(|x| x.to_string())?;
            agreement = Some(audit.agree);
            if audit.agree != e.expect_agreement {
                mismatches.push(format!(
                    "verdicts {} but the entry expects them to {}",
                    if audit.agree { "agree" } else { "disagree" },
                    if e.expect_agreement {
                        "agree"
                    } else {
                        "disagree"
                    }
                ));
            }
        }
        Ok(())
    })();
    if let Err(m) = outcome {
        mismatches.push(m);
    }
    EntryCheck {
        name: e.name.clone(),
        passed: mismatches.is_empty(),
        mismatches,
        agreement,
    }
}

/// Classifies every entry and audits every paired monodromy, gluing with
/// cable parameter `n`.
pub fn check(corpus: &Corpus, n: u32) -> CorpusReport {
    let entries: Vec<EntryCheck> = corpus
        .entries
        .par_iter()
        .map(|e| check_entry(corpus, e, n))
        .collect();
    let passed = entries.iter().filter(|e| e.passed).count();
    CorpusReport {
        failed: entries.len() - passed,
        passed,
        entries,
    }
}
