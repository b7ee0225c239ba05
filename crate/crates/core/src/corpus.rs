//! Bundled polygons, dimer models and reference data; a directory with the same layout
//! can replace the embedded copy.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::dimer::DimerModel;
use crate::error::{Error, Result};
use crate::io::parse_dimer;

const EMBEDDED_DIMERS: &[(&str, &str)] = &[
    ("3a-1.json", include_str!("../data/corpus/3a-1.json")),
    ("4a-1.json", include_str!("../data/corpus/4a-1.json")),
    ("4a-2.json", include_str!("../data/corpus/4a-2.json")),
    ("4b-1.json", include_str!("../data/corpus/4b-1.json")),
    ("5a-1.json", include_str!("../data/corpus/5a-1.json")),
    ("5a-2.json", include_str!("../data/corpus/5a-2.json")),
    ("5b-1.json", include_str!("../data/corpus/5b-1.json")),
    ("6a-1.json", include_str!("../data/corpus/6a-1.json")),
    ("6a-2.json", include_str!("../data/corpus/6a-2.json")),
    ("6a-2p.json", include_str!("../data/corpus/6a-2p.json")),
    ("6a-2pp.json", include_str!("../data/corpus/6a-2pp.json")),
    ("6a-3.json", include_str!("../data/corpus/6a-3.json")),
    ("6a-3p.json", include_str!("../data/corpus/6a-3p.json")),
    ("6a-4.json", include_str!("../data/corpus/6a-4.json")),
    ("6a-5.json", include_str!("../data/corpus/6a-5.json")),
    ("6b-1.json", include_str!("../data/corpus/6b-1.json")),
    ("6b-2.json", include_str!("../data/corpus/6b-2.json")),
    ("6b-3.json", include_str!("../data/corpus/6b-3.json")),
    ("6c-1.json", include_str!("../data/corpus/6c-1.json")),
    ("6c-2.json", include_str!("../data/corpus/6c-2.json")),
    ("7a-1.json", include_str!("../data/corpus/7a-1.json")),
    ("7a-2.json", include_str!("../data/corpus/7a-2.json")),
    ("7a-2p.json", include_str!("../data/corpus/7a-2p.json")),
    ("7a-3.json", include_str!("../data/corpus/7a-3.json")),
    ("7b-1.json", include_str!("../data/corpus/7b-1.json")),
    ("8a-1.json", include_str!("../data/corpus/8a-1.json")),
    ("8a-2.json", include_str!("../data/corpus/8a-2.json")),
    ("8a-3.json", include_str!("../data/corpus/8a-3.json")),
    ("8a-4.json", include_str!("../data/corpus/8a-4.json")),
    ("8a-4p.json", include_str!("../data/corpus/8a-4p.json")),
    ("8b-1.json", include_str!("../data/corpus/8b-1.json")),
    ("8b-2.json", include_str!("../data/corpus/8b-2.json")),
    ("conifold.json", include_str!("../data/corpus/conifold.json")),
];
const EMBEDDED_TYPES: &str = include_str!("../data/types.json");
const EMBEDDED_TABLES: &str = include_str!("../data/expected/tables.json");
const EMBEDDED_EXCHANGE: &str = include_str!("../data/expected/exchange.json");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimerEntry {
    pub name: String,
    pub file: String,
    pub letter: String,
    /// Number of primes on the letter; variants are basis changes of the unprimed dimer.
    pub variant: usize,
    /// Edge ids of the base matching ("0") and the extremal matchings ("1".."n"), when drawn.
    #[serde(default)]
    pub extremal: BTreeMap<String, Vec<String>>,
    /// Transcription whose orientation disagrees with its reference table; excluded from mandatory checks.
    #[serde(default)]
    pub unverified: bool,
}

impl DimerEntry {
    /// Letter as drawn, primes included.
    pub fn tag(&self) -> String {
        self.letter.clone()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeEntry {
    /// Polygon vertices in the pinned cyclic order.
    pub cone: Vec<[i64; 2]>,
    /// Coordinates used for displayed representatives.
    pub support: Vec<usize>,
    pub dimers: Vec<DimerEntry>,
    /// Group as stated for the type, in `ClassGroup::describe` form.
    #[serde(default)]
    pub class_group: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTable {
    #[serde(rename = "type")]
    pub kind: String,
    pub letter: String,
    /// Row i lists T_ij as vectors for j in vertex order.
    pub rows: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub points: BTreeMap<String, Vec<[i64; 2]>>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub types: BTreeMap<String, TypeEntry>,
    pub tables: BTreeMap<String, ExpectedTable>,
    pub exchange: BTreeMap<String, ExpectedGraph>,
    files: BTreeMap<String, String>,
}

impl Corpus {
    pub fn embedded() -> Corpus {
        Corpus {
            types: serde_json::from_str(EMBEDDED_TYPES).expect("embedded types.json parses"),
            tables: serde_json::from_str(EMBEDDED_TABLES).expect("embedded tables.json parses"),
            exchange: serde_json::from_str(EMBEDDED_EXCHANGE).expect("embedded exchange.json parses"),
            files: EMBEDDED_DIMERS.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect(),
        }
    }

    /// Reads `types.json`, `corpus/*.json` and the optional `expected/` files.
    pub fn from_dir(dir: &Path) -> Result<Corpus> {
        let types = serde_json::from_str(&std::fs::read_to_string(dir.join("types.json"))?)?;
        let optional = |name: &str| -> Result<Option<String>> {
            let p = dir.join("expected").join(name);
            if p.exists() {
                Ok(Some(std::fs::read_to_string(p)?))
            } else {
                Ok(None)
            }
        };
        let tables = match optional("tables.json")? {
            Some(t) => serde_json::from_str(&t)?,
            None => BTreeMap::new(),
        };
        let exchange = match optional("exchange.json")? {
            Some(t) => serde_json::from_str(&t)?,
            None => BTreeMap::new(),
        };
        let mut files = BTreeMap::new();
        for entry in std::fs::read_dir(dir.join("corpus"))? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let name = path.file_name().unwrap().to_string_lossy().to_string();
                files.insert(name, std::fs::read_to_string(&path)?);
            }
        }
        Ok(Corpus { types, tables, exchange, files })
    }

    pub fn file_names(&self) -> impl Iterator<Item = &String> {
        self.files.keys()
    }

    /// Looks a dimer up by its name (`6a-2'`) or file stem (`6a-2p`).
    pub fn dimer(&self, name: &str) -> Result<DimerModel> {
        let file = self.entry(name).map(|(_, e)| e.file.clone()).unwrap_or_else(|| format!("{name}.json"));
        let text = self.files.get(&file).ok_or_else(|| Error::Corpus(format!("no dimer named `{name}`")))?;
        parse_dimer(text).map_err(|e| Error::Corpus(format!("{file}: {e}")))
    }

    pub fn raw_file(&self, file: &str) -> Option<&str> {
        self.files.get(file).map(|s| s.as_str())
    }

    /// (type name, entry) for a named corpus dimer.
    pub fn entry(&self, name: &str) -> Option<(&String, &DimerEntry)> {
        self.types.iter().find_map(|(t, te)| {
            te.dimers.iter().find(|d| d.name == name || d.file.strip_suffix(".json") == Some(name)).map(|d| (t, d))
        })
    }

    pub fn polygon(&self, kind: &str) -> Result<&TypeEntry> {
        self.types.get(kind).ok_or_else(|| Error::Corpus(format!("no polygon type `{kind}`")))
    }
}
