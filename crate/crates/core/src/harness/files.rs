//! DIMACS edge lists with `.meta.json` sidecars, and run manifests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::gadgets::GadgetGraph;
use crate::graph::{dimacs, Graph, VertexTag};
use crate::reductions::ReductionOutput;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Metadata written next to a generated edge list.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terminals: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<VertexTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_colouring: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_properties: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_claims: Option<Value>,
}

impl Sidecar {
    pub fn for_gadget(family: &str, parameters: BTreeMap<String, Value>, gadget: &GadgetGraph) -> Self {
        Sidecar {
            n: gadget.graph.n(),
            m: gadget.graph.m(),
            family: Some(family.to_string()),
            parameters,
            terminals: gadget.terminals.clone(),
            tags: gadget.tags.clone(),
            canonical_colouring: gadget.canonical_colouring.as_ref().map(|f| f.colours().to_vec()),
            ..Sidecar::default()
        }
    }

    pub fn for_graph(family: &str, parameters: BTreeMap<String, Value>, g: &Graph) -> Self {
        Sidecar {
            n: g.n(),
            m: g.m(),
            family: Some(family.to_string()),
            parameters,
            ..Sidecar::default()
        }
    }

    pub fn for_reduction(parameters: BTreeMap<String, Value>, out: &ReductionOutput) -> Result<Self> {
        Ok(Sidecar {
            n: out.graph.n(),
            m: out.graph.m(),
            construction: Some(out.construction.to_string()),
            parameters,
            provenance: Some(serde_json::to_value(&out.provenance)?),
            claimed_properties: Some(serde_json::to_value(&out.claimed_properties)?),
            failed_claims: Some(serde_json::to_value(out.failed_claims())?),
            ..Sidecar::default()
        })
    }
}

/// Record of one command run. Timings are deliberately absent so that the
/// same command on the same inputs yields byte-identical manifests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    /// SHA-256 of every input file, keyed by the path as given.
    pub input_hashes: BTreeMap<String, String>,
    pub outcome: Value,
}

impl Manifest {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>) -> Self {
        Manifest {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            parameters,
            input_hashes: BTreeMap::new(),
            outcome: Value::Null,
        }
    }

    pub fn hash_input(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path)?;
        self.input_hashes.insert(path.display().to_string(), sha256_hex(&bytes));
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// `<base>.col`, `<base>.meta.json` and `<base>.manifest.json`.
pub fn output_paths(base: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let with = |suffix: &str| {
        let mut s = base.as_os_str().to_owned();
        s.push(suffix);
        PathBuf::from(s)
    };
    (with(".col"), with(".meta.json"), with(".manifest.json"))
}

/// The sidecar path for an edge list `x.col` is `x.meta.json`.
pub fn sidecar_path(col: &Path) -> PathBuf {
    col.with_extension("meta.json")
}

pub fn write_graph_files(
    base: &Path,
    g: &Graph,
    comments: &[&str],
    sidecar: &Sidecar,
    manifest: &Manifest,
) -> Result<Vec<PathBuf>> {
    let (col, meta, man) = output_paths(base);
    if let Some(dir) = col.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(&col, dimacs::write(g, comments))?;
    std::fs::write(&meta, serde_json::to_string_pretty(sidecar)? + "\n")?;
    std::fs::write(&man, manifest.to_json()?)?;
    Ok(vec![col, meta, man])
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    dimacs::parse(&std::fs::read_to_string(path)?)
}

pub fn read_sidecar(col: &Path) -> Result<Option<Sidecar>> {
    let meta = sidecar_path(col);
    if !meta.exists() {
        return Ok(None);
    }
    Ok(Some(serde_json::from_str(&std::fs::read_to_string(meta)?)?))
}
