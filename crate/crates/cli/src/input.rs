use std::path::Path;

use monodec::graphs::{WeightedGraph, WeightedHypergraph};
use monodec::SetFunction;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFunction {
    Cut,
    Induced,
    Incident,
}

impl GraphFunction {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphFunction::Cut => "cut",
            GraphFunction::Induced => "induced",
            GraphFunction::Incident => "incident",
        }
    }
}

/// Raw bytes of an input file plus their SHA-256.
pub struct Source {
    pub text: String,
    pub sha256: String,
    csv: bool,
}

impl Source {
    pub fn read(path: &Path) -> CliResult<Self> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let sha256 = hex::encode(Sha256::digest(&bytes));
        let text = String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))?;
        if text.trim().is_empty() {
            return Err(CliError::Input(format!("{} is empty", path.display())));
        }
        let csv = !text.trim_start().starts_with('{');
        Ok(Source { text, sha256, csv })
    }
}

pub enum Instance {
    Function(SetFunction),
    Graph(WeightedGraph),
    Hypergraph(WeightedHypergraph),
}

pub fn parse_instance(src: &Source) -> CliResult<Instance> {
    if src.csv {
        return Ok(Instance::Graph(WeightedGraph::from_csv(&src.text, None)?));
    }
    let value: Value = serde_json::from_str(&src.text)?;
    let has = |key: &str| value.get(key).is_some();
    if has("values") {
        Ok(Instance::Function(serde_json::from_value(value)?))
    } else if has("edges") {
        Ok(Instance::Graph(serde_json::from_value(value)?))
    } else if has("hyperedges") {
        Ok(Instance::Hypergraph(serde_json::from_value(value)?))
    } else {
        Err(CliError::Input(
            "expected a set function (\"values\"), graph (\"edges\") or hypergraph (\"hyperedges\")".into(),
        ))
    }
}

pub fn parse_graph(src: &Source) -> CliResult<WeightedGraph> {
    match parse_instance(src)? {
        Instance::Graph(g) => Ok(g),
        _ => Err(CliError::Input("expected a graph".into())),
    }
}

/// The set function an input denotes, with a label for reports.
pub fn to_function(instance: Instance, which: GraphFunction) -> (SetFunction, String) {
    let hyper = match instance {
        Instance::Function(f) => return (f, "set-function".into()),
        Instance::Graph(g) => g.to_hypergraph(),
        Instance::Hypergraph(h) => h,
    };
    let f = match which {
        GraphFunction::Cut => hyper.cut_function(),
        GraphFunction::Induced => hyper.induced_function(),
        GraphFunction::Incident => hyper.incident_function(),
    };
    (f, format!("{}-function", which.as_str()))
}
