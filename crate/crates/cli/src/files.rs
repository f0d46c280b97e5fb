use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;
use unires::{load_dataset, load_graph, Graph, Hierarchy};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: unires::Error },

    #[error("refusing to overwrite input file {}", .0.display())]
    WouldOverwrite(PathBuf),

    #[error(transparent)]
    Run(#[from] unires::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { source, .. } | CliError::Run(source) if source.is_numerical() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Contents of an input file plus its SHA-256 for the manifest.
pub struct InputFile {
    pub path: PathBuf,
    pub text: String,
    pub sha256: String,
}

pub fn read_input(path: &Path) -> CliResult<InputFile> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| CliError::Read {
        path: path.to_owned(),
        source: io::Error::new(io::ErrorKind::InvalidData, e),
    })?;
    Ok(InputFile {
        path: path.to_owned(),
        text,
        sha256,
    })
}

pub fn parse_graph(file: &InputFile) -> CliResult<Graph> {
    load_graph(&file.text).map_err(|source| CliError::Input {
        path: file.path.clone(),
        source,
    })
}

/// Graph and hierarchy over one vertex table. Parse errors name the file
/// they come from.
pub fn parse_dataset(graph: &InputFile, hierarchy: &InputFile) -> CliResult<(Graph, Hierarchy)> {
    parse_graph(graph)?;
    load_dataset(&graph.text, &hierarchy.text).map_err(|source| CliError::Input {
        path: hierarchy.path.clone(),
        source,
    })
}

/// Loads a graph, optionally widening its vertex set with the hierarchy's.
pub fn load_with_optional_hierarchy(graph: &InputFile, hierarchy: Option<&InputFile>) -> CliResult<Graph> {
    match hierarchy {
        Some(h) => Ok(parse_dataset(graph, h)?.0),
        None => parse_graph(graph),
    }
}

/// Output directory that refuses to clobber any of the run's inputs.
pub struct OutputDir {
    root: PathBuf,
    inputs: Vec<PathBuf>,
    written: Vec<String>,
}

impl OutputDir {
    pub fn create(root: &Path, inputs: &[&InputFile]) -> CliResult<Self> {
        fs::create_dir_all(root).map_err(|source| CliError::Write {
            path: root.to_owned(),
            source,
        })?;
        Ok(OutputDir {
            root: root.to_owned(),
            inputs: inputs
                .iter()
                .filter_map(|f| fs::canonicalize(&f.path).ok())
                .collect(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &[u8]) -> CliResult<()> {
        let path = self.root.join(name);
        if let Ok(canonical) = fs::canonicalize(&path) {
            if self.inputs.contains(&canonical) {
                return Err(CliError::WouldOverwrite(path));
            }
        }
        fs::write(&path, contents).map_err(|source| CliError::Write { path, source })?;
        self.written.push(name.to_owned());
        Ok(())
    }

    pub fn written(&self) -> &[String] {
        &self.written
    }
}
