use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const TOOL: &str = "jackht";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA_VERSION: u32 = 1;

/// The resolved configuration and its hash, attached to every artifact.
pub struct Provenance {
    pub config: serde_json::Value,
    pub hash: String,
}

impl Provenance {
    pub fn new(config: serde_json::Value) -> Self {
        // serde_json maps are sorted, so the compact form is canonical
        let canonical = serde_json::to_string(&config).expect("config serializes");
        let hash = Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        Provenance { config, hash }
    }

    pub fn csv_banner(&self) -> String {
        format!("# {TOOL} {VERSION} schema={SCHEMA_VERSION} config_hash={}\n", self.hash)
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    schema_version: u32,
    config_hash: &'a str,
    config: &'a serde_json::Value,
    result: &'a T,
}

pub fn json_document<T: Serialize>(prov: &Provenance, result: &T) -> Result<String, CliError> {
    let env = Envelope {
        tool: TOOL,
        version: VERSION,
        schema_version: SCHEMA_VERSION,
        config_hash: &prov.hash,
        config: &prov.config,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env)?;
    s.push('\n');
    Ok(s)
}

/// CSV with the provenance banner as a leading comment line.
pub fn csv_document(prov: &Provenance, header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?).expect("csv is utf-8");
    Ok(prov.csv_banner() + &body)
}

pub fn write_to(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => File::create(p)?.write_all(text.as_bytes())?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
