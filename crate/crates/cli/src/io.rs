use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use hm_core::walsh::{walsh_build, BipartiteMapSpec};
use hm_core::{hmf, Hypermap};
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Domain(hm_core::Error),
    Io { path: PathBuf, err: std::io::Error },
    Json(serde_json::Error),
}

impl From<hm_core::Error> for CliError {
    fn from(e: hm_core::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl CliError {
    pub fn to_json(&self) -> String {
        let v = match self {
            CliError::Domain(e) => json!({"error": e.code(), "message": e.to_string()}),
            CliError::Io { path, err } => json!({
                "error": "Io",
                "message": format!("{}: {err}", path.display()),
            }),
            CliError::Json(e) => json!({"error": "Json", "message": e.to_string()}),
        };
        v.to_string()
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

pub fn read_text(path: &Path) -> CliResult<String> {
    let io = |err| CliError::Io {
        path: path.to_path_buf(),
        err,
    };
    if is_stdio(path) {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

/// HMF, or BMF when the first directive is `bmf`.
pub fn parse_map(text: &str) -> hm_core::Result<Hypermap> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("bmf") {
        let spec = BipartiteMapSpec::parse(text)?;
        Ok(walsh_build(&spec)?.1)
    } else {
        hmf::parse(text)
    }
}

pub fn read_map(path: &Path) -> CliResult<Hypermap> {
    Ok(parse_map(&read_text(path)?)?)
}

pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path.filter(|p| !is_stdio(p)) {
        Some(p) => fs::write(p, text).map_err(|err| CliError::Io {
            path: p.to_path_buf(),
            err,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|err| CliError::Io {
                    path: PathBuf::from("-"),
                    err,
                })
        }
    }
}
