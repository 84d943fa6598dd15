//! Reading inputs and writing outputs atomically (temp file, then rename).

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::InputError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::Format(format!("{}: {e}", path.display())))
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), InputError> {
    let err = |e: std::io::Error| InputError::Io(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(err)?;
    let name = path.file_name().ok_or_else(|| InputError::Io(format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(err)?;
    f.write_all(contents.as_bytes()).map_err(err)?;
    f.sync_all().map_err(err)?;
    fs::rename(&tmp, path).map_err(err)
}

pub fn write_json(path: &Path, v: &Value) -> Result<(), InputError> {
    let mut text = serde_json::to_string_pretty(v).expect("values serialize");
    text.push('\n');
    write_atomic(path, &text)
}
