//! Output sink: the primary artifact goes to `--out` or stdout.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

pub struct Sink {
    target: Option<PathBuf>,
}

impl Sink {
    pub fn new(target: Option<PathBuf>) -> Self {
        Self { target }
    }

    pub fn write(&self, content: &str) -> Result<(), CliError> {
        match &self.target {
            Some(path) => std::fs::write(path, content)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(content.as_bytes())?;
            }
        }
        Ok(())
    }
}

pub fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)?;
    Ok(())
}
