//! Output sink (file or stdout) with round-trip float formatting.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::{usage_err, Failure};

/// Shortest decimal representation that round-trips the f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub enum OutputTarget {
    File(BufWriter<File>),
    Stdout(std::io::Stdout),
}

impl OutputTarget {
    pub fn create(path: Option<&Path>) -> Result<Self, Failure> {
        match path {
            Some(p) => {
                let file = File::create(p)
                    .map_err(|e| usage_err(format!("cannot create output {p:?}: {e}")))?;
                Ok(Self::File(BufWriter::new(file)))
            }
            None => Ok(Self::Stdout(std::io::stdout())),
        }
    }

    fn writer(&mut self) -> &mut dyn Write {
        match self {
            Self::File(w) => w,
            Self::Stdout(w) => w,
        }
    }

    pub fn line(&mut self, text: &str) -> Result<(), Failure> {
        writeln!(self.writer(), "{text}").map_err(|e| {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                // downstream pipe closed (e.g. | head); not an error
                std::process::exit(0);
            }
            usage_err(format!("write failed: {e}"))
        })
    }

    pub fn json<T: serde::Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| usage_err(format!("serialization failed: {e}")))?;
        self.line(&text)
    }

    pub fn done(&mut self) -> Result<(), Failure> {
        self.writer()
            .flush()
            .map_err(|e| usage_err(format!("flush failed: {e}")))
    }
}
