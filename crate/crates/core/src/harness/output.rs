//! Artifact writers. Rows are flushed as soon as they are produced so an
//! interrupted sweep leaves every completed point on disk.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::HarnessError;

pub const RESULTS_FILE: &str = "results.csv";
pub const TRAJECTORIES_FILE: &str = "trajectories.jsonl";
pub const META_FILE: &str = "meta.json";

pub struct OutputDir {
    dir: PathBuf,
    results: csv::Writer<File>,
    trajectories: Option<BufWriter<File>>,
}

impl OutputDir {
    pub fn create(dir: &Path, with_trajectories: bool) -> Result<Self, HarnessError> {
        fs::create_dir_all(dir)?;
        let results = csv::Writer::from_path(dir.join(RESULTS_FILE))?;
        let trajectories = if with_trajectories {
            Some(BufWriter::new(File::create(dir.join(TRAJECTORIES_FILE))?))
        } else {
            // a stale file from an earlier run would no longer match results.csv
            let _ = fs::remove_file(dir.join(TRAJECTORIES_FILE));
            None
        };
        Ok(OutputDir {
            dir: dir.to_path_buf(),
            results,
            trajectories,
        })
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    pub fn row<T: Serialize>(&mut self, row: &T) -> Result<(), HarnessError> {
        self.results.serialize(row)?;
        self.results.flush()?;
        Ok(())
    }

    pub fn wants_trajectories(&self) -> bool {
        self.trajectories.is_some()
    }

    pub fn trajectory<T: Serialize>(&mut self, rec: &T) -> Result<(), HarnessError> {
        if let Some(w) = &mut self.trajectories {
            serde_json::to_writer(&mut *w, rec)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Extra CSV next to `results.csv` (used by `tables`).
    pub fn side_table<T: Serialize>(&self, name: &str, rows: &[T]) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_path(self.dir.join(name))?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn finish<T: Serialize>(mut self, meta: &T) -> Result<(), HarnessError> {
        self.results.flush()?;
        if let Some(w) = &mut self.trajectories {
            w.flush()?;
        }
        let mut text = serde_json::to_string_pretty(meta)?;
        text.push('\n');
        fs::write(self.dir.join(META_FILE), text)?;
        Ok(())
    }
}
