use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::record::{normalize_label, CurveRecord, SCHEMA_VERSION};
use super::IngestError;

/// One normalized JSON file per label under `<root>/v<schema>/`.
#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn dir(&self) -> PathBuf {
        self.root.join(format!("v{SCHEMA_VERSION}"))
    }

    pub fn path_for(&self, label: &str) -> PathBuf {
        self.dir().join(format!("{}.json", normalize_label(label)))
    }

    /// None on a miss; a present but invalid file is an error.
    pub fn load(&self, label: &str) -> Result<Option<CurveRecord>, IngestError> {
        let path = self.path_for(label);
        match fs::read_to_string(&path) {
            Ok(s) => CurveRecord::from_json_str(&s).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(IngestError::Io(format!("{}: {e}", path.display()))),
        }
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// partial record.
    pub fn store(&self, record: &CurveRecord) -> Result<PathBuf, IngestError> {
        let dir = self.dir();
        fs::create_dir_all(&dir).map_err(|e| IngestError::Io(format!("{}: {e}", dir.display())))?;
        let path = self.path_for(&record.label);
        let tmp = dir.join(format!(".{}.{}.tmp", record.key(), std::process::id()));
        let io = |e: std::io::Error| IngestError::Io(format!("{}: {e}", tmp.display()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(record.to_json_string().as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(|e| IngestError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }

    /// Every readable record in the cache, in label order.
    pub fn records(&self) -> Vec<CurveRecord> {
        let Ok(entries) = fs::read_dir(self.dir()) else { return Vec::new() };
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        paths
            .into_iter()
            .filter_map(|p| fs::read_to_string(p).ok())
            .filter_map(|s| CurveRecord::from_json_str(&s).ok())
            .collect()
    }
}
