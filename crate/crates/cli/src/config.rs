//! Effective run configuration: built-in defaults, then `--config`, then flags.

use std::io::Read;
use std::path::{Path, PathBuf};

use reductminer::{RankKey, ReductMode, TreeParams};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cli::{Common, FilterArgs, Format, Generate, TreeParamsArgs};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub test: Option<PathBuf>,
    pub delimiter: char,
    pub schema: Option<PathBuf>,
    pub bins: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    pub generate: Option<String>,
    pub mode: ReductMode,
    pub check: Vec<Vec<String>>,
    pub tree: TreeParams,
    pub min_confidence: Option<f64>,
    pub min_support: Option<u64>,
    pub rank: Option<RankKey>,
    pub compare: bool,
    pub tolerance: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            test: None,
            delimiter: ';',
            schema: None,
            bins: None,
            rules: None,
            generate: None,
            mode: ReductMode::Absolute,
            check: Vec::new(),
            tree: TreeParams::default(),
            min_confidence: None,
            min_support: None,
            rank: None,
            compare: false,
            tolerance: 0.5,
            out: None,
            format: Format::Json,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn load(common: &Common) -> Result<Self, CliError> {
        let mut config = match &common.config {
            Some(path) => {
                let text = read_text(path)?;
                serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        set(&mut config.input, &common.input);
        set(&mut config.schema, &common.schema);
        set(&mut config.bins, &common.bins);
        set(&mut config.out, &common.out);
        if let Some(d) = common.delimiter {
            config.delimiter = d;
        }
        if let Some(f) = common.format {
            config.format = f;
        }
        config.timings |= common.timings;
        Ok(config)
    }

    pub fn apply_tree(&mut self, args: &TreeParamsArgs) {
        if let Some(v) = args.min_leaf {
            self.tree.min_leaf = v;
        }
        if let Some(v) = args.min_gain {
            self.tree.min_gain = v;
        }
        if let Some(v) = args.max_depth {
            self.tree.max_depth = v;
        }
    }

    pub fn apply_filter(&mut self, args: &FilterArgs) {
        if args.min_confidence.is_some() {
            self.min_confidence = args.min_confidence;
        }
        if args.min_support.is_some() {
            self.min_support = args.min_support;
        }
        if let Some(r) = args.rank {
            self.rank = Some(r.into());
        }
    }

    pub fn apply_generate(&mut self, g: Option<Generate>) {
        if let Some(g) = g {
            self.generate = Some(match g {
                Generate::Tree => "tree".into(),
                Generate::Reduct => "reduct".into(),
            });
        }
    }

    /// Checks that referenced files exist, the output directory is usable and
    /// numeric parameters are in range.
    pub fn validate(&self) -> Result<(), CliError> {
        let input = self.input.as_ref().ok_or_else(|| CliError::usage("--input is required"))?;
        for path in [Some(input), self.test.as_ref(), self.schema.as_ref(), self.bins.as_ref(), self.rules.as_ref()]
            .into_iter()
            .flatten()
        {
            if !path.is_file() {
                return Err(CliError::usage(format!("{}: no such file", path.display())));
            }
        }
        if !self.delimiter.is_ascii() {
            return Err(CliError::usage("--delimiter must be a single ASCII character"));
        }
        if let Some(c) = self.min_confidence {
            if !(0.0..=1.0).contains(&c) {
                return Err(CliError::usage("--min-confidence must lie in [0, 1]"));
            }
        }
        if !self.tree.min_gain.is_finite() || !(self.tolerance >= 0.0) {
            return Err(CliError::usage("--min-gain and --tolerance must be finite, tolerance non-negative"));
        }
        if let Some(dir) = &self.out {
            std::fs::create_dir_all(dir).map_err(|e| CliError::usage(format!("{}: {e}", dir.display())))?;
            let probe = dir.join(".reductminer-write-test");
            std::fs::write(&probe, b"").map_err(|e| CliError::usage(format!("{} is not writable: {e}", dir.display())))?;
            let _ = std::fs::remove_file(probe);
        }
        Ok(())
    }

    pub fn delimiter_byte(&self) -> u8 {
        self.delimiter as u8
    }

    /// SHA-256 over the computation parameters and the bytes of every
    /// referenced file. Output routing (`out`, `format`, `timings`) and path
    /// spellings do not contribute.
    pub fn digest(&self) -> Result<String, CliError> {
        let mut params = self.clone();
        params.out = None;
        params.format = Format::Json;
        params.timings = false;
        let mut hasher = Sha256::new();
        for (tag, path) in [
            ("input", &mut params.input),
            ("test", &mut params.test),
            ("schema", &mut params.schema),
            ("bins", &mut params.bins),
            ("rules", &mut params.rules),
        ] {
            if let Some(p) = path.take() {
                hasher.update(tag.as_bytes());
                hasher.update(file_sha256(&p)?.as_bytes());
            }
        }
        hasher.update(serde_json::to_vec(&params).expect("config serialises"));
        Ok(hex(&hasher.finalize()))
    }
}

fn set<T: Clone>(slot: &mut Option<T>, flag: &Option<T>) {
    if flag.is_some() {
        slot.clone_from(flag);
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn file_sha256(path: &Path) -> Result<String, CliError> {
    let mut file = std::fs::File::open(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = file.read(&mut buf).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex(&hasher.finalize()))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
