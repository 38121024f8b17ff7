#![allow(dead_code)]

pub mod brute;
pub mod checks;
pub mod precise;

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reductminer::{InformationSystem, Schema};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random all-discrete table; `arity` bounds the values per attribute.
pub fn random_table(rng: &mut ChaCha8Rng, attrs: usize, rows: usize, arity: i64, classes: usize) -> InformationSystem {
    let names: Vec<String> = (0..attrs).map(|a| format!("a{a}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..attrs).map(|_| rng.gen_range(0..arity)).collect()).collect();
    let labels = ["c0", "c1", "c2", "c3"];
    let decisions: Vec<&str> = (0..rows).map(|_| labels[rng.gen_range(0..classes)]).collect();
    InformationSystem::from_rows(&names, &data, &decisions).unwrap()
}

/// Same shape as the bank tables: 16 attributes, two skewed classes.
pub fn synthetic_bank(rows: usize, seed: u64) -> InformationSystem {
    let mut rng = rng(seed);
    let arities = [77, 12, 3, 4, 2, 7000, 2, 2, 3, 31, 12, 1500, 40, 500, 30, 4];
    let names: Vec<String> = (0..16).map(|a| format!("x{a}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let data: Vec<Vec<i64>> = (0..rows).map(|_| arities.iter().map(|&k| rng.gen_range(0..k)).collect()).collect();
    let decisions: Vec<&str> = (0..rows).map(|_| if rng.gen_bool(0.117) { "yes" } else { "no" }).collect();
    InformationSystem::from_rows(&names, &data, &decisions).unwrap()
}

/// Directory holding `bank.csv` and `bank-full.csv`: `$REDUCTMINER_DATA_DIR`,
/// else `data/` at the workspace root.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("REDUCTMINER_DATA_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).ancestors().nth(2).expect("workspace root").join("data"),
    }
}

pub fn load_bank(file: &str) -> Result<InformationSystem, String> {
    let path = data_dir().join(file);
    if !path.exists() {
        return Err(format!("dataset missing: {} (run scripts/fetch_bank.sh)", path.display()));
    }
    let schema = Schema { decision: Some("y".into()), ..Schema::default() };
    reductminer::dataset::load_csv(&path, Some(&schema), b';').map_err(|e| e.to_string())
}

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
