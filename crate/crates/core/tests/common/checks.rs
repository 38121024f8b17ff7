//! Randomised checks shared by the property tests and the acceptance run.
//! Each returns the first violation found.

use rand::Rng;
use reductminer::dtree::{conditional_entropy, entropy, gain_ratio_table, split_info};
use reductminer::roughset::{approximate, discernibility_scan, greedy_reduct, is_reduct, partition_by, ReductVerdict};
use reductminer::{AttributeSet, ReductMode};

use super::brute::Table;
use super::precise::{oracle_conditional, oracle_entropy};

/// Greedy output is a brute-force reduct and the scan core is the
/// intersection of all brute-force reducts, on `tables` random systems.
pub fn reduct_oracle(seed: u64, tables: usize) -> Result<(), String> {
    let mut rng = super::rng(seed);
    for t in 0..tables {
        let attrs = rng.gen_range(1..=8);
        let rows = rng.gen_range(2..=40);
        let arity = rng.gen_range(2..=4);
        let is = super::random_table(&mut rng, attrs, rows, arity, 2);
        let table = Table::of(&is);
        let all = is.all_attributes();

        let greedy = greedy_reduct(&is, ReductMode::Absolute).map_err(|e| e.to_string())?;
        let mask = greedy.bits() as u32;
        if !table.is_reduct(mask, ReductMode::Absolute) {
            return Err(format!("table {t}: greedy {greedy:?} is not a reduct"));
        }
        let scan = discernibility_scan(&is, all, ReductMode::Absolute).map_err(|e| e.to_string())?;
        let core = table.core(ReductMode::Absolute);
        if scan.core.bits() as u32 != core {
            return Err(format!("table {t}: scan core {:?} vs brute-force {core:#b}", scan.core));
        }
        if !greedy.is_empty() {
            let verdict = is_reduct(&is, greedy, all).map_err(|e| e.to_string())?;
            if verdict != ReductVerdict::Reduct {
                return Err(format!("table {t}: is_reduct says {verdict:?} for the greedy reduct"));
            }
        }
    }
    Ok(())
}

/// `lower ⊆ X ⊆ upper` and `IND(R ∪ {a})` refines `IND(R)`.
pub fn sandwich_and_refinement(seed: u64, triples: usize) -> Result<(), String> {
    let mut rng = super::rng(seed);
    for t in 0..triples {
        let attrs = rng.gen_range(1..=6);
        let rows = rng.gen_range(1..=50);
        let arity = rng.gen_range(2..=5);
        let is = super::random_table(&mut rng, attrs, rows, arity, 2);
        let mut r = AttributeSet::from_indices((0..attrs).filter(|_| rng.gen_bool(0.5)));
        if r.is_empty() {
            r.insert(rng.gen_range(0..attrs));
        }
        let target: Vec<usize> = (0..rows).filter(|_| rng.gen_bool(0.4)).collect();
        let approx = approximate(&is, r, &target).map_err(|e| e.to_string())?;
        let inside = |v: &[usize], w: &[usize]| v.iter().all(|x| w.contains(x));
        if !inside(&approx.lower, &target) || !inside(&target, &approx.upper) {
            return Err(format!("triple {t}: sandwich broken for {r:?}"));
        }
        let a = rng.gen_range(0..attrs);
        let coarse = partition_by(&is, r).map_err(|e| e.to_string())?;
        let fine = partition_by(&is, r.with(a)).map_err(|e| e.to_string())?;
        let nested = fine.blocks().iter().all(|f| coarse.blocks().iter().any(|c| inside(f, c)));
        if !nested || !fine.refines(&coarse) {
            return Err(format!("triple {t}: IND({:?}) does not refine IND({r:?})", r.with(a)));
        }
    }
    Ok(())
}

/// Entropy measures within 1e-9 of the big-integer evaluation and every
/// root split with gain at least -1e-12.
pub fn entropy_numerics(seed: u64, vectors: usize) -> Result<(), String> {
    let mut rng = super::rng(seed);
    for _ in 0..vectors {
        let k = rng.gen_range(1..=6);
        let mut counts: Vec<u64> = (0..k).map(|_| rng.gen_range(0..5000)).collect();
        counts[0] += 1;
        let want = oracle_entropy(&counts);
        let got = entropy::<f64>(&counts).map_err(|e| e.to_string())?;
        let total = counts.iter().sum();
        let info = split_info::<f64>(&counts, total).map_err(|e| e.to_string())?;
        if (got - want).abs() > 1e-9 || (info - want).abs() > 1e-9 {
            return Err(format!("{counts:?}: entropy {got}, split info {info}, oracle {want}"));
        }
        let blocks: Vec<Vec<u64>> = counts.chunks(2).map(<[u64]>::to_vec).collect();
        let got = conditional_entropy::<f64>(&blocks).map_err(|e| e.to_string())?;
        let want = oracle_conditional(&blocks);
        if (got - want).abs() > 1e-9 {
            return Err(format!("{blocks:?}: conditional entropy {got}, oracle {want}"));
        }

        let is = super::random_table(&mut rng, 4, 60, 6, 3);
        if let Some(bad) = gain_ratio_table::<f64>(&is).into_iter().find(|e| e.gain < -1e-12) {
            return Err(format!("negative gain {bad:?}"));
        }
    }
    Ok(())
}
