use crate::dataset::{AttributeKind, InformationSystem, Value};
use crate::error::{Error, Result};
use crate::rules::{Bound, Condition, Provenance, Rule};
use crate::scalar::Scalar;

use super::partition::Partition;

fn cut<F: Scalar>(c: f64) -> F {
    F::from_f64_exact(c).or_else(|| F::from_f64(c)).expect("cut point representable")
}

/// One rule per block: the block's shared values imply its majority class.
///
/// Binned attributes become `(lo, hi]` intervals, categorical ones equality
/// tests. Ties between classes go to the globally more frequent one, then the
/// lower code.
pub fn rules_from_partition<F: Scalar>(is: &InformationSystem, partition: &Partition) -> Result<Vec<Rule<F>>> {
    let attrs: Vec<usize> = partition.attributes().iter().collect();
    for &a in &attrs {
        let desc = is.attribute(a);
        if desc.kind == AttributeKind::Continuous {
            return Err(Error::ContinuousAttribute(desc.name.clone()));
        }
    }
    let mut rules = Vec::with_capacity(partition.len());
    for block in partition.blocks() {
        let row = block[0];
        let conditions = attrs
            .iter()
            .map(|&a| {
                let desc = is.attribute(a);
                let v = is.value(a, row);
                match &desc.cut_points {
                    Some(cuts) => {
                        let k = v as usize;
                        let lower = (k > 0).then(|| Bound::exclusive(cut(cuts[k - 1])));
                        let upper = cuts.get(k).map(|&c| Bound::inclusive(cut(c)));
                        Condition::interval(desc.name.clone(), lower, upper)
                    }
                    None if desc.kind.is_coded() => Ok(Condition::equals(desc.name.clone(), desc.dictionary[v as usize].clone())),
                    None => Ok(Condition::equals(desc.name.clone(), Value::Int(v))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut counts = vec![0u64; is.class_count()];
        for &r in block {
            counts[is.decision_of(r) as usize] += 1;
        }
        let class = is.majority_class(&counts);
        rules.push(Rule::new(conditions, is.decision_label(class), Provenance::Roughset)?);
    }
    Ok(rules)
}
