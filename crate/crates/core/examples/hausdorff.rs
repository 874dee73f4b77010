//! The Hausdorff metric on nonempty subsets and the structure it induces.

use std::sync::Arc;

use coarsemet::hyperspace::{check_induced_hausdorff_structure, hausdorff_metric};
use coarsemet::metric::GenMetric;
use coarsemet::poset::{Ext, Poset};

fn main() -> coarsemet::Result<()> {
    let d = GenMetric::from_fn(3, Arc::new(Poset::chain(3)), |x, y| Ext::Fin(x.abs_diff(y)))?;
    let hm = hausdorff_metric(&d)?;
    let labels = hm.hyperspace.labels();
    for r in 0..hm.hyperspace.len() {
        for s in r + 1..hm.hyperspace.len() {
            println!("ď({}, {}) = {}", labels[r], labels[s], hm.metric.get(r, s));
        }
    }
    let cmp = check_induced_hausdorff_structure(&d)?;
    println!("induced structure equals the Hausdorff structure: {}", cmp.equal);
    Ok(())
}
