//! A metric built from a base of a coarse structure, valued in the
//! intersection closure of the base.

use coarsemet::coarse::{closure_bar, metric_from_base, structure_from_metric, CoarseStructure};
use coarsemet::relset::Relation;

fn main() -> coarsemet::Result<()> {
    let s = CoarseStructure::from_partition(&[0, 0, 1, 1])?;
    let left = Relation::symmetric_from_pairs(4, [(0, 1)])?;
    let right = Relation::symmetric_from_pairs(4, [(2, 3)])?;
    let base = vec![left, right, s.top().clone()];

    println!("closure of the base has {} members", closure_bar(&base)?.len());
    let bm = metric_from_base(&s, &base)?;
    for x in 0..4 {
        let row: Vec<String> = (0..4).map(|y| bm.metric.get(x, y).to_string()).collect();
        println!("  {}", row.join(" "));
    }
    println!("growth map: {:?}", bm.phi.table());
    println!("induces the structure: {}", structure_from_metric(&bm.cert()) == s);
    Ok(())
}
