//! The saturated metric of a coarse structure and the round trip back to
//! the structure.

use coarsemet::coarse::{is_saturated, saturated_metric, structure_from_metric, CoarseStructure};
use coarsemet::relset::Relation;

fn main() -> coarsemet::Result<()> {
    let near = Relation::symmetric_from_pairs(4, [(0, 1), (2, 3)])?;
    let s = CoarseStructure::generate(4, &[near])?;
    println!("classes: {:?}", s.classes().iter().map(|c| c.iter().collect::<Vec<_>>()).collect::<Vec<_>>());

    let sat = saturated_metric(&s)?;
    println!("index size |I^E| = {}", sat.lattice.len());
    for x in 0..4 {
        let row: Vec<String> = (0..4).map(|y| sat.metric.get(x, y).to_string()).collect();
        println!("  {}", row.join(" "));
    }
    println!("saturated: {}", is_saturated(&sat.metric)?);
    println!("recovers the structure: {}", structure_from_metric(&sat.cert()) == s);
    Ok(())
}
