//! Index posets: meets, joins, completeness and inclusion orders.

use coarsemet::poset::{inclusion_poset, Poset};
use coarsemet::relset::Relation;

fn main() -> coarsemet::Result<()> {
    // 0 < a, b < 1
    let diamond = Poset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])?;
    println!("meet of a and b: {:?}", diamond.meet(&[1, 2])?);
    println!("join of a and b: {:?}", diamond.join(&[1, 2])?);
    println!("meet complete: {}", diamond.is_meet_complete());
    println!("totally ordered: {}", diamond.is_totally_ordered());

    // two incomparable elements with nothing below them
    let vee = Poset::from_pairs(3, &[(0, 2), (1, 2)])?;
    println!("vee is meet complete: {}", vee.is_meet_complete());

    let family = vec![
        Relation::diagonal(3),
        Relation::symmetric_from_pairs(3, [(0, 1)])?,
        Relation::full(3),
    ];
    let ip = inclusion_poset(&family)?;
    println!("inclusion order covers: {:?}", ip.poset().covers());
    Ok(())
}
