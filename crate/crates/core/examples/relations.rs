//! Relation algebra on a small ground set: composition, inverses, images
//! and the two symmetrizations.

use coarsemet::relset::{Relation, Subset};

fn main() -> coarsemet::Result<()> {
    let n = 4;
    let step = Relation::from_pairs(n, [(0, 1), (1, 2), (2, 3)])?;
    let two_steps = step.compose(&step)?;
    println!("step: {:?}", step.pairs().collect::<Vec<_>>());
    println!("step ∘ step: {:?}", two_steps.pairs().collect::<Vec<_>>());
    println!("inverse: {:?}", step.inverse().pairs().collect::<Vec<_>>());

    let start = Subset::from_elems(n, [0, 2])?;
    let image: Vec<usize> = two_steps.image(&start)?.iter().collect();
    println!("image of {{0, 2}} under two steps: {image:?}");

    let cap = step.symmetrize_cap();
    let cup = step.symmetrize_cup();
    println!("Δ ∪ (R ∩ R⁻¹) has {} pairs, Δ ∪ R ∪ R⁻¹ has {}", cap.len(), cup.len());
    Ok(())
}
