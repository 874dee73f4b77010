//! Connectedness, boundedness and properties of maps, decided from a
//! metric and cross-checked against the structures.

use coarsemet::coarse::{induced_structure, saturated_metric, CoarseStructure};
use coarsemet::props::{self, structural, SpaceMap};
use coarsemet::relset::Subset;

fn main() -> coarsemet::Result<()> {
    let sx = CoarseStructure::from_partition(&[0, 0, 1, 1])?;
    let sy = CoarseStructure::maximal(2);
    let dx = saturated_metric(&sx)?.metric;
    let dy = saturated_metric(&sy)?.metric;
    assert_eq!(induced_structure(&dx)?, sx);

    println!("X connected: {}", props::is_coarsely_connected(&sx, &dx)?);
    let b = Subset::from_elems(4, [0, 1])?;
    println!("ball around {{0, 1}}: {:?}", props::is_bounded(&sx, &dx, &b)?);

    let squash = SpaceMap::new(2, vec![0, 0, 1, 1])?;
    let swap = SpaceMap::new(2, vec![1, 1, 0, 0])?;
    let born = props::is_bornologous(&squash, &dx, &dy)?;
    println!("squash bornologous: {} (structures say {})", born.holds, structural::bornologous(&squash, &sx, &sy));
    let eff = props::is_effectively_proper(&squash, &dx, &dy)?;
    println!("squash effectively proper: {}", eff.holds);
    println!("squash proper: {}", props::is_proper(&squash, &dx, &dy)?.is_some());
    println!("squash close to swap: {:?}", props::are_close(&squash, &swap, &dy)?);
    Ok(())
}
