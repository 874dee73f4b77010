//! Deciding whether one metric is dominated by another.

use std::sync::Arc;

use coarsemet::coarse::{dominates, equivalent};
use coarsemet::metric::GenMetric;
use coarsemet::poset::{Ext, Poset};

fn main() -> coarsemet::Result<()> {
    let chain = Arc::new(Poset::chain(3));
    let same_cluster = |x: usize, y: usize| x / 2 == y / 2;
    let everywhere = GenMetric::from_fn(4, chain.clone(), |x, y| {
        Ext::Fin(if x == y { 0 } else if same_cluster(x, y) { 1 } else { 2 })
    })?;
    let clusters = GenMetric::from_fn(4, chain, |x, y| {
        if x == y {
            Ext::Fin(0)
        } else if same_cluster(x, y) {
            Ext::Fin(1)
        } else {
            Ext::Inf
        }
    })?;

    // every finite distance of `clusters` is bounded in `everywhere`
    println!("everywhere ⪯ clusters: {:?}", dominates(&everywhere, &clusters)?);
    println!("clusters ⪯ everywhere: {:?}", dominates(&clusters, &everywhere)?);
    println!("equivalent: {:?}", equivalent(&everywhere, &clusters)?);
    Ok(())
}
