//! Bounded geometry statements and the cap/ent sandwich.

use std::sync::Arc;

use coarsemet::coarse::induced_structure;
use coarsemet::metric::GenMetric;
use coarsemet::poset::{Ext, Poset};
use coarsemet::props::{bounded_geometry_report, cap, ent};
use coarsemet::relset::{Relation, Subset};

fn main() -> coarsemet::Result<()> {
    // a path 0 - 1 - 2 - 3 - 4 with distances capped at 3
    let d = GenMetric::from_fn(5, Arc::new(Poset::chain(4)), |x, y| Ext::Fin(x.abs_diff(y).min(3)))?;
    let s = induced_structure(&d)?;
    let report = bounded_geometry_report(&s, &d)?;
    println!("capacity bound at {}: {:?}", report.capacity_bound.witness, report.capacity_bound.bounds);
    println!("ball cover at {}: {:?}", report.ball_cover.witness, report.ball_cover.bounds);
    println!("all statements hold: {}", report.all_hold());
    println!("sandwich: {:?}", report.sandwich);

    let e = d.entourage(1)?;
    let all = Subset::full(5);
    println!("cap_E(X) = {}, ent_E(X) = {}, cap_E∘E(X) = {}", cap(&e, &all), ent(&e, &all), cap(&e.then(&e), &all));
    assert!(Relation::diagonal(5).le(&e));
    Ok(())
}
