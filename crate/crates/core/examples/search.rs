//! Bounded search for a metric whose Hausdorff metric is not coarse or
//! induces the wrong structure.

use coarsemet::hyperspace::{diamond_pool, search_counterexample, SearchOutcome};

fn main() -> coarsemet::Result<()> {
    let report = search_counterexample(3, &diamond_pool(), 50_000)?;
    println!("steps {}, coarse metrics examined {}", report.steps, report.examined);
    match report.outcome {
        SearchOutcome::Found(c) => println!("found {:?} on {} points", c.question, c.metric.carrier()),
        SearchOutcome::NoneWithinBounds => println!("nothing within bounds"),
        SearchOutcome::BudgetExhausted => println!("budget exhausted"),
    }
    Ok(())
}
