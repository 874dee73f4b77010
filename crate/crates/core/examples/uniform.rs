//! A metric from a chain of congruences on Z/8 and the uniformity it
//! regenerates, with both choices of zero.

use coarsemet::uniform::{congruence, metric_from_uniform_base, uniformity_from_metric, UniformBase, ZeroMode};

fn main() -> coarsemet::Result<()> {
    // ≡ mod 8, mod 4, mod 2, mod 1
    let chain: Vec<_> = [8, 4, 2, 1].iter().map(|&m| congruence(8, m)).collect();
    let ub = UniformBase::new(8, chain.clone())?;
    println!("filter is Hausdorff: {}", ub.filter().is_hausdorff());

    for mode in [ZeroMode::FormalBottom, ZeroMode::Literal] {
        let um = metric_from_uniform_base(&ub, &chain, mode)?;
        let back = uniformity_from_metric(&um.cert)?;
        println!(
            "{mode:?}: d(0, 4) = {}, sublevels match {}, regenerates the filter {}",
            um.metric().get(0, 4),
            um.sublevels_match(),
            back.base.filter() == ub.filter()
        );
    }
    Ok(())
}
