//! p-adic valuations: the axioms over a window of integers and the
//! valuation metric on a smaller window.

use coarsemet::valuation::{
    check_valuation_axioms, coarse_to_uniform, integer_window, is_pseudo_ultra, valuation_metric, Domain,
    PadicRing, UniformityVerdict,
};

fn main() -> coarsemet::Result<()> {
    let ring = PadicRing::new(3, Domain::Integers)?;
    let report = check_valuation_axioms(&ring, &integer_window(-20, 20))?;
    println!("axioms hold: {}, strict sums: {}", report.all_hold(), report.strict_sums);

    let vm = valuation_metric(&ring, &integer_window(0, 9))?;
    println!("levels: {}", vm.levels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "));
    println!("ν(7 - 1) = {}", vm.value(7, 1));
    println!("pseudo ultra: {}", is_pseudo_ultra(&vm.metric));
    match coarse_to_uniform(&vm.coarse)? {
        UniformityVerdict::Confirmed(cert) => println!("pseudo uniform, descent map {:?}", cert.psi_table()),
        UniformityVerdict::Inapplicable { uncovered } => println!("criterion silent at {uncovered}"),
    }
    Ok(())
}
