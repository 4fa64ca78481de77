// Repeated k-fold evaluation of every view combination on synthetic
// norms where only the first embedding carries signal.

use psynorm::evaluation::{cross_validate, make_folds};
use psynorm::synthetic::linear_norms;
use psynorm::{PropertyKind, Result, ViewSet};

pub fn run_example() -> Result<()> {
    let data = linear_norms(PropertyKind::Imageability, 400, 10, 0.3, 11);
    let plan = make_folds(data.dataset.len(), 5, 3, 42)?;
    let report = cross_validate(
        PropertyKind::Imageability,
        &data.dataset,
        &data.resources,
        &ViewSet::all_combinations(),
        &plan,
        1.0,
    )?;
    print!("{}", report.render_table());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
