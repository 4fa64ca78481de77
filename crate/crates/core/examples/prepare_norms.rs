// Orthographic normalization, scale conversion and merging of two rating
// lists for the same property.

use psynorm::norms::{apply_orthography, convert_scale, merge_datasets, LikertScale, NormDataset, OrthographyMap};
use psynorm::{PropertyKind, Result};

pub fn run_example() -> Result<()> {
    let european = NormDataset::from_pairs(
        PropertyKind::AgeOfAcquisition,
        LikertScale::NINE_POINT,
        "ep",
        [("acção", 6.0), ("ficheiro", 7.5), ("faneca", 8.0), ("casa", 1.5)],
    )?;
    let brazilian = NormDataset::from_pairs(
        PropertyKind::AgeOfAcquisition,
        LikertScale::SEVEN_POINT,
        "bp",
        [("casa", 1.0), ("arquivo", 5.5)],
    )?;

    let mapped = apply_orthography(&european, &OrthographyMap::starter());
    let converted = convert_scale(&mapped, LikertScale::SEVEN_POINT)?;
    let merged = merge_datasets(&converted, &brazilian)?;

    println!("{} -> {} -> {} rows", european.len(), mapped.len(), merged.len());
    for r in merged.records() {
        println!("{:<10} {:.3}  ({})", r.word, r.rating, r.source);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
