// Ridge regression in standardized coordinates with an unpenalized
// intercept.

use psynorm::regression::{train_ridge, DesignMatrix};
use psynorm::{Result, ViewKind};

pub fn run_example() -> Result<()> {
    let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, ((i * 7) % 5) as f64]).collect();
    let targets: Vec<f64> = rows.iter().map(|r| 1.0 + 0.25 * r[0] - 0.5 * r[1]).collect();
    let x = DesignMatrix::from_rows(&rows, targets)?;

    for lambda in [0.0, 1.0, 100.0] {
        let m = train_ridge(&x, lambda, ViewKind::Lexical)?;
        println!(
            "lambda {lambda:>6}: weights {:?}, intercept {:.3}, f([10, 2]) = {:.4}",
            m.weights.iter().map(|w| (w * 1e4).round() / 1e4).collect::<Vec<_>>(),
            m.intercept,
            m.predict_values(&[10.0, 2.0])?
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
