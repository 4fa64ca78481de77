// Correlation, error and reliability measures.

use psynorm::evaluation::{average_ranks, cronbach_alpha, mse, pearson, spearman};
use psynorm::Result;

pub fn run_example() -> Result<()> {
    let a = [1.0, 2.0, 3.0, 4.0];
    let b = [1.0, 3.0, 2.0, 4.0];
    println!("pearson  = {:?}", pearson(&a, &b)?);
    println!("spearman = {:?}", spearman(&a, &b)?);
    println!("mse      = {}", mse(&a, &b)?);
    println!("ranks of [3, 1, 3, 2] = {:?}", average_ranks(&[3.0, 1.0, 3.0, 2.0]));
    println!("constant input -> {:?}", pearson(&a, &[2.0; 4])?);

    let rater = vec![2.0, 4.5, 3.0, 6.0, 5.5];
    let shifted: Vec<f64> = rater.iter().map(|x| x + 1.0).collect();
    let noisy = vec![2.5, 4.0, 3.5, 5.0, 6.0];
    println!("alpha(shifted copy) = {:?}", cronbach_alpha(&[rater.clone(), shifted])?);
    println!("alpha(noisy rater)  = {:?}", cronbach_alpha(&[rater, noisy])?);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
