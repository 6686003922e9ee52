//! Prints the diagonal family for d=2, D=2, seed 42 as JSON.
use dirmonoid::generators::family_diagonal_random;

fn main() {
    let f = family_diagonal_random(2, 2, 42).expect("valid sizes");
    let diags: Vec<Vec<f64>> = f.axes().iter().map(|m| (0..m.dim()).map(|i| m.get(i, i)).collect()).collect();
    println!("{}", serde_json::to_string_pretty(&diags).expect("serializable"));
}
