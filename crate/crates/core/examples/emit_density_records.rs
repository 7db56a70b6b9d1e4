//! Prints the serialized density records for N = 2..4 at r = √N; used to
//! regenerate the golden files under data/.

use sphens::analytic::build_density_model;

fn main() {
    for dim in [2u32, 3, 4] {
        let model = build_density_model(dim, (dim as f64).sqrt()).expect("model");
        println!("=== density_n{dim}.txt ===");
        print!("{}", model.to_record());
    }
}
