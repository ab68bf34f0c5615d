//! Closed-form bounds and the Euler-formula checks for small genus.
//!
//!     cargo run --example surface_bounds

use twhad::bounds::*;

fn main() {
    println!("{:>3} {:>3} {:>5} {:>12} {:>12} {:>12}", "g", "s", "ok", "exact", "tight", "stated");
    for g in [0, 1, 2, 3, 5, 10, 50, 100] {
        let check = genus_check(g);
        println!(
            "{g:>3} {:>3} {:>5} {:>12} {:>12} {:>12}",
            check.s,
            check.holds(),
            surface_separator_value(g, 1, 1),
            surface_bound(g, 1, 1),
            surface_bound_stated(g, 1, 1)
        );
    }
    for had in 1..=4 {
        println!(
            "had={had}: outer-string {}, 1-colour circle {}, rank 2 {}",
            outer_string_bound(had),
            perturbed_circle_bound(1, had),
            rank_perturbation_bound(2, had)
        );
    }
}
