//! Places above p, local Brauer invariants and isogeny class dimensions.

use lt_kummer::hondatate::{isogeny_invariants, places_above_p};
use lt_kummer::poly::IntPoly;

fn show(poly: &str, p: u64, f: u32) {
    let g: IntPoly = poly.parse().unwrap();
    let places = places_above_p(&g, p, f, 64).unwrap();
    let inv = isogeny_invariants(&places, g.degree()).unwrap();
    println!("{g} over F_{}^{f}: dimension {}, division algebra degree {}", p, inv.g, inv.d);
    let mut total = 0;
    for v in &places {
        println!("  e_v = {} f_v = {} ord_v = {} invariant {}", v.e_v, v.f_v, v.ord_v_pi_hat, v.invariant);
        total += v.ord_v_pi_hat * v.f_v as u64;
    }
    println!("  sum ord_v f_v = {total} = f deg / 2 = {}", f as usize * g.degree() / 2);
}

fn main() {
    // ordinary and supersingular elliptic curves over F_5
    show("x^2 - 2*x + 5", 5, 1);
    show("x^2 + 5", 5, 1);
    // a Weil 5-integer of degree 8 with both ramified and unramified places
    show("x^8 - 12*x^6 + 75*x^4 - 300*x^2 + 625", 5, 1);
    // 5i over F_25: invariant 1/2 at both places above 5, a supersingular surface
    show("x^2 + 25", 5, 2);
}
