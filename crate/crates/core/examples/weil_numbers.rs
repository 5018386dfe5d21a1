//! Exact algebraic numbers: embeddings, products, powers and the Weil test.

use lt_kummer::algnum::{all_roots_weil, AlgNum};
use lt_kummer::poly::IntPoly;
use num_bigint::BigInt;

fn main() {
    let q = BigInt::from(7);
    let f: IntPoly = "x^2 - x + 7".parse().unwrap();
    println!("every root of {f} is a Weil 7-integer: {}", all_roots_weil(&f, &q));

    let roots = AlgNum::complex_roots(&f).unwrap();
    let w = &roots[0];
    println!("w  : {} near {:?}", w.minpoly(), w.disk().map(|d| d.center.to_f64()));

    // products of Weil numbers are Weil numbers for the product of the q's
    let w2 = w.power(2).unwrap();
    println!("w^2: {}  weil(49) = {}", w2.minpoly(), w2.is_weil_q_integer(&BigInt::from(49)).unwrap());
    let ww = w.product(&roots[1]).unwrap();
    println!("w * conj(w) = {}", ww.minpoly());

    // sqrt(7) is Weil but 1 + sqrt(7) is not
    for s in ["x^2 - 7", "x^2 - 2*x - 6"] {
        let g: IntPoly = s.parse().unwrap();
        println!("{s:<14} weil(7) = {}", all_roots_weil(&g, &q));
    }

    let i = &AlgNum::complex_roots(&"x^2 + 1".parse().unwrap()).unwrap()[0];
    println!("root of unity order of i: {:?}", i.root_of_unity_order());
}
