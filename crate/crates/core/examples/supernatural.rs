//! Supernatural numbers: parsing, lcm/gcd/product and quasi-finiteness.

use lt_kummer::supernat::{Exponent, Supernatural};

fn main() {
    let a: Supernatural = "2^inf * 3".parse().unwrap();
    let b = Supernatural::from_natural(360);
    let every = Supernatural::all_primes(Exponent::one());

    println!("a = {a}, b = {b}");
    println!("lcm(a, b) = {}", a.lcm(&b));
    println!("gcd(a, b) = {}", a.gcd(&b));
    println!("a * b = {}", a.mul(&b));
    println!("b divides a? {}", b.divides(&a));

    for s in [&a, &b, &every, &every.mul(&every)] {
        println!("{s:<24} quasi-finite: {}", s.is_quasi_finite());
    }
    println!("360 as a natural: {:?}", b.to_natural());
}
