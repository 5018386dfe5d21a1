//! Build non-faithful examples from split principal primes in imaginary
//! quadratic fields.

use lt_kummer::certifier::{verify, Certificate, CertificateInput};
use lt_kummer::factory::{build_example, find_split_principal, verify_example};

fn main() {
    for (p, r) in [(5, 2), (13, 2), (13, 3)] {
        let search = find_split_principal(p, r as usize);
        println!("p = {p}, r = {r}: skipped d = {:?}", search.skipped);
        for w in &search.witnesses {
            println!("  d = {:>4}  omega = {}  norm p", w.d, w.omega_string());
        }
        let ex = match build_example(p, r, &search.witnesses) {
            Ok(ex) => ex,
            Err(e) => {
                println!("  construction failed: {e}");
                continue;
            }
        };
        println!("  c  = root of {}", ex.c.minpoly());
        println!("  pi = root of {}", ex.pi_minpoly);
        let v = verify_example(&ex.input).unwrap();
        println!("  verdict {:?} by {:?}, tuple {}", v.outcome, v.clause, v.witness["tuple"]);
        let cert = Certificate::new(CertificateInput::LubinTate(ex.input), v);
        println!("  certificate replays: {}", verify(&cert).is_ok());
    }
}
