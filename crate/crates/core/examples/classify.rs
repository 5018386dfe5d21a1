//! Classify Lubin-Tate extensions, write a certificate and replay it.

use lt_kummer::certifier::{classify, verify, Certificate, CertificateInput, LubinTateInput};
use lt_kummer::padic::RootSeed;

fn main() {
    let mut inputs = vec![
        LubinTateInput::rational(5, 1, 5),
        LubinTateInput::rational(5, 1, -5),
        LubinTateInput::rational(5, 1, 30),
        LubinTateInput::rational(7, 3, 14),
    ];
    // pi the slope-1 root of x^2 - x + 7, whose norm is a Weil 7-integer
    let mut weil = LubinTateInput::rational(7, 1, 7);
    weil.c_minpoly = "x^2 - x + 7".parse().unwrap();
    weil.c_seed = RootSeed::slope(1);
    inputs.push(weil);

    for input in inputs {
        let v = classify(&input);
        println!("p = {} r = {} c = root of {}: {:?} by {:?}", input.p, input.r, input.c_minpoly, v.outcome, v.clause);
        let cert = Certificate::new(CertificateInput::LubinTate(input), v);
        let json = cert.to_json();
        let back = Certificate::from_json(&json).unwrap();
        println!("  certificate of {} bytes replays: {:?}", json.len(), verify(&back).is_ok());
    }

    // tampering is detected
    let mut cert = Certificate::new(
        CertificateInput::LubinTate(LubinTateInput::rational(5, 1, 30)),
        classify(&LubinTateInput::rational(5, 1, 30)),
    );
    cert.precision_used *= 2;
    println!("doubled precision_used: {}", verify(&cert).unwrap_err());
}
