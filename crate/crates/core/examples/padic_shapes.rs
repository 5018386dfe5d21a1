//! Newton polygons, root selection and local factor shapes over Q_p.

use lt_kummer::padic::{factor_shape_over_qp, newton_polygon, select_padic_root, RootSeed};
use lt_kummer::poly::IntPoly;

fn main() {
    let cases = [
        ("x^2 - x + 7", 7),
        ("x^4 - 12*x^3 + 75*x^2 - 300*x + 625", 5),
        ("x^8 - 12*x^6 + 75*x^4 - 300*x^2 + 625", 5),
        // (x^2 - 5)^2 - 125 x: the residual polynomial at slope 1/2 is a square, yet f is irreducible
        ("x^4 - 10*x^2 - 125*x + 25", 5),
    ];
    for (s, p) in cases {
        let f: IntPoly = s.parse().unwrap();
        println!("{f}  over Q_{p}");
        let polygon = newton_polygon(&f, p).unwrap();
        println!("  newton polygon (slope, length): {}",
            polygon.iter().map(|(s, l)| format!("({s}, {l})")).collect::<Vec<_>>().join(" "));
        for l in factor_shape_over_qp(&f, p, 64).unwrap() {
            println!("  factor of degree {} with e = {}, f = {}, slope {}", l.degree, l.e, l.f, l.slope);
        }
    }

    // the root of valuation 1 of x^2 - x + 7 in Q_7
    let f: IntPoly = "x^2 - x + 7".parse().unwrap();
    let root = select_padic_root(&f, 7, RootSeed::slope(1), 20).unwrap();
    println!("slope-1 root of {f} in Q_7: 7 * {} (mod 7^{})", root.residue, root.precision);
}
