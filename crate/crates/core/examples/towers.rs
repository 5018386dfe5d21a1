//! Infinite towers decided by their degree, and transfer of non-faithfulness.

use lt_kummer::certifier::{classify_tower, transfer_not_kf, LubinTateInput, Recipe, TowerKind};
use lt_kummer::supernat::Supernatural;

fn main() {
    for (kind, degree) in [
        (TowerKind::Unramified, "2^inf"),
        (TowerKind::Unramified, "prod_all_primes^1"),
        (TowerKind::Unramified, "prod_all_primes^inf"),
        (TowerKind::TameGalois, "12"),
    ] {
        let d: Supernatural = degree.parse().unwrap();
        let v = classify_tower(kind, &d);
        println!("{kind:?} of degree {d}: {:?}", v.outcome);
    }

    let base = LubinTateInput::rational(5, 1, 5);
    for recipe in [Recipe::NthRoot { n: 2 }, Recipe::NthRoot { n: 4 }, Recipe::UnramifiedNormOne { f_prime: 3 }] {
        let (derived, v) = transfer_not_kf(&base, recipe).unwrap();
        println!(
            "{recipe:?}: f = {} r = {} is {:?}, norm ratio of order {}",
            derived.f, derived.r, v.outcome, v.witness["ratio_order"]
        );
    }
}
